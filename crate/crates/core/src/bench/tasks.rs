//! Ready-made [`PhasedTask`]s for sweeps. Each one prepares serialized
//! input outside the clock, so the read phase covers parsing and setup.

use std::collections::BTreeMap;

use super::{topk_movies, watch_histogram, AggregationStrategy, PhasedTask, TopKResult};
use crate::generators::{
    gen_movielib, gen_random_instance, read_movies_csv, read_watches_csv, urn_trial,
    write_movies_csv, write_watches_csv, MovieRecord, WatchRecord,
};
use crate::instance::{parse_cnf, write_cnf, BigraphInstance};
use crate::matching::max_matching;

fn movielib_csv(size: usize, seed: u64) -> Result<(Vec<u8>, Vec<u8>), String> {
    let (movies, watches) = gen_movielib(size, seed);
    let mut m = Vec::new();
    let mut w = Vec::new();
    write_movies_csv(&movies, &mut m).map_err(|e| e.to_string())?;
    write_watches_csv(&watches, &mut w).map_err(|e| e.to_string())?;
    Ok((m, w))
}

fn read_movielib(raw: &(Vec<u8>, Vec<u8>)) -> Result<(Vec<MovieRecord>, Vec<WatchRecord>), String> {
    let movies = read_movies_csv(raw.0.as_slice()).map_err(|e| e.to_string())?;
    let watches = read_watches_csv(raw.1.as_slice()).map_err(|e| e.to_string())?;
    Ok((movies, watches))
}

/// Top-K most watched movies over a synthetic library of `size` records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopKTask {
    pub k: usize,
    pub seed: u64,
    pub strategy: AggregationStrategy,
}

impl PhasedTask for TopKTask {
    type Raw = (Vec<u8>, Vec<u8>);
    type Data = (Vec<MovieRecord>, Vec<WatchRecord>);
    type Output = TopKResult;

    fn label(&self) -> String {
        match self.strategy {
            AggregationStrategy::Hash => "topk-hash".into(),
            AggregationStrategy::SortedTable => "topk-sorted-table".into(),
        }
    }

    fn prepare(&self, size: usize) -> Result<Self::Raw, String> {
        movielib_csv(size, self.seed)
    }

    fn read(&self, raw: &Self::Raw) -> Result<Self::Data, String> {
        read_movielib(raw)
    }

    fn solve(&self, data: &Self::Data) -> Result<TopKResult, String> {
        topk_movies(&data.0, &data.1, self.k, self.strategy).map_err(|e| e.to_string())
    }
}

/// Watch-count histogram over a synthetic library of `size` records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistTask {
    pub seed: u64,
}

impl PhasedTask for HistTask {
    type Raw = (Vec<u8>, Vec<u8>);
    type Data = Vec<WatchRecord>;
    type Output = BTreeMap<usize, usize>;

    fn label(&self) -> String {
        "hist".into()
    }

    fn prepare(&self, size: usize) -> Result<Self::Raw, String> {
        movielib_csv(size, self.seed)
    }

    fn read(&self, raw: &Self::Raw) -> Result<Self::Data, String> {
        read_movielib(raw).map(|(_, w)| w)
    }

    fn solve(&self, data: &Self::Data) -> Result<Self::Output, String> {
        Ok(watch_histogram(data))
    }
}

/// Maximum matching on a random `size x size` instance with row degree
/// `degree`, parsed from its text form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchTask {
    pub degree: usize,
    pub seed: u64,
}

impl PhasedTask for MatchTask {
    type Raw = String;
    type Data = BigraphInstance;
    type Output = usize;

    fn label(&self) -> String {
        "match".into()
    }

    fn prepare(&self, size: usize) -> Result<String, String> {
        let degree = self.degree.min(size);
        gen_random_instance(size, size, degree, degree, self.seed)
            .map(|i| write_cnf(&i))
            .map_err(|e| e.to_string())
    }

    fn read(&self, raw: &String) -> Result<BigraphInstance, String> {
        parse_cnf(raw).map_err(|e| e.to_string())
    }

    fn solve(&self, data: &BigraphInstance) -> Result<usize, String> {
        max_matching(data).map(|m| m.size).map_err(|e| e.to_string())
    }
}

/// `size` draws with replacement from an urn of `size` tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UrnTask {
    pub seed: u64,
}

impl PhasedTask for UrnTask {
    type Raw = usize;
    type Data = usize;
    type Output = f64;

    fn label(&self) -> String {
        "urn".into()
    }

    fn prepare(&self, size: usize) -> Result<usize, String> {
        Ok(size)
    }

    fn read(&self, raw: &usize) -> Result<usize, String> {
        Ok(*raw)
    }

    fn solve(&self, size: &usize) -> Result<f64, String> {
        urn_trial(*size, *size, self.seed).map_err(|e| e.to_string())
    }
}
