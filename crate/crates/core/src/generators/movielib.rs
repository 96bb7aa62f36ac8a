//! Synthetic movie library: a movie table and a watch table whose movie
//! references are drawn uniformly with replacement (an urn model).

use std::io::{Read, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovieRecord {
    #[serde(rename = "movieID")]
    pub movie_id: String,
    pub title: String,
    pub year: u16,
    #[serde(rename = "runtimeMinutes")]
    pub runtime_minutes: u16,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WatchRecord {
    #[serde(rename = "watchID")]
    pub watch_id: u64,
    #[serde(rename = "movieID")]
    pub movie_id: String,
    pub date: String,
    #[serde(rename = "minutesWatched")]
    pub minutes_watched: u16,
}

pub fn movie_id(index: usize) -> String {
    format!("tt{}", index + 1)
}

/// `size` movies with ids `tt1..tt{size}` and `size` watch records.
pub fn gen_movielib(size: usize, seed: u64) -> (Vec<MovieRecord>, Vec<WatchRecord>) {
    let mut rng = SeededRng::new(seed);
    let movies: Vec<MovieRecord> = (0..size)
        .map(|i| MovieRecord {
            movie_id: movie_id(i),
            title: format!("Movie {}", i + 1),
            year: rng.random_range(1920..=2020),
            runtime_minutes: rng.random_range(60..=200),
        })
        .collect();
    let watches = (0..size)
        .map(|w| {
            let m = rng.random_range(0..size);
            let date = format!(
                "{:04}-{:02}-{:02}",
                rng.random_range(2015..=2020),
                rng.random_range(1..=12),
                rng.random_range(1..=28)
            );
            WatchRecord {
                watch_id: w as u64 + 1,
                movie_id: movies[m].movie_id.clone(),
                date,
                minutes_watched: rng.random_range(1..=movies[m].runtime_minutes),
            }
        })
        .collect();
    (movies, watches)
}

fn write_csv<T: Serialize>(records: &[T], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn read_csv<T: for<'de> Deserialize<'de>>(input: impl Read) -> csv::Result<Vec<T>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Header `movieID,title,year,runtimeMinutes`.
pub fn write_movies_csv(records: &[MovieRecord], out: impl Write) -> csv::Result<()> {
    write_csv(records, out)
}

/// Header `watchID,movieID,date,minutesWatched`.
pub fn write_watches_csv(records: &[WatchRecord], out: impl Write) -> csv::Result<()> {
    write_csv(records, out)
}

pub fn read_movies_csv(input: impl Read) -> csv::Result<Vec<MovieRecord>> {
    read_csv(input)
}

pub fn read_watches_csv(input: impl Read) -> csv::Result<Vec<WatchRecord>> {
    read_csv(input)
}
