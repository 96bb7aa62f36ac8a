use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::BenchError;
use crate::generators::{MovieRecord, WatchRecord};

/// How watch counts are aggregated before ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationStrategy {
    /// One hash-map update per watch record.
    Hash,
    /// Sort the movie ids, then count runs.
    SortedTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopKEntry {
    pub movie_id: String,
    pub watch_count: usize,
}

/// Descending by count, ties by ascending movie id (plain string order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopKResult {
    pub entries: Vec<TopKEntry>,
}

impl TopKResult {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `movieID,watchCount` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("movieID,watchCount\n");
        for e in &self.entries {
            out.push_str(&format!("{},{}\n", e.movie_id, e.watch_count));
        }
        out
    }
}

fn counts<'a>(
    watches: &'a [WatchRecord],
    strategy: AggregationStrategy,
) -> Vec<(&'a str, usize)> {
    match strategy {
        AggregationStrategy::Hash => {
            let mut map: HashMap<&str, usize> = HashMap::new();
            for w in watches {
                *map.entry(w.movie_id.as_str()).or_default() += 1;
            }
            map.into_iter().collect()
        }
        AggregationStrategy::SortedTable => {
            let mut ids: Vec<&str> = watches.iter().map(|w| w.movie_id.as_str()).collect();
            ids.sort_unstable();
            let mut out: Vec<(&str, usize)> = Vec::new();
            for id in ids {
                match out.last_mut() {
                    Some((last, n)) if *last == id => *n += 1,
                    _ => out.push((id, 1)),
                }
            }
            out
        }
    }
}

/// The `k` most-watched movies. Unwatched movies never appear.
pub fn topk_movies(
    movies: &[MovieRecord],
    watches: &[WatchRecord],
    k: usize,
    strategy: AggregationStrategy,
) -> Result<TopKResult, BenchError> {
    if k == 0 {
        return Err(BenchError::InvalidArgument("k must be at least 1".into()));
    }
    let known: HashSet<&str> = movies.iter().map(|m| m.movie_id.as_str()).collect();
    if let Some(w) = watches.iter().find(|w| !known.contains(w.movie_id.as_str())) {
        return Err(BenchError::UnknownMovie {
            watch_id: w.watch_id,
            movie_id: w.movie_id.clone(),
        });
    }
    let mut ranked = counts(watches, strategy);
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.truncate(k);
    Ok(TopKResult {
        entries: ranked
            .into_iter()
            .map(|(id, n)| TopKEntry {
                movie_id: id.to_string(),
                watch_count: n,
            })
            .collect(),
    })
}

/// Entry `i` is the number of distinct movies watched exactly `i` times.
/// Unwatched movies are not counted.
pub fn watch_histogram(watches: &[WatchRecord]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for (_, n) in counts(watches, AggregationStrategy::Hash) {
        *hist.entry(n).or_default() += 1;
    }
    hist
}

/// `watchCount,numMovies` rows with a header.
pub fn histogram_csv(hist: &BTreeMap<usize, usize>) -> String {
    let mut out = String::from("watchCount,numMovies\n");
    for (i, n) in hist {
        out.push_str(&format!("{i},{n}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_movielib;

    fn movie(id: &str) -> MovieRecord {
        MovieRecord {
            movie_id: id.into(),
            title: format!("Title {id}"),
            year: 1999,
            runtime_minutes: 100,
        }
    }

    fn watch(watch_id: u64, id: &str) -> WatchRecord {
        WatchRecord {
            watch_id,
            movie_id: id.into(),
            date: "2020-01-01".into(),
            minutes_watched: 50,
        }
    }

    /// tt74 three times, tt30 once, tt12 and tt99 never.
    fn micro() -> (Vec<MovieRecord>, Vec<WatchRecord>) {
        let movies = ["tt12", "tt30", "tt74", "tt99"].map(movie).to_vec();
        let watches = vec![watch(1, "tt74"), watch(2, "tt30"), watch(3, "tt74"), watch(4, "tt74")];
        (movies, watches)
    }

    const STRATEGIES: [AggregationStrategy; 2] =
        [AggregationStrategy::Hash, AggregationStrategy::SortedTable];

    #[test]
    fn micro_dataset() {
        let (movies, watches) = micro();
        for s in STRATEGIES {
            let top = topk_movies(&movies, &watches, 1, s).unwrap();
            assert_eq!(top.entries, vec![TopKEntry { movie_id: "tt74".into(), watch_count: 3 }]);
            let all = topk_movies(&movies, &watches, 10, s).unwrap();
            assert_eq!(all.len(), 2);
            assert_eq!(all.entries[1].movie_id, "tt30");
            assert!(topk_movies(&movies, &[], 3, s).unwrap().is_empty());
        }
        let hist = watch_histogram(&watches);
        assert_eq!(hist, BTreeMap::from([(1, 1), (3, 1)]));
        assert_eq!(histogram_csv(&hist), "watchCount,numMovies\n1,1\n3,1\n");
    }

    #[test]
    fn ties_by_ascending_id() {
        let movies = ["tt2", "tt10", "tt3"].map(movie).to_vec();
        let watches = vec![watch(1, "tt3"), watch(2, "tt2"), watch(3, "tt10")];
        for s in STRATEGIES {
            let ids: Vec<String> = topk_movies(&movies, &watches, 3, s)
                .unwrap()
                .entries
                .into_iter()
                .map(|e| e.movie_id)
                .collect();
            // string order: "tt10" < "tt2" < "tt3"
            assert_eq!(ids, vec!["tt10", "tt2", "tt3"]);
        }
    }

    #[test]
    fn errors() {
        let (movies, watches) = micro();
        assert!(matches!(
            topk_movies(&movies, &watches, 0, AggregationStrategy::Hash),
            Err(BenchError::InvalidArgument(_))
        ));
        let stray = vec![watch(9, "tt1")];
        assert_eq!(
            topk_movies(&movies, &stray, 1, AggregationStrategy::Hash),
            Err(BenchError::UnknownMovie { watch_id: 9, movie_id: "tt1".into() })
        );
    }

    #[test]
    fn strategies_agree_and_mass_is_conserved() {
        let (movies, watches) = gen_movielib(5000, 11);
        let a = topk_movies(&movies, &watches, 25, AggregationStrategy::Hash).unwrap();
        let b = topk_movies(&movies, &watches, 25, AggregationStrategy::SortedTable).unwrap();
        assert_eq!(a, b);
        let hist = watch_histogram(&watches);
        assert_eq!(hist.iter().map(|(i, n)| i * n).sum::<usize>(), watches.len());
        assert_eq!(a.entries[0].watch_count, *hist.keys().last().unwrap());
    }
}
