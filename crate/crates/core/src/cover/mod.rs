//! Chvátal's greedy for weighted unate set cover.
//!
//! Each iteration selects a column minimizing `weight / degree`, where the
//! degree only counts rows not yet covered, and stops once every row is
//! covered. Three entry points share one engine:
//!
//! * [`greedy_basic`]: ties go to the lowest column index;
//! * [`greedy_stoc`]: ties are broken uniformly at random, seeded by the replica id;
//! * [`greedy_iso`]: [`greedy_basic`] on a seeded column permutation, mapped back.
//!
//! Replica 0 of either stochastic variant is the deterministic run.

mod greedy;
mod oracle;

pub use greedy::{greedy_basic, greedy_iso, greedy_stoc, greedy_with_permutation, CoverModel};
pub use oracle::{
    brute_force_cover, enumerate_achievable_values, AchievableOutcomes, BRUTE_FORCE_MAX_COLS,
    ENUMERATION_MAX_COLS,
};

use serde::Serialize;
use thiserror::Error;

use crate::generators::GeneratorError;
use crate::instance::{BigraphInstance, InstanceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("row {row} has no positive literal and can never be covered")]
    UncoverableRow { row: usize },
    #[error("coordinate vector has length {found}, instance has {expected} columns")]
    LengthMismatch { expected: usize, found: usize },
    #[error("instance has {n_cols} columns; this oracle is limited to {limit}")]
    TooLarge { n_cols: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverSolution {
    /// Selected-column indicator, in the instance's own column order.
    pub coord: Vec<bool>,
    /// `sum(coord[j] * weight[j])`, accumulated in column order.
    pub value: f64,
    /// Number of greedy iterations, equal to the number of selected columns.
    pub n_ops: usize,
    /// 0-based columns in the order they were selected.
    pub order: Vec<usize>,
    pub replica_id: u64,
}

impl CoverSolution {
    /// The indicator as a `0`/`1` string.
    pub fn coord_string(&self) -> String {
        self.coord.iter().map(|&c| if c { '1' } else { '0' }).collect()
    }
}

pub(crate) fn cover_value(weights: &[f64], coord: &[bool]) -> f64 {
    weights
        .iter()
        .zip(coord)
        .filter(|(_, &c)| c)
        .map(|(w, _)| w)
        .sum()
}

/// True iff every row has a positive literal whose column is selected.
pub fn verify_cover(instance: &BigraphInstance, coord: &[bool]) -> Result<bool, CoverError> {
    if coord.len() != instance.n_cols() {
        return Err(CoverError::LengthMismatch {
            expected: instance.n_cols(),
            found: coord.len(),
        });
    }
    Ok(instance
        .rows()
        .iter()
        .all(|clause| clause.iter().any(|&l| l > 0 && coord[l as usize - 1])))
}

/// `H_d = 1 + 1/2 + ... + 1/d`.
pub fn harmonic(d: usize) -> Result<f64, CoverError> {
    if d == 0 {
        return Err(CoverError::InvalidArgument(
            "harmonic number needs d >= 1".into(),
        ));
    }
    Ok((1..=d).map(|k| 1.0 / k as f64).sum())
}

/// Chvátal's bound on the greedy value: `H(mCD) * bkv`.
pub fn chvatal_upper_bound(bkv: f64, m_cd: usize) -> Result<f64, CoverError> {
    if !(bkv > 0.0 && bkv.is_finite()) {
        return Err(CoverError::InvalidArgument(format!(
            "best-known value must be positive, got {bkv}"
        )));
    }
    Ok(harmonic(m_cd)? * bkv)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicBound {
    pub d: usize,
    pub h_d: f64,
    pub ub: f64,
}

impl HarmonicBound {
    pub fn new(m_cd: usize, bkv: f64) -> Result<Self, CoverError> {
        Ok(HarmonicBound {
            d: m_cd,
            h_d: harmonic(m_cd)?,
            ub: chvatal_upper_bound(bkv, m_cd)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::generators::ColumnPermutation;
    use crate::instance::parse_cnf;

    const CHVATAL_VALUE: f64 = 1.0 + 1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 4.0 + 1.0 / 5.0;

    fn one() -> BigraphInstance {
        parse_cnf("p cnf 1 1\n1 0\n").unwrap()
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), 1.0);
        assert_eq!(format!("{:.2}", harmonic(6).unwrap()), "2.45");
        assert!((harmonic(18).unwrap() - 3.4951).abs() < 1e-4);
        assert!(harmonic(0).is_err());
        let hs: Vec<f64> = (1..50).map(|d| harmonic(d).unwrap()).collect();
        assert!(hs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn upper_bounds() {
        assert!((chvatal_upper_bound(18.0, 13).unwrap() - 57.24).abs() < 0.01);
        assert!((chvatal_upper_bound(1.1, 5).unwrap() - 2.5117).abs() < 1e-4);
        for x in [0.5, 1.0, 7.25] {
            assert_eq!(chvatal_upper_bound(x, 1).unwrap(), x);
        }
        assert!(chvatal_upper_bound(0.0, 3).is_err());
        assert!(chvatal_upper_bound(1.0, 0).is_err());
        let hb = HarmonicBound::new(6, 6.0).unwrap();
        assert!((hb.ub - 14.7).abs() < 1e-9);
    }

    #[test]
    fn greedy_on_one_by_one() {
        let sol = greedy_basic(&one()).unwrap();
        assert_eq!(sol.coord, vec![true]);
        assert_eq!(sol.value, 1.0);
        assert_eq!(sol.n_ops, 1);
        assert_eq!(sol.coord_string(), "1");
    }

    #[test]
    fn chvatal_worst_case() {
        let inst = parse_cnf(data::CHVATAL_6_5).unwrap();
        let sol = greedy_basic(&inst).unwrap();
        assert!((sol.value - CHVATAL_VALUE).abs() < 1e-12);
        assert_eq!(sol.n_ops, 5);
        assert_eq!(sol.coord_string(), "111110");
        // cheapest rate first: 1/5, then 1/4, ...
        assert_eq!(sol.order, vec![4, 3, 2, 1, 0]);
        for r in 1..50 {
            assert_eq!(greedy_stoc(&inst, r).unwrap().value, sol.value);
        }
    }

    #[test]
    fn school_5_5_reference_and_isomorph() {
        let reference = parse_cnf(data::SCHOOL_5_5_REF).unwrap();
        let sol = greedy_basic(&reference).unwrap();
        assert_eq!(sol.value, 3.0);
        // B, A, C
        assert_eq!(sol.order, vec![1, 0, 2]);

        let iso = parse_cnf(data::SCHOOL_5_5_ISO).unwrap();
        let sol = greedy_basic(&iso).unwrap();
        assert_eq!(sol.value, 2.0);

        // interview order A, D, C, E, B reproduces the shipped isomorph
        let perm = ColumnPermutation::from_one_based(&[1, 4, 3, 5, 2]).unwrap();
        let sol = greedy_with_permutation(&reference, &perm).unwrap();
        assert_eq!(sol.value, 2.0);
        // C, A in reference labels
        assert_eq!(sol.order, vec![2, 0]);
        assert!(verify_cover(&reference, &sol.coord).unwrap());
    }

    #[test]
    fn replica_zero_agrees_everywhere() {
        for (_, text) in data::ALL {
            let inst = parse_cnf(text).unwrap();
            let basic = greedy_basic(&inst).unwrap();
            assert_eq!(greedy_stoc(&inst, 0).unwrap(), basic);
            assert_eq!(greedy_iso(&inst, 0).unwrap(), basic);
        }
    }

    #[test]
    fn verify_cover_cases() {
        assert!(verify_cover(&one(), &[true]).unwrap());
        let inst = parse_cnf(data::CHVATAL_6_5).unwrap();
        let col6 = [false, false, false, false, false, true];
        assert!(verify_cover(&inst, &col6).unwrap());
        assert_eq!(cover_value(inst.col_weights(), &col6), 1.1);
        assert!(!verify_cover(&inst, &[false; 6]).unwrap());
        assert!(matches!(
            verify_cover(&inst, &[true]),
            Err(CoverError::LengthMismatch { expected: 6, found: 1 })
        ));
    }

    #[test]
    fn binate_and_uncoverable_rejected() {
        let binate = parse_cnf("p cnf 2 1\n-1 2 0\n").unwrap();
        assert!(matches!(greedy_basic(&binate), Err(CoverError::Instance(_))));
        assert!(matches!(greedy_iso(&binate, 2), Err(CoverError::Instance(_))));
    }

    #[test]
    fn tie_tolerance() {
        let inst = parse_cnf(data::TWIN_2_2).unwrap();
        let model = CoverModel::new(&inst).unwrap();
        assert!(model.clone().with_tie_tolerance(-1.0).is_err());
        assert!(model.clone().with_tie_tolerance(f64::NAN).is_err());
        // weights 1 and 1 + 1e-12: exact comparison never ties, 1e-9 does
        let near = BigraphInstance::weighted("near", 2, vec![vec![1, 2]], vec![1.0 + 1e-12, 1.0])
            .unwrap();
        let exact = CoverModel::new(&near).unwrap();
        let picks: std::collections::BTreeSet<usize> =
            (1..200).map(|r| exact.stoc(r).order[0]).collect();
        assert_eq!(picks.into_iter().collect::<Vec<_>>(), vec![1]);
        let loose = CoverModel::new(&near).unwrap().with_tie_tolerance(1e-9).unwrap();
        let picks: std::collections::BTreeSet<usize> =
            (1..200).map(|r| loose.stoc(r).order[0]).collect();
        assert_eq!(picks.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(loose.basic().order, vec![0]);
    }
}
