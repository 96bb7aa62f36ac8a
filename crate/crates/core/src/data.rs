//! Small instances shipped with the crate.
//!
//! `chvatal_6_5` is the classic weighted worst case for the greedy; the
//! `school_*` instances are reconstructions built to match published
//! statistics (dimensions, edge count, maximum column degree, best-known
//! value), not byte copies of any original file.

use crate::instance::{parse_cnf, BigraphInstance};

/// Five singleton rows `{j}` with weight `1/j`, each also covered by column 6 (weight 1.1).
pub const CHVATAL_6_5: &str = include_str!("../data/chvatal_6_5.cnfW");
/// Five applicants A..E for five classes; greedy yields 3 here, 2 on [`SCHOOL_5_5_ISO`].
pub const SCHOOL_5_5_REF: &str = include_str!("../data/school_5_5_ref.cnfU");
/// [`SCHOOL_5_5_REF`] with columns in interview order A, D, C, E, B.
pub const SCHOOL_5_5_ISO: &str = include_str!("../data/school_5_5_iso.cnfU");
/// 9 columns, 11 rows, 24 edges, mCD 3, optimum 4.
pub const SCHOOL_9_11: &str = include_str!("../data/school_9_11__0.cnfU");
/// Two columns, each covering both rows alone.
pub const TWIN_2_2: &str = include_str!("../data/twin_2_2.cnfU");

pub const ALL: [(&str, &str); 5] = [
    ("chvatal_6_5", CHVATAL_6_5),
    ("school_5_5_ref", SCHOOL_5_5_REF),
    ("school_5_5_iso", SCHOOL_5_5_ISO),
    ("school_9_11__0", SCHOOL_9_11),
    ("twin_2_2", TWIN_2_2),
];

/// Parses a shipped instance by name.
pub fn builtin(name: &str) -> Option<BigraphInstance> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_cnf(text).expect("shipped instance parses"))
}
