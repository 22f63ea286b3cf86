//! Bundled example PMQs, groups and pairs (the JSON files under `fixtures/`).

use crate::group::{GroupSpec, PairSpec};
use crate::io;
use crate::pmq::PmqSpec;

pub const TRIV_JSON: &str = include_str!("../fixtures/triv.json");
pub const FREE1_JSON: &str = include_str!("../fixtures/free1.json");
pub const FREE1_BROKEN_JSON: &str = include_str!("../fixtures/free1_broken.json");
pub const TRANS3_JSON: &str = include_str!("../fixtures/trans3.json");
pub const Z2_JSON: &str = include_str!("../fixtures/z2.json");
pub const IDEMPOTENT_JSON: &str = include_str!("../fixtures/idem.json");
pub const S3_JSON: &str = include_str!("../fixtures/s3.json");
pub const TRANS3_S3_JSON: &str = include_str!("../fixtures/trans3_s3.json");
pub const TRIV_PAIR_JSON: &str = include_str!("../fixtures/triv_pair.json");
pub const FREE1_PAIR_JSON: &str = include_str!("../fixtures/free1_pair.json");

/// The one-element PMQ.
pub fn triv() -> PmqSpec {
    io::pmq_from_str(TRIV_JSON).expect("bundled fixture")
}

/// `{1, a}` with `a·a` undefined.
pub fn free1() -> PmqSpec {
    io::pmq_from_str(FREE1_JSON).expect("bundled fixture")
}

/// FREE1 with the planted defect `a^a = 1`.
pub fn free1_broken() -> PmqSpec {
    io::pmq_from_str(FREE1_BROKEN_JSON).expect("bundled fixture")
}

/// Transpositions of S₃ and the unit; no products among transpositions.
pub fn trans3() -> PmqSpec {
    io::pmq_from_str(TRANS3_JSON).expect("bundled fixture")
}

/// ℤ/2 with its full group product and trivial conjugation.
pub fn z2() -> PmqSpec {
    io::pmq_from_str(Z2_JSON).expect("bundled fixture")
}

/// `{1, a}` with `a·a = a`.
pub fn idempotent() -> PmqSpec {
    io::pmq_from_str(IDEMPOTENT_JSON).expect("bundled fixture")
}

pub fn s3() -> GroupSpec {
    io::group_from_str(S3_JSON).expect("bundled fixture")
}

/// (TRANS3, S₃) with `e` the inclusion and `r` conjugation.
pub fn trans3_s3() -> PairSpec {
    io::pair_from_str(TRANS3_S3_JSON).expect("bundled fixture")
}

pub fn triv_pair() -> PairSpec {
    io::pair_from_str(TRIV_PAIR_JSON).expect("bundled fixture")
}

pub fn free1_pair() -> PairSpec {
    io::pair_from_str(FREE1_PAIR_JSON).expect("bundled fixture")
}
