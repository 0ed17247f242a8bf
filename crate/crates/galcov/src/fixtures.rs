//! Golden values shipped with the crate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const HOMOLOGY_FIXTURES: &str = include_str!("../fixtures/homology.json");
pub const LISTS_2_4: &str = include_str!("../fixtures/lists_2_4.json");

/// Recorded abelian invariants of one kernel homology run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenHomology {
    pub cosets: usize,
    pub schreier_generators: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub image_rank: usize,
}

/// Keyed by `"m,n,emitter"`.
pub fn golden_homology() -> Result<BTreeMap<String, GoldenHomology>> {
    Ok(serde_json::from_str(HOMOLOGY_FIXTURES)?)
}

pub fn golden_key(m: u32, n: u32, emitter: &str) -> String {
    format!("{m},{n},{emitter}")
}

/// Relations of one six-line vertex as listed for `(2, 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixLineLists {
    pub vertex: u32,
    pub triples: Vec<[u32; 2]>,
    pub commutators: Vec<[u32; 2]>,
    /// `lhs = rhs` of the quintic relation.
    pub quintic: [Vec<u32>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lists24 {
    pub six_line: Vec<SixLineLists>,
    /// Triples of the eight two-line vertices, bottom then top.
    pub two_line_triples: Vec<[u32; 2]>,
}

pub fn lists_2_4() -> Result<Lists24> {
    Ok(serde_json::from_str(LISTS_2_4)?)
}
