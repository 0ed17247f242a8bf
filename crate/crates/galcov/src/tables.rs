//! Invariant tables: one row per `(m, n)`, rendered as aligned text or CSV.

use std::fmt::Write as _;

use galcov_core::invariants::{cross_check, surface_report, IrregularityReport, SingularityCensus};
use galcov_core::GridParams;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const COLUMNS: [&str; 10] = [
    "m",
    "n",
    "b",
    "h",
    "d",
    "ρ",
    "c1sq-factor",
    "c2-factor",
    "tau-factor",
    "sign",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub m: u32,
    pub n: u32,
    pub b: u64,
    pub h: u64,
    pub d: u64,
    pub rho: u64,
    pub c1sq_factor: String,
    pub c2_factor: String,
    pub tau_factor: String,
    pub sign: String,
}

impl InvariantRow {
    fn cells(&self) -> [String; 10] {
        [
            self.m.to_string(),
            self.n.to_string(),
            self.b.to_string(),
            self.h.to_string(),
            self.d.to_string(),
            self.rho.to_string(),
            self.c1sq_factor.clone(),
            self.c2_factor.clone(),
            self.tau_factor.clone(),
            self.sign.clone(),
        ]
    }
}

/// Chern numbers and index of one surface, in factored (`b! * k`) and
/// expanded form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernRecord {
    pub m: u32,
    pub n: u32,
    pub b: u64,
    pub c1sq: String,
    pub c2: String,
    pub c1sq_factored: String,
    pub c2_factored: String,
    pub tau: String,
    pub tau_factored: String,
    pub sign: String,
    /// Route disagreements; empty when everything agrees.
    pub discrepancies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub row: InvariantRow,
    pub census: SingularityCensus,
    pub discrepancies: Vec<String>,
}

pub fn invariant_row(p: GridParams) -> Result<InvariantRow> {
    let r = surface_report(p)?;
    Ok(InvariantRow {
        m: p.m(),
        n: p.n(),
        b: r.census.b,
        h: r.census.h,
        d: r.census.d,
        rho: r.census.rho,
        c1sq_factor: r.c1sq_factor.to_string(),
        c2_factor: r.c2_factor.to_string(),
        tau_factor: r.index.tau_factor.to_string(),
        sign: r.index.sign.name().to_string(),
    })
}

pub fn chern_record(p: GridParams) -> Result<ChernRecord> {
    let r = surface_report(p)?;
    let b = r.census.b;
    Ok(ChernRecord {
        m: p.m(),
        n: p.n(),
        b,
        c1sq: r.chern.c1sq.to_string(),
        c2: r.chern.c2.to_string(),
        c1sq_factored: format!("{b}! * {}", r.c1sq_factor),
        c2_factored: format!("{b}! * {}", r.c2_factor),
        tau: r.index.tau.to_string(),
        tau_factored: format!("{b}! * {}", r.index.tau_factor),
        sign: r.index.sign.name().to_string(),
        discrepancies: cross_check(p),
    })
}

pub fn census_record(p: GridParams) -> Result<CensusRecord> {
    let r = surface_report(p)?;
    Ok(CensusRecord {
        row: invariant_row(p)?,
        census: r.census,
        discrepancies: cross_check(p),
    })
}

pub fn irregularity_text(r: &IrregularityReport) -> String {
    let mut s = String::new();
    writeln!(s, "cover degree l        {}", r.l).unwrap();
    writeln!(s, "rank H1 bound         {}", r.h1_rank_bound).unwrap();
    writeln!(s, "q bound               {}", r.q_bound).unwrap();
    writeln!(s, "subgroup rank         {}", r.subgroup_rank).unwrap();
    match r.benchmark_q {
        Some(q) => writeln!(s, "q (m = 1)             {q}").unwrap(),
        None => writeln!(s, "q (m = 1)             -").unwrap(),
    }
    s
}

/// Right-aligned columns separated by two spaces.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&width)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut s = line(&mut header.iter().copied());
    s.push('\n');
    for r in rows {
        s.push_str(&line(&mut r.iter().map(String::as_str)));
        s.push('\n');
    }
    s
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

pub fn invariant_cells(rows: &[InvariantRow]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.cells().to_vec()).collect()
}
