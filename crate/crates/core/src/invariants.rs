//! Singularity census of the branch curve, Chern numbers, index and
//! irregularity bounds of the Galois cover. All arithmetic is exact.

use alloc::string::String;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{DegenerationComplex, GridParams, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CensusBreakdown {
    pub pairs_total: u64,
    pub pairs_at_two_line_vertices: u64,
    pub pairs_at_six_line_vertices: u64,
    /// Pairs sharing two vertices (the two horizontals of a level when
    /// `n = 2`); counted twice in the per-vertex totals.
    pub double_incident_pairs: u64,
    pub disjoint_pairs: u64,
    pub nodes_from_disjoint_pairs: u64,
    pub nodes_from_six_line_vertices: u64,
    pub cusps_from_two_line_vertices: u64,
    pub cusps_from_six_line_vertices: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityCensus {
    pub m: u32,
    pub n: u32,
    /// Degree of the generic cover.
    pub b: u64,
    /// Degree of the branch curve.
    pub h: u64,
    /// Nodes.
    pub d: u64,
    /// Cusps.
    pub rho: u64,
    pub breakdown: CensusBreakdown,
}

const NODES_PER_SIX_LINE: u64 = 24;
const CUSPS_PER_SIX_LINE: u64 = 24;
const CUSPS_PER_TWO_LINE: u64 = 3;
const NODES_PER_DISJOINT_PAIR: u64 = 4;

fn assemble(p: GridParams, mut br: CensusBreakdown, two: u64, six: u64) -> SingularityCensus {
    let (m, n) = (p.m() as u64, p.n() as u64);
    br.nodes_from_disjoint_pairs = NODES_PER_DISJOINT_PAIR * br.disjoint_pairs;
    br.nodes_from_six_line_vertices = NODES_PER_SIX_LINE * six;
    br.cusps_from_two_line_vertices = CUSPS_PER_TWO_LINE * two;
    br.cusps_from_six_line_vertices = CUSPS_PER_SIX_LINE * six;
    SingularityCensus {
        m: p.m(),
        n: p.n(),
        b: 2 * m * n,
        h: 6 * m * n - 2 * n,
        d: br.nodes_from_disjoint_pairs + br.nodes_from_six_line_vertices,
        rho: br.cusps_from_two_line_vertices + br.cusps_from_six_line_vertices,
        breakdown: br,
    }
}

/// Census by enumerating every edge pair and every vertex of the complex.
pub fn singularity_census(c: &DegenerationComplex) -> SingularityCensus {
    let mut br = CensusBreakdown::default();
    let e = c.edges.len();
    for i in 0..e {
        for j in i + 1..e {
            br.pairs_total += 1;
            let (x, y) = (c.edges[i].endpoints, c.edges[j].endpoints);
            let shared = [x.0, x.1]
                .iter()
                .filter(|p| **p == y.0 || **p == y.1)
                .count();
            match shared {
                0 => br.disjoint_pairs += 1,
                2 => br.double_incident_pairs += 1,
                _ => {}
            }
        }
    }
    let (mut two, mut six) = (0, 0);
    for v in &c.vertices {
        let k = v.edges.len() as u64;
        let pairs = k * (k - 1) / 2;
        if v.kind == VertexKind::Inner6 {
            six += 1;
            br.pairs_at_six_line_vertices += pairs;
        } else {
            two += 1;
            br.pairs_at_two_line_vertices += pairs;
        }
    }
    assemble(c.params, br, two, six)
}

/// The printed closed forms, branching on `n = 2`.
pub fn census_closed_form(p: GridParams) -> SingularityCensus {
    let (m, n) = (p.m() as u64, p.n() as u64);
    let e = 3 * m * n - n;
    let double = if n == 2 { m - 1 } else { 0 };
    let br = CensusBreakdown {
        pairs_total: e * (e - 1) / 2,
        pairs_at_two_line_vertices: 2 * n,
        pairs_at_six_line_vertices: 15 * (m - 1) * n,
        double_incident_pairs: double,
        disjoint_pairs: e * (e - 1) / 2 - 2 * n - 15 * (m - 1) * n + double,
        ..CensusBreakdown::default()
    };
    assemble(p, br, 2 * n, n * (m - 1))
}

/// The polynomial node count: `72m^2 - 128m + 64` for `n = 2`, otherwise
/// `18m^2n^2 - 12mn^2 - 42mn + 2n^2 + 30n`.
pub fn node_polynomial(p: GridParams) -> i64 {
    let (m, n) = (p.m() as i64, p.n() as i64);
    if n == 2 {
        72 * m * m - 128 * m + 64
    } else {
        18 * m * m * n * n - 12 * m * n * n - 42 * m * n + 2 * n * n + 30 * n
    }
}

pub fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChernRoute {
    Census,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernNumbers {
    pub c1sq: BigInt,
    pub c2: BigInt,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn integral(r: BigRational, what: &'static str) -> BigInt {
    assert!(r.is_integer(), "{what} is not integral: {r}");
    r.to_integer()
}

/// `b!/4 (h-6)^2` and `b! (h^2/2 - 3h/2 + 3 - 3d/4 - 4ρ/3)` from a census.
pub fn chern_from_census(s: &SingularityCensus) -> ChernNumbers {
    let bf = BigRational::from_integer(BigInt::from(factorial(s.b)));
    let h = rat(s.h as i64);
    let c1sq = &bf * (&h - rat(6)) * (&h - rat(6)) / rat(4);
    let inner = &h * &h / rat(2) - rat(3) * &h / rat(2) + rat(3)
        - rat(3) * rat(s.d as i64) / rat(4)
        - rat(4) * rat(s.rho as i64) / rat(3);
    ChernNumbers {
        c1sq: integral(c1sq, "c1^2"),
        c2: integral(bf * inner, "c2"),
    }
}

/// `c1^2 / b!` and `c2 / b!` from the polynomial forms.
pub fn chern_factors(p: GridParams) -> (BigRational, BigRational) {
    let (m, n) = (p.m() as i64, p.n() as i64);
    if n == 2 {
        (rat(36 * m * m - 60 * m + 25), rat(18 * m * m - 34 * m + 17))
    } else {
        let c1 = rat(9 * m * m * n * n - 6 * m * n * n - 18 * m * n + n * n + 6 * n + 9);
        let twice_c2 = 9 * m * m * n * n - 6 * m * n * n - 19 * m * n + n * n + 9 * n + 6;
        (c1, rat(twice_c2) / rat(2))
    }
}

pub fn chern_numbers(p: GridParams, route: ChernRoute) -> ChernNumbers {
    match route {
        ChernRoute::Census => {
            chern_from_census(&singularity_census(&DegenerationComplex::build(p)))
        }
        ChernRoute::ClosedForm => {
            let bf = BigRational::from_integer(BigInt::from(factorial(2 * p.x() as u64)));
            let (a, b) = chern_factors(p);
            ChernNumbers {
                c1sq: integral(&bf * a, "c1^2"),
                c2: integral(bf * b, "c2"),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &BigRational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Negative => "NEGATIVE",
            Sign::Zero => "ZERO",
            Sign::Positive => "POSITIVE",
        }
    }
}

/// The sign predicted by the case table: `n = 2` is negative only at
/// `m = 1`; for `n >= 3`, `m = 1` is negative, `m = 2` is zero exactly when
/// `n = 3` and negative otherwise, `m >= 3` is positive.
pub fn expected_sign(p: GridParams) -> Sign {
    match (p.m(), p.n()) {
        (1, _) => Sign::Negative,
        (_, 2) => Sign::Positive,
        (2, 3) => Sign::Zero,
        (2, _) => Sign::Negative,
        _ => Sign::Positive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub tau: BigRational,
    /// `tau / b!`.
    pub tau_factor: BigRational,
    pub sign: Sign,
}

/// `τ = (4m)!/3 (8m - 9)` for `n = 2`, else `(2mn)!/3 (mn - 3n + 3)`.
pub fn index_tau(p: GridParams) -> IndexReport {
    let (m, n) = (p.m() as i64, p.n() as i64);
    let k = if n == 2 { 8 * m - 9 } else { m * n - 3 * n + 3 };
    let tau_factor = rat(k) / rat(3);
    let tau = BigRational::from_integer(BigInt::from(factorial(2 * p.x() as u64))) * &tau_factor;
    let sign = Sign::of(&tau);
    IndexReport {
        tau,
        tau_factor,
        sign,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularityReport {
    pub m: u32,
    pub n: u32,
    /// Degree of the general cover.
    pub l: u32,
    /// `(l - 1) rank H_1(X)` with `rank H_1(X) = 2`.
    pub h1_rank_bound: u32,
    pub q_bound: u32,
    pub subgroup_rank: u32,
    /// `q = 2n - 1` exactly when `m = 1`.
    pub benchmark_q: Option<u32>,
}

pub fn irregularity_report(p: GridParams) -> IrregularityReport {
    let (m, n) = (p.m(), p.n());
    let l = 2 * m * n;
    IrregularityReport {
        m,
        n,
        l,
        h1_rank_bound: 2 * (l - 1),
        q_bound: l - 1,
        subgroup_rank: m * (2 * n - 1),
        benchmark_q: (m == 1).then_some(2 * n - 1),
    }
}

/// Everything above for one `(m, n)`, after checking that both census and
/// both Chern routes agree and that `3τ = c1^2 - 2 c2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariantReport {
    pub params: GridParams,
    pub census: SingularityCensus,
    pub chern: ChernNumbers,
    pub c1sq_factor: BigInt,
    pub c2_factor: BigInt,
    pub index: IndexReport,
    pub irregularity: IrregularityReport,
}

/// Disagreements between the two routes, as messages.
pub fn cross_check(p: GridParams) -> alloc::vec::Vec<String> {
    let mut out = alloc::vec::Vec::new();
    let by_enum = singularity_census(&DegenerationComplex::build(p));
    let closed = census_closed_form(p);
    if by_enum != closed {
        out.push(alloc::format!(
            "census routes differ: {by_enum:?} vs {closed:?}"
        ));
    }
    if by_enum.d as i64 != node_polynomial(p) {
        out.push(alloc::format!(
            "node polynomial {} vs census {}",
            node_polynomial(p),
            by_enum.d
        ));
    }
    let a = chern_from_census(&by_enum);
    let b = chern_numbers(p, ChernRoute::ClosedForm);
    if a != b {
        out.push(alloc::format!("chern routes differ: {a:?} vs {b:?}"));
    }
    let idx = index_tau(p);
    let three_tau = idx.tau.clone() * rat(3);
    if three_tau != BigRational::from_integer(&a.c1sq - BigInt::from(2) * &a.c2) {
        out.push(String::from("3 tau != c1^2 - 2 c2"));
    }
    if !idx.tau.is_integer() {
        out.push(String::from("tau is not integral"));
    }
    if idx.sign != expected_sign(p) {
        out.push(alloc::format!(
            "sign {:?} differs from the case table",
            idx.sign
        ));
    }
    out
}

pub fn surface_report(p: GridParams) -> Result<SurfaceInvariantReport> {
    let census = singularity_census(&DegenerationComplex::build(p));
    let chern = chern_from_census(&census);
    let bf = BigInt::from(factorial(census.b));
    let (c1sq_factor, r1) = chern.c1sq.div_rem(&bf);
    let (c2_factor, r2) = chern.c2.div_rem(&bf);
    debug_assert!(r1.is_zero() && r2.is_zero());
    Ok(SurfaceInvariantReport {
        params: p,
        census,
        chern,
        c1sq_factor,
        c2_factor,
        index: index_tau(p),
        irregularity: irregularity_report(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(m: u32, n: u32) -> GridParams {
        GridParams::new(m, n).unwrap()
    }

    fn census(m: u32, n: u32) -> SingularityCensus {
        singularity_census(&DegenerationComplex::build(gp(m, n)))
    }

    #[test]
    fn census_examples() {
        let c = census(2, 4);
        assert_eq!((c.d, c.rho), (584, 120));
        let c = census(2, 2);
        assert_eq!(c.d, 96);
        assert_eq!(c.breakdown.double_incident_pairs, 1);
        let c = census(1, 2);
        assert_eq!((c.d, c.rho), (8, 12));
        assert_eq!(census(1, 3).d, 36);
        assert_eq!(census_closed_form(gp(1, 3)).d, 36);
    }

    #[test]
    fn chern_examples() {
        let f16 = BigInt::from(factorial(16));
        let c = chern_numbers(gp(2, 4), ChernRoute::Census);
        assert_eq!(c.c1sq, &f16 * 289);
        assert_eq!(c.c2, &f16 * 145);
        assert_eq!(c, chern_numbers(gp(2, 4), ChernRoute::ClosedForm));
        for m in 1..5 {
            let c = chern_numbers(gp(m, 2), ChernRoute::Census);
            let k = m as i64;
            assert_eq!(
                c.c1sq,
                BigInt::from(factorial(4 * m as u64)) * (36 * k * k - 60 * k + 25)
            );
        }
    }

    #[test]
    fn index_examples() {
        let t = index_tau(gp(1, 2));
        assert_eq!(t.tau, rat(-8));
        assert_eq!(t.sign, Sign::Negative);
        assert_eq!(index_tau(gp(2, 3)).sign, Sign::Zero);
        let t = index_tau(gp(3, 5));
        assert_eq!(t.sign, Sign::Positive);
        assert_eq!(t.tau_factor, rat(1));
    }

    #[test]
    fn irregularity_examples() {
        let r = irregularity_report(gp(2, 4));
        assert_eq!((r.q_bound, r.h1_rank_bound, r.benchmark_q), (15, 30, None));
        let r = irregularity_report(gp(1, 2));
        assert_eq!(
            (r.subgroup_rank, r.h1_rank_bound, r.benchmark_q),
            (3, 6, Some(3))
        );
    }

    #[test]
    fn routes_agree_on_a_small_grid() {
        for m in 1..=3 {
            for n in 2..=5 {
                assert!(
                    cross_check(gp(m, n)).is_empty(),
                    "({m},{n}): {:?}",
                    cross_check(gp(m, n))
                );
            }
        }
    }
}
