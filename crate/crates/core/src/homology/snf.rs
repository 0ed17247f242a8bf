use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::elim::{field_rank, BigUnits, Eliminator, IntUnits, ModP, Pivoting, Rationals};
use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_SNF_BUDGET: u64 = 2_000_000_000;

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | ... | d_k`, all `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion.iter().map(|d| alloc::format!("{d}")).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .torsion
            .iter()
            .map(|d| alloc::format!("Z/{d}"))
            .collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                String::from("Z")
            } else {
                alloc::format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Serializable cross-validation record of one Smith normal form run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfCheck {
    pub rows: usize,
    pub cols: usize,
    /// Rank from the number of nonzero invariant factors.
    pub snf_rank: usize,
    /// Rank over the rationals by independent field elimination.
    pub rational_rank: usize,
    /// `(p, rank mod p, rank predicted from the invariant factors)`.
    pub mod_p: Vec<(u64, usize, usize)>,
    pub unit_pivots: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: AbelianInvariants,
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// Pivots removed by sparse unit elimination before the dense stage.
    pub unit_pivots: usize,
    /// Nonzero invariant factors in order, including the units.
    pub factors: Vec<BigUint>,
}

/// Removes zero and repeated rows; neither changes the row lattice.
fn dedup_rows<T: Clone + Ord>(rows: Vec<Vec<(u32, T)>>) -> Vec<Vec<(u32, T)>> {
    let mut seen = BTreeSet::new();
    rows.into_iter()
        .filter(|r| !r.is_empty() && seen.insert(r.clone()))
        .collect()
}

/// Smith normal form of the cokernel `Z^cols / rowspace`.
pub fn smith_normal_form(m: &IntegerMatrix, budget: u64) -> Result<SmithForm> {
    if let Some(rows) = m.to_i64_rows() {
        match snf_generic::<IntUnits>(m.cols, dedup_rows(rows), budget, |x| BigInt::from(*x)) {
            Err(Error::Overflow(_)) => {
                log::debug!("machine integers overflowed; retrying with big integers")
            }
            other => return other,
        }
    }
    snf_generic::<BigUnits>(m.cols, dedup_rows(m.rows.clone()), budget, |x| x.clone())
}

fn snf_generic<K: Pivoting>(
    cols: usize,
    rows: Vec<Vec<(u32, K::T)>>,
    budget: u64,
    to_big: impl Fn(&K::T) -> BigInt,
) -> Result<SmithForm> {
    let mut e = Eliminator::<K>::new(cols, rows, budget);
    e.run()?;
    let unit_pivots = e.rank;
    let rest_cols = e.remaining_cols();
    let index = |c: u32| rest_cols.binary_search(&c).expect("remaining column");
    let dense_rows: Vec<Vec<BigInt>> = e
        .remaining_rows()
        .into_iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); rest_cols.len()];
            for (c, v) in r {
                d[index(*c)] = to_big(v);
            }
            d
        })
        .collect();
    if (dense_rows.len() as u64).saturating_mul(rest_cols.len() as u64) > budget {
        return Err(Error::BudgetExceeded {
            budget: "snf dense stage",
            limit: budget,
        });
    }
    log::debug!(
        "snf: {unit_pivots} unit pivots, dense remainder {} x {}",
        dense_rows.len(),
        rest_cols.len()
    );
    let echelon = hermite_rows(dense_rows, rest_cols.len());
    let diag = dense_snf(echelon, rest_cols.len());
    let mut factors: Vec<BigUint> = vec![BigUint::one(); unit_pivots];
    factors.extend(diag);
    let rank = factors.len();
    let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(SmithForm {
        invariants: AbelianInvariants {
            free_rank: cols - rank,
            torsion,
        },
        rank,
        unit_pivots,
        factors,
    })
}

/// Integer row echelon form by repeated Euclidean row reduction; returns
/// only the nonzero rows.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut top = 0;
    for c in 0..cols {
        loop {
            let mut piv: Option<usize> = None;
            for i in top..rows.len() {
                if !rows[i][c].is_zero()
                    && piv.map_or(true, |p| rows[i][c].abs() < rows[p][c].abs())
                {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[top][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0][c..].iter_mut().zip(&head[top][c..]) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    rows.truncate(top);
    rows
}

/// Diagonal of the Smith normal form of a small dense matrix, nonzero
/// entries only, in divisibility order.
fn dense_snf(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigUint> {
    let rows = a.len();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().take(rows).skip(t) {
                    let x = &q * &row[t];
                    row[j] -= x;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold in any entry the pivot does not divide
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        let (head, tail) = a.split_at_mut(i);
                        for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            } else {
                // move the smallest entry of row/column t to the corner
                let mut best = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        t += 1;
    }
    let mut d: Vec<BigUint> = (0..rows.min(cols))
        .map(|i| a[i][i].magnitude().clone())
        .filter(|x| !x.is_zero())
        .collect();
    // the corner-by-corner pass yields a divisibility chain; sort defensively
    d.sort();
    d
}

fn to_mod<const P: u64>(rows: &[Vec<(u32, BigInt)>]) -> Vec<Vec<(u32, u64)>> {
    let p = BigInt::from(P);
    rows.iter()
        .map(|r| {
            r.iter()
                .filter_map(|(c, v)| {
                    let x: BigInt = v.mod_floor(&p);
                    let x = u64::try_from(x).expect("reduced");
                    (x != 0).then_some((*c, x))
                })
                .collect()
        })
        .collect()
}

pub fn rank_mod_p(m: &IntegerMatrix, p: u64, budget: u64) -> Result<usize> {
    let rows = dedup_rows(m.rows.clone());
    match p {
        2 => field_rank::<ModP<2>>(m.cols, to_mod::<2>(&rows), budget),
        3 => field_rank::<ModP<3>>(m.cols, to_mod::<3>(&rows), budget),
        5 => field_rank::<ModP<5>>(m.cols, to_mod::<5>(&rows), budget),
        7 => field_rank::<ModP<7>>(m.cols, to_mod::<7>(&rows), budget),
        11 => field_rank::<ModP<11>>(m.cols, to_mod::<11>(&rows), budget),
        _ => Err(Error::InvalidScript(alloc::format!(
            "unsupported prime {p}"
        ))),
    }
}

pub fn rational_rank(m: &IntegerMatrix, budget: u64) -> Result<usize> {
    let rows = dedup_rows(m.rows.clone())
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| (c, BigRational::from_integer(v)))
                .collect()
        })
        .collect();
    field_rank::<Rationals>(m.cols, rows, budget)
}

pub const CHECK_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// SNF together with the independent rank checks.
pub fn smith_with_checks(m: &IntegerMatrix, budget: u64) -> Result<(SmithForm, SnfCheck)> {
    let s = smith_normal_form(m, budget)?;
    let rational = rational_rank(m, budget)?;
    let mut mod_p = Vec::new();
    for p in CHECK_PRIMES {
        let r = rank_mod_p(m, p, budget)?;
        let pb = BigUint::from(p);
        let predicted = s.factors.iter().filter(|d| !(*d % &pb).is_zero()).count();
        mod_p.push((p, r, predicted));
    }
    let consistent = rational == s.rank && mod_p.iter().all(|&(_, r, pr)| r == pr);
    let check = SnfCheck {
        rows: m.row_count(),
        cols: m.cols,
        snf_rank: s.rank,
        rational_rank: rational,
        mod_p,
        unit_pivots: s.unit_pivots,
        consistent,
    };
    Ok((s, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf(cols: usize, dense: &[Vec<i64>]) -> AbelianInvariants {
        smith_normal_form(&IntegerMatrix::from_dense(cols, dense), DEFAULT_SNF_BUDGET)
            .unwrap()
            .invariants
    }

    fn inv(free: usize, t: &[u32]) -> AbelianInvariants {
        AbelianInvariants {
            free_rank: free,
            torsion: t.iter().map(|&x| BigUint::from(x)).collect(),
        }
    }

    #[test]
    fn textbook_cases() {
        assert_eq!(snf(2, &[vec![2, 0], vec![0, 3]]), inv(0, &[6]));
        assert_eq!(snf(5, &[vec![0; 5], vec![0; 5], vec![0; 5]]), inv(5, &[]));
        assert_eq!(snf(1, &[vec![2]]), inv(0, &[2]));
        assert_eq!(snf(2, &[vec![2, 4], vec![6, 8]]), inv(0, &[2, 4]));
        assert_eq!(
            snf(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            inv(0, &[2, 6, 12])
        );
        assert_eq!(snf(2, &[vec![1, 1]]), inv(1, &[]));
    }

    #[test]
    fn big_entries_fall_back_to_big_integers() {
        let big = i64::MAX / 2 + 7;
        let m = IntegerMatrix::from_dense(2, &[vec![1, big], vec![big, 3]]);
        let s = smith_normal_form(&m, DEFAULT_SNF_BUDGET).unwrap();
        let det = BigInt::from(3) - BigInt::from(big) * BigInt::from(big);
        assert_eq!(s.invariants.torsion, [det.magnitude().clone()]);
    }

    #[test]
    fn checks_are_consistent_on_torsion() {
        let m = IntegerMatrix::from_dense(3, &[vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]);
        let (s, c) = smith_with_checks(&m, DEFAULT_SNF_BUDGET).unwrap();
        assert_eq!(s.invariants, inv(1, &[2, 6]));
        assert!(c.consistent);
        assert_eq!(c.mod_p[0], (2, 0, 0));
        assert_eq!(c.mod_p[1], (3, 1, 1));
    }

    fn det_abs(a: &[Vec<i64>]) -> BigInt {
        // fraction-free via rationals
        let n = a.len();
        let mut m: Vec<Vec<BigRational>> = a
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c].clone();
            for i in c + 1..n {
                let f = &m[i][c] / &m[c][c];
                let (head, tail) = m.split_at_mut(i);
                for (x, y) in tail[0][c..].iter_mut().zip(&head[c][c..]) {
                    *x -= &f * y;
                }
            }
        }
        det.to_integer().abs()
    }

    proptest! {
        #[test]
        fn product_of_factors_is_the_determinant(v in proptest::collection::vec(-6i64..7, 9)) {
            let rows: Vec<Vec<i64>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let s = smith_normal_form(&IntegerMatrix::from_dense(3, &rows), DEFAULT_SNF_BUDGET).unwrap();
            let d = det_abs(&rows);
            if s.rank == 3 {
                let prod = s.factors.iter().fold(BigUint::one(), |a, b| a * b);
                prop_assert_eq!(BigInt::from(prod), d);
            } else {
                prop_assert!(d.is_zero());
            }
            prop_assert!(s.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        }

        #[test]
        fn ranks_agree(v in proptest::collection::vec(-3i64..4, 20)) {
            let rows: Vec<Vec<i64>> = v.chunks(5).map(|c| c.to_vec()).collect();
            let m = IntegerMatrix::from_dense(5, &rows);
            let (_, c) = smith_with_checks(&m, DEFAULT_SNF_BUDGET).unwrap();
            prop_assert!(c.consistent, "{:?}", c);
        }
    }
}
