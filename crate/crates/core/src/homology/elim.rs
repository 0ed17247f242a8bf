//! Sparse Gaussian elimination with Markowitz-style pivoting, shared by the
//! integer (unit pivots only) and field (any nonzero pivot) variants.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic used by the eliminator.
pub trait Pivoting {
    type T: Clone + Debug;

    fn is_zero(x: &Self::T) -> bool;
    /// Whether `x` may serve as a pivot.
    fn usable(x: &Self::T) -> bool;
    /// Lower is preferred among usable pivots.
    fn cost(x: &Self::T) -> u32;
    /// `f` with `a - f * p = 0`.
    fn factor(a: &Self::T, p: &Self::T) -> Self::T;
    /// `x - f * y`, or `None` on overflow.
    fn sub_mul(x: &Self::T, f: &Self::T, y: &Self::T) -> Option<Self::T>;
    /// `-f * y`, or `None` on overflow.
    fn neg_mul(f: &Self::T, y: &Self::T) -> Option<Self::T>;
}

pub struct IntUnits;

impl Pivoting for IntUnits {
    type T = i64;
    fn is_zero(x: &i64) -> bool {
        *x == 0
    }
    fn usable(x: &i64) -> bool {
        *x == 1 || *x == -1
    }
    fn cost(_: &i64) -> u32 {
        0
    }
    fn factor(a: &i64, p: &i64) -> i64 {
        a * p
    }
    fn sub_mul(x: &i64, f: &i64, y: &i64) -> Option<i64> {
        x.checked_sub(f.checked_mul(*y)?)
    }
    fn neg_mul(f: &i64, y: &i64) -> Option<i64> {
        f.checked_mul(*y)?.checked_neg()
    }
}

pub struct BigUnits;

impl Pivoting for BigUnits {
    type T = BigInt;
    fn is_zero(x: &BigInt) -> bool {
        x.is_zero()
    }
    fn usable(x: &BigInt) -> bool {
        x.magnitude().is_one()
    }
    fn cost(_: &BigInt) -> u32 {
        0
    }
    fn factor(a: &BigInt, p: &BigInt) -> BigInt {
        a * p
    }
    fn sub_mul(x: &BigInt, f: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(x - f * y)
    }
    fn neg_mul(f: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(-(f * y))
    }
}

/// The prime field `GF(P)`, values in `0..P`.
pub struct ModP<const P: u64>;

impl<const P: u64> Pivoting for ModP<P> {
    type T = u64;
    fn is_zero(x: &u64) -> bool {
        *x == 0
    }
    fn usable(x: &u64) -> bool {
        *x != 0
    }
    fn cost(_: &u64) -> u32 {
        0
    }
    fn factor(a: &u64, p: &u64) -> u64 {
        a * pow_mod(*p, P - 2, P) % P
    }
    fn sub_mul(x: &u64, f: &u64, y: &u64) -> Option<u64> {
        Some((x + P - f * y % P) % P)
    }
    fn neg_mul(f: &u64, y: &u64) -> Option<u64> {
        Some((P - f * y % P) % P)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub struct Rationals;

impl Pivoting for Rationals {
    type T = BigRational;
    fn is_zero(x: &BigRational) -> bool {
        x.is_zero()
    }
    fn usable(x: &BigRational) -> bool {
        !x.is_zero()
    }
    fn cost(x: &BigRational) -> u32 {
        if x.abs().is_one() {
            0
        } else {
            (x.numer().bits() + x.denom().bits()) as u32
        }
    }
    fn factor(a: &BigRational, p: &BigRational) -> BigRational {
        a / p
    }
    fn sub_mul(x: &BigRational, f: &BigRational, y: &BigRational) -> Option<BigRational> {
        Some(x - f * y)
    }
    fn neg_mul(f: &BigRational, y: &BigRational) -> Option<BigRational> {
        Some(-(f * y))
    }
}

pub struct Eliminator<K: Pivoting> {
    cols: usize,
    rows: Vec<Vec<(u32, K::T)>>,
    alive: Vec<bool>,
    col_rows: Vec<BTreeSet<u32>>,
    queue: BTreeSet<(usize, u32)>,
    /// Column scanned without a usable entry since its last change.
    stale: Vec<bool>,
    pub rank: usize,
    pub eliminated_cols: Vec<u32>,
    budget: u64,
    spent: u64,
}

impl<K: Pivoting> Eliminator<K> {
    pub fn new(cols: usize, rows: Vec<Vec<(u32, K::T)>>, budget: u64) -> Self {
        let mut col_rows = vec![BTreeSet::new(); cols];
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                col_rows[*c as usize].insert(i as u32);
            }
        }
        let queue = col_rows
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(c, s)| (s.len(), c as u32))
            .collect();
        let alive = rows.iter().map(|r| !r.is_empty()).collect();
        Self {
            cols,
            rows,
            alive,
            col_rows,
            queue,
            stale: vec![false; cols],
            rank: 0,
            eliminated_cols: Vec::new(),
            budget,
            spent: 0,
        }
    }

    fn pick(&mut self) -> Option<(u32, u32)> {
        let mut newly_stale = Vec::new();
        let mut found = None;
        for &(_, c) in &self.queue {
            if self.stale[c as usize] {
                continue;
            }
            let mut best: Option<(u32, usize, u32)> = None;
            for &r in &self.col_rows[c as usize] {
                let row = &self.rows[r as usize];
                let i = row.binary_search_by_key(&c, |e| e.0).expect("column index");
                let v = &row[i].1;
                if K::usable(v) {
                    let key = (K::cost(v), row.len(), r);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
            match best {
                Some((_, _, r)) => {
                    found = Some((r, c));
                    break;
                }
                None => newly_stale.push(c),
            }
        }
        for c in newly_stale {
            self.stale[c as usize] = true;
        }
        found
    }

    fn set_count(&mut self, c: u32, before: usize) {
        self.queue.remove(&(before, c));
        let now = self.col_rows[c as usize].len();
        if now > 0 {
            self.queue.insert((now, c));
        }
        self.stale[c as usize] = false;
    }

    /// Eliminates until no usable pivot remains.
    pub fn run(&mut self) -> Result<()> {
        while let Some((r, c)) = self.pick() {
            self.pivot(r, c)?;
        }
        Ok(())
    }

    fn pivot(&mut self, r: u32, c: u32) -> Result<()> {
        let prow = core::mem::take(&mut self.rows[r as usize]);
        let pv = prow[prow.binary_search_by_key(&c, |e| e.0).expect("pivot")]
            .1
            .clone();
        let targets: Vec<u32> = self.col_rows[c as usize]
            .iter()
            .copied()
            .filter(|&i| i != r)
            .collect();
        for i in targets {
            let row = core::mem::take(&mut self.rows[i as usize]);
            let a = &row[row.binary_search_by_key(&c, |e| e.0).expect("entry")].1;
            let f = K::factor(a, &pv);
            self.spent += (row.len() + prow.len()) as u64;
            if self.spent > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: "elimination",
                    limit: self.budget,
                });
            }
            let mut out = Vec::with_capacity(row.len() + prow.len());
            let (mut x, mut y) = (0, 0);
            while x < row.len() || y < prow.len() {
                let cx = row.get(x).map_or(u32::MAX, |e| e.0);
                let cy = prow.get(y).map_or(u32::MAX, |e| e.0);
                if cx < cy {
                    out.push(row[x].clone());
                    x += 1;
                } else {
                    let v = if cx == cy {
                        K::sub_mul(&row[x].1, &f, &prow[y].1)
                    } else {
                        K::neg_mul(&f, &prow[y].1)
                    }
                    .ok_or(Error::Overflow("sparse elimination"))?;
                    let before = self.col_rows[cy as usize].len();
                    if K::is_zero(&v) {
                        self.col_rows[cy as usize].remove(&i);
                    } else {
                        self.col_rows[cy as usize].insert(i);
                        out.push((cy, v));
                    }
                    self.set_count(cy, before);
                    if cx == cy {
                        x += 1;
                    }
                    y += 1;
                }
            }
            if out.is_empty() {
                self.alive[i as usize] = false;
            }
            self.rows[i as usize] = out;
        }
        for (col, _) in &prow {
            let before = self.col_rows[*col as usize].len();
            self.col_rows[*col as usize].remove(&r);
            self.set_count(*col, before);
        }
        self.alive[r as usize] = false;
        self.rank += 1;
        self.eliminated_cols.push(c);
        Ok(())
    }

    /// Rows still holding entries, each with its entries.
    pub fn remaining_rows(&self) -> Vec<&Vec<(u32, K::T)>> {
        self.rows
            .iter()
            .zip(&self.alive)
            .filter(|(r, a)| **a && !r.is_empty())
            .map(|(r, _)| r)
            .collect()
    }

    /// Columns that still hold entries, ascending.
    pub fn remaining_cols(&self) -> Vec<u32> {
        (0..self.cols as u32)
            .filter(|&c| !self.col_rows[c as usize].is_empty())
            .collect()
    }
}

/// Rank of a sparse matrix over a field.
pub fn field_rank<K: Pivoting>(
    cols: usize,
    rows: Vec<Vec<(u32, K::T)>>,
    budget: u64,
) -> Result<usize> {
    let mut e = Eliminator::<K>::new(cols, rows, budget);
    e.run()?;
    debug_assert!(e.remaining_rows().is_empty());
    Ok(e.rank)
}
