use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::presentation::GroupPresentation;
use crate::word::Word;

/// Sparse integer matrix; rows hold `(column, value)` pairs with strictly
/// increasing columns and no zero values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(u32, BigInt)>>,
}

impl IntegerMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| Vec::new()).collect(),
        }
    }

    /// From dense rows of machine integers.
    pub fn from_dense(cols: usize, dense: &[Vec<i64>]) -> Self {
        let mut m = Self::new(cols);
        for r in dense {
            m.push_dense(r);
        }
        m
    }

    pub fn push_dense(&mut self, r: &[i64]) {
        assert_eq!(r.len(), self.cols, "row length");
        self.rows.push(
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(c, v)| (c as u32, BigInt::from(*v)))
                .collect(),
        );
    }

    pub fn push_sparse(&mut self, mut r: Vec<(u32, BigInt)>) {
        r.retain(|(_, v)| !v.is_zero());
        r.sort_by_key(|e| e.0);
        debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(r.last().map_or(true, |e| (e.0 as usize) < self.cols));
        self.rows.push(r);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, row: usize, col: u32) -> BigInt {
        self.rows[row]
            .binary_search_by_key(&col, |e| e.0)
            .map(|i| self.rows[row][i].1.clone())
            .unwrap_or_default()
    }

    /// Largest absolute entry, if it fits in `i64`.
    pub fn max_abs(&self) -> Option<i64> {
        self.rows
            .iter()
            .flatten()
            .map(|(_, v)| v.magnitude().to_i64())
            .try_fold(0i64, |acc, x| x.map(|x| acc.max(x)))
    }

    /// Rows as machine integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<(u32, i64)>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
            .collect()
    }

    /// Appends the rows of `other` (same column count).
    pub fn stacked(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        IntegerMatrix {
            cols: self.cols,
            rows,
        }
    }
}

/// Sparse exponent-sum vector of a word over `gens` generators.
pub fn exponent_row(w: &Word, gens: usize) -> Result<Vec<(u32, BigInt)>> {
    let sums = w.exponent_sums(gens)?;
    Ok(sums
        .into_iter()
        .enumerate()
        .filter(|(_, v)| *v != 0)
        .map(|(c, v)| (c as u32, BigInt::from(v)))
        .collect())
}

/// One row per relator: the exponent sum of each generator.
pub fn abelianize(p: &GroupPresentation) -> Result<IntegerMatrix> {
    let mut m = IntegerMatrix::new(p.generator_count());
    for r in &p.relators {
        m.push_sparse(exponent_row(&r.word, p.generator_count())?);
    }
    Ok(m)
}
