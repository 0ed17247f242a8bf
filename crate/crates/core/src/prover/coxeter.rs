//! Word problem in the Coxeter quotient generated by the braid and commute
//! moves alone, via the geometric representation and the exchange
//! condition. Every reduction is realized by recorded moves.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::moves::{MoveSet, PairKind, Step};
use crate::error::{Error, Result};

/// Geometric representation restricted to an alphabet: twice the bilinear
/// form is 2 on the diagonal, 0 for commuting pairs, -1 for braid pairs and
/// -2 for pairs with no relation.
#[derive(Debug, Clone)]
pub struct Coxeter<'a> {
    moves: &'a MoveSet,
    index: BTreeMap<u32, usize>,
    letters: Vec<u32>,
    form: Vec<Vec<i64>>,
}

impl<'a> Coxeter<'a> {
    pub fn new(moves: &'a MoveSet, alphabet: &[u32]) -> Self {
        let mut letters = alphabet.to_vec();
        letters.sort_unstable();
        letters.dedup();
        let index = letters.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let form = letters
            .iter()
            .map(|&a| {
                letters
                    .iter()
                    .map(|&b| match (a == b, moves.pair(a, b)) {
                        (true, _) => 2,
                        (_, PairKind::Commute) => 0,
                        (_, PairKind::Braid) => -1,
                        (_, PairKind::Free) => -2,
                    })
                    .collect()
            })
            .collect();
        Self {
            moves,
            index,
            letters,
            form,
        }
    }

    /// `u(e_s)` computed right to left.
    fn image(&self, u: &[u32], s: u32) -> Result<Vec<i128>> {
        let mut v = vec![0i128; self.letters.len()];
        v[self.index[&s]] = 1;
        for &g in u.iter().rev() {
            let i = self.index[&g];
            let mut dot: i128 = 0;
            for (j, &b) in self.form[i].iter().enumerate() {
                if b != 0 && v[j] != 0 {
                    dot = dot
                        .checked_add(
                            (b as i128)
                                .checked_mul(v[j])
                                .ok_or(Error::Overflow("root"))?,
                        )
                        .ok_or(Error::Overflow("root"))?;
                }
            }
            v[i] = v[i].checked_sub(dot).ok_or(Error::Overflow("root"))?;
        }
        Ok(v)
    }

    /// Whether `u s` is shorter than `u`, for reduced `u`.
    pub fn is_right_descent(&self, u: &[u32], s: u32) -> Result<bool> {
        let v = self.image(u, s)?;
        Ok(v.iter().any(|&x| x < 0))
    }

    /// Rearranges the reduced prefix `w[..len]`, which has `s` as a right
    /// descent, until it ends in `s`.
    fn make_end(&self, w: &mut [u32], len: usize, s: u32, steps: &mut Vec<Step>) -> Result<()> {
        let t = w[len - 1];
        if t == s {
            return Ok(());
        }
        match self.moves.pair(s, t) {
            PairKind::Commute => {
                self.make_end(w, len - 1, s, steps)?;
                w.swap(len - 2, len - 1);
                steps.push(Step::Commute { pos: len - 2 });
            }
            PairKind::Braid => {
                self.make_end(w, len - 1, s, steps)?;
                self.make_end(w, len - 2, t, steps)?;
                w[len - 3] = s;
                w[len - 2] = t;
                w[len - 1] = s;
                steps.push(Step::Braid { pos: len - 3 });
            }
            PairKind::Free => {
                return Err(Error::InvalidScript("two descents with no relation".into()))
            }
        }
        Ok(())
    }

    /// Reduces `w` in place, left to right, deleting letters by the exchange
    /// condition.
    pub fn reduce(&self, w: &mut Vec<u32>, steps: &mut Vec<Step>) -> Result<()> {
        let mut k = 0;
        while k < w.len() {
            let s = w[k];
            if k > 0 && self.is_right_descent(&w[..k], s)? {
                self.make_end(w, k, s, steps)?;
                steps.push(Step::Cancel { pos: k - 1, gen: s });
                w.drain(k - 1..k + 1);
                k -= 1;
            } else {
                k += 1;
            }
        }
        Ok(())
    }

    /// Rewrites a reduced word into the element's normal form: the last
    /// letter is the smallest right descent, recursively.
    pub fn normalize(&self, w: &mut [u32], steps: &mut Vec<Step>) -> Result<()> {
        let mut len = w.len();
        while len > 0 {
            let mut s = None;
            for &g in &self.letters {
                if self.is_right_descent(&w[..len], g)? {
                    s = Some(g);
                    break;
                }
            }
            let s = s.expect("nonempty reduced word has a descent");
            self.make_end(w, len, s, steps)?;
            len -= 1;
        }
        Ok(())
    }

    /// Reduces then normalizes.
    pub fn normal_form(&self, w: &[u32]) -> Result<(Vec<u32>, Vec<Step>)> {
        let mut v = w.to_vec();
        let mut steps = Vec::new();
        self.reduce(&mut v, &mut steps)?;
        self.normalize(&mut v, &mut steps)?;
        Ok((v, steps))
    }
}
