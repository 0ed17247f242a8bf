//! Permutations of triangle labels and the transposition homomorphism.

use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::DegenerationComplex;
use crate::presentation::{GroupPresentation, RelatorTag};
use crate::word::Word;

/// A permutation of `1..=degree`, stored 0-based. Products act on the
/// right: `(a * b)(x) = b(a(x))`, so a word is evaluated left to right.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// From 1-based images; `None` unless it is a bijection.
    pub fn from_images(images: &[u32]) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &x in images {
            let i = x.checked_sub(1)? as usize;
            if i >= n || core::mem::replace(&mut seen[i], true) {
                return None;
            }
            v.push(i as u32);
        }
        Some(Permutation(v))
    }

    /// Transposition of the 1-based points `a != b`.
    pub fn transposition(degree: usize, a: u32, b: u32) -> Self {
        let mut p = Self::identity(degree);
        p.0.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize - 1] + 1
    }

    pub fn images(&self) -> Vec<u32> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// First `self`, then `other`.
    #[must_use]
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    /// In-place right multiplication `self := self * other`.
    pub fn then_assign(&mut self, other: &Permutation) {
        for x in &mut self.0 {
            *x = other.0[*x as usize];
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Permutation {
        let mut v = alloc::vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u32;
        }
        Permutation(v)
    }

    /// `+1` for even, `-1` for odd.
    pub fn sign(&self) -> i32 {
        let mut seen = alloc::vec![false; self.0.len()];
        let mut s = 1;
        for i in 0..self.0.len() {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = alloc::vec![false; self.0.len()];
        let mut any = false;
        for i in 0..self.0.len() {
            if seen[i] || self.0[i] as usize == i {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut j = i;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", j + 1)?;
                first = false;
                j = self.0[j] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Images of the generators: entry `j - 1` is the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermMap {
    pub degree: usize,
    pub images: Vec<Permutation>,
}

impl PermMap {
    pub fn get(&self, g: u32) -> Result<&Permutation> {
        g.checked_sub(1)
            .and_then(|i| self.images.get(i as usize))
            .ok_or(Error::UnknownGenerator(g))
    }
}

/// Edge `j` goes to the transposition of the two triangles along it.
pub fn transposition_map(c: &DegenerationComplex) -> PermMap {
    let degree = c.triangles.len();
    let images = c
        .edges
        .iter()
        .map(|e| Permutation::transposition(degree, e.triangles.0, e.triangles.1))
        .collect();
    PermMap { degree, images }
}

pub fn eval_word(w: &Word, map: &PermMap) -> Result<Permutation> {
    let mut p = Permutation::identity(map.degree);
    for l in w.letters() {
        let g = map.get(l.generator())?;
        if l.is_inverse() {
            p.then_assign(&g.inverse());
        } else {
            p.then_assign(g);
        }
    }
    Ok(p)
}

pub fn kernel_membership(w: &Word, map: &PermMap) -> Result<bool> {
    Ok(eval_word(w, map)?.is_identity())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorCheck {
    pub tag: RelatorTag,
    pub label: alloc::string::String,
    pub word: Word,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub checks: Vec<RelatorCheck>,
    pub pass: bool,
    /// First relator with a non-identity image.
    pub counterexample: Option<Word>,
}

impl HomReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn verify_relators(p: &GroupPresentation, map: &PermMap) -> Result<HomReport> {
    if p.generator_count() != map.images.len() {
        return Err(Error::GeneratorMismatch {
            expected: map.images.len(),
            found: p.generator_count(),
        });
    }
    let mut checks = Vec::with_capacity(p.relators.len());
    for r in &p.relators {
        let pass = kernel_membership(&r.word, map)?;
        checks.push(RelatorCheck {
            tag: r.tag,
            label: r.label(),
            word: r.word.clone(),
            pass,
        });
    }
    let counterexample = checks.iter().find(|c| !c.pass).map(|c| c.word.clone());
    Ok(HomReport {
        pass: counterexample.is_none(),
        checks,
        counterexample,
    })
}

/// True when the generator images act transitively on the points.
pub fn is_transitive(map: &PermMap) -> bool {
    if map.degree == 0 {
        return true;
    }
    let mut seen = alloc::vec![false; map.degree];
    let mut stack = alloc::vec![1u32];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for g in &map.images {
            let y = g.apply(x);
            if !core::mem::replace(&mut seen[y as usize - 1], true) {
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}
