use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::coset::CosetTable;
use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, Relator};
use crate::word::{Letter, Word};

/// Numbering of the non-tree table entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGenerators {
    gens: usize,
    /// `ids[c * gens + g - 1]`: Schreier generator id (1-based) or 0 for tree
    /// entries.
    ids: Vec<u32>,
    count: usize,
}

impl SchreierGenerators {
    pub fn new(t: &CosetTable) -> Self {
        let mut ids = vec![0u32; t.len() * t.gens];
        let mut count = 0;
        for c in 0..t.len() as u32 {
            for g in 1..=t.gens as u32 {
                if !t.is_tree_entry(c, g) {
                    count += 1;
                    ids[c as usize * t.gens + g as usize - 1] = count as u32;
                }
            }
        }
        Self {
            gens: t.gens,
            ids,
            count,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Schreier generator of entry `(coset, g)`; `None` on the tree.
    pub fn id(&self, coset: u32, g: u32) -> Option<u32> {
        match self.ids[coset as usize * self.gens + g as usize - 1] {
            0 => None,
            s => Some(s),
        }
    }
}

/// Rewrites `w` read from `start` into Schreier generators; returns the word
/// and the coset it ends in.
pub fn rewrite(
    w: &Word,
    start: u32,
    t: &CosetTable,
    s: &SchreierGenerators,
) -> Result<(Word, u32)> {
    let mut out = Vec::new();
    let mut c = start;
    for l in w.letters() {
        let g = l.generator();
        if g as usize > t.gens || g == 0 {
            return Err(Error::UnknownGenerator(g));
        }
        if l.is_inverse() {
            let d = t.act_inverse(c, g);
            if let Some(x) = s.id(d, g) {
                out.push(Letter::gen_inv(x));
            }
            c = d;
        } else {
            if let Some(x) = s.id(c, g) {
                out.push(Letter::gen(x));
            }
            c = t.act(c, g);
        }
    }
    Ok((Word::from_letters(out), c))
}

/// Presentation of the subgroup for coset 0 on the Schreier generators:
/// every relator rewritten at every coset. Relators are kept unreduced and in
/// relator-major order; keys gain the coset as a last entry.
pub fn reidemeister_schreier(p: &GroupPresentation, t: &CosetTable) -> Result<GroupPresentation> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable);
    }
    if p.generator_count() != t.gens {
        return Err(Error::GeneratorMismatch {
            expected: t.gens,
            found: p.generator_count(),
        });
    }
    let s = SchreierGenerators::new(t);
    let mut relators = Vec::with_capacity(p.relators.len() * t.len());
    for r in &p.relators {
        for c in 0..t.len() as u32 {
            let (w, end) = rewrite(&r.word, c, t, &s)?;
            if end != c {
                return Err(Error::InvalidStep {
                    step: 0,
                    reason: format!("relator {} does not close at coset {c}", r.label()),
                });
            }
            let mut key = r.key.clone();
            key.push(c);
            relators.push(Relator::new(r.tag, key, w));
        }
    }
    let generators = (1..=s.count()).map(|i| format!("s{i}")).collect();
    Ok(GroupPresentation {
        generators,
        relators,
    })
}
