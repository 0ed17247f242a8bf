use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, RelatorTag};
use crate::word::Word;

/// Relation between two generators of an involutory presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Commute,
    Braid,
    Free,
}

/// A substitution `lhs -> rhs`, valid because `lhs rhs^-1` is a cyclic
/// rotation of a relator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
    /// Index of the source relator in the presentation.
    pub source: usize,
}

/// Rewrite moves derived from an involutory presentation.
#[derive(Debug, Clone)]
pub struct MoveSet {
    gens: u32,
    pairs: Vec<PairKind>,
    pub rules: Vec<Rule>,
    inverse: Vec<usize>,
    /// Rules indexed by their first letter.
    by_first: BTreeMap<u32, Vec<usize>>,
}

impl MoveSet {
    /// Involution, braid and commutation relators become dedicated moves;
    /// every other relator contributes all of its cyclic windows of at least
    /// half its length as substitution rules, in both directions.
    pub fn from_presentation(p: &GroupPresentation) -> Result<Self> {
        p.validate()?;
        let gens = p.generator_count() as u32;
        let mut pairs = vec![PairKind::Free; (gens * gens) as usize];
        let mut rule_set: BTreeMap<(Vec<u32>, Vec<u32>), usize> = BTreeMap::new();
        for (idx, r) in p.relators.iter().enumerate() {
            let w = r.word.involutory_reduce().gens();
            match r.tag {
                RelatorTag::Involution => continue,
                RelatorTag::Triple if w.len() == 6 => {
                    set_pair(&mut pairs, gens, w[0], w[1], PairKind::Braid);
                    continue;
                }
                RelatorTag::Commutator if w.len() == 4 => {
                    set_pair(&mut pairs, gens, w[0], w[1], PairKind::Commute);
                    continue;
                }
                _ => {}
            }
            let len = w.len();
            if len < 2 {
                continue;
            }
            for rel in [w.clone(), w.iter().rev().copied().collect::<Vec<_>>()] {
                for start in 0..len {
                    for k in len.div_ceil(2)..=len {
                        let lhs: Vec<u32> = (0..k).map(|i| rel[(start + i) % len]).collect();
                        let rhs: Vec<u32> =
                            (k..len).rev().map(|i| rel[(start + i) % len]).collect();
                        rule_set.entry((lhs.clone(), rhs.clone())).or_insert(idx);
                        rule_set.entry((rhs, lhs)).or_insert(idx);
                    }
                }
            }
        }
        let rules: Vec<Rule> = rule_set
            .into_iter()
            .map(|((lhs, rhs), source)| Rule { lhs, rhs, source })
            .collect();
        let index: BTreeMap<(&[u32], &[u32]), usize> = rules
            .iter()
            .enumerate()
            .map(|(i, r)| ((&r.lhs[..], &r.rhs[..]), i))
            .collect();
        let inverse = rules
            .iter()
            .map(|r| index[&(&r.rhs[..], &r.lhs[..])])
            .collect();
        let mut by_first: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(&f) = r.lhs.first() {
                by_first.entry(f).or_default().push(i);
            }
        }
        Ok(Self {
            gens,
            pairs,
            rules,
            inverse,
            by_first,
        })
    }

    pub fn generator_count(&self) -> u32 {
        self.gens
    }

    pub fn pair(&self, a: u32, b: u32) -> PairKind {
        if a == b || a == 0 || b == 0 || a > self.gens || b > self.gens {
            return PairKind::Free;
        }
        self.pairs[((a - 1) * self.gens + b - 1) as usize]
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.pair(a, b) == PairKind::Commute
    }

    pub fn braid(&self, a: u32, b: u32) -> bool {
        self.pair(a, b) == PairKind::Braid
    }

    pub fn inverse_rule(&self, r: usize) -> usize {
        self.inverse[r]
    }

    pub fn rules_starting_with(&self, g: u32) -> &[usize] {
        self.by_first.get(&g).map_or(&[], |v| v.as_slice())
    }

    /// A copy in which the pair `(a, b)` satisfies no relation.
    pub fn without_pair(&self, a: u32, b: u32) -> Self {
        let mut m = self.clone();
        set_pair(&mut m.pairs, m.gens, a, b, PairKind::Free);
        m
    }

    /// Rejects letters outside `1..=gens`.
    pub fn check_alphabet(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.generator() > self.gens) {
            Some(l) => Err(Error::AlphabetMismatch(l.generator())),
            None => Ok(()),
        }
    }
}

fn set_pair(pairs: &mut [PairKind], gens: u32, a: u32, b: u32, k: PairKind) {
    pairs[((a - 1) * gens + b - 1) as usize] = k;
    pairs[((b - 1) * gens + a - 1) as usize] = k;
}

/// One rewrite step on an involutory word, acting at `pos` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    /// `x y -> y x` for a commuting pair.
    Commute { pos: usize },
    /// `x y x -> y x y` for a braid pair.
    Braid { pos: usize },
    /// `g g -> e`.
    Cancel { pos: usize, gen: u32 },
    /// `e -> g g`.
    Insert { pos: usize, gen: u32 },
    /// `lhs -> rhs` for rule `rule`.
    Rewrite { pos: usize, rule: usize },
}

impl Step {
    pub fn shifted(&self, by: usize) -> Step {
        match *self {
            Step::Commute { pos } => Step::Commute { pos: pos + by },
            Step::Braid { pos } => Step::Braid { pos: pos + by },
            Step::Cancel { pos, gen } => Step::Cancel { pos: pos + by, gen },
            Step::Insert { pos, gen } => Step::Insert { pos: pos + by, gen },
            Step::Rewrite { pos, rule } => Step::Rewrite {
                pos: pos + by,
                rule,
            },
        }
    }

    pub fn inverse(&self, moves: &MoveSet) -> Step {
        match *self {
            Step::Commute { pos } => Step::Commute { pos },
            Step::Braid { pos } => Step::Braid { pos },
            Step::Cancel { pos, gen } => Step::Insert { pos, gen },
            Step::Insert { pos, gen } => Step::Cancel { pos, gen },
            Step::Rewrite { pos, rule } => Step::Rewrite {
                pos,
                rule: moves.inverse_rule(rule),
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Step::Commute { .. } => "commute",
            Step::Braid { .. } => "braid",
            Step::Cancel { .. } => "cancel",
            Step::Insert { .. } => "insert",
            Step::Rewrite { .. } => "rewrite",
        }
    }
}

fn bad(step: usize, reason: String) -> Error {
    Error::InvalidStep { step, reason }
}

/// Applies one step in place, checking that it is legal.
pub fn apply_step(w: &mut Vec<u32>, s: &Step, moves: &MoveSet, index: usize) -> Result<()> {
    match *s {
        Step::Commute { pos } => {
            if pos + 1 >= w.len() || !moves.commute(w[pos], w[pos + 1]) {
                return Err(bad(index, format!("no commuting pair at {pos}")));
            }
            w.swap(pos, pos + 1);
        }
        Step::Braid { pos } => {
            if pos + 2 >= w.len() || w[pos] != w[pos + 2] || !moves.braid(w[pos], w[pos + 1]) {
                return Err(bad(index, format!("no braid at {pos}")));
            }
            let (x, y) = (w[pos], w[pos + 1]);
            w[pos] = y;
            w[pos + 1] = x;
            w[pos + 2] = y;
        }
        Step::Cancel { pos, gen } => {
            if pos + 1 >= w.len() || w[pos] != gen || w[pos + 1] != gen {
                return Err(bad(index, format!("no `{gen} {gen}` at {pos}")));
            }
            w.drain(pos..pos + 2);
        }
        Step::Insert { pos, gen } => {
            if pos > w.len() || gen == 0 || gen > moves.generator_count() {
                return Err(bad(index, format!("cannot insert {gen} at {pos}")));
            }
            w.splice(pos..pos, [gen, gen]);
        }
        Step::Rewrite { pos, rule } => {
            let r = moves
                .rules
                .get(rule)
                .ok_or_else(|| bad(index, format!("unknown rule {rule}")))?;
            if pos + r.lhs.len() > w.len() || w[pos..pos + r.lhs.len()] != r.lhs[..] {
                return Err(bad(index, format!("rule {rule} does not match at {pos}")));
            }
            w.splice(pos..pos + r.lhs.len(), r.rhs.iter().copied());
        }
    }
    Ok(())
}

/// A replayable proof that `initial` equals `final_word`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub initial: Word,
    #[serde(rename = "final")]
    pub final_word: Word,
    pub steps: Vec<Step>,
}

impl ProofTrace {
    pub fn empty(w: &Word) -> Self {
        Self {
            initial: w.clone(),
            final_word: w.clone(),
            steps: Vec::new(),
        }
    }

    /// Replays every step from `initial` and returns the resulting word.
    pub fn replay(&self, moves: &MoveSet) -> Result<Word> {
        let mut w = self.initial.gens();
        for (i, s) in self.steps.iter().enumerate() {
            apply_step(&mut w, s, moves, i)?;
        }
        Ok(Word::from_gens(&w))
    }

    /// Replays and checks that the final word is reproduced exactly.
    pub fn verify(&self, moves: &MoveSet) -> Result<()> {
        let end = self.replay(moves)?;
        if end != self.final_word {
            return Err(bad(
                self.steps.len(),
                format!("replay ends at `{end}`, not `{}`", self.final_word),
            ));
        }
        Ok(())
    }

    /// The trace read backwards.
    pub fn inverted(&self, moves: &MoveSet) -> ProofTrace {
        ProofTrace {
            initial: self.final_word.clone(),
            final_word: self.initial.clone(),
            steps: self.steps.iter().rev().map(|s| s.inverse(moves)).collect(),
        }
    }

    /// `self` followed by `next`; `next` must start where `self` ends.
    pub fn then(mut self, next: &ProofTrace) -> ProofTrace {
        debug_assert_eq!(self.final_word, next.initial);
        self.steps.extend(next.steps.iter().cloned());
        self.final_word = next.final_word.clone();
        self
    }

    /// Number of steps of each kind, in a fixed order.
    pub fn census(&self) -> [(&'static str, usize); 5] {
        let mut c = [
            ("commute", 0),
            ("braid", 0),
            ("cancel", 0),
            ("insert", 0),
            ("rewrite", 0),
        ];
        for s in &self.steps {
            let i = match s {
                Step::Commute { .. } => 0,
                Step::Braid { .. } => 1,
                Step::Cancel { .. } => 2,
                Step::Insert { .. } => 3,
                Step::Rewrite { .. } => 4,
            };
            c[i].1 += 1;
        }
        c
    }

    /// Unordered generator pairs on which a braid move acts.
    pub fn braid_pairs(&self, moves: &MoveSet) -> Vec<(u32, u32)> {
        let mut w = self.initial.gens();
        let mut out = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            if let Step::Braid { pos } = *s {
                let (a, b) = (w[pos], w[pos + 1]);
                out.push((a.min(b), a.max(b)));
            }
            if apply_step(&mut w, s, moves, i).is_err() {
                break;
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{DegenerationComplex, GridParams};
    use crate::perm::{eval_word, transposition_map};
    use crate::presentation::{cy_e6_presentation, g1_presentation};
    use proptest::prelude::*;

    fn setup() -> (MoveSet, crate::perm::PermMap) {
        let c = DegenerationComplex::build(GridParams::new(2, 4).unwrap());
        (
            MoveSet::from_presentation(&g1_presentation(&c)).unwrap(),
            transposition_map(&c),
        )
    }

    #[test]
    fn rules_are_sound_under_the_permutation_map() {
        let (m, map) = setup();
        assert!(!m.rules.is_empty());
        for r in &m.rules {
            let (a, b) = (
                eval_word(&Word::from_gens(&r.lhs), &map).unwrap(),
                eval_word(&Word::from_gens(&r.rhs), &map).unwrap(),
            );
            assert_eq!(a, b, "{r:?}");
            assert_eq!(
                m.rules[m.inverse_rule(m.rules.iter().position(|x| x == r).unwrap())].lhs,
                r.rhs
            );
        }
    }

    #[test]
    fn pair_kinds() {
        let (m, _) = setup();
        assert!(m.braid(1, 2));
        assert!(m.commute(1, 13));
        assert_eq!(m.pair(1, 1), PairKind::Free);
        assert_eq!(m.without_pair(1, 2).pair(1, 2), PairKind::Free);
        let c = DegenerationComplex::build(GridParams::new(2, 2).unwrap());
        let e6 = MoveSet::from_presentation(&cy_e6_presentation(&c, false)).unwrap();
        assert!(e6
            .rules
            .iter()
            .all(|r| r.lhs.len() + r.rhs.len() == 10 || r.lhs.len() + r.rhs.len() == 8));
    }

    #[test]
    fn illegal_steps_are_rejected() {
        let (m, _) = setup();
        let mut w = alloc::vec![1, 2];
        assert!(apply_step(&mut w, &Step::Commute { pos: 0 }, &m, 0).is_err());
        assert!(apply_step(&mut w, &Step::Cancel { pos: 0, gen: 1 }, &m, 0).is_err());
        assert!(apply_step(&mut w, &Step::Insert { pos: 3, gen: 1 }, &m, 0).is_err());
        apply_step(&mut w, &Step::Insert { pos: 1, gen: 13 }, &m, 0).unwrap();
        assert_eq!(w, [1, 13, 13, 2]);
    }

    proptest! {
        #[test]
        fn random_legal_steps_preserve_images(
            start in proptest::collection::vec(1u32..=20, 0..12),
            picks in proptest::collection::vec((0usize..5, 0usize..16, 1u32..=20, 0usize..4000), 1..30),
        ) {
            let (m, map) = setup();
            let mut w = start.clone();
            let image = eval_word(&Word::from_gens(&w), &map).unwrap();
            let mut trace = ProofTrace::empty(&Word::from_gens(&w));
            for (kind, pos, gen, rule) in picks {
                let step = match kind {
                    0 => Step::Commute { pos },
                    1 => Step::Braid { pos },
                    2 => Step::Cancel { pos, gen: w.get(pos).copied().unwrap_or(gen) },
                    3 => Step::Insert { pos, gen },
                    _ => Step::Rewrite { pos, rule: rule % m.rules.len() },
                };
                let mut next = w.clone();
                if apply_step(&mut next, &step, &m, 0).is_ok() {
                    w = next;
                    trace.steps.push(step);
                }
            }
            trace.final_word = Word::from_gens(&w);
            prop_assert_eq!(eval_word(&trace.final_word, &map).unwrap(), image);
            prop_assert!(trace.verify(&m).is_ok());
            let back = trace.inverted(&m);
            prop_assert_eq!(back.replay(&m).unwrap(), Word::from_gens(&start));
        }
    }
}
