//! Replayable rewriting proofs of word equalities in involutory
//! presentations (`G1`, `C_Y(T)` and its E6 quotient).
//!
//! [`prove_equal`] tries, in order: a permutation-image refutation, the
//! Coxeter normal form of the braid/commute quotient, a bidirectional
//! breadth-first search, and a reduction of `w1 w2^-1` to the empty word.
//! Every success is a [`ProofTrace`] that is replayed before it is returned.

mod coxeter;
mod moves;
mod script;
mod search;
mod trace_monoid;

pub use coxeter::Coxeter;
pub use moves::{apply_step, MoveSet, PairKind, ProofTrace, Rule, Step};
pub use script::{
    expand_positions, fork_script, gamma_script, verify_chain, verify_cross_commutation,
    verify_fork_derivation, verify_gamma_commutation, ChainEntry, ChainReport, ForkEntry,
    ForkReport, ForkScript, ForkVariant, GammaReport, GammaScript, GammaStage, StageCheck,
    Waypoint,
};
pub use search::{bidirectional, reduce_to_identity, SearchLimits, SearchResult};
pub use trace_monoid::{canonical, canonicalize, gather};

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::perm::{eval_word, PermMap, Permutation};
use crate::word::Word;

pub const DEFAULT_PROVER_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Identical,
    Coxeter,
    Bidirectional,
    Reduction,
    Script,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub method: Method,
    pub trace: ProofTrace,
    /// Rule applications spent by searches.
    pub spent: u64,
}

/// Result of an equality attempt. `Unknown` never means unequal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProofOutcome {
    Proved(Proof),
    /// The words have different permutation images, so they are unequal.
    Refuted {
        lhs_image: Permutation,
        rhs_image: Permutation,
    },
    Unknown {
        spent: u64,
    },
}

impl ProofOutcome {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProofOutcome::Proved(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        self.proof().is_some()
    }

    pub fn status(&self) -> &'static str {
        match self {
            ProofOutcome::Proved(_) => "PROVED",
            ProofOutcome::Refuted { .. } => "REFUTED",
            ProofOutcome::Unknown { .. } => "UNKNOWN",
        }
    }
}

/// Generator sequence of an involutory word; inverse letters are read as
/// their generators.
pub fn involutory_letters(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|l| l.generator()).collect()
}

fn trace_of(initial: &[u32], steps: Vec<Step>, moves: &MoveSet) -> Result<ProofTrace> {
    let mut t = ProofTrace {
        initial: Word::from_gens(initial),
        final_word: Word::from_gens(initial),
        steps,
    };
    t.final_word = t.replay(moves)?;
    Ok(t)
}

/// Coxeter normal-form route; `None` when the normal forms differ or the
/// root arithmetic overflows.
fn coxeter_route(a: &[u32], b: &[u32], moves: &MoveSet) -> Option<Vec<Step>> {
    let alphabet: Vec<u32> = a.iter().chain(b).copied().collect();
    let cox = Coxeter::new(moves, &alphabet);
    let (na, sa) = cox.normal_form(a).ok()?;
    let (nb, sb) = cox.normal_form(b).ok()?;
    if na != nb {
        return None;
    }
    let mut steps = sa;
    steps.extend(sb.iter().rev().map(|s| s.inverse(moves)));
    Some(steps)
}

/// Steps turning `a` into `b` given steps reducing `a b^-1` to the empty
/// word: insert `b^-1 b` after `a`, then reduce the prefix.
fn from_reduction(a: &[u32], b: &[u32], reduction: Vec<Step>) -> Vec<Step> {
    let mut steps = Vec::with_capacity(b.len() + reduction.len());
    for (k, &g) in b.iter().enumerate().rev() {
        steps.push(Step::Insert {
            pos: a.len() + b.len() - 1 - k,
            gen: g,
        });
    }
    steps.extend(reduction);
    steps
}

/// Proves `w1 = w2` within `budget` rule applications. With `images`, a
/// permutation-image mismatch is reported as a refutation first.
pub fn prove_equal(
    w1: &Word,
    w2: &Word,
    moves: &MoveSet,
    budget: u64,
    images: Option<&PermMap>,
) -> Result<ProofOutcome> {
    moves.check_alphabet(w1)?;
    moves.check_alphabet(w2)?;
    let (a, b) = (involutory_letters(w1), involutory_letters(w2));
    if a == b {
        let trace = trace_of(&a, Vec::new(), moves)?;
        return Ok(ProofOutcome::Proved(Proof {
            method: Method::Identical,
            trace,
            spent: 0,
        }));
    }
    if let Some(map) = images {
        let (x, y) = (eval_word(w1, map)?, eval_word(w2, map)?);
        if x != y {
            return Ok(ProofOutcome::Refuted {
                lhs_image: x,
                rhs_image: y,
            });
        }
    }
    if let Some(steps) = coxeter_route(&a, &b, moves) {
        let trace = trace_of(&a, steps, moves)?;
        return Ok(ProofOutcome::Proved(Proof {
            method: Method::Coxeter,
            trace,
            spent: 0,
        }));
    }
    search_equal(&a, &b, moves, budget)
}

/// The search routes only: bidirectional search on Coxeter-reduced words,
/// then reduction of `w1 w2^-1`.
fn search_equal(a: &[u32], b: &[u32], moves: &MoveSet, budget: u64) -> Result<ProofOutcome> {
    let alphabet: Vec<u32> = a.iter().chain(b).copied().collect();
    let cox = Coxeter::new(moves, &alphabet);
    let shorten = |w: &[u32]| {
        let mut v = w.to_vec();
        let mut s = Vec::new();
        match cox.reduce(&mut v, &mut s) {
            Ok(()) => (v, s),
            Err(_) => (w.to_vec(), Vec::new()),
        }
    };
    let (ra, sa) = shorten(a);
    let (rb, sb) = shorten(b);
    let lim = SearchLimits {
        budget: budget / 2,
        max_len: ra.len().max(rb.len()),
        insert: Vec::new(),
    };
    let r = bidirectional(&ra, &rb, moves, &lim);
    let mut spent = r.spent;
    if let Some(mid) = r.steps {
        let mut steps = sa;
        steps.extend(mid);
        steps.extend(sb.iter().rev().map(|s| s.inverse(moves)));
        let trace = trace_of(a, steps, moves)?;
        return Ok(ProofOutcome::Proved(Proof {
            method: Method::Bidirectional,
            trace,
            spent,
        }));
    }
    let mut joined = ra.clone();
    joined.extend(rb.iter().rev());
    let mut letters = joined.clone();
    letters.sort_unstable();
    letters.dedup();
    for slack in [0, 2, 4] {
        let lim = SearchLimits {
            budget: budget.saturating_sub(spent),
            max_len: joined.len() + slack,
            insert: if slack == 0 {
                Vec::new()
            } else {
                letters.clone()
            },
        };
        let r = reduce_to_identity(&joined, moves, &lim);
        spent += r.spent;
        if let Some(red) = r.steps {
            let mut steps = sa;
            steps.extend(from_reduction(&ra, &rb, red));
            steps.extend(sb.iter().rev().map(|s| s.inverse(moves)));
            let trace = trace_of(a, steps, moves)?;
            return Ok(ProofOutcome::Proved(Proof {
                method: Method::Reduction,
                trace,
                spent,
            }));
        }
        if spent >= budget {
            break;
        }
    }
    Ok(ProofOutcome::Unknown { spent })
}

/// Replays `trace` and checks that every intermediate word has the image of
/// the initial word under `map`.
pub fn trace_preserves_images(trace: &ProofTrace, moves: &MoveSet, map: &PermMap) -> Result<bool> {
    let mut w = involutory_letters(&trace.initial);
    let target = eval_word(&trace.initial, map)?;
    for (i, s) in trace.steps.iter().enumerate() {
        apply_step(&mut w, s, moves, i)?;
        if eval_word(&Word::from_gens(&w), map)? != target {
            return Ok(false);
        }
    }
    Ok(Word::from_gens(&w) == trace.final_word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{DegenerationComplex, GridParams};
    use crate::perm::transposition_map;
    use crate::presentation::g1_presentation;

    fn setup(m: u32, n: u32) -> (DegenerationComplex, MoveSet, PermMap) {
        let c = DegenerationComplex::build(GridParams::new(m, n).unwrap());
        let moves = MoveSet::from_presentation(&g1_presentation(&c)).unwrap();
        let map = transposition_map(&c);
        (c, moves, map)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn proved(o: &ProofOutcome, moves: &MoveSet, map: &PermMap) -> Method {
        let p = o.proof().unwrap_or_else(|| panic!("not proved: {o:?}"));
        p.trace.verify(moves).unwrap();
        assert!(trace_preserves_images(&p.trace, moves, map).unwrap());
        p.method
    }

    #[test]
    fn identical_words() {
        let (_, moves, map) = setup(2, 4);
        let o = prove_equal(&w("1 2 3"), &w("1 2 3"), &moves, 10, Some(&map)).unwrap();
        assert_eq!(proved(&o, &moves, &map), Method::Identical);
        assert!(o.proof().unwrap().trace.steps.is_empty());
    }

    #[test]
    fn quintic_forms_agree_by_coxeter_moves() {
        let (_, moves, map) = setup(2, 4);
        let o = prove_equal(
            &w("9 7 8 7 9"),
            &w("7 8 9 8 7"),
            &moves,
            DEFAULT_PROVER_BUDGET,
            Some(&map),
        )
        .unwrap();
        assert_eq!(proved(&o, &moves, &map), Method::Coxeter);
    }

    #[test]
    fn chain_equality_needs_the_quintic() {
        let (_, moves, map) = setup(2, 4);
        let o = prove_equal(
            &w("2 1 9 14 15"),
            &w("1 9 14 15 10"),
            &moves,
            DEFAULT_PROVER_BUDGET,
            Some(&map),
        )
        .unwrap();
        assert_ne!(proved(&o, &moves, &map), Method::Coxeter);
    }

    #[test]
    fn refutation_and_unknown() {
        let (_, moves, map) = setup(2, 4);
        let o = prove_equal(&w("1 2"), &w("2 4"), &moves, 50, Some(&map)).unwrap();
        assert_eq!(o.status(), "REFUTED");
        let o = prove_equal(&w("1 2"), &w("2 4"), &moves, 50, None).unwrap();
        assert_eq!(o.status(), "UNKNOWN");
        assert!(prove_equal(&w("1 99"), &w("1"), &moves, 50, None).is_err());
    }

    #[test]
    fn inverted_trace_replays() {
        let (_, moves, map) = setup(2, 4);
        let o = prove_equal(
            &w("2 1 9 14 15"),
            &w("1 9 14 15 10"),
            &moves,
            DEFAULT_PROVER_BUDGET,
            Some(&map),
        )
        .unwrap();
        let t = o.proof().unwrap().trace.inverted(&moves);
        t.verify(&moves).unwrap();
        assert_eq!(t.final_word, w("2 1 9 14 15"));
    }
}
