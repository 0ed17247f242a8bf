//! Commutation classes of words: a lexicographic normal form reached by
//! recorded adjacent swaps, and matching of patterns that become contiguous
//! after commutations.

use alloc::vec::Vec;

use super::moves::{MoveSet, Step};

/// Moves the letter at `from` left to `to`, recording one commute per swap.
fn pull_left(w: &mut [u32], from: usize, to: usize, steps: &mut Vec<Step>) {
    for p in (to..from).rev() {
        w.swap(p, p + 1);
        steps.push(Step::Commute { pos: p });
    }
}

/// Lexicographic normal form of the commutation class of `w`: at each
/// position the smallest letter that can be brought there by commutes.
pub fn canonicalize(w: &mut [u32], moves: &MoveSet, steps: &mut Vec<Step>) {
    for k in 0..w.len() {
        let mut best: Option<(u32, usize)> = None;
        for i in k..w.len() {
            let x = w[i];
            if best.map_or(true, |(b, _)| x < b) && (k..i).all(|j| moves.commute(w[j], x)) {
                best = Some((x, i));
            }
        }
        if let Some((_, i)) = best {
            pull_left(w, i, k, steps);
        }
    }
}

pub fn canonical(w: &[u32], moves: &MoveSet) -> Vec<u32> {
    let mut v = w.to_vec();
    let mut s = Vec::new();
    canonicalize(&mut v, moves, &mut s);
    v
}

/// Finds `pattern` starting at `start` as a subsequence whose later letters
/// each commute left past the unchosen letters in between. On success the
/// pattern is made contiguous at `start` and the swaps are recorded.
pub fn gather(
    w: &mut [u32],
    start: usize,
    pattern: &[u32],
    moves: &MoveSet,
    steps: &mut Vec<Step>,
) -> bool {
    if pattern.is_empty() || start >= w.len() || w[start] != pattern[0] {
        return false;
    }
    let mut end = start + 1;
    let mut local = Vec::new();
    let mut work = w.to_vec();
    for &p in &pattern[1..] {
        let mut found = None;
        for (i, &x) in work.iter().enumerate().skip(end) {
            if x == p {
                found = Some(i);
                break;
            }
            if !moves.commute(x, p) {
                break;
            }
        }
        match found {
            Some(i) => {
                pull_left(&mut work, i, end, &mut local);
                end += 1;
            }
            None => return false,
        }
    }
    w.copy_from_slice(&work);
    steps.extend(local);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{DegenerationComplex, GridParams};
    use crate::presentation::g1_presentation;
    use crate::prover::moves::{apply_step, MoveSet};
    use proptest::prelude::*;

    fn moves() -> MoveSet {
        let c = DegenerationComplex::build(GridParams::new(2, 4).unwrap());
        MoveSet::from_presentation(&g1_presentation(&c)).unwrap()
    }

    fn replay(w: &[u32], steps: &[Step], m: &MoveSet) -> Vec<u32> {
        let mut v = w.to_vec();
        for (i, s) in steps.iter().enumerate() {
            apply_step(&mut v, s, m, i).unwrap();
        }
        v
    }

    #[test]
    fn canonical_form_sorts_commuting_letters() {
        let m = moves();
        assert_eq!(canonical(&[13, 1], &m), [1, 13]);
        assert_eq!(canonical(&[2, 1], &m), [2, 1]);
        assert_eq!(canonical(&[9, 13, 1], &m), [9, 1, 13]);
    }

    #[test]
    fn gather_pulls_pattern_together() {
        let m = moves();
        let mut w = [9, 13, 7, 8, 7, 9];
        let mut s = Vec::new();
        assert!(gather(&mut w, 0, &[9, 7, 8], &m, &mut s));
        assert_eq!(&w[..3], &[9, 7, 8]);
        assert_eq!(replay(&[9, 13, 7, 8, 7, 9], &s, &m), w);
        let mut w = [1, 2, 3];
        assert!(!gather(&mut w, 0, &[1, 3], &m, &mut Vec::new()));
    }

    proptest! {
        #[test]
        fn canonical_is_class_invariant(w in proptest::collection::vec(1u32..=24, 0..10), i in 0usize..10) {
            let m = moves();
            let mut swapped = w.clone();
            if i + 1 < w.len() && m.commute(w[i], w[i + 1]) {
                swapped.swap(i, i + 1);
            }
            prop_assert_eq!(canonical(&w, &m), canonical(&swapped, &m));
            let mut v = w.clone();
            let mut s = Vec::new();
            canonicalize(&mut v, &m, &mut s);
            prop_assert_eq!(replay(&w, &s, &m), v);
        }
    }
}
