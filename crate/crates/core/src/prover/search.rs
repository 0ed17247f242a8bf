//! Breadth-first searches over commutation classes of involutory words.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;
use hashbrown::HashMap;

use super::moves::{MoveSet, Step};
use super::trace_monoid::{canonicalize, gather};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    /// Rule applications allowed.
    pub budget: u64,
    /// Longest intermediate word.
    pub max_len: usize,
    /// Letters that may be inserted as `g g`; empty disables insertion.
    pub insert: Vec<u32>,
}

/// Canonical words reachable from `w` in one move, each with the steps that
/// lead there from `w`.
fn neighbors(w: &[u32], moves: &MoveSet, lim: &SearchLimits, out: &mut Vec<(Vec<u32>, Vec<Step>)>) {
    let letters: BTreeSet<u32> = w.iter().copied().collect();
    let mut push = |mut v: Vec<u32>, mut steps: Vec<Step>| {
        canonicalize(&mut v, moves, &mut steps);
        out.push((v, steps));
    };
    for i in 0..w.len() {
        let x = w[i];
        let mut v = w.to_vec();
        let mut steps = Vec::new();
        if gather(&mut v, i, &[x, x], moves, &mut steps) {
            steps.push(Step::Cancel { pos: i, gen: x });
            v.drain(i..i + 2);
            push(v, steps);
        }
        for &y in letters.range(..).filter(|&&y| moves.braid(x, y)) {
            let mut v = w.to_vec();
            let mut steps = Vec::new();
            if gather(&mut v, i, &[x, y, x], moves, &mut steps) {
                steps.push(Step::Braid { pos: i });
                v[i] = y;
                v[i + 1] = x;
                v[i + 2] = y;
                push(v, steps);
            }
        }
        for &r in moves.rules_starting_with(x) {
            let rule = &moves.rules[r];
            if rule.lhs.len() > w.len() - i
                || w.len() - rule.lhs.len() + rule.rhs.len() > lim.max_len
                || !rule.lhs.iter().all(|g| letters.contains(g))
            {
                continue;
            }
            let mut v = w.to_vec();
            let mut steps = Vec::new();
            if gather(&mut v, i, &rule.lhs, moves, &mut steps) {
                steps.push(Step::Rewrite { pos: i, rule: r });
                v.splice(i..i + rule.lhs.len(), rule.rhs.iter().copied());
                push(v, steps);
            }
        }
    }
    if w.len() + 2 <= lim.max_len {
        for pos in 0..=w.len() {
            for &g in &lim.insert {
                let mut v = w.to_vec();
                v.splice(pos..pos, [g, g]);
                push(v, alloc::vec![Step::Insert { pos, gen: g }]);
            }
        }
    }
}

struct Side {
    nodes: Vec<(Vec<u32>, Option<usize>, Vec<Step>)>,
    seen: HashMap<Vec<u32>, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(start: &[u32], moves: &MoveSet) -> Self {
        let mut v = start.to_vec();
        let mut steps = Vec::new();
        canonicalize(&mut v, moves, &mut steps);
        let mut seen = HashMap::new();
        seen.insert(v.clone(), 0);
        Self {
            nodes: alloc::vec![(v, None, steps)],
            seen,
            frontier: alloc::vec![0],
        }
    }

    /// Steps from the start word to node `i`.
    fn path(&self, mut i: usize) -> Vec<Step> {
        let mut chunks = Vec::new();
        loop {
            let (_, parent, steps) = &self.nodes[i];
            chunks.push(steps.clone());
            match parent {
                Some(p) => i = *p,
                None => break,
            }
        }
        chunks.into_iter().rev().flatten().collect()
    }
}

/// Outcome of a search: the steps found (if any) and the budget spent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub steps: Option<Vec<Step>>,
    pub spent: u64,
}

/// Bidirectional breadth-first search from `a` and `b`, expanding the
/// smaller frontier first.
pub fn bidirectional(a: &[u32], b: &[u32], moves: &MoveSet, lim: &SearchLimits) -> SearchResult {
    let mut sides = [Side::new(a, moves), Side::new(b, moves)];
    let mut spent = 0u64;
    let join = |sides: &[Side; 2], i: usize, j: usize, moves: &MoveSet| {
        let mut steps = sides[0].path(i);
        let back = sides[1].path(j);
        steps.extend(back.iter().rev().map(|s| s.inverse(moves)));
        steps
    };
    if let Some(&j) = sides[1].seen.get(&sides[0].nodes[0].0) {
        return SearchResult {
            steps: Some(join(&sides, 0, j, moves)),
            spent,
        };
    }
    let mut buf = Vec::new();
    loop {
        let s = if sides[0].frontier.is_empty() {
            1
        } else if sides[1].frontier.is_empty() {
            0
        } else {
            usize::from(sides[1].frontier.len() < sides[0].frontier.len())
        };
        if sides[s].frontier.is_empty() {
            return SearchResult { steps: None, spent };
        }
        let frontier = core::mem::take(&mut sides[s].frontier);
        for node in frontier {
            buf.clear();
            let word = sides[s].nodes[node].0.clone();
            neighbors(&word, moves, lim, &mut buf);
            for (v, steps) in buf.drain(..) {
                spent += 1;
                if sides[s].seen.contains_key(&v) {
                    continue;
                }
                let idx = sides[s].nodes.len();
                sides[s].seen.insert(v.clone(), idx);
                let hit = sides[1 - s].seen.get(&v).copied();
                sides[s].nodes.push((v, Some(node), steps));
                if let Some(other) = hit {
                    let (i, j) = if s == 0 { (idx, other) } else { (other, idx) };
                    return SearchResult {
                        steps: Some(join(&sides, i, j, moves)),
                        spent,
                    };
                }
                sides[s].frontier.push(idx);
                if spent >= lim.budget {
                    return SearchResult { steps: None, spent };
                }
            }
        }
    }
}

/// Best-first search from `w` towards the empty word, shortest words first.
pub fn reduce_to_identity(w: &[u32], moves: &MoveSet, lim: &SearchLimits) -> SearchResult {
    let mut side = Side::new(w, moves);
    let mut spent = 0u64;
    if side.nodes[0].0.is_empty() {
        return SearchResult {
            steps: Some(side.path(0)),
            spent,
        };
    }
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((side.nodes[0].0.len(), 0usize)));
    let mut buf = Vec::new();
    while let Some(Reverse((_, node))) = heap.pop() {
        buf.clear();
        let word = side.nodes[node].0.clone();
        neighbors(&word, moves, lim, &mut buf);
        for (v, steps) in buf.drain(..) {
            spent += 1;
            if side.seen.contains_key(&v) {
                continue;
            }
            let idx = side.nodes.len();
            let done = v.is_empty();
            side.seen.insert(v.clone(), idx);
            heap.push(Reverse((v.len(), idx)));
            side.nodes.push((v, Some(node), steps));
            if done {
                return SearchResult {
                    steps: Some(side.path(idx)),
                    spent,
                };
            }
            if spent >= lim.budget {
                return SearchResult { steps: None, spent };
            }
        }
    }
    SearchResult { steps: None, spent }
}
