//! Scripted derivations replayed as concrete moves: hexagon chains, fork
//! relators and γ-commutation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::moves::{MoveSet, PairKind, ProofTrace, Step};
use super::{involutory_letters, prove_equal, Coxeter, Method, Proof, ProofOutcome};
use crate::error::{Error, Result};
use crate::grid::{DegenerationComplex, Hexagon, VertexSubtype};
use crate::perm::PermMap;
use crate::presentation::{chain_window, fork_word, gamma_words};
use crate::word::Word;

const FORK_SCRIPT: &str = include_str!("../../scripts/fork.json");
const GAMMA_SCRIPT: &str = include_str!("../../scripts/gamma.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Waypoint {
    pub word: String,
    /// Apply the lemma at this offset instead of searching.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkVariant {
    /// `[x, y]`: the lemma lives at the corner where sides `x` and `y` meet;
    /// `h1..h4` run around that corner starting next to `x`, away from `y`.
    pub corner: [String; 2],
    pub lemma: [String; 2],
    pub waypoints: Vec<Waypoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkScript {
    pub name: String,
    pub goal: String,
    pub variants: Vec<ForkVariant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaStage {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaScript {
    pub name: String,
    pub pair: [String; 2],
    pub min_n: u32,
    pub stages: Vec<GammaStage>,
    pub essential_braid: [String; 2],
}

pub fn fork_script() -> Result<ForkScript> {
    serde_json::from_str(FORK_SCRIPT).map_err(|e| Error::InvalidScript(e.to_string()))
}

pub fn gamma_script() -> Result<GammaScript> {
    serde_json::from_str(GAMMA_SCRIPT).map_err(|e| Error::InvalidScript(e.to_string()))
}

/// Instantiates a role template such as `"u h1 h2 v"`; `"e"` is empty.
fn instantiate(template: &str, roles: &BTreeMap<&str, u32>) -> Result<Vec<u32>> {
    template
        .split_whitespace()
        .filter(|t| *t != "e")
        .map(|t| {
            roles
                .get(t)
                .copied()
                .ok_or_else(|| Error::InvalidScript(format!("unknown role `{t}`")))
        })
        .collect()
}

/// Evaluates `k`, `kn`, `kn+c`, `kn-c` or `n` at `n`.
fn eval_index(expr: &str, n: u32) -> Result<i64> {
    let bad = || Error::InvalidScript(format!("bad index `{expr}`"));
    let n = n as i64;
    match expr.find('n') {
        None => expr.parse().map_err(|_| bad()),
        Some(p) => {
            let coef = if p == 0 {
                1
            } else {
                expr[..p].parse::<i64>().map_err(|_| bad())?
            };
            let rest = &expr[p + 1..];
            let off = if rest.is_empty() {
                0
            } else {
                rest.parse::<i64>().map_err(|_| bad())?
            };
            Ok(coef * n + off)
        }
    }
}

/// Expands a cycle-position template: `a..b` ascends, `a>>b` descends
/// (both empty when out of order), anything else is a single position.
pub fn expand_positions(template: &str, n: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for t in template.split_whitespace() {
        let (lo, hi, down) = if let Some((a, b)) = t.split_once("..") {
            (eval_index(a, n)?, eval_index(b, n)?, false)
        } else if let Some((a, b)) = t.split_once(">>") {
            (eval_index(a, n)?, eval_index(b, n)?, true)
        } else {
            let k = eval_index(t, n)?;
            (k, k, false)
        };
        let range: Vec<i64> = if down {
            (hi..=lo).rev().collect()
        } else {
            (lo..=hi).collect()
        };
        for k in range {
            if k < 1 || k > 2 * n as i64 {
                return Err(Error::InvalidScript(format!(
                    "position {k} outside 1..={}",
                    2 * n
                )));
            }
            out.push(k as u32);
        }
    }
    Ok(out)
}

fn proved(trace: ProofTrace, method: Method, spent: u64) -> ProofOutcome {
    ProofOutcome::Proved(Proof {
        method,
        trace,
        spent,
    })
}

/// One consecutive equality of a hexagon chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub index: usize,
    pub lhs: Word,
    pub rhs: Word,
    pub outcome: ProofOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub vertex: u32,
    pub subtype: VertexSubtype,
    pub entries: Vec<ChainEntry>,
}

impl ChainReport {
    pub fn all_proved(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_proved())
    }
}

/// The five equalities `W_i = W_{i+1}` of the hexagon's chain.
pub fn verify_chain(
    h: &Hexagon,
    moves: &MoveSet,
    budget: u64,
    images: Option<&PermMap>,
) -> Result<ChainReport> {
    let mut entries = Vec::new();
    for i in 1..=5 {
        let (lhs, rhs) = (chain_window(h, i), chain_window(h, i + 1));
        let outcome = prove_equal(&lhs, &rhs, moves, budget, images)?;
        entries.push(ChainEntry {
            index: i,
            lhs,
            rhs,
            outcome,
        });
    }
    Ok(ChainReport {
        vertex: h.vertex,
        subtype: h.subtype,
        entries,
    })
}

/// Derivation of one fork relator `[u, v w v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkEntry {
    pub u: u32,
    pub v: u32,
    pub w: u32,
    pub relator: Word,
    /// Corner used by the script, as `[x, y]` sides.
    pub corner: Option<[u32; 2]>,
    /// First waypoint the script could not reach, if it stalled.
    pub stalled_at: Option<usize>,
    pub outcome: ProofOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkReport {
    pub triangle: u32,
    pub sides: [u32; 3],
    pub entries: Vec<ForkEntry>,
}

impl ForkReport {
    pub fn all_proved(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_proved())
    }
}

/// The four other edges around the corner of sides `x`, `y` of one triangle,
/// starting next to `x` and moving away from `y`.
fn corner_path(c: &DegenerationComplex, x: u32, y: u32) -> Option<[u32; 4]> {
    let (ex, ey) = (c.edge(x).ok()?, c.edge(y).ok()?);
    for p in [ex.endpoints.0, ex.endpoints.1] {
        if p != ey.endpoints.0 && p != ey.endpoints.1 {
            continue;
        }
        let Some(cyc) = c.vertex(p).ok()?.hexagon else {
            continue;
        };
        let i = cyc.iter().position(|&e| e == x)?;
        let step = if cyc[(i + 1) % 6] == y {
            5
        } else if cyc[(i + 5) % 6] == y {
            1
        } else {
            continue;
        };
        return Some([1, 2, 3, 4].map(|k| cyc[(i + step * k) % 6]));
    }
    None
}

/// Replays waypoints; returns the joined trace or the index that stalled.
fn replay_waypoints(
    words: &[Vec<u32>],
    offsets: &[Option<usize>],
    lemma: (&[u32], &[u32]),
    moves: &MoveSet,
    budget: u64,
) -> Result<(core::result::Result<ProofTrace, usize>, u64)> {
    let mut lemma_trace: Option<ProofTrace> = None;
    let mut trace = ProofTrace::empty(&Word::from_gens(&words[0]));
    let mut spent = 0;
    for k in 1..words.len() {
        let (from, to) = (&words[k - 1], &words[k]);
        let hop = match offsets[k] {
            Some(at) => {
                if lemma_trace.is_none() {
                    let o = prove_equal(
                        &Word::from_gens(lemma.0),
                        &Word::from_gens(lemma.1),
                        moves,
                        budget,
                        None,
                    )?;
                    match o {
                        ProofOutcome::Proved(p) => {
                            spent += p.spent;
                            lemma_trace = Some(p.trace);
                        }
                        ProofOutcome::Unknown { spent: s } => {
                            spent += s;
                            return Ok((Err(k), spent));
                        }
                        ProofOutcome::Refuted { .. } => return Ok((Err(k), spent)),
                    }
                }
                let lt = lemma_trace.as_ref().expect("lemma proved");
                let fits = from.get(at..at + lemma.0.len()) == Some(lemma.0);
                let mut expect = from.clone();
                if fits {
                    expect.splice(at..at + lemma.0.len(), lemma.1.iter().copied());
                }
                if !fits || &expect != to {
                    return Err(Error::InvalidScript(format!(
                        "lemma does not produce waypoint {k}"
                    )));
                }
                ProofTrace {
                    initial: Word::from_gens(from),
                    final_word: Word::from_gens(to),
                    steps: lt.steps.iter().map(|s| s.shifted(at)).collect(),
                }
            }
            None => match prove_equal(
                &Word::from_gens(from),
                &Word::from_gens(to),
                moves,
                budget,
                None,
            )? {
                ProofOutcome::Proved(p) => {
                    spent += p.spent;
                    p.trace
                }
                ProofOutcome::Unknown { spent: s } => {
                    spent += s;
                    return Ok((Err(k), spent));
                }
                ProofOutcome::Refuted { .. } => return Ok((Err(k), spent)),
            },
        };
        trace = trace.then(&hop);
    }
    Ok((Ok(trace), spent))
}

/// Derives the three fork relators at a degree-3 triangle from the `G1`
/// moves, following the fork script and searching directly if it stalls.
pub fn verify_fork_derivation(
    c: &DegenerationComplex,
    triangle: u32,
    moves: &MoveSet,
    budget: u64,
) -> Result<ForkReport> {
    let dual = c.dual_graph();
    let (_, sides) = dual
        .forks()
        .into_iter()
        .find(|(t, _)| *t == triangle)
        .ok_or(Error::NotAFork(triangle))?;
    let script = fork_script()?;
    let mut entries = Vec::new();
    for &u in &sides {
        let mut rest: Vec<u32> = sides.iter().copied().filter(|&s| s != u).collect();
        rest.sort_unstable();
        let (v, w) = (rest[0], rest[1]);
        let relator = fork_word(u, v, w);
        let mut roles: BTreeMap<&str, u32> = [("u", u), ("v", v), ("w", w)].into_iter().collect();
        let mut result = None;
        let mut stalled_at = None;
        let mut used = None;
        let mut spent = 0;
        for variant in &script.variants {
            let (x, y) = (
                roles[variant.corner[0].as_str()],
                roles[variant.corner[1].as_str()],
            );
            let Some(path) = corner_path(c, x, y) else {
                continue;
            };
            for (k, h) in path.iter().enumerate() {
                roles.insert(["h1", "h2", "h3", "h4"][k], *h);
            }
            let words: Vec<Vec<u32>> = variant
                .waypoints
                .iter()
                .map(|p| instantiate(&p.word, &roles))
                .collect::<Result<_>>()?;
            let offsets: Vec<Option<usize>> =
                variant.waypoints.iter().map(|p| p.lemma_at).collect();
            let lemma = (
                instantiate(&variant.lemma[0], &roles)?,
                instantiate(&variant.lemma[1], &roles)?,
            );
            used = Some([x, y]);
            let (r, s) = replay_waypoints(&words, &offsets, (&lemma.0, &lemma.1), moves, budget)?;
            spent += s;
            match r {
                Ok(t) => {
                    result = Some(proved(t, Method::Script, spent));
                    stalled_at = None;
                    break;
                }
                Err(k) => stalled_at = stalled_at.or(Some(k)),
            }
        }
        let outcome = match result {
            Some(o) => o,
            None => prove_equal(&relator, &Word::empty(), moves, budget, None)?,
        };
        entries.push(ForkEntry {
            u,
            v,
            w,
            relator,
            corner: used,
            stalled_at,
            outcome,
        });
    }
    Ok(ForkReport {
        triangle,
        sides,
        entries,
    })
}

/// Whether the γ-commutation certificate and the stage checks hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCheck {
    pub label: String,
    pub lhs: Word,
    pub rhs: Word,
    pub outcome: ProofOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub cycle: Vec<u32>,
    pub i: usize,
    pub j: usize,
    /// `g_i g_j` and `g_j g_i` with `g_k = γ_k γ_1^-1`, involutorily reduced.
    pub lhs: Word,
    pub rhs: Word,
    pub outcome: ProofOutcome,
    /// Scripted stages (only for the pair `(2n-1, 2n)`).
    pub stages: Vec<StageCheck>,
    /// Braid pairs of the cycle without which the identity fails in the
    /// Coxeter group of the cycle.
    pub essential_braids: Vec<(u32, u32)>,
    /// The braid pair the script names as the last relation needed.
    pub script_braid: Option<(u32, u32)>,
}

impl GammaReport {
    pub fn script_braid_is_essential(&self) -> bool {
        self.script_braid
            .is_some_and(|b| self.essential_braids.contains(&b))
    }
}

fn element(cycle: &[u32], k: usize) -> Result<Word> {
    let g = gamma_words(cycle)?;
    if k < 1 || k > cycle.len() {
        return Err(Error::InvalidScript(format!(
            "gamma index {k} outside 1..={}",
            cycle.len()
        )));
    }
    Ok(if k == 1 {
        Word::empty()
    } else {
        g.element(k).clone()
    })
}

/// Proves `g_i g_j = g_j g_i` for the γ-words of one cycle, checks the
/// scripted stages when `(i, j) = (2n-1, 2n)`, and lists which cycle braids
/// are essential.
pub fn verify_gamma_commutation(
    cycle: &[u32],
    i: usize,
    j: usize,
    moves: &MoveSet,
    budget: u64,
) -> Result<GammaReport> {
    let (gi, gj) = (element(cycle, i)?, element(cycle, j)?);
    let lhs = gi.concat(&gj).involutory_reduce();
    let rhs = gj.concat(&gi).involutory_reduce();
    let outcome = prove_equal(&lhs, &rhs, moves, budget, None)?;
    let r = cycle.len();
    let n = (r / 2) as u32;
    let script = gamma_script()?;
    let label = |t: &str| -> Result<Vec<u32>> {
        Ok(expand_positions(t, n)?
            .into_iter()
            .map(|k| cycle[k as usize - 1])
            .collect())
    };
    let pair = (
        expand_positions(&script.pair[0], n)?,
        expand_positions(&script.pair[1], n)?,
    );
    let mut stages = Vec::new();
    let mut script_braid = None;
    if r % 2 == 0 && pair == (alloc::vec![i as u32], alloc::vec![j as u32]) {
        for s in script.stages.iter().filter(|_| n >= script.min_n) {
            let (a, b) = (
                Word::from_gens(&label(&s.lhs)?),
                Word::from_gens(&label(&s.rhs)?),
            );
            let o = prove_equal(&a, &b, moves, budget, None)?;
            stages.push(StageCheck {
                label: s.label.clone(),
                lhs: a,
                rhs: b,
                outcome: o,
            });
        }
        let e = (
            label(&script.essential_braid[0])?[0],
            label(&script.essential_braid[1])?[0],
        );
        script_braid = Some((e.0.min(e.1), e.0.max(e.1)));
    }
    let (la, lb) = (involutory_letters(&lhs), involutory_letters(&rhs));
    let mut essential_braids = Vec::new();
    for k in 0..r {
        let (a, b) = (cycle[k], cycle[(k + 1) % r]);
        if moves.pair(a, b) != PairKind::Braid {
            continue;
        }
        let cut = moves.without_pair(a, b);
        let cox = Coxeter::new(&cut, cycle);
        let (na, _) = cox.normal_form(&la)?;
        let (nb, _) = cox.normal_form(&lb)?;
        if na != nb {
            essential_braids.push((a.min(b), a.max(b)));
        }
    }
    essential_braids.sort_unstable();
    Ok(GammaReport {
        cycle: cycle.to_vec(),
        i,
        j,
        lhs,
        rhs,
        outcome,
        stages,
        essential_braids,
        script_braid,
    })
}

/// Proves `a b = b a`; the flag reports whether only commute moves were used.
pub fn verify_cross_commutation(
    a: &Word,
    b: &Word,
    moves: &MoveSet,
    budget: u64,
) -> Result<(ProofOutcome, bool)> {
    let lhs = a.concat(b).involutory_reduce();
    let rhs = b.concat(a).involutory_reduce();
    let o = prove_equal(&lhs, &rhs, moves, budget, None)?;
    let only = o.proof().is_some_and(|p| {
        p.trace
            .steps
            .iter()
            .all(|s| matches!(s, Step::Commute { .. }))
    });
    Ok((o, only))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridParams;
    use crate::perm::transposition_map;
    use crate::presentation::g1_presentation;
    use crate::prover::{trace_preserves_images, DEFAULT_PROVER_BUDGET};

    fn setup(m: u32, n: u32) -> (DegenerationComplex, MoveSet) {
        let c = DegenerationComplex::build(GridParams::new(m, n).unwrap());
        let moves = MoveSet::from_presentation(&g1_presentation(&c)).unwrap();
        (c, moves)
    }

    #[test]
    fn scripts_parse() {
        assert_eq!(fork_script().unwrap().variants.len(), 3);
        assert_eq!(gamma_script().unwrap().stages.len(), 5);
        assert_eq!(
            expand_positions("1..2n-1 2n>>3", 3).unwrap(),
            [1, 2, 3, 4, 5, 6, 5, 4, 3]
        );
        assert!(expand_positions("2n-4>>3", 3).unwrap().is_empty());
        assert!(expand_positions("2n+1", 3).is_err());
    }

    #[test]
    fn corner_paths_at_v6() {
        let (c, _) = setup(2, 4);
        assert_eq!(corner_path(&c, 14, 9), Some([15, 10, 2, 1]));
        assert_eq!(corner_path(&c, 9, 14), Some([1, 2, 10, 15]));
    }

    #[test]
    fn chain_at_v6() {
        let (c, moves) = setup(2, 4);
        let map = transposition_map(&c);
        let inv = c.cycle_inventory();
        let h = inv.hexagon_at(c.params.point(1, 2)).unwrap();
        let r = verify_chain(h, &moves, DEFAULT_PROVER_BUDGET, Some(&map)).unwrap();
        assert!(r.all_proved(), "{r:?}");
        for e in &r.entries {
            assert!(
                trace_preserves_images(&e.outcome.proof().unwrap().trace, &moves, &map).unwrap()
            );
        }
    }

    #[test]
    fn fork_13_14_9() {
        let (c, moves) = setup(2, 4);
        let r = verify_fork_derivation(&c, 9, &moves, DEFAULT_PROVER_BUDGET).unwrap();
        assert_eq!(r.sides, [9, 13, 14]);
        assert!(r.all_proved(), "{r:?}");
        let e = r.entries.iter().find(|e| e.u == 13).unwrap();
        assert_eq!(e.relator, "13 9 14 9 13 9 14 9".parse().unwrap());
        for e in &r.entries {
            e.outcome.proof().unwrap().trace.verify(&moves).unwrap();
        }
        assert_eq!(
            verify_fork_derivation(&c, 1, &moves, 10).unwrap_err(),
            Error::NotAFork(1)
        );
    }

    #[test]
    fn gamma_pair_7_8() {
        let (c, moves) = setup(2, 4);
        let cycle = c.cycle_inventory().h_cycles[0].edges.clone();
        let r = verify_gamma_commutation(&cycle, 7, 8, &moves, DEFAULT_PROVER_BUDGET).unwrap();
        assert!(r.outcome.is_proved());
        assert!(
            r.stages.iter().all(|s| s.outcome.is_proved()),
            "{:?}",
            r.stages
        );
        assert_eq!(r.script_braid, Some((7, 8)));
        assert!(r.script_braid_is_essential(), "{:?}", r.essential_braids);
    }
}
