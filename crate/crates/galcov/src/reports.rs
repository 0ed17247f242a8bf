//! Serializable reports behind the CLI subcommands.

use galcov_core::finite_group::{hom_count, FiniteGroup};
use galcov_core::homology::abelianize;
use galcov_core::homology::smith_normal_form;
use galcov_core::homology::DEFAULT_SNF_BUDGET;
use galcov_core::homology::{coset_table_with_order, kernel_homology, HomologyOptions};
use galcov_core::invariants::{cross_check, expected_sign, index_tau};
use galcov_core::perm::{eval_word, is_transitive, transposition_map, verify_relators, PermMap};
use galcov_core::presentation::{
    a_tn_presentation, cy_e6_presentation, cy_presentation, g1_presentation, gamma_words,
    KernelElementSet,
};
use galcov_core::prover::{
    prove_equal, trace_preserves_images, verify_chain, verify_fork_derivation,
    verify_gamma_commutation, MoveSet, ProofOutcome,
};
use galcov_core::{DegenerationComplex, GridParams, GroupPresentation, Word};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::tables::{invariant_row, InvariantRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    G1,
    Cy,
    CyE6,
    Atn,
}

impl Group {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "g1" => Ok(Group::G1),
            "cy" => Ok(Group::Cy),
            "cy-e6" => Ok(Group::CyE6),
            "atn" => Ok(Group::Atn),
            _ => Err(CliError::Usage {
                flag: "--group",
                reason: format!("`{s}` is not one of g1, cy, cy-e6, atn"),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Group::G1 => "g1",
            Group::Cy => "cy",
            Group::CyE6 => "cy-e6",
            Group::Atn => "atn",
        }
    }

    /// For `Atn`, `t = m`.
    pub fn presentation(self, c: &DegenerationComplex, with_chain: bool) -> GroupPresentation {
        match self {
            Group::G1 => g1_presentation(c),
            Group::Cy => cy_presentation(&c.dual_graph()),
            Group::CyE6 => cy_e6_presentation(c, with_chain),
            Group::Atn => a_tn_presentation(c.params.m(), c.params.n()),
        }
    }
}

pub fn complex(m: u32, n: u32) -> Result<DegenerationComplex> {
    Ok(DegenerationComplex::build(GridParams::new(m, n)?))
}

/// A seeded uniformly random permutation of `1..=count`.
pub fn random_relabeling(count: u32, seed: u64) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=count).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub vertex: u32,
    pub level: u32,
    pub subtype: String,
    pub sorted: Vec<u32>,
    pub cyclic: Vec<u32>,
    pub e6_relator: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCycleDoc {
    pub row: u32,
    pub edges: Vec<u32>,
    pub gammas: Vec<Word>,
    pub elements: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclesReport {
    pub schema: String,
    pub seed: u64,
    pub m: u32,
    pub n: u32,
    pub hexagons: Vec<CycleDoc>,
    pub h_cycles: Vec<HCycleDoc>,
    pub kernel_elements: usize,
}

pub fn cycles_report(c: &DegenerationComplex, seed: u64) -> Result<CyclesReport> {
    let inv = c.cycle_inventory();
    let mut hexagons = Vec::new();
    for h in &inv.hexagons {
        let g = gamma_words(&h.cyclic)?;
        hexagons.push(CycleDoc {
            vertex: h.vertex,
            level: h.level,
            subtype: format!("{:?}", h.subtype).to_uppercase(),
            sorted: h.sorted.to_vec(),
            cyclic: h.cyclic.to_vec(),
            e6_relator: g.gammas[4]
                .concat(&g.gammas[5].inverse())
                .involutory_reduce(),
        });
    }
    let ks = KernelElementSet::of(c);
    let h_cycles = inv
        .h_cycles
        .iter()
        .zip(&ks.cycles)
        .map(|(h, g)| HCycleDoc {
            row: h.row,
            edges: h.edges.clone(),
            gammas: g.gammas.clone(),
            elements: g.elements.clone(),
        })
        .collect();
    Ok(CyclesReport {
        schema: "galcov-cycles/1".into(),
        seed,
        m: c.params.m(),
        n: c.params.n(),
        hexagons,
        h_cycles,
        kernel_elements: ks.elements().len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub tag: String,
    pub label: String,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationCheck {
    pub group: String,
    pub relators: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCheck {
    /// `hexagon` or `h-cycle`.
    pub kind: String,
    /// Vertex id for hexagons, row for h-cycles.
    pub id: u32,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub seed: u64,
    pub m: u32,
    pub n: u32,
    pub pass: bool,
    pub transitive: bool,
    pub presentations: Vec<PresentationCheck>,
    pub cycles: Vec<CycleCheck>,
    /// Failure counts are unchanged under a seeded random relabeling of the
    /// triangles.
    pub relabeling_invariant: bool,
}

fn check_presentation(
    name: &str,
    p: &GroupPresentation,
    map: &PermMap,
) -> Result<PresentationCheck> {
    let r = verify_relators(p, map)?;
    let failures = r
        .failures()
        .map(|c| Failure {
            tag: c.tag.name().into(),
            label: c.label.clone(),
            word: c.word.clone(),
        })
        .collect();
    Ok(PresentationCheck {
        group: name.into(),
        relators: r.checks.len(),
        failures,
    })
}

fn cycle_checks(c: &DegenerationComplex, map: &PermMap) -> Result<Vec<CycleCheck>> {
    let inv = c.cycle_inventory();
    let holds = |cycle: &[u32]| -> Result<bool> {
        let g = gamma_words(cycle)?;
        let r = cycle.len();
        Ok(eval_word(&g.gammas[r - 2], map)? == eval_word(&g.gammas[r - 1], map)?)
    };
    let mut out = Vec::new();
    for h in &inv.hexagons {
        out.push(CycleCheck {
            kind: "hexagon".into(),
            id: h.vertex,
            pass: holds(&h.cyclic)?,
        });
    }
    for h in &inv.h_cycles {
        out.push(CycleCheck {
            kind: "h-cycle".into(),
            id: h.row,
            pass: holds(&h.edges)?,
        });
    }
    Ok(out)
}

fn checks_for(
    c: &DegenerationComplex,
    with_chain: bool,
) -> Result<(Vec<PresentationCheck>, Vec<CycleCheck>, bool)> {
    let map = transposition_map(c);
    let mut pres = Vec::new();
    for g in [Group::G1, Group::Cy, Group::CyE6] {
        pres.push(check_presentation(
            g.name(),
            &g.presentation(c, with_chain),
            &map,
        )?);
    }
    Ok((pres, cycle_checks(c, &map)?, is_transitive(&map)))
}

/// Every relator of `G1`, `C_Y` (forks included) and `C_Y/E6` maps to the
/// identity of `S_{2mn}`, and `γ_{r-1} = γ_r` holds for every cycle.
pub fn verify_report(c: &DegenerationComplex, with_chain: bool, seed: u64) -> Result<VerifyReport> {
    let (presentations, cycles, transitive) = checks_for(c, with_chain)?;
    let relabeled = c.relabel_triangles(&random_relabeling(c.params.triangle_count(), seed))?;
    let (p2, c2, t2) = checks_for(&relabeled, with_chain)?;
    let counts = |p: &[PresentationCheck], c: &[CycleCheck]| {
        let f: Vec<usize> = p.iter().map(|x| x.failures.len()).collect();
        let g: Vec<bool> = c.iter().map(|x| x.pass).collect();
        (f, g)
    };
    let relabeling_invariant =
        counts(&presentations, &cycles) == counts(&p2, &c2) && transitive == t2;
    let pass = transitive
        && relabeling_invariant
        && presentations.iter().all(|p| p.failures.is_empty())
        && cycles.iter().all(|c| c.pass);
    Ok(VerifyReport {
        schema: "galcov-verify/1".into(),
        seed,
        m: c.params.m(),
        n: c.params.n(),
        pass,
        transitive,
        presentations,
        cycles,
        relabeling_invariant,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCountRow {
    pub group: String,
    pub order: usize,
    pub g1: u64,
    pub cy_e6: u64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCountReport {
    pub schema: String,
    pub seed: u64,
    pub m: u32,
    pub n: u32,
    pub budget: u64,
    pub pass: bool,
    pub rows: Vec<HomCountRow>,
}

/// Homomorphism counts of `G1` and `C_Y/E6` into every group of order at
/// most 8.
pub fn hom_count_report(
    c: &DegenerationComplex,
    with_chain: bool,
    budget: u64,
    seed: u64,
) -> Result<HomCountReport> {
    let g1 = g1_presentation(c);
    let cy = cy_e6_presentation(c, with_chain);
    let mut rows = Vec::new();
    for t in FiniteGroup::small_groups() {
        let (a, b) = (hom_count(&g1, &t, budget)?, hom_count(&cy, &t, budget)?);
        rows.push(HomCountRow {
            group: t.name.clone(),
            order: t.order(),
            g1: a,
            cy_e6: b,
            agree: a == b,
        });
    }
    Ok(HomCountReport {
        schema: "galcov-hom-count/1".into(),
        seed,
        m: c.params.m(),
        n: c.params.n(),
        budget,
        pass: rows.iter().all(|r| r.agree),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub schema: String,
    pub seed: u64,
    pub m: u32,
    pub n: u32,
    pub cosets: usize,
    pub schreier_generators: usize,
    pub relators: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub invariants: String,
    pub elements: usize,
    pub expected_rank: usize,
    pub image_rank: usize,
    pub image_rational_rank: usize,
    pub image_rank_mod_p: Vec<(u64, usize)>,
    pub snf_consistent: bool,
    /// Same invariants and image rank with a seeded random generator order
    /// in the coset closure.
    pub order_invariant: bool,
    pub pass: bool,
}

/// `H_1` of the kernel of `G1 -> S_{2mn}` and the rank of the images of the
/// `m(2n-1)` designated elements.
pub fn homology_report(
    c: &DegenerationComplex,
    opts: HomologyOptions,
    seed: u64,
) -> Result<HomologyReport> {
    let p = g1_presentation(c);
    let base = kernel_homology(c, &p, None, opts)?;
    let order = random_relabeling(p.generator_count() as u32, seed);
    // fail early with the coset-limit error rather than after the first run
    coset_table_with_order(&transposition_map(c), opts.coset_limit, &order)?;
    let shuffled = kernel_homology(c, &p, Some(&order), opts)?;
    let order_invariant =
        shuffled.invariants == base.invariants && shuffled.images.rank == base.images.rank;
    let expected = (c.params.m() * (2 * c.params.n() - 1)) as usize;
    let im = &base.images;
    let ranks_agree =
        im.rank == im.rational_rank && im.rank_mod_p.iter().all(|&(_, r)| r <= im.rank);
    Ok(HomologyReport {
        schema: "galcov-homology/1".into(),
        seed,
        m: c.params.m(),
        n: c.params.n(),
        cosets: base.cosets,
        schreier_generators: base.schreier_generators,
        relators: base.relators,
        free_rank: base.invariants.free_rank,
        torsion: base.invariants.torsion_strings(),
        invariants: base.invariants.to_string(),
        elements: im.vectors.len(),
        expected_rank: expected,
        image_rank: im.rank,
        image_rational_rank: im.rational_rank,
        image_rank_mod_p: im.rank_mod_p.clone(),
        snf_consistent: base.check.consistent,
        order_invariant,
        pass: base.check.consistent && order_invariant && ranks_agree && im.rank == expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofEntry {
    pub label: String,
    pub lhs: Word,
    pub rhs: Word,
    /// Every intermediate word has the permutation image of the first.
    pub images_preserved: Option<bool>,
    /// Side conditions of scripted goals (stages proved, named braid
    /// essential).
    pub side_conditions: bool,
    pub outcome: ProofOutcome,
}

impl ProofEntry {
    pub fn pass(&self) -> bool {
        self.outcome.is_proved() && self.images_preserved != Some(false) && self.side_conditions
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProveReport {
    pub schema: String,
    pub seed: u64,
    pub m: u32,
    pub n: u32,
    pub goal: String,
    pub budget: u64,
    pub proved: usize,
    pub total: usize,
    pub pass: bool,
    pub entries: Vec<ProofEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    /// The hexagon chain equalities, optionally at one vertex.
    Chain(Option<u32>),
    /// The fork relators, optionally at one triangle.
    Fork(Option<u32>),
    /// γ-commutation of every h-cycle (optionally one row) for the pairs
    /// `(i, i+1)` and `(2n-1, 2n)`.
    Gamma(Option<u32>),
    /// Two words in a chosen presentation.
    Words { lhs: Word, rhs: Word, group: Group },
}

impl Goal {
    pub fn name(&self) -> &'static str {
        match self {
            Goal::Chain(_) => "chain",
            Goal::Fork(_) => "fork",
            Goal::Gamma(_) => "gamma",
            Goal::Words { .. } => "words",
        }
    }
}

fn entry(
    label: String,
    lhs: Word,
    rhs: Word,
    outcome: ProofOutcome,
    moves: &MoveSet,
    map: &PermMap,
) -> Result<ProofEntry> {
    let images_preserved = match outcome.proof() {
        Some(p) => {
            p.trace.verify(moves)?;
            Some(trace_preserves_images(&p.trace, moves, map)?)
        }
        None => None,
    };
    Ok(ProofEntry {
        label,
        lhs,
        rhs,
        images_preserved,
        side_conditions: true,
        outcome,
    })
}

pub fn prove_report(
    c: &DegenerationComplex,
    goal: &Goal,
    budget: u64,
    seed: u64,
) -> Result<ProveReport> {
    let map = transposition_map(c);
    let g1 = MoveSet::from_presentation(&g1_presentation(c))?;
    let inv = c.cycle_inventory();
    let mut entries = Vec::new();
    match goal {
        Goal::Chain(vertex) => {
            for h in inv
                .hexagons
                .iter()
                .filter(|h| vertex.map_or(true, |v| v == h.vertex))
            {
                for e in verify_chain(h, &g1, budget, Some(&map))?.entries {
                    let label = format!("V{} chain {}", h.vertex, e.index);
                    entries.push(entry(label, e.lhs, e.rhs, e.outcome, &g1, &map)?);
                }
            }
        }
        Goal::Fork(triangle) => {
            for (t, _) in c
                .dual_graph()
                .forks()
                .into_iter()
                .filter(|(t, _)| triangle.map_or(true, |x| x == *t))
            {
                for e in verify_fork_derivation(c, t, &g1, budget)?.entries {
                    let label = format!("T{t} [{}, {} {} {}]", e.u, e.v, e.w, e.v);
                    entries.push(entry(
                        label,
                        e.relator,
                        Word::empty(),
                        e.outcome,
                        &g1,
                        &map,
                    )?);
                }
            }
        }
        Goal::Gamma(row) => {
            for h in inv
                .h_cycles
                .iter()
                .filter(|h| row.map_or(true, |r| r == h.row))
            {
                let r = h.edges.len();
                let mut pairs: Vec<(usize, usize)> = (2..r).map(|i| (i, i + 1)).collect();
                pairs.push((r - 1, r));
                pairs.dedup();
                for (i, j) in pairs {
                    let g = verify_gamma_commutation(&h.edges, i, j, &g1, budget)?;
                    let mut label = format!("H{} g{i} g{j}", h.row);
                    if let Some((a, b)) = g.script_braid {
                        let stages = g.stages.iter().filter(|s| s.outcome.is_proved()).count();
                        label.push_str(&format!(
                            " stages {stages}/{} braid <{a},{b}> {}",
                            g.stages.len(),
                            if g.script_braid_is_essential() {
                                "essential"
                            } else {
                                "inessential"
                            }
                        ));
                    }
                    let side = g.stages.iter().all(|s| s.outcome.is_proved())
                        && (g.script_braid.is_none() || g.script_braid_is_essential());
                    let mut e = entry(label, g.lhs, g.rhs, g.outcome, &g1, &map)?;
                    e.side_conditions = side;
                    entries.push(e);
                }
            }
        }
        Goal::Words { lhs, rhs, group } => {
            let moves = MoveSet::from_presentation(&group.presentation(c, false))?;
            let images = (*group != Group::Atn).then_some(&map);
            let o = prove_equal(lhs, rhs, &moves, budget, images)?;
            let label = format!("{} = {}", lhs, rhs);
            let e = match images {
                Some(map) => entry(label, lhs.clone(), rhs.clone(), o, &moves, map)?,
                None => ProofEntry {
                    label,
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    images_preserved: None,
                    side_conditions: true,
                    outcome: o,
                },
            };
            entries.push(e);
        }
    }
    let proved = entries.iter().filter(|e| e.pass()).count();
    Ok(ProveReport {
        schema: "galcov-prove/1".into(),
        seed,
        m: c.params.m(),
        n: c.params.n(),
        goal: goal.name().into(),
        budget,
        proved,
        total: entries.len(),
        pass: proved == entries.len(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(flatten)]
    pub row: InvariantRow,
    pub census_ok: bool,
    pub sign_ok: bool,
    pub relators_ok: bool,
    pub cycles_ok: bool,
    pub abelianization_ok: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: String,
    pub seed: u64,
    pub m_max: u32,
    pub n_max: u32,
    pub pass: bool,
    pub rows: Vec<SweepRow>,
}

/// True when the abelianization is `Z/2`.
pub fn abelianization_is_z2(p: &GroupPresentation) -> Result<bool> {
    let inv = smith_normal_form(&abelianize(p)?, DEFAULT_SNF_BUDGET)?.invariants;
    Ok(inv.free_rank == 0 && inv.torsion_strings() == ["2"])
}

/// The grid battery over `1..=m_max x 2..=n_max`: census and Chern route
/// agreement, the sign table, relator images, cycle identities and the
/// abelianizations of `G1` and `C_Y`.
pub fn sweep_report(m_max: u32, n_max: u32, seed: u64) -> Result<SweepReport> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for n in 2..=n_max {
            let c = complex(m, n)?;
            let p = c.params;
            let census_ok = cross_check(p).is_empty();
            let sign_ok = index_tau(p).sign == expected_sign(p);
            let (pres, cycles, transitive) = checks_for(&c, false)?;
            let relators_ok = transitive && pres.iter().all(|x| x.failures.is_empty());
            let cycles_ok = cycles.iter().all(|x| x.pass);
            let abelianization_ok = abelianization_is_z2(&Group::G1.presentation(&c, false))?
                && abelianization_is_z2(&Group::Cy.presentation(&c, false))?;
            let pass = census_ok && sign_ok && relators_ok && cycles_ok && abelianization_ok;
            rows.push(SweepRow {
                row: invariant_row(p)?,
                census_ok,
                sign_ok,
                relators_ok,
                cycles_ok,
                abelianization_ok,
                pass,
            });
        }
    }
    Ok(SweepReport {
        schema: "galcov-sweep/1".into(),
        seed,
        m_max,
        n_max,
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}
