use std::collections::BTreeSet;

use galcov_core::homology::{abelianize, smith_normal_form, DEFAULT_SNF_BUDGET};
use galcov_core::perm::{eval_word, transposition_map, verify_relators};
use galcov_core::presentation::{
    cy_e6_presentation, cy_presentation, e6_relators, g1_presentation, gamma_words, simplify,
    KernelElementSet,
};
use galcov_core::{DegenerationComplex, GridParams, GroupPresentation, RelatorTag};

fn complex(m: u32, n: u32) -> DegenerationComplex {
    DegenerationComplex::build(GridParams::new(m, n).unwrap())
}

fn pairs(p: &GroupPresentation, tag: RelatorTag) -> BTreeSet<Vec<u32>> {
    p.with_tag(tag).map(|r| r.key.clone()).collect()
}

fn is_z2(p: &GroupPresentation) -> bool {
    let inv = smith_normal_form(&abelianize(p).unwrap(), DEFAULT_SNF_BUDGET)
        .unwrap()
        .invariants;
    inv.free_rank == 0 && inv.torsion_strings() == ["2"]
}

#[test]
fn abelianizations_are_z2() {
    for m in 1..=4 {
        for n in 2..=6 {
            let c = complex(m, n);
            assert!(is_z2(&g1_presentation(&c)), "G1 ({m},{n})");
            assert!(is_z2(&cy_presentation(&c.dual_graph())), "C_Y ({m},{n})");
            assert!(is_z2(&cy_e6_presentation(&c, true)), "C_Y/E6 ({m},{n})");
        }
    }
}

#[test]
fn triple_sets_agree_between_derivations() {
    for m in 1..=4 {
        for n in 2..=6 {
            let c = complex(m, n);
            let g1 = g1_presentation(&c);
            let cy = cy_presentation(&c.dual_graph());
            assert_eq!(
                pairs(&g1, RelatorTag::Triple),
                pairs(&cy, RelatorTag::Triple),
                "({m},{n})"
            );
            assert_eq!(
                pairs(&g1, RelatorTag::Commutator),
                pairs(&cy, RelatorTag::Commutator),
                "({m},{n})"
            );
        }
    }
}

#[test]
fn every_relator_maps_to_the_identity() {
    for m in 1..=4 {
        for n in 2..=6 {
            let c = complex(m, n);
            let map = transposition_map(&c);
            for p in [g1_presentation(&c), cy_e6_presentation(&c, true)] {
                let r = verify_relators(&p, &map).unwrap();
                assert!(r.pass, "({m},{n}) {:?}", r.counterexample);
            }
            let inv = c.cycle_inventory();
            let cycles = inv
                .hexagons
                .iter()
                .map(|h| h.cyclic.to_vec())
                .chain(inv.h_cycles.iter().map(|h| h.edges.clone()));
            for cyc in cycles {
                let g = gamma_words(&cyc).unwrap();
                let r = cyc.len();
                assert_eq!(
                    eval_word(&g.gammas[r - 2], &map).unwrap(),
                    eval_word(&g.gammas[r - 1], &map).unwrap()
                );
            }
        }
    }
}

#[test]
fn emitters_are_simplify_stable() {
    let c = complex(2, 4);
    for p in [
        g1_presentation(&c),
        cy_presentation(&c.dual_graph()),
        cy_e6_presentation(&c, true),
    ] {
        assert_eq!(simplify(&p), p);
    }
}

#[test]
fn kernel_elements_of_two_four() {
    let c = complex(2, 4);
    let elements = KernelElementSet::of(&c).elements();
    assert_eq!(elements.len(), 14);
    let distinct: BTreeSet<_> = elements.iter().collect();
    assert_eq!(distinct.len(), 14);
    let map = transposition_map(&c);
    assert!(elements
        .iter()
        .all(|w| eval_word(w, &map).unwrap().is_identity()));
    assert_eq!(e6_relators(&c.cycle_inventory(), true).len(), 4 * 6);
}
