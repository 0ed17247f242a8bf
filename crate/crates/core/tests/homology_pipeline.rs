use galcov_core::homology::{
    abelianize, coset_table_from_perms, kernel_homology, reidemeister_schreier, HomologyOptions,
    DEFAULT_COSET_LIMIT,
};
use galcov_core::perm::transposition_map;
use galcov_core::presentation::{cy_e6_presentation, g1_presentation};
use galcov_core::{DegenerationComplex, GridParams};

fn complex(m: u32, n: u32) -> DegenerationComplex {
    DegenerationComplex::build(GridParams::new(m, n).unwrap())
}

#[test]
fn schreier_generator_count_identity() {
    for (m, n) in [(1, 2), (1, 3)] {
        let c = complex(m, n);
        let t = coset_table_from_perms(&transposition_map(&c), DEFAULT_COSET_LIMIT).unwrap();
        let p = g1_presentation(&c);
        let sub = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(
            sub.generator_count(),
            t.len() * p.generator_count() - (t.len() - 1)
        );
        assert_eq!(sub.relators.len(), t.len() * p.relators.len());
        assert_eq!(abelianize(&sub).unwrap().cols, sub.generator_count());
    }
}

#[test]
fn element_images_have_full_rank() {
    for (m, n, rank) in [(1, 2, 3), (1, 3, 5)] {
        let c = complex(m, n);
        let k =
            kernel_homology(&c, &g1_presentation(&c), None, HomologyOptions::default()).unwrap();
        assert_eq!(k.images.rank, rank);
        assert_eq!(k.images.rational_rank, rank);
        assert!(k.images.rank_mod_p.iter().all(|&(_, r)| r == rank));
        assert!(k.check.consistent);
        assert_eq!(k.invariants.free_rank, rank);
    }
}

#[test]
fn invariants_survive_relabeling_and_reordering() {
    let c = complex(1, 3);
    let p = g1_presentation(&c);
    let base = kernel_homology(&c, &p, None, HomologyOptions::default()).unwrap();
    let r = c.relabel_triangles(&[4, 6, 1, 5, 2, 3]).unwrap();
    let relabeled = kernel_homology(&r, &p, None, HomologyOptions::default()).unwrap();
    let reordered = kernel_homology(
        &c,
        &p,
        Some(&[6, 2, 4, 1, 5, 3]),
        HomologyOptions::default(),
    )
    .unwrap();
    for other in [&relabeled, &reordered] {
        assert_eq!(other.invariants, base.invariants);
        assert_eq!(other.images.rank, base.images.rank);
    }
    let again = kernel_homology(&c, &p, None, HomologyOptions::default()).unwrap();
    assert_eq!(again, base);
}

#[test]
fn both_emitters_give_the_same_kernel_homology() {
    let c = complex(1, 2);
    let a = kernel_homology(&c, &g1_presentation(&c), None, HomologyOptions::default()).unwrap();
    let b = kernel_homology(
        &c,
        &cy_e6_presentation(&c, false),
        None,
        HomologyOptions::default(),
    )
    .unwrap();
    assert_eq!(a.invariants, b.invariants);
    assert_eq!(a.images.rank, b.images.rank);
}
