use galcov::fixtures::{golden_homology, golden_key};
use galcov::reports::{complex, Group};
use galcov_core::homology::{kernel_homology, HomologyOptions};

#[test]
fn recomputed_homology_matches_the_fixture() {
    let golden = golden_homology().unwrap();
    assert_eq!(golden.len(), 4);
    for (m, n) in [(1, 2), (1, 3)] {
        let c = complex(m, n).unwrap();
        for g in [Group::G1, Group::CyE6] {
            let k = kernel_homology(
                &c,
                &g.presentation(&c, false),
                None,
                HomologyOptions::default(),
            )
            .unwrap();
            let want = &golden[&golden_key(m, n, g.name())];
            assert_eq!(k.cosets, want.cosets);
            assert_eq!(k.schreier_generators, want.schreier_generators);
            assert_eq!(k.invariants.free_rank, want.free_rank);
            assert_eq!(k.invariants.torsion_strings(), want.torsion);
            assert_eq!(k.images.rank, want.image_rank);
        }
    }
}
