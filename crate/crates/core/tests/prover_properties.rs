use galcov_core::perm::{eval_word, transposition_map, PermMap};
use galcov_core::presentation::{cy_e6_presentation, e6_relators, g1_presentation, quintic_word};
use galcov_core::prover::{
    apply_step, prove_equal, trace_preserves_images, MoveSet, ProofOutcome, ProofTrace, Step,
    DEFAULT_PROVER_BUDGET,
};
use galcov_core::{DegenerationComplex, GridParams, Word};
use proptest::prelude::*;

fn setup(m: u32, n: u32) -> (DegenerationComplex, MoveSet, PermMap) {
    let c = DegenerationComplex::build(GridParams::new(m, n).unwrap());
    let moves = MoveSet::from_presentation(&g1_presentation(&c)).unwrap();
    let map = transposition_map(&c);
    (c, moves, map)
}

/// Applies the legal ones among `picks` to `w`.
fn scramble(w: &[u32], picks: &[(usize, usize, u32)], moves: &MoveSet) -> Vec<u32> {
    let mut w = w.to_vec();
    for &(kind, pos, gen) in picks {
        let step = match kind {
            0 => Step::Commute { pos },
            1 => Step::Braid { pos },
            2 => Step::Cancel {
                pos,
                gen: w.get(pos).copied().unwrap_or(gen),
            },
            _ => Step::Insert { pos, gen },
        };
        let mut next = w.clone();
        if apply_step(&mut next, &step, moves, 0).is_ok() {
            w = next;
        }
    }
    w
}

#[test]
fn quintics_are_interderivable_with_the_e6_relators() {
    for (m, n) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        let (c, g1, map) = setup(m, n);
        let e6 = MoveSet::from_presentation(&cy_e6_presentation(&c, false)).unwrap();
        let inv = c.cycle_inventory();
        let rels = e6_relators(&inv, false);
        for h in &inv.hexagons {
            let q = quintic_word(h);
            let o =
                prove_equal(&q, &Word::empty(), &e6, DEFAULT_PROVER_BUDGET, Some(&map)).unwrap();
            assert!(o.is_proved(), "({m},{n}) V{}", h.vertex);
            let rel = rels.iter().find(|x| x.key[0] == h.vertex).unwrap();
            let o = prove_equal(
                &rel.word,
                &Word::empty(),
                &g1,
                DEFAULT_PROVER_BUDGET,
                Some(&map),
            )
            .unwrap();
            let p = o
                .proof()
                .unwrap_or_else(|| panic!("({m},{n}) V{} {:?}", h.vertex, o.status()));
            assert!(trace_preserves_images(&p.trace, &g1, &map).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scrambled_words_are_never_refuted(
        start in proptest::collection::vec(1u32..=20, 1..8),
        picks in proptest::collection::vec((0usize..4, 0usize..10, 1u32..=20), 1..12),
    ) {
        let (_, moves, map) = setup(2, 4);
        let other = scramble(&start, &picks, &moves);
        let (a, b) = (Word::from_gens(&start), Word::from_gens(&other));
        prop_assert_eq!(eval_word(&a, &map).unwrap(), eval_word(&b, &map).unwrap());
        let o = prove_equal(&a, &b, &moves, 20_000, Some(&map)).unwrap();
        match &o {
            ProofOutcome::Refuted { .. } => prop_assert!(false, "equal words refuted"),
            ProofOutcome::Proved(p) => {
                prop_assert_eq!(p.trace.replay(&moves).unwrap(), b);
                prop_assert!(trace_preserves_images(&p.trace, &moves, &map).unwrap());
            }
            ProofOutcome::Unknown { .. } => {}
        }
    }

    #[test]
    fn different_images_are_refuted(x in 1u32..=20, y in 1u32..=20) {
        let (_, moves, map) = setup(2, 4);
        prop_assume!(x != y);
        let o = prove_equal(&Word::from_gens(&[x]), &Word::from_gens(&[y]), &moves, 100, Some(&map)).unwrap();
        prop_assert_eq!(o.status(), "REFUTED");
    }

    #[test]
    fn traces_round_trip_through_json(start in proptest::collection::vec(1u32..=20, 1..6)) {
        let (_, moves, _) = setup(2, 4);
        let mut w = start.clone();
        w.extend(start.iter().rev());
        let o = prove_equal(&Word::from_gens(&w), &Word::empty(), &moves, DEFAULT_PROVER_BUDGET, None).unwrap();
        let t = o.proof().unwrap().trace.clone();
        let back: ProofTrace = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(back.replay(&moves).unwrap(), t.final_word.clone());
        prop_assert_eq!(&back, &t);
    }
}
