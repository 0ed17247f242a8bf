use galcov_core::grid::EdgeKind;
use galcov_core::invariants::{census_closed_form, node_polynomial, singularity_census};
use galcov_core::perm::{transposition_map, verify_relators};
use galcov_core::presentation::g1_presentation;
use galcov_core::{DegenerationComplex, GridParams, RelatorTag};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex(m: u32, n: u32) -> DegenerationComplex {
    DegenerationComplex::build(GridParams::new(m, n).unwrap())
}

/// Edge sets over GF(2) as bit vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn of(edges: &[u32], total: u32) -> Self {
        let mut v = vec![0u64; (total as usize).div_ceil(64)];
        for &e in edges {
            v[(e - 1) as usize / 64] ^= 1 << ((e - 1) % 64);
        }
        Bits(v)
    }

    fn xor(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a ^= b;
        }
    }

    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

fn gf2_rank(mut rows: Vec<Bits>) -> usize {
    let mut rank = 0;
    let mut pivots: Vec<(usize, Bits)> = Vec::new();
    for r in rows.iter_mut() {
        for (p, b) in &pivots {
            if r.0[p / 64] >> (p % 64) & 1 == 1 {
                r.xor(b);
            }
        }
        if let Some(p) = r.lowest() {
            for (_, b) in pivots.iter_mut() {
                if b.0[p / 64] >> (p % 64) & 1 == 1 {
                    b.xor(r);
                }
            }
            pivots.push((p, r.clone()));
            rank += 1;
        }
    }
    rank
}

/// Every triangle meets the edge set an even number of times.
fn is_dual_cycle(c: &DegenerationComplex, edges: &[u32]) -> bool {
    let mut deg = vec![0u32; c.triangles.len()];
    for &e in edges {
        let (a, b) = c.edge(e).unwrap().triangles;
        deg[a as usize - 1] += 1;
        deg[b as usize - 1] += 1;
    }
    deg.iter().all(|d| d % 2 == 0)
}

#[test]
fn census_routes_agree_on_the_whole_grid() {
    for m in 1..=6 {
        for n in 2..=8 {
            let p = GridParams::new(m, n).unwrap();
            let c = complex(m, n);
            let s = singularity_census(&c);
            assert_eq!(s, census_closed_form(p), "({m},{n})");
            assert_eq!(s.d as i64, node_polynomial(p), "({m},{n})");
            let pairs = (p.edge_count() as u64) * (p.edge_count() as u64 - 1) / 2;
            assert_eq!(s.breakdown.pairs_total, pairs);
            let g = g1_presentation(&c);
            assert_eq!(
                (g.count(RelatorTag::Triple) + g.count(RelatorTag::Commutator)) as u64,
                pairs
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sizes_and_incidence(m in 1u32..=6, n in 2u32..=8) {
        let c = complex(m, n);
        let p = c.params;
        prop_assert_eq!(c.triangles.len() as u32, 2 * m * n);
        prop_assert_eq!(c.edges.len() as u32, 3 * m * n - n);
        prop_assert_eq!(c.vertices.len() as u32, p.vertex_count());
        let kinds = |k: EdgeKind| c.edges.iter().filter(|e| e.kind == k).count() as u32;
        prop_assert_eq!(kinds(EdgeKind::Diagonal), m * n);
        prop_assert_eq!(kinds(EdgeKind::Vertical), m * n);
        prop_assert_eq!(kinds(EdgeKind::Horizontal), (m - 1) * n);
        let incidences: usize = c.vertices.iter().map(|v| v.edges.len()).sum();
        prop_assert_eq!(incidences, 2 * c.edges.len());
        let g = c.dual_graph();
        prop_assert!(g.is_connected());
        prop_assert_eq!(g.cycle_rank() as u32, p.edge_count() - p.triangle_count() + 1);
    }

    #[test]
    fn hexagons_and_h_cycles_span_the_cycle_space(m in 1u32..=6, n in 2u32..=8) {
        let c = complex(m, n);
        let total = c.params.edge_count();
        let inv = c.cycle_inventory();
        prop_assert_eq!(inv.hexagons.len() as u32, (m - 1) * n);
        prop_assert_eq!(inv.h_cycles.len() as u32, m);
        let mut rows = Vec::new();
        for h in &inv.hexagons {
            prop_assert!(is_dual_cycle(&c, &h.cyclic));
            rows.push(Bits::of(&h.cyclic, total));
        }
        for h in &inv.h_cycles {
            prop_assert!(is_dual_cycle(&c, &h.edges));
            rows.push(Bits::of(&h.edges, total));
        }
        prop_assert_eq!(gf2_rank(rows), c.dual_graph().cycle_rank());
    }

    #[test]
    fn level_hexagons_sum_to_adjacent_h_cycles(m in 2u32..=6, n in 2u32..=8) {
        let c = complex(m, n);
        let total = c.params.edge_count();
        let inv = c.cycle_inventory();
        for k in 1..m {
            let mut sum = Bits::of(&[], total);
            for h in inv.hexagons.iter().filter(|h| h.level == k) {
                sum.xor(&Bits::of(&h.cyclic, total));
            }
            let mut delta = Bits::of(&inv.h_cycles[k as usize - 1].edges, total);
            delta.xor(&Bits::of(&inv.h_cycles[k as usize].edges, total));
            prop_assert_eq!(sum, delta, "level {}", k);
        }
    }

    #[test]
    fn relabeling_changes_no_verdict(m in 1u32..=4, n in 2u32..=6, seed in any::<u64>()) {
        let c = complex(m, n);
        let mut perm: Vec<u32> = (1..=c.params.triangle_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = c.relabel_triangles(&perm).unwrap();
        prop_assert_eq!(r.dual_graph().cycle_rank(), c.dual_graph().cycle_rank());
        prop_assert_eq!(r.dual_graph().forks().len(), c.dual_graph().forks().len());
        let p = g1_presentation(&c);
        let a = verify_relators(&p, &transposition_map(&c)).unwrap();
        let b = verify_relators(&p, &transposition_map(&r)).unwrap();
        prop_assert!(a.pass && b.pass);
        prop_assert_eq!(singularity_census(&r), singularity_census(&c));
    }
}
