//! First homology of the kernel `K_1 = ker(G_1 -> S_{2mn})` for small grids:
//! coset table by permutation closure, Reidemeister-Schreier rewriting,
//! abelianization and Smith normal form.

mod coset;
mod elim;
mod matrix;
mod rs;
mod snf;

use alloc::vec::Vec;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use coset::{coset_table_from_perms, coset_table_with_order, CosetTable, DEFAULT_COSET_LIMIT};
pub use elim::{field_rank, Eliminator, ModP, Pivoting, Rationals};
pub use matrix::{abelianize, exponent_row, IntegerMatrix};
pub use rs::{reidemeister_schreier, rewrite, SchreierGenerators};
pub use snf::{
    rank_mod_p, rational_rank, smith_normal_form, smith_with_checks, AbelianInvariants, SmithForm,
    SnfCheck, CHECK_PRIMES, DEFAULT_SNF_BUDGET,
};

use crate::error::{Error, Result};
use crate::grid::{DegenerationComplex, GridParams};
use crate::perm::{kernel_membership, transposition_map, PermMap};
use crate::presentation::{g1_presentation, GroupPresentation, KernelElementSet};
use crate::word::Word;

/// Images of kernel elements in `H_1(K_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementImages {
    /// Abelianized Schreier rewriting of each element (sparse, 0-based
    /// columns).
    pub vectors: Vec<Vec<(u32, BigInt)>>,
    /// Rank of their span modulo the relation lattice, over the rationals.
    pub rank: usize,
    /// The same rank from independent rational elimination.
    pub rational_rank: usize,
    /// `(p, rank mod p)`.
    pub rank_mod_p: Vec<(u64, usize)>,
}

/// Abelianized images of `words` in the kernel, and the rank of the
/// subgroup they generate in `Z^s / rowspace(relations)`.
pub fn element_images_in_h1(
    words: &[Word],
    map: &PermMap,
    table: &CosetTable,
    relations: &IntegerMatrix,
    relation_rank: usize,
    budget: u64,
) -> Result<ElementImages> {
    let s = SchreierGenerators::new(table);
    let mut v = IntegerMatrix::new(s.count());
    for (i, w) in words.iter().enumerate() {
        if !kernel_membership(w, map)? {
            return Err(Error::NotInKernel(i));
        }
        let (rw, end) = rewrite(w, 0, table, &s)?;
        if end != 0 {
            return Err(Error::NotInKernel(i));
        }
        v.push_sparse(exponent_row(&rw, s.count())?);
    }
    let stacked = relations.stacked(&v);
    let rank = smith_normal_form(&stacked, budget)?.rank - relation_rank;
    let rational_rank = rational_rank(&stacked, budget)? - rational_rank(relations, budget)?;
    let mut by_prime = Vec::new();
    for p in CHECK_PRIMES {
        by_prime.push((
            p,
            rank_mod_p(&stacked, p, budget)? - rank_mod_p(relations, p, budget)?,
        ));
    }
    Ok(ElementImages {
        vectors: v.rows,
        rank,
        rational_rank,
        rank_mod_p: by_prime,
    })
}

/// Summary of one kernel homology run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelHomology {
    pub params: GridParams,
    pub cosets: usize,
    pub schreier_generators: usize,
    pub relators: usize,
    pub invariants: AbelianInvariants,
    pub check: SnfCheck,
    pub images: ElementImages,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyOptions {
    pub coset_limit: u64,
    pub snf_budget: u64,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        Self {
            coset_limit: DEFAULT_COSET_LIMIT,
            snf_budget: DEFAULT_SNF_BUDGET,
        }
    }
}

/// The full pipeline on `G_1` of the complex. `order` permutes the
/// generator exploration order of the coset closure.
pub fn kernel_homology(
    c: &DegenerationComplex,
    p: &GroupPresentation,
    order: Option<&[u32]>,
    opts: HomologyOptions,
) -> Result<KernelHomology> {
    let map = transposition_map(c);
    let table = match order {
        Some(o) => coset_table_with_order(&map, opts.coset_limit, o)?,
        None => coset_table_from_perms(&map, opts.coset_limit)?,
    };
    let sub = reidemeister_schreier(p, &table)?;
    let rel = abelianize(&sub)?;
    let (snf, check) = smith_with_checks(&rel, opts.snf_budget)?;
    let elements = KernelElementSet::of(c).elements();
    let images = element_images_in_h1(&elements, &map, &table, &rel, snf.rank, opts.snf_budget)?;
    Ok(KernelHomology {
        params: c.params,
        cosets: table.len(),
        schreier_generators: sub.generator_count(),
        relators: sub.relators.len(),
        invariants: snf.invariants,
        check,
        images,
    })
}

pub fn h1_of_kernel(params: GridParams, opts: HomologyOptions) -> Result<KernelHomology> {
    let c = DegenerationComplex::build(params);
    let p = g1_presentation(&c);
    kernel_homology(&c, &p, None, opts)
}
