use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::invariants::factorial;
use crate::perm::{PermMap, Permutation};

pub const DEFAULT_COSET_LIMIT: u64 = 1_000_000;

/// Cosets of the kernel of `G -> S_d`, identified with permutations.
/// Coset 0 is the kernel itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub gens: usize,
    pub cosets: Vec<Permutation>,
    /// `table[c * gens + (g - 1)]` is coset `c` acted on by generator `g`.
    table: Vec<u32>,
    inverse_table: Vec<u32>,
    /// Schreier tree: `(parent, generator)` for every coset but the root.
    pub parent: Vec<Option<(u32, u32)>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn act(&self, coset: u32, g: u32) -> u32 {
        self.table[coset as usize * self.gens + g as usize - 1]
    }

    /// The coset `d` with `act(d, g) == coset`.
    pub fn act_inverse(&self, coset: u32, g: u32) -> u32 {
        self.inverse_table[coset as usize * self.gens + g as usize - 1]
    }

    pub fn is_tree_entry(&self, coset: u32, g: u32) -> bool {
        let d = self.act(coset, g);
        self.parent[d as usize] == Some((coset, g))
    }

    pub fn is_complete(&self) -> bool {
        self.table.len() == self.cosets.len() * self.gens
            && self.table.iter().all(|&c| (c as usize) < self.cosets.len())
    }
}

/// Breadth-first closure of the identity under the generator images.
pub fn coset_table_from_perms(map: &PermMap, limit: u64) -> Result<CosetTable> {
    let order: Vec<u32> = (1..=map.images.len() as u32).collect();
    coset_table_with_order(map, limit, &order)
}

/// As [`coset_table_from_perms`], exploring generators in `order` so that
/// coset numbering and the Schreier tree change while the table stays the
/// same table up to renumbering.
pub fn coset_table_with_order(map: &PermMap, limit: u64, order: &[u32]) -> Result<CosetTable> {
    let degree = map.degree;
    let full = factorial(degree as u64);
    if full > limit.into() {
        return Err(Error::GroupOrderLimit {
            points: degree as u32,
            order: full.to_string(),
            limit,
        });
    }
    let gens = map.images.len();
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    let mut cosets = vec![Permutation::identity(degree)];
    let mut parent = vec![None];
    index.insert(cosets[0].clone(), 0);
    let mut table = vec![u32::MAX; gens];
    let mut head = 0;
    while head < cosets.len() {
        for &g in order {
            let next = cosets[head].then(map.get(g)?);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = cosets.len() as u32;
                    if id as u64 >= limit {
                        return Err(Error::GroupOrderLimit {
                            points: degree as u32,
                            order: full.to_string(),
                            limit,
                        });
                    }
                    index.insert(next.clone(), id);
                    cosets.push(next);
                    parent.push(Some((head as u32, g)));
                    table.extend(core::iter::repeat(u32::MAX).take(gens));
                    id
                }
            };
            table[head * gens + g as usize - 1] = id;
        }
        head += 1;
    }
    let mut inverse_table = vec![u32::MAX; table.len()];
    for c in 0..cosets.len() {
        for g in 0..gens {
            let d = table[c * gens + g] as usize;
            inverse_table[d * gens + g] = c as u32;
        }
    }
    let t = CosetTable {
        gens,
        cosets,
        table,
        inverse_table,
        parent,
    };
    if !t.is_complete() {
        return Err(Error::IncompleteTable);
    }
    log::debug!("coset table: {} cosets x {} generators", t.len(), gens);
    Ok(t)
}
