//! Small finite groups by multiplication table, and homomorphism counting.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::presentation::GroupPresentation;

pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

/// Elements are `0..order`, `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    /// From a full table `mul[a][b] = a b`; element 0 must be the identity.
    pub fn from_table(name: &str, table: Vec<Vec<u32>>) -> Self {
        let order = table.len();
        let mul: Vec<u32> = table.into_iter().flatten().collect();
        assert_eq!(mul.len(), order * order, "table must be square");
        let inv = (0..order)
            .map(|a| {
                (0..order as u32)
                    .find(|&b| mul[a * order + b as usize] == 0)
                    .expect("group table")
            })
            .collect();
        Self {
            name: name.to_string(),
            order,
            mul,
            inv,
        }
    }

    /// Closure of the generated permutation group; elements ordered by
    /// their image arrays, identity first.
    pub fn from_permutations(name: &str, gens: &[Permutation]) -> Self {
        let degree = gens.first().map_or(0, |g| g.degree());
        let id = Permutation::identity(degree);
        let mut all: BTreeMap<Permutation, ()> = BTreeMap::new();
        all.insert(id.clone(), ());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = p.then(g);
                if all.insert(q.clone(), ()).is_none() {
                    frontier.push(q);
                }
            }
        }
        let elems: Vec<Permutation> = all.into_keys().collect();
        let index = |p: &Permutation| elems.binary_search(p).expect("closed") as u32;
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index(&a.then(b))).collect())
            .collect();
        Self::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let name = if n == 1 {
            "trivial".to_string()
        } else {
            alloc::format!("C{n}")
        };
        let table = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        Self::from_table(&name, table)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (p, q) = (a.order, b.order);
        let name = alloc::format!("{}x{}", a.name, b.name);
        let table = (0..p * q)
            .map(|x| {
                (0..p * q)
                    .map(|y| a.mul(x / q, y / q) * q as u32 + b.mul(x % q, y % q))
                    .collect()
            })
            .collect();
        Self::from_table(&name, table)
    }

    pub fn symmetric3() -> Self {
        let s = Permutation::from_images(&[2, 1, 3]).unwrap();
        let t = Permutation::from_images(&[2, 3, 1]).unwrap();
        Self::from_permutations("S3", &[s, t])
    }

    pub fn dihedral8() -> Self {
        let r = Permutation::from_images(&[2, 3, 4, 1]).unwrap();
        let s = Permutation::from_images(&[4, 3, 2, 1]).unwrap();
        Self::from_permutations("D4", &[r, s])
    }

    /// Unit quaternions `±1, ±i, ±j, ±k`; element `2u + s` is `(-1)^s u`
    /// with `u` in `1, i, j, k`.
    pub fn quaternion8() -> Self {
        // unit products: (sign, unit) of e_a e_b
        const UNIT: [[(u32, u32); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8u32)
            .map(|x| {
                (0..8u32)
                    .map(|y| {
                        let (s, u) = UNIT[(x / 2) as usize][(y / 2) as usize];
                        2 * u + ((x % 2 + y % 2 + s) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", table)
    }

    /// All 14 groups of order at most 8, up to isomorphism.
    pub fn small_groups() -> Vec<FiniteGroup> {
        let c2 = Self::cyclic(2);
        let mut v: Vec<FiniteGroup> = (1..=8).map(Self::cyclic).collect();
        let c2c2 = Self::direct_product(&c2, &c2);
        v.push(Self::direct_product(&Self::cyclic(4), &c2));
        v.push(Self::direct_product(&c2c2, &c2));
        v.push(c2c2);
        v.push(Self::symmetric3());
        v.push(Self::dihedral8());
        v.push(Self::quaternion8());
        v.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
        v
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> u32 {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> u32 {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a) as usize;
            k += 1;
        }
        k
    }
}

/// Number of homomorphisms from the presented group to `target`, by
/// assigning generator images in order and checking each relator as soon
/// as its largest generator is assigned. `budget` bounds relator
/// evaluations.
pub fn hom_count(p: &GroupPresentation, target: &FiniteGroup, budget: u64) -> Result<u64> {
    p.validate()?;
    let gens = p.generator_count();
    // relators grouped by the generator that completes them
    let mut due: Vec<Vec<Vec<(usize, bool)>>> = vec![Vec::new(); gens + 1];
    for r in &p.relators {
        let w: Vec<(usize, bool)> = r
            .word
            .letters()
            .iter()
            .map(|l| (l.generator() as usize, l.is_inverse()))
            .collect();
        let last = w.iter().map(|x| x.0).max().unwrap_or(0);
        due[last].push(w);
    }
    let mut spent = 0u64;
    // relators without letters are satisfied by every assignment
    let mut images = vec![0usize; gens + 1];
    let mut count = 0u64;
    search(
        1,
        gens,
        &due,
        target,
        &mut images,
        &mut count,
        &mut spent,
        budget,
    )?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: usize,
    gens: usize,
    due: &[Vec<Vec<(usize, bool)>>],
    t: &FiniteGroup,
    images: &mut [usize],
    count: &mut u64,
    spent: &mut u64,
    budget: u64,
) -> Result<()> {
    if g > gens {
        *count += 1;
        return Ok(());
    }
    for x in 0..t.order() {
        images[g] = x;
        let mut ok = true;
        for w in &due[g] {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded {
                    budget: "hom-count",
                    limit: budget,
                });
            }
            let mut acc = 0usize;
            for &(h, inv) in w {
                let y = if inv {
                    t.inv(images[h]) as usize
                } else {
                    images[h]
                };
                acc = t.mul(acc, y) as usize;
            }
            if acc != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            search(g + 1, gens, due, t, images, count, spent, budget)?;
        }
    }
    Ok(())
}
