//! Exhaustive generation of small structures up to isomorphism.
//!
//! Lattices come from naturally labelled posets on the elements strictly
//! between bottom and top. Finite `B`-modules are the same objects (a finite
//! join-semilattice with zero is a lattice). `K`-modules come from their
//! collinearity relation: for points `x ≠ y`, `z ∈ x + y` exactly when
//! `{x, y, z}` is a collinear triple, so a `K`-module is a family of 3-sets
//! covering every pair, subject to the axioms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hmod::{check_hmodule_axioms, find_h_isomorphism, HModule};
use crate::lattice::{compact_elements_module, find_lattice_isomorphism, lattice_from_poset, FiniteLattice};
use crate::mask::Mask;
use crate::smod::FiniteModule;
use crate::tables::{krasner, sum_sets};

/// Largest lattice size [`lattices`] accepts.
pub const MAX_LATTICE_SIZE: usize = 9;

/// Largest module size [`kmodules`] accepts.
pub const MAX_KMODULE_SIZE: usize = 7;

fn too_large(what: &str, size: usize, limit: usize) -> Error {
    Error::TooLarge { what: what.into(), size, limit }
}

/// Every lattice with at most `max_size` elements, one per isomorphism
/// class, by increasing size. Bottom is element 0 and top the last element.
pub fn lattices(max_size: usize) -> Result<Vec<FiniteLattice>> {
    if max_size > MAX_LATTICE_SIZE {
        return Err(too_large("lattice generation", max_size, MAX_LATTICE_SIZE));
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        out.extend(lattices_of_size(size));
    }
    Ok(out)
}

fn lattices_of_size(size: usize) -> Vec<FiniteLattice> {
    if size <= 2 {
        return vec![FiniteLattice::chain(size).unwrap()];
    }
    let inner = size - 2;
    let mut found: Vec<Arc<FiniteLattice>> = Vec::new();
    let mut buckets: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
    let mut below = Vec::with_capacity(inner);
    naturally_labelled(inner, &mut below, &mut |below| {
        let top = size - 1;
        let leq = (0..size * size)
            .map(|p| {
                let (a, b) = (p / size, p % size);
                a == b || a == 0 || b == top || (a != top && b != 0 && below[b - 1].contains(a - 1))
            })
            .collect();
        let Ok(l) = lattice_from_poset(size, leq) else { return };
        let l = Arc::new(l);
        let key = lattice_key(&l);
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().any(|&i| find_lattice_isomorphism(&found[i], &l).is_some()) {
            return;
        }
        bucket.push(found.len());
        found.push(l);
    });
    found.into_iter().map(|l| Arc::try_unwrap(l).unwrap()).collect()
}

fn lattice_key(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let mut key: Vec<(usize, usize)> = (0..l.size()).map(|x| (l.down_set(x).len(), l.up_set(x).len())).collect();
    key.sort_unstable();
    key
}

/// Calls `visit` with the strict down-sets of every naturally labelled poset
/// on `n` elements (`i < j` in the order implies `i < j` as integers).
fn naturally_labelled(n: usize, below: &mut Vec<Mask>, visit: &mut dyn FnMut(&[Mask])) {
    let k = below.len();
    if k == n {
        visit(below);
        return;
    }
    for bits in 0u64..1 << k {
        let d = Mask(bits);
        if d.iter().all(|i| below[i].is_subset(d)) {
            below.push(d);
            naturally_labelled(n, below, visit);
            below.pop();
        }
    }
}

/// Every `B`-module with at most `max_size` elements, one per isomorphism
/// class.
pub fn bmodules(max_size: usize) -> Result<Vec<FiniteModule>> {
    Ok(lattices(max_size)?.iter().map(compact_elements_module).collect())
}

/// Every `K`-module with at most `max_size` elements, one per isomorphism
/// class, by increasing size.
pub fn kmodules(max_size: usize) -> Result<Vec<HModule>> {
    if max_size > MAX_KMODULE_SIZE {
        return Err(too_large("K-module generation", max_size, MAX_KMODULE_SIZE));
    }
    let k = Arc::new(krasner());
    let mut out: Vec<Arc<HModule>> = Vec::new();
    for size in 1..=max_size {
        let points = size - 1;
        let triples: Vec<Mask> = (1..=points)
            .flat_map(|x| (x + 1..=points).flat_map(move |y| (y + 1..=points).map(move |z| Mask::from_elements([x, y, z]))))
            .collect();
        let first = out.len();
        for bits in 0u64..1 << triples.len() {
            let chosen: Vec<Mask> = Mask(bits).iter().map(|t| triples[t]).collect();
            let Some(add) = collinearity_sums(size, &chosen) else { continue };
            if !associative(size, &add) {
                continue;
            }
            let act = (0..2 * size).map(|p| if p < size { 0 } else { p - size }).collect();
            let m = HModule::from_tables(k.clone(), size, add, act)?;
            if !check_hmodule_axioms(&m).is_valid() {
                continue;
            }
            let m = Arc::new(m);
            if out[first..].iter().any(|o| find_h_isomorphism(o, &m).is_some()) {
                continue;
            }
            out.push(m);
        }
    }
    Ok(out.into_iter().map(|m| Arc::try_unwrap(m).unwrap()).collect())
}

/// Sums of the `K`-module candidate with the given collinear triples, or
/// `None` when some pair of points has an empty sum.
fn collinearity_sums(size: usize, triples: &[Mask]) -> Option<Vec<Mask>> {
    let mut add = vec![Mask::EMPTY; size * size];
    for a in 0..size {
        add[a] = Mask::singleton(a);
        add[a * size] = Mask::singleton(a);
        if a > 0 {
            add[a * size + a] = Mask::from_elements([0, a]);
        }
    }
    for &t in triples {
        for x in t {
            for y in t {
                if x != y {
                    add[x * size + y] = add[x * size + y].union(t.difference(Mask::from_elements([x, y])));
                }
            }
        }
    }
    add.iter().all(|s| !s.is_empty()).then_some(add)
}

fn associative(size: usize, add: &[Mask]) -> bool {
    let sum = |a: usize, b: usize| add[a * size + b];
    (1..size).all(|a| {
        (1..size).all(|b| {
            (1..size).all(|c| sum_sets(sum, sum(a, b), Mask::singleton(c)) == sum_sets(sum, Mask::singleton(a), sum(b, c)))
        })
    })
}
