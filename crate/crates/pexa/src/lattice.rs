//! Finite lattices with join-preserving maps, the saturated-submodule functor
//! from `B`-modules, and geometric-lattice detection.
//!
//! Only finite lattices are handled. In a finite lattice every element is
//! compact, so the compactness conditions on algebraic lattices and their
//! morphisms hold automatically and are not represented.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::morphism::{Morphism, MorphismClass};
use crate::search::{HomSearch, Structure, SumRule};
use crate::smod::{enumerate_submodules, saturation_closure, FiniteModule, ModuleMorphism};
use crate::tables::{boolean, SemiringTable};

/// A finite lattice with explicit order, join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    /// Rank function, present when all maximal chains below each element
    /// have the same length.
    height: Option<Vec<usize>>,
}

pub type LatticeMorphism = Morphism<FiniteLattice>;

/// Builds a lattice from a partial order given as a row-major `size × size`
/// relation, computing joins and meets.
pub fn lattice_from_poset(size: usize, leq: Vec<bool>) -> Result<FiniteLattice> {
    if size == 0 {
        return Err(Error::malformed("lattice must have at least one element"));
    }
    if size > crate::MAX_ELEMENTS {
        return Err(Error::TooLarge { what: "lattice".into(), size, limit: crate::MAX_ELEMENTS });
    }
    if leq.len() != size * size {
        return Err(Error::malformed(format!("order relation has {} entries, expected {size}x{size}", leq.len())));
    }
    let le = |a: usize, b: usize| leq[a * size + b];
    for a in 0..size {
        if !le(a, a) {
            return Err(Error::NotLattice(format!("not a partial order: {a} is not below itself")));
        }
        for b in 0..size {
            if a != b && le(a, b) && le(b, a) {
                return Err(Error::NotLattice(format!("not a partial order: {a} and {b} are below each other")));
            }
            for c in 0..size {
                if le(a, b) && le(b, c) && !le(a, c) {
                    return Err(Error::NotLattice(format!("not a partial order: {a} <= {b} <= {c} but not {a} <= {c}")));
                }
            }
        }
    }
    let mut join = vec![0; size * size];
    let mut meet = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            let upper: Vec<usize> = (0..size).filter(|&u| le(a, u) && le(b, u)).collect();
            join[a * size + b] = upper
                .iter()
                .copied()
                .find(|&u| upper.iter().all(|&v| le(u, v)))
                .ok_or_else(|| Error::NotLattice(format!("pair ({a},{b}) has no join")))?;
            let lower: Vec<usize> = (0..size).filter(|&l| le(l, a) && le(l, b)).collect();
            meet[a * size + b] = lower
                .iter()
                .copied()
                .find(|&l| lower.iter().all(|&v| le(v, l)))
                .ok_or_else(|| Error::NotLattice(format!("pair ({a},{b}) has no meet")))?;
        }
    }
    let bottom = (0..size).find(|&x| (0..size).all(|y| le(x, y))).expect("a lattice has a bottom");
    let top = (0..size).find(|&x| (0..size).all(|y| le(y, x))).expect("a lattice has a top");
    Ok(FiniteLattice::assemble(size, leq, join, meet, bottom, top))
}

impl FiniteLattice {
    fn assemble(size: usize, leq: Vec<bool>, join: Vec<usize>, meet: Vec<usize>, bottom: usize, top: usize) -> Self {
        let mut l = FiniteLattice { size, leq, join, meet, bottom, top, height: None };
        let (lo, hi) = l.chain_lengths();
        let from_bottom = |t: &Vec<Option<usize>>| (0..size).map(|x| t[bottom * size + x].unwrap()).collect::<Vec<_>>();
        let (lo, hi) = (from_bottom(&lo), from_bottom(&hi));
        if lo == hi {
            l.height = Some(lo);
        }
        l
    }

    /// Lattice from a join table alone (`a ≤ b ⇔ a ∨ b = b`).
    pub fn from_join(size: usize, join: Vec<usize>) -> Result<Self> {
        crate::tables::check_table("join", &join, size, size, size)?;
        let leq = (0..size * size).map(|p| join[p] == p % size).collect();
        lattice_from_poset(size, leq)
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        lattice_from_poset(n, (0..n * n).map(|p| p / n <= p % n).collect())
    }

    /// Subsets of a `k`-set, element index = bitmask.
    pub fn boolean(k: usize) -> Result<Self> {
        let n = 1usize << k;
        lattice_from_poset(n, (0..n * n).map(|p| (p / n) & !(p % n) == 0).collect())
    }

    /// `L_n = {0, a_1, .., a_n, 1}` with pairwise incomparable atoms; `L_3`
    /// is `M_3`.
    pub fn diamond(n: usize) -> Result<Self> {
        let size = n + 2;
        let top = n + 1;
        lattice_from_poset(size, (0..size * size).map(|p| {
            let (a, b) = (p / size, p % size);
            a == b || a == 0 || b == top
        }).collect())
    }

    /// The pentagon `N_5`: `0 < a < b < 1` and `0 < c < 1`, indexed
    /// `0, a, b, c, 1`.
    pub fn pentagon() -> Self {
        let pairs = [(1, 2)];
        let size = 5;
        let leq = (0..size * size)
            .map(|p| {
                let (a, b) = (p / size, p % size);
                a == b || a == 0 || b == 4 || pairs.contains(&(a, b))
            })
            .collect();
        lattice_from_poset(size, leq).expect("pentagon is a lattice")
    }

    /// Componentwise order on pairs, `(a, b)` at index `a * |other| + b`.
    pub fn product(&self, other: &FiniteLattice) -> Result<Self> {
        let (p, q) = (self.size, other.size);
        let n = p * q;
        if n > crate::MAX_ELEMENTS {
            return Err(Error::TooLarge { what: "lattice product".into(), size: n, limit: crate::MAX_ELEMENTS });
        }
        let leq = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.leq(x / q, y / q) && other.leq(x % q, y % q)
            })
            .collect();
        lattice_from_poset(n, leq)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn height(&self) -> Option<&[usize]> {
        self.height.as_deref()
    }

    pub fn leq_table(&self) -> &[bool] {
        &self.leq
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.size)
    }

    pub fn join_all(&self, s: Mask) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn down_set(&self, x: usize) -> Mask {
        (0..self.size).filter(|&y| self.leq(y, x)).collect()
    }

    pub fn up_set(&self, x: usize) -> Mask {
        (0..self.size).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y) && (0..self.size).all(|z| z == x || z == y || !(self.leq(x, z) && self.leq(z, y)))
    }

    pub fn atoms(&self) -> Mask {
        (0..self.size).filter(|&x| self.covers(self.bottom, x)).collect()
    }

    pub fn is_downward_closed(&self, s: Mask) -> bool {
        s.iter().all(|x| self.down_set(x).is_subset(s))
    }

    /// Contains the bottom and is closed under joins.
    pub fn is_join_closed(&self, s: Mask) -> bool {
        s.contains(self.bottom) && s.iter().all(|x| s.iter().all(|y| s.contains(self.join(x, y))))
    }

    /// Shortest and longest cover-chain lengths for every comparable pair.
    fn chain_lengths(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let n = self.size;
        let mut order: Vec<usize> = (0..n).collect();
        // a linear extension: fewer elements below first
        order.sort_by_key(|&x| ((0..n).filter(|&y| self.leq(y, x)).count(), x));
        let covers: Vec<Vec<usize>> =
            (0..n).map(|x| (0..n).filter(|&y| self.covers(x, y)).collect()).collect();
        let mut lo = vec![None; n * n];
        let mut hi = vec![None; n * n];
        // covers of x are settled before x
        for &x in order.iter().rev() {
            lo[x * n + x] = Some(0);
            hi[x * n + x] = Some(0);
            for &z in order.iter().filter(|&&z| z != x && self.leq(x, z)) {
                // z is reached through some cover y of x with y <= z
                let mut best_lo: Option<usize> = None;
                let mut best_hi: Option<usize> = None;
                for &y in &covers[x] {
                    if !self.leq(y, z) {
                        continue;
                    }
                    let (l, h) = chain_from(&lo, &hi, n, y, z);
                    best_lo = Some(best_lo.map_or(l + 1, |b: usize| b.min(l + 1)));
                    best_hi = Some(best_hi.map_or(h + 1, |b: usize| b.max(h + 1)));
                }
                lo[x * n + z] = best_lo;
                hi[x * n + z] = best_hi;
            }
        }
        (lo, hi)
    }

    /// The elements of `elems` (ascending) as a lattice of their own; the
    /// subset must be closed under join and meet.
    fn restrict(&self, elems: &[usize]) -> FiniteLattice {
        let k = elems.len();
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let leq = (0..k * k).map(|p| self.leq(elems[p / k], elems[p % k])).collect();
        let join = (0..k * k).map(|p| index[self.join(elems[p / k], elems[p % k])]).collect();
        let meet = (0..k * k).map(|p| index[self.meet(elems[p / k], elems[p % k])]).collect();
        let bottom = (0..k).find(|&i| (0..k).all(|j| self.leq(elems[i], elems[j]))).unwrap();
        let top = (0..k).find(|&i| (0..k).all(|j| self.leq(elems[j], elems[i]))).unwrap();
        FiniteLattice::assemble(k, leq, join, meet, bottom, top)
    }

    /// The principal ideal `s` as a lattice, with its inclusion. `s` must be
    /// downward closed and closed under joins.
    pub fn ideal(self: &Arc<Self>, s: Mask) -> Result<LatticeMorphism> {
        if !(self.is_downward_closed(s) && self.is_join_closed(s)) {
            return Err(Error::NotSubmodule(format!("{s} is not a downward-closed sub-lattice")));
        }
        let elems: Vec<usize> = s.iter().collect();
        let sub = Arc::new(self.restrict(&elems));
        Ok(Morphism::new_unchecked(sub, self.clone(), elems))
    }
}

fn chain_from(lo: &[Option<usize>], hi: &[Option<usize>], n: usize, y: usize, z: usize) -> (usize, usize) {
    (lo[y * n + z].unwrap(), hi[y * n + z].unwrap())
}

impl Structure for FiniteLattice {
    fn len(&self) -> usize {
        self.size
    }

    fn zero(&self) -> usize {
        self.bottom
    }

    fn sum(&self, a: usize, b: usize) -> Mask {
        Mask::singleton(self.join(a, b))
    }

    fn scalar_count(&self) -> usize {
        2
    }

    fn act(&self, r: usize, x: usize) -> usize {
        if r == 0 {
            self.bottom
        } else {
            x
        }
    }
}

/// Injective with downward-closed image.
pub fn is_normal_mono(f: &LatticeMorphism) -> bool {
    f.is_injective() && f.target().is_downward_closed(f.image())
}

/// With `x0` the join of everything sent to the bottom, `f` is joining with
/// `x0` followed by an isomorphism `[x0, top] ≅ target`.
pub fn is_normal_epi(f: &LatticeMorphism) -> bool {
    let src = f.source();
    let x0 = src.join_all(f.kernel());
    let up = src.up_set(x0);
    up.len() == f.target().size() && f.image_of(up).len() == up.len()
}

pub fn classify_lattice_morphism(f: &LatticeMorphism) -> MorphismClass {
    MorphismClass::from_flags(is_normal_mono(f), is_normal_epi(f))
}

/// `L/K = {x : x ≥ 1_K}` with the projection `x ↦ x ∨ 1_K`.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub quotient: Arc<FiniteLattice>,
    pub projection: LatticeMorphism,
    /// `1_K`, the top of the ideal.
    pub kernel_top: usize,
}

pub fn quotient_lattice(l: &Arc<FiniteLattice>, k: Mask) -> Result<LatticeQuotient> {
    if !(l.is_downward_closed(k) && l.is_join_closed(k)) {
        return Err(Error::NotAdmissible(format!("{k} is not a downward-closed sub-lattice")));
    }
    let kernel_top = l.join_all(k);
    let elems: Vec<usize> = l.up_set(kernel_top).iter().collect();
    let quotient = Arc::new(l.restrict(&elems));
    let mut index = vec![usize::MAX; l.size];
    for (i, &x) in elems.iter().enumerate() {
        index[x] = i;
    }
    let map = (0..l.size).map(|x| index[l.join(x, kernel_top)]).collect();
    let projection = Morphism::new_unchecked(l.clone(), quotient.clone(), map);
    Ok(LatticeQuotient { quotient, projection, kernel_top })
}

/// Join-preserving maps sending bottom to bottom, in lexicographic order.
pub fn enumerate_lattice_homs(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> Vec<LatticeMorphism> {
    HomSearch::homs(&**a, &**b, SumRule::Contained)
        .all()
        .into_iter()
        .map(|map| Morphism::new_unchecked(a.clone(), b.clone(), map))
        .collect()
}

pub fn find_lattice_isomorphism(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> Option<LatticeMorphism> {
    HomSearch::isos(&**a, &**b).first().map(|map| Morphism::new_unchecked(a.clone(), b.clone(), map))
}

/// The lattice of saturated submodules of a `B`-module, with the submodule
/// behind every lattice element.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    pub lattice: Arc<FiniteLattice>,
    /// Saturated submodules in increasing bitmask order; element `i` of the
    /// lattice is `elements[i]`.
    pub elements: Vec<Mask>,
}

fn require_boolean(ring: &SemiringTable) -> Result<()> {
    if *ring == boolean() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("base semiring must be B".into()))
    }
}

/// `S(M)`: saturated submodules ordered by inclusion. Meet is intersection
/// and join is the saturation of the union.
pub fn saturated_submodule_lattice(m: &FiniteModule) -> Result<SubmoduleLattice> {
    require_boolean(m.ring())?;
    let elements = enumerate_submodules(m, true);
    let k = elements.len();
    let leq = (0..k * k).map(|p| elements[p / k].is_subset(elements[p % k])).collect();
    let lattice = Arc::new(lattice_from_poset(k, leq)?);
    debug_assert!((0..k).all(|a| (0..k).all(|b| {
        elements[lattice.join(a, b)] == saturation_closure(m, elements[a].union(elements[b]))
    })));
    Ok(SubmoduleLattice { lattice, elements })
}

/// `S(f)`: a saturated submodule `L` goes to the saturation of `f(L)`.
pub fn s_on_morphism(f: &ModuleMorphism) -> Result<LatticeMorphism> {
    let src = saturated_submodule_lattice(f.source())?;
    let tgt = saturated_submodule_lattice(f.target())?;
    let map = src
        .elements
        .iter()
        .map(|&l| {
            let image = saturation_closure(f.target(), f.image_of(l));
            tgt.elements.binary_search(&image).expect("saturation is a saturated submodule")
        })
        .collect();
    Morphism::new(src.lattice, tgt.lattice, map)
}

/// The `B`-module on the elements of a lattice: addition is join, zero is the
/// bottom (relabelled to index 0, other elements keep their order).
pub fn compact_elements_module(l: &FiniteLattice) -> FiniteModule {
    let n = l.size;
    let order: Vec<usize> = std::iter::once(l.bottom).chain((0..n).filter(|&x| x != l.bottom)).collect();
    let mut index = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        index[x] = i;
    }
    let add = (0..n * n).map(|p| index[l.join(order[p / n], order[p % n])]).collect();
    let act = (0..2 * n).map(|p| if p < n { 0 } else { p - n }).collect();
    FiniteModule::from_tables(Arc::new(boolean()), n, add, act).expect("join tables are well formed")
}

/// The lattice of an idempotent module under `x ≤ y ⇔ x + y = y`.
pub fn module_order_lattice(m: &FiniteModule) -> Result<FiniteLattice> {
    FiniteLattice::from_join(m.size(), m.add_table().to_vec())
}

/// Outcome of [`is_geometric`], with the first failing pair or element for
/// each failed condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricReport {
    pub jordan_dedekind: bool,
    pub semimodular: bool,
    pub atomistic: bool,
    pub geometric: bool,
    /// Interval `[x, y]` with maximal chains of different lengths.
    pub jordan_dedekind_witness: Option<(usize, usize)>,
    /// Pair violating `h(x) + h(y) ≥ h(x ∨ y) + h(x ∧ y)`, or the covering
    /// condition when there is no height function.
    pub semimodular_witness: Option<(usize, usize)>,
    /// Element that is not the join of the atoms below it.
    pub atomistic_witness: Option<usize>,
}

pub fn is_geometric(l: &FiniteLattice) -> GeometricReport {
    let n = l.size;
    let (lo, hi) = l.chain_lengths();
    let jd_witness = (0..n * n).find(|&p| lo[p] != hi[p]).map(|p| (p / n, p % n));
    let semimodular_witness = match &l.height {
        Some(h) => (0..n * n)
            .map(|p| (p / n, p % n))
            .find(|&(x, y)| h[x] + h[y] < h[l.join(x, y)] + h[l.meet(x, y)]),
        None => (0..n * n)
            .map(|p| (p / n, p % n))
            .find(|&(x, y)| l.covers(l.meet(x, y), x) && !l.covers(y, l.join(x, y))),
    };
    let atoms = l.atoms();
    let atomistic_witness = (0..n).find(|&x| l.join_all(atoms.intersection(l.down_set(x))) != x);
    let jordan_dedekind = jd_witness.is_none();
    let semimodular = semimodular_witness.is_none();
    let atomistic = atomistic_witness.is_none();
    GeometricReport {
        jordan_dedekind,
        semimodular,
        atomistic,
        geometric: jordan_dedekind && semimodular && atomistic,
        jordan_dedekind_witness: jd_witness,
        semimodular_witness,
        atomistic_witness,
    }
}
