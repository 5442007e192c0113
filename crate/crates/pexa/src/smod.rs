//! Finite modules over finite semirings: submodules, saturation, congruence
//! quotients, admissible morphisms and bi-Cartesian completion.
//!
//! Element `0` of every module is its zero.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::morphism::{Morphism, MorphismClass};
use crate::report::{run_laws, AxiomReport, Law};
use crate::search::{HomSearch, Structure, SumRule};
use crate::tables::{check_table, SemiringTable};

/// A finite module over a [`SemiringTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteModule {
    ring: Arc<SemiringTable>,
    size: usize,
    add: Vec<usize>,
    /// `act[r * size + x]` is `r · x`.
    act: Vec<usize>,
}

pub type ModuleMorphism = Morphism<FiniteModule>;

impl FiniteModule {
    /// Structural validation only; see [`check_module_axioms`].
    pub fn from_tables(ring: Arc<SemiringTable>, size: usize, add: Vec<usize>, act: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::malformed("module must have at least one element"));
        }
        if size > crate::MAX_ELEMENTS {
            return Err(Error::TooLarge { what: "module".into(), size, limit: crate::MAX_ELEMENTS });
        }
        check_table("add", &add, size, size, size)?;
        check_table("act", &act, ring.size(), size, size)?;
        Ok(FiniteModule { ring, size, add, act })
    }

    pub fn validated(ring: Arc<SemiringTable>, size: usize, add: Vec<usize>, act: Vec<usize>) -> Result<Self> {
        let m = Self::from_tables(ring, size, add, act)?;
        let report = check_module_axioms(&m);
        if report.is_valid() {
            Ok(m)
        } else {
            Err(Error::axioms("module", report))
        }
    }

    /// The semiring as a module over itself.
    pub fn regular(ring: Arc<SemiringTable>) -> Self {
        let size = ring.size();
        let add = ring.add_table().to_vec();
        let act = ring.mul_table().to_vec();
        FiniteModule { ring, size, add, act }
    }

    pub fn zero_module(ring: Arc<SemiringTable>) -> Self {
        let act = vec![0; ring.size()];
        FiniteModule { ring, size: 1, add: vec![0], act }
    }

    /// `R^k` with coordinates in row-major order (first coordinate slowest).
    pub fn free(ring: Arc<SemiringTable>, k: usize) -> Result<Self> {
        let mut m = Self::zero_module(ring.clone());
        for _ in 0..k {
            m = direct_product(&m, &Self::regular(ring.clone()))?;
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.size + x]
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn act_table(&self) -> &[usize] {
        &self.act
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.size)
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|a| self.add(a, a) == a)
    }

    /// The canonical preorder `x ≤ y ⇔ x + y = y` (a partial order over an
    /// idempotent base).
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.add(x, y) == y
    }

    pub fn is_submodule(&self, n: Mask) -> bool {
        n.contains(0) && n.is_subset(self.all()) && self.generate(n) == n
    }

    /// `x + y ∈ N` and `y ∈ N` imply `x ∈ N`.
    pub fn is_saturated(&self, n: Mask) -> bool {
        self.is_submodule(n) && saturation_closure(self, n) == n
    }

    /// Smallest submodule containing `s`.
    pub fn generate(&self, s: Mask) -> Mask {
        let mut n = s.with(0);
        let mut queue: Vec<usize> = n.iter().collect();
        while let Some(x) = queue.pop() {
            let mut found = Vec::new();
            for r in 0..self.ring.size() {
                found.push(self.act(r, x));
            }
            for y in n {
                found.push(self.add(x, y));
            }
            for z in found {
                if !n.contains(z) {
                    n.insert(z);
                    queue.push(z);
                }
            }
        }
        n
    }

    /// The submodule `n` as a module of its own, with the inclusion. Elements
    /// keep their relative order.
    pub fn submodule(self: &Arc<Self>, n: Mask) -> Result<ModuleMorphism> {
        if !self.is_submodule(n) {
            return Err(Error::NotSubmodule(format!("{n} is not closed")));
        }
        let elems: Vec<usize> = n.iter().collect();
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let k = elems.len();
        let add = (0..k * k).map(|p| index[self.add(elems[p / k], elems[p % k])]).collect();
        let act = (0..self.ring.size() * k).map(|p| index[self.act(p / k, elems[p % k])]).collect();
        let sub = Arc::new(FiniteModule { ring: self.ring.clone(), size: k, add, act });
        Ok(Morphism::new_unchecked(sub, self.clone(), elems))
    }
}

impl Structure for FiniteModule {
    fn len(&self) -> usize {
        self.size
    }

    fn sum(&self, a: usize, b: usize) -> Mask {
        Mask::singleton(self.add(a, b))
    }

    fn scalar_count(&self) -> usize {
        self.ring.size()
    }

    fn act(&self, r: usize, x: usize) -> usize {
        FiniteModule::act(self, r, x)
    }
}

fn module_laws(m: &FiniteModule) -> Vec<Law<'_>> {
    let n = m.size;
    let r = m.ring.size();
    let ring = &*m.ring;
    let elems: Vec<usize> = (0..n).collect();
    let scalars: Vec<usize> = (0..r).collect();
    vec![
        Law::over("additive commutativity", n, 2, move |x| m.add(x[0], x[1]) == m.add(x[1], x[0])),
        Law::over("additive associativity", n, 3, move |x| {
            m.add(m.add(x[0], x[1]), x[2]) == m.add(x[0], m.add(x[1], x[2]))
        }),
        Law::new("additive identity", vec![elems.clone(), vec![0]], move |x| m.add(x[0], x[1]) == x[0]),
        Law::new("unit action", vec![vec![ring.one()], elems.clone()], move |x| m.act(x[0], x[1]) == x[1]),
        Law::new("zero action", vec![vec![0], elems.clone()], move |x| m.act(x[0], x[1]) == 0),
        Law::new("action on zero", vec![scalars.clone(), vec![0]], move |x| m.act(x[0], x[1]) == 0),
        Law::new("action associativity", vec![scalars.clone(), scalars.clone(), elems.clone()], move |x| {
            m.act(ring.mul(x[0], x[1]), x[2]) == m.act(x[0], m.act(x[1], x[2]))
        }),
        Law::new("distributivity over module addition", vec![scalars.clone(), elems.clone(), elems.clone()], move |x| {
            m.act(x[0], m.add(x[1], x[2])) == m.add(m.act(x[0], x[1]), m.act(x[0], x[2]))
        }),
        Law::new("distributivity over scalar addition", vec![scalars.clone(), scalars, elems], move |x| {
            m.act(ring.add(x[0], x[1]), x[2]) == m.add(m.act(x[0], x[2]), m.act(x[1], x[2]))
        }),
    ]
}

/// Exhaustive check of the module axioms over the module's base semiring.
pub fn check_module_axioms(m: &FiniteModule) -> AxiomReport {
    run_laws(&module_laws(m))
}

/// Smallest saturated submodule containing `s`: the submodule `N` generated
/// by `s`, followed by the single pass `{x : x + a = b for some a, b ∈ N}`.
pub fn saturation_closure(m: &FiniteModule, s: Mask) -> Mask {
    let n = m.generate(s.intersection(m.all()));
    let mut out = Mask::EMPTY;
    for x in 0..m.size {
        if n.iter().any(|a| n.contains(m.add(x, a))) {
            out.insert(x);
        }
    }
    out
}

/// All submodules (or only the saturated ones), sorted by bitmask.
///
/// Small modules are searched over all subsets; from 13 elements on, the
/// closed sets are reached by repeatedly adding one element and closing.
pub fn enumerate_submodules(m: &FiniteModule, saturated_only: bool) -> Vec<Mask> {
    if m.size <= 12 {
        enumerate_submodules_by_subsets(m, saturated_only)
    } else {
        enumerate_submodules_by_closure(m, saturated_only)
    }
}

pub(crate) fn enumerate_submodules_by_subsets(m: &FiniteModule, saturated_only: bool) -> Vec<Mask> {
    let rest = m.size - 1;
    (0u64..1 << rest)
        .map(|bits| Mask(bits << 1 | 1))
        .filter(|&s| if saturated_only { m.is_saturated(s) } else { m.is_submodule(s) })
        .collect()
}

pub(crate) fn enumerate_submodules_by_closure(m: &FiniteModule, saturated_only: bool) -> Vec<Mask> {
    let close = |s: Mask| if saturated_only { saturation_closure(m, s) } else { m.generate(s) };
    closed_sets(m.size, close(Mask::singleton(0)), close)
}

/// Every set reachable from `start` by "add one element, then close".
pub(crate) fn closed_sets(size: usize, start: Mask, close: impl Fn(Mask) -> Mask) -> Vec<Mask> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for x in Mask::full(size).difference(s) {
            let t = close(s.with(x));
            if seen.insert(t) {
                queue.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// A congruence quotient with its projection.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub quotient: Arc<FiniteModule>,
    pub projection: ModuleMorphism,
    /// Class index of every source element.
    pub class_of: Vec<usize>,
}

/// Classes numbered by their smallest member.
pub(crate) fn number_classes(size: usize, mut same: impl FnMut(usize, usize) -> bool) -> Vec<usize> {
    let mut class_of = vec![usize::MAX; size];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..size {
        if let Some(c) = reps.iter().position(|&r| same(r, x)) {
            class_of[x] = c;
        } else {
            class_of[x] = reps.len();
            reps.push(x);
        }
    }
    class_of
}

/// `M/N` by the congruence `x ~ y ⇔ x + n = y + n'` for some `n, n' ∈ N`.
pub fn quotient_module(m: &Arc<FiniteModule>, n: Mask) -> Result<QuotientResult> {
    if !m.is_submodule(n) {
        return Err(Error::NotSubmodule(format!("{n} is not a submodule")));
    }
    let cosets: Vec<Mask> = (0..m.size).map(|x| n.iter().map(|a| m.add(x, a)).collect()).collect();
    // The relation "cosets meet" is already transitive because N is closed
    // under addition.
    let class_of = number_classes(m.size, |x, y| !cosets[x].intersection(cosets[y]).is_empty());
    Ok(build_quotient(m, class_of))
}

fn build_quotient(m: &Arc<FiniteModule>, class_of: Vec<usize>) -> QuotientResult {
    let k = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut rep = vec![usize::MAX; k];
    for x in (0..m.size).rev() {
        rep[class_of[x]] = x;
    }
    let add = (0..k * k).map(|p| class_of[m.add(rep[p / k], rep[p % k])]).collect();
    let act = (0..m.ring.size() * k).map(|p| class_of[m.act(p / k, rep[p % k])]).collect();
    let quotient = Arc::new(FiniteModule { ring: m.ring.clone(), size: k, add, act });
    let projection = Morphism::new_unchecked(m.clone(), quotient.clone(), class_of.clone());
    QuotientResult { quotient, projection, class_of }
}

/// Injective with saturated image.
pub fn is_admissible_mono(f: &ModuleMorphism) -> bool {
    f.is_injective() && f.target().is_saturated(f.image())
}

/// Surjective, and `f(x) = f(y)` only when `x` and `y` are congruent modulo
/// the kernel `f⁻¹(0)`.
pub fn is_admissible_epi(f: &ModuleMorphism) -> bool {
    if !f.is_surjective() {
        return false;
    }
    let m = f.source();
    let k = f.kernel();
    let cosets: Vec<Mask> = (0..m.size).map(|x| k.iter().map(|a| m.add(x, a)).collect()).collect();
    (0..m.size).all(|x| {
        (x + 1..m.size).all(|y| f.apply(x) != f.apply(y) || !cosets[x].intersection(cosets[y]).is_empty())
    })
}

pub fn classify_morphism(f: &ModuleMorphism) -> MorphismClass {
    MorphismClass::from_flags(is_admissible_mono(f), is_admissible_epi(f))
}

fn same_ring(m: &FiniteModule, n: &FiniteModule) -> Result<()> {
    if Arc::ptr_eq(&m.ring, &n.ring) || m.ring == n.ring {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Every morphism `m -> n`, ordered lexicographically by element table.
pub fn enumerate_homs(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>) -> Result<Vec<ModuleMorphism>> {
    same_ring(m, n)?;
    Ok(HomSearch::homs(&**m, &**n, SumRule::Contained)
        .all()
        .into_iter()
        .map(|map| Morphism::new_unchecked(m.clone(), n.clone(), map))
        .collect())
}

pub fn find_isomorphism(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>) -> Option<ModuleMorphism> {
    same_ring(m, n).ok()?;
    HomSearch::isos(&**m, &**n).first().map(|map| Morphism::new_unchecked(m.clone(), n.clone(), map))
}

/// Both sides of `M/π⁻¹(K) ≃ (M/N)/K` and the comparison map between them.
#[derive(Clone, Debug)]
pub struct ThirdIso {
    /// `M/N` with projection `π`.
    pub inner: QuotientResult,
    /// `π⁻¹(K)` as a subset of `M`.
    pub preimage: Mask,
    /// `M/π⁻¹(K)`.
    pub left: QuotientResult,
    /// `(M/N)/K`.
    pub right: QuotientResult,
    /// `[m] ↦ [π(m)]`, verified to be an isomorphism.
    pub iso: ModuleMorphism,
}

pub fn check_third_iso(m: &Arc<FiniteModule>, n: Mask, k: Mask) -> Result<ThirdIso> {
    if !m.is_saturated(n) {
        return Err(Error::NotSubmodule(format!("{n} is not saturated in M")));
    }
    let inner = quotient_module(m, n)?;
    if !inner.quotient.is_saturated(k) {
        return Err(Error::NotSubmodule(format!("{k} is not saturated in M/N")));
    }
    let preimage = inner.projection.preimage(k);
    let left = quotient_module(m, preimage)?;
    let right = quotient_module(&inner.quotient, k)?;
    let mut map = vec![usize::MAX; left.quotient.size];
    for x in 0..m.size {
        let c = left.class_of[x];
        let v = right.class_of[inner.class_of[x]];
        if map[c] != usize::MAX && map[c] != v {
            return Err(Error::NotMorphism(format!("comparison map is not well defined at {x}")));
        }
        map[c] = v;
    }
    let iso = Morphism::new(left.quotient.clone(), right.quotient.clone(), map)?;
    if classify_morphism(&iso) != MorphismClass::Iso {
        return Err(Error::NotMorphism("comparison map is not bijective".into()));
    }
    Ok(ThirdIso { inner, preimage, left, right, iso })
}

/// `M × N` with element `(a, b)` at index `a * |N| + b`.
pub fn direct_product(m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule> {
    same_ring(m, n)?;
    let (p, q) = (m.size, n.size);
    let size = p * q;
    if size > crate::MAX_ELEMENTS {
        return Err(Error::TooLarge { what: "direct product".into(), size, limit: crate::MAX_ELEMENTS });
    }
    let mut add = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            add.push(m.add(x / q, y / q) * q + n.add(x % q, y % q));
        }
    }
    let mut act = Vec::with_capacity(m.ring.size() * size);
    for r in 0..m.ring.size() {
        for x in 0..size {
            act.push(m.act(r, x / q) * q + n.act(r, x % q));
        }
    }
    Ok(FiniteModule { ring: m.ring.clone(), size, add, act })
}

/// Summary of a module for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub size: usize,
    pub idempotent: bool,
    pub submodules: usize,
    pub saturated_submodules: usize,
}

pub fn summarize(m: &FiniteModule) -> ModuleSummary {
    ModuleSummary {
        size: m.size,
        idempotent: m.is_idempotent(),
        submodules: enumerate_submodules(m, false).len(),
        saturated_submodules: enumerate_submodules(m, true).len(),
    }
}
