//! Finite modules over finite hyperrings: strictness, congruence quotients,
//! submodules and products.
//!
//! Submodules always carry the hyperaddition of the ambient module restricted
//! to them. Sub-hypergroups whose own sums are strictly smaller than the
//! ambient ones are not represented.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::morphism::{Morphism, MorphismClass};
use crate::report::{run_laws, AxiomReport, Law};
use crate::search::{sum_violation, HomSearch, Structure, SumRule};
use crate::smod::{closed_sets, number_classes};
use crate::tables::{check_hyper_table, check_table, hypergroup_laws, sum_sets, HyperTable};

/// A finite module over a [`HyperTable`] hyperring. Element `0` is the zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HModule {
    ring: Arc<HyperTable>,
    size: usize,
    add: Vec<Mask>,
    /// `act[r * size + x]` is `r · x`.
    act: Vec<usize>,
}

pub type HMorphism = Morphism<HModule>;

impl HModule {
    /// Structural validation only; see [`check_hmodule_axioms`].
    pub fn from_tables(ring: Arc<HyperTable>, size: usize, add: Vec<Mask>, act: Vec<usize>) -> Result<Self> {
        if !ring.has_mul() {
            return Err(Error::malformed("base of a hypermodule needs a multiplication"));
        }
        if size == 0 {
            return Err(Error::malformed("hypermodule must have at least one element"));
        }
        if size > crate::MAX_ELEMENTS {
            return Err(Error::TooLarge { what: "hypermodule".into(), size, limit: crate::MAX_ELEMENTS });
        }
        check_hyper_table("hyperadd", &add, size)?;
        check_table("act", &act, ring.size(), size, size)?;
        Ok(HModule { ring, size, add, act })
    }

    pub fn validated(ring: Arc<HyperTable>, size: usize, add: Vec<Mask>, act: Vec<usize>) -> Result<Self> {
        let m = Self::from_tables(ring, size, add, act)?;
        let report = check_hmodule_axioms(&m);
        if report.is_valid() {
            Ok(m)
        } else {
            Err(Error::axioms("hypermodule", report))
        }
    }

    /// The hyperring as a module over itself.
    pub fn regular(ring: Arc<HyperTable>) -> Result<Self> {
        let size = ring.size();
        let add = ring.hyperadd_table().to_vec();
        let act = ring.mul_table().to_vec();
        Self::from_tables(ring, size, add, act)
    }

    pub fn zero_module(ring: Arc<HyperTable>) -> Self {
        let act = vec![0; ring.size()];
        HModule { ring, size: 1, add: vec![Mask::singleton(0)], act }
    }

    pub fn ring(&self) -> &Arc<HyperTable> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> Mask {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.size + x]
    }

    pub fn add_table(&self) -> &[Mask] {
        &self.add
    }

    pub fn act_table(&self) -> &[usize] {
        &self.act
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.size)
    }

    pub fn sum_sets(&self, a: Mask, b: Mask) -> Mask {
        sum_sets(|x, y| self.sum(x, y), a, b)
    }

    /// Contains 0 and is closed under the action and the hyperaddition.
    pub fn is_submodule(&self, s: Mask) -> bool {
        s.contains(0) && s.is_subset(self.all()) && self.generate(s) == s
    }

    /// Smallest submodule containing `s`.
    pub fn generate(&self, s: Mask) -> Mask {
        let mut n = s.with(0);
        let mut queue: Vec<usize> = n.iter().collect();
        while let Some(x) = queue.pop() {
            let mut found: Mask = (0..self.ring.size()).map(|r| self.act(r, x)).collect();
            for y in n {
                found = found.union(self.sum(x, y));
            }
            for z in found.difference(n) {
                n.insert(z);
                queue.push(z);
            }
        }
        n
    }

    /// The submodule `s` with the restricted hyperaddition, and its
    /// inclusion.
    pub fn submodule(self: &Arc<Self>, s: Mask) -> Result<HMorphism> {
        if !self.is_submodule(s) {
            return Err(Error::NotSubmodule(format!("{s} is not closed")));
        }
        let elems: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let k = elems.len();
        let add = (0..k * k).map(|p| self.sum(elems[p / k], elems[p % k]).map(&index)).collect();
        let act = (0..self.ring.size() * k).map(|p| index[self.act(p / k, elems[p % k])]).collect();
        let sub = Arc::new(HModule { ring: self.ring.clone(), size: k, add, act });
        Ok(Morphism::new_unchecked(sub, self.clone(), elems))
    }
}

impl Structure for HModule {
    fn len(&self) -> usize {
        self.size
    }

    fn sum(&self, a: usize, b: usize) -> Mask {
        HModule::sum(self, a, b)
    }

    fn scalar_count(&self) -> usize {
        self.ring.size()
    }

    fn act(&self, r: usize, x: usize) -> usize {
        HModule::act(self, r, x)
    }
}

fn hmodule_laws(m: &HModule) -> Vec<Law<'_>> {
    let n = m.size;
    let ring = &*m.ring;
    let elems: Vec<usize> = (0..n).collect();
    let scalars: Vec<usize> = (0..ring.size()).collect();
    let mut laws = hypergroup_laws(n, move |a, b| m.sum(a, b));
    laws.extend([
        Law::new("unit action", vec![vec![ring.one()], elems.clone()], move |x| m.act(x[0], x[1]) == x[1]),
        Law::new("zero action", vec![vec![0], elems.clone()], move |x| m.act(x[0], x[1]) == 0),
        Law::new("action on zero", vec![scalars.clone(), vec![0]], move |x| m.act(x[0], x[1]) == 0),
        Law::new("action associativity", vec![scalars.clone(), scalars.clone(), elems.clone()], move |x| {
            m.act(ring.mul(x[0], x[1]), x[2]) == m.act(x[0], m.act(x[1], x[2]))
        }),
        Law::new("distributivity over module addition", vec![scalars.clone(), elems.clone(), elems.clone()], move |x| {
            let left: Mask = m.sum(x[1], x[2]).iter().map(|z| m.act(x[0], z)).collect();
            left == m.sum(m.act(x[0], x[1]), m.act(x[0], x[2]))
        }),
        Law::new("distributivity over scalar addition", vec![scalars.clone(), scalars, elems], move |x| {
            let left: Mask = ring.sum(x[0], x[1]).iter().map(|r| m.act(r, x[2])).collect();
            left == m.sum(m.act(x[0], x[2]), m.act(x[1], x[2]))
        }),
    ]);
    laws
}

/// Exhaustive check of the hypergroup laws and the four module laws, with
/// sums compared as sets.
pub fn check_hmodule_axioms(m: &HModule) -> AxiomReport {
    run_laws(&hmodule_laws(m))
}

/// First pair `(a, b)` with `f(a + b) ≠ f(a) + f(b)`.
pub fn strict_violation(f: &HMorphism) -> Option<(usize, usize)> {
    sum_violation(&**f.source(), &**f.target(), f.map(), SumRule::Equal)
}

/// `f(a + b) = f(a) + f(b)` for every pair.
pub fn is_strict(f: &HMorphism) -> bool {
    strict_violation(f).is_none()
}

/// Strict injections are the admissible monos, strict surjections the
/// admissible epis.
pub fn classify_h_morphism(f: &HMorphism) -> MorphismClass {
    let strict = is_strict(f);
    MorphismClass::from_flags(strict && f.is_injective(), strict && f.is_surjective())
}

/// A quotient `B/A` with its strict surjective projection.
#[derive(Clone, Debug)]
pub struct HQuotientResult {
    pub quotient: Arc<HModule>,
    pub projection: HMorphism,
    pub class_of: Vec<usize>,
}

/// `B/A` under `b₁ ~ b₂ ⇔ b₁ + A = b₂ + A`, with `[x] + [y]` the classes of
/// all `z ∈ x' + y'` over representatives `x' ∈ [x]`, `y' ∈ [y]`.
pub fn quotient_hmodule(b: &Arc<HModule>, a: Mask) -> Result<HQuotientResult> {
    if !b.is_submodule(a) {
        return Err(Error::NotSubmodule(format!("{a} is not a submodule")));
    }
    let cosets: Vec<Mask> = (0..b.size).map(|x| b.sum_sets(Mask::singleton(x), a)).collect();
    let class_of = number_classes(b.size, |x, y| cosets[x] == cosets[y]);
    let k = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut members = vec![Mask::EMPTY; k];
    for x in 0..b.size {
        members[class_of[x]].insert(x);
    }
    let mut add = Vec::with_capacity(k * k);
    for cx in 0..k {
        for cy in 0..k {
            add.push(b.sum_sets(members[cx], members[cy]).map(&class_of));
        }
    }
    let mut act = Vec::with_capacity(b.ring.size() * k);
    for r in 0..b.ring.size() {
        for c in 0..k {
            let image = members[c].iter().map(|x| b.act(r, x)).collect::<Mask>().map(&class_of);
            match image.single() {
                Some(v) => act.push(v),
                None => return Err(Error::NotSubmodule(format!("action of {r} is not well defined on the classes of {a}"))),
            }
        }
    }
    let quotient = Arc::new(HModule::validated(b.ring.clone(), k, add, act)?);
    let projection = Morphism::new_unchecked(b.clone(), quotient.clone(), class_of.clone());
    Ok(HQuotientResult { quotient, projection, class_of })
}

/// All submodules, sorted by bitmask.
pub fn enumerate_hsubmodules(m: &HModule) -> Vec<Mask> {
    closed_sets(m.size, m.generate(Mask::EMPTY), |s| m.generate(s))
}

fn same_ring(m: &HModule, n: &HModule) -> Result<()> {
    if Arc::ptr_eq(&m.ring, &n.ring) || m.ring == n.ring {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Every morphism `f(a + b) ⊆ f(a) + f(b)`, lexicographically ordered.
pub fn enumerate_h_homs(m: &Arc<HModule>, n: &Arc<HModule>) -> Result<Vec<HMorphism>> {
    same_ring(m, n)?;
    Ok(HomSearch::homs(&**m, &**n, SumRule::Contained)
        .all()
        .into_iter()
        .map(|map| Morphism::new_unchecked(m.clone(), n.clone(), map))
        .collect())
}

/// Every strict morphism, lexicographically ordered.
pub fn enumerate_strict_homs(m: &Arc<HModule>, n: &Arc<HModule>) -> Result<Vec<HMorphism>> {
    same_ring(m, n)?;
    Ok(HomSearch::homs(&**m, &**n, SumRule::Equal)
        .all()
        .into_iter()
        .map(|map| Morphism::new_unchecked(m.clone(), n.clone(), map))
        .collect())
}

/// A strict bijection, if one exists.
pub fn find_h_isomorphism(m: &Arc<HModule>, n: &Arc<HModule>) -> Option<HMorphism> {
    same_ring(m, n).ok()?;
    HomSearch::isos(&**m, &**n).first().map(|map| Morphism::new_unchecked(m.clone(), n.clone(), map))
}

/// Componentwise tables of `M × N`, `(a, b)` at index `a * |N| + b`, without
/// any axiom check.
pub fn product_tables(m: &HModule, n: &HModule) -> Result<HModule> {
    same_ring(m, n)?;
    let (p, q) = (m.size, n.size);
    let size = p * q;
    if size > crate::MAX_ELEMENTS {
        return Err(Error::TooLarge { what: "direct product".into(), size, limit: crate::MAX_ELEMENTS });
    }
    let mut add = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            let mut s = Mask::EMPTY;
            for u in m.sum(x / q, y / q) {
                for v in n.sum(x % q, y % q) {
                    s.insert(u * q + v);
                }
            }
            add.push(s);
        }
    }
    let mut act = Vec::with_capacity(m.ring.size() * size);
    for r in 0..m.ring.size() {
        for x in 0..size {
            act.push(m.act(r, x / q) * q + n.act(r, x % q));
        }
    }
    HModule::from_tables(m.ring.clone(), size, add, act)
}

/// `M × N`, validated. Componentwise hyperaddition does not always give a
/// module: over `K`, `(1,1) + (1,1)` is all of `K × K` while
/// `(1 + 1)·(1,1) = {0, (1,1)}`.
pub fn direct_product_h(m: &HModule, n: &HModule) -> Result<HModule> {
    let p = product_tables(m, n)?;
    let report = check_hmodule_axioms(&p);
    if report.is_valid() {
        Ok(p)
    } else {
        Err(Error::axioms("direct product", report))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::en_module;
    use crate::report::refails;
    use crate::tables::{krasner, RingTable};

    fn k() -> Arc<HyperTable> {
        Arc::new(krasner())
    }

    fn kk() -> Arc<HModule> {
        Arc::new(HModule::regular(k()).unwrap())
    }

    #[test]
    fn regular_and_en_are_valid() {
        assert!(check_hmodule_axioms(&kk()).is_valid());
        assert!(check_hmodule_axioms(&en_module(4).unwrap()).is_valid());
    }

    #[test]
    fn strictness_examples() {
        let e4 = Arc::new(en_module(4).unwrap());
        assert!(is_strict(&Morphism::identity(e4.clone())));
        let incl = e4.submodule(Mask::from_elements([0, 1])).unwrap();
        assert!(is_strict(&incl));
        assert_eq!(classify_h_morphism(&incl), MorphismClass::AdmissibleMono);
        // collapsing every point of E_4 onto the point of K
        let f = Morphism::new(e4.clone(), kk(), vec![0, 1, 1, 1, 1]).unwrap();
        assert_eq!(strict_violation(&f), Some((1, 2)));
        assert_eq!(classify_h_morphism(&f), MorphismClass::Neither);
    }

    #[test]
    fn k_times_k_is_not_a_module() {
        let err = direct_product_h(&kk(), &kk()).unwrap_err();
        match err {
            Error::Axioms { report, .. } => {
                let v = report.violation("distributivity over scalar addition").unwrap();
                assert_eq!(v.witness, vec![1, 1, 3]);
                let p = product_tables(&kk(), &kk()).unwrap();
                assert!(refails(&hmodule_laws(&p), v));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn products_over_a_field_as_hyperring() {
        let f3 = Arc::new(RingTable::prime_field(3).unwrap().as_hyper());
        let m = HModule::regular(f3.clone()).unwrap();
        let p = direct_product_h(&m, &m).unwrap();
        assert_eq!(p.size(), 9);
        let z = HModule::zero_module(f3);
        let mz = Arc::new(direct_product_h(&m, &z).unwrap());
        assert!(find_h_isomorphism(&mz, &Arc::new(m)).is_some());
    }

    #[test]
    fn quotient_examples() {
        let e4 = Arc::new(en_module(4).unwrap());
        let q = quotient_hmodule(&e4, Mask::from_elements([0, 1])).unwrap();
        assert_eq!(q.class_of, vec![0, 0, 1, 1, 1]);
        assert_eq!(*q.quotient, *kk());
        assert!(is_strict(&q.projection) && q.projection.is_surjective());
        let same = quotient_hmodule(&e4, Mask::singleton(0)).unwrap();
        assert_eq!(*same.quotient, *e4);
        assert!(quotient_hmodule(&e4, Mask::from_elements([0, 1, 2])).is_err());
    }

    #[test]
    fn submodule_enumeration() {
        let e4 = en_module(4).unwrap();
        let subs = enumerate_hsubmodules(&e4);
        assert_eq!(subs.len(), 6);
        let brute: Vec<Mask> = (0u64..32).map(Mask).filter(|&s| e4.is_submodule(s)).collect();
        assert_eq!(subs, brute);
        assert_eq!(enumerate_hsubmodules(&kk()).len(), 2);
        assert_eq!(enumerate_hsubmodules(&HModule::zero_module(k())).len(), 1);
    }

    #[test]
    fn hom_enumeration() {
        assert_eq!(enumerate_strict_homs(&kk(), &kk()).unwrap().len(), 2);
        let e4 = Arc::new(en_module(4).unwrap());
        let e5 = Arc::new(en_module(5).unwrap());
        let auts = HomSearch::isos(&*e4, &*e4).all();
        assert_eq!(auts.len(), 24);
        assert_eq!(find_h_isomorphism(&e4, &e4).unwrap().map(), &[0, 1, 2, 3, 4]);
        assert!(find_h_isomorphism(&e4, &e5).is_none());
        // non-strict homs include the collapse onto K
        let homs = enumerate_h_homs(&e4, &kk()).unwrap();
        assert!(homs.iter().any(|f| f.map() == [0, 1, 1, 1, 1]));
        assert!(homs.len() > enumerate_strict_homs(&e4, &kk()).unwrap().len());
    }
}
