//! Category-generic exact sequences, extension classes, Hall numbers and a
//! bounded check of the proto-exact axioms.
//!
//! The three categories of the crate plug in through [`Category`]. Universal
//! properties can only be tested against finitely many objects, so pullbacks
//! and pushouts are checked against every cone or cocone whose apex lies in
//! a supplied finite set of objects.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate;
use crate::hmod::{self, HModule};
use crate::lattice::{self, FiniteLattice};
use crate::mask::Mask;
use crate::morphism::{Morphism, MorphismClass};
use crate::search::{HomSearch, Structure};
use crate::smod::{self, FiniteModule};
use crate::tables::{boolean, krasner, HyperTable, SemiringTable};

/// A category of finite objects with distinguished classes of monos and
/// epis.
pub trait Category: Sync {
    type Object: Structure + Clone + PartialEq + fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;

    fn zero_object(&self) -> Arc<Self::Object>;

    /// Every morphism `a -> b`, lexicographically ordered.
    fn homs(&self, a: &Arc<Self::Object>, b: &Arc<Self::Object>) -> Result<Vec<Morphism<Self::Object>>>;

    fn classify(&self, f: &Morphism<Self::Object>) -> MorphismClass;

    fn find_isomorphism(&self, a: &Arc<Self::Object>, b: &Arc<Self::Object>) -> Option<Morphism<Self::Object>>;

    /// Subsets that are images of admissible monos, sorted by bitmask.
    fn subobjects(&self, e: &Self::Object) -> Vec<Mask>;

    /// Inclusion of an admissible subobject.
    fn subobject(&self, e: &Arc<Self::Object>, s: Mask) -> Result<Morphism<Self::Object>>;

    /// Projection onto the quotient by an admissible subobject.
    fn quotient(&self, e: &Arc<Self::Object>, s: Mask) -> Result<Morphism<Self::Object>>;

    /// Every object with at most `max_size` elements, one per isomorphism
    /// class.
    fn generate(&self, max_size: usize) -> Result<Vec<Arc<Self::Object>>>;

    fn automorphisms(&self, a: &Arc<Self::Object>) -> Vec<Morphism<Self::Object>> {
        isomorphisms(a, a)
    }
}

/// Every isomorphism `a -> b` (bijections preserving sums exactly).
pub fn isomorphisms<O: Structure>(a: &Arc<O>, b: &Arc<O>) -> Vec<Morphism<O>> {
    HomSearch::isos(&**a, &**b)
        .all()
        .into_iter()
        .map(|m| Morphism::new_unchecked(a.clone(), b.clone(), m))
        .collect()
}

/// Modules over a fixed semiring; admissible monos and epis as in [`smod`].
#[derive(Clone, Debug)]
pub struct SemiringModules {
    pub ring: Arc<SemiringTable>,
}

impl SemiringModules {
    pub fn boolean() -> Self {
        SemiringModules { ring: Arc::new(boolean()) }
    }
}

impl Category for SemiringModules {
    type Object = FiniteModule;

    fn name(&self) -> &'static str {
        "semiring modules"
    }

    fn zero_object(&self) -> Arc<FiniteModule> {
        Arc::new(FiniteModule::zero_module(self.ring.clone()))
    }

    fn homs(&self, a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> Result<Vec<Morphism<FiniteModule>>> {
        smod::enumerate_homs(a, b)
    }

    fn classify(&self, f: &Morphism<FiniteModule>) -> MorphismClass {
        smod::classify_morphism(f)
    }

    fn find_isomorphism(&self, a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> Option<Morphism<FiniteModule>> {
        smod::find_isomorphism(a, b)
    }

    fn subobjects(&self, e: &FiniteModule) -> Vec<Mask> {
        smod::enumerate_submodules(e, true)
    }

    fn subobject(&self, e: &Arc<FiniteModule>, s: Mask) -> Result<Morphism<FiniteModule>> {
        if !e.is_saturated(s) {
            return Err(Error::NotAdmissible(format!("{s} is not a saturated submodule")));
        }
        e.submodule(s)
    }

    fn quotient(&self, e: &Arc<FiniteModule>, s: Mask) -> Result<Morphism<FiniteModule>> {
        Ok(smod::quotient_module(e, s)?.projection)
    }

    fn generate(&self, max_size: usize) -> Result<Vec<Arc<FiniteModule>>> {
        if *self.ring != boolean() {
            return Err(Error::Unsupported("module generation is only available over B".into()));
        }
        Ok(generate::bmodules(max_size)?.into_iter().map(Arc::new).collect())
    }
}

/// Finite lattices with join-preserving maps; normal monos and epis.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lattices;

impl Category for Lattices {
    type Object = FiniteLattice;

    fn name(&self) -> &'static str {
        "lattices"
    }

    fn zero_object(&self) -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain(1).unwrap())
    }

    fn homs(&self, a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> Result<Vec<Morphism<FiniteLattice>>> {
        Ok(lattice::enumerate_lattice_homs(a, b))
    }

    fn classify(&self, f: &Morphism<FiniteLattice>) -> MorphismClass {
        lattice::classify_lattice_morphism(f)
    }

    fn find_isomorphism(&self, a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> Option<Morphism<FiniteLattice>> {
        lattice::find_lattice_isomorphism(a, b)
    }

    /// Principal ideals.
    fn subobjects(&self, e: &FiniteLattice) -> Vec<Mask> {
        let mut out: Vec<Mask> = (0..e.size()).map(|x| e.down_set(x)).collect();
        out.sort_unstable();
        out
    }

    fn subobject(&self, e: &Arc<FiniteLattice>, s: Mask) -> Result<Morphism<FiniteLattice>> {
        e.ideal(s).map_err(|_| Error::NotAdmissible(format!("{s} is not a principal ideal")))
    }

    fn quotient(&self, e: &Arc<FiniteLattice>, s: Mask) -> Result<Morphism<FiniteLattice>> {
        Ok(lattice::quotient_lattice(e, s)?.projection)
    }

    fn generate(&self, max_size: usize) -> Result<Vec<Arc<FiniteLattice>>> {
        Ok(generate::lattices(max_size)?.into_iter().map(Arc::new).collect())
    }
}

/// Modules over a fixed hyperring with strict injections and surjections.
#[derive(Clone, Debug)]
pub struct HyperModules {
    pub ring: Arc<HyperTable>,
}

impl HyperModules {
    pub fn krasner() -> Self {
        HyperModules { ring: Arc::new(krasner()) }
    }
}

impl Category for HyperModules {
    type Object = HModule;

    fn name(&self) -> &'static str {
        "hypermodules"
    }

    fn zero_object(&self) -> Arc<HModule> {
        Arc::new(HModule::zero_module(self.ring.clone()))
    }

    fn homs(&self, a: &Arc<HModule>, b: &Arc<HModule>) -> Result<Vec<Morphism<HModule>>> {
        hmod::enumerate_h_homs(a, b)
    }

    fn classify(&self, f: &Morphism<HModule>) -> MorphismClass {
        hmod::classify_h_morphism(f)
    }

    fn find_isomorphism(&self, a: &Arc<HModule>, b: &Arc<HModule>) -> Option<Morphism<HModule>> {
        hmod::find_h_isomorphism(a, b)
    }

    fn subobjects(&self, e: &HModule) -> Vec<Mask> {
        hmod::enumerate_hsubmodules(e)
    }

    fn subobject(&self, e: &Arc<HModule>, s: Mask) -> Result<Morphism<HModule>> {
        e.submodule(s)
    }

    fn quotient(&self, e: &Arc<HModule>, s: Mask) -> Result<Morphism<HModule>> {
        Ok(hmod::quotient_hmodule(e, s)?.projection)
    }

    fn generate(&self, max_size: usize) -> Result<Vec<Arc<HModule>>> {
        if *self.ring != krasner() {
            return Err(Error::Unsupported("hypermodule generation is only available over K".into()));
        }
        Ok(generate::kmodules(max_size)?.into_iter().map(Arc::new).collect())
    }
}

fn compose<O: Structure>(f: &Morphism<O>, g: &Morphism<O>) -> Vec<usize> {
    f.map().iter().map(|&x| g.apply(x)).collect()
}

/// `A ↣ B ↠ C`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<O> {
    pub i: Morphism<O>,
    pub j: Morphism<O>,
}

impl<O: Structure> ShortExactSequence<O> {
    pub fn middle(&self) -> &Arc<O> {
        self.i.target()
    }
}

/// Why a sequence fails to be short exact, or `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub exact: bool,
    pub diagnosis: Option<String>,
}

/// `i` admissible mono, `j` admissible epi, `j ∘ i = 0`, and `j` induces an
/// isomorphism `B/i(A) → C`.
pub fn is_short_exact<C: Category>(cat: &C, seq: &ShortExactSequence<C::Object>) -> Result<ExactnessReport> {
    let fail = |why: String| Ok(ExactnessReport { exact: false, diagnosis: Some(why) });
    let (i, j) = (&seq.i, &seq.j);
    if **i.target() != **j.source() {
        return Err(Error::InvalidArgument("the middle objects of i and j differ".into()));
    }
    if !cat.classify(i).is_mono() {
        return fail("i is not an admissible mono".into());
    }
    if !cat.classify(j).is_epi() {
        return fail("j is not an admissible epi".into());
    }
    let zero = j.target().zero();
    if let Some(x) = i.map().iter().position(|&y| j.apply(y) != zero) {
        return fail(format!("j(i({x})) is not zero"));
    }
    let p = cat.quotient(i.target(), i.image())?;
    let mut induced = vec![usize::MAX; p.target().len()];
    for x in 0..p.source().len() {
        let c = p.apply(x);
        if induced[c] != usize::MAX && induced[c] != j.apply(x) {
            return fail(format!("j is not constant on the class of {x} modulo i(A)"));
        }
        induced[c] = j.apply(x);
    }
    match Morphism::new(p.target().clone(), j.target().clone(), induced) {
        Ok(g) if cat.classify(&g) == MorphismClass::Iso => Ok(ExactnessReport { exact: true, diagnosis: None }),
        _ => fail("the induced map B/i(A) -> C is not an isomorphism".into()),
    }
}

/// A commutative square
///
/// ```text
/// M --i--> N
/// |j       |j'
/// v        v
/// M' -i'-> N'
/// ```
#[derive(Clone, Debug)]
pub struct BiCartesianSquare<O> {
    pub i: Morphism<O>,
    pub j: Morphism<O>,
    pub i_prime: Morphism<O>,
    pub j_prime: Morphism<O>,
}

impl<O: Structure> BiCartesianSquare<O> {
    pub fn commutes(&self) -> bool {
        compose(&self.i, &self.j_prime) == compose(&self.j, &self.i_prime)
    }
}

/// The two partial diagrams that can be completed.
#[derive(Clone, Debug)]
pub enum PartialSquare<O> {
    /// `i': M' ↣ N'` and `j': N ↠ N'`.
    Pullback { i_prime: Morphism<O>, j_prime: Morphism<O> },
    /// `i: M ↣ N` and `j: M ↠ M'`.
    Pushout { i: Morphism<O>, j: Morphism<O> },
}

/// Completes a partial square. The pullback corner is `j'⁻¹(i'(M'))`; the
/// pushout corner is `N` modulo the image of `ker j`.
pub fn complete_square<C: Category>(cat: &C, partial: &PartialSquare<C::Object>) -> Result<BiCartesianSquare<C::Object>> {
    let square = match partial {
        PartialSquare::Pullback { i_prime, j_prime } => {
            if **i_prime.target() != **j_prime.target() {
                return Err(Error::InvalidArgument("i' and j' must share their target".into()));
            }
            if !cat.classify(i_prime).is_mono() {
                return Err(Error::NotAdmissible("i' is not an admissible mono".into()));
            }
            if !cat.classify(j_prime).is_epi() {
                return Err(Error::NotAdmissible("j' is not an admissible epi".into()));
            }
            let corner = j_prime.preimage(i_prime.image());
            let i = cat.subobject(j_prime.source(), corner)?;
            let mut back = vec![usize::MAX; i_prime.target().len()];
            for (x, &y) in i_prime.map().iter().enumerate() {
                back[y] = x;
            }
            let map = i.map().iter().map(|&n| back[j_prime.apply(n)]).collect();
            let j = Morphism::new(i.source().clone(), i_prime.source().clone(), map)?;
            BiCartesianSquare { i, j, i_prime: i_prime.clone(), j_prime: j_prime.clone() }
        }
        PartialSquare::Pushout { i, j } => {
            if **i.source() != **j.source() {
                return Err(Error::InvalidArgument("i and j must share their source".into()));
            }
            if !cat.classify(i).is_mono() {
                return Err(Error::NotAdmissible("i is not an admissible mono".into()));
            }
            if !cat.classify(j).is_epi() {
                return Err(Error::NotAdmissible("j is not an admissible epi".into()));
            }
            let j_prime = cat.quotient(i.target(), i.image_of(j.kernel()))?;
            let mut map = vec![usize::MAX; j.target().len()];
            for m in 0..i.source().len() {
                let v = j_prime.apply(i.apply(m));
                let slot = &mut map[j.apply(m)];
                if *slot != usize::MAX && *slot != v {
                    return Err(Error::NotMorphism("induced map on the pushout is not well defined".into()));
                }
                *slot = v;
            }
            let i_prime = Morphism::new(j.target().clone(), j_prime.target().clone(), map)?;
            BiCartesianSquare { i: i.clone(), j: j.clone(), i_prime, j_prime }
        }
    };
    if !square.commutes() {
        return Err(Error::NotMorphism("completed square does not commute".into()));
    }
    if !cat.classify(&square.i).is_mono() || !cat.classify(&square.i_prime).is_mono() {
        return Err(Error::NotAdmissible("a completed horizontal edge is not an admissible mono".into()));
    }
    if !cat.classify(&square.j).is_epi() || !cat.classify(&square.j_prime).is_epi() {
        return Err(Error::NotAdmissible("a completed vertical edge is not an admissible epi".into()));
    }
    Ok(square)
}

/// First apex over which the square fails to be a pullback, tested against
/// every cone `N <- X -> M'` with `X` in `apexes`.
pub fn pullback_failure<C: Category>(
    cat: &C,
    sq: &BiCartesianSquare<C::Object>,
    apexes: &[Arc<C::Object>],
) -> Result<Option<usize>> {
    for (k, x) in apexes.iter().enumerate() {
        let through_m = cat.homs(x, sq.i.source())?.len();
        let legs: HashSet<Vec<usize>> =
            cat.homs(x, sq.j.target())?.iter().map(|b| compose(b, &sq.i_prime)).collect();
        // i' is injective, so a cone is determined by its leg into N
        let cones = cat.homs(x, sq.i.target())?.iter().filter(|a| legs.contains(&compose(a, &sq.j_prime))).count();
        if cones != through_m {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// First apex over which the square fails to be a pushout, tested against
/// every cocone `N -> Y <- M'` with `Y` in `apexes`.
pub fn pushout_failure<C: Category>(
    cat: &C,
    sq: &BiCartesianSquare<C::Object>,
    apexes: &[Arc<C::Object>],
) -> Result<Option<usize>> {
    for (k, y) in apexes.iter().enumerate() {
        let through_n = cat.homs(sq.j_prime.target(), y)?.len();
        let mut by_restriction: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for d in cat.homs(sq.j.target(), y)? {
            *by_restriction.entry(compose(&sq.j, &d)).or_default() += 1;
        }
        let cocones: usize = cat
            .homs(sq.i.target(), y)?
            .iter()
            .map(|c| by_restriction.get(&compose(&sq.i, c)).copied().unwrap_or(0))
            .sum();
        if cocones != through_n {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// One equivalence class of extensions of `C` by `A`.
#[derive(Clone, Debug)]
pub struct ExtClass<O> {
    /// Lexicographically first sequence in the class.
    pub representative: ShortExactSequence<O>,
    /// Number of sequences `(i, j)` through the same middle in the class.
    pub orbit_size: usize,
}

/// Extension classes of `C` by `A` with middles of at most
/// `max_middle_size` elements.
#[derive(Clone, Debug)]
pub struct ExtEnumeration<O> {
    pub classes: Vec<ExtClass<O>>,
    pub middles_searched: usize,
    /// Set when no middle object fits under the bound.
    pub note: Option<String>,
}

/// Enumerates middles by exhaustive generation, keeps the exact sequences
/// `A ↣ B ↠ C`, and groups them: `(i, j) ~ (i', j')` when an automorphism
/// `φ` of `B` has `φ ∘ i = i'` and `j' ∘ φ = j`.
///
/// The result is complete only up to the size bound; none of these
/// categories has finitely many extensions in general.
pub fn ext_enumerate<C: Category>(
    cat: &C,
    c: &Arc<C::Object>,
    a: &Arc<C::Object>,
    max_middle_size: usize,
) -> Result<ExtEnumeration<C::Object>> {
    let middles = cat.generate(max_middle_size)?;
    let per_middle: Vec<Result<Vec<ExtClass<C::Object>>>> =
        middles.par_iter().map(|b| ext_through(cat, c, a, b)).collect();
    let mut classes = Vec::new();
    for r in per_middle {
        classes.extend(r?);
    }
    let note = middles.is_empty().then(|| format!("no middle object has at most {max_middle_size} elements"));
    Ok(ExtEnumeration { classes, middles_searched: middles.len(), note })
}

fn ext_through<C: Category>(
    cat: &C,
    c: &Arc<C::Object>,
    a: &Arc<C::Object>,
    b: &Arc<C::Object>,
) -> Result<Vec<ExtClass<C::Object>>> {
    let monos: Vec<_> = cat.homs(a, b)?.into_iter().filter(|i| cat.classify(i).is_mono()).collect();
    if monos.is_empty() {
        return Ok(Vec::new());
    }
    let epis: Vec<_> = cat.homs(b, c)?.into_iter().filter(|j| cat.classify(j).is_epi()).collect();
    let mut seqs = Vec::new();
    for i in &monos {
        for j in &epis {
            let seq = ShortExactSequence { i: i.clone(), j: j.clone() };
            if is_short_exact(cat, &seq)?.exact {
                seqs.push(seq);
            }
        }
    }
    if seqs.is_empty() {
        return Ok(Vec::new());
    }
    let auts = cat.automorphisms(b);
    let key = |s: &ShortExactSequence<C::Object>| (s.i.map().to_vec(), s.j.map().to_vec());
    let index: BTreeMap<_, usize> = seqs.iter().enumerate().map(|(k, s)| (key(s), k)).collect();
    let mut class_of = vec![usize::MAX; seqs.len()];
    let mut classes = Vec::new();
    // seqs is in lexicographic order, so each class is found at its first member
    for k in 0..seqs.len() {
        if class_of[k] != usize::MAX {
            continue;
        }
        let mut orbit = 0;
        for phi in &auts {
            let mut inverse = vec![0; phi.map().len()];
            for (x, &y) in phi.map().iter().enumerate() {
                inverse[y] = x;
            }
            let i2 = compose(&seqs[k].i, phi);
            let j2: Vec<usize> = inverse.iter().map(|&x| seqs[k].j.apply(x)).collect();
            let other = index[&(i2, j2)];
            if class_of[other] == usize::MAX {
                class_of[other] = classes.len();
                orbit += 1;
            }
        }
        classes.push(ExtClass { representative: seqs[k].clone(), orbit_size: orbit });
    }
    Ok(classes)
}

/// `a^E_{A,B}`: the subobjects `D ⊆ E` with `D ≅ B` and `E/D ≅ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallResult {
    pub count: usize,
    pub witnesses: Vec<Mask>,
}

pub fn hall_constant<C: Category>(
    cat: &C,
    e: &Arc<C::Object>,
    a: &Arc<C::Object>,
    b: &Arc<C::Object>,
) -> Result<HallResult> {
    let subs = cat.subobjects(e);
    let hits: Vec<Result<Option<Mask>>> = subs
        .par_iter()
        .map(|&s| {
            if s.len() != b.len() || e.len() / s.len().max(1) > a.len() * e.len() {
                // sizes rule out D ≅ B
                if s.len() != b.len() {
                    return Ok(None);
                }
            }
            let d = cat.subobject(e, s)?;
            if cat.find_isomorphism(d.source(), b).is_none() {
                return Ok(None);
            }
            let q = cat.quotient(e, s)?;
            Ok(cat.find_isomorphism(q.target(), a).map(|_| s))
        })
        .collect();
    let mut witnesses = Vec::new();
    for h in hits {
        if let Some(s) = h? {
            witnesses.push(s);
        }
    }
    Ok(HallResult { count: witnesses.len(), witnesses })
}

/// Outcome of one proto-exact axiom over a corpus.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomOutcome {
    pub axiom: usize,
    pub statement: &'static str,
    /// Number of instances examined.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProtoExactReport {
    pub category: &'static str,
    pub objects: usize,
    /// Objects used as apexes of cones and cocones: the corpus plus every
    /// constructed object not isomorphic to one already present.
    pub apexes: usize,
    pub axioms: Vec<AxiomOutcome>,
}

impl ProtoExactReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomOutcome::passed)
    }
}

const STATEMENTS: [&str; 5] = [
    "0 -> A is an admissible mono and A -> 0 an admissible epi",
    "both classes contain the isomorphisms and are closed under composition",
    "a square of admissible monos and epis is a pullback iff it is a pushout",
    "i' and j' with common target complete to a bi-Cartesian square",
    "i and j with common source complete to a bi-Cartesian square",
];

/// Checks the five proto-exact axioms over `corpus`.
///
/// Axioms 1 and 2 run over every morphism between corpus objects. Axioms
/// 3-5 run over the squares and partial squares whose corners are corpus
/// objects, enumerated up to isomorphism through admissible subobjects:
/// an admissible mono is an inclusion of an admissible subobject and an
/// admissible epi is a quotient projection, up to isomorphism of the new
/// corner. Universal properties are tested against every corpus object and
/// every constructed object not isomorphic to one of them.
pub fn verify_proto_exact_axioms<C: Category>(cat: &C, corpus: &[Arc<C::Object>]) -> Result<ProtoExactReport> {
    let n = corpus.len();
    let zero = cat.zero_object();
    let mut outcomes: Vec<AxiomOutcome> = STATEMENTS
        .iter()
        .enumerate()
        .map(|(k, s)| AxiomOutcome { axiom: k + 1, statement: s, checked: 0, failures: Vec::new() })
        .collect();

    for (k, a) in corpus.iter().enumerate() {
        outcomes[0].checked += 2;
        if !cat.classify(&Morphism::zero(zero.clone(), a.clone())).is_mono() {
            outcomes[0].failures.push(format!("0 -> object {k} is not an admissible mono"));
        }
        if !cat.classify(&Morphism::zero(a.clone(), zero.clone())).is_epi() {
            outcomes[0].failures.push(format!("object {k} -> 0 is not an admissible epi"));
        }
    }

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let homs: Vec<Result<Vec<(Morphism<C::Object>, MorphismClass)>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            Ok(cat.homs(&corpus[a], &corpus[b])?.into_iter().map(|f| {
                let c = cat.classify(&f);
                (f, c)
            }).collect())
        })
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for h in homs {
        table.push(h?);
    }
    let axiom2: Vec<(usize, Vec<String>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for f in isomorphisms(&corpus[a], &corpus[b]) {
                checked += 1;
                if cat.classify(&f) != MorphismClass::Iso {
                    failures.push(format!("isomorphism {:?} from object {a} to {b} is not in both classes", f.map()));
                }
            }
            for c in 0..n {
                for (f, cf) in &table[a * n + b] {
                    for (g, cg) in &table[b * n + c] {
                        let (mono, epi) = (cf.is_mono() && cg.is_mono(), cf.is_epi() && cg.is_epi());
                        if !mono && !epi {
                            continue;
                        }
                        checked += 1;
                        let h = f.then(g).expect("composable");
                        let ch = cat.classify(&h);
                        if (mono && !ch.is_mono()) || (epi && !ch.is_epi()) {
                            failures.push(format!("composite {:?} through objects {a}, {b}, {c} leaves its class", h.map()));
                        }
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    for (checked, failures) in axiom2 {
        outcomes[1].checked += checked;
        outcomes[1].failures.extend(failures);
    }

    // Squares M ↣ N ↠ N' through subobjects S (image of i) and T (kernel of j').
    let mut squares = Vec::new();
    let mut pullbacks = Vec::new();
    let mut pushouts = Vec::new();
    for (k, e) in corpus.iter().enumerate() {
        let subs = cat.subobjects(e);
        for &s in &subs {
            let i = cat.subobject(e, s)?;
            for &t in &subs {
                let j_prime = cat.quotient(e, t)?;
                if let Some(sq) = factor_square(cat, &i, &j_prime)? {
                    squares.push((format!("object {k}, S = {s}, T = {t}"), sq));
                }
                let q = j_prime.target();
                for s2 in cat.subobjects(q) {
                    let i_prime = cat.subobject(q, s2)?;
                    pullbacks.push((
                        format!("object {k}, T = {t}, image {s2}"),
                        PartialSquare::Pullback { i_prime, j_prime: j_prime.clone() },
                    ));
                }
            }
            let m = i.source();
            for kk in cat.subobjects(m) {
                let j = cat.quotient(m, kk)?;
                pushouts.push((format!("object {k}, S = {s}, kernel {kk}"), PartialSquare::Pushout { i: i.clone(), j }));
            }
        }
    }

    let mut completed = Vec::new();
    for (label, partial) in pullbacks.iter().chain(pushouts.iter()) {
        let axiom = if matches!(partial, PartialSquare::Pullback { .. }) { 3 } else { 4 };
        outcomes[axiom].checked += 1;
        match complete_square(cat, partial) {
            Ok(sq) => completed.push((axiom, label.clone(), sq)),
            Err(err) => outcomes[axiom].failures.push(format!("{label}: {err}")),
        }
    }

    let mut apexes: Vec<Arc<C::Object>> = corpus.to_vec();
    let corners = squares
        .iter()
        .map(|(_, sq)| sq)
        .chain(completed.iter().map(|(_, _, sq)| sq))
        .flat_map(|sq| [sq.i.source().clone(), sq.i.target().clone(), sq.j.target().clone(), sq.j_prime.target().clone()]);
    for x in corners {
        if !apexes.iter().any(|y| y.len() == x.len() && cat.find_isomorphism(y, &x).is_some()) {
            apexes.push(x);
        }
    }

    let square_checks: Vec<Result<(bool, bool)>> = squares
        .par_iter()
        .map(|(_, sq)| Ok((pullback_failure(cat, sq, &apexes)?.is_none(), pushout_failure(cat, sq, &apexes)?.is_none())))
        .collect();
    for ((label, _), r) in squares.iter().zip(square_checks) {
        let (pb, po) = r?;
        outcomes[2].checked += 1;
        if pb != po {
            outcomes[2].failures.push(format!("{label}: pullback {pb}, pushout {po}"));
        }
    }
    let completion_checks: Vec<Result<(Option<usize>, Option<usize>)>> = completed
        .par_iter()
        .map(|(_, _, sq)| Ok((pullback_failure(cat, sq, &apexes)?, pushout_failure(cat, sq, &apexes)?)))
        .collect();
    for ((axiom, label, _), r) in completed.iter().zip(completion_checks) {
        let (pb, po) = r?;
        if let Some(x) = pb {
            outcomes[*axiom].failures.push(format!("{label}: not a pullback against apex {x}"));
        }
        if let Some(y) = po {
            outcomes[*axiom].failures.push(format!("{label}: not a pushout against apex {y}"));
        }
    }

    Ok(ProtoExactReport { category: cat.name(), objects: n, apexes: apexes.len(), axioms: outcomes })
}

/// The square with top edge `i` and right edge `j'`, if `j' ∘ i` factors as
/// an admissible epi followed by an admissible mono.
fn factor_square<C: Category>(
    cat: &C,
    i: &Morphism<C::Object>,
    j_prime: &Morphism<C::Object>,
) -> Result<Option<BiCartesianSquare<C::Object>>> {
    let f = compose(i, j_prime);
    let image: Mask = f.iter().copied().collect();
    if !cat.subobjects(j_prime.target()).contains(&image) {
        return Ok(None);
    }
    let i_prime = cat.subobject(j_prime.target(), image)?;
    let mut back = vec![usize::MAX; j_prime.target().len()];
    for (x, &y) in i_prime.map().iter().enumerate() {
        back[y] = x;
    }
    let j = Morphism::new(i.source().clone(), i_prime.source().clone(), f.iter().map(|&y| back[y]).collect())?;
    if !cat.classify(&j).is_epi() {
        return Ok(None);
    }
    Ok(Some(BiCartesianSquare { i: i.clone(), j, i_prime, j_prime: j_prime.clone() }))
}
