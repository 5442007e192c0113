//! Backtracking homomorphism and isomorphism search shared by modules,
//! hypermodules and lattices.

use crate::mask::Mask;

/// A finite carrier with a (possibly multi-valued) addition, a distinguished
/// zero and an action of a finite scalar set.
///
/// Single-valued additions report singleton sums. A lattice presents its join
/// as addition, its bottom as zero and the trivial action of `B`.
pub trait Structure {
    fn len(&self) -> usize;

    fn zero(&self) -> usize {
        0
    }

    fn sum(&self, a: usize, b: usize) -> Mask;

    fn scalar_count(&self) -> usize;

    fn act(&self, r: usize, x: usize) -> usize;
}

/// How images of sums must relate to sums of images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SumRule {
    /// `f(a + b) ⊆ f(a) + f(b)`; for single-valued sums this is the usual
    /// homomorphism condition.
    Contained,
    /// `f(a + b) = f(a) + f(b)` (strict).
    Equal,
}

/// `true` when `map` is a morphism `src -> tgt` under `rule`.
pub(crate) fn is_hom<S, T>(src: &S, tgt: &T, map: &[usize], rule: SumRule) -> bool
where
    S: Structure + ?Sized,
    T: Structure + ?Sized,
{
    let n = src.len();
    if map.len() != n || map.iter().any(|&y| y >= tgt.len()) || map[src.zero()] != tgt.zero() {
        return false;
    }
    if src.scalar_count() != tgt.scalar_count() {
        return false;
    }
    for r in 0..src.scalar_count() {
        for x in 0..n {
            if map[src.act(r, x)] != tgt.act(r, map[x]) {
                return false;
            }
        }
    }
    sum_violation(src, tgt, map, rule).is_none()
}

/// First pair `(a, b)` where the sum rule fails.
pub(crate) fn sum_violation<S, T>(src: &S, tgt: &T, map: &[usize], rule: SumRule) -> Option<(usize, usize)>
where
    S: Structure + ?Sized,
    T: Structure + ?Sized,
{
    let n = src.len();
    for a in 0..n {
        for b in 0..n {
            let image = src.sum(a, b).map(map);
            let target = tgt.sum(map[a], map[b]);
            let ok = match rule {
                SumRule::Contained => image.is_subset(target),
                SumRule::Equal => image == target,
            };
            if !ok {
                return Some((a, b));
            }
        }
    }
    None
}

/// Isomorphism-invariant fingerprint of one element.
pub(crate) fn element_signature<S: Structure + ?Sized>(s: &S, x: usize) -> [usize; 5] {
    let n = s.len();
    let mut hits = 0;
    let mut fixes = 0;
    for a in 0..n {
        if s.sum(a, x).contains(x) {
            fixes += 1;
        }
        for b in 0..n {
            if s.sum(a, b).contains(x) {
                hits += 1;
            }
        }
    }
    let orbit: Mask = (0..s.scalar_count()).map(|r| s.act(r, x)).collect();
    [usize::from(x == s.zero()), s.sum(x, x).len(), hits, fixes, orbit.len()]
}

pub(crate) struct HomSearch<'a, S: ?Sized, T: ?Sized> {
    src: &'a S,
    tgt: &'a T,
    rule: SumRule,
    injective: bool,
    init: Vec<Mask>,
}

impl<'a, S, T> HomSearch<'a, S, T>
where
    S: Structure + ?Sized,
    T: Structure + ?Sized,
{
    pub fn homs(src: &'a S, tgt: &'a T, rule: SumRule) -> Self {
        let mut init = vec![Mask::full(tgt.len()); src.len()];
        init[src.zero()] = Mask::singleton(tgt.zero());
        HomSearch { src, tgt, rule, injective: false, init }
    }

    /// Bijections that are morphisms under [`SumRule::Equal`], with domains
    /// narrowed by element signatures. Empty when the sizes or signature
    /// multisets differ.
    pub fn isos(src: &'a S, tgt: &'a T) -> Self {
        let mut search = Self::homs(src, tgt, SumRule::Equal);
        search.injective = true;
        if src.len() != tgt.len() || src.scalar_count() != tgt.scalar_count() {
            search.init = vec![Mask::EMPTY; src.len()];
            return search;
        }
        let ss: Vec<_> = (0..src.len()).map(|x| element_signature(src, x)).collect();
        let ts: Vec<_> = (0..tgt.len()).map(|y| element_signature(tgt, y)).collect();
        let (mut a, mut b) = (ss.clone(), ts.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            search.init = vec![Mask::EMPTY; src.len()];
            return search;
        }
        for x in 0..src.len() {
            let allowed: Mask = (0..tgt.len()).filter(|&y| ts[y] == ss[x]).collect();
            search.init[x] = search.init[x].intersection(allowed);
        }
        search
    }

    /// All solutions in lexicographic order.
    pub fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.run(&mut |m| {
            out.push(m.to_vec());
            true
        });
        out.sort_unstable();
        out
    }

    /// Some solution; the lexicographically first one is not guaranteed.
    pub fn first(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.run(&mut |m| {
            out = Some(m.to_vec());
            false
        });
        out
    }

    /// Calls `visit` on every solution until it returns `false`.
    pub fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        if self.src.len() == 0 || self.init.iter().any(|d| d.is_empty()) {
            return;
        }
        self.descend(self.init.clone(), visit);
    }

    /// Returns `true` when the visitor asked to stop.
    fn descend(&self, dom: Vec<Mask>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some(dom) = self.propagate(dom) else {
            return false;
        };
        let pick = (0..dom.len()).filter(|&x| dom[x].len() > 1).min_by_key(|&x| (dom[x].len(), x));
        match pick {
            None => {
                let map: Vec<usize> = dom.iter().map(|d| d.first().unwrap()).collect();
                if is_hom(self.src, self.tgt, &map, self.rule) {
                    return !visit(&map);
                }
                false
            }
            Some(x) => {
                for v in dom[x] {
                    let mut next = dom.clone();
                    next[x] = Mask::singleton(v);
                    if self.descend(next, visit) {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn propagate(&self, mut dom: Vec<Mask>) -> Option<Vec<Mask>> {
        let n = dom.len();
        loop {
            let mut changed = false;
            let mut restrict = |dom: &mut Vec<Mask>, z: usize, allowed: Mask| -> Option<()> {
                let next = dom[z].intersection(allowed);
                if next != dom[z] {
                    if next.is_empty() {
                        return None;
                    }
                    dom[z] = next;
                    changed = true;
                }
                Some(())
            };
            for a in 0..n {
                let Some(fa) = dom[a].single() else { continue };
                for r in 0..self.src.scalar_count() {
                    restrict(&mut dom, self.src.act(r, a), Mask::singleton(self.tgt.act(r, fa)))?;
                }
                if self.injective {
                    for z in 0..n {
                        if z != a {
                            restrict(&mut dom, z, Mask::full(self.tgt.len()).difference(Mask::singleton(fa)))?;
                        }
                    }
                }
                for b in a..n {
                    let Some(fb) = dom[b].single() else { continue };
                    let target = self.tgt.sum(fa, fb);
                    let mut image = Mask::EMPTY;
                    let mut complete = true;
                    for z in self.src.sum(a, b) {
                        restrict(&mut dom, z, target)?;
                        match dom[z].single() {
                            Some(fz) => image.insert(fz),
                            None => complete = false,
                        }
                    }
                    if self.rule == SumRule::Equal && complete && image != target {
                        return None;
                    }
                }
            }
            if !changed {
                return Some(dom);
            }
        }
    }
}
