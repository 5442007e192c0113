//! Finite semirings, rings, hypergroups, hyperrings and hyperfields given by
//! explicit operation tables.
//!
//! Element `0` is always the additive identity and element `1` the
//! multiplicative identity (for carriers with at least two elements). All
//! tables are stored row-major, `table[a * size + b]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{Mask, MAX_ELEMENTS};
use crate::report::{run_laws, AxiomReport, Law};

fn check_size(size: usize, what: &str) -> Result<()> {
    if size == 0 {
        return Err(Error::malformed(format!("{what} must have at least one element")));
    }
    if size > MAX_ELEMENTS {
        return Err(Error::TooLarge { what: what.into(), size, limit: MAX_ELEMENTS });
    }
    Ok(())
}

pub(crate) fn check_table(name: &str, table: &[usize], rows: usize, cols: usize, range: usize) -> Result<()> {
    if table.len() != rows * cols {
        return Err(Error::malformed(format!(
            "`{name}` table has {} entries, expected {rows}x{cols}",
            table.len()
        )));
    }
    if let Some(pos) = table.iter().position(|&x| x >= range) {
        return Err(Error::malformed(format!(
            "`{name}` entry ({}, {}) = {} is out of range 0..{range}",
            pos / cols,
            pos % cols,
            table[pos]
        )));
    }
    Ok(())
}

pub(crate) fn check_hyper_table(name: &str, table: &[Mask], size: usize) -> Result<()> {
    if table.len() != size * size {
        return Err(Error::malformed(format!(
            "`{name}` table has {} entries, expected {size}x{size}",
            table.len()
        )));
    }
    let full = Mask::full(size);
    for (pos, &m) in table.iter().enumerate() {
        if m.is_empty() {
            return Err(Error::malformed(format!("`{name}` entry ({}, {}) is empty", pos / size, pos % size)));
        }
        if !m.is_subset(full) {
            return Err(Error::malformed(format!(
                "`{name}` entry ({}, {}) = {m} leaves the carrier 0..{size}",
                pos / size,
                pos % size
            )));
        }
    }
    Ok(())
}

/// A finite commutative semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemiringTable {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl SemiringTable {
    /// Builds a table after structural validation only; see
    /// [`check_semiring_axioms`] for the algebraic laws.
    pub fn from_tables(size: usize, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        check_size(size, "semiring")?;
        check_table("add", &add, size, size, size)?;
        check_table("mul", &mul, size, size, size)?;
        Ok(SemiringTable { size, add, mul })
    }

    /// Structural and axiomatic validation.
    pub fn validated(size: usize, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        let t = Self::from_tables(size, add, mul)?;
        let report = check_semiring_axioms(&t);
        if report.is_valid() {
            Ok(t)
        } else {
            Err(Error::axioms("semiring", report))
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        if self.size >= 2 {
            1
        } else {
            0
        }
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// `a + a = a` for every element.
    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|a| self.add(a, a) == a)
    }
}

fn semiring_laws(t: &SemiringTable) -> Vec<Law<'_>> {
    let n = t.size;
    let all: Vec<usize> = (0..n).collect();
    vec![
        Law::over("additive commutativity", n, 2, move |x| t.add(x[0], x[1]) == t.add(x[1], x[0])),
        Law::over("additive associativity", n, 3, move |x| {
            t.add(t.add(x[0], x[1]), x[2]) == t.add(x[0], t.add(x[1], x[2]))
        }),
        Law::new("additive identity", vec![all.clone(), vec![0]], move |x| t.add(x[0], x[1]) == x[0]),
        Law::over("multiplicative commutativity", n, 2, move |x| t.mul(x[0], x[1]) == t.mul(x[1], x[0])),
        Law::over("multiplicative associativity", n, 3, move |x| {
            t.mul(t.mul(x[0], x[1]), x[2]) == t.mul(x[0], t.mul(x[1], x[2]))
        }),
        Law::new("multiplicative identity", vec![all.clone(), vec![t.one()]], move |x| {
            t.mul(x[0], x[1]) == x[0]
        }),
        Law::new("multiplicative absorption", vec![all, vec![0]], move |x| t.mul(x[0], x[1]) == 0),
        Law::over("distributivity", n, 3, move |x| {
            t.mul(x[0], t.add(x[1], x[2])) == t.add(t.mul(x[0], x[1]), t.mul(x[0], x[2]))
        }),
    ]
}

/// Exhaustive check of the commutative semiring laws, one first witness per
/// failed law.
pub fn check_semiring_axioms(t: &SemiringTable) -> AxiomReport {
    run_laws(&semiring_laws(t))
}

/// A finite commutative ring: a semiring with additive inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingTable {
    semiring: SemiringTable,
    neg: Vec<usize>,
}

impl RingTable {
    /// Wraps a semiring, computing the negation table. Fails with an axiom
    /// report if the semiring laws fail or some element has no inverse.
    pub fn from_semiring(semiring: SemiringTable) -> Result<Self> {
        let mut report = check_semiring_axioms(&semiring);
        let n = semiring.size();
        let neg: Vec<Option<usize>> =
            (0..n).map(|a| (0..n).find(|&b| semiring.add(a, b) == 0)).collect();
        if let Some(a) = neg.iter().position(Option::is_none) {
            report.violations.push(crate::report::Violation { axiom: "additive inverses", witness: vec![a] });
        }
        if !report.is_valid() {
            return Err(Error::axioms("ring", report));
        }
        Ok(RingTable { semiring, neg: neg.into_iter().map(Option::unwrap).collect() })
    }

    /// Integers modulo `n` (a field when `n` is prime).
    pub fn integers_mod(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {n}")));
        }
        check_size(n, "Z/n")?;
        let add = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let mul = (0..n * n).map(|k| (k / n) * (k % n) % n).collect();
        Self::from_semiring(SemiringTable::from_tables(n, add, mul)?)
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Self::integers_mod(p)
    }

    pub fn semiring(&self) -> &SemiringTable {
        &self.semiring
    }

    pub fn size(&self) -> usize {
        self.semiring.size()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.semiring.add(a, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.semiring.mul(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.size()).any(|b| self.mul(a, b) == self.semiring.one())
    }

    /// The ring as a hyperring whose sums are all singletons.
    pub fn as_hyper(&self) -> HyperTable {
        let n = self.size();
        let hyperadd = self.semiring.add.iter().map(|&s| Mask::singleton(s)).collect();
        let field = n >= 2 && (1..n).all(|a| self.is_unit(a));
        HyperTable {
            size: n,
            hyperadd,
            mul: self.semiring.mul.clone(),
            kind: if field { HyperKind::Hyperfield } else { HyperKind::Hyperring },
        }
    }
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// How much structure a [`HyperTable`] claims, and therefore which axioms
/// [`check_hyperstructure_axioms`] verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HyperKind {
    Hypergroup,
    Hyperring,
    Hyperfield,
}

impl fmt::Display for HyperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperKind::Hypergroup => "hypergroup",
            HyperKind::Hyperring => "hyperring",
            HyperKind::Hyperfield => "hyperfield",
        })
    }
}

/// A finite hypergroup, hyperring or hyperfield: set-valued addition,
/// single-valued multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperTable {
    size: usize,
    hyperadd: Vec<Mask>,
    /// Empty for a bare hypergroup.
    mul: Vec<usize>,
    kind: HyperKind,
}

impl HyperTable {
    pub fn from_tables(size: usize, hyperadd: Vec<Mask>, mul: Vec<usize>, kind: HyperKind) -> Result<Self> {
        check_size(size, "hyperstructure")?;
        check_hyper_table("hyperadd", &hyperadd, size)?;
        if kind != HyperKind::Hypergroup || !mul.is_empty() {
            check_table("mul", &mul, size, size, size)?;
        }
        Ok(HyperTable { size, hyperadd, mul, kind })
    }

    pub fn validated(size: usize, hyperadd: Vec<Mask>, mul: Vec<usize>, kind: HyperKind) -> Result<Self> {
        let t = Self::from_tables(size, hyperadd, mul, kind)?;
        let report = check_hyperstructure_axioms(&t);
        if report.is_valid() {
            Ok(t)
        } else {
            Err(Error::axioms(kind.to_string(), report))
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> HyperKind {
        self.kind
    }

    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> Mask {
        self.hyperadd[a * self.size + b]
    }

    /// Multiplication; panics for a bare hypergroup.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn has_mul(&self) -> bool {
        !self.mul.is_empty()
    }

    pub fn one(&self) -> usize {
        if self.size >= 2 {
            1
        } else {
            0
        }
    }

    pub fn hyperadd_table(&self) -> &[Mask] {
        &self.hyperadd
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// `A + B`, the union of `a + b` over `a ∈ A`, `b ∈ B`.
    pub fn sum_sets(&self, a: Mask, b: Mask) -> Mask {
        sum_sets(|x, y| self.sum(x, y), a, b)
    }

    /// The unique `b` with `0 ∈ a + b`, if it exists and is unique.
    pub fn negative(&self, a: usize) -> Option<usize> {
        unique_negative(self.size, |x, y| self.sum(x, y), a)
    }

    /// An isomorphism `self -> other` of hyperstructures (a bijection fixing
    /// `0` and `1` that carries sums onto sums and products onto products).
    pub fn find_isomorphism(&self, other: &HyperTable) -> Option<Vec<usize>> {
        if self.size != other.size || self.has_mul() != other.has_mul() {
            return None;
        }
        let n = self.size;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        if n >= 2 && self.has_mul() {
            map[1] = 1;
            used[1] = true;
        }
        fn go(s: &HyperTable, o: &HyperTable, map: &mut Vec<usize>, used: &mut Vec<bool>, k: usize) -> bool {
            let n = s.size;
            if k == n {
                return (0..n).all(|a| {
                    (0..n).all(|b| {
                        s.sum(a, b).map(map) == o.sum(map[a], map[b])
                            && (!s.has_mul() || map[s.mul(a, b)] == o.mul(map[a], map[b]))
                    })
                });
            }
            if map[k] != usize::MAX {
                return go(s, o, map, used, k + 1);
            }
            for v in 0..n {
                if used[v] {
                    continue;
                }
                map[k] = v;
                used[v] = true;
                if go(s, o, map, used, k + 1) {
                    return true;
                }
                used[v] = false;
            }
            map[k] = usize::MAX;
            false
        }
        go(self, other, &mut map, &mut used, 0).then_some(map)
    }
}

pub(crate) fn sum_sets(sum: impl Fn(usize, usize) -> Mask, a: Mask, b: Mask) -> Mask {
    let mut out = Mask::EMPTY;
    for x in a {
        for y in b {
            out = out.union(sum(x, y));
        }
    }
    out
}

fn unique_negative(n: usize, sum: impl Fn(usize, usize) -> Mask, a: usize) -> Option<usize> {
    let mut found = None;
    for b in 0..n {
        if sum(a, b).contains(0) {
            if found.is_some() {
                return None;
            }
            found = Some(b);
        }
    }
    found
}

/// The four hypergroup laws for a set-valued addition on `0..n` with `0` as
/// the designated zero.
pub(crate) fn hypergroup_laws<'a, F>(n: usize, sum: F) -> Vec<Law<'a>>
where
    F: Fn(usize, usize) -> Mask + Copy + 'a,
{
    let all: Vec<usize> = (0..n).collect();
    let neg = move |a: usize| unique_negative(n, sum, a);
    vec![
        Law::over("hyperaddition commutativity", n, 2, move |x| sum(x[0], x[1]) == sum(x[1], x[0])),
        Law::over("hyperaddition associativity", n, 3, move |x| {
            let left = sum_sets(sum, sum(x[0], x[1]), Mask::singleton(x[2]));
            let right = sum_sets(sum, Mask::singleton(x[0]), sum(x[1], x[2]));
            left == right
        }),
        Law::new("zero", vec![all.clone(), vec![0]], move |x| sum(x[0], x[1]) == Mask::singleton(x[0])),
        Law::new("unique zero", vec![(1..n).collect()], move |x| {
            (0..n).any(|a| sum(a, x[0]) != Mask::singleton(a))
        }),
        Law::new("unique negatives", vec![all], move |x| neg(x[0]).is_some()),
        Law::over("reversibility", n, 3, move |x| {
            let (a, b, c) = (x[0], x[1], x[2]);
            match neg(b) {
                Some(nb) if sum(b, c).contains(a) => sum(a, nb).contains(c),
                _ => true,
            }
        }),
    ]
}

fn hyper_laws(t: &HyperTable) -> Vec<Law<'_>> {
    let n = t.size;
    let sum = move |a: usize, b: usize| t.sum(a, b);
    let mut laws = hypergroup_laws(n, sum);
    if t.kind == HyperKind::Hypergroup {
        return laws;
    }
    let all: Vec<usize> = (0..n).collect();
    laws.extend([
        Law::over("multiplicative commutativity", n, 2, move |x| t.mul(x[0], x[1]) == t.mul(x[1], x[0])),
        Law::over("multiplicative associativity", n, 3, move |x| {
            t.mul(t.mul(x[0], x[1]), x[2]) == t.mul(x[0], t.mul(x[1], x[2]))
        }),
        Law::new("multiplicative identity", vec![all.clone(), vec![t.one()]], move |x| {
            t.mul(x[0], x[1]) == x[0]
        }),
        Law::new("multiplicative absorption", vec![all, vec![0]], move |x| t.mul(x[0], x[1]) == 0),
        Law::over("distributivity", n, 3, move |x| {
            let left: Mask = t.sum(x[1], x[2]).iter().map(|z| t.mul(x[0], z)).collect();
            left == t.sum(t.mul(x[0], x[1]), t.mul(x[0], x[2]))
        }),
    ]);
    if t.kind == HyperKind::Hyperfield {
        laws.push(Law::new("multiplicative inverses", vec![(1..n).collect()], move |x| {
            (1..n).any(|b| t.mul(x[0], b) == t.one())
        }));
        laws.push(Law::new("nontrivial", vec![vec![0]], move |_| n >= 2));
    }
    laws
}

/// Exhaustive check of the hypergroup laws, plus the hyperring or
/// hyperfield laws when the table's kind asks for them.
pub fn check_hyperstructure_axioms(t: &HyperTable) -> AxiomReport {
    run_laws(&hyper_laws(t))
}

/// One of the named structures shipped with the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Semiring(SemiringTable),
    Ring(RingTable),
    Hyper(HyperTable),
}

impl Builtin {
    pub fn semiring(self) -> Option<SemiringTable> {
        match self {
            Builtin::Semiring(s) => Some(s),
            Builtin::Ring(r) => Some(r.semiring),
            Builtin::Hyper(_) => None,
        }
    }

    pub fn hyper(self) -> Option<HyperTable> {
        match self {
            Builtin::Hyper(h) => Some(h),
            Builtin::Ring(r) => Some(r.as_hyper()),
            Builtin::Semiring(_) => None,
        }
    }
}

/// Builtin structures by name:
///
/// * `B`: the Boolean semifield `{0, 1}` with `1 + 1 = 1`;
/// * `K`: the Krasner hyperfield `{0, 1}` with `1 + 1 = {0, 1}`;
/// * `S`: the sign hyperfield on indices `(0, 1, 2) = (0, 1, -1)` with
///   `1 + (-1) = {-1, 0, 1}`;
/// * `chain_k`: the `k`-element chain `0 < 1 < .. < k-1` with `max` as
///   addition and truncated max-plus multiplication (index `i > 0` stands for
///   the exponent `i - 1`);
/// * `zero`: the one-element semiring;
/// * `F_p`: the prime field with `p` elements.
pub fn builtin(name: &str) -> Result<Builtin> {
    match name {
        "B" => Ok(Builtin::Semiring(boolean())),
        "K" => Ok(Builtin::Hyper(krasner())),
        "S" => Ok(Builtin::Hyper(sign())),
        "zero" => Ok(Builtin::Semiring(SemiringTable::from_tables(1, vec![0], vec![0])?)),
        _ => {
            if let Some(k) = name.strip_prefix("chain_").and_then(|k| k.parse::<usize>().ok()) {
                return chain(k).map(Builtin::Semiring);
            }
            if let Some(p) = name.strip_prefix("F_").and_then(|p| p.parse::<usize>().ok()) {
                return RingTable::prime_field(p).map(Builtin::Ring);
            }
            Err(Error::UnknownBuiltin(name.to_string()))
        }
    }
}

pub fn boolean() -> SemiringTable {
    SemiringTable { size: 2, add: vec![0, 1, 1, 1], mul: vec![0, 0, 0, 1] }
}

pub fn krasner() -> HyperTable {
    HyperTable {
        size: 2,
        hyperadd: vec![Mask(0b01), Mask(0b10), Mask(0b10), Mask(0b11)],
        mul: vec![0, 0, 0, 1],
        kind: HyperKind::Hyperfield,
    }
}

pub fn sign() -> HyperTable {
    let s0 = Mask(0b001);
    let s1 = Mask(0b010);
    let sm = Mask(0b100);
    let all = Mask(0b111);
    HyperTable {
        size: 3,
        #[rustfmt::skip]
        hyperadd: vec![
            s0, s1, sm,
            s1, s1, all,
            sm, all, sm,
        ],
        #[rustfmt::skip]
        mul: vec![
            0, 0, 0,
            0, 1, 2,
            0, 2, 1,
        ],
        kind: HyperKind::Hyperfield,
    }
}

/// The `k`-element chain semiring; `chain(2)` is `B`.
pub fn chain(k: usize) -> Result<SemiringTable> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("chain_k needs k >= 2, got {k}")));
    }
    check_size(k, "chain")?;
    let add = (0..k * k).map(|x| (x / k).max(x % k)).collect();
    let mul = (0..k * k)
        .map(|x| {
            let (a, b) = (x / k, x % k);
            if a == 0 || b == 0 {
                0
            } else {
                (a + b - 1).min(k - 1)
            }
        })
        .collect();
    SemiringTable::validated(k, add, mul)
}

/// A quotient hyperring `A/G` with the class of every ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperQuotient {
    pub table: HyperTable,
    pub class_of: Vec<usize>,
}

/// The quotient hyperring `A/G` of a ring by a subgroup `G` of its units:
/// `[a]·[b] = [ab]` and `[a] + [b] = {[g1·a + g2·b] : g1, g2 ∈ G}`.
///
/// Classes are numbered with `[0]` first, `[1]` second and the rest by
/// smallest member.
pub fn quotient_hyperring(ring: &RingTable, group: Mask) -> Result<HyperQuotient> {
    let n = ring.size();
    let one = ring.semiring().one();
    if !group.contains(one) || !group.is_subset(Mask::full(n)) {
        return Err(Error::InvalidArgument(format!("{group} must contain 1 and lie in the ring")));
    }
    for g in group {
        if !ring.is_unit(g) {
            return Err(Error::InvalidArgument(format!("{g} is not a unit")));
        }
        for h in group {
            if !group.contains(ring.mul(g, h)) {
                return Err(Error::InvalidArgument(format!("{group} is not closed under multiplication")));
            }
        }
    }
    let orbit = |x: usize| -> Mask { group.iter().map(|g| ring.mul(g, x)).collect() };
    let mut order: Vec<usize> = vec![0];
    if n >= 2 {
        order.push(one);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in order.into_iter().chain(0..n) {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        for y in orbit(x) {
            class_of[y] = c;
        }
        reps.push(x);
    }
    let m = reps.len();
    let mut hyperadd = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            let mut s = Mask::EMPTY;
            for g1 in group {
                for g2 in group {
                    s.insert(class_of[ring.add(ring.mul(g1, a), ring.mul(g2, b))]);
                }
            }
            hyperadd.push(s);
            mul.push(class_of[ring.mul(a, b)]);
        }
    }
    let field = m >= 2 && (1..m).all(|a| (1..m).any(|b| mul[a * m + b] == 1));
    let kind = if field { HyperKind::Hyperfield } else { HyperKind::Hyperring };
    let table = HyperTable::validated(m, hyperadd, mul, kind)?;
    Ok(HyperQuotient { table, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::refails;

    /// Independent naive check: every law written out as explicit loops.
    fn naive_semiring_ok(t: &SemiringTable) -> bool {
        let n = t.size();
        let e = |a, b| t.add(a, b);
        let m = |a, b| t.mul(a, b);
        for a in 0..n {
            if e(a, 0) != a || m(a, t.one()) != a || m(a, 0) != 0 {
                return false;
            }
            for b in 0..n {
                if e(a, b) != e(b, a) || m(a, b) != m(b, a) {
                    return false;
                }
                for c in 0..n {
                    if e(e(a, b), c) != e(a, e(b, c)) || m(m(a, b), c) != m(a, m(b, c)) {
                        return false;
                    }
                    if m(a, e(b, c)) != e(m(a, b), m(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn boolean_semifield_is_valid_and_idempotent() {
        let b = builtin("B").unwrap().semiring().unwrap();
        assert!(check_semiring_axioms(&b).is_valid());
        assert!(b.is_idempotent());
        assert_eq!(b.add(1, 1), 1);
        assert_eq!(b.mul(1, 1), 1);
        assert_eq!(b.mul(0, 1), 0);
    }

    #[test]
    fn broken_identity_is_reported_with_witness() {
        let t = SemiringTable::from_tables(2, vec![1, 1, 1, 1], vec![0, 0, 0, 1]).unwrap();
        let report = check_semiring_axioms(&t);
        let v = report.violation("additive identity").unwrap();
        assert_eq!(v.witness, vec![0, 0]);
        let laws = semiring_laws(&t);
        for v in &report.violations {
            assert!(refails(&laws, v));
        }
    }

    #[test]
    fn chain_three_is_valid() {
        let c = chain(3).unwrap();
        assert!(check_semiring_axioms(&c).is_valid());
        assert!(naive_semiring_ok(&c));
        assert!(c.is_idempotent());
        assert_eq!(chain(2).unwrap(), boolean());
    }

    #[test]
    fn literal_min_sum_chain_breaks_absorption() {
        // a·b = min(a + b, 2) on raw indices: 0 is not absorbing.
        let add = (0..9).map(|x| (x / 3).max(x % 3)).collect();
        let mul = (0..9).map(|x| (x / 3 + x % 3).min(2)).collect();
        let t = SemiringTable::from_tables(3, add, mul).unwrap();
        let report = check_semiring_axioms(&t);
        assert_eq!(report.violation("multiplicative absorption").unwrap().witness, vec![1, 0]);
        assert!(!naive_semiring_ok(&t));
    }

    #[test]
    fn structural_errors_are_not_axiom_errors() {
        assert!(matches!(SemiringTable::from_tables(2, vec![0, 1, 1], vec![0; 4]), Err(Error::Malformed(_))));
        assert!(matches!(SemiringTable::from_tables(2, vec![0, 1, 1, 2], vec![0; 4]), Err(Error::Malformed(_))));
        let empty = HyperTable::from_tables(2, vec![Mask(1), Mask(2), Mask(2), Mask(0)], vec![0, 0, 0, 1], HyperKind::Hyperring);
        assert!(matches!(empty, Err(Error::Malformed(_))));
    }

    #[test]
    fn builtin_hyperfields_are_valid() {
        let k = builtin("K").unwrap().hyper().unwrap();
        assert!(check_hyperstructure_axioms(&k).is_valid());
        assert_eq!(k.sum(1, 1), Mask::from_elements([0, 1]));
        let s = builtin("S").unwrap().hyper().unwrap();
        assert!(check_hyperstructure_axioms(&s).is_valid());
        assert_eq!(s.sum(1, 2), Mask::full(3));
        assert_eq!(s.negative(1), Some(2));
        assert_eq!(s.kind(), HyperKind::Hyperfield);
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("Q"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("chain_1"), Err(Error::InvalidArgument(_))));
        assert!(matches!(builtin("F_4"), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn every_builtin_passes_its_checker() {
        for name in ["B", "K", "S", "zero", "chain_2", "chain_3", "chain_5", "F_2", "F_3", "F_7"] {
            match builtin(name).unwrap() {
                Builtin::Semiring(s) => assert!(check_semiring_axioms(&s).is_valid(), "{name}"),
                Builtin::Ring(r) => {
                    assert!(check_semiring_axioms(r.semiring()).is_valid(), "{name}");
                    assert!(check_hyperstructure_axioms(&r.as_hyper()).is_valid(), "{name}");
                }
                Builtin::Hyper(h) => assert!(check_hyperstructure_axioms(&h).is_valid(), "{name}"),
            }
        }
    }

    #[test]
    fn e3_hypergroup_fails_associativity_at_first_witness() {
        // E_3: a_i + a_i = {0, a_i}, a_i + a_j = {a_k}.
        let n = 4;
        let mut add = vec![Mask::EMPTY; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = if a == 0 {
                    Mask::singleton(b)
                } else if b == 0 {
                    Mask::singleton(a)
                } else if a == b {
                    Mask::from_elements([0, a])
                } else {
                    Mask::singleton(6 - a - b)
                };
            }
        }
        let t = HyperTable::from_tables(n, add, vec![], HyperKind::Hypergroup).unwrap();
        let report = check_hyperstructure_axioms(&t);
        assert_eq!(report.violation("hyperaddition associativity").unwrap().witness, vec![1, 1, 2]);
        let laws = hyper_laws(&t);
        assert!(report.violations.iter().all(|v| refails(&laws, v)));
    }

    #[test]
    fn quotient_of_f3_by_full_units_is_krasner() {
        let f3 = RingTable::prime_field(3).unwrap();
        let q = quotient_hyperring(&f3, Mask::from_elements([1, 2])).unwrap();
        assert_eq!(q.class_of, vec![0, 1, 1]);
        assert_eq!(q.table, krasner());
    }

    #[test]
    fn quotient_by_trivial_group_is_the_ring() {
        let f3 = RingTable::prime_field(3).unwrap();
        let q = quotient_hyperring(&f3, Mask::singleton(1)).unwrap();
        assert_eq!(q.table, f3.as_hyper());
        assert!((0..3).all(|a| (0..3).all(|b| q.table.sum(a, b).len() == 1)));
    }

    #[test]
    fn quotient_of_f5_by_square_roots_of_one() {
        let f5 = RingTable::prime_field(5).unwrap();
        let q = quotient_hyperring(&f5, Mask::from_elements([1, 4])).unwrap();
        // classes {0}, {1,4}, {2,3}
        assert_eq!(q.class_of, vec![0, 1, 2, 2, 1]);
        assert_eq!(q.table.size(), 3);
        assert_eq!(q.table.sum(1, 1), Mask::from_elements([0, 2]));
        assert!(check_hyperstructure_axioms(&q.table).is_valid());
    }

    #[test]
    fn quotient_rejects_non_subgroups() {
        let f5 = RingTable::prime_field(5).unwrap();
        assert!(quotient_hyperring(&f5, Mask::from_elements([1, 2])).is_err());
        assert!(quotient_hyperring(&f5, Mask::from_elements([0, 1])).is_err());
        let z4 = RingTable::integers_mod(4).unwrap();
        assert!(quotient_hyperring(&z4, Mask::from_elements([1, 2])).is_err());
    }

    #[test]
    fn full_unit_quotients_of_prime_fields_are_krasner() {
        for p in [3, 5, 7, 11, 13] {
            let fp = RingTable::prime_field(p).unwrap();
            let units = Mask::full(p).difference(Mask::singleton(0));
            let q = quotient_hyperring(&fp, units).unwrap();
            assert!(q.table.find_isomorphism(&krasner()).is_some(), "p = {p}");
        }
    }

    #[test]
    fn rings_as_hyperrings_are_valid() {
        for n in 2..8 {
            let r = RingTable::integers_mod(n).unwrap();
            let h = r.as_hyper();
            assert!(check_hyperstructure_axioms(&h).is_valid(), "Z/{n}");
            assert_eq!(h.kind() == HyperKind::Hyperfield, is_prime(n));
        }
    }
}
