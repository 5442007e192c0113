//! Modules over the Krasner hyperfield as finite projective geometries.
//!
//! The points of a `K`-module `E` are its nonzero elements and the line
//! through distinct points `x`, `y` is `ℓ(x, y) = (x + y) ∪ {x, y}`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmod::{quotient_hmodule, HModule};
use crate::mask::Mask;
use crate::tables::{is_prime, krasner};

fn require_krasner(m: &HModule) -> Result<()> {
    if **m.ring() == krasner() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("base hyperring must be K".into()))
    }
}

/// `x + x = {0, x}` for every nonzero `x`.
pub fn is_kmodule(m: &HModule) -> Result<bool> {
    require_krasner(m)?;
    Ok((1..m.size()).all(|x| m.sum(x, x) == Mask::from_elements([0, x])))
}

fn require_kmodule(m: &HModule) -> Result<()> {
    if is_kmodule(m)? {
        Ok(())
    } else {
        Err(Error::InvalidArgument("not a K-module: some x + x differs from {0, x}".into()))
    }
}

/// Points, lines and incidence of a `K`-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceGeometry {
    /// Nonzero module elements, ascending.
    pub points: Vec<usize>,
    /// Distinct lines as sets of module elements, sorted by bitmask.
    pub lines: Vec<Mask>,
    /// `incidence[p][l]`: point `points[p]` lies on line `lines[l]`.
    pub incidence: Vec<Vec<bool>>,
    /// Fewest points on a line; `None` without lines.
    pub min_line_size: Option<usize>,
    /// Every line has at least four points.
    pub lines_have_four_points: bool,
}

impl IncidenceGeometry {
    pub fn flag_count(&self) -> usize {
        self.incidence.iter().flatten().filter(|&&b| b).count()
    }
}

pub fn projective_geometry(e: &HModule) -> Result<IncidenceGeometry> {
    require_kmodule(e)?;
    let points: Vec<usize> = (1..e.size()).collect();
    let mut lines: Vec<Mask> = Vec::new();
    for &x in &points {
        for &y in points.iter().filter(|&&y| y > x) {
            lines.push(e.sum(x, y).with(x).with(y));
        }
    }
    lines.sort_unstable();
    lines.dedup();
    let incidence = points.iter().map(|&p| lines.iter().map(|l| l.contains(p)).collect()).collect();
    let min_line_size = lines.iter().map(|l| l.len()).min();
    Ok(IncidenceGeometry {
        points,
        lines_have_four_points: min_line_size.map_or(true, |m| m >= 4),
        lines,
        incidence,
        min_line_size,
    })
}

/// Number of incident (point, line) pairs.
pub fn flag_count(e: &HModule) -> Result<usize> {
    Ok(projective_geometry(e)?.flag_count())
}

/// Geometry of `E/{0, x}`; its points are the lines of `E` through `x`.
pub fn quotient_geometry(e: &Arc<HModule>, x: usize) -> Result<IncidenceGeometry> {
    require_kmodule(e)?;
    if x == 0 || x >= e.size() {
        return Err(Error::InvalidArgument(format!("{x} is not a point")));
    }
    let q = quotient_hmodule(e, Mask::from_elements([0, x]))?;
    projective_geometry(&q.quotient)
}

/// Tables of `E_n = {0, a_1, .., a_n}` with `a_i + a_i = {0, a_i}` and
/// `a_i + a_j` the other `n - 2` points, unchecked.
pub fn en_tables(n: usize) -> Result<HModule> {
    if n == 2 {
        return Err(Error::InvalidArgument("E_2 has an empty sum a_1 + a_2".into()));
    }
    let size = n + 1;
    let points = Mask::full(size).difference(Mask::singleton(0));
    let mut add = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            add.push(if a == 0 {
                Mask::singleton(b)
            } else if b == 0 {
                Mask::singleton(a)
            } else if a == b {
                Mask::from_elements([0, a])
            } else {
                points.difference(Mask::from_elements([a, b]))
            });
        }
    }
    let act = (0..2 * size).map(|p| if p < size { 0 } else { p - size }).collect();
    HModule::from_tables(Arc::new(krasner()), size, add, act)
}

/// `E_n` for `n ≥ 4`, validated. `E_3` fails hyperaddition associativity
/// and is rejected with that witness.
pub fn en_module(n: usize) -> Result<HModule> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("E_n needs n >= 4, got {n}")));
    }
    let t = en_tables(n)?;
    HModule::validated(t.ring().clone(), t.size(), t.add_table().to_vec(), t.act_table().to_vec())
}

/// Normalized representatives (first nonzero coordinate `1`) of the points
/// of `P^d(F_p)`, in lexicographic order.
pub fn projective_points(p: usize, d: usize) -> Vec<Vec<usize>> {
    let dim = d + 1;
    let mut out = Vec::new();
    let mut v = vec![0; dim];
    loop {
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(v.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
        }
    }
}

/// The `K`-module of `P^d(F_p)`: element 0 and the `F_p^×`-orbits of
/// nonzero vectors, with `[u] + [v] = {[g₁u + g₂v] : g₁, g₂ ∈ F_p^×}`.
pub fn projective_space_kmodule(p: usize, d: usize) -> Result<HModule> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("p = 2 gives x + x = {0}, not a K-module".into()));
    }
    let points_needed = (0..=d).try_fold(0usize, |acc, i| acc.checked_add(p.checked_pow(i as u32)?));
    let size = points_needed.and_then(|c| c.checked_add(1)).unwrap_or(usize::MAX);
    if size > crate::MAX_ELEMENTS {
        return Err(Error::TooLarge { what: "projective space module".into(), size, limit: crate::MAX_ELEMENTS });
    }
    let points = projective_points(p, d);
    let normalize = |v: &[usize]| -> Option<usize> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = (1..p).find(|&g| g * lead % p == 1).unwrap();
        let w: Vec<usize> = v.iter().map(|&c| c * inv % p).collect();
        Some(points.binary_search(&w).unwrap() + 1)
    };
    let elem = |i: usize| -> Vec<usize> { if i == 0 { vec![0; d + 1] } else { points[i - 1].clone() } };
    let mut add = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let (u, v) = (elem(a), elem(b));
            let mut s = Mask::EMPTY;
            for g1 in 1..p {
                for g2 in 1..p {
                    let w: Vec<usize> = u.iter().zip(&v).map(|(&x, &y)| (g1 * x + g2 * y) % p).collect();
                    s.insert(normalize(&w).unwrap_or(0));
                }
            }
            add.push(s);
        }
    }
    let act = (0..2 * size).map(|q| if q < size { 0 } else { q - size }).collect();
    let m = HModule::validated(Arc::new(krasner()), size, add, act)?;
    require_kmodule(&m)?;
    Ok(m)
}
