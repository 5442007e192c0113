//! Element maps between finite structures.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::search::{is_hom, sum_violation, Structure, SumRule};

/// Which distinguished class a morphism belongs to.
///
/// For semiring modules the classes are the admissible monos and epis, for
/// lattices the normal monos and epis, for hypermodules the strict injections
/// and strict surjections. A morphism in both classes is an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismClass {
    AdmissibleMono,
    AdmissibleEpi,
    Iso,
    Neither,
}

impl MorphismClass {
    pub(crate) fn from_flags(mono: bool, epi: bool) -> Self {
        match (mono, epi) {
            (true, true) => MorphismClass::Iso,
            (true, false) => MorphismClass::AdmissibleMono,
            (false, true) => MorphismClass::AdmissibleEpi,
            (false, false) => MorphismClass::Neither,
        }
    }

    pub fn is_mono(self) -> bool {
        matches!(self, MorphismClass::AdmissibleMono | MorphismClass::Iso)
    }

    pub fn is_epi(self) -> bool {
        matches!(self, MorphismClass::AdmissibleEpi | MorphismClass::Iso)
    }
}

impl fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismClass::AdmissibleMono => "admissible_mono",
            MorphismClass::AdmissibleEpi => "admissible_epi",
            MorphismClass::Iso => "iso",
            MorphismClass::Neither => "neither",
        })
    }
}

/// A structure-preserving map given by its element table.
///
/// The constructors check the morphism conditions; `map[x]` is the image of
/// element `x`.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism<O> {
    source: Arc<O>,
    target: Arc<O>,
    map: Vec<usize>,
}

impl<O: Structure> Morphism<O> {
    /// Checks `f(0) = 0`, compatibility with the action and
    /// `f(a + b) ⊆ f(a) + f(b)` (equality for single-valued sums).
    pub fn new(source: Arc<O>, target: Arc<O>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::NotMorphism(format!(
                "map has {} entries for a source of size {}",
                map.len(),
                source.len()
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::NotMorphism(format!("image {y} is outside the target")));
        }
        if !is_hom(&*source, &*target, &map, SumRule::Contained) {
            return Err(Error::NotMorphism(match sum_violation(&*source, &*target, &map, SumRule::Contained) {
                Some((a, b)) => format!("addition not preserved at ({a},{b})"),
                None => "zero or scalar action not preserved".into(),
            }));
        }
        Ok(Morphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<O>, target: Arc<O>, map: Vec<usize>) -> Self {
        debug_assert!(is_hom(&*source, &*target, &map, SumRule::Contained));
        Morphism { source, target, map }
    }

    pub fn identity(object: Arc<O>) -> Self {
        let map = (0..object.len()).collect();
        Morphism { source: object.clone(), target: object, map }
    }

    pub fn zero(source: Arc<O>, target: Arc<O>) -> Self {
        let map = vec![target.zero(); source.len()];
        Morphism { source, target, map }
    }

    pub fn source(&self) -> &Arc<O> {
        &self.source
    }

    pub fn target(&self) -> &Arc<O> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.len()
    }

    pub fn image(&self) -> Mask {
        self.map.iter().copied().collect()
    }

    pub fn image_of(&self, subset: Mask) -> Mask {
        subset.map(&self.map)
    }

    pub fn preimage(&self, subset: Mask) -> Mask {
        (0..self.map.len()).filter(|&x| subset.contains(self.map[x])).collect()
    }

    /// `f⁻¹(0)`.
    pub fn kernel(&self) -> Mask {
        self.preimage(Mask::singleton(self.target.zero()))
    }
}

impl<O: Structure + PartialEq> Morphism<O> {
    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism<O>) -> Result<Self> {
        if !Arc::ptr_eq(&self.target, &next.source) && *self.target != *next.source {
            return Err(Error::InvalidArgument("morphisms are not composable".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        Ok(Morphism { source: self.source.clone(), target: next.target.clone(), map })
    }
}

impl<O> fmt::Debug for Morphism<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Morphism").field(&self.map).finish()
    }
}
