//! Admissible weights and submodule labels of Weyl modules.
//!
//! A submodule of `V_lambda^k` is recorded only through the affine Weyl group
//! elements labelling the highest weights `g . lambda` of its singular
//! generators. Lattice operations are the set operations on labels.

use std::collections::BTreeSet;

use crate::affine::{
    affine_apply, enumerate_dominant, in_fundamental_alcove, is_regular, theta_wall_reflection,
    AffineWeylElement, Level, LeveledWeight,
};
use crate::error::{Error, Result};
use crate::finchar::TensorEngine;
use crate::rootsys::{RootSystem, Weight};
use crate::translate::{require_regular_alcove, translate_weyl_with};

/// Regular integral dominant weights of the open alcove at `level`, sorted.
pub fn admissible_list(rs: &RootSystem, level: Level) -> Vec<Weight> {
    enumerate_dominant(rs, level)
        .into_iter()
        .filter(|lam| is_regular(rs, lam, level))
        .collect()
}

/// Label of the singular vector generating the maximal submodule of
/// `V_0^k`: the reflection through the wall `(mu, theta) = p`.
pub fn singular_generator_label(rs: &RootSystem, level: Level) -> Result<AffineWeylElement> {
    let zero = Weight::zero(rs.rank());
    if !is_regular(rs, &zero, level) {
        return Err(Error::Singular {
            weight: zero,
            p: level.p(),
        });
    }
    require_regular_alcove(rs, &zero, level)?;
    Ok(theta_wall_reflection(rs, level))
}

/// Generator labels of a submodule of `V_base^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleLabels {
    base: Weight,
    level: Level,
    generators: BTreeSet<AffineWeylElement>,
}

impl SubmoduleLabels {
    pub fn new<I>(rs: &RootSystem, base: Weight, level: Level, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = AffineWeylElement>,
    {
        rs.check_rank(&base)?;
        let lw = LeveledWeight {
            weight: base.clone(),
            level,
        };
        if !base.is_integral() || !in_fundamental_alcove(rs, &lw, true) {
            return Err(Error::NotInAlcove(base));
        }
        let generators: BTreeSet<_> = generators.into_iter().collect();
        for g in &generators {
            if g.is_identity() {
                return Err(Error::Precondition("the identity does not label a proper submodule".into()));
            }
            let image = affine_apply(rs, g, &base, level)?;
            if !image.is_dominant() {
                return Err(Error::NotDominant(image));
            }
        }
        Ok(Self {
            base,
            level,
            generators,
        })
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn generators(&self) -> &BTreeSet<AffineWeylElement> {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Highest weights `g . base` of the generators, sorted.
    pub fn singular_weights(&self, rs: &RootSystem) -> Result<Vec<Weight>> {
        let mut out = self
            .generators
            .iter()
            .map(|g| affine_apply(rs, g, &self.base, self.level))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    }

    fn same_module(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.level != other.level {
            return Err(Error::Precondition("label sets over different modules".into()));
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_module(other)?;
        Ok(Self {
            generators: self.generators.union(&other.generators).cloned().collect(),
            ..self.clone()
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_module(other)?;
        Ok(Self {
            generators: self.generators.intersection(&other.generators).cloned().collect(),
            ..self.clone()
        })
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_module(other)?;
        Ok(self.generators.is_subset(&other.generators))
    }
}

/// Moves labels over `V_0^k` to labels over `V_lambda^k`, re-verifying each
/// generator through the translation functor.
pub fn transport(rs: &RootSystem, labels: &SubmoduleLabels, lam: &Weight) -> Result<SubmoduleLabels> {
    if !labels.base.is_zero() {
        return Err(Error::Precondition(format!(
            "transport starts from base [0], got {}",
            labels.base
        )));
    }
    require_regular_alcove(rs, &labels.base, labels.level)?;
    require_regular_alcove(rs, lam, labels.level)?;
    let mut engine = TensorEngine::new(rs);
    for g in &labels.generators {
        translate_weyl_with(&mut engine, g, &labels.base, lam, labels.level).map_err(|e| {
            Error::Inconsistency(format!("generator {} failed translation: {e}", g.display(rs)))
        })?;
    }
    SubmoduleLabels::new(rs, lam.clone(), labels.level, labels.generators.iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::dominant_orbit;
    use num_rational::BigRational;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c.iter().copied())
    }

    fn lvl(p: u64) -> Level {
        Level::new(p, 1).unwrap()
    }

    #[test]
    fn admissible_examples() {
        let a1 = rs("A1");
        assert_eq!(admissible_list(&a1, lvl(5)), vec![w(&[0]), w(&[1]), w(&[2]), w(&[3])]);
        assert_eq!(admissible_list(&a1, lvl(4)), vec![w(&[0]), w(&[1]), w(&[2])]);
        assert_eq!(admissible_list(&rs("A2"), lvl(3)), vec![w(&[0, 0])]);
    }

    #[test]
    fn generator_examples() {
        let a1 = rs("A1");
        for (p, image) in [(5, 8), (3, 4)] {
            let g = singular_generator_label(&a1, lvl(p)).unwrap();
            assert_eq!(affine_apply(&a1, &g, &w(&[0]), lvl(p)).unwrap(), w(&[image]));
        }
        let a2 = rs("A2");
        let g = singular_generator_label(&a2, lvl(4)).unwrap();
        assert_eq!(affine_apply(&a2, &g, &w(&[0, 0]), lvl(4)).unwrap(), w(&[2, 2]));
        assert!(matches!(singular_generator_label(&a2, lvl(2)), Err(Error::Singular { .. })));
        assert!(singular_generator_label(&a1, lvl(1)).is_err());
    }

    #[test]
    fn generator_is_minimal_orbit_element_a1() {
        let a1 = rs("A1");
        for p in 2..=20u64 {
            let g = singular_generator_label(&a1, lvl(p)).unwrap();
            let bound = BigRational::from_integer((4 * p as i64).into());
            let orbit = dominant_orbit(&a1, &w(&[0]), lvl(p), &bound).unwrap();
            let first = orbit.iter().find(|(h, _)| !h.is_identity()).unwrap();
            assert_eq!(first.0, g, "p={p}");
        }
    }

    #[test]
    fn transport_examples() {
        let a1 = rs("A1");
        let g1 = singular_generator_label(&a1, lvl(5)).unwrap();
        let labels = SubmoduleLabels::new(&a1, w(&[0]), lvl(5), [g1.clone()]).unwrap();
        let moved = transport(&a1, &labels, &w(&[2])).unwrap();
        assert_eq!(moved.base(), &w(&[2]));
        assert_eq!(moved.singular_weights(&a1).unwrap(), vec![w(&[6])]);

        let empty = SubmoduleLabels::new(&a1, w(&[0]), lvl(5), []).unwrap();
        assert!(transport(&a1, &empty, &w(&[2])).unwrap().is_empty());

        let bound = BigRational::from_integer(20.into());
        let orbit = dominant_orbit(&a1, &w(&[0]), lvl(5), &bound).unwrap();
        let g2 = orbit.iter().map(|(g, _)| g).find(|g| !g.is_identity() && **g != g1).unwrap().clone();
        let big = SubmoduleLabels::new(&a1, w(&[0]), lvl(5), [g1, g2]).unwrap();
        assert!(labels.is_subset(&big).unwrap());
        let (small_t, big_t) = (transport(&a1, &labels, &w(&[2])).unwrap(), transport(&a1, &big, &w(&[2])).unwrap());
        assert!(small_t.is_subset(&big_t).unwrap());
        assert_eq!(small_t.union(&big_t).unwrap(), big_t);
    }

    #[test]
    fn labels_reject_identity_and_bad_base() {
        let a1 = rs("A1");
        assert!(SubmoduleLabels::new(&a1, w(&[0]), lvl(5), [AffineWeylElement::identity(1)]).is_err());
        assert!(SubmoduleLabels::new(&a1, w(&[4]), lvl(5), []).is_err());
        let labels = SubmoduleLabels::new(&a1, w(&[1]), lvl(5), []).unwrap();
        assert!(transport(&a1, &labels, &w(&[2])).is_err());
    }
}
