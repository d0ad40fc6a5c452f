//! The affine Weyl group `W_k = pQ ⋊ W` at shifted level `k + h^vee = p/q`,
//! its dot action, the fundamental alcove, regularity and linkage.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rootsys::{in_multiple_of, RootSystem, Weight};
use crate::weyl::{self, dominant_rep, WeylElement};

const ALCOVE_ITERATION_CAP: usize = 1_000_000;

/// Shifted level `t = p/q = k + h^vee`, with `p, q > 0` coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    p: u64,
    q: u64,
}

impl Level {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidLevel(format!("{p}/{q}: p and q must be positive")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidLevel(format!("{p}/{q}: p and q must be coprime")));
        }
        Ok(Self { p, q })
    }

    /// Level from `k`, reducing `k + h^vee` to lowest terms.
    pub fn from_k(rs: &RootSystem, k: &BigRational) -> Result<Self> {
        let t = k + BigRational::from_integer(rs.dual_coxeter().into());
        if !t.is_positive() {
            return Err(Error::InvalidLevel(format!("k + h^vee = {t} is not positive")));
        }
        let conv = |x: &BigInt| {
            u64::try_from(x).map_err(|_| Error::InvalidLevel(format!("{t} is too large")))
        };
        Level::new(conv(t.numer())?, conv(t.denom())?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p/q`.
    pub fn shifted(&self) -> BigRational {
        BigRational::new(self.p.into(), self.q.into())
    }

    /// `k = p/q - h^vee`.
    pub fn k(&self, rs: &RootSystem) -> BigRational {
        self.shifted() - BigRational::from_integer(rs.dual_coxeter().into())
    }

    fn p_ratio(&self) -> BigRational {
        BigRational::from_integer(self.p.into())
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A weight paired with a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledWeight {
    pub weight: Weight,
    pub level: Level,
}

/// `(t_beta, w)` acting by `lambda -> w . lambda + beta`.
///
/// Ordered by translation coordinates, then by the canonical word of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    translation: Weight,
    finite: WeylElement,
}

impl AffineWeylElement {
    pub fn new(translation: Weight, finite: WeylElement) -> Self {
        Self {
            translation,
            finite,
        }
    }

    pub fn identity(rank: usize) -> Self {
        Self::new(Weight::zero(rank), WeylElement::identity())
    }

    /// Translation given in simple-root coordinates.
    pub fn from_root_coords(rs: &RootSystem, coords: &[BigRational], finite: WeylElement) -> Self {
        Self::new(rs.from_root_coords(coords), finite)
    }

    pub fn translation(&self) -> &Weight {
        &self.translation
    }

    pub fn finite(&self) -> &WeylElement {
        &self.finite
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.finite.is_identity()
    }

    pub fn translation_root_coords(&self, rs: &RootSystem) -> Vec<BigRational> {
        rs.to_root_coords(&self.translation)
    }

    /// True when the translation lies in `pQ`.
    pub fn in_group(&self, rs: &RootSystem, level: Level) -> bool {
        self.translation_root_coords(rs)
            .iter()
            .all(|c| in_multiple_of(c, level.p))
    }

    /// `(t_beta, w)(t_gamma, v) = (t_{beta + w(gamma)}, wv)`.
    pub fn compose(&self, rs: &RootSystem, other: &AffineWeylElement) -> AffineWeylElement {
        AffineWeylElement {
            translation: &self.translation + &self.finite.act(rs, &other.translation),
            finite: self.finite.compose(rs, &other.finite),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> AffineWeylElement {
        let inv = self.finite.inverse(rs);
        AffineWeylElement {
            translation: -&inv.act(rs, &self.translation),
            finite: inv,
        }
    }

    /// Renders as `t[c_1,...,c_n]*word`, with the translation in simple-root
    /// coordinates.
    pub fn display(&self, rs: &RootSystem) -> String {
        let coords = self.translation_root_coords(rs);
        format!("t{}*{}", Weight::new(coords), self.finite)
    }

    /// Action on `mu = lambda + rho`: `mu -> w(mu) + beta`.
    fn act_shifted(&self, rs: &RootSystem, mu: &Weight) -> Weight {
        &self.finite.act(rs, mu) + &self.translation
    }
}

/// `(t_beta, w) . lambda = w . lambda + beta`.
pub fn affine_apply(
    rs: &RootSystem,
    g: &AffineWeylElement,
    lam: &Weight,
    level: Level,
) -> Result<Weight> {
    rs.check_rank(lam)?;
    rs.check_rank(&g.translation)?;
    if !g.in_group(rs, level) {
        return Err(Error::TranslationNotInLattice(g.translation.clone()));
    }
    Ok(&g.finite.dot(rs, lam) + &g.translation)
}

/// `(lambda + rho, theta)`.
pub fn theta_height(rs: &RootSystem, lam: &Weight) -> BigRational {
    rs.bilinear(&(lam + rs.rho()), rs.theta())
}

/// Membership in the fundamental alcove `C_aff`; `strict` selects the open
/// alcove, otherwise its closure.
pub fn in_fundamental_alcove(rs: &RootSystem, lw: &LeveledWeight, strict: bool) -> bool {
    let mu = &lw.weight + rs.rho();
    let h = rs.bilinear(&mu, rs.theta());
    let p = lw.level.p_ratio();
    if strict {
        mu.coords().iter().all(|c| c.is_positive()) && h.is_positive() && h < p
    } else {
        mu.coords().iter().all(|c| !c.is_negative()) && !h.is_negative() && h <= p
    }
}

/// Trivial dot-stabilizer in `W_k`: `<lambda + rho, alpha^vee>` avoids `pZ`
/// for every positive root.
pub fn is_regular(rs: &RootSystem, lam: &Weight, level: Level) -> bool {
    let mu = lam + rs.rho();
    (0..rs.positive_roots().len()).all(|i| !in_multiple_of(&rs.coroot_pairing(&mu, i), level.p))
}

/// Open-alcove membership together with regularity.
pub fn is_regular_in_alcove(rs: &RootSystem, lam: &Weight, level: Level) -> bool {
    in_fundamental_alcove(
        rs,
        &LeveledWeight {
            weight: lam.clone(),
            level,
        },
        true,
    ) && is_regular(rs, lam, level)
}

/// The affine reflection through the wall `(mu, theta) = p`, written as
/// `(t_{p theta}, s_theta)`.
pub fn theta_wall_reflection(rs: &RootSystem, level: Level) -> AffineWeylElement {
    let theta_idx = rs
        .positive_roots()
        .iter()
        .position(|r| r == rs.theta())
        .expect("theta is a positive root");
    AffineWeylElement::new(
        rs.theta().scale(&BigInt::from(level.p)),
        weyl::root_reflection(rs, theta_idx),
    )
}

/// Result of [`alcove_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveRep {
    /// Representative in the closed fundamental alcove.
    pub rep: Weight,
    /// `element . rep = lambda`.
    pub element: AffineWeylElement,
    pub regular: bool,
}

/// Walks an integral weight into the closed fundamental alcove, alternating
/// finite dominant reflection with reflection through the `theta` wall.
pub fn alcove_rep(rs: &RootSystem, lam: &Weight, level: Level) -> Result<AlcoveRep> {
    rs.check_rank(lam)?;
    if !lam.is_integral() {
        return Err(Error::NotIntegral(lam.clone()));
    }
    let p = level.p_ratio();
    let wall = theta_wall_reflection(rs, level);
    let mut mu = lam + rs.rho();
    // h maps lam + rho to the current mu.
    let mut h = AffineWeylElement::identity(rs.rank());
    for _ in 0..ALCOVE_ITERATION_CAP {
        let d = dominant_rep(rs, &mu, false);
        if !d.element.is_identity() {
            h = AffineWeylElement::new(Weight::zero(rs.rank()), d.element).compose(rs, &h);
            mu = d.weight;
        }
        let height = rs.bilinear(&mu, rs.theta());
        if height <= p {
            let rep = &mu - rs.rho();
            return Ok(AlcoveRep {
                regular: is_regular(rs, lam, level),
                element: h.inverse(rs),
                rep,
            });
        }
        mu = wall.act_shifted(rs, &mu);
        h = wall.compose(rs, &h);
    }
    Err(Error::IterationCap("alcove_rep"))
}

/// Integral dominant weights with `0 < (lambda + rho, theta) < p`, sorted.
pub fn enumerate_dominant(rs: &RootSystem, level: Level) -> Vec<Weight> {
    // (lambda + rho, theta) = sum_i (lambda_i + 1) comark_i, so this is
    // sum_i lambda_i comark_i < p - (rho, theta).
    let limit = level.p as i64 - rs.theta_comarks().iter().sum::<i64>();
    let mut out = Vec::new();
    if limit > 0 {
        bounded_dominant(rs.theta_comarks(), limit - 1, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Integral dominant weights with `(lambda + rho, theta) <= bound`, sorted.
pub fn dominant_up_to(rs: &RootSystem, bound: &BigRational) -> Vec<Weight> {
    let floor = bound.floor().to_integer();
    let limit = i64::try_from(&floor).unwrap_or(i64::MAX) - rs.theta_comarks().iter().sum::<i64>();
    let mut out = Vec::new();
    if limit >= 0 {
        bounded_dominant(rs.theta_comarks(), limit, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

fn bounded_dominant(comarks: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
    let i = prefix.len();
    if i == comarks.len() {
        out.push(Weight::from_ints(prefix.iter().copied()));
        return;
    }
    let mut c = 0;
    while c * comarks[i] <= budget {
        prefix.push(c);
        bounded_dominant(comarks, budget - c * comarks[i], prefix, out);
        prefix.pop();
        c += 1;
    }
}

/// Same `W_k` dot-orbit.
pub fn linked(rs: &RootSystem, lam: &Weight, mu: &Weight, level: Level) -> Result<bool> {
    if lam == mu {
        return Ok(true);
    }
    Ok(alcove_rep(rs, lam, level)?.rep == alcove_rep(rs, mu, level)?.rep)
}

/// `(lambda + rho, theta) + 4p`.
pub fn default_orbit_bound(rs: &RootSystem, lam: &Weight, level: Level) -> BigRational {
    theta_height(rs, lam) + BigRational::from_integer((4 * level.p).into())
}

/// The dominant part of the `W_k` dot-orbit of an open-alcove weight, truncated
/// to `(lambda' + rho, theta) <= bound`, sorted by weight.
pub fn dominant_orbit(
    rs: &RootSystem,
    lam: &Weight,
    level: Level,
    bound: &BigRational,
) -> Result<Vec<(AffineWeylElement, Weight)>> {
    rs.check_rank(lam)?;
    let lw = LeveledWeight {
        weight: lam.clone(),
        level,
    };
    if !lam.is_integral() || !in_fundamental_alcove(rs, &lw, true) {
        return Err(Error::NotInAlcove(lam.clone()));
    }
    let mut out = Vec::new();
    for nu in dominant_up_to(rs, bound) {
        let r = alcove_rep(rs, &nu, level)?;
        if &r.rep == lam {
            out.push((r.element, nu));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c.iter().copied())
    }

    fn lvl(p: u64) -> Level {
        Level::new(p, 1).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn saff_a1(a1: &RootSystem) -> AffineWeylElement {
        AffineWeylElement::from_root_coords(a1, &[q(5)], WeylElement::simple(a1, 0).unwrap())
    }

    #[test]
    fn level_validation() {
        assert!(Level::new(4, 2).is_err());
        assert!(Level::new(0, 1).is_err());
        let a1 = rs("A1");
        let l = Level::from_k(&a1, &BigRational::new((-1).into(), 2.into())).unwrap();
        assert_eq!((l.p(), l.q()), (3, 2));
        assert_eq!(l.k(&a1), BigRational::new((-1).into(), 2.into()));
        assert!(Level::from_k(&a1, &q(-2)).is_err());
    }

    #[test]
    fn affine_apply_examples() {
        let a1 = rs("A1");
        let t = AffineWeylElement::from_root_coords(&a1, &[q(5)], WeylElement::identity());
        assert_eq!(affine_apply(&a1, &t, &w(&[0]), lvl(5)).unwrap(), w(&[10]));
        assert_eq!(affine_apply(&a1, &saff_a1(&a1), &w(&[0]), lvl(5)).unwrap(), w(&[8]));
        let id = AffineWeylElement::identity(1);
        assert_eq!(affine_apply(&a1, &id, &w(&[7]), lvl(5)).unwrap(), w(&[7]));
        let bad = AffineWeylElement::from_root_coords(&a1, &[q(3)], WeylElement::identity());
        assert!(matches!(
            affine_apply(&a1, &bad, &w(&[0]), lvl(5)),
            Err(Error::TranslationNotInLattice(_))
        ));
        assert_eq!(theta_wall_reflection(&a1, lvl(5)), saff_a1(&a1));
    }

    #[test]
    fn composition_law() {
        let a2 = rs("A2");
        let l = lvl(4);
        let g = AffineWeylElement::from_root_coords(&a2, &[q(4), q(0)], WeylElement::simple(&a2, 1).unwrap());
        let h = AffineWeylElement::from_root_coords(&a2, &[q(-4), q(8)], WeylElement::from_word(&a2, &[0, 1]).unwrap());
        let lam = w(&[3, -5]);
        let gh = g.compose(&a2, &h);
        assert_eq!(
            affine_apply(&a2, &gh, &lam, l).unwrap(),
            affine_apply(&a2, &g, &affine_apply(&a2, &h, &lam, l).unwrap(), l).unwrap()
        );
        assert!(g.compose(&a2, &g.inverse(&a2)).is_identity());
    }

    #[test]
    fn alcove_membership_examples() {
        let a1 = rs("A1");
        let lw = |c: &[i64], p| LeveledWeight { weight: w(c), level: lvl(p) };
        assert!(in_fundamental_alcove(&a1, &lw(&[3], 5), true));
        assert!(!in_fundamental_alcove(&a1, &lw(&[4], 5), true));
        assert!(in_fundamental_alcove(&a1, &lw(&[4], 5), false));
        let a2 = rs("A2");
        assert!(in_fundamental_alcove(&a2, &lw(&[1, 0], 4), true));
    }

    #[test]
    fn alcove_rep_examples() {
        let a1 = rs("A1");
        let r = alcove_rep(&a1, &w(&[8]), lvl(5)).unwrap();
        assert_eq!(r.rep, w(&[0]));
        assert_eq!(r.element, saff_a1(&a1));
        assert!(r.regular);

        let r = alcove_rep(&a1, &w(&[4]), lvl(5)).unwrap();
        assert_eq!(r.rep, w(&[4]));
        assert!(r.element.is_identity());
        assert!(!r.regular);

        let r = alcove_rep(&a1, &w(&[2]), lvl(5)).unwrap();
        assert_eq!(r.rep, w(&[2]));
        assert!(r.element.is_identity());
        assert!(r.regular);

        assert!(matches!(
            alcove_rep(&a1, &"[1/2]".parse().unwrap(), lvl(5)),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn enumerate_dominant_examples() {
        let a1 = rs("A1");
        assert_eq!(enumerate_dominant(&a1, lvl(5)), vec![w(&[0]), w(&[1]), w(&[2]), w(&[3])]);
        assert!(enumerate_dominant(&a1, lvl(1)).is_empty());
        let a2 = rs("A2");
        assert_eq!(enumerate_dominant(&a2, lvl(4)), vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]);
    }

    #[test]
    fn linked_examples() {
        let a1 = rs("A1");
        assert!(linked(&a1, &w(&[0]), &w(&[8]), lvl(5)).unwrap());
        assert!(!linked(&a1, &w(&[0]), &w(&[2]), lvl(5)).unwrap());
        assert!(linked(&a1, &w(&[-7]), &w(&[-7]), lvl(5)).unwrap());
    }

    #[test]
    fn dominant_orbit_examples() {
        let a1 = rs("A1");
        let weights = |lam: &[i64], p, bound| -> Vec<Weight> {
            dominant_orbit(&a1, &w(lam), lvl(p), &q(bound))
                .unwrap()
                .into_iter()
                .map(|(_, nu)| nu)
                .collect()
        };
        // The bound applies to (lambda' + rho, theta) = m + 1.
        assert_eq!(weights(&[0], 5, 25), vec![w(&[0]), w(&[8]), w(&[10]), w(&[18]), w(&[20])]);
        assert_eq!(weights(&[2], 5, 25), vec![w(&[2]), w(&[6]), w(&[12]), w(&[16]), w(&[22])]);
        let a2 = rs("A2");
        let orb = dominant_orbit(&a2, &w(&[0, 0]), lvl(4), &q(2)).unwrap();
        assert_eq!(orb, vec![(AffineWeylElement::identity(2), w(&[0, 0]))]);
        assert!(matches!(
            dominant_orbit(&a1, &w(&[4]), lvl(5), &q(25)),
            Err(Error::NotInAlcove(_))
        ));
    }

    #[test]
    fn display_format() {
        let a1 = rs("A1");
        assert_eq!(saff_a1(&a1).display(&a1), "t[5]*s1");
        assert_eq!(AffineWeylElement::identity(1).display(&a1), "t[0]*e");
    }
}
