//! Translation functors at the level of Weyl-module labels and Weyl-basis
//! characters.
//!
//! `T_mu^lambda` sends `A` to `p_lambda(V_tau^k ⊗̇ A)` with `tau` the dominant
//! conjugate of `lambda - mu`. The fusion product `V_a^k ⊗̇ V_b^k` has a Weyl
//! filtration with the finite tensor multiplicities, so every statement here
//! reduces to finite characters plus linkage.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::affine::{
    self, affine_apply, alcove_rep, in_fundamental_alcove, is_regular, theta_height, AffineWeylElement,
    Level, LeveledWeight,
};
use crate::error::{Error, Result};
use crate::finchar::{self, TensorEngine};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{self, dominant_rep};

/// A validated triple `(lambda_l, lambda, lambda_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationDatum {
    pub lambda_l: Weight,
    pub lambda_r: Weight,
    pub lambda: Weight,
    pub level: Level,
}

/// Multiset of highest weights of filtration factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiltrationMultiset {
    parts: BTreeMap<Weight, u64>,
}

impl FiltrationMultiset {
    /// Zero multiplicities are dropped.
    pub fn from_parts(parts: BTreeMap<Weight, u64>) -> Self {
        Self {
            parts: parts.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn parts(&self) -> &BTreeMap<Weight, u64> {
        &self.parts
    }

    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.parts.get(nu).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }
}

impl From<finchar::DecompositionMultiset> for FiltrationMultiset {
    fn from(d: finchar::DecompositionMultiset) -> Self {
        Self {
            parts: d.into_parts(),
        }
    }
}

fn in_p_plus_k(rs: &RootSystem, lam: &Weight, level: Level) -> bool {
    lam.is_dominant_integral()
        && in_fundamental_alcove(
            rs,
            &LeveledWeight {
                weight: lam.clone(),
                level,
            },
            true,
        )
}

/// Errors unless `lam` is integral, in the open alcove and off every affine wall.
pub fn require_regular_alcove(rs: &RootSystem, lam: &Weight, level: Level) -> Result<()> {
    rs.check_rank(lam)?;
    if !in_p_plus_k(rs, lam, level) {
        return Err(Error::NotInAlcove(lam.clone()));
    }
    if !is_regular(rs, lam, level) {
        return Err(Error::Singular {
            weight: lam.clone(),
            p: level.p(),
        });
    }
    Ok(())
}

/// Validates a translation datum; `lambda_l - lambda` is tested against the
/// plain W-orbit of `lambda_r`.
pub fn check_datum(
    rs: &RootSystem,
    lambda_l: &Weight,
    lambda_r: &Weight,
    lambda: &Weight,
    level: Level,
) -> Result<TranslationDatum> {
    for (name, w) in [("lambda_l", lambda_l), ("lambda_r", lambda_r), ("lambda", lambda)] {
        rs.check_rank(w)?;
        if !in_p_plus_k(rs, w, level) {
            return Err(Error::InvalidDatum(format!("{name}={w} is not in P^+_k at p={}", level.p())));
        }
    }
    let diff = lambda_l - lambda;
    if &dominant_rep(rs, &diff, false).weight != lambda_r {
        return Err(Error::InvalidDatum(format!(
            "lambda_l - lambda = {diff} is not in the W-orbit of lambda_r={lambda_r}"
        )));
    }
    Ok(TranslationDatum {
        lambda_l: lambda_l.clone(),
        lambda_r: lambda_r.clone(),
        lambda: lambda.clone(),
        level,
    })
}

/// The dominant W-conjugate of `lambda - mu`.
pub fn translation_weight(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Weight> {
    rs.check_rank(lam)?;
    rs.check_rank(mu)?;
    let diff = lam - mu;
    if !diff.is_integral() {
        return Err(Error::NotIntegral(diff));
    }
    Ok(dominant_rep(rs, &diff, false).weight)
}

/// Weyl-filtration multiplicities of `V_lambda^k ⊗̇ V_mu^k`.
pub fn kl_weyl_filtration(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<FiltrationMultiset> {
    kl_weyl_filtration_with(&mut TensorEngine::new(rs), lam, mu)
}

pub fn kl_weyl_filtration_with(
    engine: &mut TensorEngine<'_>,
    lam: &Weight,
    mu: &Weight,
) -> Result<FiltrationMultiset> {
    engine.decompose(lam, mu).map(Into::into)
}

/// `p_target`: keeps the factors linked to `target`.
pub fn project_linkage(
    rs: &RootSystem,
    parts: &FiltrationMultiset,
    target: &Weight,
    level: Level,
) -> Result<FiltrationMultiset> {
    rs.check_rank(target)?;
    if !in_p_plus_k(rs, target, level) {
        return Err(Error::NotInAlcove(target.clone()));
    }
    let mut kept = BTreeMap::new();
    for (nu, &m) in &parts.parts {
        if &alcove_rep(rs, nu, level)?.rep == target {
            kept.insert(nu.clone(), m);
        }
    }
    Ok(FiltrationMultiset { parts: kept })
}

/// Factors of `T_mu^lambda(V_{g.mu}^k)`: the projection of
/// `V_tau ⊗̇ V_{g.mu}` onto the block of `lambda`.
pub fn translate_weyl_survivors(
    engine: &mut TensorEngine<'_>,
    g: &AffineWeylElement,
    mu: &Weight,
    lam: &Weight,
    level: Level,
) -> Result<FiltrationMultiset> {
    let rs = engine.root_system();
    require_regular_alcove(rs, mu, level)?;
    require_regular_alcove(rs, lam, level)?;
    let source = affine_apply(rs, g, mu, level)?;
    if !source.is_dominant_integral() {
        return Err(Error::Precondition(format!(
            "g.mu = {source} is not dominant"
        )));
    }
    let tau = translation_weight(rs, lam, mu)?;
    let filtration = kl_weyl_filtration_with(engine, &tau, &source)?;
    project_linkage(rs, &filtration, lam, level)
}

/// `T_mu^lambda(V_{g.mu}^k) = V_{g.lambda}^k`, returning `g.lambda` after
/// checking that it is the single factor surviving the projection.
pub fn translate_weyl(
    rs: &RootSystem,
    g: &AffineWeylElement,
    mu: &Weight,
    lam: &Weight,
    level: Level,
) -> Result<Weight> {
    translate_weyl_with(&mut TensorEngine::new(rs), g, mu, lam, level)
}

pub fn translate_weyl_with(
    engine: &mut TensorEngine<'_>,
    g: &AffineWeylElement,
    mu: &Weight,
    lam: &Weight,
    level: Level,
) -> Result<Weight> {
    let survivors = translate_weyl_survivors(engine, g, mu, lam, level)?;
    let target = affine_apply(engine.root_system(), g, lam, level)?;
    single_survivor(&survivors, &target)?;
    Ok(target)
}

fn single_survivor(survivors: &FiltrationMultiset, target: &Weight) -> Result<()> {
    if survivors.parts.len() == 1 && survivors.multiplicity(target) == 1 {
        Ok(())
    } else {
        let listed: Vec<String> = survivors
            .parts
            .iter()
            .map(|(nu, m)| format!("{nu}:{m}"))
            .collect();
        Err(Error::Inconsistency(format!(
            "expected the single survivor {target}:1, found {{{}}}",
            listed.join(", ")
        )))
    }
}

/// All pairs `(w_1, nu)` with `nu` a weight of `V_tau`, `w_1 ∈ W_k` and
/// `w_1 . lambda = g . mu + nu`, where `tau` is the dominant conjugate of
/// `lambda - mu`.
///
/// The search is exhaustive: for each finite part `w` the translation is
/// forced to `g.mu + nu + rho - w(lambda + rho)`, which is kept when it lies in
/// `pQ`.
pub fn weight_geometry_solutions(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
    g: &AffineWeylElement,
    level: Level,
) -> Result<Vec<(AffineWeylElement, Weight)>> {
    let tau = translation_weight(rs, lam, mu)?;
    let source = affine_apply(rs, g, mu, level)?;
    let lam_rho = lam + rs.rho();
    let shifted = &source + rs.rho();
    let finite: Vec<(weyl::WeylElement, Weight)> = weyl::elements(rs)
        .into_iter()
        .map(|w| {
            let image = w.act(rs, &lam_rho);
            (w, image)
        })
        .collect();
    let mut out = Vec::new();
    for nu in finchar::weight_multiplicities(rs, &tau)?.terms().keys() {
        let target = &shifted + nu;
        for (w, image) in &finite {
            let candidate = AffineWeylElement::new(&target - image, w.clone());
            if candidate.in_group(rs, level) {
                out.push((candidate, nu.clone()));
            }
        }
    }
    Ok(out)
}

/// Brute-force check of the weight-geometry lemma for one `g`: every solution
/// of `w_1 . lambda = g . mu + nu` has `w_1 = g` and `nu ∈ W(lambda - mu)`.
///
/// `bound` caps `(g.mu + rho, theta)` after moving `g.mu` into the dominant
/// chamber.
pub fn verify_weight_geometry(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
    g: &AffineWeylElement,
    level: Level,
    bound: &BigRational,
) -> Result<bool> {
    require_regular_alcove(rs, lam, level)?;
    require_regular_alcove(rs, mu, level)?;
    let source = affine_apply(rs, g, mu, level)?;
    let conj = dominant_rep(rs, &source, true).weight;
    if &theta_height(rs, &conj) > bound {
        return Err(Error::Precondition(format!(
            "g.mu = {source} lies beyond the bound {bound}"
        )));
    }
    let tau = translation_weight(rs, lam, mu)?;
    let solutions = weight_geometry_solutions(rs, lam, mu, g, level)?;
    Ok(!solutions.is_empty()
        && solutions
            .iter()
            .all(|(w1, nu)| w1 == g && dominant_rep(rs, nu, false).weight == tau))
}

/// `sum_g n_g ch V_{g.base}^k` in the Weyl basis of one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageCharacter {
    level: Level,
    base: Weight,
    coeffs: BTreeMap<AffineWeylElement, i64>,
}

impl LinkageCharacter {
    /// Builds a character over `base`; zero coefficients and terms with
    /// `g . base` outside `P^+` are dropped, repeated keys are summed.
    pub fn new<I>(rs: &RootSystem, level: Level, base: Weight, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (AffineWeylElement, i64)>,
    {
        rs.check_rank(&base)?;
        if !in_p_plus_k(rs, &base, level) {
            return Err(Error::NotInAlcove(base));
        }
        let mut coeffs: BTreeMap<AffineWeylElement, i64> = BTreeMap::new();
        for (g, n) in terms {
            if affine_apply(rs, &g, &base, level)?.is_dominant() {
                *coeffs.entry(g).or_insert(0) += n;
            }
        }
        coeffs.retain(|_, n| *n != 0);
        Ok(Self {
            level,
            base,
            coeffs,
        })
    }

    pub fn zero(rs: &RootSystem, level: Level, base: Weight) -> Result<Self> {
        Self::new(rs, level, base, std::iter::empty())
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    pub fn coeffs(&self) -> &BTreeMap<AffineWeylElement, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest weights `g . base` with their coefficients.
    pub fn expand(&self, rs: &RootSystem) -> Result<BTreeMap<Weight, i64>> {
        self.coeffs
            .iter()
            .map(|(g, &n)| Ok((affine_apply(rs, g, &self.base, self.level)?, n)))
            .collect()
    }

    /// Sum of two characters over the same base.
    pub fn add(&self, other: &LinkageCharacter) -> Result<LinkageCharacter> {
        if self.base != other.base || self.level != other.level {
            return Err(Error::Precondition("characters over different blocks".into()));
        }
        let mut coeffs = self.coeffs.clone();
        for (g, n) in &other.coeffs {
            *coeffs.entry(g.clone()).or_insert(0) += n;
        }
        coeffs.retain(|_, n| *n != 0);
        Ok(LinkageCharacter {
            level: self.level,
            base: self.base.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: i64) -> LinkageCharacter {
        let mut coeffs: BTreeMap<_, _> = self.coeffs.iter().map(|(g, n)| (g.clone(), n * k)).collect();
        coeffs.retain(|_, n| *n != 0);
        LinkageCharacter {
            level: self.level,
            base: self.base.clone(),
            coeffs,
        }
    }
}

/// `ch T_mu^lambda A = sum_g n_g ch V_{g.lambda}^k` for `ch A = sum_g n_g ch V_{g.mu}^k`.
pub fn translate_character(
    rs: &RootSystem,
    chi: &LinkageCharacter,
    lam: &Weight,
) -> Result<LinkageCharacter> {
    require_regular_alcove(rs, &chi.base, chi.level)?;
    require_regular_alcove(rs, lam, chi.level)?;
    LinkageCharacter::new(
        rs,
        chi.level,
        lam.clone(),
        chi.coeffs.iter().map(|(g, &n)| (g.clone(), n)),
    )
}

/// `T_lambda^mu T_mu^lambda chi = chi` on characters.
pub fn round_trip_check(rs: &RootSystem, chi: &LinkageCharacter, lam: &Weight) -> Result<bool> {
    let there = translate_character(rs, chi, lam)?;
    let back = translate_character(rs, &there, &chi.base)?;
    Ok(&back == chi)
}

/// Verma-filtration multiplicities of `V_lambda^k ⊗̇ M_mu^k`: the key
/// `mu + nu` carries `dim V_lambda[nu]`.
pub fn verma_filtration(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<FiltrationMultiset> {
    rs.check_rank(mu)?;
    let ch = finchar::weight_multiplicities(rs, lam)?;
    Ok(FiltrationMultiset {
        parts: ch.terms().iter().map(|(nu, &m)| (mu + nu, m)).collect(),
    })
}

/// Verma factors of `V_tau^k ⊗̇ M_{g.mu}^k` lying in the full `W_k` dot-orbit
/// of `lambda`.
pub fn translate_verma_survivors(
    rs: &RootSystem,
    g: &AffineWeylElement,
    mu: &Weight,
    lam: &Weight,
    level: Level,
) -> Result<FiltrationMultiset> {
    require_regular_alcove(rs, mu, level)?;
    require_regular_alcove(rs, lam, level)?;
    let source = affine_apply(rs, g, mu, level)?;
    let tau = translation_weight(rs, lam, mu)?;
    let filtration = verma_filtration(rs, &tau, &source)?;
    let mut kept = BTreeMap::new();
    for (nu, &m) in &filtration.parts {
        if &alcove_rep(rs, nu, level)?.rep == lam {
            kept.insert(nu.clone(), m);
        }
    }
    Ok(FiltrationMultiset { parts: kept })
}

/// `T_mu^lambda(M_{g.mu}^k) = M_{g.lambda}^k` with no dominance condition on
/// `g.mu`.
pub fn translate_verma(
    rs: &RootSystem,
    g: &AffineWeylElement,
    mu: &Weight,
    lam: &Weight,
    level: Level,
) -> Result<Weight> {
    let survivors = translate_verma_survivors(rs, g, mu, lam, level)?;
    let target = affine_apply(rs, g, lam, level)?;
    single_survivor(&survivors, &target)?;
    Ok(target)
}

/// Orbit elements used by sweeps: the dominant orbit of `lam` truncated at
/// `bound`.
pub fn orbit_elements(
    rs: &RootSystem,
    lam: &Weight,
    level: Level,
    bound: &BigRational,
) -> Result<Vec<AffineWeylElement>> {
    Ok(affine::dominant_orbit(rs, lam, level, bound)?
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}
