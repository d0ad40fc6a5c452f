//! Token parsers for command-line arguments. Every failure names the token.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::CliError;
use crate::affine::{theta_wall_reflection, AffineWeylElement, Level};
use crate::rootsys::{parse_rational, RootSystem, RootSystemSpec, Weight};
use crate::weyl::WeylElement;

pub fn root_system(tok: &str) -> Result<RootSystem, CliError> {
    let spec: RootSystemSpec = tok.parse().map_err(|e: crate::Error| CliError::Usage(e.to_string()))?;
    Ok(RootSystem::new(spec))
}

pub fn weight(tok: &str) -> Result<Weight, CliError> {
    tok.parse()
        .map_err(|_| CliError::Usage(format!("malformed weight {tok}")))
}

pub fn rational(tok: &str, what: &str) -> Result<BigRational, CliError> {
    parse_rational(tok.trim()).ok_or_else(|| CliError::Usage(format!("malformed {what} {tok}")))
}

/// `p/q` or `p`.
pub fn level(tok: &str) -> Result<Level, CliError> {
    let bad = || CliError::Usage(format!("malformed level {tok}"));
    let (p, q) = match tok.split_once('/') {
        Some((p, q)) => (p, q),
        None => (tok, "1"),
    };
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    Level::new(p, q).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn level_from_k(rs: &RootSystem, tok: &str) -> Result<Level, CliError> {
    let k = rational(tok, "level k")?;
    Level::from_k(rs, &k).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn count(tok: &str, what: &str) -> Result<u64, CliError> {
    tok.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed {what} {tok}")))
}

/// Splits on commas outside brackets.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// `s1s3s2`, or `e` for the identity.
pub fn weyl_word(rs: &RootSystem, tok: &str) -> Result<WeylElement, CliError> {
    let bad = || CliError::Usage(format!("malformed Weyl word {tok}"));
    if tok == "e" {
        return Ok(WeylElement::identity());
    }
    let mut word = Vec::new();
    for piece in tok.split('s').skip(1) {
        let i: usize = piece.parse().map_err(|_| bad())?;
        if i == 0 || i > rs.rank() {
            return Err(CliError::Usage(format!(
                "reflection index {i} in {tok} is out of range for rank {}",
                rs.rank()
            )));
        }
        word.push(i - 1);
    }
    if word.is_empty() || !tok.starts_with('s') {
        return Err(bad());
    }
    Ok(WeylElement::from_word(rs, &word)?)
}

/// `t[root coords]*word`, `t[..]`, a bare word, or the aliases `e` and
/// `saff` (the theta-wall reflection).
pub fn element(rs: &RootSystem, level: Level, tok: &str) -> Result<AffineWeylElement, CliError> {
    let tok = tok.trim();
    if tok == "saff" {
        return Ok(theta_wall_reflection(rs, level));
    }
    let Some(rest) = tok.strip_prefix('t') else {
        return Ok(AffineWeylElement::new(Weight::zero(rs.rank()), weyl_word(rs, tok)?));
    };
    let (coords, word) = match rest.split_once("]*") {
        Some((c, w)) => (format!("{c}]"), w),
        None => (rest.to_string(), "e"),
    };
    let coords: Weight = coords
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed group element {tok}")))?;
    if coords.rank() != rs.rank() {
        return Err(CliError::Usage(format!(
            "translation in {tok} has {} coordinates, expected {}",
            coords.rank(),
            rs.rank()
        )));
    }
    let finite = weyl_word(rs, word)?;
    Ok(AffineWeylElement::from_root_coords(rs, coords.coords(), finite))
}

/// `elem:coeff,elem:coeff,...`; repeated elements are summed.
pub fn character(
    rs: &RootSystem,
    level: Level,
    tok: &str,
) -> Result<Vec<(AffineWeylElement, i64)>, CliError> {
    let mut terms: BTreeMap<AffineWeylElement, i64> = BTreeMap::new();
    if tok.trim().is_empty() {
        return Ok(Vec::new());
    }
    for term in split_top_level(tok) {
        let (elem, coeff) = term
            .rsplit_once(':')
            .ok_or_else(|| CliError::Usage(format!("malformed character term {term}")))?;
        let coeff: i64 = coeff
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("malformed coefficient in {term}")))?;
        *terms.entry(element(rs, level, elem)?).or_insert(0) += coeff;
    }
    Ok(terms.into_iter().collect())
}

/// Comma-separated group elements.
pub fn element_list(rs: &RootSystem, level: Level, tok: &str) -> Result<Vec<AffineWeylElement>, CliError> {
    if tok.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(tok)
        .into_iter()
        .map(|t| element(rs, level, t))
        .collect()
}
