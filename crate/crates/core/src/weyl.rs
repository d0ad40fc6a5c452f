//! Finite Weyl group: canonical reduced words, plain and dot actions,
//! dominant representatives, orbits and the duality involution.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// An element of the finite Weyl group, stored as its lexicographically least
/// reduced word (0-based simple reflection indices, leftmost factor first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Canonicalizes an arbitrary word `s_{i_1} ... s_{i_k}`.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        if let Some(&index) = word.iter().find(|&&i| i >= rs.rank()) {
            return Err(Error::BadIndex {
                index,
                rank: rs.rank(),
            });
        }
        let mut v = vec![1i64; rs.rank()];
        for &i in word.iter().rev() {
            rs.reflect_simple_i64(&mut v, i);
        }
        Ok(Self::from_rho_image(rs, v))
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Result<Self> {
        Self::from_word(rs, &[i])
    }

    /// Recovers the element `w` from `w(rho)` by peeling off the smallest left
    /// descent at every step.
    pub(crate) fn from_rho_image(rs: &RootSystem, mut v: Vec<i64>) -> Self {
        let mut word = Vec::new();
        while let Some(i) = v.iter().position(|&c| c < 0) {
            word.push(i);
            rs.reflect_simple_i64(&mut v, i);
        }
        Self { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// The product `self * other`.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement::from_word(rs, &word).expect("indices already validated")
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &word).expect("indices already validated")
    }

    /// Plain action `w(lambda)`.
    pub fn act(&self, rs: &RootSystem, lam: &Weight) -> Weight {
        let mut v = lam.clone();
        for &i in self.word.iter().rev() {
            rs.reflect_simple(v.coords_mut(), i);
        }
        v
    }

    /// Dot action `w(lambda + rho) - rho`.
    pub fn dot(&self, rs: &RootSystem, lam: &Weight) -> Weight {
        &self.act(rs, &(lam + rs.rho())) - rs.rho()
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for i in &self.word {
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

/// `w(lambda)` or, with `shifted`, `w . lambda = w(lambda + rho) - rho`.
pub fn apply(rs: &RootSystem, w: &WeylElement, lam: &Weight, shifted: bool) -> Weight {
    if shifted {
        w.dot(rs, lam)
    } else {
        w.act(rs, lam)
    }
}

/// Result of [`dominant_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantRep {
    pub weight: Weight,
    /// Maps the input to `weight` under the selected action.
    pub element: WeylElement,
    /// Trivial stabilizer of the input under the selected action.
    pub regular: bool,
}

/// The representative of `lam` in the closed dominant chamber (shifted by
/// `-rho` for the dot action) together with the minimal-length element
/// carrying `lam` there.
pub fn dominant_rep(rs: &RootSystem, lam: &Weight, shifted: bool) -> DominantRep {
    let mut v = if shifted { lam + rs.rho() } else { lam.clone() };
    let mut steps = Vec::new();
    while let Some(i) = v.coords().iter().position(|c| c.is_negative()) {
        steps.push(i);
        rs.reflect_simple(v.coords_mut(), i);
    }
    let regular = v.coords().iter().all(|c| !c.is_zero());
    steps.reverse();
    let element = WeylElement::from_word(rs, &steps).expect("valid indices");
    let weight = if shifted { &v - rs.rho() } else { v };
    DominantRep {
        weight,
        element,
        regular,
    }
}

/// The full finite orbit of `lam` under the plain or dot action.
pub fn orbit(rs: &RootSystem, lam: &Weight, shifted: bool) -> BTreeSet<Weight> {
    let start = if shifted { lam + rs.rho() } else { lam.clone() };
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank() {
            if v.coords()[i].is_zero() {
                continue;
            }
            let mut u = v.clone();
            rs.reflect_simple(u.coords_mut(), i);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    if shifted {
        seen.into_iter().map(|v| &v - rs.rho()).collect()
    } else {
        seen
    }
}

/// The longest element, found as the element carrying `-rho` to `rho`.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    dominant_rep(rs, &-rs.rho(), false).element
}

/// `lambda-bar = -w_0(lambda)`, the highest weight of the dual module.
pub fn bar_involution(rs: &RootSystem, lam: &Weight) -> Result<Weight> {
    rs.check_rank(lam)?;
    if !lam.is_dominant_integral() {
        return Err(Error::NotDominant(lam.clone()));
    }
    Ok(-&longest_element(rs).act(rs, lam))
}

/// Every element of W, sorted by length and then by canonical word.
pub fn elements(rs: &RootSystem) -> Vec<WeylElement> {
    let rho = vec![1i64; rs.rank()];
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::from([(rho.clone(), ())]);
    let mut queue = VecDeque::from([rho]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank() {
            let mut u = v.clone();
            rs.reflect_simple_i64(&mut u, i);
            if seen.insert(u.clone(), ()).is_none() {
                queue.push_back(u);
            }
        }
        out.push(WeylElement::from_rho_image(rs, v));
    }
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    out
}

/// The reflection `s_alpha` for the positive root with index `i`.
pub fn root_reflection(rs: &RootSystem, i: usize) -> WeylElement {
    let coroot = &rs.positive_coroot_coords()[i];
    let alpha = rs.positive_roots()[i]
        .to_i64s()
        .expect("roots are integral");
    // <rho, alpha^vee> is the coroot height.
    let h: i64 = coroot.iter().sum();
    let v: Vec<i64> = alpha.iter().map(|a| 1 - h * a).collect();
    WeylElement::from_rho_image(rs, v)
}
