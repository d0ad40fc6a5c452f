//! Characters of finite-dimensional modules: weight multiplicities,
//! dimensions and tensor product decomposition.
//!
//! Two independent routes decompose `V_lambda ⊗ V_mu`: the signed-reflection
//! (Racah / Brauer–Klimyk) rule in [`tensor_decompose`], and a brute-force
//! character convolution with greedy highest-weight stripping in
//! [`tensor_oracle`].

mod dense;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl;

use dense::DenseChar;

/// Default refusal threshold for `dim V_lambda * dim V_mu`.
pub const DEFAULT_CAP: u64 = 1_000_000;

const PARALLEL_THRESHOLD: usize = 4096;
const RACAH_CHUNK: usize = 2048;
const CACHE_BUDGET_CELLS: usize = 1 << 25;

/// Formal character of a finite-dimensional module: weight to multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalCharacter {
    terms: BTreeMap<Weight, u64>,
}

impl FormalCharacter {
    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }
}

/// Multiset of dominant highest weights, e.g. the irreducible constituents of
/// a tensor product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionMultiset {
    parts: BTreeMap<Weight, u64>,
}

impl DecompositionMultiset {
    pub fn parts(&self) -> &BTreeMap<Weight, u64> {
        &self.parts
    }

    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.parts.get(nu).copied().unwrap_or(0)
    }

    pub fn into_parts(self) -> BTreeMap<Weight, u64> {
        self.parts
    }

    fn from_ints(map: BTreeMap<Vec<i64>, i64>) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for (nu, m) in map {
            if m < 0 {
                return Err(Error::Inconsistency(format!(
                    "negative multiplicity {m} at {}",
                    Weight::from_ints(nu)
                )));
            }
            if m > 0 {
                parts.insert(Weight::from_ints(nu), m as u64);
            }
        }
        Ok(Self { parts })
    }
}

fn dominant_integral(rs: &RootSystem, lam: &Weight) -> Result<Vec<i64>> {
    rs.check_rank(lam)?;
    if !lam.is_dominant_integral() {
        return Err(Error::NotDominant(lam.clone()));
    }
    lam.to_i64s().ok_or(Error::Overflow("weight coordinates"))
}

/// Weyl dimension formula `prod_{alpha>0} <lambda+rho, alpha^vee> / <rho, alpha^vee>`.
pub fn dimension(rs: &RootSystem, lam: &Weight) -> Result<BigInt> {
    let lam = dominant_integral(rs, lam)?;
    Ok(dimension_i64(rs, &lam))
}

fn dimension_i64(rs: &RootSystem, lam: &[i64]) -> BigInt {
    let mut small = Some((1i128, 1i128));
    for coroot in rs.positive_coroot_coords() {
        let a: i64 = coroot.iter().zip(lam).map(|(c, l)| c * (l + 1)).sum();
        let b: i64 = coroot.iter().sum();
        small = small.and_then(|(n, d)| Some((n.checked_mul(a as i128)?, d.checked_mul(b as i128)?)));
    }
    if let Some((n, d)) = small {
        return BigInt::from(n / d);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for coroot in rs.positive_coroot_coords() {
        let a: i64 = coroot.iter().zip(lam).map(|(c, l)| c * (l + 1)).sum();
        let b: i64 = coroot.iter().sum();
        num *= a;
        den *= b;
    }
    num / den
}

/// Weight multiplicities of `V_lambda`.
pub fn weight_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<FormalCharacter> {
    TensorEngine::new(rs).weight_multiplicities(lam)
}

/// `(V_lambda ⊗ V_mu : V_nu)` by the signed-reflection rule, refusing inputs
/// whose dimension product exceeds [`DEFAULT_CAP`].
pub fn tensor_decompose(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<DecompositionMultiset> {
    TensorEngine::new(rs).decompose(lam, mu)
}

/// The same multiplicities by character convolution and greedy stripping.
pub fn tensor_oracle(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<DecompositionMultiset> {
    TensorEngine::new(rs).oracle(lam, mu)
}

/// Character computations over one root system, with a cache of dense
/// characters shared across calls.
pub struct TensorEngine<'a> {
    rs: &'a RootSystem,
    cap: u64,
    opposition: Vec<usize>,
    // Root coordinates of the fundamental weights, times `root_denom`.
    root_rows: Vec<Vec<i64>>,
    root_denom: i64,
    cache: HashMap<Vec<i64>, Arc<DenseChar>>,
    cached_cells: usize,
}

impl<'a> TensorEngine<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        // -w_0 permutes the fundamental weights.
        let opposition = rs
            .fundamental_weights()
            .iter()
            .map(|w| {
                let bar = weyl::bar_involution(rs, w).expect("fundamental weights are dominant");
                bar.to_i64s().unwrap().iter().position(|&c| c == 1).unwrap()
            })
            .collect();
        let rows: Vec<Vec<BigRational>> = rs.fundamental_weights().iter().map(|w| rs.to_root_coords(w)).collect();
        let root_denom = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
            .to_i64()
            .expect("small Cartan determinant");
        let root_rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| (c * BigRational::from_integer(root_denom.into())).to_integer().to_i64().unwrap())
                    .collect()
            })
            .collect();
        Self {
            rs,
            cap: DEFAULT_CAP,
            opposition,
            root_rows,
            root_denom,
            cache: HashMap::new(),
            cached_cells: 0,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    /// Exponent box of the full character: one more than the root
    /// coordinates of `lambda - w_0 lambda = lambda + bar(lambda)`.
    fn full_extent(&self, lam: &[i64]) -> Result<Vec<usize>> {
        let mut span = lam.to_vec();
        for (i, &j) in self.opposition.iter().enumerate() {
            span[j] += lam[i];
        }
        (0..span.len())
            .map(|i| {
                let scaled = span
                    .iter()
                    .zip(&self.root_rows)
                    .try_fold(0i64, |acc, (x, row)| acc.checked_add(x.checked_mul(row[i])?))
                    .ok_or(Error::Overflow("character extent"))?;
                usize::try_from(scaled / self.root_denom + 1).map_err(|_| Error::Overflow("character extent"))
            })
            .collect()
    }

    fn dense(&mut self, lam: &[i64]) -> Result<Arc<DenseChar>> {
        let full = self.full_extent(lam)?;
        self.dense_within(lam, &full)
    }

    /// The character restricted to exponents below `want`. Freudenthal's
    /// recursion only looks at smaller exponents, so a truncated box is exact.
    fn dense_within(&mut self, lam: &[i64], want: &[usize]) -> Result<Arc<DenseChar>> {
        let cached = self.cache.get(lam).cloned();
        let full = match &cached {
            Some(ch) if ch.extent.iter().zip(want).all(|(e, w)| e >= w) => return Ok(Arc::clone(ch)),
            _ => self.full_extent(lam)?,
        };
        let mut need: Vec<usize> = full.iter().zip(want).map(|(f, w)| (*f).min(*w)).collect();
        if let Some(ch) = &cached {
            if ch.extent.iter().zip(&need).all(|(e, n)| e >= n) {
                return Ok(Arc::clone(ch));
            }
            need.iter_mut().zip(&ch.extent).for_each(|(n, e)| *n = (*n).max(*e));
            self.cached_cells -= ch.data.len();
        }
        let depth: Vec<i64> = need.iter().map(|&e| e as i64 - 1).collect();
        let ch = Arc::new(dense::freudenthal(self.rs, lam, &depth)?);
        if self.cached_cells + ch.data.len() > CACHE_BUDGET_CELLS {
            self.cache.clear();
            self.cached_cells = 0;
        }
        self.cached_cells += ch.data.len();
        self.cache.insert(lam.to_vec(), Arc::clone(&ch));
        Ok(ch)
    }

    pub fn weight_multiplicities(&mut self, lam: &Weight) -> Result<FormalCharacter> {
        let lam = dominant_integral(self.rs, lam)?;
        let ch = self.dense(&lam)?;
        let terms = ch
            .cells()
            .map(|(k, m)| (Weight::from_ints(ch.weight_at(self.rs, &k)), m as u64))
            .collect();
        Ok(FormalCharacter { terms })
    }

    fn guard(&self, lam: &[i64], mu: &[i64]) -> Result<(BigInt, BigInt)> {
        let (a, b) = (dimension_i64(self.rs, lam), dimension_i64(self.rs, mu));
        let product = &a * &b;
        if product > BigInt::from(self.cap) {
            return Err(Error::DimensionCap {
                product,
                cap: self.cap,
            });
        }
        Ok((a, b))
    }

    /// Signed-reflection rule: for each weight `nu` of the expanded factor,
    /// dot-reflect `lambda + nu` into the dominant chamber and add
    /// `(-1)^len * mult(nu)`; weights landing on a wall contribute nothing.
    /// The smaller factor is expanded.
    pub fn decompose(&mut self, lam: &Weight, mu: &Weight) -> Result<DecompositionMultiset> {
        let (l, m) = (dominant_integral(self.rs, lam)?, dominant_integral(self.rs, mu)?);
        let (dl, dm) = self.guard(&l, &m)?;
        if dm <= dl {
            self.racah(&l, &m)
        } else {
            self.racah(&m, &l)
        }
    }

    /// The signed-reflection sum with `expanded` as the factor whose weights
    /// are enumerated.
    pub fn decompose_expanding(&mut self, lam: &Weight, expanded: &Weight) -> Result<DecompositionMultiset> {
        let (l, m) = (dominant_integral(self.rs, lam)?, dominant_integral(self.rs, expanded)?);
        self.guard(&l, &m)?;
        self.racah(&l, &m)
    }

    fn racah(&mut self, lam: &[i64], expanded: &[i64]) -> Result<DecompositionMultiset> {
        let ch = self.dense(expanded)?;
        let rs = self.rs;
        let len = ch.data.len();
        let acc = if len >= PARALLEL_THRESHOLD {
            (0..len.div_ceil(RACAH_CHUNK))
                .into_par_iter()
                .map(|c| racah_range(rs, &ch, lam, c * RACAH_CHUNK..len.min((c + 1) * RACAH_CHUNK)))
                .reduce(BTreeMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                })
        } else {
            racah_range(rs, &ch, lam, 0..len)
        };
        DecompositionMultiset::from_ints(acc)
    }

    /// Multiplies the two characters by direct convolution, then repeatedly
    /// removes the character of a maximal remaining weight.
    ///
    /// Only exponents with `k_i + k_{pi(i)} <= D_i` are kept, where `D` spans
    /// the product box and `pi` is the opposition involution: the condition
    /// is `nu + bar(nu) ∈ Q_+`, which holds for every dominant `nu`, so the
    /// stripping sees every highest weight.
    pub fn oracle(&mut self, lam: &Weight, mu: &Weight) -> Result<DecompositionMultiset> {
        let (l, m) = (dominant_integral(self.rs, lam)?, dominant_integral(self.rs, mu)?);
        self.guard(&l, &m)?;
        let (fa, fb) = (self.full_extent(&l)?, self.full_extent(&m)?);
        let limit: Vec<usize> = (0..l.len())
            .map(|i| {
                let depth = fa[i] + fb[i] - 2;
                if self.opposition[i] == i {
                    depth / 2 + 1
                } else {
                    depth + 1
                }
            })
            .collect();
        let (a, b) = (self.dense_within(&l, &limit)?, self.dense_within(&m, &limit)?);
        let mut product = dense::convolve(&a, &b, &limit);
        let mut parts = BTreeMap::new();
        let mut k = vec![0usize; product.rank()];
        let mut idx = 0;
        while idx < product.data.len() {
            let c = product.data[idx];
            if c == 0 {
                idx += 1;
                continue;
            }
            product.unravel(idx, &mut k);
            let nu = product.weight_at(self.rs, &k);
            // The first nonzero cell in row-major order is maximal for the
            // dominance order; for a genuine character it is dominant with a
            // positive coefficient.
            if c < 0 || nu.iter().any(|&x| x < 0) {
                return Err(Error::Inconsistency(format!(
                    "greedy stripping left coefficient {c} at {}",
                    Weight::from_ints(nu)
                )));
            }
            let want: Vec<usize> = limit.iter().zip(&k).map(|(l, ki)| l - ki).collect();
            let irreducible = self.dense_within(&nu, &want)?;
            product.add_scaled_at(&irreducible, &k, -c);
            parts.insert(nu, c);
            idx += 1;
        }
        DecompositionMultiset::from_ints(parts)
    }
}

/// Signed-reflection contributions of the cells `range` of `ch`, tensored
/// with `V_lambda`.
fn racah_range(
    rs: &RootSystem,
    ch: &DenseChar,
    lam: &[i64],
    range: std::ops::Range<usize>,
) -> BTreeMap<Vec<i64>, i64> {
    let n = ch.rank();
    let cartan = rs.cartan();
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut k = vec![0usize; n];
    let mut x = vec![0i64; n];
    for idx in range {
        let m = ch.data[idx];
        if m == 0 {
            continue;
        }
        ch.unravel(idx, &mut k);
        for i in 0..n {
            x[i] = ch.top[i] + lam[i] + 1 - (0..n).map(|j| cartan[i][j] * k[j] as i64).sum::<i64>();
        }
        let mut sign = 1;
        while let Some(i) = x.iter().position(|&c| c < 0) {
            rs.reflect_simple_i64(&mut x, i);
            sign = -sign;
        }
        if x.iter().all(|&c| c > 0) {
            x.iter_mut().for_each(|c| *c -= 1);
            match acc.get_mut(&x[..]) {
                Some(v) => *v += sign * m,
                None => {
                    acc.insert(x.clone(), sign * m);
                }
            }
        }
    }
    acc
}
