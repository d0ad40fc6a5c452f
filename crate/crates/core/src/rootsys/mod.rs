//! Cartan data for the simple types A–G and the normalized invariant form.
//!
//! All weights are written in the basis of fundamental weights, so a weight is
//! dominant exactly when its coordinates are nonnegative. Nodes follow the
//! Bourbaki numbering; the Cartan matrix entry `cartan[i][j]` is
//! `<alpha_j, alpha_i^vee>`, which makes column `j` the coordinates of the
//! simple root `alpha_j`.

mod weight;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use weight::{ParseWeightError, Weight};
pub(crate) use weight::parse_rational;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A validated (series, rank) pair naming a simple type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    series: Series,
    rank: usize,
}

impl RootSystemSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::InvalidType {
                series: series.letter(),
                rank,
            })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(|c| Series::from_letter(c.to_ascii_uppercase()))
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::UnknownType(s.to_string()));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        RootSystemSpec::new(series, rank)
    }
}

/// Immutable root datum of one simple Lie algebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<BigRational>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    positive_coroot_coords: Vec<Vec<i64>>,
    root_lengths: Vec<BigRational>,
    rho: Weight,
    theta: Weight,
    theta_index: usize,
    dual_coxeter: u64,
    form: Vec<Vec<BigRational>>,
    int_form: Vec<Vec<i64>>,
}

/// Builds the root datum for a validated type.
pub fn build_root_system(spec: RootSystemSpec) -> RootSystem {
    RootSystem::new(spec)
}

impl RootSystem {
    pub fn new(spec: RootSystemSpec) -> Self {
        let n = spec.rank;
        let cartan = cartan_matrix(spec);
        let cartan_q: Vec<Vec<BigRational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&a| ratio(a)).collect())
            .collect();
        let cartan_inverse = invert(&cartan_q).expect("Cartan matrices are invertible");

        let simple_root_ints: Vec<Vec<i64>> =
            (0..n).map(|j| (0..n).map(|i| cartan[i][j]).collect()).collect();
        let positive_root_coords = positive_roots_in_root_basis(&cartan);
        let fund_of = |c: &[i64]| -> Vec<i64> {
            (0..n)
                .map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum())
                .collect()
        };

        // (alpha_i, alpha_i) up to a global factor, from
        // (alpha_i,alpha_i) / (alpha_j,alpha_j) = cartan[j][i] / cartan[i][j].
        let mut lengths: Vec<Option<BigRational>> = vec![None; n];
        lengths[0] = Some(BigRational::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && lengths[j].is_none() {
                    let li = lengths[i].clone().unwrap();
                    lengths[j] = Some(li * BigRational::new(cartan[i][j].into(), cartan[j][i].into()));
                    queue.push_back(j);
                }
            }
        }
        let mut root_lengths: Vec<BigRational> = lengths.into_iter().map(Option::unwrap).collect();

        let theta_index = positive_root_coords
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .map(|(i, _)| i)
            .unwrap();
        let theta_coords = positive_root_coords[theta_index].clone();
        let gram = |lens: &[BigRational], a: &[i64], b: &[i64]| -> BigRational {
            let mut acc = BigRational::zero();
            for i in 0..n {
                for j in 0..n {
                    if a[i] != 0 && b[j] != 0 {
                        acc += &lens[i] * ratio(cartan[i][j]) / ratio(2) * ratio(a[i] * b[j]);
                    }
                }
            }
            acc
        };
        let theta_len = gram(&root_lengths, &theta_coords, &theta_coords);
        let scale = ratio(2) / theta_len;
        for l in root_lengths.iter_mut() {
            *l = &*l * &scale;
        }

        // Form on fundamental coordinates: M = (A^T)^{-1} D with D = diag((alpha_i,alpha_i)/2).
        let form: Vec<Vec<BigRational>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| &cartan_inverse[l][k] * &root_lengths[l] / ratio(2))
                    .collect()
            })
            .collect();
        let denom = form
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let int_form = form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer().to_i64().unwrap())
                    .collect()
            })
            .collect();

        let positive_coroot_coords = positive_root_coords
            .iter()
            .map(|c| {
                let len = gram(&root_lengths, c, c);
                (0..n)
                    .map(|i| {
                        let v = ratio(c[i]) * &root_lengths[i] / &len;
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect();

        let positive_roots: Vec<Weight> = positive_root_coords
            .iter()
            .map(|c| Weight::from_ints(fund_of(c)))
            .collect();
        let theta = positive_roots[theta_index].clone();
        let rho = Weight::from_ints(vec![1; n]);

        let mut rs = RootSystem {
            spec,
            cartan,
            cartan_inverse,
            simple_roots: simple_root_ints.into_iter().map(Weight::from_ints).collect(),
            positive_roots,
            positive_root_coords,
            positive_coroot_coords,
            root_lengths,
            rho,
            theta,
            theta_index,
            dual_coxeter: 0,
            form,
            int_form,
        };
        let h = BigRational::one() + rs.bilinear(&rs.rho, &rs.theta);
        rs.dual_coxeter = h.to_integer().to_u64().unwrap();
        rs
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        let n = self.rank();
        (0..n)
            .map(|i| Weight::from_ints((0..n).map(|j| i64::from(i == j))))
            .collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Coordinates of the positive roots in the simple-root basis.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    /// Coordinates of the positive coroots in the simple-coroot basis.
    pub fn positive_coroot_coords(&self) -> &[Vec<i64>] {
        &self.positive_coroot_coords
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    /// Coroot coordinates of the highest root, i.e. `(omega_i, theta)`.
    pub fn theta_comarks(&self) -> &[i64] {
        &self.positive_coroot_coords[self.theta_index]
    }

    pub fn dual_coxeter(&self) -> u64 {
        self.dual_coxeter
    }

    pub fn form(&self) -> &[Vec<BigRational>] {
        &self.form
    }

    /// `(alpha_i, alpha_i)` for each simple root.
    pub fn root_lengths(&self) -> &[BigRational] {
        &self.root_lengths
    }

    pub fn is_simply_laced(&self) -> bool {
        self.root_lengths.iter().all(|l| l == &self.root_lengths[0])
    }

    /// The form scaled to integer entries, used by the integer hot paths.
    pub(crate) fn int_form(&self) -> &[Vec<i64>] {
        &self.int_form
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                weight: w.to_string(),
                expected: self.rank(),
                found: w.rank(),
            })
        }
    }

    /// The invariant form `(lambda, mu)`, normalized by `(theta, theta) = 2`.
    pub fn bilinear(&self, lam: &Weight, mu: &Weight) -> BigRational {
        let (a, b) = (lam.coords(), mu.coords());
        let mut acc = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.form[i][j].is_zero() {
                    acc += ai * bj * &self.form[i][j];
                }
            }
        }
        acc
    }

    /// `<lambda, alpha^vee>` for a root `alpha` (positive or negative).
    pub fn pairing(&self, lam: &Weight, alpha: &Weight) -> Result<BigRational> {
        self.check_rank(lam)?;
        let idx = self.root_index(alpha).ok_or_else(|| Error::NotARoot(alpha.clone()))?;
        let (i, sign) = idx;
        Ok(self.coroot_pairing(lam, i) * BigRational::from_integer(sign.into()))
    }

    /// Index into `positive_roots` and a sign, if `alpha` is a root.
    pub fn root_index(&self, alpha: &Weight) -> Option<(usize, i64)> {
        if let Some(i) = self.positive_roots.iter().position(|r| r == alpha) {
            return Some((i, 1));
        }
        let neg = -alpha;
        self.positive_roots
            .iter()
            .position(|r| *r == neg)
            .map(|i| (i, -1))
    }

    /// `<lambda, alpha^vee>` for the positive root with index `i`.
    pub fn coroot_pairing(&self, lam: &Weight, i: usize) -> BigRational {
        lam.coords()
            .iter()
            .zip(&self.positive_coroot_coords[i])
            .filter(|(_, &c)| c != 0)
            .map(|(x, &c)| x * BigRational::from_integer(c.into()))
            .sum()
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn to_root_coords(&self, w: &Weight) -> Vec<BigRational> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.cartan_inverse[i][j] * &w.coords()[j])
                    .sum()
            })
            .collect()
    }

    /// The weight `sum_i c_i alpha_i`.
    pub fn from_root_coords(&self, c: &[BigRational]) -> Weight {
        let n = self.rank();
        Weight::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| self.cartan[i][j] != 0)
                        .map(|j| &c[j] * ratio(self.cartan[i][j]))
                        .sum()
                })
                .collect(),
        )
    }

    /// Plain reflection in the simple root `alpha_i`, in place.
    pub(crate) fn reflect_simple(&self, v: &mut [BigRational], i: usize) {
        let c = v[i].clone();
        if c.is_zero() {
            return;
        }
        for (j, x) in v.iter_mut().enumerate() {
            let a = self.cartan[j][i];
            if a != 0 {
                *x -= &c * ratio(a);
            }
        }
    }

    /// Plain reflection in the simple root `alpha_i` on integer coordinates.
    pub(crate) fn reflect_simple_i64(&self, v: &mut [i64], i: usize) {
        let c = v[i];
        if c == 0 {
            return;
        }
        for (j, x) in v.iter_mut().enumerate() {
            *x -= c * self.cartan[j][i];
        }
    }
}

fn ratio(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

fn cartan_matrix(spec: RootSystemSpec) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // (i, j, cartan[i][j], cartan[j][i])
    let mut bonds: Vec<(usize, usize, i64, i64)> = Vec::new();
    match spec.series {
        Series::A => bonds.extend((0..n - 1).map(|i| (i, i + 1, -1, -1))),
        Series::B => {
            bonds.extend((0..n - 2).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 2, n - 1, -1, -2));
        }
        Series::C => {
            bonds.extend((0..n - 2).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 2, n - 1, -2, -1));
        }
        Series::D => {
            bonds.extend((0..n - 2).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 3, n - 1, -1, -1));
        }
        Series::E => {
            bonds.push((0, 2, -1, -1));
            bonds.push((1, 3, -1, -1));
            bonds.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
        }
        Series::F => {
            bonds.push((0, 1, -1, -1));
            bonds.push((1, 2, -1, -2));
            bonds.push((2, 3, -1, -1));
        }
        Series::G => bonds.push((0, 1, -3, -1)),
    }
    for (i, j, aij, aji) in bonds {
        a[i][j] = aij;
        a[j][i] = aji;
    }
    a
}

/// Positive roots in the simple-root basis, sorted by height then lexicographically.
fn positive_roots_in_root_basis(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let fund = |c: &[i64], i: usize| -> i64 { (0..n).map(|j| cartan[i][j] * c[j]).sum() };
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // alpha_i-string through beta: beta - r alpha_i, ..., beta + q alpha_i
                // with r - q = <beta, alpha_i^vee>.
                let mut r = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - fund(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Returns true when `x` is an integer multiple of `p`.
pub(crate) fn in_multiple_of(x: &BigRational, p: u64) -> bool {
    x.is_integer() && (x.to_integer() % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a1_data() {
        let a1 = rs("A1");
        assert_eq!(a1.cartan(), &[vec![2]]);
        assert_eq!(a1.theta(), &Weight::from_ints([2]));
        assert_eq!(a1.rho(), &Weight::from_ints([1]));
        assert_eq!(a1.dual_coxeter(), 2);
    }

    #[test]
    fn a2_data() {
        let a2 = rs("A2");
        assert_eq!(a2.theta(), &Weight::from_ints([1, 1]));
        assert_eq!(a2.dual_coxeter(), 3);
        assert_eq!(a2.positive_roots().len(), 3);
    }

    #[test]
    fn invalid_types() {
        assert_eq!(
            "E5".parse::<RootSystemSpec>(),
            Err(Error::InvalidType { series: 'E', rank: 5 })
        );
        assert_eq!("Z9".parse::<RootSystemSpec>(), Err(Error::UnknownType("Z9".into())));
        assert!("A".parse::<RootSystemSpec>().is_err());
        assert!("A0".parse::<RootSystemSpec>().is_err());
        assert!("G3".parse::<RootSystemSpec>().is_err());
        assert!("D3".parse::<RootSystemSpec>().is_err());
    }

    #[test]
    fn known_types() {
        // (type, |Delta_+|, h^vee, theta)
        let table: &[(&str, usize, u64, &[i64])] = &[
            ("B2", 4, 3, &[0, 2]),
            ("C3", 9, 4, &[2, 0, 0]),
            ("D4", 12, 6, &[0, 1, 0, 0]),
            ("E6", 36, 12, &[0, 1, 0, 0, 0, 0]),
            ("E7", 63, 18, &[1, 0, 0, 0, 0, 0, 0]),
            ("E8", 120, 30, &[0, 0, 0, 0, 0, 0, 0, 1]),
            ("F4", 24, 9, &[1, 0, 0, 0]),
            ("G2", 6, 4, &[0, 1]),
        ];
        for &(t, count, h, theta) in table {
            let r = rs(t);
            assert_eq!(r.positive_roots().len(), count, "{t}");
            assert_eq!(r.dual_coxeter(), h, "{t}");
            assert_eq!(r.theta(), &Weight::from_ints(theta.iter().copied()), "{t}");
        }
    }

    #[test]
    fn bilinear_examples() {
        let a1 = rs("A1");
        let w = Weight::from_ints([1]);
        assert_eq!(a1.bilinear(&w, &w), q(1, 2));
        let a2 = rs("A2");
        assert_eq!(a2.bilinear(a2.rho(), a2.theta()), q(2, 1));
        assert_eq!(a2.bilinear(&Weight::zero(2), a2.theta()), q(0, 1));
        // A2 form matrix, independently: (omega_i, omega_j) = [[2/3,1/3],[1/3,2/3]].
        assert_eq!(a2.form()[0][0], q(2, 3));
        assert_eq!(a2.form()[0][1], q(1, 3));
    }

    #[test]
    fn pairing_examples() {
        let a1 = rs("A1");
        for m in -3..4 {
            assert_eq!(a1.pairing(&Weight::from_ints([m]), a1.theta()).unwrap(), q(m, 1));
        }
        let a2 = rs("A2");
        assert_eq!(a2.pairing(a2.rho(), a2.theta()).unwrap(), q(2, 1));
        for r in a2.positive_roots() {
            assert_eq!(a2.pairing(&Weight::zero(2), r).unwrap(), q(0, 1));
        }
        assert!(matches!(
            a2.pairing(a2.rho(), &Weight::from_ints([1, 0])),
            Err(Error::NotARoot(_))
        ));
        // negative roots are accepted
        assert_eq!(a2.pairing(a2.rho(), &-a2.theta()).unwrap(), q(-2, 1));
    }

    #[test]
    fn short_root_pairing_non_simply_laced() {
        let b2 = rs("B2");
        // alpha_2 is short: (alpha_2, alpha_2) = 1, and <rho, alpha_2^vee> = 1.
        assert_eq!(b2.root_lengths()[1], q(1, 1));
        assert_eq!(b2.pairing(b2.rho(), &b2.simple_roots()[1]).unwrap(), q(1, 1));
        let g2 = rs("G2");
        assert_eq!(g2.root_lengths()[0], q(2, 3));
    }

    #[test]
    fn root_coordinate_round_trip() {
        let a2 = rs("A2");
        let c = a2.to_root_coords(a2.theta());
        assert_eq!(c, vec![q(1, 1), q(1, 1)]);
        assert_eq!(&a2.from_root_coords(&c), a2.theta());
    }
}
