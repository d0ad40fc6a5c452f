#![allow(dead_code)]

use std::collections::BTreeMap;

use afftrans::affine::Level;
use afftrans::finchar;
use afftrans::rootsys::{RootSystem, Weight};
use afftrans::weyl;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap())
}

pub fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c.iter().copied())
}

pub fn lvl(p: u64) -> Level {
    Level::new(p, 1).unwrap()
}

fn ints(v: &Weight) -> Vec<i64> {
    v.to_i64s().expect("integral weight")
}

/// Weight multiplicities from the Weyl character formula: the alternating sum
/// `A_{lambda+rho}` divided by `A_rho`, peeling off one dominance-maximal term
/// at a time.
pub fn wcf_multiplicities(rs: &RootSystem, lam: &Weight) -> BTreeMap<Weight, u64> {
    // Sum of root coordinates: strictly increasing along dominance order.
    let height = |v: &[i64]| -> BigRational {
        rs.to_root_coords(&Weight::from_ints(v.iter().copied())).iter().sum()
    };
    let lam_rho = lam + rs.rho();
    let mut rem: BTreeMap<(BigRational, Vec<i64>), i64> = BTreeMap::new();
    let mut denom: Vec<(Vec<i64>, i64)> = Vec::new();
    for g in weyl::elements(rs) {
        let sign = if g.length() % 2 == 0 { 1 } else { -1 };
        let top = ints(&g.act(rs, &lam_rho));
        *rem.entry((height(&top), top)).or_insert(0) += sign;
        denom.push((ints(&g.act(rs, rs.rho())), sign));
    }
    let rho = ints(rs.rho());
    let rho_height = height(&rho);
    let mut out = BTreeMap::new();
    while let Some(((h, top), c)) = rem.pop_last() {
        if c == 0 {
            continue;
        }
        assert!(c > 0, "negative multiplicity in character formula");
        let nu: Vec<i64> = top.iter().zip(&rho).map(|(a, b)| a - b).collect();
        let nu_height = h - &rho_height;
        out.insert(Weight::from_ints(nu.iter().copied()), c as u64);
        for (d, s) in &denom {
            if d == &rho {
                continue;
            }
            let key: Vec<i64> = nu.iter().zip(d).map(|(a, b)| a + b).collect();
            *rem.entry((&nu_height + height(d), key)).or_insert(0) -= c * s;
        }
    }
    out
}

/// Dominant integral weights with `dimension <= limit`, sorted by weight.
pub fn dominant_with_dim_at_most(rs: &RootSystem, limit: u64) -> Vec<(Weight, u64)> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    walk(rs, limit, &mut prefix, &mut out);
    out.sort();
    out
}

fn walk(rs: &RootSystem, limit: u64, prefix: &mut Vec<i64>, out: &mut Vec<(Weight, u64)>) {
    let n = rs.rank();
    if prefix.len() == n {
        let lam = Weight::from_ints(prefix.iter().copied());
        let d = finchar::dimension(rs, &lam).unwrap().to_u64().unwrap();
        out.push((lam, d));
        return;
    }
    let mut c = 0;
    loop {
        let mut probe = prefix.clone();
        probe.push(c);
        probe.resize(n, 0);
        let d = finchar::dimension(rs, &Weight::from_ints(probe)).unwrap();
        if d > BigInt::from(limit) {
            break;
        }
        prefix.push(c);
        walk(rs, limit, prefix, out);
        prefix.pop();
        c += 1;
    }
}

/// The acceptance configurations: A1 at p = 3, 5, 7 and A2 at p = 4, 5.
pub fn configurations() -> Vec<(&'static str, u64)> {
    vec![("A1", 3), ("A1", 5), ("A1", 7), ("A2", 4), ("A2", 5)]
}
