//! Exceptional curves and bounded enumeration of lattice classes.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::SurfaceModel;
use crate::error::{Error, Result};
use crate::gram::LabelSet;
use crate::lattice::{BilinearLattice, LatticeVector};
use crate::rational::{lcm_of_denominators, Rational};

/// Declared curves of negative square.
pub fn exceptional_curves(model: &SurfaceModel) -> LabelSet {
    model.labels(|c| c.square().is_negative())
}

const MAX_BOX: u128 = 20_000_000;

fn scaled_ints(values: &[Rational]) -> Result<(Vec<i128>, i128)> {
    let l = lcm_of_denominators(values.iter());
    let conv = |q: &BigInt| q.to_i128().ok_or(Error::InvalidParam("coefficients too large for enumeration"));
    let ints = values.iter().map(|q| conv(&(q * Rational::from_integer(l.clone())).to_integer())).collect::<Result<_>>()?;
    Ok((ints, conv(&l)?))
}

fn dot(a: &[i128], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(a, &x)| a * x as i128).sum()
}

/// Integral classes `δ` with every coordinate in `[-height, height]`,
/// `δ² = square`, `δ·K = k_product`, and `0 ≤ δ·F ≤ N` for each `(F, N)`
/// in `constraints`. Listed in lexicographic order of coordinates.
pub fn enumerate_classes(
    ns: &Arc<BilinearLattice>,
    k: &LatticeVector,
    square: i64,
    k_product: i64,
    height: u32,
    constraints: &[(LatticeVector, Rational)],
) -> Result<Vec<LatticeVector>> {
    let n = ns.rank();
    if k.lattice().as_ref() != ns.as_ref() || constraints.iter().any(|(f, _)| f.lattice().as_ref() != ns.as_ref()) {
        return Err(Error::MismatchedLattice);
    }
    if height == 0 {
        return Err(Error::InvalidParam("height must be positive"));
    }
    let side = 2 * height as u128 + 1;
    if side.checked_pow(n as u32).map_or(true, |s| s > MAX_BOX) {
        return Err(Error::InvalidParam("search box too large"));
    }

    let gram_entries: Vec<Rational> = ns.gram().to_rows().into_iter().flatten().collect();
    let (g, gl) = scaled_ints(&gram_entries)?;
    let (kw, kl) = scaled_ints(&ns.gram().mul_vec(k.coords()))?;
    let cons = constraints
        .iter()
        .map(|(f, bound)| {
            let (w, l) = scaled_ints(&ns.gram().mul_vec(f.coords()))?;
            // 0 ≤ w·δ / l ≤ bound, i.e. 0 ≤ w·δ ≤ floor(bound·l)
            let hi = (bound * Rational::from_integer(BigInt::from(l))).floor().to_integer();
            Ok((w, hi.to_i128().ok_or(Error::InvalidParam("constraint bound too large"))?))
        })
        .collect::<Result<Vec<_>>>()?;

    let h = height as i64;
    let mut x = vec![-h; n];
    let mut out = Vec::new();
    let target_sq = square as i128 * gl;
    let target_k = k_product as i128 * kl;
    loop {
        let ok_k = dot(&kw, &x) == target_k;
        if ok_k {
            let sq: i128 = (0..n).map(|i| x[i] as i128 * dot(&g[i * n..(i + 1) * n], &x)).sum();
            if sq == target_sq && cons.iter().all(|(w, hi)| (0..=*hi).contains(&dot(w, &x))) {
                out.push(LatticeVector::from_ints(ns, &x)?);
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < h {
                x[i] += 1;
                for y in &mut x[i + 1..] {
                    *y = -h;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::models::*;
    use super::*;
    use crate::rational::int;

    fn coords(v: &[LatticeVector]) -> Vec<Vec<Rational>> {
        v.iter().map(|x| x.coords().to_vec()).collect()
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(exceptional_curves(&f1()).into_iter().collect::<Vec<_>>(), ["e1"]);
        assert_eq!(exceptional_curves(&blowup2()).len(), 3);
        let l = lattice(&[1, -1]);
        let m = SurfaceModel::from_ints(&l, &[-3, 1], &[1, 0], &[("f", &[1, -1])]).unwrap();
        assert!(exceptional_curves(&m).is_empty());
    }

    #[test]
    fn first_kind_classes() {
        let m = f1();
        let r = enumerate_classes(m.ns(), m.canonical(), -1, -1, 3, &[]).unwrap();
        assert_eq!(coords(&r), ints(&[&[0, 1]]));
        let m = blowup2();
        let r = enumerate_classes(m.ns(), m.canonical(), -1, -1, 3, &[]).unwrap();
        assert_eq!(coords(&r), ints(&[&[0, 0, 1], &[0, 1, 0], &[1, -1, -1]]));
        let r = enumerate_classes(m.ns(), m.canonical(), -2, 0, 2, &[]).unwrap();
        assert_eq!(coords(&r), ints(&[&[0, -1, 1], &[0, 1, -1]]));
    }

    #[test]
    fn linear_constraints() {
        let m = blowup2();
        let e1 = m.curve("e1").unwrap().clone();
        let r = enumerate_classes(m.ns(), m.canonical(), -2, 0, 2, &[(e1, int(1))]).unwrap();
        // (e1 - e2)·e1 = -1 is excluded
        assert_eq!(coords(&r), ints(&[&[0, -1, 1]]));
    }

    #[test]
    fn oversized_box() {
        let l = lattice(&[1, -1, -1, -1, -1, -1, -1, -1, -1, -1]);
        let k = LatticeVector::from_ints(&l, &[-3, 1, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        assert!(matches!(enumerate_classes(&l, &k, -1, -1, 5, &[]), Err(Error::InvalidParam(_))));
    }
}
