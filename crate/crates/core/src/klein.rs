//! Exact predicates in the projective (Klein) model of a hyperbolic lattice.
//!
//! Points are rays `R⁺x`. Distances and angles are reported as squared,
//! normalized invariants (`cosh²`, `cos²`) together with a sign, so every
//! comparison stays rational.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, DefinitenessClass, LatticeVector};
use crate::rational::{sign, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjPointType {
    Finite,
    Infinite,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanePairRelation {
    /// Intersecting mirrors; `cos_sq` of the angle and sign of `δ1·δ2`.
    Angle { cos_sq: Rational, sign: i8 },
    /// Mirrors meeting at an infinite point.
    Parallel { sign: i8 },
    /// Disjoint mirrors; `cosh_sq` of their distance.
    Hyperparallel { cosh_sq: Rational, sign: i8 },
}

pub fn point_type(x: &LatticeVector) -> Result<ProjPointType> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let s = x.square();
    Ok(if s.is_positive() {
        ProjPointType::Finite
    } else if s.is_zero() {
        ProjPointType::Infinite
    } else {
        ProjPointType::Outside
    })
}

/// `(x·y)² / (x² y²)`, the squared hyperbolic cosine of the distance.
pub fn cosh_sq_distance(x: &LatticeVector, y: &LatticeVector) -> Result<Rational> {
    let (xx, yy) = (x.square(), y.square());
    if !xx.is_positive() || !yy.is_positive() {
        return Err(Error::NotFinitePoint);
    }
    let xy = x.inner(y)?;
    if !xy.is_positive() {
        return Err(Error::OppositeCones);
    }
    Ok(&xy * &xy / (xx * yy))
}

pub fn plane_pair_relation(d1: &LatticeVector, d2: &LatticeVector) -> Result<PlanePairRelation> {
    let (a, b) = (d1.square(), d2.square());
    if !a.is_negative() || !b.is_negative() {
        return Err(Error::NotNegativeSquare);
    }
    let p = d1.inner(d2)?;
    let s = sign(&p);
    let t = &p * &p / (a * b);
    Ok(if t < Rational::one() {
        PlanePairRelation::Angle { cos_sq: t, sign: s }
    } else if t.is_one() {
        PlanePairRelation::Parallel { sign: s }
    } else {
        PlanePairRelation::Hyperparallel { cosh_sq: t, sign: s }
    })
}

/// `x·δ ≥ 0`.
pub fn half_space_contains(delta: &LatticeVector, x: &LatticeVector) -> Result<bool> {
    if !delta.square().is_negative() {
        return Err(Error::NotNegativeSquare);
    }
    if x.square().is_negative() {
        return Err(Error::NotPoint);
    }
    Ok(!x.inner(delta)?.is_negative())
}

/// Whether the ray `R⁺x` lies on the horosphere `{h : h² = 1, h·c = r}`.
///
/// Tested as `(x·c)² = r² x²` with `x·c > 0`, so no square roots are needed.
pub fn horosphere_member(c: &LatticeVector, r: &Rational, x: &LatticeVector) -> Result<bool> {
    if c.is_zero() || !c.square().is_zero() {
        return Err(Error::NotIsotropicCenter);
    }
    if !r.is_positive() {
        return Err(Error::NonPositiveRadius);
    }
    let xx = x.square();
    if !xx.is_positive() {
        return Err(Error::NotFinitePoint);
    }
    let xc = x.inner(c)?;
    Ok(xc.is_positive() && &xc * &xc == r * r * xx)
}

/// `x'² / x²` where `x'` is the projection of `x` to the orthogonal
/// complement of the normals; the `cosh²` of the distance from `R⁺x` to the
/// subspace cut out by the mirrors.
pub fn cosh_sq_distance_to_subspace(x: &LatticeVector, normals: &[LatticeVector]) -> Result<Rational> {
    let xx = x.square();
    if !xx.is_positive() {
        return Err(Error::NotFinitePoint);
    }
    let refs: Vec<&LatticeVector> = normals.iter().collect();
    let g = lattice::gram_of(&refs)?;
    if !normals.is_empty()
        && lattice::definiteness_class(&g)? != DefinitenessClass::NegativeDefinite
    {
        return Err(Error::NormalsNotNegativeDefinite);
    }
    let b: Vec<Rational> = normals.iter().map(|d| x.inner(d)).collect::<Result<_>>()?;
    if b.iter().all(Zero::is_zero) {
        return Ok(Rational::one());
    }
    let a = g.solve(&b)?;
    // x' = x - Σ aᵢ δᵢ, so x'² = x² - bᵀa
    let proj = a.iter().zip(&b).fold(Rational::zero(), |acc, (ai, bi)| acc + ai * bi);
    Ok((xx - proj) / x.square())
}

/// Whether `R⁺x` is within the tube `cosh² dist ≤ bound` around the subspace.
pub fn tube_contains(x: &LatticeVector, normals: &[LatticeVector], cosh_sq_bound: &Rational) -> Result<bool> {
    Ok(cosh_sq_distance_to_subspace(x, normals)? <= *cosh_sq_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BilinearLattice;
    use crate::rational::{int, ratio};
    use alloc::sync::Arc;
    use alloc::vec;
    use proptest::prelude::*;

    fn hyp(n: usize) -> Arc<BilinearLattice> {
        Arc::new(BilinearLattice::standard_hyperbolic(n))
    }

    fn v(l: &Arc<BilinearLattice>, c: &[Rational]) -> LatticeVector {
        LatticeVector::new(l.clone(), c.to_vec()).unwrap()
    }

    fn vi(l: &Arc<BilinearLattice>, c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(l, c).unwrap()
    }

    fn gram2(a: i64, p: i64, b: i64) -> (LatticeVector, LatticeVector) {
        let m = crate::matrix::Matrix::from_rows(vec![vec![int(a), int(p)], vec![int(p), int(b)]]).unwrap();
        let l = Arc::new(BilinearLattice::new(m).unwrap());
        (vi(&l, &[1, 0]), vi(&l, &[0, 1]))
    }

    #[test]
    fn point_types() {
        let l = hyp(2);
        assert_eq!(point_type(&vi(&l, &[1, 0])).unwrap(), ProjPointType::Finite);
        assert_eq!(point_type(&vi(&l, &[1, 1])).unwrap(), ProjPointType::Infinite);
        assert_eq!(point_type(&vi(&l, &[0, 1])).unwrap(), ProjPointType::Outside);
        assert_eq!(point_type(&vi(&l, &[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn distances() {
        let l = hyp(2);
        let e0 = vi(&l, &[1, 0]);
        assert_eq!(cosh_sq_distance(&e0, &e0).unwrap(), int(1));
        assert_eq!(cosh_sq_distance(&e0, &vi(&l, &[2, 0])).unwrap(), int(1));
        assert_eq!(cosh_sq_distance(&e0, &vi(&l, &[5, 3])).unwrap(), ratio(25, 16));
        assert_eq!(cosh_sq_distance(&e0, &vi(&l, &[-1, 0])), Err(Error::OppositeCones));
        assert_eq!(cosh_sq_distance(&e0, &vi(&l, &[1, 1])), Err(Error::NotFinitePoint));
    }

    #[test]
    fn plane_pairs() {
        let (a, b) = gram2(-2, 0, -1);
        assert_eq!(
            plane_pair_relation(&a, &b).unwrap(),
            PlanePairRelation::Angle { cos_sq: int(0), sign: 0 }
        );
        let (a, b) = gram2(-2, 2, -2);
        assert_eq!(plane_pair_relation(&a, &b).unwrap(), PlanePairRelation::Parallel { sign: 1 });
        let (a, b) = gram2(-2, 3, -2);
        assert_eq!(
            plane_pair_relation(&a, &b).unwrap(),
            PlanePairRelation::Hyperparallel { cosh_sq: ratio(9, 4), sign: 1 }
        );
        let (a, b) = gram2(1, 0, -1);
        assert_eq!(plane_pair_relation(&a, &b), Err(Error::NotNegativeSquare));
    }

    #[test]
    fn half_spaces() {
        let l = hyp(2);
        let e1 = vi(&l, &[0, 1]);
        assert!(half_space_contains(&e1, &vi(&l, &[1, 0])).unwrap());
        assert!(!half_space_contains(&e1, &v(&l, &[int(1), ratio(1, 2)])).unwrap());
        assert!(half_space_contains(&e1, &v(&l, &[int(1), ratio(-1, 2)])).unwrap());
    }

    #[test]
    fn horospheres() {
        let l = hyp(2);
        let c = vi(&l, &[1, 1]);
        let e0 = vi(&l, &[1, 0]);
        assert!(horosphere_member(&c, &int(1), &e0).unwrap());
        assert!(!horosphere_member(&c, &int(2), &e0).unwrap());
        assert!(horosphere_member(&c, &int(1), &vi(&l, &[3, 0])).unwrap());
        assert_eq!(horosphere_member(&e0, &int(1), &e0), Err(Error::NotIsotropicCenter));
        assert_eq!(horosphere_member(&c, &int(0), &e0), Err(Error::NonPositiveRadius));
    }

    #[test]
    fn subspace_distance() {
        let l = hyp(3);
        let e2 = vi(&l, &[0, 0, 1]);
        assert_eq!(cosh_sq_distance_to_subspace(&vi(&l, &[1, 0, 0]), std::slice::from_ref(&e2)).unwrap(), int(1));
        let x = v(&l, &[int(1), int(0), ratio(1, 2)]);
        assert_eq!(cosh_sq_distance_to_subspace(&x, std::slice::from_ref(&e2)).unwrap(), ratio(4, 3));
        assert!(tube_contains(&x, std::slice::from_ref(&e2), &ratio(4, 3)).unwrap());
        assert!(!tube_contains(&x, std::slice::from_ref(&e2), &ratio(5, 4)).unwrap());
        let e0 = vi(&l, &[1, 0, 0]);
        assert_eq!(
            cosh_sq_distance_to_subspace(&e0, &[vi(&l, &[1, 1, 0])]),
            Err(Error::NormalsNotNegativeDefinite)
        );
    }

    fn q() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
    }

    fn pos() -> impl Strategy<Value = Rational> {
        (1i64..=7, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
    }

    /// Coordinates of a point in the future cone of `diag(1, -1, ..)`.
    fn timelike(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        (pos(), proptest::collection::vec(q(), n - 1)).prop_map(|(h, tail)| {
            let head = tail.iter().fold(h, |acc, c| acc + c.abs());
            core::iter::once(head).chain(tail).collect()
        })
    }

    proptest! {
        #[test]
        fn trichotomy(a in proptest::collection::vec(q(), 3), b in proptest::collection::vec(q(), 3)) {
            let l = hyp(3);
            let (d1, d2) = (v(&l, &a), v(&l, &b));
            prop_assume!(d1.square().is_negative() && d2.square().is_negative());
            let p = d1.inner(&d2).unwrap();
            let t = &p * &p / (d1.square() * d2.square());
            let rel = plane_pair_relation(&d1, &d2).unwrap();
            match rel {
                PlanePairRelation::Angle { .. } => prop_assert!(t < int(1)),
                PlanePairRelation::Parallel { .. } => prop_assert!(t == int(1)),
                PlanePairRelation::Hyperparallel { .. } => prop_assert!(t > int(1)),
            }
        }

        #[test]
        fn distance_at_least_one(a in timelike(3), b in timelike(3), s in pos(), t in pos(), same in any::<bool>()) {
            let l = hyp(3);
            let x = v(&l, &a);
            let y = if same { x.scaled(&t) } else { v(&l, &b) };
            let d = cosh_sq_distance(&x, &y).unwrap();
            prop_assert!(d >= int(1));
            let same_ray = x.is_positive_multiple_of(&y);
            prop_assert_eq!(d == int(1), same_ray);
            prop_assert_eq!(cosh_sq_distance(&x.scaled(&s), &y.scaled(&t)).unwrap(), d);
        }

        #[test]
        fn subspace_distance_properties(a in timelike(4), s in pos(), on_plane in any::<bool>()) {
            let l = hyp(4);
            let mut a = a;
            if on_plane {
                a[1] = int(0);
                a[2] = int(0);
            }
            let x = v(&l, &a);
            let normals = [vi(&l, &[0, 1, 0, 0]), vi(&l, &[0, 1, 1, 0])];
            let d = cosh_sq_distance_to_subspace(&x, &normals).unwrap();
            prop_assert!(d >= int(1));
            let on = normals.iter().all(|n| x.inner(n).unwrap().is_zero());
            prop_assert_eq!(d == int(1), on);
            prop_assert_eq!(cosh_sq_distance_to_subspace(&x.scaled(&s), &normals).unwrap(), d);
        }
    }
}
