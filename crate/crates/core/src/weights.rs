//! Angle weights on face complexes and the empirical constants `d`, `C1`, `C2`.
//!
//! A 2-angle is a vertex subset (elliptic, of size `dim`) together with a
//! pair of its members; a 3-angle is the same over an edge subset (size
//! `dim - 1`). Distances are taken in the Gram graph of that subset.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::faces::FaceComplex;
use crate::good::{good_subsets, GoodSubset};
use crate::gram::{lanner_masks, LabelSet, VectorFamily};
use crate::graph::Distance;
use crate::rational::{int, ratio, Rational};
use crate::subsets::{self, Mask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleRecord {
    pub subset: Mask,
    pub pair: (usize, usize),
    pub distance: Distance,
    pub weight: Rational,
}

/// Weight sum over the angles of one 2-face or 3-face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSum {
    pub face: Mask,
    /// Number of vertices (2-faces) or of 2-faces (3-faces).
    pub k: usize,
    pub sum: Rational,
    pub required: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoAngleReport {
    pub d: usize,
    pub angles: Vec<AngleRecord>,
    pub vertex_sums: Vec<(Mask, Rational)>,
    /// `C n + D` with `n = dim`.
    pub vertex_bound: Rational,
    pub condition1: bool,
    /// Compact 2-faces with their sums against `5 - k`.
    pub face_sums: Vec<FaceSum>,
    /// 2-faces with an edge lacking two finite endpoints.
    pub skipped: Vec<Mask>,
    pub condition2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSubsetSum {
    pub subset: GoodSubset,
    /// Weights of the 3-angles with both sides in the subset.
    pub sigma: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeFaceSum {
    pub sum: FaceSum,
    pub closed: bool,
    pub bad: bool,
    pub good_subsets: Vec<GoodSubsetSum>,
}

impl ThreeFaceSum {
    /// Condition (2) applies to closed faces that are not bipyramids.
    pub fn checked(&self) -> bool {
        self.closed && !self.bad
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeAngleReport {
    pub d: usize,
    pub angles: Vec<AngleRecord>,
    pub edge_sums: Vec<(Mask, Rational)>,
    /// `C (n - 1)` with `n = dim`.
    pub edge_bound: Rational,
    pub condition1: bool,
    pub three_faces: Vec<ThreeFaceSum>,
    pub condition2: bool,
}

fn pair_distance(family: &VectorFamily, subset: Mask, a: usize, b: usize) -> Distance {
    family.mask_graph().distance(a, b, subset)
}

fn angles_over(
    fc: &FaceComplex,
    subsets_iter: impl Iterator<Item = Mask>,
    weight: impl Fn(Distance) -> Rational,
) -> Vec<AngleRecord> {
    let mut out = Vec::new();
    for s in subsets_iter {
        let idx = subsets::indices(s);
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                let distance = pair_distance(fc.family(), s, a, b);
                out.push(AngleRecord { subset: s, pair: (a, b), distance, weight: weight(distance) });
            }
        }
    }
    out
}

fn sums_by_subset(angles: &[AngleRecord]) -> Vec<(Mask, Rational)> {
    let mut out: Vec<(Mask, Rational)> = Vec::new();
    for a in angles {
        match out.last_mut() {
            Some((m, s)) if *m == a.subset => *s += &a.weight,
            _ => out.push((a.subset, a.weight.clone())),
        }
    }
    out
}

/// Sum of the weights of angles `(face ∪ pair, pair)`.
fn face_angle_sum(angles: &[AngleRecord], face: Mask) -> Rational {
    angles
        .iter()
        .filter(|a| a.subset & face == face && a.subset & !face == (1 << a.pair.0) | (1 << a.pair.1))
        .fold(Rational::zero(), |acc, a| acc + &a.weight)
}

fn usize_q(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn two_angle_weights(fc: &FaceComplex, d: usize, c: &Rational, dd: &Rational) -> Result<TwoAngleReport> {
    if d == 0 {
        return Err(Error::InvalidParam("d must be positive"));
    }
    let n = fc.dim();
    let angles = angles_over(fc, fc.vertices(), |r| if r.in_range(1, 2 * d + 1) { int(1) } else { int(0) });
    let vertex_sums = sums_by_subset(&angles);
    let vertex_bound = c * usize_q(n) + dd;
    let condition1 = vertex_sums.iter().all(|(_, s)| *s <= vertex_bound);

    let mut face_sums = Vec::new();
    let mut skipped = Vec::new();
    if n >= 2 {
        for f in fc.faces_of_codim(n - 2) {
            if f == 0 {
                continue;
            }
            if !fc.is_compact_face(f) {
                skipped.push(f);
                continue;
            }
            let k = fc.vertices().filter(|v| v & f == f).count();
            let sum = face_angle_sum(&angles, f);
            let required = int(5) - usize_q(k);
            let holds = sum >= required;
            face_sums.push(FaceSum { face: f, k, sum, required, holds });
        }
    }
    let condition2 = face_sums.iter().all(|f| f.holds);
    Ok(TwoAngleReport { d, angles, vertex_sums, vertex_bound, condition1, face_sums, skipped, condition2 })
}

pub fn three_angle_weight(r: Distance, d: usize) -> Rational {
    if r.in_range(1, d) {
        int(1)
    } else if r.in_range(d + 1, 2 * d + 1) {
        ratio(1, 3)
    } else {
        int(0)
    }
}

pub fn three_angle_weights(fc: &FaceComplex, d: usize, c: &Rational) -> Result<ThreeAngleReport> {
    if d == 0 {
        return Err(Error::InvalidParam("d must be positive"));
    }
    let n = fc.dim();
    let angles = angles_over(fc, fc.edges(), |r| three_angle_weight(r, d));
    let edge_sums = sums_by_subset(&angles);
    let edge_bound = c * usize_q(n.saturating_sub(1));
    let condition1 = edge_sums.iter().all(|(_, s)| *s <= edge_bound);

    let mut three_faces = Vec::new();
    if n >= 3 {
        let tfaces: Vec<Mask> =
            if n == 3 { alloc::vec![0] } else { fc.faces_of_codim(n - 3).collect() };
        for t in tfaces {
            let tf = fc.three_face(t)?;
            let k = tf.faces.len();
            let sum = face_angle_sum(&angles, t);
            let required = int(7) - usize_q(k);
            let closed = fc.is_closed_face(t);
            let bad = tf.is_bad();
            let holds = sum >= required;
            let member_of = |i: usize| fc.family().index_of(&tf.faces[i]).expect("2-face label");
            let goods = if k >= 3 { good_subsets(&tf)? } else { Vec::new() };
            let good_sums = goods
                .into_iter()
                .map(|g| {
                    let mut side: Mask = 0;
                    for &i in &g.faces {
                        side |= 1 << member_of(i);
                    }
                    let sigma = angles
                        .iter()
                        .filter(|a| {
                            a.subset & t == t
                                && a.subset & !t == (1 << a.pair.0) | (1 << a.pair.1)
                                && side & (1 << a.pair.0) != 0
                                && side & (1 << a.pair.1) != 0
                        })
                        .fold(Rational::zero(), |acc, a| acc + &a.weight);
                    let holds = sigma >= g.sigma_lower_bound;
                    GoodSubsetSum { subset: g, sigma, holds }
                })
                .collect();
            three_faces.push(ThreeFaceSum {
                sum: FaceSum { face: t, k, sum, required, holds },
                closed,
                bad,
                good_subsets: good_sums,
            });
        }
    }
    let condition2 = three_faces.iter().filter(|f| f.checked()).all(|f| f.sum.holds);
    Ok(ThreeAngleReport { d, angles, edge_sums, edge_bound, condition1, three_faces, condition2 })
}

/// Largest diameter of the Gram graph of a Lanner subset of size at most
/// `max_size`; 0 when there is none.
pub fn lanner_diameter_d(family: &VectorFamily, max_size: usize) -> Result<Distance> {
    let lanner = lanner_masks(family, max_size)?;
    Ok(lanner
        .into_iter()
        .map(|l| family.mask_graph().diameter(l))
        .max()
        .unwrap_or(Distance::Finite(0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Plain graph distance.
    Rho,
    /// Distance with vertices of `Q` free.
    RhoQ,
}

/// Elliptic subsets of the given size containing `q`, grown level by level.
pub fn elliptic_supersets(family: &VectorFamily, q: Mask, size: usize) -> Vec<Mask> {
    let base = q.count_ones() as usize;
    if size < base || size > family.len() {
        return Vec::new();
    }
    if !family.is_elliptic_mask(q) {
        return Vec::new();
    }
    let rest = family.full_mask() & !q;
    let mut level: BTreeSet<Mask> = BTreeSet::from([q]);
    for _ in base..size {
        let mut next = BTreeSet::new();
        for &s in &level {
            let added = s & !q;
            let floor = if added == 0 { 0 } else { 64 - added.leading_zeros() as usize };
            for j in subsets::indices(rest) {
                if j < floor {
                    continue;
                }
                let t = s | (1 << j);
                let closed = subsets::indices(t & !q).iter().all(|&i| level.contains(&(t & !(1 << i))));
                if closed && family.is_elliptic_mask(t) {
                    next.insert(t);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Mask> = level.into_iter().collect();
    out.sort_by_key(|&m| subsets::indices(m));
    out
}

/// `(C1, C2)`: the largest per-element counts of pairs in `E - Q` at
/// distance in `[1, d]` and in `[d + 1, 2d + 1]`, over elliptic `E ⊇ Q` of
/// the given size.
pub fn empirical_constants_mask(
    family: &VectorFamily,
    q: Mask,
    subset_size: usize,
    metric: Metric,
    d: usize,
) -> Result<(Rational, Rational)> {
    if subset_size > family.len() {
        return Err(Error::MaxSizeTooLarge { max: subset_size, len: family.len() });
    }
    if q != 0 && !family.is_elliptic_mask(q) {
        return Err(Error::QNotElliptic);
    }
    let g = family.mask_graph();
    let (mut c1, mut c2) = (Rational::zero(), Rational::zero());
    for e in elliptic_supersets(family, q, subset_size) {
        let free = subsets::indices(e & !q);
        if free.is_empty() {
            continue;
        }
        let (mut near, mut far) = (0usize, 0usize);
        for (i, &a) in free.iter().enumerate() {
            let dist = match metric {
                Metric::Rho => g.distances_from(a, e),
                Metric::RhoQ => g.rho_q_from(a, q, e),
            };
            for &b in &free[i + 1..] {
                if dist[b].in_range(1, d) {
                    near += 1;
                } else if dist[b].in_range(d + 1, 2 * d + 1) {
                    far += 1;
                }
            }
        }
        let m = usize_q(free.len());
        c1 = c1.max(usize_q(near) / &m);
        c2 = c2.max(usize_q(far) / &m);
    }
    Ok((c1, c2))
}

pub fn empirical_constants(
    family: &VectorFamily,
    q: &LabelSet,
    subset_size: usize,
    metric: Metric,
    d: usize,
) -> Result<(Rational, Rational)> {
    let qm = family.mask_of(q)?;
    empirical_constants_mask(family, qm, subset_size, metric, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::enumerate_finite_faces;
    use crate::lattice::{BilinearLattice, LatticeVector};
    use crate::matrix::Matrix;
    use alloc::format;
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;
    use proptest::prelude::*;

    fn corner(k: usize, rank: usize) -> VectorFamily {
        let l = Arc::new(BilinearLattice::standard_hyperbolic(rank));
        let members: Vec<_> = (1..=k).map(|i| (format!("e{i}"), LatticeVector::basis(&l, i))).collect();
        VectorFamily::new(l, members).unwrap()
    }

    fn basis_family(rows: &[&[i64]]) -> VectorFamily {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap();
        let l = Arc::new(BilinearLattice::new(m).unwrap());
        let members: Vec<_> = (0..l.rank()).map(|i| (format!("v{i}"), LatticeVector::basis(&l, i))).collect();
        VectorFamily::new(l, members).unwrap()
    }

    fn set(labels: &[&str]) -> LabelSet {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn corner_weights_vanish() {
        let fc = enumerate_finite_faces(&corner(4, 5), false).unwrap();
        let two = two_angle_weights(&fc, 1, &int(0), &int(0)).unwrap();
        assert!(!two.angles.is_empty());
        assert!(two.angles.iter().all(|a| a.weight.is_zero() && a.distance == Distance::Infinite));
        assert!(two.condition1 && two.condition2);
        let three = three_angle_weights(&fc, 1, &int(0)).unwrap();
        assert!(three.angles.iter().all(|a| a.weight.is_zero()));
        assert!(three.edge_sums.iter().all(|(_, s)| s.is_zero()));
        assert!(three.condition1 && three.condition2);
    }

    #[test]
    fn weight_thresholds() {
        let d = 2;
        assert_eq!(three_angle_weight(Distance::Finite(d), d), int(1));
        assert_eq!(three_angle_weight(Distance::Finite(d + 1), d), ratio(1, 3));
        assert_eq!(three_angle_weight(Distance::Finite(2 * d + 2), d), int(0));
        assert_eq!(three_angle_weight(Distance::Infinite, d), int(0));
    }

    #[test]
    fn two_angle_on_a_compact_triangle() {
        let f = basis_family(&[&[-2, 1, 0], &[1, -2, 2], &[0, 2, -2]]);
        assert!(f.lattice().is_hyperbolic());
        let fc = enumerate_finite_faces(&f, false).unwrap();
        // vertices {0,1}, {0,2} are elliptic; {1,2} is ~A1
        let two = two_angle_weights(&fc, 1, &int(1), &int(0)).unwrap();
        let weights: Vec<(Mask, Rational)> = two.angles.iter().map(|a| (a.subset, a.weight.clone())).collect();
        assert!(weights.contains(&(0b011, int(1))));
        assert!(weights.contains(&(0b101, int(0))));
    }

    #[test]
    fn lanner_diameters() {
        assert_eq!(lanner_diameter_d(&corner(2, 3), 2).unwrap(), Distance::Finite(0));
        let tri = basis_family(&[&[-2, 2, 2], &[2, -2, 2], &[2, 2, -2]]);
        assert_eq!(lanner_diameter_d(&tri, 3).unwrap(), Distance::Finite(1));
        let path = basis_family(&[&[-2, 1, 0, 0], &[1, -2, 1, 0], &[0, 1, -2, 3], &[0, 0, 3, -2]]);
        let l = lanner_masks(&path, 4).unwrap();
        assert_eq!(l, vec![0b1100]);
        let path = basis_family(&[&[-1, 1, 0, 0], &[1, -2, 1, 0], &[0, 1, -2, 2], &[0, 0, 2, -3]]);
        let l = lanner_masks(&path, 4).unwrap();
        assert_eq!(l, vec![0b1111]);
        assert_eq!(lanner_diameter_d(&path, 4).unwrap(), Distance::Finite(3));
    }

    #[test]
    fn constants_examples() {
        let c = corner(3, 4);
        let (c1, c2) = empirical_constants(&c, &set(&[]), 3, Metric::Rho, 2).unwrap();
        assert_eq!((c1, c2), (int(0), int(0)));

        let a3 = basis_family(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]);
        let (c1, c2) = empirical_constants(&a3, &set(&[]), 3, Metric::Rho, 1).unwrap();
        assert_eq!((c1, c2), (ratio(2, 3), ratio(1, 3)));
        let (c1, c2) = empirical_constants(&a3, &set(&["v1"]), 3, Metric::RhoQ, 1).unwrap();
        assert_eq!((c1, c2), (ratio(1, 2), int(0)));

        let tri = basis_family(&[&[-2, 2, 2], &[2, -2, 2], &[2, 2, -2]]);
        assert_eq!(
            empirical_constants(&tri, &set(&["v0", "v1"]), 3, Metric::RhoQ, 1),
            Err(Error::QNotElliptic)
        );
    }

    fn acute_family() -> impl Strategy<Value = VectorFamily> {
        proptest::collection::vec(0i64..=2, 15).prop_map(|w| {
            // 6 members with squares -2 and small nonnegative products
            let n = 6;
            let mut rows = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                rows[i][i] = -2;
                for j in i + 1..n {
                    rows[i][j] = w[k] % 2;
                    rows[j][i] = w[k] % 2;
                    k += 1;
                }
            }
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            basis_family(&refs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rho_q_with_empty_q_matches_rho(f in acute_family(), size in 1usize..=4, d in 1usize..=3) {
            let a = empirical_constants_mask(&f, 0, size, Metric::Rho, d).unwrap();
            let b = empirical_constants_mask(&f, 0, size, Metric::RhoQ, d).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
