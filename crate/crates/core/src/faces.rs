//! Face complexes of acute-angled polyhedra.
//!
//! Faces are elliptic subsets of the facet normals (a subset of size `k` is a
//! face of codimension `k`). Infinite vertices are isotropic rays spanned by
//! connected parabolic subsets; two such subsets name the same point exactly
//! when their rays agree, which is the case for disjoint mutually orthogonal
//! ones.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::face_lattice::FaceLatticeInput;
use crate::good::{FaceVertex, ThreeFace};
use crate::gram::{LabelSet, SubsetClass, VectorFamily};
use crate::lattice::{DefinitenessClass, LatticeVector};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::subsets::{self, Mask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteVertex {
    /// Isotropic line, scaled so its first nonzero coordinate is 1.
    pub ray: Vec<Rational>,
    /// Connected parabolic subsets spanning this ray.
    pub parabolic: Vec<Mask>,
}

/// Endpoints of an edge: members completing it to a finite vertex, and
/// infinite vertices (indices into [`FaceComplex::infinite_vertices`]).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Endpoints {
    pub finite: Vec<usize>,
    pub infinite: Vec<usize>,
}

impl Endpoints {
    pub fn count(&self) -> usize {
        self.finite.len() + self.infinite.len()
    }
}

#[derive(Debug, Clone)]
pub struct FaceComplex {
    family: VectorFamily,
    dim: usize,
    faces: Vec<Mask>,
    face_set: BTreeSet<Mask>,
    infinite: Vec<InfiniteVertex>,
    ray_index: BTreeMap<Vec<Rational>, usize>,
    unwitnessed: Option<Vec<Mask>>,
}

/// Builds the face complex. With `witness`, every elliptic subset is also
/// checked for a vector orthogonal to it with positive products against all
/// other members; failures are listed by [`FaceComplex::unwitnessed`].
pub fn enumerate_finite_faces(family: &VectorFamily, witness: bool) -> Result<FaceComplex> {
    if !family.lattice().is_hyperbolic() {
        return Err(Error::AmbientNotHyperbolic);
    }
    let n = family.len();
    let g = family.gram();
    for i in 0..n {
        for j in i + 1..n {
            if g[(i, j)].is_negative() {
                let l = family.labels();
                return Err(Error::NotAcuteAngled(l[i].clone(), l[j].clone()));
            }
        }
    }
    let dim = family.lattice().rank() - 1;

    let mut faces = Vec::new();
    let mut face_set = BTreeSet::new();
    let mut level: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
    for size in 1..=dim.min(n) {
        if size > 1 {
            let mut next = BTreeSet::new();
            for &s in &level {
                let top = 63 - s.leading_zeros() as usize;
                for j in top + 1..n {
                    let t = s | (1 << j);
                    let closed = subsets::indices(t).iter().all(|&i| face_set.contains(&(t & !(1 << i))));
                    if closed && family.is_elliptic_mask(t) {
                        next.insert(t);
                    }
                }
            }
            level = next.into_iter().collect();
        }
        level.sort_by_key(|&m| subsets::indices(m));
        face_set.extend(level.iter().copied());
        faces.extend(level.iter().copied());
        if level.is_empty() {
            break;
        }
    }

    let mut fc = FaceComplex {
        family: family.clone(),
        dim,
        faces,
        face_set,
        infinite: Vec::new(),
        ray_index: BTreeMap::new(),
        unwitnessed: None,
    };
    fc.collect_infinite_vertices();
    if witness {
        fc.unwitnessed = Some(fc.faces.iter().copied().filter(|&f| !fc.has_witness(f)).collect());
    }
    Ok(fc)
}

impl FaceComplex {
    pub fn family(&self) -> &VectorFamily {
        &self.family
    }

    /// Dimension of the Lobachevsky space, `rank - 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All faces (nonempty elliptic subsets), by size and then lexicographically.
    pub fn faces(&self) -> &[Mask] {
        &self.faces
    }

    pub fn faces_of_codim(&self, k: usize) -> impl Iterator<Item = Mask> + '_ {
        self.faces.iter().copied().filter(move |f| f.count_ones() as usize == k)
    }

    pub fn is_face(&self, mask: Mask) -> bool {
        mask == 0 || self.face_set.contains(&mask)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Mask> + '_ {
        self.faces_of_codim(self.dim)
    }

    pub fn edges(&self) -> impl Iterator<Item = Mask> + '_ {
        self.faces_of_codim(self.dim.saturating_sub(1))
    }

    /// Number of faces of each codimension `0..=dim`, counting the whole
    /// polyhedron as the single face of codimension 0.
    pub fn codim_counts(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| if k == 0 { 1 } else { self.faces_of_codim(k).count() }).collect()
    }

    pub fn infinite_vertices(&self) -> &[InfiniteVertex] {
        &self.infinite
    }

    pub fn unwitnessed(&self) -> Option<&[Mask]> {
        self.unwitnessed.as_deref()
    }

    pub fn labels_of(&self, mask: Mask) -> LabelSet {
        self.family.labels_of(mask)
    }

    fn collect_infinite_vertices(&mut self) {
        let mut seen = BTreeSet::new();
        let n = self.family.len();
        let faces = self.faces.clone();
        for s in faces {
            for y in 0..n {
                let p = s | (1 << y);
                if p == s || !seen.insert(p) {
                    continue;
                }
                if self.family.classify_mask(p) == SubsetClass::ConnectedParabolic {
                    if let Some(ray) = self.kernel_ray(p) {
                        let next = self.infinite.len();
                        let k = *self.ray_index.entry(ray.clone()).or_insert(next);
                        if k == next {
                            self.infinite.push(InfiniteVertex { ray, parabolic: Vec::new() });
                        }
                        self.infinite[k].parabolic.push(p);
                    }
                }
            }
        }
        for v in &mut self.infinite {
            v.parabolic.sort_by_key(|&m| (m.count_ones(), subsets::indices(m)));
        }
    }

    /// Isotropic ray `Σ aᵢ δᵢ` for a kernel vector `a` of the Gram matrix of
    /// a connected parabolic subset.
    fn kernel_ray(&self, p: Mask) -> Option<Vec<Rational>> {
        let idx = subsets::indices(p);
        let kernel = self.family.gram().principal(&idx).kernel();
        let a = kernel.first()?;
        let rank = self.family.lattice().rank();
        let mut c = alloc::vec![Rational::zero(); rank];
        for (coef, &i) in a.iter().zip(&idx) {
            for (cj, dj) in c.iter_mut().zip(self.family.vectors()[i].coords()) {
                *cj += coef * dj;
            }
        }
        let lead = c.iter().find(|x| !x.is_zero())?.clone();
        Some(c.into_iter().map(|x| x / &lead).collect())
    }

    fn ray_of_parabolic_part(&self, s: Mask, y: usize) -> Option<usize> {
        let comp = self
            .family
            .mask_graph()
            .components(s | (1 << y))
            .into_iter()
            .find(|c| c & (1 << y) != 0)?;
        let ray = self.kernel_ray(comp)?;
        self.ray_index.get(&ray).copied()
    }

    pub fn edge_endpoints(&self, edge: Mask) -> Endpoints {
        let mut out = Endpoints::default();
        for y in 0..self.family.len() {
            let t = edge | (1 << y);
            if t == edge {
                continue;
            }
            if self.face_set.contains(&t) {
                out.finite.push(y);
                continue;
            }
            if self.family.is_hyperbolic_mask(t) {
                continue;
            }
            if let Some(k) = self.ray_of_parabolic_part(edge, y) {
                if !out.infinite.contains(&k) {
                    out.infinite.push(k);
                }
            }
        }
        out.infinite.sort_unstable();
        out
    }

    /// Edges (faces of dimension 1) inside the face `f`.
    pub fn edges_in(&self, f: Mask) -> impl Iterator<Item = Mask> + '_ {
        self.edges().filter(move |e| e & f == f)
    }

    /// Every edge of the face has two finite endpoints.
    pub fn is_compact_face(&self, f: Mask) -> bool {
        self.edges_in(f).all(|e| {
            let ends = self.edge_endpoints(e);
            ends.finite.len() == 2 && ends.infinite.is_empty()
        })
    }

    /// Every edge of the face has two endpoints, finite or infinite.
    pub fn is_closed_face(&self, f: Mask) -> bool {
        self.edges_in(f).all(|e| self.edge_endpoints(e).count() == 2)
    }

    fn has_witness(&self, f: Mask) -> bool {
        let g = self.family.lattice().gram();
        let dual = |v: &LatticeVector| g.mul_vec(v.coords());
        let vecs = self.family.vectors();
        let eq: Vec<Vec<Rational>> = subsets::indices(f).iter().map(|&i| dual(&vecs[i])).collect();
        let others = subsets::indices(self.family.full_mask() & !f);
        let ge: Vec<Vec<Rational>> = others.iter().map(|&i| dual(&vecs[i])).collect();
        let eq_rhs = alloc::vec![Rational::zero(); eq.len()];
        let ge_rhs = alloc::vec![crate::rational::int(1); ge.len()];
        crate::lp::solve_mixed(&eq, &eq_rhs, &ge, &ge_rhs).is_some()
    }

    /// Combinatorics of a 3-dimensional face: its 2-faces are named by the
    /// member added to `t`, edges by pairs, vertices by triples (finite) or
    /// by infinite vertices lying on `t`.
    pub fn three_face(&self, t: Mask) -> Result<ThreeFace> {
        if self.dim < 3 || t.count_ones() as usize != self.dim - 3 || !self.is_face(t) {
            return Err(Error::NotThreeDimensional);
        }
        let n = self.family.len();
        let xs: Vec<usize> = (0..n).filter(|&x| t & (1 << x) == 0 && self.is_face(t | (1 << x))).collect();
        let pos = |x: usize| xs.iter().position(|&y| y == x);
        let names: Vec<String> = xs.iter().map(|&x| self.family.labels()[x].clone()).collect();
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        for (a, &x) in xs.iter().enumerate() {
            for (b, &y) in xs.iter().enumerate().skip(a + 1) {
                if self.is_face(t | (1 << x) | (1 << y)) {
                    edges.push((a, b));
                }
            }
        }
        for v in self.faces_of_codim(self.dim) {
            if v & t == t {
                let mut fs: Vec<usize> = subsets::indices(v & !t).into_iter().filter_map(pos).collect();
                fs.sort_unstable();
                vertices.push(FaceVertex { faces: fs, infinite: false });
            }
        }
        let g = self.family.lattice().gram();
        for iv in &self.infinite {
            let c = g.mul_vec(&iv.ray);
            let perp = |i: usize| {
                self.family.vectors()[i].coords().iter().zip(&c).fold(Rational::zero(), |acc, (p, q)| acc + p * q).is_zero()
            };
            if !subsets::indices(t).into_iter().all(perp) {
                continue;
            }
            let fs: Vec<usize> = xs.iter().enumerate().filter(|(_, &x)| perp(x)).map(|(a, _)| a).collect();
            let mut span = t;
            for &a in &fs {
                span |= 1 << xs[a];
            }
            // the ray is a point of the 3-face when the normals through it
            // have the maximal rank dim - 1
            if fs.len() >= 3 && self.family.gram_of_mask(span).rank() == self.dim - 1 {
                vertices.push(FaceVertex { faces: fs, infinite: true });
            }
        }
        Ok(ThreeFace { faces: names, edges, vertices })
    }

    /// Face lattice in the dimension convention of [`FaceLatticeInput`]:
    /// a face of codimension `k` has dimension `dim - k`.
    pub fn to_face_lattice(&self) -> FaceLatticeInput {
        let name = |m: Mask| {
            let parts: Vec<String> = subsets::indices(m).iter().map(|&i| self.family.labels()[i].clone()).collect();
            format!("{{{}}}", parts.join(","))
        };
        let mut faces = alloc::vec![Vec::new(); self.dim];
        let mut incidence = Vec::new();
        for &f in &self.faces {
            let k = f.count_ones() as usize;
            faces[self.dim - k].push(name(f));
            for i in subsets::indices(f) {
                let parent = f & !(1 << i);
                if parent != 0 {
                    incidence.push((name(f), name(parent)));
                }
            }
        }
        FaceLatticeInput { dim: self.dim, faces, incidence }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindFaceMode {
    /// Polyhedron parabolic relative to the infinite point `R⁺c`.
    Parabolic { c: LatticeVector },
    /// Polyhedron hyperbolic relative to the subspace cut out by `normals`.
    Hyperbolic { normals: Vec<LatticeVector> },
}

/// Searches for the elliptic face promised for parabolic and hyperbolic
/// polyhedra. `None` means the combinatorial search was exhausted, which
/// indicates that the input does not satisfy the hypotheses.
pub fn find_elliptic_face(family: &VectorFamily, mode: &FindFaceMode) -> Result<Option<LabelSet>> {
    let fc = enumerate_finite_faces(family, false)?;
    let vecs = family.vectors();
    match mode {
        FindFaceMode::Parabolic { c } => {
            if c.is_zero() || !c.square().is_zero() {
                return Err(Error::ModeDataInvalid("center must be a nonzero isotropic vector"));
            }
            for i in 0..family.len() {
                if vecs[i].inner(c)?.is_zero() {
                    continue;
                }
                let f = 1 << i;
                if fc.edges_in(f).next().is_some() && fc.is_compact_face(f) {
                    return Ok(Some(family.labels_of(f)));
                }
            }
            Ok(None)
        }
        FindFaceMode::Hyperbolic { normals } => {
            if normals.is_empty() {
                return Err(Error::ModeDataInvalid("at least one normal is required"));
            }
            let refs: Vec<&LatticeVector> = normals.iter().collect();
            let g = crate::lattice::gram_of(&refs)?;
            if crate::lattice::definiteness_class(&g)? != DefinitenessClass::NegativeDefinite {
                return Err(Error::ModeDataInvalid("normals must have a negative definite Gram matrix"));
            }
            let rank = family.lattice().rank();
            let span = Matrix::from_fn(rank, normals.len(), |i, j| normals[j].coords()[i].clone());
            let outside: Mask = (0..family.len())
                .filter(|&i| span.solve_any(vecs[i].coords()).is_none())
                .fold(0, |m, i| m | (1 << i));
            let dim_t = fc.dim() - normals.len();
            let max = normals.len().min(dim_t);
            for k in (1..=max).rev() {
                if let Some(f) = fc.faces_of_codim(k).find(|f| f & outside == *f) {
                    return Ok(Some(family.labels_of(f)));
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BilinearLattice;
    use crate::rational::int;
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;

    fn corner(k: usize, rank: usize) -> VectorFamily {
        let l = Arc::new(BilinearLattice::standard_hyperbolic(rank));
        let members: Vec<_> = (1..=k).map(|i| (format!("e{i}"), LatticeVector::basis(&l, i))).collect();
        VectorFamily::new(l, members).unwrap()
    }

    fn set(labels: &[&str]) -> LabelSet {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn corner_faces() {
        let fc = enumerate_finite_faces(&corner(2, 3), false).unwrap();
        assert_eq!(fc.faces().len(), 3);
        assert_eq!(fc.vertices().count(), 1);
        for k in 1..=4 {
            let fc = enumerate_finite_faces(&corner(k, k + 1), false).unwrap();
            assert_eq!(fc.faces().len(), (1 << k) - 1);
            let counts = fc.codim_counts();
            for (j, &c) in counts.iter().enumerate() {
                assert_eq!(c as u64, crate::rational::binomial(k as i64, j as i64).try_into().unwrap());
            }
        }
    }

    #[test]
    fn lanner_triple_has_no_vertices() {
        let m = Matrix::from_rows(vec![
            vec![int(-2), int(2), int(2)],
            vec![int(2), int(-2), int(2)],
            vec![int(2), int(2), int(-2)],
        ])
        .unwrap();
        let l = Arc::new(BilinearLattice::new(m).unwrap());
        let members: Vec<_> = (0..3).map(|i| (format!("v{i}"), LatticeVector::basis(&l, i))).collect();
        let f = VectorFamily::new(l, members).unwrap();
        let fc = enumerate_finite_faces(&f, false).unwrap();
        assert_eq!(fc.faces().len(), 3);
        assert!(fc.faces().iter().all(|m| m.count_ones() == 1));
        assert_eq!(fc.vertices().count(), 0);
        // each pair is an ~A1 subset; all three pairs give distinct infinite points
        assert_eq!(fc.infinite_vertices().len(), 3);
    }

    #[test]
    fn rejects_obtuse_and_non_hyperbolic() {
        let l = Arc::new(BilinearLattice::standard_hyperbolic(3));
        let f = VectorFamily::from_ints(&l, &[("a", &[0, 1, 0]), ("b", &[0, 1, 1])]).unwrap();
        assert_eq!(
            enumerate_finite_faces(&f, false).unwrap_err(),
            Error::NotAcuteAngled("a".into(), "b".into())
        );
        let l = Arc::new(BilinearLattice::diagonal(&[int(-1), int(-1)]).unwrap());
        let f = VectorFamily::from_ints(&l, &[("a", &[1, 0])]).unwrap();
        assert_eq!(enumerate_finite_faces(&f, false).unwrap_err(), Error::AmbientNotHyperbolic);
    }

    /// Ideal triangle in the plane: the three pairs are parabolic.
    fn ideal_triangle() -> VectorFamily {
        let m = Matrix::from_rows(vec![
            vec![int(-1), int(1), int(1)],
            vec![int(1), int(-1), int(1)],
            vec![int(1), int(1), int(-1)],
        ])
        .unwrap();
        let l = Arc::new(BilinearLattice::new(m).unwrap());
        let members: Vec<_> = ["a", "b", "c"].iter().enumerate().map(|(i, n)| (n.to_string(), LatticeVector::basis(&l, i))).collect();
        VectorFamily::new(l, members).unwrap()
    }

    #[test]
    fn infinite_endpoints() {
        let f = ideal_triangle();
        let fc = enumerate_finite_faces(&f, true).unwrap();
        assert_eq!(fc.infinite_vertices().len(), 3);
        for e in fc.edges() {
            let ends = fc.edge_endpoints(e);
            assert_eq!((ends.finite.len(), ends.infinite.len()), (0, 2));
        }
        assert!(fc.is_closed_face(0b001));
        assert!(!fc.is_compact_face(0b001));
        assert_eq!(fc.unwitnessed().unwrap(), &[] as &[Mask]);
    }

    #[test]
    fn witness_flags_redundant_member() {
        // opposite mirrors bound no region with a face on either
        let l = Arc::new(BilinearLattice::standard_hyperbolic(3));
        let f = VectorFamily::from_ints(&l, &[("a", &[0, 1, 0]), ("b", &[0, -1, 0])]).unwrap();
        let fc = enumerate_finite_faces(&f, true).unwrap();
        assert_eq!(fc.unwitnessed().unwrap(), &[0b01, 0b10]);
        let ok = enumerate_finite_faces(&corner(3, 4), true).unwrap();
        assert!(ok.unwitnessed().unwrap().is_empty());
    }

    #[test]
    fn find_face_examples() {
        let f = corner(2, 3);
        let l = f.lattice().clone();
        let mode = FindFaceMode::Hyperbolic { normals: vec![LatticeVector::basis(&l, 1)] };
        assert_eq!(find_elliptic_face(&f, &mode).unwrap(), Some(set(&["e2"])));

        let f3 = corner(3, 4);
        let l3 = f3.lattice().clone();
        let mode = FindFaceMode::Hyperbolic {
            normals: vec![LatticeVector::basis(&l3, 1), LatticeVector::basis(&l3, 2)],
        };
        assert_eq!(find_elliptic_face(&f3, &mode).unwrap(), Some(set(&["e3"])));

        // c = e0 + e3 is orthogonal to e1 and e2
        let c = LatticeVector::from_ints(&l3, &[1, 0, 0, 1]).unwrap();
        let f12 = corner(2, 4);
        let c12 = LatticeVector::new(f12.lattice().clone(), c.coords().to_vec()).unwrap();
        assert_eq!(find_elliptic_face(&f12, &FindFaceMode::Parabolic { c: c12 }).unwrap(), None);

        let bad = LatticeVector::basis(&l, 0);
        assert!(matches!(
            find_elliptic_face(&f, &FindFaceMode::Parabolic { c: bad }),
            Err(Error::ModeDataInvalid(_))
        ));
    }

    #[test]
    fn derived_lattice_is_simple() {
        let fc = enumerate_finite_faces(&corner(3, 4), false).unwrap();
        let fl = fc.to_face_lattice();
        assert!(crate::face_lattice::is_simple_in_dimension(&fl, 1).unwrap());
        assert!(crate::face_lattice::is_simple_in_dimension(&fl, 0).unwrap());
    }
}
