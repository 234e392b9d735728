//! Symmetric bilinear forms of finite rank and their vectors.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// An exact symmetric bilinear form on `Q^rank`, given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearLattice {
    gram: Matrix,
}

impl BilinearLattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::BadShape);
        }
        if gram.rows() == 0 {
            return Err(Error::ZeroRank);
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { gram })
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        Self::new(Matrix::diagonal(entries))
    }

    /// `diag(1, -1, ..., -1)` of the given rank.
    pub fn standard_hyperbolic(rank: usize) -> Self {
        let entries: Vec<Rational> = (0..rank)
            .map(|i| if i == 0 { crate::rational::int(1) } else { crate::rational::int(-1) })
            .collect();
        Self::diagonal(&entries).expect("rank must be positive")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn signature(&self) -> InertiaSignature {
        InertiaSignature::of_symmetric(&self.gram)
    }

    /// Signature `(1, rank - 1, 0)`.
    pub fn is_hyperbolic(&self) -> bool {
        self.signature() == InertiaSignature { positive: 1, negative: self.rank() - 1, zero: 0 }
    }

    pub fn inner_coords(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..n {
                if !v[j].is_zero() && !self.gram[(i, j)].is_zero() {
                    row += &self.gram[(i, j)] * &v[j];
                }
            }
            acc += &u[i] * row;
        }
        acc
    }
}

/// A vector of a [`BilinearLattice`]. Cheap to clone; the lattice is shared.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Arc<BilinearLattice>,
    coords: Vec<Rational>,
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl LatticeVector {
    pub fn new(lattice: Arc<BilinearLattice>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::MismatchedLattice);
        }
        Ok(Self { lattice, coords })
    }

    pub fn from_ints(lattice: &Arc<BilinearLattice>, coords: &[i64]) -> Result<Self> {
        Self::new(lattice.clone(), coords.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn zero(lattice: Arc<BilinearLattice>) -> Self {
        let n = lattice.rank();
        Self { lattice, coords: alloc::vec![Rational::zero(); n] }
    }

    /// The `i`-th standard basis vector.
    pub fn basis(lattice: &Arc<BilinearLattice>, i: usize) -> Self {
        let mut v = Self::zero(lattice.clone());
        v.coords[i] = crate::rational::int(1);
        v
    }

    pub fn lattice(&self) -> &Arc<BilinearLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::MismatchedLattice)
        }
    }

    /// `uᵀ · gram · v`.
    pub fn inner(&self, other: &Self) -> Result<Rational> {
        self.same_lattice(other)?;
        Ok(self.lattice.inner_coords(&self.coords, &other.coords))
    }

    pub fn square(&self) -> Rational {
        self.lattice.inner_coords(&self.coords, &self.coords)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { lattice: self.lattice.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Self { lattice: self.lattice.clone(), coords })
    }

    /// `self + s * other`
    pub fn try_add_scaled(&self, s: &Rational, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + s * b).collect();
        Ok(Self { lattice: self.lattice.clone(), coords })
    }

    /// True if `other = λ · self` for some rational `λ > 0`.
    pub fn is_positive_multiple_of(&self, other: &Self) -> bool {
        let Some(k) = self.coords.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if other.coords[k].is_zero() {
            return false;
        }
        let lambda = &other.coords[k] / &self.coords[k];
        lambda.is_positive() && self.coords.iter().zip(&other.coords).all(|(a, b)| a * &lambda == *b)
    }

    /// Reflection `x ↦ x - 2 (x·δ)/δ² · δ` in the mirror orthogonal to `self`.
    pub fn reflect(&self, x: &Self) -> Result<Self> {
        reflection(self, x)
    }
}

/// Counts of positive, negative and zero squares of a diagonalized form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InertiaSignature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl InertiaSignature {
    fn of_symmetric(g: &Matrix) -> Self {
        let diag = g.congruence_diagonal();
        let positive = diag.iter().filter(|d| d.is_positive()).count();
        let negative = diag.iter().filter(|d| d.is_negative()).count();
        Self { positive, negative, zero: diag.len() - positive - negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn definiteness(&self) -> DefinitenessClass {
        match (self.positive, self.zero) {
            (0, 0) => DefinitenessClass::NegativeDefinite,
            (0, _) => DefinitenessClass::NegativeSemiDefinite,
            (1, _) => DefinitenessClass::HyperbolicSign,
            _ => DefinitenessClass::Other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefinitenessClass {
    NegativeDefinite,
    /// No positive square and at least one zero square.
    NegativeSemiDefinite,
    /// Exactly one positive square.
    HyperbolicSign,
    Other,
}

impl DefinitenessClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::NegativeDefinite => "NegativeDefinite",
            Self::NegativeSemiDefinite => "NegativeSemiDefinite",
            Self::HyperbolicSign => "HyperbolicSign",
            Self::Other => "Other",
        }
    }
}

pub fn inner(u: &LatticeVector, v: &LatticeVector) -> Result<Rational> {
    u.inner(v)
}

pub fn signature(g: &Matrix) -> Result<InertiaSignature> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(InertiaSignature::of_symmetric(g))
}

pub fn definiteness_class(g: &Matrix) -> Result<DefinitenessClass> {
    Ok(signature(g)?.definiteness())
}

pub fn reflection(delta: &LatticeVector, x: &LatticeVector) -> Result<LatticeVector> {
    let d2 = delta.square();
    if d2.is_zero() {
        return Err(Error::IsotropicMirror);
    }
    let xd = x.inner(delta)?;
    let coef = -(xd * crate::rational::int(2)) / d2;
    x.try_add_scaled(&coef, delta)
}

/// Gram matrix `(v_i · v_j)` of a list of vectors of one lattice.
pub fn gram_of(vectors: &[&LatticeVector]) -> Result<Matrix> {
    for w in vectors.windows(2) {
        w[0].same_lattice(w[1])?;
    }
    let n = vectors.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = vectors[i].lattice.inner_coords(&vectors[i].coords, &vectors[j].coords);
            m[(j, i)] = v.clone();
            m[(i, j)] = v;
        }
    }
    Ok(m)
}
