//! Combinatorial face lattices of convex polytopes and face-average bounds.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// Proper faces of an `n`-polytope listed by dimension `0..n`, with
/// incidences `(child, parent)`. Incidences need not be transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLatticeInput {
    pub dim: usize,
    /// `faces[m]` lists the ids of the `m`-dimensional faces, `m < dim`.
    pub faces: Vec<Vec<String>>,
    pub incidence: Vec<(String, String)>,
}

/// Indexed form of a [`FaceLatticeInput`] with transitive containment.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    dim: usize,
    face_dim: Vec<usize>,
    /// `above[f]` is a bitset of the faces strictly containing `f`.
    above: Vec<Vec<u64>>,
}

impl FaceLattice {
    pub fn new(input: &FaceLatticeInput) -> Result<Self> {
        let n = input.dim;
        if input.faces.len() > n {
            return Err(Error::MalformedLattice(format!(
                "faces listed up to dimension {} in a {n}-polytope",
                input.faces.len() - 1
            )));
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        let mut face_dim = Vec::new();
        for (m, ids) in input.faces.iter().enumerate() {
            for id in ids {
                if index.insert(id.as_str(), face_dim.len()).is_some() {
                    return Err(Error::MalformedLattice(format!("duplicate face id `{id}`")));
                }
                face_dim.push(m);
            }
        }
        let count = face_dim.len();
        let words = count.div_ceil(64).max(1);
        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (child, parent) in &input.incidence {
            let lookup = |id: &String| {
                index
                    .get(id.as_str())
                    .copied()
                    .ok_or_else(|| Error::MalformedLattice(format!("unknown face id `{id}`")))
            };
            let (c, p) = (lookup(child)?, lookup(parent)?);
            if face_dim[c] >= face_dim[p] {
                return Err(Error::MalformedLattice(format!(
                    "`{child}` cannot lie in `{parent}` of no larger dimension"
                )));
            }
            parents[c].push(p);
        }
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&f| core::cmp::Reverse(face_dim[f]));
        let mut above = vec![vec![0u64; words]; count];
        for &f in &order {
            let mut acc = vec![0u64; words];
            for &p in &parents[f] {
                acc[p / 64] |= 1 << (p % 64);
                for (a, b) in acc.iter_mut().zip(&above[p]) {
                    *a |= b;
                }
            }
            above[f] = acc;
        }
        Ok(Self { dim: n, face_dim, above })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, m: usize) -> usize {
        self.face_dim.iter().filter(|&&d| d == m).count()
    }

    fn above_of_dim(&self, f: usize, m: usize) -> usize {
        let mut count = 0;
        for (w, &word) in self.above[f].iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let g = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                count += usize::from(self.face_dim[g] == m);
            }
        }
        count
    }

    /// Number of facets containing `f`, counting `f` itself if it is one.
    fn facets_containing(&self, f: usize) -> usize {
        let top = self.dim - 1;
        if self.face_dim[f] == top { 1 } else { self.above_of_dim(f, top) }
    }

    pub fn is_simple_in_dimension(&self, k: usize) -> bool {
        (0..self.face_dim.len())
            .filter(|&f| self.face_dim[f] >= k)
            .all(|f| self.facets_containing(f) == self.dim - self.face_dim[f])
    }

    /// Mean number of `i`-faces per `k`-face.
    pub fn face_average(&self, i: usize, k: usize) -> Result<Rational> {
        if i >= k || k + 1 > self.dim {
            return Err(Error::BadDimensions);
        }
        let kfaces = self.count(k);
        if kfaces == 0 {
            return Err(Error::NoKFaces(k));
        }
        let pairs: usize = (0..self.face_dim.len())
            .filter(|&f| self.face_dim[f] == i)
            .map(|f| self.above_of_dim(f, k))
            .sum();
        Ok(Rational::new(BigInt::from(pairs), BigInt::from(kfaces)))
    }
}

pub fn is_simple_in_dimension(fl: &FaceLatticeInput, k: usize) -> Result<bool> {
    Ok(FaceLattice::new(fl)?.is_simple_in_dimension(k))
}

pub fn face_average(fl: &FaceLatticeInput, i: usize, k: usize) -> Result<Rational> {
    FaceLattice::new(fl)?.face_average(i, k)
}

/// Upper bound for the average number of `i`-faces of `k`-faces of a simple
/// `n`-polytope:
/// `C(n-i, n-k) (C(⌊n/2⌋, i) + C(⌈n/2⌉, i)) / (C(⌊n/2⌋, k) + C(⌈n/2⌉, k))`.
pub fn khovanskii_bound(n: i64, i: i64, k: i64) -> Result<Rational> {
    if i < 0 || i >= k || n < 2 * k - 1 {
        return Err(Error::DomainViolation);
    }
    let (lo, hi) = (n / 2, n - n / 2);
    let num = binomial(n - i, n - k) * (binomial(lo, i) + binomial(hi, i));
    let den = binomial(lo, k) + binomial(hi, k);
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageCheck {
    pub i: usize,
    pub k: usize,
    pub average: Rational,
    pub bound: Rational,
    pub holds: bool,
}

/// `α0 · n(n-1)/2 = α2 · A^{0,2}` for a polytope simple in dimension 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexIdentity {
    pub alpha0: usize,
    pub alpha2: usize,
    pub average02: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceAverageReport {
    pub dim: usize,
    pub checks: Vec<AverageCheck>,
    pub identity: Option<VertexIdentity>,
}

impl FaceAverageReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.identity.as_ref().map_or(true, |i| i.holds)
    }
}

pub const CHECKED_PAIRS: [(usize, usize); 4] = [(0, 2), (1, 3), (2, 3), (3, 4)];

pub fn check_face_average_bounds(fl: &FaceLatticeInput) -> Result<FaceAverageReport> {
    let lat = FaceLattice::new(fl)?;
    if !lat.is_simple_in_dimension(1) {
        return Err(Error::NotSimpleInDim1);
    }
    let n = lat.dim();
    let mut checks = Vec::new();
    for (i, k) in CHECKED_PAIRS {
        if k + 1 > n || n + 1 < 2 * k || lat.count(k) == 0 {
            continue;
        }
        let average = lat.face_average(i, k)?;
        let bound = khovanskii_bound(n as i64, i as i64, k as i64)?;
        let holds = average < bound;
        checks.push(AverageCheck { i, k, average, bound, holds });
    }
    let identity = if n >= 3 && lat.is_simple_in_dimension(0) && lat.count(2) > 0 {
        let alpha0 = lat.count(0);
        let alpha2 = lat.count(2);
        let average02 = lat.face_average(0, 2)?;
        let lhs = Rational::from_integer(BigInt::from(alpha0 * n * (n - 1) / 2));
        let holds = lhs == &average02 * Rational::from_integer(BigInt::from(alpha2));
        Some(VertexIdentity { alpha0, alpha2, average02, holds })
    } else {
        None
    };
    Ok(FaceAverageReport { dim: n, checks, identity })
}

/// Face lattice of the `n`-cube; faces are words over `{0, 1, *}`.
pub fn cube(n: usize) -> Result<FaceLatticeInput> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidParam("generator dimension must be in 1..=8"));
    }
    let mut faces = vec![Vec::new(); n];
    let mut incidence = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let word: Vec<u8> = (0..n).map(|j| (code / 3usize.pow(j as u32) % 3) as u8).collect();
        let stars = word.iter().filter(|&&c| c == 2).count();
        if stars == n {
            continue;
        }
        let name = cube_name(&word);
        faces[stars].push(name.clone());
        for (j, &c) in word.iter().enumerate() {
            if c == 2 {
                for bit in 0..2 {
                    let mut child = word.clone();
                    child[j] = bit;
                    incidence.push((cube_name(&child), name.clone()));
                }
            }
        }
    }
    for f in &mut faces {
        f.sort();
    }
    Ok(FaceLatticeInput { dim: n, faces, incidence })
}

fn cube_name(word: &[u8]) -> String {
    word.iter().map(|&c| match c { 0 => '0', 1 => '1', _ => '*' }).collect()
}

/// Face lattice of the `n`-simplex; faces are nonempty proper vertex sets.
pub fn simplex(n: usize) -> Result<FaceLatticeInput> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidParam("generator dimension must be in 1..=8"));
    }
    let mut faces = vec![Vec::new(); n];
    let mut incidence = Vec::new();
    let full = (1u32 << (n + 1)) - 1;
    for set in 1..full {
        let size = set.count_ones() as usize;
        let name = simplex_name(set);
        faces[size - 1].push(name.clone());
        for v in 0..=n {
            let parent = set | (1 << v);
            if parent != set && parent != full {
                incidence.push((name.clone(), simplex_name(parent)));
            }
        }
    }
    for f in &mut faces {
        f.sort();
    }
    Ok(FaceLatticeInput { dim: n, faces, incidence })
}

fn simplex_name(set: u32) -> String {
    let parts: Vec<String> = (0..32).filter(|v| set & (1 << v) != 0).map(|v| format!("{v}")).collect();
    format!("s{}", parts.join("-"))
}
