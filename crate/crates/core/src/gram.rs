//! Vector families, their Gram graphs, and the subset taxonomy.
//!
//! A [`VectorFamily`] orders its members by label; internally subsets are
//! bit masks over that order (see [`crate::subsets`]), which caps a family at
//! 64 members.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Distance, MaskGraph};
use crate::lattice::{BilinearLattice, DefinitenessClass, InertiaSignature, LatticeVector};
use crate::matrix::Matrix;
use crate::rational::{int, Rational};
use crate::subsets::{self, Mask};

pub type LabelSet = BTreeSet<String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubsetClass {
    Elliptic,
    ConnectedParabolic,
    /// Not hyperbolic, disconnected, with at least one parabolic component.
    NonHyperbolicMixed,
    Hyperbolic { is_lanner: bool },
}

impl SubsetClass {
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Self::Hyperbolic { .. })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Elliptic => "Elliptic",
            Self::ConnectedParabolic => "ConnectedParabolic",
            Self::NonHyperbolicMixed => "NonHyperbolicMixed",
            Self::Hyperbolic { .. } => "Hyperbolic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    AffineA(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    Unknown,
}

impl DynkinType {
    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Self::AffineA(_) | Self::AffineD(_) | Self::AffineE6 | Self::AffineE7 | Self::AffineE8
        )
    }

    pub fn is_finite(self) -> bool {
        !self.is_affine() && self != Self::Unknown
    }
}

impl core::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::A(n) => write!(f, "A{n}"),
            Self::D(n) => write!(f, "D{n}"),
            Self::E6 => f.write_str("E6"),
            Self::E7 => f.write_str("E7"),
            Self::E8 => f.write_str("E8"),
            Self::AffineA(n) => write!(f, "~A{n}"),
            Self::AffineD(n) => write!(f, "~D{n}"),
            Self::AffineE6 => f.write_str("~E6"),
            Self::AffineE7 => f.write_str("~E7"),
            Self::AffineE8 => f.write_str("~E8"),
            Self::Unknown => f.write_str("Unknown"),
        }
    }
}

/// Labeled vectors of negative square, no two positively proportional.
#[derive(Debug, Clone)]
pub struct VectorFamily {
    lattice: Arc<BilinearLattice>,
    labels: Vec<String>,
    vectors: Vec<LatticeVector>,
    gram: Matrix,
    graph: MaskGraph,
}

impl VectorFamily {
    pub fn new(
        lattice: Arc<BilinearLattice>,
        members: impl IntoIterator<Item = (String, LatticeVector)>,
    ) -> Result<Self> {
        let map: BTreeMap<String, LatticeVector> = members.into_iter().collect();
        if map.len() > 64 {
            return Err(Error::FamilyTooLarge(map.len()));
        }
        let (labels, vectors): (Vec<_>, Vec<_>) = map.into_iter().unzip();
        for (l, v) in labels.iter().zip(&vectors) {
            if v.lattice().as_ref() != lattice.as_ref() {
                return Err(Error::MismatchedLattice);
            }
            if !v.square().is_negative() {
                return Err(Error::NonNegativeSquareMember(l.clone()));
            }
        }
        for i in 0..vectors.len() {
            for j in i + 1..vectors.len() {
                if vectors[i].is_positive_multiple_of(&vectors[j]) {
                    return Err(Error::ProportionalMembers(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let n = vectors.len();
        let gram = Matrix::from_fn(n, n, |i, j| {
            lattice.inner_coords(vectors[i].coords(), vectors[j].coords())
        });
        let mut graph = MaskGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if !gram[(i, j)].is_zero() {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(Self { lattice, labels, vectors, gram, graph })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(lattice: &Arc<BilinearLattice>, members: &[(&str, &[i64])]) -> Result<Self> {
        let members = members
            .iter()
            .map(|(l, c)| Ok((l.to_string(), LatticeVector::from_ints(lattice, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice.clone(), members)
    }

    pub fn lattice(&self) -> &Arc<BilinearLattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in family order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn vector(&self, label: &str) -> Option<&LatticeVector> {
        self.index_of(label).map(|i| &self.vectors[i])
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// Gram matrix of all members, in family order.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn mask_graph(&self) -> &MaskGraph {
        &self.graph
    }

    pub fn full_mask(&self) -> Mask {
        subsets::full(self.len())
    }

    pub fn mask_of<'a>(&self, labels: impl IntoIterator<Item = &'a String>) -> Result<Mask> {
        labels.into_iter().try_fold(0, |m, l| {
            self.index_of(l).map(|i| m | (1 << i)).ok_or_else(|| Error::UnknownLabel(l.clone()))
        })
    }

    pub fn labels_of(&self, mask: Mask) -> LabelSet {
        subsets::indices(mask).into_iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn gram_of_mask(&self, mask: Mask) -> Matrix {
        self.gram.principal(&subsets::indices(mask))
    }

    pub fn signature_of_mask(&self, mask: Mask) -> InertiaSignature {
        let g = self.gram_of_mask(mask);
        crate::lattice::signature(&g).expect("principal submatrix of a Gram matrix is symmetric")
    }

    pub fn is_hyperbolic_mask(&self, mask: Mask) -> bool {
        self.signature_of_mask(mask).positive > 0
    }

    pub fn is_elliptic_mask(&self, mask: Mask) -> bool {
        self.signature_of_mask(mask).definiteness() == DefinitenessClass::NegativeDefinite
    }

    /// Classification of a nonempty subset; `is_lanner` checks the
    /// maximal proper subsets, which suffices since hyperbolicity is
    /// inherited by supersets.
    pub fn classify_mask(&self, mask: Mask) -> SubsetClass {
        let sig = self.signature_of_mask(mask);
        if sig.positive > 0 {
            let k = mask.count_ones() as usize;
            let is_lanner = k >= 1
                && subsets::combinations(mask, k - 1).all(|s| !self.is_hyperbolic_mask(s));
            return SubsetClass::Hyperbolic { is_lanner };
        }
        if sig.zero == 0 {
            SubsetClass::Elliptic
        } else if self.graph.is_connected(mask) {
            SubsetClass::ConnectedParabolic
        } else {
            SubsetClass::NonHyperbolicMixed
        }
    }

    /// Restriction to a subset of members.
    pub fn subfamily(&self, mask: Mask) -> Self {
        let members = subsets::indices(mask)
            .into_iter()
            .map(|i| (self.labels[i].clone(), self.vectors[i].clone()));
        Self::new(self.lattice.clone(), members).expect("subfamily of a valid family")
    }
}

/// Weighted Gram graph: vertex weight `-δ²`, edge weight `δ·δ'` when nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramGraph {
    pub vertices: Vec<(String, Rational)>,
    pub edges: Vec<(String, String, Rational)>,
    graph: MaskGraph,
}

impl GramGraph {
    fn index(&self, label: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|(l, _)| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    pub fn graph_distance(&self, u: &str, v: &str) -> Result<Distance> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        Ok(self.graph.distance(i, j, subsets::full(self.vertices.len())))
    }

    pub fn rho_q(&self, q: &LabelSet, u: &str, v: &str) -> Result<Distance> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        let mut qmask: Mask = 0;
        for l in q {
            qmask |= 1 << self.index(l)?;
        }
        for (l, k) in [(u, i), (v, j)] {
            if qmask & (1 << k) != 0 {
                return Err(Error::EndpointInQ(l.to_string()));
            }
        }
        Ok(self.graph.rho_q_from(i, qmask, subsets::full(self.vertices.len()))[j])
    }

    pub fn diameter(&self) -> Result<Distance> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(self.graph.diameter(subsets::full(self.vertices.len())))
    }

    pub fn mask_graph(&self) -> &MaskGraph {
        &self.graph
    }
}

pub fn build_gram_graph(family: &VectorFamily) -> GramGraph {
    let n = family.len();
    let g = family.gram();
    let vertices = (0..n).map(|i| (family.labels[i].clone(), -g[(i, i)].clone())).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !g[(i, j)].is_zero() {
                edges.push((family.labels[i].clone(), family.labels[j].clone(), g[(i, j)].clone()));
            }
        }
    }
    GramGraph { vertices, edges, graph: family.graph.clone() }
}

pub fn classify_subset(family: &VectorFamily, s: &LabelSet) -> Result<SubsetClass> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(family.classify_mask(family.mask_of(s)?))
}

/// Masks of all Lanner subsets of size at most `max_size`, by size and then
/// lexicographically.
pub fn lanner_masks(family: &VectorFamily, max_size: usize) -> Result<Vec<Mask>> {
    if max_size > family.len() {
        return Err(Error::MaxSizeTooLarge { max: max_size, len: family.len() });
    }
    let mut found: Vec<Mask> = Vec::new();
    // singletons have negative square, so sizes start at 2
    for k in 2..=max_size {
        for s in subsets::combinations(family.full_mask(), k) {
            // a hyperbolic set with no smaller Lanner subset is minimal
            if found.iter().any(|&l| (l & s) == l) {
                continue;
            }
            if family.is_hyperbolic_mask(s) {
                found.push(s);
            }
        }
    }
    Ok(found)
}

pub fn enumerate_lanner(family: &VectorFamily, max_size: usize) -> Result<Vec<LabelSet>> {
    if max_size == 0 {
        return Err(Error::InvalidParam("max_size must be positive"));
    }
    Ok(lanner_masks(family, max_size)?.into_iter().map(|m| family.labels_of(m)).collect())
}

pub fn dynkin_type(family: &VectorFamily, s: &LabelSet) -> Result<DynkinType> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mask = family.mask_of(s)?;
    if !family.graph.is_connected(mask) {
        return Err(Error::DisconnectedSubset);
    }
    Ok(dynkin_type_mask(family, mask))
}

pub(crate) fn dynkin_type_mask(family: &VectorFamily, mask: Mask) -> DynkinType {
    let idx = subsets::indices(mask);
    let g = family.gram();
    let two = int(2);
    let simply_laced = idx.iter().all(|&i| -&g[(i, i)] == two)
        && idx.iter().all(|&i| {
            idx.iter().all(|&j| i == j || g[(i, j)].is_zero() || g[(i, j)].is_one())
        });
    if !simply_laced {
        return DynkinType::Unknown;
    }
    let shape = shape_type(&family.graph, mask);
    let class = family.classify_mask(mask);
    let consistent = match class {
        SubsetClass::Elliptic => shape.is_finite(),
        SubsetClass::ConnectedParabolic => shape.is_affine(),
        _ => false,
    };
    if consistent { shape } else { DynkinType::Unknown }
}

/// Shape matching for a connected graph, ignoring weights.
fn shape_type(graph: &MaskGraph, mask: Mask) -> DynkinType {
    let idx = subsets::indices(mask);
    let n = idx.len();
    let deg = |i: usize| (graph.neighbors(i) & mask).count_ones() as usize;
    let edges: usize = idx.iter().map(|&i| deg(i)).sum::<usize>() / 2;
    let degrees: Vec<usize> = idx.iter().map(|&i| deg(i)).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);

    if edges == n && n >= 3 && degrees.iter().all(|&d| d == 2) {
        return DynkinType::AffineA(n - 1);
    }
    if edges + 1 != n {
        return DynkinType::Unknown;
    }
    if max_deg <= 2 {
        return DynkinType::A(n);
    }
    let branch: Vec<usize> = idx.iter().copied().filter(|&i| deg(i) >= 3).collect();
    // length of the arm leaving `center` through `first`
    let arm = |center: usize, first: usize| -> Option<usize> {
        let (mut prev, mut cur, mut len) = (center, first, 1);
        loop {
            match deg(cur) {
                1 => return Some(len),
                2 => {
                    let next = (graph.neighbors(cur) & mask & !(1 << prev)).trailing_zeros() as usize;
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                _ => return None,
            }
        }
    };
    match (branch.as_slice(), max_deg) {
        ([c], 3) => {
            let mut arms: Vec<usize> = subsets::indices(graph.neighbors(*c) & mask)
                .into_iter()
                .filter_map(|f| arm(*c, f))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => DynkinType::D(k + 3),
                [1, 2, 2] => DynkinType::E6,
                [1, 2, 3] => DynkinType::E7,
                [1, 2, 4] => DynkinType::E8,
                [2, 2, 2] => DynkinType::AffineE6,
                [1, 3, 3] => DynkinType::AffineE7,
                [1, 2, 5] => DynkinType::AffineE8,
                _ => DynkinType::Unknown,
            }
        }
        ([_], 4) if n == 5 => DynkinType::AffineD(4),
        ([a, b], 3) => {
            let leaves = |c: usize| {
                subsets::indices(graph.neighbors(c) & mask).into_iter().filter(|&x| deg(x) == 1).count()
            };
            if leaves(*a) == 2 && leaves(*b) == 2 {
                DynkinType::AffineD(n - 1)
            } else {
                DynkinType::Unknown
            }
        }
        _ => DynkinType::Unknown,
    }
}
