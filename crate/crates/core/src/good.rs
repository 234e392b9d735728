//! Good subsets of 2-faces of a 3-dimensional face, and bad (bipyramid) faces.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::subsets;

/// A vertex of a 3-face, given by the 2-faces through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVertex {
    pub faces: Vec<usize>,
    pub infinite: bool,
}

/// Combinatorics of a 3-dimensional face. Edges are pairs of 2-faces
/// (indices into `faces`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeFace {
    pub faces: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub vertices: Vec<FaceVertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Meet {
    Empty,
    Edge,
    FiniteVertex,
    InfiniteVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSubset {
    pub kind: u8,
    /// Indices into [`ThreeFace::faces`], in cyclic order for type 4 and
    /// with the infinite-vertex pair first and last for type 3.
    pub faces: Vec<usize>,
    pub sigma_lower_bound: Rational,
}

pub fn type_lower_bound(kind: u8) -> Rational {
    match kind {
        1 => int(3),
        2 => int(2),
        3 => int(1),
        _ => ratio(1, 3),
    }
}

impl ThreeFace {
    fn validate(&self) -> Result<()> {
        let n = self.faces.len();
        let bad = self.edges.iter().any(|&(a, b)| a >= n || b >= n || a == b)
            || self.vertices.iter().any(|v| v.faces.iter().any(|&f| f >= n));
        if bad {
            return Err(Error::MalformedLattice("3-face refers to a missing 2-face".into()));
        }
        if n < 3 {
            return Err(Error::NotThreeDimensional);
        }
        Ok(())
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    fn common_vertex(&self, fs: &[usize]) -> Option<&FaceVertex> {
        self.vertices.iter().find(|v| fs.iter().all(|f| v.faces.contains(f)))
    }

    fn meet(&self, a: usize, b: usize) -> Meet {
        if self.has_edge(a, b) {
            return Meet::Edge;
        }
        let shared: Vec<&FaceVertex> =
            self.vertices.iter().filter(|v| v.faces.contains(&a) && v.faces.contains(&b)).collect();
        match shared.as_slice() {
            [] => Meet::Empty,
            [v] if v.infinite => Meet::InfiniteVertex,
            _ => Meet::FiniteVertex,
        }
    }

    /// Number of edges through each vertex: pairs of its 2-faces that form an edge.
    fn vertex_orders(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .map(|v| {
                let fs = &v.faces;
                (0..fs.len())
                    .flat_map(|i| (i + 1..fs.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| self.has_edge(fs[i], fs[j]))
                    .count()
            })
            .collect()
    }

    /// Number of vertices of the 2-face `f`.
    fn face_size(&self, f: usize) -> usize {
        self.vertices.iter().filter(|v| v.faces.contains(&f)).count()
    }

    /// Combinatorially a triangular bipyramid.
    pub fn is_bad(&self) -> bool {
        if self.vertices.len() != 5 || self.edges.len() != 9 || self.faces.len() != 6 {
            return false;
        }
        if !(0..6).all(|f| self.face_size(f) == 3) {
            return false;
        }
        let mut orders = self.vertex_orders();
        orders.sort_unstable();
        orders == [3, 3, 4, 4, 4]
    }
}

/// All good subsets of types 1 to 4, in lexicographic order of face indices.
pub fn good_subsets(tf: &ThreeFace) -> Result<Vec<GoodSubset>> {
    tf.validate()?;
    let n = tf.faces.len();
    let all = subsets::full(n);
    let mut out = Vec::new();
    for k in [3usize, 4] {
        for s in subsets::combinations(all, k) {
            let fs = subsets::indices(s);
            if let Some(g) = classify_candidate(tf, &fs) {
                out.push(g);
            }
        }
    }
    out.sort_by(|a, b| {
        let mut x = a.faces.clone();
        let mut y = b.faces.clone();
        x.sort_unstable();
        y.sort_unstable();
        x.cmp(&y)
    });
    Ok(out)
}

fn classify_candidate(tf: &ThreeFace, fs: &[usize]) -> Option<GoodSubset> {
    let pairs: Vec<(usize, usize)> =
        (0..fs.len()).flat_map(|i| (i + 1..fs.len()).map(move |j| (i, j))).collect();
    let meets: Vec<Meet> = pairs.iter().map(|&(i, j)| tf.meet(fs[i], fs[j])).collect();
    let triples_empty = subsets::combinations(subsets::full(fs.len()), 3).all(|t| {
        let tri: Vec<usize> = subsets::indices(t).into_iter().map(|i| fs[i]).collect();
        tf.common_vertex(&tri).is_none()
    });
    let make = |kind: u8, faces: Vec<usize>| GoodSubset { kind, faces, sigma_lower_bound: type_lower_bound(kind) };

    if fs.len() == 4 {
        let all_edges = meets.iter().all(|&m| m == Meet::Edge);
        let triples_meet = subsets::combinations(subsets::full(4), 3).all(|t| {
            let tri: Vec<usize> = subsets::indices(t).into_iter().map(|i| fs[i]).collect();
            tf.common_vertex(&tri).is_some()
        });
        if all_edges && triples_meet {
            return Some(make(1, fs.to_vec()));
        }
        if !triples_empty {
            return None;
        }
        // a 4-cycle of edges with opposite pairs disjoint
        let edge_count = meets.iter().filter(|&&m| m == Meet::Edge).count();
        let empty_count = meets.iter().filter(|&&m| m == Meet::Empty).count();
        if edge_count != 4 || empty_count != 2 {
            return None;
        }
        let start = fs[0];
        let next = |cur: usize, prev: Option<usize>| {
            fs.iter().copied().find(|&g| g != cur && Some(g) != prev && tf.has_edge(cur, g))
        };
        let b = next(start, None)?;
        let c = next(b, Some(start))?;
        let d = next(c, Some(b))?;
        if d == start || !tf.has_edge(d, start) {
            return None;
        }
        return Some(make(4, alloc::vec![start, b, c, d]));
    }

    if !triples_empty {
        return None;
    }
    let edge_count = meets.iter().filter(|&&m| m == Meet::Edge).count();
    if edge_count == 3 {
        return Some(make(2, fs.to_vec()));
    }
    if edge_count == 2 {
        let (pi, _) = pairs.iter().zip(&meets).find(|(_, &m)| m != Meet::Edge)?;
        if tf.meet(fs[pi.0], fs[pi.1]) == Meet::InfiniteVertex {
            let middle = (0..3).find(|&i| i != pi.0 && i != pi.1)?;
            return Some(make(3, alloc::vec![fs[pi.0], fs[middle], fs[pi.1]]));
        }
    }
    None
}
