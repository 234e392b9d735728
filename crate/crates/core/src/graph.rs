//! Path metrics on small graphs.
//!
//! [`MaskGraph`] stores adjacency as bit masks so that distances inside an
//! induced subgraph (the Gram graph of a subset) need no copying.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::subsets::Mask;

/// Graph distance; `Infinite` between different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Self::Finite(d) => Some(d),
            Self::Infinite => None,
        }
    }

    /// `lo <= self <= hi`; infinity lies in no bounded range.
    pub fn in_range(self, lo: usize, hi: usize) -> bool {
        matches!(self, Self::Finite(d) if lo <= d && d <= hi)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(d) => write!(f, "{d}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskGraph {
    adj: Vec<Mask>,
}

impl MaskGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![0; n] }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i] |= 1 << j;
            self.adj[j] |= 1 << i;
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> Mask {
        self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] & (1 << j) != 0
    }

    /// BFS distances from `src` inside the subgraph induced by `within`.
    pub fn distances_from(&self, src: usize, within: Mask) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.adj.len()];
        if within & (1 << src) == 0 {
            return dist;
        }
        dist[src] = Distance::Finite(0);
        let mut seen: Mask = 1 << src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().unwrap_or(0);
            let mut next = self.adj[u] & within & !seen;
            seen |= next;
            while next != 0 {
                let v = next.trailing_zeros() as usize;
                next &= next - 1;
                dist[v] = Distance::Finite(du + 1);
                queue.push_back(v);
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize, within: Mask) -> Distance {
        self.distances_from(u, within)[v]
    }

    /// Minimum over paths of (length − number of path vertices in `q`).
    ///
    /// 0-1 BFS: stepping onto a vertex of `q` costs 0, any other step costs 1.
    /// Endpoints are assumed to lie outside `q`.
    pub fn rho_q_from(&self, src: usize, q: Mask, within: Mask) -> Vec<Distance> {
        let n = self.adj.len();
        let mut best = vec![usize::MAX; n];
        if within & (1 << src) == 0 {
            return vec![Distance::Infinite; n];
        }
        best[src] = 0;
        let mut deque = VecDeque::from([src]);
        let mut done: Mask = 0;
        while let Some(u) = deque.pop_front() {
            if done & (1 << u) != 0 {
                continue;
            }
            done |= 1 << u;
            let mut nb = self.adj[u] & within;
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                let w = usize::from(q & (1 << v) == 0);
                if best[u] + w < best[v] {
                    best[v] = best[u] + w;
                    if w == 0 {
                        deque.push_front(v);
                    } else {
                        deque.push_back(v);
                    }
                }
            }
        }
        best.into_iter()
            .map(|b| if b == usize::MAX { Distance::Infinite } else { Distance::Finite(b) })
            .collect()
    }

    /// Connected components of the induced subgraph, as masks.
    pub fn components(&self, within: Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut rest = within;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            let mut comp: Mask = 1 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let u = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[u] & within & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn is_connected(&self, within: Mask) -> bool {
        within == 0 || self.components(within).len() == 1
    }

    /// Largest pairwise distance in the induced subgraph; 0 for one vertex.
    pub fn diameter(&self, within: Mask) -> Distance {
        let mut best = Distance::Finite(0);
        for u in crate::subsets::indices(within) {
            let d = self.distances_from(u, within);
            for v in crate::subsets::indices(within) {
                best = best.max(d[v]);
            }
        }
        best
    }
}
