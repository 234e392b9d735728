//! Discrepancies of a negative definite curve configuration.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gram::{dynkin_type_mask, DynkinType, VectorFamily};
use crate::graph::MaskGraph;
use crate::lattice::{definiteness_class, BilinearLattice, DefinitenessClass, LatticeVector};
use crate::matrix::Matrix;
use crate::rational::{int, lcm_of_denominators, Rational};
use crate::subsets;

/// A connected component of the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    /// Indices into the input list.
    pub members: Vec<usize>,
    pub all_zero: bool,
    /// Dynkin type when every member is a (-2)-curve.
    pub dynkin: Option<DynkinType>,
    /// All discrepancies vanish on a (-2)-configuration of type A, D or E.
    pub du_val: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub alphas: Vec<Rational>,
    /// `K - Σ αᵢ Fᵢ`.
    pub pullback: LatticeVector,
    /// The pullback is orthogonal to every `Fⱼ`.
    pub orthogonal: bool,
    /// Every `αᵢ ≤ 0`.
    pub almost_minimal: bool,
    pub components: Vec<ComponentReport>,
    /// Least common multiple of the denominators of the `αᵢ`.
    pub denominator_lcm: BigInt,
}

/// Solves `Σ αᵢ (Fᵢ·Fⱼ) = K·Fⱼ`.
pub fn discrepancies(ns: &Arc<BilinearLattice>, k: &LatticeVector, f: &[LatticeVector]) -> Result<DiscrepancyReport> {
    if k.lattice().as_ref() != ns.as_ref() || f.iter().any(|c| c.lattice().as_ref() != ns.as_ref()) {
        return Err(Error::MismatchedLattice);
    }
    let n = f.len();
    if n > 64 {
        return Err(Error::FamilyTooLarge(n));
    }
    let gram = Matrix::from_fn(n, n, |i, j| ns.inner_coords(f[i].coords(), f[j].coords()));
    if n > 0 && definiteness_class(&gram)? != DefinitenessClass::NegativeDefinite {
        return Err(Error::GramNotNegativeDefinite);
    }
    let rhs: Vec<Rational> = f.iter().map(|c| k.inner(c)).collect::<Result<_>>()?;
    let alphas = if n == 0 { Vec::new() } else { gram.solve(&rhs)? };
    let pullback = f.iter().zip(&alphas).try_fold(k.clone(), |acc, (c, a)| acc.try_add_scaled(&-a, c))?;
    let orthogonal = f.iter().all(|c| pullback.inner(c).map(|x| x.is_zero()).unwrap_or(false));
    let almost_minimal = alphas.iter().all(|a| !a.is_positive());

    let mut graph = MaskGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !gram[(i, j)].is_zero() {
                graph.add_edge(i, j);
            }
        }
    }
    // zero-padded labels keep the input order
    let family = VectorFamily::new(ns.clone(), f.iter().enumerate().map(|(i, c)| (format!("{i:04}"), c.clone())))?;
    let components = graph
        .components(subsets::full(n))
        .into_iter()
        .map(|mask| {
            let members = subsets::indices(mask);
            let all_zero = members.iter().all(|&i| alphas[i].is_zero());
            let minus_two = members.iter().all(|&i| gram[(i, i)] == int(-2));
            let dynkin = minus_two.then(|| dynkin_type_mask(&family, mask));
            let du_val = all_zero && dynkin.is_some_and(DynkinType::is_finite);
            ComponentReport { members, all_zero, dynkin, du_val }
        })
        .collect();
    let denominator_lcm = lcm_of_denominators(alphas.iter());
    Ok(DiscrepancyReport { alphas, pullback, orthogonal, almost_minimal, components, denominator_lcm })
}
