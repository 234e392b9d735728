//! The diagram-method bounds evaluated on a surface model.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::mori::anticanonical;
use super::zariski::KodairaDim;
use super::SurfaceModel;
use crate::bounds::{bound, BoundParams, BoundResult, BoundTheorem};
use crate::error::{Error, Result};
use crate::gram::{lanner_masks, LabelSet};
use crate::rational::{int, Rational};
use crate::subsets::{self, Mask};
use crate::weights::{empirical_constants_mask, Metric};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceBoundReport {
    pub variant: BoundTheorem,
    pub kodaira: KodairaDim,
    pub d: usize,
    pub d_overridden: bool,
    /// Size of the elliptic subsets `ℰ` (rank of NS minus 2).
    pub subset_size: usize,
    /// The sets `Q` that were ranged over.
    pub q_sets: Vec<LabelSet>,
    pub c1: Rational,
    pub c2: Rational,
    pub bound: BoundResult,
    /// `dim NS` for 3.4 and 3.5, the number of support curves of `N(-K)`
    /// for 3.6.
    pub value: usize,
    pub holds: bool,
}

fn expected(variant: BoundTheorem) -> Result<(KodairaDim, Metric)> {
    Ok(match variant {
        BoundTheorem::T3_4 => (KodairaDim::Two, Metric::Rho),
        BoundTheorem::T3_5 => (KodairaDim::One, Metric::RhoQ),
        BoundTheorem::T3_5Prime => (KodairaDim::One, Metric::Rho),
        BoundTheorem::T3_6 => (KodairaDim::Zero, Metric::RhoQ),
        BoundTheorem::T3_6Prime => (KodairaDim::Zero, Metric::Rho),
        _ => return Err(Error::InvalidParam("variant must be one of 3.4, 3.5, 3.5', 3.6, 3.6'")),
    })
}

/// Pipeline: Zariski decomposition of `-K`, the Lanner diameter `d` over
/// the exceptional curves (unless overridden), the constants `C1`, `C2`
/// under the variant's conventions, and the resulting bound.
pub fn surface_bound_report(
    model: &SurfaceModel,
    variant: BoundTheorem,
    d_override: Option<usize>,
) -> Result<SurfaceBoundReport> {
    let (want, metric) = expected(variant)?;
    let (z, nu) = anticanonical(model)?;
    if nu != want {
        return Err(Error::VariantMismatch { variant: variant.id(), expected: want.name(), found: nu.name() });
    }
    let exc = model.exc_family()?;
    let d = match d_override {
        Some(d) => d,
        None => lanner_masks(&exc, exc.len().max(1))?
            .into_iter()
            .filter_map(|l| exc.mask_graph().diameter(l).finite())
            .max()
            .unwrap_or(0),
    };
    let rank = model.rank();
    let subset_size = rank.saturating_sub(2);
    let k = model.canonical();

    let q_masks: Vec<Mask> = match nu {
        KodairaDim::Two => alloc::vec![0],
        KodairaDim::One => {
            let mut qs = Vec::new();
            for (i, c) in exc.vectors().iter().enumerate() {
                let first_kind = c.square() == int(-1) && c.inner(k)? == int(-1);
                if first_kind && c.inner(&z.p)?.is_positive() {
                    qs.push(1 << i);
                }
            }
            qs
        }
        _ => {
            let support: LabelSet = z.support().map(Into::into).collect();
            let mut pool: Mask = 0;
            for (i, label) in exc.labels().iter().enumerate() {
                let c = &exc.vectors()[i];
                let (sq, ck) = (c.square(), c.inner(k)?);
                let rational = (sq == int(-1) && ck == int(-1)) || (sq == int(-2) && ck.is_zero());
                if rational && !support.contains(label) {
                    pool |= 1 << i;
                }
            }
            let max_q = rank.saturating_sub(support.len() + 1);
            let mut qs = Vec::new();
            for size in 0..=max_q.min(pool.count_ones() as usize) {
                qs.extend(subsets::combinations(pool, size).filter(|&q| q == 0 || exc.is_elliptic_mask(q)));
            }
            qs
        }
    };

    let (mut c1, mut c2) = (Rational::zero(), Rational::zero());
    for &q in &q_masks {
        let (a, b) = empirical_constants_mask(&exc, q, subset_size.min(exc.len()), metric, d)?;
        c1 = c1.max(a);
        c2 = c2.max(b);
    }
    let bound = bound(variant, &BoundParams::c1c2(c1.clone(), c2.clone()))?;
    let value = match nu {
        KodairaDim::Zero => z.n.len(),
        _ => rank,
    };
    let holds = bound.strict_value().is_some_and(|b| int(value as i64) < *b);
    Ok(SurfaceBoundReport {
        variant,
        kodaira: nu,
        d,
        d_overridden: d_override.is_some(),
        subset_size,
        q_sets: q_masks.into_iter().map(|q| exc.labels_of(q)).collect(),
        c1,
        c2,
        bound,
        value,
        holds,
    })
}
