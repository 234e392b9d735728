//! Zariski decomposition and numerical Kodaira dimension.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use super::SurfaceModel;
use crate::error::{Error, NotPseudoEffective, Result};
use crate::lattice::{definiteness_class, DefinitenessClass, LatticeVector};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// `D = P + Σ αᵢ Fᵢ` with `P` nef, `αᵢ > 0` and `P·Fᵢ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub p: LatticeVector,
    /// Support curves with their coefficients, sorted by label.
    pub n: Vec<(String, Rational)>,
}

impl ZariskiDecomposition {
    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.n.iter().map(|(l, _)| l.as_str())
    }

    pub fn coefficient(&self, label: &str) -> Option<&Rational> {
        self.n.iter().find(|(l, _)| l == label).map(|(_, a)| a)
    }

    /// The negative part as a class.
    pub fn n_class(&self, model: &SurfaceModel) -> LatticeVector {
        self.n.iter().fold(LatticeVector::zero(model.ns().clone()), |acc, (l, a)| {
            acc.try_add_scaled(a, &model.curves()[l]).expect("same lattice")
        })
    }
}

fn not_psef(reason: NotPseudoEffective) -> Error {
    Error::NotPseudoEffective(Box::new(reason))
}

/// Grows the support from the curves meeting `D` negatively until the
/// remainder is nef on every declared curve.
pub fn zariski_decompose(model: &SurfaceModel, d: &LatticeVector) -> Result<ZariskiDecomposition> {
    let labels: Vec<&String> = model.curves().keys().collect();
    let curves: Vec<&LatticeVector> = model.curves().values().collect();
    let dc: Vec<Rational> = curves.iter().map(|c| d.inner(c)).collect::<Result<_>>()?;

    let mut support: Vec<usize> = (0..curves.len()).filter(|&i| dc[i].is_negative()).collect();
    let mut p = d.clone();
    let mut alphas: Vec<Rational> = Vec::new();
    for _ in 0..=curves.len() {
        if support.is_empty() {
            p = d.clone();
            alphas.clear();
        } else {
            let gram = Matrix::from_fn(support.len(), support.len(), |i, j| {
                curves[support[i]].inner(curves[support[j]]).expect("same lattice")
            });
            if definiteness_class(&gram)? != DefinitenessClass::NegativeDefinite {
                let support = support.iter().map(|&i| labels[i].clone()).collect();
                return Err(not_psef(NotPseudoEffective::IndefiniteSupport { support }));
            }
            let rhs: Vec<Rational> = support.iter().map(|&j| dc[j].clone()).collect();
            alphas = gram.solve(&rhs)?;
            p = support
                .iter()
                .zip(&alphas)
                .try_fold(d.clone(), |acc, (&i, a)| acc.try_add_scaled(&-a, curves[i]))?;
        }
        let mut grown = false;
        for (i, c) in curves.iter().enumerate() {
            if !support.contains(&i) && p.inner(c)?.is_negative() {
                support.push(i);
                grown = true;
            }
        }
        if !grown {
            break;
        }
        support.sort_unstable();
    }

    for (&i, a) in support.iter().zip(&alphas) {
        if !a.is_positive() {
            return Err(not_psef(NotPseudoEffective::NonPositiveCoefficient {
                label: labels[i].clone(),
                coefficient: a.clone(),
            }));
        }
    }
    let square = p.square();
    let degree = p.inner(model.ample_ref())?;
    if square.is_negative() || degree.is_negative() {
        return Err(not_psef(NotPseudoEffective::NefPartOutsidePositiveCone { square, degree }));
    }
    let n = support.iter().zip(alphas).map(|(&i, a)| (labels[i].clone(), a)).collect();
    Ok(ZariskiDecomposition { p, n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaDim {
    Two,
    One,
    Zero,
    MinusInfinity,
}

impl KodairaDim {
    pub fn name(self) -> &'static str {
        match self {
            KodairaDim::Two => "2",
            KodairaDim::One => "1",
            KodairaDim::Zero => "0",
            KodairaDim::MinusInfinity => "-inf",
        }
    }

    pub fn of_nef_part(p: &LatticeVector) -> Self {
        if p.is_zero() {
            KodairaDim::Zero
        } else if p.square().is_positive() {
            KodairaDim::Two
        } else {
            KodairaDim::One
        }
    }
}

/// `MinusInfinity` when `D` is not pseudo-effective; other errors (such as a
/// class from another lattice) are passed through.
pub fn numerical_kodaira(model: &SurfaceModel, d: &LatticeVector) -> Result<KodairaDim> {
    match zariski_decompose(model, d) {
        Ok(z) => Ok(KodairaDim::of_nef_part(&z.p)),
        Err(Error::NotPseudoEffective(_)) => Ok(KodairaDim::MinusInfinity),
        Err(e) => Err(e),
    }
}
