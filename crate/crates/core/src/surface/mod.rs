//! Lattice models of algebraic surfaces.
//!
//! A [`SurfaceModel`] is a hyperbolic Neron–Severi lattice with a canonical
//! class, a class of positive square fixing the positive half-cone, and a
//! finite list of declared irreducible curve classes. Effectivity and
//! nefness are always decided relative to that list.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gram::{LabelSet, VectorFamily};
use crate::lattice::{BilinearLattice, LatticeVector};
use crate::rational::{int, Rational};

mod classes;
mod discrepancy;
mod mori;
mod report;
mod zariski;

pub use classes::{enumerate_classes, exceptional_curves};
pub use discrepancy::{discrepancies, ComponentReport, DiscrepancyReport};
pub use mori::{
    classify_exc_partition, is_nonnegative_combination, mori_generators, mori_polyhedron_type, ExcPartition,
    GeneratorCandidate, GeneratorKind, IsotropicNote, Membership, MoriPolyhedronType, MoriReport,
};
pub use report::{surface_bound_report, SurfaceBoundReport};
pub use zariski::{numerical_kodaira, zariski_decompose, KodairaDim, ZariskiDecomposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    ns: Arc<BilinearLattice>,
    canonical: LatticeVector,
    ample_ref: LatticeVector,
    curves: BTreeMap<String, LatticeVector>,
}

impl SurfaceModel {
    pub fn new(
        ns: Arc<BilinearLattice>,
        canonical: LatticeVector,
        ample_ref: LatticeVector,
        curves: impl IntoIterator<Item = (String, LatticeVector)>,
    ) -> Result<Self> {
        if !ns.is_hyperbolic() {
            return Err(Error::InvalidModel("NS lattice is not hyperbolic".into()));
        }
        for v in [&canonical, &ample_ref] {
            if v.lattice().as_ref() != ns.as_ref() {
                return Err(Error::MismatchedLattice);
            }
        }
        if !ample_ref.square().is_positive() {
            return Err(Error::InvalidModel("h must have positive square".into()));
        }
        let mut map = BTreeMap::new();
        for (label, v) in curves {
            if v.lattice().as_ref() != ns.as_ref() {
                return Err(Error::MismatchedLattice);
            }
            if let Some((other, _)) = map.iter().find(|(_, w)| **w == v) {
                return Err(Error::InvalidModel(format!("curves `{other}` and `{label}` have the same class")));
            }
            if map.contains_key(&label) {
                return Err(Error::InvalidModel(format!("duplicate curve label `{label}`")));
            }
            map.insert(label, v);
        }
        let negative: Vec<(&String, &LatticeVector)> = map.iter().filter(|(_, v)| v.square().is_negative()).collect();
        for (i, (a, u)) in negative.iter().enumerate() {
            for (b, v) in &negative[i + 1..] {
                if u.inner(v)?.is_negative() {
                    return Err(Error::InvalidModel(format!("exceptional curves `{a}` and `{b}` meet negatively")));
                }
            }
        }
        Ok(Self { ns, canonical, ample_ref, curves: map })
    }

    /// Integer convenience constructor.
    pub fn from_ints(
        ns: &Arc<BilinearLattice>,
        canonical: &[i64],
        ample_ref: &[i64],
        curves: &[(&str, &[i64])],
    ) -> Result<Self> {
        let curves = curves
            .iter()
            .map(|(l, c)| Ok((String::from(*l), LatticeVector::from_ints(ns, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            ns.clone(),
            LatticeVector::from_ints(ns, canonical)?,
            LatticeVector::from_ints(ns, ample_ref)?,
            curves,
        )
    }

    pub fn ns(&self) -> &Arc<BilinearLattice> {
        &self.ns
    }

    pub fn canonical(&self) -> &LatticeVector {
        &self.canonical
    }

    pub fn ample_ref(&self) -> &LatticeVector {
        &self.ample_ref
    }

    pub fn curves(&self) -> &BTreeMap<String, LatticeVector> {
        &self.curves
    }

    pub fn curve(&self, label: &str) -> Option<&LatticeVector> {
        self.curves.get(label)
    }

    pub fn rank(&self) -> usize {
        self.ns.rank()
    }

    /// `K·x = 0` for every `x`.
    pub fn canonical_is_trivial(&self) -> bool {
        self.ns.gram().mul_vec(self.canonical.coords()).iter().all(Zero::is_zero)
    }

    /// Declared curves whose arithmetic genus `(C² + C·K)/2 + 1` is not a
    /// nonnegative integer.
    pub fn adjunction_violations(&self) -> Vec<String> {
        self.curves
            .iter()
            .filter(|(_, c)| {
                let pa = (c.square() + c.inner(&self.canonical).expect("same lattice")) / int(2) + Rational::one();
                !pa.is_integer() || pa.is_negative()
            })
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// The exceptional curves as a vector family.
    pub fn exc_family(&self) -> Result<VectorFamily> {
        let exc = exceptional_curves(self);
        VectorFamily::new(self.ns.clone(), exc.iter().map(|l| (l.clone(), self.curves[l].clone())))
    }

    pub(crate) fn labels(&self, pred: impl Fn(&LatticeVector) -> bool) -> LabelSet {
        self.curves.iter().filter(|(_, c)| pred(c)).map(|(l, _)| l.clone()).collect()
    }
}


#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;

    #[test]
    fn validation() {
        let l = lattice(&[1, -1]);
        assert!(matches!(SurfaceModel::from_ints(&l, &[-3, 1], &[0, 1], &[]), Err(Error::InvalidModel(_))));
        assert!(matches!(
            SurfaceModel::from_ints(&l, &[-3, 1], &[1, 0], &[("a", &[0, 1]), ("b", &[0, 1])]),
            Err(Error::InvalidModel(_))
        ));
        let l3 = lattice(&[1, -1, -1]);
        assert!(matches!(
            SurfaceModel::from_ints(&l3, &[-3, 1, 1], &[1, 0, 0], &[("a", &[0, 1, 0]), ("b", &[0, 1, -1])]),
            Err(Error::InvalidModel(_))
        ));
        let e = lattice(&[1, 1]);
        assert!(matches!(SurfaceModel::from_ints(&e, &[0, 0], &[1, 0], &[]), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn adjunction() {
        assert!(f1().adjunction_violations().is_empty());
        let l = lattice(&[1, -1]);
        let m = SurfaceModel::from_ints(&l, &[-3, 1], &[1, 0], &[("c", &[0, 2])]).unwrap();
        // C² = -4, C·K = -2: genus -2
        assert_eq!(m.adjunction_violations(), ["c"]);
        assert!(!f1().canonical_is_trivial());
    }
}
