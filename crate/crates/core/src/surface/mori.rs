//! The partition of exceptional curves, the type of the Mori polyhedron and
//! candidate generators of the Mori cone.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::zariski::{zariski_decompose, KodairaDim, ZariskiDecomposition};
use super::{exceptional_curves, SurfaceModel};
use crate::error::{Error, Result};
use crate::gram::LabelSet;
use crate::lattice::LatticeVector;
use crate::lp::{nonnegative_combination, Feasibility};
use crate::rational::{int, Rational};

/// Zariski decomposition of `-K` and its Kodaira dimension, with the
/// preconditions `K ≢ 0` and `-K` pseudo-effective.
pub(crate) fn anticanonical(model: &SurfaceModel) -> Result<(ZariskiDecomposition, KodairaDim)> {
    if model.canonical_is_trivial() {
        return Err(Error::CanonicalTrivial);
    }
    match zariski_decompose(model, &model.canonical().neg()) {
        Ok(z) => {
            let nu = KodairaDim::of_nef_part(&z.p);
            Ok((z, nu))
        }
        Err(Error::NotPseudoEffective(_)) => Err(Error::NotPseudoEffectiveAnticanonical),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcPartition {
    /// Curves of the first kind: `C² = -1`, `C·K = -1`.
    pub exc1: LabelSet,
    /// `C² = -2`, `C·K = 0`.
    pub exc2: LabelSet,
    /// Support of the negative part of `-K`.
    pub exc3: LabelSet,
}

pub fn classify_exc_partition(model: &SurfaceModel) -> Result<ExcPartition> {
    let (z, _) = anticanonical(model)?;
    let exc3: LabelSet = z.support().map(String::from).collect();
    let k = model.canonical();
    let mut exc1 = LabelSet::new();
    let mut exc2 = LabelSet::new();
    for label in exceptional_curves(model) {
        if exc3.contains(&label) {
            continue;
        }
        let c = &model.curves()[&label];
        let (sq, ck) = (c.square(), c.inner(k)?);
        if sq == int(-1) && ck == int(-1) {
            exc1.insert(label);
        } else if sq == int(-2) && ck.is_zero() {
            exc2.insert(label);
        } else {
            return Err(Error::UnclassifiableCurve(label));
        }
    }
    Ok(ExcPartition { exc1, exc2, exc3 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoriPolyhedronType {
    Elliptic,
    /// Parabolic relative to the ray of the nef part of `-K`.
    ParabolicAt { ray: LatticeVector },
    /// Hyperbolic relative to the common orthogonal of the support curves.
    HyperbolicRel { normals: Vec<String>, codim: usize },
}

impl MoriPolyhedronType {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Elliptic => "Elliptic",
            Self::ParabolicAt { .. } => "ParabolicAt",
            Self::HyperbolicRel { .. } => "HyperbolicRel",
        }
    }
}

pub fn mori_polyhedron_type(model: &SurfaceModel) -> Result<MoriPolyhedronType> {
    let (z, nu) = anticanonical(model)?;
    Ok(match nu {
        KodairaDim::Two => MoriPolyhedronType::Elliptic,
        KodairaDim::One => MoriPolyhedronType::ParabolicAt { ray: z.p },
        _ => {
            let normals: Vec<String> = z.support().map(String::from).collect();
            let codim = normals.len();
            MoriPolyhedronType::HyperbolicRel { normals, codim }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Nonnegative coefficients, one per generator.
    Member(Vec<Rational>),
    /// A functional on coordinates, nonnegative on the generators and
    /// negative on the target.
    Separated(Vec<Rational>),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

pub fn is_nonnegative_combination(target: &LatticeVector, generators: &[LatticeVector]) -> Result<Membership> {
    for g in generators {
        if g.lattice().as_ref() != target.lattice().as_ref() {
            return Err(Error::MismatchedLattice);
        }
    }
    if generators.is_empty() {
        return Ok(if target.is_zero() {
            Membership::Member(Vec::new())
        } else {
            Membership::Separated(target.coords().iter().map(|c| -c).collect())
        });
    }
    let gens: Vec<Vec<Rational>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    Ok(match nonnegative_combination(target.coords(), &gens) {
        Feasibility::Feasible(x) => Membership::Member(x),
        Feasibility::Infeasible(y) => Membership::Separated(y),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Exceptional,
    NefPart,
    Isotropic,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exceptional => "exceptional",
            Self::NefPart => "nef-part",
            Self::Isotropic => "isotropic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCandidate {
    pub label: String,
    pub class: LatticeVector,
    pub kind: GeneratorKind,
    /// Not a nonnegative combination of the other candidates.
    pub extremal: bool,
}

/// An isotropic class outside the cone of the candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicNote {
    pub label: String,
    pub class: LatticeVector,
    /// Not a nonnegative combination of the candidates and the other
    /// declared curves.
    pub extremal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriReport {
    pub kodaira: KodairaDim,
    pub nef_part: LatticeVector,
    pub candidates: Vec<GeneratorCandidate>,
    pub ungenerated_isotropic: Vec<IsotropicNote>,
    /// Some isotropic class is missed by the candidate generators.
    pub discrepancy: bool,
}

fn in_cone_of_others(target: &LatticeVector, others: &[LatticeVector]) -> Result<bool> {
    Ok(is_nonnegative_combination(target, others)?.is_member())
}

/// Candidate generators of the Mori cone for the case of `ν(-K)`:
/// exceptional curves, plus the nef part `P` when `ν = 1` and `P` is not
/// generated by them, plus the caller's isotropic classes when `ν = 0`.
pub fn mori_generators(model: &SurfaceModel, extra_isotropic: &[(String, LatticeVector)]) -> Result<MoriReport> {
    let (z, nu) = anticanonical(model)?;
    for (_, c) in extra_isotropic {
        if c.lattice().as_ref() != model.ns().as_ref() {
            return Err(Error::MismatchedLattice);
        }
        if !c.square().is_zero() {
            return Err(Error::InvalidParam("extra classes must be isotropic"));
        }
    }
    let mut cands: Vec<(String, LatticeVector, GeneratorKind)> = exceptional_curves(model)
        .into_iter()
        .map(|l| {
            let c = model.curves()[&l].clone();
            (l, c, GeneratorKind::Exceptional)
        })
        .collect();
    let exc_classes: Vec<LatticeVector> = cands.iter().map(|(_, c, _)| c.clone()).collect();
    match nu {
        KodairaDim::One => {
            if !in_cone_of_others(&z.p, &exc_classes)? {
                cands.push(("P".into(), z.p.clone(), GeneratorKind::NefPart));
            }
        }
        KodairaDim::Zero => {
            for (l, c) in extra_isotropic {
                cands.push((l.clone(), c.clone(), GeneratorKind::Isotropic));
            }
        }
        _ => {}
    }

    let classes: Vec<LatticeVector> = cands.iter().map(|(_, c, _)| c.clone()).collect();
    let mut candidates = Vec::new();
    for (i, (label, class, kind)) in cands.iter().enumerate() {
        let others: Vec<LatticeVector> =
            classes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
        let extremal = !in_cone_of_others(class, &others)?;
        candidates.push(GeneratorCandidate { label: label.clone(), class: class.clone(), kind: *kind, extremal });
    }

    let mut isotropic: Vec<(String, LatticeVector)> = model
        .curves()
        .iter()
        .filter(|(_, c)| c.square().is_zero())
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect();
    for (l, c) in extra_isotropic {
        if !isotropic.iter().any(|(_, d)| d == c) {
            isotropic.push((l.clone(), c.clone()));
        }
    }
    let mut ungenerated = Vec::new();
    for (label, class) in isotropic {
        if in_cone_of_others(&class, &classes)? {
            continue;
        }
        let mut others = classes.clone();
        others.extend(model.curves().iter().filter(|(l, _)| **l != label).map(|(_, c)| c.clone()));
        let extremal = !in_cone_of_others(&class, &others)?;
        ungenerated.push(IsotropicNote { label, class, extremal });
    }
    let discrepancy = !ungenerated.is_empty();
    Ok(MoriReport { kodaira: nu, nef_part: z.p, candidates, ungenerated_isotropic: ungenerated, discrepancy })
}

#[cfg(test)]
mod tests {
    use super::super::models::*;
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn set(v: &[&str]) -> LabelSet {
        v.iter().map(|s| String::from(*s)).collect()
    }

    /// Rational elliptic surface style model: K = -f with f isotropic.
    fn parabolic_model() -> SurfaceModel {
        let l = lattice(&[1, -1, -1, -1, -1, -1, -1, -1, -1, -1]);
        SurfaceModel::from_ints(
            &l,
            &[-3, 1, 1, 1, 1, 1, 1, 1, 1, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[("e1", &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0]), ("e9", &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn partitions() {
        let p = classify_exc_partition(&f1()).unwrap();
        assert_eq!(p, ExcPartition { exc1: set(&["e1"]), exc2: set(&[]), exc3: set(&[]) });
        let p = classify_exc_partition(&k_minus_e1()).unwrap();
        assert_eq!(p.exc3, set(&["e1"]));
        assert!(p.exc1.is_empty());

        let l = lattice(&[1, -1, -1]);
        let m = SurfaceModel::from_ints(&l, &[-3, 1, 1], &[3, -1, -1], &[("s", &[1, -2, 0]), ("e2", &[0, 0, 1])])
            .unwrap();
        assert_eq!(classify_exc_partition(&m), Err(Error::UnclassifiableCurve("s".into())));

        let m = SurfaceModel::from_ints(&l, &[0, 0, 0], &[1, 0, 0], &[]).unwrap();
        assert_eq!(classify_exc_partition(&m), Err(Error::CanonicalTrivial));
        let m = SurfaceModel::from_ints(&l, &[3, -1, -1], &[1, 0, 0], &[]).unwrap();
        assert_eq!(classify_exc_partition(&m), Err(Error::NotPseudoEffectiveAnticanonical));
    }

    #[test]
    fn polyhedron_types() {
        assert_eq!(mori_polyhedron_type(&f1()).unwrap(), MoriPolyhedronType::Elliptic);
        assert_eq!(
            mori_polyhedron_type(&k_minus_e1()).unwrap(),
            MoriPolyhedronType::HyperbolicRel { normals: vec!["e1".into()], codim: 1 }
        );
        let m = parabolic_model();
        match mori_polyhedron_type(&m).unwrap() {
            MoriPolyhedronType::ParabolicAt { ray } => assert_eq!(ray, m.canonical().neg()),
            t => panic!("{t:?}"),
        }
    }

    #[test]
    fn membership() {
        let m = f1();
        let g = vec![m.curve("e1").unwrap().clone(), m.curve("f").unwrap().clone()];
        let t = LatticeVector::from_ints(m.ns(), &[1, -2]).unwrap();
        assert!(!is_nonnegative_combination(&t, &g).unwrap().is_member());
        assert_eq!(is_nonnegative_combination(&g[0], &g).unwrap(), Membership::Member(vec![int(1), int(0)]));
        let z = LatticeVector::zero(m.ns().clone());
        assert_eq!(is_nonnegative_combination(&z, &g).unwrap(), Membership::Member(vec![int(0), int(0)]));
    }

    #[test]
    fn f1_fiber_is_flagged() {
        let r = mori_generators(&f1(), &[]).unwrap();
        assert_eq!(r.kodaira, KodairaDim::Two);
        assert_eq!(r.candidates.len(), 1);
        assert!(r.candidates[0].extremal);
        assert_eq!(r.ungenerated_isotropic.len(), 1);
        assert_eq!(r.ungenerated_isotropic[0].label, "f");
        assert!(r.ungenerated_isotropic[0].extremal);
        assert!(r.discrepancy);
    }

    #[test]
    fn del_pezzo_generators() {
        let r = mori_generators(&blowup2(), &[]).unwrap();
        let labels: Vec<&str> = r.candidates.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["e1", "e2", "l12"]);
        assert!(r.candidates.iter().all(|c| c.extremal));
        assert!(!r.discrepancy);
    }

    #[test]
    fn nef_part_joins_when_not_generated() {
        let r = mori_generators(&parabolic_model(), &[]).unwrap();
        assert_eq!(r.kodaira, KodairaDim::One);
        assert!(r.candidates.iter().any(|c| c.kind == GeneratorKind::NefPart));
        let bad = LatticeVector::from_ints(parabolic_model().ns(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(
            mori_generators(&parabolic_model(), &[("x".into(), bad)]),
            Err(Error::InvalidParam(_))
        ));
    }
}
