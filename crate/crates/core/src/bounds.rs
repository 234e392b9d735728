//! Dimension bounds and the published constants they are compared with.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundTheorem {
    T1_4_0,
    T1_4_1,
    T1_4_2,
    T1_4_2Prime,
    T1_4_3,
    T1_4_3Prime,
    T1_5_1_1,
    L1_5_1_4,
    L1_5_2_4,
    T3_4,
    T3_5,
    T3_5Prime,
    T3_6,
    T3_6Prime,
    IntroLemma1,
}

impl BoundTheorem {
    pub const ALL: [BoundTheorem; 15] = [
        Self::T1_4_0,
        Self::T1_4_1,
        Self::T1_4_2,
        Self::T1_4_2Prime,
        Self::T1_4_3,
        Self::T1_4_3Prime,
        Self::T1_5_1_1,
        Self::L1_5_1_4,
        Self::L1_5_2_4,
        Self::T3_4,
        Self::T3_5,
        Self::T3_5Prime,
        Self::T3_6,
        Self::T3_6Prime,
        Self::IntroLemma1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::T1_4_0 => "1.4.0",
            Self::T1_4_1 => "1.4.1",
            Self::T1_4_2 => "1.4.2",
            Self::T1_4_2Prime => "1.4.2'",
            Self::T1_4_3 => "1.4.3",
            Self::T1_4_3Prime => "1.4.3'",
            Self::T1_5_1_1 => "1.5.1.1",
            Self::L1_5_1_4 => "1.5.1.4",
            Self::L1_5_2_4 => "1.5.2.4",
            Self::T3_4 => "3.4",
            Self::T3_5 => "3.5",
            Self::T3_5Prime => "3.5'",
            Self::T3_6 => "3.6",
            Self::T3_6Prime => "3.6'",
            Self::IntroLemma1 => "intro",
        }
    }

    pub fn quantity(self) -> Quantity {
        match self {
            Self::T1_4_0 | Self::T1_5_1_1 => Quantity::DimGamma,
            Self::T1_4_1
            | Self::T1_4_2
            | Self::T1_4_2Prime
            | Self::T1_4_3
            | Self::T1_4_3Prime
            | Self::IntroLemma1 => Quantity::DimLambda,
            Self::T3_4 | Self::T3_5 | Self::T3_5Prime => Quantity::DimNs,
            Self::L1_5_1_4 | Self::L1_5_2_4 | Self::T3_6 | Self::T3_6Prime => Quantity::N,
        }
    }

    /// Additive constant of the `96 (C1 + C2/3) + c` family, if it belongs to it.
    fn offset(self) -> Option<i64> {
        match self {
            Self::T1_4_0 | Self::T1_4_1 | Self::T1_4_3 | Self::T1_4_3Prime | Self::IntroLemma1 => Some(68),
            Self::T3_6 | Self::T3_6Prime => Some(68),
            Self::T1_4_2 | Self::T1_4_2Prime | Self::T3_4 => Some(69),
            Self::T3_5 | Self::T3_5Prime => Some(70),
            Self::T1_5_1_1 | Self::L1_5_1_4 | Self::L1_5_2_4 => None,
        }
    }
}

impl fmt::Display for BoundTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BoundTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('′', "'");
        let t = t.strip_prefix("Lemma").or_else(|| t.strip_prefix("Theorem")).unwrap_or(&t).trim();
        Self::ALL
            .into_iter()
            .find(|th| th.id() == t || (th.id() == "intro" && t.eq_ignore_ascii_case("intro-lemma-1")))
            .ok_or_else(|| Error::UnknownTheorem(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    DimGamma,
    DimLambda,
    DimNs,
    N,
}

impl Quantity {
    pub fn tag(self) -> &'static str {
        match self {
            Quantity::DimGamma => "dim γ",
            Quantity::DimLambda => "dim Λ",
            Quantity::DimNs => "dim NS",
            Quantity::N => "n",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundParams {
    pub c1: Option<Rational>,
    pub c2: Option<Rational>,
    pub c: Option<Rational>,
    pub d: Option<Rational>,
    pub dim_t: Option<Rational>,
    pub n: Option<Rational>,
}

impl BoundParams {
    pub fn c1c2(c1: Rational, c2: Rational) -> Self {
        BoundParams { c1: Some(c1), c2: Some(c2), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    /// The quantity is strictly below this value.
    Strict(Rational),
    /// The two-case inequality evaluated at a given `n`.
    Predicate { n: Rational, rhs: Rational, holds: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub theorem: BoundTheorem,
    pub inputs: Vec<(&'static str, Rational)>,
    pub value: BoundValue,
    pub quantity: Quantity,
}

impl BoundResult {
    pub fn strict_value(&self) -> Option<&Rational> {
        match &self.value {
            BoundValue::Strict(v) => Some(v),
            BoundValue::Predicate { .. } => None,
        }
    }
}

fn take(v: &Option<Rational>, name: &'static str, inputs: &mut Vec<(&'static str, Rational)>) -> Result<Rational> {
    let x = v.clone().ok_or(Error::MissingParam(name))?;
    if x.is_negative() {
        return Err(Error::InvalidParam(name));
    }
    inputs.push((name, x.clone()));
    Ok(x)
}

pub fn bound(theorem: BoundTheorem, params: &BoundParams) -> Result<BoundResult> {
    let mut inputs = Vec::new();
    let value = if let Some(offset) = theorem.offset() {
        let c1 = take(&params.c1, "c1", &mut inputs)?;
        let c2 = take(&params.c2, "c2", &mut inputs)?;
        let mut v = int(96) * (c1 + c2 / int(3)) + int(offset);
        if matches!(theorem, BoundTheorem::T1_4_3 | BoundTheorem::T1_4_3Prime) {
            v += take(&params.dim_t, "dim_t", &mut inputs)?;
        }
        BoundValue::Strict(v)
    } else {
        match theorem {
            BoundTheorem::T1_5_1_1 => BoundValue::Strict(int(8) * take(&params.c, "c", &mut inputs)? + int(6)),
            BoundTheorem::L1_5_2_4 => BoundValue::Strict(int(96) * take(&params.c, "c", &mut inputs)? + int(68)),
            _ => two_case_predicate(params, &mut inputs)?,
        }
    };
    Ok(BoundResult { theorem, inputs, value, quantity: theorem.quantity() })
}

fn two_case_predicate(params: &BoundParams, inputs: &mut Vec<(&'static str, Rational)>) -> Result<BoundValue> {
    let c = take(&params.c, "c", inputs)?;
    let Some(n) = params.n.clone() else {
        // closed form only for D = 0
        return match &params.d {
            Some(d) if !d.is_zero() => Err(Error::MissingParam("n")),
            _ => {
                inputs.push(("d", Rational::zero()));
                Ok(BoundValue::Strict(int(8) * c + int(6)))
            }
        };
    };
    let d = match &params.d {
        Some(_) => take(&params.d, "d", inputs)?,
        None => {
            inputs.push(("d", Rational::zero()));
            Rational::zero()
        }
    };
    if !n.is_integer() || n < int(2) {
        return Err(Error::InvalidParam("n"));
    }
    inputs.push(("n", n.clone()));
    let even = (n.numer() % 2u32).is_zero();
    let tail = if even { int(1) + int(8) * &d / &n } else { (int(8) * &c + int(8) * &d) / (&n - int(1)) };
    let rhs = int(8) * c + int(5) + tail;
    let holds = n < rhs;
    Ok(BoundValue::Predicate { n, rhs, holds })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::Elliptic => "elliptic",
            Case::Parabolic => "parabolic",
            Case::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordedConstant {
    pub source: &'static str,
    pub case: Case,
    pub published: Rational,
    /// The published bound is `published + dim T`.
    pub plus_dim_t: bool,
    pub formula: BoundTheorem,
    /// Formula at `C1 = 8, C2 = 9` (and `dim T = 0`).
    pub formula_value: Rational,
    pub discrepancy: bool,
}

/// Published constants next to the formula values at `C1 = 8, C2 = 9`.
pub fn recorded_constants() -> Vec<RecordedConstant> {
    let table: [(&'static str, Case, i64, BoundTheorem); 10] = [
        ("§2 Theorem 2.3(a)", Case::Elliptic, 1056, BoundTheorem::T1_4_1),
        ("§2 Theorem 2.3(b)", Case::Parabolic, 1057, BoundTheorem::T1_4_2),
        ("§2 Theorem 2.3(c)", Case::Hyperbolic, 1056, BoundTheorem::T1_4_3),
        ("Remark 2.5 (a)", Case::Elliptic, 996, BoundTheorem::T1_4_1),
        ("Remark 2.5 parabolic", Case::Parabolic, 997, BoundTheorem::T1_4_2),
        ("Remark 2.5 hyperbolic", Case::Hyperbolic, 996, BoundTheorem::T1_4_3),
        ("Introduction Theorem 2.3(a)", Case::Elliptic, 996, BoundTheorem::T1_4_1),
        ("Introduction Theorem 2.3(b)", Case::Parabolic, 997, BoundTheorem::T1_4_2),
        ("Introduction Theorem 2.3(c)", Case::Hyperbolic, 996, BoundTheorem::T1_4_3),
        ("Introduction Lemma 1", Case::Elliptic, 1124, BoundTheorem::IntroLemma1),
    ];
    let params = BoundParams { dim_t: Some(int(0)), ..BoundParams::c1c2(int(8), int(9)) };
    table
        .into_iter()
        .map(|(source, case, published, formula)| {
            let formula_value =
                bound(formula, &params).ok().and_then(|r| r.strict_value().cloned()).expect("formula bound");
            let published = int(published);
            RecordedConstant {
                source,
                case,
                discrepancy: formula_value != published,
                plus_dim_t: case == Case::Hyperbolic,
                published,
                formula,
                formula_value,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn strict(t: &str, p: BoundParams) -> Rational {
        bound(t.parse().unwrap(), &p).unwrap().strict_value().unwrap().clone()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(strict("1.4.1", BoundParams::c1c2(int(8), int(9))), int(1124));
        assert_eq!(strict("1.5.1.1", BoundParams { c: Some(int(0)), ..Default::default() }), int(6));
        let p = BoundParams { dim_t: Some(int(5)), ..BoundParams::c1c2(int(0), int(0)) };
        assert_eq!(strict("1.4.3", p), int(73));
        assert_eq!(strict("3.5'", BoundParams::c1c2(int(0), int(3))), int(96 + 70));
        assert_eq!(strict("1.5.2.4", BoundParams { c: Some(ratio(1, 2)), ..Default::default() }), int(116));
        let r = bound("1.4.1".parse().unwrap(), &BoundParams::c1c2(int(1), int(1))).unwrap();
        assert_eq!(r.quantity.tag(), "dim Λ");
    }

    #[test]
    fn parse_ids() {
        for t in BoundTheorem::ALL {
            assert_eq!(t.id().parse::<BoundTheorem>().unwrap(), t);
        }
        assert_eq!("3.6′".parse::<BoundTheorem>().unwrap(), BoundTheorem::T3_6Prime);
        assert!(matches!("9.9".parse::<BoundTheorem>(), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn missing_and_invalid_params() {
        let t = BoundTheorem::T1_4_3;
        assert_eq!(bound(t, &BoundParams::c1c2(int(0), int(0))), Err(Error::MissingParam("dim_t")));
        assert_eq!(bound(t, &BoundParams::default()), Err(Error::MissingParam("c1")));
        assert_eq!(
            bound(BoundTheorem::T1_4_1, &BoundParams::c1c2(int(-1), int(0))),
            Err(Error::InvalidParam("c1"))
        );
        let p = BoundParams { c: Some(int(1)), d: Some(int(1)), ..Default::default() };
        assert_eq!(bound(BoundTheorem::L1_5_1_4, &p), Err(Error::MissingParam("n")));
    }

    #[test]
    fn two_case_predicate() {
        let run = |c: i64, d: i64, n: i64| {
            let p = BoundParams { c: Some(int(c)), d: Some(int(d)), n: Some(int(n)), ..Default::default() };
            match bound(BoundTheorem::L1_5_1_4, &p).unwrap().value {
                BoundValue::Predicate { rhs, holds, .. } => (rhs, holds),
                v => panic!("{v:?}"),
            }
        };
        // even: 8C + 6 + 8D/n
        assert_eq!(run(1, 2, 4), (int(18), true));
        // odd: 8C + 5 + (8C + 8D)/(n - 1)
        assert_eq!(run(1, 0, 5), (int(15), true));
        assert_eq!(run(0, 0, 7), (int(5), false));
        // D = 0 closed form
        let p = BoundParams { c: Some(int(2)), ..Default::default() };
        assert_eq!(bound(BoundTheorem::L1_5_1_4, &p).unwrap().strict_value(), Some(&int(22)));
    }

    #[test]
    fn recorded_table() {
        let t = recorded_constants();
        let find = |s: &str| t.iter().find(|r| r.source == s).unwrap();
        assert_eq!(find("§2 Theorem 2.3(a)").published, int(1056));
        assert_eq!(find("§2 Theorem 2.3(b)").published, int(1057));
        assert_eq!(find("Remark 2.5 parabolic").published, int(997));
        assert_eq!(find("Remark 2.5 (a)").published, int(996));
        let a = find("§2 Theorem 2.3(a)");
        assert_eq!(a.formula_value, int(1124));
        assert!(a.discrepancy);
        assert_eq!(find("§2 Theorem 2.3(b)").formula_value, int(1125));
        assert!(find("§2 Theorem 2.3(c)").plus_dim_t);
        assert!(!find("Introduction Lemma 1").discrepancy);
    }

    fn q() -> impl Strategy<Value = Rational> {
        (0i64..200, 1i64..6).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn monotone(c1 in q(), c2 in q(), c in q(), t in q(), e in q(), which in 0usize..15) {
            let th = BoundTheorem::ALL[which];
            prop_assume!(th != BoundTheorem::L1_5_1_4);
            let base = BoundParams { c1: Some(c1), c2: Some(c2), c: Some(c), d: Some(int(0)), dim_t: Some(t), n: None };
            let v0 = bound(th, &base).unwrap().strict_value().unwrap().clone();
            let bumps: [fn(&mut BoundParams, &Rational); 4] = [
                |p, e| p.c1 = Some(p.c1.clone().unwrap() + e),
                |p, e| p.c2 = Some(p.c2.clone().unwrap() + e),
                |p, e| p.c = Some(p.c.clone().unwrap() + e),
                |p, e| p.dim_t = Some(p.dim_t.clone().unwrap() + e),
            ];
            for b in bumps {
                let mut p = base.clone();
                b(&mut p, &e);
                let v1 = bound(th, &p).unwrap().strict_value().unwrap().clone();
                prop_assert!(v1 >= v0);
            }
        }

        #[test]
        fn predicate_rhs_monotone(c in q(), d in q(), e in q(), n in 2i64..50) {
            let rhs = |c: &Rational, d: &Rational| {
                let p = BoundParams { c: Some(c.clone()), d: Some(d.clone()), n: Some(int(n)), ..Default::default() };
                match bound(BoundTheorem::L1_5_1_4, &p).unwrap().value {
                    BoundValue::Predicate { rhs, .. } => rhs,
                    _ => unreachable!(),
                }
            };
            let r0 = rhs(&c, &d);
            prop_assert!(rhs(&(c.clone() + &e), &d) >= r0);
            prop_assert!(rhs(&c, &(d.clone() + &e)) >= r0);
        }
    }
}
