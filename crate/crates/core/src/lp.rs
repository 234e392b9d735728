//! Exact feasibility for small linear systems.
//!
//! Phase I of the simplex method on a dense rational tableau with Bland's
//! rule. Infeasible systems come with a Farkas certificate that is checked
//! before being returned.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// `x ≥ 0` with `A x = b`.
    Feasible(Vec<Rational>),
    /// `y` with `yᵀA ≥ 0` and `yᵀb < 0`.
    Infeasible(Vec<Rational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }
}

/// Decides whether `A x = b` has a solution with `x ≥ 0`.
pub fn nonnegative_solution(a: &Matrix, b: &[Rational]) -> Feasibility {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "right-hand side has the wrong length");
    let flip: Vec<bool> = b.iter().map(Signed::is_negative).collect();
    let width = n + m + 1;
    let mut t = vec![Rational::zero(); m * width];
    for i in 0..m {
        let s = if flip[i] { -Rational::one() } else { Rational::one() };
        for j in 0..n {
            t[i * width + j] = &s * &a[(i, j)];
        }
        t[i * width + n + i] = Rational::one();
        t[i * width + width - 1] = &s * &b[i];
    }
    // reduced costs for the objective Σ artificials; last entry is -objective
    let mut cost = vec![Rational::zero(); width];
    for i in 0..m {
        for j in 0..n {
            cost[j] -= &t[i * width + j];
        }
        cost[width - 1] -= &t[i * width + width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let coef = &t[i * width + enter];
            if !coef.is_positive() {
                continue;
            }
            let r = &t[i * width + width - 1] / coef;
            let better = match &leave {
                None => true,
                Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, r));
            }
        }
        let Some((row, _)) = leave else {
            // unbounded direction; cannot happen for a bounded Phase I objective
            break;
        };
        pivot(&mut t, &mut cost, width, row, enter);
        basis[row] = enter;
    }

    let objective = -cost[width - 1].clone();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &bj) in basis.iter().enumerate() {
            if bj < n {
                x[bj] = t[i * width + width - 1].clone();
            }
        }
        debug_assert_eq!(a.mul_vec(&x), b);
        return Feasibility::Feasible(x);
    }
    // dual of the artificial columns: π_k = 1 - reduced cost
    let y: Vec<Rational> = (0..m)
        .map(|k| {
            let pi = Rational::one() - &cost[n + k];
            if flip[k] { pi } else { -pi }
        })
        .collect();
    assert!(is_farkas_certificate(a, b, &y), "Farkas certificate failed verification");
    Feasibility::Infeasible(y)
}

fn pivot(t: &mut [Rational], cost: &mut [Rational], width: usize, row: usize, col: usize) {
    let inv = t[row * width + col].recip();
    for j in 0..width {
        let v = &t[row * width + j] * &inv;
        t[row * width + j] = v;
    }
    let rows = t.len() / width;
    for i in 0..rows {
        if i == row || t[i * width + col].is_zero() {
            continue;
        }
        let f = t[i * width + col].clone();
        for j in 0..width {
            let v = &f * &t[row * width + j];
            t[i * width + j] -= v;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for j in 0..width {
            let v = &f * &t[row * width + j];
            cost[j] -= v;
        }
    }
}

pub fn is_farkas_certificate(a: &Matrix, b: &[Rational], y: &[Rational]) -> bool {
    let dot = |col: &mut dyn Iterator<Item = &Rational>| {
        col.zip(y).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
    };
    (0..a.cols()).all(|j| !dot(&mut (0..a.rows()).map(|i| &a[(i, j)])).is_negative())
        && dot(&mut b.iter()).is_negative()
}

/// Whether `target` is a nonnegative combination of `generators`
/// (each given by coordinates of equal length).
pub fn nonnegative_combination(target: &[Rational], generators: &[Vec<Rational>]) -> Feasibility {
    let a = Matrix::from_fn(target.len(), generators.len(), |i, j| generators[j][i].clone());
    nonnegative_solution(&a, target)
}

/// A free `x` with `E x = e` and `G x ≥ g`, if one exists.
pub fn solve_mixed(
    eq: &[Vec<Rational>],
    eq_rhs: &[Rational],
    ge: &[Vec<Rational>],
    ge_rhs: &[Rational],
) -> Option<Vec<Rational>> {
    let n = eq.first().or(ge.first()).map_or(0, Vec::len);
    let rows = eq.len() + ge.len();
    // variables: u (n), v (n), slack (ge.len()); x = u - v
    let cols = 2 * n + ge.len();
    let a = Matrix::from_fn(rows, cols, |i, j| {
        let row = if i < eq.len() { &eq[i] } else { &ge[i - eq.len()] };
        if j < n {
            row[j].clone()
        } else if j < 2 * n {
            -row[j - n].clone()
        } else if i >= eq.len() && j - 2 * n == i - eq.len() {
            -Rational::one()
        } else {
            Rational::zero()
        }
    });
    let b: Vec<Rational> = eq_rhs.iter().chain(ge_rhs).cloned().collect();
    match nonnegative_solution(&a, &b) {
        Feasibility::Feasible(z) => Some((0..n).map(|j| &z[j] - &z[n + j]).collect()),
        Feasibility::Infeasible(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn feasible_and_infeasible() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(nonnegative_solution(&a, &v(&[2, 0])), Feasibility::Feasible(v(&[1, 1])));
        // x1 - x2 = 3 needs x1 >= 3, but x1 + x2 = 2
        match nonnegative_solution(&a, &v(&[2, 3])) {
            Feasibility::Infeasible(y) => assert!(is_farkas_certificate(&a, &v(&[2, 3]), &y)),
            other => panic!("{other:?}"),
        }
        assert!(!nonnegative_solution(&m(&[&[1]]), &v(&[-1])).is_feasible());
    }

    #[test]
    fn cone_membership() {
        let gens = [v(&[1, 0]), v(&[1, 1])];
        assert!(nonnegative_combination(&v(&[3, 1]), &gens).is_feasible());
        assert!(!nonnegative_combination(&v(&[0, 1]), &gens).is_feasible());
    }

    #[test]
    fn mixed_system() {
        // x0 = 0, x1 >= 1, -x1 >= -3
        let x = solve_mixed(&[v(&[1, 0])], &v(&[0]), &[v(&[0, 1]), v(&[0, -1])], &v(&[1, -3])).unwrap();
        assert_eq!(x[0], int(0));
        assert!(x[1] >= int(1) && x[1] <= int(3));
        assert!(solve_mixed(&[], &[], &[v(&[1]), v(&[-1])], &v(&[1, 0])).is_none());
    }

    proptest! {
        #[test]
        fn answer_is_always_certified(
            entries in proptest::collection::vec(-3i64..=3, 12),
            rhs in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let a = Matrix::from_fn(3, 4, |i, j| int(entries[i * 4 + j]));
            let b = v(&rhs);
            match nonnegative_solution(&a, &b) {
                Feasibility::Feasible(x) => {
                    prop_assert!(x.iter().all(|c| !c.is_negative()));
                    prop_assert_eq!(a.mul_vec(&x), b);
                }
                Feasibility::Infeasible(y) => prop_assert!(is_farkas_certificate(&a, &b, &y)),
            }
        }
    }
}
