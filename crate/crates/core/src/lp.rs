//! Exact rational feasibility for systems of linear equalities and
//! inequalities with integer data.
//!
//! Phase I of the simplex method on a dense tableau of `BigRational`s, with
//! Bland's least-index rule for both the entering and the leaving variable.
//! Equalities get their own artificial variable rather than being split into
//! two inequalities. There is no floating point and no fixed-width arithmetic
//! anywhere in this module.
//!
//! The worst case is exponential in the number of pivots; this is an exact
//! oracle, not a strongly polynomial algorithm.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

/// `Σ coeff·x_var  (<= | =)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<(usize, BigInt)>,
    pub relation: Relation,
    pub rhs: BigInt,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<(usize, BigInt)>, relation: Relation, rhs: BigInt) -> Self {
        Self { coeffs, relation, rhs }
    }

    pub fn lhs(&self, point: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, (v, c)| acc + &point[*v] * BigRational::from_integer(c.clone()))
    }

    pub fn is_satisfied_by(&self, point: &[BigRational]) -> bool {
        let lhs = self.lhs(point);
        let rhs = BigRational::from_integer(self.rhs.clone());
        match self.relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// Variables are free (unbounded in both directions) unless a constraint
/// says otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<LinearConstraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        assert!(coeffs.iter().all(|&(v, _)| v < self.num_vars), "variable out of range");
        self.constraints.push(LinearConstraint::new(
            coeffs.into_iter().map(|(v, c)| (v, BigInt::from(c))).collect(),
            relation,
            BigInt::from(rhs),
        ));
    }

    pub fn is_satisfied_by(&self, point: &[BigRational]) -> bool {
        point.len() == self.num_vars && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// A point satisfying every constraint exactly; present iff feasible.
    pub point: Option<Vec<BigRational>>,
}

/// Decides whether `sys` has a rational solution and returns one if so.
///
/// Panics if the point read off the final tableau fails exact substitution,
/// which would mean a bug in the pivoting.
pub fn feasible(sys: &LinearSystem) -> FeasibilityResult {
    let mut tableau = Tableau::phase_one(sys);
    tableau.solve();
    if !tableau.objective_value().is_zero() {
        return FeasibilityResult {
            feasible: false,
            point: None,
        };
    }
    let point = tableau.primal_point();
    assert!(
        sys.is_satisfied_by(&point),
        "simplex returned a point that violates the system"
    );
    FeasibilityResult {
        feasible: true,
        point: Some(point),
    }
}

/// Multiplies `point` by the lcm of its denominators.
pub fn scale_to_integer(point: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let n = point.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled = point
        .iter()
        .map(|q| (q * BigRational::from_integer(n.clone())).to_integer())
        .collect();
    (n, scaled)
}

/// How an original variable maps onto nonnegative tableau columns.
#[derive(Clone, Copy, Debug)]
enum Column {
    NonNegative(usize),
    Split { plus: usize, minus: usize },
}

struct Tableau {
    /// `rows[r]` holds the coefficients followed by the right-hand side.
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs followed by minus the objective value.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    num_cols: usize,
    columns: Vec<Column>,
}

impl Tableau {
    fn phase_one(sys: &LinearSystem) -> Self {
        // A row `c·x <= 0` with a single negative coefficient just says
        // `x >= 0`; such variables need no split and the row is dropped.
        let mut nonneg = vec![false; sys.num_vars];
        let mut kept = Vec::new();
        for c in &sys.constraints {
            let nonzero: Vec<&(usize, BigInt)> = c.coeffs.iter().filter(|(_, a)| !a.is_zero()).collect();
            if c.relation == Relation::Le && c.rhs.is_zero() && nonzero.len() == 1 && nonzero[0].1.is_negative() {
                nonneg[nonzero[0].0] = true;
            } else {
                kept.push(c);
            }
        }

        let mut next = 0usize;
        let columns: Vec<Column> = nonneg
            .iter()
            .map(|&nn| {
                if nn {
                    next += 1;
                    Column::NonNegative(next - 1)
                } else {
                    next += 2;
                    Column::Split {
                        plus: next - 2,
                        minus: next - 1,
                    }
                }
            })
            .collect();
        let structural = next;
        let slacks = kept.iter().filter(|c| c.relation == Relation::Le).count();
        let artificials = kept
            .iter()
            .filter(|c| c.relation == Relation::Eq || c.rhs.is_negative())
            .count();
        let num_cols = structural + slacks + artificials;

        let zero = BigRational::zero();
        let mut rows = Vec::with_capacity(kept.len());
        let mut basis = Vec::with_capacity(kept.len());
        let mut cost = vec![zero.clone(); num_cols + 1];
        let mut slack_col = structural;
        let mut art_col = structural + slacks;
        for c in kept {
            let mut row = vec![zero.clone(); num_cols + 1];
            for (v, a) in &c.coeffs {
                let a = BigRational::from_integer(a.clone());
                match columns[*v] {
                    Column::NonNegative(col) => row[col] += &a,
                    Column::Split { plus, minus } => {
                        row[plus] += &a;
                        row[minus] -= &a;
                    }
                }
            }
            row[num_cols] = BigRational::from_integer(c.rhs.clone());
            let slack = (c.relation == Relation::Le).then(|| {
                slack_col += 1;
                slack_col - 1
            });
            if let Some(s) = slack {
                row[s] = BigRational::one();
            }
            if c.rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            match slack {
                Some(s) if !c.rhs.is_negative() => basis.push(s),
                _ => {
                    row[art_col] = BigRational::one();
                    basis.push(art_col);
                    // Minimizing the artificial sum: price out this row.
                    for (j, x) in row.iter().enumerate() {
                        if j != art_col && !x.is_zero() {
                            cost[j] -= x;
                        }
                    }
                    art_col += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            cost,
            basis,
            num_cols,
            columns,
        }
    }

    fn objective_value(&self) -> BigRational {
        -&self.cost[self.num_cols]
    }

    fn solve(&mut self) {
        while let Some(enter) = (0..self.num_cols).find(|&j| self.cost[j].is_negative()) {
            let mut leave: Option<(usize, BigRational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.num_cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((best_r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            // Phase I is bounded below by zero, so a leaving row exists.
            let (r, _) = leave.expect("phase I objective is bounded");
            self.pivot(r, enter);
        }
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let support: Vec<usize> = (0..=self.num_cols).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |target: &mut Vec<BigRational>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                target[j] -= delta;
            }
        };
        for (other, row) in self.rows.iter_mut().enumerate() {
            if other != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    fn primal_point(&self) -> Vec<BigRational> {
        let mut values = vec![BigRational::zero(); self.num_cols];
        for (r, &b) in self.basis.iter().enumerate() {
            values[b] = self.rows[r][self.num_cols].clone();
        }
        self.columns
            .iter()
            .map(|c| match *c {
                Column::NonNegative(col) => values[col].clone(),
                Column::Split { plus, minus } => &values[plus] - &values[minus],
            })
            .collect()
    }
}

/// Exact fraction string, e.g. `3/2` or `-4`.
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn empty_interval_is_infeasible() {
        let mut sys = LinearSystem::new(1);
        sys.push(vec![(0, -1)], Relation::Le, 0);
        sys.push(vec![(0, 1)], Relation::Le, -1);
        assert_eq!(
            feasible(&sys),
            FeasibilityResult {
                feasible: false,
                point: None
            }
        );
    }

    #[test]
    fn zero_variable_systems() {
        let mut ok = LinearSystem::new(0);
        ok.push(vec![], Relation::Eq, 0);
        ok.push(vec![], Relation::Le, 3);
        let r = feasible(&ok);
        assert!(r.feasible);
        assert_eq!(r.point, Some(vec![]));

        let mut bad = LinearSystem::new(0);
        bad.push(vec![], Relation::Eq, 2);
        assert!(!feasible(&bad).feasible);
        let mut bad = LinearSystem::new(0);
        bad.push(vec![], Relation::Le, -1);
        assert!(!feasible(&bad).feasible);
    }

    #[test]
    fn fractional_vertex() {
        // 2x = 1, x free.
        let mut sys = LinearSystem::new(1);
        sys.push(vec![(0, 2)], Relation::Eq, 1);
        let r = feasible(&sys);
        assert_eq!(r.point.unwrap(), vec![q(1, 2)]);
    }

    #[test]
    fn free_variables_may_go_negative() {
        // x + y = -3, x - y <= 1, y <= -2.
        let mut sys = LinearSystem::new(2);
        sys.push(vec![(0, 1), (1, 1)], Relation::Eq, -3);
        sys.push(vec![(0, 1), (1, -1)], Relation::Le, 1);
        sys.push(vec![(1, 1)], Relation::Le, -2);
        let r = feasible(&sys);
        assert!(r.feasible);
        assert!(sys.is_satisfied_by(&r.point.unwrap()));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling example, rephrased as feasibility with an
        // objective cut; Bland's rule must terminate.
        let mut sys = LinearSystem::new(4);
        for v in 0..4 {
            sys.push(vec![(v, -1)], Relation::Le, 0);
        }
        sys.push(vec![(0, 1), (1, -32), (2, -4), (3, 36)], Relation::Le, 0);
        sys.push(vec![(0, 1), (1, -24), (2, -1), (3, 6)], Relation::Le, 0);
        sys.push(vec![(2, 1)], Relation::Le, 1);
        sys.push(vec![(0, -3), (1, 80), (2, 2), (3, -24)], Relation::Le, -1);
        let r = feasible(&sys);
        if let Some(p) = &r.point {
            assert!(sys.is_satisfied_by(p));
        }
        // Without the cut the origin is feasible.
        sys.constraints.pop();
        assert!(feasible(&sys).feasible);
    }

    #[test]
    fn scaling_to_integers() {
        assert_eq!(
            scale_to_integer(&[q(1, 2), q(1, 3)]),
            (BigInt::from(6), vec![BigInt::from(3), BigInt::from(2)])
        );
        assert_eq!(
            scale_to_integer(&[q(0, 1), q(0, 1)]),
            (BigInt::from(1), vec![BigInt::from(0), BigInt::from(0)])
        );
        assert_eq!(scale_to_integer(&[q(5, 1)]), (BigInt::from(1), vec![BigInt::from(5)]));
        assert_eq!(scale_to_integer(&[]), (BigInt::from(1), vec![]));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_string(&q(3, 2)), "3/2");
        assert_eq!(rational_string(&q(-4, 2)), "-2");
    }

    fn arb_system() -> impl Strategy<Value = LinearSystem> {
        (1usize..5).prop_flat_map(|n| {
            let row = (
                prop::collection::vec(-2i64..=2, n),
                prop::bool::ANY,
                -3i64..=3,
            );
            prop::collection::vec(row, 0..7).prop_map(move |rows| {
                let mut sys = LinearSystem::new(n);
                for (coeffs, eq, rhs) in rows {
                    let rel = if eq { Relation::Eq } else { Relation::Le };
                    sys.push(coeffs.into_iter().enumerate().collect(), rel, rhs);
                }
                sys
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn returned_points_are_exact(sys in arb_system()) {
            let r = feasible(&sys);
            prop_assert_eq!(r.feasible, r.point.is_some());
            if let Some(p) = &r.point {
                prop_assert!(sys.is_satisfied_by(p));
            }
            // Same input, same answer.
            prop_assert_eq!(feasible(&sys), r);
        }

        #[test]
        fn duplicated_rows_do_not_change_the_verdict(sys in arb_system()) {
            // Heavily degenerate: every row appears three times.
            let mut tripled = sys.clone();
            for c in &sys.constraints {
                tripled.constraints.push(c.clone());
                tripled.constraints.push(c.clone());
            }
            prop_assert_eq!(feasible(&tripled).feasible, feasible(&sys).feasible);
        }
    }
}
