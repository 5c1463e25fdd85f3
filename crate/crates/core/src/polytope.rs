//! The row-statistics polytope of a triple `(lambda, mu, nu)` and the
//! vanishing decision built on it.
//!
//! Coordinates are `rB[k][i]` (labels `k` in the boxes of row `i`) and
//! `rE[k][i]` (labels `k` on the edges below row `i`) for `1 <= k <= l(mu)`,
//! `1 <= i <= l(nu)`, ordered label-major, then row, then box before edge.
//! Any coordinate outside that range is identically zero and simply does not
//! appear in a row.
//!
//! The polytope contains an integer point exactly when the Littlewood-Richardson
//! polynomial is nonzero, and it dilates linearly with the triple, so by
//! saturation rational feasibility alone decides vanishing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{self, LinearSystem, Relation};
use crate::partition::Partition;
use crate::tableau::{self, EdgeLabeledTableau, RowStatistics};

/// Which of the six constraint families a row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Nonnegativity.
    A,
    /// Row lengths of the skew shape.
    B,
    /// Content.
    C,
    /// Room on the edges between consecutive rows.
    D,
    /// Nothing too high.
    E,
    /// Row-word lattice condition after each row.
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Box,
    Edge,
}

/// Index of `rB[k][i]` or `rE[k][i]` in a system with `rows = l(nu)`.
pub fn var_index(rows: usize, k: usize, i: usize, slot: Slot) -> usize {
    debug_assert!(k >= 1 && i >= 1 && i <= rows);
    ((k - 1) * rows + (i - 1)) * 2 + usize::from(slot == Slot::Edge)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowTag {
    pub family: Family,
    pub i: Option<usize>,
    pub k: Option<usize>,
    pub slot: Option<Slot>,
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: Option<usize>| x.map_or_else(|| "*".to_string(), |v| v.to_string());
        write!(f, "{:?}({},{})", self.family, show(self.i), show(self.k))
    }
}

/// `Σ coeff·var (<= | =) rhs` with coefficients in {-1, 1} (zeros omitted).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub tag: RowTag,
    pub coeffs: Vec<(usize, i32)>,
    pub relation: Relation,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintSystem {
    rows: usize,
    labels: usize,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub tag: RowTag,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Builder {
    rows: usize,
    constraints: Vec<Constraint>,
}

impl Builder {
    fn var(&self, k: usize, i: usize, slot: Slot) -> usize {
        var_index(self.rows, k, i, slot)
    }

    fn push(&mut self, tag: RowTag, mut coeffs: Vec<(usize, i32)>, relation: Relation, rhs: i64) {
        coeffs.sort_unstable();
        debug_assert!(coeffs.windows(2).all(|w| w[0].0 != w[1].0));
        self.constraints.push(Constraint {
            tag,
            coeffs,
            relation,
            rhs,
        });
    }
}

fn tag(family: Family, i: Option<usize>, k: Option<usize>, slot: Option<Slot>) -> RowTag {
    RowTag { family, i, k, slot }
}

/// Emits the constraint families (A)-(F) for `(lambda, mu, nu)`.
///
/// The shape rows (B) run over every row of `nu` or `lambda`, whichever is
/// longer; rows past `l(nu)` have no variables and only assert that
/// `lambda` ends where `nu` does.
pub fn build_constraints(lambda: &Partition, mu: &Partition, nu: &Partition) -> ConstraintSystem {
    use Family::*;
    let rows = nu.len();
    let labels = mu.len();
    let part = |p: &Partition, i: usize| i64::from(p.part(i));
    let mut b = Builder {
        rows,
        constraints: Vec::new(),
    };

    for k in 1..=labels {
        for i in 1..=rows {
            for slot in [Slot::Box, Slot::Edge] {
                let v = b.var(k, i, slot);
                b.push(tag(A, Some(i), Some(k), Some(slot)), vec![(v, -1)], Relation::Le, 0);
            }
        }
    }

    for i in 1..=rows.max(lambda.len()) {
        let coeffs = if i <= rows {
            (1..=labels).map(|k| (b.var(k, i, Slot::Box), 1)).collect()
        } else {
            Vec::new()
        };
        b.push(tag(B, Some(i), None, None), coeffs, Relation::Eq, part(nu, i) - part(lambda, i));
    }

    for k in 1..=labels {
        let coeffs = (1..=rows)
            .flat_map(|i| [(b.var(k, i, Slot::Box), 1), (b.var(k, i, Slot::Edge), 1)])
            .collect();
        b.push(tag(C, None, Some(k), None), coeffs, Relation::Eq, part(mu, k));
    }

    // rE[k][i] - Σ_{k'<k} rB[k'][i] + Σ_{k'<=k} rB[k'][i+1] <= lambda_i - lambda_{i+1}
    for i in 1..=rows {
        for k in 1..=labels {
            let mut coeffs = vec![(b.var(k, i, Slot::Edge), 1)];
            coeffs.extend((1..k).map(|kk| (b.var(kk, i, Slot::Box), -1)));
            if i < rows {
                coeffs.extend((1..=k).map(|kk| (b.var(kk, i + 1, Slot::Box), 1)));
            }
            b.push(
                tag(D, Some(i), Some(k), None),
                coeffs,
                Relation::Le,
                part(lambda, i) - part(lambda, i + 1),
            );
        }
    }

    for i in 1..=rows {
        for k in (i + 1)..=labels {
            for slot in [Slot::Box, Slot::Edge] {
                let v = b.var(k, i, slot);
                b.push(tag(E, Some(i), Some(k), Some(slot)), vec![(v, 1)], Relation::Eq, 0);
            }
        }
    }

    // rB[k+1][i] + Σ_{i'<i} (rB+rE)[k+1][i'] - Σ_{i'<i} (rB+rE)[k][i'] <= 0
    for i in 1..=rows {
        for k in 1..=labels {
            let mut coeffs = Vec::new();
            if k < labels {
                coeffs.push((b.var(k + 1, i, Slot::Box), 1));
                for ii in 1..i {
                    coeffs.push((b.var(k + 1, ii, Slot::Box), 1));
                    coeffs.push((b.var(k + 1, ii, Slot::Edge), 1));
                }
            }
            for ii in 1..i {
                coeffs.push((b.var(k, ii, Slot::Box), -1));
                coeffs.push((b.var(k, ii, Slot::Edge), -1));
            }
            b.push(tag(F, Some(i), Some(k), None), coeffs, Relation::Le, 0);
        }
    }

    ConstraintSystem {
        rows,
        labels,
        constraints: b.constraints,
    }
}

impl ConstraintSystem {
    /// `2 · l(nu) · l(mu)`.
    pub fn num_vars(&self) -> usize {
        2 * self.rows * self.labels
    }

    /// `l(nu)`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `l(mu)`.
    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn var_name(&self, idx: usize) -> String {
        let slot = if idx.is_multiple_of(2) { "rB" } else { "rE" };
        let cell = idx / 2;
        format!("{slot}[{}][{}]", cell / self.rows + 1, cell % self.rows + 1)
    }

    /// Every coefficient is -1, 0 or 1. Right-hand sides are integers by
    /// construction.
    pub fn is_combinatorial(&self) -> bool {
        self.constraints
            .iter()
            .all(|c| c.coeffs.iter().all(|&(_, a)| (-1..=1).contains(&a)))
    }

    /// The same rows with every right-hand side multiplied by `factor`.
    pub fn scaled(&self, factor: i64) -> ConstraintSystem {
        let mut out = self.clone();
        for c in &mut out.constraints {
            c.rhs *= factor;
        }
        out
    }

    pub fn to_linear_system(&self) -> LinearSystem {
        LinearSystem {
            num_vars: self.num_vars(),
            constraints: self
                .constraints
                .iter()
                .map(|c| {
                    lp::LinearConstraint::new(
                        c.coeffs.iter().map(|&(v, a)| (v, BigInt::from(a))).collect(),
                        c.relation,
                        BigInt::from(c.rhs),
                    )
                })
                .collect(),
        }
    }

    /// Exact evaluation of every row at an integer point.
    pub fn check_point(&self, point: &[i64]) -> Result<CheckReport> {
        let q: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.check_rational_point(&q)
    }

    pub fn check_statistics(&self, stats: &RowStatistics) -> Result<CheckReport> {
        let stats = stats
            .resized(self.rows, self.labels)
            .ok_or(Error::DimensionMismatch {
                expected: self.num_vars(),
                got: 2 * stats.rows() * stats.labels(),
            })?;
        self.check_point(&stats.to_vector())
    }

    pub fn check_rational_point(&self, point: &[BigRational]) -> Result<CheckReport> {
        if point.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                got: point.len(),
            });
        }
        let mut report = CheckReport::default();
        for c in &self.constraints {
            let lhs = c.coeffs.iter().fold(BigRational::zero(), |acc, &(v, a)| {
                acc + &point[v] * BigRational::from_integer(a.into())
            });
            let rhs = BigRational::from_integer(c.rhs.into());
            let ok = match c.relation {
                Relation::Le => lhs <= rhs,
                Relation::Eq => lhs == rhs,
            };
            if !ok {
                report.violations.push(Violation {
                    tag: c.tag,
                    lhs,
                    relation: c.relation,
                    rhs: c.rhs,
                });
            }
        }
        Ok(report)
    }

    /// One line per row: `TAG(i,k): ±var ... (<= | =) rhs`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.constraints {
            let lhs = if c.coeffs.is_empty() {
                "0".to_string()
            } else {
                c.coeffs
                    .iter()
                    .map(|&(v, a)| format!("{}{}", if a < 0 { "-" } else { "+" }, self.var_name(v)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.push_str(&format!("{}: {} {} {}\n", c.tag, lhs, c.relation, c.rhs));
        }
        out
    }

    /// Dense rows for diffing across implementations.
    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            num_vars: self.num_vars(),
            variables: (0..self.num_vars()).map(|v| self.var_name(v)).collect(),
            rows: self
                .constraints
                .iter()
                .map(|c| {
                    let mut dense = vec![0; self.num_vars()];
                    for &(v, a) in &c.coeffs {
                        dense[v] = a;
                    }
                    RowJson {
                        tag: c.tag.family,
                        i: c.tag.i,
                        k: c.tag.k,
                        slot: c.tag.slot,
                        coeffs: dense,
                        relation: c.relation,
                        rhs: c.rhs,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub num_vars: usize,
    pub variables: Vec<String>,
    pub rows: Vec<RowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub tag: Family,
    pub i: Option<usize>,
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slot: Option<Slot>,
    pub coeffs: Vec<i32>,
    pub relation: Relation,
    pub rhs: i64,
}

/// Whether the system for `(N·lambda, N·mu, N·nu)` is the system for the
/// triple with every right-hand side multiplied by `N`.
pub fn dilate_check(lambda: &Partition, mu: &Partition, nu: &Partition, factor: u32) -> bool {
    let base = build_constraints(lambda, mu, nu);
    let dilated = build_constraints(&lambda.scale(factor), &mu.scale(factor), &nu.scale(factor));
    dilated == base.scaled(i64::from(factor))
}

/// Depth-first search for an integer point with `0 <= x_v <= upper[v]`,
/// assigning variables in index order and pruning every row by interval
/// bounds on its unassigned part. Returns `Ok(None)` when no point exists.
pub fn find_integer_point(system: &ConstraintSystem, upper: &[i64], max_nodes: u64) -> Result<Option<Vec<i64>>> {
    let n = system.num_vars();
    if upper.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: upper.len(),
        });
    }
    let rows = system.constraints();
    let mut touching: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    // rem_lo[r][d], rem_hi[r][d]: range of row r's terms over variables >= d.
    let mut rem_lo = vec![vec![0i64; n + 1]; rows.len()];
    let mut rem_hi = vec![vec![0i64; n + 1]; rows.len()];
    for (r, c) in rows.iter().enumerate() {
        let mut dense = vec![0i64; n];
        for &(v, a) in &c.coeffs {
            dense[v] = i64::from(a);
            touching[v].push((r, i64::from(a)));
        }
        for d in (0..n).rev() {
            let span = dense[d] * upper[d];
            rem_lo[r][d] = rem_lo[r][d + 1] + span.min(0);
            rem_hi[r][d] = rem_hi[r][d + 1] + span.max(0);
        }
    }

    struct Dfs<'a> {
        rows: &'a [Constraint],
        upper: &'a [i64],
        touching: Vec<Vec<(usize, i64)>>,
        rem_lo: Vec<Vec<i64>>,
        rem_hi: Vec<Vec<i64>>,
        partial: Vec<i64>,
        point: Vec<i64>,
        nodes: u64,
        max_nodes: u64,
    }

    impl Dfs<'_> {
        fn row_ok(&self, r: usize, depth: usize) -> bool {
            let lo = self.partial[r] + self.rem_lo[r][depth];
            let hi = self.partial[r] + self.rem_hi[r][depth];
            let rhs = self.rows[r].rhs;
            match self.rows[r].relation {
                Relation::Le => lo <= rhs,
                Relation::Eq => lo <= rhs && rhs <= hi,
            }
        }

        fn go(&mut self, depth: usize) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded { budget: self.max_nodes });
            }
            if depth == self.point.len() {
                return Ok(true);
            }
            for value in 0..=self.upper[depth] {
                for &(r, a) in &self.touching[depth] {
                    self.partial[r] += a * value;
                }
                self.point[depth] = value;
                let ok = self.touching[depth].iter().all(|&(r, _)| self.row_ok(r, depth + 1));
                let found = ok && self.go(depth + 1)?;
                for &(r, a) in &self.touching[depth] {
                    self.partial[r] -= a * value;
                }
                if found {
                    return Ok(true);
                }
            }
            self.point[depth] = 0;
            Ok(false)
        }
    }

    let mut dfs = Dfs {
        rows,
        upper,
        touching,
        rem_lo,
        rem_hi,
        partial: vec![0; rows.len()],
        point: vec![0; n],
        nodes: 0,
        max_nodes,
    };
    if !(0..rows.len()).all(|r| dfs.row_ok(r, 0)) {
        return Ok(None);
    }
    Ok(dfs.go(0)?.then_some(dfs.point))
}

/// Upper bound `mu_k` for every coordinate carrying label `k`.
pub fn coordinate_bounds(mu: &Partition, nu: &Partition) -> Vec<i64> {
    let mut upper = Vec::with_capacity(2 * mu.len() * nu.len());
    for k in 1..=mu.len() {
        for _ in 0..2 * nu.len() {
            upper.push(i64::from(mu.part(k)));
        }
    }
    upper
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Also search for an integer point and build the tableau `T*`.
    pub witness: bool,
    pub max_nodes: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            witness: true,
            max_nodes: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingVerdict {
    pub vanishes: bool,
    /// A rational point of the polytope when it is nonempty.
    pub rational_point: Option<Vec<BigRational>>,
    pub integer_point: Option<Vec<i64>>,
    pub witness: Option<EdgeLabeledTableau>,
    /// The witness search ran out of nodes; the verdict still stands.
    pub witness_budget_exceeded: bool,
}

/// Vanishing decided by rational feasibility, with a witness tableau when
/// an integer point turns up within the default budget.
pub fn decide_vanishing(lambda: &Partition, mu: &Partition, nu: &Partition) -> VanishingVerdict {
    decide_vanishing_with(lambda, mu, nu, DecideOptions::default())
}

pub fn decide_vanishing_with(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    options: DecideOptions,
) -> VanishingVerdict {
    let system = build_constraints(lambda, mu, nu);
    let lp = lp::feasible(&system.to_linear_system());
    let mut verdict = VanishingVerdict {
        vanishes: !lp.feasible,
        rational_point: lp.point,
        integer_point: None,
        witness: None,
        witness_budget_exceeded: false,
    };
    if verdict.vanishes || !options.witness {
        return verdict;
    }
    let rational = verdict.rational_point.as_ref().expect("feasible systems carry a point");
    let integer = if rational.iter().all(|q| q.is_integer()) {
        Some(rational.iter().map(|q| i64::try_from(q.to_integer()).expect("coordinates are bounded by mu")).collect())
    } else {
        match find_integer_point(&system, &coordinate_bounds(mu, nu), options.max_nodes) {
            Ok(p) => p,
            Err(Error::BudgetExceeded { .. }) => {
                verdict.witness_budget_exceeded = true;
                None
            }
            Err(e) => panic!("integer search failed: {e}"),
        }
    };
    if let Some(point) = integer {
        let stats = RowStatistics::from_vector(nu.len(), mu.len(), &point).expect("point has the system's dimension");
        verdict.witness = Some(tableau::reconstruct_witness(&stats, lambda, mu, nu).expect("integer points of the polytope give valid tableaux"));
        verdict.integer_point = Some(point);
    }
    verdict
}

/// Whether the classical coefficient vanishes. It can only be nonzero when
/// `|lambda| + |mu| = |nu|`, and then it equals the (constant) polynomial.
pub fn decide_classical_vanishing(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    if lambda.size() + mu.size() != nu.size() {
        return true;
    }
    decide_vanishing_with(
        lambda,
        mu,
        nu,
        DecideOptions {
            witness: false,
            ..DecideOptions::default()
        },
    )
    .vanishes
}
