//! Shared test helpers: a Fourier-Motzkin feasibility oracle and the census
//! ranges.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lrvanish::lp::{LinearSystem, Relation};
use lrvanish::Partition;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `a·x <= b`.
type Row = (Vec<BigRational>, BigRational);

/// Rational feasibility by substituting out the equalities and then
/// eliminating variables one at a time.
pub fn fm_feasible(sys: &LinearSystem) -> bool {
    let n = sys.num_vars;
    let mut eqs: Vec<Row> = Vec::new();
    let mut ineqs: Vec<Row> = Vec::new();
    for c in &sys.constraints {
        let mut a = vec![BigRational::zero(); n];
        for (v, coeff) in &c.coeffs {
            a[*v] += BigRational::from_integer(coeff.clone());
        }
        let row = (a, BigRational::from_integer(c.rhs.clone()));
        match c.relation {
            Relation::Le => ineqs.push(row),
            Relation::Eq => eqs.push(row),
        }
    }
    while let Some((a, b)) = eqs.pop() {
        let Some(j) = a.iter().position(|v| !v.is_zero()) else {
            if !b.is_zero() {
                return false;
            }
            continue;
        };
        for (ra, rb) in eqs.iter_mut().chain(ineqs.iter_mut()) {
            if ra[j].is_zero() {
                continue;
            }
            let f = &ra[j] / &a[j];
            for (x, y) in ra.iter_mut().zip(&a) {
                *x -= &f * y;
            }
            *rb -= &f * &b;
        }
    }
    let mut rows = tighten(ineqs);
    loop {
        if rows.iter().any(|(a, b)| a.iter().all(Zero::is_zero) && b.is_negative()) {
            return false;
        }
        rows.retain(|(a, _)| a.iter().any(|v| !v.is_zero()));
        // Eliminate the variable producing the fewest new rows.
        let best = (0..n)
            .filter_map(|j| {
                let pos = rows.iter().filter(|(a, _)| a[j].is_positive()).count();
                let neg = rows.iter().filter(|(a, _)| a[j].is_negative()).count();
                (pos + neg > 0).then(|| (pos * neg, j))
            })
            .min();
        let Some((_, j)) = best else {
            return true;
        };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[j].is_positive() {
                pos.push(r);
            } else if r.0[j].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (fp, fn_) = (-&na[j], pa[j].clone());
                let a: Vec<BigRational> = pa.iter().zip(na).map(|(x, y)| x * &fp + y * &fn_).collect();
                rest.push((a, pb * &fp + nb * &fn_));
            }
        }
        rows = tighten(rest);
    }
}

/// Scales every row so its first nonzero coefficient is ±1 and keeps only
/// the tightest right-hand side per direction.
fn tighten(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<BigRational>, BigRational> = BTreeMap::new();
    let mut out = Vec::new();
    for (a, b) in rows {
        let Some(lead) = a.iter().find(|v| !v.is_zero()).map(|v| v.abs()) else {
            out.push((a, b));
            continue;
        };
        let a: Vec<BigRational> = a.iter().map(|v| v / &lead).collect();
        let b = b / &lead;
        best.entry(a)
            .and_modify(|cur| {
                if b < *cur {
                    *cur = b.clone();
                }
            })
            .or_insert(b);
    }
    out.extend(best);
    out
}

/// The 20 partitions inside a 3×3 box.
pub fn box_partitions() -> Vec<Partition> {
    Partition::in_box(3, 3)
}

/// The 12 partitions of size at most 4.
pub fn small_partitions() -> Vec<Partition> {
    Partition::up_to_size(4)
}

/// Every census triple `(lambda, mu, nu)`.
pub fn census_triples() -> Vec<(Partition, Partition, Partition)> {
    let boxed = box_partitions();
    let mut out = Vec::new();
    for lambda in &boxed {
        for mu in small_partitions() {
            for nu in &boxed {
                out.push((lambda.clone(), mu.clone(), nu.clone()));
            }
        }
    }
    out
}

pub fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("test partition")
}
