//! Factorial Schur polynomials from plus diagrams, and the expansion of a
//! product of two of them in the factorial Schur basis.
//!
//! This is the brute-force ground truth for the Littlewood-Richardson
//! polynomials; it shares no code with the tableau or polytope side.
//!
//! A plus diagram lives in an `n × m` grid. Starting from the partition
//! drawn in the north-west corner, a local move slides a `+` from the NW
//! corner of an otherwise empty 2×2 square to its SE corner. The factorial
//! Schur polynomial is the sum over all reachable diagrams of the product of
//! `x_i - y_j` over the `+` positions `(i, j)`.
//!
//! Products are expanded on the dominant monomials only: a polynomial that
//! is symmetric in `x_1..x_n` is determined by its coefficients (polynomials
//! in `y`) at the monomials `x^a` with `a` weakly decreasing.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};


use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{Monomial, Poly, Var};
use crate::ypoly::{YPoly, MAX_Y};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlusDiagram {
    /// Bit `j - 1` of `rows[i - 1]` marks a `+` at row `i`, column `j`.
    rows: Vec<u64>,
    cols: usize,
}

impl PlusDiagram {
    /// `lambda` drawn in the north-west corner of an `n × m` grid.
    pub fn initial(lambda: &Partition, n: usize, m: usize) -> Result<Self> {
        if lambda.len() > n {
            return Err(Error::Precondition(format!("({lambda}) has more than {n} rows")));
        }
        let needed = (n + lambda.first() as usize).saturating_sub(1);
        if m < needed || m == 0 {
            return Err(Error::Precondition(format!(
                "grid needs at least {needed} columns for ({lambda}) in {n} rows, got {m}"
            )));
        }
        if m > 64 {
            return Err(Error::Precondition("grids wider than 64 columns are not supported".into()));
        }
        let rows = (1..=n).map(|i| (1u64 << lambda.part(i)) - 1).collect();
        Ok(Self { rows, cols: m })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Whether there is a `+` at row `i`, column `j` (1-based).
    pub fn has_plus(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.rows.len() && j <= self.cols && self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    /// `+` positions in row-major order, 1-based.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &mask) in self.rows.iter().enumerate() {
            for j in 0..self.cols {
                if mask >> j & 1 == 1 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn num_pluses(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Diagrams one local move away, in row-major order of the moved `+`.
    fn moves(&self) -> Vec<PlusDiagram> {
        let mut out = Vec::new();
        for i in 0..self.rows.len().saturating_sub(1) {
            for j in 0..self.cols.saturating_sub(1) {
                let here = 1u64 << j;
                let right = 1u64 << (j + 1);
                if self.rows[i] & here != 0
                    && self.rows[i] & right == 0
                    && self.rows[i + 1] & (here | right) == 0
                {
                    let mut next = self.clone();
                    next.rows[i] &= !here;
                    next.rows[i + 1] |= right;
                    out.push(next);
                }
            }
        }
        out
    }
}

/// Breadth-first closure of the initial diagram under local moves.
pub fn enumerate_plus_diagrams(lambda: &Partition, n: usize, m: usize) -> Result<Vec<PlusDiagram>> {
    let start = PlusDiagram::initial(lambda, n, m)?;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        for next in d.moves() {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(d);
    }
    Ok(out)
}

/// `x_1^{a_1} ... x_n^{a_n}` with `a_i` the number of `+` in row `i`.
pub fn weight_x(d: &PlusDiagram) -> Poly {
    let exps = d
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| (Var::X(i as u16 + 1), r.count_ones()))
        .collect();
    Poly::term(1, Monomial::from_exponents(exps))
}

/// Product of `x_i - y_j` over the `+` positions.
pub fn weight_xy(d: &PlusDiagram) -> Poly {
    d.positions().into_iter().fold(Poly::one(), |acc, (i, j)| {
        &acc * &(&Poly::x(i as u16) - &Poly::y(j as u16))
    })
}

fn minimal_grid(lambda: &Partition, n: usize) -> usize {
    (n + lambda.first() as usize).saturating_sub(1).max(1)
}

/// `s_lambda(x_1..x_n; Y)` as a full polynomial in `x` and `y`.
pub fn factorial_schur(lambda: &Partition, n: usize) -> Result<Poly> {
    let mut out = Poly::zero();
    for d in enumerate_plus_diagrams(lambda, n, minimal_grid(lambda, n))? {
        out += &weight_xy(&d);
    }
    Ok(out)
}

/// `s_lambda(x_1..x_n)` as the sum of the `x` weights of the same diagrams.
pub fn schur(lambda: &Partition, n: usize) -> Result<Poly> {
    let mut out = Poly::zero();
    for d in enumerate_plus_diagrams(lambda, n, minimal_grid(lambda, n))? {
        out += &weight_x(&d);
    }
    Ok(out)
}

/// A polynomial symmetric in `x_1..x_n`, stored as its coefficients at
/// dominant monomials. Keys are weakly decreasing exponent vectors of
/// length `n`; values are polynomials in the `y` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominantTerms {
    n: usize,
    terms: BTreeMap<Vec<u32>, YPoly>,
}

impl DominantTerms {
    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn keys(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^key` as a polynomial in `y`.
    pub fn coefficient(&self, key: &[u32]) -> Poly {
        self.terms.get(key).map(YPoly::to_poly).unwrap_or_default()
    }

    fn slot(&mut self, key: &[u32]) -> &mut YPoly {
        if !self.terms.contains_key(key) {
            self.terms.insert(key.to_vec(), YPoly::zero());
        }
        self.terms.get_mut(key).expect("just inserted")
    }

    fn prune(&mut self, key: &[u32]) {
        if self.terms.get(key).is_some_and(YPoly::is_zero) {
            self.terms.remove(key);
        }
    }

    /// Coefficient at an arbitrary exponent vector, by symmetry.
    fn coefficient_at(&self, exps: &[u32], scratch: &mut Vec<u32>) -> Option<&YPoly> {
        scratch.clear();
        scratch.extend_from_slice(exps);
        scratch.sort_unstable_by(|a, b| b.cmp(a));
        self.terms.get(scratch.as_slice())
    }

    /// Dominant part of `s_lambda(X; Y)`, or of `s_lambda(X)` when
    /// `equivariant` is false.
    pub fn of_schur(lambda: &Partition, n: usize, equivariant: bool) -> Result<Self> {
        let m = minimal_grid(lambda, n);
        if equivariant && m > MAX_Y {
            return Err(Error::Precondition(format!("more than {MAX_Y} y variables needed")));
        }
        let mut out = DominantTerms {
            n,
            terms: BTreeMap::new(),
        };
        let diagrams = enumerate_plus_diagrams(lambda, n, m)?;
        if !equivariant {
            for d in diagrams {
                let key: Vec<u32> = d.rows.iter().map(|r| r.count_ones()).collect();
                if key.windows(2).all(|w| w[0] >= w[1]) {
                    out.slot(&key).add_assign(&YPoly::one());
                    out.prune(&key);
                }
            }
            return Ok(out);
        }
        let mut rows: Vec<Vec<u64>> = diagrams.into_iter().map(|d| d.rows).collect();
        rows.sort_unstable();
        let mut walk = DominantWalk {
            elementary: HashMap::new(),
            key: Vec::with_capacity(n),
            out: &mut out,
        };
        walk.visit(&rows, 0, u32::MAX, &YPoly::one());
        Ok(out)
    }

    /// Product of two symmetric polynomials in the same `x` variables.
    pub fn mul(&self, other: &DominantTerms) -> DominantTerms {
        assert_eq!(self.n, other.n, "different numbers of x variables");
        let n = self.n;
        let mut candidates = HashSet::new();
        for a in self.terms.keys() {
            for b in other.terms.keys() {
                for perm in distinct_permutations(b) {
                    let mut sum: Vec<u32> = a.iter().zip(&perm).map(|(x, y)| x + y).collect();
                    sum.sort_unstable_by(|x, y| y.cmp(x));
                    candidates.insert(sum);
                }
            }
        }
        let mut out = DominantTerms {
            n,
            terms: BTreeMap::new(),
        };
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        for alpha in candidates {
            let mut coeff = YPoly::zero();
            let mut beta = vec![0u32; n];
            let mut gamma = alpha.clone();
            loop {
                if let (Some(p), Some(q)) = (
                    self.coefficient_at(&beta, &mut s1),
                    other.coefficient_at(&gamma, &mut s2),
                ) {
                    coeff.add_product(p, q, 1);
                }
                // Odometer over 0 <= beta <= alpha, with gamma = alpha - beta.
                let mut pos = 0;
                while pos < n && beta[pos] == alpha[pos] {
                    beta[pos] = 0;
                    gamma[pos] = alpha[pos];
                    pos += 1;
                }
                if pos == n {
                    break;
                }
                beta[pos] += 1;
                gamma[pos] -= 1;
            }
            if !coeff.is_zero() {
                out.terms.insert(alpha, coeff);
            }
        }
        out
    }

    /// Key of largest total degree, lexicographically largest among those.
    fn leading_key(&self) -> Option<Vec<u32>> {
        self.terms
            .keys()
            .max_by(|a, b| {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            })
            .cloned()
    }
}

/// Row `i` with columns `J` contributes `Σ_a x_i^a (-1)^{|J|-a} e_{|J|-a}(y_J)`;
/// only weakly decreasing choices of `a` are kept. Diagrams are sorted so
/// that those sharing leading rows share the partial products.
struct DominantWalk<'a> {
    elementary: HashMap<u64, Vec<YPoly>>,
    key: Vec<u32>,
    out: &'a mut DominantTerms,
}

impl DominantWalk<'_> {
    fn visit(&mut self, group: &[Vec<u64>], depth: usize, cap: u32, acc: &YPoly) {
        if depth == self.out.n {
            let key = self.key.clone();
            let mult = i128::try_from(group.len()).expect("diagram count");
            self.out.slot(&key).add_product(acc, &YPoly::constant(mult), 1);
            self.out.prune(&key);
            return;
        }
        let mut start = 0;
        while start < group.len() {
            let mask = group[start][depth];
            let end = start + group[start..].iter().take_while(|r| r[depth] == mask).count();
            let e = self
                .elementary
                .entry(mask)
                .or_insert_with(|| elementary_symmetric(mask))
                .clone();
            let count = mask.count_ones();
            for a in (0..=count.min(cap)).rev() {
                let d = (count - a) as usize;
                let sign = if d % 2 == 1 { -1 } else { 1 };
                let mut term = YPoly::zero();
                term.add_product(acc, &e[d], sign);
                if term.is_zero() {
                    continue;
                }
                self.key.push(a);
                self.visit(&group[start..end], depth + 1, a, &term);
                self.key.pop();
            }
            start = end;
        }
    }
}

fn elementary_symmetric(mask: u64) -> Vec<YPoly> {
    let mut e = vec![YPoly::one()];
    for j in 0..64 {
        if mask >> j & 1 == 0 {
            continue;
        }
        let y = YPoly::y(j + 1);
        let mut next = e.clone();
        next.push(YPoly::zero());
        for d in 0..e.len() {
            next[d + 1].add_product(&e[d], &y, 1);
        }
        e = next;
    }
    e
}

fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Next lexicographic permutation until exhausted.
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Expands products in a fixed number of x variables, caching the basis
/// elements between calls.
#[derive(Debug)]
pub struct Expander {
    n: usize,
    equivariant: bool,
    basis: HashMap<Vec<u32>, DominantTerms>,
}

impl Expander {
    /// Factorial Schur expansions in `n` x variables.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            equivariant: true,
            basis: HashMap::new(),
        }
    }

    /// Classical Schur expansions (`y = 0`) in `n` x variables.
    pub fn classical(n: usize) -> Self {
        Self {
            equivariant: false,
            ..Self::new(n)
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    fn basis(&mut self, key: &[u32]) -> Result<&DominantTerms> {
        if !self.basis.contains_key(key) {
            let nu = Partition::new(key.to_vec())?;
            let b = DominantTerms::of_schur(&nu, self.n, self.equivariant)?;
            if !b.terms.get(key).is_some_and(YPoly::is_one) {
                return Err(Error::Internal(format!("s_({nu}) does not lead with x^({nu})")));
            }
            self.basis.insert(key.to_vec(), b);
        }
        Ok(&self.basis[key])
    }

    /// `s_lambda s_mu = Σ_nu C_nu s_nu` over the `nu` with at most `n`
    /// rows. Only the factors need to fit in `n` rows.
    pub fn expand(&mut self, lambda: &Partition, mu: &Partition) -> Result<BTreeMap<Partition, Poly>> {
        if lambda.len().max(mu.len()) > self.n {
            return Err(Error::Precondition(format!(
                "({lambda}) and ({mu}) do not fit in {} rows",
                self.n
            )));
        }
        let a = self.basis(&lambda.padded(self.n))?.clone();
        let b = self.basis(&mu.padded(self.n))?;
        let mut rem = a.mul(b);
        let mut out = BTreeMap::new();
        while let Some(lead) = rem.leading_key() {
            let coeff = rem.terms[&lead].clone();
            for (key, c) in &self.basis(&lead)?.terms {
                rem.slot(key).add_product(c, &coeff, -1);
                rem.prune(key);
            }
            if rem.terms.contains_key(&lead) {
                return Err(Error::Internal(format!("elimination at {lead:?} left a remainder")));
            }
            out.insert(Partition::new(lead)?, coeff.to_poly());
        }
        Ok(out)
    }
}

fn check_rows(lambda: &Partition, mu: &Partition, n: usize) -> Result<()> {
    if n < lambda.len() + mu.len() {
        return Err(Error::Precondition(format!(
            "need at least {} x variables for ({lambda}) and ({mu}), got {n}",
            lambda.len() + mu.len()
        )));
    }
    Ok(())
}

/// `s_lambda(X;Y) s_mu(X;Y) = Σ_nu C_nu(Y) s_nu(X;Y)` in `n` x variables.
/// Returns exactly the `nu` with nonzero coefficient.
pub fn expand_product(lambda: &Partition, mu: &Partition, n: usize) -> Result<BTreeMap<Partition, Poly>> {
    check_rows(lambda, mu, n)?;
    expand_product_in(lambda, mu, n)
}

/// As [`expand_product`] but only requires each factor to fit in `n` rows;
/// the result then covers the `nu` with at most `n` rows.
pub fn expand_product_in(lambda: &Partition, mu: &Partition, n: usize) -> Result<BTreeMap<Partition, Poly>> {
    Expander::new(n).expand(lambda, mu)
}

/// Classical structure constants `s_lambda s_mu = Σ c_nu s_nu`, by the same
/// elimination with `y = 0`.
pub fn expand_product_classical(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
) -> Result<BTreeMap<Partition, num_bigint::BigInt>> {
    check_rows(lambda, mu, n)?;
    Ok(Expander::classical(n)
        .expand(lambda, mu)?
        .into_iter()
        .map(|(nu, c)| (nu, c.constant_term()))
        .collect())
}

/// Number of x variables used for a single coefficient.
pub fn variables_for(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    (lambda.len() + mu.len()).max(nu.len())
}

/// `C^nu_{lambda,mu}(Y)`, zero when absent from the expansion.
pub fn coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Poly> {
    let n = variables_for(lambda, mu, nu);
    Ok(expand_product(lambda, mu, n)?.remove(nu).unwrap_or_default())
}

pub fn coefficient_is_zero(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<bool> {
    Ok(coefficient(lambda, mu, nu)?.is_zero())
}

/// Whether `p(y_1 + t, y_2 + t, ...) = p(y_1, y_2, ...)`.
pub fn is_shift_invariant(p: &Poly) -> bool {
    let shifted = p.substitute(|v| match v {
        Var::Y(_) => Some(&Poly::var(v) + &Poly::var(Var::Shift)),
        _ => None,
    });
    &shifted == p
}

/// Rewrites a shift-invariant polynomial in `y` in the differences
/// `b_i = y_{i+1} - y_i`, via `y_1 -> 0`, `y_i -> b_1 + ... + b_{i-1}`.
pub fn rewrite_in_beta(p: &Poly) -> Result<Poly> {
    if p.variables().iter().any(|v| !matches!(v, Var::Y(_))) {
        return Err(Error::Precondition("expected a polynomial in the y variables only".into()));
    }
    if !is_shift_invariant(p) {
        return Err(Error::NotShiftInvariant);
    }
    Ok(p.substitute(|v| match v {
        Var::Y(i) => Some((1..i).fold(Poly::zero(), |acc, j| &acc + &Poly::beta(j))),
        _ => None,
    }))
}

/// Graham positivity: shift invariant with a nonnegative expansion in the
/// differences.
pub fn is_graham_positive(p: &Poly) -> bool {
    rewrite_in_beta(p).is_ok_and(|b| b.has_nonnegative_coefficients())
}

/// Shifts every `y` index up by `by`.
pub fn shift_y_indices(p: &Poly, by: u16) -> Poly {
    p.substitute(|v| match v {
        Var::Y(i) => Some(Poly::y(i + by)),
        _ => None,
    })
}
