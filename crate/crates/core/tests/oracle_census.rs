mod common;

use std::collections::BTreeMap;

use common::{box_partitions, p, small_partitions};
use lrvanish::poly::{Poly, Var};
use lrvanish::schur::{
    enumerate_plus_diagrams, factorial_schur, schur, shift_y_indices, weight_x, weight_xy, Expander,
};
use lrvanish::Partition;

fn census_pairs() -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for lambda in box_partitions() {
        for mu in small_partitions() {
            out.push((lambda.clone(), mu));
        }
    }
    out
}

/// One more x variable shifts every y index by one, so vanishing does not
/// depend on the number of variables. Nonzero coefficients are homogeneous
/// of degree |lambda| + |mu| - |nu|, and the constant ones are classical.
#[test]
fn census_expansions_are_stable_and_graded() {
    let mut expanders: BTreeMap<usize, Expander> = BTreeMap::new();
    let mut classical: BTreeMap<usize, Expander> = BTreeMap::new();
    for (lambda, mu) in census_pairs() {
        let n = (lambda.len() + mu.len()).max(1);
        let small = expanders.entry(n).or_insert_with(|| Expander::new(n)).expand(&lambda, &mu).unwrap();
        let large = expanders
            .entry(n + 1)
            .or_insert_with(|| Expander::new(n + 1))
            .expand(&lambda, &mu)
            .unwrap();
        let shifted: BTreeMap<_, _> = small.iter().map(|(nu, c)| (nu.clone(), shift_y_indices(c, 1))).collect();
        assert_eq!(shifted, large, "(({lambda}),({mu})) at n={n}");

        let plain = classical
            .entry(n)
            .or_insert_with(|| Expander::classical(n))
            .expand(&lambda, &mu)
            .unwrap();
        let top = lambda.size() + mu.size();
        for (nu, c) in &small {
            assert!(nu.size() <= top, "(({lambda}),({mu}),({nu}))");
            assert_eq!(c.total_degree(), Some((top - nu.size()) as u32), "(({lambda}),({mu}),({nu}))");
            if nu.size() == top {
                assert_eq!(Some(c), plain.get(nu), "(({lambda}),({mu}),({nu}))");
            }
        }
        assert_eq!(small.iter().filter(|(nu, _)| nu.size() == top).count(), plain.len());
    }
}

#[test]
fn wider_grids_add_no_diagrams() {
    for lambda in box_partitions() {
        for n in lambda.len().max(1)..=4 {
            let m = n + lambda.first() as usize - 1;
            let m = m.max(1);
            let narrow = enumerate_plus_diagrams(&lambda, n, m).unwrap();
            let wide = enumerate_plus_diagrams(&lambda, n, m + 1).unwrap();
            let sum = |ds: &[lrvanish::schur::PlusDiagram]| {
                ds.iter().fold(Poly::zero(), |acc, d| &acc + &weight_xy(d))
            };
            assert_eq!(sum(&narrow), sum(&wide), "({lambda}) n={n}");
        }
    }
}

#[test]
fn specialization_and_symmetry() {
    for lambda in box_partitions() {
        for n in lambda.len().max(1)..=3 {
            let s = factorial_schur(&lambda, n).unwrap();
            let at_zero = s.specialize_zero(|v| matches!(v, Var::Y(_)));
            let m = (n + lambda.first() as usize - 1).max(1);
            let diagrams = enumerate_plus_diagrams(&lambda, n, m).unwrap();
            let classical = diagrams.iter().fold(Poly::zero(), |acc, d| &acc + &weight_x(d));
            assert_eq!(at_zero, classical, "({lambda}) n={n}");
            assert_eq!(schur(&lambda, n).unwrap(), classical);
            for a in 1..n as u16 {
                let swapped = s.substitute(|v| match v {
                    Var::X(i) if i == a => Some(Poly::x(a + 1)),
                    Var::X(i) if i == a + 1 => Some(Poly::x(a)),
                    _ => None,
                });
                assert_eq!(swapped, s, "({lambda}) n={n} swap {a}");
            }
        }
    }
}

#[test]
fn known_small_coefficients() {
    let c = lrvanish::schur::coefficient(&p(&[1]), &p(&[1]), &p(&[1])).unwrap();
    assert_eq!(c.to_string(), "-1*y2 +1*y3");
    assert!(lrvanish::schur::coefficient_is_zero(&p(&[1]), &p(&[1]), &p(&[3])).unwrap());
    assert!(!lrvanish::schur::coefficient_is_zero(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])).unwrap());
    let classical = lrvanish::schur::expand_product_classical(&p(&[2, 1]), &p(&[2, 1]), 4).unwrap();
    assert_eq!(classical[&p(&[3, 2, 1])], 2.into());
}
