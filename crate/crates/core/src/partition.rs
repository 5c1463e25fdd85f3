//! Integer partitions and skew shapes.
//!
//! Parts are 1-indexed in the accessors to match the usual row numbering of
//! Young diagrams; any index past the last nonzero part reads as zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers with trailing zeros
/// stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Validates and normalizes `parts`. Trailing zeros are allowed and
    /// dropped; an increase anywhere is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!(
                "{:?} increases from {} to {}",
                parts, w[0], w[1]
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `part(i)` for 1-based `i`, zero when out of range.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    /// Componentwise containment with zero padding: `self ⊆ outer`.
    pub fn is_contained_in(&self, outer: &Partition) -> bool {
        self.len() <= outer.len() && self.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
    }

    /// Multiplies every part by `factor` (which must be at least 1).
    pub fn scale(&self, factor: u32) -> Partition {
        assert!(factor >= 1, "scale factor must be positive");
        Partition {
            parts: self.parts.iter().map(|&p| p * factor).collect(),
        }
    }

    /// Parts padded with zeros to length `n`. Panics if `n` is too short.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(self.len() <= n, "partition {self} has more than {n} parts");
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }

    /// All partitions fitting in a `rows × cols` box, in lexicographic order
    /// of their padded part vectors.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if cur.len() == rows {
                out.push(Partition::new(cur.clone()).expect("weakly decreasing by construction"));
                return;
            }
            for p in 0..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::with_capacity(rows), &mut out);
        out
    }

    /// All partitions of size at most `max_size`, grouped by size.
    pub fn up_to_size(max_size: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for size in 0..=max_size {
            rec(size, size, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Text form: comma separated, no brackets. The empty partition renders as
/// the empty string.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Parses the comma-separated text form. Whitespace around tokens is
/// ignored; the empty string is the empty partition.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("`{tok}` is not a nonnegative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

/// Rendering in the tuple notation, e.g. `(2,1)` and `()`.
pub fn tuple_string(p: &Partition) -> String {
    format!("({p})")
}

/// The skew shape `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !inner.is_contained_in(&outer) {
            return Err(Error::NotContained {
                inner: inner.to_string(),
                outer: outer.to_string(),
            });
        }
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// Number of rows of the outer shape.
    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Column range (1-based, inclusive) of the boxes of row `i`.
    pub fn box_columns(&self, i: usize) -> std::ops::RangeInclusive<u32> {
        self.inner.part(i) + 1..=self.outer.part(i)
    }

    /// Column range of the admissible horizontal edges below row `i`:
    /// `inner_{i+1} < j ≤ outer_i`.
    pub fn edge_columns(&self, i: usize) -> std::ops::RangeInclusive<u32> {
        self.inner.part(i + 1) + 1..=self.outer.part(i)
    }

    pub fn has_box(&self, i: usize, j: u32) -> bool {
        i >= 1 && self.box_columns(i).contains(&j)
    }

    pub fn has_edge(&self, i: usize, j: u32) -> bool {
        i >= 1 && self.edge_columns(i).contains(&j)
    }

    pub fn num_boxes(&self) -> u64 {
        self.outer.size() - self.inner.size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parse_normalizes_trailing_zeros() {
        assert_eq!(parse_partition("4,2,1,0,0").unwrap(), p(&[4, 2, 1]));
        assert_eq!(parse_partition("").unwrap(), Partition::empty());
        assert_eq!(parse_partition(" 2, 2 ,1").unwrap(), p(&[2, 2, 1]));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_partition("1,2"), Err(Error::NotAPartition(_))));
        assert!(matches!(parse_partition("1,x"), Err(Error::Parse(_))));
        assert!(matches!(parse_partition("-1"), Err(Error::Parse(_))));
        assert!(matches!(parse_partition("1,,1"), Err(Error::Parse(_))));
    }

    #[test]
    fn containment() {
        assert!(p(&[2, 1]).is_contained_in(&p(&[4, 2, 2])));
        assert!(!p(&[3]).is_contained_in(&p(&[2, 2])));
        assert!(Partition::empty().is_contained_in(&p(&[1])));
        assert!(!p(&[1, 1]).is_contained_in(&p(&[1])));
    }

    #[test]
    fn scaling_and_size() {
        assert_eq!(p(&[1, 0]).scale(2), p(&[2]));
        assert_eq!(p(&[2, 2, 1, 1]).scale(3), p(&[6, 6, 3, 3]));
        assert_eq!(Partition::empty().scale(5), Partition::empty());
        assert_eq!(p(&[4, 2, 1]).size(), 7);
        assert_eq!(Partition::empty().size(), 0);
        assert_eq!(p(&[2, 2, 2, 2, 2]).size(), 10);
    }

    #[test]
    fn lengths_count_nonzero_parts() {
        assert_eq!(p(&[2, 2, 1, 1, 0]).len(), 4);
        assert_eq!(p(&[2, 2, 1, 1, 0]).part(5), 0);
        assert_eq!(p(&[2, 2, 1, 1, 0]).part(0), 0);
    }

    #[test]
    fn skew_shape_geometry() {
        let s = SkewShape::new(p(&[2, 2, 2, 2, 2]), p(&[2, 2, 1, 1])).unwrap();
        assert_eq!(s.box_columns(3), 2..=2);
        // Edges below row 4 start above the empty fifth row of the inner shape.
        assert_eq!(s.edge_columns(4), 1..=2);
        assert!(s.edge_columns(1).is_empty());
        assert!(SkewShape::new(p(&[2]), p(&[1, 1])).is_err());
    }

    #[test]
    fn box_enumeration_counts() {
        // C(6,3) partitions fit in a 3x3 box.
        assert_eq!(Partition::in_box(3, 3).len(), 20);
        let small = Partition::up_to_size(4);
        assert_eq!(small.len(), 1 + 1 + 2 + 3 + 5);
        assert_eq!(small[0], Partition::empty());
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0u32..8, 0..6).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(q in arb_partition()) {
            prop_assert_eq!(parse_partition(&q.to_string()).unwrap(), q);
        }

        #[test]
        fn scaling_properties(q in arb_partition(), n in 1u32..6) {
            let scaled = q.scale(n);
            prop_assert!(q.is_contained_in(&scaled));
            prop_assert_eq!(scaled.size(), u64::from(n) * q.size());
        }

        #[test]
        fn containment_is_a_preorder(a in arb_partition(), b in arb_partition(), c in arb_partition()) {
            prop_assert!(a.is_contained_in(&a));
            if a.is_contained_in(&b) && b.is_contained_in(&c) {
                prop_assert!(a.is_contained_in(&c));
            }
        }
    }
}
