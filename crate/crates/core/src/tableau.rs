//! Edge-labeled tableaux of skew shape.
//!
//! Positions use matrix coordinates: box `(i, j)` is row `i`, column `j`,
//! both 1-based. The horizontal edge along the south side of box `(i, j)` is
//! stored under the key `(i, j)` in the edge map and printed as `(i+1/2, j)`.
//! An edge `(i+1/2, j)` is admissible when `inner_{i+1} < j <= outer_i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, SkewShape};
use crate::polytope;

/// A filling of `outer / inner` with one positive label per box and a
/// (possibly empty) set of positive labels on each admissible edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLabeledTableau {
    shape: SkewShape,
    boxes: BTreeMap<(usize, u32), u32>,
    edges: BTreeMap<(usize, u32), BTreeSet<u32>>,
}

impl EdgeLabeledTableau {
    /// Builds a tableau, checking the structural invariants: every box of
    /// the skew shape carries exactly one label, nothing sits outside the
    /// shape, edges are admissible, all labels are positive. Empty edge sets
    /// are dropped.
    pub fn new(
        shape: SkewShape,
        boxes: BTreeMap<(usize, u32), u32>,
        edges: BTreeMap<(usize, u32), BTreeSet<u32>>,
    ) -> Result<Self> {
        for (&(i, j), &label) in &boxes {
            if !shape.has_box(i, j) {
                return Err(Error::MalformedTableau(format!("({i},{j}) is not a box of the skew shape")));
            }
            if label == 0 {
                return Err(Error::MalformedTableau(format!("box ({i},{j}) has label 0")));
            }
        }
        let expected = shape.num_boxes();
        if boxes.len() as u64 != expected {
            return Err(Error::MalformedTableau(format!(
                "{} of {expected} boxes are labeled",
                boxes.len()
            )));
        }
        let mut kept = BTreeMap::new();
        for ((i, j), set) in edges {
            if set.is_empty() {
                continue;
            }
            if !shape.has_edge(i, j) {
                return Err(Error::MalformedTableau(format!(
                    "edge ({i}+1/2,{j}) is not admissible"
                )));
            }
            if set.contains(&0) {
                return Err(Error::MalformedTableau(format!("edge ({i}+1/2,{j}) has label 0")));
            }
            kept.insert((i, j), set);
        }
        Ok(Self {
            shape,
            boxes,
            edges: kept,
        })
    }

    /// The empty filling of `outer / inner`; only valid when the skew shape
    /// has no boxes.
    pub fn empty(outer: Partition, inner: Partition) -> Result<Self> {
        Self::new(SkewShape::new(outer, inner)?, BTreeMap::new(), BTreeMap::new())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn box_label(&self, i: usize, j: u32) -> Option<u32> {
        self.boxes.get(&(i, j)).copied()
    }

    /// Labels on edge `(i+1/2, j)`; empty when none.
    pub fn edge_labels(&self, i: usize, j: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges.get(&(i, j)).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn boxes(&self) -> &BTreeMap<(usize, u32), u32> {
        &self.boxes
    }

    pub fn edges(&self) -> &BTreeMap<(usize, u32), BTreeSet<u32>> {
        &self.edges
    }

    /// Largest label used anywhere, 0 for the empty tableau.
    pub fn max_label(&self) -> u32 {
        let b = self.boxes.values().copied().max().unwrap_or(0);
        let e = self.edges.values().filter_map(|s| s.last().copied()).max().unwrap_or(0);
        b.max(e)
    }

    /// Number of occurrences of each label; index 0 is unused.
    pub fn content(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.max_label() as usize + 1];
        for &l in self.boxes.values() {
            counts[l as usize] += 1;
        }
        for s in self.edges.values() {
            for &l in s {
                counts[l as usize] += 1;
            }
        }
        counts
    }

    /// Column `j` top to bottom: box `(i,j)` if present, then the labels of
    /// edge `(i+1/2,j)` ascending, then row `i+1`, and so on.
    fn column_sequence(&self, j: u32) -> Vec<u32> {
        let mut seq = Vec::new();
        for i in 1..=self.shape.rows() {
            if let Some(l) = self.box_label(i, j) {
                seq.push(l);
            }
            seq.extend(self.edge_labels(i, j));
        }
        seq
    }

    /// Conditions (i)-(iii) plus content `mu`: box labels weakly increase
    /// along rows, every column is strictly increasing, and no label `k`
    /// sits in row `i` or on an edge below row `i` with `i < k`.
    pub fn is_valid(&self, mu: &Partition) -> bool {
        let content = self.content();
        let content_ok = (1..content.len().max(mu.len() + 1)).all(|k| {
            content.get(k).copied().unwrap_or(0) == u64::from(mu.part(k))
        });
        if !content_ok {
            return false;
        }
        for i in 1..=self.shape.rows() {
            let row: Vec<u32> = self.shape.box_columns(i).filter_map(|j| self.box_label(i, j)).collect();
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
        }
        for j in 1..=self.shape.outer().first() {
            if self.column_sequence(j).windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        let box_ok = self.boxes.iter().all(|(&(i, _), &l)| l as usize <= i);
        let edge_ok = self
            .edges
            .iter()
            .all(|(&(i, _), s)| s.iter().all(|&l| l as usize <= i));
        box_ok && edge_ok
    }

    /// Columns right to left, each top to bottom.
    pub fn column_word(&self) -> ReadingWord {
        let mut letters = Vec::new();
        for j in (1..=self.shape.outer().first()).rev() {
            letters.extend(self.column_sequence(j));
        }
        ReadingWord(letters)
    }

    /// Rows top to bottom: boxes of row `i` right to left, then the edges of
    /// row `i+1/2` right to left.
    pub fn row_word(&self) -> ReadingWord {
        let mut letters = Vec::new();
        for i in 1..=self.shape.rows() {
            for j in self.shape.box_columns(i).rev() {
                letters.extend(self.box_label(i, j));
            }
            for j in self.shape.edge_columns(i).rev() {
                letters.extend(self.edge_labels(i, j));
            }
        }
        ReadingWord(letters)
    }

    /// Per-row label counts, dimensioned by the rows of the outer shape and
    /// the largest label present.
    pub fn row_statistics(&self) -> RowStatistics {
        let mut stats = RowStatistics::zeros(self.shape.rows(), self.max_label() as usize);
        for (&(i, _), &l) in &self.boxes {
            *stats.box_mut(l as usize, i) += 1;
        }
        for (&(i, _), set) in &self.edges {
            for &l in set {
                *stats.edge_mut(l as usize, i) += 1;
            }
        }
        stats
    }

    /// Canonical serialization: rows top to bottom; within a row the box
    /// labels, then every admissible edge set, left to right.
    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        let mut key = Vec::new();
        for i in 1..=self.shape.rows() {
            for j in self.shape.box_columns(i) {
                key.push(vec![self.box_label(i, j).unwrap_or(0)]);
            }
            for j in self.shape.edge_columns(i) {
                key.push(self.edge_labels(i, j).collect());
            }
        }
        key
    }

    pub fn to_json(&self) -> TableauJson {
        TableauJson {
            outer: self.shape.outer().parts().to_vec(),
            inner: self.shape.inner().parts().to_vec(),
            boxes: self.boxes.iter().map(|(&(i, j), &l)| (i, j, l)).collect(),
            edges: self
                .edges
                .iter()
                .map(|(&(i, j), s)| (i, j, s.iter().copied().collect()))
                .collect(),
        }
    }

    pub fn from_json(json: &TableauJson) -> Result<Self> {
        let outer = Partition::new(json.outer.clone())?;
        let inner = Partition::new(json.inner.clone())?;
        let mut boxes = BTreeMap::new();
        for &(i, j, l) in &json.boxes {
            if boxes.insert((i, j), l).is_some() {
                return Err(Error::MalformedTableau(format!("box ({i},{j}) listed twice")));
            }
        }
        let mut edges: BTreeMap<(usize, u32), BTreeSet<u32>> = BTreeMap::new();
        for (i, j, labels) in &json.edges {
            let set = edges.entry((*i, *j)).or_default();
            for &l in labels {
                if !set.insert(l) {
                    return Err(Error::MalformedTableau(format!(
                        "label {l} repeated on edge ({i}+1/2,{j})"
                    )));
                }
            }
        }
        Self::new(SkewShape::new(outer, inner)?, boxes, edges)
    }
}

/// Draws the tableau one box row at a time, each followed by a line holding
/// the edge sets beneath it. Inner boxes print as `.`.
impl fmt::Display for EdgeLabeledTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .edges
            .values()
            .map(|s| s.iter().map(|l| l.to_string()).collect::<String>().len())
            .chain(self.boxes.values().map(|l| l.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(1);
        for i in 1..=self.shape.rows() {
            let mut line = String::new();
            for j in 1..=self.shape.outer().part(i) {
                let cell = match self.box_label(i, j) {
                    Some(l) => l.to_string(),
                    None => ".".to_string(),
                };
                line.push_str(&format!("[{cell:>width$}]"));
            }
            writeln!(f, "{line}")?;
            let mut edge_line = String::new();
            let mut any = false;
            for j in 1..=self.shape.outer().part(i) {
                let s: String = self.edge_labels(i, j).map(|l| l.to_string()).collect();
                any |= !s.is_empty();
                edge_line.push_str(&format!(" {s:>width$} "));
            }
            if any {
                writeln!(f, "{}", edge_line.trim_end())?;
            }
        }
        Ok(())
    }
}

/// JSON exchange form. Edge entry `[i, j, labels]` denotes edge `(i+1/2, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub outer: Vec<u32>,
    pub inner: Vec<u32>,
    pub boxes: Vec<(usize, u32, u32)>,
    pub edges: Vec<(usize, u32, Vec<u32>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReadingWord(pub Vec<u32>);

impl ReadingWord {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// The first `len` letters.
    pub fn prefix(&self, len: usize) -> ReadingWord {
        ReadingWord(self.0[..len.min(self.0.len())].to_vec())
    }

    /// Every prefix has at least as many `k` as `k+1`, for every `k`.
    pub fn is_lattice(&self) -> bool {
        is_lattice(&self.0)
    }
}

impl fmt::Display for ReadingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

pub fn is_lattice(word: &[u32]) -> bool {
    let mut counts: Vec<u64> = Vec::new();
    for &letter in word {
        let k = letter as usize;
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
        if k >= 2 && counts[k] > counts[k - 1] {
            return false;
        }
    }
    true
}

/// Label counts per row: `box_count(k, i)` labels `k` in the boxes of row
/// `i`, `edge_count(k, i)` labels `k` on the edges below row `i`.
/// Out-of-range indices read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowStatistics {
    rows: usize,
    labels: usize,
    boxes: Vec<u64>,
    edges: Vec<u64>,
}

impl RowStatistics {
    pub fn zeros(rows: usize, labels: usize) -> Self {
        Self {
            rows,
            labels,
            boxes: vec![0; rows * labels],
            edges: vec![0; rows * labels],
        }
    }

    /// Number of rows, the length of the outer shape.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of distinct labels, the length of the content.
    pub fn labels(&self) -> usize {
        self.labels
    }

    fn slot(&self, k: usize, i: usize) -> Option<usize> {
        (1..=self.labels)
            .contains(&k)
            .then_some(())
            .filter(|_| (1..=self.rows).contains(&i))
            .map(|_| (k - 1) * self.rows + (i - 1))
    }

    pub fn box_count(&self, k: usize, i: usize) -> u64 {
        self.slot(k, i).map_or(0, |s| self.boxes[s])
    }

    pub fn edge_count(&self, k: usize, i: usize) -> u64 {
        self.slot(k, i).map_or(0, |s| self.edges[s])
    }

    pub fn box_mut(&mut self, k: usize, i: usize) -> &mut u64 {
        let s = self.slot(k, i).expect("row statistic index out of range");
        &mut self.boxes[s]
    }

    pub fn edge_mut(&mut self, k: usize, i: usize) -> &mut u64 {
        let s = self.slot(k, i).expect("row statistic index out of range");
        &mut self.edges[s]
    }

    /// Coordinates in polytope variable order: label outer, row inner, box
    /// before edge.
    pub fn to_vector(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(2 * self.rows * self.labels);
        for k in 1..=self.labels {
            for i in 1..=self.rows {
                v.push(self.box_count(k, i) as i64);
                v.push(self.edge_count(k, i) as i64);
            }
        }
        v
    }

    /// Inverse of [`RowStatistics::to_vector`]. Fails on a length mismatch
    /// or a negative coordinate.
    pub fn from_vector(rows: usize, labels: usize, v: &[i64]) -> Result<Self> {
        if v.len() != 2 * rows * labels {
            return Err(Error::DimensionMismatch {
                expected: 2 * rows * labels,
                got: v.len(),
            });
        }
        let mut stats = Self::zeros(rows, labels);
        for k in 1..=labels {
            for i in 1..=rows {
                let idx = polytope::var_index(rows, k, i, polytope::Slot::Box);
                let (b, e) = (v[idx], v[idx + 1]);
                if b < 0 || e < 0 {
                    return Err(Error::Precondition(format!("negative row statistic at k={k}, i={i}")));
                }
                *stats.box_mut(k, i) = b as u64;
                *stats.edge_mut(k, i) = e as u64;
            }
        }
        Ok(stats)
    }

    /// Same statistics re-dimensioned; entries outside the new range must be
    /// zero.
    pub fn resized(&self, rows: usize, labels: usize) -> Option<Self> {
        let mut out = Self::zeros(rows, labels);
        for k in 1..=self.labels {
            for i in 1..=self.rows {
                let (b, e) = (self.box_count(k, i), self.edge_count(k, i));
                if b == 0 && e == 0 {
                    continue;
                }
                if k > labels || i > rows {
                    return None;
                }
                *out.box_mut(k, i) = b;
                *out.edge_mut(k, i) = e;
            }
        }
        Some(out)
    }
}

/// Limits for the brute-force tableau search.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_nodes: 10_000_000 }
    }
}

/// All tableaux of shape `nu / lambda` and content `mu` satisfying
/// conditions (i)-(iii), in canonical order. Empty when `lambda ⊄ nu`.
pub fn enumerate_valid_tableaux(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    limits: SearchLimits,
) -> Result<Vec<EdgeLabeledTableau>> {
    if !lambda.is_contained_in(nu) {
        return Ok(Vec::new());
    }
    let shape = SkewShape::new(nu.clone(), lambda.clone())?;
    if mu.size() < shape.num_boxes() {
        return Ok(Vec::new());
    }
    let mut search = Search::new(shape, mu, limits);
    search.run(0)?;
    let mut found = search.found;
    found.sort_by_cached_key(|t| t.canonical_key());
    Ok(found)
}

/// The set of valid tableaux whose column word is lattice, with the default
/// search budget.
pub fn enumerate_tableaux(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<Vec<EdgeLabeledTableau>> {
    enumerate_tableaux_with(lambda, mu, nu, SearchLimits::default())
}

pub fn enumerate_tableaux_with(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    limits: SearchLimits,
) -> Result<Vec<EdgeLabeledTableau>> {
    let mut all = enumerate_valid_tableaux(lambda, mu, nu, limits)?;
    all.retain(|t| t.column_word().is_lattice());
    Ok(all)
}

#[derive(Clone, Copy)]
enum Position {
    Box(usize, u32),
    Edge(usize, u32),
}

struct Search {
    shape: SkewShape,
    positions: Vec<Position>,
    /// Boxes at or after each position index.
    boxes_after: Vec<u64>,
    remaining: Vec<u64>,
    remaining_total: u64,
    /// Last label placed in each column, 1-based.
    last_in_column: Vec<u32>,
    boxes: BTreeMap<(usize, u32), u32>,
    edges: BTreeMap<(usize, u32), BTreeSet<u32>>,
    nodes: u64,
    limits: SearchLimits,
    found: Vec<EdgeLabeledTableau>,
}

impl Search {
    fn new(shape: SkewShape, mu: &Partition, limits: SearchLimits) -> Self {
        let mut positions = Vec::new();
        for i in 1..=shape.rows() {
            positions.extend(shape.box_columns(i).map(|j| Position::Box(i, j)));
            positions.extend(shape.edge_columns(i).map(|j| Position::Edge(i, j)));
        }
        let mut boxes_after = vec![0u64; positions.len() + 1];
        for idx in (0..positions.len()).rev() {
            boxes_after[idx] = boxes_after[idx + 1] + matches!(positions[idx], Position::Box(..)) as u64;
        }
        let remaining: Vec<u64> = std::iter::once(0)
            .chain(mu.parts().iter().map(|&m| u64::from(m)))
            .collect();
        let cols = shape.outer().first() as usize;
        Self {
            shape,
            positions,
            boxes_after,
            remaining_total: mu.size(),
            remaining,
            last_in_column: vec![0; cols + 1],
            boxes: BTreeMap::new(),
            edges: BTreeMap::new(),
            nodes: 0,
            limits,
            found: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: self.limits.max_nodes,
            });
        }
        Ok(())
    }

    fn labels(&self) -> u32 {
        (self.remaining.len() - 1) as u32
    }

    fn run(&mut self, idx: usize) -> Result<()> {
        self.tick()?;
        if self.remaining_total < self.boxes_after[idx] {
            return Ok(());
        }
        let Some(&pos) = self.positions.get(idx) else {
            if self.remaining_total == 0 {
                let t = EdgeLabeledTableau {
                    shape: self.shape.clone(),
                    boxes: self.boxes.clone(),
                    edges: self.edges.clone(),
                };
                self.found.push(t);
            }
            return Ok(());
        };
        match pos {
            Position::Box(i, j) => {
                let above = self.last_in_column[j as usize];
                let left = if j > 1 { self.boxes.get(&(i, j - 1)).copied().unwrap_or(0) } else { 0 };
                let lo = (above + 1).max(left).max(1);
                let hi = self.labels().min(i as u32);
                for label in lo..=hi {
                    if self.remaining[label as usize] == 0 {
                        continue;
                    }
                    self.take(label);
                    self.boxes.insert((i, j), label);
                    self.last_in_column[j as usize] = label;
                    let r = self.run(idx + 1);
                    self.last_in_column[j as usize] = above;
                    self.boxes.remove(&(i, j));
                    self.give(label);
                    r?;
                }
            }
            Position::Edge(i, j) => {
                let above = self.last_in_column[j as usize];
                let hi = self.labels().min(i as u32);
                let candidates: Vec<u32> = (above + 1..=hi).filter(|&l| self.remaining[l as usize] > 0).collect();
                let mut chosen = Vec::new();
                self.edge_subsets(idx, i, j, above, &candidates, 0, &mut chosen)?;
            }
        }
        Ok(())
    }

    /// Enumerates subsets of `candidates[from..]` in lexicographic order of
    /// their ascending listings, the empty set first.
    #[allow(clippy::too_many_arguments)]
    fn edge_subsets(
        &mut self,
        idx: usize,
        i: usize,
        j: u32,
        above: u32,
        candidates: &[u32],
        from: usize,
        chosen: &mut Vec<u32>,
    ) -> Result<()> {
        if chosen.is_empty() {
            self.run(idx + 1)?;
        } else {
            self.edges.insert((i, j), chosen.iter().copied().collect());
            self.last_in_column[j as usize] = *chosen.last().unwrap();
            let r = self.run(idx + 1);
            self.last_in_column[j as usize] = above;
            self.edges.remove(&(i, j));
            r?;
        }
        for c in from..candidates.len() {
            let label = candidates[c];
            chosen.push(label);
            self.take(label);
            let r = self.edge_subsets(idx, i, j, above, candidates, c + 1, chosen);
            self.give(label);
            chosen.pop();
            r?;
        }
        Ok(())
    }

    fn take(&mut self, label: u32) {
        self.remaining[label as usize] -= 1;
        self.remaining_total -= 1;
    }

    fn give(&mut self, label: u32) {
        self.remaining[label as usize] += 1;
        self.remaining_total += 1;
    }
}

/// Builds the tableau `T*` from an integer point of the polytope: row `i`
/// gets its box labels in weakly increasing order, and the `k`s of edge row
/// `i+1/2` occupy the columns ending at `lambda_i + sum_{k'<k} r^i_{k'}`,
/// packed to the right.
pub fn reconstruct_witness(
    stats: &RowStatistics,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<EdgeLabeledTableau> {
    let stats = stats
        .resized(nu.len(), mu.len())
        .ok_or_else(|| Error::Precondition("row statistics exceed the dimensions of nu and mu".into()))?;
    let system = polytope::build_constraints(lambda, mu, nu);
    let report = system.check_point(&stats.to_vector())?;
    if let Some(v) = report.violations.first() {
        return Err(Error::Precondition(format!(
            "row statistics are not a point of the polytope: {} violated",
            v.tag
        )));
    }
    let shape = SkewShape::new(nu.clone(), lambda.clone())?;
    let mut boxes = BTreeMap::new();
    let mut edges: BTreeMap<(usize, u32), BTreeSet<u32>> = BTreeMap::new();
    for i in 1..=nu.len() {
        let mut col = lambda.part(i);
        for k in 1..=mu.len() {
            // `col` is lambda_i plus the boxes of row i holding labels below k.
            let edge_count = stats.edge_count(k, i) as u32;
            if edge_count > col {
                return Err(Error::Internal(format!("edge labels {k} of row {i} run past column 1")));
            }
            for j in col - edge_count + 1..=col {
                if !shape.has_edge(i, j) {
                    return Err(Error::Internal(format!("edge ({i}+1/2,{j}) is not admissible")));
                }
                edges.entry((i, j)).or_default().insert(k as u32);
            }
            for _ in 0..stats.box_count(k, i) {
                col += 1;
                boxes.insert((i, col), k as u32);
            }
        }
    }
    EdgeLabeledTableau::new(shape, boxes, edges)
}
