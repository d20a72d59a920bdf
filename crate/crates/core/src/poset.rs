//! The poset-matrix value type and its order-theoretic queries.
//!
//! A relation is stored as one bitmask per row: bit `z` of row `y` is set
//! when `z <= y`, so a row lists everything below-or-equal to its element.
//! A [`PosetMatrix`] additionally keeps its positions in a linear extension,
//! which makes the stored table lower-triangular.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order (one `u64` bitmask per row).
pub const MAX_ORDER: usize = 64;

#[inline]
pub(crate) fn bit(k: usize) -> u64 {
    1u64 << k
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

fn check_labels(labels: &[String], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::InvalidLabels(format!(
            "expected {n} labels, found {}",
            labels.len()
        )));
    }
    for (k, label) in labels.iter().enumerate() {
        if label.is_empty()
            || label
                .chars()
                .any(|c| c.is_whitespace() || c == '#' || c == '"')
        {
            return Err(Error::InvalidLabels(format!(
                "label {label:?} is not a plain token"
            )));
        }
        if labels[..k].contains(label) {
            return Err(Error::InvalidLabels(format!("label {label:?} is repeated")));
        }
    }
    Ok(())
}

/// A square 0/1 table with labels, not yet known to be a poset.
///
/// This is the candidate type for [`validate_axioms`] and the raw output of
/// the composition operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationTable {
    labels: Vec<String>,
    rows: Vec<u64>,
}

impl RelationTable {
    /// Builds a table from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("a matrix needs at least one row".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order: n,
                min: 1,
                max: MAX_ORDER,
            });
        }
        let mut bits = Vec::with_capacity(n);
        for (y, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {n}",
                    y + 1,
                    row.len()
                )));
            }
            let mut mask = 0;
            for (z, &entry) in row.iter().enumerate() {
                match entry {
                    0 => {}
                    1 => mask |= bit(z),
                    other => {
                        return Err(Error::Malformed(format!(
                            "entry ({}, {}) is {other}, expected 0 or 1",
                            y + 1,
                            z + 1
                        )))
                    }
                }
            }
            bits.push(mask);
        }
        Ok(RelationTable {
            labels: default_labels(n),
            rows: bits,
        })
    }

    /// Builds a table from row bitmasks (bit `z` of `rows[y]` is entry `(y, z)`).
    pub fn from_bits(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order: n,
                min: 1,
                max: MAX_ORDER,
            });
        }
        if let Some(y) = rows.iter().position(|&r| r & !full_mask(n) != 0) {
            return Err(Error::Malformed(format!(
                "row {} has bits beyond column {n}",
                y + 1
            )));
        }
        Ok(RelationTable {
            labels: default_labels(n),
            rows,
        })
    }

    /// Parses the compact `"100;110;111"` notation.
    pub fn from_row_str(text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|row| {
                row.trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(Error::Malformed(format!("unexpected character {other:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RelationTable::from_rows(&rows)
    }

    pub fn with_labels<S: Into<String>>(
        mut self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels, self.order())?;
        self.labels = labels;
        Ok(self)
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<String>, rows: Vec<u64>) -> Self {
        debug_assert_eq!(labels.len(), rows.len());
        RelationTable { labels, rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, position: usize) -> &str {
        &self.labels[position]
    }

    /// Entry `(y, z)`; `true` means `z <= y`.
    #[inline]
    pub fn get(&self, y: usize, z: usize) -> bool {
        self.rows[y] & bit(z) != 0
    }

    /// Row `y` as a bitmask over columns.
    #[inline]
    pub fn row_bits(&self, y: usize) -> u64 {
        self.rows[y]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.rows
    }

    /// Rows as vectors of 0/1 entries.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        (0..n)
            .map(|y| (0..n).map(|z| self.get(y, z) as u8).collect())
            .collect()
    }

    /// Rows in the compact `"100;110;111"` notation.
    pub fn row_string(&self) -> String {
        let n = self.order();
        let mut out = String::with_capacity(n * (n + 1));
        for y in 0..n {
            if y > 0 {
                out.push(';');
            }
            for z in 0..n {
                out.push(if self.get(y, z) { '1' } else { '0' });
            }
        }
        out
    }

    /// First entry above the diagonal, if any, as `(row, column)`.
    pub fn first_upper_entry(&self) -> Option<(usize, usize)> {
        (0..self.order()).find_map(|y| {
            let above = self.rows[y] & !full_mask(y + 1);
            (above != 0).then(|| (y, above.trailing_zeros() as usize))
        })
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.first_upper_entry().is_none()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_axioms(self)
    }

    pub(crate) fn into_parts(self) -> (Vec<String>, Vec<u64>) {
        (self.labels, self.rows)
    }
}

/// A poset axiom that a candidate table can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Reflexive,
    Antisymmetric,
    Transitive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Reflexive => "reflexivity",
            Axiom::Antisymmetric => "antisymmetry",
            Axiom::Transitive => "transitivity",
        })
    }
}

/// A concrete witness for a violated axiom, in 0-based positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    /// `(k, k)` is 0.
    Reflexive(usize),
    /// Both `(y, z)` and `(z, y)` are 1, with `y < z`.
    Antisymmetric(usize, usize),
    /// `(y, z)` and `(z, w)` are 1 but `(y, w)` is 0.
    Transitive(usize, usize, usize),
}

impl Violation {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::Reflexive(_) => Axiom::Reflexive,
            Violation::Antisymmetric(..) => Axiom::Antisymmetric,
            Violation::Transitive(..) => Axiom::Transitive,
        }
    }
}

impl fmt::Display for Violation {
    // Positions are shown 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Reflexive(k) => write!(f, "reflexivity fails at ({0},{0})", k + 1),
            Violation::Antisymmetric(y, z) => {
                write!(f, "antisymmetry fails at ({},{})", y + 1, z + 1)
            }
            Violation::Transitive(y, z, w) => write!(
                f,
                "transitivity fails at ({},{},{}): {} >= {} and {} >= {} but not {} >= {}",
                y + 1,
                z + 1,
                w + 1,
                y + 1,
                z + 1,
                z + 1,
                w + 1,
                y + 1,
                w + 1
            ),
        }
    }
}

/// Per-axiom outcome of [`validate_axioms`].
///
/// Triangularity is reported separately: it is a storage convention, not a
/// poset axiom, and never contributes to `violations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub reflexive_ok: bool,
    pub antisymmetric_ok: bool,
    pub transitive_ok: bool,
    pub lower_triangular_ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// True when all three axioms hold.
    pub fn is_poset(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self, axiom: Axiom) -> Option<Violation> {
        self.violations.iter().copied().find(|v| v.axiom() == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("all axioms hold");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks reflexivity, antisymmetry and transitivity, collecting every
/// violation with a witness.
pub fn validate_axioms(candidate: &RelationTable) -> ValidationReport {
    let n = candidate.order();
    let mut violations = Vec::new();
    for k in 0..n {
        if !candidate.get(k, k) {
            violations.push(Violation::Reflexive(k));
        }
    }
    for y in 0..n {
        for z in y + 1..n {
            if candidate.get(y, z) && candidate.get(z, y) {
                violations.push(Violation::Antisymmetric(y, z));
            }
        }
    }
    for y in 0..n {
        let row = candidate.row_bits(y) & !bit(y);
        for z in iter_bits(row) {
            // everything below z must also be below y, y itself included
            let missing = candidate.row_bits(z) & !bit(z) & !candidate.row_bits(y);
            for w in iter_bits(missing) {
                violations.push(Violation::Transitive(y, z, w));
            }
        }
    }
    let has = |axiom| violations.iter().any(|v: &Violation| v.axiom() == axiom);
    ValidationReport {
        reflexive_ok: !has(Axiom::Reflexive),
        antisymmetric_ok: !has(Axiom::Antisymmetric),
        transitive_ok: !has(Axiom::Transitive),
        lower_triangular_ok: candidate.is_lower_triangular(),
        violations,
    }
}

/// Iterates set bit positions in ascending order.
pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(k)
        }
    })
}

/// A subset of a matrix's positions, iterated in ascending order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(u64);

impl LabelSet {
    pub fn empty() -> Self {
        LabelSet(0)
    }

    pub fn from_mask(mask: u64) -> Self {
        LabelSet(mask)
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, position: usize) {
        self.0 |= bit(position);
    }

    pub fn contains(&self, position: usize) -> bool {
        position < 64 && self.0 & bit(position) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        iter_bits(self.0)
    }

    /// The labels of the positions, in ascending position order.
    pub fn labels<'a>(&self, matrix: &'a PosetMatrix) -> Vec<&'a str> {
        self.iter().map(|k| matrix.label(k)).collect()
    }
}

impl FromIterator<usize> for LabelSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = LabelSet::empty();
        for k in iter {
            set.insert(k);
        }
        set
    }
}

/// A validated poset matrix stored in a linear extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetMatrix {
    table: RelationTable,
}

impl PosetMatrix {
    /// Validates the axioms and the lower-triangular storage.
    pub fn new(table: RelationTable) -> Result<Self> {
        let report = validate_axioms(&table);
        if !report.is_poset() {
            return Err(Error::Axioms(report));
        }
        if let Some((upper, lower)) = table.first_upper_entry() {
            return Err(Error::NotLowerTriangular { upper, lower });
        }
        Ok(PosetMatrix { table })
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        PosetMatrix::new(RelationTable::from_rows(rows)?)
    }

    /// Parses the compact `"100;110;111"` notation.
    pub fn from_row_str(text: &str) -> Result<Self> {
        PosetMatrix::new(RelationTable::from_row_str(text)?)
    }

    pub(crate) fn from_table_unchecked(table: RelationTable) -> Self {
        debug_assert!(validate_axioms(&table).is_poset() && table.is_lower_triangular());
        PosetMatrix { table }
    }

    /// The chain `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Result<Self> {
        check_order(n)?;
        let rows = (0..n).map(|y| full_mask(y + 1)).collect();
        Ok(PosetMatrix::from_table_unchecked(RelationTable::from_bits(
            rows,
        )?))
    }

    /// The antichain on `n` elements (identity matrix).
    pub fn antichain(n: usize) -> Result<Self> {
        check_order(n)?;
        let rows = (0..n).map(bit).collect();
        Ok(PosetMatrix::from_table_unchecked(RelationTable::from_bits(
            rows,
        )?))
    }

    pub fn point() -> Self {
        PosetMatrix::from_table_unchecked(RelationTable::from_parts_unchecked(
            default_labels(1),
            vec![1],
        ))
    }

    pub fn with_labels<S: Into<String>>(self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        Ok(PosetMatrix {
            table: self.table.with_labels(labels)?,
        })
    }

    /// The same matrix labeled `1..n` in storage order.
    pub fn relabeled(&self) -> Self {
        PosetMatrix {
            table: RelationTable::from_parts_unchecked(
                default_labels(self.order()),
                self.table.rows.clone(),
            ),
        }
    }

    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    pub fn into_table(self) -> RelationTable {
        self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn labels(&self) -> &[String] {
        self.table.labels()
    }

    pub fn label(&self, position: usize) -> &str {
        self.table.label(position)
    }

    pub fn position_of(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    #[inline]
    pub fn get(&self, y: usize, z: usize) -> bool {
        self.table.get(y, z)
    }

    #[inline]
    pub fn row_bits(&self, y: usize) -> u64 {
        self.table.row_bits(y)
    }

    pub fn row_masks(&self) -> &[u64] {
        self.table.row_masks()
    }

    pub fn row_string(&self) -> String {
        self.table.row_string()
    }

    /// Elements strictly below `y`.
    #[inline]
    pub fn strict_down(&self, y: usize) -> u64 {
        self.table.rows[y] & !bit(y)
    }

    /// Elements strictly above `z`.
    pub fn strict_up(&self, z: usize) -> u64 {
        let mut up = 0;
        for y in z + 1..self.order() {
            if self.get(y, z) {
                up |= bit(y);
            }
        }
        up
    }

    pub fn minimal_elements(&self) -> LabelSet {
        minimal_elements(self)
    }

    pub fn maximal_elements(&self) -> LabelSet {
        maximal_elements(self)
    }

    pub fn dual(&self) -> PosetMatrix {
        dual(self)
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self)
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        hasse_edges(self)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::OrderOutOfRange {
            order: n,
            min: 1,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Positions whose row is zero off the diagonal.
pub fn minimal_elements(m: &PosetMatrix) -> LabelSet {
    (0..m.order()).filter(|&y| m.strict_down(y) == 0).collect()
}

/// Positions whose column is zero off the diagonal.
pub fn maximal_elements(m: &PosetMatrix) -> LabelSet {
    let n = m.order();
    let mut has_above = 0u64;
    for y in 0..n {
        has_above |= m.strict_down(y);
    }
    LabelSet::from_mask(full_mask(n) & !has_above)
}

/// The dual poset: transpose composed with index reversal, so the result
/// stays lower-triangular. Labels are reversed along with the positions.
pub fn dual(m: &PosetMatrix) -> PosetMatrix {
    let n = m.order();
    let mut rows = vec![0u64; n];
    for (p, row) in rows.iter_mut().enumerate() {
        for q in 0..n {
            if m.get(n - 1 - q, n - 1 - p) {
                *row |= bit(q);
            }
        }
    }
    let labels = m.labels().iter().rev().cloned().collect();
    PosetMatrix::from_table_unchecked(RelationTable::from_parts_unchecked(labels, rows))
}

/// The principal submatrix on `subset`, keeping the original relative order.
pub fn induced_subposet(m: &PosetMatrix, subset: LabelSet) -> Result<PosetMatrix> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if subset.mask() & !full_mask(m.order()) != 0 {
        let position = 63 - subset.mask().leading_zeros() as usize;
        return Err(Error::PositionOutOfRange {
            position: position + 1,
            order: m.order(),
        });
    }
    let keep: Vec<usize> = subset.iter().collect();
    let rows = keep
        .iter()
        .map(|&y| {
            keep.iter()
                .enumerate()
                .filter(|&(_, &z)| m.get(y, z))
                .fold(0u64, |acc, (k, _)| acc | bit(k))
        })
        .collect();
    let labels = keep.iter().map(|&k| m.label(k).to_string()).collect();
    Ok(PosetMatrix::from_table_unchecked(
        RelationTable::from_parts_unchecked(labels, rows),
    ))
}

/// Whether the comparability graph has a single component.
pub fn is_connected(m: &PosetMatrix) -> bool {
    let n = m.order();
    // undirected neighbourhoods
    let mut adj: Vec<u64> = (0..n).map(|y| m.strict_down(y)).collect();
    for y in 0..n {
        for z in iter_bits(m.strict_down(y)) {
            adj[z] |= bit(y);
        }
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for y in iter_bits(frontier) {
            next |= adj[y];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full_mask(n)
}

/// Covering pairs `(lower, upper)` of the transitive reduction, sorted.
pub fn hasse_edges(m: &PosetMatrix) -> Vec<(usize, usize)> {
    let n = m.order();
    let mut edges = Vec::new();
    for y in 0..n {
        let below = m.strict_down(y);
        let mut indirect = 0;
        for w in iter_bits(below) {
            indirect |= m.strict_down(w);
        }
        for z in iter_bits(below & !indirect) {
            edges.push((z, y));
        }
    }
    edges.sort_unstable();
    edges
}

/// Rebuilds the reflexive-transitive closure from covering pairs
/// `(lower, upper)`. Returns `None` if the closure is not antisymmetric.
pub fn closure_from_edges(n: usize, edges: &[(usize, usize)]) -> Option<RelationTable> {
    if n == 0 || n > MAX_ORDER || edges.iter().any(|&(a, b)| a >= n || b >= n) {
        return None;
    }
    let mut rows: Vec<u64> = (0..n).map(bit).collect();
    for &(lower, upper) in edges {
        rows[upper] |= bit(lower);
    }
    // Warshall on row bitmasks
    for k in 0..n {
        for y in 0..n {
            if rows[y] & bit(k) != 0 {
                rows[y] |= rows[k];
            }
        }
    }
    let table = RelationTable::from_parts_unchecked(default_labels(n), rows);
    validate_axioms(&table).is_poset().then_some(table)
}

/// Permutes a valid candidate into a linear extension.
///
/// Ties are broken by the smallest original position, so an already
/// lower-triangular matrix is returned unchanged.
pub fn normalize_linear_extension(candidate: &RelationTable) -> Result<PosetMatrix> {
    let report = validate_axioms(candidate);
    if !report.is_poset() {
        return Err(Error::Axioms(report));
    }
    let n = candidate.order();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&k| placed & bit(k) == 0 && candidate.row_bits(k) & !bit(k) & !placed == 0)
            .expect("an acyclic relation always has an unplaced minimal element");
        placed |= bit(next);
        order.push(next);
    }
    let rows = order
        .iter()
        .map(|&y| {
            order
                .iter()
                .enumerate()
                .filter(|&(_, &z)| candidate.get(y, z))
                .fold(0u64, |acc, (k, _)| acc | bit(k))
        })
        .collect();
    let labels = order
        .iter()
        .map(|&k| candidate.label(k).to_string())
        .collect();
    Ok(PosetMatrix::from_table_unchecked(
        RelationTable::from_parts_unchecked(labels, rows),
    ))
}

impl fmt::Display for PosetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_string())
    }
}
