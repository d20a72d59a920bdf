//! The three partial composition operations `A ∘ᵢ B`.
//!
//! Every operation deletes element `i` of `A` and splices all of `B` into
//! its place. With `n = |A|` and `m = |B|` the output has order `n + m - 1`
//! and its positions are laid out as
//!
//! ```text
//!   A[1..i-1] | B[1..m] | A[i+1..n]
//! ```
//!
//! The three `A` blocks and the `B` block are copied verbatim. The cross
//! block `U` (B-rows over the left A-columns) and `V` (lower A-rows over the
//! B-columns) are filled from row and column `i` of `A`, filtered by the rule
//! of the operation:
//!
//! * [`CompositionKind::Square`]: every element of `B` inherits.
//! * [`CompositionKind::TriUp`]: if `i` is maximal in `A`, only the maximal
//!   elements of `B` inherit; otherwise everything inherits except pairs
//!   whose `B` element and `A` element are both minimal.
//! * [`CompositionKind::TriDown`]: if `i` is minimal in `A`, only the minimal
//!   elements of `B` inherit; otherwise everything inherits except pairs
//!   whose `B` element and `A` element are both maximal.
//!
//! All remaining cells are 0. The assembled table is always validated; the
//! `TriUp`/`TriDown` rules do not guarantee a poset, so an invalid result is
//! reported with its witnesses rather than repaired.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{
    bit, default_labels, iter_bits, validate_axioms, LabelSet, PosetMatrix, RelationTable,
    ValidationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompositionKind {
    /// `□ᵢ`
    Square,
    /// `▲ᵢ`
    TriUp,
    /// `▼ᵢ`
    TriDown,
}

impl CompositionKind {
    pub const ALL: [CompositionKind; 3] = [
        CompositionKind::Square,
        CompositionKind::TriUp,
        CompositionKind::TriDown,
    ];

    /// Operator keyword used in recipes (`sq`, `up`, `dn`).
    pub fn keyword(self) -> &'static str {
        match self {
            CompositionKind::Square => "sq",
            CompositionKind::TriUp => "up",
            CompositionKind::TriDown => "dn",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            CompositionKind::Square => '□',
            CompositionKind::TriUp => '▲',
            CompositionKind::TriDown => '▼',
        }
    }

    /// The kind whose output is dual to this one's under dualized operands.
    pub fn dual(self) -> CompositionKind {
        match self {
            CompositionKind::Square => CompositionKind::Square,
            CompositionKind::TriUp => CompositionKind::TriDown,
            CompositionKind::TriDown => CompositionKind::TriUp,
        }
    }
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for CompositionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sq" => Ok(CompositionKind::Square),
            "up" => Ok(CompositionKind::TriUp),
            "dn" => Ok(CompositionKind::TriDown),
            other => Err(Error::Malformed(format!(
                "unknown composition operator {other:?} (expected sq, up or dn)"
            ))),
        }
    }
}

/// The assembled output of a composition together with its validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub matrix: RelationTable,
    pub report: ValidationReport,
}

impl CompositionResult {
    pub fn is_valid(&self) -> bool {
        self.report.is_poset()
    }

    /// The output as a poset matrix, if it satisfies the axioms.
    pub fn poset(&self) -> Option<PosetMatrix> {
        self.is_valid()
            .then(|| PosetMatrix::from_table_unchecked(self.matrix.clone()))
    }

    pub fn into_poset(self) -> Result<PosetMatrix> {
        if self.is_valid() {
            Ok(PosetMatrix::from_table_unchecked(self.matrix))
        } else {
            Err(Error::Axioms(self.report))
        }
    }

    /// Replaces the provenance labels by `1..n` in storage order.
    pub fn relabeled(mut self) -> Self {
        let (_, rows) = self.matrix.into_parts();
        self.matrix = RelationTable::from_parts_unchecked(default_labels(rows.len()), rows);
        self
    }

    pub(crate) fn from_poset(m: PosetMatrix) -> Self {
        let report = validate_axioms(m.table());
        CompositionResult {
            matrix: m.into_table(),
            report,
        }
    }
}

/// Which cross entries inherit the deleted element's relations.
struct Inheritance {
    kind: CompositionKind,
    deleted_minimal: bool,
    deleted_maximal: bool,
    a_min: LabelSet,
    a_max: LabelSet,
    b_min: LabelSet,
    b_max: LabelSet,
}

impl Inheritance {
    fn new(kind: CompositionKind, a: &PosetMatrix, deleted: usize, b: &PosetMatrix) -> Self {
        let a_min = a.minimal_elements();
        let a_max = a.maximal_elements();
        Inheritance {
            kind,
            deleted_minimal: a_min.contains(deleted),
            deleted_maximal: a_max.contains(deleted),
            a_min,
            a_max,
            b_min: b.minimal_elements(),
            b_max: b.maximal_elements(),
        }
    }

    /// Entry `U[t][z]`: `B` element `t` over `A` element `z` (left of `i`).
    fn below(&self, t: usize, z: usize) -> bool {
        match self.kind {
            CompositionKind::Square => true,
            CompositionKind::TriUp if self.deleted_maximal => self.b_max.contains(t),
            CompositionKind::TriUp => !(self.b_min.contains(t) && self.a_min.contains(z)),
            CompositionKind::TriDown if self.deleted_minimal => self.b_min.contains(t),
            CompositionKind::TriDown => !(self.b_max.contains(t) && self.a_max.contains(z)),
        }
    }

    /// Entry `V[y][t]`: `A` element `y` (right of `i`) over `B` element `t`.
    fn above(&self, y: usize, t: usize) -> bool {
        match self.kind {
            CompositionKind::Square => true,
            CompositionKind::TriUp if self.deleted_maximal => self.b_max.contains(t),
            CompositionKind::TriUp => !(self.a_min.contains(y) && self.b_min.contains(t)),
            CompositionKind::TriDown if self.deleted_minimal => self.b_min.contains(t),
            CompositionKind::TriDown => !(self.a_max.contains(y) && self.b_max.contains(t)),
        }
    }
}

/// Composes `b` into position `position` (1-based) of `a`.
pub fn compose(
    kind: CompositionKind,
    a: &PosetMatrix,
    position: usize,
    b: &PosetMatrix,
) -> Result<CompositionResult> {
    let n = a.order();
    let m = b.order();
    if position == 0 || position > n {
        return Err(Error::PositionOutOfRange { position, order: n });
    }
    let size = n + m - 1;
    if size > crate::poset::MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order: size,
            min: 1,
            max: crate::poset::MAX_ORDER,
        });
    }
    let d = position - 1;
    let rule = Inheritance::new(kind, a, d, b);
    let a_out = |k: usize| if k < d { k } else { k + m - 1 };

    let mut rows = vec![0u64; size];
    // A blocks: upper-left, lower-left and lower-right; never through row/column d.
    for y in (0..n).filter(|&y| y != d) {
        for z in iter_bits(a.row_bits(y)) {
            let copy = (y < d && z < d) || (y > d && z != d);
            if copy {
                rows[a_out(y)] |= bit(a_out(z));
            }
        }
    }
    for t in 0..m {
        rows[d + t] |= b.row_bits(t) << d;
        // U: what lies below the deleted element
        for z in iter_bits(a.row_bits(d) & (bit(d) - 1)) {
            if rule.below(t, z) {
                rows[d + t] |= bit(z);
            }
        }
    }
    // V: what lies above the deleted element
    for y in d + 1..n {
        if a.get(y, d) {
            for t in 0..m {
                if rule.above(y, t) {
                    rows[a_out(y)] |= bit(d + t);
                }
            }
        }
    }

    let labels = provenance_labels(a, d, b);
    let matrix = RelationTable::from_parts_unchecked(labels, rows);
    let report = validate_axioms(&matrix);
    Ok(CompositionResult { matrix, report })
}

pub fn compose_square(
    a: &PosetMatrix,
    position: usize,
    b: &PosetMatrix,
) -> Result<CompositionResult> {
    compose(CompositionKind::Square, a, position, b)
}

pub fn compose_tri_up(
    a: &PosetMatrix,
    position: usize,
    b: &PosetMatrix,
) -> Result<CompositionResult> {
    compose(CompositionKind::TriUp, a, position, b)
}

pub fn compose_tri_down(
    a: &PosetMatrix,
    position: usize,
    b: &PosetMatrix,
) -> Result<CompositionResult> {
    compose(CompositionKind::TriDown, a, position, b)
}

/// `A`'s surviving labels around `B`'s labels. When they clash, `B`'s labels
/// are qualified by the deleted label (`i.b`); if that still clashes the
/// output falls back to `1..n`.
fn provenance_labels(a: &PosetMatrix, d: usize, b: &PosetMatrix) -> Vec<String> {
    let assemble = |b_labels: Vec<String>| -> Vec<String> {
        let mut out: Vec<String> = a.labels()[..d].to_vec();
        out.extend(b_labels);
        out.extend_from_slice(&a.labels()[d + 1..]);
        out
    };
    let distinct = |labels: &[String]| {
        let mut seen = HashSet::with_capacity(labels.len());
        labels.iter().all(|l| seen.insert(l.as_str()))
    };

    let plain = assemble(b.labels().to_vec());
    if distinct(&plain) {
        return plain;
    }
    let deleted = a.label(d);
    let qualified = assemble(
        b.labels()
            .iter()
            .map(|l| format!("{deleted}.{l}"))
            .collect(),
    );
    if distinct(&qualified) {
        return qualified;
    }
    default_labels(plain.len())
}
