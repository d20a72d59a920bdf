//! Poset matrices: 0/1 matrices of finite partial orders, stored in a
//! linear extension so that they are lower-triangular.
//!
//! `rel[y][z] = 1` means element `z` lies below element `y`. The crate
//! validates matrices, builds larger ones with three partial composition
//! operations, computes canonical forms, and enumerates isomorphism classes
//! both exhaustively and by closing the order-2 generators under
//! composition.
//!
//! ```
//! use posetmat::{compose_square, PosetMatrix};
//!
//! let a = PosetMatrix::from_row_str("1000;1100;1110;1101")?;
//! let c2 = PosetMatrix::chain(2)?;
//! let out = compose_square(&a, 2, &c2)?;
//! assert!(out.is_valid());
//! assert_eq!(out.matrix.row_string(), "10000;11000;11100;11110;11101");
//! # Ok::<(), posetmat::Error>(())
//! ```

pub mod canon;
pub mod compose;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod poset;

pub use canon::{are_isomorphic, canonical_form, invariant_triples, CanonicalKey};
pub use compose::{
    compose, compose_square, compose_tri_down, compose_tri_up, CompositionKind, CompositionResult,
};
pub use constructions::{run_order5_table, CONNECTED_ORDER4, DISCONNECTED_ORDER4, ORDER5_TABLE};
pub use enumerate::{
    composition_closure, count_table, enumerate_by_composition, enumerate_oracle, with_workers,
    CatalogEntry, ClassCatalog, CountRow, CountTable, Method, Methods, KNOWN_COUNTS,
};
pub use error::{Error, Result, Span};
pub use poset::{
    closure_from_edges, dual, hasse_edges, induced_subposet, is_connected, maximal_elements,
    minimal_elements, normalize_linear_extension, validate_axioms, Axiom, LabelSet, PosetMatrix,
    RelationTable, ValidationReport, Violation, MAX_ORDER,
};
