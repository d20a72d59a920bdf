//! The explicit order-4 constructions and the order-5 recipe table.
//!
//! Every item records its operands, the operation and the matrix shown for
//! it, so tests can replay each construction bit for bit.

use crate::canon::canonical_form;
use crate::compose::{compose, CompositionKind};
use crate::enumerate::ClassCatalog;
use crate::error::{Error, Result};
use crate::io::recipe::{eval_recipe_str, SymbolTable};
use crate::poset::{is_connected, PosetMatrix};

pub const C2_ROWS: &str = "10;11";
pub const I2_ROWS: &str = "10;01";

pub fn c2() -> PosetMatrix {
    PosetMatrix::chain(2).expect("order 2")
}

pub fn i2() -> PosetMatrix {
    PosetMatrix::antichain(2).expect("order 2")
}

/// One displayed construction `left op_position right = result`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Construction {
    pub name: &'static str,
    pub left: &'static str,
    pub kind: CompositionKind,
    pub position: usize,
    pub right: &'static str,
    pub displayed: &'static str,
}

impl Construction {
    /// Composes the operands and relabels the result `1..n`.
    pub fn build(&self) -> Result<PosetMatrix> {
        let left = PosetMatrix::from_row_str(self.left)?;
        let right = PosetMatrix::from_row_str(self.right)?;
        compose(self.kind, &left, self.position, &right)?
            .relabeled()
            .into_poset()
    }
}

const fn sq(
    name: &'static str,
    left: &'static str,
    position: usize,
    right: &'static str,
    displayed: &'static str,
) -> Construction {
    Construction {
        name,
        left,
        kind: CompositionKind::Square,
        position,
        right,
        displayed,
    }
}

/// The six disconnected posets of order 4.
pub const DISCONNECTED_ORDER4: [Construction; 6] = [
    sq("1", "100;110;001", 3, C2_ROWS, "1000;1100;0010;0011"),
    sq("2", "100;010;001", 1, I2_ROWS, "1000;0100;0010;0001"),
    sq("3", "100;010;011", 1, I2_ROWS, "1000;0100;0010;0011"),
    sq("4", "100;110;001", 1, C2_ROWS, "1000;1100;1110;0001"),
    sq("5", "100;010;011", 2, I2_ROWS, "1000;0100;0010;0111"),
    sq("6", "100;010;011", 3, I2_ROWS, "1000;0100;0110;0101"),
];

/// The ten connected posets of order 4, `A` to `G` with the starred duals.
pub const CONNECTED_ORDER4: [Construction; 10] = [
    sq("A", "100;110;111", 3, I2_ROWS, "1000;1100;1110;1101"),
    sq("A*", "100;010;111", 3, C2_ROWS, "1000;0100;1110;1111"),
    // C2 on the right would give item C again
    sq("B", "100;010;111", 1, I2_ROWS, "1000;0100;0010;1111"),
    sq("B*", "100;110;101", 2, I2_ROWS, "1000;1100;1010;1001"),
    sq("C", "100;010;111", 1, C2_ROWS, "1000;1100;0010;1111"),
    sq("C*", "100;110;101", 2, C2_ROWS, "1000;1100;1110;1001"),
    sq("D", C2_ROWS, 1, "100;110;101", "1000;1100;1010;1111"),
    sq("E", "100;110;101", 1, I2_ROWS, "1000;0100;1110;1101"),
    Construction {
        name: "F",
        left: "100;110;101",
        kind: CompositionKind::TriUp,
        position: 2,
        right: C2_ROWS,
        displayed: "1000;0100;1110;1001",
    },
    sq("G", "100;110;111", 1, C2_ROWS, "1000;1100;1110;1111"),
];

/// Builtins plus the unstarred order-4 operands `A` to `G`. Starred names
/// in recipes resolve to duals.
pub fn order4_operands() -> Result<SymbolTable> {
    let mut table = SymbolTable::with_builtins();
    for item in CONNECTED_ORDER4.iter().filter(|c| !c.name.ends_with('*')) {
        table.insert(item.name, item.build()?)?;
    }
    Ok(table)
}

/// One row of the order-5 table: `left sq@position right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Order5Row {
    pub row: usize,
    pub left: &'static str,
    pub position: usize,
    pub right: &'static str,
}

impl Order5Row {
    pub fn recipe(&self) -> String {
        format!("{} sq@{} {}", self.left, self.position, self.right)
    }
}

const fn row(row: usize, left: &'static str, position: usize, right: &'static str) -> Order5Row {
    Order5Row {
        row,
        left,
        position,
        right,
    }
}

/// The 44 recipes, in table order. Paired rows list the recipe and then its
/// dual column.
pub const ORDER5_TABLE: [Order5Row; 44] = [
    row(1, "G", 1, "C2"),
    row(2, "C2", 1, "A"),
    row(3, "C2", 2, "A*"),
    row(4, "A", 1, "C2"),
    row(5, "A*", 4, "C2"),
    row(6, "C", 4, "C2"),
    row(7, "C*", 1, "C2"),
    row(8, "D", 3, "C2"),
    row(9, "A", 2, "I2"),
    row(10, "A*", 3, "I2"),
    row(11, "A*", 4, "I2"),
    row(12, "C", 1, "C2"),
    row(13, "C*", 4, "C2"),
    row(14, "D", 1, "C2"),
    row(15, "D", 4, "C2"),
    row(16, "C", 4, "I2"),
    row(17, "C*", 1, "I2"),
    row(18, "A", 3, "C2"),
    row(19, "A*", 2, "C2"),
    row(20, "E", 3, "C2"),
    row(21, "C", 3, "C2"),
    row(22, "C*", 2, "C2"),
    row(23, "C2", 2, "B"),
    row(24, "A", 3, "I2"),
    row(25, "A*", 2, "I2"),
    row(26, "F", 1, "C2"),
    row(27, "F", 4, "C2"),
    row(28, "C", 2, "I2"),
    row(29, "C*", 3, "I2"),
    row(30, "C", 1, "I2"),
    row(31, "C*", 4, "I2"),
    row(32, "B", 4, "I2"),
    row(33, "B*", 1, "I2"),
    row(34, "F", 3, "C2"),
    row(35, "E", 4, "C2"),
    row(36, "E", 1, "C2"),
    row(37, "B", 2, "C2"),
    row(38, "B*", 3, "C2"),
    row(39, "B", 3, "C2"),
    row(40, "B*", 2, "C2"),
    row(41, "B", 1, "C2"),
    row(42, "B*", 4, "C2"),
    row(43, "B", 1, "I2"),
    row(44, "B*", 4, "I2"),
];

/// Evaluates every table row without any integrity checks.
pub fn evaluate_order5_table() -> Result<Vec<(Order5Row, PosetMatrix)>> {
    let symbols = order4_operands()?;
    ORDER5_TABLE
        .iter()
        .map(|r| {
            let result = eval_recipe_str(&r.recipe(), &symbols)?.relabeled();
            let integrity = |reason: String| Error::CatalogIntegrity { row: r.row, reason };
            if !result.is_valid() {
                return Err(integrity(format!("invalid output: {}", result.report)));
            }
            Ok((*r, result.into_poset()?))
        })
        .collect()
}

/// Runs the whole table and checks that every output is a connected
/// order-5 poset and that no two rows give isomorphic posets.
pub fn run_order5_table() -> Result<ClassCatalog> {
    let mut catalog = ClassCatalog::new(5);
    let mut first_row = std::collections::BTreeMap::new();
    for (r, matrix) in evaluate_order5_table()? {
        let integrity = |reason: String| Error::CatalogIntegrity { row: r.row, reason };
        if matrix.order() != 5 {
            return Err(integrity(format!("output has order {}", matrix.order())));
        }
        if !is_connected(&matrix) {
            return Err(integrity("output is disconnected".to_string()));
        }
        let key = canonical_form(&matrix);
        if let Some(earlier) = first_row.insert(key.clone(), r.row) {
            return Err(integrity(format!("duplicate of row {earlier}")));
        }
        catalog.insert_entry(key, matrix, Some(r.recipe()));
    }
    Ok(catalog)
}
