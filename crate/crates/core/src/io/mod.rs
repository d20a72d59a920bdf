//! Text formats: matrix files, catalogs, DOT and recipes.

pub mod catalog;
pub mod dot;
pub mod format;
pub mod recipe;

pub use catalog::{render_index, write_catalog};
pub use dot::to_dot;
pub use format::{parse_matrix, parse_table, serialize_matrix, serialize_table};
pub use recipe::{eval_recipe, eval_recipe_str, parse_recipe, RecipeExpr, SymbolTable};
