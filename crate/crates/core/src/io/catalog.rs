//! Catalog directories: one matrix file per class plus `index.txt`.
//!
//! Index lines are tab-separated: canonical key, connected flag (`yes` or
//! `no`), recipe (`-` when there is none) and the file name relative to the
//! directory. Entries follow canonical key order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::enumerate::ClassCatalog;
use crate::error::Result;
use crate::io::format::serialize_matrix;

pub const INDEX_FILE: &str = "index.txt";
pub const INDEX_HEADER: &str = "# key\tconnected\trecipe\tfile";

/// File name of the `k`-th entry (1-based) of an order-`n` catalog.
pub fn entry_file_name(order: usize, k: usize) -> String {
    format!("{order}-{k:04}.txt")
}

pub fn render_index(catalog: &ClassCatalog) -> String {
    let mut out = String::from(INDEX_HEADER);
    out.push('\n');
    for (k, (key, entry)) in catalog.entries.iter().enumerate() {
        let _ = writeln!(
            out,
            "{key}\t{}\t{}\t{}",
            if entry.connected { "yes" } else { "no" },
            entry.recipe.as_deref().unwrap_or("-"),
            entry_file_name(catalog.order, k + 1)
        );
    }
    out
}

/// Writes every representative and the index into `dir`, creating it if
/// needed. Returns the index path.
pub fn write_catalog(dir: &Path, catalog: &ClassCatalog) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    for (k, entry) in catalog.entries.values().enumerate() {
        let path = dir.join(entry_file_name(catalog.order, k + 1));
        fs::write(path, serialize_matrix(&entry.representative))?;
    }
    let index = dir.join(INDEX_FILE);
    fs::write(&index, render_index(catalog))?;
    Ok(index)
}
