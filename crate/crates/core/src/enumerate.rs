//! Isomorphism classes of posets per order, generated two independent ways.
//!
//! [`enumerate_oracle`] walks every reflexive lower-triangular 0/1 matrix and
//! keeps the transitive ones. Every poset has a linear extension, so every
//! class shows up. [`enumerate_by_composition`] instead closes the order-2
//! generators under the partial composition operations. Both deduplicate by
//! [`canonical_form`].
//!
//! Work is split into independent ranges that run on the current rayon pool;
//! partial catalogs are merged with order-independent tie-breaks, so results
//! do not depend on the number of workers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::canon::{canonical_form, canonical_form_of_rows, CanonicalKey};
use crate::compose::{compose, CompositionKind};
use crate::error::{Error, Result};
use crate::poset::{bit, is_connected, iter_bits, PosetMatrix, RelationTable};

/// Largest order accepted by the enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Known class counts for orders 1..=7: (all posets, connected posets).
pub const KNOWN_COUNTS: [(u64, u64); 7] = [
    (1, 1),
    (2, 1),
    (5, 3),
    (16, 10),
    (63, 44),
    (318, 238),
    (2045, 1650),
];

/// Recipe names of the builtin generators.
pub const POINT_NAME: &str = "P1";
pub const CHAIN2_NAME: &str = "C2";
pub const ANTICHAIN2_NAME: &str = "I2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub representative: PosetMatrix,
    pub connected: bool,
    /// Shortest recipe producing the representative, for composition catalogs.
    pub recipe: Option<String>,
}

/// One representative per isomorphism class of a given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCatalog {
    pub order: usize,
    pub entries: BTreeMap<CanonicalKey, CatalogEntry>,
    /// Assembled compositions that failed the axioms and were discarded.
    pub invalid_outputs: usize,
}

impl ClassCatalog {
    pub fn new(order: usize) -> Self {
        ClassCatalog {
            order,
            entries: BTreeMap::new(),
            invalid_outputs: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn connected_count(&self) -> usize {
        self.entries.values().filter(|e| e.connected).count()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.entries.keys()
    }

    /// Only the connected classes.
    pub fn connected_only(&self) -> ClassCatalog {
        ClassCatalog {
            order: self.order,
            entries: self
                .entries
                .iter()
                .filter(|(_, e)| e.connected)
                .map(|(k, e)| (k.clone(), e.clone()))
                .collect(),
            invalid_outputs: self.invalid_outputs,
        }
    }

    pub(crate) fn insert_entry(
        &mut self,
        key: CanonicalKey,
        representative: PosetMatrix,
        recipe: Option<String>,
    ) {
        let connected = is_connected(&representative);
        self.entries.insert(
            key,
            CatalogEntry {
                representative,
                connected,
                recipe,
            },
        );
    }
}

/// Runs `f` on a dedicated pool with `workers` threads; `0` uses the global pool.
pub fn with_workers<T, F>(workers: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Malformed(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

fn check_enumeration_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        Err(Error::OrderOutOfRange {
            order: n,
            min: 1,
            max: MAX_ENUMERATION_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Strict down-sets of row `y` that keep the relation transitive, given
/// valid rows `0..y`.
fn closed_down_sets(rows: &[u64]) -> impl Iterator<Item = u64> + '_ {
    let y = rows.len();
    (0..1u64 << y).filter(move |&set| iter_bits(set).all(|z| rows[z] & !set == 0))
}

fn extend_all(rows: &mut Vec<u64>, n: usize, visit: &mut impl FnMut(&[u64])) {
    if rows.len() == n {
        visit(rows);
        return;
    }
    let y = rows.len();
    let sets: Vec<u64> = closed_down_sets(rows).collect();
    for set in sets {
        rows.push(set | bit(y));
        extend_all(rows, n, visit);
        rows.pop();
    }
}

/// Keeps the class representative with the smallest row vector.
fn merge_min(
    mut left: BTreeMap<CanonicalKey, Vec<u64>>,
    right: BTreeMap<CanonicalKey, Vec<u64>>,
) -> BTreeMap<CanonicalKey, Vec<u64>> {
    for (key, rows) in right {
        left.entry(key)
            .and_modify(|cur| {
                if rows < *cur {
                    *cur = rows.clone();
                }
            })
            .or_insert(rows);
    }
    left
}

/// All isomorphism classes of order `n` by exhaustive search.
pub fn enumerate_oracle(n: usize) -> Result<ClassCatalog> {
    check_enumeration_order(n)?;
    let split = n.min(5);
    let mut prefixes = Vec::new();
    extend_all(&mut Vec::with_capacity(n), split, &mut |rows| {
        prefixes.push(rows.to_vec())
    });

    let classes = prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut found: BTreeMap<CanonicalKey, Vec<u64>> = BTreeMap::new();
            let mut rows = prefix;
            extend_all(&mut rows, n, &mut |rows| {
                let key = canonical_form_of_rows(rows);
                match found.get_mut(&key) {
                    Some(cur) if rows < cur.as_slice() => *cur = rows.to_vec(),
                    Some(_) => {}
                    None => {
                        found.insert(key, rows.to_vec());
                    }
                }
            });
            found
        })
        .reduce(BTreeMap::new, merge_min);

    let mut catalog = ClassCatalog::new(n);
    for (key, rows) in classes {
        let table = RelationTable::from_bits(rows)?;
        catalog.insert_entry(key, PosetMatrix::from_table_unchecked(table), None);
    }
    Ok(catalog)
}

fn operand(recipe: &str) -> String {
    if recipe.contains(' ') {
        format!("({recipe})")
    } else {
        recipe.to_string()
    }
}

fn base_catalog(n: usize) -> ClassCatalog {
    let mut catalog = ClassCatalog::new(n);
    let generators: Vec<(PosetMatrix, &str)> = match n {
        1 => vec![(PosetMatrix::point(), POINT_NAME)],
        _ => vec![
            (PosetMatrix::chain(2).expect("order 2"), CHAIN2_NAME),
            (PosetMatrix::antichain(2).expect("order 2"), ANTICHAIN2_NAME),
        ],
    };
    for (m, name) in generators {
        catalog.insert_entry(canonical_form(&m), m, Some(name.to_string()));
    }
    catalog
}

struct Candidate {
    recipe: String,
    matrix: PosetMatrix,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        (self.recipe.len(), &self.recipe) < (other.recipe.len(), &other.recipe)
    }
}

fn merge_candidates(
    mut left: (BTreeMap<CanonicalKey, Candidate>, usize),
    right: (BTreeMap<CanonicalKey, Candidate>, usize),
) -> (BTreeMap<CanonicalKey, Candidate>, usize) {
    for (key, cand) in right.0 {
        match left.0.get_mut(&key) {
            Some(cur) if cand.better_than(cur) => *cur = cand,
            Some(_) => {}
            None => {
                left.0.insert(key, cand);
            }
        }
    }
    (left.0, left.1 + right.1)
}

/// Classes of order `n` reachable by one composition of seed classes.
///
/// Every kind in `kinds` is applied at every position to every ordered pair
/// of seed representatives whose orders sum to `n + 1` (both at least 2).
/// Orders 1 and 2 return the builtin generators. Each class keeps its
/// shortest recipe, ties broken lexicographically.
pub fn enumerate_by_composition(
    n: usize,
    seeds: &[ClassCatalog],
    kinds: &[CompositionKind],
) -> Result<ClassCatalog> {
    check_enumeration_order(n)?;
    if n <= 2 {
        return Ok(base_catalog(n));
    }
    let seed = |order: usize| {
        seeds
            .iter()
            .find(|c| c.order == order)
            .ok_or_else(|| Error::Malformed(format!("no seed catalog of order {order}")))
    };
    let mut work = Vec::new();
    for left_order in 2..n {
        let right_order = n + 1 - left_order;
        let right = seed(right_order)?;
        for left in seed(left_order)?.entries.values() {
            for r in right.entries.values() {
                let names = (left.recipe.as_deref(), r.recipe.as_deref());
                let (Some(ln), Some(rn)) = names else {
                    return Err(Error::Malformed(
                        "seed catalogs must carry recipes".to_string(),
                    ));
                };
                work.push((left, ln, r, rn));
            }
        }
    }

    let (found, invalid) = work
        .into_par_iter()
        .map(|(left, left_name, right, right_name)| {
            let mut found: BTreeMap<CanonicalKey, Candidate> = BTreeMap::new();
            let mut invalid = 0usize;
            for &kind in kinds {
                for position in 1..=left.representative.order() {
                    let result =
                        compose(kind, &left.representative, position, &right.representative)
                            .expect("position is in range");
                    let Some(matrix) = result.relabeled().poset() else {
                        invalid += 1;
                        continue;
                    };
                    let recipe = format!(
                        "{} {}@{} {}",
                        operand(left_name),
                        kind.keyword(),
                        position,
                        operand(right_name)
                    );
                    let cand = Candidate { recipe, matrix };
                    let key = canonical_form(&cand.matrix);
                    match found.get_mut(&key) {
                        Some(cur) if cand.better_than(cur) => *cur = cand,
                        Some(_) => {}
                        None => {
                            found.insert(key, cand);
                        }
                    }
                }
            }
            (found, invalid)
        })
        .reduce(|| (BTreeMap::new(), 0), merge_candidates);

    let mut catalog = ClassCatalog::new(n);
    catalog.invalid_outputs = invalid;
    for (key, cand) in found {
        catalog.insert_entry(key, cand.matrix, Some(cand.recipe));
    }
    Ok(catalog)
}

/// Catalogs of orders `1..=max_n` built recursively from the generators.
pub fn composition_closure(max_n: usize, kinds: &[CompositionKind]) -> Result<Vec<ClassCatalog>> {
    check_enumeration_order(max_n)?;
    let mut catalogs: Vec<ClassCatalog> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let next = enumerate_by_composition(n, &catalogs, kinds)?;
        catalogs.push(next);
    }
    Ok(catalogs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    Compose,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Compose => "compose",
        }
    }
}

/// Which generators a count table runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Methods {
    Oracle,
    Compose,
    Both,
}

impl Methods {
    pub fn list(self) -> &'static [Method] {
        match self {
            Methods::Oracle => &[Method::Oracle],
            Methods::Compose => &[Method::Compose],
            Methods::Both => &[Method::Oracle, Method::Compose],
        }
    }
}

impl FromStr for Methods {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Methods::Oracle),
            "compose" => Ok(Methods::Compose),
            "both" => Ok(Methods::Both),
            other => Err(Error::Malformed(format!(
                "unknown method {other:?} (expected oracle, compose or both)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub order: usize,
    pub method: Method,
    pub total: u64,
    pub connected: u64,
    /// Known (total, connected) for this order, when available.
    pub expected: Option<(u64, u64)>,
}

impl CountRow {
    pub fn matches(&self) -> Option<bool> {
        self.expected
            .map(|(total, connected)| total == self.total && connected == self.connected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

impl CountTable {
    /// False if any row with a known expectation disagrees.
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches() != Some(false))
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<6} {:<8} {:>6} {:>10} {:>12} {:>6}",
            "order", "method", "total", "connected", "expected", "match"
        )?;
        for row in &self.rows {
            let (expected, verdict) = match (row.expected, row.matches()) {
                (Some((t, c)), Some(ok)) => (format!("{t}/{c}"), if ok { "yes" } else { "NO" }),
                _ => ("-".to_string(), "-"),
            };
            writeln!(
                f,
                "{:<6} {:<8} {:>6} {:>10} {:>12} {:>6}",
                row.order,
                row.method.name(),
                row.total,
                row.connected,
                expected,
                verdict
            )?;
        }
        Ok(())
    }
}

/// Per-order class counts for orders `1..=max_n`, compared with the known
/// counts where they exist.
pub fn count_table(max_n: usize, methods: Methods) -> Result<CountTable> {
    check_enumeration_order(max_n)?;
    let mut per_method: Vec<(Method, Vec<ClassCatalog>)> = Vec::new();
    for &method in methods.list() {
        let catalogs = match method {
            Method::Oracle => (1..=max_n)
                .map(enumerate_oracle)
                .collect::<Result<Vec<_>>>()?,
            Method::Compose => composition_closure(max_n, &CompositionKind::ALL)?,
        };
        per_method.push((method, catalogs));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for (method, catalogs) in &per_method {
            let catalog = &catalogs[n - 1];
            rows.push(CountRow {
                order: n,
                method: *method,
                total: catalog.len() as u64,
                connected: catalog.connected_count() as u64,
                expected: KNOWN_COUNTS.get(n - 1).copied(),
            });
        }
    }
    Ok(CountTable { rows })
}
