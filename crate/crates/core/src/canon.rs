//! Canonical forms and isomorphism testing.
//!
//! The canonical key of a poset matrix is the lexicographically smallest
//! row-major bit-string of `rel[p(y)][p(z)]` over all relabelings `p`. The
//! search is an exact branch and bound over positions:
//!
//! * after fixing `p(0..k)`, the known part of every fixed row is its first
//!   `k` bits; pushing the row's remaining ones to the end gives a lower
//!   bound, and a branch is cut when that bound exceeds the best string;
//! * two unplaced elements with identical strict down-sets and up-sets are
//!   swapped by an automorphism, so only one of them is branched on;
//! * candidates are tried in order of their (down-set size, up-set size,
//!   height) invariant triple, which tends to reach the optimum first.
//!
//! None of these cuts can discard the minimum, so the key is exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{bit, full_mask, iter_bits, PosetMatrix};

/// Order plus the minimal row-major bit-string, one `u64` per row with
/// column 0 in the most significant of the `order` low bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    order: usize,
    rows: Vec<u64>,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Row values; row `r` bit `order - 1 - c` is entry `(r, c)`.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// The row-major bit-string as `'0'`/`'1'` characters.
    pub fn bit_string(&self) -> String {
        let n = self.order;
        let mut out = String::with_capacity(n * n);
        for &row in &self.rows {
            for c in 0..n {
                out.push(if row >> (n - 1 - c) & 1 == 1 {
                    '1'
                } else {
                    '0'
                });
            }
        }
        out
    }

    /// The canonical representative, labeled `1..n`.
    ///
    /// Its storage need not be a linear extension, so it is returned as
    /// row masks in the usual column-bit layout.
    pub fn relation_rows(&self) -> Vec<u64> {
        let n = self.order;
        self.rows
            .iter()
            .map(|&row| {
                (0..n)
                    .filter(|&c| row >> (n - 1 - c) & 1 == 1)
                    .fold(0, |acc, c| acc | bit(c))
            })
            .collect()
    }

    fn packed_bytes(&self) -> Vec<u8> {
        let bits = self.bit_string();
        bits.as_bytes()
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (k, &c)| acc | (((c == b'1') as u8) << (7 - k)))
            })
            .collect()
    }
}

impl fmt::Display for CanonicalKey {
    /// `<order>:<hex>` where the hex digits pack the bit-string MSB-first,
    /// zero-padded to whole bytes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.order)?;
        for byte in self.packed_bytes() {
            write!(f, "{byte:02x}")?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("invalid canonical key {s:?}"));
        let (order, hex) = s.split_once(':').ok_or_else(bad)?;
        let order: usize = order.parse().map_err(|_| bad())?;
        if order == 0
            || order > crate::poset::MAX_ORDER
            || hex.len() != (order * order).div_ceil(8) * 2
        {
            return Err(bad());
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|k| u8::from_str_radix(&hex[k..k + 2], 16).map_err(|_| bad()))
            .collect::<Result<Vec<u8>>>()?;
        let bit_at = |k: usize| bytes[k / 8] >> (7 - k % 8) & 1;
        let rows = (0..order)
            .map(|r| (0..order).fold(0u64, |acc, c| acc << 1 | bit_at(r * order + c) as u64))
            .collect();
        let key = CanonicalKey { order, rows };
        if key.to_string() != s {
            return Err(bad());
        }
        Ok(key)
    }
}

/// Per-element (down-set size, up-set size, height), all strict.
pub fn invariant_triples(m: &PosetMatrix) -> Vec<(u32, u32, u32)> {
    let n = m.order();
    let mut up = vec![0u32; n];
    let mut height = vec![0u32; n];
    // storage is a linear extension, so heights fill in one pass
    for y in 0..n {
        for z in iter_bits(m.strict_down(y)) {
            up[z] += 1;
            height[y] = height[y].max(height[z] + 1);
        }
    }
    (0..n)
        .map(|y| (m.strict_down(y).count_ones(), up[y], height[y]))
        .collect()
}

struct Search<'a> {
    n: usize,
    rel: &'a [u64],
    /// smallest member of each element's twin class
    twin_rep: Vec<usize>,
    /// candidates in branching order
    order: Vec<usize>,
    best: Option<Vec<u64>>,
    perm: Vec<usize>,
}

impl Search<'_> {
    /// `pre[r]`: known bits of row r; `rem[r]`: ones of row r still unplaced.
    fn descend(&mut self, placed: u64, pre: &[u64], rem: &[u32]) {
        let k = self.perm.len();
        let n = self.n;
        if k == n {
            match &self.best {
                Some(best) if best.as_slice() <= pre => {}
                _ => self.best = Some(pre.to_vec()),
            }
            return;
        }
        let mut tried = 0u64;
        for idx in 0..n {
            let e = self.order[idx];
            if placed & bit(e) != 0 {
                continue;
            }
            let rep = self.twin_rep[e];
            if tried & bit(rep) != 0 {
                continue;
            }
            tried |= bit(rep);

            let placed_next = placed | bit(e);
            let mut next_pre = Vec::with_capacity(k + 1);
            let mut next_rem = Vec::with_capacity(k + 1);
            for r in 0..k {
                let one = self.rel[self.perm[r]] & bit(e) != 0;
                next_pre.push(pre[r] << 1 | one as u64);
                next_rem.push(rem[r] - one as u32);
            }
            let mut row = 0u64;
            for &q in &self.perm {
                row = row << 1 | (self.rel[e] & bit(q) != 0) as u64;
            }
            next_pre.push(row << 1 | 1);
            next_rem.push((self.rel[e] & !placed_next).count_ones());

            if let Some(best) = &self.best {
                let shift = n - k - 1;
                let mut cut = false;
                for r in 0..=k {
                    let bound = next_pre[r] << shift | ((1u64 << next_rem[r]) - 1);
                    match bound.cmp(&best[r]) {
                        Ordering::Less => break,
                        Ordering::Greater => {
                            cut = true;
                            break;
                        }
                        Ordering::Equal => {}
                    }
                }
                if cut {
                    continue;
                }
            }

            self.perm.push(e);
            self.descend(placed_next, &next_pre, &next_rem);
            self.perm.pop();
        }
    }
}

/// The canonical key of `m`.
pub fn canonical_form(m: &PosetMatrix) -> CanonicalKey {
    canonical_form_of_rows(m.row_masks())
}

/// Canonical key of any valid relation given as row masks (storage order
/// is irrelevant).
pub(crate) fn canonical_form_of_rows(rel: &[u64]) -> CanonicalKey {
    let n = rel.len();
    let strict_down: Vec<u64> = (0..n).map(|y| rel[y] & !bit(y)).collect();
    let mut strict_up = vec![0u64; n];
    for (y, &down) in strict_down.iter().enumerate() {
        for z in iter_bits(down) {
            strict_up[z] |= bit(y);
        }
    }
    let twin_rep = (0..n)
        .map(|e| {
            (0..=e)
                .find(|&f| strict_down[f] == strict_down[e] && strict_up[f] == strict_up[e])
                .unwrap_or(e)
        })
        .collect();

    let mut height = vec![0u32; n];
    let mut done = 0u64;
    while done != full_mask(n) {
        for y in 0..n {
            if done & bit(y) == 0 && strict_down[y] & !done == 0 {
                height[y] = iter_bits(strict_down[y])
                    .map(|z| height[z] + 1)
                    .max()
                    .unwrap_or(0);
                done |= bit(y);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| {
        (
            strict_down[e].count_ones(),
            strict_up[e].count_ones(),
            height[e],
            e,
        )
    });

    let mut search = Search {
        n,
        rel,
        twin_rep,
        order,
        best: None,
        perm: Vec::with_capacity(n),
    };
    search.descend(0, &[], &[]);
    CanonicalKey {
        order: n,
        rows: search.best.expect("at least one relabeling exists"),
    }
}

/// Whether an order-preserving bijection exists between `a` and `b`.
pub fn are_isomorphic(a: &PosetMatrix, b: &PosetMatrix) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let mut ta = invariant_triples(a);
    let mut tb = invariant_triples(b);
    ta.sort_unstable();
    tb.sort_unstable();
    ta == tb && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::dual;

    fn m(rows: &str) -> PosetMatrix {
        PosetMatrix::from_row_str(rows).unwrap()
    }

    #[test]
    fn chain_and_its_dual_share_a_key() {
        let c = PosetMatrix::chain(3).unwrap();
        assert_eq!(canonical_form(&c), canonical_form(&dual(&c)));
    }

    #[test]
    fn connected_order_three_classes_are_distinct() {
        let keys: std::collections::BTreeSet<_> = ["100;110;111", "100;110;101", "100;010;111"]
            .iter()
            .map(|r| canonical_form(&m(r)))
            .collect();
        assert_eq!(keys.len(), 3);
    }

    #[test]
    fn relabeling_does_not_change_the_key() {
        // a two-chain plus a point, stored in two linear extensions
        let a = m("100;110;001");
        let b = m("100;010;011");
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn chain_is_not_an_antichain() {
        assert!(!are_isomorphic(
            &PosetMatrix::chain(2).unwrap(),
            &PosetMatrix::antichain(2).unwrap()
        ));
    }

    #[test]
    fn key_text_round_trip() {
        let key = canonical_form(&m("1000;1100;1110;1101"));
        let text = key.to_string();
        assert!(text.starts_with("4:"));
        assert_eq!(text.parse::<CanonicalKey>().unwrap(), key);
        assert!("4:zz".parse::<CanonicalKey>().is_err());
        assert!("0:".parse::<CanonicalKey>().is_err());
    }

    #[test]
    fn antichain_key_is_the_identity() {
        let key = canonical_form(&PosetMatrix::antichain(5).unwrap());
        assert_eq!(key.bit_string(), "1000001000001000001000001");
        assert_eq!(key.to_string(), "5:82082080");
    }

    #[test]
    fn invariant_triples_of_y_shape() {
        let a = m("1000;1100;1110;1101");
        assert_eq!(
            invariant_triples(&a),
            vec![(0, 3, 0), (1, 2, 1), (2, 0, 2), (2, 0, 2)]
        );
    }
}
