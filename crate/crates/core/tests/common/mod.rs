//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's validation, closure or canonicalization code.

#![allow(dead_code, clippy::needless_range_loop)]

use posetmat::PosetMatrix;
use rand::Rng;

pub type Grid = Vec<Vec<u8>>;

pub fn reflexive(a: &Grid) -> bool {
    (0..a.len()).all(|k| a[k][k] == 1)
}

pub fn antisymmetric(a: &Grid) -> bool {
    let n = a.len();
    (0..n).all(|y| (0..n).all(|z| y == z || !(a[y][z] == 1 && a[z][y] == 1)))
}

pub fn transitive(a: &Grid) -> bool {
    let n = a.len();
    (0..n).all(|y| (0..n).all(|z| (0..n).all(|w| !(a[y][z] == 1 && a[z][w] == 1) || a[y][w] == 1)))
}

pub fn is_poset(a: &Grid) -> bool {
    reflexive(a) && antisymmetric(a) && transitive(a)
}

pub fn lower_triangular(a: &Grid) -> bool {
    let n = a.len();
    (0..n).all(|y| (y + 1..n).all(|z| a[y][z] == 0))
}

/// Every reflexive lower-triangular transitive matrix of order `n`.
pub fn natural_posets(n: usize) -> Vec<Grid> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|y| (0..y).map(move |z| (y, z))).collect();
    let mut out = Vec::new();
    for pattern in 0u64..1 << cells.len() {
        let mut a = vec![vec![0u8; n]; n];
        for k in 0..n {
            a[k][k] = 1;
        }
        for (b, &(y, z)) in cells.iter().enumerate() {
            a[y][z] = (pattern >> b & 1) as u8;
        }
        if transitive(&a) {
            out.push(a);
        }
    }
    out
}

pub fn matrix(a: &Grid) -> PosetMatrix {
    PosetMatrix::from_rows(a).expect("oracle grid is a poset matrix")
}

pub fn grid(m: &PosetMatrix) -> Grid {
    m.table().to_rows()
}

pub fn grid_from_str(text: &str) -> Grid {
    text.split(';')
        .map(|row| row.bytes().map(|c| c - b'0').collect())
        .collect()
}

pub fn grid_string(a: &Grid) -> String {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|&v| char::from(b'0' + v))
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimal row-major bit-string over all relabelings.
pub fn brute_key(a: &Grid) -> String {
    let n = a.len();
    permutations(n)
        .into_iter()
        .map(|p| {
            (0..n)
                .flat_map(|y| (0..n).map(move |z| (y, z)))
                .map(|(y, z)| char::from(b'0' + a[p[y]][p[z]]))
                .collect::<String>()
        })
        .min()
        .expect("at least one permutation")
}

/// `b[p][q] = a[n-1-q][n-1-p]`.
pub fn dual_grid(a: &Grid) -> Grid {
    let n = a.len();
    (0..n)
        .map(|p| (0..n).map(|q| a[n - 1 - q][n - 1 - p]).collect())
        .collect()
}

pub fn minimal_oracle(a: &Grid) -> Vec<usize> {
    let n = a.len();
    (0..n)
        .filter(|&x| !(0..n).any(|z| z != x && a[x][z] == 1))
        .collect()
}

pub fn maximal_oracle(a: &Grid) -> Vec<usize> {
    let n = a.len();
    (0..n)
        .filter(|&x| !(0..n).any(|y| y != x && a[y][x] == 1))
        .collect()
}

pub fn connected_oracle(a: &Grid) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if !seen[y] && (a[x][y] == 1 || a[y][x] == 1) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Random lower-triangular poset of order `n`: random strict lower cells,
/// then the reflexive-transitive closure.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Grid {
    let mut a = vec![vec![0u8; n]; n];
    for y in 0..n {
        a[y][y] = 1;
        for z in 0..y {
            a[y][z] = rng.gen_bool(density) as u8;
        }
    }
    for k in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a[y][k] == 1 && a[k][z] == 1 {
                    a[y][z] = 1;
                }
            }
        }
    }
    a
}

/// Applies `perm` to rows and columns: `b[y][z] = a[perm[y]][perm[z]]`.
pub fn permute(a: &Grid, perm: &[usize]) -> Grid {
    let n = a.len();
    (0..n)
        .map(|y| (0..n).map(|z| a[perm[y]][perm[z]]).collect())
        .collect()
}

/// Reorders `a` into a linear extension so that it parses as a poset
/// matrix. Repeatedly takes the smallest index whose strict down-set has
/// been placed.
pub fn sort_topologically(a: &Grid) -> Grid {
    let n = a.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&y| !placed[y] && (0..n).all(|z| z == y || a[y][z] == 0 || placed[z]))
            .expect("a poset always has a minimal unplaced element");
        placed[next] = true;
        order.push(next);
    }
    permute(a, &order)
}
