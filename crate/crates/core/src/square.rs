//! Latin squares, triples, submatrix windows and species keys.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Largest order accepted by [`species_key`].
pub const SPECIES_MAX_ORDER: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatinError {
    #[error("square is empty")]
    Empty,
    #[error("grid is not square: row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("symbol {symbol} out of range at ({row}, {col})")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
    },
    #[error("duplicate symbol in row {0}")]
    DuplicateInRow(usize),
    #[error("duplicate symbol in column {0}")]
    DuplicateInColumn(usize),
    #[error("cells ({r1},{c1}) ({r1},{c2}) ({r2},{c1}) ({r2},{c2}) do not form an intercalate")]
    NotIntercalate {
        r1: usize,
        r2: usize,
        c1: usize,
        c2: usize,
    },
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("species keys are limited to order {max}, got {0}", max = SPECIES_MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("window needs at least one row and one column")]
    EmptyWindow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A cell of a square together with its symbol. Serialized as `[r, c, s]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Triple {
    pub row: usize,
    pub col: usize,
    pub sym: usize,
}

impl Triple {
    pub const fn new(row: usize, col: usize, sym: usize) -> Self {
        Triple { row, col, sym }
    }
}

impl From<[usize; 3]> for Triple {
    fn from([row, col, sym]: [usize; 3]) -> Self {
        Triple { row, col, sym }
    }
}

impl From<Triple> for [usize; 3] {
    fn from(t: Triple) -> Self {
        [t.row, t.col, t.sym]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.sym)
    }
}

/// An `n×n` array in which every row and column is a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<usize>,
}

impl LatinSquare {
    /// Validates a grid given row by row.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatinError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LatinError::NotSquare {
                    row,
                    len: r.len(),
                    order: n,
                });
            }
        }
        Self::from_flat(n, rows.into_iter().flatten().collect())
    }

    /// Validates a row-major grid of length `n*n`.
    pub fn from_flat(n: usize, grid: Vec<usize>) -> Result<Self, LatinError> {
        if n == 0 {
            return Err(LatinError::Empty);
        }
        if grid.len() != n * n {
            return Err(LatinError::NotSquare {
                row: grid.len() / n,
                len: grid.len() % n,
                order: n,
            });
        }
        for (i, &s) in grid.iter().enumerate() {
            if s >= n {
                return Err(LatinError::SymbolOutOfRange {
                    row: i / n,
                    col: i % n,
                    symbol: s,
                });
            }
        }
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                if std::mem::replace(&mut seen[grid[r * n + c]], true) {
                    return Err(LatinError::DuplicateInRow(r));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                if std::mem::replace(&mut seen[grid[r * n + c]], true) {
                    return Err(LatinError::DuplicateInColumn(c));
                }
            }
        }
        Ok(LatinSquare { order: n, grid })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.grid[r * self.order + c]
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.grid[r * self.order..(r + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.grid
    }

    pub fn triple(&self, r: usize, c: usize) -> Triple {
        Triple::new(r, c, self.get(r, c))
    }

    /// Column of row `r` that holds symbol `s`.
    pub fn col_of(&self, r: usize, s: usize) -> usize {
        self.row(r)
            .iter()
            .position(|&x| x == s)
            .expect("rows are permutations")
    }

    /// Canonical bytes: order then row-major symbols, each as little-endian `u32`.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 * (self.grid.len() + 1));
        out.extend_from_slice(&(self.order as u32).to_le_bytes());
        for &s in &self.grid {
            out.extend_from_slice(&(s as u32).to_le_bytes());
        }
        out
    }

    /// Hex SHA-256 of [`canonical_bytes`](Self::canonical_bytes).
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.canonical_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The square file format: `n` then `n` rows of symbols.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for r in 0..self.order {
            out.push_str(&self.row(r).iter().join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, LatinError> {
        Self::from_rows(parse_grid(text)?)
    }

    /// Swaps the two symbols of the intercalate on rows `r1, r2` and columns `c1, c2`.
    pub fn turn_intercalate(
        &self,
        r1: usize,
        r2: usize,
        c1: usize,
        c2: usize,
    ) -> Result<Self, LatinError> {
        let n = self.order;
        for index in [r1, r2, c1, c2] {
            if index >= n {
                return Err(LatinError::IndexOutOfRange { index, order: n });
            }
        }
        let (a, b) = (self.get(r1, c1), self.get(r1, c2));
        if r1 == r2 || c1 == c2 || a == b || self.get(r2, c2) != a || self.get(r2, c1) != b {
            return Err(LatinError::NotIntercalate { r1, r2, c1, c2 });
        }
        let mut grid = self.grid.clone();
        grid[r1 * n + c1] = b;
        grid[r1 * n + c2] = a;
        grid[r2 * n + c1] = a;
        grid[r2 * n + c2] = b;
        Ok(LatinSquare { order: n, grid })
    }

    /// `result[row_perm[r]][col_perm[c]] = sym_perm[self[r][c]]`.
    pub fn apply_isotopy(
        &self,
        row_perm: &[usize],
        col_perm: &[usize],
        sym_perm: &[usize],
    ) -> Result<Self, LatinError> {
        let n = self.order;
        for p in [row_perm, col_perm, sym_perm] {
            if !is_permutation(p, n) {
                return Err(LatinError::NotPermutation(n));
            }
        }
        let mut grid = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                grid[row_perm[r] * n + col_perm[c]] = sym_perm[self.get(r, c)];
            }
        }
        Ok(LatinSquare { order: n, grid })
    }

    /// Conjugate obtained by sending each triple's coordinates through `roles`:
    /// coordinate `i` of the new triple is coordinate `roles[i]` of the old one.
    pub fn conjugate(&self, roles: [usize; 3]) -> Self {
        let n = self.order;
        let mut grid = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let t = [r, c, self.get(r, c)];
                grid[t[roles[0]] * n + t[roles[1]]] = t[roles[2]];
            }
        }
        LatinSquare { order: n, grid }
    }

    pub fn window(&self, rows: &[usize], cols: &[usize]) -> Result<SubmatrixWindow, LatinError> {
        SubmatrixWindow::new(self, rows, cols)
    }

    pub fn is_subsquare(&self, w: &SubmatrixWindow) -> bool {
        let k = w.rows.len();
        if w.cols.len() != k || w.symbols.len() != k {
            return false;
        }
        let rows_ok = w.rows.iter().all(|&r| {
            w.cols
                .iter()
                .map(|&c| self.get(r, c))
                .collect::<BTreeSet<_>>()
                .len()
                == k
        });
        let cols_ok = w.cols.iter().all(|&c| {
            w.rows
                .iter()
                .map(|&r| self.get(r, c))
                .collect::<BTreeSet<_>>()
                .len()
                == k
        });
        rows_ok && cols_ok
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.order.max(2) - 1).to_string().len();
        for r in 0..self.order {
            let line = self.row(r).iter().map(|s| format!("{s:>width$}")).join(" ");
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n
        && p.iter()
            .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Parses `n` followed by `n` lines of `n` whitespace-separated integers.
/// Blank lines and `#` comments are ignored.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<usize>>, LatinError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| LatinError::Parse("missing order line".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| LatinError::Parse(format!("bad order line {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for line in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| LatinError::Parse(format!("bad entry {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(LatinError::Parse(format!(
                "row {} has {} entries, expected {n}",
                rows.len(),
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(LatinError::Parse(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Ok(rows)
}

/// Rows `X`, columns `Y` and the set `Z` of symbols they contain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubmatrixWindow {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub symbols: Vec<usize>,
}

impl SubmatrixWindow {
    pub fn new(l: &LatinSquare, rows: &[usize], cols: &[usize]) -> Result<Self, LatinError> {
        if rows.is_empty() || cols.is_empty() {
            return Err(LatinError::EmptyWindow);
        }
        let n = l.order();
        if let Some(&index) = rows.iter().chain(cols).find(|&&i| i >= n) {
            return Err(LatinError::IndexOutOfRange { index, order: n });
        }
        let rows: Vec<usize> = rows
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cols: Vec<usize> = cols
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let symbols = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| l.get(r, c)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(SubmatrixWindow {
            rows,
            cols,
            symbols,
        })
    }
}

/// The six role permutations of `(row, col, sym)`.
pub const CONJUGATES: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Appends every reduced form of `l` obtainable by choosing a first row and
/// a column order, calling `f` on each.
fn for_each_reduced_form(l: &LatinSquare, mut f: impl FnMut(&[u8])) {
    let n = l.order();
    let mut form = vec![0u8; n * n];
    let mut relabel = vec![0u8; n];
    let mut row_of_first = vec![0usize; n];
    for first in 0..n {
        for cols in (0..n).permutations(n) {
            for (j, &c) in cols.iter().enumerate() {
                relabel[l.get(first, c)] = j as u8;
            }
            // rows sorted by their (relabelled) first-column symbol
            for r in 0..n {
                row_of_first[relabel[l.get(r, cols[0])] as usize] = r;
            }
            for (i, &r) in row_of_first.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    form[i * n + j] = relabel[l.get(r, c)];
                }
            }
            f(&form);
        }
    }
}

/// Lexicographically least reduced form over the species of `l`.
pub fn species_key(l: &LatinSquare) -> Result<Vec<u8>, LatinError> {
    if l.order() > SPECIES_MAX_ORDER {
        return Err(LatinError::OrderTooLarge(l.order()));
    }
    let mut best: Option<Vec<u8>> = None;
    for roles in CONJUGATES {
        let conj = l.conjugate(roles);
        for_each_reduced_form(&conj, |form| {
            if best.as_deref().is_none_or(|b| form < b) {
                best = Some(form.to_vec());
            }
        });
    }
    Ok(best.expect("at least one form"))
}

/// Every reduced Latin square of order `n` (first row and column `0..n`).
pub fn reduced_squares(n: usize) -> Vec<LatinSquare> {
    fn fill(
        n: usize,
        pos: usize,
        grid: &mut [usize],
        rows: &mut [u64],
        cols: &mut [u64],
        out: &mut Vec<LatinSquare>,
    ) {
        if pos == n * n {
            out.push(LatinSquare {
                order: n,
                grid: grid.to_vec(),
            });
            return;
        }
        let (r, c) = (pos / n, pos % n);
        if r == 0 || c == 0 {
            return fill(n, pos + 1, grid, rows, cols, out);
        }
        let mut free = !(rows[r] | cols[c]) & ((1u64 << n) - 1);
        while free != 0 {
            let s = free.trailing_zeros() as usize;
            free &= free - 1;
            grid[pos] = s;
            rows[r] |= 1 << s;
            cols[c] |= 1 << s;
            fill(n, pos + 1, grid, rows, cols, out);
            rows[r] &= !(1 << s);
            cols[c] &= !(1 << s);
        }
    }
    assert!(
        (1..=8).contains(&n),
        "reduced square enumeration supports orders 1..=8"
    );
    let mut grid = vec![0; n * n];
    let mut rows = vec![0u64; n];
    let mut cols = vec![0u64; n];
    for i in 0..n {
        grid[i] = i;
        grid[i * n] = i;
        rows[i] |= 1 << i;
        cols[i] |= 1 << i;
    }
    let mut out = Vec::new();
    fill(n, 0, &mut grid, &mut rows, &mut cols, &mut out);
    out
}

/// One representative per species among the reduced squares of order `n`,
/// with the number of reduced squares in each species. Representatives are
/// the species keys themselves, in ascending order.
pub fn species_census(n: usize) -> Result<Vec<(LatinSquare, usize)>, LatinError> {
    if n > SPECIES_MAX_ORDER {
        return Err(LatinError::OrderTooLarge(n));
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut out = Vec::new();
    for sq in reduced_squares(n) {
        let bytes: Vec<u8> = sq.grid.iter().map(|&s| s as u8).collect();
        if seen.contains(&bytes) {
            continue;
        }
        let mut orbit: HashSet<Vec<u8>> = HashSet::new();
        for roles in CONJUGATES {
            for_each_reduced_form(&sq.conjugate(roles), |form| {
                if !orbit.contains(form) {
                    orbit.insert(form.to_vec());
                }
            });
        }
        let key = orbit.iter().min().expect("non-empty orbit").clone();
        let size = orbit.len();
        seen.extend(orbit);
        let rep = LatinSquare::from_flat(n, key.iter().map(|&s| s as usize).collect())?;
        out.push((rep, size));
    }
    out.sort_by(|a, b| a.0.grid.cmp(&b.0.grid));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyclic(n: usize) -> LatinSquare {
        LatinSquare::from_flat(n, (0..n * n).map(|i| (i / n + i % n) % n).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LatinSquare::from_rows(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(
            LatinSquare::from_rows(vec![vec![0, 1], vec![0, 1]]),
            Err(LatinError::DuplicateInColumn(0))
        );
        assert_eq!(
            LatinSquare::from_rows(vec![vec![0, 0], vec![1, 1]]),
            Err(LatinError::DuplicateInRow(0))
        );
        assert!(matches!(
            LatinSquare::from_rows(vec![vec![0, 2], vec![1, 0]]),
            Err(LatinError::SymbolOutOfRange { .. })
        ));
        assert!(matches!(
            LatinSquare::from_rows(vec![vec![0, 1]]),
            Err(LatinError::NotSquare { .. })
        ));
        assert_eq!(LatinSquare::from_rows(vec![]), Err(LatinError::Empty));
    }

    #[test]
    fn intercalate_is_involution() {
        let z4 = cyclic(4);
        // rows {0,2} cols {0,2}: symbols 0,2 / 2,0
        let t = z4.turn_intercalate(0, 2, 0, 2).unwrap();
        assert_eq!(t.get(0, 0), 2);
        assert_eq!(t.turn_intercalate(0, 2, 0, 2).unwrap(), z4);
        let changed = (0..16).filter(|&i| t.flat()[i] != z4.flat()[i]).count();
        assert_eq!(changed, 4);
        assert!(matches!(
            z4.turn_intercalate(0, 1, 0, 1),
            Err(LatinError::NotIntercalate { .. })
        ));
    }

    #[test]
    fn isotopy_round_trip() {
        let z5 = cyclic(5);
        let id: Vec<usize> = (0..5).collect();
        assert_eq!(z5.apply_isotopy(&id, &id, &id).unwrap(), z5);
        let swap = vec![1, 0, 2, 3, 4];
        let once = z5.apply_isotopy(&swap, &id, &id).unwrap();
        assert_eq!(once.apply_isotopy(&swap, &id, &id).unwrap(), z5);
        assert!(z5.apply_isotopy(&[0, 0, 1, 2, 3], &id, &id).is_err());
    }

    #[test]
    fn windows_and_subsquares() {
        let z6 = cyclic(6);
        let w = z6.window(&[0, 2, 4], &[0, 2, 4]).unwrap();
        assert_eq!(w.symbols, vec![0, 2, 4]);
        assert!(z6.is_subsquare(&w));
        let z5 = cyclic(5);
        assert_eq!(z5.window(&[0], &[0, 1]).unwrap().symbols, vec![0, 1]);
        assert!(!z5.is_subsquare(&z5.window(&[0, 1], &[0, 1]).unwrap()));
        assert!(z5.window(&[], &[0]).is_err());
    }

    #[test]
    fn window_symbols_bounded_below() {
        let z7 = cyclic(7);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut idx: Vec<usize> = (0..7).collect();
            idx.shuffle(&mut rng);
            let rows = idx[..3].to_vec();
            idx.shuffle(&mut rng);
            let cols = &idx[..4];
            let w = z7.window(&rows, cols).unwrap();
            assert!(w.symbols.len() >= 4);
        }
    }

    #[test]
    fn parse_and_print() {
        let z3 = cyclic(3);
        let text = z3.to_file_string();
        assert_eq!(text, "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert_eq!(LatinSquare::parse(&text).unwrap(), z3);
        assert!(LatinSquare::parse("2\n0 1\n").is_err());
        assert!(LatinSquare::parse("# comment\n1\n0\n").is_ok());
    }

    #[test]
    fn hash_depends_on_content() {
        assert_ne!(cyclic(3).hash_hex(), cyclic(4).hash_hex());
        assert_eq!(cyclic(3).hash_hex().len(), 64);
    }

    #[test]
    fn reduced_counts() {
        // classical counts of reduced Latin squares
        assert_eq!(reduced_squares(1).len(), 1);
        assert_eq!(reduced_squares(4).len(), 4);
        assert_eq!(reduced_squares(5).len(), 56);
        assert_eq!(reduced_squares(6).len(), 9408);
    }

    #[test]
    fn species_counts_small() {
        // orders 1..5 have 1, 1, 1, 2, 2 species
        let counts: Vec<usize> = (1..=5).map(|n| species_census(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2]);
        let census = species_census(4).unwrap();
        assert_eq!(census.iter().map(|(_, k)| k).sum::<usize>(), 4);
    }

    #[test]
    fn species_key_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let pool: Vec<LatinSquare> = reduced_squares(5)
            .into_iter()
            .chain(reduced_squares(6).into_iter().step_by(997))
            .collect();
        for trial in 0..100 {
            let l = &pool[trial % pool.len()];
            let n = l.order();
            let mut perms: Vec<Vec<usize>> = (0..3).map(|_| (0..n).collect()).collect();
            for p in perms.iter_mut() {
                p.shuffle(&mut rng);
            }
            let roles = CONJUGATES[trial % 6];
            let moved = l
                .apply_isotopy(&perms[0], &perms[1], &perms[2])
                .unwrap()
                .conjugate(roles);
            assert_eq!(species_key(&moved).unwrap(), species_key(l).unwrap());
        }
        let big = cyclic(8);
        assert_eq!(species_key(&big), Err(LatinError::OrderTooLarge(8)));
    }

    #[test]
    fn triple_serializes_as_array() {
        let t = Triple::new(1, 2, 3);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[1,2,3]");
        let back: Triple = serde_json::from_str("[1,2,3]").unwrap();
        assert_eq!(back, t);
    }
}
