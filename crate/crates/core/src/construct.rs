//! Explicit square families and their maximal partial transversal witnesses.
//!
//! `L*` is the Cayley table of `Z2 x Z2 x Z_{2m+q}` with one intercalate
//! turned; it is omniversal. `M*` is an isotope of the Cayley table of
//! `Z_{4m+2}` with one intercalate turned; it misses only length `2m+1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    self, find_maximal_of_length, verify_witness, Constraints, EngineError, PartialTransversal,
    SearchBudget, SearchOutcome,
};
use crate::group::{Group, Subgroup};
use crate::square::{LatinSquare, SubmatrixWindow, Triple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("length {len} outside the admissible range [{lo}, {hi}]")]
    LengthOutOfRange { len: usize, lo: usize, hi: usize },
    #[error("length {0} has no maximal partial transversal in this square")]
    LengthAbsent(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("witness failed verification: {0}")]
    WitnessVerificationFailed(String),
    #[error("cases do not tile the admissible range: missing {0:?}")]
    CoverageGap(Vec<usize>),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `n = 8m + 4q` with `m ≥ 1` and `q ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LStarParams {
    pub m: usize,
    pub q: usize,
}

impl LStarParams {
    pub fn new(m: usize, q: usize) -> Result<Self, ConstructError> {
        if m == 0 || q > 1 {
            return Err(ConstructError::BadParams(format!(
                "need m >= 1 and q in {{0,1}}, got m={m}, q={q}"
            )));
        }
        Ok(LStarParams { m, q })
    }

    pub fn order(&self) -> usize {
        8 * self.m + 4 * self.q
    }
}

/// The generator pair `{v, w} = {y, z}` as coordinates in `Z2 x Z2`.
type Gen = (usize, usize);
const Y: Gen = (1, 0);
const Z: Gen = (0, 1);

/// `Z2 x Z2 x Z_k` with elements listed coset by coset (`H, yH, zH, yzH`),
/// each coset as `1, x, x^2, ...`.
struct Klein {
    k: usize,
    g: Group,
}

impl Klein {
    fn new(k: usize) -> Self {
        let elems: Vec<(usize, usize, usize)> = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .flat_map(|&(a, b)| (0..k).map(move |i| (a, b, i)))
            .collect();
        let g = Group::from_elements(
            format!("Z2^2xZ{k}"),
            elems,
            |&(a1, b1, i1), &(a2, b2, i2)| (a1 ^ a2, b1 ^ b2, (i1 + i2) % k),
        )
        .expect("abelian product is a group");
        Klein { k, g }
    }

    /// `(y^a z^b) x^i` as an index.
    fn el(&self, (a, b): Gen, i: i64) -> usize {
        (a + 2 * b) * self.k + i.rem_euclid(self.k as i64) as usize
    }

    fn x(&self, i: i64) -> usize {
        self.el((0, 0), i)
    }

    fn coset(&self, e: usize) -> Gen {
        let c = e / self.k;
        (c % 2, c / 2)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.g.mul(a, b)
    }
}

/// The Cayley table of `Z2^2 x Z_{2m+q}` in coset order.
pub fn build_l(p: LStarParams) -> LatinSquare {
    Klein::new(2 * p.m + p.q).g.cayley_table()
}

/// `L*`: the Cayley table with the intercalate on rows and columns `{1, y}` turned.
pub fn build_l_star(p: LStarParams) -> LatinSquare {
    let y = 2 * p.m + p.q;
    build_l(p)
        .turn_intercalate(0, y, 0, y)
        .expect("rows and columns {1, y} carry an intercalate")
}

fn cells_to_pt(
    l: &LatinSquare,
    triples: Vec<Triple>,
) -> Result<PartialTransversal, ConstructError> {
    for t in &triples {
        if l.get(t.row, t.col) != t.sym {
            return Err(ConstructError::WitnessVerificationFailed(format!(
                "triple {t} does not match the square"
            )));
        }
    }
    PartialTransversal::new(l, triples)
        .map_err(|e| ConstructError::WitnessVerificationFailed(e.to_string()))
}

fn verified(
    l: &LatinSquare,
    pt: PartialTransversal,
    len: usize,
) -> Result<PartialTransversal, ConstructError> {
    verify_witness(l, &pt, len)
        .map_err(|e| ConstructError::WitnessVerificationFailed(e.to_string()))?;
    Ok(pt)
}

fn search_or_fail(
    l: &LatinSquare,
    len: usize,
    cons: &Constraints,
) -> Result<PartialTransversal, ConstructError> {
    match find_maximal_of_length(l, len, &SearchBudget::exhaustive(), cons)?.outcome {
        SearchOutcome::Achieved(w) => Ok(w),
        _ => Err(ConstructError::WitnessVerificationFailed(format!(
            "search found no witness of length {len}"
        ))),
    }
}

fn transversal_or_fail(
    l: &LatinSquare,
    seed: &[Triple],
    forbidden: &[(usize, usize)],
) -> Result<PartialTransversal, ConstructError> {
    match engine::find_transversal(l, seed, forbidden, None)?.outcome {
        SearchOutcome::Achieved(w) => Ok(w),
        _ => Err(ConstructError::WitnessVerificationFailed(
            "search found no transversal".into(),
        )),
    }
}

/// How a given length of `L*` is witnessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LStarCase {
    /// A transversal avoiding the turned cells.
    Transversal,
    /// A transversal of `L` through `(1,1,1)` with that triple removed.
    NearTransversal,
    /// A transversal of the `zH ∪ yzH` subsquare (`q = 0`).
    Subsquare,
    /// The explicit length `8m+2` family (`q = 1`).
    Explicit,
    /// `T_{k,q}` for the given `k`.
    Tkq(i64),
}

/// Assigns a witness case to every admissible length, or reports a gap.
pub fn l_star_cases(p: LStarParams) -> Result<Vec<(usize, LStarCase)>, ConstructError> {
    let n = p.order();
    let (m, q) = (p.m as i64, p.q as i64);
    let mut cases = vec![
        (n, LStarCase::Transversal),
        (n - 1, LStarCase::NearTransversal),
    ];
    if q == 0 {
        cases.push((4 * p.m, LStarCase::Subsquare));
    } else {
        cases.push((8 * p.m + 2, LStarCase::Explicit));
    }
    for k in (1 - q)..=(4 * m + q - 2) {
        cases.push(((4 * m + 2 * q + k) as usize, LStarCase::Tkq(k)));
    }
    cases.sort_by_key(|c| c.0);
    let (lo, hi) = engine::lemma_range(n);
    let lengths: Vec<usize> = cases.iter().map(|c| c.0).collect();
    let gaps: Vec<usize> = (lo..=hi).filter(|l| !lengths.contains(l)).collect();
    let mut dedup = lengths.clone();
    dedup.dedup();
    if !gaps.is_empty() || dedup.len() != lengths.len() || lengths.iter().any(|&l| l < lo || l > hi)
    {
        return Err(ConstructError::CoverageGap(gaps));
    }
    Ok(cases)
}

/// A maximal partial transversal of `L*` of length `len`, built as in the
/// omniversality proof and verified before return.
pub fn l_star_witness(p: LStarParams, len: usize) -> Result<PartialTransversal, ConstructError> {
    let n = p.order();
    let (lo, hi) = engine::lemma_range(n);
    if len < lo || len > hi {
        return Err(ConstructError::LengthOutOfRange { len, lo, hi });
    }
    let case = l_star_cases(p)?
        .into_iter()
        .find(|c| c.0 == len)
        .map(|c| c.1)
        .expect("cases tile the range");
    let lstar = build_l_star(p);
    let kl = Klein::new(2 * p.m + p.q);
    let y = kl.el(Y, 0);
    let turned = [(0, 0), (0, y), (y, 0), (y, y)];
    let pt = match case {
        LStarCase::Transversal => transversal_or_fail(&lstar, &[], &turned)?,
        LStarCase::NearTransversal => {
            let l = build_l(p);
            let full = transversal_or_fail(&l, &[Triple::new(0, 0, 0)], &turned[1..])?;
            let rest: Vec<Triple> = full
                .into_triples()
                .into_iter()
                .filter(|t| *t != Triple::new(0, 0, 0))
                .collect();
            cells_to_pt(&lstar, rest)?
        }
        LStarCase::Subsquare => {
            let block: Vec<usize> = (0..kl.k as i64)
                .flat_map(|i| [kl.el(Z, i), kl.el((1, 1), i)])
                .collect();
            let cons = Constraints {
                rows: Some(block.clone()),
                cols: Some(block),
                ..Constraints::default()
            };
            search_or_fail(&lstar, len, &cons)?
        }
        LStarCase::Explicit => {
            let yz = (1, 1);
            let mut triples = Vec::new();
            for i in 1..=(2 * p.m as i64) {
                for (r, c) in [
                    (kl.x(i), kl.x(i)),
                    (kl.el(Z, i), kl.el(yz, i)),
                    (kl.el(yz, i), kl.el(Y, i)),
                    (kl.el(Y, i), kl.el(Z, i + 1)),
                ] {
                    triples.push(Triple::new(r, c, kl.mul(r, c)));
                }
            }
            triples.push(Triple::new(0, 0, y));
            let (r, c) = (kl.el(Y, 0), kl.el(yz, 0));
            triples.push(Triple::new(r, c, kl.mul(r, c)));
            cells_to_pt(&lstar, triples)?
        }
        LStarCase::Tkq(k) => cells_to_pt(&lstar, t_kq(&kl, p, k))?,
    };
    verified(&lstar, pt, len)
}

/// `T_{k,q}` as a list of triples of `L*`.
fn t_kq(kl: &Klein, p: LStarParams, k: i64) -> Vec<Triple> {
    let (m, q) = (p.m as i64, p.q as i64);
    let j = (k + q - 1).div_euclid(2) as usize;
    assert!(j < 2 * p.m, "j = {j} outside 0..2m");
    let (w, v) = if k % 2 == 0 { (Y, Z) } else { (Z, Y) };
    let yz = (1, 1);
    let tr = |r: usize, c: usize| Triple::new(r, c, kl.mul(r, c));

    let mut u_w: Vec<Triple> = Vec::new();
    for i in 1..=(m - 1 + q) {
        u_w.push(tr(kl.x(i), kl.x(i)));
    }
    for i in 0..m {
        u_w.push(tr(kl.el(w, i + 1), kl.el(w, i)));
    }
    for i in 0..m {
        u_w.push(tr(kl.x(m + q + i), kl.el(w, m + q + i)));
    }
    for i in 0..m {
        u_w.push(tr(kl.el(w, m + 1 + q + i), kl.x(m + q + i)));
    }

    let avoid_rows = [kl.x(0), kl.x(m), kl.x(-m), kl.el(w, m + 1)];
    let avoid_cols = [kl.x(0), kl.x(m), kl.el(w, m)];
    let avoid_syms = [kl.x(0), kl.x(2 * m), kl.el(w, 0)];
    let eligible: Vec<Triple> = u_w
        .iter()
        .copied()
        .filter(|t| {
            kl.coset(t.sym) == (0, 0)
                && t.sym != kl.x(2 * m)
                && !avoid_rows.contains(&t.row)
                && !avoid_cols.contains(&t.col)
                && !avoid_syms.contains(&t.sym)
        })
        .collect();
    assert_eq!(eligible.len(), 2 * p.m - 1, "eligible triples for K");
    assert!(eligible.len() >= j, "not enough eligible triples for K");
    let kset: Vec<Triple> = eligible[..j].to_vec();

    let v_el = kl.el(v, 0);
    let vw = kl.el(yz, 0);
    let gamma = |t: &Triple| Triple::new(t.row, kl.mul(t.col, v_el), kl.mul(t.sym, v_el));
    let rho = |t: &Triple| Triple::new(kl.mul(vw, t.row), t.col, kl.mul(vw, t.sym));
    let sigma = |t: &Triple| {
        let in_h = kl.coset(t.row) == (0, 0);
        let (rm, cm) = if in_h { (-m, m) } else { (m, -m) };
        assert_eq!(in_h, kl.coset(t.col) == (0, 0));
        Triple::new(
            kl.mul(kl.el(yz, rm), t.row),
            kl.mul(t.col, kl.el(yz, cm)),
            t.sym,
        )
    };

    let mut out: Vec<Triple> = u_w.iter().filter(|t| !kset.contains(t)).copied().collect();
    out.extend(kset.iter().map(gamma));
    out.extend(kset.iter().map(rho));
    out.extend(kset.iter().map(sigma));
    assert_eq!(out.len() as i64, 4 * m - 1 + q + 2 * j as i64);

    let one = kl.x(0);
    let y = kl.el(Y, 0);
    let extras: Vec<Triple> = match (k % 2 != 0, q) {
        (true, 0) => vec![Triple::new(one, one, y), tr(kl.el(yz, m), kl.el(yz, m))],
        (true, _) => vec![
            Triple::new(one, one, y),
            tr(kl.el(Z, m + 1), kl.el(Z, m)),
            tr(kl.el(yz, 0), kl.el(Y, 0)),
        ],
        (false, 0) => vec![
            tr(one, kl.el(Z, 0)),
            tr(kl.el(yz, m), kl.el(yz, m)),
            tr(kl.el(yz, 0), one),
        ],
        (false, _) => vec![Triple::new(one, one, y), tr(kl.el(Y, m + 1), kl.el(Y, m))],
    };
    out.extend(extras);
    out
}

/// `M_{4m+2}`: four blocks of order `2m+1` isotopic to the Cayley table of `Z_{4m+2}`.
pub fn build_m(m: usize) -> LatinSquare {
    let h = 2 * m + 1;
    let n = 2 * h;
    let mut grid = vec![0; n * n];
    for i in 0..h {
        for j in 0..h {
            let base = 2 * (i + j);
            grid[i * n + j] = base % n;
            grid[i * n + h + j] = (base + 1) % n;
            grid[(h + i) * n + j] = (base + 1) % n;
            grid[(h + i) * n + h + j] = (base + 2) % n;
        }
    }
    LatinSquare::from_flat(n, grid).expect("block construction is latin")
}

/// `M*_{4m+2}`: `M` with `a_00 = 2m+1 = d_mm` and `b_0m = 0 = c_m0`.
pub fn build_m_star(m: usize) -> LatinSquare {
    let h = 2 * m + 1;
    build_m(m)
        .turn_intercalate(0, h + m, 0, h + m)
        .expect("the four overridden cells form an intercalate")
}

/// The unique `i ∈ 1..=m` with `4i + a ≡ 0 (mod 4m+2)`, which exists iff `a ≡ 2 (mod 4)`.
pub fn congruence_solution(a: usize, m: usize) -> Option<usize> {
    (a % 4 == 2 && a <= 4 * m + 1).then(|| m - (a - 2) / 4)
}

/// A maximal partial transversal of `M*_{4m+2}` of length `len`.
pub fn m_star_witness(m: usize, len: usize) -> Result<PartialTransversal, ConstructError> {
    if m == 0 {
        return Err(ConstructError::BadParams("m must be at least 1".into()));
    }
    let h = 2 * m + 1;
    let n = 2 * h;
    if len == h {
        return Err(ConstructError::LengthAbsent(len));
    }
    if len < 2 * m + 2 || len > n {
        return Err(ConstructError::LengthOutOfRange {
            len,
            lo: 2 * m + 2,
            hi: n,
        });
    }
    let l = build_m_star(m);
    let a = |i: usize, j: usize| (i % h, j % h);
    let b = |i: usize, j: usize| (i % h, h + j % h);
    let c = |i: usize, j: usize| (h + i % h, j % h);
    let d = |i: usize, j: usize| (h + i % h, h + j % h);
    let mut cells: Vec<(usize, usize)> = Vec::new();
    if len == n {
        return transversal_or_fail(&l, &[], &[]);
    } else if len % 2 == 1 {
        let k = (len - 2 * m - 3) / 2;
        cells.extend((0..=k).map(|i| a(i, i + k + 1)));
        cells.extend((0..=k).map(|j| d(j + k + 1, j)));
        cells.extend((0..=k).map(|i| c(i, i)));
        cells.extend((k + 1..=2 * m).map(|j| b(j, j)));
    } else {
        let k = (len - 2 * m - 2) / 2;
        cells.extend((1..=k).map(|i| c(i, i)));
        cells.push(c(m, 0));
        cells.extend((k + 1..=2 * m).map(|j| b(j, j)));
        cells.push(b(0, 0));
        if m.is_multiple_of(2) {
            debug_assert_eq!(congruence_solution(2 * m, m), None);
            cells.extend((1..=k).map(|i| a(i, i + m)));
            cells.extend((1..=k.min(m / 2 - 1)).map(|j| d(j + m, j)));
            cells.extend((m / 2..=k).map(|j| d(j + m + 2, j)));
        } else {
            debug_assert_eq!(congruence_solution(2 * m + 2, m), None);
            let half = (m - 1) / 2;
            cells.extend((1..=k.min(half)).map(|i| a(i, i + m)));
            cells.extend((m.div_ceil(2)..=k).map(|j| a(j, j + m + 1)));
            cells.extend((1..=k.min(half)).map(|j| d(j + m, j)));
            cells.extend((m.div_ceil(2)..=k).map(|i| d(i + m + 1, i)));
        }
    }
    let triples = cells.into_iter().map(|(r, c)| l.triple(r, c)).collect();
    verified(&l, cells_to_pt(&l, triples)?, len)
}

/// Triples of a near-transversal of the subsquare `a`, found by search.
pub fn subsquare_near_transversal(
    l: &LatinSquare,
    a: &SubmatrixWindow,
) -> Result<PartialTransversal, ConstructError> {
    if !l.is_subsquare(a) {
        return Err(ConstructError::Precondition(
            "window is not a subsquare".into(),
        ));
    }
    let k = a.rows.len();
    let cons = Constraints {
        rows: Some(a.rows.clone()),
        cols: Some(a.cols.clone()),
        require_maximal: false,
        ..Constraints::default()
    };
    match find_maximal_of_length(l, k - 1, &SearchBudget::exhaustive(), &cons)?.outcome {
        SearchOutcome::Achieved(w) => Ok(w),
        _ => Err(ConstructError::Precondition(
            "subsquare has no near-transversal".into(),
        )),
    }
}

/// A maximal partial transversal of length `n/2 + 2x` from an order-`n/2`
/// subsquare `a` and a near-transversal of it.
pub fn every_second_witness(
    l: &LatinSquare,
    a: &SubmatrixWindow,
    near_t: &PartialTransversal,
    x: usize,
) -> Result<PartialTransversal, ConstructError> {
    let n = l.order();
    let half = n / 2;
    if !n.is_multiple_of(2) || a.rows.len() != half || !l.is_subsquare(a) {
        return Err(ConstructError::Precondition(
            "need a subsquare of order n/2".into(),
        ));
    }
    if x == 0 || 8 * x > n {
        return Err(ConstructError::Precondition(format!(
            "x = {x} outside 1..=n/8"
        )));
    }
    let in_rows = |r: usize| a.rows.binary_search(&r).is_ok();
    let in_cols = |c: usize| a.cols.binary_search(&c).is_ok();
    let in_syms = |s: usize| a.symbols.binary_search(&s).is_ok();
    if near_t.len() != half - 1
        || near_t
            .triples()
            .iter()
            .any(|t| !in_rows(t.row) || !in_cols(t.col))
    {
        return Err(ConstructError::Precondition(
            "near_t is not a near-transversal of the subsquare".into(),
        ));
    }
    let missing = *a
        .symbols
        .iter()
        .find(|&&s| near_t.triples().iter().all(|t| t.sym != s))
        .expect("one symbol is missing");
    let d_rows: Vec<usize> = (0..n).filter(|&r| !in_rows(r)).collect();
    let d_cols: Vec<usize> = (0..n).filter(|&c| !in_cols(c)).collect();

    // length-x partial transversal of D through the missing symbol
    let (r0, c0) = d_rows
        .iter()
        .flat_map(|&r| d_cols.iter().map(move |&c| (r, c)))
        .find(|&(r, c)| l.get(r, c) == missing)
        .expect("D is a subsquare on the symbols of A");
    let mut chosen = vec![l.triple(r0, c0)];
    let free = |chosen: &[Triple], r: usize, c: usize| {
        let s = l.get(r, c);
        chosen
            .iter()
            .all(|t| t.row != r && t.col != c && t.sym != s)
    };
    while chosen.len() < x {
        let (r, c) = d_rows
            .iter()
            .flat_map(|&r| d_cols.iter().map(move |&c| (r, c)))
            .find(|&(r, c)| free(&chosen, r, c))
            .ok_or_else(|| {
                ConstructError::WitnessVerificationFailed("greedy extension in D stalled".into())
            })?;
        chosen.push(l.triple(r, c));
    }
    let d_syms: Vec<usize> = chosen.iter().map(|t| t.sym).collect();
    chosen.extend(near_t.triples().iter().filter(|t| !d_syms.contains(&t.sym)));
    assert_eq!(chosen.len(), half);
    debug_assert!(a.symbols.iter().all(|&s| chosen.iter().any(|t| t.sym == s)));

    // one triple from B in every unused row of A, then one from C in every unused column of A
    for &r in &a.rows {
        if chosen.iter().any(|t| t.row == r) {
            continue;
        }
        let c = d_cols
            .iter()
            .copied()
            .find(|&c| free(&chosen, r, c))
            .ok_or_else(|| {
                ConstructError::WitnessVerificationFailed(format!("row {r} of B has no free cell"))
            })?;
        chosen.push(l.triple(r, c));
    }
    for &c in &a.cols {
        if chosen.iter().any(|t| t.col == c) {
            continue;
        }
        let r = d_rows
            .iter()
            .copied()
            .find(|&r| free(&chosen, r, c))
            .ok_or_else(|| {
                ConstructError::WitnessVerificationFailed(format!(
                    "column {c} of C has no free cell"
                ))
            })?;
        chosen.push(l.triple(r, c));
    }
    debug_assert!(chosen
        .iter()
        .all(|t| in_syms(t.sym) == (in_rows(t.row) == in_cols(t.col))));
    verified(l, cells_to_pt(l, chosen)?, half + 2 * x)
}

/// A maximal partial transversal of length `3n/5` in the Cayley table of
/// `g`, where `nrm` is normal of index 5 and its own table has a transversal.
pub fn three_fifths_witness(
    g: &Group,
    nrm: &Subgroup,
) -> Result<PartialTransversal, ConstructError> {
    let n = g.order();
    if nrm.len() * 5 != n || !g.is_normal(nrm) {
        return Err(ConstructError::Precondition(
            "need a normal subgroup of index 5".into(),
        ));
    }
    let gen = (0..n).find(|&e| !nrm.contains(e)).expect("proper subgroup");
    let cosets: Vec<Vec<usize>> = (0..5).map(|i| nrm.left_coset(g, g.pow(gen, i))).collect();
    let table = g.cayley_table();
    let mut triples = Vec::new();
    for (bi, bj) in [(2, 3), (3, 4), (4, 2)] {
        let cons = Constraints {
            rows: Some(cosets[bi].clone()),
            cols: Some(cosets[bj].clone()),
            require_maximal: false,
            ..Constraints::default()
        };
        match find_maximal_of_length(&table, nrm.len(), &SearchBudget::exhaustive(), &cons)?.outcome
        {
            SearchOutcome::Achieved(w) => triples.extend(w.into_triples()),
            _ => {
                return Err(ConstructError::Precondition(
                    "the normal subgroup has no transversal".into(),
                ))
            }
        }
    }
    verified(&table, cells_to_pt(&table, triples)?, 3 * nrm.len())
}

/// The two literal order-8 squares with unusual spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exceptional {
    /// Near-omniversal with missing length 8.
    Mu8,
    /// Only lengths 6 and 7.
    TwoLengths,
}

pub fn exceptional_order8(which: Exceptional) -> LatinSquare {
    let rows: [&str; 8] = match which {
        Exceptional::Mu8 => [
            "01234567", "10325476", "23016745", "32107654", "45673210", "54760123", "67452301",
            "76541032",
        ],
        Exceptional::TwoLengths => [
            "01234567", "12305674", "23016745", "30127456", "76540321", "65473210", "54762103",
            "47651032",
        ],
    };
    let grid = rows
        .iter()
        .map(|r| r.bytes().map(|b| (b - b'0') as usize).collect())
        .collect();
    LatinSquare::from_rows(grid).expect("literal squares are latin")
}
