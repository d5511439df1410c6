//! Product-set windows of Cayley tables and when they extend to subsquares.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Group, Subgroup};
use crate::square::SubmatrixWindow;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("group is not abelian")]
    NonAbelian,
    #[error("element set is empty")]
    EmptySet,
    #[error("element {0} outside the group")]
    ElementOutOfRange(usize),
    #[error("row set must contain the identity")]
    IdentityMissing,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("neither alternative of the product-set bound holds for X={x:?}, Y={y:?}")]
    OlsonViolated { x: Vec<usize>, y: Vec<usize> },
}

fn normalize(g: &Group, s: &[usize]) -> Result<Vec<usize>, ExtensionError> {
    if s.is_empty() {
        return Err(ExtensionError::EmptySet);
    }
    if let Some(&e) = s.iter().find(|&&e| e >= g.order()) {
        return Err(ExtensionError::ElementOutOfRange(e));
    }
    Ok(s.iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// `XY` as a sorted set.
pub fn product_set(g: &Group, x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter()
        .flat_map(|&a| y.iter().map(move |&b| g.mul(a, b)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Rows `X`, columns `Y` and the symbol set `Z = XY` of a Cayley table window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWindow {
    pub group: String,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

impl ProductWindow {
    pub fn new(g: &Group, x: &[usize], y: &[usize]) -> Result<Self, ExtensionError> {
        let x = normalize(g, x)?;
        let y = normalize(g, y)?;
        let z = product_set(g, &x, &y);
        Ok(ProductWindow {
            group: g.name().to_string(),
            x,
            y,
            z,
        })
    }

    pub fn m(&self) -> usize {
        self.z.len()
    }

    pub fn alpha(&self) -> f64 {
        self.x.len() as f64 / self.m() as f64
    }

    pub fn beta(&self) -> f64 {
        self.y.len() as f64 / self.m() as f64
    }

    /// `|X| > m/2` and `|Y| > 2m/3`, in exact arithmetic.
    pub fn meets_conjecture_bounds(&self) -> bool {
        let m = self.m();
        2 * self.x.len() > m && 3 * self.y.len() > 2 * m
    }

    /// `1/2 < α ≤ β ≤ 1` and `α/2 + β > 1`, in exact arithmetic.
    pub fn meets_general_bounds(&self) -> bool {
        let (a, b, m) = (self.x.len(), self.y.len(), self.m());
        2 * a > m && a <= b && b <= m && a + 2 * b > 2 * m
    }
}

/// `{h : hZ = Z}`.
pub fn stabilizer(g: &Group, z: &[usize]) -> Result<Subgroup, ExtensionError> {
    let z = normalize(g, z)?;
    let elems: Vec<usize> = (0..g.order())
        .filter(|&h| {
            let mut moved: Vec<usize> = z.iter().map(|&e| g.mul(h, e)).collect();
            moved.sort_unstable();
            moved == z
        })
        .collect();
    Ok(Subgroup::new(g, elems).expect("stabilizers are subgroups"))
}

/// Checks `|X+Y| ≥ |X| + |Y| − |H|` with `H` the stabilizer of `X+Y`.
pub fn kneser_check(g: &Group, x: &[usize], y: &[usize]) -> Result<bool, ExtensionError> {
    if !g.is_abelian() {
        return Err(ExtensionError::NonAbelian);
    }
    let w = ProductWindow::new(g, x, y)?;
    let h = stabilizer(g, &w.z)?;
    Ok(w.z.len() + h.len() >= w.x.len() + w.y.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OlsonCase {
    /// `XZ = Z`.
    Absorbing,
    /// `|Z| ≥ |X|/2 + |Y|`.
    Bounded,
}

pub fn olson_check(g: &Group, x: &[usize], y: &[usize]) -> Result<OlsonCase, ExtensionError> {
    let w = ProductWindow::new(g, x, y)?;
    if w.x.first() != Some(&0) {
        return Err(ExtensionError::IdentityMissing);
    }
    if product_set(g, &w.x, &w.z) == w.z {
        Ok(OlsonCase::Absorbing)
    } else if 2 * w.z.len() >= w.x.len() + 2 * w.y.len() {
        Ok(OlsonCase::Bounded)
    } else {
        Err(ExtensionError::OlsonViolated { x: w.x, y: w.y })
    }
}

fn subsquare_window(g: &Group, rows: &[usize], cols: &[usize]) -> Option<SubmatrixWindow> {
    let table = g.cayley_table();
    let w = table.window(rows, cols).ok()?;
    table.is_subsquare(&w).then_some(w)
}

/// `X' = X+H`, `Y' = Y+H` for the stabilizer `H` of `Z`; present iff they span an `m x m` subsquare.
pub fn extend_abelian(
    g: &Group,
    x: &[usize],
    y: &[usize],
) -> Result<Option<SubmatrixWindow>, ExtensionError> {
    if !g.is_abelian() {
        return Err(ExtensionError::NonAbelian);
    }
    let w = ProductWindow::new(g, x, y)?;
    let h = stabilizer(g, &w.z)?;
    let xp = product_set(g, &w.x, h.elements());
    let yp = product_set(g, &w.y, h.elements());
    if xp.len() != w.m() || yp.len() != w.m() {
        return Ok(None);
    }
    let s = subsquare_window(g, &xp, &yp);
    debug_assert!(s.as_ref().is_none_or(|s| s.symbols == w.z));
    Ok(s)
}

/// Translates rows by `(min X)^-1`, then tests whether `Z` is a coset of `H = <X>`.
pub fn extend_general(
    g: &Group,
    x: &[usize],
    y: &[usize],
) -> Result<Option<SubmatrixWindow>, ExtensionError> {
    let w = ProductWindow::new(g, x, y)?;
    let a = g.inv(w.x[0]);
    let xt: Vec<usize> = w.x.iter().map(|&e| g.mul(a, e)).collect();
    let zt: Vec<usize> = product_set(g, &xt, &w.y);
    let h = g.closure(&xt);
    if product_set(g, h.elements(), &zt) != zt || zt.len() != h.len() {
        return Ok(None);
    }
    let rows = h.left_coset(g, w.x[0]);
    let s = subsquare_window(g, &rows, &zt);
    debug_assert!(s.as_ref().is_none_or(|s| s.symbols == w.z));
    Ok(s)
}

/// An `m x m` subsquare containing the window, where `m = |XY|`, if one exists.
/// Subsquares of a Cayley table are blocks `xK x Ky`, so it is enough to try
/// subgroups `K` of order `m` containing `x^-1 X` and `Y y^-1`.
pub fn containing_subsquare(
    g: &Group,
    x: &[usize],
    y: &[usize],
) -> Result<Option<SubmatrixWindow>, ExtensionError> {
    let w = ProductWindow::new(g, x, y)?;
    let (x0, y0) = (w.x[0], w.y[0]);
    let (xi, yi) = (g.inv(x0), g.inv(y0));
    let mut gens: Vec<usize> = w.x.iter().map(|&e| g.mul(xi, e)).collect();
    gens.extend(w.y.iter().map(|&e| g.mul(e, yi)));
    let k0 = g.closure(&gens);
    for k in g
        .all_subgroups()
        .iter()
        .filter(|k| k.len() == w.m() && k0.elements().iter().all(|&e| k.contains(e)))
    {
        if let Some(s) = subsquare_window(g, &k.left_coset(g, x0), &k.right_coset(g, y0)) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Exhaustive check over all `m`-subsets of rows and columns that contain the window.
pub fn extendable_exhaustive(g: &Group, x: &[usize], y: &[usize]) -> Result<bool, ExtensionError> {
    let w = ProductWindow::new(g, x, y)?;
    let (n, m) = (g.order(), w.m());
    if w.x.len() > m || w.y.len() > m {
        return Ok(false);
    }
    let table = g.cayley_table();
    let rest_rows: Vec<usize> = (0..n).filter(|e| !w.x.contains(e)).collect();
    let rest_cols: Vec<usize> = (0..n).filter(|e| !w.y.contains(e)).collect();
    for extra_r in rest_rows.iter().copied().combinations(m - w.x.len()) {
        let rows: Vec<usize> = w.x.iter().copied().chain(extra_r).collect();
        for extra_c in rest_cols.iter().copied().combinations(m - w.y.len()) {
            let cols: Vec<usize> = w.y.iter().copied().chain(extra_c).collect();
            let s = table.window(&rows, &cols).expect("indices in range");
            if table.is_subsquare(&s) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn check_tightness_input(
    g: &Group,
    h: &Subgroup,
    elem: usize,
    powers: &[usize],
) -> Result<(), ExtensionError> {
    if elem >= g.order() {
        return Err(ExtensionError::ElementOutOfRange(elem));
    }
    if !g.is_normal(h) {
        return Err(ExtensionError::NotNormal);
    }
    for &k in powers {
        if h.contains(g.pow(elem, k)) {
            return Err(ExtensionError::Precondition(format!("g^{k} lies in H")));
        }
    }
    Ok(())
}

/// Rows `H`, columns `H ∪ gH`: a `m/2 x m` window with `m = 2|H|` and no containing subsquare.
pub fn counterexample_ex41(
    g: &Group,
    h: &Subgroup,
    elem: usize,
) -> Result<ProductWindow, ExtensionError> {
    check_tightness_input(g, h, elem, &[1, 2])?;
    let cols: Vec<usize> = h
        .elements()
        .iter()
        .copied()
        .chain(h.left_coset(g, elem))
        .collect();
    let w = ProductWindow::new(g, h.elements(), &cols)?;
    assert_eq!(w.m(), 2 * h.len());
    let g2h = h.left_coset(g, g.pow(elem, 2));
    assert!(
        g2h.iter().any(|e| !w.z.contains(e)),
        "g^2 H must escape H ∪ gH"
    );
    assert_eq!(containing_subsquare(g, &w.x, &w.y)?, None);
    Ok(w)
}

/// Rows `H ∪ gH`, columns `H ∪ g^-1 H`: a `2m/3 x 2m/3` window with `m = 3|H|` and no containing subsquare.
pub fn counterexample_ex42(
    g: &Group,
    h: &Subgroup,
    elem: usize,
) -> Result<ProductWindow, ExtensionError> {
    check_tightness_input(g, h, elem, &[1, 2, 3])?;
    let rows: Vec<usize> = h
        .elements()
        .iter()
        .copied()
        .chain(h.left_coset(g, elem))
        .collect();
    let cols: Vec<usize> = h
        .elements()
        .iter()
        .copied()
        .chain(h.left_coset(g, g.inv(elem)))
        .collect();
    let w = ProductWindow::new(g, &rows, &cols)?;
    assert_eq!(w.m(), 3 * h.len());
    let g2h = h.left_coset(g, g.pow(elem, 2));
    assert!(
        g2h.iter().any(|e| !w.z.contains(e)),
        "g^2 H must escape the symbol set"
    );
    assert_eq!(containing_subsquare(g, &w.x, &w.y)?, None);
    Ok(w)
}

/// Whether a rectangle with no repeated symbol in any row or column embeds
/// in a Latin square of order `n`: every one of the `n` symbols must occur
/// at least `rows + cols − n` times.
pub fn ryser_embeddable(r: &[Vec<usize>], n: usize) -> Result<bool, ExtensionError> {
    let rows = r.len();
    let cols = r.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(ExtensionError::Malformed("empty matrix".into()));
    }
    if r.iter().any(|row| row.len() != cols) {
        return Err(ExtensionError::Malformed("ragged rows".into()));
    }
    if r.iter().any(|row| !row.iter().all_unique()) {
        return Err(ExtensionError::Malformed("repeated symbol in a row".into()));
    }
    if (0..cols).any(|c| !r.iter().map(|row| row[c]).all_unique()) {
        return Err(ExtensionError::Malformed(
            "repeated symbol in a column".into(),
        ));
    }
    if rows > n || cols > n {
        return Ok(false);
    }
    let counts = r.iter().flatten().counts();
    if counts.len() > n {
        return Ok(false);
    }
    let need = (rows + cols).saturating_sub(n);
    let absent_ok = counts.len() == n || need == 0;
    Ok(absent_ok && counts.values().all(|&c| c >= need))
}

/// Random `X`, `Y` drawn either from a coset block of a random subgroup or
/// from the whole group.
pub fn random_window(g: &Group, rng: &mut impl Rng) -> ProductWindow {
    let n = g.order();
    let (xs, ys): (Vec<usize>, Vec<usize>) = if rng.gen_bool(0.7) {
        let subs = g.all_subgroups();
        let k = &subs[rng.gen_range(0..subs.len())];
        (
            k.left_coset(g, rng.gen_range(0..n)),
            k.right_coset(g, rng.gen_range(0..n)),
        )
    } else {
        ((0..n).collect(), (0..n).collect())
    };
    let pick = |pool: &[usize], rng: &mut dyn rand::RngCore| {
        let size = rng.gen_range(1..=pool.len());
        let mut v = pool.to_vec();
        v.shuffle(rng);
        v.truncate(size);
        v
    };
    let x = pick(&xs, rng);
    let y = pick(&ys, rng);
    ProductWindow::new(g, &x, &y).expect("non-empty in-range sets")
}

/// One line of the conjecture trial log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureTrial {
    pub trial: u64,
    pub seed: u64,
    pub group: String,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub m: usize,
    pub alpha: f64,
    pub beta: f64,
    pub extends: bool,
}

/// Samples windows meeting `α > 1/2, β > 2/3` in non-abelian groups and
/// records whether each lies in an `m x m` subsquare. Each trial draws from
/// its own generator seeded by `root_seed + trial`.
pub fn conjecture_trials(groups: &[Group], trials: u64, root_seed: u64) -> Vec<ConjectureTrial> {
    let pool: Vec<&Group> = groups.iter().filter(|g| !g.is_abelian()).collect();
    if pool.is_empty() {
        return Vec::new();
    }
    (0..trials)
        .map(|trial| {
            let seed = root_seed.wrapping_add(trial);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let g = pool[rng.gen_range(0..pool.len())];
                let w = random_window(g, &mut rng);
                if !w.meets_conjecture_bounds() {
                    continue;
                }
                let extends = containing_subsquare(g, &w.x, &w.y)
                    .expect("valid window")
                    .is_some();
                break ConjectureTrial {
                    trial,
                    seed,
                    group: g.name().to_string(),
                    m: w.m(),
                    alpha: w.alpha(),
                    beta: w.beta(),
                    x: w.x,
                    y: w.y,
                    extends,
                };
            }
        })
        .collect()
}
