//! Maximality checks, greedy extension and the pruned backtracking search for
//! maximal partial transversals of a given length.
//!
//! The search walks rows in ascending order. At each row it either assigns
//! an unused column (ascending) whose symbol is unused, or skips the row.
//! State is kept in `u64` bitsets, so squares are limited to order 64.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Group;
use crate::report::{LengthEntry, LengthStatus, SpectrumReport};
use crate::square::{LatinSquare, Triple};

/// Largest order the bitset engine handles.
pub const ENGINE_MAX_ORDER: usize = 64;

const WALL_CHECK_MASK: u64 = 4095;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("length {len} outside [{lo}, {hi}]")]
    LengthOutOfRange { len: usize, lo: usize, hi: usize },
    #[error("order {0} exceeds the engine limit of {max}", max = ENGINE_MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("triples do not form a partial transversal")]
    NotPartialTransversal,
    #[error("invalid constraint: {0}")]
    BadConstraint(String),
    #[error("group must be abelian")]
    NonAbelian,
    #[error("partial transversal is empty")]
    Empty,
    #[error("witness failed verification: {0}")]
    WitnessRejected(String),
}

/// Smallest and largest possible lengths of a maximal partial transversal.
pub fn lemma_range(n: usize) -> (usize, usize) {
    (n.div_ceil(2), n)
}

/// Triples with pairwise distinct rows, columns and symbols, sorted by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct PartialTransversal {
    triples: Vec<Triple>,
}

impl PartialTransversal {
    pub fn new(l: &LatinSquare, mut triples: Vec<Triple>) -> Result<Self, EngineError> {
        if !is_partial_transversal(l, &triples) {
            return Err(EngineError::NotPartialTransversal);
        }
        triples.sort_unstable();
        Ok(PartialTransversal { triples })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn into_triples(self) -> Vec<Triple> {
        self.triples
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }
}

pub fn is_partial_transversal(l: &LatinSquare, triples: &[Triple]) -> bool {
    let n = l.order();
    let mut rows = vec![false; n];
    let mut cols = vec![false; n];
    let mut syms = vec![false; n];
    triples.iter().all(|t| {
        t.row < n
            && t.col < n
            && l.get(t.row, t.col) == t.sym
            && !std::mem::replace(&mut rows[t.row], true)
            && !std::mem::replace(&mut cols[t.col], true)
            && !std::mem::replace(&mut syms[t.sym], true)
    })
}

/// First free cell in row-major order, if any.
fn first_free_cell(l: &LatinSquare, t: &PartialTransversal) -> Option<(usize, usize)> {
    let n = l.order();
    let mut rows = vec![false; n];
    let mut cols = vec![false; n];
    let mut syms = vec![false; n];
    for x in t.triples() {
        rows[x.row] = true;
        cols[x.col] = true;
        syms[x.sym] = true;
    }
    (0..n)
        .filter(|&r| !rows[r])
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| !cols[c] && !syms[l.get(r, c)])
}

/// True iff no cell has an unused row, column and symbol.
pub fn is_maximal(l: &LatinSquare, t: &PartialTransversal) -> bool {
    first_free_cell(l, t).is_none()
}

/// Adds free cells in row-major order until the set is maximal.
pub fn extend_greedy(l: &LatinSquare, t: &PartialTransversal) -> PartialTransversal {
    let mut out = t.clone();
    while let Some((r, c)) = first_free_cell(l, &out) {
        out.triples.push(l.triple(r, c));
        out.triples.sort_unstable();
    }
    out
}

/// Checks a claimed maximal partial transversal of length `len`.
pub fn verify_witness(
    l: &LatinSquare,
    t: &PartialTransversal,
    len: usize,
) -> Result<(), EngineError> {
    if !is_partial_transversal(l, t.triples()) {
        return Err(EngineError::WitnessRejected(
            "not a partial transversal".into(),
        ));
    }
    if t.len() != len {
        return Err(EngineError::WitnessRejected(format!(
            "length {} but {len} declared",
            t.len()
        )));
    }
    if !is_maximal(l, t) {
        return Err(EngineError::WitnessRejected("not maximal".into()));
    }
    let (lo, hi) = lemma_range(l.order());
    assert!(
        lo <= len && len <= hi,
        "maximal partial transversal of length {len} outside [{lo}, {hi}]"
    );
    Ok(())
}

/// Node and wall-clock limits for one search. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    #[serde(with = "opt_millis")]
    pub wall_limit: Option<Duration>,
}

mod opt_millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&(d.as_millis() as u64)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

impl SearchBudget {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            node_limit: Some(limit),
            wall_limit: None,
        }
    }

    pub fn wall(limit: Duration) -> Self {
        SearchBudget {
            node_limit: None,
            wall_limit: Some(limit),
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.node_limit.is_none() && self.wall_limit.is_none()
    }

    /// Default per-length budget: unlimited up to order 10, `10^8` nodes up
    /// to order 16. Larger orders need an explicit wall-clock limit.
    pub fn default_for(n: usize) -> Option<Self> {
        match n {
            0..=10 => Some(Self::exhaustive()),
            11..=16 => Some(Self::nodes(100_000_000)),
            _ => None,
        }
    }

    /// True when this budget is at least as generous as `other` in both limits.
    pub fn covers(&self, other: &SearchBudget) -> bool {
        fn ge<T: PartialOrd>(a: Option<T>, b: Option<T>) -> bool {
            match (a, b) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a >= b,
            }
        }
        ge(self.node_limit, other.node_limit) && ge(self.wall_limit, other.wall_limit)
    }
}

/// Required symbol sum `target` of the chosen symbols in an abelian group.
#[derive(Debug, Clone)]
pub struct SymbolSum {
    pub group: Group,
    pub target: usize,
}

/// Restrictions on the search. Rows and columns outside the allowed sets
/// are never assigned but still count when checking maximality.
#[derive(Debug, Clone)]
pub struct Constraints {
    pub rows: Option<Vec<usize>>,
    pub cols: Option<Vec<usize>>,
    pub required_symbols: Vec<usize>,
    pub forbidden_cells: Vec<(usize, usize)>,
    pub seed: Vec<Triple>,
    pub symbol_sum: Option<SymbolSum>,
    /// When false, any partial transversal of the target length is accepted.
    pub require_maximal: bool,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints {
            rows: None,
            cols: None,
            required_symbols: Vec::new(),
            forbidden_cells: Vec::new(),
            seed: Vec::new(),
            symbol_sum: None,
            require_maximal: true,
        }
    }
}

impl Constraints {
    /// Forces the triple `(0,0,0)` into every solution.
    pub fn identity_seed() -> Self {
        Constraints {
            seed: vec![Triple::new(0, 0, 0)],
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Achieved(PartialTransversal),
    ProvenAbsent,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

enum Step {
    Found,
    Exhausted,
    Abort,
}

/// Immutable description of a search instance.
struct Problem<'a> {
    n: usize,
    full: u64,
    target: usize,
    grid: &'a [usize],
    col_of: Vec<usize>,
    order: Vec<usize>,
    /// Number of allowed rows in `order[d..]`.
    allowed_suffix: Vec<usize>,
    allowed_row: u64,
    allowed_cols: u64,
    forbidden: Vec<u64>,
    required: u64,
    sum: Option<(&'a Group, usize)>,
    require_maximal: bool,
    seed: Vec<Triple>,
}

impl<'a> Problem<'a> {
    fn new(l: &'a LatinSquare, target: usize, cons: &'a Constraints) -> Result<Self, EngineError> {
        let n = l.order();
        if n > ENGINE_MAX_ORDER {
            return Err(EngineError::OrderTooLarge(n));
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let bad = |what: &str| EngineError::BadConstraint(what.to_string());
        let to_mask = |set: &Option<Vec<usize>>, what: &str| -> Result<u64, EngineError> {
            match set {
                None => Ok(full),
                Some(v) => v.iter().try_fold(0u64, |m, &i| {
                    if i < n {
                        Ok(m | 1 << i)
                    } else {
                        Err(bad(what))
                    }
                }),
            }
        };
        let allowed_row = to_mask(&cons.rows, "row index out of range")?;
        let allowed_cols = to_mask(&cons.cols, "column index out of range")?;
        let required = to_mask(&Some(cons.required_symbols.clone()), "symbol out of range")?;
        let mut forbidden = vec![0u64; n];
        for &(r, c) in &cons.forbidden_cells {
            if r >= n || c >= n {
                return Err(bad("forbidden cell out of range"));
            }
            forbidden[r] |= 1 << c;
        }
        if !is_partial_transversal(l, &cons.seed) {
            return Err(bad("seed is not a partial transversal"));
        }
        for t in &cons.seed {
            if allowed_row & (1 << t.row) == 0
                || allowed_cols & (1 << t.col) == 0
                || forbidden[t.row] & (1 << t.col) != 0
            {
                return Err(bad("seed violates row, column or cell restrictions"));
            }
        }
        if cons.seed.len() > target {
            return Err(bad("seed longer than target"));
        }
        let sum = match &cons.symbol_sum {
            Some(s) if !s.group.is_abelian() => return Err(EngineError::NonAbelian),
            Some(s) if s.group.order() != n || s.target >= n => {
                return Err(bad("symbol sum group does not match the square"))
            }
            Some(s) => Some((&s.group, s.target)),
            None => None,
        };
        let seeded: u64 = cons.seed.iter().fold(0, |m, t| m | 1 << t.row);
        let order: Vec<usize> = (0..n).filter(|&r| seeded & (1 << r) == 0).collect();
        let mut allowed_suffix = vec![0; order.len() + 1];
        for d in (0..order.len()).rev() {
            allowed_suffix[d] =
                allowed_suffix[d + 1] + usize::from(allowed_row & (1 << order[d]) != 0);
        }
        let mut col_of = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                col_of[r * n + l.get(r, c)] = c;
            }
        }
        Ok(Problem {
            n,
            full,
            target,
            grid: l.flat(),
            col_of,
            order,
            allowed_suffix,
            allowed_row,
            allowed_cols,
            forbidden,
            required,
            sum,
            require_maximal: cons.require_maximal,
            seed: cons.seed.clone(),
        })
    }
}

struct Limits<'a> {
    start: Instant,
    node_limit: Option<u64>,
    wall_limit: Option<Duration>,
    stop: &'a AtomicBool,
    shared_nodes: Option<&'a AtomicU64>,
}

/// Mutable DFS state.
struct Walker<'p, 'a> {
    p: &'p Problem<'a>,
    limits: &'p Limits<'p>,
    used_cols: u64,
    used_syms: u64,
    /// Per row, the columns whose symbol is already used.
    sym_block: Vec<u64>,
    chosen: Vec<Triple>,
    skipped: Vec<usize>,
    nodes: u64,
    flushed: u64,
    timed_out: bool,
}

impl<'p, 'a> Walker<'p, 'a> {
    fn new(p: &'p Problem<'a>, limits: &'p Limits<'p>) -> Self {
        let mut w = Walker {
            p,
            limits,
            used_cols: 0,
            used_syms: 0,
            sym_block: vec![0; p.n],
            chosen: Vec::with_capacity(p.target),
            skipped: Vec::with_capacity(p.n),
            nodes: 0,
            flushed: 0,
            timed_out: false,
        };
        for t in p.seed.clone() {
            w.assign(t.row, t.col);
        }
        w
    }

    #[inline]
    fn assign(&mut self, r: usize, c: usize) {
        let n = self.p.n;
        let s = self.p.grid[r * n + c];
        self.used_cols |= 1 << c;
        self.used_syms |= 1 << s;
        for (row, block) in self.sym_block.iter_mut().enumerate() {
            *block |= 1 << self.p.col_of[row * n + s];
        }
        self.chosen.push(Triple::new(r, c, s));
    }

    #[inline]
    fn unassign(&mut self) {
        let n = self.p.n;
        let t = self.chosen.pop().expect("assignment stack underflow");
        self.used_cols &= !(1 << t.col);
        self.used_syms &= !(1 << t.sym);
        for (row, block) in self.sym_block.iter_mut().enumerate() {
            *block &= !(1 << self.p.col_of[row * n + t.sym]);
        }
    }

    #[inline]
    fn free(&self, r: usize) -> u64 {
        !self.used_cols & !self.sym_block[r] & self.p.full
    }

    fn over_budget(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.limits.node_limit {
            let total = match self.limits.shared_nodes {
                Some(shared) => shared.load(Ordering::Relaxed) + (self.nodes - self.flushed),
                None => self.nodes,
            };
            if total > limit {
                self.timed_out = true;
                return true;
            }
        }
        if self.nodes & WALL_CHECK_MASK == 0 {
            if let Some(shared) = self.limits.shared_nodes {
                shared.fetch_add(self.nodes - self.flushed, Ordering::Relaxed);
                self.flushed = self.nodes;
            }
            if self
                .limits
                .wall_limit
                .is_some_and(|w| self.limits.start.elapsed() > w)
            {
                self.timed_out = true;
                return true;
            }
            if self.limits.stop.load(Ordering::Relaxed) {
                return true;
            }
        }
        false
    }

    fn leaf_ok(&self, depth: usize) -> bool {
        let p = self.p;
        if self.used_syms & p.required != p.required {
            return false;
        }
        if let Some((g, target)) = p.sum {
            if self.chosen.iter().fold(0, |acc, t| g.mul(acc, t.sym)) != target {
                return false;
            }
        }
        if p.require_maximal {
            let unused = self.skipped.iter().chain(&p.order[depth..]);
            for &r in unused {
                if self.free(r) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> Step {
        if self.over_budget() {
            return Step::Abort;
        }
        let p = self.p;
        let need = p.target - self.chosen.len();
        if need == 0 {
            return if self.leaf_ok(depth) {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        if p.allowed_suffix[depth] < need {
            return Step::Exhausted;
        }
        if (p.required & !self.used_syms).count_ones() as usize > need {
            return Step::Exhausted;
        }
        if p.require_maximal {
            // each future assignment blocks at most two cells of a skipped row
            for &s in &self.skipped {
                if self.free(s).count_ones() as usize > 2 * need {
                    return Step::Exhausted;
                }
            }
        }
        let open_cols = p.allowed_cols & !self.used_cols;
        let coverable = p.order[depth..]
            .iter()
            .filter(|&&r| {
                p.allowed_row & (1 << r) != 0
                    && open_cols & !self.sym_block[r] & !p.forbidden[r] != 0
            })
            .count();
        if coverable < need {
            return Step::Exhausted;
        }

        let r = p.order[depth];
        if p.allowed_row & (1 << r) != 0 {
            let mut cand = open_cols & !self.sym_block[r] & !p.forbidden[r];
            while cand != 0 {
                let c = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                self.assign(r, c);
                match self.dfs(depth + 1) {
                    Step::Found => return Step::Found,
                    Step::Abort => {
                        self.unassign();
                        return Step::Abort;
                    }
                    Step::Exhausted => self.unassign(),
                }
            }
        }
        if p.allowed_suffix[depth + 1] >= need
            && (!p.require_maximal || self.free(r).count_ones() as usize <= 2 * need)
        {
            self.skipped.push(r);
            let step = self.dfs(depth + 1);
            self.skipped.pop();
            return step;
        }
        Step::Exhausted
    }

    /// Replays a prefix of decisions (`Some(col)` assigns, `None` skips).
    /// Returns false if the prefix is not a legal branch.
    fn replay(&mut self, prefix: &[Option<usize>]) -> bool {
        let p = self.p;
        for (depth, choice) in prefix.iter().enumerate() {
            let Some(&r) = p.order.get(depth) else {
                return false;
            };
            let need = p.target - self.chosen.len();
            match *choice {
                Some(c) => {
                    let ok = need > 0
                        && p.allowed_row & (1 << r) != 0
                        && c < p.n
                        && (p.allowed_cols
                            & !self.used_cols
                            & !self.sym_block[r]
                            & !p.forbidden[r])
                            & (1 << c)
                            != 0;
                    if !ok {
                        return false;
                    }
                    self.assign(r, c);
                }
                None => {
                    if p.allowed_suffix[depth + 1] < need {
                        return false;
                    }
                    self.skipped.push(r);
                }
            }
        }
        true
    }
}

fn check_length(n: usize, len: usize, require_maximal: bool) -> Result<(), EngineError> {
    let (lo, hi) = lemma_range(n);
    let lo = if require_maximal { lo } else { 0 };
    if len < lo || len > hi {
        return Err(EngineError::LengthOutOfRange { len, lo, hi });
    }
    Ok(())
}

fn finish(
    l: &LatinSquare,
    len: usize,
    cons: &Constraints,
    chosen: Vec<Triple>,
) -> PartialTransversal {
    let pt = PartialTransversal::new(l, chosen).expect("search only builds partial transversals");
    if cons.require_maximal {
        verify_witness(l, &pt, len).expect("search witness must verify");
    } else {
        assert_eq!(pt.len(), len);
    }
    pt
}

/// Searches for a maximal partial transversal of length `len` satisfying
/// `cons`. Returns `ProvenAbsent` only after exhausting the search tree.
pub fn find_maximal_of_length(
    l: &LatinSquare,
    len: usize,
    budget: &SearchBudget,
    cons: &Constraints,
) -> Result<SearchResult, EngineError> {
    check_length(l.order(), len, cons.require_maximal)?;
    let problem = Problem::new(l, len, cons)?;
    let stop = AtomicBool::new(false);
    let limits = Limits {
        start: Instant::now(),
        node_limit: budget.node_limit,
        wall_limit: budget.wall_limit,
        stop: &stop,
        shared_nodes: None,
    };
    let mut w = Walker::new(&problem, &limits);
    let step = w.dfs(0);
    let outcome = match step {
        Step::Found => SearchOutcome::Achieved(finish(l, len, cons, w.chosen.clone())),
        Step::Exhausted => SearchOutcome::ProvenAbsent,
        Step::Abort => SearchOutcome::Timeout,
    };
    Ok(SearchResult {
        outcome,
        nodes: w.nodes,
        elapsed: limits.start.elapsed(),
    })
}

/// Parallel variant: the first two levels of the tree are split into
/// independent tasks run on the rayon pool. With `jobs <= 1` this is the
/// sequential search.
pub fn find_maximal_parallel(
    l: &LatinSquare,
    len: usize,
    budget: &SearchBudget,
    cons: &Constraints,
    jobs: usize,
) -> Result<SearchResult, EngineError> {
    if jobs <= 1 {
        return find_maximal_of_length(l, len, budget, cons);
    }
    check_length(l.order(), len, cons.require_maximal)?;
    let problem = Problem::new(l, len, cons)?;
    let n = l.order();
    let options: Vec<Option<usize>> = (0..n).map(Some).chain([None]).collect();
    let depth = problem.order.len().min(2);
    let mut prefixes: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| options.iter().map(move |&o| [p.clone(), vec![o]].concat()))
            .collect();
    }
    let stop = AtomicBool::new(false);
    let shared = AtomicU64::new(0);
    let limits = Limits {
        start: Instant::now(),
        node_limit: budget.node_limit,
        wall_limit: budget.wall_limit,
        stop: &stop,
        shared_nodes: Some(&shared),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EngineError::BadConstraint(e.to_string()))?;
    let results: Vec<(usize, Step, Vec<Triple>)> = pool.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(i, prefix)| {
                let mut w = Walker::new(&problem, &limits);
                if stop.load(Ordering::Relaxed) {
                    return (i, Step::Abort, Vec::new());
                }
                let step = if w.replay(prefix) {
                    w.dfs(prefix.len())
                } else {
                    Step::Exhausted
                };
                shared.fetch_add(w.nodes - w.flushed, Ordering::Relaxed);
                if matches!(step, Step::Found) || w.timed_out {
                    stop.store(true, Ordering::Relaxed);
                }
                (i, step, w.chosen)
            })
            .collect()
    });
    let found = results
        .iter()
        .filter(|(_, s, _)| matches!(s, Step::Found))
        .min_by_key(|(i, _, _)| *i);
    let outcome = if let Some((_, _, chosen)) = found {
        SearchOutcome::Achieved(finish(l, len, cons, chosen.clone()))
    } else if results.iter().any(|(_, s, _)| matches!(s, Step::Abort)) {
        SearchOutcome::Timeout
    } else {
        SearchOutcome::ProvenAbsent
    };
    Ok(SearchResult {
        outcome,
        nodes: shared.load(Ordering::Relaxed),
        elapsed: limits.start.elapsed(),
    })
}

/// Completes `seed` to a full transversal avoiding `forbidden` cells,
/// branching on the row or symbol with the fewest options.
pub fn find_transversal(
    l: &LatinSquare,
    seed: &[Triple],
    forbidden: &[(usize, usize)],
    node_limit: Option<u64>,
) -> Result<SearchResult, EngineError> {
    let n = l.order();
    if n > ENGINE_MAX_ORDER {
        return Err(EngineError::OrderTooLarge(n));
    }
    if !is_partial_transversal(l, seed) {
        return Err(EngineError::NotPartialTransversal);
    }
    let start = Instant::now();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut allowed = vec![full; n];
    for &(r, c) in forbidden {
        if r >= n || c >= n {
            return Err(EngineError::BadConstraint(format!(
                "cell ({r},{c}) outside the square"
            )));
        }
        allowed[r] &= !(1u64 << c);
    }
    let mut t = TransversalSearch {
        l,
        allowed,
        rows: full,
        cols: full,
        syms: full,
        chosen: seed.to_vec(),
        nodes: 0,
        node_limit,
    };
    for x in seed {
        t.rows &= !(1u64 << x.row);
        t.cols &= !(1u64 << x.col);
        t.syms &= !(1u64 << x.sym);
    }
    let outcome = match t.dfs() {
        Step::Found => SearchOutcome::Achieved(
            PartialTransversal::new(l, t.chosen).expect("search only builds partial transversals"),
        ),
        Step::Exhausted => SearchOutcome::ProvenAbsent,
        Step::Abort => SearchOutcome::Timeout,
    };
    Ok(SearchResult {
        outcome,
        nodes: t.nodes,
        elapsed: start.elapsed(),
    })
}

struct TransversalSearch<'a> {
    l: &'a LatinSquare,
    allowed: Vec<u64>,
    rows: u64,
    cols: u64,
    syms: u64,
    chosen: Vec<Triple>,
    nodes: u64,
    node_limit: Option<u64>,
}

impl TransversalSearch<'_> {
    fn row_options(&self, r: usize) -> Vec<Triple> {
        bits(self.cols & self.allowed[r])
            .filter(|&c| self.syms >> self.l.get(r, c) & 1 == 1)
            .map(|c| self.l.triple(r, c))
            .collect()
    }

    fn sym_options(&self, s: usize) -> Vec<Triple> {
        bits(self.rows)
            .map(|r| (r, self.l.col_of(r, s)))
            .filter(|&(r, c)| self.cols >> c & 1 == 1 && self.allowed[r] >> c & 1 == 1)
            .map(|(r, c)| Triple::new(r, c, s))
            .collect()
    }

    fn dfs(&mut self) -> Step {
        if self.rows == 0 {
            return Step::Found;
        }
        self.nodes += 1;
        if self.node_limit.is_some_and(|lim| self.nodes > lim) {
            return Step::Abort;
        }
        let mut best: Option<Vec<Triple>> = None;
        let candidates = bits(self.rows)
            .map(|r| self.row_options(r))
            .chain(bits(self.syms).map(|s| self.sym_options(s)));
        for opts in candidates {
            if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                let done = opts.len() <= 1;
                best = Some(opts);
                if done {
                    break;
                }
            }
        }
        for x in best.unwrap_or_default() {
            self.rows &= !(1u64 << x.row);
            self.cols &= !(1u64 << x.col);
            self.syms &= !(1u64 << x.sym);
            self.chosen.push(x);
            match self.dfs() {
                Step::Exhausted => {}
                other => return other,
            }
            self.chosen.pop();
            self.rows |= 1u64 << x.row;
            self.cols |= 1u64 << x.col;
            self.syms |= 1u64 << x.sym;
        }
        Step::Exhausted
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

/// Row, column and symbol permutations of a Cayley table that map it to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotopy {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub sym_perm: Vec<usize>,
}

impl Isotopy {
    pub fn is_identity(&self) -> bool {
        [&self.row_perm, &self.col_perm, &self.sym_perm]
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn apply(&self, t: &Triple) -> Triple {
        Triple::new(
            self.row_perm[t.row],
            self.col_perm[t.col],
            self.sym_perm[t.sym],
        )
    }
}

/// Translates `t` by `(r,c,s) ↦ (a r, c b, a s b)` so that its first triple
/// becomes `(0,0,0)`. The host square is the Cayley table of `g`.
pub fn normalize_to_identity(
    g: &Group,
    t: &PartialTransversal,
) -> Result<(Isotopy, PartialTransversal), EngineError> {
    let first = *t.triples().first().ok_or(EngineError::Empty)?;
    let pivot = t
        .triples()
        .iter()
        .find(|x| x.row == 0 && x.col == 0)
        .copied()
        .unwrap_or(first);
    let n = g.order();
    let a = g.inv(pivot.row);
    let b = g.inv(pivot.col);
    let iso = Isotopy {
        row_perm: (0..n).map(|r| g.mul(a, r)).collect(),
        col_perm: (0..n).map(|c| g.mul(c, b)).collect(),
        sym_perm: (0..n).map(|s| g.mul(g.mul(a, s), b)).collect(),
    };
    let table = g.cayley_table();
    let moved =
        PartialTransversal::new(&table, t.triples().iter().map(|x| iso.apply(x)).collect())?;
    Ok((iso, moved))
}

/// Sum of the given row and column elements in an abelian group. Any partial
/// transversal using exactly these rows and columns has this symbol sum.
pub fn abelian_symbol_sum(g: &Group, rows: &[usize], cols: &[usize]) -> Result<usize, EngineError> {
    if !g.is_abelian() {
        return Err(EngineError::NonAbelian);
    }
    Ok(rows.iter().chain(cols).fold(0, |acc, &x| g.mul(acc, x)))
}

/// Verdict-independent knobs for [`spectrum`].
#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub budget: SearchBudget,
    pub jobs: usize,
    /// Seed every search with `(0,0,0)`. Only sound for Cayley tables.
    pub identity_seed: bool,
}

impl SpectrumOptions {
    pub fn exhaustive() -> Self {
        SpectrumOptions {
            budget: SearchBudget::exhaustive(),
            jobs: 1,
            identity_seed: false,
        }
    }
}

/// Searches every length in the admissible range.
pub fn spectrum(l: &LatinSquare, opts: &SpectrumOptions) -> Result<SpectrumReport, EngineError> {
    let n = l.order();
    let (lo, hi) = lemma_range(n);
    let cons = if opts.identity_seed {
        Constraints::identity_seed()
    } else {
        Constraints::default()
    };
    let reason = if opts.identity_seed {
        "exhausted-normalized"
    } else {
        "exhausted"
    };
    let mut lengths = BTreeMap::new();
    for len in lo..=hi {
        let res = find_maximal_parallel(l, len, &opts.budget, &cons, opts.jobs)?;
        let status = match res.outcome {
            SearchOutcome::Achieved(w) => LengthStatus::Achieved {
                witness: w.into_triples(),
                how: "direct-search".into(),
            },
            SearchOutcome::ProvenAbsent => LengthStatus::ProvenAbsent {
                reason: reason.into(),
            },
            SearchOutcome::Timeout => LengthStatus::Timeout,
        };
        lengths.insert(
            len,
            LengthEntry {
                status,
                nodes: res.nodes,
                millis: res.elapsed.as_millis() as u64,
            },
        );
    }
    Ok(SpectrumReport::new(l, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product};

    fn z(n: usize) -> LatinSquare {
        cyclic(n).cayley_table()
    }

    fn search(l: &LatinSquare, len: usize) -> SearchOutcome {
        find_maximal_of_length(l, len, &SearchBudget::exhaustive(), &Constraints::default())
            .unwrap()
            .outcome
    }

    fn z5_pattern() -> PartialTransversal {
        PartialTransversal::new(
            &z(5),
            vec![
                Triple::new(2, 3, 0),
                Triple::new(3, 4, 2),
                Triple::new(4, 2, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn partial_transversal_checks() {
        let l = z(5);
        assert!(is_partial_transversal(&l, &[]));
        assert!(!is_partial_transversal(
            &l,
            &[Triple::new(0, 0, 0), Triple::new(0, 1, 1)]
        ));
        assert!(!is_partial_transversal(&l, &[Triple::new(0, 0, 1)]));
        assert!(is_maximal(&l, &z5_pattern()));
        let single = PartialTransversal::new(&l, vec![Triple::new(0, 0, 0)]).unwrap();
        assert!(!is_maximal(&l, &single));
        let full =
            PartialTransversal::new(&l, (0..5).map(|i| Triple::new(i, i, 2 * i % 5)).collect())
                .unwrap();
        assert!(is_maximal(&l, &full));
    }

    #[test]
    fn greedy_extension() {
        let z2 = z(2);
        let g = extend_greedy(&z2, &PartialTransversal::empty());
        assert_eq!(g.triples(), &[Triple::new(0, 0, 0)]);
        let p = z5_pattern();
        assert_eq!(extend_greedy(&z(5), &p), p);
    }

    #[test]
    fn small_cyclic_spectra() {
        assert_eq!(search(&z(4), 4), SearchOutcome::ProvenAbsent);
        assert!(matches!(search(&z(4), 3), SearchOutcome::Achieved(_)));
        let klein = direct_product(&cyclic(2), &cyclic(2)).cayley_table();
        assert_eq!(search(&klein, 3), SearchOutcome::ProvenAbsent);
        assert!(matches!(search(&klein, 4), SearchOutcome::Achieved(_)));
        assert!(matches!(search(&z(5), 3), SearchOutcome::Achieved(_)));
        assert_eq!(search(&z(5), 4), SearchOutcome::ProvenAbsent);
    }

    #[test]
    fn length_range_enforced() {
        let err = find_maximal_of_length(
            &z(5),
            2,
            &SearchBudget::exhaustive(),
            &Constraints::default(),
        );
        assert_eq!(
            err,
            Err(EngineError::LengthOutOfRange {
                len: 2,
                lo: 3,
                hi: 5
            })
        );
    }

    #[test]
    fn deterministic_witness() {
        let l = z(7);
        let a = search(&l, 5);
        let b = search(&l, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn budget_timeout() {
        let l = z(8);
        let res = find_maximal_of_length(&l, 8, &SearchBudget::nodes(10), &Constraints::default())
            .unwrap();
        assert_eq!(res.outcome, SearchOutcome::Timeout);
    }

    #[test]
    fn parallel_agrees() {
        for n in [5, 6, 7] {
            let l = z(n);
            for len in lemma_range(n).0..=n {
                let seq = search(&l, len);
                let par = find_maximal_parallel(
                    &l,
                    len,
                    &SearchBudget::exhaustive(),
                    &Constraints::default(),
                    4,
                )
                .unwrap()
                .outcome;
                assert_eq!(
                    matches!(seq, SearchOutcome::Achieved(_)),
                    matches!(par, SearchOutcome::Achieved(_)),
                    "n={n} len={len}"
                );
            }
        }
    }

    #[test]
    fn constraints_only_shrink() {
        let l = z(7);
        let cons = Constraints {
            required_symbols: vec![3],
            ..Constraints::default()
        };
        for len in 4..=7 {
            let free = search(&l, len);
            let constrained = find_maximal_of_length(&l, len, &SearchBudget::exhaustive(), &cons)
                .unwrap()
                .outcome;
            if let SearchOutcome::Achieved(w) = &constrained {
                assert!(w.triples().iter().any(|t| t.sym == 3));
                assert!(matches!(free, SearchOutcome::Achieved(_)));
            }
        }
    }

    #[test]
    fn relaxed_near_transversal() {
        let cons = Constraints {
            require_maximal: false,
            ..Constraints::default()
        };
        let res = find_maximal_of_length(&z(4), 3, &SearchBudget::exhaustive(), &cons).unwrap();
        assert!(matches!(res.outcome, SearchOutcome::Achieved(_)));
    }

    #[test]
    fn normalization() {
        let g = cyclic(5);
        let (iso, moved) = normalize_to_identity(&g, &z5_pattern()).unwrap();
        assert!(moved.contains(&Triple::new(0, 0, 0)));
        assert_eq!(moved.len(), 3);
        assert!(is_maximal(&g.cayley_table(), &moved));
        assert!(!iso.is_identity());
        let with_id =
            PartialTransversal::new(&g.cayley_table(), vec![Triple::new(0, 0, 0)]).unwrap();
        assert!(normalize_to_identity(&g, &with_id).unwrap().0.is_identity());
        assert_eq!(
            normalize_to_identity(&g, &PartialTransversal::empty()),
            Err(EngineError::Empty)
        );
    }

    #[test]
    fn symbol_sum_examples() {
        let g = cyclic(5);
        assert_eq!(abelian_symbol_sum(&g, &[2, 3, 4], &[3, 4, 2]).unwrap(), 3);
        let sum: usize = z5_pattern().triples().iter().map(|t| t.sym).sum::<usize>() % 5;
        assert_eq!(sum, 3);
        assert_eq!(abelian_symbol_sum(&cyclic(1), &[0], &[0]).unwrap(), 0);
        let d6 = crate::group::dihedral(6).unwrap();
        assert_eq!(
            abelian_symbol_sum(&d6, &[0], &[0]),
            Err(EngineError::NonAbelian)
        );
    }

    #[test]
    fn spectrum_of_z7() {
        let report = spectrum(&z(7), &SpectrumOptions::exhaustive()).unwrap();
        assert_eq!(report.achieved(), vec![5, 7]);
    }
}
