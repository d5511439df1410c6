//! Length-by-length classification of Cayley tables and general squares.
//!
//! Each length of the admissible range is settled, in order, by a
//! forbidding rule, an explicit construction, a direct search seeded with
//! the identity triple, or the complementary-window pipeline.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{self, ConstructError};
use crate::engine::{
    abelian_symbol_sum, find_maximal_of_length, find_maximal_parallel, find_transversal,
    lemma_range, Constraints, EngineError, PartialTransversal, SearchBudget, SearchOutcome,
    SymbolSum,
};
use crate::extension::extend_general;
use crate::group::{self, index2_subgroup_with_transversal, sylow2_cyclic, Group, Subgroup};
use crate::report::{LengthEntry, LengthStatus, SpectrumReport};
use crate::square::{LatinSquare, SubmatrixWindow};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error("methods disagree at length {len}: {detail}")]
    Disagreement { len: usize, detail: String },
}

/// A theorem that rules a length out without search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// No transversal: the Sylow 2-subgroups are non-trivial and cyclic.
    Transgrp,
    /// Abelian with a transversal, so no maximal near-transversal.
    Noabelpanmax,
    /// Length `n/2` needs an index-2 subgroup whose Sylow 2-subgroups are trivial or non-cyclic.
    Halfn,
    /// Length below `3n/5` needs an index-2 subgroup and `ℓ − n/2` even.
    Nosmallingrp,
    /// Order `4m+2` with a transversal has no maximal partial transversal of length `2m+1`.
    T4n2,
}

impl Rule {
    pub fn code(&self) -> &'static str {
        match self {
            Rule::Transgrp => "transgrp",
            Rule::Noabelpanmax => "noabelpanmax",
            Rule::Halfn => "halfn",
            Rule::Nosmallingrp => "nosmallingrp",
            Rule::T4n2 => "t4n2",
        }
    }
}

/// Lengths of the admissible range ruled out for the Cayley table of `g`,
/// each with the first rule that applies.
pub fn forbidden_lengths(g: &Group) -> BTreeMap<usize, Rule> {
    let n = g.order();
    let (lo, hi) = lemma_range(n);
    let has_index2 = n.is_multiple_of(2) && !group::subgroups(g, n / 2).is_empty();
    let mut out = BTreeMap::new();
    if sylow2_cyclic(g) {
        out.insert(n, Rule::Transgrp);
    } else if g.is_abelian() && n >= 2 && n > lo {
        out.insert(n - 1, Rule::Noabelpanmax);
    }
    if n.is_multiple_of(2) && index2_subgroup_with_transversal(g).is_none() {
        out.entry(n / 2).or_insert(Rule::Halfn);
    }
    for len in lo..=hi {
        let small = 5 * len < 3 * n;
        if small && (n % 2 == 1 || !has_index2 || (len - n / 2) % 2 == 1) {
            out.entry(len).or_insert(Rule::Nosmallingrp);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Budget for each direct or targeted search.
    pub budget: SearchBudget,
    /// Node limit for the quick direct attempt made before the window pipeline.
    pub probe_nodes: u64,
    pub jobs: usize,
    /// Also run exhaustive direct search on lengths the pipeline proves absent.
    pub cross_check: bool,
}

impl ClassifyOptions {
    pub fn exhaustive() -> Self {
        ClassifyOptions {
            budget: SearchBudget::exhaustive(),
            probe_nodes: 5_000_000,
            jobs: 1,
            cross_check: false,
        }
    }
}

/// The window of unused rows and columns of a would-be maximal partial
/// transversal, normalized so that it uses row and column `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCandidate {
    pub window: SubmatrixWindow,
}

impl ComplementCandidate {
    pub fn symbol_count(&self) -> usize {
        self.window.symbols.len()
    }
}

/// The middle band `[⌈3n/5⌉, ⌊2(n+1)/3⌋]` handled by complementary windows.
pub fn window_band(n: usize) -> (usize, usize) {
    ((3 * n).div_ceil(5), 2 * (n + 1) / 3)
}

fn row_masks(g: &Group, rows: &[usize]) -> Vec<u64> {
    (0..g.order())
        .map(|c| rows.iter().fold(0u64, |acc, &r| acc | 1u64 << g.mul(r, c)))
        .collect()
}

fn mask_to_vec(mut m: u64) -> Vec<usize> {
    let mut v = Vec::new();
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

/// Calls `f` for every `k x k` window through row and column 0 of the
/// Cayley table, with `k = n − ℓ`, whose rows are the given set and which
/// holds at most `ℓ` symbols. Columns are added in ascending order starting
/// from column 0. Returns false if `f` asked to stop.
fn windows_for_rows(
    g: &Group,
    len: usize,
    rows: &[usize],
    f: &mut dyn FnMut(ComplementCandidate) -> bool,
) -> bool {
    let n = g.order();
    let k = n - len;
    let masks = row_masks(g, rows);
    let mut cols = vec![0usize];
    fn grow(
        masks: &[u64],
        n: usize,
        k: usize,
        len: usize,
        rows: &[usize],
        cols: &mut Vec<usize>,
        z: u64,
        f: &mut dyn FnMut(ComplementCandidate) -> bool,
    ) -> bool {
        if cols.len() == k {
            let window = SubmatrixWindow {
                rows: rows.to_vec(),
                cols: cols.clone(),
                symbols: mask_to_vec(z),
            };
            return f(ComplementCandidate { window });
        }
        let last = *cols.last().expect("column 0 is always present");
        let usable: Vec<usize> = (last + 1..n)
            .filter(|&c| (z | masks[c]).count_ones() as usize <= len)
            .collect();
        if usable.len() < k - cols.len() {
            return true;
        }
        for c in usable {
            cols.push(c);
            let ok = grow(masks, n, k, len, rows, cols, z | masks[c], f);
            cols.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if masks[0].count_ones() as usize > len {
        return true;
    }
    grow(&masks, n, k, len, rows, &mut cols, masks[0], f)
}

fn row_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..n)
        .combinations(k - 1)
        .map(|rest| std::iter::once(0).chain(rest).collect())
        .collect()
}

/// Every complement candidate for length `len`: `k x k` windows with
/// `k = n − ℓ` containing row and column 0 and at most `ℓ` symbols.
pub fn complement_candidates(g: &Group, len: usize) -> Vec<ComplementCandidate> {
    let n = g.order();
    if len >= n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rows in row_sets(n, n - len) {
        windows_for_rows(g, len, &rows, &mut |c| {
            out.push(c);
            true
        });
    }
    out
}

/// What happened to one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateFate {
    /// It lies in a subsquare whose order is not a subgroup order.
    NoSubgroup,
    /// It lies in a subsquare of order `n/2` and `ℓ − n/2` is odd.
    Parity,
    /// No symbol set for the transversal has the required sum.
    SymbolSum,
    /// The targeted search proved no transversal completes it.
    Searched,
    Found(PartialTransversal),
    Timeout,
}

/// Counts per fate for one length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub candidates: u64,
    pub pruned_no_subgroup: u64,
    pub pruned_parity: u64,
    pub eliminated_symbol_sum: u64,
    pub eliminated_search: u64,
    pub timeouts: u64,
}

impl PipelineStats {
    fn record(&mut self, fate: &CandidateFate) {
        self.candidates += 1;
        match fate {
            CandidateFate::NoSubgroup => self.pruned_no_subgroup += 1,
            CandidateFate::Parity => self.pruned_parity += 1,
            CandidateFate::SymbolSum => self.eliminated_symbol_sum += 1,
            CandidateFate::Searched => self.eliminated_search += 1,
            CandidateFate::Timeout => self.timeouts += 1,
            CandidateFate::Found(_) => {}
        }
    }

    fn merge(&mut self, o: &PipelineStats) {
        self.candidates += o.candidates;
        self.pruned_no_subgroup += o.pruned_no_subgroup;
        self.pruned_parity += o.pruned_parity;
        self.eliminated_symbol_sum += o.eliminated_symbol_sum;
        self.eliminated_search += o.eliminated_search;
        self.timeouts += o.timeouts;
    }
}

/// Whether some `count` distinct elements outside `used` have product `target`.
fn sum_feasible(g: &Group, used: &[usize], count: usize, target: usize) -> bool {
    let n = g.order();
    let pool: Vec<usize> = (0..n).filter(|e| !used.contains(e)).collect();
    if count > pool.len() {
        return false;
    }
    let mut reach = vec![0u64; count + 1];
    reach[0] = 1;
    for &e in &pool {
        for c in (1..=count).rev() {
            let prev = reach[c - 1];
            if prev != 0 {
                reach[c] |= mask_to_vec(prev)
                    .into_iter()
                    .fold(0u64, |acc, s| acc | 1u64 << g.mul(s, e));
            }
        }
    }
    reach[count] >> target & 1 == 1
}

/// Viability tests, then a constrained search for a transversal completing the candidate.
pub fn evaluate_candidate(
    g: &Group,
    table: &LatinSquare,
    len: usize,
    c: &ComplementCandidate,
    budget: &SearchBudget,
) -> Result<CandidateFate, ClassifyError> {
    let n = g.order();
    let w = &c.window;
    let (k, m) = (w.rows.len(), w.symbols.len());
    if 3 * k > 2 * m {
        if let Some(sub) = extend_general(g, &w.rows, &w.cols).expect("valid window") {
            debug_assert_eq!(sub.rows.len(), m);
            if group::subgroups(g, m).is_empty() {
                return Ok(CandidateFate::NoSubgroup);
            }
            if 2 * m == n && (len - m) % 2 == 1 {
                return Ok(CandidateFate::Parity);
            }
        }
    }
    let rows: Vec<usize> = (0..n).filter(|r| !w.rows.contains(r)).collect();
    let cols: Vec<usize> = (0..n).filter(|c| !w.cols.contains(c)).collect();
    let symbol_sum = if g.is_abelian() {
        let target = abelian_symbol_sum(g, &rows, &cols)?;
        let z_sum = w.symbols.iter().fold(0, |acc, &s| g.mul(acc, s));
        if !sum_feasible(g, &w.symbols, len - m, g.mul(target, g.inv(z_sum))) {
            return Ok(CandidateFate::SymbolSum);
        }
        Some(SymbolSum {
            group: g.clone(),
            target,
        })
    } else {
        None
    };
    let cons = Constraints {
        rows: Some(rows),
        cols: Some(cols),
        required_symbols: w.symbols.clone(),
        symbol_sum,
        ..Constraints::default()
    };
    Ok(
        match find_maximal_of_length(table, len, budget, &cons)?.outcome {
            SearchOutcome::Achieved(t) => CandidateFate::Found(t),
            SearchOutcome::ProvenAbsent => CandidateFate::Searched,
            SearchOutcome::Timeout => CandidateFate::Timeout,
        },
    )
}

/// Outcome of the complementary-window pipeline for one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub status: LengthStatus,
    pub stats: PipelineStats,
}

type RowSetResult = Result<(PipelineStats, Option<PartialTransversal>), ClassifyError>;

/// `budget` with its wall-clock limit cut to what is left before `deadline`,
/// or `None` once the deadline has passed.
fn remaining(budget: &SearchBudget, deadline: Option<Instant>) -> Option<SearchBudget> {
    let Some(d) = deadline else {
        return Some(*budget);
    };
    let left = d.checked_duration_since(Instant::now())?;
    (!left.is_zero()).then_some(SearchBudget {
        wall_limit: Some(left),
        ..*budget
    })
}

/// Runs every candidate for `len` through [`evaluate_candidate`]. Row sets
/// are processed in parallel; the witness from the first row set (in
/// enumeration order) that yields one is reported. The node limit applies to
/// each candidate search, the wall-clock limit to the whole length.
pub fn window_pipeline(
    g: &Group,
    len: usize,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<PipelineResult, ClassifyError> {
    let n = g.order();
    if len >= n || len < lemma_range(n).0 {
        return Err(EngineError::LengthOutOfRange {
            len,
            lo: lemma_range(n).0,
            hi: n - 1,
        }
        .into());
    }
    let table = g.cayley_table();
    let deadline = budget.wall_limit.map(|w| Instant::now() + w);
    let sets = row_sets(n, n - len);
    let best = AtomicUsize::new(usize::MAX);
    let run = |(i, rows): (usize, &Vec<usize>)| -> RowSetResult {
        let mut stats = PipelineStats::default();
        let mut found = None;
        let mut err = None;
        if i > best.load(Ordering::Relaxed) {
            return Ok((stats, None));
        }
        windows_for_rows(g, len, rows, &mut |c| {
            let Some(per) = remaining(budget, deadline) else {
                stats.record(&CandidateFate::Timeout);
                return false;
            };
            match evaluate_candidate(g, &table, len, &c, &per) {
                Ok(fate) => {
                    stats.record(&fate);
                    if let CandidateFate::Found(t) = fate {
                        found = Some(t);
                        best.fetch_min(i, Ordering::Relaxed);
                        return false;
                    }
                    true
                }
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok((stats, found)),
        }
    };
    let results: Vec<RowSetResult> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| EngineError::BadConstraint(e.to_string()))?;
        pool.install(|| sets.par_iter().enumerate().map(run).collect())
    } else {
        let mut out = Vec::new();
        for item in sets.iter().enumerate() {
            let r = run(item);
            let stop = matches!(&r, Ok((_, Some(_))) | Err(_));
            out.push(r);
            if stop {
                break;
            }
        }
        out
    };
    let mut stats = PipelineStats::default();
    let mut witness = None;
    for r in results {
        let (s, f) = r?;
        stats.merge(&s);
        if witness.is_none() {
            witness = f;
        }
    }
    let status = if let Some(t) = witness {
        LengthStatus::Achieved {
            witness: t.into_triples(),
            how: "complementary-window".into(),
        }
    } else if stats.timeouts > 0 {
        LengthStatus::Timeout
    } else if stats.candidates == 0 {
        LengthStatus::ProvenAbsent {
            reason: "no-complement-candidates".into(),
        }
    } else {
        LengthStatus::ProvenAbsent {
            reason: "complement-candidates-eliminated".into(),
        }
    };
    Ok(PipelineResult { status, stats })
}

fn achieved(t: PartialTransversal, how: &str) -> LengthStatus {
    LengthStatus::Achieved {
        witness: t.into_triples(),
        how: how.into(),
    }
}

/// A transversal of an index-2 subgroup block: a maximal partial transversal of length `n/2`.
pub fn subsquare_transversal(
    g: &Group,
    h: &Subgroup,
) -> Result<Option<PartialTransversal>, ClassifyError> {
    let table = g.cayley_table();
    let cons = Constraints {
        rows: Some(h.elements().to_vec()),
        cols: Some(h.elements().to_vec()),
        ..Constraints::default()
    };
    Ok(
        match find_maximal_of_length(&table, h.len(), &SearchBudget::exhaustive(), &cons)?.outcome {
            SearchOutcome::Achieved(t) => Some(t),
            _ => None,
        },
    )
}

fn direct(
    l: &LatinSquare,
    len: usize,
    cons: &Constraints,
    opts: &ClassifyOptions,
    reason: &str,
) -> Result<(LengthStatus, u64), ClassifyError> {
    let res = find_maximal_parallel(l, len, &opts.budget, cons, opts.jobs)?;
    let status = match res.outcome {
        SearchOutcome::Achieved(t) => achieved(t, "direct-search"),
        SearchOutcome::ProvenAbsent => LengthStatus::ProvenAbsent {
            reason: reason.into(),
        },
        SearchOutcome::Timeout => LengthStatus::Timeout,
    };
    Ok((status, res.nodes))
}

/// Classifies every admissible length of the Cayley table of `g`.
pub fn classify_group(g: &Group, opts: &ClassifyOptions) -> Result<SpectrumReport, ClassifyError> {
    let n = g.order();
    let table = g.cayley_table();
    let (lo, hi) = lemma_range(n);
    let (band_lo, band_hi) = window_band(n);
    let forbidden = forbidden_lengths(g);
    let index2 = group::subgroups(g, n / 2)
        .into_iter()
        .find(|_| n.is_multiple_of(2) && n >= 8);
    let near_t = match &index2 {
        Some(h) => {
            let w = table
                .window(h.elements(), h.elements())
                .expect("subgroup block");
            Some((
                w.clone(),
                construct::subsquare_near_transversal(&table, &w)?,
            ))
        }
        None => None,
    };
    let seeded = Constraints::identity_seed();
    let mut lengths = BTreeMap::new();
    for len in lo..=hi {
        let start = Instant::now();
        let mut nodes = 0;
        let status = if let Some(rule) = forbidden.get(&len) {
            LengthStatus::Forbidden {
                reason: rule.code().into(),
            }
        } else if n.is_multiple_of(2) && len == n / 2 && n > 1 {
            let h = index2_subgroup_with_transversal(g)
                .expect("not forbidden, so a qualifying subgroup exists");
            match subsquare_transversal(g, &h)? {
                Some(t) => achieved(t, "subsquare-transversal"),
                None => {
                    return Err(ClassifyError::Disagreement {
                        len,
                        detail: "qualifying subgroup block has no transversal".into(),
                    })
                }
            }
        } else if let Some((w, nt)) = near_t.as_ref().filter(|_| {
            len > n / 2 && (len - n / 2).is_multiple_of(2) && 8 * ((len - n / 2) / 2) <= n
        }) {
            achieved(
                construct::every_second_witness(&table, w, nt, (len - n / 2) / 2)?,
                "everysecond-construction",
            )
        } else if len == n {
            let res = find_transversal(&table, &[], &[], opts.budget.node_limit)?;
            nodes = res.nodes;
            match res.outcome {
                SearchOutcome::Achieved(t) => achieved(t, "direct-search"),
                SearchOutcome::ProvenAbsent => LengthStatus::ProvenAbsent {
                    reason: "exhausted".into(),
                },
                SearchOutcome::Timeout => LengthStatus::Timeout,
            }
        } else if (band_lo..=band_hi).contains(&len) {
            let probe = find_maximal_of_length(
                &table,
                len,
                &SearchBudget::nodes(opts.probe_nodes),
                &seeded,
            )?;
            nodes = probe.nodes;
            match probe.outcome {
                SearchOutcome::Achieved(t) => achieved(t, "direct-search"),
                SearchOutcome::ProvenAbsent => LengthStatus::ProvenAbsent {
                    reason: "exhausted-normalized".into(),
                },
                SearchOutcome::Timeout => {
                    let res = window_pipeline(g, len, &opts.budget, opts.jobs)?;
                    if opts.cross_check
                        && !res.status.is_achieved()
                        && res.status != LengthStatus::Timeout
                    {
                        let (other, _) =
                            direct(&table, len, &seeded, opts, "exhausted-normalized")?;
                        if other.is_achieved() {
                            return Err(ClassifyError::Disagreement {
                                len,
                                detail: "window pipeline found nothing but direct search did"
                                    .into(),
                            });
                        }
                    }
                    res.status
                }
            }
        } else {
            let (s, k) = direct(&table, len, &seeded, opts, "exhausted-normalized")?;
            nodes = k;
            s
        };
        lengths.insert(
            len,
            LengthEntry {
                status,
                nodes,
                millis: start.elapsed().as_millis() as u64,
            },
        );
    }
    Ok(SpectrumReport::new(&table, lengths).with_subject(g.name()))
}

/// Direct search over every length of an arbitrary square, with the
/// order-`4m+2` rule applied once a transversal is found.
pub fn classify_square(
    l: &LatinSquare,
    opts: &ClassifyOptions,
) -> Result<SpectrumReport, ClassifyError> {
    let n = l.order();
    let (lo, hi) = lemma_range(n);
    let mut lengths = BTreeMap::new();
    let start = Instant::now();
    let res = find_transversal(l, &[], &[], opts.budget.node_limit)?;
    let top = match res.outcome {
        SearchOutcome::Achieved(t) => achieved(t, "direct-search"),
        SearchOutcome::ProvenAbsent => LengthStatus::ProvenAbsent {
            reason: "exhausted".into(),
        },
        SearchOutcome::Timeout => LengthStatus::Timeout,
    };
    let t4n2 = n % 4 == 2 && top.is_achieved();
    lengths.insert(
        n,
        LengthEntry {
            status: top,
            nodes: res.nodes,
            millis: start.elapsed().as_millis() as u64,
        },
    );
    for len in lo..hi {
        let start = Instant::now();
        let (status, nodes) = if t4n2 && len == n / 2 {
            (
                LengthStatus::Forbidden {
                    reason: Rule::T4n2.code().into(),
                },
                0,
            )
        } else {
            direct(l, len, &Constraints::default(), opts, "exhausted")?
        };
        lengths.insert(
            len,
            LengthEntry {
                status,
                nodes,
                millis: start.elapsed().as_millis() as u64,
            },
        );
    }
    Ok(SpectrumReport::new(l, lengths))
}

/// Classifies every catalog group of order `n`, groups in parallel.
pub fn classify_order(
    n: usize,
    opts: &ClassifyOptions,
) -> Result<Vec<(Group, SpectrumReport)>, ClassifyError> {
    let groups = group::catalog(n)?;
    let per_group = ClassifyOptions {
        jobs: 1,
        ..opts.clone()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| EngineError::BadConstraint(e.to_string()))?;
    let reports: Vec<Result<SpectrumReport, ClassifyError>> = pool.install(|| {
        groups
            .par_iter()
            .map(|g| classify_group(g, &per_group))
            .collect()
    });
    groups
        .into_iter()
        .zip(reports)
        .map(|(g, r)| r.map(|r| (g, r)))
        .collect()
}

/// One line of the classification summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub group: String,
    pub order: usize,
    pub forbidden: BTreeMap<usize, String>,
    /// Lengths missing for reasons other than a forbidding rule.
    pub exceptions: Vec<usize>,
    pub timeouts: Vec<usize>,
    pub verdict: String,
}

pub fn summary_row(g: &Group, r: &SpectrumReport) -> SummaryRow {
    let mut forbidden = BTreeMap::new();
    let mut exceptions = Vec::new();
    let mut timeouts = Vec::new();
    for (&len, e) in &r.lengths {
        match &e.status {
            LengthStatus::Forbidden { reason } => {
                forbidden.insert(len, reason.clone());
            }
            LengthStatus::ProvenAbsent { .. } => exceptions.push(len),
            LengthStatus::Timeout => timeouts.push(len),
            LengthStatus::Achieved { .. } => {}
        }
    }
    SummaryRow {
        group: g.name().to_string(),
        order: g.order(),
        forbidden,
        exceptions,
        timeouts,
        verdict: r
            .verdict
            .as_ref()
            .map_or("incomplete".into(), |v| v.label()),
    }
}

pub fn render_markdown(rows: &[SummaryRow]) -> String {
    let mut out =
        String::from("| n | group | forbidden | exceptions | verdict |\n|---|---|---|---|---|\n");
    for r in rows {
        let forb = r
            .forbidden
            .iter()
            .map(|(l, why)| format!("{l} ({why})"))
            .join(", ");
        let exc = r
            .exceptions
            .iter()
            .map(|l| format!("({}, {l})", r.order))
            .join(", ");
        let mut verdict = r.verdict.clone();
        if !r.timeouts.is_empty() {
            verdict = format!("{verdict}; timeout at {:?}", r.timeouts);
        }
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            r.order, r.group, forb, exc, verdict
        ));
    }
    out
}
