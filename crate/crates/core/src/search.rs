//! Exhaustive scans over all functions `Z_n → Z_n`.
//!
//! The function space is indexed in lexicographic table order: index `i`
//! written in base `n` with `table[0]` as the most significant digit. Work
//! is split into contiguous index ranges, scanned on a fixed-size worker
//! pool and merged at the end. Reports are sorted before they are returned
//! so their content does not depend on the worker count.

use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};
use crate::integrality::{passes_all, IntegralityChecker};
use crate::modfun::{stothers_holds, ModFunction};

/// Default cap on the number of functions a single run may visit. Admits
/// `n ≤ 8`.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`] in the CLI.
pub const BUDGET_ENV: &str = "ROOTAVG_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub workers: usize,
    pub budget: u64,
    /// Scan only tables with `f(0) = 0` and expand the results over the
    /// `n` constant shifts. Valid because integrality is unchanged by
    /// `f ↦ f + d`.
    pub symmetry_reduction: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            symmetry_reduction: false,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_symmetry_reduction(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    pub(crate) fn check_budget(&self, required: Option<u64>, label: impl FnOnce() -> String) -> Result<u64> {
        match required {
            Some(r) if r <= self.budget => Ok(r),
            Some(r) => Err(Error::BudgetExceeded {
                required: r.to_string(),
                budget: self.budget,
            }),
            None => Err(Error::BudgetExceeded {
                required: label(),
                budget: self.budget,
            }),
        }
    }

    pub(crate) fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .expect("failed to start worker pool")
    }
}

/// Outcome of an integrality scan over a function space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub total_functions: u64,
    pub passing: u64,
    pub passing_linear: u64,
    /// Passing tables with no linear representation, sorted.
    pub counterexamples: Vec<Vec<usize>>,
    pub elapsed_ms: u64,
    pub workers: usize,
}

impl SearchReport {
    pub fn is_consistent(&self) -> bool {
        self.passing == self.passing_linear + self.counterexamples.len() as u64
    }

    /// Copy with the wall-clock field cleared, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StothersReport {
    pub p: usize,
    pub total: u64,
    /// Tables with `|W_f| > (p-3)/2` and degree at least 2, sorted.
    pub violations: Vec<Vec<usize>>,
    pub elapsed_ms: u64,
    pub workers: usize,
}

impl StothersReport {
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// The `n^n` functions `Z_n → Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionSpace {
    n: usize,
    len: u64,
}

impl FunctionSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let len = checked_pow(n, n).ok_or_else(|| Error::BudgetExceeded {
            required: format!("{n}^{n}"),
            budget: u64::MAX,
        })?;
        Ok(Self { n, len })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of tables with `f(0) = 0`; they occupy the index prefix
    /// `0..n^(n-1)`.
    pub fn pinned_len(&self) -> u64 {
        self.len / self.n as u64
    }

    pub fn table_at(&self, mut index: u64) -> Vec<usize> {
        assert!(index < self.len, "index {index} outside function space");
        let n = self.n as u64;
        let mut table = vec![0; self.n];
        for slot in table.iter_mut().rev() {
            *slot = (index % n) as usize;
            index /= n;
        }
        table
    }

    pub fn iter(&self) -> FunctionIter {
        self.iter_range(0..self.len)
    }

    pub fn iter_range(&self, range: Range<u64>) -> FunctionIter {
        let end = range.end.min(self.len);
        let start = range.start.min(end);
        let table = if start < self.len {
            self.table_at(start)
        } else {
            vec![0; self.n]
        };
        FunctionIter {
            n: self.n,
            table,
            remaining: end - start,
            started: false,
        }
    }

    /// Splits `range` into at most `pieces` contiguous, non-empty chunks.
    pub fn chunks(&self, range: Range<u64>, pieces: usize) -> Vec<Range<u64>> {
        let len = range.end.saturating_sub(range.start);
        let pieces = (pieces.max(1) as u64).min(len.max(1));
        let step = len / pieces;
        let extra = len % pieces;
        let mut out = Vec::with_capacity(pieces as usize);
        let mut at = range.start;
        for i in 0..pieces {
            let size = step + u64::from(i < extra);
            if size > 0 {
                out.push(at..at + size);
            }
            at += size;
        }
        out
    }
}

/// Odometer over a contiguous index range of a [`FunctionSpace`].
#[derive(Debug, Clone)]
pub struct FunctionIter {
    n: usize,
    table: Vec<usize>,
    remaining: u64,
    started: bool,
}

impl FunctionIter {
    /// Advances and borrows the next table without allocating.
    pub fn next_table(&mut self) -> Option<&[usize]> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.started {
            for slot in self.table.iter_mut().rev() {
                *slot += 1;
                if *slot < self.n {
                    break;
                }
                *slot = 0;
            }
        }
        self.started = true;
        Some(&self.table)
    }
}

impl Iterator for FunctionIter {
    type Item = ModFunction;

    fn next(&mut self) -> Option<ModFunction> {
        let n = self.n;
        let table = self.next_table()?.to_vec();
        Some(ModFunction::new(n, table).expect("odometer stays in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).ok();
        (r.unwrap_or(usize::MAX), r)
    }
}

/// Every function `Z_n → Z_n`, in lexicographic table order.
pub fn enumerate_functions(n: usize) -> Result<FunctionIter> {
    Ok(FunctionSpace::new(n)?.iter())
}

#[derive(Debug, Default)]
struct Tally {
    visited: u64,
    passing: u64,
    passing_linear: u64,
    flagged: Vec<Vec<usize>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.visited += other.visited;
        self.passing += other.passing;
        self.passing_linear += other.passing_linear;
        self.flagged.extend(other.flagged);
        self
    }
}

/// Scans `range` on the configured pool. `init` builds per-chunk scratch
/// state; `visit` classifies one table.
fn scan<W, I, V>(space: &FunctionSpace, range: Range<u64>, cfg: &SearchConfig, init: I, visit: V) -> Tally
where
    I: Fn() -> W + Sync,
    V: Fn(&mut W, &mut Tally, &[usize]) + Sync,
{
    let chunks = space.chunks(range, cfg.workers.max(1) * 8);
    cfg.pool().install(|| {
        chunks
            .into_par_iter()
            .map(|chunk| {
                let mut state = init();
                let mut tally = Tally::default();
                let mut it = space.iter_range(chunk);
                while let Some(table) = it.next_table() {
                    tally.visited += 1;
                    visit(&mut state, &mut tally, table);
                }
                tally
            })
            .reduce(Tally::default, Tally::merge)
    })
}

/// Range to scan and the multiplier that maps its counts back to the
/// whole space.
fn scan_plan(space: &FunctionSpace, cfg: &SearchConfig) -> (Range<u64>, u64) {
    if cfg.symmetry_reduction {
        (0..space.pinned_len(), space.n() as u64)
    } else {
        (0..space.len(), 1)
    }
}

/// Expands pinned representatives over all constant shifts and sorts.
fn expand_flagged(n: usize, flagged: Vec<Vec<usize>>, shifted: bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = if shifted {
        flagged
            .iter()
            .flat_map(|t| (0..n).map(move |d| t.iter().map(|&v| (v + d) % n).collect()))
            .collect()
    } else {
        flagged
    };
    out.sort_unstable();
    out
}

fn integrality_search(
    n: usize,
    cfg: &SearchConfig,
    passes: impl Fn(&mut IntegralityChecker, &[usize]) -> bool + Sync,
) -> Result<SearchReport> {
    let space = FunctionSpace::new(n)?;
    cfg.check_budget(Some(space.len()), String::new)?;
    let start = Instant::now();
    let (range, scale) = scan_plan(&space, cfg);
    let tally = scan(
        &space,
        range,
        cfg,
        || IntegralityChecker::new(n).expect("positive modulus"),
        |checker, tally, table| {
            if !passes(checker, table) {
                return;
            }
            tally.passing += 1;
            let f = ModFunction::new(n, table.to_vec()).expect("odometer stays in range");
            if f.linear_representation().is_some() {
                tally.passing_linear += 1;
            } else {
                tally.flagged.push(f.into_table());
            }
        },
    );
    Ok(SearchReport {
        n,
        total_functions: tally.visited * scale,
        passing: tally.passing * scale,
        passing_linear: tally.passing_linear * scale,
        counterexamples: expand_flagged(n, tally.flagged, cfg.symmetry_reduction),
        elapsed_ms: start.elapsed().as_millis() as u64,
        workers: cfg.workers,
    })
}

/// Checks every `f: Z_p → Z_p` against the `a = 1` integrality slice and
/// classifies the passers by linear representability.
pub fn verify_theorem(p: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    integrality_search(p, cfg, |checker, table| checker.passes_a1(table))
}

/// Checks every `f: Z_n → Z_n` against the full `(a, b)` grid. A nonempty
/// counterexample list is a result, not an error.
pub fn verify_conjecture(n: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    integrality_search(n, cfg, |checker, table| checker.passes_all(table))
}

/// Evaluates the slope-set degree bound on every `f: Z_p → Z_p`.
pub fn verify_stothers(p: usize, cfg: &SearchConfig) -> Result<StothersReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let space = FunctionSpace::new(p)?;
    cfg.check_budget(Some(space.len()), String::new)?;
    let start = Instant::now();
    let (range, scale) = scan_plan(&space, cfg);
    let tally = scan(
        &space,
        range,
        cfg,
        || (),
        |_, tally, table| {
            let f = ModFunction::new(p, table.to_vec()).expect("odometer stays in range");
            if !stothers_holds(&f).expect("prime modulus") {
                tally.flagged.push(f.into_table());
            }
        },
    );
    Ok(StothersReport {
        p,
        total: tally.visited * scale,
        violations: expand_flagged(p, tally.flagged, cfg.symmetry_reduction),
        elapsed_ms: start.elapsed().as_millis() as u64,
        workers: cfg.workers,
    })
}

/// Whether `passes_all` agrees on `f` and `x ↦ f(x) + cx + d`, both
/// computed directly.
pub fn shift_reduction_check(f: &ModFunction, c: i64, d: i64) -> bool {
    passes_all(f) == passes_all(&f.add_linear(c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> SearchConfig {
        SearchConfig::default().with_workers(1)
    }

    #[test]
    fn enumeration_order() {
        let tables: Vec<_> = enumerate_functions(2).unwrap().map(ModFunction::into_table).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let all: Vec<_> = enumerate_functions(3).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0].table(), [0, 0, 0]);
        assert_eq!(all[26].table(), [2, 2, 2]);
        let one: Vec<_> = enumerate_functions(1).unwrap().collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].table(), [0]);
    }

    #[test]
    fn chunks_cover_range() {
        let space = FunctionSpace::new(4).unwrap();
        for pieces in [1, 3, 7, 256, 1000] {
            let chunks = space.chunks(0..space.len(), pieces);
            assert_eq!(chunks.first().unwrap().start, 0);
            assert_eq!(chunks.last().unwrap().end, 256);
            assert!(chunks.windows(2).all(|w| w[0].end == w[1].start));
            let joined: Vec<_> = chunks.iter().flat_map(|c| space.iter_range(c.clone())).collect();
            let direct: Vec<_> = space.iter().collect();
            assert_eq!(joined, direct);
        }
    }

    #[test]
    fn pinned_prefix_is_f0_zero() {
        let space = FunctionSpace::new(4).unwrap();
        let pinned: Vec<_> = space.iter_range(0..space.pinned_len()).collect();
        assert_eq!(pinned.len(), 64);
        assert!(pinned.iter().all(|f| f.table()[0] == 0));
    }

    #[test]
    fn small_theorem_runs() {
        for (p, passing) in [(2, 4), (3, 9), (5, 25)] {
            let r = verify_theorem(p, &single()).unwrap();
            assert_eq!(r.passing, passing);
            assert!(r.counterexamples.is_empty());
            assert_eq!(r.total_functions, checked_pow(p, p).unwrap());
            assert!(r.is_consistent());
        }
        assert_eq!(verify_theorem(4, &single()), Err(Error::NotPrime(4)));
    }

    #[test]
    fn small_conjecture_runs() {
        let r = verify_conjecture(1, &single()).unwrap();
        assert_eq!((r.total_functions, r.passing, r.passing_linear), (1, 1, 1));
        let r = verify_conjecture(4, &single()).unwrap();
        assert_eq!((r.total_functions, r.passing), (256, 16));
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = single().with_budget(100);
        assert_eq!(
            verify_conjecture(4, &cfg),
            Err(Error::BudgetExceeded {
                required: "256".into(),
                budget: 100
            })
        );
        assert!(verify_stothers(5, &cfg).is_err());
        assert!(verify_conjecture(3, &cfg).is_ok());
    }

    #[test]
    fn symmetry_reduction_matches_full_scan() {
        for n in 1..=5 {
            let full = verify_conjecture(n, &single()).unwrap();
            let reduced = verify_conjecture(n, &single().with_symmetry_reduction(true)).unwrap();
            assert_eq!(full.without_timing(), reduced.without_timing());
        }
        let full = verify_stothers(5, &single()).unwrap();
        let reduced = verify_stothers(5, &single().with_symmetry_reduction(true)).unwrap();
        assert_eq!(full.without_timing(), reduced.without_timing());
    }

    #[test]
    fn expansion_sorts_and_shifts() {
        let out = expand_flagged(3, vec![vec![0, 2, 2]], true);
        assert_eq!(out, vec![vec![0, 2, 2], vec![1, 0, 0], vec![2, 1, 1]]);
    }

    #[test]
    fn shift_examples() {
        let sq = ModFunction::new(5, vec![0, 1, 4, 4, 1]).unwrap();
        assert!(shift_reduction_check(&sq, 0, 0));
        assert!(shift_reduction_check(&sq, 1, 3));
        let f = ModFunction::from_fn(6, |x| (x * x * x + x) as i64).unwrap();
        assert!(shift_reduction_check(&f, 2, 1));
        assert!(passes_all(&f.add_linear(2, 1)));
    }
}
