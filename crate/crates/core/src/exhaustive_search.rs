//! Brute force searches over candidate blocking sets, a pruned search
//! through the window normal form, and the cross check of both against the
//! parameterized families.
//!
//! Budgets are explicit: orders past the stated limits return
//! [`Error::BudgetExceeded`] instead of a guess. Long runs can write atomic
//! checkpoints and resume from them, and results are identical for any
//! worker count.

use crate::blocker_families::{enumerate_descriptors, generate, BlockerDescriptor};
use crate::cyclic_geometry::{Edge, EdgeSet};
use crate::error::Error;
use crate::ham_paths::blocks;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::path::PathBuf;
use std::sync::Mutex;

/// Tuning for the enumeration runs. Defaults are sequential with no
/// checkpointing; [`SearchOptions::from_env`] honors BLOCKERLAB_WORKERS and
/// BLOCKERLAB_CHECKPOINT_DIR.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub workers: usize,
    pub checkpoint_dir: Option<PathBuf>,
    pub checkpoint_interval: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, checkpoint_dir: None, checkpoint_interval: 100_000 }
    }
}

impl SearchOptions {
    pub fn from_env() -> Self {
        let workers = std::env::var("BLOCKERLAB_WORKERS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&w| w >= 1)
            .unwrap_or(1);
        let checkpoint_dir = std::env::var("BLOCKERLAB_CHECKPOINT_DIR")
            .ok()
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .map(PathBuf::from);
        SearchOptions { workers, checkpoint_dir, ..SearchOptions::default() }
    }
}

/// Memoizes blocking decisions per rotation class. Blocking is invariant
/// under rotation, so the canonical rotation serves as the key.
pub struct BlocksCache {
    map: Mutex<HashMap<EdgeSet, bool>>,
}

impl BlocksCache {
    pub fn new() -> Self {
        BlocksCache { map: Mutex::new(HashMap::new()) }
    }

    pub fn blocks_cached(&self, s: &EdgeSet) -> bool {
        let (canon, _) = s.canonical_rotation();
        if let Some(&hit) = self.map.lock().unwrap().get(&canon) {
            return hit;
        }
        let result = blocks(&canon);
        self.map.lock().unwrap().insert(canon, result);
        result
    }
}

impl Default for BlocksCache {
    fn default() -> Self {
        BlocksCache::new()
    }
}

/// Result of the minimum blocking size search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinBlockingReport {
    pub n: usize,
    pub size: usize,
    pub example: EdgeSet,
    pub candidates_tested: u64,
}

/// Comparison of the exhaustively found blockers with the family output.
/// count_bruteforce counts the oracle side even when the oracle is the
/// pruned search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub n: usize,
    pub count_bruteforce: usize,
    pub count_parametric: usize,
    pub agreement_count: usize,
    pub missing_from_parametric: Vec<EdgeSet>,
    pub extra_in_parametric: Vec<EdgeSet>,
    pub class_a_count: usize,
    pub class_b_count: usize,
}

fn all_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in (a + 1)..n {
            out.push(Edge::new(a, b).unwrap());
        }
    }
    out
}

fn binomial(a: usize, b: usize) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Advances a strictly increasing index vector to the next combination in
/// lexicographic order.
fn next_combination(idx: &mut [usize], total: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + total - k {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Combination of given lexicographic rank, as increasing indices.
fn unrank_combination(mut rank: u64, total: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0usize;
    for j in 0..k {
        loop {
            let c = binomial(total - 1 - x, k - 1 - j);
            if rank < c {
                break;
            }
            rank -= c;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Smallest size of a blocking set, found by exhausting ascending sizes.
/// The example is the lexicographically first blocker of that size.
pub fn min_blocking_size(n: usize) -> Result<MinBlockingReport, Error> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    if n > 9 {
        return Err(Error::BudgetExceeded(format!(
            "minimum blocking size search budget covers n <= 9; n = {n} not computed"
        )));
    }
    let edges = all_edges(n);
    let cache = BlocksCache::new();
    let mut tested = 0u64;
    for size in 1..=edges.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tested += 1;
            let s = EdgeSet::from_edges(n, idx.iter().map(|&i| edges[i])).unwrap();
            if cache.blocks_cached(&s) {
                return Ok(MinBlockingReport { n, size, example: s, candidates_tested: tested });
            }
            if !next_combination(&mut idx, edges.len()) {
                break;
            }
        }
    }
    unreachable!("the complete edge set blocks every spanning path")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    mode: String,
    size: usize,
    next_index: u64,
    found: Vec<EdgeSet>,
    done: bool,
}

fn checkpoint_path(dir: &std::path::Path, mode: &str, n: usize) -> PathBuf {
    dir.join(format!("blockerlab-{mode}-{n}.json"))
}

fn load_checkpoint(
    path: &std::path::Path,
    n: usize,
    mode: &str,
    size: usize,
) -> Result<Option<Checkpoint>, Error> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Checkpoint(format!("read {}: {e}", path.display())))?;
    let cp: Checkpoint = serde_json::from_str(&text)
        .map_err(|e| Error::Checkpoint(format!("parse {}: {e}", path.display())))?;
    if cp.n != n || cp.mode != mode || cp.size != size {
        return Err(Error::Checkpoint(format!(
            "checkpoint {} holds n={} mode={} size={}, expected n={n} mode={mode} size={size}",
            path.display(),
            cp.n,
            cp.mode,
            cp.size
        )));
    }
    Ok(Some(cp))
}

fn store_checkpoint(path: &std::path::Path, cp: &Checkpoint) -> Result<(), Error> {
    let tmp = path.with_extension("json.tmp");
    let data = serde_json::to_vec(cp)
        .map_err(|e| Error::Checkpoint(format!("serialize checkpoint: {e}")))?;
    std::fs::write(&tmp, data)
        .map_err(|e| Error::Checkpoint(format!("write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::Checkpoint(format!("rename {}: {e}", path.display())))?;
    Ok(())
}

/// Scans candidates by index, keeping the blockers in index order. Resumes
/// from a checkpoint when one matches and writes progress atomically, one
/// batch per checkpoint interval, parallel within a batch.
fn run_indexed_search(
    n: usize,
    mode: &str,
    size: usize,
    total: u64,
    opts: &SearchOptions,
    candidate: impl Fn(u64) -> EdgeSet + Sync,
) -> Result<Vec<EdgeSet>, Error> {
    let path = opts.checkpoint_dir.as_deref().map(|d| checkpoint_path(d, mode, n));
    let (mut next, mut found) = match &path {
        Some(p) => match load_checkpoint(p, n, mode, size)? {
            Some(cp) if cp.done => return Ok(cp.found),
            Some(cp) => (cp.next_index, cp.found),
            None => (0, Vec::new()),
        },
        None => (0, Vec::new()),
    };
    let cache = BlocksCache::new();
    let interval = opts.checkpoint_interval.max(1);
    let pool = (opts.workers > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("worker pool")
    });
    let keep = |i: u64| {
        let s = candidate(i);
        cache.blocks_cached(&s).then_some(s)
    };
    while next < total {
        let end = total.min(next + interval);
        let mut hits: Vec<EdgeSet> = match &pool {
            Some(pool) => pool.install(|| (next..end).into_par_iter().filter_map(keep).collect()),
            None => (next..end).filter_map(keep).collect(),
        };
        found.append(&mut hits);
        next = end;
        if let Some(p) = &path {
            let cp = Checkpoint {
                n,
                mode: mode.to_owned(),
                size,
                next_index: next,
                found: found.clone(),
                done: next == total,
            };
            store_checkpoint(p, &cp)?;
        }
    }
    Ok(found)
}

/// Every blocker of order n found by testing all candidate m-subsets, in
/// edge list order.
pub fn enumerate_blockers_bruteforce(n: usize) -> Result<Vec<EdgeSet>, Error> {
    enumerate_blockers_bruteforce_with(n, &SearchOptions::default())
}

pub fn enumerate_blockers_bruteforce_with(
    n: usize,
    opts: &SearchOptions,
) -> Result<Vec<EdgeSet>, Error> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder { n });
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    if n > 9 {
        return Err(Error::BudgetExceeded(format!(
            "brute force blocker enumeration supports n in {{3, 5, 7, 9}}; n = {n} not computed"
        )));
    }
    let m = (n + 1) / 2;
    let edges = all_edges(n);
    let total = binomial(edges.len(), m);
    let found = run_indexed_search(n, "bruteforce", m, total, opts, |i| {
        let picks = unrank_combination(i, edges.len(), m);
        EdgeSet::from_edges(n, picks.iter().map(|&j| edges[j])).unwrap()
    })?;
    debug_assert!(found.windows(2).all(|w| w[0].edges() < w[1].edges()));
    Ok(found)
}

/// Every blocker of order n found by scanning the window normal form: for
/// each window position, one candidate per vector of slot offsets. Returns
/// edge list order.
pub fn enumerate_blockers_pruned(n: usize) -> Result<Vec<EdgeSet>, Error> {
    enumerate_blockers_pruned_with(n, &SearchOptions::default())
}

pub fn enumerate_blockers_pruned_with(
    n: usize,
    opts: &SearchOptions,
) -> Result<Vec<EdgeSet>, Error> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder { n });
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    if n > 13 {
        return Err(Error::BudgetExceeded(format!(
            "pruned blocker enumeration budget covers odd n <= 13; n = {n} not computed"
        )));
    }
    let m = (n + 1) / 2;
    let radix = (m - 1).max(1) as u64;
    let per_window = radix.pow(m as u32);
    let total = n as u64 * per_window;
    let mut found = run_indexed_search(n, "pruned", m, total, opts, |i| {
        let c = (i / per_window) as usize;
        let r = i % per_window;
        let edges = (1..=m as i64).map(|slot| {
            let exp = (m as i64 - slot) as u32;
            let t = ((r / radix.pow(exp)) % radix) as i64;
            Edge::normalized(slot - 1 - t, slot + t, n)
        });
        EdgeSet::from_edges(n, edges).unwrap().rotated(c)
    })?;
    found.sort_by(|a, b| a.edges().cmp(b.edges()));
    debug_assert!(
        found.windows(2).all(|w| w[0] != w[1]),
        "window positions are unique per blocker"
    );
    Ok(found)
}

/// Edge sets of every descriptor of order n, in edge list order. Two
/// descriptors generating the same set is an error, never deduplicated.
pub fn enumerate_blockers_parametric(n: usize) -> Result<Vec<EdgeSet>, Error> {
    let mut seen: HashMap<EdgeSet, BlockerDescriptor> = HashMap::new();
    for d in enumerate_descriptors(n)? {
        let s = generate(&d)?;
        if let Some(prev) = seen.get(&s) {
            return Err(Error::DescriptorCollision(format!(
                "{prev:?} and {d:?} both generate {}",
                s.to_edge_list()
            )));
        }
        seen.insert(s, d);
    }
    let mut out: Vec<EdgeSet> = seen.into_keys().collect();
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}

/// Compares the exhaustive oracle with the family output. The oracle is the
/// brute force scan for n <= 9 and the pruned scan for n in {11, 13}; the
/// pruned scan is validated against brute force at the small orders by the
/// test suite.
pub fn check_characterization(n: usize) -> Result<CharacterizationReport, Error> {
    check_characterization_with(n, &SearchOptions::default())
}

pub fn check_characterization_with(
    n: usize,
    opts: &SearchOptions,
) -> Result<CharacterizationReport, Error> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder { n });
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    let oracle = if n <= 9 {
        enumerate_blockers_bruteforce_with(n, opts)?
    } else if n <= 13 {
        enumerate_blockers_pruned_with(n, opts)?
    } else {
        return Err(Error::BudgetExceeded(format!(
            "characterization check budget covers odd n <= 13; n = {n} not computed"
        )));
    };
    let descriptors = enumerate_descriptors(n)?;
    let class_a_count =
        descriptors.iter().filter(|d| matches!(d, BlockerDescriptor::A(_))).count();
    let class_b_count = descriptors.len() - class_a_count;
    let parametric = enumerate_blockers_parametric(n)?;
    let oracle_index: HashSet<&EdgeSet> = oracle.iter().collect();
    let parametric_index: HashSet<&EdgeSet> = parametric.iter().collect();
    let missing_from_parametric: Vec<EdgeSet> =
        oracle.iter().filter(|s| !parametric_index.contains(s)).cloned().collect();
    let extra_in_parametric: Vec<EdgeSet> =
        parametric.iter().filter(|s| !oracle_index.contains(s)).cloned().collect();
    let agreement_count = oracle.len() - missing_from_parametric.len();
    debug_assert_eq!(agreement_count, parametric.len() - extra_in_parametric.len());
    debug_assert_eq!(parametric.len(), descriptors.len());
    Ok(CharacterizationReport {
        n,
        count_bruteforce: oracle.len(),
        count_parametric: parametric.len(),
        agreement_count,
        missing_from_parametric,
        extra_in_parametric,
        class_a_count,
        class_b_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_unrank_agree() {
        assert_eq!(binomial(36, 5), 376_992);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 7), 0);
        let total = 6;
        let k = 3;
        let mut idx: Vec<usize> = (0..k).collect();
        let mut rank = 0u64;
        loop {
            assert_eq!(unrank_combination(rank, total, k), idx);
            rank += 1;
            if !next_combination(&mut idx, total) {
                break;
            }
        }
        assert_eq!(rank, binomial(total, k));
    }

    #[test]
    fn min_blocking_size_small_orders() {
        for (n, expected) in [(3usize, 2usize), (5, 3), (7, 4)] {
            let report = min_blocking_size(n).unwrap();
            assert_eq!(report.size, expected, "n = {n}");
            assert_eq!(report.example.len(), expected);
            assert!(crate::ham_paths::blocks(&report.example));
            assert!(report.candidates_tested > 0);
        }
    }

    #[test]
    fn min_blocking_size_budget() {
        assert!(matches!(min_blocking_size(2), Err(Error::OrderTooSmall { .. })));
        assert!(matches!(min_blocking_size(10), Err(Error::BudgetExceeded(_))));
        assert!(matches!(min_blocking_size(11), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn bruteforce_counts() {
        assert_eq!(enumerate_blockers_bruteforce(3).unwrap().len(), 3);
        assert_eq!(enumerate_blockers_bruteforce(5).unwrap().len(), 15);
        assert_eq!(enumerate_blockers_bruteforce(7).unwrap().len(), 56);
    }

    #[test]
    fn bruteforce_preconditions() {
        assert!(matches!(enumerate_blockers_bruteforce(4), Err(Error::EvenOrder { n: 4 })));
        assert!(matches!(enumerate_blockers_bruteforce(1), Err(Error::OrderTooSmall { .. })));
        assert!(matches!(enumerate_blockers_bruteforce(11), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn pruned_matches_bruteforce() {
        for n in [3usize, 5, 7] {
            assert_eq!(
                enumerate_blockers_pruned(n).unwrap(),
                enumerate_blockers_bruteforce(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn pruned_preconditions() {
        assert!(matches!(enumerate_blockers_pruned(6), Err(Error::EvenOrder { n: 6 })));
        assert!(matches!(enumerate_blockers_pruned(15), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn parametric_counts() {
        assert_eq!(enumerate_blockers_parametric(3).unwrap().len(), 3);
        assert_eq!(enumerate_blockers_parametric(5).unwrap().len(), 15);
        assert_eq!(enumerate_blockers_parametric(7).unwrap().len(), 56);
        assert_eq!(enumerate_blockers_parametric(9).unwrap().len(), 189);
        assert_eq!(enumerate_blockers_parametric(11).unwrap().len(), 572);
    }

    #[test]
    fn characterization_agrees_at_small_orders() {
        for n in [3usize, 5, 7] {
            let report = check_characterization(n).unwrap();
            assert!(report.missing_from_parametric.is_empty());
            assert!(report.extra_in_parametric.is_empty());
            assert_eq!(report.agreement_count, report.count_bruteforce);
            assert_eq!(report.agreement_count, report.count_parametric);
            assert_eq!(report.class_a_count + report.class_b_count, report.count_parametric);
        }
    }

    #[test]
    fn workers_do_not_change_results() {
        let sequential = enumerate_blockers_pruned(7).unwrap();
        let opts = SearchOptions { workers: 2, ..SearchOptions::default() };
        assert_eq!(enumerate_blockers_pruned_with(7, &opts).unwrap(), sequential);
    }

    // Reference decode of a pruned candidate index, pinning the convention:
    // window position first, then slot offsets with slot 1 most significant.
    fn pruned_candidate_reference(n: usize, i: u64) -> EdgeSet {
        let m = (n + 1) / 2;
        let radix = (m - 1).max(1) as u64;
        let per_window = radix.pow(m as u32);
        let c = (i / per_window) as usize;
        let mut r = i % per_window;
        let mut offsets = vec![0i64; m];
        for slot in (0..m).rev() {
            offsets[slot] = (r % radix) as i64;
            r /= radix;
        }
        let edges = (1..=m as i64)
            .map(|slot| Edge::normalized(slot - 1 - offsets[(slot - 1) as usize], slot + offsets[(slot - 1) as usize], n));
        EdgeSet::from_edges(n, edges).unwrap().rotated(c)
    }

    #[test]
    fn checkpoint_resume_completes_partial_run() {
        let fresh = enumerate_blockers_pruned(5).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let half = 20u64;
        let found: Vec<EdgeSet> = (0..half)
            .map(|i| pruned_candidate_reference(5, i))
            .filter(|s| crate::ham_paths::blocks(s))
            .collect();
        let cp = Checkpoint {
            n: 5,
            mode: "pruned".to_owned(),
            size: 3,
            next_index: half,
            found,
            done: false,
        };
        let path = checkpoint_path(dir.path(), "pruned", 5);
        store_checkpoint(&path, &cp).unwrap();
        let opts = SearchOptions {
            checkpoint_dir: Some(dir.path().to_path_buf()),
            checkpoint_interval: 7,
            ..SearchOptions::default()
        };
        assert_eq!(enumerate_blockers_pruned_with(5, &opts).unwrap(), fresh);
        let final_cp = load_checkpoint(&path, 5, "pruned", 3).unwrap().unwrap();
        assert!(final_cp.done);
        assert_eq!(final_cp.next_index, 40);
        // A completed checkpoint short circuits the next run.
        assert_eq!(enumerate_blockers_pruned_with(5, &opts).unwrap(), fresh);
    }

    #[test]
    fn checkpoint_mismatch_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let cp = Checkpoint {
            n: 7,
            mode: "pruned".to_owned(),
            size: 4,
            next_index: 0,
            found: Vec::new(),
            done: false,
        };
        let path = checkpoint_path(dir.path(), "pruned", 5);
        store_checkpoint(&path, &cp).unwrap();
        let opts = SearchOptions {
            checkpoint_dir: Some(dir.path().to_path_buf()),
            ..SearchOptions::default()
        };
        assert!(matches!(
            enumerate_blockers_pruned_with(5, &opts),
            Err(Error::Checkpoint(_))
        ));
    }
}
