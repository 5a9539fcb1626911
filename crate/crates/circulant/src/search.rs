//! Exhaustive and heuristic search for graphs of given degree and
//! diameter.
//!
//! Isomorphic connection sets are collapsed to the lexicographically
//! least member of the multiplier orbit, so the exhaustive path visits
//! one candidate per isomorphism class. Orders are scanned from the top
//! of the range down in parallel shards; a result is definitive only if
//! no larger order was skipped for budget reasons.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};

use num::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cyclic::{multiplier_image, normalize, ConnectionSet};
use crate::metrics::{
    reached_within_capped, verify_diameter_at_most_capped, work_cap_from_env,
};
use crate::{CirculantGraph, Error, Result};

/// Lexicographically least multiplier image of the set: the canonical
/// representative of its isomorphism class under Z_n* action.
pub fn canonical_rep(s: &ConnectionSet) -> ConnectionSet {
    let n = s.n();
    let mut best: Option<ConnectionSet> = None;
    for u in 1..n {
        if u.gcd(&n) != 1 {
            continue;
        }
        let image = multiplier_image(s, u).expect("unit multiplier");
        if best
            .as_ref()
            .is_none_or(|b| image.elems() < b.elems())
        {
            best = Some(image);
        }
    }
    best.expect("u = 1 always applies")
}

fn is_canonical(s: &ConnectionSet) -> bool {
    canonical_rep(s).elems() == s.elems()
}

/// Visit r-subsets of 0..m in lexicographic order until the callback
/// breaks or the subsets run out.
fn combinations<T>(
    m: usize,
    r: usize,
    mut f: impl FnMut(&[usize]) -> Result<ControlFlow<T>>,
) -> Result<Option<T>> {
    if r > m {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if let ControlFlow::Break(t) = f(&idx)? {
            return Ok(Some(t));
        }
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] < m - r + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial_saturating(m: u128, r: u128) -> u128 {
    if r > m {
        return 0;
    }
    let r = r.min(m - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        match acc.checked_mul(m - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Reduced choice domain and forced extras for one (n, d) pair, or None
/// if no degree-d set exists on Z_n.
fn search_shape(n: u64, d: u32, directed: bool) -> Option<(Vec<u64>, Vec<u64>, usize)> {
    if n < 2 || d == 0 || d as u64 > n - 1 {
        return None;
    }
    if directed {
        return Some(((1..n).collect(), Vec::new(), d as usize));
    }
    if d % 2 == 1 && n % 2 == 1 {
        return None; // odd degree needs the involution n/2
    }
    let domain: Vec<u64> = (1..n.div_ceil(2)).collect();
    let forced = if d % 2 == 1 { vec![n / 2] } else { Vec::new() };
    Some((domain, forced, d as usize / 2))
}

fn exists_graph_shared(
    n: u64,
    d: u32,
    k: u32,
    directed: bool,
    counter: &AtomicU64,
    limit: u64,
) -> Result<Option<ConnectionSet>> {
    let Some((domain, forced, r)) = search_shape(n, d, directed) else {
        return Ok(None);
    };
    let total = binomial_saturating(domain.len() as u128, r as u128);
    let remaining = limit.saturating_sub(counter.load(Ordering::Relaxed));
    if total > remaining as u128 {
        return Err(Error::WorkCap {
            needed: total,
            cap: limit,
        });
    }
    let cap = work_cap_from_env();
    let found = combinations(domain.len(), r, |idx| {
        counter.fetch_add(1, Ordering::Relaxed);
        let mut raw: Vec<u128> = forced.iter().map(|&x| x as u128).collect();
        raw.extend(idx.iter().map(|&i| domain[i] as u128));
        let gcd = raw.iter().fold(n as u128, |acc, &e| acc.gcd(&e));
        if gcd != 1 {
            return Ok(ControlFlow::Continue(()));
        }
        let set = normalize(n as u128, &raw, directed)?;
        if set.degree() != d as usize || !is_canonical(&set) {
            return Ok(ControlFlow::Continue(()));
        }
        if verify_diameter_at_most_capped(&CirculantGraph::new(set.clone()), k, cap)? {
            return Ok(ControlFlow::Break(set));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(found)
}

/// Search Z_n for a degree-d connection set of diameter ≤ k. The budget
/// caps how many candidate sets may be examined; exceeding it is an
/// error so that absence of a witness stays a proof.
pub fn exists_graph(
    n: u64,
    d: u32,
    k: u32,
    directed: bool,
    budget: u64,
) -> Result<Option<ConnectionSet>> {
    let counter = AtomicU64::new(0);
    exists_graph_shared(n, d, k, directed, &counter, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Heuristic,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub d: u32,
    pub k: u32,
    pub directed: bool,
    pub mode: SearchMode,
    /// Inclusive order range to scan.
    pub n_range: (u64, u64),
    /// Candidate-set budget (exhaustive) or score evaluations
    /// (heuristic), shared across the whole scan.
    pub budget: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: Option<(u64, ConnectionSet)>,
    /// True when every order above the result was fully enumerated, so
    /// the result is the exact maximum in the range.
    pub definitive: bool,
    pub examined: u64,
}

/// Largest order in the range admitting a degree-d diameter-k graph.
/// Orders are tried from the top down, a shard at a time in parallel.
pub fn find_max_order(spec: &SearchSpec) -> Result<SearchOutcome> {
    let (lo, hi) = spec.n_range;
    if lo > hi || lo == 0 {
        return Err(Error::ValueRange {
            value: lo as u128,
            bound: hi as u128 + 1,
        });
    }
    let counter = AtomicU64::new(0);
    let mut definitive = spec.mode == SearchMode::Exhaustive;
    let shard = (rayon::current_num_threads() * 4).max(8) as u64;
    let mut top = hi;
    loop {
        let bottom = top.saturating_sub(shard - 1).max(lo);
        let ns: Vec<u64> = (bottom..=top).rev().collect();
        let results: Vec<(u64, Result<Option<ConnectionSet>>)> = ns
            .par_iter()
            .map(|&n| {
                let res = match spec.mode {
                    SearchMode::Exhaustive => {
                        exists_graph_shared(n, spec.d, spec.k, spec.directed, &counter, spec.budget)
                    }
                    SearchMode::Heuristic => heuristic_find_shared(
                        n,
                        spec.d,
                        spec.k,
                        spec.directed,
                        spec.seed ^ n,
                        &counter,
                        spec.budget,
                    ),
                };
                (n, res)
            })
            .collect();
        for (n, res) in results {
            match res {
                Ok(Some(set)) => {
                    return Ok(SearchOutcome {
                        best: Some((n, set)),
                        definitive,
                        examined: counter.load(Ordering::Relaxed),
                    });
                }
                Ok(None) => {}
                Err(Error::WorkCap { .. }) | Err(Error::TooLarge(_)) => definitive = false,
                Err(e) => return Err(e),
            }
        }
        if bottom == lo {
            break;
        }
        top = bottom - 1;
    }
    Ok(SearchOutcome {
        best: None,
        definitive,
        examined: counter.load(Ordering::Relaxed),
    })
}

/// Vertices left uncovered at distance ≤ k, the heuristic's objective.
/// Disconnected candidates score by their unreachable count without a
/// BFS.
fn deficit(n: u64, raw: &[u128], directed: bool, k: u32, cap: u64) -> Result<u64> {
    let gcd = raw.iter().fold(n as u128, |acc, &e| acc.gcd(&e));
    if gcd != 1 {
        return Ok(n - (n as u128 / gcd) as u64);
    }
    let g = CirculantGraph::new(normalize(n as u128, raw, directed)?);
    Ok(n - reached_within_capped(&g, k, cap)?)
}

fn heuristic_find_shared(
    n: u64,
    d: u32,
    k: u32,
    directed: bool,
    seed: u64,
    counter: &AtomicU64,
    limit: u64,
) -> Result<Option<ConnectionSet>> {
    let Some((domain, forced, r)) = search_shape(n, d, directed) else {
        return Ok(None);
    };
    if r > domain.len() {
        return Ok(None);
    }
    let cap = work_cap_from_env();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw_of = |chosen: &[usize]| -> Vec<u128> {
        forced
            .iter()
            .chain(chosen.iter().map(|&i| &domain[i]))
            .map(|&x| x as u128)
            .collect()
    };
    let spend = |c: &AtomicU64| c.fetch_add(1, Ordering::Relaxed) >= limit;
    while !spend(counter) {
        // steepest-descent restart from a fresh random set
        let mut chosen = rand::seq::index::sample(&mut rng, domain.len(), r).into_vec();
        let mut in_set = vec![false; domain.len()];
        for &i in &chosen {
            in_set[i] = true;
        }
        let mut score = deficit(n, &raw_of(&chosen), directed, k, cap)?;
        loop {
            if score == 0 {
                return Ok(Some(normalize(n as u128, &raw_of(&chosen), directed)?));
            }
            let mut best: Option<(u64, usize, usize)> = None;
            'slots: for slot in 0..r {
                let old = chosen[slot];
                for (cand, &used) in in_set.iter().enumerate() {
                    if used {
                        continue;
                    }
                    if spend(counter) {
                        return Ok(None);
                    }
                    chosen[slot] = cand;
                    let s = deficit(n, &raw_of(&chosen), directed, k, cap)?;
                    chosen[slot] = old;
                    if best.is_none_or(|(b, _, _)| s < b) {
                        best = Some((s, slot, cand));
                        if s == 0 {
                            break 'slots;
                        }
                    }
                }
            }
            match best {
                Some((s, slot, cand)) if s < score => {
                    in_set[chosen[slot]] = false;
                    in_set[cand] = true;
                    chosen[slot] = cand;
                    score = s;
                }
                _ => break, // local minimum: restart
            }
        }
    }
    Ok(None)
}

/// Single-order heuristic search with seeded restarts.
pub fn heuristic_find(
    n: u64,
    d: u32,
    k: u32,
    directed: bool,
    seed: u64,
    budget: u64,
) -> Result<Option<ConnectionSet>> {
    let counter = AtomicU64::new(0);
    heuristic_find_shared(n, d, k, directed, seed, &counter, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::diameter;

    #[test]
    fn canonical_rep_examples() {
        let s = normalize(21, &[2, 4, 5, 16, 17, 19], false).unwrap();
        assert_eq!(canonical_rep(&s).elems(), &[1, 2, 8, 13, 19, 20]);
        let s = normalize(12, &[3, 9], false).unwrap();
        assert_eq!(canonical_rep(&s).elems(), &[3, 9]);
        // already canonical: fixed point
        let s = normalize(13, &[1, 5, 8, 12], false).unwrap();
        assert!(is_canonical(&s));
    }

    #[test]
    fn exists_at_the_record_order_but_not_above() {
        let set = exists_graph(13, 4, 2, false, 100_000).unwrap().unwrap();
        assert_eq!(set.elems(), &[1, 5, 8, 12]);
        assert_eq!(diameter(&CirculantGraph::new(set)).unwrap(), 2);
        assert!(exists_graph(14, 4, 2, false, 100_000).unwrap().is_none());
        assert!(exists_graph(11, 4, 2, false, 100_000).unwrap().is_some());
    }

    #[test]
    fn odd_degree_parity() {
        assert!(exists_graph(15, 3, 5, false, 100_000).unwrap().is_none());
        let set = exists_graph(16, 3, 5, false, 100_000).unwrap().unwrap();
        assert_eq!(set.degree(), 3);
        assert!(set.elems().contains(&8));
    }

    #[test]
    fn directed_small_orders() {
        assert!(exists_graph(5, 2, 2, true, 100_000).unwrap().is_some());
        assert!(exists_graph(6, 2, 2, true, 100_000).unwrap().is_none());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        assert!(matches!(
            exists_graph(80, 6, 3, false, 10),
            Err(Error::WorkCap { .. })
        ));
    }

    #[test]
    fn max_order_degree4_diameter2() {
        let spec = SearchSpec {
            d: 4,
            k: 2,
            directed: false,
            mode: SearchMode::Exhaustive,
            n_range: (1, 30),
            budget: 1_000_000,
            seed: 0,
        };
        let out = find_max_order(&spec).unwrap();
        let (n, set) = out.best.unwrap();
        assert_eq!(n, 13);
        assert!(out.definitive);
        assert_eq!(set.elems(), &[1, 5, 8, 12]);
    }

    #[test]
    fn starved_search_is_not_definitive() {
        let spec = SearchSpec {
            d: 4,
            k: 2,
            directed: false,
            mode: SearchMode::Exhaustive,
            n_range: (20, 30),
            budget: 5,
            seed: 0,
        };
        let out = find_max_order(&spec).unwrap();
        assert!(out.best.is_none());
        assert!(!out.definitive);
    }

    #[test]
    fn heuristic_finds_known_graphs() {
        let set = heuristic_find(13, 4, 2, false, 7, 100_000).unwrap().unwrap();
        let g = CirculantGraph::new(set);
        assert_eq!(g.degree(), 4);
        assert!(diameter(&g).unwrap() <= 2);
        let set = heuristic_find(55, 6, 3, false, 7, 1_000_000).unwrap().unwrap();
        let g = CirculantGraph::new(set);
        assert_eq!(g.degree(), 6);
        assert!(diameter(&g).unwrap() <= 3);
    }

    #[test]
    fn heuristic_mode_is_never_definitive() {
        let spec = SearchSpec {
            d: 4,
            k: 2,
            directed: false,
            mode: SearchMode::Heuristic,
            n_range: (13, 13),
            budget: 100_000,
            seed: 3,
        };
        let out = find_max_order(&spec).unwrap();
        assert!(out.best.is_some());
        assert!(!out.definitive);
    }
}
