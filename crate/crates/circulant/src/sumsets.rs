//! k-fold sumsets over Z_n and the covering number SS(n, k): the least
//! size of a set A with kA = Z_n.
//!
//! A diameter-k directed circulant graph on Z_n certifies
//! SS(n, k) ≤ |S ∪ {0}|, since every residue is a sum of at most k
//! generators.

use crate::cyclic::CirculantGraph;
use crate::metrics::{diameter_capped, verify_diameter_at_most_capped, DEFAULT_WORK_CAP};
use crate::{Error, Result};

/// Fixed-width bitset over Z_n with cyclic rotation. Bits at positions
/// ≥ n stay zero; one guard word simplifies unaligned reads.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    n: usize,
    words: Vec<u64>,
}

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset {
            n,
            words: vec![0; n.div_ceil(64) + 1],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_full(&self) -> bool {
        self.count() == self.n
    }

    fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// 64 bits starting at bit position `pos` (reads into the guard word).
    fn read64(&self, pos: usize) -> u64 {
        let (w, r) = (pos / 64, pos % 64);
        if r == 0 {
            self.words[w]
        } else {
            self.words[w] >> r | self.words[w + 1] << (64 - r)
        }
    }

    /// 64 bits starting at cyclic position `pos`, wrapping at n.
    fn read64_cyclic(&self, pos: usize) -> u64 {
        let n = self.n;
        if pos + 64 <= n {
            self.read64(pos)
        } else {
            let head = n - pos; // bits [pos, n)
            let lo = if head == 0 { 0 } else { self.read64(pos) & (u64::MAX >> (64 - head)) };
            lo | self.read64(0).wrapping_shl(head as u32)
        }
    }

    /// self |= (other rotated left by s), cyclically within n bits.
    fn or_rotated(&mut self, other: &Bitset, s: usize) {
        let n = self.n;
        debug_assert_eq!(other.n, n);
        let full_words = n / 64;
        for wi in 0..full_words {
            let src = (wi * 64 + n - s % n) % n;
            self.words[wi] |= other.read64_cyclic(src);
        }
        let tail = n % 64;
        if tail > 0 {
            let src = (full_words * 64 + n - s % n) % n;
            self.words[full_words] |= other.read64_cyclic(src) & (u64::MAX >> (64 - tail));
        }
    }
}

fn bitset_from(n: usize, members: &[usize]) -> Bitset {
    let mut b = Bitset::new(n);
    for &m in members {
        b.set(m);
    }
    b
}

/// X + Y as bitsets; iterates the smaller set and rotates the larger.
fn add_sets(x: &Bitset, y: &Bitset) -> Bitset {
    let (small, large) = if x.count() <= y.count() { (x, y) } else { (y, x) };
    let mut out = Bitset::new(x.n);
    for s in small.members() {
        out.or_rotated(large, s);
    }
    out
}

fn validated(n: u64, a: &[u64]) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::BadModulus(0));
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    a.iter()
        .map(|&x| {
            if x >= n {
                Err(Error::ValueRange { value: x as u128, bound: n as u128 })
            } else {
                Ok(x as usize)
            }
        })
        .collect()
}

/// The k-fold sumset kA = A + A + … + A over Z_n, as a sorted list of
/// residues. Computed by iterated doubling (kA from ⌈k/2⌉A).
pub fn sumset_power(n: u64, a: &[u64], k: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::ValueRange { value: 0, bound: 1 });
    }
    let members = validated(n, a)?;
    let base = bitset_from(n as usize, &members);
    let mut square = base;
    let mut acc: Option<Bitset> = None;
    let mut e = k;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => square.clone(),
                Some(r) => add_sets(&r, &square),
            });
        }
        e >>= 1;
        if e == 0 || acc.as_ref().is_some_and(|r| r.is_full()) {
            break;
        }
        square = add_sets(&square, &square);
    }
    let result = acc.expect("k ≥ 1");
    Ok(result.members().iter().map(|&m| m as u64).collect())
}

/// True iff kA = Z_n.
pub fn covers(n: u64, a: &[u64], k: u64) -> Result<bool> {
    Ok(sumset_power(n, a, k)?.len() as u64 == n)
}

/// Certified upper bound on SS(n, k) from a diameter-≤k directed graph:
/// A = S ∪ {0} covers Z_n in k steps, so SS(n, k) ≤ |A| = degree + 1.
pub fn ss_upper_from_graph(g: &CirculantGraph, k: u32) -> Result<usize> {
    ss_upper_from_graph_capped(g, k, DEFAULT_WORK_CAP)
}

/// As `ss_upper_from_graph` with an explicit BFS work cap.
pub fn ss_upper_from_graph_capped(g: &CirculantGraph, k: u32, cap: u64) -> Result<usize> {
    if !g.directed() {
        return Err(Error::GraphFormat(
            "sumset bounds need a directed graph: kA sums cannot use negations".into(),
        ));
    }
    if !verify_diameter_at_most_capped(g, k, cap)? {
        return Err(Error::DiameterClaim {
            claimed: k,
            actual: diameter_capped(g, cap)?,
        });
    }
    let n = g.n();
    if n > u64::MAX as u128 {
        return Err(Error::TooLarge(n));
    }
    let mut a: Vec<u64> = g.elements().iter().map(|&e| e as u64).collect();
    a.push(0);
    if !covers(n as u64, &a, k as u64)? {
        return Err(Error::CoverFailure {
            w: n,
            k: k as usize,
        });
    }
    Ok(a.len())
}

/// Exact minimum size of A ⊆ Z_n with A + A = Z_n, with a witness.
///
/// Depth-first search over partial sets: always branch on the smallest
/// uncovered residue z, trying every pair (a, z−a); 0 ∈ A without loss of
/// generality since 2(A+c) = 2A + 2c. Sets and coverage live in u64
/// masks, so adding an element is a cyclic shift. Counting bounds prune
/// branches that cannot reach full coverage, and the last two slots are
/// closed by direct scans instead of recursion.
pub fn ss2_min(n: u64) -> Result<(usize, Vec<u64>)> {
    if n == 0 || n > 64 {
        return Err(Error::ValueRange {
            value: n as u128,
            bound: 65,
        });
    }
    let n = n as usize;
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if n == 1 {
        return Ok((1, vec![0]));
    }

    struct Dfs {
        n: usize,
        full: u64,
        limit: usize,
        /// Bits of the even residues; parity is stable mod an even n.
        even: u64,
        best: Option<Vec<usize>>,
        /// Sets already exhausted at this limit; the downstream search is a
        /// function of the set alone, so a failed set never needs revisiting.
        failed: std::collections::HashSet<u64>,
    }

    impl Dfs {
        /// The set mask rotated by x: bit (c + x) mod n for every c in it.
        fn rot(&self, mask: u64, x: usize) -> u64 {
            if x == 0 {
                mask
            } else {
                (mask << x | mask >> (self.n - x)) & self.full
            }
        }

        /// New sums contributed by element x against the current set.
        fn gain(&self, mask: u64, x: usize) -> u64 {
            self.rot(mask, x) | 1u64 << (2 * x % self.n)
        }

        /// One free slot: some x must cover everything missing.
        fn finish_one(&mut self, set: &mut Vec<usize>, mask: u64, cov: u64) -> bool {
            for x in 0..self.n {
                if cov | self.gain(mask, x) == self.full {
                    set.push(x);
                    self.best = Some(set.clone());
                    set.pop();
                    return true;
                }
            }
            false
        }

        /// Two free slots. Either a new pair (y, z−y) covers the smallest
        /// uncovered residue z, or a single new element covers z (through
        /// an existing partner or by doubling) and the last slot is free.
        fn finish_two(&mut self, set: &mut Vec<usize>, mask: u64, cov: u64) -> bool {
            let z = (self.full & !cov).trailing_zeros() as usize;
            for y1 in 0..self.n {
                let y2 = (z + self.n - y1) % self.n;
                if y2 < y1 || mask >> y1 & 1 == 1 || mask >> y2 & 1 == 1 {
                    continue;
                }
                if y1 == y2 {
                    // One element covering z by doubling; one slot left.
                    let cov2 = cov | self.gain(mask, y1);
                    // The finisher covers at most `limit` sums.
                    if (self.full & !cov2).count_ones() as usize > self.limit {
                        continue;
                    }
                    set.push(y1);
                    let hit = self.finish_one(set, mask | 1u64 << y1, cov2);
                    set.pop();
                    if hit {
                        return true;
                    }
                    continue;
                }
                let covf = cov
                    | self.gain(mask, y1)
                    | self.gain(mask, y2)
                    | 1u64 << ((y1 + y2) % self.n);
                if covf == self.full {
                    set.push(y1);
                    set.push(y2);
                    self.best = Some(set.clone());
                    set.pop();
                    set.pop();
                    return true;
                }
            }
            // Single new element z − a for an existing a; one slot left.
            let mut partners = 0u64;
            for &a in set.iter() {
                partners |= 1u64 << ((z + self.n - a) % self.n);
            }
            partners &= !mask;
            while partners != 0 {
                let y1 = partners.trailing_zeros() as usize;
                partners &= partners - 1;
                let cov2 = cov | self.gain(mask, y1);
                if (self.full & !cov2).count_ones() as usize > self.limit {
                    continue;
                }
                set.push(y1);
                let hit = self.finish_one(set, mask | 1u64 << y1, cov2);
                set.pop();
                if hit {
                    return true;
                }
            }
            false
        }

        fn run(&mut self, set: &mut Vec<usize>, mask: u64, cov: u64) -> bool {
            if cov == self.full {
                self.best = Some(set.clone());
                return true;
            }
            let s = set.len();
            if s >= self.limit {
                return false;
            }
            let spare = self.limit - s;
            // Each new element covers at most |set|+1 new residues.
            let miss = self.full & !cov;
            let missing = miss.count_ones() as usize;
            if missing > spare * s + spare * (spare + 1) / 2 {
                return false;
            }
            if self.n.is_multiple_of(2) {
                // For even n, odd residues need even+odd pairs and even
                // residues need same-parity pairs; some split of the spare
                // elements between parities must afford both.
                let e = (mask & self.even).count_ones() as usize;
                let o = s - e;
                let miss_e = (miss & self.even).count_ones() as usize;
                let miss_o = missing - miss_e;
                let tri = |x: usize| x * (x + 1) / 2;
                let splittable = (0..=spare).any(|e2| {
                    let o2 = spare - e2;
                    miss_o <= (e + e2) * (o + o2) - e * o
                        && miss_e <= tri(e + e2) - tri(e) + tri(o + o2) - tri(o)
                });
                if !splittable {
                    return false;
                }
            }
            match spare {
                1 => return self.finish_one(set, mask, cov),
                2 => return self.finish_two(set, mask, cov),
                _ => {}
            }
            if self.failed.contains(&mask) {
                return false;
            }
            // Sharper reach: sum the `spare` best single-element gains and
            // allow one extra residue per pair of new elements.
            let mut tops = [0u32; 32];
            for y in 0..self.n {
                if mask >> y & 1 == 1 {
                    continue;
                }
                let g = (self.gain(mask, y) & miss).count_ones();
                if g > tops[0] {
                    let mut i = 0;
                    while i + 1 < spare && tops[i + 1] < g {
                        tops[i] = tops[i + 1];
                        i += 1;
                    }
                    tops[i] = g;
                }
            }
            let reach: u32 =
                tops[..spare].iter().sum::<u32>() + (spare * (spare - 1) / 2) as u32;
            if missing as u32 > reach {
                return false;
            }
            let z = miss.trailing_zeros() as usize;
            // Cover z = a + b; at least one of a, b is new.
            for a in 0..self.n {
                let b = (z + self.n - a) % self.n;
                if a > b {
                    continue;
                }
                let new_a = mask >> a & 1 == 0;
                let new_b = b != a && mask >> b & 1 == 0;
                if !new_a && !new_b {
                    continue; // z would already be covered
                }
                let mut cov2 = cov;
                let mut mask2 = mask;
                if new_a {
                    cov2 |= self.gain(mask2, a);
                    mask2 |= 1u64 << a;
                    set.push(a);
                }
                if new_b {
                    cov2 |= self.gain(mask2, b);
                    mask2 |= 1u64 << b;
                    set.push(b);
                }
                let hit = self.run(set, mask2, cov2);
                if new_b {
                    set.pop();
                }
                if new_a {
                    set.pop();
                }
                if hit {
                    return true;
                }
            }
            self.failed.insert(mask);
            false
        }
    }

    // Smallest m with m(m+1)/2 ≥ n is a lower bound on SS(n, 2).
    let mut m = 1;
    while m * (m + 1) / 2 < n {
        m += 1;
    }
    let mut even = 0u64;
    for i in (0..n).step_by(2) {
        even |= 1 << i;
    }
    loop {
        let mut dfs = Dfs {
            n,
            full,
            limit: m,
            even,
            best: None,
            failed: std::collections::HashSet::new(),
        };
        let mut set = vec![0usize];
        if dfs.run(&mut set, 1, 1) {
            let mut witness: Vec<u64> = dfs.best.unwrap().iter().map(|&x| x as u64).collect();
            witness.sort_unstable();
            return Ok((m, witness));
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{family_instantiate, find_family};
    use crate::cyclic::normalize;

    fn naive_power(n: u64, a: &[u64], k: u64) -> Vec<u64> {
        let mut cur: Vec<u64> = a.to_vec();
        cur.sort_unstable();
        cur.dedup();
        for _ in 1..k {
            let mut next = vec![false; n as usize];
            for &x in &cur {
                for &y in a {
                    next[((x + y) % n) as usize] = true;
                }
            }
            cur = (0..n).filter(|&i| next[i as usize]).collect();
        }
        cur
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(
            sumset_power(7, &[0, 1, 2, 3], 2).unwrap(),
            vec![0, 1, 2, 3, 4, 5, 6]
        );
        assert_eq!(sumset_power(5, &[0, 1, 2, 3, 4], 1).unwrap().len(), 5);
        assert_eq!(sumset_power(4, &[0, 2], 3).unwrap(), vec![0, 2]);
        assert_eq!(sumset_power(5, &[0, 1], 3).unwrap(), vec![0, 1, 2, 3]);
        assert!(!covers(5, &[0, 1], 3).unwrap());
        assert!(covers(1, &[0], 1).unwrap());
    }

    #[test]
    fn sumset_matches_naive_on_random_sets() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in [3u64, 17, 64, 65, 100, 129, 200] {
            for _ in 0..20 {
                let len = rng() % 6 + 1;
                let a: Vec<u64> = (0..len).map(|_| rng() % n).collect();
                let mut a = a;
                a.sort_unstable();
                a.dedup();
                let k = rng() % 4 + 1;
                assert_eq!(
                    sumset_power(n, &a, k).unwrap(),
                    naive_power(n, &a, k),
                    "n={n} a={a:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn sumset_rejects_bad_input() {
        assert!(sumset_power(5, &[], 2).is_err());
        assert!(sumset_power(5, &[5], 2).is_err());
        assert!(sumset_power(5, &[0], 0).is_err());
        assert!(sumset_power(0, &[0], 1).is_err());
    }

    #[test]
    fn graph_bound_for_family_q7() {
        let f = find_family("directed-k2-w6").unwrap();
        let (g, _) = family_instantiate(f, 7).unwrap();
        let bound = ss_upper_from_graph(&g, 2).unwrap();
        assert_eq!(bound, 28);
        // Trivial bound is 2·√210 ≈ 28.98, so the construction wins.
        assert!((bound as f64) < 2.0 * (210f64).sqrt());
    }

    #[test]
    fn graph_bound_directed_cycle() {
        let g = CirculantGraph::new(normalize(6, &[1], true).unwrap());
        assert_eq!(ss_upper_from_graph(&g, 5).unwrap(), 2);
    }

    #[test]
    fn graph_bound_rejects_undirected_or_wrong_k() {
        let g = CirculantGraph::new(normalize(5, &[1], false).unwrap());
        assert!(ss_upper_from_graph(&g, 2).is_err());
        let g = CirculantGraph::new(normalize(6, &[1], true).unwrap());
        assert!(matches!(
            ss_upper_from_graph(&g, 2),
            Err(Error::DiameterClaim {
                claimed: 2,
                actual: 5
            })
        ));
    }

    #[test]
    fn ss2_small_values() {
        // Exact minima for n = 1..24, frozen from an exhaustive run.
        let expected = [
            1, 2, 2, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 6, 6, 6, 6, 7, 6, 7, 7, 8, 8, 8,
        ];
        for (i, &m) in expected.iter().enumerate() {
            let n = i as u64 + 1;
            let (got, witness) = ss2_min(n).unwrap();
            assert_eq!(got, m, "SS({n},2)");
            assert_eq!(witness.len(), m);
            assert!(covers(n, &witness, 2).unwrap(), "witness for n={n}");
        }
    }

    #[test]
    fn ss2_is_not_monotonic() {
        // A perfect difference-set-like construction makes 19 cheaper
        // than 18.
        assert_eq!(ss2_min(18).unwrap().0, 7);
        assert_eq!(ss2_min(19).unwrap().0, 6);
    }
}
