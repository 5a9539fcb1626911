//! Distance and diameter computation by breadth-first search from vertex 0.
//!
//! Circulant graphs are vertex transitive, so the eccentricity of vertex 0
//! is the diameter: dist(0, x) is the least t such that x is a sum of t
//! connection-set elements.

use crate::cyclic::CirculantGraph;
use crate::{Error, Result};
use num::Integer;

/// Default ceiling on edge traversals (n · degree) for one BFS.
pub const DEFAULT_WORK_CAP: u64 = 1_000_000_000;

/// Environment override for the BFS work cap.
pub const WORK_CAP_ENV: &str = "CIRCULANT_WORK_CAP";

/// Work cap from the environment, falling back to the default.
pub fn work_cap_from_env() -> u64 {
    std::env::var(WORK_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WORK_CAP)
}

const UNSEEN: u8 = u8::MAX;
const MAX_DIST: u32 = (UNSEEN - 1) as u32;

/// Distances from vertex 0 to every vertex.
#[derive(Debug, Clone)]
pub struct DistanceProfile {
    n: u128,
    dist: Vec<u8>,
    diameter: u32,
}

impl DistanceProfile {
    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn dist(&self) -> &[u8] {
        &self.dist
    }

    pub fn dist_to(&self, x: u128) -> u32 {
        self.dist[x as usize] as u32
    }

    /// Number of vertices at each distance 0..=diameter.
    pub fn layer_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.diameter as usize + 1];
        for &d in &self.dist {
            sizes[d as usize] += 1;
        }
        sizes
    }
}

fn connectivity_gcd(g: &CirculantGraph) -> u128 {
    g.elements().iter().fold(g.n(), |acc, &e| acc.gcd(&e))
}

struct BfsPrep {
    n: u64,
    steps: Vec<u64>,
}

fn prepare(g: &CirculantGraph, cap: u64) -> Result<BfsPrep> {
    let n = g.n();
    if n > u32::MAX as u128 {
        return Err(Error::TooLarge(n));
    }
    let needed = n * g.degree() as u128;
    if needed > cap as u128 {
        return Err(Error::WorkCap { needed, cap });
    }
    let gcd = connectivity_gcd(g);
    if gcd != 1 {
        // The reachable set from 0 is the subgroup generated by S.
        let unreached = n - n / gcd;
        return Err(Error::Disconnected { unreached, n });
    }
    Ok(BfsPrep {
        n: n as u64,
        steps: g.elements().iter().map(|&e| e as u64).collect(),
    })
}

fn bfs(prep: &BfsPrep, start: u64, max_layer: Option<u32>) -> Result<(Vec<u8>, u32, u64)> {
    let n = prep.n;
    let mut dist = vec![UNSEEN; n as usize];
    dist[start as usize] = 0;
    let mut reached: u64 = 1;
    let mut frontier: Vec<u32> = vec![start as u32];
    let mut next: Vec<u32> = Vec::new();
    let mut layer: u32 = 0;
    while !frontier.is_empty() && reached < n {
        if let Some(limit) = max_layer {
            if layer >= limit {
                break;
            }
        }
        if layer >= MAX_DIST {
            return Err(Error::DistanceOverflow(MAX_DIST));
        }
        layer += 1;
        for &v in &frontier {
            let v = v as u64;
            for &s in &prep.steps {
                let mut w = v + s;
                if w >= n {
                    w -= n;
                }
                let slot = &mut dist[w as usize];
                if *slot == UNSEEN {
                    *slot = layer as u8;
                    reached += 1;
                    next.push(w as u32);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    let ecc = dist
        .iter()
        .filter(|&&d| d != UNSEEN)
        .map(|&d| d as u32)
        .max()
        .unwrap_or(0);
    Ok((dist, ecc, reached))
}

fn profile_with_cap(g: &CirculantGraph, cap: u64) -> Result<DistanceProfile> {
    let prep = prepare(g, cap)?;
    let (dist, ecc, reached) = bfs(&prep, 0, None)?;
    debug_assert_eq!(reached, prep.n);
    Ok(DistanceProfile {
        n: g.n(),
        dist,
        diameter: ecc,
    })
}

/// Full distance profile from vertex 0 under the default work cap.
pub fn bfs_profile(g: &CirculantGraph) -> Result<DistanceProfile> {
    profile_with_cap(g, DEFAULT_WORK_CAP)
}

/// Full distance profile from vertex 0 under an explicit work cap.
pub fn bfs_profile_capped(g: &CirculantGraph, cap: u64) -> Result<DistanceProfile> {
    profile_with_cap(g, cap)
}

/// Diameter of the graph (maximum distance from vertex 0).
pub fn diameter(g: &CirculantGraph) -> Result<u32> {
    Ok(bfs_profile(g)?.diameter())
}

/// Diameter under an explicit work cap.
pub fn diameter_capped(g: &CirculantGraph, cap: u64) -> Result<u32> {
    Ok(bfs_profile_capped(g, cap)?.diameter())
}

/// True iff every vertex is within k steps of 0; stops after layer k.
pub fn verify_diameter_at_most(g: &CirculantGraph, k: u32) -> Result<bool> {
    verify_diameter_at_most_capped(g, k, DEFAULT_WORK_CAP)
}

/// Layer-limited verification under an explicit work cap.
pub fn verify_diameter_at_most_capped(g: &CirculantGraph, k: u32, cap: u64) -> Result<bool> {
    let prep = prepare(g, cap)?;
    let (_, _, reached) = bfs(&prep, 0, Some(k))?;
    Ok(reached == prep.n)
}

/// Number of vertices within distance k of vertex 0.
pub fn reached_within_capped(g: &CirculantGraph, k: u32, cap: u64) -> Result<u64> {
    let prep = prepare(g, cap)?;
    let (_, _, reached) = bfs(&prep, 0, Some(k))?;
    Ok(reached)
}

/// Eccentricity of an arbitrary start vertex. Vertex transitivity makes
/// this equal to the diameter; exposed so tests can check that claim.
pub fn eccentricity_from(g: &CirculantGraph, v: u128, cap: u64) -> Result<u32> {
    let prep = prepare(g, cap)?;
    if v >= prep.n as u128 {
        return Err(Error::ValueRange {
            value: v,
            bound: prep.n as u128,
        });
    }
    let (_, ecc, reached) = bfs(&prep, v as u64, None)?;
    debug_assert_eq!(reached, prep.n);
    Ok(ecc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::normalize;

    fn graph(n: u128, gens: &[u128], directed: bool) -> CirculantGraph {
        CirculantGraph::new(normalize(n, gens, directed).unwrap())
    }

    #[test]
    fn small_diameters() {
        assert_eq!(diameter(&graph(5, &[1], false)).unwrap(), 2);
        assert_eq!(diameter(&graph(21, &[1, 2, 8], false)).unwrap(), 2);
        assert_eq!(diameter(&graph(6, &[1], true)).unwrap(), 5);
        assert_eq!(diameter(&graph(13, &[1, 5], false)).unwrap(), 2);
        assert_eq!(diameter(&graph(2, &[1], false)).unwrap(), 1);
    }

    #[test]
    fn record_row_diameters() {
        assert_eq!(diameter(&graph(55, &[1, 5, 21], false)).unwrap(), 3);
        assert_eq!(
            diameter(&graph(1099, &[1, 53, 207, 272, 536], false)).unwrap(),
            5
        );
    }

    #[test]
    fn verify_early_exit() {
        let g = graph(21, &[1, 2, 8], false);
        assert!(verify_diameter_at_most(&g, 2).unwrap());
        assert!(!verify_diameter_at_most(&g, 1).unwrap());
        assert!(verify_diameter_at_most(&graph(5, &[1], false), 2).unwrap());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = graph(10, &[2], true);
        assert!(matches!(
            bfs_profile(&g),
            Err(Error::Disconnected { unreached: 5, n: 10 })
        ));
        assert!(verify_diameter_at_most(&g, 3).is_err());
    }

    #[test]
    fn work_cap_enforced() {
        let g = graph(1099, &[1, 53, 207, 272, 536], false);
        assert!(matches!(
            bfs_profile_capped(&g, 100),
            Err(Error::WorkCap { cap: 100, .. })
        ));
    }

    #[test]
    fn distance_overflow_reported() {
        let g = graph(300, &[1], true);
        assert!(matches!(
            bfs_profile(&g),
            Err(Error::DistanceOverflow(254))
        ));
    }

    #[test]
    fn profile_layers_sum_to_order() {
        let p = bfs_profile(&graph(55, &[1, 5, 21], false)).unwrap();
        assert_eq!(p.dist_to(0), 0);
        assert_eq!(p.layer_sizes().iter().sum::<u64>(), 55);
        assert_eq!(p.layer_sizes()[0], 1);
        assert_eq!(p.diameter(), 3);
    }

    #[test]
    fn eccentricity_matches_diameter() {
        let g = graph(55, &[1, 5, 21], false);
        let d = diameter(&g).unwrap();
        for v in [1u128, 7, 23, 54] {
            assert_eq!(eccentricity_from(&g, v, DEFAULT_WORK_CAP).unwrap(), d);
        }
    }
}
