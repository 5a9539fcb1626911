//! Record table: the largest known undirected graphs for each small
//! degree and diameter, with published reduced generator sets.
//!
//! The table data lives in `records.txt` (one `d k n gens source flags`
//! line per entry), checksummed so silent edits fail loudly. Orders for
//! d ≤ 16 are additionally cross-checked against an independently
//! transcribed order grid.

use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cyclic::{normalize, CirculantGraph};
use crate::metrics::{bfs_profile_capped, DEFAULT_WORK_CAP};
use crate::{Error, Result};

const DATA: &str = include_str!("records.txt");
const DATA_SHA256: &str = "0ccbcead88b8fe59fcba24f9df9e070af74dda922828fddccea63b928abd221b";

/// Largest-known orders for d = 2..16, k = 1..10, transcribed separately
/// from the per-entry lines so the two can disagree only by a
/// transcription error.
const ORDER_GRID: [[u64; 10]; 15] = [
    [3, 5, 7, 9, 11, 13, 15, 17, 19, 21],
    [4, 8, 12, 16, 20, 24, 28, 32, 36, 40],
    [5, 13, 25, 41, 61, 85, 113, 145, 181, 221],
    [6, 16, 36, 64, 100, 144, 196, 256, 324, 400],
    [7, 21, 55, 117, 203, 333, 515, 737, 1027, 1393],
    [8, 26, 76, 160, 308, 536, 828, 1232, 1764, 2392],
    [9, 35, 104, 248, 528, 984, 1712, 2768, 4280, 6320],
    [10, 42, 130, 320, 700, 1416, 2548, 4304, 6804, 10320],
    [11, 51, 177, 457, 1099, 2380, 4551, 8288, 14099, 22805],
    [12, 56, 210, 576, 1428, 3200, 6652, 12416, 21572, 35880],
    [13, 67, 275, 819, 2040, 4283, 8828, 16439, 29308, 51154],
    [14, 80, 312, 970, 2548, 5598, 12176, 22198, 40720, 72608],
    [15, 90, 381, 1229, 3244, 7815, 17389, 35929, 71748, 126109],
    [16, 96, 448, 1420, 3980, 9860, 22584, 48408, 93804, 177302],
    [17, 112, 518, 1717, 5024, 13380, 32731, 71731, 148385, 298105],
];

/// Largest-known order for (d, k) from the grid, if in range.
pub fn grid_order(d: u32, k: u32) -> Option<u64> {
    if (2..=16).contains(&d) && (1..=10).contains(&k) {
        Some(ORDER_GRID[d as usize - 2][k as usize - 1])
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Found by computer search.
    Search,
    /// Closed-form for the narrow degrees (cycles, Möbius–Kantor-style
    /// doublings, d = 4 and d = 5 lattices).
    Derived,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordEntry {
    pub d: u32,
    pub k: u32,
    pub n: u64,
    /// Reduced generators: one representative per ± pair, the implicit
    /// involution n/2 omitted for odd d.
    pub gens: Vec<u64>,
    pub provenance: Provenance,
    /// Proven largest by exhaustive search, not merely largest known.
    pub extremal: bool,
}

impl RecordEntry {
    /// All records are undirected.
    pub fn directed(&self) -> bool {
        false
    }

    /// Graph on Z_n over the expanded set: each generator with its
    /// negation, plus n/2 when the degree is odd.
    pub fn graph(&self) -> Result<CirculantGraph> {
        let mut raw: Vec<u128> = self.gens.iter().map(|&g| g as u128).collect();
        if self.d % 2 == 1 {
            if !self.n.is_multiple_of(2) {
                return Err(Error::GraphFormat(format!(
                    "odd degree {} needs even order, got {}",
                    self.d, self.n
                )));
            }
            raw.push(self.n as u128 / 2);
        }
        Ok(CirculantGraph::new(normalize(self.n as u128, &raw, false)?))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub d: u32,
    pub k: u32,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check one entry: expanded degree equals d, BFS diameter equals k
/// exactly, and the order agrees with the order grid when d ≤ 16.
pub fn verify_record(e: &RecordEntry) -> VerifyReport {
    verify_record_capped(e, DEFAULT_WORK_CAP)
}

/// As `verify_record` with an explicit BFS work cap.
pub fn verify_record_capped(e: &RecordEntry, cap: u64) -> VerifyReport {
    let mut failures = Vec::new();
    if let Some(expect) = grid_order(e.d, e.k) {
        if e.n != expect {
            failures.push(format!("order {} differs from table value {expect}", e.n));
        }
    }
    match e.graph() {
        Err(err) => failures.push(format!("generator set invalid: {err}")),
        Ok(g) => {
            if g.degree() != e.d as usize {
                failures.push(format!("expanded degree {} != {}", g.degree(), e.d));
            }
            match bfs_profile_capped(&g, cap) {
                Err(err) => failures.push(format!("BFS failed: {err}")),
                Ok(p) if p.diameter() != e.k => {
                    failures.push(format!("diameter {} != {}", p.diameter(), e.k));
                }
                Ok(_) => {}
            }
        }
    }
    VerifyReport {
        d: e.d,
        k: e.k,
        failures,
    }
}

fn parse_line(idx: usize, line: &str) -> Result<RecordEntry> {
    let bad = |reason: String| Error::RecordParse {
        line: idx + 1,
        reason,
    };
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != 6 {
        return Err(bad(format!("expected 6 fields, got {}", fields.len())));
    }
    let d: u32 = fields[0].parse().map_err(|_| bad("bad degree".into()))?;
    let k: u32 = fields[1].parse().map_err(|_| bad("bad diameter".into()))?;
    let n: u64 = fields[2].parse().map_err(|_| bad("bad order".into()))?;
    if d < 2 || k < 1 || n < 3 {
        return Err(bad(format!("out-of-range entry d={d} k={k} n={n}")));
    }
    let mut gens = Vec::new();
    for part in fields[3].split(',') {
        let g: u64 = part
            .parse()
            .map_err(|_| bad(format!("bad generator {part:?}")))?;
        if g == 0 || 2 * g >= n {
            return Err(bad(format!("generator {g} not reduced for n={n}")));
        }
        if gens.last().is_some_and(|&p| p >= g) {
            return Err(bad("generators not strictly increasing".into()));
        }
        gens.push(g);
    }
    let provenance = match fields[4] {
        "search" => Provenance::Search,
        "derived" => Provenance::Derived,
        other => return Err(bad(format!("unknown source {other:?}"))),
    };
    let extremal = match fields[5] {
        "extremal" => true,
        "-" => false,
        other => return Err(bad(format!("unknown flag {other:?}"))),
    };
    Ok(RecordEntry {
        d,
        k,
        n,
        gens,
        provenance,
        extremal,
    })
}

fn parse_records(data: &str) -> Result<Vec<RecordEntry>> {
    let digest = Sha256::digest(data.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != DATA_SHA256 {
        return Err(Error::RecordChecksum);
    }
    data.lines()
        .enumerate()
        .map(|(i, line)| parse_line(i, line))
        .collect()
}

/// The embedded record table, parsed and checksum-verified once.
pub fn load_records() -> Result<&'static [RecordEntry]> {
    static CELL: OnceLock<Vec<RecordEntry>> = OnceLock::new();
    if let Some(v) = CELL.get() {
        return Ok(v);
    }
    let parsed = parse_records(DATA)?;
    Ok(CELL.get_or_init(|| parsed))
}

/// Record entry for a given degree and diameter, if present.
pub fn record(d: u32, k: u32) -> Result<Option<&'static RecordEntry>> {
    Ok(load_records()?
        .iter()
        .find(|e| e.d == d && e.k == k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_loads_and_has_expected_shape() {
        let recs = load_records().unwrap();
        assert_eq!(recs.len(), 157);
        // complete d × k grid plus the deep exhaustive diameter-2 tail
        for d in 2..=16 {
            for k in 1..=10 {
                let e = record(d, k).unwrap().expect("grid entry");
                assert_eq!(e.n, grid_order(d, k).unwrap());
            }
        }
        for d in 17..=23 {
            assert!(record(d, 2).unwrap().is_some());
        }
        let extremal: Vec<_> = recs.iter().filter(|e| e.extremal).collect();
        assert_eq!(extremal.len(), 18);
        assert!(extremal.iter().all(|e| e.k == 2 && (6..=23).contains(&e.d)));
    }

    #[test]
    fn degree_six_diameter_two() {
        let e = record(6, 2).unwrap().unwrap();
        assert_eq!((e.n, e.gens.as_slice()), (21, &[1, 2, 8][..]));
        assert!(e.extremal && !e.directed());
        let g = e.graph().unwrap();
        assert_eq!(g.elements(), &[1, 2, 8, 13, 19, 20]);
        assert!(verify_record(e).ok());
    }

    #[test]
    fn derived_rows_follow_closed_forms() {
        for k in 1..=10u32 {
            assert_eq!(record(2, k).unwrap().unwrap().n, 2 * k as u64 + 1);
            assert_eq!(record(3, k).unwrap().unwrap().n, 4 * k as u64);
            let k64 = k as u64;
            assert_eq!(record(4, k).unwrap().unwrap().n, 2 * k64 * k64 + 2 * k64 + 1);
            if k >= 2 {
                assert_eq!(record(5, k).unwrap().unwrap().n, 4 * k64 * k64);
            }
        }
        assert!(load_records()
            .unwrap()
            .iter()
            .filter(|e| e.d <= 5 || e.k == 1)
            .all(|e| e.provenance == Provenance::Derived));
    }

    #[test]
    fn odd_degree_rows_expand_with_involution() {
        let e = record(2, 10).unwrap().unwrap();
        let g = e.graph().unwrap();
        assert_eq!(g.degree(), 2);
        assert!(verify_record(e).ok());
        // d = 13 lists 6 generators; the 13th element is n/2.
        let e = record(13, 2).unwrap().unwrap();
        assert_eq!(e.gens.len(), 6);
        let g = e.graph().unwrap();
        assert_eq!(g.degree(), 13);
        assert!(g.elements().contains(&(e.n as u128 / 2)));
    }

    #[test]
    fn record_without_unit_generator_verifies() {
        let e = record(12, 4).unwrap().unwrap();
        assert_eq!(e.n, 819);
        assert!(!e.gens.contains(&1));
        assert!(verify_record(e).ok());
    }

    #[test]
    fn largest_entry_verifies() {
        let e = record(16, 10).unwrap().unwrap();
        assert_eq!(e.n, 298105);
        assert_eq!(e.gens, [1, 5860, 11313, 15833, 21207, 26491, 26722, 99924]);
        assert!(verify_record(e).ok());
    }

    #[test]
    fn corrupted_entry_fails_on_order_and_diameter() {
        let e = RecordEntry {
            d: 6,
            k: 2,
            n: 22,
            gens: vec![1, 2, 8],
            provenance: Provenance::Search,
            extremal: false,
        };
        let report = verify_record(&e);
        assert!(!report.ok());
        assert!(report.failures.iter().any(|f| f.contains("differs from table")));
    }

    #[test]
    fn parser_rejects_malformed_lines() {
        assert!(matches!(
            parse_line(4, "6 2 21 1,2,8 search"),
            Err(Error::RecordParse { line: 5, .. })
        ));
        assert!(parse_line(0, "6 2 21 1,2,11 search -").is_err()); // 11 > n/2
        assert!(parse_line(0, "6 2 21 1,8,2 search -").is_err()); // unsorted
        assert!(parse_line(0, "6 2 21 1,2,8 guessed -").is_err());
        assert!(parse_line(0, "6 2 21 1,2,8 search dagger").is_err());
    }

    #[test]
    fn checksum_guards_the_data() {
        let mut tampered = DATA.to_string();
        tampered.push('\n');
        assert!(matches!(
            parse_records(&tampered),
            Err(Error::RecordChecksum)
        ));
    }
}
