//! Direct-product constructions over Z_{r_1}×…×Z_{r_k}×Z_w, the twelve
//! published parameter families, and the trivial base-r construction.
//!
//! A base set B covers Z_w by sums of exactly k distinct elements; the
//! ladder radii supply the other factors. The emitted generator set has
//! diameter ≤ k by construction, so astronomically large instances carry a
//! structural certificate instead of a BFS check.

use crate::cyclic::{crt_combine, normalize, CirculantGraph, ResidueVector};
use crate::torus::{validate_ladder, LadderParams};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::Ratio;
use num::{Signed, ToPrimitive};
use serde::Serialize;

/// Base modulus w together with the ordered sequence b_1..b_{k+2}.
/// Ordering matters: b_i pairs with the r_i coordinate line, b_{k+1} with
/// the o-line and b_{k+2} with the u-line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSet {
    w: u128,
    b: Vec<u128>,
    k: usize,
    directed: bool,
}

impl BaseSet {
    pub fn new(w: u128, b: &[u128], k: usize, directed: bool) -> Result<Self> {
        if w < 2 {
            return Err(Error::BadModulus(w));
        }
        if k < 1 {
            return Err(Error::BadBase("diameter k must be positive".into()));
        }
        if b.len() != k + 2 {
            return Err(Error::BadBase(format!(
                "need k+2 = {} base elements, got {}",
                k + 2,
                b.len()
            )));
        }
        for &x in b {
            if x >= w {
                return Err(Error::BadBase(format!("element {x} not reduced mod {w}")));
            }
        }
        let mut sorted = b.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != b.len() {
            return Err(Error::BadBase("base elements must be distinct".into()));
        }
        if directed {
            if b[0] != 0 {
                return Err(Error::BadBase(
                    "directed base sets have the shape {0, b_2, …, b_{k+2}}".into(),
                ));
            }
        } else if b.contains(&0) {
            return Err(Error::BadBase("undirected base sets exclude 0".into()));
        }
        Ok(BaseSet {
            w,
            b: b.to_vec(),
            k,
            directed,
        })
    }

    pub fn w(&self) -> u128 {
        self.w
    }

    pub fn b(&self) -> &[u128] {
        &self.b
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn directed(&self) -> bool {
        self.directed
    }
}

/// Coverage test: every residue mod w must be a sum of exactly k distinct
/// elements of B (directed), or of B∪−B with no two chosen elements equal
/// or mutually inverse (undirected).
pub fn check_base_cover(base: &BaseSet) -> bool {
    let w = base.w;
    let k = base.k;
    let mut covered = vec![false; w as usize];
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    fn subsets(
        b: &[u128],
        w: u128,
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        covered: &mut [bool],
        signed: bool,
    ) {
        if chosen.len() == k {
            if signed {
                // Every sign pattern whose selected values stay pairwise
                // distinct and non-inverse.
                let vals: Vec<u128> = chosen.iter().map(|&i| b[i]).collect();
                let mut pattern = 0usize;
                'outer: while pattern < (1 << k) {
                    let signed_vals: Vec<u128> = vals
                        .iter()
                        .enumerate()
                        .map(|(t, &v)| if pattern >> t & 1 == 1 { (w - v) % w } else { v })
                        .collect();
                    for a in 0..k {
                        for c in a + 1..k {
                            let (x, y) = (signed_vals[a], signed_vals[c]);
                            if x == y || (x + y) % w == 0 {
                                pattern += 1;
                                continue 'outer;
                            }
                        }
                    }
                    let sum = signed_vals.iter().fold(0u128, |acc, &v| (acc + v) % w);
                    covered[sum as usize] = true;
                    pattern += 1;
                }
            } else {
                let sum = chosen.iter().fold(0u128, |acc, &i| (acc + b[i]) % w);
                covered[sum as usize] = true;
            }
            return;
        }
        for i in start..b.len() {
            chosen.push(i);
            subsets(b, w, k, i + 1, chosen, covered, signed);
            chosen.pop();
        }
    }
    subsets(
        &base.b,
        w,
        k,
        0,
        &mut chosen,
        &mut covered,
        !base.directed,
    );
    covered.iter().all(|&c| c)
}

/// Structural evidence that a built graph has diameter ≤ claimed_diameter.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionCertificate {
    pub order: u128,
    pub degree: usize,
    pub degree_bound: u128,
    pub claimed_diameter: u32,
    pub ladder_ok: bool,
    pub base_cover_ok: bool,
}

fn negate_coords(coords: &[u128], moduli: &[u128]) -> Vec<u128> {
    coords
        .iter()
        .zip(moduli)
        .map(|(&c, &m)| (m - c % m) % m)
        .collect()
}

fn assemble(
    base: &BaseSet,
    ladder: &LadderParams,
    directed: bool,
) -> Result<(CirculantGraph, ConstructionCertificate)> {
    if base.directed != directed {
        return Err(Error::BadBase(format!(
            "base set orientation mismatch: set is {}",
            if base.directed { "directed" } else { "undirected" }
        )));
    }
    if base.k != ladder.k() {
        return Err(Error::BadBase(format!(
            "base set is for k = {}, ladder has k = {}",
            base.k,
            ladder.k()
        )));
    }
    let v = validate_ladder(ladder.radii(), base.w);
    if !v.ok() {
        return Err(Error::BadLadder(v.violations.to_string()));
    }
    if !check_base_cover(base) {
        return Err(Error::CoverFailure {
            w: base.w,
            k: base.k,
        });
    }

    let k = base.k;
    let radii = ladder.radii();
    let mut moduli: Vec<u128> = radii.to_vec();
    moduli.push(base.w);
    let mut n: u128 = base.w;
    for &r in radii {
        n = n.checked_mul(r).ok_or(Error::ModulusOverflow)?;
    }

    let sum_r: u128 = radii.iter().sum();
    let degree_bound = if directed {
        sum_r + ladder.c_o() + ladder.c_u() - 1
    } else {
        2 * (sum_r + ladder.c_o() + ladder.c_u())
    };

    let mut vectors: Vec<Vec<u128>> = Vec::new();
    let push_line = |coords: Vec<u128>, vectors: &mut Vec<Vec<u128>>| {
        if !directed {
            vectors.push(negate_coords(&coords, &moduli));
        }
        vectors.push(coords);
    };
    for (i, &ri) in radii.iter().enumerate() {
        let bi = base.b[i];
        let x_from = u128::from(directed && i == 0 && bi == 0);
        for x in x_from..ri {
            let mut coords = vec![0u128; k + 1];
            coords[i] = x;
            coords[k] = bi;
            if directed {
                vectors.push(coords);
            } else {
                // Sign applies to the base coordinate only; x spans Z_{r_i}.
                let mut neg = coords.clone();
                neg[k] = (base.w - bi) % base.w;
                vectors.push(coords);
                vectors.push(neg);
            }
        }
    }
    for x in 0..ladder.c_o() {
        let mut coords: Vec<u128> = radii.iter().map(|&r| x % r).collect();
        coords.push(base.b[k]);
        push_line(coords, &mut vectors);
    }
    for x in 0..ladder.c_u() {
        let mut coords: Vec<u128> = radii
            .iter()
            .enumerate()
            .map(|(i, &r)| ((i as u128 + 1) % r) * (x % r) % r)
            .collect();
        coords.push(base.b[k + 1]);
        push_line(coords, &mut vectors);
    }
    debug_assert_eq!(vectors.len() as u128, degree_bound);

    let mut raw: Vec<u128> = Vec::with_capacity(vectors.len());
    for coords in vectors {
        let rv = ResidueVector::new(moduli.clone(), coords)?;
        raw.push(crt_combine(&rv)?);
    }
    let set = normalize(n, &raw, directed)?;
    let degree = set.degree();
    if degree as u128 > degree_bound {
        return Err(Error::BadBase(format!(
            "degree {degree} exceeds the bound {degree_bound}"
        )));
    }
    let cert = ConstructionCertificate {
        order: n,
        degree,
        degree_bound,
        claimed_diameter: k as u32,
        ladder_ok: true,
        base_cover_ok: true,
    };
    Ok((CirculantGraph::new(set), cert))
}

/// Undirected product construction: degree ≤ 2(Σ r_i + c_o + c_u),
/// order w·∏ r_i, diameter ≤ k.
pub fn build_undirected(
    w: u128,
    base: &BaseSet,
    ladder: &LadderParams,
) -> Result<(CirculantGraph, ConstructionCertificate)> {
    if base.w != w {
        return Err(Error::BadBase(format!(
            "base set modulus {} differs from w = {w}",
            base.w
        )));
    }
    assemble(base, ladder, false)
}

/// Directed product construction: degree Σ r_i + c_o + c_u − 1,
/// order w·∏ r_i, diameter ≤ k.
pub fn build_directed(
    w: u128,
    base: &BaseSet,
    ladder: &LadderParams,
) -> Result<(CirculantGraph, ConstructionCertificate)> {
    if base.w != w {
        return Err(Error::BadBase(format!(
            "base set modulus {} differs from w = {w}",
            base.w
        )));
    }
    assemble(base, ladder, true)
}

/// One congruence condition on q: q mod modulus must (or must not) lie in
/// the listed residues.
#[derive(Debug, Clone, Copy)]
pub struct Congruence {
    pub modulus: u64,
    pub residues: &'static [u64],
    pub required: bool,
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = self
            .residues
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let rel = if self.required { "≡" } else { "≢" };
        write!(f, "q {rel} {list} (mod {})", self.modulus)
    }
}

/// A published parameter family: fixed (w, B, Δ) with radii q − δ_i for
/// every admissible q.
#[derive(Debug, Clone, Copy)]
pub struct FamilySpec {
    pub name: &'static str,
    pub directed: bool,
    pub k: usize,
    pub w: u128,
    pub b: &'static [u128],
    /// Radii offsets; radii are q − δ with δ_1 = 0.
    pub delta: &'static [u64],
    pub q_min: u64,
    pub congruences: &'static [Congruence],
    /// Degree d = degree_mul·q − degree_sub.
    pub degree_mul: u64,
    pub degree_sub: u64,
    /// Order = (order_num/order_den)·∏ (d + shift) over order_shifts.
    pub order_num: u128,
    pub order_den: u128,
    pub order_shifts: &'static [i64],
    /// Published closed form c_o = q + c_o_offset.
    pub c_o_offset: u64,
}

const fn req(modulus: u64, residues: &'static [u64]) -> Congruence {
    Congruence {
        modulus,
        residues,
        required: true,
    }
}

const fn ban(modulus: u64, residues: &'static [u64]) -> Congruence {
    Congruence {
        modulus,
        residues,
        required: false,
    }
}

/// The twelve published families: four undirected (k = 3, 3, 4, 5) and
/// eight directed (k = 2..9).
pub static FAMILIES: &[FamilySpec] = &[
    FamilySpec {
        name: "undirected-k3-w57",
        directed: false,
        k: 3,
        w: 57,
        b: &[1, 2, 7, 8, 27],
        delta: &[0, 4, 6],
        q_min: 17,
        congruences: &[req(6, &[5]), ban(19, &[0, 4, 6])],
        degree_mul: 10,
        degree_sub: 12,
        order_num: 57,
        order_den: 1000,
        order_shifts: &[12, -28, -48],
        c_o_offset: 4,
    },
    FamilySpec {
        name: "undirected-k3-w56",
        directed: false,
        k: 3,
        w: 56,
        b: &[1, 2, 7, 14, 15],
        delta: &[0, 2, 4],
        q_min: 15,
        congruences: &[req(6, &[3, 5]), req(7, &[1, 3, 5, 6])],
        degree_mul: 10,
        degree_sub: 8,
        order_num: 7,
        order_den: 125,
        order_shifts: &[8, -12, -32],
        c_o_offset: 2,
    },
    FamilySpec {
        name: "undirected-k4-w150",
        directed: false,
        k: 4,
        w: 150,
        b: &[1, 7, 16, 26, 41, 61],
        delta: &[0, 6, 8, 12],
        q_min: 49,
        congruences: &[req(30, &[19])],
        degree_mul: 12,
        degree_sub: 40,
        order_num: 25,
        order_den: 3456,
        order_shifts: &[40, -32, -56, -104],
        c_o_offset: 6,
    },
    FamilySpec {
        name: "undirected-k5-w436",
        directed: false,
        k: 5,
        w: 436,
        b: &[1, 15, 43, 48, 77, 109, 152],
        delta: &[0, 4, 10, 12, 16],
        q_min: 77,
        congruences: &[req(6, &[5]), ban(5, &[0, 1]), ban(109, &[0, 4, 10, 12, 16])],
        degree_mul: 14,
        degree_sub: 68,
        order_num: 109,
        order_den: 134456,
        order_shifts: &[68, 12, -72, -100, -156],
        c_o_offset: 8,
    },
    FamilySpec {
        name: "directed-k2-w6",
        directed: true,
        k: 2,
        w: 6,
        b: &[0, 1, 2, 4],
        delta: &[0, 2],
        q_min: 7,
        congruences: &[req(6, &[1])],
        degree_mul: 4,
        degree_sub: 1,
        order_num: 3,
        order_den: 8,
        order_shifts: &[1, -7],
        c_o_offset: 2,
    },
    FamilySpec {
        name: "directed-k3-w9",
        directed: true,
        k: 3,
        w: 9,
        b: &[0, 1, 2, 3, 6],
        delta: &[0, 4, 6],
        q_min: 17,
        congruences: &[req(6, &[5])],
        degree_mul: 5,
        degree_sub: 7,
        order_num: 9,
        order_den: 125,
        order_shifts: &[7, -13, -23],
        c_o_offset: 4,
    },
    FamilySpec {
        name: "directed-k4-w13",
        directed: true,
        k: 4,
        w: 13,
        b: &[0, 1, 3, 5, 7, 8],
        delta: &[0, 2, 4, 6],
        q_min: 23,
        congruences: &[req(6, &[5]), ban(13, &[0, 2, 4, 6])],
        degree_mul: 6,
        degree_sub: 11,
        order_num: 13,
        order_den: 1296,
        order_shifts: &[11, -1, -13, -25],
        c_o_offset: 2,
    },
    FamilySpec {
        name: "directed-k5-w17",
        directed: true,
        k: 5,
        w: 17,
        b: &[0, 1, 2, 3, 4, 8, 13],
        delta: &[0, 4, 10, 12, 16],
        q_min: 77,
        congruences: &[req(6, &[5]), ban(5, &[0, 1]), ban(17, &[0, 4, 10, 12, 16])],
        degree_mul: 7,
        degree_sub: 35,
        order_num: 17,
        order_den: 16807,
        order_shifts: &[35, 7, -35, -49, -77],
        c_o_offset: 8,
    },
    FamilySpec {
        name: "directed-k6-w24",
        directed: true,
        k: 6,
        w: 24,
        b: &[0, 1, 2, 4, 8, 13, 18, 22],
        delta: &[0, 6, 12, 18, 24, 30],
        q_min: 181,
        congruences: &[req(6, &[1, 5]), ban(5, &[0, 4])],
        degree_mul: 8,
        degree_sub: 85,
        order_num: 3,
        order_den: 32768,
        order_shifts: &[85, 37, -11, -59, -107, -155],
        c_o_offset: 6,
    },
    FamilySpec {
        name: "directed-k7-w30",
        directed: true,
        k: 7,
        w: 30,
        b: &[0, 1, 2, 6, 9, 12, 16, 17, 18],
        delta: &[0, 2, 6, 18, 20, 30, 42],
        q_min: 529,
        congruences: &[req(6, &[1]), req(5, &[4]), ban(7, &[0, 2, 6]), ban(11, &[9])],
        degree_mul: 9,
        degree_sub: 77,
        order_num: 10,
        order_den: 1594323,
        order_shifts: &[77, 59, 23, -85, -103, -193, -301],
        c_o_offset: 42,
    },
    FamilySpec {
        name: "directed-k8-w36",
        directed: true,
        k: 8,
        w: 36,
        b: &[0, 1, 2, 3, 6, 12, 19, 20, 27, 33],
        delta: &[0, 6, 12, 18, 24, 30, 36, 42],
        q_min: 353,
        congruences: &[req(6, &[1, 5]), req(5, &[3]), ban(7, &[0, 1])],
        degree_mul: 10,
        degree_sub: 163,
        order_num: 9,
        order_den: 25000000,
        order_shifts: &[163, 103, 43, -17, -77, -137, -197, -257],
        c_o_offset: 6,
    },
    FamilySpec {
        name: "directed-k9-w42",
        directed: true,
        k: 9,
        w: 42,
        b: &[0, 1, 2, 3, 4, 9, 16, 20, 26, 30, 37],
        delta: &[0, 2, 6, 12, 20, 30, 42, 56, 72],
        q_min: 1093,
        congruences: &[
            req(6, &[1]),
            req(5, &[3, 4]),
            req(7, &[1, 3, 4]),
            ban(11, &[1, 6, 9]),
            ban(13, &[4, 7]),
        ],
        degree_mul: 11,
        degree_sub: 169,
        order_num: 42,
        order_den: 2357947691,
        order_shifts: &[169, 147, 103, 37, -51, -161, -293, -447, -623],
        c_o_offset: 72,
    },
];

/// Look up a family by name.
pub fn find_family(name: &str) -> Result<&'static FamilySpec> {
    FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// Check q against the family predicate; the error names the violated
/// condition.
pub fn family_admits(f: &FamilySpec, q: u64) -> Result<()> {
    if q < f.q_min {
        return Err(Error::BadFamilyQ {
            family: f.name,
            q,
            reason: format!("q below minimum {}", f.q_min),
        });
    }
    for c in f.congruences {
        let r = q % c.modulus;
        let listed = c.residues.contains(&r);
        if listed != c.required {
            return Err(Error::BadFamilyQ {
                family: f.name,
                q,
                reason: format!("q ≡ {r} (mod {}) violates {c}", c.modulus),
            });
        }
    }
    Ok(())
}

/// Degree of the family instance at q.
pub fn family_degree(f: &FamilySpec, q: u64) -> u128 {
    f.degree_mul as u128 * q as u128 - f.degree_sub as u128
}

/// Exact evaluation of the published order polynomial at degree d.
/// The result must be an integer, or the degree does not belong to the
/// family.
pub fn family_predicted_order(f: &FamilySpec, d: u128) -> Result<u128> {
    let d = BigInt::from(d);
    let mut value = Ratio::new(BigInt::from(f.order_num), BigInt::from(f.order_den));
    for &shift in f.order_shifts {
        value *= Ratio::from_integer(&d + BigInt::from(shift));
    }
    if !value.is_integer() {
        return Err(Error::BadFamilyQ {
            family: f.name,
            q: 0,
            reason: format!("order polynomial at d = {d} is not an integer"),
        });
    }
    let v = value.to_integer();
    if v.is_negative() {
        return Err(Error::BadFamilyQ {
            family: f.name,
            q: 0,
            reason: format!("order polynomial at d = {d} is negative"),
        });
    }
    v.to_u128().ok_or(Error::TooLarge(u128::MAX))
}

/// Radii of the family instance at q.
pub fn family_radii(f: &FamilySpec, q: u64) -> Vec<u128> {
    f.delta.iter().map(|&d| (q - d) as u128).collect()
}

/// Build the family instance at q and cross-check degree and order against
/// the published formulas.
pub fn family_instantiate(
    f: &FamilySpec,
    q: u64,
) -> Result<(CirculantGraph, ConstructionCertificate)> {
    family_admits(f, q)?;
    let radii = family_radii(f, q);
    let v = validate_ladder(&radii, f.w);
    let ladder = v.params.ok_or_else(|| Error::BadFamilyQ {
        family: f.name,
        q,
        reason: format!("radii fail the ladder conditions: {}", v.violations),
    })?;
    let base = BaseSet::new(f.w, f.b, f.k, f.directed)?;
    let (graph, cert) = if f.directed {
        build_directed(f.w, &base, &ladder)?
    } else {
        build_undirected(f.w, &base, &ladder)?
    };
    let d = family_degree(f, q);
    if cert.degree as u128 != d {
        return Err(Error::BadFamilyQ {
            family: f.name,
            q,
            reason: format!("degree {} differs from formula {d}", cert.degree),
        });
    }
    let predicted = family_predicted_order(f, d)?;
    if predicted != cert.order {
        return Err(Error::BadFamilyQ {
            family: f.name,
            q,
            reason: format!("order {} differs from formula {predicted}", cert.order),
        });
    }
    Ok((graph, cert))
}

/// Base-r construction on Z_{r^k} with generators {h·r^ℓ : 1 ≤ h ≤ ⌊r/2⌋},
/// taken with both signs. Diameter ≤ k via balanced base-r digits.
pub fn trivial_construction(r: u128, k: u32, directed: bool) -> Result<CirculantGraph> {
    if r < 2 {
        return Err(Error::BadModulus(r));
    }
    if k < 1 {
        return Err(Error::BadBase("k must be positive".into()));
    }
    let n = r.checked_pow(k).ok_or(Error::TooLarge(r))?;
    let mut raw = Vec::new();
    let mut power = 1u128;
    for _ in 0..k {
        for h in 1..=r / 2 {
            let g = h * power;
            raw.push(g);
            if directed {
                raw.push(n - g);
            }
        }
        power *= r;
    }
    Ok(CirculantGraph::new(normalize(n, &raw, directed)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{diameter, verify_diameter_at_most};

    fn ladder_for(radii: &[u128], w: u128) -> LadderParams {
        validate_ladder(radii, w).params.unwrap()
    }

    #[test]
    fn base_cover_examples() {
        let b = BaseSet::new(6, &[0, 1, 2, 4], 2, true).unwrap();
        assert!(check_base_cover(&b));
        let b = BaseSet::new(57, &[1, 2, 7, 8, 27], 3, false).unwrap();
        assert!(check_base_cover(&b));
        // Sums of two distinct elements of {0,1,2,4} mod 7 miss 0.
        let b = BaseSet::new(7, &[0, 1, 2, 4], 2, true).unwrap();
        assert!(!check_base_cover(&b));
    }

    #[test]
    fn base_set_shape_is_enforced() {
        assert!(BaseSet::new(6, &[1, 2, 4], 2, true).is_err()); // no 0
        assert!(BaseSet::new(6, &[0, 1, 2], 2, true).is_err()); // wrong size
        assert!(BaseSet::new(57, &[0, 2, 7, 8, 27], 3, false).is_err()); // 0 in undirected
        assert!(BaseSet::new(6, &[0, 1, 2, 2], 2, true).is_err()); // duplicate
        assert!(BaseSet::new(6, &[0, 1, 2, 9], 2, true).is_err()); // unreduced
    }

    #[test]
    fn build_undirected_w57() {
        let base = BaseSet::new(57, &[1, 2, 7, 8, 27], 3, false).unwrap();
        let ladder = ladder_for(&[17, 13, 11], 57);
        let (g, cert) = build_undirected(57, &base, &ladder).unwrap();
        assert_eq!(g.n(), 138_567);
        assert_eq!(cert.order, 138_567);
        assert_eq!(cert.degree, 158); // 10·17 − 12
        assert_eq!(cert.degree_bound, 158);
        assert_eq!(cert.claimed_diameter, 3);
        assert!(verify_diameter_at_most(&g, 3).unwrap());
    }

    #[test]
    fn build_undirected_w56() {
        let base = BaseSet::new(56, &[1, 2, 7, 14, 15], 3, false).unwrap();
        let ladder = ladder_for(&[15, 13, 11], 56);
        let (g, cert) = build_undirected(56, &base, &ladder).unwrap();
        assert_eq!(g.n(), 120_120); // 56·2145
        assert_eq!(cert.degree, 142); // 10·15 − 8
    }

    #[test]
    fn build_rejects_radius_sharing_factor_with_w() {
        let base = BaseSet::new(57, &[1, 2, 7, 8, 27], 3, false).unwrap();
        let bad = validate_ladder(&[15, 13, 11], 57);
        assert!(bad.params.is_none());
        // Same radii validated against a compatible w, then fed to w = 57.
        let ladder = ladder_for(&[15, 13, 11], 56);
        let err = build_undirected(57, &base, &ladder).unwrap_err();
        assert!(err.to_string().contains("w = 57"), "{err}");
    }

    #[test]
    fn build_directed_w6() {
        let base = BaseSet::new(6, &[0, 1, 2, 4], 2, true).unwrap();
        let ladder = ladder_for(&[7, 5], 6);
        let (g, cert) = build_directed(6, &base, &ladder).unwrap();
        assert_eq!(g.n(), 210);
        assert_eq!(cert.degree, 27); // 6 + 5 + 9 + 7
        assert_eq!(diameter(&g).unwrap(), 2);
    }

    #[test]
    fn build_directed_w9() {
        let base = BaseSet::new(9, &[0, 1, 2, 3, 6], 3, true).unwrap();
        let ladder = ladder_for(&[17, 13, 11], 9);
        let (g, cert) = build_directed(9, &base, &ladder).unwrap();
        assert_eq!(g.n(), 21_879);
        assert_eq!(cert.degree, 78); // 5·17 − 7
        assert!(verify_diameter_at_most(&g, 3).unwrap());
    }

    #[test]
    fn family_lookup() {
        assert_eq!(FAMILIES.len(), 12);
        assert!(find_family("directed-k2-w6").is_ok());
        assert!(matches!(
            find_family("nope"),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn family_instances_small() {
        let f = find_family("directed-k2-w6").unwrap();
        let (g, cert) = family_instantiate(f, 7).unwrap();
        assert_eq!(g.n(), 210);
        assert_eq!(cert.degree, 27);

        let f = find_family("undirected-k3-w57").unwrap();
        let (g, cert) = family_instantiate(f, 17).unwrap();
        assert_eq!(g.n(), 138_567);
        assert_eq!(cert.degree, 158);
    }

    #[test]
    fn family_rejects_bad_q() {
        let f = find_family("directed-k2-w6").unwrap();
        let err = family_instantiate(f, 9).unwrap_err(); // 9 ≡ 3 (mod 6)
        assert!(err.to_string().contains("mod 6"), "{err}");
        assert!(family_instantiate(f, 1).is_err()); // below q_min

        let f = find_family("undirected-k3-w57").unwrap();
        let err = family_admits(f, 23).unwrap_err(); // 23 ≡ 4 (mod 19)
        assert!(err.to_string().contains("mod 19"), "{err}");
    }

    #[test]
    fn predicted_orders() {
        let f = find_family("directed-k4-w13").unwrap();
        // (13/1296)·138·126·114·102 = 13·23·21·19·17 exactly.
        assert_eq!(family_predicted_order(f, 127).unwrap(), 2_028_117);
        let f = find_family("directed-k2-w6").unwrap();
        assert_eq!(family_predicted_order(f, 27).unwrap(), 210);
        assert!(family_predicted_order(f, 28).is_err()); // non-integral
        let f = find_family("undirected-k3-w57").unwrap();
        assert_eq!(family_predicted_order(f, 158).unwrap(), 138_567);
    }

    #[test]
    fn family_c_o_closed_forms() {
        for f in FAMILIES {
            let q = f.q_min;
            family_admits(f, q).unwrap();
            let radii = family_radii(f, q);
            let v = validate_ladder(&radii, f.w);
            assert!(v.ok(), "{}: {}", f.name, v.violations);
            let p = v.params.unwrap();
            assert_eq!(
                p.c_o(),
                (q + f.c_o_offset) as u128,
                "{}: c_o mismatch",
                f.name
            );
            assert_eq!(p.c_u(), q as u128);
        }
    }

    #[test]
    fn all_families_instantiate_at_q_min() {
        for f in FAMILIES {
            let (g, cert) = family_instantiate(f, f.q_min).unwrap();
            assert_eq!(cert.order, g.n());
            assert_eq!(cert.degree as u128, family_degree(f, f.q_min));
            assert_eq!(cert.claimed_diameter as usize, f.k);
            let product: u128 = family_radii(f, f.q_min).iter().product();
            assert_eq!(g.n(), f.w * product);
        }
    }

    #[test]
    fn trivial_construction_examples() {
        let g = trivial_construction(3, 2, false).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.elements(), &[1, 3, 6, 8]);
        assert_eq!(diameter(&g).unwrap(), 2);

        let g = trivial_construction(2, 1, false).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.elements(), &[1]);

        let g = trivial_construction(4, 2, false).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.elements(), &[1, 2, 4, 8, 12, 14, 15]);
        assert_eq!(diameter(&g).unwrap(), 2);

        // Directed variant carries the same (symmetric) residue set.
        let g = trivial_construction(3, 2, true).unwrap();
        assert!(g.directed());
        assert_eq!(g.elements(), &[1, 3, 6, 8]);
        assert!(verify_diameter_at_most(&g, 2).unwrap());
    }

    #[test]
    fn trivial_construction_overflow() {
        assert!(trivial_construction(3, 100, false).is_err());
    }
}
