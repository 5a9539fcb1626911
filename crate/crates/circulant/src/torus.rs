//! Two-generator decomposition on the discrete torus Z_r × Z_s and its
//! k-dimensional ladder extension.
//!
//! The pair decomposition writes any (x, y) as h·(1,1) + ℓ·(u,v) with
//! bounded nonnegative coefficients; the ladder decomposition does the same
//! over Z_{r_1} × … × Z_{r_k} for any k-subset of the basis
//! {o = (1,…,1), u = (1,2,…,k), e_1, …, e_k}.

use crate::cyclic::{mod_inverse, mul_mod};
use crate::{Error, Result};
use num::Integer;
use std::fmt;

/// Parameters of the pair decomposition: generators (1,1) and (u, v) with
/// v = u + d over Z_r × Z_s, r = s + m·d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusParams {
    pub u: u128,
    pub d: u128,
    pub s: u128,
    pub m: u128,
}

impl TorusParams {
    pub fn new(u: u128, d: u128, s: u128, m: u128) -> Self {
        TorusParams { u, d, s, m }
    }

    pub fn v(&self) -> u128 {
        self.u + self.d
    }

    pub fn r(&self) -> u128 {
        self.s + self.m * self.d
    }

    /// Exclusive bound on h in any witness.
    pub fn h_bound(&self) -> u128 {
        self.s + self.m * self.v()
    }

    /// Exclusive bound on ℓ in any witness.
    pub fn ell_bound(&self) -> u128 {
        self.s - self.m * (self.u - 1)
    }
}

/// Violation report for a validation pass; empty means valid.
#[derive(Debug, Clone, Default)]
pub struct Violations(pub Vec<String>);

impl Violations {
    pub fn ok(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, msg: String) {
        self.0.push(msg);
    }
}

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "valid")
        } else {
            write!(f, "{}", self.0.join("; "))
        }
    }
}

/// Check the pair-decomposition preconditions; the report lists every
/// violated condition.
pub fn validate_torus(p: &TorusParams) -> Violations {
    let mut v = Violations::default();
    if p.u == 0 {
        v.push("u must be positive".into());
    }
    if p.d == 0 {
        v.push("d must be positive".into());
    }
    if p.m == 0 {
        v.push("m must be positive".into());
    }
    if p.s < 2 {
        v.push(format!("s must exceed 1, got {}", p.s));
    }
    if p.m > 0 && p.d > 0 && p.s.gcd(&(p.m * p.d)) != 1 {
        v.push(format!("s = {} shares a factor with m·d = {}", p.s, p.m * p.d));
    }
    if p.u > 0 && p.m > 0 && p.d > 0 {
        let need = p.m * p.v() * (p.u - 1);
        if p.s < need {
            v.push(format!("s = {} below m·v·(u−1) = {}", p.s, need));
        }
    }
    v
}

/// Coefficients of (x, y) = h·(1,1) + ℓ·(u,v) in Z_r × Z_s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompWitness {
    pub h: u128,
    pub ell: u128,
}

/// Decompose (x, y) with the minimal-ℓ witness. For each candidate ℓ the
/// congruences pin h uniquely mod r·s, so the scan is O(ℓ) CRT steps.
pub fn decompose_pair(p: &TorusParams, x: u128, y: u128) -> Result<DecompWitness> {
    let report = validate_torus(p);
    if !report.ok() {
        return Err(Error::BadTorus(report.to_string()));
    }
    let (r, s) = (p.r(), p.s);
    if x >= r {
        return Err(Error::ResidueRange {
            residue: x,
            modulus: r,
        });
    }
    if y >= s {
        return Err(Error::ResidueRange {
            residue: y,
            modulus: s,
        });
    }
    let (u, v) = (p.u, p.v());
    let h_bound = p.h_bound();
    // gcd(r, s) = gcd(m·d, s) = 1, so CRT applies to each ℓ.
    let s_inv = mod_inverse(s % r, r).expect("r and s coprime");
    for ell in 0..p.ell_bound() {
        let a = (x + r - mul_mod(ell, u, r)) % r; // target mod r
        let b = (y + s - mul_mod(ell, v, s)) % s; // target mod s
        // h = b + s·t with t chosen so h ≡ a (mod r).
        let t = mul_mod((a + r - b % r) % r, s_inv, r);
        let h = b + s * t;
        if h < h_bound {
            return Ok(DecompWitness { h, ell });
        }
    }
    Err(Error::NoDecomposition { x, y })
}

/// Basis element of the ladder decomposition over ∏ Z_{r_i}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// o = (1, 1, …, 1)
    O,
    /// u = (1, 2, …, k)
    U,
    /// e_i = the i-th standard vector, 1-based.
    E(usize),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::O => write!(f, "o"),
            Basis::U => write!(f, "u"),
            Basis::E(i) => write!(f, "e{i}"),
        }
    }
}

/// Validated ladder: strictly decreasing pairwise-coprime radii with the
/// difference table m and coefficient caps c_o, c_u.
#[derive(Debug, Clone)]
pub struct LadderParams {
    radii: Vec<u128>,
    m: Vec<Vec<u128>>, // m[i][j] for 0-based i < j
    c_o: u128,
    c_u: u128,
}

impl LadderParams {
    pub fn k(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[u128] {
        &self.radii
    }

    /// m_{i,j} for 1-based i < j.
    pub fn m(&self, i: usize, j: usize) -> u128 {
        self.m[i - 1][j - 1]
    }

    pub fn c_o(&self) -> u128 {
        self.c_o
    }

    pub fn c_u(&self) -> u128 {
        self.c_u
    }

    /// Cap c_s for a basis element.
    pub fn cap(&self, s: Basis) -> u128 {
        match s {
            Basis::O => self.c_o,
            Basis::U => self.c_u,
            Basis::E(i) => self.radii[i - 1],
        }
    }
}

/// Validation result: recomputed parameters plus a violation report.
#[derive(Debug, Clone)]
pub struct LadderValidation {
    pub params: Option<LadderParams>,
    pub violations: Violations,
}

impl LadderValidation {
    pub fn ok(&self) -> bool {
        self.violations.ok()
    }
}

/// Recompute m_{i,j} and c_o from the radii and check every ladder
/// condition, including coprimality to the base modulus w.
pub fn validate_ladder(radii: &[u128], w: u128) -> LadderValidation {
    let mut v = Violations::default();
    let k = radii.len();
    if k < 2 {
        v.push(format!("need at least 2 radii, got {k}"));
        return LadderValidation {
            params: None,
            violations: v,
        };
    }
    for (idx, &r) in radii.iter().enumerate() {
        let i = idx + 1;
        if r < 2 {
            v.push(format!("r_{i} = {r} must exceed 1"));
        }
        if r.gcd(&(i as u128)) != 1 {
            v.push(format!("gcd(r_{i} = {r}, {i}) > 1"));
        }
        if w > 0 && r.gcd(&w) != 1 {
            v.push(format!("gcd(r_{i} = {r}, w = {w}) > 1"));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if radii[i].gcd(&radii[j]) != 1 {
                v.push(format!(
                    "r_{} = {} and r_{} = {} share a factor",
                    i + 1,
                    radii[i],
                    j + 1,
                    radii[j]
                ));
            }
        }
    }
    let mut m = vec![vec![0u128; k]; k];
    let mut c_o = 0u128;
    let mut integral = true;
    for i in 0..k {
        for j in i + 1..k {
            if radii[i] <= radii[j] {
                v.push(format!(
                    "radii must strictly decrease: r_{} = {} ≤ r_{} = {}",
                    i + 1,
                    radii[i],
                    j + 1,
                    radii[j]
                ));
                integral = false;
                continue;
            }
            let diff = radii[i] - radii[j];
            let gap = (j - i) as u128;
            if !diff.is_multiple_of(gap) {
                v.push(format!(
                    "r_{} − r_{} = {diff} not divisible by {gap}",
                    i + 1,
                    j + 1
                ));
                integral = false;
                continue;
            }
            let mij = diff / gap;
            m[i][j] = mij;
            let need = mij * i as u128 * (j + 1) as u128; // m_{i,j}·(i−1)·j, 1-based
            if radii[j] < need {
                v.push(format!(
                    "r_{} = {} below m_{{{},{}}}·({})·({}) = {need}",
                    j + 1,
                    radii[j],
                    i + 1,
                    j + 1,
                    i,
                    j + 1
                ));
            }
            c_o = c_o.max(radii[j] + (j + 1) as u128 * mij);
        }
    }
    let params = if v.ok() && integral {
        Some(LadderParams {
            radii: radii.to_vec(),
            m,
            c_o,
            c_u: radii[0],
        })
    } else {
        None
    };
    LadderValidation {
        params,
        violations: v,
    }
}

fn ladder_pair_params(p: &LadderParams, i: usize, j: usize) -> TorusParams {
    TorusParams {
        u: i as u128,
        d: (j - i) as u128,
        s: p.radii[j - 1],
        m: p.m(i, j),
    }
}

/// Decompose x over the k basis elements left after omitting two.
/// Coefficients satisfy h_s < c_s and reconstruct x coordinatewise.
pub fn decompose_ladder(
    p: &LadderParams,
    x: &[u128],
    omitted: (Basis, Basis),
) -> Result<Vec<(Basis, u128)>> {
    let k = p.k();
    if x.len() != k {
        return Err(Error::BadLadder(format!(
            "x has {} coordinates, expected {k}",
            x.len()
        )));
    }
    for (idx, (&xi, &ri)) in x.iter().zip(p.radii()).enumerate() {
        if xi >= ri {
            return Err(Error::BadLadder(format!(
                "coordinate {} = {xi} out of range for r_{} = {ri}",
                idx + 1,
                idx + 1
            )));
        }
    }
    let (a, b) = omitted;
    if a == b {
        return Err(Error::BadLadder("omitted elements must differ".into()));
    }
    for s in [a, b] {
        if let Basis::E(i) = s {
            if i == 0 || i > k {
                return Err(Error::BadLadder(format!("no basis element e{i}")));
            }
        }
    }
    let omit = |s: Basis| s == a || s == b;

    let mut coeffs: Vec<(Basis, u128)> = Vec::with_capacity(k);
    let (h_o, h_u) = if omit(Basis::O) && omit(Basis::U) {
        (0, 0)
    } else if omit(Basis::U) {
        // o present; the omitted e_i forces h_o = x_i.
        let i = match (a, b) {
            (Basis::E(i), _) | (_, Basis::E(i)) => i,
            _ => unreachable!(),
        };
        (x[i - 1], 0)
    } else if omit(Basis::O) {
        // u present; the omitted e_i forces i·h_u ≡ x_i (mod r_i).
        let i = match (a, b) {
            (Basis::E(i), _) | (_, Basis::E(i)) => i,
            _ => unreachable!(),
        };
        let ri = p.radii[i - 1];
        let inv = mod_inverse(i as u128 % ri, ri).expect("gcd(r_i, i) = 1");
        (0, mul_mod(x[i - 1] % ri, inv, ri))
    } else {
        // Both o and u present; the two omitted e-indices form the torus pair.
        let (i, j) = match (a, b) {
            (Basis::E(i), Basis::E(j)) if i < j => (i, j),
            (Basis::E(j), Basis::E(i)) if i < j => (i, j),
            _ => unreachable!(),
        };
        let tp = ladder_pair_params(p, i, j);
        let xi = x[i - 1] % tp.r();
        let xj = x[j - 1] % tp.s;
        let w = decompose_pair(&tp, xi, xj)?;
        (w.h, w.ell)
    };

    if !omit(Basis::O) {
        coeffs.push((Basis::O, h_o));
    }
    if !omit(Basis::U) {
        coeffs.push((Basis::U, h_u));
    }
    for i in 1..=k {
        if omit(Basis::E(i)) {
            continue;
        }
        let ri = p.radii[i - 1];
        let used = (h_o % ri + mul_mod(h_u % ri, i as u128 % ri, ri)) % ri;
        coeffs.push((Basis::E(i), (x[i - 1] + ri - used) % ri));
    }

    for &(s, h) in &coeffs {
        if h >= p.cap(s) {
            return Err(Error::BadLadder(format!(
                "coefficient h_{s} = {h} exceeds cap {}",
                p.cap(s)
            )));
        }
    }
    debug_assert!(reconstructs(p, x, &coeffs));
    Ok(coeffs)
}

/// Check Σ h_s·s ≡ x coordinatewise.
pub fn reconstructs(p: &LadderParams, x: &[u128], coeffs: &[(Basis, u128)]) -> bool {
    (0..p.k()).all(|idx| {
        let ri = p.radii[idx];
        let mut acc = 0u128;
        for &(s, h) in coeffs {
            let mult = match s {
                Basis::O => 1,
                Basis::U => (idx + 1) as u128,
                Basis::E(i) => u128::from(i == idx + 1),
            };
            acc = (acc + mul_mod(h % ri, mult % ri, ri)) % ri;
        }
        acc == x[idx] % ri
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Parameters of the worked two-generator example: u=2, v=5, s=11, m=2.
    fn fig_params() -> TorusParams {
        TorusParams::new(2, 3, 11, 2)
    }

    #[test]
    fn validate_torus_examples() {
        assert!(validate_torus(&fig_params()).ok());
        let bad = TorusParams::new(2, 3, 9, 2);
        let rep = validate_torus(&bad);
        assert!(!rep.ok()); // 9 < m·v·(u−1) = 10, and gcd(9, 6) = 3
        assert!(validate_torus(&TorusParams::new(1, 1, 2, 1)).ok());
    }

    #[test]
    fn decompose_pair_examples() {
        let p = fig_params();
        assert_eq!(
            decompose_pair(&p, 0, 0).unwrap(),
            DecompWitness { h: 0, ell: 0 }
        );
        // 1·(1,1) + 1·(2,5) = (3,6)
        assert_eq!(
            decompose_pair(&p, 3, 6).unwrap(),
            DecompWitness { h: 1, ell: 1 }
        );
        // 19·(1,1) + 7·(2,5) ≡ (33 mod 17, 54 mod 11) = (16,10)
        assert_eq!(
            decompose_pair(&p, 16, 10).unwrap(),
            DecompWitness { h: 19, ell: 7 }
        );
    }

    #[test]
    fn decompose_pair_covers_whole_torus() {
        let p = fig_params();
        let (r, s) = (p.r(), p.s);
        assert_eq!(r, 17);
        for x in 0..r {
            for y in 0..s {
                let w = decompose_pair(&p, x, y).unwrap();
                assert!(w.h < p.h_bound());
                assert!(w.ell < p.ell_bound());
                assert_eq!((w.h + w.ell * p.u) % r, x);
                assert_eq!((w.h + w.ell * p.v()) % s, y);
            }
        }
    }

    #[test]
    fn minimal_ell_is_returned() {
        let p = fig_params();
        for x in 0..p.r() {
            for y in 0..p.s {
                let w = decompose_pair(&p, x, y).unwrap();
                for ell in 0..w.ell {
                    // No valid h below the bound may exist for a smaller ell.
                    let found = (0..p.h_bound()).any(|h| {
                        (h + ell * p.u) % p.r() == x && (h + ell * p.v()) % p.s == y
                    });
                    assert!(!found, "({x},{y}): ell {ell} beats {}", w.ell);
                }
            }
        }
    }

    #[test]
    fn validate_ladder_examples() {
        let v = validate_ladder(&[17, 13, 11], 57);
        assert!(v.ok(), "{}", v.violations);
        let p = v.params.unwrap();
        assert_eq!((p.m(1, 2), p.m(1, 3), p.m(2, 3)), (4, 3, 2));
        assert_eq!(p.c_o(), 21); // q + 4 at q = 17
        assert_eq!(p.c_u(), 17);

        let v = validate_ladder(&[7, 5], 6);
        assert!(v.ok());
        let p = v.params.unwrap();
        assert_eq!(p.m(1, 2), 2);
        assert_eq!(p.c_o(), 9); // q + 2 at q = 7

        let v = validate_ladder(&[15, 13, 11], 57);
        assert!(!v.ok()); // gcd(15, 57) = 3
        assert!(v.violations.0.iter().any(|s| s.contains("w = 57")));
    }

    #[test]
    fn ladder_coordinate_case() {
        let p = validate_ladder(&[17, 13, 11], 57).params.unwrap();
        let c = decompose_ladder(&p, &[3, 6, 9], (Basis::O, Basis::U)).unwrap();
        assert_eq!(
            c,
            vec![(Basis::E(1), 3), (Basis::E(2), 6), (Basis::E(3), 9)]
        );
    }

    #[test]
    fn ladder_pair_case_uses_torus_decomposition() {
        let p = validate_ladder(&[17, 13, 11], 57).params.unwrap();
        let x = [5, 6, 10];
        let c = decompose_ladder(&p, &x, (Basis::E(2), Basis::E(3))).unwrap();
        assert!(reconstructs(&p, &x, &c));
        let names: Vec<Basis> = c.iter().map(|&(s, _)| s).collect();
        assert_eq!(names, vec![Basis::O, Basis::U, Basis::E(1)]);
    }

    #[test]
    fn ladder_omit_o_case() {
        let p = validate_ladder(&[7, 5], 6).params.unwrap();
        let c = decompose_ladder(&p, &[4, 3], (Basis::O, Basis::E(1))).unwrap();
        assert_eq!(c, vec![(Basis::U, 4), (Basis::E(2), 0)]);
    }

    #[test]
    fn ladder_exhaustive_small() {
        let p = validate_ladder(&[7, 5], 6).params.unwrap();
        let all = [
            (Basis::O, Basis::U),
            (Basis::O, Basis::E(1)),
            (Basis::O, Basis::E(2)),
            (Basis::U, Basis::E(1)),
            (Basis::U, Basis::E(2)),
            (Basis::E(1), Basis::E(2)),
        ];
        for x1 in 0..7u128 {
            for x2 in 0..5u128 {
                for &omit in &all {
                    let c = decompose_ladder(&p, &[x1, x2], omit).unwrap();
                    assert!(reconstructs(&p, &[x1, x2], &c));
                    for &(s, h) in &c {
                        assert!(h < p.cap(s));
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_rejects_bad_input() {
        let p = validate_ladder(&[7, 5], 6).params.unwrap();
        assert!(decompose_ladder(&p, &[1], (Basis::O, Basis::U)).is_err());
        assert!(decompose_ladder(&p, &[1, 9], (Basis::O, Basis::U)).is_err());
        assert!(decompose_ladder(&p, &[1, 1], (Basis::O, Basis::O)).is_err());
        assert!(decompose_ladder(&p, &[1, 1], (Basis::O, Basis::E(3))).is_err());
    }
}
