//! Cyclic-group plumbing: connection sets, CRT coordinates, multiplier maps.
//!
//! Elements are reduced residues in [1, n-1] stored as u128; construction
//! paths reach orders around 10^28 and silent overflow is forbidden.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::{Integer, ToPrimitive};

/// Connection set of a circulant graph: sorted nonzero residues mod n.
/// For undirected graphs the set is closed under negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: u128,
    directed: bool,
    elems: Vec<u128>,
}

impl ConnectionSet {
    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn elems(&self) -> &[u128] {
        &self.elems
    }

    pub fn degree(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, e: u128) -> bool {
        self.elems.binary_search(&e).is_ok()
    }
}

/// Reduce raw generators mod n, drop duplicates, sort; for undirected sets
/// apply closure under negation. Zero generators are rejected.
pub fn normalize(n: u128, raw: &[u128], directed: bool) -> Result<ConnectionSet> {
    if n < 2 {
        return Err(Error::BadModulus(n));
    }
    if raw.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut elems = Vec::with_capacity(raw.len() * 2);
    for &g in raw {
        let e = g % n;
        if e == 0 {
            return Err(Error::ZeroGenerator { gen: g, n });
        }
        elems.push(e);
        if !directed {
            elems.push(n - e);
        }
    }
    elems.sort_unstable();
    elems.dedup();
    Ok(ConnectionSet { n, directed, elems })
}

/// Check elementwise that e ∈ S ⇔ n−e ∈ S. Holds by construction for sets
/// from `normalize`; used to vet externally supplied sets.
pub fn check_symmetric(s: &ConnectionSet) -> Result<()> {
    for &e in &s.elems {
        let m = s.n - e;
        if !s.contains(m) {
            return Err(Error::Asymmetric {
                element: e,
                missing: m,
                n: s.n,
            });
        }
    }
    Ok(())
}

/// A circulant graph Cay(Z_n, S), identified with its connection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantGraph {
    set: ConnectionSet,
}

impl CirculantGraph {
    pub fn new(set: ConnectionSet) -> Self {
        CirculantGraph { set }
    }

    pub fn n(&self) -> u128 {
        self.set.n
    }

    pub fn directed(&self) -> bool {
        self.set.directed
    }

    pub fn degree(&self) -> usize {
        self.set.elems.len()
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn elements(&self) -> &[u128] {
        &self.set.elems
    }
}

impl From<ConnectionSet> for CirculantGraph {
    fn from(set: ConnectionSet) -> Self {
        CirculantGraph::new(set)
    }
}

/// Element of a direct product of cyclic groups with pairwise coprime orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueVector {
    moduli: Vec<u128>,
    coords: Vec<u128>,
}

impl ResidueVector {
    pub fn new(moduli: Vec<u128>, coords: Vec<u128>) -> Result<Self> {
        if moduli.len() != coords.len() {
            return Err(Error::GraphFormat(format!(
                "residue vector: {} moduli, {} coords",
                moduli.len(),
                coords.len()
            )));
        }
        for (&m, &c) in moduli.iter().zip(&coords) {
            if m < 2 {
                return Err(Error::BadModulus(m));
            }
            if c >= m {
                return Err(Error::ResidueRange {
                    residue: c,
                    modulus: m,
                });
            }
        }
        check_pairwise_coprime(&moduli)?;
        Ok(ResidueVector { moduli, coords })
    }

    pub fn moduli(&self) -> &[u128] {
        &self.moduli
    }

    pub fn coords(&self) -> &[u128] {
        &self.coords
    }
}

fn check_pairwise_coprime(moduli: &[u128]) -> Result<()> {
    for (i, &a) in moduli.iter().enumerate() {
        for &b in &moduli[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::NotCoprime { a, b });
            }
        }
    }
    Ok(())
}

pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // Fits natively whenever both factors are below 2^64; the BigInt path
    // only triggers for astronomically large moduli.
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        (a * b) % m
    } else {
        ((BigInt::from(a) * BigInt::from(b)) % BigInt::from(m))
            .to_u128()
            .expect("reduced product fits")
    }
}

pub(crate) fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    let e = BigInt::from(a % m).extended_gcd(&BigInt::from(m));
    if e.gcd != BigInt::from(1) {
        return None;
    }
    let mut x = e.x % BigInt::from(m);
    if x < BigInt::from(0) {
        x += BigInt::from(m);
    }
    x.to_u128()
}

/// Unique x in [0, ∏ moduli) congruent to every coordinate.
pub fn crt_combine(v: &ResidueVector) -> Result<u128> {
    let mut x = 0u128;
    let mut modulus = 1u128;
    for (&m, &c) in v.moduli.iter().zip(&v.coords) {
        if modulus.gcd(&m) != 1 {
            return Err(Error::NotCoprime { a: modulus, b: m });
        }
        let inv = mod_inverse(modulus % m, m).ok_or(Error::NotCoprime { a: modulus, b: m })?;
        let diff = (c % m + m - x % m) % m;
        let t = mul_mod(diff, inv, m);
        x += modulus
            .checked_mul(t)
            .ok_or(Error::ModulusOverflow)?;
        modulus = modulus.checked_mul(m).ok_or(Error::ModulusOverflow)?;
    }
    Ok(x)
}

/// Inverse of `crt_combine`: reduce x by each modulus.
pub fn crt_split(x: u128, moduli: &[u128]) -> Result<ResidueVector> {
    check_pairwise_coprime(moduli)?;
    let mut product = 1u128;
    for &m in moduli {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        product = product.checked_mul(m).ok_or(Error::ModulusOverflow)?;
    }
    if x >= product {
        return Err(Error::ValueRange {
            value: x,
            bound: product,
        });
    }
    let coords = moduli.iter().map(|&m| x % m).collect();
    ResidueVector::new(moduli.to_vec(), coords)
}

/// Image of a connection set under the group automorphism e ↦ u·e.
/// The resulting graph is isomorphic to the input, hence same diameter.
pub fn multiplier_image(s: &ConnectionSet, u: u128) -> Result<ConnectionSet> {
    let n = s.n;
    let u = u % n;
    if u.gcd(&n) != 1 {
        return Err(Error::BadMultiplier { u, n });
    }
    let raw: Vec<u128> = s.elems.iter().map(|&e| mul_mod(e, u, n)).collect();
    normalize(n, &raw, s.directed)
}
