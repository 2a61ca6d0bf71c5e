//! Graded quotient rings `R = P/I` with their minimal primes.

use std::fmt;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::resolution::FreeResolution;
use crate::error::{AlgebraError, Result};
use crate::frobenius::{frobenius_pushforward, Pushforward};
use crate::groebner::Ideal;
use crate::poly::Poly;
use crate::ring::PolyRing;

/// Where the list of minimal primes came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeProvenance {
    /// Minimal vertex covers of a monomial defining ideal.
    Computed,
    /// Supplied by the caller and validated by containment and dimension.
    Declared,
    /// Not available: the ideal is not monomial and nothing was declared.
    Unknown,
}

struct RingInner {
    poly: PolyRing,
    ideal: Ideal,
    primes: Vec<Ideal>,
    provenance: PrimeProvenance,
    reduced: bool,
    dim: usize,
    residue_resolution: OnceLock<Arc<FreeResolution>>,
    multiplicity: OnceLock<Result<u64>>,
    regular: OnceLock<Result<bool>>,
    pushforwards: Mutex<BTreeMap<u32, Arc<Pushforward>>>,
}

/// `P/I` for a homogeneous ideal `I`. Cheap to clone; equality is identity.
#[derive(Clone)]
pub struct QuotientRing(Arc<RingInner>);

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl QuotientRing {
    /// Builds `P/(gens)`. Minimal primes are computed when the ideal is
    /// monomial and left unknown otherwise.
    pub fn new(poly: &PolyRing, gens: Vec<Poly>) -> Result<QuotientRing> {
        Self::build(poly, Ideal::new(poly, gens), None)
    }

    /// Builds `P/(gens)` with caller-supplied minimal primes.
    pub fn with_primes(
        poly: &PolyRing,
        gens: Vec<Poly>,
        primes: Vec<Vec<Poly>>,
    ) -> Result<QuotientRing> {
        let primes = primes.into_iter().map(|g| Ideal::new(poly, g)).collect();
        Self::build(poly, Ideal::new(poly, gens), Some(primes))
    }

    /// Like [`QuotientRing::new`] with a precomputed ideal (e.g. from a cache).
    pub fn from_ideal(ideal: Ideal, primes: Option<Vec<Ideal>>) -> Result<QuotientRing> {
        let poly = ideal.ring().clone();
        Self::build(&poly, ideal, primes)
    }

    /// The polynomial ring itself.
    pub fn polynomial(poly: &PolyRing) -> QuotientRing {
        Self::new(poly, Vec::new()).expect("polynomial ring is always valid")
    }

    fn build(poly: &PolyRing, ideal: Ideal, declared: Option<Vec<Ideal>>) -> Result<QuotientRing> {
        for g in ideal.gens() {
            poly.check(g)?;
            if !g.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous(poly.format(g)));
            }
        }
        let dim = ideal
            .krull_dim()
            .ok_or_else(|| AlgebraError::Precondition("defining ideal is the unit ideal".into()))?;
        let monomial = ideal.is_monomial();
        let (primes, provenance) = match declared {
            Some(ps) if !ps.is_empty() => {
                for p in &ps {
                    validate_prime(&ideal, p, dim)?;
                }
                (ps, PrimeProvenance::Declared)
            }
            _ if monomial => (monomial_minimal_primes(&ideal), PrimeProvenance::Computed),
            _ => (Vec::new(), PrimeProvenance::Unknown),
        };
        if provenance == PrimeProvenance::Computed {
            for p in &primes {
                if p.krull_dim() != Some(dim) {
                    return Err(AlgebraError::Precondition(format!(
                        "defining ideal is not equidimensional: minimal prime {} has a different dimension",
                        p.format()
                    )));
                }
            }
        }
        let reduced = if monomial {
            ideal
                .leading_monomials()
                .iter()
                .all(|m| m.exps().iter().all(|&e| e <= 1))
        } else if primes.is_empty() {
            false
        } else {
            let mut inter = primes[0].clone();
            for p in &primes[1..] {
                inter = inter.intersection(p);
            }
            inter == ideal
        };
        Ok(QuotientRing(Arc::new(RingInner {
            poly: poly.clone(),
            ideal,
            primes,
            provenance,
            reduced,
            dim,
            residue_resolution: OnceLock::new(),
            multiplicity: OnceLock::new(),
            regular: OnceLock::new(),
            pushforwards: Mutex::new(BTreeMap::new()),
        })))
    }

    pub fn poly(&self) -> &PolyRing {
        &self.0.poly
    }

    pub fn ideal(&self) -> &Ideal {
        &self.0.ideal
    }

    pub fn characteristic(&self) -> u32 {
        self.0.poly.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.0.poly.nvars()
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn minimal_primes(&self) -> &[Ideal] {
        &self.0.primes
    }

    pub fn prime_provenance(&self) -> PrimeProvenance {
        self.0.provenance
    }

    /// Whether the ring is certified reduced. Rings with unknown minimal
    /// primes and a non-monomial ideal are never certified.
    pub fn is_reduced(&self) -> bool {
        self.0.reduced
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.ideal.is_zero()
    }

    /// Normal form modulo the defining ideal.
    pub fn nf(&self, f: &Poly) -> Poly {
        self.0.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &Poly) -> bool {
        self.nf(f).is_zero()
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        let f = self.0.poly.parse(s)?;
        Ok(self.nf(&f))
    }

    pub fn format(&self, f: &Poly) -> String {
        self.0.poly.format(f)
    }

    /// Minimal resolution of the residue field, computed once.
    pub fn residue_resolution(&self) -> Arc<FreeResolution> {
        self.0
            .residue_resolution
            .get_or_init(|| {
                let k = super::Module::residue_field(self);
                Arc::new(FreeResolution::new(&k, self.dim() + 4))
            })
            .clone()
    }

    /// `^{φ^n}R`, computed once per `n`.
    pub fn pushforward_of_ring(&self, n: u32) -> Result<Arc<Pushforward>> {
        if let Some(p) = self.0.pushforwards.lock().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let pf = Arc::new(frobenius_pushforward(&super::Module::free(self, vec![0]), n)?);
        let mut cache = self.0.pushforwards.lock().unwrap();
        Ok(cache.entry(n).or_insert(pf).clone())
    }

    pub(crate) fn cached_multiplicity(&self, f: impl FnOnce() -> Result<u64>) -> Result<u64> {
        self.0.multiplicity.get_or_init(f).clone()
    }

    pub(crate) fn cached_regular(&self, f: impl FnOnce() -> Result<bool>) -> Result<bool> {
        self.0.regular.get_or_init(f).clone()
    }

    pub fn describe(&self) -> String {
        let p = &self.0.poly;
        let vars: Vec<String> = p
            .names()
            .iter()
            .zip(p.weights())
            .map(|(n, w)| if *w == 1 { n.clone() } else { format!("{n}:{w}") })
            .collect();
        let base = format!("F_{}[{}]", p.characteristic(), vars.join(", "));
        if self.is_polynomial_ring() {
            base
        } else {
            format!("{base}/{}", self.0.ideal.format())
        }
    }
}

fn validate_prime(ideal: &Ideal, p: &Ideal, dim: usize) -> Result<()> {
    if !p.is_homogeneous() {
        return Err(AlgebraError::InvalidPrime(format!("{} is not homogeneous", p.format())));
    }
    if p.is_unit() {
        return Err(AlgebraError::InvalidPrime("unit ideal".into()));
    }
    if !p.contains_ideal(ideal) {
        return Err(AlgebraError::InvalidPrime(format!(
            "{} does not contain the defining ideal",
            p.format()
        )));
    }
    if p.krull_dim() != Some(dim) {
        return Err(AlgebraError::InvalidPrime(format!(
            "{} has dimension {:?}, ring has dimension {dim}",
            p.format(),
            p.krull_dim()
        )));
    }
    Ok(())
}

/// Minimal primes of a monomial ideal: the minimal sets of variables meeting
/// the support of every generator.
fn monomial_minimal_primes(ideal: &Ideal) -> Vec<Ideal> {
    let poly = ideal.ring();
    let n = poly.nvars();
    let gens: Vec<u32> = if ideal.is_zero() {
        Vec::new()
    } else {
        ideal
            .leading_monomials()
            .iter()
            .map(|m| {
                (0..n)
                    .filter(|&v| m.exps()[v] > 0)
                    .fold(0u32, |acc, v| acc | (1 << v))
            })
            .collect()
    };
    let mut covers: Vec<u32> = Vec::new();
    let mut subsets: Vec<u32> = (0..(1u32 << n)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        if gens.iter().all(|g| g & s != 0) && !covers.iter().any(|c| c & s == *c) {
            covers.push(s);
        }
    }
    covers
        .into_iter()
        .map(|s| {
            let g = (0..n).filter(|&v| s & (1 << v) != 0).map(|v| poly.var(v)).collect();
            Ideal::new(poly, g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_rings_get_computed_primes() {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        let ra = QuotientRing::new(&p, vec![p.parse("x^2").unwrap()]).unwrap();
        assert_eq!(ra.minimal_primes().len(), 1);
        assert_eq!(ra.minimal_primes()[0].gens(), &[p.var(0)]);
        assert!(!ra.is_reduced());
        assert_eq!(ra.dim(), 1);
        let rb = QuotientRing::new(&p, vec![p.parse("x*y").unwrap()]).unwrap();
        assert_eq!(rb.minimal_primes().len(), 2);
        assert!(rb.is_reduced());
        assert_eq!(rb.prime_provenance(), PrimeProvenance::Computed);
        let poly = QuotientRing::polynomial(&p);
        assert_eq!(poly.minimal_primes().len(), 1);
        assert!(poly.minimal_primes()[0].is_zero());
        assert_eq!(poly.dim(), 2);
    }

    #[test]
    fn declared_primes_are_validated() {
        let p = PolyRing::new(3, &["x", "y", "z"], &[3, 4, 5]).unwrap();
        let gens: Vec<Poly> = ["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"]
            .iter()
            .map(|s| p.parse(s).unwrap())
            .collect();
        let r = QuotientRing::with_primes(&p, gens.clone(), vec![gens.clone()]).unwrap();
        assert!(r.is_reduced());
        assert_eq!(r.prime_provenance(), PrimeProvenance::Declared);
        let bad = QuotientRing::with_primes(&p, gens.clone(), vec![vec![p.var(0)]]);
        assert!(matches!(bad, Err(AlgebraError::InvalidPrime(_))));
        let unknown = QuotientRing::new(&p, gens).unwrap();
        assert_eq!(unknown.prime_provenance(), PrimeProvenance::Unknown);
        assert!(!unknown.is_reduced());
    }

    #[test]
    fn inhomogeneous_ideal_rejected() {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        let r = QuotientRing::new(&p, vec![p.parse("x^2 + y").unwrap()]);
        assert!(matches!(r, Err(AlgebraError::Inhomogeneous(_))));
    }
}
