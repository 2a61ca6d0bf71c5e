//! Numerical invariants of `R`: multiplicity, embedding dimension,
//! regularity via Kunz, and bracket-power certificates for `drs(R)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pushforward::frobenius_pushforward;
use crate::error::{AlgebraError, Result};
use crate::groebner::ideal::is_power_of;
use crate::groebner::Ideal;
use crate::modules::random::random_form;
use crate::modules::{depth, Module, QuotientRing};
use crate::poly::Poly;

/// Step cap for the Hilbert-Samuel function.
pub const SAMUEL_CAP: usize = 64;

/// Random candidates drawn per degree in the parameter search.
pub const RANDOM_SOPS_PER_DEGREE: usize = 32;

/// Monomial candidate sets examined before switching to random forms.
pub const MONOMIAL_CANDIDATE_CAP: usize = 20_000;

/// `ℓ(R / m^{s+1})`.
pub fn samuel_length(ring: &QuotientRing, s: usize) -> Result<u64> {
    let poly = ring.poly();
    let mut gens = ring.ideal().gens().to_vec();
    let n = poly.nvars();
    // monomials of total degree s+1
    let mut stack: Vec<(usize, Vec<u16>, usize)> = vec![(0, vec![0; n], s + 1)];
    while let Some((v, e, left)) = stack.pop() {
        if v == n - 1 {
            let mut e = e;
            e[v] = left as u16;
            gens.push(Poly::monomial(poly.monomial(&e), 1));
            continue;
        }
        for k in 0..=left {
            let mut f = e.clone();
            f[v] = k as u16;
            stack.push((v + 1, f, left - k));
        }
    }
    Ideal::new(poly, gens)
        .colength()
        .ok_or_else(|| AlgebraError::InternalInconsistency("R/m^s is not of finite length".into()))
}

/// `e(R)` from the Hilbert-Samuel function: the `d`-th differences of
/// `ℓ(R/m^{s+1})` must agree on `d+2` consecutive values.
pub fn multiplicity(ring: &QuotientRing) -> Result<u64> {
    ring.cached_multiplicity(|| {
        let d = ring.dim();
        if d == 0 {
            return Err(AlgebraError::Precondition("multiplicity needs dim R >= 1".into()));
        }
        let mut lens: Vec<i64> = Vec::new();
        for s in 0..SAMUEL_CAP {
            lens.push(samuel_length(ring, s)? as i64);
            let mut diff = lens.clone();
            for _ in 0..d {
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
            if diff.len() >= d + 2 {
                let tail = &diff[diff.len() - (d + 2)..];
                if tail.iter().all(|&x| x == tail[0]) && tail[0] > 0 {
                    return Ok(tail[0] as u64);
                }
            }
        }
        Err(AlgebraError::NonStabilized(SAMUEL_CAP))
    })
}

/// `dim_k m/m^2`.
pub fn embedding_dimension(ring: &QuotientRing) -> usize {
    let poly = ring.poly();
    let n = poly.nvars();
    let fp = poly.field();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in ring.ideal().gens() {
        let mut row = vec![0u32; n];
        for &(m, c) in g.terms() {
            if m.total_degree() == 1 {
                let v = (0..n).find(|&v| m.exps()[v] == 1).unwrap();
                row[v] = c;
            }
        }
        rows.push(row);
    }
    // rank over F_p
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = fp.inv(rows[rank][col]).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = fp.mul(rows[r][col], inv);
                for c in 0..n {
                    rows[r][c] = fp.sub(rows[r][c], fp.mul(f, rows[rank][c]));
                }
            }
        }
        rank += 1;
    }
    n - rank
}

/// Kunz: `R` is regular iff `^φR` is free; cross-checked against
/// `dim R = embdim R`.
pub fn is_regular_kunz(ring: &QuotientRing) -> Result<bool> {
    ring.cached_regular(|| {
        let pf = frobenius_pushforward(&Module::free(ring, vec![0]), 1)?;
        let kunz = pf.module.nrels() == 0;
        let embdim = embedding_dimension(ring) == ring.dim();
        if kunz != embdim {
            return Err(AlgebraError::InternalInconsistency(format!(
                "pushforward freeness ({kunz}) disagrees with dim = embdim ({embdim})"
            )));
        }
        Ok(kunz)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrsCertificate {
    pub q: u64,
    /// `m^{[q]} ⊆ (sop)` was verified for the reported system of parameters.
    pub holds: bool,
    pub sop: Vec<String>,
    /// Search phase that produced the witness: `monomial` or `random`.
    pub phase: Option<String>,
    pub monomial_candidates: usize,
    pub random_candidates: usize,
}

/// `dim R/(sop) = 0` and `m^{[q]} ⊆ I + (sop)`.
pub fn certifies(ring: &QuotientRing, sop: &[Poly], q: u64) -> bool {
    let poly = ring.poly();
    let mut gens = ring.ideal().gens().to_vec();
    gens.extend(sop.iter().cloned());
    let j = Ideal::new(poly, gens);
    if j.krull_dim() != Some(0) {
        return false;
    }
    poly.vars()
        .iter()
        .all(|x| j.contains(&poly.frobenius_power(x, q as u32)))
}

/// Searches systems of parameters `x` with `m^{[q]} ⊆ (x)`: monomial sets by
/// increasing total degree first, then seeded random forms degree by degree.
/// A certificate that holds proves `drs(R) <= q`.
pub fn drs_upper_bound(ring: &QuotientRing, q: u64, seed: u64) -> Result<DrsCertificate> {
    let p = ring.characteristic() as u64;
    if !is_power_of(q, p) {
        return Err(AlgebraError::BadFrobeniusPower { q, p: p as u32 });
    }
    let d = ring.dim();
    if d == 0 {
        return Err(AlgebraError::Precondition("drs needs dim R >= 1".into()));
    }
    let poly = ring.poly();
    let maxw = *poly.weights().iter().max().unwrap() as u64;
    let top = (q * maxw) as u32;
    let mut monos: Vec<(u32, Poly)> = Vec::new();
    for deg in 1..=top {
        for m in poly.monomials_of_degree(deg) {
            let f = Poly::monomial(m, 1);
            if !ring.is_zero(&f) {
                monos.push((deg, f));
            }
        }
    }
    let mut cert = DrsCertificate {
        q,
        holds: false,
        sop: Vec::new(),
        phase: None,
        monomial_candidates: 0,
        random_candidates: 0,
    };
    let mut combos: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut cur = Vec::new();
    enumerate_combos(&monos, d, 0, &mut cur, &mut combos, MONOMIAL_CANDIDATE_CAP);
    combos.sort();
    for (_, c) in combos {
        cert.monomial_candidates += 1;
        let sop: Vec<Poly> = c.iter().map(|&i| monos[i].1.clone()).collect();
        if certifies(ring, &sop, q) {
            cert.holds = true;
            cert.sop = sop.iter().map(|f| ring.format(f)).collect();
            cert.phase = Some("monomial".into());
            return Ok(cert);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for deg in 1..=top {
        if poly.monomials_of_degree(deg).is_empty() {
            continue;
        }
        for _ in 0..RANDOM_SOPS_PER_DEGREE {
            let sop: Vec<Poly> = (0..d).map(|_| random_form(ring, deg, &mut rng)).collect();
            if sop.iter().any(|f| f.is_zero()) {
                continue;
            }
            cert.random_candidates += 1;
            if certifies(ring, &sop, q) {
                cert.holds = true;
                cert.sop = sop.iter().map(|f| ring.format(f)).collect();
                cert.phase = Some("random".into());
                return Ok(cert);
            }
        }
    }
    Ok(cert)
}

fn enumerate_combos(
    monos: &[(u32, Poly)],
    d: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<(u32, Vec<usize>)>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if cur.len() == d {
        let total = cur.iter().map(|&i| monos[i].0).sum();
        out.push((total, cur.clone()));
        return;
    }
    for i in start..monos.len() {
        cur.push(i);
        enumerate_combos(monos, d, i + 1, cur, out, cap);
        cur.pop();
        if out.len() >= cap {
            return;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingInvariants {
    pub dim: usize,
    pub depth: usize,
    pub multiplicity: u64,
    pub embedding_dimension: usize,
    pub is_regular: bool,
    pub drs_bounds: Vec<DrsCertificate>,
}

/// Invariants of `R`, with `drs` certificates tried at each `q` in `qs`.
pub fn ring_invariants(ring: &QuotientRing, qs: &[u64], seed: u64) -> Result<RingInvariants> {
    Ok(RingInvariants {
        dim: ring.dim(),
        depth: depth(&Module::free(ring, vec![0]))?,
        multiplicity: multiplicity(ring)?,
        embedding_dimension: embedding_dimension(ring),
        is_regular: is_regular_kunz(ring)?,
        drs_bounds: qs
            .iter()
            .map(|&q| drs_upper_bound(ring, q, seed))
            .collect::<Result<_>>()?,
    })
}
