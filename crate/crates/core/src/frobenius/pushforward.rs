//! Presentations of `^{φ^n}M`, the restriction of scalars along `φ^n`.
//!
//! `P` is free over `P^q` on the monomials `x^α` with `0 <= α_i < q`, so an
//! element `h` of `P^n` splits uniquely as `sum_{α,j} g_{α,j}^q x^α e_j`.
//! If `U = im(A) + I P^n` is generated by `u_1, .., u_s` over `P`, then
//! `^φU` is generated over `P` (acting through `φ^n`) by the `x^β u_l`,
//! `0 <= β_i < q`, whose split coordinates are the relations.

use serde::Serialize;

use super::functor::frobenius_q;
use crate::error::{AlgebraError, Result};
use crate::modules::{format_degree, Module, PresentationData};
use crate::monomial::Monomial;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorLabel {
    /// Exponent vector `α` of the monomial `x^α`.
    pub alpha: Vec<u16>,
    /// Generator of `M` it multiplies.
    pub generator: usize,
    /// Degree `(deg g + |α|) / q` as a fraction.
    pub degree: String,
}

#[derive(Clone, Debug)]
pub struct Pushforward {
    pub q: u64,
    /// Presentation on all `q^m * ngens` generators.
    pub raw: Module,
    pub raw_labels: Vec<GeneratorLabel>,
    /// Minimal presentation; its generators are a subset of the raw ones.
    pub module: Module,
    pub labels: Vec<GeneratorLabel>,
}

#[derive(Serialize)]
pub struct PushforwardData {
    pub q: u64,
    pub raw_generator_count: usize,
    pub generators: Vec<GeneratorLabel>,
    pub presentation: PresentationData,
}

impl Pushforward {
    pub fn to_data(&self) -> PushforwardData {
        PushforwardData {
            q: self.q,
            raw_generator_count: self.raw.ngens(),
            generators: self.labels.clone(),
            presentation: self.module.to_data(),
        }
    }
}

/// All exponent vectors in `[0, q)^m`, last variable fastest.
pub fn residue_exponents(m: usize, q: u64) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * q as usize);
        for v in &out {
            for a in 0..q as u16 {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn residue_index(alpha: &[u16], q: u64) -> usize {
    alpha.iter().fold(0usize, |acc, &a| acc * q as usize + a as usize)
}

/// Coordinates of `h` in the basis `x^α e_j` over `P^q`: entry `a * n + j`
/// holds `g` with `g^q x^{α_a}` the `e_j`-part's share.
pub fn split_q(m: &Module, h: &[Poly], q: u64) -> Vec<Poly> {
    let poly = m.ring().poly();
    let nv = poly.nvars();
    let n = h.len();
    let size = (q as usize).pow(nv as u32);
    let mut parts: Vec<Vec<(Monomial, i64)>> = vec![Vec::new(); size * n];
    for (j, f) in h.iter().enumerate() {
        for &(mono, c) in f.terms() {
            let e = mono.exps();
            let alpha: Vec<u16> = (0..nv).map(|v| (e[v] as u64 % q) as u16).collect();
            let delta: Vec<u16> = (0..nv).map(|v| (e[v] as u64 / q) as u16).collect();
            parts[residue_index(&alpha, q) * n + j].push((poly.monomial(&delta), c as i64));
        }
    }
    parts.into_iter().map(|t| poly.from_terms(t)).collect()
}

/// Bound on `q^m * ngens`, the generator count before minimalization.
pub const MAX_PUSHFORWARD_GENERATORS: u64 = 1 << 16;

/// `^{φ^n}M` with generators `x^α e_j`.
pub fn frobenius_pushforward(m: &Module, n: u32) -> Result<Pushforward> {
    let ring = m.ring();
    let poly = ring.poly();
    let q = frobenius_q(ring.characteristic(), n)?;
    let nv = poly.nvars();
    let ngen = m.ngens();
    let den = m.den();
    let count = q
        .checked_pow(nv as u32)
        .and_then(|c| c.checked_mul(ngen as u64))
        .filter(|&c| c <= MAX_PUSHFORWARD_GENERATORS);
    if count.is_none() {
        return Err(AlgebraError::TooLarge(format!(
            "pushforward with q = {q} on {nv} variables and {ngen} generators"
        )));
    }
    let new_den = den * q as u32;
    let alphas = residue_exponents(nv, q);
    let mono_deg = |a: &[u16]| poly.monomial(a).degree() as i64;

    let mut gen_degs = Vec::with_capacity(alphas.len() * ngen);
    let mut labels = Vec::with_capacity(alphas.len() * ngen);
    for a in &alphas {
        for j in 0..ngen {
            let d = m.gen_degs()[j] + den as i64 * mono_deg(a);
            gen_degs.push(d);
            labels.push(GeneratorLabel {
                alpha: a.clone(),
                generator: j,
                degree: format_degree(d, new_den),
            });
        }
    }

    let m_min = m.minimalize();
    if ring.is_polynomial_ring() && m_min.nrels() == 0 && m_min.ngens() == ngen {
        let free = Module::new(ring, new_den, gen_degs, Vec::new(), Vec::new())?;
        return Ok(Pushforward {
            q,
            raw: free.clone(),
            raw_labels: labels.clone(),
            module: free,
            labels,
        });
    }

    // generators of U: relation columns, then f e_j for generators f of I
    let mut us: Vec<(Vec<Poly>, i64)> = m.rels().iter().cloned().zip(m.rel_degs().iter().copied()).collect();
    for j in 0..ngen {
        for f in ring.ideal().gens() {
            let mut col = vec![Poly::zero(); ngen];
            col[j] = f.clone();
            us.push((col, m.gen_degs()[j] + den as i64 * f.degree().unwrap_or(0) as i64));
        }
    }
    let mut rels = Vec::with_capacity(alphas.len() * us.len());
    let mut rel_degs = Vec::with_capacity(alphas.len() * us.len());
    for b in &alphas {
        let xb = poly.monomial(b);
        for (u, d) in &us {
            let shifted: Vec<Poly> = u.iter().map(|f| poly.mul_term(f, &xb, 1)).collect();
            rels.push(split_q(m, &shifted, q));
            rel_degs.push(d + den as i64 * mono_deg(b));
        }
    }
    let raw = Module::new(ring, new_den, gen_degs, rels, rel_degs)?;
    let (module, keep) = raw.minimalize_tracking();
    let kept_labels = keep.iter().map(|&k| labels[k].clone()).collect();
    Ok(Pushforward {
        q,
        raw,
        raw_labels: labels,
        module: module.normalize_den(),
        labels: kept_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::QuotientRing;
    use crate::ring::PolyRing;

    #[test]
    fn polynomial_ring_pushforward_is_free() {
        let p = PolyRing::standard(2, &["x"]).unwrap();
        let r = QuotientRing::polynomial(&p);
        let pf = frobenius_pushforward(&Module::free(&r, vec![0]), 1).unwrap();
        assert_eq!((pf.module.ngens(), pf.module.nrels()), (2, 0));
        assert_eq!(pf.module.gen_degs(), &[0, 1]);
        assert_eq!(pf.module.den(), 2);
    }

    #[test]
    fn double_line_pushforward() {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        let ra = QuotientRing::new(&p, vec![p.parse("x^2").unwrap()]).unwrap();
        let pf = frobenius_pushforward(&Module::free(&ra, vec![0]), 1).unwrap();
        assert_eq!(pf.module.ngens(), 4);
        for c in pf.module.rels() {
            assert_eq!(c.iter().filter(|f| !f.is_zero()).count(), 1);
        }
        assert_eq!(pf.module.nrels(), 4);
        // Hilbert function of ^φR at j/2 equals that of R at j
        let r = Module::free(&ra, vec![0]).hilbert_function(0, 10);
        assert_eq!(pf.module.hilbert_function(0, 10), r);
    }

    #[test]
    fn split_recombines() {
        let p = PolyRing::standard(3, &["x", "y"]).unwrap();
        let r = QuotientRing::polynomial(&p);
        let m = Module::free(&r, vec![0]);
        let f = p.parse("x^4*y + 2*x^3 + y^5").unwrap();
        let parts = split_q(&m, &[f.clone()], 3);
        let mut back = Poly::zero();
        for (a, alpha) in residue_exponents(2, 3).iter().enumerate() {
            let g = p.frobenius_power(&parts[a], 3);
            back = p.add(&back, &p.mul_term(&g, &p.monomial(alpha), 1));
        }
        assert_eq!(back, f);
    }
}
