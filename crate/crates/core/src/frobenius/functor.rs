//! The Frobenius functor `F^n(M) = M ⊗_R ^{φ^n}R` on presentations.

use crate::error::{AlgebraError, Result};
use crate::groebner::ideal::is_power_of;
use crate::modules::Module;

/// `p^n` for the ring's characteristic, checked against overflow.
pub fn frobenius_q(p: u32, n: u32) -> Result<u64> {
    (p as u64).checked_pow(n).ok_or_else(|| {
        AlgebraError::TooLarge(format!("{p}^{n} overflows"))
    })
}

/// Entrywise `q`-th power of the relation matrix with all degrees scaled by
/// `q`, before minimalization.
pub fn frobenius_functor_raw(m: &Module, n: u32) -> Result<Module> {
    let ring = m.ring();
    let q = frobenius_q(ring.characteristic(), n)?;
    debug_assert!(is_power_of(q, ring.characteristic() as u64));
    let poly = ring.poly();
    let top = m
        .rels()
        .iter()
        .flatten()
        .flat_map(|f| f.terms().iter().flat_map(|(mono, _)| mono.exps().iter().copied()))
        .max()
        .unwrap_or(0) as u64;
    if top.saturating_mul(q) > u16::MAX as u64 {
        return Err(AlgebraError::TooLarge(format!(
            "exponent {top} raised by q = {q} exceeds {}",
            u16::MAX
        )));
    }
    let qi = q as i64;
    let rels = m
        .rels()
        .iter()
        .map(|c| c.iter().map(|f| poly.frobenius_power(f, q as u32)).collect())
        .collect();
    Module::new(
        ring,
        m.den(),
        m.gen_degs().iter().map(|d| d * qi).collect(),
        rels,
        m.rel_degs().iter().map(|d| d * qi).collect(),
    )
}

/// `F^n(M)`, minimally presented.
pub fn frobenius_functor(m: &Module, n: u32) -> Result<Module> {
    Ok(frobenius_functor_raw(m, n)?.minimalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::QuotientRing;
    use crate::ring::PolyRing;

    #[test]
    fn node_cyclic_module_squares() {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        let rb = QuotientRing::new(&p, vec![p.parse("x*y").unwrap()]).unwrap();
        let m = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
        let f = frobenius_functor(&m, 1).unwrap();
        assert_eq!(f.rels(), &[vec![p.parse("x^2").unwrap()]]);
        let free = Module::free(&rb, vec![0]);
        let ff = frobenius_functor(&free, 2).unwrap();
        assert_eq!((ff.ngens(), ff.nrels()), (1, 0));
    }

    #[test]
    fn composition_of_functors() {
        let p = PolyRing::standard(3, &["x", "y"]).unwrap();
        let ra = QuotientRing::new(&p, vec![p.parse("x^2").unwrap()]).unwrap();
        let m = Module::from_rows(
            &ra,
            vec![0, 0],
            vec![vec![p.parse("y").unwrap()], vec![p.parse("x").unwrap()]],
        )
        .unwrap();
        let a = frobenius_functor(&frobenius_functor(&m, 1).unwrap(), 1).unwrap();
        let b = frobenius_functor(&m, 2).unwrap();
        assert_eq!(a.hilbert_function(0, 30), b.hilbert_function(0, 30));
    }
}
