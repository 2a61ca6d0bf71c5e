//! Torsion submodules over reduced rings.
//!
//! Over a reduced ring a finitely generated torsion-free module embeds in a
//! free module, so `T(M)` is the kernel of `M -> M**`. That kernel equals
//! the kernel of `M -> R^s`, `m -> (u_1(m), .., u_s(m))`, for generators
//! `u_l` of `M*`.

use super::homological::hom_with_reps;
use super::linalg::homology;
use super::presentation::Module;
use crate::error::{AlgebraError, Result};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct Torsion {
    /// Minimal presentation of `M` that the representatives refer to.
    pub ambient: Module,
    /// `T(M)`, minimally presented.
    pub torsion: Module,
    /// Generators of `T(M)` as columns over the generators of `ambient`.
    pub reps: Vec<Vec<Poly>>,
    /// `M / T(M)`, minimally presented.
    pub quotient: Module,
}

pub fn torsion_submodule(m: &Module) -> Result<Torsion> {
    let ring = m.ring();
    if !ring.is_reduced() {
        return Err(AlgebraError::UnsupportedNonReduced);
    }
    let mm = m.minimalize();
    let dual = hom_with_reps(&mm, &Module::free(ring, vec![0]))?;
    let s = dual.reps.len();
    let out = Module::raw(
        ring,
        mm.den(),
        dual.module.gen_degs().iter().map(|d| -d).collect(),
        Vec::new(),
        Vec::new(),
    );
    let map_out: Vec<Vec<Poly>> = (0..mm.ngens())
        .map(|i| (0..s).map(|l| dual.reps[l][i].clone()).collect())
        .collect();
    let h = homology(&mm, &out, &map_out, &[]);
    let extra: Vec<(Vec<Poly>, i64)> = h
        .reps
        .iter()
        .cloned()
        .zip(h.module.gen_degs().iter().copied())
        .collect();
    let quotient = mm.with_extra_rels(&extra).minimalize();
    Ok(Torsion {
        ambient: mm,
        torsion: h.module,
        reps: h.reps,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::QuotientRing;
    use crate::ring::PolyRing;

    #[test]
    fn node_examples() {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        let rb = QuotientRing::new(&p, vec![p.parse("x*y").unwrap()]).unwrap();
        let m = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
        assert!(torsion_submodule(&m).unwrap().torsion.is_zero());
        let m2 = Module::cyclic(&rb, &[rb.parse("x^2").unwrap()]).unwrap();
        let t = torsion_submodule(&m2).unwrap();
        // the class of x spans the torsion of R/(x^2)
        assert_eq!(t.torsion.hilbert_function(0, 3), vec![0, 1, 0, 0]);
        assert!(torsion_submodule(&t.quotient).unwrap().torsion.is_zero());
        let ra = QuotientRing::new(&p, vec![p.parse("x^2").unwrap()]).unwrap();
        assert_eq!(
            torsion_submodule(&Module::free(&ra, vec![0])).err(),
            Some(AlgebraError::UnsupportedNonReduced)
        );
    }
}
