//! Seeded random graded modules.
//!
//! Distribution: the number of generators is uniform in `1..=max_gens`,
//! generator degrees are uniform in `0..=max_gen_degree`, and the number of
//! relations is uniform in `1..=ngens+1`. For each relation a column degree
//! `D` is drawn uniformly from `g_min+1 ..= g_min+max_entry_degree`; entry
//! `i` is a random form of degree `D - g_i` (every monomial gets a uniform
//! coefficient in `F_p`) when `1 <= D - g_i <= max_entry_degree`, and zero
//! otherwise. Entries are reduced modulo `I`; columns that vanish are
//! redrawn up to 32 times and then dropped.

use rand::Rng;

use super::presentation::Module;
use super::ring::QuotientRing;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug)]
pub struct RandomModuleParams {
    pub max_gens: usize,
    pub max_gen_degree: i64,
    pub max_entry_degree: i64,
}

impl Default for RandomModuleParams {
    fn default() -> Self {
        RandomModuleParams {
            max_gens: 3,
            max_gen_degree: 2,
            max_entry_degree: 6,
        }
    }
}

/// Uniformly random homogeneous form of degree `d` reduced modulo `I`.
pub fn random_form<R: Rng>(ring: &QuotientRing, d: u32, rng: &mut R) -> Poly {
    let poly = ring.poly();
    let p = ring.characteristic();
    let terms: Vec<_> = poly
        .monomials_of_degree(d)
        .into_iter()
        .map(|m| (m, rng.gen_range(0..p) as i64))
        .collect();
    ring.nf(&poly.from_terms(terms))
}

pub fn random_module<R: Rng>(ring: &QuotientRing, params: RandomModuleParams, rng: &mut R) -> Module {
    let n = rng.gen_range(1..=params.max_gens);
    let gen_degs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=params.max_gen_degree)).collect();
    let nrels = rng.gen_range(1..=n + 1);
    let gmin = *gen_degs.iter().min().unwrap();
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for _ in 0..nrels {
        for _attempt in 0..32 {
            let d = gmin + rng.gen_range(1..=params.max_entry_degree);
            let col: Vec<Poly> = gen_degs
                .iter()
                .map(|&g| {
                    let e = d - g;
                    if e >= 1 && e <= params.max_entry_degree {
                        random_form(ring, e as u32, rng)
                    } else {
                        Poly::zero()
                    }
                })
                .collect();
            if col.iter().any(|f| !f.is_zero()) {
                cols.push(col);
                degs.push(d);
                break;
            }
        }
    }
    Module::new(ring, 1, gen_degs, cols, degs).expect("random columns are homogeneous")
}
