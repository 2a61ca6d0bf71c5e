//! Ideals of the ambient polynomial ring and their arithmetic.

use std::sync::{Arc, OnceLock};

use super::buchberger::{groebner, GbOptions, Reducer};
use super::hilbert::{monomial_numerator, HilbertSeries};
use super::vector::{ModuleOrder, Vector};
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::PolyRing;

pub const SATURATION_CAP: usize = 64;

/// An ideal of `P = F_p[x_1..x_m]` with a lazily computed reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Poly>,
    gb: OnceLock<Arc<Reducer>>,
}

pub(crate) fn rank_one_order(ring: &PolyRing) -> ModuleOrder {
    ModuleOrder::new(ring.order(), vec![0], 1)
}

pub(crate) fn poly_to_vector(f: &Poly) -> Vector {
    Vector {
        terms: f
            .terms()
            .iter()
            .map(|&(m, c)| super::vector::Term {
                mono: m,
                comp: 0,
                coeff: c,
            })
            .collect(),
    }
}

pub(crate) fn vector_to_poly(v: &Vector) -> Poly {
    Poly::from_sorted(v.terms.iter().map(|t| (t.mono, t.coeff)).collect())
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gb_polys() == other.gb_polys()
    }
}

impl Ideal {
    pub fn new(ring: &PolyRing, gens: Vec<Poly>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    /// Builds an ideal whose reduced basis is already known (e.g. from a cache).
    pub fn with_basis(ring: &PolyRing, gens: Vec<Poly>, basis: Vec<Poly>) -> Ideal {
        let id = Ideal::new(ring, gens);
        let red = Reducer::new(
            ring.field(),
            rank_one_order(ring),
            basis.iter().map(poly_to_vector).collect(),
        );
        let _ = id.gb.set(Arc::new(red));
        id
    }

    pub fn zero(ring: &PolyRing) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &PolyRing) -> Ideal {
        Ideal::new(ring, vec![Poly::constant(1)])
    }

    /// The homogeneous maximal ideal `(x_1, .., x_m)`.
    pub fn maximal(ring: &PolyRing) -> Ideal {
        Ideal::new(ring, ring.vars())
    }

    pub fn parse(ring: &PolyRing, gens: &[&str]) -> Result<Ideal> {
        let g = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, g))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub(crate) fn reducer(&self) -> &Reducer {
        self.gb.get_or_init(|| {
            let ord = rank_one_order(&self.ring);
            let inputs: Vec<Vector> = self.gens.iter().map(poly_to_vector).collect();
            let res = groebner(
                self.ring.field(),
                &ord,
                self.ring.weights(),
                &inputs,
                &[],
                GbOptions {
                    reduce_tails: true,
                    product_criterion: true,
                },
            );
            Arc::new(Reducer::new(self.ring.field(), ord, res.basis))
        })
    }

    /// Reduced Gröbner basis, monic, sorted by decreasing leading term.
    pub fn groebner_basis(&self) -> Vec<Poly> {
        self.gb_polys()
    }

    fn gb_polys(&self) -> Vec<Poly> {
        self.reducer().basis().iter().map(vector_to_poly).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reducer()
            .basis()
            .iter()
            .map(|v| v.terms[0].mono)
            .collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        if f.is_zero() || self.gens.is_empty() {
            return f.clone();
        }
        vector_to_poly(&self.reducer().reduce(poly_to_vector(f), true))
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.reducer()
            .basis()
            .iter()
            .any(|v| v.terms.len() == 1 && v.terms[0].mono.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
            || self.reducer().basis().iter().all(|v| v.terms.len() == 1)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(self.ring.mul(a, b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// Generators after interreduction; convenient for printing.
    pub fn minimal_gens(&self) -> Vec<Poly> {
        if self.is_homogeneous() {
            let ord = rank_one_order(&self.ring);
            let inputs: Vec<Vector> = self.gens.iter().map(poly_to_vector).collect();
            let res = groebner(
                self.ring.field(),
                &ord,
                self.ring.weights(),
                &inputs,
                &[],
                GbOptions {
                    reduce_tails: false,
                    product_criterion: true,
                },
            );
            res.essential.iter().map(|&k| self.gens[k].clone()).collect()
        } else {
            self.gb_polys()
        }
    }

    /// `{c : c*g in self}`.
    pub fn colon_element(&self, g: &Poly) -> Ideal {
        if g.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let shift = g.degree().unwrap_or(0) as i64;
        let ord = ModuleOrder::new(self.ring.order(), vec![0, shift], 1).with_split(1);
        let mut inputs = vec![Vector::concat(
            vec![poly_to_vector(g), shifted_vec(&Poly::constant(1), 1)],
            &ord,
        )];
        let mut amb = vec![false];
        for f in &self.gens {
            inputs.push(poly_to_vector(f));
            amb.push(true);
        }
        let res = groebner(
            self.ring.field(),
            &ord,
            self.ring.weights(),
            &inputs,
            &amb,
            GbOptions {
                reduce_tails: false,
                product_criterion: false,
            },
        );
        let gens = res
            .basis
            .iter()
            .filter(|v| v.in_lower_block(1))
            .map(|v| v.to_column(1, 1).remove(0))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ideal::zero(&self.ring);
        }
        let ord = ModuleOrder::new(self.ring.order(), vec![0, 0], 1).with_split(1);
        let mut inputs = Vec::new();
        for f in &self.gens {
            inputs.push(Vector::concat(vec![poly_to_vector(f), shifted_vec(f, 1)], &ord));
        }
        for g in &other.gens {
            inputs.push(poly_to_vector(g));
        }
        let res = groebner(
            self.ring.field(),
            &ord,
            self.ring.weights(),
            &inputs,
            &[],
            GbOptions {
                reduce_tails: false,
                product_criterion: false,
            },
        );
        let gens = res
            .basis
            .iter()
            .filter(|v| v.in_lower_block(1))
            .map(|v| v.to_column(1, 1).remove(0))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `self : other`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let c = self.colon_element(g);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c),
            });
        }
        let out = acc.unwrap_or_else(|| Ideal::unit(&self.ring));
        Ideal::new(&self.ring, out.groebner_basis())
    }

    /// `self : other^infinity`, iterating colons until stable.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = Ideal::new(&self.ring, self.groebner_basis());
        for _ in 0..SATURATION_CAP {
            let next = cur.colon(other);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(AlgebraError::SaturationDiverged(SATURATION_CAP))
    }

    /// Ideal generated by the `q`-th powers of the generators.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let p = self.ring.characteristic();
        if !is_power_of(q, p as u64) {
            return Err(AlgebraError::BadFrobeniusPower { q, p });
        }
        let g = self
            .gens
            .iter()
            .map(|f| self.ring.frobenius_power(f, q as u32))
            .collect();
        Ok(Ideal::new(&self.ring, g))
    }

    /// Hilbert series of `P / self`.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let lm = if self.gens.is_empty() {
            Vec::new()
        } else {
            self.leading_monomials()
        };
        HilbertSeries {
            numerator: monomial_numerator(&lm, self.ring.weights(), 1),
            weights: self.ring.weights().to_vec(),
            den: 1,
        }
    }

    /// Krull dimension of `P / self`; `None` when the quotient is zero.
    pub fn krull_dim(&self) -> Option<usize> {
        self.hilbert_series().pole_order()
    }

    /// `dim_k P/self` when finite.
    pub fn colength(&self) -> Option<u64> {
        if self.krull_dim() != Some(0) && !self.is_unit() {
            return None;
        }
        let lm = self.leading_monomials();
        // all standard monomials have total degree below the largest pure power
        let mut count = 0u64;
        let n = self.ring.nvars();
        let mut bound = vec![0u16; n];
        for v in 0..n {
            bound[v] = lm
                .iter()
                .filter(|m| m.exps()[v] > 0 && m.total_degree() == m.exps()[v] as u32)
                .map(|m| m.exps()[v])
                .min()?;
        }
        let mut e = vec![0u16; n];
        loop {
            let m = self.ring.monomial(&e);
            if !lm.iter().any(|g| g.divides(&m)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Some(count);
                }
                e[k] += 1;
                if e[k] < bound[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }

    pub fn format(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|f| self.ring.format(f)).collect();
        format!("({})", g.join(", "))
    }
}

fn shifted_vec(f: &Poly, comp: u32) -> Vector {
    let mut v = poly_to_vector(f);
    for t in &mut v.terms {
        t.comp = comp;
    }
    v
}

pub fn is_power_of(q: u64, p: u64) -> bool {
    if q == 0 {
        return false;
    }
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}
