//! Weighted polynomial rings `F_p[x_1..x_m]`.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Poly;

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingData {
    pub p: u32,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

/// Descriptor of the ambient polynomial ring. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing(Arc<RingData>);

impl PolyRing {
    pub fn new(p: u64, names: &[&str], weights: &[u32]) -> Result<Self> {
        Self::with_order(p, names, weights, MonomialOrder::default())
    }

    pub fn with_order(
        p: u64,
        names: &[&str],
        weights: &[u32],
        order: MonomialOrder,
    ) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if names.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len()));
        }
        if weights.len() != names.len() {
            return Err(AlgebraError::Shape(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(AlgebraError::NonPositiveWeight);
        }
        Ok(PolyRing(Arc::new(RingData {
            p: field.characteristic(),
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
            order,
        })))
    }

    /// Standard-graded ring.
    pub fn standard(p: u64, names: &[&str]) -> Result<Self> {
        let w = vec![1; names.len()];
        Self::new(p, names, &w)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.0.p as u64).expect("checked at construction")
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn data(&self) -> &RingData {
        &self.0
    }

    /// Stable content hash of the descriptor.
    pub fn descriptor_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.0.p.to_le_bytes());
        for (n, w) in self.0.names.iter().zip(&self.0.weights) {
            h.update(n.as_bytes());
            h.update([0u8]);
            h.update(w.to_le_bytes());
        }
        h.update([self.0.order as u8]);
        hex::encode(h.finalize())
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, self.weights())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut e = vec![0u16; self.nvars()];
        e[i] = 1;
        Poly::monomial(self.monomial(&e), 1)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.cmp_with(b, self.0.order)
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.lcm(b, self.weights())
    }

    /// All monomials of the given weighted degree, in decreasing term order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let w = self.weights().to_vec();
        let mut out = Vec::new();
        let mut exps = vec![0u16; n];
        fn rec(i: usize, left: u32, w: &[u32], exps: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if i == w.len() {
                if left == 0 {
                    out.push(exps.clone());
                }
                return;
            }
            let mut e = 0u32;
            while e * w[i] <= left {
                exps[i] = e as u16;
                rec(i + 1, left - e * w[i], w, exps, out);
                e += 1;
            }
            exps[i] = 0;
        }
        if n == 0 {
            return if d == 0 { vec![Monomial::ONE] } else { vec![] };
        }
        rec(0, d, &w, &mut exps, &mut out);
        let mut monos: Vec<Monomial> = out.iter().map(|e| self.monomial(e)).collect();
        monos.sort_by(|a, b| self.cmp(b, a));
        monos
    }

    /// Number of monomials of each weighted degree `0..=max` under the given weights.
    pub fn monomial_counts(weights: &[u32], max: usize) -> Vec<i64> {
        let mut c = vec![0i64; max + 1];
        c[0] = 1;
        for &w in weights {
            let w = w as usize;
            for d in w..=max {
                c[d] += c[d - w];
            }
        }
        c
    }

    /// Checks that `f` uses only variables of this ring with consistent degrees.
    pub fn check(&self, f: &Poly) -> Result<()> {
        let n = self.nvars();
        for (m, c) in f.terms() {
            if m.exps()[n..].iter().any(|&e| e != 0) {
                return Err(AlgebraError::RingMismatch(
                    "exponent in a variable outside the ring".into(),
                ));
            }
            if *m != self.monomial(&m.exps()[..n]) {
                return Err(AlgebraError::RingMismatch("weighted degree mismatch".into()));
            }
            if *c == 0 || *c >= self.0.p {
                return Err(AlgebraError::RingMismatch("coefficient out of range".into()));
            }
        }
        let sorted = f
            .terms()
            .windows(2)
            .all(|w| self.cmp(&w[0].0, &w[1].0) == Ordering::Greater);
        if !sorted {
            return Err(AlgebraError::RingMismatch("terms not in this ring's order".into()));
        }
        Ok(())
    }
}
