//! Dense exponent vectors with a cached weighted degree.

use std::cmp::Ordering;

pub const MAX_VARS: usize = 8;

/// A monomial `x^a` in at most [`MAX_VARS`] variables.
///
/// The weighted degree is cached; it is only meaningful relative to the
/// weights of the ring that built the monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) exps: [u16; MAX_VARS],
    pub(crate) deg: u32,
}

/// Term orders. Both refine the weighted degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    #[default]
    WeightedGrevlex,
    WeightedLex,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn new(exps: &[u16], weights: &[u32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a as u32 * w)
            .sum();
        Monomial { exps: e, deg }
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Unweighted total degree.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        Monomial {
            exps: e,
            deg: self.deg + o.deg,
        }
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut e = o.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Monomial {
            exps: e,
            deg: o.deg - self.deg,
        }
    }

    pub fn lcm(&self, o: &Monomial, weights: &[u32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].max(o.exps[i]);
        }
        Monomial::new(&e[..weights.len()], weights)
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(o.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Raise every exponent by the factor `q`.
    pub fn pow(&self, q: u32) -> Monomial {
        let mut e = self.exps;
        for a in e.iter_mut() {
            *a = (*a as u32 * q) as u16;
        }
        Monomial {
            exps: e,
            deg: self.deg * q,
        }
    }

    pub fn cmp_with(&self, o: &Monomial, order: MonomialOrder) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match order {
            MonomialOrder::WeightedGrevlex => {
                for i in (0..MAX_VARS).rev() {
                    match self.exps[i].cmp(&o.exps[i]) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::WeightedLex => self.exps.cmp(&o.exps),
        }
    }
}
