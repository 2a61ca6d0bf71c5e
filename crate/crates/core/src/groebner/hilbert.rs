//! Hilbert series of graded quotients by monomial ideals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;
use crate::ring::PolyRing;

/// `numerator(t) / prod_i (1 - t^{weights[i]})`.
///
/// Exponents are measured in units of `1/den` of a ring degree; the stored
/// weights are already scaled by `den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: BTreeMap<i64, i64>,
    pub weights: Vec<u32>,
    pub den: u32,
}

impl HilbertSeries {
    pub fn is_zero(&self) -> bool {
        self.numerator.values().all(|&c| c == 0)
    }

    /// Order of the pole at `t = 1`, i.e. the Krull dimension. `None` for the
    /// zero series.
    pub fn pole_order(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let low = *self.numerator.keys().next().unwrap();
        let high = *self.numerator.keys().last().unwrap();
        let mut c: Vec<i128> = vec![0; (high - low + 1) as usize];
        for (&e, &v) in &self.numerator {
            c[(e - low) as usize] = v as i128;
        }
        // multiplicity of the root t = 1 by repeated synthetic division
        let mut mult = 0usize;
        loop {
            let s: i128 = c.iter().sum();
            if s != 0 || c.len() <= 1 {
                break;
            }
            let n = c.len() - 1;
            let mut q = vec![0i128; n];
            let mut acc = 0i128;
            for k in (1..=n).rev() {
                acc += c[k];
                q[k - 1] = acc;
            }
            c = q;
            mult += 1;
        }
        Some(self.weights.len() - mult.min(self.weights.len()))
    }

    /// Leading coefficient `c` of the growth `sum_{deg <= X} dim = c X^d / d! + ..`
    /// with `X` measured in ring degrees, as a reduced fraction. Zero when
    /// the pole order is below `d`.
    pub fn normalized_leading(&self, d: usize) -> (i128, i128) {
        let m = self.weights.len();
        match self.pole_order() {
            None => return (0, 1),
            Some(k) if k < d => return (0, 1),
            Some(k) if k > d => panic!("pole order {k} exceeds {d}"),
            _ => {}
        }
        let low = *self.numerator.keys().next().unwrap();
        let high = *self.numerator.keys().last().unwrap();
        let mut c: Vec<i128> = vec![0; (high - low + 1) as usize];
        for (&e, &v) in &self.numerator {
            c[(e - low) as usize] = v as i128;
        }
        // Q(t) = (1-t)^{m-d} Q~(t); divide by (t-1) and track the sign
        for _ in 0..(m - d) {
            let n = c.len() - 1;
            let mut q = vec![0i128; n.max(1)];
            let mut acc = 0i128;
            for k in (1..=n).rev() {
                acc += c[k];
                q[k - 1] = acc;
            }
            c = q;
        }
        let mut num: i128 = c.iter().sum();
        if (m - d) % 2 == 1 {
            num = -num;
        }
        // weights are scaled by den: divide by prod w_i and by den^{m-d}
        let mut den: i128 = self.weights.iter().map(|&w| w as i128).product();
        num *= (self.den as i128).pow(m as u32);
        den *= (self.den as i128).pow((m - d) as u32);
        let g = gcd_i128(num.abs(), den.abs()).max(1);
        (num / g, den / g)
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        self.numerator
            .iter()
            .find(|(_, &c)| c != 0)
            .map(|(&e, _)| e)
    }

    /// Hilbert function values for degrees `lo..=hi` (scaled units).
    pub fn values(&self, lo: i64, hi: i64) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        let nlow = self.lowest_degree().unwrap_or(0);
        let span = (hi - nlow.min(lo)).max(0) as usize;
        let counts = PolyRing::monomial_counts(&self.weights, span);
        (lo..=hi)
            .map(|j| {
                self.numerator
                    .iter()
                    .filter(|(&e, _)| e <= j)
                    .map(|(&e, &c)| c * counts[(j - e) as usize])
                    .sum()
            })
            .collect()
    }

    pub fn value(&self, j: i64) -> i64 {
        self.values(j, j)[0]
    }

    pub fn add(&mut self, other: &HilbertSeries, shift: i64) {
        for (&e, &c) in &other.numerator {
            *self.numerator.entry(e + shift).or_insert(0) += c;
        }
        self.numerator.retain(|_, c| *c != 0);
    }

    /// Numerator as readable text, e.g. `1 + t^2 - t^5`.
    pub fn numerator_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (&e, &c)) in self.numerator.iter().filter(|(_, &c)| c != 0).enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let a = c.abs();
            match e {
                0 => s.push_str(&a.to_string()),
                _ => {
                    if a != 1 {
                        s.push_str(&format!("{a}*"));
                    }
                    if e == 1 {
                        s.push('t');
                    } else {
                        s.push_str(&format!("t^{e}"));
                    }
                }
            }
        }
        s
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd_i128(b, a % b)
    }
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens.iter() {
        if !out.iter().any(|o| o.divides(g)) {
            out.push(*g);
        }
    }
    *gens = out;
}

/// Numerator of the Hilbert series of `P / (gens)` with degrees multiplied by
/// `scale`, via the pivot recursion
/// `HS(P/J) = HS(P/(J + x)) + t^{deg x} HS(P/(J : x))`.
pub fn monomial_numerator(gens: &[Monomial], weights: &[u32], scale: i64) -> BTreeMap<i64, i64> {
    let mut g = gens.to_vec();
    minimalize(&mut g);
    let mut out = BTreeMap::new();
    numerator_rec(g, weights, scale, 0, 1, &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn numerator_rec(
    gens: Vec<Monomial>,
    weights: &[u32],
    scale: i64,
    shift: i64,
    sign: i64,
    out: &mut BTreeMap<i64, i64>,
) {
    if gens.iter().any(|m| m.is_one()) {
        return;
    }
    let support = |m: &Monomial| m.exps().iter().filter(|&&e| e > 0).count();
    if gens.iter().all(|m| support(m) <= 1) {
        // pure powers in distinct variables: product of (1 - t^deg)
        let mut poly: BTreeMap<i64, i64> = BTreeMap::new();
        poly.insert(0, 1);
        for m in &gens {
            let d = m.degree() as i64 * scale;
            let mut next = poly.clone();
            for (&e, &c) in &poly {
                *next.entry(e + d).or_insert(0) -= c;
            }
            poly = next;
        }
        for (e, c) in poly {
            *out.entry(e + shift).or_insert(0) += sign * c;
        }
        return;
    }
    // pivot on the variable occurring in the most mixed generators
    let nv = weights.len();
    let mut best = (0usize, 0usize);
    for v in 0..nv {
        let cnt = gens
            .iter()
            .filter(|m| support(m) > 1 && m.exps()[v] > 0)
            .count();
        if cnt > best.1 {
            best = (v, cnt);
        }
    }
    let v = best.0;
    let mut e = [0u16; crate::monomial::MAX_VARS];
    e[v] = 1;
    let x = Monomial::new(&e[..nv], weights);

    let mut plus = gens.clone();
    plus.push(x);
    minimalize(&mut plus);
    numerator_rec(plus, weights, scale, shift, sign, out);

    let mut colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            if m.exps()[v] > 0 {
                x.quotient_of(m)
            } else {
                *m
            }
        })
        .collect();
    minimalize(&mut colon);
    numerator_rec(colon, weights, scale, shift + weights[v] as i64 * scale, sign, out);
}
