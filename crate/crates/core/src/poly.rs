//! Sparse polynomials over F_p and their arithmetic.
//!
//! A [`Poly`] is a list of `(monomial, coefficient)` pairs sorted in
//! decreasing term order with no zero coefficients. It carries no ring
//! handle; arithmetic goes through the [`PolyRing`] that owns the
//! weights, the term order and the characteristic.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ring::PolyRing;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Poly {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: u32) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from terms already sorted and free of zeros.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, u32)>) -> Poly {
        Poly { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    /// Nonzero constant?
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

impl PolyRing {
    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, g, 1)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        let fp = self.field();
        self.add_scaled(f, g, fp.neg(1))
    }

    /// `f + c*g`.
    pub fn add_scaled(&self, f: &Poly, g: &Poly, c: u32) -> Poly {
        let fp = self.field();
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let (a, b) = (&f.terms, &g.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, fp.mul(c, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = fp.add(a[i].1, fp.mul(c, b[j].1));
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, v)| (m, fp.mul(c, v))));
        Poly::from_sorted(out)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        self.scale(f, self.field().neg(1))
    }

    pub fn scale(&self, f: &Poly, c: u32) -> Poly {
        let fp = self.field();
        let c = c % fp.characteristic();
        if c == 0 {
            return Poly::zero();
        }
        Poly::from_sorted(f.terms.iter().map(|&(m, v)| (m, fp.mul(v, c))).collect())
    }

    pub fn mul_term(&self, f: &Poly, m: &Monomial, c: u32) -> Poly {
        let fp = self.field();
        if c == 0 {
            return Poly::zero();
        }
        Poly::from_sorted(
            f.terms
                .iter()
                .map(|&(n, v)| (n.mul(m), fp.mul(v, c)))
                .collect(),
        )
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        if g.terms.len() == 1 {
            return self.mul_term(f, &g.terms[0].0, g.terms[0].1);
        }
        if f.terms.len() == 1 {
            return self.mul_term(g, &f.terms[0].0, f.terms[0].1);
        }
        let fp = self.field();
        let mut prods: Vec<(Monomial, u32)> = Vec::with_capacity(f.len() * g.len());
        for &(a, c) in &f.terms {
            for &(b, d) in &g.terms {
                prods.push((a.mul(&b), fp.mul(c, d)));
            }
        }
        prods.sort_by(|x, y| self.cmp(&y.0, &x.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(prods.len());
        for (m, c) in prods {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = fp.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly::from_sorted(out)
    }

    pub fn pow(&self, f: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::constant(1);
        let mut base = f.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Ring-checked product.
    pub fn try_mul(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    /// `f^(p^n)`, computed termwise: coefficients are fixed by Fermat and
    /// exponents scale by `p^n`.
    pub fn entry_power(&self, f: &Poly, n: u32) -> Poly {
        let q = self.characteristic().pow(n);
        self.frobenius_power(f, q)
    }

    /// `f^q` for `q` a power of the characteristic.
    pub fn frobenius_power(&self, f: &Poly, q: u32) -> Poly {
        if q == 1 {
            return f.clone();
        }
        Poly::from_sorted(f.terms.iter().map(|&(m, c)| (m.pow(q), c)).collect())
    }

    pub fn make_monic(&self, f: &Poly) -> Poly {
        match f.lead() {
            None => Poly::zero(),
            Some(&(_, c)) => {
                let inv = self.field().inv(c).expect("nonzero lead");
                self.scale(f, inv)
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly unsorted, repeated) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Poly {
        let fp = self.field();
        let mut v: Vec<(Monomial, u32)> = terms
            .into_iter()
            .map(|(m, c)| (m, fp.reduce(c)))
            .filter(|t| t.1 != 0)
            .collect();
        v.sort_by(|x, y| self.cmp(&y.0, &x.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = fp.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly::from_sorted(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, name) in self.names().iter().enumerate() {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Canonical text form, e.g. `x^2*y + 4*z`. Coefficients are residues in `[1, p)`.
    pub fn format(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if m.is_one() {
                let _ = write!(s, "{c}");
            } else if *c == 1 {
                s.push_str(&self.format_monomial(m));
            } else {
                let _ = write!(s, "{c}*{}", self.format_monomial(m));
            }
        }
        s
    }

    /// Parses `x^2*y - 3*z`-style text. Integer coefficients are reduced mod p.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut p = Parser {
            ring: self,
            src: text.as_bytes(),
            pos: 0,
        };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            col: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let r = self.ring;
        let mut acc = Poly::zero();
        let mut sign = 1u32;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = r.field().neg(1);
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = r.add_scaled(&acc, &t, sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = r.field().neg(1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.ring.characteristic() as u64;
                Ok(Poly::constant((v % p) as u32))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable `{name}`")))
                    }
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> PolyRing {
        PolyRing::standard(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn freshman_dream() {
        let r = ring(2);
        let f = r.parse("x+y").unwrap();
        assert_eq!(r.mul(&f, &f), r.parse("x^2+y^2").unwrap());
        let r3 = ring(3);
        let g = r3.parse("x+y").unwrap();
        assert_eq!(r3.pow(&g, 3), r3.parse("x^3+y^3").unwrap());
    }

    #[test]
    fn multiply_by_one() {
        let r = ring(5);
        let f = r.parse("3*x^2*y - y + 2").unwrap();
        assert_eq!(r.mul(&f, &Poly::constant(1)), f);
    }

    #[test]
    fn entry_power_examples() {
        let r = ring(2);
        let xy = r.parse("x*y").unwrap();
        assert_eq!(r.entry_power(&xy, 1), r.parse("x^2*y^2").unwrap());
        assert_eq!(r.entry_power(&xy, 0), xy);
        let r3 = ring(3);
        let f = r3.parse("x+2*y").unwrap();
        // repeated multiplication as the reference
        let cube = r3.mul(&r3.mul(&f, &f), &f);
        assert_eq!(r3.entry_power(&f, 1), cube);
        assert_eq!(cube, r3.parse("x^3+2*y^3").unwrap());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let r = PolyRing::new(7, &["x", "y", "z"], &[3, 4, 5]).unwrap();
        let f = r.parse("x^2*y - 3*z^2 + (x+y)^2 - x*(x - 1)").unwrap();
        let text = r.format(&f);
        assert_eq!(r.parse(&text).unwrap(), f);
        assert!(r.check(&f).is_ok());
        assert_eq!(r.format(&Poly::zero()), "0");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let r = ring(3);
        match r.parse("x + w") {
            Err(AlgebraError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(r.parse("x +").is_err());
        assert!(r.parse("(x").is_err());
    }

    #[test]
    fn ring_mismatch_detected() {
        let big = PolyRing::standard(3, &["x", "y", "z"]).unwrap();
        let small = ring(3);
        let z = big.var(2);
        assert!(matches!(
            small.try_mul(&z, &z),
            Err(AlgebraError::RingMismatch(_))
        ));
    }
}
