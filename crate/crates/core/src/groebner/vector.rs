//! Elements of free modules `P^n` as sparse term lists, and the module
//! term orders used by the Gröbner engine.

use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: u32,
}

/// Terms sorted in decreasing order for some [`ModuleOrder`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    pub terms: Vec<Term>,
}

/// Degree-compatible module order.
///
/// Terms compare by block (components below `split` dominate), then by
/// shifted degree `scale * deg(x^a) + shifts[i]`, then by the monomial
/// order, then by component index (lower index is larger).
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    pub order: MonomialOrder,
    pub shifts: Vec<i64>,
    pub scale: i64,
    pub split: usize,
}

impl ModuleOrder {
    pub fn new(order: MonomialOrder, shifts: Vec<i64>, scale: i64) -> Self {
        ModuleOrder {
            order,
            shifts,
            scale,
            split: usize::MAX,
        }
    }

    /// Order with an elimination block: every component `>= split` is smaller
    /// than every component `< split`.
    pub fn with_split(mut self, split: usize) -> Self {
        self.split = split;
        self
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn degree(&self, mono: &Monomial, comp: u32) -> i64 {
        mono.degree() as i64 * self.scale + self.shifts[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, ac: u32, b: &Monomial, bc: u32) -> Ordering {
        let ba = ac as usize >= self.split;
        let bb = bc as usize >= self.split;
        if ba != bb {
            return if ba { Ordering::Less } else { Ordering::Greater };
        }
        match self.degree(a, ac).cmp(&self.degree(b, bc)) {
            Ordering::Equal => {}
            o => return o,
        }
        match a.cmp_with(b, self.order) {
            Ordering::Equal => bc.cmp(&ac),
            o => o,
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mono, a.comp, &b.mono, b.comp)
    }
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Builds a vector from per-component polynomials.
    pub fn from_column(col: &[Poly], ord: &ModuleOrder) -> Vector {
        Self::from_column_offset(col, 0, ord)
    }

    pub fn from_column_offset(col: &[Poly], offset: u32, ord: &ModuleOrder) -> Vector {
        let mut terms: Vec<Term> = Vec::new();
        for (i, f) in col.iter().enumerate() {
            for &(m, c) in f.terms() {
                terms.push(Term {
                    mono: m,
                    comp: offset + i as u32,
                    coeff: c,
                });
            }
        }
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        Vector { terms }
    }

    /// Concatenates terms of vectors living in disjoint component ranges.
    pub fn concat(mut parts: Vec<Vector>, ord: &ModuleOrder) -> Vector {
        let mut terms: Vec<Term> = parts.iter_mut().flat_map(|p| p.terms.drain(..)).collect();
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        Vector { terms }
    }

    /// Splits back into `n` polynomials, taking components `offset..offset+n`.
    /// Terms outside that range are dropped.
    pub fn to_column(&self, offset: u32, n: usize) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); n];
        for t in &self.terms {
            if t.comp >= offset && ((t.comp - offset) as usize) < n {
                parts[(t.comp - offset) as usize].push((t.mono, t.coeff));
            }
        }
        // within a component the module order restricts to the ring order
        parts.into_iter().map(Poly::from_sorted).collect()
    }

    /// Whether every term lies in a component `>= split`.
    pub fn in_lower_block(&self, split: usize) -> bool {
        self.terms.iter().all(|t| t.comp as usize >= split)
    }

    pub fn scale(&self, fp: &PrimeField, c: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: fp.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn make_monic(&self, fp: &PrimeField) -> Vector {
        match self.lead() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => self.scale(fp, fp.inv(t.coeff).expect("nonzero lead")),
        }
    }

    /// Shifted degree of the leading term.
    pub fn degree(&self, ord: &ModuleOrder) -> Option<i64> {
        self.lead().map(|t| ord.degree(&t.mono, t.comp))
    }
}

/// `a + c * x^m * g`, all in decreasing order.
pub(crate) fn merge_add(
    a: &[Term],
    g: &[Term],
    c: u32,
    m: &Monomial,
    fp: &PrimeField,
    ord: &ModuleOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |t: &Term| Term {
        mono: t.mono.mul(m),
        comp: t.comp,
        coeff: fp.mul(t.coeff, c),
    };
    let mut gj = g.first().map(shifted);
    while i < a.len() {
        let Some(t) = gj else { break };
        match ord.cmp_terms(&a[i], &t) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(t);
                j += 1;
                gj = g.get(j).map(shifted);
            }
            Ordering::Equal => {
                let s = fp.add(a[i].coeff, t.coeff);
                if s != 0 {
                    out.push(Term { coeff: s, ..a[i] });
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(shifted);
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(t) = gj {
        out.push(t);
        out.extend(g[j + 1..].iter().map(shifted));
    }
    out
}
