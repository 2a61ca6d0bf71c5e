//! Graded modules over `R = P/I` given as cokernels of matrices.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::linalg::minimal_subset;
use super::ring::QuotientRing;
use crate::error::{AlgebraError, Result};
use crate::groebner::{
    groebner, hilbert::monomial_numerator, GbOptions, HilbertSeries, ModuleOrder, Reducer, Vector,
};
use crate::poly::Poly;

/// `coker(R^r -> R^n)` with graded generators.
///
/// Degrees are stored as integers in units of `1/den`. Relation columns are
/// lists of `n` polynomials kept in normal form modulo `I`; column `l` is
/// homogeneous of degree `rel_degs[l]`.
#[derive(Clone)]
pub struct Module {
    ring: QuotientRing,
    den: u32,
    gen_degs: Vec<i64>,
    rels: Vec<Vec<Poly>>,
    rel_degs: Vec<i64>,
    gb: OnceLock<Arc<Reducer>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Serializable view of a presentation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PresentationData {
    pub ring: String,
    pub degree_denominator: u32,
    pub generator_degrees: Vec<String>,
    /// Row-major relation matrix, `generators x relations`.
    pub relations: Vec<Vec<String>>,
}

pub fn format_degree(d: i64, den: u32) -> String {
    if den == 1 {
        return d.to_string();
    }
    let g = gcd(d.unsigned_abs(), den as u64) as i64;
    let (a, b) = (d / g, den as i64 / g);
    if b == 1 {
        a.to_string()
    } else {
        format!("{a}/{b}")
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

impl Module {
    /// Checks shapes and homogeneity and normalizes entries modulo `I`.
    pub fn new(
        ring: &QuotientRing,
        den: u32,
        gen_degs: Vec<i64>,
        rels: Vec<Vec<Poly>>,
        rel_degs: Vec<i64>,
    ) -> Result<Module> {
        if den == 0 {
            return Err(AlgebraError::Shape("degree denominator must be positive".into()));
        }
        if rels.len() != rel_degs.len() {
            return Err(AlgebraError::Shape(format!(
                "{} relations but {} relation degrees",
                rels.len(),
                rel_degs.len()
            )));
        }
        let n = gen_degs.len();
        let mut cols = Vec::with_capacity(rels.len());
        let mut degs = Vec::with_capacity(rels.len());
        for (col, d) in rels.into_iter().zip(rel_degs) {
            if col.len() != n {
                return Err(AlgebraError::Shape(format!(
                    "relation column has {} entries, expected {n}",
                    col.len()
                )));
            }
            let col: Vec<Poly> = col
                .iter()
                .map(|f| -> Result<Poly> {
                    ring.poly().check(f)?;
                    Ok(ring.nf(f))
                })
                .collect::<Result<_>>()?;
            for (i, f) in col.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let ok = f.is_homogeneous()
                    && f.degree().unwrap() as i64 * den as i64 == d - gen_degs[i];
                if !ok {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "relation entry {} in row {i} does not have degree {}",
                        ring.format(f),
                        format_degree(d - gen_degs[i], den)
                    )));
                }
            }
            if col.iter().any(|f| !f.is_zero()) {
                cols.push(col);
                degs.push(d);
            }
        }
        Ok(Module::raw(ring, den, gen_degs, cols, degs))
    }

    /// Trusted constructor: entries are already reduced and homogeneous.
    pub(crate) fn raw(
        ring: &QuotientRing,
        den: u32,
        gen_degs: Vec<i64>,
        rels: Vec<Vec<Poly>>,
        rel_degs: Vec<i64>,
    ) -> Module {
        Module {
            ring: ring.clone(),
            den,
            gen_degs,
            rels,
            rel_degs,
            gb: OnceLock::new(),
        }
    }

    /// Cokernel of a row-major matrix with integer generator degrees;
    /// relation degrees are inferred from the entries.
    pub fn from_rows(ring: &QuotientRing, gen_degs: Vec<i64>, rows: Vec<Vec<Poly>>) -> Result<Module> {
        if rows.len() != gen_degs.len() {
            return Err(AlgebraError::Shape(format!(
                "{} rows but {} generator degrees",
                rows.len(),
                gen_degs.len()
            )));
        }
        let r = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != r) {
            return Err(AlgebraError::Shape("ragged relation matrix".into()));
        }
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for l in 0..r {
            let col: Vec<Poly> = rows.iter().map(|row| ring.nf(&row[l])).collect();
            let d = col
                .iter()
                .enumerate()
                .find(|(_, f)| !f.is_zero())
                .map(|(i, f)| gen_degs[i] + f.degree().unwrap_or(0) as i64);
            if let Some(d) = d {
                cols.push(col);
                degs.push(d);
            }
        }
        Module::new(ring, 1, gen_degs, cols, degs)
    }

    /// Free module `⊕ R(-d_i)`.
    pub fn free(ring: &QuotientRing, degs: Vec<i64>) -> Module {
        Module::raw(ring, 1, degs, Vec::new(), Vec::new())
    }

    /// `R/(f_1, .., f_k)` generated in degree 0.
    pub fn cyclic(ring: &QuotientRing, gens: &[Poly]) -> Result<Module> {
        Module::from_rows(ring, vec![0], vec![gens.to_vec()])
    }

    /// `k = R/m`.
    pub fn residue_field(ring: &QuotientRing) -> Module {
        Module::cyclic(ring, &ring.poly().vars()).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn gen_degs(&self) -> &[i64] {
        &self.gen_degs
    }

    pub fn rels(&self) -> &[Vec<Poly>] {
        &self.rels
    }

    pub fn rel_degs(&self) -> &[i64] {
        &self.rel_degs
    }

    pub fn ngens(&self) -> usize {
        self.gen_degs.len()
    }

    pub fn nrels(&self) -> usize {
        self.rels.len()
    }

    /// Relation matrix as rows.
    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.ngens())
            .map(|i| self.rels.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    /// Same module with degrees measured in units of `1/den`, where `den`
    /// is a multiple of the current denominator.
    pub fn rescale(&self, den: u32) -> Module {
        assert!(den % self.den == 0, "denominator {den} is not a multiple of {}", self.den);
        let f = (den / self.den) as i64;
        Module::raw(
            &self.ring,
            den,
            self.gen_degs.iter().map(|d| d * f).collect(),
            self.rels.clone(),
            self.rel_degs.iter().map(|d| d * f).collect(),
        )
    }

    /// Brings degrees to the smallest possible denominator.
    pub fn normalize_den(&self) -> Module {
        let mut g = self.den as u64;
        for &d in self.gen_degs.iter().chain(&self.rel_degs) {
            g = gcd(g, d.unsigned_abs());
        }
        if g <= 1 {
            return self.clone();
        }
        let g = g as i64;
        Module::raw(
            &self.ring,
            (self.den as i64 / g) as u32,
            self.gen_degs.iter().map(|d| d / g).collect(),
            self.rels.clone(),
            self.rel_degs.iter().map(|d| d / g).collect(),
        )
    }

    /// `M(s)`: generator degrees decrease by `s` (scaled units).
    pub fn twist(&self, s: i64) -> Module {
        Module::raw(
            &self.ring,
            self.den,
            self.gen_degs.iter().map(|d| d - s).collect(),
            self.rels.clone(),
            self.rel_degs.iter().map(|d| d - s).collect(),
        )
    }

    /// Adds relation columns of known degree.
    pub(crate) fn with_extra_rels(&self, extra: &[(Vec<Poly>, i64)]) -> Module {
        let mut rels = self.rels.clone();
        let mut degs = self.rel_degs.clone();
        for (c, d) in extra {
            if c.iter().any(|f| !f.is_zero()) {
                rels.push(c.iter().map(|f| self.ring.nf(f)).collect());
                degs.push(*d);
            }
        }
        Module::raw(&self.ring, self.den, self.gen_degs.clone(), rels, degs)
    }

    pub fn direct_sum(parts: &[Module]) -> Result<Module> {
        let ring = parts
            .first()
            .ok_or_else(|| AlgebraError::Shape("empty direct sum".into()))?
            .ring
            .clone();
        let den = parts.iter().fold(1, |a, m| lcm(a, m.den));
        let n: usize = parts.iter().map(|m| m.ngens()).sum();
        let mut gen_degs = Vec::with_capacity(n);
        let mut rels = Vec::new();
        let mut rel_degs = Vec::new();
        let mut off = 0;
        for m in parts {
            if m.ring != ring {
                return Err(AlgebraError::RingMismatch("direct sum over different rings".into()));
            }
            let m = m.rescale(den);
            gen_degs.extend_from_slice(&m.gen_degs);
            for (c, d) in m.rels.iter().zip(&m.rel_degs) {
                let mut col = vec![Poly::zero(); n];
                col[off..off + m.ngens()].clone_from_slice(c);
                rels.push(col);
                rel_degs.push(*d);
            }
            off += m.ngens();
        }
        Ok(Module::raw(&ring, den, gen_degs, rels, rel_degs))
    }

    pub(crate) fn module_order(&self) -> ModuleOrder {
        ModuleOrder::new(self.ring.poly().order(), self.gen_degs.clone(), self.den as i64)
    }

    /// Gröbner basis of `im(A) + I P^n` inside `P^n`.
    pub(crate) fn relation_reducer(&self) -> &Reducer {
        self.gb.get_or_init(|| {
            let ord = self.module_order();
            let (inputs, ambient) = self.relation_inputs(&ord);
            let res = groebner(
                self.ring.poly().field(),
                &ord,
                self.ring.poly().weights(),
                &inputs,
                &ambient,
                GbOptions::default(),
            );
            Arc::new(Reducer::new(self.ring.poly().field(), ord, res.basis))
        })
    }

    /// Relation columns followed by `f e_i` for `f` in the basis of `I`.
    fn relation_inputs(&self, ord: &ModuleOrder) -> (Vec<Vector>, Vec<bool>) {
        let mut inputs: Vec<Vector> = self.rels.iter().map(|c| Vector::from_column(c, ord)).collect();
        let mut ambient = vec![false; inputs.len()];
        for v in ideal_multiples(&self.ring, self.ngens(), 0, ord) {
            inputs.push(v);
            ambient.push(true);
        }
        (inputs, ambient)
    }

    /// Normal form of an element of `P^n` modulo the relations.
    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        let ord = self.module_order();
        let r = self.relation_reducer().reduce(Vector::from_column(v, &ord), true);
        r.to_column(0, self.ngens())
    }

    pub fn is_zero_element(&self, v: &[Poly]) -> bool {
        let ord = self.module_order();
        self.relation_reducer()
            .reduce(Vector::from_column(v, &ord), false)
            .is_zero()
    }

    /// Hilbert series in units of `1/den`.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let red = self.relation_reducer();
        let n = self.ngens();
        let mut lead: Vec<Vec<crate::monomial::Monomial>> = vec![Vec::new(); n];
        for v in red.basis() {
            let t = v.terms[0];
            lead[t.comp as usize].push(t.mono);
        }
        let weights = self.ring.poly().weights();
        let mut hs = HilbertSeries {
            numerator: Default::default(),
            weights: weights.iter().map(|w| w * self.den).collect(),
            den: self.den,
        };
        for (i, l) in lead.iter().enumerate() {
            let num = monomial_numerator(l, weights, self.den as i64);
            for (e, c) in num {
                *hs.numerator.entry(e + self.gen_degs[i]).or_insert(0) += c;
            }
        }
        hs.numerator.retain(|_, c| *c != 0);
        hs
    }

    /// `dim_k M_j` for scaled degrees `lo..=hi`.
    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Vec<i64> {
        self.hilbert_series().values(lo, hi)
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    /// Krull dimension of the module.
    pub fn dim(&self) -> Result<usize> {
        self.hilbert_series().pole_order().ok_or(AlgebraError::ZeroModule)
    }

    /// Every relation entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.rels.iter().all(|c| c.iter().all(|f| f.constant_term() == 0))
    }

    /// Whether the module is free; decided on a minimal presentation.
    pub fn is_free(&self) -> bool {
        self.minimalize().nrels() == 0
    }

    /// Minimal presentation.
    pub fn minimalize(&self) -> Module {
        self.minimalize_tracking().0
    }

    /// Minimal presentation together with the indices of the original
    /// generators that survive. The surviving generators of the input
    /// generate the module minimally.
    pub fn minimalize_tracking(&self) -> (Module, Vec<usize>) {
        let ring = &self.ring;
        let fp = ring.poly().field();
        let mut keep: Vec<usize> = (0..self.ngens()).collect();
        let mut degs = self.gen_degs.clone();
        let mut cols: Vec<Vec<Poly>> = self.rels.clone();
        let mut cdegs = self.rel_degs.clone();
        let poly = ring.poly();
        loop {
            let mut pivot = None;
            'search: for (l, c) in cols.iter().enumerate() {
                for (i, f) in c.iter().enumerate() {
                    if !f.is_zero() && f.is_unit() {
                        pivot = Some((l, i));
                        break 'search;
                    }
                }
            }
            let Some((l, i)) = pivot else { break };
            let pc = cols.swap_remove(l);
            cdegs.swap_remove(l);
            let inv = fp.inv(pc[i].constant_term()).expect("unit entry");
            for c in cols.iter_mut() {
                if c[i].is_zero() {
                    continue;
                }
                let factor = poly.scale(&c[i], fp.neg(inv));
                for (k, e) in c.iter_mut().enumerate() {
                    if k != i && !pc[k].is_zero() {
                        *e = ring.nf(&poly.add(e, &poly.mul(&factor, &pc[k])));
                    }
                }
                c[i] = Poly::zero();
            }
            for c in cols.iter_mut() {
                c.remove(i);
            }
            degs.remove(i);
            keep.remove(i);
            let mut k = 0;
            while k < cols.len() {
                if cols[k].iter().all(|f| f.is_zero()) {
                    cols.swap_remove(k);
                    cdegs.swap_remove(k);
                } else {
                    k += 1;
                }
            }
        }
        // restore a deterministic column order
        let mut idx: Vec<usize> = (0..cols.len()).collect();
        idx.sort_by_key(|&k| cdegs[k]);
        let cols: Vec<Vec<Poly>> = idx.iter().map(|&k| cols[k].clone()).collect();
        let cdegs: Vec<i64> = idx.iter().map(|&k| cdegs[k]).collect();
        let m = Module::raw(ring, self.den, degs, cols, cdegs);
        let ess = minimal_subset(ring, &m.module_order(), m.ngens(), &m.rels, true);
        let out = Module::raw(
            ring,
            self.den,
            m.gen_degs.clone(),
            ess.iter().map(|&k| m.rels[k].clone()).collect(),
            ess.iter().map(|&k| m.rel_degs[k]).collect(),
        );
        (out, keep)
    }

    /// `coker(A^T)` of a minimal presentation `A`.
    pub fn transpose(&self) -> Module {
        let m = self.minimalize();
        let n = m.ngens();
        let rels: Vec<Vec<Poly>> = (0..n)
            .map(|i| m.rels.iter().map(|c| c[i].clone()).collect())
            .collect();
        let rel_degs: Vec<i64> = m.gen_degs.iter().map(|d| -d).collect();
        let gen_degs: Vec<i64> = m.rel_degs.iter().map(|d| -d).collect();
        let cols: Vec<(Vec<Poly>, i64)> = rels.into_iter().zip(rel_degs).collect();
        Module::raw(&self.ring, m.den, gen_degs, Vec::new(), Vec::new()).with_extra_rels(&cols)
    }

    /// `M ⊗_R N` presented on generator pairs.
    pub fn tensor(&self, other: &Module) -> Result<Module> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch("tensor over different rings".into()));
        }
        let den = lcm(self.den, other.den);
        let a = self.rescale(den);
        let b = other.rescale(den);
        let (n, m) = (a.ngens(), b.ngens());
        let mut gen_degs = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                gen_degs.push(a.gen_degs[i] + b.gen_degs[j]);
            }
        }
        let mut rels = Vec::new();
        let mut rel_degs = Vec::new();
        for (c, d) in a.rels.iter().zip(&a.rel_degs) {
            for j in 0..m {
                let mut col = vec![Poly::zero(); n * m];
                for i in 0..n {
                    col[i * m + j] = c[i].clone();
                }
                rels.push(col);
                rel_degs.push(d + b.gen_degs[j]);
            }
        }
        for i in 0..n {
            for (c, d) in b.rels.iter().zip(&b.rel_degs) {
                let mut col = vec![Poly::zero(); n * m];
                for j in 0..m {
                    col[i * m + j] = c[j].clone();
                }
                rels.push(col);
                rel_degs.push(a.gen_degs[i] + d);
            }
        }
        Ok(Module::raw(&self.ring, den, gen_degs, rels, rel_degs))
    }

    pub fn to_data(&self) -> PresentationData {
        PresentationData {
            ring: self.ring.describe(),
            degree_denominator: self.den,
            generator_degrees: self.gen_degs.iter().map(|&d| format_degree(d, self.den)).collect(),
            relations: self
                .rows()
                .iter()
                .map(|row| row.iter().map(|f| self.ring.format(f)).collect())
                .collect(),
        }
    }

    pub fn format(&self) -> String {
        let degs: Vec<String> = self.gen_degs.iter().map(|&d| format_degree(d, self.den)).collect();
        let mut s = format!("coker over {} on degrees [{}]", self.ring.describe(), degs.join(", "));
        for row in self.rows() {
            let r: Vec<String> = row.iter().map(|f| self.ring.format(f)).collect();
            s.push_str(&format!("\n  [{}]", r.join(", ")));
        }
        s
    }
}

/// `f e_i` for `f` in the reduced basis of `I` and components
/// `offset..offset+n`.
pub(crate) fn ideal_multiples(ring: &QuotientRing, n: usize, offset: u32, ord: &ModuleOrder) -> Vec<Vector> {
    let gb = if ring.is_polynomial_ring() {
        Vec::new()
    } else {
        ring.ideal().groebner_basis()
    };
    let mut out = Vec::with_capacity(gb.len() * n);
    for i in 0..n {
        for f in &gb {
            let mut col = vec![Poly::zero(); i + 1];
            col[i] = f.clone();
            out.push(Vector::from_column_offset(&col, offset, ord));
        }
    }
    out
}
