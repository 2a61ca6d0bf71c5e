//! Buchberger's algorithm for submodules of `P^n` with the normal selection
//! strategy and Gebauer–Möller pair elimination.
//!
//! Inputs are fed lazily in order of leading degree, interleaved with the
//! S-pairs of the same degree. For homogeneous input this makes the basis a
//! degree-`d` truncated Gröbner basis at the moment every degree-`d` input is
//! examined, so an input that reduces to zero there is redundant and the
//! surviving inputs form a minimal generating set.

use std::collections::BTreeSet;

use super::vector::{merge_add, ModuleOrder, Term, Vector};
use crate::field::PrimeField;
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Tail-reduce the final basis.
    pub reduce_tails: bool,
    /// Buchberger's coprime criterion. Only sound for ideals (rank one, no
    /// tracking components).
    pub product_criterion: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            reduce_tails: true,
            product_criterion: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GbResult {
    /// Minimal (and, with `reduce_tails`, reduced) monic basis sorted by
    /// decreasing leading term.
    pub basis: Vec<Vector>,
    /// Indices of non-ambient inputs that were not redundant when examined.
    pub essential: Vec<usize>,
}

/// Division by a fixed list of monic vectors.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub(crate) fp: PrimeField,
    pub(crate) ord: ModuleOrder,
    pub(crate) basis: Vec<Vector>,
    by_comp: Vec<Vec<usize>>,
}

impl Reducer {
    pub fn new(fp: PrimeField, ord: ModuleOrder, basis: Vec<Vector>) -> Self {
        let mut r = Reducer {
            fp,
            by_comp: vec![Vec::new(); ord.rank()],
            ord,
            basis: Vec::new(),
        };
        for b in basis {
            if !b.is_zero() {
                r.push(b.make_monic(&fp));
            }
        }
        r
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.ord
    }

    fn push(&mut self, v: Vector) -> usize {
        let idx = self.basis.len();
        let c = v.terms[0].comp as usize;
        self.by_comp[c].push(idx);
        self.basis.push(v);
        idx
    }

    #[inline]
    fn find_divisor(&self, t: &Term, skip: Option<usize>, active: Option<&[bool]>) -> Option<usize> {
        for &b in &self.by_comp[t.comp as usize] {
            if Some(b) == skip {
                continue;
            }
            if let Some(a) = active {
                if !a[b] {
                    continue;
                }
            }
            if self.basis[b].terms[0].mono.divides(&t.mono) {
                return Some(b);
            }
        }
        None
    }

    /// Normal form of `v`. With `full == false` only the leading term is
    /// made irreducible.
    pub fn reduce(&self, v: Vector, full: bool) -> Vector {
        self.reduce_with(v, full, None, None)
    }

    pub(crate) fn reduce_with(
        &self,
        v: Vector,
        full: bool,
        skip: Option<usize>,
        active: Option<&[bool]>,
    ) -> Vector {
        let mut cur = v.terms;
        let mut pos = 0;
        let mut done: Vec<Term> = Vec::new();
        while pos < cur.len() {
            let t = cur[pos];
            match self.find_divisor(&t, skip, active) {
                Some(b) => {
                    let g = &self.basis[b].terms;
                    let q = g[0].mono.quotient_of(&t.mono);
                    let c = self.fp.neg(t.coeff);
                    cur = merge_add(&cur[pos + 1..], &g[1..], c, &q, &self.fp, &self.ord);
                    pos = 0;
                }
                None => {
                    if !full {
                        cur.drain(..pos);
                        return Vector { terms: cur };
                    }
                    done.push(t);
                    pos += 1;
                }
            }
        }
        Vector { terms: done }
    }
}

struct Engine {
    red: Reducer,
    opts: GbOptions,
    active: Vec<bool>,
    pairs: BTreeSet<(i64, usize, usize)>,
    weights: Vec<u32>,
}

impl Engine {
    fn lt(&self, i: usize) -> (Monomial, u32) {
        let t = &self.red.basis[i].terms[0];
        (t.mono, t.comp)
    }

    fn spoly(&self, i: usize, j: usize) -> Vector {
        let (mi, _) = self.lt(i);
        let (mj, _) = self.lt(j);
        let l = mi.lcm(&mj, &self.weights);
        let fi = &self.red.basis[i].terms;
        let fj = &self.red.basis[j].terms;
        let qi = mi.quotient_of(&l);
        let qj = mj.quotient_of(&l);
        let a: Vec<Term> = fi[1..]
            .iter()
            .map(|t| Term {
                mono: t.mono.mul(&qi),
                ..*t
            })
            .collect();
        Vector {
            terms: merge_add(&a, &fj[1..], self.red.fp.neg(1), &qj, &self.red.fp, &self.red.ord),
        }
    }

    fn insert(&mut self, h: Vector) {
        let h = h.make_monic(&self.red.fp);
        let idx = self.red.push(h);
        self.active.push(true);
        let (mh, ch) = self.lt(idx);
        let pc = self.opts.product_criterion;

        let cands: Vec<(usize, Monomial, bool)> = self.red.by_comp[ch as usize]
            .iter()
            .copied()
            .filter(|&g| g != idx && self.active[g])
            .map(|g| {
                let (mg, _) = self.lt(g);
                (g, mh.lcm(&mg, &self.weights), pc && mh.coprime(&mg))
            })
            .collect();

        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for k in 0..cands.len() {
            let (_, l1, cop) = cands[k];
            let dominated = cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(&l1))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l1));
            if cop || !dominated {
                kept.push(cands[k]);
            }
        }

        let weights = &self.weights;
        let red = &self.red;
        self.pairs.retain(|&(_, i, j)| {
            let (mi, ci) = (red.basis[i].terms[0].mono, red.basis[i].terms[0].comp);
            if ci != ch {
                return true;
            }
            let mj = red.basis[j].terms[0].mono;
            let lij = mi.lcm(&mj, weights);
            !(mh.divides(&lij) && mi.lcm(&mh, weights) != lij && mj.lcm(&mh, weights) != lij)
        });

        for (g, l, cop) in kept {
            if cop {
                continue;
            }
            let d = self.red.ord.degree(&l, ch);
            self.pairs.insert((d, g.min(idx), g.max(idx)));
        }

        for &g in &self.red.by_comp[ch as usize] {
            if g != idx && self.active[g] && mh.divides(&self.red.basis[g].terms[0].mono) {
                self.active[g] = false;
            }
        }
    }
}

/// Computes a Gröbner basis of the submodule generated by `inputs`.
///
/// `ambient[i]` marks inputs that belong to a fixed ambient submodule; those
/// are examined first within each degree and never reported as essential.
pub fn groebner(
    fp: PrimeField,
    ord: &ModuleOrder,
    weights: &[u32],
    inputs: &[Vector],
    ambient: &[bool],
    opts: GbOptions,
) -> GbResult {
    let mut eng = Engine {
        red: Reducer::new(fp, ord.clone(), Vec::new()),
        opts,
        active: Vec::new(),
        pairs: BTreeSet::new(),
        weights: weights.to_vec(),
    };
    let mut queue: Vec<(i64, bool, usize)> = inputs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (v.degree(ord).unwrap(), !ambient.get(k).copied().unwrap_or(false), k))
        .collect();
    queue.sort();
    let mut essential = Vec::new();
    let mut next = 0;
    loop {
        let pd = eng.pairs.first().map(|p| p.0);
        let id = queue.get(next).map(|q| q.0);
        let take_pair = match (pd, id) {
            (None, None) => break,
            (Some(d), Some(e)) => d <= e,
            (Some(_), None) => true,
            (None, Some(_)) => false,
        };
        if take_pair {
            let (_, i, j) = eng.pairs.pop_first().unwrap();
            let s = eng.spoly(i, j);
            let r = eng.red.reduce(s, false);
            if !r.is_zero() {
                eng.insert(r);
            }
        } else {
            let (_, is_gen, k) = queue[next];
            next += 1;
            let r = eng.red.reduce(inputs[k].clone(), false);
            if !r.is_zero() {
                if is_gen {
                    essential.push(k);
                }
                eng.insert(r);
            }
        }
    }

    let keep: Vec<usize> = (0..eng.red.basis.len()).filter(|&i| eng.active[i]).collect();
    let mut basis: Vec<Vector> = if opts.reduce_tails {
        keep.iter()
            .map(|&i| {
                let v = eng.red.basis[i].clone();
                let lead = v.terms[0];
                let tail = Vector {
                    terms: v.terms[1..].to_vec(),
                };
                let mut t = eng.red.reduce_with(tail, true, Some(i), Some(&eng.active)).terms;
                t.insert(0, lead);
                Vector { terms: t }
            })
            .collect()
    } else {
        keep.iter().map(|&i| eng.red.basis[i].clone()).collect()
    };
    basis.sort_by(|a, b| ord.cmp_terms(&b.terms[0], &a.terms[0]));
    essential.sort_unstable();
    GbResult { basis, essential }
}
