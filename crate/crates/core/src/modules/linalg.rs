//! Kernels, minimal generating subsets and homology of graded maps.

use super::presentation::{ideal_multiples, Module};
use super::ring::QuotientRing;
use crate::groebner::{groebner, GbOptions, ModuleOrder, Vector};
use crate::poly::Poly;

/// Indices of a minimal generating subset of the columns, modulo
/// `I P^n` when `with_ideal` is set. Columns must be homogeneous for `ord`.
pub(crate) fn minimal_subset(
    ring: &QuotientRing,
    ord: &ModuleOrder,
    n: usize,
    cols: &[Vec<Poly>],
    with_ideal: bool,
) -> Vec<usize> {
    if cols.is_empty() {
        return Vec::new();
    }
    let mut inputs: Vec<Vector> = cols.iter().map(|c| Vector::from_column(c, ord)).collect();
    let mut ambient = vec![false; inputs.len()];
    if with_ideal {
        for v in ideal_multiples(ring, n, 0, ord) {
            inputs.push(v);
            ambient.push(true);
        }
    }
    let res = groebner(
        ring.poly().field(),
        ord,
        ring.poly().weights(),
        &inputs,
        &ambient,
        GbOptions {
            reduce_tails: false,
            product_criterion: false,
        },
    );
    res.essential
}

/// Degree of a nonzero homogeneous column relative to the generators of `m`.
pub(crate) fn column_degree(col: &[Poly], m: &Module) -> Option<i64> {
    col.iter()
        .enumerate()
        .find(|(_, f)| !f.is_zero())
        .map(|(i, f)| m.gen_degs()[i] + f.degree().unwrap() as i64 * m.den() as i64)
}

/// Minimal homogeneous generators of `{c in R^k : sum_j c_j b_j = 0 in target}`
/// where `b_j = images[j]` has degree `src_degs[j]`. Returns columns of
/// length `k` in normal form together with their degrees.
pub(crate) fn kernel(target: &Module, src_degs: &[i64], images: &[Vec<Poly>]) -> Vec<(Vec<Poly>, i64)> {
    let ring = target.ring();
    let n = target.ngens();
    let k = images.len();
    if k == 0 {
        return Vec::new();
    }
    let mut shifts = target.gen_degs().to_vec();
    shifts.extend_from_slice(src_degs);
    let scale = target.den() as i64;
    let ord = ModuleOrder::new(ring.poly().order(), shifts, scale).with_split(n);

    let mut inputs: Vec<Vector> = Vec::new();
    let mut ambient: Vec<bool> = Vec::new();
    if n > 0 {
        for v in target.relation_reducer().basis() {
            inputs.push(v.clone());
            ambient.push(true);
        }
    }
    for (j, img) in images.iter().enumerate() {
        let top = Vector::from_column(img, &ord);
        let tag = Vector::from_column_offset(&[Poly::constant(1)], (n + j) as u32, &ord);
        inputs.push(Vector::concat(vec![top, tag], &ord));
        ambient.push(false);
    }
    let res = groebner(
        ring.poly().field(),
        &ord,
        ring.poly().weights(),
        &inputs,
        &ambient,
        GbOptions {
            reduce_tails: false,
            product_criterion: false,
        },
    );
    let syz: Vec<Vec<Poly>> = res
        .basis
        .iter()
        .filter(|v| v.terms[0].comp as usize >= n)
        .map(|v| v.to_column(n as u32, k))
        .collect();
    if syz.is_empty() {
        return Vec::new();
    }
    let sub = ModuleOrder::new(ring.poly().order(), src_degs.to_vec(), scale);
    let ess = minimal_subset(ring, &sub, k, &syz, true);
    ess.into_iter()
        .map(|e| {
            let col: Vec<Poly> = syz[e].iter().map(|f| ring.nf(f)).collect();
            let v = Vector::from_column(&col, &sub);
            let d = v.degree(&sub).expect("minimal generator is nonzero");
            (col, d)
        })
        .collect()
}

/// Homology `ker(mid -> out) / im(in -> mid)` with representatives of its
/// minimal generators as columns over the generators of `mid`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: Module,
    pub reps: Vec<Vec<Poly>>,
}

/// `map_out[j]` is the image of generator `j` of `mid` in `out`; `map_in`
/// lists elements of `mid` spanning the incoming image.
pub(crate) fn homology(mid: &Module, out: &Module, map_out: &[Vec<Poly>], map_in: &[Vec<Poly>]) -> Homology {
    let ring = mid.ring();
    let kern: Vec<(Vec<Poly>, i64)> = if out.ngens() == 0 {
        (0..mid.ngens())
            .map(|j| {
                let mut e = vec![Poly::zero(); mid.ngens()];
                e[j] = Poly::constant(1);
                (e, mid.gen_degs()[j])
            })
            .collect()
    } else {
        kernel(out, mid.gen_degs(), map_out)
    };
    let extra: Vec<(Vec<Poly>, i64)> = map_in
        .iter()
        .filter_map(|c| column_degree(c, mid).map(|d| (c.clone(), d)))
        .collect();
    let target = mid.with_extra_rels(&extra);
    let mut gens: Vec<Vec<Poly>> = Vec::new();
    let mut degs: Vec<i64> = Vec::new();
    for (c, d) in kern {
        let r = target.normal_form(&c);
        if r.iter().any(|f| !f.is_zero()) {
            gens.push(r);
            degs.push(d);
        }
    }
    let rels = kernel(&target, &degs, &gens);
    let h = Module::raw(
        ring,
        mid.den(),
        degs,
        rels.iter().map(|(c, _)| c.clone()).collect(),
        rels.iter().map(|(_, d)| *d).collect(),
    );
    let (module, keep) = h.minimalize_tracking();
    let reps = keep.into_iter().map(|k| gens[k].clone()).collect();
    Homology { module, reps }
}

/// Whether `ker(mid -> out) ⊆ im(in -> mid)`, without presenting the quotient.
pub(crate) fn homology_vanishes(mid: &Module, out: &Module, map_out: &[Vec<Poly>], map_in: &[Vec<Poly>]) -> bool {
    if mid.ngens() == 0 {
        return true;
    }
    let kern: Vec<Vec<Poly>> = if out.ngens() == 0 {
        (0..mid.ngens())
            .map(|j| {
                let mut e = vec![Poly::zero(); mid.ngens()];
                e[j] = Poly::constant(1);
                e
            })
            .collect()
    } else {
        kernel(out, mid.gen_degs(), map_out)
            .into_iter()
            .map(|(c, _)| c)
            .collect()
    };
    let extra: Vec<(Vec<Poly>, i64)> = map_in
        .iter()
        .filter_map(|c| column_degree(c, mid).map(|d| (c.clone(), d)))
        .collect();
    let target = mid.with_extra_rels(&extra);
    kern.iter().all(|c| target.is_zero_element(c))
}
