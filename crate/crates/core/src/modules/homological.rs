//! Hom, Ext and depth through free resolutions of the first argument.

use super::linalg::{homology, homology_vanishes, Homology};
use super::presentation::{lcm, Module};
use super::resolution::FreeResolution;
use crate::error::{AlgebraError, Result};
use crate::poly::Poly;

/// Default resolution length `dim R + 4`.
pub fn default_cap(m: &Module) -> usize {
    m.ring().dim() + 4
}

/// `Hom(F, N)` for `F = ⊕ R(-a_f)`: generators `(f, j)` at index `f*|N| + j`
/// of degree `deg g_j - a_f`.
fn hom_free(fdegs: &[i64], n: &Module) -> Module {
    let m = n.ngens();
    let mut gen_degs = Vec::with_capacity(fdegs.len() * m);
    for &a in fdegs {
        for &g in n.gen_degs() {
            gen_degs.push(g - a);
        }
    }
    let mut rels = Vec::new();
    let mut rel_degs = Vec::new();
    for (f, &a) in fdegs.iter().enumerate() {
        for (c, &d) in n.rels().iter().zip(n.rel_degs()) {
            let mut col = vec![Poly::zero(); fdegs.len() * m];
            col[f * m..(f + 1) * m].clone_from_slice(c);
            rels.push(col);
            rel_degs.push(d - a);
        }
    }
    Module::raw(n.ring(), n.den(), gen_degs, rels, rel_degs)
}

/// Images of the generators of `Hom(F_src, N)` under precomposition with
/// `d : F_dst -> F_src`, given as columns over the basis of `F_src`.
fn precompose(d: &[Vec<Poly>], src_rank: usize, m: usize) -> Vec<Vec<Poly>> {
    let dst_rank = d.len();
    let mut out = Vec::with_capacity(src_rank * m);
    for f in 0..src_rank {
        for j in 0..m {
            let mut v = vec![Poly::zero(); dst_rank * m];
            for (g, col) in d.iter().enumerate() {
                v[g * m + j] = col[f].clone();
            }
            out.push(v);
        }
    }
    out
}

struct ExtComplex {
    mid: Module,
    out: Module,
    map_out: Vec<Vec<Poly>>,
    map_in: Vec<Vec<Poly>>,
}

fn ext_complex(res: &FreeResolution, i: usize, n: &Module) -> Result<ExtComplex> {
    if i >= res.cap() {
        return Err(AlgebraError::CapExceeded {
            requested: i,
            cap: res.cap(),
        });
    }
    if res.ring() != n.ring() {
        return Err(AlgebraError::RingMismatch("Ext over different rings".into()));
    }
    let den = lcm(res.den(), n.den());
    let res = if den == res.den() { res.clone() } else { res.rescale(den) };
    let n = if den == n.den() { n.clone() } else { n.rescale(den) };
    let m = n.ngens();
    let mid = hom_free(res.degrees(i), &n);
    let out = hom_free(res.degrees(i + 1), &n);
    let map_out = precompose(res.differential(i + 1), res.betti(i), m);
    let map_in = if i == 0 {
        Vec::new()
    } else {
        precompose(res.differential(i), res.betti(i - 1), m)
    };
    Ok(ExtComplex {
        mid,
        out,
        map_out,
        map_in,
    })
}

/// `Ext^i(M, N)` from a resolution of `M`; representatives are columns over
/// the generators of `Hom(F_i, N)`.
pub fn ext_from_resolution(res: &FreeResolution, i: usize, n: &Module) -> Result<Homology> {
    let c = ext_complex(res, i, n)?;
    Ok(homology(&c.mid, &c.out, &c.map_out, &c.map_in))
}

pub fn ext_vanishes(res: &FreeResolution, i: usize, n: &Module) -> Result<bool> {
    let c = ext_complex(res, i, n)?;
    Ok(homology_vanishes(&c.mid, &c.out, &c.map_out, &c.map_in))
}

/// `Ext^i_R(M, N)` with the default resolution cap.
pub fn ext(i: usize, m: &Module, n: &Module) -> Result<Module> {
    ext_with_cap(i, m, n, default_cap(m))
}

pub fn ext_with_cap(i: usize, m: &Module, n: &Module, cap: usize) -> Result<Module> {
    if i >= cap {
        return Err(AlgebraError::CapExceeded { requested: i, cap });
    }
    let res = FreeResolution::new(m, i + 1);
    Ok(ext_from_resolution(&res, i, n)?.module)
}

/// `Hom_R(M, N)` with representatives over `Hom(F_0, N)`.
pub fn hom_with_reps(m: &Module, n: &Module) -> Result<Homology> {
    let res = FreeResolution::new(m, 1);
    ext_from_resolution(&res, 0, n)
}

pub fn hom(m: &Module, n: &Module) -> Result<Module> {
    Ok(hom_with_reps(m, n)?.module)
}

/// `M* = Hom_R(M, R)`.
pub fn dual(m: &Module) -> Result<Module> {
    hom(m, &Module::free(m.ring(), vec![0]))
}

/// `min { i : Ext^i(k, M) != 0 }`.
pub fn depth(m: &Module) -> Result<usize> {
    if m.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    let res = m.ring().residue_resolution();
    let top = m.ring().dim() + 1;
    for i in 0..=top {
        if !ext_vanishes(&res, i, m)? {
            return Ok(i);
        }
    }
    Err(AlgebraError::InternalInconsistency(format!(
        "Ext^i(k, M) vanished for all i <= {top}"
    )))
}

/// Maximal Cohen-Macaulay: `depth M = dim R`.
pub fn is_mcm(m: &Module) -> Result<bool> {
    Ok(depth(m)? == m.ring().dim())
}
