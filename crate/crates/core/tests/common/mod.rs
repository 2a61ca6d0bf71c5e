//! Independent oracles: dense degreewise linear algebra over F_p and
//! semigroup combinatorics for the (3,4,5) monomial curve.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use frob_core::modules::{FreeResolution, Module, QuotientRing};
use frob_core::{Poly, PolyRing};

pub type Key = Vec<u16>;

/// Sparse polynomial as exponent vector -> coefficient, built without the
/// engine's arithmetic.
pub fn terms_of(ring: &PolyRing, f: &Poly) -> BTreeMap<Key, u64> {
    let n = ring.nvars();
    f.terms()
        .iter()
        .map(|(m, c)| (m.exps()[..n].to_vec(), *c as u64))
        .collect()
}

pub fn naive_mul(p: u64, a: &BTreeMap<Key, u64>, b: &BTreeMap<Key, u64>) -> BTreeMap<Key, u64> {
    let mut out: BTreeMap<Key, u64> = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Key = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let e = out.entry(k).or_insert(0);
            *e = (*e + ca * cb) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn weighted_degree(w: &[u32], k: &Key) -> i64 {
    k.iter().zip(w).map(|(&e, &w)| e as i64 * w as i64).sum()
}

/// Exponent vectors of weighted degree `d`, enumerated independently.
pub fn monomials(w: &[u32], d: i64) -> Vec<Key> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    fn rec(w: &[u32], v: usize, left: i64, cur: &mut Key, out: &mut Vec<Key>) {
        if v == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * w[v] as i64 <= left {
            cur.push(e);
            rec(w, v + 1, left - e as i64 * w[v] as i64, cur, out);
            cur.pop();
            e += 1;
        }
    }
    rec(w, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Rank over F_p by Gaussian elimination on dense rows.
pub fn rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// A graded presentation read off an engine module: generators in scaled
/// degrees, relation columns, and the ring's defining polynomials.
#[derive(Clone)]
pub struct Pres {
    pub ring: PolyRing,
    pub ideal: Vec<BTreeMap<Key, u64>>,
    pub den: i64,
    pub gen_degs: Vec<i64>,
    pub rels: Vec<(Vec<BTreeMap<Key, u64>>, i64)>,
}

impl Pres {
    pub fn of(m: &Module) -> Pres {
        let ring = m.ring().poly().clone();
        Pres {
            ideal: m.ring().ideal().gens().iter().map(|f| terms_of(&ring, f)).collect(),
            den: m.den() as i64,
            gen_degs: m.gen_degs().to_vec(),
            rels: m
                .rels()
                .iter()
                .zip(m.rel_degs())
                .map(|(c, &d)| (c.iter().map(|f| terms_of(&ring, f)).collect(), d))
                .collect(),
            ring,
        }
    }

    pub fn free(ring: &QuotientRing, den: i64, gen_degs: Vec<i64>) -> Pres {
        let poly = ring.poly().clone();
        Pres {
            ideal: ring.ideal().gens().iter().map(|f| terms_of(&poly, f)).collect(),
            den,
            gen_degs,
            rels: Vec::new(),
            ring: poly,
        }
    }

    fn p(&self) -> u64 {
        self.ring.characteristic() as u64
    }

    fn weights(&self) -> Vec<u32> {
        self.ring.weights().to_vec()
    }

    /// Coordinates `(generator, monomial)` of the free cover in degree `e`.
    pub fn coords(&self, e: i64) -> HashMap<(usize, Key), usize> {
        let w = self.weights();
        let mut out = HashMap::new();
        for (j, &g) in self.gen_degs.iter().enumerate() {
            let rem = e - g;
            if rem < 0 || rem % self.den != 0 {
                continue;
            }
            for k in monomials(&w, rem / self.den) {
                let n = out.len();
                out.insert((j, k), n);
            }
        }
        out
    }

    fn vector(&self, coords: &HashMap<(usize, Key), usize>, v: &[BTreeMap<Key, u64>]) -> Vec<u64> {
        let mut out = vec![0u64; coords.len()];
        for (j, f) in v.iter().enumerate() {
            for (k, c) in f {
                let idx = coords
                    .get(&(j, k.clone()))
                    .unwrap_or_else(|| panic!("term {k:?} of component {j} outside the degree"));
                out[*idx] = (out[*idx] + c) % self.p();
            }
        }
        out
    }

    fn unit(n: usize, j: usize, f: BTreeMap<Key, u64>) -> Vec<BTreeMap<Key, u64>> {
        let mut v = vec![BTreeMap::new(); n];
        v[j] = f;
        v
    }

    /// Spanning set of the relation subspace in degree `e`: monomial
    /// multiples of the relation columns and of `I` in every component.
    pub fn relations(&self, e: i64) -> Vec<Vec<u64>> {
        let coords = self.coords(e);
        let w = self.weights();
        let n = self.gen_degs.len();
        let mut rows = Vec::new();
        for (col, d) in &self.rels {
            let rem = e - d;
            if rem < 0 || rem % self.den != 0 {
                continue;
            }
            for k in monomials(&w, rem / self.den) {
                let mono: BTreeMap<Key, u64> = [(k, 1)].into_iter().collect();
                let v: Vec<_> = col.iter().map(|f| naive_mul(self.p(), &mono, f)).collect();
                rows.push(self.vector(&coords, &v));
            }
        }
        for (j, &g) in self.gen_degs.iter().enumerate() {
            for f in &self.ideal {
                let fd = weighted_degree(&w, f.keys().next().unwrap());
                let rem = e - g - fd * self.den;
                if rem < 0 || rem % self.den != 0 {
                    continue;
                }
                for k in monomials(&w, rem / self.den) {
                    let mono: BTreeMap<Key, u64> = [(k, 1)].into_iter().collect();
                    rows.push(self.vector(&coords, &Self::unit(n, j, naive_mul(self.p(), &mono, f))));
                }
            }
        }
        rows
    }

    pub fn dim(&self, e: i64) -> usize {
        self.coords(e).len() - rank(self.p(), &self.relations(e))
    }

    /// Whether the homogeneous element `v` of degree `e` is zero.
    pub fn is_zero(&self, v: &[Poly], e: i64) -> bool {
        let coords = self.coords(e);
        let vec = self.vector(&coords, &v.iter().map(|f| terms_of(&self.ring, f)).collect::<Vec<_>>());
        let rels = self.relations(e);
        let r = rank(self.p(), &rels);
        let mut with = rels;
        with.push(vec);
        rank(self.p(), &with) == r
    }

    /// Images of the coordinates of degree `e` under the map sending
    /// generator `s` to `images[s]`, as vectors in `target` at degree `e + shift`.
    fn map_rows(&self, e: i64, images: &[Vec<BTreeMap<Key, u64>>], target: &Pres, shift: i64) -> Vec<Vec<u64>> {
        let coords = self.coords(e);
        let tcoords = target.coords(e + shift);
        let mut keyed: Vec<(&(usize, Key), &usize)> = coords.iter().collect();
        keyed.sort_by_key(|(_, &i)| i);
        keyed
            .into_iter()
            .map(|((s, k), _)| {
                let mono: BTreeMap<Key, u64> = [(k.clone(), 1)].into_iter().collect();
                let v: Vec<_> = images[*s].iter().map(|f| naive_mul(self.p(), &mono, f)).collect();
                target.vector(&tcoords, &v)
            })
            .collect()
    }
}

pub fn columns(ring: &PolyRing, cols: &[Vec<Poly>]) -> Vec<Vec<BTreeMap<Key, u64>>> {
    cols.iter()
        .map(|c| c.iter().map(|f| terms_of(ring, f)).collect())
        .collect()
}

/// A homomorphism out of a presented module, given by generator images.
pub struct Map<'a> {
    pub target: &'a Pres,
    pub images: Vec<Vec<BTreeMap<Key, u64>>>,
    pub shift: i64,
}

/// `dim` in degree `e` of `ker(out) / im(into)` on the middle module, all
/// computed on lifts: `dim out^{-1}(W') - dim(im(into) + W)`.
pub fn homology_dim(mid: &Pres, out: Option<&Map>, into: Option<(&Pres, &Map)>, e: i64) -> usize {
    let p = mid.p();
    let v = mid.coords(e).len();
    let w = mid.relations(e);
    let preimage = match out {
        None => v,
        Some(m) => {
            let wt = m.target.relations(e + m.shift);
            let rw = rank(p, &wt);
            let mut rows = mid.map_rows(e, &m.images, m.target, m.shift);
            rows.extend(wt);
            v - (rank(p, &rows) - rw)
        }
    };
    let mut rows = w;
    if let Some((src, m)) = into {
        rows.extend(src.map_rows(e - m.shift, &m.images, mid, m.shift));
    }
    preimage - rank(p, &rows)
}

/// `Hom(⊕ R(-a_f), N)` as a presentation.
pub fn hom_free(fdegs: &[i64], n: &Pres) -> Pres {
    let m = n.gen_degs.len();
    let mut out = n.clone();
    out.gen_degs = fdegs.iter().flat_map(|&a| n.gen_degs.iter().map(move |&g| g - a)).collect();
    out.rels = Vec::new();
    for (f, &a) in fdegs.iter().enumerate() {
        for (c, d) in &n.rels {
            let mut col = vec![BTreeMap::new(); fdegs.len() * m];
            col[f * m..(f + 1) * m].clone_from_slice(c);
            out.rels.push((col, d - a));
        }
    }
    out
}

/// Generator images of `Hom(F_src, N) -> Hom(F_dst, N)` under
/// precomposition with `d : F_dst -> F_src`.
pub fn precompose(d: &[Vec<BTreeMap<Key, u64>>], src_rank: usize, m: usize) -> Vec<Vec<BTreeMap<Key, u64>>> {
    let mut out = Vec::new();
    for f in 0..src_rank {
        for j in 0..m {
            let mut v = vec![BTreeMap::new(); d.len() * m];
            for (g, col) in d.iter().enumerate() {
                v[g * m + j] = col[f].clone();
            }
            out.push(v);
        }
    }
    out
}

/// Checks that the resolution is exact and resolves `m` in degrees
/// `lo..=hi`; returns the first failing degree and position.
pub fn check_resolution(res: &FreeResolution, m: &Module, lo: i64, hi: i64) -> Result<(), String> {
    let ring = m.ring();
    let mp = Pres::of(&m.rescale(res.den()));
    let free: Vec<Pres> = (0..=res.cap())
        .map(|i| Pres::free(ring, res.den() as i64, res.degrees(i).to_vec()))
        .collect();
    let diffs: Vec<_> = (1..=res.cap()).map(|i| columns(ring.poly(), res.differential(i))).collect();
    for e in lo..=hi {
        let d1 = Map { target: &free[0], images: diffs[0].clone(), shift: 0 };
        let coker = homology_dim(&free[0], None, Some((&free[1], &d1)), e);
        if coker != mp.dim(e) {
            return Err(format!("coker d_1 has dim {coker} vs {} in degree {e}", mp.dim(e)));
        }
        for i in 1..res.cap() {
            let out = Map { target: &free[i - 1], images: diffs[i - 1].clone(), shift: 0 };
            let inn = Map { target: &free[i], images: diffs[i].clone(), shift: 0 };
            let h = homology_dim(&free[i], Some(&out), Some((&free[i + 1], &inn)), e);
            if h != 0 {
                return Err(format!("homology {h} at F_{i} in degree {e}"));
            }
        }
    }
    Ok(())
}

/// `dim Ext^i(M, N)_e` from a resolution of `M` (which the caller checks).
pub fn ext_dim(res: &FreeResolution, i: usize, n: &Pres, e: i64) -> usize {
    let poly = n.ring.clone();
    let m = n.gen_degs.len();
    let mid = hom_free(res.degrees(i), n);
    let outp = hom_free(res.degrees(i + 1), n);
    let out = Map {
        target: &outp,
        images: precompose(&columns(&poly, res.differential(i + 1)), res.betti(i), m),
        shift: 0,
    };
    if i == 0 {
        return homology_dim(&mid, Some(&out), None, e);
    }
    let inp = hom_free(res.degrees(i - 1), n);
    let inn = Map {
        target: &mid,
        images: precompose(&columns(&poly, res.differential(i)), res.betti(i - 1), m),
        shift: 0,
    };
    homology_dim(&mid, Some(&out), Some((&inp, &inn)), e)
}

/// Multiplication by `f^k` on `M` as a map `M_e -> M_{e + k deg f}`.
pub fn power_map<'a>(mp: &'a Pres, f: &Poly, deg: i64, k: u32) -> Map<'a> {
    let p = mp.p();
    let base = terms_of(&mp.ring, f);
    let mut pw: BTreeMap<Key, u64> = [(vec![0; mp.ring.nvars()], 1)].into_iter().collect();
    for _ in 0..k {
        pw = naive_mul(p, &pw, &base);
    }
    let n = mp.gen_degs.len();
    Map {
        target: mp,
        images: (0..n).map(|j| Pres::unit(n, j, pw.clone())).collect(),
        shift: deg * mp.den * k as i64,
    }
}

/// `dim ker(f^k : M_e -> M_{e + k deg f})`.
pub fn kernel_of_power(mp: &Pres, f: &Poly, deg: i64, k: u32, e: i64) -> usize {
    let m = power_map(mp, f, deg, k);
    homology_dim(mp, Some(&m), None, e)
}

/// A homogeneous parameter that is a nonzerodivisor on the ring.
pub fn parameter(label: &str, ring: &QuotientRing) -> (Poly, i64) {
    let (s, d) = match label {
        "double-line" => ("y", 1),
        "node" => ("x + y", 1),
        "curve-345" => ("x", 3),
        _ => panic!("no parameter for {label}"),
    };
    (ring.parse(s).unwrap(), d)
}

/// Depth of `M` over a one-dimensional ring: 0 iff the parameter `f` is a
/// zero divisor on `M`, witnessed in degrees `lo..=hi`.
pub fn depth_dim_one(mp: &Pres, f: &Poly, deg: i64, lo: i64, hi: i64) -> usize {
    if (lo..=hi).any(|e| kernel_of_power(mp, f, deg, 1, e) > 0) {
        0
    } else {
        1
    }
}

/// Torsion in degree `e` over a reduced one-dimensional ring: the kernel of
/// `f^k` with `k` large enough to push degree `e` past `top`.
pub fn torsion_dim(mp: &Pres, f: &Poly, deg: i64, e: i64, top: i64) -> usize {
    let step = deg * mp.den;
    let k = ((top - e) / step + 1).max(1) as u32;
    kernel_of_power(mp, f, deg, k, e)
}

// ---- semigroup oracles for S = <3,4,5> = N \ {1, 2} ----

pub fn in_s(a: i64) -> bool {
    a == 0 || a >= 3
}

/// `ℓ(R/m^{s+1})` for `R = k[S]`: elements of `S` that are sums of at most
/// `s` generators, i.e. `a <= 3s + 2`.
pub fn samuel_count(s: i64) -> i64 {
    (0..=3 * s + 2).filter(|&a| in_s(a) && order(a) <= s).count() as i64
}

/// Largest number of generators in {3,4,5} summing to `a`.
fn order(a: i64) -> i64 {
    let mut best = vec![i64::MIN; (a + 1) as usize];
    best[0] = 0;
    for x in 1..=a {
        for g in [3, 4, 5] {
            if x >= g && best[(x - g) as usize] != i64::MIN {
                best[x as usize] = best[x as usize].max(best[(x - g) as usize] + 1);
            }
        }
    }
    best[a as usize]
}

fn union_find(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let next = uf[y];
        uf[y] = r;
        y = next;
    }
    r
}

/// Hilbert function of `F^n(^{φ^n}R)` and of its torsion for `R = k[S]`,
/// `q = p^n`, in degrees `0..=top`.
///
/// `^{φ^n}R` splits by residue class `c mod q` into monomial modules with
/// exponent sets `G_c = {(s - c)/q : s ∈ S, s ≡ c}`. The Frobenius functor
/// turns `k[G_c]` into the span of pairs `(s, g)`, `s ∈ S`, `g` a minimal
/// generator of `G_c`, in degree `s + qg + c`, modulo
/// `(s + qa, g) ~ (s + qb, h)` whenever `a + g = b + h` with `a, b ∈ S`.
/// Each summand has rank one, so torsion in a degree is the number of
/// classes minus one (when nonempty).
pub fn frobenius_tensor_counts(q: i64, top: i64) -> (Vec<i64>, Vec<i64>) {
    let mut total = vec![0i64; (top + 1) as usize];
    let mut torsion = vec![0i64; (top + 1) as usize];
    let bound = top + 3 * q + 10;
    for c in 0..q {
        let g_c: Vec<i64> = (0..=bound).filter(|&s| in_s(s) && s % q == c).map(|s| (s - c) / q).collect();
        let member = |x: i64| g_c.binary_search(&x).is_ok();
        let mingens: Vec<i64> = g_c
            .iter()
            .copied()
            .filter(|&g| !(1..=g).any(|a| in_s(a) && member(g - a)))
            .collect();
        for d in 0..=top {
            let verts: Vec<(i64, i64)> = mingens
                .iter()
                .filter_map(|&g| {
                    let s = d - c - q * g;
                    (s >= 0 && in_s(s)).then_some((s, g))
                })
                .collect();
            if verts.is_empty() {
                continue;
            }
            let mut uf = union_find(verts.len());
            for i in 0..verts.len() {
                for j in 0..verts.len() {
                    let ((s1, g), (_, h)) = (verts[i], verts[j]);
                    let linked = (0..=s1 / q).any(|a| in_s(a) && in_s(s1 - q * a) && in_s(a + g - h));
                    if linked {
                        let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
                        uf[ri] = rj;
                    }
                }
            }
            let classes = (0..verts.len()).filter(|&i| find(&mut uf, i) == i).count() as i64;
            total[d as usize] += classes;
            torsion[d as usize] += classes - 1;
        }
    }
    (total, torsion)
}
