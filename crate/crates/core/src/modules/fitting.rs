//! Fitting ideals, the non-free locus and ranks at minimal primes.

use std::collections::HashMap;

use serde::Serialize;

use super::presentation::Module;
use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::poly::Poly;
use crate::ring::PolyRing;

/// Largest number of minors computed for one Fitting ideal.
pub const MINOR_CAP: u64 = 20_000;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant by Laplace expansion along rows, memoized on the set of
/// used columns.
fn determinant(poly: &PolyRing, a: &[Vec<&Poly>]) -> Poly {
    let k = a.len();
    let mut memo: HashMap<u32, Poly> = HashMap::new();
    fn rec(poly: &PolyRing, a: &[Vec<&Poly>], mask: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        let row = mask.count_ones() as usize;
        if row == a.len() {
            return Poly::constant(1);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = Poly::zero();
        let mut free_before = 0;
        for c in 0..a.len() {
            if mask & (1 << c) != 0 {
                continue;
            }
            let e = a[row][c];
            if !e.is_zero() {
                let sub = rec(poly, a, mask | (1 << c), memo);
                if !sub.is_zero() {
                    let t = poly.mul(e, &sub);
                    acc = if free_before % 2 == 0 {
                        poly.add(&acc, &t)
                    } else {
                        poly.sub(&acc, &t)
                    };
                }
            }
            free_before += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    if k == 0 {
        return Poly::constant(1);
    }
    rec(poly, a, 0, &mut memo)
}

/// All `k x k` minors of a row-major matrix, reduced by `nf`.
fn minors(poly: &PolyRing, rows: &[Vec<Poly>], k: usize, nf: impl Fn(&Poly) -> Poly) -> Result<Vec<Poly>> {
    let n = rows.len();
    let r = rows.first().map_or(0, |x| x.len());
    let count = binomial(n, k).saturating_mul(binomial(r, k));
    if count > MINOR_CAP {
        return Err(AlgebraError::TooLarge(format!("{count} minors of size {k}")));
    }
    let mut out = Vec::new();
    for rs in subsets(n, k) {
        for cs in subsets(r, k) {
            let a: Vec<Vec<&Poly>> = rs.iter().map(|&i| cs.iter().map(|&j| &rows[i][j]).collect()).collect();
            let d = nf(&determinant(poly, &a));
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// `Fitt_j(M)` as an ideal of the ambient ring containing `I`.
pub fn fitting_ideal(m: &Module, j: usize) -> Result<Ideal> {
    let m = m.minimalize();
    let ring = m.ring();
    let poly = ring.poly();
    let n = m.ngens();
    let mut gens: Vec<Poly> = ring.ideal().gens().to_vec();
    if j >= n {
        return Ok(Ideal::unit(poly));
    }
    let k = n - j;
    if k <= m.nrels() {
        gens.extend(minors(poly, &m.rows(), k, |f| ring.nf(f))?);
    }
    Ok(Ideal::new(poly, gens))
}

/// `Ann_R(J) = I : J`.
fn annihilator(m: &Module, j: &Ideal) -> Ideal {
    let ring = m.ring();
    if ring.ideal().contains_ideal(j) {
        return Ideal::unit(ring.poly());
    }
    ring.ideal().colon(j)
}

/// `J(M) = sum_r Fitt_r(M) Ann(Fitt_{r-1}(M))`; `M_p` is free exactly when
/// `J(M)` is not contained in `p`.
pub fn non_free_locus(m: &Module) -> Result<Ideal> {
    let m = m.minimalize();
    let ring = m.ring();
    let n = m.ngens();
    let fitts: Vec<Ideal> = (0..=n).map(|r| fitting_ideal(&m, r)).collect::<Result<_>>()?;
    let mut j = fitts[0].clone();
    for r in 1..=n {
        let ann = annihilator(&m, &fitts[r - 1]);
        j = j.sum(&fitts[r].product(&ann));
    }
    Ok(Ideal::new(ring.poly(), j.groebner_basis()))
}

fn not_contained(a: &Ideal, p: &Ideal) -> bool {
    a.gens().iter().any(|g| !p.contains(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "rank")]
pub enum LocalRank {
    Free(usize),
    NotFree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRank {
    pub prime: String,
    pub rank: LocalRank,
    /// `fitting` or `hilbert` (rank of `M/pM` over the domain `R/p`).
    pub method: &'static str,
    /// Smallest `r` with `Fitt_r` not inside the prime, when computed.
    pub first_nonvanishing_fitting: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalRanks {
    pub ranks: Vec<PrimeRank>,
    pub has_constant_rank: bool,
}

impl LocalRanks {
    pub fn all_free(&self) -> bool {
        self.ranks.iter().all(|r| matches!(r.rank, LocalRank::Free(_)))
    }
}

/// Rank of `M_p` for each minimal prime `p`.
///
/// With `r` the least index such that `Fitt_r` is not inside `p`, `M_p` is
/// free (of rank `r`) exactly when `Ann(Fitt_{r-1})` is not inside `p`.
/// When the minors are too many and the ring is reduced, the rank is read
/// off the Hilbert polynomial of `M/pM` over the domain `R/p`.
pub fn local_rank_at_min_primes(m: &Module) -> Result<LocalRanks> {
    let ring = m.ring();
    if ring.minimal_primes().is_empty() {
        return Err(AlgebraError::MinimalPrimesUnknown);
    }
    let m = m.minimalize();
    let n = m.ngens();
    let fitts: Result<Vec<Ideal>> = (0..=n).map(|r| fitting_ideal(&m, r)).collect();
    let mut ranks = Vec::new();
    match fitts {
        Ok(fitts) => {
            for p in ring.minimal_primes() {
                let r = (0..=n).find(|&r| not_contained(&fitts[r], p)).expect("Fitt_n is the unit ideal");
                let free = r == 0 || not_contained(&annihilator(&m, &fitts[r - 1]), p);
                ranks.push(PrimeRank {
                    prime: p.format(),
                    rank: if free { LocalRank::Free(r) } else { LocalRank::NotFree },
                    method: "fitting",
                    first_nonvanishing_fitting: Some(r),
                });
            }
        }
        Err(AlgebraError::TooLarge(_)) if ring.is_reduced() => {
            for p in ring.minimal_primes() {
                ranks.push(PrimeRank {
                    prime: p.format(),
                    rank: LocalRank::Free(hilbert_rank(&m, p)?),
                    method: "hilbert",
                    first_nonvanishing_fitting: None,
                });
            }
        }
        Err(e) => return Err(e),
    }
    let first = ranks.first().map(|r| r.rank);
    let has_constant_rank = ranks
        .iter()
        .all(|r| matches!(r.rank, LocalRank::Free(_)) && Some(r.rank) == first);
    Ok(LocalRanks {
        ranks,
        has_constant_rank,
    })
}

/// `dim_{k(p)} M_p` for a minimal prime `p` of a reduced ring, as the ratio
/// of the leading Hilbert coefficients of `M/pM` and `R/p`.
fn hilbert_rank(m: &Module, p: &Ideal) -> Result<usize> {
    let ring = m.ring();
    let d = ring.dim();
    let mut extra = Vec::new();
    for i in 0..m.ngens() {
        for g in p.gens() {
            let mut col = vec![Poly::zero(); m.ngens()];
            col[i] = g.clone();
            let deg = m.gen_degs()[i] + g.degree().unwrap_or(0) as i64 * m.den() as i64;
            extra.push((col, deg));
        }
    }
    let mp = m.with_extra_rels(&extra);
    let (a, b) = mp.hilbert_series().normalized_leading(d);
    let (c, e) = p.hilbert_series().normalized_leading(d);
    let num = a * e;
    let den = b * c;
    if den == 0 || num % den != 0 {
        return Err(AlgebraError::InternalInconsistency(format!(
            "non-integral generic rank {num}/{den}"
        )));
    }
    Ok((num / den) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::QuotientRing;

    fn ring(ideal: &[&str]) -> QuotientRing {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        QuotientRing::new(&p, ideal.iter().map(|s| p.parse(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn node_cyclic_module() {
        let r = ring(&["x*y"]);
        let poly = r.poly().clone();
        let m = Module::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(
            fitting_ideal(&m, 0).unwrap(),
            Ideal::parse(&poly, &["x"]).unwrap()
        );
        assert!(fitting_ideal(&m, 1).unwrap().is_unit());
        assert_eq!(non_free_locus(&m).unwrap(), Ideal::maximal(&poly));
        let lr = local_rank_at_min_primes(&m).unwrap();
        let got: Vec<(String, LocalRank)> = lr.ranks.iter().map(|r| (r.prime.clone(), r.rank)).collect();
        assert_eq!(
            got,
            vec![("(x)".to_string(), LocalRank::Free(1)), ("(y)".to_string(), LocalRank::Free(0))]
        );
        assert!(!lr.has_constant_rank);
        assert_eq!(hilbert_rank(&m, &r.minimal_primes()[0]).unwrap(), 1);
        assert_eq!(hilbert_rank(&m, &r.minimal_primes()[1]).unwrap(), 0);
    }

    #[test]
    fn free_modules_are_free_everywhere() {
        let r = ring(&["x^2"]);
        let m = Module::free(&r, vec![0, 1]);
        assert!(non_free_locus(&m).unwrap().is_unit());
        let lr = local_rank_at_min_primes(&m).unwrap();
        assert_eq!(lr.ranks[0].rank, LocalRank::Free(2));
        assert!(lr.has_constant_rank);
    }

    #[test]
    fn not_free_on_double_line() {
        let r = ring(&["x^2"]);
        let m = Module::cyclic(&r, &[r.parse("x*y").unwrap()]).unwrap();
        let j = non_free_locus(&m).unwrap();
        assert!(!not_contained(&j, &r.minimal_primes()[0]));
        assert_eq!(local_rank_at_min_primes(&m).unwrap().ranks[0].rank, LocalRank::NotFree);
    }

    #[test]
    fn determinant_small() {
        let p = PolyRing::standard(5, &["x", "y"]).unwrap();
        let x = p.parse("x").unwrap();
        let y = p.parse("y").unwrap();
        let one = Poly::constant(1);
        let a = vec![vec![&x, &y], vec![&one, &x]];
        assert_eq!(determinant(&p, &a), p.parse("x^2 - y").unwrap());
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
