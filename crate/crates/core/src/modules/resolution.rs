//! Truncated minimal graded free resolutions and Betti tables.

use std::collections::BTreeMap;

use serde::Serialize;

use super::linalg::kernel;
use super::presentation::{format_degree, Module};
use super::ring::QuotientRing;
use crate::error::{AlgebraError, Result};
use crate::poly::Poly;

/// `F_L -> .. -> F_1 -> F_0`, minimal, with `maps[i] = d_{i+1}` stored as
/// columns over the basis of `F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: QuotientRing,
    den: u32,
    cap: usize,
    degs: Vec<Vec<i64>>,
    maps: Vec<Vec<Vec<Poly>>>,
}

impl FreeResolution {
    /// Resolves `m` through homological degree `cap`.
    pub fn new(m: &Module, cap: usize) -> FreeResolution {
        let m = m.minimalize();
        let mut degs = vec![m.gen_degs().to_vec()];
        let mut maps: Vec<Vec<Vec<Poly>>> = Vec::new();
        if cap >= 1 {
            degs.push(m.rel_degs().to_vec());
            maps.push(m.rels().to_vec());
        }
        while degs.len() <= cap {
            let i = degs.len() - 1;
            if degs[i].is_empty() {
                degs.push(Vec::new());
                maps.push(Vec::new());
                continue;
            }
            let target = Module::raw(m.ring(), m.den(), degs[i - 1].clone(), Vec::new(), Vec::new());
            let k = kernel(&target, &degs[i], &maps[i - 1]);
            degs.push(k.iter().map(|(_, d)| *d).collect());
            maps.push(k.into_iter().map(|(c, _)| c).collect());
        }
        FreeResolution {
            ring: m.ring().clone(),
            den: m.den(),
            cap,
            degs,
            maps,
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Degrees of the basis of `F_i`.
    pub fn degrees(&self, i: usize) -> &[i64] {
        &self.degs[i]
    }

    /// `d_i : F_i -> F_{i-1}` as columns, `1 <= i <= cap`.
    pub fn differential(&self, i: usize) -> &[Vec<Poly>] {
        &self.maps[i - 1]
    }

    pub fn betti(&self, i: usize) -> usize {
        self.degs[i].len()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degs.iter().map(|d| d.len()).collect()
    }

    /// Projective dimension if some `F_i` with `i <= cap` vanished.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.degs.iter().position(|d| d.is_empty()).map(|i| i.saturating_sub(1))
    }

    /// Checks `d_i d_{i+1} = 0` and that every entry lies in the maximal ideal.
    pub fn check(&self) -> Result<()> {
        let poly = self.ring.poly();
        for (i, map) in self.maps.iter().enumerate() {
            for c in map {
                if c.iter().any(|f| f.constant_term() != 0) {
                    return Err(AlgebraError::InternalInconsistency(format!(
                        "differential d_{} has a unit entry",
                        i + 1
                    )));
                }
            }
            if i == 0 {
                continue;
            }
            let prev = &self.maps[i - 1];
            for c in map {
                for row in 0..self.degs[i - 1].len() {
                    let mut s = Poly::zero();
                    for (k, a) in c.iter().enumerate() {
                        if !a.is_zero() && !prev[k][row].is_zero() {
                            s = poly.add(&s, &poly.mul(&prev[k][row], a));
                        }
                    }
                    if !self.ring.is_zero(&s) {
                        return Err(AlgebraError::InternalInconsistency(format!(
                            "d_{} d_{} is nonzero",
                            i,
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Same resolution with degrees in units of `1/den`.
    pub fn rescale(&self, den: u32) -> FreeResolution {
        assert!(den % self.den == 0);
        let f = (den / self.den) as i64;
        FreeResolution {
            ring: self.ring.clone(),
            den,
            cap: self.cap,
            degs: self
                .degs
                .iter()
                .map(|d| d.iter().map(|x| x * f).collect())
                .collect(),
            maps: self.maps.clone(),
        }
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, d) in self.degs.iter().enumerate() {
            for &x in d {
                *entries.entry((x, i)).or_insert(0usize) += 1;
            }
        }
        BettiTable {
            den: self.den,
            cap: self.cap,
            totals: self.betti_numbers(),
            entries,
        }
    }
}

/// `beta_{i,j}` for homological degree `i` and internal degree `j`
/// (units of `1/den`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub den: u32,
    pub cap: usize,
    pub totals: Vec<usize>,
    pub entries: BTreeMap<(i64, usize), usize>,
}

#[derive(Serialize)]
struct BettiJson {
    cap: usize,
    totals: Vec<usize>,
    graded: Vec<BettiEntry>,
}

#[derive(Serialize)]
struct BettiEntry {
    homological: usize,
    degree: String,
    count: usize,
}

impl BettiTable {
    pub fn to_json(&self) -> serde_json::Value {
        let graded = self
            .entries
            .iter()
            .map(|(&(d, i), &c)| BettiEntry {
                homological: i,
                degree: format_degree(d, self.den),
                count: c,
            })
            .collect();
        serde_json::to_value(BettiJson {
            cap: self.cap,
            totals: self.totals.clone(),
            graded,
        })
        .expect("plain data serializes")
    }

    /// Aligned text: one column per homological degree, one row per
    /// internal degree.
    pub fn to_text(&self) -> String {
        let ncol = self.totals.len();
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        rows.push(("total:".into(), self.totals.iter().map(|t| t.to_string()).collect()));
        let degrees: Vec<i64> = {
            let mut d: Vec<i64> = self.entries.keys().map(|k| k.0).collect();
            d.dedup();
            d
        };
        for d in degrees {
            let cells = (0..ncol)
                .map(|i| match self.entries.get(&(d, i)) {
                    Some(c) => c.to_string(),
                    None => ".".into(),
                })
                .collect();
            rows.push((format!("{}:", format_degree(d, self.den)), cells));
        }
        let lw = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let cw = rows
            .iter()
            .flat_map(|r| r.1.iter().map(|c| c.len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (label, cells) in rows {
            out.push_str(&format!("{label:>lw$}"));
            for c in cells {
                out.push_str(&format!(" {c:>cw$}"));
            }
            out.push('\n');
        }
        out
    }
}

/// `Ω^i M`: the image of `d_i`, presented as `coker(d_{i+1})`.
pub fn syzygy_module(m: &Module, i: usize) -> Module {
    if i == 0 {
        return m.clone();
    }
    let res = FreeResolution::new(m, i + 1);
    Module::raw(
        res.ring(),
        res.den(),
        res.degrees(i).to_vec(),
        res.differential(i + 1).to_vec(),
        res.degrees(i + 1).to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    fn rb() -> QuotientRing {
        let p = PolyRing::standard(2, &["x", "y"]).unwrap();
        QuotientRing::new(&p, vec![p.parse("x*y").unwrap()]).unwrap()
    }

    #[test]
    fn periodic_resolution_over_node() {
        let r = rb();
        let m = Module::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let res = FreeResolution::new(&m, 5);
        assert_eq!(res.betti_numbers(), vec![1, 1, 1, 1, 1, 1]);
        assert_eq!(res.projective_dimension(), None);
        res.check().unwrap();
        assert_eq!(res.differential(2)[0], vec![r.parse("y").unwrap()]);
    }

    #[test]
    fn free_module_resolution() {
        let r = rb();
        let res = FreeResolution::new(&Module::free(&r, vec![0, 2]), 3);
        assert_eq!(res.betti_numbers(), vec![2, 0, 0, 0]);
        assert_eq!(res.projective_dimension(), Some(0));
    }

    #[test]
    fn syzygy_of_cyclic() {
        let r = rb();
        let m = Module::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let s = syzygy_module(&m, 1);
        assert_eq!(s.gen_degs(), &[1]);
        assert_eq!(s.rels()[0], vec![r.parse("y").unwrap()]);
        assert_eq!(syzygy_module(&Module::free(&r, vec![0]), 1).ngens(), 0);
    }

    #[test]
    fn betti_text_layout() {
        let r = rb();
        let k = Module::residue_field(&r);
        let t = FreeResolution::new(&k, 2).betti_table();
        let text = t.to_text();
        assert!(text.starts_with("total: 1 2"), "{text}");
    }
}
