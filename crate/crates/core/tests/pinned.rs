//! Hand-derived and oracle-derived values for the standard rings.

mod common;

use common::*;
use frob_core::frobenius::*;
use frob_core::instances::{curve_345, double_line, node};
use frob_core::modules::*;
use frob_core::theorems::*;
use frob_core::{AlgebraError, Ideal, PolyRing};

#[test]
fn prime_field_and_frobenius_arithmetic() {
    let f7 = frob_core::PrimeField::new(7).unwrap();
    let brute = (1..7).find(|&y| 3 * y % 7 == 1).unwrap();
    assert_eq!(f7.inv(3).unwrap(), brute);
    let r = PolyRing::standard(3, &["x", "y"]).unwrap();
    let f = r.parse("x + y").unwrap();
    assert_eq!(r.pow(&f, 3), r.parse("x^3 + y^3").unwrap());
    assert_eq!(r.frobenius_power(&r.parse("x + 2*y").unwrap(), 3), r.parse("x^3 + 2*y^3").unwrap());
    let r2 = PolyRing::standard(2, &["x", "y"]).unwrap();
    assert_eq!(r2.entry_power(&r2.parse("x*y").unwrap(), 1), r2.parse("x^2*y^2").unwrap());
}

#[test]
fn curve_ideal_basis_and_reduction() {
    let ring = curve_345(2).unwrap();
    let gb = ring.ideal().groebner_basis();
    assert_eq!(gb.len(), 3);
    let inputs: Vec<_> = ring.ideal().gens().iter().map(|g| ring.poly().make_monic(g)).collect();
    for g in &gb {
        assert!(inputs.contains(g), "basis element {} is not an input", ring.format(g));
    }
    assert_eq!(ring.parse("y^2").unwrap(), ring.parse("x*z").unwrap());
    let f = ring.poly().parse("y^2").unwrap();
    assert_eq!(ring.format(&ring.nf(&f)), "x*z");
    let diff = ring.poly().sub(&f, &ring.poly().parse("x*z").unwrap());
    assert!(Pres::free(&ring, 1, vec![0]).is_zero(&[diff], 8));
}

#[test]
fn koszul_syzygy_of_two_variables() {
    let p = PolyRing::standard(2, &["x", "y"]).unwrap();
    let ring = QuotientRing::polynomial(&p);
    let m = Module::cyclic(&ring, &[p.parse("x").unwrap(), p.parse("y").unwrap()]).unwrap();
    let res = FreeResolution::new(&m, 3);
    assert_eq!(res.betti_numbers(), vec![1, 2, 1, 0]);
    let syz = &res.differential(2)[0];
    let fmt: Vec<String> = syz.iter().map(|f| p.format(f)).collect();
    assert_eq!(fmt, vec!["y", "x"]);
    check_resolution(&res, &m, 0, 4).unwrap();
}

#[test]
fn colon_and_saturation() {
    let p = PolyRing::standard(2, &["x", "y"]).unwrap();
    let xy = Ideal::parse(&p, &["x*y"]).unwrap();
    let x = Ideal::parse(&p, &["x"]).unwrap();
    assert_eq!(xy.colon(&x), Ideal::parse(&p, &["y"]).unwrap());
    let i = Ideal::parse(&p, &["x^2*y"]).unwrap();
    let y = Ideal::parse(&p, &["y"]).unwrap();
    assert_eq!(i.saturation(&y).unwrap(), Ideal::parse(&p, &["x^2"]).unwrap());
}

#[test]
fn hilbert_series_and_dimension() {
    let ra = double_line(2).unwrap();
    let hs = ra.ideal().hilbert_series();
    assert_eq!(hs.values(0, 6), vec![1, 2, 2, 2, 2, 2, 2]);
    assert_eq!(ra.dim(), 1);
    let rc = curve_345(2).unwrap();
    assert_eq!(rc.dim(), 1);
    let hc = rc.ideal().hilbert_series();
    for d in 0..40 {
        assert_eq!(hc.value(d), in_s(d) as i64, "degree {d}");
    }
}

#[test]
fn samuel_function_and_multiplicity() {
    let rc = curve_345(3).unwrap();
    for s in 0..8 {
        assert_eq!(samuel_length(&rc, s).unwrap() as i64, samuel_count(s as i64), "s = {s}");
    }
    assert_eq!(multiplicity(&rc).unwrap(), 3);
    // R_A: count standard monomials y^j, x y^j of total degree <= s
    let ra = double_line(2).unwrap();
    for s in 0..8usize {
        let count = (0..=s).count() + (0..s).count();
        assert_eq!(samuel_length(&ra, s).unwrap() as usize, count);
    }
    assert_eq!(multiplicity(&ra).unwrap(), 2);
    assert_eq!(multiplicity(&node(3).unwrap()).unwrap(), 2);
}

#[test]
fn minimal_presentations() {
    let ra = double_line(2).unwrap();
    let m = Module::cyclic(&ra, &[ra.parse("x^2*y^2").unwrap()]).unwrap();
    assert!(m.minimalize().is_free());
    let p = ra.poly();
    let m2 = Module::from_rows(&ra, vec![0, 1], vec![vec![p.parse("x").unwrap()], vec![p.parse("1").unwrap()]]).unwrap();
    let mm = m2.minimalize();
    // the second generator is -x times the first: M ≅ R
    assert!(mm.is_free() && mm.ngens() == 1);
    assert_eq!(mm.hilbert_function(0, 4), vec![1, 2, 2, 2, 2]);
}

#[test]
fn periodic_resolutions() {
    let rb = node(2).unwrap();
    let m = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    let res = FreeResolution::new(&m, 5);
    assert_eq!(res.betti_numbers(), vec![1; 6]);
    check_resolution(&res, &m, 0, 8).unwrap();
    let ra = double_line(2).unwrap();
    let k = Module::residue_field(&ra);
    let kres = FreeResolution::new(&k, 5);
    let b = kres.betti_numbers();
    assert_eq!(&b[..2], &[1, 2]);
    assert!(b.windows(2).all(|w| w[1] >= w[0]));
    kres.check().unwrap();
    check_resolution(&kres, &k, 0, 8).unwrap();
}

#[test]
fn transposes_and_syzygies() {
    let rb = node(2).unwrap();
    let m = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    let tr = m.transpose().normalize_den();
    assert_eq!(tr.rows().len(), 1);
    assert_eq!(rb.format(&tr.rels()[0][0]), "x");
    let ra = double_line(2).unwrap();
    let m = Module::cyclic(&ra, &[ra.parse("x*y").unwrap()]).unwrap();
    assert_eq!(ra.format(&m.transpose().rels()[0][0]), "x*y");
    // Ω(R/(x)) = (x) ≅ R/(y)(-1)
    let om = syzygy_module(&Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap(), 1).minimalize();
    assert_eq!(om.gen_degs(), &[1]);
    assert_eq!(rb.format(&om.rels()[0][0]), "y");
}

#[test]
fn node_tensor_ext_and_depth() {
    let rb = node(2).unwrap();
    let a = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    let r = Module::free(&rb, vec![0]);
    assert!(ext(1, &a, &r).unwrap().is_zero());
    let e = ext(1, &a.transpose(), &r).unwrap();
    assert!(e.is_zero());
    assert!(is_mcm(&a.tensor(&a).unwrap()).unwrap());
    let ra = double_line(2).unwrap();
    assert_eq!(depth(&Module::free(&ra, vec![0])).unwrap(), 1);
    // R_B/(x^2): the class of x is killed by x + y
    let n = Module::cyclic(&rb, &[rb.parse("x^2").unwrap()]).unwrap();
    assert_eq!(depth(&n).unwrap(), 0);
    let (ell, d) = parameter("node", &rb);
    assert_eq!(depth_dim_one(&Pres::of(&n), &ell, d, 0, 6), 0);
}

#[test]
fn torsion_examples() {
    let rb = node(2).unwrap();
    let a = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    assert!(torsion_submodule(&a).unwrap().torsion.is_zero());
    let n = Module::cyclic(&rb, &[rb.parse("x^2").unwrap()]).unwrap();
    let t = torsion_submodule(&n).unwrap();
    assert_eq!(t.torsion.hilbert_function(0, 4), vec![0, 1, 0, 0, 0]);
    let (ell, d) = parameter("node", &rb);
    let np = Pres::of(&n);
    let oracle: Vec<i64> = (0..=4).map(|e| torsion_dim(&np, &ell, d, e, 20) as i64).collect();
    assert_eq!(oracle, vec![0, 1, 0, 0, 0]);
    let rc = curve_345(2).unwrap();
    let k = Module::residue_field(&rc);
    let tk = torsion_submodule(&k).unwrap();
    assert_eq!(tk.torsion.hilbert_function(0, 10), k.hilbert_function(0, 10));
    assert!(tk.quotient.is_zero());
}

#[test]
fn fitting_ideals_and_local_ranks() {
    let rb = node(2).unwrap();
    let a = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    let p = rb.poly();
    let f0 = fitting_ideal(&a, 0).unwrap();
    assert_eq!(f0, Ideal::parse(p, &["x", "x*y"]).unwrap());
    assert!(fitting_ideal(&a, 1).unwrap().is_unit());
    assert_eq!(non_free_locus(&a).unwrap(), Ideal::parse(p, &["x", "y"]).unwrap());
    let ra = double_line(2).unwrap();
    let m = Module::cyclic(&ra, &[ra.parse("x*y").unwrap()]).unwrap();
    let j = non_free_locus(&m).unwrap();
    assert!(Ideal::parse(ra.poly(), &["x"]).unwrap().contains_ideal(&j));
    let ranks = local_rank_at_min_primes(&m).unwrap();
    assert_eq!(ranks.ranks[0].rank, LocalRank::NotFree);
}

#[test]
fn frobenius_functor_examples() {
    let ra = double_line(2).unwrap();
    let m = Module::cyclic(&ra, &[ra.parse("x*y").unwrap()]).unwrap();
    let f = frobenius_functor(&m, 1).unwrap();
    assert!(f.is_free() && f.ngens() == 1);
    let rb = node(2).unwrap();
    let a = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    let f = frobenius_functor(&a, 1).unwrap();
    assert_eq!(rb.format(&f.rels()[0][0]), "x^2");
}

#[test]
fn pushforward_of_double_line() {
    let ra = double_line(2).unwrap();
    let pf = frobenius_pushforward(&Module::free(&ra, vec![0]), 1).unwrap();
    assert_eq!(pf.module.ngens(), 4);
    for (j, col) in pf.module.rows().iter().enumerate() {
        let nonzero: Vec<String> = col.iter().filter(|f| !f.is_zero()).map(|f| ra.format(f)).collect();
        assert_eq!(nonzero, vec!["x"], "row {j}");
    }
    let res = FreeResolution::new(&pf.module, 5);
    assert_eq!(res.betti_numbers(), vec![4; 6]);
}

/// `^φR_C` splits by residue class of semigroup elements mod `q`; the
/// minimal generators of each class are counted combinatorially.
#[test]
fn pushforward_of_curve_matches_semigroup() {
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let rc = curve_345(p).unwrap();
        let q = p.pow(n) as i64;
        let pf = frobenius_pushforward(&Module::free(&rc, vec![0]), n).unwrap();
        let mut gens = 0;
        for c in 0..q {
            let g_c: Vec<i64> = (0..200).filter(|&s| in_s(s) && s % q == c).map(|s| (s - c) / q).collect();
            let member = |x: i64| g_c.binary_search(&x).is_ok();
            gens += g_c
                .iter()
                .filter(|&&g| g < 40 && !(1..=g).any(|a| in_s(a) && member(g - a)))
                .count();
        }
        assert_eq!(pf.module.ngens(), gens, "p = {p}, n = {n}");
        // degree s/q carries t^s
        let m = pf.module.rescale(q as u32);
        let den = m.den() as i64;
        for s in 0..60 {
            assert_eq!(m.hilbert_series().value(s * den / q), in_s(s) as i64, "s = {s}");
        }
        let ranks = local_rank_at_min_primes(&pf.module).unwrap();
        assert_eq!(ranks.ranks[0].rank, LocalRank::Free(q as usize));
    }
}

#[test]
fn drs_certificates() {
    for p in [2u64, 3] {
        let ra = double_line(p).unwrap();
        let c = drs_upper_bound(&ra, p, 0).unwrap();
        assert!(c.holds);
        assert_eq!(c.sop, vec!["y"]);
        assert!(!drs_upper_bound(&ra, 1, 0).unwrap().holds);
    }
    let ra = double_line(2).unwrap();
    let b = ra.ideal().sum(&Ideal::maximal(ra.poly())).bracket_power(2).unwrap();
    assert_eq!(b, Ideal::parse(ra.poly(), &["x^2", "y^2"]).unwrap());
}

#[test]
fn regularity() {
    assert!(!is_regular_kunz(&double_line(2).unwrap()).unwrap());
    assert!(!is_regular_kunz(&curve_345(2).unwrap()).unwrap());
    assert_eq!(embedding_dimension(&curve_345(2).unwrap()), 3);
}

#[test]
fn harness_regressions() {
    let ra = double_line(2).unwrap();
    let m = Module::cyclic(&ra, &[ra.parse("x*y").unwrap()]).unwrap();
    let r = verify_frobenius_mcm_freeness(&m, 1).unwrap();
    assert_eq!(r.conclusion, ConclusionStatus::NotAsserted);
    let failed: Vec<&str> = r.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect();
    assert_eq!(failed, vec!["M is free at every minimal prime"]);

    // R_B/(x): F(M) = R_B/(x^2) has depth 0, so the freeness hypotheses fail
    let rb = node(2).unwrap();
    let a = Module::cyclic(&rb, &[rb.parse("x").unwrap()]).unwrap();
    let r = verify_frobenius_mcm_freeness(&a, 1).unwrap();
    assert!(!r.counterexample);
    let failed: Vec<&str> = r.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect();
    assert_eq!(failed, vec!["F^n(M) is maximal Cohen-Macaulay"]);

    let free = Module::free(&rb, vec![0, 1]);
    assert_eq!(verify_frobenius_mcm_freeness(&free, 1).unwrap().outcome(), Outcome::Pass);

    let r = verify_transpose_ext_vanishing(&a, &a, 1).unwrap();
    assert_eq!(r.outcome(), Outcome::Pass);
    assert!(r.assertion("Ext^1(Tr M, N) = 0").unwrap().holds);
    let r = verify_transpose_ext_vanishing(&free, &a, 1).unwrap();
    assert_eq!(r.outcome(), Outcome::Pass);

    let opts = VerifyOptions::default();
    let ma = Module::cyclic(&ra, &[ra.parse("x").unwrap()]).unwrap();
    for m in [ma, Module::residue_field(&ra)] {
        let r = verify_frobenius_ext_pd_bound(&m, 1, 1, opts).unwrap();
        let ext = r.hypotheses.iter().find(|h| h.name.starts_with("Ext")).unwrap();
        assert!(!ext.holds, "Ext^1(M, ^φR) must not vanish for a non-free M");
    }
    let r = verify_frobenius_ext_pd_bound(&Module::free(&ra, vec![0]), 1, 1, opts).unwrap();
    assert_eq!(r.outcome(), Outcome::Pass);
    assert!(matches!(
        verify_frobenius_ext_pd_bound(&Module::free(&ra, vec![0]), 1, 5, opts),
        Err(frob_core::AlgebraError::CapExceeded { .. })
    ));

    let poly = frob_core::instances::polynomial(2, 2).unwrap();
    let r = verify_pushforward_infinite_pd(&Module::free(&poly, vec![0]), opts).unwrap();
    assert_eq!(r.conclusion, ConclusionStatus::NotApplicable);
    let r = verify_pushforward_tensor_torsion(&poly, 1, 1).unwrap();
    assert_eq!(r.conclusion, ConclusionStatus::NotApplicable);
}

#[test]
fn torsion_statement_at_two_thresholds() {
    let rc = curve_345(2).unwrap();
    let reports = verify_torsion_thresholds(&rc).unwrap();
    let ns: Vec<u64> = reports.iter().map(|r| r.instance["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![2, 3]);
    assert!(reports.iter().all(|r| r.outcome() == Outcome::Pass));
    let r = verify_pushforward_tensor_torsion(&rc, 1, 2).unwrap();
    assert_eq!(r.statement, Statement::TensorMcmForcesRegular);
    assert_eq!(r.outcome(), Outcome::Pass);
    // below the threshold the hypothesis fails
    let r = verify_pushforward_tensor_torsion(&rc, 1, 1).unwrap();
    assert_eq!(r.conclusion, ConclusionStatus::NotAsserted);
}

#[test]
fn multiplicity_route_for_bracket_powers() {
    let opts = VerifyOptions::default();
    for p in [2u64, 3] {
        for (_, ring) in frob_core::instances::test_rings(p).unwrap() {
            let e = multiplicity(&ring).unwrap();
            let mut q = 1;
            while q < e {
                q *= p;
            }
            for q in [q, q * p] {
                let r = verify_multiplicity_bounds_drs(&ring, q, opts).unwrap();
                assert_eq!(r.outcome(), Outcome::Pass, "{}", r.to_text());
            }
        }
    }
}

#[test]
fn oversized_frobenius_requests_are_refused() {
    let ring = double_line(2).unwrap();
    let free = Module::free(&ring, vec![0]);
    assert!(matches!(frobenius_pushforward(&free, 40), Err(AlgebraError::TooLarge(_))));
    let m = Module::cyclic(&ring, &[ring.parse("y").unwrap()]).unwrap();
    assert!(matches!(frobenius_functor(&m, 17), Err(AlgebraError::TooLarge(_))));
    assert!(frobenius_functor(&m, 15).is_ok());
}
