//! Standard test rings and modules shared by the harness, the CLI and the
//! test suites.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::frobenius::frobenius_pushforward;
use crate::modules::{random_module, syzygy_module, Module, QuotientRing, RandomModuleParams};
use crate::ring::PolyRing;

/// `F_p[x,y]/(x^2)`.
pub fn double_line(p: u64) -> Result<QuotientRing> {
    let poly = PolyRing::standard(p, &["x", "y"])?;
    QuotientRing::new(&poly, vec![poly.parse("x^2")?])
}

/// `F_p[x,y]/(xy)`.
pub fn node(p: u64) -> Result<QuotientRing> {
    let poly = PolyRing::standard(p, &["x", "y"])?;
    QuotientRing::new(&poly, vec![poly.parse("x*y")?])
}

/// `F_p[t^3, t^4, t^5]` as `F_p[x,y,z]/(y^2 - xz, x^3 - yz, x^2y - z^2)` with
/// weights `(3,4,5)`; the defining ideal is prime.
pub fn curve_345(p: u64) -> Result<QuotientRing> {
    let poly = PolyRing::new(p, &["x", "y", "z"], &[3, 4, 5])?;
    let gens = vec![poly.parse("y^2 - x*z")?, poly.parse("x^3 - y*z")?, poly.parse("x^2*y - z^2")?];
    QuotientRing::with_primes(&poly, gens.clone(), vec![gens])
}

/// `F_p[x_1..x_k]` in standard grading.
pub fn polynomial(p: u64, k: usize) -> Result<QuotientRing> {
    let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(QuotientRing::polynomial(&PolyRing::standard(p, &refs)?))
}

/// The three non-regular test rings over `F_p`, labelled.
pub fn test_rings(p: u64) -> Result<Vec<(&'static str, QuotientRing)>> {
    Ok(vec![("double-line", double_line(p)?), ("node", node(p)?), ("curve-345", curve_345(p)?)])
}

/// The `seed`-th module of the random suite over `ring`.
pub fn seeded_module(ring: &QuotientRing, seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_module(ring, RandomModuleParams::default(), &mut rng)
}

/// A labelled module.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub module: Module,
}

fn cyclic(ring: &QuotientRing, name: &str, gens: &[&str]) -> Result<Instance> {
    let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        name: name.into(),
        module: Module::cyclic(ring, &polys)?,
    })
}

/// Small fixed modules over a test ring: `R`, `k`, a few cyclic modules, a
/// Frobenius pushforward, and seeded random modules with their syzygies.
pub fn catalogue(label: &str, ring: &QuotientRing) -> Result<Vec<Instance>> {
    let mut out = vec![
        Instance {
            name: "R".into(),
            module: Module::free(ring, vec![0]),
        },
        Instance {
            name: "k".into(),
            module: Module::residue_field(ring),
        },
    ];
    match label {
        "double-line" => {
            out.push(cyclic(ring, "R/(x)", &["x"])?);
            out.push(cyclic(ring, "R/(xy)", &["x*y"])?);
        }
        "node" => {
            out.push(cyclic(ring, "R/(x)", &["x"])?);
            out.push(cyclic(ring, "R/(x^2)", &["x^2"])?);
            out.push(cyclic(ring, "R/(x+y)", &["x+y"])?);
        }
        "curve-345" => {
            out.push(cyclic(ring, "R/(x)", &["x"])?);
            out.push(cyclic(ring, "R/(y, z)", &["y", "z"])?);
        }
        _ => {}
    }
    out.push(Instance {
        name: "pushforward of R".into(),
        module: frobenius_pushforward(&Module::free(ring, vec![0]), 1)?.module,
    });
    for seed in 0..3 {
        let m = seeded_module(ring, seed);
        out.push(Instance {
            name: format!("syzygy of random module {seed}"),
            module: syzygy_module(&m, 1),
        });
        out.push(Instance {
            name: format!("random module {seed}"),
            module: m,
        });
    }
    Ok(out)
}
