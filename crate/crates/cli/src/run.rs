//! Executing a parsed session. Declarations are evaluated on first use,
//! tasks run in order (or concurrently with `parallel`), and results are
//! collected into a report whose JSON form depends only on the session,
//! the seed and the cap.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use frob_core::frobenius::{frobenius_functor, frobenius_pushforward};
use frob_core::groebner::GbCache;
use frob_core::instances::seeded_module;
use frob_core::modules::{
    depth, dual, format_degree, syzygy_module, torsion_submodule, FreeResolution, Module, QuotientRing,
};
use frob_core::theorems::{
    finite_hilbert_function, verify_double_line_example, verify_four_term_sequence, verify_frobenius_ext_pd_bound,
    verify_frobenius_mcm_freeness, verify_multiplicity_bounds_drs, verify_node_tensor_example,
    verify_pushforward_infinite_pd, verify_pushforward_tensor_torsion, verify_transpose_ext_vanishing, Outcome,
    VerificationReport, VerifyOptions,
};
use frob_core::{Ideal, Poly, PolyRing};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::session::{Expr, Item, SessionFile, Task, TaskKind, VerifyTask};

pub const SCHEMA_ID: &str = "frob-session-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Base seed for random modules and randomized searches.
    pub seed: u64,
    /// Resolution length; `dim R + 4` when unset.
    pub cap: Option<usize>,
    pub parallel: bool,
    pub cache: Option<GbCache>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskStatus {
    Pass,
    HypothesesFail,
    Counterexample,
    Computed,
    Error,
}

impl TaskStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            TaskStatus::Pass | TaskStatus::Computed => 0,
            TaskStatus::HypothesesFail => 1,
            TaskStatus::Counterexample => 2,
            TaskStatus::Error => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            TaskStatus::Pass => "pass",
            TaskStatus::HypothesesFail => "hypotheses fail",
            TaskStatus::Counterexample => "COUNTEREXAMPLE",
            TaskStatus::Computed => "computed",
            TaskStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub line: usize,
    pub command: String,
    pub status: TaskStatus,
    pub result: Value,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub stages: Vec<(String, Duration)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SessionReport {
    pub schema: &'static str,
    pub schema_version: u32,
    pub session: String,
    pub seed: u64,
    pub cap: Option<usize>,
    pub exit_code: i32,
    pub tasks: Vec<TaskReport>,
}

impl SessionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable form; includes wall-clock times.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let cap = self.cap.map_or("dim R + 4".to_string(), |c| c.to_string());
        let _ = writeln!(s, "session {} (seed {}, cap {cap})", self.session, self.seed);
        for t in &self.tasks {
            let _ = writeln!(s, "\n== task {} (line {}): {} ==", t.index + 1, t.line, t.command);
            s.push_str(&t.text);
            if !t.text.ends_with('\n') {
                s.push('\n');
            }
            for (stage, d) in &t.stages {
                let _ = writeln!(s, "  time {stage}: {}", ms(*d));
            }
            let _ = writeln!(s, "status: {} ({})", t.status.label(), ms(t.elapsed));
        }
        let _ = writeln!(s, "\nexit code: {}", self.exit_code);
        s
    }
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

enum Obj {
    Ring(QuotientRing),
    Module(Module),
}

struct Env<'s> {
    decls: BTreeMap<&'s str, &'s Item>,
    cells: BTreeMap<&'s str, OnceLock<Result<Obj, String>>>,
    opts: &'s RunOptions,
}

impl<'s> Env<'s> {
    fn new(session: &'s SessionFile, opts: &'s RunOptions) -> Self {
        let mut decls = BTreeMap::new();
        for item in &session.items {
            let name = match item {
                Item::Ring(r) => &r.name,
                Item::Module(m) => &m.name,
                Item::Let(l) => &l.name,
                Item::Task(_) => continue,
            };
            decls.insert(name.as_str(), item);
        }
        let cells = decls.keys().map(|&k| (k, OnceLock::new())).collect();
        Env { decls, cells, opts }
    }

    fn get(&self, name: &str) -> Result<&Obj, String> {
        let cell = self.cells.get(name).ok_or_else(|| format!("`{name}` is not declared"))?;
        cell.get_or_init(|| self.eval(name)).as_ref().map_err(Clone::clone)
    }

    fn ring(&self, name: &str) -> Result<QuotientRing, String> {
        match self.get(name)? {
            Obj::Ring(r) => Ok(r.clone()),
            Obj::Module(_) => Err(format!("`{name}` is a module")),
        }
    }

    fn module(&self, name: &str) -> Result<Module, String> {
        match self.get(name)? {
            Obj::Module(m) => Ok(m.clone()),
            Obj::Ring(_) => Err(format!("`{name}` is a ring")),
        }
    }

    fn dep<T>(&self, r: Result<T, String>, name: &str) -> Result<T, String> {
        r.map_err(|e| format!("depends on `{name}`: {e}"))
    }

    fn eval(&self, name: &str) -> Result<Obj, String> {
        let item = self.decls[name];
        let (line, res) = match item {
            Item::Ring(r) => (r.line, self.eval_ring(r)),
            Item::Module(m) => (m.line, self.eval_module(m)),
            Item::Let(l) => (l.line, self.eval_expr(&l.expr)),
            Item::Task(_) => unreachable!("tasks are not declarations"),
        };
        res.map_err(|e| {
            if e.starts_with("depends on") {
                e
            } else {
                format!("`{name}` (line {line}): {e}")
            }
        })
    }

    fn eval_ring(&self, r: &crate::session::RingDecl) -> Result<Obj, String> {
        let names: Vec<&str> = r.vars.iter().map(String::as_str).collect();
        let poly = PolyRing::new(r.p, &names, &r.weights).map_err(|e| e.to_string())?;
        let parse = |fs: &[String]| -> Result<Vec<Poly>, String> {
            fs.iter().map(|f| poly.parse(f).map_err(|e| e.to_string())).collect()
        };
        let gens = parse(&r.ideal)?;
        let ideal = match &self.opts.cache {
            Some(c) => c.ideal(&poly, gens),
            None => Ideal::new(&poly, gens),
        };
        let primes = if r.primes.is_empty() {
            None
        } else {
            Some(
                r.primes
                    .iter()
                    .map(|p| parse(p).map(|g| Ideal::new(&poly, g)))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        };
        QuotientRing::from_ideal(ideal, primes)
            .map(Obj::Ring)
            .map_err(|e| e.to_string())
    }

    fn eval_module(&self, m: &crate::session::ModuleDecl) -> Result<Obj, String> {
        let ring = self.dep(self.ring(&m.ring), &m.ring)?;
        if m.rows.is_empty() {
            return Ok(Obj::Module(Module::free(&ring, m.degrees.clone())));
        }
        let rows = m
            .rows
            .iter()
            .map(|row| row.iter().map(|f| ring.parse(f)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        Module::from_rows(&ring, m.degrees.clone(), rows)
            .map(Obj::Module)
            .map_err(|e| e.to_string())
    }

    fn eval_expr(&self, e: &Expr) -> Result<Obj, String> {
        let ring = |n: &str| self.dep(self.ring(n), n);
        let module = |n: &str| self.dep(self.module(n), n);
        let m = match e {
            Expr::Residue { ring: r } => Module::residue_field(&ring(r)?),
            Expr::Free { ring: r, degrees } => Module::free(&ring(r)?, degrees.clone()),
            Expr::Cyclic { ring: r, gens } => {
                let r = ring(r)?;
                let gens = gens.iter().map(|f| r.parse(f)).collect::<Result<Vec<_>, _>>();
                Module::cyclic(&r, &gens.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
            }
            Expr::Random { ring: r, seed } => seeded_module(&ring(r)?, seed.wrapping_add(self.opts.seed)),
            Expr::Pushforward { module: m, n } => {
                frobenius_pushforward(&module(m)?, *n).map_err(|e| e.to_string())?.module
            }
            Expr::Frobenius { module: m, n } => frobenius_functor(&module(m)?, *n).map_err(|e| e.to_string())?,
            Expr::Syzygy { module: m, i } => syzygy_module(&module(m)?, *i),
            Expr::Transpose { module: m } => module(m)?.transpose(),
            Expr::Dual { module: m } => dual(&module(m)?).map_err(|e| e.to_string())?,
            Expr::Tensor { left, right } => module(left)?
                .tensor(&module(right)?)
                .map_err(|e| e.to_string())?
                .minimalize(),
        };
        Ok(Obj::Module(m))
    }
}

fn task_refs(kind: &TaskKind) -> Vec<&str> {
    match kind {
        TaskKind::Betti { module }
        | TaskKind::Depth { module }
        | TaskKind::Hilbert { module }
        | TaskKind::Torsion { module }
        | TaskKind::Pushforward { module, .. } => vec![module],
        TaskKind::Verify(v) => match v {
            VerifyTask::FrobeniusMcmFreeness { module, .. }
            | VerifyTask::FrobeniusExtPdBound { module, .. }
            | VerifyTask::PushforwardInfinitePd { module } => vec![module],
            VerifyTask::TransposeExtVanishing { module, with, .. }
            | VerifyTask::TransposeFourTermSequence { module, with } => vec![module, with],
            VerifyTask::MultiplicityBoundsDrs { ring, .. }
            | VerifyTask::PushforwardTensorTorsion { ring, .. }
            | VerifyTask::TensorMcmForcesRegular { ring, .. } => vec![ring],
            VerifyTask::DoubleLineExample { .. } | VerifyTask::NodeTensorExample { .. } => vec![],
        },
    }
}

struct Done {
    status: TaskStatus,
    result: Value,
    text: String,
    stages: Vec<(String, Duration)>,
}

fn computed(result: Value, text: String) -> Done {
    Done {
        status: TaskStatus::Computed,
        result,
        text,
        stages: Vec::new(),
    }
}

fn from_report(r: VerificationReport) -> Done {
    let status = match r.outcome() {
        Outcome::Pass => TaskStatus::Pass,
        Outcome::HypothesesFail => TaskStatus::HypothesesFail,
        Outcome::Counterexample => TaskStatus::Counterexample,
    };
    Done {
        status,
        text: r.to_text(),
        stages: r.timings.clone(),
        result: serde_json::to_value(&r).expect("report serializes"),
    }
}

fn module_data(m: &Module) -> Value {
    serde_json::to_value(m.to_data()).expect("presentation serializes")
}

fn execute(env: &Env, kind: &TaskKind) -> Result<Done, String> {
    let err = |e: frob_core::AlgebraError| e.to_string();
    let vopts = |ring: &QuotientRing| VerifyOptions {
        cap: Some(env.opts.cap.unwrap_or(ring.dim() + 4)),
        seed: env.opts.seed,
    };
    Ok(match kind {
        TaskKind::Betti { module } => {
            let m = env.module(module)?;
            let cap = vopts(m.ring()).cap.unwrap();
            let res = FreeResolution::new(&m, cap);
            res.check().map_err(err)?;
            let table = res.betti_table();
            let pd = res.projective_dimension();
            let text = format!(
                "betti numbers {:?}, projective dimension {}\n{}",
                res.betti_numbers(),
                pd.map_or(format!("> {cap} or unknown beyond the cap"), |d| d.to_string()),
                table.to_text()
            );
            computed(
                json!({
                    "module": module_data(&m),
                    "cap": cap,
                    "betti_numbers": res.betti_numbers(),
                    "projective_dimension": pd,
                    "betti_table": table.to_json(),
                }),
                text,
            )
        }
        TaskKind::Depth { module } => {
            let m = env.module(module)?;
            let d = depth(&m).map_err(err)?;
            let dim = m.dim().map_err(err)?;
            let rdim = m.ring().dim();
            computed(
                json!({"depth": d, "module_dim": dim, "ring_dim": rdim, "maximal_cohen_macaulay": d == rdim}),
                format!("depth {d}, dim {dim}, ring dim {rdim}\n"),
            )
        }
        TaskKind::Hilbert { module } => {
            let m = env.module(module)?;
            let hs = m.hilbert_series();
            let lo = hs.lowest_degree().unwrap_or(0);
            let hi = lo + 12 * m.den() as i64;
            let values: Vec<Value> = (lo..=hi)
                .zip(hs.values(lo, hi))
                .map(|(d, v)| json!({"degree": format_degree(d, m.den()), "value": v}))
                .collect();
            let mut text = format!("numerator {}, dimension {:?}\n", hs.numerator_text(), hs.pole_order());
            for v in &values {
                let _ = writeln!(text, "  {}: {}", v["degree"].as_str().unwrap(), v["value"]);
            }
            computed(
                json!({
                    "numerator": hs.numerator_text(),
                    "degree_denominator": m.den(),
                    "dimension": hs.pole_order(),
                    "values": values,
                }),
                text,
            )
        }
        TaskKind::Torsion { module } => {
            let m = env.module(module)?;
            let t = torsion_submodule(&m).map_err(err)?;
            let hf = finite_hilbert_function(&t.torsion).ok();
            let mut text = format!("torsion free: {}\n", t.torsion.is_zero());
            if !t.torsion.is_zero() {
                let _ = writeln!(text, "torsion: {}", t.torsion.format());
            }
            if let Some(hf) = &hf {
                let len: i64 = hf.iter().map(|(_, v)| v).sum();
                let _ = writeln!(text, "torsion length {len}, hilbert function {hf:?}");
            }
            computed(
                json!({
                    "torsion_free": t.torsion.is_zero(),
                    "torsion": module_data(&t.torsion),
                    "quotient": module_data(&t.quotient),
                    "torsion_hilbert_numerator": t.torsion.hilbert_series().numerator_text(),
                    "torsion_hilbert_function": hf,
                }),
                text,
            )
        }
        TaskKind::Pushforward { module, n } => {
            let m = env.module(module)?;
            let pf = frobenius_pushforward(&m, *n).map_err(err)?;
            let mut text = format!(
                "q = {}, {} generators before minimalization, {} after\n",
                pf.q,
                pf.raw.ngens(),
                pf.module.ngens()
            );
            for l in &pf.labels {
                let _ = writeln!(text, "  x^{:?} e_{} in degree {}", l.alpha, l.generator, l.degree);
            }
            text.push_str(&pf.module.format());
            text.push('\n');
            let mut data = serde_json::to_value(pf.to_data()).expect("pushforward serializes");
            data["hilbert_numerator"] = json!(pf.module.hilbert_series().numerator_text());
            computed(data, text)
        }
        TaskKind::Verify(v) => {
            let report = match v {
                VerifyTask::FrobeniusMcmFreeness { module, n } => verify_frobenius_mcm_freeness(&env.module(module)?, *n),
                VerifyTask::DoubleLineExample { p } => verify_double_line_example(*p),
                VerifyTask::NodeTensorExample { p } => verify_node_tensor_example(*p),
                VerifyTask::TransposeExtVanishing { module, with, n } => {
                    verify_transpose_ext_vanishing(&env.module(module)?, &env.module(with)?, *n)
                }
                VerifyTask::TransposeFourTermSequence { module, with } => {
                    verify_four_term_sequence(&env.module(module)?, &env.module(with)?)
                }
                VerifyTask::FrobeniusExtPdBound { module, n, t } => {
                    let m = env.module(module)?;
                    let o = vopts(m.ring());
                    verify_frobenius_ext_pd_bound(&m, *n, *t, o)
                }
                VerifyTask::MultiplicityBoundsDrs { ring, q } => {
                    let r = env.ring(ring)?;
                    verify_multiplicity_bounds_drs(&r, *q, vopts(&r))
                }
                VerifyTask::PushforwardInfinitePd { module } => {
                    let m = env.module(module)?;
                    let o = vopts(m.ring());
                    verify_pushforward_infinite_pd(&m, o)
                }
                VerifyTask::PushforwardTensorTorsion { ring, n } => {
                    verify_pushforward_tensor_torsion(&env.ring(ring)?, *n, *n)
                }
                VerifyTask::TensorMcmForcesRegular { ring, s, n } => {
                    verify_pushforward_tensor_torsion(&env.ring(ring)?, *s, *n)
                }
            };
            from_report(report.map_err(err)?)
        }
    })
}

fn run_one(env: &Env, index: usize, task: &Task) -> TaskReport {
    let start = Instant::now();
    let done = execute(env, &task.kind).unwrap_or_else(|e| Done {
        status: TaskStatus::Error,
        result: json!({ "error": e }),
        text: format!("error: {e}\n"),
        stages: Vec::new(),
    });
    TaskReport {
        index,
        line: task.line,
        command: task.kind.to_string(),
        status: done.status,
        result: done.result,
        text: done.text,
        elapsed: start.elapsed(),
        stages: done.stages,
    }
}

/// Runs every task of `session`. The exit code is the worst task status:
/// 0 pass, 1 hypotheses fail, 2 counterexample, 3 error.
pub fn run_tasks(session: &SessionFile, name: &str, opts: &RunOptions) -> SessionReport {
    let env = Env::new(session, opts);
    let tasks: Vec<&Task> = session.tasks().collect();
    // Declarations are evaluated up front so concurrent tasks only read them.
    for t in &tasks {
        for r in task_refs(&t.kind) {
            let _ = env.get(r);
        }
    }
    let reports: Vec<TaskReport> = if opts.parallel {
        tasks.par_iter().enumerate().map(|(i, t)| run_one(&env, i, t)).collect()
    } else {
        tasks.iter().enumerate().map(|(i, t)| run_one(&env, i, t)).collect()
    };
    let exit_code = reports.iter().map(|r| r.status.exit_code()).max().unwrap_or(0);
    SessionReport {
        schema: SCHEMA_ID,
        schema_version: SCHEMA_VERSION,
        session: name.to_string(),
        seed: opts.seed,
        cap: opts.cap,
        exit_code,
        tasks: reports,
    }
}
