//! Session files: ring and module declarations followed by tasks, one
//! statement per line. The grammar is written up in `docs/session-format.md`.

use std::collections::BTreeMap;
use std::fmt;

use frob_core::field::is_prime;
use frob_core::theorems::Statement;
use frob_core::{AlgebraError, Poly, PolyRing};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Syntax,
    UnknownName,
    UnknownVariable,
    Inhomogeneous,
    CompositeCharacteristic,
    DuplicateName,
    InvalidValue,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "Syntax",
            ErrorCode::UnknownName => "UnknownName",
            ErrorCode::UnknownVariable => "UnknownVariable",
            ErrorCode::Inhomogeneous => "Inhomogeneous",
            ErrorCode::CompositeCharacteristic => "CompositeCharacteristic",
            ErrorCode::DuplicateName => "DuplicateName",
            ErrorCode::InvalidValue => "InvalidValue",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parse or validation failure. `line` and `col` are 1-based; `col` counts
/// characters.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {code}: {msg}")]
pub struct SessionError {
    pub code: ErrorCode,
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

type PResult<T> = std::result::Result<T, SessionError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionFile {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Ring(RingDecl),
    Module(ModuleDecl),
    Let(LetDecl),
    Task(Task),
}

/// Polynomials are stored in the canonical printed form of their ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub p: u64,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub ideal: Vec<String>,
    /// Declared minimal primes, one generator list each.
    pub primes: Vec<Vec<String>>,
    pub line: usize,
}

/// Cokernel of `rows` (generators by relations) on generators of the given
/// degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub ring: String,
    pub degrees: Vec<i64>,
    pub rows: Vec<Vec<String>>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetDecl {
    pub name: String,
    pub expr: Expr,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Residue { ring: String },
    Free { ring: String, degrees: Vec<i64> },
    Cyclic { ring: String, gens: Vec<String> },
    Random { ring: String, seed: u64 },
    Pushforward { module: String, n: u32 },
    Frobenius { module: String, n: u32 },
    Syzygy { module: String, i: usize },
    Transpose { module: String },
    Dual { module: String },
    Tensor { left: String, right: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub kind: TaskKind,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Betti { module: String },
    Depth { module: String },
    Hilbert { module: String },
    Torsion { module: String },
    Pushforward { module: String, n: u32 },
    Verify(VerifyTask),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyTask {
    FrobeniusMcmFreeness { module: String, n: u32 },
    DoubleLineExample { p: u64 },
    NodeTensorExample { p: u64 },
    TransposeExtVanishing { module: String, with: String, n: usize },
    TransposeFourTermSequence { module: String, with: String },
    FrobeniusExtPdBound { module: String, n: u32, t: usize },
    MultiplicityBoundsDrs { ring: String, q: u64 },
    PushforwardInfinitePd { module: String },
    PushforwardTensorTorsion { ring: String, n: u32 },
    TensorMcmForcesRegular { ring: String, s: u32, n: u32 },
}

impl VerifyTask {
    pub fn statement(&self) -> Statement {
        match self {
            VerifyTask::FrobeniusMcmFreeness { .. } => Statement::FrobeniusMcmFreeness,
            VerifyTask::DoubleLineExample { .. } => Statement::DoubleLineExample,
            VerifyTask::NodeTensorExample { .. } => Statement::NodeTensorExample,
            VerifyTask::TransposeExtVanishing { .. } => Statement::TransposeExtVanishing,
            VerifyTask::TransposeFourTermSequence { .. } => Statement::TransposeFourTermSequence,
            VerifyTask::FrobeniusExtPdBound { .. } => Statement::FrobeniusExtPdBound,
            VerifyTask::MultiplicityBoundsDrs { .. } => Statement::MultiplicityBoundsDrs,
            VerifyTask::PushforwardInfinitePd { .. } => Statement::PushforwardInfinitePd,
            VerifyTask::PushforwardTensorTorsion { .. } => Statement::PushforwardTensorTorsion,
            VerifyTask::TensorMcmForcesRegular { .. } => Statement::TensorMcmForcesRegular,
        }
    }
}

impl SessionFile {
    pub fn rings(&self) -> impl Iterator<Item = &RingDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Ring(r) => Some(r),
            _ => None,
        })
    }

    pub fn tasks(&self) -> impl Iterator<Item = &Task> {
        self.items.iter().filter_map(|i| match i {
            Item::Task(t) => Some(t),
            _ => None,
        })
    }

    /// Same declarations, no tasks.
    pub fn declarations_only(&self) -> SessionFile {
        SessionFile {
            items: self
                .items
                .iter()
                .filter(|i| !matches!(i, Item::Task(_)))
                .cloned()
                .collect(),
        }
    }
}

// ---------------------------------------------------------------- printing

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SessionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prev_block = false;
        for (k, item) in self.items.iter().enumerate() {
            let block = matches!(item, Item::Ring(_) | Item::Module(_));
            if k > 0 && (block || prev_block) {
                writeln!(f)?;
            }
            write!(f, "{item}")?;
            prev_block = block;
        }
        Ok(())
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Ring(r) => {
                writeln!(f, "ring {}", r.name)?;
                writeln!(f, "  p = {}", r.p)?;
                writeln!(f, "  vars = {}", join(&r.vars))?;
                writeln!(f, "  weights = {}", join(&r.weights))?;
                if !r.ideal.is_empty() {
                    writeln!(f, "  ideal = {}", join(&r.ideal))?;
                }
                for p in &r.primes {
                    writeln!(f, "  prime = {}", join(p))?;
                }
                writeln!(f, "end")
            }
            Item::Module(m) => {
                writeln!(f, "module {} over {}", m.name, m.ring)?;
                writeln!(f, "  degrees = {}", join(&m.degrees))?;
                for row in &m.rows {
                    writeln!(f, "  row = {}", join(row))?;
                }
                writeln!(f, "end")
            }
            Item::Let(l) => writeln!(f, "let {} = {}", l.name, l.expr),
            Item::Task(t) => writeln!(f, "{}", t.kind),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Residue { ring } => write!(f, "residue {ring}"),
            Expr::Free { ring, degrees } => write!(f, "free {ring} {}", join(degrees)),
            Expr::Cyclic { ring, gens } => write!(f, "cyclic {ring} {}", join(gens)),
            Expr::Random { ring, seed } => write!(f, "random {ring} seed={seed}"),
            Expr::Pushforward { module, n } => write!(f, "pushforward {module} n={n}"),
            Expr::Frobenius { module, n } => write!(f, "frobenius {module} n={n}"),
            Expr::Syzygy { module, i } => write!(f, "syzygy {module} i={i}"),
            Expr::Transpose { module } => write!(f, "transpose {module}"),
            Expr::Dual { module } => write!(f, "dual {module}"),
            Expr::Tensor { left, right } => write!(f, "tensor {left} {right}"),
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskKind::Betti { module } => write!(f, "betti {module}"),
            TaskKind::Depth { module } => write!(f, "depth {module}"),
            TaskKind::Hilbert { module } => write!(f, "hilbert {module}"),
            TaskKind::Torsion { module } => write!(f, "torsion {module}"),
            TaskKind::Pushforward { module, n } => write!(f, "pushforward {module} n={n}"),
            TaskKind::Verify(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for VerifyTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verify {}", self.statement().id())?;
        match self {
            VerifyTask::FrobeniusMcmFreeness { module, n } => write!(f, " module={module} n={n}"),
            VerifyTask::DoubleLineExample { p } | VerifyTask::NodeTensorExample { p } => write!(f, " p={p}"),
            VerifyTask::TransposeExtVanishing { module, with, n } => {
                write!(f, " module={module} with={with} n={n}")
            }
            VerifyTask::TransposeFourTermSequence { module, with } => write!(f, " module={module} with={with}"),
            VerifyTask::FrobeniusExtPdBound { module, n, t } => write!(f, " module={module} n={n} t={t}"),
            VerifyTask::MultiplicityBoundsDrs { ring, q } => write!(f, " ring={ring} q={q}"),
            VerifyTask::PushforwardInfinitePd { module } => write!(f, " module={module}"),
            VerifyTask::PushforwardTensorTorsion { ring, n } => write!(f, " ring={ring} n={n}"),
            VerifyTask::TensorMcmForcesRegular { ring, s, n } => write!(f, " ring={ring} s={s} n={n}"),
        }
    }
}

// ----------------------------------------------------------------- parsing

#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    /// Byte offset in the line.
    at: usize,
    s: &'a str,
}

fn trimmed(at: usize, s: &str) -> Span<'_> {
    let lead = s.len() - s.trim_start().len();
    Span {
        at: at + lead,
        s: s.trim(),
    }
}

struct Line<'a> {
    no: usize,
    /// The line with any comment removed.
    text: &'a str,
}

impl<'a> Line<'a> {
    fn new(no: usize, raw: &'a str) -> Self {
        let text = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        Line { no, text }
    }

    fn err(&self, at: usize, code: ErrorCode, msg: impl Into<String>) -> SessionError {
        let at = at.min(self.text.len());
        SessionError {
            code,
            line: self.no,
            col: self.text[..at].chars().count() + 1,
            msg: msg.into(),
        }
    }

    fn words_from(&self, from: usize) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = None;
        for (k, c) in self.text[from..].char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push(Span {
                        at: from + s,
                        s: &self.text[from + s..from + k],
                    });
                    start = None;
                }
                (false, None) => start = Some(k),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push(Span {
                at: from + s,
                s: &self.text[from + s..],
            });
        }
        out
    }

    fn words(&self) -> Vec<Span<'a>> {
        self.words_from(0)
    }

    /// Text after `span`, trimmed.
    fn rest_after(&self, span: Span<'a>) -> Span<'a> {
        let from = span.at + span.s.len();
        trimmed(from, &self.text[from..])
    }

    /// `key = value` inside a block.
    fn field(&self) -> PResult<(Span<'a>, Span<'a>)> {
        let Some(eq) = self.text.find('=') else {
            let w = self.words();
            return Err(self.err(w[0].at, ErrorCode::Syntax, "expected `key = value`"));
        };
        let key = trimmed(0, &self.text[..eq]);
        if !is_ident(key.s) {
            return Err(self.err(key.at, ErrorCode::Syntax, "expected a field name before `=`"));
        }
        Ok((key, trimmed(eq + 1, &self.text[eq + 1..])))
    }

    fn list(&self, sp: Span<'a>) -> PResult<Vec<Span<'a>>> {
        if sp.s.is_empty() {
            return Err(self.err(sp.at, ErrorCode::Syntax, "expected a comma-separated list"));
        }
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = sp.s.as_bytes();
        for k in 0..=bytes.len() {
            if k == bytes.len() || bytes[k] == b',' {
                let item = trimmed(sp.at + start, &sp.s[start..k]);
                if item.s.is_empty() {
                    return Err(self.err(item.at, ErrorCode::Syntax, "empty list entry"));
                }
                out.push(item);
                start = k + 1;
            }
        }
        Ok(out)
    }

    fn int<T: std::str::FromStr>(&self, sp: Span<'a>) -> PResult<T> {
        sp.s
            .parse()
            .map_err(|_| self.err(sp.at, ErrorCode::InvalidValue, format!("`{}` is not a valid integer here", sp.s)))
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const KEYWORDS: &[&str] = &[
    "ring", "module", "let", "end", "over", "betti", "depth", "hilbert", "torsion", "pushforward", "verify",
];

#[derive(Clone)]
enum Kind {
    Ring(PolyRing),
    Module { ring: String },
}

#[derive(Default)]
struct Parser {
    items: Vec<Item>,
    names: BTreeMap<String, Kind>,
}

/// Parses and validates a session. Every name must be declared before use,
/// polynomials must use declared variables and be homogeneous, and the
/// characteristic must be prime.
pub fn parse_session(text: &str) -> Result<SessionFile, SessionError> {
    let mut p = Parser::default();
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let line = Line::new(i + 1, lines[i]);
        i += 1;
        let words = line.words();
        let Some(first) = words.first() else { continue };
        match first.s {
            "ring" | "module" => {
                let mut body = Vec::new();
                loop {
                    if i >= lines.len() {
                        return Err(line.err(first.at, ErrorCode::Syntax, "block is not closed by `end`"));
                    }
                    let l = Line::new(i + 1, lines[i]);
                    i += 1;
                    let w = l.words();
                    let Some(head) = w.first() else { continue };
                    if head.s == "end" {
                        if let Some(extra) = w.get(1) {
                            return Err(l.err(extra.at, ErrorCode::Syntax, "unexpected text after `end`"));
                        }
                        break;
                    }
                    if KEYWORDS.contains(&head.s) && !l.text.contains('=') {
                        return Err(l.err(head.at, ErrorCode::Syntax, "expected `end` before a new statement"));
                    }
                    body.push(l);
                }
                if first.s == "ring" {
                    p.ring_block(&line, &words, &body)?;
                } else {
                    p.module_block(&line, &words, &body)?;
                }
            }
            "let" => p.let_decl(&line)?,
            "end" => return Err(line.err(first.at, ErrorCode::Syntax, "`end` outside a block")),
            _ => p.task(&line, &words)?,
        }
    }
    Ok(SessionFile { items: p.items })
}

impl Parser {
    fn declare(&mut self, line: &Line, sp: Span, kind: Kind) -> PResult<String> {
        if !is_ident(sp.s) || KEYWORDS.contains(&sp.s) {
            return Err(line.err(sp.at, ErrorCode::Syntax, format!("`{}` is not a valid name", sp.s)));
        }
        if self.names.contains_key(sp.s) {
            return Err(line.err(sp.at, ErrorCode::DuplicateName, format!("`{}` is already declared", sp.s)));
        }
        self.names.insert(sp.s.to_string(), kind);
        Ok(sp.s.to_string())
    }

    fn ring_ref(&self, line: &Line, sp: Span) -> PResult<(String, PolyRing)> {
        match self.names.get(sp.s) {
            Some(Kind::Ring(r)) => Ok((sp.s.to_string(), r.clone())),
            Some(Kind::Module { .. }) => Err(line.err(
                sp.at,
                ErrorCode::UnknownName,
                format!("`{}` is a module, expected a ring", sp.s),
            )),
            None => Err(line.err(sp.at, ErrorCode::UnknownName, format!("ring `{}` is not declared", sp.s))),
        }
    }

    /// Returns the module name and the name of its ring.
    fn module_ref(&self, line: &Line, sp: Span) -> PResult<(String, String)> {
        match self.names.get(sp.s) {
            Some(Kind::Module { ring }) => Ok((sp.s.to_string(), ring.clone())),
            Some(Kind::Ring(_)) => Err(line.err(
                sp.at,
                ErrorCode::UnknownName,
                format!("`{}` is a ring, expected a module", sp.s),
            )),
            None => Err(line.err(sp.at, ErrorCode::UnknownName, format!("module `{}` is not declared", sp.s))),
        }
    }

    fn ring_block(&mut self, header: &Line, words: &[Span], body: &[Line]) -> PResult<()> {
        if words.len() != 2 {
            return Err(header.err(words[0].at, ErrorCode::Syntax, "expected `ring NAME`"));
        }
        let mut fields: BTreeMap<&str, (&Line, Span)> = BTreeMap::new();
        let mut primes = Vec::new();
        for l in body {
            let (k, v) = l.field()?;
            match k.s {
                "prime" => primes.push((l, v)),
                "p" | "vars" | "weights" | "ideal" => {
                    if fields.insert(k.s, (l, v)).is_some() {
                        return Err(l.err(k.at, ErrorCode::Syntax, format!("field `{}` given twice", k.s)));
                    }
                }
                other => {
                    return Err(l.err(k.at, ErrorCode::Syntax, format!("unknown field `{other}` in a ring block")))
                }
            }
        }
        let missing = |f: &str| header.err(words[0].at, ErrorCode::Syntax, format!("ring block needs `{f}`"));
        let &(pl, pv) = fields.get("p").ok_or_else(|| missing("p"))?;
        let p: u64 = pl.int(pv)?;
        if p < 2 {
            return Err(pl.err(pv.at, ErrorCode::InvalidValue, "the characteristic must be at least 2"));
        }
        if !is_prime(p) {
            return Err(pl.err(
                pv.at,
                ErrorCode::CompositeCharacteristic,
                format!("characteristic {p} is not prime"),
            ));
        }
        let &(vl, vv) = fields.get("vars").ok_or_else(|| missing("vars"))?;
        let mut vars: Vec<String> = Vec::new();
        for v in vl.list(vv)? {
            if !is_ident(v.s) {
                return Err(vl.err(v.at, ErrorCode::Syntax, format!("`{}` is not a valid variable name", v.s)));
            }
            if vars.iter().any(|w| w == v.s) {
                return Err(vl.err(v.at, ErrorCode::DuplicateName, format!("variable `{}` declared twice", v.s)));
            }
            vars.push(v.s.to_string());
        }
        let weights: Vec<u32> = match fields.get("weights") {
            Some(&(wl, wv)) => {
                let items = wl.list(wv)?;
                if items.len() != vars.len() {
                    return Err(wl.err(
                        wv.at,
                        ErrorCode::InvalidValue,
                        format!("{} weights for {} variables", items.len(), vars.len()),
                    ));
                }
                let mut ws = Vec::new();
                for w in items {
                    let v: u32 = wl.int(w)?;
                    if v == 0 {
                        return Err(wl.err(w.at, ErrorCode::InvalidValue, "weights must be positive"));
                    }
                    ws.push(v);
                }
                ws
            }
            None => vec![1; vars.len()],
        };
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let ring = PolyRing::new(p, &names, &weights)
            .map_err(|e| vl.err(vv.at, ErrorCode::InvalidValue, e.to_string()))?;
        let ideal = match fields.get("ideal") {
            Some(&(il, iv)) => self.poly_list(&ring, il, iv)?,
            None => Vec::new(),
        };
        let primes = primes
            .into_iter()
            .map(|(l, v)| self.poly_list(&ring, l, v))
            .collect::<PResult<Vec<_>>>()?;
        let name = self.declare(header, words[1], Kind::Ring(ring.clone()))?;
        self.items.push(Item::Ring(RingDecl {
            name,
            p,
            vars,
            weights,
            ideal,
            primes,
            line: header.no,
        }));
        Ok(())
    }

    /// Nonzero homogeneous polynomials, canonically printed.
    fn poly_list(&self, ring: &PolyRing, line: &Line, sp: Span) -> PResult<Vec<String>> {
        line.list(sp)?
            .into_iter()
            .map(|item| {
                let f = poly(ring, line, item)?;
                if f.is_zero() {
                    return Err(line.err(item.at, ErrorCode::InvalidValue, "generators must be nonzero"));
                }
                if !f.is_homogeneous() {
                    return Err(inhomogeneous(ring, line, item));
                }
                Ok(ring.format(&f))
            })
            .collect()
    }

    fn module_block(&mut self, header: &Line, words: &[Span], body: &[Line]) -> PResult<()> {
        if words.len() != 4 || words[2].s != "over" {
            return Err(header.err(words[0].at, ErrorCode::Syntax, "expected `module NAME over RING`"));
        }
        let (ring_name, ring) = self.ring_ref(header, words[3])?;
        let mut degrees: Option<Vec<i64>> = None;
        let mut rows: Vec<(&Line, Vec<(Span, Poly)>)> = Vec::new();
        for l in body {
            let (k, v) = l.field()?;
            match k.s {
                "degrees" => {
                    if degrees.is_some() {
                        return Err(l.err(k.at, ErrorCode::Syntax, "field `degrees` given twice"));
                    }
                    degrees = Some(l.list(v)?.into_iter().map(|d| l.int(d)).collect::<PResult<_>>()?);
                }
                "row" => {
                    let entries = l
                        .list(v)?
                        .into_iter()
                        .map(|e| poly(&ring, l, e).map(|f| (e, f)))
                        .collect::<PResult<Vec<_>>>()?;
                    if let Some((first, _)) = rows.first() {
                        let want = rows[0].1.len();
                        if entries.len() != want {
                            return Err(l.err(
                                v.at,
                                ErrorCode::InvalidValue,
                                format!("row has {} entries, line {} has {want}", entries.len(), first.no),
                            ));
                        }
                    }
                    rows.push((l, entries));
                }
                other => {
                    return Err(l.err(k.at, ErrorCode::Syntax, format!("unknown field `{other}` in a module block")))
                }
            }
        }
        let degrees = match degrees {
            Some(d) => d,
            None if !rows.is_empty() => vec![0; rows.len()],
            None => {
                return Err(header.err(
                    words[0].at,
                    ErrorCode::InvalidValue,
                    "module needs `degrees` or at least one `row`",
                ))
            }
        };
        if degrees.is_empty() {
            return Err(header.err(words[0].at, ErrorCode::InvalidValue, "module needs at least one generator"));
        }
        if !rows.is_empty() && rows.len() != degrees.len() {
            return Err(header.err(
                words[0].at,
                ErrorCode::InvalidValue,
                format!("{} rows for {} generator degrees", rows.len(), degrees.len()),
            ));
        }
        // each relation column must be homogeneous of one degree
        let ncols = rows.first().map_or(0, |r| r.1.len());
        for c in 0..ncols {
            let mut col_deg: Option<(i64, usize)> = None;
            for (i, (l, entries)) in rows.iter().enumerate() {
                let (sp, f) = &entries[c];
                if f.is_zero() {
                    continue;
                }
                if !f.is_homogeneous() {
                    return Err(inhomogeneous(&ring, l, *sp));
                }
                let d = f.degree().unwrap() as i64 + degrees[i];
                match col_deg {
                    None => col_deg = Some((d, l.no)),
                    Some((d0, at)) if d0 != d => {
                        return Err(l.err(
                            sp.at,
                            ErrorCode::Inhomogeneous,
                            format!(
                                "column {} has degree {d0} (line {at}) but this entry gives degree {d}",
                                c + 1
                            ),
                        ))
                    }
                    _ => {}
                }
            }
        }
        let rows = rows
            .into_iter()
            .map(|(_, es)| es.iter().map(|(_, f)| ring.format(f)).collect())
            .collect();
        let name = self.declare(header, words[1], Kind::Module { ring: ring_name.clone() })?;
        self.items.push(Item::Module(ModuleDecl {
            name,
            ring: ring_name,
            degrees,
            rows,
            line: header.no,
        }));
        Ok(())
    }

    fn let_decl(&mut self, line: &Line) -> PResult<()> {
        let Some(eq) = line.text.find('=') else {
            return Err(line.err(line.text.len(), ErrorCode::Syntax, "expected `let NAME = ...`"));
        };
        let head = line.words_from(0);
        let head: Vec<Span> = head
            .into_iter()
            .filter(|w| w.at < eq)
            .map(|w| Span {
                at: w.at,
                s: &w.s[..w.s.len().min(eq - w.at)],
            })
            .collect();
        let name_sp = match head.as_slice() {
            [_, n] => *n,
            _ => return Err(line.err(0, ErrorCode::Syntax, "expected `let NAME = ...`")),
        };
        let words = line.words_from(eq + 1);
        let Some(op) = words.first().copied() else {
            return Err(line.err(eq + 1, ErrorCode::Syntax, "expected an expression after `=`"));
        };
        let mut args = Args::new(line, &words[1..]);
        let (expr, ring) = match op.s {
            "residue" | "random" => {
                let r = args.positional(1, op)?[0];
                let (ring, _) = self.ring_ref(line, r)?;
                let expr = if op.s == "residue" {
                    Expr::Residue { ring: ring.clone() }
                } else {
                    Expr::Random {
                        ring: ring.clone(),
                        seed: args.int("seed", 0)?,
                    }
                };
                args.done()?;
                (expr, ring)
            }
            "free" | "cyclic" => {
                let Some(&r) = words.get(1) else {
                    return Err(line.err(op.at + op.s.len(), ErrorCode::Syntax, "expected a ring name"));
                };
                let (ring, poly_ring) = self.ring_ref(line, r)?;
                let rest = line.rest_after(r);
                let expr = if op.s == "free" {
                    let degrees = line.list(rest)?.into_iter().map(|d| line.int(d)).collect::<PResult<_>>()?;
                    Expr::Free {
                        ring: ring.clone(),
                        degrees,
                    }
                } else {
                    Expr::Cyclic {
                        ring: ring.clone(),
                        gens: self.poly_list(&poly_ring, line, rest)?,
                    }
                };
                (expr, ring)
            }
            "pushforward" | "frobenius" | "syzygy" | "transpose" | "dual" => {
                let m = args.positional(1, op)?[0];
                let (module, ring) = self.module_ref(line, m)?;
                let expr = match op.s {
                    "pushforward" => Expr::Pushforward {
                        module,
                        n: args.int("n", 1)?,
                    },
                    "frobenius" => Expr::Frobenius {
                        module,
                        n: args.int("n", 1)?,
                    },
                    "syzygy" => Expr::Syzygy {
                        module,
                        i: args.int("i", 1)?,
                    },
                    "transpose" => Expr::Transpose { module },
                    _ => Expr::Dual { module },
                };
                args.done()?;
                (expr, ring)
            }
            "tensor" => {
                let ms = args.positional(2, op)?;
                let (left, ring) = self.module_ref(line, ms[0])?;
                let (right, ring2) = self.module_ref(line, ms[1])?;
                if ring != ring2 {
                    return Err(line.err(
                        ms[1].at,
                        ErrorCode::InvalidValue,
                        format!("`{left}` is over `{ring}` but `{right}` is over `{ring2}`"),
                    ));
                }
                args.done()?;
                (Expr::Tensor { left, right }, ring)
            }
            other => {
                return Err(line.err(op.at, ErrorCode::Syntax, format!("unknown operation `{other}`")));
            }
        };
        let name = self.declare(line, name_sp, Kind::Module { ring })?;
        self.items.push(Item::Let(LetDecl {
            name,
            expr,
            line: line.no,
        }));
        Ok(())
    }

    fn task(&mut self, line: &Line, words: &[Span]) -> PResult<()> {
        let op = words[0];
        let mut args = Args::new(line, &words[1..]);
        let kind = match op.s {
            "betti" | "depth" | "hilbert" | "torsion" | "pushforward" => {
                let (module, _) = self.module_ref(line, args.positional(1, op)?[0])?;
                match op.s {
                    "betti" => TaskKind::Betti { module },
                    "depth" => TaskKind::Depth { module },
                    "hilbert" => TaskKind::Hilbert { module },
                    "torsion" => TaskKind::Torsion { module },
                    _ => TaskKind::Pushforward {
                        module,
                        n: args.int("n", 1)?,
                    },
                }
            }
            "verify" => {
                let id = args.positional(1, op)?[0];
                let Some(statement) = Statement::from_id(id.s) else {
                    let known: Vec<&str> = Statement::ALL.iter().map(|s| s.id()).collect();
                    return Err(line.err(
                        id.at,
                        ErrorCode::UnknownName,
                        format!("unknown statement `{}`; known: {}", id.s, known.join(", ")),
                    ));
                };
                TaskKind::Verify(self.verify_args(line, statement, &mut args)?)
            }
            other => {
                return Err(line.err(op.at, ErrorCode::Syntax, format!("unknown statement keyword `{other}`")));
            }
        };
        args.done()?;
        self.items.push(Item::Task(Task { kind, line: line.no }));
        Ok(())
    }

    fn verify_args(&self, line: &Line, st: Statement, args: &mut Args) -> PResult<VerifyTask> {
        let module = |args: &mut Args, key: &str| -> PResult<(String, String)> {
            let sp = args.value(key)?;
            self.module_ref(line, sp)
        };
        let ring = |args: &mut Args| -> PResult<String> {
            let sp = args.value("ring")?;
            Ok(self.ring_ref(line, sp)?.0)
        };
        let same_ring = |a: &(String, String), b: &(String, String), args: &Args| -> PResult<()> {
            if a.1 != b.1 {
                return Err(line.err(
                    args.anchor,
                    ErrorCode::InvalidValue,
                    format!("`{}` and `{}` are over different rings", a.0, b.0),
                ));
            }
            Ok(())
        };
        Ok(match st {
            Statement::FrobeniusMcmFreeness => VerifyTask::FrobeniusMcmFreeness {
                module: module(args, "module")?.0,
                n: args.int("n", 1)?,
            },
            Statement::DoubleLineExample => VerifyTask::DoubleLineExample { p: args.int("p", 2)? },
            Statement::NodeTensorExample => VerifyTask::NodeTensorExample { p: args.int("p", 2)? },
            Statement::TransposeExtVanishing => {
                let m = module(args, "module")?;
                let n = module(args, "with")?;
                same_ring(&m, &n, args)?;
                VerifyTask::TransposeExtVanishing {
                    module: m.0,
                    with: n.0,
                    n: args.int("n", 1)?,
                }
            }
            Statement::TransposeFourTermSequence => {
                let m = module(args, "module")?;
                let n = module(args, "with")?;
                same_ring(&m, &n, args)?;
                VerifyTask::TransposeFourTermSequence { module: m.0, with: n.0 }
            }
            Statement::FrobeniusExtPdBound => VerifyTask::FrobeniusExtPdBound {
                module: module(args, "module")?.0,
                n: args.int("n", 1)?,
                t: args.int("t", 1)?,
            },
            Statement::MultiplicityBoundsDrs => VerifyTask::MultiplicityBoundsDrs {
                ring: ring(args)?,
                q: args.int("q", 1)?,
            },
            Statement::PushforwardInfinitePd => VerifyTask::PushforwardInfinitePd {
                module: module(args, "module")?.0,
            },
            Statement::PushforwardTensorTorsion => VerifyTask::PushforwardTensorTorsion {
                ring: ring(args)?,
                n: args.int("n", 1)?,
            },
            Statement::TensorMcmForcesRegular => {
                let ring = ring(args)?;
                let s = args.int("s", 1)?;
                let n = args.int("n", 1)?;
                if s == n {
                    return Err(line.err(
                        args.anchor,
                        ErrorCode::InvalidValue,
                        "s = n is the pushforward-tensor-torsion statement; use that id",
                    ));
                }
                VerifyTask::TensorMcmForcesRegular { ring, s, n }
            }
        })
    }
}

/// Positional words and `key=value` pairs after an operation keyword.
struct Args<'l, 'a> {
    line: &'l Line<'a>,
    positional: Vec<Span<'a>>,
    pairs: Vec<(Span<'a>, Span<'a>)>,
    /// End of the line, where a missing argument belongs.
    anchor: usize,
}

impl<'l, 'a> Args<'l, 'a> {
    fn new(line: &'l Line<'a>, words: &[Span<'a>]) -> Self {
        let mut positional = Vec::new();
        let mut pairs = Vec::new();
        for w in words {
            match w.s.find('=') {
                Some(k) => pairs.push((
                    Span { at: w.at, s: &w.s[..k] },
                    Span {
                        at: w.at + k + 1,
                        s: &w.s[k + 1..],
                    },
                )),
                None => positional.push(*w),
            }
        }
        let anchor = line.text.trim_end().len();
        Args {
            line,
            positional,
            pairs,
            anchor,
        }
    }

    fn positional(&mut self, n: usize, op: Span) -> PResult<Vec<Span<'a>>> {
        if self.positional.len() < n {
            return Err(self.line.err(
                op.at,
                ErrorCode::Syntax,
                format!("`{}` expects {n} name argument{}", op.s, if n == 1 { "" } else { "s" }),
            ));
        }
        Ok(self.positional.drain(..n).collect())
    }

    fn value(&mut self, key: &str) -> PResult<Span<'a>> {
        let Some(k) = self.pairs.iter().position(|(k, _)| k.s == key) else {
            return Err(self.line.err(self.anchor, ErrorCode::Syntax, format!("missing argument `{key}=`")));
        };
        let (_, v) = self.pairs.remove(k);
        if self.pairs.iter().any(|(k, _)| k.s == key) {
            return Err(self.line.err(v.at, ErrorCode::Syntax, format!("argument `{key}` given twice")));
        }
        if v.s.is_empty() {
            return Err(self.line.err(v.at, ErrorCode::Syntax, format!("argument `{key}` has no value")));
        }
        Ok(v)
    }

    fn int<T: std::str::FromStr + PartialOrd + From<u8>>(&mut self, key: &str, min: u8) -> PResult<T> {
        let sp = self.value(key)?;
        let v: T = self.line.int(sp)?;
        if v < T::from(min) {
            return Err(self.line.err(sp.at, ErrorCode::InvalidValue, format!("`{key}` must be at least {min}")));
        }
        Ok(v)
    }

    fn done(self) -> PResult<()> {
        if let Some(w) = self.positional.first() {
            return Err(self.line.err(w.at, ErrorCode::Syntax, format!("unexpected argument `{}`", w.s)));
        }
        if let Some((k, _)) = self.pairs.first() {
            return Err(self.line.err(k.at, ErrorCode::Syntax, format!("unexpected argument `{}=`", k.s)));
        }
        Ok(())
    }
}

fn poly(ring: &PolyRing, line: &Line, sp: Span) -> PResult<Poly> {
    let b = sp.s.as_bytes();
    let mut k = 0;
    while k < b.len() {
        if b[k].is_ascii_alphabetic() || b[k] == b'_' {
            let start = k;
            while k < b.len() && (b[k].is_ascii_alphanumeric() || b[k] == b'_') {
                k += 1;
            }
            let id = &sp.s[start..k];
            if ring.var_index(id).is_none() {
                return Err(line.err(sp.at + start, ErrorCode::UnknownVariable, format!("unknown variable `{id}`")));
            }
        } else {
            k += 1;
        }
    }
    ring.parse(sp.s).map_err(|e| match e {
        AlgebraError::Parse { col, msg } => line.err(sp.at + col - 1, ErrorCode::Syntax, msg),
        other => line.err(sp.at, ErrorCode::Syntax, other.to_string()),
    })
}

fn inhomogeneous(ring: &PolyRing, line: &Line, sp: Span) -> SessionError {
    line.err(
        sp.at,
        ErrorCode::Inhomogeneous,
        format!("`{}` is not homogeneous for the weights ({})", sp.s, join(ring.weights())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_count_characters() {
        let e = parse_session("ring R\n  p = 2\n  vars = x, y\n  ideal = x^2, w\nend\n").unwrap_err();
        assert_eq!((e.code, e.line, e.col), (ErrorCode::UnknownVariable, 4, 16));
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_session("# header\n\nring R # trailing\n  p = 3\n  vars = x\nend\nbetti R_k # no\n");
        assert_eq!(s.unwrap_err().code, ErrorCode::UnknownName);
    }

    #[test]
    fn let_without_spaces() {
        let s = parse_session("ring R\n  p = 2\n  vars = x\nend\nlet K=residue R\ndepth K\n").unwrap();
        assert_eq!(s.to_string(), "ring R\n  p = 2\n  vars = x\n  weights = 1\nend\n\nlet K = residue R\ndepth K\n");
    }
}
