use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frob_cli::{
    parse_session, prelude, run_tasks, single_task_session, RunOptions, SessionError, SessionFile,
    EXIT_ENGINE_ERROR,
};
use frob_core::groebner::GbCache;

#[derive(Parser)]
#[command(name = "frob", version, about = "Frobenius pushforwards, Ext and depth over F_p, with statement checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every task of a session file.
    Run {
        session: PathBuf,
        /// Directory for report.json and report.txt.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resolution length (default dim R + 4).
        #[arg(long)]
        cap: Option<usize>,
        /// Run independent tasks concurrently.
        #[arg(long)]
        parallel: bool,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print a session file in canonical form.
    Fmt { session: PathBuf },
    /// Minimal free resolution and Betti table of a module.
    Betti {
        module: String,
        #[command(flatten)]
        common: Direct,
    },
    /// Presentation of the n-th Frobenius pushforward of a module.
    Pushforward {
        module: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: u32,
        #[command(flatten)]
        common: Direct,
    },
    /// Torsion submodule of a module over a reduced ring.
    Torsion {
        module: String,
        #[command(flatten)]
        common: Direct,
    },
    /// Check one statement on an instance, e.g. `frob verify double-line-example p=3`.
    Verify {
        statement: String,
        /// Arguments as key=value.
        args: Vec<String>,
        #[command(flatten)]
        common: Direct,
    },
}

#[derive(Args)]
struct Direct {
    /// Take declarations from this session (its tasks are ignored).
    #[arg(long)]
    session: Option<PathBuf>,
    /// Characteristic of the built-in rings when no session is given.
    #[arg(short = 'p', long = "char", default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse_error(source: &str, e: &SessionError) -> String {
    if e.line == 0 {
        format!("command, column {}: {}: {}", e.col, e.code, e.msg)
    } else {
        format!("{source}: {e}")
    }
}

fn session_name(path: &Path) -> String {
    path.file_stem().map_or("session".into(), |s| s.to_string_lossy().into_owned())
}

fn options(seed: u64, cap: Option<usize>, parallel: bool) -> RunOptions {
    RunOptions {
        seed,
        cap,
        parallel,
        cache: GbCache::from_env(),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ENGINE_ERROR as u8)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32, String> {
    match cmd {
        Cmd::Run {
            session,
            out,
            seed,
            cap,
            parallel,
            json,
        } => {
            let text = read(&session)?;
            let file = parse_session(&text).map_err(|e| parse_error(&session.display().to_string(), &e))?;
            let report = run_tasks(&file, &session_name(&session), &options(seed, cap, parallel));
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
                for (name, body) in [("report.json", report.to_json()), ("report.txt", report.to_text())] {
                    let path = dir.join(name);
                    fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                }
            }
            print!("{}", if json { report.to_json() } else { report.to_text() });
            Ok(report.exit_code)
        }
        Cmd::Fmt { session } => {
            let text = read(&session)?;
            let file = parse_session(&text).map_err(|e| parse_error(&session.display().to_string(), &e))?;
            print!("{file}");
            Ok(0)
        }
        Cmd::Betti { module, common } => direct(&common, &format!("betti {module}")),
        Cmd::Pushforward { module, n, common } => direct(&common, &format!("pushforward {module} n={n}")),
        Cmd::Torsion { module, common } => direct(&common, &format!("torsion {module}")),
        Cmd::Verify {
            statement,
            args,
            common,
        } => direct(&common, &format!("verify {statement} {}", args.join(" "))),
    }
}

/// Runs `command` as the only task of a session built from `--session` or
/// the prelude.
fn direct(common: &Direct, command: &str) -> Result<i32, String> {
    let (base, source) = match &common.session {
        Some(path) => (read(path)?, path.display().to_string()),
        None => (prelude(common.p), "prelude".to_string()),
    };
    let file: SessionFile = single_task_session(&base, command).map_err(|e| parse_error(&source, &e))?;
    let name = common.session.as_deref().map_or("prelude".into(), session_name);
    let report = run_tasks(&file, &name, &options(common.seed, common.cap, false));
    if common.json {
        print!("{}", report.to_json());
    } else {
        let task = &report.tasks[0];
        print!("{}", task.text);
        if !task.text.ends_with('\n') {
            println!();
        }
    }
    Ok(report.exit_code)
}
