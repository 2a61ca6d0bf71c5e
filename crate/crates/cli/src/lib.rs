//! Session runner and command-line front end for `frob-core`.

pub mod run;
pub mod session;

pub use run::{run_tasks, RunOptions, SessionReport, TaskReport, TaskStatus, SCHEMA_ID, SCHEMA_VERSION};
pub use session::{parse_session, ErrorCode, SessionError, SessionFile};

/// Exit code when the session cannot be parsed or the run cannot start.
pub const EXIT_ENGINE_ERROR: i32 = 3;

/// Declarations available to the direct subcommands when no session file is
/// given: the double line, the node and the (3,4,5) curve over `F_p`, each
/// with its rank-one free module `<ring>_R` and residue field `<ring>_k`.
pub fn prelude(p: u64) -> String {
    let mut s = format!(
        "ring double_line\n  p = {p}\n  vars = x, y\n  ideal = x^2\nend\n\
         ring node\n  p = {p}\n  vars = x, y\n  ideal = x*y\nend\n\
         ring curve_345\n  p = {p}\n  vars = x, y, z\n  weights = 3, 4, 5\n\
         \x20 ideal = y^2 - x*z, x^3 - y*z, x^2*y - z^2\n\
         \x20 prime = y^2 - x*z, x^3 - y*z, x^2*y - z^2\nend\n"
    );
    for r in ["double_line", "node", "curve_345"] {
        s.push_str(&format!("let {r}_R = free {r} 0\nlet {r}_k = residue {r}\n"));
    }
    s
}

/// The declarations of `base` followed by the single task `command`. Errors
/// located in `command` are reported with line 0.
pub fn single_task_session(base: &str, command: &str) -> Result<SessionFile, SessionError> {
    let decls = parse_session(base)?.declarations_only();
    let text = format!("{decls}{command}\n");
    let last = text.lines().count();
    parse_session(&text).map_err(|mut e| {
        if e.line == last {
            e.line = 0;
        }
        e
    })
}
