//! Runs an external SAT solver on DIMACS files.
//!
//! The command template is split shell-style; every `{cnf}` is replaced by
//! the path of the instance file (appended if no placeholder is present).
//! The verdict is read from the solver's `s` line, never its exit code.

use std::env;
use std::fs::{self, File};
use std::io;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::Duration;

use mramsey_core::cegar::{SatSolver, SolverError};
use mramsey_core::cnf::{parse_solver_output, CnfInstance, SolverAnswer};
use mramsey_core::ColoringProblem;
use tempfile::TempDir;
use wait_timeout::ChildExt;

pub const SOLVER_ENV: &str = "MRAMSEY_SAT_SOLVER";
pub const BUNDLED_SOLVER: &str = "mramsey-sat";

/// The bundled solver next to the running executable (or one directory up,
/// which is where test harnesses live).
pub fn bundled_solver_path() -> Option<PathBuf> {
    let exe = env::current_exe().ok()?;
    let name = format!("{BUNDLED_SOLVER}{}", env::consts::EXE_SUFFIX);
    exe.ancestors()
        .skip(1)
        .take(2)
        .map(|dir| dir.join(&name))
        .find(|p| p.is_file())
}

/// `MRAMSEY_SAT_SOLVER` when set, else the bundled solver.
pub fn default_template() -> Option<String> {
    match env::var(SOLVER_ENV) {
        Ok(t) if !t.trim().is_empty() => Some(t),
        _ => bundled_solver_path().map(|p| {
            let quoted = shlex::try_quote(&p.to_string_lossy()).map(|q| q.into_owned());
            format!("{} {{cnf}}", quoted.unwrap_or_else(|_| p.to_string_lossy().into_owned()))
        }),
    }
}

pub struct SolverBridge {
    template: Vec<String>,
    dir: TempDir,
    timeout: Option<Duration>,
    calls: u64,
}

impl SolverBridge {
    pub fn new(template: &str) -> io::Result<Self> {
        let tokens = shlex::split(template)
            .filter(|t| !t.is_empty())
            .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, format!("bad solver command `{template}`")))?;
        Ok(SolverBridge {
            template: tokens,
            dir: tempfile::Builder::new().prefix("mramsey-cnf-").tempdir()?,
            timeout: None,
            calls: 0,
        })
    }

    pub fn from_env() -> io::Result<Self> {
        let template = default_template().ok_or_else(|| {
            io::Error::new(
                io::ErrorKind::NotFound,
                format!("no SAT solver: set {SOLVER_ENV} or install {BUNDLED_SOLVER} next to this program"),
            )
        })?;
        Self::new(&template)
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn workdir(&self) -> &Path {
        self.dir.path()
    }

    pub fn cnf_path(&self) -> PathBuf {
        self.dir.path().join("instance.cnf")
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Writes the variable map for `problem` next to the CNF file.
    pub fn write_map(&self, problem: &ColoringProblem, cnf: &CnfInstance) -> io::Result<PathBuf> {
        let path = self.dir.path().join("instance.map");
        fs::write(&path, cnf.map_text(problem))?;
        Ok(path)
    }

    fn command(&self, cnf: &Path) -> Command {
        let cnf = cnf.to_string_lossy();
        let mut args: Vec<String> = self.template.iter().map(|t| t.replace("{cnf}", &cnf)).collect();
        if !self.template.iter().any(|t| t.contains("{cnf}")) {
            args.push(cnf.into_owned());
        }
        let mut cmd = Command::new(&args[0]);
        cmd.args(&args[1..]);
        cmd
    }
}

impl SatSolver for SolverBridge {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SolverAnswer, SolverError> {
        self.calls += 1;
        let io_err = |what: &str, e: io::Error| SolverError::Failed(format!("{what}: {e}"));
        let path = self.cnf_path();
        fs::write(&path, cnf.to_dimacs()).map_err(|e| io_err("writing CNF", e))?;
        let out_path = self.dir.path().join("solver.out");
        let out = File::create(&out_path).map_err(|e| io_err("creating output file", e))?;
        let mut child = self
            .command(&path)
            .stdin(Stdio::null())
            .stdout(out)
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| io_err(&format!("starting `{}`", self.template[0]), e))?;
        let status = match self.timeout {
            Some(limit) => match child.wait_timeout(limit).map_err(|e| io_err("waiting", e))? {
                Some(s) => s,
                None => {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(SolverError::Timeout);
                }
            },
            None => child.wait().map_err(|e| io_err("waiting", e))?,
        };
        let text = fs::read_to_string(&out_path).map_err(|e| io_err("reading output", e))?;
        match parse_solver_output(&text, cnf.num_vars()) {
            Ok(answer) => Ok(answer),
            // a crash usually leaves no status line
            Err(e) if !status.success() && e.line == 0 => Err(SolverError::Failed(format!("solver exited with {status}"))),
            Err(e) => Err(e.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placeholder_substitution() {
        let b = SolverBridge::new("solver --quiet {cnf} --x").unwrap();
        let cmd = b.command(Path::new("/w/a.cnf"));
        let args: Vec<_> = cmd.get_args().map(|a| a.to_string_lossy().into_owned()).collect();
        assert_eq!(args, ["--quiet", "/w/a.cnf", "--x"]);
        let b = SolverBridge::new("'my solver'").unwrap();
        let cmd = b.command(Path::new("/w/a.cnf"));
        assert_eq!(cmd.get_program(), "my solver");
        assert_eq!(cmd.get_args().count(), 1);
        assert!(SolverBridge::new("").is_err());
    }

    #[test]
    fn missing_program_is_a_failure() {
        let mut b = SolverBridge::new("/nonexistent/solver").unwrap();
        let p = ColoringProblem::new(
            mramsey_core::PartitionShape::new(2, 1).unwrap(),
            vec![mramsey_core::TargetPattern::Stripe(1)],
        )
        .unwrap();
        let cnf = mramsey_core::cnf::encode_eager(&p, &Default::default());
        assert!(matches!(b.solve(&cnf), Err(SolverError::Failed(_))));
    }
}
