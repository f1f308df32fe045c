//! Minimal DIMACS front end to CaDiCaL: `mramsey-sat <file.cnf>`.
//!
//! Prints `s SATISFIABLE` with the model on `v` lines, `s UNSATISFIABLE`, or
//! `s UNKNOWN`. Exit codes follow the SAT competition convention (10/20/0).

use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [path] = args.as_slice() else {
        eprintln!("usage: mramsey-sat <file.cnf>");
        return ExitCode::from(1);
    };
    let mut solver: cadical::Solver = cadical::Solver::new();
    if let Err(e) = solver.read_dimacs(Path::new(path)) {
        eprintln!("mramsey-sat: {path}: {e}");
        return ExitCode::from(1);
    }
    let out = io::stdout();
    let mut out = BufWriter::new(out.lock());
    let code = match solver.solve() {
        Some(true) => {
            let _ = writeln!(out, "s SATISFIABLE");
            let n = solver.max_variable();
            let mut line = String::from("v");
            for v in 1..=n {
                let lit = if solver.value(v) == Some(false) { -v } else { v };
                line.push_str(&format!(" {lit}"));
                if line.len() > 72 {
                    let _ = writeln!(out, "{line}");
                    line = String::from("v");
                }
            }
            let _ = writeln!(out, "{line} 0");
            10
        }
        Some(false) => {
            let _ = writeln!(out, "s UNSATISFIABLE");
            20
        }
        None => {
            let _ = writeln!(out, "s UNKNOWN");
            0
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
