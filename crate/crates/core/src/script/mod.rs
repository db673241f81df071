//! Session scripts: ring and map declarations followed by command
//! statements, plus the command runner shared by the binary and the C API.
//!
//! ```text
//! ring R = QQ[x,y,z];
//! ring C = GF(101)[x,y,z] / (x^4+x^2*y*z+y^4+z^3*x);
//! map F : R -> R = [x^2*y, x^2*z, x*y*z];
//! base-locus F;
//! inverse F --strategy rees --verbose;
//! ```
//!
//! `//` starts a comment, and so does `--` when it is not directly followed
//! by a letter (so `--verbose` stays a flag).

mod commands;
mod parser;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::field::{PrimeField, RationalField};
use crate::rational_map::RationalMap;
use crate::variety::Variety;

pub use commands::{Flags, Statement, StatementKind};

/// A diagnostic with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ScriptError {}

/// Exit status of a command, also used as the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum Status {
    Ok = 0,
    Invalid = 1,
    Negative = 2,
    StepLimit = 3,
}

/// Text produced by running commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            status: Status::Ok,
            stdout: String::new(),
            stderr: String::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum AnyVariety {
    Rational(Arc<Variety<RationalField>>),
    Prime(Arc<Variety<PrimeField>>),
}

#[derive(Clone, Debug)]
pub(crate) enum AnyMap {
    Rational(RationalMap<RationalField>),
    Prime(RationalMap<PrimeField>),
}

/// A parsed script: its declarations and the commands to run, in order.
#[derive(Clone, Debug, Default)]
pub struct Session {
    rings: HashMap<String, AnyVariety>,
    maps: HashMap<String, AnyMap>,
    statements: Vec<(usize, usize, Statement)>,
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, ScriptError> {
        parser::parse(text)
    }

    pub fn ring_names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.rings.keys().map(String::as_str).collect();
        v.sort();
        v
    }

    pub fn map_names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.maps.keys().map(String::as_str).collect();
        v.sort();
        v
    }

    /// Command statements of the script with their line and column.
    pub fn statements(&self) -> &[(usize, usize, Statement)] {
        &self.statements
    }

    /// Runs every command statement in order and stops at the first one
    /// that does not succeed. `force_verbose` turns tracing on for all.
    pub fn run_all(&self, force_verbose: bool) -> Outcome {
        let mut total = Outcome::new();
        for (line, column, st) in &self.statements {
            let mut st = st.clone();
            st.flags.verbose |= force_verbose;
            let out = self.execute(&st);
            total.stdout.push_str(&out.stdout);
            if out.status != Status::Ok {
                total.stderr.push_str(&format!("{line}:{column}: "));
            }
            total.stderr.push_str(&out.stderr);
            if out.status != Status::Ok {
                total.status = out.status;
                break;
            }
        }
        total
    }

    /// Parses and runs one command given as text, e.g. `inverse F --verbose`.
    pub fn run_line(&self, line: &str) -> Outcome {
        match Statement::parse_words(&line.split_whitespace().collect::<Vec<_>>()) {
            Ok(st) => self.execute(&st),
            Err(msg) => Outcome {
                status: Status::Invalid,
                stdout: String::new(),
                stderr: format!("{msg}\n"),
            },
        }
    }

    /// Runs one command.
    pub fn execute(&self, st: &Statement) -> Outcome {
        commands::execute(self, st)
    }
}
