use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use super::{AnyMap, Outcome, Session, Status};
use crate::error::Error;
use crate::families::gabber;
use crate::field::{Field, PrimeField};
use crate::inverse::{inverse_of_map, is_birational, is_embedding, jacobian_dual, InverseOptions, Strategy};
use crate::rational_map::{format_forms, format_ideal, RationalMap};

fn on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => Err(format!("expected `on` or `off`, found `{s}`")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, found `{s}`")),
    }
}

fn minors(s: &str) -> Result<Option<u32>, String> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse::<u32>().map(Some).map_err(|_| format!("expected a count or `auto`, found `{s}`"))
}

/// Options shared by every command.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    /// How Rees relations are computed: hybrid, rees, simis or saturation.
    #[arg(long, global = true, default_value = "hybrid", value_parser = |s: &str| s.parse::<Strategy>().map_err(|e| e.to_string()))]
    pub strategy: Strategy,
    /// Last truncated stage degree before the hybrid strategy completes the basis.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..))]
    pub hybrid_limit: u32,
    /// Submatrix draws when looking for minors: a count, `auto`, or 0 for syzygies only.
    #[arg(long, global = true, default_value = "auto", value_parser = minors)]
    pub minors_count: std::option::Option<u32>,
    /// Certify ranks at random points first (on/off).
    #[arg(long, global = true, default_value = "on", action = clap::ArgAction::Set, value_parser = on_off)]
    pub quick_rank: bool,
    /// Treat the target as the image instead of computing it.
    #[arg(long, global = true)]
    pub assume_dominant: bool,
    /// Refuse to invert maps that are not birational (on/off).
    #[arg(long, global = true, default_value = "on", action = clap::ArgAction::Set, value_parser = on_off)]
    pub check_birational: bool,
    /// Saturate base loci by the irrelevant ideal (on/off).
    #[arg(long, global = true, default_value = "on", action = clap::ArgAction::Set, value_parser = on_off)]
    pub saturate_output: bool,
    /// Report progress on stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Stages allowed to the pure truncated strategy.
    #[arg(long, global = true, default_value_t = 30, value_parser = positive_usize)]
    pub step_limit: usize,
}

impl Default for Flags {
    fn default() -> Self {
        Statement::parse_words(&["is-dominant", "_"]).expect("defaults parse").flags
    }
}

impl Flags {
    pub fn inverse_options(&self) -> InverseOptions {
        InverseOptions {
            strategy: self.strategy,
            hybrid_limit: self.hybrid_limit,
            minors_count: self.minors_count,
            assume_dominant: self.assume_dominant,
            check_birational: self.check_birational,
            quick_rank: self.quick_rank,
            seed: self.seed,
            step_limit: self.step_limit,
        }
    }
}

/// The command part of a statement.
#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    /// Ideal of points where no representative of the map is defined.
    BaseLocus { map: String },
    /// Ideal of the closure of the image.
    Image { map: String },
    /// Whether the image fills the target.
    IsDominant { map: String },
    /// Whether the map is birational onto its image.
    IsBirational { map: String },
    /// Forms of the inverse map.
    Inverse { map: String },
    /// Whether the map is a closed embedding.
    IsEmbedding { map: String },
    /// Whether two maps agree as rational maps.
    IsSame { map: String, other: String },
    /// Rees relations used by the chosen strategy.
    Rees { map: String },
    /// Jacobian dual matrix and its rank.
    JacobianDual { map: String },
    /// Inverts the degree-d map of the Gabber family on P^n over GF(101).
    BenchGabber { n: usize, d: u32 },
}

/// A parsed command with its options.
#[derive(Parser, Clone, Debug, PartialEq, Eq)]
#[command(no_binary_name = true, disable_help_subcommand = true)]
pub struct Statement {
    #[command(subcommand)]
    pub kind: StatementKind,
    #[command(flatten)]
    pub flags: Flags,
}

impl Statement {
    /// Parses `command args... --flags`.
    pub fn parse_words(words: &[&str]) -> Result<Statement, String> {
        Statement::try_parse_from(words).map_err(|e| {
            let text = e.to_string();
            text.lines().next().unwrap_or("invalid command").trim_start_matches("error: ").to_string()
        })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            StatementKind::BaseLocus { .. } => "base-locus",
            StatementKind::Image { .. } => "image",
            StatementKind::IsDominant { .. } => "is-dominant",
            StatementKind::IsBirational { .. } => "is-birational",
            StatementKind::Inverse { .. } => "inverse",
            StatementKind::IsEmbedding { .. } => "is-embedding",
            StatementKind::IsSame { .. } => "is-same",
            StatementKind::Rees { .. } => "rees",
            StatementKind::JacobianDual { .. } => "jacobian-dual",
            StatementKind::BenchGabber { .. } => "bench-gabber",
        }
    }

    /// Names of the maps the command refers to.
    pub fn map_names(&self) -> Vec<&str> {
        match &self.kind {
            StatementKind::BaseLocus { map }
            | StatementKind::Image { map }
            | StatementKind::IsDominant { map }
            | StatementKind::IsBirational { map }
            | StatementKind::Inverse { map }
            | StatementKind::IsEmbedding { map }
            | StatementKind::Rees { map }
            | StatementKind::JacobianDual { map } => vec![map.as_str()],
            StatementKind::IsSame { map, other } => vec![map.as_str(), other.as_str()],
            StatementKind::BenchGabber { .. } => Vec::new(),
        }
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::StepLimitExceeded { .. } => Status::StepLimit,
        Error::NotBirational | Error::NoInverseFound | Error::NotDomain => Status::Negative,
        _ => Status::Invalid,
    }
}

pub(super) fn execute(session: &Session, st: &Statement) -> Outcome {
    let mut out = Outcome::new();
    let mut log = String::new();
    let verbose = st.flags.verbose;
    let name = st.name();
    let mut trace = |msg: &str| {
        if verbose {
            log.push_str(&format!("{name}: {msg}\n"));
        }
    };
    let result = match &st.kind {
        StatementKind::BenchGabber { n, d } => bench_gabber(*n, *d, st, &mut trace),
        StatementKind::IsSame { map, other } => match (session.maps.get(map), session.maps.get(other)) {
            (Some(AnyMap::Rational(f)), Some(AnyMap::Rational(g))) => same(f, g),
            (Some(AnyMap::Prime(f)), Some(AnyMap::Prime(g))) => same(f, g),
            (Some(_), Some(_)) => Err(Error::SourceTargetMismatch),
            (None, _) => Err(Error::Invalid(format!("undeclared map `{map}`"))),
            (_, None) => Err(Error::Invalid(format!("undeclared map `{other}`"))),
        },
        kind => {
            let map_name = st.map_names()[0];
            match session.maps.get(map_name) {
                Some(AnyMap::Rational(f)) => run_on(f, kind, st, &mut trace),
                Some(AnyMap::Prime(f)) => run_on(f, kind, st, &mut trace),
                None => Err(Error::Invalid(format!("undeclared map `{map_name}`"))),
            }
        }
    };
    out.stderr = log;
    match result {
        Ok(text) => out.stdout = text,
        Err(e) => {
            out.status = status_of(&e);
            out.stderr.push_str(&format!("{name}: {e}\n"));
        }
    }
    out
}

fn same<F: Field>(f: &RationalMap<F>, g: &RationalMap<F>) -> Result<String, Error> {
    Ok(format!("{}\n", f.is_same_map(g)?))
}

fn run_on<F: Field>(f: &RationalMap<F>, kind: &StatementKind, st: &Statement, trace: &mut dyn FnMut(&str)) -> Result<String, Error> {
    let opts = st.flags.inverse_options();
    Ok(match kind {
        StatementKind::BaseLocus { .. } => format!("{}\n", format_ideal(&f.base_locus(st.flags.saturate_output)?)),
        StatementKind::Image { .. } => format!("{}\n", format_ideal(&f.ideal_of_image()?)),
        StatementKind::IsDominant { .. } => format!("{}\n", f.is_dominant()?),
        StatementKind::IsBirational { .. } => format!("{}\n", is_birational(f, &opts, trace)?),
        StatementKind::Inverse { .. } => format!("{}\n", format_forms(inverse_of_map(f, &opts, trace)?.forms())),
        StatementKind::IsEmbedding { .. } => format!("{}\n", is_embedding(f, &opts, trace)?),
        StatementKind::Rees { .. } => {
            let a = jacobian_dual(f, &opts, trace)?;
            let state = match a.chunk.truncated_at {
                Some(n) => format!("-- truncated at (1,{n})\n"),
                None => String::new(),
            };
            format!("{state}{}", a.chunk)
        }
        StatementKind::JacobianDual { .. } => {
            let a = jacobian_dual(f, &opts, trace)?;
            format!("{}rank {} of {}\n", a.dual, a.rank, a.edim() - 1)
        }
        StatementKind::IsSame { .. } | StatementKind::BenchGabber { .. } => unreachable!("handled by the caller"),
    })
}

fn bench_gabber(n: usize, d: u32, st: &Statement, trace: &mut dyn FnMut(&str)) -> Result<String, Error> {
    if n < 2 || d < 1 {
        return Err(Error::Invalid("bench-gabber needs n >= 2 and d >= 1".into()));
    }
    let k = PrimeField::new(101).expect("101 is prime");
    let map = gabber(&k, n, d)?;
    let opts = st.flags.inverse_options();
    let start = Instant::now();
    let inverse = inverse_of_map(&map, &opts, trace)?;
    let secs = start.elapsed().as_secs_f64();
    let expected = d.pow(n as u32 - 1);
    if inverse.degree() != expected {
        return Err(Error::Invalid(format!(
            "inverse has degree {}, expected {expected}",
            inverse.degree()
        )));
    }
    Ok(format!("n={n} d={d} inverse-degree={expected} seconds={secs:.4}\n"))
}
