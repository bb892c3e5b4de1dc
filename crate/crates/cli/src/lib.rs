//! Command-line front end: single checks, parameter sweeps and
//! machine-readable reports.
//!
//! [`run`] takes the argument vector and returns the exit code together
//! with everything destined for stdout and stderr, so the whole surface is
//! testable in-process. Exit codes: 0 when every emitted check passed,
//! 1 when at least one failed, 2 for usage or validation errors.

mod output;
mod sweep;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use binharm::combinatorics::harmonic;
use binharm::exact::{reduce_mod_pk, Rational, Residue};
use binharm::identities::{self, Params};
use binharm::padic::{self, GParams, HypSeriesSpec};
use binharm::ratfun;
use binharm::Error;

pub use output::Format;
pub use sweep::{SweepKind, SweepSpec};

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "binharm", version, about = "Exact checks of binomial/harmonic-sum identities and p-adic supercongruences")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// p-adic precision k (work modulo p^k).
    #[arg(long, global = true, default_value_t = 3)]
    prec: u32,

    /// Largest gamma table (in entries) that may be built.
    #[arg(long = "max-table", global = true)]
    max_table: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generalized harmonic sum H_n^(i).
    Harmonic {
        #[arg(long = "i")]
        order: u32,
        #[arg(long = "n")]
        n: u64,
    },
    /// Evaluate one identity exactly.
    Identity {
        #[command(subcommand)]
        which: IdentityCmd,
        /// Also compare the closed-form and Laurent-oracle decompositions.
        #[arg(long = "three-way", global = true)]
        three_way: bool,
    },
    /// Partial fraction decomposition: closed form against the Laurent oracle.
    Pfd {
        #[command(subcommand)]
        which: PfdCmd,
    },
    /// p-adic gamma function.
    Padic {
        #[command(subcommand)]
        which: PadicCmd,
    },
    /// The p-adic G function of a list of entries in (0, 1).
    Gfunction {
        #[arg(long)]
        p: u64,
        /// Comma-separated rationals, e.g. 1/5,2/5,3/5,4/5.
        #[arg(long, value_delimiter = ',', required = true)]
        entries: Vec<Rational>,
    },
    /// Truncated generalized hypergeometric series.
    Hyp {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        upper: Vec<Rational>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lower: Vec<Rational>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        z: Rational,
        #[arg(long)]
        trunc: u64,
        /// Also reduce the sum modulo p^prec.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Check G(1/d, r/d, 1-r/d, 1-1/d) ≡ 4F3(...)_{p-1} + s(p) p (mod p^3).
    Supercongruence {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
        /// Run even when p fails the congruence conditions.
        #[arg(long = "override")]
        allow_override: bool,
    },
    /// Evaluate a range of cases.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum IdentityCmd {
    Chu {
        #[arg(long)]
        n: u64,
    },
    Thm1 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    Thm2 {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        c1: Rational,
        #[arg(long, allow_hyphen_values = true)]
        c2: Rational,
    },
}

#[derive(Debug, Subcommand)]
enum PfdCmd {
    Thm1 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    Thm2 {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        c1: Rational,
        #[arg(long, allow_hyphen_values = true)]
        c2: Rational,
    },
}

#[derive(Debug, Subcommand)]
enum PadicCmd {
    /// Γ_p(x) mod p^prec for a p-integral rational x.
    Gamma {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: Rational,
    },
}

#[derive(Debug, Clone, Args)]
pub(crate) struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: SweepKind,
    #[arg(long = "min-l", default_value_t = 1)]
    pub min_l: u64,
    #[arg(long = "max-l")]
    pub max_l: Option<u64>,
    #[arg(long = "min-m", default_value_t = 1)]
    pub min_m: u64,
    #[arg(long = "max-m")]
    pub max_m: Option<u64>,
    #[arg(long = "min-n", default_value_t = 1)]
    pub min_n: u64,
    #[arg(long = "max-n")]
    pub max_n: Option<u64>,
    /// Weight pair "c1,c2" for thm2 sweeps; repeatable.
    #[arg(long = "c", value_parser = parse_pair, allow_hyphen_values = true)]
    pub c: Vec<(Rational, Rational)>,
    /// Also compare closed-form and oracle decompositions (identity kinds).
    #[arg(long = "three-way")]
    pub three_way: bool,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub pmin: u64,
    #[arg(long)]
    pub pmax: Option<u64>,
    #[arg(long = "override")]
    pub allow_override: bool,
}

fn parse_pair(s: &str) -> std::result::Result<(Rational, Rational), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected c1,c2 but got {s:?}"))?;
    let a = a.parse::<Rational>().map_err(|e| e.to_string())?;
    let b = b.parse::<Rational>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

#[derive(Serialize)]
struct HarmonicRecord {
    i: u32,
    n: u64,
    value: Rational,
}

#[derive(Serialize)]
struct GammaRecord {
    p: u64,
    x: Rational,
    value: Residue,
}

#[derive(Serialize)]
struct GRecord {
    p: u64,
    entries: Vec<Rational>,
    value: Residue,
}

#[derive(Serialize)]
struct HypRecord {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    z: Rational,
    truncation: u64,
    value: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    residue: Option<Residue>,
}

#[derive(Serialize)]
pub(crate) struct PfdRecord {
    pub kind: &'static str,
    pub params: Params,
    pub closed: ratfun::Pfd,
    pub oracle: ratfun::Pfd,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

pub(crate) fn pfd_record(params: &Params) -> binharm::Result<PfdRecord> {
    let (kind, closed, f) = match params {
        Params::Thm1 { m, n } => ("thm1", identities::coeffs_thm1_closed(*m, *n)?, ratfun::build_f_thm1(*m, *n)?),
        Params::Thm2 { l, m, n, c1, c2 } => (
            "thm2",
            identities::coeffs_thm2_closed(*l, *m, *n, c1, c2)?,
            ratfun::build_f_thm2(*l, *m, *n, c1, c2)?,
        ),
        Params::Chu { .. } => return Err(Error::InvalidShape("no decomposition for chu".into())),
    };
    let oracle = ratfun::laurent_pfd(&f)?;
    let mismatches = closed.differences(&oracle);
    Ok(PfdRecord {
        kind,
        params: params.clone(),
        pass: mismatches.is_empty(),
        closed,
        oracle,
        mismatches,
    })
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome::usage(text),
            };
        }
    };
    if let Some(cap) = cli.max_table {
        padic::set_table_cap(cap);
    }
    if cli.prec == 0 {
        return Outcome::usage("error: --prec must be at least 1");
    }
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}

fn single<T: Serialize>(format: Format, record: &T) -> binharm::Result<Outcome> {
    let value = serde_json::to_value(record).expect("reports serialize");
    let pass = value.get("pass").and_then(|v| v.as_bool()).unwrap_or(true);
    let mut stdout = String::new();
    output::write_records(format, std::slice::from_ref(&value), &mut stdout);
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn execute(cli: &Cli) -> binharm::Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Harmonic { order, n } => single(
            fmt,
            &HarmonicRecord {
                i: *order,
                n: *n,
                value: harmonic(*order, *n),
            },
        ),
        Command::Identity { which, three_way } => {
            let params = match which {
                IdentityCmd::Chu { n } => Params::Chu { n: *n },
                IdentityCmd::Thm1 { m, n } => Params::Thm1 { m: *m, n: *n },
                IdentityCmd::Thm2 { l, m, n, c1, c2 } => Params::Thm2 {
                    l: *l,
                    m: *m,
                    n: *n,
                    c1: c1.clone(),
                    c2: c2.clone(),
                },
            };
            let report = if *three_way {
                identities::three_way_check(&params)?
            } else {
                identities::check_identity(&params)?
            };
            single(fmt, &report)
        }
        Command::Pfd { which } => {
            let params = match which {
                PfdCmd::Thm1 { m, n } => Params::Thm1 { m: *m, n: *n },
                PfdCmd::Thm2 { l, m, n, c1, c2 } => Params::Thm2 {
                    l: *l,
                    m: *m,
                    n: *n,
                    c1: c1.clone(),
                    c2: c2.clone(),
                },
            };
            single(fmt, &pfd_record(&params)?)
        }
        Command::Padic {
            which: PadicCmd::Gamma { p, x },
        } => single(
            fmt,
            &GammaRecord {
                p: *p,
                x: x.clone(),
                value: padic::gamma_rational(x, *p, cli.prec)?,
            },
        ),
        Command::Gfunction { p, entries } => {
            let params = GParams::new(entries.clone(), *p, cli.prec)?;
            single(
                fmt,
                &GRecord {
                    p: *p,
                    entries: entries.clone(),
                    value: padic::g_function(&params)?,
                },
            )
        }
        Command::Hyp {
            upper,
            lower,
            z,
            trunc,
            p,
        } => {
            let spec = HypSeriesSpec::new(upper.clone(), lower.clone(), z.clone(), *trunc)?;
            let value = padic::trunc_hypergeometric(&spec)?;
            let residue = match p {
                Some(p) => Some(reduce_mod_pk(&value, *p, cli.prec)?),
                None => None,
            };
            single(
                fmt,
                &HypRecord {
                    upper: spec.upper,
                    lower: spec.lower,
                    z: spec.z,
                    truncation: spec.truncation,
                    value,
                    residue,
                },
            )
        }
        Command::Supercongruence {
            d,
            r,
            p,
            allow_override,
        } => single(fmt, &padic::verify_supercongruence_with(*d, *r, *p, *allow_override)?),
        Command::Sweep(args) => {
            let spec = SweepSpec::from_args(args, fmt)?;
            Ok(sweep::sweep(&spec))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> Outcome {
        run(std::iter::once("binharm").chain(line.split_whitespace()))
    }

    #[test]
    fn pair_parser() {
        assert_eq!(parse_pair("2,-3/2").unwrap(), ("2".parse().unwrap(), "-3/2".parse().unwrap()));
        assert!(parse_pair("2").is_err());
        assert!(parse_pair("a,b").is_err());
    }

    #[test]
    fn zero_precision_is_rejected() {
        assert_eq!(run_line("--prec 0 padic gamma --p 5 --x 1/2").code, 2);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_line("--help");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("supercongruence"));
    }
}
