//! Command-line front end. [`run`] does all the work and returns the exit
//! status with the text to emit, so it can be driven from tests.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::array::{analyze, validate, ParameterArray};
use crate::error::Error;
use crate::families::{
    generate, generate_case0_d1, generate_case0_d2, generate_d2_counterexample, CaseData, CaseIData, CaseIIData,
    CaseMinusOneData, CaseVData,
};
use crate::field::{FieldDescriptor, FieldElement};
use crate::matrix::oracle_matrices;
use crate::sweep::{sweep, Family, SweepConfig};
use crate::theorems::check_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lpkit", version, about = "Exact Leonard pair parameter arrays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the parameter array conditions; exit 1 if any fails.
    Validate(InputArgs),
    /// Diagonal sequences, H, case, balance and bipartite flags.
    Analyze(InputArgs),
    /// Build a parameter array from a closed-form family.
    Generate(GenerateArgs),
    /// The split form, eigenbases and tridiagonal representations.
    Matrices(InputArgs),
    /// Evaluate every identity on one array; exit 1 if any fails.
    Verify(InputArgs),
    /// Generate and verify many seeded samples; exit 1 on any failure.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Path to a JSON file, inline JSON, or `-` for stdin.
    pub input: String,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// case1, case2, case3, case4, case5, d1, d2 or d2counter.
    pub family: String,
    #[arg(long, default_value = "rational")]
    pub field: FieldDescriptor,
    /// Diameter, for case1 through case4 (case5 only accepts 3).
    #[arg(long)]
    pub d: Option<usize>,
    /// Comma-separated `key=value` scalars, e.g. `q=2,eta=5,tau=0`.
    #[arg(long, default_value = "")]
    pub params: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Samples per supported (family, field) pair.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Comma-separated families: d1, d2, case1 … case5.
    #[arg(long, value_delimiter = ',')]
    pub families: Option<Vec<Family>>,
    /// Comma-separated fields, e.g. `rational,prime:7,binary:2`.
    #[arg(long, value_delimiter = ',')]
    pub fields: Option<Vec<FieldDescriptor>>,
    #[arg(long, default_value_t = 3)]
    pub d_min: usize,
    #[arg(long, default_value_t = 6)]
    pub d_max: usize,
}

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json(code: i32, text: String) -> Self {
        Outcome { code, stdout: text + "\n", stderr: String::new() }
    }

    fn error(code: i32, message: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: message.into() + "\n" }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Invalid(_) | Error::Violation(_) | Error::Precondition(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn failure(err: Error) -> Outcome {
    match err {
        Error::Invalid(report) => Outcome {
            code: EXIT_FAILED,
            stdout: serde_json::to_string(&report).expect("report serializes") + "\n",
            stderr: "invalid parameter array\n".into(),
        },
        other => Outcome::error(exit_code(&other), format!("error: {other}")),
    }
}

fn read_input(input: &str) -> Result<String, Error> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        return Ok(input.to_string());
    }
    let mut text = String::new();
    if input == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Structure(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(input).map_err(|e| Error::Structure(format!("{input}: {e}")))?;
    }
    Ok(text)
}

fn load(input: &str) -> Result<ParameterArray, Error> {
    ParameterArray::from_json(&read_input(input)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

/// Parsed `key=value` scalars with tracking of which keys were used.
struct Params {
    field: FieldDescriptor,
    values: BTreeMap<String, String>,
}

impl Params {
    fn parse(field: FieldDescriptor, text: &str) -> Result<Self, Error> {
        let mut values = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) =
                item.split_once('=').ok_or_else(|| Error::Structure(format!("parameter {item:?} is not key=value")))?;
            if values.insert(key.trim().to_string(), value.trim().to_string()).is_some() {
                return Err(Error::Structure(format!("parameter {key:?} given twice")));
            }
        }
        Ok(Params { field, values })
    }

    fn take(&mut self, key: &str) -> Result<FieldElement, Error> {
        let text = self.values.remove(key).ok_or_else(|| Error::Structure(format!("missing parameter {key:?}")))?;
        Ok(self.field.parse(&text)?)
    }

    fn take_all<const N: usize>(&mut self, keys: [&str; N]) -> Result<[FieldElement; N], Error> {
        let mut out = Vec::with_capacity(N);
        for key in keys {
            out.push(self.take(key)?);
        }
        Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
    }

    fn finish(self) -> Result<(), Error> {
        match self.values.keys().next() {
            Some(key) => Err(Error::Structure(format!("unknown parameter {key:?}"))),
            None => Ok(()),
        }
    }
}

fn need_d(d: Option<usize>) -> Result<usize, Error> {
    d.ok_or_else(|| Error::Structure("--d is required for this family".into()))
}

fn generate_from_args(args: &GenerateArgs) -> Result<ParameterArray, Error> {
    let mut p = Params::parse(args.field, &args.params)?;
    let pa = match args.family.as_str() {
        "case1" => {
            let d = need_d(args.d)?;
            let [q, eta, mu, h, eta_star, mu_star, h_star, tau] =
                p.take_all(["q", "eta", "mu", "h", "eta_star", "mu_star", "h_star", "tau"])?;
            p.finish()?;
            generate(&CaseData::I(CaseIData { d, q, eta, mu, h, eta_star, mu_star, h_star, tau }))?
        }
        "case2" => {
            let d = need_d(args.d)?;
            let [eta, mu, h, eta_star, mu_star, h_star, tau] =
                p.take_all(["eta", "mu", "h", "eta_star", "mu_star", "h_star", "tau"])?;
            p.finish()?;
            generate(&CaseData::II(CaseIIData { d, eta, mu, h, eta_star, mu_star, h_star, tau }))?
        }
        family @ ("case3" | "case4") => {
            let d = need_d(args.d)?;
            let [eta, h, s, eta_star, h_star, s_star, tau] =
                p.take_all(["eta", "h", "s", "eta_star", "h_star", "s_star", "tau"])?;
            p.finish()?;
            let data = CaseMinusOneData { d, eta, h, s, eta_star, h_star, s_star, tau };
            generate(&if family == "case3" { CaseData::III(data) } else { CaseData::IV(data) })?
        }
        "case5" => {
            if args.d.is_some_and(|d| d != 3) {
                return Err(Error::Precondition("case5 exists only for d = 3".into()));
            }
            let [theta0, theta0_star, h, s, h_star, s_star, r] =
                p.take_all(["theta0", "theta0_star", "h", "s", "h_star", "s_star", "r"])?;
            p.finish()?;
            generate(&CaseData::V(CaseVData { theta0, theta0_star, h, s, h_star, s_star, r }))?
        }
        "d1" => {
            let [t0, t1, s0, s1, varphi1] =
                p.take_all(["theta0", "theta1", "theta_star0", "theta_star1", "varphi1"])?;
            p.finish()?;
            generate_case0_d1([t0, t1], [s0, s1], varphi1)?
        }
        family @ ("d2" | "d2counter") => {
            let [t0, t1, t2, s0, s1, s2] =
                p.take_all(["theta0", "theta1", "theta2", "theta_star0", "theta_star1", "theta_star2"])?;
            if family == "d2" {
                let h = p.take("H")?;
                p.finish()?;
                generate_case0_d2([t0, t1, t2], [s0, s1, s2], h)?
            } else {
                p.finish()?;
                generate_d2_counterexample([t0, t1, t2], [s0, s1, s2])?
            }
        }
        other => return Err(Error::Structure(format!("unknown family {other:?}"))),
    };
    Ok(pa)
}

fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Validate(args) => load(&args.input).map(|pa| {
            let report = validate(&pa);
            let code = if report.is_valid() { EXIT_OK } else { EXIT_FAILED };
            Outcome::json(code, to_json(&report))
        }),
        Command::Analyze(args) => {
            load(&args.input).and_then(|pa| analyze(&pa)).map(|r| Outcome::json(EXIT_OK, to_json(&r)))
        }
        Command::Generate(args) => generate_from_args(args).map(|pa| Outcome::json(EXIT_OK, pa.to_json())),
        Command::Matrices(args) => {
            load(&args.input).and_then(|pa| oracle_matrices(&pa)).map(|m| Outcome::json(EXIT_OK, to_json(&m)))
        }
        Command::Verify(args) => load(&args.input).and_then(|pa| check_all(&pa)).map(|report| {
            let code = if report.holds { EXIT_OK } else { EXIT_FAILED };
            Outcome::json(code, to_json(&report))
        }),
        Command::Sweep(args) => {
            let defaults = SweepConfig::default();
            let config = SweepConfig {
                seed: args.seed,
                samples: args.samples,
                families: args.families.clone().unwrap_or(defaults.families),
                fields: args.fields.clone().unwrap_or(defaults.fields),
                d_min: args.d_min,
                d_max: args.d_max,
            };
            let summary = sweep(&config);
            let code = if summary.failures == 0 { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome::json(code, summary.to_json()))
        }
    };
    result.unwrap_or_else(failure)
}

/// Parses `args` (including the program name) and runs the command. With
/// `--output`, the JSON goes to that file and stdout stays empty.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut outcome = execute(&cli);
    if let Some(path) = &cli.output {
        if !outcome.stdout.is_empty() {
            if let Err(e) = std::fs::write(path, &outcome.stdout) {
                return Outcome::error(EXIT_USAGE, format!("error: {}: {e}", path.display()));
            }
            outcome.stdout.clear();
        }
    }
    outcome
}
