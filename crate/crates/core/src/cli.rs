//! Command-line front end. Every command prints one JSON [`Report`].

use std::fs;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{enumerate_masts, finite_type_report, quotient_check, uniserdim, AnalysisOptions};
use crate::detour::MastContext;
use crate::error::Error;
use crate::field::Rationals;
use crate::linalg::{commutator, is_zero_matrix};
use crate::par::Execution;
use crate::presentation::{parse_path, parse_point, parse_presentation, parse_sequence, AlgebraPresentation};
use crate::quiver::Path;
use crate::rep::{endo_basis_oracle, fiber_report, realize, same_fiber, verify, RepresentationPoint};
use crate::report::{self, Report};
use crate::variety::{build_variety, count_points, find_point_mod, UniserialPoint, VarietyModel};

#[derive(Parser, Debug)]
#[command(name = "uniserial", version, about = "Uniserial representation varieties of path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Presentation file.
    #[arg(long)]
    input: String,
    /// Points per patch used for generic ranks.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate and echo a presentation.
    Parse(Common),
    /// List paths with nonempty variety.
    Masts {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Detours and coordinates of a path.
    Detours {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: String,
    },
    /// Defining polynomials and classification of V_p.
    Variety {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: String,
        /// A prime `q` also searches for a point over F_q.
        #[arg(long)]
        field: Option<String>,
    },
    /// A(k), its rank and the fiber dimension at a point.
    Fiber {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: String,
        #[arg(long, default_value = "")]
        point: String,
    },
    /// Endomorphism algebra at a point, by direct nullspace computation.
    Endo {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: String,
        #[arg(long, default_value = "")]
        point: String,
    },
    /// Whether two points give isomorphic modules. Pass `--point` twice; a
    /// second `--path` names the mast of the second point.
    Isomorphic {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 1, required = true)]
        path: Vec<String>,
        #[arg(long, num_args = 1, required = true)]
        point: Vec<String>,
    },
    /// Uniserial dimension at a sequence of simples.
    Uniserdim {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sequence: String,
    },
    /// Whether A(k) vanishes on every patch through a sequence.
    QuotientCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sequence: String,
    },
    /// Finite uniserial type verdict.
    FiniteType {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Number of F_q-points of V_p.
    CountPoints {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: String,
        #[arg(long)]
        field: String,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Parse(c) => c,
            Command::Masts { common, .. }
            | Command::Detours { common, .. }
            | Command::Variety { common, .. }
            | Command::Fiber { common, .. }
            | Command::Endo { common, .. }
            | Command::Isomorphic { common, .. }
            | Command::Uniserdim { common, .. }
            | Command::QuotientCheck { common, .. }
            | Command::FiniteType { common, .. }
            | Command::CountPoints { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Parse(_) => "parse",
            Command::Masts { .. } => "masts",
            Command::Detours { .. } => "detours",
            Command::Variety { .. } => "variety",
            Command::Fiber { .. } => "fiber",
            Command::Endo { .. } => "endo",
            Command::Isomorphic { .. } => "isomorphic",
            Command::Uniserdim { .. } => "uniserdim",
            Command::QuotientCheck { .. } => "quotient-check",
            Command::FiniteType { .. } => "finite-type",
            Command::CountPoints { .. } => "count-points",
        }
    }
}

impl Common {
    fn options(&self) -> AnalysisOptions {
        let execution = if self.sequential { Execution::Sequential } else { Execution::default() };
        AnalysisOptions { samples: self.samples, seed: self.seed, execution }
    }
}

/// Outcome of one invocation: exit code and the text for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli<I, S>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = cli.command.name();
    let input = match fs::read(&cli.command.common().input) {
        Ok(bytes) => bytes,
        Err(e) => {
            let msg = format!("cannot read {}: {e}", cli.command.common().input);
            let report = Report::new(name, b"", Value::Null, vec![msg.clone()]);
            return CliOutput { code: 2, stdout: report.to_json(), stderr: msg };
        }
    };
    let outcome = std::str::from_utf8(&input)
        .map_err(|_| Error::parse(1, "input is not UTF-8"))
        .and_then(parse_presentation)
        .and_then(|p| execute(&cli.command, &p));
    match outcome {
        Ok((result, diagnostics)) => {
            CliOutput { code: 0, stdout: Report::new(name, &input, result, diagnostics).to_json(), stderr: String::new() }
        }
        Err(e) => {
            let msg = e.to_string();
            let report = Report::new(name, &input, Value::Null, vec![msg.clone()]);
            CliOutput { code: e.exit_code(), stdout: report.to_json(), stderr: msg }
        }
    }
}

type Outcome = Result<(Value, Vec<String>), Error>;

fn default_max_len(p: &AlgebraPresentation, max_len: Option<usize>) -> usize {
    max_len.unwrap_or(p.loewy_bound().saturating_sub(1))
}

/// Realized representation at a point given on the command line, which must
/// lie on the variety.
fn realized_point(p: &AlgebraPresentation, model: &VarietyModel, text: &str) -> Result<RepresentationPoint<crate::field::Rational>, Error> {
    if model.is_empty() {
        return Err(Error::domain("the variety of this path is empty"));
    }
    let coords = parse_point(text, p.quiver(), model.context())?;
    let k = UniserialPoint::new(model, coords)?;
    let x = realize(&Rationals, p.quiver(), model.context(), k.coords());
    let check = verify(p, model.context(), &x);
    if !check.ok {
        return Err(Error::domain(check.diagnostics.join("; ")));
    }
    Ok(x)
}

fn prime_arg(text: &str) -> Result<u64, Error> {
    text.trim().parse::<u64>().map_err(|_| Error::invalid(format!("`{text}` is not a prime modulus")))
}

fn execute(command: &Command, p: &AlgebraPresentation) -> Outcome {
    let quiver = p.quiver();
    let opts = command.common().options();
    let path = |text: &str| -> Result<Path, Error> { parse_path(text, quiver) };
    match command {
        Command::Parse(_) => Ok((report::presentation_json(p), vec![])),
        Command::Masts { max_len, .. } => {
            let max_len = default_max_len(p, *max_len);
            let masts = enumerate_masts(p, max_len, &opts)?;
            Ok((report::masts_json(quiver, max_len, &masts), vec![]))
        }
        Command::Detours { path: text, .. } => {
            let ctx = MastContext::new(quiver, &path(text)?);
            Ok((report::detours_json(quiver, &ctx), vec![]))
        }
        Command::Variety { path: text, field, .. } => {
            let model = build_variety(p, &path(text)?);
            let mut result = report::variety_json(quiver, &model);
            if let Some(field) = field.as_deref().filter(|f| *f != "Q") {
                let q = prime_arg(field)?;
                let point = find_point_mod(&model, q)?;
                result["point_mod_q"] = json!({ "q": q, "point": point });
            }
            Ok((result, vec![]))
        }
        Command::Fiber { path: text, point, .. } => {
            let model = build_variety(p, &path(text)?);
            let x = realized_point(p, &model, point)?;
            Ok((report::fiber_json(&fiber_report(model.context(), &x)), vec![]))
        }
        Command::Endo { path: text, point, .. } => {
            let model = build_variety(p, &path(text)?);
            let x = realized_point(p, &model, point)?;
            let basis = endo_basis_oracle(&Rationals, &x);
            let commutative = basis
                .iter()
                .all(|a| basis.iter().all(|b| is_zero_matrix(&Rationals, &commutator(&Rationals, a, b))));
            Ok((report::endo_json(&basis, commutative), vec![]))
        }
        Command::Isomorphic { path: paths, point, .. } => {
            if point.len() != 2 || paths.len() > 2 {
                return Err(Error::invalid("isomorphic takes exactly two --point values and one or two --path values"));
            }
            let first = build_variety(p, &path(&paths[0])?);
            let second = match paths.get(1) {
                Some(t) => build_variety(p, &path(t)?),
                None => first.clone(),
            };
            let x = realized_point(p, &first, &point[0])?;
            let y = realized_point(p, &second, &point[1])?;
            let iso = same_fiber(&Rationals, first.context(), &x, second.context(), &y)?;
            Ok((json!({ "isomorphic": iso }), vec![]))
        }
        Command::Uniserdim { sequence, .. } => {
            let seq = parse_sequence(sequence, quiver)?;
            let r = uniserdim(p, &seq, &opts);
            let diagnostics = r.per_path.iter().flat_map(|x| x.diagnostics.clone()).collect();
            Ok((report::uniserdim_json(quiver, &r), diagnostics))
        }
        Command::QuotientCheck { sequence, .. } => {
            let seq = parse_sequence(sequence, quiver)?;
            Ok((report::quotient_json(quiver, p, &quotient_check(p, &seq, &opts)), vec![]))
        }
        Command::FiniteType { max_len, .. } => {
            let v = finite_type_report(p, default_max_len(p, *max_len), &opts)?;
            Ok((report::finite_type_json(quiver, &v), vec![]))
        }
        Command::CountPoints { path: text, field, .. } => {
            let q = prime_arg(field)?;
            let model = build_variety(p, &path(text)?);
            let count = count_points(&model, q, opts.execution)?;
            Ok((json!({ "q": q, "count": count, "dimension": model.dimension() }), vec![]))
        }
    }
}
