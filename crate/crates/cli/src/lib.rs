//! The `fgl` command-line tool.
//!
//! Exit codes: 0 success, 1 a mathematical violation was found, 2 bad
//! input, 3 the requested order is beyond what the truncation supports.

mod commands;
pub mod json;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fgl_core::formal_group::FormalGroupLaw;
use fgl_core::hopf::{AlgebraSpec, HopfAlgebra, TensorElement, BUILTIN_ALGEBRAS};
use fgl_core::parse::parse_element;
use fgl_core::series::Series;
use fgl_core::Error;
use serde_json::Value;

use json::{AlgebraJson, GroupJson};

pub const DEFAULT_ORDER: u32 = 8;
pub const DEFAULT_HDEG: u32 = 8;

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fgl", version, about = "Formal group laws over Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Order N through which series are computed [default: 8, or the group file's order].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: Option<u32>,
    /// Degree bound D of the Hopf algebra [default: 8, or the algebra file's bound].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub hdeg: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Require inputs to be homogeneous with deg x = --x-weight.
    #[arg(long, global = true)]
    pub strict_grading: bool,
    /// Weight of x under --strict-grading [default: smallest generator degree].
    #[arg(long, global = true, requires = "strict_grading", value_parser = clap::value_parser!(u32).range(1..))]
    pub x_weight: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
}

#[derive(Args, Debug)]
pub struct GroupArg {
    /// Group file (JSON), or `-` for stdin.
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Hopf algebra axioms on every basis monomial.
    CheckHopf {
        /// Builtin name or algebra file.
        #[arg(long)]
        hopf: String,
    },
    /// Check unit, symmetry and associativity of a group law.
    Verify(GroupArg),
    /// Print the logarithm g = ∫ dx/ω̃.
    Log(GroupArg),
    /// Extract the cocycle c from (Δg)(F) = c + g(X) + g(Y).
    Cocycle(GroupArg),
    /// Check the two cocycle conditions.
    CheckCocycle {
        #[arg(long)]
        hopf: String,
        /// Inline element such as `t (x) t^2`, or a JSON file.
        #[arg(long)]
        cocycle: String,
    },
    /// Print dh = Δh - h⊗1 - 1⊗h.
    Coboundary {
        #[arg(long)]
        hopf: String,
        /// Inline element such as `t^2`, or a JSON file.
        #[arg(long)]
        element: String,
    },
    /// Print the inverse series Θ.
    Inverse(GroupArg),
    /// Build F = (Δg)⁻¹(c + g(X) + g(Y)).
    Reconstruct {
        #[arg(long)]
        hopf: String,
        /// Inline series in x, or a JSON file.
        #[arg(long)]
        log: String,
        #[arg(long)]
        cocycle: String,
    },
    /// Push a law and its logarithm down to the rationals with ε.
    Specialize(GroupArg),
    /// Logarithm, cocycle, log equation and reconstruction in one go.
    Roundtrip(GroupArg),
}

/// Where a setting came from, for the output header.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Source {
    Flag,
    Input,
    Default,
}

impl Source {
    fn label(self) -> &'static str {
        match self {
            Source::Flag => "",
            Source::Input => " (from input)",
            Source::Default => " (default)",
        }
    }
}

pub struct Ctx<'a> {
    pub cli: &'a Cli,
    stdin: &'a mut dyn Read,
    pub order: Option<(u32, Source)>,
    pub hdeg: Option<(u32, Source)>,
}

pub struct Algebra {
    pub spec: AlgebraSpec,
    pub algebra: Arc<HopfAlgebra>,
}

pub struct Group {
    pub algebra: Algebra,
    pub law: FormalGroupLaw,
}

/// Loads a builtin algebra or an algebra file; `bound` overrides the
/// file's degree bound.
pub fn load_algebra_spec(name: &str, base: Option<&Path>, bound: Option<u32>) -> Result<AlgebraSpec> {
    if let Some(spec) = AlgebraSpec::builtin(name, bound.unwrap_or(DEFAULT_HDEG)) {
        return Ok(spec);
    }
    let path = resolve(name, base);
    let text = std::fs::read_to_string(&path).with_context(|| {
        format!("{name:?} is neither a builtin algebra ({}) nor a readable file", BUILTIN_ALGEBRAS.join(", "))
    })?;
    let j: AlgebraJson = serde_json::from_str(&text).with_context(|| format!("{}", path.display()))?;
    let mut spec = j.to_spec()?;
    if let Some(d) = bound {
        spec.degree_bound = d;
    }
    Ok(spec)
}

fn resolve(name: &str, base: Option<&Path>) -> PathBuf {
    let p = Path::new(name);
    match base {
        Some(b) if p.is_relative() => b.join(p),
        _ => p.to_path_buf(),
    }
}

fn is_file_arg(s: &str) -> bool {
    s.ends_with(".json") && Path::new(s).is_file()
}

impl<'a> Ctx<'a> {
    pub fn format(&self) -> Format {
        self.cli.format
    }

    fn build(&mut self, spec: AlgebraSpec, source: Source, checked: bool) -> Result<Algebra> {
        let algebra = Arc::new(if checked { spec.build()? } else { spec.build_unchecked()? });
        let source = if self.cli.hdeg.is_some() { Source::Flag } else { source };
        self.hdeg = Some((spec.degree_bound, source));
        Ok(Algebra { spec, algebra })
    }

    pub fn algebra(&mut self, name: &str) -> Result<Algebra> {
        self.load_algebra(name, true)
    }

    /// Loads an algebra without checking the Hopf axioms, for `check-hopf`.
    pub fn algebra_unchecked(&mut self, name: &str) -> Result<Algebra> {
        self.load_algebra(name, false)
    }

    fn load_algebra(&mut self, name: &str, checked: bool) -> Result<Algebra> {
        let spec = load_algebra_spec(name, None, self.cli.hdeg)?;
        let source = if AlgebraSpec::builtin(name, 1).is_some() { Source::Default } else { Source::Input };
        self.build(spec, source, checked)
    }

    /// The order from `--order`, else `fallback`, else the default.
    pub fn order(&mut self, fallback: Option<u32>) -> u32 {
        let (n, source) = match (self.cli.order, fallback) {
            (Some(n), _) => (n, Source::Flag),
            (None, Some(n)) => (n, Source::Input),
            (None, None) => (DEFAULT_ORDER, Source::Default),
        };
        self.order = Some((n, source));
        n
    }

    pub fn group(&mut self, arg: &str) -> Result<Group> {
        let (text, base) = if arg == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).context("reading stdin")?;
            (s, None)
        } else {
            let text = std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
            (text, Path::new(arg).parent().map(Path::to_path_buf))
        };
        let j: GroupJson = serde_json::from_str(&text).context("bad group file")?;
        let spec = json::algebra_from_value(&j.hopf, base.as_deref(), self.cli.hdeg)?;
        let source = match &j.hopf {
            Value::String(s) if AlgebraSpec::builtin(s, 1).is_some() => Source::Default,
            _ => Source::Input,
        };
        let algebra = self.build(spec, source, true)?;
        let n = self.order(Some(j.order));
        let series = json::series_from_value(&algebra.algebra, 2, 2, n.max(j.order), &j.series)?;
        let series = if series.order() >= n {
            series
        } else if series.precision().is_complete() {
            series.with_order(n)
        } else {
            return Err(Error::TruncationInsufficient { required: n as i64, available: series.exact_order() }.into());
        };
        self.check_grading_series(&algebra.algebra, &series, "group law")?;
        let law = FormalGroupLaw::with_order(series, n)?;
        Ok(Group { algebra, law })
    }

    pub fn element(&self, alg: &Arc<HopfAlgebra>, arity: usize, arg: &str) -> Result<TensorElement> {
        if is_file_arg(arg) {
            let text = std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
            let v: Value = serde_json::from_str(&text).with_context(|| arg.to_string())?;
            json::tensor_from_json(alg, arity, &v)
        } else {
            Ok(parse_element(alg, arity, arg)?)
        }
    }

    pub fn log_series(&self, alg: &Arc<HopfAlgebra>, order: u32, arg: &str) -> Result<Series> {
        let v = if is_file_arg(arg) {
            let text = std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
            serde_json::from_str(&text).with_context(|| arg.to_string())?
        } else {
            Value::String(arg.to_string())
        };
        let g = json::series_from_value(alg, 1, 1, order, &v)?;
        self.check_grading_series(alg, &g, "logarithm")?;
        Ok(g)
    }

    fn weight(&self, alg: &HopfAlgebra) -> Option<u32> {
        self.cli
            .strict_grading
            .then(|| self.cli.x_weight.or(alg.min_positive_degree()).unwrap_or(1))
    }

    /// Under strict grading the coefficient of a monomial of total order k
    /// must have degree |k - 1|·w.
    fn check_grading_series(&self, alg: &HopfAlgebra, s: &Series, what: &str) -> Result<()> {
        let Some(w) = self.weight(alg) else { return Ok(()) };
        for (exp, c) in s.terms() {
            let k: u32 = exp.iter().sum();
            let want = k.abs_diff(1) * w;
            for (ms, _) in c.terms() {
                let d: u32 = ms.iter().map(|m| alg.monomial_degree(m)).sum();
                if d != want {
                    bail!(
                        "{what} is not homogeneous with deg x = {w}: coefficient of degree {d} at {exp:?}, expected {want}"
                    );
                }
            }
        }
        Ok(())
    }

    pub fn check_grading_cocycle(&self, alg: &HopfAlgebra, c: &TensorElement) -> Result<()> {
        let Some(w) = self.weight(alg) else { return Ok(()) };
        for (ms, _) in c.terms() {
            let d: u32 = ms.iter().map(|m| alg.monomial_degree(m)).sum();
            if d != w {
                bail!("cocycle is not homogeneous of degree {w}: term of degree {d}");
            }
        }
        Ok(())
    }

    /// `# order 8 (default), hdeg 8 (default)`.
    pub fn header(&self) -> String {
        let mut parts = Vec::new();
        if let Some((n, s)) = self.order {
            parts.push(format!("order {n}{}", s.label()));
        }
        if let Some((d, s)) = self.hdeg {
            parts.push(format!("hdeg {d}{}", s.label()));
        }
        format!("# {}", parts.join(", "))
    }

    /// Wraps a JSON payload with the command name and the settings used.
    pub fn envelope(&self, command: &str, result: Value) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), command.into());
        if let Some((n, s)) = self.order {
            obj.insert("order".into(), n.into());
            obj.insert("order_default".into(), (s == Source::Default).into());
        }
        if let Some((d, s)) = self.hdeg {
            obj.insert("hdeg".into(), d.into());
            obj.insert("hdeg_default".into(), (s == Source::Default).into());
        }
        obj.insert("result".into(), result);
        Value::Object(obj)
    }
}

/// Exit code for an error that escaped a command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::TruncationInsufficient { .. }) => EXIT_TRUNCATION,
        Some(
            Error::CocycleViolation(_)
            | Error::AxiomViolation(_)
            | Error::ResidualNonConstant(_)
            | Error::NoInverse { .. },
        ) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, stdin, order: None, hdeg: None };
    match commands::dispatch(&mut ctx) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if let Some(detail) = violation_detail(&e) {
                let _ = writeln!(err, "{detail}");
            }
            exit_code(&e)
        }
    }
}

fn violation_detail(e: &anyhow::Error) -> Option<String> {
    match e.downcast_ref::<Error>()? {
        Error::CocycleViolation(r) => Some(commands::cocycle_lines(r).join("\n")),
        Error::AxiomViolation(r) => Some(commands::axiom_lines(r).join("\n")),
        Error::ResidualNonConstant(s) => Some(format!("  residual: {s}")),
        _ => None,
    }
}

pub(crate) fn json_text(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| anyhow!(e))?;
    s.push('\n');
    Ok(s)
}
