//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.
//!
//! Exit codes: 0 success, 1 a check did not come out as requested,
//! 2 bad input or usage, 3 an invalid Gödel code.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::cas::{
    self, normalize_with, numeric_eval, oracle, parse_expr, Assignment, Atom, CasError, DerivationRecord,
    RewriteSystem, Verdict,
};
use crate::codec::{
    nth_prime, CodeClass, Codec, CodecError, Decoded, GoedelNumber, DEFAULT_MATERIALIZE_BITS,
    DEFAULT_PRIME_INDEX_CEILING,
};
use crate::logic::{self, ArgumentOrder, FactBase, LogicError};
use crate::syntax::{parse_formula, Derivation, Symbol, SymbolKind, SymbolTable, SyntaxError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    CheckFailed = 1,
    InputError = 2,
    InvalidCode = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "gauge-logic", version, about = "Gödel numbering, definability checks and the Higgs chain verifier")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Register an extra symbol before running, as NAME:KIND
    /// (KIND is one of logical, punctuation, variable, predicate, function).
    #[arg(long = "register", value_name = "NAME:KIND", global = true)]
    register: Vec<String>,

    /// Pre-register the tokens of the Higgs chain in the order `check-def` uses,
    /// so its codes decode.
    #[arg(long, global = true)]
    with_chain_symbols: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Symbol,
    Formula,
    Derivation,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Decimal (materialized) value.
    #[default]
    Exact,
    /// Prime-index/exponent pairs.
    Factored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Demo {
    Goedel,
    Tarski,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Order {
    /// `D(#i,#k) -> M(#j)`
    #[default]
    Literal,
    /// `D(#i,#j) -> M(#k)`
    Swapped,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gödel number of a symbol, a formula, or a derivation file.
    Encode {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Symbol name, formula text, or derivation file path (`-` for stdin).
        input: String,
    },
    /// Symbols (or formulas) coded by a number.
    Decode {
        /// Decimal, or the JSON factored form.
        code: String,
    },
    /// Whether a number codes a symbol, a formula, a derivation, or nothing.
    Classify { code: String },
    /// Prime factorization by trial division.
    Factor {
        n: String,
        #[arg(long, default_value_t = DEFAULT_PRIME_INDEX_CEILING)]
        ceiling: usize,
    },
    /// Parse and print a formula canonically.
    Parse { formula: String },
    /// Null-model argument for the mass predicate.
    CheckIndef {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        k: String,
        /// JSON file with `g_facts` and `d_facts` pair lists.
        #[arg(long)]
        facts: Option<PathBuf>,
    },
    /// Non-null model for the mass predicate from a verified derivation.
    CheckDef {
        /// Derivation record JSON (as printed by `higgs verify --all --json`);
        /// defaults to the built-in chain.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        order: Order,
    },
    /// Smallest interpretation telling the gauge and breaking schemas apart.
    Nonequiv,
    /// Self-referential sentences and their fixed points.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// The Higgs Lagrangian chain.
    Higgs {
        #[command(subcommand)]
        action: HiggsAction,
    },
    /// Polynomial normal form of an expression.
    Normalize {
        expr: String,
        /// Derived atoms to keep instead of eliminating (v, M, rho, B).
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
    },
    /// Numeric value of an expression.
    Eval {
        expr: String,
        /// Comma-separated `name=value` pairs.
        #[arg(long)]
        assign: String,
    },
}

#[derive(Debug, Subcommand)]
enum HiggsAction {
    /// Check one step or the whole chain.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Only the step from H<n> to H<n+1>.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), conflicts_with = "all")]
    step: Option<u8>,
    /// Every adjacent step plus the first-to-last check (the default).
    #[arg(long)]
    all: bool,
    /// Also compare the steps numerically on random assignments drawn from this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random assignments per pair.
    #[arg(long, default_value_t = 20, requires = "seed")]
    trials: usize,
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Failure { status: ExitStatus::InputError, message: message.to_string() }
    }

    fn check(message: impl Display) -> Self {
        Failure { status: ExitStatus::CheckFailed, message: message.to_string() }
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        let status = match e {
            CodecError::InvalidCode(_) | CodecError::NotFactorable(_) | CodecError::TooLong { .. } => {
                ExitStatus::InvalidCode
            }
            _ => ExitStatus::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        Failure::input(e)
    }
}

impl From<CasError> for Failure {
    fn from(e: CasError) -> Self {
        Failure::input(e)
    }
}

impl From<LogicError> for Failure {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::PreconditionViolated { .. } | LogicError::UnverifiedDerivation | LogicError::NoCounterexample => {
                Failure::check(e)
            }
            LogicError::Codec(inner) => inner.into(),
            other => Failure::input(other),
        }
    }
}

type Outcome = Result<ExitStatus, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { ExitStatus::Success } else { ExitStatus::InputError };
        }
    };
    let mut ctx = Context { json: cli.json, out };
    let result = prepare_table(&cli).and_then(|table| dispatch(cli.command, &table, &mut ctx));
    match result {
        Ok(status) => status,
        Err(failure) => {
            if !failure.message.is_empty() {
                let _ = writeln!(err, "error: {}", failure.message);
            }
            failure.status
        }
    }
}

struct Context<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let rendered = if self.json {
            serde_json::to_string_pretty(value).map_err(Failure::input)?
        } else {
            text()
        };
        writeln!(self.out, "{}", rendered.trim_end()).map_err(|e| match e.kind() {
            // the reader went away (e.g. `| head`); nothing left to report
            std::io::ErrorKind::BrokenPipe => Failure { status: ExitStatus::Success, message: String::new() },
            _ => Failure::input(e),
        })
    }
}

fn prepare_table(cli: &Cli) -> Result<SymbolTable, Failure> {
    let table = SymbolTable::new();
    if cli.with_chain_symbols {
        cas::verify_higgs_chain().to_derivation(&table)?;
    }
    for entry in &cli.register {
        let (name, kind) = entry
            .rsplit_once(':')
            .ok_or_else(|| Failure::input(format!("expected NAME:KIND, found `{entry}`")))?;
        let kind = match kind {
            "logical" => SymbolKind::Logical,
            "punctuation" => SymbolKind::Punctuation,
            "variable" => SymbolKind::Variable,
            "predicate" => SymbolKind::Predicate,
            "function" => SymbolKind::Function,
            other => return Err(Failure::input(format!("unknown symbol kind `{other}`"))),
        };
        table.register(name, kind)?;
    }
    Ok(table)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(Failure::input)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn parse_number(text: &str) -> Result<GoedelNumber, Failure> {
    text.parse::<GoedelNumber>().map_err(Failure::input)
}

fn parse_natural(text: &str) -> Result<BigUint, Failure> {
    parse_number(text)?.to_exact(DEFAULT_MATERIALIZE_BITS).map_err(Failure::input)
}

fn names(symbols: &[Symbol]) -> Vec<String> {
    symbols.iter().map(|s| s.name.clone()).collect()
}

fn dispatch(command: Command, table: &SymbolTable, ctx: &mut Context<'_>) -> Outcome {
    let codec = Codec::new(table);
    match command {
        Command::Encode { kind, format, input } => {
            let code = match kind {
                Kind::Symbol => {
                    let symbol = table
                        .lookup(&input)
                        .ok_or_else(|| Failure::input(format!("symbol `{input}` is not registered")))?;
                    codec.encode_symbol(&symbol)
                }
                Kind::Formula => codec.encode_formula(&parse_formula(&input, table)?),
                Kind::Derivation => {
                    let text = read_input(Path::new(&input))?;
                    codec.encode_derivation(&Derivation::parse(&text, table)?)
                }
            };
            let code = match format {
                Format::Exact => GoedelNumber::Exact(code.to_exact(DEFAULT_MATERIALIZE_BITS).map_err(Failure::input)?),
                Format::Factored => code.to_factored(DEFAULT_PRIME_INDEX_CEILING)?,
            };
            ctx.emit(&json!({ "kind": kind_name(kind), "code": code }), || match &code {
                GoedelNumber::Exact(n) => n.to_string(),
                factored => serde_json::to_string(factored).unwrap_or_default(),
            })?;
            Ok(ExitStatus::Success)
        }
        Command::Decode { code } => {
            let g = parse_number(&code)?;
            let decoded = codec.decode(&g)?;
            let value = match &decoded {
                Decoded::Symbol(s) => json!({ "class": "symbol-code", "symbol": s.name }),
                Decoded::String(syms) => json!({
                    "class": "formula-code",
                    "symbols": names(syms),
                    "formula": decoded.to_formula(table).ok().map(|f| f.to_string()),
                }),
                Decoded::Derivation(steps) => json!({
                    "class": "derivation-code",
                    "steps": steps.iter().map(|s| names(s)).collect::<Vec<_>>(),
                }),
            };
            ctx.emit(&value, || match &decoded {
                Decoded::Symbol(s) => s.name.clone(),
                Decoded::String(syms) => names(syms).join(" "),
                Decoded::Derivation(steps) => steps.iter().map(|s| names(s).join(" ")).collect::<Vec<_>>().join("\n"),
            })?;
            Ok(ExitStatus::Success)
        }
        Command::Classify { code } => {
            let class = codec.classify(&parse_number(&code)?);
            ctx.emit(&class, || match &class {
                CodeClass::Invalid(reason) => format!("Invalid({reason})"),
                other => format!("{other:?}"),
            })?;
            Ok(if matches!(class, CodeClass::Invalid(_)) { ExitStatus::InvalidCode } else { ExitStatus::Success })
        }
        Command::Factor { n, ceiling } => {
            let n = parse_natural(&n)?;
            let pairs = crate::codec::factor_with_ceiling(&n, ceiling)?;
            let value: Vec<(usize, String)> = pairs.iter().map(|(i, e)| (*i, e.to_string())).collect();
            ctx.emit(&value, || {
                if pairs.is_empty() {
                    return "1".to_owned();
                }
                pairs
                    .iter()
                    .map(|(i, e)| format!("{}^{e}", nth_prime(*i)))
                    .collect::<Vec<_>>()
                    .join(" * ")
            })?;
            Ok(ExitStatus::Success)
        }
        Command::Parse { formula } => {
            let f = parse_formula(&formula, table)?;
            let free: Vec<&str> = f.free_vars().into_iter().map(|v| v.name()).collect();
            let value = json!({
                "formula": f.to_string(),
                "symbols": names(f.symbols()),
                "codes": f.codes(),
                "free_vars": free,
            });
            ctx.emit(&value, || {
                format!("{f}\nsymbols: {}\nfree: {}", f.symbol_string(), free.join(" "))
            })?;
            Ok(ExitStatus::Success)
        }
        Command::CheckIndef { i, j, k, facts } => {
            let facts = match facts {
                Some(path) => FactBase::from_json(&read_input(&path)?)?,
                None => FactBase::default(),
            };
            let report = logic::check_massiveness_indefinable(
                &parse_natural(&i)?,
                &parse_natural(&j)?,
                &parse_natural(&k)?,
                &facts,
                table,
            )?;
            ctx.emit(&report, || report.to_string())?;
            Ok(ExitStatus::Success)
        }
        Command::CheckDef { cert, order } => {
            let record: DerivationRecord = match cert {
                Some(path) => serde_json::from_str(&read_input(&path)?).map_err(Failure::input)?,
                None => cas::verify_higgs_chain(),
            };
            let order = match order {
                Order::Literal => ArgumentOrder::Literal,
                Order::Swapped => ArgumentOrder::Swapped,
            };
            let report = logic::check_massiveness_definable_with(&record, order, table)?;
            ctx.emit(&report, || report.to_string())?;
            Ok(ExitStatus::Success)
        }
        Command::Nonequiv => {
            let w = logic::check_nonequivalence(table)?;
            ctx.emit(&w, || {
                let ext = |p: &str| {
                    let members = w.interpretation.extension(p).map_or(0, |e| e.len());
                    if members == 0 { "empty".to_owned() } else { "everything".to_owned() }
                };
                format!(
                    "domain {{0}}: G {}, D {}, M {}\ngauge closure: {}\nbreaking closure: {}\ncandidates visited: {}",
                    ext("G"),
                    ext("D"),
                    ext("M"),
                    w.gauge_closure,
                    w.breaking_closure,
                    w.candidates_visited
                )
            })?;
            Ok(ExitStatus::Success)
        }
        Command::Demo { which: Demo::Goedel } => {
            let report = logic::goedel_sentence_demo(table)?;
            ctx.emit(&report, || {
                let mut text = format!("{}\nd({}, {})\n", report.fixed_point, report.fixed_point.m, report.fixed_point.n);
                for s in &report.narrative {
                    let status = serde_json::to_value(s.status).ok().and_then(|v| v.as_str().map(str::to_owned));
                    text.push_str(&format!("[{}] ({}) {}\n", s.label, status.unwrap_or_default(), s.statement));
                }
                text
            })?;
            Ok(ExitStatus::Success)
        }
        Command::Demo { which: Demo::Tarski } => {
            let report = logic::tarski_sentence_demo(table)?;
            ctx.emit(&report, || report.to_string())?;
            Ok(ExitStatus::Success)
        }
        Command::Higgs { action: HiggsAction::Verify(args) } => higgs_verify(args, ctx),
        Command::Normalize { expr, keep } => {
            let kept = keep
                .iter()
                .map(|name| name.parse::<Atom>().map_err(|()| Failure::input(format!("unknown atom `{name}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let nf = normalize_with(&parse_expr(&expr)?, &RewriteSystem::keeping(&kept));
            ctx.emit(&nf, || nf.to_string())?;
            Ok(ExitStatus::Success)
        }
        Command::Eval { expr, assign } => {
            let a: Assignment = assign.parse()?;
            let z = numeric_eval(&parse_expr(&expr)?, &a)?;
            ctx.emit(&json!({ "re": z.re, "im": z.im }), || {
                if z.im == 0.0 {
                    format!("{}", z.re)
                } else {
                    format!("{} {} {}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
                }
            })?;
            Ok(ExitStatus::Success)
        }
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Symbol => "symbol",
        Kind::Formula => "formula",
        Kind::Derivation => "derivation",
    }
}

fn higgs_verify(args: VerifyArgs, ctx: &mut Context<'_>) -> Outcome {
    let mut record = cas::verify_higgs_chain();
    if let Some(step) = args.step {
        let to = step as usize;
        record.step_verdicts.retain(|v| v.from + 1 == to && v.to == to);
    }
    let mut oracle_gaps = Vec::new();
    if let Some(seed) = args.seed {
        for v in &record.step_verdicts {
            let gap = oracle::max_gap(&record.steps[v.from].expr, &record.steps[v.to].expr, seed, args.trials)?;
            oracle_gaps.push((v.from, v.to, gap));
        }
    }
    let oracle_ok = oracle_gaps.iter().all(|&(_, _, gap)| gap < oracle::TOLERANCE);
    let verified = record.step_verdicts.iter().all(|v| v.verdict.is_verified());
    let mut value = serde_json::to_value(&record).map_err(Failure::input)?;
    if args.seed.is_some() {
        value["oracle"] = json!({
            "seed": args.seed,
            "trials": args.trials,
            "tolerance": oracle::TOLERANCE,
            "max_relative_gap": oracle_gaps.iter().map(|&(f, t, g)| json!({ "from": f, "to": t, "gap": g })).collect::<Vec<_>>(),
        });
    }
    ctx.emit(&value, || {
        let mut text = String::new();
        for v in &record.step_verdicts {
            let (from, to) = (&record.steps[v.from].label, &record.steps[v.to].label);
            match &v.verdict {
                Verdict::Verified => text.push_str(&format!("{from} -> {to}: verified\n")),
                Verdict::Mismatch(residual) => {
                    text.push_str(&format!("{from} -> {to}: mismatch, residual\n"));
                    for line in residual.lines() {
                        text.push_str(&format!("    {line}\n"));
                    }
                }
            }
        }
        for (from, to, gap) in &oracle_gaps {
            let (from, to) = (&record.steps[*from].label, &record.steps[*to].label);
            text.push_str(&format!("{from} -> {to}: numeric gap {gap:.3e}\n"));
        }
        text
    })?;
    Ok(if verified && oracle_ok { ExitStatus::Success } else { ExitStatus::CheckFailed })
}
