use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hahn_core::evaluator::{eval_formula, Assignment, EvalConfig, EvalVerdict};
use hahn_core::finite_field::parse_int_poly;
use hahn_core::formula_lang::{
    checked_f, default_f, fe_to_e, mk_epsilon, mk_epsilon_rational, mk_eta, mk_kochen, mk_phi, mk_zeta, mk_zeta_rational,
    parse_formula, CollapseMode, Formula, Mode, PhiVariant,
};
use hahn_core::root_solver::{puiseux_roots, BranchNode, UPoly, Verdict, DEFAULT_BUDGET};
use hahn_core::verify_harness::{run_suite, CaseStatus, SampleSpec, SUITES};
use hahn_core::{Error, Exponent, FqContext, HahnSeries, IntPoly};

#[derive(Parser)]
#[command(name = "hahn", version, about = "Definable valuation rings of F_q((t^Q)): formulas, evaluation, root finding")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print one of the defining formulas.
    Formula(FormulaArgs),
    /// Evaluate a formula at a point.
    Eval(EvalArgs),
    /// Look for roots of a polynomial in y with series coefficients.
    Solve(SolveArgs),
    /// Rewrite a positive combination of existential formulas into a single one.
    Collapse(CollapseArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Zeta,
    Epsilon,
    Eta,
    Kochen,
    Phi,
}

#[derive(Args)]
struct FormulaArgs {
    kind: Kind,
    #[arg(long)]
    q: u64,
    /// Unit for the Kochen formula.
    #[arg(long, default_value_t = 1)]
    u: i64,
    /// Base point for phi.
    #[arg(long, default_value_t = 0)]
    a: i64,
    /// Use the two-witness variant of phi.
    #[arg(long)]
    two_witness: bool,
    /// Integer polynomial in X replacing the default X^q - X - 1.
    #[arg(long)]
    f: Option<String>,
    /// Print the rational display form instead.
    #[arg(long)]
    simplify: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, default_value = "GF(2)")]
    field: String,
    #[arg(long, conflicts_with = "formula_file", required_unless_present = "formula_file")]
    formula: Option<String>,
    #[arg(long)]
    formula_file: Option<std::path::PathBuf>,
    /// `name=series`, repeatable.
    #[arg(long)]
    assign: Vec<String>,
    #[arg(long, default_value_t = 10)]
    prec: i64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "GF(2)")]
    field: String,
    #[arg(long)]
    poly: String,
    #[arg(long, default_value_t = 10)]
    prec: i64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliCollapseMode {
    Sound,
    Paper,
}

#[derive(Args)]
struct CollapseArgs {
    #[arg(long, value_enum, default_value = "sound")]
    mode: CliCollapseMode,
    /// Rootless polynomial used to merge conjunctions.
    #[arg(long, required_unless_present = "q")]
    f: Option<String>,
    /// Use X^q - X - 1 for f.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    input: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,8,9")]
    q: Vec<u64>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, env = "HAHN_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// Parse and precondition errors exit 2; anything else is a mathematical
/// failure and exits 1.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::InsufficientPrecision(_) | Error::NotHenselReady | Error::CannotInvert | Error::DivisionByZero => 1,
        _ => 2,
    }
}

fn parse_f(s: &str) -> hahn_core::Result<IntPoly> {
    parse_int_poly(s, "X").or_else(|_| parse_int_poly(s, "x"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Formula(a) => cmd_formula(a),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Collapse(a) => cmd_collapse(a),
        Cmd::Verify(a) => cmd_verify(a),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn cmd_formula(a: FormulaArgs) -> hahn_core::Result<u8> {
    let custom = a.f.as_deref().map(parse_f).transpose()?;
    let phi = match (a.kind, a.simplify) {
        (Kind::Zeta, false) => mk_zeta(a.q, custom.as_ref())?,
        (Kind::Epsilon, false) => mk_epsilon(a.q, custom.as_ref())?,
        (Kind::Eta, _) => mk_eta(a.q, custom.as_ref())?,
        (Kind::Phi, _) => {
            let f = checked_f(a.q, custom.as_ref())?;
            let variant = if a.two_witness { PhiVariant::TwoWitness } else { PhiVariant::Point };
            mk_phi(&f, a.a, variant)?
        }
        (Kind::Kochen, s) => {
            let k = mk_kochen(a.q, a.u)?;
            if k.p_is_two {
                eprintln!("note: p = 2, the surjectivity statement is not claimed");
            }
            if s {
                k.simplified
            } else {
                k.formula
            }
        }
        (Kind::Zeta | Kind::Epsilon, true) => {
            if custom.is_some() {
                return Err(Error::Shape("--simplify uses the default f".into()));
            }
            match a.kind {
                Kind::Zeta => mk_zeta_rational(a.q)?,
                _ => mk_epsilon_rational(a.q)?,
            }
        }
    };
    if a.json {
        println!("{}", phi.to_json());
    } else {
        println!("{phi}");
    }
    Ok(0)
}

fn parse_assignment(ctx: &Arc<FqContext>, items: &[String]) -> hahn_core::Result<Assignment> {
    let mut sigma = Assignment::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Shape(format!("expected name=series, got `{item}`")))?;
        sigma.insert(k.trim().to_string(), HahnSeries::parse(ctx, v)?);
    }
    Ok(sigma)
}

fn cmd_eval(a: EvalArgs) -> hahn_core::Result<u8> {
    let ctx = FqContext::parse_header(&a.field)?;
    let text = match (&a.formula, &a.formula_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Error::Shape(format!("{}: {e}", path.display())))?,
        (None, None) => unreachable!("clap requires one"),
    };
    let phi = parse_formula(text.trim(), Mode::Field)?;
    let sigma = parse_assignment(&ctx, &a.assign)?;
    let cfg = EvalConfig {
        target: Exponent::int(a.prec),
        budget: a.budget,
        mode: phi.mode(),
    };
    let verdict = eval_formula(&phi, &sigma, &ctx, &cfg)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&verdict).expect("verdict serializes"));
        return Ok(0);
    }
    match verdict {
        EvalVerdict::True(w) => {
            println!("true");
            for (k, v) in w {
                println!("  {k} = {v}");
            }
        }
        EvalVerdict::False => println!("false"),
        EvalVerdict::Unknown(r) => println!("unknown: {r}"),
    }
    Ok(0)
}

fn print_tree(node: &BranchNode, depth: usize) {
    let step = node.step_valuation.as_ref().map_or("-".to_string(), Exponent::to_string);
    let status = node.status.map_or(String::new(), |s| format!(" [{s:?}]"));
    println!("{:indent$}{} (step {step}){status}", "", node.partial_root, indent = 2 * depth);
    for c in &node.children {
        print_tree(c, depth + 1);
    }
}

fn cmd_solve(a: SolveArgs) -> hahn_core::Result<u8> {
    let ctx = FqContext::parse_header(&a.field)?;
    let g = UPoly::parse(&ctx, &a.poly)?;
    let report = puiseux_roots(&g, &Exponent::int(a.prec), a.budget)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(0);
    }
    match &report.verdict {
        Verdict::Yes(ws) => {
            println!("Yes");
            for w in ws {
                println!("  {w}");
            }
        }
        Verdict::No => println!("No"),
        Verdict::Inconclusive => println!("Inconclusive"),
    }
    print_tree(&report.tree, 0);
    Ok(0)
}

fn cmd_collapse(a: CollapseArgs) -> hahn_core::Result<u8> {
    let f = match (&a.f, a.q) {
        (Some(s), _) => parse_f(s)?,
        (None, Some(q)) => default_f(q),
        (None, None) => unreachable!("clap requires one"),
    };
    let phi: Formula = parse_formula(&a.input, Mode::Ring)?;
    let mode = match a.mode {
        CliCollapseMode::Sound => CollapseMode::Sound,
        CliCollapseMode::Paper => CollapseMode::Paper,
    };
    let out = fe_to_e(&phi, &f, mode)?;
    if out.identified_binders {
        eprintln!("warning: binders of different conjuncts were identified; the output may not be equivalent to the input");
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("collapse serializes"));
    } else {
        println!("{}", out.formula);
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> hahn_core::Result<u8> {
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let mut reports = Vec::new();
    for name in names {
        for &q in &a.q {
            reports.push(run_suite(name, &SampleSpec::new(q, a.samples, a.seed))?);
        }
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    } else {
        for r in &reports {
            println!("{}", r.summary());
            for c in r.cases.iter().filter(|c| matches!(c.status, CaseStatus::Fail | CaseStatus::Unknown)) {
                println!("  #{} {:?}: {} ({})", c.index, c.status, c.input, c.detail);
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}
