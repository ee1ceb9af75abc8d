//! `ipl`: command-line front end for the ipl-core library.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
//! input syntax error, 3 I/O error, 4 resource budget exhausted.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ipl_core::decision::{DecisionError, DecisionResult, Prover, DEFAULT_BUDGET};
use ipl_core::henkin::{code_bound_covering, Henkin, HenkinError, Theory, DEFAULT_MAX_FRAGMENT};
use ipl_core::proof::{check, parse_derivation, random_derivation, Context, Verdict};
use ipl_core::semantics::{build_lem_countermodel, enumerate_models, parse_model, print_model, to_dot, KripkeModel, World, FF, TT};
use ipl_core::syntax::{parse, print_symbolic, Formula, Fragment};

#[derive(Parser)]
#[command(name = "ipl", version, about = "Intuitionistic propositional logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Parse {
        formula: String,
        /// Print with logical symbols instead of ASCII.
        #[arg(long)]
        symbolic: bool,
    },
    /// Check a proof file against CTX ⊢ GOAL.
    CheckProof { file: String, ctx: String, goal: String },
    /// Evaluate a formula at a world of a model file.
    Eval { model: String, world: World, formula: String },
    /// Decide CTX ⊢ FORMULA; print a countermodel when it fails.
    Decide {
        ctx: String,
        formula: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Emit GraphViz instead of a model file.
        #[arg(long)]
        dot: bool,
    },
    /// Build a canonical countermodel to CTX ⊢ FORMULA.
    Countermodel {
        ctx: String,
        formula: String,
        #[arg(long, default_value_t = DEFAULT_MAX_FRAGMENT)]
        max_fragment: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Print the stages of a bounded prime extension of CTX avoiding FORMULA.
    HenkinDemo {
        ctx: String,
        formula: String,
        #[arg(long, default_value_t = 3)]
        stages: usize,
        /// Code bound; defaults to one past the largest code in the fragment.
        #[arg(long)]
        codes: Option<u64>,
    },
    /// Show the two-world countermodel to excluded middle.
    LemDemo,
    /// Check random derivations against every small model.
    SoundnessFuzz {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        max_worlds: usize,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<DecisionError> for Failure {
    fn from(e: DecisionError) -> Failure {
        Failure::Budget(e.to_string())
    }
}

impl From<HenkinError> for Failure {
    fn from(e: HenkinError) -> Failure {
        match e {
            HenkinError::Decision(d) => d.into(),
            HenkinError::FragmentTooLarge { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

/// A context is a path to a file of formulas, or formulas inline. Either way
/// they are separated by commas or newlines; `#` starts a comment line.
fn context(arg: &str) -> Result<Context, Failure> {
    let text = if Path::new(arg).is_file() { read(arg)? } else { arg.to_string() };
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(formula)
        .collect()
}

fn show_model(model: &KripkeModel, root: World, dot: bool) {
    if dot {
        print!("{}", to_dot(model, Some(root)));
    } else {
        print!("{}", print_model(model, Some(root)));
    }
}

fn check_proof(file: &str, ctx: &str, goal: &str) -> Outcome {
    let d = parse_derivation(&read(file)?).map_err(|e| Failure::Usage(format!("{file}: {e}")))?;
    match check(&d, &context(ctx)?, &formula(goal)?) {
        Verdict::Accept => {
            println!("accept");
            Ok(true)
        }
        Verdict::Reject { path, reason } => {
            println!("reject at {path}: {reason}");
            Ok(false)
        }
    }
}

fn eval(model: &str, world: World, p: &str) -> Outcome {
    let file = parse_model(&read(model)?).map_err(|e| Failure::Usage(format!("{model}: {e}")))?;
    let value = file.model.forces(world, &formula(p)?).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{value}");
    Ok(true)
}

fn decide(ctx: &str, p: &str, budget: u64, dot: bool) -> Outcome {
    match Prover::new(budget).derivable(&context(ctx)?, &formula(p)?)? {
        DecisionResult::Provable => {
            println!("provable");
            Ok(true)
        }
        DecisionResult::Refuted(model, root) => {
            show_model(&model, root, dot);
            Ok(false)
        }
    }
}

fn countermodel(ctx: &str, p: &str, max_fragment: usize, dot: bool) -> Outcome {
    let h = Henkin::new(Prover::default(), max_fragment);
    match h.countermodel(&context(ctx)?, &formula(p)?)? {
        None => {
            println!("provable");
            Ok(true)
        }
        Some((cm, root)) => {
            show_model(&cm.model, root, dot);
            Ok(false)
        }
    }
}

fn henkin_demo(ctx: &str, p: &str, stages: usize, codes: Option<u64>) -> Outcome {
    let theory = Theory::new(context(ctx)?, formula(p)?);
    let bound = match codes {
        Some(b) => b,
        None => code_bound_covering(Fragment::closure_of(theory.formulas.iter().chain([&theory.goal])).iter())
            .ok_or_else(|| Failure::Usage("fragment codes exceed 64 bits; pass --codes".into()))?,
    };
    let trace = Henkin::default().prime_trace(&theory, stages, bound)?;
    println!("avoiding {}, codes below {bound}", theory.goal);
    println!("stage 0: {{{}}}", trace.stages[0]);
    for (k, stage) in trace.stages.iter().enumerate().skip(1) {
        let treated = trace.steps.iter().filter(|s| s.stage == k).count();
        for step in trace.steps.iter().filter(|s| s.stage == k && s.new) {
            println!("  #{} {}  adds {}", step.code, step.disjunction, step.added);
        }
        println!("stage {k}: {{{stage}}}  ({treated} derivable disjunctions treated)");
    }
    Ok(true)
}

fn lem_demo() -> Outcome {
    let (model, root) = build_lem_countermodel();
    let name = |w: World| if w == FF { "ff" } else { "tt" };
    let edges: Vec<String> = model.rel().iter().map(|&(w, v)| format!("{}->{}", name(w), name(v))).collect();
    println!("worlds: ff tt");
    println!("rel: {}", edges.join(" "));
    println!("val: p0@tt");
    let p0 = Formula::atom(0);
    for (w, q) in [(TT, p0.clone()), (root, p0.clone()), (root, Formula::neg(p0.clone())), (root, Formula::or(p0.clone(), Formula::neg(p0)))] {
        let forced = model.forces(w, &q).expect("static model");
        println!("{} {} {}", name(w), if forced { "⊩" } else { "⊮" }, print_symbolic(&q));
    }
    Ok(true)
}

fn soundness_fuzz(seeds: u64, depth: usize, max_worlds: usize) -> Outcome {
    if max_worlds == 0 || max_worlds > 4 {
        return Err(Failure::Usage("--max-worlds must be between 1 and 4".into()));
    }
    let contexts: Vec<Context> = ["", "p0", "p0 -> p1", "p0 | p1", "~p2, p1 & p0"]
        .iter()
        .map(|c| context(c))
        .collect::<Result<_, _>>()?;
    let models: Vec<KripkeModel> = enumerate_models(max_worlds, &[0, 1, 2]).collect();
    let mut violations = 0u64;
    for seed in 0..seeds {
        let ctx = &contexts[(seed % contexts.len() as u64) as usize];
        let (d, concl) = random_derivation(ctx, depth, seed);
        if !check(&d, ctx, &concl).is_accept() {
            println!("seed {seed}: generated derivation rejected");
            violations += 1;
            continue;
        }
        for m in &models {
            let hyps: Vec<Vec<bool>> = ctx.iter().map(|q| m.truth_set(q)).collect();
            let target = m.truth_set(&concl);
            for (i, &w) in m.worlds().iter().enumerate() {
                if hyps.iter().all(|t| t[i]) && !target[i] {
                    println!("seed {seed}: {concl} fails at world {w}");
                    violations += 1;
                }
            }
        }
    }
    println!("{seeds} derivations, {} models, {violations} violations", models.len());
    Ok(violations == 0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Parse { formula: text, symbolic } => {
            let p = formula(&text)?;
            println!("{}", if symbolic { print_symbolic(&p) } else { p.to_string() });
            Ok(true)
        }
        Command::CheckProof { file, ctx, goal } => check_proof(&file, &ctx, &goal),
        Command::Eval { model, world, formula } => eval(&model, world, &formula),
        Command::Decide { ctx, formula, budget, dot } => decide(&ctx, &formula, budget, dot),
        Command::Countermodel { ctx, formula, max_fragment, dot } => countermodel(&ctx, &formula, max_fragment, dot),
        Command::HenkinDemo { ctx, formula, stages, codes } => henkin_demo(&ctx, &formula, stages, codes),
        Command::LemDemo => lem_demo(),
        Command::SoundnessFuzz { seeds, depth, max_worlds } => soundness_fuzz(seeds, depth, max_worlds),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
