use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pwsolve_core::gen::{gen_3dm, Force};
use pwsolve_core::io::{parse_3dm, parse_profile, render_3dm, render_profile, verify_witness, ProfileDocument, Sidecar};
use pwsolve_core::oracle::{nw_bruteforce, pw_bruteforce};
use pwsolve_core::pw::{classify_rule, possible_winner_with, solver_kind};
use pwsolve_core::reductions::{
    reduce_2approval, reduce_2valued, reduce_pvalued, reduce_unbounded, ReductionOutput, Variant,
};
use pwsolve_core::rule::DEFAULT_HORIZON;
use pwsolve_core::truncated::{reduce_btb, reduce_ttb};
use pwsolve_core::{necessary_winner, parse_rule, Error, ScoringRule, SearchConfig, Semantics};

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "pwsolve", version, about = "Possible and necessary winners under positional scoring rules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    /// Profile file.
    profile: PathBuf,
    /// Rule name; defaults to the file's `rule:` line.
    #[arg(long)]
    rule: Option<String>,
    /// Candidate to test; defaults to the file's `distinguished:` line.
    #[arg(long)]
    candidate: Option<String>,
    #[arg(long, default_value = "cowinner")]
    semantics: Semantics,
    /// Node budget for search, or completion cap for the oracle.
    #[arg(long, default_value_t = pwsolve_core::pw::DEFAULT_BUDGET)]
    budget: u64,
    /// Decide by enumerating every completion.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Is the candidate a possible winner? Exit 0 yes, 1 no, 3 budget.
    SolvePw {
        #[command(flatten)]
        args: SolveArgs,
        /// Write the winning completion here on a yes answer.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Is the candidate a necessary winner? Exit 0 yes, 1 no, 3 budget.
    SolveNw {
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Turn a 3DM instance into a possible-winner instance.
    Reduce {
        /// 3DM file.
        instance: PathBuf,
        /// 2approval, 2valued, pvalued, unbounded, ttb or btb.
        #[arg(long)]
        variant: Variant,
        /// Required for every variant except 2approval.
        #[arg(long)]
        rule: Option<String>,
        /// Profile output path.
        #[arg(long, short)]
        out: PathBuf,
        /// Sidecar output path; defaults to `<out>.meta`.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Check a completion against a reduction sidecar.
    Verify {
        /// Completion: the variable votes alone or the whole profile.
        witness: PathBuf,
        #[arg(long)]
        meta: PathBuf,
        /// The profile written by `reduce`, for extension and tightness checks.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Show declared and observed class, solver and complexity row.
    ClassifyRule {
        rule: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
    },
    /// Generate a seeded 3DM instance.
    #[command(name = "gen-3dm")]
    Gen3dm {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// yes, no or any.
        #[arg(long, default_value = "any")]
        force: Force,
        /// Write here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::BudgetExceeded(_) | Error::CapExceeded(_)) => BUDGET,
            _ => USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_profile(path: &Path) -> Result<ProfileDocument, Failure> {
    parse_profile(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Rule and candidate from flags, falling back to the file.
fn resolve(doc: &ProfileDocument, args: &SolveArgs) -> Result<(ScoringRule, usize), Failure> {
    let rule = match (&args.rule, &doc.rule) {
        (Some(r), _) | (None, Some(r)) => parse_rule(r)?,
        (None, None) => return Err(Failure::Usage("no rule: pass --rule or add a `rule:` line".into())),
    };
    let c = match (&args.candidate, doc.distinguished) {
        (Some(name), _) => doc.profile.candidates().require(name)?,
        (None, Some(c)) => c,
        (None, None) => {
            return Err(Failure::Usage(
                "no candidate: pass --candidate or add a `distinguished:` line".into(),
            ))
        }
    };
    Ok((rule, c))
}

fn answer(yes: bool) -> u8 {
    println!("{}", if yes { "yes" } else { "no" });
    if yes {
        YES
    } else {
        NO
    }
}

fn solve_pw(args: &SolveArgs, witness_out: Option<&Path>) -> Outcome {
    let doc = load_profile(&args.profile)?;
    let (rule, c) = resolve(&doc, args)?;
    let (yes, witness) = if args.oracle {
        let a = pw_bruteforce(&doc.profile, &rule, c, args.semantics, args.budget)?;
        println!("solver: oracle");
        (a.is_winner, a.witness)
    } else {
        let config = SearchConfig {
            budget: args.budget,
            prune: true,
        };
        let a = possible_winner_with(&doc.profile, &rule, c, args.semantics, &config)?;
        println!("solver: {}", solver_kind(&rule));
        println!("nodes: {}", a.stats.nodes);
        println!("completions: {}", a.stats.completions);
        (a.is_possible_winner, a.witness)
    };
    if let (Some(path), Some(w)) = (witness_out, &witness) {
        let out = ProfileDocument {
            profile: w.clone(),
            distinguished: Some(c),
            rule: Some(rule.name().to_string()),
        };
        write(path, &render_profile(&out))?;
    }
    Ok(answer(yes))
}

fn solve_nw(args: &SolveArgs) -> Outcome {
    let doc = load_profile(&args.profile)?;
    let (rule, c) = resolve(&doc, args)?;
    let yes = if args.oracle {
        nw_bruteforce(&doc.profile, &rule, c, args.semantics, args.budget)?
    } else {
        necessary_winner(&doc.profile, &rule, c, args.semantics)?
    };
    Ok(answer(yes))
}

fn run_reduction(variant: Variant, inst: &pwsolve_core::reductions::ThreeDm, rule: Option<&str>) -> Result<ReductionOutput, Failure> {
    let need = || -> Result<ScoringRule, Failure> {
        let name = rule.ok_or_else(|| Failure::Usage(format!("--rule is required for {variant}")))?;
        Ok(parse_rule(name)?)
    };
    Ok(match variant {
        Variant::TwoApproval => reduce_2approval(inst)?,
        Variant::TwoValued => reduce_2valued(inst, &need()?)?,
        Variant::PValued => reduce_pvalued(inst, &need()?)?,
        Variant::Unbounded => reduce_unbounded(inst, &need()?)?,
        Variant::Ttb => reduce_ttb(inst, &need()?)?,
        Variant::Btb => reduce_btb(inst, &need()?)?,
    })
}

fn reduce(instance: &Path, variant: Variant, rule: Option<&str>, out: &Path, meta: Option<&Path>) -> Outcome {
    let inst = parse_3dm(&read(instance)?).map_err(|e| Failure::Usage(format!("{}: {e}", instance.display())))?;
    let red = run_reduction(variant, &inst, rule)?;
    let doc = ProfileDocument {
        profile: red.profile(),
        distinguished: Some(red.c),
        rule: Some(red.rule.clone()),
    };
    write(out, &render_profile(&doc))?;
    let meta_path = meta.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".meta");
        PathBuf::from(p)
    });
    write(&meta_path, &Sidecar::from_output(&red).render())?;
    println!("candidates: {}", red.m());
    println!("variable votes: {}", red.variable.len());
    println!("rigid votes: {}", red.rigid.len());
    println!("lambda: {}", red.lambda);
    println!("sidecar: {}", meta_path.display());
    Ok(YES)
}

fn verify(witness: &Path, meta: &Path, profile: Option<&Path>) -> Outcome {
    let side = Sidecar::parse(&read(meta)?).map_err(|e| Failure::Usage(format!("{}: {e}", meta.display())))?;
    let w = load_profile(witness)?;
    let partial = profile.map(load_profile).transpose()?;
    let report = verify_witness(&side, &w.profile, partial.as_ref().map(|d| &d.profile))?;
    println!("c wins: {}", report.c_wins);
    match &report.audit {
        Ok(()) => println!("score audit: ok"),
        Err(e) => println!("score audit: FAILED ({e})"),
    }
    match report.tight {
        Some(t) => println!("tightness: {}", if t { "ok" } else { "FAILED" }),
        None => println!("tightness: not checked"),
    }
    match &report.matching {
        Ok(m) => {
            let picked: Vec<String> = m.selected().iter().map(|i| (i + 1).to_string()).collect();
            println!("matching: {}", picked.join(" "));
        }
        Err(e) => println!("matching: FAILED ({e})"),
    }
    Ok(if report.ok() { YES } else { NO })
}

fn classify(name: &str, horizon: usize) -> Outcome {
    let rule = parse_rule(name)?;
    let check = rule.check(horizon);
    let row = classify_rule(&rule);
    println!("rule: {}", rule.name());
    println!("declared: {}", check.declared);
    println!("checked: {} (m <= {})", check.checked, check.horizon);
    println!("pure: {}", check.pure);
    if let Some(f) = &check.failure {
        println!("problem: {f}");
    }
    println!("family: {}", row.family);
    println!("solver: {}", row.solver);
    println!(
        "PW: {}  PW-PC: {}  PW-PP: {}  PW-DTB: {}  PW-TTB: {}  PW-BTB: {}",
        row.pw, row.pw_pc, row.pw_pp, row.pw_dtb, row.pw_ttb, row.pw_btb
    );
    Ok(if check.ok() { YES } else { NO })
}

fn gen(q: usize, t: usize, seed: u64, force: Force, out: Option<&Path>) -> Outcome {
    let text = render_3dm(&gen_3dm(q, t, seed, force)?);
    match out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(YES)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::SolvePw { args, witness } => solve_pw(args, witness.as_deref()),
        Cmd::SolveNw { args } => solve_nw(args),
        Cmd::Reduce {
            instance,
            variant,
            rule,
            out,
            meta,
        } => reduce(instance, *variant, rule.as_deref(), out, meta.as_deref()),
        Cmd::Verify { witness, meta, profile } => verify(witness, meta, profile.as_deref()),
        Cmd::ClassifyRule { rule, horizon } => classify(rule, *horizon),
        Cmd::Gen3dm { q, t, seed, force, out } => gen(*q, *t, *seed, *force, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
