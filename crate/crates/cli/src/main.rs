use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lambek_core::grammar::{
    anbncn_grammar, cfg_to_grammar, format_grammar, parse_grammar, recognize_with, tokenize_word,
    Cfg, Grammar, RecognizeOptions,
};
use lambek_core::prover::{
    proof_from_json, proof_to_json, render_text, verify_proof, DEFAULT_BUDGET,
};
use lambek_core::reduction::{
    build_reduction, enumerate_instances, solve_3partition, validate_instance,
    ThreePartitionInstance,
};
use lambek_core::{
    format_formula, parse_sequent, validate_input, CalculusMode, ProveError, Prover,
};

const DERIVABLE: u8 = 0;
const REJECTED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lambek",
    version,
    about = "Lambek calculus prover and categorial grammar parser"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    L,
    Sdl,
    #[value(name = "sdl-")]
    SdlMinus,
}

impl From<Mode> for CalculusMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::L => CalculusMode::L,
            Mode::Sdl => CalculusMode::Sdl,
            Mode::SdlMinus => CalculusMode::SdlMinus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Anbncn,
}

#[derive(clap::Args)]
struct Config {
    /// Calculus to search in.
    #[arg(long, value_enum, default_value = "sdl")]
    mode: Mode,
    /// Node expansions allowed per proof search.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent such as "np, np\s => s".
    Prove {
        #[command(flatten)]
        config: Config,
        sequent: String,
    },
    /// Decide whether a word is in a grammar's language.
    Parse {
        #[command(flatten)]
        config: Config,
        /// Use a built-in grammar instead of a file.
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        /// Read the grammar file as a context-free grammar in Greibach normal form.
        #[arg(long)]
        cfg: bool,
        /// Print the proof of the witnessing sequent.
        #[arg(long)]
        proof: bool,
        /// [GRAMMAR] WORD
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Build the grammar and word for a 3-Partition instance.
    Reduce { instance: PathBuf, prefix: PathBuf },
    /// Solve a 3-Partition instance by backtracking.
    Solve3p { instance: PathBuf },
    /// List every valid 3-Partition instance within the bounds, one JSON object per line.
    Generate {
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        #[arg(long, default_value_t = 16)]
        max_bound: u64,
    },
    /// Verify a JSON proof tree.
    Check {
        #[arg(long, value_enum, default_value = "sdl")]
        mode: Mode,
        proof: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Prove { config, sequent } => cmd_prove(&config, &sequent),
        Command::Parse {
            config,
            builtin,
            cfg,
            proof,
            args,
        } => {
            let (grammar, word) = match (builtin, args.as_slice()) {
                (Some(Builtin::Anbncn), [word]) => (anbncn_grammar(), word),
                (None, [path, word]) => (load_grammar(Path::new(path), cfg)?, word),
                (Some(_), _) => bail!("--builtin takes only the word"),
                (None, _) => bail!("expected a grammar file and a word"),
            };
            cmd_parse(&config, &grammar, word, proof)
        }
        Command::Reduce { instance, prefix } => cmd_reduce(&instance, &prefix),
        Command::Solve3p { instance } => cmd_solve3p(&instance),
        Command::Generate { max_m, max_bound } => {
            for inst in enumerate_instances(max_m, max_bound) {
                println!("{}", serde_json::to_string(&inst)?);
            }
            Ok(DERIVABLE)
        }
        Command::Check { mode, proof } => cmd_check(mode.into(), &proof),
    }
}

fn cmd_prove(config: &Config, text: &str) -> Result<u8> {
    let mode = config.mode.into();
    let sequent = parse_sequent(text)?;
    let mut fatal = false;
    for v in validate_input(&sequent, mode) {
        eprintln!("{v}");
        fatal |= !v.is_warning();
    }
    if fatal {
        return Ok(INPUT_ERROR);
    }
    let outcome = match Prover::new(mode).with_budget(config.budget).prove(&sequent) {
        Ok(o) => o,
        Err(ProveError::BudgetExhausted { budget }) => {
            eprintln!("unknown: budget of {budget} nodes exhausted");
            return Ok(UNKNOWN);
        }
    };
    match (&outcome.proof, config.output) {
        (Some(p), Output::Text) => print!("{}", render_text(p)),
        (Some(p), Output::Json) => println!("{}", serde_json::to_string_pretty(&proof_to_json(p))?),
        (None, Output::Text) => println!("underivable in {mode}"),
        (None, Output::Json) => println!("null"),
    }
    Ok(if outcome.proof.is_some() {
        DERIVABLE
    } else {
        REJECTED
    })
}

fn load_grammar(path: &Path, cfg: bool) -> Result<Grammar> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let grammar = if cfg {
        cfg_to_grammar(&Cfg::parse(&text)?)?
    } else {
        parse_grammar(&text)?
    };
    Ok(grammar)
}

fn cmd_parse(config: &Config, grammar: &Grammar, word: &str, with_proof: bool) -> Result<u8> {
    let mode = config.mode.into();
    let tokens = tokenize_word(word);
    let opts = RecognizeOptions {
        budget: config.budget,
        deadline: None,
    };
    let result = recognize_with(grammar, &tokens, mode, &opts)?;
    let verdict = if result.member {
        "member"
    } else if result.is_unknown() {
        "unknown"
    } else {
        "non-member"
    };
    match config.output {
        Output::Text => {
            println!("{verdict}");
            if let Some(a) = &result.assignment {
                for (t, f) in tokens.iter().zip(a) {
                    println!("  {t} : {}", format_formula(f));
                }
            }
            if let (true, Some(p)) = (with_proof, &result.proof) {
                print!("{}", render_text(p));
            }
        }
        Output::Json => {
            let mut out = json!({
                "member": result.member,
                "unknown": result.is_unknown(),
                "assignment": result.assignment.as_ref().map(|a| {
                    a.iter().map(|f| Value::String(format_formula(f))).collect::<Vec<_>>()
                }),
            });
            if with_proof {
                out["proof"] = result.proof.as_ref().map_or(Value::Null, proof_to_json);
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(if result.member {
        DERIVABLE
    } else if result.is_unknown() {
        UNKNOWN
    } else {
        REJECTED
    })
}

fn read_instance(path: &Path) -> Result<Option<ThreePartitionInstance>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let inst: ThreePartitionInstance =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let violations = validate_instance(&inst);
    if violations.is_empty() {
        return Ok(Some(inst));
    }
    for v in violations {
        eprintln!("invalid instance: {v}");
    }
    Ok(None)
}

fn cmd_reduce(instance: &Path, prefix: &Path) -> Result<u8> {
    let Some(inst) = read_instance(instance)? else {
        return Ok(INPUT_ERROR);
    };
    let out = build_reduction(&inst)?;
    let grammar_path = with_suffix(prefix, "grammar");
    let word_path = with_suffix(prefix, "word");
    fs::write(&grammar_path, format_grammar(&out.grammar))
        .with_context(|| format!("writing {}", grammar_path.display()))?;
    fs::write(&word_path, out.word_text() + "\n")
        .with_context(|| format!("writing {}", word_path.display()))?;
    println!("{}", out.word_text());
    Ok(DERIVABLE)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_solve3p(instance: &Path) -> Result<u8> {
    let Some(inst) = read_instance(instance)? else {
        return Ok(INPUT_ERROR);
    };
    match solve_3partition(&inst) {
        Some(p) => {
            println!("{}", serde_json::to_string(&p)?);
            Ok(DERIVABLE)
        }
        None => {
            println!("null");
            Ok(REJECTED)
        }
    }
}

fn cmd_check(mode: CalculusMode, path: &Path) -> Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let proof = proof_from_json(&value)?;
    match verify_proof(&proof, mode) {
        Ok(()) => {
            println!("valid {mode} proof of {}", proof.conclusion);
            Ok(DERIVABLE)
        }
        Err(failure) => {
            println!("invalid: {failure}");
            Ok(REJECTED)
        }
    }
}
