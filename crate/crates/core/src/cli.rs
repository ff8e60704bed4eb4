//! The `gqod` command line.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embedding::{forest_embed, tree_embed, verify, EmbedError};
use crate::labels::{load_order_spec, presets, CombinedOrder, Index, Leaf, OrderError};
use crate::ordering::{i_sections, indices, Comparator, Level};
use crate::rewrite::{
    check_generic_method, check_rule_decrease, has_initial_shape, instantiate, is_terminal_shape, play, render_trace,
    replay, Bounds, FirstStrategy, GameConfig, GameError, GameTrace, GenericOptions, GreedyLargest, HydraRule,
    Interactive, Outcome, RandomStrategy, RewriteError, RuleTag, Strategy, TraceError,
};
use crate::terms::{parse, Term, TermError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_LIMIT: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "gqod",
    version,
    about = "Generalized quasi ordinal diagrams and the hydra game"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Order-spec file. Without it, the built-in preset is used.
    #[arg(long, global = true, value_name = "PATH")]
    pub order: Option<PathBuf>,
    /// Built-in order used when no --order is given.
    #[arg(long, global = true, value_enum, default_value_t = Preset::Hydra)]
    pub preset: Preset,
    /// Seed for random strategies and sampling; required by random strategies.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest copy count parameter offered for R1 and R1'.
    #[arg(long, global = true, default_value_t = 3)]
    pub k_max: usize,
    /// Candidates offered below a limit for R3.
    #[arg(long, global = true, default_value_t = 5)]
    pub r3_window: usize,
    /// Steps played at most.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub limit_steps: usize,
    /// Tree nodes a hydra may have before the game stops.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub limit_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Hydra,
    TwoChain,
    Counterexample,
    TwoElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    Random,
    Greedy,
    First,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two terms at one index, or decide ⋘ over all deciding levels.
    Compare {
        alpha: String,
        beta: String,
        /// Compare at this index (or `inf`) only.
        #[arg(long)]
        index: Option<String>,
    },
    /// List the i-sections of a term.
    Sections { term: String, index: String },
    /// List the indices of a term.
    Indices { term: String },
    /// Search a gap embedding of a connected term into another.
    Embed { alpha: String, beta: String },
    /// Search a forest embedding.
    ForestEmbed { alpha: String, beta: String },
    /// Check that one hydra rule instance strictly decreases.
    CheckRule {
        /// The redex, a node term.
        redex: String,
        /// R1, R1', R2 or R3.
        rule: String,
        /// Rule parameters: `k=N`, `path=@.. i-=NAME`, or `i=NAME`.
        params: Vec<String>,
        /// Substitution applied to the redex first, as `x=TERM`.
        #[arg(long = "subst", value_name = "VAR=TERM")]
        subst: Vec<String>,
    },
    /// Sample the generic method for a rule l ▷ r.
    CheckGeneric {
        l: String,
        r: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Comma-separated labels for the sampled contexts.
        #[arg(long, default_value = "0,1,2,1'")]
        labels: String,
    },
    /// Play, replay or interactively play the hydra game.
    #[command(subcommand)]
    Hydra(HydraCommand),
    /// Load and validate the order spec, then summarize it.
    ValidateOrder,
}

#[derive(Debug, Subcommand)]
pub enum HydraCommand {
    /// Play with automatic strategies.
    Run {
        initial: String,
        #[arg(long, value_enum, default_value_t = StrategyKind::Random)]
        heracles: StrategyKind,
        #[arg(long, value_enum, default_value_t = StrategyKind::Random)]
        hydra: StrategyKind,
        /// Accept initial hydras not of the form (ρ,α₁) # … # (ρ,αₙ).
        #[arg(long)]
        any_initial: bool,
    },
    /// Re-verify a trace file written by `run --format trace`.
    Replay { file: PathBuf },
    /// Choose both sides' moves from a numbered menu.
    Interactive {
        initial: String,
        #[arg(long)]
        any_initial: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("order spec: {0}")]
    Order(#[from] OrderError),
    #[error("term: {0}")]
    Term(#[from] TermError),
    #[error("{0}")]
    Embed(#[from] EmbedError),
    #[error("{0}")]
    Rewrite(#[from] RewriteError),
    #[error("trace: {0}")]
    Trace(TraceError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Trace(TraceError::Descent { .. }) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_order(g: &Global) -> Result<CombinedOrder, CliError> {
    let text = match &g.order {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => match g.preset {
            Preset::Hydra => presets::HYDRA,
            Preset::TwoChain => presets::TWO_CHAIN,
            Preset::Counterexample => presets::COUNTEREXAMPLE,
            Preset::TwoElement => presets::TWO_ELEMENT,
        }
        .to_string(),
    };
    Ok(load_order_spec(&text)?)
}

fn index(order: &CombinedOrder, name: &str) -> Result<Index, CliError> {
    order
        .lookup_index(name)
        .ok_or_else(|| CliError::Usage(format!("unknown index `{name}`")))
}

fn level(order: &CombinedOrder, name: &str) -> Result<Level, CliError> {
    match name {
        "inf" | "∞" | "infinity" => Ok(Level::Infinity),
        _ => Ok(Level::At(index(order, name)?)),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    }
}

fn config(g: &Global) -> Result<GameConfig, CliError> {
    if g.limit_size == 0 || g.r3_window == 0 {
        return Err(CliError::Usage("--limit-size and --r3-window must be positive".into()));
    }
    Ok(GameConfig {
        bounds: Bounds {
            k_max: g.k_max,
            r3_window: g.r3_window,
        },
        limit_steps: g.limit_steps,
        limit_size: g.limit_size,
    })
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = &cli.global;
    let order = load_order(g)?;
    let o = &order;
    let verdict = |b: bool| if b { EXIT_OK } else { EXIT_FAILS };
    match &cli.command {
        Command::Compare { alpha, beta, index } => {
            let a = parse(o, alpha)?;
            let b = parse(o, beta)?;
            let mut cmp = Comparator::new(o);
            match index {
                Some(name) => {
                    let l = level(o, name)?;
                    let c = cmp.compare(l, &a, &b);
                    writeln!(out, "at {}: {c}", l.name(o)).map_err(io)?;
                    writeln!(out, "leq: {}", c.leq).map_err(io)?;
                    writeln!(out, "geq: {}", c.geq).map_err(io)?;
                    writeln!(out, "strict: {}", c.less()).map_err(io)?;
                    Ok(verdict(c.leq))
                }
                None => {
                    for (l, c) in cmp.table(&a, &b) {
                        writeln!(out, "{:>6}  {c}", l.name(o)).map_err(io)?;
                    }
                    let lll = cmp.lll(&a, &b);
                    writeln!(out, "lll: {lll}").map_err(io)?;
                    writeln!(out, "lll-eq: {}", cmp.lll_eq(&a, &b)).map_err(io)?;
                    writeln!(out, "ggg: {}", cmp.lll(&b, &a)).map_err(io)?;
                    Ok(verdict(lll))
                }
            }
        }
        Command::Sections { term, index: name } => {
            let t = parse(o, term)?;
            let i = index(o, name)?;
            for s in i_sections(o, &t, i) {
                writeln!(out, "{}", s.display(o)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Indices { term } => {
            let t = parse(o, term)?;
            let names: Vec<String> = indices(o, &t).into_iter().map(|i| o.index.name(i)).collect();
            writeln!(out, "{}", names.join(" ")).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Embed { alpha, beta } => {
            let a = parse(o, alpha)?;
            let b = parse(o, beta)?;
            match tree_embed(o, &a, &b)? {
                Some(w) => {
                    verify(o, &a, &b, &w).map_err(CliError::Internal)?;
                    write!(out, "{w}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "none").map_err(io)?;
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::ForestEmbed { alpha, beta } => {
            let a = parse(o, alpha)?;
            let b = parse(o, beta)?;
            match forest_embed(o, &a, &b)? {
                Some(f) => {
                    for (k, w) in f.witnesses.iter().enumerate() {
                        verify(o, &a.components()[k], &b.components()[f.assignment[k]], w)
                            .map_err(CliError::Internal)?;
                    }
                    for (s, t) in f.pairs(&a, &b) {
                        writeln!(out, "{s} -> {t}").map_err(io)?;
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "none").map_err(io)?;
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::CheckRule {
            redex,
            rule,
            params,
            subst,
        } => {
            let mut sigma: HashMap<Leaf, Term> = HashMap::new();
            for s in subst {
                let (var, term) = s
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("expected VAR=TERM, got `{s}`")))?;
                let x = o
                    .lookup_leaf(var.trim())
                    .ok_or_else(|| CliError::Usage(format!("unknown leaf `{var}`")))?;
                sigma.insert(x, parse(o, term)?);
            }
            let lhs = parse(o, redex)?.substitute(&sigma);
            let tag: RuleTag = rule.parse()?;
            let words: Vec<&str> = params.iter().map(String::as_str).collect();
            let rule = HydraRule::from_params(o, tag, &words)?;
            let inst = instantiate(o, &lhs, &rule)?;
            let mut cmp = Comparator::new(o);
            let rep = check_rule_decrease(&mut cmp, &inst)?;
            writeln!(out, "lhs: {}", inst.lhs.display(o)).map_err(io)?;
            writeln!(out, "rhs: {}", inst.rhs.display(o)).map_err(io)?;
            for (l, c) in &rep.table {
                writeln!(out, "{:>6}  rhs {c} lhs", l.name(o)).map_err(io)?;
            }
            writeln!(out, "decrease: {}", rep.holds).map_err(io)?;
            Ok(verdict(rep.holds))
        }
        Command::CheckGeneric { l, r, trials, labels } => {
            let l = parse(o, l)?;
            let r = parse(o, r)?;
            let labels = labels
                .split(',')
                .map(|s| index(o, s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let opts = GenericOptions {
                trials: *trials,
                labels,
                context_size: 5,
                numeral_size: 4,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed.unwrap_or(0));
            let rep = check_generic_method(o, &l, &r, &opts, &mut rng)?;
            if !rep.applicable {
                writeln!(out, "not applicable: r ⋘ l does not hold").map_err(io)?;
                return Ok(EXIT_FAILS);
            }
            writeln!(
                out,
                "checked: {}\nskipped: {}\nviolations: {}",
                rep.checked,
                rep.skipped,
                rep.violations.len()
            )
            .map_err(io)?;
            for (big, small) in &rep.violations {
                writeln!(out, "  {}  not above  {}", big.display(o), small.display(o)).map_err(io)?;
            }
            Ok(verdict(rep.violations.is_empty()))
        }
        Command::Hydra(h) => hydra(g, o, h, stdin, out),
        Command::ValidateOrder => {
            writeln!(out, "index order: {:?}", o.index.kind()).map_err(io)?;
            if let Some(els) = o.index.elements() {
                let names: Vec<String> = els.into_iter().map(|i| o.index.name(i)).collect();
                writeln!(out, "indices: {}", names.join(" ")).map_err(io)?;
            }
            let leaves: Vec<&str> = o.leaf.elements().map(|a| o.leaf.name(a)).collect();
            writeln!(out, "leaves: {}", leaves.join(" ")).map_err(io)?;
            let vars: Vec<&str> = o.leaf.variables().map(|a| o.leaf.name(a)).collect();
            writeln!(out, "variables: {}", vars.join(" ")).map_err(io)?;
            match o.rho_leaf() {
                Some(r) => writeln!(out, "rho: {}", o.leaf.name(r)).map_err(io)?,
                None => writeln!(out, "rho: none").map_err(io)?,
            }
            writeln!(out, "sha256: {}", o.digest()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn strategy(kind: StrategyKind, seed: u64) -> Box<dyn Strategy> {
    match kind {
        StrategyKind::Random => Box::new(RandomStrategy::new(seed)),
        StrategyKind::Greedy => Box::new(GreedyLargest),
        StrategyKind::First => Box::new(FirstStrategy),
    }
}

fn initial_hydra(o: &CombinedOrder, text: &str, any_initial: bool) -> Result<Term, CliError> {
    let t = parse(o, text)?;
    if o.rho_index().is_none() {
        return Err(CliError::Usage("the hydra game needs an order with rho".into()));
    }
    if !any_initial && !has_initial_shape(o, &t) {
        return Err(CliError::Usage(
            "the initial hydra should have the form (ρ,α₁) # … # (ρ,αₙ); pass --any-initial to override".into(),
        ));
    }
    if !t.is_path_comparable(o) {
        return Err(CliError::Usage("the initial hydra is not path comparable".into()));
    }
    Ok(t)
}

fn hydra(
    g: &Global,
    o: &CombinedOrder,
    cmd: &HydraCommand,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let cfg = config(g)?;
    let trace = match cmd {
        HydraCommand::Run {
            initial,
            heracles,
            hydra,
            any_initial,
        } => {
            let t = initial_hydra(o, initial, *any_initial)?;
            let random = *heracles == StrategyKind::Random || *hydra == StrategyKind::Random;
            let seed = match (random, g.seed) {
                (true, None) => return Err(CliError::Usage("random strategies need --seed".into())),
                (_, s) => s.unwrap_or(0),
            };
            let mut a = strategy(*heracles, seed);
            // The hydra's generator gets its own stream of the same seed.
            let mut b = strategy(*hydra, seed ^ 0x9e37_79b9_7f4a_7c15);
            played(play(o, &t, a.as_mut(), b.as_mut(), cfg, random.then_some(seed)))?
        }
        HydraCommand::Interactive { initial, any_initial } => {
            let t = initial_hydra(o, initial, *any_initial)?;
            let result = {
                let mut a = Interactive::new(&mut *stdin, &mut *out);
                let mut b = a.clone();
                play(o, &t, &mut a, &mut b, cfg, None)
            };
            played(result)?
        }
        HydraCommand::Replay { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| CliError::Io {
                path: file.display().to_string(),
                message: e.to_string(),
            })?;
            let rep = replay(o, &text).map_err(CliError::Trace)?;
            let tr = rep.trace;
            writeln!(
                out,
                "verified: {} steps, descent verified, outcome {}",
                tr.steps.len(),
                tr.outcome
            )
            .map_err(io)?;
            return Ok(EXIT_OK);
        }
    };
    report(o, g.format, &trace, out)?;
    Ok(if trace.outcome.limit_exceeded() {
        EXIT_LIMIT
    } else {
        EXIT_OK
    })
}

fn played(result: Result<GameTrace, GameError>) -> Result<GameTrace, CliError> {
    result.map_err(|e| match e {
        GameError::DescentViolation { step, .. } => CliError::Internal(format!("step {step} is not a strict descent")),
        GameError::Rewrite(r) => CliError::Rewrite(r),
        GameError::NotInDomain => CliError::Usage(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })
}

fn report(o: &CombinedOrder, format: Format, tr: &GameTrace, out: &mut dyn Write) -> Result<(), CliError> {
    if format == Format::Trace {
        return out.write_all(render_trace(o, tr).as_bytes()).map_err(io);
    }
    writeln!(out, "initial: {}", tr.initial.display(o)).map_err(io)?;
    for (n, s) in tr.steps.iter().enumerate() {
        writeln!(
            out,
            "{:>5}. {} {} {}",
            n + 1,
            s.rule.tag(),
            s.position,
            s.rule.params(o)
        )
        .map_err(io)?;
        writeln!(out, "       => {}", s.result.display(o)).map_err(io)?;
    }
    let what = match tr.outcome {
        Outcome::Terminal => "terminated".to_string(),
        Outcome::StepLimit => format!("step limit of {} reached", tr.config.limit_steps),
        Outcome::SizeLimit => format!("size limit of {} nodes exceeded", tr.config.limit_size),
        Outcome::Stopped => "stopped".to_string(),
    };
    let descent = if tr.descent_verified() {
        "descent verified"
    } else {
        "descent violated"
    };
    writeln!(out, "verdict: {what}, {descent}, {} steps", tr.steps.len()).map_err(io)?;
    if tr.outcome == Outcome::Terminal && has_initial_shape(o, &tr.initial) {
        let shape = is_terminal_shape(o, tr.final_term());
        writeln!(
            out,
            "final hydra is {}a forest of numerals of depth at most 2",
            if shape { "" } else { "not " }
        )
        .map_err(io)?;
    }
    Ok(())
}
