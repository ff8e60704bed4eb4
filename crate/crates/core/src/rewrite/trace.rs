//! Line-oriented game traces.
//!
//! ```text
//! gqod-trace 1
//! order <sha256 of the order spec>
//! seed <u64 | none>
//! limits k-max=3 r3-window=5 steps=10000 size=100000
//! initial <term>
//! step 1 R2 @ path=@0.1 i-=0 => <term>
//! end terminal steps=1 descent=verified
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::labels::CombinedOrder;
use crate::ordering::Comparator;
use crate::terms::{parse, Position, TermError};

use super::game::{GameConfig, GameTrace, Outcome, Step};
use super::rules::{apply_rule, enumerate_moves, Bounds, HydraRule, RuleTag};
use super::RewriteError;

const MAGIC: &str = "gqod-trace 1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Term { line: usize, source: TermError },
    #[error("the trace was recorded with order {found}, but the loaded order is {expected}")]
    Digest { expected: String, found: String },
    #[error("step {step}: {source}")]
    Rewrite { step: usize, source: RewriteError },
    #[error("step {step}: the recorded hydra differs from the rule's result")]
    ResultMismatch { step: usize },
    #[error("step {step} is not a strict descent")]
    Descent { step: usize },
    #[error("the recorded outcome is wrong: {0}")]
    Outcome(String),
    #[error("the trace is not in canonical form")]
    NotCanonical,
}

/// Renders `trace` in the line format.
pub fn render_trace(order: &CombinedOrder, trace: &GameTrace) -> String {
    let mut out = String::new();
    let c = &trace.config;
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "order {}", order.digest()).unwrap();
    match trace.seed {
        Some(s) => writeln!(out, "seed {s}").unwrap(),
        None => writeln!(out, "seed none").unwrap(),
    }
    writeln!(
        out,
        "limits k-max={} r3-window={} steps={} size={}",
        c.bounds.k_max, c.bounds.r3_window, c.limit_steps, c.limit_size
    )
    .unwrap();
    writeln!(out, "initial {}", trace.initial.display(order)).unwrap();
    for (n, s) in trace.steps.iter().enumerate() {
        writeln!(
            out,
            "step {} {} {} {} => {}",
            n + 1,
            s.rule.tag(),
            s.position,
            s.rule.params(order),
            s.result.display(order)
        )
        .unwrap();
    }
    let descent = if trace.descent_verified() {
        "verified"
    } else {
        "violated"
    };
    writeln!(
        out,
        "end {} steps={} descent={descent}",
        trace.outcome,
        trace.steps.len()
    )
    .unwrap();
    out
}

fn syntax(line: usize, message: impl Into<String>) -> TraceError {
    TraceError::Syntax {
        line,
        message: message.into(),
    }
}

fn field<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, TraceError> {
    text.split(' ')
        .find_map(|w| w.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| syntax(line, format!("missing `{key}=`")))
}

fn number<T: std::str::FromStr>(line: usize, text: &str) -> Result<T, TraceError> {
    text.parse()
        .map_err(|_| syntax(line, format!("`{text}` is not a number")))
}

/// Parses a trace without re-checking it. The order digest must match.
pub fn parse_trace(order: &CombinedOrder, text: &str) -> Result<GameTrace, TraceError> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l));
    let mut next = |what: &str| lines.next().ok_or_else(|| syntax(0, format!("missing {what} line")));

    let (n, l) = next("header")?;
    if l != MAGIC {
        return Err(syntax(n, "not a gqod trace"));
    }
    let (n, l) = next("order")?;
    let found = l.strip_prefix("order ").ok_or_else(|| syntax(n, "expected `order`"))?;
    if found != order.digest() {
        return Err(TraceError::Digest {
            expected: order.digest().to_string(),
            found: found.to_string(),
        });
    }
    let (n, l) = next("seed")?;
    let seed = match l.strip_prefix("seed ").ok_or_else(|| syntax(n, "expected `seed`"))? {
        "none" => None,
        s => Some(number(n, s)?),
    };
    let (n, l) = next("limits")?;
    let rest = l
        .strip_prefix("limits ")
        .ok_or_else(|| syntax(n, "expected `limits`"))?;
    let config = GameConfig {
        bounds: Bounds {
            k_max: number(n, field(n, rest, "k-max")?)?,
            r3_window: number(n, field(n, rest, "r3-window")?)?,
        },
        limit_steps: number(n, field(n, rest, "steps")?)?,
        limit_size: number(n, field(n, rest, "size")?)?,
    };
    let (n, l) = next("initial")?;
    let initial_text = l
        .strip_prefix("initial ")
        .ok_or_else(|| syntax(n, "expected `initial`"))?;
    let initial = parse(order, initial_text).map_err(|source| TraceError::Term { line: n, source })?;

    let mut steps = Vec::new();
    loop {
        let (n, l) = next("end")?;
        if let Some(rest) = l.strip_prefix("end ") {
            let mut words = rest.split(' ');
            let outcome: Outcome = words
                .next()
                .unwrap_or_default()
                .parse()
                .map_err(|e: String| syntax(n, e))?;
            let count: usize = number(n, field(n, rest, "steps")?)?;
            if count != steps.len() {
                return Err(syntax(
                    n,
                    format!("`steps={count}` but {} steps are listed", steps.len()),
                ));
            }
            let descent = field(n, rest, "descent")? == "verified";
            if let Some((_, extra)) = lines.next() {
                if !extra.is_empty() {
                    return Err(syntax(n + 1, "text after the end line"));
                }
            }
            let mut trace = GameTrace {
                initial,
                steps,
                outcome,
                seed,
                config,
            };
            if !descent {
                if let Some(s) = trace.steps.last_mut() {
                    s.descent = false;
                }
            }
            return Ok(trace);
        }
        let rest = l
            .strip_prefix("step ")
            .ok_or_else(|| syntax(n, "expected `step` or `end`"))?;
        let (head, result_text) = rest.split_once(" => ").ok_or_else(|| syntax(n, "missing `=>`"))?;
        let words: Vec<&str> = head.split(' ').collect();
        if words.len() < 3 {
            return Err(syntax(n, "expected `step <n> <rule> <position> <params>`"));
        }
        let index: usize = number(n, words[0])?;
        if index != steps.len() + 1 {
            return Err(syntax(n, format!("expected step {}", steps.len() + 1)));
        }
        let tag: RuleTag = words[1].parse().map_err(|e: RewriteError| syntax(n, e.to_string()))?;
        let position: Position = words[2]
            .parse()
            .map_err(|source| TraceError::Term { line: n, source })?;
        let rule = HydraRule::from_params(order, tag, &words[3..]).map_err(|e| syntax(n, e.to_string()))?;
        let result = parse(order, result_text).map_err(|source| TraceError::Term { line: n, source })?;
        steps.push(Step {
            position,
            rule,
            result,
            descent: true,
        });
    }
}

/// Outcome of [`replay`].
#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub trace: GameTrace,
}

/// Re-verifies a trace: every step is re-applied and re-checked for strict
/// descent, the outcome is re-derived, and the re-rendered trace must equal
/// the input byte for byte.
pub fn replay(order: &CombinedOrder, text: &str) -> Result<ReplayReport, TraceError> {
    let recorded = parse_trace(order, text)?;
    let mut cmp = Comparator::new(order);
    let mut state = recorded.initial.clone();
    let mut steps = Vec::with_capacity(recorded.steps.len());
    for (n, s) in recorded.steps.iter().enumerate() {
        let step = n + 1;
        let result =
            apply_rule(order, &state, &s.position, &s.rule).map_err(|source| TraceError::Rewrite { step, source })?;
        if result != s.result {
            return Err(TraceError::ResultMismatch { step });
        }
        if !cmp.lll(&result, &state) {
            return Err(TraceError::Descent { step });
        }
        cmp.clear();
        steps.push(Step {
            descent: true,
            ..s.clone()
        });
        state = result;
    }
    let c = recorded.config;
    let moves_left = !enumerate_moves(order, &state, c.bounds).is_empty();
    let consistent = match recorded.outcome {
        Outcome::Terminal => !moves_left,
        Outcome::StepLimit => moves_left && steps.len() >= c.limit_steps,
        Outcome::SizeLimit => state.nodes() > c.limit_size,
        Outcome::Stopped => moves_left,
    };
    if !consistent {
        return Err(TraceError::Outcome(format!(
            "`{}` does not hold for the final hydra",
            recorded.outcome
        )));
    }
    let trace = GameTrace { steps, ..recorded };
    if render_trace(order, &trace) != text {
        return Err(TraceError::NotCanonical);
    }
    Ok(ReplayReport { trace })
}
