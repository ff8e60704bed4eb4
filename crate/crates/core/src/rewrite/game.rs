use std::cell::RefCell;
use std::fmt;
use std::io::{BufRead, Write};
use std::rc::Rc;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::labels::CombinedOrder;
use crate::ordering::Comparator;
use crate::terms::{Position, Term};

use super::rules::{apply_rule, enumerate_moves, Bounds, HydraRule, Move, RuleTag};
use super::RewriteError;

/// Limits of one game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameConfig {
    pub bounds: Bounds,
    /// Steps played at most.
    pub limit_steps: usize,
    /// The game stops once the hydra has more tree nodes than this.
    pub limit_size: usize,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            bounds: Bounds::default(),
            limit_steps: 10_000,
            limit_size: 100_000,
        }
    }
}

/// A place Heracles may strike: the redex position, the rule, and for `R2`
/// the path to the cut node. The hydra then picks the remaining parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub position: Position,
    pub tag: RuleTag,
    pub path: Option<Position>,
}

impl Redex {
    fn of(m: &Move) -> Redex {
        Redex {
            position: m.position.clone(),
            tag: m.rule.tag(),
            path: m.rule.path().cloned(),
        }
    }

    fn admits(&self, rule: &HydraRule) -> bool {
        rule.tag() == self.tag && rule.path() == self.path.as_ref()
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tag, self.position)?;
        if let Some(p) = &self.path {
            write!(f, " path={p}")?;
        }
        Ok(())
    }
}

/// One played step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub position: Position,
    pub rule: HydraRule,
    pub result: Term,
    /// Whether the result is `⋘` the previous hydra.
    pub descent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// No move applies.
    Terminal,
    StepLimit,
    SizeLimit,
    /// A strategy declined to move.
    Stopped,
}

impl Outcome {
    pub fn limit_exceeded(self) -> bool {
        matches!(self, Outcome::StepLimit | Outcome::SizeLimit)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Terminal => "terminal",
            Outcome::StepLimit => "step-limit",
            Outcome::SizeLimit => "size-limit",
            Outcome::Stopped => "stopped",
        })
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "terminal" => Ok(Outcome::Terminal),
            "step-limit" => Ok(Outcome::StepLimit),
            "size-limit" => Ok(Outcome::SizeLimit),
            "stopped" => Ok(Outcome::Stopped),
            _ => Err(format!("unknown outcome `{s}`")),
        }
    }
}

/// A played game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTrace {
    pub initial: Term,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    /// Seed of the random strategies, when there were any.
    pub seed: Option<u64>,
    pub config: GameConfig,
}

impl GameTrace {
    pub fn final_term(&self) -> &Term {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    /// The initial hydra followed by every intermediate one.
    pub fn states(&self) -> Vec<Term> {
        std::iter::once(self.initial.clone())
            .chain(self.steps.iter().map(|s| s.result.clone()))
            .collect()
    }

    pub fn descent_verified(&self) -> bool {
        self.steps.iter().all(|s| s.descent)
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("the initial hydra is not path comparable")]
    NotInDomain,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("strategy: {0}")]
    Strategy(String),
    #[error("step {step}: the chosen rule does not fit the chosen redex")]
    Mismatch { step: usize },
    #[error("step {step} is not a strict descent")]
    DescentViolation { step: usize, trace: Box<GameTrace> },
}

/// A player. Heracles picks the redex, the hydra picks the rule
/// parameters; either side may stop the game by returning `None`.
pub trait Strategy {
    fn pick_redex(&mut self, order: &CombinedOrder, state: &Term, redexes: &[Redex]) -> Result<Option<usize>, String>;

    /// Picks parameters for `redex`. `moves` lists the bounded choices; a
    /// strategy may also answer with a rule outside them, which the engine
    /// validates.
    fn pick_rule(
        &mut self,
        order: &CombinedOrder,
        state: &Term,
        redex: &Redex,
        moves: &[&Move],
    ) -> Result<Option<HydraRule>, String>;
}

/// Uniformly random choices from a seeded generator.
pub struct RandomStrategy(ChaCha8Rng);

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        RandomStrategy(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl Strategy for RandomStrategy {
    fn pick_redex(&mut self, _: &CombinedOrder, _: &Term, redexes: &[Redex]) -> Result<Option<usize>, String> {
        Ok(Some(self.0.gen_range(0..redexes.len())))
    }

    fn pick_rule(
        &mut self,
        _: &CombinedOrder,
        _: &Term,
        _: &Redex,
        moves: &[&Move],
    ) -> Result<Option<HydraRule>, String> {
        Ok(Some(moves[self.0.gen_range(0..moves.len())].rule.clone()))
    }
}

/// Heracles strikes the redex with the largest sub-term; the hydra picks the
/// parameters giving the largest result. Ties go to the first option.
pub struct GreedyLargest;

impl Strategy for GreedyLargest {
    fn pick_redex(&mut self, _: &CombinedOrder, state: &Term, redexes: &[Redex]) -> Result<Option<usize>, String> {
        let size = |r: &Redex| state.subterm(&r.position).map_or(0, Term::nodes);
        Ok(first_max(redexes.iter().map(size)))
    }

    fn pick_rule(
        &mut self,
        _: &CombinedOrder,
        _: &Term,
        _: &Redex,
        moves: &[&Move],
    ) -> Result<Option<HydraRule>, String> {
        Ok(first_max(moves.iter().map(|m| m.result.nodes())).map(|k| moves[k].rule.clone()))
    }
}

fn first_max(values: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (k, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((k, v));
        }
    }
    best.map(|(k, _)| k)
}

/// Always the first option.
pub struct FirstStrategy;

impl Strategy for FirstStrategy {
    fn pick_redex(&mut self, _: &CombinedOrder, _: &Term, _: &[Redex]) -> Result<Option<usize>, String> {
        Ok(Some(0))
    }

    fn pick_rule(
        &mut self,
        _: &CombinedOrder,
        _: &Term,
        _: &Redex,
        moves: &[&Move],
    ) -> Result<Option<HydraRule>, String> {
        Ok(Some(moves[0].rule.clone()))
    }
}

/// Plays a fixed list of moves and stops after the last one. Use one
/// instance per side.
#[derive(Clone, Debug)]
pub struct Scripted {
    script: Vec<(Position, HydraRule)>,
    cursor: usize,
}

impl Scripted {
    pub fn new(script: Vec<(Position, HydraRule)>) -> Self {
        Scripted { script, cursor: 0 }
    }
}

impl Strategy for Scripted {
    fn pick_redex(&mut self, _: &CombinedOrder, _: &Term, redexes: &[Redex]) -> Result<Option<usize>, String> {
        let Some((pos, rule)) = self.script.get(self.cursor) else {
            return Ok(None);
        };
        let found = redexes
            .iter()
            .position(|r| r.position == *pos && r.admits(rule))
            .ok_or_else(|| {
                format!(
                    "scripted move {} ({} {pos}) is not available",
                    self.cursor + 1,
                    rule.tag()
                )
            })?;
        self.cursor += 1;
        Ok(Some(found))
    }

    fn pick_rule(&mut self, _: &CombinedOrder, _: &Term, _: &Redex, _: &[&Move]) -> Result<Option<HydraRule>, String> {
        let Some((_, rule)) = self.script.get(self.cursor) else {
            return Ok(None);
        };
        self.cursor += 1;
        Ok(Some(rule.clone()))
    }
}

/// A numbered-menu player reading choices from `input`. Clones share the
/// same streams, so one terminal can play both sides.
pub struct Interactive<R, W> {
    io: Rc<RefCell<(R, W)>>,
}

impl<R, W> Clone for Interactive<R, W> {
    fn clone(&self) -> Self {
        Interactive { io: self.io.clone() }
    }
}

impl<R: BufRead, W: Write> Interactive<R, W> {
    pub fn new(input: R, output: W) -> Self {
        Interactive {
            io: Rc::new(RefCell::new((input, output))),
        }
    }

    fn menu(&mut self, title: &str, options: &[String]) -> Result<Option<usize>, String> {
        let mut io = self.io.borrow_mut();
        let (input, output) = &mut *io;
        let err = |e: std::io::Error| e.to_string();
        writeln!(output, "{title}").map_err(err)?;
        for (k, o) in options.iter().enumerate() {
            writeln!(output, "  [{}] {o}", k + 1).map_err(err)?;
        }
        loop {
            write!(output, "choice (1-{}, q to stop)> ", options.len()).map_err(err)?;
            output.flush().map_err(err)?;
            let mut line = String::new();
            if input.read_line(&mut line).map_err(err)? == 0 {
                return Ok(None);
            }
            let line = line.trim();
            if line == "q" {
                return Ok(None);
            }
            match line.parse::<usize>() {
                Ok(n) if (1..=options.len()).contains(&n) => return Ok(Some(n - 1)),
                _ => writeln!(output, "please enter a number between 1 and {}", options.len()).map_err(err)?,
            }
        }
    }
}

impl<R: BufRead, W: Write> Strategy for Interactive<R, W> {
    fn pick_redex(&mut self, order: &CombinedOrder, state: &Term, redexes: &[Redex]) -> Result<Option<usize>, String> {
        let options: Vec<String> = redexes
            .iter()
            .map(|r| {
                let sub = state.subterm(&r.position).expect("enumerated position");
                format!("{r}  on {}", sub.display(order))
            })
            .collect();
        self.menu(&format!("hydra: {}\nHeracles strikes:", state.display(order)), &options)
    }

    fn pick_rule(
        &mut self,
        order: &CombinedOrder,
        _: &Term,
        _: &Redex,
        moves: &[&Move],
    ) -> Result<Option<HydraRule>, String> {
        let options: Vec<String> = moves
            .iter()
            .map(|m| format!("{}  => {}", m.rule.params(order), m.result.display(order)))
            .collect();
        Ok(self
            .menu("the hydra answers:", &options)?
            .map(|k| moves[k].rule.clone()))
    }
}

/// Every component is a node labelled `ρ`: `(ρ, α₁) # … # (ρ, αₙ)`.
pub fn has_initial_shape(order: &CombinedOrder, t: &Term) -> bool {
    let Some(rho) = order.rho_index() else { return false };
    t.components()
        .iter()
        .all(|c| c.as_node().is_some_and(|(i, _)| i == rho))
}

/// A forest of numeral terms of depth at most 2 (root at depth 0).
pub fn is_terminal_shape(order: &CombinedOrder, t: &Term) -> bool {
    t.components().iter().all(|c| c.is_numeral(order) && c.depth() <= 2)
}

/// Plays from `initial` until no move applies, a limit is hit, or a player
/// stops. Every step is checked for strict `⋘`-descent.
pub fn play(
    order: &CombinedOrder,
    initial: &Term,
    heracles: &mut dyn Strategy,
    hydra: &mut dyn Strategy,
    config: GameConfig,
    seed: Option<u64>,
) -> Result<GameTrace, GameError> {
    if !initial.is_path_comparable(order) {
        return Err(GameError::NotInDomain);
    }
    let mut cmp = Comparator::new(order);
    let mut trace = GameTrace {
        initial: initial.clone(),
        steps: Vec::new(),
        outcome: Outcome::Terminal,
        seed,
        config,
    };
    let mut state = initial.clone();
    trace.outcome = loop {
        if state.nodes() > config.limit_size {
            break Outcome::SizeLimit;
        }
        let moves = enumerate_moves(order, &state, config.bounds);
        if moves.is_empty() {
            break Outcome::Terminal;
        }
        if trace.steps.len() >= config.limit_steps {
            break Outcome::StepLimit;
        }
        let mut redexes: Vec<Redex> = Vec::new();
        for m in &moves {
            let r = Redex::of(m);
            if !redexes.contains(&r) {
                redexes.push(r);
            }
        }
        let Some(pick) = heracles
            .pick_redex(order, &state, &redexes)
            .map_err(GameError::Strategy)?
        else {
            break Outcome::Stopped;
        };
        let redex = redexes
            .get(pick)
            .ok_or_else(|| GameError::Strategy(format!("redex choice {pick} out of range")))?;
        let options: Vec<&Move> = moves.iter().filter(|m| Redex::of(m) == *redex).collect();
        let Some(rule) = hydra
            .pick_rule(order, &state, redex, &options)
            .map_err(GameError::Strategy)?
        else {
            break Outcome::Stopped;
        };
        let step = trace.steps.len() + 1;
        if !redex.admits(&rule) {
            return Err(GameError::Mismatch { step });
        }
        let result = match options.iter().find(|m| m.rule == rule) {
            Some(m) => m.result.clone(),
            None => apply_rule(order, &state, &redex.position, &rule)?,
        };
        let descent = cmp.lll(&result, &state);
        cmp.clear();
        trace.steps.push(Step {
            position: redex.position.clone(),
            rule,
            result: result.clone(),
            descent,
        });
        if !descent {
            trace.outcome = Outcome::Stopped;
            return Err(GameError::DescentViolation {
                step,
                trace: Box::new(trace),
            });
        }
        state = result;
    };
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_hydra;
    use crate::labels::{load_order_spec, presets, Index};
    use crate::terms::parse;

    fn hydra() -> CombinedOrder {
        load_order_spec(presets::HYDRA).unwrap()
    }

    #[test]
    fn terminal_initial_gives_empty_trace() {
        let o = hydra();
        let t = parse(&o, "(0, 0 # 0) # (0, 0)").unwrap();
        let tr = play(
            &o,
            &t,
            &mut FirstStrategy,
            &mut FirstStrategy,
            GameConfig::default(),
            None,
        )
        .unwrap();
        assert!(tr.steps.is_empty());
        assert_eq!(tr.outcome, Outcome::Terminal);
        assert!(is_terminal_shape(&o, tr.final_term()));
    }

    #[test]
    fn step_limit_zero_stops_immediately() {
        let o = hydra();
        let t = parse(&o, "(0, (0, 0))").unwrap();
        let cfg = GameConfig {
            limit_steps: 0,
            ..GameConfig::default()
        };
        let tr = play(&o, &t, &mut FirstStrategy, &mut FirstStrategy, cfg, None).unwrap();
        assert!(tr.steps.is_empty());
        assert_eq!(tr.outcome, Outcome::StepLimit);
    }

    #[test]
    fn small_games_descend_until_they_stop() {
        let o = hydra();
        let labels: Vec<Index> = ["0", "1", "2", "1'", "ω'"]
            .iter()
            .map(|s| o.lookup_index(s).unwrap())
            .collect();
        let leaves = [o.rho_leaf().unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..10 {
            let h = random_hydra(&mut rng, &o, &labels, &leaves, 5, 3);
            let mut a = RandomStrategy::new(seed);
            let mut b = RandomStrategy::new(seed + 1000);
            let cfg = GameConfig {
                limit_steps: 200,
                limit_size: 200,
                ..GameConfig::default()
            };
            let tr = play(&o, &h, &mut a, &mut b, cfg, Some(seed)).unwrap();
            assert!(tr.descent_verified(), "{}", h.display(&o));
            if tr.outcome == Outcome::Terminal {
                assert!(enumerate_moves(&o, tr.final_term(), cfg.bounds).is_empty());
            }
        }
    }

    #[test]
    fn interactive_menu_reads_choices() {
        let o = hydra();
        let t = parse(&o, "(0, (0, (0, 0)))").unwrap();
        let input = std::io::Cursor::new(b"1\n5\n2\nq\n".to_vec());
        let mut out = Vec::new();
        {
            let mut p = Interactive::new(input, &mut out);
            let mut q = p.clone();
            let cfg = GameConfig::default();
            let tr = play(&o, &t, &mut p, &mut q, cfg, None).unwrap();
            assert_eq!(tr.steps.len(), 1);
            assert_eq!(tr.steps[0].rule, HydraRule::R1Prime { k: 1 });
            assert_eq!(tr.outcome, Outcome::Stopped);
        }
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("please enter a number"));
    }

    #[test]
    fn greedy_prefers_larger_results() {
        let o = hydra();
        let t = parse(&o, "(0, (0, 0))").unwrap();
        let tr = play(
            &o,
            &t,
            &mut GreedyLargest,
            &mut GreedyLargest,
            GameConfig::default(),
            None,
        )
        .unwrap();
        assert_eq!(tr.steps[0].rule, HydraRule::R1Prime { k: 3 });
        assert!(tr.descent_verified());
    }
}
