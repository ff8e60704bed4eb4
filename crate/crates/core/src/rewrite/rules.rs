use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::labels::{Classification, CombinedOrder, Index};
use crate::terms::{Position, Term};

use super::context::{CiContext, Context};
use super::RewriteError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleTag {
    R1,
    R1Prime,
    R2,
    R3,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleTag::R1 => "R1",
            RuleTag::R1Prime => "R1'",
            RuleTag::R2 => "R2",
            RuleTag::R3 => "R3",
        })
    }
}

impl FromStr for RuleTag {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R1" => Ok(RuleTag::R1),
            "R1'" => Ok(RuleTag::R1Prime),
            "R2" => Ok(RuleTag::R2),
            "R3" => Ok(RuleTag::R3),
            _ => Err(RewriteError::Parameter(format!("unknown rule `{s}`"))),
        }
    }
}

/// A hydra rule together with its freely chosen parameters.
///
/// The redex is the node at the move's position. For `R2` that is the outer
/// `(j, …)` node, and `path` leads from it to the cut node `(i, a)`: its
/// first selector picks the component of `j`'s body, the rest descend
/// through the context `uᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HydraRule {
    /// `(i, α⃗ # (ρ,ρ) # β⃗) ▷ (i, α⃗ # β⃗)·(k+1) # ρ·2` with `α⃗ # β⃗` non-empty.
    R1 { k: usize },
    /// `(i, (ρ,ρ)) ▷ (i, ρ)·(k+1) # ρ`.
    R1Prime { k: usize },
    /// `(j, α⃗ # uᵢ[(i,a)] # β⃗) ▷ (j, α⃗ # uᵢ[(i⁻, uᵢ[(ρ,a)])↾J] # β⃗) # ρ`.
    R2 { path: Position, i_minus: Index },
    /// `(λ, a) ▷ (i, a) # ρ` for a limit `λ` and `i < λ`.
    R3 { i: Index },
}

impl HydraRule {
    pub fn tag(&self) -> RuleTag {
        match self {
            HydraRule::R1 { .. } => RuleTag::R1,
            HydraRule::R1Prime { .. } => RuleTag::R1Prime,
            HydraRule::R2 { .. } => RuleTag::R2,
            HydraRule::R3 { .. } => RuleTag::R3,
        }
    }

    /// The R2 path, which together with the position identifies the redex.
    pub fn path(&self) -> Option<&Position> {
        match self {
            HydraRule::R2 { path, .. } => Some(path),
            _ => None,
        }
    }

    /// Parameters in `key=value` form, as written in traces.
    pub fn params(&self, order: &CombinedOrder) -> String {
        match self {
            HydraRule::R1 { k } | HydraRule::R1Prime { k } => format!("k={k}"),
            HydraRule::R2 { path, i_minus } => format!("path={path} i-={}", order.index.name(*i_minus)),
            HydraRule::R3 { i } => format!("i={}", order.index.name(*i)),
        }
    }

    /// Inverse of [`HydraRule::params`].
    pub fn from_params(order: &CombinedOrder, tag: RuleTag, params: &[&str]) -> Result<Self, RewriteError> {
        let get = |key: &str| -> Result<&str, RewriteError> {
            params
                .iter()
                .find_map(|p| p.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| RewriteError::Parameter(format!("missing parameter `{key}` for {tag}")))
        };
        let index = |name: &str| {
            order
                .lookup_index(name)
                .ok_or_else(|| RewriteError::Parameter(format!("unknown index `{name}`")))
        };
        let expected = if tag == RuleTag::R2 { 2 } else { 1 };
        if params.len() != expected {
            return Err(RewriteError::Parameter(format!(
                "{tag} takes {expected} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(match tag {
            RuleTag::R1 | RuleTag::R1Prime => {
                let k = get("k")?
                    .parse()
                    .map_err(|_| RewriteError::Parameter("k must be a natural number".into()))?;
                if tag == RuleTag::R1 {
                    HydraRule::R1 { k }
                } else {
                    HydraRule::R1Prime { k }
                }
            }
            RuleTag::R2 => HydraRule::R2 {
                path: get("path")?.parse()?,
                i_minus: index(get("i-")?)?,
            },
            RuleTag::R3 => HydraRule::R3 { i: index(get("i")?)? },
        })
    }
}

/// What a fired rule instance consisted of.
#[derive(Clone, Debug)]
pub enum InstanceDetail {
    Copy {
        i: Index,
        k: usize,
    },
    Cut {
        j: Index,
        i: Index,
        i_minus: Index,
        /// `uᵢ`, with its bound label `i`.
        context: CiContext,
        /// The body bound to `a`.
        a: Term,
        /// `J`.
        segment_set: BTreeSet<Index>,
    },
    Limit {
        lambda: Index,
        i: Index,
    },
}

/// A ground rule instance `lσ ▷ rσ`.
#[derive(Clone, Debug)]
pub struct RuleInstance {
    pub lhs: Term,
    pub rhs: Term,
    pub detail: InstanceDetail,
}

fn shape(tag: RuleTag, reason: impl Into<String>) -> RewriteError {
    RewriteError::Shape {
        rule: tag,
        reason: reason.into(),
    }
}

fn rho_parts(order: &CombinedOrder) -> Result<(Index, Term), RewriteError> {
    let ri = order.rho_index().ok_or(RewriteError::NoRho)?;
    let rl = order.rho_leaf().ok_or(RewriteError::NoRho)?;
    Ok((ri, Term::leaf(rl)))
}

/// Instantiates `rule` with the redex `lσ`, returning `lσ ▷ rσ`.
///
/// A variable `a` of the left-hand side binds the whole body under the cut
/// (or limit) node, so the rules fire on any body, not just on leaves.
pub fn instantiate(order: &CombinedOrder, redex: &Term, rule: &HydraRule) -> Result<RuleInstance, RewriteError> {
    let tag = rule.tag();
    let (i, body) = redex.as_node().ok_or_else(|| shape(tag, "the redex is not a node"))?;
    let (rho_i, rho) = rho_parts(order)?;
    let rho_rho = Term::node(rho_i, rho.clone());
    let rhs = match rule {
        HydraRule::R1 { k } => {
            let comps = body.components();
            if comps.len() < 2 {
                return Err(shape(tag, "the body needs (ρ,ρ) and at least one other component"));
            }
            let at = comps
                .iter()
                .position(|c| *c == rho_rho)
                .ok_or_else(|| shape(tag, "no (ρ,ρ) component in the body"))?;
            let rest = comps
                .iter()
                .enumerate()
                .filter(|&(n, _)| n != at)
                .map(|(_, c)| c.clone());
            let kept = Term::node(i, Term::sum(rest));
            Term::sum([kept.copies(k + 1), rho.copies(2)])
        }
        HydraRule::R1Prime { k } => {
            if *body != rho_rho {
                return Err(shape(tag, "the body is not (ρ,ρ)"));
            }
            Term::sum([Term::node(i, rho.clone()).copies(k + 1), rho.clone()])
        }
        HydraRule::R2 { path, i_minus } => {
            return instantiate_cut(order, redex, path, *i_minus);
        }
        HydraRule::R3 { i: below } => {
            if order.index.classify(i)? != Classification::Limit {
                return Err(shape(tag, format!("{} is not a limit", order.index.name(i))));
            }
            if !order.index.lt(*below, i) {
                return Err(RewriteError::Parameter(format!(
                    "{} is not below {}",
                    order.index.name(*below),
                    order.index.name(i)
                )));
            }
            Term::sum([Term::node(*below, body.clone()), rho.clone()])
        }
    };
    let detail = match rule {
        HydraRule::R1 { k } | HydraRule::R1Prime { k } => InstanceDetail::Copy { i, k: *k },
        HydraRule::R3 { i: below } => InstanceDetail::Limit { lambda: i, i: *below },
        HydraRule::R2 { .. } => unreachable!(),
    };
    Ok(RuleInstance {
        lhs: redex.clone(),
        rhs,
        detail,
    })
}

fn instantiate_cut(
    order: &CombinedOrder,
    redex: &Term,
    path: &Position,
    i_minus: Index,
) -> Result<RuleInstance, RewriteError> {
    let tag = RuleTag::R2;
    let (j, body) = redex.as_node().expect("checked by caller");
    let (rho_i, rho) = rho_parts(order)?;
    let (&first, inner) = path
        .0
        .split_first()
        .ok_or_else(|| shape(tag, "the path to the cut node is empty"))?;
    let comps = body.components();
    let comp = comps
        .get(first)
        .ok_or_else(|| RewriteError::BadPosition(path.clone()))?;
    let inner = Position(inner.to_vec());
    let target = comp
        .subterm(&inner)
        .ok_or_else(|| RewriteError::BadPosition(path.clone()))?;
    let (i, a) = target
        .as_node()
        .ok_or_else(|| shape(tag, "the cut position is not a node"))?;
    match order.index.classify(i)? {
        Classification::Successor(preds) if preds.contains(&i_minus) => {}
        Classification::Successor(_) => {
            return Err(RewriteError::Parameter(format!(
                "{} is not a maximal element below {}",
                order.index.name(i_minus),
                order.index.name(i)
            )))
        }
        _ => return Err(shape(tag, format!("{} is not a successor", order.index.name(i)))),
    }
    if !order.index.lt(j, i) {
        return Err(shape(
            tag,
            format!("{} is not below {}", order.index.name(j), order.index.name(i)),
        ));
    }
    let u = Context::new(comp.replace(&inner, Term::hole())?)?;
    let u = CiContext::new(order, u, i)?;
    let segment_set: BTreeSet<Index> = if u.context().is_hole() {
        BTreeSet::new()
    } else {
        let mut set: BTreeSet<Index> = u.context().enclosing_labels().into_iter().collect();
        set.insert(j);
        set.insert(i_minus);
        set
    };
    // The segment acts on the rule's own `uᵢ[(ρ, a)]`; the body bound to `a`
    // is substituted afterwards, so it sits behind a hole while pruning.
    let shielded = Term::node(i_minus, u.context().plug(&Term::node(rho_i, Term::hole())));
    let segment = shielded.segment(order, &segment_set)?.plug(a);
    let new_comp = u.context().plug(&segment);
    let new_body = Term::sum(
        comps
            .iter()
            .enumerate()
            .map(|(n, c)| if n == first { new_comp.clone() } else { c.clone() }),
    );
    Ok(RuleInstance {
        lhs: redex.clone(),
        rhs: Term::sum([Term::node(j, new_body), rho]),
        detail: InstanceDetail::Cut {
            j,
            i,
            i_minus,
            context: u,
            a: a.clone(),
            segment_set,
        },
    })
}

/// `u[rσ]` for `α = u[lσ]` with the redex at `position`.
pub fn apply_rule(
    order: &CombinedOrder,
    alpha: &Term,
    position: &Position,
    rule: &HydraRule,
) -> Result<Term, RewriteError> {
    if !alpha.is_path_comparable(order) {
        return Err(RewriteError::NotInDomain);
    }
    apply_unchecked(order, alpha, position, rule)
}

fn apply_unchecked(
    order: &CombinedOrder,
    alpha: &Term,
    position: &Position,
    rule: &HydraRule,
) -> Result<Term, RewriteError> {
    let redex = alpha
        .subterm(position)
        .ok_or_else(|| RewriteError::BadPosition(position.clone()))?;
    if !redex.is_connected() {
        return Err(RewriteError::BadPosition(position.clone()));
    }
    let inst = instantiate(order, redex, rule)?;
    let result = alpha.replace(position, inst.rhs)?;
    if !result.is_path_comparable(order) {
        return Err(RewriteError::NotPathComparable);
    }
    Ok(result)
}

/// One rewrite step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub position: Position,
    pub rule: HydraRule,
    pub result: Term,
}

/// Finite caps on the rules' freely chosen parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `k` offered for `R1` and `R1'`.
    pub k_max: usize,
    /// How many candidates below a limit `R3` offers, smallest first.
    pub r3_window: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { k_max: 3, r3_window: 5 }
    }
}

/// Every move on `alpha` within `bounds`, in pre-order of redex positions.
/// Moves whose result leaves the path comparable domain are dropped.
pub fn enumerate_moves(order: &CombinedOrder, alpha: &Term, bounds: Bounds) -> Vec<Move> {
    let Ok((rho_i, rho)) = rho_parts(order) else {
        return Vec::new();
    };
    let rho_rho = Term::node(rho_i, rho);
    let mut candidates: Vec<(Position, HydraRule)> = Vec::new();
    for (pos, sub) in alpha.positions() {
        let Some((i, body)) = sub.as_node() else { continue };
        if *body == rho_rho {
            candidates.extend((0..=bounds.k_max).map(|k| (pos.clone(), HydraRule::R1Prime { k })));
        } else if body.components().len() >= 2 && body.components().contains(&rho_rho) {
            candidates.extend((0..=bounds.k_max).map(|k| (pos.clone(), HydraRule::R1 { k })));
        }
        match order.index.classify(i) {
            Ok(Classification::Successor(preds)) => {
                if let Some((jpos, path)) = cut_anchor(order, alpha, &pos, i) {
                    for p in preds {
                        candidates.push((
                            jpos.clone(),
                            HydraRule::R2 {
                                path: path.clone(),
                                i_minus: p,
                            },
                        ));
                    }
                }
            }
            Ok(Classification::Limit) => {
                for below in order.index.window_below(i, bounds.r3_window) {
                    candidates.push((pos.clone(), HydraRule::R3 { i: below }));
                }
            }
            _ => {}
        }
    }
    candidates
        .into_iter()
        .filter_map(|(position, rule)| {
            let result = apply_unchecked(order, alpha, &position, &rule).ok()?;
            Some(Move { position, rule, result })
        })
        .collect()
}

/// The nearest enclosing node below which the node at `pos` (labelled `i`)
/// can be cut: its label is `< i` and every node strictly between has a
/// label `≥ i`. Returns that node's position and the path from it.
fn cut_anchor(order: &CombinedOrder, alpha: &Term, pos: &Position, i: Index) -> Option<(Position, Position)> {
    let floor = usize::from(!alpha.is_connected());
    let mut len = pos.0.len();
    while len > floor {
        len -= 1;
        let anc = Position(pos.0[..len].to_vec());
        let (k, _) = alpha.subterm(&anc)?.as_node()?;
        if order.index.lt(k, i) {
            return Some((anc, Position(pos.0[len..].to_vec())));
        }
        if !order.index.leq(i, k) {
            return None;
        }
    }
    None
}
