use crate::labels::{CombinedOrder, Index};
use crate::terms::{Position, Term, TermError, TermKind};

use super::RewriteError;

/// A term with exactly one hole `*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context(Term);

impl Context {
    pub fn new(term: Term) -> Result<Self, TermError> {
        match term.holes() {
            1 => Ok(Context(term)),
            n => Err(TermError::HoleCount(n)),
        }
    }

    /// The empty context `*`.
    pub fn hole() -> Self {
        Context(Term::hole())
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn is_hole(&self) -> bool {
        matches!(self.0.kind(), TermKind::Hole)
    }

    /// `u[t]`.
    pub fn plug(&self, t: &Term) -> Term {
        self.0.plug(t)
    }

    pub fn hole_position(&self) -> Position {
        self.0
            .positions()
            .into_iter()
            .find(|(_, t)| matches!(t.kind(), TermKind::Hole))
            .map(|(p, _)| p)
            .expect("a context has a hole")
    }

    /// Labels of the nodes strictly enclosing the hole, root first.
    pub fn enclosing_labels(&self) -> Vec<Index> {
        let pos = self.hole_position();
        let mut out = Vec::new();
        let mut cur = match self.0.kind() {
            TermKind::Forest(parts) => &parts[pos.0[0]],
            _ => &self.0,
        };
        let steps = if self.0.is_connected() { &pos.0[..] } else { &pos.0[1..] };
        for &k in steps {
            let (i, _) = cur.as_node().expect("hole path runs through nodes");
            out.push(i);
            cur = &cur.children()[k];
        }
        out
    }
}

/// A connected context of `𝒞ᵢ`: every node enclosing the hole carries a
/// label `≥ i`, and the context with `ρ` in the hole is path comparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiContext {
    context: Context,
    bound: Index,
}

impl CiContext {
    pub fn new(order: &CombinedOrder, context: Context, bound: Index) -> Result<Self, RewriteError> {
        if !context.term().is_connected() {
            return Err(RewriteError::Parameter("a rule context must be connected".into()));
        }
        for k in context.enclosing_labels() {
            if !order.index.leq(bound, k) {
                return Err(RewriteError::Parameter(format!(
                    "context label {} is not above {}",
                    order.index.name(k),
                    order.index.name(bound)
                )));
            }
        }
        let rho = order.rho_leaf().ok_or(RewriteError::NoRho)?;
        if !context.plug(&Term::leaf(rho)).is_path_comparable(order) {
            return Err(RewriteError::NotPathComparable);
        }
        Ok(CiContext { context, bound })
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn bound(&self) -> Index {
        self.bound
    }
}
