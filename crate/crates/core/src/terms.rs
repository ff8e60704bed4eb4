//! Generalized quasi ordinal diagram terms.
//!
//! A term is a leaf `a ∈ A`, a node `(i, α)` with `i ∈ I`, or a natural sum
//! `α₁ # … # αₙ` of connected terms. Sums are flattened and their parts
//! sorted on construction, so structural equality coincides with identity
//! up to permutation of summands. A distinguished hole `*` is available for
//! contexts; ordinary terms never contain one.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::labels::{CombinedOrder, Index, Leaf, Sym};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown index label `{name}` at byte {pos}")]
    UnknownIndex { name: String, pos: usize },
    #[error("unknown leaf label `{name}` at byte {pos}")]
    UnknownLeaf { name: String, pos: usize },
    #[error("expected a connected term")]
    NotConnected,
    #[error("expected exactly one hole, found {0}")]
    HoleCount(usize),
    #[error("position {0} does not address a sub-term")]
    BadPosition(Position),
    #[error("invalid position `{0}`")]
    BadPositionSyntax(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Leaf(Leaf),
    Hole,
    /// `(i, body)`; a body with several components is a `Forest`.
    Node(Index, Term),
    /// At least two connected parts, sorted.
    Forest(Vec<Term>),
}

#[derive(Debug)]
struct TermData {
    kind: TermKind,
    hash: u64,
    size: usize,
    nodes: usize,
    depth: usize,
    holes: usize,
}

/// An immutable, cheaply clonable term.
#[derive(Clone)]
pub struct Term(Arc<TermData>);

impl Term {
    fn make(kind: TermKind) -> Term {
        let mut h = DefaultHasher::new();
        let (size, nodes, depth, holes) = match &kind {
            TermKind::Leaf(a) => {
                0u8.hash(&mut h);
                a.hash(&mut h);
                (0, 1, 0, 0)
            }
            TermKind::Hole => {
                1u8.hash(&mut h);
                (0, 1, 0, 1)
            }
            TermKind::Node(i, body) => {
                2u8.hash(&mut h);
                i.hash(&mut h);
                body.0.hash.hash(&mut h);
                // A multi-part body is one `#` constructor under the pair.
                (1 + body.size(), 1 + body.nodes(), 1 + body.depth(), body.holes())
            }
            TermKind::Forest(parts) => {
                3u8.hash(&mut h);
                for p in parts {
                    p.0.hash.hash(&mut h);
                }
                (
                    parts.len() - 1 + parts.iter().map(Term::size).sum::<usize>(),
                    parts.iter().map(Term::nodes).sum(),
                    parts.iter().map(Term::depth).max().unwrap_or(0),
                    parts.iter().map(Term::holes).sum(),
                )
            }
        };
        Term(Arc::new(TermData {
            kind,
            hash: h.finish(),
            size,
            nodes,
            depth,
            holes,
        }))
    }

    pub fn leaf(a: Leaf) -> Term {
        Term::make(TermKind::Leaf(a))
    }

    pub fn hole() -> Term {
        Term::make(TermKind::Hole)
    }

    /// `(i, body)`.
    pub fn node(i: Index, body: Term) -> Term {
        Term::make(TermKind::Node(i, body))
    }

    /// The natural sum of `parts`, flattened and canonically ordered. A
    /// single part is returned as is.
    ///
    /// Panics if `parts` is empty.
    pub fn sum<I: IntoIterator<Item = Term>>(parts: I) -> Term {
        let mut flat: Vec<Term> = Vec::new();
        for p in parts {
            match p.kind() {
                TermKind::Forest(inner) => flat.extend(inner.iter().cloned()),
                _ => flat.push(p),
            }
        }
        assert!(!flat.is_empty(), "a natural sum needs at least one part");
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        flat.sort();
        Term::make(TermKind::Forest(flat))
    }

    /// `α · n`, the sum of `n` copies of `α`.
    pub fn copies(&self, n: usize) -> Term {
        Term::sum(std::iter::repeat_n(self.clone(), n))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Number of occurrences of `( , )` and `#`; an `n`-part sum contributes
    /// `n - 1` occurrences of `#`.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Number of tree nodes (leaves, holes and inner nodes).
    pub fn nodes(&self) -> usize {
        self.0.nodes
    }

    /// Longest root-to-leaf edge count; the maximum over the parts of a sum.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn holes(&self) -> usize {
        self.0.holes
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.kind(), TermKind::Leaf(_))
    }

    pub fn as_leaf(&self) -> Option<Leaf> {
        match self.kind() {
            TermKind::Leaf(a) => Some(*a),
            _ => None,
        }
    }

    pub fn as_node(&self) -> Option<(Index, &Term)> {
        match self.kind() {
            TermKind::Node(i, body) => Some((*i, body)),
            _ => None,
        }
    }

    pub fn is_connected(&self) -> bool {
        !matches!(self.kind(), TermKind::Forest(_))
    }

    /// The connected parts: `{α}` for connected `α`, the summands otherwise.
    pub fn components(&self) -> &[Term] {
        match self.kind() {
            TermKind::Forest(parts) => parts,
            _ => std::slice::from_ref(self),
        }
    }

    /// The components directly below a node, or nothing.
    pub fn children(&self) -> &[Term] {
        match self.kind() {
            TermKind::Node(_, body) => body.components(),
            _ => &[],
        }
    }

    /// All index labels occurring on nodes.
    pub fn node_labels(&self) -> BTreeSet<Index> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Index>) {
        match self.kind() {
            TermKind::Node(i, body) => {
                out.insert(*i);
                body.collect_labels(out);
            }
            TermKind::Forest(parts) => parts.iter().for_each(|p| p.collect_labels(out)),
            _ => {}
        }
    }

    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Some(a) = t.as_leaf() {
                out.push(a);
            }
        });
        out
    }

    /// Pre-order visit of every connected sub-term occurrence.
    pub fn walk(&self, f: &mut impl FnMut(&Term)) {
        match self.kind() {
            TermKind::Forest(parts) => parts.iter().for_each(|p| p.walk(f)),
            TermKind::Node(_, body) => {
                f(self);
                body.walk(f);
            }
            _ => f(self),
        }
    }

    /// Every connected sub-term occurrence with its position, pre-order.
    pub fn positions(&self) -> Vec<(Position, Term)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        match self.kind() {
            TermKind::Forest(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    path.push(k);
                    p.positions_into(&mut path, &mut out);
                    path.pop();
                }
            }
            _ => self.positions_into(&mut path, &mut out),
        }
        out
    }

    fn positions_into(&self, path: &mut Vec<usize>, out: &mut Vec<(Position, Term)>) {
        out.push((Position(path.clone()), self.clone()));
        for (k, c) in self.children().iter().enumerate() {
            path.push(k);
            c.positions_into(path, out);
            path.pop();
        }
    }

    /// The sub-term at `pos`. On a sum the first selector picks a summand;
    /// on a node each selector picks a child component.
    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut steps = pos.0.iter();
        let mut cur = match self.kind() {
            TermKind::Forest(parts) => match steps.next() {
                Some(&k) => parts.get(k)?,
                None => return Some(self),
            },
            _ => self,
        };
        for &k in steps {
            cur = cur.children().get(k)?;
        }
        Some(cur)
    }

    /// Replaces the sub-term at `pos`, re-flattening sums.
    pub fn replace(&self, pos: &Position, new: Term) -> Result<Term, TermError> {
        self.subterm(pos).ok_or_else(|| TermError::BadPosition(pos.clone()))?;
        Ok(match self.kind() {
            TermKind::Forest(parts) if !pos.0.is_empty() => {
                let k = pos.0[0];
                let inner = parts[k].replace_connected(&pos.0[1..], new);
                Term::sum(
                    parts
                        .iter()
                        .enumerate()
                        .map(|(j, p)| if j == k { inner.clone() } else { p.clone() }),
                )
            }
            _ => self.replace_connected(&pos.0, new),
        })
    }

    fn replace_connected(&self, path: &[usize], new: Term) -> Term {
        match path.split_first() {
            None => new,
            Some((&k, rest)) => {
                let (i, body) = self.as_node().expect("position checked");
                let kids = body.components();
                let replaced = kids[k].replace_connected(rest, new);
                let parts = kids
                    .iter()
                    .enumerate()
                    .map(|(j, c)| if j == k { replaced.clone() } else { c.clone() });
                Term::node(i, Term::sum(parts))
            }
        }
    }

    /// Replaces the hole by `t`.
    pub fn plug(&self, t: &Term) -> Term {
        if self.holes() == 0 {
            return self.clone();
        }
        match self.kind() {
            TermKind::Hole => t.clone(),
            TermKind::Node(i, body) => Term::node(*i, body.plug(t)),
            TermKind::Forest(parts) => Term::sum(parts.iter().map(|p| p.plug(t))),
            TermKind::Leaf(_) => self.clone(),
        }
    }

    /// Replaces every leaf `x` in the domain of `sigma` by `sigma(x)`.
    pub fn substitute(&self, sigma: &HashMap<Leaf, Term>) -> Term {
        match self.kind() {
            TermKind::Leaf(a) => sigma.get(a).cloned().unwrap_or_else(|| self.clone()),
            TermKind::Hole => self.clone(),
            TermKind::Node(i, body) => Term::node(*i, body.substitute(sigma)),
            TermKind::Forest(parts) => Term::sum(parts.iter().map(|p| p.substitute(sigma))),
        }
    }

    /// Membership in the path comparable domain: every node label is
    /// comparable with every label below it.
    pub fn is_path_comparable(&self, order: &CombinedOrder) -> bool {
        let mut above = Vec::new();
        self.path_comparable_under(order, &mut above)
    }

    fn path_comparable_under(&self, order: &CombinedOrder, above: &mut Vec<Index>) -> bool {
        match self.kind() {
            TermKind::Leaf(a) => above
                .iter()
                .all(|&i| order.sym_comparable(Sym::Index(i), Sym::Leaf(*a))),
            TermKind::Hole => true,
            TermKind::Node(i, body) => {
                if !above.iter().all(|&j| order.index.comparable(j, *i)) {
                    return false;
                }
                above.push(*i);
                let ok = body.path_comparable_under(order, above);
                above.pop();
                ok
            }
            TermKind::Forest(parts) => parts.iter().all(|p| p.path_comparable_under(order, above)),
        }
    }

    /// A connected term built from `ρ` only.
    pub fn is_numeral(&self, order: &CombinedOrder) -> bool {
        let (Some(ri), Some(rl)) = (order.rho_index(), order.rho_leaf()) else {
            return false;
        };
        fn all_rho(t: &Term, ri: Index, rl: Leaf) -> bool {
            match t.kind() {
                TermKind::Leaf(a) => *a == rl,
                TermKind::Hole => false,
                TermKind::Node(i, body) => *i == ri && all_rho(body, ri, rl),
                TermKind::Forest(parts) => parts.iter().all(|p| all_rho(p, ri, rl)),
            }
        }
        self.is_connected() && all_rho(self, ri, rl)
    }

    /// `α↾J`: prunes every node whose label is incomparable with some element
    /// of `J`, replacing it by the leaf `ρ`. A hole is kept like a leaf.
    pub fn segment(&self, order: &CombinedOrder, set: &BTreeSet<Index>) -> Result<Term, TermError> {
        if !self.is_connected() {
            return Err(TermError::NotConnected);
        }
        if set.is_empty() {
            return Ok(self.clone());
        }
        let rho = order.rho_leaf();
        fn go(t: &Term, order: &CombinedOrder, set: &BTreeSet<Index>, rho: Option<Leaf>) -> Term {
            match t.kind() {
                TermKind::Node(i, body) => {
                    if set.iter().any(|&j| !order.index.comparable(j, *i)) {
                        Term::leaf(rho.expect("segment pruning requires rho"))
                    } else {
                        Term::node(*i, Term::sum(body.components().iter().map(|c| go(c, order, set, rho))))
                    }
                }
                _ => t.clone(),
            }
        }
        Ok(go(self, order, set, rho))
    }

    /// Renders with label names from `order`.
    pub fn display<'a>(&'a self, order: &'a CombinedOrder) -> TermDisplay<'a> {
        TermDisplay { term: self, order }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        fn rank(k: &TermKind) -> u8 {
            match k {
                TermKind::Leaf(_) => 0,
                TermKind::Hole => 1,
                TermKind::Node(..) => 2,
                TermKind::Forest(_) => 3,
            }
        }
        match (self.kind(), other.kind()) {
            (TermKind::Leaf(a), TermKind::Leaf(b)) => a.cmp(b),
            (TermKind::Node(i, a), TermKind::Node(j, b)) => i.cmp(j).then_with(|| a.cmp(b)),
            (TermKind::Forest(a), TermKind::Forest(b)) => a.cmp(b),
            (x, y) => rank(x).cmp(&rank(y)),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Leaf(a) => write!(f, "L{}", a.0),
            TermKind::Hole => write!(f, "*"),
            TermKind::Node(i, body) => write!(f, "({i:?}, {body:?})"),
            TermKind::Forest(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{p:?}")?;
                }
                Ok(())
            }
        }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    order: &'a CombinedOrder,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term.kind() {
            TermKind::Leaf(a) => f.write_str(self.order.leaf.name(*a)),
            TermKind::Hole => f.write_str("*"),
            TermKind::Node(i, body) => {
                write!(f, "({}, {})", self.order.index.name(*i), body.display(self.order))
            }
            TermKind::Forest(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" # ")?;
                    }
                    write!(f, "{}", p.display(self.order))?;
                }
                Ok(())
            }
        }
    }
}

/// A path of child selectors, printed as `@` or `@0.2.1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.push(k);
        Position(v)
    }

    pub fn join(&self, rel: &Position) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&rel.0);
        Position(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("@")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Position {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TermError::BadPositionSyntax(s.to_string());
        let rest = s.strip_prefix('@').ok_or_else(bad)?;
        if rest.is_empty() {
            return Ok(Position::root());
        }
        rest.split('.')
            .map(|p| p.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()
            .map(Position)
    }
}

/// Parses a term; `*` is rejected.
pub fn parse(order: &CombinedOrder, text: &str) -> Result<Term, TermError> {
    let t = Parser::new(order, text, false).parse_all()?;
    Ok(t)
}

/// Parses a term containing exactly one hole `*`.
pub fn parse_with_hole(order: &CombinedOrder, text: &str) -> Result<Term, TermError> {
    let t = Parser::new(order, text, true).parse_all()?;
    if t.holes() != 1 {
        return Err(TermError::HoleCount(t.holes()));
    }
    Ok(t)
}

struct Parser<'a> {
    order: &'a CombinedOrder,
    src: &'a str,
    pos: usize,
    allow_hole: bool,
}

impl<'a> Parser<'a> {
    fn new(order: &'a CombinedOrder, src: &'a str, allow_hole: bool) -> Self {
        Parser {
            order,
            src,
            pos: 0,
            allow_hole,
        }
    }

    fn err(&self, message: &str) -> TermError {
        TermError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), TermError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            _ => Err(self.err(&format!("expected `{want}`"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), TermError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() || "(),#*".contains(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        if self.pos == start {
            return Err(self.err("expected a label"));
        }
        Ok((start, &self.src[start..self.pos]))
    }

    fn parse_all(mut self) -> Result<Term, TermError> {
        let t = self.term()?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(t)
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let mut parts = vec![self.part()?];
        while self.peek() == Some('#') {
            self.pos += 1;
            parts.push(self.part()?);
        }
        Ok(Term::sum(parts))
    }

    fn part(&mut self) -> Result<Term, TermError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let (at, name) = self.ident()?;
                let i = self.order.lookup_index(name).ok_or_else(|| TermError::UnknownIndex {
                    name: name.to_string(),
                    pos: at,
                })?;
                self.expect(',')?;
                let body = self.term()?;
                self.expect(')')?;
                Ok(Term::node(i, body))
            }
            Some('*') if self.allow_hole => {
                self.pos += 1;
                Ok(Term::hole())
            }
            Some('*') => Err(self.err("a hole is not allowed here")),
            Some(_) => {
                let (at, name) = self.ident()?;
                let a = self.order.lookup_leaf(name).ok_or_else(|| TermError::UnknownLeaf {
                    name: name.to_string(),
                    pos: at,
                })?;
                Ok(Term::leaf(a))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{load_order_spec, presets};

    fn two_chain() -> CombinedOrder {
        load_order_spec(presets::TWO_CHAIN).unwrap()
    }

    fn hydra() -> CombinedOrder {
        load_order_spec(presets::HYDRA).unwrap()
    }

    #[test]
    fn parses_the_three_tree_forest() {
        let o = two_chain();
        let t = parse(
            &o,
            "(0, 0'' # 0'') # (2', (2',1''') # (1',1'')) # (1, 0'' # (1, 2'' # 0''))",
        )
        .unwrap();
        assert_eq!(t.components().len(), 3);
        assert_eq!(t.nodes(), 13);
        let printed = t.display(&o).to_string();
        assert_eq!(parse(&o, &printed).unwrap(), t);
    }

    #[test]
    fn parses_a_single_leaf() {
        let o = hydra();
        let t = parse(&o, "x").unwrap();
        assert_eq!(t.as_leaf(), o.leaf.lookup("x"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let o = hydra();
        assert_eq!(
            parse(&o, "(1, y)").unwrap_err(),
            TermError::UnknownLeaf {
                name: "y".into(),
                pos: 4
            }
        );
        assert_eq!(
            parse(&o, "(q, x)").unwrap_err(),
            TermError::UnknownIndex {
                name: "q".into(),
                pos: 1
            }
        );
        assert!(matches!(
            parse(&o, "(1 x)").unwrap_err(),
            TermError::Syntax { pos: 3, .. }
        ));
        assert!(matches!(parse(&o, "x #").unwrap_err(), TermError::Syntax { .. }));
        assert!(matches!(parse(&o, "x x").unwrap_err(), TermError::Syntax { .. }));
        assert!(matches!(parse(&o, "(1, *)").unwrap_err(), TermError::Syntax { .. }));
        assert_eq!(parse_with_hole(&o, "x # x").unwrap_err(), TermError::HoleCount(0));
        assert_eq!(parse_with_hole(&o, "* # *").unwrap_err(), TermError::HoleCount(2));
    }

    #[test]
    fn identity_is_up_to_permutation() {
        let o = hydra();
        let p = |s| parse(&o, s).unwrap();
        assert_eq!(p("x # (1, x) # 0"), p("0 # x # (1, x)"));
        assert_eq!(p("(ω', (1, x) # (1', 0))"), p("(ω', (1', 0) # (1, x))"));
        assert_ne!(p("(1, x)"), p("(1', x)"));
        assert_eq!(p("(0, x # (1, x)) # x"), p("x # (0, (1, x) # x)"));
    }

    #[test]
    fn equivalent_leaves_are_not_identical() {
        let o = two_chain();
        let a = parse(&o, "2''").unwrap();
        let b = parse(&o, "2'''").unwrap();
        assert!(o.leaf.leq(a.as_leaf().unwrap(), b.as_leaf().unwrap()));
        assert!(o.leaf.leq(b.as_leaf().unwrap(), a.as_leaf().unwrap()));
        assert_ne!(a, b);
    }

    #[test]
    fn singleton_sums_collapse_and_sums_flatten() {
        let o = hydra();
        let x = parse(&o, "x").unwrap();
        assert_eq!(Term::sum([x.clone()]), x);
        let inner = Term::sum([x.clone(), x.clone()]);
        let outer = Term::sum([inner, x.clone()]);
        assert_eq!(outer.components().len(), 3);
    }

    #[test]
    fn components_of_connected_and_unconnected_terms() {
        let o = hydra();
        let rho = parse(&o, "rho").unwrap();
        assert_eq!(rho.components(), std::slice::from_ref(&rho));
        let f = parse(&o, "(1, x) # x # (2, 0)").unwrap();
        assert_eq!(f.components().len(), 3);
        assert!(f.components().iter().all(Term::is_connected));
    }

    #[test]
    fn size_counts_constructors() {
        let o = hydra();
        let p = |s| parse(&o, s).unwrap();
        assert_eq!(p("x").size(), 0);
        assert_eq!(p("(1, rho)").size(), 1);
        assert_eq!(p("rho # rho").size(), 1);
        assert_eq!(p("(1, x # x)").size(), 2);
        assert_eq!(p("(1, (2, x)) # x").size(), 3);
        assert_eq!(p("rho # rho # rho").size(), 2);
        assert_eq!(p("(1, x # x # x) # x").size(), 4);
    }

    #[test]
    fn path_comparability() {
        let ce = load_order_spec(presets::COUNTEREXAMPLE).unwrap();
        assert!(!parse(&ce, "(a1, (b2, 0))").unwrap().is_path_comparable(&ce));
        assert!(parse(&ce, "(a1, (b1, 0))").unwrap().is_path_comparable(&ce));
        assert!(parse(&ce, "(0, (a1, 0) # (b2, 0))").unwrap().is_path_comparable(&ce));
        let o = hydra();
        for s in [
            "(0, (ω', (1, x) # (1', 0)))",
            "(0, (ω', (1, x) # (0, (ω', (1, x) # (0, 0))))) # 0",
        ] {
            assert!(parse(&o, s).unwrap().is_path_comparable(&o), "{s}");
        }
        assert!(parse(&o, "(rho, (rho, rho # rho))").unwrap().is_path_comparable(&o));
        assert!(!parse(&o, "(1, (1', x))").unwrap().is_path_comparable(&o));
    }

    #[test]
    fn numerals() {
        let o = hydra();
        let p = |s| parse(&o, s).unwrap();
        assert!(p("(rho, rho # rho)").is_numeral(&o));
        assert!(p("rho").is_numeral(&o));
        assert!(!p("rho # rho").is_numeral(&o));
        assert!(!p("(rho, x)").is_numeral(&o));
        assert!(!p("(1, rho)").is_numeral(&o));
    }

    #[test]
    fn segments() {
        let o = hydra();
        let p = |s| parse(&o, s).unwrap();
        let idx = |s| o.index.lookup(s).unwrap();
        let t = p("(ω', (1, x) # (1', 0))");
        assert_eq!(t.segment(&o, &BTreeSet::new()).unwrap(), t);
        assert_eq!(p("x").segment(&o, &[idx("3")].into()).unwrap(), p("x"));
        assert_eq!(p("(1', 0)").segment(&o, &[idx("1")].into()).unwrap(), p("0"));
        assert_eq!(t.segment(&o, &[idx("1")].into()).unwrap(), p("(ω', (1, x) # 0)"));
        assert_eq!(t.segment(&o, &[idx("0"), idx("ω'")].into()).unwrap(), t);
        assert_eq!(
            p("x # x").segment(&o, &[idx("1")].into()).unwrap_err(),
            TermError::NotConnected
        );
    }

    #[test]
    fn substitution() {
        let o = hydra();
        let p = |s| parse(&o, s).unwrap();
        let x = o.leaf.lookup("x").unwrap();
        let sigma: HashMap<Leaf, Term> = [(x, p("(rho, rho)"))].into();
        assert_eq!(p("x # x").substitute(&sigma), p("(rho, rho) # (rho, rho)"));
        assert_eq!(p("(1, rho)").substitute(&sigma), p("(1, rho)"));
        assert_eq!(
            p("(1, x # x)").substitute(&[(x, p("rho # (rho, rho)"))].into()),
            p("(1, rho # rho # (rho, rho) # (rho, rho))")
        );
    }

    #[test]
    fn positions_replace_and_plug() {
        let o = hydra();
        let p = |s| parse(&o, s).unwrap();
        let t = p("(0, (ω', (1, x) # (1', 0))) # 0");
        let all = t.positions();
        assert_eq!(all.len(), t.nodes());
        for (pos, sub) in &all {
            assert_eq!(t.subterm(pos), Some(sub));
            assert_eq!(&t.replace(pos, sub.clone()).unwrap(), &t);
        }
        let pos: Position = "@1.0".parse().unwrap();
        assert_eq!(t.subterm(&pos).unwrap(), &p("(ω', (1, x) # (1', 0))"));
        assert_eq!(t.replace(&pos, p("x # x")).unwrap(), p("(0, x # x) # 0"));
        assert!(t.replace(&"@5".parse().unwrap(), p("x")).is_err());
        let ctx = parse_with_hole(&o, "(1, x # *)").unwrap();
        assert_eq!(ctx.plug(&p("x # (2, x)")), p("(1, x # x # (2, x))"));
        assert_eq!(Position::root().to_string(), "@");
        assert_eq!("@".parse::<Position>().unwrap(), Position::root());
        assert!("0.1".parse::<Position>().is_err());
    }
}
