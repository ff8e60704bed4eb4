//! Tree embedding with gap conditions, forest embedding, and the check
//! that embedding implies `⋘⁼`.

use std::fmt;

use thiserror::Error;

use crate::labels::{CombinedOrder, Sym};
use crate::matching::Matcher;
use crate::ordering::Comparator;
use crate::terms::{Position, Term, TermKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("tree embedding needs connected terms")]
    NotConnected,
    #[error("terms with holes cannot be embedded")]
    Hole,
    #[error("the {0} term is not path comparable")]
    NotPathComparable(&'static str),
}

/// Source node position ↦ target node position, one pair per source node
/// in pre-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub pairs: Vec<(Position, Position)>,
}

impl fmt::Display for EmbeddingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, t) in &self.pairs {
            writeln!(f, "{s} -> {t}")?;
        }
        Ok(())
    }
}

/// A connected term as an explicit tree, nodes in pre-order.
struct Tree {
    labels: Vec<Sym>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    pos: Vec<Position>,
}

impl Tree {
    fn new(t: &Term) -> Result<Tree, EmbedError> {
        if !t.is_connected() {
            return Err(EmbedError::NotConnected);
        }
        if t.holes() > 0 {
            return Err(EmbedError::Hole);
        }
        let mut tree = Tree {
            labels: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
            pos: Vec::new(),
        };
        tree.add(t, None, Position::root());
        Ok(tree)
    }

    fn add(&mut self, t: &Term, parent: Option<usize>, pos: Position) -> usize {
        let me = self.labels.len();
        let label = match t.kind() {
            TermKind::Leaf(a) => Sym::Leaf(*a),
            TermKind::Node(i, _) => Sym::Index(*i),
            _ => unreachable!("components are connected"),
        };
        self.labels.push(label);
        self.parent.push(parent);
        self.children.push(Vec::new());
        self.pos.push(pos.clone());
        for (k, c) in t.children().iter().enumerate() {
            let id = self.add(c, Some(me), pos.child(k));
            self.children[me].push(id);
        }
        me
    }

    fn len(&self) -> usize {
        self.labels.len()
    }
}

struct Search<'a> {
    order: &'a CombinedOrder,
    src: Tree,
    tgt: Tree,
    /// `emb[s][t]`: the source subtree at `s` embeds with `s ↦ t`.
    emb: Vec<Vec<bool>>,
    /// `reach[s][v]`: `s` can be placed at or below `v` with every node from
    /// `v` down to (excluding) the image carrying a label `≥` that of `s`.
    reach: Vec<Vec<bool>>,
}

impl<'a> Search<'a> {
    fn run(order: &'a CombinedOrder, src: Tree, tgt: Tree) -> Search<'a> {
        let (n, m) = (src.len(), tgt.len());
        let mut s = Search {
            order,
            src,
            tgt,
            emb: vec![vec![false; m]; n],
            reach: vec![vec![false; m]; n],
        };
        // Pre-order ids: children have larger ids than their parents.
        for a in (0..n).rev() {
            for b in 0..m {
                s.emb[a][b] = s.fits(a, b).is_some();
            }
            for b in (0..m).rev() {
                s.reach[a][b] = s.emb[a][b]
                    || (s.order.sym_leq(s.src.labels[a], s.tgt.labels[b])
                        && s.tgt.children[b].iter().any(|&w| s.reach[a][w]));
            }
        }
        s
    }

    /// With `a ↦ b`, an assignment of `a`'s children to distinct child
    /// branches of `b`.
    fn fits(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if !self.order.sym_leq(self.src.labels[a], self.tgt.labels[b]) {
            return None;
        }
        let kids = &self.src.children[a];
        let branches = &self.tgt.children[b];
        if kids.len() > branches.len() {
            return None;
        }
        let adj: Vec<Vec<usize>> = kids
            .iter()
            .map(|&c| (0..branches.len()).filter(|&r| self.reach[c][branches[r]]).collect())
            .collect();
        let mut m = Matcher::new(&adj, branches.len(), None);
        if !(0..kids.len()).all(|k| m.offer(k)) {
            return None;
        }
        Some(
            m.assignment(kids.len())
                .into_iter()
                .map(|r| branches[r.unwrap()])
                .collect(),
        )
    }

    fn root_ok(&self, b: usize) -> bool {
        let mut v = self.tgt.parent[b];
        while let Some(x) = v {
            if !self.order.sym_leq(self.src.labels[0], self.tgt.labels[x]) {
                return false;
            }
            v = self.tgt.parent[x];
        }
        true
    }

    fn witness(&self) -> Option<EmbeddingWitness> {
        let b = (0..self.tgt.len()).find(|&b| self.emb[0][b] && self.root_ok(b))?;
        let mut map = vec![0usize; self.src.len()];
        self.place(0, b, &mut map);
        Some(EmbeddingWitness {
            pairs: (0..self.src.len())
                .map(|a| (self.src.pos[a].clone(), self.tgt.pos[map[a]].clone()))
                .collect(),
        })
    }

    fn place(&self, a: usize, b: usize, map: &mut [usize]) {
        map[a] = b;
        let branches = self.fits(a, b).expect("emb entry is consistent");
        for (&c, &v) in self.src.children[a].iter().zip(&branches) {
            let u = self.descend(c, v);
            self.place(c, u, map);
        }
    }

    fn descend(&self, c: usize, v: usize) -> usize {
        if self.emb[c][v] {
            return v;
        }
        let w = *self.tgt.children[v]
            .iter()
            .find(|&&w| self.reach[c][w])
            .expect("reach entry is consistent");
        self.descend(c, w)
    }
}

/// `α ↪ β`: a witness when one exists.
pub fn tree_embed(order: &CombinedOrder, src: &Term, tgt: &Term) -> Result<Option<EmbeddingWitness>, EmbedError> {
    let s = Tree::new(src)?;
    let t = Tree::new(tgt)?;
    if s.len() > t.len() {
        return Ok(None);
    }
    Ok(Search::run(order, s, t).witness())
}

/// Re-checks every condition of a witness directly from positions.
pub fn verify(order: &CombinedOrder, src: &Term, tgt: &Term, w: &EmbeddingWitness) -> Result<(), String> {
    let label = |t: &Term, p: &Position| -> Result<Sym, String> {
        match t.subterm(p).map(Term::kind) {
            Some(TermKind::Leaf(a)) => Ok(Sym::Leaf(*a)),
            Some(TermKind::Node(i, _)) => Ok(Sym::Index(*i)),
            _ => Err(format!("{p} does not address a node")),
        }
    };
    let all_src: Vec<Position> = src.positions().into_iter().map(|(p, _)| p).collect();
    let domain: Vec<&Position> = w.pairs.iter().map(|(s, _)| s).collect();
    if domain.len() != all_src.len() || all_src.iter().any(|p| !domain.contains(&p)) {
        return Err("the witness does not cover every source node exactly once".into());
    }
    let image = |p: &Position| &w.pairs.iter().find(|(s, _)| s == p).unwrap().1;
    for (i, (_, t1)) in w.pairs.iter().enumerate() {
        if w.pairs[..i].iter().any(|(_, t0)| t0 == t1) {
            return Err(format!("{t1} is hit twice"));
        }
    }
    for (s, t) in &w.pairs {
        if !order.sym_leq(label(src, s)?, label(tgt, t)?) {
            return Err(format!("label condition fails at {s} -> {t}"));
        }
    }
    let meet = |a: &Position, b: &Position| {
        Position(
            a.0.iter()
                .zip(&b.0)
                .take_while(|(x, y)| x == y)
                .map(|(x, _)| *x)
                .collect(),
        )
    };
    for (s1, t1) in &w.pairs {
        for (s2, t2) in &w.pairs {
            if image(&meet(s1, s2)) != &meet(t1, t2) {
                return Err(format!("meet condition fails for {s1} and {s2}"));
            }
        }
    }
    let strictly_between = |lo: &Position, hi: &Position| -> Vec<Position> {
        (lo.0.len() + 1..hi.0.len())
            .map(|k| Position(hi.0[..k].to_vec()))
            .collect()
    };
    for (s, t) in &w.pairs {
        if s.is_root() {
            let top = Position::root();
            let mut above = strictly_between(&top, t);
            if !t.is_root() {
                above.push(top);
            }
            for b in above {
                if !order.sym_leq(label(src, s)?, label(tgt, &b)?) {
                    return Err(format!("root condition fails at {b}"));
                }
            }
        } else {
            let parent = Position(s.0[..s.0.len() - 1].to_vec());
            for b in strictly_between(image(&parent), t) {
                if !order.sym_leq(label(src, s)?, label(tgt, &b)?) {
                    return Err(format!("gap condition fails at {b} for the edge into {s}"));
                }
            }
        }
    }
    Ok(())
}

/// A forest embedding: source component `k` goes to target component
/// `assignment[k]` via `witnesses[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestEmbedding {
    pub assignment: Vec<usize>,
    pub witnesses: Vec<EmbeddingWitness>,
}

impl ForestEmbedding {
    /// The combined map, with positions relative to the whole forests.
    pub fn pairs(&self, src: &Term, tgt: &Term) -> Vec<(Position, Position)> {
        let lift = |t: &Term, k: usize, p: &Position| {
            if t.is_connected() {
                p.clone()
            } else {
                Position(vec![k]).join(p)
            }
        };
        self.witnesses
            .iter()
            .enumerate()
            .flat_map(|(k, w)| {
                let l = self.assignment[k];
                w.pairs
                    .iter()
                    .map(move |(s, t)| (lift(src, k, s), lift(tgt, l, t)))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// `α ↪# β`.
pub fn forest_embed(order: &CombinedOrder, src: &Term, tgt: &Term) -> Result<Option<ForestEmbedding>, EmbedError> {
    let xs = src.components();
    let ys = tgt.components();
    if xs.len() > ys.len() {
        return Ok(None);
    }
    let mut table: Vec<Vec<Option<EmbeddingWitness>>> = Vec::with_capacity(xs.len());
    for x in xs {
        let mut row = Vec::with_capacity(ys.len());
        for y in ys {
            row.push(tree_embed(order, x, y)?);
        }
        table.push(row);
    }
    let adj: Vec<Vec<usize>> = table
        .iter()
        .map(|row| (0..ys.len()).filter(|&l| row[l].is_some()).collect())
        .collect();
    let mut m = Matcher::new(&adj, ys.len(), None);
    if !(0..xs.len()).all(|k| m.offer(k)) {
        return Ok(None);
    }
    let assignment: Vec<usize> = m.assignment(xs.len()).into_iter().map(Option::unwrap).collect();
    let witnesses = assignment
        .iter()
        .enumerate()
        .map(|(k, &l)| table[k][l].clone().unwrap())
        .collect();
    Ok(Some(ForestEmbedding { assignment, witnesses }))
}

/// Outcome of [`check_embed_implies_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbedOrderReport {
    pub embeds: bool,
    pub lll_eq: bool,
}

impl EmbedOrderReport {
    /// `false` exactly when an embedding exists but `⋘⁼` does not hold.
    pub fn consistent(&self) -> bool {
        !self.embeds || self.lll_eq
    }
}

/// Checks that `α ↪# β` implies `α ⋘⁼ β`.
pub fn check_embed_implies_order(cmp: &mut Comparator<'_>, a: &Term, b: &Term) -> Result<EmbedOrderReport, EmbedError> {
    let order = cmp.order();
    if !a.is_path_comparable(order) {
        return Err(EmbedError::NotPathComparable("source"));
    }
    if !b.is_path_comparable(order) {
        return Err(EmbedError::NotPathComparable("target"));
    }
    let embeds = forest_embed(order, a, b)?.is_some();
    let lll_eq = cmp.lll_eq(a, b);
    Ok(EmbedOrderReport { embeds, lll_eq })
}
