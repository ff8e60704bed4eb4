//! i-sections, indices, `Sid`, the indexed quasi orderings `≤ᵠᵢ` and the
//! aggregate ordering `⋘`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::labels::{CombinedOrder, Index};
use crate::matching::Matcher;
use crate::terms::{Term, TermKind};

/// An element of `Ĩ = I ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    At(Index),
    Infinity,
}

/// Both directions of a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub leq: bool,
    pub geq: bool,
}

impl Comparison {
    pub fn less(&self) -> bool {
        self.leq && !self.geq
    }

    pub fn greater(&self) -> bool {
        self.geq && !self.leq
    }

    pub fn equivalent(&self) -> bool {
        self.leq && self.geq
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match (self.leq, self.geq) {
            (true, true) => "equivalent",
            (true, false) => "less",
            (false, true) => "greater",
            (false, false) => "incomparable",
        };
        write!(f, "leq={} geq={} ({word})", self.leq, self.geq)
    }
}

/// Every `α` with `α ⊂ᵢ β`, deduplicated and in canonical order.
pub fn i_sections(order: &CombinedOrder, beta: &Term, i: Index) -> Vec<Term> {
    let mut out = BTreeSet::new();
    collect_sections(order, beta, i, &mut out);
    out.into_iter().collect()
}

fn collect_sections(order: &CombinedOrder, beta: &Term, i: Index, out: &mut BTreeSet<Term>) {
    match beta.kind() {
        TermKind::Node(j, body) => {
            if i == *j {
                out.insert(body.clone());
                collect_sections(order, body, i, out);
            } else if order.index.lt(i, *j) {
                collect_sections(order, body, i, out);
            }
        }
        TermKind::Forest(parts) => parts.iter().for_each(|p| collect_sections(order, p, i, out)),
        TermKind::Leaf(_) | TermKind::Hole => {}
    }
}

/// The indices of `α`: node labels every one of whose ancestors carries a
/// label `≥` it.
pub fn indices(order: &CombinedOrder, alpha: &Term) -> BTreeSet<Index> {
    let mut out = BTreeSet::new();
    let mut above = Vec::new();
    collect_indices(order, alpha, &mut above, &mut out);
    out
}

fn collect_indices(order: &CombinedOrder, t: &Term, above: &mut Vec<Index>, out: &mut BTreeSet<Index>) {
    match t.kind() {
        TermKind::Node(j, body) => {
            if above.iter().all(|&a| order.index.leq(*j, a)) {
                out.insert(*j);
            }
            above.push(*j);
            collect_indices(order, body, above, out);
            above.pop();
        }
        TermKind::Forest(parts) => parts.iter().for_each(|p| collect_indices(order, p, above, out)),
        TermKind::Leaf(_) | TermKind::Hole => {}
    }
}

/// `Sid_i{terms}`: the indices of any of `terms` strictly above `i`.
pub fn sid(order: &CombinedOrder, i: Index, terms: &[&Term]) -> BTreeSet<Index> {
    terms
        .iter()
        .flat_map(|t| indices(order, t))
        .filter(|&j| order.index.lt(i, j))
        .collect()
}

/// Record of the induction measure `(l(α, β), rank)` along the recursion,
/// where `rank` is `1 + #Sid_i(α, β)` at `i ∈ I` and `0` at `∞`.
#[derive(Debug, Default, Clone)]
pub struct MeasureLog {
    stack: Vec<(usize, usize)>,
    pub calls: u64,
    pub violations: u64,
}

/// Memoizing evaluator for `≤ᵠᵢ` and `⋘` over one order.
pub struct Comparator<'o> {
    order: &'o CombinedOrder,
    memo: HashMap<(Level, Term, Term), bool>,
    sections: HashMap<(Index, Term), Arc<Vec<Term>>>,
    indices: HashMap<Term, Arc<BTreeSet<Index>>>,
    measure: Option<MeasureLog>,
}

impl<'o> Comparator<'o> {
    pub fn new(order: &'o CombinedOrder) -> Self {
        Comparator {
            order,
            memo: HashMap::new(),
            sections: HashMap::new(),
            indices: HashMap::new(),
            measure: None,
        }
    }

    /// A comparator that checks the induction measure strictly decreases at
    /// every recursive call. Memoization is disabled so that every call is
    /// observed.
    pub fn with_measure_check(order: &'o CombinedOrder) -> Self {
        Comparator {
            measure: Some(MeasureLog::default()),
            ..Comparator::new(order)
        }
    }

    pub fn measure_log(&self) -> Option<&MeasureLog> {
        self.measure.as_ref()
    }

    pub fn order(&self) -> &'o CombinedOrder {
        self.order
    }

    /// Drops cached results; useful to bound memory in long games.
    pub fn clear(&mut self) {
        self.memo.clear();
        self.sections.clear();
        self.indices.clear();
    }

    fn sections_of(&mut self, beta: &Term, i: Index) -> Arc<Vec<Term>> {
        if let Some(s) = self.sections.get(&(i, beta.clone())) {
            return s.clone();
        }
        let s = Arc::new(i_sections(self.order, beta, i));
        self.sections.insert((i, beta.clone()), s.clone());
        s
    }

    fn indices_of(&mut self, t: &Term) -> Arc<BTreeSet<Index>> {
        if let Some(s) = self.indices.get(t) {
            return s.clone();
        }
        let s = Arc::new(indices(self.order, t));
        self.indices.insert(t.clone(), s.clone());
        s
    }

    fn sid_of(&mut self, i: Index, a: &Term, b: &Term) -> Vec<Index> {
        let ia = self.indices_of(a);
        let ib = self.indices_of(b);
        let order = self.order;
        ia.union(&ib).copied().filter(|&j| order.index.lt(i, j)).collect()
    }

    /// `α ≤ᵠ_level β`.
    pub fn leq(&mut self, level: Level, a: &Term, b: &Term) -> bool {
        if self.measure.is_some() {
            return self.leq_measured(level, a, b);
        }
        self.leq_inner(level, a, b)
    }

    fn leq_measured(&mut self, level: Level, a: &Term, b: &Term) -> bool {
        let rank = match level {
            Level::Infinity => 0,
            Level::At(i) => 1 + self.sid_of(i, a, b).len(),
        };
        let here = (a.size() + b.size(), rank);
        let log = self.measure.as_mut().unwrap();
        log.calls += 1;
        if let Some(&parent) = log.stack.last() {
            if here >= parent {
                log.violations += 1;
            }
        }
        log.stack.push(here);
        let r = self.eval(level, a, b);
        self.measure.as_mut().unwrap().stack.pop();
        r
    }

    fn leq_inner(&mut self, level: Level, a: &Term, b: &Term) -> bool {
        let key = (level, a.clone(), b.clone());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.eval(level, a, b);
        self.memo.insert(key, r);
        r
    }

    fn eval(&mut self, level: Level, a: &Term, b: &Term) -> bool {
        match (a.kind(), b.kind()) {
            (TermKind::Leaf(x), TermKind::Leaf(y)) => self.order.leaf.leq(*x, *y),
            (TermKind::Hole, TermKind::Hole) => true,
            (TermKind::Hole, TermKind::Leaf(_)) | (TermKind::Leaf(_), TermKind::Hole) => false,
            (TermKind::Leaf(_) | TermKind::Hole, _) => true,
            (_, TermKind::Leaf(_) | TermKind::Hole) => false,
            (TermKind::Forest(_), _) | (_, TermKind::Forest(_)) => {
                self.forest_leq(level, a.components(), b.components())
            }
            (TermKind::Node(j, a0), TermKind::Node(k, b0)) => match level {
                Level::Infinity => self.order.index.lt(*j, *k) || (j == k && self.leq(Level::At(*j), a0, b0)),
                Level::At(i) => self.node_leq(i, a, b),
            },
        }
    }

    fn node_leq(&mut self, i: Index, a: &Term, b: &Term) -> bool {
        let level = Level::At(i);
        // (∃): α is below some i-section of β.
        let secs_b = self.sections_of(b, i);
        if secs_b.iter().any(|bp| self.leq(level, a, bp)) {
            return true;
        }
        // (∀): every i-section of α is strictly below β ...
        let secs_a = self.sections_of(a, i);
        for ap in secs_a.iter() {
            if !(self.leq(level, ap, b) && !self.leq(level, b, ap)) {
                return false;
            }
        }
        // ... and α ≤ β at every minimal element of Sid, or at ∞.
        let sid = self.sid_of(i, a, b);
        if sid.is_empty() {
            return self.leq(Level::Infinity, a, b);
        }
        let minimal: Vec<Index> = sid
            .iter()
            .copied()
            .filter(|&j| !sid.iter().any(|&k| self.order.index.lt(k, j)))
            .collect();
        minimal.into_iter().all(|j| self.leq(Level::At(j), a, b))
    }

    /// The forest clause on component lists, at least one of which has two
    /// or more parts. Unfolding the clause, `α ≤ β` holds iff the parts of
    /// `α` can be consumed one at a time by distinct parts of `β` (each
    /// `αₖ ≤ β_l`), ending either with `α` exhausted, with a remaining `β_l`
    /// strictly above everything left of `α`, or with a single leaf of `α`
    /// left against at least two parts of `β` (the leaf clause).
    fn forest_leq(&mut self, level: Level, xs: &[Term], ys: &[Term]) -> bool {
        let (n, m) = (xs.len(), ys.len());
        let mut le = vec![vec![false; m]; n];
        let mut lt = vec![vec![false; m]; n];
        for (k, x) in xs.iter().enumerate() {
            for (l, y) in ys.iter().enumerate() {
                le[k][l] = self.leq(level, x, y);
                lt[k][l] = le[k][l] && !self.leq(level, y, x);
            }
        }
        let adj: Vec<Vec<usize>> = le.iter().map(|row| (0..m).filter(|&l| row[l]).collect()).collect();

        // Every part of α consumed.
        let mut all = Matcher::new(&adj, m, None);
        if (0..n).all(|k| all.offer(k)) {
            return true;
        }

        // A single leaf left against two or more parts.
        if m > n {
            for leaf in (0..n).filter(|&k| xs[k].is_leaf()) {
                let mut mt = Matcher::new(&adj, m, None);
                if (0..n).filter(|&k| k != leaf).all(|k| mt.offer(k)) {
                    return true;
                }
            }
        }

        // A remaining β_l = b* strictly above all remaining parts of α.
        for star in 0..m {
            let dominated: Vec<usize> = (0..n).filter(|&k| lt[k][star]).collect();
            if dominated.is_empty() {
                continue;
            }
            let mut mt = Matcher::new(&adj, m, Some(star));
            if !(0..n).filter(|k| !dominated.contains(k)).all(|k| mt.offer(k)) {
                continue;
            }
            let rest = n - dominated.len();
            let extra = dominated.iter().filter(|&&k| mt.offer(k)).count();
            // |U| ranges over [n - (rest + extra), |dominated|].
            let lo = (n - rest - extra).max(1);
            let hi = dominated.len();
            if !ys[star].is_leaf() {
                if lo <= hi {
                    return true;
                }
                continue;
            }
            // A leaf b* left alone against two or more parts of α is the
            // leaf clause, which forbids the comparison.
            let ok = (lo..=hi).any(|u| u == 1 || u + m >= 2 + n);
            if ok {
                return true;
            }
        }
        false
    }

    /// Both directions at `level`.
    pub fn compare(&mut self, level: Level, a: &Term, b: &Term) -> Comparison {
        Comparison {
            leq: self.leq(level, a, b),
            geq: self.leq(level, b, a),
        }
    }

    /// `α <ᵠ_level β`.
    pub fn lt(&mut self, level: Level, a: &Term, b: &Term) -> bool {
        self.leq(level, a, b) && !self.leq(level, b, a)
    }

    /// Levels that decide `⋘` between `α` and `β`: the labels occurring in
    /// either term, one representative per class of the remaining indices
    /// (grouped by the occurring labels above them), and `∞`.
    pub fn levels(&self, a: &Term, b: &Term) -> Vec<Level> {
        let mut occurring = a.node_labels();
        occurring.extend(b.node_labels());
        let mut out: Vec<Level> = vec![Level::Infinity];
        out.extend(self.order.index.representatives(&occurring).into_iter().map(Level::At));
        out
    }

    /// Every level of `Ĩ`, for finite index orders.
    pub fn all_levels(&self) -> Option<Vec<Level>> {
        let mut out = vec![Level::Infinity];
        out.extend(self.order.index.elements()?.into_iter().map(Level::At));
        Some(out)
    }

    /// `α ⋘ β` decided over the given levels.
    pub fn lll_over(&mut self, levels: &[Level], a: &Term, b: &Term) -> bool {
        levels.iter().all(|&l| self.lt(l, a, b))
    }

    /// `α ⋘ β`.
    pub fn lll(&mut self, a: &Term, b: &Term) -> bool {
        let levels = self.levels(a, b);
        self.lll_over(&levels, a, b)
    }

    /// `α ⋘⁼ β`.
    pub fn lll_eq(&mut self, a: &Term, b: &Term) -> bool {
        a == b || self.lll(a, b)
    }

    /// The comparison at every deciding level.
    pub fn table(&mut self, a: &Term, b: &Term) -> Vec<(Level, Comparison)> {
        self.levels(a, b)
            .into_iter()
            .map(|l| (l, self.compare(l, a, b)))
            .collect()
    }
}

/// Outcome of [`descending_chain_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// `descending[k]` is whether `seq[k] ⋙ seq[k + 1]`.
    pub descending: Vec<bool>,
    /// Pairs `m < n` with `seq[m] ⋘⁼ seq[n]`.
    pub good_pairs: Vec<(usize, usize)>,
}

impl ChainReport {
    pub fn strictly_descending(&self) -> bool {
        self.descending.iter().all(|&d| d)
    }

    pub fn is_bad(&self) -> bool {
        self.good_pairs.is_empty()
    }
}

/// Checks adjacent strict descent and looks for good pairs.
pub fn descending_chain_check(cmp: &mut Comparator<'_>, seq: &[Term]) -> ChainReport {
    let descending = seq.windows(2).map(|w| cmp.lll(&w[1], &w[0])).collect();
    let mut good_pairs = Vec::new();
    for m in 0..seq.len() {
        for n in m + 1..seq.len() {
            if cmp.lll_eq(&seq[m], &seq[n]) {
                good_pairs.push((m, n));
            }
        }
    }
    ChainReport { descending, good_pairs }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::At(i) => write!(f, "{i:?}"),
            Level::Infinity => write!(f, "∞"),
        }
    }
}

impl Level {
    pub fn name(&self, order: &CombinedOrder) -> String {
        match self {
            Level::At(i) => order.index.name(*i),
            Level::Infinity => "∞".to_string(),
        }
    }
}
