//! Label orders: the inner-node index order `(I, ≤_I)`, the leaf order
//! `(A, ≤_A)`, and their combination.
//!
//! Index orders are either finite and explicit (declared edges, transitive
//! closure taken on load) or one of two built-in infinite families:
//!
//! * `two-chain-omega`: `0 < 1 < 2 < … < ω'` and `0 < 1' < 2' < … < ω'`,
//!   the two chains being incomparable above the shared bottom `0`;
//! * `nat-omega`: `0 < 1 < 2 < … < ω`.
//!
//! Leaf orders are always finite quasi orders. When a `rho` element is
//! configured the combined order follows the rewriting setting: `ρ` is the
//! minimum of both carriers, variables sit strictly between `ρ` and every
//! other index, and variables are pairwise incomparable.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// An element of the index order `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    /// Element of a finite explicit order, by declaration position.
    Elem(u32),
    /// `n` (side 0) or `n'` (side 1) of the two-chain order. The shared
    /// bottom is always `Chain(0, 0)`.
    Chain(u8, u64),
    /// `n` in `ℕ ∪ {ω}`.
    Nat(u64),
    /// `ω'` or `ω`.
    Omega,
}

/// An element of the leaf order `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf(pub u32);

/// Any label that can appear on a tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    Index(Index),
    Leaf(Leaf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    FiniteExplicit,
    TwoChainOmega,
    NatOmega,
}

/// Shape of `I↾i`, the set of indices strictly below `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `I↾i` is empty.
    Minimum,
    /// `I↾i` has maximal elements; all of them are listed.
    Successor(Vec<Index>),
    /// `I↾i` is non-empty and has no maximal element.
    Limit,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("the index order is empty")]
    EmptyIndexOrder,
    #[error("antisymmetry violated in the index order: {0} and {1}")]
    Antisymmetry(String, String),
    #[error("cycle in the strict part of the {order} order through {element}")]
    Cycle { order: &'static str, element: String },
    #[error("undeclared element `{0}`")]
    Undeclared(String),
    #[error("`{0}` is not an element of the index order")]
    NotInIndexOrder(String),
    #[error("`rho` must be declared when variables are present")]
    MissingRho,
    #[error("rho `{0}` must be the minimum of the index order")]
    RhoNotMinimum(String),
    #[error("variables `{0}` and `{1}` must be incomparable")]
    ComparableVariables(String, String),
    #[error("label `{0}` is declared in both the index and the leaf order")]
    SharedName(String),
    #[error("unknown builtin order `{0}`")]
    UnknownBuiltin(String),
    #[error("operation not supported for this order kind")]
    Unsupported,
}

/// The index order `(I, ≤_I)`.
#[derive(Clone, Debug)]
pub struct LabelOrder {
    kind: OrderKind,
    names: Vec<String>,
    by_name: HashMap<String, u32>,
    /// Reflexive-transitive closure, finite orders only.
    leq: Vec<Vec<bool>>,
}

impl LabelOrder {
    pub fn two_chain_omega() -> Self {
        Self::builtin(OrderKind::TwoChainOmega)
    }

    pub fn nat_omega() -> Self {
        Self::builtin(OrderKind::NatOmega)
    }

    fn builtin(kind: OrderKind) -> Self {
        LabelOrder {
            kind,
            names: Vec::new(),
            by_name: HashMap::new(),
            leq: Vec::new(),
        }
    }

    /// Builds a finite order from element names and strict edges `(lower, upper)`.
    pub fn finite(names: Vec<String>, edges: &[(u32, u32)]) -> Result<Self, OrderError> {
        if names.is_empty() {
            return Err(OrderError::EmptyIndexOrder);
        }
        let n = names.len();
        let mut strict = vec![vec![false; n]; n];
        for &(a, b) in edges {
            strict[a as usize][b as usize] = true;
        }
        transitive_closure(&mut strict);
        for (i, row) in strict.iter().enumerate() {
            if row[i] {
                return Err(OrderError::Cycle {
                    order: "index",
                    element: names[i].clone(),
                });
            }
        }
        let mut leq = strict;
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let by_name = names.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        Ok(LabelOrder {
            kind: OrderKind::FiniteExplicit,
            names,
            by_name,
            leq,
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Whether `i` belongs to this order's carrier.
    pub fn contains(&self, i: Index) -> bool {
        match (self.kind, i) {
            (OrderKind::FiniteExplicit, Index::Elem(e)) => (e as usize) < self.names.len(),
            (OrderKind::TwoChainOmega, Index::Chain(side, n)) => side <= 1 && (n > 0 || side == 0),
            (OrderKind::TwoChainOmega, Index::Omega) => true,
            (OrderKind::NatOmega, Index::Nat(_)) | (OrderKind::NatOmega, Index::Omega) => true,
            _ => false,
        }
    }

    pub fn leq(&self, a: Index, b: Index) -> bool {
        if a == b {
            return true;
        }
        match (a, b) {
            (Index::Elem(x), Index::Elem(y)) => self
                .leq
                .get(x as usize)
                .and_then(|row| row.get(y as usize))
                .copied()
                .unwrap_or(false),
            (Index::Chain(_, 0), Index::Chain(_, _)) => true,
            (Index::Chain(s, n), Index::Chain(t, m)) => s == t && n <= m,
            (Index::Chain(..), Index::Omega) | (Index::Nat(_), Index::Omega) => true,
            (Index::Nat(n), Index::Nat(m)) => n <= m,
            _ => false,
        }
    }

    pub fn lt(&self, a: Index, b: Index) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Index, b: Index) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The least element, when the order has one.
    pub fn bottom(&self) -> Option<Index> {
        match self.kind {
            OrderKind::TwoChainOmega => Some(Index::Chain(0, 0)),
            OrderKind::NatOmega => Some(Index::Nat(0)),
            OrderKind::FiniteExplicit => (0..self.names.len() as u32)
                .map(Index::Elem)
                .find(|&e| self.elements().unwrap().iter().all(|&o| self.leq(e, o))),
        }
    }

    /// All elements of a finite order; `None` for the infinite families.
    pub fn elements(&self) -> Option<Vec<Index>> {
        match self.kind {
            OrderKind::FiniteExplicit => Some((0..self.names.len() as u32).map(Index::Elem).collect()),
            _ => None,
        }
    }

    pub fn name(&self, i: Index) -> String {
        match i {
            Index::Elem(e) => self.names.get(e as usize).cloned().unwrap_or_else(|| format!("?{e}")),
            Index::Chain(0, n) => n.to_string(),
            Index::Chain(_, n) => format!("{n}'"),
            Index::Nat(n) => n.to_string(),
            Index::Omega => match self.kind {
                OrderKind::TwoChainOmega => "ω'".to_string(),
                _ => "ω".to_string(),
            },
        }
    }

    /// Resolves a label name. Built-in families accept `w'`/`omega'` (resp.
    /// `w`/`omega`) as ASCII spellings of the top element.
    pub fn lookup(&self, name: &str) -> Option<Index> {
        match self.kind {
            OrderKind::FiniteExplicit => self.by_name.get(name).map(|&e| Index::Elem(e)),
            OrderKind::TwoChainOmega => match name {
                "ω'" | "w'" | "omega'" => Some(Index::Omega),
                _ => {
                    let (digits, side) = match name.strip_suffix('\'') {
                        Some(d) => (d, 1),
                        None => (name, 0),
                    };
                    let n = parse_natural(digits)?;
                    match (n, side) {
                        (0, 1) => None,
                        _ => Some(Index::Chain(side, n)),
                    }
                }
            },
            OrderKind::NatOmega => match name {
                "ω" | "w" | "omega" => Some(Index::Omega),
                _ => parse_natural(name).map(Index::Nat),
            },
        }
    }

    /// Returns exactly the elements of `set` with nothing in `set` strictly
    /// below them.
    pub fn minimal_elements(&self, set: &[Index]) -> Result<Vec<Index>, OrderError> {
        if let Some(bad) = set.iter().find(|&&i| !self.contains(i)) {
            return Err(OrderError::NotInIndexOrder(self.name(*bad)));
        }
        let uniq: BTreeSet<Index> = set.iter().copied().collect();
        Ok(uniq
            .iter()
            .copied()
            .filter(|&j| !uniq.iter().any(|&k| self.lt(k, j)))
            .collect())
    }

    pub fn classify(&self, i: Index) -> Result<Classification, OrderError> {
        if !self.contains(i) {
            return Err(OrderError::NotInIndexOrder(self.name(i)));
        }
        Ok(match (self.kind, i) {
            (OrderKind::FiniteExplicit, _) => {
                let below: Vec<Index> = self
                    .elements()
                    .unwrap()
                    .into_iter()
                    .filter(|&j| self.lt(j, i))
                    .collect();
                if below.is_empty() {
                    Classification::Minimum
                } else {
                    Classification::Successor(self.maximal_elements(&below))
                }
            }
            (_, Index::Omega) => Classification::Limit,
            (_, Index::Chain(_, 0)) | (_, Index::Nat(0)) => Classification::Minimum,
            (_, Index::Chain(_, 1)) => Classification::Successor(vec![Index::Chain(0, 0)]),
            (_, Index::Chain(side, n)) => Classification::Successor(vec![Index::Chain(side, n - 1)]),
            (_, Index::Nat(n)) => Classification::Successor(vec![Index::Nat(n - 1)]),
            _ => return Err(OrderError::Unsupported),
        })
    }

    fn maximal_elements(&self, set: &[Index]) -> Vec<Index> {
        set.iter()
            .copied()
            .filter(|&j| !set.iter().any(|&k| self.lt(j, k)))
            .collect()
    }

    /// Elements of `I↾limit` in level order (`0, 1, 1', 2, 2', …` for the
    /// two-chain family), truncated to `window` entries.
    pub fn window_below(&self, limit: Index, window: usize) -> Vec<Index> {
        match self.kind {
            OrderKind::FiniteExplicit => self
                .elements()
                .unwrap()
                .into_iter()
                .filter(|&j| self.lt(j, limit))
                .take(window)
                .collect(),
            OrderKind::TwoChainOmega => {
                if limit != Index::Omega {
                    return self.finite_chain_below(limit).into_iter().take(window).collect();
                }
                let mut out = vec![Index::Chain(0, 0)];
                let mut n = 1;
                while out.len() < window {
                    out.push(Index::Chain(0, n));
                    out.push(Index::Chain(1, n));
                    n += 1;
                }
                out.truncate(window);
                out
            }
            OrderKind::NatOmega => match limit {
                Index::Omega => (0..window as u64).map(Index::Nat).collect(),
                Index::Nat(n) => (0..n.min(window as u64)).map(Index::Nat).collect(),
                _ => Vec::new(),
            },
        }
    }

    fn finite_chain_below(&self, i: Index) -> Vec<Index> {
        match i {
            Index::Chain(side, n) => (0..n)
                .map(|m| {
                    if m == 0 {
                        Index::Chain(0, 0)
                    } else {
                        Index::Chain(side, m)
                    }
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    /// One index per class of `{ j ∈ I : j not in occurring }` that share the
    /// same set of occurring labels strictly above them, plus the occurring
    /// labels themselves. For elements outside `occurring`, `≤ᵠ` depends only
    /// on that upper set, so this covers every behaviour of `I`.
    pub fn representatives(&self, occurring: &BTreeSet<Index>) -> Vec<Index> {
        let mut out: BTreeSet<Index> = occurring.clone();
        match self.kind {
            OrderKind::FiniteExplicit => {
                let mut seen: Vec<Vec<Index>> = Vec::new();
                for e in self.elements().unwrap() {
                    if occurring.contains(&e) {
                        continue;
                    }
                    let above: Vec<Index> = occurring.iter().copied().filter(|&o| self.lt(e, o)).collect();
                    if !seen.contains(&above) {
                        seen.push(above);
                        out.insert(e);
                    }
                }
            }
            OrderKind::TwoChainOmega => {
                let mut cands = vec![Index::Chain(0, 0), Index::Chain(0, 1), Index::Chain(1, 1)];
                for &o in occurring {
                    match o {
                        Index::Chain(_, 0) => {}
                        Index::Chain(side, n) => cands.push(Index::Chain(side, n + 1)),
                        _ => {}
                    }
                }
                out.extend(cands);
            }
            OrderKind::NatOmega => {
                out.insert(Index::Nat(0));
                out.insert(Index::Nat(1));
                for &o in occurring {
                    if let Index::Nat(n) = o {
                        out.insert(Index::Nat(n + 1));
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

fn parse_natural(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

#[allow(clippy::needless_range_loop)]
fn transitive_closure(m: &mut [Vec<bool>]) {
    let n = m.len();
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
}

/// The leaf order `(A, ≤_A)`: a finite quasi order, optionally with
/// variables and a designated minimum `ρ`.
#[derive(Clone, Debug)]
pub struct LeafOrder {
    names: Vec<String>,
    by_name: HashMap<String, u32>,
    leq: Vec<Vec<bool>>,
    variable: Vec<bool>,
    rho: Option<Leaf>,
}

impl LeafOrder {
    pub fn leq(&self, a: Leaf, b: Leaf) -> bool {
        self.leq[a.0 as usize][b.0 as usize]
    }

    pub fn name(&self, a: Leaf) -> &str {
        &self.names[a.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Leaf> {
        self.by_name.get(name).map(|&i| Leaf(i))
    }

    pub fn is_variable(&self, a: Leaf) -> bool {
        self.variable[a.0 as usize]
    }

    pub fn rho(&self) -> Option<Leaf> {
        self.rho
    }

    pub fn elements(&self) -> impl Iterator<Item = Leaf> + '_ {
        (0..self.names.len() as u32).map(Leaf)
    }

    pub fn variables(&self) -> impl Iterator<Item = Leaf> + '_ {
        self.elements().filter(|&a| self.is_variable(a))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// `I` and `A` together, with every leaf label strictly below every index
/// (except around `ρ`, see the module docs).
#[derive(Clone, Debug)]
pub struct CombinedOrder {
    pub index: LabelOrder,
    pub leaf: LeafOrder,
    rho_index: Option<Index>,
    digest: String,
}

impl CombinedOrder {
    /// The `ρ` element viewed as an index label.
    pub fn rho_index(&self) -> Option<Index> {
        self.rho_index
    }

    pub fn rho_leaf(&self) -> Option<Leaf> {
        self.leaf.rho
    }

    /// SHA-256 of the order-spec text this order was loaded from.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn sym_leq(&self, a: Sym, b: Sym) -> bool {
        match (a, b) {
            (Sym::Index(i), Sym::Index(j)) => self.index.leq(i, j),
            (Sym::Leaf(x), Sym::Leaf(y)) => self.leaf.leq(x, y),
            (Sym::Leaf(x), Sym::Index(j)) => match (self.rho_index, self.leaf.rho) {
                (Some(r), Some(rl)) if r == j => self.leaf.leq(x, rl),
                _ => true,
            },
            (Sym::Index(i), Sym::Leaf(_)) => self.rho_index == Some(i),
        }
    }

    pub fn sym_comparable(&self, a: Sym, b: Sym) -> bool {
        self.sym_leq(a, b) || self.sym_leq(b, a)
    }

    pub fn sym_name(&self, s: Sym) -> String {
        match s {
            Sym::Index(i) => self.index.name(i),
            Sym::Leaf(a) => self.leaf.name(a).to_string(),
        }
    }

    /// Resolves an index name, accepting `rho`/`ρ` for the `ρ` element.
    pub fn lookup_index(&self, name: &str) -> Option<Index> {
        match name {
            "rho" | "ρ" if self.rho_index.is_some() => self.rho_index,
            _ => self.index.lookup(name),
        }
    }

    /// Resolves a leaf name, accepting `rho`/`ρ` for the `ρ` element.
    pub fn lookup_leaf(&self, name: &str) -> Option<Leaf> {
        match name {
            "rho" | "ρ" if self.leaf.rho.is_some() => self.leaf.rho,
            _ => self.leaf.lookup(name),
        }
    }
}

#[derive(Default)]
struct Section {
    names: Vec<String>,
    by_name: HashMap<String, u32>,
    strict: Vec<(u32, u32, usize)>,
    equiv: Vec<(u32, u32)>,
}

impl Section {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.by_name.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), i);
        i
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    None,
    I,
    A,
    V,
}

/// Parses and validates an order-spec document.
///
/// ```text
/// # comment
/// [I]
/// builtin = two-chain-omega
/// [A]
/// 0'' < 1'' < 2''
/// 2'' ~ 2'''
/// [V]
/// x
/// rho = 0
/// ```
pub fn load_order_spec(text: &str) -> Result<CombinedOrder, OrderError> {
    let mut part = Part::None;
    let mut builtin: Option<OrderKind> = None;
    let mut rho: Option<String> = None;
    let mut iset = Section::default();
    let mut aset = Section::default();
    let mut vars: Vec<String> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: &str| OrderError::Syntax {
            line: line_no,
            message: message.to_string(),
        };
        match line {
            "[I]" => {
                part = Part::I;
                continue;
            }
            "[A]" => {
                part = Part::A;
                continue;
            }
            "[V]" => {
                part = Part::V;
                continue;
            }
            _ if line.starts_with('[') => return Err(syntax("unknown section")),
            _ => {}
        }
        if let Some((key, value)) = line.split_once('=') {
            let (key, value) = (key.trim(), value.trim());
            match key {
                "rho" => {
                    if value.is_empty() {
                        return Err(syntax("empty rho"));
                    }
                    rho = Some(value.to_string());
                }
                "builtin" => {
                    if part != Part::I {
                        return Err(syntax("builtin is only allowed in [I]"));
                    }
                    builtin = Some(match value {
                        "two-chain-omega" => OrderKind::TwoChainOmega,
                        "nat-omega" => OrderKind::NatOmega,
                        other => return Err(OrderError::UnknownBuiltin(other.to_string())),
                    });
                }
                _ => return Err(syntax("unknown key")),
            }
            continue;
        }
        match part {
            Part::None => return Err(syntax("statement outside of a section")),
            Part::V => {
                for name in line.split_whitespace() {
                    check_ident(name).map_err(|m| syntax(&m))?;
                    vars.push(name.to_string());
                }
            }
            Part::I | Part::A => {
                let section = if part == Part::I { &mut iset } else { &mut aset };
                if line.contains('~') {
                    if part == Part::I {
                        let names: Vec<&str> = line.split('~').map(str::trim).collect();
                        return Err(OrderError::Antisymmetry(
                            names[0].to_string(),
                            names.get(1).unwrap_or(&"").to_string(),
                        ));
                    }
                    let names: Vec<&str> = line.split('~').map(str::trim).collect();
                    for w in names.windows(2) {
                        check_ident(w[0]).map_err(|m| syntax(&m))?;
                        check_ident(w[1]).map_err(|m| syntax(&m))?;
                        let (a, b) = (section.intern(w[0]), section.intern(w[1]));
                        section.equiv.push((a, b));
                    }
                } else if line.contains('<') || line.contains('>') {
                    let descending = line.contains('>');
                    if descending && line.contains('<') {
                        return Err(syntax("mixed `<` and `>`"));
                    }
                    let sep = if descending { '>' } else { '<' };
                    let names: Vec<&str> = line.split(sep).map(str::trim).collect();
                    for w in names.windows(2) {
                        check_ident(w[0]).map_err(|m| syntax(&m))?;
                        check_ident(w[1]).map_err(|m| syntax(&m))?;
                        let (a, b) = (section.intern(w[0]), section.intern(w[1]));
                        let (lo, hi) = if descending { (b, a) } else { (a, b) };
                        section.strict.push((lo, hi, line_no));
                    }
                } else {
                    for name in line.split_whitespace() {
                        check_ident(name).map_err(|m| syntax(&m))?;
                        section.intern(name);
                    }
                }
            }
        }
    }

    let index = match builtin {
        Some(kind) => {
            if !iset.names.is_empty() {
                return Err(OrderError::Syntax {
                    line: iset.strict.first().map(|e| e.2).unwrap_or(0),
                    message: "builtin index orders take no extra elements".to_string(),
                });
            }
            LabelOrder::builtin(kind)
        }
        None => {
            let edges: Vec<(u32, u32)> = iset.strict.iter().map(|&(a, b, _)| (a, b)).collect();
            LabelOrder::finite(iset.names.clone(), &edges)?
        }
    };

    if !vars.is_empty() && rho.is_none() {
        return Err(OrderError::MissingRho);
    }

    let rho_index = match &rho {
        Some(name) => {
            let i = index
                .lookup(name)
                .ok_or_else(|| OrderError::NotInIndexOrder(name.clone()))?;
            if index.bottom() != Some(i) {
                return Err(OrderError::RhoNotMinimum(name.clone()));
            }
            Some(i)
        }
        None => None,
    };

    // Leaf carrier: declared constants, then variables, then rho.
    for v in &vars {
        aset.intern(v);
    }
    let rho_leaf = rho.as_ref().map(|name| Leaf(aset.intern(name)));
    for name in &aset.names {
        let shared = match &rho {
            Some(r) if r == name => false,
            _ => index.lookup(name).is_some(),
        };
        if shared {
            return Err(OrderError::SharedName(name.clone()));
        }
    }

    let n = aset.names.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b, _) in &aset.strict {
        leq[a as usize][b as usize] = true;
    }
    for &(a, b) in &aset.equiv {
        leq[a as usize][b as usize] = true;
        leq[b as usize][a as usize] = true;
    }
    if let Some(r) = rho_leaf {
        leq[r.0 as usize].fill(true);
    }
    transitive_closure(&mut leq);
    for &(a, b, _) in &aset.strict {
        if leq[b as usize][a as usize] {
            return Err(OrderError::Cycle {
                order: "leaf",
                element: aset.names[a as usize].clone(),
            });
        }
    }
    let variable: Vec<bool> = aset.names.iter().map(|s| vars.contains(s)).collect();
    for a in 0..n {
        for b in 0..n {
            if a != b && variable[a] && variable[b] && leq[a][b] {
                return Err(OrderError::ComparableVariables(
                    aset.names[a].clone(),
                    aset.names[b].clone(),
                ));
            }
        }
    }

    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(CombinedOrder {
        index,
        leaf: LeafOrder {
            names: aset.names,
            by_name: aset.by_name,
            leq,
            variable,
            rho: rho_leaf,
        },
        rho_index,
        digest,
    })
}

fn check_ident(name: &str) -> Result<(), String> {
    if name.is_empty() {
        return Err("empty name".to_string());
    }
    if name.chars().any(|c| c.is_whitespace() || "(),#*<>~=".contains(c)) {
        return Err(format!("invalid name `{name}`"));
    }
    Ok(())
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Minimum => write!(f, "minimum"),
            Classification::Limit => write!(f, "limit"),
            Classification::Successor(_) => write!(f, "successor"),
        }
    }
}

/// Order specs used by the examples, tests and the CLI documentation.
pub mod presets {
    /// Two chains up to `ω'` with the five-element leaf order and its
    /// `2'' ~ 2'''` equivalence.
    pub const TWO_CHAIN: &str = include_str!("../orders/two-chain.order");
    /// The five-element index order whose pre-domain has an infinite bad
    /// descending sequence.
    pub const COUNTEREXAMPLE: &str = include_str!("../orders/counterexample.order");
    /// Two chains up to `ω'` with `A = {x} ∪ {ρ}` and `ρ = 0`.
    pub const HYDRA: &str = include_str!("../orders/hydra.order");
    /// `I = {0 < 1}`, `A = {ρ}`.
    pub const TWO_ELEMENT: &str = include_str!("../orders/two-element.order");
}
