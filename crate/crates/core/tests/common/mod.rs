//! Independent oracles shared by the integration tests. Each is a direct,
//! unoptimized transcription of a definition and shares no code with the
//! library beyond the term and order data types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gqod::labels::{CombinedOrder, Index, Sym};
use gqod::ordering::Level;
use gqod::terms::{Term, TermKind};

/// `α ⊂ᵢ β`, clause by clause, returning all sections (with repeats).
pub fn sections(o: &CombinedOrder, beta: &Term, i: Index) -> Vec<Term> {
    match beta.kind() {
        TermKind::Leaf(_) | TermKind::Hole => vec![],
        TermKind::Node(j, body) => {
            if i == *j {
                let mut v = vec![body.clone()];
                v.extend(sections(o, body, i));
                v
            } else if o.index.leq(i, *j) {
                sections(o, body, i)
            } else {
                vec![]
            }
        }
        TermKind::Forest(parts) => parts.iter().flat_map(|p| sections(o, p, i)).collect(),
    }
}

fn all_node_labels(t: &Term, out: &mut BTreeSet<Index>) {
    match t.kind() {
        TermKind::Node(j, body) => {
            out.insert(*j);
            all_node_labels(body, out);
        }
        TermKind::Forest(parts) => parts.iter().for_each(|p| all_node_labels(p, out)),
        _ => {}
    }
}

/// `Sid_i{α, β}`: every `j > i` having a `j`-section in `α` or `β`.
pub fn sid(o: &CombinedOrder, i: Index, a: &Term, b: &Term) -> BTreeSet<Index> {
    let mut labels = BTreeSet::new();
    all_node_labels(a, &mut labels);
    all_node_labels(b, &mut labels);
    labels
        .into_iter()
        .filter(|&j| o.index.lt(i, j))
        .filter(|&j| !sections(o, a, j).is_empty() || !sections(o, b, j).is_empty())
        .collect()
}

fn without(parts: &[Term], k: usize) -> Vec<Term> {
    parts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, t)| t.clone())
        .collect()
}

/// `α ≤ᵠ_level β`, transcribed literally. The forest clause reads "α₁" as
/// any one of the parts of `α`.
pub fn leq(o: &CombinedOrder, level: Level, a: &Term, b: &Term) -> bool {
    let a_leaf = a.is_leaf();
    let b_leaf = b.is_leaf();
    // (1)
    if a_leaf && b_leaf {
        return o.leaf.leq(a.as_leaf().unwrap(), b.as_leaf().unwrap());
    }
    // (2)
    if a_leaf {
        return true;
    }
    if b_leaf {
        return false;
    }
    let xs = a.components();
    let ys = b.components();
    // (3)
    if xs.len() + ys.len() > 2 {
        let cond_a = ys
            .iter()
            .any(|y| xs.iter().all(|x| leq(o, level, x, y) && !leq(o, level, y, x)));
        if cond_a {
            return true;
        }
        for first in 0..xs.len() {
            for l in 0..ys.len() {
                if !leq(o, level, &xs[first], &ys[l]) {
                    continue;
                }
                if xs.len() == 1 {
                    return true;
                }
                let ys_rest = without(ys, l);
                if ys_rest.is_empty() {
                    continue;
                }
                let xs_rest = Term::sum(without(xs, first));
                if leq(o, level, &xs_rest, &Term::sum(ys_rest)) {
                    return true;
                }
            }
        }
        return false;
    }
    let (j, a0) = a.as_node().unwrap();
    let (k, b0) = b.as_node().unwrap();
    match level {
        // (4)
        Level::Infinity => o.index.lt(j, k) || (j == k && leq(o, Level::At(j), a0, b0)),
        // (5)
        Level::At(i) => {
            if sections(o, b, i).iter().any(|bp| leq(o, level, a, bp)) {
                return true;
            }
            let all = sections(o, a, i)
                .iter()
                .all(|ap| leq(o, level, ap, b) && !leq(o, level, b, ap));
            if !all {
                return false;
            }
            let s = sid(o, i, a, b);
            if s.is_empty() {
                leq(o, Level::Infinity, a, b)
            } else {
                s.iter()
                    .filter(|&&m| !s.iter().any(|&n| o.index.lt(n, m)))
                    .all(|&m| leq(o, Level::At(m), a, b))
            }
        }
    }
}

pub fn lt(o: &CombinedOrder, level: Level, a: &Term, b: &Term) -> bool {
    leq(o, level, a, b) && !leq(o, level, b, a)
}

/// Tree nodes of a connected term in pre-order, each with its label,
/// parent and depth.
pub struct Flat {
    pub labels: Vec<Sym>,
    pub parent: Vec<Option<usize>>,
}

pub fn flatten(t: &Term) -> Flat {
    let mut f = Flat {
        labels: vec![],
        parent: vec![],
    };
    fn go(t: &Term, parent: Option<usize>, f: &mut Flat) {
        let me = f.labels.len();
        match t.kind() {
            TermKind::Leaf(a) => {
                f.labels.push(Sym::Leaf(*a));
                f.parent.push(parent);
            }
            TermKind::Node(i, _) => {
                f.labels.push(Sym::Index(*i));
                f.parent.push(parent);
                for c in t.children() {
                    go(c, Some(me), f);
                }
            }
            _ => panic!("flatten expects a connected term without holes"),
        }
    }
    go(t, None, &mut f);
    f
}

fn ancestors(f: &Flat, mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while let Some(p) = f.parent[v] {
        out.push(p);
        v = p;
    }
    out
}

fn is_ancestor_or_self(f: &Flat, a: usize, d: usize) -> bool {
    ancestors(f, d).contains(&a)
}

fn meet(f: &Flat, a: usize, b: usize) -> usize {
    let aa = ancestors(f, a);
    *ancestors(f, b).iter().find(|x| aa.contains(x)).unwrap()
}

/// Whether the injection `map` (source node -> target node) satisfies all
/// four conditions of the gap embedding.
pub fn is_embedding(o: &CombinedOrder, s: &Flat, t: &Flat, map: &[usize]) -> bool {
    let n = s.labels.len();
    // injective
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != n {
        return false;
    }
    // labels
    if (0..n).any(|a| !o.sym_leq(s.labels[a], t.labels[map[a]])) {
        return false;
    }
    // meets
    for a in 0..n {
        for b in 0..n {
            if map[meet(s, a, b)] != meet(t, map[a], map[b]) {
                return false;
            }
        }
    }
    // edges: target nodes strictly between the images of parent and child
    for c in 0..n {
        if let Some(p) = s.parent[c] {
            let mut v = t.parent[map[c]];
            while let Some(x) = v {
                if x == map[p] {
                    break;
                }
                if !o.sym_leq(s.labels[c], t.labels[x]) {
                    return false;
                }
                v = t.parent[x];
            }
        }
    }
    // root: every target node above the root image
    let mut v = t.parent[map[0]];
    while let Some(x) = v {
        if !o.sym_leq(s.labels[0], t.labels[x]) {
            return false;
        }
        v = t.parent[x];
    }
    let _ = is_ancestor_or_self;
    true
}

/// Tries every injection of source nodes into target nodes.
pub fn brute_embeds(o: &CombinedOrder, src: &Term, tgt: &Term) -> bool {
    let s = flatten(src);
    let t = flatten(tgt);
    let n = s.labels.len();
    let m = t.labels.len();
    if n > m {
        return false;
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; m];
    fn go(o: &CombinedOrder, s: &Flat, t: &Flat, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if map.len() == s.labels.len() {
            return is_embedding(o, s, t, map);
        }
        for x in 0..t.labels.len() {
            if !used[x] {
                used[x] = true;
                map.push(x);
                if go(o, s, t, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    go(o, &s, &t, &mut map, &mut used)
}

/// Forest embedding by trying every assignment of source components to
/// distinct target components.
pub fn brute_forest_embeds(o: &CombinedOrder, src: &Term, tgt: &Term) -> bool {
    let xs = src.components();
    let ys = tgt.components();
    fn go(o: &CombinedOrder, xs: &[Term], ys: &[Term], k: usize, used: &mut [bool]) -> bool {
        if k == xs.len() {
            return true;
        }
        for l in 0..ys.len() {
            if !used[l] && brute_embeds(o, &xs[k], &ys[l]) {
                used[l] = true;
                if go(o, xs, ys, k + 1, used) {
                    return true;
                }
                used[l] = false;
            }
        }
        false
    }
    xs.len() <= ys.len() && go(o, xs, ys, 0, &mut vec![false; ys.len()])
}

/// The four hydras of the worked play, over the hydra preset.
pub const PLAY: [&str; 4] = [
    "(0, (ω', (1, x) # (1', 0)))",
    "(0, (ω', (1, x) # (0, (ω', (1, x) # (0, 0))))) # 0",
    "(0, (ω', (1, x) # (0, (ω', (1, x)) # (ω', (1, x)) # (ω', (1, x)) # 0 # 0))) # 0",
    "(0, (5, (1, x) # (0, (ω', (1, x)) # (ω', (1, x)) # (ω', (1, x)) # 0 # 0)) # 0) # 0",
];

/// The moves of the worked play, found among the enumerated moves by
/// their rule and parameters: a cut at `(1', 0)` with `i⁻ = 0`, three
/// copies (`k = 2`), and the outer `ω'` lowered to 5.
pub fn play_script(o: &CombinedOrder) -> Vec<(gqod::terms::Position, gqod::rewrite::HydraRule)> {
    use gqod::rewrite::{enumerate_moves, Bounds, HydraRule};
    let states: Vec<Term> = PLAY.iter().map(|s| gqod::terms::parse(o, s).unwrap()).collect();
    let bounds = Bounds {
        k_max: 3,
        r3_window: 10,
    };
    let zero = o.index.lookup("0").unwrap();
    let five = o.index.lookup("5").unwrap();
    let wanted = |r: &HydraRule| match r {
        HydraRule::R2 { i_minus, .. } => *i_minus == zero,
        HydraRule::R1 { k } => *k == 2,
        HydraRule::R3 { i } => *i == five,
        HydraRule::R1Prime { .. } => false,
    };
    (0..3)
        .map(|n| {
            let m = enumerate_moves(o, &states[n], bounds)
                .into_iter()
                .find(|m| wanted(&m.rule) && m.result == states[n + 1])
                .unwrap_or_else(|| panic!("no move from state {n} reaches state {}", n + 1));
            (m.position, m.rule)
        })
        .collect()
}
