//! Term enumeration and seeded random generation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::labels::{CombinedOrder, Index, Leaf, Sym};
use crate::terms::Term;

/// The label alphabet terms are drawn from.
#[derive(Clone, Debug)]
pub struct Alphabet {
    pub labels: Vec<Index>,
    pub leaves: Vec<Leaf>,
}

impl Alphabet {
    pub fn new(labels: Vec<Index>, leaves: Vec<Leaf>) -> Self {
        assert!(!leaves.is_empty(), "an alphabet needs at least one leaf");
        Alphabet { labels, leaves }
    }

    /// All leaves of `order` and the given index labels.
    pub fn from_order(order: &CombinedOrder, labels: Vec<Index>) -> Self {
        Alphabet::new(labels, order.leaf.elements().collect())
    }
}

/// Every term (connected or not) with exactly `size` constructors.
pub fn terms_of_size(alphabet: &Alphabet, size: usize) -> Vec<Term> {
    let mut table = Table::default();
    let mut out = table.connected(alphabet, size);
    out.extend(table.forests(alphabet, size));
    out
}

/// Every term with at most `max_size` constructors.
pub fn terms_up_to_size(alphabet: &Alphabet, max_size: usize) -> Vec<Term> {
    (0..=max_size).flat_map(|s| terms_of_size(alphabet, s)).collect()
}

#[derive(Default)]
struct Table {
    connected: Vec<Option<Vec<Term>>>,
    forests: Vec<Option<Vec<Term>>>,
}

impl Table {
    fn connected(&mut self, a: &Alphabet, size: usize) -> Vec<Term> {
        if self.connected.len() <= size {
            self.connected.resize(size + 1, None);
        }
        if let Some(v) = &self.connected[size] {
            return v.clone();
        }
        let v = if size == 0 {
            a.leaves.iter().map(|&l| Term::leaf(l)).collect()
        } else {
            let mut bodies = self.connected(a, size - 1);
            bodies.extend(self.forests(a, size - 1));
            let mut v = Vec::new();
            for &i in &a.labels {
                for b in &bodies {
                    v.push(Term::node(i, b.clone()));
                }
            }
            v
        };
        self.connected[size] = Some(v.clone());
        v
    }

    fn forests(&mut self, a: &Alphabet, size: usize) -> Vec<Term> {
        if self.forests.len() <= size {
            self.forests.resize(size + 1, None);
        }
        if let Some(v) = &self.forests[size] {
            return v.clone();
        }
        let mut v = Vec::new();
        if size >= 1 {
            // Multisets of k >= 2 connected parts with sizes summing to
            // size - (k - 1): each part costs its size plus one `#`, and the
            // whole sum one `#` less.
            let mut pool: Vec<Term> = (0..size).flat_map(|s| self.connected(a, s)).collect();
            pool.sort();
            let mut acc = Vec::new();
            multisets(&pool, 0, size + 1, &mut acc, &mut v);
        }
        self.forests[size] = Some(v.clone());
        v
    }
}

fn multisets(pool: &[Term], from: usize, budget: usize, acc: &mut Vec<Term>, out: &mut Vec<Term>) {
    if budget == 0 && acc.len() >= 2 {
        out.push(Term::sum(acc.iter().cloned()));
    }
    for k in from..pool.len() {
        let s = pool[k].size() + 1;
        if s <= budget {
            acc.push(pool[k].clone());
            multisets(pool, k, budget - s, acc, out);
            acc.pop();
        }
    }
}

/// Every connected term with at most `max_nodes` tree nodes.
pub fn connected_up_to_nodes(alphabet: &Alphabet, max_nodes: usize) -> Vec<Term> {
    let mut by_nodes: Vec<Vec<Term>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    by_nodes[1] = alphabet.leaves.iter().map(|&l| Term::leaf(l)).collect();
    for n in 2..=max_nodes {
        let mut pool: Vec<Term> = by_nodes[1..n].iter().flatten().cloned().collect();
        pool.sort();
        let mut bodies = Vec::new();
        child_multisets(&pool, 0, n - 1, &mut Vec::new(), &mut bodies);
        let mut v = Vec::new();
        for &i in &alphabet.labels {
            for b in &bodies {
                v.push(Term::node(i, b.clone()));
            }
        }
        by_nodes[n] = v;
    }
    by_nodes.into_iter().flatten().collect()
}

fn child_multisets(pool: &[Term], from: usize, budget: usize, acc: &mut Vec<Term>, out: &mut Vec<Term>) {
    if budget == 0 && !acc.is_empty() {
        out.push(Term::sum(acc.iter().cloned()));
    }
    for k in from..pool.len() {
        let s = pool[k].nodes();
        if s <= budget {
            acc.push(pool[k].clone());
            child_multisets(pool, k, budget - s, acc, out);
            acc.pop();
        }
    }
}

/// A random term with at most `max_size` constructors. With `order` given,
/// the result is path comparable.
pub fn random_term<R: Rng>(rng: &mut R, alphabet: &Alphabet, order: Option<&CombinedOrder>, max_size: usize) -> Term {
    let budget = rng.gen_range(0..=max_size);
    let mut above = Vec::new();
    any(rng, alphabet, order, budget, &mut above)
}

/// A random connected term with at most `max_size` constructors.
pub fn random_connected<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    order: Option<&CombinedOrder>,
    max_size: usize,
) -> Term {
    let budget = rng.gen_range(0..=max_size);
    let mut above = Vec::new();
    connected(rng, alphabet, order, budget, &mut above)
}

fn allowed_labels(alphabet: &Alphabet, order: Option<&CombinedOrder>, above: &[Index]) -> Vec<Index> {
    match order {
        None => alphabet.labels.clone(),
        Some(o) => alphabet
            .labels
            .iter()
            .copied()
            .filter(|&i| above.iter().all(|&j| o.index.comparable(i, j)))
            .collect(),
    }
}

fn random_leaf<R: Rng>(rng: &mut R, alphabet: &Alphabet, order: Option<&CombinedOrder>, above: &[Index]) -> Term {
    let ok: Vec<Leaf> = match order {
        None => alphabet.leaves.clone(),
        Some(o) => alphabet
            .leaves
            .iter()
            .copied()
            .filter(|&a| above.iter().all(|&j| o.sym_comparable(Sym::Index(j), Sym::Leaf(a))))
            .collect(),
    };
    let pick = ok.choose(rng).or_else(|| alphabet.leaves.first()).copied().unwrap();
    Term::leaf(pick)
}

fn connected<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    order: Option<&CombinedOrder>,
    budget: usize,
    above: &mut Vec<Index>,
) -> Term {
    let labels = allowed_labels(alphabet, order, above);
    if budget == 0 || labels.is_empty() {
        return random_leaf(rng, alphabet, order, above);
    }
    let i = *labels.choose(rng).unwrap();
    above.push(i);
    let body = any(rng, alphabet, order, budget - 1, above);
    above.pop();
    Term::node(i, body)
}

fn any<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    order: Option<&CombinedOrder>,
    budget: usize,
    above: &mut Vec<Index>,
) -> Term {
    if budget == 0 || rng.gen_bool(0.6) {
        return connected(rng, alphabet, order, budget, above);
    }
    // A sum of k parts spends k - 1 constructors; split the rest.
    let parts = rng.gen_range(2..=(budget + 1).min(3));
    let mut rest = budget - (parts - 1);
    let mut out = Vec::with_capacity(parts);
    for k in 0..parts {
        let share = if k + 1 == parts { rest } else { rng.gen_range(0..=rest) };
        rest -= share;
        out.push(connected(rng, alphabet, order, share, above));
    }
    Term::sum(out)
}

/// A random hydra `(ρ, α₁) # … # (ρ, αₙ)` over a `ρ`-configured order,
/// path comparable, with leaves drawn from `leaves`, at most `max_nodes`
/// tree nodes and depth at most `max_depth`.
pub fn random_hydra<R: Rng>(
    rng: &mut R,
    order: &CombinedOrder,
    labels: &[Index],
    leaves: &[Leaf],
    max_nodes: usize,
    max_depth: usize,
) -> Term {
    let rho = order.rho_index().expect("hydra generation needs rho");
    let trees = rng.gen_range(1..=2usize).min(max_nodes / 2).max(1);
    let mut budget = max_nodes.max(2);
    let mut parts = Vec::new();
    for k in 0..trees {
        let share = if k + 1 == trees { budget } else { budget / 2 };
        budget -= share;
        let mut used = 1;
        let mut above = vec![rho];
        let body = hydra_body(
            rng,
            order,
            labels,
            leaves,
            share.max(2),
            &mut used,
            1,
            max_depth,
            &mut above,
        );
        parts.push(Term::node(rho, body));
    }
    Term::sum(parts)
}

#[allow(clippy::too_many_arguments)]
fn hydra_body<R: Rng>(
    rng: &mut R,
    order: &CombinedOrder,
    labels: &[Index],
    leaves: &[Leaf],
    max_nodes: usize,
    used: &mut usize,
    depth: usize,
    max_depth: usize,
    above: &mut Vec<Index>,
) -> Term {
    let kids = rng.gen_range(1..=2usize);
    let mut out = Vec::new();
    for _ in 0..kids {
        if *used >= max_nodes && !out.is_empty() {
            break;
        }
        *used += 1;
        let ok: Vec<Index> = labels
            .iter()
            .copied()
            .filter(|&i| above.iter().all(|&j| order.index.comparable(i, j)))
            .collect();
        let make_node = depth < max_depth && *used < max_nodes && !ok.is_empty() && rng.gen_bool(0.6);
        if make_node {
            let i = *ok.choose(rng).unwrap();
            above.push(i);
            let body = hydra_body(rng, order, labels, leaves, max_nodes, used, depth + 1, max_depth, above);
            above.pop();
            out.push(Term::node(i, body));
        } else {
            out.push(Term::leaf(*leaves.choose(rng).unwrap()));
        }
    }
    Term::sum(out)
}

/// A random one-hole context with at most `max_size` constructors around
/// the hole. With `order` given, every label on the path to the hole is
/// comparable with `inner` (the label plugged in underneath), so plugging a
/// term rooted at `inner` stays path comparable.
pub fn random_context<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    order: Option<&CombinedOrder>,
    inner: &[Index],
    max_size: usize,
) -> Term {
    let mut budget = rng.gen_range(0..=max_size);
    let mut path: Vec<Index> = Vec::new();
    let mut layers: Vec<(Index, Vec<Term>)> = Vec::new();
    while budget > 0 {
        let ok: Vec<Index> = alphabet
            .labels
            .iter()
            .copied()
            .filter(|&i| match order {
                None => true,
                Some(o) => path.iter().chain(inner.iter()).all(|&j| o.index.comparable(i, j)),
            })
            .collect();
        let Some(&i) = ok.choose(rng) else { break };
        budget -= 1;
        path.push(i);
        let mut siblings = Vec::new();
        if budget >= 1 && rng.gen_bool(0.5) {
            budget -= 1;
            let share = rng.gen_range(0..=budget.min(2));
            budget -= share;
            siblings.push(connected(rng, alphabet, order, share, &mut path.clone()));
        }
        layers.push((i, siblings));
    }
    let mut t = Term::hole();
    for (i, siblings) in layers.into_iter().rev() {
        let mut parts = siblings;
        parts.push(t);
        t = Term::node(i, Term::sum(parts));
    }
    if budget >= 1 && rng.gen_bool(0.3) {
        let mut above = Vec::new();
        t = Term::sum([t, connected(rng, alphabet, order, budget - 1, &mut above)]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{load_order_spec, presets};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_element() -> (CombinedOrder, Alphabet) {
        let o = load_order_spec(presets::TWO_ELEMENT).unwrap();
        let labels = o.index.elements().unwrap();
        let a = Alphabet::from_order(&o, labels);
        (o, a)
    }

    #[test]
    fn enumeration_counts_match_hand_counts() {
        let (_, a) = two_element();
        // size 0: rho. size 1: (0,rho), (1,rho), rho # rho.
        // size 2: (i,(j,rho)) x4, (i, rho # rho) x2, rho # (i,rho) x2, rho # rho # rho.
        assert_eq!(terms_of_size(&a, 0).len(), 1);
        assert_eq!(terms_of_size(&a, 1).len(), 3);
        assert_eq!(terms_of_size(&a, 2).len(), 9);
        let all = terms_up_to_size(&a, 3);
        let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len(), "enumeration produced duplicates");
        assert!(all.iter().all(|t| t.size() <= 3));
    }

    #[test]
    fn node_enumeration_counts() {
        let (_, a) = two_element();
        // 1 node: rho. 2: (i, rho) x2. 3: (i,(j,rho)) x4, (i, rho#rho) x2.
        let all = connected_up_to_nodes(&a, 3);
        assert_eq!(all.len(), 1 + 2 + 6);
        assert!(all.iter().all(|t| t.is_connected() && t.nodes() <= 3));
    }

    #[test]
    fn random_terms_respect_bounds_and_path_comparability() {
        let o = load_order_spec(presets::COUNTEREXAMPLE).unwrap();
        let a = Alphabet::from_order(&o, o.index.elements().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let t = random_term(&mut rng, &a, Some(&o), 8);
            assert!(t.size() <= 8);
            assert!(t.is_path_comparable(&o));
            let c = random_connected(&mut rng, &a, Some(&o), 8);
            assert!(c.is_connected() && c.is_path_comparable(&o));
        }
    }

    #[test]
    fn random_hydras_have_the_initial_shape() {
        let o = load_order_spec(presets::HYDRA).unwrap();
        let labels: Vec<Index> = ["0", "1", "2", "1'", "2'", "ω'"]
            .iter()
            .map(|s| o.index.lookup(s).unwrap())
            .collect();
        let leaves: Vec<Leaf> = o.leaf.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let h = random_hydra(&mut rng, &o, &labels, &leaves, 12, 4);
            assert!(h.nodes() <= 12, "{}", h.display(&o));
            assert!(h.depth() <= 4);
            assert!(h.is_path_comparable(&o));
            for c in h.components() {
                assert_eq!(c.as_node().unwrap().0, o.rho_index().unwrap());
            }
        }
    }

    #[test]
    fn random_contexts_have_one_hole() {
        let o = load_order_spec(presets::HYDRA).unwrap();
        let labels: Vec<Index> = ["0", "1", "2", "1'"]
            .iter()
            .map(|s| o.index.lookup(s).unwrap())
            .collect();
        let a = Alphabet::from_order(&o, labels.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = random_context(&mut rng, &a, Some(&o), &[labels[1]], 5);
            assert_eq!(u.holes(), 1);
            let plugged = u.plug(&Term::node(labels[1], Term::leaf(o.rho_leaf().unwrap())));
            assert!(plugged.is_path_comparable(&o), "{}", plugged.display(&o));
        }
    }
}
