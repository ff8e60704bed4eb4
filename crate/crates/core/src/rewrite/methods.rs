use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gen::{random_connected, random_context, Alphabet};
use crate::labels::{CombinedOrder, Index, Leaf};
use crate::ordering::{Comparator, Comparison, Level};
use crate::terms::Term;

use super::rules::RuleInstance;
use super::RewriteError;

/// Outcome of [`check_rule_decrease`].
#[derive(Clone, Debug)]
pub struct DecreaseReport {
    /// `rσ ⋘ lσ`.
    pub holds: bool,
    /// `rσ` against `lσ` at every deciding level.
    pub table: Vec<(Level, Comparison)>,
}

/// Checks `lσ ⋙ rσ` for a ground rule instance.
pub fn check_rule_decrease(cmp: &mut Comparator<'_>, inst: &RuleInstance) -> Result<DecreaseReport, RewriteError> {
    let order = cmp.order();
    if !inst.lhs.is_path_comparable(order) {
        return Err(RewriteError::NotInDomain);
    }
    if !inst.rhs.is_path_comparable(order) {
        return Err(RewriteError::NotPathComparable);
    }
    Ok(DecreaseReport {
        holds: cmp.lll(&inst.rhs, &inst.lhs),
        table: cmp.table(&inst.rhs, &inst.lhs),
    })
}

/// Sampling parameters for [`check_generic_method`].
#[derive(Clone, Debug)]
pub struct GenericOptions {
    pub trials: usize,
    /// Labels for the wrapping node `i` and the sampled contexts.
    pub labels: Vec<Index>,
    /// Constructors around the hole of a sampled context, at most.
    pub context_size: usize,
    /// Constructors in a sampled numeral, at most.
    pub numeral_size: usize,
}

/// Outcome of [`check_generic_method`].
#[derive(Clone, Debug, Default)]
pub struct GenericReport {
    /// Whether the precondition `r ⋘ l` held.
    pub applicable: bool,
    /// Samples that were compared.
    pub checked: usize,
    /// Samples discarded because an instance left the path comparable domain.
    pub skipped: usize,
    /// `((i, u[l])σ, (i, u[r])σ)` pairs that were not strictly descending.
    pub violations: Vec<(Term, Term)>,
}

/// A random numeral term: connected, built from `ρ` only.
pub fn random_numeral<R: Rng>(rng: &mut R, order: &CombinedOrder, max_size: usize) -> Term {
    let rho_i = order.rho_index().expect("numerals need rho");
    let rho = order.rho_leaf().expect("numerals need rho");
    random_connected(rng, &Alphabet::new(vec![rho_i], vec![rho]), None, max_size)
}

/// A random numeral substitution for every variable of `order`.
pub fn random_numeral_substitution<R: Rng>(rng: &mut R, order: &CombinedOrder, max_size: usize) -> HashMap<Leaf, Term> {
    order
        .leaf
        .variables()
        .map(|x| (x, random_numeral(rng, order, max_size)))
        .collect()
}

/// The generic method: given `l ⋙ r`, samples contexts `u`, labels `i` and
/// numeral substitutions `σ`, and checks `(i, u[l])σ ⋙ (i, u[r])σ`.
pub fn check_generic_method<R: Rng>(
    order: &CombinedOrder,
    l: &Term,
    r: &Term,
    opts: &GenericOptions,
    rng: &mut R,
) -> Result<GenericReport, RewriteError> {
    for t in [l, r] {
        if !t.is_connected() || t.is_leaf() {
            return Err(RewriteError::Parameter(
                "l and r must be connected and not leaves".into(),
            ));
        }
        if !t.is_path_comparable(order) {
            return Err(RewriteError::NotInDomain);
        }
    }
    if opts.labels.is_empty() {
        return Err(RewriteError::Parameter("no labels to sample from".into()));
    }
    let mut cmp = Comparator::new(order);
    let mut report = GenericReport {
        applicable: cmp.lll(r, l),
        ..GenericReport::default()
    };
    if !report.applicable {
        return Ok(report);
    }
    let alphabet = Alphabet::from_order(order, opts.labels.clone());
    let roots: Vec<Index> = [l, r].iter().filter_map(|t| t.as_node().map(|(i, _)| i)).collect();
    for _ in 0..opts.trials {
        let u = random_context(rng, &alphabet, Some(order), &roots, opts.context_size);
        if !u.is_connected() {
            report.skipped += 1;
            continue;
        }
        let i = *opts.labels.choose(rng).unwrap();
        let sigma = random_numeral_substitution(rng, order, opts.numeral_size);
        let big = Term::node(i, u.plug(l)).substitute(&sigma);
        let small = Term::node(i, u.plug(r)).substitute(&sigma);
        if !big.is_path_comparable(order) || !small.is_path_comparable(order) {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        if !cmp.lll(&small, &big) {
            report.violations.push((big, small));
        }
        cmp.clear();
    }
    Ok(report)
}

/// The full-substitution counterexample: `x # x ⋘ (ρ,ρ) # x`, yet with
/// `σ(x) = (ρ,ρ)` both sides become `(ρ,ρ) # (ρ,ρ)`.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub smaller: Term,
    pub larger: Term,
    /// `x # x ⋘ (ρ,ρ) # x`.
    pub before: bool,
    pub smaller_sigma: Term,
    pub larger_sigma: Term,
    /// `(x # x)σ ⋘ ((ρ,ρ) # x)σ`.
    pub after: bool,
}

/// Evaluates the full-substitution counterexample with the first variable
/// of `order`.
pub fn full_substitution_counterexample(order: &CombinedOrder) -> Result<CounterexampleReport, RewriteError> {
    let rho_i = order.rho_index().ok_or(RewriteError::NoRho)?;
    let rho = Term::leaf(order.rho_leaf().ok_or(RewriteError::NoRho)?);
    let x = order
        .leaf
        .variables()
        .next()
        .ok_or_else(|| RewriteError::Parameter("the order has no variable".into()))?;
    let xt = Term::leaf(x);
    let rho_rho = Term::node(rho_i, rho);
    let smaller = Term::sum([xt.clone(), xt.clone()]);
    let larger = Term::sum([rho_rho.clone(), xt]);
    let sigma: HashMap<Leaf, Term> = [(x, rho_rho)].into_iter().collect();
    let smaller_sigma = smaller.substitute(&sigma);
    let larger_sigma = larger.substitute(&sigma);
    let mut cmp = Comparator::new(order);
    Ok(CounterexampleReport {
        before: cmp.lll(&smaller, &larger),
        after: cmp.lll(&smaller_sigma, &larger_sigma),
        smaller,
        larger,
        smaller_sigma,
        larger_sigma,
    })
}
