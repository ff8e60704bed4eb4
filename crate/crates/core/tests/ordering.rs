mod common;

use std::collections::BTreeSet;

use gqod::gen::{random_term, terms_up_to_size, Alphabet};
use gqod::labels::{load_order_spec, presets, CombinedOrder, Index};
use gqod::ordering::{descending_chain_check, i_sections, indices, sid, Comparator, Level};
use gqod::terms::{parse, Term};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn two_element() -> CombinedOrder {
    load_order_spec(presets::TWO_ELEMENT).unwrap()
}

fn levels_of(o: &CombinedOrder) -> Vec<Level> {
    let mut v = vec![Level::Infinity];
    v.extend(o.index.elements().unwrap().into_iter().map(Level::At));
    v
}

#[test]
fn agrees_with_the_literal_definition_on_all_small_terms() {
    let o = two_element();
    let a = Alphabet::from_order(&o, o.index.elements().unwrap());
    let terms = terms_up_to_size(&a, 4);
    assert!(terms.len() > 100, "{}", terms.len());
    let mut cmp = Comparator::new(&o);
    for x in &terms {
        for y in &terms {
            for &l in &levels_of(&o) {
                assert_eq!(
                    cmp.leq(l, x, y),
                    common::leq(&o, l, x, y),
                    "{} <= {} at {}",
                    x.display(&o),
                    y.display(&o),
                    l.name(&o)
                );
            }
        }
    }
}

#[test]
fn agrees_with_the_literal_definition_on_random_forests_with_leaves() {
    // A nontrivial leaf order exercises every branch of the forest clause.
    let o = load_order_spec(presets::TWO_CHAIN).unwrap();
    let labels: Vec<Index> = ["0", "1", "2", "1'", "ω'"]
        .iter()
        .map(|s| o.index.lookup(s).unwrap())
        .collect();
    let a = Alphabet::from_order(&o, labels.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cmp = Comparator::new(&o);
    let mut levels: Vec<Level> = labels.iter().map(|&i| Level::At(i)).collect();
    levels.push(Level::Infinity);
    for _ in 0..1500 {
        let x = random_term(&mut rng, &a, None, 5);
        let y = random_term(&mut rng, &a, None, 5);
        for &l in &levels {
            assert_eq!(
                cmp.leq(l, &x, &y),
                common::leq(&o, l, &x, &y),
                "{} <= {} at {}",
                x.display(&o),
                y.display(&o),
                l.name(&o)
            );
        }
    }
}

#[test]
fn sections_agree_with_the_literal_relation() {
    let o = load_order_spec("[I]\n0 < 1 < 2\nrho = 0\n").unwrap();
    let a = Alphabet::from_order(&o, o.index.elements().unwrap());
    for t in terms_up_to_size(&a, 3) {
        for i in o.index.elements().unwrap() {
            let want: BTreeSet<Term> = common::sections(&o, &t, i).into_iter().collect();
            let got: BTreeSet<Term> = i_sections(&o, &t, i).into_iter().collect();
            assert_eq!(got, want, "{}", t.display(&o));
            assert_eq!(indices(&o, &t).contains(&i), !want.is_empty());
        }
    }
}

#[test]
fn sid_agrees_with_an_index_based_recomputation() {
    let o = load_order_spec(presets::TWO_CHAIN).unwrap();
    let labels: Vec<Index> = ["0", "1", "2", "1'", "2'", "ω'"]
        .iter()
        .map(|s| o.index.lookup(s).unwrap())
        .collect();
    let a = Alphabet::from_order(&o, labels.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let x = random_term(&mut rng, &a, None, 6);
        let y = random_term(&mut rng, &a, None, 6);
        for &i in &labels {
            assert_eq!(sid(&o, i, &[&x, &y]), common::sid(&o, i, &x, &y));
        }
    }
}

#[test]
fn example_section_through_dominating_labels() {
    let o = load_order_spec(presets::TWO_CHAIN).unwrap();
    let alpha = parse(&o, "(1, 0'') # 1''").unwrap();
    let beta = parse(&o, "(5, 0'' # (ω', (3, (2, (1, 0'') # 1'') # 0'') # 2'') # (4, 0''))").unwrap();
    let two = o.index.lookup("2").unwrap();
    assert!(i_sections(&o, &beta, two).contains(&alpha));
    let idx = indices(&o, &beta);
    for s in ["2", "3", "5"] {
        assert!(idx.contains(&o.index.lookup(s).unwrap()), "{s}");
    }
    // ω' sits below the root 5, and 5 is not >= ω', so it has no sections.
    assert!(!idx.contains(&o.index.lookup("ω'").unwrap()));
    assert!(i_sections(&o, &parse(&o, "0''").unwrap(), two).is_empty());
}

#[test]
fn sid_examples() {
    let o = two_element();
    let zero = o.index.lookup("0").unwrap();
    let one = o.index.lookup("1").unwrap();
    assert!(sid(&o, zero, &[&parse(&o, "rho").unwrap()]).is_empty());
    assert_eq!(sid(&o, zero, &[&parse(&o, "(1, rho)").unwrap()]), [one].into());
}

#[test]
fn leaf_clause_and_reflexivity() {
    let o = load_order_spec(presets::TWO_CHAIN).unwrap();
    let mut cmp = Comparator::new(&o);
    let p = |s| parse(&o, s).unwrap();
    for l in [Level::Infinity, Level::At(o.index.lookup("2").unwrap())] {
        assert!(cmp.leq(l, &p("0''"), &p("1''")));
        assert!(!cmp.leq(l, &p("1''"), &p("0''")));
        let c = cmp.compare(l, &p("2''"), &p("2'''"));
        assert!(c.equivalent());
    }
    let t = p("(0, 0'' # 0'') # (2', (2',1''') # (1',1'')) # (1, 0'' # (1, 2'' # 0''))");
    for l in cmp.levels(&t, &t) {
        assert!(cmp.compare(l, &t, &t).equivalent());
    }
    assert!(!cmp.lll(&t, &t));
    assert!(cmp.lll_eq(&t, &t));
}

#[test]
fn incomparable_roots_are_incomparable_at_infinity() {
    let o = load_order_spec(presets::HYDRA).unwrap();
    let mut cmp = Comparator::new(&o);
    let a = parse(&o, "(1, 0)").unwrap();
    let b = parse(&o, "(1', 0)").unwrap();
    let c = cmp.compare(Level::Infinity, &a, &b);
    assert!(!c.leq && !c.geq);
}

#[test]
fn the_substitution_counterexample() {
    let o = load_order_spec(presets::HYDRA).unwrap();
    let mut cmp = Comparator::new(&o);
    let p = |s| parse(&o, s).unwrap();
    assert!(cmp.lll(&p("x # x"), &p("(rho, rho) # x")));
    let l = p("(rho, rho) # (rho, rho)");
    assert!(!cmp.lll(&l, &l));
}

#[test]
fn the_non_wqo_sequence() {
    let o = load_order_spec(presets::COUNTEREXAMPLE).unwrap();
    let mut cmp = Comparator::new(&o);
    let seq: Vec<Term> = [
        "(a1, (b2, 0))",
        "(a1, (a2, (b1, 0)))",
        "(a1, (a2, (a1, (b2, 0))))",
        "(a1, (a2, (a1, (a2, (b1, 0)))))",
    ]
    .iter()
    .map(|s| parse(&o, s).unwrap())
    .collect();
    let r = descending_chain_check(&mut cmp, &seq);
    assert!(r.strictly_descending(), "{r:?}");
    assert!(r.is_bad(), "{r:?}");
    let same = descending_chain_check(&mut cmp, &[seq[0].clone(), seq[0].clone()]);
    assert_eq!(same.descending, vec![false]);
    assert_eq!(same.good_pairs, vec![(0, 1)]);
}

#[test]
fn the_induction_measure_decreases_at_every_call() {
    let o = load_order_spec(presets::TWO_CHAIN).unwrap();
    let labels: Vec<Index> = ["0", "1", "2", "1'", "2'", "ω'"]
        .iter()
        .map(|s| o.index.lookup(s).unwrap())
        .collect();
    let a = Alphabet::from_order(&o, labels);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = Comparator::with_measure_check(&o);
    let mut plain = Comparator::new(&o);
    for _ in 0..200 {
        let x = random_term(&mut rng, &a, Some(&o), 5);
        let y = random_term(&mut rng, &a, Some(&o), 5);
        for l in plain.levels(&x, &y) {
            assert_eq!(checked.leq(l, &x, &y), plain.leq(l, &x, &y));
        }
    }
    let log = checked.measure_log().unwrap();
    assert!(log.calls > 1000);
    assert_eq!(log.violations, 0);
}
