use std::sync::Arc;

use proptest::prelude::*;

use choice_structures::act::{pullback, Act};
use choice_structures::choice::{gamma_map, nonempty_menus, relabel, ChoiceFn, Menu};
use choice_structures::criteria::{
    eu_choice, maxmin_choice, regret_choice, CredalSet, Criterion, UtilityView,
};
use choice_structures::game::{default_families, example_game, justifiable, rationalize, BeliefFamily};
use choice_structures::hierarchy::{hierarchy_map, refine_partition};
use choice_structures::laws;
use choice_structures::pref::{enumerate_posets, Poset};
use choice_structures::rational::{rat, Rat};
use choice_structures::search::SearchBounds;
use choice_structures::space::{product, FinSpace, MeasurableMap};
use choice_structures::structure::{
    check_morphism, example_structure, example_structure_with_duplicate, Player, StructureMorphism,
};

fn rational() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn criteria_satisfy_contraction_and_singletons(
        utils in prop::collection::vec(rational(), 3),
        tables in prop::collection::vec(prop::collection::vec(0usize..3, 2), 1..=4),
        lo in 0i64..=4,
        width in 1i64..=4,
    ) {
        let space = Arc::new(FinSpace::discrete(["a", "b"]).unwrap());
        let u = UtilityView::new(0, utils);
        let hi = (lo + width).min(8);
        let belief = CredalSet::interval(space.clone(), rat(lo.min(7), 8), rat(hi, 8)).unwrap();
        let menu: Menu<Act> = tables.into_iter().map(|t| Act::new(space.clone(), t).unwrap()).collect();
        for c in [maxmin_choice(&belief, &u), regret_choice(&belief, &u)] {
            let chosen = c.evaluate(&menu).unwrap();
            prop_assert!(chosen.is_subset(&menu));
            prop_assert!(!chosen.is_empty());
            for f in menu.iter() {
                prop_assert_eq!(c.evaluate(&Menu::singleton(f.clone())).unwrap(), Menu::singleton(f.clone()));
            }
        }
    }

    #[test]
    fn regret_is_expected_utility_under_one_prior(seed in any::<u64>()) {
        let rep = laws::eu_equals_regret_on_points(20, seed).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn maxmin_minimum_is_at_a_vertex(seed in any::<u64>()) {
        let rep = laws::maxmin_grid(10, seed).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn functor_laws_hold_for_any_seed(seed in any::<u64>()) {
        for rep in laws::functor_laws(5, seed).unwrap() {
            prop_assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
        }
    }

    #[test]
    fn lifting_factorization_and_colimits_hold_for_any_seed(seed in any::<u64>()) {
        for rep in [
            laws::lift_round_trips(5, seed).unwrap(),
            laws::factorization(5, seed).unwrap(),
            laws::colimit_choices(5, seed).unwrap(),
            laws::naturality(3, seed).unwrap(),
        ] {
            prop_assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
        }
    }

    #[test]
    fn maximization_never_empties_a_menu(n in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let posets = enumerate_posets(n);
        let m = posets[pick.index(posets.len())].clone();
        let items: Vec<usize> = (0..n).collect();
        let p = Poset::from_matrix(items.clone(), m).unwrap();
        for k in nonempty_menus(&items) {
            prop_assert!(!p.maximize(&k).unwrap().is_empty());
        }
    }

    #[test]
    fn relabel_along_identity_is_identity(n in 1usize..=4, bits in any::<u64>()) {
        let items: Vec<usize> = (0..n).collect();
        let table = nonempty_menus(&items)
            .into_iter()
            .enumerate()
            .map(|(i, k)| {
                let c = k.filter(|x| (bits >> ((i + x) % 64)) & 1 == 1);
                let c = if c.is_empty() || k.len() == 1 { k.clone() } else { c };
                (k, c)
            })
            .collect();
        let c = ChoiceFn::extensional(table).unwrap();
        let same = relabel(&c, |x: &usize| *x);
        for k in nonempty_menus(&items) {
            prop_assert_eq!(c.evaluate(&k).unwrap(), same.evaluate(&k).unwrap());
        }
    }

    #[test]
    fn enlarging_the_family_keeps_justified_actions(
        action in 0usize..4,
        grid in 2usize..=6,
        survivors in prop::sample::subsequence(vec![0usize, 1], 1..=2),
    ) {
        let g = example_game(Criterion::Regret);
        let small = vec![BeliefFamily::GridPoints(grid)];
        let mut large = small.clone();
        large.push(BeliefFamily::FullSimplex);
        large.push(BeliefFamily::GridIntervals(grid));
        let a = justifiable(&g, Player::I, action, &survivors, &small).unwrap();
        let b = justifiable(&g, Player::I, action, &survivors, &large).unwrap();
        prop_assert!(a.is_none() || b.is_some());
    }
}

#[test]
fn eu_needs_a_single_prior() {
    let space = Arc::new(FinSpace::discrete(["a", "b"]).unwrap());
    let u = UtilityView::new(0, vec![rat(1, 1)]);
    assert!(eu_choice(&CredalSet::simplex(space), &u).is_err());
}

#[test]
fn rationalization_shrinks_and_witnesses_reverify() {
    for c in [Criterion::ExpectedUtility, Criterion::Maxmin, Criterion::Regret] {
        let g = example_game(c);
        let r = rationalize(&g).unwrap();
        let total = g.frame().actions(Player::I).len() + g.frame().actions(Player::J).len();
        assert!(r.trace.len() <= total);
        let mut alive = [
            (0..g.frame().actions(Player::I).len()).collect::<Vec<_>>(),
            (0..g.frame().actions(Player::J).len()).collect::<Vec<_>>(),
        ];
        for round in &r.trace {
            let start = alive.clone();
            for p in Player::BOTH {
                let opp = start[p.opponent().index()].clone();
                for (a, w) in &round.witnesses[p.index()] {
                    let acts: Vec<Act> = (0..g.frame().actions(p).len())
                        .map(|b| {
                            let table = opp.iter().map(|&s| g.frame().outcome_for(p, b, s)).collect();
                            Act::new(w.space().clone(), table).unwrap()
                        })
                        .collect();
                    let menu: Menu<Act> = acts.iter().cloned().collect();
                    let u = g.frame().utility(p).unwrap();
                    let chosen = choice_structures::criteria::criterion_choice(c, w, &u)
                        .unwrap()
                        .evaluate(&menu)
                        .unwrap();
                    assert!(chosen.contains(&acts[*a]), "{c}: witness fails for {a}");
                }
                let next: Vec<usize> = round.witnesses[p.index()].iter().map(|(a, _)| *a).collect();
                assert!(next.iter().all(|a| alive[p.index()].contains(a)));
                alive[p.index()] = next;
            }
        }
        assert_eq!(alive, r.survivors);
        assert_eq!(default_families(c, 8), g.criterion(Player::I).families);
    }
}

#[test]
fn refinement_is_monotone_and_separators_separate() {
    for x in [example_structure(), example_structure_with_duplicate()] {
        let b = refine_partition(&x, &SearchBounds::default()).unwrap();
        let bound = x.types(Player::I).len() + x.types(Player::J).len();
        assert!(b.rounds() <= bound);
        for w in b.history.windows(2) {
            for p in Player::BOTH {
                assert!(w[1][p.index()].refines(&w[0][p.index()]));
            }
        }
        for s in &b.separators {
            let theta = x.theta(s.player);
            let pulled_choice: Menu<Act> = theta[s.inside].evaluate(&s.pulled_menu).unwrap();
            let other = theta[s.outside].evaluate(&s.pulled_menu).unwrap();
            assert!(!other.is_subset(&pulled_choice));
            assert_eq!(pulled_choice.len(), s.choice.len());
        }
    }
}

#[test]
fn merged_types_are_never_separated() {
    let src = example_structure_with_duplicate();
    let dst = example_structure();
    let m = StructureMorphism::new(
        MeasurableMap::identity(src.types(Player::I).clone()),
        MeasurableMap::new(
            src.types(Player::J).clone(),
            dst.types(Player::J).clone(),
            vec![0, 0, 1],
        )
        .unwrap(),
    );
    assert!(check_morphism(&src, &dst, &m, &SearchBounds::default())
        .unwrap()
        .is_none());
    let b = refine_partition(&src, &SearchBounds::default()).unwrap();
    for p in Player::BOTH {
        let blocks = b.blocks(p);
        for s in 0..src.types(p).len() {
            for t in 0..src.types(p).len() {
                if m.alpha(p).apply(s) == m.alpha(p).apply(t) {
                    assert_eq!(blocks.block_of(s), blocks.block_of(t));
                }
            }
        }
    }
}

#[test]
fn collapsing_commutes_with_the_hierarchy() {
    let src = example_structure_with_duplicate();
    let dst = example_structure();
    let alpha_j = [0usize, 0, 1];
    let bounds = SearchBounds::default();
    let (hs, hd) = (
        hierarchy_map(&src, 3, &bounds).unwrap(),
        hierarchy_map(&dst, 3, &bounds).unwrap(),
    );
    for p in Player::BOTH {
        let alpha = |t: usize| if p == Player::J { alpha_j[t] } else { t };
        for n in 1..=3 {
            let (ls, ld) = (hs.level(p, n), hd.level(p, n));
            // Match opponent blocks of the two bases through the collapse.
            let table: Vec<usize> = match (&ls.opponent_blocks, &ld.opponent_blocks) {
                (None, None) => (0..ls.base_space.len()).collect(),
                (Some(bs), Some(bd)) => {
                    let (ns, nd) = (bs.blocks().len(), bd.blocks().len());
                    let opp_alpha = |t: usize| if p == Player::I { alpha_j[t] } else { t };
                    (0..ls.base_space.len())
                        .map(|k| (k / ns) * nd + bd.block_of(opp_alpha(bs.blocks()[k % ns][0])))
                        .collect()
                }
                _ => unreachable!("levels agree"),
            };
            let map = MeasurableMap::new(ls.base_space.clone(), ld.base_space.clone(), table).unwrap();
            let universe = hd.universe(p, n);
            for t in 0..src.types(p).len() {
                let pushed = gamma_map(hs.upsilon(p, n, t), &map);
                for k in &universe.menus {
                    assert_eq!(
                        pushed.evaluate(k).unwrap(),
                        hd.upsilon(p, n, alpha(t)).evaluate(k).unwrap(),
                        "{p} level {n} type {t}"
                    );
                }
            }
        }
    }
}

#[test]
fn product_projections_are_measurable() {
    let x = Arc::new(
        FinSpace::new(
            vec!["x".into(), "y".into(), "z".into()],
            &[vec!["x", "y"], vec!["z"]],
        )
        .unwrap(),
    );
    let y = Arc::new(FinSpace::discrete(["0", "1"]).unwrap());
    let p = product(&x, &y);
    assert_eq!(p.space.atoms().len(), 4);
    let f = Act::new(x.clone(), vec![1, 1, 0]).unwrap();
    let pulled = pullback(&f, &p.first).unwrap();
    assert_eq!(pulled.table(), &[1, 1, 1, 1, 0, 0]);
}
