mod common;

use std::collections::BTreeMap;

use coalition_forge_core::analysis::{
    classify_stochastic, compare_domains, equilibrium_partitions, is_complete_cooperation, lift_profile,
    stability_k_star, total_probability,
};
use coalition_forge_core::catalog::{self, build_lunch, build_pd_extended, build_pd_standard};
use coalition_forge_core::game::{embed, CoalitionGame, MechanismRule, Strategy, StrategyProfile};
use coalition_forge_core::partition::{Coalition, CoalitionStructure};
use coalition_forge_core::solver::{
    evaluate_profile, pure_nash_enumerate, EquilibriumResult, Method, MixedProfile, SolverConfig,
};
use coalition_forge_core::{int, ratio, Error, Rational};
use num_traits::{One, Zero};

fn point(game: &CoalitionGame, choices: &[usize]) -> EquilibriumResult<Rational> {
    let p = MixedProfile::pure(game.space().sizes(), &StrategyProfile::new(choices.to_vec())).unwrap();
    evaluate_profile(game, p, Method::PureEnum).unwrap()
}

fn pair() -> Coalition {
    Coalition::new([0, 1]).unwrap()
}

#[test]
fn together_cell_forms_the_pair() {
    let g = build_pd_extended();
    let r = point(&g, &[3, 3]);
    let set = equilibrium_partitions(&g, &r).unwrap();
    assert_eq!(set.entries(), &[(CoalitionStructure::grand(2), Rational::one())]);
}

#[test]
fn mixed_types_randomization_keeps_players_apart() {
    let g = catalog::build("pd-mixed", &[]).unwrap().game;
    let r = evaluate_profile(&g, catalog::pd_mixed_profile(), Method::SupportEnum).unwrap();
    assert!(r.is_equilibrium);
    let set = equilibrium_partitions(&g, &r).unwrap();
    assert_eq!(set.entries(), &[(CoalitionStructure::singletons(2), Rational::one())]);
    assert!(!classify_stochastic(&g, &r).unwrap());
}

/// Independent unanimity oracle for four players: a pair or larger group forms iff all members list it.
fn agreed(desires: &[&CoalitionStructure]) -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    let mut placed = [false; 4];
    for p in 0..4 {
        if placed[p] {
            continue;
        }
        let wanted: Vec<usize> = desires[p].block_of(p).members().collect();
        let ok =
            wanted.len() > 1 && wanted.iter().all(|&m| desires[m].block_of(m).members().eq(wanted.iter().copied()));
        let block = if ok { wanted } else { vec![p] };
        for &m in &block {
            placed[m] = true;
        }
        blocks.push(block);
    }
    blocks
}

#[test]
fn lunch_pairing_profile_is_stochastic() {
    let g = build_lunch();
    let profile = catalog::lunch_pairing_profile(&g).unwrap();
    let r = evaluate_profile(&g, profile.clone(), Method::Iterative).unwrap();
    assert!(r.is_equilibrium);
    let set = equilibrium_partitions(&g, &r).unwrap();
    assert_eq!(total_probability(&set), Rational::one());

    let supports: Vec<Vec<usize>> = (0..4).map(|p| profile.support(p)).collect();
    let mut oracle: BTreeMap<Vec<Vec<usize>>, Rational> = BTreeMap::new();
    for &a in &supports[0] {
        for &b in &supports[1] {
            for &c in &supports[2] {
                for &d in &supports[3] {
                    let desires: Vec<&CoalitionStructure> =
                        [a, b, c, d].iter().enumerate().map(|(p, &s)| g.strategies(p)[s].desired()).collect();
                    *oracle.entry(agreed(&desires)).or_insert_with(Rational::zero) += ratio(1, 81);
                }
            }
        }
    }
    assert_eq!(set.len(), oracle.len());
    for (blocks, prob) in &oracle {
        let s = CoalitionStructure::from_blocks(4, blocks).unwrap();
        assert_eq!(&set.probability(&s), prob, "{s}");
    }
    // The pairings of A with each colleague are all present.
    for mate in 1..4 {
        let mut blocks = vec![vec![0, mate]];
        blocks.extend((1..4).filter(|&q| q != mate).map(|q| vec![q]));
        let s = CoalitionStructure::from_blocks(4, &blocks).unwrap();
        assert!(set.probability(&s) > Rational::zero());
    }
    assert!(classify_stochastic(&g, &r).unwrap());
}

#[test]
fn cooperation_reports() {
    let ext = catalog::build("pd-extroverts", &[]).unwrap().game;
    let rep = is_complete_cooperation(&ext, &point(&ext, &[3, 3]), &pair()).unwrap();
    assert!(rep.ex_ante && rep.ex_post && rep.complete);

    let std_pd = build_pd_standard();
    let rep = is_complete_cooperation(&std_pd, &point(&std_pd, &[1, 1]), &pair()).unwrap();
    assert!(!rep.complete && !rep.ex_ante && !rep.ex_post);

    let g = build_pd_extended();
    let rep = is_complete_cooperation(&g, &point(&g, &[1, 3]), &pair()).unwrap();
    assert_eq!((rep.ex_ante, rep.ex_post, rep.complete), (false, false, false));
}

#[test]
fn cooperation_is_monotone_over_catalog_equilibria() {
    for (id, g) in common::catalog_games() {
        if g.n_players() != 2 {
            continue;
        }
        for r in pure_nash_enumerate(&g) {
            let rep = is_complete_cooperation(&g, &r, &pair()).unwrap();
            assert_eq!(rep.complete, rep.ex_ante && rep.ex_post);
            if rep.complete {
                assert!(rep.ex_post);
            }
            if rep.ex_post {
                assert!(g.max_coalition() >= 2, "{id}");
            }
            assert!(!classify_stochastic(&g, &r).unwrap(), "{id}: point masses form one structure");
        }
    }
}

#[test]
fn lunch_family_is_stable_up_to_four() {
    let family = catalog::family("lunch", &[]).unwrap();
    let base = &family[1];
    let profile = catalog::lunch_pairing_profile(base).unwrap();
    let r = evaluate_profile(base, profile, Method::SupportEnum).unwrap();
    let report = stability_k_star(&family, 2, &r, &SolverConfig::default()).unwrap();
    assert_eq!(report.k_star, 4);
    assert_eq!(report.checks.iter().map(|c| c.k).collect::<Vec<_>>(), vec![2, 3, 4]);
    assert!(report.checks.iter().all(|c| c.passed()));
}

#[test]
fn dilemma_family_is_stable_at_two() {
    let family = catalog::family("pd", &[]).unwrap();
    let r = point(&family[0], &[1, 1]);
    let report = stability_k_star(&family, 1, &r, &SolverConfig::default()).unwrap();
    assert_eq!(report.k_star, 2);
    assert!(report.checks.iter().all(|c| c.dominating.is_empty()));
}

#[test]
fn stag_hare_reports_the_dominating_hunt() {
    let family = catalog::family("stag-hare", &[]).unwrap();
    let r = point(&family[0], &[0, 0]);
    let report = stability_k_star(&family, 1, &r, &SolverConfig::default()).unwrap();
    assert_eq!(report.k_star, 2);
    let at_two = &report.checks[1];
    assert!(at_two.payoff_ok && at_two.domain_ok);
    assert_eq!(at_two.expected_payoffs, vec![int(8), int(8)]);
    let big = at_two.dominating.iter().find(|d| d.expected_payoffs == vec![int(100), int(100)]);
    let big = big.expect("the joint stag hunt is reported");
    assert_eq!(big.profile.as_pure(), Some(StrategyProfile::new(vec![3, 3])));
}

#[test]
fn scan_stops_at_the_first_failure() {
    // Asking to be together pays 1 whatever forms, so the lifted profile fails at K = 2.
    let alone = Strategy::labelled(CoalitionStructure::singletons(2), "x");
    let together = Strategy::labelled(CoalitionStructure::grand(2), "x");
    let set = vec![alone, together];
    let top = CoalitionGame::from_fn(2, vec![set.clone(), set], MechanismRule::Unanimity, |s, _| {
        s.iter().map(|st| if st.desired().is_singletons() { int(0) } else { int(1) }).collect()
    })
    .unwrap();
    let family = vec![top.restrict(1).unwrap(), top];
    let r = point(&family[0], &[0, 0]);
    let report = stability_k_star(&family, 1, &r, &SolverConfig::default()).unwrap();
    assert_eq!(report.k_star, 1);
    assert_eq!(report.checks.len(), 2);
    assert!(report.checks[0].passed());
    assert!(!report.checks[1].payoff_ok);
    assert_eq!(report.checks[1].max_regret, int(1));
}

#[test]
fn non_nested_families_are_rejected() {
    let a = build_pd_standard();
    let b = catalog::build("pd-introverts", &[]).unwrap().game;
    let r = point(&a, &[1, 1]);
    assert!(matches!(stability_k_star(&[a, b], 1, &r, &SolverConfig::default()), Err(Error::NotNested(_))));
}

#[test]
fn domains_compare_under_lifting() {
    let small = build_pd_standard();
    let large = build_pd_extended();
    let u = MixedProfile::<Rational>::uniform(small.space().sizes());
    assert!(compare_domains(&small, &u, &small, &u).unwrap());
    let e = embed(&small, &large).unwrap();
    let lifted = lift_profile(&e, &u, &large).unwrap();
    assert!(compare_domains(&small, &u, &large, &lifted).unwrap());
    let pm = MixedProfile::pure(small.space().sizes(), &StrategyProfile::new(vec![0, 0])).unwrap();
    assert!(!compare_domains(&small, &u, &small, &pm).unwrap());
}
