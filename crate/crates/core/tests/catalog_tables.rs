//! Cell-by-cell payoff tables of the catalog games, typed in by hand.

use coalition_forge_core::catalog::{self, build_bos, build_pd_extroverts, build_pd_introverts, build_pd_mixed_types};
use coalition_forge_core::game::{embed, CoalitionGame, StrategyProfile};
use coalition_forge_core::partition::CoalitionStructure;
use coalition_forge_core::{int, ratio, Rational};

type Cell = (Rational, Rational, bool);

fn z(v: i64) -> Rational {
    int(v)
}

/// Compares a 2-player game with a row-major table of (payoff 1, payoff 2, pair formed).
fn assert_table(game: &CoalitionGame, expected: &[Vec<Cell>]) {
    assert_eq!(game.space().sizes(), &[expected.len(), expected[0].len()]);
    for (i, row) in expected.iter().enumerate() {
        for (j, (a, b, together)) in row.iter().enumerate() {
            let profile = StrategyProfile::new(vec![i, j]);
            assert_eq!(game.payoff(&profile).unwrap(), &[a.clone(), b.clone()], "cell ({i},{j})");
            let realized = game.realized_partition(&profile).unwrap();
            let want = if *together { CoalitionStructure::grand(2) } else { CoalitionStructure::singletons(2) };
            assert_eq!(realized, &want, "partition of cell ({i},{j})");
        }
    }
}

fn c(a: Rational, b: Rational, together: bool) -> Cell {
    (a, b, together)
}

fn pd_extended_table() -> Vec<Vec<Cell>> {
    vec![
        vec![c(z(0), z(0), false), c(z(-5), z(3), false), c(z(0), z(0), false), c(z(-5), z(3), false)],
        vec![c(z(3), z(-5), false), c(z(-2), z(-2), false), c(z(3), z(-5), false), c(z(-2), z(-2), false)],
        vec![c(z(0), z(0), false), c(z(-5), z(3), false), c(z(0), z(0), true), c(z(-5), z(3), true)],
        vec![c(z(3), z(-5), false), c(z(-2), z(-2), false), c(z(3), z(-5), true), c(z(-2), z(-2), true)],
    ]
}

#[test]
fn standard_dilemma() {
    let g = catalog::build_pd_standard();
    assert_eq!(g.max_coalition(), 1);
    assert_table(
        &g,
        &[vec![c(z(0), z(0), false), c(z(-5), z(3), false)], vec![c(z(3), z(-5), false), c(z(-2), z(-2), false)]],
    );
}

#[test]
fn extended_dilemma() {
    let g = catalog::build_pd_extended();
    assert_table(&g, &pd_extended_table());
    let d = g.validate_domains().unwrap();
    assert_eq!(d.domain(&CoalitionStructure::grand(2)).len(), 4);
    assert_eq!(d.domain(&CoalitionStructure::singletons(2)).len(), 12);
}

fn extroverts_table(e: &Rational) -> Vec<Vec<Cell>> {
    let p = |v: i64| z(v) + e;
    vec![
        vec![c(z(0), z(0), false), c(z(-5), z(3), false), c(z(0), z(0), false), c(z(-5), z(3), false)],
        vec![c(z(3), z(-5), false), c(z(-2), z(-2), false), c(z(3), z(-5), false), c(z(-2), z(-2), false)],
        vec![c(z(0), z(0), false), c(z(-5), z(3), false), c(p(0), p(0), true), c(p(-5), p(3), true)],
        vec![c(z(3), z(-5), false), c(z(-2), z(-2), false), c(p(3), p(-5), true), c(p(-2), p(-2), true)],
    ]
}

fn introverts_table(d: &Rational) -> Vec<Vec<Cell>> {
    let p = |v: i64| z(v) + d;
    vec![
        vec![c(p(0), p(0), false), c(p(-5), p(3), false), c(z(0), z(0), false), c(z(-5), z(3), false)],
        vec![c(p(3), p(-5), false), c(p(-2), p(-2), false), c(z(3), z(-5), false), c(z(-2), z(-2), false)],
        vec![c(z(0), z(0), false), c(z(-5), z(3), false), c(z(0), z(0), true), c(z(-5), z(3), true)],
        vec![c(z(3), z(-5), false), c(z(-2), z(-2), false), c(z(3), z(-5), true), c(z(-2), z(-2), true)],
    ]
}

/// Player 1 gains `e` in the pair, player 2 gains `d` apart. The cell printed as
/// "(0;0-5+δ)" is read as (0; δ) and the cell printed as "(-5+ε;)" as (-5+ε; 3).
fn mixed_types_table(e: &Rational, d: &Rational) -> Vec<Vec<Cell>> {
    let pe = |v: i64| z(v) + e;
    let pd = |v: i64| z(v) + d;
    vec![
        vec![c(z(0), pd(0), false), c(z(-5), pd(3), false), c(z(0), pd(0), false), c(z(-5), pd(3), false)],
        vec![c(z(3), pd(-5), false), c(z(-2), pd(-2), false), c(z(3), pd(-5), false), c(z(-2), pd(-2), false)],
        vec![c(z(0), pd(0), false), c(z(-5), pd(3), false), c(pe(0), z(0), true), c(pe(-5), z(3), true)],
        vec![c(z(3), pd(-5), false), c(z(-2), pd(-2), false), c(pe(3), z(-5), true), c(pe(-2), z(-2), true)],
    ]
}

fn bos_table(e: &Rational) -> Vec<Vec<Cell>> {
    let p = |v: i64| z(v) + e;
    vec![
        vec![c(z(2), z(1), false), c(z(0), z(0), false), c(z(2), z(1), false), c(z(0), z(0), false)],
        vec![c(z(0), z(0), false), c(z(1), z(2), false), c(z(0), z(0), false), c(z(1), z(2), false)],
        vec![c(z(2), z(1), false), c(z(0), z(0), false), c(p(2), p(1), true), c(e.clone(), e.clone(), true)],
        vec![c(z(0), z(0), false), c(z(1), z(2), false), c(e.clone(), e.clone(), true), c(p(1), p(2), true)],
    ]
}

#[test]
fn parameterized_dilemmas_at_two_values() {
    for e in [ratio(1, 10), int(1)] {
        assert_table(&build_pd_extroverts(e.clone()).unwrap(), &extroverts_table(&e));
        assert_table(&build_pd_introverts(e.clone()).unwrap(), &introverts_table(&e));
        for d in [ratio(1, 10), int(1)] {
            assert_table(&build_pd_mixed_types(e.clone(), d.clone()).unwrap(), &mixed_types_table(&e, &d));
        }
    }
}

#[test]
fn battle_of_the_sexes_at_three_values() {
    for e in [int(0), ratio(1, 10), int(1)] {
        assert_table(&build_bos(e.clone()).unwrap(), &bos_table(&e));
    }
}

#[test]
fn stag_and_hare() {
    let g = catalog::build_stag_hare();
    assert_table(
        &g,
        &[
            vec![c(z(8), z(8), false), c(z(8), z(0), false), c(z(8), z(8), false), c(z(8), z(0), false)],
            vec![c(z(0), z(8), false), c(z(0), z(0), false), c(z(0), z(8), false), c(z(0), z(0), false)],
            vec![c(z(8), z(8), false), c(z(8), z(0), false), c(z(4), z(4), true), c(z(8), z(0), true)],
            vec![c(z(0), z(8), false), c(z(0), z(0), false), c(z(0), z(8), true), c(z(100), z(100), true)],
        ],
    );
    let alone = g.restrict(1).unwrap();
    assert_table(
        &alone,
        &[vec![c(z(8), z(8), false), c(z(8), z(0), false)], vec![c(z(0), z(8), false), c(z(0), z(0), false)]],
    );
}

#[test]
fn lunch_rows() {
    let g = catalog::build_lunch();
    let s = |blocks: &[&[usize]]| {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        CoalitionStructure::from_blocks(4, &blocks).unwrap()
    };
    let rows: Vec<(CoalitionStructure, [i64; 4])> = vec![
        (s(&[&[0, 1], &[2], &[3]]), [10, 10, 3, 3]),
        (s(&[&[0, 2], &[1], &[3]]), [10, 3, 10, 3]),
        (s(&[&[0, 3], &[2], &[1]]), [10, 3, 3, 10]),
        (s(&[&[0], &[1], &[2, 3]]), [3, 3, 10, 10]),
        (s(&[&[0], &[3], &[1, 2]]), [3, 10, 10, 3]),
        (s(&[&[0], &[2], &[1, 3]]), [3, 10, 3, 10]),
        (s(&[&[0], &[1], &[2], &[3]]), [3, 3, 3, 3]),
        (s(&[&[0, 1], &[2, 3]]), [3, 3, 3, 3]),
        (s(&[&[0, 2], &[1, 3]]), [3, 3, 3, 3]),
        (s(&[&[0, 3], &[1, 2]]), [3, 3, 3, 3]),
    ];
    // Every player asking for the same structure realizes it.
    let index_of = |p: &CoalitionStructure| g.strategies(0).iter().position(|st| st.desired() == p).unwrap();
    let mut seen = 0;
    for p in g.family().structures() {
        let i = index_of(p);
        let profile = StrategyProfile::new(vec![i; 4]);
        assert_eq!(g.realized_partition(&profile).unwrap(), p);
        let want: Vec<Rational> = match rows.iter().find(|(q, _)| q == p) {
            Some((_, v)) => {
                seen += 1;
                v.iter().map(|&x| int(x)).collect()
            }
            None => {
                assert!(p.max_block_size() >= 3, "{p} should be listed");
                vec![int(0); 4]
            }
        };
        assert_eq!(g.payoff(&profile).unwrap(), want.as_slice(), "{p}");
    }
    assert_eq!(seen, 10);
    // Coalition values of {A,B} in rows 1 and 8.
    let ab = coalition_forge_core::partition::Coalition::new([0, 1]).unwrap();
    let row1 = StrategyProfile::new(vec![index_of(&rows[0].0); 4]);
    let row8 = StrategyProfile::new(vec![index_of(&rows[7].0); 4]);
    assert_eq!(g.coalition_value(&row1, &ab).unwrap(), int(20));
    assert_eq!(g.coalition_value(&row8, &ab).unwrap(), int(6));
}

#[test]
fn restriction_coherence() {
    let extended = catalog::build_pd_extended();
    let standard = catalog::build_pd_standard();
    let restricted = extended.restrict(1).unwrap();
    embed(&restricted, &standard).unwrap();
    embed(&standard, &restricted).unwrap();
    assert_eq!(restricted.strategy_sets(), standard.strategy_sets());
    // Small epsilon approaches the structure-independent table.
    let tiny = build_pd_extroverts(ratio(1, 1_000_000)).unwrap();
    for index in 0..16 {
        for p in 0..2 {
            let gap = tiny.payoffs().exact(index, p) - extended.payoffs().exact(index, p);
            assert!(gap <= ratio(1, 1_000_000));
        }
    }
}

#[test]
fn every_catalog_game_has_valid_domains() {
    for e in catalog::entries() {
        let g = catalog::build(e.id, &[]).unwrap().game;
        let d = g.validate_domains().unwrap();
        let total: usize = d.domains().iter().map(|(_, v)| v.len()).sum();
        assert_eq!(total, g.space().len(), "{}", e.id);
        for k in 1..=g.max_coalition() {
            let r = g.restrict(k).unwrap();
            r.validate_domains().unwrap();
            embed(&r, &g).unwrap();
        }
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(build_pd_extroverts(int(0)).is_err());
    assert!(build_pd_introverts(int(-1)).is_err());
    assert!(build_pd_mixed_types(int(1), int(0)).is_err());
    assert!(build_bos(ratio(-1, 10)).is_err());
}
