#![allow(dead_code)]

use coalition_forge_core::game::{CoalitionGame, MechanismRule, Strategy as PureStrategy};
use coalition_forge_core::partition::CoalitionStructure;
use coalition_forge_core::solver::MixedProfile;
use coalition_forge_core::{catalog, int, Rational};
use proptest::prelude::*;

/// Every catalog game at its default parameters, by id.
pub fn catalog_games() -> Vec<(&'static str, CoalitionGame)> {
    catalog::entries().iter().map(|e| (e.id, catalog::build(e.id, &[]).unwrap().game)).collect()
}

/// A game with `sizes[i]` strategies per player, everyone asking to stay alone,
/// and payoffs read from `table` (row-major, one entry per player per profile).
pub fn normal_form(sizes: &[usize], table: &[i64]) -> CoalitionGame {
    let n = sizes.len();
    let strategies: Vec<Vec<PureStrategy>> = sizes
        .iter()
        .map(|&s| (0..s).map(|a| PureStrategy::labelled(CoalitionStructure::singletons(n), &format!("a{a}"))).collect())
        .collect();
    let profiles: usize = sizes.iter().product();
    let payoffs = (0..profiles).map(|i| (0..n).map(|p| int(table[i * n + p])).collect()).collect();
    CoalitionGame::new(1, strategies, MechanismRule::Unanimity, payoffs).unwrap()
}

/// Random games with the given player count, 2..=4 strategies each, small integer payoffs.
pub fn random_game(players: usize) -> impl Strategy<Value = CoalitionGame> {
    prop::collection::vec(2usize..=4, players).prop_flat_map(move |sizes| {
        let cells: usize = sizes.iter().product::<usize>() * players;
        prop::collection::vec(-3i64..=3, cells).prop_map(move |table| normal_form(&sizes, &table))
    })
}

/// One random distribution over `size` strategies with at most `max_support` positive weights.
pub fn random_row(size: usize, max_support: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0..size, 1i64..=6), 1..=max_support.max(1)).prop_map(move |picks| {
        let mut raw = vec![0i64; size];
        for (i, w) in picks {
            raw[i] += w;
        }
        let total: i64 = raw.iter().sum();
        raw.into_iter().map(|w| coalition_forge_core::ratio(w, total)).collect()
    })
}

/// A random exact profile for the given strategy-set sizes.
pub fn random_profile(sizes: &[usize], max_support: usize) -> impl Strategy<Value = MixedProfile<Rational>> {
    let rows: Vec<_> = sizes.iter().map(|&s| random_row(s, max_support)).collect();
    rows.prop_map(|w| MixedProfile::new(w).unwrap())
}

/// Renders a profile's weights as strings for assertion messages.
pub fn show(profile: &MixedProfile<Rational>) -> Vec<Vec<String>> {
    profile.weights().iter().map(|r| r.iter().map(|w| w.to_string()).collect()).collect()
}
