//! Exact support enumeration for two-player games.
//!
//! For a support pair `(I, J)` the row player's admissible mixtures form the
//! polytope `x ≥ 0` on `I`, `Σx = 1`, column payoffs equal to a common value `v`
//! on `J` and at most `v` off `J` (and symmetrically for the column player).
//! Each polytope is enumerated vertex by vertex; a pair whose polytopes have
//! several vertices carries a continuum of equilibria, reported once through the
//! barycenter of its vertices and flagged as degenerate. A pair is accepted only
//! when the barycenters have exactly the supports `I` and `J`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{verify_epsilon_nash, EquilibriumResult, Method, MixedProfile, SolverConfig};
use crate::error::{Error, Result};
use crate::game::CoalitionGame;
use crate::linalg::{self, Solution};
use crate::Rational;

/// Outcome of a support enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSearch {
    /// Equilibria found, in support-pair order, deduplicated.
    pub equilibria: Vec<EquilibriumResult<Rational>>,
    /// Set when `max_support` was smaller than some strategy set, so larger supports were skipped.
    pub truncated: bool,
    /// Largest support size tried.
    pub max_support: usize,
}

/// Enumerates mixed equilibria of a two-player game exactly.
pub fn mixed_nash_2p_support_enum(game: &CoalitionGame, config: &SolverConfig) -> Result<SupportSearch> {
    config.validate()?;
    if game.n_players() != 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "support enumeration needs 2 players, game has {}",
            game.n_players()
        )));
    }
    let (m, n) = (game.space().sizes()[0], game.space().sizes()[1]);
    let largest = m.max(n);
    let max_support = config.max_support.unwrap_or(6).min(largest);
    let truncated = max_support < largest;

    // a[i][j]: row player's payoff; b[j][i]: column player's payoff, transposed.
    let mut a = vec![vec![Rational::zero(); n]; m];
    let mut b = vec![vec![Rational::zero(); m]; n];
    for i in 0..m {
        for j in 0..n {
            let index = i * game.space().stride(0) + j * game.space().stride(1);
            a[i][j] = game.payoffs().exact(index, 0).clone();
            b[j][i] = game.payoffs().exact(index, 1).clone();
        }
    }

    let rows = subsets(m, max_support);
    let cols = subsets(n, max_support);
    let mut equilibria: Vec<EquilibriumResult<Rational>> = Vec::new();
    for rs in &rows {
        for cs in &cols {
            // x mixes over rows and must make the column player indifferent on `cs`.
            let Some((x, x_deg)) = representative(&b, rs, cs, m) else { continue };
            let Some((y, y_deg)) = representative(&a, cs, rs, n) else { continue };
            let profile = MixedProfile::new(vec![x, y])?;
            if equilibria.iter().any(|e| e.profile == profile) {
                continue;
            }
            let v = verify_epsilon_nash(game, &profile, 0.0)?;
            if !v.passed {
                continue;
            }
            let mut result = EquilibriumResult::from_verification(profile, v, Method::SupportEnum);
            result.degenerate = x_deg || y_deg;
            equilibria.push(result);
        }
    }
    Ok(SupportSearch { equilibria, truncated, max_support })
}

/// Non-empty subsets of `0..size` with at most `limit` elements, by size then lexicographically.
fn subsets(size: usize, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=limit.min(size) {
        for_each_combination(size, k, |c| out.push(c.to_vec()));
    }
    out
}

/// Barycenter of the polytope of mixtures over `own` (out of `size` strategies)
/// that leave the opponent, whose payoffs are `opp[j][i]`, indifferent on `other`
/// and no better off elsewhere. Returns `None` if the polytope is empty or the
/// barycenter's support differs from `own`; the flag reports multiple vertices.
fn representative(opp: &[Vec<Rational>], own: &[usize], other: &[usize], size: usize) -> Option<(Vec<Rational>, bool)> {
    let d = own.len() + 1; // weights on `own`, then the common value v
    let mut eq_rows: Vec<Vec<Rational>> = Vec::new();
    let mut eq_rhs: Vec<Rational> = Vec::new();
    let mut total = vec![Rational::one(); d];
    total[d - 1] = Rational::zero();
    eq_rows.push(total);
    eq_rhs.push(Rational::one());
    for &j in other {
        eq_rows.push(value_row(opp, own, j));
        eq_rhs.push(Rational::zero());
    }
    // Inequalities g · z ≤ h.
    let mut ineq: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for k in 0..own.len() {
        let mut row = vec![Rational::zero(); d];
        row[k] = -Rational::one();
        ineq.push((row, Rational::zero()));
    }
    for j in 0..opp.len() {
        if !other.contains(&j) {
            ineq.push((value_row(opp, own, j), Rational::zero()));
        }
    }

    let rank = linalg::rank(eq_rows.clone(), d);
    let free = d - rank;
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    if free > ineq.len() {
        return None;
    }
    for_each_combination(ineq.len(), free, |tight| {
        let mut rows = eq_rows.clone();
        let mut rhs = eq_rhs.clone();
        for &t in tight {
            rows.push(ineq[t].0.clone());
            rhs.push(ineq[t].1.clone());
        }
        if let Solution::Unique(z) = linalg::solve(rows, rhs, d) {
            let feasible = ineq.iter().all(|(g, h)| dot(g, &z) <= *h);
            if feasible && !vertices.contains(&z) {
                vertices.push(z);
            }
        }
    });
    if vertices.is_empty() {
        return None;
    }
    let count = Rational::from_integer((vertices.len() as i64).into());
    let mut weights = vec![Rational::zero(); size];
    for (k, &s) in own.iter().enumerate() {
        let sum = vertices.iter().fold(Rational::zero(), |acc, v| acc + &v[k]);
        weights[s] = sum / &count;
    }
    if own.iter().any(|&s| weights[s].is_zero()) {
        return None;
    }
    Some((weights, vertices.len() > 1))
}

/// Coefficients of `opp`'s payoff from strategy `j` minus `v`, as a row over `(x_own, v)`.
fn value_row(opp: &[Vec<Rational>], own: &[usize], j: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = own.iter().map(|&i| opp[j][i].clone()).collect();
    row.push(-Rational::one());
    row
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        f(&combo);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if combo[i] < n - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}
