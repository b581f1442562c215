//! Damped fictitious play with best-response and support-polish checks.
//!
//! Every player moves `damping / (t + 2)` of its weight toward its current best
//! response (lowest index on ties). Along the way the solver tries two shortcuts:
//! the joint best-response profile is accepted if it is itself a pure
//! equilibrium, and at geometrically spaced checkpoints Newton's method solves
//! the indifference system on the current supports. Whatever candidate is
//! returned has been verified; running out of iterations yields a flagged
//! non-equilibrium.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    deviation_values, is_pure_nash, verify_epsilon_nash, EquilibriumResult, Method, MixedProfile, SolverConfig, Start,
};
use crate::error::Result;
use crate::game::CoalitionGame;
use crate::linalg::{self, Solution};
use crate::Scalar;

/// Runs the dynamics from the configured start and returns the first verified candidate,
/// or the final iterate flagged as non-equilibrium.
pub fn mixed_nash_iterative(game: &CoalitionGame, config: &SolverConfig) -> Result<EquilibriumResult<f64>> {
    config.validate()?;
    let sizes = game.space().sizes().to_vec();
    let n = sizes.len();
    let damping = config.damping_f64();
    let mut x = start(&sizes, config);
    let mut next_polish = 16usize;
    let mut iterations = 0usize;

    while iterations < config.max_iterations {
        let profile = MixedProfile { weights: x.clone() };
        let mut br = Vec::with_capacity(n);
        for p in 0..n {
            let values = deviation_values(game, &profile, p)?;
            br.push(argmax(&values));
        }

        let br_index: usize = br.iter().enumerate().map(|(p, &s)| s * game.space().stride(p)).sum();
        if is_pure_nash(game, br_index) {
            let pure = MixedProfile::pure(&sizes, &game.space().profile(br_index))?;
            return finish(game, pure, config, iterations);
        }

        if iterations + 1 >= next_polish {
            next_polish = next_polish.saturating_mul(2);
            let current = verify_epsilon_nash(game, &profile, config.tolerance)?;
            if current.passed {
                return finish(game, profile, config, iterations);
            }
            if let Some(polished) = polish(game, &x)? {
                let v = verify_epsilon_nash(game, &polished, config.tolerance)?;
                if v.passed {
                    return finish(game, polished, config, iterations);
                }
            }
        }

        let step = damping / (iterations as f64 + 2.0);
        for p in 0..n {
            for (s, w) in x[p].iter_mut().enumerate() {
                *w *= 1.0 - step;
                if s == br[p] {
                    *w += step;
                }
            }
        }
        iterations += 1;
    }
    let profile = MixedProfile { weights: x };
    finish(game, profile, config, iterations)
}

fn finish(
    game: &CoalitionGame,
    profile: MixedProfile<f64>,
    config: &SolverConfig,
    iterations: usize,
) -> Result<EquilibriumResult<f64>> {
    let v = verify_epsilon_nash(game, &profile, config.tolerance)?;
    let mut result = EquilibriumResult::from_verification(profile, v, Method::Iterative);
    result.iterations = iterations;
    Ok(result)
}

fn start(sizes: &[usize], config: &SolverConfig) -> Vec<Vec<f64>> {
    match config.start {
        Start::Uniform => MixedProfile::<f64>::uniform(sizes).weights,
        Start::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
            sizes
                .iter()
                .map(|&size| {
                    let raw: Vec<f64> =
                        (0..size).map(|_| ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64) + 1e-3).collect();
                    let total: f64 = raw.iter().sum();
                    raw.into_iter().map(|w| w / total).collect()
                })
                .collect()
        }
    }
}

/// Index of the largest value, lowest index on ties.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Solves "every support strategy earns the same value, weights sum to one" by
/// Newton's method, with supports read off the current iterate.
fn polish(game: &CoalitionGame, x: &[Vec<f64>]) -> Result<Option<MixedProfile<f64>>> {
    let n = x.len();
    let supports: Vec<Vec<usize>> = x
        .iter()
        .map(|row| {
            let top = row.iter().cloned().fold(0.0, f64::max);
            (0..row.len()).filter(|&s| row[s] >= 0.05 * top).collect()
        })
        .collect();
    // Unknowns: support weights of every player, then one value per player.
    let offsets: Vec<usize> = supports
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();
    let n_weights: usize = supports.iter().map(Vec::len).sum();
    let dim = n_weights + n;
    let mut z = vec![0.0; dim];
    for p in 0..n {
        let total: f64 = supports[p].iter().map(|&s| x[p][s]).sum();
        for (k, &s) in supports[p].iter().enumerate() {
            z[offsets[p] + k] = x[p][s] / total;
        }
    }
    let to_profile = |z: &[f64]| -> Vec<Vec<f64>> {
        (0..n)
            .map(|p| {
                let mut row = vec![0.0; x[p].len()];
                for (k, &s) in supports[p].iter().enumerate() {
                    row[s] = z[offsets[p] + k];
                }
                row
            })
            .collect()
    };
    let residual = |z: &[f64]| -> Result<Vec<f64>> {
        let profile = MixedProfile { weights: to_profile(z) };
        let mut r = Vec::with_capacity(dim);
        for p in 0..n {
            let values = deviation_values(game, &profile, p)?;
            for &s in &supports[p] {
                r.push(values[s] - z[n_weights + p]);
            }
        }
        for p in 0..n {
            let total: f64 = (0..supports[p].len()).map(|k| z[offsets[p] + k]).sum();
            r.push(total - 1.0);
        }
        Ok(r)
    };
    {
        let profile = MixedProfile { weights: to_profile(&z) };
        for p in 0..n {
            let values = deviation_values(game, &profile, p)?;
            z[n_weights + p] = supports[p].iter().map(|&s| values[s]).sum::<f64>() / supports[p].len() as f64;
        }
    }

    for _ in 0..25 {
        let r = residual(&z)?;
        let norm = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if norm < 1e-13 {
            break;
        }
        // Payoffs are multilinear, so a unit forward difference is an exact partial derivative.
        let mut jac = vec![vec![0.0; dim]; dim];
        for c in 0..dim {
            let mut shifted = z.clone();
            shifted[c] += 1.0;
            let rs = residual(&shifted)?;
            for row in 0..dim {
                jac[row][c] = rs[row] - r[row];
            }
        }
        let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        match linalg::solve(jac, rhs, dim) {
            Solution::Unique(delta) => {
                for (zi, di) in z.iter_mut().zip(&delta) {
                    *zi += di;
                }
            }
            _ => return Ok(None),
        }
    }
    let mut weights = to_profile(&z);
    for row in &mut weights {
        if row.iter().any(|w| *w < -1e-9 || !w.is_finite()) {
            return Ok(None);
        }
        for w in row.iter_mut() {
            *w = w.max(0.0);
        }
        let total: f64 = row.iter().sum();
        for w in row.iter_mut() {
            *w /= total;
        }
    }
    Ok(MixedProfile::new(weights).ok().filter(|p| !p.weights.iter().flatten().any(|w| w.is_negligible() && *w > 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn finds_strict_equilibrium() {
        let g = catalog::build_pd_standard();
        let r = mixed_nash_iterative(&g, &SolverConfig::default()).unwrap();
        assert!(r.is_equilibrium);
        assert_eq!(r.profile.as_pure(), Some(vec![1, 1].into()));
    }

    #[test]
    fn random_start_is_seeded() {
        let g = catalog::build_pd_standard();
        let cfg = SolverConfig { start: Start::Random, rng_seed: 7, ..SolverConfig::default() };
        let a = start(g.space().sizes(), &cfg);
        let b = start(g.space().sizes(), &cfg);
        assert_eq!(a, b);
        assert!(mixed_nash_iterative(&g, &cfg).unwrap().is_equilibrium);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0]), 1);
    }
}
