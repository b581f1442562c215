//! Expected utilities, regret verification and equilibrium search.
//!
//! Mixed profiles are generic over [`Scalar`]: exact [`Rational`] weights for
//! support enumeration and verification, `f64` weights for iterative dynamics.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::float::FloatCore;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::game::{CoalitionGame, DomainDecomposition, StrategyProfile};
use crate::{Rational, Scalar};

mod iterative;
mod support;

pub use iterative::mixed_nash_iterative;
pub use support::{mixed_nash_2p_support_enum, SupportSearch};

/// One probability distribution over pure strategies per player.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile<T> {
    weights: Vec<Vec<T>>,
}

impl<T: Scalar> MixedProfile<T> {
    /// Checks that every row is non-negative and sums to one.
    pub fn new(weights: Vec<Vec<T>>) -> Result<Self> {
        for (player, row) in weights.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidArgument(format!("player {player} has an empty distribution")));
            }
            let mut total = T::zero();
            for w in row {
                if *w < T::zero() && !(w.is_negligible() && !T::EXACT) {
                    return Err(Error::InvalidArgument(format!("player {player} has a negative weight")));
                }
                total = total + w.clone();
            }
            if !total.is_unit_total() {
                return Err(Error::InvalidArgument(format!(
                    "weights of player {player} sum to {}, not 1",
                    total.to_f64()
                )));
            }
        }
        Ok(Self { weights })
    }

    /// Point mass on a pure profile.
    pub fn pure(sizes: &[usize], profile: &StrategyProfile) -> Result<Self> {
        let choices = profile.choices();
        if choices.len() != sizes.len() || choices.iter().zip(sizes).any(|(c, s)| c >= s) {
            return Err(Error::InvalidArgument(format!("profile {choices:?} does not fit sizes {sizes:?}")));
        }
        let weights = sizes
            .iter()
            .zip(choices)
            .map(|(&size, &c)| {
                let mut row = vec![T::zero(); size];
                row[c] = T::one();
                row
            })
            .collect();
        Ok(Self { weights })
    }

    /// Every player uniform over their strategies.
    pub fn uniform(sizes: &[usize]) -> Self {
        let weights = sizes
            .iter()
            .map(|&size| {
                let mut denom = T::zero();
                for _ in 0..size {
                    denom = denom + T::one();
                }
                vec![T::one() / denom; size]
            })
            .collect();
        Self { weights }
    }

    /// Number of players.
    pub fn n_players(&self) -> usize {
        self.weights.len()
    }

    /// All distributions.
    pub fn weights(&self) -> &[Vec<T>] {
        &self.weights
    }

    /// Distribution of one player.
    pub fn player(&self, player: usize) -> &[T] {
        &self.weights[player]
    }

    /// Strategies of `player` with strictly positive weight.
    pub fn support(&self, player: usize) -> Vec<usize> {
        self.weights[player]
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > T::zero() && !w.is_negligible())
            .map(|(i, _)| i)
            .collect()
    }

    /// The pure profile if every player's distribution is a point mass.
    pub fn as_pure(&self) -> Option<StrategyProfile> {
        let mut choices = Vec::with_capacity(self.weights.len());
        for p in 0..self.weights.len() {
            match self.support(p).as_slice() {
                [only] => choices.push(*only),
                _ => return None,
            }
        }
        Some(StrategyProfile::new(choices))
    }

    /// Float copy.
    pub fn to_f64(&self) -> MixedProfile<f64> {
        MixedProfile { weights: self.weights.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect() }
    }

    /// Checks that the profile is shaped for `game`.
    pub fn check(&self, game: &CoalitionGame) -> Result<()> {
        let sizes = game.space().sizes();
        if self.weights.len() != sizes.len() {
            return Err(Error::InvalidArgument(format!(
                "profile has {} players, game has {}",
                self.weights.len(),
                sizes.len()
            )));
        }
        for (player, (row, &size)) in self.weights.iter().zip(sizes).enumerate() {
            if row.len() != size {
                return Err(Error::InvalidArgument(format!(
                    "player {player} has {size} strategies, profile gives {} weights",
                    row.len()
                )));
            }
        }
        Ok(())
    }
}

impl MixedProfile<Rational> {
    /// Exact profile from float weights, each rounded to the nearest `1/denominator`
    /// and renormalized.
    pub fn from_f64_rounded(profile: &MixedProfile<f64>, denominator: i64) -> Result<Self> {
        let mut weights = Vec::with_capacity(profile.n_players());
        for row in profile.weights() {
            let scaled: Vec<i64> =
                row.iter().map(|w| FloatCore::round(w * denominator as f64).max(0.0) as i64).collect();
            let total: i64 = scaled.iter().sum();
            if total == 0 {
                return Err(Error::InvalidArgument(String::from("profile rounds to all zeros")));
            }
            weights.push(scaled.iter().map(|&s| crate::ratio(s, total)).collect());
        }
        Self::new(weights)
    }
}

/// How an equilibrium was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    /// Exhaustive pure-profile check.
    PureEnum,
    /// Exact two-player support enumeration.
    SupportEnum,
    /// Damped fictitious play with verification.
    Iterative,
}

impl Method {
    /// Kebab-case tag.
    pub fn tag(self) -> &'static str {
        match self {
            Method::PureEnum => "pure-enum",
            Method::SupportEnum => "support-enum",
            Method::Iterative => "iterative",
        }
    }
}

/// A candidate equilibrium with its verification data.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult<T> {
    /// The profile.
    pub profile: MixedProfile<T>,
    /// Expected utility per player.
    pub expected_payoffs: Vec<T>,
    /// Best-response value minus expected utility per player.
    pub regrets: Vec<T>,
    /// Largest regret.
    pub max_regret: T,
    /// Search method.
    pub method: Method,
    /// Whether `max_regret` is within the solver tolerance.
    pub is_equilibrium: bool,
    /// Set when the profile is one representative of a continuum of equilibria.
    pub degenerate: bool,
    /// Iterations used (iterative method only).
    pub iterations: usize,
}

impl<T: Scalar> EquilibriumResult<T> {
    fn from_verification(profile: MixedProfile<T>, v: Verification<T>, method: Method) -> Self {
        Self {
            profile,
            expected_payoffs: v.expected_payoffs,
            regrets: v.regrets,
            max_regret: v.max_regret,
            method,
            is_equilibrium: v.passed,
            degenerate: false,
            iterations: 0,
        }
    }
}

/// Start point for iterative dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    /// Every player uniform.
    Uniform,
    /// Random interior distributions drawn from the seed.
    Random,
}

/// Solver parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Regret tolerance for float results.
    pub tolerance: f64,
    /// Largest support size tried by support enumeration; `None` means `min(6, set size)`.
    pub max_support: Option<usize>,
    /// Iteration cap for iterative dynamics.
    pub max_iterations: usize,
    /// Step-size scale in `(0, 1]`; step `t` moves `damping / (t + 2)` toward the best response.
    pub damping: Rational,
    /// Seed for random starts.
    pub rng_seed: u64,
    /// Start point for iterative dynamics.
    pub start: Start,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_support: None,
            max_iterations: 100_000,
            damping: Rational::from_integer(1.into()),
            rng_seed: 0,
            start: Start::Uniform,
        }
    }
}

impl SolverConfig {
    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 || !self.tolerance.is_finite() {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.damping <= Rational::zero() || self.damping > Rational::from_integer(1.into()) {
            return Err(Error::InvalidArgument(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        if self.max_support == Some(0) {
            return Err(Error::InvalidArgument(String::from("max_support must be at least 1")));
        }
        Ok(())
    }

    pub(crate) fn damping_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.damping).unwrap_or(1.0)
    }
}

/// Calls `f(index, probability)` for every pure profile in the support of `weights`.
/// If `skip` names a player, that player's choice is held at strategy 0 with weight 1.
fn for_each_profile<T: Scalar>(
    game: &CoalitionGame,
    weights: &[Vec<T>],
    skip: Option<usize>,
    mut f: impl FnMut(usize, &T),
) {
    let space = game.space();
    let supports: Vec<Vec<usize>> = (0..weights.len())
        .map(|p| {
            if Some(p) == skip {
                vec![0]
            } else {
                (0..weights[p].len()).filter(|&s| !weights[p][s].is_zero()).collect()
            }
        })
        .collect();
    if supports.iter().any(Vec::is_empty) {
        return;
    }
    let n = weights.len();
    let mut cursor = vec![0usize; n];
    loop {
        let mut index = 0;
        let mut prob = T::one();
        for p in 0..n {
            let s = supports[p][cursor[p]];
            index += s * space.stride(p);
            if Some(p) != skip {
                prob = prob * weights[p][s].clone();
            }
        }
        f(index, &prob);
        let mut p = n;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            cursor[p] += 1;
            if cursor[p] < supports[p].len() {
                break;
            }
            cursor[p] = 0;
        }
    }
}

/// Expected utility of every player: the sum over pure profiles of payoff times probability.
pub fn expected_payoffs<T: Scalar>(game: &CoalitionGame, profile: &MixedProfile<T>) -> Result<Vec<T>> {
    profile.check(game)?;
    let n = game.n_players();
    let mut eu = vec![T::zero(); n];
    for_each_profile(game, profile.weights(), None, |index, prob| {
        for (p, acc) in eu.iter_mut().enumerate() {
            *acc = acc.clone() + prob.clone() * T::payoff(game, index, p);
        }
    });
    Ok(eu)
}

/// Expected utility of one player.
pub fn expected_utility<T: Scalar>(game: &CoalitionGame, profile: &MixedProfile<T>, player: usize) -> Result<T> {
    check_player(game, player)?;
    Ok(expected_payoffs(game, profile)?.swap_remove(player))
}

/// Expected utility summed domain by domain: over realized structures `P`, then
/// over the profiles whose realized structure is `P`.
pub fn expected_utility_grouped<T: Scalar>(
    game: &CoalitionGame,
    domains: &DomainDecomposition,
    profile: &MixedProfile<T>,
    player: usize,
) -> Result<T> {
    profile.check(game)?;
    check_player(game, player)?;
    let space = game.space();
    let mut total = T::zero();
    for (_, members) in domains.domains() {
        let mut within = T::zero();
        for &index in members {
            let mut prob = T::one();
            for p in 0..game.n_players() {
                let w = &profile.player(p)[space.choice(index, p)];
                if w.is_zero() {
                    prob = T::zero();
                    break;
                }
                prob = prob * w.clone();
            }
            if !prob.is_zero() {
                within = within + prob * T::payoff(game, index, player);
            }
        }
        total = total + within;
    }
    Ok(total)
}

/// Expected utility of each pure strategy of `player` against the others' mixture.
pub fn deviation_values<T: Scalar>(game: &CoalitionGame, profile: &MixedProfile<T>, player: usize) -> Result<Vec<T>> {
    profile.check(game)?;
    check_player(game, player)?;
    let size = game.space().sizes()[player];
    let stride = game.space().stride(player);
    let mut values = vec![T::zero(); size];
    for_each_profile(game, profile.weights(), Some(player), |base, prob| {
        for (s, acc) in values.iter_mut().enumerate() {
            *acc = acc.clone() + prob.clone() * T::payoff(game, base + s * stride, player);
        }
    });
    Ok(values)
}

/// Best expected utility `player` can reach by a unilateral pure deviation.
pub fn best_response_value<T: Scalar>(game: &CoalitionGame, profile: &MixedProfile<T>, player: usize) -> Result<T> {
    let values = deviation_values(game, profile, player)?;
    Ok(max_of(&values))
}

fn max_of<T: Scalar>(values: &[T]) -> T {
    let mut best = values[0].clone();
    for v in &values[1..] {
        if *v > best {
            best = v.clone();
        }
    }
    best
}

fn check_player(game: &CoalitionGame, player: usize) -> Result<()> {
    if player >= game.n_players() {
        return Err(Error::InvalidArgument(format!("player {player} out of range for {} players", game.n_players())));
    }
    Ok(())
}

/// Per-player regrets of a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification<T> {
    /// Expected utility per player.
    pub expected_payoffs: Vec<T>,
    /// Best pure deviation value per player.
    pub best_responses: Vec<T>,
    /// `best_responses - expected_payoffs`, clamped at zero.
    pub regrets: Vec<T>,
    /// Largest regret.
    pub max_regret: T,
    /// Whether `max_regret` is within tolerance.
    pub passed: bool,
}

/// Computes every player's regret. In exact mode a tolerance of zero is an exact zero test.
pub fn verify_epsilon_nash<T: Scalar>(
    game: &CoalitionGame,
    profile: &MixedProfile<T>,
    tolerance: f64,
) -> Result<Verification<T>> {
    profile.check(game)?;
    let n = game.n_players();
    let mut expected_payoffs = Vec::with_capacity(n);
    let mut best_responses = Vec::with_capacity(n);
    let mut regrets = Vec::with_capacity(n);
    for player in 0..n {
        let values = deviation_values(game, profile, player)?;
        let mut eu = T::zero();
        for (w, v) in profile.player(player).iter().zip(&values) {
            eu = eu + w.clone() * v.clone();
        }
        let best = max_of(&values);
        let mut regret = best.clone() - eu.clone();
        if regret < T::zero() {
            regret = T::zero();
        }
        expected_payoffs.push(eu);
        best_responses.push(best);
        regrets.push(regret);
    }
    let max_regret = max_of(&regrets);
    let passed = if T::EXACT && tolerance == 0.0 { max_regret.is_zero() } else { max_regret.to_f64() <= tolerance };
    Ok(Verification { expected_payoffs, best_responses, regrets, max_regret, passed })
}

/// Whether `alt` strictly exceeds `current`, using floats first and exact rationals when close.
fn strictly_greater(game: &CoalitionGame, alt: usize, current: usize, player: usize) -> bool {
    let payoffs = game.payoffs();
    let (a, b) = (payoffs.approx(alt, player), payoffs.approx(current, player));
    let margin = 1e-9 * a.abs().max(b.abs()).max(1.0);
    if a > b + margin {
        true
    } else if a < b - margin {
        false
    } else {
        payoffs.exact(alt, player) > payoffs.exact(current, player)
    }
}

/// Whether the pure profile at `index` admits no strictly profitable unilateral pure deviation.
pub fn is_pure_nash(game: &CoalitionGame, index: usize) -> bool {
    let space = game.space();
    (0..game.n_players()).all(|player| {
        (0..space.sizes()[player]).all(|s| !strictly_greater(game, space.with_choice(index, player, s), index, player))
    })
}

/// Every pure profile at which no player gains strictly by a unilateral deviation,
/// in lexicographic profile order.
pub fn pure_nash_enumerate(game: &CoalitionGame) -> Vec<EquilibriumResult<Rational>> {
    let space = game.space();
    (0..space.len())
        .filter(|&index| is_pure_nash(game, index))
        .map(|index| {
            let profile = MixedProfile::pure(space.sizes(), &space.profile(index)).expect("index decodes in range");
            let n = game.n_players();
            EquilibriumResult {
                profile,
                expected_payoffs: game.payoffs().vector(index).to_vec(),
                regrets: vec![Rational::zero(); n],
                max_regret: Rational::zero(),
                method: Method::PureEnum,
                is_equilibrium: true,
                degenerate: false,
                iterations: 0,
            }
        })
        .collect()
}

/// Verified result for an arbitrary exact profile, labelled with `method`.
pub fn evaluate_profile(
    game: &CoalitionGame,
    profile: MixedProfile<Rational>,
    method: Method,
) -> Result<EquilibriumResult<Rational>> {
    let v = verify_epsilon_nash(game, &profile, 0.0)?;
    Ok(EquilibriumResult::from_verification(profile, v, method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::{int, ratio};

    #[test]
    fn pd_standard_uniform_eu() {
        let g = catalog::build_pd_standard();
        let u = MixedProfile::<Rational>::uniform(g.space().sizes());
        assert_eq!(expected_utility(&g, &u, 0).unwrap(), int(-1));
        let d = g.validate_domains().unwrap();
        assert_eq!(expected_utility_grouped(&g, &d, &u, 0).unwrap(), int(-1));
    }

    #[test]
    fn best_responses_in_pd() {
        let g = catalog::build_pd_standard();
        let hh = MixedProfile::<Rational>::pure(g.space().sizes(), &vec![1, 1].into()).unwrap();
        assert_eq!(best_response_value(&g, &hh, 0).unwrap(), int(-2));
        let ll = MixedProfile::<Rational>::pure(g.space().sizes(), &vec![0, 0].into()).unwrap();
        assert_eq!(best_response_value(&g, &ll, 0).unwrap(), int(3));
        let v = verify_epsilon_nash(&g, &ll, 0.0).unwrap();
        assert_eq!(v.regrets, vec![int(3), int(3)]);
        assert!(!v.passed);
        assert!(verify_epsilon_nash(&g, &hh, 0.0).unwrap().passed);
    }

    #[test]
    fn profile_checks() {
        assert!(MixedProfile::new(vec![vec![ratio(1, 2), ratio(1, 3)]]).is_err());
        assert!(MixedProfile::new(vec![vec![ratio(3, 2), ratio(-1, 2)]]).is_err());
        assert!(MixedProfile::<f64>::new(vec![vec![0.5, 0.5 + 1e-13]]).is_ok());
        assert!(MixedProfile::<Rational>::pure(&[2, 2], &vec![2, 0].into()).is_err());
        let g = catalog::build_pd_standard();
        let bad = MixedProfile::<Rational>::uniform(&[2, 3]);
        assert!(matches!(expected_utility(&g, &bad, 0), Err(Error::InvalidArgument(_))));
        let u = MixedProfile::<Rational>::uniform(&[2, 2]);
        assert!(expected_utility(&g, &u, 2).is_err());
    }

    #[test]
    fn pure_enumeration_pd() {
        let g = catalog::build_pd_standard();
        let eq = pure_nash_enumerate(&g);
        assert_eq!(eq.len(), 1);
        assert_eq!(eq[0].profile.as_pure(), Some(vec![1, 1].into()));
        assert_eq!(eq[0].expected_payoffs, vec![int(-2), int(-2)]);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let mut c = SolverConfig { tolerance: 0.0, ..SolverConfig::default() };
        assert!(c.validate().is_err());
        c.tolerance = 1e-6;
        c.damping = int(2);
        assert!(c.validate().is_err());
        c.damping = int(0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn rounding_float_profiles() {
        let p = MixedProfile::new(vec![vec![0.3333333, 0.6666667]]).unwrap();
        let q = MixedProfile::from_f64_rounded(&p, 3).unwrap();
        assert_eq!(q.player(0), &[ratio(1, 3), ratio(2, 3)]);
    }
}
