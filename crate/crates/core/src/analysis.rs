//! Equilibrium partitions, complete cooperation, stochastic classification and
//! the stability scan over a nested family of games.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::{embed, CoalitionGame, Embedding};
use crate::partition::{Coalition, CoalitionStructure};
use crate::solver::{
    mixed_nash_2p_support_enum, pure_nash_enumerate, verify_epsilon_nash, EquilibriumResult, MixedProfile, SolverConfig,
};
use crate::{Rational, Scalar};

/// Realized coalition structures with positive probability under a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumPartitionSet<T> {
    entries: Vec<(CoalitionStructure, T)>,
}

impl<T: Scalar> EquilibriumPartitionSet<T> {
    /// `(structure, probability)` pairs in family order.
    pub fn entries(&self) -> &[(CoalitionStructure, T)] {
        &self.entries
    }

    /// The structures alone.
    pub fn partitions(&self) -> impl Iterator<Item = &CoalitionStructure> {
        self.entries.iter().map(|(s, _)| s)
    }

    /// Probability of `structure` (zero if absent).
    pub fn probability(&self, structure: &CoalitionStructure) -> T {
        self.entries.iter().find(|(s, _)| s == structure).map(|(_, p)| p.clone()).unwrap_or_else(T::zero)
    }

    /// Number of structures.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether no structure has positive probability.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn require_verified<T>(result: &EquilibriumResult<T>) -> Result<()> {
    if result.is_equilibrium {
        Ok(())
    } else {
        Err(Error::InvalidArgument(String::from("the result did not pass equilibrium verification")))
    }
}

/// Distribution of realized structures induced by a profile, without requiring it to be verified.
pub fn partition_distribution<T: Scalar>(
    game: &CoalitionGame,
    profile: &MixedProfile<T>,
) -> Result<EquilibriumPartitionSet<T>> {
    profile.check(game)?;
    let mut mass = vec![T::zero(); game.family().len()];
    let space = game.space();
    let supports: Vec<Vec<usize>> = (0..game.n_players()).map(|p| profile.support(p)).collect();
    let n = supports.len();
    let mut cursor = vec![0usize; n];
    'outer: loop {
        let mut index = 0;
        let mut prob = T::one();
        for p in 0..n {
            let s = supports[p][cursor[p]];
            index += s * space.stride(p);
            prob = prob * profile.player(p)[s].clone();
        }
        let slot = game.realized_index(index);
        mass[slot] = mass[slot].clone() + prob;
        let mut p = n;
        loop {
            if p == 0 {
                break 'outer;
            }
            p -= 1;
            cursor[p] += 1;
            if cursor[p] < supports[p].len() {
                break;
            }
            cursor[p] = 0;
        }
    }
    let entries = game.family().structures().iter().cloned().zip(mass).filter(|(_, m)| !m.is_zero()).collect();
    Ok(EquilibriumPartitionSet { entries })
}

/// Structures that form with positive probability under a verified equilibrium.
pub fn equilibrium_partitions<T: Scalar>(
    game: &CoalitionGame,
    result: &EquilibriumResult<T>,
) -> Result<EquilibriumPartitionSet<T>> {
    require_verified(result)?;
    partition_distribution(game, &result.profile)
}

/// Whether a coalition cooperates completely in an equilibrium.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooperationReport {
    /// The coalition examined.
    pub coalition: Coalition,
    /// Every support strategy of every member desires the coalition as a block.
    pub ex_ante: bool,
    /// Every equilibrium partition contains the coalition as a block.
    pub ex_post: bool,
    /// `ex_ante && ex_post`.
    pub complete: bool,
}

/// Evaluates complete cooperation of `coalition` under a verified equilibrium.
pub fn is_complete_cooperation<T: Scalar>(
    game: &CoalitionGame,
    result: &EquilibriumResult<T>,
    coalition: &Coalition,
) -> Result<CooperationReport> {
    require_verified(result)?;
    if coalition.largest() >= game.n_players() {
        return Err(Error::InvalidArgument(format!("{coalition} names a player outside 0..{}", game.n_players())));
    }
    let ex_ante = coalition
        .members()
        .all(|i| result.profile.support(i).iter().all(|&s| game.strategies(i)[s].desired().has_block(coalition)));
    let partitions = equilibrium_partitions(game, result)?;
    let ex_post = partitions.partitions().all(|p| p.has_block(coalition));
    Ok(CooperationReport { coalition: *coalition, ex_ante, ex_post, complete: ex_ante && ex_post })
}

/// Whether a verified equilibrium induces two or more structures.
pub fn classify_stochastic<T: Scalar>(game: &CoalitionGame, result: &EquilibriumResult<T>) -> Result<bool> {
    Ok(equilibrium_partitions(game, result)?.len() >= 2)
}

/// Embeds `small` into `large`, reporting incompatibility as an invalid argument.
fn embedding_between(small: &CoalitionGame, large: &CoalitionGame) -> Result<Embedding> {
    embed(small, large).map_err(|e| Error::InvalidArgument(format!("incompatible strategy universes: {e}")))
}

/// Lifts a profile of `small` into `large`, putting zero weight on strategies `small` lacks.
pub fn lift_profile<T: Scalar>(
    embedding: &Embedding,
    profile: &MixedProfile<T>,
    large: &CoalitionGame,
) -> Result<MixedProfile<T>> {
    let weights = (0..profile.n_players())
        .map(|p| {
            let mut row = vec![T::zero(); large.space().sizes()[p]];
            for (s, w) in profile.player(p).iter().enumerate() {
                row[embedding.map(p, s)] = w.clone();
            }
            row
        })
        .collect();
    MixedProfile::new(weights)
}

/// Whether two profiles have the same support per player, once the game with the
/// smaller `K` is embedded into the other.
pub fn compare_domains<T: Scalar>(
    game_a: &CoalitionGame,
    a: &MixedProfile<T>,
    game_b: &CoalitionGame,
    b: &MixedProfile<T>,
) -> Result<bool> {
    a.check(game_a)?;
    b.check(game_b)?;
    let (small, sp, large, lp) =
        if game_a.max_coalition() <= game_b.max_coalition() { (game_a, a, game_b, b) } else { (game_b, b, game_a, a) };
    let embedding = embedding_between(small, large)?;
    Ok((0..small.n_players()).all(|p| {
        let mapped: Vec<usize> = {
            let mut m: Vec<usize> = sp.support(p).iter().map(|&s| embedding.map(p, s)).collect();
            m.sort_unstable();
            m
        };
        mapped == lp.support(p)
    }))
}

/// A verified equilibrium of a larger game that weakly Pareto-dominates the lifted
/// profile's expected payoffs, strictly for at least one player.
#[derive(Debug, Clone, PartialEq)]
pub struct DominatingEquilibrium {
    /// The equilibrium.
    pub profile: MixedProfile<Rational>,
    /// Its expected payoffs.
    pub expected_payoffs: Vec<Rational>,
}

/// Outcome of the stability check at one `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCheck {
    /// Maximum coalition size of the game checked.
    pub k: usize,
    /// The lifted profile is an exact equilibrium of `Γ(K)`.
    pub payoff_ok: bool,
    /// The lifted profile has the same support as the original.
    pub domain_ok: bool,
    /// Largest regret of the lifted profile.
    pub max_regret: Rational,
    /// Expected payoffs of the lifted profile.
    pub expected_payoffs: Vec<Rational>,
    /// Equilibria of `Γ(K)` that Pareto-dominate the lifted profile.
    pub dominating: Vec<DominatingEquilibrium>,
}

impl StabilityCheck {
    /// Both conditions hold.
    pub fn passed(&self) -> bool {
        self.payoff_ok && self.domain_ok
    }
}

/// Result of the stability scan.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Starting maximum coalition size.
    pub k0: usize,
    /// Largest `K` up to which every check passed.
    pub k_star: usize,
    /// One entry per `K` from `K0` up to `K*`, plus the first failing `K` if any.
    pub checks: Vec<StabilityCheck>,
}

/// Checks that consecutive games (sorted by `K`) are nested, including that
/// restricting each larger game to the smaller `K` reproduces the smaller game.
pub fn check_nested_family(family: &[CoalitionGame]) -> Result<()> {
    for pair in family.windows(2) {
        let (small, large) = (&pair[0], &pair[1]);
        if small.max_coalition() >= large.max_coalition() {
            return Err(Error::NotNested(format!(
                "family must have strictly increasing K, found {} then {}",
                small.max_coalition(),
                large.max_coalition()
            )));
        }
        embed(small, large)?;
        let restricted = large
            .restrict(small.max_coalition())
            .map_err(|e| Error::NotNested(format!("cannot restrict K = {}: {e}", large.max_coalition())))?;
        embed(&restricted, small)?;
        embed(small, &restricted)?;
    }
    Ok(())
}

/// Scans `K = K0, K0 + 1, …` and reports the largest `K` at which the lifted equilibrium
/// `result` of `Γ(K0)` is still an exact equilibrium with unchanged support.
pub fn stability_k_star(
    family: &[CoalitionGame],
    k0: usize,
    result: &EquilibriumResult<Rational>,
    config: &SolverConfig,
) -> Result<StabilityReport> {
    let mut sorted: Vec<&CoalitionGame> = family.iter().collect();
    sorted.sort_by_key(|g| g.max_coalition());
    let owned: Vec<CoalitionGame> = sorted.iter().map(|g| (*g).clone()).collect();
    check_nested_family(&owned)?;
    let base = owned
        .iter()
        .find(|g| g.max_coalition() == k0)
        .ok_or_else(|| Error::InvalidArgument(format!("the family has no game with K = {k0}")))?;
    result.profile.check(base)?;
    let base_check = verify_epsilon_nash(base, &result.profile, 0.0)?;
    if !base_check.passed {
        return Err(Error::InvalidArgument(format!(
            "the profile is not an exact equilibrium of the K = {k0} game (max regret {})",
            base_check.max_regret
        )));
    }

    let mut checks = Vec::new();
    let mut k_star = k0;
    for game in owned.iter().filter(|g| g.max_coalition() >= k0) {
        let embedding = embed(base, game)?;
        let lifted = lift_profile(&embedding, &result.profile, game)?;
        let v = verify_epsilon_nash(game, &lifted, 0.0)?;
        let domain_ok = compare_domains(base, &result.profile, game, &lifted)?;
        let dominating = if game.max_coalition() > k0 {
            dominating_equilibria(game, &v.expected_payoffs, config)?
        } else {
            Vec::new()
        };
        let check = StabilityCheck {
            k: game.max_coalition(),
            payoff_ok: v.passed,
            domain_ok,
            max_regret: v.max_regret,
            expected_payoffs: v.expected_payoffs,
            dominating,
        };
        let passed = check.passed();
        checks.push(check);
        if !passed {
            break;
        }
        k_star = game.max_coalition();
    }
    Ok(StabilityReport { k0, k_star, checks })
}

fn dominating_equilibria(
    game: &CoalitionGame,
    reference: &[Rational],
    config: &SolverConfig,
) -> Result<Vec<DominatingEquilibrium>> {
    let candidates = if game.n_players() == 2 {
        mixed_nash_2p_support_enum(game, config)?.equilibria
    } else {
        pure_nash_enumerate(game)
    };
    Ok(candidates
        .into_iter()
        .filter(|e| pareto_dominates(&e.expected_payoffs, reference))
        .map(|e| DominatingEquilibrium { profile: e.profile, expected_payoffs: e.expected_payoffs })
        .collect())
}

/// Whether `a` is at least `b` for every player and strictly more for one.
pub fn pareto_dominates(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Total probability of a distribution; exactly one for exact profiles.
pub fn total_probability<T: Scalar>(set: &EquilibriumPartitionSet<T>) -> T {
    set.entries.iter().fold(T::zero(), |acc, (_, p)| acc + p.clone())
}
