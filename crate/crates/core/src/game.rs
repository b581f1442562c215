//! The game `Γ(K)`: strategy sets, formation mechanism and partition-specific payoffs.
//!
//! Pure strategies are pairs of a desired coalition structure and an action.
//! Profiles are addressed by a flat mixed-radix index with player 0 most
//! significant, so iterating indices visits profiles in lexicographic order.
//! The realized coalition structure of every profile is computed once, when the
//! game is built, and a game that fails validation cannot be constructed.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Coalition, CoalitionStructure, PartitionFamily, MAX_PLAYERS};
use crate::Rational;

/// Upper bound on the size of a profile space.
pub const MAX_PROFILES: usize = 1 << 24;

/// Name of an action taken inside the realized structure, e.g. `"H"` or `"stag"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionLabel(String);

impl ActionLabel {
    /// Wraps a non-empty token.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::InvalidArgument(String::from("action labels cannot be empty")));
        }
        Ok(Self(name))
    }

    /// The label text.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ActionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A pure strategy: the coalition structure a player asks for and what it does there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy {
    desired: CoalitionStructure,
    action: ActionLabel,
}

impl Strategy {
    /// Pairs a desired structure with an action.
    pub fn new(desired: CoalitionStructure, action: ActionLabel) -> Self {
        Self { desired, action }
    }

    /// Convenience constructor; panics on an empty action label.
    pub fn labelled(desired: CoalitionStructure, action: &str) -> Self {
        Self::new(desired, ActionLabel::new(action).expect("non-empty action label"))
    }

    /// The desired coalition structure.
    pub fn desired(&self) -> &CoalitionStructure {
        &self.desired
    }

    /// The action.
    pub fn action(&self) -> &ActionLabel {
        &self.action
    }
}

/// One strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile(Vec<usize>);

impl StrategyProfile {
    /// Wraps per-player strategy indices.
    pub fn new(choices: Vec<usize>) -> Self {
        Self(choices)
    }

    /// Per-player strategy indices.
    pub fn choices(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for StrategyProfile {
    fn from(choices: Vec<usize>) -> Self {
        Self(choices)
    }
}

/// Mixed-radix indexing of the Cartesian product of strategy sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileSpace {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl ProfileSpace {
    /// Space for the given strategy-set sizes.
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        let mut strides = vec![0; sizes.len()];
        let mut len: usize = 1;
        for i in (0..sizes.len()).rev() {
            if sizes[i] == 0 {
                return Err(Error::Validation(alloc::format!("player {i} has no strategies")));
            }
            strides[i] = len;
            len = len
                .checked_mul(sizes[i])
                .filter(|&l| l <= MAX_PROFILES)
                .ok_or_else(|| Error::Validation(alloc::format!("more than {MAX_PROFILES} strategy profiles")))?;
        }
        Ok(Self { sizes, strides, len })
    }

    /// Number of profiles.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always `false`: every player has a strategy.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Strategy-set size per player.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Index distance between consecutive strategies of `player`.
    pub fn stride(&self, player: usize) -> usize {
        self.strides[player]
    }

    /// Flat index of a profile, checking ranges.
    pub fn index(&self, profile: &StrategyProfile) -> Result<usize> {
        let choices = profile.choices();
        if choices.len() != self.sizes.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "profile has {} entries, game has {} players",
                choices.len(),
                self.sizes.len()
            )));
        }
        let mut index = 0;
        for (player, (&c, &size)) in choices.iter().zip(&self.sizes).enumerate() {
            if c >= size {
                return Err(Error::InvalidArgument(alloc::format!(
                    "player {player} has {size} strategies, profile picks {c}"
                )));
            }
            index += c * self.strides[player];
        }
        Ok(index)
    }

    /// Strategy index of `player` at flat index `index`.
    pub fn choice(&self, index: usize, player: usize) -> usize {
        (index / self.strides[player]) % self.sizes[player]
    }

    /// Profile at a flat index.
    pub fn profile(&self, index: usize) -> StrategyProfile {
        StrategyProfile((0..self.sizes.len()).map(|p| self.choice(index, p)).collect())
    }

    /// Flat index after `player` switches to `strategy`.
    pub fn with_choice(&self, index: usize, player: usize, strategy: usize) -> usize {
        let current = self.choice(index, player);
        index - current * self.strides[player] + strategy * self.strides[player]
    }
}

/// Rule mapping strategy profiles to realized coalition structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MechanismRule {
    /// A coalition with two or more members forms exactly when every member's
    /// desired structure contains it as a block; everyone else stays alone.
    Unanimity,
    /// Explicit realized structure per profile, indexed by flat profile index.
    Table(Vec<CoalitionStructure>),
}

/// Structure formed under the unanimity rule when player `i` desires `desires[i]`.
pub fn unanimity_outcome(desires: &[&CoalitionStructure]) -> CoalitionStructure {
    let n = desires.len();
    let mut blocks: Vec<Coalition> = Vec::new();
    let mut placed = 0u64;
    for player in 0..n {
        if placed & (1 << player) != 0 {
            continue;
        }
        let wanted = desires[player].block_of(player);
        let agreed = wanted.len() >= 2 && wanted.members().all(|m| desires[m].block_of(m) == wanted);
        let block = if agreed { *wanted } else { Coalition::singleton(player) };
        placed |= block.mask();
        blocks.push(block);
    }
    CoalitionStructure::from_coalitions(n, &blocks).expect("agreed blocks are disjoint and cover the players")
}

/// Exact payoff vectors per profile, with a float copy for the iterative solver.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTable {
    n_players: usize,
    exact: Vec<Rational>,
    approx: Vec<f64>,
}

impl PayoffTable {
    fn new(n_players: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut exact = Vec::with_capacity(rows.len() * n_players);
        for (index, row) in rows.into_iter().enumerate() {
            if row.len() != n_players {
                return Err(Error::Validation(alloc::format!(
                    "profile {index} has {} payoffs, expected {n_players}",
                    row.len()
                )));
            }
            exact.extend(row);
        }
        let approx = exact.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>();
        if approx.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation(String::from("payoffs must be finite")));
        }
        Ok(Self { n_players, exact, approx })
    }

    /// Exact payoff of `player` at flat profile index `profile`.
    pub fn exact(&self, profile: usize, player: usize) -> &Rational {
        &self.exact[profile * self.n_players + player]
    }

    /// Float payoff of `player` at flat profile index `profile`.
    pub fn approx(&self, profile: usize, player: usize) -> f64 {
        self.approx[profile * self.n_players + player]
    }

    /// Exact payoff vector at a flat profile index.
    pub fn vector(&self, profile: usize) -> &[Rational] {
        &self.exact[profile * self.n_players..(profile + 1) * self.n_players]
    }
}

/// Profiles grouped by the coalition structure they realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainDecomposition {
    domains: Vec<(CoalitionStructure, Vec<usize>)>,
}

impl DomainDecomposition {
    /// `(structure, flat profile indices)` pairs in family order; only non-empty domains.
    pub fn domains(&self) -> &[(CoalitionStructure, Vec<usize>)] {
        &self.domains
    }

    /// Flat profile indices realizing `structure` (empty if none).
    pub fn domain(&self, structure: &CoalitionStructure) -> &[usize] {
        self.domains.iter().find(|(s, _)| s == structure).map(|(_, d)| d.as_slice()).unwrap_or(&[])
    }

    /// Number of non-empty domains.
    pub fn len(&self) -> usize {
        self.domains.len()
    }

    /// `true` only for a decomposition with no domains.
    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }
}

/// A validated game `Γ(K)`.
#[derive(Debug, Clone)]
pub struct CoalitionGame {
    max_coalition: usize,
    family: PartitionFamily,
    strategies: Vec<Vec<Strategy>>,
    space: ProfileSpace,
    mechanism: MechanismRule,
    payoffs: PayoffTable,
    realized: Vec<u32>,
}

impl CoalitionGame {
    /// Builds and validates a game from an explicit payoff row per flat profile index.
    pub fn new(
        max_coalition: usize,
        strategies: Vec<Vec<Strategy>>,
        mechanism: MechanismRule,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let (family, space) = Self::check_strategies(max_coalition, &strategies)?;
        let realized = compute_realized(&family, &strategies, &space, &mechanism)?;
        if payoffs.len() != space.len() {
            return Err(Error::Validation(alloc::format!(
                "payoff table has {} rows for {} profiles",
                payoffs.len(),
                space.len()
            )));
        }
        let payoffs = PayoffTable::new(strategies.len(), payoffs)?;
        Ok(Self { max_coalition, family, strategies, space, mechanism, payoffs, realized })
    }

    /// Builds a game whose payoffs are computed from each profile's strategies and realized structure.
    pub fn from_fn<F>(
        max_coalition: usize,
        strategies: Vec<Vec<Strategy>>,
        mechanism: MechanismRule,
        mut payoff: F,
    ) -> Result<Self>
    where
        F: FnMut(&[&Strategy], &CoalitionStructure) -> Vec<Rational>,
    {
        let (family, space) = Self::check_strategies(max_coalition, &strategies)?;
        let realized = compute_realized(&family, &strategies, &space, &mechanism)?;
        let mut rows = Vec::with_capacity(space.len());
        let mut chosen: Vec<&Strategy> = Vec::with_capacity(strategies.len());
        for (index, &r) in realized.iter().enumerate() {
            chosen.clear();
            chosen.extend((0..strategies.len()).map(|p| &strategies[p][space.choice(index, p)]));
            rows.push(payoff(&chosen, &family.structures()[r as usize]));
        }
        let payoffs = PayoffTable::new(strategies.len(), rows)?;
        Ok(Self { max_coalition, family, strategies, space, mechanism, payoffs, realized })
    }

    fn check_strategies(k: usize, strategies: &[Vec<Strategy>]) -> Result<(PartitionFamily, ProfileSpace)> {
        let n = strategies.len();
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::Validation(alloc::format!("player count must lie in 1..={MAX_PLAYERS}, got {n}")));
        }
        if k < 1 || k > n {
            return Err(Error::Validation(alloc::format!("maximum coalition size must lie in 1..={n}, got {k}")));
        }
        let family = enumerate_partitions(n, k)?;
        for (player, set) in strategies.iter().enumerate() {
            for (i, s) in set.iter().enumerate() {
                if s.desired.n_players() != n {
                    return Err(Error::Validation(alloc::format!(
                        "player {player} strategy {i} desires a partition of {} players",
                        s.desired.n_players()
                    )));
                }
                if s.desired.max_block_size() > k {
                    return Err(Error::Validation(alloc::format!(
                        "player {player} strategy {i} desires {} which has a block larger than K = {k}",
                        s.desired
                    )));
                }
                if set[..i].contains(s) {
                    return Err(Error::Validation(alloc::format!(
                        "player {player} lists strategy ({}, {}) twice",
                        s.desired,
                        s.action
                    )));
                }
            }
        }
        let space = ProfileSpace::new(strategies.iter().map(Vec::len).collect())?;
        Ok((family, space))
    }

    /// Number of players.
    pub fn n_players(&self) -> usize {
        self.strategies.len()
    }

    /// Maximum coalition size `K`.
    pub fn max_coalition(&self) -> usize {
        self.max_coalition
    }

    /// `𝒫(K)`.
    pub fn family(&self) -> &PartitionFamily {
        &self.family
    }

    /// Strategy set of `player`.
    pub fn strategies(&self, player: usize) -> &[Strategy] {
        &self.strategies[player]
    }

    /// All strategy sets.
    pub fn strategy_sets(&self) -> &[Vec<Strategy>] {
        &self.strategies
    }

    /// Index of `strategy` in the set of `player`.
    pub fn strategy_index(&self, player: usize, strategy: &Strategy) -> Option<usize> {
        self.strategies.get(player)?.iter().position(|s| s == strategy)
    }

    /// The profile space.
    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    /// The formation mechanism.
    pub fn mechanism(&self) -> &MechanismRule {
        &self.mechanism
    }

    /// The payoff table.
    pub fn payoffs(&self) -> &PayoffTable {
        &self.payoffs
    }

    /// Family index of the structure realized at flat profile index `profile`.
    pub fn realized_index(&self, profile: usize) -> usize {
        self.realized[profile] as usize
    }

    /// Structure realized at flat profile index `profile`.
    pub fn realized_at(&self, profile: usize) -> &CoalitionStructure {
        &self.family.structures()[self.realized[profile] as usize]
    }

    /// Structure the mechanism assigns to `profile`.
    pub fn realized_partition(&self, profile: &StrategyProfile) -> Result<&CoalitionStructure> {
        Ok(self.realized_at(self.space.index(profile)?))
    }

    /// Payoff vector of `profile`.
    pub fn payoff(&self, profile: &StrategyProfile) -> Result<&[Rational]> {
        Ok(self.payoffs.vector(self.space.index(profile)?))
    }

    /// Re-evaluates the mechanism on every profile and groups profiles by realized structure.
    pub fn validate_domains(&self) -> Result<DomainDecomposition> {
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); self.family.len()];
        let mut desires: Vec<&CoalitionStructure> = Vec::with_capacity(self.n_players());
        for index in 0..self.space.len() {
            let structure = match &self.mechanism {
                MechanismRule::Unanimity => {
                    desires.clear();
                    desires.extend(
                        (0..self.n_players()).map(|p| &self.strategies[p][self.space.choice(index, p)].desired),
                    );
                    unanimity_outcome(&desires)
                }
                MechanismRule::Table(table) => {
                    table.get(index).cloned().ok_or_else(|| not_total(&self.space, index))?
                }
            };
            let slot = self
                .family
                .index_of(&structure)
                .ok_or_else(|| outside_family(&self.space, index, &structure, self.max_coalition))?;
            buckets[slot].push(index);
        }
        let covered: usize = buckets.iter().map(Vec::len).sum();
        if covered != self.space.len() {
            return Err(Error::Validation(alloc::format!("domains cover {covered} of {} profiles", self.space.len())));
        }
        let domains = self.family.structures().iter().cloned().zip(buckets).filter(|(_, d)| !d.is_empty()).collect();
        Ok(DomainDecomposition { domains })
    }

    /// The nested subgame `Γ(k)`: strategies whose desired structure lies in `𝒫(k)`,
    /// with mechanism and payoffs restricted accordingly.
    pub fn restrict(&self, k: usize) -> Result<CoalitionGame> {
        if k < 1 || k > self.max_coalition {
            return Err(Error::InvalidArgument(alloc::format!(
                "restriction size must lie in 1..={}, got {k}",
                self.max_coalition
            )));
        }
        if k == self.max_coalition {
            return Ok(self.clone());
        }
        let keep: Vec<Vec<usize>> = self
            .strategies
            .iter()
            .map(|set| (0..set.len()).filter(|&i| set[i].desired.max_block_size() <= k).collect())
            .collect();
        if let Some(player) = keep.iter().position(Vec::is_empty) {
            return Err(Error::Validation(alloc::format!(
                "player {player} has no strategy whose desired structure fits K = {k}"
            )));
        }
        let strategies: Vec<Vec<Strategy>> = keep
            .iter()
            .enumerate()
            .map(|(p, idx)| idx.iter().map(|&i| self.strategies[p][i].clone()).collect())
            .collect();
        let small = ProfileSpace::new(keep.iter().map(Vec::len).collect())?;
        let lift = |index: usize| -> usize {
            (0..keep.len()).map(|p| keep[p][small.choice(index, p)] * self.space.stride(p)).sum()
        };
        let mechanism = match &self.mechanism {
            MechanismRule::Unanimity => MechanismRule::Unanimity,
            MechanismRule::Table(_) => {
                MechanismRule::Table((0..small.len()).map(|i| self.realized_at(lift(i)).clone()).collect())
            }
        };
        let payoffs = (0..small.len()).map(|i| self.payoffs.vector(lift(i)).to_vec()).collect();
        CoalitionGame::new(k, strategies, mechanism, payoffs)
    }

    /// Sum of payoffs over the members of `coalition`, which must be a realized block of `profile`.
    pub fn coalition_value(&self, profile: &StrategyProfile, coalition: &Coalition) -> Result<Rational> {
        let index = self.space.index(profile)?;
        if !self.realized_at(index).has_block(coalition) {
            return Err(Error::InvalidArgument(alloc::format!(
                "{coalition} is not a block of the realized structure {}",
                self.realized_at(index)
            )));
        }
        Ok(coalition.members().fold(Rational::zero(), |acc, m| acc + self.payoffs.exact(index, m)))
    }
}

fn not_total(space: &ProfileSpace, index: usize) -> Error {
    Error::Validation(alloc::format!("mechanism table has no entry for profile {:?}", space.profile(index).choices()))
}

fn outside_family(space: &ProfileSpace, index: usize, structure: &CoalitionStructure, k: usize) -> Error {
    Error::Validation(alloc::format!(
        "profile {:?} realizes {} which is not in the family for K = {k}",
        space.profile(index).choices(),
        structure
    ))
}

fn compute_realized(
    family: &PartitionFamily,
    strategies: &[Vec<Strategy>],
    space: &ProfileSpace,
    mechanism: &MechanismRule,
) -> Result<Vec<u32>> {
    let n = strategies.len();
    if let MechanismRule::Table(table) = mechanism {
        if table.len() != space.len() {
            return Err(Error::Validation(alloc::format!(
                "mechanism table has {} entries for {} profiles",
                table.len(),
                space.len()
            )));
        }
    }
    let mut realized = Vec::with_capacity(space.len());
    let mut desires: Vec<&CoalitionStructure> = Vec::with_capacity(n);
    for index in 0..space.len() {
        let slot = match mechanism {
            MechanismRule::Unanimity => {
                desires.clear();
                desires.extend((0..n).map(|p| &strategies[p][space.choice(index, p)].desired));
                let structure = unanimity_outcome(&desires);
                family.index_of(&structure)
            }
            MechanismRule::Table(table) => family.index_of(&table[index]),
        };
        let slot = match slot {
            Some(s) => s,
            None => {
                let structure = match mechanism {
                    MechanismRule::Table(table) => table[index].clone(),
                    MechanismRule::Unanimity => unreachable!("unanimity only forms desired blocks"),
                };
                return Err(outside_family(space, index, &structure, family.max_block()));
            }
        };
        realized.push(slot as u32);
    }
    Ok(realized)
}

/// Realized structure of `profile` under the game's mechanism.
pub fn realized_partition<'g>(game: &'g CoalitionGame, profile: &StrategyProfile) -> Result<&'g CoalitionStructure> {
    game.realized_partition(profile)
}

/// Payoff vector of `profile`.
pub fn payoff<'g>(game: &'g CoalitionGame, profile: &StrategyProfile) -> Result<&'g [Rational]> {
    game.payoff(profile)
}

/// Groups all profiles by realized structure, checking that domains are disjoint and covering.
pub fn validate_domains(game: &CoalitionGame) -> Result<DomainDecomposition> {
    game.validate_domains()
}

/// The nested subgame with maximum coalition size `k`.
pub fn restrict_game(game: &CoalitionGame, k: usize) -> Result<CoalitionGame> {
    game.restrict(k)
}

/// Total payoff of the members of a realized block.
pub fn coalition_value(game: &CoalitionGame, profile: &StrategyProfile, coalition: &Coalition) -> Result<Rational> {
    game.coalition_value(profile, coalition)
}

/// How the strategies of a smaller game sit inside a larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    maps: Vec<Vec<usize>>,
}

impl Embedding {
    /// Index in the larger game of `player`'s strategy `strategy` from the smaller game.
    pub fn map(&self, player: usize, strategy: usize) -> usize {
        self.maps[player][strategy]
    }

    /// Per-player index maps.
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Lifts a pure profile of the smaller game.
    pub fn lift(&self, profile: &StrategyProfile) -> StrategyProfile {
        StrategyProfile(profile.choices().iter().enumerate().map(|(p, &c)| self.maps[p][c]).collect())
    }
}

/// Checks that `small` is nested in `large`: same players, `K_small ≤ K_large`,
/// every strategy of `small` present in `large`, and identical realized
/// structures and payoffs on every profile of `small`.
pub fn embed(small: &CoalitionGame, large: &CoalitionGame) -> Result<Embedding> {
    if small.n_players() != large.n_players() {
        return Err(Error::NotNested(alloc::format!(
            "{} players versus {} players",
            small.n_players(),
            large.n_players()
        )));
    }
    if small.max_coalition > large.max_coalition {
        return Err(Error::NotNested(alloc::format!(
            "K = {} is larger than K = {}",
            small.max_coalition,
            large.max_coalition
        )));
    }
    let mut maps = Vec::with_capacity(small.n_players());
    for player in 0..small.n_players() {
        let mut map = Vec::with_capacity(small.strategies[player].len());
        for s in &small.strategies[player] {
            let j = large.strategy_index(player, s).ok_or_else(|| {
                Error::NotNested(alloc::format!(
                    "strategy ({}, {}) of player {player} is missing from the larger game",
                    s.desired,
                    s.action
                ))
            })?;
            map.push(j);
        }
        maps.push(map);
    }
    let embedding = Embedding { maps };
    for index in 0..small.space.len() {
        let lifted = large.space.index(&embedding.lift(&small.space.profile(index)))?;
        if small.realized_at(index) != large.realized_at(lifted) {
            return Err(Error::NotNested(alloc::format!(
                "profile {:?} realizes {} in the smaller game but {} in the larger one",
                small.space.profile(index).choices(),
                small.realized_at(index),
                large.realized_at(lifted)
            )));
        }
        if small.payoffs.vector(index) != large.payoffs.vector(lifted) {
            return Err(Error::NotNested(alloc::format!(
                "payoffs differ on profile {:?}",
                small.space.profile(index).choices()
            )));
        }
    }
    Ok(embedding)
}

/// Short human label for a strategy in a two-player game: `action_alone`,
/// `action_together`, or the action followed by the desired structure.
pub fn strategy_label(strategy: &Strategy, names: &[String]) -> String {
    let d = strategy.desired();
    let n = d.n_players();
    if n == 2 && d.is_singletons() {
        return alloc::format!("{}_alone", strategy.action);
    }
    if n == 2 {
        return alloc::format!("{}_together", strategy.action);
    }
    let mut out = String::new();
    if strategy.action.as_str() != "-" {
        out.push_str(strategy.action.as_str());
        out.push(' ');
    }
    out.push_str(&structure_literal(d, names));
    out
}

/// Renders a structure with player names, e.g. `{A,B}{C}{D}`.
pub fn structure_literal(structure: &CoalitionStructure, names: &[String]) -> String {
    let mut out = String::new();
    for block in structure.blocks() {
        out.push('{');
        for (i, m) in block.members().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match names.get(m) {
                Some(name) => out.push_str(name),
                None => out.push_str(&m.to_string()),
            }
        }
        out.push('}');
    }
    out
}
