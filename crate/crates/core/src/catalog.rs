//! Builders for the reference games and a small registry over them.
//!
//! Two-player games list strategies as `alone` then `together`, each with the
//! actions in a fixed order (`L, H` for the dilemma games, `B, O` for the
//! coordination game, `hare, stag` for the hunting game). The lunch game gives
//! every player all fifteen partitions of four players, in enumeration order,
//! with the placeholder action `-`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{CoalitionGame, MechanismRule, Strategy};
use crate::partition::{enumerate_partitions, CoalitionStructure};
use crate::solver::MixedProfile;
use crate::{int, ratio, Rational};

/// Action placeholder for games without intra-coalition actions.
pub const NO_ACTION: &str = "-";

fn two_player_strategies(actions: [&str; 2], with_together: bool) -> Vec<Strategy> {
    let mut set = Vec::new();
    for desired in [CoalitionStructure::singletons(2), CoalitionStructure::grand(2)] {
        if desired.is_singletons() || with_together {
            for a in actions {
                set.push(Strategy::labelled(desired.clone(), a));
            }
        }
    }
    set
}

fn pd_base(a: &str, b: &str) -> [i64; 2] {
    match (a, b) {
        ("L", "L") => [0, 0],
        ("L", "H") => [-5, 3],
        ("H", "L") => [3, -5],
        _ => [-2, -2],
    }
}

fn pd_game<F>(k: usize, bonus: F) -> Result<CoalitionGame>
where
    F: Fn(&[&Strategy], &CoalitionStructure) -> [Rational; 2],
{
    let set = two_player_strategies(["L", "H"], k == 2);
    CoalitionGame::from_fn(k, vec![set.clone(), set], MechanismRule::Unanimity, |s, realized| {
        let base = pd_base(s[0].action().as_str(), s[1].action().as_str());
        let [b0, b1] = bonus(s, realized);
        vec![int(base[0]) + b0, int(base[1]) + b1]
    })
}

fn positive(name: &str, value: &Rational) -> Result<()> {
    if *value > Rational::zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {value}")))
    }
}

/// Prisoner's dilemma with separate play only: `K = 1`, actions `L` and `H`.
pub fn build_pd_standard() -> CoalitionGame {
    pd_game(1, |_, _| [Rational::zero(), Rational::zero()]).expect("fixed game is valid")
}

/// The dilemma with an extra choice to play together: `K = 2`, four strategies,
/// payoffs independent of the realized structure.
pub fn build_pd_extended() -> CoalitionGame {
    pd_game(2, |_, _| [Rational::zero(), Rational::zero()]).expect("fixed game is valid")
}

/// Both players earn an extra `eps` whenever the pair forms.
pub fn build_pd_extroverts(eps: Rational) -> Result<CoalitionGame> {
    positive("eps", &eps)?;
    pd_game(2, |_, r| if r.is_singletons() { [Rational::zero(), Rational::zero()] } else { [eps.clone(), eps.clone()] })
}

/// Both players earn an extra `delta` exactly when both asked to stay alone.
pub fn build_pd_introverts(delta: Rational) -> Result<CoalitionGame> {
    positive("delta", &delta)?;
    pd_game(2, |s, _| {
        if s.iter().all(|st| st.desired().is_singletons()) {
            [delta.clone(), delta.clone()]
        } else {
            [Rational::zero(), Rational::zero()]
        }
    })
}

/// Player 1 earns `eps` when the pair forms; player 2 earns `delta` when it does not.
pub fn build_pd_mixed_types(eps: Rational, delta: Rational) -> Result<CoalitionGame> {
    positive("eps", &eps)?;
    positive("delta", &delta)?;
    pd_game(
        2,
        |_, r| {
            if r.is_singletons() {
                [Rational::zero(), delta.clone()]
            } else {
                [eps.clone(), Rational::zero()]
            }
        },
    )
}

/// Coordination game with boxing (`B`) and opera (`O`). Apart, the usual payoffs apply.
/// Together, matching choices add `eps` to both, and a mismatch pays `eps` each.
pub fn build_bos(eps: Rational) -> Result<CoalitionGame> {
    if eps < Rational::zero() {
        return Err(Error::InvalidArgument(format!("eps must be non-negative, got {eps}")));
    }
    let set = two_player_strategies(["B", "O"], true);
    CoalitionGame::from_fn(2, vec![set.clone(), set], MechanismRule::Unanimity, |s, realized| {
        let base = match (s[0].action().as_str(), s[1].action().as_str()) {
            ("B", "B") => Some([2, 1]),
            ("O", "O") => Some([1, 2]),
            _ => None,
        };
        match (realized.is_singletons(), base) {
            (true, Some([a, b])) => vec![int(a), int(b)],
            (true, None) => vec![int(0), int(0)],
            (false, Some([a, b])) => vec![int(a) + &eps, int(b) + &eps],
            (false, None) => vec![eps.clone(), eps.clone()],
        }
    })
}

/// Four players choose lunch seating. A pair eating while the others eat alone
/// pays 10 to the pair and 3 to the others; all alone or two pairs pays 3 each;
/// any table of three or more pays 0 to everyone.
pub fn build_lunch() -> CoalitionGame {
    let family = enumerate_partitions(4, 4).expect("four players");
    let set: Vec<Strategy> = family.structures().iter().map(|p| Strategy::labelled(p.clone(), NO_ACTION)).collect();
    CoalitionGame::from_fn(4, vec![set; 4], MechanismRule::Unanimity, |_, r| lunch_payoff(r))
        .expect("fixed game is valid")
}

fn lunch_payoff(realized: &CoalitionStructure) -> Vec<Rational> {
    if realized.max_block_size() >= 3 {
        return vec![int(0); 4];
    }
    let pairs: Vec<_> = realized.blocks().iter().filter(|b| b.len() == 2).collect();
    match pairs.as_slice() {
        [pair] => (0..4).map(|p| int(if pair.contains(p) { 10 } else { 3 })).collect(),
        _ => vec![int(3); 4],
    }
}

/// Two hunters choose hare or stag, alone or together. A hare is worth 8 to a
/// lone hunter and 4 each when shared; a stag needs both hunters together and is
/// worth 100 each.
pub fn build_stag_hare() -> CoalitionGame {
    let set = two_player_strategies(["hare", "stag"], true);
    CoalitionGame::from_fn(2, vec![set.clone(), set], MechanismRule::Unanimity, |s, realized| {
        let (a, b) = (s[0].action().as_str(), s[1].action().as_str());
        let lone = |x: &str| int(if x == "hare" { 8 } else { 0 });
        if realized.is_singletons() {
            return vec![lone(a), lone(b)];
        }
        match (a, b) {
            ("hare", "hare") => vec![int(4), int(4)],
            ("stag", "stag") => vec![int(100), int(100)],
            _ => vec![lone(a), lone(b)],
        }
    })
    .expect("fixed game is valid")
}

/// A named rational parameter with a default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parameter {
    /// Parameter name as given on the command line.
    pub name: &'static str,
    /// Default as `(numerator, denominator)`.
    pub default: (i64, i64),
    /// Whether zero is allowed (otherwise the value must be positive).
    pub allow_zero: bool,
}

impl Parameter {
    /// Default value.
    pub fn default_value(&self) -> Rational {
        ratio(self.default.0, self.default.1)
    }
}

/// A registry entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Identifier.
    pub id: &'static str,
    /// One-line description.
    pub description: &'static str,
    /// Where the payoffs come from, in words.
    pub citation: &'static str,
    /// Parameters with defaults.
    pub parameters: &'static [Parameter],
    /// Player names.
    pub players: &'static [&'static str],
    /// Maximum coalition size of the built game.
    pub max_coalition: usize,
}

const EPS: Parameter = Parameter { name: "eps", default: (1, 1), allow_zero: false };
const DELTA: Parameter = Parameter { name: "delta", default: (1, 1), allow_zero: false };
const BOS_EPS: Parameter = Parameter { name: "eps", default: (1, 10), allow_zero: true };

const ENTRIES: [CatalogEntry; 8] = [
    CatalogEntry {
        id: "pd-standard",
        description: "prisoner's dilemma, players act separately",
        citation: "standard prisoner's dilemma payoff table, separate play only",
        parameters: &[],
        players: &["1", "2"],
        max_coalition: 1,
    },
    CatalogEntry {
        id: "pd-extended",
        description: "prisoner's dilemma with the option to be together",
        citation: "prisoner's dilemma extended by alone/together choices, structure-independent payoffs",
        parameters: &[],
        players: &["1", "2"],
        max_coalition: 2,
    },
    CatalogEntry {
        id: "pd-extroverts",
        description: "prisoner's dilemma, both players gain eps when together",
        citation: "extended prisoner's dilemma for two extrovert players",
        parameters: &[EPS],
        players: &["1", "2"],
        max_coalition: 2,
    },
    CatalogEntry {
        id: "pd-introverts",
        description: "prisoner's dilemma, both players gain delta when both choose alone",
        citation: "extended prisoner's dilemma for two introvert players",
        parameters: &[DELTA],
        players: &["1", "2"],
        max_coalition: 2,
    },
    CatalogEntry {
        id: "pd-mixed",
        description: "prisoner's dilemma, player 1 extrovert, player 2 introvert",
        citation: "extended prisoner's dilemma for one extrovert and one introvert player",
        parameters: &[EPS, DELTA],
        players: &["1", "2"],
        max_coalition: 2,
    },
    CatalogEntry {
        id: "bos",
        description: "battle of the sexes with the option to go together",
        citation: "battle of the sexes extended by alone/together choices",
        parameters: &[BOS_EPS],
        players: &["Ann", "Bob"],
        max_coalition: 2,
    },
    CatalogEntry {
        id: "lunch",
        description: "four colleagues choose how to share lunch tables",
        citation: "office lunch game payoff table by realized seating",
        parameters: &[],
        players: &["A", "B", "C", "D"],
        max_coalition: 4,
    },
    CatalogEntry {
        id: "stag-hare",
        description: "stag hunt where hunters may hunt alone or together",
        citation: "expanded stag and hare game",
        parameters: &[],
        players: &["1", "2"],
        max_coalition: 2,
    },
];

/// Identifier of the two-game dilemma family (separate play, then with the together option).
pub const PD_FAMILY: &str = "pd";

/// All registry entries.
pub fn entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

/// Entry by id.
pub fn entry(id: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.id == id)
}

/// A built game with its player names.
#[derive(Debug, Clone)]
pub struct NamedGame {
    /// Catalog id or file name.
    pub id: String,
    /// Player names.
    pub players: Vec<String>,
    /// The game.
    pub game: CoalitionGame,
}

/// Resolves parameter overrides against an entry's defaults, in the entry's order.
pub fn resolve_parameters(entry: &CatalogEntry, overrides: &[(String, Rational)]) -> Result<Vec<Rational>> {
    for (name, _) in overrides {
        if !entry.parameters.iter().any(|p| p.name == name) {
            return Err(Error::InvalidArgument(format!("{} has no parameter {name:?}", entry.id)));
        }
    }
    Ok(entry
        .parameters
        .iter()
        .map(|p| {
            overrides
                .iter()
                .rev()
                .find(|(n, _)| n == p.name)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| p.default_value())
        })
        .collect())
}

/// Builds a catalog game by id with optional parameter overrides.
pub fn build(id: &str, overrides: &[(String, Rational)]) -> Result<NamedGame> {
    let entry = entry(id).ok_or_else(|| Error::InvalidArgument(format!("unknown catalog id {id:?}")))?;
    let params = resolve_parameters(entry, overrides)?;
    let game = match id {
        "pd-standard" => build_pd_standard(),
        "pd-extended" => build_pd_extended(),
        "pd-extroverts" => build_pd_extroverts(params[0].clone())?,
        "pd-introverts" => build_pd_introverts(params[0].clone())?,
        "pd-mixed" => build_pd_mixed_types(params[0].clone(), params[1].clone())?,
        "bos" => build_bos(params[0].clone())?,
        "lunch" => build_lunch(),
        "stag-hare" => build_stag_hare(),
        _ => unreachable!("every entry has a builder"),
    };
    Ok(NamedGame { id: id.to_string(), players: entry.players.iter().map(|s| s.to_string()).collect(), game })
}

/// The nested family `Γ(1), …, Γ(K)` for a catalog id. The `pd` family pairs the
/// separate-play dilemma with the extended one; other ids restrict the built game.
pub fn family(id: &str, overrides: &[(String, Rational)]) -> Result<Vec<CoalitionGame>> {
    if id == PD_FAMILY {
        if !overrides.is_empty() {
            return Err(Error::InvalidArgument(String::from("the pd family has no parameters")));
        }
        return Ok(vec![build_pd_standard(), build_pd_extended()]);
    }
    let top = build(id, overrides)?.game;
    (1..=top.max_coalition()).map(|k| top.restrict(k)).collect()
}

/// Player names for a family id.
pub fn family_players(id: &str) -> Option<Vec<String>> {
    let id = if id == PD_FAMILY { "pd-standard" } else { id };
    entry(id).map(|e| e.players.iter().map(|s| s.to_string()).collect())
}

/// Profile of a lunch game (any `K ≥ 2`) in which every player is uniform over the
/// three structures pairing them with one colleague while the other two eat alone.
pub fn lunch_pairing_profile(game: &CoalitionGame) -> Result<MixedProfile<Rational>> {
    if game.n_players() != 4 {
        return Err(Error::InvalidArgument(String::from("the lunch profile needs four players")));
    }
    let third = ratio(1, 3);
    let weights = (0..4)
        .map(|p| {
            let mut row = vec![Rational::zero(); game.strategies(p).len()];
            let mut found = 0;
            for (i, s) in game.strategies(p).iter().enumerate() {
                let d = s.desired();
                let pairs = d.blocks().iter().filter(|b| b.len() == 2).count();
                if d.max_block_size() == 2 && pairs == 1 && d.block_of(p).len() == 2 {
                    row[i] = third.clone();
                    found += 1;
                }
            }
            if found == 3 {
                Ok(row)
            } else {
                Err(Error::InvalidArgument(format!("player {p} lacks the three pairing strategies")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    MixedProfile::new(weights)
}

/// Profile of the mixed-types dilemma where player 1 splits evenly between
/// `H` alone and `H` together and player 2 plays `H` alone.
pub fn pd_mixed_profile() -> MixedProfile<Rational> {
    let half = ratio(1, 2);
    MixedProfile::new(vec![
        vec![Rational::zero(), half.clone(), Rational::zero(), half],
        vec![Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()],
    ])
    .expect("valid distribution")
}

/// A profile the registry singles out for a game, if any.
pub fn reference_profile(id: &str, game: &CoalitionGame) -> Option<MixedProfile<Rational>> {
    match id {
        "lunch" => lunch_pairing_profile(game).ok(),
        "pd-mixed" => Some(pd_mixed_profile()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        assert_eq!(entries().len(), 8);
        for e in entries() {
            let g = build(e.id, &[]).unwrap();
            assert_eq!(g.game.max_coalition(), e.max_coalition);
            assert_eq!(g.players.len(), g.game.n_players());
        }
        assert!(build("nope", &[]).is_err());
        assert!(build("bos", &[("delta".into(), int(1))]).is_err());
        assert!(build("pd-extroverts", &[("eps".into(), int(0))]).is_err());
        assert!(build("bos", &[("eps".into(), int(0))]).is_ok());
        assert!(build("bos", &[("eps".into(), int(-1))]).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(family("pd", &[]).unwrap().len(), 2);
        let lunch = family("lunch", &[]).unwrap();
        let sizes: Vec<usize> = lunch.iter().map(|g| g.strategies(0).len()).collect();
        assert_eq!(sizes, vec![1, 10, 14, 15]);
        assert!(family("pd", &[("eps".into(), int(1))]).is_err());
    }

    #[test]
    fn lunch_profile_shape() {
        let g = build_lunch();
        let p = lunch_pairing_profile(&g).unwrap();
        for player in 0..4 {
            assert_eq!(p.support(player).len(), 3);
        }
        assert!(lunch_pairing_profile(&build_pd_standard()).is_err());
    }
}
