//! JSON game files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "players": ["1", "2"],
//!   "K": 2,
//!   "strategies": [[{"partition": [["1"], ["2"]], "action": "L"}, ...], ...],
//!   "mechanism": "unanimity",
//!   "payoffs": {"0,0": ["0/1", "0/1"], ...}
//! }
//! ```
//!
//! Payoff keys join one strategy index per player with commas. A table mechanism
//! replaces `"unanimity"` with `{"table": {"0,0": [["1"], ["2"]], ...}}`.

use std::collections::{BTreeMap, BTreeSet};

use coalition_forge_core::catalog::NamedGame;
use coalition_forge_core::game::{ActionLabel, CoalitionGame, MechanismRule, ProfileSpace, Strategy};
use coalition_forge_core::partition::CoalitionStructure;
use coalition_forge_core::{format_rational, parse_rational, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Schema version written to and required from every file.
pub const SCHEMA_VERSION: u32 = 1;

/// A partition written as lists of player names.
pub type PartitionLiteral = Vec<Vec<String>>;

/// Serialized game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    /// Must equal [`SCHEMA_VERSION`].
    pub schema_version: u32,
    /// Player names in index order.
    pub players: Vec<String>,
    /// Maximum coalition size.
    #[serde(rename = "K")]
    pub k: usize,
    /// Strategy set of each player.
    pub strategies: Vec<Vec<StrategyEntry>>,
    /// Realization rule.
    pub mechanism: MechanismEntry,
    /// Payoff vector per profile key.
    pub payoffs: BTreeMap<String, Vec<String>>,
}

/// One pure strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyEntry {
    /// Desired structure.
    pub partition: PartitionLiteral,
    /// Action label.
    pub action: String,
}

/// Realization rule in a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MechanismEntry {
    /// Coalitions form by unanimous request.
    Unanimity,
    /// Realized structure per profile key.
    Table(BTreeMap<String, PartitionLiteral>),
}

/// Comma-joined strategy indices, player 0 first.
pub fn profile_key(choices: &[usize]) -> String {
    choices.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_profile_key(key: &str, space: &ProfileSpace) -> Result<usize> {
    let choices: Vec<usize> = key
        .split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Validation(format!("malformed profile key {key:?}")))?;
    space.index(&choices.into()).map_err(|e| CliError::Validation(format!("profile key {key:?}: {e}")))
}

/// Parses a partition literal against the player names.
pub fn parse_partition(literal: &PartitionLiteral, players: &[String]) -> Result<CoalitionStructure> {
    let blocks = literal
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|name| {
                    players
                        .iter()
                        .position(|p| p == name)
                        .ok_or_else(|| CliError::Validation(format!("unknown player {name:?} in partition")))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CoalitionStructure::from_blocks(players.len(), &blocks).map_err(|e| CliError::Validation(e.to_string()))
}

/// Writes a structure as a partition literal.
pub fn partition_literal(structure: &CoalitionStructure, players: &[String]) -> PartitionLiteral {
    structure.blocks().iter().map(|b| b.members().map(|m| players[m].clone()).collect()).collect()
}

impl GameFile {
    /// Parses JSON text; syntax and shape errors are usage errors.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GameFile = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("game file: {e}")))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                file.schema_version
            )));
        }
        Ok(file)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("game files serialize");
        text.push('\n');
        text
    }

    /// Serializes a game.
    pub fn from_game(named: &NamedGame) -> Self {
        let game = &named.game;
        let players = named.players.clone();
        let strategies = game
            .strategy_sets()
            .iter()
            .map(|set| {
                set.iter()
                    .map(|s| StrategyEntry {
                        partition: partition_literal(s.desired(), &players),
                        action: s.action().as_str().to_string(),
                    })
                    .collect()
            })
            .collect();
        let space = game.space();
        let key = |index: usize| profile_key(space.profile(index).choices());
        let mechanism = match game.mechanism() {
            MechanismRule::Unanimity => MechanismEntry::Unanimity,
            MechanismRule::Table(_) => MechanismEntry::Table(
                (0..space.len()).map(|i| (key(i), partition_literal(game.realized_at(i), &players))).collect(),
            ),
        };
        let payoffs = (0..space.len())
            .map(|i| (key(i), game.payoffs().vector(i).iter().map(format_rational).collect()))
            .collect();
        GameFile { schema_version: SCHEMA_VERSION, players, k: game.max_coalition(), strategies, mechanism, payoffs }
    }

    /// Builds and validates the game; everything past JSON shape is a validation error.
    pub fn to_game(&self, id: &str) -> Result<NamedGame> {
        let players = &self.players;
        if players.is_empty() {
            return Err(CliError::Validation("a game needs at least one player".into()));
        }
        let distinct: BTreeSet<&String> = players.iter().collect();
        if distinct.len() != players.len() {
            return Err(CliError::Validation("player names must be distinct".into()));
        }
        if self.strategies.len() != players.len() {
            return Err(CliError::Validation(format!(
                "{} strategy sets for {} players",
                self.strategies.len(),
                players.len()
            )));
        }
        let strategies = self
            .strategies
            .iter()
            .map(|set| {
                set.iter()
                    .map(|s| {
                        let action =
                            ActionLabel::new(s.action.clone()).map_err(|e| CliError::Validation(e.to_string()))?;
                        Ok(Strategy::new(parse_partition(&s.partition, players)?, action))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sizes: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let space = ProfileSpace::new(sizes).map_err(|e| CliError::Validation(e.to_string()))?;

        let mut rows: Vec<Option<Vec<Rational>>> = vec![None; space.len()];
        for (key, values) in &self.payoffs {
            let index = parse_profile_key(key, &space)?;
            let row = values
                .iter()
                .map(|v| parse_rational(v).map_err(|e| CliError::Validation(format!("payoff {key:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if rows[index].replace(row).is_some() {
                return Err(CliError::Validation(format!("duplicate payoff key {key:?}")));
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.ok_or_else(|| {
                    CliError::Validation(format!(
                        "missing payoffs for profile {:?}",
                        profile_key(space.profile(i).choices())
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mechanism = match &self.mechanism {
            MechanismEntry::Unanimity => MechanismRule::Unanimity,
            MechanismEntry::Table(map) => {
                let mut table: Vec<Option<CoalitionStructure>> = vec![None; space.len()];
                for (key, literal) in map {
                    let index = parse_profile_key(key, &space)?;
                    if table[index].replace(parse_partition(literal, players)?).is_some() {
                        return Err(CliError::Validation(format!("duplicate mechanism key {key:?}")));
                    }
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.ok_or_else(|| {
                            CliError::Validation(format!(
                                "mechanism table misses profile {:?}",
                                profile_key(space.profile(i).choices())
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                MechanismRule::Table(table)
            }
        };
        let game = CoalitionGame::new(self.k, strategies, mechanism, rows)?;
        game.validate_domains()?;
        Ok(NamedGame { id: id.to_string(), players: players.clone(), game })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coalition_forge_core::catalog;

    #[test]
    fn catalog_games_round_trip() {
        for e in catalog::entries() {
            let named = catalog::build(e.id, &[]).unwrap();
            let file = GameFile::from_game(&named);
            let back = GameFile::from_json(&file.to_json()).unwrap().to_game(e.id).unwrap();
            let (a, b) = (&back.game, &named.game);
            assert_eq!(a.strategy_sets(), b.strategy_sets(), "{}", e.id);
            assert_eq!(a.payoffs(), b.payoffs(), "{}", e.id);
            assert_eq!(a.max_coalition(), b.max_coalition());
            assert!((0..a.space().len()).all(|i| a.realized_at(i) == b.realized_at(i)));
            assert_eq!(back.players, named.players);
        }
    }

    #[test]
    fn rejects_unknown_keys_and_versions() {
        let mut text = GameFile::from_game(&catalog::build("pd-standard", &[]).unwrap()).to_json();
        text = text.replacen("\"K\"", "\"extra\": 1,\n  \"K\"", 1);
        assert!(matches!(GameFile::from_json(&text), Err(CliError::Usage(_))));
        let mut file = GameFile::from_game(&catalog::build("pd-standard", &[]).unwrap());
        file.schema_version = 2;
        assert!(matches!(GameFile::from_json(&file.to_json()), Err(CliError::Usage(_))));
    }

    #[test]
    fn semantic_problems_are_validation_errors() {
        let named = catalog::build("pd-extended", &[]).unwrap();
        let mut missing = GameFile::from_game(&named);
        missing.payoffs.remove("1,2");
        assert!(matches!(missing.to_game("x"), Err(CliError::Validation(_))));

        let mut too_big = GameFile::from_game(&named);
        too_big.k = 1;
        assert!(matches!(too_big.to_game("x"), Err(CliError::Validation(_))));

        let mut stranger = GameFile::from_game(&named);
        stranger.strategies[0][0].partition = vec![vec!["1".into()], vec!["9".into()]];
        assert!(matches!(stranger.to_game("x"), Err(CliError::Validation(_))));

        let mut bad_value = GameFile::from_game(&named);
        bad_value.payoffs.insert("0,0".into(), vec!["x".into(), "0".into()]);
        assert!(matches!(bad_value.to_game("x"), Err(CliError::Validation(_))));
    }

    #[test]
    fn table_mechanism_round_trips() {
        let named = catalog::build("pd-extended", &[]).unwrap();
        let mut file = GameFile::from_game(&named);
        let table = (0..16)
            .map(|i| {
                let choices = named.game.space().profile(i);
                (profile_key(choices.choices()), partition_literal(named.game.realized_at(i), &named.players))
            })
            .collect();
        file.mechanism = MechanismEntry::Table(table);
        let text = file.to_json();
        assert!(text.contains("\"table\""));
        let back = GameFile::from_json(&text).unwrap().to_game("t").unwrap();
        for i in 0..16 {
            assert_eq!(back.game.realized_at(i), named.game.realized_at(i));
        }
    }
}
