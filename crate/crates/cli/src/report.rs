//! Machine-readable reports.
//!
//! Exact numbers are `"p/q"` strings. Float numbers, from the iterative solver, are
//! shortest round-trip decimal strings and their entries carry `"mode": "float"`.

use coalition_forge_core::analysis::{partition_distribution, CooperationReport, StabilityReport as CoreStability};
use coalition_forge_core::catalog::{CatalogEntry, NamedGame};
use coalition_forge_core::game::{strategy_label, structure_literal, CoalitionGame};
use coalition_forge_core::partition::PartitionFamily;
use coalition_forge_core::solver::{EquilibriumResult, MixedProfile};
use coalition_forge_core::{format_rational, parse_rational, ratio, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::gamefile::{partition_literal, PartitionLiteral, SCHEMA_VERSION};

/// A number type that reports know how to write.
pub trait Numeric: Scalar {
    /// `"exact"` or `"float"`.
    const MODE: &'static str;
    /// Text form.
    fn text(&self) -> String;
}

impl Numeric for Rational {
    const MODE: &'static str = "exact";
    fn text(&self) -> String {
        format_rational(self)
    }
}

impl Numeric for f64 {
    const MODE: &'static str = "float";
    fn text(&self) -> String {
        self.to_string()
    }
}

fn texts<T: Numeric>(values: &[T]) -> Vec<String> {
    values.iter().map(Numeric::text).collect()
}

/// Probability of one realized structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionEntry {
    /// The structure.
    pub partition: PartitionLiteral,
    /// Its probability.
    pub probability: String,
}

/// One equilibrium or candidate profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumEntry {
    /// `"exact"` or `"float"`.
    pub mode: String,
    /// Search method tag.
    pub method: String,
    /// Weight of every strategy, per player, in strategy order.
    pub weights: Vec<Vec<String>>,
    /// Expected payoff per player.
    pub expected_payoffs: Vec<String>,
    /// Regret per player.
    pub regrets: Vec<String>,
    /// Largest regret.
    pub max_regret: String,
    /// Whether verification passed.
    pub is_equilibrium: bool,
    /// One representative of a continuum.
    pub degenerate: bool,
    /// Iterations used by the iterative solver.
    pub iterations: usize,
    /// Realized-structure distribution.
    pub partitions: Vec<PartitionEntry>,
}

impl EquilibriumEntry {
    /// Converts a solver result.
    pub fn new<T: Numeric>(game: &CoalitionGame, players: &[String], result: &EquilibriumResult<T>) -> Result<Self> {
        Ok(Self {
            mode: T::MODE.to_string(),
            method: result.method.tag().to_string(),
            weights: result.profile.weights().iter().map(|w| texts(w)).collect(),
            expected_payoffs: texts(&result.expected_payoffs),
            regrets: texts(&result.regrets),
            max_regret: result.max_regret.text(),
            is_equilibrium: result.is_equilibrium,
            degenerate: result.degenerate,
            iterations: result.iterations,
            partitions: distribution(game, players, &result.profile)?,
        })
    }

    /// Parses exact weights back into a profile.
    pub fn exact_profile(&self) -> Result<MixedProfile<Rational>> {
        if self.mode != <Rational as Numeric>::MODE {
            return Err(CliError::Usage(format!("expected exact weights, found mode {:?}", self.mode)));
        }
        parse_weights(&self.weights)
    }
}

/// Partition distribution of any profile.
pub fn distribution<T: Numeric>(
    game: &CoalitionGame,
    players: &[String],
    profile: &MixedProfile<T>,
) -> Result<Vec<PartitionEntry>> {
    Ok(partition_distribution(game, profile)?
        .entries()
        .iter()
        .map(|(s, p)| PartitionEntry { partition: partition_literal(s, players), probability: p.text() })
        .collect())
}

/// Parses `"p/q"` weights into a validated exact profile.
pub fn parse_weights(weights: &[Vec<String>]) -> Result<MixedProfile<Rational>> {
    let rows = weights
        .iter()
        .map(|row| row.iter().map(|w| parse_rational(w).map_err(CliError::from)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(MixedProfile::new(rows)?)
}

/// A profile supplied on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    /// Must equal [`SCHEMA_VERSION`].
    pub schema_version: u32,
    /// Weight of every strategy, per player, as `"p/q"` strings.
    pub weights: Vec<Vec<String>>,
}

impl ProfileFile {
    /// Parses JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProfileFile =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("profile file: {e}")))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!("unsupported schema_version {}", file.schema_version)));
        }
        Ok(file)
    }

    /// Wraps an exact profile.
    pub fn from_profile(profile: &MixedProfile<Rational>) -> Self {
        Self { schema_version: SCHEMA_VERSION, weights: profile.weights().iter().map(|w| texts(w)).collect() }
    }
}

/// Game description shared by several reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSummary {
    /// Catalog id or file path.
    pub id: String,
    /// Player names.
    pub players: Vec<String>,
    /// Maximum coalition size.
    #[serde(rename = "K")]
    pub k: usize,
    /// Strategy labels per player.
    pub strategies: Vec<Vec<String>>,
}

impl GameSummary {
    /// Summarizes a named game.
    pub fn new(named: &NamedGame) -> Self {
        let game = &named.game;
        Self {
            id: named.id.clone(),
            players: named.players.clone(),
            k: game.max_coalition(),
            strategies: game
                .strategy_sets()
                .iter()
                .map(|set| set.iter().map(|s| strategy_label(s, &named.players)).collect())
                .collect(),
        }
    }
}

/// Output of `enumerate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    /// Always 1.
    pub schema_version: u32,
    /// Always `"enumerate"`.
    pub command: String,
    /// Number of players.
    pub n: usize,
    /// Maximum block size.
    #[serde(rename = "K")]
    pub k: usize,
    /// Number of structures.
    pub count: u128,
    /// Structures in enumeration order, players numbered from 1; absent with `--count-only`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partitions: Option<Vec<String>>,
}

impl EnumerateReport {
    /// Builds the report; `family` is `None` when only the count is wanted.
    pub fn new(n: usize, k: usize, count: u128, family: Option<&PartitionFamily>) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Self {
            schema_version: SCHEMA_VERSION,
            command: "enumerate".into(),
            n,
            k,
            count,
            partitions: family.map(|f| f.structures().iter().map(|s| structure_literal(s, &names)).collect()),
        }
    }
}

/// Output of `solve`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Always 1.
    pub schema_version: u32,
    /// Always `"solve"`.
    pub command: String,
    /// The game solved.
    pub game: GameSummary,
    /// Search method tag.
    pub method: String,
    /// Equilibria in deterministic order.
    pub equilibria: Vec<EquilibriumEntry>,
    /// Support enumeration skipped supports above the bound.
    pub truncated: bool,
    /// Flags such as truncation or non-convergence.
    pub diagnostics: Vec<String>,
}

/// Complete-cooperation verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CooperationEntry {
    /// Every support strategy of every member asks for the coalition.
    pub ex_ante: bool,
    /// Every equilibrium structure contains the coalition.
    pub ex_post: bool,
    /// Both.
    pub complete: bool,
}

impl From<&CooperationReport> for CooperationEntry {
    fn from(r: &CooperationReport) -> Self {
        Self { ex_ante: r.ex_ante, ex_post: r.ex_post, complete: r.complete }
    }
}

/// Analysis of one equilibrium.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisEntry {
    /// The profile analysed.
    pub equilibrium: EquilibriumEntry,
    /// More than one structure forms with positive probability; absent if verification failed.
    pub stochastic: Option<bool>,
    /// Verdict for the requested coalition; absent without `--coalition` or if verification failed.
    pub cooperation: Option<CooperationEntry>,
}

/// Output of `analyze`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    /// Always 1.
    pub schema_version: u32,
    /// Always `"analyze"`.
    pub command: String,
    /// The game analysed.
    pub game: GameSummary,
    /// Where the profiles came from.
    pub source: String,
    /// Requested coalition by player name.
    pub coalition: Option<Vec<String>>,
    /// One entry per profile.
    pub analyses: Vec<AnalysisEntry>,
    /// Flags such as failed verification.
    pub diagnostics: Vec<String>,
}

/// Equilibrium of a larger game that Pareto-dominates the lifted profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingEntry {
    /// Weights per player.
    pub weights: Vec<Vec<String>>,
    /// Expected payoffs.
    pub expected_payoffs: Vec<String>,
}

/// Stability check at one `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// Maximum coalition size.
    #[serde(rename = "K")]
    pub k: usize,
    /// The lifted profile is an exact equilibrium.
    pub payoff_ok: bool,
    /// The support is unchanged.
    pub domain_ok: bool,
    /// Both.
    pub passed: bool,
    /// Largest regret of the lifted profile.
    pub max_regret: String,
    /// Expected payoffs of the lifted profile.
    pub expected_payoffs: Vec<String>,
    /// Equilibria that Pareto-dominate it.
    pub dominating: Vec<DominatingEntry>,
}

/// Stability scan from one equilibrium of `Γ(K0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRun {
    /// The starting equilibrium.
    pub equilibrium: EquilibriumEntry,
    /// Largest `K` up to which every check passed.
    #[serde(rename = "K_star")]
    pub k_star: usize,
    /// Per-`K` checks.
    pub checks: Vec<CheckEntry>,
}

impl StabilityRun {
    /// Converts a core report.
    pub fn new(equilibrium: EquilibriumEntry, report: &CoreStability) -> Self {
        let checks = report
            .checks
            .iter()
            .map(|c| CheckEntry {
                k: c.k,
                payoff_ok: c.payoff_ok,
                domain_ok: c.domain_ok,
                passed: c.passed(),
                max_regret: c.max_regret.text(),
                expected_payoffs: texts(&c.expected_payoffs),
                dominating: c
                    .dominating
                    .iter()
                    .map(|d| DominatingEntry {
                        weights: d.profile.weights().iter().map(|w| texts(w)).collect(),
                        expected_payoffs: texts(&d.expected_payoffs),
                    })
                    .collect(),
            })
            .collect();
        Self { equilibrium, k_star: report.k_star, checks }
    }
}

/// Output of `stability`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Always 1.
    pub schema_version: u32,
    /// Always `"stability"`.
    pub command: String,
    /// Family id or file list.
    pub family: String,
    /// Player names.
    pub players: Vec<String>,
    /// Strategy labels of `Γ(K0)` per player.
    pub strategies: Vec<Vec<String>>,
    /// Starting maximum coalition size.
    #[serde(rename = "K0")]
    pub k0: usize,
    /// `K*` when every run agrees.
    #[serde(rename = "K_star")]
    pub k_star: Option<usize>,
    /// One scan per starting equilibrium.
    pub runs: Vec<StabilityRun>,
    /// Flags such as Pareto-dominating equilibria.
    pub diagnostics: Vec<String>,
}

/// A catalog parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterEntry {
    /// Name.
    pub name: String,
    /// Default as `"p/q"`.
    pub default: String,
    /// Zero accepted as well as positive values.
    pub allow_zero: bool,
}

/// A catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogItem {
    /// Identifier.
    pub id: String,
    /// Description.
    pub description: String,
    /// Source of the payoffs.
    pub citation: String,
    /// Player names.
    pub players: Vec<String>,
    /// Maximum coalition size.
    #[serde(rename = "K")]
    pub k: usize,
    /// Parameters.
    pub parameters: Vec<ParameterEntry>,
}

impl From<&CatalogEntry> for CatalogItem {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            id: e.id.into(),
            description: e.description.into(),
            citation: e.citation.into(),
            players: e.players.iter().map(|s| s.to_string()).collect(),
            k: e.max_coalition,
            parameters: e
                .parameters
                .iter()
                .map(|p| ParameterEntry {
                    name: p.name.into(),
                    default: format_rational(&ratio(p.default.0, p.default.1)),
                    allow_zero: p.allow_zero,
                })
                .collect(),
        }
    }
}

/// Output of `catalog`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    /// Always 1.
    pub schema_version: u32,
    /// Always `"catalog"`.
    pub command: String,
    /// Entries.
    pub entries: Vec<CatalogItem>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}
