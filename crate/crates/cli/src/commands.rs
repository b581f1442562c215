//! Command-line arguments and command execution.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use coalition_forge_core::analysis::{
    check_nested_family, classify_stochastic, is_complete_cooperation, stability_k_star,
};
use coalition_forge_core::catalog::{self, NamedGame, PD_FAMILY};
use coalition_forge_core::game::{strategy_label, CoalitionGame};
use coalition_forge_core::partition::{enumerate_partitions, restricted_bell, Coalition};
use coalition_forge_core::solver::{
    evaluate_profile, mixed_nash_2p_support_enum, mixed_nash_iterative, pure_nash_enumerate, EquilibriumResult, Method,
    MixedProfile, SolverConfig, Start,
};
use coalition_forge_core::{parse_rational, Rational};

use crate::error::{CliError, Result};
use crate::gamefile::{GameFile, SCHEMA_VERSION};
use crate::render;
use crate::report::{
    self, AnalysisEntry, AnalyzeReport, CatalogItem, CatalogReport, EnumerateReport, EquilibriumEntry, GameSummary,
    Numeric, ProfileFile, SolveReport, StabilityReport, StabilityRun,
};

/// Largest family `enumerate` will list; bigger ones need `--count-only`.
pub const ENUMERATE_LIMIT: u128 = 1_000_000;

/// Starting equilibria tried by `stability` when none is supplied.
pub const STABILITY_RUNS: usize = 32;

/// Build and solve coalition-structure formation games.
#[derive(Debug, Parser)]
#[command(name = "coalition-forge", version, about)]
pub struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Subcommand.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// List coalition structures of n players with blocks of at most K.
    Enumerate {
        /// Number of players.
        #[arg(short = 'n')]
        n: usize,
        /// Largest block size.
        #[arg(short = 'K')]
        k: usize,
        /// Print only the number of structures.
        #[arg(long)]
        count_only: bool,
    },
    /// Find equilibria of a catalog game or game file.
    Solve(SolveArgs),
    /// Partition distribution, stochastic classification and cooperation of equilibria.
    Analyze(AnalyzeArgs),
    /// Largest K up to which an equilibrium survives in a nested family.
    Stability(StabilityArgs),
    /// List catalog games.
    Catalog {
        /// Show one entry in detail.
        #[arg(long)]
        id: Option<String>,
    },
    /// Write a catalog game as a game file.
    Export {
        /// Catalog id.
        id: String,
        /// Parameter overrides such as `eps=1/10`.
        #[arg(long = "param")]
        params: Vec<String>,
        /// Output path; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Equilibrium search method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Support enumeration for two players, iterative otherwise.
    Auto,
    /// All pure equilibria.
    Pure,
    /// All two-player equilibria by support enumeration.
    Support,
    /// Damped fictitious play.
    Iterative,
}

/// Start point of the iterative method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartArg {
    /// Uniform over every strategy set.
    Uniform,
    /// Random interior point drawn from `--seed`.
    Random,
}

/// Arguments of `solve`.
#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    /// Catalog id or game file path.
    pub source: String,
    /// Search method.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Regret tolerance of the iterative method.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Seed of random starts.
    #[arg(long, env = "COALITION_FORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Start point of the iterative method.
    #[arg(long, value_enum, default_value_t = StartArg::Uniform)]
    pub start: StartArg,
    /// Parameter overrides such as `eps=1/10,delta=1`.
    #[arg(long = "param")]
    pub params: Vec<String>,
    /// Largest support size tried by support enumeration.
    #[arg(long)]
    pub max_support: Option<usize>,
    /// Iteration cap of the iterative method.
    #[arg(long, default_value_t = 100_000)]
    pub max_iterations: usize,
    /// Step-size scale of the iterative method, in (0, 1].
    #[arg(long, default_value = "1")]
    pub damping: String,
}

/// Arguments of `analyze`.
#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// Catalog id or game file path.
    pub source: String,
    /// Coalition to test for complete cooperation, as comma-separated player names.
    #[arg(long)]
    pub coalition: Option<String>,
    /// Profile file to analyse instead of solving.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Parameter overrides such as `eps=1/10,delta=1`.
    #[arg(long = "param")]
    pub params: Vec<String>,
    /// Seed of the iterative method when it is needed.
    #[arg(long, env = "COALITION_FORGE_SEED", default_value_t = 0)]
    pub seed: u64,
}

/// Arguments of `stability`.
#[derive(Debug, clap::Args)]
pub struct StabilityArgs {
    /// A catalog id, `pd`, or game files for consecutive K.
    #[arg(required = true)]
    pub sources: Vec<String>,
    /// Starting maximum coalition size.
    #[arg(long = "K0")]
    pub k0: usize,
    /// Profile file of the K0 game to scan instead of the default equilibria.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Parameter overrides such as `eps=1/10`.
    #[arg(long = "param")]
    pub params: Vec<String>,
}

/// Parses `name=value` pairs, comma-separated or repeated.
pub fn parse_params(params: &[String]) -> Result<Vec<(String, Rational)>> {
    let mut out = Vec::new();
    for item in params.iter().flat_map(|p| p.split(',')).filter(|s| !s.trim().is_empty()) {
        let (name, value) =
            item.split_once('=').ok_or_else(|| CliError::Usage(format!("parameter {item:?} is not name=value")))?;
        out.push((name.trim().to_string(), parse_rational(value)?));
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Loads a catalog game by id or a game file by path.
pub fn load(source: &str, params: &[String]) -> Result<NamedGame> {
    let overrides = parse_params(params)?;
    if catalog::entry(source).is_some() {
        return Ok(catalog::build(source, &overrides)?);
    }
    let path = Path::new(source);
    if !path.is_file() {
        return Err(CliError::Usage(format!("{source:?} is neither a catalog id nor a game file")));
    }
    if !overrides.is_empty() {
        return Err(CliError::Usage("--param applies to catalog games only".into()));
    }
    GameFile::from_json(&read(path)?)?.to_game(source)
}

fn load_profile(path: &Path, game: &CoalitionGame) -> Result<MixedProfile<Rational>> {
    let profile = report::parse_weights(&ProfileFile::from_json(&read(path)?)?.weights)?;
    profile.check(game)?;
    Ok(profile)
}

/// Runs a command and returns its standard output.
pub fn execute(cli: &Cli) -> Result<String> {
    let json = cli.json;
    match &cli.command {
        Command::Enumerate { n, k, count_only } => enumerate(*n, *k, *count_only, json),
        Command::Solve(args) => solve(args, json),
        Command::Analyze(args) => analyze(args, json),
        Command::Stability(args) => stability(args, json),
        Command::Catalog { id } => catalog_list(id.as_deref(), json),
        Command::Export { id, params, output } => export(id, params, output.as_deref()),
    }
}

fn enumerate(n: usize, k: usize, count_only: bool, json: bool) -> Result<String> {
    let count = restricted_bell(n, k)?;
    let family = if count_only {
        None
    } else if count > ENUMERATE_LIMIT {
        return Err(CliError::Usage(format!("{count} structures is too many to list; use --count-only")));
    } else {
        Some(enumerate_partitions(n, k)?)
    };
    let report = EnumerateReport::new(n, k, count, family.as_ref());
    Ok(if json { report::to_json(&report) } else { render::enumerate(&report) })
}

fn config(args: &SolveArgs) -> Result<SolverConfig> {
    let config = SolverConfig {
        tolerance: args.tolerance,
        max_support: args.max_support,
        max_iterations: args.max_iterations,
        damping: parse_rational(&args.damping)?,
        rng_seed: args.seed,
        start: match args.start {
            StartArg::Uniform => Start::Uniform,
            StartArg::Random => Start::Random,
        },
    };
    config.validate()?;
    Ok(config)
}

fn entries<T: Numeric>(named: &NamedGame, results: &[EquilibriumResult<T>]) -> Result<Vec<EquilibriumEntry>> {
    results.iter().map(|r| EquilibriumEntry::new(&named.game, &named.players, r)).collect()
}

fn solve(args: &SolveArgs, json: bool) -> Result<String> {
    let named = load(&args.source, &args.params)?;
    let config = config(args)?;
    let game = &named.game;
    let method = match args.method {
        MethodArg::Auto if game.n_players() == 2 => MethodArg::Support,
        MethodArg::Auto => MethodArg::Iterative,
        m => m,
    };
    let mut diagnostics = Vec::new();
    let mut truncated = false;
    let (tag, equilibria) = match method {
        MethodArg::Pure => {
            let found = pure_nash_enumerate(game);
            if found.is_empty() {
                diagnostics.push("no pure equilibrium exists".into());
            }
            (Method::PureEnum, entries(&named, &found)?)
        }
        MethodArg::Support => {
            let search = mixed_nash_2p_support_enum(game, &config)?;
            truncated = search.truncated;
            if truncated {
                diagnostics.push(format!(
                    "supports larger than {} were skipped; raise --max-support to search them",
                    search.max_support
                ));
            }
            for (i, e) in search.equilibria.iter().enumerate() {
                if e.degenerate {
                    diagnostics.push(format!("equilibrium {} is one point of a continuum of equilibria", i + 1));
                }
            }
            (Method::SupportEnum, entries(&named, &search.equilibria)?)
        }
        MethodArg::Iterative | MethodArg::Auto => {
            let result = mixed_nash_iterative(game, &config)?;
            if !result.is_equilibrium {
                diagnostics.push(format!(
                    "did not converge within {} iterations; max regret {}",
                    result.iterations, result.max_regret
                ));
            }
            (Method::Iterative, entries(&named, std::slice::from_ref(&result))?)
        }
    };
    let report = SolveReport {
        schema_version: SCHEMA_VERSION,
        command: "solve".into(),
        game: GameSummary::new(&named),
        method: tag.tag().into(),
        equilibria,
        truncated,
        diagnostics,
    };
    Ok(if json { report::to_json(&report) } else { render::solve(&report, &named) })
}

/// Resolves comma-separated player names to a coalition.
pub fn parse_coalition(text: &str, players: &[String]) -> Result<(Coalition, Vec<String>)> {
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(CliError::Usage("--coalition needs at least one player".into()));
    }
    let members = names
        .iter()
        .map(|n| {
            players
                .iter()
                .position(|p| p == n)
                .ok_or_else(|| CliError::Usage(format!("unknown player {n:?}; players are {}", players.join(", "))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Coalition::new(members)?, names))
}

fn analysis<T: Numeric>(
    named: &NamedGame,
    result: &EquilibriumResult<T>,
    coalition: Option<&Coalition>,
    diagnostics: &mut Vec<String>,
    index: usize,
) -> Result<AnalysisEntry> {
    let equilibrium = EquilibriumEntry::new(&named.game, &named.players, result)?;
    if !result.is_equilibrium {
        diagnostics.push(format!("profile {index} is not an equilibrium (max regret {})", result.max_regret.text()));
        return Ok(AnalysisEntry { equilibrium, stochastic: None, cooperation: None });
    }
    let stochastic = Some(classify_stochastic(&named.game, result)?);
    let cooperation = match coalition {
        Some(c) => Some((&is_complete_cooperation(&named.game, result, c)?).into()),
        None => None,
    };
    Ok(AnalysisEntry { equilibrium, stochastic, cooperation })
}

fn analyze(args: &AnalyzeArgs, json: bool) -> Result<String> {
    let named = load(&args.source, &args.params)?;
    let game = &named.game;
    let coalition = args.coalition.as_deref().map(|c| parse_coalition(c, &named.players)).transpose()?;
    let (members, names) = match coalition {
        Some((c, n)) => (Some(c), Some(n)),
        None => (None, None),
    };
    let mut diagnostics = Vec::new();
    let mut analyses = Vec::new();
    let supplied = match &args.profile {
        Some(path) => Some(("profile file", load_profile(path, game)?)),
        None => catalog::entry(&args.source)
            .and_then(|_| catalog::reference_profile(&args.source, game))
            .map(|p| ("catalog reference profile", p)),
    };
    let source = match supplied {
        Some((label, profile)) => {
            let result = evaluate_profile(game, profile, Method::SupportEnum)?;
            let mut entry = analysis(&named, &result, members.as_ref(), &mut diagnostics, 1)?;
            entry.equilibrium.method = "supplied".into();
            analyses.push(entry);
            label.to_string()
        }
        None if game.n_players() == 2 => {
            let search = mixed_nash_2p_support_enum(game, &SolverConfig::default())?;
            if search.truncated {
                diagnostics.push(format!("supports larger than {} were skipped", search.max_support));
            }
            for (i, r) in search.equilibria.iter().enumerate() {
                analyses.push(analysis(&named, r, members.as_ref(), &mut diagnostics, i + 1)?);
            }
            Method::SupportEnum.tag().to_string()
        }
        None => {
            let config = SolverConfig { rng_seed: args.seed, ..SolverConfig::default() };
            let r = mixed_nash_iterative(game, &config)?;
            analyses.push(analysis(&named, &r, members.as_ref(), &mut diagnostics, 1)?);
            Method::Iterative.tag().to_string()
        }
    };
    let report = AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        command: "analyze".into(),
        game: GameSummary::new(&named),
        source,
        coalition: names,
        analyses,
        diagnostics,
    };
    Ok(if json { report::to_json(&report) } else { render::analyze(&report) })
}

fn stability(args: &StabilityArgs, json: bool) -> Result<String> {
    let overrides = parse_params(&args.params)?;
    let catalog_id = match args.sources.as_slice() {
        [id] if id == PD_FAMILY || catalog::entry(id).is_some() => Some(id.clone()),
        _ => None,
    };
    let (family, players) = match &catalog_id {
        Some(id) => {
            let players = catalog::family_players(id).expect("catalog ids have players");
            (catalog::family(id, &overrides)?, players)
        }
        None => {
            if !overrides.is_empty() {
                return Err(CliError::Usage("--param applies to catalog families only".into()));
            }
            let games = args.sources.iter().map(|s| load(s, &[])).collect::<Result<Vec<_>>>()?;
            let players = games[0].players.clone();
            if let Some(g) = games.iter().find(|g| g.players != players) {
                return Err(CliError::Validation(format!("{} has different players from {}", g.id, games[0].id)));
            }
            let mut family: Vec<CoalitionGame> = games.into_iter().map(|g| g.game).collect();
            family.sort_by_key(|g| g.max_coalition());
            (family, players)
        }
    };
    check_nested_family(&family)?;
    let base = family
        .iter()
        .find(|g| g.max_coalition() == args.k0)
        .ok_or_else(|| CliError::Usage(format!("the family has no game with K = {}", args.k0)))?;
    let named_base = NamedGame { id: args.sources.join(" "), players: players.clone(), game: base.clone() };

    let mut diagnostics = Vec::new();
    let starts: Vec<EquilibriumResult<Rational>> = if let Some(path) = &args.profile {
        vec![evaluate_profile(base, load_profile(path, base)?, Method::SupportEnum)?]
    } else if let Some(p) = catalog_id.as_deref().and_then(|id| catalog::reference_profile(id, base)) {
        vec![evaluate_profile(base, p, Method::SupportEnum)?]
    } else if base.n_players() == 2 {
        mixed_nash_2p_support_enum(base, &SolverConfig::default())?.equilibria
    } else {
        let mut all = pure_nash_enumerate(base);
        if all.len() > STABILITY_RUNS {
            diagnostics.push(format!("scanning the first {STABILITY_RUNS} of {} pure equilibria", all.len()));
            all.truncate(STABILITY_RUNS);
        }
        all
    };
    if starts.is_empty() {
        diagnostics.push(format!("no starting equilibrium found for K = {}", args.k0));
    }

    let config = SolverConfig::default();
    let mut runs = Vec::new();
    for (i, start) in starts.iter().enumerate() {
        let core = stability_k_star(&family, args.k0, start, &config)?;
        for c in &core.checks {
            if !c.dominating.is_empty() {
                let best = &c.dominating[0].expected_payoffs;
                diagnostics.push(format!(
                    "run {}: at K = {}, {} with payoffs such as ({}) Pareto-dominating the lifted payoffs ({})",
                    i + 1,
                    c.k,
                    render::count(c.dominating.len(), "equilibrium", "equilibria"),
                    best.iter().map(Numeric::text).collect::<Vec<_>>().join(", "),
                    c.expected_payoffs.iter().map(Numeric::text).collect::<Vec<_>>().join(", ")
                ));
            }
            if !c.passed() {
                diagnostics.push(format!("run {}: the lifted equilibrium fails at K = {}", i + 1, c.k));
            }
        }
        let entry = EquilibriumEntry::new(base, &players, start)?;
        runs.push(StabilityRun::new(entry, &core));
    }
    let k_star = match runs.first() {
        Some(first) if runs.iter().all(|r| r.k_star == first.k_star) => Some(first.k_star),
        _ => None,
    };
    let report = StabilityReport {
        schema_version: SCHEMA_VERSION,
        command: "stability".into(),
        family: named_base.id.clone(),
        players: players.clone(),
        strategies: base
            .strategy_sets()
            .iter()
            .map(|set| set.iter().map(|s| strategy_label(s, &players)).collect())
            .collect(),
        k0: args.k0,
        k_star,
        runs,
        diagnostics,
    };
    Ok(if json { report::to_json(&report) } else { render::stability(&report) })
}

fn catalog_list(id: Option<&str>, json: bool) -> Result<String> {
    let entries: Vec<CatalogItem> = match id {
        Some(id) => {
            let e = catalog::entry(id).ok_or_else(|| CliError::Usage(format!("unknown catalog id {id:?}")))?;
            vec![e.into()]
        }
        None => catalog::entries().iter().map(CatalogItem::from).collect(),
    };
    let report = CatalogReport { schema_version: SCHEMA_VERSION, command: "catalog".into(), entries };
    Ok(if json { report::to_json(&report) } else { render::catalog(&report) })
}

fn export(id: &str, params: &[String], output: Option<&Path>) -> Result<String> {
    if catalog::entry(id).is_none() {
        return Err(CliError::Usage(format!("unknown catalog id {id:?}")));
    }
    let text = GameFile::from_game(&load(id, params)?).to_json();
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
