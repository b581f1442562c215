//! Plain-text rendering of reports.

use std::fmt::Write;

use coalition_forge_core::catalog::NamedGame;
use coalition_forge_core::game::structure_literal;
use coalition_forge_core::parse_rational;
use coalition_forge_core::solver::is_pure_nash;
use num_traits::{One, Zero};

use crate::report::{
    AnalyzeReport, CatalogItem, CatalogReport, EnumerateReport, EquilibriumEntry, GameSummary, PartitionEntry,
    SolveReport, StabilityReport,
};

/// Equilibria listed in full before the rest are summarized.
pub const LIST_LIMIT: usize = 20;

/// Shortens `"p/1"` to `"p"`; other text is kept.
pub fn number(text: &str) -> String {
    text.strip_suffix("/1").unwrap_or(text).to_string()
}

/// `"1 equilibrium"`, `"3 equilibria"`.
pub fn count(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn numbers(values: &[String]) -> String {
    values.iter().map(|v| number(v)).collect::<Vec<_>>().join(", ")
}

fn literal(p: &PartitionEntry) -> String {
    p.partition.iter().map(|b| format!("{{{}}}", b.join(","))).collect()
}

fn is_zero(text: &str) -> bool {
    parse_rational(text).map(|v| v.is_zero()).unwrap_or(false)
}

/// Payoff matrix of a two-player game: each cell shows the payoff pair and the
/// realized structure, and pure equilibria are starred.
pub fn matrix(named: &NamedGame, labels: &GameSummary) -> String {
    let game = &named.game;
    let space = game.space();
    let (rows, cols) = (space.sizes()[0], space.sizes()[1]);
    let mut cells = vec![vec![String::new(); cols]; rows];
    for (r, row) in cells.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let index = r * space.stride(0) + c * space.stride(1);
            let pay = game.payoffs().vector(index);
            let star = if is_pure_nash(game, index) { " *" } else { "" };
            *cell = format!(
                "({};{}) {}{star}",
                number(&coalition_forge_core::format_rational(&pay[0])),
                number(&coalition_forge_core::format_rational(&pay[1])),
                structure_literal(game.realized_at(index), &named.players)
            );
        }
    }
    let head = labels.strategies[0].iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| cells.iter().map(|row| row[c].len()).chain([labels.strategies[1][c].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let _ = write!(out, "{:head$}", "");
    for (c, w) in widths.iter().enumerate() {
        let _ = write!(out, " | {:w$}", labels.strategies[1][c]);
    }
    out.push('\n');
    for (r, row) in cells.iter().enumerate() {
        let _ = write!(out, "{:head$}", labels.strategies[0][r]);
        for (c, w) in widths.iter().enumerate() {
            let _ = write!(out, " | {:w$}", row[c]);
        }
        out.push('\n');
    }
    out
}

/// One equilibrium with its support, payoffs and structure distribution.
pub fn equilibrium(out: &mut String, number_in_list: usize, e: &EquilibriumEntry, game: &GameSummary) {
    let mut flags = vec![e.method.clone(), e.mode.clone()];
    if !e.is_equilibrium {
        flags.push("NOT verified".into());
    }
    if e.degenerate {
        flags.push("degenerate".into());
    }
    if e.iterations > 0 {
        flags.push(format!("{} iterations", e.iterations));
    }
    let _ = writeln!(out, "equilibrium {number_in_list} [{}] max regret {}", flags.join(", "), number(&e.max_regret));
    for (p, weights) in e.weights.iter().enumerate() {
        let support: Vec<String> = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !is_zero(w))
            .map(|(s, w)| {
                let label = &game.strategies[p][s];
                if parse_rational(w).map(|v| v.is_one()).unwrap_or(false) {
                    label.clone()
                } else {
                    format!("{} {label}", number(w))
                }
            })
            .collect();
        let _ = writeln!(out, "  {}: {}", game.players[p], support.join(" + "));
    }
    let _ = writeln!(out, "  payoffs: ({})", numbers(&e.expected_payoffs));
    let parts: Vec<String> =
        e.partitions.iter().map(|p| format!("{} {}", literal(p), number(&p.probability))).collect();
    let _ = writeln!(out, "  partitions: {}", parts.join(", "));
}

fn list(out: &mut String, entries: &[EquilibriumEntry], game: &GameSummary) {
    for (i, e) in entries.iter().take(LIST_LIMIT).enumerate() {
        equilibrium(out, i + 1, e, game);
    }
    if entries.len() > LIST_LIMIT {
        let _ = writeln!(out, "... {} more (use --json for the full list)", entries.len() - LIST_LIMIT);
    }
}

fn header(out: &mut String, game: &GameSummary) {
    let _ = writeln!(out, "{}: {} players ({}), K = {}", game.id, game.players.len(), game.players.join(", "), game.k);
}

fn diagnostics(out: &mut String, items: &[String]) {
    for d in items {
        let _ = writeln!(out, "note: {d}");
    }
}

/// `solve` output.
pub fn solve(report: &SolveReport, named: &NamedGame) -> String {
    let mut out = String::new();
    header(&mut out, &report.game);
    if named.game.n_players() == 2 {
        out.push_str(&matrix(named, &report.game));
    }
    let _ = writeln!(out, "{} by {}", count(report.equilibria.len(), "equilibrium", "equilibria"), report.method);
    list(&mut out, &report.equilibria, &report.game);
    diagnostics(&mut out, &report.diagnostics);
    out
}

/// `analyze` output.
pub fn analyze(report: &AnalyzeReport) -> String {
    let mut out = String::new();
    header(&mut out, &report.game);
    let _ = writeln!(out, "profiles from {}", report.source);
    for (i, a) in report.analyses.iter().take(LIST_LIMIT).enumerate() {
        equilibrium(&mut out, i + 1, &a.equilibrium, &report.game);
        if let Some(s) = a.stochastic {
            let _ = writeln!(out, "  stochastic: {s}");
        }
        if let (Some(c), Some(names)) = (&a.cooperation, &report.coalition) {
            let _ = writeln!(
                out,
                "  cooperation of {{{}}}: ex ante {}, ex post {}, complete {}",
                names.join(","),
                c.ex_ante,
                c.ex_post,
                c.complete
            );
        }
    }
    if report.analyses.len() > LIST_LIMIT {
        let _ = writeln!(out, "... {} more (use --json for the full list)", report.analyses.len() - LIST_LIMIT);
    }
    diagnostics(&mut out, &report.diagnostics);
    out
}

/// `stability` output.
pub fn stability(report: &StabilityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {} players ({}), K0 = {}",
        report.family,
        report.players.len(),
        report.players.join(", "),
        report.k0
    );
    let summary = GameSummary {
        id: report.family.clone(),
        players: report.players.clone(),
        k: report.k0,
        strategies: report.strategies.clone(),
    };
    for (i, run) in report.runs.iter().enumerate() {
        equilibrium(&mut out, i + 1, &run.equilibrium, &summary);
        for c in &run.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  K = {}: {verdict} (payoff {}, domain {}, max regret {}, payoffs ({}))",
                c.k,
                c.payoff_ok,
                c.domain_ok,
                number(&c.max_regret),
                numbers(&c.expected_payoffs)
            );
            for d in &c.dominating {
                let _ =
                    writeln!(out, "    dominated by an equilibrium with payoffs ({})", numbers(&d.expected_payoffs));
            }
        }
        let _ = writeln!(out, "  K* = {}", run.k_star);
    }
    if let Some(k) = report.k_star {
        let _ = writeln!(out, "K* = {k}");
    }
    diagnostics(&mut out, &report.diagnostics);
    out
}

/// `enumerate` output.
pub fn enumerate(report: &EnumerateReport) -> String {
    let mut out = String::new();
    match &report.partitions {
        None => {
            let _ = writeln!(out, "{}", report.count);
        }
        Some(list) => {
            let _ = writeln!(out, "p({}, {}) = {}", report.n, report.k, report.count);
            for p in list {
                let _ = writeln!(out, "{p}");
            }
        }
    }
    out
}

fn parameters(item: &CatalogItem) -> String {
    item.parameters.iter().map(|p| format!("{}={}", p.name, number(&p.default))).collect::<Vec<_>>().join(",")
}

/// `catalog` output.
pub fn catalog(report: &CatalogReport) -> String {
    let mut out = String::new();
    if let [item] = report.entries.as_slice() {
        let _ = writeln!(out, "{}: {}", item.id, item.description);
        let _ = writeln!(out, "  players: {} ({})", item.players.len(), item.players.join(", "));
        let _ = writeln!(out, "  K: {}", item.k);
        for p in &item.parameters {
            let range = if p.allow_zero { ">= 0" } else { "> 0" };
            let _ = writeln!(out, "  parameter {} {range}, default {}", p.name, number(&p.default));
        }
        let _ = writeln!(out, "  source: {}", item.citation);
        return out;
    }
    let id_w = report.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
    let par_w = report.entries.iter().map(|e| parameters(e).len()).max().unwrap_or(0).max(6);
    let _ = writeln!(out, "{:id_w$}  players  K  {:par_w$}  description", "id", "params");
    for e in &report.entries {
        let _ = writeln!(
            out,
            "{:id_w$}  {:7}  {}  {:par_w$}  {}",
            e.id,
            e.players.len(),
            e.k,
            parameters(e),
            e.description
        );
    }
    out
}
