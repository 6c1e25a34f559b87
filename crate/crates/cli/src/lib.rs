//! Command-line front end for the motivic computation engine: every engine
//! operation behind a subcommand, stable text/JSON output, and a `verify`
//! runner for the full check suite.

pub mod config;
pub mod output;
pub mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use motivic_core::catalog::{self, conjecture_a_target, leading_term, rep_surface_class};
use motivic_core::commuting::{
    census_glr, gl2_branching_system, rank_stability_report, sl2_commuting_ratio_check,
};
use motivic_core::frobenius::{self, FiniteGroupData};
use motivic_core::kostka::kostka;
use motivic_core::oracle::{
    self, count_conjugacy_classes, count_surface_tuples, count_surface_tuples_range,
    surface_budget_check, weil_sym_count, GroupId, PermGroup,
};
use motivic_core::partition::parse_partition;
use motivic_core::poly::QPolynomial;
use motivic_core::repstab::{free_power_limit, motivic_decomposition, rep_stability_check};
use motivic_core::text::{parse_motclass, parse_poly};
use motivic_core::zeta::{kapranov_zeta, sym_limit, sym_power};
use motivic_core::{Error, Int};

use config::Config;
use output::{limit_report_payload, report, scalar, CommandResult, Format};
use verify::{Budget, Catalog};

pub const DEFAULT_PRECISION: i64 = 10;

#[derive(Parser)]
#[command(
    name = "motivic",
    version,
    about = "Exact virtual-class computations in the localized Grothendieck ring, with a finite-field counting oracle"
)]
struct Cli {
    /// Output encoding
    #[arg(long, global = true, value_enum, default_value_t = CliFormat::Text)]
    format: CliFormat,
    /// Series precision (default 10, or the MOTIVIC_PRECISION environment variable)
    #[arg(long, global = true)]
    precision: Option<i64>,
    /// Worker threads for oracle enumeration (output is independent of it)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Config file with extra branching systems, finite groups, and classes
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a catalog class, e.g. `class gl --rank 2`
    Class {
        name: String,
        #[arg(long)]
        rank: Option<u32>,
        /// With a genus, print the surface representation class instead
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Closed-form surface representation classes (SL2, U2, GmZ2, GmZ2_charstack)
    RepSurface {
        #[arg(long)]
        group: String,
        #[arg(long)]
        genus: u32,
        /// Print the leading term only (U2..U5)
        #[arg(long)]
        leading: bool,
    },
    /// Limit of Rep_G(M_g)/[G]^2g against [G/[G,G]]/[G]
    Limit {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 20)]
        gmax: u32,
    },
    /// n-th symmetric power of a polynomial class
    Sym {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: usize,
    },
    /// Stable limit of Sym^n(p)/q^(n deg p) for monic p
    SymLimit {
        #[arg(long)]
        poly: String,
    },
    /// Kapranov zeta function of a polynomial class, in product form
    Zeta {
        #[arg(long)]
        poly: String,
    },
    /// Class of commuting n-tuples from a branching system (`gl2` built in)
    Commuting {
        system: String,
        #[arg(long)]
        n: u32,
    },
    /// Conjugacy-class census of GL_r
    Census {
        /// Family (only `glr` is built in)
        family: String,
        #[arg(long)]
        r: u32,
    },
    /// Scan [C_2(GL_r)]/(q^r [GL_r]) for stabilization
    RankStability {
        #[arg(long, default_value_t = 24)]
        rmax: u32,
    },
    /// Frobenius surface-group counts for finite groups
    Frobenius {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        genus: Option<u32>,
        /// Character degrees, e.g. 1,1,2 (with --order)
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        commutator_order: Option<u64>,
        /// Print the normalized ratio table up to this genus
        #[arg(long)]
        gmax: Option<u32>,
    },
    /// Kostka number K_{mu,lambda}
    Kostka {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
    },
    /// Solve the motivic decomposition from quotient classes (JSON file)
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        quotients: PathBuf,
    },
    /// Motivic representation stability check for free powers
    Repstab {
        #[arg(long = "class")]
        class: String,
        #[arg(long, default_value = "")]
        lambda: String,
    },
    /// Brute-force counting oracle
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Run the whole verification suite
    Verify {
        #[arg(long, default_value = "full")]
        budget: String,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Count commuting n-tuples in a matrix group over F_p
    Commuting {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Count surface-relation tuples (matrix group with --p, else finite group)
    Surface {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        genus: u32,
    },
    /// Count conjugacy classes
    Census {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Symmetric-power point count from extension-field counts
    Sym {
        /// Comma-separated N_1,...,N_n
        #[arg(long)]
        counts: String,
        #[arg(long)]
        n: usize,
    },
}

/// Parses and executes one invocation; all output is in the result.
pub fn run(args: &[String]) -> CommandResult {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text
            return CommandResult::error("usage", e.to_string());
        }
    };
    let command_name = command_label(&cli.command);
    let precision = cli
        .precision
        .or_else(|| {
            std::env::var("MOTIVIC_PRECISION")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_PRECISION);
    let config = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match config::parse_config(&text) {
                Ok(c) => c,
                Err(e) => return CommandResult::error(command_name, e.to_string()),
            },
            Err(e) => {
                return CommandResult::error(command_name, format!("cannot read config: {e}"))
            }
        },
        None => Config::default(),
    };
    match execute(&cli, precision, &config) {
        Ok(result) => result,
        Err(e) => CommandResult::error(command_name, e.to_string()),
    }
}

fn command_label(command: &Command) -> &'static str {
    match command {
        Command::Class { .. } => "class",
        Command::RepSurface { .. } => "rep-surface",
        Command::Limit { .. } => "limit",
        Command::Sym { .. } => "sym",
        Command::SymLimit { .. } => "sym-limit",
        Command::Zeta { .. } => "zeta",
        Command::Commuting { .. } => "commuting",
        Command::Census { .. } => "census",
        Command::RankStability { .. } => "rank-stability",
        Command::Frobenius { .. } => "frobenius",
        Command::Kostka { .. } => "kostka",
        Command::Decompose { .. } => "decompose",
        Command::Repstab { .. } => "repstab",
        Command::Oracle { .. } => "oracle",
        Command::Verify { .. } => "verify",
    }
}

/// Peeks at the requested output format before full parsing, so even usage
/// errors render in the right encoding.
pub fn format_of(args: &[String]) -> Format {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--format" {
            if it.next().map(String::as_str) == Some("json") {
                return Format::Json;
            }
        } else if a == "--format=json" {
            return Format::Json;
        }
    }
    Format::Text
}

fn catalog_with_config(config: &Config) -> Catalog {
    let mut catalog = Catalog::builtin();
    for entry in config.classes.values() {
        catalog.insert(entry.clone());
    }
    catalog
}

fn execute(cli: &Cli, precision: i64, config: &Config) -> Result<CommandResult, Error> {
    match &cli.command {
        Command::Class { name, rank, genus } => {
            if let Some(g) = genus {
                let class = rep_surface_class(name, *g).or_else(|_| leading_term(name, *g))?;
                return Ok(CommandResult::ok(
                    "class",
                    scalar("class", class.to_string()),
                ));
            }
            let entry = match config.classes.get(name) {
                Some(e) => e.clone(),
                None => catalog::entry(name, *rank)?,
            };
            Ok(CommandResult::ok(
                "class",
                scalar("class", entry.class.to_string()),
            ))
        }
        Command::RepSurface {
            group,
            genus,
            leading,
        } => {
            let class = if *leading {
                leading_term(group, *genus)?
            } else {
                rep_surface_class(group, *genus)?
            };
            Ok(CommandResult::ok(
                "rep-surface",
                scalar("class", class.to_string()),
            ))
        }
        Command::Limit { group, gmax } => {
            let catalog = catalog_with_config(config);
            let entry_name = if group.eq_ignore_ascii_case("gmz2_charstack") {
                "GmZ2"
            } else {
                group.as_str()
            };
            let entry = catalog.get(entry_name)?;
            let r = catalog::verify_conjecture_a_with(entry, group, precision, *gmax)?;
            let target_class = conjecture_a_target(entry_name, None)
                .map(|t| t.to_string())
                .unwrap_or_else(|_| "?".to_string());
            let mut lines = vec![format!("target [G/[G,G]]/[G] = {target_class}")];
            lines.push(format!("target series = {}", r.target));
            lines.push(if r.matches_target {
                "limit matches the target".to_string()
            } else {
                "limit does NOT match the target".to_string()
            });
            lines.push(r.note.clone());
            let payload = limit_report_payload("conjecture-a", &r.report, lines);
            let mut result = CommandResult::ok("limit", payload);
            if !r.matches_target {
                result = result.with_diagnostic(format!("{}: {}", r.group, r.note));
            }
            Ok(result)
        }
        Command::Sym { poly, n } => {
            let parsed = parse_poly(poly)?;
            Ok(CommandResult::ok(
                "sym",
                scalar("polynomial", sym_power(&parsed, *n)?.to_string()),
            ))
        }
        Command::SymLimit { poly } => {
            let parsed = parse_poly(poly)?;
            Ok(CommandResult::ok(
                "sym-limit",
                scalar("class", sym_limit(&parsed)?.to_string()),
            ))
        }
        Command::Zeta { poly } => {
            let parsed = parse_poly(poly)?;
            Ok(CommandResult::ok(
                "zeta",
                scalar("zeta", kapranov_zeta(&parsed)?.to_string()),
            ))
        }
        Command::Commuting { system, n } => {
            let sys = if system.eq_ignore_ascii_case("gl2") {
                gl2_branching_system()
            } else {
                config
                    .systems
                    .get(system)
                    .cloned()
                    .ok_or_else(|| Error::UnknownGroup(system.clone()))?
            };
            let class = sys.commuting_class(*n)?;
            Ok(CommandResult::ok(
                "commuting",
                scalar("class", class.to_string()),
            ))
        }
        Command::Census { family, r } => {
            if !family.eq_ignore_ascii_case("glr") {
                return Err(Error::UnknownGroup(family.clone()));
            }
            Ok(CommandResult::ok(
                "census",
                scalar("class", census_glr(*r)?.to_string()),
            ))
        }
        Command::RankStability { rmax } => {
            let report = rank_stability_report(*rmax, precision)?;
            Ok(CommandResult::ok(
                "rank-stability",
                limit_report_payload("rank-stability", &report, vec![]),
            ))
        }
        Command::Frobenius {
            group,
            genus,
            degrees,
            order,
            commutator_order,
            gmax,
        } => {
            let data = resolve_finite_group(
                group.as_deref(),
                degrees.as_deref(),
                *order,
                *commutator_order,
                config,
            )?;
            if let Some(g_max) = gmax {
                let r = frobenius::rep_ratio_report(&data, *g_max)?;
                let mut lines = Vec::new();
                for (g, ratio) in &r.ratios {
                    lines.push(format!("g = {g}: {ratio}"));
                }
                lines.push(format!("limit 1/#[G,G] = {}", r.limit));
                if let Some(rate) = &r.rate_bound {
                    lines.push(format!(
                        "per-genus shrink factor of the dropped part <= {rate}"
                    ));
                }
                lines.push(format!(
                    "largest dropped term at g = {g_max}: {}",
                    r.largest_dropped
                ));
                if let Some(g) = r.converged_by {
                    lines.push(format!("within 1e-6 of the limit from g = {g}"));
                }
                let payload = report(
                    "frobenius-ratios",
                    lines,
                    json!({
                        "limit": r.limit.to_string(),
                        "converged_by": r.converged_by,
                    }),
                );
                return Ok(CommandResult::ok("frobenius", payload));
            }
            let g = genus.ok_or_else(|| {
                Error::PreconditionViolated("--genus (or --gmax) is required".to_string())
            })?;
            let count = frobenius::rep_count(&data, g)?;
            Ok(CommandResult::ok(
                "frobenius",
                scalar("count", count.to_string()),
            ))
        }
        Command::Kostka { mu, lambda } => {
            let mu = parse_partition(mu)?;
            let lambda = parse_partition(lambda)?;
            let k = kostka(&mu, &lambda)?;
            Ok(CommandResult::ok("kostka", scalar("count", k.to_string())))
        }
        Command::Decompose { n, quotients } => {
            let text = std::fs::read_to_string(quotients)
                .map_err(|e| Error::Parse(format!("cannot read quotients file: {e}")))?;
            let raw: BTreeMap<String, String> = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad quotients JSON: {e}")))?;
            let mut map = BTreeMap::new();
            for (key, value) in raw {
                map.insert(parse_partition(&key)?, parse_motclass(&value)?);
            }
            let d = motivic_decomposition(*n, &map)?;
            let mut lines = Vec::new();
            let mut obj = serde_json::Map::new();
            for (mu, coeff) in &d.coefficients {
                lines.push(format!("V_({mu}): {coeff}"));
                obj.insert(mu.to_string(), json!(coeff.to_string()));
            }
            Ok(CommandResult::ok(
                "decompose",
                report("decomposition", lines, json!({ "coefficients": obj })),
            ))
        }
        Command::Repstab { class, lambda } => {
            let x = parse_poly(class)?;
            let lambda = parse_partition(lambda)?;
            let r = rep_stability_check(&x, &lambda, precision)?;
            let mut lines = Vec::new();
            if r.converged {
                if let Ok(closed) = free_power_limit(&x, &lambda) {
                    lines.push(format!("closed-form limit = {closed}"));
                }
            } else {
                lines.push("not motivically stable (leading coefficient is not 1)".to_string());
            }
            Ok(CommandResult::ok(
                "repstab",
                limit_report_payload("repstab", &r, lines),
            ))
        }
        Command::Oracle { cmd } => run_oracle(cmd, cli.jobs, config),
        Command::Verify { budget } => {
            let budget = match budget.as_str() {
                "small" => Budget::Small,
                "full" => Budget::Full,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown budget '{other}' (small|full)"
                    )));
                }
            };
            let catalog = catalog_with_config(config);
            let results = verify::run_all(precision, budget, &catalog);
            let all_passed = results.iter().all(|r| r.passed);
            let mut lines: Vec<String> = results.iter().map(|r| r.line()).collect();
            lines.push(format!(
                "{}: {} of {} criteria passed",
                if all_passed { "OK" } else { "FAILED" },
                results.iter().filter(|r| r.passed).count(),
                results.len()
            ));
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                    })
                })
                .collect();
            let payload = report(
                "verify",
                lines,
                json!({ "items": items, "passed": all_passed }),
            );
            let mut result = CommandResult::ok("verify", payload);
            if !all_passed {
                result.status = output::Status::Error;
                result
                    .diagnostics
                    .push("one or more criteria failed".to_string());
            }
            Ok(result)
        }
    }
}

fn resolve_finite_group(
    group: Option<&str>,
    degrees: Option<&str>,
    order: Option<u64>,
    commutator_order: Option<u64>,
    config: &Config,
) -> Result<FiniteGroupData, Error> {
    if let Some(name) = group {
        if let Some(data) = config.groups.get(name) {
            return Ok(data.clone());
        }
        return frobenius::builtin(name);
    }
    let (degrees, order) = match (degrees, order) {
        (Some(d), Some(o)) => (d, o),
        _ => {
            return Err(Error::PreconditionViolated(
                "either --group or both --degrees and --order are required".to_string(),
            ))
        }
    };
    let degree_list: Vec<u64> = degrees
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Parse("bad degree".to_string()))
        })
        .collect::<Result<_, _>>()?;
    let linear = degree_list.iter().filter(|&&d| d == 1).count() as u64;
    let commutator = commutator_order.unwrap_or_else(|| order / linear.max(1));
    let data = FiniteGroupData::new("custom", order, degree_list, commutator);
    data.validate()?;
    Ok(data)
}

fn run_oracle(cmd: &OracleCmd, jobs: usize, config: &Config) -> Result<CommandResult, Error> {
    match cmd {
        OracleCmd::Commuting { group, p, n } => {
            let id = GroupId::parse(group)?;
            let g = oracle::enumerate(id, *p)?;
            let count = oracle::count_commuting_tuples(&g, *n)?;
            let prediction = commuting_prediction(id, *p, *n);
            let mut lines = vec![format!("count = {count}")];
            if let Some(pred) = &prediction {
                lines.push(format!("symbolic prediction = {pred}"));
            }
            Ok(CommandResult::ok(
                "oracle",
                report(
                    "oracle-count",
                    lines,
                    json!({ "count": count.to_string(), "prediction": prediction }),
                ),
            ))
        }
        OracleCmd::Surface { group, p, genus } => {
            let (count, prediction) = match p {
                Some(p) => {
                    let id = GroupId::parse(group)?;
                    let g = oracle::enumerate(id, *p)?;
                    let count = surface_count_jobs(&g, *genus, jobs)?;
                    (count, surface_prediction(id, *p, *genus))
                }
                None => {
                    let data = if let Some(d) = config.groups.get(group) {
                        d.clone()
                    } else {
                        frobenius::builtin(group)?
                    };
                    let generators = data.generators.clone().ok_or_else(|| {
                        Error::PreconditionViolated(format!(
                            "group {group} has no permutation generators"
                        ))
                    })?;
                    let g = PermGroup::generate(&generators)?;
                    let count = surface_count_jobs(&g, *genus, jobs)?;
                    let prediction = frobenius::rep_count(&data, *genus)
                        .ok()
                        .map(|v| v.to_string());
                    (count, prediction)
                }
            };
            let mut lines = vec![format!("count = {count}")];
            if let Some(pred) = &prediction {
                lines.push(format!("symbolic prediction = {pred}"));
            }
            Ok(CommandResult::ok(
                "oracle",
                report(
                    "oracle-count",
                    lines,
                    json!({ "count": count.to_string(), "prediction": prediction }),
                ),
            ))
        }
        OracleCmd::Census { group, p } => {
            let id = GroupId::parse(group)?;
            let g = oracle::enumerate(id, *p)?;
            let count = count_conjugacy_classes(&g);
            let prediction = match id {
                GroupId::Gl2 => census_glr(2)
                    .ok()
                    .and_then(|c| c.evaluate(*p as i64, None).ok()),
                GroupId::Gl3 => census_glr(3)
                    .ok()
                    .and_then(|c| c.evaluate(*p as i64, None).ok()),
                _ => None,
            }
            .map(|v| v.to_string());
            let mut lines = vec![format!("count = {count}")];
            if let Some(pred) = &prediction {
                lines.push(format!("symbolic prediction = {pred}"));
            }
            if id == GroupId::Sl2 {
                let check = sl2_commuting_ratio_check(&QPolynomial::from_int_coeffs(&[4, 1]))?;
                lines.push(check.note.clone());
            }
            Ok(CommandResult::ok(
                "oracle",
                report(
                    "oracle-count",
                    lines,
                    json!({ "count": count.to_string(), "prediction": prediction }),
                ),
            ))
        }
        OracleCmd::Sym { counts, n } => {
            let parsed: Vec<Int> = counts
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<Int>()
                        .map_err(|_| Error::Parse("bad point count".to_string()))
                })
                .collect::<Result<_, _>>()?;
            let count = weil_sym_count(&parsed, *n)?;
            Ok(CommandResult::ok(
                "oracle",
                report(
                    "oracle-count",
                    vec![format!("count = {count}")],
                    json!({ "count": count.to_string(), "prediction": serde_json::Value::Null }),
                ),
            ))
        }
    }
}

fn commuting_prediction(id: GroupId, p: u64, n: u32) -> Option<String> {
    match id {
        GroupId::Gl2 => motivic_core::commuting::gl2_closed_form(n)
            .evaluate(p as i64, None)
            .ok()
            .map(|v| v.to_string()),
        _ => None,
    }
}

fn surface_prediction(id: GroupId, p: u64, genus: u32) -> Option<String> {
    let (name, guard) = match id {
        GroupId::Sl2 => ("SL2", Some((2u64, 1u64))),
        GroupId::U2 => ("U2", None),
        _ => return None,
    };
    rep_surface_class(name, genus)
        .ok()?
        .evaluate(p as i64, guard)
        .ok()
        .map(|v| v.to_string())
}

/// Splits the outer enumeration across worker threads; partial sums are
/// independent of the partition, so the result does not depend on `jobs`.
fn surface_count_jobs<G: oracle::FiniteGroup + Sync>(
    group: &G,
    genus: u32,
    jobs: usize,
) -> Result<Int, Error> {
    surface_budget_check(group.size(), genus)?;
    let jobs = jobs.max(1).min(group.size().max(1));
    if jobs == 1 {
        return count_surface_tuples(group, genus);
    }
    let chunk = group.size().div_ceil(jobs);
    let totals = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(group.size());
            handles.push(scope.spawn(move || count_surface_tuples_range(group, genus, lo, hi)));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("worker does not panic"))
            .collect::<Vec<Int>>()
    });
    Ok(totals.into_iter().sum())
}
