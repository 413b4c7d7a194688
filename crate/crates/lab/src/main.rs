use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tpp_core::tpp::SearchBudget;
use tpp_lab::campaign::{run_campaign, CampaignOptions};
use tpp_lab::inspect::{resolve_target, search, search_json, show};
use tpp_lab::props::{suite, PropsContext, DEFAULT_SEED, SUITES};
use tpp_lab::tables::{render, table_rows, Format};
use tpp_lab::{load_catalog, Exit, Selection};

#[derive(Parser)]
#[command(
    name = "tpp-lab",
    version,
    about = "Subgroup triple product property verification campaigns"
)]
struct Cli {
    /// Directory holding manifest.txt and exports.txt instead of the shipped catalog.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct BudgetArgs {
    /// Stop each search after this many candidate triples.
    #[arg(long)]
    budget_candidates: Option<u64>,
    /// Stop each search after this many seconds.
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_candidates: self.budget_candidates,
            max_seconds: self.budget_seconds,
        }
    }
}

#[derive(Args, Clone)]
struct CampaignArgs {
    #[command(flatten)]
    budget: BudgetArgs,
    /// Also search groups of order above 64.
    #[arg(long)]
    deep: bool,
    /// Exit 0 even when some group is inconclusive.
    #[arg(long)]
    allow_inconclusive: bool,
    /// Keep only groups of this order.
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every applicable bound and declared column for the selected groups.
    Verify {
        /// Catalog labels such as "[32,49]".
        labels: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_name = "N")]
        table: Option<u8>,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Regenerate a table's computed columns.
    Tables {
        #[arg(long, value_name = "N")]
        table: u8,
        /// md, csv or json
        #[arg(long, default_value = "md")]
        format: String,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Run property suites.
    Props {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Dump a group's subgroup lattice and classification as JSON lines.
    Show {
        /// Catalog label or group file.
        target: String,
    },
    /// Search one group and print the report as JSON.
    Search {
        /// Catalog label or group file.
        target: String,
        /// Also run the subset search (small orders only).
        #[arg(long)]
        subsets: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

struct Failure(Exit, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(Exit::Usage, msg.into())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Exit, Failure> {
    let catalog = load_catalog(cli.catalog.as_deref()).map_err(|e| usage(e.to_string()))?;
    match cli.command {
        Command::Verify {
            labels,
            all,
            table,
            format,
            campaign,
        } => {
            if format != "text" && format != "json" {
                return Err(usage(format!(
                    "unknown format `{format}`; expected text or json"
                )));
            }
            let selection = Selection {
                labels,
                all,
                table,
                order: campaign.order,
            };
            let entries = selection.resolve(&catalog).map_err(usage)?;
            let opts = CampaignOptions {
                budget: campaign.budget.budget(),
                deep: campaign.deep,
            };
            let report = run_campaign(&entries, &opts);
            let text = if format == "json" {
                report.to_json()
            } else {
                report.to_text()
            };
            emit(&cli.out, &text)?;
            Ok(report.exit(campaign.allow_inconclusive))
        }
        Command::Tables {
            table,
            format,
            campaign,
        } => {
            let format: Format = format.parse().map_err(usage)?;
            let selection = Selection {
                table: Some(table),
                order: campaign.order,
                ..Selection::default()
            };
            let entries = selection.resolve(&catalog).map_err(usage)?;
            let opts = CampaignOptions {
                budget: campaign.budget.budget(),
                deep: campaign.deep,
            };
            let report = run_campaign(&entries, &opts);
            emit(&cli.out, &render(&table_rows(&entries, &report), format))?;
            Ok(report.exit(campaign.allow_inconclusive))
        }
        Command::Props { suite: names, seed } => {
            let chosen: Vec<&str> = if names.iter().any(|n| n == "all") {
                SUITES.iter().map(|(n, _)| *n).collect()
            } else {
                names.iter().map(String::as_str).collect()
            };
            let mut runs = Vec::new();
            for name in chosen {
                let f = suite(name).ok_or_else(|| {
                    let known: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                    usage(format!(
                        "unknown suite `{name}`; known: {}",
                        known.join(", ")
                    ))
                })?;
                runs.push((name, f));
            }
            let ctx = PropsContext::new(&catalog, seed).map_err(|e| usage(e.to_string()))?;
            let mut text = format!("seed {seed}\n");
            let mut failed = false;
            for (name, f) in runs {
                let start = Instant::now();
                let outcome = f(&ctx);
                eprintln!("{name}: {:.1?}", start.elapsed());
                failed |= !outcome.passed;
                text.push_str(&outcome.line());
                text.push('\n');
            }
            emit(&cli.out, &text)?;
            Ok(if failed {
                Exit::Violation
            } else {
                Exit::Success
            })
        }
        Command::Show { target } => {
            let t = resolve_target(&catalog, &target).map_err(usage)?;
            emit(&cli.out, &show(&t))?;
            Ok(Exit::Success)
        }
        Command::Search {
            target,
            subsets,
            budget,
        } => {
            let t = resolve_target(&catalog, &target).map_err(usage)?;
            let report = search(&t, budget.budget(), subsets).map_err(usage)?;
            emit(&cli.out, &search_json(&report))?;
            Ok(if report.budget_exhausted {
                Exit::Inconclusive
            } else {
                Exit::Success
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Exit::Usage
            } else {
                Exit::Success
            };
            let _ = e.print();
            return ExitCode::from(code.code() as u8);
        }
    };
    let exit = match run(cli) {
        Ok(exit) => exit,
        Err(Failure(exit, msg)) => {
            eprintln!("tpp-lab: {msg}");
            exit
        }
    };
    ExitCode::from(exit.code() as u8)
}
