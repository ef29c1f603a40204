use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rwmaps::classifier::{classify_params, emit_report, verify_theorem_tables, FamilyKind, ReportFormat};
use rwmaps::cycles::cycle_census;
use rwmaps::families::IndexTwoData;
use rwmaps::graph::{family_generators, recognize_all};
use rwmaps::oracle::exhaustive_oracle;
use rwmaps::search::{automorphism_group, verify_arc_transitivity};
use rwmaps::{build_rose_window, Error, FamilyTag, Parallelism, Result, RoseWindowParams, Symmetry};

#[derive(Parser)]
#[command(name = "rwmaps", version, about = "Rose Window graphs and their class 2_{0,1} maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct GraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    r: i64,
}

impl GraphArgs {
    fn params(self) -> Result<RoseWindowParams> {
        RoseWindowParams::new(self.n, self.a, self.r)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Edges,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupChoice {
    Full,
    H1,
    H2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    I,
    Ii,
    Iii,
    Iv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the graph.
    Graph {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, value_enum, default_value = "edges")]
        emit: Emit,
    },
    /// Automorphism group order, arc-transitivity and the explicit generators.
    Aut {
        #[command(flatten)]
        g: GraphArgs,
    },
    /// Consistent-cycle census of `Aut(Γ)` or of an index-2 subgroup.
    Cycles {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, value_enum, default_value = "full")]
        group: GroupChoice,
    },
    /// Classify the 2_{0,1} maps on one graph.
    Classify {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a family's count table up to a parameter bound.
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// Every 2_{0,1} map on a small graph, by exhaustive search.
    Oracle {
        #[command(flatten)]
        g: GraphArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Consistency(e.to_string()))
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Graph { g, emit } => {
            let graph = build_rose_window(g.params()?)?;
            match emit {
                Emit::Edges => print!("{}", graph.to_edge_list()),
                Emit::Dot => print!("{}", graph.to_dot()),
                Emit::Json => println!("{}", pretty(&graph.to_json())?),
            }
            Ok(0)
        }
        Command::Aut { g } => {
            let p = g.params()?;
            let graph = build_rose_window(p)?;
            let aut = automorphism_group(&graph)?;
            let rec = recognize_all(p);
            let generators = match family_generators(&graph, rec.canonical) {
                Ok(gens) => gens
                    .iter()
                    .map(|np| json!({ "name": np.name, "cycles": np.perm.to_cycle_string_with(|v| graph.name(v).to_string()) }))
                    .collect(),
                Err(_) => Vec::new(),
            };
            let out = json!({
                "schema": rwmaps::SCHEMA,
                "graph": p.to_string(),
                "order": aut.order(),
                "vertex_stabilizer": aut.pointwise_stabilizer_order(&[0]),
                "arc_transitive": verify_arc_transitivity(&graph, &aut),
                "one_regular": aut.is_one_regular(),
                "family": rec.canonical,
                "matches": rec.matches,
                "generators": generators,
            });
            println!("{}", pretty(&out)?);
            Ok(0)
        }
        Command::Cycles { g, group } => {
            let p = g.params()?;
            let graph = build_rose_window(p)?;
            let census = match group {
                GroupChoice::Full => cycle_census(&automorphism_group(&graph)?, &graph, Parallelism::default())?,
                GroupChoice::H1 | GroupChoice::H2 => {
                    let data = index_two_data(p)?;
                    let h = if matches!(group, GroupChoice::H1) { &data.h1 } else { &data.h2 };
                    cycle_census(h, &graph, Parallelism::default())?
                }
            };
            println!("{}", pretty(&census.to_json(&graph))?);
            Ok(0)
        }
        Command::Classify { g, format } => {
            let report = classify_params(g.params()?)?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::Csv,
                Format::Text => ReportFormat::Text,
            };
            let out = emit_report(&report, format)?;
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            Ok(if report.verdict.is_pass() { 0 } else { 1 })
        }
        Command::Verify { family, max, format } => {
            let family = match family {
                Family::I => FamilyKind::I,
                Family::Ii => FamilyKind::Ii,
                Family::Iii => FamilyKind::Iii,
                Family::Iv => FamilyKind::Iv,
            };
            let summary = verify_theorem_tables(family, max, Parallelism::default())?;
            match format {
                TableFormat::Text => print!("{}", summary.to_text()),
                TableFormat::Json => println!("{}", pretty(&summary)?),
            }
            if summary.all_pass {
                Ok(0)
            } else if summary.rows.iter().any(|r| r.error.as_deref().is_some_and(|e| e.contains("cap"))) {
                Ok(2)
            } else {
                Ok(1)
            }
        }
        Command::Oracle { g } => {
            let p = g.params()?;
            let graph = build_rose_window(p)?;
            let maps = exhaustive_oracle(&graph)?;
            let list = maps.iter().map(|cm| cm.map.to_json(Some(&cm.class))).collect::<Result<Vec<_>>>()?;
            let out = json!({ "schema": rwmaps::SCHEMA, "graph": p.to_string(), "count": list.len(), "maps": list });
            println!("{}", pretty(&out)?);
            Ok(0)
        }
    }
}

fn index_two_data(p: RoseWindowParams) -> Result<IndexTwoData> {
    match recognize_all(p).canonical {
        FamilyTag::FamilyIV { m, d } if m % 4 == 2 && FamilyTag::FamilyIV { m, d }.canonical_params(p.n) == Some(p) => {
            IndexTwoData::new(m, d)
        }
        _ => Err(Error::InvalidParams(format!("{p}: h1 and h2 exist only on R_12m(3d+2, 9d+1) with m ≡ 2 (mod 4)"))),
    }
}
