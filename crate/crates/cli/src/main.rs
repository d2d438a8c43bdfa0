//! `symgraph`: claim verification, atlas inspection, coset graphs and
//! feasible-element searches from the command line.
//!
//! Exit codes: 0 when no claim fails, 1 when some claim fails, 2 on usage or
//! runtime errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use symgraph::atlas::Atlas;
use symgraph::coset_graph::CosetGraph;
use symgraph::group::ScanOptions;
use symgraph::subgroups::{feasible_elements, CensusOptions};
use symgraph::verify::{seed_override_from_env, Manifest, StabilizerSpec, SuiteReport, Verifier};
use symgraph::{Permutation, PermGroup};

#[derive(Parser)]
#[command(name = "symgraph", version, about = "Permutation groups, subgroup censuses and coset graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claims from the manifest.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Inspect the group atlas.
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
        #[arg(long, global = true)]
        atlas_dir: Option<PathBuf>,
    },
    /// Build Cos(G, H, HtH) and write it as JSON or an edge list.
    CosetGraph {
        #[arg(long)]
        group: String,
        /// `point:K`, `census:LABEL`, or generators separated by `;`.
        #[arg(long)]
        stabilizer: String,
        /// The element t in cycle notation.
        #[arg(long)]
        element: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[arg(long)]
        atlas_dir: Option<PathBuf>,
    },
    /// List feasible 2-elements of a group relative to a stabilizer.
    FeasibleSearch {
        #[arg(long)]
        group: String,
        #[arg(long)]
        stabilizer: String,
        #[arg(long, default_value_t = ScanOptions::default().budget)]
        budget: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        atlas_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Sources {
    /// Claim manifest to use instead of the shipped one.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Directory of group JSON files to use instead of the embedded atlas.
    #[arg(long)]
    atlas_dir: Option<PathBuf>,
    /// Write the report JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyAction {
    /// Run one claim by id or label.
    Run {
        id: String,
        #[command(flatten)]
        sources: Sources,
    },
    /// Run every claim matching a glob.
    Suite {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        sources: Sources,
    },
    /// List the claims in the manifest.
    List {
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AtlasAction {
    /// Names of the data-file groups.
    List,
    /// Build a group and print its order and generators, or its JSON file.
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Edges,
}

fn load_atlas(dir: Option<&Path>) -> Result<Atlas> {
    match dir {
        Some(d) => Atlas::from_dir(d).with_context(|| format!("loading atlas from {}", d.display())),
        None => Ok(Atlas::embedded()),
    }
}

fn load_manifest(path: Option<&Path>) -> Result<Manifest> {
    match path {
        Some(p) => Manifest::from_path(p).with_context(|| format!("loading manifest {}", p.display())),
        None => Ok(Manifest::embedded()),
    }
}

fn verifier(sources: &Sources) -> Result<Verifier> {
    let v = Verifier::new(
        load_manifest(sources.manifest.as_deref())?,
        load_atlas(sources.atlas_dir.as_deref())?,
    );
    Ok(v.with_seed_override(seed_override_from_env()?))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn report_suite(suite: &SuiteReport, json: Option<&Path>) -> Result<ExitCode> {
    for r in &suite.reports {
        println!("{}", r.line());
    }
    let s = &suite.summary;
    println!(
        "{} claims: {} pass, {} fail, {} discrepancy-noted, {} skipped",
        suite.reports.len(),
        s.pass,
        s.fail,
        s.discrepancy_noted,
        s.skipped
    );
    if let Some(path) = json {
        write_json(path, suite)?;
    }
    Ok(ExitCode::from(suite.exit_code() as u8))
}

fn run_verify(action: VerifyAction) -> Result<ExitCode> {
    match action {
        VerifyAction::Run { id, sources } => {
            let v = verifier(&sources)?;
            let r = v.run_claim(&id)?;
            println!("{}", r.line());
            println!("{}", serde_json::to_string_pretty(&r.computed)?);
            if let Some(path) = &sources.json {
                write_json(path, &r)?;
            }
            Ok(ExitCode::from(u8::from(r.status == symgraph::Status::Fail)))
        }
        VerifyAction::Suite {
            filter,
            parallel,
            sources,
        } => {
            let v = verifier(&sources)?;
            let suite = v.run_suite(filter.as_deref(), parallel)?;
            report_suite(&suite, sources.json.as_deref())
        }
        VerifyAction::List { manifest } => {
            for c in load_manifest(manifest.as_deref())?.claims {
                println!("{:<4} {:<22} {:<16} {}", c.label, c.id, format!("{:?}", c.kind), c.anchor);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_atlas(action: AtlasAction, dir: Option<&Path>) -> Result<ExitCode> {
    let atlas = load_atlas(dir)?;
    match action {
        AtlasAction::List => {
            for name in atlas.names() {
                let spec = atlas.spec(&name).expect("listed");
                let order = spec.expected_order.map(|o| o.to_string()).unwrap_or_else(|| "?".into());
                println!("{name:<10} degree {:<4} order {order}", spec.degree);
            }
        }
        AtlasAction::Show { name, json } => {
            let g = atlas.resolve(&name)?;
            if json {
                match atlas.spec(&name) {
                    Some(spec) => print!("{}", spec.to_json()),
                    None => print!("{}", symgraph::GroupSpec::from_group(&g.with_name(&name), "constructed")?.to_json()),
                }
            } else {
                println!("{name}: degree {}, order {}", g.degree(), g.order()?);
                for s in g.generator_strings() {
                    println!("  {s}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn stabilizer_in(g: &PermGroup, spec: &str) -> Result<PermGroup> {
    let spec: StabilizerSpec = spec.parse()?;
    Ok(spec.resolve(g, &CensusOptions::default())?)
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { action } => run_verify(action),
        Command::Atlas { action, atlas_dir } => run_atlas(action, atlas_dir.as_deref()),
        Command::CosetGraph {
            group,
            stabilizer,
            element,
            out,
            format,
            atlas_dir,
        } => {
            let g = load_atlas(atlas_dir.as_deref())?.resolve(&group)?.with_name(&group);
            let h = stabilizer_in(&g, &stabilizer)?;
            let t = Permutation::parse_cycles(&element, g.degree())?;
            let cg = CosetGraph::build(&g, &h, &t)?;
            let text = match format {
                GraphFormat::Json => cg.to_json(),
                GraphFormat::Edges => cg.edge_list(),
            };
            std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            println!(
                "{} vertices, valency {}, connected {}",
                cg.vertex_count(),
                cg.valency()?,
                cg.is_connected()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::FeasibleSearch {
            group,
            stabilizer,
            budget,
            json,
            atlas_dir,
        } => {
            let g = load_atlas(atlas_dir.as_deref())?.resolve(&group)?.with_name(&group);
            let h = stabilizer_in(&g, &stabilizer)?;
            if h.order()? % 7 != 0 {
                bail!("stabilizer order {} is not divisible by 7", h.order()?);
            }
            let search = feasible_elements(&g, &h, &ScanOptions::with_budget(budget))?;
            println!(
                "|H| = {}, {} index-7 classes, {} feasible elements",
                h.order()?,
                search.index7_classes,
                search.elements.len()
            );
            for f in &search.elements {
                println!("  {}", f.element);
            }
            if let Some(path) = json {
                let summaries: Vec<_> = search.elements.iter().map(|f| f.summary()).collect();
                write_json(&path, &summaries)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
