//! `mcsm`: exact graph distances from common-subelement models.
//!
//! Exit codes: 0 success, 2 input/parse error, 3 scale cap exceeded,
//! 4 model violation (including failed checks and failed verification).

mod render;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use mcs_core::error::{Error, Result};
use mcs_core::ged::{ged_brute_force, EditCostTables, GedCorrespondence};
use mcs_core::graph::{LabeledGraph, LabelWeighting};
use mcs_core::model::{FiniteMcsModel, MetricKind, DEFAULT_ELEMENT_CAP};
use mcs_core::rational::{format_ratio, parse_ratio, ratio_int};
use mcs_core::solver::{
    distance_matrix, mcs_solve, ExtendedLabels, GraphModel, GraphModelKind,
    DEFAULT_SOLVER_VERTEX_CAP,
};
use mcs_core::space::{build_model, verify_recovery, FiniteMetricSpace};
use mcs_core::{metric_value, AxiomReport};
use render::{render, Format};

#[derive(Parser)]
#[command(name = "mcsm", version, about = "Exact graph distances from common-subelement models")]
struct Cli {
    /// Output format for result documents
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampling-based checks (reserved; current commands are exhaustive)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Vertex cap for the exact solvers
    #[arg(long, global = true)]
    cap_vertices: Option<usize>,

    /// Element cap for the exhaustive model checkers
    #[arg(long, global = true)]
    cap_elements: Option<usize>,

    /// Transitively close loaded order relations instead of validating them as given
    #[arg(long, global = true)]
    close_order: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two graphs under a graph model and metric
    Dist {
        /// Graph model kind: S (subgraph), I (induced), E (extended)
        #[arg(long)]
        kind: String,
        /// Metric: da, db, dc, or dd
        #[arg(long)]
        metric: String,
        /// `uniform` synthesizes weight 1 for every observed label
        #[arg(long)]
        alpha: Option<String>,
        /// Parameter file: {"alpha": {...}} or {"vertexModel": ..., "edgeModel": ...}
        #[arg(long)]
        params: Option<PathBuf>,
        g1: PathBuf,
        g2: PathBuf,
    },
    /// Pairwise distance matrix over every *.json graph in a directory
    Matrix {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        params: Option<PathBuf>,
        dir: PathBuf,
    },
    /// Maximum common subelement of two graphs, with witnesses
    Mcs {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        params: Option<PathBuf>,
        g1: PathBuf,
        g2: PathBuf,
    },
    /// Exhaustively check the model axioms and metric laws of a finite model
    CheckModel { model: PathBuf },
    /// Derive a finite model from a finite metric space and verify recovery
    Metric2model {
        /// Size of the global minimum element (strictly positive rational)
        #[arg(long, default_value = "1")]
        theta: String,
        space: PathBuf,
    },
    /// Exact graph edit distance under label-pair cost tables
    Ged {
        g1: PathBuf,
        g2: PathBuf,
        costs: PathBuf,
    },
    /// Verify the edit-distance/model correspondence over a directory of graphs
    VerifyGed {
        /// Bound on the vertex count of the input graphs
        #[arg(short = 'n', long)]
        max_vertices: usize,
        costs: PathBuf,
        dir: PathBuf,
    },
}

#[derive(Deserialize, Default)]
struct ParamsDoc {
    alpha: Option<BTreeMap<String, String>>,
    #[serde(rename = "vertexModel")]
    vertex_model: Option<Value>,
    #[serde(rename = "edgeModel")]
    edge_model: Option<Value>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph> {
    LabeledGraph::from_json_str(&read_file(path)?)
        .map_err(|e| e.with_context(&path.display().to_string()))
}

fn load_graph_dir(dir: &Path) -> Result<Vec<(String, LabeledGraph)>> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    names.sort();
    if names.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{}: no .json graphs found",
            dir.display()
        )));
    }
    names
        .into_iter()
        .map(|p| {
            let name = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((name, load_graph(&p)?))
        })
        .collect()
}

/// Assemble the graph model from --kind plus --alpha/--params.
fn build_graph_model(
    kind: &str,
    alpha: Option<&str>,
    params: Option<&Path>,
    graphs: &[&LabeledGraph],
    close_order: bool,
) -> Result<GraphModel> {
    let kind = GraphModelKind::from_code(kind)?;
    let params_doc: ParamsDoc = match params {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?,
        None => ParamsDoc::default(),
    };
    match kind {
        GraphModelKind::Subgraph | GraphModelKind::Induced => {
            let weighting = match (alpha, &params_doc.alpha) {
                (Some("uniform"), None) => LabelWeighting::uniform_over(graphs),
                (None, Some(map)) => LabelWeighting::from_json_map(map)?,
                (Some(other), None) => {
                    return Err(Error::InvalidInput(format!(
                        "unknown --alpha value `{other}` (only `uniform` is built in)"
                    )))
                }
                (None, None) => {
                    return Err(Error::InvalidInput(
                        "kinds S and I need --alpha uniform or --params with an alpha map".into(),
                    ))
                }
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidInput(
                        "give either --alpha or a params alpha map, not both".into(),
                    ))
                }
            };
            Ok(match kind {
                GraphModelKind::Subgraph => GraphModel::Subgraph(weighting),
                _ => GraphModel::Induced(weighting),
            })
        }
        GraphModelKind::Extended => {
            let (Some(vm), Some(em)) = (&params_doc.vertex_model, &params_doc.edge_model) else {
                return Err(Error::InvalidInput(
                    "kind E needs --params with vertexModel and edgeModel".into(),
                ));
            };
            let vm = FiniteMcsModel::from_json_str(&vm.to_string(), close_order)?;
            let em = FiniteMcsModel::from_json_str(&em.to_string(), close_order)?;
            Ok(GraphModel::Extended(ExtendedLabels::new(vm, em)?))
        }
    }
}

fn report_doc(report: &AxiomReport) -> Value {
    report.to_json()
}

fn run(cli: &Cli) -> Result<(Value, i32)> {
    let vertex_cap = cli.cap_vertices.unwrap_or(DEFAULT_SOLVER_VERTEX_CAP);
    let element_cap = cli.cap_elements.unwrap_or(DEFAULT_ELEMENT_CAP);

    match &cli.command {
        Command::Dist {
            kind,
            metric,
            alpha,
            params,
            g1,
            g2,
        } => {
            let metric = MetricKind::from_code(metric)?;
            let g1 = load_graph(g1)?;
            let g2 = load_graph(g2)?;
            let model = build_graph_model(
                kind,
                alpha.as_deref(),
                params.as_deref(),
                &[&g1, &g2],
                cli.close_order,
            )?;
            let result = mcs_solve(&model, &g1, &g2, vertex_cap)?;
            let distance = metric_value(
                metric,
                &model.size(&g1)?,
                &model.size(&g2)?,
                &result.best_size,
            )?;
            Ok((
                json!({
                    "bestSize": format_ratio(&result.best_size),
                    "distance": format_ratio(&distance),
                    "witnessCount": result.witnesses.len(),
                }),
                0,
            ))
        }

        Command::Matrix {
            kind,
            metric,
            alpha,
            params,
            dir,
        } => {
            let metric = MetricKind::from_code(metric)?;
            let named = load_graph_dir(dir)?;
            let graphs: Vec<LabeledGraph> = named.iter().map(|(_, g)| g.clone()).collect();
            let refs: Vec<&LabeledGraph> = graphs.iter().collect();
            let model =
                build_graph_model(kind, alpha.as_deref(), params.as_deref(), &refs, cli.close_order)?;
            let matrix = distance_matrix(&model, metric, &graphs, vertex_cap)?;
            Ok((
                json!({
                    "files": named.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                    "matrix": matrix
                        .iter()
                        .map(|row| row.iter().map(format_ratio).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }),
                0,
            ))
        }

        Command::Mcs {
            kind,
            alpha,
            params,
            g1,
            g2,
        } => {
            let g1 = load_graph(g1)?;
            let g2 = load_graph(g2)?;
            let model = build_graph_model(
                kind,
                alpha.as_deref(),
                params.as_deref(),
                &[&g1, &g2],
                cli.close_order,
            )?;
            let result = mcs_solve(&model, &g1, &g2, vertex_cap)?;
            Ok((
                json!({
                    "bestSize": format_ratio(&result.best_size),
                    "nodesExplored": result.nodes_explored,
                    "witnessCount": result.witnesses.len(),
                    "witnesses": result.witnesses.iter().map(|w| json!({
                        "graph": w.graph.to_json(),
                        "intoFirst": w.into_first.to_json(),
                        "intoSecond": w.into_second.to_json(),
                    })).collect::<Vec<_>>(),
                }),
                0,
            ))
        }

        Command::CheckModel { model } => {
            let model = FiniteMcsModel::from_json_str(&read_file(model)?, cli.close_order)?;
            let axioms = model.check_axioms(element_cap)?;
            let aux = match model.check_aux_inequality(element_cap) {
                Ok(report) => Some(report),
                Err(Error::ModelViolation(_)) => None,
                Err(e) => return Err(e),
            };
            let mut laws = serde_json::Map::new();
            let mut laws_passed = true;
            for kind in MetricKind::ALL {
                let entry = match model.check_metric_laws(kind, element_cap) {
                    Ok(report) => {
                        laws_passed &= report.passed();
                        report_doc(&report)
                    }
                    Err(Error::ModelViolation(m)) => {
                        laws_passed = false;
                        json!({ "skipped": m })
                    }
                    Err(e) => return Err(e),
                };
                laws.insert(kind.code().to_string(), entry);
            }
            let passed = axioms.passed()
                && aux.as_ref().is_some_and(|r| r.passed())
                && laws_passed;
            let doc = json!({
                "axioms": report_doc(&axioms),
                "aux": aux.as_ref().map(report_doc).unwrap_or(json!({"skipped": "no common subelements"})),
                "metricLaws": Value::Object(laws),
                "passed": passed,
            });
            Ok((doc, if passed { 0 } else { 4 }))
        }

        Command::Metric2model { theta, space } => {
            let theta = parse_ratio(theta)?;
            let space = FiniteMetricSpace::from_json_str(&read_file(space)?)?;
            let sm = build_model(&space, &theta)?;
            let recovery = verify_recovery(&space, &sm)?;
            let passed = recovery.passed();
            let doc = json!({
                "elementCount": sm.model.len(),
                "minSizeElement": sm.model.min_size_element()?,
                "model": sm.model.to_json(),
                "recovery": report_doc(&recovery),
                "theta": format_ratio(&theta),
            });
            Ok((doc, if passed { 0 } else { 4 }))
        }

        Command::Ged { g1, g2, costs } => {
            let g1 = load_graph(g1)?;
            let g2 = load_graph(g2)?;
            let costs = EditCostTables::from_json_str(&read_file(costs)?)?;
            let result = ged_brute_force(&g1, &g2, &costs)?;
            Ok((
                json!({
                    "bestBijection": result.best_bijection,
                    "bijectionsScanned": result.bijections_scanned,
                    "distance": format_ratio(&result.distance),
                }),
                0,
            ))
        }

        Command::VerifyGed {
            max_vertices,
            costs,
            dir,
        } => {
            let costs = EditCostTables::from_json_str(&read_file(costs)?)?;
            let ctx = GedCorrespondence::build(*max_vertices, costs, &ratio_int(1))?;
            let named = load_graph_dir(dir)?;
            let mut pairs = Vec::new();
            let mut all_equal = true;
            for i in 0..named.len() {
                for j in i..named.len() {
                    let report = ctx
                        .verify(&named[i].1, &named[j].1)
                        .map_err(|e| e.with_context(&format!("{} vs {}", named[i].0, named[j].0)))?;
                    all_equal &= report.equal && report.per_bijection_identity;
                    pairs.push(json!({
                        "first": named[i].0,
                        "second": named[j].0,
                        "editDistance": format_ratio(&report.edit_distance),
                        "modelDistance": format_ratio(&report.model_distance),
                        "equal": report.equal,
                        "perBijectionIdentity": report.per_bijection_identity,
                        "completionStable": report.completion_stable,
                    }));
                }
            }
            let doc = json!({ "allEqual": all_equal, "pairs": pairs });
            Ok((doc, if all_equal { 0 } else { 4 }))
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::UnknownElement(_)
        | Error::UnknownLabel(_)
        | Error::MissingWeight(_) => 2,
        Error::CapExceeded { .. } => 3,
        Error::ModelViolation(_) | Error::ContractViolation(_) => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, code)) => {
            println!("{}", render(&doc, cli.format));
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}
