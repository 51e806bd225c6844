//! Implementations of the subcommands and their report formats.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::json;

use ekr_core::error::{Error, Result};
use ekr_core::family::SetFamily;
use ekr_core::graph::Graph;
use ekr_core::shift::{stabilize, standard_base_shifts};
use ekr_core::theorems::{
    counterexample_report, star_size_table, verify_ekr, EkrClass, EkrVerdict,
};

use crate::{Command, OutputFormat, RunConfig};

pub fn run(config: RunConfig) -> Result<ExitCode> {
    match config.command {
        Command::Build { graph, out } => cmd_build(&graph, out.as_deref()),
        Command::Enumerate {
            graph,
            r,
            format,
            out,
        } => cmd_enumerate(&graph, r, format, out.as_deref()),
        Command::Verify {
            graph,
            r,
            strict,
            solver,
            format,
            out,
        } => cmd_verify(&graph, r, strict, &solver, format, out.as_deref()),
        Command::Scan {
            graph,
            r,
            strict,
            solver,
            format,
            out,
        } => cmd_scan(&graph, r, strict, &solver, format, out.as_deref()),
        Command::Counterexample { n, k, format, out } => {
            cmd_counterexample(n, k, format, out.as_deref())
        }
        Command::ShiftDemo {
            family,
            format,
            out,
        } => cmd_shift_demo(&family, format, out.as_deref()),
        Command::Shadow {
            family,
            level,
            format,
            out,
        } => cmd_shadow(&family, level, format, out.as_deref()),
        Command::StarTable {
            graph,
            r,
            format,
            out,
        } => cmd_star_table(&graph, r, format, out.as_deref()),
    }
}

fn write_output(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

// ============================================================================
// build / enumerate
// ============================================================================

fn cmd_build(graph: &crate::GraphArgs, out: Option<&std::path::Path>) -> Result<ExitCode> {
    let g = graph.build()?;
    let text = ekr_core::dimacs::to_string(&g);
    let counts = format!("vertices={} edges={}\n", g.vertex_count(), g.edge_count());
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            print!("{counts}");
        }
        None => {
            print!("{text}");
            eprint!("{counts}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    graph: &crate::GraphArgs,
    r: usize,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let g = graph.build()?;
    if r > g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "r={r} exceeds the vertex count {}",
            g.vertex_count()
        )));
    }
    let family = SetFamily::enumerate_independent(&g, r);
    let content = match format {
        OutputFormat::Json => format!("{}\n", family.to_json()),
        OutputFormat::Csv => {
            let mut s = String::from("# schema=1\n");
            for m in family.iter() {
                let row: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!("graph={} r={r} members={}\n", g.name(), family.len());
            for m in family.iter() {
                let row: Vec<String> = m.iter().map(|v| g.vertex_label(v)).collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
            s
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// verify / scan
// ============================================================================

fn verdict_exit(verdict: &EkrVerdict) -> ExitCode {
    if !verdict.certified {
        ExitCode::from(4)
    } else if verdict.classification == EkrClass::NotEkr {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn verdict_text(verdict: &EkrVerdict, g: &Graph) -> String {
    let centers: Vec<String> = verdict
        .best_star_centers
        .iter()
        .map(|&v| g.vertex_label(v))
        .collect();
    let mut s = format!(
        "graph={} r={} class={} max={} best_star={} family={} centers={} certified={}\n",
        verdict.graph_name,
        verdict.r,
        verdict.classification.as_str(),
        verdict.max_size,
        verdict.best_star_size,
        verdict.family_size,
        centers.join(","),
        verdict.certified
    );
    if let Some(probe) = &verdict.strictness {
        s.push_str(&format!(
            "strictness: maximum_families={} all_stars={} truncated={}\n",
            probe.maximum_family_count, probe.all_maximum_are_stars, probe.truncated
        ));
    }
    if let Some(w) = &verdict.witness {
        let sets: Vec<String> = w
            .iter()
            .map(|m| {
                let names: Vec<String> = m.iter().map(|v| g.vertex_label(v)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        s.push_str(&format!("witness: {}\n", sets.join(" ")));
    }
    if let Some(flag) = &verdict.range_flag {
        s.push_str(&format!("note: {flag}\n"));
    }
    s
}

fn cmd_verify(
    graph: &crate::GraphArgs,
    r: usize,
    strict: bool,
    solver: &crate::SolverArgs,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let g = graph.build()?;
    if r > g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "r={r} exceeds the vertex count {}",
            g.vertex_count()
        )));
    }
    let verdict = verify_ekr(&g, r, strict, &solver.to_config()?)?;
    let content = match format {
        OutputFormat::Json => format!("{}\n", verdict.to_json()),
        OutputFormat::Csv | OutputFormat::Text => verdict_text(&verdict, &g),
    };
    write_output(out, &content)?;
    Ok(verdict_exit(&verdict))
}

fn csv_field(value: &str) -> String {
    if value.contains(',') || value.contains('"') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

struct ScanRow {
    graph: String,
    r: usize,
    family_size: usize,
    best_star: usize,
    max: usize,
    class: String,
    certified: bool,
    millis: u128,
}

fn cmd_scan(
    graph: &crate::GraphArgs,
    range: crate::RRange,
    strict: bool,
    solver: &crate::SolverArgs,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let g = graph.build()?;
    let config = solver.to_config()?;
    let mut rows = Vec::new();
    for r in range.values() {
        if r > g.vertex_count() {
            break;
        }
        let started = Instant::now();
        match verify_ekr(&g, r, strict, &config) {
            Ok(v) => rows.push(ScanRow {
                graph: v.graph_name,
                r,
                family_size: v.family_size,
                best_star: v.best_star_size,
                max: v.max_size,
                class: v.classification.as_str().to_string(),
                certified: v.certified,
                millis: started.elapsed().as_millis(),
            }),
            // Row-level failure: record and keep scanning.
            Err(e) => rows.push(ScanRow {
                graph: g.name().to_string(),
                r,
                family_size: 0,
                best_star: 0,
                max: 0,
                class: format!("error: {e}"),
                certified: false,
                millis: started.elapsed().as_millis(),
            }),
        }
    }

    let content = match format {
        OutputFormat::Csv => {
            let mut s = String::from("# schema=1\n");
            s.push_str("graph,r,family_size,best_star,max,class,certified,millis\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    csv_field(&row.graph),
                    row.r,
                    row.family_size,
                    row.best_star,
                    row.max,
                    csv_field(&row.class),
                    row.certified,
                    row.millis
                ));
            }
            s
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "graph": row.graph,
                        "r": row.r,
                        "family_size": row.family_size,
                        "best_star": row.best_star,
                        "max": row.max,
                        "class": row.class,
                        "certified": row.certified,
                        "millis": row.millis,
                    })
                })
                .collect();
            format!("{}\n", json!({ "schema": 1, "rows": rows }))
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{:<14} {:>3} {:>10} {:>9} {:>7} {:<12} {:>9} {:>7}\n",
                "graph", "r", "family", "best_star", "max", "class", "certified", "millis"
            );
            for row in &rows {
                s.push_str(&format!(
                    "{:<14} {:>3} {:>10} {:>9} {:>7} {:<12} {:>9} {:>7}\n",
                    row.graph,
                    row.r,
                    row.family_size,
                    row.best_star,
                    row.max,
                    row.class,
                    row.certified,
                    row.millis
                ));
            }
            s
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// counterexample
// ============================================================================

fn cmd_counterexample(
    n: usize,
    k: usize,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let report = counterexample_report(n, k)?;
    let content = match format {
        OutputFormat::Json => {
            let value = json!({
                "graph": report.graph_name,
                "n": report.n,
                "k": report.k,
                "r": report.r,
                "star_center": report.star_center,
                "star_size": report.star_size,
                "family_size": report.family_size,
                "intersecting": report.intersecting,
                "best_star_size": report.best_star_size,
                "in_theorem_range": report.in_theorem_range,
                "not_ekr_certified": report.not_ekr_certified,
            });
            format!("{value}\n")
        }
        OutputFormat::Csv | OutputFormat::Text => format!(
            "graph={} n={} k={} r={} star_center=p2 star={} family={} intersecting={} \
             best_star={} in_range={} not_ekr_certified={}\n",
            report.graph_name,
            report.n,
            report.k,
            report.r,
            report.star_size,
            report.family_size,
            report.intersecting,
            report.best_star_size,
            report.in_theorem_range,
            report.not_ekr_certified
        ),
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// shift-demo / shadow
// ============================================================================

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// The full family I^(r).
    Full,
    /// The star at --center.
    Star,
}

/// A family given as JSON or generated from a graph.
#[derive(Args, Debug)]
pub struct FamilySource {
    /// Family JSON file (`{"universe":…,"r":…,"members":[[…],…]}`).
    #[arg(long)]
    pub family_json: Option<PathBuf>,
    #[command(flatten)]
    pub graph: crate::GraphArgs,
    /// Set size r for a generated family.
    #[arg(long)]
    pub r: Option<usize>,
    /// Shape of the generated family.
    #[arg(long, value_enum, default_value_t = GenKind::Full)]
    pub gen: GenKind,
    /// Star center (vertex index) for --gen star.
    #[arg(long)]
    pub center: Option<usize>,
}

impl FamilySource {
    fn has_graph(&self) -> bool {
        self.graph.family.is_some() || self.graph.input.is_some()
    }

    /// Loads the family, plus the host graph when one was specified.
    fn load(&self, need_graph: bool) -> Result<(Option<Graph>, SetFamily)> {
        if let Some(path) = &self.family_json {
            let text = std::fs::read_to_string(path)?;
            let family = SetFamily::from_json(&text)?;
            let graph = if self.has_graph() {
                let g = self.graph.build()?;
                if g.vertex_count() != family.universe() {
                    return Err(Error::InvalidParameter(format!(
                        "family universe {} differs from graph order {}",
                        family.universe(),
                        g.vertex_count()
                    )));
                }
                Some(g)
            } else if need_graph {
                return Err(Error::InvalidParameter(
                    "this command needs the host graph: add --family/--input".into(),
                ));
            } else {
                None
            };
            return Ok((graph, family));
        }

        let g = self.graph.build()?;
        let r = self
            .r
            .ok_or_else(|| Error::InvalidParameter("generated families need --r".into()))?;
        let family = match self.gen {
            GenKind::Full => SetFamily::enumerate_independent(&g, r),
            GenKind::Star => {
                let center = self
                    .center
                    .ok_or_else(|| Error::InvalidParameter("--gen star needs --center".into()))?;
                SetFamily::star(&g, r, center)?
            }
        };
        Ok((Some(g), family))
    }
}

fn cmd_shift_demo(
    source: &FamilySource,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let (graph, family) = source.load(true)?;
    let g = graph.expect("load(true) guarantees a graph");
    let ops = standard_base_shifts(&g);
    let before_intersecting = family.is_intersecting();
    let outcome = stabilize(&family, &g, &ops)?;
    let changed = family
        .iter()
        .filter(|m| !outcome.family.contains(m))
        .count();
    let after_intersecting = outcome.family.is_intersecting();

    let content = match format {
        OutputFormat::Json => {
            let value = json!({
                "graph": g.name(),
                "r": family.r(),
                "size": family.len(),
                "shifts": ops.len(),
                "passes": outcome.passes,
                "members_moved": changed,
                "intersecting_before": before_intersecting,
                "intersecting_after": after_intersecting,
                "stable_family": outcome.family.iter().map(|m| m.to_vec()).collect::<Vec<_>>(),
            });
            format!("{value}\n")
        }
        OutputFormat::Csv | OutputFormat::Text => format!(
            "graph={} r={} size={} shifts={} passes={} members_moved={} \
             intersecting_before={} intersecting_after={}\n",
            g.name(),
            family.r(),
            family.len(),
            ops.len(),
            outcome.passes,
            changed,
            before_intersecting,
            after_intersecting
        ),
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_shadow(
    source: &FamilySource,
    level: Option<usize>,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let (_, family) = source.load(false)?;
    let levels: Vec<usize> = match level {
        Some(s) => vec![s],
        None => (0..=family.r()).rev().collect(),
    };
    let mut sizes = Vec::with_capacity(levels.len());
    for &s in &levels {
        sizes.push((s, family.shadow(s)?.len()));
    }

    let content = match format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = sizes
                .iter()
                .map(|&(s, size)| json!({ "level": s, "size": size }))
                .collect();
            format!(
                "{}\n",
                json!({ "r": family.r(), "members": family.len(), "shadows": rows })
            )
        }
        OutputFormat::Csv => {
            let mut text = String::from("# schema=1\nlevel,size\n");
            for &(s, size) in &sizes {
                text.push_str(&format!("{s},{size}\n"));
            }
            text
        }
        OutputFormat::Text => {
            let mut text = format!("r={} members={}\n", family.r(), family.len());
            for &(s, size) in &sizes {
                text.push_str(&format!("shadow[{s}] = {size}\n"));
            }
            text
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// star-table
// ============================================================================

fn cmd_star_table(
    graph: &crate::GraphArgs,
    range: crate::RRange,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let family = graph.star_formula()?;
    let rs: Vec<u64> = range.values().map(|r| r as u64).collect();
    let rows = star_size_table(&family, &rs)?;

    let content = match format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "graph": row.graph,
                        "r": row.r,
                        "formula": row.formula.to_string(),
                        "enumerated": row.enumerated,
                        "matches": row.matches(),
                    })
                })
                .collect();
            format!("{}\n", json!({ "rows": rows }))
        }
        OutputFormat::Csv => {
            let mut s = String::from("# schema=1\ngraph,r,formula,enumerated,matches\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_field(&row.graph),
                    row.r,
                    row.formula,
                    row.enumerated,
                    row.matches()
                ));
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{:<16} {:>3} {:>12} {:>12} {:>7}\n",
                "graph", "r", "formula", "enumerated", "match"
            );
            for row in &rows {
                s.push_str(&format!(
                    "{:<16} {:>3} {:>12} {:>12} {:>7}\n",
                    row.graph,
                    row.r,
                    row.formula.to_string(),
                    row.enumerated,
                    row.matches()
                ));
            }
            s
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}
