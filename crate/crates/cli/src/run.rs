//! Subcommand implementations: each one drives the parse → catalog →
//! matrix → graph → layout pipeline as far as it needs and writes its
//! outputs under the configured directory.

use crate::config::{CliError, Format, RunConfig};
use heteromap::{
    build_catalog, build_frames, build_graph, build_matrix, connected_components, factor_analysis,
    kk_layout, parse_records, recordset_stats, rescale_positions, write_clu, write_graphml,
    write_pajek, AttributeCatalog, AttributeClass, Frame, HeteroGraph, LayoutParams,
    OccurrenceMatrix, Point, RecordSet, StopwordList,
};
use std::fs;
use std::path::{Path, PathBuf};

const VIEW_LO: f64 = 0.05;
const VIEW_HI: f64 = 0.95;

/// Status lines go through here instead of `println!` so a closed pipe
/// (e.g. piping into `head`) ends the output quietly rather than
/// panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

fn read_input(path: &Path) -> Result<RecordSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("can't read input {}: {e}", path.display())))?;
    let set = parse_records(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    for w in &set.warnings {
        eprintln!("warning: line {}: {}", w.line, w.message);
    }
    Ok(set)
}

fn load_stopwords(cfg: &RunConfig) -> Result<StopwordList, CliError> {
    match &cfg.stopwords {
        None => Ok(StopwordList::default_english()),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("can't read stopwords {}: {e}", path.display()))
            })?;
            Ok(StopwordList::from_text(&text))
        }
    }
}

fn layout_params(cfg: &RunConfig) -> LayoutParams {
    LayoutParams {
        seed: cfg.seed,
        ..LayoutParams::default()
    }
}

fn ensure_out_dir(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out_dir).map_err(|e| {
        CliError::Data(format!(
            "can't create output directory {}: {e}",
            cfg.out_dir.display()
        ))
    })
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes)
        .map_err(|e| CliError::Data(format!("can't write {}: {e}", path.display())))?;
    out!("wrote {}", path.display());
    Ok(())
}

/// Resolve the slicing window bounds, falling back to the corpus year
/// span when the configuration leaves either end open.
fn period_bounds(cfg: &RunConfig, set: &RecordSet) -> Result<(i32, i32), CliError> {
    let observed = recordset_stats(set).year_range;
    let start = match cfg.period_start {
        Some(s) => s,
        None => {
            observed
                .ok_or_else(|| CliError::Data("no dated records to slice".into()))?
                .0
        }
    };
    let end = match cfg.period_end {
        Some(e) => e,
        None => {
            observed
                .ok_or_else(|| CliError::Data("no dated records to slice".into()))?
                .1
                + 1
        }
    };
    if end <= start {
        return Err(CliError::Data(format!(
            "period end {end} must be after start {start}"
        )));
    }
    Ok((start, end))
}

fn class_breakdown(catalog: &AttributeCatalog) -> String {
    let parts: Vec<String> = AttributeClass::ALL
        .into_iter()
        .map(|c| format!("{} {}s", catalog.count_of(c), c.name()))
        .collect();
    parts.join(", ")
}

pub fn cmd_inspect(cfg: &RunConfig, input: &Path) -> Result<(), CliError> {
    let set = read_input(input)?;
    let stats = recordset_stats(&set);
    let undated = set.records.iter().filter(|r| r.year.is_none()).count();

    out!("records: {}", stats.records);
    match stats.year_range {
        Some((lo, hi)) if undated > 0 => out!("years: {lo}-{hi} ({undated} undated)"),
        Some((lo, hi)) => out!("years: {lo}-{hi}"),
        None => out!("years: none recorded"),
    }
    out!("distinct authors: {}", stats.distinct_authors);
    out!("distinct journals: {}", stats.distinct_journals);

    let stopwords = load_stopwords(cfg)?;
    let catalog = build_catalog(&set.records, &cfg.thresholds(), &stopwords);
    out!(
        "catalog under current thresholds: {} ({} attributes)",
        class_breakdown(&catalog),
        catalog.len()
    );
    out!("parse warnings: {}", set.warnings.len());
    Ok(())
}

/// Shared front half of `map`: records through similarity graph.
fn build_pipeline(
    cfg: &RunConfig,
    set: &RecordSet,
) -> Result<(AttributeCatalog, OccurrenceMatrix, HeteroGraph), CliError> {
    let stopwords = load_stopwords(cfg)?;
    let catalog = build_catalog(&set.records, &cfg.thresholds(), &stopwords);
    let matrix = build_matrix(&catalog, &set.records);
    let graph = build_graph(&matrix, cfg.cosine_threshold)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((catalog, matrix, graph))
}

/// Write one graph+layout in every requested format, using `stem` as the
/// base filename. JSON is the caller's business (its shape differs
/// between `map` and `slice`), so it is skipped here.
fn write_graph_outputs(
    cfg: &RunConfig,
    stem: &str,
    graph: &HeteroGraph,
    positions: &[Point],
    new_flags: &[bool],
) -> Result<Vec<PathBuf>, CliError> {
    let style = cfg.style();
    let mut written = Vec::new();
    for format in &cfg.formats {
        let (ext, bytes) = match format {
            Format::Net => {
                let mut buf = Vec::new();
                write_pajek(graph, positions, &style, &mut buf)
                    .map_err(|e| CliError::Data(e.to_string()))?;
                ("net", buf)
            }
            Format::Clu => {
                let mut buf = Vec::new();
                write_clu(graph, &mut buf).map_err(|e| CliError::Data(e.to_string()))?;
                ("clu", buf)
            }
            Format::Graphml => {
                let mut buf = Vec::new();
                write_graphml(graph, positions, &style, &mut buf)
                    .map_err(|e| CliError::Data(e.to_string()))?;
                ("graphml", buf)
            }
            Format::Svg => {
                let svg = heteromap::render_svg(graph, positions, &style, new_flags)
                    .map_err(|e| CliError::Data(e.to_string()))?;
                ("svg", svg.into_bytes())
            }
            Format::Json => continue,
        };
        let path = cfg.out_dir.join(format!("{stem}.{ext}"));
        write_output(&path, &bytes)?;
        written.push(path);
    }
    Ok(written)
}

pub fn cmd_map(cfg: &RunConfig, input: &Path) -> Result<(), CliError> {
    let set = read_input(input)?;
    let (catalog, _matrix, graph) = build_pipeline(cfg, &set)?;
    let layout = kk_layout(&graph, &layout_params(cfg));
    let components = connected_components(&graph.adjacency()).len();

    out!(
        "nodes: {} ({})",
        graph.n_nodes(),
        class_breakdown(&catalog)
    );
    out!(
        "edges: {} at cosine >= {}",
        graph.n_edges(),
        cfg.cosine_threshold
    );
    out!("components: {components}");
    out!(
        "layout: {} iterations, max gradient {:.3e}",
        layout.iterations, layout.max_gradient
    );

    ensure_out_dir(cfg)?;
    write_graph_outputs(cfg, "map", &graph, &layout.positions, &[])?;

    if cfg.formats.contains(&Format::Json) {
        let scaled = rescale_positions(&layout.positions, VIEW_LO, VIEW_HI);
        let style = cfg.style();
        let nodes: Vec<serde_json::Value> = graph
            .nodes
            .iter()
            .zip(&scaled)
            .map(|(node, p)| {
                let size = style
                    .size_of(node.frequency)
                    .map_err(|e| CliError::Data(e.to_string()))?;
                Ok(serde_json::json!({
                    "class": node.class.name(),
                    "label": node.label,
                    "frequency": node.frequency,
                    "x": p.x,
                    "y": p.y,
                    "size": size,
                }))
            })
            .collect::<Result<_, CliError>>()?;
        let edges: Vec<serde_json::Value> = graph
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "source": e.source,
                    "target": e.target,
                    "weight": e.weight,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "cosine_threshold": cfg.cosine_threshold,
            "seed": cfg.seed,
            "iterations": layout.iterations,
            "energy": layout.energy,
            "nodes": nodes,
            "edges": edges,
        });
        let text = serde_json::to_string_pretty(&doc)
            .map_err(|e| CliError::Data(e.to_string()))?;
        write_output(&cfg.out_dir.join("map.json"), text.as_bytes())?;
    }
    Ok(())
}

fn class_from_name(name: &str) -> Result<AttributeClass, CliError> {
    AttributeClass::ALL
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| CliError::Data(format!("frame carries unknown class \"{name}\"")))
}

/// Rebuild a graph and positions from a frame so the ordinary writers
/// can emit it. Frame coordinates are already in the viewport, and the
/// writers' rescale is the identity there.
fn frame_graph(frame: &Frame) -> Result<(HeteroGraph, Vec<Point>, Vec<bool>), CliError> {
    let mut graph = HeteroGraph::default();
    let mut positions = Vec::new();
    let mut new_flags = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, node) in frame.nodes.iter().enumerate() {
        index.insert(node.id.as_str(), i);
        graph.nodes.push(heteromap::GraphNode {
            class: class_from_name(&node.class)?,
            label: node.label.clone(),
            frequency: node.frequency,
        });
        positions.push(Point::new(node.x, node.y));
        new_flags.push(node.is_new);
    }
    for edge in &frame.edges {
        let (Some(&s), Some(&t)) = (index.get(edge.source.as_str()), index.get(edge.target.as_str()))
        else {
            return Err(CliError::Data(format!(
                "frame edge {} -- {} references a missing node",
                edge.source, edge.target
            )));
        };
        graph.edges.push(heteromap::GraphEdge {
            source: s.min(t),
            target: s.max(t),
            weight: edge.weight,
        });
    }
    Ok((graph, positions, new_flags))
}

pub fn cmd_slice(cfg: &RunConfig, input: &Path) -> Result<(), CliError> {
    let set = read_input(input)?;
    let (start, end) = period_bounds(cfg, &set)?;
    let stopwords = load_stopwords(cfg)?;
    let manifest = build_frames(
        &set.records,
        start,
        cfg.period_width,
        end,
        cfg.cosine_threshold,
        &cfg.thresholds(),
        &stopwords,
        &layout_params(cfg),
        &cfg.style(),
    )
    .map_err(|e| CliError::Data(e.to_string()))?;

    out!(
        "windows: {} x {} years over {start}-{}",
        manifest.frames.len(),
        cfg.period_width,
        end - 1
    );
    if manifest.undated_records > 0 {
        out!("undated records excluded: {}", manifest.undated_records);
    }
    for frame in &manifest.frames {
        out!(
            "frame {}: {} records, {} nodes, {} edges",
            frame.period,
            frame.records,
            frame.nodes.len(),
            frame.edges.len()
        );
    }

    ensure_out_dir(cfg)?;
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Data(e.to_string()))?;
    write_output(&cfg.out_dir.join("slices.json"), text.as_bytes())?;

    let per_frame: Vec<Format> = cfg
        .formats
        .iter()
        .copied()
        .filter(|f| *f != Format::Json)
        .collect();
    if !per_frame.is_empty() {
        let mut frame_cfg = cfg.clone();
        frame_cfg.formats = per_frame;
        for frame in &manifest.frames {
            let (graph, positions, new_flags) = frame_graph(frame)?;
            let stem = format!("frame_{}", frame.period);
            write_graph_outputs(&frame_cfg, &stem, &graph, &positions, &new_flags)?;
        }
    }
    Ok(())
}

pub fn cmd_factors(cfg: &RunConfig, input: &Path) -> Result<(), CliError> {
    let set = read_input(input)?;
    let (catalog, matrix, _graph) = build_pipeline(cfg, &set)?;
    let result = factor_analysis(&matrix, cfg.factors)
        .map_err(|e| CliError::Data(e.to_string()))?;

    let constant = matrix.n_attrs() - result.kept_columns.len();
    out!("documents: {}", matrix.n_docs());
    out!(
        "attributes: {} ({} analyzed, {} constant)",
        matrix.n_attrs(),
        result.kept_columns.len(),
        constant
    );
    let mut cumulative = 0.0;
    for (f, share) in result.variance_fractions.iter().enumerate() {
        cumulative += share;
        out!(
            "factor {}: eigenvalue {:.4}, variance {:.1}% (cumulative {:.1}%)",
            f + 1,
            result.eigenvalues[f],
            share * 100.0,
            cumulative * 100.0
        );
    }

    ensure_out_dir(cfg)?;
    let path = cfg.out_dir.join("factors.csv");
    let mut writer = csv::Writer::from_path(&path)
        .map_err(|e| CliError::Data(format!("can't write {}: {e}", path.display())))?;
    let mut header = vec!["class".to_string(), "label".to_string(), "frequency".to_string()];
    for f in 0..cfg.factors {
        header.push(format!("factor_{}", f + 1));
    }
    writer
        .write_record(&header)
        .map_err(|e| CliError::Data(e.to_string()))?;
    for (row, &col) in result.kept_columns.iter().enumerate() {
        let attr = &catalog.attributes[col];
        let mut fields = vec![
            attr.class.name().to_string(),
            attr.label.clone(),
            attr.frequency.to_string(),
        ];
        for &loading in &result.loadings[row] {
            fields.push(format!("{loading:.6}"));
        }
        writer
            .write_record(&fields)
            .map_err(|e| CliError::Data(e.to_string()))?;
    }
    writer
        .flush()
        .map_err(|e| CliError::Data(e.to_string()))?;
    out!("wrote {}", path.display());
    Ok(())
}
