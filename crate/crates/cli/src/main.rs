//! Command-line front end: build graphs, measure spanning ratios, generate
//! adversarial families, run the inequality checks, and export SVG figures.
//!
//! Every command reads from stdin and writes to stdout unless `--input` or
//! `--output` name files, so commands compose into pipelines. All JSON output
//! goes through the fixed-precision serializer, making runs with the same
//! flags and seed byte-identical.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use pgram::analysis::{bound_candidates, bound_h, spanning_ratio, AnalysisError, RatioReport};
use pgram::construction::{
    build_graph, grid_voronoi_oracle, ConstructionError, DelaunayGraph, GraphJson, ShapeJson,
};
use pgram::geometry::{Point, ShapeSpec};
use pgram::io::{parse_points, points_to_csv, write_json_line, IoError};
use pgram::lemma_verifier::{verify_instance, VerifyError};
use pgram::lowerbound::{generate_worst_case, LowerBoundError, WorstCaseParams};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pgram",
    version,
    about = "Delaunay graphs of a fixed parallelogram: build, measure, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the worst-case spanning bound of a shape, then its candidate terms as JSON
    Bound {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the graph of a point set and write it as JSON
    Build {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Measure the spanning ratio of a built graph
    Ratio {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Generate a two-column point family whose spanning ratio approaches the bound
    WorstCase {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Total point count, split evenly between the two columns
        #[arg(long)]
        n: usize,
        /// Horizontal distance between the column anchors, in frame units
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Vertical anchor offset; defaults to the ratio-maximizing multiple of alpha
        #[arg(long)]
        beta: Option<f64>,
        /// Perturbation magnitude; defaults to 1e-6 * alpha
        #[arg(long)]
        epsilon: Option<f64>,
        /// Seed for the perturbation jitter
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format for the generated points
        #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
        format: String,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the path-length inequalities on a point set, one JSON line per check
    VerifyLemmas {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Compare built edges against the brute-force grid oracle
    OracleCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        io: IoArgs,
        /// Grid cells per axis for the rasterized oracle
        #[arg(long, default_value_t = 1024)]
        resolution: usize,
    },
    /// Render a built graph as SVG with the worst pair and a summary legend
    ExportSvg {
        #[command(flatten)]
        io: IoArgs,
        /// Also draw the witness parallelogram of every edge
        #[arg(long)]
        witnesses: bool,
    },
}

#[derive(clap::Args)]
struct ShapeArgs {
    /// Aspect ratio of the parallelogram: long side over short side, at least 1
    #[arg(long, value_name = "A")]
    aspect: Option<f64>,
    /// Angle between short and long sides, in radians, at most pi/2
    #[arg(long, value_name = "RAD")]
    angle: Option<f64>,
}

#[derive(clap::Args)]
struct IoArgs {
    /// Input file; stdin when omitted
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Bound { shape, output } => {
            let shape = shape.require()?;
            let mut out = open_output(output.as_ref())?;
            writeln!(out, "{:.16e}", bound_h(&shape)).map_err(write_err)?;
            write_json_line(&mut out, &bound_candidates(&shape)).map_err(write_err)
        }
        Command::Build { shape, io } => {
            let (points, shape) = points_and_shape(&shape, io.input.as_ref())?;
            let graph = build_graph(&points, &shape).map_err(construction_err)?;
            let mut out = open_output(io.output.as_ref())?;
            write_json_line(&mut out, &graph.to_json()).map_err(write_err)
        }
        Command::Ratio { io } => {
            let graph = read_graph(io.input.as_ref())?;
            let report = spanning_ratio(&graph).map_err(analysis_err)?;
            let mut out = open_output(io.output.as_ref())?;
            write_json_line(&mut out, &report).map_err(write_err)
        }
        Command::WorstCase {
            shape,
            n,
            alpha,
            beta,
            epsilon,
            seed,
            format,
            output,
        } => {
            let shape = shape.require()?;
            let epsilon = epsilon.unwrap_or(1e-6 * alpha);
            let params = WorstCaseParams::new(shape, n, alpha, beta, epsilon, seed)
                .map_err(lower_bound_err)?;
            let points = generate_worst_case(&params).map_err(lower_bound_err)?;
            let mut out = open_output(output.as_ref())?;
            if format == "csv" {
                out.write_all(points_to_csv(&points).as_bytes())
                    .map_err(write_err)
            } else {
                let pairs: Vec<[f64; 2]> = points.iter().map(|&p| p.into()).collect();
                let set = json!({
                    "shape": ShapeJson {
                        aspect: params.shape.aspect(),
                        theta0: params.shape.angle(),
                    },
                    "points": pairs,
                });
                write_json_line(&mut out, &set).map_err(write_err)
            }
        }
        Command::VerifyLemmas { shape, io } => {
            let (points, shape) = points_and_shape(&shape, io.input.as_ref())?;
            let instance = io
                .input
                .as_deref()
                .and_then(|p| p.file_stem())
                .map_or_else(|| "stdin".to_string(), |s| s.to_string_lossy().into_owned());
            let report = verify_instance(&points, &shape, instance).map_err(verify_err)?;
            let mut out = open_output(io.output.as_ref())?;
            report.write_json_lines(&mut out).map_err(write_err)?;
            let violated = report.violations().len();
            if violated > 0 {
                return Err(fail(
                    EXIT_VERIFICATION,
                    format!("{violated} inequality check(s) violated"),
                ));
            }
            Ok(())
        }
        Command::OracleCheck {
            shape,
            io,
            resolution,
        } => {
            let (points, shape) = points_and_shape(&shape, io.input.as_ref())?;
            let graph = build_graph(&points, &shape).map_err(construction_err)?;
            let oracle = grid_voronoi_oracle(&points, &shape, resolution).map_err(|e| {
                match e {
                    ConstructionError::BadResolution(_) => fail(EXIT_USAGE, e.to_string()),
                    other => construction_err(other),
                }
            })?;
            let built: std::collections::BTreeSet<(usize, usize)> =
                graph.edge_pairs().into_iter().collect();
            let matched = built.intersection(&oracle.edges).count();
            let only_in_build: Vec<_> = built.difference(&oracle.edges).collect();
            let only_in_oracle: Vec<_> = oracle.edges.difference(&built).collect();
            let union = matched + only_in_build.len() + only_in_oracle.len();
            let agreement_pct = if union == 0 {
                100.0
            } else {
                100.0 * matched as f64 / union as f64
            };
            let mut out = open_output(io.output.as_ref())?;
            write_json_line(
                &mut out,
                &json!({
                    "resolution": resolution,
                    "cell_size": oracle.cell_size,
                    "skipped_cells": oracle.skipped_cells,
                    "matched": matched,
                    "only_in_build": only_in_build,
                    "only_in_oracle": only_in_oracle,
                    "agreement_pct": agreement_pct,
                }),
            )
            .map_err(write_err)
        }
        Command::ExportSvg { io, witnesses } => {
            let graph = read_graph(io.input.as_ref())?;
            let report = spanning_ratio(&graph).map_err(analysis_err)?;
            let svg = render_svg(&graph, &report, witnesses);
            let mut out = open_output(io.output.as_ref())?;
            out.write_all(svg.as_bytes()).map_err(write_err)
        }
    }
}

impl ShapeArgs {
    fn require(&self) -> Result<ShapeSpec, Failure> {
        self.validate()?
            .ok_or_else(|| fail(EXIT_USAGE, "pass both --aspect and --angle"))
    }

    /// Checks the flags alone, before any input is read: `Ok(None)` means no
    /// shape flags were given at all.
    fn validate(&self) -> Result<Option<ShapeSpec>, Failure> {
        match (self.aspect, self.angle) {
            (Some(a), Some(t)) => ShapeSpec::new(a, t)
                .map(Some)
                .map_err(|e| fail(EXIT_USAGE, e.to_string())),
            (None, None) => Ok(None),
            _ => Err(fail(EXIT_USAGE, "pass both --aspect and --angle")),
        }
    }
}

/// Shape from flags when given, else from a `"shape"` object embedded in
/// JSON input.
fn resolve_shape(validated: Option<ShapeSpec>, input_text: &str) -> Result<ShapeSpec, Failure> {
    match validated {
        Some(shape) => Ok(shape),
        None => {
            let embedded = embedded_shape(input_text).ok_or_else(|| {
                fail(
                    EXIT_USAGE,
                    "no shape given: pass --aspect and --angle, or feed JSON with a \"shape\" field",
                )
            })?;
            ShapeSpec::new(embedded.aspect, embedded.theta0)
                .map_err(|e| fail(EXIT_INPUT, format!("embedded shape: {e}")))
        }
    }
}

fn embedded_shape(text: &str) -> Option<ShapeJson> {
    let value: serde_json::Value = serde_json::from_str(text.trim()).ok()?;
    serde_json::from_value(value.get("shape")?.clone()).ok()
}

fn points_and_shape(args: &ShapeArgs, input: Option<&PathBuf>) -> Result<(Vec<Point>, ShapeSpec), Failure> {
    let validated = args.validate()?;
    let text = read_input(input)?;
    let points = parse_points(&text).map_err(io_err)?;
    let shape = resolve_shape(validated, &text)?;
    Ok((points, shape))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| fail(EXIT_INPUT, format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => fs::File::create(p)
            .map(|f| Box::new(f) as Box<dyn Write>)
            .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn read_graph(path: Option<&PathBuf>) -> Result<DelaunayGraph, Failure> {
    let text = read_input(path)?;
    let parsed: GraphJson = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_INPUT, format!("graph JSON: {e}")))?;
    DelaunayGraph::try_from(parsed).map_err(construction_err)
}

fn io_err(e: IoError) -> Failure {
    fail(EXIT_INPUT, e.to_string())
}

fn write_err(e: std::io::Error) -> Failure {
    fail(EXIT_INPUT, format!("write failed: {e}"))
}

fn construction_err(e: ConstructionError) -> Failure {
    let code = match &e {
        ConstructionError::GeneralPosition(_) | ConstructionError::DegenerateTriple { .. } => {
            EXIT_DEGENERATE
        }
        ConstructionError::TooFewPoints { .. } | ConstructionError::InvalidGraph(_) => EXIT_INPUT,
        ConstructionError::BadResolution(_) => EXIT_USAGE,
        ConstructionError::Geometry(_) => EXIT_DEGENERATE,
    };
    fail(code, e.to_string())
}

fn analysis_err(e: AnalysisError) -> Failure {
    let code = match &e {
        // A well-formed build is always connected, so a disconnected graph
        // means the input file was edited by hand.
        AnalysisError::Disconnected(_, _) => EXIT_INPUT,
        AnalysisError::Geometry(_) => EXIT_DEGENERATE,
    };
    fail(code, e.to_string())
}

fn lower_bound_err(e: LowerBoundError) -> Failure {
    let code = match &e {
        LowerBoundError::Degenerate(_) => EXIT_DEGENERATE,
        _ => EXIT_USAGE,
    };
    fail(code, e.to_string())
}

fn verify_err(e: VerifyError) -> Failure {
    match e {
        VerifyError::Construction(c) => construction_err(c),
        other => fail(EXIT_DEGENERATE, other.to_string()),
    }
}

/// Static SVG 1.1 figure in original coordinates: edges, points, the worst
/// pair's segment, a legend, and optionally every edge witness parallelogram.
fn render_svg(graph: &DelaunayGraph, report: &RatioReport, witnesses: bool) -> String {
    const PLOT: f64 = 760.0;
    const PAD: f64 = 40.0;
    const LEGEND: f64 = 92.0;

    let (mut xlo, mut xhi, mut ylo, mut yhi) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &graph.points {
        xlo = xlo.min(p.x);
        xhi = xhi.max(p.x);
        ylo = ylo.min(p.y);
        yhi = yhi.max(p.y);
    }
    let span = (xhi - xlo).max(yhi - ylo).max(1e-9);
    let scale = PLOT / span;
    let width = (xhi - xlo) * scale + 2.0 * PAD;
    let height = (yhi - ylo) * scale + 2.0 * PAD + LEGEND;
    // SVG y grows downward; plot coordinates grow upward.
    let sx = |p: Point| PAD + (p.x - xlo) * scale;
    let sy = |p: Point| LEGEND + PAD + (yhi - p.y) * scale;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>\n"
    ));

    if witnesses {
        svg.push_str("<g stroke=\"#2ca02c\" stroke-width=\"0.6\" fill=\"none\" opacity=\"0.45\">\n");
        for edge in &graph.edges {
            let corners = edge.witness.corners().map(|c| graph.shape.from_square_space(c));
            let path: Vec<String> = corners
                .iter()
                .map(|&c| format!("{:.3},{:.3}", sx(c), sy(c)))
                .collect();
            svg.push_str(&format!("<polygon points=\"{}\"/>\n", path.join(" ")));
        }
        svg.push_str("</g>\n");
    }

    svg.push_str("<g stroke=\"#999999\" stroke-width=\"1\">\n");
    for edge in &graph.edges {
        let (a, b) = (graph.points[edge.a], graph.points[edge.b]);
        svg.push_str(&format!(
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>\n",
            sx(a),
            sy(a),
            sx(b),
            sy(b)
        ));
    }
    svg.push_str("</g>\n");

    let [wa, wb] = report.argmax_pair;
    if wa != wb {
        let (a, b) = (graph.points[wa], graph.points[wb]);
        svg.push_str(&format!(
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" \
             stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n",
            sx(a),
            sy(a),
            sx(b),
            sy(b)
        ));
    }

    svg.push_str("<g fill=\"#1f77b4\">\n");
    for (i, &p) in graph.points.iter().enumerate() {
        let accent = i == wa || i == wb;
        svg.push_str(&format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{}\"{}/>\n",
            sx(p),
            sy(p),
            if accent { 4.0 } else { 2.5 },
            if accent { " fill=\"#d62728\"" } else { "" }
        ));
    }
    svg.push_str("</g>\n");

    let bound = bound_h(&graph.shape);
    let lines = [
        format!("aspect A = {}", graph.shape.aspect()),
        format!("angle = {} rad", graph.shape.angle()),
        format!("spanning ratio = {:.6}", report.max_ratio),
        format!("worst-case bound = {bound:.6}"),
    ];
    svg.push_str("<g font-family=\"monospace\" font-size=\"14\" fill=\"#222222\">\n");
    for (i, line) in lines.iter().enumerate() {
        svg.push_str(&format!(
            "<text x=\"12\" y=\"{}\">{line}</text>\n",
            20 + 18 * i
        ));
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}
