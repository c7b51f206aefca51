//! Batch front end: reproducible sampling runs over edge lists and point
//! tables, plus sample-quality metrics.
//!
//! Exit status: 0 success, 1 data error, 2 usage error. Output files are
//! written to a temporary file and renamed into place, so a failing run
//! never leaves a partial file behind. Identical invocations on identical
//! inputs produce byte-identical outputs, whatever `--threads` says.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nn_sampler::{io, local_sample, metrics, sample_graph, sample_points, PointProvider,
    PointSet, SamplerConfig, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "nn-sampler",
    version,
    about = "Deterministic representative sampling of weighted networks and point data"
)]
struct Cli {
    /// Worker threads for scoring (default: all cores); results do not
    /// depend on it
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SelectionArgs {
    /// Logarithm base x of the representativeness score r = k / log_x d;
    /// must be > 1
    #[arg(long)]
    log_base: f64,

    /// Keep objects with r >= this value
    #[arg(long, default_value_t = 1.0)]
    threshold: f64,

    /// Output sample file (default: input path with extension `sample`)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a weighted graph given as an edge list (source, target,
    /// weight per line; tab or comma separated; '#' comments)
    SampleGraph {
        input: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
        /// Also write cumulative degree/weight distribution tables for the
        /// original and the sampled graph
        #[arg(long)]
        emit_metrics: bool,
    },
    /// Sample a point table (one point per line, constant dimension)
    SamplePoints {
        input: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
        /// Neighborhood radius, in the units of the data
        #[arg(long)]
        radius: f64,
        /// Distance discretization step for nearest-neighbor ranking
        #[arg(long)]
        step: f64,
        /// Also write 2-d density histograms (cell size = radius) for the
        /// original and the sampled points
        #[arg(long)]
        emit_metrics: bool,
    },
    /// Sample only a region of the dataset: reads ids from --region (node
    /// labels; or 0-based point ids when --radius/--step are given) and
    /// selects exactly the global representatives inside it
    LocalSample {
        input: PathBuf,
        /// File with one region member per line
        #[arg(long)]
        region: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
        /// Neighborhood radius (point data only)
        #[arg(long)]
        radius: Option<f64>,
        /// Discretization step (point data only)
        #[arg(long)]
        step: Option<f64>,
    },
    /// Compare a sampled graph against its original: writes distribution
    /// tables and prints KS distances plus retention. The sample may be a
    /// sample file from this tool (its members induce the subgraph) or an
    /// edge list of the sampled network
    Metrics {
        original: PathBuf,
        sample: PathBuf,
        /// Directory for the distribution tables (default: current)
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn usage(msg: impl Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    fn data(msg: impl Display) -> Self {
        CliError::Data(msg.to_string())
    }
}

impl From<nn_sampler::Error> for CliError {
    fn from(err: nn_sampler::Error) -> Self {
        match err {
            nn_sampler::Error::Config(_) => CliError::Usage(err.to_string()),
            _ => CliError::Data(err.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run with --help for usage");
            ExitCode::from(2)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(CliError::usage)?;
    }
    match cli.command {
        Command::SampleGraph {
            input,
            selection,
            emit_metrics,
        } => run_sample_graph(&input, &selection, emit_metrics),
        Command::SamplePoints {
            input,
            selection,
            radius,
            step,
            emit_metrics,
        } => run_sample_points(&input, &selection, radius, step, emit_metrics),
        Command::LocalSample {
            input,
            region,
            selection,
            radius,
            step,
        } => run_local_sample(&input, &region, &selection, radius, step),
        Command::Metrics {
            original,
            sample,
            out_dir,
        } => run_metrics(&original, &sample, &out_dir),
    }
}

/// Validates selection flags before anything touches the filesystem.
fn build_config(selection: &SelectionArgs) -> CliResult<SamplerConfig> {
    let config = SamplerConfig::new(selection.log_base)
        .map_err(CliError::usage)?
        .with_threshold(selection.threshold)
        .map_err(CliError::usage)?;
    Ok(config)
}

fn validate_radius_step(radius: f64, step: f64) -> CliResult<()> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(CliError::usage(format!(
            "--radius must be a finite number > 0, got {radius}"
        )));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(CliError::usage(format!(
            "--step must be a finite number > 0, got {step}"
        )));
    }
    Ok(())
}

fn output_path(input: &Path, explicit: &Option<PathBuf>) -> PathBuf {
    explicit
        .clone()
        .unwrap_or_else(|| input.with_extension("sample"))
}

fn summary_line(selected: usize, total: usize) -> String {
    let pct = if total == 0 {
        0
    } else {
        (100.0 * selected as f64 / total as f64).round() as u32
    };
    format!("{selected}/{total} objects ({pct}%)")
}

/// Writes through a temp file in the destination directory and renames
/// into place on success.
fn write_atomic(path: &Path, write: impl FnOnce(&mut dyn Write) -> CliResult<()>) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut temp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
        .map_err(CliError::data)?;
    write(&mut temp)?;
    temp.flush().map_err(CliError::data)?;
    temp.persist(path)
        .map_err(|err| CliError::data(format!("cannot write {}: {}", path.display(), err.error)))?;
    Ok(())
}

fn write_sample_atomic(path: &Path, file: &io::SampleFile) -> CliResult<()> {
    write_atomic(path, |w| io::write_sample(file, w).map_err(CliError::from))
}

fn write_distribution_atomic(
    path: &Path,
    distribution: &metrics::CumulativeDistribution,
) -> CliResult<()> {
    write_atomic(path, |w| {
        io::write_distribution(distribution, w).map_err(CliError::from)
    })
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

fn dataset_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_graph(path: &Path) -> CliResult<WeightedGraph> {
    let records = io::read_edge_list_path(path)
        .map_err(|err| CliError::data(format!("{}: {err}", path.display())))?;
    WeightedGraph::from_records(&records)
        .map_err(|err| CliError::data(format!("{}: {err}", path.display())))
}

fn load_points(path: &Path) -> CliResult<PointSet> {
    io::read_points_path(path).map_err(|err| CliError::data(format!("{}: {err}", path.display())))
}

fn run_sample_graph(input: &Path, selection: &SelectionArgs, emit_metrics: bool) -> CliResult<()> {
    let config = build_config(selection)?;
    let graph = load_graph(input)?;
    let sha = io::file_sha256(input).map_err(CliError::from)?;
    let sample = sample_graph(&graph, &config).map_err(CliError::from)?;

    let out = output_path(input, &selection.output);
    let file = io::SampleFile::for_graph(&sample, &graph, &dataset_name(input), Some(sha));
    write_sample_atomic(&out, &file)?;

    if emit_metrics {
        let pairs = [
            (".degree-original.csv", metrics::cumulative_degree_distribution(&graph)),
            (".degree-sample.csv", metrics::cumulative_degree_distribution(&sample.subgraph)),
            (".weight-original.csv", metrics::cumulative_weight_distribution(&graph)),
            (".weight-sample.csv", metrics::cumulative_weight_distribution(&sample.subgraph)),
        ];
        for (suffix, distribution) in &pairs {
            write_distribution_atomic(&suffixed(&out, suffix), distribution)?;
        }
    }

    println!(
        "{}",
        summary_line(sample.result.selected.len(), graph.node_count())
    );
    Ok(())
}

fn run_sample_points(
    input: &Path,
    selection: &SelectionArgs,
    radius: f64,
    step: f64,
    emit_metrics: bool,
) -> CliResult<()> {
    validate_radius_step(radius, step)?;
    let config = build_config(selection)?
        .with_radius_step(radius, step)
        .map_err(CliError::usage)?;
    let points = load_points(input)?;
    let sha = io::file_sha256(input).map_err(CliError::from)?;
    let result = sample_points(&points, &config).map_err(CliError::from)?;

    let out = output_path(input, &selection.output);
    let file = io::SampleFile::for_points(
        &result,
        points.len() as u64,
        &points,
        &dataset_name(input),
        Some(sha),
    );
    write_sample_atomic(&out, &file)?;

    if emit_metrics {
        if points.dim() != 2 {
            return Err(CliError::data(format!(
                "density metrics require 2-dimensional data, got dimension {}",
                points.dim()
            )));
        }
        let original = metrics::grid_density_histogram(&points, radius).map_err(CliError::from)?;
        let sampled_coords: Vec<f64> = result
            .selected
            .iter()
            .flat_map(|&o| points.point(o).to_vec())
            .collect();
        let sampled = PointSet::new(2, sampled_coords).map_err(CliError::from)?;
        let sample_hist =
            metrics::grid_density_histogram(&sampled, radius).map_err(CliError::from)?;
        write_atomic(&suffixed(&out, ".density-original.csv"), |w| {
            io::write_density_histogram(&original, w).map_err(CliError::from)
        })?;
        write_atomic(&suffixed(&out, ".density-sample.csv"), |w| {
            io::write_density_histogram(&sample_hist, w).map_err(CliError::from)
        })?;
    }

    println!("{}", summary_line(result.selected.len(), points.len()));
    Ok(())
}

fn run_local_sample(
    input: &Path,
    region_path: &Path,
    selection: &SelectionArgs,
    radius: Option<f64>,
    step: Option<f64>,
) -> CliResult<()> {
    let config = build_config(selection)?;
    let point_mode = match (radius, step) {
        (Some(r), Some(s)) => {
            validate_radius_step(r, s)?;
            true
        }
        (None, None) => false,
        _ => {
            return Err(CliError::usage(
                "--radius and --step must be given together (point data) or not at all (graph data)",
            ));
        }
    };

    let region_members = io::read_region(
        std::io::BufReader::new(fs::File::open(region_path).map_err(|err| {
            CliError::data(format!("{}: {err}", region_path.display()))
        })?),
    )
    .map_err(CliError::from)?;
    let sha = io::file_sha256(input).map_err(CliError::from)?;
    let out = output_path(input, &selection.output);

    if point_mode {
        let (radius, step) = (radius.unwrap(), step.unwrap());
        let config = config.with_radius_step(radius, step).map_err(CliError::usage)?;
        let points = load_points(input)?;
        let mut region = Vec::with_capacity(region_members.len());
        for member in &region_members {
            let id: u32 = member
                .parse()
                .map_err(|_| CliError::data(format!("unknown object id: {member}")))?;
            region.push(id);
        }
        region.sort_unstable();
        region.dedup();
        let provider = PointProvider::new(&points, radius, step).map_err(CliError::from)?;
        let result = local_sample(&provider, &region, &config).map_err(CliError::from)?;
        let file = io::SampleFile::for_points(
            &result,
            region.len() as u64,
            &points,
            &dataset_name(input),
            Some(sha),
        );
        write_sample_atomic(&out, &file)?;
        println!("{}", summary_line(result.selected.len(), region.len()));
    } else {
        let graph = load_graph(input)?;
        let mut region = Vec::with_capacity(region_members.len());
        for member in &region_members {
            let id = graph
                .node_id(member)
                .ok_or_else(|| CliError::data(format!("unknown object id: {member}")))?;
            region.push(id);
        }
        region.sort_unstable();
        region.dedup();
        let result = local_sample(&graph, &region, &config).map_err(CliError::from)?;
        let file = io::SampleFile::for_graph_selection(
            &result,
            region.len() as u64,
            &graph,
            &dataset_name(input),
            Some(sha),
        );
        write_sample_atomic(&out, &file)?;
        println!("{}", summary_line(result.selected.len(), region.len()));
    }
    Ok(())
}

/// Loads the sampled network: either a sample file whose members induce
/// a subgraph of `original`, or a plain edge list.
fn load_sampled_network(path: &Path, original: &WeightedGraph) -> CliResult<WeightedGraph> {
    let first_line = {
        use std::io::BufRead;
        let file = fs::File::open(path)
            .map_err(|err| CliError::data(format!("{}: {err}", path.display())))?;
        let mut line = String::new();
        std::io::BufReader::new(file)
            .read_line(&mut line)
            .map_err(CliError::data)?;
        line
    };
    if !first_line.starts_with("# kind:") {
        return load_graph(path);
    }
    let sample = io::read_sample_path(path).map_err(CliError::from)?;
    if sample.kind != io::SampleKind::Graph {
        return Err(CliError::data(format!(
            "{}: metrics compares graphs; use --emit-metrics when sampling points",
            path.display()
        )));
    }
    let mut members = Vec::with_capacity(sample.members.len());
    for member in &sample.members {
        let id = original
            .node_id(&member.id)
            .ok_or_else(|| CliError::data(format!("unknown object id: {}", member.id)))?;
        members.push(id);
    }
    original.induced_subgraph(&members).map_err(CliError::from)
}

fn run_metrics(original: &Path, sample: &Path, out_dir: &Path) -> CliResult<()> {
    let original_graph = load_graph(original)?;
    let sample_graph = load_sampled_network(sample, &original_graph)?;

    let degree_original = metrics::cumulative_degree_distribution(&original_graph);
    let degree_sample = metrics::cumulative_degree_distribution(&sample_graph);
    let weight_original = metrics::cumulative_weight_distribution(&original_graph);
    let weight_sample = metrics::cumulative_weight_distribution(&sample_graph);

    let ks_degree = metrics::ks_distance(&degree_original, &degree_sample).map_err(CliError::from)?;
    let ks_weight = metrics::ks_distance(&weight_original, &weight_sample).map_err(CliError::from)?;
    let retention = metrics::retention_stats(
        metrics::DatasetCounts::graph(original_graph.node_count(), original_graph.edge_count()),
        metrics::DatasetCounts::graph(sample_graph.node_count(), sample_graph.edge_count()),
    )
    .map_err(CliError::from)?;

    fs::create_dir_all(out_dir).map_err(CliError::data)?;
    let tables = [
        ("original.degree.csv", &degree_original),
        ("sample.degree.csv", &degree_sample),
        ("original.weight.csv", &weight_original),
        ("sample.weight.csv", &weight_sample),
    ];
    for (name, distribution) in tables {
        write_distribution_atomic(&out_dir.join(name), distribution)?;
    }

    println!(
        "ks degree={ks_degree} weight={ks_weight} | retention nodes {}% edges {}%",
        retention.objects_pct,
        retention.edges_pct.unwrap_or(0)
    );
    Ok(())
}
