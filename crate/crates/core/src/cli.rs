//! The `periodic-law` command line.
//!
//! Every subcommand writes its result to standard output and diagnostics to
//! standard error. Exit status is 0 on success, 1 for bad input or usage and
//! 2 when an internal invariant fails.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chemotopology::{
    agglomerative_cluster, branch_basis, distance_matrix, minimal_neighborhoods, select_cut,
    Dendrogram, Linkage, Metric, SetOperator,
};
use crate::element_data::{load_table, raw_matrix, standardize, LayoutFixture, PropertyTable};
use crate::error::{Error, Result};
use crate::patterns::{
    diagonal_pairs, inert_pair_candidates, knights_move_pairs, pattern_score, pettifor_scale,
    secondary_periodicity_pairs, singularity_flags, structure_map, PatternKind,
    SimilarityPredicate,
};
use crate::posets::{
    dominance_poset, hasse, linear_extension_count, monotonicity_report, positional_poset,
    Orientation, Poset, LINEAR_EXTENSION_LIMIT,
};
use crate::sequences::sequence_table;
use crate::shell_orders::{aufbau_configuration, enumerate_shells, OrderParameter};

#[derive(Debug, Parser)]
#[command(
    name = "periodic-law",
    version,
    about = "Mathematical structures of the periodic table"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Period cardinalities and related integer sequences as CSV
    Sequences {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
    /// Subshells in filling order
    Shells {
        #[arg(long, default_value = "madelung")]
        order: OrderParameter,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Idealized ground-state configuration
    Aufbau {
        #[arg(long)]
        z: u32,
        #[arg(long, default_value = "madelung")]
        order: OrderParameter,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Dominance or positional partial orders and their Hasse diagrams
    Poset(PosetArgs),
    /// Hierarchical clustering of the property table
    Cluster(ClusterArgs),
    /// Set operators in the topology generated by the dendrogram's branches
    Topology(TopologyArgs),
    /// Similarity patterns of the table and their support in the dendrogram
    Patterns(PatternArgs),
    /// The Pettifor scale, or compounds placed on it
    Pettifor {
        /// CSV with header `element_a,element_b,structure`
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TreeFormat {
    Newick,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum PatternArg {
    Diagonal,
    #[value(name = "knights_move", alias = "knights-move")]
    KnightsMove,
    #[value(name = "secondary_periodicity", alias = "secondary-periodicity")]
    SecondaryPeriodicity,
    Singularity,
    #[value(name = "inert_pair", alias = "inert-pair")]
    InertPair,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PredicateArg {
    Quantile,
    Cut,
}

/// How to cut a dendrogram: `height:H`, `k:K` or `auto`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum CutPolicy {
    Height(f64),
    Clusters(usize),
    Auto,
}

impl FromStr for CutPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::InvalidArgument(format!("cut policy `{s}`: expected height:H, k:K or auto"));
        if s == "auto" {
            return Ok(Self::Auto);
        }
        match s.split_once(':') {
            Some(("height", h)) => h.parse().map(Self::Height).map_err(|_| bad()),
            Some(("k", k)) => k.parse().map(Self::Clusters).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Property table CSV; the bundled table when omitted
    #[arg(long)]
    table: Option<PathBuf>,
    /// Comma-separated property names
    #[arg(long, value_delimiter = ',')]
    props: Vec<String>,
}

#[derive(Debug, Args)]
struct TreeArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value = "euclidean")]
    metric: Metric,
    #[arg(long, default_value = "average")]
    linkage: Linkage,
    /// Use property values as given instead of standardizing them
    #[arg(long)]
    raw: bool,
}

#[derive(Debug, Args)]
struct PosetArgs {
    #[command(flatten)]
    table: TableArgs,
    /// One orientation per property (ascending or descending)
    #[arg(long, value_delimiter = ',')]
    orientations: Vec<Orientation>,
    /// Product order on (group, period) instead of property dominance
    #[arg(long, conflicts_with_all = ["props", "orientations"])]
    positional: bool,
    /// Element set CSV for the positional order; all elements when omitted
    #[arg(long, requires = "positional")]
    members: Option<PathBuf>,
    /// Report how monotone a property is along the positional order
    #[arg(long, requires = "positional")]
    monotonicity: Option<String>,
    #[arg(long, default_value = "ascending", requires = "monotonicity")]
    direction: Orientation,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    format: GraphFormat,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[command(flatten)]
    tree: TreeArgs,
    #[arg(long, value_enum, default_value_t = TreeFormat::Newick)]
    format: TreeFormat,
    /// Emit a partition (JSON) cut by `height:H`, `k:K` or `auto`
    #[arg(long)]
    cut: Option<CutPolicy>,
}

#[derive(Debug, Args)]
struct TopologyArgs {
    #[command(flatten)]
    tree: TreeArgs,
    /// Element set CSV, one symbol per row
    #[arg(long)]
    set: PathBuf,
    #[arg(long, default_value = "closure")]
    op: SetOperator,
    /// Add singletons to the basis (the topology becomes discrete)
    #[arg(long)]
    singletons: bool,
}

#[derive(Debug, Args)]
struct PatternArgs {
    #[command(flatten)]
    tree: TreeArgs,
    #[arg(long, value_enum)]
    kind: PatternArg,
    /// Element set CSV; all usable elements when omitted
    #[arg(long)]
    members: Option<PathBuf>,
    /// Diagonal pairs from every period, not only period 2
    #[arg(long)]
    widen: bool,
    /// Score the pairs against the dendrogram
    #[arg(long)]
    score: bool,
    #[arg(long, default_value_t = 0.25, requires = "score")]
    q: f64,
    #[arg(long, value_enum, default_value_t = PredicateArg::Quantile, requires = "score")]
    predicate: PredicateArg,
}

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli.command, err) {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Invariant(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(command: Command, err: &mut dyn Write) -> Result<String> {
    match command {
        Command::Sequences { max } => sequences(max),
        Command::Shells {
            order,
            count,
            format,
        } => {
            let shells: Vec<String> = enumerate_shells(order, count)
                .iter()
                .map(ToString::to_string)
                .collect();
            Ok(match format {
                TextFormat::Text => format!("{}\n", shells.join(" ")),
                TextFormat::Json => {
                    to_json(&json!({ "order": order.to_string(), "shells": shells }))
                }
            })
        }
        Command::Aufbau { z, order, format } => {
            let config = aufbau_configuration(z, order)?;
            Ok(match format {
                TextFormat::Text => format!("{config}\n"),
                TextFormat::Json => {
                    let shells: Vec<_> = config
                        .shells
                        .iter()
                        .map(|(s, e)| json!({ "shell": s.to_string(), "electrons": e }))
                        .collect();
                    to_json(&json!({
                        "z": z,
                        "order": order.to_string(),
                        "configuration": config.to_string(),
                        "shells": shells,
                    }))
                }
            })
        }
        Command::Poset(args) => poset(args),
        Command::Cluster(args) => cluster(args, err),
        Command::Topology(args) => topology(args, err),
        Command::Patterns(args) => patterns(args, err),
        Command::Pettifor { map } => pettifor(map.as_deref(), err),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn sequences(max: u32) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in sequence_table(max)? {
        w.serialize(row).map_err(csv_error)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse {
        line: e.position().map_or(0, |p| p.line() as usize),
        message: e.to_string(),
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn read_table(path: Option<&Path>) -> Result<PropertyTable> {
    match path {
        Some(p) => load_table(open(p)?),
        None => Ok(PropertyTable::bundled()),
    }
}

/// Symbols from the first column of a CSV file; a leading `symbol` header
/// is skipped and blank rows are ignored.
fn read_set(path: &Path) -> Result<Vec<String>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let Some(first) = record.get(0).filter(|s| !s.is_empty()) else {
            continue;
        };
        if i == 0 && first.eq_ignore_ascii_case("symbol") {
            continue;
        }
        out.push(first.to_string());
    }
    Ok(out)
}

fn selected_props(table: &PropertyTable, args: &TableArgs) -> Vec<String> {
    if args.props.is_empty() {
        table.complete_properties()
    } else {
        args.props.clone()
    }
}

struct Clustering {
    properties: Vec<String>,
    excluded: Vec<String>,
    tree: Dendrogram,
}

fn build_tree(args: &TreeArgs, err: &mut dyn Write) -> Result<Clustering> {
    let table = read_table(args.table.table.as_deref())?;
    let properties = selected_props(&table, &args.table);
    let names: Vec<&str> = properties.iter().map(String::as_str).collect();
    let data = if args.raw {
        raw_matrix(&table, &names)?
    } else {
        standardize(&table, &names)?
    };
    let outcome = distance_matrix(&data, args.metric)?;
    if !outcome.excluded.is_empty() {
        let _ = writeln!(
            err,
            "excluded for missing values: {}",
            outcome.excluded.join(", ")
        );
    }
    let tree = agglomerative_cluster(&outcome.matrix, args.linkage)?;
    Ok(Clustering {
        properties,
        excluded: outcome.excluded,
        tree,
    })
}

fn poset(args: PosetArgs) -> Result<String> {
    if args.positional {
        let layout = LayoutFixture::bundled();
        if let Some(property) = &args.monotonicity {
            let table = read_table(args.table.table.as_deref())?;
            let report = monotonicity_report(&table, property, args.direction, &layout)?;
            return Ok(to_json(&report));
        }
        let members = match &args.members {
            Some(p) => read_set(p)?,
            None => layout.iter().map(|(_, c)| c.symbol.clone()).collect(),
        };
        let refs: Vec<&str> = members.iter().map(String::as_str).collect();
        let positional = positional_poset(&layout, &refs)?;
        return emit_poset(&positional.poset, &positional.excluded, args.format);
    }
    let table = read_table(args.table.table.as_deref())?;
    if args.table.props.is_empty() {
        return Err(Error::InvalidArgument(
            "--props or --positional is required".into(),
        ));
    }
    let names: Vec<&str> = args.table.props.iter().map(String::as_str).collect();
    let orientations = if args.orientations.is_empty() {
        vec![Orientation::Ascending; names.len()]
    } else {
        args.orientations.clone()
    };
    let poset = dominance_poset(&table, &names, &orientations)?;
    emit_poset(&poset, &[], args.format)
}

fn emit_poset(poset: &Poset, excluded: &[String], format: GraphFormat) -> Result<String> {
    let diagram = hasse(poset);
    Ok(match format {
        GraphFormat::Dot => diagram.to_dot(),
        GraphFormat::Json => {
            let extensions = if poset.len() <= LINEAR_EXTENSION_LIMIT {
                Some(linear_extension_count(poset)?)
            } else {
                None
            };
            to_json(&json!({
                "ground": poset.ground(),
                "covers": diagram.cover_names(),
                "excluded": excluded,
                "linear_extensions": extensions,
            }))
        }
    })
}

fn cluster(args: ClusterArgs, err: &mut dyn Write) -> Result<String> {
    let Clustering {
        properties,
        excluded,
        tree,
    } = build_tree(&args.tree, err)?;
    if let Some(policy) = args.cut {
        let partition = match policy {
            CutPolicy::Height(h) => tree.cut_at_height(h)?,
            CutPolicy::Clusters(k) => tree.cut_to_clusters(k)?,
            CutPolicy::Auto => return Ok(to_json(&select_cut(&tree)?)),
        };
        return Ok(to_json(&json!({
            "clusters": partition.len(),
            "partition": partition,
        })));
    }
    Ok(match args.format {
        TreeFormat::Newick => format!("{}\n", tree.to_newick()),
        TreeFormat::Dot => tree.to_dot(),
        TreeFormat::Json => to_json(&json!({
            "properties": properties,
            "metric": args.tree.metric,
            "linkage": args.tree.linkage,
            "standardized": !args.tree.raw,
            "excluded": excluded,
            "dendrogram": tree,
            "newick": tree.to_newick(),
        })),
    })
}

fn topology(args: TopologyArgs, err: &mut dyn Write) -> Result<String> {
    let Clustering { tree, .. } = build_tree(&args.tree, err)?;
    let space = minimal_neighborhoods(&branch_basis(&tree, args.singletons));
    let members = read_set(&args.set)?;
    let refs: Vec<&str> = members.iter().map(String::as_str).collect();
    let set = space.subset(&refs)?;
    let result = space.apply(args.op, &set)?;
    Ok(to_json(&json!({
        "operation": format!("{:?}", args.op).to_lowercase(),
        "set": space.names(&set),
        "result": space.names(&result),
    })))
}

fn patterns(args: PatternArgs, err: &mut dyn Write) -> Result<String> {
    let layout = LayoutFixture::bundled();
    let needs_tree = args.score || args.members.is_none();
    let clustering = if needs_tree {
        Some(build_tree(&args.tree, err)?)
    } else {
        None
    };
    let members = match &args.members {
        Some(p) => read_set(p)?,
        None => clustering
            .as_ref()
            .map(|c| c.tree.leaves().to_vec())
            .unwrap_or_default(),
    };
    let refs: Vec<&str> = members.iter().map(String::as_str).collect();
    let kind = match args.kind {
        PatternArg::Diagonal => PatternKind::Diagonal,
        PatternArg::KnightsMove => PatternKind::KnightsMove,
        PatternArg::SecondaryPeriodicity => PatternKind::SecondaryPeriodicity,
        PatternArg::Singularity | PatternArg::InertPair => {
            if args.score {
                return Err(Error::InvalidArgument(
                    "--score applies to pair patterns only".into(),
                ));
            }
            let (name, elements) = if args.kind == PatternArg::Singularity {
                ("singularity", singularity_flags(&layout, &refs)?)
            } else {
                ("inert_pair", inert_pair_candidates(&layout, &refs)?)
            };
            return Ok(to_json(&json!({ "kind": name, "elements": elements })));
        }
    };
    let pairs = match kind {
        PatternKind::Diagonal => diagonal_pairs(&layout, &refs, args.widen)?,
        PatternKind::KnightsMove => knights_move_pairs(&layout, &refs)?,
        PatternKind::SecondaryPeriodicity => secondary_periodicity_pairs(&layout, &refs)?,
    };
    let score = match (&clustering, args.score) {
        (Some(c), true) => {
            let predicate = match args.predicate {
                PredicateArg::Quantile => SimilarityPredicate::CopheneticQuantile(args.q),
                PredicateArg::Cut => SimilarityPredicate::SelectedCut,
            };
            Some(pattern_score(&pairs, &c.tree, predicate)?)
        }
        _ => None,
    };
    Ok(to_json(&json!({
        "kind": kind,
        "qualifier": kind.qualifier(),
        "pairs": pairs,
        "score": score,
    })))
}

fn pettifor(map: Option<&Path>, err: &mut dyn Write) -> Result<String> {
    let scale = pettifor_scale();
    let Some(path) = map else {
        let mut out = String::from("rank,symbol\n");
        for (i, s) in scale.symbols().iter().enumerate() {
            out.push_str(&format!("{},{s}\n", i + 1));
        }
        return Ok(out);
    };
    let result = structure_map(open(path)?, &scale)?;
    for e in &result.errors {
        let _ = writeln!(err, "line {}: {}", e.line, e.message);
    }
    Ok(result.to_csv())
}
