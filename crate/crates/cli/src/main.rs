//! `cutcx`: command-line access to cut complexes and their verification suite.

mod output;

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cutcomplex::complex::{cut_complex, Complex};
use cutcomplex::formulas::{
    character_clique_union, character_cycle, character_path, hook_character, DihedralElement, PathElement,
};
use cutcomplex::graph::{make_family, Family, Graph};
use cutcomplex::harness::suite::conjecture_rows;
use cutcomplex::harness::{
    reproduce_table, run_verification_suite, verify_formulas, Budget, Cache, FormulaFamily, GoldenData, Status,
};
use cutcomplex::homology::homology_profile;
use cutcomplex::morse::{grid_delta4_matching, verify_matching};
use cutcomplex::perm::Partition;
use cutcomplex::shelling::{
    find_shelling, squared_path_shelling, squared_path_wedge_shelling, verify_shelling, SearchLimits,
};
use cutcomplex::vertex_set::VertexSet;

use output::{print_json, print_rows, Format};

#[derive(Parser)]
#[command(
    name = "cutcx",
    version,
    about = "Cut complexes of graphs: invariants, shellings, Morse matchings and checks"
)]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV where the output is a list of rows or numbers.
    #[arg(long, global = true)]
    csv: bool,
    /// Directory for cached results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for table and suite runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Wall-clock budget for table reproduction.
    #[arg(long, global = true, default_value_t = 600)]
    budget_seconds: u64,
    /// Include conjecture checks in `suite`.
    #[arg(long, global = true)]
    conjecture: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named graph, e.g. `grid:3x3` or `union(path:3,cycle:4)`.
    Family { descriptor: String },
    /// Facets of the k-cut complex.
    CutComplex(ComplexInput),
    /// Face counts `f_{-1}, f_0, ...`.
    Fvector(ComplexInput),
    /// h-vector of a pure complex.
    Hvector(ComplexInput),
    /// Reduced homology and Euler characteristic.
    Betti {
        #[command(flatten)]
        input: ComplexInput,
        /// Skip the integer torsion computation.
        #[arg(long)]
        no_torsion: bool,
    },
    #[command(subcommand)]
    Shelling(ShellingCommand),
    #[command(subcommand)]
    Morse(MorseCommand),
    #[command(subcommand)]
    Character(CharacterCommand),
    /// Compare closed-form predictions with direct computation.
    VerifyFormulas {
        #[arg(long)]
        family: String,
        /// Parameter range `LO..HI` (inclusive); defaults per family.
        #[arg(long)]
        range: Option<String>,
    },
    /// Recompute the published Betti tables and diff them.
    Tables {
        #[arg(long, value_enum, default_value_t = TableChoice::All)]
        which: TableChoice,
        /// Golden data file to use instead of the embedded one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Run every check.
    Suite {
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableChoice {
    All,
    SquaredPath,
    #[value(name = "grid-3n")]
    Grid3n,
    #[value(name = "grid-2n")]
    Grid2n,
}

impl TableChoice {
    fn id(self) -> Option<&'static str> {
        match self {
            TableChoice::All => None,
            TableChoice::SquaredPath => Some("squared-path"),
            TableChoice::Grid3n => Some("grid-3n"),
            TableChoice::Grid2n => Some("grid-2n"),
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Family descriptor such as `squared-path:8`.
    #[arg(long, short = 'g', conflicts_with = "file")]
    graph: Option<String>,
    /// Graph file: an edge list with an `n <count>` header, or JSON.
    #[arg(long, short = 'f')]
    file: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        match (&self.graph, &self.file) {
            (Some(descriptor), _) => Ok(make_family(&descriptor.parse::<Family>()?)?),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let graph = if text.trim_start().starts_with('{') {
                    Graph::from_json(&text)?
                } else {
                    Graph::from_edge_list(&text)?
                };
                Ok(graph)
            }
            (None, None) => bail!("give a graph with --graph or --file"),
        }
    }
}

#[derive(Args)]
struct ComplexInput {
    #[command(flatten)]
    graph: GraphInput,
    /// Size of the removed vertex sets.
    #[arg(short, long)]
    k: Option<usize>,
    /// A complex in JSON form `{"n": .., "facets": [..]}` instead of a graph.
    #[arg(long, conflicts_with_all = ["graph", "file"])]
    complex: Option<PathBuf>,
}

impl ComplexInput {
    fn load(&self) -> Result<Complex> {
        if let Some(path) = &self.complex {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(Complex::from_json(&text)?);
        }
        let k = self.k.ok_or_else(|| anyhow!("-k is required with a graph"))?;
        Ok(cut_complex(&self.graph.load()?, k)?)
    }
}

#[derive(Subcommand)]
enum ShellingCommand {
    /// Check a facet order read from a JSON array of facets.
    Verify {
        #[command(flatten)]
        input: ComplexInput,
        #[arg(long)]
        order: PathBuf,
    },
    /// Search for a shelling order.
    Find {
        #[command(flatten)]
        input: ComplexInput,
        #[arg(long, default_value_t = 200)]
        max_facets: usize,
        #[arg(long, default_value_t = 2_000_000)]
        max_nodes: u64,
    },
    /// The explicit shelling of the k-cut complex of the squared path on n vertices.
    SquaredPath {
        n: usize,
        k: usize,
        /// Use the recursive order (k = 3 only).
        #[arg(long)]
        wedge: bool,
    },
}

#[derive(Subcommand)]
enum MorseCommand {
    /// The tetromino matching on the 4-cut complex of the m x n grid.
    GridDelta4 { m: usize, n: usize },
}

#[derive(Subcommand)]
enum CharacterCommand {
    /// Hook character `χ^(k,1^(n-k))` on a cycle type such as `2,2,1`.
    Hook { n: usize, k: usize, cycle_type: String },
    /// Path automorphisms on the homology of the k-cut complex of P_n.
    Path {
        n: usize,
        k: usize,
        #[arg(long, value_enum)]
        element: Option<PathChoice>,
    },
    /// Dihedral group on the homology of the k-cut complex of C_n.
    Cycle {
        n: usize,
        k: usize,
        /// `r<j>` for a rotation or `s<j>` for a reflection; all elements if omitted.
        #[arg(long)]
        element: Option<String>,
    },
    /// S_m x S_n on the homology of the k-cut complex of K_m + K_n.
    CliqueUnion {
        m: usize,
        n: usize,
        k: usize,
        type_m: String,
        type_n: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PathChoice {
    Identity,
    Flip,
}

fn parse_partition(s: &str) -> Result<Partition> {
    Ok(s.parse::<Partition>()?)
}

fn parse_dihedral(s: &str) -> Result<DihedralElement> {
    let (kind, j) = s.split_at(1);
    let j: usize = j.parse().with_context(|| format!("bad element `{s}`"))?;
    match kind {
        "r" => Ok(DihedralElement::Rotation(j)),
        "s" => Ok(DihedralElement::Reflection(j)),
        _ => bail!("elements are `r<j>` or `s<j>`, got `{s}`"),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("expected LO..HI, got `{s}`"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok(lo.trim().parse()?..=hi.trim().parse()?)
}

fn status_code(statuses: impl IntoIterator<Item = Status>) -> u8 {
    let mut code = 0;
    for s in statuses {
        match s {
            Status::Fail => return 1,
            Status::Undecided | Status::Skipped => code = 2,
            _ => {}
        }
    }
    code
}

fn golden(path: &Option<PathBuf>) -> Result<GoldenData> {
    match path {
        Some(p) => Ok(GoldenData::from_json(&fs::read_to_string(p)?)?),
        None => Ok(GoldenData::embedded()),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let format = Format::from_flags(cli.json, cli.csv);
    let cache = cli.cache_dir.as_ref().map(Cache::new);
    let budget = Budget {
        total: Duration::from_secs(cli.budget_seconds),
        ..Budget::default()
    };
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match cli.command {
        Command::Family { descriptor } => {
            let g = make_family(&descriptor.parse::<Family>()?)?;
            match format {
                Format::Json => println!("{}", g.to_json()),
                _ => print!("{}", g.to_edge_list()),
            }
        }
        Command::CutComplex(input) => println!("{}", input.load()?.to_json()),
        Command::Fvector(input) => output::print_numbers(format, input.load()?.f_polynomial().coeffs()),
        Command::Hvector(input) => output::print_numbers(format, &input.load()?.h_vector()?),
        Command::Betti { input, no_torsion } => {
            let profile = homology_profile(&input.load()?, !no_torsion)?;
            print_json(&profile)?;
        }
        Command::Shelling(cmd) => return shelling(cmd),
        Command::Morse(MorseCommand::GridDelta4 { m, n }) => {
            let complex = cut_complex(&make_family(&Family::Grid(m, n))?, 4)?;
            let matching = grid_delta4_matching(m, n)?;
            let report = verify_matching(&complex, &matching)?;
            print_json(&json!({
                "pairs": matching.pairs,
                "critical": matching.critical,
                "valid": report.valid,
                "acyclic": report.acyclic,
                "critical_by_dim": report.critical_by_dim,
            }))?;
            return Ok(if report.valid && report.acyclic { 0 } else { 1 });
        }
        Command::Character(cmd) => character(cmd, format)?,
        Command::VerifyFormulas { family, range } => {
            let family: FormulaFamily = family.parse()?;
            let range = range
                .as_deref()
                .map(parse_range)
                .transpose()?
                .unwrap_or_else(|| family.default_range());
            let rows = verify_formulas(family, range)?;
            print_rows(format, &rows, false)?;
            return Ok(status_code(rows.iter().map(|r| r.status)));
        }
        Command::Tables { which, golden: path } => {
            let data = golden(&path)?;
            let mut statuses = Vec::new();
            let mut reports = Vec::new();
            for table in data.tables.iter().filter(|t| which.id().is_none_or(|id| t.id == id)) {
                let report = reproduce_table(table, &budget, cache.as_ref())?;
                statuses.extend(report.cells.iter().map(|c| c.status));
                statuses.extend(report.predictions.iter().map(|p| p.status));
                reports.push(report);
            }
            output::print_tables(format, &reports)?;
            return Ok(status_code(statuses));
        }
        Command::Suite { golden: path } => {
            let data = golden(&path)?;
            let mut report = run_verification_suite(&data, &budget, cache.as_ref())?;
            if cli.conjecture {
                let limits = SearchLimits {
                    max_facets: 1000,
                    max_nodes: 2_000_000,
                };
                report.conjectures = conjecture_rows(15, cache.as_ref(), limits)?;
            }
            output::print_suite(format, &report)?;
            return Ok(report.exit_code() as u8);
        }
    }
    Ok(0)
}

fn shelling(cmd: ShellingCommand) -> Result<u8> {
    match cmd {
        ShellingCommand::Verify { input, order } => {
            let complex = input.load()?;
            let order: Vec<VertexSet> = serde_json::from_str(&fs::read_to_string(&order)?)?;
            match verify_shelling(&complex, &order) {
                Ok(cert) => print_json(&cert)?,
                Err(e) => {
                    print_json(&json!({ "valid": false, "reason": e.to_string() }))?;
                    return Ok(1);
                }
            }
        }
        ShellingCommand::Find {
            input,
            max_facets,
            max_nodes,
        } => {
            let search = find_shelling(&input.load()?, SearchLimits { max_facets, max_nodes })?;
            print_json(&search)?;
            return Ok(if search.is_found() {
                0
            } else if search.is_undecided() {
                2
            } else {
                1
            });
        }
        ShellingCommand::SquaredPath { n, k, wedge } => {
            let cert = if wedge {
                if k != 3 {
                    bail!("the recursive order exists for k = 3 only");
                }
                squared_path_wedge_shelling(n)?
            } else {
                squared_path_shelling(n, k)?
            };
            print_json(&cert)?;
        }
    }
    Ok(0)
}

fn character(cmd: CharacterCommand, format: Format) -> Result<()> {
    let values: Vec<(String, i64)> = match cmd {
        CharacterCommand::Hook { n, k, cycle_type } => {
            let mu = parse_partition(&cycle_type)?;
            vec![(mu.to_string(), hook_character(n, k, &mu)?)]
        }
        CharacterCommand::Path { n, k, element } => {
            let elements = match element {
                Some(PathChoice::Identity) => vec![PathElement::Identity],
                Some(PathChoice::Flip) => vec![PathElement::Flip],
                None => vec![PathElement::Identity, PathElement::Flip],
            };
            elements
                .into_iter()
                .map(|e| Ok((format!("{e:?}").to_lowercase(), character_path(n, k, e)?)))
                .collect::<Result<_>>()?
        }
        CharacterCommand::Cycle { n, k, element } => {
            let elements: Vec<DihedralElement> = match element {
                Some(s) => vec![parse_dihedral(&s)?],
                None => DihedralElement::all(n).collect(),
            };
            elements
                .into_iter()
                .map(|e| {
                    let name = match e {
                        DihedralElement::Rotation(j) => format!("r{j}"),
                        DihedralElement::Reflection(j) => format!("s{j}"),
                    };
                    Ok((name, character_cycle(n, k, e)?))
                })
                .collect::<Result<_>>()?
        }
        CharacterCommand::CliqueUnion {
            m,
            n,
            k,
            type_m,
            type_n,
        } => {
            let (lm, ln) = (parse_partition(&type_m)?, parse_partition(&type_n)?);
            vec![(format!("({lm}; {ln})"), character_clique_union(m, n, k, &lm, &ln)?)]
        }
    };
    output::print_values(format, &values)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
