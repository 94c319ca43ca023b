//! Command-line surface: generators, labelings, the two walk modes, the
//! oracle-backed verifier, and the Borsuk-Ulam solver, glued together by
//! JSON files.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 validation failure (malformed
//! or invalid inputs), 3 hypothesis violation (labeling breaks the mode's
//! premises), 4 structural anomaly (states the theory rules out on valid
//! instances).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::borsuk::{self, BorsukError, LinearMap, OddMap};
use crate::complex::SymmetricComplex;
use crate::flag::{validate_flag, HemisphereFlag};
use crate::generators::{self, GenError, GeneratorKind, GeneratorSpec};
use crate::io::{self, LoadError, ReportDoc, SampleTableDoc, TraceDoc, WitnessFileDoc};
use crate::labeling::{
    random_fan_labeling, random_labeling, validate_labeling, LabelError, Labeling, Sign,
};
use crate::oracle::{self, OracleReport};
use crate::pathfinder::{Mode, PathTrace, Termination, WalkError, Walker};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_STRUCTURAL: i32 = 4;

#[derive(Parser)]
#[command(
    name = "fanwalk",
    about = "Path-following solver on symmetric sphere triangulations",
    version
)]
pub struct Cli {
    /// Artifact format; only json is supported.
    #[arg(long, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a built-in complex with its aligned flag.
    Gen(GenArgs),
    /// Generate or validate an anti-symmetric labeling.
    Label(LabelArgs),
    /// Walk from H_0 to an alternating top-dimensional simplex.
    Fan(RunArgs),
    /// Walk from H_0 to a complementary edge.
    Tucker(RunArgs),
    /// Rebuild the whole graph by brute force and check every claim.
    Verify(VerifyArgs),
    /// Find an approximate zero of an odd map via the tucker walk.
    Borsuk(BorsukArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Octahedral,
    PaperTetra,
}

#[derive(Args)]
pub struct GenArgs {
    /// Which triangulation to build.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Sphere dimension n (paper-tetra is fixed at 2).
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Barycentric refinement count.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    /// Where to write the complex+flag document.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Args)]
pub struct LabelArgs {
    /// Complex+flag document.
    #[arg(long)]
    pub input: PathBuf,
    /// Validate an existing labeling file instead of sampling one.
    #[arg(long, conflicts_with = "random")]
    pub labels: Option<PathBuf>,
    /// Sample uniformly with this label bound m.
    #[arg(long, value_name = "M")]
    pub random: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reject labelings with complementary edges (rejection sampling).
    #[arg(long)]
    pub forbid_complementary: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct RunArgs {
    /// Complex+flag document.
    #[arg(long)]
    pub input: PathBuf,
    /// Labeling file; mutually exclusive with --random.
    #[arg(long, conflicts_with = "random")]
    pub labels: Option<PathBuf>,
    /// Sample a labeling with this bound m instead of loading one.
    #[arg(long, value_name = "M")]
    pub random: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the trace document.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Include the full edge list and path decomposition in the report.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fan,
    Tucker,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Fan => Mode::Fan,
            ModeArg::Tucker => Mode::Tucker,
        }
    }
}

#[derive(Args)]
pub struct BorsukArgs {
    /// Complex+flag document; omitted, an octahedral S^dim is generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Sphere dimension when generating the complex.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Row-major n x (n+1) matrix of the odd linear map, entries separated
    /// by commas, whitespace, or semicolons.
    #[arg(long, conflicts_with = "samples")]
    pub matrix: Option<String>,
    /// Sample table for an externally evaluated odd map.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    /// Barycentric refinement count before solving.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    /// Where to write the witness document.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses argv and runs; returns the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own message; --help/--version are successes
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Label(args) => label(args),
        Command::Fan(args) => run_walk(args, Mode::Fan),
        Command::Tucker(args) => run_walk(args, Mode::Tucker),
        Command::Verify(args) => verify(args),
        Command::Borsuk(args) => borsuk_cmd(args),
    }
}

fn gen(args: GenArgs) -> Result<(), CliError> {
    let kind = match args.kind {
        KindArg::Octahedral => GeneratorKind::Octahedral,
        KindArg::PaperTetra => GeneratorKind::PaperTetra,
    };
    let (complex, flag) = generators::generate(GeneratorSpec {
        kind,
        n: args.dim,
        refinements: args.refine,
    })?;
    let symmetry = complex.validate_symmetry();
    let flag_report = validate_flag(&complex, &flag);
    if !symmetry.passed() || !flag_report.passed() {
        return Err(CliError::GeneratedInvalid);
    }
    io::save_complex(&args.output, &complex, &flag)?;
    println!(
        "wrote {}: S^{} with {} vertices, {} top simplices, {} closure simplices",
        args.output.display(),
        complex.n(),
        complex.vertex_count(),
        complex.maximal_simplices().len(),
        complex.closure().total(),
    );
    if symmetry.has_antipodal_pairs() {
        println!(
            "note: {} simplices contain antipodal vertex pairs; fan mode will reject this complex",
            symmetry.simplices_with_antipodal_pair.len()
        );
    }
    Ok(())
}

fn label(args: LabelArgs) -> Result<(), CliError> {
    let (complex, _) = io::load_complex(&args.input)?;
    let labeling = match (&args.labels, args.random) {
        (Some(path), None) => io::load_labeling(path, &complex)?,
        (None, Some(m)) => random_labeling(&complex, m, args.seed, args.forbid_complementary)?,
        _ => return Err(CliError::NeedLabelsOrRandom),
    };
    let report = validate_labeling(&complex, &labeling, args.forbid_complementary);
    if !report.antisymmetric() {
        return Err(CliError::Walk(WalkError::NotAntisymmetric {
            vertex: report.antisymmetry_violations[0].0,
            antipode: report.antisymmetry_violations[0].1,
        }));
    }
    if args.forbid_complementary && !report.complementary_edges.is_empty() {
        return Err(CliError::Walk(WalkError::ComplementaryEdges {
            edges: report.complementary_edges,
        }));
    }
    if let Some(path) = &args.output {
        io::save_labeling(path, &labeling)?;
        println!("wrote {}", path.display());
    }
    println!(
        "labeling ok: m = {}, {} vertices, complementary edges {}",
        labeling.m(),
        labeling.vertex_count(),
        if args.forbid_complementary {
            "forbidden and absent"
        } else {
            "not checked"
        },
    );
    Ok(())
}

fn load_instance(
    input: &Path,
    labels: &Option<PathBuf>,
    random: Option<u32>,
    seed: u64,
    mode: Mode,
) -> Result<(SymmetricComplex, HemisphereFlag, Labeling), CliError> {
    let (complex, flag) = io::load_complex(input)?;
    let labeling = match (labels, random) {
        (Some(path), None) => io::load_labeling(path, &complex)?,
        (None, Some(m)) => match mode {
            // Fan needs complementary-edge-free labels; the greedy sampler
            // still works where whole-labeling rejection degenerates.
            Mode::Fan => {
                if (m as usize) < complex.n() + 1 {
                    return Err(CliError::Walk(WalkError::LabelBoundTooSmall {
                        m,
                        n: complex.n(),
                    }));
                }
                random_fan_labeling(&complex, m, seed)?
            }
            Mode::Tucker => random_labeling(&complex, m, seed, false)?,
        },
        _ => return Err(CliError::NeedLabelsOrRandom),
    };
    Ok((complex, flag, labeling))
}

fn run_walk(args: RunArgs, mode: Mode) -> Result<(), CliError> {
    let (complex, flag, labeling) =
        load_instance(&args.input, &args.labels, args.random, args.seed, mode)?;
    let walker = Walker::new(&complex, &flag, &labeling, mode)?;
    let trace = walker.run()?;
    if let Some(path) = &args.output {
        io::write_json(path, &TraceDoc::encode(&trace, &labeling))?;
        println!("wrote {}", path.display());
    }
    print_trace_summary(&complex, &labeling, &trace);
    Ok(())
}

fn print_trace_summary(complex: &SymmetricComplex, labeling: &Labeling, trace: &PathTrace) {
    println!("path length: {} nodes", trace.nodes.len());
    match trace.termination {
        Termination::AlternatingN => {
            let sign = if trace
                .witness
                .labels
                .iter()
                .min_by_key(|l| l.unsigned_abs())
                .copied()
                .unwrap_or(1)
                > 0
            {
                Sign::Pos
            } else {
                Sign::Neg
            };
            let antipodal = complex.antipode_simplex(&trace.witness.simplex);
            println!(
                "terminal alternating simplex: {} labels {:?} sign {}",
                trace.witness.simplex, trace.witness.labels, sign
            );
            println!(
                "opposite-sign witness (antipode): {} labels {:?}",
                antipodal,
                labeling.of_simplex(&antipodal)
            );
        }
        Termination::ComplementaryEdge => {
            let (u, w) = trace
                .witness
                .complementary_pair
                .expect("complementary termination");
            println!(
                "complementary edge: ({u}, {w}) labels ({}, {}) inside {}",
                labeling.label(u),
                labeling.label(w),
                trace.witness.simplex
            );
            if trace.nodes.is_empty() {
                println!("(short-circuit: the edge joins antipodal vertices)");
            }
        }
        Termination::AntipodalStart => {
            println!("walk reached -H_0; instance is structurally broken");
        }
    }
}

fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let (complex, flag) = io::load_complex(&args.input)?;
    let labeling = io::load_labeling(&args.labels, &complex)?;
    let mode: Mode = args.mode.into();
    let report = oracle::build_graph(&complex, &flag, &labeling, mode)?;
    let walker = Walker::new(&complex, &flag, &labeling, mode)?;
    let trace = walker.run()?;

    let mut checks: BTreeMap<String, bool> = BTreeMap::new();
    checks.insert(
        "degrees_all_1_or_2".into(),
        report.degrees.values().all(|d| *d == 1 || *d == 2),
    );
    checks.insert("adjacency_symmetric".into(), report.violations.is_empty());
    checks.insert(
        "endpoint_count_multiple_of_4".into(),
        report.endpoint_count % 4 == 0,
    );
    checks.insert(
        "paths_antipodally_paired".into(),
        paths_antipodally_paired(&complex, &report),
    );
    match mode {
        Mode::Fan => {
            checks.insert(
                "positive_count_odd".into(),
                report.positive_alternating % 2 == 1,
            );
            checks.insert(
                "positive_equals_negative".into(),
                report.positive_alternating == report.negative_alternating,
            );
            checks.insert(
                "degree_one_set_is_poles_plus_alternating_top".into(),
                degree_one_set_matches(&complex, &flag, &labeling, &report),
            );
            checks.insert(
                "walk_in_decomposition".into(),
                oracle::verify_path(&report, &trace),
            );
            checks.insert(
                "walk_terminates_alternating_top".into(),
                trace.termination == Termination::AlternatingN,
            );
        }
        Mode::Tucker => {
            let (pos, neg) = oracle::count_tucker_endpoints(&complex, &flag, &labeling)?;
            checks.insert(
                "tucker_endpoint_counts_odd".into(),
                pos % 2 == 1 && neg % 2 == 1,
            );
            checks.insert("tucker_endpoint_counts_equal".into(), pos == neg);
            let witness_ok = match trace.termination {
                Termination::ComplementaryEdge => {
                    let (u, w) = trace.witness.complementary_pair.expect("pair present");
                    labeling.label(u) + labeling.label(w) == 0
                }
                Termination::AlternatingN => true,
                Termination::AntipodalStart => false,
            };
            checks.insert("walk_witness_valid".into(), witness_ok);
            if !trace.nodes.is_empty() {
                checks.insert(
                    "walk_in_decomposition".into(),
                    oracle::verify_path(&report, &trace),
                );
            }
        }
    }

    for (name, ok) in &checks {
        println!("{}: {}", name, if *ok { "PASS" } else { "FAIL" });
    }
    println!(
        "alternating top simplices: +{} / -{}; nodes {}, edges {}, endpoints {}, paths {}, cycles {}",
        report.positive_alternating,
        report.negative_alternating,
        report.nodes.len(),
        report.edges.len(),
        report.endpoint_count,
        report.paths.len(),
        report.cycles.len(),
    );
    let all_ok = checks.values().all(|ok| *ok);
    if let Some(path) = &args.output {
        io::write_json(path, &ReportDoc::encode(&report, checks, args.full))?;
        println!("wrote {}", path.display());
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::ClaimsFailed)
    }
}

fn paths_antipodally_paired(complex: &SymmetricComplex, report: &OracleReport) -> bool {
    use std::collections::BTreeSet;
    report.paths.iter().all(|path| {
        let own: BTreeSet<_> = path.iter().cloned().collect();
        let image: BTreeSet<_> = path.iter().map(|s| complex.antipode_simplex(s)).collect();
        image != own
            && report
                .paths
                .iter()
                .any(|other| other.iter().cloned().collect::<BTreeSet<_>>() == image)
    })
}

fn degree_one_set_matches(
    complex: &SymmetricComplex,
    flag: &HemisphereFlag,
    labeling: &Labeling,
    report: &OracleReport,
) -> bool {
    use crate::labeling::SimplexKind;
    use std::collections::BTreeSet;
    let mut expected: BTreeSet<crate::complex::Simplex> = BTreeSet::new();
    expected.insert(flag.base().clone());
    expected.insert(complex.antipode_simplex(flag.base()));
    for sigma in complex.maximal_simplices() {
        if labeling.classify_simplex(sigma).kind == SimplexKind::Alternating {
            expected.insert(sigma.clone());
        }
    }
    let actual: BTreeSet<crate::complex::Simplex> =
        report.endpoints().into_iter().cloned().collect();
    actual == expected
}

fn borsuk_cmd(args: BorsukArgs) -> Result<(), CliError> {
    let (complex, flag) = match &args.input {
        Some(path) => io::load_complex(path)?,
        None => generators::octahedral(args.dim)?,
    };
    let map = match (&args.matrix, &args.samples) {
        (Some(text), None) => {
            let entries = parse_matrix_entries(text)?;
            let n = complex.n();
            if entries.len() != n * (n + 1) {
                return Err(CliError::MatrixShape {
                    entries: entries.len(),
                    rows: n,
                    cols: n + 1,
                });
            }
            let rows = entries.chunks(n + 1).map(|r| r.to_vec()).collect();
            OddMap::Linear(LinearMap::new(rows)?)
        }
        (None, Some(path)) => {
            let table: SampleTableDoc = io::read_json(path)?;
            OddMap::Table(table.decode()?)
        }
        _ => return Err(CliError::NeedMatrixOrSamples),
    };
    let witness = borsuk::solve(&complex, &flag, &map, args.refine)?;
    println!(
        "complementary edge ({}, {}) labels ({}, {}), residual {:.6e}{}",
        witness.edge.0,
        witness.edge.1,
        witness.labels.0,
        witness.labels.1,
        witness.residual,
        match witness.bound {
            Some(b) => format!(", bound {b:.6e}"),
            None => String::new(),
        }
    );
    println!("point: {:?}", witness.point);
    if let Some(path) = &args.out {
        io::write_json(path, &WitnessFileDoc::encode(&witness))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn parse_matrix_entries(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>().map_err(|_| CliError::BadMatrixEntry {
                entry: s.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Borsuk(#[from] BorsukError),
    #[error("generator produced an invalid complex or flag")]
    GeneratedInvalid,
    #[error("pass exactly one of --labels or --random")]
    NeedLabelsOrRandom,
    #[error("pass exactly one of --matrix or --samples")]
    NeedMatrixOrSamples,
    #[error("matrix entry {entry:?} is not a number")]
    BadMatrixEntry { entry: String },
    #[error("matrix has {entries} entries, expected {rows} x {cols}")]
    MatrixShape {
        entries: usize,
        rows: usize,
        cols: usize,
    },
    #[error("one or more oracle checks failed")]
    ClaimsFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Load(LoadError::Io(_)) => EXIT_IO,
            CliError::Load(_) | CliError::Gen(_) | CliError::GeneratedInvalid => EXIT_VALIDATION,
            CliError::NeedLabelsOrRandom
            | CliError::NeedMatrixOrSamples
            | CliError::BadMatrixEntry { .. }
            | CliError::MatrixShape { .. } => EXIT_VALIDATION,
            CliError::Walk(e) => walk_exit_code(e),
            CliError::Label(e) => label_exit_code(e),
            CliError::Borsuk(e) => match e {
                BorsukError::Label(inner) => label_exit_code(inner),
                BorsukError::Walk(inner) => walk_exit_code(inner),
                BorsukError::Gen(_) => EXIT_VALIDATION,
                _ => EXIT_VALIDATION,
            },
            CliError::ClaimsFailed => EXIT_STRUCTURAL,
        }
    }
}

fn walk_exit_code(e: &WalkError) -> i32 {
    match e {
        WalkError::LabelCountMismatch { .. }
        | WalkError::InvalidComplex { .. }
        | WalkError::InvalidFlag { .. } => EXIT_VALIDATION,
        WalkError::NotAntisymmetric { .. }
        | WalkError::ComplementaryEdges { .. }
        | WalkError::LabelBoundTooSmall { .. } => EXIT_HYPOTHESIS,
        _ => EXIT_STRUCTURAL,
    }
}

fn label_exit_code(e: &LabelError) -> i32 {
    match e {
        LabelError::RetryCapExhausted { .. }
        | LabelError::ForcedComplementaryEdge { .. }
        | LabelError::DegenerateSample { .. }
        | LabelError::MissingSample { .. } => EXIT_HYPOTHESIS,
        _ => EXIT_VALIDATION,
    }
}
