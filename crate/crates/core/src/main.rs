use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polystack::analysis::analyze_lattice;
use polystack::constructions::Pipeline;
use polystack::hull::facets_from_points;
use polystack::{
    build_face_lattice, catalog, io, lattices_isomorphic, self_dual, Error, Execution,
    LabeledSimplexFacet, Polytope, VertexSet,
};

/// Stdout writes that tolerate a closed pipe.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn out_str(s: &str) {
    use std::io::Write as _;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

#[derive(Parser)]
#[command(name = "polystack", version, about = "Exact pseudo-stacking of convex polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in polytope.
    Example {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Combinatorial report for a polytope file.
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// Run a construction pipeline on a labeled simplex facet.
    Construct {
        pipeline: PipelineArg,
        file: PathBuf,
        /// Vertex indices of the simplex facet, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        facet: Vec<usize>,
        /// Labeling v0,v1,v2,v3 of the facet; ascending by default.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        order: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// An elementary 2-simple 2-simplicial 4-polytope with K vertices.
    Generate {
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every invariant of a polytope file.
    Verify { file: PathBuf },
    /// Report on the combinatorial dual.
    Dual { file: PathBuf },
    /// Exit 0 when the two face lattices are isomorphic, 1 otherwise.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Kv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineArg {
    I1,
    I2,
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::Parse { .. } | Error::Io(_) => 2,
        Error::UnsupportedVertexCount(_)
        | Error::UnsupportedSpec(_)
        | Error::SizeLimitExceeded { .. }
        | Error::UnknownName(_) => 4,
        Error::Verification(_) => 5,
        _ => 3,
    }
}

fn write_out(p: &Polytope, output: Option<&Path>) -> polystack::Result<()> {
    match output {
        Some(path) => io::write_file(path, p),
        None => {
            out_str(&io::emit(p));
            Ok(())
        }
    }
}

fn print_pairs(pairs: &[(String, String)], format: Format) {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        match format {
            Format::Kv => outln!("{k} {v}"),
            Format::Text => outln!("{k:<width$} : {v}"),
        }
    }
}

fn construct(
    pipeline: PipelineArg,
    file: &Path,
    facet: &[usize],
    order: Option<&[usize]>,
    output: Option<&Path>,
) -> polystack::Result<()> {
    let p = io::read_file(file)?;
    let mut labels: Vec<usize> = order.unwrap_or(facet).to_vec();
    if order.is_none() {
        labels.sort_unstable();
    }
    let as_set: VertexSet = facet.iter().copied().collect();
    if labels.iter().copied().collect::<VertexSet>() != as_set {
        return Err(Error::InvalidStep("--order must be a permutation of --facet".into()));
    }
    let labels: [usize; 4] = labels
        .try_into()
        .map_err(|_| Error::InvalidStep("a simplex facet of a 4-polytope has 4 vertices".into()))?;
    let s = LabeledSimplexFacet::new(&p, labels)?;
    let pipe = match pipeline {
        PipelineArg::I1 => Pipeline::I1,
        PipelineArg::I2 => Pipeline::I2,
    };
    let (q, trace) = pipe.apply(&p, &s)?;
    for (i, step) in trace.steps.iter().enumerate() {
        eprintln!(
            "step {}: {} new vertex {} new facets {}",
            i + 1,
            step.spec,
            step.new_vertex,
            step.census.over_base.len() + step.census.over_n.len()
        );
    }
    eprintln!(
        "final facet {:?}",
        trace.final_labeled_facet.ordered_vertices
    );
    write_out(&q, output)
}

/// One line per check; the result is whether all passed.
fn verify(file: &Path) -> polystack::Result<bool> {
    let p = io::read_file(file)?;
    let mut all = true;
    let mut report = |name: &str, ok: bool| {
        outln!("{name} {}", if ok { "ok" } else { "FAIL" });
        all &= ok;
    };
    report("incidences", true); // parsing already rejected inconsistent incidences
    let recomputed = facets_from_points(p.dim(), p.vertices(), Execution::Parallel)?;
    let mut from_coords: Vec<VertexSet> = recomputed.into_iter().map(|f| f.vertices).collect();
    from_coords.sort();
    let mut listed = p.facet_sets();
    listed.sort();
    report("facets_match_coordinates", from_coords == listed);
    let lat = build_face_lattice(&p)?;
    let r = analyze_lattice(&lat);
    report("euler", r.euler_ok);
    report("dehn_sommerville", r.dehn_sommerville_ok);
    if p.dim() == 4 {
        report("g2_nonnegative", r.g2.is_some_and(|g| g >= 0));
    }
    Ok(all)
}

fn dual(file: &Path) -> polystack::Result<()> {
    let p = io::read_file(file)?;
    let lat = build_face_lattice(&p)?;
    let d = lat.dual();
    let r = analyze_lattice(&d);
    outln!("f {}", r.fvec);
    outln!("self_dual {}", self_dual(&lat));
    for (i, f) in d.facets().iter().enumerate() {
        let row: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        outln!("dual_facet {i} {}", row.join(" "));
    }
    Ok(())
}

fn iso(first: &Path, second: &Path) -> polystack::Result<bool> {
    let a = build_face_lattice(&io::read_file(first)?)?;
    let b = build_face_lattice(&io::read_file(second)?)?;
    match lattices_isomorphic(&a, &b) {
        Some(map) => {
            outln!("isomorphic true");
            let row: Vec<String> = map.iter().map(|v| v.to_string()).collect();
            outln!("map {}", row.join(" "));
            Ok(true)
        }
        None => {
            outln!("isomorphic false");
            Ok(false)
        }
    }
}

fn run(cli: Cli) -> polystack::Result<ExitCode> {
    match cli.command {
        Command::Example { name, output } => {
            write_out(&catalog::get(&name)?.polytope, output.as_deref())?;
        }
        Command::Info { file, format } => {
            let r = polystack::analyze(&io::read_file(&file)?)?;
            print_pairs(&r.key_values(), format);
        }
        Command::Construct {
            pipeline,
            file,
            facet,
            order,
            output,
        } => construct(pipeline, &file, &facet, order.as_deref(), output.as_deref())?,
        Command::Generate { k, output } => {
            write_out(&polystack::generate_elementary_2s2s(k)?, output.as_deref())?;
        }
        Command::Verify { file } => {
            if !verify(&file)? {
                return Ok(ExitCode::from(5));
            }
        }
        Command::Dual { file } => dual(&file)?,
        Command::Iso { first, second } => {
            if !iso(&first, &second)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
