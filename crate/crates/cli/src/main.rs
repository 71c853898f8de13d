use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hmfem::element::build_element;
use hmfem::fem_space::GlobalSpace;
use hmfem::mesh::{l_shape_mesh, read_mesh, unit_square_mesh, write_mesh};
use hmfem::polycore::{format_rational, Rational};
use hmfem::reports::{level_list, run_certify, run_convergence, ExperimentConfig, ScalarPath};

const EXIT_FAILURE: u8 = 1;
const EXIT_CERTIFICATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;

/// Canonical H^m-nonconforming finite elements on simplices.
///
/// Exit codes: 0 success, 1 usage or input error, 2 certification failure,
/// 3 solver failure.
#[derive(Parser)]
#[command(name = "hmfem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact unisolvence certificates for every (m, n) in range.
    Certify {
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// DOF table, shape-space dimension, bubbles and determinant of one element.
    Element {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Print JSON instead of text.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Writes a structured mesh in the plain text format.
    Mesh {
        #[arg(long, value_enum)]
        domain: Domain,
        /// Divisions per unit length (even for the L-shape).
        #[arg(long)]
        divisions: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Statistics of the global space on a mesh file.
    Space {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mesh: PathBuf,
    },
    /// Convergence study for example 1 (unit square) or 2 (L-shape).
    Solve {
        /// Experiment file of `key = value` lines; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        example: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Number of levels; 1/h doubles from --mesh-divisions.
        #[arg(long)]
        levels: Option<usize>,
        /// 1/h on the coarsest level.
        #[arg(long)]
        mesh_divisions: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// Quadrature exactness for loads and error norms (default 2(m+2)).
        #[arg(long)]
        quadrature_degree: Option<usize>,
        /// `exact` integrates polynomial loads exactly, `double` uses quadrature.
        #[arg(long)]
        scalar_path: Option<ScalarPath>,
        /// Writes the effective configuration to this file.
        #[arg(long)]
        write_config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Domain {
    Square,
    Lshape,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, e: impl std::fmt::Display) -> Self {
        Self { code, msg: e.to_string() }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_FAILURE, e)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Certify { m_max, n_max } => certify(m_max, n_max),
        Command::Element { m, n, emit } => element(m, n, emit.unwrap_or(Emit::Text)),
        Command::Mesh { domain, divisions, out } => {
            let mesh = match domain {
                Domain::Square => unit_square_mesh(divisions),
                Domain::Lshape => l_shape_mesh(divisions),
            }
            .map_err(input)?;
            let file = fs::File::create(&out).map_err(input)?;
            write_mesh(&mesh, BufWriter::new(file)).map_err(input)?;
            println!("wrote {} ({} vertices, {} cells)", out.display(), mesh.num_vertices(), mesh.num_cells());
            Ok(())
        }
        Command::Space { m, n, mesh } => space(m, n, &mesh),
        Command::Solve {
            config,
            example,
            m,
            levels,
            mesh_divisions,
            csv,
            markdown,
            quadrature_degree,
            scalar_path,
            write_config,
        } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::parse(&fs::read_to_string(path).map_err(input)?).map_err(input)?,
                None => {
                    let (Some(e), Some(m)) = (example, m) else {
                        return Err(input("--example and --m are required without --config"));
                    };
                    ExperimentConfig::new(e, m)
                }
            };
            if let Some(e) = example {
                cfg.example = e;
            }
            if let Some(m) = m {
                cfg.m = m;
            }
            if levels.is_some() || mesh_divisions.is_some() {
                let base = mesh_divisions.unwrap_or(cfg.levels[0]);
                cfg.levels = level_list(base, levels.unwrap_or(cfg.levels.len()));
            }
            if csv.is_some() {
                cfg.csv = csv;
            }
            if markdown.is_some() {
                cfg.markdown = markdown;
            }
            if quadrature_degree.is_some() {
                cfg.quadrature_degree = quadrature_degree;
            }
            if let Some(p) = scalar_path {
                cfg.scalar_path = p;
            }
            cfg.validate().map_err(input)?;
            if let Some(path) = write_config {
                fs::write(path, cfg.to_text()).map_err(input)?;
            }
            solve(&cfg)
        }
    }
}

fn certify(m_max: usize, n_max: usize) -> Result<(), Failure> {
    let report = run_certify(m_max, n_max).map_err(|e| match e {
        hmfem::Error::InvalidArgument(_) => input(e),
        other => Failure::new(EXIT_CERTIFICATION, other),
    })?;
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_CERTIFICATION, "certification failed"))
    }
}

fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn element(m: usize, n: usize, emit: Emit) -> Result<(), Failure> {
    let el = build_element(m, n).map_err(|e| match e {
        hmfem::Error::UnisolvenceViolation { .. } => Failure::new(EXIT_CERTIFICATION, e),
        other => input(other),
    })?;
    match emit {
        Emit::Json => {
            let dofs: Vec<_> = el
                .dofs
                .iter()
                .map(|d| {
                    json!({
                        "layer": d.layer,
                        "k": d.codim(),
                        "vertices": d.face.vertices,
                        "alpha": d.alpha.entries(),
                    })
                })
                .collect();
            let bubbles: Vec<Vec<String>> =
                el.bubbles.iter().map(|b| b.coeffs().iter().map(format_rational).collect()).collect();
            let doc = json!({ "m": m, "n": n, "dofs": dofs, "bubbles": bubbles, "det": rational_string(&el.det) });
            println!("{}", serde_json::to_string_pretty(&doc).map_err(input)?);
        }
        Emit::Text => {
            println!("element m={m} n={n}: {} DOFs, dim P_T = {}", el.dofs.len(), el.dim());
            println!("{:>4} {:>5} {:>2} {:<12} alpha", "#", "layer", "k", "face");
            for (i, d) in el.dofs.iter().enumerate() {
                println!("{i:>4} {:>5} {:>2} {:<12} {}", d.layer, d.codim(), format!("{:?}", d.face.vertices), d.alpha);
            }
            for (l, b) in el.bubbles.iter().enumerate() {
                let c: Vec<String> = b.coeffs().iter().map(format_rational).collect();
                println!("bubble layer {}: [{}] (coefficients from degree 0)", l + 1, c.join(", "));
            }
            println!("det V = {}", format_rational(&el.det));
        }
    }
    Ok(())
}

fn space(m: usize, n: usize, path: &PathBuf) -> Result<(), Failure> {
    let file = fs::File::open(path).map_err(input)?;
    let mesh = read_mesh(BufReader::new(file)).map_err(input)?;
    let el = build_element(m, n).map_err(input)?;
    let s = GlobalSpace::new(el, mesh).map_err(input)?;
    println!("cells {}  vertices {}  h {:.4e}  quasi-uniformity {:.4}", s.mesh.num_cells(), s.mesh.num_vertices(), s.mesh.h(), s.mesh.quasi_uniformity());
    for k in 1..=n {
        println!(
            "codim {k}: {} faces ({} on boundary), {} DOFs per face",
            s.mesh.faces(k).len(),
            s.mesh.faces(k).boundary.iter().filter(|&&b| b).count(),
            s.dofs_per_face(k)
        );
    }
    println!("global DOFs {}  boundary {}  free {}", s.ndofs(), s.num_boundary_dofs(), s.ndofs() - s.num_boundary_dofs());
    Ok(())
}

fn solve(cfg: &ExperimentConfig) -> Result<(), Failure> {
    let table = run_convergence(cfg, |l| {
        eprintln!("1/h = {:>3}: {} DOFs, residual {:.1e}", l.inv_h, l.ndofs, l.residual);
    })
    .map_err(|e| match e {
        hmfem::Error::NotPositiveDefinite | hmfem::Error::SingularSystem { .. } => Failure::new(EXIT_SOLVER, e),
        hmfem::Error::InvalidArgument(_) | hmfem::Error::InvalidDivisions(_) => input(e),
        other => Failure::new(EXIT_SOLVER, other),
    })?;
    let md = table.to_markdown();
    print!("{md}");
    if let Some(p) = &cfg.csv {
        fs::write(p, table.to_csv()).map_err(input)?;
    }
    if let Some(p) = &cfg.markdown {
        fs::write(p, md).map_err(input)?;
    }
    Ok(())
}
