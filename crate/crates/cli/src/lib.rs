//! The `origami` command line.
//!
//! Exit codes: 0 success, 1 invalid template, 2 operation unsupported for
//! the input, 3 parse, usage or I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use origami_core::cohomology::{betti_numbers, generator_degrees, hilbert_function};
use origami_core::error::Error;
use origami_core::format::{parse, serialize};
use origami_core::gkm::{export_dot, fixed_points, moment_graph, MomentGraph};
use origami_core::orbit_space::face_poset;
use origami_core::polytope::Polytope;
use origami_core::template::{
    cut_leaf, is_acyclic, is_coorientable, is_orientable, require_valid, validate, OrigamiTemplate,
    TemplateBuilder,
};

pub mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Invariants of toric origami templates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Delzant and fold conditions and classify the template.
    Validate { file: PathBuf },
    /// Summary counts and classification flags.
    Info {
        file: PathBuf,
        /// Write the Hasse diagram of the orbit-space faces as DOT.
        #[arg(long, value_name = "PATH")]
        faces_dot: Option<PathBuf>,
    },
    /// Fixed points and weighted edges of the moment graph.
    Gkm {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Even Betti numbers.
    Betti {
        file: PathBuf,
        /// Also list the degrees of a rational module basis.
        #[arg(long)]
        generators: bool,
    },
    /// Graded dimensions h_0..h_D of equivariant cohomology.
    Hilbert {
        file: PathBuf,
        /// Defaults to the template dimension.
        #[arg(long, value_name = "D")]
        max_degree: Option<u32>,
    },
    /// Cut off a leaf, writing c_plus.json, c_minus.json and b.json.
    Cut {
        file: PathBuf,
        #[arg(long, value_name = "VERTEX")]
        leaf: String,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
    /// Draw a planar template as SVG.
    Render {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        svg: PathBuf,
        /// Shift each polytope slightly so overlapping copies stay visible.
        #[arg(long)]
        explode: bool,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => EXIT_INPUT,
            Error::Unsupported(_) | Error::NoFixedPoints | Error::NotALeaf { .. } => EXIT_UNSUPPORTED,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn load(path: &Path) -> Result<OrigamiTemplate, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

/// The moment graph of a template that supports equivariant cohomology.
fn gkm_graph(t: &OrigamiTemplate) -> Result<MomentGraph, Failure> {
    require_valid(t)?;
    Ok(moment_graph(t)?)
}

fn single_vertex(dim: usize, id: &str, p: &Polytope) -> Result<OrigamiTemplate, Failure> {
    let mut b = TemplateBuilder::new(dim);
    let i = b.polytope(id, p.clone());
    b.vertex(id, i);
    Ok(b.build()?)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut say = |s: String| {
        let _ = out.write_all(s.as_bytes());
    };
    match cmd {
        Command::Validate { file } => {
            let t = load(&file)?;
            let report = validate(&t);
            say(report.to_string());
            Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Info { file, faces_dot } => {
            let t = load(&file)?;
            let report = validate(&t);
            let mut s = format!(
                "dimension: {}\npolytopes: {}\nvertices: {}\nedges: {}\nvalid: {}\nacyclic: {}\ncoorientable: {}\n",
                t.dim(),
                t.polytopes().len(),
                t.num_vertices(),
                t.num_edges(),
                report.valid,
                is_acyclic(&t),
                is_coorientable(&t),
            );
            match is_orientable(&t) {
                Ok(o) => s += &format!("orientable: {o}\n"),
                Err(_) => s += "orientable: unsupported (loop edge)\n",
            }
            match fixed_points(&t) {
                Ok(f) => s += &format!("fixed points: {}\n", f.len()),
                Err(_) => s += "fixed points: unsupported (loop edge)\n",
            }
            say(s);
            if let Some(path) = faces_dot {
                let poset = face_poset(&t)?;
                write_file(&path, &poset.to_dot(&t))?;
            }
            Ok(EXIT_OK)
        }
        Command::Gkm { file, dot } => {
            let t = load(&file)?;
            let g = gkm_graph(&t)?;
            let mut s = format!("fixed points: {}\n", g.fixed_points.len());
            for (i, p) in g.fixed_points.iter().enumerate() {
                s += &format!("  p{i} {}\n", p.id);
            }
            s += &format!("edges: {} ({} folded)\n", g.edges.len(), g.num_folded());
            for e in &g.edges {
                let via: Vec<&str> = e.chain.iter().map(|c| t.vertices()[c.vertex].id.as_str()).collect();
                s += &format!(
                    "  p{} -- p{} weight {}{} via {}\n",
                    e.ends[0],
                    e.ends[1],
                    e.weight,
                    if e.is_folded() { " folded" } else { "" },
                    via.join(",")
                );
            }
            say(s);
            if let Some(path) = dot {
                write_file(&path, &export_dot(&g))?;
            }
            Ok(EXIT_OK)
        }
        Command::Betti { file, generators } => {
            let t = load(&file)?;
            let g = gkm_graph(&t)?;
            let b = betti_numbers(&g, t.dim())?;
            let mut s = format!("{b}\n");
            if generators {
                let degrees: Vec<String> = generator_degrees(&g, t.dim() as u32)
                    .into_iter()
                    .map(|(d, c)| format!("{c} in degree {}", 2 * d))
                    .collect();
                s += &format!("rational module basis: {}\n", degrees.join(", "));
            }
            say(s);
            Ok(EXIT_OK)
        }
        Command::Hilbert { file, max_degree } => {
            let t = load(&file)?;
            let g = gkm_graph(&t)?;
            let h = hilbert_function(&g, max_degree.unwrap_or(t.dim() as u32));
            say(format!("{h}\n"));
            Ok(EXIT_OK)
        }
        Command::Cut { file, leaf, out_dir } => {
            let t = load(&file)?;
            let cut = cut_leaf(&t, &leaf)?;
            fs::create_dir_all(&out_dir).map_err(|e| io_failure(&out_dir, e))?;
            let c_minus = single_vertex(t.dim(), &cut.leaf_polytope_id, cut.c_minus.polytope())?;
            let b = single_vertex(t.dim() - 1, "B", cut.b.polytope())?;
            write_file(&out_dir.join("c_plus.json"), &serialize(&cut.c_plus))?;
            write_file(&out_dir.join("c_minus.json"), &serialize(&c_minus))?;
            write_file(&out_dir.join("b.json"), &serialize(&b))?;
            say(format!(
                "cut leaf {} from {} along facet {}\nwrote c_plus.json c_minus.json b.json to {}\n",
                cut.leaf_id,
                cut.anchor_id,
                cut.anchor_facet,
                out_dir.display()
            ));
            Ok(EXIT_OK)
        }
        Command::Render { file, svg, explode } => {
            let t = load(&file)?;
            let picture = render::render_svg(&t, explode)?;
            write_file(&svg, &picture)?;
            say(format!("wrote {}\n", svg.display()));
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command line (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
