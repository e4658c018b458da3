//! Command-line surface: validation, fingerprint reports, duals, partial
//! duals, delta-matroids, monodromy graphs, tropical curves and exhaustive
//! enumeration, over `.dsn` files.
//!
//! Exit codes: 0 on success, 1 on validation or computation failure, 2 on
//! usage errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dessins::catalogue::{catalogue_report, CatalogueEntry};
use dessins::delta_matroid::{delta_matroid_of_map, quasi_tree_oracle, DeltaMatroid};
use dessins::dessin::{CleanDessin, Dessin};
use dessins::enumerate::enumerate_clean_dessins;
use dessins::monodromy::build_monodromy_graph;
use dessins::partial_dual::{hypermap_partial_dual, one_face_partial_dual, partial_dual_set};
use dessins::perm::GroupOrder;
use dessins::text::{format_dessin, parse_dessin};

#[derive(Parser)]
#[command(name = "dessins", version, about = "Compute with dessins d'enfants given as permutation triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a dessin file.
    Validate { file: PathBuf },
    /// Print the full fingerprint report of a dessin.
    Info { file: PathBuf },
    /// Print the dual dessin.
    Dual { file: PathBuf },
    /// Partial dual of a map with respect to a set of edges.
    Pdual {
        file: PathBuf,
        /// Comma-separated edge indices, e.g. 1,3
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Hypermap partial dual with respect to an alpha-cycle.
    PdualHyper {
        file: PathBuf,
        /// 1-based index of the alpha-cycle (cycles sorted by minimal dart)
        #[arg(long)]
        cycle: usize,
    },
    /// Delta-matroid of a map.
    Delta {
        file: PathBuf,
        /// Use the quasi-tree restriction oracle instead of the partial-dual scan
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Twist of the map's delta-matroid with respect to a set of edges.
    Twist {
        file: PathBuf,
        /// Comma-separated edge indices, e.g. 1,2
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// A partial dual with exactly one face, and the subset realising it.
    Onefacedual { file: PathBuf },
    /// Test two dessins for isomorphism.
    Iso { file1: PathBuf, file2: PathBuf },
    /// Monodromy graph of a map for a multiplication order.
    Monograph {
        file: PathBuf,
        /// Comma-separated permutation of the edge indices, e.g. 1,3,2,4
        #[arg(long, value_delimiter = ',')]
        order: Vec<usize>,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Abstract tropical curve of a map for a multiplication order.
    Tropical {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Vec<usize>,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all maps on a given number of darts, up to isomorphism.
    Enumerate {
        #[arg(long)]
        darts: usize,
        /// Print a full report per map instead of one line
        #[arg(long)]
        report: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn load(file: &Path) -> Result<Dessin, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("{}: {e}", file.display()))?;
    parse_dessin(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn load_clean(file: &Path) -> Result<CleanDessin, String> {
    load(file)?
        .as_clean()
        .map_err(|e| format!("{}: {e}", file.display()))
}

fn run(command: Command) -> Result<String, String> {
    match command {
        Command::Validate { file } => {
            let d = load(&file)?;
            Ok(format!(
                "ok: dessin on {} darts, genus {}\n",
                d.n_darts(),
                d.genus()
            ))
        }
        Command::Info { file } => {
            let d = load(&file)?;
            let entry = catalogue_report(&d).map_err(|e| e.to_string())?;
            Ok(render_entry(&entry))
        }
        Command::Dual { file } => {
            let d = load(&file)?;
            Ok(format!("{}\n", format_dessin(&d.dual())))
        }
        Command::Pdual { file, edges } => {
            let d = load_clean(&file)?;
            let s = edges.into_iter().collect();
            let pd = partial_dual_set(&d, &s).map_err(|e| e.to_string())?;
            Ok(format!("{}\n", format_dessin(&pd)))
        }
        Command::PdualHyper { file, cycle } => {
            let d = load(&file)?;
            let pd = hypermap_partial_dual(&d, cycle).map_err(|e| e.to_string())?;
            Ok(format!("{}\n", format_dessin(&pd)))
        }
        Command::Delta { file, oracle, json } => {
            let d = load_clean(&file)?;
            let delta = if oracle {
                quasi_tree_oracle(&d)
            } else {
                delta_matroid_of_map(&d)
            }
            .map_err(|e| e.to_string())?;
            if json {
                Ok(format!("{}\n", delta.to_json()))
            } else {
                Ok(render_delta(&delta, true))
            }
        }
        Command::Twist { file, set, json } => {
            let d = load_clean(&file)?;
            let delta = delta_matroid_of_map(&d).map_err(|e| e.to_string())?;
            let twisted = delta
                .twist(&set.into_iter().collect())
                .map_err(|e| e.to_string())?;
            if json {
                Ok(format!("{}\n", twisted.to_json()))
            } else {
                Ok(render_delta(&twisted, false))
            }
        }
        Command::Onefacedual { file } => {
            let d = load_clean(&file)?;
            let (s, result) = one_face_partial_dual(&d);
            let mut out = format!("S = {}\n", render_set(&s));
            let _ = writeln!(out, "{}", format_dessin(&result));
            Ok(out)
        }
        Command::Iso { file1, file2 } => {
            let d1 = load(&file1)?;
            let d2 = load(&file2)?;
            Ok(format!("{}\n", d1.is_isomorphic(&d2)))
        }
        Command::Monograph {
            file,
            order,
            dot,
            json,
        } => {
            let d = load_clean(&file)?;
            let g = build_monodromy_graph(&d, &order).map_err(|e| e.to_string())?;
            if dot {
                Ok(g.to_dot())
            } else if json {
                Ok(format!("{}\n", g.to_json()))
            } else {
                let mut out = format!(
                    "vertices = {}\nedges = {}\nbetti = {}\n",
                    g.vertex_count(),
                    g.edge_count(),
                    g.betti_number()
                );
                for (i, v) in g.vertices().iter().enumerate() {
                    let _ = writeln!(out, "v{i} {} level {}", v.kind, v.level);
                }
                for e in g.edges() {
                    let _ = writeln!(
                        out,
                        "v{} -- v{} cycle ({}) length {} span {}..{}",
                        e.from,
                        e.to,
                        join_spaced(&e.cycle),
                        e.length(),
                        e.span.0,
                        e.span.1
                    );
                }
                Ok(out)
            }
        }
        Command::Tropical {
            file,
            order,
            dot,
            json,
        } => {
            let d = load_clean(&file)?;
            let g = build_monodromy_graph(&d, &order).map_err(|e| e.to_string())?;
            let t = g.to_tropical_curve();
            if dot {
                Ok(t.to_dot())
            } else if json {
                Ok(format!("{}\n", t.to_json()))
            } else {
                let inv = t.invariants();
                let mut out = format!(
                    "finite edges = {}\ninfinite edges = {}\ntrivalent vertices = {}\nbetti = {}\n",
                    inv.finite_edges, inv.infinite_edges, inv.trivalent_vertices, inv.betti
                );
                for e in t.edges() {
                    let _ = writeln!(out, "v{} -- v{} length {}", e.from, e.to, e.length);
                }
                Ok(out)
            }
        }
        Command::Enumerate { darts, report } => {
            let maps = enumerate_clean_dessins(darts).map_err(|e| e.to_string())?;
            let mut out = format!("darts = {darts}\ncount = {}\n", maps.len());
            for map in &maps {
                if report {
                    let entry = catalogue_report(map).map_err(|e| e.to_string())?;
                    out.push('\n');
                    out.push_str(&render_entry(&entry));
                } else {
                    let sigma = map.sigma().to_string();
                    if sigma.is_empty() {
                        out.push_str("sigma =\n");
                    } else {
                        let _ = writeln!(out, "sigma = {sigma}");
                    }
                }
            }
            Ok(out)
        }
    }
}

fn render_entry(entry: &CatalogueEntry) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", entry.triple);
    let _ = writeln!(out, "passport = {}", entry.passport);
    let _ = writeln!(out, "genus = {}", entry.genus);
    let order = match entry.monodromy_order {
        GroupOrder::Exact(k) => k.to_string(),
        GroupOrder::ExceedsCap => "exceeds cap".to_string(),
    };
    let _ = writeln!(out, "monodromy order = {order}");
    let _ = writeln!(out, "abelian = {}", entry.abelian);
    let _ = writeln!(out, "automorphisms = {}", entry.automorphisms);
    let _ = writeln!(out, "regular = {}", entry.regular);
    let _ = writeln!(out, "self-dual = {}", entry.self_dual);
    if let Some(delta) = &entry.delta {
        let _ = writeln!(out, "delta feasible = {}", delta.matroid);
        let _ = writeln!(out, "delta is matroid = {}", delta.is_matroid);
        let _ = writeln!(out, "delta self-dual = {}", delta.self_dual);
    }
    out
}

fn render_delta(delta: &DeltaMatroid, with_flags: bool) -> String {
    let mut out = format!("ground = {}\nfeasible = {}\n", delta.ground_size(), delta);
    if with_flags {
        let _ = writeln!(out, "is matroid = {}", delta.is_matroid());
        if let Ok(sd) = dessins::delta_matroid::delta_self_dual(delta) {
            let _ = writeln!(out, "self-dual = {sd}");
        }
    }
    out
}

fn render_set(s: &dessins::partial_dual::EdgeSubset) -> String {
    let mut out = String::from("{");
    for (i, x) in s.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{x}");
    }
    out.push('}');
    out
}

fn join_spaced(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
