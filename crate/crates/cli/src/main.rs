use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use vrsp::decompose::{
    decompose_fully, decompose_t1, decompose_t2, decompose_t5, decompose_t6, decompose_t7, DecomposeError,
    DecompositionCertificate,
};
use vrsp::generate::{generate, GeneratorKind, GeneratorSpec};
use vrsp::io::{emit, emit_dot, parse, write_atomic, GraphDocument};
use vrsp::matrix::{validate_bipartite_matrix_graph, validate_cartesian_matrix_graph, RowColumnCover};
use vrsp::report::Report;
use vrsp::{cartesian_product, contract_seq, intermediate_product, is_isomorphic, vrsp, ContractionSpec};

#[derive(Parser)]
#[command(name = "vrsp", version, about = "Products and decompositions of labelled acyclic multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph document and optionally check a matrix structure.
    Validate {
        file: PathBuf,
        #[arg(long = "as", value_enum, default_value = "graph")]
        shape: Shape,
        /// Row family or set names (Cartesian check; defaults to the indexing).
        #[arg(long, num_args = 1..)]
        rows: Vec<String>,
        #[arg(long, num_args = 1..)]
        cols: Vec<String>,
    },
    /// Compute a product of two graphs.
    Product {
        #[arg(long, value_enum)]
        op: Op,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Contract named vertex sets one after another.
    Contract {
        file: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        sets: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide isomorphism and print a witness.
    Iso { a: PathBuf, b: PathBuf },
    /// Decompose a graph into two factors and write a certificate.
    Decompose {
        file: PathBuf,
        /// 1, 2, 5, 6, 7 or auto.
        #[arg(long)]
        theorem: String,
        /// Set X for theorem 1.
        #[arg(long)]
        x: Option<String>,
        /// Sets X1 and X2 for theorem 2.
        #[arg(long)]
        x1: Option<String>,
        #[arg(long)]
        x2: Option<String>,
        /// Rows and columns for theorem 6 (defaults to the indexing).
        #[arg(long, num_args = 1..)]
        rows: Vec<String>,
        #[arg(long, num_args = 1..)]
        cols: Vec<String>,
        /// Cartesian parts for theorem 7.
        #[arg(long, num_args = 1..)]
        parts: Vec<String>,
        /// Certificate directory.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        #[arg(long, default_value_t = 2)]
        labels: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a Graphviz rendering.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Graph,
    BipartiteMatrix,
    CartesianMatrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Cartesian,
    Intermediate,
    Vrsp,
}

/// A completed run: success or a negative answer.
enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<GraphDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, text.as_bytes()).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(report: &Report) -> Outcome {
    for clause in &report.clauses {
        println!("{clause}");
    }
    if report.holds() {
        println!("result: holds");
        Outcome::Yes
    } else {
        println!("result: fails");
        Outcome::No
    }
}

fn named(doc: &GraphDocument, name: Option<&String>, flag: &str) -> Result<vrsp::VertexSet> {
    let Some(name) = name else { bail!("--{flag} is required") };
    let sets = doc.resolve_all(&[name])?;
    Ok(sets.into_iter().flatten().collect())
}

fn cover(doc: &GraphDocument, rows: &[String], cols: &[String]) -> Result<RowColumnCover> {
    if rows.is_empty() && cols.is_empty() {
        let Some(ix) = &doc.indexing else { bail!("no --rows/--cols given and the document has no indexing") };
        return Ok(RowColumnCover::from_indexing(ix));
    }
    Ok(RowColumnCover::new(doc.resolve_all(rows)?, doc.resolve_all(cols)?)?)
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { file, shape, rows, cols } => {
            let doc = load(&file)?;
            println!("vertices: {}", doc.graph.vertex_count());
            println!("arcs: {}", doc.graph.arc_count());
            match shape {
                Shape::Graph => Ok(Outcome::Yes),
                Shape::BipartiteMatrix => {
                    let Some(ix) = &doc.indexing else { bail!("the document has no indexing") };
                    Ok(print_report(&validate_bipartite_matrix_graph(&doc.graph, ix)))
                }
                Shape::CartesianMatrix => {
                    let cover = cover(&doc, &rows, &cols)?;
                    Ok(print_report(&validate_cartesian_matrix_graph(&doc.graph, &cover)))
                }
            }
        }
        Command::Product { op, a, b, output } => {
            let (a, b) = (load(&a)?.graph, load(&b)?.graph);
            let g = match op {
                Op::Cartesian => cartesian_product(&a, &b),
                Op::Intermediate => intermediate_product(&a, &b),
                Op::Vrsp => vrsp(&a, &b),
            };
            write_out(output.as_deref(), &emit(&g))?;
            Ok(Outcome::Yes)
        }
        Command::Contract { file, sets, output } => {
            let doc = load(&file)?;
            let spec = ContractionSpec::new(doc.resolve_all(&sets)?);
            let g = contract_seq(&doc.graph, &spec)?;
            write_out(output.as_deref(), &emit(&g))?;
            Ok(Outcome::Yes)
        }
        Command::Iso { a, b } => {
            let (a, b) = (load(&a)?.graph, load(&b)?.graph);
            match is_isomorphic(&a, &b) {
                Some(w) => {
                    println!("isomorphic");
                    for (v, image) in &w.map {
                        println!("{v} -> {image}");
                    }
                    Ok(Outcome::Yes)
                }
                None => {
                    println!("not isomorphic");
                    Ok(Outcome::No)
                }
            }
        }
        Command::Decompose { file, theorem, x, x1, x2, rows, cols, parts, output } => {
            let doc = load(&file)?;
            let g = &doc.graph;
            if theorem == "auto" {
                let tree = decompose_fully(g, doc.indexing.as_ref());
                let text = serde_json::to_string_pretty(&tree.outline())? + "\n";
                match output {
                    Some(dir) => {
                        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                        write_atomic(&dir.join("tree.json"), text.as_bytes())?;
                        if let Some(cert) = tree.certificates().first() {
                            write_certificate(&dir, cert)?;
                        }
                    }
                    None => print!("{text}"),
                }
                return Ok(Outcome::Yes);
            }
            let index = || doc.indexing.as_ref().context("the document has no indexing");
            let result = match theorem.parse::<vrsp::decompose::Theorem>().map_err(anyhow::Error::msg)? {
                vrsp::decompose::Theorem::T1 => decompose_t1(g, &named(&doc, x.as_ref(), "x")?),
                vrsp::decompose::Theorem::T2 => {
                    decompose_t2(g, &named(&doc, x1.as_ref(), "x1")?, &named(&doc, x2.as_ref(), "x2")?)
                }
                vrsp::decompose::Theorem::T5 => decompose_t5(g, index()?),
                vrsp::decompose::Theorem::T6 => decompose_t6(g, &cover(&doc, &rows, &cols)?),
                vrsp::decompose::Theorem::T7 => decompose_t7(g, index()?, &doc.resolve_all(&parts)?),
            };
            match result {
                Ok(cert) => {
                    match output {
                        Some(dir) => write_certificate(&dir, &cert)?,
                        None => print!("{}", certificate_json(&cert)?),
                    }
                    Ok(Outcome::Yes)
                }
                Err(DecomposeError::PreconditionFailed(clauses)) => {
                    for clause in &clauses {
                        println!("{clause}");
                    }
                    println!("result: preconditions failed");
                    Ok(Outcome::No)
                }
                Err(e) => bail!(e),
            }
        }
        Command::Gen { kind, seed, rows, cols, blocks, labels, output } => {
            let doc = generate(&GeneratorSpec { kind, rows, cols, blocks, labels, seed })?;
            write_out(output.as_deref(), &doc.to_json())?;
            Ok(Outcome::Yes)
        }
        Command::ExportDot { file, output } => {
            let doc = load(&file)?;
            write_out(output.as_deref(), &emit_dot(&doc.graph))?;
            Ok(Outcome::Yes)
        }
    }
}

fn certificate_json(cert: &DecompositionCertificate) -> Result<String> {
    Ok(serde_json::to_string_pretty(&cert.record())? + "\n")
}

fn write_certificate(dir: &Path, cert: &DecompositionCertificate) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_atomic(&dir.join("left.json"), emit(&cert.factor_left).as_bytes())?;
    write_atomic(&dir.join("right.json"), emit(&cert.factor_right).as_bytes())?;
    write_atomic(&dir.join("certificate.json"), certificate_json(cert)?.as_bytes())?;
    Ok(())
}
