//! Command-line front end: graph generation, spectra, analysis, the
//! certified construction pipeline, and the experiment suites.
//!
//! Exit codes: 0 success; 2 parameter/parse/cap errors (clap usage errors
//! included); 3 construction/budget failures; 4 integrity failures.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sizespectra::analysis::{diversity_check, edge_density, hom, is_c_ramsey};
use sizespectra::construction::{
    certificates_from_json, certificates_to_json, certify, step3_stitch, PipelineParams,
};
use sizespectra::experiments::{antconc_suite, conjecture_probe_suite, scaling_suite, RunReport, SuiteOutput};
use sizespectra::graph::{generate, parse_graph, serialize_graph, GraphKind};
use sizespectra::prob::pointmass_scaling_probe;
use sizespectra::spectrum::{phi_psi_exact_capped, phi_sampled, Exactness, Mode, SizeSpectrum};
use sizespectra::{Error, Graph, Result, WeightFn, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "sizespectra",
    version,
    about = "Induced-subgraph size spectra: exact enumeration, Ramsey-style analysis, and a certified multi-scale construction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed for every randomized stage. The default is a fixed
    /// constant: nothing ever draws from system entropy.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 keeps the library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Construction parameter file: key=value lines, unknown keys rejected.
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Directory for multi-file outputs.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Table/spectrum output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Gnp,
    Paley,
    Complete,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Scaling,
    ConjectureProbe,
    Antconc,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Exhaustive enumeration (the default).
    #[arg(long, conflicts_with = "sampled")]
    exact: bool,
    /// Random-subset sampling: a certified lower bound, not the full set.
    #[arg(long)]
    sampled: bool,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Order cap for exhaustive enumeration.
    #[arg(long, default_value_t = 30)]
    cap: usize,
    /// Weight file: one non-negative integer per vertex, one per line.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Write the spectrum here instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it in the plain text edge format.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        /// Prime ≡ 1 (mod 4) for Paley graphs.
        #[arg(long)]
        q: Option<usize>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Homogeneous-set number, density, and a diversity probe grid.
    Analyze {
        graph: PathBuf,
        /// Ramsey constant to test hom(G) <= C*log2(n) against.
        #[arg(long = "C", default_value_t = 2.0)]
        c_ramsey: f64,
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
    },
    /// Edge-count spectrum of a graph (weighted if weights are given).
    Phi {
        graph: PathBuf,
        #[command(flatten)]
        spectrum: SpectrumArgs,
    },
    /// (order, size) spectrum of a graph.
    Psi {
        graph: PathBuf,
        #[command(flatten)]
        spectrum: SpectrumArgs,
    },
    /// Run the certified multi-scale construction; writes certificates.json
    /// and scales.csv into the output directory.
    Construct { graph: PathBuf },
    /// Recount a certificate file against a graph from scratch.
    Certify { graph: PathBuf, certificates: PathBuf },
    /// Exact point-probability scaling table.
    Probe {
        #[arg(long, value_delimiter = ',', default_values_t = vec![64u64, 128, 256, 512, 1024])]
        grid: Vec<u64>,
        #[arg(long, default_value_t = 0.4)]
        a_frac: f64,
        #[arg(long, default_value_t = 0.4)]
        b_frac: f64,
        #[arg(long, default_value_t = 0.5)]
        k_frac: f64,
    },
    /// Run a named experiment suite; writes CSV, SVG, .dat, and a report.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        /// Grid of n values; each suite has its own default.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<u64>>,
        /// Number of seeds per grid point (seeds 0..count).
        #[arg(long, default_value_t = 3)]
        seed_count: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = if cli.threads > 0 {
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
            Ok(pool) => pool,
            Err(e) => {
                eprintln!("error: cannot build a {}-thread pool: {e}", cli.threads);
                return ExitCode::from(2);
            }
        };
        pool.install(|| run(&cli))
    } else {
        run(&cli)
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

fn load_params(cli: &Cli) -> Result<PipelineParams> {
    let mut params = PipelineParams::default();
    if let Some(path) = &cli.params {
        params.apply_text(&fs::read_to_string(path)?)?;
    }
    params.validate()?;
    Ok(params)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    let terminated = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(path) => fs::write(path, terminated)?,
        None => print!("{terminated}"),
    }
    Ok(())
}

fn write_suite(out: &SuiteOutput, out_dir: &PathBuf) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join(format!("{}.csv", out.name)), &out.csv)?;
    fs::write(out_dir.join(format!("{}.svg", out.name)), &out.svg)?;
    fs::write(out_dir.join(format!("{}.dat", out.name)), &out.dat)?;
    fs::write(
        out_dir.join(format!("{}_report.json", out.name)),
        out.report.to_json(),
    )?;
    print!("{}", out.report.to_json());
    Ok(())
}

fn spectrum_command(cli: &Cli, graph: &PathBuf, args: &SpectrumArgs, mode: Mode) -> Result<()> {
    let g = load_graph(graph)?;
    let wg = match &args.weights {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let weights: Result<Vec<u64>> = text
                .lines()
                .enumerate()
                .map(|(i, line)| {
                    line.trim().parse::<u64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        msg: format!("weight `{}` is not a non-negative integer", line.trim()),
                    })
                })
                .collect();
            WeightedGraph::new(g, WeightFn::new(weights?))?
        }
        None => WeightedGraph::unweighted(g),
    };
    let spectrum: SizeSpectrum = if args.sampled {
        phi_sampled(&wg, mode, args.trials, cli.seed)
    } else {
        phi_psi_exact_capped(&wg, mode, args.cap)?
    };
    let text = match cli.format {
        Format::Json => spectrum.to_json(),
        Format::Csv => spectrum.to_csv(),
    };
    emit(&text, &args.out)?;
    if args.out.is_some() {
        eprintln!(
            "{} sizes ({})",
            spectrum.len(),
            if spectrum.exactness == Exactness::Exact { "exact" } else { "lower bound" }
        );
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Gen { kind, n, p, q, out } => {
            let need = |v: &Option<usize>, what: &str| {
                v.ok_or_else(|| Error::Parameter(format!("this kind requires --{what}")))
            };
            let kind = match kind {
                KindArg::Gnp => GraphKind::Gnp {
                    n: need(n, "n")?,
                    p: p.ok_or_else(|| Error::Parameter("gnp requires --p".into()))?,
                    seed: cli.seed,
                },
                KindArg::Paley => GraphKind::Paley { q: need(q, "q")? },
                KindArg::Complete => GraphKind::Complete { n: need(n, "n")? },
                KindArg::Cycle => GraphKind::Cycle { n: need(n, "n")? },
            };
            let g = generate(&kind)?;
            fs::write(out, serialize_graph(&g))?;
            eprintln!("wrote {} ({} vertices, {} edges)", out.display(), g.n(), g.edge_count());
            Ok(())
        }
        Command::Analyze { graph, c_ramsey, delta } => {
            let g = load_graph(graph)?;
            let hom_result = hom(&g)?;
            let mut diversity = Vec::new();
            for c in [0.1, 0.2, 0.3, 0.4] {
                let report = diversity_check(&g, c, *delta)?;
                diversity.push(serde_json::json!({
                    "c": c,
                    "delta": delta,
                    "is_diverse": report.is_diverse,
                    "violating_vertices": report.violating_vertices.len(),
                }));
            }
            let doc = serde_json::json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "density": edge_density(&g)?,
                "hom": {
                    "clique_size": hom_result.clique_size,
                    "indep_size": hom_result.indep_size,
                    "hom": hom_result.hom,
                },
                "ramsey": {
                    "c": c_ramsey,
                    "is_c_ramsey": is_c_ramsey(&g, *c_ramsey)?,
                },
                "diversity": diversity,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("analysis document"));
            Ok(())
        }
        Command::Phi { graph, spectrum } => spectrum_command(cli, graph, spectrum, Mode::Phi),
        Command::Psi { graph, spectrum } => spectrum_command(cli, graph, spectrum, Mode::Psi),
        Command::Construct { graph } => {
            let g = load_graph(graph)?;
            let params = load_params(cli)?;
            let started = Instant::now();
            let outcome = step3_stitch(&g, &params, cli.seed)?;
            let audit = certify(&g, &outcome.certificates)?;

            fs::create_dir_all(&cli.out_dir)?;
            let cert_path = cli.out_dir.join("certificates.json");
            fs::write(&cert_path, certificates_to_json(&outcome.certificates))?;
            fs::write(cli.out_dir.join("scales.csv"), outcome.family.to_csv())?;

            let mut report = RunReport::new(format!("construct {}", graph.display()), cli.seed);
            report.count("certificates", outcome.certificates.len() as u64);
            report.count("distinct_sizes", audit.distinct_sizes as u64);
            report.count("scales", outcome.family.s() as u64);
            report.count("skipped_scales", outcome.skipped_scales as u64);
            report.count("discarded_fact_a", outcome.discarded_fact_a as u64);
            report.count("discarded_fact_b", outcome.discarded_fact_b as u64);
            report.count("discarded_duplicate", outcome.discarded_duplicate as u64);
            report.assertions.push("every certificate recounted exactly".into());
            report.assertions.push(format!(
                "diversity passed at c={}",
                outcome.diversity_c
            ));
            report
                .timings_ms
                .insert("construct".into(), started.elapsed().as_millis() as u64);
            print!("{}", report.to_json());
            Ok(())
        }
        Command::Certify { graph, certificates } => {
            let g = load_graph(graph)?;
            let certs = certificates_from_json(&fs::read_to_string(certificates)?, g.n())?;
            let audit = certify(&g, &certs)?;
            let doc = serde_json::json!({
                "total": audit.total,
                "distinct_sizes": audit.distinct_sizes,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("certify document"));
            Ok(())
        }
        Command::Probe { grid, a_frac, b_frac, k_frac } => {
            let rows = pointmass_scaling_probe((*a_frac, *b_frac, *k_frac), grid)?;
            match cli.format {
                Format::Csv => {
                    println!("n,max_prob,max_prob_times_sqrt_n");
                    for row in &rows {
                        println!("{},{},{}", row.n, row.max_prob, row.product);
                    }
                }
                Format::Json => {
                    let doc: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "n": r.n,
                                "max_prob": r.max_prob,
                                "max_prob_times_sqrt_n": r.product,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&doc).expect("probe document"));
                }
            }
            Ok(())
        }
        Command::Suite { name, grid, seed_count } => {
            let params = load_params(cli)?;
            let seeds: Vec<u64> = (0..*seed_count).collect();
            let started = Instant::now();
            let mut out = match name {
                SuiteName::Scaling => {
                    let grid: Vec<usize> = grid
                        .clone()
                        .unwrap_or_else(|| vec![256, 512, 1024])
                        .iter()
                        .map(|&n| n as usize)
                        .collect();
                    scaling_suite(&grid, &seeds, &params, cli.seed)?
                }
                SuiteName::ConjectureProbe => {
                    let grid: Vec<usize> = grid
                        .clone()
                        .unwrap_or_else(|| vec![12, 14, 16, 18, 20])
                        .iter()
                        .map(|&n| n as usize)
                        .collect();
                    conjecture_probe_suite(&grid, &seeds, cli.seed)?
                }
                SuiteName::Antconc => {
                    let grid = grid.clone().unwrap_or_else(|| vec![64, 128, 256, 512, 1024]);
                    antconc_suite(&grid, 0.4, 0.4, 0.5)?
                }
            };
            out.report
                .timings_ms
                .insert("suite".into(), started.elapsed().as_millis() as u64);
            write_suite(&out, &cli.out_dir)
        }
    }
}
