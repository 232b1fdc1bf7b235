use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::json;

use pgexpander::bounds::{self, SearchOptions};
use pgexpander::expcode::{self, CodeSpec, DecodeReport};
use pgexpander::projgeom::{gaussian, lemmas, ProjectiveSpace};
use pgexpander::simlab::{self, ErrorModel, TrialConfig, TrialRun};
use pgexpander::{io, RsCodec, TannerGraph};

#[derive(Parser)]
#[command(name = "pgexpander", version, about = "Expander-like RS codes on the PG(5, 2) incidence graph")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Projective geometry facts.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// The labeled Tanner graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// The overall code: matrices, encoding and iterative decoding.
    #[command(subcommand)]
    Code(CodeCmd),
    /// The length-31 component code on its own.
    #[command(subcommand)]
    Rs(RsCmd),
    /// Correction bounds and the minimal-configuration search.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Monte Carlo trials.
    #[command(subcommand)]
    Sim(SimCmd),
    /// Planted minimal failure configuration on one plane.
    Plant(PlantArgs),
    /// Exhaustive structural checks of PG(5, 2).
    Lemmas,
}

#[derive(Subcommand)]
enum GeomCmd {
    /// Cardinalities of PG(d, 2).
    Info {
        #[arg(long, default_value_t = 5)]
        d: u32,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Write "label point hyperplane" lines.
    Export {
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the design identity and report the second eigenvalue.
    Spectrum,
}

#[derive(Args)]
struct EpsilonArg {
    /// Design distance of the component code (odd, 3..=15).
    #[arg(long, short = 'e', value_parser = parse_epsilon)]
    epsilon: usize,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Build H and G and report the dimensions.
    Build {
        #[command(flatten)]
        eps: EpsilonArg,
        /// Write the generator matrix here.
        #[arg(long)]
        export_g: Option<PathBuf>,
        /// Write the parity-check matrix here.
        #[arg(long)]
        export_h: Option<PathBuf>,
    },
    /// Encode hex messages (k symbols per line) into codewords.
    Encode {
        #[command(flatten)]
        eps: EpsilonArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode hex words (1953 symbols per line).
    Decode {
        #[command(flatten)]
        eps: EpsilonArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// Erased labels, one 1-based label per line.
        #[arg(long)]
        erasures: Option<PathBuf>,
        #[arg(long, default_value_t = expcode::DEFAULT_MAX_ITERATIONS)]
        max_iterations: usize,
    },
}

#[derive(Subcommand)]
enum RsCmd {
    /// Encode hex messages of 32 - ε symbols.
    Encode {
        #[command(flatten)]
        eps: EpsilonArg,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decode hex words of 31 symbols.
    Decode {
        #[command(flatten)]
        eps: EpsilonArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated 0-based erased positions.
        #[arg(long, value_delimiter = ',')]
        erasures: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Rates, guaranteed corrections and the Zemor comparison for ε = 3..15.
    Table,
    /// Look for p points and p hyperplanes with minimum degree δ.
    Search {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        delta: usize,
        /// Node limit.
        #[arg(long, default_value_t = SearchOptions::default().budget)]
        budget: u64,
        #[arg(long)]
        no_pruning: bool,
        #[arg(long)]
        no_symmetry: bool,
    },
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    eps: EpsilonArg,
    /// Number of corrupted symbols.
    #[arg(long)]
    weight: usize,
    #[arg(long, default_value_t = 1000)]
    rounds: usize,
    #[arg(long, env = "PGEXPANDER_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = expcode::DEFAULT_MAX_ITERATIONS)]
    max_iterations: usize,
    /// Also emit one record per round.
    #[arg(long)]
    records: bool,
}

#[derive(Subcommand)]
enum SimCmd {
    Random(SimArgs),
    Burst {
        #[command(flatten)]
        args: SimArgs,
        /// Try every start position once instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    Interleaved {
        #[command(flatten)]
        args: SimArgs,
        /// Interleaving depth.
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

#[derive(Args)]
struct PlantArgs {
    #[command(flatten)]
    eps: EpsilonArg,
    /// Index into the plane list, 0-based.
    #[arg(long, default_value_t = 0)]
    plane_id: usize,
    #[arg(long, env = "PGEXPANDER_SEED", default_value_t = 1)]
    seed: u64,
    /// Also write the corrupted all-zero word as hex.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_epsilon(s: &str) -> std::result::Result<usize, String> {
    let e: usize = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if e % 2 == 0 || !(3..=15).contains(&e) {
        return Err(format!("must be odd and in 3..=15, got {e}"));
    }
    Ok(e)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn outln(text: &str) {
    out(&format!("{text}\n"));
}

fn emit(format: Format, text: impl FnOnce() -> String, value: serde_json::Value) {
    match format {
        Format::Text => out(&text()),
        Format::JsonLines => outln(&value.to_string()),
    }
}

fn geom_info(format: Format, d: u32) -> Result<()> {
    let pg = ProjectiveSpace::new(d)?;
    let points = pg.num_points() as u64;
    let lines = gaussian(d, 1, 2)?;
    let planes = if d >= 2 { gaussian(d, 2, 2)? } else { 0 };
    let degree = if d >= 1 { gaussian(d - 1, d.saturating_sub(2), 2)? } else { 0 };
    emit(
        format,
        || {
            format!(
                "PG({d}, 2): {points} points, {points} hyperplanes, {lines} lines, {planes} planes\n\
                 degree {degree}, {} edges\n",
                points * degree
            )
        },
        json!({"d": d, "points": points, "hyperplanes": points, "lines": lines,
               "planes": planes, "degree": degree, "edges": points * degree}),
    );
    Ok(())
}

fn graph_spectrum(format: Format) -> Result<()> {
    let g = TannerGraph::build(5)?;
    let (k, lambda) = g.gram_check()?;
    let second = g.second_eigenvalue()?;
    emit(
        format,
        || {
            format!(
                "N·Nᵀ = {}·I + {lambda}·J verified\nsecond eigenvalue {second}\n",
                k - lambda
            )
        },
        json!({"k": k, "lambda_design": lambda, "identity_holds": true, "second_eigenvalue": second}),
    );
    Ok(())
}

fn code_build(format: Format, eps: usize, export_g: Option<&Path>, export_h: Option<&Path>) -> Result<()> {
    let spec = CodeSpec::pg52(eps)?;
    let h = spec.build_parity();
    let g = expcode::derive_generator(spec.field(), &h);
    if let Some(p) = export_h {
        write(p, &io::matrix_to_text(&h.rows, h.cols, eps))?;
    }
    if let Some(p) = export_g {
        write(p, &io::matrix_to_text(&g.rows, g.cols, eps))?;
    }
    let n = spec.block_len();
    let rate = g.k() as f64 / n as f64;
    emit(
        format,
        || {
            format!(
                "ε = {eps}: N = {n}, H is {} × {n} of rank {}, k = {}, rate {rate:.4} (lower bound {:.1})\n",
                h.rows.len(),
                g.parity_rank,
                g.k(),
                spec.dimension_lower_bound()
            )
        },
        json!({"epsilon": eps, "n": n, "h_rows": h.rows.len(), "rank": g.parity_rank,
               "k": g.k(), "rate": rate, "k_lower_bound": spec.dimension_lower_bound()}),
    );
    Ok(())
}

fn code_encode(eps: usize, input: &Path, dest: Option<&Path>) -> Result<()> {
    let spec = CodeSpec::pg52(eps)?;
    let g = expcode::derive_generator(spec.field(), &spec.build_parity());
    let mut text = String::new();
    for msg in io::words_from_hex(&read(input)?, g.k())? {
        text.push_str(&io::word_to_hex(&g.encode(spec.field(), &msg)?));
        text.push('\n');
    }
    match dest {
        Some(p) => write(p, &text),
        None => {
            out(&text);
            Ok(())
        }
    }
}

fn report_json(r: &DecodeReport) -> serde_json::Value {
    json!({
        "success": r.success,
        "iterations_used": r.iterations_used,
        "per_iteration": r.per_iteration,
        "final_word": io::word_to_hex(&r.final_word),
    })
}

fn code_decode(
    format: Format,
    eps: usize,
    input: &Path,
    erasures: Option<&Path>,
    max_iterations: usize,
) -> Result<()> {
    let spec = CodeSpec::pg52(eps)?.with_max_iterations(max_iterations)?;
    let n = spec.block_len();
    let eras = match erasures {
        Some(p) => io::erasures_from_text(&read(p)?, n)?,
        None => Vec::new(),
    };
    for word in io::words_from_hex(&read(input)?, n)? {
        let r = spec.iterative_decode(&word, &eras)?;
        emit(
            format,
            || {
                let fails: Vec<String> = r
                    .failure_counts()
                    .iter()
                    .map(|(a, b)| format!("{a}/{b}"))
                    .collect();
                format!(
                    "success={} iterations={} failures(point/hyperplane)=[{}]\n{}\n",
                    r.success,
                    r.iterations_used,
                    fails.join(" "),
                    io::word_to_hex(&r.final_word)
                )
            },
            report_json(&r),
        );
    }
    Ok(())
}

fn rs_command(format: Format, cmd: RsCmd) -> Result<()> {
    match cmd {
        RsCmd::Encode { eps, input } => {
            let codec = RsCodec::gf256(31, eps.epsilon)?;
            for msg in io::words_from_hex(&read(&input)?, codec.params().k())? {
                outln(&io::word_to_hex(&codec.encode(&msg)?));
            }
        }
        RsCmd::Decode { eps, input, erasures } => {
            let codec = RsCodec::gf256(31, eps.epsilon)?;
            for word in io::words_from_hex(&read(&input)?, 31)? {
                let out = codec.decode(&word, &erasures)?;
                emit(
                    format,
                    || {
                        format!(
                            "{:?} errors={} erasures={}\n{}\n",
                            out.status,
                            out.errors_corrected,
                            out.erasures_used,
                            io::word_to_hex(&out.word)
                        )
                    },
                    json!({"status": out.status, "errors_corrected": out.errors_corrected,
                           "erasures_used": out.erasures_used, "word": io::word_to_hex(&out.word)}),
                );
            }
        }
    }
    Ok(())
}

fn bounds_command(format: Format, cmd: BoundsCmd) -> Result<()> {
    match cmd {
        BoundsCmd::Table => {
            let rows = bounds::parameter_table();
            match format {
                Format::Text => out(&bounds::format_table(&rows)),
                Format::JsonLines => {
                    for r in &rows {
                        outln(&serde_json::to_string(r)?);
                    }
                }
            }
        }
        BoundsCmd::Search {
            p,
            delta,
            budget,
            no_pruning,
            no_symmetry,
        } => {
            let g = TannerGraph::build(5)?;
            let opts = SearchOptions {
                budget,
                pruning: !no_pruning,
                symmetry: !no_symmetry,
            };
            let r = bounds::search_min_config(&g, p, delta, opts)?;
            emit(
                format,
                || {
                    let mut s = format!(
                        "p = {p}, δ = {delta}: {:?} after {} nodes\n",
                        r.status, r.nodes_explored
                    );
                    if let Some((pts, hs)) = &r.witness {
                        let ids = |v: Vec<u32>| {
                            v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                        };
                        s.push_str(&format!("points: {}\n", ids(pts.iter().map(|x| x.0).collect())));
                        s.push_str(&format!("hyperplanes: {}\n", ids(hs.iter().map(|x| x.0).collect())));
                    }
                    s
                },
                json!({"p": p, "delta": delta, "status": r.status, "nodes_explored": r.nodes_explored,
                       "points": r.witness.as_ref().map(|w| w.0.iter().map(|x| x.0).collect::<Vec<_>>()),
                       "hyperplanes": r.witness.as_ref().map(|w| w.1.iter().map(|x| x.0).collect::<Vec<_>>())}),
            );
        }
    }
    Ok(())
}

fn print_run(format: Format, run: &TrialRun, records: bool) -> Result<()> {
    match format {
        Format::Text => {
            out(&simlab::format_summaries(std::slice::from_ref(&run.summary)));
            if records {
                for r in &run.records {
                    outln(&format!(
                        "round {} start {} success {} iterations {} miscorrected {}",
                        r.round,
                        r.start.map_or("-".into(), |s| s.to_string()),
                        r.success,
                        r.iterations,
                        r.miscorrected
                    ));
                }
            }
        }
        Format::JsonLines => {
            outln(&serde_json::to_string(&run.summary)?);
            if records {
                for r in &run.records {
                    outln(&serde_json::to_string(r)?);
                }
            }
        }
    }
    Ok(())
}

fn sim_command(format: Format, cmd: SimCmd) -> Result<()> {
    let cfg = |a: &SimArgs, model| TrialConfig {
        max_iterations: a.max_iterations,
        ..TrialConfig::new(a.eps.epsilon, model, a.weight, a.rounds, a.seed)
    };
    let (run, records) = match cmd {
        SimCmd::Random(a) => (simlab::run_random(&cfg(&a, ErrorModel::Random))?, a.records),
        SimCmd::Burst { args, exhaustive } => {
            let c = cfg(&args, ErrorModel::Burst);
            let run = if exhaustive {
                simlab::run_burst_exhaustive(&c)?
            } else {
                simlab::run_burst(&c)?
            };
            (run, args.records)
        }
        SimCmd::Interleaved { args, k } => (
            simlab::run_interleaved(k, &cfg(&args, ErrorModel::Burst))?,
            args.records,
        ),
    };
    print_run(format, &run, records)
}

fn plant(format: Format, a: PlantArgs) -> Result<()> {
    let spec = CodeSpec::pg52(a.eps.epsilon)?;
    let planes = ProjectiveSpace::new(5)?.enumerate_planes()?;
    let Some(plane) = planes.get(a.plane_id) else {
        bail!("plane id {} out of range 0..{}", a.plane_id, planes.len());
    };
    let mut rng = ChaCha20Rng::seed_from_u64(a.seed);
    let pattern = expcode::plant_failure_config(&spec, plane, &mut rng)?;
    if let Some(p) = &a.out {
        let mut word = vec![0u8; spec.block_len()];
        for &(l, v) in &pattern {
            word[l as usize - 1] = v;
        }
        write(p, &format!("{}\n", io::word_to_hex(&word)))?;
    }
    emit(
        format,
        || {
            pattern
                .iter()
                .map(|(l, v)| format!("{l} {v:02x}\n"))
                .collect()
        },
        json!({"epsilon": a.eps.epsilon, "plane_id": a.plane_id,
               "plane_points": plane.points().iter().map(|p| p.0).collect::<Vec<_>>(),
               "pattern": pattern}),
    );
    Ok(())
}

fn run_lemmas(format: Format) -> Result<bool> {
    let reports = lemmas::verify_all();
    for r in &reports {
        emit(
            format,
            || {
                format!(
                    "{} {}: {} cases, {} counterexamples\n",
                    if r.holds() { "ok  " } else { "FAIL" },
                    r.name,
                    r.cases,
                    r.counterexamples
                )
            },
            json!({"name": r.name, "cases": r.cases, "counterexamples": r.counterexamples, "holds": r.holds()}),
        );
    }
    Ok(reports.iter().all(|r| r.holds()))
}

fn run(cli: Cli) -> Result<()> {
    let f = cli.format;
    match cli.command {
        Command::Geom(GeomCmd::Info { d }) => geom_info(f, d),
        Command::Graph(GraphCmd::Export { out }) => write(&out, &TannerGraph::build(5)?.export_edges()),
        Command::Graph(GraphCmd::Spectrum) => graph_spectrum(f),
        Command::Code(CodeCmd::Build { eps, export_g, export_h }) => {
            code_build(f, eps.epsilon, export_g.as_deref(), export_h.as_deref())
        }
        Command::Code(CodeCmd::Encode { eps, input, out }) => code_encode(eps.epsilon, &input, out.as_deref()),
        Command::Code(CodeCmd::Decode {
            eps,
            input,
            erasures,
            max_iterations,
        }) => code_decode(f, eps.epsilon, &input, erasures.as_deref(), max_iterations),
        Command::Rs(cmd) => rs_command(f, cmd),
        Command::Bounds(cmd) => bounds_command(f, cmd),
        Command::Sim(cmd) => sim_command(f, cmd),
        Command::Plant(a) => plant(f, a),
        Command::Lemmas => {
            if run_lemmas(f)? {
                Ok(())
            } else {
                bail!("counterexamples found")
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            out(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
