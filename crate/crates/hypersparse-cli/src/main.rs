//! Single-binary CLI for the hypersparse toolkit: canonicalize, lift and
//! unlift, sparsify, verify, pack/recover, splitting-function generation,
//! and file statistics. All output is deterministic given the command line
//! and input files.
//!
//! Exit codes: 0 success or verification pass, 1 verification fail,
//! 2 usage or parse error, 3 I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hypersparse::hypercore::{CutInstance, CutSet, SubmodularHypergraph};
use hypersparse::io;
use hypersparse::lift::{lift_hypergraph, unlift_hypergraph};
use hypersparse::sketchsim::{
    crossing_census, encode_multi, noisy_oracle, recover_cut, MultiEncoding, OracleMode,
};
use hypersparse::sparsify::{
    sensitivity_sample, sparsify_directed, verify_cut_sparsifier, SensitivityBackend,
    SparsifierResult, SparsifyConfig, VerifyReport,
};
use hypersparse::submod::{check_monotone, check_submodular, families, sparsify_monotone};
use hypersparse::Error;

#[derive(Parser)]
#[command(
    name = "hypersparse",
    version,
    about = "hypergraph sparsification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[value(name = "undirected-cut")]
    UndirectedCut,
    #[value(name = "directed-cut")]
    DirectedCut,
    #[value(name = "monotone")]
    Monotone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Exact,
    Random,
    #[value(name = "adversarial-corner")]
    AdversarialCorner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Modular,
    #[value(name = "truncated-cardinality")]
    TruncatedCardinality,
    #[value(name = "budget-additive")]
    BudgetAdditive,
    Coverage,
    #[value(name = "partition-matroid")]
    PartitionMatroid,
    #[value(name = "sqrt-modular")]
    SqrtModular,
    #[value(name = "log1p-modular")]
    Log1pModular,
    #[value(name = "facility-location")]
    FacilityLocation,
    #[value(name = "probabilistic-coverage")]
    ProbabilisticCoverage,
    #[value(name = "square-cardinality")]
    SquareCardinality,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a file and rewrite it in canonical form.
    Fmt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lift a directed hypergraph to the undirected hypergraph on n²+1
    /// vertices.
    Lift {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Invert a lift; the input must carry the `# lifted from n=<n>`
    /// comment.
    Unlift {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sparsify with the sensitivity-sampling baseline and exhaustive
    /// verification.
    Sparsify {
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustively compare the cuts of two same-kind files against a
    /// (1 ± eps) band.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print size statistics of a file.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Pack unweighted undirected hypergraphs into one directed hypergraph.
    Encode {
        #[arg(long, value_delimiter = ',', required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        tags: PathBuf,
    },
    /// Recover one packed cut value from three directed-cut queries.
    Recover {
        #[arg(long)]
        enc: PathBuf,
        #[arg(long)]
        tags: PathBuf,
        #[arg(long)]
        index: usize,
        /// Comma-separated vertex ids, or "none" for the empty set.
        #[arg(long)]
        cut: String,
        #[arg(long)]
        oracle: OracleArg,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a built-in splitting-function family as a table-backed SFN
    /// file.
    GenSfn {
        #[arg(long)]
        family: Family,
        /// Comma-separated support vertex ids.
        #[arg(long)]
        support: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap for truncated-cardinality / partition-matroid blocks.
        #[arg(long)]
        cap: Option<usize>,
        /// Budget for budget-additive.
        #[arg(long)]
        budget: Option<f64>,
        /// Explicit unit-weight cover sets for the coverage family: one
        /// comma-separated ground-element list per support member,
        /// semicolon-separated (e.g. "0,1;2;0,2").
        #[arg(long)]
        sets: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Io(_) => 3,
                Error::VerificationFailed { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(Error::from)
}

fn parse_cut_arg(arg: &str, n: usize) -> Result<CutSet, Error> {
    if arg == "none" {
        return Ok(CutSet::empty(n));
    }
    let mut members = Vec::new();
    for tok in arg.split(',') {
        let v: usize = tok
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad cut vertex {tok:?}")))?;
        members.push(v);
    }
    CutSet::from_members(n, members)
}

fn sparsify_report(res: &SparsifierResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kept_edges: {}", res.kept.len());
    let _ = writeln!(out, "m_prime: {}", res.samples_drawn);
    let _ = writeln!(out, "retries: {}", res.retries_used);
    let _ = writeln!(
        out,
        "max_rel_error: {}",
        res.verified_max_rel_error.unwrap_or(f64::NAN)
    );
    let worst = res
        .worst_cut
        .as_ref()
        .map_or_else(|| "0x0".to_string(), |c| c.to_hex());
    let _ = writeln!(out, "worst_cut: {worst}");
    out
}

fn verify_report_text(rep: &VerifyReport) -> String {
    format!(
        "pass: {}\nmax_rel_error: {}\nworst_cut: {}\n",
        rep.pass,
        rep.max_rel_error,
        rep.worst_cut.to_hex()
    )
}

fn emit_report(text: &str, path: Option<&Path>) -> Result<(), Error> {
    print!("{text}");
    if let Some(p) = path {
        write(p, text)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Fmt { input, out } => {
            let text = read(&input)?;
            let canonical = match io::detect_kind(&text)? {
                io::FileKind::Undirected => {
                    let (h, lifted) = io::parse_undirected(&text)?;
                    io::emit_undirected(&h, lifted)
                }
                io::FileKind::Directed => io::emit_directed(&io::parse_directed(&text)?),
                io::FileKind::Splitting => io::emit_splitting(&io::parse_splitting(&text)?)?,
            };
            write(&out, &canonical)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Lift { input, out } => {
            let h = io::parse_directed(&read(&input)?)?;
            let lifted = lift_hypergraph(&h);
            write(&out, &io::emit_lifted(&lifted))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Unlift { input, out } => {
            let lifted = io::parse_lifted(&read(&input)?)?;
            let h = unlift_hypergraph(&lifted)?;
            write(&out, &io::emit_directed(&h))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Sparsify {
            mode,
            eps,
            delta,
            seed,
            input,
            out,
            report,
        } => {
            let mut cfg = SparsifyConfig::new(eps, seed)?;
            cfg.delta = delta;
            cfg.check()?;
            let text = read(&input)?;
            let res = match mode {
                Mode::UndirectedCut => {
                    let (h, lifted) = io::parse_undirected(&text)?;
                    let res = sensitivity_sample(&h, &cfg)?;
                    write(&out, &io::emit_undirected(&h.reweighted(&res.kept), lifted))?;
                    res
                }
                Mode::DirectedCut => {
                    let h = io::parse_directed(&text)?;
                    let res = sparsify_directed(&h, &cfg, &SensitivityBackend)?;
                    write(&out, &io::emit_directed(&h.reweighted(&res.kept)))?;
                    res
                }
                Mode::Monotone => {
                    let h = certify_parsed_splitting(io::parse_splitting(&text)?)?;
                    let res = sparsify_monotone(&h, &cfg, &SensitivityBackend)?;
                    write(&out, &io::emit_splitting(&h.reweighted(&res.kept))?)?;
                    res
                }
            };
            emit_report(&sparsify_report(&res), report.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify { a, b, eps, report } => {
            let ta = read(&a)?;
            let tb = read(&b)?;
            let (ka, kb) = (io::detect_kind(&ta)?, io::detect_kind(&tb)?);
            if ka != kb {
                return Err(Error::InvalidArgument(format!(
                    "cannot verify {ka:?} against {kb:?}"
                )));
            }
            let rep = match ka {
                io::FileKind::Undirected => {
                    let (ha, _) = io::parse_undirected(&ta)?;
                    let (hb, _) = io::parse_undirected(&tb)?;
                    verify_cut_sparsifier(&ha, &hb, eps)?
                }
                io::FileKind::Directed => {
                    let ha = io::parse_directed(&ta)?;
                    let hb = io::parse_directed(&tb)?;
                    verify_cut_sparsifier(&ha, &hb, eps)?
                }
                io::FileKind::Splitting => {
                    let ha = io::parse_splitting(&ta)?;
                    let hb = io::parse_splitting(&tb)?;
                    verify_cut_sparsifier(&ha, &hb, eps)?
                }
            };
            emit_report(&verify_report_text(&rep), report.as_deref())?;
            Ok(if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Cmd::Stats { input } => {
            let text = read(&input)?;
            let mut out = String::new();
            match io::detect_kind(&text)? {
                io::FileKind::Undirected => {
                    let (h, _) = io::parse_undirected(&text)?;
                    let _ = writeln!(out, "kind: undirected");
                    let _ = writeln!(out, "n: {}", h.n);
                    let _ = writeln!(out, "m: {}", h.edges.len());
                    let _ = writeln!(
                        out,
                        "total_weight: {}",
                        h.edges.iter().map(|e| e.weight).sum::<f64>() + 0.0
                    );
                    let _ = writeln!(
                        out,
                        "max_edge_size: {}",
                        h.edges.iter().map(|e| e.vertices.len()).max().unwrap_or(0)
                    );
                }
                io::FileKind::Directed => {
                    let h = io::parse_directed(&text)?;
                    let _ = writeln!(out, "kind: directed");
                    let _ = writeln!(out, "n: {}", h.n);
                    let _ = writeln!(out, "m: {}", h.edges.len());
                    let _ = writeln!(
                        out,
                        "total_weight: {}",
                        h.edges.iter().map(|e| e.weight).sum::<f64>() + 0.0
                    );
                    let r = h
                        .edges
                        .iter()
                        .map(|e| {
                            let mut all = e.tail.clone();
                            all.extend_from_slice(&e.head);
                            all.sort_unstable();
                            all.dedup();
                            all.len()
                        })
                        .max()
                        .unwrap_or(0);
                    let _ = writeln!(out, "max_edge_size: {r}");
                    let lifted: usize = h
                        .edges
                        .iter()
                        .map(|e| e.tail.len() * e.head.len() + 1)
                        .sum();
                    let _ = writeln!(out, "lifted_edges_size: {lifted}");
                }
                io::FileKind::Splitting => {
                    let h = io::parse_splitting(&text)?;
                    let _ = writeln!(out, "kind: splitting");
                    let _ = writeln!(out, "n: {}", h.n);
                    let _ = writeln!(out, "m: {}", h.edges.len());
                    let _ = writeln!(
                        out,
                        "max_edge_size: {}",
                        h.edges.iter().map(|e| e.arity()).max().unwrap_or(0)
                    );
                }
            }
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Encode { inputs, out, tags } => {
            let mut graphs = Vec::new();
            for p in &inputs {
                let (h, _) = io::parse_undirected(&read(p)?)?;
                graphs.push(h);
            }
            let enc = encode_multi(&graphs)?;
            write(&out, &io::emit_directed(&enc.graph))?;
            write(&tags, &io::emit_tags(&enc.tags))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Recover {
            enc,
            tags,
            index,
            cut,
            oracle,
            eps,
            seed,
        } => {
            let graph = io::parse_directed(&read(&enc)?)?;
            let tags = io::parse_tags(&read(&tags)?)?;
            if tags.len() != graph.edges.len() {
                return Err(Error::InvalidArgument(format!(
                    "tags file has {} entries for {} edges",
                    tags.len(),
                    graph.edges.len()
                )));
            }
            let k = tags.iter().copied().max().map_or(0, |t| t + 1);
            if graph.n < k + 1 {
                return Err(Error::InvalidArgument(
                    "encoding has fewer vertices than markers".into(),
                ));
            }
            let source_n = graph.n - k;
            let enc = MultiEncoding {
                graph,
                source_n,
                k,
                tags,
            };
            let s = parse_cut_arg(&cut, source_n)?;
            let mode = match oracle {
                OracleArg::Exact => OracleMode::Exact,
                OracleArg::Random => OracleMode::Random,
                OracleArg::AdversarialCorner => OracleMode::AdversarialCorner,
            };
            let oracle = noisy_oracle(&enc, eps, mode, seed)?;
            let estimate = recover_cut(&oracle, &enc, index, &s)?;
            let (a, b, t) = crossing_census(&enc, index, &s)?;
            let truth = (a + b) as f64 - t as f64;
            let mut out = String::new();
            let _ = writeln!(out, "estimate: {estimate}");
            let _ = writeln!(out, "truth: {truth}");
            let _ = writeln!(out, "error: {}", (estimate - truth).abs());
            let _ = writeln!(out, "bound: {}", 3.0 * eps * t as f64);
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }

        Cmd::GenSfn {
            family,
            support,
            seed,
            cap,
            budget,
            out,
        } => {
            let support: Vec<usize> = support
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidArgument(format!("bad support id {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let f = build_family(family, support, seed, cap, budget)?;
            let n = f.support().iter().max().unwrap() + 1;
            let h = SubmodularHypergraph::new(n, vec![f]);
            write(&out, &io::emit_splitting(&h)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Certifies parsed (claim-less) splitting functions so the monotone
/// pipeline can trust them; fails with the edge index and witness.
fn certify_parsed_splitting(mut h: SubmodularHypergraph) -> Result<SubmodularHypergraph, Error> {
    for (i, f) in h.edges.iter_mut().enumerate() {
        if let Some(w) = check_monotone(f)? {
            return Err(Error::CertificationFailed {
                edge: i,
                name: f.name().to_string(),
                witness: format!("not monotone: {w}"),
            });
        }
        if let Some(w) = check_submodular(f)? {
            return Err(Error::CertificationFailed {
                edge: i,
                name: f.name().to_string(),
                witness: format!("not submodular: {w}"),
            });
        }
        f.claims.monotone = true;
        f.claims.submodular = true;
    }
    Ok(h)
}

fn build_family(
    family: Family,
    support: Vec<usize>,
    seed: u64,
    cap: Option<usize>,
    budget: Option<f64>,
) -> Result<hypersparse::SplittingFunction, Error> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let k = support.len();
    fn dyadic_vec(rng: &mut rand_chacha::ChaCha8Rng, k: usize) -> Vec<f64> {
        (0..k)
            .map(|_| rng.random_range(8..=256u32) as f64 / 64.0)
            .collect()
    }
    match family {
        Family::Modular => {
            let w = dyadic_vec(&mut rng, k);
            families::modular("modular", support, w)
        }
        Family::TruncatedCardinality => {
            families::truncated_cardinality("trunc-card", support, cap.unwrap_or(1))
        }
        Family::BudgetAdditive => {
            let w = dyadic_vec(&mut rng, k);
            families::budget_additive("budget", support, w, budget.unwrap_or(2.0))
        }
        Family::Coverage => {
            let elems = k.max(2);
            let covers: Vec<u64> = (0..k).map(|_| rng.random_range(1..1u64 << elems)).collect();
            let w = dyadic_vec(&mut rng, elems);
            families::coverage("coverage", support, covers, w)
        }
        Family::PartitionMatroid => {
            let nblocks = cap.unwrap_or(2).max(1);
            let blocks: Vec<usize> = (0..k)
                .map(|_| rng.random_range(0..nblocks as u32) as usize)
                .collect();
            let caps = vec![1; nblocks];
            families::partition_matroid_rank("partition-rank", support, blocks, caps)
        }
        Family::SqrtModular => {
            let w = dyadic_vec(&mut rng, k);
            families::sqrt_modular("sqrt", support, w)
        }
        Family::Log1pModular => {
            let w = dyadic_vec(&mut rng, k);
            families::log1p_modular("log1p", support, w)
        }
        Family::FacilityLocation => {
            let sites = k.max(2);
            let gains: Vec<Vec<f64>> = (0..k).map(|_| dyadic_vec(&mut rng, sites)).collect();
            families::facility_location("facility", support, gains)
        }
        Family::ProbabilisticCoverage => {
            let elems = k.max(2);
            let probs: Vec<Vec<f64>> = (0..k)
                .map(|_| {
                    (0..elems)
                        .map(|_| rng.random_range(2..=16u32) as f64 / 32.0)
                        .collect()
                })
                .collect();
            let w = dyadic_vec(&mut rng, elems);
            families::probabilistic_coverage("prob-coverage", support, probs, w)
        }
        Family::SquareCardinality => families::square_cardinality("square-card", support),
    }
}
