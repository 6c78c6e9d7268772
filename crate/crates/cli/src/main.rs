//! `dft-unitary`: command-line front end for the core library.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 search bound exceeded.

mod args;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dft_unitary::counting::{self, count_sampling_sets, count_unitary_pairs, theta_phi_table};
use dft_unitary::digit_table::canonical_valid_table;
use dft_unitary::graph::{self, build_graph, export_dot};
use dft_unitary::idempotent::{prescribe_zero_set, PrescribeMode};
use dft_unitary::sampling::{self, consecutive_family, progression_family, FamilyRecord};
use dft_unitary::tiling::{self, find_tiling_complement, fuglede_check, fuglede_sweep};
use dft_unitary::{Error, Idempotent, IndexSet, SearchBounds};

use args::{divisor_set, index_set, parse_list, Format, ModulusArgs, OutputArgs, PrimePowerArgs};

#[derive(Parser, Debug)]
#[command(
    name = "dft-unitary",
    version,
    about = "Unitary submatrices of the DFT matrix and orthogonal sampling sets on Z_N"
)]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zero-set divisors and zero set of the idempotent of J.
    Zeroset {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Frequency set J.
        #[arg(long)]
        cols: String,
    },
    /// Orthogonal sampling sets.
    #[command(subcommand)]
    Sample(SampleCmd),
    /// Unitary row/column pairs.
    #[command(subcommand)]
    Unitary(UnitaryCmd),
    /// Closed-form counts and the theta/phi table.
    #[command(subcommand)]
    Count(CountCmd),
    /// Tilings and the sampling/tiling equivalence.
    #[command(subcommand)]
    Tile(TileCmd),
    /// An index set whose idempotent has the given zero-set divisors.
    Prescribe {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        divisors: String,
        #[arg(long, value_enum, default_value = "constructive")]
        mode: ModeArg,
    },
    /// Difference graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Interpolation families and reconstruction.
    #[command(subcommand)]
    Interp(InterpCmd),
}

#[derive(Subcommand, Debug)]
enum SampleCmd {
    /// Find an orthogonal sampling set for J.
    Find {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        cols: String,
    },
    /// Is I an orthogonal sampling set for J?
    Check {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
}

#[derive(Subcommand, Debug)]
enum UnitaryCmd {
    /// The canonical pair for marked columns L.
    Make {
        #[command(flatten)]
        pm: PrimePowerArgs,
        /// Marked columns L.
        #[arg(long)]
        marked: String,
    },
    /// Exact and numeric unitarity of the (rows, cols) submatrix.
    Check {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
    /// Number of unitary pairs of size p^logd, closed form or brute force.
    Count {
        #[command(flatten)]
        pm: PrimePowerArgs,
        #[arg(long)]
        logd: usize,
        #[arg(long)]
        brute_force: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// Number of J of size p^logd with an orthogonal sampling set.
    Theta {
        #[command(flatten)]
        pm: PrimePowerArgs,
        #[arg(long)]
        logd: usize,
        #[arg(long)]
        brute_force: bool,
    },
    /// Number of unitary pairs of size p^logd.
    Phi {
        #[command(flatten)]
        pm: PrimePowerArgs,
        #[arg(long)]
        logd: usize,
        #[arg(long)]
        brute_force: bool,
    },
    /// theta and phi for every logd, with their upper bounds.
    Table {
        #[command(flatten)]
        pm: PrimePowerArgs,
    },
}

#[derive(Subcommand, Debug)]
enum TileCmd {
    /// Does J + K tile Z_N?
    Check {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        cols: String,
        /// Translates K.
        #[arg(long)]
        translates: String,
    },
    /// Find K with J + K = Z_N.
    Complement {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        cols: String,
    },
    /// Sampling and tiling verdicts for J, or for every J of size --d.
    Fuglede {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, conflicts_with = "d")]
        cols: Option<String>,
        #[arg(long)]
        d: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// The difference graph of D (JSON edge list or DOT).
    Build {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        divisors: String,
    },
    /// A maximum clique.
    Clique {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        divisors: String,
    },
    /// Odd holes in the graph and its complement.
    Berge {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        divisors: String,
        #[arg(long, default_value_t = 13)]
        max_len: usize,
    },
    /// Divisibility scan over composite N, or one divisor set with --divisors.
    Scan {
        /// Moduli, e.g. 6,12 (with --divisors: a single modulus).
        #[arg(long)]
        n: String,
        /// Largest |J| to scan (default N/2).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        divisors: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum InterpCmd {
    /// J = d consecutive residues from --offset.
    Cons {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
    },
    /// J = {offset + k s : 0 <= k < d}.
    Arith {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
    },
    /// Round trip of random signals in B^J through their samples on I.
    Reconstruct {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        #[arg(long, default_value_t = 1)]
        signals: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModeArg {
    Constructive,
    Exhaustive,
}

/// What to print and whether the verdict was positive.
struct Report {
    json: Value,
    text: String,
    /// Body for --format csv or dot, where the command supports it.
    other: Option<(Format, String)>,
    positive: bool,
    /// Printed to stderr on a negative verdict.
    negative_note: Option<&'static str>,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report {
            json,
            text: text.into(),
            other: None,
            positive: true,
            negative_note: None,
        }
    }

    fn verdict(mut self, positive: bool, note: &'static str) -> Self {
        self.positive = positive;
        self.negative_note = Some(note);
        self
    }

    fn with(mut self, format: Format, body: String) -> Self {
        self.other = Some((format, body));
        self
    }
}

fn elements(set: &IndexSet) -> Value {
    json!(set.elements())
}

fn list(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn opt_list(v: Option<&[usize]>) -> String {
    v.map_or_else(|| "none".to_string(), list)
}

fn run(command: Command, bounds: &SearchBounds, seed: u64) -> Result<Report> {
    Ok(match command {
        Command::Zeroset { modulus, cols } => {
            let m = modulus.modulus()?;
            let h = Idempotent::new(index_set(&m, &cols)?)?;
            let divisors = h.zero_set_divisors().divisors().to_vec();
            let zero = h.zero_set();
            Report::new(
                json!({"n": m.n(), "j": elements(h.support()), "divisors": divisors, "zero_set": elements(&zero)}),
                format!(
                    "divisors {}\nzero set {}",
                    list(&divisors),
                    list(zero.elements())
                ),
            )
        }
        Command::Sample(SampleCmd::Find { modulus, cols }) => {
            let m = modulus.modulus()?;
            let j = index_set(&m, &cols)?;
            let found = sampling::find_orthogonal_sampling_set(&j, bounds)?;
            let elems = found.as_ref().map(|s| s.elements());
            Report::new(
                json!({"n": m.n(), "j": elements(&j), "sampling_set": elems}),
                opt_list(elems),
            )
            .verdict(found.is_some(), "no orthogonal sampling set")
        }
        Command::Sample(SampleCmd::Check {
            modulus,
            rows,
            cols,
        }) => {
            let m = modulus.modulus()?;
            let (i, j) = (index_set(&m, &rows)?, index_set(&m, &cols)?);
            let ok = sampling::is_orthogonal_sampling_set(&i, &j)?;
            Report::new(
                json!({"n": m.n(), "i": elements(&i), "j": elements(&j), "orthogonal_sampling_set": ok}),
                ok.to_string(),
            )
            .verdict(ok, "not an orthogonal sampling set")
        }
        Command::Unitary(UnitaryCmd::Make { pm, marked }) => {
            let cols = parse_list(&marked)?;
            let (i, j) = sampling::make_unitary_pair(pm.p, pm.m, &cols)?;
            let table = canonical_valid_table(pm.p, pm.m, &cols)?;
            Report::new(
                json!({"n": i.n(), "marked": cols, "i": elements(&i), "j": elements(&j)}),
                format!(
                    "I = {}\nJ = {}\n{table}",
                    list(i.elements()),
                    list(j.elements())
                ),
            )
        }
        Command::Unitary(UnitaryCmd::Check {
            modulus,
            rows,
            cols,
        }) => {
            let m = modulus.modulus()?;
            let report = sampling::pair_report(&index_set(&m, &rows)?, &index_set(&m, &cols)?)?;
            let text = report.unitary.to_string();
            let positive = report.unitary;
            Report::new(serde_json::to_value(&report)?, text).verdict(positive, "not unitary")
        }
        Command::Unitary(UnitaryCmd::Count {
            pm,
            logd,
            brute_force,
        })
        | Command::Count(CountCmd::Phi {
            pm,
            logd,
            brute_force,
        }) => count_report(
            "unitary_pairs",
            &pm,
            logd,
            brute_force,
            bounds,
            count_unitary_pairs,
            counting::brute_force_count_unitary_pairs,
        )?,
        Command::Count(CountCmd::Theta {
            pm,
            logd,
            brute_force,
        }) => count_report(
            "sampling_sets",
            &pm,
            logd,
            brute_force,
            bounds,
            count_sampling_sets,
            counting::brute_force_count_sampling_sets,
        )?,
        Command::Count(CountCmd::Table { pm }) => {
            let rows = theta_phi_table(pm.p, pm.m)?;
            let mut csv = Vec::new();
            counting::write_csv(&rows, &mut csv)?;
            let csv = String::from_utf8(csv)?;
            Report::new(json!({"p": pm.p, "m": pm.m, "rows": rows}), csv.clone())
                .with(Format::Csv, csv)
        }
        Command::Tile(TileCmd::Check {
            modulus,
            cols,
            translates,
        }) => {
            let m = modulus.modulus()?;
            let (j, k) = (index_set(&m, &cols)?, index_set(&m, &translates)?);
            let ok = tiling::tiles(&j, &k)?;
            Report::new(
                json!({"n": m.n(), "j": elements(&j), "k": elements(&k), "tiles": ok}),
                ok.to_string(),
            )
            .verdict(ok, "not a tiling")
        }
        Command::Tile(TileCmd::Complement { modulus, cols }) => {
            let m = modulus.modulus()?;
            let j = index_set(&m, &cols)?;
            let k = find_tiling_complement(&j, bounds)?;
            let elems = k.as_ref().map(|s| s.elements());
            Report::new(
                json!({"n": m.n(), "j": elements(&j), "tiling_complement": elems}),
                opt_list(elems),
            )
            .verdict(k.is_some(), "J does not tile")
        }
        Command::Tile(TileCmd::Fuglede { modulus, cols, d }) => {
            let m = modulus.modulus()?;
            match (cols, d) {
                (Some(cols), None) => {
                    let r = fuglede_check(&index_set(&m, &cols)?, bounds)?;
                    let mut text = format!(
                        "sampling set {}\ntiling complement {}\nagree {}",
                        opt_list(r.sampling_set.as_deref()),
                        opt_list(r.tiling_complement.as_deref()),
                        r.agree
                    );
                    if !r.theorem_scope {
                        text += "\nN is not a prime power: outside theorem scope";
                    }
                    let mut json = serde_json::to_value(&r)?;
                    json["outside_theorem_scope"] = json!(!r.theorem_scope);
                    let positive = r.agree || !r.theorem_scope;
                    Report::new(json, text)
                        .verdict(positive, "sampling and tiling verdicts disagree")
                }
                (None, Some(d)) => {
                    let s = fuglede_sweep(&m, d, bounds)?;
                    let text = format!(
                        "checked {} sets containing 0\nsampling positives {}\ntiling positives {}\ndisagreements {}",
                        s.checked,
                        s.sampling_positives,
                        s.tiling_positives,
                        s.disagreements.len()
                    );
                    let positive = s.disagreements.is_empty();
                    Report::new(serde_json::to_value(&s)?, text)
                        .verdict(positive, "sampling and tiling verdicts disagree")
                }
                _ => bail!("give --cols or --d"),
            }
        }
        Command::Prescribe {
            modulus,
            divisors,
            mode,
        } => {
            let m = modulus.modulus()?;
            let d = divisor_set(&m, &divisors)?;
            let mode = match mode {
                ModeArg::Constructive => PrescribeMode::Constructive,
                ModeArg::Exhaustive => PrescribeMode::Exhaustive,
            };
            let found = prescribe_zero_set(&d, mode, bounds)?;
            let elems = found.as_ref().map(|s| s.elements());
            Report::new(
                json!({"n": m.n(), "divisors": d.divisors(), "j": elems}),
                opt_list(elems),
            )
            .verdict(found.is_some(), "no idempotent has this zero set")
        }
        Command::Graph(GraphCmd::Build { modulus, divisors }) => {
            let m = modulus.modulus()?;
            let g = build_graph(&divisor_set(&m, &divisors)?)?;
            let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(a, b)| [a, b]).collect();
            let dot = export_dot(&g);
            Report::new(
                json!({"n": g.n(), "divisors": g.divisors().divisors(), "degree": g.degree(), "edges": edges}),
                format!("N = {}, degree {}, {} edges", g.n(), g.degree(), g.edge_count()),
            )
            .with(Format::Dot, dot)
        }
        Command::Graph(GraphCmd::Clique { modulus, divisors }) => {
            let m = modulus.modulus()?;
            let g = build_graph(&divisor_set(&m, &divisors)?)?;
            let c = graph::max_clique(&g, bounds)?;
            Report::new(
                json!({"n": g.n(), "divisors": g.divisors().divisors(), "max_clique": elements(&c)}),
                format!("size {}: {}", c.len(), list(c.elements())),
            )
        }
        Command::Graph(GraphCmd::Berge {
            modulus,
            divisors,
            max_len,
        }) => {
            let m = modulus.modulus()?;
            let g = build_graph(&divisor_set(&m, &divisors)?)?;
            let r = graph::berge_certify(&g, max_len, bounds)?;
            let text = format!(
                "hole {}\ncomplement hole {}",
                opt_list(r.graph_hole.as_deref()),
                opt_list(r.complement_hole.as_deref())
            );
            let positive = r.is_berge_up_to_max_len();
            let mut json = serde_json::to_value(&r)?;
            json["holes"] = json!(r.holes());
            Report::new(json, text).verdict(positive, "odd hole found")
        }
        Command::Graph(GraphCmd::Scan { n, d, divisors }) => {
            let ns = parse_list(&n)?;
            if let Some(divisors) = divisors {
                let [n] = ns[..] else {
                    bail!("--divisors needs a single --n")
                };
                let m = dft_unitary::Modulus::new(n)?;
                let e = graph::scan_divisor_set(&divisor_set(&m, &divisors)?, bounds)?;
                let text = format!("{:?}, max clique {:?}", e.realizable, e.max_clique);
                Report::new(serde_json::to_value(&e)?, text)
            } else {
                let top = d.unwrap_or(usize::MAX);
                let reports = graph::divisibility_scan(ns, 1..=top, bounds)?;
                let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
                let text = reports
                    .iter()
                    .map(|r| {
                        format!(
                            "N = {}: {} subsets, {} violations",
                            r.n,
                            r.subsets_examined,
                            r.violations.len()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                Report::new(serde_json::to_value(&reports)?, text)
                    .verdict(violations == 0, "divisibility violated")
            }
        }
        Command::Interp(InterpCmd::Cons { modulus, d, offset }) => {
            family_report(consecutive_family(&modulus.modulus()?, d, offset)?)?
        }
        Command::Interp(InterpCmd::Arith {
            modulus,
            s,
            d,
            offset,
        }) => family_report(progression_family(&modulus.modulus()?, s, d, offset)?)?,
        Command::Interp(InterpCmd::Reconstruct {
            modulus,
            rows,
            cols,
            signals,
        }) => {
            let m = modulus.modulus()?;
            let (i, j) = (index_set(&m, &rows)?, index_set(&m, &cols)?);
            let basis = sampling::interpolating_basis(&i, &j)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst: f64 = 0.0;
            for _ in 0..signals {
                let f = sampling::random_bandlimited(&j, &mut rng);
                let samples: Vec<Complex64> = i.elements().iter().map(|&k| f[k]).collect();
                worst = worst.max(sampling::relative_error(&basis.combine(&samples)?, &f));
            }
            Report::new(
                json!({"n": m.n(), "i": elements(&i), "j": elements(&j), "signals": signals, "seed": seed,
                       "condition_number": basis.condition_number, "max_relative_error": worst}),
                format!(
                    "condition number {:.6e}\nmax relative error {worst:.3e}",
                    basis.condition_number
                ),
            )
        }
    })
}

type ClosedForm = fn(usize, usize, usize) -> dft_unitary::Result<counting::BigCount>;
type BruteForce =
    fn(&dft_unitary::Modulus, usize, &SearchBounds) -> dft_unitary::Result<counting::BigCount>;

fn count_report(
    key: &str,
    pm: &PrimePowerArgs,
    logd: usize,
    brute_force: bool,
    bounds: &SearchBounds,
    closed: ClosedForm,
    brute: BruteForce,
) -> Result<Report> {
    let value = if brute_force {
        let m =
            dft_unitary::Modulus::prime_power(pm.p, u32::try_from(pm.m).context("--m too large")?)?;
        let d = u32::try_from(logd)
            .ok()
            .and_then(|l| pm.p.checked_pow(l))
            .context("--logd too large")?;
        brute(&m, d, bounds)?
    } else {
        closed(pm.p, pm.m, logd)?
    };
    let text = value.0.to_string();
    Ok(Report::new(
        json!({"p": pm.p, "m": pm.m, "log_d": logd, "method": if brute_force { "brute_force" } else { "closed_form" }, key: value}),
        text,
    ))
}

fn family_report(f: FamilyRecord) -> Result<Report> {
    let n = f.n();
    let closed: Vec<[f64; 2]> = (0..n)
        .map(|m| f.eval_closed_form(m))
        .map(|z| [z.re, z.im])
        .collect();
    let sampling = f.sampling_set.as_ref().map(|s| s.elements());
    let text = format!(
        "J = {}\nzero set {}\nsampling set {}",
        list(f.j.elements()),
        list(f.zero_set.elements()),
        opt_list(sampling)
    );
    let json = json!({"family": f.kind, "n": n, "j": elements(&f.j), "zero_set": elements(&f.zero_set),
                      "sampling_set": sampling, "idempotent": closed});
    Ok(Report::new(json, text).verdict(f.sampling_set.is_some(), "no orthogonal sampling set"))
}

fn emit(report: &Report, out: &OutputArgs) -> Result<()> {
    let body = match (out.format, &report.other) {
        (Format::Json, _) => serde_json::to_string_pretty(&report.json)? + "\n",
        (Format::Text, _) => report.text.clone() + "\n",
        (f, Some((g, body))) if f == *g => body.clone(),
        (f, _) => bail!("--format {f:?} is not available for this command"),
    };
    match &out.output {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_bound_exceeded() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> Result<bool> {
        if let Some(jobs) = cli.out.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global()?;
        }
        let bounds = SearchBounds::from_env()?;
        let report = run(cli.command, &bounds, cli.out.seed)?;
        emit(&report, &cli.out)?;
        if !report.positive {
            if let Some(note) = report.negative_note {
                eprintln!("{note}");
            }
        }
        Ok(report.positive)
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
