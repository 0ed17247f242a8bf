//! The `galcov` command line. Every report starts with the invocation
//! parameters and the seed, and contains no timings, so identical
//! invocations give identical bytes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use galcov_core::finite_group::DEFAULT_HOM_BUDGET;
use galcov_core::homology::{HomologyOptions, DEFAULT_COSET_LIMIT};
use galcov_core::invariants::irregularity_report;
use galcov_core::prover::DEFAULT_PROVER_BUDGET;
use galcov_core::Word;
use serde::Serialize;

use crate::complex_io::{complex_json, complex_text, dual_dot};
use crate::error::{CliError, Result};
use crate::export::{export_with_seed, ExportFormat};
use crate::reports::{
    complex, cycles_report, hom_count_report, homology_report, prove_report, sweep_report,
    verify_report, Goal, Group, ProveReport, SweepReport, VerifyReport,
};
use crate::tables::{
    aligned, census_record, chern_record, csv, invariant_cells, irregularity_text, COLUMNS,
};

#[derive(Debug, Parser)]
#[command(
    name = "galcov",
    version,
    about = "Galois covers of CP^1 x T: complexes, presentations, proofs, invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of grid rows (for `sweep`: the largest m, default 6).
    #[arg(short = 'm', global = true)]
    m: Option<u32>,

    /// Number of grid columns (for `sweep`: the largest n, default 8).
    #[arg(short = 'n', global = true)]
    n: Option<u32>,

    /// text | json | csv | dot | gap | magma | plain, depending on the subcommand.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, visible_alias = "limit", default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_PROVER_BUDGET)]
    prover_budget: u64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Add the hexagon chain equalities to the E6 relators.
    #[arg(long, global = true)]
    with_chain_relators: bool,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// The degeneration complex (text summary, JSON, or DOT dual graph).
    Build,
    /// A group presentation in GAP, Magma, JSON or plain form.
    Relations {
        /// g1 | cy | cy-e6 | atn (with t = m).
        #[arg(long, default_value = "g1")]
        group: String,
    },
    /// Hexagons, h-cycles, γ-words and kernel elements.
    Cycles,
    /// Relator images in S_{2mn} for every emitted presentation.
    Verify,
    /// Homomorphism counts of G1 and C_Y/E6 into groups of order <= 8.
    HomCount {
        #[arg(long, default_value_t = DEFAULT_HOM_BUDGET)]
        hom_budget: u64,
    },
    /// H_1 of the kernel of G1 -> S_{2mn} and the kernel element images.
    Homology,
    /// Machine-checked rewriting proofs.
    Prove {
        /// chain | fork | gamma | words
        #[arg(long, default_value = "chain")]
        goal: String,
        #[arg(long)]
        vertex: Option<u32>,
        #[arg(long)]
        triangle: Option<u32>,
        #[arg(long)]
        row: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lhs: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Option<String>,
        /// Presentation for `--goal words`.
        #[arg(long, default_value = "g1")]
        group: String,
    },
    /// Singularity census of the branch curve.
    Census,
    /// Chern numbers and index.
    Chern,
    /// Irregularity bounds.
    Irregularity,
    /// The grid battery over 1..=m x 2..=n as one table.
    Sweep,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Relations { .. } => "relations",
            Command::Cycles => "cycles",
            Command::Verify => "verify",
            Command::HomCount { .. } => "hom-count",
            Command::Homology => "homology",
            Command::Prove { .. } => "prove",
            Command::Census => "census",
            Command::Chern => "chern",
            Command::Irregularity => "irregularity",
            Command::Sweep => "sweep",
        }
    }

    /// Accepted formats; the first is the default.
    fn formats(&self) -> &'static [&'static str] {
        match self {
            Command::Build => &["text", "json", "dot"],
            Command::Relations { .. } => &["plain", "gap", "magma", "json"],
            Command::Census | Command::Chern | Command::Sweep => &["text", "csv", "json"],
            _ => &["text", "json"],
        }
    }
}

/// Validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    command: Command,
    pub m: u32,
    pub n: u32,
    pub format: &'static str,
    pub out: Option<PathBuf>,
    pub coset_limit: u64,
    pub prover_budget: u64,
    pub seed: u64,
    pub with_chain_relators: bool,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self> {
        let sweep = matches!(cli.command, Command::Sweep);
        let m = match (cli.m, sweep) {
            (Some(m), _) => m,
            (None, true) => 6,
            (None, false) => {
                return Err(CliError::Usage {
                    flag: "-m",
                    reason: "required".into(),
                })
            }
        };
        let n = match (cli.n, sweep) {
            (Some(n), _) => n,
            (None, true) => 8,
            (None, false) => {
                return Err(CliError::Usage {
                    flag: "-n",
                    reason: "required".into(),
                })
            }
        };
        if m < 1 {
            return Err(CliError::Usage {
                flag: "-m",
                reason: format!("{m} (need >= 1)"),
            });
        }
        if n < 2 {
            return Err(CliError::Usage {
                flag: "-n",
                reason: format!("{n} (need >= 2)"),
            });
        }
        let allowed = cli.command.formats();
        let format = match cli.format.as_deref() {
            None => allowed[0],
            Some(f) => {
                let f = f.to_ascii_lowercase();
                let f = if f == "text" && allowed[0] == "plain" {
                    "plain".to_string()
                } else {
                    f
                };
                *allowed
                    .iter()
                    .find(|a| **a == f)
                    .ok_or_else(|| CliError::Usage {
                        flag: "--format",
                        reason: format!(
                            "`{f}` is not one of {} for {}",
                            allowed.join(", "),
                            cli.command.name()
                        ),
                    })?
            }
        };
        if cli.prover_budget == 0 {
            return Err(CliError::Usage {
                flag: "--prover-budget",
                reason: "must be positive".into(),
            });
        }
        if cli.coset_limit == 0 {
            return Err(CliError::Usage {
                flag: "--coset-limit",
                reason: "must be positive".into(),
            });
        }
        Ok(Self {
            command: cli.command,
            m,
            n,
            format,
            out: cli.out,
            coset_limit: cli.coset_limit,
            prover_budget: cli.prover_budget,
            seed: cli.seed,
            with_chain_relators: cli.with_chain_relators,
        })
    }

    fn header(&self) -> String {
        format!(
            "# galcov {} m={} n={} seed={}\n",
            self.command.name(),
            self.m,
            self.n,
            self.seed
        )
    }
}

/// A rendered report and whether its checks passed.
struct Rendered {
    text: String,
    pass: bool,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for p in &r.presentations {
        writeln!(
            s,
            "{:<6} {:>5} relators  {:>3} failures",
            p.group,
            p.relators,
            p.failures.len()
        )
        .unwrap();
        for f in &p.failures {
            writeln!(s, "FAIL {} {} {}: {}", p.group, f.tag, f.label, f.word).unwrap();
        }
    }
    let cyc = r.cycles.iter().filter(|c| c.pass).count();
    writeln!(s, "cycles {cyc}/{} with γ_(r-1) = γ_r", r.cycles.len()).unwrap();
    for c in r.cycles.iter().filter(|c| !c.pass) {
        writeln!(s, "FAIL cycle {} {}", c.kind, c.id).unwrap();
    }
    writeln!(s, "transitive {}", r.transitive).unwrap();
    writeln!(s, "relabeling invariant {}", r.relabeling_invariant).unwrap();
    writeln!(s, "{}", mark(r.pass)).unwrap();
    s
}

fn prove_text(r: &ProveReport) -> String {
    let mut s = String::new();
    writeln!(s, "goal {}  budget {}", r.goal, r.budget).unwrap();
    for e in &r.entries {
        let detail = match e.outcome.proof() {
            Some(p) => format!("{:?} {} steps", p.method, p.trace.steps.len()).to_lowercase(),
            None => String::new(),
        };
        let line = format!(
            "{}: {} = {}  {} {detail}",
            e.label,
            e.lhs,
            e.rhs,
            e.outcome.status()
        );
        writeln!(s, "{}", line.trim_end()).unwrap();
    }
    writeln!(s, "proved {}/{}", r.proved, r.total).unwrap();
    writeln!(s, "{}", mark(r.pass)).unwrap();
    s
}

fn sweep_table(r: &SweepReport, as_csv: bool) -> String {
    let mut header: Vec<&str> = COLUMNS.to_vec();
    header.extend([
        "census",
        "sign-table",
        "relators",
        "cycles",
        "abelianization",
        "pass",
    ]);
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .zip(invariant_cells(
            &r.rows.iter().map(|x| x.row.clone()).collect::<Vec<_>>(),
        ))
        .map(|(x, mut cells)| {
            for ok in [
                x.census_ok,
                x.sign_ok,
                x.relators_ok,
                x.cycles_ok,
                x.abelianization_ok,
                x.pass,
            ] {
                cells.push(mark(ok).to_string());
            }
            cells
        })
        .collect();
    if as_csv {
        csv(&header, &rows)
    } else {
        aligned(&header, &rows)
    }
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema: &'static str,
    seed: u64,
    kind: &'static str,
    records: &'a [T],
}

fn render(cfg: &RunConfig) -> Result<Rendered> {
    let (m, n, seed) = (cfg.m, cfg.n, cfg.seed);
    let text_like = !matches!(cfg.format, "json" | "dot" | "gap" | "magma" | "csv")
        && !matches!(cfg.command, Command::Relations { .. });
    let mut out = if text_like {
        cfg.header()
    } else {
        String::new()
    };
    let mut pass = true;
    match &cfg.command {
        Command::Build => {
            let c = complex(m, n)?;
            match cfg.format {
                "json" => out.push_str(&complex_json(&c, seed)),
                "dot" => out.push_str(&dual_dot(&c, seed)),
                _ => out.push_str(&complex_text(&c)),
            }
        }
        Command::Relations { group } => {
            let g = Group::parse(group)?;
            let p = g.presentation(&complex(m, n)?, cfg.with_chain_relators);
            let fmt: ExportFormat = cfg.format.parse()?;
            match fmt {
                ExportFormat::Gap | ExportFormat::Plain => out.push_str(&format!(
                    "# galcov relations {} m={m} n={n} seed={seed}\n",
                    g.name()
                )),
                ExportFormat::Magma => out.push_str(&format!(
                    "// galcov relations {} m={m} n={n} seed={seed}\n",
                    g.name()
                )),
                _ => {}
            }
            out.push_str(&export_with_seed(&p, fmt, Some(seed)));
        }
        Command::Cycles => {
            let r = cycles_report(&complex(m, n)?, seed)?;
            if cfg.format == "json" {
                out.push_str(&json(&r));
            } else {
                for h in &r.hexagons {
                    let cyc: Vec<String> = h.cyclic.iter().map(|x| x.to_string()).collect();
                    writeln!(
                        out,
                        "hexagon V{} {} cyclic {}  E6: {}",
                        h.vertex,
                        h.subtype,
                        cyc.join(" "),
                        h.e6_relator
                    )
                    .unwrap();
                }
                for h in &r.h_cycles {
                    let e: Vec<String> = h.edges.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "H{} edges {}", h.row, e.join(" ")).unwrap();
                    for (j, g) in h.elements.iter().enumerate() {
                        writeln!(out, "  g{} = {}", j + 2, g).unwrap();
                    }
                }
                writeln!(out, "kernel elements {}", r.kernel_elements).unwrap();
            }
        }
        Command::Verify => {
            let r = verify_report(&complex(m, n)?, cfg.with_chain_relators, seed)?;
            pass = r.pass;
            out.push_str(&if cfg.format == "json" {
                json(&r)
            } else {
                verify_text(&r)
            });
        }
        Command::HomCount { hom_budget } => {
            let r = hom_count_report(&complex(m, n)?, cfg.with_chain_relators, *hom_budget, seed)?;
            pass = r.pass;
            if cfg.format == "json" {
                out.push_str(&json(&r));
            } else {
                let rows: Vec<Vec<String>> = r
                    .rows
                    .iter()
                    .map(|x| {
                        vec![
                            x.group.clone(),
                            x.order.to_string(),
                            x.g1.to_string(),
                            x.cy_e6.to_string(),
                            mark(x.agree).into(),
                        ]
                    })
                    .collect();
                out.push_str(&aligned(
                    &["group", "order", "G1", "C_Y/E6", "agree"],
                    &rows,
                ));
                writeln!(out, "{}", mark(r.pass)).unwrap();
            }
        }
        Command::Homology => {
            let opts = HomologyOptions {
                coset_limit: cfg.coset_limit,
                ..HomologyOptions::default()
            };
            let r = homology_report(&complex(m, n)?, opts, seed)?;
            pass = r.pass;
            if cfg.format == "json" {
                out.push_str(&json(&r));
            } else {
                writeln!(
                    out,
                    "cosets {}  schreier generators {}  relators {}",
                    r.cosets, r.schreier_generators, r.relators
                )
                .unwrap();
                writeln!(out, "H1 = {}", r.invariants).unwrap();
                writeln!(out, "invariant factors [{}]", r.torsion.join(", ")).unwrap();
                writeln!(
                    out,
                    "element images {}  rank {}  expected {}",
                    r.elements, r.image_rank, r.expected_rank
                )
                .unwrap();
                let modp: Vec<String> = r
                    .image_rank_mod_p
                    .iter()
                    .map(|(p, k)| format!("{p}:{k}"))
                    .collect();
                writeln!(
                    out,
                    "rational rank {}  mod p {}",
                    r.image_rational_rank,
                    modp.join(" ")
                )
                .unwrap();
                writeln!(
                    out,
                    "snf consistent {}  order invariant {}",
                    r.snf_consistent, r.order_invariant
                )
                .unwrap();
                writeln!(out, "{}", mark(r.pass)).unwrap();
            }
        }
        Command::Prove {
            goal,
            vertex,
            triangle,
            row,
            lhs,
            rhs,
            group,
        } => {
            let parse_word = |flag: &'static str, w: &Option<String>| -> Result<Word> {
                let w = w.as_deref().ok_or(CliError::Usage {
                    flag,
                    reason: "required for --goal words".into(),
                })?;
                w.parse().map_err(|e| CliError::Usage {
                    flag,
                    reason: format!("{e}"),
                })
            };
            let goal = match goal.as_str() {
                "chain" => Goal::Chain(*vertex),
                "fork" => Goal::Fork(*triangle),
                "gamma" => Goal::Gamma(*row),
                "words" => Goal::Words {
                    lhs: parse_word("--lhs", lhs)?,
                    rhs: parse_word("--rhs", rhs)?,
                    group: Group::parse(group)?,
                },
                g => {
                    return Err(CliError::Usage {
                        flag: "--goal",
                        reason: format!("`{g}` is not one of chain, fork, gamma, words"),
                    })
                }
            };
            let r = prove_report(&complex(m, n)?, &goal, cfg.prover_budget, seed)?;
            pass = r.pass;
            out.push_str(&if cfg.format == "json" {
                json(&r)
            } else {
                prove_text(&r)
            });
        }
        Command::Census | Command::Chern => {
            let p = galcov_core::GridParams::new(m, n)?;
            let chern = matches!(cfg.command, Command::Chern);
            let (census, record) = (census_record(p)?, chern_record(p)?);
            pass = census.discrepancies.is_empty();
            match cfg.format {
                "json" if chern => out.push_str(&json(&Envelope {
                    schema: "galcov-invariants/1",
                    seed,
                    kind: "chern",
                    records: std::slice::from_ref(&record),
                })),
                "json" => out.push_str(&json(&Envelope {
                    schema: "galcov-invariants/1",
                    seed,
                    kind: "census",
                    records: std::slice::from_ref(&census),
                })),
                "csv" => {
                    writeln!(out, "# seed={seed}").unwrap();
                    out.push_str(&csv(
                        &COLUMNS,
                        &invariant_cells(std::slice::from_ref(&census.row)),
                    ));
                }
                _ if chern => {
                    writeln!(out, "c1^2  {}  = {}", record.c1sq_factored, record.c1sq).unwrap();
                    writeln!(out, "c2    {}  = {}", record.c2_factored, record.c2).unwrap();
                    writeln!(out, "tau   {}  = {}", record.tau_factored, record.tau).unwrap();
                    writeln!(out, "sign  {}", record.sign).unwrap();
                }
                _ => {
                    let c = &census.census;
                    let b = &c.breakdown;
                    writeln!(out, "b {}  h {}  d {}  rho {}", c.b, c.h, c.d, c.rho).unwrap();
                    writeln!(
                        out,
                        "pairs {} (two-line {}, six-line {}, double {}, disjoint {})",
                        b.pairs_total,
                        b.pairs_at_two_line_vertices,
                        b.pairs_at_six_line_vertices,
                        b.double_incident_pairs,
                        b.disjoint_pairs
                    )
                    .unwrap();
                    writeln!(
                        out,
                        "nodes {} from disjoint pairs + {} from six-line vertices",
                        b.nodes_from_disjoint_pairs, b.nodes_from_six_line_vertices
                    )
                    .unwrap();
                    writeln!(
                        out,
                        "cusps {} from two-line vertices + {} from six-line vertices",
                        b.cusps_from_two_line_vertices, b.cusps_from_six_line_vertices
                    )
                    .unwrap();
                }
            }
            if text_like {
                for d in &census.discrepancies {
                    writeln!(out, "FAIL {d}").unwrap();
                }
            }
        }
        Command::Irregularity => {
            let r = irregularity_report(galcov_core::GridParams::new(m, n)?);
            if cfg.format == "json" {
                out.push_str(&json(&Envelope {
                    schema: "galcov-irregularity/1",
                    seed,
                    kind: "irregularity",
                    records: &[r],
                }));
            } else {
                out.push_str(&irregularity_text(&r));
            }
        }
        Command::Sweep => {
            let r = sweep_report(m, n, seed)?;
            pass = r.pass;
            match cfg.format {
                "json" => out.push_str(&json(&r)),
                "csv" => {
                    writeln!(out, "# seed={seed}").unwrap();
                    out.push_str(&sweep_table(&r, true));
                }
                _ => {
                    out.push_str(&sweep_table(&r, false));
                    writeln!(out, "{}", mark(r.pass)).unwrap();
                }
            }
        }
    }
    Ok(Rendered { text: out, pass })
}

/// Runs one invocation. Returns the exit status: 0 on success, 1 when a
/// verification fails or a budget runs out, 2 on a usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        log::info!(
            "{} m={} n={} format={}",
            cfg.command.name(),
            cfg.m,
            cfg.n,
            cfg.format
        );
        let r = render(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &r.text)?,
            None => stdout.write_all(r.text.as_bytes())?,
        }
        Ok(r.pass)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
