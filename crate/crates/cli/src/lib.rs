//! Command-line front end: graph files, single evaluations and the `verify`
//! identity battery.

pub mod error;
pub mod graphfile;
pub mod report;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use colourmodels::duality::{self, XQParams};
use colourmodels::fourier::QFunction;
use colourmodels::models::{self, VertexModel};
use colourmodels::oracles::{self, WeightTable};
use colourmodels::signed;
use colourmodels::{Budget, Complex64, GroupSpec};

pub use error::CliError;
pub use graphfile::GraphFile;
pub use report::{Check, Report};

#[derive(Debug, Parser)]
#[command(name = "colourmodels", version, about = "Colouring model partition functions and their identities")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Graph file.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Group as `n`, `n1xn2…` or `f4`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol: f64,
    /// Cap on the number of terms of any exhaustive sum.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub max_terms: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tutte polynomial.
    Tutte,
    /// Number of nowhere-zero Z_q-flows.
    Flow {
        #[arg(long)]
        q: usize,
    },
    /// Number of proper q-colourings.
    Chromatic {
        #[arg(long)]
        q: usize,
    },
    /// Hamming weight enumerator of the Z_q-flows, evaluated at each weight.
    Hwe {
        #[arg(long)]
        q: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Complete weight enumerator of the Z_q-flows for one weight per element.
    Cwe {
        #[arg(long)]
        q: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Vertex model with edge interaction `g(a, b)` (q² values, row-major),
    /// optionally preceded by q vertex weights.
    VertexModel {
        #[arg(long)]
        q: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Edge model obtained from a symmetric real interaction `g(a, b)`
    /// (q² values, row-major), compared with the vertex model.
    EdgeModel {
        #[arg(long)]
        q: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Sine edge model of a k-regular graph with a rotation system.
    SineModel {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
    },
    /// Signed sum over edge colourings with colours in Z_(k+1).
    Kplus1 {
        #[arg(long)]
        k: usize,
    },
    /// Generalized monochrome polynomial with vertex weights `s` and edge weights `t`.
    Xq {
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<String>,
    },
    /// Runs the identity battery and prints one JSON record per check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        #[arg(long, default_value_t = 3)]
        q: usize,
    },
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("cannot parse number '{text}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, ch)| (ch == '+' || ch == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

fn parse_list(items: &[String]) -> Result<Vec<Complex64>, CliError> {
    items.iter().map(|s| parse_complex(s)).collect()
}

/// Rounds away float noise before printing.
pub fn fmt_real(x: f64) -> String {
    let r = (x * 1e10).round() / 1e10;
    format!("{:?}", if r == 0.0 { 0.0 } else { r })
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-12 * z.re.abs().max(1.0) {
        fmt_real(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", fmt_real(z.re), fmt_real(z.im.abs()))
    }
}

fn load_graph(common: &Common) -> Result<GraphFile, CliError> {
    let path = common.graph.as_ref().ok_or_else(|| CliError::Usage("--graph FILE is required".into()))?;
    GraphFile::read(path)
}

fn expect_len(what: &str, values: &[Complex64], n: usize) -> Result<(), CliError> {
    if values.len() != n {
        return Err(CliError::Usage(format!("{what} needs {n} values, got {}", values.len())));
    }
    Ok(())
}

/// Executes one command, writing its output to `out`. Returns whether
/// every check performed passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let common = &cli.common;
    let budget = Budget(common.max_terms);
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    let file = load_graph(common)?;
    let g = &file.graph;
    match &cli.command {
        Command::Tutte => {
            writeln!(out, "{}", oracles::tutte(g, budget)?).map_err(io)?;
        }
        Command::Flow { q } => {
            writeln!(out, "{}", oracles::flow_polynomial(g, *q, budget)?).map_err(io)?;
        }
        Command::Chromatic { q } => {
            writeln!(out, "{}", oracles::chromatic(g, *q, budget)?).map_err(io)?;
        }
        Command::Hwe { q, weights } => {
            let flows = oracles::enumerate_flows(g, g.orientation(), &GroupSpec::cyclic(*q), budget)?;
            let enumerator = oracles::hwe(&flows, g.edge_count());
            for s in parse_list(weights)? {
                writeln!(out, "{}", fmt_complex(enumerator.eval(s))).map_err(io)?;
            }
        }
        Command::Cwe { q, weights } => {
            let group = GroupSpec::cyclic(*q);
            let w = parse_list(weights)?;
            expect_len("--weights", &w, *q)?;
            let flows = oracles::enumerate_flows(g, g.orientation(), &group, budget)?;
            writeln!(out, "{}", fmt_complex(oracles::cwe(&flows, &WeightTable::new(&group, w)?))).map_err(io)?;
        }
        Command::VertexModel { q, weights } => {
            let group = GroupSpec::cyclic(*q);
            let w = parse_list(weights)?;
            let (f, gw) = if w.len() == q * q + q { w.split_at(*q) } else { (&[][..], &w[..]) };
            expect_len("--weights", gw, q * q)?;
            let interaction = QFunction::from_values(&group, 2, gw.to_vec())?;
            let model = if f.is_empty() {
                VertexModel::uniform(interaction)?
            } else {
                VertexModel::new(QFunction::from_values(&group, 1, f.to_vec())?, interaction)?
            };
            let v = models::vertex_partition(g, &model, budget)?;
            writeln!(out, "{}", fmt_complex(v.value)).map_err(io)?;
        }
        Command::EdgeModel { q, weights } => {
            let group = GroupSpec::cyclic(*q);
            let w = parse_list(weights)?;
            expect_len("--weights", &w, q * q)?;
            if w.iter().any(|z| z.im != 0.0) {
                return Err(CliError::Usage("edge-model needs real weights".into()));
            }
            let table: Vec<Vec<f64>> = w.chunks(*q).map(|row| row.iter().map(|z| z.re).collect()).collect();
            let ones = WeightTable::ones(&group);
            let dec = duality::szegedy_decompose(&table)?;
            let edge = duality::szegedy_edge_model(g, &ones, &table, budget)?;
            let vertex = models::vertex_partition(g, &VertexModel::uniform(QFunction::from_values(&group, 2, w)?)?, budget)?;
            writeln!(out, "value {}", fmt_complex(edge.value)).map_err(io)?;
            writeln!(out, "vertex_model {}", fmt_complex(vertex.value)).map_err(io)?;
            writeln!(out, "colours {}", dec.rank()).map_err(io)?;
            writeln!(out, "reconstruction_residual {:.3e}", dec.reconstruction_residual(&table)).map_err(io)?;
        }
        Command::SineModel { q, k } => {
            let v = signed::sine_model(g, *q, *k, budget)?;
            writeln!(out, "value {}", fmt_complex(v.value)).map_err(io)?;
            writeln!(out, "magnitude {}", fmt_real(v.magnitude())).map_err(io)?;
            writeln!(out, "imag_residual {:.3e}", v.imag_residual).map_err(io)?;
            writeln!(out, "integer_residual {:.3e}", v.integer_residual()).map_err(io)?;
        }
        Command::Kplus1 { k } => {
            let v = signed::kplus1_sign_sum(g, *k, budget)?;
            writeln!(out, "value {}", fmt_complex(v.value)).map_err(io)?;
            writeln!(out, "magnitude {}", fmt_real(v.magnitude())).map_err(io)?;
            writeln!(out, "integer_residual {:.3e}", v.integer_residual()).map_err(io)?;
        }
        Command::Xq { q, s, t } => {
            let group = match (&common.group, q) {
                (Some(text), _) => GroupSpec::parse(text)?,
                (None, Some(q)) => GroupSpec::cyclic(*q),
                (None, None) => return Err(CliError::Usage("xq needs --group or --q".into())),
            };
            let (s, t) = (parse_list(s)?, parse_list(t)?);
            expect_len("--s", &s, group.order())?;
            expect_len("--t", &t, group.order())?;
            let p = XQParams::new(WeightTable::new(&group, s)?, WeightTable::new(&group, t)?)?;
            let direct = duality::xq_evaluate(g, g.orientation(), &p, budget)?.value;
            let dual = duality::xq_dual(g, g.orientation(), &p, budget)?.value;
            writeln!(out, "value {}", fmt_complex(direct)).map_err(io)?;
            writeln!(out, "boundary_expansion {}", fmt_complex(dual)).map_err(io)?;
            let mut pass = colourmodels::numeric::relative_residual(direct, dual) <= common.tol;
            writeln!(out, "residual {:.3e}", colourmodels::numeric::relative_residual(direct, dual)).map_err(io)?;
            if p.is_symmetric(1e-12) {
                let e = duality::xq_edge_model(g, &p, budget)?;
                let r = colourmodels::numeric::relative_residual(direct, e.value.value);
                writeln!(out, "edge_model {}", fmt_complex(e.value.value)).map_err(io)?;
                writeln!(out, "edge_model_residual {r:.3e}").map_err(io)?;
                pass &= r <= common.tol;
            }
            return Ok(pass);
        }
        Command::Verify { suite, q } => {
            let cfg = verify::Config { q: *q, tol: common.tol, budget, seed: common.seed };
            let report = verify::run(*suite, &file, cfg);
            report.write_jsonl(out).map_err(io)?;
            eprintln!("{}", report.summary());
            return Ok(report.passed());
        }
    }
    Ok(true)
}
