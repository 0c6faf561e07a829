//! Job parsing and execution for the `movingsyz` binary.
//!
//! A job is one subcommand with its flags. [`run`] turns it into a
//! [`Document`]; the exit code is read off the document status.

pub mod doc;

use std::path::PathBuf;

use clap::parser::ValueSource;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use movingsyz::basepoint::{degree_formula, hilbert_burch_check, strong_mu_basis, strong_mu_numerology, BasepointData};
use movingsyz::error::ErrorClass;
use movingsyz::forms::{parse_form, parse_form_infer};
use movingsyz::implicit::{dandrea_ratio, implicitize_curve, implicitize_surface, Diagnostics, RowKind, SurfaceKind};
use movingsyz::random::DEFAULT_SEED;
use movingsyz::syzygy::{is_saturated_up_to, koszul_witness, mu_basis, Saturation};
use movingsyz::{Degree, Error, Form, ImplicitResult, Ring, SyzygyVector};

pub use doc::{Document, Status, Val};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "movingsyz",
    version,
    about = "Exact implicitization with moving lines, planes and quadrics"
)]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Run every non-empty line of FILE as a job (`#` starts a comment).
    #[arg(long, value_name = "FILE")]
    pub jobs: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for the probabilistic checks and random coordinate changes.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    /// Comma-separated homogeneous generators.
    #[arg(long, value_name = "POLYS")]
    pub gens: String,

    /// Expected total degree of every generator.
    #[arg(long, value_name = "N", conflicts_with = "bidegree")]
    pub degree: Option<u32>,

    /// Expected bidegree `M,N` of every generator.
    #[arg(long, value_name = "M,N")]
    pub bidegree: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub gens: GenArgs,

    /// Acknowledge that the parametrization is generically one-to-one.
    #[arg(long)]
    pub assert_generically_one_to_one: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Implicit equation of a plane curve `(a, b, c)` in `s, t`.
    Curve(GenArgs),
    /// Tensor-product surface in `s, u; t, v` without basepoints.
    SurfaceTp(SurfaceArgs),
    /// Triangular surface in `s, t, u` without basepoints.
    SurfaceTri(SurfaceArgs),
    /// Tensor-product surface with one simple basepoint.
    #[command(name = "surface-tp-1bp")]
    SurfaceTp1bp(SurfaceArgs),
    /// μ-basis of a curve parametrization.
    MuBasis(GenArgs),
    /// Koszul test for a syzygy of three ternary forms.
    Koszul {
        #[command(flatten)]
        gens: GenArgs,
        /// Comma-separated components `A, B, C`.
        #[arg(long, value_name = "POLYS")]
        syzygy: String,
    },
    /// Compares the ideal with its saturation degree by degree.
    SaturationCheck {
        #[command(flatten)]
        gens: GenArgs,
        /// Highest degree compared; defaults to three times the top generator degree.
        #[arg(long, value_name = "D")]
        dmax: Option<u32>,
    },
    /// Searches for a strong μ-basis of four ternary forms.
    StrongMu(GenArgs),
    /// Surface degree and basepoint count from strong μ-basis degrees.
    Numerology {
        #[arg(long, value_name = "A,B,C")]
        mu: String,
    },
    /// Implicit degree from basepoint multiplicities.
    DegreeFormula {
        #[arg(long, value_name = "N")]
        degree: u64,
        #[arg(long, value_name = "LIST", default_value = "")]
        multiplicities: String,
        #[arg(long, value_name = "D", default_value_t = 1)]
        deg_phi: u64,
    },
    /// Ratio of the MQ' and MP determinants after a coordinate change.
    Dandrea(GenArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Curve(_) => "curve",
            Command::SurfaceTp(_) => "surface-tp",
            Command::SurfaceTri(_) => "surface-tri",
            Command::SurfaceTp1bp(_) => "surface-tp-1bp",
            Command::MuBasis(_) => "mu-basis",
            Command::Koszul { .. } => "koszul",
            Command::SaturationCheck { .. } => "saturation-check",
            Command::StrongMu(_) => "strong-mu",
            Command::Numerology { .. } => "numerology",
            Command::DegreeFormula { .. } => "degree-formula",
            Command::Dandrea(_) => "dandrea",
        }
    }
}

/// Runs one job. Library errors become error documents.
pub fn run(cmd: &Command, seed: u64) -> Document {
    let mut doc = Document::new(cmd.name());
    if let Err(e) = execute(cmd, seed, &mut doc) {
        doc.entries.clear();
        doc.status = match e.class() {
            ErrorClass::Parse => Status::ParseError,
            ErrorClass::Precondition => Status::PreconditionFailed,
            ErrorClass::Hypothesis => Status::HypothesisFailed,
            ErrorClass::Internal => Status::InternalError,
        };
        doc.put("error", e.to_string());
    }
    doc
}

/// A document for input that never reached the library.
pub fn usage_error(command: &str, msg: &str) -> Document {
    let mut doc = Document::new(command);
    doc.status = Status::ParseError;
    doc.put("error", msg.trim().to_string());
    doc
}

/// Runs the jobs listed in `text` concurrently; documents come back in line
/// order.
pub fn run_batch(text: &str, seed: u64) -> Vec<Document> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    lines
        .par_iter()
        .map(|&(lineno, line)| run_line(lineno, line, seed))
        .collect()
}

fn run_line(lineno: usize, line: &str, seed: u64) -> Document {
    let Some(words) = shlex::split(line) else {
        return usage_error("batch", &format!("line {lineno}: unbalanced quotes"));
    };
    let argv = std::iter::once("movingsyz".to_string()).chain(words);
    let parsed = Cli::command()
        .try_get_matches_from(argv)
        .and_then(|m| Cli::from_arg_matches(&m).map(|cli| (cli, m)));
    match parsed {
        Ok((cli, matches)) => {
            // a seed on the line wins over the batch seed
            let explicit = matches.value_source("seed") == Some(ValueSource::CommandLine);
            match &cli.command {
                Some(cmd) => run(cmd, if explicit { cli.seed } else { seed }),
                None => usage_error("batch", &format!("line {lineno}: no subcommand")),
            }
        }
        Err(e) => usage_error("batch", &format!("line {lineno}: {}", e.render())),
    }
}

fn ring_degree(g: &GenArgs, ring: Ring) -> Result<Option<Degree>, Error> {
    match (ring, g.degree, &g.bidegree) {
        (Ring::Bihomogeneous, Some(_), _) => Err(Error::RingMismatch(
            "bihomogeneous generators take --bidegree, not --degree".into(),
        )),
        (Ring::Bihomogeneous, None, Some(b)) => {
            let parts = parse_list::<u32>(b, "--bidegree")?;
            match parts[..] {
                [m, n] => Ok(Some(Degree::Bi(m, n))),
                _ => Err(parse_error(&format!("--bidegree needs two entries, got `{b}`"))),
            }
        }
        (_, _, Some(_)) if ring != Ring::Bihomogeneous => Err(Error::RingMismatch(format!(
            "{ring} generators take --degree, not --bidegree"
        ))),
        (_, d, _) => Ok(d.map(Degree::Total)),
    }
}

fn parse_error(msg: &str) -> Error {
    Error::Parse {
        pos: 0,
        msg: msg.to_string(),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, flag: &str) -> Result<Vec<T>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| parse_error(&format!("{flag}: cannot read `{s}`")))
        })
        .collect()
}

fn split_polys(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).collect()
}

/// Parses the generators; with no explicit degree, the first nonzero
/// generator fixes it.
fn parse_gens(g: &GenArgs, ring: Ring) -> Result<Vec<Form>, Error> {
    parse_forms(&g.gens, ring, ring_degree(g, ring)?)
}

fn parse_forms(text: &str, ring: Ring, deg: Option<Degree>) -> Result<Vec<Form>, Error> {
    let parts = split_polys(text);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(parse_error("empty polynomial in a comma-separated list"));
    }
    let deg = match deg {
        Some(d) => d,
        None => {
            let mut found = None;
            for p in &parts {
                let f = parse_form_infer(p, ring)?;
                if !f.is_zero() {
                    found = Some(f.degree());
                    break;
                }
            }
            found.unwrap_or(ring.zero_degree())
        }
    };
    parts.iter().map(|p| parse_form(p, ring, deg)).collect()
}

/// Like [`parse_forms`], but every generator keeps its own degree.
fn parse_mixed(g: &GenArgs, ring: Ring) -> Result<Vec<Form>, Error> {
    if let Some(d) = ring_degree(g, ring)? {
        return parse_forms(&g.gens, ring, Some(d));
    }
    let parts = split_polys(&g.gens);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(parse_error("empty polynomial in a comma-separated list"));
    }
    parts.iter().map(|p| parse_form_infer(p, ring)).collect()
}

fn arity(gens: &[Form], k: usize) -> Result<(), Error> {
    if gens.len() != k {
        return Err(Error::Arity {
            expected: k,
            found: gens.len(),
        });
    }
    Ok(())
}

fn render_syzygy(s: &SyzygyVector) -> String {
    let parts: Vec<String> = s.components().iter().map(Form::render).collect();
    format!("({})", parts.join(", "))
}

fn put_diagnostics(doc: &mut Document, d: &Diagnostics) {
    if let Some(k) = d.mp_kernel_dim {
        doc.put("mp_kernel_dim", k);
    }
    if let Some(k) = d.mq_kernel_dim {
        doc.put("mq_kernel_dim", k);
    }
    let coprime = match d.coprime {
        Some(true) => "verified",
        Some(false) => "unverified",
        None => "not-checked",
    };
    doc.put("coprime", coprime);
    doc.put_rows("note", d.notes.clone());
}

fn put_implicit(doc: &mut Document, res: &ImplicitResult) {
    let m = &res.matrix;
    doc.put("F", res.f.render())
        .put("d", res.d)
        .put("lambda", res.lambda.to_string())
        .put("det_degree", res.det_poly.degree().unwrap_or(0))
        .put("matrix_size", format!("{0}x{0}", m.size()))
        .put(
            "row_kinds",
            m.row_kinds()
                .iter()
                .map(|k| match k {
                    RowKind::Linear => "linear",
                    RowKind::Quadric => "quadric",
                })
                .collect::<Vec<_>>(),
        );
    let rows: Vec<Vec<String>> = m
        .entries()
        .iter()
        .map(|r| r.iter().map(|p| p.render()).collect())
        .collect();
    doc.put_rows("matrix_row", rows);
    put_diagnostics(doc, &res.diagnostics);
}

fn execute(cmd: &Command, seed: u64, doc: &mut Document) -> Result<(), Error> {
    match cmd {
        Command::Curve(g) => {
            let gens = parse_gens(g, Ring::Binary)?;
            arity(&gens, 3)?;
            let res = implicitize_curve(&gens[0], &gens[1], &gens[2])?;
            put_implicit(doc, &res);
        }
        Command::SurfaceTp(a) | Command::SurfaceTri(a) | Command::SurfaceTp1bp(a) => {
            let (kind, ring) = match cmd {
                Command::SurfaceTp(_) => (SurfaceKind::TensorProduct, Ring::Bihomogeneous),
                Command::SurfaceTri(_) => (SurfaceKind::Triangular, Ring::Ternary),
                _ => (SurfaceKind::TensorProductOneBasepoint, Ring::Bihomogeneous),
            };
            let gens = parse_gens(&a.gens, ring)?;
            arity(&gens, 4)?;
            let res = implicitize_surface(kind, &gens, seed)?;
            doc.put(
                "one_to_one",
                if a.assert_generically_one_to_one {
                    "asserted"
                } else {
                    "unasserted"
                },
            );
            put_implicit(doc, &res);
        }
        Command::MuBasis(g) => {
            let gens = parse_gens(g, Ring::Binary)?;
            arity(&gens, 3)?;
            let mb = mu_basis(&gens[0], &gens[1], &gens[2])?;
            doc.put("n", mb.n())
                .put("mu", mb.mu)
                .put("p", render_syzygy(&mb.p))
                .put("q", render_syzygy(&mb.q));
        }
        Command::Koszul { gens: g, syzygy } => {
            let gens = parse_gens(g, Ring::Ternary)?;
            arity(&gens, 3)?;
            let comps = parse_forms(syzygy, Ring::Ternary, None)?;
            arity(&comps, 3)?;
            let syz = SyzygyVector::new(comps, gens.clone().into())?;
            let witness = koszul_witness(&gens, &syz)?;
            doc.put("syzygy_degree", syz.degree().total())
                .put("koszul", witness.is_some());
            if let Some(w) = &witness {
                doc.put("witness", w.h.iter().map(Form::render).collect::<Vec<_>>());
            }
            match Saturation::new(&gens) {
                Ok(sat) => {
                    let mut all = true;
                    for c in syz.components() {
                        all &= sat.contains(c)?;
                    }
                    doc.put("vanishes_at_basepoints", all);
                }
                Err(e @ Error::SaturationCap { .. }) => {
                    doc.put("vanishes_at_basepoints", "undetermined")
                        .put_rows("note", vec![e.to_string()]);
                }
                Err(e) => return Err(e),
            }
        }
        Command::SaturationCheck { gens: g, dmax } => {
            let gens = parse_mixed(g, Ring::Ternary)?;
            let top = gens.iter().map(|f| f.degree().total()).max().unwrap_or(0);
            let dmax = dmax.unwrap_or(3 * top);
            let sat = Saturation::new(&gens)?;
            doc.put("saturated", is_saturated_up_to(&gens, dmax)?)
                .put("dmax", dmax)
                .put("basepoint_length", sat.length())
                .put("stable_degree", sat.stable_degree());
        }
        Command::StrongMu(g) => {
            let gens = parse_gens(g, Ring::Ternary)?;
            arity(&gens, 4)?;
            let n = gens[0].degree().total();
            let found = strong_mu_basis(&gens)?;
            doc.put("found", found.is_some());
            if let Some(smb) = &found {
                let num = strong_mu_numerology(smb.mu)?;
                doc.put("mu", smb.mu.to_vec())
                    .put("basis", smb.p.iter().map(render_syzygy).collect::<Vec<_>>())
                    .put("hilbert_burch", hilbert_burch_check(smb, &gens)?)
                    .put("surface_degree", num.surface_degree)
                    .put("basepoints", num.basepoint_sum);
            }
            doc.put("saturated", is_saturated_up_to(&gens, 3 * n)?);
        }
        Command::Numerology { mu } => {
            let mu: [u32; 3] = parse_list::<u32>(mu, "--mu")?
                .try_into()
                .map_err(|_| parse_error("--mu needs three entries"))?;
            let num = strong_mu_numerology(mu)?;
            doc.put("n", num.n)
                .put("degree", num.surface_degree)
                .put("basepoints", num.basepoint_sum)
                .put("bound_holds", num.bound_holds);
        }
        Command::DegreeFormula {
            degree,
            multiplicities,
            deg_phi,
        } => {
            let bp = BasepointData {
                multiplicities: parse_list(multiplicities, "--multiplicities")?,
                n: *degree,
                deg_phi: *deg_phi,
            };
            doc.put("degree", degree_formula(&bp)?);
        }
        Command::Dandrea(g) => {
            let gens = parse_gens(g, Ring::Bihomogeneous)?;
            arity(&gens, 4)?;
            let rep = dandrea_ratio(&gens, seed)?;
            doc.put("det_mp", rep.det_mp.to_string())
                .put("det_mq_prime", rep.det_mq_prime.to_string())
                .put("ratio", rep.ratio.to_string())
                .put("attempts", rep.attempts);
            let rows: Vec<Vec<String>> = rep
                .change
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            doc.put_rows("change_row", rows);
        }
    }
    Ok(())
}

/// Renders documents in the requested format.
pub fn render(docs: &[Document], format: Format, batch: bool) -> String {
    match format {
        Format::Text => docs.iter().map(Document::to_text).collect::<Vec<_>>().join("\n"),
        Format::Structured => {
            let v = if batch {
                serde_json::Value::Array(docs.iter().map(Document::to_json).collect())
            } else {
                docs[0].to_json()
            };
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    }
}

/// Batch exit code: the first failing job's code, else 0.
pub fn batch_exit_code(docs: &[Document]) -> i32 {
    docs.iter().map(|d| d.status.exit_code()).find(|&c| c != 0).unwrap_or(0)
}
