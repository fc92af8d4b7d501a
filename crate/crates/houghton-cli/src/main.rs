//! `houghton`: element files, monoid queries, homology reports and
//! verification suites.
//!
//! Exit codes: 0 success, 1 invalid element or failed verification, 2 usage
//! or parse error.

mod render;
mod suites;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use houghton::elements::{ElementError, GenMap, RawGenMap};
use houghton::lattice::{CandidateMap, Point};
use houghton::poset::{decompose, grade, leq, max_chain, orbit_invariant, orbit_witness, predecessor, PosetError};
use houghton::topology::{
    clique_complex, finite_sigma_alpha, nerve, order_complex, reduced_homology, sigma_nk, ColoredGraph, FinitePoset,
    HomologyProfile, SimplicialComplex,
};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "houghton", version, about = "Generalized Houghton groups, the monoid M and exact homology")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an element file and report its classification.
    Validate { file: PathBuf },
    /// Compose two elements, applying FIRST and then SECOND.
    Compose { first: PathBuf, second: PathBuf },
    /// Invert a bijective element.
    Invert { file: PathBuf },
    /// Apply an element to a point given as `((x,y),i)`.
    Apply { file: PathBuf, point: String },
    /// Grade of an element of M, with a maximal descending chain.
    Grade { file: PathBuf },
    /// Decompose the complement of the image into rays and finite points.
    Decompose { file: PathBuf },
    /// A predecessor `β` with `t_i·β = α`.
    Predecessor {
        file: PathBuf,
        /// Quadrant `i` of the generator `t_i`.
        #[arg(long, default_value_t = 1)]
        quadrant: usize,
        /// Choose a random admissible predecessor with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether LOWER ≤ UPPER, with the translation witnessing it.
    Leq { lower: PathBuf, upper: PathBuf },
    /// Orbit invariant of an ascending chain; with `--against`, a group
    /// element carrying the chain onto the other one.
    Orbit {
        chain: Vec<PathBuf>,
        #[arg(long, num_args = 1..)]
        against: Vec<PathBuf>,
    },
    /// Reduced integer homology of a generated or stored complex.
    Homology(ComplexArgs),
    /// Print a generated complex as a complex file.
    Complex(ComplexArgs),
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct ComplexArgs {
    #[arg(value_enum)]
    generator: Generator,
    /// Input file (required for `clique`, `order-complex`, `nerve` and `file`).
    file: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generator {
    /// The chessboard complex Σ_{n,k}.
    SigmaNk,
    /// The colored clique complex of a colored-graph file.
    Clique,
    /// The order complex of a poset file.
    OrderComplex,
    /// The nerve of a cover file, or of the down-set cover of a poset file.
    Nerve,
    /// A finite model of Σ_α from an element and candidates, or of the
    /// complement of t_1^k in n quadrants.
    SigmaAlphaModel,
    /// A stored complex file.
    File,
}

/// Errors reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// What a command produced, and whether it counts as a failure.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let verbose_time = matches!(cli.command, Command::Verify { .. } | Command::Homology(_));
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", out.text),
        }
        Ok(out.failed)
    });
    if verbose_time {
        eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("cannot parse {}: {e}", path.display())))
}

/// Structural problems in the tables are parse errors; everything else
/// (collisions, images off the lattice) makes the element invalid.
fn element_error(path: &Path, e: ElementError) -> anyhow::Error {
    match e {
        ElementError::Malformed(_) => usage(format!("{}: {e}", path.display())),
        e => anyhow!(e).context(format!("invalid element {}", path.display())),
    }
}

fn load(path: &Path) -> Result<GenMap> {
    let raw: RawGenMap = parse_json(path)?;
    GenMap::try_from_raw(&raw).map_err(|e| element_error(path, e))
}

fn structured<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: &Cli) -> Result<Output> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Validate { file } => {
            let g = load(file)?;
            let class = g.classify();
            let phi = g.phi();
            if json {
                #[derive(Serialize)]
                struct Report<'a> {
                    class: houghton::elements::MapClass,
                    summary: String,
                    phi: &'a [i64],
                }
                return Ok(Output::ok(structured(&Report { class, summary: render::class_summary(&g), phi: &phi })?));
            }
            Ok(Output::ok(render::validate_table(&g)))
        }
        Command::Compose { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let c = a.compose(&b).map_err(|e| anyhow!(e))?;
            Ok(Output::ok(render::element(&c.to_raw())))
        }
        Command::Invert { file } => {
            let g = load(file)?;
            let inv = g.invert().map_err(|e| anyhow!(e).context(format!("cannot invert {}", file.display())))?;
            Ok(Output::ok(render::element(&inv.to_raw())))
        }
        Command::Apply { file, point } => {
            let g = load(file)?;
            let p: Point = point.parse().map_err(|e| usage(format!("{e}")))?;
            if !p.is_valid(g.n()) {
                return Err(usage(format!("{p} is not a point of a {}-quadrant lattice", g.n())));
            }
            let image = g.apply(p);
            if json {
                return Ok(Output::ok(structured(&serde_json::json!({ "point": p, "image": image }))?));
            }
            Ok(Output::ok(format!("{image}\n")))
        }
        Command::Grade { file } => {
            let g = load(file)?;
            let gr = grade(&g)?;
            let region = decompose(&g)?;
            let chain = max_chain(&g, 0)?;
            if json {
                let report = serde_json::json!({
                    "grade": gr,
                    "vrays": region.vrays.len(),
                    "hrays": region.hrays.len(),
                    "finite_points": region.finite_part.len(),
                    "chain": chain,
                });
                return Ok(Output::ok(structured(&report)?));
            }
            Ok(Output::ok(render::grade_table(gr, &region, &chain)))
        }
        Command::Decompose { file } => {
            let region = decompose(&load(file)?)?;
            if json {
                return Ok(Output::ok(structured(&region)?));
            }
            Ok(Output::ok(render::region_table(&region)))
        }
        Command::Predecessor { file, quadrant, seed } => {
            let g = load(file)?;
            let b = predecessor(&g, *quadrant, *seed)?;
            Ok(Output::ok(render::element(&b.to_raw())))
        }
        Command::Leq { lower, upper } => {
            let (a, b) = (load(lower)?, load(upper)?);
            let witness = leq(&a, &b);
            if json {
                return Ok(Output::ok(structured(
                    &serde_json::json!({ "leq": witness.is_some(), "witness": witness }),
                )?));
            }
            Ok(Output::ok(match witness {
                Some(t) => format!("yes: t = {}\n", render::translation(&t.exponents)),
                None => "no\n".to_string(),
            }))
        }
        Command::Orbit { chain, against } => orbit(chain, against, json),
        Command::Homology(args) => homology(args, json),
        Command::Complex(args) => {
            let complex = build_complex(args)?;
            Ok(Output::ok(structured(&complex.main)?))
        }
        Command::Verify { suite, trials, seed } => {
            let report = suites::run(suite, *trials, *seed).ok_or_else(|| {
                usage(format!("unknown suite {suite:?}; known suites: {}", suites::names().join(", ")))
            })?;
            let failed = !report.failures.is_empty();
            let text = if json { structured(&report)? } else { render::suite_table(&report) };
            Ok(Output { text, failed })
        }
    }
}

fn orbit(chain: &[PathBuf], against: &[PathBuf], json: bool) -> Result<Output> {
    if chain.is_empty() {
        return Err(usage("orbit needs at least one element file"));
    }
    let a = chain.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    let inv = orbit_invariant(&a)?;
    if against.is_empty() {
        if json {
            return Ok(Output::ok(structured(&inv)?));
        }
        return Ok(Output::ok(render::orbit_table(&inv)));
    }
    let b = against.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    match orbit_witness(&a, &b) {
        Ok(g) => Ok(Output::ok(render::element(&g.to_raw()))),
        Err(PosetError::InvariantMismatch) => {
            let other = orbit_invariant(&b)?;
            let text = if json {
                structured(&serde_json::json!({ "same_orbit": false, "invariant": inv, "other": other }))?
            } else {
                format!("different orbits\n{}{}", render::orbit_table(&inv), render::orbit_table(&other))
            };
            Ok(Output { text, failed: true })
        }
        Err(e) => Err(e.into()),
    }
}

/// A generated complex, plus the complex it should match for generators
/// that come with one (the union of a nerve's cover).
struct Built {
    main: SimplicialComplex,
    union: Option<SimplicialComplex>,
}

#[derive(Deserialize)]
struct CoverFile {
    target: SimplicialComplex,
    cover: Vec<SimplicialComplex>,
}

#[derive(Deserialize)]
struct ModelFile {
    element: RawGenMap,
    candidates: Vec<CandidateMap>,
}

fn build_complex(args: &ComplexArgs) -> Result<Built> {
    let file = || args.file.as_deref().ok_or_else(|| usage("this generator needs an input file"));
    let plain = |main| Ok(Built { main, union: None });
    match args.generator {
        Generator::SigmaNk => {
            let (n, k) = args.n.zip(args.k).ok_or_else(|| usage("sigma-nk needs --n and --k"))?;
            plain(sigma_nk(n, k))
        }
        Generator::Clique => plain(clique_complex(&parse_json::<ColoredGraph>(file()?)?)),
        Generator::OrderComplex => plain(order_complex(&parse_json::<FinitePoset>(file()?)?)?),
        Generator::Nerve => {
            let path = file()?;
            let text = read(path)?;
            let (target, cover) = match serde_json::from_str::<CoverFile>(&text) {
                Ok(c) => (c.target, c.cover),
                Err(_) => {
                    let p: FinitePoset = serde_json::from_str(&text)
                        .map_err(|e| usage(format!("{} is neither a cover nor a poset: {e}", path.display())))?;
                    let cover = p
                        .maximal_down_set_cover()
                        .ok_or_else(|| anyhow!("some maximal elements have a common lower bound but no meet"))?;
                    (order_complex(&p)?, cover)
                }
            };
            Ok(Built { main: nerve(&target, &cover)?, union: Some(target) })
        }
        Generator::SigmaAlphaModel => match &args.file {
            Some(path) => {
                let model: ModelFile = parse_json(path)?;
                let alpha = GenMap::try_from_raw(&model.element).map_err(|e| element_error(path, e))?;
                plain(finite_sigma_alpha(&decompose(&alpha)?, &model.candidates)?)
            }
            None => {
                let (n, k) =
                    args.n.zip(args.k).ok_or_else(|| usage("sigma-alpha-model needs a file or --n and --k"))?;
                let mut exps = vec![0; n];
                exps[0] = k as i64;
                let region = decompose(&GenMap::translation(&exps))?;
                let cands: Vec<CandidateMap> =
                    (1..=n).flat_map(|i| (0..k).map(move |j| CandidateMap::plain(i, j, j))).collect();
                plain(finite_sigma_alpha(&region, &cands)?)
            }
        },
        Generator::File => plain(parse_json::<SimplicialComplex>(file()?)?),
    }
}

fn homology(args: &ComplexArgs, json: bool) -> Result<Output> {
    let built = build_complex(args)?;
    let h = reduced_homology(&built.main)?;
    let union: Option<HomologyProfile> = built.union.as_ref().map(reduced_homology).transpose()?;
    if json {
        let report = serde_json::json!({
            "homology": h,
            "euler_characteristic": h.euler_characteristic(),
            "union": union,
            "matches_union": union.as_ref().map(|u| *u == h),
        });
        return Ok(Output::ok(structured(&report)?));
    }
    let mut text = render::homology_table(&h);
    if let Some(u) = &union {
        text.push_str("\nunion of the cover:\n");
        text.push_str(&render::homology_table(u));
        text.push_str(if *u == h { "nerve and union agree\n" } else { "nerve and union DIFFER\n" });
    }
    Ok(Output::ok(text))
}
