mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rigidquad::bijection::{h_tree_to_quad, quad_to_h_tree};
use rigidquad::enumerate::{
    count_pre_q_trees, count_quads_recursive, enumerate_bcd, sample_delta_type, sample_rigid_quad, seeded_rng,
    EnumerationQuery, Family, SampleOptions, SpineKind, DEFAULT_MAX_ATTEMPTS,
};
use rigidquad::render::immerse;
use rigidquad::series::{b_series, c_series, delta_series, f_series, h_series, q_hat_series, q_series, r_series, z_series};
use rigidquad::tree::{psi, psi_hat, psi_hat_inv, psi_inv};
use rigidquad::{PartitionTree, Rational, RigidQuadMap, Series, Series3, TreeClass};

#[derive(Parser)]
#[command(name = "rigidquad", version, about = "Enumerate, sample and convert rigid quadrangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients of a generating function.
    Series {
        which: SeriesName,
        #[arg(long)]
        order: usize,
        /// Base-length, for the base-dependent series.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Count a family by exhaustive enumeration.
    Count {
        #[arg(long)]
        family: CountFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        base: i64,
        #[arg(long)]
        cobase: Option<usize>,
        /// Also compute an independent count and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the built-in consistency suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Draw a random map.
    Sample {
        #[command(subcommand)]
        kind: SampleKind,
    },
    /// Convert between trees and maps.
    Convert {
        how: Conversion,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Target base for `h-to-q` with a non-positive H-tree base.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<i64>,
    },
    /// Draw a map as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        /// Also write the grid immersion as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    R,
    F,
    Z,
    Qhat,
    Q,
    H,
    Delta,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFamily {
    Preq,
    Q,
    Wbq,
    H,
    Quad,
    B,
    C,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    Series,
    Bijections,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conversion {
    QuadToTree,
    TreeToQuad,
    HToQ,
    QToH,
}

#[derive(Clone, clap::Args)]
struct SampleArgs {
    #[arg(long, allow_hyphen_values = true)]
    base: i64,
    #[arg(long)]
    n_max: usize,
    /// Resample until the output has this size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SampleKind {
    /// A rigid quadrangulation with the given base.
    Quad {
        #[command(flatten)]
        args: SampleArgs,
        /// For negative bases, insist on exactly this base.
        #[arg(long)]
        exact_base: bool,
    },
    /// A Δ-type quadrangulation; `--n` counts convex corners off the base and co-base.
    Delta {
        #[command(flatten)]
        args: SampleArgs,
        #[arg(long)]
        cobase: usize,
    },
}

/// Bad flag combinations found after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Runs a command; `Ok(false)` means a check failed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Series { which, order, base, json } => series(which, order, base, json),
        Command::Count { family, n, base, cobase, oracle } => count(family, n, base, cobase, oracle),
        Command::Verify { suite, max_n } => Ok(verify::run(suite, max_n)),
        Command::Sample { kind } => sample(kind),
        Command::Convert { how, input, out, base } => convert(how, &input, &out, base),
        Command::Render { input, svg, json } => {
            let m = read_map(&input)?;
            let g = immerse(&m)?;
            write(&svg, &g.to_svg())?;
            if let Some(path) = json {
                write(&path, &(g.to_json() + "\n"))?;
            }
            Ok(true)
        }
    }
}

fn series(which: SeriesName, order: usize, base: Option<i64>, json: bool) -> Result<bool> {
    let need_base = || match base {
        Some(p) => Ok(p),
        None => usage("this series needs --base"),
    };
    let uni: Option<(&str, Series)> = match which {
        SeriesName::R => Some(("R", r_series(order))),
        SeriesName::Z => Some(("Z", z_series(order))),
        SeriesName::F => Some(("F", f_series(need_base()?, order))),
        SeriesName::Qhat => Some(("Qhat", q_hat_series(need_base()?, order))),
        SeriesName::Q => Some(("Q", q_series(need_base()?, order))),
        SeriesName::H => Some(("H", h_series(need_base()?, order))),
        _ => None,
    };
    if let Some((name, s)) = uni {
        if json {
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            println!("{}", serde_json::json!({ "series": name, "base": base, "order": order, "coefficients": coeffs }));
        } else {
            for (n, c) in s.coeffs().iter().enumerate() {
                println!("t^{n}\t{c}");
            }
        }
        return Ok(true);
    }
    let (name, s): (&str, Series3) = match which {
        SeriesName::Delta => ("Delta", delta_series(order)),
        SeriesName::B => ("B", b_series(order)),
        _ => ("C", c_series(order)),
    };
    let mut terms = Vec::new();
    for n in 0..=order {
        for (&(i, j), c) in s.t_coeff(n).terms() {
            terms.push((n, i, j, c.clone()));
        }
    }
    if json {
        let terms: Vec<_> = terms
            .iter()
            .map(|(n, i, j, c)| serde_json::json!({ "t": n, "x": i, "y": j, "coefficient": c.to_string() }))
            .collect();
        println!("{}", serde_json::json!({ "series": name, "order": order, "terms": terms }));
    } else {
        for (n, i, j, c) in terms {
            println!("t^{n} x^{i} y^{j}\t{c}");
        }
    }
    Ok(true)
}

fn count(family: CountFamily, n: usize, p: i64, cobase: Option<usize>, oracle: bool) -> Result<bool> {
    if n == 0 {
        return usage("--n must be at least 1");
    }
    let coeff = |s: Series| s.coeff(n).clone();
    let (got, checks): (Rational, Vec<(&str, Rational)>) = match family {
        CountFamily::Preq | CountFamily::Q | CountFamily::Wbq | CountFamily::H | CountFamily::Quad => {
            let fam = match family {
                CountFamily::Preq => Family::PreQ,
                CountFamily::Q => Family::Q,
                CountFamily::Wbq => Family::WellBasedQ,
                CountFamily::H => Family::H,
                _ => Family::QuadViaTree,
            };
            let got = EnumerationQuery { family: fam, n, p }.count()?;
            let series = match family {
                CountFamily::Preq => Rational::from_integer(count_pre_q_trees(n, p).into()),
                CountFamily::Q => coeff(q_series(p, n)),
                _ => coeff(h_series(p, n)),
            };
            let mut checks = vec![("oracle", series)];
            if matches!(family, CountFamily::Quad | CountFamily::H) {
                checks.push(("recursive", Rational::from_integer(count_quads_recursive(p, n).into())));
            }
            (Rational::from_integer(got.into()), checks)
        }
        CountFamily::B | CountFamily::C | CountFamily::Delta => {
            let Some(q) = cobase else { return usage("this family needs --cobase") };
            if p < 1 || q < 1 {
                return usage("--base and --cobase must be positive for this family");
            }
            let (kind, s) = match family {
                CountFamily::B => (SpineKind::B, b_series(n)),
                CountFamily::C => (SpineKind::C, c_series(n)),
                _ => (SpineKind::Delta, delta_series(n)),
            };
            let maps = enumerate_bcd(kind, p, q, n)?;
            let got = maps.iter().fold(Rational::from_integer(0.into()), |acc, m| {
                acc + if kind == SpineKind::Delta {
                    Rational::new(1.into(), m.degeneracy.into())
                } else {
                    Rational::from_integer(1.into())
                }
            });
            (got, vec![("oracle", s.coeff(n, q as u32, p as u32))])
        }
    };
    println!("count {got}");
    if !oracle {
        return Ok(true);
    }
    for (name, v) in &checks {
        println!("{name} {v}");
    }
    let ok = checks.iter().all(|(_, v)| *v == got);
    println!("{}", if ok { "OK" } else { "MISMATCH" });
    Ok(ok)
}

fn sample(kind: SampleKind) -> Result<bool> {
    let (args, map, report) = match kind {
        SampleKind::Quad { args, exact_base } => {
            let opts = options(&args)?.exact_base(exact_base);
            let s = sample_rigid_quad(args.base, opts, &mut seeded_rng(args.seed))?;
            let report = format!("n {}\nbase {}\nattempts {}", s.n, s.base, s.attempts);
            (args, s.map, report)
        }
        SampleKind::Delta { args, cobase } => {
            let opts = options(&args)?;
            let s = sample_delta_type(args.base, cobase, opts, &mut seeded_rng(args.seed))?;
            let report = format!(
                "n {}\nbase {}\ncobase {cobase}\ndegeneracy {}\nattempts {}",
                s.n, args.base, s.degeneracy, s.attempts
            );
            (args, s.map, report)
        }
    };
    write(&args.out, &(map.to_json() + "\n"))?;
    if let Some(svg) = &args.svg {
        write(svg, &immerse(&map)?.to_svg())?;
    }
    println!("{report}");
    Ok(true)
}

fn options(args: &SampleArgs) -> Result<SampleOptions> {
    if args.n_max == 0 {
        return usage("--n-max must be at least 1");
    }
    let mut opts = SampleOptions::new(args.n_max).max_attempts(args.max_attempts);
    if let Some(n) = args.n {
        if n > args.n_max {
            return usage("--n must not exceed --n-max");
        }
        opts = opts.target(n);
    }
    Ok(opts)
}

fn convert(how: Conversion, input: &Path, out: &Path, base: Option<i64>) -> Result<bool> {
    let text = read(input)?;
    let result = match how {
        Conversion::QuadToTree => {
            let m = RigidQuadMap::from_json(&text)?;
            quad_to_h_tree(&m)?.to_json(TreeClass::H)
        }
        Conversion::TreeToQuad => {
            let t = read_tree(&text, TreeClass::H)?;
            h_tree_to_quad(&t)?.to_json()
        }
        Conversion::HToQ => {
            let t = read_tree(&text, TreeClass::H)?;
            match base {
                Some(p) if p != t.base_length() => psi_hat(&t, p)?.to_json(TreeClass::Q),
                _ => psi(&t)?.to_json(TreeClass::WellBasedQ),
            }
        }
        Conversion::QToH => {
            let t = read_tree(&text, TreeClass::Q)?;
            let h = if t.is_class(TreeClass::WellBasedQ) { psi_inv(&t)? } else { psi_hat_inv(&t)? };
            h.to_json(TreeClass::H)
        }
    };
    write(out, &(result + "\n"))?;
    Ok(true)
}

/// Reads a tree document and checks it belongs to `class`.
fn read_tree(text: &str, class: TreeClass) -> Result<PartitionTree> {
    let (t, _) = PartitionTree::from_json(text)?;
    t.validate(class).with_context(|| format!("input is not a {class} tree"))?;
    Ok(t)
}

fn read_map(path: &Path) -> Result<RigidQuadMap> {
    Ok(RigidQuadMap::from_json(&read(path)?)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str().is_empty() {
        bail!("empty output path");
    }
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
