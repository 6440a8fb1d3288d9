//! `spqg`: command-line front end over the library.
//!
//! Usage errors exit with 2 (clap's convention), errors raised by the library
//! or by file handling exit with 1.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spqg::closure::{self, Bounds, ClosureSet, MembershipAnswer};
use spqg::conformance;
use spqg::grading::{class_membership, SeparatingClass};
use spqg::io as sio;
use spqg::partition::{Corner, SpatialPartition};
use spqg::relations::{self, render_poly};
use spqg::tensor_maps::{self, Dims, SizeCap};

#[derive(Parser)]
#[command(
    name = "spqg",
    version,
    about = "Spatial partitions, their categories and linear maps"
)]
struct Cli {
    /// Cap on worker threads (defaults to rayon's choice).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    /// Largest k+l kept in a closure.
    #[arg(long, default_value_t = 8)]
    max_cols: usize,
    /// Cap on stored partitions.
    #[arg(long, default_value_t = 1_000_000)]
    max_set: usize,
    /// Cap on saturation rounds.
    #[arg(long, default_value_t = 64)]
    max_rounds: usize,
}

impl From<BoundArgs> for Bounds {
    fn from(b: BoundArgs) -> Self {
        Bounds {
            max_cols: b.max_cols,
            max_set: b.max_set,
            max_rounds: b.max_rounds,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Single operations on partitions.
    #[command(subcommand)]
    Op(OpCmd),
    /// Membership of one partition in the separating classes.
    Classify {
        #[arg(value_name = "PARTITION", conflicts_with = "partition")]
        positional: Option<String>,
        #[arg(long)]
        partition: Option<String>,
        /// `all` (the five table columns), `full` (every plain class) or a comma list.
        #[arg(long, default_value = "all")]
        classes: String,
    },
    /// Bounded closure of a generator list, written as JSON lines.
    Closure {
        /// Generator file; omitted means no generators.
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a target lies in a category.
    Member {
        /// A closure dump from `closure`.
        #[arg(long, conflicts_with_all = ["gens", "m"])]
        closure: Option<PathBuf>,
        /// Generators to search from instead of a dump.
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "full")]
        classes: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Kronecker product of two categories, optionally with extra generators.
    Product {
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        left_m: usize,
        #[arg(long)]
        right: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        right_m: usize,
        #[arg(long)]
        extra: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The linear map of a partition as a MatrixMarket file.
    Smap {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        dims: Dims,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the maps of a list of partitions.
    Homdim {
        /// A directory of partition files, or one file listing partitions.
        #[arg(long)]
        partitions: PathBuf,
        #[arg(long)]
        dims: Dims,
    },
    #[command(subcommand)]
    Relations(RelCmd),
    /// Run the conformance criteria and print a table.
    VerifyPaper {
        /// Dimensions for the relation-list comparison, `n,n`.
        #[arg(long, default_value = "2,2")]
        dims: Dims,
        #[arg(long)]
        seed: Option<u64>,
        /// Only these criteria, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Also print the per-check lines.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// `upper` placed on top of `lower`.
    Compose {
        #[arg(long)]
        upper: String,
        #[arg(long)]
        lower: String,
    },
    Involute {
        #[arg(long)]
        partition: String,
    },
    Rotate {
        #[arg(long)]
        partition: String,
        /// left-upper-down, left-lower-up, right-upper-down or right-lower-up.
        #[arg(long)]
        corner: Corner,
    },
    Amplify {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        m: usize,
    },
    /// Level-wise stacking, first partition on level 1.
    Stack {
        #[arg(long = "partition", required = true)]
        partitions: Vec<String>,
    },
    Flatten {
        #[arg(long)]
        partition: String,
    },
}

#[derive(Subcommand)]
enum RelCmd {
    /// Write out R(p) for given dimensions.
    Emit {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        dims: Dims,
        /// Include the equations that are identities.
        #[arg(long)]
        all: bool,
    },
    /// Test R(p) in a matrix model.
    Check {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        model: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(code) => code,
        // a reader that went away (`| head`) is not an error
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let io = c
            .downcast_ref::<io::Error>()
            .or_else(|| match c.downcast_ref::<sio::IoError>() {
                Some(sio::IoError::Io(e)) => Some(e),
                _ => None,
            });
        io.is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
    })
}

/// A partition given inline (`@name`, JSON, compact text) or as a file path.
fn load_partition(arg: &str) -> Result<SpatialPartition> {
    let t = arg.trim();
    let inline = t.starts_with('@') || t.starts_with('{') || t.starts_with("P(");
    if !inline && Path::new(t).is_file() {
        let s = fs::read_to_string(t).with_context(|| format!("reading {t}"))?;
        return sio::parse_partition(&s).with_context(|| format!("parsing {t}"));
    }
    sio::parse_partition(t).with_context(|| format!("parsing partition `{t}`"))
}

/// A JSON array of partitions, or one partition per line (`#` starts a comment).
fn load_list(path: &Path) -> Result<Vec<SpatialPartition>> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let t = s.trim_start();
    if t.starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(t).with_context(|| format!("parsing {}", path.display()))?;
        return items
            .iter()
            .map(|v| match v {
                Value::String(x) => sio::parse_partition(x),
                other => sio::parse_partition(&other.to_string()),
            })
            .collect::<Result<_, _>>()
            .with_context(|| format!("parsing {}", path.display()));
    }
    s.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| sio::parse_partition(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}

fn load_gens(path: &Option<PathBuf>) -> Result<Vec<SpatialPartition>> {
    path.as_deref()
        .map(load_list)
        .transpose()
        .map(Option::unwrap_or_default)
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_classes(spec: &str) -> Result<Vec<SeparatingClass>> {
    Ok(match spec {
        "all" => SeparatingClass::TABLE.to_vec(),
        "full" => SeparatingClass::all_plain(),
        list => list.split(',').map(|c| c.trim().parse()).collect::<Result<_, _>>()?,
    })
}

fn emit(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Text => writeln!(out, "{}", text()),
        Format::Json => writeln!(out, "{}", value()),
    }
}

fn partition_value(p: &SpatialPartition) -> Value {
    serde_json::to_value(sio::PartitionJson::from(p)).expect("partition json")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Op(op) => run_op(op, fmt)?,
        Cmd::Classify {
            positional,
            partition,
            classes,
        } => {
            let Some(arg) = positional.or(partition) else {
                bail!("a partition is required");
            };
            let p = load_partition(&arg)?;
            let classes = parse_classes(&classes)?;
            let cells: Vec<(String, Option<bool>)> = classes
                .iter()
                .map(|c| (c.to_string(), class_membership(&p, c).ok()))
                .collect();
            let mark = |v: Option<bool>| match v {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            };
            emit(
                fmt,
                || {
                    let head: Vec<String> = cells.iter().map(|(n, _)| format!("{n:>17}")).collect();
                    let row: Vec<String> = cells.iter().map(|(_, v)| format!("{:>17}", mark(*v))).collect();
                    format!("{}\n{}\n{}", p, head.join(""), row.join(""))
                },
                || {
                    let row: serde_json::Map<String, Value> =
                        cells.iter().map(|(n, v)| (n.clone(), json!(v))).collect();
                    json!({ "partition": p.to_string(), "classes": row })
                },
            )?;
        }
        Cmd::Closure { gens, m, bounds, out } => {
            let gens = load_gens(&gens)?;
            let cs = closure::generate_closure(&gens, m, bounds.into())?;
            sio::write_closure_jsonl(&cs, open_out(&out)?)?;
            if out.is_some() {
                emit(fmt, || closure_summary(&cs), || closure_value(&cs))?;
            }
            if !cs.saturated_within_bounds() {
                eprintln!("warning: closure not saturated ({:?})", cs.bound_hit());
            }
        }
        Cmd::Member {
            closure: dump,
            gens,
            m,
            target,
            classes,
            bounds,
        } => {
            let target = load_partition(&target)?;
            let classes = parse_classes(&classes)?;
            let (answer, listed) = match dump {
                Some(path) => {
                    let f = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
                    let d = sio::read_closure_jsonl(BufReader::new(f))?;
                    let m = d
                        .members
                        .first()
                        .map(SpatialPartition::levels)
                        .context("closure dump is empty")?;
                    if target.levels() != m {
                        bail!("target has {} levels but the closure has {m}", target.levels());
                    }
                    if d.members.contains(&target) {
                        (None, true)
                    } else {
                        let a = match closure::separate(&d.generators, m, &target, &classes) {
                            Some(c) => MembershipAnswer::SeparatedBy(c),
                            None => MembershipAnswer::NotFoundWithinBounds,
                        };
                        (Some(a), false)
                    }
                }
                None => {
                    let gens = load_gens(&gens)?;
                    let m = m.unwrap_or(target.levels());
                    (
                        Some(closure::search(&gens, m, &target, bounds.into(), &classes)?),
                        false,
                    )
                }
            };
            emit(
                fmt,
                || match &answer {
                    None => "member (listed in the closure file)".to_string(),
                    Some(MembershipAnswer::Member(t)) => format!("member\n{t}"),
                    Some(a) => a.to_string(),
                },
                || match &answer {
                    None => json!({ "verdict": "member", "listed": listed }),
                    Some(MembershipAnswer::Member(t)) => json!({
                        "verdict": "member",
                        "trace": t.nodes.iter().map(|n| json!({
                            "partition": n.partition.to_string(),
                            "step": format!("{:?}", n.step),
                        })).collect::<Vec<_>>(),
                    }),
                    Some(MembershipAnswer::SeparatedBy(c)) => {
                        json!({ "verdict": "separated", "class": c.to_string() })
                    }
                    Some(MembershipAnswer::NotFoundWithinBounds) => json!({ "verdict": "not-found-within-bounds" }),
                },
            )?;
        }
        Cmd::Product {
            left,
            left_m,
            right,
            right_m,
            extra,
            bounds,
            out,
        } => {
            let b: Bounds = bounds.into();
            let a = closure::generate_closure(&load_gens(&left)?, left_m, b)?;
            let c = closure::generate_closure(&load_gens(&right)?, right_m, b)?;
            let extra = load_gens(&extra)?;
            let cs = if extra.is_empty() {
                closure::kronecker_product(&a, &c)
            } else {
                closure::amalgamated_closure(&a, &c, &extra, b)?
            };
            if out.is_some() {
                sio::write_closure_jsonl(&cs, open_out(&out)?)?;
            }
            emit(fmt, || closure_summary(&cs), || closure_value(&cs))?;
        }
        Cmd::Smap { partition, dims, out } => {
            let p = load_partition(&partition)?;
            let s = tensor_maps::s_map(&p, &dims, SizeCap::from_env())?;
            let mut w = open_out(&out)?;
            sio::write_matrix_market(&s, &mut w)?;
            w.flush()?;
        }
        Cmd::Homdim { partitions, dims } => {
            let parts = if partitions.is_dir() {
                let mut files: Vec<PathBuf> = fs::read_dir(&partitions)?
                    .map(|e| e.map(|e| e.path()))
                    .collect::<Result<_, _>>()?;
                files.retain(|p| p.is_file());
                files.sort();
                let mut parts = Vec::new();
                for f in files {
                    parts.extend(load_list(&f)?);
                }
                parts
            } else {
                load_list(&partitions)?
            };
            let r = tensor_maps::hom_dim(&parts, &dims, SizeCap::from_env())?;
            emit(
                fmt,
                || r.to_string(),
                || json!({ "partitions": parts.len(), "dims": dims.as_slice(), "rank": r }),
            )?;
        }
        Cmd::Relations(RelCmd::Emit { partition, dims, all }) => {
            let p = load_partition(&partition)?;
            let rel = relations::emit_relations(&p, &dims, SizeCap::from_env())?;
            let eqs: Vec<_> = rel.equations.iter().filter(|e| all || !e.is_trivial()).collect();
            emit(
                fmt,
                || {
                    let mut s = format!("R({}) over dims {}: {} equations", p, dims, eqs.len());
                    for e in &eqs {
                        s.push_str(&format!(
                            "\n{} = {}",
                            render_poly(&e.lhs, &dims),
                            render_poly(&e.rhs, &dims)
                        ));
                    }
                    s
                },
                || {
                    let terms = |poly: &relations::Poly| {
                        poly.iter()
                            .map(|(w, c)| json!({ "coeff": c.to_string(), "word": w }))
                            .collect::<Vec<_>>()
                    };
                    json!({
                        "partition": p.to_string(),
                        "dims": dims.as_slice(),
                        "equations": eqs.iter().map(|e| json!({
                            "upper": e.upper,
                            "lower": e.lower,
                            "lhs": terms(&e.lhs),
                            "rhs": terms(&e.rhs),
                        })).collect::<Vec<_>>(),
                    })
                },
            )?;
        }
        Cmd::Relations(RelCmd::Check { partition, model }) => {
            let p = load_partition(&partition)?;
            let s = fs::read_to_string(&model).with_context(|| format!("reading {}", model.display()))?;
            let model = sio::model_from_json(&s)?;
            let c = relations::check_relation_with_cap(&p, &model, SizeCap::from_env())?;
            emit(
                fmt,
                || {
                    format!(
                        "R({p}) {}: {} equations, {} failing",
                        if c.holds { "holds" } else { "fails" },
                        c.equations,
                        c.failures
                    )
                },
                || json!({ "partition": p.to_string(), "holds": c.holds, "equations": c.equations, "failures": c.failures }),
            )?;
        }
        Cmd::VerifyPaper {
            dims,
            seed,
            only,
            verbose,
        } => {
            let mut opts = conformance::Options {
                fidelity_dims: dims,
                ..Default::default()
            };
            if let Some(s) = seed {
                opts.seed = s;
            }
            let ids: Vec<u8> = if only.is_empty() { (1..=9).collect() } else { only };
            if let Some(bad) = ids.iter().find(|i| !(1..=9).contains(*i)) {
                bail!("no criterion {bad}");
            }
            let reports: Vec<_> = ids.iter().map(|&i| conformance::run(i, &opts)).collect();
            let all = reports.iter().all(|r| r.passed);
            emit(
                fmt,
                || {
                    let mut s = String::new();
                    for r in &reports {
                        s.push_str(&format!("{r}\n"));
                        if verbose || !r.passed {
                            for d in &r.details {
                                s.push_str(&format!("    {d}\n"));
                            }
                        }
                    }
                    let passed = reports.iter().filter(|r| r.passed).count();
                    s.push_str(&format!("{passed}/{} criteria pass", reports.len()));
                    s
                },
                || {
                    json!({
                        "all_pass": all,
                        "criteria": reports.iter().map(|r| json!({
                            "id": r.id,
                            "title": r.title,
                            "passed": r.passed,
                            "details": r.details,
                        })).collect::<Vec<_>>(),
                    })
                },
            )?;
            return Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_op(op: OpCmd, fmt: Format) -> Result<()> {
    let (p, loops) = match op {
        OpCmd::Tensor { left, right } => (load_partition(&left)?.tensor(&load_partition(&right)?)?, None),
        OpCmd::Compose { upper, lower } => {
            let r = load_partition(&upper)?.compose(&load_partition(&lower)?)?;
            (r.partition, Some(r.loops))
        }
        OpCmd::Involute { partition } => (load_partition(&partition)?.involution(), None),
        OpCmd::Rotate { partition, corner } => (load_partition(&partition)?.rotate(corner)?, None),
        OpCmd::Amplify { partition, m } => (load_partition(&partition)?.amplify(m)?, None),
        OpCmd::Stack { partitions } => {
            let parts = partitions
                .iter()
                .map(|a| load_partition(a))
                .collect::<Result<Vec<_>>>()?;
            (SpatialPartition::stack(&parts)?, None)
        }
        OpCmd::Flatten { partition } => (load_partition(&partition)?.flatten(), None),
    };
    emit(
        fmt,
        || match loops {
            Some(n) => format!("{p}\nloops={n}"),
            None => p.to_string(),
        },
        || {
            let mut v = partition_value(&p);
            if let Some(n) = loops {
                v["loops"] = json!(n);
            }
            v
        },
    )?;
    Ok(())
}

fn closure_summary(cs: &ClosureSet) -> String {
    let mut s = format!(
        "{} members on {} levels, max_cols={}, saturated={}",
        cs.len(),
        cs.levels(),
        cs.bounds().max_cols,
        cs.saturated_within_bounds()
    );
    for (k, l, n) in shape_counts(cs) {
        s.push_str(&format!("\n  ({k},{l}): {n}"));
    }
    s
}

fn closure_value(cs: &ClosureSet) -> Value {
    json!({
        "members": cs.len(),
        "levels": cs.levels(),
        "max_cols": cs.bounds().max_cols,
        "saturated": cs.saturated_within_bounds(),
        "counts": shape_counts(cs).iter().map(|(k, l, n)| json!({ "k": k, "l": l, "count": n })).collect::<Vec<_>>(),
    })
}

fn shape_counts(cs: &ClosureSet) -> Vec<(usize, usize, usize)> {
    let max = cs.bounds().max_cols;
    (0..=max)
        .flat_map(|c| (0..=c).map(move |k| (k, c - k)))
        .map(|(k, l)| (k, l, cs.count(k, l)))
        .filter(|&(_, _, n)| n > 0)
        .collect()
}
