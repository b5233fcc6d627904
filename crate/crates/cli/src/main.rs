use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use wreath_sectors::group::{builtin_group, FiniteGroup, GroupSpec};
use wreath_sectors::gspace::{DescriptorSpec, GSpaceDescriptor};
use wreath_sectors::identities::{lhs_series, rhs_es_exp, rhs_euler_product, subgroup_counts, verify, Theorem};
use wreath_sectors::presentation::{GroupPresentation, PresentationSpec};
use wreath_sectors::sectors::{gamma_extension, Invariant};
use wreath_sectors::series::{format_rational, RationalSeries};
use wreath_sectors::{Caps, Ctx, Error};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "wreath-sectors", version, about = "Exact Γ-sector Euler characteristics of wreath symmetric products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a generating-function identity coefficient by coefficient.
    Verify {
        /// thm-euler, thm-es, thm-product, thm-dm, thm-gammaset or macdonald.
        tag: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print a single quantity.
    Compute {
        what: What,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Extension,
    Lhs,
    Rhs,
    SubgroupCounts,
    GroupInfo,
    Sectors,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    truncation: Option<usize>,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    cap_order: Option<usize>,
    #[arg(long)]
    cap_nodes: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    #[serde(default = "trivial_gamma")]
    gamma: PresentationSpec,
    group: Option<GroupSpec>,
    #[serde(default = "point_space")]
    space: DescriptorSpec,
    #[serde(default = "default_invariant")]
    invariant: Invariant,
    truncation: Option<usize>,
    #[serde(default)]
    caps: Caps,
}

fn trivial_gamma() -> PresentationSpec {
    PresentationSpec::Trivial
}

fn point_space() -> DescriptorSpec {
    DescriptorSpec::Point
}

fn default_invariant() -> Invariant {
    Invariant::Euler
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(e) if e.is_cap() => EXIT_CAP,
            Failure::Compute(Error::Inconsistent(_)) => EXIT_MISMATCH,
            Failure::Compute(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Compute(e) => e.to_string(),
        }
    }
}

/// A loaded configuration with flags applied.
struct Run {
    config: RunConfig,
    ctx: Ctx,
    truncation: Option<usize>,
}

impl Run {
    fn load(common: &Common) -> Result<Run, Failure> {
        let text = std::fs::read_to_string(&common.config)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", common.config.display())))?;
        let mut config: RunConfig =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid configuration: {e}")))?;
        if let Some(order) = common.cap_order {
            config.caps.order = order;
        }
        if let Some(nodes) = common.cap_nodes {
            config.caps.search_nodes = nodes;
        }
        let caps = &config.caps;
        if caps.order == 0 || caps.subgroup_lattice == 0 || caps.search_nodes == 0 || caps.gset_points == 0 {
            return Err(Failure::Usage("caps must be positive".into()));
        }
        let truncation = common.truncation.or(config.truncation);
        if let Some(t) = truncation {
            if t == 0 {
                return Err(Failure::Usage("truncation must be positive".into()));
            }
            if t > caps.truncation {
                return Err(Failure::Usage(format!("truncation {t} exceeds the maximum {}", caps.truncation)));
            }
        }
        if let Some(k) = common.threads {
            if k == 0 {
                return Err(Failure::Usage("--threads must be positive".into()));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
        }
        let ctx = Ctx::new(config.caps);
        Ok(Run { config, ctx, truncation })
    }

    fn truncation(&self) -> Result<usize, Failure> {
        self.truncation.ok_or_else(|| Failure::Usage("a truncation is required (config or --truncation)".into()))
    }

    fn gamma(&self) -> Result<GroupPresentation, Failure> {
        Ok(self.config.gamma.build(&self.ctx.caps)?)
    }

    fn group(&self) -> Result<Arc<FiniteGroup>, Failure> {
        let spec = self.config.group.as_ref().ok_or_else(|| Failure::Usage("the configuration names no group".into()))?;
        Ok(Arc::new(builtin_group(spec, &self.ctx.caps)?))
    }

    fn descriptor(&self) -> Result<GSpaceDescriptor, Failure> {
        Ok(self.config.space.build(&self.group()?, &self.ctx.caps)?)
    }
}

fn series_json(s: &RationalSeries) -> Value {
    json!(s.to_strings())
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<(), Failure> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).expect("json value serializes");
        std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_verify(tag: &str, common: &Common) -> Result<u8, Failure> {
    let theorem: Theorem = tag.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let run = Run::load(common)?;
    let t = run.truncation()?;
    let report = verify(theorem, run.config.invariant, &run.gamma()?, &run.descriptor()?, t, &run.ctx)?;
    println!("{report}");
    write_json(common.json.as_deref(), &report.to_json())?;
    Ok(if report.all_passed() { 0 } else { EXIT_MISMATCH })
}

fn cmd_compute(what: What, common: &Common) -> Result<u8, Failure> {
    let run = Run::load(common)?;
    let inv = run.config.invariant;
    let report = match what {
        What::Extension | What::Sectors => {
            let p = run.gamma()?;
            let ext = gamma_extension(inv, &p, &run.descriptor()?, &run.ctx)?;
            let value = format_rational(&ext.value);
            println!("{} of the {}-extension: {value}", inv.name(), p.describe());
            if matches!(what, What::Sectors) {
                for term in &ext.terms {
                    println!(
                        "  θ = {:?}: class size {}, fixed χ {}, centralizer {}, contributes {}",
                        term.representative,
                        term.class_size,
                        term.chi_fixed,
                        term.centralizer_order,
                        format_rational(&term.value)
                    );
                }
            }
            json!({
                "invariant": inv.name(),
                "value": value,
                "sectors": ext.terms.iter().map(|t| t.report_row()).collect::<Vec<_>>(),
            })
        }
        What::Lhs | What::Rhs => {
            let t = run.truncation()?;
            let (p, desc) = (run.gamma()?, run.descriptor()?);
            let series = match (what, inv) {
                (What::Lhs, _) => lhs_series(inv, &p, &desc, t, &run.ctx)?,
                (_, Invariant::Euler) => rhs_euler_product(&p, &desc, t, &run.ctx)?,
                (_, Invariant::EulerSatake) => rhs_es_exp(&p, &desc, t, &run.ctx)?,
            };
            println!("{}", series.to_strings().join(", "));
            json!({ "invariant": inv.name(), "T": t, "coefficients": series_json(&series) })
        }
        What::SubgroupCounts => {
            let t = run.truncation()?;
            let counts = subgroup_counts(&run.gamma()?, t, &run.ctx)?;
            for (n, c) in counts.iter().enumerate() {
                println!("N_{} = {c}", n + 1);
            }
            json!({ "T": t, "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>() })
        }
        What::GroupInfo => {
            let g = run.group()?;
            let classes = g.conjugacy_classes();
            let lattice = g.all_subgroups(&run.ctx.caps)?;
            let sizes: Vec<usize> = classes.classes.iter().map(Vec::len).collect();
            println!("order {}, {} classes", g.order(), classes.len());
            println!("class sizes: {sizes:?}");
            println!("abelian: {}", g.is_abelian());
            println!("subgroups: {} in {} conjugacy classes", lattice.subgroups.len(), lattice.classes.len());
            json!({
                "order": g.order(),
                "classes": classes.len(),
                "class_sizes": sizes,
                "abelian": g.is_abelian(),
                "subgroups": lattice.subgroups.len(),
                "subgroup_classes": lattice.classes.len(),
            })
        }
    };
    write_json(common.json.as_deref(), &report)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { tag, common } => cmd_verify(tag, common),
        Command::Compute { what, common } => cmd_compute(*what, common),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
