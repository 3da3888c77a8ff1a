//! Batch command-line frontend.
//!
//! Every subcommand produces an [`OutputEnvelope`] and renders it either as
//! JSON or as a plain-text table. Workers never print; all output goes
//! through [`run`].
//!
//! Exit codes: `0` success, `1` a verification failed or a search found a
//! root, `2` usage error or unusable input file.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::annulus::{gluing_identity_holds, twist_defect, unit_grid, AnnulusMap, AnnulusPoint};
use crate::arith::Rational;
use crate::enumeration::{degree_spectrum_with, enumerate_datasets_with, marked_obstructions, MarkedSurfaceQuery, MarkedVerdict};
use crate::exec::Exec;
use crate::nielsen::BoundaryConvention;
use crate::symplectic::{
    alpha1_twist, centralizer_sqrt_search_budgeted, is_symplectic, standard_j, IntMatrix, SearchStatus,
};
use crate::twistword::{sanity_relations, verify_degree3, CurveSystem, TwistWordError, DATA_DIR_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twistroot", version, about = "Roots of the Dehn twist about a nonseparating curve")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Worker threads; 1 is sequential, 0 lets the pool decide.
    #[arg(long, value_name = "N", global = true)]
    pub parallel: Option<usize>,
    /// How the two boundary residues of a data set are compared.
    #[arg(long, value_enum, default_value_t = ConventionArg::Unordered, global = true)]
    pub boundary_convention: ConventionArg,
    /// Omit timing so outputs from different runs compare byte for byte.
    #[arg(long, global = true)]
    pub compare: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionArg {
    Unordered,
    Ordered,
    Both,
}

impl ConventionArg {
    fn conventions(self) -> Vec<BoundaryConvention> {
        match self {
            ConventionArg::Unordered => vec![BoundaryConvention::Unordered],
            ConventionArg::Ordered => vec![BoundaryConvention::Ordered],
            ConventionArg::Both => vec![BoundaryConvention::Unordered, BoundaryConvention::Ordered],
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the conjugacy classes of degree-n roots as canonical data sets.
    Enumerate {
        /// Genus g of the cut surface; the closed surface has genus g + 1.
        #[arg(long, value_parser = at_least::<1>)]
        genus: i64,
        #[arg(long, value_parser = at_least::<2>)]
        degree: i64,
    },
    /// All degrees that admit a root, with class counts.
    Spectrum {
        #[arg(long, value_parser = at_least::<1>)]
        genus: i64,
    },
    /// Whether a root of the given degree exists.
    Exists {
        #[arg(long, value_parser = at_least::<1>)]
        genus: i64,
        #[arg(long, value_parser = at_least::<2>)]
        degree: i64,
    },
    /// Check the degree-3 root word in the symplectic representation.
    #[command(name = "verify-degree3")]
    VerifyDegree3 {
        #[arg(long, value_parser = at_least::<1>)]
        genus: i64,
        /// Curve table file; defaults to the shipped table or the one in
        /// $TWISTROOT_DATA_DIR.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Bounded search for a symplectic square root inside the centralizer.
    #[command(name = "sp-sqrt")]
    SpSqrt {
        #[arg(long, value_parser = at_least::<1>)]
        genus: i64,
        /// Largest absolute value allowed for an entry.
        #[arg(long, default_value_t = 3, value_parser = at_least::<1>)]
        bound: i64,
        /// JSON nested integer arrays; defaults to the twist about the first
        /// curve.
        #[arg(long)]
        matrix_file: Option<PathBuf>,
        /// Give up after this many search nodes.
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Obstructions on a surface with boundary curves and punctures.
    Marked {
        #[arg(long, value_parser = at_least::<1>)]
        genus: i64,
        /// Boundary curves that may be permuted.
        #[arg(long, default_value_t = 0, value_parser = at_least::<0>)]
        permuted_boundary: i64,
        /// Boundary curves fixed pointwise.
        #[arg(long, default_value_t = 0, value_parser = at_least::<0>)]
        fixed_boundary: i64,
        #[arg(long, default_value_t = 0, value_parser = at_least::<0>)]
        punctures: i64,
    },
    /// Check that the n-th power of the annulus map is the expected twist.
    #[command(name = "annulus-check")]
    AnnulusCheck {
        /// Check a single degree instead of the whole range.
        #[arg(long, value_parser = at_least::<3>)]
        degree: Option<i64>,
        #[arg(long, default_value_t = 15, value_parser = at_least::<3>)]
        max_degree: i64,
        /// Largest denominator of the heights t sampled in [0, 1].
        #[arg(long, default_value_t = 12, value_parser = at_least::<1>)]
        max_denominator: i64,
    },
}

/// Integer argument with a lower bound.
fn at_least<const MIN: i64>(s: &str) -> Result<i64, String> {
    let v: i64 = s.parse().map_err(|e| format!("{e}"))?;
    if v < MIN {
        return Err(format!("must be at least {MIN}"));
    }
    Ok(v)
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Spectrum { .. } => "spectrum",
            Command::Exists { .. } => "exists",
            Command::VerifyDegree3 { .. } => "verify-degree3",
            Command::SpSqrt { .. } => "sp-sqrt",
            Command::Marked { .. } => "marked",
            Command::AnnulusCheck { .. } => "annulus-check",
        }
    }
}

/// Top-level JSON document printed by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// A computed result: the JSON payload, its text rendering and exit code.
struct Report {
    parameters: Value,
    results: Value,
    text: String,
    exit: i32,
}

/// Input problems that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<TwistWordError> for UsageError {
    fn from(e: TwistWordError) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = out.write_all(e.render().to_string().as_bytes());
                return EXIT_OK;
            }
            let mut rendered = e.render().to_string();
            if !rendered.contains("Usage:") {
                let usage = Cli::command().render_usage().to_string();
                rendered = format!("{rendered}\n{usage}\n");
            }
            let _ = err.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };
    let started = Instant::now();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let elapsed = u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX);
    let text = match cli.global.format {
        Format::Table => report.text,
        Format::Json => {
            let envelope = OutputEnvelope {
                command: cli.command.name().to_string(),
                parameters: report.parameters,
                results: report.results,
                version: env!("CARGO_PKG_VERSION").to_string(),
                elapsed_ms: (!cli.global.compare).then_some(elapsed),
            };
            render_json(&envelope)
        }
    };
    let _ = out.write_all(text.as_bytes());
    report.exit
}

/// Pretty JSON with a trailing newline. Objects go through `Value` so keys
/// come out sorted and re-serializing a parsed document is byte-identical.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("output serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("output serializes");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Report, UsageError> {
    let g = &cli.global;
    let exec = Exec::from_workers(g.parallel);
    let mut parameters = json!({
        "boundary_convention": g.boundary_convention,
        "parallel": g.parallel,
    });
    let report = match &cli.command {
        Command::Enumerate { genus, degree } => cmd_enumerate(*genus, *degree, g.boundary_convention, &exec),
        Command::Spectrum { genus } => cmd_spectrum(*genus, g.boundary_convention, &exec),
        Command::Exists { genus, degree } => cmd_exists(*genus, *degree, &exec),
        Command::VerifyDegree3 { genus, table } => cmd_verify_degree3(*genus, table.as_ref())?,
        Command::SpSqrt { genus, bound, matrix_file, node_budget } => {
            cmd_sp_sqrt(*genus, *bound, matrix_file.as_ref(), *node_budget, &exec)?
        }
        Command::Marked { genus, permuted_boundary, fixed_boundary, punctures } => cmd_marked(MarkedSurfaceQuery {
            g: *genus,
            b1: *permuted_boundary,
            b2: *fixed_boundary,
            p: *punctures,
        }),
        Command::AnnulusCheck { degree, max_degree, max_denominator } => {
            cmd_annulus_check(*degree, *max_degree, *max_denominator)
        }
    };
    if let (Value::Object(base), Value::Object(extra)) = (&mut parameters, &report.parameters) {
        base.extend(extra.clone());
    }
    Ok(Report { parameters, ..report })
}

fn cmd_enumerate(genus: i64, degree: i64, convention: ConventionArg, exec: &Exec) -> Report {
    let mut listings = Vec::new();
    let mut text = String::new();
    for conv in convention.conventions() {
        let classes = enumerate_datasets_with(genus, degree, conv, exec);
        let _ = writeln!(text, "genus {genus}, degree {degree}, {conv}: {} class(es)", classes.len());
        for d in &classes {
            let _ = writeln!(text, "  {d}");
        }
        listings.push(json!({ "convention": conv, "count": classes.len(), "classes": classes }));
    }
    Report {
        parameters: json!({ "genus": genus, "degree": degree }),
        results: json!({ "g": genus, "n": degree, "listings": listings }),
        text,
        exit: EXIT_OK,
    }
}

fn cmd_spectrum(genus: i64, convention: ConventionArg, exec: &Exec) -> Report {
    let report = degree_spectrum_with(genus, exec);
    let mut text = format!("genus {genus} (closed genus {}): degrees {:?}\n", genus + 1, report.degree_list());
    let conventions = convention.conventions();
    let header: Vec<String> = conventions.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(text, "  {:>4}  {}", "n", header.join("  "));
    for d in &report.degrees {
        let counts: Vec<String> = conventions
            .iter()
            .zip(&header)
            .map(|(c, h)| format!("{:>width$}", d.count(*c), width = h.len()))
            .collect();
        let _ = writeln!(text, "  {:>4}  {}", d.n, counts.join("  "));
    }
    if !report.guard_hits.is_empty() {
        let _ = writeln!(text, "  unexpected degrees beyond 2g+1: {:?}", report.guard_hits);
    }
    let within = report.within_bounds();
    Report {
        parameters: json!({ "genus": genus }),
        results: json!({
            "g": genus,
            "degrees": report.degree_list(),
            "classes": report.degrees,
            "guard_hits": report.guard_hits,
            "within_bounds": within,
        }),
        text,
        exit: if within { EXIT_OK } else { EXIT_FAILED },
    }
}

fn cmd_exists(genus: i64, degree: i64, exec: &Exec) -> Report {
    let unordered = enumerate_datasets_with(genus, degree, BoundaryConvention::Unordered, exec).len();
    let exists = unordered > 0;
    let text = format!(
        "genus {genus}, degree {degree}: {} ({unordered} class(es))\n",
        if exists { "root exists" } else { "no root" }
    );
    Report {
        parameters: json!({ "genus": genus, "degree": degree }),
        results: json!({ "g": genus, "n": degree, "exists": exists, "classes": unordered }),
        text,
        exit: EXIT_OK,
    }
}

fn cmd_verify_degree3(genus: i64, table_path: Option<&PathBuf>) -> Result<Report, UsageError> {
    if genus < 2 {
        return Err(UsageError(format!("verify-degree3 needs --genus ≥ 2, got {genus}")));
    }
    let g = usize::try_from(genus).expect("positive genus");
    let (table, source) = match table_path {
        Some(p) => (CurveSystem::load(p)?, p.display().to_string()),
        None => match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => (CurveSystem::locate(g + 1)?, format!("{}/{}", PathBuf::from(dir).display(), CurveSystem::file_name(g + 1))),
            None => (CurveSystem::shipped(g + 1)?, format!("shipped:{}", CurveSystem::file_name(g + 1))),
        },
    };
    let report = verify_degree3(g, &table)?;
    let relations = sanity_relations(&table);
    let relations_pass = relations.iter().all(|r| r.holds);
    let all_pass = report.all_pass() && relations_pass;

    let mark = |b: bool| if b { "ok" } else { "FAILED" };
    let mut text = format!("degree-3 root, genus {genus} (closed genus {}), table {source}\n", genus + 1);
    let _ = writeln!(text, "  φ(ĥ)³ = φ(t_α)²        {}", mark(report.hhat_cubed_is_twist_squared));
    let _ = writeln!(text, "  φ(h)³ = φ(t_α)         {}", mark(report.h_cubed_is_twist));
    let _ = writeln!(text, "  φ(ĥ) commutes with t_α {}", mark(report.hhat_commutes_with_twist));
    let failed: Vec<_> = relations.iter().filter(|r| !r.holds).collect();
    let _ = writeln!(text, "  sanity relations       {} ({} checked, {} failed)", mark(relations_pass), relations.len(), failed.len());
    for r in failed {
        let _ = writeln!(text, "    {:?} {}", r.kind, r.curves.join(", "));
    }
    let _ = writeln!(text, "  (homology level only; not a mapping class group identity)");
    Ok(Report {
        parameters: json!({ "genus": genus, "table": source }),
        results: json!({
            "g": genus,
            "report": report,
            "relations": relations,
            "relations_pass": relations_pass,
            "all_pass": all_pass,
            "level": "homology",
        }),
        text,
        exit: if all_pass { EXIT_OK } else { EXIT_FAILED },
    })
}

fn cmd_sp_sqrt(
    genus: i64,
    bound: i64,
    matrix_file: Option<&PathBuf>,
    node_budget: Option<u64>,
    exec: &Exec,
) -> Result<Report, UsageError> {
    let gplus1 = usize::try_from(genus + 1).expect("positive genus");
    let form = standard_j(gplus1);
    let s = match matrix_file {
        None => alpha1_twist(gplus1),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("reading {}: {e}", path.display())))?;
            let m: IntMatrix =
                serde_json::from_str(&text).map_err(|e| UsageError(format!("parsing {}: {e}", path.display())))?;
            if !is_symplectic(&m, &form).map_err(|e| UsageError(e.to_string()))? {
                return Err(UsageError(format!("{} is not symplectic", path.display())));
            }
            m
        }
    };
    let search = centralizer_sqrt_search_budgeted(&s, &form, bound, node_budget, exec);
    let rendered = search.constraints.rendered();

    let mut text = format!("matrix ({0}x{0}):\n", s.dim());
    for line in s.to_string().lines() {
        let _ = writeln!(text, "  {line}");
    }
    let _ = writeln!(text, "centralizer constraints ({} free entries):", search.constraints.free.len());
    for r in &rendered {
        let _ = writeln!(text, "  {r}");
    }
    match (&search.status, &search.root) {
        (SearchStatus::Found, Some(root)) => {
            let _ = writeln!(text, "square root found with entries in [-{bound}, {bound}]:");
            for line in root.to_string().lines() {
                let _ = writeln!(text, "  {line}");
            }
        }
        (SearchStatus::BudgetExhausted, _) => {
            let _ = writeln!(text, "inconclusive: node budget exhausted before the grid was covered");
        }
        _ => {
            let _ = writeln!(text, "no square root with entries in [-{bound}, {bound}]");
        }
    }
    Ok(Report {
        parameters: json!({
            "genus": genus,
            "bound": bound,
            "matrix_file": matrix_file.map(|p| p.display().to_string()),
            "node_budget": node_budget,
        }),
        results: json!({
            "gplus1": gplus1,
            "bound": bound,
            "matrix": s,
            "constraints": rendered,
            "free_entries": search.constraints.free.len(),
            "status": search.status,
            "root": search.root,
            "nodes": search.nodes,
        }),
        text,
        exit: if search.status == SearchStatus::Found { EXIT_FAILED } else { EXIT_OK },
    })
}

fn cmd_marked(q: MarkedSurfaceQuery) -> Report {
    let verdicts = marked_obstructions(q);
    let mut text = format!(
        "genus {} (closed genus {}), {} permuted boundary, {} fixed boundary, {} punctures\n",
        q.g,
        q.g + 1,
        q.b1,
        q.b2,
        q.p
    );
    for v in &verdicts {
        let line = match v {
            MarkedVerdict::NoRoots => "NoRoots: no root of any degree".to_string(),
            MarkedVerdict::NoDegreeMax { residue } => {
                format!("NoDegreeMax: no root of degree {} (b1 + p ≡ {residue})", 2 * q.g + 1)
            }
            MarkedVerdict::NoRootsAtAll => "NoRootsAtAll: no root of any degree".to_string(),
            MarkedVerdict::NoObstructionFound => "NoObstructionFound".to_string(),
        };
        let _ = writeln!(text, "  {line}");
    }
    Report {
        parameters: json!({
            "genus": q.g,
            "permuted_boundary": q.b1,
            "fixed_boundary": q.b2,
            "punctures": q.p,
        }),
        results: json!({ "query": q, "verdicts": verdicts }),
        text,
        exit: EXIT_OK,
    }
}

/// Sample positions on the circle: `k/20` for `k = 0..20`.
fn circle_samples() -> Vec<Rational> {
    (0..20).map(|k| Rational::new(k, 20).unwrap()).collect()
}

fn cmd_annulus_check(degree: Option<i64>, max_degree: i64, max_denominator: i64) -> Report {
    let degrees: Vec<i64> = match degree {
        Some(n) => vec![n],
        None => (3..=max_degree).collect(),
    };
    let ts = unit_grid(max_denominator);
    let xs = circle_samples();
    let mut maps = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for n in degrees {
        for m in AnnulusMap::all(n) {
            let (d0, d1) = m.deltas();
            let mut failures = 0usize;
            for &t in &ts {
                for &x in &xs {
                    if !gluing_identity_holds(&m, AnnulusPoint::new(t, x).expect("grid lies in [0, 1]")) {
                        failures += 1;
                    }
                }
            }
            let defect = twist_defect(&m).ok();
            let holds = failures == 0 && defect == Some(n - 1);
            all &= holds;
            let _ = writeln!(
                text,
                "n={n:>2} δ⁰={d0:>2} δ¹={d1:>2}  twists {}  {}",
                defect.map_or("?".to_string(), |d| d.to_string()),
                if holds { "ok" } else { "FAILED" }
            );
            maps.push(json!({
                "n": n,
                "delta0": d0,
                "delta1": d1,
                "twist_defect": defect,
                "points": ts.len() * xs.len(),
                "failures": failures,
                "holds": holds,
            }));
        }
    }
    if maps.is_empty() {
        let _ = writeln!(text, "no valid annulus maps in range");
    }
    Report {
        parameters: json!({ "degree": degree, "max_degree": max_degree, "max_denominator": max_denominator }),
        results: json!({ "maps": maps, "all_hold": all }),
        text,
        exit: if all { EXIT_OK } else { EXIT_FAILED },
    }
}
