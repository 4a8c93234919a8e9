//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::diagram::{validate_diagram, KirbyDiagram};
use crate::gxcat::{fixture, fixture_names, validate_category, CategoryData};
use crate::invariant::{invariant_with, state_space_dim, InvariantOptions, ThreeManifold};
use crate::manifolds::{builtin, dw_count, dw_factorization_check, pi1_presentation, GroupPresentation, BUILTIN_NAMES};
use crate::moves::{apply, MoveRecord};
use crate::scalars::Scalar;

pub const THREADS_ENV: &str = "GXKIRBY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "gxkirby", version, about = "Exact 4-manifold invariants from G-crossed braided fusion categories")]
pub struct Cli {
    /// Worker threads for the labelling sum.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a category or diagram JSON file.
    Validate { path: PathBuf },
    /// Compute I_C of a manifold.
    Invariant {
        /// Fixture name or category JSON path.
        #[arg(short, long)]
        category: String,
        /// Builtin name (`a#b` for connected sums) or diagram JSON path.
        #[arg(short, long)]
        manifold: String,
        #[arg(long)]
        keep_contributions: bool,
    },
    /// Compare every builtin against the closed-form table values.
    Table2,
    /// State-space dimensions for S³ and S¹×S².
    Dims {
        #[arg(short, long)]
        category: String,
    },
    /// π₁ presentation, |Hom(π₁, G)| and the DW factorization check.
    Dw {
        #[arg(short, long)]
        category: String,
        #[arg(short, long)]
        manifold: String,
    },
    /// Apply a move script and compare invariants step by step.
    MovesRegress {
        #[arg(short, long)]
        manifold: String,
        #[arg(short, long)]
        script: PathBuf,
        /// Defaults to every shipped fixture.
        #[arg(short, long)]
        category: Option<String>,
    },
    /// Write shipped fixtures and builtins as JSON.
    Export {
        /// Output directory; receives `fixtures/` and `manifolds/`.
        dir: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Exit code 1.
    Semantic(String),
    /// Exit code 2.
    Input(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Semantic(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn semantic(e: impl std::fmt::Display) -> CliError {
    CliError::Semantic(e.to_string())
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

/// A fixture name or a category file.
pub fn resolve_category(src: &str) -> Result<CategoryData, CliError> {
    if fixture_names().contains(&src) {
        return fixture(src).map_err(semantic);
    }
    if Path::new(src).exists() {
        return CategoryData::load(Path::new(src)).map_err(input);
    }
    Err(input(format!("{src}: neither a fixture nor a readable file")))
}

/// A builtin name or a diagram file.
pub fn resolve_manifold(src: &str) -> Result<KirbyDiagram, CliError> {
    if Path::new(src).exists() {
        return KirbyDiagram::load(Path::new(src)).map_err(input);
    }
    builtin(src).map_err(|e| input(format!("{src}: {e}")))
}

/// Float echo of an exact value.
pub fn approx_string(v: &Scalar) -> String {
    let z = v.to_complex();
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    let fmt = |x: f64| {
        let s = format!("{x:.12}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    };
    if im == 0.0 {
        fmt(re)
    } else if re == 0.0 {
        format!("{}i", fmt(im))
    } else {
        format!("{}{}{}i", fmt(re), if im < 0.0 { "-" } else { "+" }, fmt(im.abs()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContributionOut {
    pub g: std::collections::BTreeMap<String, String>,
    pub value: Scalar,
    pub exact: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantOut {
    pub category: String,
    pub manifold: String,
    pub value: Scalar,
    pub exact: String,
    pub approx: [f64; 2],
    pub normalization: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contributions: Option<Vec<ContributionOut>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    Mismatch,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub manifold: String,
    pub fixture: String,
    pub computed: Option<Scalar>,
    pub formula: Option<Scalar>,
    pub status: RowStatus,
}

/// qdim of the Kirby colour of the transparent part of C_e.
pub fn transparent_dim(c: &CategoryData) -> Scalar {
    c.symmetric_centre()
        .into_iter()
        .fold(c.zero(), |acc, x| acc + c.qdim(x) * c.qdim(x))
}

/// The table's closed-form value, or the reason it does not apply.
pub fn table2_formula(manifold: &str, c: &CategoryData) -> Result<Scalar, String> {
    let om = c.global_dim();
    let oe = c.graded_dim(0);
    let ot = transparent_dim(c);
    let g = c.int(c.group().order as i64);
    let div = |a: Scalar, b: &Scalar| a.try_div(b).map_err(|e| e.to_string());
    match manifold {
        "s4" => Ok(c.one()),
        "s1_x_s3" => Ok(&g * &om),
        "s2_x_s2" => div(&ot * &oe, &(&om * &om)),
        "cp2_plus" => div(c.gauss_sum(1), &om),
        "cp2_minus" => div(c.gauss_sum(-1), &om),
        "s1_x_s1_x_s2" => {
            if c.is_faithful() {
                Ok(&g * &g * c.int(c.symmetric_centre().len() as i64) * oe)
            } else {
                Err("n/a (faithful grading required)".into())
            }
        }
        "s1_x_s3#s1_x_s3#s2_x_s2" => Ok(&g * &g * ot * oe),
        other => Err(format!("no table row for {other}")),
    }
}

pub const TABLE2_MANIFOLDS: [&str; 7] = [
    "s4",
    "s1_x_s3",
    "s2_x_s2",
    "cp2_plus",
    "cp2_minus",
    "s1_x_s1_x_s2",
    "s1_x_s3#s1_x_s3#s2_x_s2",
];

pub fn table2_rows(threads: Option<usize>) -> Result<Vec<Table2Row>, CliError> {
    let opts = InvariantOptions {
        keep_contributions: false,
        threads,
    };
    let mut rows = Vec::new();
    for m in TABLE2_MANIFOLDS {
        let k = builtin(m).map_err(semantic)?;
        for f in fixture_names() {
            let c = fixture(f).map_err(semantic)?;
            let row = match table2_formula(m, &c) {
                Err(reason) => Table2Row {
                    manifold: m.into(),
                    fixture: f.to_string(),
                    computed: None,
                    formula: None,
                    status: RowStatus::NotApplicable(reason),
                },
                Ok(formula) => {
                    let v = invariant_with(&k, &c, &opts).map_err(semantic)?.value;
                    let status = if v == formula {
                        RowStatus::Match
                    } else {
                        RowStatus::Mismatch
                    };
                    Table2Row {
                        manifold: m.into(),
                        fixture: f.to_string(),
                        computed: Some(v),
                        formula: Some(formula),
                        status,
                    }
                }
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimsOut {
    pub category: String,
    pub s3: Scalar,
    pub s1_x_s2: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DwOut {
    pub manifold: String,
    pub category: String,
    pub presentation: GroupPresentation,
    pub hom_count: u64,
    /// `None` when the category is not concentrated in trivial degree with trivial action.
    pub factorization: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressStep {
    pub step: usize,
    pub category: String,
    pub value: Scalar,
    pub matches: bool,
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(semantic)?;
    writeln!(out, "{s}").map_err(io_err)
}

fn cmd_validate(path: &Path, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let passed = if value.get("word").is_some() {
        let k = KirbyDiagram::from_json(&text).map_err(input)?;
        let r = validate_diagram(&k);
        match format {
            Format::Json => emit_json(out, &r)?,
            Format::Text => writeln!(out, "{r}").map_err(io_err)?,
        }
        r.passed()
    } else {
        let c = CategoryData::from_json_str(&text).map_err(input)?;
        let r = validate_category(&c);
        match format {
            Format::Json => emit_json(out, &r)?,
            Format::Text => writeln!(out, "{r}").map_err(io_err)?,
        }
        r.passed()
    };
    if passed {
        Ok(())
    } else {
        Err(CliError::Semantic(String::new()))
    }
}

fn cmd_invariant(
    category: &str,
    manifold: &str,
    keep: bool,
    threads: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let c = resolve_category(category)?;
    let k = resolve_manifold(manifold)?;
    let r = invariant_with(
        &k,
        &c,
        &InvariantOptions {
            keep_contributions: keep,
            threads,
        },
    )
    .map_err(semantic)?;
    let z = r.value.to_complex();
    let grp = c.group();
    let res = InvariantOut {
        category: c.name().to_string(),
        manifold: k.name.clone(),
        exact: r.value.to_string(),
        approx: [z.re, z.im],
        value: r.value.clone(),
        normalization: r.normalization.clone(),
        contributions: r.contributions.map(|cs| {
            cs.into_iter()
                .map(|ct| ContributionOut {
                    g: ct.g.iter().map(|(h, &g)| (h.clone(), grp.name(g))).collect(),
                    exact: ct.value.to_string(),
                    value: ct.value,
                })
                .collect()
        }),
    };
    match format {
        Format::Json => emit_json(out, &res),
        Format::Text => {
            let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
            w(out, format!("{} on {}", res.manifold, res.category))?;
            w(out, format!("I = {}", res.exact))?;
            w(out, format!("  ≈ {}", approx_string(&res.value)))?;
            if let Some(cs) = &res.contributions {
                w(out, format!("normalization {}", res.normalization))?;
                for ct in cs {
                    let g: Vec<String> = ct.g.iter().map(|(h, g)| format!("{h}={g}")).collect();
                    w(out, format!("  [{}] {}", g.join(", "), ct.exact))?;
                }
            }
            Ok(())
        }
    }
}

fn cmd_table2(threads: Option<usize>, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = table2_rows(threads)?;
    match format {
        Format::Json => emit_json(out, &rows)?,
        Format::Text => {
            for r in &rows {
                let line = match &r.status {
                    RowStatus::NotApplicable(why) => format!("{:26} {:20} {why}", r.manifold, r.fixture),
                    st => format!(
                        "{:26} {:20} {} = {} {}",
                        r.manifold,
                        r.fixture,
                        r.computed.as_ref().unwrap(),
                        r.formula.as_ref().unwrap(),
                        if *st == RowStatus::Match { "ok" } else { "MISMATCH" }
                    ),
                };
                writeln!(out, "{line}").map_err(io_err)?;
            }
        }
    }
    let bad = rows.iter().filter(|r| r.status == RowStatus::Mismatch).count();
    if bad > 0 {
        return Err(CliError::Semantic(format!("{bad} table rows disagree")));
    }
    Ok(())
}

fn cmd_dims(category: &str, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let c = resolve_category(category)?;
    let res = DimsOut {
        category: c.name().to_string(),
        s3: state_space_dim(&c, ThreeManifold::S3).map_err(semantic)?,
        s1_x_s2: state_space_dim(&c, ThreeManifold::S1xS2).map_err(semantic)?,
    };
    match format {
        Format::Json => emit_json(out, &res),
        Format::Text => writeln!(
            out,
            "{}\n  dim Z({}) = {}\n  dim Z({}) = {}",
            res.category,
            ThreeManifold::S3.name(),
            res.s3,
            ThreeManifold::S1xS2.name(),
            res.s1_x_s2
        )
        .map_err(io_err),
    }
}

fn cmd_dw(category: &str, manifold: &str, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let c = resolve_category(category)?;
    let k = resolve_manifold(manifold)?;
    let p = pi1_presentation(&k);
    let hom_count = dw_count(&p, c.group());
    let factorization = if c.is_trivially_graded() && c.has_trivial_action() {
        Some(dw_factorization_check(&k, &c).map_err(semantic)?)
    } else {
        None
    };
    let res = DwOut {
        manifold: k.name.clone(),
        category: c.name().to_string(),
        presentation: p,
        hom_count,
        factorization,
    };
    match format {
        Format::Json => emit_json(out, &res)?,
        Format::Text => {
            let f = match res.factorization {
                Some(true) => "holds".to_string(),
                Some(false) => "FAILS".to_string(),
                None => "n/a (needs trivial degree and trivial action)".to_string(),
            };
            writeln!(
                out,
                "π₁({}) = {}\n|Hom(π₁, G)| = {}\nI = |Hom|·ĈY: {f}",
                res.manifold, res.presentation, res.hom_count
            )
            .map_err(io_err)?;
        }
    }
    if res.factorization == Some(false) {
        return Err(CliError::Semantic("factorization fails".into()));
    }
    Ok(())
}

fn cmd_moves_regress(
    manifold: &str,
    script: &Path,
    category: Option<&str>,
    threads: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let k = resolve_manifold(manifold)?;
    let text = std::fs::read_to_string(script).map_err(|e| input(format!("{}: {e}", script.display())))?;
    let moves: Vec<MoveRecord> = serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", script.display())))?;
    let cats: Vec<CategoryData> = match category {
        Some(s) => vec![resolve_category(s)?],
        None => fixture_names()
            .iter()
            .map(|n| fixture(n).map_err(semantic))
            .collect::<Result<_, _>>()?,
    };
    let mut diagrams = vec![k];
    for (i, m) in moves.iter().enumerate() {
        let next = apply(diagrams.last().unwrap(), m).map_err(|e| semantic(format!("step {}: {e}", i + 1)))?;
        diagrams.push(next);
    }
    let opts = InvariantOptions {
        keep_contributions: false,
        threads,
    };
    let mut steps = Vec::new();
    for c in &cats {
        let base = invariant_with(&diagrams[0], c, &opts).map_err(semantic)?.value;
        for (i, d) in diagrams.iter().enumerate() {
            let v = if i == 0 {
                base.clone()
            } else {
                invariant_with(d, c, &opts).map_err(semantic)?.value
            };
            steps.push(RegressStep {
                step: i,
                category: c.name().to_string(),
                matches: v == base,
                value: v,
            });
        }
    }
    match format {
        Format::Json => emit_json(out, &steps)?,
        Format::Text => {
            for s in &steps {
                let what = if s.step == 0 {
                    "start".to_string()
                } else {
                    format!("{:?}", moves[s.step - 1])
                };
                writeln!(
                    out,
                    "{:20} {:3} {:8} {} {what}",
                    s.category,
                    s.step,
                    if s.matches { "same" } else { "CHANGED" },
                    s.value
                )
                .map_err(io_err)?;
            }
        }
    }
    if steps.iter().any(|s| !s.matches) {
        return Err(CliError::Semantic("invariant changed under a move".into()));
    }
    Ok(())
}

fn cmd_export(dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let fdir = dir.join("fixtures");
    let mdir = dir.join("manifolds");
    std::fs::create_dir_all(&fdir).map_err(io_err)?;
    std::fs::create_dir_all(&mdir).map_err(io_err)?;
    for f in fixture_names() {
        let c = fixture(f).map_err(semantic)?;
        let p = fdir.join(format!("{f}.json"));
        std::fs::write(&p, c.to_json_string() + "\n").map_err(io_err)?;
        writeln!(out, "{}", p.display()).map_err(io_err)?;
    }
    for m in BUILTIN_NAMES {
        let k = builtin(m).map_err(semantic)?;
        let p = mdir.join(format!("{m}.json"));
        std::fs::write(&p, k.to_json() + "\n").map_err(io_err)?;
        writeln!(out, "{}", p.display()).map_err(io_err)?;
    }
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { path } => cmd_validate(path, fmt, out),
        Command::Invariant {
            category,
            manifold,
            keep_contributions,
        } => cmd_invariant(category, manifold, *keep_contributions, cli.threads, fmt, out),
        Command::Table2 => cmd_table2(cli.threads, fmt, out),
        Command::Dims { category } => cmd_dims(category, fmt, out),
        Command::Dw { category, manifold } => cmd_dw(category, manifold, fmt, out),
        Command::MovesRegress {
            manifold,
            script,
            category,
        } => cmd_moves_regress(manifold, script, category.as_deref(), cli.threads, fmt, out),
        Command::Export { dir } => cmd_export(dir, out),
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::Semantic(m) | CliError::Input(m) if !m.is_empty() => {
                    let _ = writeln!(err, "error: {m}");
                }
                _ => {}
            }
            e.code()
        }
    }
}
