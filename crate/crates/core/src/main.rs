use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cyclocode::config::Config;
use cyclocode::conv::check_reduced_basic;
use cyclocode::cosets::{all_cosets_capped, complementary, gap_stat, modulus, parity_class};
use cyclocode::css::CssFamily;
use cyclocode::cyclic::code_from_cosets;
use cyclocode::oracle::{min_distance_exact, Outcome};
use cyclocode::report::{Discrepancy, TableRow};
use cyclocode::tables::{self, build_conv_family, build_css, TableOptions};
use cyclocode::verify::{self, prime_powers, VerifyOptions, VerifyReport, VerifyRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "" | "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(format!("unknown format `{other}` (text, json or csv)")),
    }
}

/// Cyclotomic cosets, cyclic codes and the quantum and convolutional code
/// families built from them.
#[derive(Debug, Parser)]
#[command(name = "cyclocode", version)]
struct Cli {
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Codeword budget for exhaustive searches; 0 skips them.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for sampled searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// key=value configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the q-cyclotomic cosets modulo q^m - 1.
    Cosets {
        q: u64,
        m: u32,
        /// Add gap, complementary coset and parity columns.
        #[arg(long)]
        properties: bool,
    },
    /// Build the cyclic code whose defining set is the union of the cosets
    /// of the given exponents.
    Code {
        q: u64,
        m: u32,
        #[arg(allow_negative_numbers = true, value_delimiter = ',')]
        exponents: Vec<i64>,
    },
    /// Build a CSS code from one of the families.
    Css {
        #[arg(value_enum)]
        family: CssKind,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Designed distance; defaults to q.
        #[arg(long)]
        c: Option<u64>,
    },
    /// Build a unit-memory convolutional code from one of the families.
    Conv {
        #[arg(value_enum)]
        family: ConvKind,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        i: Option<u64>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Regenerate a parameter table.
    Table {
        which: u8,
        /// Only recompute parameters; no exhaustive checks.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Run verification sweeps.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Largest q for the coset and cyclic sweeps.
        #[arg(long)]
        qmax: Option<u64>,
        /// Largest m for the coset sweep.
        #[arg(long)]
        mmax: Option<u32>,
        /// Explicit field sizes (comma separated or repeated).
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Largest input degree for free-distance searches.
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Allow partial free-distance searches beyond the budget.
    #[arg(long)]
    partial: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CssKind {
    Good1,
    Good2,
    Good3,
    Es,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConvKind {
    Main,
    B,
    C,
    D,
    E,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scope {
    Cosets,
    Cyclic,
    Css,
    Conv,
    All,
}

#[derive(Debug, Serialize)]
struct Envelope<'a, T> {
    tool_version: &'a str,
    command: &'a str,
    rows: &'a [T],
    discrepancies: &'a [Discrepancy],
}

#[derive(Debug, Serialize)]
struct CosetRow {
    rep: u64,
    size: usize,
    elements: String,
    gap: Option<u64>,
    complementary: Option<u64>,
    parity: Option<String>,
}

#[derive(Debug, Serialize)]
struct CodeRow {
    q: u64,
    m: u32,
    n: u64,
    k: u64,
    defining_set: String,
    bch_bound: u64,
    contains_dual: bool,
    distance: Option<u64>,
    generator: String,
}

struct Output<T> {
    command: String,
    rows: Vec<T>,
    discrepancies: Vec<Discrepancy>,
    text: String,
    warnings: Vec<String>,
}

fn render<T: Serialize>(fmt: Format, out: &Output<T>) -> Result<String, String> {
    match fmt {
        Format::Text => Ok(out.text.clone()),
        Format::Json => {
            let env = Envelope {
                tool_version: env!("CARGO_PKG_VERSION"),
                command: &out.command,
                rows: &out.rows,
                discrepancies: &out.discrepancies,
            };
            serde_json::to_string_pretty(&env)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &out.rows {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, out: Output<T>) -> Result<ExitCode, String> {
    let body = render(cli.format, &out)?;
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string())?,
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    for d in &out.discrepancies {
        eprintln!("discrepancy: {d}");
    }
    Ok(if out.discrepancies.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn check_field(cfg: &Config, q: u64, m: u32) -> Result<(), String> {
    match modulus(q, m) {
        Some(n) if n < cfg.field_cap => Ok(()),
        _ => Err(format!("q^m = {q}^{m} exceeds the field cap {}", cfg.field_cap)),
    }
}

fn table_text(rows: &[TableRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let mut tag = format!("{} q={}", r.family, r.q);
        if let Some(m) = r.m.filter(|_| r.table != 3) {
            let _ = write!(tag, " m={m}");
        }
        if let Some(c) = r.c {
            let _ = write!(tag, " c={c}");
        }
        if let Some(i) = r.i {
            let _ = write!(tag, " i={i}");
        }
        let _ = write!(s, "{:<38} {:<28} {}", r.params, tag, r.status);
        if r.computed_bound > r.claimed_bound {
            let _ = write!(s, "  (computed bound {})", r.computed_bound);
        }
        if let Some(n) = &r.note {
            let _ = write!(s, "  [{n}]");
        }
        s.push('\n');
    }
    s
}

fn cmd_cosets(cfg: &Config, q: u64, m: u32, properties: bool) -> Result<Output<CosetRow>, String> {
    let cosets = all_cosets_capped(q, m, cfg.modulus_cap).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let rows: Vec<CosetRow> = cosets
        .iter()
        .map(|c| {
            let elements = c
                .sorted_elements()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            let _ = write!(text, "C_{} = {{{}}}", c.rep(), elements.replace(' ', ", "));
            let mut row = CosetRow {
                rep: c.rep(),
                size: c.cardinality(),
                elements,
                gap: None,
                complementary: None,
                parity: None,
            };
            if properties {
                row.gap = gap_stat(c);
                row.complementary = Some(complementary(c).rep());
                row.parity = parity_class(c).ok().map(|p| format!("{p:?}").to_lowercase());
                let _ = write!(text, "  size={}", row.size);
                if let Some(g) = row.gap {
                    let _ = write!(text, "  L={g}");
                }
                let _ = write!(text, "  bar=C_{}", complementary(c).rep());
                if let Some(p) = &row.parity {
                    let _ = write!(text, "  {p}");
                }
            }
            text.push('\n');
            row
        })
        .collect();
    let _ = writeln!(text, "{} cosets modulo {}", rows.len(), modulus(q, m).unwrap_or(0));
    Ok(Output {
        command: format!("cosets {q} {m}"),
        rows,
        discrepancies: vec![],
        text,
        warnings: vec![],
    })
}

fn cmd_code(cfg: &Config, budget: u64, q: u64, m: u32, exps: &[i64]) -> Result<Output<CodeRow>, String> {
    check_field(cfg, q, m)?;
    let code = code_from_cosets(q, m, exps).map_err(|e| e.to_string())?;
    let distance = min_distance_exact(&code, budget).ok();
    let row = CodeRow {
        q,
        m,
        n: code.n(),
        k: code.dimension(),
        defining_set: code.defining_set().to_string(),
        bch_bound: code.bch_bound(),
        contains_dual: code.contains_dual(),
        distance: distance.map(|d| d.0),
        generator: code.generator().display(code.field()),
    };
    let mut text = format!("{code}\nZ = {}\ng(x) = {}\n", row.defining_set, row.generator);
    let _ = writeln!(text, "contains its dual: {}", row.contains_dual);
    match distance {
        Some((d, route)) => {
            let _ = writeln!(text, "minimum distance: {d} ({route:?})");
        }
        None => text.push_str("minimum distance: over budget\n"),
    }
    Ok(Output {
        command: format!("code {q} {m}"),
        rows: vec![row],
        discrepancies: vec![],
        text,
        warnings: vec![],
    })
}

fn cmd_css(cfg: &Config, budget: u64, kind: CssKind, q: u64, m: u32, c: Option<u64>) -> Result<Output<TableRow>, String> {
    let (family, m) = match kind {
        CssKind::Good1 => (CssFamily::Good1, 2),
        CssKind::Good2 => (CssFamily::Good2, 2),
        CssKind::Good3 => (CssFamily::Good3, m),
        CssKind::Es => (CssFamily::Es, m),
    };
    check_field(cfg, q, m)?;
    let p = build_css(family, q, m, c.unwrap_or(q)).map_err(|e| e.to_string())?;
    let opts = TableOptions {
        oracle_budget: Some(budget),
        ..TableOptions::default()
    };
    let (row, discrepancies) = tables::css_row(0, &p, &opts);
    let mut text = table_text(std::slice::from_ref(&row));
    let _ = writeln!(
        text,
        "C1: {}  C2: {}  C2^perp: {}",
        p.outer(),
        p.inner(),
        p.inner_dual()
    );
    Ok(Output {
        command: format!("css {family}"),
        rows: vec![row],
        discrepancies,
        text,
        warnings: p.warnings().to_vec(),
    })
}

fn cmd_conv(budget: u64, kind: ConvKind, q: u64, i: Option<u64>, search: &SearchArgs) -> Result<Output<TableRow>, String> {
    use cyclocode::conv::ConvFamily;
    let idx = || i.ok_or_else(|| "families c and d need --i".to_string());
    let family = match kind {
        ConvKind::Main => ConvFamily::Main,
        ConvKind::B => ConvFamily::B,
        ConvKind::C => ConvFamily::C(idx()?),
        ConvKind::D => ConvFamily::D(idx()?),
        ConvKind::E => ConvFamily::E,
    };
    let code = build_conv_family(family, q).map_err(|e| e.to_string())?;
    let opts = TableOptions {
        oracle_budget: Some(budget),
        conv_degree: search.degree,
    };
    let (row, discrepancies) = tables::conv_row(&code, &opts);
    let basic = check_reduced_basic(code.field(), q, code.generator());
    let mut text = table_text(std::slice::from_ref(&row));
    let _ = writeln!(
        text,
        "kappa = {}  rank H0 = {}  rank H1 = {}  d0 = {}  d1 = {}  d = {}",
        code.kappa(),
        basic.rank_h0,
        basic.max_rank_higher,
        code.d0(),
        code.d1(),
        code.d()
    );
    let _ = writeln!(text, "basic: {:?}  reduced: {}", basic.basic, basic.reduced);
    Ok(Output {
        command: format!("conv {}", family.name()),
        rows: vec![row],
        discrepancies,
        text,
        warnings: vec![],
    })
}

fn cmd_table(budget: Option<u64>, cfg: &Config, which: u8, no_oracle: bool) -> Result<Output<TableRow>, String> {
    let opts = TableOptions {
        oracle_budget: (!no_oracle).then(|| budget.unwrap_or(cfg.table_budget)),
        ..TableOptions::default()
    };
    let report = tables::table(which, &opts).map_err(|e| e.to_string())?;
    let skipped = report
        .rows
        .iter()
        .filter(|r| r.status == cyclocode::report::Status::OracleSkipped)
        .count();
    let warnings = if skipped > 0 {
        vec![format!("{skipped} rows beyond the oracle budget (oracle-skipped)")]
    } else {
        vec![]
    };
    Ok(Output {
        command: format!("table {which}"),
        text: table_text(&report.rows),
        rows: report.rows,
        discrepancies: report.discrepancies,
        warnings,
    })
}

fn verify_text(report: &VerifyReport) -> String {
    let mut s = String::new();
    for r in &report.rows {
        let outcome = match r.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "skipped",
        };
        let _ = write!(s, "{:<7} {:<7} {:<26} {}", outcome, r.scope, r.check, r.subject);
        if let Some(d) = &r.detail {
            let _ = write!(s, "  ({d})");
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "{} passed, {} failed, {} skipped",
        report.count(Outcome::Pass),
        report.count(Outcome::Fail),
        report.count(Outcome::Skipped)
    );
    s
}

struct VerifyArgs<'a> {
    scope: Scope,
    qmax: Option<u64>,
    mmax: Option<u32>,
    q: &'a [u64],
    search: &'a SearchArgs,
}

fn cmd_verify(cfg: &Config, budget: u64, seed: u64, a: VerifyArgs<'_>) -> Output<VerifyRow> {
    let opts = VerifyOptions {
        budget,
        modulus_cap: cfg.modulus_cap,
        conv_degree: a.search.degree,
        allow_partial: a.search.partial,
        seed,
    };
    let pick = |default: Vec<u64>| {
        if !a.q.is_empty() {
            a.q.to_vec()
        } else if let Some(qmax) = a.qmax {
            default.into_iter().filter(|&q| q <= qmax).collect()
        } else {
            default
        }
    };
    let mut report = VerifyReport::default();
    let run = |s: Scope| matches!(a.scope, Scope::All) || std::mem::discriminant(&a.scope) == std::mem::discriminant(&s);
    if run(Scope::Cosets) {
        let qs = pick(prime_powers(2, a.qmax.unwrap_or(13)));
        let ms: Vec<u32> = (2..=a.mmax.unwrap_or(4)).collect();
        report.extend(verify::verify_cosets(&qs, &ms, &opts));
    }
    if run(Scope::Cyclic) {
        let qs = pick(prime_powers(2, a.qmax.unwrap_or(9)));
        report.extend(verify::verify_cyclic(&qs, 80, &opts));
    }
    if run(Scope::Css) {
        report.extend(verify::verify_css(&pick(vec![3, 4, 5]), &opts));
    }
    if run(Scope::Conv) {
        report.extend(verify::verify_conv(&pick(vec![4, 5, 7, 8]), &opts));
    }
    let skipped = report.count(Outcome::Skipped);
    let warnings = if skipped > 0 {
        vec![format!("{skipped} checks skipped (hypothesis not met or over budget)")]
    } else {
        vec![]
    };
    Output {
        command: format!("verify {:?}", a.scope).to_lowercase(),
        text: verify_text(&report),
        rows: report.rows,
        discrepancies: report.discrepancies,
        warnings,
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| e.to_string())?,
        None => Config::default(),
    };
    if let Some(j) = cli.jobs.or(cfg.jobs) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let budget = cli.budget.unwrap_or(cfg.budget);
    let seed = cli.seed.unwrap_or(cfg.seed);
    match &cli.command {
        Command::Cosets { q, m, properties } => emit(cli, cmd_cosets(&cfg, *q, *m, *properties)?),
        Command::Code { q, m, exponents } => emit(cli, cmd_code(&cfg, budget, *q, *m, exponents)?),
        Command::Css { family, q, m, c } => emit(cli, cmd_css(&cfg, budget, *family, *q, *m, *c)?),
        Command::Conv { family, q, i, search } => emit(cli, cmd_conv(budget, *family, *q, *i, search)?),
        Command::Table { which, no_oracle } => emit(cli, cmd_table(cli.budget, &cfg, *which, *no_oracle)?),
        Command::Verify {
            scope,
            qmax,
            mmax,
            q,
            search,
        } => emit(
            cli,
            cmd_verify(
                &cfg,
                budget,
                seed,
                VerifyArgs {
                    scope: *scope,
                    qmax: *qmax,
                    mmax: *mmax,
                    q,
                    search,
                },
            ),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
