//! Command-line interface.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankcodes_core::bounds::{
    asymptotic_preset, asymptotic_sweep, bound_report, BoundKind, ExactValues, NoExact,
};
use rankcodes_core::cdc::{cdc_pair_to_crc, crc_to_cdc, image_distances, Side};
use rankcodes_core::counting::{mrd_rank_distribution, JR_DEFAULT_CAP};
use rankcodes_core::gf::FieldSpec;
use rankcodes_core::linalg::rank_distance_bounds;
use rankcodes_core::rankcodes::{
    build_gabidulin, CosetConstruction, GabidulinSpec, ENUM_DEFAULT_CAP, PAIR_DEFAULT_CAP,
};
use rankcodes_core::search::{
    exact_a_c, exact_a_r, Metric, SearchOptions, SearchOracle, NODE_DEFAULT_BUDGET, VERTEX_DEFAULT_BUDGET,
};

use crate::cache::{self, ExactValuesFile, EXACT_FILE};
use crate::codefile::{verify, CodeBody, CodeFile};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "rankcodes", version, about = "Constant-rank and constant-dimension code toolkit")]
pub struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for independent searches; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write it with a verified header.
    Construct(ConstructArgs),
    /// Recheck every claim in a code file.
    Verify(VerifyArgs),
    /// Every applicable bound on A_R(q,m,n,d,r).
    Bounds(BoundsArgs),
    /// Exact optimum by clique search, with a witness file.
    Search(SearchArgs),
    /// Asymptotic rate bounds along a sweep of the relative distance.
    Asympt(AsymptArgs),
    /// Rank distribution of a Gabidulin code against the closed form.
    Distro(DistroArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Gabidulin,
    Shell,
    CosetCrc,
    CrcToCdc,
    CdcPairToCrc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Rows,
    Cols,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    R,
    C,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub kind: ConstructKind,
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u32,
    #[arg(short = 'm')]
    pub m: Option<usize>,
    #[arg(short = 'n')]
    pub n: Option<usize>,
    #[arg(short = 'd')]
    pub d: Option<usize>,
    #[arg(short = 'r')]
    pub r: Option<usize>,
    /// Field modulus digits, low to high (e.g. 10011).
    #[arg(long)]
    pub poly: Option<String>,
    /// Input CRC for `crc-to-cdc`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SideArg::Rows)]
    pub side: SideArg,
    /// CDC of column spaces (in GF(q)^m) for `cdc-pair-to-crc`.
    #[arg(long)]
    pub cols: Option<PathBuf>,
    /// CDC of row spaces (in GF(q)^n) for `cdc-pair-to-crc`.
    #[arg(long)]
    pub rows: Option<PathBuf>,
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Also test the rank-distance sandwich on this many random codeword pairs.
    #[arg(long, default_value_t = 0)]
    pub sandwich_samples: usize,
    #[arg(long, default_value_t = PAIR_DEFAULT_CAP)]
    pub pair_cap: u64,
}

#[derive(Debug, Args)]
pub struct SearchBudget {
    #[arg(long, default_value_t = VERTEX_DEFAULT_BUDGET)]
    pub vertex_budget: usize,
    #[arg(long, default_value_t = NODE_DEFAULT_BUDGET)]
    pub node_budget: u64,
    /// Fix one vertex (valid because the graphs are vertex-transitive).
    #[arg(long)]
    pub symmetry: bool,
    /// Do not start from an algebraic construction.
    #[arg(long)]
    pub no_seed: bool,
}

impl SearchBudget {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            vertex_budget: self.vertex_budget,
            node_budget: self.node_budget,
            symmetry: self.symmetry,
            seed_constructions: !self.no_seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u64,
    #[arg(short = 'm')]
    pub m: usize,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'r')]
    pub r: usize,
    #[arg(short = 'd')]
    pub d: usize,
    #[arg(long)]
    pub csv: bool,
    /// Run exact searches for the values the report needs.
    #[arg(long)]
    pub search: bool,
    /// Use exact values from a summary table written by `search`.
    #[arg(long)]
    pub exact_values: Option<PathBuf>,
    #[command(flatten)]
    pub budget: SearchBudget,
    /// Largest matrix space enumerated by the sphere-intersection oracle.
    #[arg(long, default_value_t = JR_DEFAULT_CAP)]
    pub jr_cap: u64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u32,
    /// Rows; required for the rank metric.
    #[arg(short = 'm')]
    pub m: Option<usize>,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'r')]
    pub r: usize,
    /// Minimum distance; a comma-separated list searches several.
    #[arg(short = 'd', value_delimiter = ',', required = true)]
    pub d: Vec<usize>,
    #[arg(long, value_enum, ignore_case = true, default_value_t = MetricArg::R)]
    pub metric: MetricArg,
    #[command(flatten)]
    pub budget: SearchBudget,
    /// Directory for `witnesses/` and `exact-values.tsv`.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Print results only.
    #[arg(long)]
    pub no_write: bool,
}

#[derive(Debug, Args)]
pub struct AsymptArgs {
    /// fig1, fig2 or fig3; without it and without --nu/--rho all three are emitted.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub nu: Option<BigRational>,
    #[arg(long)]
    pub rho: Option<BigRational>,
    #[arg(long, default_value_t = 20)]
    pub delta_steps: usize,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct DistroArgs {
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u32,
    #[arg(short = 'm')]
    pub m: usize,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'd')]
    pub d: usize,
    #[arg(long)]
    pub poly: Option<String>,
}

/// Text for stdout and stderr.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify_cmd(a, cli.seed),
        Command::Bounds(a) => bounds(a),
        Command::Search(a) => search(a, cli.jobs),
        Command::Asympt(a) => asympt(a),
        Command::Distro(a) => distro(a),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{what} needs {flag}")))
}

fn field_for(q: u32, m: usize, poly: Option<&str>) -> CliResult<FieldSpec> {
    match poly {
        None => Ok(FieldSpec::default_for(q, m)?),
        Some(p) => Ok(format!("gf:p={q},m={m},poly={p}").parse()?),
    }
}

fn emit(file: &CodeFile, out: Option<&Path>, note: String) -> CliResult<Output> {
    match out {
        Some(path) => {
            file.write(path)?;
            Ok(Output {
                stdout: format!("wrote {}: {}\n", path.display(), file.header()),
                stderr: note,
            })
        }
        None => Ok(Output {
            stdout: file.render(),
            stderr: note,
        }),
    }
}

fn construct(a: &ConstructArgs) -> CliResult<Output> {
    let what = format!("construct {:?}", a.kind).to_lowercase();
    let mut note = String::new();
    let file = match a.kind {
        ConstructKind::Gabidulin | ConstructKind::Shell | ConstructKind::CosetCrc => {
            let (m, n, d) = (need(a.m, "-m", &what)?, need(a.n, "-n", &what)?, need(a.d, "-d", &what)?);
            let field = field_for(a.q, m, a.poly.as_deref())?;
            match a.kind {
                ConstructKind::Gabidulin => {
                    let code = build_gabidulin(&GabidulinSpec::standard(field.clone(), n, d)?)?;
                    CodeFile::stamped(CodeBody::Rank(code.to_rank_code(ENUM_DEFAULT_CAP)?), Some(field), PAIR_DEFAULT_CAP)?
                }
                ConstructKind::Shell => {
                    let r = need(a.r, "-r", &what)?;
                    let code = build_gabidulin(&GabidulinSpec::standard(field.clone(), n, d)?)?;
                    let shell = code.rank_shell(r, ENUM_DEFAULT_CAP)?;
                    CodeFile::stamped(CodeBody::ConstantRank(shell), Some(field), PAIR_DEFAULT_CAP)?
                }
                _ => {
                    let r = need(a.r, "-r", &what)?;
                    let c = CosetConstruction::new(field.clone(), n, d, r)?;
                    let s = c.search(ENUM_DEFAULT_CAP)?;
                    let coeffs: Vec<String> = s.best_message.iter().map(|e| format!("{:?}", e.coeffs())).collect();
                    note = format!(
                        "translate c' = {}; sigma total = {}; guarantee = {}\n",
                        coeffs.join(" "),
                        s.sigma_total(),
                        s.guarantee
                    );
                    CodeFile::stamped(CodeBody::ConstantRank(s.crc), Some(field), PAIR_DEFAULT_CAP)?
                }
            }
        }
        ConstructKind::CrcToCdc => {
            let input = a.input.as_deref().ok_or_else(|| CliError::Usage(format!("{what} needs --in")))?;
            let src = CodeFile::read(input)?;
            let CodeBody::ConstantRank(crc) = &src.body else {
                return Err(CliError::Usage(format!("{} is not a constant-rank code", input.display())));
            };
            let side = match a.side {
                SideArg::Rows => Side::Rows,
                SideArg::Cols => Side::Cols,
            };
            let img = crc_to_cdc(crc, side)?;
            if !img.injective {
                note = format!("image is not injective: {} codewords map to {} subspaces\n", crc.len(), img.cdc.len());
            }
            CodeFile::stamped(CodeBody::ConstantDimension(img.cdc), None, PAIR_DEFAULT_CAP)?
        }
        ConstructKind::CdcPairToCrc => {
            let read_cdc = |p: &Option<PathBuf>, flag: &str| -> CliResult<_> {
                let path = p.as_deref().ok_or_else(|| CliError::Usage(format!("{what} needs {flag}")))?;
                match CodeFile::read(path)?.body {
                    CodeBody::ConstantDimension(c) => Ok(c),
                    _ => Err(CliError::Usage(format!("{} is not a constant-dimension code", path.display()))),
                }
            };
            let (cols, rows) = (read_cdc(&a.cols, "--cols")?, read_cdc(&a.rows, "--rows")?);
            let crc = cdc_pair_to_crc(&cols, &rows, None)?;
            CodeFile::stamped(CodeBody::ConstantRank(crc), None, PAIR_DEFAULT_CAP)?
        }
    };
    emit(&file, a.out.as_deref(), note)
}

fn verify_cmd(a: &VerifyArgs, seed: u64) -> CliResult<Output> {
    let file = CodeFile::read(&a.file)?;
    let rep = verify(&file, a.pair_cap)?;
    let mut out = String::new();
    for l in &rep.lines {
        let _ = writeln!(out, "{l}");
    }
    let mut failures = rep.failures.clone();
    if let CodeBody::ConstantRank(crc) = &file.body {
        if crc.len() >= 2 {
            let img = image_distances(crc, a.pair_cap)?;
            let _ = writeln!(
                out,
                "images: row-space distance {}, column-space distance {}, sum bound holds: {}",
                img.row_distance, img.col_distance, img.sandwich_holds
            );
            if !img.sandwich_holds {
                failures.push("image-sandwich: image distances contradict the rank distance".into());
            }
        }
        if a.sandwich_samples > 0 && crc.len() >= 2 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let words = crc.codewords();
            let mut bad = 0;
            for _ in 0..a.sandwich_samples {
                let i = rng.gen_range(0..words.len());
                let j = rng.gen_range(0..words.len());
                let (lo, hi) = rank_distance_bounds(&words[i], &words[j])?;
                let dr = words[i].sub(&words[j])?.rank();
                if !(lo <= dr && dr <= hi) {
                    bad += 1;
                }
            }
            let _ = writeln!(out, "pair sandwich: {} samples, {bad} violations", a.sandwich_samples);
            if bad > 0 {
                failures.push(format!("pair-sandwich: {bad} violations"));
            }
        }
    }
    if failures.is_empty() {
        let _ = writeln!(out, "PASS");
        Ok(Output {
            stdout: out,
            stderr: String::new(),
        })
    } else {
        print_failures(out, &failures)
    }
}

fn print_failures(out: String, failures: &[String]) -> CliResult<Output> {
    let mut text = out;
    for f in failures {
        let _ = writeln!(text, "FAIL {f}");
    }
    Err(CliError::WithReport(Box::new(CliError::Verify(failures.join("; "))), text))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn bounds(a: &BoundsArgs) -> CliResult<Output> {
    let mut memo = cache::open_memo(a.jr_cap)?;
    let mut table = match &a.exact_values {
        Some(p) => Some(ExactValuesFile::load(p)?.to_table()),
        None => None,
    };
    let mut oracle = SearchOracle::new(a.budget.options());
    if let Some(t) = &table {
        oracle.table = t.clone();
    }
    let exact: &mut dyn ExactValues = if a.search {
        &mut oracle
    } else if let Some(t) = table.as_mut() {
        t
    } else {
        &mut NoExact
    };
    let rep = bound_report(a.q, a.m, a.n, a.r, a.d, exact, &mut memo)?;
    cache::close_memo(&memo)?;
    let mut out = String::new();
    if a.csv {
        out.push_str("q,m,n,r,d,bound_name,kind,value,provenance\n");
        for e in &rep.entries {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                rep.q,
                rep.m,
                rep.n,
                rep.r,
                rep.d,
                e.name,
                e.kind,
                e.value,
                csv_field(&e.provenance)
            );
        }
    } else {
        let _ = writeln!(out, "A_R(q={}, m={}, n={}, d={}, r={})", rep.q, rep.m, rep.n, rep.d, rep.r);
        let _ = writeln!(out, "  {:<6} {:<26} {:>14}  provenance", "kind", "bound", "value");
        let mut rows: Vec<_> = rep.entries.iter().collect();
        rows.sort_by_key(|e| match e.kind {
            BoundKind::Exact => 0,
            BoundKind::Lower => 1,
            BoundKind::Upper => 2,
        });
        for e in rows {
            let _ = writeln!(out, "  {:<6} {:<26} {:>14}  {}", e.kind.to_string(), e.name, e.value, e.provenance);
        }
        let _ = writeln!(
            out,
            "best lower {}, best upper {}, consistent: {}",
            rep.best_lower(),
            rep.best_upper(),
            if rep.is_consistent() { "yes" } else { "NO" }
        );
        for (name, why) in &rep.skipped {
            let _ = writeln!(out, "skipped {name}: {why}");
        }
    }
    if !rep.violations().is_empty() {
        let list: Vec<String> = rep
            .violations()
            .iter()
            .map(|(lo, hi)| format!("{} lower {} > {} upper {}", lo.name, lo.value, hi.name, hi.value))
            .collect();
        return print_failures(out, &list);
    }
    Ok(Output {
        stdout: out,
        stderr: String::new(),
    })
}

fn witness_name(metric: Metric, q: u32, m: usize, n: usize, r: usize, d: usize) -> String {
    match metric {
        Metric::Rank => format!("witnesses/R_q{q}_m{m}_n{n}_r{r}_d{d}.txt"),
        Metric::Injection => format!("witnesses/C_q{q}_n{n}_r{r}_d{d}.txt"),
    }
}

struct Found {
    d: usize,
    value: BigUint,
    file: CodeFile,
}

fn search_one(a: &SearchArgs, d: usize) -> CliResult<Found> {
    let opts = a.budget.options();
    let (value, body, claimed) = match a.metric {
        MetricArg::R => {
            let m = need(a.m, "-m", "rank-metric search")?;
            let (v, code) = exact_a_r(a.q, m, a.n, d, a.r, &opts)?;
            (v, CodeBody::ConstantRank(code), d)
        }
        MetricArg::C => {
            let (v, code) = exact_a_c(a.q, a.n, a.r, d, &opts)?;
            (v, CodeBody::ConstantDimension(code), d)
        }
    };
    let file = CodeFile::stamped(body, None, PAIR_DEFAULT_CAP)?;
    // revalidate the witness before reporting
    if BigUint::from(file.len()) != value || !file.d.at_least(claimed) {
        return Err(CliError::Verify(format!("witness for d={d} does not meet its claims")));
    }
    Ok(Found { d, value, file })
}

fn search(a: &SearchArgs, jobs: usize) -> CliResult<Output> {
    let metric = match a.metric {
        MetricArg::R => Metric::Rank,
        MetricArg::C => Metric::Injection,
    };
    let m = match metric {
        Metric::Rank => need(a.m, "-m", "rank-metric search")?,
        Metric::Injection => 0,
    };
    let results = run_parallel(&a.d, jobs.max(1), |&d| search_one(a, d));
    let mut out = String::new();
    let mut summary = if a.no_write {
        ExactValuesFile::default()
    } else {
        ExactValuesFile::load(&a.out_dir.join(EXACT_FILE))?
    };
    let mut first_err: Option<CliError> = None;
    for (d, res) in a.d.iter().zip(results) {
        match res {
            Ok(Found { d, value, file }) => {
                let rel = witness_name(metric, a.q, m, a.n, a.r, d);
                if !a.no_write {
                    file.write(&a.out_dir.join(&rel))?;
                    summary.rows.insert((metric, a.q as u64, m, a.n, a.r, d), (value.clone(), rel.clone()));
                }
                let shape = match metric {
                    Metric::Rank => format!("m={m} "),
                    Metric::Injection => String::new(),
                };
                let _ = writeln!(
                    out,
                    "{metric} q={} {shape}n={} r={} d={d} value={value} witness={}",
                    a.q,
                    a.n,
                    a.r,
                    if a.no_write { "-" } else { &rel }
                );
            }
            Err(e) => {
                let _ = writeln!(out, "{metric} q={} n={} r={} d={d} {}", a.q, a.n, a.r, e.one_line());
                first_err.get_or_insert(e);
            }
        }
    }
    if !a.no_write {
        summary.save(&a.out_dir.join(EXACT_FILE))?;
    }
    match first_err {
        Some(e) => Err(CliError::WithReport(Box::new(e), out)),
        None => Ok(Output {
            stdout: out,
            stderr: String::new(),
        }),
    }
}

/// Maps `f` over `items` on up to `jobs` threads, keeping input order.
pub fn run_parallel<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<R>>> = items.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.min(items.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().expect("slot lock") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot lock").expect("every item ran"))
        .collect()
}

fn asympt(a: &AsymptArgs) -> CliResult<Output> {
    let curves: Vec<(BigRational, BigRational)> = match (&a.preset, &a.nu, &a.rho) {
        (Some(p), None, None) => {
            vec![asymptotic_preset(p).ok_or_else(|| CliError::Usage(format!("unknown preset `{p}`; use fig1, fig2 or fig3")))?]
        }
        (None, Some(nu), Some(rho)) => vec![(nu.clone(), rho.clone())],
        (None, None, None) => ["fig1", "fig2", "fig3"]
            .iter()
            .map(|p| asymptotic_preset(p).expect("built-in preset"))
            .collect(),
        _ => return Err(CliError::Usage("give either --preset or both --nu and --rho".into())),
    };
    let mut out = String::new();
    if a.csv {
        out.push_str("nu,rho,delta,lower,upper,exact_flag\n");
    } else {
        let _ = writeln!(out, "{:>6} {:>6} {:>10} {:>12} {:>12} {:>9} {:>9}  regime", "nu", "rho", "delta", "lower", "upper", "~lower", "~upper");
    }
    for (nu, rho) in curves {
        for (pt, b) in asymptotic_sweep(&nu, &rho, a.delta_steps)? {
            if a.csv {
                let _ = writeln!(out, "{},{},{},{},{},{}", pt.nu, pt.rho, pt.delta, b.lower, b.upper, b.exact as u8);
            } else {
                let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
                let _ = writeln!(
                    out,
                    "{:>6} {:>6} {:>10} {:>12} {:>12} {:>9.5} {:>9.5}  {}",
                    pt.nu.to_string(),
                    pt.rho.to_string(),
                    pt.delta.to_string(),
                    b.lower.to_string(),
                    b.upper.to_string(),
                    f(&b.lower),
                    f(&b.upper),
                    b.regime
                );
            }
        }
    }
    Ok(Output {
        stdout: out,
        stderr: String::new(),
    })
}

fn distro(a: &DistroArgs) -> CliResult<Output> {
    let field = field_for(a.q, a.m, a.poly.as_deref())?;
    if a.n > a.m || a.d == 0 || a.d > a.n {
        return Err(CliError::Usage(format!("need 1 <= d <= n <= m, got m={} n={} d={}", a.m, a.n, a.d)));
    }
    let code = build_gabidulin(&GabidulinSpec::standard(field.clone(), a.n, a.d)?)?;
    let hist = code.rank_distribution(ENUM_DEFAULT_CAP)?;
    let mut out = String::new();
    let _ = writeln!(out, "Gabidulin code q={} m={} n={} d={} field={field}", a.q, a.m, a.n, a.d);
    let _ = writeln!(out, "{:>4} {:>14} {:>14}  match", "rank", "enumerated", "closed form");
    let mut bad = Vec::new();
    for (r, count) in hist.iter().enumerate() {
        let formula = if r == 0 {
            BigUint::from(1u32)
        } else if r < a.d {
            BigUint::from(0u32)
        } else {
            mrd_rank_distribution(a.q as u64, a.m, a.n, a.d, r)?
        };
        let ok = *count == formula;
        if !ok {
            bad.push(format!("rank-distribution: rank {r} enumerated {count}, closed form {formula}"));
        }
        let _ = writeln!(out, "{r:>4} {count:>14} {formula:>14}  {}", if ok { "yes" } else { "NO" });
    }
    if !bad.is_empty() {
        return print_failures(out, &bad);
    }
    Ok(Output {
        stdout: out,
        stderr: String::new(),
    })
}
