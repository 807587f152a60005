use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use diffres::certificate;
use diffres::detkit::{self, DetMode, DetValue};
use diffres::diffsys::{self, SystemSpec};
use diffres::harness::{self, oracle};
use diffres::macaulay::{self, PolyMatrix};
use diffres::monomial_sets::{self, MainMonomials, Partition};
use diffres::sparse_lp::{self, Liftings, Move, Perturbation};
use diffres::symcore::{Specialization, System};
use diffres::Error;

#[derive(Parser)]
#[command(name = "diffres", version, about = "Matrix formulations of the differential resultant of two first-order ODE polynomials")]
struct Cli {
    /// TOML file with `liftings` (12 integers) and `delta` (3 rationals).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SpecArgs {
    /// Degree of the first polynomial.
    #[arg(long, default_value_t = 2)]
    d1: u32,
    /// Degree of the second polynomial; must be at least d1.
    #[arg(long, default_value_t = 2)]
    d2: u32,
}

#[derive(Args, Clone)]
struct LpArgs {
    /// Liftings l1..l4 as 12 integers.
    #[arg(long, num_args = 12, allow_negative_numbers = true, value_delimiter = ',')]
    liftings: Option<Vec<i64>>,
    /// Perturbation as 3 rationals, e.g. `1/100`.
    #[arg(long, num_args = 3, value_delimiter = ',')]
    delta: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionKind {
    /// Divisibility cascade on the main monomials.
    Divisibility,
    /// Closed-form multiplier sets.
    ClosedForm,
    /// Row-content partition from the linear programs.
    Lp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Symbolic,
    Exact,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generic polynomials and the rows δf1, δf2, f1, f2.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the column set, main monomials and multiplier sets.
    Sets {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a square matrix from a column partition.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "divisibility")]
        partition: PartitionKind,
        #[command(flatten)]
        lp: LpArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build the Carrà Ferro matrix M(δ, n, m) and report zero columns.
    CarraFerro {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        json: bool,
    },
    /// Certify that the determinant has a unique extremal monomial.
    Certificate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Determinant of the square matrix.
    Det {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// JSON object mapping symbols to rational strings.
        #[arg(long)]
        specialization: Option<PathBuf>,
        /// Seed for a random integer specialization when no file is given.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of 62-bit primes for modular mode.
        #[arg(long, default_value_t = 4)]
        moduli: usize,
        #[arg(long)]
        json: bool,
    },
    /// Row-content partition from the linear programs, one JSON line per point.
    LpPartition {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        lp: LpArgs,
    },
    /// Apply a JSON move list to the row-content partition.
    Moves {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        lp: LpArgs,
        /// JSON list of {"monomial": [e_y, e_y1, e_y2], "from": i, "to": j};
        /// defaults to the published moves for (2,2).
        #[arg(long)]
        moves: Option<PathBuf>,
    },
    /// Iterated Sylvester elimination, compared with the matrix determinant.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        specialization: Option<PathBuf>,
        /// Seed for a random integer specialization when no file is given.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run acceptance checks.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Export the square matrix as JSON, or as CSV under a specialization.
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        specialization: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Lib(Error),
    CheckFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_)
        | Error::Parse(_)
        | Error::UnknownVariable(_)
        | Error::UnassignedSymbol(_)
        | Error::InvalidPerturbation
        | Error::OrderOverflow(_)
        | Error::IllegalMove { .. }
        | Error::BadModulus(_)
        | Error::CapExceeded { .. }
        | Error::DegreeZero => 2,
        _ => 3,
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    liftings: Option<Vec<i64>>,
    delta: Option<Vec<String>>,
}

fn load_config(path: Option<&Path>) -> CliResult<Config> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = read(path)?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> CliResult<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn system_spec(a: SpecArgs) -> CliResult<SystemSpec> {
    Ok(SystemSpec::new(a.d1, a.d2)?)
}

fn lp_settings(lp: &LpArgs, cfg: &Config) -> CliResult<(Liftings, Perturbation)> {
    let lift = match lp.liftings.as_ref().or(cfg.liftings.as_ref()) {
        Some(v) => Liftings::from_flat(v)?,
        None => Liftings::paper(),
    };
    let delta = match lp.delta.as_ref().or(cfg.delta.as_ref()) {
        Some(v) => {
            let parsed: Vec<BigRational> = v
                .iter()
                .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("bad rational {s:?} in delta"))))
                .collect::<CliResult<_>>()?;
            let delta: Perturbation = parsed
                .try_into()
                .map_err(|_| CliError::Usage("delta needs exactly 3 rationals".into()))?;
            sparse_lp::check_delta(&delta)?;
            delta
        }
        None => sparse_lp::default_delta(),
    };
    Ok((lift, delta))
}

fn specialization(spec: &SystemSpec, path: Option<&Path>, seed: u64) -> CliResult<Specialization> {
    let universe = spec.symbol_universe();
    match path {
        Some(p) => {
            let s = Specialization::from_json(&read_json(p)?, Some(&universe))?;
            s.check_covers(universe.iter())?;
            Ok(s)
        }
        None => Ok(detkit::random_specialization(&universe, seed, detkit::PROBE_RANGE)),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn strings<T: ToString>(it: impl IntoIterator<Item = T>) -> Vec<String> {
    it.into_iter().map(|x| x.to_string()).collect()
}

fn partition_for(spec: &SystemSpec, kind: PartitionKind, lp: &LpArgs, cfg: &Config) -> CliResult<Partition> {
    let e = monomial_sets::column_set(spec);
    let mm = MainMonomials::for_spec(spec);
    Ok(match kind {
        PartitionKind::Divisibility => monomial_sets::partition_divisibility(&e, &mm),
        PartitionKind::ClosedForm => monomial_sets::closed_form_sets(spec).partition(&mm),
        PartitionKind::Lp => {
            let (lift, delta) = lp_settings(lp, cfg)?;
            sparse_lp::grc_partition(spec, &lift, &delta)?.partition
        }
    })
}

fn matrix_summary(m: &PolyMatrix) -> String {
    let mut counts = [0usize; 4];
    for r in m.rows() {
        if let Some(i) = macaulay::RowPoly::BLOCKS.iter().position(|b| *b == r.poly) {
            counts[i] += 1;
        }
    }
    format!("{}x{} matrix, {} nonzero entries, block rows {:?}", m.nrows(), m.ncols(), m.nnz(), counts)
}

fn cmd_gen(spec: SpecArgs, as_json: bool) -> CliResult<()> {
    let s = system_spec(spec)?;
    let (f1, f2) = diffsys::generic_system(&s);
    let rows = diffsys::row_polynomials(&s);
    let names = ["df1", "df2", "f1", "f2"];
    if as_json {
        let mut out = json!({ "spec": { "d1": s.d1, "d2": s.d2 } });
        for (n, p) in names.iter().zip(&rows) {
            out[n] = p.to_json();
        }
        print_json(&out);
        return Ok(());
    }
    println!("f1 = {f1}");
    println!("f2 = {f2}");
    for (n, p) in names.iter().zip(&rows).take(2) {
        println!("{n} = {p}");
    }
    if s.d1 == 2 && s.d2 == 2 {
        for sys in [System::F1, System::F2] {
            let legend: Vec<String> = diffsys::degree_two_legend(sys).iter().map(|(k, v)| format!("{k} = {v}")).collect();
            println!("legend: {}", legend.join(", "));
        }
    }
    Ok(())
}

fn cmd_sets(spec: SpecArgs, as_json: bool) -> CliResult<()> {
    let s = system_spec(spec)?;
    let e = monomial_sets::column_set(&s);
    let mm = MainMonomials::for_spec(&s);
    let cf = monomial_sets::closed_form_sets(&s);
    let names = ["B3^(D-d1)", "B3^(D-d2)", "T1", "T2"];
    if as_json {
        print_json(&json!({
            "spec": { "d1": s.d1, "d2": s.d2 },
            "columns": e,
            "main_monomials": strings((0..4).map(|i| mm.get(i))),
            "multipliers": cf.multipliers(),
        }));
        return Ok(());
    }
    println!("D = {}, N = {}", s.big_d(), s.big_n());
    println!("E ({}): {}", e.len(), strings(e.descending()).join(" "));
    for (i, set) in cf.multipliers().iter().enumerate() {
        println!("{} ({}), main monomial {}: {}", names[i], set.len(), mm.get(i), strings(set.descending()).join(" "));
    }
    Ok(())
}

fn cmd_build(spec: SpecArgs, kind: PartitionKind, lp: &LpArgs, cfg: &Config, as_json: bool) -> CliResult<()> {
    let s = system_spec(spec)?;
    let part = partition_for(&s, kind, lp, cfg)?;
    let m = macaulay::build_from_partition(&s, &part, &MainMonomials::for_spec(&s))?;
    if as_json {
        print_json(&m.to_json(json!({ "d1": s.d1, "d2": s.d2 })));
    } else {
        println!("{}", matrix_summary(&m));
        for (r, label) in m.rows().iter().enumerate() {
            println!("{label}: {}", m.row_poly(r));
        }
    }
    Ok(())
}

fn cmd_carra_ferro(spec: SpecArgs, n: u32, m: u32, as_json: bool) -> CliResult<()> {
    let cf = macaulay::build_carra_ferro(spec.d1, spec.d2, n, m)?;
    let zero = strings(cf.matrix.zero_columns());
    if as_json {
        print_json(&json!({
            "rows": cf.matrix.nrows(), "cols": cf.matrix.ncols(), "D": cf.big_d,
            "L": cf.l, "L1": cf.l1, "L2": cf.l2, "zero_columns": zero,
        }));
    } else {
        println!("{}x{} matrix, D = {}, L = {}, L1 = {}, L2 = {}", cf.matrix.nrows(), cf.matrix.ncols(), cf.big_d, cf.l, cf.l1, cf.l2);
        println!("zero columns: {}", if zero.is_empty() { "none".to_string() } else { zero.join(" ") });
    }
    Ok(())
}

fn cmd_certificate(spec: SpecArgs, as_json: bool) -> CliResult<()> {
    let s = system_spec(spec)?;
    let (m, cert) = certificate::certify(&s)?;
    let raw = certificate::unique_monomial_coefficient(&m, &cert);
    let norm = certificate::normalized_unique_coefficient(&m, &cert);
    let counts = monomial_sets::closed_form_sets(&s).sizes();
    if as_json {
        let steps: Vec<Value> = cert
            .steps
            .iter()
            .map(|st| json!({ "symbol": st.symbol.to_string(), "rows": strings(&st.deleted_rows), "cols": strings(&st.deleted_cols) }))
            .collect();
        print_json(&json!({
            "spec": { "d1": s.d1, "d2": s.d2 },
            "counts": counts,
            "steps": steps,
            "unique_monomial": cert.unique_monomial.to_string(),
            "exponents": cert.exponents(&s),
            "raw_coefficient": raw.to_string(),
            "normalized_coefficient": norm.to_string(),
        }));
        return Ok(());
    }
    println!("substituted {} -> fresh symbol", certificate::substituted_symbol(&s));
    for (i, st) in cert.steps.iter().enumerate() {
        println!("step {}: {} removes {} rows and {} columns", i + 1, st.symbol, st.deleted_rows.len(), st.deleted_cols.len());
    }
    println!("counts (n1, n2, n3, n4) = {counts:?}");
    println!("unique monomial: {}", cert.unique_monomial);
    println!("coefficient: {raw} (normalized {norm})");
    Ok(())
}

fn cmd_det(spec: SpecArgs, mode: Mode, file: Option<&Path>, seed: u64, moduli: usize, as_json: bool) -> CliResult<()> {
    let s = system_spec(spec)?;
    let m = macaulay::build_square_matrix(&s)?;
    let primes = detkit::large_primes(moduli);
    let (mode, sp) = match mode {
        Mode::Symbolic => (DetMode::Symbolic, None),
        Mode::Exact => (DetMode::SpecializedExact, Some(specialization(&s, file, seed)?)),
        Mode::Modular => (DetMode::Modular, Some(specialization(&s, file, seed)?)),
    };
    let r = detkit::determinant(&m, mode, sp.as_ref(), &primes)?;
    let value = match &r.value {
        DetValue::Symbolic(p) => json!(p.to_string()),
        DetValue::Exact(v) => json!(v.to_string()),
        DetValue::Residues(rs) => json!(rs.iter().map(|(r, p)| json!({ "residue": r, "modulus": p })).collect::<Vec<_>>()),
    };
    if as_json {
        print_json(&json!({
            "spec": { "d1": s.d1, "d2": s.d2 },
            "mode": format!("{:?}", r.mode),
            "seed": file.is_none().then_some(seed),
            "value": value,
            "sign_convention": detkit::DetResult::SIGN_CONVENTION,
        }));
    } else {
        match value {
            Value::String(v) => println!("{v}"),
            other => println!("{other}"),
        }
    }
    Ok(())
}

fn cmd_lp_partition(spec: SpecArgs, lp: &LpArgs, cfg: &Config) -> CliResult<()> {
    let s = system_spec(spec)?;
    let (lift, delta) = lp_settings(lp, cfg)?;
    let report = sparse_lp::validate_liftings(&lift);
    if !report.non_strict.is_empty() {
        eprintln!("warning: liftings meet {} with equality", report.non_strict.join(", "));
    }
    let r = sparse_lp::grc_partition(&s, &lift, &delta)?;
    for a in &r.assignments {
        println!("{}", a.to_json());
    }
    eprintln!("sizes {:?}", r.partition.sizes());
    Ok(())
}

fn cmd_moves(spec: SpecArgs, lp: &LpArgs, cfg: &Config, file: Option<&Path>) -> CliResult<()> {
    let s = system_spec(spec)?;
    let moves: Vec<Move> = match file {
        Some(p) => serde_json::from_value(read_json(p)?).map_err(|e| CliError::Usage(format!("move list: {e}")))?,
        None => sparse_lp::paper_moves(),
    };
    let (lift, delta) = lp_settings(lp, cfg)?;
    let raw = sparse_lp::grc_partition(&s, &lift, &delta)?.partition;
    let moved = sparse_lp::apply_moves(&raw, &moves, &s)?;
    let target = monomial_sets::partition_divisibility(&monomial_sets::column_set(&s), &MainMonomials::for_spec(&s));
    let sets: Vec<Vec<String>> = moved.sets.iter().map(|b| strings(b.iter().rev())).collect();
    print_json(&json!({
        "raw_sizes": raw.sizes(),
        "moved_sizes": moved.sizes(),
        "sets": sets,
        "equals_divisibility_partition": moved.sets == target.sets,
    }));
    Ok(())
}

fn cmd_oracle(spec: SpecArgs, file: Option<&Path>, seed: Option<u64>) -> CliResult<()> {
    let s = system_spec(spec)?;
    let sp = match (file, seed) {
        (None, None) => None,
        (f, sd) => Some(specialization(&s, f, sd.unwrap_or(0))?),
    };
    if s.d1 > 1 && sp.is_none() {
        return Err(CliError::Usage("symbolic elimination is limited to d1 = d2 = 1; pass --seed or --specialization".into()));
    }
    let r = oracle::eliminate_iterated(&s, sp.as_ref())?;
    let m = macaulay::build_square_matrix(&s)?;
    let (det, quotient) = match &sp {
        Some(sp) => (detkit::det_specialized(&m, sp)?.to_string(), None),
        None => {
            let d = detkit::det_symbolic(&m)?;
            let q = r.exact_div(&d).ok().map(|q| q.to_string());
            (d.to_string(), q)
        }
    };
    print_json(&json!({
        "spec": { "d1": s.d1, "d2": s.d2 },
        "oracle": r.to_string(),
        "oracle_terms": r.len(),
        "det": det,
        "oracle_over_det": quotient,
    }));
    Ok(())
}

fn cmd_check(suite: &str, seed: u64, as_json: bool) -> CliResult<()> {
    let reports = harness::run_checks(suite, seed)
        .ok_or_else(|| CliError::Usage(format!("unknown suite {suite:?}; expected one of {}", harness::suite_names().join(", "))))?;
    if as_json {
        print_json(&serde_json::to_value(&reports).expect("reports serialize"));
    } else {
        for r in &reports {
            println!("{}", r.summary_line());
        }
    }
    if reports.iter().all(|r| r.ok()) {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

fn cmd_export(spec: SpecArgs, format: Format, file: Option<&Path>, out: Option<&Path>) -> CliResult<()> {
    let s = system_spec(spec)?;
    let m = macaulay::build_square_matrix(&s)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&m.to_json(json!({ "d1": s.d1, "d2": s.d2 }))).expect("JSON values serialize"),
        Format::Csv => {
            let path = file.ok_or_else(|| CliError::Usage("CSV export needs --specialization".into()))?;
            m.to_csv(&specialization(&s, Some(path), 0)?)?
        }
    };
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Gen { spec, json } => cmd_gen(spec, json),
        Command::Sets { spec, json } => cmd_sets(spec, json),
        Command::Build { spec, partition, lp, json } => cmd_build(spec, partition, &lp, &cfg, json),
        Command::CarraFerro { spec, n, m, json } => cmd_carra_ferro(spec, n, m, json),
        Command::Certificate { spec, json } => cmd_certificate(spec, json),
        Command::Det { spec, mode, specialization, seed, moduli, json } => {
            cmd_det(spec, mode, specialization.as_deref(), seed, moduli, json)
        }
        Command::LpPartition { spec, lp } => cmd_lp_partition(spec, &lp, &cfg),
        Command::Moves { spec, lp, moves } => cmd_moves(spec, &lp, &cfg, moves.as_deref()),
        Command::Oracle { spec, specialization, seed } => cmd_oracle(spec, specialization.as_deref(), seed),
        Command::Check { suite, seed, json } => cmd_check(&suite, seed, json),
        Command::Export { spec, format, specialization, out } => cmd_export(spec, format, specialization.as_deref(), out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::CheckFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_violations_exit_with_three() {
        assert_eq!(exit_code(&Error::CertificateFailure { step: 1, detail: String::new() }), 3);
        assert_eq!(exit_code(&Error::SingularBasis), 3);
        assert_eq!(exit_code(&Error::InvalidSpec(String::new())), 2);
        assert_eq!(exit_code(&Error::Parse(String::new())), 2);
    }
}
