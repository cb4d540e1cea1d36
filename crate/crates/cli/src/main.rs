use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankwork::asymptotics::{
    self, calibrate_odd_normalization, eta2_odd_series, eta2_series, rademacher_p, AsymptoticReport, HalfCoefficient,
    OddNormalization, TailConstant,
};
use rankwork::congruence::{self, primitive, scan, verify_progression, ProgressionCandidate, Statistic};
use rankwork::durfee::{count_marked, count_odd_marked};
use rankwork::partitions::{partition_table, rank_distribution, spt_table};
use rankwork::qseries::{r2_odd_series, r2_series};
use rankwork::specialfn::precision::fmt_float;
use rankwork::transforms::{default_suite, run_suite, Law, ResidualReport, SuiteCase};
use rankwork::{Error, PrecisionContext};
use rug::Complex;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;
const OUT_DIR_VAR: &str = "RANKWORK_OUT_DIR";
const DURFEE_CAP: u64 = 40;

#[derive(Parser)]
#[command(name = "rankwork", version, about = "Partition rank moments: exact tables, asymptotics, modular checks, congruence scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout. Relative paths are
    /// resolved against $RANKWORK_OUT_DIR when it is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactStat {
    P,
    Rank,
    Eta2,
    #[value(name = "eta2_odd")]
    Eta2Odd,
    Spt,
    D2,
    #[value(name = "d2_odd")]
    D2Odd,
    Nf2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AsymStat {
    P,
    Eta2,
    #[value(name = "eta2_odd")]
    Eta2Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Half {
    Printed,
    Rederived,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tail {
    #[value(name = "16")]
    Sixteen,
    #[value(name = "4")]
    Four,
}

#[derive(Subcommand)]
enum Command {
    /// Exact integer tables.
    Exact {
        #[arg(long, value_enum)]
        stat: ExactStat,
        /// An index or an inclusive range a..b.
        #[arg(long)]
        n: String,
        /// Modulus for nf2.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Circle-method series with a comparison against exact values.
    Asym {
        #[arg(long, value_enum)]
        stat: AsymStat,
        #[arg(long)]
        n: u64,
        /// Truncation k_max (default: the standard truncation).
        #[arg(long)]
        k_max: Option<u64>,
        /// I_{-1/2} coefficient of the odd series.
        #[arg(long, value_enum, default_value_t = Half::Rederived)]
        half: Half,
        /// Denominator of the I_{-3/2} constant, pi/(Dk).
        #[arg(long, value_enum, default_value_t = Tail::Four)]
        tail: Tail,
    },
    /// Resolves the odd-series normalization against exact values.
    Calibrate {
        #[arg(long, default_value_t = 50)]
        lo: u64,
        #[arg(long, default_value_t = 120)]
        hi: u64,
    },
    /// Checks one transformation law at one point.
    Verify {
        #[arg(long)]
        law: Law,
        #[arg(long, default_value_t = 0)]
        h: i64,
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Point z (or q for the consistency laws): "x", "x+yi" or "x,y".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Stencil radius for the laplacian check.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Runs the fixed frame set for every law.
    VerifySuite,
    /// Brute-force search for progressions A·n+B with statistic ≡ 0 mod Q.
    Scan {
        /// p, eta2, eta2_odd, spt or nf2(r,t).
        #[arg(long)]
        stat: String,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        n_max: u64,
        /// Keep only progressions not implied by a smaller one.
        #[arg(long)]
        primitive: bool,
    },
    /// Checks a single progression.
    Progression {
        #[arg(long)]
        stat: String,
        #[arg(long = "a")]
        a: u64,
        #[arg(long = "b")]
        b: u64,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        n_max: u64,
    },
}

struct Output {
    json: Value,
    csv: String,
    text: String,
    failed: bool,
}

enum Failure {
    Usage(String),
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::NotCoprime { .. }
            | Error::KEven(_)
            | Error::NoSolution { .. }
            | Error::NoValidFrame(_) => Failure::Usage(e.to_string()),
            _ => Failure::Infeasible(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| usage(format!("bad index '{x}'")));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(usage(format!("empty range {s}")));
            }
            Ok((a, b))
        }
        None => {
            let a = parse(s)?;
            Ok((a, a))
        }
    }
}

fn parse_complex(s: &str, ctx: &PrecisionContext) -> Result<Complex, Failure> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let prec = ctx.prec();
    let (re, im) = if let Some((a, b)) = s.split_once(',') {
        (a.to_string(), b.to_string())
    } else if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut cut = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                cut = Some(i);
                break;
            }
        }
        match cut {
            Some(i) => {
                let im = &body[i..];
                let im = if im == "+" || im == "-" { format!("{im}1") } else { im.to_string() };
                (body[..i].to_string(), im)
            }
            None => {
                let im = if body.is_empty() || body == "+" || body == "-" { format!("{body}1") } else { body.to_string() };
                ("0".to_string(), im)
            }
        }
    } else {
        (s.clone(), "0".to_string())
    };
    let re = ctx.parse_real(&re).map_err(|e| usage(e.to_string()))?;
    let im = ctx.parse_real(&im).map_err(|e| usage(e.to_string()))?;
    Ok(Complex::with_val(prec, (re, im)))
}

fn table_output(name: &str, header: &[&str], rows: Vec<Vec<String>>, extra: Value) -> Output {
    let mut csv = header.join(",");
    csv.push('\n');
    let mut text = String::new();
    for r in &rows {
        csv.push_str(&r.join(","));
        csv.push('\n');
        text.push_str(&r.join(" "));
        text.push('\n');
    }
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect()))
        .collect();
    let mut json = json!({"schema_version": SCHEMA_VERSION, "command": name, "rows": json_rows});
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    Output { json, csv, text, failed: false }
}

fn cmd_exact(stat: ExactStat, n: &str, t: Option<u32>) -> Result<Output, Failure> {
    let (lo, hi) = parse_range(n)?;
    let series_row = |vals: Vec<rug::Integer>| -> Vec<Vec<String>> {
        (lo..=hi).map(|n| vec![n.to_string(), vals[n as usize].to_string()]).collect()
    };
    let cap = |c: u64| -> Result<(), Failure> {
        if hi > c {
            Err(Failure::Infeasible(format!("exact oracle range exceeded: n ≤ {c}")))
        } else {
            Ok(())
        }
    };
    let out = match stat {
        ExactStat::P => {
            cap(congruence::P_CAP)?;
            table_output("exact", &["n", "p"], series_row(partition_table(hi as usize)), json!({"stat": "p"}))
        }
        ExactStat::Eta2 => {
            cap(congruence::ETA2_CAP)?;
            let s = r2_series(hi as usize + 1)?.into_coeffs();
            table_output("exact", &["n", "eta2"], series_row(s), json!({"stat": "eta2"}))
        }
        ExactStat::Eta2Odd => {
            cap(congruence::ETA2_CAP)?;
            let s = r2_odd_series(hi as usize + 1)?.into_coeffs();
            table_output("exact", &["n", "eta2_odd"], series_row(s), json!({"stat": "eta2_odd"}))
        }
        ExactStat::Spt => {
            cap(congruence::SPT_CAP)?;
            table_output("exact", &["n", "spt"], series_row(spt_table(hi as usize)), json!({"stat": "spt"}))
        }
        ExactStat::Rank => {
            cap(congruence::ETA2_CAP)?;
            let mut rows = Vec::new();
            for n in lo..=hi {
                for (m, c) in &rank_distribution(n).counts {
                    rows.push(vec![n.to_string(), m.to_string(), c.to_string()]);
                }
            }
            table_output("exact", &["n", "rank", "count"], rows, json!({"stat": "rank"}))
        }
        ExactStat::D2 | ExactStat::D2Odd => {
            cap(DURFEE_CAP)?;
            let odd = stat == ExactStat::D2Odd;
            let name = if odd { "d2_odd" } else { "d2" };
            let rows = (lo..=hi)
                .map(|n| {
                    let v = if n == 0 { rug::Integer::new() } else if odd { count_odd_marked(n) } else { count_marked(n) };
                    vec![n.to_string(), v.to_string()]
                })
                .collect();
            table_output("exact", &["n", name], rows, json!({"stat": name}))
        }
        ExactStat::Nf2 => {
            let t = t.ok_or_else(|| usage("nf2 needs --t"))?;
            cap(congruence::NF2_CAP)?;
            let table = congruence::nf2_residue_table(t, hi)?;
            let cols: Vec<String> = std::iter::once("n".to_string()).chain((0..t).map(|r| format!("r{r}"))).collect();
            let header: Vec<&str> = cols.iter().map(String::as_str).collect();
            let rows = (lo..=hi)
                .map(|n| std::iter::once(n.to_string()).chain(table[n as usize].iter().map(|c| c.to_string())).collect())
                .collect();
            table_output("exact", &header, rows, json!({"stat": "nf2", "t": t}))
        }
    };
    Ok(out)
}

fn asym_output(rep: &AsymptoticReport) -> Output {
    let mut json = rep.to_json();
    json["command"] = json!("asym");
    let d = rep.digits;
    let mut csv = String::from("statistic,n,k_max,truncated_sum,exact,abs_error,rel_error\n");
    let opt = |v: &Option<rug::Float>| v.as_ref().map(|x| fmt_float(x, 6)).unwrap_or_default();
    let exact = rep.exact.as_ref().map(|e| e.to_string()).unwrap_or_default();
    let _ = writeln!(
        csv,
        "{},{},{},{},{},{},{}",
        rep.statistic,
        rep.n,
        rep.k_max,
        fmt_float(&rep.truncated_sum, d),
        exact,
        opt(&rep.abs_error),
        opt(&rep.rel_error)
    );
    let mut text = format!("{}({}) with k <= {}\n  sum   = {}\n", rep.statistic, rep.n, rep.k_max, fmt_float(&rep.truncated_sum, d));
    if let Some(e) = &rep.exact {
        let _ = writeln!(text, "  exact = {e}\n  abs error = {}\n  rel error = {}", opt(&rep.abs_error), opt(&rep.rel_error));
    }
    if let Some(i) = &rep.imag_residual {
        let _ = writeln!(text, "  imaginary residue = {}", fmt_float(i, 6));
    }
    Output { json, csv, text, failed: false }
}

fn cmd_asym(stat: AsymStat, n: u64, k_max: Option<u64>, half: Half, tail: Tail, ctx: &PrecisionContext) -> Result<Output, Failure> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let rep = match stat {
        AsymStat::P => {
            let r = rademacher_p(n, k_max, ctx)?;
            if n <= congruence::P_CAP { r.with_exact(partition_table(n as usize).pop().unwrap_or_default()) } else { r }
        }
        AsymStat::Eta2 => {
            let r = match k_max {
                Some(k) => asymptotics::eta2_series_truncated(n, k, ctx)?,
                None => eta2_series(n, ctx)?,
            };
            if n <= congruence::ETA2_CAP { r.with_exact(r2_series(n as usize + 1)?.coeff(n as usize).clone()) } else { r }
        }
        AsymStat::Eta2Odd => {
            let normalization = OddNormalization {
                half: match half {
                    Half::Printed => HalfCoefficient::Printed,
                    Half::Rederived => HalfCoefficient::Rederived,
                },
                tail: match tail {
                    Tail::Sixteen => TailConstant::PiOver16K,
                    Tail::Four => TailConstant::PiOver4K,
                },
            };
            let r = match k_max {
                Some(k) => asymptotics::eta2_odd_series_truncated(n, k, normalization, ctx)?,
                None => eta2_odd_series(n, normalization, ctx)?,
            };
            if n <= congruence::ETA2_CAP { r.with_exact(r2_odd_series(n as usize + 1)?.coeff(n as usize).clone()) } else { r }
        }
    };
    Ok(asym_output(&rep))
}

fn cmd_calibrate(lo: u64, hi: u64, ctx: &PrecisionContext) -> Result<Output, Failure> {
    if hi > congruence::ETA2_CAP {
        return Err(Failure::Infeasible(format!("exact oracle range exceeded: n ≤ {}", congruence::ETA2_CAP)));
    }
    let exact = r2_odd_series(hi as usize + 1)?.into_coeffs();
    let rep = calibrate_odd_normalization(&exact, lo, hi, &OddNormalization::ALL, ctx)?;
    let mut json = rep.to_json();
    json["command"] = json!("calibrate");
    let mut csv = String::from("normalization,max_rel_error\n");
    let mut text = format!("odd-series normalization over n in [{lo}, {hi}], k = 1 truncation\n");
    for (c, e) in &rep.candidates {
        let _ = writeln!(csv, "\"{}\",{e:e}", c.label());
        let _ = writeln!(text, "  {:<28} max rel error {e:.3e}", c.label());
    }
    let _ = writeln!(text, "winner: {}", rep.winner.map(|w| w.label()).unwrap_or_else(|| "none".into()));
    Ok(Output { json, csv, text, failed: rep.winner.is_none() })
}

fn report_row(r: &ResidualReport) -> String {
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "{},\"{}\",{},{},{},{}",
        r.law,
        inputs.join(" "),
        fmt_float(&r.residual, 6),
        fmt_float(&r.scale, 6),
        fmt_float(&r.tol, 3),
        r.pass
    )
}

const REPORT_HEADER: &str = "law,inputs,residual,scale,tol,pass\n";

fn cmd_verify(
    law: Law,
    h: i64,
    k: i64,
    z: &str,
    w: Option<&str>,
    step: Option<f64>,
    ctx: &PrecisionContext,
) -> Result<Output, Failure> {
    let zc = parse_complex(z, ctx)?;
    let wc = w.map(|w| parse_complex(w, ctx)).transpose()?;
    let to_pair = |c: &Complex| (c.real().to_f64(), c.imag().to_f64());
    let case = SuiteCase { law, h, k, z: to_pair(&zc), w: wc.as_ref().map(to_pair), step };
    let rep = run_case_exact(&case, &zc, wc.as_ref(), ctx)?;
    let mut json = rep.to_json();
    json["schema_version"] = json!(SCHEMA_VERSION);
    json["command"] = json!("verify");
    let csv = format!("{REPORT_HEADER}{}\n", report_row(&rep));
    Ok(Output { json, csv, text: format!("{rep}\n"), failed: !rep.pass })
}

/// Like `run_case`, but keeps the full-precision parse of z and w.
fn run_case_exact(case: &SuiteCase, z: &Complex, w: Option<&Complex>, ctx: &PrecisionContext) -> Result<ResidualReport, Error> {
    use rankwork::transforms::*;
    match case.law {
        Law::R2Modular => verify_r2_modular(case.h, case.k, z, ctx),
        Law::R2wModular => verify_r2w_modular(case.h, case.k, z, w.ok_or_else(|| need_w(case.law))?, ctx),
        Law::OddKOdd => verify_odd_laws(OddCase::KOdd, case.h, case.k, z, None, ctx),
        Law::OddKEven => verify_odd_laws(OddCase::KEven, case.h, case.k, z, None, ctx),
        Law::OddKOddW => verify_odd_laws(OddCase::KOdd, case.h, case.k, z, Some(w.ok_or_else(|| need_w(case.law))?), ctx),
        Law::OddKEvenW => verify_odd_laws(OddCase::KEven, case.h, case.k, z, Some(w.ok_or_else(|| need_w(case.law))?), ctx),
        Law::LConsistency => verify_l_consistency(z, ctx),
        Law::LoConsistency => verify_lo_consistency(z, ctx),
        Law::RInversion => verify_r_inversion(z, ctx),
        Law::NonholoInversion => verify_nonholo_inversion(z, ctx),
        Law::MaassInversion => verify_maass_inversion(z, ctx),
        Law::MaassTranslation => verify_maass_translation(z, ctx),
        Law::NonholoDual => verify_nonholo_dual(z, ctx),
        Law::NonholoTranslation => verify_nonholo_translation(z, ctx),
        Law::EtaInversion => verify_eta_inversion(z, ctx),
        Law::E2Inversion => verify_e2_inversion(z, ctx),
        Law::Laplacian => run_case(case, ctx),
    }
}

fn need_w(law: Law) -> Error {
    Error::InvalidArgument(format!("law {law} needs --w"))
}

fn cmd_verify_suite(ctx: &PrecisionContext) -> Result<Output, Failure> {
    let results = run_suite(&default_suite(), ctx);
    let mut csv = String::from(REPORT_HEADER);
    let mut text = String::new();
    let mut reports = Vec::new();
    let (mut passed, mut failed, mut errors) = (0, 0, 0);
    for (case, r) in &results {
        match r {
            Ok(rep) => {
                if rep.pass {
                    passed += 1;
                } else {
                    failed += 1;
                }
                csv.push_str(&report_row(rep));
                csv.push('\n');
                let _ = writeln!(text, "{} {}", if rep.pass { "PASS" } else { "FAIL" }, rep);
                reports.push(rep.to_json());
            }
            Err(e) => {
                errors += 1;
                let _ = writeln!(csv, "{},\"h={} k={} z={:?}\",,,,error", case.law, case.h, case.k, case.z);
                let _ = writeln!(text, "ERROR {} h={} k={} z={:?}: {e}", case.law, case.h, case.k, case.z);
                reports.push(json!({"law": case.law.id(), "error": e.to_string()}));
            }
        }
    }
    let _ = writeln!(text, "{passed} passed, {failed} failed, {errors} errors");
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify-suite",
        "digits": ctx.digits,
        "passed": passed,
        "failed": failed,
        "errors": errors,
        "reports": reports,
    });
    Ok(Output { json, csv, text, failed: failed + errors > 0 })
}

fn candidates_output(command: &str, list: &[ProgressionCandidate]) -> Output {
    let mut csv = format!("{}\n", ProgressionCandidate::CSV_HEADER);
    let mut text = String::new();
    for c in list {
        csv.push_str(&c.to_csv_row());
        csv.push('\n');
        let _ = writeln!(text, "{}({}n+{}) = 0 mod {}: {}", c.statistic, c.a, c.b, c.modulus, c.status);
    }
    if list.is_empty() {
        text.push_str("no candidates\n");
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "candidates": list.iter().map(ProgressionCandidate::to_json).collect::<Vec<_>>(),
    });
    Output { json, csv, text, failed: false }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = PrecisionContext::new(cli.digits);
    match &cli.command {
        Command::Exact { stat, n, t } => cmd_exact(*stat, n, *t),
        Command::Asym { stat, n, k_max, half, tail } => cmd_asym(*stat, *n, *k_max, *half, *tail, &ctx),
        Command::Calibrate { lo, hi } => cmd_calibrate(*lo, *hi, &ctx),
        Command::Verify { law, h, k, z, w, step } => cmd_verify(*law, *h, *k, z, w.as_deref(), *step, &ctx),
        Command::VerifySuite => cmd_verify_suite(&ctx),
        Command::Scan { stat, modulus, a_max, n_max, primitive: prim } => {
            let stat: Statistic = stat.parse()?;
            let found = scan(stat, *modulus, *a_max, *n_max)?;
            let found = if *prim { primitive(&found) } else { found };
            Ok(candidates_output("scan", &found))
        }
        Command::Progression { stat, a, b, modulus, n_max } => {
            let stat: Statistic = stat.parse()?;
            let c = verify_progression(stat, *a, *b, *modulus, *n_max)?;
            let failed = !c.verified();
            let mut out = candidates_output("progression", std::slice::from_ref(&c));
            out.failed = failed;
            Ok(out)
        }
    }
}

fn output_path(p: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Infeasible(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(3);
        }
    };
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => out.csv,
        Format::Text => out.text,
    };
    match &cli.output {
        Some(p) => {
            let path = output_path(p);
            if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(parent) {
                    eprintln!("error: {}: {e}", parent.display());
                    return ExitCode::from(3);
                }
            }
            if let Err(e) = std::fs::write(&path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{body}"),
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
