//! Command-line front end for `seaweed-core`.
//!
//! Exit codes:
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success                                            |
//! | 1    | certificate or cross-check verification failed     |
//! | 2    | unparseable input, malformed file, bad arguments   |
//! | 3    | requested method does not apply to this seaweed    |
//! | 4    | seaweed does not have index one                    |
//! | 5    | contact synthesis failed                           |

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use seaweed_core::contact::{
    synthesize_contact_with, verify_report, Auxiliary, CaseTag, ContactCertificate, ContactError,
    DEFAULT_K_MAX,
};
use seaweed_core::exact::{format_rational, rat, Rational};
use seaweed_core::liealg::{sample_forms, volume_matches_bhat, WEDGE_MAX_DIM};
use seaweed_core::meander::{
    build_meander, components, index_gcd_2part, index_gcd_3part, orient, render, ComponentReport,
    MeanderView, RenderFormat,
};
use seaweed_core::seaweed::{materialize_standard, SeaweedSpec};

pub const DEFAULT_SEED: u64 = 0;
pub const SEED_ENV: &str = "SEAWEED_SEED";
pub const MAX_ENUMERATE_N: usize = 12;

/// Fixed CSV header of `enumerate --csv`.
pub const CSV_HEADER: &str = "top,bottom,dim,index,cycles,paths,case,certificate";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Inapplicable(String),
    #[error("not index one: {0}")]
    NotIndexOne(String),
    #[error("contact synthesis failed: {0}")]
    Synthesis(String),
    #[error("{0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Inapplicable(_) => 3,
            CliError::NotIndexOne(_) => 4,
            CliError::Synthesis(_) => 5,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "seaweed",
    version,
    about = "Index, meanders and contact forms of type-A seaweed algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the index of a seaweed such as "1|4 / 3|1|1".
    Index(IndexArgs),
    /// Render the meander of a seaweed.
    Meander(MeanderArgs),
    /// Synthesize a contact-form certificate for an index-one seaweed.
    Contact(ContactArgs),
    /// Re-verify a certificate file.
    Verify(VerifyArgs),
    /// Tabulate all composition pairs of n.
    Enumerate(EnumerateArgs),
    /// Randomized rank oracle for the index.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Meander,
    Gcd,
    Oracle,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    pub spec: String,
    #[arg(long, value_enum, default_value_t = Method::Meander)]
    pub method: Method,
    #[arg(long)]
    pub json: bool,
    /// Trials for the oracle method.
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
    /// Seed for the oracle method (defaults to $SEAWEED_SEED, then 0).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
    Tikz,
    Json,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Ascii => RenderFormat::Ascii,
            Format::Svg => RenderFormat::Svg,
            Format::Tikz => RenderFormat::Tikz,
            Format::Json => RenderFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct MeanderArgs {
    pub spec: String,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    #[arg(long)]
    pub directed: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ContactArgs {
    pub spec: String,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: usize,
    /// Print the certificate JSON instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Also write the certificate JSON to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub certificate: PathBuf,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub n: usize,
    /// Keep only rows with this index.
    #[arg(long)]
    pub index_filter: Option<usize>,
    /// Synthesize and verify a certificate for every index-one row.
    /// Implied by `--index-filter 1`.
    #[arg(long)]
    pub classify: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub spec: String,
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
    /// Defaults to $SEAWEED_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Compare the bordered determinant with the exterior-algebra volume
    /// coefficient on sampled forms.
    #[arg(long)]
    pub lemma1: bool,
}

pub fn parse_spec(text: &str) -> Result<SeaweedSpec, CliError> {
    text.parse().map_err(|e| CliError::Parse(format!("{e}")))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Runs a parsed command, writing normal output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Index(a) => cmd_index(a, out),
        Command::Meander(a) => cmd_meander(a, out),
        Command::Contact(a) => cmd_contact(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
    }
}

#[derive(Debug, Serialize)]
pub struct IndexReport {
    pub spec: SeaweedSpec,
    pub index: usize,
    pub method: &'static str,
    pub components: ComponentReport,
}

/// Index by the gcd formulas; only for a 2- or 3-part top over a one-part bottom.
pub fn gcd_index(spec: &SeaweedSpec) -> Option<usize> {
    if spec.bottom().parts().len() != 1 {
        return None;
    }
    match *spec.top().parts() {
        [a, c] => Some(index_gcd_2part(a, c)),
        [a, b, c] => Some(index_gcd_3part(a, b, c)),
        _ => None,
    }
}

fn cmd_index(a: &IndexArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_spec(&a.spec)?;
    let report = components(&build_meander(&spec));
    let (index, method) = match a.method {
        Method::Meander => (report.index(), "meander"),
        Method::Gcd => (
            gcd_index(&spec).ok_or_else(|| {
                CliError::Inapplicable(format!(
                    "gcd method needs a top of 2 or 3 parts over a one-part bottom, got {spec}"
                ))
            })?,
            "gcd",
        ),
        Method::Oracle => {
            let algebra =
                materialize_standard(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
            (
                algebra.index_randomized(a.trials, resolve_seed(a.seed)?),
                "oracle",
            )
        }
    };
    if a.json {
        let r = IndexReport {
            spec,
            index,
            method,
            components: report,
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&r).expect("report serializes")
        )?;
    } else {
        writeln!(out, "{index}")?;
    }
    Ok(())
}

fn cmd_meander(a: &MeanderArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_spec(&a.spec)?;
    let meander = build_meander(&spec);
    let directed;
    let view = if a.directed {
        directed = orient(&meander);
        MeanderView::Directed(&directed)
    } else {
        MeanderView::Undirected(&meander)
    };
    let mut text = render(view, a.format.into());
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn not_index_one_message(index: usize) -> String {
    if index == 0 {
        "index 0 (Frobenius)".to_string()
    } else {
        format!("index {index}")
    }
}

/// Human-readable certificate summary.
pub fn summarize(cert: &ContactCertificate) -> String {
    let mut s = String::new();
    let case = match cert.case {
        CaseTag::TwoPaths => "two paths",
        CaseTag::OneCycle => "one cycle",
        CaseTag::Sl2 => "sl(2)",
    };
    s.push_str(&format!("spec: {}\ncase: {case}\n", cert.spec));
    match &cert.auxiliary {
        Auxiliary::TwoPaths {
            h, diagonal_index, ..
        } => {
            let h: Vec<String> = h.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("H: diag({})\n", h.join(", ")));
            s.push_str(&format!("form: F + H_{diagonal_index}*\n"));
        }
        Auxiliary::OneCycle {
            removed_edge,
            reduced_spec,
            center,
            ..
        } => {
            s.push_str(&format!(
                "removed edge: ({}, {})\nreduced: {reduced_spec}\ncenter: e_{{{},{}}}\n",
                removed_edge.0, removed_edge.1, center.0, center.1
            ));
        }
        Auxiliary::Sl2 => {}
    }
    if let Some(k) = &cert.k {
        s.push_str(&format!("k: {k}\n"));
    }
    s.push_str(&format!("phi = {}\ndet: {}\n", cert.form, cert.det));
    s
}

fn cmd_contact(a: &ContactArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_spec(&a.spec)?;
    let cert = synthesize_contact_with(&spec, a.k_max).map_err(|e| match e {
        ContactError::NotIndexOne { index } => CliError::NotIndexOne(not_index_one_message(index)),
        other => CliError::Synthesis(other.to_string()),
    })?;
    let json = cert.to_json_pretty();
    if let Some(path) = &a.out {
        fs::write(path, format!("{json}\n"))?;
    }
    if a.json {
        writeln!(out, "{json}")?;
    } else {
        write!(out, "{}", summarize(&cert))?;
    }
    Ok(())
}

pub fn read_certificate(path: &Path) -> Result<ContactCertificate, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    ContactCertificate::from_json(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cert = read_certificate(&a.certificate)?;
    let report = verify_report(&cert);
    match &report.recomputed_det {
        Some(det) => writeln!(out, "recomputed det: {det}")?,
        None => writeln!(out, "recomputed det: unavailable")?,
    }
    if report.passed() {
        writeln!(out, "verified")?;
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "verification failed: {}",
            report.problems.join("; ")
        )))
    }
}

/// One row of the census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub top: String,
    pub bottom: String,
    pub dim: usize,
    pub index: usize,
    pub cycles: usize,
    pub paths: usize,
    /// Contact case for index-one rows.
    pub case: Option<&'static str>,
    /// Certificate verdict when certificates were requested.
    pub certificate: Option<bool>,
}

fn case_name(report: &ComponentReport) -> Option<&'static str> {
    if report.is_two_paths() {
        Some("two_paths")
    } else if report.is_one_cycle() {
        Some("one_cycle")
    } else {
        None
    }
}

pub fn census_row(spec: &SeaweedSpec, certify: bool) -> CensusRow {
    let report = components(&build_meander(spec));
    let index = report.index();
    let case = if spec.n() == 2 && report.is_one_cycle() {
        Some("sl2")
    } else {
        case_name(&report)
    };
    let certificate = (certify && index == 1).then(|| {
        synthesize_contact_with(spec, DEFAULT_K_MAX)
            .map(|c| verify_report(&c).passed())
            .unwrap_or(false)
    });
    CensusRow {
        top: spec.top().to_string(),
        bottom: spec.bottom().to_string(),
        dim: spec.dimension(),
        index,
        cycles: report.cycles,
        paths: report.paths,
        case,
        certificate,
    }
}

/// All rows for `n`, in lexicographic order of `(top, bottom)`.
pub fn census(n: usize, index_filter: Option<usize>, certify: bool) -> Vec<CensusRow> {
    let specs: Vec<SeaweedSpec> = SeaweedSpec::all(n)
        .into_par_iter()
        .filter(|s| index_filter.is_none_or(|k| seaweed_core::meander::index(s) == k))
        .collect();
    let mut rows: Vec<(usize, CensusRow)> = specs
        .par_iter()
        .enumerate()
        .map(|(i, s)| (i, census_row(s, certify)))
        .collect();
    rows.sort_by_key(|(i, _)| *i);
    rows.into_iter().map(|(_, r)| r).collect()
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.n == 0 || a.n > MAX_ENUMERATE_N {
        return Err(CliError::Parse(format!(
            "n must be in 1..={MAX_ENUMERATE_N}, got {}",
            a.n
        )));
    }
    let certify = a.classify || a.index_filter == Some(1);
    let compute = || census(a.n, a.index_filter, certify);
    let rows = match a.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::Parse(e.to_string()))?
            .install(compute),
        None => compute(),
    };
    let failures = rows.iter().filter(|r| r.certificate == Some(false)).count();
    let certified = rows.iter().filter(|r| r.certificate.is_some()).count();
    let opt = |v: Option<&str>| v.unwrap_or("").to_string();
    let cert_col = |c: Option<bool>| match c {
        Some(true) => "verified",
        Some(false) => "failed",
        None => "",
    };
    if a.csv {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.top,
                r.bottom,
                r.dim,
                r.index,
                r.cycles,
                r.paths,
                opt(r.case),
                cert_col(r.certificate)
            )?;
        }
    } else {
        writeln!(
            out,
            "{:<14} {:<14} {:>4} {:>5} {:>6} {:>5}  {:<9} certificate",
            "top", "bottom", "dim", "index", "cycles", "paths", "case"
        )?;
        for r in &rows {
            writeln!(
                out,
                "{:<14} {:<14} {:>4} {:>5} {:>6} {:>5}  {:<9} {}",
                r.top,
                r.bottom,
                r.dim,
                r.index,
                r.cycles,
                r.paths,
                opt(r.case),
                cert_col(r.certificate)
            )?;
        }
        writeln!(out, "{} rows", rows.len())?;
        if certify {
            writeln!(out, "{certified} certificates, {failures} failures")?;
        }
    }
    if failures > 0 {
        return Err(CliError::Synthesis(format!(
            "{failures} of {certified} certificates failed"
        )));
    }
    Ok(())
}

/// Discrepancies between bordered determinant and volume coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeComparison {
    pub samples: usize,
    /// `max |det - vol|`.
    pub raw: Rational,
    /// `max |det - (vol / k!)²|`.
    pub normalized: Rational,
}

fn abs(x: Rational) -> Rational {
    if x < Rational::default() {
        -x
    } else {
        x
    }
}

pub fn compare_volume(
    spec: &SeaweedSpec,
    samples: usize,
    seed: u64,
) -> Result<VolumeComparison, CliError> {
    let algebra = materialize_standard(spec).map_err(|e| CliError::Parse(e.to_string()))?;
    let dim = algebra.dim();
    if dim % 2 == 0 || dim > WEDGE_MAX_DIM {
        return Err(CliError::Inapplicable(format!(
            "volume comparison needs odd dimension at most {WEDGE_MAX_DIM}, got {dim}"
        )));
    }
    let fact: Rational = (1..=dim / 2).map(|i| rat(i as i64)).product();
    let mut raw = Rational::default();
    let mut normalized = Rational::default();
    for phi in sample_forms(dim, samples, seed) {
        let (det, vol, _) =
            volume_matches_bhat(&algebra, &phi).map_err(|e| CliError::Parse(e.to_string()))?;
        let scaled = &vol / &fact;
        raw = raw.max(abs(&det - &vol));
        normalized = normalized.max(abs(&det - &scaled * &scaled));
    }
    Ok(VolumeComparison {
        samples,
        raw,
        normalized,
    })
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_spec(&a.spec)?;
    let seed = resolve_seed(a.seed)?;
    let algebra = materialize_standard(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
    let oracle = algebra.index_randomized(a.trials, seed);
    writeln!(
        out,
        "oracle index: {oracle} ({} trials, seed {seed})",
        a.trials
    )?;
    if a.lemma1 {
        let cmp = compare_volume(&spec, a.trials, seed)?;
        writeln!(out, "samples: {}", cmp.samples)?;
        writeln!(out, "max |det - vol|: {}", format_rational(&cmp.raw))?;
        writeln!(
            out,
            "max |det - (vol/k!)^2|: {}",
            format_rational(&cmp.normalized)
        )?;
        if cmp.normalized != Rational::default() {
            return Err(CliError::VerificationFailed(
                "bordered determinant disagrees with the normalized volume".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> SeaweedSpec {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_applicability() {
        assert_eq!(gcd_index(&spec("1|2|5 / 8")), Some(0));
        assert_eq!(gcd_index(&spec("2|6 / 8")), Some(1));
        assert_eq!(gcd_index(&spec("8 / 8")), None);
        assert_eq!(gcd_index(&spec("1|1|1|1 / 4")), None);
        assert_eq!(gcd_index(&spec("4 / 2|2")), None);
    }

    #[test]
    fn census_rows() {
        let rows = census(2, None, true);
        assert_eq!(rows.len(), 4);
        let sl2 = &rows[3];
        assert_eq!((sl2.top.as_str(), sl2.bottom.as_str()), ("2", "2"));
        assert_eq!((sl2.dim, sl2.index, sl2.case), (3, 1, Some("sl2")));
        assert_eq!(sl2.certificate, Some(true));
        assert_eq!(rows[1].certificate, None);

        let filtered = census(5, Some(1), false);
        assert!(filtered.iter().all(|r| r.index == 1 && r.case.is_some()));
        assert!(filtered
            .iter()
            .any(|r| r.top == "1|4" && r.bottom == "3|1|1"));
    }

    #[test]
    fn summary_text() {
        let cert = synthesize_contact_with(&spec("2|6 / 8"), DEFAULT_K_MAX).unwrap();
        let s = summarize(&cert);
        assert!(s.contains("case: one cycle"));
        assert!(s.contains("reduced: 2|1|4|1 / 8"));
        assert!(s.contains("k: 1\n"));
        assert!(s.contains("det: 256"));
    }

    #[test]
    fn error_codes() {
        assert_eq!(not_index_one_message(0), "index 0 (Frobenius)");
        assert_eq!(not_index_one_message(3), "index 3");
        assert_eq!(CliError::Parse(String::new()).exit_code(), 2);
        assert_eq!(CliError::Inapplicable(String::new()).exit_code(), 3);
        assert_eq!(CliError::NotIndexOne(String::new()).exit_code(), 4);
        assert_eq!(CliError::Synthesis(String::new()).exit_code(), 5);
        assert_eq!(CliError::VerificationFailed(String::new()).exit_code(), 1);
    }

    #[test]
    fn volume_comparison_on_sl2() {
        let cmp = compare_volume(&spec("2 / 2"), 5, 0).unwrap();
        assert_eq!(cmp.normalized, Rational::default());
        assert!(cmp.raw > Rational::default());
        assert!(compare_volume(&spec("1|1 / 2"), 5, 0).is_err());
    }
}
