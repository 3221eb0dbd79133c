//! Command-line front end: every published table and constant is
//! reproducible by one command.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::analysis::{
    self, gap_predictors, hl_predictor, math_constants, wagstaff_fit, ConstantName,
    TranscendenceKind,
};
use crate::cache;
use crate::cfrac::{convergents, evaluate_all, evaluate_stream, expand_real, ContinuedFraction};
use crate::error::{Error, Result};
use crate::exactnum::ExactRatio;
use crate::primes::{gap_pairs, family_quotients, PrimeFamily, QuotientStream};
use crate::report::{emit, OutputFormat, ReportDocument};

/// The 47 Mersenne prime exponents shipped with the crate (externally
/// sourced; see the data file header).
pub const MERSENNE_EXPONENTS_FILE: &str = include_str!("../data/mersenne_exponents.txt");

/// Parsed command-line configuration.
#[derive(Debug, Parser)]
#[command(name = "primefrac", version, about = "Continued fractions built from prime families")]
pub struct CommandConfig {
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "text")]
    pub format: String,

    /// Cache directory (overrides the PRIMEFRAC_CACHE environment variable).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Regenerate streams, ignoring and not writing any cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a prime-family continued fraction to certified digits.
    Eval {
        /// all-primes, twin, d-twin, quad-m2p1, friedlander-iwaniec,
        /// mersenne, primorial-plus or primorial-minus
        family: String,
        /// Prime ceiling (families with a prime/value bound).
        #[arg(long)]
        limit: Option<u64>,
        /// Gap size for d-twin.
        #[arg(long)]
        d: Option<u64>,
        /// Rectangle bound m <= m-max (friedlander-iwaniec).
        #[arg(long)]
        m_max: Option<u64>,
        /// Rectangle bound n <= n-max (friedlander-iwaniec).
        #[arg(long)]
        n_max: Option<u64>,
        /// Exponent ceiling (mersenne).
        #[arg(long)]
        max_exponent: Option<u64>,
        /// Fractional digits to render.
        #[arg(long, default_value_t = 50)]
        digits: usize,
    },
    /// Reproduce d-twin table rows u_d in scientific notation.
    Table1 {
        /// Single gap to evaluate.
        #[arg(long)]
        d: Option<u64>,
        /// Evaluate every even gap 4..=d-max.
        #[arg(long)]
        d_max: Option<u64>,
        /// Prime ceiling for the gap scan.
        #[arg(long, default_value_t = 100_000_000)]
        limit: u64,
        /// Significant digits per row.
        #[arg(long, default_value_t = 50)]
        digits: usize,
    },
    /// Diagnostic profiles: delta, khinchin, levy, mu or dr.
    Profile {
        kind: String,
        /// Family, as in eval.
        family: String,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        max_exponent: Option<u64>,
        /// Largest index n to emit.
        #[arg(long, default_value_t = 1000)]
        up_to: usize,
    },
    /// Predictor comparisons: hl, gaps or wagstaff.
    Predict {
        kind: String,
        /// Family for hl: twin, quad-m2p1 or friedlander-iwaniec.
        #[arg(long)]
        family: Option<String>,
        /// Scale x for hl.
        #[arg(long)]
        x: Option<u64>,
        /// Gap size for gaps.
        #[arg(long)]
        d: Option<u64>,
        /// Scan limit for gaps.
        #[arg(long, default_value_t = 10_000_000)]
        limit: u64,
        /// Exponent file for wagstaff (defaults to the shipped 47).
        #[arg(long)]
        exponents_file: Option<PathBuf>,
        /// Use only the first N exponents.
        #[arg(long)]
        first: Option<usize>,
    },
    /// Expand a digit file into certified partial quotients.
    Expand {
        digitfile: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max_terms: usize,
    },
    /// Print a named constant: K0, L0, C2, Cq, CFI, gamma, mR, c or pi.
    Constants {
        name: String,
        #[arg(long, default_value_t = 50)]
        digits: usize,
    },
}

/// Builds a family from the eval/profile flags, with documented defaults
/// that reproduce the published constants.
fn build_family(
    name: &str,
    limit: Option<u64>,
    d: Option<u64>,
    m_max: Option<u64>,
    n_max: Option<u64>,
    max_exponent: Option<u64>,
) -> Result<PrimeFamily> {
    let family = match name {
        "all-primes" => PrimeFamily::AllPrimes { limit: limit.unwrap_or(10_000) },
        "twin" => PrimeFamily::Twin { limit: limit.unwrap_or(10_000) },
        "d-twin" => PrimeFamily::DTwin {
            d: d.ok_or_else(|| Error::Cli("d-twin requires --d".into()))?,
            limit: limit.unwrap_or(100_000_000),
        },
        "quad-m2p1" => PrimeFamily::QuadM2P1 { limit: limit.unwrap_or(100_000_000) },
        "friedlander-iwaniec" => PrimeFamily::FriedlanderIwaniec {
            m_max: m_max.unwrap_or(100),
            n_max: n_max.unwrap_or(10),
        },
        "mersenne" => PrimeFamily::Mersenne { max_exponent: max_exponent.unwrap_or(607) },
        "primorial-plus" => PrimeFamily::PrimorialPlus { limit: limit.unwrap_or(1021) },
        "primorial-minus" => PrimeFamily::PrimorialMinus { limit: limit.unwrap_or(1021) },
        other => return Err(Error::InvalidFamily(other.to_string())),
    };
    family.validate()?;
    Ok(family)
}

/// Cache directory resolution: flag, then PRIMEFRAC_CACHE, then
/// `.primefrac-cache` under the working directory.
pub fn resolve_cache_dir(flag: &Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.clone();
    }
    if let Ok(dir) = std::env::var(cache::CACHE_ENV_VAR) {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(".primefrac-cache")
}

fn load_or_generate(family: &PrimeFamily, dir: &Path, no_cache: bool) -> Result<QuotientStream> {
    if !no_cache {
        if let Some(stream) = cache::read_stream(family, dir)? {
            return Ok(stream);
        }
    }
    let stream = family_quotients(family)?;
    if !no_cache {
        cache::write_stream(&stream, dir)?;
    }
    Ok(stream)
}

/// Executes a parsed configuration, producing one document per result.
pub fn run(config: &CommandConfig) -> Result<Vec<ReportDocument>> {
    let cache_dir = resolve_cache_dir(&config.cache_dir);
    match &config.command {
        Command::Eval { family, limit, d, m_max, n_max, max_exponent, digits } => {
            let family = build_family(family, *limit, *d, *m_max, *n_max, *max_exponent)?;
            let stream = load_or_generate(&family, &cache_dir, config.no_cache)?;
            let eval = evaluate_all(&BigInt::zero(), stream.quotients.iter().cloned(), *digits)?;
            Ok(vec![ReportDocument::for_evaluation(family.slug(), &family, &eval)])
        }
        Command::Table1 { d, d_max, limit, digits } => {
            let ds: Vec<u64> = match (d, d_max) {
                (Some(d), None) => vec![*d],
                (None, Some(m)) => (2..=*m).step_by(2).skip(1).collect(),
                (None, None) => (4..=50).step_by(2).collect(),
                (Some(_), Some(_)) => {
                    return Err(Error::Cli("table1 takes --d or --d-max, not both".into()))
                }
            };
            let mut docs = Vec::new();
            for d in ds {
                let family = PrimeFamily::DTwin { d, limit: *limit };
                family.validate()?;
                let quotients =
                    gap_pairs(d, *limit).flat_map(|(p, q)| [BigInt::from(p), BigInt::from(q)]);
                // a couple of guard digits so the scientific mantissa is full
                let eval = evaluate_stream(&BigInt::zero(), quotients, digits + 4)?;
                if eval.terms_used == 0 {
                    return Err(Error::Domain(format!("no gap-{d} pairs below {limit}")));
                }
                let sci = eval.convergent.to_scientific(*digits)?;
                let mut doc = ReportDocument::for_evaluation(&format!("u_d{d}"), &family, &eval);
                doc.digits = sci;
                docs.push(doc);
            }
            Ok(docs)
        }
        Command::Profile { kind, family, limit, d, m_max, n_max, max_exponent, up_to } => {
            let family = build_family(family, *limit, *d, *m_max, *n_max, *max_exponent)?;
            let stream = load_or_generate(&family, &cache_dir, config.no_cache)?;
            let cf = ContinuedFraction::from_stream(&stream);
            let convs = convergents(&cf, *up_to + 3);
            let denominators: Vec<BigInt> =
                convs.iter().map(|c| c.denominator().clone()).collect();
            let series = match kind.as_str() {
                "khinchin" => analysis::khinchin_profile(&stream.quotients, *up_to)?,
                "levy" => analysis::levy_profile(&denominators, *up_to)?,
                "mu" => analysis::sondow_mu(&stream.quotients, &denominators, *up_to)?,
                "dr" => analysis::transcendence_statistics(
                    TranscendenceKind::DavenportRoth,
                    &denominators[..denominators.len().min(*up_to)],
                )?,
                "delta" => {
                    let all = convergents(&cf, usize::MAX);
                    analysis::delta_profile_from_convergents(&all, *up_to)?
                }
                other => return Err(Error::Cli(format!("unknown profile kind {other:?}"))),
            };
            let mut doc =
                ReportDocument::for_series(&format!("{}-{}", series.label.as_str(), family.slug()), &series);
            doc.family = Some(family.slug().to_string());
            doc.bound = Some(family.bound_string());
            Ok(vec![doc])
        }
        Command::Predict { kind, family, x, d, limit, exponents_file, first } => match kind.as_str() {
            "hl" => {
                let fam_name = family.clone().ok_or_else(|| Error::Cli("predict hl requires --family".into()))?;
                let x = x.ok_or_else(|| Error::Cli("predict hl requires --x".into()))?;
                let family = build_family(&fam_name, Some(x), None, None, None, None)?;
                let cmp = hl_predictor(&family, x)?;
                let mut doc = ReportDocument {
                    name: format!("hl-{}", family.slug()),
                    digits: String::new(),
                    error_exponent: None,
                    terms_used: None,
                    family: Some(family.slug().to_string()),
                    bound: Some(x.to_string()),
                    series: vec![(0, cmp.predicted), (2, cmp.actual), (3, cmp.ratio)],
                    notes: vec![
                        "series indices: 0 closed-form prediction, 1 integral prediction (twin only), 2 actual count, 3 ratio".into(),
                    ],
                };
                if let Some(i) = cmp.predicted_integral {
                    doc.series.insert(1, (1, i));
                }
                Ok(vec![doc])
            }
            "gaps" => {
                let d = d.ok_or_else(|| Error::Cli("predict gaps requires --d".into()))?;
                let g = gap_predictors(d, *limit)?;
                let mut series = vec![(0, g.shanks), (1, g.wolf), (2, g.cf_approximation)];
                let mut notes = vec![
                    "series indices: 0 shanks e^sqrt(d), 1 wolf form, 2 cf approximation, 3 actual first occurrence, 4 actual u_d".into(),
                ];
                if let Some(rec) = &g.first_occurrence {
                    series.push((3, rec.lower as f64));
                } else {
                    notes.push(format!("no gap-{d} pair below {limit}"));
                }
                if let Some(ud) = g.actual_ud {
                    series.push((4, ud));
                }
                Ok(vec![ReportDocument {
                    name: format!("gaps-d{d}"),
                    digits: String::new(),
                    error_exponent: None,
                    terms_used: None,
                    family: None,
                    bound: Some(limit.to_string()),
                    series,
                    notes,
                }])
            }
            "wagstaff" => {
                let contents = match exponents_file {
                    Some(path) => std::fs::read_to_string(path)?,
                    None => MERSENNE_EXPONENTS_FILE.to_string(),
                };
                let mut exponents: Vec<u64> = Vec::new();
                for line in contents.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    exponents.push(line.parse().map_err(|_| {
                        Error::Parse { position: 0, message: format!("bad exponent line {line:?}") }
                    })?);
                }
                if let Some(n) = first {
                    exponents.truncate(*n);
                }
                let fit = wagstaff_fit(&exponents)?;
                Ok(vec![ReportDocument {
                    name: "wagstaff-fit".into(),
                    digits: String::new(),
                    error_exponent: None,
                    terms_used: Some(exponents.len()),
                    family: Some("mersenne".into()),
                    bound: None,
                    series: vec![
                        (0, fit.slope),
                        (1, fit.intercept),
                        (2, fit.theoretical_slope),
                        (3, fit.theoretical_intercept),
                    ],
                    notes: vec![
                        "series indices: 0 fitted slope, 1 fitted intercept, 2 theoretical slope, 3 theoretical intercept".into(),
                    ],
                }])
            }
            other => Err(Error::Cli(format!("unknown predict kind {other:?}"))),
        },
        Command::Expand { digitfile, max_terms } => {
            let contents = std::fs::read_to_string(digitfile)?;
            let decimal = crate::cfrac::expand::parse_digit_file(&contents, None)?;
            let expansion = expand_real(&decimal, *max_terms)?;
            let series: Vec<(u64, f64)> = expansion
                .terms
                .iter()
                .enumerate()
                .map(|(i, t)| (i as u64, ExactRatio::from_integer(t.clone()).to_f64()))
                .collect();
            Ok(vec![ReportDocument {
                name: format!("expand-{}", digitfile.file_name().and_then(|s| s.to_str()).unwrap_or("input")),
                digits: String::new(),
                error_exponent: decimal.certified_exponent(),
                terms_used: Some(expansion.terms.len()),
                family: None,
                bound: None,
                series,
                notes: vec![format!("terminated: {:?}", expansion.terminated)],
            }])
        }
        Command::Constants { name, digits } => {
            let name = ConstantName::parse(name)?;
            let value = math_constants(name, *digits)?;
            Ok(vec![ReportDocument {
                name: name.label().to_string(),
                digits: value.digits().to_string(),
                error_exponent: value.certified_exponent(),
                terms_used: None,
                family: None,
                bound: None,
                series: Vec::new(),
                notes: vec![name.provenance().to_string()],
            }])
        }
    }
}

/// Emits all documents in the configured format.
pub fn render(config: &CommandConfig, docs: &[ReportDocument]) -> Result<String> {
    let format = OutputFormat::parse(&config.format)?;
    if format == OutputFormat::Json && docs.len() > 1 {
        // one JSON document per line
        let mut out = String::new();
        for doc in docs {
            out.push_str(&emit(doc, format)?);
            out.push('\n');
        }
        return Ok(out);
    }
    let mut out = String::new();
    for doc in docs {
        out.push_str(&emit(doc, format)?);
        if !out.ends_with('\n') {
            out.push('\n');
        }
    }
    Ok(out)
}

/// CLI entry point: parse, run, print; errors go to stderr as JSON with a
/// nonzero exit code.
pub fn main_entry() -> i32 {
    let config = CommandConfig::parse();
    match run(&config).and_then(|docs| render(&config, &docs)) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            1
        }
    }
}
