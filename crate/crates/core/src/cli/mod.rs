//! Command surface of the `lsc` binary.
//!
//! Every command except `report` and `replay` emits a [`CertificateDocument`].
//! Exit status: 0 certified (or plain success), 1 refuted, 2 unknown,
//! 64 usage error, 65 engine error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use crate::certify::{self, Poly, SearchConfig, Verdict};
use crate::constructions::{self, Extractor, FsExtractor, IntervalExtractor, PrimeResidueParams};
use crate::schedule::ScheduleSpec;
use crate::setcalc::{self, SetExpr};
use crate::symbolic::{self, CoverVerdict, IndexBase, WordSpec};
use crate::{dsl, Error, Result};

mod document;
mod lattice;

pub use document::CertificateDocument;
pub use lattice::CONTAINMENTS;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_ENGINE: i32 = 65;

fn positive(s: &str) -> std::result::Result<u64, String> {
    match s.trim().parse::<u64>() {
        Ok(0) => Err("must be >= 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "lsc", version, about = "Largeness certificates for sets of positive integers")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Evaluate search candidates on the thread pool. Results are identical.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Set, schedule and word flags take DSL text, or `@path` to read it from a file.
#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Members of a set on 1..=window.
    Eval {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "100", value_parser = positive)]
        window: u64,
    },
    /// Certify or refute a largeness property.
    #[command(subcommand)]
    Certify(Property),
    /// Build a construction and print it as a set expression.
    #[command(subcommand)]
    Build(Build),
    /// Partition a set into two parts.
    #[command(subcommand)]
    Split(SplitOp),
    /// Decompose A relative to S into B_S and G_S.
    Decompose {
        #[arg(long)]
        set: String,
        #[arg(long)]
        probe: String,
        #[arg(long, default_value = "10000", value_parser = positive)]
        window: u64,
        #[arg(long, default_value = "8", value_parser = positive)]
        ell_max: u64,
        #[arg(long, value_parser = positive)]
        min_interval: Option<u64>,
    },
    /// Expand words and scan their factors.
    #[command(subcommand)]
    Word(WordOp),
    /// Static tables.
    #[command(subcommand)]
    Report(Report),
    /// Re-run a stored document and compare byte for byte.
    Replay {
        #[arg(long)]
        doc: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Property {
    /// Least gap bound on the window.
    Syndetic {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "1000", value_parser = positive)]
        window: u64,
    },
    /// One interval of each length 1..=level inside the set.
    Thick {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "4", value_parser = positive)]
        level: u64,
        #[arg(long, default_value = "1000000", value_parser = positive)]
        bound: u64,
    },
    /// Piecewise syndetic: some union of at most `shift + 1` shifts is thick.
    Ps {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "8", value_parser = positive)]
        shift: u64,
        #[arg(long, default_value = "4", value_parser = positive)]
        level: u64,
        #[arg(long, default_value = "1000000", value_parser = positive)]
        bound: u64,
    },
    /// Generators whose finite sums all lie in the set.
    Ip {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "3", value_parser = positive)]
        depth: u64,
        #[arg(long, default_value = "10000", value_parser = positive)]
        bound: u64,
    },
    /// Syndeticity of the intersection of B - f over f in F.
    Ds {
        #[arg(long)]
        set: String,
        #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
        f: Vec<u64>,
        #[arg(long, default_value = "1000", value_parser = positive)]
        window: u64,
    },
    /// As `ds`, with the origin adjoined to F.
    Dcs {
        #[arg(long)]
        set: String,
        #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
        f: Vec<u64>,
        #[arg(long, default_value = "1000", value_parser = positive)]
        window: u64,
    },
    /// Finite F inside A with S - F thick.
    Dt {
        #[arg(long)]
        set: String,
        #[arg(long)]
        probe: String,
        /// Check this F instead of searching.
        #[arg(long, value_delimiter = ',', value_parser = positive)]
        f: Option<Vec<u64>>,
        #[arg(long, default_value = "64", value_parser = positive)]
        f_max: u64,
        #[arg(long, default_value = "4", value_parser = positive)]
        level: u64,
        #[arg(long, default_value = "1000000", value_parser = positive)]
        bound: u64,
    },
    /// Finite F inside A with S \ (S - F) sparse on the window.
    Pr {
        #[arg(long)]
        set: String,
        #[arg(long)]
        probe: String,
        #[arg(long, value_delimiter = ',', value_parser = positive)]
        f: Option<Vec<u64>>,
        #[arg(long, default_value = "64", value_parser = positive)]
        f_max: u64,
        #[arg(long, default_value = "1000", value_parser = positive)]
        window: u64,
        #[arg(long, value_parser = positive)]
        threshold: Option<u64>,
    },
    /// x, y and every x + p(y) in the set. Polynomials are coefficient
    /// lists, constant term first, e.g. `0,1,1` for y^2 + y.
    Brauer {
        #[arg(long)]
        set: String,
        #[arg(long, required = true)]
        poly: Vec<String>,
        #[arg(long, default_value = "100", value_parser = positive)]
        bound: u64,
    },
    /// Least prefix containing an interval of the given length.
    Compact {
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = positive)]
        length: u64,
        #[arg(long, default_value = "1000000", value_parser = positive)]
        bound: u64,
    },
    /// Least n with B ∩ (B - n) piecewise syndetic.
    Shift {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "16", value_parser = positive)]
        n_bound: u64,
        #[arg(long, default_value = "4", value_parser = positive)]
        level: u64,
        #[arg(long, default_value = "1000000", value_parser = positive)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Build {
    /// Union of residue classes mod k, each intersected with a thick set.
    ResidueThick {
        #[arg(long, value_parser = positive)]
        k: u64,
        /// One schedule per residue class.
        #[arg(long, required = true)]
        schedule: Vec<String>,
        /// Also produce the finite set F for this level.
        #[arg(long, value_parser = positive)]
        ell: Option<u64>,
    },
    /// Union of (p N + c) ∩ H over primes p with separated thick H.
    #[command(visible_alias = "prop42")]
    PrimeUnion {
        #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        c: Vec<i64>,
        #[arg(long, value_parser = positive)]
        branches: Option<u64>,
    },
    /// Table of separated thick sets and the assembled row sets.
    Separated {
        #[arg(long, value_parser = positive)]
        rows: u64,
        #[arg(long, value_parser = positive)]
        cols: u64,
        #[arg(long, default_value = "10", value_parser = positive)]
        factor: u64,
        #[arg(long, value_delimiter = ',', value_parser = positive)]
        primes: Option<Vec<u64>>,
        #[arg(long, default_value = "3")]
        d_max: u64,
        #[arg(long, default_value = "100000", value_parser = positive)]
        limit: u64,
    },
    /// Least n with n + i ≡ a_i (mod p_i).
    Crt {
        #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        residues: Vec<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtractorKind {
    Interval,
    FiniteSums,
}

#[derive(Subcommand, Debug)]
pub enum SplitOp {
    /// Alternate intervals of a schedule.
    Thick {
        #[arg(long)]
        schedule: String,
        #[arg(long, default_value = "4", value_parser = positive)]
        level: u64,
        #[arg(long, default_value = "1000000", value_parser = positive)]
        bound: u64,
        #[arg(long, default_value = "100000", value_parser = positive)]
        window: u64,
    },
    /// Greedy carving of finite witnesses, alternating between parts.
    Filtration {
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = ExtractorKind::Interval)]
        extractor: ExtractorKind,
        #[arg(long, default_value = "10", value_parser = positive)]
        rounds: u64,
        #[arg(long, default_value = "10000", value_parser = positive)]
        window: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordOp {
    /// Prefix of the given length.
    Expand {
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "100", value_parser = positive)]
        length: u64,
    },
    /// Positions where the pattern occurs.
    Returns {
        #[arg(long)]
        word: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "1000", value_parser = positive)]
        length: u64,
        #[arg(long, default_value = "0", value_parser = clap::value_parser!(u8).range(0..=1))]
        base: u8,
    },
    /// Recurrence bounds W(n) for factor lengths 1..=n-max.
    Profile {
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "5", value_parser = positive)]
        n_max: u64,
        #[arg(long, default_value = "10000", value_parser = positive)]
        prefix: u64,
    },
    /// Every length-n factor begins with one of the patterns.
    Cover {
        #[arg(long)]
        word: String,
        #[arg(long, value_delimiter = ',', required = true)]
        patterns: Vec<String>,
        #[arg(long, value_parser = positive)]
        n: u64,
        #[arg(long, default_value = "10000", value_parser = positive)]
        prefix: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Report {
    /// Containments between the largeness families.
    Lattice,
}

const DSL_FLAGS: [&str; 4] = ["--set", "--probe", "--schedule", "--word"];

fn load(value: &str) -> Result<String> {
    match value.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::input(format!("reading {path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

fn parse_set(raw: &str) -> Result<SetExpr> {
    dsl::parse_set(&load(raw)?)
}

fn parse_schedule(raw: &str) -> Result<ScheduleSpec> {
    dsl::parse_schedule(&load(raw)?)
}

fn parse_word(raw: &str) -> Result<WordSpec> {
    dsl::parse_word(&load(raw)?)
}

fn canonical_input(flag: &str, raw: &str) -> Result<String> {
    Ok(match flag {
        "--schedule" => parse_schedule(raw)?.to_string(),
        "--word" => parse_word(raw)?.to_string(),
        _ => parse_set(raw)?.to_string(),
    })
}

/// Splits raw arguments into the scalar command line and canonical DSL inputs.
/// Global presentation flags are dropped so they cannot change the document.
fn canonicalize(args: &[String]) -> Result<(String, Vec<(String, String)>)> {
    let mut command = Vec::new();
    let mut inputs = Vec::new();
    let mut it = args.iter().skip(1);
    while let Some(tok) = it.next() {
        let (flag, inline) = match tok.split_once('=') {
            Some((f, v)) if f.starts_with("--") => (f, Some(v.to_string())),
            _ => (tok.as_str(), None),
        };
        let mut value = |inline: Option<String>| inline.or_else(|| it.next().cloned()).unwrap_or_default();
        if DSL_FLAGS.contains(&flag) {
            let v = value(inline);
            inputs.push((flag.to_string(), canonical_input(flag, &v)?));
        } else if flag == "--format" || flag == "--out" {
            value(inline);
        } else if flag != "--parallel" {
            command.push(tok.split_whitespace().collect::<String>());
        }
    }
    Ok((command.join(" "), inputs))
}

enum Outcome {
    Doc(CertificateDocument),
    Text(String, i32),
}

fn exit_of(verdict: &str) -> i32 {
    match verdict {
        "refuted" => 1,
        "unknown" => 2,
        _ => 0,
    }
}

fn with_verdict(doc: &mut CertificateDocument, v: &Verdict) {
    let c = v.certificate();
    doc.verdict = v.label().into();
    doc.kind = c.kind().into();
    doc.detail = c.to_string();
    doc.witness = c.witness_integers();
}

fn list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_poly(text: &str) -> Result<Poly> {
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse::<Ratio<i64>>().map_err(|_| Error::input(format!("bad coefficient {c:?} in {text:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

fn search_doc(doc: &mut CertificateDocument, s: &certify::FSearch) {
    with_verdict(doc, &s.verdict);
    if let Some(f) = &s.f {
        doc.output.push(format!("F: {}", list(f)));
    }
    if let Some(subject) = &s.subject {
        doc.output.push(format!("subject: {subject}"));
    }
    doc.output.push(format!("evaluated: {}", s.evaluated));
}

fn execute(cli: &Cli, args: &[String]) -> Result<Outcome> {
    let cfg = SearchConfig::from_env()?.parallel(cli.parallel);
    match &cli.verb {
        Verb::Report(Report::Lattice) => return Ok(Outcome::Text(lattice::render(), 0)),
        Verb::Replay { doc } => return replay(doc, cli.parallel),
        _ => {}
    }
    let (command, inputs) = canonicalize(args)?;
    let mut doc = CertificateDocument::new(command, inputs);
    match &cli.verb {
        Verb::Eval { set, window } => {
            let a = parse_set(set)?;
            let w = setcalc::window(&a, *window as usize)?;
            doc.kind = "window".into();
            doc.detail = format!("count={} window={window}", w.count());
            if let Some(p) = setcalc::eventually_periodic_normalize(&a) {
                doc.output.push(format!("periodic: preperiod={} period={}", p.preperiod, p.period));
            }
            doc.witness = w.members().collect();
        }
        Verb::Certify(p) => certify_cmd(&mut doc, p, &cfg)?,
        Verb::Build(b) => build_cmd(&mut doc, b)?,
        Verb::Split(s) => split_cmd(&mut doc, s)?,
        Verb::Decompose { set, probe, window, ell_max, min_interval } => {
            let d = constructions::structure_decompose(&parse_set(set)?, &parse_set(probe)?, *window, *ell_max, *min_interval)?;
            with_verdict(&mut doc, &d.cert);
            doc.output.push(format!("ell: {}", d.ell));
            doc.output.push(format!("G_S: {}", d.g_s));
            doc.output.push(format!("B_S: {}", d.b_s));
            for a in &d.assumptions {
                doc.output.push(format!("assumption: {a}"));
            }
        }
        Verb::Word(w) => word_cmd(&mut doc, w)?,
        Verb::Report(_) | Verb::Replay { .. } => unreachable!(),
    }
    Ok(Outcome::Doc(doc))
}

fn certify_cmd(doc: &mut CertificateDocument, p: &Property, cfg: &SearchConfig) -> Result<()> {
    match p {
        Property::Syndetic { set, window } => with_verdict(doc, &certify::syndetic_gap(&parse_set(set)?, *window)?),
        Property::Thick { set, level, bound } => {
            with_verdict(doc, &certify::thick_to_level(&parse_set(set)?, *level, *bound)?)
        }
        Property::Ps { set, shift, level, bound } => {
            with_verdict(doc, &certify::piecewise_syndetic(&parse_set(set)?, *shift, *level, *bound)?)
        }
        Property::Ip { set, depth, bound } => {
            with_verdict(doc, &certify::ip_witness_with(&parse_set(set)?, *depth, *bound, cfg)?)
        }
        Property::Ds { set, f, window } => {
            with_verdict(doc, &certify::ds_certificate(&parse_set(set)?, f, *window)?);
            doc.output.push(format!("F: {}", list(f)));
        }
        Property::Dcs { set, f, window } => {
            with_verdict(doc, &certify::dcs_certificate(&parse_set(set)?, f, *window)?);
            doc.output.push(format!("F: {}", list(f)));
        }
        Property::Dt { set, probe, f, f_max, level, bound } => {
            let (a, s) = (parse_set(set)?, parse_set(probe)?);
            match f {
                Some(f) => {
                    with_verdict(doc, &certify::dt_validate(&a, &s, f, *level, *bound)?);
                    doc.output.push(format!("F: {}", list(f)));
                }
                None => search_doc(doc, &certify::dt_check_with(&a, &s, *f_max, *level, *bound, cfg)?),
            }
        }
        Property::Pr { set, probe, f, f_max, window, threshold } => {
            let (a, s) = (parse_set(set)?, parse_set(probe)?);
            match f {
                Some(f) => {
                    with_verdict(doc, &certify::pr_validate(&a, &s, f, *window, *threshold)?);
                    doc.output.push(format!("F: {}", list(f)));
                }
                None => search_doc(doc, &certify::pr_check_with(&a, &s, *f_max, *window, *threshold, cfg)?),
            }
        }
        Property::Brauer { set, poly, bound } => {
            let polys = poly.iter().map(|p| parse_poly(p)).collect::<Result<Vec<_>>>()?;
            with_verdict(doc, &certify::brauer_search_with(&parse_set(set)?, &polys, *bound, cfg)?);
            for p in &polys {
                doc.output.push(format!("p(y) = {p}"));
            }
        }
        Property::Compact { set, length, bound } => {
            with_verdict(doc, &certify::compactness_prefix(*length, &parse_set(set)?, *bound)?)
        }
        Property::Shift { set, n_bound, level, bound } => {
            let (n, v) = certify::shift_correlation(&parse_set(set)?, *n_bound, *level, *bound)?;
            with_verdict(doc, &v);
            if let Some(n) = n {
                doc.output.push(format!("n: {n}"));
            }
        }
    }
    Ok(())
}

fn build_cmd(doc: &mut CertificateDocument, b: &Build) -> Result<()> {
    match b {
        Build::ResidueThick { k, schedule, ell } => {
            let schedules = schedule.iter().map(|s| parse_schedule(s)).collect::<Result<Vec<_>>>()?;
            doc.kind = "construction".into();
            doc.output.push(constructions::residue_thick_union(*k, &schedules)?.to_string());
            if let Some(ell) = ell {
                let f = constructions::residue_thick_f_witness(*k, &schedules, *ell)?;
                doc.detail = format!("ell={ell}");
                doc.witness = f;
            }
        }
        Build::PrimeUnion { primes, c, branches } => {
            let params = PrimeResidueParams::separated(primes.clone(), c.clone())?;
            let t = branches.map_or(primes.len(), |b| b as usize);
            doc.kind = "construction".into();
            doc.detail = format!("branches={t}");
            doc.output.push(constructions::prime_residue_union(&params, t)?.to_string());
        }
        Build::Separated { rows, cols, factor, primes, d_max, limit } => {
            let family = constructions::separated_thick_family(*rows, *cols, *factor)?;
            for ((i, j), s) in &family.schedules {
                doc.output.push(format!("T({i},{j}): {s}"));
            }
            if let Some(primes) = primes {
                for (i, b) in constructions::separated_rows(&family, primes)?.iter().enumerate() {
                    doc.output.push(format!("B({}): {b}", i + 1));
                }
            }
            let reports = family.separation(*d_max, *limit);
            for r in &reports {
                let realized = r.realized.map_or("none".to_string(), |x| x.to_string());
                doc.output.push(format!("separation d={} required={} realized={realized}", r.d, r.required));
            }
            let holds = reports.iter().all(|r| r.holds());
            doc.verdict = if holds { "certified" } else { "refuted" }.into();
            doc.kind = "separation".into();
            doc.detail = format!("d_max={d_max} limit={limit}");
        }
        Build::Crt { primes, residues } => {
            let n = constructions::crt_cover_witness(primes, residues)?;
            doc.kind = "crt".into();
            doc.detail = format!("n={n}");
            doc.witness = vec![n];
        }
    }
    Ok(())
}

fn split_cmd(doc: &mut CertificateDocument, s: &SplitOp) -> Result<()> {
    let r = match s {
        SplitOp::Thick { schedule, level, bound, window } => {
            constructions::split_thick(&parse_schedule(schedule)?, *level, *bound, *window)?
        }
        SplitOp::Filtration { set, extractor, rounds, window } => {
            let ex: &dyn Extractor = match extractor {
                ExtractorKind::Interval => &IntervalExtractor,
                ExtractorKind::FiniteSums => &FsExtractor,
            };
            constructions::split_by_filtration(&parse_set(set)?, ex, *rounds, *window)?
        }
    };
    doc.kind = "split".into();
    doc.detail = format!("disjoint={} exhaustive={} window={}", r.disjoint, r.exhaustive, r.window);
    doc.verdict = if !r.is_partition() {
        "refuted"
    } else if r.cert1.is_certified() && r.cert2.is_certified() {
        "certified"
    } else {
        "unknown"
    }
    .into();
    doc.output.push(format!("A1: {}", r.a1));
    doc.output.push(format!("A2: {}", r.a2));
    for (i, c) in [&r.cert1, &r.cert2].into_iter().enumerate() {
        doc.output.push(format!("part{}: {} {} {}", i + 1, c.label(), c.certificate().kind(), c.certificate()));
    }
    for c in &r.carves {
        doc.output.push(format!("round {} part {}: {}", c.round, c.part, list(&c.members)));
    }
    Ok(())
}

fn word_cmd(doc: &mut CertificateDocument, w: &WordOp) -> Result<()> {
    match w {
        WordOp::Expand { word, length } => {
            doc.kind = "word".into();
            doc.output.push(symbolic::expand(&parse_word(word)?, *length as usize)?.to_string());
        }
        WordOp::Returns { word, pattern, length, base } => {
            let base = if *base == 1 { IndexBase::One } else { IndexBase::Zero };
            let (expr, window) = symbolic::return_set(&parse_word(word)?, pattern, *length as usize, base)?;
            doc.kind = "returns".into();
            doc.detail = format!("count={} gap={}", window.count(), window.max_gap().map_or("none".into(), |g| g.to_string()));
            doc.output.push(expr.to_string());
            doc.witness = window.members().collect();
        }
        WordOp::Profile { word, n_max, prefix } => {
            let p = symbolic::uniform_recurrence_profile(&parse_word(word)?, *n_max as usize, *prefix as usize)?;
            doc.kind = "recurrence-profile".into();
            doc.detail = format!("monotone={} prefix={}", p.is_monotone(), p.prefix_len);
            for (n, w) in p.w.iter().enumerate() {
                doc.output.push(format!("W({}) = {w}", n + 1));
            }
            for f in &p.non_recurrent {
                doc.output.push(format!("non-recurrent: {f}"));
            }
        }
        WordOp::Cover { word, patterns, n, prefix } => {
            let pats: Vec<&str> = patterns.iter().map(String::as_str).collect();
            doc.kind = "cylinder-cover".into();
            match symbolic::cylinder_cover_check(&parse_word(word)?, &pats, *n as usize, *prefix as usize)? {
                CoverVerdict::Certified { factors_checked } => {
                    doc.verdict = "certified".into();
                    doc.detail = format!("factors_checked={factors_checked}");
                }
                CoverVerdict::Violation { factor } => {
                    doc.verdict = "refuted".into();
                    doc.detail = format!("uncovered={factor}");
                }
            }
        }
    }
    Ok(())
}

fn replay(path: &Path, parallel: bool) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("reading {}: {e}", path.display())))?;
    let stored = CertificateDocument::parse(&text)?;
    let mut argv = stored.argv();
    if parallel {
        argv.push("--parallel".into());
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| Error::input(format!("stored command does not parse: {e}")))?;
    let Outcome::Doc(fresh) = execute(&cli, &argv)? else {
        return Err(Error::input("stored command does not produce a document"));
    };
    if fresh != stored {
        return Err(Error::input(format!(
            "replay mismatch: stored checksum {} fresh checksum {}",
            stored.checksum(),
            fresh.checksum()
        )));
    }
    Ok(Outcome::Text(format!("replay: identical verdict={} checksum={}\n", fresh.verdict, fresh.checksum()), exit_of(&fresh.verdict)))
}

/// Runs one command line (program name first) and returns the exit status.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (text, code) = match execute(&cli, args) {
        Ok(Outcome::Doc(doc)) => {
            let code = exit_of(&doc.verdict);
            (if cli.format == Format::Json { doc.to_json() } else { doc.to_text() }, code)
        }
        Ok(Outcome::Text(t, code)) => (t, code),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ENGINE;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ENGINE
        }
    }
}
