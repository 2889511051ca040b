//! Certificate-producing deciders and bounded refuters.
//!
//! Every search is three-valued. A [`Verdict::Refuted`] with `exact: true`
//! comes from the eventually periodic tier and holds for the whole set;
//! everything else is relative to the bound it carries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::setcalc::{self, SetExpr};
use crate::window::Interval;
use crate::{Error, Result};

mod dynamical;
mod largeness;
mod patterns;

pub use dynamical::{
    dcs_certificate, ds_certificate, dt_check, dt_check_with, dt_validate, pr_check, pr_check_with, pr_validate,
    shift_correlation, FSearch, DT_PS_SHIFT_BOUND,
};
pub use largeness::{
    ip_witness, ip_witness_with, piecewise_syndetic, syndetic_gap, syndetic_threshold, thick_to_level,
};
pub(crate) use largeness::thick_on_window;
pub use patterns::{brauer_search, brauer_search_with, compactness_prefix, Poly};

/// Interval witnesses, one of each length `1..=level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickCert {
    pub level: u64,
    pub witnesses: Vec<Interval>,
}

impl ThickCert {
    pub fn validate_on(&self, expr: &SetExpr) -> Result<bool> {
        for l in 1..=self.level {
            if !self.witnesses.iter().any(|iv| iv.len() >= l) {
                return Ok(false);
            }
        }
        for iv in &self.witnesses {
            for n in iv.lo..=iv.hi {
                if !setcalc::member(expr, n)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// Every length-`gap` interval meets the set. `exact` means the bound
    /// holds on all of the positive integers, otherwise on `1..=checked_window`.
    Syndetic { gap: u64, checked_window: u64, exact: bool },
    Thick(ThickCert),
    /// `A ∪ (A-1) ∪ ... ∪ (A-shift)` is thick to `inner.level`.
    PiecewiseSyndetic { shift: u64, inner: ThickCert },
    /// All nonempty subset sums of the generators are members.
    Ip { generators: Vec<u64> },
    /// The set's maximal gap on `1..=window` (leading and trailing runs
    /// included, `window + 1` when empty) exceeds `threshold`.
    SparseWindow { gap: u64, threshold: u64, window: u64 },
    /// `x`, `y` and every `x + p_i(y)` are members.
    Brauer { x: u64, y: u64, members: Vec<u64> },
    /// The set contains `interval`, which ends at `m`.
    Prefix { m: u64, interval: Interval },
    RefutedUpTo { bound: u64, exact: bool },
    Unknown { bound: u64 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Syndetic { .. } => "syndetic",
            Certificate::Thick(_) => "thick",
            Certificate::PiecewiseSyndetic { .. } => "piecewise-syndetic",
            Certificate::Ip { .. } => "ip",
            Certificate::SparseWindow { .. } => "sparse-window",
            Certificate::Brauer { .. } => "brauer",
            Certificate::Prefix { .. } => "prefix",
            Certificate::RefutedUpTo { .. } => "refuted-up-to",
            Certificate::Unknown { .. } => "unknown",
        }
    }

    /// Replays the witness against fresh membership queries on `expr`.
    /// Bounds-only certificates have nothing to replay and pass.
    pub fn revalidate(&self, expr: &SetExpr) -> Result<bool> {
        match self {
            Certificate::Syndetic { gap, checked_window, .. } => {
                let w = setcalc::window(expr, *checked_window as usize)?;
                Ok(w.max_gap().is_some_and(|g| g <= *gap))
            }
            Certificate::Thick(t) => t.validate_on(expr),
            Certificate::PiecewiseSyndetic { shift, inner } => inner.validate_on(&shift_union(expr, *shift)),
            Certificate::Ip { generators } => {
                if generators.is_empty() || generators.windows(2).any(|p| p[0] >= p[1]) {
                    return Ok(false);
                }
                for mask in 1u64..(1 << generators.len()) {
                    let s = generators.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g).sum();
                    if !setcalc::member(expr, s)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Certificate::SparseWindow { gap, threshold, window } => {
                let w = setcalc::window(expr, *window as usize)?;
                Ok(w.max_gap().unwrap_or(*window + 1) == *gap && gap > threshold)
            }
            Certificate::Brauer { x, y, members } => {
                if !members.contains(x) || !members.contains(y) {
                    return Ok(false);
                }
                for &m in members {
                    if !setcalc::member(expr, m)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Certificate::Prefix { m, interval } => {
                if interval.hi != *m {
                    return Ok(false);
                }
                for n in interval.lo..=interval.hi {
                    if !setcalc::member(expr, n)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Certificate::RefutedUpTo { .. } | Certificate::Unknown { .. } => Ok(true),
        }
    }

    /// Integers carried by the witness, ascending.
    pub fn witness_integers(&self) -> Vec<u64> {
        let mut out = match self {
            Certificate::Syndetic { gap, .. } => vec![*gap],
            Certificate::Thick(t) | Certificate::PiecewiseSyndetic { inner: t, .. } => {
                t.witnesses.iter().flat_map(|iv| [iv.lo, iv.hi]).collect()
            }
            Certificate::Ip { generators } => generators.clone(),
            Certificate::SparseWindow { gap, .. } => vec![*gap],
            Certificate::Brauer { members, .. } => members.clone(),
            Certificate::Prefix { interval, .. } => vec![interval.lo, interval.hi],
            Certificate::RefutedUpTo { .. } | Certificate::Unknown { .. } => vec![],
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Syndetic { gap, checked_window, exact } => {
                write!(f, "gap={gap} checked_window={checked_window} exact={exact}")
            }
            Certificate::Thick(t) => write!(f, "level={} witnesses={}", t.level, intervals(&t.witnesses)),
            Certificate::PiecewiseSyndetic { shift, inner } => {
                write!(f, "shift={shift} level={} witnesses={}", inner.level, intervals(&inner.witnesses))
            }
            Certificate::Ip { generators } => write!(f, "generators={}", join(generators)),
            Certificate::SparseWindow { gap, threshold, window } => {
                write!(f, "gap={gap} threshold={threshold} window={window}")
            }
            Certificate::Brauer { x, y, members } => write!(f, "x={x} y={y} members={}", join(members)),
            Certificate::Prefix { m, interval } => write!(f, "m={m} interval={interval}"),
            Certificate::RefutedUpTo { bound, exact } => write!(f, "bound={bound} exact={exact}"),
            Certificate::Unknown { bound } => write!(f, "bound={bound}"),
        }
    }
}

fn intervals(v: &[Interval]) -> String {
    v.iter().map(Interval::to_string).collect::<Vec<_>>().join(";")
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified(Certificate),
    Refuted(Certificate),
    Unknown(Certificate),
}

impl Verdict {
    pub(crate) fn refuted(bound: u64, exact: bool) -> Self {
        Verdict::Refuted(Certificate::RefutedUpTo { bound, exact })
    }

    pub(crate) fn unknown(bound: u64) -> Self {
        Verdict::Unknown(Certificate::Unknown { bound })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Verdict::Certified(c) | Verdict::Refuted(c) | Verdict::Unknown(c) => c,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified(_) => "certified",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown(_) => "unknown",
        }
    }

    /// Process exit status: 0 certified, 1 refuted, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Certified(_) => 0,
            Verdict::Refuted(_) => 1,
            Verdict::Unknown(_) => 2,
        }
    }

    /// True for the exact-tier refutations.
    pub fn is_exact_refutation(&self) -> bool {
        matches!(self, Verdict::Refuted(Certificate::RefutedUpTo { exact: true, .. }))
    }
}

/// Env var capping node expansions across a search.
pub const BUDGET_ENV: &str = "LSC_SEARCH_BUDGET";
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn from_env() -> Result<Self> {
        let budget = match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("{BUDGET_ENV} must be a positive integer, got {v:?}")))?,
            Err(_) => DEFAULT_BUDGET,
        };
        Ok(SearchConfig { budget, parallel: false })
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

impl Default for SearchConfig {
    /// Reads the budget from the environment, falling back to the default on a malformed value.
    fn default() -> Self {
        SearchConfig::from_env().unwrap_or(SearchConfig { budget: DEFAULT_BUDGET, parallel: false })
    }
}

/// `A ∪ (A-1) ∪ ... ∪ (A-n)`.
pub fn shift_union(expr: &SetExpr, n: u64) -> SetExpr {
    if n == 0 {
        return expr.clone();
    }
    let mut parts = vec![expr.clone()];
    parts.extend((1..=n).map(|i| SetExpr::ShiftDown(i, Box::new(expr.clone()))));
    SetExpr::Union(parts)
}

/// `S - F = ⋃_{f in F} (S - f)`.
pub fn minus_set(s: &SetExpr, f: &[u64]) -> SetExpr {
    SetExpr::Union(f.iter().map(|&x| SetExpr::ShiftDown(x, Box::new(s.clone()))).collect())
}
