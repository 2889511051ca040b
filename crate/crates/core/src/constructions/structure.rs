use crate::certify::{self, Verdict};
use crate::schedule::ScheduleSpec;
use crate::setcalc::{self, SetExpr};
use crate::window::{Interval, Window};
use crate::{Error, Result};

/// `B_S = (A ∩ G_S) ∪ (N \ G_S)` together with `G_S` and the syndeticity
/// certificate of `B_S ∩ S` on the window.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub b_s: SetExpr,
    pub g_s: ScheduleSpec,
    pub ell: u64,
    pub intervals: Vec<Interval>,
    pub cert: Verdict,
    /// Hypotheses on `S` that no window can check.
    pub assumptions: Vec<String>,
}

/// Maximal intervals of `1..=len` on which every length-`ell` subinterval meets the set.
fn dense_intervals(w: &Window, ell: u64) -> Vec<Interval> {
    let len = w.len() as u64;
    let mut out = Vec::new();
    let mut chain: Option<(u64, u64)> = None;
    let close = |c: (u64, u64), out: &mut Vec<Interval>| {
        out.push(Interval::new(c.0.saturating_sub(ell - 1).max(1), (c.1 + ell - 1).min(len)));
    };
    for m in w.members() {
        chain = match chain {
            Some((lo, hi)) if m - hi <= ell => Some((lo, m)),
            Some(c) => {
                close(c, &mut out);
                Some((m, m))
            }
            None => Some((m, m)),
        };
    }
    if let Some(c) = chain {
        close(c, &mut out);
    }
    out
}

/// Leftmost greedy choice with strictly growing lengths and `max I_i + i < min I_{i+1}`.
fn choose(candidates: &[Interval]) -> Vec<Interval> {
    let mut chosen: Vec<Interval> = Vec::new();
    for c in candidates {
        let lo = match chosen.last() {
            Some(prev) => c.lo.max(prev.hi + chosen.len() as u64 + 1),
            None => c.lo,
        };
        if lo > c.hi {
            continue;
        }
        let iv = Interval::new(lo, c.hi);
        if chosen.last().is_some_and(|prev| iv.len() <= prev.len()) {
            continue;
        }
        chosen.push(iv);
    }
    chosen
}

/// Structure decomposition of `A` relative to `S` on `1..=len`.
///
/// `ell` runs over `1..=ell_max`; it qualifies when the longest chosen
/// interval has length at least `min_interval` (default `4 ell`).
pub fn structure_decompose(
    a: &SetExpr,
    s: &SetExpr,
    len: u64,
    ell_max: u64,
    min_interval: Option<u64>,
) -> Result<Decomposition> {
    if len == 0 || ell_max == 0 {
        return Err(Error::input("window and ell_max must be >= 1"));
    }
    let a_s = SetExpr::Inter(vec![a.clone(), s.clone()]);
    let level = ell_max.min(len);
    let ps = certify::piecewise_syndetic(&a_s, ell_max, level, len)?;
    if !ps.is_certified() {
        return Err(Error::input(format!("A ∩ S is not certified piecewise syndetic on 1..={len}: {}", ps.label())));
    }
    let w = setcalc::window(&a_s, len as usize)?;
    for ell in 1..=ell_max {
        let need = min_interval.unwrap_or(4 * ell);
        let chosen = choose(&dense_intervals(&w, ell));
        if chosen.iter().map(Interval::len).max().unwrap_or(0) < need {
            continue;
        }
        let g_s = ScheduleSpec::Explicit(chosen.clone());
        g_s.validate()?;
        let g = SetExpr::Thick(g_s.clone());
        let b_s = SetExpr::Union(vec![SetExpr::Inter(vec![a.clone(), g.clone()]), SetExpr::Compl(Box::new(g))]);
        let cert = certify::syndetic_gap(&SetExpr::Inter(vec![b_s.clone(), s.clone()]), len)?;
        return Ok(Decomposition {
            b_s,
            g_s,
            ell,
            intervals: chosen,
            cert,
            assumptions: vec!["S is dynamically syndetic (user-asserted; only syndeticity is checked)".into()],
        });
    }
    Err(Error::NotFound(format!("density constant ell <= {ell_max} on 1..={len}")))
}
