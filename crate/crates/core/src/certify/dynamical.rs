//! Checks quantifying over finite subsets `F` of a candidate set.
//!
//! Candidates `F ⊆ A ∩ [1, f_bound]` are visited by ascending maximum, then
//! ascending cardinality, then lexicographically. Both `S - F` and
//! `S \ (S - F)` are monotone in `F`, so a group whose largest member is `m`
//! is skipped when the set of all candidates up to `m` already fails.

use itertools::Itertools;
use rayon::prelude::*;

use crate::certify::largeness::{syndetic_gap, thick_exact, thick_on_window};
use crate::certify::{minus_set, piecewise_syndetic, Certificate, SearchConfig, Verdict};
use crate::setcalc::{self, eventually_periodic_normalize, SetExpr};
use crate::window::Window;
use crate::{Error, Result};

/// Shift bound used when `dt_check` confirms that `S` is piecewise syndetic.
pub const DT_PS_SHIFT_BOUND: u64 = 64;

/// Candidates evaluated together in parallel mode.
const CHUNK: usize = 1024;

/// Outcome of a search over finite sets `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSearch {
    pub f: Option<Vec<u64>>,
    /// The set the certificate speaks about (`S - F`, or `S \ (S - F)`).
    pub subject: Option<SetExpr>,
    pub verdict: Verdict,
    /// Candidate sets evaluated.
    pub evaluated: u64,
}

enum Outcome {
    Hit(Certificate),
    Miss { decisive: bool },
}

fn check_members(a: &SetExpr, f: &[u64], what: &str) -> Result<()> {
    if f.is_empty() {
        return Err(Error::input(format!("{what}: F must be nonempty")));
    }
    for &x in f {
        if x == 0 || !setcalc::member(a, x)? {
            return Err(Error::input(format!("{what}: {x} is not a member of the given set")));
        }
    }
    Ok(())
}

fn shifted_inter(b: &SetExpr, f: &[u64]) -> SetExpr {
    SetExpr::Inter(f.iter().map(|&x| SetExpr::ShiftDown(x, Box::new(b.clone()))).collect())
}

/// Syndeticity of `⋂_{f in F} (B - f)`.
pub fn ds_certificate(b: &SetExpr, f: &[u64], len: u64) -> Result<Verdict> {
    check_members(b, f, "ds_certificate")?;
    syndetic_gap(&shifted_inter(b, f), len)
}

/// Syndeticity of `B ∩ ⋂_{f in F} (B - f)`.
pub fn dcs_certificate(b: &SetExpr, f: &[u64], len: u64) -> Result<Verdict> {
    check_members(b, f, "dcs_certificate")?;
    let mut parts = vec![b.clone()];
    parts.extend(f.iter().map(|&x| SetExpr::ShiftDown(x, Box::new(b.clone()))));
    syndetic_gap(&SetExpr::Inter(parts), len)
}

fn candidates(a: &SetExpr, f_bound: u64) -> Result<Vec<u64>> {
    if f_bound == 0 {
        return Err(Error::input("F bound must be >= 1"));
    }
    Ok(setcalc::window(a, f_bound as usize)?.members().collect())
}

/// Ordered search over nonempty subsets of `cands`, grouped by maximum
/// element. A group is only expanded when its full prefix set hits. Parallel
/// mode evaluates a chunk at once but scans the results in order, so the
/// returned set and the spent count match the sequential run.
fn search<E>(cands: &[u64], cfg: &SearchConfig, eval: E) -> Result<SearchEnd>
where
    E: Fn(&[u64]) -> Result<Outcome> + Sync,
{
    let mut spent = 0u64;
    let mut decisive = true;
    for (i, &m) in cands.iter().enumerate() {
        if spent >= cfg.budget {
            return Ok(SearchEnd::OutOfBudget(spent));
        }
        spent += 1;
        match eval(&cands[..=i])? {
            Outcome::Miss { decisive: d } => {
                decisive &= d;
                continue;
            }
            Outcome::Hit(c) if i == 0 => return Ok(SearchEnd::Found(vec![m], c, spent)),
            Outcome::Hit(_) => {}
        }
        // the full group set hits, so a hit exists among sets with maximum m
        let prefix = &cands[..i];
        for k in 0..i {
            let mut combos = prefix.iter().copied().combinations(k).map(|mut c| {
                c.push(m);
                c
            });
            loop {
                let room = (cfg.budget - spent.min(cfg.budget)).min(CHUNK as u64) as usize;
                if room == 0 {
                    return Ok(SearchEnd::OutOfBudget(spent));
                }
                let chunk: Vec<Vec<u64>> = combos.by_ref().take(room).collect();
                if chunk.is_empty() {
                    break;
                }
                let results: Vec<Result<Outcome>> = if cfg.parallel {
                    chunk.par_iter().map(|c| eval(c)).collect()
                } else {
                    let mut out = Vec::new();
                    for c in &chunk {
                        let r = eval(c);
                        let stop = !matches!(r, Ok(Outcome::Miss { .. }));
                        out.push(r);
                        if stop {
                            break;
                        }
                    }
                    out
                };
                for (j, r) in results.into_iter().enumerate() {
                    spent += 1;
                    if let Outcome::Hit(c) = r? {
                        return Ok(SearchEnd::Found(chunk[j].clone(), c, spent));
                    }
                }
            }
        }
        if spent >= cfg.budget {
            return Ok(SearchEnd::OutOfBudget(spent));
        }
        spent += 1;
        if let Outcome::Hit(c) = eval(&cands[..=i])? {
            return Ok(SearchEnd::Found(cands[..=i].to_vec(), c, spent));
        }
        unreachable!("full candidate set hit before");
    }
    Ok(SearchEnd::Exhausted { decisive, spent })
}

enum SearchEnd {
    Found(Vec<u64>, Certificate, u64),
    Exhausted { decisive: bool, spent: u64 },
    OutOfBudget(u64),
}

fn finish(end: SearchEnd, f_bound: u64, exact_refutation: bool, subject: impl Fn(&[u64]) -> SetExpr) -> FSearch {
    match end {
        SearchEnd::Found(f, c, spent) => {
            FSearch { subject: Some(subject(&f)), f: Some(f), verdict: Verdict::Certified(c), evaluated: spent }
        }
        SearchEnd::Exhausted { decisive: true, spent } => {
            FSearch { f: None, subject: None, verdict: Verdict::refuted(f_bound, exact_refutation), evaluated: spent }
        }
        SearchEnd::Exhausted { decisive: false, spent } | SearchEnd::OutOfBudget(spent) => {
            FSearch { f: None, subject: None, verdict: Verdict::unknown(f_bound), evaluated: spent }
        }
    }
}

/// Thickness of `S - F` for a single candidate.
struct ThickProbe {
    s: SetExpr,
    exact: bool,
    s_window: Option<Window>,
    level: u64,
    bound: u64,
}

impl ThickProbe {
    fn new(s: &SetExpr, level: u64, bound: u64, max_f: u64) -> Result<Self> {
        let exact = eventually_periodic_normalize(s).is_some();
        let s_window = if exact { None } else { Some(setcalc::window(s, (bound + max_f) as usize)?) };
        Ok(ThickProbe { s: s.clone(), exact, s_window, level, bound })
    }

    fn eval(&self, f: &[u64]) -> Result<Outcome> {
        let v = if self.exact {
            let form = eventually_periodic_normalize(&minus_set(&self.s, f))
                .ok_or_else(|| Error::input("period of S - F exceeds the normal-form cap"))?;
            thick_exact(&form, self.level)
        } else {
            let sw = self.s_window.as_ref().expect("window tier");
            let mut acc = Window::empty(self.bound as usize);
            for &x in f {
                acc.union_with(&sw.segment(x + 1, self.bound as usize));
            }
            thick_on_window(&acc, self.level)
        };
        Ok(match v {
            Verdict::Certified(c) => Outcome::Hit(c),
            Verdict::Refuted(_) => Outcome::Miss { decisive: true },
            Verdict::Unknown(_) => Outcome::Miss { decisive: false },
        })
    }
}

fn check_level(level: u64, bound: u64) -> Result<()> {
    if level == 0 || bound < level {
        return Err(Error::input("need level >= 1 and bound >= level"));
    }
    Ok(())
}

/// Searches finite `F ⊆ A ∩ [1, f_bound]` with `S - F` thick to `level` below `bound`.
pub fn dt_check(a: &SetExpr, s: &SetExpr, f_bound: u64, level: u64, bound: u64) -> Result<FSearch> {
    dt_check_with(a, s, f_bound, level, bound, &SearchConfig::default())
}

pub fn dt_check_with(
    a: &SetExpr,
    s: &SetExpr,
    f_bound: u64,
    level: u64,
    bound: u64,
    cfg: &SearchConfig,
) -> Result<FSearch> {
    check_level(level, bound)?;
    let ps = piecewise_syndetic(s, DT_PS_SHIFT_BOUND, level, bound)?;
    if !ps.is_certified() {
        return Err(Error::input(format!(
            "dt_check: S is not certified piecewise syndetic (shift bound {DT_PS_SHIFT_BOUND}, level {level}, bound {bound}): {}",
            ps.label()
        )));
    }
    let cands = candidates(a, f_bound)?;
    let probe = ThickProbe::new(s, level, bound, f_bound)?;
    let end = search(&cands, cfg, |f| probe.eval(f))?;
    Ok(finish(end, f_bound, true, |f| minus_set(s, f)))
}

/// Thickness of `S - F` for a given `F ⊆ A`.
pub fn dt_validate(a: &SetExpr, s: &SetExpr, f: &[u64], level: u64, bound: u64) -> Result<Verdict> {
    check_level(level, bound)?;
    check_members(a, f, "dt_validate")?;
    let max_f = *f.iter().max().unwrap();
    Ok(match ThickProbe::new(s, level, bound, max_f)?.eval(f)? {
        Outcome::Hit(c) => Verdict::Certified(c),
        Outcome::Miss { decisive: true } => Verdict::refuted(bound, true),
        Outcome::Miss { decisive: false } => Verdict::unknown(bound),
    })
}

struct SparseProbe {
    s_window: Window,
    len: usize,
    threshold: u64,
}

impl SparseProbe {
    fn eval(&self, f: &[u64]) -> Outcome {
        let mut c = self.s_window.resized(self.len);
        for &x in f {
            c.subtract(&self.s_window.segment(x + 1, self.len));
        }
        let gap = c.max_gap().unwrap_or(self.len as u64 + 1);
        if gap > self.threshold {
            Outcome::Hit(Certificate::SparseWindow { gap, threshold: self.threshold, window: self.len as u64 })
        } else {
            Outcome::Miss { decisive: true }
        }
    }
}

/// `S \ (S - F)`.
pub fn pr_subject(s: &SetExpr, f: &[u64]) -> SetExpr {
    SetExpr::Inter(vec![s.clone(), SetExpr::Compl(Box::new(minus_set(s, f)))])
}

fn pr_setup(s: &SetExpr, len: u64, max_f: u64, threshold: Option<u64>) -> Result<SparseProbe> {
    if len == 0 {
        return Err(Error::input("window length must be >= 1"));
    }
    let sv = syndetic_gap(s, len)?;
    if !sv.is_certified() {
        return Err(Error::input(format!("pr_check: S is not certified syndetic on 1..={len}: {}", sv.label())));
    }
    let threshold = threshold.unwrap_or(crate::certify::syndetic_threshold(len));
    Ok(SparseProbe { s_window: setcalc::window(s, (len + max_f) as usize)?, len: len as usize, threshold })
}

/// Searches finite `F ⊆ A ∩ [1, f_bound]` such that `S \ (S - F)` has maximal
/// gap above `threshold` on `1..=len` (default `ceil(len / 10)`).
pub fn pr_check(a: &SetExpr, s: &SetExpr, f_bound: u64, len: u64, threshold: Option<u64>) -> Result<FSearch> {
    pr_check_with(a, s, f_bound, len, threshold, &SearchConfig::default())
}

pub fn pr_check_with(
    a: &SetExpr,
    s: &SetExpr,
    f_bound: u64,
    len: u64,
    threshold: Option<u64>,
    cfg: &SearchConfig,
) -> Result<FSearch> {
    let probe = pr_setup(s, len, f_bound, threshold)?;
    let cands = candidates(a, f_bound)?;
    let end = search(&cands, cfg, |f| Ok(probe.eval(f)))?;
    Ok(finish(end, f_bound, false, |f| pr_subject(s, f)))
}

pub fn pr_validate(a: &SetExpr, s: &SetExpr, f: &[u64], len: u64, threshold: Option<u64>) -> Result<Verdict> {
    check_members(a, f, "pr_validate")?;
    let probe = pr_setup(s, len, *f.iter().max().unwrap(), threshold)?;
    Ok(match probe.eval(f) {
        Outcome::Hit(c) => Verdict::Certified(c),
        Outcome::Miss { .. } => Verdict::refuted(len, false),
    })
}

/// Least `n <= n_bound` with `B ∩ (B - n)` piecewise syndetic.
pub fn shift_correlation(b: &SetExpr, n_bound: u64, level: u64, bound: u64) -> Result<(Option<u64>, Verdict)> {
    let ps = piecewise_syndetic(b, n_bound, level, bound)?;
    if !ps.is_certified() {
        return Err(Error::input(format!("shift_correlation: B is not certified piecewise syndetic: {}", ps.label())));
    }
    for n in 1..=n_bound {
        let c = SetExpr::Inter(vec![b.clone(), SetExpr::ShiftDown(n, Box::new(b.clone()))]);
        let v = piecewise_syndetic(&c, n_bound, level, bound)?;
        if v.is_certified() {
            return Ok((Some(n), v));
        }
    }
    Ok((None, Verdict::unknown(n_bound)))
}
