use crate::certify::{Certificate, SearchConfig, ThickCert, Verdict};
use crate::setcalc::{self, eventually_periodic_normalize, PeriodicForm, SetExpr};
use crate::window::{Interval, Window};
use crate::{Error, Result};

/// Largest gap accepted as window evidence of syndeticity: `ceil(len / 10)`.
pub fn syndetic_threshold(len: u64) -> u64 {
    len.div_ceil(10)
}

/// Gap of `A` on the exact tier, or its window gap on `1..=len`.
pub fn syndetic_gap(a: &SetExpr, len: u64) -> Result<Verdict> {
    if len == 0 {
        return Err(Error::input("window length must be >= 1"));
    }
    if let Some(f) = eventually_periodic_normalize(a) {
        return Ok(syndetic_exact(&f));
    }
    let w = setcalc::window(a, len as usize)?;
    Ok(match w.max_gap() {
        Some(gap) if gap <= syndetic_threshold(len) => {
            Verdict::Certified(Certificate::Syndetic { gap, checked_window: len, exact: false })
        }
        _ => Verdict::unknown(len),
    })
}

pub(crate) fn syndetic_exact(f: &PeriodicForm) -> Verdict {
    if f.is_finite() {
        return Verdict::refuted(f.preperiod, true);
    }
    // one full period past the preperiod plus the wrap-around gap
    let len = f.preperiod + 2 * f.period + 1;
    let mut prev = 0;
    let mut gap = 0;
    for n in f.window(len as usize).members() {
        gap = gap.max(n - prev);
        prev = n;
    }
    Verdict::Certified(Certificate::Syndetic { gap, checked_window: len, exact: true })
}

/// One witness interval of each length `1..=level`, each ending at or below `bound`.
pub fn thick_to_level(a: &SetExpr, level: u64, bound: u64) -> Result<Verdict> {
    if level == 0 {
        return Err(Error::input("level must be >= 1"));
    }
    if bound < level {
        return Err(Error::input(format!("bound {bound} below level {level}")));
    }
    if let Some(f) = eventually_periodic_normalize(a) {
        return Ok(thick_exact(&f, level));
    }
    if let SetExpr::Thick(s) = a {
        let mut runs = Vec::new();
        for iv in s.intervals() {
            let iv = iv?;
            if iv.lo > bound {
                break;
            }
            runs.push(Interval::new(iv.lo, iv.hi.min(bound)));
            if runs.last().unwrap().len() >= level {
                break;
            }
        }
        return Ok(from_runs(&runs, level, bound));
    }
    let w = setcalc::window(a, bound as usize)?;
    Ok(thick_on_window(&w, level))
}

pub(crate) fn thick_exact(f: &PeriodicForm, level: u64) -> Verdict {
    if !f.is_cofinite() {
        return Verdict::refuted(f.preperiod + f.period, true);
    }
    let len = f.preperiod + level;
    from_runs(&f.window(len as usize).runs(), level, len)
}

pub(crate) fn thick_on_window(w: &Window, level: u64) -> Verdict {
    from_runs(&w.runs(), level, w.len() as u64)
}

fn leftmost_witnesses(runs: &[Interval], level: u64) -> Option<Vec<Interval>> {
    let mut out = Vec::with_capacity(level as usize);
    let mut idx = 0;
    for l in 1..=level {
        while idx < runs.len() && runs[idx].len() < l {
            idx += 1;
        }
        let run = runs.get(idx)?;
        out.push(Interval::new(run.lo, run.lo + l - 1));
    }
    Some(out)
}

fn from_runs(runs: &[Interval], level: u64, bound: u64) -> Verdict {
    match leftmost_witnesses(runs, level) {
        Some(witnesses) => Verdict::Certified(Certificate::Thick(ThickCert { level, witnesses })),
        None => Verdict::unknown(bound),
    }
}

/// Searches `N = 0..=shift_bound` for a thick-to-`level` union `A ∪ (A-1) ∪ ... ∪ (A-N)`.
pub fn piecewise_syndetic(a: &SetExpr, shift_bound: u64, level: u64, bound: u64) -> Result<Verdict> {
    if level == 0 {
        return Err(Error::input("level must be >= 1"));
    }
    if bound < level {
        return Err(Error::input(format!("bound {bound} below level {level}")));
    }
    if let Some(f) = eventually_periodic_normalize(a) {
        if f.is_finite() {
            return Ok(Verdict::refuted(f.preperiod, true));
        }
        for n in 0..=shift_bound {
            let u = PeriodicForm::from_fn(f.preperiod, f.period, |m| (0..=n).any(|i| f.member(m + i)))
                .expect("shifting keeps the period");
            if let Verdict::Certified(Certificate::Thick(inner)) = thick_exact(&u, level) {
                return Ok(Verdict::Certified(Certificate::PiecewiseSyndetic { shift: n, inner }));
            }
        }
        // syndetic, so piecewise syndetic, but not within the shift bound
        return Ok(Verdict::unknown(shift_bound));
    }
    let total = (bound + shift_bound) as usize;
    let base = setcalc::window(a, total)?;
    let mut acc = base.resized(bound as usize);
    for n in 0..=shift_bound {
        if n > 0 {
            acc.union_with(&base.segment(n + 1, bound as usize));
        }
        if let Verdict::Certified(Certificate::Thick(inner)) = thick_on_window(&acc, level) {
            return Ok(Verdict::Certified(Certificate::PiecewiseSyndetic { shift: n, inner }));
        }
    }
    Ok(Verdict::unknown(bound))
}

/// Strictly increasing generators `x_1 < ... < x_d` whose subset sums all lie
/// in `A` and are at most `bound`. The lexicographically least tuple is returned.
pub fn ip_witness(a: &SetExpr, depth: u64, bound: u64) -> Result<Verdict> {
    ip_witness_with(a, depth, bound, &SearchConfig::default())
}

pub fn ip_witness_with(a: &SetExpr, depth: u64, bound: u64, cfg: &SearchConfig) -> Result<Verdict> {
    if depth == 0 || depth > 20 {
        return Err(Error::input("depth must be in 1..=20"));
    }
    if bound == 0 {
        return Err(Error::input("bound must be >= 1"));
    }
    let w = setcalc::window(a, bound as usize)?;
    let members: Vec<u64> = w.members().collect();
    let mut search = IpSearch { w: &w, members: &members, depth: depth as usize, bound, nodes: 0, budget: cfg.budget };
    let mut gens = Vec::new();
    let mut sums = Vec::new();
    Ok(match search.dfs(&mut gens, &mut sums, 0) {
        Some(true) => Verdict::Certified(Certificate::Ip { generators: gens }),
        Some(false) => Verdict::refuted(bound, false),
        None => Verdict::unknown(bound),
    })
}

struct IpSearch<'a> {
    w: &'a Window,
    members: &'a [u64],
    depth: usize,
    bound: u64,
    nodes: u64,
    budget: u64,
}

impl IpSearch<'_> {
    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn dfs(&mut self, gens: &mut Vec<u64>, sums: &mut Vec<u64>, from: usize) -> Option<bool> {
        if gens.len() == self.depth {
            return Some(true);
        }
        let total: u64 = gens.iter().sum();
        let remaining = (self.depth - gens.len()) as u64;
        for i in from..self.members.len() {
            let x = self.members[i];
            // x and every later generator exceed their predecessors
            let least_rest = x * remaining + remaining * (remaining - 1) / 2;
            if total + least_rest > self.bound {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if !sums.iter().all(|&s| self.w.contains(s + x)) {
                continue;
            }
            let before = sums.len();
            sums.push(x);
            for k in 0..before {
                sums.push(sums[k] + x);
            }
            gens.push(x);
            match self.dfs(gens, sums, i + 1)? {
                true => return Some(true),
                false => {
                    gens.pop();
                    sums.truncate(before);
                }
            }
        }
        Some(false)
    }
}
