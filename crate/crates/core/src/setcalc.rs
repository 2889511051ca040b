//! Expression algebra over subsets of `{1, 2, 3, ...}`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::schedule::ScheduleSpec;
use crate::symbolic::{self, IndexBase, WordSpec};
use crate::window::Window;
use crate::{Error, Result};

/// Occurrences of `pattern` in the word, mapped into the positive integers by `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReturnSpec {
    pub word: WordSpec,
    pub pattern: Vec<u8>,
    pub base: IndexBase,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetExpr {
    Empty,
    Full,
    /// Strictly increasing, all `>= 1`.
    Finite(Vec<u64>),
    /// `{x : x = residue mod modulus}`.
    Residue { residue: u64, modulus: u64 },
    Thick(ScheduleSpec),
    Return(ReturnSpec),
    Union(Vec<SetExpr>),
    Inter(Vec<SetExpr>),
    Compl(Box<SetExpr>),
    /// `A - n = {m : m + n in A}`.
    ShiftDown(u64, Box<SetExpr>),
    /// `(A + n)`, which never contains integers `<= n`.
    ShiftUp(u64, Box<SetExpr>),
    /// `kA`.
    Dilate(u64, Box<SetExpr>),
    /// `A / k = {m : km in A}`.
    Quotient(u64, Box<SetExpr>),
}

impl SetExpr {
    pub fn finite(members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = members.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::input("finite set members must be >= 1"));
        }
        v.sort_unstable();
        v.dedup();
        Ok(SetExpr::Finite(v))
    }

    pub fn residue(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::input("modulus must be >= 1"));
        }
        if residue >= modulus {
            return Err(Error::input(format!("residue {residue} not reduced mod {modulus}")));
        }
        Ok(SetExpr::Residue { residue, modulus })
    }

    pub fn thick(schedule: ScheduleSpec) -> Result<Self> {
        schedule.validate()?;
        Ok(SetExpr::Thick(schedule))
    }

    pub fn returns(word: WordSpec, pattern: &str, base: IndexBase) -> Result<Self> {
        let e = SetExpr::Return(ReturnSpec { word, pattern: pattern.as_bytes().to_vec(), base });
        e.validate()?;
        Ok(e)
    }

    pub fn union(parts: impl IntoIterator<Item = SetExpr>) -> Self {
        SetExpr::Union(parts.into_iter().collect())
    }

    pub fn inter(parts: impl IntoIterator<Item = SetExpr>) -> Self {
        SetExpr::Inter(parts.into_iter().collect())
    }

    pub fn compl(self) -> Self {
        SetExpr::Compl(Box::new(self))
    }

    pub fn shift_down(self, n: u64) -> Result<Self> {
        positive(n, "shift")?;
        Ok(SetExpr::ShiftDown(n, Box::new(self)))
    }

    pub fn shift_up(self, n: u64) -> Result<Self> {
        positive(n, "shift")?;
        Ok(SetExpr::ShiftUp(n, Box::new(self)))
    }

    pub fn dilate(self, k: u64) -> Result<Self> {
        positive(k, "dilation factor")?;
        Ok(SetExpr::Dilate(k, Box::new(self)))
    }

    pub fn quotient(self, k: u64) -> Result<Self> {
        positive(k, "quotient factor")?;
        Ok(SetExpr::Quotient(k, Box::new(self)))
    }

    /// Checks every payload invariant in the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            SetExpr::Empty | SetExpr::Full => Ok(()),
            SetExpr::Finite(v) => {
                if v.first() == Some(&0) || v.windows(2).any(|p| p[0] >= p[1]) {
                    return Err(Error::input("finite payload must be strictly increasing and >= 1"));
                }
                Ok(())
            }
            SetExpr::Residue { residue, modulus } => SetExpr::residue(*residue, *modulus).map(|_| ()),
            SetExpr::Thick(s) => s.validate(),
            SetExpr::Return(r) => {
                r.word.validate()?;
                if r.pattern.is_empty() {
                    return Err(Error::input("return pattern is empty"));
                }
                Ok(())
            }
            SetExpr::Union(v) | SetExpr::Inter(v) => v.iter().try_for_each(SetExpr::validate),
            SetExpr::Compl(a) => a.validate(),
            SetExpr::ShiftDown(n, a) | SetExpr::ShiftUp(n, a) | SetExpr::Dilate(n, a) | SetExpr::Quotient(n, a) => {
                positive(*n, "operator argument")?;
                a.validate()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SetExpr::Union(v) | SetExpr::Inter(v) => 1 + v.iter().map(SetExpr::depth).max().unwrap_or(0),
            SetExpr::Compl(a)
            | SetExpr::ShiftDown(_, a)
            | SetExpr::ShiftUp(_, a)
            | SetExpr::Dilate(_, a)
            | SetExpr::Quotient(_, a) => 1 + a.depth(),
            _ => 0,
        }
    }

    pub fn member(&self, n: u64) -> Result<bool> {
        member(self, n)
    }

    pub fn window(&self, len: usize) -> Result<Window> {
        window(self, len)
    }
}

fn positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::input(format!("{what} must be >= 1")));
    }
    Ok(())
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::dsl::write_set(f, self)
    }
}

pub fn member(expr: &SetExpr, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::input("membership is defined for n >= 1"));
    }
    Ok(match expr {
        SetExpr::Empty => false,
        SetExpr::Full => true,
        SetExpr::Finite(v) => v.binary_search(&n).is_ok(),
        SetExpr::Residue { residue, modulus } => n % modulus == *residue,
        SetExpr::Thick(s) => s.contains(n)?,
        SetExpr::Return(r) => {
            let start = r.base.word_index(n);
            for (i, &c) in r.pattern.iter().enumerate() {
                if r.word.letter_at(start + i as u64)? != c {
                    return Ok(false);
                }
            }
            true
        }
        SetExpr::Union(v) => {
            for a in v {
                if member(a, n)? {
                    return Ok(true);
                }
            }
            false
        }
        SetExpr::Inter(v) => {
            for a in v {
                if !member(a, n)? {
                    return Ok(false);
                }
            }
            true
        }
        SetExpr::Compl(a) => !member(a, n)?,
        SetExpr::ShiftDown(k, a) => match n.checked_add(*k) {
            Some(m) => member(a, m)?,
            None => return Err(Error::input("shifted index overflows")),
        },
        SetExpr::ShiftUp(k, a) => n > *k && member(a, n - k)?,
        SetExpr::Dilate(k, a) => n.is_multiple_of(*k) && member(a, n / k)?,
        SetExpr::Quotient(k, a) => match n.checked_mul(*k) {
            Some(m) => member(a, m)?,
            None => return Err(Error::input("quotient index overflows")),
        },
    })
}

/// Membership table on `1..=len`, computed bottom-up on child windows.
pub fn window(expr: &SetExpr, len: usize) -> Result<Window> {
    if len == 0 {
        return Err(Error::input("window length must be >= 1"));
    }
    window_inner(expr, len)
}

fn window_inner(expr: &SetExpr, len: usize) -> Result<Window> {
    Ok(match expr {
        SetExpr::Empty => Window::empty(len),
        SetExpr::Full => Window::full(len),
        SetExpr::Finite(v) => Window::from_members(len, v.iter().copied()),
        SetExpr::Residue { residue, modulus } => {
            let mut w = Window::empty(len);
            let first = if *residue == 0 { *modulus } else { *residue };
            let mut n = first;
            while n <= len as u64 {
                w.insert(n);
                n += modulus;
            }
            w
        }
        SetExpr::Thick(s) => {
            let mut w = Window::empty(len);
            for iv in s.intervals_upto(len as u64)? {
                w.insert_interval(iv);
            }
            w
        }
        SetExpr::Return(r) => {
            let k = r.pattern.len();
            let last = r.base.word_index(len as u64) as usize;
            let word = symbolic::expand(&r.word, last + k)?;
            let bytes = word.as_bytes();
            Window::from_fn(len, |n| {
                let i = r.base.word_index(n) as usize;
                bytes[i..i + k] == r.pattern[..]
            })
        }
        SetExpr::Union(v) => {
            let mut w = Window::empty(len);
            for a in v {
                w.union_with(&window_inner(a, len)?);
            }
            w
        }
        SetExpr::Inter(v) => {
            let mut w = Window::full(len);
            for a in v {
                w.intersect_with(&window_inner(a, len)?);
                if w.is_empty() {
                    break;
                }
            }
            w
        }
        SetExpr::Compl(a) => {
            let mut w = window_inner(a, len)?;
            w.complement();
            w
        }
        SetExpr::ShiftDown(k, a) => {
            let inner = len.checked_add(*k as usize).ok_or_else(|| Error::input("window too large"))?;
            window_inner(a, inner)?.segment(k + 1, len)
        }
        SetExpr::ShiftUp(k, a) => {
            let k = *k as usize;
            if len <= k {
                Window::empty(len)
            } else {
                let child = window_inner(a, len - k)?;
                Window::from_members(len, child.members().map(|x| x + k as u64))
            }
        }
        SetExpr::Dilate(k, a) => {
            let inner = len / *k as usize;
            if inner == 0 {
                Window::empty(len)
            } else {
                let child = window_inner(a, inner)?;
                Window::from_members(len, child.members().map(|x| x * k))
            }
        }
        SetExpr::Quotient(k, a) => {
            let inner = len.checked_mul(*k as usize).ok_or_else(|| Error::input("window too large"))?;
            let child = window_inner(a, inner)?;
            Window::from_fn(len, |m| child.contains(m * k))
        }
    })
}

/// Periods above this are not normalized.
pub const PERIOD_CAP: u64 = 1 << 20;
const PREPERIOD_CAP: u64 = 1 << 22;

/// Eventually periodic membership: `n <= preperiod` reads `pre[n - 1]`,
/// larger `n` read `table[n % period]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicForm {
    pub preperiod: u64,
    pub pre: Vec<bool>,
    pub period: u64,
    pub table: Vec<bool>,
}

impl PeriodicForm {
    /// Tabulates `f`, assumed `period`-periodic beyond `preperiod`.
    pub fn from_fn(preperiod: u64, period: u64, mut f: impl FnMut(u64) -> bool) -> Option<Self> {
        if period == 0 || period > PERIOD_CAP || preperiod > PREPERIOD_CAP {
            return None;
        }
        let pre = (1..=preperiod).map(&mut f).collect();
        let mut table = vec![false; period as usize];
        for n in preperiod + 1..=preperiod + period {
            table[(n % period) as usize] = f(n);
        }
        Some(PeriodicForm { preperiod, pre, period, table }.minimized())
    }

    pub fn member(&self, n: u64) -> bool {
        if n == 0 {
            false
        } else if n <= self.preperiod {
            self.pre[(n - 1) as usize]
        } else {
            self.table[(n % self.period) as usize]
        }
    }

    /// No member beyond the preperiod.
    pub fn is_finite(&self) -> bool {
        self.table.iter().all(|&b| !b)
    }

    /// Every integer beyond the preperiod is a member.
    pub fn is_cofinite(&self) -> bool {
        self.table.iter().all(|&b| b)
    }

    pub fn window(&self, len: usize) -> Window {
        Window::from_fn(len, |n| self.member(n))
    }

    /// Least period and least preperiod describing the same set.
    fn minimized(mut self) -> Self {
        let p = self.period;
        let mut best = p;
        for d in divisors(p) {
            if d < best && (0..p).all(|r| self.table[r as usize] == self.table[(r % d) as usize]) {
                best = d;
            }
        }
        if best < p {
            // table entries are indexed by n mod p; rebuild on n mod best
            let mut t = vec![false; best as usize];
            for n in self.preperiod + 1..=self.preperiod + best {
                t[(n % best) as usize] = self.table[(n % p) as usize];
            }
            self.table = t;
            self.period = best;
        }
        while self.preperiod > 0 {
            let n = self.preperiod;
            if self.pre[(n - 1) as usize] != self.table[(n % self.period) as usize] {
                break;
            }
            self.pre.pop();
            self.preperiod -= 1;
        }
        self
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).flat_map(|d| [d, n / d]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Normal form for expressions built from finite sets and residue classes.
/// `None` when the expression contains a schedule or a word, or when the
/// period would exceed [`PERIOD_CAP`].
pub fn eventually_periodic_normalize(expr: &SetExpr) -> Option<PeriodicForm> {
    match expr {
        SetExpr::Empty => PeriodicForm::from_fn(0, 1, |_| false),
        SetExpr::Full => PeriodicForm::from_fn(0, 1, |_| true),
        SetExpr::Finite(v) => {
            let max = v.last().copied().unwrap_or(0);
            PeriodicForm::from_fn(max, 1, |n| n <= max && v.binary_search(&n).is_ok())
        }
        SetExpr::Residue { residue, modulus } => PeriodicForm::from_fn(0, *modulus, |n| n % modulus == *residue),
        SetExpr::Thick(_) | SetExpr::Return(_) => None,
        SetExpr::Union(v) | SetExpr::Inter(v) => {
            let forms: Vec<PeriodicForm> = v.iter().map(eventually_periodic_normalize).collect::<Option<_>>()?;
            let pre = forms.iter().map(|f| f.preperiod).max().unwrap_or(0);
            let mut period = 1u64;
            for f in &forms {
                period = period.lcm(&f.period);
                if period > PERIOD_CAP {
                    return None;
                }
            }
            let is_union = matches!(expr, SetExpr::Union(_));
            PeriodicForm::from_fn(pre, period, |n| {
                if is_union {
                    forms.iter().any(|f| f.member(n))
                } else {
                    forms.iter().all(|f| f.member(n))
                }
            })
        }
        SetExpr::Compl(a) => {
            let f = eventually_periodic_normalize(a)?;
            PeriodicForm::from_fn(f.preperiod, f.period, |n| !f.member(n))
        }
        SetExpr::ShiftDown(k, a) => {
            let f = eventually_periodic_normalize(a)?;
            PeriodicForm::from_fn(f.preperiod.saturating_sub(*k), f.period, |n| f.member(n + k))
        }
        SetExpr::ShiftUp(k, a) => {
            let f = eventually_periodic_normalize(a)?;
            PeriodicForm::from_fn(f.preperiod.checked_add(*k)?, f.period, |n| n > *k && f.member(n - k))
        }
        SetExpr::Dilate(k, a) => {
            let f = eventually_periodic_normalize(a)?;
            PeriodicForm::from_fn(f.preperiod.checked_mul(*k)?, f.period.checked_mul(*k)?, |n| n % k == 0 && f.member(n / k))
        }
        SetExpr::Quotient(k, a) => {
            let f = eventually_periodic_normalize(a)?;
            PeriodicForm::from_fn(f.preperiod / k, f.period / f.period.gcd(k), |n| f.member(n * k))
        }
    }
}

/// Horizon used by [`difference_set_window`] for a window of length `len`.
pub fn difference_horizon(len: usize) -> usize {
    2 * len
}

/// `(S - S2) ∩ [1, len]`, where the subtracted elements range over `S2 ∩ [1, 2 len]`.
pub fn difference_set_window(s: &SetExpr, s2: &SetExpr, len: usize) -> Result<Window> {
    if len == 0 {
        return Err(Error::input("window length must be >= 1"));
    }
    let horizon = difference_horizon(len);
    let sw = window(s, horizon + len)?;
    let s2w = window(s2, horizon)?;
    let mut out = Window::empty(len);
    for t in s2w.members() {
        out.union_with(&sw.segment(t + 1, len));
    }
    Ok(out)
}
