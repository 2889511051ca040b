use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul};
use serde::{Deserialize, Serialize};

use crate::certify::{Certificate, SearchConfig, Verdict};
use crate::setcalc::{self, SetExpr};
use crate::window::Interval;
use crate::{Error, Result};

/// Polynomial with rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<Ratio<i64>>,
}

impl Poly {
    pub fn new(coeffs: impl IntoIterator<Item = Ratio<i64>>) -> Self {
        let mut coeffs: Vec<_> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(|c| *c == Ratio::from_integer(0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Ratio::from_integer(c)))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, y: i64) -> Option<Ratio<i64>> {
        let y = Ratio::from_integer(y);
        let mut acc = Ratio::from_integer(0i64);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(&y)?.checked_add(c)?;
        }
        Some(acc)
    }

    /// `p(0) = 0` and `p(k)` integral for `k = 0..=degree + 1`.
    pub fn validate(&self) -> Result<()> {
        if self.eval(0) != Some(Ratio::from_integer(0)) {
            return Err(Error::input(format!("polynomial {self} has nonzero constant term")));
        }
        for k in 0..=self.degree() as i64 + 1 {
            match self.eval(k) {
                Some(v) if v.is_integer() => {}
                _ => return Err(Error::input(format!("polynomial {self} is not integer-valued at {k}"))),
            }
        }
        Ok(())
    }

    fn value(&self, y: u64) -> Option<i64> {
        let v = self.eval(i64::try_from(y).ok()?)?;
        v.is_integer().then(|| v.to_integer())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Ratio::from_integer(0))
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*y"),
                _ => format!("{c}*y^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Lexicographically least `(y, x)` with `x`, `y` and every `x + p_i(y)` in `A`, all at most `bound`.
pub fn brauer_search(a: &SetExpr, polys: &[Poly], bound: u64) -> Result<Verdict> {
    brauer_search_with(a, polys, bound, &SearchConfig::default())
}

pub fn brauer_search_with(a: &SetExpr, polys: &[Poly], bound: u64, cfg: &SearchConfig) -> Result<Verdict> {
    if polys.is_empty() {
        return Err(Error::input("need at least one polynomial"));
    }
    if bound == 0 {
        return Err(Error::input("bound must be >= 1"));
    }
    for p in polys {
        p.validate()?;
    }
    let w = setcalc::window(a, bound as usize)?;
    let members: Vec<u64> = w.members().collect();
    let in_a = |v: i64| v >= 1 && w.contains(v as u64);
    let mut nodes = 0u64;
    for &y in &members {
        let shifts: Option<Vec<i64>> = polys.iter().map(|p| p.value(y)).collect();
        let Some(shifts) = shifts else { continue };
        for &x in &members {
            nodes += 1;
            if nodes > cfg.budget {
                return Ok(Verdict::unknown(bound));
            }
            let hits = shifts.iter().all(|&s| (x as i64).checked_add(s).is_some_and(in_a));
            if hits {
                let mut all: Vec<u64> = vec![x, y];
                all.extend(shifts.iter().map(|&s| (x as i64 + s) as u64));
                all.sort_unstable();
                all.dedup();
                return Ok(Verdict::Certified(Certificate::Brauer { x, y, members: all }));
            }
        }
    }
    Ok(Verdict::refuted(bound, false))
}

/// Least `M <= m_bound` such that `B ∩ [1, M]` contains an interval of length `n`.
pub fn compactness_prefix(n: u64, b: &SetExpr, m_bound: u64) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::input("interval length must be >= 1"));
    }
    if m_bound == 0 {
        return Err(Error::input("prefix bound must be >= 1"));
    }
    let runs = if let SetExpr::Thick(s) = b {
        s.intervals_upto(m_bound)?.into_iter().map(|iv| Interval::new(iv.lo, iv.hi.min(m_bound))).collect()
    } else {
        setcalc::window(b, m_bound as usize)?.runs()
    };
    Ok(match runs.iter().find(|r| r.len() >= n) {
        Some(r) => {
            let interval = Interval::new(r.lo, r.lo + n - 1);
            Verdict::Certified(Certificate::Prefix { m: interval.hi, interval })
        }
        None => Verdict::refuted(m_bound, false),
    })
}
