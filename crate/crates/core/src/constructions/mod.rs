//! Set constructions, splitting algorithms and the structure decomposition.
//!
//! Infinite unions are truncated to a caller-chosen number of branches and
//! every certificate produced here speaks about the truncation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certify::{self, Verdict};
use crate::schedule::{ScheduleSpec, SeparatedLayout, Spacing};
use crate::setcalc::SetExpr;
use crate::window::Interval;
use crate::{Error, Result};

mod split;
mod structure;

pub use split::{split_by_filtration, split_thick, Carve, Extractor, FsExtractor, IntervalExtractor, SplitResult};
pub use structure::{structure_decompose, Decomposition};

fn check_schedules(k: usize, schedules: &[ScheduleSpec]) -> Result<()> {
    if schedules.len() != k {
        return Err(Error::input(format!("expected {k} schedules, got {}", schedules.len())));
    }
    schedules.iter().try_for_each(ScheduleSpec::validate)
}

/// `⋃_{i < k} (Residue(i, k) ∩ Thick(H_i))`.
pub fn residue_thick_union(k: u64, schedules: &[ScheduleSpec]) -> Result<SetExpr> {
    if k < 2 {
        return Err(Error::input("modulus k must be >= 2"));
    }
    check_schedules(k as usize, schedules)?;
    Ok(SetExpr::Union(
        schedules
            .iter()
            .enumerate()
            .map(|(i, h)| SetExpr::Inter(vec![SetExpr::Residue { residue: i as u64, modulus: k }, SetExpr::Thick(h.clone())]))
            .collect(),
    ))
}

/// Finite `F` inside the union of [`residue_thick_union`]: for each `i`, the
/// residue-`i` members of an interval `I_i` of `H_i` longer than `max(ell, k - 1)`,
/// with `max I_i < min I_{i+1}`.
pub fn residue_thick_f_witness(k: u64, schedules: &[ScheduleSpec], ell: u64) -> Result<Vec<u64>> {
    if ell == 0 {
        return Err(Error::input("ell must be >= 1"));
    }
    if k < 2 {
        return Err(Error::input("modulus k must be >= 2"));
    }
    check_schedules(k as usize, schedules)?;
    let need = ell.max(k - 1);
    let mut floor = 0u64;
    let mut f = Vec::new();
    for (i, h) in schedules.iter().enumerate() {
        let mut chosen = None;
        for iv in h.intervals() {
            let iv = iv?;
            if iv.lo > floor && iv.len() > need {
                chosen = Some(iv);
                break;
            }
        }
        let iv = chosen.ok_or_else(|| {
            Error::NotFound(format!("interval of schedule {i} longer than {need} beyond {floor}"))
        })?;
        f.extend((iv.lo..=iv.hi).filter(|n| n % k == i as u64));
        floor = iv.hi;
    }
    Ok(f)
}

/// Branches `(p_i N + c_i) ∩ H_i` of a prime-residue union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeResidueParams {
    pub primes: Vec<u64>,
    /// Reduced mod the matching prime.
    pub residues: Vec<u64>,
    pub schedules: Vec<ScheduleSpec>,
    /// Requires nonzero residues and separated schedules from one layout.
    pub non_ip: bool,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeResidueParams {
    pub fn new(primes: Vec<u64>, residues: Vec<i64>, schedules: Vec<ScheduleSpec>, non_ip: bool) -> Result<Self> {
        if primes.len() != residues.len() || primes.len() != schedules.len() {
            return Err(Error::input("primes, residues and schedules must have equal lengths"));
        }
        let residues = primes.iter().zip(&residues).map(|(&p, &c)| c.rem_euclid(p.max(1) as i64) as u64).collect();
        let params = PrimeResidueParams { primes, residues, schedules, non_ip };
        params.validate()?;
        Ok(params)
    }

    /// Branches over `primes` with residues `c` on the default separated layout.
    pub fn separated(primes: Vec<u64>, residues: Vec<i64>) -> Result<Self> {
        let layout = prime_union_layout(primes.len() as u64);
        let schedules = (1..=primes.len() as u64).map(|j| ScheduleSpec::Separated { layout, row: 1, col: j }).collect();
        PrimeResidueParams::new(primes, residues, schedules, true)
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::input("need at least one prime"));
        }
        for (i, &p) in self.primes.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::input(format!("{p} is not prime")));
            }
            if self.primes[..i].contains(&p) {
                return Err(Error::input(format!("prime {p} repeated")));
            }
            if self.residues[i] >= p {
                return Err(Error::input(format!("residue {} not reduced mod {p}", self.residues[i])));
            }
        }
        self.schedules.iter().try_for_each(ScheduleSpec::validate)?;
        if self.non_ip {
            if let Some(i) = self.residues.iter().position(|&c| c == 0) {
                return Err(Error::input(format!("non-IP branch {} has residue 0 mod {}", i + 1, self.primes[i])));
            }
            let mut layout = None;
            let mut blocks = Vec::new();
            for s in &self.schedules {
                match s {
                    ScheduleSpec::Separated { layout: l, row, col } if layout.is_none_or(|x| x == *l) => {
                        layout = Some(*l);
                        if blocks.contains(&(*row, *col)) {
                            return Err(Error::input("non-IP branches must use distinct blocks"));
                        }
                        blocks.push((*row, *col));
                    }
                    _ => return Err(Error::input("non-IP branches need separated schedules from one layout")),
                }
            }
        }
        Ok(())
    }
}

/// Layout used for prime-residue unions: one row, doubling gaps, intervals
/// of width `10 s` at stage `s` starting at 100.
pub fn prime_union_layout(branches: u64) -> SeparatedLayout {
    SeparatedLayout { rows: 1, cols: branches.max(1), factor: 10, spacing: Spacing::Doubling, origin: 100, width: 10 }
}

/// Union of the first `truncation` branches.
pub fn prime_residue_union(params: &PrimeResidueParams, truncation: usize) -> Result<SetExpr> {
    params.validate()?;
    if truncation == 0 {
        return Err(Error::input("truncation must be >= 1"));
    }
    if truncation > params.primes.len() {
        return Err(Error::input(format!("truncation {truncation} exceeds {} branches", params.primes.len())));
    }
    Ok(SetExpr::Union(
        (0..truncation)
            .map(|i| {
                SetExpr::Inter(vec![
                    SetExpr::Residue { residue: params.residues[i], modulus: params.primes[i] },
                    SetExpr::Thick(params.schedules[i].clone()),
                ])
            })
            .collect(),
    ))
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Least positive `n` with `n + i = a_i (mod p_i)` for `i = 1..=k`.
pub fn crt_cover_witness(primes: &[u64], residues: &[i64]) -> Result<u64> {
    if primes.is_empty() || primes.len() != residues.len() {
        return Err(Error::input("need matching nonempty prime and residue lists"));
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) || primes[..i].contains(&p) {
            return Err(Error::input(format!("moduli must be distinct primes, got {p}")));
        }
    }
    let mut r: i128 = 0;
    let mut m: i128 = 1;
    for (i, (&p, &a)) in primes.iter().zip(residues).enumerate() {
        let p = p as i128;
        let target = (a as i128 - (i as i128 + 1)).rem_euclid(p);
        // r + m t = target (mod p)
        let (_, inv, _) = egcd(m.rem_euclid(p), p);
        let t = ((target - r).rem_euclid(p) * inv.rem_euclid(p)).rem_euclid(p);
        r += m * t;
        m *= p;
        if m > u64::MAX as i128 {
            return Err(Error::input("product of moduli overflows"));
        }
    }
    let n = if r == 0 { m } else { r } as u64;
    debug_assert!(primes.iter().zip(residues).enumerate().all(|(i, (&p, &a))| (n + i as u64 + 1) % p == a.rem_euclid(p as i64) as u64));
    Ok(n)
}

/// A `rows x cols` table of thick sets laid out with growing separation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatedFamily {
    pub layout: SeparatedLayout,
    /// `schedules[(i, j)]` is `T_{i,j}`.
    pub schedules: BTreeMap<(u64, u64), ScheduleSpec>,
}

/// Realized separation at truncation `d`: the least positive difference
/// `a - b` with `a`, `b` in distinct blocks, one of index above `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub d: u64,
    pub required: u64,
    /// `None` when no qualifying pair lies inside the window.
    pub realized: Option<u64>,
}

impl SeparationReport {
    pub fn holds(&self) -> bool {
        self.realized.is_none_or(|r| r >= self.required)
    }
}

impl SeparatedFamily {
    pub fn get(&self, i: u64, j: u64) -> Option<&ScheduleSpec> {
        self.schedules.get(&(i, j))
    }

    /// Separation for `d = 0..=d_max` over all intervals starting in `1..=limit`.
    pub fn separation(&self, d_max: u64, limit: u64) -> Vec<SeparationReport> {
        let placed: Vec<((u64, u64), Interval)> =
            self.layout.walk().take_while(|(_, iv)| iv.lo <= limit).collect();
        let index = |b: (u64, u64)| b.0.max(b.1);
        let mut best: Vec<Option<u64>> = vec![None; d_max as usize + 1];
        for (k, &(ba, ia)) in placed.iter().enumerate() {
            for &(bb, ib) in &placed[..k] {
                if ba == bb {
                    continue;
                }
                let diff = ia.lo - ib.hi;
                let top = index(ba).max(index(bb));
                for d in 0..top.min(d_max + 1) {
                    let slot = &mut best[d as usize];
                    *slot = Some(slot.map_or(diff, |x| x.min(diff)));
                }
            }
        }
        (0..=d_max)
            .map(|d| SeparationReport { d, required: self.layout.sep(d), realized: best[d as usize] })
            .collect()
    }
}

/// Table `T_{i,j}` for `i <= rows`, `j <= cols` with gaps `sep(d) = factor * d`.
pub fn separated_thick_family(rows: u64, cols: u64, factor: u64) -> Result<SeparatedFamily> {
    let layout = SeparatedLayout::new(rows, cols, factor);
    let mut schedules = BTreeMap::new();
    for i in 1..=rows {
        for j in 1..=cols {
            schedules.insert((i, j), ScheduleSpec::separated(layout, i, j)?);
        }
    }
    Ok(SeparatedFamily { layout, schedules })
}

/// `B_i = ⋃_{j >= i} (T_{i,j} ∩ Residue(1, p_j))` for each row, truncated to the table.
pub fn separated_rows(family: &SeparatedFamily, primes: &[u64]) -> Result<Vec<SetExpr>> {
    if primes.len() < family.layout.cols as usize {
        return Err(Error::input("need one prime per column"));
    }
    Ok((1..=family.layout.rows)
        .map(|i| {
            SetExpr::Union(
                (i..=family.layout.cols)
                    .map(|j| {
                        SetExpr::Inter(vec![
                            SetExpr::Thick(family.schedules[&(i, j)].clone()),
                            SetExpr::Residue { residue: 1 % primes[j as usize - 1], modulus: primes[j as usize - 1] },
                        ])
                    })
                    .collect(),
            )
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub probe: usize,
    /// Index into the collection of the first member with a syndetic intersection.
    pub member: Option<usize>,
    pub verdict: Verdict,
}

/// For each probe `A`, the first `B` in the collection with `A ∩ B` certified syndetic.
pub fn robustly_syndetic_check(collection: &[SetExpr], probes: &[SetExpr], len: u64) -> Result<Vec<ProbeReport>> {
    probes
        .iter()
        .enumerate()
        .map(|(pi, a)| {
            for (bi, b) in collection.iter().enumerate() {
                let v = certify::syndetic_gap(&SetExpr::Inter(vec![a.clone(), b.clone()]), len)?;
                if v.is_certified() {
                    return Ok(ProbeReport { probe: pi, member: Some(bi), verdict: v });
                }
            }
            Ok(ProbeReport { probe: pi, member: None, verdict: Verdict::unknown(len) })
        })
        .collect()
}
