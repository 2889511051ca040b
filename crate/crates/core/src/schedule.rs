//! Finitely described sequences of disjoint intervals `I_1 < I_2 < ...`
//! whose union is a thick set.

use serde::{Deserialize, Serialize};

use crate::window::Interval;
use crate::{Error, Result};

/// Interval length as a function of the zero-based index `j`: `slope * j + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LengthMap {
    pub slope: u64,
    pub offset: u64,
}

impl LengthMap {
    /// `|I_j| = j + 1`.
    pub const LINEAR: LengthMap = LengthMap { slope: 1, offset: 1 };

    pub fn len(&self, j: u64) -> Option<u64> {
        self.slope.checked_mul(j)?.checked_add(self.offset)
    }
}

impl Default for LengthMap {
    fn default() -> Self {
        LengthMap::LINEAR
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spacing {
    /// Consecutive intervals are `sep(d)` apart.
    Linear,
    /// Consecutive intervals are at least `max(sep(d), hi)` apart, so the
    /// next interval starts beyond twice the end of the previous one.
    Doubling,
}

/// Diagonal layout of a `rows x cols` table of thick sets `T_{i,j}`.
///
/// Stage `s = 1, 2, ...` places one interval of length `width * s` for every
/// block `(i, j)` in diagonal order (by `i + j`, then `i`). The gap before an
/// interval is `sep(d) = factor * d` where `d` is the largest index of the two
/// neighbouring blocks, widened to the previous endpoint under
/// [`Spacing::Doubling`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeparatedLayout {
    pub rows: u64,
    pub cols: u64,
    pub factor: u64,
    pub spacing: Spacing,
    pub origin: u64,
    pub width: u64,
}

impl SeparatedLayout {
    pub fn new(rows: u64, cols: u64, factor: u64) -> Self {
        SeparatedLayout { rows, cols, factor, spacing: Spacing::Linear, origin: 1, width: 1 }
    }

    pub fn sep(&self, d: u64) -> u64 {
        self.factor.saturating_mul(d)
    }

    fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidSchedule("separated layout needs rows, cols >= 1".into()));
        }
        if self.origin == 0 || self.width == 0 {
            return Err(Error::InvalidSchedule("separated layout needs origin, width >= 1".into()));
        }
        Ok(())
    }

    /// Blocks in placement order.
    pub fn blocks(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> =
            (1..=self.rows).flat_map(|i| (1..=self.cols).map(move |j| (i, j))).collect();
        out.sort_by_key(|&(i, j)| (i + j, i));
        out
    }

    /// Every placed interval, tagged with its block, in increasing order.
    pub fn walk(&self) -> impl Iterator<Item = ((u64, u64), Interval)> + '_ {
        let blocks = self.blocks();
        let per_stage = blocks.len() as u64;
        let mut slot = 0u64;
        let mut prev: Option<((u64, u64), Interval)> = None;
        std::iter::from_fn(move || {
            let stage = slot / per_stage + 1;
            let block = blocks[(slot % per_stage) as usize];
            slot += 1;
            let len = self.width.checked_mul(stage)?;
            let lo = match prev {
                None => self.origin,
                Some((pb, piv)) => {
                    let d = pb.0.max(pb.1).max(block.0).max(block.1);
                    let mut gap = self.sep(d).max(2);
                    if self.spacing == Spacing::Doubling {
                        gap = gap.max(piv.hi);
                    }
                    piv.hi.checked_add(gap)?
                }
            };
            let hi = lo.checked_add(len - 1)?;
            let iv = Interval::new(lo, hi);
            prev = Some((block, iv));
            Some((block, iv))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScheduleSpec {
    /// `I_j = [anchor * base^j, anchor * base^j + len(j) - 1]`, `j = 0, 1, ...`.
    Geometric { base: u64, anchor: u64, length: LengthMap },
    Explicit(Vec<Interval>),
    /// Block `(row, col)` of a [`SeparatedLayout`].
    Separated { layout: SeparatedLayout, row: u64, col: u64 },
    /// Intervals `offset, offset + step, offset + 2 step, ...` of `inner` (zero-based).
    Thinned { inner: Box<ScheduleSpec>, step: u64, offset: u64 },
}

type RawIter<'a> = Box<dyn Iterator<Item = Result<Interval>> + Send + 'a>;

impl ScheduleSpec {
    pub fn geometric(base: u64, anchor: u64) -> Self {
        ScheduleSpec::Geometric { base, anchor, length: LengthMap::LINEAR }
    }

    pub fn explicit(intervals: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let spec = ScheduleSpec::Explicit(intervals.into_iter().map(|(a, b)| Interval { lo: a, hi: b }).collect());
        spec.validate()?;
        Ok(spec)
    }

    pub fn separated(layout: SeparatedLayout, row: u64, col: u64) -> Result<Self> {
        let spec = ScheduleSpec::Separated { layout, row, col };
        spec.validate()?;
        Ok(spec)
    }

    pub fn thinned(inner: ScheduleSpec, step: u64, offset: u64) -> Result<Self> {
        let spec = ScheduleSpec::Thinned { inner: Box::new(inner), step, offset };
        spec.validate()?;
        Ok(spec)
    }

    /// Whether the kind guarantees `|I_{j+1}| >= |I_j|` and `|I_j| >= j`.
    pub fn is_growing(&self) -> bool {
        match self {
            ScheduleSpec::Geometric { .. } | ScheduleSpec::Separated { .. } => true,
            ScheduleSpec::Explicit(_) => false,
            ScheduleSpec::Thinned { inner, .. } => inner.is_growing(),
        }
    }

    /// Structural checks that need no enumeration. Interval-level
    /// violations surface lazily from [`ScheduleSpec::intervals`].
    pub fn validate(&self) -> Result<()> {
        match self {
            ScheduleSpec::Geometric { base, anchor, .. } => {
                if *base < 2 || *anchor < 1 {
                    return Err(Error::InvalidSchedule(format!(
                        "geometric schedule needs base >= 2 and anchor >= 1, got b={base} c={anchor}"
                    )));
                }
                Ok(())
            }
            ScheduleSpec::Explicit(list) => {
                for w in list.windows(2) {
                    if w[0].hi + 1 >= w[1].lo {
                        return Err(Error::InvalidSchedule(format!("intervals {} and {} not separated", w[0], w[1])));
                    }
                }
                for iv in list {
                    if iv.lo == 0 || iv.lo > iv.hi {
                        return Err(Error::InvalidSchedule(format!("bad interval {iv}")));
                    }
                }
                Ok(())
            }
            ScheduleSpec::Separated { layout, row, col } => {
                layout.validate()?;
                if !(1..=layout.rows).contains(row) || !(1..=layout.cols).contains(col) {
                    return Err(Error::InvalidSchedule(format!(
                        "block ({row},{col}) outside {}x{} layout",
                        layout.rows, layout.cols
                    )));
                }
                Ok(())
            }
            ScheduleSpec::Thinned { inner, step, .. } => {
                if *step == 0 {
                    return Err(Error::InvalidSchedule("thinning step must be >= 1".into()));
                }
                inner.validate()
            }
        }
    }

    fn raw(&self) -> RawIter<'_> {
        match self {
            ScheduleSpec::Geometric { base, anchor, length } => {
                let (base, anchor, length) = (*base, *anchor, *length);
                let mut j = 0u64;
                let mut lo = Some(anchor);
                Box::new(std::iter::from_fn(move || {
                    let start = lo?;
                    let len = length.len(j)?;
                    if len == 0 {
                        return Some(Err(Error::InvalidSchedule(format!("interval {j} has length 0"))));
                    }
                    let hi = start.checked_add(len - 1)?;
                    lo = start.checked_mul(base);
                    j += 1;
                    Some(Ok(Interval::new(start, hi)))
                }))
            }
            ScheduleSpec::Explicit(list) => Box::new(list.iter().copied().map(Ok)),
            ScheduleSpec::Separated { layout, row, col } => {
                let (row, col) = (*row, *col);
                Box::new(layout.walk().filter(move |(b, _)| *b == (row, col)).map(|(_, iv)| Ok(iv)))
            }
            ScheduleSpec::Thinned { inner, step, offset } => {
                Box::new(inner.intervals().skip(*offset as usize).step_by(*step as usize))
            }
        }
    }

    /// The intervals in increasing order, validated as they are produced.
    /// The iterator ends when interval endpoints would overflow `u64`.
    pub fn intervals(&self) -> impl Iterator<Item = Result<Interval>> + Send + '_ {
        let growing = self.is_growing();
        let structural = self.validate();
        let mut raw = self.raw();
        let mut prev: Option<Interval> = None;
        let mut j = 0u64;
        let mut failed = false;
        let mut first = Some(structural);
        std::iter::from_fn(move || {
            if failed {
                return None;
            }
            if let Some(Err(e)) = first.take() {
                failed = true;
                return Some(Err(e));
            }
            let iv = match raw.next()? {
                Ok(iv) => iv,
                Err(e) => {
                    failed = true;
                    return Some(Err(e));
                }
            };
            let check = (|| {
                if iv.lo == 0 || iv.lo > iv.hi {
                    return Err(format!("bad interval {iv}"));
                }
                if let Some(p) = prev {
                    if p.hi + 1 >= iv.lo {
                        return Err(format!("intervals {p} and {iv} not separated"));
                    }
                    if growing && iv.len() < p.len() {
                        return Err(format!("interval {iv} shorter than predecessor {p}"));
                    }
                }
                if growing && iv.len() < j + 1 {
                    return Err(format!("interval #{} = {iv} shorter than its index", j + 1));
                }
                Ok(())
            })();
            if let Err(msg) = check {
                failed = true;
                return Some(Err(Error::InvalidSchedule(msg)));
            }
            prev = Some(iv);
            j += 1;
            Some(Ok(iv))
        })
    }

    /// All intervals whose left endpoint is at most `limit`.
    pub fn intervals_upto(&self, limit: u64) -> Result<Vec<Interval>> {
        let mut out = Vec::new();
        for iv in self.intervals() {
            let iv = iv?;
            if iv.lo > limit {
                break;
            }
            out.push(iv);
        }
        Ok(out)
    }

    /// Zero-based `j`-th interval, or `None` past the end of a finite schedule.
    pub fn nth_interval(&self, j: usize) -> Result<Option<Interval>> {
        self.intervals().nth(j).transpose()
    }

    pub fn contains(&self, n: u64) -> Result<bool> {
        for iv in self.intervals() {
            let iv = iv?;
            if iv.lo > n {
                return Ok(false);
            }
            if iv.hi >= n {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
