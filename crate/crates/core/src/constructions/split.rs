use crate::certify::{self, Certificate, SearchConfig, Verdict};
use crate::schedule::ScheduleSpec;
use crate::setcalc::{self, SetExpr};
use crate::window::Window;
use crate::{Error, Result};

/// Finite set carved in one round of [`split_by_filtration`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carve {
    pub round: u64,
    /// 1 or 2.
    pub part: u8,
    pub members: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub a1: SetExpr,
    pub a2: SetExpr,
    /// Length of the window on which the partition was checked.
    pub window: u64,
    pub disjoint: bool,
    pub exhaustive: bool,
    pub cert1: Verdict,
    pub cert2: Verdict,
    pub carves: Vec<Carve>,
}

impl SplitResult {
    pub fn is_partition(&self) -> bool {
        self.disjoint && self.exhaustive
    }
}

fn partition_check(a: &Window, a1: &Window, a2: &Window) -> (bool, bool) {
    let mut u = a1.clone();
    u.union_with(a2);
    (a1.is_disjoint(a2), &u == a)
}

/// Interleaved split of a schedule: intervals `I_0, I_2, ...` against `I_1, I_3, ...`.
/// Each part is certified thick to `level` below `bound`; the partition is checked on `1..=window`.
pub fn split_thick(schedule: &ScheduleSpec, level: u64, bound: u64, window: u64) -> Result<SplitResult> {
    schedule.validate()?;
    let a = SetExpr::Thick(schedule.clone());
    let a1 = SetExpr::Thick(ScheduleSpec::thinned(schedule.clone(), 2, 0)?);
    let a2 = SetExpr::Thick(ScheduleSpec::thinned(schedule.clone(), 2, 1)?);
    let len = window as usize;
    let (disjoint, exhaustive) =
        partition_check(&setcalc::window(&a, len)?, &setcalc::window(&a1, len)?, &setcalc::window(&a2, len)?);
    let cert1 = certify::thick_to_level(&a1, level, bound)?;
    let cert2 = certify::thick_to_level(&a2, level, bound)?;
    Ok(SplitResult { a1, a2, window, disjoint, exhaustive, cert1, cert2, carves: Vec::new() })
}

/// Produces, at round `n`, a finite subset of the remaining set that meets
/// every member of the round-`n` family.
pub trait Extractor {
    fn name(&self) -> &'static str;
    fn extract(&self, round: u64, remaining: &Window) -> std::result::Result<Vec<u64>, String>;
}

/// Leftmost interval of length `n` inside the remaining set.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntervalExtractor;

impl Extractor for IntervalExtractor {
    fn name(&self) -> &'static str {
        "interval"
    }

    fn extract(&self, round: u64, remaining: &Window) -> std::result::Result<Vec<u64>, String> {
        let run = remaining
            .runs()
            .into_iter()
            .find(|r| r.len() >= round)
            .ok_or_else(|| format!("no interval of length {round} in the remaining set on 1..={}", remaining.len()))?;
        Ok((run.lo..run.lo + round).collect())
    }
}

/// All finite sums of `n` generators inside the remaining set.
#[derive(Clone, Copy, Debug, Default)]
pub struct FsExtractor;

impl Extractor for FsExtractor {
    fn name(&self) -> &'static str {
        "finite-sums"
    }

    fn extract(&self, round: u64, remaining: &Window) -> std::result::Result<Vec<u64>, String> {
        let rest = SetExpr::Finite(remaining.members().collect());
        let cfg = SearchConfig::default();
        match certify::ip_witness_with(&rest, round, remaining.len() as u64, &cfg).map_err(|e| e.to_string())? {
            Verdict::Certified(Certificate::Ip { generators }) => {
                let mut sums: Vec<u64> = (1u64..1 << generators.len())
                    .map(|mask| generators.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g).sum())
                    .collect();
                sums.sort_unstable();
                sums.dedup();
                Ok(sums)
            }
            v => Err(format!("no {round} generators with all finite sums in the remaining set ({})", v.label())),
        }
    }
}

/// Greedy splitting by alternately carving finite witnesses for rounds
/// `1..=rounds` from `A ∩ [1, window]`. Odd rounds go to `A_1`, even rounds to
/// `A_2`, and whatever is never carved stays in `A_1`.
pub fn split_by_filtration(a: &SetExpr, extractor: &dyn Extractor, rounds: u64, window: u64) -> Result<SplitResult> {
    if rounds == 0 || window == 0 {
        return Err(Error::input("rounds and window must be >= 1"));
    }
    let len = window as usize;
    let aw = setcalc::window(a, len)?;
    let mut remaining = aw.clone();
    let mut carves = Vec::new();
    for round in 1..=rounds {
        let members = extractor
            .extract(round, &remaining)
            .map_err(|reason| Error::ExtractorFailure { round, reason: format!("{} extractor: {reason}", extractor.name()) })?;
        for &m in &members {
            if !remaining.contains(m) {
                return Err(Error::ExtractorFailure { round, reason: format!("carved {m} outside the remaining set") });
            }
            remaining.remove(m);
        }
        carves.push(Carve { round, part: if round % 2 == 1 { 1 } else { 2 }, members });
    }
    let a2_members: Vec<u64> = {
        let mut v: Vec<u64> = carves.iter().filter(|c| c.part == 2).flat_map(|c| c.members.iter().copied()).collect();
        v.sort_unstable();
        v
    };
    let a2 = SetExpr::Finite(a2_members);
    let a1 = SetExpr::Inter(vec![a.clone(), SetExpr::Compl(Box::new(a2.clone()))]);
    let w1 = setcalc::window(&a1, len)?;
    let w2 = setcalc::window(&a2, len)?;
    let (disjoint, exhaustive) = partition_check(&aw, &w1, &w2);
    // a part is certified up to its largest carve round
    let cert_of = |w: &Window, part: u8| match carves.iter().filter(|c| c.part == part).map(|c| c.round).max() {
        Some(level) => certify::thick_on_window(w, level),
        None => Verdict::unknown(window),
    };
    let cert1 = cert_of(&w1, 1);
    let cert2 = cert_of(&w2, 2);
    Ok(SplitResult { a1, a2, window, disjoint, exhaustive, cert1, cert2, carves })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level_of(v: &Verdict) -> u64 {
        match v {
            Verdict::Certified(Certificate::Thick(t)) => t.level,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn geometric_split() {
        let r = split_thick(&ScheduleSpec::geometric(10, 1), 4, 1_000_000_000, 100_000).unwrap();
        assert!(r.is_partition());
        assert_eq!(level_of(&r.cert1), 4);
        assert_eq!(level_of(&r.cert2), 4);
    }

    #[test]
    fn explicit_two_intervals() {
        let s = ScheduleSpec::explicit([(1, 3), (10, 14)]).unwrap();
        let r = split_thick(&s, 3, 100, 100).unwrap();
        assert!(r.is_partition());
        assert_eq!(setcalc::window(&r.a1, 20).unwrap().members().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(setcalc::window(&r.a2, 20).unwrap().members().collect::<Vec<_>>(), vec![10, 11, 12, 13, 14]);
        assert_eq!(level_of(&r.cert1), 3);
        assert!(!split_thick(&s, 4, 100, 100).unwrap().cert1.is_certified());
    }

    #[test]
    fn filtration_on_full() {
        let r = split_by_filtration(&SetExpr::Full, &IntervalExtractor, 5, 1000).unwrap();
        assert!(r.is_partition());
        assert_eq!(r.carves.len(), 5);
        for c in &r.carves {
            assert_eq!(c.members.len() as u64, c.round);
        }
        assert!(r.cert1.is_certified() && r.cert2.is_certified());
    }

    #[test]
    fn filtration_on_geometric() {
        let a = SetExpr::Thick(ScheduleSpec::geometric(10, 1));
        let r = split_by_filtration(&a, &IntervalExtractor, 4, 100_000).unwrap();
        assert!(r.is_partition());
        assert_eq!(level_of(&r.cert1), 3);
        assert_eq!(level_of(&r.cert2), 4);
        assert!(r.cert1.certificate().revalidate(&r.a1).unwrap());
        assert!(r.cert2.certificate().revalidate(&r.a2).unwrap());
    }

    #[test]
    fn filtration_fails_on_evens() {
        let err = split_by_filtration(&SetExpr::residue(0, 2).unwrap(), &IntervalExtractor, 2, 1000).unwrap_err();
        assert!(matches!(err, Error::ExtractorFailure { round: 2, .. }), "{err}");
    }

    #[test]
    fn finite_sums_extractor() {
        let r = split_by_filtration(&SetExpr::Full, &FsExtractor, 3, 200).unwrap();
        assert!(r.is_partition());
        assert_eq!(r.carves[2].members.len(), 7);
    }
}
