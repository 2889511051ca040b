//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's evaluators.

#![allow(dead_code)]

use lsc::{ScheduleSpec, SetExpr};
use num_integer::Integer;
use rand::Rng;

/// Direct membership from the definitions.
pub fn brute_member(e: &SetExpr, n: u64) -> bool {
    match e {
        SetExpr::Empty => false,
        SetExpr::Full => n >= 1,
        SetExpr::Finite(v) => v.contains(&n),
        SetExpr::Residue { residue, modulus } => n % modulus == *residue,
        SetExpr::Thick(s) => brute_schedule_member(s, n),
        SetExpr::Union(v) => v.iter().any(|x| brute_member(x, n)),
        SetExpr::Inter(v) => v.iter().all(|x| brute_member(x, n)),
        SetExpr::Compl(a) => !brute_member(a, n),
        SetExpr::ShiftDown(k, a) => brute_member(a, n + k),
        SetExpr::ShiftUp(k, a) => n > *k && brute_member(a, n - k),
        SetExpr::Dilate(k, a) => n.is_multiple_of(*k) && brute_member(a, n / k),
        SetExpr::Quotient(k, a) => brute_member(a, n * k),
        SetExpr::Return(_) => panic!("oracle does not cover return sets"),
    }
}

/// Geometric and explicit schedules are recomputed from scratch; other kinds
/// fall back to the schedule's own interval list, bypassing the set evaluators.
pub fn brute_schedule_member(s: &ScheduleSpec, n: u64) -> bool {
    match s {
        ScheduleSpec::Geometric { base, anchor, length } => {
            let mut start = *anchor;
            let mut j = 0u64;
            while start <= n {
                let len = length.slope * j + length.offset;
                if n < start + len {
                    return true;
                }
                start *= base;
                j += 1;
            }
            false
        }
        ScheduleSpec::Explicit(v) => v.iter().any(|iv| iv.lo <= n && n <= iv.hi),
        _ => s.intervals_upto(n).expect("valid schedule").iter().any(|iv| iv.lo <= n && n <= iv.hi),
    }
}

/// Upper bounds `(P, p)` such that membership is `p`-periodic beyond `P`.
/// Not minimal; derived only from the expression shape.
pub fn periodicity_bounds(e: &SetExpr) -> (u64, u64) {
    match e {
        SetExpr::Empty | SetExpr::Full => (0, 1),
        SetExpr::Finite(v) => (v.iter().max().copied().unwrap_or(0), 1),
        SetExpr::Residue { modulus, .. } => (0, *modulus),
        SetExpr::Union(v) | SetExpr::Inter(v) => v.iter().map(periodicity_bounds).fold((0, 1), |(a, b), (c, d)| (a.max(c), b.lcm(&d))),
        SetExpr::Compl(a) => periodicity_bounds(a),
        SetExpr::ShiftDown(k, a) => {
            let (pp, p) = periodicity_bounds(a);
            (pp.saturating_sub(*k), p)
        }
        SetExpr::ShiftUp(k, a) => {
            let (pp, p) = periodicity_bounds(a);
            (pp + k, p)
        }
        SetExpr::Dilate(k, a) => {
            let (pp, p) = periodicity_bounds(a);
            (pp * k, p * k)
        }
        SetExpr::Quotient(k, a) => {
            let (pp, p) = periodicity_bounds(a);
            (pp.div_ceil(*k), p)
        }
        SetExpr::Thick(_) | SetExpr::Return(_) => panic!("not eventually periodic"),
    }
}

/// Random expression over finite sets and residue classes (moduli <= 12).
pub fn random_periodic(rng: &mut impl Rng, depth: u32) -> SetExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => SetExpr::Empty,
            1 => SetExpr::Full,
            2 | 3 => {
                let k = rng.gen_range(0..4);
                let mut v: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=30)).collect();
                v.sort_unstable();
                v.dedup();
                SetExpr::Finite(v)
            }
            _ => {
                let m = rng.gen_range(1..=12);
                SetExpr::Residue { residue: rng.gen_range(0..m), modulus: m }
            }
        };
    }
    let sub = |rng: &mut _| random_periodic(rng, depth - 1);
    match rng.gen_range(0..8) {
        0 | 1 => SetExpr::Union((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect()),
        2 | 3 => SetExpr::Inter((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect()),
        4 => SetExpr::Compl(Box::new(sub(rng))),
        5 => SetExpr::ShiftDown(rng.gen_range(1..=5), Box::new(sub(rng))),
        6 => SetExpr::ShiftUp(rng.gen_range(1..=5), Box::new(sub(rng))),
        _ => {
            let k = rng.gen_range(2..=3);
            if rng.gen_bool(0.5) {
                SetExpr::Dilate(k, Box::new(sub(rng)))
            } else {
                SetExpr::Quotient(k, Box::new(sub(rng)))
            }
        }
    }
}

/// Syndetic, thick and piecewise syndetic, read off the brute-force tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Largeness {
    pub syndetic: bool,
    pub thick: bool,
    pub piecewise_syndetic: bool,
    /// Least `g` such that every length-`g` interval meets the set.
    pub gap: Option<u64>,
}

/// Scans `1..=10 (P + p)`; the last `p` positions form a full period.
pub fn brute_largeness(e: &SetExpr) -> Largeness {
    let (pp, p) = periodicity_bounds(e);
    let horizon = 10 * (pp + p);
    let bits: Vec<bool> = (1..=horizon).map(|n| brute_member(e, n)).collect();
    let tail = &bits[(horizon - p) as usize..];
    let nonempty_tail = tail.iter().any(|&b| b);
    let full_tail = tail.iter().all(|&b| b);
    let gap = nonempty_tail.then(|| {
        let mut worst = 0u64;
        let mut run = 0u64;
        for &b in &bits {
            if b {
                run = 0;
            } else {
                run += 1;
                worst = worst.max(run);
            }
        }
        worst + 1
    });
    Largeness { syndetic: nonempty_tail, thick: full_tail, piecewise_syndetic: nonempty_tail, gap }
}

/// Fibonacci word over {a, b} by concatenation `s_n = s_{n-1} s_{n-2}`.
pub fn fibonacci_prefix(len: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"a".to_vec(), b"ab".to_vec());
    while cur.len() < len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur.truncate(len);
    cur
}
