//! Finite membership tables over `{1, ..., N}`.
//!
//! A [`Window`] stores one bit per positive integer; bit `i` (zero-based)
//! records membership of the integer `i + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Closed interval `[lo, hi]` of positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Window {
    len: usize,
    words: Vec<u64>,
}

impl Window {
    pub fn empty(len: usize) -> Self {
        Window { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn full(len: usize) -> Self {
        let mut w = Window { len, words: vec![u64::MAX; len.div_ceil(WORD)] };
        w.mask_tail();
        w
    }

    pub fn from_members(len: usize, members: impl IntoIterator<Item = u64>) -> Self {
        let mut w = Window::empty(len);
        for n in members {
            if n >= 1 && n as usize <= len {
                w.insert(n);
            }
        }
        w
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(u64) -> bool) -> Self {
        let mut w = Window::empty(len);
        for n in 1..=len as u64 {
            if f(n) {
                w.insert(n);
            }
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Membership of the integer `n`; integers outside `1..=len` are absent.
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 || n as usize > self.len {
            return false;
        }
        let i = (n - 1) as usize;
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, n: u64) {
        assert!(n >= 1 && n as usize <= self.len, "{n} outside window 1..={}", self.len);
        let i = (n - 1) as usize;
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, n: u64) {
        if n >= 1 && n as usize <= self.len {
            let i = (n - 1) as usize;
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn insert_interval(&mut self, iv: Interval) {
        let hi = iv.hi.min(self.len as u64);
        for n in iv.lo.max(1)..=hi {
            self.insert(n);
        }
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn union_with(&mut self, other: &Window) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Window) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &Window) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&mut self) {
        for a in self.words.iter_mut() {
            *a = !*a;
        }
        self.mask_tail();
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Window) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// The integers `start, start+1, ..., start+len-1` re-indexed to `1..=len`.
    /// Positions past the end of `self` read as absent.
    pub fn segment(&self, start: u64, len: usize) -> Window {
        assert!(start >= 1);
        let mut out = Window::empty(len);
        let offset = (start - 1) as usize;
        for (w, slot) in out.words.iter_mut().enumerate() {
            let bit = offset + w * WORD;
            let wi = bit / WORD;
            let sh = bit % WORD;
            let lo = self.words.get(wi).copied().unwrap_or(0);
            let mut v = lo >> sh;
            if sh > 0 {
                let hi = self.words.get(wi + 1).copied().unwrap_or(0);
                v |= hi << (WORD - sh);
            }
            *slot = v;
        }
        // bits beyond self.len are already zero in the source
        out.mask_tail();
        out
    }

    /// Same table, truncated or zero-extended to `len`.
    pub fn resized(&self, len: usize) -> Window {
        self.segment(1, len)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn members(&self) -> Members<'_> {
        Members { window: self, word: 0, bits: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first(&self) -> Option<u64> {
        self.members().next()
    }

    /// Maximal runs of consecutive members, left to right.
    pub fn runs(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = Vec::new();
        for n in self.members() {
            match out.last_mut() {
                Some(iv) if iv.hi + 1 == n => iv.hi = n,
                _ => out.push(Interval::new(n, n)),
            }
        }
        out
    }

    /// Least `g` such that every length-`g` interval inside `1..=len` meets the set.
    /// `None` for an empty window.
    pub fn max_gap(&self) -> Option<u64> {
        let mut prev = 0u64;
        let mut gap = 0u64;
        let mut any = false;
        for n in self.members() {
            gap = gap.max(n - prev);
            prev = n;
            any = true;
        }
        if !any {
            return None;
        }
        Some(gap.max(self.len as u64 + 1 - prev))
    }

    pub fn to_bit_string(&self) -> String {
        (1..=self.len as u64).map(|n| if self.contains(n) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 128 {
            write!(f, "Window({})", self.to_bit_string())
        } else {
            write!(f, "Window(len={}, count={})", self.len, self.count())
        }
    }
}

pub struct Members<'a> {
    window: &'a Window,
    word: usize,
    bits: u64,
}

impl Iterator for Members<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some((self.word * WORD + tz) as u64 + 1);
            }
            self.word += 1;
            self.bits = *self.window.words.get(self.word)?;
        }
    }
}
