//! Symbolic sequences, return-time sets of cylinders, recurrence profiles
//! and products of cyclic rotations.
//!
//! Words are zero-indexed. A return-time set maps word index `n` to the
//! positive integer `n` ([`IndexBase::Zero`], index 0 dropped) or `n + 1`
//! ([`IndexBase::One`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::certify::{self, Certificate, Verdict};
use crate::setcalc::{ReturnSpec, SetExpr};
use crate::window::Window;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexBase {
    /// Occurrence at word index `n` is the integer `n`; index 0 is dropped.
    #[default]
    Zero,
    /// Occurrence at word index `n` is the integer `n + 1`.
    One,
}

impl IndexBase {
    /// Word index holding the occurrence reported as the integer `n >= 1`.
    pub fn word_index(self, n: u64) -> u64 {
        match self {
            IndexBase::Zero => n,
            IndexBase::One => n - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordSpec {
    /// Fixed point of `rules` starting at `seed`.
    Substitution { rules: BTreeMap<u8, Vec<u8>>, seed: u8 },
    /// Standard Sturmian word over `{a, b}` from continued-fraction terms
    /// `d_1, d_2, ...` (cycled when exhausted): `s_{-1} = b`, `s_0 = a`,
    /// `s_n = s_{n-1}^{d_n} s_{n-2}`.
    Sturmian { terms: Vec<u64> },
    Periodic { word: Vec<u8> },
}

impl WordSpec {
    /// `a -> ab, b -> a`.
    pub fn fibonacci() -> Self {
        WordSpec::Substitution { rules: BTreeMap::from([(b'a', b"ab".to_vec()), (b'b', b"a".to_vec())]), seed: b'a' }
    }

    /// `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        WordSpec::Substitution { rules: BTreeMap::from([(b'0', b"01".to_vec()), (b'1', b"10".to_vec())]), seed: b'0' }
    }

    pub fn periodic(word: &str) -> Self {
        WordSpec::Periodic { word: word.as_bytes().to_vec() }
    }

    pub fn substitution(rules: impl IntoIterator<Item = (u8, Vec<u8>)>, seed: u8) -> Result<Self> {
        let spec = WordSpec::Substitution { rules: rules.into_iter().collect(), seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WordSpec::Substitution { rules, seed } => {
                if rules.is_empty() {
                    return Err(Error::Word("substitution has no rules".into()));
                }
                for (letter, image) in rules {
                    if image.is_empty() {
                        return Err(Error::Word(format!("rule for '{}' is empty", *letter as char)));
                    }
                    if let Some(c) = image.iter().find(|c| !rules.contains_key(c)) {
                        return Err(Error::Word(format!("letter '{}' has no rule", *c as char)));
                    }
                }
                let image = rules.get(seed).ok_or_else(|| Error::Word(format!("seed '{}' has no rule", *seed as char)))?;
                if image[0] != *seed || image.len() < 2 {
                    return Err(Error::Word(format!(
                        "seed '{}' is not prolongable: its image must start with it and be longer",
                        *seed as char
                    )));
                }
                Ok(())
            }
            WordSpec::Sturmian { terms } => {
                if terms.is_empty() || terms.contains(&0) {
                    return Err(Error::Word("Sturmian terms must be nonempty and positive".into()));
                }
                Ok(())
            }
            WordSpec::Periodic { word } => {
                if word.is_empty() {
                    return Err(Error::Word("periodic word is empty".into()));
                }
                Ok(())
            }
        }
    }

    pub fn alphabet(&self) -> Vec<u8> {
        match self {
            WordSpec::Substitution { rules, .. } => rules.keys().copied().collect(),
            WordSpec::Sturmian { .. } => vec![b'a', b'b'],
            WordSpec::Periodic { word } => {
                let mut a = word.clone();
                a.sort_unstable();
                a.dedup();
                a
            }
        }
    }

    /// Letter at zero-based index `n`, computed without expanding the prefix.
    pub fn letter_at(&self, n: u64) -> Result<u8> {
        self.validate()?;
        match self {
            WordSpec::Periodic { word } => Ok(word[(n % word.len() as u64) as usize]),
            WordSpec::Substitution { rules, seed } => {
                // lengths[k][letter] = |sigma^k(letter)|
                let mut lengths: Vec<HashMap<u8, u64>> = vec![rules.keys().map(|&c| (c, 1)).collect()];
                while lengths.last().unwrap()[seed] <= n {
                    let prev = lengths.last().unwrap();
                    let next = rules
                        .iter()
                        .map(|(&c, img)| (c, img.iter().fold(0u64, |acc, x| acc.saturating_add(prev[x]))))
                        .collect();
                    lengths.push(next);
                }
                let mut letter = *seed;
                let mut pos = n;
                for level in (0..lengths.len() - 1).rev() {
                    for &c in &rules[&letter] {
                        let l = lengths[level][&c];
                        if pos < l {
                            letter = c;
                            break;
                        }
                        pos -= l;
                    }
                }
                Ok(letter)
            }
            WordSpec::Sturmian { terms } => {
                // lens[k + 1] = |s_k|, lens[0] = |s_{-1}|
                let term = |k: usize| terms[(k - 1) % terms.len()];
                let mut lens: Vec<u64> = vec![1, 1];
                while *lens.last().unwrap() <= n {
                    let k = lens.len() - 1;
                    let next = term(k).saturating_mul(lens[k]).saturating_add(lens[k - 1]);
                    lens.push(next);
                }
                let mut k = lens.len() - 2; // s_k with |s_k| > n
                let mut pos = n;
                while k >= 1 {
                    let head = term(k).saturating_mul(lens[k]);
                    if pos < head {
                        pos %= lens[k];
                        k -= 1;
                    } else {
                        pos -= head;
                        if k == 1 {
                            return Ok(b'b');
                        }
                        k -= 2;
                    }
                }
                Ok(b'a')
            }
        }
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::dsl::write_word(f, self)
    }
}

/// Materialized finite prefix of a [`WordSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn occurrences<'a>(&'a self, pattern: &'a [u8]) -> impl Iterator<Item = usize> + 'a {
        let n = pattern.len();
        (0..(self.0.len() + 1).saturating_sub(n).min(self.0.len())).filter(move |&i| &self.0[i..i + n] == pattern)
    }

    pub fn contains_factor(&self, pattern: &[u8]) -> bool {
        self.occurrences(pattern).next().is_some()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

pub fn expand(word: &WordSpec, length: usize) -> Result<Word> {
    if length == 0 {
        return Err(Error::input("expansion length must be >= 1"));
    }
    word.validate()?;
    let out = match word {
        WordSpec::Periodic { word } => word.iter().copied().cycle().take(length).collect(),
        WordSpec::Substitution { rules, seed } => {
            let mut w = vec![*seed];
            while w.len() < length {
                let mut next = Vec::with_capacity((w.len() * 2).min(length));
                for c in &w {
                    next.extend_from_slice(&rules[c]);
                    if next.len() >= length {
                        break;
                    }
                }
                w = next;
            }
            w.truncate(length);
            w
        }
        WordSpec::Sturmian { terms } => {
            let mut older = b"b".to_vec();
            let mut newer = b"a".to_vec();
            let mut k = 1usize;
            while newer.len() < length {
                let d = terms[(k - 1) % terms.len()];
                let mut next = Vec::new();
                for _ in 0..d {
                    next.extend_from_slice(&newer);
                    if next.len() >= length {
                        break;
                    }
                }
                if next.len() < length {
                    next.extend_from_slice(&older);
                }
                older = std::mem::replace(&mut newer, next);
                k += 1;
            }
            newer.truncate(length);
            newer
        }
    };
    Ok(Word(out))
}

/// Return-time set of the cylinder `[pattern]` along the orbit of the word,
/// with its window on `1..=length`.
pub fn return_set(word: &WordSpec, pattern: &str, length: usize, base: IndexBase) -> Result<(SetExpr, Window)> {
    let pattern = pattern.as_bytes().to_vec();
    if pattern.is_empty() {
        return Err(Error::input("pattern is empty"));
    }
    if pattern.len() > length {
        return Err(Error::input(format!("pattern of length {} longer than prefix {length}", pattern.len())));
    }
    let alphabet = word.alphabet();
    if let Some(c) = pattern.iter().find(|c| !alphabet.contains(c)) {
        return Err(Error::input(format!("pattern letter '{}' not in the word's alphabet", *c as char)));
    }
    let expr = SetExpr::Return(ReturnSpec { word: word.clone(), pattern, base });
    let window = crate::setcalc::window(&expr, length)?;
    Ok((expr, window))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceProfile {
    pub prefix_len: usize,
    /// `w[n - 1] = W(n)`.
    pub w: Vec<u64>,
    /// Factors seen exactly once in the prefix.
    pub non_recurrent: Vec<String>,
    /// Per-factor window bound, keyed by factor length.
    pub per_factor: BTreeMap<usize, BTreeMap<String, u64>>,
}

impl RecurrenceProfile {
    pub fn get(&self, n: usize) -> Option<u64> {
        self.w.get(n.checked_sub(1)?).copied()
    }

    pub fn is_monotone(&self) -> bool {
        self.w.windows(2).all(|p| p[0] <= p[1])
    }
}

/// Least window length `W(n)` such that every length-`n` factor of the
/// prefix occurs inside every length-`W(n)` window of the prefix.
pub fn uniform_recurrence_profile(word: &WordSpec, n_max: usize, prefix_len: usize) -> Result<RecurrenceProfile> {
    if n_max == 0 {
        return Err(Error::input("n_max must be >= 1"));
    }
    if prefix_len < 20 * n_max {
        return Err(Error::input(format!("prefix {prefix_len} too short for n_max {n_max} (need >= 20 * n_max)")));
    }
    let w = expand(word, prefix_len)?;
    profile_of(&w, n_max)
}

pub(crate) fn profile_of(w: &Word, n_max: usize) -> Result<RecurrenceProfile> {
    let len = w.len() as u64;
    let mut out = RecurrenceProfile { prefix_len: w.len(), w: Vec::new(), non_recurrent: Vec::new(), per_factor: BTreeMap::new() };
    for n in 1..=n_max {
        let mut occ: BTreeMap<&[u8], Vec<u64>> = BTreeMap::new();
        for i in 0..=(w.len() - n) {
            occ.entry(&w.0[i..i + n]).or_default().push(i as u64);
        }
        let mut per = BTreeMap::new();
        let mut worst = n as u64;
        for (factor, pos) in &occ {
            let n64 = n as u64;
            let mut bound = pos[0] + n64;
            for p in pos.windows(2) {
                bound = bound.max(p[1] - p[0] - 1 + n64);
            }
            bound = bound.max(len - pos[pos.len() - 1]);
            if pos.len() == 1 {
                out.non_recurrent.push(String::from_utf8_lossy(factor).into_owned());
            }
            worst = worst.max(bound);
            per.insert(String::from_utf8_lossy(factor).into_owned(), bound);
        }
        out.w.push(worst);
        out.per_factor.insert(n, per);
    }
    Ok(out)
}

/// Rotation by one on `Z_m` started at `start`, observed on the target set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSystem {
    pub modulus: u64,
    pub start: u64,
    pub targets: Vec<u64>,
}

impl CyclicSystem {
    pub fn new(modulus: u64, start: u64, targets: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::input("cyclic modulus must be >= 1"));
        }
        let mut targets: Vec<u64> = targets.into_iter().map(|t| t % modulus).collect();
        targets.sort_unstable();
        targets.dedup();
        if targets.is_empty() {
            return Err(Error::input("cyclic target set is empty"));
        }
        Ok(CyclicSystem { modulus, start: start % modulus, targets })
    }

    /// `{n : start + n in targets (mod m)}` as a union of residue classes.
    pub fn return_expr(&self) -> SetExpr {
        let m = self.modulus;
        SetExpr::Union(
            self.targets
                .iter()
                .map(|&u| SetExpr::Residue { residue: (u + m - self.start) % m, modulus: m })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointReturn {
    pub expr: SetExpr,
    pub window: Window,
    /// Realized gap on the window (leading, internal and trailing).
    pub gap: u64,
    /// Gap of the exact periodic form.
    pub exact_gap: u64,
}

/// Joint return times `{n : start_i + n in U_i (mod m_i) for all i}`.
pub fn joint_return(systems: &[CyclicSystem], length: usize) -> Result<JointReturn> {
    if systems.is_empty() {
        return Err(Error::input("joint_return needs at least one system"));
    }
    let expr = SetExpr::Inter(systems.iter().map(CyclicSystem::return_expr).collect());
    let window = crate::setcalc::window(&expr, length)?;
    let verdict = certify::syndetic_gap(&expr, length as u64)?;
    let exact_gap = match verdict {
        Verdict::Certified(Certificate::Syndetic { gap, .. }) => gap,
        _ => {
            return Err(Error::NotFound(format!(
                "joint return time: empty joint return set for moduli {:?}",
                systems.iter().map(|s| s.modulus).collect::<Vec<_>>()
            )))
        }
    };
    let gap = window
        .max_gap()
        .ok_or_else(|| Error::NotFound(format!("joint return time: no return in 1..={length}")))?;
    let coprime = systems.iter().enumerate().all(|(i, a)| systems[i + 1..].iter().all(|b| a.modulus.gcd(&b.modulus) == 1));
    if coprime && systems.iter().all(|s| s.targets.len() == 1) {
        let lcm: u64 = systems.iter().map(|s| s.modulus).product();
        if exact_gap != lcm {
            return Err(Error::input(format!("coprime singleton targets gave gap {exact_gap}, expected {lcm}")));
        }
    }
    Ok(JointReturn { expr, window, gap, exact_gap })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynThickSet {
    pub expr: SetExpr,
    /// Hypotheses the construction relies on but cannot check.
    pub assumptions: Vec<String>,
}

/// `union_i (returns_i & thick_i)`. The thick parts are passed as set
/// expressions so that `Full` is admissible.
pub fn dyn_thick_from_returns(returns: &[SetExpr], thick_parts: &[SetExpr]) -> Result<DynThickSet> {
    if returns.len() != thick_parts.len() {
        return Err(Error::input(format!(
            "{} return sets but {} thick parts",
            returns.len(),
            thick_parts.len()
        )));
    }
    let branches: Vec<SetExpr> = returns
        .iter()
        .zip(thick_parts)
        .map(|(r, h)| match h {
            SetExpr::Full => r.clone(),
            _ => SetExpr::Inter(vec![r.clone(), h.clone()]),
        })
        .collect();
    let expr = match branches.len() {
        0 => SetExpr::Empty,
        1 => branches.into_iter().next().unwrap(),
        _ => SetExpr::Union(branches),
    };
    Ok(DynThickSet {
        expr,
        assumptions: vec!["the underlying minimal systems form a disjoint collection (user-asserted)".into()],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Certified { factors_checked: usize },
    Violation { factor: String },
}

/// Checks that every length-`n` factor of the prefix begins with one of the patterns.
pub fn cylinder_cover_check(word: &WordSpec, patterns: &[&str], n: usize, prefix_len: usize) -> Result<CoverVerdict> {
    let longest = patterns.iter().map(|p| p.len()).max().unwrap_or(0);
    if n < longest {
        return Err(Error::input(format!("factor length {n} shorter than longest pattern {longest}")));
    }
    if n == 0 || n > prefix_len {
        return Err(Error::input("factor length must be in 1..=prefix length"));
    }
    let w = expand(word, prefix_len)?;
    let mut seen = std::collections::HashSet::new();
    for i in 0..=(w.len() - n) {
        let f = &w.0[i..i + n];
        if !seen.insert(f) {
            continue;
        }
        if !patterns.iter().any(|p| f.starts_with(p.as_bytes())) {
            return Ok(CoverVerdict::Violation { factor: String::from_utf8_lossy(f).into_owned() });
        }
    }
    Ok(CoverVerdict::Certified { factors_checked: seen.len() })
}
