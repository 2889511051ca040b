mod common;

use std::collections::BTreeSet;

use common::{brute_member, brute_schedule_member};
use lsc::certify::{self, Certificate, SearchConfig, Verdict};
use lsc::constructions::{self, FsExtractor, IntervalExtractor, PrimeResidueParams};
use lsc::setcalc::{self, eventually_periodic_normalize};
use lsc::symbolic::{self, IndexBase, WordSpec};
use lsc::{dsl, Interval, ScheduleSpec, SetExpr, Window};
use proptest::prelude::*;

fn periodic_leaf() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        Just(SetExpr::Empty),
        Just(SetExpr::Full),
        prop::collection::btree_set(1u64..=40, 0..4).prop_map(|s| SetExpr::Finite(s.into_iter().collect())),
        (1u64..=12).prop_flat_map(|m| (0..m, Just(m))).prop_map(|(r, m)| SetExpr::Residue { residue: r, modulus: m }),
    ]
}

fn geometric() -> impl Strategy<Value = ScheduleSpec> {
    (2u64..=4, 2u64..=20).prop_map(|(b, c)| ScheduleSpec::geometric(b, c))
}

fn mixed_leaf() -> impl Strategy<Value = SetExpr> {
    prop_oneof![3 => periodic_leaf(), 1 => geometric().prop_map(SetExpr::Thick)]
}

fn grow(leaf: BoxedStrategy<SetExpr>) -> impl Strategy<Value = SetExpr> {
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(SetExpr::Union),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(SetExpr::Inter),
            inner.clone().prop_map(|a| SetExpr::Compl(Box::new(a))),
            (1u64..=5, inner.clone()).prop_map(|(k, a)| SetExpr::ShiftDown(k, Box::new(a))),
            (1u64..=5, inner.clone()).prop_map(|(k, a)| SetExpr::ShiftUp(k, Box::new(a))),
            (2u64..=3, inner.clone()).prop_map(|(k, a)| SetExpr::Dilate(k, Box::new(a))),
            (2u64..=3, inner).prop_map(|(k, a)| SetExpr::Quotient(k, Box::new(a))),
        ]
    })
}

fn periodic_expr() -> impl Strategy<Value = SetExpr> {
    grow(periodic_leaf().boxed())
}

fn mixed_expr() -> impl Strategy<Value = SetExpr> {
    grow(mixed_leaf().boxed())
}

fn small_residue() -> impl Strategy<Value = SetExpr> {
    (1u64..=4).prop_flat_map(|m| (0..m, Just(m))).prop_map(|(r, m)| SetExpr::Residue { residue: r, modulus: m })
}

fn word_spec() -> impl Strategy<Value = WordSpec> {
    prop_oneof![
        Just(WordSpec::fibonacci()),
        Just(WordSpec::thue_morse()),
        "[ab]{1,5}".prop_map(|w| WordSpec::periodic(&w)),
        prop::collection::vec(1u64..=3, 1..=3).prop_map(|terms| WordSpec::Sturmian { terms }),
    ]
}

fn win(e: &SetExpr, n: usize) -> Window {
    setcalc::window(e, n).unwrap()
}

fn mem(e: &SetExpr, n: u64) -> bool {
    setcalc::member(e, n).unwrap()
}

/// Least `g` such that every length-`g` interval of `1..=len` meets `bits`,
/// counting the leading and trailing runs; `None` if `bits` is empty.
fn brute_gap(len: u64, f: impl Fn(u64) -> bool) -> Option<u64> {
    let mut worst = 0;
    let mut run = 0;
    let mut any = false;
    for n in 1..=len {
        if f(n) {
            any = true;
            run = 0;
        } else {
            run += 1;
            worst = worst.max(run);
        }
    }
    any.then_some(worst + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn window_agrees_with_member(e in mixed_expr(), n in 1usize..400) {
        let w = win(&e, n);
        prop_assert_eq!(w.len(), n);
        for i in 1..=n as u64 {
            prop_assert_eq!(w.contains(i), mem(&e, i), "at {}", i);
        }
    }

    #[test]
    fn member_agrees_with_definitions(e in mixed_expr()) {
        for n in 1..=300 {
            prop_assert_eq!(mem(&e, n), brute_member(&e, n), "at {}", n);
        }
    }

    #[test]
    fn operator_identities(a in mixed_expr(), k in 1u64..=6, m in 1u64..=200) {
        let down = SetExpr::ShiftDown(k, Box::new(a.clone()));
        prop_assert_eq!(mem(&down, m), mem(&a, m + k));
        let dil = SetExpr::Dilate(k, Box::new(a.clone()));
        prop_assert_eq!(mem(&dil, m), m % k == 0 && mem(&a, m / k));
        let quo = SetExpr::Quotient(k, Box::new(a.clone()));
        prop_assert_eq!(mem(&quo, m), mem(&a, k * m));
    }

    #[test]
    fn de_morgan(a in mixed_expr(), b in mixed_expr(), n in 1usize..300) {
        let lhs = SetExpr::Compl(Box::new(SetExpr::Union(vec![a.clone(), b.clone()])));
        let rhs = SetExpr::Inter(vec![SetExpr::Compl(Box::new(a)), SetExpr::Compl(Box::new(b))]);
        prop_assert_eq!(win(&lhs, n), win(&rhs, n));
    }

    #[test]
    fn round_trips(a in mixed_expr(), k in 1u64..=5, n in 1usize..300) {
        let qd = SetExpr::Quotient(k, Box::new(SetExpr::Dilate(k, Box::new(a.clone()))));
        prop_assert_eq!(win(&qd, n), win(&a, n));
        let du = SetExpr::ShiftDown(k, Box::new(SetExpr::ShiftUp(k, Box::new(a.clone()))));
        prop_assert_eq!(win(&du, n), win(&a, n));
    }

    #[test]
    fn normal_form_agrees_with_member(e in periodic_expr()) {
        let f = eventually_periodic_normalize(&e);
        prop_assert!(f.is_some(), "periodic expression not normalized: {}", e);
        let f = f.unwrap();
        for n in 1..=f.preperiod + 3 * f.period {
            prop_assert_eq!(f.member(n), brute_member(&e, n), "at {}", n);
        }
    }

    #[test]
    fn certified_verdicts_revalidate(e in mixed_expr()) {
        let verdicts = [
            certify::syndetic_gap(&e, 600).unwrap(),
            certify::thick_to_level(&e, 4, 3000).unwrap(),
            certify::piecewise_syndetic(&e, 3, 4, 3000).unwrap(),
            certify::ip_witness(&e, 3, 200).unwrap(),
        ];
        for v in verdicts {
            if let Verdict::Certified(c) = &v {
                prop_assert!(c.revalidate(&e).unwrap(), "{} does not revalidate", c);
            }
        }
    }

    #[test]
    fn syndetic_certificate_matches_brute_gap(e in mixed_expr(), len in 50u64..600) {
        if let Verdict::Certified(Certificate::Syndetic { gap, exact: false, checked_window }) = certify::syndetic_gap(&e, len).unwrap() {
            prop_assert_eq!(checked_window, len);
            prop_assert_eq!(Some(gap), brute_gap(len, |n| brute_member(&e, n)));
        }
    }

    #[test]
    fn duality_on_a_common_window(s in periodic_expr(), extra in periodic_expr(), g in geometric()) {
        const W: u64 = 4000;
        let h = SetExpr::Union(vec![SetExpr::Thick(g), extra]);
        if let Verdict::Certified(Certificate::Syndetic { gap, .. }) = certify::syndetic_gap(&s, W).unwrap() {
            if certify::thick_to_level(&h, gap + 1, W).unwrap().is_certified() {
                let both = SetExpr::Inter(vec![s, h]);
                prop_assert!(win(&both, W as usize).count() > 0);
            }
        }
    }

    #[test]
    fn thick_levels_are_monotone(e in mixed_expr()) {
        let certified: Vec<bool> = (1..=5).map(|l| certify::thick_to_level(&e, l, 3000).unwrap().is_certified()).collect();
        for l in 1..certified.len() {
            prop_assert!(!certified[l] || certified[l - 1], "level {} certified but {} not", l + 1, l);
        }
    }

    #[test]
    fn ip_generators_restrict_to_prefixes(e in mixed_expr()) {
        if let Verdict::Certified(Certificate::Ip { generators }) = certify::ip_witness(&e, 3, 300).unwrap() {
            prop_assert_eq!(generators.len(), 3);
            for d in 1..3 {
                let prefix = Certificate::Ip { generators: generators[..d].to_vec() };
                prop_assert!(prefix.revalidate(&e).unwrap());
                prop_assert!(certify::ip_witness(&e, d as u64, 300).unwrap().is_certified());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dt_check_is_sound(a in periodic_expr(), s in small_residue()) {
        let r = certify::dt_check(&a, &s, 30, 3, 600).unwrap();
        if let Some(f) = &r.f {
            prop_assert!(!f.is_empty());
            for &x in f {
                prop_assert!((1..=30).contains(&x) && brute_member(&a, x));
            }
            let Verdict::Certified(Certificate::Thick(cert)) = &r.verdict else {
                return Err(TestCaseError::fail(format!("F found but verdict {:?}", r.verdict)));
            };
            prop_assert!(cert.validate_on(r.subject.as_ref().unwrap()).unwrap());
            for iv in &cert.witnesses {
                for n in iv.lo..=iv.hi {
                    prop_assert!(f.iter().any(|&x| brute_member(&s, n + x)), "{} not in S - F", n);
                }
            }
        } else {
            prop_assert!(!r.verdict.is_certified());
        }
    }

    #[test]
    fn parallel_search_matches_sequential(a in periodic_expr(), s in small_residue(), t in mixed_expr()) {
        let seq = SearchConfig { budget: 200_000, parallel: false };
        let par = SearchConfig { budget: 200_000, parallel: true };
        prop_assert_eq!(
            certify::dt_check_with(&a, &s, 20, 3, 400, &seq).unwrap(),
            certify::dt_check_with(&a, &s, 20, 3, 400, &par).unwrap()
        );
        prop_assert_eq!(
            certify::pr_check_with(&a, &s, 12, 300, None, &seq).unwrap(),
            certify::pr_check_with(&a, &s, 12, 300, None, &par).unwrap()
        );
        prop_assert_eq!(
            certify::ip_witness_with(&t, 3, 200, &seq).unwrap(),
            certify::ip_witness_with(&t, 3, 200, &par).unwrap()
        );
    }

    #[test]
    fn pr_is_the_literal_window_statement(
        base in small_residue(),
        rest in mixed_expr(),
        picks in prop::collection::btree_set(1u64..=20, 1..4),
        len in 50u64..400,
    ) {
        // pr requires S syndetic on the window
        let s = SetExpr::Union(vec![base, rest]);
        let f: Vec<u64> = picks.into_iter().collect();
        let a = SetExpr::Full;
        let threshold = len.div_ceil(10);
        let gap = brute_gap(len, |n| brute_member(&s, n) && !f.iter().any(|&x| brute_member(&s, n + x)))
            .unwrap_or(len + 1);
        let v = certify::pr_validate(&a, &s, &f, len, None).unwrap();
        prop_assert_eq!(v.is_certified(), gap > threshold);
        if let Verdict::Certified(Certificate::SparseWindow { gap: g, threshold: t, window }) = v {
            prop_assert_eq!((g, t, window), (gap, threshold, len));
        }
    }

    #[test]
    fn prime_union_branches_are_sound(
        idx in prop::collection::btree_set(0usize..5, 1..=3),
        seeds in prop::collection::vec(1i64..100, 3),
    ) {
        const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
        let primes: Vec<u64> = idx.iter().map(|&i| PRIMES[i]).collect();
        let residues: Vec<i64> = primes.iter().zip(&seeds).map(|(&p, &c)| 1 + c % (p as i64 - 1)).collect();
        let params = PrimeResidueParams::separated(primes.clone(), residues).unwrap();
        let union = constructions::prime_residue_union(&params, primes.len()).unwrap();
        let w = win(&union, 20_000);
        let mut covered = BTreeSet::new();
        for (i, &p) in primes.iter().enumerate() {
            let branch = SetExpr::Inter(vec![
                SetExpr::Residue { residue: params.residues[i], modulus: p },
                SetExpr::Thick(params.schedules[i].clone()),
            ]);
            for n in win(&branch, 20_000).members() {
                prop_assert_eq!(n % p, params.residues[i]);
                prop_assert!(brute_schedule_member(&params.schedules[i], n));
                covered.insert(n);
            }
        }
        prop_assert_eq!(w.members().collect::<BTreeSet<_>>(), covered);
    }

    #[test]
    fn crt_witness_is_least_and_bounded(
        idx in prop::collection::btree_set(0usize..8, 1..=4),
        residues in prop::collection::vec(-50i64..50, 4),
    ) {
        const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
        let primes: Vec<u64> = idx.iter().map(|&i| PRIMES[i]).collect();
        let residues = &residues[..primes.len()];
        let n = constructions::crt_cover_witness(&primes, residues).unwrap();
        let ok = |m: u64| primes.iter().zip(residues).enumerate()
            .all(|(i, (&p, &a))| (m + i as u64 + 1) % p == a.rem_euclid(p as i64) as u64);
        prop_assert!(ok(n));
        prop_assert!(n <= primes.iter().product::<u64>());
        prop_assert!((1..n).all(|m| !ok(m)));
    }

    #[test]
    fn split_thick_partitions_and_recertifies(g in geometric()) {
        let r = constructions::split_thick(&g, 3, 20_000, 20_000).unwrap();
        prop_assert!(r.is_partition());
        prop_assert!(r.cert1.is_certified() && r.cert2.is_certified());
        let whole = win(&SetExpr::Thick(g), 20_000);
        let (w1, w2) = (win(&r.a1, 20_000), win(&r.a2, 20_000));
        prop_assert!(w1.is_disjoint(&w2));
        let mut u = w1;
        u.union_with(&w2);
        prop_assert_eq!(u, whole);
    }

    #[test]
    fn filtration_split_partitions(extra in periodic_expr(), g in geometric(), fs in any::<bool>()) {
        let a = SetExpr::Union(vec![SetExpr::Thick(g), extra]);
        let r = if fs {
            constructions::split_by_filtration(&a, &FsExtractor, 3, 1500)
        } else {
            constructions::split_by_filtration(&a, &IntervalExtractor, 4, 1500)
        };
        let Ok(r) = r else { return Ok(()) };
        prop_assert!(r.is_partition());
        for n in 1..=1500 {
            let (x, y) = (mem(&r.a1, n), mem(&r.a2, n));
            prop_assert!(!(x && y), "{} in both parts", n);
            prop_assert_eq!(x || y, brute_member(&a, n), "at {}", n);
        }
    }

    #[test]
    fn structure_decomposition_reconstructs(extra in periodic_expr(), g in geometric(), s in small_residue()) {
        const N: u64 = 3000;
        let a = SetExpr::Union(vec![SetExpr::Thick(g), extra]);
        let Ok(d) = constructions::structure_decompose(&a, &s, N, 3, None) else { return Ok(()) };
        let gs = SetExpr::Thick(d.g_s.clone());
        let inside = |x: &SetExpr| win(&SetExpr::Inter(vec![x.clone(), gs.clone()]), N as usize);
        prop_assert_eq!(inside(&d.b_s), inside(&a));
        let outside = SetExpr::Compl(Box::new(gs.clone()));
        prop_assert_eq!(
            win(&SetExpr::Inter(vec![d.b_s.clone(), outside.clone()]), N as usize),
            win(&outside, N as usize)
        );
        for iv in &d.intervals {
            prop_assert!(iv.len() >= d.ell);
            for lo in iv.lo..=iv.hi + 1 - d.ell {
                prop_assert!(
                    (lo..lo + d.ell).any(|n| brute_member(&a, n) && brute_member(&s, n)),
                    "[{}, {}) misses A & S", lo, lo + d.ell
                );
            }
        }
    }

    #[test]
    fn separation_holds_and_is_monotone(rows in 1u64..=3, cols in 1u64..=3, factor in 1u64..=10) {
        const LIMIT: u64 = 4000;
        let fam = constructions::separated_thick_family(rows, cols, factor).unwrap();
        let reports = fam.separation(3, LIMIT);
        // brute realized separation: label every integer by its block
        let mut last: Vec<((u64, u64), u64)> = Vec::new();
        let mut best = [None::<u64>; 4];
        let mut n = 1;
        while n <= LIMIT {
            if let Some((&b, _)) = fam.schedules.iter().find(|(_, s)| brute_schedule_member(s, n)) {
                let run_start = last.iter().all(|&(bb, m)| bb != b || m + 1 != n);
                if run_start {
                    for &(bb, m) in &last {
                        if bb != b {
                            let top = b.0.max(b.1).max(bb.0.max(bb.1));
                            for slot in best.iter_mut().take(top.min(4) as usize) {
                                *slot = Some(slot.map_or(n - m, |x| x.min(n - m)));
                            }
                        }
                    }
                }
                last.retain(|&(bb, _)| bb != b);
                last.push((b, n));
            }
            n += 1;
        }
        for r in &reports {
            prop_assert!(r.holds(), "{:?}", r);
            prop_assert_eq!(r.realized, best[r.d as usize], "d = {}", r.d);
        }
        for w in reports.windows(2) {
            prop_assert!(w[0].required <= w[1].required);
            if let (Some(x), Some(y)) = (w[0].realized, w[1].realized) {
                prop_assert!(x <= y);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansion_is_prefix_stable(w in word_spec(), n in 1usize..800, extra in 0usize..800) {
        let short = symbolic::expand(&w, n).unwrap();
        let long = symbolic::expand(&w, n + extra).unwrap();
        prop_assert_eq!(short.as_bytes(), &long.as_bytes()[..n]);
        for i in (0..n).step_by(37) {
            prop_assert_eq!(w.letter_at(i as u64).unwrap(), short.as_bytes()[i]);
        }
    }

    #[test]
    fn return_set_matches_occurrences(w in word_spec(), at in 0usize..50, plen in 1usize..=3, one in any::<bool>()) {
        const LEN: usize = 600;
        let prefix = symbolic::expand(&w, LEN + 8).unwrap();
        let pat = String::from_utf8(prefix.0[at..at + plen].to_vec()).unwrap();
        let base = if one { IndexBase::One } else { IndexBase::Zero };
        let (_, window) = symbolic::return_set(&w, &pat, LEN, base).unwrap();
        for n in 1..=(LEN - plen) as u64 {
            let i = base.word_index(n) as usize;
            let hit = &prefix.as_bytes()[i..i + plen] == pat.as_bytes();
            prop_assert_eq!(window.contains(n), hit, "n = {}", n);
        }
    }

    #[test]
    fn recurrence_profile_is_monotone(w in word_spec(), n_max in 1usize..=4, scale in 20usize..=40) {
        let len = scale * n_max;
        let p = symbolic::uniform_recurrence_profile(&w, n_max, len).unwrap();
        prop_assert!(p.is_monotone());
        let bytes = symbolic::expand(&w, len).unwrap().0;
        for n in 1..=n_max {
            let wn = p.get(n).unwrap();
            prop_assert!(wn >= n as u64);
            // brute: least window length containing every length-n factor
            let factors: BTreeSet<&[u8]> = bytes.windows(n).collect();
            let brute = (n..=len).find(|&l| bytes.windows(l).all(|win| factors.iter().all(|f| win.windows(n).any(|g| g == *f))));
            prop_assert_eq!(Some(wn), brute.map(|l| l as u64), "n = {}", n);
        }
        let longer = symbolic::uniform_recurrence_profile(&w, n_max, 2 * len).unwrap();
        for n in 1..=n_max {
            prop_assert!(longer.get(n) >= p.get(n));
        }
    }

    #[test]
    fn window_ops_match_btreeset(
        len in 1usize..300,
        a in prop::collection::btree_set(1u64..300, 0..80),
        b in prop::collection::btree_set(1u64..300, 0..80),
        start in 1u64..300,
        seg in 1usize..200,
    ) {
        let a: BTreeSet<u64> = a.into_iter().filter(|&x| x <= len as u64).collect();
        let b: BTreeSet<u64> = b.into_iter().filter(|&x| x <= len as u64).collect();
        let wa = Window::from_members(len, a.iter().copied());
        let wb = Window::from_members(len, b.iter().copied());
        let set = |w: &Window| w.members().collect::<BTreeSet<u64>>();
        prop_assert_eq!(set(&wa), a.clone());
        prop_assert_eq!(wa.count(), a.len());
        let mut u = wa.clone();
        u.union_with(&wb);
        prop_assert_eq!(set(&u), &a | &b);
        let mut i = wa.clone();
        i.intersect_with(&wb);
        prop_assert_eq!(set(&i), &a & &b);
        let mut d = wa.clone();
        d.subtract(&wb);
        prop_assert_eq!(set(&d), &a - &b);
        let mut c = wa.clone();
        c.complement();
        prop_assert_eq!(set(&c), (1..=len as u64).filter(|x| !a.contains(x)).collect::<BTreeSet<_>>());
        prop_assert_eq!(wa.is_subset(&wb), a.is_subset(&b));
        prop_assert_eq!(wa.is_disjoint(&wb), a.is_disjoint(&b));
        prop_assert_eq!(wa.first(), a.first().copied());
        prop_assert_eq!(wa.max_gap(), brute_gap(len as u64, |n| a.contains(&n)));
        let s = wa.segment(start, seg);
        prop_assert_eq!(set(&s), a.iter().filter(|&&x| x >= start && x < start + seg as u64).map(|x| x - start + 1).collect::<BTreeSet<_>>());
        let runs: Vec<Interval> = wa.runs();
        let from_runs: BTreeSet<u64> = runs.iter().flat_map(|r| r.lo..=r.hi).collect();
        prop_assert_eq!(from_runs, a.clone());
        for r in runs.windows(2) {
            prop_assert!(r[0].hi + 1 < r[1].lo);
        }
    }

    #[test]
    fn difference_window_matches_brute(s in mixed_expr(), t in mixed_expr(), len in 1usize..120) {
        let w = setcalc::difference_set_window(&s, &t, len).unwrap();
        for n in 1..=len as u64 {
            let brute = (1..=2 * len as u64).any(|x| brute_member(&t, x) && brute_member(&s, n + x));
            prop_assert_eq!(w.contains(n), brute, "n = {}", n);
        }
    }
}

fn dsl_expr() -> impl Strategy<Value = SetExpr> {
    let leaf = prop_oneof![
        6 => mixed_leaf(),
        1 => ("[ab]{1,2}", any::<bool>(), any::<bool>()).prop_map(|(p, fib, one)| {
            let word = if fib { WordSpec::fibonacci() } else { WordSpec::thue_morse() };
            SetExpr::returns(word, &p, if one { IndexBase::One } else { IndexBase::Zero }).unwrap()
        }),
    ];
    grow(leaf.boxed())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dsl_print_parse_round_trip(e in dsl_expr()) {
        let text = e.to_string();
        let back = dsl::parse_set(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(win(&back, 1000), win(&e, 1000), "{}", text);
    }
}
