//! Exact counting and exhaustive verification.
//!
//! Two claims are checked here. First, the central binomial convolution
//! `Σ_i C(2i,i)·C(2n−2i,n−i) = 4^n`, both arithmetically and structurally
//! (every length-`2n` path splits at its last visit to height 0 into a
//! balanced prefix and a suffix that never returns). Second, that the
//! partial-reflection map is a bijection from balanced paths onto unbalanced
//! ones, by sweeping every path of a given length.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{phi, phi_inverse};
use crate::error::{DomainError, Error, Result};
use crate::path::{LatticePath, PathClass, MAX_RANK_LEN};

/// Largest half-length accepted by [`verify_bijection`].
pub const MAX_BIJECTION_N: u32 = 10;
/// Largest half-length accepted by the arithmetic identity check.
pub const MAX_ARITHMETIC_N: u32 = 10_000;
/// Largest half-length accepted by the structural identity check.
pub const MAX_STRUCTURAL_N: u32 = 12;
/// Longest path accepted by [`enumerate_class`].
pub const MAX_ENUMERATE_LEN: usize = 30;
/// At most this many failing ranks are listed in a report.
pub const FAILURE_LIST_CAP: usize = 64;

pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::Range(format!("binomial({n}, {k}) needs k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc = C(n - k + i + 1, i + 1) afterwards
        acc *= n - k + i + 1;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `C(2i, i)` for `i = 0..=n`.
pub fn central_binomials(n: u32) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    out.push(c.clone());
    for i in 0..n as u64 {
        c *= 2 * (2 * i + 1);
        c /= i + 1;
        out.push(c.clone());
    }
    out
}

/// Largest `j` with `h_j = 0`.
pub fn last_zero_touch(p: &LatticePath) -> usize {
    p.heights().iter().rposition(|&y| y == 0).unwrap_or(0)
}

/// Splits at the last visit to height 0. The suffix is empty or unbalanced.
pub fn split_at_last_zero(p: &LatticePath) -> Result<(LatticePath, LatticePath)> {
    if !p.len().is_multiple_of(2) {
        return Err(DomainError::OddLength.into());
    }
    let j = last_zero_touch(p);
    Ok((p.slice(0, j), p.slice(j, p.len())))
}

/// Class filter for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassFilter {
    All,
    Only(PathClass),
    /// Up- or down-unbalanced.
    Unbalanced,
}

impl ClassFilter {
    pub fn matches(self, class: PathClass) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Only(c) => c == class,
            ClassFilter::Unbalanced => class.is_unbalanced(),
        }
    }
}

impl From<PathClass> for ClassFilter {
    fn from(c: PathClass) -> Self {
        ClassFilter::Only(c)
    }
}

/// Paths of one length in rank order, filtered by class.
#[derive(Debug, Clone)]
pub struct ClassIter {
    len: usize,
    next: u64,
    end: u64,
    filter: ClassFilter,
}

impl Iterator for ClassIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        while self.next < self.end {
            let code = self.next;
            self.next += 1;
            let p = LatticePath::unrank(self.len, code).expect("length checked at construction");
            if self.filter.matches(p.classify()) {
                return Some(p);
            }
        }
        None
    }
}

pub fn enumerate_class(len: usize, filter: impl Into<ClassFilter>) -> Result<ClassIter> {
    if len > MAX_ENUMERATE_LEN {
        return Err(Error::Range(format!(
            "enumeration length {len} exceeds {MAX_ENUMERATE_LEN}"
        )));
    }
    Ok(ClassIter {
        len,
        next: 0,
        end: 1u64 << len,
        filter: filter.into(),
    })
}

/// A map and its claimed inverse, as exercised by [`verify_bijection_with`].
pub trait PathMap: Sync {
    fn forward(&self, p: &LatticePath) -> Result<LatticePath>;
    fn inverse(&self, p: &LatticePath) -> Result<LatticePath>;
}

/// The partial-reflection map.
#[derive(Debug, Clone, Copy, Default)]
pub struct Phi;

impl PathMap for Phi {
    fn forward(&self, p: &LatticePath) -> Result<LatticePath> {
        phi(p).map(|(q, _)| q)
    }

    fn inverse(&self, p: &LatticePath) -> Result<LatticePath> {
        phi_inverse(p).map(|(q, _)| q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Bijection,
    IdentityArithmetic,
    IdentityStructural,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Bijection => "bijection",
            CheckKind::IdentityArithmetic => "identity-arithmetic",
            CheckKind::IdentityStructural => "identity-structural",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityMode {
    Arithmetic,
    Structural,
}

/// Outcome of a census run.
///
/// Counts that a check does not produce are `None`. `elapsed` is kept out of
/// both serialized forms so reports compare byte-for-byte across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub check: CheckKind,
    pub n: u32,
    pub total_paths: BigUint,
    pub balanced_count: Option<BigUint>,
    pub unbalanced_count: Option<BigUint>,
    pub identity_lhs: BigUint,
    pub identity_rhs: BigUint,
    pub identity_ok: bool,
    /// Structural mode: number of paths whose last zero sits at `2i`, per `i`.
    pub split_tallies: Vec<BigUint>,
    pub bijection_ok: Option<bool>,
    pub failure_count: u64,
    /// Ranks of failing paths, ascending, at most [`FAILURE_LIST_CAP`].
    pub roundtrip_failures: Vec<u64>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct ReportFields<'a> {
    check: CheckKind,
    n: u32,
    total_paths: String,
    balanced_count: Option<String>,
    unbalanced_count: Option<String>,
    identity_lhs: String,
    identity_rhs: String,
    identity_ok: bool,
    split_tallies: Vec<String>,
    bijection_ok: Option<bool>,
    failure_count: u64,
    roundtrip_failures: &'a [u64],
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.identity_ok && self.bijection_ok.unwrap_or(true) && self.failure_count == 0
    }

    fn fields(&self) -> ReportFields<'_> {
        ReportFields {
            check: self.check,
            n: self.n,
            total_paths: self.total_paths.to_string(),
            balanced_count: self.balanced_count.as_ref().map(|x| x.to_string()),
            unbalanced_count: self.unbalanced_count.as_ref().map(|x| x.to_string()),
            identity_lhs: self.identity_lhs.to_string(),
            identity_rhs: self.identity_rhs.to_string(),
            identity_ok: self.identity_ok,
            split_tallies: self.split_tallies.iter().map(|x| x.to_string()).collect(),
            bijection_ok: self.bijection_ok,
            failure_count: self.failure_count,
            roundtrip_failures: &self.roundtrip_failures,
        }
    }

    /// One `key=value` line per field; absent values print as `n/a` and
    /// lists are comma separated.
    pub fn to_kv_text(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "n/a".to_string(), |x| x.to_string())
        }
        fn list<T: ToString>(v: &[T]) -> String {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
        let lines = [
            ("check", self.check.name().to_string()),
            ("n", self.n.to_string()),
            ("total_paths", self.total_paths.to_string()),
            ("balanced_count", opt(&self.balanced_count)),
            ("unbalanced_count", opt(&self.unbalanced_count)),
            ("identity_lhs", self.identity_lhs.to_string()),
            ("identity_rhs", self.identity_rhs.to_string()),
            ("identity_ok", self.identity_ok.to_string()),
            ("split_tallies", list(&self.split_tallies)),
            ("bijection_ok", opt(&self.bijection_ok)),
            ("failure_count", self.failure_count.to_string()),
            ("roundtrip_failures", list(&self.roundtrip_failures)),
        ];
        let mut out = String::new();
        for (k, v) in lines {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    /// Pretty-printed JSON object. Big integers are decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.fields()).expect("report fields always serialize")
    }
}

fn identity_sides(n: u32) -> (BigUint, BigUint) {
    let c = central_binomials(n);
    let lhs = (0..=n as usize).fold(BigUint::zero(), |acc, i| acc + &c[i] * &c[n as usize - i]);
    (lhs, BigUint::one() << (2 * n as usize))
}

fn check_range(n: u32, lo: u32, hi: u32, what: &str) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::Range(format!(
            "{what} needs {lo} <= n <= {hi}, got n = {n}"
        )));
    }
    Ok(())
}

/// Rank intervals `[start, end)` covering `0..total` in `parts` pieces.
fn rank_intervals(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    (0..parts)
        .map(|i| {
            let lo = (total as u128 * i as u128 / parts as u128) as u64;
            let hi = (total as u128 * (i + 1) as u128 / parts as u128) as u64;
            (lo, hi)
        })
        .collect()
}

struct Occupancy {
    words: Vec<AtomicU64>,
}

impl Occupancy {
    fn new(bits: u64) -> Self {
        Occupancy {
            words: (0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    /// Sets the bit and reports whether it was already set.
    fn test_and_set(&self, bit: u64) -> bool {
        let mask = 1u64 << (bit % 64);
        self.words[(bit / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask != 0
    }

    fn get(&self, bit: u64) -> bool {
        self.words[(bit / 64) as usize].load(Ordering::Relaxed) & (1u64 << (bit % 64)) != 0
    }
}

#[derive(Default)]
struct Tally {
    balanced: u64,
    unbalanced: u64,
    /// Paths whose own check failed. Sorted within a partition.
    failures: Vec<u64>,
    /// Image ranks hit more than once.
    collided_images: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.balanced += other.balanced;
        self.unbalanced += other.unbalanced;
        self.failures.extend(other.failures);
        self.collided_images.extend(other.collided_images);
        self
    }
}

fn sweep_interval<M: PathMap>(
    map: &M,
    len: usize,
    (lo, hi): (u64, u64),
    seen: &Occupancy,
) -> Tally {
    let mut t = Tally::default();
    for code in lo..hi {
        let p = LatticePath::unrank(len, code).expect("rank within range");
        let ok = match p.classify() {
            PathClass::Balanced => {
                t.balanced += 1;
                match map.forward(&p) {
                    Ok(img) if img.len() == len && img.classify().is_unbalanced() => {
                        let r = img.rank().expect("length within rank limit");
                        if seen.test_and_set(r) {
                            t.collided_images.push(r);
                        }
                        matches!(map.inverse(&img), Ok(back) if back == p)
                    }
                    _ => false,
                }
            }
            PathClass::UpUnbalanced | PathClass::DownUnbalanced => {
                t.unbalanced += 1;
                match map.inverse(&p) {
                    Ok(pre) if pre.is_balanced() => {
                        matches!(map.forward(&pre), Ok(back) if back == p)
                    }
                    _ => false,
                }
            }
            PathClass::Other => true,
        };
        if !ok {
            t.failures.push(code);
        }
    }
    t
}

/// Exhaustive bijectivity check of the partial-reflection map over all
/// paths of length `2n`.
pub fn verify_bijection(n: u32, partitions: usize) -> Result<CensusReport> {
    verify_bijection_with(&Phi, n, partitions)
}

/// As [`verify_bijection`], for an arbitrary map. The rank range is split
/// into `partitions` disjoint intervals swept in parallel; the report does
/// not depend on the partition count or on scheduling.
pub fn verify_bijection_with<M: PathMap>(
    map: &M,
    n: u32,
    partitions: usize,
) -> Result<CensusReport> {
    check_range(n, 1, MAX_BIJECTION_N, "bijection verification")?;
    let start = Instant::now();
    let len = 2 * n as usize;
    debug_assert!(len <= MAX_RANK_LEN);
    let total = 1u64 << len;
    let seen = Occupancy::new(total);

    let tally = rank_intervals(total, partitions)
        .into_par_iter()
        .map(|iv| sweep_interval(map, len, iv, &seen))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);

    let mut failures = tally.failures;
    if !tally.collided_images.is_empty() {
        // every source of a shared image fails, whichever thread got there first
        let mut collided = tally.collided_images;
        collided.sort_unstable();
        for code in 0..total {
            let p = LatticePath::unrank(len, code).expect("rank within range");
            if !p.is_balanced() {
                continue;
            }
            if let Ok(img) = map.forward(&p) {
                if let Ok(r) = img.rank() {
                    if collided.binary_search(&r).is_ok() {
                        failures.push(code);
                    }
                }
            }
        }
    }
    // unbalanced paths that no balanced path reached
    for code in 0..total {
        if !seen.get(code) {
            let p = LatticePath::unrank(len, code).expect("rank within range");
            if p.classify().is_unbalanced() {
                failures.push(code);
            }
        }
    }
    failures.sort_unstable();
    failures.dedup();

    let expected = binomial(len as u64, n as u64)?;
    let balanced = BigUint::from(tally.balanced);
    let unbalanced = BigUint::from(tally.unbalanced);
    let counts_ok = balanced == expected && unbalanced == expected;
    let (lhs, rhs) = identity_sides(n);

    let failure_count = failures.len() as u64;
    failures.truncate(FAILURE_LIST_CAP);
    Ok(CensusReport {
        check: CheckKind::Bijection,
        n,
        total_paths: BigUint::from(total),
        balanced_count: Some(balanced),
        unbalanced_count: Some(unbalanced),
        identity_ok: lhs == rhs,
        identity_lhs: lhs,
        identity_rhs: rhs,
        split_tallies: Vec::new(),
        bijection_ok: Some(counts_ok && failure_count == 0),
        failure_count,
        roundtrip_failures: failures,
        elapsed: start.elapsed(),
    })
}

#[derive(Default)]
struct SplitTally {
    per_i: Vec<u64>,
    balanced: u64,
    unbalanced: u64,
    failures: Vec<u64>,
}

impl SplitTally {
    fn merge(mut self, other: SplitTally) -> SplitTally {
        if self.per_i.len() < other.per_i.len() {
            self.per_i.resize(other.per_i.len(), 0);
        }
        for (a, b) in self.per_i.iter_mut().zip(other.per_i) {
            *a += b;
        }
        self.balanced += other.balanced;
        self.unbalanced += other.unbalanced;
        self.failures.extend(other.failures);
        self
    }
}

fn split_interval(n: u32, (lo, hi): (u64, u64)) -> SplitTally {
    let len = 2 * n as usize;
    let mut t = SplitTally {
        per_i: vec![0; n as usize + 1],
        ..Default::default()
    };
    for code in lo..hi {
        let p = LatticePath::unrank(len, code).expect("rank within range");
        match p.classify() {
            PathClass::Balanced => t.balanced += 1,
            c if c.is_unbalanced() => t.unbalanced += 1,
            _ => {}
        }
        let (prefix, suffix) = split_at_last_zero(&p).expect("even length");
        let suffix_ok = suffix.is_empty() || suffix.classify().is_unbalanced();
        if !prefix.is_balanced() || !suffix_ok || prefix.concat(&suffix) != p {
            t.failures.push(code);
        }
        t.per_i[prefix.len() / 2] += 1;
    }
    t
}

/// Checks the central binomial convolution identity for one `n`.
pub fn verify_identity(n: u32, mode: IdentityMode) -> Result<CensusReport> {
    let start = Instant::now();
    match mode {
        IdentityMode::Arithmetic => {
            check_range(n, 0, MAX_ARITHMETIC_N, "arithmetic identity check")?;
            let (lhs, rhs) = identity_sides(n);
            Ok(CensusReport {
                check: CheckKind::IdentityArithmetic,
                n,
                total_paths: rhs.clone(),
                balanced_count: None,
                unbalanced_count: None,
                identity_ok: lhs == rhs,
                identity_lhs: lhs,
                identity_rhs: rhs,
                split_tallies: Vec::new(),
                bijection_ok: None,
                failure_count: 0,
                roundtrip_failures: Vec::new(),
                elapsed: start.elapsed(),
            })
        }
        IdentityMode::Structural => {
            check_range(n, 0, MAX_STRUCTURAL_N, "structural identity check")?;
            let total = 1u64 << (2 * n);
            let tally = rank_intervals(total, rayon::current_num_threads() * 4)
                .into_par_iter()
                .map(|iv| split_interval(n, iv))
                .collect::<Vec<_>>()
                .into_iter()
                .fold(SplitTally::default(), SplitTally::merge);

            let c = central_binomials(n);
            let nn = n as usize;
            let terms_ok = (0..=nn).all(|i| BigUint::from(tally.per_i[i]) == &c[i] * &c[nn - i]);
            let (lhs, rhs) = identity_sides(n);
            let tallied: u64 = tally.per_i.iter().sum();
            let identity_ok = terms_ok && lhs == rhs && BigUint::from(tallied) == rhs;

            let mut failures = tally.failures;
            failures.sort_unstable();
            let failure_count = failures.len() as u64;
            failures.truncate(FAILURE_LIST_CAP);
            Ok(CensusReport {
                check: CheckKind::IdentityStructural,
                n,
                total_paths: BigUint::from(total),
                balanced_count: Some(tally.balanced.into()),
                unbalanced_count: Some(tally.unbalanced.into()),
                identity_ok,
                identity_lhs: lhs,
                identity_rhs: rhs,
                split_tallies: tally.per_i.into_iter().map(BigUint::from).collect(),
                bijection_ok: None,
                failure_count,
                roundtrip_failures: failures,
                elapsed: start.elapsed(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(binomial(0, 0).unwrap(), BigUint::one());
        assert_eq!(binomial(40, 20).unwrap(), BigUint::from(137_846_528_820u64));
        assert!(matches!(binomial(3, 4), Err(Error::Range(_))));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let t = pascal(80);
        for n in 0..=80u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k).unwrap(), t[n as usize][k as usize], "C({n},{k})");
            }
        }
        let c = central_binomials(40);
        for i in 0..=40 {
            assert_eq!(c[i], t[2 * i][i]);
        }
    }

    #[test]
    fn last_zero_examples() {
        assert_eq!(last_zero_touch(&p("UDUU")), 2);
        assert_eq!(last_zero_touch(&p("UUUU")), 0);
        assert_eq!(last_zero_touch(&p("UDUD")), 4);
        assert_eq!(last_zero_touch(&p("")), 0);
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_at_last_zero(&p("UDUU")).unwrap(), (p("UD"), p("UU")));
        assert_eq!(split_at_last_zero(&p("UUUU")).unwrap(), (p(""), p("UUUU")));
        assert_eq!(split_at_last_zero(&p("UDUD")).unwrap(), (p("UDUD"), p("")));
        assert_eq!(
            split_at_last_zero(&p("UDU")),
            Err(DomainError::OddLength.into())
        );
    }

    #[test]
    fn split_is_bijective_onto_pairs() {
        // brute force: every length-2n path splits once, and the pair determines it
        for n in 0..=8usize {
            let len = 2 * n;
            let mut pairs = std::collections::HashSet::new();
            for code in 0..(1u64 << len) {
                let q = LatticePath::unrank(len, code).unwrap();
                let (a, b) = split_at_last_zero(&q).unwrap();
                assert!(a.is_balanced());
                assert!(b.is_empty() || b.classify().is_unbalanced());
                assert_eq!(a.concat(&b), q);
                assert!(pairs.insert((a, b)));
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let names = |len, f: ClassFilter| -> Vec<String> {
            enumerate_class(len, f).unwrap().map(|q| q.to_string()).collect()
        };
        assert_eq!(names(2, PathClass::Balanced.into()), ["UD", "DU"]);
        assert_eq!(names(2, PathClass::UpUnbalanced.into()), ["UU"]);
        let mut up4 = names(4, PathClass::UpUnbalanced.into());
        up4.sort();
        assert_eq!(up4, ["UUDU", "UUUD", "UUUU"]);
        assert_eq!(names(0, ClassFilter::All), [""]);
        assert!(matches!(enumerate_class(31, ClassFilter::All), Err(Error::Range(_))));
    }

    #[test]
    fn enumerate_matches_brute_scan() {
        for len in 0..=12usize {
            for filter in [
                ClassFilter::All,
                ClassFilter::Unbalanced,
                PathClass::Balanced.into(),
                PathClass::Other.into(),
            ] {
                let expect: Vec<u64> = (0..(1u64 << len))
                    .filter(|&c| filter.matches(LatticePath::unrank(len, c).unwrap().classify()))
                    .collect();
                let got: Vec<u64> = enumerate_class(len, filter)
                    .unwrap()
                    .map(|q| q.rank().unwrap())
                    .collect();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn class_counts_by_length() {
        for n in 1..=10u32 {
            let len = 2 * n as usize;
            let c = |f: ClassFilter| enumerate_class(len, f).unwrap().count() as u64;
            let central = binomial(len as u64, n as u64).unwrap();
            let half = &central / 2u32;
            assert_eq!(BigUint::from(c(PathClass::Balanced.into())), central);
            assert_eq!(BigUint::from(c(ClassFilter::Unbalanced)), central);
            assert_eq!(BigUint::from(c(PathClass::UpUnbalanced.into())), half);
            assert_eq!(BigUint::from(c(PathClass::DownUnbalanced.into())), half);
        }
    }

    #[test]
    fn bijection_small_n() {
        let r = verify_bijection(1, 1).unwrap();
        assert_eq!(r.balanced_count, Some(2u32.into()));
        assert_eq!(r.unbalanced_count, Some(2u32.into()));
        assert_eq!(r.bijection_ok, Some(true));
        let r = verify_bijection(2, 3).unwrap();
        assert_eq!(r.balanced_count, Some(6u32.into()));
        assert_eq!(r.unbalanced_count, Some(6u32.into()));
        assert_eq!(r.bijection_ok, Some(true));
        assert!(r.passed());
        assert!(verify_bijection(0, 1).is_err());
        assert!(verify_bijection(11, 1).is_err());
    }

    /// φ with the image of "UDUD" redirected onto the image of "UUDD".
    struct Corrupted;

    impl PathMap for Corrupted {
        fn forward(&self, q: &LatticePath) -> Result<LatticePath> {
            if q.to_string() == "UDUD" {
                return Phi.forward(&"UUDD".parse().unwrap());
            }
            Phi.forward(q)
        }

        fn inverse(&self, q: &LatticePath) -> Result<LatticePath> {
            Phi.inverse(q)
        }
    }

    #[test]
    fn corrupted_map_is_caught() {
        let r = verify_bijection_with(&Corrupted, 2, 4).unwrap();
        assert_eq!(r.bijection_ok, Some(false));
        assert!(!r.passed());
        let rank = |s: &str| p(s).rank().unwrap();
        // UDUD fails its round trip and collides with UUDD; UUDU loses its preimage
        let mut expect = vec![rank("UDUD"), rank("UUDD"), rank("UUDU")];
        expect.sort();
        assert_eq!(r.roundtrip_failures, expect);
        assert_eq!(r.failure_count, 3);
    }

    #[test]
    fn partition_count_does_not_change_report() {
        let base = verify_bijection(6, 1).unwrap();
        for parts in [2, 4, 7, 16, 5000] {
            let r = verify_bijection(6, parts).unwrap();
            assert_eq!(r.to_kv_text(), base.to_kv_text());
            assert_eq!(r.to_json(), base.to_json());
        }
    }

    #[test]
    fn identity_examples() {
        let r = verify_identity(2, IdentityMode::Arithmetic).unwrap();
        assert_eq!(r.identity_lhs, BigUint::from(16u32));
        assert_eq!(r.identity_rhs, BigUint::from(16u32));
        assert!(r.passed());
        let r = verify_identity(0, IdentityMode::Arithmetic).unwrap();
        assert_eq!(r.identity_lhs, BigUint::one());

        let r = verify_identity(3, IdentityMode::Structural).unwrap();
        let tallies: Vec<u64> = r.split_tallies.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(tallies, vec![20, 12, 12, 20]);
        assert!(r.passed());

        assert!(verify_identity(10_001, IdentityMode::Arithmetic).is_err());
        assert!(verify_identity(13, IdentityMode::Structural).is_err());
    }

    #[test]
    fn structural_tallies_match_brute_count() {
        // independent tally: count last zero positions directly from heights
        for n in 0..=6u32 {
            let len = 2 * n as usize;
            let mut brute = vec![0u64; n as usize + 1];
            for code in 0..(1u64 << len) {
                let h = LatticePath::unrank(len, code).unwrap().heights();
                let j = (0..=len).rev().find(|&j| h[j] == 0).unwrap();
                brute[j / 2] += 1;
            }
            let r = verify_identity(n, IdentityMode::Structural).unwrap();
            let got: Vec<u64> = r.split_tallies.iter().map(|x| x.try_into().unwrap()).collect();
            assert_eq!(got, brute);
            let a = verify_identity(n, IdentityMode::Arithmetic).unwrap();
            assert_eq!(a.identity_lhs, r.identity_lhs);
        }
    }

    #[test]
    fn kv_text_layout() {
        let r = verify_identity(2, IdentityMode::Arithmetic).unwrap();
        assert_eq!(
            r.to_kv_text(),
            "check=identity-arithmetic\nn=2\ntotal_paths=16\nbalanced_count=n/a\n\
             unbalanced_count=n/a\nidentity_lhs=16\nidentity_rhs=16\nidentity_ok=true\n\
             split_tallies=\nbijection_ok=n/a\nfailure_count=0\nroundtrip_failures=\n"
        );
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["identity_lhs"], "16");
        assert_eq!(v["balanced_count"], serde_json::Value::Null);
    }
}
