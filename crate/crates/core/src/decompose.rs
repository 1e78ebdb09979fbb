//! Peak decomposition of an up-starting balanced path.
//!
//! A balanced path that starts with an up step splits uniquely as
//!
//! ```text
//! [ups, D(B_n), ups, D(B_{n-1}), …, ups, D(B_2), ups, D'(B_1)]
//! ```
//!
//! where `B_1` is the leftmost global maximum, each `D(B_i)` is a down-Dyck
//! segment (starts with a down step, never rises above `B_i`, returns to
//! the level of `B_i`) and `D'(B_1)` is down-unbalanced (ends strictly below
//! `B_1`, at absolute height 0). `B_{i+1}` is the leftmost maximum among the
//! points up to the last down step in front of `B_i`; the search stops once
//! only up steps remain in front of the current peak.

use std::fmt;

use crate::error::{DomainError, Error, Result};
use crate::path::{leftmost_max, LatticePath, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    DownDyck,
    DownUnbalanced,
}

impl SegmentKind {
    pub fn name(self) -> &'static str {
        match self {
            SegmentKind::DownDyck => "down-dyck",
            SegmentKind::DownUnbalanced => "down-unbalanced",
        }
    }
}

/// A down-starting segment of the parent path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Steps of the segment, re-based to start at height 0.
    pub steps: LatticePath,
    /// Index of the segment's first point (its peak) in the parent path.
    pub start_index: usize,
}

impl Segment {
    pub fn end_index(&self) -> usize {
        self.start_index + self.steps.len()
    }
}

/// A run of up steps followed by a segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub uprun_length: usize,
    pub segment: Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Peak {
    pub index: usize,
    pub height: i64,
}

/// Peak decomposition, stored left to right: `peaks[0]` is `B_n` and the
/// last entry is `B_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    pub peaks: Vec<Peak>,
}

impl Decomposition {
    /// Peaks in discovery order `B_1, B_2, …`.
    pub fn peaks_from_global(&self) -> impl Iterator<Item = &Peak> {
        self.peaks.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.parts
            .iter()
            .map(|p| p.uprun_length + p.segment.steps.len())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// A broken invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    NoParts,
    EmptyUprun { part: usize },
    EmptySegment { part: usize },
    SegmentNotDownStart { part: usize },
    SegmentAboveStart { part: usize },
    SegmentKind { part: usize },
    MisplacedUnbalanced { part: usize },
    SegmentStartMismatch { part: usize },
    PeakCount,
    PeakMismatch { peak: usize },
    PeakOrder { peak: usize },
    NotLeftmost { peak: usize },
    NotBalanced,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoParts => write!(f, "no parts"),
            Violation::EmptyUprun { part } => write!(f, "part {part}: uprun length is 0"),
            Violation::EmptySegment { part } => write!(f, "part {part}: empty segment"),
            Violation::SegmentNotDownStart { part } => {
                write!(f, "part {part}: segment does not start with a down step")
            }
            Violation::SegmentAboveStart { part } => {
                write!(f, "part {part}: segment rises above its start level")
            }
            Violation::SegmentKind { part } => {
                write!(f, "part {part}: segment end height does not match its kind")
            }
            Violation::MisplacedUnbalanced { part } => write!(
                f,
                "part {part}: only the last segment may be down-unbalanced, and it must be"
            ),
            Violation::SegmentStartMismatch { part } => {
                write!(f, "part {part}: segment start index does not match its position")
            }
            Violation::PeakCount => write!(f, "peak count differs from part count"),
            Violation::PeakMismatch { peak } => {
                write!(f, "peak {peak}: recorded point is not the segment start")
            }
            Violation::PeakOrder { peak } => {
                write!(f, "peak {peak}: peak heights are not strictly increasing")
            }
            Violation::NotLeftmost { peak } => {
                write!(f, "peak {peak}: an earlier point reaches the same height")
            }
            Violation::NotBalanced => write!(f, "recomposed path does not end at height 0"),
        }
    }
}

/// Peaks and segment ends in discovery order `B_1, B_2, …`.
///
/// `ends[i]` is the last point of the segment that starts at `peaks[i]`:
/// the path end for `B_1`, the start of the uprun into `B_{i-1}` otherwise.
pub(crate) struct PeakChain {
    pub peaks: Vec<Peak>,
    pub ends: Vec<usize>,
}

/// Caller guarantees `path` is nonempty, balanced, and up-starting.
pub(crate) fn peak_chain(path: &LatticePath, h: &[i64]) -> PeakChain {
    let (y, b) = leftmost_max(h);
    let mut peaks = vec![Peak {
        index: b,
        height: y,
    }];
    let mut ends = vec![path.len()];
    let mut cur = b;
    while let Some(k) = (0..cur).rev().find(|&k| path.step(k) == Step::Down) {
        let (y, b) = leftmost_max(&h[..=k]);
        // only up steps lie between the last down step and the current peak
        let end = cur - (h[cur] - y) as usize;
        peaks.push(Peak {
            index: b,
            height: y,
        });
        ends.push(end);
        cur = b;
    }
    PeakChain { peaks, ends }
}

pub(crate) fn check_up_start_balanced(p: &LatticePath) -> Result<()> {
    if p.is_empty() {
        return Err(DomainError::Empty.into());
    }
    if !p.is_balanced() {
        return Err(DomainError::NotBalanced.into());
    }
    if p.step(0) == Step::Down {
        return Err(DomainError::DownStart.into());
    }
    Ok(())
}

pub fn decompose(p: &LatticePath) -> Result<Decomposition> {
    check_up_start_balanced(p)?;
    let h = p.heights();
    let chain = peak_chain(p, &h);
    let n = chain.peaks.len();

    let mut parts = Vec::with_capacity(n);
    let mut cursor = 0;
    for i in (0..n).rev() {
        let (peak, end) = (chain.peaks[i], chain.ends[i]);
        let kind = if i == 0 {
            SegmentKind::DownUnbalanced
        } else {
            SegmentKind::DownDyck
        };
        parts.push(Part {
            uprun_length: peak.index - cursor,
            segment: Segment {
                kind,
                steps: p.slice(peak.index, end),
                start_index: peak.index,
            },
        });
        cursor = end;
    }
    let mut peaks = chain.peaks;
    peaks.reverse();
    Ok(Decomposition { parts, peaks })
}

pub fn validate(d: &Decomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    if d.parts.is_empty() {
        out.push(Violation::NoParts);
        return out;
    }
    let last = d.parts.len() - 1;
    let mut cursor = 0usize;
    let mut level = 0i64;
    let mut starts = Vec::with_capacity(d.parts.len());
    for (i, part) in d.parts.iter().enumerate() {
        if part.uprun_length == 0 {
            out.push(Violation::EmptyUprun { part: i });
        }
        cursor += part.uprun_length;
        level += part.uprun_length as i64;
        let seg = &part.segment;
        if seg.start_index != cursor {
            out.push(Violation::SegmentStartMismatch { part: i });
        }
        starts.push((cursor, level));

        let expected_kind = if i == last {
            SegmentKind::DownUnbalanced
        } else {
            SegmentKind::DownDyck
        };
        if seg.kind != expected_kind {
            out.push(Violation::MisplacedUnbalanced { part: i });
        }
        if seg.steps.is_empty() {
            out.push(Violation::EmptySegment { part: i });
        } else {
            if seg.steps.step(0) != Step::Down {
                out.push(Violation::SegmentNotDownStart { part: i });
            }
            let rel = seg.steps.heights();
            if rel.iter().any(|&y| y > 0) {
                out.push(Violation::SegmentAboveStart { part: i });
            }
            let end = *rel.last().unwrap();
            let kind_ok = match seg.kind {
                SegmentKind::DownDyck => end == 0,
                SegmentKind::DownUnbalanced => end < 0,
            };
            if !kind_ok {
                out.push(Violation::SegmentKind { part: i });
            }
            level += end;
        }
        cursor += seg.steps.len();
    }
    if level != 0 {
        out.push(Violation::NotBalanced);
    }

    if d.peaks.len() != d.parts.len() {
        out.push(Violation::PeakCount);
    } else {
        for (i, (peak, &(index, height))) in d.peaks.iter().zip(&starts).enumerate() {
            if peak.index != index || peak.height != height {
                out.push(Violation::PeakMismatch { peak: i });
            }
            if i > 0 && d.peaks[i - 1].height >= peak.height {
                out.push(Violation::PeakOrder { peak: i });
            }
        }
    }

    // leftmost rule, checked against the recomposed path
    if out.is_empty() {
        let h = emit(d).heights();
        for (i, peak) in d.peaks.iter().enumerate() {
            if h[..peak.index].iter().any(|&y| y >= peak.height) {
                out.push(Violation::NotLeftmost { peak: i });
            }
        }
    }
    out
}

fn emit(d: &Decomposition) -> LatticePath {
    let mut p = LatticePath::new();
    for part in &d.parts {
        for _ in 0..part.uprun_length {
            p.push(Step::Up);
        }
        for s in part.segment.steps.steps() {
            p.push(s);
        }
    }
    p
}

pub fn recompose(d: &Decomposition) -> Result<LatticePath> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    Ok(emit(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn seg(kind: SegmentKind, s: &str, start: usize) -> Segment {
        Segment {
            kind,
            steps: p(s),
            start_index: start,
        }
    }

    fn summary(d: &Decomposition) -> Vec<(usize, String, SegmentKind)> {
        d.parts
            .iter()
            .map(|x| (x.uprun_length, x.segment.steps.to_string(), x.segment.kind))
            .collect()
    }

    #[test]
    fn monotone_peak() {
        let d = decompose(&p("UUDD")).unwrap();
        assert_eq!(summary(&d), vec![(2, "DD".into(), SegmentKind::DownUnbalanced)]);
        assert_eq!(d.peaks, vec![Peak { index: 2, height: 2 }]);
    }

    #[test]
    fn later_equal_height_stays_inside_last_segment() {
        let d = decompose(&p("UDUD")).unwrap();
        assert_eq!(summary(&d), vec![(1, "DUD".into(), SegmentKind::DownUnbalanced)]);
        assert_eq!(d.peaks, vec![Peak { index: 1, height: 1 }]);
        assert_eq!(recompose(&d).unwrap(), p("UDUD"));
    }

    #[test]
    fn two_peaks() {
        let d = decompose(&p("UDUUDD")).unwrap();
        assert_eq!(
            summary(&d),
            vec![
                (1, "DU".into(), SegmentKind::DownDyck),
                (1, "DD".into(), SegmentKind::DownUnbalanced)
            ]
        );
        assert_eq!(
            d.peaks,
            vec![Peak { index: 1, height: 1 }, Peak { index: 4, height: 2 }]
        );
        assert!(validate(&d).is_empty());
        assert_eq!(recompose(&d).unwrap(), p("UDUUDD"));
    }

    #[test]
    fn long_uprun_between_peaks() {
        // the uprun into B_1 climbs two levels past B_2
        let d = decompose(&p("UDUUUDDD")).unwrap();
        assert_eq!(
            summary(&d),
            vec![
                (1, "DU".into(), SegmentKind::DownDyck),
                (2, "DDD".into(), SegmentKind::DownUnbalanced)
            ]
        );
        assert_eq!(
            d.peaks,
            vec![Peak { index: 1, height: 1 }, Peak { index: 5, height: 3 }]
        );
    }

    #[test]
    fn down_dyck_may_touch_its_level() {
        let d = decompose(&p("UDUDUUDD")).unwrap();
        assert_eq!(
            summary(&d),
            vec![
                (1, "DUDU".into(), SegmentKind::DownDyck),
                (1, "DD".into(), SegmentKind::DownUnbalanced)
            ]
        );
    }

    #[test]
    fn domain_errors() {
        assert_eq!(decompose(&p("")), Err(DomainError::Empty.into()));
        assert_eq!(decompose(&p("UU")), Err(DomainError::NotBalanced.into()));
        assert_eq!(decompose(&p("DU")), Err(DomainError::DownStart.into()));
    }

    #[test]
    fn recompose_rejects_broken_structures() {
        let d = Decomposition {
            parts: vec![Part {
                uprun_length: 2,
                segment: seg(SegmentKind::DownUnbalanced, "DD", 2),
            }],
            peaks: vec![Peak { index: 2, height: 2 }],
        };
        assert_eq!(recompose(&d).unwrap(), p("UUDD"));

        let zero = Decomposition {
            parts: vec![Part {
                uprun_length: 0,
                segment: seg(SegmentKind::DownUnbalanced, "DD", 0),
            }],
            peaks: vec![Peak { index: 0, height: 0 }],
        };
        match recompose(&zero) {
            Err(Error::Validation(v)) => assert!(v.contains(&Violation::EmptyUprun { part: 0 })),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn validate_flags_segment_kind() {
        // DownDyck segment that ends one below its start
        let d = Decomposition {
            parts: vec![
                Part {
                    uprun_length: 2,
                    segment: seg(SegmentKind::DownDyck, "D", 2),
                },
                Part {
                    uprun_length: 1,
                    segment: seg(SegmentKind::DownUnbalanced, "DD", 4),
                },
            ],
            peaks: vec![Peak { index: 2, height: 2 }, Peak { index: 4, height: 2 }],
        };
        let v = validate(&d);
        assert!(v.contains(&Violation::SegmentKind { part: 0 }), "{v:?}");
    }

    #[test]
    fn validate_flags_peak_order() {
        // recorded heights claim B_2 and B_1 sit on the same level
        let d = Decomposition {
            parts: vec![
                Part {
                    uprun_length: 1,
                    segment: seg(SegmentKind::DownDyck, "DU", 1),
                },
                Part {
                    uprun_length: 1,
                    segment: seg(SegmentKind::DownUnbalanced, "DD", 4),
                },
            ],
            peaks: vec![Peak { index: 1, height: 1 }, Peak { index: 4, height: 1 }],
        };
        let v = validate(&d);
        assert!(v.contains(&Violation::PeakOrder { peak: 1 }), "{v:?}");
    }

    #[test]
    fn validate_flags_misplaced_unbalanced_and_empty() {
        let d = Decomposition {
            parts: vec![],
            peaks: vec![],
        };
        assert_eq!(validate(&d), vec![Violation::NoParts]);

        let d = Decomposition {
            parts: vec![Part {
                uprun_length: 1,
                segment: seg(SegmentKind::DownDyck, "D", 1),
            }],
            peaks: vec![Peak { index: 1, height: 1 }],
        };
        let v = validate(&d);
        assert!(v.contains(&Violation::MisplacedUnbalanced { part: 0 }), "{v:?}");
    }

    #[test]
    fn round_trip_and_structure_exhaustive() {
        for len in (2..=20usize).step_by(2) {
            for code in 0..(1u64 << len) {
                if code & 1 == 0 {
                    continue;
                }
                let q = LatticePath::unrank(len, code).unwrap();
                if !q.is_balanced() {
                    continue;
                }
                let d = decompose(&q).unwrap();
                assert!(validate(&d).is_empty(), "{q}: {:?}", validate(&d));
                assert_eq!(recompose(&d).unwrap(), q);

                let h = q.heights();
                let mut below = 0;
                for (peak, part) in d.peaks.iter().zip(&d.parts) {
                    assert!(h[..peak.index].iter().all(|&y| y < peak.height));
                    assert_eq!(part.uprun_length as i64, peak.height - below);
                    below = peak.height;
                }
            }
        }
    }
}
