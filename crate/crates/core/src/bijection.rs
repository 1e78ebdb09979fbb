//! The partial-reflection map between balanced paths and unbalanced Dyck
//! paths of the same length.
//!
//! Forward: decompose an up-starting balanced path at its peaks `B_1, B_2, …`
//! and reflect every down segment about the level of its own peak, leaving
//! the up runs alone. The image stays strictly above 0 and ends at twice the
//! height of the global maximum.
//!
//! Inverse: start from the line halfway up to the end point, find the
//! rightmost point where the path *crosses* that line (touch points are
//! skipped), reflect back from there to the end, then repeat from the end
//! point of the last down step in front of the crossing until no down steps
//! remain on the left.
//!
//! Down-starting inputs are handled by reflecting the whole path about the
//! axis before and after the map.

use crate::decompose::{check_up_start_balanced, peak_chain};
use crate::error::{DomainError, Error, Result};
use crate::path::{rightmost_crossing_in, LatticePath, PathClass, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub index: usize,
    pub height: i64,
}

impl Point {
    pub fn new(index: usize, height: i64) -> Self {
        Point { index, height }
    }
}

/// Points and reflection lines recorded while running the map.
///
/// All heights refer to the frame of the path the caller passed in, also
/// when the map ran on the mirrored path (`conjugated`). For the forward
/// direction the `g_points` are located on the image path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionTrace {
    /// `B_1, B_2, …` in discovery order.
    pub b_points: Vec<Point>,
    /// `G_1, G_2, …`: end points of the reflected segments.
    pub g_points: Vec<Point>,
    /// Level of each reflection, parallel to `b_points`.
    pub reflection_lines: Vec<i64>,
    pub direction: Direction,
    pub conjugated: bool,
}

impl BijectionTrace {
    fn empty(direction: Direction) -> Self {
        BijectionTrace {
            b_points: Vec::new(),
            g_points: Vec::new(),
            reflection_lines: Vec::new(),
            direction,
            conjugated: false,
        }
    }

    fn mirrored(mut self) -> Self {
        for pt in self.b_points.iter_mut().chain(self.g_points.iter_mut()) {
            pt.height = -pt.height;
        }
        for l in &mut self.reflection_lines {
            *l = -*l;
        }
        self.conjugated = true;
        self
    }
}

fn phi_up(p: &LatticePath) -> (LatticePath, BijectionTrace) {
    let h = p.heights();
    let chain = peak_chain(p, &h);
    let mut out = p.clone();
    let mut trace = BijectionTrace::empty(Direction::Forward);
    for (i, (peak, &end)) in chain.peaks.iter().zip(&chain.ends).enumerate() {
        out.flip_range(peak.index, end);
        trace.b_points.push(Point::new(peak.index, peak.height));
        trace.reflection_lines.push(peak.height);
        // reflecting D'(B_1) about y_{B_1} carries the end point from 0 to 2 y_{B_1}
        let g_height = if i == 0 { 2 * peak.height } else { peak.height };
        trace.g_points.push(Point::new(end, g_height));
    }
    (out, trace)
}

/// Forward map on balanced paths. `φ(∅) = ∅`.
pub fn phi(p: &LatticePath) -> Result<(LatticePath, BijectionTrace)> {
    if p.is_empty() {
        return Ok((LatticePath::new(), BijectionTrace::empty(Direction::Forward)));
    }
    if !p.is_balanced() {
        return Err(DomainError::NotBalanced.into());
    }
    if p.step(0) == Step::Down {
        let (out, trace) = phi_up(&p.reflect_all());
        return Ok((out.reflect_all(), trace.mirrored()));
    }
    debug_assert!(check_up_start_balanced(p).is_ok());
    Ok(phi_up(p))
}

fn phi_inverse_up(p: &LatticePath) -> Result<(LatticePath, BijectionTrace)> {
    // Reflections only touch points at or right of the current B, and every
    // later search stays left of it, so heights from the input remain valid.
    let h = p.heights();
    let mut work = p.clone();
    let mut trace = BijectionTrace::empty(Direction::Inverse);

    let mut g = p.len();
    let mut level = h[g] / 2;
    loop {
        let b = rightmost_crossing_in(&h, level, g).ok_or(Error::NoCrossing {
            level,
            search_end: g,
        })?;
        work.flip_range(b, g);
        trace.b_points.push(Point::new(b, level));
        trace.g_points.push(Point::new(g, h[g]));
        trace.reflection_lines.push(level);

        match (0..b).rev().find(|&k| work.step(k) == Step::Down) {
            None => break,
            Some(k) => {
                g = k + 1;
                level = h[g];
            }
        }
    }
    Ok((work, trace))
}

/// Inverse map on unbalanced Dyck paths of even length.
pub fn phi_inverse(p: &LatticePath) -> Result<(LatticePath, BijectionTrace)> {
    if p.is_empty() {
        return Ok((LatticePath::new(), BijectionTrace::empty(Direction::Inverse)));
    }
    let class = p.classify();
    if !class.is_unbalanced() {
        return Err(DomainError::NotUnbalanced.into());
    }
    if !p.len().is_multiple_of(2) {
        return Err(DomainError::OddLength.into());
    }
    if class == PathClass::DownUnbalanced {
        let (out, trace) = phi_inverse_up(&p.reflect_all())?;
        return Ok((out.reflect_all(), trace.mirrored()));
    }
    phi_inverse_up(p)
}

/// Runs the map and its inverse in the order appropriate for `p` and checks
/// that `p` comes back unchanged.
pub fn verify_roundtrip(p: &LatticePath) -> Result<bool> {
    if p.is_balanced() {
        let (img, _) = phi(p)?;
        let (back, _) = phi_inverse(&img)?;
        Ok(back == *p)
    } else {
        let (pre, _) = phi_inverse(p)?;
        let (back, _) = phi(&pre)?;
        Ok(back == *p)
    }
}

/// Checks `φ(t1 + t2) = φ(t1) + reflect(t2)` for `t2` no higher than `t1`.
pub fn compose_law_check(t1: &LatticePath, t2: &LatticePath) -> Result<bool> {
    if t1.is_empty() {
        return Err(Error::Precondition("t1 must be nonempty".into()));
    }
    if !t1.is_balanced() {
        return Err(Error::Precondition("t1 must be balanced".into()));
    }
    if t1.step(0) != Step::Up {
        return Err(Error::Precondition("t1 must start with an up step".into()));
    }
    if !t2.is_balanced() {
        return Err(Error::Precondition("t2 must be balanced".into()));
    }
    if t2.max_height().0 > t1.max_height().0 {
        return Err(Error::Precondition(
            "t2 must not rise above the maximum of t1".into(),
        ));
    }
    let (lhs, _) = phi(&t1.concat(t2))?;
    let (head, _) = phi(t1)?;
    Ok(lhs == head.concat(&t2.reflect_all()))
}
