//! Certified sign-change counting by grid sampling and bisection.

use rayon::prelude::*;

use super::{grid, Sample, SegmentFunction, Spacing};
use crate::error::{Error, Result};

/// One certified sign alternation: the signs at both ends are certified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignChange {
    pub y_lo: f64,
    pub y_hi: f64,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

/// A certified lower bound on the number of sign changes on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SignCertificate {
    /// Number of brackets; a lower bound for the true number of sign changes.
    pub count: usize,
    /// Disjoint, ordered brackets.
    pub brackets: Vec<SignChange>,
    /// Smallest bracket width (the interval length when there is no bracket).
    pub min_gap: f64,
    /// Runs of points whose sign stayed uncertified at maximal refinement and
    /// which do not lie inside a bracket. Never counted.
    pub undecided: usize,
}

/// Refine `[l, r]` while an endpoint is uncertified, depth-first, left to right.
fn refine<F: SegmentFunction + ?Sized>(
    f: &F,
    l: Sample,
    r: Sample,
    depth: usize,
    max_depth: usize,
    budget: &mut usize,
    out: &mut Vec<Sample>,
) -> Result<()> {
    if depth >= max_depth || *budget == 0 {
        return Ok(());
    }
    if l.certified_sign() != 0 && r.certified_sign() != 0 {
        return Ok(());
    }
    let mid = 0.5 * (l.y + r.y);
    if !(mid > l.y && mid < r.y) {
        return Ok(());
    }
    let m = f.eval(mid)?;
    *budget -= 1;
    refine(f, l, m, depth + 1, max_depth, budget, out)?;
    out.push(m);
    refine(f, m, r, depth + 1, max_depth, budget, out)
}

/// Count certified sign changes of `f` on `[a, b]`.
///
/// `base_grid` uniform cells are sampled at their endpoints. Every cell with
/// an uncertified endpoint is bisected up to `max_depth` levels. Consecutive
/// certified points of opposite sign then form the brackets. Inserting
/// points never removes an alternation, so the count is nondecreasing on
/// nested grids and depths.
pub fn count_sign_changes<F: SegmentFunction + ?Sized>(
    f: &F,
    (a, b): (f64, f64),
    base_grid: usize,
    max_depth: usize,
) -> Result<SignCertificate> {
    if base_grid < 8 {
        return Err(Error::Domain(format!("base_grid must be ≥ 8, got {base_grid}")));
    }
    if !(b > a) {
        return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
    }
    let ys = grid(a, b, base_grid + 1, Spacing::UniformY);
    let base = f.eval_many(&ys)?;
    let budget_per_cell = 4 * (max_depth + 2);
    let inserts: Vec<Vec<Sample>> = (0..base_grid)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut budget = budget_per_cell;
            refine(f, base[i], base[i + 1], 0, max_depth, &mut budget, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(base.len());
    for i in 0..base_grid {
        points.push(base[i]);
        points.extend_from_slice(&inserts[i]);
    }
    points.push(base[base_grid]);
    Ok(assemble(&points, b - a))
}

/// Brackets from consecutive certified points in an ordered point list.
pub(crate) fn assemble(points: &[Sample], length: f64) -> SignCertificate {
    let mut brackets = Vec::new();
    let mut undecided = 0usize;
    let mut last: Option<Sample> = None;
    let mut pending_uncertified = false;
    for p in points {
        let s = p.certified_sign();
        if s == 0 {
            pending_uncertified = true;
            continue;
        }
        match last {
            Some(q) if q.certified_sign() != s => {
                brackets.push(SignChange { y_lo: q.y, y_hi: p.y, sign_lo: q.certified_sign(), sign_hi: s });
            }
            _ => {
                if pending_uncertified {
                    undecided += 1;
                }
            }
        }
        pending_uncertified = false;
        last = Some(*p);
    }
    if pending_uncertified {
        undecided += 1;
    }
    let min_gap = brackets.iter().map(|c| c.y_hi - c.y_lo).fold(length, f64::min);
    SignCertificate { count: brackets.len(), brackets, min_gap, undecided }
}
