//! Internal structural analysis of candidate blockers.
//!
//! A candidate of the right cardinality either misses two cyclically
//! adjacent directions (which immediately yields an avoiding zigzag) or its
//! directions form a consecutive window of boundary directions. In the
//! windowed case the set is de-rotated so the directions become
//! 1, 3, ..., 2m-3, 0, each direction is assigned its slot 1..m, and each
//! slot edge its offset within the parallel class. Boundary slots, the
//! backbone span, and holes are read off the offsets.

use crate::cyclic_geometry::{boundary_consecutive_window, direction, Edge, EdgeSet};
use crate::error::Error;

/// Slot data in the de-rotated frame: slot i holds the edge of direction
/// 2i-1 mod n, which is [i-1-t, i+t] for a unique offset t.
#[derive(Debug, Clone)]
pub(crate) struct SupportAnalysis {
    pub m: usize,
    /// Window rotation: directions of the original set match the boundary
    /// edges [c, c+1], ..., [c+m-1, c+m].
    pub c: usize,
    /// The candidate rotated by -c, directions 1, 3, ..., 2m-3, 0.
    pub derotated: EdgeSet,
    /// Edge at each slot, index 0 holding slot 1.
    pub slot_edges: Vec<Edge>,
    /// Offset of each slot edge within its parallel class.
    pub offsets: Vec<usize>,
    /// Slots with offset zero, ascending, 1-based.
    pub boundary_slots: Vec<usize>,
    pub backbone: Option<Backbone>,
}

/// Backbone span of the boundary slots: alpha leading non-boundary slots,
/// delta trailing ones, and the holes strictly inside the span.
#[derive(Debug, Clone)]
pub(crate) struct Backbone {
    pub alpha: usize,
    pub delta: usize,
    pub holes: Vec<usize>,
}

/// Direction shape of a candidate with exactly m edges.
#[derive(Debug, Clone)]
pub(crate) enum SupportShape {
    /// Directions d and d+1 are both absent (first such d), which covers
    /// repeated directions as well.
    MissingAdjacentDirections { d: usize },
    Windowed(Box<SupportAnalysis>),
}

impl SupportAnalysis {
    /// Vertices strictly inside the open backbone interior in the
    /// de-rotated frame, empty without a backbone.
    pub fn open_interior(&self, v: usize) -> bool {
        match &self.backbone {
            Some(b) => v > b.alpha && v + b.delta < self.m,
            None => false,
        }
    }

    /// True when v lies outside the closed backbone span [alpha, m-delta].
    pub fn outside_closed_span(&self, v: usize) -> bool {
        match &self.backbone {
            Some(b) => v < b.alpha || v > self.m - b.delta,
            None => true,
        }
    }
}

pub(crate) fn analyze(s: &EdgeSet) -> Result<SupportShape, Error> {
    let n = s.n();
    if n % 2 == 0 {
        return Err(Error::EvenOrder { n });
    }
    let m = (n + 1) / 2;
    if s.len() != m {
        return Err(Error::WrongCardinality { expected: m, actual: s.len() });
    }
    let mut present = vec![false; n];
    for e in s.iter() {
        present[direction(e, n)] = true;
    }
    for d in 0..n {
        if !present[d] && !present[(d + 1) % n] {
            return Ok(SupportShape::MissingAdjacentDirections { d });
        }
    }
    let c = boundary_consecutive_window(s)?
        .expect("no adjacent absent direction pair implies a window");
    let derotated = s.rotated((n - c % n) % n);
    let mut slot_edges = Vec::with_capacity(m);
    let mut offsets = Vec::with_capacity(m);
    for i in 1..=m {
        let d = (2 * i - 1) % n;
        let e = *derotated
            .iter()
            .find(|e| direction(e, n) == d)
            .expect("window provides one edge per slot direction");
        let t = (0..=m - 2)
            .find(|&t| {
                Edge::normalized(i as i64 - 1 - t as i64, i as i64 + t as i64, n) == e
            })
            .expect("slot edge lies in its parallel class");
        slot_edges.push(e);
        offsets.push(t);
    }
    let boundary_slots: Vec<usize> =
        (1..=m).filter(|&i| offsets[i - 1] == 0).collect();
    let backbone = boundary_slots.first().map(|&first| {
        let last = *boundary_slots.last().expect("nonempty");
        Backbone {
            alpha: first - 1,
            delta: m - last,
            holes: (first + 1..last).filter(|&i| offsets[i - 1] != 0).collect(),
        }
    });
    Ok(SupportShape::Windowed(Box::new(SupportAnalysis {
        m,
        c,
        derotated,
        slot_edges,
        offsets,
        boundary_slots,
        backbone,
    })))
}
