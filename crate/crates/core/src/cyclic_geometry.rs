//! Convex position geometry on the cyclic vertex set 0..n.
//!
//! Vertices sit clockwise on a circle, so every geometric notion reduces to
//! modular arithmetic: an edge is an unordered pair of distinct vertices, the
//! direction of an edge is the sum of its endpoints mod n, and two chords
//! cross exactly when their endpoints interleave around the circle. For odd n
//! the n directions partition the edges into parallel classes and each class
//! contains exactly one boundary edge (a polygon side).

use crate::error::Error;
use serde::{Deserialize, Serialize};

/// Unordered pair of distinct vertices, stored with `a < b`.
///
/// Vertex range is validated against a concrete order n wherever an `Edge`
/// enters an [`EdgeSet`] or an operation that takes n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    /// Builds an edge, rejecting loops and normalizing endpoint order.
    pub fn new(a: usize, b: usize) -> Result<Self, Error> {
        if a == b {
            return Err(Error::LoopEdge { v: a });
        }
        Ok(if a < b { Edge { a, b } } else { Edge { a: b, b: a } })
    }

    /// Reduces signed endpoint arithmetic mod n and canonicalizes.
    /// Panics on a loop, which construction code treats as an internal bug.
    pub(crate) fn normalized(a: i64, b: i64, n: usize) -> Self {
        let n = n as i64;
        let a = a.rem_euclid(n) as usize;
        let b = b.rem_euclid(n) as usize;
        Edge::new(a, b).expect("construction produced a loop edge")
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }

    /// Rotates both endpoints clockwise by k.
    pub fn rotated(&self, k: usize, n: usize) -> Self {
        Edge::normalized((self.a + k) as i64, (self.b + k) as i64, n)
    }
}

impl TryFrom<(usize, usize)> for Edge {
    type Error = Error;

    fn try_from((a, b): (usize, usize)) -> Result<Self, Error> {
        Edge::new(a, b)
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.a, e.b)
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// Finite edge set over a fixed order n, kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeSetRepr", into = "EdgeSetRepr")]
pub struct EdgeSet {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct EdgeSetRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<EdgeSetRepr> for EdgeSet {
    type Error = Error;

    fn try_from(repr: EdgeSetRepr) -> Result<Self, Error> {
        EdgeSet::from_edges(repr.n, repr.edges)
    }
}

impl From<EdgeSet> for EdgeSetRepr {
    fn from(s: EdgeSet) -> Self {
        EdgeSetRepr { n: s.n, edges: s.edges }
    }
}

impl EdgeSet {
    /// Builds a set from arbitrary edges, validating vertex range and
    /// normalizing to sorted order without duplicates.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::OrderTooSmall { n, min: 1 });
        }
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for e in &edges {
            if e.b >= n {
                return Err(Error::VertexOutOfRange { v: e.b, n });
            }
        }
        edges.sort();
        edges.dedup();
        Ok(EdgeSet { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        EdgeSet::from_edges(n, []).expect("order must be positive")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Rotates every edge clockwise by k.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.n;
        EdgeSet::from_edges(n, self.edges.iter().map(|e| e.rotated(k, n)))
            .expect("rotation preserves validity")
    }

    /// Lexicographically least rotation of the set together with the smallest
    /// rotation amount achieving it. Canonical key for rotation classes.
    pub fn canonical_rotation(&self) -> (EdgeSet, usize) {
        let mut best = self.rotated(0);
        let mut best_k = 0;
        for k in 1..self.n {
            let cand = self.rotated(k);
            if cand.edges < best.edges {
                best = cand;
                best_k = k;
            }
        }
        (best, best_k)
    }

    /// Parses the CLI edge list syntax "a-b,c-d,...". Whitespace around
    /// tokens is tolerated; an empty string denotes the empty set.
    pub fn parse_edge_list(n: usize, text: &str) -> Result<Self, Error> {
        let mut edges = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            let syntax = || Error::EdgeSyntax { token: token.to_string() };
            let (a, b) = token.split_once('-').ok_or_else(syntax)?;
            let a: usize = a.trim().parse().map_err(|_| syntax())?;
            let b: usize = b.trim().parse().map_err(|_| syntax())?;
            edges.push(Edge::new(a, b)?);
        }
        EdgeSet::from_edges(n, edges)
    }

    /// Renders the set in the CLI edge list syntax.
    pub fn to_edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|e| format!("{}-{}", e.a, e.b))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Direction of an edge: endpoint sum mod n. Parallel edges share it.
pub fn direction(e: &Edge, n: usize) -> usize {
    (e.a + e.b) % n
}

/// Cyclic distance between two vertices, the shorter way around.
pub fn distance(u: usize, v: usize, n: usize) -> usize {
    let d = (u as i64 - v as i64).rem_euclid(n as i64) as usize;
    d.min(n - d)
}

/// True when x lies strictly inside the clockwise arc from a to b.
pub(crate) fn in_open_arc(n: usize, x: usize, a: usize, b: usize) -> bool {
    let n = n as i64;
    let off = (x as i64 - a as i64).rem_euclid(n);
    let span = (b as i64 - a as i64).rem_euclid(n);
    0 < off && off < span
}

/// True when the chords cross in convex position: all four endpoints are
/// distinct and the endpoints interleave around the circle. Chords that only
/// share an endpoint do not cross.
pub fn crosses(e1: &Edge, e2: &Edge, n: usize) -> bool {
    if e1.shares_endpoint(e2) {
        return false;
    }
    in_open_arc(n, e2.a, e1.a, e1.b) != in_open_arc(n, e2.b, e1.a, e1.b)
}

/// Rotates an edge clockwise by k. Free function form of [`Edge::rotated`].
pub fn rotate(e: &Edge, k: usize, n: usize) -> Edge {
    e.rotated(k, n)
}

/// True when the edge is a polygon side.
pub fn is_boundary(e: &Edge, n: usize) -> bool {
    distance(e.a, e.b, n) == 1
}

/// All edges of a given direction. For odd n this parallel class has
/// (n+1)/2 - 1 edges and misses exactly one vertex.
pub fn parallel_class(n: usize, dir: usize) -> Vec<Edge> {
    let mut edges = Vec::new();
    for a in 0..n {
        let b = (dir + n - a) % n;
        if a < b {
            edges.push(Edge { a, b });
        }
    }
    edges
}

/// The unique vertex missed by the parallel class of direction dir (odd n):
/// the solution of 2x = dir mod n.
pub fn class_missing_vertex(n: usize, dir: usize) -> usize {
    debug_assert!(n % 2 == 1);
    let m = (n + 1) / 2;
    (dir * m) % n
}

/// The unique boundary edge of direction dir (odd n).
pub fn boundary_edge_with_direction(n: usize, dir: usize) -> Edge {
    debug_assert!(n % 2 == 1);
    let m = (n + 1) / 2;
    let t = ((dir + n - 1) % n) * m % n;
    Edge::normalized(t as i64, t as i64 + 1, n)
}

/// Detects whether the directions of a candidate blocker form a window of
/// consecutive boundary directions and returns the rotation offset c such
/// that the directions are exactly those of the boundary edges
/// [c, c+1], ..., [c+m-1, c+m].
///
/// Requires odd n = 2m-1 and exactly m edges; any other cardinality is not a
/// candidate blocker. Returns None when some direction repeats or the m
/// directions are not consecutive in the boundary order.
pub fn boundary_consecutive_window(s: &EdgeSet) -> Result<Option<usize>, Error> {
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
    // m present directions among n = 2m-1 form a window exactly when no two
    // absent directions are cyclically adjacent.
    for d in 0..n {
        if !present[d] && !present[(d + 1) % n] {
            return Ok(None);
        }
    }
    // The window contains exactly one adjacent present pair (2c, 2c+1).
    let mut c = None;
    for d in 0..n {
        if present[d] && present[(d + 1) % n] {
            debug_assert!(c.is_none(), "window has a unique adjacent direction pair");
            c = Some(class_missing_vertex(n, d));
        }
    }
    let c = c.expect("no adjacent absent pair implies an adjacent present pair");
    for t in 0..m {
        debug_assert!(present[(2 * (c + t) + 1) % n], "window directions must all be present");
    }
    Ok(Some(c))
}
