//! Simple Hamiltonian paths (SHPs) and the blocking predicate.
//!
//! An SHP visits every vertex once with pairwise non-crossing chords. On a
//! convex point set the prefix of an SHP always leaves a contiguous arc of
//! unvisited vertices, and the next vertex must be one of the two ends of
//! that arc. Enumeration therefore walks the arc ends instead of all
//! permutations, which both proves the count n * 2^(n-3) for n >= 3 and
//! gives a fast exhaustive search for paths avoiding a forbidden edge set.

use crate::cyclic_geometry::{crosses, distance, is_boundary, Edge, EdgeSet};
use crate::error::Error;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::ControlFlow;

/// Sequence of distinct vertices of the n point convex position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    n: usize,
    vertices: Vec<usize>,
}

impl Path {
    /// Builds a path, validating vertex range and distinctness.
    pub fn new(n: usize, vertices: Vec<usize>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::OrderTooSmall { n, min: 1 });
        }
        let mut seen = vec![false; n];
        for &v in &vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if seen[v] {
                return Err(Error::LoopEdge { v });
            }
            seen[v] = true;
        }
        Ok(Path { n, vertices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive edges of the path.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]).expect("path vertices are distinct"))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { n: self.n, vertices }
    }

    pub fn rotated(&self, k: usize) -> Self {
        let vertices = self.vertices.iter().map(|&v| (v + k) % self.n).collect();
        Path { n: self.n, vertices }
    }

    /// True when no path edge lies in the given set.
    pub fn avoids(&self, s: &EdgeSet) -> bool {
        self.edges().all(|e| !s.contains(&e))
    }
}

/// Paths serialize as a bare vertex array. Deserialization reads a spanning
/// path, so the order is the array length.
impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        Path::new(vertices.len(), vertices).map_err(D::Error::custom)
    }
}

/// True when the path is spanning and its edges are pairwise non-crossing.
pub fn is_shp(p: &Path) -> bool {
    if p.len() != p.n() {
        return false;
    }
    let edges: Vec<Edge> = p.edges().collect();
    for (i, e1) in edges.iter().enumerate() {
        for e2 in &edges[i + 1..] {
            if crosses(e1, e2, p.n()) {
                return false;
            }
        }
    }
    true
}

/// Incidence mask for O(1) forbidden edge lookups during the walk.
fn forbidden_mask(s: &EdgeSet) -> Vec<bool> {
    let n = s.n();
    let mut mask = vec![false; n * n];
    for e in s.iter() {
        mask[e.a() * n + e.b()] = true;
        mask[e.b() * n + e.a()] = true;
    }
    mask
}

/// Walks every SHP avoiding the masked edges, in deterministic order:
/// start vertices ascending, then at each step the two unvisited arc ends
/// ordered by cyclic distance from the current endpoint (ties to the smaller
/// vertex). Each undirected path is reported once, oriented so that the
/// first vertex is smaller than the last.
fn visit_shps<F>(n: usize, mask: &[bool], f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if n == 1 {
        return f(&[0]);
    }
    let mut path = Vec::with_capacity(n);
    for start in 0..n {
        path.clear();
        path.push(start);
        extend(n, mask, &mut path, (start + 1) % n, (start + n - 1) % n, n - 1, f)?;
    }
    ControlFlow::Continue(())
}

fn extend<F>(
    n: usize,
    mask: &[bool],
    path: &mut Vec<usize>,
    lo: usize,
    hi: usize,
    remaining: usize,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if remaining == 0 {
        if path[0] < path[path.len() - 1] {
            return f(path);
        }
        return ControlFlow::Continue(());
    }
    let cur = path[path.len() - 1];
    let mut candidates = [lo, hi];
    if remaining > 1 {
        let key = |v: usize| (distance(cur, v, n), v);
        if key(candidates[1]) < key(candidates[0]) {
            candidates.swap(0, 1);
        }
    }
    let count = if remaining == 1 { 1 } else { 2 };
    for &next in &candidates[..count] {
        if mask[cur * n + next] {
            continue;
        }
        path.push(next);
        let (nlo, nhi) = if next == lo { ((lo + 1) % n, hi) } else { (lo, (hi + n - 1) % n) };
        extend(n, mask, path, nlo, nhi, remaining - 1, f)?;
        path.pop();
    }
    ControlFlow::Continue(())
}

/// All SHPs of order n in deterministic order.
pub fn enumerate_shps(n: usize) -> Vec<Path> {
    let mask = vec![false; n * n];
    let mut out = Vec::new();
    let _ = visit_shps(n, &mask, &mut |vs: &[usize]| {
        out.push(Path { n, vertices: vs.to_vec() });
        ControlFlow::Continue(())
    });
    out
}

/// Number of SHPs of order n: n * 2^(n-3) for n >= 3, one for n in {1, 2}.
pub fn shp_count(n: usize) -> u128 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => n as u128 * (1u128 << (n - 3)),
    }
}

/// First SHP in enumeration order that uses no edge of s, if any.
pub fn find_avoiding_shp(s: &EdgeSet) -> Option<Path> {
    let n = s.n();
    let mask = forbidden_mask(s);
    let mut found = None;
    let _ = visit_shps(n, &mask, &mut |vs: &[usize]| {
        found = Some(Path { n, vertices: vs.to_vec() });
        ControlFlow::Break(())
    });
    if let Some(p) = &found {
        debug_assert!(is_shp(p) && p.avoids(s), "witness must be an avoiding SHP");
    }
    found
}

/// True when every SHP meets s, established by exhausting the arc walk.
pub fn blocks(s: &EdgeSet) -> bool {
    find_avoiding_shp(s).is_none()
}

/// Alternating reflection walk: starting from `start`, applies the circle
/// reflections v -> d_first - v and v -> d_second - v in turn, one per edge.
/// Every produced edge has direction d_first or d_second.
pub(crate) fn reflection_walk(
    n: usize,
    start: i64,
    d_first: i64,
    d_second: i64,
    edge_count: usize,
) -> Vec<usize> {
    let n_i = n as i64;
    let mut v = start.rem_euclid(n_i);
    let mut out = Vec::with_capacity(edge_count + 1);
    out.push(v as usize);
    for t in 0..edge_count {
        let d = if t % 2 == 0 { d_first } else { d_second };
        v = (d - v).rem_euclid(n_i);
        out.push(v as usize);
    }
    out
}

/// Zigzag SHP through the two parallel classes of directions a and a+1
/// (odd n). It starts at the vertex missed by class a+1, ends at the vertex
/// missed by class a, and uses only edges of those two directions, so it
/// avoids every edge set whose directions omit both a and a+1.
pub fn zigzag_shp(n: usize, a: usize) -> Result<Path, Error> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder { n });
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    let m = ((n + 1) / 2) as i64;
    let a = (a % n) as i64;
    let start = (a + 1) * m;
    let p = Path::new(n, reflection_walk(n, start, a, a + 1, n - 1))?;
    debug_assert!(is_shp(&p), "zigzag walk must span without crossings");
    Ok(p)
}

/// The SHP consisting of all boundary edges except the given one: from u+1
/// clockwise all the way around to u, where e = [u, u+1]. Avoids every edge
/// set whose only boundary edge is e (or that has no boundary edge at all).
pub fn boundary_complement_shp(n: usize, e: &Edge) -> Result<Path, Error> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    if e.b() >= n {
        return Err(Error::VertexOutOfRange { v: e.b(), n });
    }
    if !is_boundary(e, n) {
        return Err(Error::NotBoundaryEdge { a: e.a(), b: e.b(), n });
    }
    let u = if e.b() == e.a() + 1 { e.a() } else { n - 1 };
    let vertices: Vec<usize> = (1..=n).map(|t| (u + t) % n).collect();
    let p = Path::new(n, vertices)?;
    debug_assert!(is_shp(&p));
    Ok(p)
}
