//! Multigraphs, orientation data and canonical labeling.
//!
//! A [`Multigraph`] is a loop-free multigraph whose edge list is kept in
//! lexicographic normal form. Generators of the graph complexes are pairs of
//! such a graph and an orientation datum, which depends on the [`Parity`]:
//!
//! * `Even`: an ordering of the edges. The stored orientation is the order of
//!   the sorted edge list.
//! * `Odd`: an ordering of the vertices together with a direction on every
//!   edge. The stored orientation is the vertex order `0..n` with every edge
//!   directed from its smaller to its larger endpoint.
//!
//! [`canonicalize`] picks a canonical representative of each isomorphism class
//! and returns the sign relating the input orientation to the canonical one,
//! or [`CanonicalResult::Zero`] if the graph has an orientation-reversing
//! automorphism.

mod canon;
mod connectivity;

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use canon::canonical_edges_with_loops;
pub use canon::{automorphism_group_size, canonical_form, canonicalize};
pub use connectivity::{is_connected, is_triconnected};

/// Vertex labels are stored as bytes; graphs in these complexes are small.
pub type Vertex = u8;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-edge at vertex {0}")]
    SelfEdge(usize),
    #[error("edge endpoint {vertex} out of range for {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("malformed graph line: {0}")]
    Parse(String),
    #[error("unknown parity {0:?}, expected even or odd")]
    UnknownParity(String),
}

/// Parity of `n`: selects the orientation datum and therefore every sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The representative `n` used for degree conventions (2 or 3).
    pub fn representative_n(self) -> i64 {
        match self {
            Parity::Even => 2,
            Parity::Odd => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parity {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" | "2" => Ok(Parity::Even),
            "odd" | "3" => Ok(Parity::Odd),
            _ => Err(GraphError::UnknownParity(s.to_string())),
        }
    }
}

/// A sign in `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity_of(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Outcome of canonical labeling under a parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalResult {
    /// The graph has an automorphism acting by `-1` on its orientation.
    Zero,
    /// `input = sign * canonical` as oriented graphs.
    Nonzero { graph: Multigraph, sign: Sign },
}

impl CanonicalResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, CanonicalResult::Zero)
    }

    pub fn graph(&self) -> Option<&Multigraph> {
        match self {
            CanonicalResult::Zero => None,
            CanonicalResult::Nonzero { graph, .. } => Some(graph),
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            CanonicalResult::Zero => None,
            CanonicalResult::Nonzero { sign, .. } => Some(*sign),
        }
    }
}

/// Connected or not, loop-free multigraph with a sorted edge list.
///
/// The derived ordering compares vertex counts first and then edge lists
/// lexicographically; within a fixed vertex count this is the canonical-form
/// order used to sort bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multigraph {
    num_vertices: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    /// Builds a multigraph, normalizing each edge to `(min, max)` and sorting.
    pub fn new<I>(num_vertices: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if num_vertices > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(num_vertices));
        }
        let mut out = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        num_vertices,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfEdge(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            out.push((a as Vertex, b as Vertex));
        }
        out.sort_unstable();
        Ok(Multigraph {
            num_vertices,
            edges: out,
        })
    }

    /// Caller guarantees normalized, sorted, loop-free edges.
    pub(crate) fn from_sorted(num_vertices: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| u < v && (v as usize) < num_vertices));
        Multigraph {
            num_vertices,
            edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// First Betti number `E - V + 1` (meaningful for connected graphs).
    pub fn loop_order(&self) -> i64 {
        self.edges.len() as i64 - self.num_vertices as i64 + 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.edges.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_simple(&self) -> bool {
        !self.has_parallel_edges()
    }

    /// Applies the vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.num_vertices, "permutation size mismatch");
        let mut edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u as usize] as Vertex, perm[v as usize] as Vertex);
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort_unstable();
        Multigraph::from_sorted(self.num_vertices, edges)
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v as usize);
            adj[v as usize].push(u as usize);
        }
        adj
    }
}

/// The orientation sign picked up by relabeling `g` with `perm`
/// (`v -> perm[v]`): `(g, o_g) = sign * (perm·g, o_std)`.
pub fn orientation_sign(g: &Multigraph, perm: &[usize], parity: Parity) -> Sign {
    edge_list_sign(&g.edges, perm, parity)
}

pub(crate) fn edge_list_sign(edges: &[(Vertex, Vertex)], perm: &[usize], parity: Parity) -> Sign {
    match parity {
        Parity::Even => {
            let mapped: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u as usize], perm[v as usize]);
                    (a.min(b), a.max(b))
                })
                .collect();
            Sign::from_parity_of(inversions(&mapped))
        }
        Parity::Odd => {
            let reversed = edges
                .iter()
                .filter(|&&(u, v)| perm[u as usize] > perm[v as usize])
                .count();
            Sign::from_parity_of(inversions(perm) + reversed)
        }
    }
}

/// Number of strictly inverted pairs.
pub(crate) fn inversions<T: Ord>(items: &[T]) -> usize {
    let mut count = 0;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                count += 1;
            }
        }
    }
    count
}

/// Text format: `V E u1 v1 ... uE vE`.
impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.num_vertices, self.edges.len())?;
        for &(u, v) in &self.edges {
            write!(f, " {u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let nums: Vec<usize> = s
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| GraphError::Parse(format!("{s:?}: {e}")))?;
        if nums.len() < 2 {
            return Err(GraphError::Parse(format!("{s:?}: missing header")));
        }
        let (n, e) = (nums[0], nums[1]);
        if nums.len() != 2 + 2 * e {
            return Err(GraphError::Parse(format!(
                "{s:?}: expected {} edge endpoints, found {}",
                2 * e,
                nums.len() - 2
            )));
        }
        Multigraph::new(n, nums[2..].chunks(2).map(|c| (c[0], c[1])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn theta() -> Multigraph {
        Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    pub(crate) fn tetrahedron() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_self_edges() {
        assert_eq!(
            Multigraph::new(3, [(0, 1), (2, 2)]),
            Err(GraphError::SelfEdge(2))
        );
        assert!(matches!(
            Multigraph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn edges_are_normalized_and_sorted() {
        let g = Multigraph::new(3, [(2, 0), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.loop_order(), 1);
    }

    #[test]
    fn text_format() {
        let g = tetrahedron();
        let line = g.to_string();
        assert_eq!(line, "4 6 0 1 0 2 0 3 1 2 1 3 2 3");
        assert_eq!(line.parse::<Multigraph>().unwrap(), g);
        assert!("3 2 0 1".parse::<Multigraph>().is_err());
        assert!("2 1 0 0".parse::<Multigraph>().is_err());
    }

    #[test]
    fn odd_sign_of_vertex_swap_on_theta() {
        // swapping the two vertices reverses all three edges
        let s = orientation_sign(&theta(), &[1, 0], Parity::Odd);
        assert_eq!(s, Sign::Plus);
        let s = orientation_sign(&theta(), &[0, 1], Parity::Odd);
        assert_eq!(s, Sign::Plus);
    }

    #[test]
    fn even_sign_is_edge_permutation_parity() {
        // path 0-1-2 relabeled by swapping 0 and 2: edges (0,1),(1,2) -> (1,2),(0,1)
        let p = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(orientation_sign(&p, &[2, 1, 0], Parity::Even), Sign::Minus);
        // odd vertex permutation, both edges reversed
        assert_eq!(orientation_sign(&p, &[2, 1, 0], Parity::Odd), Sign::Minus);
        // a transposition reversing one edge
        assert_eq!(orientation_sign(&p, &[1, 0, 2], Parity::Odd), Sign::Plus);
    }
}
