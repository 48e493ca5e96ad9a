//! Graph families by vertex splitting.
//!
//! Let `F_V` be the isomorphism classes of connected graphs with `V` vertices,
//! `V + g - 1` edges and every vertex of degree at least three, where loops are
//! allowed and count twice towards the degree. Contracting a non-loop edge
//! maps `F_V` into `F_{V-1}`, and every graph in `F_V` has such an edge, so
//! `F_V` is exactly the set of graphs obtained from `F_{V-1}` by splitting one
//! vertex into two joined by a new edge, each side keeping at least two
//! half-edges. `F_1` is the rose with `g` loops.

use std::collections::HashSet;

use rayon::prelude::*;

use super::ComplexError;
use crate::graphs::{canonical_edges_with_loops, Vertex};

pub type EdgeList = Vec<(Vertex, Vertex)>;

/// Default bound on the number of graphs held at any generation level.
pub const DEFAULT_GENERATOR_CAP: usize = 5_000_000;

/// Levels `F_1..=F_max` indexed by vertex count (`levels[0]` is empty).
///
/// Graphs with loops on more vertices than there are remaining splits can
/// never become loop-free by `max_vertices` and are pruned.
pub(crate) fn generate_levels(
    loops: usize,
    max_vertices: usize,
    cap: usize,
) -> Result<Vec<Vec<EdgeList>>, ComplexError> {
    let rose: EdgeList = vec![(0, 0); loops];
    let mut levels: Vec<Vec<EdgeList>> = vec![Vec::new(), vec![rose]];
    for n in 2..=max_vertices {
        let prev = &levels[n - 1];
        let budget = max_vertices - n;
        let set = prev
            .par_iter()
            .fold(HashSet::new, |mut acc, g| {
                split_all(n - 1, g, budget, &mut acc);
                acc
            })
            .reduce(HashSet::new, |a, b| {
                if a.len() < b.len() {
                    merge(b, a)
                } else {
                    merge(a, b)
                }
            });
        if set.len() > cap {
            return Err(ComplexError::GeneratorCap {
                count: set.len(),
                vertices: n,
                cap,
            });
        }
        let mut level: Vec<EdgeList> = set.into_iter().collect();
        level.par_sort_unstable();
        levels.push(level);
    }
    Ok(levels)
}

fn merge(mut a: HashSet<EdgeList>, b: HashSet<EdgeList>) -> HashSet<EdgeList> {
    a.extend(b);
    a
}

/// All splits of all vertices of the `n`-vertex graph `edges`, canonicalized.
fn split_all(n: usize, edges: &[(Vertex, Vertex)], budget: usize, out: &mut HashSet<EdgeList>) {
    let new = n as Vertex;
    let mut half: Vec<(usize, bool)> = Vec::new();
    let mut work: EdgeList = Vec::with_capacity(edges.len() + 1);
    for x in 0..n as Vertex {
        half.clear();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == x {
                half.push((i, false));
            }
            if v == x {
                half.push((i, true));
            }
        }
        let d = half.len();
        if d < 4 {
            continue;
        }
        // the first half-edge stays on x
        for mask in 0u64..(1u64 << (d - 1)) {
            let moved = mask.count_ones() as usize;
            if moved < 2 || d - moved < 2 {
                continue;
            }
            work.clear();
            work.extend_from_slice(edges);
            for (bit, &(i, second)) in half[1..].iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    if second {
                        work[i].1 = new;
                    } else {
                        work[i].0 = new;
                    }
                }
            }
            work.push((x, new));
            for e in work.iter_mut() {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            }
            if loop_vertices(&work) > budget {
                continue;
            }
            out.insert(canonical_edges_with_loops(n + 1, &work));
        }
    }
}

fn loop_vertices(edges: &[(Vertex, Vertex)]) -> usize {
    let mut seen: u64 = 0;
    for &(u, v) in edges {
        if u == v {
            seen |= 1 << u;
        }
    }
    seen.count_ones() as usize
}

pub(crate) fn has_loop(edges: &[(Vertex, Vertex)]) -> bool {
    edges.iter().any(|&(u, v)| u == v)
}
