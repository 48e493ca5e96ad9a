use rayon::prelude::*;

use super::{BasisSlice, ComplexError, IntSparseMatrix, Variant};
use crate::graphs::{
    canonicalize, inversions, is_triconnected, CanonicalResult, Multigraph, Parity, Sign, Vertex,
};

/// Contracts the edge at `edge_index` of the sorted edge list.
///
/// Orientation conventions: for even parity the contracted edge is moved to
/// the front of the edge order and removed, the remaining edges keep their
/// order. For odd parity the edge is directed from its smaller endpoint `u` to
/// its larger endpoint `v`, `v` is moved to the last position and merged into
/// `u`, and the other vertices and edge directions are kept. Other edges
/// between `u` and `v` would become tadpoles, so the result is then zero.
pub fn contract_edge(
    g: &Multigraph,
    edge_index: usize,
    parity: Parity,
) -> Result<CanonicalResult, ComplexError> {
    let edges = g.edges();
    let Some(&(u, v)) = edges.get(edge_index) else {
        return Err(ComplexError::EdgeIndex {
            index: edge_index,
            edges: edges.len(),
        });
    };
    let n = g.num_vertices();
    let relabel = |w: Vertex| -> Vertex {
        if w == v {
            u
        } else if w > v {
            w - 1
        } else {
            w
        }
    };
    let mut sign = match parity {
        Parity::Even => Sign::from_parity_of(edge_index),
        Parity::Odd => Sign::from_parity_of(n - 1 - v as usize),
    };
    let mut rest: Vec<(Vertex, Vertex)> = Vec::with_capacity(edges.len() - 1);
    let mut reversed = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if i == edge_index {
            continue;
        }
        if (a, b) == (u, v) {
            return Ok(CanonicalResult::Zero);
        }
        let (a, b) = (relabel(a), relabel(b));
        if a > b {
            reversed += 1;
            rest.push((b, a));
        } else {
            rest.push((a, b));
        }
    }
    match parity {
        Parity::Even => sign *= Sign::from_parity_of(inversions(&rest)),
        Parity::Odd => sign *= Sign::from_parity_of(reversed),
    }
    rest.sort_unstable();
    let h = Multigraph::new(n - 1, rest.iter().map(|&(a, b)| (a as usize, b as usize)))?;
    Ok(match canonicalize(&h, parity) {
        CanonicalResult::Zero => CanonicalResult::Zero,
        CanonicalResult::Nonzero { graph, sign: s } => CanonicalResult::Nonzero {
            graph,
            sign: sign * s,
        },
    })
}

/// Matrix of the contraction differential from `src` (columns) to `dst`
/// (rows), which must be the slice with one vertex fewer.
///
/// In the triconnected variant images that are not triconnected are dropped;
/// any other image missing from `dst` is an error.
pub fn differential_matrix(
    src: &BasisSlice,
    dst: &BasisSlice,
) -> Result<IntSparseMatrix, ComplexError> {
    if src.spec() != dst.spec() || dst.num_vertices() + 1 != src.num_vertices() {
        return Err(ComplexError::SliceMismatch(format!(
            "{} at {} vertices -> {} at {} vertices",
            src.spec(),
            src.num_vertices(),
            dst.spec(),
            dst.num_vertices()
        )));
    }
    let spec = src.spec();
    let columns: Vec<Vec<(usize, i64)>> = src
        .generators()
        .par_iter()
        .map(|g| -> Result<Vec<(usize, i64)>, ComplexError> {
            let mut col = Vec::new();
            for e in 0..g.num_edges() {
                let CanonicalResult::Nonzero { graph, sign } = contract_edge(g, e, spec.parity)?
                else {
                    continue;
                };
                match dst.index_of(&graph) {
                    Some(row) => col.push((row, sign.to_i64())),
                    None if spec.variant == Variant::Triconnected && !is_triconnected(&graph) => {}
                    None => return Err(ComplexError::MissingImage(graph.to_string())),
                }
            }
            Ok(col)
        })
        .collect::<Result<_, _>>()?;
    IntSparseMatrix::from_triplets(
        dst.len(),
        src.len(),
        columns
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
    )
}
