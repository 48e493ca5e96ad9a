//! Upper bounds on top-degree cohomology from barrel graphs.
//!
//! Every top-degree class is cohomologous to a combination of barrel graphs
//! `B_pi`, two `N`-cycles joined by a perfect matching. Relations among them
//! come from the splitting differential applied to the near-barrel family
//! `V_g` spanned by `X_pi` and `Y_pi`, whose images lie in `B_g` plus the
//! complement family spanned by `A_pi` and `A'_pi`. With `d` the restricted
//! differential into `B_g (+) B_g^perp`,
//!
//! `dim H^top <= dim B_g - rank d + dim B_g^perp`.
//!
//! Simple graphs span a subcomplex with the same cohomology; graphs with
//! multiple edges are left out throughout. The splitting differential is, in bases of canonical graphs, the transpose
//! of the contraction differential up to nonzero diagonal factors (orders of
//! automorphism groups), so its rank is computed from contraction
//! coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{contract_edge, ComplexError, IntSparseMatrix};
use crate::graphs::{
    canonical_form, canonicalize, CanonicalResult, GraphError, Multigraph, Parity,
};
use crate::linalg::{
    gauss_rank, reduce_mod_p, wiedemann_rank, LinalgError, PivotStrategy, PrimeField, RankMethod,
};

/// Largest loop order accepted.
pub const MAX_LOOPS: usize = 10;

#[derive(Debug, Error)]
pub enum KneisslerError {
    #[error("barrel graphs need at least 2 rungs, got {0}")]
    TooFewRungs(usize),
    #[error("{0:?} is not a permutation of 0..{len}", len = .0.len())]
    NotAPermutation(Vec<usize>),
    #[error("loop order {loops} is not supported for {parity} parity")]
    Unsupported { loops: usize, parity: Parity },
    #[error("splitting {source_graph} produces {image}, which lies outside the barrel families")]
    ImageOutsideSpan { source_graph: String, image: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    B,
    X,
    Y,
    A,
    APrime,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::B => "B",
            FamilyKind::X => "X",
            FamilyKind::Y => "Y",
            FamilyKind::A => "A",
            FamilyKind::APrime => "A'",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(FamilyKind::B),
            "X" | "x" => Ok(FamilyKind::X),
            "Y" | "y" => Ok(FamilyKind::Y),
            "A" | "a" => Ok(FamilyKind::A),
            "A'" | "a'" | "Aprime" | "aprime" => Ok(FamilyKind::APrime),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// Nonzero canonical graphs of one family, each with the permutations that
/// produce it.
#[derive(Debug, Clone)]
pub struct BarrelFamily {
    pub g: usize,
    pub parity: Parity,
    pub kind: FamilyKind,
    pub representatives: BTreeMap<Multigraph, Vec<Vec<usize>>>,
}

impl BarrelFamily {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Multigraph> {
        self.representatives.keys()
    }
}

fn check_permutation(perm: &[usize]) -> Result<(), KneisslerError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(KneisslerError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(())
}

fn cycle(vertices: &[usize], edges: &mut Vec<(usize, usize)>) {
    let n = vertices.len();
    for i in 0..n {
        edges.push((vertices[i], vertices[(i + 1) % n]));
    }
}

/// The barrel graph on `2N` vertices: upper rim `0..N`, lower rim `N..2N`,
/// rung `i -> N + perm[i]`. For `N = 2` each rim is a doubled edge.
pub fn barrel(perm: &[usize]) -> Result<Multigraph, KneisslerError> {
    let n = perm.len();
    if n < 2 {
        return Err(KneisslerError::TooFewRungs(n));
    }
    check_permutation(perm)?;
    let upper: Vec<usize> = (0..n).collect();
    let lower: Vec<usize> = (n..2 * n).collect();
    let mut edges = Vec::with_capacity(3 * n);
    cycle(&upper, &mut edges);
    cycle(&lower, &mut edges);
    edges.extend((0..n).map(|i| (i, n + perm[i])));
    Ok(Multigraph::new(2 * n, edges)?)
}

/// `X_pi`: upper rim of size `M = perm.len()`, lower rim `w_0..w_M`, the
/// fixed rung `u_0 - w_0` and rungs `u_i - w_{1 + perm[i]}`; `u_0` is
/// 4-valent.
fn x_graph(perm: &[usize]) -> Result<Multigraph, KneisslerError> {
    let m = perm.len();
    let upper: Vec<usize> = (0..m).collect();
    let lower: Vec<usize> = (m..2 * m + 1).collect();
    let mut edges = Vec::new();
    cycle(&upper, &mut edges);
    cycle(&lower, &mut edges);
    edges.push((upper[0], lower[0]));
    edges.extend((0..m).map(|i| (upper[i], lower[1 + perm[i]])));
    Ok(Multigraph::new(2 * m + 1, edges)?)
}

/// `Y_pi`: rims of size `M`, a vertex `l` joined to `w_0` and `u_0`; rung
/// targets are `[l, w_1, .., w_{M-1}]`, so `u_0` is 4-valent and `perm[0] = 0`
/// doubles the edge `u_0 - l`.
fn y_graph(perm: &[usize]) -> Result<Multigraph, KneisslerError> {
    let m = perm.len();
    let upper: Vec<usize> = (0..m).collect();
    let lower: Vec<usize> = (m..2 * m).collect();
    let l = 2 * m;
    let target = |j: usize| if j == 0 { l } else { lower[j] };
    let mut edges = Vec::new();
    cycle(&upper, &mut edges);
    cycle(&lower, &mut edges);
    edges.push((l, lower[0]));
    edges.push((upper[0], l));
    edges.extend((0..m).map(|i| (upper[i], target(perm[i]))));
    Ok(Multigraph::new(2 * m + 1, edges)?)
}

/// `A_pi`: `X_pi` with `u_0` split into a rim vertex and a vertex `z` carrying
/// both of `u_0`'s rungs.
fn a_graph(perm: &[usize]) -> Result<Multigraph, KneisslerError> {
    let m = perm.len();
    let upper: Vec<usize> = (0..m).collect();
    let lower: Vec<usize> = (m..2 * m + 1).collect();
    let z = 2 * m + 1;
    let mut edges = Vec::new();
    cycle(&upper, &mut edges);
    cycle(&lower, &mut edges);
    edges.push((upper[0], z));
    edges.push((z, lower[0]));
    edges.push((z, lower[1 + perm[0]]));
    edges.extend((1..m).map(|i| (upper[i], lower[1 + perm[i]])));
    Ok(Multigraph::new(2 * m + 2, edges)?)
}

/// `A'_pi`: `Y_pi` with `u_0` split into a rim vertex and a vertex `z`
/// carrying the edge to `l` and the rung of `u_0`.
fn a_prime_graph(perm: &[usize]) -> Result<Multigraph, KneisslerError> {
    let m = perm.len();
    let upper: Vec<usize> = (0..m).collect();
    let lower: Vec<usize> = (m..2 * m).collect();
    let l = 2 * m;
    let z = 2 * m + 1;
    let target = |j: usize| if j == 0 { l } else { lower[j] };
    let mut edges = Vec::new();
    cycle(&upper, &mut edges);
    cycle(&lower, &mut edges);
    edges.push((l, lower[0]));
    edges.push((upper[0], z));
    edges.push((z, l));
    edges.push((z, target(perm[0])));
    edges.extend((1..m).map(|i| (upper[i], target(perm[i]))));
    Ok(Multigraph::new(2 * m + 2, edges)?)
}

/// The graph of the given family attached to `perm`; barrels take
/// permutations of `g - 1` symbols, the other families of `g - 2`.
pub fn family_member(kind: FamilyKind, perm: &[usize]) -> Result<Multigraph, KneisslerError> {
    if kind != FamilyKind::B {
        if perm.len() < 2 {
            return Err(KneisslerError::TooFewRungs(perm.len()));
        }
        check_permutation(perm)?;
    }
    match kind {
        FamilyKind::B => barrel(perm),
        FamilyKind::X => x_graph(perm),
        FamilyKind::Y => y_graph(perm),
        FamilyKind::A => a_graph(perm),
        FamilyKind::APrime => a_prime_graph(perm),
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Permutations of `0..n` fixing 0.
fn barrel_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            std::iter::once(0)
                .chain(p.into_iter().map(|x| x + 1))
                .collect()
        })
        .collect()
}

fn check_supported(g: usize, parity: Parity) -> Result<(), KneisslerError> {
    let min = match parity {
        Parity::Even => 5,
        Parity::Odd => 4,
    };
    if g < min || g > MAX_LOOPS {
        return Err(KneisslerError::Unsupported { loops: g, parity });
    }
    Ok(())
}

/// Builds one family, dropping zero graphs and graphs with multiple edges and
/// merging isomorphic copies. For the complement families, graphs isomorphic
/// to a barrel are dropped.
///
/// Rotating the lower rim shows every barrel is isomorphic to one with
/// `perm[0] = 0`, so only those are enumerated for `B`.
pub fn build_family(
    kind: FamilyKind,
    g: usize,
    parity: Parity,
) -> Result<BarrelFamily, KneisslerError> {
    check_supported(g, parity)?;
    let shapes = match kind {
        FamilyKind::A | FamilyKind::APrime => Some(barrel_shapes(g)?),
        _ => None,
    };
    build_family_with(kind, g, parity, shapes.as_ref())
}

fn build_family_with(
    kind: FamilyKind,
    g: usize,
    parity: Parity,
    barrels: Option<&BTreeSet<Multigraph>>,
) -> Result<BarrelFamily, KneisslerError> {
    let perms = match kind {
        FamilyKind::B => barrel_permutations(g - 1),
        _ => permutations(g - 2),
    };
    let built: Vec<(Vec<usize>, Option<Multigraph>)> = perms
        .into_par_iter()
        .map(|perm| -> Result<_, KneisslerError> {
            let graph = family_member(kind, &perm)?;
            if !graph.is_simple() {
                return Ok((perm, None));
            }
            if let Some(shapes) = barrels {
                if shapes.contains(&canonical_form(&graph)) {
                    return Ok((perm, None));
                }
            }
            Ok((perm, canonicalize(&graph, parity).graph().cloned()))
        })
        .collect::<Result<_, _>>()?;
    let mut representatives: BTreeMap<Multigraph, Vec<Vec<usize>>> = BTreeMap::new();
    for (perm, graph) in built {
        if let Some(graph) = graph {
            representatives.entry(graph).or_default().push(perm);
        }
    }
    Ok(BarrelFamily {
        g,
        parity,
        kind,
        representatives,
    })
}

/// Unsigned canonical forms of all barrels with `g` loops, zero or not.
fn barrel_shapes(g: usize) -> Result<BTreeSet<Multigraph>, KneisslerError> {
    let shapes: Vec<Multigraph> = barrel_permutations(g - 1)
        .into_par_iter()
        .map(|perm| barrel(&perm).map(|b| canonical_form(&b)))
        .collect::<Result<_, _>>()?;
    Ok(shapes.into_iter().collect())
}

/// The differential restricted to `V_g`, in the basis `B_g` then `B_g^perp`.
#[derive(Debug, Clone)]
pub struct RestrictedDifferential {
    pub g: usize,
    pub parity: Parity,
    /// Rows: `dim_b` barrel rows followed by the complement rows.
    pub matrix: IntSparseMatrix,
    pub dim_b: usize,
    pub dim_bperp: usize,
    /// Columns coming from `X_pi` graphs; the rest come from `Y_pi` only.
    pub x_columns: Vec<usize>,
    pub rows: Vec<Multigraph>,
    pub columns: Vec<Multigraph>,
}

impl RestrictedDifferential {
    pub fn dim_v(&self) -> usize {
        self.columns.len()
    }

    pub fn perp_rows(&self) -> Vec<usize> {
        (self.dim_b..self.dim_b + self.dim_bperp).collect()
    }

    /// The block of complement rows.
    pub fn perp_block(&self) -> IntSparseMatrix {
        self.matrix.select_rows(&self.perp_rows())
    }
}

/// Coefficient of each contraction image of `t`, summed.
fn contraction_terms(
    t: &Multigraph,
    parity: Parity,
) -> Result<BTreeMap<Multigraph, i64>, KneisslerError> {
    let mut terms = BTreeMap::new();
    for e in 0..t.num_edges() {
        if let CanonicalResult::Nonzero { graph, sign } = contract_edge(t, e, parity)? {
            *terms.entry(graph).or_insert(0) += sign.to_i64();
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(terms)
}

/// The three ways of splitting the unique 4-valent vertex.
fn splits_of_four_valent(x: &Multigraph) -> Vec<Multigraph> {
    let n = x.num_vertices();
    let degrees = x.degrees();
    let Some(v) = degrees.iter().position(|&d| d == 4) else {
        return Vec::new();
    };
    let incident: Vec<usize> = x
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a as usize == v || b as usize == v)
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::new();
    // keep the first incident edge at v, move one of the others with it
    for partner in 1..4 {
        let mut edges: Vec<(usize, usize)> = x
            .edges()
            .iter()
            .map(|&(a, b)| (a as usize, b as usize))
            .collect();
        for (k, &i) in incident.iter().enumerate() {
            if k != 0 && k != partner {
                let (a, b) = edges[i];
                edges[i] = if a == v { (n, b) } else { (a, n) };
            }
        }
        edges.push((v, n));
        if let Ok(g) = Multigraph::new(n + 1, edges) {
            out.push(g);
        }
    }
    out
}

/// Builds the restricted differential and checks that every nonzero
/// splitting image of `V_g` lies in `B_g` or `B_g^perp`.
pub fn restricted_differential(
    g: usize,
    parity: Parity,
) -> Result<RestrictedDifferential, KneisslerError> {
    check_supported(g, parity)?;
    let shapes = barrel_shapes(g)?;
    let b = build_family_with(FamilyKind::B, g, parity, None)?;
    let x = build_family_with(FamilyKind::X, g, parity, None)?;
    let y = build_family_with(FamilyKind::Y, g, parity, None)?;
    let a = build_family_with(FamilyKind::A, g, parity, Some(&shapes))?;
    let a2 = build_family_with(FamilyKind::APrime, g, parity, Some(&shapes))?;

    let rows: Vec<Multigraph> = b.graphs().cloned().collect();
    let b_set: BTreeSet<&Multigraph> = b.graphs().collect();
    let perp: BTreeSet<Multigraph> = a
        .graphs()
        .chain(a2.graphs())
        .filter(|t| !b_set.contains(t))
        .cloned()
        .collect();
    let dim_b = rows.len();
    let dim_bperp = perp.len();
    let rows: Vec<Multigraph> = rows.into_iter().chain(perp).collect();
    let row_index: BTreeMap<&Multigraph, usize> =
        rows.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let x_set: BTreeSet<Multigraph> = x.graphs().cloned().collect();
    let mut columns: Vec<Multigraph> = x_set.iter().cloned().collect();
    columns.extend(y.graphs().filter(|t| !x_set.contains(*t)).cloned());
    let x_columns: Vec<usize> = (0..x_set.len()).collect();
    let col_index: BTreeMap<&Multigraph, usize> =
        columns.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let row_terms: Vec<BTreeMap<Multigraph, i64>> = rows
        .par_iter()
        .map(|t| contraction_terms(t, parity))
        .collect::<Result<_, _>>()?;
    let mut triplets = Vec::new();
    for (r, terms) in row_terms.iter().enumerate() {
        for (image, &c) in terms {
            if let Some(&col) = col_index.get(image) {
                triplets.push((r, col, c));
            }
        }
    }
    let matrix = IntSparseMatrix::from_triplets(rows.len(), columns.len(), triplets)?;

    // integrity: a split image T of a column graph X with a nonzero pairing
    // must be one of the rows
    columns
        .par_iter()
        .map(|xg| -> Result<(), KneisslerError> {
            for split in splits_of_four_valent(xg) {
                let CanonicalResult::Nonzero { graph: t, .. } = canonicalize(&split, parity) else {
                    continue;
                };
                if row_index.contains_key(&t) {
                    continue;
                }
                if contraction_terms(&t, parity)?.contains_key(xg) {
                    return Err(KneisslerError::ImageOutsideSpan {
                        source_graph: xg.to_string(),
                        image: t.to_string(),
                    });
                }
            }
            Ok(())
        })
        .collect::<Result<(), _>>()?;

    Ok(RestrictedDifferential {
        g,
        parity,
        matrix,
        dim_b,
        dim_bperp,
        x_columns,
        rows,
        columns,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneisslerReport {
    pub g: usize,
    pub parity: Parity,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_Bperp")]
    pub dim_bperp: usize,
    #[serde(rename = "dim_V")]
    pub dim_v: usize,
    pub rank_d: usize,
    pub upper_bound: usize,
    pub prime: u64,
    pub method: RankMethod,
    pub seed: Option<u64>,
}

/// Rank of the restricted differential over `F_p`, eliminating complement
/// rows first and `X_pi` columns second.
pub fn restricted_rank(
    d: &RestrictedDifferential,
    field: PrimeField,
    method: RankMethod,
    seed: u64,
) -> Result<(usize, Option<u64>), KneisslerError> {
    let m = reduce_mod_p(&d.matrix, field);
    Ok(match method {
        RankMethod::Gauss => {
            let strategy = PivotStrategy::TwoPhase {
                rows: d.perp_rows(),
                cols: d.x_columns.clone(),
            };
            (gauss_rank(&m, &strategy).rank, None)
        }
        RankMethod::Wiedemann => (wiedemann_rank(&m, 1, seed)?.rank, Some(seed)),
    })
}

/// Rank of the complement block over `F_p`.
pub fn perp_block_rank(d: &RestrictedDifferential, field: PrimeField) -> usize {
    gauss_rank(
        &reduce_mod_p(&d.perp_block(), field),
        &PivotStrategy::Markowitz,
    )
    .rank
}

/// Upper bound on the top-degree cohomology.
pub fn upper_bound(
    g: usize,
    parity: Parity,
    field: PrimeField,
    method: RankMethod,
    seed: u64,
) -> Result<KneisslerReport, KneisslerError> {
    let d = restricted_differential(g, parity)?;
    report_from(&d, field, method, seed)
}

/// Report for an already assembled restricted differential.
pub fn report_from(
    d: &RestrictedDifferential,
    field: PrimeField,
    method: RankMethod,
    seed: u64,
) -> Result<KneisslerReport, KneisslerError> {
    let (rank_d, seed) = restricted_rank(d, field, method, seed)?;
    Ok(KneisslerReport {
        g: d.g,
        parity: d.parity,
        dim_b: d.dim_b,
        dim_bperp: d.dim_bperp,
        dim_v: d.dim_v(),
        rank_d,
        upper_bound: (d.dim_b + d.dim_bperp).saturating_sub(rank_d),
        prime: field.p(),
        method,
        seed,
    })
}
