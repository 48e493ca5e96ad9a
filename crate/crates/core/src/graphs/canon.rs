//! Canonical labeling by partition refinement and exhaustive individualization.
//!
//! The search tree is built only from isomorphism-invariant choices (cell
//! order by refinement signature, first non-singleton cell as target), so its
//! set of leaves is closed under the automorphism group. The canonical form is
//! the lexicographically smallest relabeled edge list over all leaves. Every
//! automorphism shows up as a second leaf reaching the same edge list, which
//! is how orientation-reversing automorphisms are detected.

use super::{edge_list_sign, CanonicalResult, Multigraph, Parity, Sign, Vertex};

type Cells = Vec<Vec<Vertex>>;

struct Search<'a> {
    n: usize,
    edges: &'a [(Vertex, Vertex)],
    /// `n * n` multiplicities; the diagonal holds loop counts.
    adj: Vec<u16>,
    parity: Option<Parity>,
    stop_on_odd: bool,
    perm: Vec<usize>,
    best: Option<Vec<(Vertex, Vertex)>>,
    best_sign: Sign,
    best_leaves: u64,
    odd_automorphism: bool,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(n: usize, edges: &'a [(Vertex, Vertex)], parity: Option<Parity>) -> Self {
        let mut adj = vec![0u16; n * n];
        for &(u, v) in edges {
            let (u, v) = (u as usize, v as usize);
            if u == v {
                adj[u * n + u] += 1;
            } else {
                adj[u * n + v] += 1;
                adj[v * n + u] += 1;
            }
        }
        Search {
            n,
            edges,
            adj,
            parity,
            stop_on_odd: false,
            perm: vec![0; n],
            best: None,
            best_sign: Sign::Plus,
            best_leaves: 0,
            odd_automorphism: false,
            done: false,
        }
    }

    fn initial_cells(&self) -> Cells {
        let n = self.n;
        let mut keyed: Vec<((u32, u16), Vertex)> = (0..n)
            .map(|v| {
                let row = &self.adj[v * n..(v + 1) * n];
                let loops = row[v];
                let deg: u32 = row.iter().map(|&m| m as u32).sum::<u32>() + loops as u32;
                ((deg, loops), v as Vertex)
            })
            .collect();
        keyed.sort_unstable();
        group_sorted(keyed)
    }

    /// Equitable refinement: split every cell by the vector of edge counts into
    /// each current cell until nothing splits.
    fn refine(&self, cells: &mut Cells) {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            for (ci, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v as usize] = ci;
                }
            }
            let k = cells.len();
            let mut next: Cells = Vec::with_capacity(k + 4);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u16>, Vertex)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u16; k];
                        let row = &self.adj[v as usize * n..(v as usize + 1) * n];
                        for (w, &m) in row.iter().enumerate() {
                            if m != 0 {
                                sig[cell_of[w]] += m;
                            }
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort_unstable();
                next.extend(group_sorted(keyed));
            }
            let split = next.len() > k;
            *cells = next;
            if !split {
                return;
            }
        }
    }

    fn run(&mut self) {
        if self.n == 0 {
            self.best = Some(Vec::new());
            self.best_leaves = 1;
            return;
        }
        let cells = self.initial_cells();
        self.descend(cells);
    }

    fn descend(&mut self, mut cells: Cells) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let members = cells[target].clone();
        for &v in &members {
            let mut child: Cells = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(members.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.descend(child);
            if self.done {
                return;
            }
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        for (i, c) in cells.iter().enumerate() {
            self.perm[c[0] as usize] = i;
        }
        let perm = &self.perm;
        let mut relabeled: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u as usize] as Vertex, perm[v as usize] as Vertex);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        relabeled.sort_unstable();
        let ord = match &self.best {
            None => std::cmp::Ordering::Less,
            Some(b) => relabeled.as_slice().cmp(b.as_slice()),
        };
        match ord {
            std::cmp::Ordering::Less => {
                if let Some(p) = self.parity {
                    self.best_sign = edge_list_sign(self.edges, perm, p);
                }
                self.best = Some(relabeled);
                self.best_leaves = 1;
            }
            std::cmp::Ordering::Equal => {
                self.best_leaves += 1;
                if let Some(p) = self.parity {
                    if edge_list_sign(self.edges, perm, p) != self.best_sign {
                        // two labelings of the same graph with opposite signs:
                        // their quotient is an orientation-reversing automorphism
                        self.odd_automorphism = true;
                        if self.stop_on_odd {
                            self.done = true;
                        }
                    }
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }
}

fn group_sorted<K: PartialEq>(keyed: Vec<(K, Vertex)>) -> Cells {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=keyed.len() {
        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
            out.push(keyed[start..i].iter().map(|x| x.1).collect());
            start = i;
        }
    }
    out
}

/// Canonical representative and the sign relating `g`'s orientation to it.
pub fn canonicalize(g: &Multigraph, parity: Parity) -> CanonicalResult {
    // two parallel edges form an odd edge transposition fixing the graph
    if parity == Parity::Even && g.has_parallel_edges() {
        return CanonicalResult::Zero;
    }
    let mut s = Search::new(g.num_vertices(), g.edges(), Some(parity));
    s.stop_on_odd = true;
    s.run();
    if s.odd_automorphism {
        return CanonicalResult::Zero;
    }
    let edges = s.best.expect("search visits at least one leaf");
    CanonicalResult::Nonzero {
        graph: Multigraph::from_sorted(g.num_vertices(), edges),
        sign: s.best_sign,
    }
}

/// Canonical representative, ignoring orientations.
pub fn canonical_form(g: &Multigraph) -> Multigraph {
    let mut s = Search::new(g.num_vertices(), g.edges(), None);
    s.run();
    Multigraph::from_sorted(g.num_vertices(), s.best.expect("nonempty search"))
}

/// Canonical edge list of a multigraph that may contain loops `(v, v)`.
pub(crate) fn canonical_edges_with_loops(
    n: usize,
    edges: &[(Vertex, Vertex)],
) -> Vec<(Vertex, Vertex)> {
    let mut s = Search::new(n, edges, None);
    s.run();
    s.best.expect("nonempty search")
}

/// Order of the automorphism group of `g` as a multigraph: vertex
/// automorphisms times permutations of each bundle of parallel edges.
pub fn automorphism_group_size(g: &Multigraph) -> u64 {
    let mut s = Search::new(g.num_vertices(), g.edges(), None);
    s.run();
    let mut order = s.best_leaves;
    let edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let mut j = i;
        while j < edges.len() && edges[j] == edges[i] {
            j += 1;
        }
        order *= (1..=(j - i) as u64).product::<u64>();
        i = j;
    }
    order
}
