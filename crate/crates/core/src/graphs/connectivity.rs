use super::Multigraph;

/// Whether the graph is connected. The empty graph counts as connected.
pub fn is_connected(g: &Multigraph) -> bool {
    let n = g.num_vertices();
    if n == 0 {
        return true;
    }
    let adj = g.adjacency_lists();
    reachable(&adj, 0) == n
}

/// Whether the graph is simple, has at least four vertices and stays
/// connected after deleting any two vertices.
pub fn is_triconnected(g: &Multigraph) -> bool {
    let n = g.num_vertices();
    if n < 4 || !g.is_simple() || g.min_degree() < 3 || !is_connected(g) {
        return false;
    }
    let adj = g.adjacency_lists();
    (0..n).all(|x| !has_articulation_point(&adj, x))
}

fn reachable(adj: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

/// Articulation points of the graph with vertex `removed` deleted, by the
/// iterative low-link method. Also reports disconnection.
fn has_articulation_point(adj: &[Vec<usize>], removed: usize) -> bool {
    let n = adj.len();
    let root = if removed == 0 { 1 } else { 0 };
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    disc[removed] = 0;
    let mut time = 1;
    disc[root] = time;
    low[root] = time;
    let mut root_children = 0;
    let mut visited = 1;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
    while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if w == removed {
                continue;
            }
            if disc[w] == UNSEEN {
                time += 1;
                disc[w] = time;
                low[w] = time;
                visited += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != UNSEEN {
                low[parent] = low[parent].min(low[v]);
                if parent != root && low[v] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    visited < n - 1 || root_children > 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_triconnected(g: &Multigraph) -> bool {
        let n = g.num_vertices();
        if n < 4 || !g.is_simple() {
            return false;
        }
        let adj = g.adjacency_lists();
        for a in 0..n {
            for b in a + 1..n {
                let keep: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
                let mut seen = vec![false; n];
                seen[a] = true;
                seen[b] = true;
                seen[keep[0]] = true;
                let mut stack = vec![keep[0]];
                let mut count = 1;
                while let Some(v) = stack.pop() {
                    for &w in &adj[v] {
                        if !seen[w] {
                            seen[w] = true;
                            count += 1;
                            stack.push(w);
                        }
                    }
                }
                if count < keep.len() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn small_examples() {
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_triconnected(&k4));
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(!is_triconnected(&theta));
        let c6 = Multigraph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert!(!is_triconnected(&c6));
        // triangular prism
        let g = Multigraph::new(
            6,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (3, 4),
                (3, 5),
                (4, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert!(is_triconnected(&g));
        let dumbbell =
            Multigraph::new(4, [(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (0, 3)]).unwrap();
        assert!(!is_triconnected(&dumbbell));
        let disconnected =
            Multigraph::new(4, [(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)]).unwrap();
        assert!(!is_connected(&disconnected));
        assert!(!is_triconnected(&disconnected));
    }

    #[test]
    fn agrees_with_pair_deletion_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3000 {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(n..=2 * n + 4);
            let mut edges: Vec<(usize, usize)> = (0..m)
                .filter_map(|_| {
                    let u = rng.gen_range(0..n);
                    let v = rng.gen_range(0..n);
                    (u != v).then_some((u.min(v), u.max(v)))
                })
                .collect();
            if rng.gen_bool(0.8) {
                edges.sort_unstable();
                edges.dedup();
            }
            let g = Multigraph::new(n, edges).unwrap();
            assert_eq!(is_triconnected(&g), brute_triconnected(&g), "{g}");
        }
    }
}
