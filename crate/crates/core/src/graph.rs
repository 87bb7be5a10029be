//! Undirected simple graphs with dense integer vertices, the named generator
//! families, and the structural recognizers the planners dispatch on.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// An undirected simple graph on vertices `0..n`.  Adjacency lists are kept
/// sorted, so every iteration order in the crate is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    OutOfRange { u: usize, v: usize, n: usize },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    BadParams(String),
}

impl core::fmt::Display for GraphError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GraphError::OutOfRange { u, v, n } => {
                write!(f, "edge ({u}, {v}) out of range for {n} vertices")
            }
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::BadParams(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

impl Graph {
    /// Build a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            m: seen.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Subgraph induced on `vertices`, with the original vertex ids kept.
    /// Returns edges of the induced subgraph.
    pub fn induced_edges(&self, vertices: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        self.edges()
            .filter(|&(u, v)| vertices.contains(&u) && vertices.contains(&v))
            .collect()
    }

    /// Graph with a vertex set removed (remaining vertices keep their ids;
    /// the vertex count stays `n`, removed vertices become isolated).
    pub fn without_vertices(&self, removed: &BTreeSet<usize>) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| !removed.contains(&u) && !removed.contains(&v))
            .collect();
        Graph::new(self.n, &edges).expect("removal preserves validity")
    }

    /// Relabelled induced subgraph on `vertices` (given in ascending order);
    /// returns the subgraph plus the map from new ids to old ids.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in self.edge_vec().iter() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
            }
        }
        (
            Graph::new(vertices.len(), &edges).expect("induced subgraph is valid"),
            vertices.to_vec(),
        )
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True iff the graph contains no 3-cycle.
    pub fn is_triangle_free(&self) -> bool {
        for (u, v) in self.edges() {
            let (a, b) = (self.neighbors(u), self.neighbors(v));
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    core::cmp::Ordering::Less => i += 1,
                    core::cmp::Ordering::Greater => j += 1,
                    core::cmp::Ordering::Equal => return false,
                }
            }
        }
        true
    }

    /// True iff the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        let comps = self.components();
        let mut edges_total = 0;
        for comp in &comps {
            let set: BTreeSet<usize> = comp.iter().copied().collect();
            edges_total += self.induced_edges(&set).len();
        }
        debug_assert_eq!(edges_total, self.m);
        self.m + comps.len() == self.n || (self.n == 0 && self.m == 0)
    }

    /// Two-colouring if the graph is bipartite: `sides.0` contains vertex `0`'s
    /// colour class in each component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != usize::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if colour[w] == usize::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| colour[v] == 0).collect();
        let b = (0..self.n).filter(|&v| colour[v] == 1).collect();
        Some((a, b))
    }

    pub fn is_k4(&self) -> bool {
        self.n == 4 && self.m == 6
    }
}

/// The stacking structure of a 2-tree: construction order and, for every
/// stacked vertex, the edge it was stacked on.
#[derive(Clone, Debug)]
pub struct StackingOrder {
    /// Vertices in construction order; the first three form a triangle.
    pub order: Vec<usize>,
    /// `stack_edge[i]` for `i >= 3` is the edge the `i`-th vertex of `order`
    /// was stacked on (entries 0..3 are unused placeholders).
    pub stack_edge: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Not2Tree;

impl core::fmt::Display for Not2Tree {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "graph is not a 2-tree")
    }
}

/// Recognize a 2-tree by repeatedly removing a degree-2 vertex whose two
/// neighbours are adjacent (smallest index first); reversing the removal
/// order yields a stacking order.
pub fn stacking_order(g: &Graph) -> Result<StackingOrder, Not2Tree> {
    let n = g.vertex_count();
    if n < 3 || g.edge_count() != 2 * n - 3 {
        return Err(Not2Tree);
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut removed = vec![false; n];
    let mut removal: Vec<(usize, (usize, usize))> = Vec::new();
    for _ in 0..n.saturating_sub(3) {
        let mut pick = None;
        'search: for v in 0..n {
            if removed[v] || adj[v].len() != 2 {
                continue;
            }
            let mut it = adj[v].iter();
            let a = *it.next().unwrap();
            let b = *it.next().unwrap();
            if adj[a].contains(&b) {
                pick = Some((v, (a, b)));
                break 'search;
            }
        }
        let (v, (a, b)) = pick.ok_or(Not2Tree)?;
        removed[v] = true;
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[v].clear();
        removal.push((v, (a, b)));
    }
    // A triangle must remain.
    let rest: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    if rest.len() != 3
        || !g.has_edge(rest[0], rest[1])
        || !g.has_edge(rest[0], rest[2])
        || !g.has_edge(rest[1], rest[2])
    {
        return Err(Not2Tree);
    }
    let mut order = rest;
    let mut stack_edge = vec![(0, 0); 3];
    for &(v, e) in removal.iter().rev() {
        order.push(v);
        stack_edge.push(e);
    }
    Ok(StackingOrder { order, stack_edge })
}

/// The named generator families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Petersen,
    Platonic(Platonic),
    CompleteBipartite(usize, usize),
    /// `BlownCycle(k, s)`: cyclic arrangement of `k` independent sets of size
    /// `s` with complete bipartite joins between consecutive sets.
    BlownCycle(usize, usize),
    Grid(usize, usize),
    RandomCubic { n: usize, seed: u64 },
    Random2Tree { n: usize, seed: u64 },
    Complete(usize),
    Cycle(usize),
    Path(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Platonic {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

/// Generalized Petersen graph GP(n, k): outer n-cycle, inner star polygon,
/// spokes.  GP(5, 2) is the Petersen graph, GP(10, 2) the dodecahedron.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::new(2 * n, &edges).expect("generalized Petersen graph is simple")
}

pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match *family {
        Family::Petersen => Ok(generalized_petersen(5, 2)),
        Family::Platonic(p) => Ok(platonic(p)),
        Family::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return Err(GraphError::BadParams(String::from(
                    "complete bipartite parts must be nonempty",
                )));
            }
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    edges.push((u, a + v));
                }
            }
            Graph::new(a + b, &edges)
        }
        Family::BlownCycle(k, s) => {
            if k < 3 || s == 0 {
                return Err(GraphError::BadParams(String::from(
                    "blown cycle needs k >= 3 parts of positive size",
                )));
            }
            let mut edges = Vec::new();
            for part in 0..k {
                let next = (part + 1) % k;
                for i in 0..s {
                    for j in 0..s {
                        let u = part * s + i;
                        let v = next * s + j;
                        edges.push((u.min(v), u.max(v)));
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            Graph::new(k * s, &edges)
        }
        Family::Grid(w, h) => {
            if w == 0 || h == 0 {
                return Err(GraphError::BadParams(String::from(
                    "grid dimensions must be positive",
                )));
            }
            let mut edges = Vec::new();
            for r in 0..h {
                for c in 0..w {
                    let v = r * w + c;
                    if c + 1 < w {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < h {
                        edges.push((v, v + w));
                    }
                }
            }
            Graph::new(w * h, &edges)
        }
        Family::RandomCubic { n, seed } => random_cubic(n, seed, false),
        Family::Random2Tree { n, seed } => random_2tree(n, seed),
        Family::Complete(n) => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::new(n, &edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::BadParams(String::from("cycle needs n >= 3")));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(n, &edges)
        }
        Family::Path(n) => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::new(n, &edges)
        }
    }
}

fn platonic(p: Platonic) -> Graph {
    match p {
        Platonic::Tetrahedron => generate(&Family::Complete(4)).unwrap(),
        Platonic::Cube => {
            let mut edges = Vec::new();
            for v in 0..8usize {
                for bit in 0..3 {
                    let w = v ^ (1 << bit);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            Graph::new(8, &edges).unwrap()
        }
        Platonic::Octahedron => {
            // K_{2,2,2}: all edges except the three diagonals.
            let mut edges = Vec::new();
            for u in 0..6usize {
                for v in u + 1..6 {
                    if !(u % 2 == 0 && v == u + 1) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(6, &edges).unwrap()
        }
        Platonic::Dodecahedron => generalized_petersen(10, 2),
        Platonic::Icosahedron => {
            // Gyroelongated pentagonal bipyramid: apexes 0 and 11,
            // upper ring 1..=5, lower ring 6..=10.
            let mut edges = Vec::new();
            for i in 0..5usize {
                edges.push((0, 1 + i));
                edges.push((11, 6 + i));
                edges.push((1 + i, 1 + (i + 1) % 5));
                edges.push((6 + i, 6 + (i + 1) % 5));
                edges.push((1 + i, 6 + i));
                edges.push((1 + i, 6 + (i + 4) % 5));
            }
            Graph::new(12, &edges).unwrap()
        }
    }
}

/// Configuration-model random cubic graph, rejecting non-simple and
/// disconnected pairings; deterministic for a fixed seed.  `avoid_k4`
/// additionally rejects `K_4` (which forces `n > 4`).
pub fn random_cubic(n: usize, seed: u64, avoid_k4: bool) -> Result<Graph, GraphError> {
    if n < 4 || n % 2 != 0 {
        return Err(GraphError::BadParams(String::from(
            "cubic graphs need even n >= 4",
        )));
    }
    if avoid_k4 && n == 4 {
        return Err(GraphError::BadParams(String::from(
            "the only cubic graph on 4 vertices is K4",
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
        points.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * n / 2);
        let mut ok = true;
        let mut seen = BTreeSet::new();
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                ok = false;
                break;
            }
            edges.push((u, v));
        }
        if !ok {
            continue;
        }
        let g = Graph::new(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

/// Random 2-tree grown by stacking each new vertex on a uniformly random
/// existing edge; deterministic for a fixed seed.
pub fn random_2tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParams(String::from("2-trees need n >= 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for v in 3..n {
        let &(a, b) = edges.choose(&mut rng).expect("edge list is nonempty");
        edges.push((a, v));
        edges.push((b, v));
    }
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_bad_edges() {
        assert!(Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).is_ok());
        assert!(Graph::new(1, &[]).is_ok());
        assert_eq!(
            Graph::new(4, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(4, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::OutOfRange { .. })
        ));
    }

    #[test]
    fn petersen_shape() {
        let g = generate(&Family::Petersen).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_triangle_free());
        assert!(g.is_connected());
    }

    #[test]
    fn blown_cycle_shapes() {
        let g = generate(&Family::BlownCycle(5, 3)).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert_eq!(g.edge_count(), 45);
        assert!((0..15).all(|v| g.degree(v) == 6));
        assert!(g.is_triangle_free());

        let g = generate(&Family::BlownCycle(5, 2)).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 20);
        assert!((0..10).all(|v| g.degree(v) == 4));
        assert!(g.is_triangle_free());

        assert!(generate(&Family::BlownCycle(2, 3)).is_err());
    }

    #[test]
    fn blown_cycle_consecutive_parts_complete_bipartite() {
        let g = generate(&Family::BlownCycle(5, 3)).unwrap();
        for part in 0..5usize {
            let next = (part + 1) % 5;
            for i in 0..3 {
                for j in 0..3 {
                    assert!(g.has_edge(part * 3 + i, next * 3 + j));
                }
                for j in 0..3 {
                    if i != j {
                        assert!(!g.has_edge(part * 3 + i, part * 3 + j));
                    }
                }
            }
        }
    }

    #[test]
    fn platonic_shapes() {
        let cube = generate(&Family::Platonic(Platonic::Cube)).unwrap();
        assert_eq!((cube.vertex_count(), cube.edge_count()), (8, 12));
        assert!(cube.bipartition().is_some());
        let octa = generate(&Family::Platonic(Platonic::Octahedron)).unwrap();
        assert_eq!((octa.vertex_count(), octa.edge_count()), (6, 12));
        assert!((0..6).all(|v| octa.degree(v) == 4));
        let dode = generate(&Family::Platonic(Platonic::Dodecahedron)).unwrap();
        assert_eq!((dode.vertex_count(), dode.edge_count()), (20, 30));
        assert!(dode.is_triangle_free());
        assert!((0..20).all(|v| dode.degree(v) == 3));
        let icosa = generate(&Family::Platonic(Platonic::Icosahedron)).unwrap();
        assert_eq!((icosa.vertex_count(), icosa.edge_count()), (12, 30));
        assert!((0..12).all(|v| icosa.degree(v) == 5));
    }

    #[test]
    fn triangle_free_and_forest() {
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert!(!k3.is_triangle_free());
        let p4 = generate(&Family::Path(4)).unwrap();
        assert!(p4.is_forest());
        let c4 = generate(&Family::Cycle(4)).unwrap();
        assert!(!c4.is_forest());
        assert!(c4.is_triangle_free());
        let empty = Graph::new(5, &[]).unwrap();
        assert!(empty.is_forest());
    }

    #[test]
    fn stacking_order_basics() {
        let k3 = generate(&Family::Complete(3)).unwrap();
        let so = stacking_order(&k3).unwrap();
        assert_eq!(so.order.len(), 3);

        let c4 = generate(&Family::Cycle(4)).unwrap();
        assert_eq!(stacking_order(&c4), Err(Not2Tree));
    }

    #[test]
    fn stacking_order_replay_reconstructs_edges() {
        for seed in 0..5 {
            let g = random_2tree(20, seed).unwrap();
            let so = stacking_order(&g).unwrap();
            let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
            let tri = &so.order[..3];
            edges.insert((tri[0].min(tri[1]), tri[0].max(tri[1])));
            edges.insert((tri[0].min(tri[2]), tri[0].max(tri[2])));
            edges.insert((tri[1].min(tri[2]), tri[1].max(tri[2])));
            for i in 3..so.order.len() {
                let v = so.order[i];
                let (a, b) = so.stack_edge[i];
                edges.insert((a.min(v), a.max(v)));
                edges.insert((b.min(v), b.max(v)));
            }
            let expect: BTreeSet<(usize, usize)> = g.edges().collect();
            assert_eq!(edges, expect);
        }
    }

    #[test]
    fn random_cubic_deterministic_and_cubic() {
        let a = random_cubic(20, 7, false).unwrap();
        let b = random_cubic(20, 7, false).unwrap();
        assert_eq!(a, b);
        assert!((0..20).all(|v| a.degree(v) == 3));
        assert!(a.is_connected());
        let c = random_cubic(20, 8, false).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn degree_sequences_match_family_spec() {
        for (k, s) in [(3, 2), (4, 3), (5, 2), (5, 3), (6, 1)] {
            let g = generate(&Family::BlownCycle(k, s)).unwrap();
            assert!(
                (0..g.vertex_count()).all(|v| g.degree(v) == 2 * s),
                "blown_cycle({k},{s}) should be {}-regular",
                2 * s
            );
        }
    }
}
