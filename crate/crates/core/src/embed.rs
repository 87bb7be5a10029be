//! Combinatorial embeddings: rotation systems, face tracing, left-right
//! planarity testing with embedding construction, and outerplanarity via the
//! apex construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{cmp_angle, Drawing, Vector};
use crate::graph::Graph;

/// A combinatorial embedding: for every vertex the cyclic order of its
/// neighbours, plus a designated outer face given as a directed boundary walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    /// `rotation[v]` lists the neighbours of `v` in cyclic order.
    pub rotation: Vec<Vec<usize>>,
    /// Directed edges of the designated outer face walk.
    pub outer_face: Vec<(usize, usize)>,
}

impl RotationSystem {
    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    /// Face-tracing successor: after arriving at `v` via the directed edge
    /// `(u, v)`, the walk continues towards the neighbour following `u` in the
    /// rotation of `v`.
    pub fn next_in_face(&self, u: usize, v: usize) -> (usize, usize) {
        let rot = &self.rotation[v];
        let i = rot
            .iter()
            .position(|&w| w == u)
            .expect("edge must appear in rotation");
        let w = rot[(i + 1) % rot.len()];
        (v, w)
    }

    /// Trace the face walk containing the directed edge `(u, v)`.
    pub fn face_of(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let mut walk = Vec::new();
        let mut cur = (u, v);
        loop {
            walk.push(cur);
            cur = self.next_in_face(cur.0, cur.1);
            if cur == (u, v) {
                break;
            }
        }
        walk
    }

    /// All faces as directed edge walks; every directed edge lies on exactly
    /// one walk.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut faces = Vec::new();
        for v in 0..self.rotation.len() {
            for &w in &self.rotation[v] {
                if visited.contains(&(v, w)) {
                    continue;
                }
                let walk = self.face_of(v, w);
                for &e in &walk {
                    visited.insert(e);
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// Euler consistency: for a plane graph whose components share one outer
    /// face, summing V - E + F = 2 over components and merging the outer
    /// faces gives V - E + F = 2c - (c - 1) ... = c + 1; tracing instead
    /// yields one outer walk per component, so V - E + F = 2c holds for the
    /// traced face multiset (isolated vertices excluded).
    pub fn euler_consistent(&self, g: &Graph) -> bool {
        if g.edge_count() == 0 {
            return true;
        }
        let f = self.faces().len();
        let isolated = (0..g.vertex_count())
            .filter(|&v| g.degree(v) == 0)
            .count();
        let v = g.vertex_count() - isolated;
        let comps = g.components().len() - isolated;
        v + f == g.edge_count() + 2 * comps
    }

    /// Derive a rotation system from exact vertex positions: neighbours are
    /// sorted counterclockwise by angle.  The outer face is identified
    /// geometrically from the bottom-most vertex.
    pub fn from_drawing(g: &Graph, d: &Drawing) -> RotationSystem {
        let n = g.vertex_count();
        let mut rotation = vec![Vec::new(); n];
        for v in 0..n {
            let p = match d.get(v) {
                Some(p) => p.clone(),
                None => continue,
            };
            let mut nbrs: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|w| d.contains(*w))
                .collect();
            nbrs.sort_by(|&a, &b| {
                let va = Vector::new(&d.get(a).unwrap().x - &p.x, &d.get(a).unwrap().y - &p.y);
                let vb = Vector::new(&d.get(b).unwrap().x - &p.x, &d.get(b).unwrap().y - &p.y);
                cmp_angle(&va, &vb)
            });
            rotation[v] = nbrs;
        }
        let mut rs = RotationSystem {
            rotation,
            outer_face: Vec::new(),
        };
        rs.outer_face = rs.geometric_outer_walk_global(d);
        rs
    }

    /// Outer face walk of the component containing `start`, where `start`
    /// must be a bottom-most (then left-most) positioned vertex of its
    /// component with positive degree and the rotations must be
    /// counterclockwise by angle (as produced by [`RotationSystem::from_drawing`]).
    pub fn geometric_outer_walk(&self, d: &Drawing, start: usize) -> Vec<(usize, usize)> {
        // At a bottom-most vertex all incident edges point weakly upward, so
        // straight-down is free.  With ccw rotations and the next-after-
        // predecessor convention, the face entered by leaving `start` along
        // its angularly smallest edge is the one containing the downward gap,
        // i.e. the outer face.
        let p = d.get(start).expect("start is positioned");
        let mut best: Option<(Vector, usize)> = None;
        for &w in &self.rotation[start] {
            let q = d.get(w).expect("neighbour is positioned");
            let vw = Vector::new(&q.x - &p.x, &q.y - &p.y);
            let better = match &best {
                None => true,
                Some((vb, _)) => cmp_angle(&vw, vb) == core::cmp::Ordering::Less,
            };
            if better {
                best = Some((vw, w));
            }
        }
        let first = best.expect("start has positive degree").1;
        self.face_of(start, first)
    }

    fn geometric_outer_walk_global(&self, d: &Drawing) -> Vec<(usize, usize)> {
        let start = d
            .iter()
            .filter(|(v, _)| !self.rotation[*v].is_empty())
            .min_by(|(a, pa), (b, pb)| (&pa.y, &pa.x, a).cmp(&(&pb.y, &pb.x, b)))
            .map(|(v, _)| v);
        match start {
            Some(s) => self.geometric_outer_walk(d, s),
            None => Vec::new(),
        }
    }
}

/// Result of the planarity test.
#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar,
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn rotation_system(self) -> Option<RotationSystem> {
        match self {
            Planarity::Planar(rs) => Some(rs),
            Planarity::NonPlanar => None,
        }
    }
}

type Edge = (usize, usize);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<Edge>,
    high: Option<Edge>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        core::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Left-right planarity (Brandes' formulation of de Fraysseix-Rosenstiehl),
/// including the embedding phase.
struct Lr<'a> {
    g: &'a Graph,
    roots: Vec<usize>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<Edge>>,
    oriented: BTreeSet<Edge>,
    out: Vec<Vec<usize>>,
    lowpt: BTreeMap<Edge, usize>,
    lowpt2: BTreeMap<Edge, usize>,
    nesting_depth: BTreeMap<Edge, i64>,
    ordered_adjs: Vec<Vec<usize>>,
    refs: BTreeMap<Edge, Option<Edge>>,
    side: BTreeMap<Edge, i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: BTreeMap<Edge, usize>,
    lowpt_edge: BTreeMap<Edge, Edge>,
    left_ref: Vec<Option<usize>>,
    right_ref: Vec<Option<usize>>,
    embedding: Vec<Vec<usize>>,
}

impl<'a> Lr<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        Lr {
            g,
            roots: Vec::new(),
            height: vec![None; n],
            parent_edge: vec![None; n],
            oriented: BTreeSet::new(),
            out: vec![Vec::new(); n],
            lowpt: BTreeMap::new(),
            lowpt2: BTreeMap::new(),
            nesting_depth: BTreeMap::new(),
            ordered_adjs: vec![Vec::new(); n],
            refs: BTreeMap::new(),
            side: BTreeMap::new(),
            stack: Vec::new(),
            stack_bottom: BTreeMap::new(),
            lowpt_edge: BTreeMap::new(),
            left_ref: vec![None; n],
            right_ref: vec![None; n],
            embedding: vec![Vec::new(); n],
        }
    }

    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for &w in self.g.neighbors(v) {
            if self.oriented.contains(&(v, w)) || self.oriented.contains(&(w, v)) {
                continue;
            }
            let vw = (v, w);
            self.oriented.insert(vw);
            self.out[v].push(w);
            let hv = self.height[v].unwrap();
            self.lowpt.insert(vw, hv);
            self.lowpt2.insert(vw, hv);
            if self.height[w].is_none() {
                // Tree edge.
                self.parent_edge[w] = Some(vw);
                self.height[w] = Some(hv + 1);
                self.dfs_orientation(w);
            } else {
                // Back edge.
                self.lowpt.insert(vw, self.height[w].unwrap());
            }
            // Nesting depth orders edges by their return height.
            let mut depth = 2 * self.lowpt[&vw] as i64;
            if self.lowpt2[&vw] < hv {
                depth += 1;
            }
            self.nesting_depth.insert(vw, depth);
            // Fold lowpoints into the parent edge.
            if let Some(pe) = e {
                if self.lowpt[&vw] < self.lowpt[&pe] {
                    let lp2 = self.lowpt[&pe].min(self.lowpt2[&vw]);
                    self.lowpt2.insert(pe, lp2);
                    let lp = self.lowpt[&vw];
                    self.lowpt.insert(pe, lp);
                } else if self.lowpt[&vw] > self.lowpt[&pe] {
                    let lp2 = self.lowpt2[&pe].min(self.lowpt[&vw]);
                    self.lowpt2.insert(pe, lp2);
                } else {
                    let lp2 = self.lowpt2[&pe].min(self.lowpt2[&vw]);
                    self.lowpt2.insert(pe, lp2);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: Edge) -> bool {
        !i.is_empty() && self.lowpt[&i.high.unwrap()] > self.lowpt[&b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[&p.right.low.unwrap()];
        }
        if p.right.is_empty() {
            return self.lowpt[&p.left.low.unwrap()];
        }
        self.lowpt[&p.left.low.unwrap()].min(self.lowpt[&p.right.low.unwrap()])
    }

    fn add_constraints(&mut self, ei: Edge, e: Edge) -> bool {
        let mut p = ConflictPair::default();
        // Merge return edges of ei into p.right.
        loop {
            let mut q = self.stack.pop().expect("stack bottom marker guards pops");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.unwrap();
            if self.lowpt[&q_low] > self.lowpt[&e] {
                if p.right.is_empty() {
                    p.right.high = q.right.high;
                } else {
                    self.refs.insert(p.right.low.unwrap(), q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.refs.insert(q_low, Some(self.lowpt_edge[&e]));
            }
            if self.stack.len() == self.stack_bottom[&ei] {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into p.left.
        while {
            let top = self.stack.last().expect("conflicting check needs a top");
            self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)
        } {
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            // Merge the part of q.right below lowpt(ei) into p.right.
            self.refs.insert(p.right.low.unwrap(), q.right.high);
            if let Some(low) = q.right.low {
                p.right.low = Some(low);
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else {
                self.refs.insert(p.left.low.unwrap(), q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: Edge) {
        let u = e.0;
        let hu = self.height[u].unwrap();
        // Drop entire conflict pairs returning to the parent.
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(low) = p.left.low {
                self.side.insert(low, -1);
            }
        }
        // Trim the top pair.
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if h.1 == u {
                    p.left.high = self.refs.get(&h).copied().flatten();
                } else {
                    break;
                }
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    let right_low = p.right.low;
                    self.refs.insert(low, right_low);
                    self.side.insert(low, -1);
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if h.1 == u {
                    p.right.high = self.refs.get(&h).copied().flatten();
                } else {
                    break;
                }
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    let left_low = p.left.low;
                    self.refs.insert(low, left_low);
                    self.side.insert(low, -1);
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        // The side of e is the side of a highest return edge.
        if self.lowpt[&e] < hu {
            let top = self.stack.last().unwrap();
            let hl = top.left.high;
            let hr = top.right.high;
            let highest = match (hl, hr) {
                (Some(l), Some(r)) => {
                    if self.lowpt[&l] > self.lowpt[&r] {
                        Some(l)
                    } else {
                        Some(r)
                    }
                }
                (Some(l), None) => Some(l),
                (None, r) => r,
            };
            self.refs.insert(e, highest);
        }
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let adjs = self.ordered_adjs[v].clone();
        for (idx, &w) in adjs.iter().enumerate() {
            let ei = (v, w);
            self.stack_bottom.insert(ei, self.stack.len());
            if self.parent_edge[w] == Some(ei) {
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge.insert(ei, ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[&ei] < self.height[v].unwrap() {
                // ei has a return edge.
                if idx == 0 {
                    let le = self.lowpt_edge[&ei];
                    self.lowpt_edge
                        .insert(e.expect("first child with return edge has a parent"), le);
                } else if !self.add_constraints(ei, e.unwrap()) {
                    return false;
                }
            }
        }
        if let Some(pe) = e {
            self.remove_back_edges(pe);
        }
        true
    }

    fn sign(&mut self, e: Edge) -> i64 {
        // Iterative resolution of the ref chain.
        let mut chain = vec![e];
        while let Some(Some(r)) = self.refs.get(chain.last().unwrap()).copied() {
            chain.push(r);
        }
        let mut s = 1;
        while let Some(edge) = chain.pop() {
            s *= self.side[&edge];
            self.side.insert(edge, s);
            self.refs.insert(edge, None);
        }
        s
    }

    fn insert_after(&mut self, v: usize, w: usize, anchor: usize) {
        let pos = self.embedding[v]
            .iter()
            .position(|&x| x == anchor)
            .expect("anchor in embedding");
        self.embedding[v].insert(pos + 1, w);
    }

    fn insert_before(&mut self, v: usize, w: usize, anchor: usize) {
        let pos = self.embedding[v]
            .iter()
            .position(|&x| x == anchor)
            .expect("anchor in embedding");
        self.embedding[v].insert(pos, w);
    }

    fn dfs_embedding(&mut self, v: usize) {
        let adjs = self.ordered_adjs[v].clone();
        for &w in &adjs {
            let ei = (v, w);
            if self.parent_edge[w] == Some(ei) {
                // Tree edge: the parent becomes the first entry at w.
                self.embedding[w].insert(0, v);
                self.left_ref[v] = Some(w);
                self.right_ref[v] = Some(w);
                self.dfs_embedding(w);
            } else {
                // Back edge: insert at the proper side of the anchor at w.
                if self.side[&ei] == 1 {
                    let anchor = self.right_ref[w].expect("right ref set");
                    self.insert_after(w, v, anchor);
                } else {
                    let anchor = self.left_ref[w].expect("left ref set");
                    self.insert_before(w, v, anchor);
                    self.left_ref[w] = Some(v);
                }
            }
        }
    }

    fn run(mut self) -> Planarity {
        let n = self.g.vertex_count();
        if n >= 3 && self.g.edge_count() > 3 * n - 6 {
            return Planarity::NonPlanar;
        }
        for v in 0..n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }
        for v in 0..n {
            let mut adj = self.out[v].clone();
            adj.sort_by_key(|&w| self.nesting_depth[&(v, w)]);
            self.ordered_adjs[v] = adj;
            for &w in &self.out[v] {
                self.side.insert((v, w), 1);
                self.refs.insert((v, w), None);
            }
        }
        let roots = self.roots.clone();
        for &root in &roots {
            if !self.dfs_testing(root) {
                return Planarity::NonPlanar;
            }
        }
        let edges: Vec<Edge> = self.oriented.iter().copied().collect();
        for e in edges {
            let s = self.sign(e);
            let d = self.nesting_depth[&e] * s;
            self.nesting_depth.insert(e, d);
        }
        for v in 0..n {
            let mut adj = self.out[v].clone();
            adj.sort_by_key(|&w| self.nesting_depth[&(v, w)]);
            self.ordered_adjs[v] = adj.clone();
            self.embedding[v] = adj;
        }
        for &root in &roots {
            self.dfs_embedding(root);
        }
        let mut rs = RotationSystem {
            rotation: self.embedding,
            outer_face: Vec::new(),
        };
        rs.outer_face = pick_outer_face(&rs);
        debug_assert!(rs.euler_consistent(self.g));
        Planarity::Planar(rs)
    }
}

/// Designate the longest face as outer (ties broken on the canonically
/// rotated walk).
fn pick_outer_face(rs: &RotationSystem) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for face in rs.faces() {
        let canon = canonical_rotation(&face);
        let take = match &best {
            None => true,
            Some(b) => canon.len() > b.len() || (canon.len() == b.len() && canon < *b),
        };
        if take {
            best = Some(canon);
        }
    }
    best.unwrap_or_default()
}

/// Rotate a closed walk so that it starts at its lexicographically smallest
/// directed edge.
pub fn canonical_rotation(walk: &[(usize, usize)]) -> Vec<(usize, usize)> {
    if walk.is_empty() {
        return Vec::new();
    }
    let k = walk
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| **e)
        .map(|(i, _)| i)
        .unwrap();
    let mut out = Vec::with_capacity(walk.len());
    out.extend_from_slice(&walk[k..]);
    out.extend_from_slice(&walk[..k]);
    out
}

/// Planarity test returning an embedding for planar inputs.
pub fn planarity(g: &Graph) -> Planarity {
    Lr::new(g).run()
}

/// Outerplanarity via the apex construction: a graph is outerplanar iff
/// adding one vertex adjacent to everything keeps it planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    apex_embedding(g).is_some()
}

/// Embed `g` plus an apex adjacent to all vertices; returns the embedding of
/// the augmented graph and the apex id (`g.vertex_count()`).
pub fn apex_embedding(g: &Graph) -> Option<(RotationSystem, usize)> {
    let n = g.vertex_count();
    let mut edges = g.edge_vec();
    for v in 0..n {
        edges.push((v, n));
    }
    let aug = Graph::new(n + 1, &edges).expect("apex augmentation is simple");
    planarity(&aug).rotation_system().map(|rs| (rs, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, random_2tree, Family, Platonic};

    #[test]
    fn k5_and_k33_nonplanar() {
        let k5 = generate(&Family::Complete(5)).unwrap();
        assert!(!planarity(&k5).is_planar());
        let k33 = generate(&Family::CompleteBipartite(3, 3)).unwrap();
        assert!(!planarity(&k33).is_planar());
    }

    #[test]
    fn small_planar_graphs() {
        for fam in [
            Family::Complete(4),
            Family::Platonic(Platonic::Cube),
            Family::Platonic(Platonic::Octahedron),
            Family::Platonic(Platonic::Dodecahedron),
            Family::Platonic(Platonic::Icosahedron),
            Family::Grid(4, 4),
            Family::Cycle(7),
            Family::Path(6),
        ] {
            let g = generate(&fam).unwrap();
            let p = planarity(&g);
            assert!(p.is_planar(), "{fam:?} should be planar");
            let rs = p.rotation_system().unwrap();
            assert!(rs.euler_consistent(&g), "{fam:?} euler check");
            for v in 0..g.vertex_count() {
                let mut rot = rs.rotation[v].clone();
                rot.sort_unstable();
                assert_eq!(rot, g.neighbors(v).to_vec(), "{fam:?} rotation of {v}");
            }
        }
    }

    #[test]
    fn petersen_nonplanar() {
        let g = generate(&Family::Petersen).unwrap();
        assert!(!planarity(&g).is_planar());
    }

    #[test]
    fn two_trees_planar() {
        for seed in 0..4 {
            let g = random_2tree(24, seed).unwrap();
            let p = planarity(&g);
            assert!(p.is_planar());
            assert!(p.rotation_system().unwrap().euler_consistent(&g));
        }
    }

    #[test]
    fn outerplanarity_examples() {
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert!(!is_outerplanar(&k4));
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert!(is_outerplanar(&c5));
        let k23 = generate(&Family::CompleteBipartite(2, 3)).unwrap();
        assert!(!is_outerplanar(&k23));
        let p4 = generate(&Family::Path(4)).unwrap();
        assert!(is_outerplanar(&p4));
    }

    #[test]
    fn disconnected_planarity() {
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        edges.extend_from_slice(&[(3, 4), (4, 5), (5, 3)]);
        let g = Graph::new(7, &edges).unwrap();
        let p = planarity(&g);
        assert!(p.is_planar());
        assert!(p.rotation_system().unwrap().euler_consistent(&g));
    }

    #[test]
    fn face_count_cube() {
        let g = generate(&Family::Platonic(Platonic::Cube)).unwrap();
        let rs = planarity(&g).rotation_system().unwrap();
        assert_eq!(rs.faces().len(), 6);
        for f in rs.faces() {
            assert_eq!(f.len(), 4);
        }
    }
}
