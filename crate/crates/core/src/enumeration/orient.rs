//! Admissible orientations of an embedded cubic graph.
//!
//! Vertices are placed bottom-up; a vertex's lower neighbors are the
//! neighbors already placed. Each acyclic orientation is produced by exactly
//! one placement sequence: the one that always places the smallest-label
//! vertex whose lower neighbors are all placed. A vertex skipped in favour of
//! a larger label stays blocked until one of its neighbors is placed.
//!
//! Pruning keeps only prefixes of realizable orientations: one sink, one
//! source, at most `n−3` vertices with one and with two lower neighbors,
//! and on every face the placed vertices form a single arc (a face has a
//! unique local sink exactly when all its sublevel sets are arcs). The
//! three disjoint paths condition is checked on complete orientations.
//!
//! Expectations are carried as integers scaled by `3·2^V`: every vertex
//! except the source has at most two lower neighbors, so all values are
//! exact in that scale.

use super::cubic::CubicGraph;
use crate::graph::PolytopeDigraph;
use crate::rational::Rational;

/// Precomputed masks for one embedded graph.
#[derive(Clone, Debug)]
pub struct OrientationSpace {
    pub graph: CubicGraph,
    n: usize,
    facets: usize,
    nbr: Vec<[usize; 3]>,
    nmask: Vec<u64>,
    /// per vertex: (face mask, mask of the two face neighbors)
    face_arcs: Vec<Vec<(u64, u64)>>,
    scale: u128,
}

/// One complete admissible orientation as seen by a visitor.
pub struct Leaf<'a> {
    /// Placement order: `order[i]` is the graph vertex at height `i`.
    pub order: &'a [usize],
    /// Scaled expectations by height.
    pub scaled: &'a [u128],
    pub scale: u128,
    /// Lower neighbors by graph vertex.
    pub down: &'a [Vec<usize>],
}

impl Leaf<'_> {
    /// Largest scaled expectation and the lowest height attaining it.
    pub fn best(&self) -> (u128, usize) {
        let mut best = (0, 0);
        for (h, &e) in self.scaled.iter().enumerate() {
            if e > best.0 {
                best = (e, h);
            }
        }
        best
    }

    pub fn value(&self, scaled: u128) -> Rational {
        scaled_to_rational(scaled, self.scale)
    }

    /// The orientation as a height-indexed digraph.
    pub fn digraph(&self, facets: usize) -> PolytopeDigraph {
        let n = self.order.len();
        let mut height = vec![0; n];
        for (h, &v) in self.order.iter().enumerate() {
            height[v] = h;
        }
        let down = self
            .order
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.down[v].iter().map(|&w| height[w]).collect();
                l.sort_unstable_by(|a, b| b.cmp(a));
                l
            })
            .collect();
        PolytopeDigraph::new(facets, down).expect("placement order is topological")
    }
}

pub fn scaled_to_rational(scaled: u128, scale: u128) -> Rational {
    Rational::from_big(scaled.into(), scale.into())
}

/// What the visitor wants after a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

struct State {
    placed: u64,
    blocked: u64,
    /// neighbors of placed vertices
    frontier: u64,
    order: Vec<usize>,
    scaled_by_vertex: Vec<u128>,
    scaled: Vec<u128>,
    down: Vec<Vec<usize>>,
    ones: usize,
    twos: usize,
    height: Vec<usize>,
}

impl OrientationSpace {
    pub fn new(graph: CubicGraph) -> Self {
        let n = graph.vertex_count();
        assert!(n <= 64, "at most 64 vertices");
        let nbr = graph.rot.clone();
        let nmask = nbr
            .iter()
            .map(|r| r.iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let mut face_arcs = vec![Vec::new(); n];
        for face in graph.faces() {
            let fm = face.iter().fold(0u64, |m, &v| m | 1 << v);
            let len = face.len();
            for i in 0..len {
                let arc = 1u64 << face[(i + len - 1) % len] | 1u64 << face[(i + 1) % len];
                face_arcs[face[i]].push((fm, arc));
            }
        }
        let scale = 3u128 << n;
        OrientationSpace {
            facets: graph.facet_count(),
            graph,
            n,
            nbr,
            nmask,
            face_arcs,
            scale,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> usize {
        self.facets
    }

    pub fn scale(&self) -> u128 {
        self.scale
    }

    /// Work units: sink and the vertex directly above it.
    pub fn units(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.n {
            let mut ns = self.nbr[s];
            ns.sort_unstable();
            for t in ns {
                out.push((s, t));
            }
        }
        out
    }

    fn new_state(&self) -> State {
        State {
            placed: 0,
            blocked: 0,
            frontier: 0,
            order: Vec::with_capacity(self.n),
            scaled_by_vertex: vec![0; self.n],
            scaled: Vec::with_capacity(self.n),
            down: vec![Vec::new(); self.n],
            ones: 0,
            twos: 0,
            height: vec![usize::MAX; self.n],
        }
    }

    /// Whether `u` can be placed next; returns its lower-neighbor mask.
    fn admissible(&self, st: &State, u: usize) -> Option<u64> {
        let bit = 1u64 << u;
        if st.placed & bit != 0 || st.blocked & bit != 0 {
            return None;
        }
        let lower = self.nmask[u] & st.placed;
        let k = lower.count_ones() as usize;
        let remaining = self.n - st.order.len();
        if st.placed != 0 && k == 0 {
            return None;
        }
        if k == 3 && remaining > 1 {
            return None;
        }
        let limit = self.facets - 3;
        if (k == 1 && st.ones + 1 > limit) || (k == 2 && st.twos + 1 > limit) {
            return None;
        }
        for &(fm, arc) in &self.face_arcs[u] {
            if fm & st.placed != 0 && arc & st.placed == 0 {
                return None;
            }
        }
        // an unplaced neighbor left with no unplaced neighbor must be the last vertex
        if remaining > 2 {
            let after = st.placed | bit;
            for &w in &self.nbr[u] {
                if after & (1 << w) == 0 && self.nmask[w] & !after == 0 {
                    return None;
                }
            }
        }
        Some(lower)
    }

    fn place(&self, st: &mut State, u: usize, lower: u64) {
        let k = lower.count_ones() as usize;
        let below_u = (1u64 << u) - 1;
        let unplaced_after = !(st.placed | 1 << u) & self.all();
        st.blocked = (st.blocked | (unplaced_after & below_u)) & !self.nmask[u];
        st.placed |= 1 << u;
        st.frontier |= self.nmask[u];
        st.height[u] = st.order.len();
        st.order.push(u);
        let mut sum = 0u128;
        st.down[u].clear();
        for &w in &self.nbr[u] {
            if lower & (1 << w) != 0 {
                st.down[u].push(w);
                sum += st.scaled_by_vertex[w];
            }
        }
        let e = if k == 0 { 0 } else { self.scale + sum / k as u128 };
        st.scaled_by_vertex[u] = e;
        st.scaled.push(e);
        match k {
            1 => st.ones += 1,
            2 => st.twos += 1,
            _ => {}
        }
    }

    fn unplace(&self, st: &mut State, (saved_blocked, saved_frontier): (u64, u64)) {
        let u = st.order.pop().expect("nonempty");
        st.placed &= !(1 << u);
        st.blocked = saved_blocked;
        st.frontier = saved_frontier;
        st.scaled.pop();
        match st.down[u].len() {
            1 => st.ones -= 1,
            2 => st.twos -= 1,
            _ => {}
        }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Visits every admissible orientation whose sink is `s` and whose
    /// second-lowest vertex is `t`, in a fixed deterministic order.
    pub fn visit_unit<F>(&self, (s, t): (usize, usize), visit: &mut F) -> Flow
    where
        F: FnMut(&Leaf<'_>) -> Flow,
    {
        let mut st = self.new_state();
        let Some(l0) = self.admissible(&st, s) else {
            return Flow::Continue;
        };
        self.place(&mut st, s, l0);
        let Some(l1) = self.admissible(&st, t) else {
            return Flow::Continue;
        };
        self.place(&mut st, t, l1);
        self.dfs(&mut st, visit)
    }

    pub fn visit_all<F>(&self, visit: &mut F) -> Flow
    where
        F: FnMut(&Leaf<'_>) -> Flow,
    {
        for unit in self.units() {
            if self.visit_unit(unit, visit) == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    fn dfs<F>(&self, st: &mut State, visit: &mut F) -> Flow
    where
        F: FnMut(&Leaf<'_>) -> Flow,
    {
        if st.order.len() == self.n {
            if !self.three_paths(st) {
                return Flow::Continue;
            }
            let leaf = Leaf {
                order: &st.order,
                scaled: &st.scaled,
                scale: self.scale,
                down: &st.down,
            };
            return visit(&leaf);
        }
        let mut candidates = st.frontier & !st.placed & !st.blocked;
        while candidates != 0 {
            let u = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if let Some(lower) = self.admissible(st, u) {
                let saved = (st.blocked, st.frontier);
                self.place(st, u, lower);
                let flow = self.dfs(st, visit);
                self.unplace(st, saved);
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
            }
        }
        Flow::Continue
    }

    /// Three interior-disjoint paths from the top to the sink, by at most
    /// three augmenting-path searches on the vertex-split network.
    fn three_paths(&self, st: &State) -> bool {
        let n = self.n;
        let height = &st.height;
        let source = st.order[n - 1];
        let sink = st.order[0];
        // flow[v][i]: one unit on v -> nbr[v][i]
        let mut flow = [[false; 3]; 64];
        let mut used = [false; 64];
        // node 2v = v_in, 2v+1 = v_out; parent stores the predecessor node
        let mut parent = [u16::MAX; 128];
        let mut queue = [0u16; 128];
        for _ in 0..3 {
            parent.iter_mut().for_each(|p| *p = u16::MAX);
            let start = (2 * source + 1) as u16;
            parent[start as usize] = start;
            queue[0] = start;
            let (mut head, mut tail) = (0, 1);
            let mut found = false;
            while head < tail && !found {
                let node = queue[head] as usize;
                head += 1;
                let v = node / 2;
                let mut push = |next: usize, parent: &mut [u16; 128]| {
                    if parent[next] == u16::MAX {
                        parent[next] = node as u16;
                        queue[tail] = next as u16;
                        tail += 1;
                    }
                };
                if node % 2 == 1 {
                    for i in 0..3 {
                        let w = self.nbr[v][i];
                        if height[w] < height[v] && !flow[v][i] {
                            push(2 * w, &mut parent);
                        }
                    }
                    if v != source && used[v] {
                        push(2 * v, &mut parent);
                    }
                } else {
                    if v == sink {
                        found = true;
                        break;
                    }
                    if !used[v] && v != source {
                        push(2 * v + 1, &mut parent);
                    }
                    for &w in &self.nbr[v] {
                        if height[w] > height[v] {
                            let j = self.nbr[w].iter().position(|&x| x == v).expect("adjacent");
                            if flow[w][j] {
                                push(2 * w + 1, &mut parent);
                            }
                        }
                    }
                }
            }
            if !found {
                return false;
            }
            let mut node = 2 * sink;
            while node != 2 * source + 1 {
                let prev = parent[node] as usize;
                let (a, b) = (prev / 2, node / 2);
                if a == b {
                    used[a] = node % 2 == 1;
                } else if prev % 2 == 1 {
                    let i = self.nbr[a].iter().position(|&x| x == b).expect("adjacent");
                    flow[a][i] = true;
                } else {
                    let i = self.nbr[b].iter().position(|&x| x == a).expect("adjacent");
                    flow[b][i] = false;
                }
                node = prev;
            }
        }
        true
    }
}

/// Every admissible orientation of `graph` as a height-indexed digraph.
pub fn admissible_orientations(graph: &CubicGraph) -> Vec<PolytopeDigraph> {
    let space = OrientationSpace::new(graph.clone());
    let mut out = Vec::new();
    space.visit_all(&mut |leaf| {
        out.push(leaf.digraph(space.facets()));
        Flow::Continue
    });
    out
}
