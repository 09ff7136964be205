//! Height-ordered directed graphs of simple 3-polytopes.
//!
//! Vertex `i` is the `i`-th lowest vertex: index 0 is the optimum and the
//! highest index is the top vertex. Every edge points from the higher to the
//! lower endpoint, so each vertex stores only its lower neighbors and
//! acyclicity holds by construction.

use std::fmt;

use crate::error::GraphError;

/// Index of a vertex in height order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolytopeDigraph {
    facets: usize,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    embedding: Option<Vec<[usize; 3]>>,
}

impl PolytopeDigraph {
    /// Builds a digraph from per-vertex lower-neighbor lists.
    ///
    /// Rejects neighbors that are not strictly lower and repeated neighbors.
    /// Polytope validity is not checked here, see [`validate_polytope`].
    pub fn new(facets: usize, down: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        for (v, list) in down.iter().enumerate() {
            for (i, &w) in list.iter().enumerate() {
                if w >= v {
                    return Err(GraphError::InvalidDownList {
                        vertex: v,
                        neighbor: w,
                    });
                }
                if list[..i].contains(&w) {
                    return Err(GraphError::InvalidDownList {
                        vertex: v,
                        neighbor: w,
                    });
                }
            }
        }
        let mut up = vec![Vec::new(); down.len()];
        for (v, list) in down.iter().enumerate() {
            for &w in list {
                up[w].push(v);
            }
        }
        Ok(PolytopeDigraph {
            facets,
            down,
            up,
            embedding: None,
        })
    }

    /// Builds the height-ordered digraph of an undirected graph given a
    /// linear order of its vertices (`order[h]` is the vertex at height `h`).
    pub fn from_order(facets: usize, adjacency: &[Vec<usize>], order: &[usize]) -> Self {
        let n = adjacency.len();
        assert_eq!(order.len(), n, "order must list every vertex once");
        let mut height = vec![usize::MAX; n];
        for (h, &v) in order.iter().enumerate() {
            height[v] = h;
        }
        let down = order
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = adjacency[v]
                    .iter()
                    .map(|&w| height[w])
                    .filter(|&hw| hw < height[v])
                    .collect();
                list.sort_unstable_by(|a, b| b.cmp(a));
                list
            })
            .collect();
        PolytopeDigraph::new(facets, down).expect("order-derived lists are valid")
    }

    pub fn with_embedding(mut self, embedding: Vec<[usize; 3]>) -> Self {
        self.embedding = Some(embedding);
        self
    }

    pub fn embedding(&self) -> Option<&[[usize; 3]]> {
        self.embedding.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.down.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets
    }

    pub fn edge_count(&self) -> usize {
        self.down.iter().map(Vec::len).sum()
    }

    pub fn top(&self) -> VertexId {
        VertexId(self.vertex_count().saturating_sub(1))
    }

    pub fn down(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    pub fn up(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    pub fn down_degree(&self, v: usize) -> usize {
        self.down[v].len()
    }

    pub fn up_degree(&self, v: usize) -> usize {
        self.up[v].len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.down[v].len() + self.up[v].len()
    }

    pub fn down_lists(&self) -> &[Vec<usize>] {
        &self.down
    }

    /// Undirected neighbors, lower ones first.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[v].iter().chain(self.up[v].iter()).copied()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        self.down[hi].contains(&lo)
    }

    /// Directed edges `(from, to)` in file order: increasing tail, then the
    /// tail's down-list order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.down
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |&w| (v, w)))
    }

    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|v| self.neighbors(v).collect())
            .collect()
    }

    /// Same digraph with every down-list sorted in descending order.
    pub fn normalized(&self) -> Self {
        let mut g = self.clone();
        for list in &mut g.down {
            list.sort_unstable_by(|a, b| b.cmp(a));
        }
        for list in &mut g.up {
            list.sort_unstable();
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v.0))
        }
    }
}

/// Outcome of the structural polytope checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub facets: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Vertices whose total degree differs from 3.
    pub irregular_vertices: Vec<usize>,
    pub vertex_count_ok: bool,
    pub edge_count_ok: bool,
    pub sinks: usize,
    pub sources: usize,
    pub one_vertices: usize,
    pub two_vertices: usize,
    pub three_vertices: usize,
}

impl ValidationReport {
    pub fn three_regular(&self) -> bool {
        self.irregular_vertices.is_empty()
    }

    pub fn unique_sink_and_source(&self) -> bool {
        self.sinks == 1 && self.three_vertices == 1
    }

    pub fn dehn_sommerville(&self) -> bool {
        self.facets >= 3
            && self.one_vertices == self.facets - 3
            && self.two_vertices == self.facets - 3
    }

    pub fn passed(&self) -> bool {
        self.three_regular()
            && self.vertex_count_ok
            && self.edge_count_ok
            && self.unique_sink_and_source()
            && self.dehn_sommerville()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "facets: {}", self.facets)?;
        writeln!(f, "vertices: {}", self.vertices)?;
        writeln!(f, "edges: {}", self.edges)?;
        writeln!(f, "three_regular: {}", self.three_regular())?;
        if !self.irregular_vertices.is_empty() {
            writeln!(f, "irregular_vertices: {:?}", self.irregular_vertices)?;
        }
        writeln!(f, "vertex_count_ok: {}", self.vertex_count_ok)?;
        writeln!(f, "edge_count_ok: {}", self.edge_count_ok)?;
        writeln!(f, "sinks: {}", self.sinks)?;
        writeln!(f, "sources: {}", self.sources)?;
        writeln!(f, "one_vertices: {}", self.one_vertices)?;
        writeln!(f, "two_vertices: {}", self.two_vertices)?;
        writeln!(f, "dehn_sommerville: {}", self.dehn_sommerville())?;
        write!(f, "polytope_valid: {}", self.passed())
    }
}

pub fn validate_polytope(g: &PolytopeDigraph) -> ValidationReport {
    let n = g.facet_count();
    let v = g.vertex_count();
    let e = g.edge_count();
    let irregular_vertices = (0..v).filter(|&x| g.degree(x) != 3).collect();
    let count_down = |d: usize| (0..v).filter(|&x| g.down_degree(x) == d).count();
    ValidationReport {
        facets: n,
        vertices: v,
        edges: e,
        irregular_vertices,
        vertex_count_ok: n >= 4 && v == 2 * n - 4,
        edge_count_ok: n >= 4 && e == 3 * n - 6,
        sinks: count_down(0),
        sources: (0..v).filter(|&x| g.up_degree(x) == 0).count(),
        one_vertices: count_down(1),
        two_vertices: count_down(2),
        three_vertices: count_down(3),
    }
}

/// Down-degree and the counts of 1- and 2-vertices at or below a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexProfile {
    pub down_degree: usize,
    pub n1_below: usize,
    pub n2_below: usize,
    pub n_below: usize,
}

/// Prefix counts for every vertex at once.
pub fn profiles(g: &PolytopeDigraph) -> Vec<VertexProfile> {
    let mut n1 = 0;
    let mut n2 = 0;
    (0..g.vertex_count())
        .map(|v| {
            let d = g.down_degree(v);
            match d {
                1 => n1 += 1,
                2 => n2 += 1,
                _ => {}
            }
            VertexProfile {
                down_degree: d,
                n1_below: n1,
                n2_below: n2,
                n_below: n1 + n2,
            }
        })
        .collect()
}

pub fn vertex_profile(g: &PolytopeDigraph, v: VertexId) -> Result<VertexProfile, GraphError> {
    g.check_vertex(v)?;
    let (mut n1, mut n2) = (0, 0);
    for x in 0..=v.0 {
        match g.down_degree(x) {
            1 => n1 += 1,
            2 => n2 += 1,
            _ => {}
        }
    }
    Ok(VertexProfile {
        down_degree: g.down_degree(v.0),
        n1_below: n1,
        n2_below: n2,
        n_below: n1 + n2,
    })
}

/// `(Δ₁, Δ)`: differences of the 1-vertex count and of the 1-or-2-vertex
/// count between `v` and a lower vertex `w`.
///
/// For a vertex `v` other than the top, `Δ` is the height distance `v − w`.
pub fn deltas(g: &PolytopeDigraph, v: VertexId, w: VertexId) -> Result<(usize, usize), GraphError> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if w.0 >= v.0 {
        return Err(GraphError::NotLower { v: v.0, w: w.0 });
    }
    let pv = vertex_profile(g, v)?;
    let pw = vertex_profile(g, w)?;
    Ok((pv.n1_below - pw.n1_below, pv.n_below - pw.n_below))
}

/// Whether a directed path through every vertex exists.
///
/// Such a path in an acyclic digraph is a linear extension, so it exists
/// exactly when the height order is the only one, that is when every vertex
/// `i > 0` has `i − 1` among its lower neighbors.
pub fn has_directed_hamiltonian_path(g: &PolytopeDigraph) -> bool {
    (1..g.vertex_count()).all(|v| g.down(v).contains(&(v - 1)))
}
