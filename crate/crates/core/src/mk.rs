//! Realizability of a digraph by a three-dimensional linear program.
//!
//! A digraph is the height-ordered graph of some 3D LP exactly when it is
//! planar and 3-connected, acyclic with a unique source and sink, has a
//! unique local sink on every face cycle, and has three source-to-sink
//! paths with pairwise disjoint interiors (Mihalisin and Klee).

use std::collections::VecDeque;
use std::fmt;

use crate::graph::PolytopeDigraph;
use crate::planar::{self, FaceSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MkReport {
    /// Total degree 3 everywhere; the other flags are only meaningful then.
    pub three_regular: bool,
    pub planar: bool,
    pub three_connected: bool,
    pub acyclic_unique_source_sink: bool,
    pub unique_local_sink_per_face: bool,
    pub violating_faces: Vec<Vec<usize>>,
    pub three_disjoint_paths: bool,
    pub realizable: bool,
    pub diagnostics: Vec<String>,
}

impl fmt::Display for MkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "three_regular: {}", self.three_regular)?;
        writeln!(f, "planar: {}", self.planar)?;
        writeln!(f, "three_connected: {}", self.three_connected)?;
        writeln!(
            f,
            "acyclic_unique_source_sink: {}",
            self.acyclic_unique_source_sink
        )?;
        writeln!(
            f,
            "unique_local_sink_per_face: {}",
            self.unique_local_sink_per_face
        )?;
        for face in &self.violating_faces {
            writeln!(f, "violating_face: {face:?}")?;
        }
        writeln!(f, "three_disjoint_paths: {}", self.three_disjoint_paths)?;
        for d in &self.diagnostics {
            writeln!(f, "diagnostic: {d}")?;
        }
        write!(f, "realizable: {}", self.realizable)
    }
}

/// Exactly one vertex without lower neighbors and exactly one without
/// upper neighbors.
pub fn check_unique_source_sink(g: &PolytopeDigraph) -> bool {
    let n = g.vertex_count();
    let sinks = (0..n).filter(|&v| g.down_degree(v) == 0).count();
    let sources = (0..n).filter(|&v| g.up_degree(v) == 0).count();
    sinks == 1 && sources == 1
}

/// Faces whose cycle does not have exactly one vertex lower than both of
/// its cycle neighbors.
pub fn check_face_local_sinks(_g: &PolytopeDigraph, faces: &FaceSet) -> Vec<Vec<usize>> {
    faces
        .iter()
        .filter(|face| {
            let len = face.len();
            let sinks = (0..len)
                .filter(|&i| {
                    let v = face[i];
                    v < face[(i + len - 1) % len] && v < face[(i + 1) % len]
                })
                .count();
            sinks != 1
        })
        .map(<[usize]>::to_vec)
        .collect()
}

/// Three directed source-to-sink paths with disjoint interiors, decided by
/// a unit vertex-capacity max flow.
pub fn check_three_disjoint_paths(g: &PolytopeDigraph) -> bool {
    let n = g.vertex_count();
    let sinks: Vec<usize> = (0..n).filter(|&v| g.down_degree(v) == 0).collect();
    let sources: Vec<usize> = (0..n).filter(|&v| g.up_degree(v) == 0).collect();
    if sinks.len() != 1 || sources.len() != 1 || n < 2 {
        return false;
    }
    disjoint_path_count(g, sources[0], sinks[0], 3) >= 3
}

/// Number of interior-disjoint directed paths from `source` to `sink`,
/// stopping once `limit` are found.
pub fn disjoint_path_count(g: &PolytopeDigraph, source: usize, sink: usize, limit: usize) -> usize {
    let n = g.vertex_count();
    // node 2v is v_in, 2v+1 is v_out
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == source || v == sink { limit } else { 1 };
        net.add_edge(2 * v, 2 * v + 1, cap);
    }
    for (u, w) in g.edges() {
        net.add_edge(2 * u + 1, 2 * w, 1);
    }
    net.max_flow(2 * source, 2 * sink + 1, limit)
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, c: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Edmonds–Karp with BFS in insertion order.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut x = t;
            while x != s {
                let e = via[x];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                x = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Runs every check and aggregates; never stops at the first failure.
pub fn validate_mihalisin_klee(g: &PolytopeDigraph) -> MkReport {
    let adj = g.undirected_adjacency();
    let mut diagnostics = Vec::new();
    let three_regular = (0..g.vertex_count()).all(|v| g.degree(v) == 3);
    if !three_regular {
        let bad: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) != 3).collect();
        diagnostics.push(format!("not 3-regular at vertices {bad:?}"));
    }
    let three_connected = planar::is_three_connected_undirected(&adj);
    let embedding = planar::embed_undirected(&adj);
    let planar_ok = match &embedding {
        Ok(_) => true,
        Err(_) => planar::is_planar_undirected(&adj),
    };
    let (unique_local_sink_per_face, violating_faces) = match &embedding {
        Ok(faces) => {
            let bad = check_face_local_sinks(g, faces);
            (bad.is_empty(), bad)
        }
        Err(e) => {
            diagnostics.push(format!("no face structure: {e}"));
            (false, Vec::new())
        }
    };
    let acyclic_unique_source_sink = check_unique_source_sink(g);
    let three_disjoint_paths = check_three_disjoint_paths(g);
    let realizable = three_regular
        && planar_ok
        && three_connected
        && acyclic_unique_source_sink
        && unique_local_sink_per_face
        && three_disjoint_paths;
    MkReport {
        three_regular,
        planar: planar_ok,
        three_connected,
        acyclic_unique_source_sink,
        unique_local_sink_per_face,
        violating_faces,
        three_disjoint_paths,
        realizable,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> PolytopeDigraph {
        PolytopeDigraph::new(4, vec![vec![], vec![0], vec![1, 0], vec![2, 1, 0]]).unwrap()
    }

    #[test]
    fn tetrahedron_is_realizable() {
        let g = tetra();
        let r = validate_mihalisin_klee(&g);
        assert!(r.realizable, "{r}");
        let faces = planar::planar_embedding(&g).unwrap();
        assert!(check_face_local_sinks(&g, &faces).is_empty());
        // direct edge, via v2, via v1
        assert_eq!(disjoint_path_count(&g, 3, 0, 5), 3);
    }

    fn cube_adjacency() -> Vec<Vec<usize>> {
        (0..8usize).map(|v| vec![v ^ 1, v ^ 2, v ^ 4]).collect()
    }

    #[test]
    fn cube_with_linear_heights_is_realizable() {
        let g = PolytopeDigraph::from_order(6, &cube_adjacency(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        let r = validate_mihalisin_klee(&g);
        assert!(r.realizable, "{r}");
    }

    #[test]
    fn two_sinks_rejected() {
        // cube vertices 000 and 011 both placed below all their neighbors
        let g = PolytopeDigraph::from_order(6, &cube_adjacency(), &[0, 3, 1, 2, 4, 5, 6, 7]);
        assert!(!check_unique_source_sink(&g));
        let r = validate_mihalisin_klee(&g);
        assert!(!r.realizable);
        assert!(!r.acyclic_unique_source_sink);
        assert!(r.planar && r.three_connected);
    }

    #[test]
    fn face_with_two_local_sinks() {
        let faces = FaceSet {
            faces: vec![vec![0, 3, 1, 2]],
        };
        let g = PolytopeDigraph::new(0, vec![vec![]; 4]).unwrap();
        assert_eq!(check_face_local_sinks(&g, &faces), vec![vec![0, 3, 1, 2]]);
        let ok = FaceSet {
            faces: vec![vec![0, 1, 3, 2]],
        };
        assert!(check_face_local_sinks(&g, &ok).is_empty());
    }

    #[test]
    fn funnel_blocks_disjoint_paths() {
        // 3 -> {2}, 2 -> {1, 0}, 1 -> {0}: every path passes vertex 2
        let g = PolytopeDigraph::new(0, vec![vec![], vec![0], vec![1, 0], vec![2]]).unwrap();
        assert!(!check_three_disjoint_paths(&g));
        assert_eq!(disjoint_path_count(&g, 3, 0, 3), 1);
    }

    #[test]
    fn irregular_input_gets_distinct_diagnostic() {
        let g = PolytopeDigraph::new(4, vec![vec![], vec![0], vec![1, 0], vec![2, 1]]).unwrap();
        let r = validate_mihalisin_klee(&g);
        assert!(!r.three_regular);
        assert!(!r.realizable);
        assert!(r.diagnostics.iter().any(|d| d.contains("not 3-regular")));
    }

    #[test]
    fn k5_orientation_is_nonplanar() {
        let down: Vec<Vec<usize>> = (0..5).map(|v| (0..v).rev().collect()).collect();
        let g = PolytopeDigraph::new(0, down).unwrap();
        let r = validate_mihalisin_klee(&g);
        assert!(!r.planar);
        assert!(!r.realizable);
    }
}
