//! Embedded cubic planar 3-connected graphs and their generation.
//!
//! A graph is stored as a rotation system: `rot[v]` lists the three
//! neighbors of `v` in cyclic order. Face boundaries are the orbits of the
//! dart map `(u, v) ↦ (v, succ_v(u))`.
//!
//! Every 3-connected cubic planar graph arises from K4 by repeatedly
//! inserting a new edge between the midpoints of two edges on a common
//! face. Isomorphism classes are identified by a canonical code: a
//! breadth-first numbering started from every dart in both rotational
//! directions, keeping the smallest resulting neighbor sequence. 3-connected
//! planar graphs have a unique embedding up to reflection, so equal codes
//! mean isomorphic graphs.

use std::collections::HashSet;

use crate::planar;

/// Simple 3-polytopes by facet count (facet count, graphs).
pub const CENSUS: [(usize, usize); 9] = [
    (4, 1),
    (5, 1),
    (6, 2),
    (7, 5),
    (8, 14),
    (9, 50),
    (10, 233),
    (11, 1249),
    (12, 7595),
];

pub fn census_count(facets: usize) -> Option<usize> {
    CENSUS.iter().find(|(n, _)| *n == facets).map(|(_, c)| *c)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    pub rot: Vec<[usize; 3]>,
}

impl CubicGraph {
    pub fn tetrahedron() -> Self {
        CubicGraph {
            rot: vec![[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn facet_count(&self) -> usize {
        self.rot.len() / 2 + 2
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.rot.iter().map(|r| r.to_vec()).collect()
    }

    fn succ(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        let i = r.iter().position(|&x| x == u).expect("dart endpoints adjacent");
        r[(i + 1) % 3]
    }

    /// Each face as the dart cycle `[(f0, f1), (f1, f2), ...]`.
    pub fn face_darts(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.rot.len();
        let mut seen = vec![[false; 3]; n];
        let mut faces = Vec::new();
        for u in 0..n {
            for i in 0..3 {
                if seen[u][i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, self.rot[u][i]);
                loop {
                    let j = self.rot[a].iter().position(|&x| x == b).expect("adjacent");
                    if seen[a][j] {
                        break;
                    }
                    seen[a][j] = true;
                    face.push((a, b));
                    let c = self.succ(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.face_darts()
            .into_iter()
            .map(|f| f.into_iter().map(|(a, _)| a).collect())
            .collect()
    }

    /// Euler's relation for the stored rotation system.
    pub fn is_plane(&self) -> bool {
        let v = self.rot.len();
        let e = 3 * v / 2;
        v + self.face_darts().len() == e + 2
    }

    fn replace(&mut self, v: usize, old: usize, new: usize) {
        for x in self.rot[v].iter_mut() {
            if *x == old {
                *x = new;
                return;
            }
        }
        panic!("{old} not adjacent to {v}");
    }

    /// Subdivides darts `(a, b)` and `(c, d)` of one face by new vertices
    /// `x`, `y` and joins them inside that face.
    pub fn insert_edge(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> CubicGraph {
        let mut g = self.clone();
        let x = g.rot.len();
        let y = x + 1;
        g.rot.push([a, y, b]);
        g.rot.push([c, x, d]);
        g.replace(a, b, x);
        g.replace(b, a, x);
        g.replace(c, d, y);
        g.replace(d, c, y);
        g
    }

    /// Every graph obtained by one edge insertion.
    pub fn children(&self) -> Vec<CubicGraph> {
        let mut out = Vec::new();
        for face in self.face_darts() {
            for i in 0..face.len() {
                for j in i + 1..face.len() {
                    out.push(self.insert_edge(face[i], face[j]));
                }
            }
        }
        out
    }

    fn bfs_code(&self, start: usize, first: usize, forward: bool, best: Option<&[usize]>) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.rot.len();
        let mut number = vec![usize::MAX; n];
        let mut reference = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        number[start] = 0;
        reference[start] = first;
        queue.push(start);
        let mut code = Vec::with_capacity(3 * n);
        let mut head = 0;
        let mut smaller = false;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let r = &self.rot[x];
            let i0 = r.iter().position(|&w| w == reference[x]).expect("reference adjacent");
            for step in 0..3 {
                let i = if forward { (i0 + step) % 3 } else { (i0 + 3 - step) % 3 };
                let w = r[i];
                if number[w] == usize::MAX {
                    number[w] = queue.len();
                    reference[w] = x;
                    queue.push(w);
                }
                let sym = number[w];
                if let (Some(b), false) = (best, smaller) {
                    let k = code.len();
                    match sym.cmp(&b[k]) {
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Less => smaller = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                code.push(sym);
            }
        }
        Some((code, number))
    }

    /// Canonical code and the relabeling (`old -> new`) realizing it.
    pub fn canonical(&self) -> (Vec<usize>, Vec<usize>) {
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for v in 0..self.rot.len() {
            for &w in &self.rot[v] {
                for forward in [true, false] {
                    let current = best.as_ref().map(|(c, _)| c.as_slice());
                    if let Some((code, number)) = self.bfs_code(v, w, forward, current) {
                        if best.as_ref().map_or(true, |(c, _)| code < *c) {
                            best = Some((code, number));
                        }
                    }
                }
            }
        }
        best.expect("nonempty graph")
    }

    pub fn canonical_code(&self) -> Vec<usize> {
        self.canonical().0
    }

    /// The relabeled graph whose breadth-first numbering is the canonical one.
    pub fn canonical_form(&self) -> CubicGraph {
        let (code, _) = self.canonical();
        CubicGraph::from_code(&code)
    }

    /// Rebuilds a rotation system from a code. The code lists each vertex's
    /// neighbors starting at its reference neighbor, so the cyclic order is
    /// either the stored one or its reverse; both embed the same plane graph.
    pub fn from_code(code: &[usize]) -> CubicGraph {
        let n = code.len() / 3;
        let rot = (0..n)
            .map(|v| [code[3 * v], code[3 * v + 1], code[3 * v + 2]])
            .collect();
        CubicGraph { rot }
    }

    pub fn is_three_connected(&self) -> bool {
        planar::is_three_connected_undirected(&self.adjacency())
    }
}

/// All isomorphism classes for `facets` facets, in canonical-code order.
pub fn generate_cubic_planar_3connected(facets: usize) -> Vec<CubicGraph> {
    assert!(facets >= 4, "at least 4 facets");
    let mut level = vec![CubicGraph::tetrahedron().canonical_form()];
    for _ in 4..facets {
        let mut codes: HashSet<Vec<usize>> = HashSet::new();
        for g in &level {
            for child in g.children() {
                codes.insert(child.canonical_code());
            }
        }
        let mut sorted: Vec<Vec<usize>> = codes.into_iter().collect();
        sorted.sort();
        level = sorted.iter().map(|c| CubicGraph::from_code(c)).collect();
    }
    level
}
