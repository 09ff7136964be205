//! Planar embedding and vertex connectivity of undirected graphs.
//!
//! The embedding routine is the Demoucron–Malgrange–Pertuiset path
//! addition algorithm: starting from a cycle it repeatedly embeds a path of
//! some fragment into a face that contains all of the fragment's
//! attachment vertices, preferring fragments with a single admissible face.
//! A fragment with no admissible face proves the graph non-planar.

use crate::error::{GraphError, NonPlanarEvidence};
use crate::graph::PolytopeDigraph;

/// Face cycles of a planar embedding.
///
/// The canonical form rotates every face to start at its smallest vertex,
/// sorts the faces and picks the lexicographically smaller of the two
/// mirror images, so the face set of a 3-connected planar graph does not
/// depend on how it was computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<usize>>,
}

impl FaceSet {
    pub fn canonical(faces: Vec<Vec<usize>>) -> Self {
        let forward = normalize_faces(faces.iter().cloned());
        let mirrored = normalize_faces(faces.into_iter().map(|mut f| {
            f.reverse();
            f
        }));
        FaceSet {
            faces: forward.min(mirrored),
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.faces.iter().map(Vec::as_slice)
    }

    /// `V − E + F = 2`.
    pub fn satisfies_euler(&self, vertices: usize, edges: usize) -> bool {
        vertices as i64 - edges as i64 + self.faces.len() as i64 == 2
    }

    /// Whether each of the given edges lies on exactly two face cycles
    /// (counting a bridge-like double traversal of one face twice).
    pub fn every_edge_on_two_faces(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
        use std::collections::HashMap;
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                *count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut total = 0;
        for (a, b) in edges {
            total += 1;
            if count.get(&(a.min(b), a.max(b))) != Some(&2) {
                return false;
            }
        }
        total == count.len()
    }
}

fn normalize_faces(faces: impl Iterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = faces
        .map(|mut f| {
            if let Some(pos) = f.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
                f.rotate_left(pos);
            }
            f
        })
        .collect();
    out.sort();
    out
}

/// Canonical face cycles of the underlying undirected graph of `g`.
pub fn planar_embedding(g: &PolytopeDigraph) -> Result<FaceSet, GraphError> {
    embed_undirected(&g.undirected_adjacency())
}

/// Canonical face cycles of a simple undirected graph.
///
/// The graph must be biconnected; otherwise [`GraphError::NotBiconnected`].
pub fn embed_undirected(adj: &[Vec<usize>]) -> Result<FaceSet, GraphError> {
    let n = adj.len();
    if n < 3 || !is_biconnected(adj, None) {
        return Err(GraphError::NotBiconnected);
    }
    let edge_total: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;

    let cycle = find_cycle(adj);
    let mut in_h = vec![false; n];
    // embedded[v][i] tracks the edge to adj[v][i]
    let mut embedded: Vec<Vec<bool>> = adj.iter().map(|l| vec![false; l.len()]).collect();
    let mut embedded_edges = 0;
    let mark_edge = |embedded: &mut Vec<Vec<bool>>, a: usize, b: usize| {
        let ia = adj[a].iter().position(|&x| x == b).expect("edge exists");
        let ib = adj[b].iter().position(|&x| x == a).expect("edge exists");
        embedded[a][ia] = true;
        embedded[b][ib] = true;
    };
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        mark_edge(&mut embedded, a, b);
        embedded_edges += 1;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &cycle {
        faces_of[v] = vec![0, 1];
    }

    while embedded_edges < edge_total {
        let fragments = fragments(adj, &in_h, &embedded);
        let mut chosen: Option<(usize, usize)> = None;
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible = admissible_faces(&frag.attachments, &faces_of);
            match admissible.len() {
                0 => {
                    return Err(GraphError::NonPlanar(NonPlanarEvidence {
                        attachments: frag.attachments.clone(),
                        embedded_faces: faces.clone(),
                    }))
                }
                1 => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_id) = chosen.or(fallback).expect("some fragment remains");
        let path = fragment_path(adj, &in_h, &fragments[fi]);

        for w in path.windows(2) {
            mark_edge(&mut embedded, w[0], w[1]);
            embedded_edges += 1;
        }
        for &v in &path[1..path.len() - 1] {
            in_h[v] = true;
        }

        let face = std::mem::take(&mut faces[face_id]);
        let (first, second) = split_face(&face, &path);
        for &v in &face {
            faces_of[v].retain(|&f| f != face_id);
        }
        let new_id = faces.len();
        for &v in &first {
            faces_of[v].push(face_id);
        }
        for &v in &second {
            faces_of[v].push(new_id);
        }
        faces[face_id] = first;
        faces.push(second);
    }
    Ok(FaceSet::canonical(faces))
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices; empty for a chord.
    interior: Vec<usize>,
    /// For a chord, its two endpoints.
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], embedded: &[Vec<bool>]) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        if !in_h[a] {
            continue;
        }
        for (i, &b) in adj[a].iter().enumerate() {
            if a < b && in_h[b] && !embedded[a][i] {
                out.push(Fragment {
                    attachments: vec![a, b],
                    interior: Vec::new(),
                    chord: Some((a, b)),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut interior = vec![s];
        let mut attachments = Vec::new();
        seen[s] = true;
        let mut head = 0;
        while head < interior.len() {
            let v = interior[head];
            head += 1;
            for &w in &adj[v] {
                if in_h[w] {
                    attachments.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    interior.push(w);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment {
            attachments,
            interior,
            chord: None,
        });
    }
    out
}

fn admissible_faces(attachments: &[usize], faces_of: &[Vec<usize>]) -> Vec<usize> {
    let mut common: Vec<usize> = faces_of[attachments[0]].clone();
    for &a in &attachments[1..] {
        common.retain(|f| faces_of[a].contains(f));
    }
    common.sort_unstable();
    common
}

/// A path between two distinct attachment vertices through the fragment.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start = frag.attachments[0];
    let n = adj.len();
    let mut in_frag = vec![false; n];
    for &v in &frag.interior {
        in_frag[v] = true;
    }
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[start] {
        if in_frag[w] && parent[w] == usize::MAX {
            parent[w] = start;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if in_h[w] && w != start {
                let mut path = vec![w, v];
                let mut cur = v;
                while parent[cur] != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if in_frag[w] && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected graph has two attachments")
}

/// Splits a face cycle by a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("non-empty path");
    let len = face.len();
    let i = face.iter().position(|&x| x == a).expect("endpoint on face");
    let j = face.iter().position(|&x| x == b).expect("endpoint on face");
    let interior = &path[1..path.len() - 1];

    // a .. b along the face, then back to a through the path
    let mut first = Vec::new();
    let mut k = i;
    loop {
        first.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % len;
    }
    first.extend(interior.iter().rev());

    // b .. a along the face, then back to b through the path
    let mut second = Vec::new();
    let mut k = j;
    loop {
        second.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % len;
    }
    second.extend(interior.iter());
    (first, second)
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    cycle.push(cur);
                }
                return cycle;
            }
        } else {
            stack.pop();
        }
    }
    unreachable!("biconnected graph has a cycle")
}

/// Connected, at least 3 vertices and no articulation point, ignoring the
/// `removed` vertex if given.
fn is_biconnected(adj: &[Vec<usize>], removed: Option<usize>) -> bool {
    let n = adj.len();
    let alive = |v: usize| Some(v) != removed;
    let count = (0..n).filter(|&v| alive(v)).count();
    if count < 3 {
        return false;
    }
    let root = (0..n).find(|&v| alive(v)).expect("non-empty");
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut root_children = 0;
    // iterative Tarjan
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    let mut visited = 1;
    while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if !alive(w) || w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                visited += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != root && low[v] >= disc[p] {
                    return false;
                }
            }
        }
    }
    visited == count && root_children <= 1
}

/// Planarity of an arbitrary simple graph, tested block by block.
pub fn is_planar_undirected(adj: &[Vec<usize>]) -> bool {
    biconnected_blocks(adj).into_iter().all(|block| {
        if block.len() < 4 {
            return true;
        }
        let mut index = vec![usize::MAX; adj.len()];
        for (i, &v) in block.iter().enumerate() {
            index[v] = i;
        }
        let sub: Vec<Vec<usize>> = block
            .iter()
            .map(|&v| {
                adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        !matches!(embed_undirected(&sub), Err(GraphError::NonPlanar(_)))
    })
}

/// Vertex sets of the biconnected components (bridges give 2-vertex blocks).
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// No vertex cut of size at most two (undirected sense).
pub fn is_three_connected(g: &PolytopeDigraph) -> bool {
    is_three_connected_undirected(&g.undirected_adjacency())
}

pub fn is_three_connected_undirected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n < 4 {
        return false;
    }
    if !is_biconnected(adj, None) {
        return false;
    }
    (0..n).all(|x| is_biconnected(adj, Some(x)))
}
