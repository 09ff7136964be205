//! Exact expected Random Edge path lengths.
//!
//! From a vertex `v` the walk moves to a uniformly chosen lower neighbor,
//! so `E(v0) = 0` and `E(v) = 1 + mean(E(w))` over the lower neighbors `w`.
//! Indices are a topological order, so one upward pass computes every value.

use std::fmt;

use crate::cert::{self, CertPoint};
use crate::error::GraphError;
use crate::graph::{self, PolytopeDigraph, VertexId};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectationTable {
    pub values: Vec<Rational>,
}

impl ExpectationTable {
    pub fn get(&self, v: VertexId) -> &Rational {
        &self.values[v.0]
    }

    /// Vertex with the largest expectation; the lowest such vertex on ties.
    pub fn argmax(&self) -> (VertexId, &Rational) {
        let mut best = 0;
        for (i, e) in self.values.iter().enumerate() {
            if *e > self.values[best] {
                best = i;
            }
        }
        (VertexId(best), &self.values[best])
    }

    /// Re-checks `E(v) − 1 = mean of lower-neighbor values` for every `v ≠ v0`
    /// and `E(v0) = 0`; returns the first vertex where it fails.
    pub fn verify_recurrence(&self, g: &PolytopeDigraph) -> Result<(), VertexId> {
        if self.values.len() != g.vertex_count() {
            return Err(VertexId(0));
        }
        if !self.values.is_empty() && !self.values[0].is_zero() {
            return Err(VertexId(0));
        }
        for v in 1..g.vertex_count() {
            let down = g.down(v);
            if down.is_empty() {
                return Err(VertexId(v));
            }
            let sum: Rational = down.iter().map(|&w| &self.values[w]).sum();
            let mean = sum.div_int(down.len() as u64);
            if &self.values[v] - &Rational::one() != mean {
                return Err(VertexId(v));
            }
        }
        Ok(())
    }
}

fn check_unique_sink(g: &PolytopeDigraph) -> Result<(), GraphError> {
    match (1..g.vertex_count()).find(|&v| g.down_degree(v) == 0) {
        Some(vertex) => Err(GraphError::SinkNotUnique { vertex }),
        None => Ok(()),
    }
}

pub fn expected_steps(g: &PolytopeDigraph) -> Result<ExpectationTable, GraphError> {
    check_unique_sink(g)?;
    let mut values: Vec<Rational> = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let down = g.down(v);
        let e = if down.is_empty() {
            Rational::zero()
        } else {
            let sum: Rational = down.iter().map(|&w| &values[w]).sum();
            Rational::one() + sum.div_int(down.len() as u64)
        };
        values.push(e);
    }
    Ok(ExpectationTable { values })
}

/// Traversal probability of every directed edge for walks from `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeProbabilities {
    pub start: VertexId,
    /// `(from, to, probability)` in file edge order.
    pub prob: Vec<(usize, usize, Rational)>,
}

impl EdgeProbabilities {
    pub fn total(&self) -> Rational {
        self.prob.iter().map(|(_, _, p)| p).sum()
    }

    pub fn get(&self, from: usize, to: usize) -> Option<&Rational> {
        self.prob
            .iter()
            .find(|(a, b, _)| *a == from && *b == to)
            .map(|(_, _, p)| p)
    }

    /// Inflow minus outflow at each vertex.
    pub fn net_inflow(&self, vertex_count: usize) -> Vec<Rational> {
        let mut net = vec![Rational::zero(); vertex_count];
        for (a, b, p) in &self.prob {
            net[*b] += p;
            net[*a] -= p.clone();
        }
        net
    }
}

/// Probability that the walk from `start` visits each vertex.
pub fn visit_probabilities(g: &PolytopeDigraph, start: VertexId) -> Result<Vec<Rational>, GraphError> {
    check_unique_sink(g)?;
    if start.0 >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange(start.0));
    }
    let mut visit = vec![Rational::zero(); g.vertex_count()];
    visit[start.0] = Rational::one();
    for v in (1..=start.0).rev() {
        if visit[v].is_zero() {
            continue;
        }
        let share = visit[v].div_int(g.down_degree(v) as u64);
        for &w in g.down(v) {
            visit[w] += &share;
        }
    }
    Ok(visit)
}

/// Forward propagation: each vertex's visit probability splits evenly
/// over its lower edges. The edge total equals `E(start)`.
pub fn edge_probabilities(g: &PolytopeDigraph, start: VertexId) -> Result<EdgeProbabilities, GraphError> {
    let visit = visit_probabilities(g, start)?;
    let prob = g
        .edges()
        .map(|(a, b)| {
            let p = if visit[a].is_zero() {
                Rational::zero()
            } else {
                visit[a].div_int(g.down_degree(a) as u64)
            };
            (a, b, p)
        })
        .collect();
    Ok(EdgeProbabilities { start, prob })
}

/// Per-vertex comparison of `E(v)` with `α·N₁(v) + β·N(v)` and of every
/// `E(v)` with the global bound for the instance's facet count.
#[derive(Clone, Debug)]
pub struct CertificateCheck {
    pub point: CertPoint,
    /// `α·N₁(v) + β·N(v) − E(v)`; `None` for the top vertex.
    pub margins: Vec<Option<Rational>>,
    pub violations: Vec<VertexId>,
    pub global_bound: Option<Rational>,
    pub global_violations: Vec<VertexId>,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.global_violations.is_empty()
    }

    pub fn min_margin(&self) -> Option<&Rational> {
        self.margins.iter().flatten().min()
    }
}

impl fmt::Display for CertificateCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha: {}", self.point.alpha)?;
        writeln!(f, "beta: {}", self.point.beta)?;
        if let Some(m) = self.min_margin() {
            writeln!(f, "min_margin: {} ({})", m, m.decimal6())?;
        }
        writeln!(f, "violations: {:?}", self.violations)?;
        if let Some(b) = &self.global_bound {
            writeln!(f, "global_bound: {} ({})", b, b.decimal6())?;
        }
        writeln!(f, "global_violations: {:?}", self.global_violations)?;
        write!(f, "passed: {}", self.passed())
    }
}

/// Checks the per-vertex linear bound for every vertex below the top and
/// the global `(α, β)` bound for every vertex.
pub fn check_certificate_bound(g: &PolytopeDigraph, point: &CertPoint) -> Result<CertificateCheck, GraphError> {
    let table = expected_steps(g)?;
    Ok(check_certificate_bound_with(g, &table, point))
}

pub fn check_certificate_bound_with(g: &PolytopeDigraph, table: &ExpectationTable, point: &CertPoint) -> CertificateCheck {
    let profiles = graph::profiles(g);
    let top = g.vertex_count().saturating_sub(1);
    let mut margins = Vec::with_capacity(g.vertex_count());
    let mut violations = Vec::new();
    for (v, p) in profiles.iter().enumerate() {
        if v == top {
            margins.push(None);
            continue;
        }
        let bound = point.alpha.mul_int(p.n1_below as i64) + point.beta.mul_int(p.n_below as i64);
        let margin = bound - &table.values[v];
        if margin.is_negative() {
            violations.push(VertexId(v));
        }
        margins.push(Some(margin));
    }
    let global_bound = cert::upper_bound(g.facet_count(), point).ok();
    let global_violations = match &global_bound {
        Some(b) => (0..g.vertex_count())
            .filter(|&v| &table.values[v] > b)
            .map(VertexId)
            .collect(),
        None => Vec::new(),
    };
    CertificateCheck {
        point: point.clone(),
        margins,
        violations,
        global_bound,
        global_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tetra() -> PolytopeDigraph {
        PolytopeDigraph::new(4, vec![vec![], vec![0], vec![1, 0], vec![2, 1, 0]]).unwrap()
    }

    #[test]
    fn tetrahedron_values() {
        let t = expected_steps(&tetra()).unwrap();
        assert_eq!(t.values, vec![q(0, 1), q(1, 1), q(3, 2), q(11, 6)]);
        assert!(t.verify_recurrence(&tetra()).is_ok());
        assert_eq!(t.argmax(), (VertexId(3), &q(11, 6)));
    }

    #[test]
    fn second_sink_is_an_error() {
        let g = PolytopeDigraph::new(4, vec![vec![], vec![], vec![1, 0]]).unwrap();
        assert_eq!(expected_steps(&g), Err(GraphError::SinkNotUnique { vertex: 1 }));
    }

    #[test]
    fn tetrahedron_flow() {
        let g = tetra();
        let p = edge_probabilities(&g, VertexId(3)).unwrap();
        for w in 0..3 {
            assert_eq!(p.get(3, w), Some(&q(1, 3)));
        }
        assert_eq!(p.total(), q(11, 6));
        let net = p.net_inflow(4);
        assert_eq!(net[3], q(-1, 1));
        assert_eq!(net[0], q(1, 1));
        assert!(net[1].is_zero() && net[2].is_zero());
    }

    #[test]
    fn start_at_sink_has_no_flow() {
        let p = edge_probabilities(&tetra(), VertexId(0)).unwrap();
        assert!(p.total().is_zero());
    }

    #[test]
    fn tetrahedron_certificate_margin() {
        let g = tetra();
        let check = check_certificate_bound(&g, &CertPoint::certified_optimum()).unwrap();
        // v2 -> {v1, v0}: E = 3/2 against 46/87 + 2*42/87 = 130/87
        assert_eq!(check.margins[2], Some(q(130, 87) - q(3, 2)));
        assert_eq!(check.margins[2], Some(q(-1, 174)));
        assert_eq!(check.violations, vec![VertexId(2)]);
        assert_eq!(check.margins[1], Some(q(46 + 42, 87) - q(1, 1)));
        assert_eq!(check.margins[3], None);
        assert_eq!(check.global_bound, Some(q(175, 87)));
        assert!(check.global_violations.is_empty());
    }

    #[test]
    fn recurrence_check_catches_tampering() {
        let g = tetra();
        let mut t = expected_steps(&g).unwrap();
        t.values[2] = q(7, 4);
        assert_eq!(t.verify_recurrence(&g), Err(VertexId(2)));
    }
}
