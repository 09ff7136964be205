//! Lower-bound families: dual cyclic wedges, backbone polytopes and the
//! gadget splices of Examples 2 and 3.
//!
//! A backbone `P_k` has `k+2` facets and `2k` vertices; its lowest `k`
//! vertices form a chain in which every chain vertex has the next one as
//! its only lower neighbor. A gadget replaces every chain vertex by a small
//! three-terminal digraph: terminal `P` takes the edge arriving along the
//! chain, `Q` the other upper edge and `R` the edge leaving downwards. The
//! walk started at the top gadget's entry crosses every gadget in turn.

use std::fmt;
use std::str::FromStr;

use crate::engine;
use crate::enumeration::{generate_cubic_planar_3connected, Flow, OrientationSpace};
use crate::error::ConstructionError;
use crate::graph::{PolytopeDigraph, VertexId};
use crate::mk;
use crate::rational::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    DualCyclic,
    Backbone,
    Example2,
    Example3,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::DualCyclic, Family::Backbone, Family::Example2, Family::Example3];

    pub fn name(self) -> &'static str {
        match self {
            Family::DualCyclic => "dual-cyclic",
            Family::Backbone => "backbone",
            Family::Example2 => "example2",
            Family::Example3 => "example3",
        }
    }

    /// Smallest valid parameter.
    pub fn min_param(self) -> usize {
        match self {
            Family::DualCyclic => 4,
            Family::Backbone | Family::Example2 => 2,
            Family::Example3 => 1,
        }
    }

    pub fn facets(self, param: usize) -> usize {
        match self {
            Family::DualCyclic => param,
            Family::Backbone => param + 2,
            Family::Example2 => 4 * param + 2,
            Family::Example3 => 10 * param + 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ConstructionError::UnknownFamily(s.to_string()))
    }
}

/// A generated digraph with its designated start vertex.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: Family,
    pub param: usize,
    pub graph: PolytopeDigraph,
    pub start: VertexId,
}

impl Instance {
    pub fn comments(&self) -> Vec<String> {
        vec![
            format!("family: {}", self.family),
            format!("param: {}", self.param),
            format!("start: {}", self.start.0),
        ]
    }
}

fn check_param(family: Family, param: usize) -> Result<(), ConstructionError> {
    if param < family.min_param() {
        return Err(ConstructionError::ParamOutOfRange {
            family: family.name(),
            param: param as i64,
            min: family.min_param() as i64,
        });
    }
    Ok(())
}

pub fn tetrahedron() -> PolytopeDigraph {
    PolytopeDigraph::new(4, vec![vec![], vec![0], vec![1, 0], vec![2, 1, 0]]).expect("valid")
}

/// The wedge over a polygon, oriented as a two-rail ladder.
pub fn dual_cyclic(n: usize) -> Result<PolytopeDigraph, ConstructionError> {
    check_param(Family::DualCyclic, n)?;
    if n == 4 {
        return Ok(tetrahedron());
    }
    let v = 2 * n - 4;
    let mut down = vec![Vec::new(); v];
    down[1] = vec![0];
    for j in 1..=n - 4 {
        down[2 * j] = vec![2 * j - 1];
        down[2 * j + 1] = vec![2 * j, 2 * j - 2];
    }
    // the rails swap sides with the parity of n
    if n % 2 == 0 {
        down[2 * n - 6] = vec![2 * n - 7, 1];
        down[2 * n - 5] = vec![2 * n - 6, 2 * n - 8, 0];
    } else {
        down[2 * n - 6] = vec![2 * n - 8, 1];
        down[2 * n - 5] = vec![2 * n - 6, 2 * n - 7, 0];
    }
    Ok(PolytopeDigraph::new(n, down).expect("valid"))
}

/// Start vertex of the wedge: the larger of `v_{2n−8}`, `v_{2n−7}`
/// (the lower index on ties); the tetrahedron starts at its top.
pub fn dual_cyclic_start(n: usize, g: &PolytopeDigraph) -> VertexId {
    if n == 4 {
        return VertexId(3);
    }
    let t = engine::expected_steps(g).expect("one sink");
    let (a, b) = (2 * n - 8, 2 * n - 7);
    if t.values[b] > t.values[a] {
        VertexId(b)
    } else {
        VertexId(a)
    }
}

/// A backbone polytope with its chain listed from the top down.
#[derive(Clone, Debug)]
pub struct Backbone {
    pub graph: PolytopeDigraph,
    pub chain: Vec<usize>,
}

/// Replaces chain vertex `v` (two upper neighbors `p > q`, one lower `r`)
/// by a triangle `x > y > z` at `v`'s height with edges `p→x`, `q→y`,
/// `z→r`, `x→y`, `x→z`, `y→z`.
pub fn cut_chain_vertex(g: &PolytopeDigraph, v: VertexId) -> Result<PolytopeDigraph, ConstructionError> {
    let v = v.0;
    if v >= g.vertex_count() || g.up_degree(v) != 2 || g.down_degree(v) != 1 {
        return Err(ConstructionError::NotChainVertex(v));
    }
    let mut ups = g.up(v).to_vec();
    ups.sort_unstable_by(|a, b| b.cmp(a));
    let (p, qv) = (ups[0], ups[1]);
    let r = g.down(v)[0];
    let shift = |j: usize| if j > v { j + 2 } else { j };
    let (z, y, x) = (v, v + 1, v + 2);
    let mut down = vec![Vec::new(); g.vertex_count() + 2];
    for j in 0..g.vertex_count() {
        if j == v {
            continue;
        }
        down[shift(j)] = g
            .down(j)
            .iter()
            .map(|&w| match w {
                w if w != v => shift(w),
                _ if j == p => x,
                _ if j == qv => y,
                _ => unreachable!("only p and q lie above v"),
            })
            .collect();
    }
    down[z] = vec![shift(r)];
    down[y] = vec![z];
    down[x] = vec![y, z];
    Ok(PolytopeDigraph::new(g.facet_count() + 1, down).expect("valid"))
}

/// `P_k` for `k ≥ 2`, by cutting the top chain vertex of the tetrahedron
/// `k − 2` times.
pub fn backbone(k: usize) -> Result<Backbone, ConstructionError> {
    check_param(Family::Backbone, k)?;
    let mut graph = tetrahedron();
    let mut chain = vec![1, 0];
    for _ in 2..k {
        let top = chain[0];
        graph = cut_chain_vertex(&graph, VertexId(top))?;
        // the triangle occupies top, top+1, top+2; the chain continues y, z
        chain = [vec![top + 1, top]].concat().into_iter().chain(chain[1..].iter().copied()).collect();
    }
    Ok(Backbone { graph, chain })
}

/// A three-terminal digraph replacing one chain vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub name: String,
    pub internal_vertex_count: usize,
    pub facet_cost: usize,
    /// Terminal `P`: the highest vertex.
    pub entry: usize,
    /// Terminal `R`: the lowest vertex.
    pub exit: usize,
    /// Terminal `Q`.
    pub q_terminal: usize,
    /// Lower neighbors of each local vertex; locals are in height order.
    pub local_down_lists: Vec<Vec<usize>>,
    pub expected_increment: Rational,
}

const EXAMPLE2_DATA: &str = include_str!("../data/gadget_example2.txt");
const EXAMPLE3_DATA: &str = include_str!("../data/gadget_example3.txt");

impl GadgetSpec {
    pub fn example2() -> GadgetSpec {
        GadgetSpec::parse("example2", EXAMPLE2_DATA).expect("shipped gadget data is valid")
    }

    pub fn example3() -> GadgetSpec {
        GadgetSpec::parse("example3", EXAMPLE3_DATA).expect("shipped gadget data is valid")
    }

    /// Parses the `GADGET 1` text format and validates the result.
    pub fn parse(name: &str, text: &str) -> Result<GadgetSpec, ConstructionError> {
        let bad = |m: String| ConstructionError::GadgetData(format!("{name}: {m}"));
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        if lines.next() != Some("GADGET 1") {
            return Err(bad("missing `GADGET 1` header".into()));
        }
        let sizes: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
        let (m, cost, inc) = match sizes.as_slice() {
            ["vertices", m, "facets", c, "increment", i] => (
                m.parse::<usize>().map_err(|_| bad("vertex count".into()))?,
                c.parse::<usize>().map_err(|_| bad("facet count".into()))?,
                i.parse::<Rational>().map_err(|_| bad("increment".into()))?,
            ),
            _ => return Err(bad("malformed size line".into())),
        };
        let terms: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
        let (p, qt, r) = match terms.as_slice() {
            ["terminals", "P", p, "Q", qq, "R", r] => (
                p.parse::<usize>().map_err(|_| bad("terminal".into()))?,
                qq.parse::<usize>().map_err(|_| bad("terminal".into()))?,
                r.parse::<usize>().map_err(|_| bad("terminal".into()))?,
            ),
            _ => return Err(bad("malformed terminal line".into())),
        };
        let mut down = vec![Vec::new(); m];
        let mut next = 1;
        for line in lines {
            let (head, tail) = line.split_once(':').ok_or_else(|| bad(format!("malformed line `{line}`")))?;
            let v: usize = head.trim().parse().map_err(|_| bad(format!("malformed line `{line}`")))?;
            if v != next || v >= m {
                return Err(bad(format!("vertex {v} out of order")));
            }
            next += 1;
            down[v] = tail
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&w| w < v))
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| bad(format!("bad neighbor on line `{line}`")))?;
        }
        if next != m {
            return Err(bad(format!("missing line for vertex {next}")));
        }
        let cand = GadgetSpec {
            name: name.to_string(),
            internal_vertex_count: m,
            facet_cost: cost,
            entry: p,
            exit: r,
            q_terminal: qt,
            local_down_lists: down,
            expected_increment: inc,
        };
        cand.validate()?;
        Ok(cand)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "GADGET 1\nvertices {} facets {} increment {}\nterminals P {} Q {} R {}\n",
            self.internal_vertex_count, self.facet_cost, self.expected_increment, self.entry, self.q_terminal, self.exit
        );
        for (v, l) in self.local_down_lists.iter().enumerate().skip(1) {
            out.push_str(&v.to_string());
            out.push(':');
            for w in l {
                out.push_str(&format!(" {w}"));
            }
            out.push('\n');
        }
        out
    }

    /// Structural checks plus agreement of the stored and computed increment.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |m: String| ConstructionError::GadgetData(format!("{}: {m}", self.name));
        let m = self.internal_vertex_count;
        if self.local_down_lists.len() != m || m == 0 {
            return Err(bad("vertex count mismatch".into()));
        }
        if self.exit != 0 || self.entry != m - 1 {
            return Err(bad("exit must be lowest and entry highest".into()));
        }
        if self.q_terminal == self.entry || self.q_terminal == self.exit || self.q_terminal >= m {
            return Err(bad("terminals must be distinct".into()));
        }
        if 2 * self.facet_cost + 1 != m {
            return Err(bad("a gadget of cost c has 2c+1 vertices".into()));
        }
        let g = self.local_digraph();
        for v in 0..m {
            let terminal = v == self.entry || v == self.exit || v == self.q_terminal;
            let want = if terminal { 2 } else { 3 };
            if g.degree(v) != want {
                return Err(bad(format!("vertex {v} has internal degree {}", g.degree(v))));
            }
            if v > 0 && g.down_degree(v) == 0 {
                return Err(bad(format!("vertex {v} is a second sink")));
            }
            if v != self.entry && g.up_degree(v) == 0 {
                return Err(bad(format!("vertex {v} is an internal source")));
            }
        }
        let computed = self.computed_increment();
        if computed != self.expected_increment {
            return Err(bad(format!(
                "stored increment {} but the digraph gives {computed}",
                self.expected_increment
            )));
        }
        Ok(())
    }

    fn local_digraph(&self) -> PolytopeDigraph {
        PolytopeDigraph::new(self.facet_cost, self.local_down_lists.clone()).expect("lists point lower")
    }

    /// Terminal roles: `P` and `Q` receive the two upper edges of the
    /// replaced vertex, `R` carries its lower edge.
    pub fn boundary_attachments(&self) -> [(char, usize); 3] {
        [('P', self.entry), ('Q', self.q_terminal), ('R', self.exit)]
    }

    /// Expected steps from entry to exit inside the gadget.
    pub fn internal_expectation(&self) -> Rational {
        let t = engine::expected_steps(&self.local_digraph()).expect("exit is the only sink");
        t.values[self.entry].clone()
    }

    /// Contribution per spliced copy: the internal walk plus the exit edge.
    pub fn computed_increment(&self) -> Rational {
        Rational::one() + self.internal_expectation()
    }

    /// Canonical description used for ordering search results.
    pub fn key(&self) -> String {
        self.to_text()
    }
}

/// Splices `gadget` into every chain vertex of `P_k`.
///
/// Terminal rule: along the chain, the chain vertex above attaches to `P`,
/// the remaining upper neighbor to `Q` and the chain vertex below to `R`.
/// At the top chain vertex the higher upper neighbor takes `P`; at the
/// sink the two non-chain upper neighbors go to `Q` (higher) and `R`.
/// For `k = 1` the backbone degenerates to two vertices joined by three
/// edges, so the result is the gadget below a single top vertex.
pub fn splice_backbone(k: usize, gadget: &GadgetSpec) -> Result<(PolytopeDigraph, VertexId), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ParamOutOfRange {
            family: "splice",
            param: 0,
            min: 1,
        });
    }
    let m = gadget.internal_vertex_count;
    if k == 1 {
        let mut down = gadget.local_down_lists.clone();
        let mut top = vec![gadget.entry, gadget.q_terminal, gadget.exit];
        top.sort_unstable_by(|a, b| b.cmp(a));
        down.push(top);
        let g = PolytopeDigraph::new(3 + gadget.facet_cost, down).expect("valid");
        return Ok((g, VertexId(gadget.entry)));
    }
    let host = backbone(k)?;
    let hg = &host.graph;
    // chain vertices are exactly the k lowest
    debug_assert!(host.chain.iter().all(|&c| c < k));
    let mut base = vec![0; hg.vertex_count()];
    let mut next = 0;
    for (h, b) in base.iter_mut().enumerate() {
        *b = next;
        next += if h < k { m } else { 1 };
    }
    let total = next;
    let terminal = |c: usize, other: usize| -> usize {
        if c >= k {
            return base[c];
        }
        let mut ups = hg.up(c).to_vec();
        ups.sort_unstable_by(|a, b| b.cmp(a));
        let local = if c == 0 {
            let rest: Vec<usize> = ups.iter().copied().filter(|&u| u != 1).collect();
            match other {
                1 => gadget.entry,
                o if o == rest[0] => gadget.q_terminal,
                _ => gadget.exit,
            }
        } else if c == k - 1 {
            match other {
                o if o == ups[0] => gadget.entry,
                o if o == ups[1] => gadget.q_terminal,
                _ => gadget.exit,
            }
        } else {
            match other {
                o if o == c + 1 => gadget.entry,
                o if o == c - 1 => gadget.exit,
                _ => gadget.q_terminal,
            }
        };
        base[c] + local
    };
    let mut down = vec![Vec::new(); total];
    for c in 0..k {
        for (v, l) in gadget.local_down_lists.iter().enumerate() {
            down[base[c] + v].extend(l.iter().map(|&w| base[c] + w));
        }
    }
    for (a, b) in hg.edges() {
        let (ta, tb) = (terminal(a, b), terminal(b, a));
        down[ta].push(tb);
    }
    for l in down.iter_mut() {
        l.sort_unstable_by(|a, b| b.cmp(a));
    }
    let facets = hg.facet_count() + k * gadget.facet_cost;
    let g = PolytopeDigraph::new(facets, down).expect("heights respect the host order");
    Ok((g, VertexId(base[k - 1] + gadget.entry)))
}

pub fn example2(k: usize) -> Result<(PolytopeDigraph, VertexId), ConstructionError> {
    check_param(Family::Example2, k)?;
    splice_backbone(k, &GadgetSpec::example2())
}

pub fn example3(k: usize) -> Result<(PolytopeDigraph, VertexId), ConstructionError> {
    check_param(Family::Example3, k)?;
    splice_backbone(k, &GadgetSpec::example3())
}

pub fn generate(family: Family, param: usize) -> Result<Instance, ConstructionError> {
    check_param(family, param)?;
    let (graph, start) = match family {
        Family::DualCyclic => {
            let g = dual_cyclic(param)?;
            let s = dual_cyclic_start(param, &g);
            (g, s)
        }
        Family::Backbone => {
            let b = backbone(param)?;
            (b.graph, VertexId(b.chain[0]))
        }
        Family::Example2 => example2(param)?,
        Family::Example3 => example3(param)?,
    };
    Ok(Instance {
        family,
        param,
        graph,
        start,
    })
}

/// Closed-form value for each family. For the wedge this is the threshold
/// `4n/3 − 14/3` that the larger of `E(v_{2n−8})`, `E(v_{2n−7})` reaches;
/// for the backbone it is `k − 1`, the chain walk from its top; for the
/// examples it is `E(start)` exactly.
pub fn closed_form_expectation(family: Family, param: usize) -> Result<Rational, ConstructionError> {
    check_param(family, param)?;
    let p = param as i64;
    Ok(match family {
        Family::DualCyclic => q(4 * p, 3) - q(14, 3),
        Family::Backbone => Rational::integer(p - 1),
        Family::Example2 => q(43 * p, 8) - Rational::one(),
        Family::Example3 => q(1721 * p, 128) - Rational::one(),
    })
}

#[derive(Clone, Debug)]
pub struct GadgetSearchResult {
    pub best: GadgetSpec,
    /// Distinct candidate gadgets before splice validation.
    pub candidates: usize,
    /// Candidates rejected by splice validation before the winner.
    pub rejected: usize,
}

/// Exhaustive search over gadgets of `facet_cost` cuts.
///
/// A gadget of cost `c` plus one top vertex joined to its terminals is a
/// simple polytope with `c+3` facets; the top's highest neighbor is the
/// entry and its lowest neighbor, the global sink, is the exit. All
/// admissible orientations of that form are collected, ranked by increment
/// (ties by key) and spliced into `P_2` and `P_3` until one passes the
/// realizability check there.
pub fn gadget_search(facet_cost: usize, vertex_budget: usize) -> Result<GadgetSearchResult, ConstructionError> {
    let m = 2 * facet_cost + 1;
    if vertex_budget > 9 {
        return Err(ConstructionError::BudgetExceeded(format!(
            "vertex budget {vertex_budget} exceeds 9"
        )));
    }
    if facet_cost == 0 || m > vertex_budget {
        return Err(ConstructionError::BudgetExceeded(format!(
            "cost {facet_cost} needs {m} gadget vertices, budget {vertex_budget}"
        )));
    }
    let graphs = generate_cubic_planar_3connected(facet_cost + 3);
    let per_graph = |g: &crate::enumeration::CubicGraph| -> Vec<GadgetSpec> {
        let space = OrientationSpace::new(g.clone());
        let n = space.vertex_count();
        let mut found = Vec::new();
        space.visit_all(&mut |leaf| {
            let top = leaf.order[n - 1];
            let sink = leaf.order[0];
            if !leaf.down[top].contains(&sink) {
                return Flow::Continue;
            }
            let d = leaf.digraph(space.facets());
            let qt = d.down(n - 1).iter().copied().find(|&w| w != n - 2 && w != 0).expect("top has three lower neighbors");
            let cand = GadgetSpec {
                name: format!("search-{facet_cost}"),
                internal_vertex_count: m,
                facet_cost,
                entry: m - 1,
                exit: 0,
                q_terminal: qt,
                local_down_lists: d.down_lists()[..m].to_vec(),
                expected_increment: Rational::zero(),
            };
            let inc = cand.computed_increment();
            let cand = GadgetSpec {
                expected_increment: inc,
                ..cand
            };
            if cand.validate().is_ok() {
                found.push(cand);
            }
            Flow::Continue
        });
        found
    };
    #[cfg(feature = "parallel")]
    let nested: Vec<Vec<GadgetSpec>> = {
        use rayon::prelude::*;
        graphs.par_iter().map(per_graph).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let nested: Vec<Vec<GadgetSpec>> = graphs.iter().map(per_graph).collect();
    let mut all: Vec<(Rational, String, GadgetSpec)> = nested
        .into_iter()
        .flatten()
        .map(|s| (s.expected_increment.clone(), s.key(), s))
        .collect();
    all.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    all.dedup_by(|a, b| a.1 == b.1);
    let candidates = all.len();
    for (rejected, (_, _, cand)) in all.into_iter().enumerate() {
        if splice_is_realizable(&cand) {
            return Ok(GadgetSearchResult {
                best: cand,
                candidates,
                rejected,
            });
        }
    }
    Err(ConstructionError::BudgetExceeded(format!(
        "no realizable gadget of cost {facet_cost}"
    )))
}

/// Whether splicing into `P_2` and `P_3` gives realizable digraphs whose
/// start value is `k·increment − 1`.
pub fn splice_is_realizable(gadget: &GadgetSpec) -> bool {
    (2..=3).all(|k| {
        let Ok((g, s)) = splice_backbone(k, gadget) else {
            return false;
        };
        if !mk::validate_mihalisin_klee(&g).realizable {
            return false;
        }
        let t = engine::expected_steps(&g).expect("one sink");
        t.values[s.0] == gadget.expected_increment.mul_int(k as i64) - Rational::one()
    })
}
