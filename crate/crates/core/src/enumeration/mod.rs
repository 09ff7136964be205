//! Exact `f(n)` for small facet counts by exhaustive enumeration.
//!
//! Work units are `(graph, sink, vertex above the sink)`. Each unit is
//! searched independently; results are reduced by maximum value, ties going
//! to the earliest unit and within a unit to the first orientation found.
//! The reduction does not depend on the order in which units finish.

pub mod checkpoint;
pub mod cubic;
pub mod orient;

use std::path::PathBuf;
use std::time::{Duration, Instant};

pub use cubic::{census_count, generate_cubic_planar_3connected, CubicGraph, CENSUS};
pub use orient::{admissible_orientations, Flow, OrientationSpace};

use crate::error::EnumerationError;
use crate::graph::{PolytopeDigraph, VertexId};
use crate::rational::Rational;
use checkpoint::{Checkpoint, UnitRecord};

pub const DEFAULT_CAP: usize = 10;
/// Largest facet count allowed without `allow_long`.
pub const DESK_CAP: usize = 9;

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub cap: usize,
    pub allow_long: bool,
    /// Worker threads; `0` uses the global pool, `1` runs sequentially.
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            cap: DEFAULT_CAP,
            allow_long: false,
            jobs: 0,
            checkpoint: None,
        }
    }
}

impl EnumerationConfig {
    fn check(&self, n: usize) -> Result<(), EnumerationError> {
        if n < 4 {
            return Err(EnumerationError::TooSmall(n));
        }
        let cap = if self.allow_long { self.cap } else { self.cap.min(DESK_CAP) };
        if n > cap {
            return Err(EnumerationError::CapExceeded { n, cap });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub n_facets: usize,
    pub f_value: Rational,
    pub witness: PolytopeDigraph,
    pub witness_start: VertexId,
    pub graphs_examined: usize,
    pub orientations_admissible: u64,
    pub wall_time: Duration,
}

impl EnumerationResult {
    /// Key-value report without timing, so it is byte-stable.
    pub fn report(&self) -> String {
        format!(
            "n_facets: {}\nf_value: {}\nf_decimal: {}\nwitness_start: {}\ngraphs_examined: {}\norientations_admissible: {}\n",
            self.n_facets,
            self.f_value,
            self.f_value.decimal6(),
            self.witness_start.0,
            self.graphs_examined,
            self.orientations_admissible
        )
    }
}

/// Searches one unit; returns its record.
pub fn run_unit(space: &OrientationSpace, graph_index: usize, unit: (usize, usize)) -> UnitRecord {
    let mut count = 0u64;
    let mut best: Option<(u128, Vec<usize>)> = None;
    space.visit_unit(unit, &mut |leaf| {
        count += 1;
        let (value, _) = leaf.best();
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, leaf.order.to_vec()));
        }
        Flow::Continue
    });
    UnitRecord {
        graph: graph_index,
        sink: unit.0,
        second: unit.1,
        admissible: count,
        best: best.map(|(v, order)| (space.value(v), order)),
    }
}

impl OrientationSpace {
    pub fn value(&self, scaled: u128) -> Rational {
        orient::scaled_to_rational(scaled, self.scale())
    }

    /// Rebuilds the digraph of a placement order.
    pub fn digraph_from_order(&self, order: &[usize]) -> PolytopeDigraph {
        PolytopeDigraph::from_order(self.facets(), &self.graph.adjacency(), order)
    }
}

fn run_units(spaces: &[OrientationSpace], todo: &[(usize, (usize, usize))], jobs: usize, sink: &mut (dyn FnMut(&UnitRecord) + Send)) -> Result<Vec<UnitRecord>, EnumerationError> {
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        use rayon::prelude::*;
        use std::sync::Mutex;
        let sink = Mutex::new(sink);
        let work = || -> Vec<UnitRecord> {
            todo.par_iter()
                .map(|&(g, unit)| {
                    let rec = run_unit(&spaces[g], g, unit);
                    (sink.lock().expect("checkpoint lock"))(&rec);
                    rec
                })
                .collect()
        };
        let records = if jobs == 0 {
            work()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| EnumerationError::Checkpoint(e.to_string()))?
                .install(work)
        };
        return Ok(records);
    }
    let _ = jobs;
    Ok(todo
        .iter()
        .map(|&(g, unit)| {
            let rec = run_unit(&spaces[g], g, unit);
            sink(&rec);
            rec
        })
        .collect())
}

pub fn compute_f(n: usize) -> Result<EnumerationResult, EnumerationError> {
    compute_f_with(n, &EnumerationConfig::default())
}

pub fn compute_f_with(n: usize, config: &EnumerationConfig) -> Result<EnumerationResult, EnumerationError> {
    config.check(n)?;
    let started = Instant::now();
    let graphs = generate_cubic_planar_3connected(n);
    if let Some(expected) = census_count(n) {
        if graphs.len() != expected {
            return Err(EnumerationError::Checkpoint(format!(
                "census mismatch for n = {n}: generated {} graphs, expected {expected}",
                graphs.len()
            )));
        }
    }
    let spaces: Vec<OrientationSpace> = graphs.into_iter().map(OrientationSpace::new).collect();
    let units: Vec<(usize, (usize, usize))> = spaces
        .iter()
        .enumerate()
        .flat_map(|(g, s)| s.units().into_iter().map(move |u| (g, u)))
        .collect();

    let mut done: Vec<UnitRecord> = Vec::new();
    let mut writer = None;
    if let Some(path) = &config.checkpoint {
        let cp = Checkpoint::open(path, n, units.len())?;
        done = cp.records.clone();
        writer = Some(cp);
    }
    let finished: std::collections::HashSet<(usize, usize, usize)> =
        done.iter().map(|r| (r.graph, r.sink, r.second)).collect();
    let todo: Vec<(usize, (usize, usize))> = units
        .iter()
        .copied()
        .filter(|(g, (s, t))| !finished.contains(&(*g, *s, *t)))
        .collect();

    let mut write_error: Option<std::io::Error> = None;
    let mut sink = |rec: &UnitRecord| {
        if let Some(cp) = writer.as_mut() {
            if let Err(e) = cp.append(rec) {
                write_error.get_or_insert(e);
            }
        }
    };
    let mut records = run_units(&spaces, &todo, config.jobs, &mut sink)?;
    if let Some(e) = write_error {
        return Err(e.into());
    }
    records.extend(done);
    records.sort_by_key(|r| (r.graph, r.sink, r.second));

    let mut best: Option<&UnitRecord> = None;
    let mut total = 0u64;
    for r in &records {
        total += r.admissible;
        if let Some((v, _)) = &r.best {
            if best.map_or(true, |b| v > &b.best.as_ref().expect("has best").0) {
                best = Some(r);
            }
        }
    }
    let best = best.ok_or_else(|| EnumerationError::Checkpoint("no admissible orientation".into()))?;
    let (value, order) = best.best.as_ref().expect("has best");
    let witness = spaces[best.graph].digraph_from_order(order);
    let table = crate::engine::expected_steps(&witness).expect("witness has one sink");
    let (start, check) = table.argmax();
    debug_assert_eq!(check, value);
    Ok(EnumerationResult {
        n_facets: n,
        f_value: value.clone(),
        witness,
        witness_start: start,
        graphs_examined: spaces.len(),
        orientations_admissible: total,
        wall_time: started.elapsed(),
    })
}
