use std::path::{Path, PathBuf};

use redge::cert::{self, CertPoint};
use redge::constructions::{self, Family};
use redge::dpg::{self, DpgDocument};
use redge::engine;
use redge::enumeration::{self, EnumerationConfig};

use redge::error::{CertError, EnumerationError};
use redge::graph::{validate_polytope, VertexId};
use redge::mk;
use redge::simulate;
use redge::Rational;

use crate::output::{Failure, Output};
use crate::ExportFormat;

pub fn read_document(path: &Path) -> Result<DpgDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    dpg::parse_dpg_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn resolve_start(doc: &DpgDocument, start: Option<usize>) -> Result<VertexId, Failure> {
    let v = doc.graph.vertex_count();
    let s = start.unwrap_or(v - 1);
    if s >= v {
        return Err(Failure::Input(format!("start {s} out of range (vertices {v})")));
    }
    Ok(VertexId(s))
}

fn rational_line(out: &mut Output, key: &str, r: &Rational) {
    out.kv(key, format!("{r} ({})", r.decimal6()));
}

pub fn gen(out: &mut Output, family: Family, param: usize) -> Result<(), Failure> {
    let inst = constructions::generate(family, param).map_err(Failure::input)?;
    out.raw(&dpg::serialize_dpg_with_comments(&inst.graph, &inst.comments()));
    Ok(())
}

pub fn validate(out: &mut Output, path: &Path) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let g = &doc.graph;
    let v = validate_polytope(g);
    out.kv("facets", v.facets);
    out.kv("vertices", v.vertices);
    out.kv("edges", v.edges);
    out.kv("dehn_sommerville", v.dehn_sommerville());
    let report = mk::validate_mihalisin_klee(g);
    out.line(&report);
    if report.realizable {
        Ok(())
    } else {
        out.fail(Failure::Check("digraph is not realizable".into()))
    }
}

pub fn eval(out: &mut Output, path: &Path, start: Option<usize>) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let s = resolve_start(&doc, start)?;
    let table = engine::expected_steps(&doc.graph).map_err(Failure::input)?;
    out.kv("start", s.0);
    rational_line(out, "expected_steps", table.get(s));
    Ok(())
}

pub fn probs(out: &mut Output, path: &Path, start: Option<usize>) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let s = resolve_start(&doc, start)?;
    let p = engine::edge_probabilities(&doc.graph, s).map_err(Failure::input)?;
    out.kv("start", s.0);
    let mut rows = p.prob.clone();
    rows.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    for (from, to, r) in &rows {
        out.line(format!("{from} -> {to}: {r}"));
    }
    rational_line(out, "total", &p.total());
    Ok(())
}

pub fn simulate(out: &mut Output, path: &Path, start: Option<usize>, trials: u64, seed: u64, jobs: usize) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let s = resolve_start(&doc, start)?;
    let g = &doc.graph;
    let stats = if jobs == 0 {
        simulate::simulate(g, s, trials, seed)
    } else {
        simulate::simulate_with_jobs(g, s, trials, seed, jobs)
    }
    .map_err(Failure::input)?;
    let exact = engine::expected_steps(g).map_err(Failure::input)?;
    out.kv("start", s.0);
    out.kv("trials", stats.trials);
    out.kv("seed", stats.seed);
    rational_line(out, "mean", &stats.mean());
    out.kv("standard_error", format!("{:.6}", stats.standard_error()));
    rational_line(out, "exact", exact.get(s));
    Ok(())
}

pub fn cert_show(out: &mut Output) -> Result<(), Failure> {
    let system = cert::builtin_system();
    out.kv("entries", system.catalogue_len());
    for i in &system.inequalities {
        let flag = if i.flagged { " flagged" } else { "" };
        out.line(format!("{} [{}{flag}] {i}", i.label, i.source));
    }
    Ok(())
}

pub fn cert_check(out: &mut Output, alpha: Rational, beta: Rational) -> Result<(), Failure> {
    let system = cert::builtin_system();
    let p = CertPoint::new(alpha, beta);
    let f = cert::is_feasible(&system, &p);
    out.kv("alpha", &p.alpha);
    out.kv("beta", &p.beta);
    out.kv("feasible", f.feasible);
    if f.feasible {
        let tight = cert::tight_set(&system, &p).map_err(Failure::input)?;
        out.kv("tight", tight.join(" "));
        Ok(())
    } else {
        out.kv("violated", f.violated().join(" "));
        out.fail(Failure::Check(format!("point {p} is infeasible")))
    }
}

pub fn parse_objective(s: &str) -> Result<(Rational, Rational), Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::Input(format!("objective `{s}` is not `a,b`")))?;
    let a: Rational = a.trim().parse().map_err(Failure::input)?;
    let b: Rational = b.trim().parse().map_err(Failure::input)?;
    Ok((a, b))
}

pub fn cert_solve(out: &mut Output, obj: &str) -> Result<(), Failure> {
    let (a, b) = parse_objective(obj)?;
    let system = cert::builtin_system();
    let opt = cert::minimize(&system, (&a, &b)).map_err(|e| match e {
        CertError::Unbounded => Failure::Check(e.to_string()),
        _ => Failure::input(e),
    })?;
    out.kv("alpha", &opt.point.alpha);
    out.kv("beta", &opt.point.beta);
    rational_line(out, "value", &opt.value);
    let tight = cert::tight_set(&system, &opt.point).map_err(Failure::input)?;
    out.kv("tight", tight.join(" "));
    Ok(())
}

pub fn bound(out: &mut Output, n: usize, alpha: Option<Rational>, beta: Option<Rational>) -> Result<(), Failure> {
    let p = match (alpha, beta) {
        (Some(a), Some(b)) => CertPoint::new(a, b),
        (None, None) => CertPoint::certified_optimum(),
        _ => return Err(Failure::Input("give both --alpha and --beta or neither".into())),
    };
    let ub = cert::upper_bound(n, &p).map_err(|e| match e {
        CertError::Infeasible { .. } => Failure::Check(e.to_string()),
        _ => Failure::input(e),
    })?;
    out.kv("n", n);
    out.kv("alpha", &p.alpha);
    out.kv("beta", &p.beta);
    rational_line(out, "upper_bound", &ub);
    Ok(())
}

pub fn enumerate(out: &mut Output, facets: usize, jobs: usize, checkpoint: Option<PathBuf>, allow_long: bool) -> Result<(), Failure> {
    let config = EnumerationConfig {
        allow_long,
        jobs,
        checkpoint,
        ..Default::default()
    };
    let r = enumeration::compute_f_with(facets, &config).map_err(|e| match e {
        EnumerationError::CapExceeded { .. } | EnumerationError::TooSmall(_) => Failure::input(e),
        other => Failure::Check(other.to_string()),
    })?;
    eprintln!("wall_time: {:.3}s", r.wall_time.as_secs_f64());
    let witness = dpg::serialize_dpg_with_comments(
        &r.witness,
        &[format!("witness for f({facets})"), format!("start: {}", r.witness_start.0)],
    );
    if out.has_path() {
        out.status(r.report().trim_end());
    } else {
        out.raw(&r.report());
    }
    out.raw(&witness);
    Ok(())
}

pub fn to_dot(doc: &DpgDocument) -> String {
    let g = &doc.graph;
    let mut s = String::new();
    for c in &doc.comments {
        s.push_str(&format!("// {c}\n"));
    }
    let start = doc.start();
    s.push_str("digraph polytope {\n");
    for v in 0..g.vertex_count() {
        if start == Some(VertexId(v)) {
            s.push_str(&format!("  {v} [shape=doublecircle]; // start\n"));
        } else {
            s.push_str(&format!("  {v};\n"));
        }
    }
    for v in 1..g.vertex_count() {
        let mut l = g.down(v).to_vec();
        l.sort_unstable_by(|a, b| b.cmp(a));
        for w in l {
            s.push_str(&format!("  {v} -> {w};\n"));
        }
    }
    s.push_str("}\n");
    s
}

pub fn export(out: &mut Output, path: &Path, format: ExportFormat) -> Result<(), Failure> {
    let doc = read_document(path)?;
    match format {
        ExportFormat::Dot => out.raw(&to_dot(&doc)),
    }
    Ok(())
}
