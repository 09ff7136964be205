//! The reproduction suite behind `redge reproduce`.

use std::collections::BTreeMap;
use std::path::Path;

use redge::cert;
use redge::constructions::{self, Family};
use redge::engine;
use redge::enumeration;
use redge::graph::has_directed_hamiltonian_path;
use redge::mk;
use redge::rational::over_common_denominator;
use redge::Rational;

use crate::commands::parse_objective;
use crate::output::{Failure, Output};

const BUILTIN_MANIFEST: &str = include_str!("../data/manifest.txt");

pub struct Manifest {
    values: BTreeMap<String, String>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, Failure> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("manifest line {}: expected `key = value`", i + 1)))?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Manifest { values })
    }

    fn text(&self, key: &str) -> Result<&str, Failure> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Failure::Input(format!("manifest is missing `{key}`")))
    }

    fn rational(&self, key: &str) -> Result<Rational, Failure> {
        self.text(key)?
            .parse()
            .map_err(|e| Failure::Input(format!("manifest `{key}`: {e}")))
    }

    fn usize(&self, key: &str) -> Result<usize, Failure> {
        self.text(key)?
            .parse()
            .map_err(|e| Failure::Input(format!("manifest `{key}`: {e}")))
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, Failure> {
        self.text(key)?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Failure::Input(format!("manifest `{key}`: bad entry `{t}`"))))
            .collect()
    }
}

struct Suite<'a> {
    out: &'a mut Output,
    failed: Vec<String>,
}

impl Suite<'_> {
    fn check(&mut self, key: &str, ok: bool, detail: String) {
        if !ok {
            self.out.line(format!("FAIL {key}: {detail}"));
            self.failed.push(key.to_string());
        }
    }

    fn expect_eq(&mut self, key: &str, line: String, got: &Rational, want: &Rational) {
        self.out.line(line);
        self.check(key, got == want, format!("expected {want}, got {got}"));
    }
}

fn start_value(family: Family, k: usize) -> Result<(Rational, constructions::Instance), Failure> {
    let inst = constructions::generate(family, k).map_err(Failure::input)?;
    let t = engine::expected_steps(&inst.graph).map_err(Failure::input)?;
    Ok((t.get(inst.start).clone(), inst))
}

fn dual_cyclic_ok(n: usize) -> bool {
    let g = constructions::dual_cyclic(n).expect("n >= 4");
    let e = engine::expected_steps(&g).expect("one sink").values;
    let relations = (0..=n - 4).all(|j| &e[2 * j] + &e[2 * j + 1].mul_int(2) == Rational::integer(4 * j as i64 + 2));
    let m = e[2 * n - 8].clone().max(e[2 * n - 7].clone());
    let threshold = constructions::closed_form_expectation(Family::DualCyclic, n).expect("n >= 4");
    relations && m >= threshold && mk::validate_mihalisin_klee(&g).realizable
}

/// Best lower-bound value among constructions with exactly `n` facets.
fn best_lower(n: usize) -> Rational {
    let mut best = constructions::closed_form_expectation(Family::DualCyclic, n).expect("n >= 4");
    if n >= 10 && (n - 2) % 4 == 0 {
        best = best.max(constructions::closed_form_expectation(Family::Example2, (n - 2) / 4).expect("k >= 2"));
    }
    if n >= 12 && (n - 2) % 10 == 0 {
        best = best.max(constructions::closed_form_expectation(Family::Example3, (n - 2) / 10).expect("k >= 1"));
    }
    best
}

fn splice_sweep(s: &mut Suite, family: Family, max_k: usize) -> Result<(), Failure> {
    let mut bad = Vec::new();
    for k in family.min_param()..=max_k {
        let (e, inst) = start_value(family, k)?;
        let want = constructions::closed_form_expectation(family, k).map_err(Failure::input)?;
        if e != want || !mk::validate_mihalisin_klee(&inst.graph).realizable {
            bad.push(k);
        }
    }
    let name = family.name();
    s.out.line(format!(
        "{name} k={}..{max_k} closed form and realizability: {}",
        family.min_param(),
        if bad.is_empty() { "ok" } else { "FAILED" }
    ));
    s.check(&format!("{name}.sweep"), bad.is_empty(), format!("failing k: {bad:?}"));
    Ok(())
}

pub fn run(out: &mut Output, manifest: Option<&Path>) -> Result<(), Failure> {
    let text = match manifest {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => BUILTIN_MANIFEST.to_string(),
    };
    let m = Manifest::parse(&text)?;
    let mut s = Suite { out, failed: Vec::new() };

    let max_n = m.usize("dual_cyclic.max_n")?;
    let bad: Vec<usize> = (4..=max_n).filter(|&n| !dual_cyclic_ok(n)).collect();
    s.out.line(format!(
        "dual_cyclic n=4..{max_n} relations and threshold: {}",
        if bad.is_empty() { "ok" } else { "FAILED" }
    ));
    s.check("dual_cyclic", bad.is_empty(), format!("failing n: {bad:?}"));

    let (e2, _) = start_value(Family::Example2, 2)?;
    s.expect_eq("example2.k2", format!("example2 k=2 E = {e2}"), &e2, &m.rational("example2.k2")?);
    splice_sweep(&mut s, Family::Example2, m.usize("example2.max_k")?)?;

    let (e3, inst3) = start_value(Family::Example3, 1)?;
    s.expect_eq("example3.k1", format!("example3 k=1 E = {e3}"), &e3, &m.rational("example3.k1")?);
    let ham = has_directed_hamiltonian_path(&inst3.graph);
    s.out.line(format!("example3 k=1 directed hamiltonian path: {ham}"));
    s.check("example3.hamiltonian", !ham, "a directed Hamiltonian path exists".into());
    splice_sweep(&mut s, Family::Example3, m.usize("example3.max_k")?)?;

    let system = cert::builtin_system();
    let entries = system.catalogue_len();
    s.out.line(format!("cert.entries = {entries}"));
    s.check(
        "cert.entries",
        entries == m.usize("cert.entries")?,
        format!("expected {}", m.text("cert.entries")?),
    );
    let (oa, ob) = parse_objective(m.text("cert.objective")?)?;
    let opt = cert::minimize(&system, (&oa, &ob)).map_err(|e| Failure::Check(e.to_string()))?;
    let got = vec![opt.point.alpha.clone(), opt.point.beta.clone(), opt.value.clone()];
    let point = over_common_denominator(&[opt.point.alpha.clone(), opt.point.beta.clone()]);
    s.out.line(format!("cert.optimum = {} {} value {}", point[0], point[1], opt.value));
    s.check("cert.optimum", got == m.list::<Rational>("cert.optimum")?, format!("expected {}", m.text("cert.optimum")?));
    let tight = cert::tight_set(&system, &opt.point).map_err(|e| Failure::Check(e.to_string()))?.join(" ");
    s.out.line(format!("cert.tight = {tight}"));
    s.check("cert.tight", tight == m.text("cert.tight")?, format!("expected {}", m.text("cert.tight")?));

    let point = opt.point.clone();
    let slope = m.rational("bound.slope")?;
    let intercept = m.rational("bound.intercept")?;
    let table_n: Vec<usize> = m.list("table.n")?;
    let mut bad = Vec::new();
    for &n in table_n.iter().chain([12].iter()) {
        let ub = cert::upper_bound(n, &point).map_err(|e| Failure::Check(e.to_string()))?;
        if ub != slope.mul_int(n as i64) + &intercept {
            bad.push(n);
        }
    }
    s.out.line(format!(
        "bound = {slope}*n + {intercept}: {}",
        if bad.is_empty() { "ok" } else { "FAILED" }
    ));
    s.check("bound.form", bad.is_empty(), format!("failing n: {bad:?}"));
    let b12 = cert::upper_bound(12, &point).map_err(|e| Failure::Check(e.to_string()))?;
    s.expect_eq("bound.n12", format!("bound n=12 = {b12}"), &b12, &m.rational("bound.n12")?);
    s.out.line(format!("sandwich n=12: {e3} <= f(12) <= {b12}"));
    s.check("sandwich.n12", e3 <= b12, format!("{e3} > {b12}"));

    let f4 = enumeration::compute_f(4).map_err(|e| Failure::Check(e.to_string()))?.f_value;
    s.expect_eq("f.4", format!("f(4) = {f4}"), &f4, &m.rational("f.4")?);

    s.out.line("table: n lower upper");
    for &n in &table_n {
        let lo = best_lower(n);
        let up = cert::upper_bound(n, &point).map_err(|e| Failure::Check(e.to_string()))?;
        s.out.line(format!("{n} {lo} ({}) {up} ({})", lo.decimal6(), up.decimal6()));
        s.check(&format!("table.{n}"), lo <= up, format!("{lo} > {up}"));
    }

    let n = m.usize("sandwich.n")?;
    let lower_c = m.rational("sandwich.lower")?;
    let upper_c = m.rational("sandwich.upper")?;
    let e3_1 = constructions::closed_form_expectation(Family::Example3, 1).map_err(Failure::input)?;
    let e3_2 = constructions::closed_form_expectation(Family::Example3, 2).map_err(Failure::input)?;
    let line_slope = (&e3_2 - &e3_1) / Rational::integer(10);
    let line_offset = &e3_1 - &line_slope.mul_int(12);
    let at_n = &line_slope.mul_int(n as i64) + &line_offset;
    let slope_ok = line_slope >= lower_c;
    s.out.line(format!(
        "sandwich n={n} example3 line = {line_slope}*n + {line_offset} = {at_n} ({})",
        at_n.decimal6()
    ));
    s.out.line(format!("sandwich n={n} lower slope {line_slope} >= {lower_c}: {slope_ok}"));
    s.check("sandwich.lower", slope_ok, format!("{line_slope} < {lower_c}"));
    let slack_ok = &at_n - &line_offset >= lower_c.mul_int(n as i64);
    s.out.line(format!("sandwich n={n} example3 line + {} >= {lower_c}*n: {slack_ok}", -line_offset.clone()));
    s.check("sandwich.lower_slack", slack_ok, "slack comparison failed".into());
    let ub = cert::upper_bound(n, &point).map_err(|e| Failure::Check(e.to_string()))?;
    let upper_ok = ub <= upper_c.mul_int(n as i64);
    s.out.line(format!(
        "sandwich n={n} upper = {ub} ({}) <= {upper_c}*n: {upper_ok}",
        ub.decimal6()
    ));
    s.check("sandwich.upper", upper_ok, format!("{ub} exceeds {upper_c}*n"));

    let failed = std::mem::take(&mut s.failed);
    if failed.is_empty() {
        s.out.line("reproduce: all checks passed");
        Ok(())
    } else {
        s.out.line(format!("reproduce: {} failed", failed.len()));
        s.out.fail(Failure::Check(format!("failed items: {}", failed.join(", "))))
    }
}
