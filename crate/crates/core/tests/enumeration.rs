use std::fs;

use redge::enumeration::{compute_f_with, generate_cubic_planar_3connected, EnumerationConfig, CENSUS};
use redge::rational::q;

#[test]
fn census_through_nine_facets() {
    for &(n, count) in CENSUS.iter().filter(|(n, _)| *n <= 9) {
        assert_eq!(generate_cubic_planar_3connected(n).len(), count, "n = {n}");
    }
}

#[test]
fn known_values_through_eight() {
    let want = [(5, q(3, 1)), (6, q(35, 8)), (7, q(91, 16)), (8, q(225, 32))];
    for (n, f) in want {
        let r = compute_f_with(n, &EnumerationConfig { jobs: 1, ..Default::default() }).unwrap();
        assert_eq!(r.f_value, f, "n = {n}");
        let t = redge::engine::expected_steps(&r.witness).unwrap();
        assert_eq!(t.values[r.witness_start.0], r.f_value);
    }
}

#[test]
fn worker_count_does_not_change_result() {
    let one = compute_f_with(8, &EnumerationConfig { jobs: 1, ..Default::default() }).unwrap();
    let many = compute_f_with(8, &EnumerationConfig { jobs: 3, ..Default::default() }).unwrap();
    assert_eq!(one.report(), many.report());
    assert_eq!(one.witness, many.witness);
}

#[test]
fn checkpoint_resume_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f8.ckpt");
    let config = EnumerationConfig {
        jobs: 1,
        checkpoint: Some(path.clone()),
        ..Default::default()
    };
    let fresh = compute_f_with(8, &config).unwrap();
    let full = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = full.lines().collect();
    assert!(lines.len() > 10);

    // keep the header and a third of the units, then a torn line
    let keep = 2 + (lines.len() - 2) / 3;
    let mut partial = lines[..keep].join("\n");
    partial.push('\n');
    partial.push_str(&lines[keep][..lines[keep].len() / 2]);
    fs::write(&path, partial).unwrap();

    let resumed = compute_f_with(8, &config).unwrap();
    assert_eq!(resumed.report(), fresh.report());
    assert_eq!(resumed.witness, fresh.witness);
    let mut after: Vec<String> = fs::read_to_string(&path).unwrap().lines().map(String::from).collect();
    let mut before: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
    after.sort();
    before.sort();
    assert_eq!(after, before);

    // a checkpoint for another facet count is refused
    assert!(compute_f_with(7, &config).is_err());
}
