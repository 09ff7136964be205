//! The linear inequality system on `(α, β)` behind the upper bound
//! `E(v) ≤ α·N₁(v) + β·N(v)`, and an exact two-variable LP over it.
//!
//! Every step of the inductive case analysis yields one inequality
//! `a·α + b·β ≥ c`. Most come from a table of reached lower vertices `w_i`
//! with reaching probabilities `λ_i`: `a = Σ λ_i·Δ₁(w_i)`, `b = Σ λ_i·Δ(w_i)`.
//!
//! The catalogue mirrors the case analysis one-to-one: 27 entries in order,
//! repeated and implied entries kept, plus one flagged remark `β ≥ 6/13`.
//! The prose summary of the analysis speaks of "roughly 24" inequalities
//! besides the first three; the catalogue follows the displayed list.

use std::fmt;

use crate::error::CertError;
use crate::rational::{q, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRow {
    pub probability: Rational,
    pub delta1: i64,
    pub delta: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTable {
    pub case_label: String,
    pub rhs: Rational,
    pub rows: Vec<CaseRow>,
}

impl CaseTable {
    pub fn new(case_label: &str, rhs: Rational, rows: &[(Rational, i64, i64)]) -> Self {
        CaseTable {
            case_label: case_label.to_string(),
            rhs,
            rows: rows
                .iter()
                .map(|(p, d1, d)| CaseRow {
                    probability: p.clone(),
                    delta1: *d1,
                    delta: *d,
                })
                .collect(),
        }
    }

    pub fn probability_mass(&self) -> Rational {
        self.rows.iter().map(|r| &r.probability).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Direct,
    FromTable,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Direct => "direct",
            Source::FromTable => "table",
        })
    }
}

/// `a·α + b·β ≥ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub label: String,
    pub source: Source,
    /// Implied by the rest of the system; kept for fidelity.
    pub flagged: bool,
}

impl LinearInequality {
    pub fn new(a: Rational, b: Rational, c: Rational, label: &str) -> Self {
        LinearInequality {
            a,
            b,
            c,
            label: label.to_string(),
            source: Source::Direct,
            flagged: false,
        }
    }

    pub fn slack(&self, p: &CertPoint) -> Rational {
        &self.a * &p.alpha + &self.b * &p.beta - &self.c
    }

    /// Same half-plane up to a positive factor.
    pub fn equivalent(&self, other: &LinearInequality) -> bool {
        let pairs = [(&self.a, &other.a), (&self.b, &other.b), (&self.c, &other.c)];
        let Some(scale) = pairs
            .iter()
            .find(|(x, _)| !x.is_zero())
            .map(|(x, y)| *y / *x)
        else {
            return false;
        };
        !scale.is_negative() && !scale.is_zero() && pairs.iter().all(|(x, y)| &(*x * &scale) == *y)
    }

    /// Coefficients only, ignoring labels.
    pub fn same_coefficients(&self, other: &LinearInequality) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |coef: &Rational, var: &str| -> Option<String> {
            if coef.is_zero() {
                None
            } else if *coef == Rational::one() {
                Some(var.to_string())
            } else {
                Some(format!("{coef}*{var}"))
            }
        };
        let lhs: Vec<String> = [term(&self.a, "alpha"), term(&self.b, "beta")]
            .into_iter()
            .flatten()
            .collect();
        write!(f, "{} >= {}", lhs.join(" + "), self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertPoint {
    pub alpha: Rational,
    pub beta: Rational,
}

impl CertPoint {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        CertPoint { alpha, beta }
    }

    /// `(46/87, 42/87)`, the published optimum.
    pub fn certified_optimum() -> Self {
        CertPoint::new(q(46, 87), q(42, 87))
    }
}

impl fmt::Display for CertPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.alpha, self.beta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub inequality: LinearInequality,
    /// Source tables; a few cases give two tables for the same inequality.
    pub tables: Vec<CaseTable>,
    /// The inequality as displayed, which may differ from the table-derived
    /// form by a positive factor.
    pub displayed: LinearInequality,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InequalitySystem {
    pub inequalities: Vec<LinearInequality>,
}

impl InequalitySystem {
    pub fn new(inequalities: Vec<LinearInequality>) -> Self {
        InequalitySystem { inequalities }
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Unflagged entries.
    pub fn catalogue_len(&self) -> usize {
        self.inequalities.iter().filter(|i| !i.flagged).count()
    }

    pub fn find(&self, label: &str) -> Option<&LinearInequality> {
        self.inequalities.iter().find(|i| i.label == label)
    }
}

pub fn inequality_from_table(t: &CaseTable) -> Result<LinearInequality, CertError> {
    if t.rows.is_empty() {
        return Err(CertError::EmptyTable(t.case_label.clone()));
    }
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for r in &t.rows {
        a += &r.probability.mul_int(r.delta1);
        b += &r.probability.mul_int(r.delta);
    }
    Ok(LinearInequality {
        a,
        b,
        c: t.rhs.clone(),
        label: t.case_label.clone(),
        source: Source::FromTable,
        flagged: false,
    })
}

type Row = (Rational, i64, i64);

/// Table right-hand sides for entries whose displayed form is rescaled.
const TABLE_RHS: [(&str, (i64, i64)); 1] = [("2.b.ii#4", (7, 4))];

fn rows(raw: &[(i64, i64, i64, i64)]) -> Vec<Row> {
    raw.iter().map(|&(n, d, d1, dd)| (q(n, d), d1, dd)).collect()
}

/// The full catalogue with tables and displayed forms, in case order.
pub fn catalogue() -> Vec<CatalogueEntry> {
    // (label, displayed a, b, c, tables as (n, d, Δ₁, Δ) rows)
    type Disp = ((i64, i64), (i64, i64), (i64, i64));
    let raw: Vec<(&str, Disp, Vec<Vec<(i64, i64, i64, i64)>>)> = vec![
        ("1#1", ((1, 1), (1, 1), (1, 1)), vec![]),
        ("2.a#2", ((0, 1), (1, 1), (2, 5)), vec![]),
        ("2.b.i#3", ((1, 2), (2, 1), (1, 1)), vec![]),
        (
            "2.b.ii#4",
            ((0, 1), (1, 1), (14, 29)),
            vec![vec![(1, 2, 0, 3), (1, 8, 0, 4), (1, 8, 0, 5), (1, 4, 0, 4)]],
        ),
        (
            "2.b.ii#5",
            ((1, 1), (33, 8), (19, 8)),
            vec![vec![(5, 8, 1, 4), (1, 8, 1, 5), (1, 4, 1, 4)]],
        ),
        (
            "2.b.ii#6",
            ((1, 1), (33, 8), (5, 2)),
            vec![vec![(3, 4, 1, 4), (1, 8, 1, 4), (1, 8, 1, 5)]],
        ),
        ("2.c.i#7", ((2, 1), (3, 1), (5, 2)), vec![vec![(1, 1, 2, 3)]]),
        (
            "2.c.i#8",
            ((1, 1), (5, 2), (3, 2)),
            vec![vec![(1, 2, 1, 2), (1, 2, 1, 3)]],
        ),
        (
            "2.c.ii.1#9",
            ((1, 2), (11, 4), (3, 2)),
            vec![vec![(1, 2, 0, 2), (1, 4, 1, 3), (1, 4, 1, 4)]],
        ),
        (
            "2.c.ii.2#10",
            ((3, 4), (9, 2), (5, 2)),
            vec![vec![(1, 4, 0, 3), (1, 2, 1, 5), (1, 4, 1, 5)]],
        ),
        (
            "2.c.ii.2#11",
            ((1, 1), (17, 4), (5, 2)),
            vec![vec![(1, 4, 1, 4), (1, 2, 1, 4), (1, 4, 1, 5)]],
        ),
        (
            "2.c.ii.2#12",
            ((1, 2), (19, 4), (9, 4)),
            vec![vec![(1, 4, 0, 3), (1, 4, 0, 4), (1, 4, 1, 6), (1, 4, 1, 6)]],
        ),
        (
            "2.c.ii.2#13",
            ((3, 4), (19, 4), (9, 4)),
            vec![vec![(1, 4, 0, 3), (1, 4, 1, 5), (1, 4, 1, 5), (1, 4, 1, 6)]],
        ),
        (
            "2.c.ii.2#14",
            ((1, 1), (9, 2), (9, 4)),
            vec![vec![(1, 4, 1, 4), (1, 4, 1, 4), (1, 4, 1, 5), (1, 4, 1, 5)]],
        ),
        (
            "2.c.ii.3#15",
            ((0, 1), (19, 4), (9, 4)),
            vec![vec![(1, 4, 0, 4), (1, 4, 0, 5), (1, 8, 0, 4), (1, 8, 0, 6), (1, 4, 0, 5)]],
        ),
        (
            "2.c.ii.3#16",
            ((1, 1), (43, 8), (11, 4)),
            vec![
                vec![(1, 4, 1, 5), (1, 8, 1, 6), (1, 8, 1, 7), (1, 2, 1, 5)],
                vec![(1, 4, 1, 6), (1, 8, 1, 6), (1, 8, 1, 5), (1, 2, 1, 5)],
            ],
        ),
        (
            "2.c.iii#17",
            ((1, 1), (15, 4), (9, 4)),
            vec![vec![(3, 4, 1, 4), (1, 4, 1, 3)]],
        ),
        ("2.c.iii.1#18", ((3, 1), (5, 1), (4, 1)), vec![vec![(1, 1, 3, 5)]]),
        (
            "2.c.iii.1#19",
            ((2, 1), (17, 4), (3, 1)),
            vec![vec![(3, 4, 2, 4), (1, 4, 2, 5)]],
        ),
        (
            "2.c.iii.2(a)#20",
            ((1, 1), (15, 4), (9, 4)),
            vec![vec![(3, 4, 1, 3), (1, 4, 1, 6)]],
        ),
        (
            "2.c.iii.2(b)#21",
            ((2, 1), (43, 8), (29, 8)),
            vec![vec![(5, 8, 2, 5), (3, 8, 2, 6)]],
        ),
        (
            "2.c.iii.2(b)#22",
            ((1, 1), (41, 8), (3, 1)),
            vec![vec![(1, 4, 1, 4), (3, 8, 1, 5), (3, 8, 1, 6)]],
        ),
        (
            "2.c.iii.2(c)#23",
            ((3, 1), (6, 1), (4, 1)),
            vec![vec![(3, 8, 3, 6), (5, 8, 3, 6)]],
        ),
        (
            "2.c.iii.2(c)#24",
            ((2, 1), (99, 16), (4, 1)),
            vec![vec![(3, 16, 2, 6), (3, 16, 2, 7), (5, 8, 2, 6)]],
        ),
        (
            "2.c.iii.2(c)#25",
            ((2, 1), (43, 8), (27, 8)),
            vec![vec![(1, 4, 2, 5), (3, 8, 2, 6), (3, 8, 2, 5)]],
        ),
        (
            "2.c.iii.2(c)#26",
            ((1, 1), (95, 16), (27, 8)),
            vec![vec![(1, 4, 1, 5), (3, 8, 1, 6), (3, 16, 1, 6), (3, 16, 1, 7)]],
        ),
        (
            "2.c.iii.2(c)#27",
            ((2, 1), (99, 16), (61, 16)),
            vec![vec![(3, 8, 2, 6), (3, 16, 2, 7), (7, 16, 2, 6)]],
        ),
    ];

    raw.into_iter()
        .map(|(label, (a, b, c), tables)| {
            let displayed = LinearInequality::new(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1), label);
            let rhs = TABLE_RHS
                .iter()
                .find(|(l, _)| *l == label)
                .map_or_else(|| displayed.c.clone(), |(_, (n, d))| q(*n, *d));
            let tables: Vec<CaseTable> = tables
                .iter()
                .map(|t| CaseTable::new(label, rhs.clone(), &rows(t)))
                .collect();
            let inequality = match tables.first() {
                Some(t) => inequality_from_table(t).expect("catalogue tables are non-empty"),
                None => displayed.clone(),
            };
            CatalogueEntry {
                inequality,
                tables,
                displayed,
            }
        })
        .collect()
}

/// The 27 catalogue inequalities followed by the flagged `β ≥ 6/13`.
pub fn builtin_system() -> InequalitySystem {
    let mut inequalities: Vec<LinearInequality> =
        catalogue().into_iter().map(|e| e.inequality).collect();
    let mut remark = LinearInequality::new(Rational::zero(), Rational::one(), q(6, 13), "2.c.ii-remark");
    remark.flagged = true;
    inequalities.push(remark);
    InequalitySystem::new(inequalities)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    /// `(label, slack)` per inequality, in system order.
    pub slacks: Vec<(String, Rational)>,
}

impl Feasibility {
    pub fn violated(&self) -> Vec<&str> {
        self.slacks
            .iter()
            .filter(|(_, s)| s.is_negative())
            .map(|(l, _)| l.as_str())
            .collect()
    }
}

pub fn is_feasible(s: &InequalitySystem, p: &CertPoint) -> Feasibility {
    let slacks: Vec<(String, Rational)> = s
        .inequalities
        .iter()
        .map(|i| (i.label.clone(), i.slack(p)))
        .collect();
    let feasible = slacks.iter().all(|(_, v)| !v.is_negative());
    Feasibility { feasible, slacks }
}

fn infeasible(p: &CertPoint) -> CertError {
    CertError::Infeasible {
        alpha: p.alpha.to_string(),
        beta: p.beta.to_string(),
    }
}

/// Labels of zero-slack inequalities.
pub fn tight_set(s: &InequalitySystem, p: &CertPoint) -> Result<Vec<String>, CertError> {
    let f = is_feasible(s, p);
    if !f.feasible {
        return Err(infeasible(p));
    }
    Ok(f.slacks
        .into_iter()
        .filter(|(_, v)| v.is_zero())
        .map(|(l, _)| l)
        .collect())
}

/// Intersection of the boundary lines `a₁α + b₁β = c₁`, `a₂α + b₂β = c₂`.
pub fn intersect(
    (a1, b1, c1): (&Rational, &Rational, &Rational),
    (a2, b2, c2): (&Rational, &Rational, &Rational),
) -> Option<CertPoint> {
    let det = a1 * b2 - a2 * b1;
    if det.is_zero() {
        return None;
    }
    let alpha = (c1 * b2 - c2 * b1) / &det;
    let beta = (a1 * c2 - a2 * c1) / &det;
    Some(CertPoint::new(alpha, beta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub point: CertPoint,
    pub value: Rational,
}

/// Exact minimum of `oα + pβ` over the system restricted to `α, β ≥ 0`.
///
/// Candidates are the pairwise intersections of all boundary lines,
/// including both axes; the feasible region is a pointed polyhedron, so
/// its minimum over a nonnegative objective is attained at one of them.
/// Ties go to the lexicographically smallest `(α, β)`.
pub fn minimize(s: &InequalitySystem, objective: (&Rational, &Rational)) -> Result<Optimum, CertError> {
    let (oa, ob) = objective;
    if oa.is_negative() || ob.is_negative() || (oa.is_zero() && ob.is_zero()) {
        return Err(CertError::BadObjective);
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let mut lines: Vec<(&Rational, &Rational, &Rational)> =
        s.inequalities.iter().map(|i| (&i.a, &i.b, &i.c)).collect();
    lines.push((&one, &zero, &zero));
    lines.push((&zero, &one, &zero));

    let feasible = |p: &CertPoint| {
        !p.alpha.is_negative() && !p.beta.is_negative() && is_feasible(s, p).feasible
    };
    let mut best: Option<Optimum> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(p) = intersect(lines[i], lines[j]) else {
                continue;
            };
            if !feasible(&p) {
                continue;
            }
            let value = oa * &p.alpha + ob * &p.beta;
            let better = match &best {
                None => true,
                Some(b) => {
                    value < b.value
                        || (value == b.value
                            && (&p.alpha, &p.beta) < (&b.point.alpha, &b.point.beta))
                }
            };
            if better {
                best = Some(Optimum { point: p, value });
            }
        }
    }
    best.ok_or(CertError::Unbounded)
}

/// Global bound on `E(v)` for `n` facets from a feasible point.
///
/// Below the top vertex `N₁ ≤ n−3` and `N ≤ 2n−6` give `(α+2β)(n−3)`. The
/// top vertex averages its three lower neighbors, whose counts satisfy
/// `N₁ ≤ n−3` and `ΣN ≤ 6n−21`, giving `1 + α(n−3) + β(2n−7)`. The result
/// is the larger of the two; the second dominates exactly when `β ≤ 1`.
pub fn upper_bound(n: usize, p: &CertPoint) -> Result<Rational, CertError> {
    if n < 4 {
        return Err(CertError::SmallN);
    }
    if !is_feasible(&builtin_system(), p).feasible {
        return Err(infeasible(p));
    }
    Ok(upper_bound_unchecked(n, p))
}

pub fn upper_bound_unchecked(n: usize, p: &CertPoint) -> Rational {
    let n = n as i64;
    let top = Rational::one() + p.alpha.mul_int(n - 3) + p.beta.mul_int(2 * n - 7);
    let below = (&p.alpha + &p.beta.mul_int(2)).mul_int(n - 3);
    top.max(below)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rule_examples() {
        let t = CaseTable::new("t", q(7, 4), &rows(&[(1, 2, 0, 3), (1, 8, 0, 4), (1, 8, 0, 5), (1, 4, 0, 4)]));
        let i = inequality_from_table(&t).unwrap();
        assert_eq!((i.a.clone(), i.b.clone(), i.c.clone()), (q(0, 1), q(29, 8), q(7, 4)));
        assert!(i.equivalent(&LinearInequality::new(q(0, 1), q(1, 1), q(14, 29), "x")));

        let t = CaseTable::new("t", q(4, 1), &rows(&[(1, 1, 3, 5)]));
        let i = inequality_from_table(&t).unwrap();
        assert_eq!((i.a, i.b), (q(3, 1), q(5, 1)));

        let empty = CaseTable::new("e", q(1, 1), &[]);
        assert!(matches!(inequality_from_table(&empty), Err(CertError::EmptyTable(_))));
    }

    #[test]
    fn tables_reproduce_displayed_forms() {
        for e in catalogue() {
            assert!(e.inequality.equivalent(&e.displayed), "{}", e.displayed.label);
            for t in &e.tables {
                let i = inequality_from_table(t).unwrap();
                assert!(i.equivalent(&e.displayed), "{}", t.case_label);
            }
        }
    }

    #[test]
    fn builtin_optimum() {
        let s = builtin_system();
        let opt = minimize(&s, (&q(1, 1), &q(2, 1))).unwrap();
        assert_eq!(opt.point, CertPoint::certified_optimum());
        assert_eq!(opt.value, q(130, 87));
        assert_eq!(
            tight_set(&s, &opt.point).unwrap(),
            vec!["2.b.ii#4".to_string(), "2.c.iii.1#18".to_string()]
        );
    }

    #[test]
    fn equivalence_requires_positive_scale() {
        let x = LinearInequality::new(q(1, 1), q(2, 1), q(3, 1), "x");
        let y = LinearInequality::new(q(2, 1), q(4, 1), q(6, 1), "y");
        let z = LinearInequality::new(q(-1, 1), q(-2, 1), q(-3, 1), "z");
        assert!(x.equivalent(&y));
        assert!(!x.equivalent(&z));
    }

    #[test]
    fn small_system_tight_set() {
        let s = InequalitySystem::new(vec![
            LinearInequality::new(q(0, 1), q(1, 1), q(2, 5), "beta"),
            LinearInequality::new(q(1, 1), q(1, 1), q(1, 1), "sum"),
        ]);
        let p = CertPoint::new(q(1, 1), q(2, 5));
        assert_eq!(tight_set(&s, &p).unwrap(), vec!["beta".to_string()]);
    }

    #[test]
    fn origin_is_infeasible() {
        let s = builtin_system();
        let p = CertPoint::new(q(0, 1), q(0, 1));
        let f = is_feasible(&s, &p);
        assert!(!f.feasible);
        assert!(f.violated().contains(&"1#1"));
        assert!(tight_set(&s, &p).is_err());
    }

    #[test]
    fn display_form() {
        let i = LinearInequality::new(q(1, 1), q(33, 8), q(19, 8), "x");
        assert_eq!(i.to_string(), "alpha + 33/8*beta >= 19/8");
        let i = LinearInequality::new(q(0, 1), q(19, 4), q(9, 4), "x");
        assert_eq!(i.to_string(), "19/4*beta >= 9/4");
    }

    #[test]
    fn bad_objectives() {
        let s = builtin_system();
        assert_eq!(minimize(&s, (&q(0, 1), &q(0, 1))), Err(CertError::BadObjective));
        assert_eq!(minimize(&s, (&q(-1, 1), &q(1, 1))), Err(CertError::BadObjective));
    }

    #[test]
    fn upper_bound_rejects_small_n_and_infeasible_points() {
        let p = CertPoint::certified_optimum();
        assert_eq!(upper_bound(3, &p), Err(CertError::SmallN));
        assert!(upper_bound(10, &CertPoint::new(q(0, 1), q(0, 1))).is_err());
    }

    #[test]
    fn larger_beta_switches_bound_form() {
        let p = CertPoint::new(q(0, 1), q(2, 1));
        assert_eq!(upper_bound(10, &p).unwrap(), q(28, 1));
        let p = CertPoint::new(q(1, 1), q(1, 1));
        assert_eq!(upper_bound(10, &p).unwrap(), q(21, 1));
    }
}
