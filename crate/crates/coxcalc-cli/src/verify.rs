//! Recomputes the invariants listed in a table, row by row.

use coxcalc::bunched::BunchedRing;
use coxcalc::error::Error;
use coxcalc::geometry::{
    canonical_class, dimension, fano_gorenstein, picard, picard_data_rank_one, strata, IntersectionForm,
};
use coxcalc::graded::{recognize_complexity_one, GradedPresentation};
use coxcalc::lattice::{cokernel, gale_dual, IntVec};
use coxcalc::linalg::Rat;
use coxcalc::modifications::{kstar_resolve, self_intersections};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{self, Options, Output};
use crate::schema::{Expectation, TableDoc, TableRow};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct RowReport {
    pub label: String,
    pub checks: Vec<Check>,
    /// Set when the row could not be evaluated at all.
    pub error: Option<String>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub name: Option<String>,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn output(&self) -> Output {
        let mut t = String::new();
        if let Some(n) = &self.name {
            t += &format!("{n}\n");
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                t += &format!("{} {}\n", if r.passed() { "pass" } else { "FAIL" }, r.label);
                if let Some(e) = &r.error {
                    t += &format!("  error: {e}\n");
                }
                for c in r.checks.iter().filter(|c| !c.pass) {
                    t += &format!("  {}: expected {}, computed {}\n", c.name, c.expected, c.computed);
                }
                let checks: Vec<Value> = r
                    .checks
                    .iter()
                    .map(|c| json!({"check": c.name, "expected": c.expected, "computed": c.computed, "pass": c.pass}))
                    .collect();
                let mut v = json!({"label": r.label, "pass": r.passed(), "checks": checks});
                if let Some(e) = &r.error {
                    v["error"] = Value::String(e.clone());
                }
                v
            })
            .collect();
        let passed = self.rows.len() - self.failed();
        t += &format!("{passed}/{} rows pass\n", self.rows.len());
        let json = json!({"name": self.name, "rows": rows, "passed": passed, "total": self.rows.len()});
        Output { json, text: t }
    }
}

/// Verifies all rows in parallel; the report keeps the row order.
pub fn verify_table(table: &TableDoc, opts: &Options) -> TableReport {
    let rows = table.rows.par_iter().map(|r| verify_row(r, opts)).collect();
    TableReport { name: table.name.clone(), rows }
}

fn check(name: &'static str, expected: impl ToString, computed: impl ToString, pass: bool) -> Check {
    Check { name, expected: expected.to_string(), computed: computed.to_string(), pass }
}

fn same(name: &'static str, expected: impl ToString, computed: impl ToString) -> Check {
    let (e, c) = (expected.to_string(), computed.to_string());
    let pass = e == c;
    Check { name, expected: e, computed: c, pass }
}

pub fn verify_row(row: &TableRow, opts: &Options) -> RowReport {
    let mut report = RowReport { label: row.label.clone(), checks: Vec::new(), error: None };
    if let Err(e) = evaluate(row, opts, &mut report.checks) {
        report.error = Some(e.to_string());
    }
    report
}

fn evaluate(row: &TableRow, opts: &Options, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let ring = match row.input.ring() {
        Ok(r) => r,
        Err(CliError::Math(Error::NotHomogeneous(j))) => {
            checks.push(check("homogeneous", "all relations", format!("relation {} is not", j + 1), false));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    checks.push(check("homogeneous", "all relations", "all relations", true));
    let mut pres = ring.pres.clone();
    pres.k_prime_asserted |= opts.assert_k_prime;
    let exp = &row.expect;
    if let Some(cl) = &exp.cl {
        checks.push(class_group_check(&pres, &cl.to_group()?.to_string())?);
    }
    let br = chamber(&ring, &pres, opts)?;
    let dim = dimension(&br);
    if let Some(d) = exp.dim {
        checks.push(same("dim", d, dim));
    }
    if let Some(lf) = exp.locally_factorial {
        let st = strata(&br)?;
        let bad: Vec<String> = st.iter().filter(|s| !s.factorial).map(|s| s.local_class_group.to_string()).collect();
        let computed = bad.is_empty();
        let shown = if computed { "true".to_string() } else { format!("false ({})", bad.join(", ")) };
        checks.push(check("locally_factorial", lf, shown, lf == computed));
    }
    if let Some(idx) = &exp.picard_index {
        let pic = picard(&br)?;
        let shown = pic.index.as_ref().map_or("infinite".to_string(), |i| i.to_string());
        checks.push(same("picard_index", &idx.0, shown));
    }
    if exp.fano.is_some() || exp.gorenstein.is_some() {
        let fg = fano_gorenstein(&br)?;
        if let Some(f) = exp.fano {
            let mut shown = fg.fano.to_string();
            let mut pass = f == fg.fano;
            if pres.group.rank == 1 && pres.group.torsion.is_empty() {
                // the weight inequality must agree with the ampleness test
                let r1 = picard_data_rank_one(&br)?;
                pass &= r1.fano == fg.fano;
                shown += &format!(", weight inequality {}", r1.fano);
            }
            checks.push(check("fano", f, shown, pass));
        }
        if let Some(g) = exp.gorenstein {
            checks.push(check("gorenstein", g, fg.gorenstein, g == fg.gorenstein));
        }
    }
    if let Some(q) = &exp.anticanonical_degree {
        let shown = match anticanonical_degree(&br, dim) {
            Ok(d) => d.to_string(),
            Err(e) => format!("unavailable ({e})"),
        };
        checks.push(same("anticanonical_degree", &q.0, shown));
    }
    if let Some(s) = &exp.singularities {
        checks.push(singularity_check(&pres, s));
    }
    Ok(())
}

/// `Cl(X)` from the Gale dual of the degree matrix: the cokernel of the ray
/// matrix, provided the degrees generate `K` and the grading is almost free.
fn class_group_check(pres: &GradedPresentation, expected: &str) -> Result<Check, CliError> {
    let q = pres.degree_matrix();
    let p = gale_dual(&q, &pres.group)?;
    let computed = cokernel(&p.transpose()).group;
    let generates = pres.group.generates(&pres.degrees)?;
    let almost_free = pres.is_almost_free();
    let mut shown = computed.to_string();
    if !generates {
        shown += ", degrees do not generate K";
    }
    if !almost_free {
        shown += ", grading not almost free";
    }
    let pass = computed.to_string() == expected && computed == pres.group && generates && almost_free;
    Ok(check("Cl", expected, shown, pass))
}

/// The row's chamber if it names one, else the chamber of the anticanonical
/// class, else the default chamber.
fn chamber(ring: &crate::schema::Ring, pres: &GradedPresentation, opts: &Options) -> Result<BunchedRing, CliError> {
    let w = ring.chamber.clone().or_else(|| opts.chamber.clone());
    if let Some(w) = w {
        return Ok(BunchedRing::from_weight(pres, &w, &opts.guard)?);
    }
    let anti: IntVec = pres.free_part(&canonical_class(pres)).iter().map(|x| -x).collect();
    if let Ok(br) = BunchedRing::from_weight(pres, &anti, &opts.guard) {
        return Ok(br);
    }
    let mut ring = crate::schema::Ring { pres: pres.clone(), chamber: None, ..ring.clone() };
    ring.fan = None;
    commands::bunched_ring(&ring, &opts.guard)
}

fn anticanonical_degree(br: &BunchedRing, dim: isize) -> Result<Rat, CliError> {
    let pres = &br.pres;
    if dim < 0 {
        return Err(Error::UnsupportedIntersection("negative dimension".into()).into());
    }
    if pres.group.rank == 1 && pres.group.torsion.is_empty() {
        let r1 = picard_data_rank_one(br)?;
        let mut form = IntersectionForm::new(br, None)?;
        let anti: IntVec = canonical_class(pres).iter().map(|x| -x).collect();
        let via_form = form.number(&vec![anti; dim as usize])?;
        if via_form != r1.anticanonical_degree {
            return Err(Error::Inconsistent(format!(
                "closed formula gives {}, intersection form {via_form}",
                r1.anticanonical_degree
            ))
            .into());
        }
        return Ok(via_form);
    }
    let mut form = IntersectionForm::new(br, None)?;
    let anti: IntVec = pres.free_part(&canonical_class(pres)).iter().map(|x| -x).collect();
    Ok(form.number(&vec![anti; dim as usize])?)
}

/// Components of an ADE type written like `2A1 A3`, `D4 3A1` or `A1+E6`,
/// in the order used by the library: by letter, then rank. Components
/// inside one token must be unambiguous, as in `2A3A1`.
pub fn normalize_ade(s: &str) -> Option<String> {
    let mut parts: Vec<(char, usize)> = Vec::new();
    for token in s.split(|c: char| c.is_whitespace() || c == '+' || c == ',').filter(|t| !t.is_empty()) {
        let mut rest = token;
        while !rest.is_empty() {
            let digits = |t: &str| t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
            let k = digits(rest);
            let mult: usize = if k == 0 { 1 } else { rest[..k].parse().ok()? };
            rest = &rest[k..];
            let letter = rest.chars().next().filter(|c| matches!(c, 'A' | 'D' | 'E'))?;
            rest = &rest[1..];
            let k = digits(rest);
            let rank: usize = rest[..k].parse().ok()?;
            rest = &rest[k..];
            parts.extend(std::iter::repeat_n((letter, rank), mult));
        }
    }
    parts.sort();
    Some(parts.iter().map(|(l, r)| format!("{l}{r}")).collect::<Vec<_>>().join("+"))
}

/// Singularity type from the minimal resolution of a K*-surface.
fn singularity_check(pres: &GradedPresentation, expected: &str) -> Check {
    let computed = (|| -> Result<Option<String>, CliError> {
        let (ap, _) = recognize_complexity_one(pres)?;
        let res = kstar_resolve(&ap)?;
        let ex = self_intersections(&res, &coxcalc::guard::SizeGuard::default())?;
        Ok(ex.contract_minus_one_curves().label)
    })();
    let want = normalize_ade(expected);
    match computed {
        Ok(label) => {
            let pass = want.is_some() && label == want;
            check("singularities", expected, commands::ade_text(&label), pass)
        }
        Err(e) => check("singularities", expected, format!("unavailable ({e})"), false),
    }
}

impl Expectation {
    pub fn is_empty(&self) -> bool {
        *self == Expectation::default()
    }
}
