//! Canonical resolution of rational K*-surfaces given by `(A,P)` data.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bunched::bunched_ring_from_fan;
use crate::cones::Fan;
use crate::error::{Error, Result};
use crate::geometry::IntersectionForm;
use crate::graded::{build_rap, ApData, GradedPresentation};
use crate::guard::SizeGuard;
use crate::lattice::{same_grading, IntMatrix, IntVec};
use crate::linalg::{combination, Rat};

use super::{modify, ModificationSpec};

fn check_surface(ap: &ApData) -> Result<()> {
    if ap.s != 1 {
        return Err(Error::NonSurface(format!("s = {}", ap.s)));
    }
    if ap.dprime[0].iter().any(|x| x.abs() != BigInt::one()) {
        return Err(Error::NonSurface("entries of d' must be 1 or -1".into()));
    }
    let plus = ap.dprime[0].iter().filter(|x| x.is_positive()).count();
    if plus > 1 || ap.m - plus > 1 {
        return Err(Error::NonSurface("at most one parabolic curve at each end".into()));
    }
    Ok(())
}

fn slope_cmp(a: (u32, &BigInt), b: (u32, &BigInt)) -> Ordering {
    (a.1 * BigInt::from(b.0)).cmp(&(b.1 * BigInt::from(a.0)))
}

/// Orders every arm by ascending slope `d_ij / l_ij` and puts the column
/// with `d' = 1` before the one with `d' = -1`. Returns the reordered data
/// and for each new column its old index.
pub fn sort_arms(ap: &ApData) -> Result<(ApData, Vec<usize>)> {
    ap.validate()?;
    check_surface(ap)?;
    let mut out = ap.clone();
    let mut perm = Vec::new();
    let mut drow = Vec::new();
    for i in 0..=ap.r {
        let mut js: Vec<usize> = (0..ap.ns[i]).collect();
        js.sort_by(|&x, &y| {
            let (cx, cy) = (ap.t_index(i, x), ap.t_index(i, y));
            slope_cmp((ap.ls[i][x], &ap.d[0][cx]), (ap.ls[i][y], &ap.d[0][cy]))
        });
        out.ls[i] = js.iter().map(|&j| ap.ls[i][j]).collect();
        for &j in &js {
            perm.push(ap.t_index(i, j));
            drow.push(ap.d[0][ap.t_index(i, j)].clone());
        }
    }
    let mut ks: Vec<usize> = (0..ap.m).collect();
    ks.sort_by(|&a, &b| ap.dprime[0][b].cmp(&ap.dprime[0][a]));
    out.dprime = vec![ks.iter().map(|&k| ap.dprime[0][k].clone()).collect()];
    perm.extend(ks.iter().map(|&k| ap.n() + k));
    out.d = vec![drow];
    Ok((out, perm))
}

fn s_column(ap: &ApData, sign: i64) -> Option<usize> {
    ap.dprime[0].iter().position(|x| *x == BigInt::from(sign)).map(|k| ap.s_index(k))
}

/// Fan of the canonical toric ambient of a K*-surface with sorted arms:
/// the cones between neighbours in each arm, and at each end either the
/// elliptic cone through the extreme columns or the cones joining them to
/// the parabolic ray.
pub fn kstar_fan(ap: &ApData) -> Result<Fan> {
    check_surface(ap)?;
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for i in 0..=ap.r {
        for j in 0..ap.ns[i] - 1 {
            cones.push(vec![ap.t_index(i, j), ap.t_index(i, j + 1)]);
        }
    }
    for (sign, end) in [(1i64, true), (-1, false)] {
        let pick = |i: usize| if end { ap.t_index(i, ap.ns[i] - 1) } else { ap.t_index(i, 0) };
        match s_column(ap, sign) {
            Some(s) => (0..=ap.r).for_each(|i| cones.push(vec![pick(i), s])),
            None => cones.push((0..=ap.r).map(pick).collect()),
        }
    }
    for c in &mut cones {
        c.sort();
    }
    cones.sort();
    Fan::new(ap.p_matrix().to_cols(), cones)
}

/// One inserted ray of the resolution.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub inserted: IntVec,
    /// Arm receiving the new column, `None` for a parabolic column.
    pub arm: Option<usize>,
    /// Column index of the new ray in the updated data.
    pub column: usize,
    pub ap: ApData,
    pub p: IntMatrix,
    pub presentation: GradedPresentation,
    /// Whether the step was reproduced by a hypersurface modification.
    pub cross_checked: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    /// Input data with sorted arms.
    pub initial: ApData,
    pub steps: Vec<ResolutionStep>,
    pub resolved: ApData,
    pub presentation: GradedPresentation,
    pub fan: Fan,
    /// Variable indices of the exceptional curves in the resolved data.
    pub exceptional: Vec<usize>,
}

fn full_vector(ap: &ApData, arm: usize, l: &BigInt, d: &BigInt) -> IntVec {
    let mut v = vec![BigInt::zero(); ap.r + 1];
    if arm == 0 {
        for x in v.iter_mut().take(ap.r) {
            *x = -l.clone();
        }
    } else {
        v[arm - 1] = l.clone();
    }
    v[ap.r] = d.clone();
    v
}

/// Integer coefficients `a` with `sum a_i g_i` a positive multiple of `v`.
fn integral_coefficients(gens: &[IntVec], v: &[BigInt]) -> Result<Vec<BigInt>> {
    let c = combination(gens, v).ok_or_else(|| Error::Inconsistent("ray outside the span of its cone".into()))?;
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let a: Vec<BigInt> = c.iter().map(|x| (x * Rat::from(den.clone())).to_integer()).collect();
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::Inconsistent("ray is not interior to its cone".into()));
    }
    Ok(a)
}

fn is_smooth_elliptic(ap: &ApData, pres: &GradedPresentation, cols: &[usize]) -> Result<bool> {
    let p = ap.p_matrix().select_cols(cols);
    if p.det().abs() != BigInt::one() {
        return Ok(false);
    }
    let n = ap.nvars();
    let mask = (0..n).filter(|i| !cols.contains(i)).fold(0u64, |m, i| m | (1 << i));
    Ok(pres.monomial_system()?.smooth_at(mask))
}

struct State {
    ap: ApData,
    exceptional: Vec<bool>,
    steps: Vec<ResolutionStep>,
}

impl State {
    fn insert(&mut self, arm: Option<usize>, pos: usize, l: BigInt, d: BigInt, center: Vec<usize>) -> Result<()> {
        let old = self.ap.clone();
        let mut ap = old.clone();
        let column;
        let v;
        match arm {
            Some(i) => {
                column = ap.t_index(i, pos);
                ap.ns[i] += 1;
                ap.ls[i].insert(pos, u32::try_from(&l).map_err(|_| Error::Inconsistent("isotropy overflow".into()))?);
                ap.d[0].insert(column, d.clone());
                v = full_vector(&old, i, &l, &d);
            }
            None => {
                column = ap.n() + pos;
                ap.m += 1;
                ap.dprime[0].insert(pos, d.clone());
                v = full_vector(&old, 0, &BigInt::zero(), &d);
            }
        }
        let presentation = build_rap(&ap)?;
        let cross_checked = cross_check(&old, &ap, column, &center, &v)?;
        self.exceptional.insert(column, true);
        self.steps.push(ResolutionStep {
            inserted: v,
            arm,
            column,
            p: ap.p_matrix(),
            presentation,
            ap: ap.clone(),
            cross_checked,
        });
        self.ap = ap;
        Ok(())
    }
}

/// Reruns a single insertion as a hypersurface modification and compares
/// the outcome. Only possible for one relation; inadmissible centers are
/// skipped.
fn cross_check(old: &ApData, new: &ApData, column: usize, center: &[usize], v: &IntVec) -> Result<bool> {
    if old.r != 2 {
        return Ok(false);
    }
    let pres = build_rap(old)?;
    let p = old.p_matrix();
    let gens: Vec<IntVec> = center.iter().map(|&c| p.col(c)).collect();
    let spec = ModificationSpec::new(center.to_vec(), integral_coefficients(&gens, v)?)?;
    let fan = kstar_fan(old)?;
    let m = match modify(&pres, &p, &fan, &spec, false, "X") {
        Ok(m) => m,
        Err(Error::NotAdmissible(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let target = build_rap(new)?;
    let n = old.nvars();
    // position in the modified ring -> position in the new data
    let perm: Vec<usize> = (0..=n).map(|j| if j == n { column } else if j < column { j } else { j + 1 }).collect();
    let f = m.presentation.relations[0].permute(&perm).monic();
    if f != target.relations[0].monic() {
        return Err(Error::Inconsistent("modified relation differs from R(A,P) relation".into()));
    }
    let mut qcols = vec![IntVec::new(); n + 1];
    for (j, w) in m.presentation.degree_matrix().to_cols().into_iter().enumerate() {
        qcols[perm[j]] = w;
    }
    let q = IntMatrix::from_cols(&qcols, m.presentation.group.len())?;
    if !same_grading(&q, &m.presentation.group, &target.degree_matrix(), &target.group)? {
        return Err(Error::Inconsistent("modified grading differs from R(A,P) grading".into()));
    }
    // the canonical ambient of the new surface is a subfan of the subdivision
    let sub: BTreeSet<BTreeSet<IntVec>> =
        m.fan.all_cones().iter().map(|c| c.iter().map(|&i| m.fan.rays[i].clone()).collect()).collect();
    let ambient = kstar_fan(new)?;
    for c in &ambient.max_cones {
        let rays: BTreeSet<IntVec> = c.iter().map(|&i| ambient.rays[i].clone()).collect();
        if !sub.contains(&rays) {
            return Err(Error::Inconsistent("fan of the new data is not part of the subdivision".into()));
        }
    }
    Ok(true)
}

fn det2(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// First ray of the regular subdivision of `cone(u, w)` next to `u`, in the
/// plane lattice of an arm.
fn hj_next(u: &(BigInt, BigInt), w: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let n = det2(u, w);
    let sgn = n.signum();
    let n = n.abs();
    // complete u to a basis (u, c) with det(u, c) = sgn
    let e = u.0.extended_gcd(&u.1);
    let mut c = (-&e.y * &sgn, &e.x * &sgn);
    if det2(u, &c) != sgn {
        c = (-c.0, -c.1);
    }
    // w = x u + n c
    let x = det2(w, &c) * &sgn;
    let k = x.div_ceil(&n);
    (&c.0 + &k * &u.0, &c.1 + &k * &u.1)
}

/// Canonical resolution: first the singular elliptic fixed points are
/// replaced by parabolic curves, then all singular two dimensional cones
/// are subdivided regularly, arm by arm from the bottom.
pub fn kstar_resolve(ap: &ApData) -> Result<Resolution> {
    let (initial, _) = sort_arms(ap)?;
    let mut st = State { ap: initial.clone(), exceptional: vec![false; initial.nvars()], steps: Vec::new() };
    for sign in [1i64, -1] {
        if s_column(&st.ap, sign).is_some() {
            continue;
        }
        let a = &st.ap;
        let cols: Vec<usize> =
            (0..=a.r).map(|i| if sign > 0 { a.t_index(i, a.ns[i] - 1) } else { a.t_index(i, 0) }).collect();
        if is_smooth_elliptic(a, &build_rap(a)?, &cols)? {
            continue;
        }
        let pos = if sign > 0 { 0 } else { a.m };
        st.insert(None, pos, BigInt::zero(), BigInt::from(sign), cols)?;
    }
    for i in 0..=st.ap.r {
        loop {
            let a = &st.ap;
            // (vector, column, position in arm)
            let mut seq: Vec<((BigInt, BigInt), usize)> = Vec::new();
            if let Some(s) = s_column(a, -1) {
                seq.push(((BigInt::zero(), BigInt::from(-1)), s));
            }
            for j in 0..a.ns[i] {
                let c = a.t_index(i, j);
                seq.push(((BigInt::from(a.ls[i][j]), a.d[0][c].clone()), c));
            }
            if let Some(s) = s_column(a, 1) {
                seq.push(((BigInt::zero(), BigInt::one()), s));
            }
            let offset = usize::from(s_column(a, -1).is_some());
            let bad = (0..seq.len() - 1).find(|&k| det2(&seq[k].0, &seq[k + 1].0).abs() > BigInt::one());
            let Some(k) = bad else { break };
            let (u, w) = (&seq[k].0, &seq[k + 1].0);
            let (l, d) = hj_next(u, w);
            let pos = k + 1 - offset;
            let center = vec![seq[k].1, seq[k + 1].1];
            st.insert(Some(i), pos, l, d, center)?;
        }
    }
    let resolved = st.ap.clone();
    let presentation = build_rap(&resolved)?;
    let fan = kstar_fan(&resolved)?;
    let exceptional = st.exceptional.iter().enumerate().filter(|(_, &e)| e).map(|(i, _)| i).collect();
    Ok(Resolution { initial, steps: st.steps, resolved, presentation, fan, exceptional })
}

/// Intersection matrix of the exceptional curves and the ADE label of their
/// configuration.
#[derive(Clone, Debug)]
pub struct ExceptionalData {
    pub curves: Vec<usize>,
    pub names: Vec<String>,
    pub matrix: Vec<Vec<Rat>>,
    pub label: Option<String>,
}

impl ExceptionalData {
    /// Contracts exceptional (-1)-curves until none is left, which gives
    /// the configuration of the minimal resolution. Contracting `E` changes
    /// `C.C'` into `C.C' + (C.E)(E.C')`.
    pub fn contract_minus_one_curves(&self) -> ExceptionalData {
        let mut alive: Vec<usize> = (0..self.curves.len()).collect();
        let mut m = self.matrix.clone();
        let minus_one = -Rat::one();
        while let Some(pos) = alive.iter().position(|&i| m[i][i] == minus_one) {
            let e = alive.remove(pos);
            for &i in &alive {
                for &j in &alive {
                    let delta = &m[i][e] * &m[e][j];
                    m[i][j] += delta;
                }
            }
        }
        let matrix: Vec<Vec<Rat>> = alive.iter().map(|&i| alive.iter().map(|&j| m[i][j].clone()).collect()).collect();
        ExceptionalData {
            curves: alive.iter().map(|&i| self.curves[i]).collect(),
            names: alive.iter().map(|&i| self.names[i].clone()).collect(),
            label: ade_match(&matrix),
            matrix,
        }
    }
}

pub fn self_intersections(res: &Resolution, guard: &SizeGuard) -> Result<ExceptionalData> {
    let curves = res.exceptional.clone();
    let names = curves.iter().map(|&i| res.presentation.vars[i].clone()).collect();
    if curves.is_empty() {
        return Ok(ExceptionalData { curves, names, matrix: Vec::new(), label: Some(String::new()) });
    }
    let br = bunched_ring_from_fan(&res.presentation, &res.fan, guard)?;
    let mut form = IntersectionForm::new(&br, None)?;
    let mut matrix = vec![vec![Rat::zero(); curves.len()]; curves.len()];
    for a in 0..curves.len() {
        for b in a..curves.len() {
            let v = form.divisors(&[curves[a], curves[b]])?;
            matrix[a][b] = v.clone();
            matrix[b][a] = v;
        }
    }
    let label = ade_match(&matrix);
    Ok(ExceptionalData { curves, names, matrix, label })
}

/// ADE type of a configuration of (-2)-curves given by its intersection
/// matrix, e.g. `"A2"` or `"A1+E6"`; the empty string for no curves and
/// `None` when some curve is not a (-2)-curve or a component is not a
/// Dynkin diagram.
pub fn ade_match(matrix: &[Vec<Rat>]) -> Option<String> {
    let n = matrix.len();
    let two = Rat::from_integer(BigInt::from(-2));
    if (0..n).any(|i| matrix[i][i] != two) {
        return None;
    }
    let one = Rat::one();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for (j, m) in matrix[i].iter().enumerate() {
            if i != j && !m.is_zero() {
                if *m != one {
                    return None;
                }
                adj[i].push(j);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut labels = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            for &t in &adj[comp[k]] {
                if !seen[t] {
                    seen[t] = true;
                    comp.push(t);
                }
            }
            k += 1;
        }
        let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return None;
        }
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() > 2).collect();
        let size = comp.len();
        let label = match branch.as_slice() {
            [] => format!("A{size}"),
            [c] if adj[*c].len() == 3 => {
                let mut legs: Vec<usize> = adj[*c]
                    .iter()
                    .map(|&start| {
                        let (mut prev, mut cur, mut len) = (*c, start, 1);
                        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                            prev = cur;
                            cur = next;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                legs.sort();
                match legs.as_slice() {
                    [1, 1, _] => format!("D{size}"),
                    [1, 2, 2] => "E6".into(),
                    [1, 2, 3] => "E7".into(),
                    [1, 2, 4] => "E8".into(),
                    _ => return None,
                }
            }
            _ => return None,
        };
        labels.push(label);
    }
    labels.sort_by(|a, b| (a.as_bytes()[0], a[1..].parse::<usize>().unwrap_or(0)).cmp(&(b.as_bytes()[0], b[1..].parse::<usize>().unwrap_or(0))));
    Some(labels.join("+"))
}
