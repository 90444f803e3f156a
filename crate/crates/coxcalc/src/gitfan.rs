//! GIT cones, the GIT fan and the moving cone.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cones::{validate_quasifan, Cone};
use crate::error::{Error, Result};
use crate::graded::GradedPresentation;
use crate::lattice::IntVec;
use crate::linalg::{dot, primitive};
use crate::orbit::{FaceSubset, OrbitConeSet};

/// GIT cone `lambda(w)`: the intersection of all orbit cones containing `w`.
pub fn git_cone(ocs: &OrbitConeSet, w: &[BigInt]) -> Result<Cone> {
    if w.len() != ocs.rank {
        return Err(Error::DimensionMismatch { expected: ocs.rank, got: w.len() });
    }
    let containing: Vec<&Cone> = ocs.cones.iter().map(|o| &o.cone).filter(|c| c.contains(w)).collect();
    if containing.is_empty() {
        return Err(Error::OutsideWeightCone);
    }
    Ok(Cone::intersect_all(ocs.rank, containing))
}

/// Hyperplanes along which GIT cones can change: facet hyperplanes of full
/// dimensional orbit cones and linear spans of orbit cones of codimension one.
pub(crate) fn walls(ocs: &OrbitConeSet) -> Vec<IntVec> {
    let k = ocs.rank;
    let mut out: Vec<IntVec> = Vec::new();
    let mut push = |h: &IntVec| {
        let mut h = primitive(h);
        if let Some(p) = h.iter().position(|x| !x.is_zero()) {
            if h[p].is_negative() {
                h = h.iter().map(|x| -x).collect();
            }
        }
        if !out.contains(&h) {
            out.push(h);
        }
    };
    for o in &ocs.cones {
        if o.cone.dim() == k {
            o.cone.facets().iter().for_each(&mut push);
        } else if o.cone.dim() + 1 == k {
            o.cone.equations().iter().for_each(&mut push);
        }
    }
    out
}

/// Point of the relative interior of `cone` avoiding every hyperplane that
/// does not contain the whole cone.
pub(crate) fn generic_point(cone: &Cone, hyperplanes: &[IntVec]) -> IntVec {
    let mut gens: Vec<IntVec> = cone.rays().to_vec();
    gens.extend(cone.lineality().iter().cloned());
    let relevant: Vec<&IntVec> =
        hyperplanes.iter().filter(|h| gens.iter().any(|g| !dot(h, g).is_zero())).collect();
    let n = cone.ambient();
    let mut t = BigInt::from(2);
    loop {
        let mut p = vec![BigInt::zero(); n];
        let mut c = t.clone();
        for g in &gens {
            for (a, b) in p.iter_mut().zip(g) {
                *a += &c * b;
            }
            c *= &t;
        }
        let p = primitive(&p);
        if relevant.iter().all(|h| !dot(h, &p).is_zero()) {
            return p;
        }
        t += 1;
    }
}

fn full_dim_containing<'a>(ocs: &'a OrbitConeSet, p: &[BigInt], dir: Option<&IntVec>) -> Vec<&'a Cone> {
    ocs.cones
        .iter()
        .map(|o| &o.cone)
        .filter(|c| c.dim() == ocs.rank)
        .filter(|c| {
            c.facets().iter().all(|f| {
                let v = dot(f, p);
                v.is_positive() || (v.is_zero() && dir.is_some_and(|d| dot(f, d).is_positive()))
            })
        })
        .collect()
}

/// A cone of the GIT fan together with its bunch: the orbit cones whose
/// relative interior contains the relative interior of the GIT cone.
#[derive(Clone, Debug)]
pub struct GitCone {
    pub cone: Cone,
    pub bunch: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GitFan {
    /// All GIT cones, sorted by dimension and then canonically.
    pub cones: Vec<GitCone>,
    /// Indices into `cones` of the full dimensional ones.
    pub chambers: Vec<usize>,
    /// Pairs of chambers sharing a facet.
    pub adjacency: Vec<(usize, usize)>,
}

/// `Phi(lambda)`: orbit cones whose relative interior contains that of `lambda`.
pub fn bunch_of(ocs: &OrbitConeSet, lambda: &Cone) -> Vec<usize> {
    (0..ocs.len()).filter(|&i| lambda.relint_within(ocs.cone(i))).collect()
}

/// GIT fan of the orbit cones, by traversing full dimensional chambers
/// across their walls and closing under faces.
pub fn enumerate_gitfan(ocs: &OrbitConeSet) -> Result<GitFan> {
    let k = ocs.rank;
    let hyper = walls(ocs);
    let weight_cone = ocs
        .cones
        .last()
        .map(|o| o.cone.clone())
        .ok_or(Error::EmptyCollection)?;
    let weight_cone = ocs.cones.iter().fold(weight_cone, |acc, o| {
        if acc.contains_cone(&o.cone) {
            acc
        } else {
            let mut g = acc.generators();
            g.extend(o.cone.generators());
            Cone::from_rays(k, &g).expect("rank")
        }
    });
    if !weight_cone.is_full_dim() {
        return Err(Error::NotFullDimensional);
    }
    let start = generic_point(&weight_cone, &hyper);
    let first = Cone::intersect_all(k, full_dim_containing(ocs, &start, None));
    let mut chambers: Vec<Cone> = vec![first];
    let mut adjacency = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(ci) = queue.pop_front() {
        let lambda = chambers[ci].clone();
        for n in lambda.facets() {
            let facet = Cone::from_inequalities(k, lambda.facets(), std::slice::from_ref(n)).expect("rank");
            let others: Vec<IntVec> = hyper.iter().filter(|h| primitive(h) != primitive(n) && {
                let neg: IntVec = n.iter().map(|x| -x).collect();
                primitive(h) != primitive(&neg)
            }).cloned().collect();
            let p = generic_point(&facet, &others);
            let away: IntVec = n.iter().map(|x| -x).collect();
            let containing = full_dim_containing(ocs, &p, Some(&away));
            if containing.is_empty() {
                continue;
            }
            let next = Cone::intersect_all(k, containing);
            let j = match chambers.iter().position(|c| *c == next) {
                Some(j) => j,
                None => {
                    chambers.push(next);
                    queue.push_back(chambers.len() - 1);
                    chambers.len() - 1
                }
            };
            let pair = (ci.min(j), ci.max(j));
            if !adjacency.contains(&pair) {
                adjacency.push(pair);
            }
        }
    }
    let mut all: Vec<Cone> = Vec::new();
    for c in &chambers {
        for f in c.faces() {
            if !all.contains(&f) {
                all.push(f);
            }
        }
    }
    all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    let chamber_idx: Vec<usize> = chambers.iter().map(|c| all.iter().position(|a| a == c).expect("face of itself")).collect();
    let mut adj: Vec<(usize, usize)> = adjacency
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (chamber_idx[a], chamber_idx[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    adj.sort();
    let mut ch = chamber_idx.clone();
    ch.sort();
    let cones = all.into_iter().map(|c| GitCone { bunch: bunch_of(ocs, &c), cone: c }).collect();
    Ok(GitFan { cones, chambers: ch, adjacency: adj })
}

impl GitFan {
    /// Checks the quasifan axioms on the computed cones.
    pub fn validate(&self) -> Result<()> {
        let cones: Vec<Cone> = self.cones.iter().map(|c| c.cone.clone()).collect();
        validate_quasifan(&cones).map(|_| ())
    }

    pub fn chamber_cones(&self) -> Vec<&Cone> {
        self.chambers.iter().map(|&i| &self.cones[i].cone).collect()
    }
}

/// F-faces `gamma0` with `lambda` contained in `Q(gamma0)`; their strata make
/// up the set of semistable points.
pub fn semistable_pattern(pres: &GradedPresentation, ffaces: &[FaceSubset], lambda: &Cone) -> Vec<FaceSubset> {
    ffaces
        .iter()
        .copied()
        .filter(|f| pres.projected_cone(&f.indices()).contains_cone(lambda))
        .collect()
}

/// Human readable description of a semistable set given by its pattern,
/// valid for patterns closed under enlarging the face (e.g. toric ones):
/// the complement is cut out by the monomials of the minimal patterns.
pub fn describe_semistable(pres: &GradedPresentation, pattern: &[FaceSubset]) -> String {
    let n = pres.nvars();
    let ambient = if pres.relations.is_empty() { format!("K^{n}") } else { "Xbar".to_string() };
    let minimal: Vec<FaceSubset> = pattern
        .iter()
        .copied()
        .filter(|f| !pattern.iter().any(|g| g != f && g.is_subset(f)))
        .collect();
    if minimal.iter().any(|f| f.is_empty()) {
        return ambient;
    }
    if minimal.is_empty() {
        return "empty".to_string();
    }
    let gens: Vec<String> = minimal
        .iter()
        .map(|f| f.indices().iter().map(|&i| pres.vars[i].clone()).collect::<Vec<_>>().join("*"))
        .collect();
    if minimal.iter().all(|f| f.len() == 1) && minimal.len() == n {
        return format!("{ambient} \\ {{0}}");
    }
    format!("{ambient} \\ V({})", gens.join(","))
}

/// Moving cone: intersection of the cones generated by all but one degree.
pub fn moving_cone(pres: &GradedPresentation) -> Cone {
    let n = pres.nvars();
    let cones: Vec<Cone> =
        (0..n).map(|i| pres.projected_cone(&(0..n).filter(|&j| j != i).collect::<Vec<_>>())).collect();
    Cone::intersect_all(pres.rank(), cones.iter())
}
