use std::collections::BTreeSet;


use super::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::linalg::is_primitive;

/// A finite collection of cones closed under faces in which any two members
/// meet in a common face. Cones need not be pointed.
#[derive(Clone, Debug)]
pub struct Quasifan {
    cones: Vec<Cone>,
}

impl Quasifan {
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && d.contains_cone(c)))
            .collect()
    }
}

/// Checks the quasifan axioms; reports the first offending pair or cone.
pub fn validate_quasifan(cones: &[Cone]) -> Result<Quasifan> {
    let Some(first) = cones.first() else { return Err(Error::EmptyCollection) };
    let n = first.ambient();
    for c in cones {
        if c.ambient() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c.ambient() });
        }
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let m = cones[i].intersect(&cones[j]);
            if !m.is_face_of(&cones[i]) || !m.is_face_of(&cones[j]) {
                return Err(Error::FaceConditionViolated(i, j));
            }
        }
    }
    for (i, c) in cones.iter().enumerate() {
        for f in c.faces() {
            if !cones.contains(&f) {
                return Err(Error::FaceClosureViolated(i));
            }
        }
    }
    let mut all = cones.to_vec();
    all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    all.dedup();
    Ok(Quasifan { cones: all })
}

/// Fan of pointed cones given by primitive rays and index sets of maximal
/// cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub rays: Vec<IntVec>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<IntVec>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let n = rays.first().map_or(0, |r| r.len());
        for r in &rays {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            if !is_primitive(r) {
                return Err(Error::NonPrimitive);
            }
        }
        let mut cones = Vec::new();
        let mut normalized = Vec::new();
        for s in &max_cones {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&i| i >= rays.len()) {
                return Err(Error::Malformed(format!("ray index out of range in {s:?}")));
            }
            let c = Cone::from_rays(n, &s.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>())?;
            if !c.is_pointed() {
                return Err(Error::InvalidCone("fan cones must be pointed".into()));
            }
            let mut expected: Vec<IntVec> = s.iter().map(|&i| rays[i].clone()).collect();
            expected.sort();
            if c.rays() != expected.as_slice() {
                return Err(Error::InvalidCone(format!("rays {s:?} are not the extreme rays of their cone")));
            }
            cones.push(c);
            normalized.push(s);
        }
        let mut all: Vec<Cone> = Vec::new();
        for c in &cones {
            for f in c.faces() {
                if !all.contains(&f) {
                    all.push(f);
                }
            }
        }
        if !all.is_empty() {
            validate_quasifan(&all)?;
        }
        normalized.sort();
        normalized.dedup();
        Ok(Fan { rays, max_cones: normalized })
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, |r| r.len())
    }

    pub fn cone(&self, idx: &[usize]) -> Cone {
        let g: Vec<IntVec> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::from_rays(self.dim(), &g).expect("ray length")
    }

    /// All cones of the fan as sorted ray index sets.
    pub fn all_cones(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for m in &self.max_cones {
            for f in self.cone(m).faces() {
                let s: Vec<usize> = m.iter().copied().filter(|&i| f.contains(&self.rays[i])).collect();
                out.insert(s);
            }
        }
        out
    }

    /// Whether the rays with the given indices span a cone of the fan.
    pub fn contains_cone_indices(&self, idx: &[usize]) -> bool {
        let mut s = idx.to_vec();
        s.sort_unstable();
        s.dedup();
        self.all_cones().contains(&s)
    }

    pub fn support_contains(&self, v: &[num_bigint::BigInt]) -> bool {
        self.max_cones.iter().any(|m| self.cone(m).contains(v))
    }

    /// Stellar subdivision at a primitive vector of the support.
    pub fn stellar_subdivision(&self, v: &IntVec) -> Result<Fan> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        if !is_primitive(v) {
            return Err(Error::NonPrimitive);
        }
        if self.rays.contains(v) {
            return Ok(self.clone());
        }
        if !self.support_contains(v) {
            return Err(Error::NotInSupport);
        }
        let mut rays = self.rays.clone();
        let new = rays.len();
        rays.push(v.clone());
        let mut max_cones = Vec::new();
        for m in &self.max_cones {
            let c = self.cone(m);
            if !c.contains(v) {
                max_cones.push(m.clone());
                continue;
            }
            for facet in c.faces().into_iter().filter(|f| f.dim() + 1 == c.dim()) {
                if facet.contains(v) {
                    continue;
                }
                let mut s: Vec<usize> = m.iter().copied().filter(|&i| facet.contains(&self.rays[i])).collect();
                s.push(new);
                max_cones.push(s);
            }
        }
        // drop cones contained in others
        let keep: Vec<Vec<usize>> = max_cones
            .iter()
            .filter(|s| !max_cones.iter().any(|t| t != *s && s.iter().all(|i| t.contains(i))))
            .cloned()
            .collect();
        Fan::new(rays, keep)
    }
}
