//! F-faces and orbit cones.

use std::fmt;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::graded::{GradedPresentation, MonomialSystem, MAX_VARS};
use crate::guard::SizeGuard;

/// Face of the positive orthant, given by the set of variables whose unit
/// vectors span it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceSubset(pub u64);

impl FaceSubset {
    pub fn from_indices(idx: &[usize]) -> Self {
        FaceSubset(idx.iter().fold(0, |m, &i| m | 1 << i))
    }

    pub fn full(n: usize) -> Self {
        FaceSubset(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.0 >> i & 1 == 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &FaceSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(&self, n: usize) -> FaceSubset {
        FaceSubset(!self.0 & FaceSubset::full(n).0)
    }

    pub fn without(&self, i: usize) -> FaceSubset {
        FaceSubset(self.0 & !(1 << i))
    }
}

impl fmt::Debug for FaceSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

fn check_subset(pres: &GradedPresentation, g: FaceSubset) -> Result<()> {
    if !g.is_subset(&FaceSubset::full(pres.nvars().min(MAX_VARS))) {
        return Err(Error::Malformed(format!("face {g:?} uses indices beyond {} variables", pres.nvars())));
    }
    Ok(())
}

/// Whether `gamma0` is an F-face: some point of the total coordinate space
/// has nonzero coordinates exactly at `gamma0`.
pub fn is_fface(pres: &GradedPresentation, gamma0: FaceSubset) -> Result<bool> {
    check_subset(pres, gamma0)?;
    Ok(pres.monomial_system()?.is_fface(gamma0.0))
}

/// All F-faces, ordered by size and then by bitmask.
pub fn enumerate_ffaces(pres: &GradedPresentation, guard: &SizeGuard) -> Result<Vec<FaceSubset>> {
    guard.check_vars(pres.nvars())?;
    let sys = pres.monomial_system()?;
    Ok(ffaces_of(&sys, pres.nvars()))
}

pub fn ffaces_of(sys: &MonomialSystem, n: usize) -> Vec<FaceSubset> {
    let mut out: Vec<FaceSubset> = (0..1u64 << n).filter(|&m| sys.is_fface(m)).map(FaceSubset).collect();
    out.sort_by_key(|f| (f.len(), f.0));
    out
}

/// An orbit cone with the F-faces projecting onto it.
#[derive(Clone, Debug)]
pub struct OrbitCone {
    pub cone: Cone,
    pub witnesses: Vec<FaceSubset>,
}

/// Distinct orbit cones in canonical order (dimension, then canonical form).
#[derive(Clone, Debug)]
pub struct OrbitConeSet {
    pub rank: usize,
    pub cones: Vec<OrbitCone>,
}

impl OrbitConeSet {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn position(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|o| o.cone == *c)
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i].cone
    }
}

/// Orbit cones of the presentation: the images `Q(gamma0)` of all F-faces.
pub fn orbit_cones(pres: &GradedPresentation, guard: &SizeGuard) -> Result<OrbitConeSet> {
    let ff = enumerate_ffaces(pres, guard)?;
    Ok(orbit_cones_from_faces(pres, &ff))
}

pub fn orbit_cones_from_faces(pres: &GradedPresentation, ffaces: &[FaceSubset]) -> OrbitConeSet {
    let mut cones: Vec<OrbitCone> = Vec::new();
    let mut by_weights: std::collections::HashMap<Vec<crate::lattice::IntVec>, usize> = Default::default();
    let weights = pres.weights();
    for &f in ffaces {
        // faces with the same set of weights give the same cone
        let mut key: Vec<_> = f.indices().iter().map(|&i| weights[i].clone()).collect();
        key.sort();
        key.dedup();
        if let Some(&k) = by_weights.get(&key) {
            cones[k].witnesses.push(f);
            continue;
        }
        let c = pres.projected_cone(&f.indices());
        let k = match cones.iter().position(|o| o.cone == c) {
            Some(k) => {
                cones[k].witnesses.push(f);
                k
            }
            None => {
                cones.push(OrbitCone { cone: c, witnesses: vec![f] });
                cones.len() - 1
            }
        };
        by_weights.insert(key, k);
    }
    cones.sort_by(|a, b| a.cone.dim().cmp(&b.cone.dim()).then_with(|| a.cone.cmp(&b.cone)));
    OrbitConeSet { rank: pres.rank(), cones }
}
