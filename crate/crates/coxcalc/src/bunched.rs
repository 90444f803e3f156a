//! Bunches of orbit cones, bunched rings and their canonical toric ambient.

use crate::cones::{Cone, Fan};
use crate::error::{Error, Result};
use crate::gitfan::{bunch_of, git_cone};
use crate::graded::GradedPresentation;
use crate::guard::SizeGuard;
use crate::lattice::{gale_dual, IntMatrix, IntVec, Lattice};
use crate::orbit::{enumerate_ffaces, ffaces_of, orbit_cones_from_faces, FaceSubset, OrbitConeSet};

/// A bunch given by orbit cone ids, with its relevant faces and covering
/// collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BunchData {
    pub members: Vec<usize>,
    pub rlv: Vec<FaceSubset>,
    pub cov: Vec<FaceSubset>,
}

impl BunchData {
    /// Members not containing another member.
    pub fn minimal_members(&self, ocs: &OrbitConeSet) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&i| !self.members.iter().any(|&j| j != i && ocs.cone(i).contains_cone(ocs.cone(j))))
            .collect()
    }
}

/// Images `Q(gamma0)` of the facets of the orthant, one per variable.
pub fn facet_images(pres: &GradedPresentation) -> Vec<Cone> {
    let n = pres.nvars();
    (0..n)
        .map(|i| pres.projected_cone(&(0..n).filter(|&j| j != i).collect::<Vec<_>>()))
        .collect()
}

/// F-faces projecting into the bunch.
pub fn relevant_faces(
    pres: &GradedPresentation,
    ocs: &OrbitConeSet,
    ffaces: &[FaceSubset],
    members: &[usize],
) -> Vec<FaceSubset> {
    ffaces
        .iter()
        .copied()
        .filter(|f| {
            let c = pres.projected_cone(&f.indices());
            members.iter().any(|&m| *ocs.cone(m) == c)
        })
        .collect()
}

/// Inclusion minimal relevant faces.
pub fn covering_collection(rlv: &[FaceSubset]) -> Vec<FaceSubset> {
    rlv.iter()
        .copied()
        .filter(|f| !rlv.iter().any(|g| g != f && g.is_subset(f)))
        .collect()
}

fn make_bunch(pres: &GradedPresentation, ocs: &OrbitConeSet, ffaces: &[FaceSubset], mut members: Vec<usize>) -> BunchData {
    members.sort();
    members.dedup();
    let rlv = relevant_faces(pres, ocs, ffaces, &members);
    let cov = covering_collection(&rlv);
    BunchData { members, rlv, cov }
}

/// Bunch `Phi(lambda)` of a GIT cone: orbit cones whose relative interior
/// contains the relative interior of `lambda`.
pub fn bunch_from_chamber(
    pres: &GradedPresentation,
    ocs: &OrbitConeSet,
    ffaces: &[FaceSubset],
    lambda: &Cone,
) -> Result<BunchData> {
    let w = lambda.interior_point();
    if git_cone(ocs, &w)? != *lambda {
        return Err(Error::InvalidCone(format!("{lambda:?} is not a GIT cone")));
    }
    Ok(make_bunch(pres, ocs, ffaces, bunch_of(ocs, lambda)))
}

/// Checks the bunch axioms: pairwise overlapping relative interiors and
/// closure under passing to orbit cones with larger relative interior.
pub fn check_bunch(ocs: &OrbitConeSet, members: &[usize]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::EmptyCollection);
    }
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            if !ocs.cone(i).relints_meet(ocs.cone(j)) {
                return Err(Error::BunchOverlapViolated(i, j));
            }
        }
    }
    for &i in members {
        for j in 0..ocs.len() {
            if !members.contains(&j) && ocs.cone(i).relint_within(ocs.cone(j)) {
                return Err(Error::NotUpwardClosed(format!("{:?} lies inside {:?}", ocs.cone(i), ocs.cone(j))));
            }
        }
    }
    Ok(())
}

/// Checks that every facet image belongs to the bunch.
pub fn check_true(pres: &GradedPresentation, ocs: &OrbitConeSet, members: &[usize]) -> Result<()> {
    for (i, c) in facet_images(pres).iter().enumerate() {
        if !members.iter().any(|&m| ocs.cone(m) == c) {
            return Err(Error::TruenessViolated(format!("image {c:?} of facet {} missing", i + 1)));
        }
    }
    Ok(())
}

/// All maximal true bunches. A maximal bunch is a maximal family of orbit
/// cones with pairwise overlapping relative interiors; such a family is
/// automatically closed upwards, so these are the maximal cliques of the
/// overlap graph that contain every facet image.
pub fn enumerate_maximal_true_bunches(
    pres: &GradedPresentation,
    ocs: &OrbitConeSet,
    ffaces: &[FaceSubset],
    guard: &SizeGuard,
) -> Result<Vec<BunchData>> {
    guard.check_orbit_cones(ocs.len())?;
    let n = ocs.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && ocs.cone(i).relints_meet(ocs.cone(j))).collect())
        .collect();
    let facets: Vec<usize> = facet_images(pres)
        .iter()
        .map(|c| ocs.position(c))
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    if facets.len() != pres.nvars() {
        // some facet image is not an orbit cone; nothing can be true
        return Ok(Vec::new());
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut cliques);
    let mut out: Vec<BunchData> = cliques
        .into_iter()
        .filter(|c: &Vec<usize>| facets.iter().all(|f| c.contains(f)))
        .map(|c| make_bunch(pres, ocs, ffaces, c))
        .collect();
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = *p.iter().chain(x.iter()).max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count()).expect("nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// Conditions of a bunched ring that are taken on trust rather than checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub almost_free: bool,
    pub facets_are_ffaces: bool,
    /// Pairwise nonassociated K-prime generators: asserted by the caller or
    /// guaranteed by the construction, never verified here.
    pub k_prime_asserted: bool,
}

#[derive(Clone, Debug)]
pub struct BunchedRing {
    pub pres: GradedPresentation,
    pub ffaces: Vec<FaceSubset>,
    /// All orbit cones, or, for rings from [`bunched_ring_from_fan`] with a
    /// full dimensional chamber, only the members of the bunch.
    pub ocs: OrbitConeSet,
    pub bunch: BunchData,
    pub certificate: Certificate,
}

/// Validates a presentation together with a bunch given by its member cones.
pub fn validate_bunched_ring(pres: &GradedPresentation, members: &[Cone], guard: &SizeGuard) -> Result<BunchedRing> {
    let ffaces = enumerate_ffaces(pres, guard)?;
    let ocs = orbit_cones_from_faces(pres, &ffaces);
    let ids = members
        .iter()
        .map(|c| ocs.position(c).ok_or_else(|| Error::NotOrbitCone(format!("{c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    assemble(pres, ffaces, ocs, ids)
}

fn assemble(pres: &GradedPresentation, ffaces: Vec<FaceSubset>, ocs: OrbitConeSet, ids: Vec<usize>) -> Result<BunchedRing> {
    let n = pres.nvars();
    let facets_are_ffaces = (0..n).all(|i| ffaces.contains(&FaceSubset::full(n).without(i)));
    if !facets_are_ffaces {
        return Err(Error::InvalidData("some facet of the orthant is not an F-face".into()));
    }
    if !pres.is_almost_free() {
        return Err(Error::AlmostFreeViolated("the degrees of some facet do not generate K".into()));
    }
    check_bunch(&ocs, &ids)?;
    check_true(pres, &ocs, &ids)?;
    let bunch = make_bunch(pres, &ocs, &ffaces, ids);
    let certificate = Certificate { almost_free: true, facets_are_ffaces, k_prime_asserted: pres.k_prime_asserted };
    Ok(BunchedRing { pres: pres.clone(), ffaces, ocs, bunch, certificate })
}

impl BunchedRing {
    /// Bunched ring defined by the GIT cone of a weight `w` in the moving cone.
    pub fn from_weight(pres: &GradedPresentation, w: &[num_bigint::BigInt], guard: &SizeGuard) -> Result<Self> {
        let ffaces = enumerate_ffaces(pres, guard)?;
        let ocs = orbit_cones_from_faces(pres, &ffaces);
        let lambda = git_cone(&ocs, w)?;
        let ids = bunch_of(&ocs, &lambda);
        assemble(pres, ffaces, ocs, ids)
    }

    /// Bunched ring from an already computed bunch.
    pub fn from_bunch(pres: &GradedPresentation, bunch: &BunchData, guard: &SizeGuard) -> Result<Self> {
        let ffaces = enumerate_ffaces(pres, guard)?;
        let ocs = orbit_cones_from_faces(pres, &ffaces);
        assemble(pres, ffaces, ocs, bunch.members.clone())
    }

    pub fn members(&self) -> Vec<&Cone> {
        self.bunch.members.iter().map(|&i| self.ocs.cone(i)).collect()
    }

    /// Intersection of all members.
    pub fn minimal_cone(&self) -> Cone {
        Cone::intersect_all(self.pres.rank(), self.members())
    }
}

/// Canonical toric ambient: rays are the columns of the HNF Gale dual of the
/// degree map, maximal cones are the complements of the covering collection.
pub fn canonical_toric_ambient(br: &BunchedRing) -> Result<Fan> {
    let p = gale_dual(&br.pres.degree_matrix(), &br.pres.group)?;
    ambient_from_p(br, &p)
}

/// Same as [`canonical_toric_ambient`] with a caller supplied Gale dual `p`,
/// whose rows must span the kernel of the degree map.
pub fn canonical_toric_ambient_with(br: &BunchedRing, p: &IntMatrix) -> Result<Fan> {
    let own = gale_dual(&br.pres.degree_matrix(), &br.pres.group)?;
    if p.cols() != br.pres.nvars() {
        return Err(Error::DimensionMismatch { expected: br.pres.nvars(), got: p.cols() });
    }
    let a = Lattice::from_generators(&own.to_rows(), own.cols());
    let b = Lattice::from_generators(&p.to_rows(), p.cols());
    if !(a.contains_lattice(&b) && b.contains_lattice(&a)) {
        return Err(Error::Inconsistent("rows of P do not span the kernel of Q".into()));
    }
    ambient_from_p(br, p)
}

fn ambient_from_p(br: &BunchedRing, p: &IntMatrix) -> Result<Fan> {
    let n = br.pres.nvars();
    let rays: Vec<IntVec> = p.to_cols();
    let mut max_cones: Vec<Vec<usize>> = br.bunch.cov.iter().map(|g| g.complement(n).indices()).collect();
    max_cones.sort();
    Fan::new(rays, max_cones)
}

/// Bunched ring of a neat toric ambient: a fan with one ray per variable.
/// Cones whose complementary face is not an F-face miss the variety and are
/// ignored; the complements of the remaining cones must make up the
/// relevant faces of a bunch. The chamber is taken in the common relative
/// interior of the corresponding orbit cones.
pub fn bunched_ring_from_fan(pres: &GradedPresentation, fan: &Fan, guard: &SizeGuard) -> Result<BunchedRing> {
    let n = pres.nvars();
    if fan.rays.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: fan.rays.len() });
    }
    guard.check_vars(n)?;
    let sys = pres.monomial_system()?;
    let relevant: Vec<FaceSubset> = fan
        .all_cones()
        .iter()
        .map(|c| FaceSubset::from_indices(c).complement(n))
        .filter(|g| sys.is_fface(g.0))
        .collect();
    let mut cov: Vec<FaceSubset> =
        relevant.iter().filter(|g| !relevant.iter().any(|h| h != *g && h.is_subset(g))).copied().collect();
    if cov.is_empty() {
        return Err(Error::Inconsistent("no cone of the fan meets the variety".into()));
    }
    cov.sort_by_key(|f| (f.len(), f.0));
    let images: Vec<Cone> = cov.iter().map(|g| pres.projected_cone(&g.indices())).collect();
    let lambda = Cone::intersect_all(pres.rank(), images.iter());
    let w = lambda.interior_point();
    if !images.iter().all(|c| c.relint_contains(&w)) {
        return Err(Error::Inconsistent("the fan does not come from a projective chamber".into()));
    }
    if lambda.is_full_dim() {
        if let Some(br) = from_full_chamber(pres, &cov, &w)? {
            return Ok(br);
        }
    }
    let br = BunchedRing::from_weight(pres, &w, guard)?;
    let mut got = br.bunch.cov.clone();
    got.sort_by_key(|f| (f.len(), f.0));
    if got != cov {
        return Err(Error::Inconsistent("covering collection differs from the fan".into()));
    }
    Ok(br)
}

/// Shortcut for a candidate covering collection whose images meet in a full
/// dimensional cone around `w`. In a GIT fan every orbit cone either
/// contains the chamber or misses its interior, so `cov` is the covering
/// collection of the chamber exactly when `w` lies in no orbit cone of an
/// F-face containing no member of `cov`; it suffices to test the maximal
/// such faces. The relevant faces are then the F-faces above `cov`, and only
/// their orbit cones are kept. Returns `None` when the test fails, leaving
/// the decision to the full computation.
fn from_full_chamber(pres: &GradedPresentation, cov: &[FaceSubset], w: &[num_bigint::BigInt]) -> Result<Option<BunchedRing>> {
    let n = pres.nvars();
    let ffaces = ffaces_of(&pres.monomial_system()?, n);
    let (rlv, mut rest): (Vec<FaceSubset>, Vec<FaceSubset>) =
        ffaces.iter().copied().partition(|f| cov.iter().any(|g| g.is_subset(f)));
    rest.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut maximal: Vec<FaceSubset> = Vec::new();
    for f in rest {
        if !maximal.iter().any(|m| f.is_subset(m)) {
            maximal.push(f);
        }
    }
    for m in &maximal {
        if pres.projected_cone(&m.indices()).contains(w) {
            return Ok(None);
        }
    }
    if !(0..n).all(|i| ffaces.contains(&FaceSubset::full(n).without(i))) {
        return Err(Error::InvalidData("some facet of the orthant is not an F-face".into()));
    }
    if !pres.is_almost_free() {
        return Err(Error::AlmostFreeViolated("the degrees of some facet do not generate K".into()));
    }
    let ocs = orbit_cones_from_faces(pres, &rlv);
    let members: Vec<usize> = (0..ocs.len()).collect();
    check_true(pres, &ocs, &members)?;
    let mut cov = cov.to_vec();
    cov.sort_by_key(|f| (f.len(), f.0));
    let bunch = BunchData { members, rlv, cov };
    let certificate = Certificate { almost_free: true, facets_are_ffaces: true, k_prime_asserted: pres.k_prime_asserted };
    Ok(Some(BunchedRing { pres: pres.clone(), ffaces, ocs, bunch, certificate }))
}
