mod common;

use common::{a2_surface, b, delpezzo, e6_surface, k6, mat, presentation, toric};
use coxcalc::bunched::*;
use coxcalc::cones::Cone;
use coxcalc::error::Error;
use coxcalc::gitfan::{enumerate_gitfan, moving_cone};
use coxcalc::graded::build_rap;
use coxcalc::guard::SizeGuard;
use coxcalc::lattice::{ivec, AbelianGroup};
use coxcalc::orbit::{enumerate_ffaces, orbit_cones, FaceSubset};

fn cone(rays: &[&[i64]]) -> Cone {
    Cone::from_i64(rays[0].len(), rays).unwrap()
}

fn faces(list: &[&[usize]]) -> Vec<FaceSubset> {
    let mut v: Vec<FaceSubset> = list.iter().map(|f| FaceSubset::from_indices(f)).collect();
    v.sort();
    v
}

#[test]
fn delpezzo_has_one_maximal_true_bunch() {
    let p = delpezzo();
    let g = SizeGuard::default();
    let ff = enumerate_ffaces(&p, &g).unwrap();
    let ocs = orbit_cones(&p, &g).unwrap();
    let bunches = enumerate_maximal_true_bunches(&p, &ocs, &ff, &g).unwrap();
    assert_eq!(bunches.len(), 1);
    let bd = &bunches[0];
    let minimal = bd.minimal_members(&ocs);
    assert_eq!(minimal.len(), 1);
    let tau = cone(&[&[-1, 1], &[1, 2]]);
    assert_eq!(*ocs.cone(minimal[0]), tau);
    // the chamber tau gives the same bunch
    let from_chamber = bunch_from_chamber(&p, &ocs, &ff, &tau).unwrap();
    assert_eq!(&from_chamber, bd);
    // cov: the faces over cone(w1,w4), cone(w2,w5) and the two three-element faces
    let mut cov = bd.cov.clone();
    cov.sort();
    assert_eq!(cov, faces(&[&[0, 3], &[1, 4], &[0, 1, 2], &[2, 3, 4]]));
    assert!(cov.contains(&FaceSubset::from_indices(&[1, 4])));
}

#[test]
fn bunch_from_chamber_rejects_non_git_cones() {
    let p = delpezzo();
    let g = SizeGuard::default();
    let ff = enumerate_ffaces(&p, &g).unwrap();
    let ocs = orbit_cones(&p, &g).unwrap();
    let not_git = cone(&[&[0, 1], &[1, 2]]);
    assert!(matches!(bunch_from_chamber(&p, &ocs, &ff, &not_git), Err(Error::InvalidCone(_))));
}

#[test]
fn projective_plane_bunch() {
    let p = toric(&[&[1], &[1], &[1]]);
    let g = SizeGuard::default();
    let ff = enumerate_ffaces(&p, &g).unwrap();
    let ocs = orbit_cones(&p, &g).unwrap();
    let bunches = enumerate_maximal_true_bunches(&p, &ocs, &ff, &g).unwrap();
    assert_eq!(bunches.len(), 1);
    assert_eq!(bunches[0].members.len(), 1);
    assert_eq!(bunches[0].cov, faces(&[&[0], &[1], &[2]]));
    let br = BunchedRing::from_bunch(&p, &bunches[0], &g).unwrap();
    let fan = canonical_toric_ambient(&br).unwrap();
    assert_eq!(fan.max_cones, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    // rays sum to zero and any two form a lattice basis
    let sum: Vec<_> = (0..2).map(|k| fan.rays.iter().map(|r| r[k].clone()).sum::<num_bigint::BigInt>()).collect();
    assert_eq!(sum, ivec(&[0, 0]));
    for c in &fan.max_cones {
        let d = &fan.rays[c[0]][0] * &fan.rays[c[1]][1] - &fan.rays[c[0]][1] * &fan.rays[c[1]][0];
        assert_eq!(num_traits::Signed::abs(&d), b(1));
    }
}

#[test]
fn plane_with_two_equal_weights() {
    let p = toric(&[&[1], &[1]]);
    let g = SizeGuard::default();
    let ff = enumerate_ffaces(&p, &g).unwrap();
    let ocs = orbit_cones(&p, &g).unwrap();
    let bunches = enumerate_maximal_true_bunches(&p, &ocs, &ff, &g).unwrap();
    assert_eq!(bunches.len(), 1);
    assert_eq!(bunches[0].members.iter().map(|&i| ocs.cone(i).clone()).collect::<Vec<_>>(), vec![cone(&[&[1]])]);
}

#[test]
fn k6_maximal_bunches() {
    let p = k6();
    let g = SizeGuard::default();
    let ff = enumerate_ffaces(&p, &g).unwrap();
    let ocs = orbit_cones(&p, &g).unwrap();
    let bunches = enumerate_maximal_true_bunches(&p, &ocs, &ff, &g).unwrap();
    let fan = enumerate_gitfan(&ocs).unwrap();
    let mov = moving_cone(&p);
    let mut chamber_bunches = Vec::new();
    for ch in fan.chamber_cones() {
        let bd = bunch_from_chamber(&p, &ocs, &ff, ch).unwrap();
        if mov.contains_cone(ch) {
            assert!(bunches.contains(&bd), "chamber bunch of {ch:?} is not among the maximal true bunches");
        }
        chamber_bunches.push(bd);
    }
    for bd in &bunches {
        check_bunch(&ocs, &bd.members).unwrap();
        check_true(&p, &ocs, &bd.members).unwrap();
        // maximality: no further orbit cone overlaps all members
        for j in 0..ocs.len() {
            if !bd.members.contains(&j) {
                assert!(bd.members.iter().any(|&i| !ocs.cone(i).relints_meet(ocs.cone(j))));
            }
        }
    }
    let non_chamber = bunches.iter().filter(|bd| !chamber_bunches.contains(bd)).count();
    assert!(non_chamber >= 2, "found {non_chamber} non-chamber maximal bunches");
}

#[test]
fn validation_errors() {
    let p = delpezzo();
    let g = SizeGuard::default();
    let tau = cone(&[&[-1, 1], &[1, 2]]);
    let w14 = cone(&[&[1, 1], &[-1, 0]]);
    let w24 = cone(&[&[-1, 1], &[-1, 0]]);
    let w15 = cone(&[&[1, 1], &[1, 2]]);
    let w12 = cone(&[&[1, 1], &[-1, 1]]);
    let w45 = cone(&[&[-1, 0], &[1, 2]]);
    let full = [tau.clone(), w14.clone(), w12.clone(), w45.clone()];
    let br = validate_bunched_ring(&p, &full, &g).unwrap();
    assert!(br.certificate.almost_free);
    // cone(w1,w2) is the image of the facet without e4
    let err = validate_bunched_ring(&p, &[tau.clone(), w14.clone(), w45.clone()], &g).unwrap_err();
    assert!(matches!(err, Error::NotUpwardClosed(_) | Error::TruenessViolated(_)), "{err:?}");
    // two chambers with disjoint interiors
    let err = validate_bunched_ring(&p, &[w24, w15], &g).unwrap_err();
    assert!(matches!(err, Error::BunchOverlapViolated(_, _)), "{err:?}");
    // not an orbit cone
    let err = validate_bunched_ring(&p, &[cone(&[&[0, 1]])], &g).unwrap_err();
    assert!(matches!(err, Error::NotOrbitCone(_)));
}

#[test]
fn trueness_is_checked() {
    let p = toric(&[&[1, 0], &[0, 1], &[1, 1]]);
    let g = SizeGuard::default();
    // facet images: cone(w2,w3), cone(w1,w3), cone(w1,w2); the chamber
    // cone(w1,w3) overlaps cone(w2,w3) only in a ray
    let err = validate_bunched_ring(&p, &[cone(&[&[1, 0], &[1, 1]]), cone(&[&[1, 0], &[0, 1]])], &g).unwrap_err();
    assert!(matches!(err, Error::TruenessViolated(_)), "{err:?}");
}

#[test]
fn grading_that_is_not_almost_free() {
    let k = AbelianGroup::new(1, vec![b(2), b(2)]).unwrap();
    let p = presentation(k, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]], &["T1^2 + T2^2 + T3^2"]);
    assert!(!p.is_almost_free());
    let err = validate_bunched_ring(&p, &[cone(&[&[1]])], &SizeGuard::default()).unwrap_err();
    assert!(matches!(err, Error::AlmostFreeViolated(_)), "{err:?}");
}

#[test]
fn a2_ambient_fan() {
    let ap = a2_surface();
    let pres = build_rap(&ap).unwrap();
    let g = SizeGuard::default();
    let w = moving_cone(&pres).interior_point();
    let br = BunchedRing::from_weight(&pres, &w, &g).unwrap();
    let fan = canonical_toric_ambient_with(&br, &ap.p_matrix()).unwrap();
    // columns v01 v02 v11 v21 v22
    assert_eq!(fan.max_cones, vec![vec![0, 1], vec![0, 2, 3], vec![1, 2, 4], vec![3, 4]]);
    assert_eq!(fan.rays, ap.p_matrix().to_cols());
    // the same fan up to the lattice basis chosen by the Hermite form
    let own = canonical_toric_ambient(&br).unwrap();
    assert_eq!(own.max_cones, fan.max_cones);
    // and back
    let again = bunched_ring_from_fan(&pres, &fan, &g).unwrap();
    assert_eq!(again.bunch.rlv, br.bunch.rlv);
    assert_eq!(again.bunch.cov, br.bunch.cov);
    let mut ours: Vec<_> = again.members().into_iter().cloned().collect();
    let mut theirs: Vec<_> = br.members().into_iter().cloned().collect();
    ours.sort();
    theirs.sort();
    assert_eq!(ours, theirs);
}

#[test]
fn e6_ambient_fan() {
    let ap = e6_surface();
    let pres = build_rap(&ap).unwrap();
    let g = SizeGuard::default();
    let br = BunchedRing::from_weight(&pres, &[b(1)], &g).unwrap();
    let fan = canonical_toric_ambient_with(&br, &ap.p_matrix()).unwrap();
    // columns v01 v02 v11 v21
    assert_eq!(fan.max_cones, vec![vec![0, 1], vec![0, 2, 3], vec![1, 2, 3]]);
}

#[test]
fn ambient_with_wrong_gale_dual_is_rejected() {
    let ap = e6_surface();
    let pres = build_rap(&ap).unwrap();
    let br = BunchedRing::from_weight(&pres, &[b(1)], &SizeGuard::default()).unwrap();
    let wrong = mat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    assert!(canonical_toric_ambient_with(&br, &wrong).is_err());
}

#[test]
fn size_guard_limits_bunch_search() {
    let p = k6();
    let g = SizeGuard { max_vars: 16, max_orbit_cones: 3 };
    let ff = enumerate_ffaces(&p, &SizeGuard::default()).unwrap();
    let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
    let err = enumerate_maximal_true_bunches(&p, &ocs, &ff, &g).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    let err = enumerate_ffaces(&p, &SizeGuard { max_vars: 4, max_orbit_cones: 10 }).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

/// The shortcut taken for full dimensional chambers agrees with the bunch
/// computed from all orbit cones.
#[test]
fn fan_shortcut_matches_full_computation() {
    let g = SizeGuard::default();
    for ap in [a2_surface(), e6_surface()] {
        let res = coxcalc::modifications::kstar_resolve(&ap).unwrap();
        let fast = bunched_ring_from_fan(&res.presentation, &res.fan, &g).unwrap();
        let w = fast.minimal_cone().interior_point();
        let full = BunchedRing::from_weight(&res.presentation, &w, &g).unwrap();
        assert_eq!(fast.bunch.rlv, full.bunch.rlv);
        assert_eq!(fast.bunch.cov, full.bunch.cov);
        assert_eq!(fast.minimal_cone(), full.minimal_cone());
        let mut a: Vec<_> = fast.members().into_iter().cloned().collect();
        let mut b: Vec<_> = full.members().into_iter().cloned().collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
