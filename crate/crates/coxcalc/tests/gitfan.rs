mod common;

use std::collections::BTreeSet;

use common::oracles::arrangement_chambers;
use common::{b, delpezzo, k6, toric};
use coxcalc::cones::Cone;
use coxcalc::gitfan::{describe_semistable, enumerate_gitfan, git_cone, moving_cone, semistable_pattern};
use coxcalc::graded::GradedPresentation;
use coxcalc::guard::SizeGuard;
use coxcalc::lattice::{ivec, IntVec};
use coxcalc::linalg::rat;
use coxcalc::orbit::{enumerate_ffaces, orbit_cones, FaceSubset};

fn cone(rays: &[&[i64]]) -> Cone {
    let k = rays[0].len();
    Cone::from_i64(k, rays).unwrap()
}

/// Supports of the integer points with entries in [-2, 2] on the zero set.
fn support_oracle(pres: &GradedPresentation) -> BTreeSet<u64> {
    let n = pres.nvars();
    let mut out = BTreeSet::new();
    let mut x = vec![-2i64; n];
    loop {
        let pt: Vec<_> = x.iter().map(|&v| rat(v)).collect();
        if pres.relations.iter().all(|g| g.evaluate(&pt) == rat(0)) {
            let mask = x.iter().enumerate().filter(|(_, &v)| v != 0).fold(0u64, |m, (i, _)| m | 1 << i);
            out.insert(mask);
        }
        let mut i = 0;
        while i < n && x[i] == 2 {
            x[i] = -2;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    out
}

#[test]
fn delpezzo_ffaces_match_point_search() {
    let p = delpezzo();
    let ff: BTreeSet<u64> = enumerate_ffaces(&p, &SizeGuard::default()).unwrap().iter().map(|f| f.0).collect();
    assert_eq!(ff, support_oracle(&p));
    assert_eq!(ff.len(), 17);
}

#[test]
fn delpezzo_orbit_cones() {
    let p = delpezzo();
    let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
    let listed = [
        Cone::zero(2),
        cone(&[&[1, 1]]),
        cone(&[&[-1, 1]]),
        cone(&[&[-1, 0]]),
        cone(&[&[1, 2]]),
        cone(&[&[1, 1], &[-1, 0]]),
        cone(&[&[-1, 1], &[-1, 0]]),
        cone(&[&[1, 1], &[1, 2]]),
        cone(&[&[-1, 1], &[1, 2]]),
    ];
    for c in &listed {
        assert!(ocs.position(c).is_some(), "missing {c:?}");
    }
    // the points (1,-1,1,0,0) and (0,0,1,1,-1) lie on the surface, so
    // cone(w1,w2) and cone(w4,w5) are orbit cones as well
    let extra = [cone(&[&[1, 1], &[-1, 1]]), cone(&[&[-1, 0], &[1, 2]])];
    for c in &extra {
        assert!(ocs.position(c).is_some(), "missing {c:?}");
    }
    assert_eq!(ocs.len(), listed.len() + extra.len());
    // cone(w3) is not an orbit cone
    assert!(ocs.position(&cone(&[&[0, 1]])).is_none());
}

#[test]
fn delpezzo_gitfan() {
    let p = delpezzo();
    let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
    let fan = enumerate_gitfan(&ocs).unwrap();
    fan.validate().unwrap();
    let tau = cone(&[&[-1, 1], &[1, 2]]);
    assert_eq!(git_cone(&ocs, &ivec(&[0, 1])).unwrap(), tau);
    assert_eq!(moving_cone(&p), tau);
    let chambers: Vec<&Cone> = fan.chamber_cones();
    assert_eq!(chambers.len(), 3);
    assert!(chambers.contains(&&tau));
    assert!(chambers.contains(&&cone(&[&[1, 1], &[1, 2]])));
    assert!(chambers.contains(&&cone(&[&[-1, 1], &[-1, 0]])));
    assert_eq!(fan.adjacency.len(), 2);
    // support is the weight cone
    assert!(fan.cones.iter().all(|c| p.weight_cone().contains_cone(&c.cone)));
}

type Expected = (i64, Cone, &'static str);

#[test]
fn one_torus_on_the_plane() {
    let g = SizeGuard::default();
    // (a, b), then expected (w, lambda(w), semistable set)
    let cases: Vec<((i64, i64), Vec<Expected>)> = vec![
        ((1, 1), vec![(0, Cone::zero(1), "K^2"), (1, cone(&[&[1]]), "K^2 \\ {0}")]),
        ((0, 1), vec![(0, Cone::zero(1), "K^2"), (1, cone(&[&[1]]), "K^2 \\ V(T2)")]),
        (
            (-1, 1),
            vec![
                (0, Cone::zero(1), "K^2"),
                (-1, cone(&[&[-1]]), "K^2 \\ V(T1)"),
                (1, cone(&[&[1]]), "K^2 \\ V(T2)"),
            ],
        ),
    ];
    for ((a, bb), expected) in cases {
        let p = toric(&[&[a], &[bb]]);
        let ff = enumerate_ffaces(&p, &g).unwrap();
        let ocs = orbit_cones(&p, &g).unwrap();
        let fan = enumerate_gitfan(&ocs).unwrap();
        fan.validate().unwrap();
        assert_eq!(fan.cones.len(), expected.len(), "a={a}, b={bb}");
        for (w, lambda, ss) in expected {
            let l = git_cone(&ocs, &[b(w)]).unwrap();
            assert_eq!(l, lambda);
            assert!(fan.cones.iter().any(|c| c.cone == l));
            let pat = semistable_pattern(&p, &ff, &l);
            assert_eq!(describe_semistable(&p, &pat), ss);
        }
    }
}

#[test]
fn orbit_cones_of_hyperbolic_plane_action() {
    let p = toric(&[&[1], &[-1]]);
    let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
    let got: Vec<Cone> = ocs.cones.iter().map(|o| o.cone.clone()).collect();
    assert_eq!(got.len(), 4);
    for c in [Cone::zero(1), cone(&[&[1]]), cone(&[&[-1]]), Cone::full(1)] {
        assert!(got.contains(&c));
    }
}

#[test]
fn three_torus_on_k6_matches_arrangement_oracle() {
    let p = k6();
    let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
    let fan = enumerate_gitfan(&ocs).unwrap();
    fan.validate().unwrap();
    let got: BTreeSet<Cone> = fan.chamber_cones().into_iter().cloned().collect();
    let oracle = arrangement_chambers(&p.weights(), 12);
    assert_eq!(got, oracle);
    // three medians and three midlines of the weight triangle: six cells in
    // the corner triangles, six in the medial one
    assert_eq!(got.len(), 12);
    // support is the positive orthant
    let orthant = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert!(fan.cones.iter().all(|c| orthant.contains_cone(&c.cone)));
}

#[test]
fn git_cones_are_members_and_constant_on_chambers() {
    for p in [delpezzo(), k6()] {
        let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
        let fan = enumerate_gitfan(&ocs).unwrap();
        for gc in &fan.cones {
            let w = gc.cone.interior_point();
            let l = git_cone(&ocs, &w).unwrap();
            assert_eq!(l, gc.cone);
            // a second interior point of the same cone
            let w2: IntVec = gc.cone.generators().iter().fold(w.iter().map(|x| x * 3).collect(), |acc: IntVec, g| {
                acc.iter().zip(g).map(|(a, c)| a + c).collect()
            });
            if gc.cone.relint_contains(&w2) {
                assert_eq!(git_cone(&ocs, &w2).unwrap(), gc.cone);
            }
        }
    }
}

#[test]
fn face_order_reverses_semistable_inclusion() {
    for p in [delpezzo(), k6(), toric(&[&[-1], &[1]])] {
        let g = SizeGuard::default();
        let ff = enumerate_ffaces(&p, &g).unwrap();
        let ocs = orbit_cones(&p, &g).unwrap();
        let fan = enumerate_gitfan(&ocs).unwrap();
        let pats: Vec<BTreeSet<FaceSubset>> = fan
            .cones
            .iter()
            .map(|c| semistable_pattern(&p, &ff, &c.cone).into_iter().collect())
            .collect();
        for (i, l1) in fan.cones.iter().enumerate() {
            for (j, l2) in fan.cones.iter().enumerate() {
                let face = l2.cone.is_face_of(&l1.cone);
                assert_eq!(face, pats[i].is_subset(&pats[j]), "cones {i} {j}");
            }
        }
    }
}

#[test]
fn moving_cone_small_cases() {
    assert_eq!(moving_cone(&toric(&[&[2], &[1], &[1], &[1]])), cone(&[&[1]]));
    assert_eq!(moving_cone(&toric(&[&[1, 1], &[1, 1], &[1, 1]])), cone(&[&[1, 1]]));
}

#[test]
fn single_weight_fan() {
    let p = toric(&[&[1]]);
    let ocs = orbit_cones(&p, &SizeGuard::default()).unwrap();
    let fan = enumerate_gitfan(&ocs).unwrap();
    let cones: Vec<Cone> = fan.cones.iter().map(|c| c.cone.clone()).collect();
    assert_eq!(cones, vec![Cone::zero(1), cone(&[&[1]])]);
}
