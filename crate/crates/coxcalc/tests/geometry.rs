mod common;

use common::{a2_surface, b, delpezzo, e6_surface, presentation, toric};
use coxcalc::bunched::BunchedRing;
use coxcalc::cones::Cone;
use coxcalc::error::Error;
use coxcalc::gitfan::moving_cone;
use coxcalc::geometry::*;
use coxcalc::graded::{build_rap, GradedPresentation};
use coxcalc::guard::SizeGuard;
use coxcalc::lattice::{ivec, AbelianGroup, IntVec};
use coxcalc::linalg::{rat, Rat};
use coxcalc::orbit::FaceSubset;

fn cone(rays: &[&[i64]]) -> Cone {
    Cone::from_i64(rays[0].len(), rays).unwrap()
}

fn ring(p: &GradedPresentation) -> BunchedRing {
    let w = moving_cone(p).interior_point();
    BunchedRing::from_weight(p, &w, &SizeGuard::default()).unwrap()
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(b(n), b(d))
}

#[test]
fn delpezzo_invariants() {
    let br = ring(&delpezzo());
    assert_eq!(dimension(&br), 2);
    let strata = strata(&br).unwrap();
    let bad: Vec<&StratumInfo> = strata.iter().filter(|s| !s.factorial).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].face, FaceSubset::from_indices(&[1, 4]));
    assert_eq!(bad[0].local_class_group, AbelianGroup::new(0, vec![b(3)]).unwrap());
    assert!(strata.iter().all(|s| s.q_factorial));
    let pic = picard(&br).unwrap();
    assert_eq!(pic.index, Some(b(3)));
    let cones = divisor_cones(&br);
    let tau = cone(&[&[-1, 1], &[1, 2]]);
    assert_eq!(cones.effective, cone(&[&[1, 1], &[-1, 0]]));
    assert_eq!(cones.movable, tau);
    assert_eq!(cones.semiample, tau);
    assert!(cones.ample_nonempty);
    assert!(cones.is_ample(&ivec(&[0, 1])));
    assert!(!cones.is_ample(&ivec(&[-1, 1])));
    let kx = canonical_class(&br.pres);
    assert_eq!(kx, ivec(&[0, -3]));
    assert_eq!(intersection_number(&br, None, &[kx.clone(), kx.clone()]).unwrap(), rat(6));
    let fg = fano_gorenstein(&br).unwrap();
    assert!(fg.fano && fg.gorenstein);
    // -K = w2 + w5 lies in Pic
    assert!(pic.contains(&ivec(&[0, 3])));
    assert!(!pic.contains(&ivec(&[0, 1])));
}

#[test]
fn delpezzo_local_class_group_needs_relevant_face() {
    let br = ring(&delpezzo());
    let err = local_class_group(&br, FaceSubset::from_indices(&[2])).unwrap_err();
    assert!(matches!(err, Error::InvalidData(_)));
}

/// With `A = w4`, `B = w3`: `D2.D4 = 0` and `D1.D5 = 0` since those faces are
/// not relevant, and `K^2 = 9 B^2 = 6`. This fixes `A^2 = -1/3`,
/// `A.B = 1/3`, `B^2 = 2/3`.
#[test]
fn delpezzo_intersection_matrix() {
    let br = ring(&delpezzo());
    let mut form = IntersectionForm::new(&br, None).unwrap();
    assert_eq!(form.divisors(&[1, 3]).unwrap(), rat(0));
    assert_eq!(form.divisors(&[0, 4]).unwrap(), rat(0));
    assert_eq!(form.divisors(&[1, 4]).unwrap(), rat(2));
    assert_eq!(form.divisors(&[0, 3]).unwrap(), q(2, 3));
    assert_eq!(form.divisors(&[2, 2]).unwrap(), q(2, 3));
    assert_eq!(form.divisors(&[3, 3]).unwrap(), q(-1, 3));
    assert_eq!(form.divisors(&[2, 3]).unwrap(), q(1, 3));
}

#[test]
fn complexity_one_canonical_class_agrees() {
    for ap in [a2_surface(), e6_surface()] {
        let pres = build_rap(&ap).unwrap();
        let k1 = canonical_class_complexity_one(&ap, &pres).unwrap();
        assert_eq!(k1, canonical_class(&pres));
    }
    let pres = build_rap(&e6_surface()).unwrap();
    // degrees (3,1,2,3), relation degree 6
    assert_eq!(canonical_class(&pres), ivec(&[-3]));
}

#[test]
fn e6_cubic_picard_and_singularity() {
    let ap = e6_surface();
    let pres = build_rap(&ap).unwrap();
    assert_eq!(pres.weights(), vec![ivec(&[3]), ivec(&[1]), ivec(&[2]), ivec(&[3])]);
    let br = BunchedRing::from_weight(&pres, &[b(1)], &SizeGuard::default()).unwrap();
    assert_eq!(picard(&br).unwrap().index, Some(b(3)));
    let lc = local_class_group(&br, FaceSubset::from_indices(&[0])).unwrap();
    assert_eq!(lc, AbelianGroup::new(0, vec![b(3)]).unwrap());
    let rk1 = picard_data_rank_one(&br).unwrap();
    assert_eq!(rk1.picard_index, b(3));
    assert_eq!(rk1.anticanonical_degree, rat(3));
    let kx = canonical_class(&pres);
    assert_eq!(intersection_number(&br, None, &[kx.clone(), kx]).unwrap(), rat(3));
}

/// Weighted projective spaces: the class of degree one has top power
/// `1 / prod q_i`.
#[test]
fn weighted_projective_spaces() {
    let cases: &[&[i64]] = &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 3], &[1, 1, 1, 1], &[1, 1, 2, 3], &[2, 3, 5]];
    for qs in cases {
        let degs: Vec<Vec<i64>> = qs.iter().map(|&x| vec![x]).collect();
        let refs: Vec<&[i64]> = degs.iter().map(|v| v.as_slice()).collect();
        let p = toric(&refs);
        let br = BunchedRing::from_weight(&p, &[b(1)], &SizeGuard::default()).unwrap();
        let n = qs.len() - 1;
        let got = intersection_number(&br, None, &vec![ivec(&[1]); n]).unwrap();
        let prod: i64 = qs.iter().product();
        assert_eq!(got, q(1, prod), "P{qs:?}");
        let rk1 = picard_data_rank_one(&br).unwrap();
        let sum: i64 = qs.iter().sum();
        assert_eq!(rk1.anticanonical_degree, q(sum.pow(n as u32), prod));
    }
}

/// Hirzebruch surfaces F_a: smooth complete toric surfaces with four rays,
/// so `K^2 = 12 - 4 = 8`, and the fibre class squares to zero.
#[test]
fn hirzebruch_surfaces() {
    for a in 0..4 {
        let p = toric(&[&[1, 0], &[0, 1], &[1, 0], &[a, 1]]);
        let br = ring(&p);
        let strata = strata(&br).unwrap();
        assert!(strata.iter().all(|s| s.factorial));
        assert_eq!(picard(&br).unwrap().index, Some(b(1)));
        let kx = canonical_class(&p);
        let mut form = IntersectionForm::new(&br, None).unwrap();
        assert_eq!(form.number(&[kx.clone(), kx]).unwrap(), rat(8), "a = {a}");
        assert_eq!(form.divisors(&[0, 0]).unwrap(), rat(0));
        assert_eq!(form.divisors(&[0, 1]).unwrap(), rat(1));
        // the negative section
        assert_eq!(form.divisors(&[1, 1]).unwrap(), rat(-a));
        assert_eq!(fano_gorenstein(&br).unwrap().fano, a <= 1);
    }
}

#[test]
fn torsion_is_rejected_for_intersections() {
    let k = AbelianGroup::new(1, vec![b(2)]).unwrap();
    let p = presentation(k, &[&[1, 1], &[1, 1], &[1, 0], &[1, 0]], &[]);
    let br = BunchedRing::from_weight(&p, &[b(1)], &SizeGuard::default()).unwrap();
    assert!(matches!(IntersectionForm::new(&br, None), Err(Error::TorsionUnsupported)));
}

#[test]
fn arity_is_checked() {
    let br = ring(&delpezzo());
    let err = intersection_number(&br, None, &[ivec(&[0, 1])]).unwrap_err();
    assert_eq!(err, Error::WrongArity { expected: 2, got: 1 });
}

fn fano_rows() -> Vec<(&'static str, [i64; 5], i64)> {
    vec![
        ("T1*T2^5 + T3^3 + T4^2", [1, 1, 2, 3, 1], 8),
        ("T1*T2*T3^4 + T4^3 + T5^2", [1, 1, 1, 2, 3], 8),
        ("T1*T2^2*T3^3 + T4^3 + T5^2", [1, 1, 1, 2, 3], 8),
        ("T1*T2 + T3*T4 + T5^2", [1, 1, 1, 1, 1], 54),
        ("T1*T2^2 + T3*T4^2 + T5^3", [1, 1, 1, 1, 1], 24),
        ("T1*T2^3 + T3*T4^3 + T5^4", [1, 1, 1, 1, 1], 4),
        ("T1*T2^3 + T3*T4^3 + T5^2", [1, 1, 1, 1, 2], 16),
        ("T1*T2^5 + T3*T4^5 + T5^2", [1, 1, 1, 1, 3], 2),
        ("T1*T2^5 + T3^3*T4^3 + T5^2", [1, 1, 1, 1, 3], 2),
    ]
}

#[test]
fn locally_factorial_fano_threefolds() {
    for (rel, w, expected) in fano_rows() {
        let degs: Vec<[i64; 1]> = w.iter().map(|&x| [x]).collect();
        let refs: Vec<&[i64]> = degs.iter().map(|v| v.as_slice()).collect();
        let p = presentation(AbelianGroup::free(1), &refs, &[rel]);
        let br = BunchedRing::from_weight(&p, &[b(1)], &SizeGuard::default()).unwrap();
        assert_eq!(dimension(&br), 3);
        assert!(strata(&br).unwrap().iter().all(|s| s.factorial), "{rel}");
        let rk1 = picard_data_rank_one(&br).unwrap();
        assert!(rk1.fano);
        assert_eq!(rk1.picard_index, b(1));
        assert_eq!(rk1.anticanonical_degree, rat(expected), "{rel}");
        // the general intersection machinery gives the same number
        let anti: IntVec = canonical_class(&p).iter().map(|x| -x).collect();
        assert_eq!(intersection_number(&br, None, &[anti.clone(), anti.clone(), anti]).unwrap(), rat(expected));
        assert!(fano_gorenstein(&br).unwrap().fano);
    }
}

#[test]
fn q_factorial_iff_full_dimensional_members() {
    for p in [delpezzo(), toric(&[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]), build_rap(&a2_surface()).unwrap()] {
        let br = ring(&p);
        let all_full = br.members().iter().all(|c| c.is_full_dim());
        let all_qf = strata(&br).unwrap().iter().all(|s| s.q_factorial);
        assert_eq!(all_full, all_qf);
    }
}

#[test]
fn divisor_cone_chain() {
    let inputs = vec![
        delpezzo(),
        build_rap(&a2_surface()).unwrap(),
        build_rap(&e6_surface()).unwrap(),
        toric(&[&[1, 0], &[0, 1], &[1, 0], &[2, 1]]),
        toric(&[&[1], &[1], &[2]]),
    ];
    for p in inputs {
        let br = ring(&p);
        let c = divisor_cones(&br);
        assert!(c.movable.contains_cone(&c.semiample));
        assert!(c.effective.contains_cone(&c.movable));
        if c.ample_nonempty {
            assert!(c.is_ample(&c.semiample.interior_point()));
        }
    }
}

#[test]
fn chamber_point_is_validated() {
    let br = ring(&delpezzo());
    // a point on a weight wall
    assert!(IntersectionForm::new(&br, Some(&ivec(&[0, 1]))).is_err());
    let mut f = IntersectionForm::new(&br, Some(&ivec(&[0, 5]).iter().zip(&ivec(&[1, 0])).map(|(x, y)| x + y).collect::<Vec<_>>())).unwrap();
    let kx = canonical_class(&br.pres);
    assert_eq!(f.number(&[kx.clone(), kx]).unwrap(), rat(6));
}
