//! Random instances and the property checks run on them. Shared by the
//! property suite and the acceptance run.

use std::collections::BTreeSet;

use coxcalc::bunched::BunchedRing;
use coxcalc::cones::Cone;
use coxcalc::geometry::IntersectionForm;
use coxcalc::graded::{build_rap, cox_ring_complexity_one, ApData, GradedPresentation, MonomialSystem};
use coxcalc::guard::SizeGuard;
use coxcalc::lattice::{cokernel, gale_dual, ivec, same_grading, smith_normal_form, AbelianGroup, IntMatrix, IntVec};
use coxcalc::linalg::{rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{b, delpezzo, standard_points, toric};

pub type Check = Result<(), TestCaseError>;

pub fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows).prop_map(move |m| {
        let rows: Vec<IntVec> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_rows(&rows, cols).unwrap()
    })
}

pub fn sized_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

pub fn degree_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3, 2usize..=6).prop_flat_map(|(r, c)| matrix(r, c, 4))
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.det().abs() == BigInt::one()
}

pub fn smith_form_reconstructs(a: &IntMatrix) -> Check {
    let snf = smith_normal_form(a);
    prop_assert!(is_unimodular(&snf.u) && is_unimodular(&snf.v));
    prop_assert_eq!(&(&snf.u * a) * &snf.v, snf.s.clone());
    for i in 0..snf.s.rows() {
        for j in 0..snf.s.cols() {
            if i != j {
                prop_assert!(snf.s[(i, j)].is_zero());
            }
        }
    }
    let f = snf.invariant_factors();
    prop_assert_eq!(f.len(), a.rank());
    for w in f.windows(2) {
        prop_assert!(w[0].is_positive() && w[1].is_multiple_of(&w[0]));
    }
    Ok(())
}

pub fn gale_duality_roundtrip(q: &IntMatrix) -> Check {
    if q.cols() <= q.rows() {
        return Ok(());
    }
    // the grading by the image of q: degrees generate a subgroup of Z^r;
    // regrade by the cokernel of the Gale dual and compare kernels
    let k = AbelianGroup::free(q.rows());
    let p = gale_dual(q, &k).unwrap();
    prop_assert!((q * &p.transpose()).is_zero());
    prop_assert_eq!(p.rows(), q.cols() - q.rank());
    let c = cokernel(&p.transpose());
    // the projection onto the cokernel is onto and kills exactly im(P^T)
    prop_assert!(c.group.generates(&c.projection.to_cols()).unwrap());
    prop_assert!(same_grading(&c.projection, &c.group, &c.projection, &c.group).unwrap());
    let p2 = gale_dual(&c.projection, &c.group).unwrap();
    let lat = |m: &IntMatrix| coxcalc::lattice::Lattice::from_generators(&m.to_rows(), m.cols());
    prop_assert!(lat(&p2).contains_lattice(&lat(&p)) && lat(&p).contains_lattice(&lat(&p2)));
    // kernel of q is saturated, so P^T has torsion-free cokernel
    prop_assert!(c.group.is_torsion_free());
    if k.generates(&q.to_cols()).unwrap() {
        prop_assert!(same_grading(&c.projection, &c.group, q, &k).unwrap());
    }
    Ok(())
}

pub fn ray_set(dim: usize) -> impl Strategy<Value = (usize, Vec<IntVec>)> {
    (1usize..=dim).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=6)
            .prop_map(move |g| (n, g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()))
    })
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cone_v_and_h_descriptions_agree(n: usize, gens: &[IntVec]) -> Check {
    let c = Cone::from_rays(n, gens).unwrap();
    for g in gens {
        prop_assert!(c.contains(g));
    }
    for f in c.facets() {
        prop_assert!(gens.iter().all(|g| dot(f, g) >= BigInt::zero()));
        // a facet is tight on generators spanning a hyperplane of the cone
        let tight: Vec<IntVec> = c.generators().into_iter().filter(|g| dot(f, g).is_zero()).collect();
        let span = if tight.is_empty() { 0 } else { IntMatrix::from_cols(&tight, n).unwrap().rank() };
        prop_assert_eq!(span + 1, c.dim());
    }
    for e in c.equations() {
        prop_assert!(gens.iter().all(|g| dot(e, g).is_zero()));
    }
    let h = Cone::from_inequalities(n, c.facets(), c.equations()).unwrap();
    prop_assert_eq!(&h, &c);
    prop_assert_eq!(&c.dual().dual(), &c);
    prop_assert_eq!(c.dim() + c.dual().lineality_dim(), n);
    let w = c.interior_point();
    prop_assert!(c.relint_contains(&w));
    Ok(())
}

/// F-faces of a complexity one ring by the parameterization of the solution
/// set: the vector of block monomials `T_i^{l_i}` runs through the plane of
/// values `det(a_i, (s,t))`; a support is realized iff its vanishing blocks
/// are exactly the zero coordinates of such a value.
pub fn parameter_oracle(points: &[[Rat; 2]], ls: &[Vec<u32>], m: usize) -> BTreeSet<u64> {
    let blocks: Vec<Vec<usize>> = {
        let mut k = 0;
        ls.iter()
            .map(|l| {
                let v = (k..k + l.len()).collect();
                k += l.len();
                v
            })
            .collect()
    };
    let n: usize = ls.iter().map(|l| l.len()).sum::<usize>() + m;
    let mut candidates: Vec<[Rat; 2]> = points.to_vec();
    candidates.push([rat(0), rat(0)]);
    for s in -3..=3 {
        for t in -3..=3 {
            candidates.push([rat(s), rat(t)]);
        }
    }
    let patterns: BTreeSet<Vec<bool>> = candidates
        .iter()
        .map(|st| points.iter().map(|a| (&a[0] * &st[1] - &a[1] * &st[0]).is_zero()).collect())
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << n {
        let vanishing: Vec<bool> = blocks.iter().map(|bl| bl.iter().any(|&i| mask >> i & 1 == 0)).collect();
        if patterns.contains(&vanishing) {
            out.insert(mask);
        }
    }
    out
}

pub fn complexity_one_shape() -> impl Strategy<Value = (Vec<Vec<u32>>, usize)> {
    (2usize..=4)
        .prop_flat_map(|blocks| prop::collection::vec(prop::collection::vec(1u32..=3, 1..=2), blocks))
        .prop_flat_map(|ls| {
            let n: usize = ls.iter().map(|l| l.len()).sum();
            let max_m = 7usize.saturating_sub(n);
            (Just(ls), 0..=max_m)
        })
        .prop_filter("at most seven variables", |(ls, m)| ls.iter().map(|l| l.len()).sum::<usize>() + m <= 7)
}

pub fn points(count: usize) -> Vec<[Rat; 2]> {
    let mut p = standard_points();
    let mut k = 1;
    while p.len() < count {
        p.push([rat(1), rat(k)]);
        k += 1;
    }
    p.truncate(count);
    p
}

pub fn p0_torsion_free(ls: &[Vec<u32>]) -> bool {
    let r = ls.len() - 1;
    let n: usize = ls.iter().map(|l| l.len()).sum();
    let mut p0 = IntMatrix::zeros(r, n);
    let offs: Vec<usize> = ls
        .iter()
        .scan(0, |k, l| {
            let o = *k;
            *k += l.len();
            Some(o)
        })
        .collect();
    for i in 1..=r {
        for (j, &l) in ls[0].iter().enumerate() {
            p0[(i - 1, j)] = -BigInt::from(l);
        }
        for (j, &l) in ls[i].iter().enumerate() {
            p0[(i - 1, offs[i] + j)] = BigInt::from(l);
        }
    }
    cokernel(&p0).group.is_torsion_free()
}

/// Random valid defining data with one row `(d, d')`.
pub fn ap_data() -> impl Strategy<Value = ApData> {
    complexity_one_shape()
        .prop_filter("at least two relations' worth of variables", |(ls, m)| {
            ls.iter().map(|l| l.len()).sum::<usize>() + m > ls.len()
        })
        .prop_flat_map(|(ls, m)| {
            let n: usize = ls.iter().map(|l| l.len()).sum();
            (Just(ls), Just(m), prop::collection::vec(-3i64..=3, n), prop::collection::vec(-2i64..=2, m))
        })
        .prop_map(|(ls, m, d, dp)| ApData {
            r: ls.len() - 1,
            ns: ls.iter().map(|l| l.len()).collect(),
            a: points(ls.len()),
            ls,
            m,
            s: 1,
            d: vec![d.into_iter().map(BigInt::from).collect()],
            dprime: vec![dp.into_iter().map(BigInt::from).collect()],
        })
        .prop_filter("valid data", |ap| ap.validate().is_ok())
}

pub fn complexity_one_ffaces_match_parameterization(ls: &[Vec<u32>], m: usize) -> Check {
    let pts = points(ls.len());
    let (vars, rels) = cox_ring_complexity_one(&pts, ls, m).unwrap();
    let sys = MonomialSystem::from_relations(vars.len(), &rels).unwrap();
    let got: BTreeSet<u64> = (0u64..1 << vars.len()).filter(|&mask| sys.is_fface(mask)).collect();
    prop_assert_eq!(got, parameter_oracle(&pts, ls, m));
    Ok(())
}

pub fn factoriality_is_torsion_freeness_of_p0(ap: &ApData) -> Check {
    prop_assert_eq!(ap.is_ufd(), p0_torsion_free(&ap.ls));
    Ok(())
}

pub fn complexity_one_rings_are_homogeneous(ap: &ApData) -> Check {
    let pres = build_rap(ap).unwrap();
    for g in &pres.relations {
        prop_assert!(pres.is_homogeneous(g).unwrap());
    }
    // all relations share one degree, the degree of any block monomial
    let degs = pres.relation_degrees();
    prop_assert!(degs.windows(2).all(|w| pres.group.eq_elements(&w[0], &w[1]).unwrap()));
    // the grading has P as a Gale dual
    let c = cokernel(&ap.p_matrix().transpose());
    prop_assert!(same_grading(&pres.degree_matrix(), &pres.group, &c.projection, &c.group).unwrap());
    prop_assert_eq!(pres.nvars(), ap.nvars());
    Ok(())
}

pub fn hirzebruch(a: i64) -> GradedPresentation {
    toric(&[&[1, 0], &[0, 1], &[1, 0], &[a, 1]])
}

pub fn ring_at(p: &GradedPresentation, w: &[i64]) -> BunchedRing {
    let w: IntVec = w.iter().map(|&x| b(x)).collect();
    BunchedRing::from_weight(p, &w, &SizeGuard::default()).unwrap()
}

fn class(c: &[i64]) -> IntVec {
    c.iter().map(|&x| b(x)).collect()
}

fn add(a: &[i64], c: &[i64]) -> Vec<i64> {
    a.iter().zip(c).map(|(x, y)| x + y).collect()
}

/// Three classes and a scalar on a Hirzebruch surface `F_a`.
pub fn form_input() -> impl Strategy<Value = (i64, Vec<i64>, Vec<i64>, Vec<i64>, i64)> {
    (
        0i64..=3,
        prop::collection::vec(-4i64..=4, 2),
        prop::collection::vec(-4i64..=4, 2),
        prop::collection::vec(-4i64..=4, 2),
        -3i64..=3,
    )
}

pub fn intersection_form_is_symmetric_and_bilinear(a: i64, x: &[i64], y: &[i64], z: &[i64], k: i64) -> Check {
    for br in [ring_at(&hirzebruch(a), &[a + 1, 1]), ring_at(&delpezzo(), &[0, 1])] {
        let mut form = IntersectionForm::new(&br, None).unwrap();
        let mut f = |u: &[i64], v: &[i64]| form.number(&[class(u), class(v)]).unwrap();
        prop_assert_eq!(f(x, y), f(y, x));
        prop_assert_eq!(f(&add(x, z), y), f(x, y) + f(z, y));
        let kx: Vec<i64> = x.iter().map(|v| v * k).collect();
        prop_assert_eq!(f(&kx, y), f(x, y) * Rat::from_integer(b(k)));
    }
    Ok(())
}

/// GKZ oracle: chambers are the cells of the arrangement of planes spanned
/// by pairs of weights. Cells are identified by sign vectors of grid points;
/// each cell's cone is computed by intersecting all `cone(w_I)` containing
/// its sample point, with every subset `I` enumerated explicitly.
pub fn arrangement_chambers(weights: &[IntVec], grid: i64) -> BTreeSet<Cone> {
    let n = weights.len();
    let cross = |a: &IntVec, c: &IntVec| -> IntVec {
        vec![&a[1] * &c[2] - &a[2] * &c[1], &a[2] * &c[0] - &a[0] * &c[2], &a[0] * &c[1] - &a[1] * &c[0]]
    };
    let mut normals: Vec<IntVec> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = cross(&weights[i], &weights[j]);
            if c.iter().any(|x| *x != b(0)) {
                normals.push(c);
            }
        }
    }
    let subset_cones: Vec<Cone> = (1..1u32 << n)
        .map(|m| {
            let g: Vec<IntVec> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| weights[i].clone()).collect();
            Cone::from_rays(3, &g).unwrap()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for x in 1..=grid {
        for y in 1..=grid {
            for z in 1..=grid {
                let w = ivec(&[x, y, z]);
                let signs: Vec<i8> = normals
                    .iter()
                    .map(|h| {
                        let d: num_bigint::BigInt = h.iter().zip(&w).map(|(a, c)| a * c).sum();
                        match d.sign() {
                            num_bigint::Sign::Minus => -1,
                            num_bigint::Sign::NoSign => 0,
                            num_bigint::Sign::Plus => 1,
                        }
                    })
                    .collect();
                if signs.contains(&0) || !seen.insert(signs) {
                    continue;
                }
                let containing: Vec<&Cone> = subset_cones.iter().filter(|c| c.contains(&w)).collect();
                out.insert(Cone::intersect_all(3, containing));
            }
        }
    }
    out
}
