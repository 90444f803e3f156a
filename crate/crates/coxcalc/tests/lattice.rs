use coxcalc::lattice::*;
use num_bigint::BigInt;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn smith_form_of_small_matrix() {
    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_normal_form(&a);
    assert_eq!(&(&s.u * &a) * &s.v, s.s);
    assert!(s.u.is_unimodular() && s.v.is_unimodular());
    assert_eq!(s.invariant_factors(), vec![b(2), b(6), b(12)]);
}

#[test]
fn cokernel_of_weighted_projective_gale_dual() {
    // rows of P for the E6 cubic surface
    let p = IntMatrix::from_i64(&[&[-1, -3, 3, 0], &[-1, -3, 0, 2], &[-1, -2, 1, 1]]);
    let c = cokernel(&p.transpose());
    assert_eq!(c.group, AbelianGroup::free(1));
    assert_eq!(c.projection.row(0), ivec(&[3, 1, 2, 3]));
}

#[test]
fn del_pezzo_gale_dual_roundtrip() {
    let q = IntMatrix::from_i64(&[&[1, -1, 0, -1, 1], &[1, 1, 1, 0, 2]]);
    let k = AbelianGroup::free(2);
    let p = gale_dual(&q, &k).unwrap();
    assert_eq!(p.rows(), 3);
    assert!((&q * &p.transpose()).is_zero());
    let c = cokernel(&p.transpose());
    assert_eq!(c.group, k);
    assert!(same_grading(&c.projection, &c.group, &q, &k).unwrap());
}

#[test]
fn torsion_subgroup_index() {
    let k = AbelianGroup::new(1, vec![b(2), b(2)]).unwrap();
    assert_eq!(k.subgroup_index(&[ivec(&[1, 0, 0])]).unwrap(), Some(b(4)));
    assert_eq!(k.subgroup_index(&[ivec(&[0, 1, 0])]).unwrap(), None);
    assert!(k.generates(&[ivec(&[1, 0, 0]), ivec(&[1, 1, 0]), ivec(&[1, 0, 1])]).unwrap());
    assert_eq!(k.order(&ivec(&[0, 1, 1])).unwrap(), Some(b(2)));
    let z6 = AbelianGroup::new(0, vec![b(6)]).unwrap();
    assert_eq!(z6.order(&ivec(&[4])).unwrap(), Some(b(3)));
    assert!(AbelianGroup::new(0, vec![b(2), b(3)]).is_err());
}
