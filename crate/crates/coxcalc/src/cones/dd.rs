//! Double description method on integer data.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{IntMatrix, IntVec};
use crate::linalg::{dot, primitive};

/// Generators of `{x : a.x >= 0 for a in ineqs, b.x = 0 for b in eqs}`:
/// a basis of the lineality space and the extreme rays modulo it.
pub(crate) struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

struct Ray {
    v: IntVec,
    tight: FixedBitSet,
}

fn combine(sa: &BigInt, a: &[BigInt], sb: &BigInt, b: &[BigInt]) -> IntVec {
    let v: IntVec = a.iter().zip(b).map(|(x, y)| sa * x - sb * y).collect();
    primitive(&v)
}

pub(crate) fn double_description(n: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Generators {
    let constraints: Vec<(&IntVec, bool)> =
        eqs.iter().map(|e| (e, true)).chain(ineqs.iter().map(|a| (a, false))).collect();
    let total = constraints.len();
    let mut lin: Vec<IntVec> = IntMatrix::identity(n).to_rows();
    let mut rays: Vec<Ray> = Vec::new();

    for (c, (a, is_eq)) in constraints.into_iter().enumerate() {
        debug_assert_eq!(a.len(), n);
        if a.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.tight.insert(c);
            }
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(p);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s0 = -s0;
            }
            for l in lin.iter_mut() {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = combine(&s0, l, &s, &l0);
                }
            }
            for r in rays.iter_mut() {
                let s = dot(a, &r.v);
                if !s.is_zero() {
                    r.v = combine(&s0, &r.v, &s, &l0);
                }
                r.tight.insert(c);
            }
            if !is_eq {
                let mut tight = FixedBitSet::with_capacity(total);
                tight.insert_range(0..c);
                rays.push(Ray { v: l0, tight });
            }
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[q].tight);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.tight));
                if blocked {
                    continue;
                }
                let v = combine(&vals[p], &rays[q].v, &vals[q], &rays[p].v);
                common.insert(c);
                next.push(Ray { v, tight: common });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                r.tight.insert(c);
                next.push(r);
            } else if vals[i].is_positive() && !is_eq {
                next.push(r);
            }
        }
        rays = next;
    }
    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Generators { lineality: lin, rays: out }
}
