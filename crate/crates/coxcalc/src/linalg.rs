//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::IntVec;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn qdot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVec {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_all(v).is_one()
}

/// Positive multiple of a rational vector that is a primitive integer vector.
pub fn primitive_from_rat(v: &[Rat]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

/// Rank of a family of integer vectors, by fraction-free elimination.
pub fn int_rank(rows: &[IntVec]) -> usize {
    let mut a: Vec<IntVec> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return 0;
    }
    let n = a[0].len();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            let row = a[r].clone();
            for (ai, rj) in a[i].iter_mut().zip(&row) {
                *ai = &*ai * &x - rj * &y;
            }
            a[i] = primitive(&a[i]);
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Basis of `{x : a x = 0}` over the rationals, where `a` has rows `rows`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (e, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -e[i][f].clone();
            }
            v
        })
        .collect()
}

/// Integer nullspace generators (primitive), not necessarily a lattice basis.
pub fn int_nullspace(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let q: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(r)).collect();
    nullspace(&q, ncols).iter().map(|v| primitive_from_rat(v)).collect()
}

/// Some solution of `a x = b`, if one exists.
pub fn solve(rows: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let (e, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = e[i][ncols].clone();
    }
    Some(x)
}

/// Expresses `target` as a rational combination of `gens`, if possible.
pub fn combination(gens: &[IntVec], target: &[BigInt]) -> Option<Vec<Rat>> {
    let n = target.len();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| gens.iter().map(|g| Rat::from_integer(g[i].clone())).collect())
        .collect();
    solve(&rows, &to_rat(target), gens.len())
}

/// Canonical basis of the rational span of integer vectors: reduced echelon
/// rows scaled to primitive integer vectors.
pub fn canonical_span(vectors: &[IntVec], n: usize) -> Vec<IntVec> {
    let q: Vec<Vec<Rat>> = vectors.iter().map(|r| to_rat(r)).collect();
    let (e, _) = rref(&q, n);
    e.iter().map(|r| primitive_from_rat(r)).collect()
}

/// Orthogonal projection of `v` onto the orthogonal complement of the span of
/// `basis`.
pub fn project_away(v: &[Rat], basis: &[IntVec]) -> Vec<Rat> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let b: Vec<Vec<Rat>> = basis.iter().map(|r| to_rat(r)).collect();
    let gram: Vec<Vec<Rat>> = (0..k).map(|i| (0..k).map(|j| qdot(&b[i], &b[j])).collect()).collect();
    let rhs: Vec<Rat> = b.iter().map(|bi| qdot(bi, v)).collect();
    let c = solve(&gram, &rhs, k).expect("gram matrix of a basis is invertible");
    let mut out = v.to_vec();
    for (ci, bi) in c.iter().zip(&b) {
        for (o, x) in out.iter_mut().zip(bi) {
            *o -= ci * x;
        }
    }
    out
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
