#![allow(dead_code)]

pub mod oracles;

use coxcalc::graded::{ApData, GradedPresentation};
use coxcalc::lattice::{ivec, AbelianGroup, IntMatrix, IntVec};
use coxcalc::linalg::{rat, Rat};
use coxcalc::poly::Polynomial;
use num_bigint::BigInt;

pub fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn presentation(group: AbelianGroup, degrees: &[&[i64]], relations: &[&str]) -> GradedPresentation {
    let vars = names("T", degrees.len());
    let rels = relations.iter().map(|s| Polynomial::parse(s, &vars).unwrap()).collect();
    GradedPresentation::new(vars, group, degrees.iter().map(|w| ivec(w)).collect(), rels).unwrap()
}

/// Singular cubic-like del Pezzo surface with an A2 point, graded by Z^2.
pub fn delpezzo() -> GradedPresentation {
    presentation(
        AbelianGroup::free(2),
        &[&[1, 1], &[-1, 1], &[0, 1], &[-1, 0], &[1, 2]],
        &["T1*T2 + T3^2 + T4*T5"],
    )
}

pub fn toric(degrees: &[&[i64]]) -> GradedPresentation {
    let rank = degrees[0].len();
    presentation(AbelianGroup::free(rank), degrees, &[])
}

/// The six weights of the three-torus on K^6.
pub fn k6() -> GradedPresentation {
    toric(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
}

pub fn standard_points() -> Vec<[Rat; 2]> {
    vec![[rat(-1), rat(0)], [rat(1), rat(-1)], [rat(0), rat(1)]]
}

pub fn surface(ns: Vec<usize>, ls: Vec<Vec<u32>>, d: &[i64]) -> ApData {
    ApData { r: 2, ns, ls, m: 0, s: 1, a: standard_points(), d: vec![ivec(d)], dprime: vec![vec![]] }
}

/// `T01 T02 + T11^2 + T21 T22`, the del Pezzo surface with an A2 point.
pub fn a2_surface() -> ApData {
    surface(vec![2, 1, 2], vec![vec![1, 1], vec![2], vec![1, 1]], &[-1, 0, 1, -1, 0])
}

/// The E6 singular cubic surface `T01 T02^3 + T11^3 + T21^2`.
pub fn e6_surface() -> ApData {
    surface(vec![2, 1, 1], vec![vec![1, 3], vec![3], vec![2]], &[-1, -2, 1, 1])
}

/// Column permutation `perm` applied to a matrix: column `j` of the result
/// is column `perm[j]` of `m`.
pub fn permute_cols(m: &IntMatrix, perm: &[usize]) -> IntMatrix {
    m.select_cols(perm)
}

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

pub fn vecs(rows: &[&[i64]]) -> Vec<IntVec> {
    rows.iter().map(|r| ivec(r)).collect()
}
