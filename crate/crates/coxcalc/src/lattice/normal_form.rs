//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, IntVec};

/// Result of [`smith_normal_form`]: `u * a * v == s` with `u`, `v` unimodular
/// and `s` diagonal with nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        (0..self.s.rows().min(self.s.cols()))
            .take_while(|&i| !self.s[(i, i)].is_zero())
            .count()
    }

    /// Nonzero diagonal entries, including ones.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

fn min_abs_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if s[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_nonzero(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder sits in row or column t; make it the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !s[(i, t)].is_zero() && s[(i, t)].abs() < s[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !s[(t, j)].is_zero() && s[(t, j)].abs() < s[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, s, v }
}

/// Row-style Hermite normal form: `u * a == h`, `u` unimodular, `h` in row
/// echelon form with positive pivots, entries above a pivot reduced into
/// `[0, pivot)`, and zero rows at the bottom.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Hermite {
    /// The nonzero rows of `h`.
    pub fn basis(&self) -> Vec<IntVec> {
        (0..self.rank).map(|i| self.h.row(i)).collect()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> Hermite {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in row..m {
                if !h[(i, col)].is_zero()
                    && best.is_none_or(|b| h[(i, col)].abs() < h[(b, col)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let mut done = true;
            for i in row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = -h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &q);
            u.add_row_multiple(i, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    Hermite { h, u, rank: row, pivots }
}

/// Hermite-reduced basis of the lattice spanned by `gens` in `Z^dim`.
pub fn lattice_basis(gens: &[IntVec], dim: usize) -> Vec<IntVec> {
    if gens.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(gens, dim).expect("generator length");
    hermite_normal_form(&m).basis()
}

/// Hermite-reduced basis of `{x in Z^cols : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVec> {
    let n = a.cols();
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let gens: Vec<IntVec> = (r..n).map(|j| snf.v.col(j)).collect();
    lattice_basis(&gens, n)
}
