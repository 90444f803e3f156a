use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref, Rat};
use crate::poly::{Monomial, Polynomial};

/// Maximal number of variables for bitmask based face handling.
pub const MAX_VARS: usize = 63;

/// Relations written as `C * (m_1, ..., m_t)^T` for monomials `m_k` with
/// pairwise disjoint variable supports. This covers toric rings (no
/// relations) and the trinomial relations of complexity one Cox rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSystem {
    pub nvars: usize,
    pub monomials: Vec<Monomial>,
    /// Row `j` holds the coefficients of relation `j`.
    pub coeffs: Vec<Vec<Rat>>,
    supports: Vec<u64>,
}

fn support_mask(e: &Monomial) -> u64 {
    e.iter().enumerate().filter(|(_, &k)| k > 0).fold(0, |m, (i, _)| m | 1 << i)
}

impl MonomialSystem {
    pub fn from_relations(nvars: usize, relations: &[Polynomial]) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::SizeGuardExceeded { what: "variables".into(), size: nvars, limit: MAX_VARS });
        }
        let mut monomials: Vec<Monomial> = Vec::new();
        for g in relations {
            for (e, _) in g.terms() {
                if !monomials.contains(e) {
                    monomials.push(e.clone());
                }
            }
        }
        monomials.sort();
        let supports: Vec<u64> = monomials.iter().map(support_mask).collect();
        for (k, s) in supports.iter().enumerate() {
            if *s == 0 {
                return Err(Error::UnsupportedRing("relation with a constant term".into()));
            }
            for t in &supports[k + 1..] {
                if s & t != 0 {
                    return Err(Error::UnsupportedRing(
                        "relations whose monomials share variables".into(),
                    ));
                }
            }
        }
        let coeffs = relations
            .iter()
            .map(|g| monomials.iter().map(|e| g.coefficient(e)).collect())
            .collect();
        Ok(MonomialSystem { nvars, monomials, coeffs, supports })
    }

    pub fn num_relations(&self) -> usize {
        self.coeffs.len()
    }

    /// Variable support of monomial `k` as a bitmask.
    pub fn support(&self, k: usize) -> u64 {
        self.supports[k]
    }

    /// Whether there is a point of `V(relations)` whose nonzero coordinates
    /// are exactly the variables in `mask`.
    ///
    /// Monomials inside the mask take arbitrary nonzero values and all others
    /// vanish, so such a point exists iff the kernel of the coefficient matrix
    /// contains a vector supported exactly on the inner monomials.
    pub fn is_fface(&self, mask: u64) -> bool {
        let inner: Vec<usize> =
            (0..self.monomials.len()).filter(|&k| self.supports[k] & !mask == 0).collect();
        if inner.is_empty() {
            return true;
        }
        let rows: Vec<Vec<Rat>> =
            self.coeffs.iter().map(|r| inner.iter().map(|&k| r[k].clone()).collect()).collect();
        let ker = nullspace(&rows, inner.len());
        (0..inner.len()).all(|i| ker.iter().any(|v| !v[i].is_zero()))
    }

    /// Whether the affine variety of the relations is smooth at the points
    /// with nonzero coordinates exactly at `mask` (assumed to exist).
    ///
    /// The gradient of monomial `k` does not vanish there iff all its
    /// variables are nonzero or exactly one of them vanishes, with exponent
    /// one. These gradients have disjoint supports, so the Jacobian rank is
    /// the rank of the coefficient columns of those monomials.
    pub fn smooth_at(&self, mask: u64) -> bool {
        let active: Vec<usize> = (0..self.monomials.len())
            .filter(|&k| {
                let zero = self.supports[k] & !mask;
                zero == 0 || (zero.count_ones() == 1 && self.monomials[k][zero.trailing_zeros() as usize] == 1)
            })
            .collect();
        let rows: Vec<Vec<Rat>> =
            self.coeffs.iter().map(|r| active.iter().map(|&k| r[k].clone()).collect()).collect();
        let (e, _) = rref(&rows, active.len());
        e.len() == self.num_relations()
    }
}
