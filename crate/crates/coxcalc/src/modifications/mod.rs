//! Toric ambient modifications and resolution of K*-surfaces.

mod kstar;
mod ow;

pub use kstar::{ade_match, kstar_fan, kstar_resolve, self_intersections, sort_arms, ExceptionalData, Resolution, ResolutionStep};
pub use ow::{ow_to_ap, ow_to_cox, OwGraph};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cones::Fan;
use crate::error::{Error, Result};
use crate::graded::GradedPresentation;
use crate::lattice::{cokernel, AbelianGroup, IntMatrix, IntVec};
use crate::linalg::gcd_all;
use crate::poly::{Monomial, Polynomial};

/// Stellar subdivision at `v_inf = sum a_i v_i` over the center `v_i, i in center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModificationSpec {
    pub center: Vec<usize>,
    pub coefficients: Vec<BigInt>,
}

impl ModificationSpec {
    pub fn new(center: Vec<usize>, coefficients: Vec<BigInt>) -> Result<Self> {
        if center.len() != coefficients.len() || center.is_empty() {
            return Err(Error::Malformed("center and coefficients must be nonempty and of equal length".into()));
        }
        if coefficients.iter().any(|a| !a.is_positive()) {
            return Err(Error::Malformed("coefficients must be positive".into()));
        }
        let mut c = center.clone();
        c.sort();
        c.dedup();
        if c.len() != center.len() {
            return Err(Error::Malformed("center indices repeat".into()));
        }
        Ok(ModificationSpec { center, coefficients })
    }

    fn check(&self, nvars: usize) -> Result<()> {
        match self.center.iter().find(|&&i| i >= nvars) {
            Some(&i) => Err(Error::DimensionMismatch { expected: nvars, got: i + 1 }),
            None => Ok(()),
        }
    }

    pub fn v_infinity(&self, p: &IntMatrix) -> IntVec {
        let mut v = vec![BigInt::zero(); p.rows()];
        for (&i, a) in self.center.iter().zip(&self.coefficients) {
            for (x, y) in v.iter_mut().zip(p.col(i)) {
                *x += a * y;
            }
        }
        v
    }

    /// Index of the subdivision: the gcd of the entries of `v_inf`.
    pub fn m_infinity(&self, p: &IntMatrix) -> BigInt {
        gcd_all(&self.v_infinity(p))
    }

    /// Degree of a monomial in the grading `deg T_i = a_i` on the center.
    fn weight(&self, e: &Monomial) -> BigInt {
        self.center.iter().zip(&self.coefficients).map(|(&i, a)| a * BigInt::from(e[i])).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    NotAdmissible(String),
    /// Condition (ii) could not be decided by the available tests.
    Unverified(String),
}

#[derive(Clone, Debug)]
pub struct AdmissibilityCertificate {
    pub verdict: Verdict,
    /// Lowest degree `k_0` of the terms of `f_0` and the part of that degree.
    pub k0: BigInt,
    pub g_k0: Polynomial,
    /// The toric orbit of the center meets the total coordinate space.
    pub orbit_meets: bool,
}

/// Admissibility of `f0` for the modification, with `k1` the grading group
/// after the modification.
pub fn admissible(f0: &Polynomial, spec: &ModificationSpec, k1: &AbelianGroup) -> Result<AdmissibilityCertificate> {
    spec.check(f0.nvars())?;
    if f0.is_zero() {
        return Err(Error::Malformed("zero relation".into()));
    }
    let k0 = f0.terms().map(|(e, _)| spec.weight(e)).min().expect("nonzero");
    let g_k0 = Polynomial::from_terms(
        f0.nvars(),
        f0.terms().filter(|(e, _)| spec.weight(e) == k0).map(|(e, c)| (c.clone(), e.clone())),
    )?;
    let restricted = f0.terms().filter(|(e, _)| spec.center.iter().all(|&i| e[i] == 0)).count();
    let orbit_meets = restricted != 1;
    let verdict = if !orbit_meets {
        Verdict::NotAdmissible("the toric orbit of the center misses the total coordinate space".into())
    } else {
        prime_test(&g_k0, k1)
    };
    Ok(AdmissibilityCertificate { verdict, k0, g_k0, orbit_meets })
}

/// Exact primality tests for the lowest part: binomials and trinomials in
/// pairwise disjoint sets of variables over a torsion free grading group.
fn prime_test(g: &Polynomial, k1: &AbelianGroup) -> Verdict {
    if g.support().len() < 2 {
        return Verdict::NotAdmissible("lowest part involves fewer than two variables".into());
    }
    let terms: Vec<&Monomial> = g.terms().map(|(e, _)| e).collect();
    if terms.len() == 1 {
        return Verdict::NotAdmissible("lowest part is a monomial".into());
    }
    if !k1.is_torsion_free() {
        return Verdict::Unverified("grading group has torsion".into());
    }
    let disjoint = (0..terms.len())
        .all(|a| (a + 1..terms.len()).all(|b| terms[a].iter().zip(terms[b]).all(|(x, y)| *x == 0 || *y == 0)));
    if !disjoint {
        return Verdict::Unverified("terms share variables".into());
    }
    match terms.len() {
        2 => {
            let gcd = terms.iter().flat_map(|e| e.iter()).fold(0u32, |a, &x| a.gcd(&x));
            if gcd == 1 {
                Verdict::Admissible
            } else {
                Verdict::NotAdmissible(format!("binomial is a polynomial in {gcd}-th powers, hence reducible"))
            }
        }
        3 if terms.iter().all(|e| e.iter().any(|&x| x > 0)) => Verdict::Admissible,
        _ => Verdict::Unverified(format!("no primality test for {} terms", terms.len())),
    }
}

/// `f1 = f0(T_inf^a_1 T_1, ..., T_inf^a_d T_d, ...) / T_inf^k0` with
/// `T_inf^(l m_inf)` replaced by `T_inf^l`. The new variable comes last.
pub fn transform_relation(f0: &Polynomial, spec: &ModificationSpec, m_inf: &BigInt) -> Result<Polynomial> {
    spec.check(f0.nvars())?;
    if !m_inf.is_positive() {
        return Err(Error::Malformed("index must be positive".into()));
    }
    let k0 = f0.terms().map(|(e, _)| spec.weight(e)).min().unwrap_or_default();
    let n = f0.nvars();
    let mut out = Vec::new();
    for (e, c) in f0.terms() {
        let shift = spec.weight(e) - &k0;
        let (q, r) = shift.div_rem(m_inf);
        if !r.is_zero() {
            return Err(Error::NotAdmissible(format!("power {shift} of the new variable is not a multiple of {m_inf}")));
        }
        let mut e1 = e.clone();
        e1.push(q.to_u32().ok_or_else(|| Error::NotAdmissible("exponent overflow".into()))?);
        out.push((c.clone(), e1));
    }
    Polynomial::from_terms(n + 1, out)
}

/// Result of a modification: the new ray matrix, presentation and fan.
#[derive(Clone, Debug)]
pub struct Modification {
    pub p: IntMatrix,
    pub presentation: GradedPresentation,
    pub fan: Fan,
    pub ray: IntVec,
    pub m_infinity: BigInt,
    pub certificate: Option<AdmissibilityCertificate>,
    /// False when the ray was already present and nothing changed.
    pub inserted: bool,
}

/// Modifies the ambient toric variety of a hypersurface Cox ring by a
/// stellar subdivision. `p` holds the rays of `fan` as columns, in variable
/// order. The new variable `new_var` is appended. Unverified admissibility
/// is accepted only with `assume_admissible`.
pub fn modify(
    pres: &GradedPresentation,
    p: &IntMatrix,
    fan: &Fan,
    spec: &ModificationSpec,
    assume_admissible: bool,
    new_var: &str,
) -> Result<Modification> {
    let n = pres.nvars();
    if pres.relations.len() != 1 {
        return Err(Error::UnsupportedRing("modifications need exactly one relation".into()));
    }
    if p.cols() != n || fan.rays.len() != n || fan.rays != p.to_cols() {
        return Err(Error::Inconsistent("fan rays must be the columns of P in variable order".into()));
    }
    spec.check(n)?;
    let mut center = spec.center.clone();
    center.sort();
    if !fan.contains_cone_indices(&center) {
        return Err(Error::CenterNotInFan);
    }
    let v = spec.v_infinity(p);
    let m_inf = gcd_all(&v);
    let ray: IntVec = v.iter().map(|x| x / &m_inf).collect();
    if p.to_cols().contains(&ray) {
        return Ok(Modification {
            p: p.clone(),
            presentation: pres.clone(),
            fan: fan.clone(),
            ray,
            m_infinity: m_inf,
            certificate: None,
            inserted: false,
        });
    }
    let mut cols = p.to_cols();
    cols.push(ray.clone());
    let p1 = IntMatrix::from_cols(&cols, p.rows())?;
    let c = cokernel(&p1.transpose());
    let f0 = &pres.relations[0];
    let cert = admissible(f0, spec, &c.group)?;
    match &cert.verdict {
        Verdict::Admissible => {}
        Verdict::Unverified(_) if assume_admissible => {}
        Verdict::Unverified(why) | Verdict::NotAdmissible(why) => return Err(Error::NotAdmissible(why.clone())),
    }
    let f1 = transform_relation(f0, spec, &m_inf)?;
    let degrees = c.projection.to_cols();
    let mut vars = pres.vars.clone();
    vars.push(new_var.to_string());
    let mut presentation = GradedPresentation::new(vars, c.group, degrees, vec![f1])?;
    presentation.k_prime_asserted = pres.k_prime_asserted;
    let fan1 = fan.stellar_subdivision(&ray)?;
    Ok(Modification { p: p1, presentation, fan: fan1, ray, m_infinity: m_inf, certificate: Some(cert), inserted: true })
}

/// Undo of [`transform_relation`]: set the last variable to one.
pub fn contract_relation(f1: &Polynomial) -> Result<Polynomial> {
    let n = f1.nvars();
    if n == 0 {
        return Err(Error::Malformed("no variable to contract".into()));
    }
    Ok(f1.map_exponents(n - 1, |e| e[..n - 1].to_vec()))
}
