use num_bigint::BigInt;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{AbelianGroup, IntMatrix, IntVec};
use crate::poly::{Monomial, Polynomial};

use super::shape::MonomialSystem;

/// Polynomial ring `K[T_1..T_r]` graded by a finitely generated abelian group,
/// together with homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub vars: Vec<String>,
    pub group: AbelianGroup,
    pub degrees: Vec<IntVec>,
    pub relations: Vec<Polynomial>,
    /// Set when the caller vouches that the variables are pairwise
    /// nonassociated K-prime generators.
    pub k_prime_asserted: bool,
}

impl GradedPresentation {
    pub fn new(
        vars: Vec<String>,
        group: AbelianGroup,
        degrees: Vec<IntVec>,
        relations: Vec<Polynomial>,
    ) -> Result<Self> {
        group.validate()?;
        if degrees.len() != vars.len() {
            return Err(Error::DimensionMismatch { expected: vars.len(), got: degrees.len() });
        }
        let degrees = degrees.iter().map(|w| group.normalize(w)).collect::<Result<Vec<_>>>()?;
        let pres = GradedPresentation { vars, group, degrees, relations, k_prime_asserted: false };
        for (j, g) in pres.relations.iter().enumerate() {
            if g.nvars() != pres.vars.len() {
                return Err(Error::DimensionMismatch { expected: pres.vars.len(), got: g.nvars() });
            }
            if g.is_zero() || !pres.is_homogeneous(g)? {
                return Err(Error::NotHomogeneous(j));
            }
        }
        Ok(pres)
    }

    /// Polynomial ring with the given grading and no relations.
    pub fn toric(group: AbelianGroup, degrees: Vec<IntVec>) -> Result<Self> {
        let vars = (1..=degrees.len()).map(|i| format!("T{i}")).collect();
        Self::new(vars, group, degrees, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn rank(&self) -> usize {
        self.group.rank
    }

    /// Degree matrix with one column per variable.
    pub fn degree_matrix(&self) -> IntMatrix {
        IntMatrix::from_cols(&self.degrees, self.group.len()).expect("degree length")
    }

    pub fn monomial_degree(&self, e: &Monomial) -> Result<IntVec> {
        if e.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: e.len() });
        }
        let mut d = self.group.zero();
        for (w, &k) in self.degrees.iter().zip(e) {
            for (a, b) in d.iter_mut().zip(w) {
                *a += b * BigInt::from(k);
            }
        }
        self.group.normalize(&d)
    }

    /// Degree of the first term; the zero polynomial has degree zero.
    pub fn degree_of(&self, p: &Polynomial) -> Result<IntVec> {
        if !self.is_homogeneous(p)? {
            return Err(Error::NotHomogeneous(0));
        }
        match p.terms().next() {
            Some((e, _)) => self.monomial_degree(e),
            None => Ok(self.group.zero()),
        }
    }

    pub fn is_homogeneous(&self, p: &Polynomial) -> Result<bool> {
        let mut deg: Option<IntVec> = None;
        for (e, _) in p.terms() {
            let d = self.monomial_degree(e)?;
            match &deg {
                None => deg = Some(d),
                Some(d0) if *d0 != d => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    pub fn relation_degrees(&self) -> Vec<IntVec> {
        self.relations.iter().map(|g| self.degree_of(g).expect("checked on construction")).collect()
    }

    /// Free parts of the degrees, i.e. their images in `K_Q`.
    pub fn weights(&self) -> Vec<IntVec> {
        self.degrees.iter().map(|w| w[..self.group.rank].to_vec()).collect()
    }

    pub fn free_part(&self, w: &[BigInt]) -> IntVec {
        w[..self.group.rank].to_vec()
    }

    /// Cone in `K_Q` generated by the degrees of the listed variables.
    pub fn projected_cone(&self, vars: &[usize]) -> Cone {
        let w = self.weights();
        let g: Vec<IntVec> = vars.iter().map(|&i| w[i].clone()).collect();
        Cone::from_rays(self.group.rank, &g).expect("weight length")
    }

    pub fn weight_cone(&self) -> Cone {
        self.projected_cone(&(0..self.nvars()).collect::<Vec<_>>())
    }

    /// For each variable, the degrees of all others generate `K`.
    pub fn is_almost_free(&self) -> bool {
        (0..self.nvars()).all(|i| {
            let others: Vec<IntVec> =
                (0..self.nvars()).filter(|&j| j != i).map(|j| self.degrees[j].clone()).collect();
            self.group.generates(&others).unwrap_or(false)
        })
    }

    /// Krull dimension of the ring minus the rank of `K`, valid for complete
    /// intersections.
    pub fn variety_dimension(&self) -> isize {
        self.nvars() as isize - self.relations.len() as isize - self.group.rank as isize
    }

    /// Structure of the relations as linear combinations of monomials with
    /// disjoint supports.
    pub fn monomial_system(&self) -> Result<MonomialSystem> {
        MonomialSystem::from_relations(self.nvars(), &self.relations)
    }

    pub fn relation_display(&self) -> Vec<String> {
        self.relations.iter().map(|g| g.display_with(&self.vars).to_string()).collect()
    }
}
