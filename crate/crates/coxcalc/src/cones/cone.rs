use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd::double_description;
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVec};
use crate::linalg::{canonical_span, dot, primitive_from_rat, project_away, to_rat, Rat};

/// Convex rational polyhedral cone in `Q^n`, stored in a canonical form:
///
/// * `lineality`: reduced echelon basis of the lineality space,
/// * `rays`: primitive extreme rays projected onto the orthogonal complement
///   of the lineality space, sorted,
/// * `equations`: reduced echelon basis of the orthogonal complement of the
///   linear span,
/// * `facets`: primitive inner facet normals projected into the linear span,
///   sorted.
///
/// Two cones are equal as sets exactly when their canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    equations: Vec<IntVec>,
    facets: Vec<IntVec>,
}

fn check_len(vs: &[IntVec], n: usize) -> Result<()> {
    for v in vs {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    Ok(())
}

fn project_all(vs: &[IntVec], away: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> =
        vs.iter().map(|v| primitive_from_rat(&project_away(&to_rat(v), away))).collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    /// The cone `{0}` in `Q^n`.
    pub fn zero(n: usize) -> Self {
        Cone {
            ambient: n,
            lineality: Vec::new(),
            rays: Vec::new(),
            equations: IntMatrix::identity(n).to_rows(),
            facets: Vec::new(),
        }
    }

    /// The whole space `Q^n`.
    pub fn full(n: usize) -> Self {
        Cone {
            ambient: n,
            lineality: IntMatrix::identity(n).to_rows(),
            rays: Vec::new(),
            equations: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// Cone generated by the given vectors.
    pub fn from_rays(n: usize, gens: &[IntVec]) -> Result<Self> {
        check_len(gens, n)?;
        let gens: Vec<IntVec> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        if gens.is_empty() {
            return Ok(Cone::zero(n));
        }
        let dual = double_description(n, &gens, &[]);
        Ok(Self::from_h_irredundant(n, dual.rays, dual.lineality))
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(n: usize, gens: &[&[i64]]) -> Result<Self> {
        let g: Vec<IntVec> = gens.iter().map(|v| crate::lattice::ivec(v)).collect();
        Self::from_rays(n, &g)
    }

    /// Cone `{x : a.x >= 0 for a in ineqs, b.x = 0 for b in eqs}`.
    pub fn from_inequalities(n: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Result<Self> {
        check_len(ineqs, n)?;
        check_len(eqs, n)?;
        let g = double_description(n, ineqs, eqs);
        let mut gens = g.rays;
        for l in &g.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        Self::from_rays(n, &gens)
    }

    // `facets` must be exactly one normal per facet, `eqs` spanning the
    // orthogonal complement of the linear span.
    fn from_h_irredundant(n: usize, facets: Vec<IntVec>, eqs: Vec<IntVec>) -> Self {
        let g = double_description(n, &facets, &eqs);
        let lineality = canonical_span(&g.lineality, n);
        let rays = project_all(&g.rays, &lineality);
        let equations = canonical_span(&eqs, n);
        let facets = project_all(&facets, &equations);
        Cone { ambient: n, lineality, rays, equations, facets }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// Rays together with both signs of the lineality basis.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient
            && self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        self.contains(&primitive_from_rat(v))
    }

    /// Membership in the relative interior.
    pub fn relint_contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient
            && self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    pub fn relint_contains_rat(&self, v: &[Rat]) -> bool {
        self.relint_contains(&primitive_from_rat(v))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// A point of the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> IntVec {
        let mut p = vec![BigInt::zero(); self.ambient];
        for r in &self.rays {
            for (a, b) in p.iter_mut().zip(r) {
                *a += b;
            }
        }
        p
    }

    /// Whether the relative interiors of the two cones meet.
    pub fn relints_meet(&self, other: &Cone) -> bool {
        let i = self.intersect(other);
        let p = i.interior_point();
        self.relint_contains(&p) && other.relint_contains(&p)
    }

    /// Whether the relative interior of `self` lies in that of `other`.
    pub fn relint_within(&self, other: &Cone) -> bool {
        other.contains_cone(self) && other.relint_contains(&self.interior_point())
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient);
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient, &ineqs, &eqs).expect("lengths agree")
    }

    pub fn intersect_all<'a>(n: usize, cones: impl IntoIterator<Item = &'a Cone>) -> Cone {
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        let mut any = false;
        for c in cones {
            any = true;
            ineqs.extend(c.facets.iter().cloned());
            eqs.extend(c.equations.iter().cloned());
        }
        if !any {
            return Cone::full(n);
        }
        Cone::from_inequalities(n, &ineqs, &eqs).expect("lengths agree")
    }

    /// Dual cone `{u : u.v >= 0 for all v in self}`.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(e.iter().map(|x| -x).collect());
        }
        Cone::from_rays(self.ambient, &gens).expect("lengths agree")
    }

    fn face_from_raysets(&self, set: &BTreeSet<usize>) -> Cone {
        let mut gens: Vec<IntVec> = set.iter().map(|&i| self.rays[i].clone()).collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        Cone::from_rays(self.ambient, &gens).expect("lengths agree")
    }

    /// All faces, sorted by dimension and then canonically.
    pub fn faces(&self) -> Vec<Cone> {
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(all.clone());
        queue.push_back(all);
        while let Some(s) = queue.pop_front() {
            for f in &self.facets {
                let t: BTreeSet<usize> =
                    s.iter().copied().filter(|&i| dot(f, &self.rays[i]).is_zero()).collect();
                if t.len() < s.len() && seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut faces: Vec<Cone> = seen.iter().map(|s| self.face_from_raysets(s)).collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        faces
    }

    /// Smallest face containing the given cone (which must lie in `self`).
    pub fn face_containing(&self, inner: &Cone) -> Cone {
        let gens = inner.generators();
        let tight: Vec<IntVec> = self
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| dot(f, g).is_zero()))
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        Cone::from_inequalities(self.ambient, &self.facets, &eqs).expect("lengths agree")
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.ambient == other.ambient
            && other.contains_cone(self)
            && other.face_containing(self) == *self
    }

    /// Whether the cone is generated by linearly independent rays.
    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[IntVec]| {
            vs.iter()
                .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "cone[{}", show(&self.rays))?;
        if !self.lineality.is_empty() {
            write!(f, " | lin {}", show(&self.lineality))?;
        }
        write!(f, "]")
    }
}

/// Primitive generator of the ray through an integer vector.
pub fn ray_primitive(v: &[BigInt]) -> IntVec {
    crate::linalg::primitive(v)
}
