use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, IntVec};
use super::normal_form::{hermite_normal_form, integer_kernel, lattice_basis, smith_normal_form};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_s` with
/// `1 < t_1 | t_2 | ... | t_s`.
///
/// Elements are integer vectors of length `rank + s`: free coordinates first,
/// then one coordinate per torsion factor, reduced into `[0, t_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let g = AbelianGroup { rank, torsion };
        g.validate()?;
        Ok(g)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, t) in self.torsion.iter().enumerate() {
            if *t <= BigInt::one() {
                return Err(Error::NonCanonicalGroup(format!("torsion order {t} must exceed 1")));
            }
            if i > 0 && !t.is_multiple_of(&self.torsion[i - 1]) {
                return Err(Error::NonCanonicalGroup(format!(
                    "{} does not divide {}",
                    self.torsion[i - 1],
                    t
                )));
            }
        }
        Ok(())
    }

    /// Number of coordinates of an element.
    pub fn len(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> IntVec {
        vec![BigInt::zero(); self.len()]
    }

    /// Reduces torsion coordinates into their canonical range.
    pub fn normalize(&self, x: &[BigInt]) -> Result<IntVec> {
        if x.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: x.len() });
        }
        let mut y = x.to_vec();
        for (i, t) in self.torsion.iter().enumerate() {
            y[self.rank + i] = y[self.rank + i].mod_floor(t);
        }
        Ok(y)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.normalize(x)?.iter().all(Zero::is_zero))
    }

    pub fn eq_elements(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        Ok(self.normalize(a)? == self.normalize(b)?)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Result<IntVec> {
        let s: IntVec = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    /// Order of an element, `None` when it is infinite.
    pub fn order(&self, x: &[BigInt]) -> Result<Option<BigInt>> {
        let y = self.normalize(x)?;
        if y[..self.rank].iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let mut ord = BigInt::one();
        for (i, t) in self.torsion.iter().enumerate() {
            let c = &y[self.rank + i];
            let o = t / c.gcd(t);
            ord = ord.lcm(&o);
        }
        Ok(Some(ord))
    }

    /// Columns `t_i e_{rank+i}` generating the relations of the presentation.
    pub fn relation_vectors(&self) -> Vec<IntVec> {
        (0..self.torsion.len())
            .map(|i| {
                let mut v = self.zero();
                v[self.rank + i] = self.torsion[i].clone();
                v
            })
            .collect()
    }

    fn check_elements(&self, xs: &[IntVec]) -> Result<()> {
        for x in xs {
            if x.len() != self.len() {
                return Err(Error::DimensionMismatch { expected: self.len(), got: x.len() });
            }
        }
        Ok(())
    }

    /// Preimage of the subgroup generated by `gens` in the coordinate lattice.
    pub fn subgroup_lattice(&self, gens: &[IntVec]) -> Result<Lattice> {
        self.check_elements(gens)?;
        let mut all = gens.to_vec();
        all.extend(self.relation_vectors());
        Ok(Lattice::from_generators(&all, self.len()))
    }

    /// Index of the subgroup generated by `gens`; `None` when infinite.
    pub fn subgroup_index(&self, gens: &[IntVec]) -> Result<Option<BigInt>> {
        Ok(self.subgroup_lattice(gens)?.index())
    }

    pub fn generates(&self, gens: &[IntVec]) -> Result<bool> {
        Ok(self.subgroup_index(gens)? == Some(BigInt::one()))
    }

    /// Whether `x` lies in the subgroup generated by `gens`.
    pub fn in_subgroup(&self, gens: &[IntVec], x: &[BigInt]) -> Result<bool> {
        if x.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: x.len() });
        }
        Ok(self.subgroup_lattice(gens)?.contains(x))
    }

    /// Quotient by the subgroup generated by `gens`, with the projection map.
    pub fn quotient(&self, gens: &[IntVec]) -> Result<Cokernel> {
        self.check_elements(gens)?;
        let mut all = gens.to_vec();
        all.extend(self.relation_vectors());
        if all.is_empty() {
            return Ok(Cokernel {
                group: self.clone(),
                projection: IntMatrix::identity(self.len()),
            });
        }
        let m = IntMatrix::from_cols(&all, self.len())?;
        Ok(cokernel(&m))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Sublattice of `Z^ambient` given by a Hermite-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<IntVec>,
}

impl Lattice {
    pub fn from_generators(gens: &[IntVec], ambient: usize) -> Self {
        Lattice { ambient, basis: lattice_basis(gens, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        let id = IntMatrix::identity(ambient);
        Lattice { ambient, basis: id.to_rows() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    /// Index in `Z^ambient`, `None` if the lattice is not of full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.basis.len() < self.ambient {
            return None;
        }
        // Hermite form of a full-rank lattice is upper triangular
        let mut d = BigInt::one();
        for (i, row) in self.basis.iter().enumerate() {
            d *= &row[i];
        }
        Some(d.abs())
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        if x.len() != self.ambient {
            return false;
        }
        let mut y = x.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|c| !c.is_zero()).expect("nonzero basis row");
            if y[p].is_zero() {
                continue;
            }
            if !y[p].is_multiple_of(&row[p]) {
                return false;
            }
            let q = &y[p] / &row[p];
            for (a, b) in y.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
        y.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let (a, b) = (&self.basis, &other.basis);
        if a.is_empty() || b.is_empty() {
            return Lattice { ambient: self.ambient, basis: Vec::new() };
        }
        // solve sum x_i a_i = sum y_j b_j
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|c| -c).collect::<IntVec>()));
        let m = IntMatrix::from_cols(&cols, self.ambient).expect("shape");
        let ker = integer_kernel(&m);
        let gens: Vec<IntVec> = ker
            .iter()
            .map(|k| {
                let mut v = vec![BigInt::zero(); self.ambient];
                for (i, ai) in a.iter().enumerate() {
                    for (vj, c) in v.iter_mut().zip(ai) {
                        *vj += &k[i] * c;
                    }
                }
                v
            })
            .collect();
        Lattice::from_generators(&gens, self.ambient)
    }
}

/// Cokernel of an integer matrix acting on column vectors, together with a
/// projection from `Z^rows` onto the group coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: AbelianGroup,
    pub projection: IntMatrix,
}

impl Cokernel {
    pub fn project(&self, x: &[BigInt]) -> IntVec {
        self.group.normalize(&self.projection.mul_vec(x)).expect("projection shape")
    }
}

/// `Z^rows / im(m)` for the map `Z^cols -> Z^rows` given by `m`.
///
/// The free rows of the projection are Hermite reduced so that the result is
/// independent of incidental choices made by the Smith form.
pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let rows = m.rows();
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    for i in 0..r {
        let d = snf.s[(i, i)].clone();
        if d > BigInt::one() {
            let row: IntVec = snf.u.row(i).iter().map(|c| c.mod_floor(&d)).collect();
            torsion_rows.push(row);
            torsion.push(d);
        }
    }
    let free_rows: Vec<IntVec> = (r..rows).map(|i| snf.u.row(i)).collect();
    let free_rows = if free_rows.is_empty() {
        free_rows
    } else {
        let fm = IntMatrix::from_rows(&free_rows, rows).expect("shape");
        hermite_normal_form(&fm).h.to_rows()
    };
    let group = AbelianGroup { rank: free_rows.len(), torsion };
    let mut all = free_rows;
    all.extend(torsion_rows);
    let projection = IntMatrix::from_rows(&all, rows).expect("shape");
    Cokernel { group, projection }
}

/// Lattice of `x in Z^r` with `sum x_i w_i = 0` in `k`, where `w_i` are the
/// columns of `q`.
pub fn grading_kernel(q: &IntMatrix, k: &AbelianGroup) -> Result<Vec<IntVec>> {
    if q.rows() != k.len() {
        return Err(Error::DimensionMismatch { expected: k.len(), got: q.rows() });
    }
    let r = q.cols();
    let mut cols = q.to_cols();
    cols.extend(k.relation_vectors());
    let m = IntMatrix::from_cols(&cols, k.len())?;
    let ker = integer_kernel(&m);
    let proj: Vec<IntVec> = ker.into_iter().map(|v| v[..r].to_vec()).collect();
    Ok(lattice_basis(&proj, r))
}

/// Gale dual of a degree matrix: a matrix whose rows form a Hermite-reduced
/// basis of the kernel of `q : Z^r -> k`.
pub fn gale_dual(q: &IntMatrix, k: &AbelianGroup) -> Result<IntMatrix> {
    let basis = grading_kernel(q, k)?;
    IntMatrix::from_rows(&basis, q.cols())
}

/// Whether two degree maps `Z^r -> K` agree up to an automorphism of `K`,
/// i.e. whether they have the same kernel and both are onto.
pub fn same_grading(
    q1: &IntMatrix,
    k1: &AbelianGroup,
    q2: &IntMatrix,
    k2: &AbelianGroup,
) -> Result<bool> {
    if q1.cols() != q2.cols() || k1 != k2 {
        return Ok(false);
    }
    if !k1.generates(&q1.to_cols())? || !k2.generates(&q2.to_cols())? {
        return Ok(false);
    }
    Ok(grading_kernel(q1, k1)? == grading_kernel(q2, k2)?)
}

/// Homomorphism of finitely generated abelian groups given on coordinates.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: AbelianGroup, target: AbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(Error::DimensionMismatch { expected: source.len(), got: matrix.cols() });
        }
        for (i, rel) in source.relation_vectors().iter().enumerate() {
            if !target.is_zero(&matrix.mul_vec(rel))? {
                return Err(Error::IllDefinedHom(format!(
                    "torsion generator {} does not map to zero",
                    source.rank + i
                )));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<IntVec> {
        if x.len() != self.source.len() {
            return Err(Error::DimensionMismatch { expected: self.source.len(), got: x.len() });
        }
        self.target.normalize(&self.matrix.mul_vec(x))
    }

    pub fn is_surjective(&self) -> Result<bool> {
        self.target.generates(&self.matrix.to_cols())
    }
}
