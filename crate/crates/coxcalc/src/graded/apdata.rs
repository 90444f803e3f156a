use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{cokernel, grading_kernel, smith_normal_form, IntMatrix, IntVec};
use crate::linalg::{combination, is_primitive, nullspace, rref, Rat};
use crate::poly::Polynomial;

use super::presentation::GradedPresentation;

/// Defining data of a complexity one Cox ring `R(A,P)`.
///
/// Variables are ordered `T_01..T_0n_0, ..., T_r1..T_rn_r, S_1..S_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApData {
    pub r: usize,
    pub ns: Vec<usize>,
    pub ls: Vec<Vec<u32>>,
    pub m: usize,
    pub s: usize,
    pub a: Vec<[Rat; 2]>,
    pub d: Vec<IntVec>,
    pub dprime: Vec<IntVec>,
}

pub(crate) fn det2(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[1] - &b[0] * &a[1]
}

impl ApData {
    pub fn n(&self) -> usize {
        self.ns.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.n() + self.m
    }

    /// Column index of `T_ij` (with `j` counted from zero).
    pub fn t_index(&self, i: usize, j: usize) -> usize {
        self.ns[..i].iter().sum::<usize>() + j
    }

    pub fn s_index(&self, k: usize) -> usize {
        self.n() + k
    }

    /// Block and position of each `T` variable.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..=self.r).map(|i| (0..self.ns[i]).map(|j| self.t_index(i, j)).collect()).collect()
    }

    pub fn var_names(&self) -> Vec<String> {
        let wide = self.r >= 10 || self.ns.iter().any(|&n| n >= 10);
        let mut names = Vec::new();
        for i in 0..=self.r {
            for j in 1..=self.ns[i] {
                names.push(if wide { format!("T{i}_{j}") } else { format!("T{i}{j}") });
            }
        }
        for k in 1..=self.m {
            names.push(format!("S{k}"));
        }
        names
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidData(m.to_string()));
        if self.r < 1 {
            return bad("r must be at least 1");
        }
        if self.ns.len() != self.r + 1 || self.ls.len() != self.r + 1 || self.a.len() != self.r + 1 {
            return bad("ns, ls and A need r+1 entries");
        }
        for (i, l) in self.ls.iter().enumerate() {
            if l.len() != self.ns[i] || l.is_empty() {
                return bad("block sizes of ls must match ns and be positive");
            }
            if l.contains(&0) {
                return bad("exponents l_ij must be positive");
            }
        }
        if self.d.len() != self.s || self.dprime.len() != self.s {
            return bad("d and dprime need s rows");
        }
        if self.d.iter().any(|r| r.len() != self.n()) || self.dprime.iter().any(|r| r.len() != self.m) {
            return bad("row lengths of d and dprime must be n and m");
        }
        for i in 0..=self.r {
            for j in i + 1..=self.r {
                if det2(&self.a[i], &self.a[j]).is_zero() {
                    return bad(&format!("points a_{i} and a_{j} are linearly dependent"));
                }
            }
        }
        Ok(())
    }

    /// The block matrix `P` with rows `(-l_0, l_i, 0)` and `(d, d')`.
    pub fn p_matrix(&self) -> IntMatrix {
        let rows = self.r + self.s;
        let mut p = IntMatrix::zeros(rows, self.nvars());
        for i in 1..=self.r {
            for j in 0..self.ns[0] {
                p[(i - 1, self.t_index(0, j))] = -BigInt::from(self.ls[0][j]);
            }
            for j in 0..self.ns[i] {
                p[(i - 1, self.t_index(i, j))] = BigInt::from(self.ls[i][j]);
            }
        }
        for k in 0..self.s {
            for c in 0..self.n() {
                p[(self.r + k, c)] = self.d[k][c].clone();
            }
            for c in 0..self.m {
                p[(self.r + k, self.n() + c)] = self.dprime[k][c].clone();
            }
        }
        p
    }

    /// Checks all requirements on the data.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        let nm = self.nvars();
        if self.s == 0 || self.s + self.r >= nm {
            return Err(Error::InvalidData("need 0 < s < n + m - r".into()));
        }
        let p = self.p_matrix();
        let cols = p.to_cols();
        for (i, c) in cols.iter().enumerate() {
            if !is_primitive(c) {
                return Err(Error::InvalidData(format!("column {i} of P is not primitive")));
            }
            if cols[..i].contains(c) {
                return Err(Error::InvalidData(format!("column {i} of P repeats an earlier one")));
            }
        }
        let cone = Cone::from_rays(p.rows(), &cols)?;
        if cone.lineality_dim() != p.rows() {
            return Err(Error::InvalidData("columns of P do not generate the space as a cone".into()));
        }
        Ok(())
    }

    /// Monomial `T_i^{l_i}` as exponent vector.
    pub fn block_monomial(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.nvars()];
        for j in 0..self.ns[i] {
            e[self.t_index(i, j)] = self.ls[i][j];
        }
        e
    }

    /// `g_{i,j,k} = a_jk T_i^l_i + a_ki T_j^l_j + a_ij T_k^l_k`.
    pub fn trinomial(&self, i: usize, j: usize, k: usize) -> Polynomial {
        let term = |c: Rat, b: usize| Polynomial::monomial(c, self.block_monomial(b));
        term(det2(&self.a[j], &self.a[k]), i)
            .add(&term(det2(&self.a[k], &self.a[i]), j))
            .add(&term(det2(&self.a[i], &self.a[j]), k))
    }

    pub fn relations(&self) -> Vec<Polynomial> {
        (0..self.r.saturating_sub(1)).map(|i| self.trinomial(i, i + 1, i + 2)).collect()
    }

    /// Sincere data: `r >= 2` and no linear terms in the relations.
    pub fn is_sincere(&self) -> bool {
        self.r >= 2
            && self.ls.iter().zip(&self.ns).all(|(l, &n)| l.iter().all(|&x| n as u32 * x > 1))
    }

    pub fn block_gcds(&self) -> Vec<u32> {
        self.ls.iter().map(|l| l.iter().fold(0u32, |g, &x| g.gcd(&x))).collect()
    }

    /// Factoriality criterion: block gcds pairwise coprime.
    pub fn is_ufd(&self) -> bool {
        let g = self.block_gcds();
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].gcd(&g[j]) == 1))
    }

    /// The upper `r x n` part of `P`.
    pub fn p0(&self) -> IntMatrix {
        let p = self.p_matrix();
        let idx: Vec<usize> = (0..self.n()).collect();
        p.select_rows(&(0..self.r).collect::<Vec<_>>()).select_cols(&idx)
    }
}

/// Builds the graded presentation of `R(A,P)`.
pub fn build_rap(ap: &ApData) -> Result<GradedPresentation> {
    ap.validate()?;
    let p = ap.p_matrix();
    let c = cokernel(&p.transpose());
    let degrees = c.projection.to_cols();
    let degrees: Vec<IntVec> = degrees.iter().map(|w| c.group.normalize(w)).collect::<Result<_>>()?;
    let mut pres = GradedPresentation::new(ap.var_names(), c.group, degrees, ap.relations())?;
    pres.k_prime_asserted = true;
    Ok(pres)
}

/// Reads a presentation as `R(A,P)` data: the relations must be spanned by
/// trinomials in pairwise disjoint monomials. Blocks are ordered by their
/// first variable and the free variables follow in their original order.
/// Returns the data and, for each variable of `pres`, its column in `P`.
pub fn recognize_complexity_one(pres: &GradedPresentation) -> Result<(ApData, Vec<usize>)> {
    let unsupported = |m: &str| Err(Error::UnsupportedRing(m.to_string()));
    let nv = pres.nvars();
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    for g in &pres.relations {
        for (e, _) in g.terms() {
            if !monomials.contains(e) {
                monomials.push(e.clone());
            }
        }
    }
    let support = |e: &[u32]| (0..nv).filter(|&i| e[i] > 0).collect::<Vec<_>>();
    monomials.sort_by_key(|e| support(e).first().copied());
    let supports: Vec<Vec<usize>> = monomials.iter().map(|e| support(e)).collect();
    if supports.iter().any(|s| s.is_empty()) {
        return unsupported("relations with constant terms");
    }
    for i in 0..supports.len() {
        for j in i + 1..supports.len() {
            if supports[i].iter().any(|x| supports[j].contains(x)) {
                return unsupported("monomials of the relations share variables");
            }
        }
    }
    let blocks = monomials.len();
    if blocks < 3 || pres.relations.len() + 2 != blocks {
        return unsupported("need r - 1 relations in r + 1 monomials, r at least 2");
    }
    let coeffs: Vec<Vec<Rat>> =
        pres.relations.iter().map(|g| monomials.iter().map(|e| g.coefficient(e)).collect()).collect();
    if rref(&coeffs, blocks).1.len() != pres.relations.len() {
        return unsupported("relations are linearly dependent");
    }
    let null = nullspace(&coeffs, blocks);
    let a: Vec<[Rat; 2]> = (0..blocks).map(|i| [null[0][i].clone(), null[1][i].clone()]).collect();

    let mut order: Vec<usize> = supports.concat();
    let free: Vec<usize> = (0..nv).filter(|i| !order.contains(i)).collect();
    order.extend(free);
    let mut position = vec![0; nv];
    for (k, &i) in order.iter().enumerate() {
        position[i] = k;
    }
    let r = blocks - 1;
    let ns: Vec<usize> = supports.iter().map(|s| s.len()).collect();
    let ls: Vec<Vec<u32>> = monomials.iter().zip(&supports).map(|(e, s)| s.iter().map(|&i| e[i]).collect()).collect();
    let m = nv - ns.iter().sum::<usize>();

    // complete the rows (-l_0, l_i, 0) to a basis of the kernel of the grading
    let q = pres.degree_matrix().select_cols(&order);
    let basis = grading_kernel(&q, &pres.group)?;
    let mut upper = ApData { r, ns, ls, m, s: 0, a, d: Vec::new(), dprime: Vec::new() };
    let l_rows = upper.p_matrix().to_rows();
    let mut x = Vec::new();
    for row in &l_rows {
        let c = combination(&basis, row).ok_or_else(|| Error::Inconsistent("relation not homogeneous".into()))?;
        if c.iter().any(|t| !t.is_integer()) {
            return Err(Error::Inconsistent("exponent rows outside the kernel lattice".into()));
        }
        x.push(c.iter().map(|t| t.to_integer()).collect::<IntVec>());
    }
    let k = basis.len();
    let snf = smith_normal_form(&IntMatrix::from_rows(&x, k)?);
    if snf.invariant_factors().iter().any(|f| !f.is_one()) || snf.rank() != r {
        return unsupported("exponent rows do not extend to a Gale dual");
    }
    // rows r.. of v^-1 complete the rows of x to a unimodular matrix
    let aug: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rat> = snf.v.row(i).iter().map(|t| Rat::from_integer(t.clone())).collect();
            row.extend((0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let (inv, _) = rref(&aug, 2 * k);
    let s = k - r;
    let n = upper.n();
    for inv_row in &inv[r..k] {
        let coords: Vec<BigInt> = inv_row[k..].iter().map(|t| t.to_integer()).collect();
        let row: IntVec = (0..nv).map(|c| coords.iter().zip(&basis).map(|(y, b)| y * &b[c]).sum()).collect();
        upper.d.push(row[..n].to_vec());
        upper.dprime.push(row[n..].to_vec());
    }
    upper.s = s;
    upper.validate()?;
    Ok((upper, position))
}

/// Relations of the complexity one Cox ring for points `a_i` of the
/// projective line and exponent blocks `l_i`; `m` extra free variables.
pub fn cox_ring_complexity_one(points: &[[Rat; 2]], ls: &[Vec<u32>], m: usize) -> Result<(Vec<String>, Vec<Polynomial>)> {
    if points.len() != ls.len() || points.len() < 2 {
        return Err(Error::InvalidData("need one exponent block per point, at least two points".into()));
    }
    let ap = ApData {
        r: points.len() - 1,
        ns: ls.iter().map(|l| l.len()).collect(),
        ls: ls.to_vec(),
        m,
        s: 0,
        a: points.to_vec(),
        d: Vec::new(),
        dprime: Vec::new(),
    };
    ap.check_shape()?;
    Ok((ap.var_names(), ap.relations()))
}

/// Numerator of `b_1 - 1/(b_2 - 1/(... - 1/b_k))` in lowest terms.
pub fn continued_fraction_numerator(labels: &[i64]) -> BigInt {
    let mut x: Option<Rat> = None;
    for &b in labels.iter().rev() {
        let bb = Rat::from_integer(BigInt::from(b));
        x = Some(match x {
            None => bb,
            Some(t) if t.is_zero() => return BigInt::zero(),
            Some(t) => bb - t.recip(),
        });
    }
    x.map_or_else(BigInt::one, |t| t.numer().clone())
}

/// Isotropy orders `l_j` along an arm: `l_1 = 1` and `l_j` is the numerator
/// of the continued fraction of the first `j - 1` labels.
pub fn ow_isotropy_orders(labels: &[i64]) -> Vec<BigInt> {
    (0..labels.len()).map(|j| continued_fraction_numerator(&labels[..j])).collect()
}
