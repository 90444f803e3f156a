//! Invariants of the variety defined by a bunched ring.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bunched::{facet_images, BunchedRing};
use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::gitfan::generic_point;
use crate::graded::{ApData, GradedPresentation};
use crate::lattice::{AbelianGroup, IntMatrix, IntVec, Lattice};
use crate::linalg::{combination, dot, int_nullspace, primitive, solve, Rat};
use crate::orbit::FaceSubset;

/// Dimension of the variety, `dim R - rank K` for a complete intersection.
pub fn dimension(br: &BunchedRing) -> isize {
    br.pres.variety_dimension()
}

fn check_relevant(br: &BunchedRing, g: FaceSubset) -> Result<()> {
    if br.bunch.rlv.contains(&g) {
        Ok(())
    } else {
        Err(Error::InvalidData(format!("face {g:?} is not relevant")))
    }
}

fn face_degrees(pres: &GradedPresentation, g: FaceSubset) -> Vec<IntVec> {
    g.indices().iter().map(|&i| pres.degrees[i].clone()).collect()
}

/// Local class group `K / Q(lin(gamma0) ∩ E)` along the stratum of `gamma0`.
pub fn local_class_group(br: &BunchedRing, g: FaceSubset) -> Result<AbelianGroup> {
    check_relevant(br, g)?;
    Ok(br.pres.group.quotient(&face_degrees(&br.pres, g))?.group)
}

/// Picard group as the preimage lattice of `∩ Q(lin(gamma0) ∩ E)` over the
/// covering collection, in the coordinates of `K`.
#[derive(Clone, Debug)]
pub struct PicardGroup {
    pub lattice: Lattice,
    /// `[Cl(X) : Pic(X)]`, `None` when infinite.
    pub index: Option<BigInt>,
}

impl PicardGroup {
    pub fn contains(&self, class: &[BigInt]) -> bool {
        self.lattice.contains(class)
    }
}

pub fn picard(br: &BunchedRing) -> Result<PicardGroup> {
    let k = &br.pres.group;
    let mut lat = Lattice::full(k.len());
    for &g in &br.bunch.cov {
        lat = lat.intersect(&k.subgroup_lattice(&face_degrees(&br.pres, g))?);
    }
    let index = lat.index();
    Ok(PicardGroup { lattice: lat, index })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumInfo {
    pub face: FaceSubset,
    pub local_class_group: AbelianGroup,
    pub factorial: bool,
    pub q_factorial: bool,
    /// The total coordinate space is smooth along the stratum.
    pub total_space_smooth: bool,
}

pub fn stratum_singularity(br: &BunchedRing, g: FaceSubset) -> Result<StratumInfo> {
    let local = local_class_group(br, g)?;
    let sys = br.pres.monomial_system()?;
    Ok(StratumInfo {
        face: g,
        factorial: local.is_trivial(),
        q_factorial: br.pres.projected_cone(&g.indices()).is_full_dim(),
        total_space_smooth: sys.smooth_at(g.0),
        local_class_group: local,
    })
}

/// One entry per relevant face.
pub fn strata(br: &BunchedRing) -> Result<Vec<StratumInfo>> {
    br.bunch.rlv.iter().map(|&g| stratum_singularity(br, g)).collect()
}

#[derive(Clone, Debug)]
pub struct DivisorCones {
    pub effective: Cone,
    pub movable: Cone,
    pub semiample: Cone,
    /// The ample cone is the relative interior of `semiample` when this flag
    /// is set, and empty otherwise.
    pub ample_nonempty: bool,
}

impl DivisorCones {
    pub fn is_ample(&self, w: &[BigInt]) -> bool {
        self.ample_nonempty && self.semiample.relint_contains(w)
    }
}

pub fn divisor_cones(br: &BunchedRing) -> DivisorCones {
    let k = br.pres.rank();
    let effective = br.pres.weight_cone();
    let facets = facet_images(&br.pres);
    let movable = Cone::intersect_all(k, facets.iter());
    let members = br.members();
    let semiample = Cone::intersect_all(k, members.iter().copied());
    let p = semiample.interior_point();
    let ample_nonempty = members.iter().all(|c| c.relint_contains(&p));
    DivisorCones { effective, movable, semiample, ample_nonempty }
}

/// `K_X = sum of relation degrees - sum of generator degrees`.
pub fn canonical_class(pres: &GradedPresentation) -> IntVec {
    let k = &pres.group;
    let mut c = k.zero();
    for u in pres.relation_degrees() {
        c = k.add(&c, &u).expect("degree length");
    }
    for w in &pres.degrees {
        let neg: IntVec = w.iter().map(|x| -x).collect();
        c = k.add(&c, &neg).expect("degree length");
    }
    c
}

/// Canonical class from the complexity one formula
/// `(r-1) deg(T_i^{l_i}) - sum of all generator degrees`, checked against
/// [`canonical_class`].
pub fn canonical_class_complexity_one(ap: &ApData, pres: &GradedPresentation) -> Result<IntVec> {
    let k = &pres.group;
    let mut c = k.zero();
    if ap.r >= 2 {
        let block = pres.monomial_degree(&ap.block_monomial(0))?;
        for _ in 0..ap.r - 1 {
            c = k.add(&c, &block)?;
        }
    }
    for w in &pres.degrees {
        let neg: IntVec = w.iter().map(|x| -x).collect();
        c = k.add(&c, &neg)?;
    }
    if !k.eq_elements(&c, &canonical_class(pres))? {
        return Err(Error::Inconsistent("the two canonical class formulas disagree".into()));
    }
    Ok(c)
}

/// Hyperplanes spanned by the weights; toric chambers are the cells they cut
/// out of the weight cone.
fn weight_walls(weights: &[IntVec], k: usize) -> Vec<IntVec> {
    if k < 2 {
        return Vec::new();
    }
    let mut out: Vec<IntVec> = Vec::new();
    let r = weights.len();
    let mut idx: Vec<usize> = (0..k - 1).collect();
    if k - 1 > r {
        return out;
    }
    loop {
        let rows: Vec<IntVec> = idx.iter().map(|&i| weights[i].clone()).collect();
        let ns = int_nullspace(&rows, k);
        if ns.len() == 1 {
            let mut h = primitive(&ns[0]);
            if let Some(p) = h.iter().position(|x| !x.is_zero()) {
                if h[p].is_negative() {
                    h = h.iter().map(|x| -x).collect();
                }
            }
            if !out.contains(&h) {
                out.push(h);
            }
        }
        // next combination
        let mut i = k - 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < r - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k - 1 {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Toric intersection numbers of the divisors `D_i` on the toric variety of
/// the chamber containing the generic point `p`.
pub struct ToricIntersection {
    weights: Vec<IntVec>,
    kernel: Vec<IntVec>,
    p: IntVec,
    k: usize,
    memo: HashMap<Vec<usize>, Rat>,
}

impl ToricIntersection {
    pub fn new(weights: Vec<IntVec>, p: IntVec) -> Self {
        let k = p.len();
        let r = weights.len();
        let q: Vec<IntVec> = (0..k).map(|a| weights.iter().map(|w| w[a].clone()).collect()).collect();
        let kernel = int_nullspace(&q, r);
        ToricIntersection { weights, kernel, p, k, memo: HashMap::new() }
    }

    fn complement_cone_contains_p(&self, supp: &[usize]) -> Option<BigInt> {
        let comp: Vec<IntVec> =
            (0..self.weights.len()).filter(|i| !supp.contains(i)).map(|i| self.weights[i].clone()).collect();
        if comp.len() != self.k {
            return None;
        }
        let m = IntMatrix::from_cols(&comp, self.k).expect("weight length");
        let det = m.det();
        if det.is_zero() {
            return None;
        }
        let c = Cone::from_rays(self.k, &comp).expect("weight length");
        c.contains(&self.p).then(|| det.abs())
    }

    /// Product of `D_{i_1} ... D_{i_t}` with `t = r - k`.
    pub fn product(&mut self, idx: &[usize]) -> Result<Rat> {
        let mut key = idx.to_vec();
        key.sort();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut supp = key.clone();
        supp.dedup();
        let r = self.weights.len();
        let v = if supp.len() == key.len() {
            match self.complement_cone_contains_p(&supp) {
                Some(det) => Rat::new(BigInt::one(), det),
                None => Rat::zero(),
            }
        } else {
            // the support must span a cone of the fan, i.e. lie in one
            // maximal cone
            if !self.support_is_cone(&supp) {
                Rat::zero()
            } else {
                let rep = *key.iter().find(|&&i| key.iter().filter(|&&j| j == i).count() > 1).expect("repeat");
                // y in ker Q with y_rep = 1 and y_j = 0 on the rest of the support
                let rows: Vec<Vec<Rat>> = supp
                    .iter()
                    .map(|&j| self.kernel.iter().map(|b| Rat::from(b[j].clone())).collect())
                    .collect();
                let rhs: Vec<Rat> = supp.iter().map(|&j| if j == rep { Rat::one() } else { Rat::zero() }).collect();
                let coeffs = solve(&rows, &rhs, self.kernel.len())
                    .ok_or_else(|| Error::Inconsistent("no linear equivalence to move a repeated divisor".into()))?;
                let y: Vec<Rat> = (0..r)
                    .map(|j| {
                        self.kernel.iter().zip(&coeffs).fold(Rat::zero(), |acc, (b, c)| acc + c * Rat::from(b[j].clone()))
                    })
                    .collect();
                let pos = key.iter().position(|&i| i == rep).expect("present");
                let mut rest = key.clone();
                rest.remove(pos);
                let mut total = Rat::zero();
                for (j, yj) in y.iter().enumerate().take(r) {
                    if supp.contains(&j) || yj.is_zero() {
                        continue;
                    }
                    let mut next = rest.clone();
                    next.push(j);
                    total -= yj * self.product(&next)?;
                }
                total
            }
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn support_is_cone(&self, supp: &[usize]) -> bool {
        // some maximal cone containing supp: a basis among the complement
        // whose cone contains p
        let comp: Vec<usize> = (0..self.weights.len()).filter(|i| !supp.contains(i)).collect();
        let need = self.k;
        let mut found = false;
        choose(&comp, need, &mut |sub| {
            if found {
                return;
            }
            let others: Vec<usize> = (0..self.weights.len()).filter(|i| !sub.contains(i)).collect();
            if self.complement_cone_contains_p(&others).is_some() {
                found = true;
            }
        });
        found
    }
}

fn choose(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::new(), f)
}

/// Intersection form of the variety, computed on one or two toric chambers
/// inside the minimal bunch cone. When two chambers are available every
/// number is computed on both and the results must agree.
pub struct IntersectionForm {
    dim: usize,
    rank: usize,
    weights: Vec<IntVec>,
    relation_terms: Vec<Vec<(usize, Rat)>>,
    toric: Vec<ToricIntersection>,
}

impl IntersectionForm {
    /// `chamber_point` selects the toric chamber; it must be a generic point
    /// of the relative interior of the minimal bunch cone.
    pub fn new(br: &BunchedRing, chamber_point: Option<&[BigInt]>) -> Result<Self> {
        let pres = &br.pres;
        if !pres.group.is_torsion_free() {
            return Err(Error::TorsionUnsupported);
        }
        let n = dimension(br);
        if n < 0 {
            return Err(Error::UnsupportedIntersection("negative dimension".into()));
        }
        let k = pres.rank();
        let lambda = br.minimal_cone();
        if !lambda.is_full_dim() {
            return Err(Error::NotFullDimensional);
        }
        let weights = pres.weights();
        let walls = weight_walls(&weights, k);
        let points: Vec<IntVec> = match chamber_point {
            Some(p) => {
                let p = p.to_vec();
                if p.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, got: p.len() });
                }
                if !lambda.relint_contains(&p) || walls.iter().any(|h| dot(h, &p).is_zero()) {
                    return Err(Error::NotFullDimensional);
                }
                vec![p]
            }
            None => {
                let p1 = generic_point(&lambda, &walls);
                let p2 = generic_point_reversed(&lambda, &walls);
                if p1 == p2 { vec![p1] } else { vec![p1, p2] }
            }
        };
        let mut form = IntersectionForm {
            dim: n as usize,
            rank: k,
            toric: points.into_iter().map(|p| ToricIntersection::new(weights.clone(), p)).collect(),
            weights,
            relation_terms: Vec::new(),
        };
        form.relation_terms =
            pres.relation_degrees().iter().map(|u| form.expand_class(u)).collect::<Result<Vec<_>>>()?;
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn expand_class(&self, c: &[BigInt]) -> Result<Vec<(usize, Rat)>> {
        if c.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: c.len() });
        }
        let coeffs = combination(&self.weights, c)
            .ok_or_else(|| Error::UnsupportedIntersection("class outside the span of the weights".into()))?;
        Ok(coeffs.into_iter().enumerate().filter(|(_, a)| !a.is_zero()).collect())
    }

    fn evaluate(&mut self, mut terms: Vec<Vec<(usize, Rat)>>) -> Result<Rat> {
        terms.extend(self.relation_terms.iter().cloned());
        let mut results = Vec::new();
        for ti in &mut self.toric {
            let mut total = Rat::zero();
            let mut idx = vec![0usize; terms.len()];
            expand(&terms, 0, Rat::one(), &mut idx, &mut |coef, idx| {
                total += coef * ti.product(idx)?;
                Ok(())
            })?;
            results.push(total);
        }
        if results.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Inconsistent("intersection number depends on the toric chamber".into()));
        }
        Ok(results.remove(0))
    }

    /// Intersection number of `dim` classes, given by their free parts.
    pub fn number(&mut self, classes: &[IntVec]) -> Result<Rat> {
        if classes.len() != self.dim {
            return Err(Error::WrongArity { expected: self.dim, got: classes.len() });
        }
        let terms = classes.iter().map(|c| self.expand_class(c)).collect::<Result<Vec<_>>>()?;
        self.evaluate(terms)
    }

    /// Intersection number of the divisors of the generators `idx`.
    pub fn divisors(&mut self, idx: &[usize]) -> Result<Rat> {
        if idx.len() != self.dim {
            return Err(Error::WrongArity { expected: self.dim, got: idx.len() });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.weights.len()) {
            return Err(Error::DimensionMismatch { expected: self.weights.len(), got: bad + 1 });
        }
        self.evaluate(idx.iter().map(|&i| vec![(i, Rat::one())]).collect())
    }
}

/// Intersection number of `classes` (as many as the dimension), see
/// [`IntersectionForm`].
pub fn intersection_number(br: &BunchedRing, chamber_point: Option<&[BigInt]>, classes: &[IntVec]) -> Result<Rat> {
    IntersectionForm::new(br, chamber_point)?.number(classes)
}

fn generic_point_reversed(c: &Cone, walls: &[IntVec]) -> IntVec {
    // weights the rays in the opposite order to reach a different chamber
    let rays: Vec<IntVec> = c.rays().iter().rev().cloned().collect();
    let n = c.ambient();
    let mut t = BigInt::from(3);
    loop {
        let mut p = vec![BigInt::zero(); n];
        let mut coef = t.clone();
        for g in &rays {
            for (a, b) in p.iter_mut().zip(g) {
                *a += &coef * b;
            }
            coef *= &t;
        }
        let p = primitive(&p);
        if walls.iter().all(|h| !dot(h, &p).is_zero()) {
            return p;
        }
        t += 1;
    }
}

fn expand(
    exps: &[Vec<(usize, Rat)>],
    pos: usize,
    coef: Rat,
    idx: &mut Vec<usize>,
    f: &mut dyn FnMut(&Rat, &[usize]) -> Result<()>,
) -> Result<()> {
    if pos == exps.len() {
        return f(&coef, idx);
    }
    for (i, a) in &exps[pos] {
        idx[pos] = *i;
        expand(exps, pos + 1, &coef * a, idx, f)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoGorenstein {
    pub fano: bool,
    pub gorenstein: bool,
}

/// Fano: the anticanonical class is ample. Gorenstein: the canonical class
/// is Cartier, i.e. lies in the Picard group.
pub fn fano_gorenstein(br: &BunchedRing) -> Result<FanoGorenstein> {
    let kx = canonical_class(&br.pres);
    let anti: IntVec = br.pres.group.normalize(&kx.iter().map(|x| -x).collect::<Vec<_>>())?;
    let cones = divisor_cones(br);
    let fano = cones.is_ample(&br.pres.free_part(&anti));
    let gorenstein = picard(br)?.contains(&kx);
    Ok(FanoGorenstein { fano, gorenstein })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneData {
    pub picard_index: BigInt,
    pub anticanonical_degree: Rat,
    pub fano: bool,
}

/// Closed formulas for `Cl(X) = Z`: the Picard index is the lcm over the
/// relevant strata of the gcd of the nonvanishing weights, and
/// `(-K)^d = (sum w - sum deg g)^d * prod deg g / prod w`.
pub fn picard_data_rank_one(br: &BunchedRing) -> Result<RankOneData> {
    let pres = &br.pres;
    if pres.group.rank != 1 || !pres.group.torsion.is_empty() {
        return Err(Error::UnsupportedIntersection("class group is not Z".into()));
    }
    let mut w: Vec<BigInt> = pres.degrees.iter().map(|d| d[0].clone()).collect();
    let mut u: Vec<BigInt> = pres.relation_degrees().iter().map(|d| d[0].clone()).collect();
    if w.iter().any(|x| x.is_negative()) {
        if w.iter().any(|x| x.is_positive()) {
            return Err(Error::UnsupportedIntersection("weights of mixed sign".into()));
        }
        w.iter_mut().for_each(|x| *x = -x.clone());
        u.iter_mut().for_each(|x| *x = -x.clone());
    }
    let mut index = BigInt::one();
    for g in &br.bunch.cov {
        let gcd = g.indices().iter().fold(BigInt::zero(), |a, &i| a.gcd(&w[i]));
        index = index.lcm(&gcd);
    }
    let d = dimension(br);
    if d < 0 {
        return Err(Error::UnsupportedIntersection("negative dimension".into()));
    }
    let sw: BigInt = w.iter().sum();
    let su: BigInt = u.iter().sum();
    let base = Rat::from(&sw - &su);
    let mut deg = num_traits::pow(base, d as usize);
    for x in &u {
        deg *= Rat::from(x.clone());
    }
    for x in &w {
        deg /= Rat::from(x.clone());
    }
    Ok(RankOneData { picard_index: index, anticanonical_degree: deg, fano: su < sw })
}

/// Whether `c` lies in the rational span of the weights.
pub fn in_weight_span(pres: &GradedPresentation, c: &[BigInt]) -> bool {
    combination(&pres.weights(), &pres.free_part(c)).is_some()
}
