//! Cox rings of smooth K*-surfaces from their Orlik-Wagreich graphs.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{build_rap, ow_isotropy_orders, ApData, GradedPresentation};
use crate::linalg::Rat;

/// Weighted graph of a smooth K*-surface with two parabolic fixed point
/// curves. Labels follow the usual sign convention: an entry `b` stands for
/// a curve of self-intersection `-b`, for the arms as well as for the
/// source `F+` and the sink `F-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OwGraph {
    pub arms: Vec<Vec<i64>>,
    pub bplus: i64,
    pub bminus: i64,
    /// Points of the projective line under the arms; defaults to
    /// `[-1,0], [1,-1], [0,1], [1,1], [1,2], ...`.
    pub points: Option<Vec<[Rat; 2]>>,
}

pub fn default_points(count: usize) -> Vec<[Rat; 2]> {
    let r = |x: i64| Rat::from_integer(BigInt::from(x));
    let mut pts = vec![[r(-1), r(0)], [r(1), r(-1)], [r(0), r(1)]];
    let mut k = 1;
    while pts.len() < count {
        pts.push([r(1), r(k)]);
        k += 1;
    }
    pts.truncate(count);
    pts
}

/// Defining data `(A,P)` of the surface: each arm yields the lattice
/// vectors `(l_ij, d_ij)` of a regular chain from `(0,-1)` to `(0,1)`.
pub fn ow_to_ap(g: &OwGraph) -> Result<ApData> {
    if g.arms.len() < 2 {
        return Err(Error::MalformedGraph("need at least two arms".into()));
    }
    let mut ls: Vec<Vec<u32>> = Vec::new();
    let mut drow: Vec<BigInt> = Vec::new();
    let mut tops = BigInt::zero();
    for (i, arm) in g.arms.iter().enumerate() {
        if arm.is_empty() {
            return Err(Error::MalformedGraph(format!("arm {i} is empty")));
        }
        let mut prev = (BigInt::zero(), BigInt::from(-1));
        let mut cur = (BigInt::one(), BigInt::zero());
        let mut chain = Vec::new();
        for &b in arm {
            chain.push(cur.clone());
            let b = BigInt::from(b);
            let next = (&b * &cur.0 - &prev.0, &b * &cur.1 - &prev.1);
            prev = cur;
            cur = next;
        }
        if cur != (BigInt::zero(), BigInt::one()) {
            return Err(Error::MalformedGraph(format!("arm {i} does not close up")));
        }
        let orders = ow_isotropy_orders(arm);
        let mut li = Vec::new();
        for ((l, _), o) in chain.iter().zip(&orders) {
            if l != o || l <= &BigInt::zero() {
                return Err(Error::MalformedGraph(format!("arm {i} has invalid isotropy orders")));
            }
            li.push(u32::try_from(l).map_err(|_| Error::MalformedGraph("isotropy overflow".into()))?);
        }
        // shear arm 0 so that the sink gets the prescribed self-intersection
        let shift = if i == 0 { BigInt::from(-g.bminus) } else { BigInt::zero() };
        for (l, d) in &chain {
            drow.push(d + &shift * l);
        }
        let (l, d) = chain.last().expect("nonempty");
        tops += d + &shift * l;
        ls.push(li);
    }
    if tops != BigInt::from(g.bplus) {
        return Err(Error::MalformedGraph(format!(
            "source label {} inconsistent with the arms, expected {tops}",
            g.bplus
        )));
    }
    let r = g.arms.len() - 1;
    let a = match &g.points {
        Some(p) if p.len() == r + 1 => p.clone(),
        Some(_) => return Err(Error::MalformedGraph("need one point per arm".into())),
        None => default_points(r + 1),
    };
    let ap = ApData {
        r,
        ns: ls.iter().map(|l| l.len()).collect(),
        ls,
        m: 2,
        s: 1,
        a,
        d: vec![drow],
        dprime: vec![vec![BigInt::one(), BigInt::from(-1)]],
    };
    ap.validate()?;
    Ok(ap)
}

/// Cox ring of the surface with variables `T_ij`, `S1 = S+`, `S2 = S-`.
pub fn ow_to_cox(g: &OwGraph) -> Result<GradedPresentation> {
    build_rap(&ow_to_ap(g)?)
}
