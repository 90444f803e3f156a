//! Input documents.
//!
//! Integers are JSON numbers or decimal strings (for values beyond 64 bits);
//! rationals are numbers or `"p/q"` strings. Serialization writes integers
//! as numbers when they fit and rationals always as strings, so a parsed
//! document serializes to a fixpoint.

use std::fmt;
use std::str::FromStr;

use coxcalc::cones::Fan;
use coxcalc::graded::{build_rap, ApData, GradedPresentation};
use coxcalc::lattice::{cokernel, AbelianGroup, IntMatrix, IntVec};
use coxcalc::linalg::Rat;
use coxcalc::modifications::{ow_to_ap, OwGraph};
use coxcalc::poly::Polynomial;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::CliError;

/// Arbitrary precision integer with the JSON convention above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                BigInt::from_str(v.trim()).map(Int).map_err(|_| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Exact rational with the JSON convention above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rat);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

pub fn parse_rat(v: &str) -> Option<Rat> {
    let v = v.trim();
    match v.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => BigInt::from_str(v).ok().map(Rat::from_integer),
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rat::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rat::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rat(v).map(Q).ok_or_else(|| E::custom(format!("bad rational {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

fn ints(v: &[Int]) -> IntVec {
    v.iter().map(|x| x.0.clone()).collect()
}

fn from_ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<Int>,
}

impl GroupDoc {
    pub fn to_group(&self) -> Result<AbelianGroup, CliError> {
        Ok(AbelianGroup::new(self.rank, ints(&self.torsion))?)
    }

    pub fn from_group(k: &AbelianGroup) -> Self {
        GroupDoc { rank: k.rank, torsion: from_ints(&k.torsion) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub c: Q,
    pub e: Vec<u32>,
}

/// A relation, either as explicit terms or as text like `"T1*T2 + T3^2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationDoc {
    Text(String),
    Terms { terms: Vec<TermDoc> },
}

impl RelationDoc {
    pub fn to_poly(&self, vars: &[String]) -> Result<Polynomial, CliError> {
        match self {
            RelationDoc::Text(s) => Ok(Polynomial::parse(s, vars)?),
            RelationDoc::Terms { terms } => {
                if let Some(t) = terms.iter().find(|t| t.e.len() != vars.len()) {
                    return Err(CliError::Schema(format!(
                        "exponent vector of length {} for {} variables",
                        t.e.len(),
                        vars.len()
                    )));
                }
                Ok(Polynomial::from_terms(vars.len(), terms.iter().map(|t| (t.c.0.clone(), t.e.clone())))?)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    /// The generators are pairwise nonassociated K-primes.
    #[serde(default)]
    pub k_prime_generators: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApDataDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub r: usize,
    pub ns: Vec<usize>,
    pub ls: Vec<Vec<u32>>,
    pub m: usize,
    pub s: usize,
    #[serde(rename = "A")]
    pub a: Vec<[Q; 2]>,
    pub d: Vec<Vec<Int>>,
    #[serde(default)]
    pub dprime: Vec<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<Vec<Int>>,
}

impl ApDataDoc {
    pub fn to_ap(&self) -> Result<ApData, CliError> {
        let dprime = if self.dprime.is_empty() && self.m == 0 {
            vec![Vec::new(); self.s]
        } else {
            self.dprime.iter().map(|r| ints(r)).collect()
        };
        let ap = ApData {
            r: self.r,
            ns: self.ns.clone(),
            ls: self.ls.clone(),
            m: self.m,
            s: self.s,
            a: self.a.iter().map(|p| [p[0].0.clone(), p[1].0.clone()]).collect(),
            d: self.d.iter().map(|r| ints(r)).collect(),
            dprime,
        };
        ap.validate()?;
        Ok(ap)
    }

    pub fn from_ap(ap: &ApData) -> Self {
        ApDataDoc {
            name: None,
            r: ap.r,
            ns: ap.ns.clone(),
            ls: ap.ls.clone(),
            m: ap.m,
            s: ap.s,
            a: ap.a.iter().map(|p| [Q(p[0].clone()), Q(p[1].clone())]).collect(),
            d: ap.d.iter().map(|r| from_ints(r)).collect(),
            dprime: ap.dprime.iter().map(|r| from_ints(r)).collect(),
            chamber: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vars: Vec<String>,
    #[serde(rename = "K")]
    pub k: GroupDoc,
    pub degrees: Vec<Vec<Int>>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assertions: Option<Assertions>,
}

impl PresentationDoc {
    pub fn to_presentation(&self) -> Result<GradedPresentation, CliError> {
        if self.degrees.len() != self.vars.len() {
            return Err(CliError::Schema(format!("{} variables but {} degrees", self.vars.len(), self.degrees.len())));
        }
        let k = self.k.to_group()?;
        let rels = self.relations.iter().map(|r| r.to_poly(&self.vars)).collect::<Result<Vec<_>, _>>()?;
        let degrees = self.degrees.iter().map(|w| ints(w)).collect();
        let mut pres = GradedPresentation::new(self.vars.clone(), k, degrees, rels)?;
        pres.k_prime_asserted = self.assertions.as_ref().is_some_and(|a| a.k_prime_generators);
        Ok(pres)
    }

    pub fn from_presentation(p: &GradedPresentation) -> Self {
        PresentationDoc {
            name: None,
            vars: p.vars.clone(),
            k: GroupDoc::from_group(&p.group),
            degrees: p.degrees.iter().map(|w| from_ints(w)).collect(),
            relations: p.relation_display().into_iter().map(RelationDoc::Text).collect(),
            chamber: None,
            assertions: p.k_prime_asserted.then_some(Assertions { k_prime_generators: true }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rays: Vec<Vec<Int>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
}

impl FanDoc {
    pub fn to_fan(&self) -> Result<Fan, CliError> {
        let dim = self.rays.first().map_or(0, |r| r.len());
        if self.rays.iter().any(|r| r.len() != dim) {
            return Err(CliError::Schema("rays of different lengths".into()));
        }
        Ok(Fan::new(self.rays.iter().map(|r| ints(r)).collect(), self.max_cones.clone())?)
    }

    pub fn p_matrix(&self) -> Result<IntMatrix, CliError> {
        let fan = self.to_fan()?;
        Ok(IntMatrix::from_cols(&fan.rays, fan.dim())?)
    }

    /// Toric Cox ring: polynomial ring graded by the cokernel of `P^T`.
    pub fn to_presentation(&self) -> Result<GradedPresentation, CliError> {
        let p = self.p_matrix()?;
        let c = cokernel(&p.transpose());
        let vars = match &self.vars {
            Some(v) if v.len() == p.cols() => v.clone(),
            Some(v) => return Err(CliError::Schema(format!("{} names for {} rays", v.len(), p.cols()))),
            None => (1..=p.cols()).map(|i| format!("T{i}")).collect(),
        };
        let degrees = c.projection.to_cols().iter().map(|w| c.group.normalize(w)).collect::<Result<Vec<_>, _>>()?;
        let mut pres = GradedPresentation::new(vars, c.group, degrees, Vec::new())?;
        pres.k_prime_asserted = true;
        Ok(pres)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OwGraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub arms: Vec<Vec<i64>>,
    pub bplus: i64,
    pub bminus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[Q; 2]>>,
}

impl OwGraphDoc {
    pub fn to_graph(&self) -> OwGraph {
        OwGraph {
            arms: self.arms.clone(),
            bplus: self.bplus,
            bminus: self.bminus,
            points: self.points.as_ref().map(|p| p.iter().map(|x| [x[0].0.clone(), x[1].0.clone()]).collect()),
        }
    }
}

/// Stellar subdivision of the ambient fan of a hypersurface Cox ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModificationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: PresentationDoc,
    /// Rows of the ray matrix, one column per variable.
    #[serde(rename = "P")]
    pub p: Vec<Vec<Int>>,
    pub max_cones: Vec<Vec<usize>>,
    /// Variables spanning the center.
    pub center: Vec<String>,
    pub coefficients: Vec<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_var: Option<String>,
    #[serde(default)]
    pub assume_admissible: bool,
}

impl ModificationDoc {
    pub fn p_matrix(&self) -> Result<IntMatrix, CliError> {
        let cols = self.base.vars.len();
        let rows: Vec<IntVec> = self.p.iter().map(|r| ints(r)).collect();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(CliError::Schema(format!("rows of P must have {cols} entries")));
        }
        Ok(IntMatrix::from_rows(&rows, cols)?)
    }

    pub fn center_indices(&self) -> Result<Vec<usize>, CliError> {
        self.center
            .iter()
            .map(|v| {
                self.base
                    .vars
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| CliError::Schema(format!("unknown variable {v} in center")))
            })
            .collect()
    }

    pub fn coefficient_values(&self) -> IntVec {
        ints(&self.coefficients)
    }
}

/// Expected invariants of a table row. Absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(rename = "Cl", default, skip_serializing_if = "Option::is_none")]
    pub cl: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical_degree: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub picard_index: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locally_factorial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fano: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<bool>,
    /// ADE type of the singularities, e.g. `"A1+A2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singularities: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub label: String,
    pub input: Box<Document>,
    pub expect: Expectation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    ApData(ApDataDoc),
    Presentation(PresentationDoc),
    Fan(FanDoc),
    OwGraph(OwGraphDoc),
    Modification(ModificationDoc),
    Table(TableDoc),
}

/// A graded ring read from a document, with its ray matrix when the
/// document determines one.
#[derive(Clone)]
pub struct Ring {
    pub name: Option<String>,
    pub pres: GradedPresentation,
    pub p: Option<IntMatrix>,
    pub ap: Option<ApData>,
    pub fan: Option<Fan>,
    pub chamber: Option<IntVec>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::ApData(_) => "ap_data",
            Document::Presentation(_) => "presentation",
            Document::Fan(_) => "fan",
            Document::OwGraph(_) => "ow_graph",
            Document::Modification(_) => "modification",
            Document::Table(_) => "table",
        }
    }

    /// The graded ring described by the document.
    pub fn ring(&self) -> Result<Ring, CliError> {
        match self {
            Document::ApData(d) => {
                let ap = d.to_ap()?;
                Ok(Ring {
                    name: d.name.clone(),
                    pres: build_rap(&ap)?,
                    p: Some(ap.p_matrix()),
                    ap: Some(ap),
                    fan: None,
                    chamber: d.chamber.as_deref().map(ints),
                })
            }
            Document::Presentation(d) => Ok(Ring {
                name: d.name.clone(),
                pres: d.to_presentation()?,
                p: None,
                ap: None,
                fan: None,
                chamber: d.chamber.as_deref().map(ints),
            }),
            Document::Fan(d) => Ok(Ring {
                name: d.name.clone(),
                pres: d.to_presentation()?,
                p: Some(d.p_matrix()?),
                ap: None,
                fan: Some(d.to_fan()?),
                chamber: None,
            }),
            Document::OwGraph(d) => {
                let ap = ow_to_ap(&d.to_graph())?;
                Ok(Ring {
                    name: d.name.clone(),
                    pres: build_rap(&ap)?,
                    p: Some(ap.p_matrix()),
                    fan: Some(coxcalc::modifications::kstar_fan(&ap)?),
                    ap: Some(ap),
                    chamber: None,
                })
            }
            Document::Modification(_) | Document::Table(_) => {
                Err(CliError::Schema(format!("a {} document does not describe a single ring", self.kind())))
            }
        }
    }
}
