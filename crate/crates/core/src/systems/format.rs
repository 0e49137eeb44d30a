use serde::{Deserialize, Serialize};

use super::{Constraint, PolySystem, Relation, Tag};
use crate::error::{Error, Result};
use crate::polyalg::PolyJson;
use crate::ratcore::{AlgebraicElement, Extension, RatStr};
use crate::Polynomial;
use num_rational::BigRational;

/// On-disk instance: `{version: 1, n, var_names, constraints: [{poly, rel, tag}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub version: u32,
    pub n: usize,
    pub var_names: Vec<String>,
    pub constraints: Vec<ConstraintJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub poly: PolyJson,
    pub rel: Relation,
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl PolySystem {
    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            version: 1,
            n: self.num_vars(),
            var_names: self.var_names.clone(),
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintJson { poly: c.poly.to_json(), rel: c.rel, tag: c.tag, label: c.label.clone() })
                .collect(),
        }
    }

    pub fn from_json(j: &SystemJson) -> Result<Self> {
        if j.version != 1 {
            return Err(Error::Parse(format!("unsupported instance version {}", j.version)));
        }
        if j.var_names.len() != j.n {
            return Err(Error::DimensionMismatch { expected: j.n, got: j.var_names.len() });
        }
        let mut s = PolySystem::new(j.var_names.clone());
        for c in &j.constraints {
            if c.poly.n != j.n {
                return Err(Error::DimensionMismatch { expected: j.n, got: c.poly.n });
            }
            let poly = Polynomial::from_json(&c.poly)?;
            if c.tag == Tag::Linear && poly.degree() > 1 {
                return Err(Error::Parse("constraint tagged linear has degree above one".into()));
            }
            s.constraints.push(Constraint { poly, rel: c.rel, tag: c.tag, label: c.label.clone() });
        }
        Ok(s)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SystemJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// A point with rational or algebraic coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Rational(Vec<BigRational>),
    Algebraic(Vec<AlgebraicElement>),
}

/// On-disk point: `{values: ["p/q", ...]}` or `{e, k, values: [[c0, c1, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Algebraic { e: u32, k: String, values: Vec<Vec<RatStr>> },
    Rational { values: Vec<RatStr> },
}

impl Point {
    pub fn len(&self) -> usize {
        match self {
            Point::Rational(v) => v.len(),
            Point::Algebraic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> Result<PointJson> {
        match self {
            Point::Rational(v) => Ok(PointJson::Rational { values: v.iter().cloned().map(RatStr).collect() }),
            Point::Algebraic(v) => {
                let ext = v
                    .iter()
                    .find_map(|a| a.extension().cloned())
                    .ok_or_else(|| Error::Contract("algebraic point without an extension".into()))?;
                let e = ext.degree() as usize;
                let mut values = Vec::new();
                for a in v {
                    if a.extension().is_some_and(|x| x != &ext) {
                        return Err(Error::ExtensionMismatch(format!("{ext}")));
                    }
                    let mut c: Vec<RatStr> = a.coeffs().iter().cloned().map(RatStr).collect();
                    c.resize(e, RatStr(num_traits::Zero::zero()));
                    values.push(c);
                }
                Ok(PointJson::Algebraic { e: ext.degree(), k: ext.radicand().to_string(), values })
            }
        }
    }

    pub fn from_json(j: &PointJson) -> Result<Self> {
        match j {
            PointJson::Rational { values } => Ok(Point::Rational(values.iter().map(|v| v.0.clone()).collect())),
            PointJson::Algebraic { e, k, values } => {
                let k = k.parse::<num_bigint::BigInt>().map_err(|_| Error::Parse(format!("bad radicand {k}")))?;
                let ext = Extension::new(*e, k)?;
                let v = values
                    .iter()
                    .map(|c| AlgebraicElement::new(&ext, c.iter().map(|q| q.0.clone()).collect()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Point::Algebraic(v))
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PointJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json()?).expect("serializable"))
    }
}
