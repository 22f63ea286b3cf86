//! JSON fixture formats.
//!
//! ```json
//! {"elements": ["1", "a"], "unit": "1",
//!  "product": {"1|1": "1", "1|a": "a", "a|1": "a"},
//!  "conj": {"1|1": "1", "1|a": "1", "a|1": "a", "a|a": "a"}}
//! ```
//!
//! A missing `product` key means the product is undefined. Groups use
//! `mul` and `inv`; pairs nest a PMQ and a group and add `e` and `r`, where
//! `r[g][a]` is the image of `a` under the action of `g`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSpec, PairSpec};
use crate::pmq::PmqSpec;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmqJson {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default)]
    pub product: BTreeMap<String, String>,
    pub conj: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub elements: Vec<String>,
    pub unit: String,
    pub mul: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub pmq: PmqJson,
    pub group: GroupJson,
    pub e: BTreeMap<String, String>,
    pub r: BTreeMap<String, BTreeMap<String, String>>,
}

fn split_key(key: &str) -> Result<(&str, &str)> {
    let mut parts = key.split('|');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::Structural(format!(
            "table key `{key}` is not of the form `a|b`"
        ))),
    }
}

fn pairs(table: &BTreeMap<String, String>) -> Result<Vec<((&str, &str), &str)>> {
    table
        .iter()
        .map(|(k, v)| Ok((split_key(k)?, v.as_str())))
        .collect()
}

impl PmqJson {
    pub fn to_spec(&self) -> Result<PmqSpec> {
        PmqSpec::from_symbols(
            self.elements.clone(),
            &self.unit,
            pairs(&self.product)?,
            pairs(&self.conj)?,
        )
    }

    pub fn from_spec(spec: &PmqSpec) -> Self {
        let mut product = BTreeMap::new();
        let mut conj = BTreeMap::new();
        for a in 0..spec.len() {
            for b in 0..spec.len() {
                let key = format!("{}|{}", spec.symbol(a), spec.symbol(b));
                if let Some(c) = spec.product(a, b) {
                    product.insert(key.clone(), spec.symbol(c).to_string());
                }
                conj.insert(key, spec.symbol(spec.conj(a, b)).to_string());
            }
        }
        Self {
            elements: spec.elements().to_vec(),
            unit: spec.symbol(spec.unit()).to_string(),
            product,
            conj,
        }
    }
}

impl GroupJson {
    pub fn to_spec(&self) -> Result<GroupSpec> {
        GroupSpec::from_symbols(
            self.elements.clone(),
            &self.unit,
            pairs(&self.mul)?,
            self.inv.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }
}

impl PairJson {
    pub fn to_spec(&self) -> Result<PairSpec> {
        let pmq = self.pmq.to_spec()?;
        let group = self.group.to_spec()?;
        let structural = |s: &str| Error::Structural(s.to_string());
        let mut e = vec![None; pmq.len()];
        for (a, g) in &self.e {
            e[pmq.elem(a)?] = Some(group.elem(g)?);
        }
        let e = e
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| structural("map e is not total"))?;
        let mut r = vec![vec![None; pmq.len()]; group.len()];
        for (g, row) in &self.r {
            let g = group.elem(g)?;
            for (a, b) in row {
                r[g][pmq.elem(a)?] = Some(pmq.elem(b)?);
            }
        }
        let r = r
            .into_iter()
            .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| structural("action r is not total"))?;
        PairSpec::new(pmq, group, e, r)
    }
}

/// Deserializes JSON text, reporting the JSON path of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| Error::Parse {
        path: err.path().to_string(),
        message: err.inner().to_string(),
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|err| Error::Parse {
        path: path.display().to_string(),
        message: err.to_string(),
    })?;
    parse_json(&text).map_err(|err| match err {
        Error::Parse { path: p, message } => Error::Parse {
            path: format!("{}:{}", path.display(), p),
            message,
        },
        other => other,
    })
}

pub fn pmq_from_str(text: &str) -> Result<PmqSpec> {
    parse_json::<PmqJson>(text)?.to_spec()
}

pub fn group_from_str(text: &str) -> Result<GroupSpec> {
    parse_json::<GroupJson>(text)?.to_spec()
}

pub fn pair_from_str(text: &str) -> Result<PairSpec> {
    parse_json::<PairJson>(text)?.to_spec()
}
