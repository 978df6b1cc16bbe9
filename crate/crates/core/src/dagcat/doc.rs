//! JSON documents for morphisms and hom-spaces.
//!
//! ```json
//! {"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]}
//! {"type":"pinj","src":3,"dst":3,"map":{"0":2,"1":0}}
//! {"type":"dstoch","n":2,"rows":[[0.5,0.25],[0.25,0.5]]}
//! ```
//!
//! Indices are 0-based and unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::morphism::Morphism;
use super::object::{Category, FinObject, HomSpace};
use super::pinj::PInjMorphism;
use super::rel::RelMorphism;
use super::stoch::StochMorphism;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MorphismDoc {
    Rel {
        src: usize,
        dst: usize,
        pairs: Vec<[usize; 2]>,
    },
    Pinj {
        src: usize,
        dst: usize,
        #[serde(with = "index_map")]
        map: BTreeMap<usize, usize>,
    },
    Dstoch {
        n: usize,
        rows: Vec<Vec<f64>>,
    },
}

mod index_map {
    use super::*;
    use serde::ser::SerializeMap;

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, usize>, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(map.len()))?;
        for (k, v) in map {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, usize>, D::Error> {
        let raw: BTreeMap<String, usize> = BTreeMap::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|k| (k, v))
                    .map_err(|_| serde::de::Error::custom(format!("map key `{k}` is not an index")))
            })
            .collect()
    }
}

impl From<&Morphism> for MorphismDoc {
    fn from(m: &Morphism) -> Self {
        match m {
            Morphism::Rel(r) => MorphismDoc::Rel {
                src: r.src().size,
                dst: r.dst().size,
                pairs: r.pairs().map(|(x, y)| [x, y]).collect(),
            },
            Morphism::PInj(p) => MorphismDoc::Pinj {
                src: p.src().size,
                dst: p.dst().size,
                map: p.pairs().collect(),
            },
            Morphism::Stoch(s) => MorphismDoc::Dstoch {
                n: s.n(),
                rows: s.rows(),
            },
        }
    }
}

impl TryFrom<MorphismDoc> for Morphism {
    type Error = Error;

    fn try_from(doc: MorphismDoc) -> Result<Morphism> {
        Ok(match doc {
            MorphismDoc::Rel { src, dst, pairs } => {
                RelMorphism::from_pairs(src.into(), dst.into(), pairs.into_iter().map(|[x, y]| (x, y)))?
                    .into()
            }
            MorphismDoc::Pinj { src, dst, map } => {
                PInjMorphism::from_pairs(src.into(), dst.into(), map)?.into()
            }
            MorphismDoc::Dstoch { n, rows } => StochMorphism::square(n, rows)?.into(),
        })
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MorphismDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = MorphismDoc::deserialize(d)?;
        Morphism::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// `{"category":"rel","src":3,"dst":3}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpaceDoc {
    pub category: Category,
    pub src: usize,
    pub dst: usize,
}

impl Serialize for HomSpace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HomSpaceDoc {
            category: self.category(),
            src: self.src().size,
            dst: self.dst().size,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = HomSpaceDoc::deserialize(d)?;
        HomSpace::new(doc.category, FinObject::new(doc.src), FinObject::new(doc.dst))
            .map_err(serde::de::Error::custom)
    }
}

pub fn morphism_from_json(text: &str) -> Result<Morphism> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

pub fn morphism_to_json(m: &Morphism) -> String {
    serde_json::to_string(m).expect("morphism documents always serialize")
}
