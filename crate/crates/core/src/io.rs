//! Serialized forms of quantales, spaces, filters and completions, and the
//! versioned envelope they travel in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::completion::CompletionSpace;
use crate::error::{Error, Result};
use crate::filters::Filter;
use crate::quantale::{ExtRational, FiniteQuantale, QuantaleDescriptor, QuantaleTables, ValueQuantale};
use crate::vspace::VSpace;

pub const SCHEMA: &str = "qc/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    pub kind: String,
    pub payload: Value,
}

impl Envelope {
    pub fn new(kind: &str, payload: impl Serialize) -> Envelope {
        Envelope {
            schema: SCHEMA.to_string(),
            kind: kind.to_string(),
            payload: serde_json::to_value(payload).expect("serializable payload"),
        }
    }
}

/// Parses either an envelope of the given kind or a bare payload.
pub fn parse_document<T: for<'de> Deserialize<'de>>(text: &str, kind: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Structural(format!("{e}")))?;
    let payload = match value {
        Value::Object(ref map) if map.contains_key("schema") => {
            let env: Envelope =
                serde_json::from_value(value).map_err(|e| Error::Structural(format!("envelope: {e}")))?;
            if env.schema != SCHEMA {
                return Err(Error::Structural(format!("unsupported schema `{}`", env.schema)));
            }
            if env.kind != kind {
                return Err(Error::Structural(format!("expected a `{kind}` document, found `{}`", env.kind)));
            }
            env.payload
        }
        other => other,
    };
    serde_json::from_value(payload).map_err(|e| Error::Structural(format!("{kind}: {e}")))
}

/// A quantale by bundled name (`q1`, `q3`, `chain4`, `ext_rational`) or by description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleRef {
    Named(String),
    Inline(QuantaleDescriptor),
}

/// A resolved quantale of either family.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyQuantale {
    Finite(FiniteQuantale),
    Rational(ExtRational),
}

impl QuantaleRef {
    pub fn resolve(&self) -> Result<AnyQuantale> {
        match self {
            QuantaleRef::Named(name) => match name.as_str() {
                "q1" => Ok(AnyQuantale::Finite(FiniteQuantale::q1())),
                "q3" => Ok(AnyQuantale::Finite(FiniteQuantale::q3())),
                "chain4" => Ok(AnyQuantale::Finite(FiniteQuantale::chain4())),
                "ext_rational" => Ok(AnyQuantale::Rational(ExtRational)),
                other => Err(Error::Structural(format!("unknown quantale `{other}`"))),
            },
            QuantaleRef::Inline(QuantaleDescriptor::ExtRational) => Ok(AnyQuantale::Rational(ExtRational)),
            QuantaleRef::Inline(QuantaleDescriptor::Finite { elements, leq, add }) => {
                let tables = QuantaleTables {
                    elements: elements.clone(),
                    leq: leq.clone(),
                    add: add.clone(),
                };
                Ok(AnyQuantale::Finite(FiniteQuantale::from_tables(tables)?))
            }
        }
    }

    /// The shortest reference to `q`: its bundled name when it has one.
    pub fn of<Q: ValueQuantale>(q: &Q) -> QuantaleRef {
        let desc = q.descriptor();
        for name in ["q1", "q3", "chain4", "ext_rational"] {
            let named = QuantaleRef::Named(name.into());
            let same = match named.resolve().expect("bundled") {
                AnyQuantale::Finite(f) => f.descriptor() == desc,
                AnyQuantale::Rational(r) => r.descriptor() == desc,
            };
            if same {
                return named;
            }
        }
        QuantaleRef::Inline(desc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceData {
    pub quantale: QuantaleRef,
    pub points: Vec<String>,
    pub d: Vec<Vec<String>>,
}

impl SpaceData {
    pub fn of<Q: ValueQuantale>(space: &VSpace<Q>) -> SpaceData {
        let q = space.quantale();
        SpaceData {
            quantale: QuantaleRef::of(q),
            points: space.points().to_vec(),
            d: space
                .matrix()
                .iter()
                .map(|row| row.iter().map(|e| q.format_elem(e)).collect())
                .collect(),
        }
    }

    fn build<Q: ValueQuantale>(&self, q: Q) -> Result<VSpace<Q>> {
        let d = self
            .d
            .iter()
            .map(|row| row.iter().map(|e| q.parse_elem(e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        VSpace::new(q, self.points.clone(), d)
    }

    /// Builds the space; the space axioms are not checked here.
    pub fn resolve(&self) -> Result<AnySpace> {
        Ok(match self.quantale.resolve()? {
            AnyQuantale::Finite(q) => AnySpace::Finite(self.build(q)?),
            AnyQuantale::Rational(q) => AnySpace::Rational(self.build(q)?),
        })
    }
}

/// A space over either quantale family.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySpace {
    Finite(VSpace<FiniteQuantale>),
    Rational(VSpace<ExtRational>),
}

/// Runs generic code on the space inside an [`AnySpace`].
#[macro_export]
macro_rules! with_space {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            $crate::io::AnySpace::Finite($s) => $body,
            $crate::io::AnySpace::Rational($s) => $body,
        }
    };
}

impl AnySpace {
    pub fn data(&self) -> SpaceData {
        with_space!(self, s => SpaceData::of(s))
    }

    pub fn len(&self) -> usize {
        with_space!(self, s => s.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterData {
    pub space: SpaceData,
    pub core: Vec<String>,
}

impl FilterData {
    pub fn of<Q: ValueQuantale>(space: &VSpace<Q>, f: &Filter) -> FilterData {
        FilterData {
            space: SpaceData::of(space),
            core: f.core().iter().map(|i| space.name(i).to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionPoint {
    pub name: String,
    pub core: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionData {
    pub quantale: QuantaleRef,
    pub points: Vec<CompletionPoint>,
    pub d: Vec<Vec<String>>,
    pub embedding: BTreeMap<String, usize>,
}

impl CompletionData {
    pub fn of<Q: ValueQuantale>(c: &CompletionSpace<Q>) -> CompletionData {
        let hat = SpaceData::of(&c.space);
        CompletionData {
            quantale: hat.quantale,
            points: c
                .points
                .iter()
                .zip(&hat.points)
                .map(|(f, name)| CompletionPoint {
                    name: name.clone(),
                    core: f.core().iter().map(|i| c.base.name(i).to_string()).collect(),
                })
                .collect(),
            d: hat.d,
            embedding: c
                .embedding
                .iter()
                .enumerate()
                .map(|(x, &j)| (c.base.name(x).to_string(), j))
                .collect(),
        }
    }

    /// The completion as a space in its own right.
    pub fn space(&self) -> SpaceData {
        SpaceData {
            quantale: self.quantale.clone(),
            points: self.points.iter().map(|p| p.name.clone()).collect(),
            d: self.d.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::complete;
    use crate::samples::{x2a, x3z};

    #[test]
    fn space_round_trip() {
        let data = SpaceData::of(&x2a());
        assert_eq!(data.quantale, QuantaleRef::Named("ext_rational".into()));
        let text = serde_json::to_string(&Envelope::new("space", &data)).unwrap();
        let back: SpaceData = parse_document(&text, "space").unwrap();
        assert_eq!(back, data);
        assert_eq!(back.resolve().unwrap(), AnySpace::Rational(x2a()));
        let bare = serde_json::to_string(&data).unwrap();
        assert_eq!(parse_document::<SpaceData>(&bare, "space").unwrap(), data);
        assert!(parse_document::<SpaceData>(&text, "filter").is_err());
    }

    #[test]
    fn quantale_references() {
        let q3 = FiniteQuantale::q3();
        assert_eq!(QuantaleRef::of(&q3), QuantaleRef::Named("q3".into()));
        let inline: QuantaleRef = serde_json::from_str(r#"{"kind":"ext_rational"}"#).unwrap();
        assert_eq!(inline.resolve().unwrap(), AnyQuantale::Rational(ExtRational));
        let diamond = QuantaleTables::diamond_join();
        let inline = QuantaleRef::Inline(QuantaleDescriptor::Finite {
            elements: diamond.elements,
            leq: diamond.leq,
            add: diamond.add,
        });
        assert!(inline.resolve().is_err());
    }

    #[test]
    fn completion_round_trip() {
        let c = complete(&x3z()).unwrap();
        let data = CompletionData::of(&c);
        assert_eq!(data.points[1].core, vec!["a", "b"]);
        assert_eq!(data.embedding["c"], 0);
        let text = serde_json::to_string(&data).unwrap();
        assert_eq!(serde_json::from_str::<CompletionData>(&text).unwrap(), data);
        assert!(data.space().resolve().is_ok());
    }
}
