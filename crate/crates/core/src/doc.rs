//! JSON documents for algebras, spaces and maps.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{builtin, FiniteAlgebra, RawAlgebra, BUILTIN_NAMES};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::space::{generate_topology, ContinuousMap, QFunction, QSpace};

/// An algebra given either by built-in name or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(RawAlgebra),
}

impl AlgebraRef {
    pub fn resolve(&self) -> Result<FiniteAlgebra> {
        match self {
            AlgebraRef::Name(name) => builtin(name),
            AlgebraRef::Inline(raw) => FiniteAlgebra::validate(raw),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            AlgebraRef::Name(name) => name,
            AlgebraRef::Inline(raw) => &raw.name,
        }
    }

    /// Refers to built-in algebras by name and inlines everything else.
    pub fn of(q: &FiniteAlgebra) -> Self {
        if BUILTIN_NAMES.contains(&q.name()) && builtin(q.name()).as_ref() == Ok(q) {
            AlgebraRef::Name(q.name().to_string())
        } else {
            AlgebraRef::Inline(q.to_raw())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub algebra: AlgebraRef,
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
    /// When set, `opens` is a subbasis to be closed.
    #[serde(default)]
    pub close: bool,
}

impl SpaceDoc {
    pub fn of(x: &QSpace) -> Self {
        SpaceDoc {
            algebra: AlgebraRef::of(x.q()),
            points: x.points(),
            opens: x.topology().iter().map(|p| p.values().to_vec()).collect(),
            close: false,
        }
    }

    pub fn to_space(&self, caps: &Caps) -> Result<QSpace> {
        let q = Arc::new(self.algebra.resolve()?);
        let opens = self.opens.iter().cloned().map(QFunction);
        if self.close {
            generate_topology(q, self.points, opens, caps)
        } else {
            QSpace::new(q, self.points, opens)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub dom: SpaceDoc,
    pub cod: SpaceDoc,
    pub values: Vec<usize>,
}

impl MapDoc {
    pub fn of(f: &ContinuousMap) -> Self {
        MapDoc {
            dom: SpaceDoc::of(f.dom()),
            cod: SpaceDoc::of(f.cod()),
            values: f.values().to_vec(),
        }
    }

    pub fn to_map(&self, caps: &Caps) -> Result<ContinuousMap> {
        ContinuousMap::new(self.dom.to_space(caps)?, self.cod.to_space(caps)?, self.values.clone())
    }
}

/// Parses and validates an algebra document.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let raw: RawAlgebra = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    FiniteAlgebra::validate(&raw)
}

pub fn parse_space(text: &str, caps: &Caps) -> Result<QSpace> {
    let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_space(caps)
}

pub fn parse_map(text: &str, caps: &Caps) -> Result<ContinuousMap> {
    let doc: MapDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_map(caps)
}

pub fn parse_caps(text: &str) -> Result<Caps> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::sierpinski;
    use proptest::prelude::*;

    #[test]
    fn builtin_space_round_trips_by_name() {
        let caps = Caps::default();
        let s = sierpinski(Arc::new(builtin("CHAIN3").unwrap()), &caps).unwrap();
        let doc = SpaceDoc::of(&s);
        assert_eq!(doc.algebra, AlgebraRef::Name("CHAIN3".into()));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_space(&text, &caps).unwrap(), s);
    }

    #[test]
    fn subbasis_documents_close() {
        let text = r#"{"algebra":"BOOL_LAT","points":2,"opens":[[0,1]],"close":true}"#;
        let x = parse_space(text, &Caps::default()).unwrap();
        assert_eq!(x.topology().len(), 3);
        let open = r#"{"algebra":"BOOL_LAT","points":2,"opens":[[0,1]]}"#;
        assert!(parse_space(open, &Caps::default()).is_err());
    }

    #[test]
    fn inline_algebra_document() {
        let text = r#"{"name":"N","carrier_size":2,"ops":[{"symbol":"neg","arity":1,"table":[1,0]}]}"#;
        let q = parse_algebra(text).unwrap();
        assert_eq!(q.apply(0, &[0]), 1);
        assert!(matches!(AlgebraRef::of(&q), AlgebraRef::Inline(_)));
        let bad = r#"{"name":"N","carrier_size":2,"ops":[{"symbol":"neg","arity":1,"table":[1]}]}"#;
        assert!(matches!(parse_algebra(bad), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn caps_document() {
        let caps = parse_caps(r#"{"max_power_carrier": 16}"#).unwrap();
        assert_eq!(caps.max_power_carrier, 16);
        assert_eq!(caps.max_topology, Caps::default().max_topology);
        assert!(parse_caps(r#"{"bogus": 1}"#).is_err());
    }

    proptest! {
        #[test]
        fn generated_spaces_round_trip(
            name in prop::sample::select(vec!["BOOL_LAT", "MEET_SL", "CHAIN3"]),
            points in 0usize..4,
            raw in prop::collection::vec(prop::collection::vec(0usize..3, 3), 0..3),
        ) {
            let caps = Caps::default();
            let q = Arc::new(builtin(name).unwrap());
            let subbasis: Vec<QFunction> = raw
                .into_iter()
                .map(|v| QFunction(v.into_iter().take(points).map(|x| x % q.size()).collect()))
                .collect();
            let x = generate_topology(q, points, subbasis, &caps).unwrap();
            let text = serde_json::to_string(&SpaceDoc::of(&x)).unwrap();
            prop_assert_eq!(parse_space(&text, &caps).unwrap(), x.clone());

            let map = MapDoc::of(&ContinuousMap::identity(x.clone()));
            let text = serde_json::to_string(&map).unwrap();
            prop_assert_eq!(parse_map(&text, &caps).unwrap(), ContinuousMap::identity(x));
        }
    }
}
