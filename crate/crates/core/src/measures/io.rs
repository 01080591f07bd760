//! JSON encoding of measures. Rationals always travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use super::AtomicMeasure;
use crate::error::Result;
use crate::numerics::{parse_rational, rational_to_string, Rational};

/// serde adapter for a single rational field.
pub mod rational_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::numerics::{parse_rational_with, rational_to_string, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational_with(&s, true).map_err(D::Error::custom)
    }
}

/// serde adapter for `Vec<Rational>`.
pub mod rational_vec {
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use crate::numerics::{rational_to_string, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&rational_to_string(q))?;
        }
        seq.end()
    }
}

/// A rational rendered as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalString(pub String);

impl From<&Rational> for RationalString {
    fn from(q: &Rational) -> Self {
        RationalString(rational_to_string(q))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomEntry {
    pub point: String,
    pub weight: String,
}

/// `{"atoms":[{"point":"1/6","weight":"1"}, …]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureFile {
    pub atoms: Vec<AtomEntry>,
}

impl MeasureFile {
    pub fn into_measure(self) -> Result<AtomicMeasure> {
        let atoms = self
            .atoms
            .into_iter()
            .map(|a| Ok((parse_rational(&a.point)?, parse_rational(&a.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        AtomicMeasure::new(atoms)
    }
}

impl From<&AtomicMeasure> for MeasureFile {
    fn from(m: &AtomicMeasure) -> Self {
        MeasureFile {
            atoms: m
                .atoms()
                .iter()
                .map(|a| AtomEntry {
                    point: rational_to_string(&a.point),
                    weight: rational_to_string(&a.weight),
                })
                .collect(),
        }
    }
}

impl AtomicMeasure {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str::<MeasureFile>(s)?.into_measure()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&MeasureFile::from(self)).expect("measure serializes")
    }
}
