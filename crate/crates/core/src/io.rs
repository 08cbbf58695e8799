//! Canonical JSON documents.
//!
//! An ideal document is
//!
//! ```json
//! {"ambient":{"gamma":[1,1],"small":[[0,0],[1,1]]},
//!  "ideal":{"gammaE":[1,1],"mu":[1,1],"small":[[1,1]]},"p":2}
//! ```
//!
//! Without `"ideal"` the document is the semigroup viewed as an ideal over
//! itself. Canonical output has sorted keys, sorted point lists and no
//! insignificant whitespace, so equal values serialize to identical bytes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generation::GenerationInput;
use crate::lattice::{IndexSet, Point, DEFAULT_COORD_LIMIT};
use crate::semigroup::{GoodIdeal, GoodSemigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub gamma: Point,
    pub small: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealBody {
    #[serde(rename = "gammaE")]
    pub gamma_e: Point,
    pub mu: Point,
    pub small: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub ambient: SemigroupDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealBody>,
    pub p: usize,
}

impl IdealDoc {
    pub fn of(e: &GoodIdeal) -> Self {
        let s = e.ambient();
        IdealDoc {
            ambient: SemigroupDoc {
                gamma: s.gamma(),
                small: s.small().to_vec(),
            },
            ideal: Some(IdealBody {
                gamma_e: e.gamma_e(),
                mu: e.mu(),
                small: e.small().to_vec(),
            }),
            p: e.dim(),
        }
    }

    fn points(&self) -> impl Iterator<Item = &Point> {
        let ambient = std::iter::once(&self.ambient.gamma).chain(&self.ambient.small);
        let ideal = self
            .ideal
            .iter()
            .flat_map(|b| [&b.gamma_e, &b.mu].into_iter().chain(&b.small));
        ambient.chain(ideal)
    }

    pub fn check(&self, limit: i64) -> Result<()> {
        for v in self.points() {
            if v.dim() != self.p {
                return Err(Error::Dimension(format!(
                    "point {v} does not match p = {}",
                    self.p
                )));
            }
            v.check_limit(limit)?;
        }
        Ok(())
    }

    pub fn build(&self, limit: i64) -> Result<GoodIdeal> {
        self.check(limit)?;
        let s = Arc::new(GoodSemigroup::new(
            self.ambient.gamma,
            self.ambient.small.iter().copied(),
        )?);
        match &self.ideal {
            Some(b) => GoodIdeal::new(s, b.mu, b.gamma_e, b.small.iter().copied()),
            None => Ok(s.as_ideal()),
        }
    }
}

/// Codimension-one projections (entry `i` omits coordinate `i + 1`) and
/// relative maximals, as consumed by reconstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationDoc {
    pub ambient: SemigroupDoc,
    pub p: usize,
    pub projections: Vec<IdealDoc>,
    pub relmax: Vec<Point>,
}

impl GenerationDoc {
    pub fn of(e: &GoodIdeal) -> Result<Self> {
        let g = GenerationInput::of(e)?;
        Ok(GenerationDoc {
            ambient: IdealDoc::of(&e.ambient().as_ideal()).ambient,
            p: e.dim(),
            projections: g.projections.iter().map(|(_, proj)| IdealDoc::of(proj)).collect(),
            relmax: g.relmax,
        })
    }

    pub fn build(&self, limit: i64) -> Result<(Arc<GoodSemigroup>, GenerationInput)> {
        let ambient = IdealDoc {
            ambient: self.ambient.clone(),
            ideal: None,
            p: self.p,
        }
        .build(limit)?;
        if self.projections.len() != self.p {
            return Err(Error::Malformed(format!(
                "expected {} projections, found {}",
                self.p,
                self.projections.len()
            )));
        }
        let projections = self
            .projections
            .iter()
            .enumerate()
            .map(|(i, doc)| Ok((IndexSet::all_but(self.p, i), doc.build(limit)?)))
            .collect::<Result<Vec<_>>>()?;
        for a in &self.relmax {
            a.check_limit(limit)?;
        }
        let g = GenerationInput::new(projections, self.relmax.clone())?;
        Ok((Arc::clone(ambient.ambient()), g))
    }
}

pub fn read_ideal(text: &str) -> Result<GoodIdeal> {
    read_ideal_with_limit(text, DEFAULT_COORD_LIMIT)
}

pub fn read_ideal_with_limit(text: &str, limit: i64) -> Result<GoodIdeal> {
    let doc: IdealDoc = serde_json::from_str(text)?;
    doc.build(limit)
}

pub fn write_ideal(e: &GoodIdeal) -> String {
    to_canonical(&IdealDoc::of(e)).expect("ideal documents serialize")
}

/// Sorted keys (through `serde_json::Value`), compact separators.
pub fn to_canonical<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(&serde_json::to_value(value)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::random::random_good_ideal;
    use proptest::prelude::*;

    #[test]
    fn node_document_is_canonical() {
        let text = write_ideal(&examples::node_maximal_ideal());
        assert_eq!(
            text,
            r#"{"ambient":{"gamma":[1,1],"small":[[0,0],[1,1]]},"ideal":{"gammaE":[1,1],"mu":[1,1],"small":[[1,1]]},"p":2}"#
        );
    }

    #[test]
    fn semigroup_document_reads_as_ideal() {
        let e = read_ideal(r#"{"p":2,"ambient":{"small":[[0,0],[1,1]],"gamma":[1,1]}}"#).unwrap();
        assert!(e.equals(&examples::node().as_ideal()).unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(read_ideal("{"), Err(Error::Json(_))));
        assert!(matches!(
            read_ideal(r#"{"p":3,"ambient":{"small":[[0,0],[1,1]],"gamma":[1,1]}}"#),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            read_ideal_with_limit(r#"{"p":1,"ambient":{"small":[[0]],"gamma":[20]}}"#, 10),
            Err(Error::Overflow(_))
        ));
        assert!(read_ideal(r#"{"p":1,"ambient":{"small":[[0]],"gamma":[0]},"extra":1}"#).is_err());
    }

    #[test]
    fn generation_document_round_trip() {
        let k = examples::k_of_a3();
        let doc = GenerationDoc::of(&k).unwrap();
        let text = to_canonical(&doc).unwrap();
        let back: GenerationDoc = serde_json::from_str(&text).unwrap();
        let (ambient, g) = back.build(DEFAULT_COORD_LIMIT).unwrap();
        assert_eq!(g.relmax, doc.relmax);
        let w = g.default_window().unwrap();
        let r = crate::generation::reconstruct(&g, ambient, &w).unwrap();
        assert!(r.equals(&k).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn round_trip(seed in 0u64..10_000, p in 2usize..=3, bound in 2i64..=5) {
            let e = random_good_ideal(seed, p, bound).unwrap();
            let text = write_ideal(&e);
            let back = read_ideal(&text).unwrap();
            prop_assert!(back.equals(&e).unwrap());
            prop_assert_eq!(write_ideal(&back), text);
        }
    }
}
