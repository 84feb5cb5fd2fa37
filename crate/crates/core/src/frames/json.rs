use serde::{Deserialize, Serialize};

use super::{ConstraintSpec, Field, FramePair, FrameSequence};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// A scalar in a pair document: a bare number over ℝ, `[re, im]` over ℂ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Real(f64),
    Complex([f64; 2]),
}

impl JsonScalar {
    fn encode(z: Scalar, field: Field) -> Self {
        match field {
            Field::Real => JsonScalar::Real(z.re),
            Field::Complex => JsonScalar::Complex([z.re, z.im]),
        }
    }

    fn decode(self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (JsonScalar::Real(x), _) => Ok(Scalar::new(x, 0.0)),
            (JsonScalar::Complex([re, im]), Field::Complex) => Ok(Scalar::new(re, im)),
            (JsonScalar::Complex(_), Field::Real) => Err(Error::Invalid(
                "complex entry in a real-field document".into(),
            )),
        }
    }
}

/// On-disk frame-pair document.
///
/// ```json
/// {"field": "R", "d": 1, "N": 2, "F": [[1.0], [3.0]], "G": [[2.0], [-1.0]], "alpha": [2.0, -3.0]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub field: Field,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "F")]
    pub f: Vec<Vec<JsonScalar>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<JsonScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<JsonScalar>>,
}

impl PairDocument {
    pub fn from_pair(pair: &FramePair, alpha: Option<&ConstraintSpec>) -> Self {
        let field = pair.field();
        let enc = |seq: &FrameSequence| -> Vec<Vec<JsonScalar>> {
            seq.vectors()
                .iter()
                .map(|v| v.iter().map(|&z| JsonScalar::encode(z, field)).collect())
                .collect()
        };
        // alpha keeps its imaginary part even for real pairs so that an
        // inconsistent constraint is not silently rounded away
        let alpha_field = match alpha {
            Some(a) if field == Field::Real && !a.is_real() => Field::Complex,
            _ => field,
        };
        Self {
            field,
            d: pair.dim(),
            n: pair.len(),
            f: enc(pair.f()),
            g: enc(pair.g()),
            alpha: alpha.map(|a| {
                a.alpha()
                    .iter()
                    .map(|&z| JsonScalar::encode(z, alpha_field))
                    .collect()
            }),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("malformed pair document: {e}")))
    }

    /// Pretty-printed JSON with a trailing newline; floats use the shortest
    /// representation that round-trips exactly.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialises");
        s.push('\n');
        s
    }

    pub fn to_pair(&self) -> Result<(FramePair, Option<ConstraintSpec>)> {
        let field = self.field;
        let decode_seq = |rows: &[Vec<JsonScalar>], name: &str| -> Result<FrameSequence> {
            if rows.len() != self.n {
                return Err(Error::Invalid(format!(
                    "{name} has {} vectors, N = {}",
                    rows.len(),
                    self.n
                )));
            }
            let vectors = rows
                .iter()
                .map(|r| {
                    if r.len() != self.d {
                        return Err(Error::Invalid(format!(
                            "{name} vector of length {}, d = {}",
                            r.len(),
                            self.d
                        )));
                    }
                    r.iter()
                        .map(|&x| x.decode(field))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FrameSequence::new(field, self.d, vectors)
        };
        let pair = FramePair::new(decode_seq(&self.f, "F")?, decode_seq(&self.g, "G")?)?;
        let alpha = match &self.alpha {
            None => None,
            Some(a) => {
                if a.len() != self.n {
                    return Err(Error::Invalid(format!(
                        "alpha has {} entries, N = {}",
                        a.len(),
                        self.n
                    )));
                }
                let values = a
                    .iter()
                    .map(|&x| x.decode(Field::Complex))
                    .collect::<Result<Vec<_>>>()?;
                Some(ConstraintSpec::new(values)?)
            }
        };
        Ok((pair, alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::fixtures::{by_name, FIXTURE_NAMES};
    use proptest::prelude::*;

    #[test]
    fn fixtures_round_trip_byte_identically() {
        for name in FIXTURE_NAMES {
            let (p, a) = by_name(name).unwrap();
            let text = PairDocument::from_pair(&p, Some(&a)).to_json();
            let doc = PairDocument::parse(&text).unwrap();
            assert_eq!(doc.to_json(), text, "{name}");
            let (p2, a2) = doc.to_pair().unwrap();
            assert_eq!(p2, p);
            assert_eq!(a2.unwrap(), a);
        }
    }

    #[test]
    fn complex_entries_are_pairs() {
        let (p, a) = by_name("FX-IMAG").unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&PairDocument::from_pair(&p, Some(&a)).to_json()).unwrap();
        assert_eq!(v["field"], "C");
        assert_eq!(v["G"][0][0], serde_json::json!([0.0, 1.0]));
        assert_eq!(v["alpha"][0], serde_json::json!([0.0, -1.0]));
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(PairDocument::parse("{\"field\": \"R\", \"d\": 1").is_err());
        assert!(PairDocument::parse(
            "{\"field\": \"Q\", \"d\": 1, \"N\": 1, \"F\": [[1]], \"G\": [[1]]}"
        )
        .is_err());
        let doc = PairDocument::parse(
            "{\"field\": \"R\", \"d\": 2, \"N\": 1, \"F\": [[1]], \"G\": [[1, 0]]}",
        )
        .unwrap();
        assert!(doc.to_pair().is_err());
        let doc = PairDocument::parse(
            "{\"field\": \"R\", \"d\": 1, \"N\": 1, \"F\": [[[1, 2]]], \"G\": [[1]]}",
        )
        .unwrap();
        assert!(doc.to_pair().is_err());
        let doc = PairDocument::parse(
            "{\"field\": \"R\", \"d\": 1, \"N\": 2, \"F\": [[1]], \"G\": [[1]]}",
        )
        .unwrap();
        assert!(doc.to_pair().is_err());
    }

    proptest! {
        #[test]
        fn random_documents_round_trip(seed in 0u64..500, d in 1usize..5, n in 1usize..6, complex in any::<bool>()) {
            let field = if complex { Field::Complex } else { Field::Real };
            let p = FramePair::random(field, d, n, seed).unwrap();
            let text = PairDocument::from_pair(&p, None).to_json();
            let doc = PairDocument::parse(&text).unwrap();
            prop_assert_eq!(doc.to_json(), text);
            prop_assert_eq!(doc.to_pair().unwrap().0, p);
        }
    }
}
