//! Problem instances as read from JSON files.
//!
//! ```json
//! {"field": {"kind": "prime", "p": 32003}, "source": [7,2,2,2], "target": [1,0], "seed": 42}
//! ```
//!
//! `entries`, when present, is a `target × source` grid of polynomials, each a
//! list of `[i, j, k, coeff]` terms for `coeff x^i y^j z^k`. Coefficients are
//! integers or strings such as `"-3/4"`.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::graded::{random_instance, GradedMap, TwistSequence};
use crate::lefschetz::DEFAULT_SAMPLES;
use crate::poly::{HomogPoly, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Ratio(#[serde(with = "ratio_string")] (i64, i64)),
}

impl Coeff {
    pub fn to_elem<F: Field>(self, field: &F) -> Result<F::Elem> {
        let (n, d) = match self {
            Coeff::Int(n) => (n, 1),
            Coeff::Ratio(r) => r,
        };
        field.from_ratio(n, d).ok_or_else(|| {
            Error::Parse(format!(
                "coefficient {n}/{d} is undefined over {}",
                field.spec()
            ))
        })
    }
}

mod ratio_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &(i64, i64), s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.0, r.1))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(i64, i64), D::Error> {
        let s = String::deserialize(d)?;
        let bad = || de::Error::custom(format!("bad coefficient `{s}`"));
        let (n, den) = match s.split_once('/') {
            Some((n, den)) => (n.trim(), den.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok((n, den))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub usize, pub usize, pub usize, pub Coeff);

impl Term {
    pub fn monomial(&self) -> Monomial {
        Monomial {
            exps: [self.0, self.1, self.2],
        }
    }
}

/// Terms of one matrix entry. `null` and `[]` both mean zero.
pub type EntryLiteral = Option<Vec<Term>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Instance {
    #[serde(default)]
    pub field: FieldSpec,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<EntryLiteral>>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i64>,
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

impl Instance {
    /// Generic entries, default field and sampling.
    pub fn generic(source: Vec<i64>, target: Vec<i64>, seed: u64) -> Self {
        Instance {
            field: FieldSpec::default(),
            source,
            target,
            entries: None,
            seed,
            samples: DEFAULT_SAMPLES,
            max_degree: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Instance = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn twists(&self) -> Result<(TwistSequence, TwistSequence)> {
        Ok((
            TwistSequence::new(self.source.clone())?,
            TwistSequence::new(self.target.clone())?,
        ))
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        let (src, tgt) = self.twists()?;
        if src.len() != tgt.len() + 2 {
            return Err(Error::Shape(format!(
                "source has {} summands and target {}; need n + 2 and n",
                src.len(),
                tgt.len()
            )));
        }
        if self.samples == 0 {
            return Err(Error::Parse("samples must be positive".into()));
        }
        let Some(grid) = &self.entries else {
            return Ok(());
        };
        if grid.len() != tgt.len() || grid.iter().any(|row| row.len() != src.len()) {
            return Err(Error::Shape(format!(
                "entries must be a {} x {} grid",
                tgt.len(),
                src.len()
            )));
        }
        for (j, row) in grid.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                let want = self.source[i] - self.target[j];
                for term in entry.iter().flatten() {
                    let got = term.monomial().degree() as i64;
                    if got != want {
                        return Err(Error::Degree(format!(
                            "entry ({j},{i}) has a term of degree {got}, expected {want}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the map from explicit entries, or draws generic ones from `rng`.
    pub fn build_map<F: Field, R: Rng + ?Sized>(
        &self,
        field: &F,
        rng: &mut R,
    ) -> Result<GradedMap<F>> {
        let (src, tgt) = self.twists()?;
        let Some(grid) = &self.entries else {
            return random_instance(field, &src, &tgt, rng);
        };
        let mut polys = Vec::with_capacity(grid.len());
        for (j, row) in grid.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (i, entry) in row.iter().enumerate() {
                let deg = self.source[i] - self.target[j];
                let terms = entry.as_deref().unwrap_or_default();
                if deg < 0 {
                    out.push(None);
                    if !terms.is_empty() {
                        return Err(Error::Degree(format!("entry ({j},{i}) must be zero")));
                    }
                    continue;
                }
                let terms = terms
                    .iter()
                    .map(|t| Ok((t.monomial(), t.3.to_elem(field)?)))
                    .collect::<Result<Vec<_>>>()?;
                out.push(Some(HomogPoly::from_terms(field, deg as usize, terms)?));
            }
            polys.push(out);
        }
        GradedMap::new(field.clone(), src, tgt, polys)
    }
}

pub fn parse_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text)
}

/// Terms of `p` in canonical order, as `[i, j, k, coeff]` JSON arrays.
pub fn poly_terms_json<F: Field>(field: &F, p: &HomogPoly<F::Elem>) -> serde_json::Value {
    p.terms(field)
        .map(|(m, c)| serde_json::json!([m.exps[0], m.exps[1], m.exps[2], field.to_json(c)]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn defaults_are_applied() {
        let i = Instance::from_json(r#"{"source": [7,2,2,2], "target": [1,0]}"#).unwrap();
        assert_eq!(i.field, FieldSpec::Prime { p: 32003 });
        assert_eq!(i.samples, 3);
        assert_eq!(i.seed, 0);
        assert!(i.entries.is_none());
    }

    #[test]
    fn full_header() {
        let i = Instance::from_json(
            r#"{"field": {"kind": "prime", "p": 32003}, "source": [7,2,2,2], "target": [1,0], "seed": 42}"#,
        )
        .unwrap();
        assert_eq!(i.source, vec![7, 2, 2, 2]);
        assert_eq!(i.target, vec![1, 0]);
        assert_eq!(i.seed, 42);
        let q = Instance::from_json(
            r#"{"field": {"kind": "rationals"}, "source": [1,1,1], "target": [0]}"#,
        )
        .unwrap();
        assert_eq!(q.field, FieldSpec::Rationals);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "not json",
            r#"{"source": [1,1,1]}"#,
            r#"{"source": [1,1,1], "target": [0], "colour": 3}"#,
            r#"{"source": [1,1,1], "target": [0], "samples": 0}"#,
        ] {
            assert!(
                matches!(Instance::from_json(bad), Err(Error::Parse(_))),
                "{bad}"
            );
        }
        let e = Instance::from_json(r#"{"source": [1,1], "target": [0,0]}"#);
        assert!(matches!(e, Err(Error::Shape(_))));
        let e = Instance::from_json(r#"{"source": [], "target": []}"#);
        assert!(matches!(e, Err(Error::Shape(_))));
    }

    #[test]
    fn entry_of_wrong_degree() {
        let text = r#"{"source": [5,5,5], "target": [0],
            "entries": [[[[2,0,0,1]], [[0,5,0,1]], [[0,0,5,1]]]]}"#;
        assert!(matches!(Instance::from_json(text), Err(Error::Degree(_))));
    }

    #[test]
    fn explicit_entries_over_both_fields() {
        let text = r#"{"source": [2,2,2], "target": [0],
            "entries": [[[[2,0,0,1]], [[0,2,0,"1/2"]], [[0,0,2,-3], [1,1,0,"2"]]]]}"#;
        let inst = Instance::from_json(text).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let gf = PrimeField::default();
        let m = inst.build_map(&gf, &mut rng).unwrap();
        let y2 = m.entry(0, 1).unwrap();
        assert_eq!(*y2.coeff(&Monomial { exps: [0, 2, 0] }), 16002);
        let q = inst.build_map(&Rationals, &mut rng).unwrap();
        let json = poly_terms_json(&Rationals, q.entry(0, 2).unwrap());
        assert_eq!(json, serde_json::json!([[1, 1, 0, 2], [0, 0, 2, -3]]));
        assert_eq!(
            poly_terms_json(&Rationals, q.entry(0, 1).unwrap()),
            serde_json::json!([[0, 2, 0, "1/2"]])
        );
    }

    #[test]
    fn undefined_coefficient_mod_p() {
        let text = r#"{"field": {"kind": "prime", "p": 7}, "source": [1,1,1], "target": [0],
            "entries": [[[[1,0,0,"1/7"]], [[0,1,0,1]], [[0,0,1,1]]]]}"#;
        let inst = Instance::from_json(text).unwrap();
        let e = inst.build_map(
            &PrimeField::new(7).unwrap(),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert!(matches!(e, Err(Error::Parse(_))));
    }

    #[test]
    fn negative_slots_must_be_empty() {
        let text = r#"{"source": [0,0,1], "target": [1],
            "entries": [[null, [], [[0,0,0,1]]]]}"#;
        let inst = Instance::from_json(text).unwrap();
        assert!(inst
            .build_map(&PrimeField::default(), &mut ChaCha8Rng::seed_from_u64(0))
            .is_ok());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"source":[2,2,2],"target":[0],"entries":[[[[2,0,0,1]],[[0,2,0,"1/2"]],null]],"seed":9}"#;
        let inst = Instance::from_json(text).unwrap();
        let again = Instance::from_json(&serde_json::to_string(&inst).unwrap()).unwrap();
        assert_eq!(inst, again);
    }
}
