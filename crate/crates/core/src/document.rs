//! JSON seed documents.
//!
//! ```json
//! {
//!   "schema": "gencluster-seed/1",
//!   "rank": 2,
//!   "degrees": [2, 1],
//!   "b": [[0, -1], [1, 0]],
//!   "semifield": { "kind": "universal", "generators": ["y1", "y2", "z"] },
//!   "y": [
//!     { "numerator": [{ "multiplicity": 1, "monomial": { "y1": 1 } }] },
//!     { "numerator": [{ "multiplicity": 1, "monomial": { "y2": 1 } }] }
//!   ],
//!   "z": [
//!     [[{ "multiplicity": 1, "monomial": {} }],
//!      [{ "multiplicity": 1, "monomial": { "z": 1 } }],
//!      [{ "multiplicity": 1, "monomial": {} }]],
//!     [[{ "multiplicity": 1, "monomial": {} }],
//!      [{ "multiplicity": 1, "monomial": {} }]]
//!   ]
//! }
//! ```
//!
//! `d` (positive integers) is optional. Each `y` entry is a quotient of
//! two sums of terms; `denominator` defaults to 1. Each exchange
//! polynomial is a list of coefficients from the constant term up, every
//! coefficient a list of terms (empty for 0).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{ExchangeMatrix, GeneralizedSeed};
use crate::polyring::SeedTable;
use crate::semifield::{ExchangePolynomial, Flavor, GroupRingElement, SemifieldElement, SemifieldKind};

pub const SCHEMA: &str = "gencluster-seed/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub multiplicity: u64,
    pub monomial: BTreeMap<String, i64>,
}

impl Term {
    pub fn unit() -> Self {
        Term {
            multiplicity: 1,
            monomial: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        Term {
            multiplicity: 1,
            monomial: BTreeMap::from([(name.to_string(), 1)]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expression {
    pub numerator: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<Term>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemifieldName {
    Trivial,
    Tropical,
    Universal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemifieldSpec {
    pub kind: SemifieldName,
    #[serde(default)]
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedDocument {
    pub schema: String,
    pub rank: usize,
    pub degrees: Vec<usize>,
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
    pub semifield: SemifieldSpec,
    pub y: Vec<Expression>,
    pub z: Vec<Vec<Vec<Term>>>,
}

impl SeedDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: SeedDocument = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), strip_position(&e)))?;
        if doc.schema != SCHEMA {
            return Err(Error::parse("schema", format!("expected \"{SCHEMA}\", found \"{}\"", doc.schema)));
        }
        Ok(doc)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the initial seed.
    pub fn to_seed(&self) -> Result<GeneralizedSeed> {
        let n = self.rank;
        if n == 0 {
            return Err(Error::parse("rank", "must be positive"));
        }
        if self.degrees.len() != n {
            return Err(Error::parse("degrees", format!("expected {n} entries")));
        }
        if let Some(i) = self.degrees.iter().position(|&r| r == 0) {
            return Err(Error::parse(format!("degrees[{i}]"), "must be positive"));
        }
        if self.b.len() != n {
            return Err(Error::parse("b", format!("expected {n} rows")));
        }
        if let Some(i) = self.b.iter().position(|row| row.len() != n) {
            return Err(Error::parse(format!("b[{i}]"), format!("expected {n} entries")));
        }
        let d = match &self.d {
            None => None,
            Some(d) => {
                if d.len() != n {
                    return Err(Error::parse("d", format!("expected {n} entries")));
                }
                Some(d.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            }
        };
        let b = ExchangeMatrix::new(self.b.clone(), d).map_err(|e| Error::parse("b", e.to_string()))?;

        let flavor = match self.semifield.kind {
            SemifieldName::Trivial => Flavor::Trivial,
            SemifieldName::Tropical => Flavor::Tropical,
            SemifieldName::Universal => Flavor::Universal,
        };
        let gens = &self.semifield.generators;
        let table = Arc::new(
            SeedTable::new(&self.degrees, gens).map_err(|e| Error::parse("semifield.generators", e.to_string()))?,
        );
        let kind = SemifieldKind::over_table(flavor, gens, &table.table)
            .map_err(|e| Error::parse("semifield", e.to_string()))?;

        if self.y.len() != n {
            return Err(Error::parse("y", format!("expected {n} entries")));
        }
        let y = self
            .y
            .iter()
            .enumerate()
            .map(|(i, e)| expression(&kind, e, &format!("y[{i}]")))
            .collect::<Result<Vec<_>>>()?;

        if self.z.len() != n {
            return Err(Error::parse("z", format!("expected {n} entries")));
        }
        let mut z = Vec::with_capacity(n);
        for (i, coeffs) in self.z.iter().enumerate() {
            if coeffs.len() != self.degrees[i] + 1 {
                return Err(Error::parse(
                    format!("z[{i}]"),
                    format!("expected {} coefficients", self.degrees[i] + 1),
                ));
            }
            let cs = coeffs
                .iter()
                .enumerate()
                .map(|(l, terms)| group_ring(&kind, terms, &format!("z[{i}][{l}]")))
                .collect::<Result<Vec<_>>>()?;
            z.push(ExchangePolynomial::new(cs).map_err(|e| Error::parse(format!("z[{i}]"), e.to_string()))?);
        }
        GeneralizedSeed::initial(table, kind, y, z, b).map_err(|e| Error::parse("seed", e.to_string()))
    }

    /// Document of case 1 or 2: universal coefficients `y1..yn` and one
    /// generator `z{i}_{l}` per inner exchange coefficient.
    pub fn for_case(case: u32) -> Result<Self> {
        let (b, r) = crate::cases::case_data(case)?;
        Ok(Self::universal(b.rows().to_vec(), &r))
    }

    /// Generic document with universal coefficients.
    pub fn universal(b: Vec<Vec<i64>>, r: &[usize]) -> Self {
        let n = r.len();
        let mut generators: Vec<String> = (0..n).map(|i| format!("y{}", i + 1)).collect();
        let mut z = Vec::with_capacity(n);
        for (i, &ri) in r.iter().enumerate() {
            let mut coeffs = vec![vec![Term::unit()]];
            for l in 1..ri {
                let name = format!("z{}_{}", i + 1, l);
                coeffs.push(vec![Term::var(&name)]);
                generators.push(name);
            }
            coeffs.push(vec![Term::unit()]);
            z.push(coeffs);
        }
        SeedDocument {
            schema: SCHEMA.to_string(),
            rank: n,
            degrees: r.to_vec(),
            b,
            d: None,
            semifield: SemifieldSpec {
                kind: SemifieldName::Universal,
                generators,
            },
            y: (0..n)
                .map(|i| Expression {
                    numerator: vec![Term::var(&format!("y{}", i + 1))],
                    denominator: None,
                })
                .collect(),
            z,
        }
    }
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(p) => s[..p].to_string(),
        None => s,
    }
}

fn monomial(kind: &Arc<SemifieldKind>, m: &BTreeMap<String, i64>, loc: &str) -> Result<SemifieldElement> {
    let mut exps = vec![0i64; kind.generators().len()];
    for (name, &e) in m {
        let Some(i) = kind.generators().iter().position(|g| g == name) else {
            return Err(Error::parse(loc, format!("unknown generator '{name}'")));
        };
        exps[i] = e;
    }
    SemifieldElement::monomial(kind, &exps).map_err(|e| Error::parse(loc, e.to_string()))
}

fn group_ring(kind: &Arc<SemifieldKind>, terms: &[Term], loc: &str) -> Result<GroupRingElement> {
    let ts = terms
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let loc = format!("{loc}[{k}]");
            if t.multiplicity == 0 {
                return Err(Error::parse(&loc, "multiplicity must be positive"));
            }
            Ok((BigInt::from(t.multiplicity), monomial(kind, &t.monomial, &loc)?))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupRingElement::new(kind, ts).map_err(|e| Error::parse(loc, e.to_string()))
}

fn np_sum(kind: &Arc<SemifieldKind>, terms: &[Term], loc: &str) -> Result<SemifieldElement> {
    if terms.is_empty() {
        return Err(Error::parse(loc, "empty sum"));
    }
    let g = group_ring(kind, terms, loc)?;
    Ok(g.project_np()
        .map_err(|e| Error::parse(loc, e.to_string()))?
        .expect("nonempty sum"))
}

fn expression(kind: &Arc<SemifieldKind>, e: &Expression, loc: &str) -> Result<SemifieldElement> {
    let num = np_sum(kind, &e.numerator, &format!("{loc}.numerator"))?;
    match &e.denominator {
        None => Ok(num),
        Some(d) => num
            .div(&np_sum(kind, d, &format!("{loc}.denominator"))?)
            .map_err(|e| Error::parse(loc, e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::case_seed;

    #[test]
    fn case_documents_build_the_case_seeds() {
        for case in [1, 2] {
            let doc = SeedDocument::for_case(case).unwrap();
            let seed = doc.to_seed().unwrap();
            assert!(seed.equals(&case_seed(case).unwrap()));
        }
    }

    #[test]
    fn round_trip() {
        let doc = SeedDocument::for_case(2).unwrap();
        let text = doc.render();
        let again = SeedDocument::parse(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.render(), text);
    }

    #[test]
    fn errors_carry_locations() {
        let mut doc = SeedDocument::for_case(1).unwrap();
        doc.z[0][1][0].monomial.insert("w".into(), 1);
        let err = doc.to_seed().unwrap_err();
        assert_eq!(err.to_string(), "parse error at z[0][1][0]: unknown generator 'w'");

        let err = SeedDocument::parse("{\"schema\": 3}").unwrap_err();
        assert!(err.to_string().starts_with("parse error at line 1 column"));

        let mut doc = SeedDocument::for_case(1).unwrap();
        doc.schema = "other".into();
        let err = SeedDocument::parse(&doc.render()).unwrap_err();
        assert!(err.to_string().contains("schema"));
    }

    #[test]
    fn tropical_document() {
        let mut doc = SeedDocument::for_case(1).unwrap();
        doc.semifield.kind = SemifieldName::Tropical;
        doc.y[1].denominator = Some(vec![Term::var("y1"), Term::unit()]);
        let seed = doc.to_seed().unwrap();
        let s = seed.mutate(0).unwrap();
        assert_eq!(s.rank(), 2);
    }
}
