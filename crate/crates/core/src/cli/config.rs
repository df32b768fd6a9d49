//! Run configuration: a TOML document with every number written as an exact
//! string, validated before any computation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclotomic::{MultiplicityMap, QuotientOptions, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::linalg::PivotOrder;
use crate::quiver::{check_lambda_tuple, LambdaTuple, DEFAULT_SEARCH_BOUND};
use crate::scalars::{Field, Params, Scalar};
use crate::vqha::beta_from_seeds;
use crate::weyl::{fmt_tuple, Flavor, Tuple};

pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_PHI_PAIRS: usize = 300;
pub const DEFAULT_PROBE_DEGREE: u32 = 4;
pub const DEFAULT_MAX_YDEG: u32 = 2;
pub const DEFAULT_SERIES_ORDER: usize = 20;
pub const DEFAULT_SEED: u64 = 1;

/// Numerical knobs; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunOptions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<i32>,
    /// Random products compared against the polynomial representation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Random pairs used to test that `phi` is multiplicative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_degree: Option<u32>,
    /// Bound on `|m|` for basis-word windows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ydeg: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_order: Option<usize>,
}

/// The configuration document as written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// `"rationals"` or an odd prime such as `"13"`.
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default = "default_p")]
    pub p: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<Vec<String>>,
    /// Explicit tuple set; must be a union of type B orbits.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub multiplicities: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default)]
    pub options: RunOptions,
}

fn default_field() -> String {
    "rationals".into()
}

fn default_p() -> String {
    "1".into()
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: default_field(),
            p: default_p(),
            q: None,
            lambda: Vec::new(),
            n: None,
            seeds: Vec::new(),
            beta: Vec::new(),
            multiplicities: BTreeMap::new(),
            suites: Vec::new(),
            format: None,
            options: RunOptions::default(),
        }
    }
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub params: Params,
    pub lambda: Option<LambdaTuple>,
    pub n: usize,
    pub seeds: Vec<Tuple>,
    pub beta: Vec<Tuple>,
    pub m: Option<MultiplicityMap>,
    pub quotient: QuotientOptions,
    pub truncation: Option<usize>,
    pub samples: usize,
    pub phi_pairs: usize,
    pub seed: u64,
    pub probe_degree: u32,
    pub max_ydeg: u32,
    pub series_order: usize,
}

pub fn parse_field(s: &str) -> Result<Field> {
    match s.trim().to_ascii_lowercase().as_str() {
        "rationals" | "q" | "qq" => Ok(Field::Rationals),
        other => {
            let p: u64 = other
                .parse()
                .map_err(|_| Error::Config(format!("field {s:?} is neither \"rationals\" nor a prime")))?;
            Field::new_prime(p)
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn content_hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn field(&self) -> Result<Field> {
        parse_field(&self.field)
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let field = self.field()?;
        let q = self.q.as_deref().ok_or_else(|| Error::Config("q is required".into()))?;
        let params = Params::parse(field, &self.p, q)?;
        let parse_tuple = |t: &Vec<String>| -> Result<Tuple> { t.iter().map(|x| field.parse(x)).collect() };

        let lambda = if self.lambda.is_empty() {
            None
        } else {
            let entries: Vec<Scalar> = self.lambda.iter().map(|x| field.parse(x)).collect::<Result<_>>()?;
            Some(check_lambda_tuple(&params, &entries, DEFAULT_SEARCH_BOUND)?)
        };
        let in_support = |x: &Scalar| -> Result<()> {
            if x.is_zero() {
                return Err(Error::Config("residues must be nonzero".into()));
            }
            if let Some(l) = &lambda {
                if !l.contains(&params, x)? {
                    return Err(Error::Config(format!("residue {x} is not in any component of lambda")));
                }
            }
            Ok(())
        };

        let seeds: Vec<Tuple> = self.seeds.iter().map(parse_tuple).collect::<Result<_>>()?;
        let explicit: Vec<Tuple> = self.beta.iter().map(parse_tuple).collect::<Result<_>>()?;
        let mut beta = beta_from_seeds(&seeds, Flavor::B);
        if !explicit.is_empty() {
            let closure = beta_from_seeds(&explicit, Flavor::B);
            let mut given = explicit.clone();
            given.sort();
            given.dedup();
            if closure != given {
                let missing = closure.iter().find(|t| !given.contains(t)).expect("closure is larger");
                return Err(Error::Config(format!("beta is not a union of orbits: {} is missing", fmt_tuple(missing))));
            }
            beta = beta_from_seeds(&[beta, given].concat(), Flavor::B);
        }
        let n = match self.n {
            Some(n) => n,
            None => beta.first().map_or(0, Vec::len),
        };
        for t in &beta {
            if t.len() != n {
                return Err(Error::Config(format!("tuple {} does not have length n = {n}", fmt_tuple(t))));
            }
            t.iter().try_for_each(in_support)?;
        }

        let m = if self.multiplicities.is_empty() {
            None
        } else {
            let entries: Vec<(Scalar, u32)> =
                self.multiplicities.iter().map(|(k, v)| Ok((field.parse(k)?, *v))).collect::<Result<_>>()?;
            for (x, _) in &entries {
                in_support(x)?;
            }
            Some(MultiplicityMap::new(entries)?)
        };

        let o = &self.options;
        let degree_cap = o.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
        if degree_cap < 0 {
            return Err(Error::Config("degree cap must be nonnegative".into()));
        }
        Ok(Resolved {
            params,
            lambda,
            n,
            seeds,
            beta,
            m,
            quotient: QuotientOptions { pivot: PivotOrder::Highest, degree_cap },
            truncation: o.truncation,
            samples: o.samples.unwrap_or(DEFAULT_SAMPLES),
            phi_pairs: o.phi_pairs.unwrap_or(DEFAULT_PHI_PAIRS),
            seed: o.seed.unwrap_or(DEFAULT_SEED),
            probe_degree: o.probe_degree.unwrap_or(DEFAULT_PROBE_DEGREE),
            max_ydeg: o.max_ydeg.unwrap_or(DEFAULT_MAX_YDEG),
            series_order: o.series_order.unwrap_or(DEFAULT_SERIES_ORDER),
        })
    }
}

impl Resolved {
    pub fn multiplicities(&self) -> Result<&MultiplicityMap> {
        self.m.as_ref().ok_or_else(|| Error::Config("this command needs a multiplicities table".into()))
    }

    pub fn require_beta(&self) -> Result<&[Tuple]> {
        if self.beta.is_empty() {
            return Err(Error::Config("this command needs seeds or beta".into()));
        }
        Ok(&self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
field = "13"
q = "2"
lambda = ["1"]
seeds = [["1", "4"]]

[multiplicities]
"1" = 1
"4" = 1
"10" = 1

[options]
truncation = 6
"#;

    #[test]
    fn parses_and_resolves() {
        let c = RunConfig::from_toml(SAMPLE).unwrap();
        let r = c.resolve().unwrap();
        assert_eq!(r.n, 2);
        assert_eq!(r.beta.len(), 4);
        assert_eq!(r.m.as_ref().unwrap().total(), 3);
        assert_eq!(r.truncation, Some(6));
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = RunConfig::from_toml(SAMPLE).unwrap();
        let b = RunConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        let mut c = a.clone();
        c.q = Some("5".into());
        assert_ne!(a.content_hash(), c.content_hash());
    }

    #[test]
    fn rejects_bad_input() {
        let bad = |t: &str| RunConfig::from_toml(t).and_then(|c| c.resolve()).is_err();
        assert!(bad("field = \"13\"\nq = \"1\""));
        assert!(bad("field = \"12\"\nq = \"2\""));
        assert!(bad("field = \"13\"\nq = \"2\"\np = \"2\""));
        assert!(bad("field = \"13\"\nq = \"2\"\nunknown = 1"));
        assert!(bad("field = \"13\"\nq = \"2\"\nlambda = [\"1\", \"4\"]"));
        assert!(bad("field = \"13\"\nq = \"2\"\nlambda = [\"1\"]\nseeds = [[\"1\", \"2\"]]"));
        assert!(bad("field = \"13\"\nq = \"2\"\nbeta = [[\"1\", \"4\"]]"));
        assert!(bad("field = \"13\"\nq = \"2.5\""));
    }

    #[test]
    fn rationals_accept_fractions() {
        let c = RunConfig::from_toml("q = \"2\"\nseeds = [[\"1\", \"1/4\"]]\n[multiplicities]\n\"1/4\" = 2").unwrap();
        let r = c.resolve().unwrap();
        assert_eq!(r.params.field(), Field::Rationals);
        assert_eq!(r.m.unwrap().total(), 2);
    }
}
