//! Exact scalars, deformation parameters and truncated power series.

mod field;
pub mod series;

pub use field::{Field, Scalar};
pub use series::{
    eval_series2_on_nilpotent, eval_series_on_nilpotent, series_checks, series_comp_inverse, series_f,
    NilpotentRing, TruncSeries, TruncSeries2,
};

use crate::error::{Error, Result};

/// The deformation parameters `p` (with `p^2 = 1`) and `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    field: Field,
    p: Scalar,
    q: Scalar,
    q_inv: Scalar,
}

impl Params {
    pub fn new(field: Field, p: Scalar, q: Scalar) -> Result<Params> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !field.contains(&p) || !field.contains(&q) {
            return Err(Error::InvalidParams("parameters do not lie in the field".into()));
        }
        if !(&p * &p).is_one() {
            return Err(Error::InvalidParams(format!("p = {p} does not satisfy p^2 = 1")));
        }
        let q_inv = q
            .inv()
            .ok_or_else(|| Error::InvalidParams("q must be nonzero".into()))?;
        if (&q * &q).is_one() {
            return Err(Error::InvalidParams(format!("q = {q} satisfies q^2 = 1")));
        }
        Ok(Params { field, p, q, q_inv })
    }

    /// Parses `p` and `q` from exact strings.
    pub fn parse(field: Field, p: &str, q: &str) -> Result<Params> {
        Params::new(field, field.parse(p)?, field.parse(q)?)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.q_inv
    }

    pub fn q2(&self) -> Scalar {
        &self.q * &self.q
    }

    /// The least `k > 0` with `q^(2k) = 1`, if any.
    pub fn e(&self) -> Option<u64> {
        match self.field {
            Field::Rationals => None,
            Field::Prime(p) => {
                let q2 = self.q2();
                let mut x = q2.clone();
                for k in 1..p {
                    if x.is_one() {
                        return Some(k);
                    }
                    x = &x * &q2;
                }
                None
            }
        }
    }
}
