//! Multiplicity maps `m : S -> Z>=0` with finite support.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityMap {
    m: BTreeMap<Scalar, u32>,
}

impl MultiplicityMap {
    /// Builds a map from `(residue, multiplicity)` pairs; zero entries are
    /// dropped and repeated residues are rejected.
    pub fn new(entries: impl IntoIterator<Item = (Scalar, u32)>) -> Result<MultiplicityMap> {
        let mut m = BTreeMap::new();
        for (x, k) in entries {
            if x.is_zero() {
                return Err(Error::Precondition("multiplicity given for the residue 0".into()));
            }
            if m.contains_key(&x) {
                return Err(Error::Precondition(format!("residue {x} listed twice")));
            }
            if k > 0 {
                m.insert(x, k);
            }
        }
        Ok(MultiplicityMap { m })
    }

    pub fn get(&self, x: &Scalar) -> u32 {
        self.m.get(x).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Scalar, u32> {
        &self.m
    }

    /// `sum_i m(i)`.
    pub fn total(&self) -> u32 {
        self.m.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.iter().all(|(x, k)| self.get(&inv(x)) == *k)
    }

    /// `m'(i) = min(m(i), m(i^-1))`.
    pub fn symmetrize_min(&self) -> MultiplicityMap {
        self.pointwise(u32::min)
    }

    /// `m~(i) = max(m(i), m(i^-1))`.
    pub fn symmetrize_max(&self) -> MultiplicityMap {
        self.pointwise(u32::max)
    }

    fn pointwise(&self, op: fn(u32, u32) -> u32) -> MultiplicityMap {
        let mut m = BTreeMap::new();
        for x in self.m.keys() {
            for y in [x.clone(), inv(x)] {
                let k = op(self.get(&y), self.get(&inv(&y)));
                if k > 0 {
                    m.insert(y, k);
                }
            }
        }
        MultiplicityMap { m }
    }

    /// `m(i) <= o(i)` for every residue.
    pub fn dominated_by(&self, o: &MultiplicityMap) -> bool {
        self.m.iter().all(|(x, k)| *k <= o.get(x))
    }
}

fn inv(x: &Scalar) -> Scalar {
    x.inv().expect("residues are nonzero")
}

impl fmt::Display for MultiplicityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|(x, k)| format!("{x}:{k}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    #[test]
    fn symmetrizations() {
        let f = Field::Prime(13);
        let lam = f.from_i64(3);
        let lam_inv = lam.inv().unwrap();
        let m = MultiplicityMap::new([(lam.clone(), 2)]).unwrap();
        let lo = m.symmetrize_min();
        let hi = m.symmetrize_max();
        assert_eq!(lo.get(&lam), 0);
        assert_eq!(lo.get(&lam_inv), 0);
        assert_eq!(hi.get(&lam), 2);
        assert_eq!(hi.get(&lam_inv), 2);
        assert!(lo.is_symmetric() && hi.is_symmetric() && !m.is_symmetric());
        assert!(lo.dominated_by(&m) && m.dominated_by(&hi));
        let s = MultiplicityMap::new([(lam.clone(), 1), (lam_inv.clone(), 1)]).unwrap();
        assert_eq!(s.symmetrize_min(), s);
        assert_eq!(s.symmetrize_max(), s);
        assert!(MultiplicityMap::new([(lam.clone(), 1), (lam, 2)]).is_err());
    }
}
