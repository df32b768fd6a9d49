//! Exact sparse linear algebra: incremental echelon forms, rank, and
//! solving square systems.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Which entry of a row is its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// The smallest column index.
    #[default]
    Lowest,
    /// The largest column index.
    Highest,
}

impl PivotOrder {
    fn lead(self, v: &SparseVec) -> Option<usize> {
        match self {
            PivotOrder::Lowest => v.keys().next().copied(),
            PivotOrder::Highest => v.keys().next_back().copied(),
        }
    }
}

pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    for (k, v) in x {
        let t = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(*k, t);
                }
            }
        }
    }
}

/// Rows in echelon form with monic pivots, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    order: PivotOrder,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(order: PivotOrder) -> Echelon {
        Echelon { order, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Remainder of `v` with no entries in pivot columns; it is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let next = match self.order {
                PivotOrder::Lowest => v.keys().find(|k| self.pivot_row.contains_key(k)).copied(),
                PivotOrder::Highest => v.keys().rev().find(|k| self.pivot_row.contains_key(k)).copied(),
            };
            let col = match next {
                Some(c) => c,
                None => return v,
            };
            let c = -&v[&col];
            axpy(&mut v, &c, &self.rows[self.pivot_row[&col]]);
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let col = match self.order.lead(&r) {
            Some(c) => c,
            None => return false,
        };
        let inv = r[&col].inv().expect("nonzero pivot");
        let row: SparseVec = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(PivotOrder::Lowest);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Dense square matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, n: usize) -> Matrix {
        Matrix { field, n, data: vec![field.zero(); n * n] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for k in 0..n {
            m.set(k, k, field.one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.n + c] = x;
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(self.field, n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + &(a * b);
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
            if piv != col {
                for c in 0..n {
                    a.data.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv().expect("nonzero pivot");
            for c in 0..n {
                let x = a.get(col, c) * &p;
                a.set(col, c, x);
                let y = inv.get(col, c) * &p;
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = a.get(r, c) - &(&f * a.get(col, c));
                    a.set(r, c, x);
                    let y = inv.get(r, c) - &(&f * inv.get(col, c));
                    inv.set(r, c, y);
                }
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(k, x)| (k, f.from_i64(x))).filter(|(_, x)| !x.is_zero()).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let f = Field::Rationals;
        let a = v(f, &[(0, 1), (1, 2)]);
        let b = v(f, &[(1, 1), (2, 1)]);
        let c = v(f, &[(0, 1), (1, 3), (2, 1)]);
        assert_eq!(rank(&[a.clone(), b.clone(), c.clone()]), 2);
        for order in [PivotOrder::Lowest, PivotOrder::Highest] {
            let mut e = Echelon::new(order);
            assert!(e.insert(&a));
            assert!(e.insert(&b));
            assert!(!e.insert(&c));
            assert!(e.contains(&c));
            let r = e.reduce(&v(f, &[(0, 1)]));
            assert!(r.keys().all(|k| !e.is_pivot(*k)));
        }
    }

    #[test]
    fn remainder_is_independent_of_insertion_order() {
        let f = Field::Prime(7);
        let rows = [v(f, &[(0, 1), (2, 3)]), v(f, &[(1, 2), (2, 1), (3, 1)]), v(f, &[(0, 2), (1, 1)])];
        let probe = v(f, &[(0, 5), (1, 1), (2, 4), (3, 6)]);
        let mut e1 = Echelon::new(PivotOrder::Lowest);
        let mut e2 = Echelon::new(PivotOrder::Lowest);
        for r in &rows {
            e1.insert(r);
        }
        for r in rows.iter().rev() {
            e2.insert(r);
        }
        assert_eq!(e1.reduce(&probe), e2.reduce(&probe));
    }

    #[test]
    fn matrix_inverse() {
        let f = Field::Rationals;
        let mut m = Matrix::zero(f, 2);
        m.set(0, 0, f.from_i64(2));
        m.set(0, 1, f.from_i64(1));
        m.set(1, 0, f.from_i64(1));
        m.set(1, 1, f.from_i64(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        assert!(Matrix::zero(f, 2).inverse().is_err());
    }
}
