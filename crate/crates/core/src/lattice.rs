//! Sublattices of Z^m with a canonical Hermite basis.
//!
//! Equality of lattices is literal equality of the stored basis, which is
//! sound because the basis is canonical. Quotients are computed through the
//! Smith form, coset representatives through Hermite reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{hnf_rows, smith_normal_form, IntMat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Isomorphism type of a finitely generated abelian group, as reported by
/// quotient computations: free rank plus invariant factors (each > 1, each
/// dividing the next).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientShape {
    pub free_rank: usize,
    pub invariants: Vec<BigInt>,
}

impl QuotientShape {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariants.is_empty()
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.free_rank == r && self.invariants.is_empty()
    }
}

impl std::fmt::Display for QuotientShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariants {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: Vec::new() }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::AmbientMismatch { left: ambient, right: bad.len() });
        }
        Ok(Lattice { ambient, basis: hnf_rows(rows, ambient) })
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut r = vec![BigInt::zero(); ambient];
                r[i] = BigInt::one();
                r
            })
            .collect();
        Lattice { ambient, basis: rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    fn pivot_col(row: &[BigInt]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
    }

    /// Coordinates of v in the Hermite basis, if v lies in the lattice.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut rem: Vec<BigInt> = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = Self::pivot_col(row);
            let (q, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in 0..self.ambient {
                    let sub = &q * &row[j];
                    rem[j] -= sub;
                }
            }
            coords.push(q);
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Lattice::from_rows(self.ambient, rows)
    }

    pub fn add_row(&self, v: &[BigInt]) -> Result<Lattice> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: v.len() });
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Lattice::from_rows(self.ambient, rows)
    }

    /// Canonical coset representative of v modulo this lattice: at every
    /// pivot column the representative lies in [0, pivot).
    pub fn reduce_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut rem: Vec<BigInt> = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot_col(row);
            let q = rem[p].div_floor(&row[p]);
            if !q.is_zero() {
                for j in 0..self.ambient {
                    let sub = &q * &row[j];
                    rem[j] -= sub;
                }
            }
        }
        rem
    }

    /// Shape of Z^ambient / self.
    pub fn ambient_quotient(&self) -> QuotientShape {
        if self.basis.is_empty() {
            return QuotientShape { free_rank: self.ambient, invariants: Vec::new() };
        }
        let m = IntMat::from_rows(self.basis.clone()).expect("canonical basis is rectangular");
        let sm = smith_normal_form(&m);
        let invariants = sm
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        QuotientShape { free_rank: self.ambient - sm.rank(), invariants }
    }

    /// Shape of self / sub. Requires sub to be contained in self.
    pub fn quotient_by(&self, sub: &Lattice) -> Result<QuotientShape> {
        if self.ambient != sub.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: sub.ambient });
        }
        let mut rows = Vec::with_capacity(sub.basis.len());
        for r in &sub.basis {
            let coords = self
                .coords_of(r)
                .ok_or_else(|| Error::DimensionMismatch("quotient_by: not a sublattice".into()))?;
            rows.push(coords);
        }
        let k = self.basis.len();
        if rows.is_empty() {
            return Ok(QuotientShape { free_rank: k, invariants: Vec::new() });
        }
        let m = IntMat::from_rows(rows).expect("coordinate rows are rectangular");
        let sm = smith_normal_form(&m);
        let invariants = sm
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        Ok(QuotientShape { free_rank: k - sm.rank(), invariants })
    }

    /// Order of v + self in Z^ambient / self; None when the class is free.
    pub fn order_in_quotient(&self, v: &[BigInt]) -> Option<BigInt> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        if self.basis.is_empty() {
            return if v.iter().all(|x| x.is_zero()) { Some(BigInt::one()) } else { None };
        }
        let m = IntMat::from_rows(self.basis.clone()).expect("canonical basis is rectangular");
        let sm = smith_normal_form(&m);
        let rank = sm.rank();
        let x = IntMat::from_rows(vec![v.to_vec()]).expect("single row");
        let y = x.mul(&sm.v).expect("ambient sizes agree");
        for j in rank..self.ambient {
            if !y.at(0, j).is_zero() {
                return None;
            }
        }
        let mut order = BigInt::one();
        let diag = sm.diagonal();
        for (j, d) in diag.iter().enumerate().take(rank) {
            let g = d.gcd(y.at(0, j));
            order = order.lcm(&(d / g));
        }
        Some(order)
    }
}
