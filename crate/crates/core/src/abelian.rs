//! Finite abelian groups in invariant factor form.
//!
//! Elements are coordinate tuples, one coordinate per invariant factor.
//! Enumeration order is lexicographic on coordinates with the identity first;
//! the same order defines the basis of the group ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMat};

pub type AbElt = Vec<u64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinAb {
    factors: Vec<u64>,
}

impl FinAb {
    /// Invariant factors, each > 1 and dividing the next. Factors equal to 1
    /// are dropped silently so SNF diagonals can be passed straight in.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let factors: Vec<u64> = factors.into_iter().filter(|&f| f != 1).collect();
        if factors.iter().any(|&f| f == 0) {
            return Err(Error::DimensionMismatch("zero invariant factor".into()));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "invariant factors must divide in order: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FinAb { factors })
    }

    pub fn trivial() -> Self {
        FinAb { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> AbElt {
        vec![0; self.factors.len()]
    }

    pub fn is_zero(&self, a: &AbElt) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn check(&self, a: &AbElt) {
        assert_eq!(a.len(), self.factors.len(), "element arity mismatch");
        for (x, f) in a.iter().zip(&self.factors) {
            assert!(x < f, "coordinate out of range");
        }
    }

    /// Reduce arbitrary integer coordinates into the group.
    pub fn reduce(&self, coords: &[i64]) -> Result<AbElt> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| x.rem_euclid(f as i64) as u64)
            .collect())
    }

    pub fn reduce_big(&self, coords: &[BigInt]) -> Result<AbElt> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .map(|(x, &f)| x.mod_floor(&BigInt::from(f)).to_u64().expect("reduced below u64 factor"))
            .collect())
    }

    pub fn add(&self, a: &AbElt, b: &AbElt) -> AbElt {
        self.check(a);
        self.check(b);
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &f)| (x + y) % f)
            .collect()
    }

    pub fn neg(&self, a: &AbElt) -> AbElt {
        self.check(a);
        a.iter().zip(&self.factors).map(|(&x, &f)| (f - x) % f).collect()
    }

    pub fn sub(&self, a: &AbElt, b: &AbElt) -> AbElt {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &AbElt) -> AbElt {
        self.check(a);
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &f)| ((k.rem_euclid(f as i64) as u64) * x) % f)
            .collect()
    }

    pub fn elt_order(&self, a: &AbElt) -> u64 {
        self.check(a);
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &f)| f / f.gcd(&x))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements, identity first, lexicographic on coordinates. The
    /// position of an element in this list is its basis index.
    pub fn elements(&self) -> Vec<AbElt> {
        let n = self.order() as usize;
        (0..n).map(|ix| self.elt_at(ix)).collect()
    }

    /// Row-major mixed-radix index: positions agree with `elements()`.
    pub fn index_of(&self, a: &AbElt) -> usize {
        self.check(a);
        let mut ix = 0usize;
        for (&x, &f) in a.iter().zip(&self.factors) {
            ix = ix * f as usize + x as usize;
        }
        ix
    }

    pub fn elt_at(&self, ix: usize) -> AbElt {
        assert!(ix < self.order() as usize, "index out of range");
        let mut rem = ix;
        let mut out = vec![0u64; self.factors.len()];
        for (slot, &f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (rem % f as usize) as u64;
            rem /= f as usize;
        }
        out
    }

    pub fn subgroup(&self, gens: &[AbElt]) -> Vec<AbElt> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(cur) = frontier.pop() {
            for g in gens {
                let nxt = self.add(&cur, g);
                if seen.insert(nxt.clone()) {
                    frontier.push(nxt);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Quotient by the subgroup generated by `gens`, with the projection map.
    pub fn quotient(&self, gens: &[AbElt]) -> Result<(FinAb, QuotientMap)> {
        for g in gens {
            if g.len() != self.factors.len() {
                return Err(Error::DimensionMismatch("generator arity mismatch".into()));
            }
        }
        let k = self.factors.len();
        if k == 0 {
            return Ok((
                FinAb::trivial(),
                QuotientMap { v: IntMat::identity(0), kept: Vec::new() },
            ));
        }
        // Relation matrix: the invariant factors stacked over the generators.
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k + gens.len());
        for (i, &f) in self.factors.iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::from(f);
            rows.push(r);
        }
        for g in gens {
            rows.push(g.iter().map(|&x| BigInt::from(x)).collect());
        }
        let m = IntMat::from_rows(rows).expect("rectangular by construction");
        let sm = smith_normal_form(&m);
        let mut kept = Vec::new();
        for (j, d) in sm.diagonal().iter().enumerate() {
            assert!(!d.is_zero(), "relation matrix has full column rank");
            if !num_traits::One::is_one(d) {
                kept.push((j, d.to_u64().expect("quotient factor fits u64")));
            }
        }
        let target = FinAb::new(kept.iter().map(|&(_, f)| f).collect())
            .expect("SNF diagonal is a divisibility chain");
        Ok((target, QuotientMap { v: sm.v.clone(), kept }))
    }
}

/// Projection A -> A/H packaged as the change of basis from a quotient
/// computation: x maps to (x * v) mod the kept factors.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    v: IntMat,
    kept: Vec<(usize, u64)>,
}

impl QuotientMap {
    pub fn apply(&self, a: &AbElt) -> AbElt {
        let x = IntMat::from_rows(vec![a.iter().map(|&c| BigInt::from(c)).collect()])
            .expect("single row");
        let y = x.mul(&self.v).expect("arity fixed at construction");
        self.kept
            .iter()
            .map(|&(j, f)| {
                y.at(0, j)
                    .mod_floor(&BigInt::from(f))
                    .to_u64()
                    .expect("reduced below u64 factor")
            })
            .collect()
    }
}
