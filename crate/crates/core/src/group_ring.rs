//! The integral group ring Z[A] of a finite abelian group, dense
//! representation over the canonical basis order of A.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::{AbElt, FinAb};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElt {
    coeffs: Vec<BigInt>,
}

impl RingElt {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct GroupRing {
    group: FinAb,
    elements: Vec<AbElt>,
}

impl GroupRing {
    pub fn new(group: FinAb) -> Self {
        let elements = group.elements();
        GroupRing { group, elements }
    }

    pub fn group(&self) -> &FinAb {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AbElt] {
        &self.elements
    }

    pub fn zero(&self) -> RingElt {
        RingElt { coeffs: vec![BigInt::zero(); self.size()] }
    }

    pub fn one(&self) -> RingElt {
        self.basis(&self.group.zero())
    }

    /// e^a for a group element a.
    pub fn basis(&self, a: &AbElt) -> RingElt {
        let mut e = self.zero();
        e.coeffs[self.group.index_of(a)] = BigInt::one();
        e
    }

    pub fn from_coeffs(&self, coeffs: Vec<BigInt>) -> Result<RingElt> {
        if coeffs.len() != self.size() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coefficients, ring has {}",
                coeffs.len(),
                self.size()
            )));
        }
        Ok(RingElt { coeffs })
    }

    fn check(&self, x: &RingElt) {
        assert_eq!(x.coeffs.len(), self.size(), "element belongs to another ring");
    }

    pub fn add(&self, x: &RingElt, y: &RingElt) -> RingElt {
        self.check(x);
        self.check(y);
        RingElt {
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, x: &RingElt, y: &RingElt) -> RingElt {
        self.check(x);
        self.check(y);
        RingElt {
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self, x: &RingElt) -> RingElt {
        self.check(x);
        RingElt { coeffs: x.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt, x: &RingElt) -> RingElt {
        self.check(x);
        RingElt { coeffs: x.coeffs.iter().map(|a| k * a).collect() }
    }

    /// Convolution product: e^a e^b = e^{a+b}, extended bilinearly.
    pub fn mul(&self, x: &RingElt, y: &RingElt) -> RingElt {
        self.check(x);
        self.check(y);
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ei = &self.elements[i];
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = self.group.index_of(&self.group.add(ei, &self.elements[j]));
                out.coeffs[k] += a * b;
            }
        }
        out
    }

    /// Translation by e^a, a ring automorphism of the additive structure.
    pub fn translate(&self, a: &AbElt, x: &RingElt) -> RingElt {
        self.check(x);
        let mut out = self.zero();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.group.index_of(&self.group.add(a, &self.elements[i]));
            out.coeffs[k] = c.clone();
        }
        out
    }

    /// Augmentation: sum of coefficients, the rank map on classes.
    pub fn augmentation(&self, x: &RingElt) -> BigInt {
        self.check(x);
        x.coeffs.iter().sum()
    }

    /// (1 - e^chi)^n by direct binomial expansion; exponents collapse in A.
    pub fn difference_power(&self, chi: &AbElt, n: u64) -> RingElt {
        let mut out = self.zero();
        let mut mult = self.group.zero();
        let mut binom = BigInt::one();
        for k in 0..=n {
            let ix = self.group.index_of(&mult);
            if k % 2 == 0 {
                out.coeffs[ix] += &binom;
            } else {
                out.coeffs[ix] -= &binom;
            }
            mult = self.group.add(&mult, chi);
            // C(n, k+1) from C(n, k).
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
        out
    }

    /// Deterministic text form, basis order, identity coefficient first.
    pub fn render(&self, x: &RingElt) -> String {
        self.check(x);
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = if i == 0 {
                c.to_string()
            } else {
                let tuple: Vec<String> =
                    self.elements[i].iter().map(|v| v.to_string()).collect();
                let mag = c.abs();
                let body = if mag.is_one() {
                    format!("e[({})]", tuple.join(","))
                } else {
                    format!("{}*e[({})]", mag, tuple.join(","))
                };
                if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                }
            };
            parts.push(label);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}
