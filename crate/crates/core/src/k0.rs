//! The image ring model: Z[A] modulo the ideal generated by the classes
//! d_i (1 - e^{omega_bar_i}).
//!
//! The ideal is materialized as a lattice closed under translation by every
//! e^a, so it really is a ring ideal and reduction modulo it commutes with
//! multiplication. Everything downstream (filtration pieces, annihilators,
//! presentations) is lattice arithmetic against this ideal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::{AbElt, FinAb};
use crate::error::{Error, Result};
use crate::group_ring::{GroupRing, RingElt};
use crate::lattice::{Lattice, QuotientShape};
use crate::root_system::{weyl_dimension, CharacterQuotient};

#[derive(Clone, Debug)]
pub struct K0Ring {
    ring: GroupRing,
    classes: Vec<(AbElt, BigInt)>,
    cq: Option<CharacterQuotient>,
    ideal: Lattice,
    shape: QuotientShape,
}

impl K0Ring {
    /// Ring of a split group given by root system data and isogeny. The
    /// multiplier of each class is the dimension of the corresponding
    /// fundamental representation.
    pub fn build(cq: CharacterQuotient) -> Result<K0Ring> {
        let n = cq.spec.rank;
        let mut classes = Vec::with_capacity(n);
        for (i, obar) in cq.omega_bar.iter().enumerate() {
            let mut w = vec![0i64; n];
            w[i] = 1;
            classes.push((obar.clone(), weyl_dimension(cq.spec, &w)?));
        }
        Self::construct(cq.group.clone(), classes, Some(cq))
    }

    /// Synthetic ring from explicitly chosen classes and multipliers. Used
    /// for the order-2 and order-2x2 model rings where the multiplier is the
    /// index of interest rather than a dimension.
    pub fn from_classes(group: FinAb, classes: Vec<(AbElt, BigInt)>) -> Result<K0Ring> {
        Self::construct(group, classes, None)
    }

    fn construct(
        group: FinAb,
        classes: Vec<(AbElt, BigInt)>,
        cq: Option<CharacterQuotient>,
    ) -> Result<K0Ring> {
        for (chi, d) in &classes {
            if chi.len() != group.factors().len() {
                return Err(Error::DimensionMismatch(
                    "class coordinates do not match the group".into(),
                ));
            }
            if !d.is_positive() {
                return Err(Error::DimensionMismatch(format!(
                    "class multiplier must be positive, got {d}"
                )));
            }
        }
        let ring = GroupRing::new(group);
        let n = ring.size();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let elements: Vec<AbElt> = ring.elements().to_vec();
        for (chi, d) in &classes {
            if ring.group().is_zero(chi) {
                continue;
            }
            let base = ring.scale(d, &ring.sub(&ring.one(), &ring.basis(chi)));
            for a in &elements {
                rows.push(ring.translate(a, &base).into_coeffs());
            }
        }
        let ideal = Lattice::from_rows(n, rows)?;
        let shape = ideal.ambient_quotient();
        Ok(K0Ring { ring, classes, cq, ideal, shape })
    }

    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    pub fn group(&self) -> &FinAb {
        self.ring.group()
    }

    pub fn character_quotient(&self) -> Option<&CharacterQuotient> {
        self.cq.as_ref()
    }

    pub fn classes(&self) -> &[(AbElt, BigInt)] {
        &self.classes
    }

    pub fn ideal(&self) -> &Lattice {
        &self.ideal
    }

    /// Additive isomorphism type of the whole ring: free rank plus torsion
    /// invariant factors.
    pub fn shape(&self) -> &QuotientShape {
        &self.shape
    }

    /// Canonical representative of the class of x.
    pub fn reduce(&self, x: &RingElt) -> RingElt {
        self.ring
            .from_coeffs(self.ideal.reduce_vector(x.coeffs()))
            .expect("reduction preserves length")
    }

    pub fn is_in_ideal(&self, x: &RingElt) -> bool {
        self.ideal.contains(x.coeffs())
    }

    pub fn mul_reduce(&self, x: &RingElt, y: &RingElt) -> RingElt {
        self.reduce(&self.ring.mul(x, y))
    }

    /// Class of e^{lambda bar} for a weight in fundamental coordinates.
    /// Entries may be negative; only the class of lambda matters.
    pub fn q_map(&self, weight: &[i64]) -> Result<RingElt> {
        let Some(_) = &self.cq else {
            return Err(Error::WrongGroup(
                "q_map needs root system data, this ring is synthetic".into(),
            ));
        };
        if weight.len() != self.classes.len() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} coordinates, rank is {}",
                weight.len(),
                self.classes.len()
            )));
        }
        let g = self.group().clone();
        let mut class = g.zero();
        for (w, (obar, _)) in weight.iter().zip(&self.classes) {
            class = g.add(&class, &g.scale(*w, obar));
        }
        Ok(self.reduce(&self.ring.basis(&class)))
    }

    /// The augmentation-zero sublattice of Z^{|A|}. Contains the ideal.
    pub fn augmentation_kernel(&self) -> Lattice {
        let n = self.ring.size();
        let mut rows = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let mut r = vec![BigInt::zero(); n];
            r[0] = -BigInt::one();
            r[i] = BigInt::one();
            rows.push(r);
        }
        Lattice::from_rows(n, rows).expect("rows are ambient sized")
    }

    /// Isomorphism type of the torsion subgroup: kernel of augmentation
    /// modulo the ideal.
    pub fn torsion_shape(&self) -> Result<QuotientShape> {
        let ker = self.augmentation_kernel();
        let ker = ker.sum(&self.ideal)?;
        ker.quotient_by(&self.ideal)
    }

    /// Additive order of the class of x; zero means infinite order.
    pub fn annihilator_of(&self, x: &RingElt) -> BigInt {
        match self.ideal.order_in_quotient(x.coeffs()) {
            Some(o) => o,
            None => BigInt::zero(),
        }
    }

    pub fn presentation(&self) -> Presentation {
        let factors = self.group().factors().to_vec();
        let k = factors.len();
        let names: Vec<String> = (1..=k).map(|j| format!("y{j}")).collect();
        let mut multiplicative = Vec::new();
        for (j, &f) in factors.iter().enumerate() {
            multiplicative.push(render_mult_relation(&names[j], f));
        }
        // Change of basis from y-monomials to the group basis: row c is the
        // expansion of prod_j (1 - e^{sigma_j})^{c_j}. Lower triangular in
        // the shared mixed radix order with unit diagonal.
        let g = self.group().clone();
        let n = self.ring.size();
        let mono_rows: Vec<Vec<BigInt>> = (0..n)
            .map(|ix| {
                let c = g.elt_at(ix);
                let mut p = self.ring.one();
                for (j, &e) in c.iter().enumerate() {
                    let mut sigma = g.zero();
                    sigma[j] = 1;
                    p = self.ring.mul(&p, &self.ring.difference_power(&sigma, e));
                }
                p.into_coeffs()
            })
            .collect();
        for (ix, row) in mono_rows.iter().enumerate() {
            debug_assert!(row[ix].abs().is_one(), "monomial transform must be unitriangular");
            debug_assert!(row[ix + 1..].iter().all(|x| x.is_zero()));
        }
        let additive_rows: Vec<Vec<BigInt>> = self
            .ideal
            .basis()
            .iter()
            .map(|r| solve_triangular(&mono_rows, r))
            .collect();
        let additive_lattice =
            Lattice::from_rows(n, additive_rows).expect("coordinates stay ambient sized");
        let additive = additive_lattice
            .basis()
            .iter()
            .map(|row| render_additive_relation(&g, &names, row))
            .collect();
        Presentation {
            variables: names.iter().cloned().zip(factors).collect(),
            multiplicative_relations: multiplicative,
            additive_relations: additive,
            invariant_factors: self.shape.invariants.clone(),
            free_rank: self.shape.free_rank,
        }
    }
}

/// Presentation of the ring over polynomial variables y_j = 1 - e^{sigma_j},
/// one per invariant factor of A. Relations are implicitly "= 0".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub variables: Vec<(String, u64)>,
    pub multiplicative_relations: Vec<String>,
    pub additive_relations: Vec<String>,
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

/// (1 - y)^f - 1 expanded, highest power first: f = 2 gives "y^2 - 2*y".
fn render_mult_relation(name: &str, f: u64) -> String {
    let mut terms: Vec<(BigInt, u64)> = Vec::new();
    let mut binom = BigInt::one();
    for t in 1..=f {
        // C(f, t) from C(f, t-1).
        binom = binom * BigInt::from(f - t + 1) / BigInt::from(t);
        let c = if t % 2 == 0 { binom.clone() } else { -binom.clone() };
        terms.push((c, t));
    }
    terms.reverse();
    // Normalize to a monic leading term.
    if terms.first().is_some_and(|(c, _)| c.is_negative()) {
        for (c, _) in &mut terms {
            *c = -std::mem::take(c);
        }
    }
    let rendered: Vec<(BigInt, String)> = terms
        .into_iter()
        .map(|(c, t)| {
            let m = if t == 1 { name.to_string() } else { format!("{name}^{t}") };
            (c, m)
        })
        .collect();
    join_signed_terms(&rendered)
}

fn monomial_name(names: &[String], c: &AbElt) -> String {
    let parts: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| if e == 1 { names[j].clone() } else { format!("{}^{e}", names[j]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn render_additive_relation(g: &FinAb, names: &[String], row: &[BigInt]) -> String {
    let terms: Vec<(BigInt, String)> = row
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(ix, c)| (c.clone(), monomial_name(names, &g.elt_at(ix))))
        .collect();
    join_signed_terms(&terms)
}

fn join_signed_terms(terms: &[(BigInt, String)]) -> String {
    let mut out = String::new();
    for (k, (c, m)) in terms.iter().enumerate() {
        let mag = c.abs();
        let body = if mag.is_one() && m != "1" {
            m.clone()
        } else if m == "1" {
            mag.to_string()
        } else {
            format!("{mag}*{m}")
        };
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Solve x * T = r for a lower triangular T with unit diagonal.
fn solve_triangular(t_rows: &[Vec<BigInt>], r: &[BigInt]) -> Vec<BigInt> {
    let n = t_rows.len();
    let mut x = vec![BigInt::zero(); n];
    for m in (0..n).rev() {
        let mut acc = r[m].clone();
        for mm in m + 1..n {
            acc -= &x[mm] * &t_rows[mm][m];
        }
        // Diagonal entries are +-1.
        let d = &t_rows[m][m];
        let (q, rem) = acc.div_rem(d);
        debug_assert!(rem.is_zero());
        x[m] = q;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{character_quotient, IsogenySpec, RootSystemSpec};
    use std::str::FromStr;

    fn built(name: &str, iso: &str) -> K0Ring {
        let spec = RootSystemSpec::from_str(name).unwrap();
        let iso = IsogenySpec::from_str(iso).unwrap();
        K0Ring::build(character_quotient(spec, iso).unwrap()).unwrap()
    }

    fn invs(shape: &QuotientShape) -> Vec<i64> {
        use num_traits::ToPrimitive;
        shape.invariants.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn pgl2_is_z_plus_z2() {
        let k = built("A1", "ad");
        assert_eq!(k.shape().free_rank, 1);
        assert_eq!(invs(k.shape()), vec![2]);
        let y = k.ring().difference_power(&vec![1], 1);
        assert_eq!(k.annihilator_of(&y), BigInt::from(2));
        assert_eq!(k.annihilator_of(&k.ring().one()), BigInt::zero());
        let p = k.presentation();
        assert_eq!(p.variables, vec![("y1".to_string(), 2)]);
        assert_eq!(p.multiplicative_relations, vec!["y1^2 - 2*y1"]);
        assert_eq!(p.additive_relations, vec!["2*y1"]);
        assert_eq!(p.free_rank, 1);
    }

    #[test]
    fn e7_adjoint_has_z8_torsion() {
        let k = built("E7", "ad");
        assert_eq!(k.shape().free_rank, 1);
        assert_eq!(invs(k.shape()), vec![8]);
        let y = k.ring().difference_power(&vec![1], 1);
        assert_eq!(k.annihilator_of(&y), BigInt::from(8));
        let t = k.torsion_shape().unwrap();
        assert_eq!(t.free_rank, 0);
        assert_eq!(invs(&t), vec![8]);
        // q sends omega_2 to e^sigma and omega_2 + omega_5 to 1.
        let q2 = k.q_map(&[0, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(q2, k.reduce(&k.ring().basis(&vec![1])));
        let q25 = k.q_map(&[0, 1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(q25, k.reduce(&k.ring().one()));
        // 9y reduces to y: 8y is in the ideal.
        let nine_y = k.ring().scale(&BigInt::from(9), &y);
        assert_eq!(k.reduce(&nine_y), k.reduce(&y));
    }

    #[test]
    fn pgo8_torsion_and_presentation() {
        let k = built("D4", "ad");
        assert_eq!(k.shape().free_rank, 1);
        assert_eq!(invs(k.shape()), vec![8, 8, 8]);
        let p = k.presentation();
        assert_eq!(
            p.variables,
            vec![("y1".to_string(), 2), ("y2".to_string(), 2)]
        );
        assert_eq!(
            p.multiplicative_relations,
            vec!["y1^2 - 2*y1", "y2^2 - 2*y2"]
        );
        assert_eq!(p.additive_relations, vec!["8*y2", "8*y1", "8*y1*y2"]);
    }

    #[test]
    fn pgo10_additive_structure_is_finer_than_the_naive_relations() {
        // Worked by hand: the ideal of the adjoint D5 ring contains
        // 2(1 - e^{2 sigma}) = 2*16*(1-e) + 2*16*(e-e^2) - 3*10*(1-e^2),
        // so the class of 1 - e^{2 sigma} has order 2, not 10, and the
        // torsion is Z/2 + Z/2 + Z/16 of order 64.
        let k = built("D5", "ad");
        assert_eq!(k.shape().free_rank, 1);
        assert_eq!(invs(k.shape()), vec![2, 2, 16]);
        let g = k.group().clone();
        // sigma is the order 4 generator; find it among the omega classes.
        let sigma: AbElt = k
            .classes()
            .iter()
            .map(|(c, _)| c.clone())
            .find(|c| g.elt_order(c) == 4)
            .unwrap();
        let two_sigma = g.add(&sigma, &sigma);
        let y1 = k.ring().difference_power(&sigma, 1);
        let y2 = k.ring().difference_power(&two_sigma, 1);
        assert_eq!(k.annihilator_of(&y1), BigInt::from(16));
        assert_eq!(k.annihilator_of(&y2), BigInt::from(2));
    }

    #[test]
    fn cyclic_quotient_of_sl6() {
        let k = built("A5", "mu:3");
        assert_eq!(k.shape().free_rank, 1);
        assert_eq!(invs(k.shape()), vec![3, 3]);
        let p = k.presentation();
        assert_eq!(p.multiplicative_relations, vec!["y1^3 - 3*y1^2 + 3*y1"]);
        assert_eq!(p.additive_relations, vec!["3*y1", "3*y1^2"]);
    }

    #[test]
    fn synthetic_rings() {
        let g = FinAb::new(vec![2]).unwrap();
        let k = K0Ring::from_classes(g, vec![(vec![1], BigInt::from(6))]).unwrap();
        assert_eq!(invs(k.shape()), vec![6]);
        let y = k.ring().difference_power(&vec![1], 1);
        assert_eq!(k.annihilator_of(&y), BigInt::from(6));
        assert!(k.q_map(&[1]).is_err());
        // Multiplier must be positive.
        let g = FinAb::new(vec![2]).unwrap();
        assert!(K0Ring::from_classes(g, vec![(vec![1], BigInt::zero())]).is_err());
    }

    #[test]
    fn reduction_is_compatible_with_multiplication() {
        let k = built("D4", "ad");
        let r = k.ring();
        let x = r.difference_power(&vec![1, 0], 1);
        let big = r.scale(&BigInt::from(17), &x);
        let y = r.difference_power(&vec![1, 1], 2);
        assert_eq!(k.mul_reduce(&big, &y), k.reduce(&r.mul(&k.reduce(&big), &y)));
        // The ideal is translation closed: e^a * I = I.
        for row in k.ideal().basis() {
            let elt = r.from_coeffs(row.clone()).unwrap();
            for a in r.group().elements() {
                assert!(k.is_in_ideal(&r.translate(&a, &elt)));
            }
        }
    }

    #[test]
    fn trivial_group_ring() {
        let k = built("E8", "ad");
        assert!(k.group().is_trivial());
        assert_eq!(k.shape().free_rank, 1);
        assert!(k.shape().invariants.is_empty());
        assert!(k.torsion_shape().unwrap().is_trivial());
        let p = k.presentation();
        assert!(p.variables.is_empty());
        assert!(p.additive_relations.is_empty());
    }

    #[test]
    fn sc_ring_matches_trivial_quotient() {
        let k = built("D6", "sc");
        assert!(k.group().is_trivial());
        assert_eq!(k.shape().free_rank, 1);
    }
}
