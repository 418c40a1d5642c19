//! The twisted filtration of the image ring by an index assignment.
//!
//! Pieces are subgroups of Z[A] between the defining ideal and the
//! augmentation kernel: P_i is generated by the ideal together with all
//! products of basic factors binom(ind(chi), n) (1 - e^chi)^n of total
//! degree at least i. The closure is a joint fixpoint over all degrees,
//! with monotonicity P_{i+1} <= P_i enforced as one of the rules.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{AbElt, FinAb};
use crate::error::{Error, Result};
use crate::k0::K0Ring;
use crate::lattice::{Lattice, QuotientShape};

const MAX_INDEX: u64 = 1 << 16;
const MAX_DEGREE_CAP: usize = 32;
const MAX_ROUNDS: usize = 64;

/// Total map from classes of A to positive indices. Unspecified nonzero
/// classes default to 1 and are remembered for the warning pass.
#[derive(Clone, Debug)]
pub struct IndexAssignment {
    group: FinAb,
    ind: Vec<u64>,
    defaulted: Vec<AbElt>,
}

impl IndexAssignment {
    pub fn new(group: &FinAb, pairs: &[(Vec<i64>, u64)]) -> Result<IndexAssignment> {
        let n = group.order() as usize;
        let mut ind: Vec<Option<u64>> = vec![None; n];
        for (coords, v) in pairs {
            let key = group.reduce(coords).map_err(|e| {
                Error::InvalidAssignment(format!("bad class key {coords:?}: {e}"))
            })?;
            let ix = group.index_of(&key);
            if ind[ix].is_some() {
                return Err(Error::InvalidAssignment(format!(
                    "class {key:?} assigned twice"
                )));
            }
            if *v == 0 {
                return Err(Error::InvalidAssignment(format!(
                    "index of {key:?} must be positive"
                )));
            }
            if *v > MAX_INDEX {
                return Err(Error::InvalidAssignment(format!(
                    "index of {key:?} exceeds the supported bound {MAX_INDEX}"
                )));
            }
            if group.is_zero(&key) && *v != 1 {
                return Err(Error::InvalidAssignment(
                    "the zero class must have index 1".into(),
                ));
            }
            ind[ix] = Some(*v);
        }
        let mut defaulted = Vec::new();
        let filled: Vec<u64> = ind
            .iter()
            .enumerate()
            .map(|(ix, v)| match v {
                Some(v) => *v,
                None => {
                    if ix != 0 {
                        defaulted.push(group.elt_at(ix));
                    }
                    1
                }
            })
            .collect();
        Ok(IndexAssignment { group: group.clone(), ind: filled, defaulted })
    }

    pub fn all_ones(group: &FinAb) -> IndexAssignment {
        IndexAssignment {
            group: group.clone(),
            ind: vec![1; group.order() as usize],
            defaulted: Vec::new(),
        }
    }

    pub fn group(&self) -> &FinAb {
        &self.group
    }

    pub fn of(&self, a: &AbElt) -> u64 {
        self.ind[self.group.index_of(a)]
    }

    /// Assignment as sorted (class, index) pairs, zero class first.
    pub fn entries(&self) -> Vec<(AbElt, u64)> {
        (0..self.ind.len())
            .map(|ix| (self.group.elt_at(ix), self.ind[ix]))
            .collect()
    }

    /// Consistency screens. None of these stop the computation; each
    /// returns a sentence describing which expectation fails and where.
    pub fn soft_warnings(&self) -> Vec<String> {
        let g = &self.group;
        let mut out = Vec::new();
        for a in &self.defaulted {
            out.push(format!("no index given for class {a:?}; defaulting to 1"));
        }
        let elements = g.elements();
        for a in elements.iter().skip(1) {
            let ia = self.of(a);
            if ia == 1 && !self.defaulted.contains(a) {
                out.push(format!("index 1 on the nonzero class {a:?}"));
            }
            let neg = g.neg(a);
            if neg != *a && g.index_of(a) < g.index_of(&neg) && ia != self.of(&neg) {
                out.push(format!(
                    "index of {a:?} is {ia} but index of its negative {neg:?} is {}",
                    self.of(&neg)
                ));
            }
            // Every prime of the index should divide the order of the class.
            let ord = g.elt_order(a);
            for p in prime_support(ia) {
                if ord % p != 0 {
                    out.push(format!(
                        "prime {p} divides the index of {a:?} but not its order {ord}"
                    ));
                }
            }
            if self.of(&g.scale(ia as i64, a)) != 1 {
                out.push(format!(
                    "class {} * {a:?} should have index 1 but has {}",
                    ia,
                    self.of(&g.scale(ia as i64, a))
                ));
            }
        }
        for (i, a) in elements.iter().enumerate().skip(1) {
            for b in elements.iter().skip(i) {
                let s = g.add(a, b);
                let prod = self.of(a) as u128 * self.of(b) as u128;
                if prod % self.of(&s) as u128 != 0 {
                    out.push(format!(
                        "index {} of {s:?} = {a:?} + {b:?} does not divide {} * {}",
                        self.of(&s),
                        self.of(a),
                        self.of(b)
                    ));
                }
            }
        }
        out
    }
}

fn prime_support(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

fn binomial(m: u64, n: u64) -> BigInt {
    let mut b = BigInt::one();
    for t in 1..=n {
        b = b * BigInt::from(m - t + 1) / BigInt::from(t);
    }
    b
}

/// One generator binom(ind(chi), n) (1 - e^chi)^n, stored reduced modulo
/// the defining ideal.
#[derive(Clone, Debug)]
pub struct BasicFactor {
    pub class: AbElt,
    pub n: u64,
    pub degree: usize,
    pub coeffs: Vec<BigInt>,
}

/// How pieces are closed: as subgroups under multiplication by the basic
/// factors only, or additionally under translation by every e^a.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureMode {
    Subgroup,
    Ideal,
}

#[derive(Clone, Debug)]
pub struct Filtration {
    k0: K0Ring,
    assignment: IndexAssignment,
    mode: ClosureMode,
    max_degree: usize,
    /// pieces[i] is P_i for i = 0..=max_degree.
    pieces: Vec<Lattice>,
    factors: Vec<BasicFactor>,
    achievable: Vec<AbElt>,
    warnings: Vec<String>,
    rounds: usize,
    stabilized: bool,
}

pub fn twisted_filtration(
    k0: &K0Ring,
    assignment: &IndexAssignment,
    max_degree: usize,
    mode: ClosureMode,
) -> Result<Filtration> {
    if assignment.group() != k0.group() {
        return Err(Error::GroupMismatch);
    }
    // Achievable classes are subset sums of the relation-class multiset
    // (each class once per node it comes from), not the subgroup those
    // classes generate: a class repeated in the multiset can be added
    // twice, but no class can be used more often than it occurs.
    let g = k0.group();
    let mut sums: BTreeSet<AbElt> = BTreeSet::new();
    sums.insert(g.zero());
    for (c, _) in k0.classes() {
        let shifted: Vec<AbElt> = sums.iter().map(|s| g.add(s, c)).collect();
        sums.extend(shifted);
    }
    let achievable: Vec<AbElt> = sums.into_iter().filter(|a| !g.is_zero(a)).collect();
    let warnings = assignment.soft_warnings();
    build(k0, assignment, max_degree, mode, achievable, warnings)
}

/// Filtration of the split form: every index is 1 and every nonzero class
/// of A counts as achievable.
pub fn split_filtration(k0: &K0Ring, max_degree: usize, mode: ClosureMode) -> Result<Filtration> {
    let assignment = IndexAssignment::all_ones(k0.group());
    let achievable: Vec<AbElt> = k0
        .group()
        .elements()
        .into_iter()
        .filter(|a| !k0.group().is_zero(a))
        .collect();
    build(k0, &assignment, max_degree, mode, achievable, Vec::new())
}

fn build(
    k0: &K0Ring,
    assignment: &IndexAssignment,
    max_degree: usize,
    mode: ClosureMode,
    achievable: Vec<AbElt>,
    warnings: Vec<String>,
) -> Result<Filtration> {
    if max_degree < 1 || max_degree > MAX_DEGREE_CAP {
        return Err(Error::InvalidDegree(format!(
            "max degree must be between 1 and {MAX_DEGREE_CAP}, got {max_degree}"
        )));
    }
    let ring = k0.ring();
    let n = ring.size();

    let mut factors: Vec<BasicFactor> = Vec::new();
    for chi in &achievable {
        let m = assignment.of(chi);
        for t in 1..=m {
            let raw = ring.scale(&binomial(m, t), &ring.difference_power(chi, t));
            let red = k0.reduce(&raw);
            if red.is_zero() {
                continue;
            }
            factors.push(BasicFactor {
                class: chi.clone(),
                n: t,
                degree: t as usize,
                coeffs: red.into_coeffs(),
            });
        }
    }

    // Seed P_1..P_N with the ideal plus the factors of high enough degree.
    let mut pieces: Vec<Lattice> = Vec::with_capacity(max_degree + 1);
    pieces.push(Lattice::zero(n)); // placeholder for P_0, filled in last
    for i in 1..=max_degree {
        let mut rows: Vec<Vec<BigInt>> = k0.ideal().basis().to_vec();
        for f in &factors {
            if f.degree >= i {
                rows.push(f.coeffs.clone());
            }
        }
        pieces.push(Lattice::from_rows(n, rows)?);
    }

    let mut rounds = 0;
    let mut stabilized = false;
    while rounds < MAX_ROUNDS {
        rounds += 1;
        let mut changed = false;
        for i in 1..=max_degree {
            let mut rows: Vec<Vec<BigInt>> = pieces[i].basis().to_vec();
            for f in &factors {
                let src = if f.degree >= i { 1 } else { i - f.degree };
                let felt = ring.from_coeffs(f.coeffs.clone())?;
                for b in pieces[src].basis() {
                    let belt = ring.from_coeffs(b.clone())?;
                    let prod = k0.reduce(&ring.mul(&felt, &belt));
                    if !prod.is_zero() && !pieces[i].contains(prod.coeffs()) {
                        rows.push(prod.into_coeffs());
                    }
                }
            }
            if i < max_degree {
                for b in pieces[i + 1].basis() {
                    if !pieces[i].contains(b) {
                        rows.push(b.clone());
                    }
                }
            }
            if mode == ClosureMode::Ideal {
                for a in ring.elements().to_vec() {
                    for b in pieces[i].basis() {
                        let belt = ring.from_coeffs(b.clone())?;
                        let tr = k0.reduce(&ring.translate(&a, &belt));
                        if !tr.is_zero() && !pieces[i].contains(tr.coeffs()) {
                            rows.push(tr.into_coeffs());
                        }
                    }
                }
            }
            let next = Lattice::from_rows(n, rows)?;
            if next != pieces[i] {
                pieces[i] = next;
                changed = true;
            }
        }
        if !changed {
            stabilized = true;
            break;
        }
    }

    // P_0: the span of the twisted classes ind(chi) e^chi themselves,
    // together with everything of positive degree.
    let mut rows: Vec<Vec<BigInt>> = pieces[1].basis().to_vec();
    rows.push(ring.one().into_coeffs());
    for chi in &achievable {
        let e = ring.basis(chi);
        rows.push(ring.scale(&BigInt::from(assignment.of(chi)), &e).into_coeffs());
    }
    pieces[0] = Lattice::from_rows(n, rows)?;

    Ok(Filtration {
        k0: k0.clone(),
        assignment: assignment.clone(),
        mode,
        max_degree,
        pieces,
        factors,
        achievable,
        warnings,
        rounds,
        stabilized,
    })
}

impl Filtration {
    pub fn k0(&self) -> &K0Ring {
        &self.k0
    }

    pub fn assignment(&self) -> &IndexAssignment {
        &self.assignment
    }

    pub fn mode(&self) -> ClosureMode {
        self.mode
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn factors(&self) -> &[BasicFactor] {
        &self.factors
    }

    pub fn achievable(&self) -> &[AbElt] {
        &self.achievable
    }

    pub fn piece(&self, i: usize) -> Result<&Lattice> {
        self.pieces.get(i).ok_or_else(|| {
            Error::InvalidDegree(format!(
                "piece {i} not computed, max degree is {}",
                self.max_degree
            ))
        })
    }

    /// Quotient P_i / P_{i+1}, defined for 0 <= i < max_degree.
    pub fn graded(&self, i: usize) -> Result<QuotientShape> {
        if i + 1 > self.max_degree {
            return Err(Error::InvalidDegree(format!(
                "graded piece {i} needs piece {}, max degree is {}",
                i + 1,
                self.max_degree
            )));
        }
        self.pieces[i].quotient_by(&self.pieces[i + 1])
    }

    /// Quotient P_i / I against the defining ideal, for i >= 1.
    pub fn piece_torsion(&self, i: usize) -> Result<QuotientShape> {
        if i == 0 || i > self.max_degree {
            return Err(Error::InvalidDegree(format!(
                "piece quotient is defined for 1 <= i <= {}, got {i}",
                self.max_degree
            )));
        }
        self.pieces[i].quotient_by(self.k0.ideal())
    }

    pub fn graded_all(&self) -> Result<Vec<QuotientShape>> {
        (0..self.max_degree).map(|i| self.graded(i)).collect()
    }

    /// Expectations that hold for an index assignment realized by an
    /// actual twisted form. Violations are reported, never fatal: they
    /// flag assignments no form can realize.
    pub fn structural_diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Ok(g0) = self.graded(0) {
            if !g0.is_free_of_rank(1) {
                out.push(format!("degree 0 quotient is {g0}, expected Z"));
            }
        }
        if self.max_degree >= 2 {
            if let Ok(g1) = self.graded(1) {
                if !g1.is_trivial() {
                    out.push(format!("degree 1 quotient is {g1}, expected 0"));
                }
            }
        }
        for i in 1..self.max_degree {
            if !self.pieces[i + 1].is_sublattice_of(&self.pieces[i]) {
                out.push(format!("piece {} is not contained in piece {i}", i + 1));
            }
        }
        if !self.pieces[1].is_sublattice_of(&self.pieces[0]) {
            out.push("piece 1 is not contained in piece 0".into());
        }
        for i in 1..=self.max_degree {
            for b in self.pieces[i].basis() {
                let s: BigInt = b.iter().sum();
                if !s.is_zero() {
                    out.push(format!("piece {i} leaves the augmentation kernel"));
                    break;
                }
            }
        }
        if !self.stabilized {
            out.push(format!("fixpoint not reached after {} rounds", self.rounds));
        }
        out
    }
}

/// Run both closure modes and report the degrees where they disagree.
pub struct ModeComparison {
    pub subgroup: Filtration,
    pub ideal: Filtration,
    pub differing_degrees: Vec<usize>,
}

pub fn compare_modes(
    k0: &K0Ring,
    assignment: &IndexAssignment,
    max_degree: usize,
) -> Result<ModeComparison> {
    let subgroup = twisted_filtration(k0, assignment, max_degree, ClosureMode::Subgroup)?;
    let ideal = twisted_filtration(k0, assignment, max_degree, ClosureMode::Ideal)?;
    let differing_degrees = (0..=max_degree)
        .filter(|&i| subgroup.pieces[i] != ideal.pieces[i])
        .collect();
    Ok(ModeComparison { subgroup, ideal, differing_degrees })
}

/// Group the nonzero achievable classes by index, for report output.
pub fn index_summary(f: &Filtration) -> BTreeMap<u64, Vec<AbElt>> {
    let mut m: BTreeMap<u64, Vec<AbElt>> = BTreeMap::new();
    for a in f.achievable() {
        m.entry(f.assignment().of(a)).or_default().push(a.clone());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{character_quotient, IsogenySpec, RootSystemSpec};
    use num_traits::ToPrimitive;
    use std::str::FromStr;

    fn built(name: &str, iso: &str) -> K0Ring {
        let spec = RootSystemSpec::from_str(name).unwrap();
        let iso = IsogenySpec::from_str(iso).unwrap();
        K0Ring::build(character_quotient(spec, iso).unwrap()).unwrap()
    }

    fn invs(q: &QuotientShape) -> Vec<i64> {
        q.invariants.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    fn single_index(k0: &K0Ring, v: u64) -> IndexAssignment {
        IndexAssignment::new(k0.group(), &[(vec![1], v)]).unwrap()
    }

    #[test]
    fn assignment_validation() {
        let g = FinAb::new(vec![4]).unwrap();
        assert!(IndexAssignment::new(&g, &[(vec![0], 2)]).is_err());
        assert!(IndexAssignment::new(&g, &[(vec![1], 0)]).is_err());
        assert!(IndexAssignment::new(&g, &[(vec![1], 2), (vec![5], 2)]).is_err());
        assert!(IndexAssignment::new(&g, &[(vec![1, 0], 2)]).is_err());
        let a = IndexAssignment::new(&g, &[(vec![1], 2), (vec![-1], 2)]).unwrap();
        assert_eq!(a.of(&vec![3]), 2);
        assert_eq!(a.of(&vec![2]), 1);
        // (2) and (0) were never assigned; only (2) is reported.
        assert_eq!(a.soft_warnings().len(), 1);
    }

    #[test]
    fn soft_warning_catalog() {
        let g = FinAb::new(vec![8]).unwrap();
        // Asymmetric: ind(1) != ind(7).
        let a = IndexAssignment::new(
            &g,
            &[
                (vec![1], 4),
                (vec![7], 2),
                (vec![2], 2),
                (vec![6], 2),
                (vec![3], 4),
                (vec![5], 4),
                (vec![4], 2),
            ],
        )
        .unwrap();
        let w = a.soft_warnings();
        assert!(w.iter().any(|s| s.contains("negative")), "{w:?}");

        // Prime support: 3 divides the index but the class has 2-power order.
        let a = IndexAssignment::new(&g, &[(vec![4], 3)]).unwrap();
        assert!(a
            .soft_warnings()
            .iter()
            .any(|s| s.contains("prime 3")));

        // Index of a sum not dividing the product of indices.
        let g2 = FinAb::new(vec![2, 2]).unwrap();
        let a = IndexAssignment::new(
            &g2,
            &[(vec![1, 0], 2), (vec![0, 1], 2), (vec![1, 1], 8)],
        )
        .unwrap();
        assert!(a
            .soft_warnings()
            .iter()
            .any(|s| s.contains("does not divide")));

        // A warning-free assignment.
        let a = IndexAssignment::new(
            &g2,
            &[(vec![1, 0], 4), (vec![0, 1], 4), (vec![1, 1], 2)],
        )
        .unwrap();
        assert!(a.soft_warnings().is_empty());
    }

    #[test]
    fn brauer_consistency_warning() {
        // ind(1) = 2 forces the class 2 to have index 1; giving it 4 warns.
        let g = FinAb::new(vec![4]).unwrap();
        let a = IndexAssignment::new(&g, &[(vec![1], 2), (vec![3], 2), (vec![2], 4)]).unwrap();
        assert!(a
            .soft_warnings()
            .iter()
            .any(|s| s.contains("should have index 1")));
    }

    #[test]
    fn split_pgl2_has_nontrivial_degree_one_quotient() {
        let k0 = built("A1", "ad");
        let f = split_filtration(&k0, 5, ClosureMode::Subgroup).unwrap();
        assert!(f.stabilized());
        // gamma^0 / gamma^1 is Z, and the degree 1 quotient is Z/2: the
        // degree 1 collapse fails in the split adjoint rank 1 case.
        let g0 = f.graded(0).unwrap();
        assert!(g0.is_free_of_rank(1));
        let g1 = f.graded(1).unwrap();
        assert_eq!(invs(&g1), vec![2]);
        let d = f.structural_diagnostics();
        assert_eq!(d.len(), 1, "{d:?}");
        assert!(d[0].contains("degree 1"));
    }

    #[test]
    fn rank_one_adjoint_piece_exponents() {
        // Synthetic order 2 ring with multiplier d = 2^v: the piece P_k is
        // generated over the ideal by 2^{e(k)} (1 - e), with e(k) depending
        // only on v2 of the index.
        let g = FinAb::new(vec![2]).unwrap();
        for i_a in 1u64..=4 {
            for v in 1u32..=(i_a as u32 + 3) {
                let d = BigInt::from(2u64).pow(v);
                let k0 = K0Ring::from_classes(g.clone(), vec![(vec![1], d)]).unwrap();
                let asg = single_index(&k0, 1 << i_a);
                let f = twisted_filtration(&k0, &asg, 5, ClosureMode::Subgroup).unwrap();
                assert!(f.warnings().is_empty());
                assert!(f.stabilized());
                for k in 1..=5usize {
                    let e = match (i_a, k) {
                        (1, 1) | (1, 2) => 1,
                        (1, 3) | (1, 4) => 3,
                        (1, 5) => 5,
                        (2, 1) | (2, 2) => 2,
                        (2, 3) | (2, 4) => 3,
                        (2, 5) => 6,
                        (_, 1) | (_, 2) => i_a,
                        (_, 3) | (_, 4) => i_a + 1,
                        (_, 5) => i_a + 4,
                        _ => unreachable!(),
                    };
                    let coeff = BigInt::from(2u64).pow(e as u32);
                    let want = k0
                        .ideal()
                        .add_row(&[coeff.clone(), -coeff])
                        .unwrap();
                    assert_eq!(
                        f.piece(k).unwrap(),
                        &want,
                        "i_A={i_a} v={v} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn rank_one_graded_two_cases() {
        let g = FinAb::new(vec![2]).unwrap();
        for i_a in 1u64..=4 {
            for v in 1u32..=(i_a as u32 + 3) {
                let d = BigInt::from(2u64).pow(v);
                let k0 = K0Ring::from_classes(g.clone(), vec![(vec![1], d)]).unwrap();
                let asg = single_index(&k0, 1 << i_a);
                let f = twisted_filtration(&k0, &asg, 5, ClosureMode::Subgroup).unwrap();
                let got = invs(&f.graded(2).unwrap());
                let want: Vec<i64> = if i_a == 1 {
                    match v {
                        1 => vec![],
                        2 => vec![2],
                        _ => vec![4],
                    }
                } else if (v as u64) <= i_a {
                    vec![]
                } else {
                    vec![2]
                };
                assert_eq!(got, want, "i_A={i_a} v={v}");
            }
        }
    }

    #[test]
    fn rank_one_odd_part_of_multiplier_is_inert() {
        // d = 3 * 2^v behaves like 2^v in every 2-primary piece statement
        // as long as the index is a 2-power: the odd part enters the ideal
        // but the pieces only see 2-power multiples of (1 - e) beyond it.
        let g = FinAb::new(vec![2]).unwrap();
        let k0 =
            K0Ring::from_classes(g.clone(), vec![(vec![1], BigInt::from(24))]).unwrap();
        let asg = single_index(&k0, 4);
        let f = twisted_filtration(&k0, &asg, 5, ClosureMode::Subgroup).unwrap();
        // i_A = 2, v2(24) = 3 > 2: degree 2 quotient of order 2.
        assert_eq!(invs(&f.graded(2).unwrap()), vec![2]);
        // P_1 = <4(1-e), 24(1-e)> = <4(1-e)>: the piece quotient P_1 / I
        // is cyclic of order 6 = 24 / 4.
        assert_eq!(invs(&f.piece_torsion(1).unwrap()), vec![6]);
    }

    #[test]
    fn d8_half_spin_with_index_eight() {
        let k0 = built("D8", "hs");
        let asg = single_index(&k0, 8);
        let f = twisted_filtration(&k0, &asg, 5, ClosureMode::Subgroup).unwrap();
        assert!(f.warnings().is_empty());
        // d = 2^{v2(8)+1} = 16, i_A = 3: graded 2 piece of order 2.
        assert_eq!(invs(&f.graded(2).unwrap()), vec![2]);
        assert!(f.structural_diagnostics().is_empty());
    }

    #[test]
    fn e7_adjoint_with_index_two() {
        let k0 = built("E7", "ad");
        let asg = single_index(&k0, 2);
        let f = twisted_filtration(&k0, &asg, 5, ClosureMode::Subgroup).unwrap();
        assert!(f.warnings().is_empty());
        // i_A = 1, v2(8) = 3: graded 2 piece of order 4.
        assert_eq!(invs(&f.graded(2).unwrap()), vec![4]);
        // The piece itself sits over the ideal with index 4: P_2 = <2y>+I,
        // P_2 / I of order 4.
        assert_eq!(invs(&f.piece_torsion(2).unwrap()), vec![4]);
    }

    #[test]
    fn pgo8_with_quaternion_indices() {
        let k0 = built("D4", "ad");
        let a = IndexAssignment::new(
            k0.group(),
            &[(vec![1, 0], 4), (vec![0, 1], 4), (vec![1, 1], 2)],
        )
        .unwrap();
        let f = twisted_filtration(&k0, &a, 5, ClosureMode::Subgroup).unwrap();
        assert!(f.warnings().is_empty());
        assert_eq!(invs(&f.graded(2).unwrap()), vec![2, 2, 4]);
        assert_eq!(invs(&f.piece_torsion(2).unwrap()), vec![2, 2, 4]);
        assert!(f.structural_diagnostics().is_empty());
    }

    #[test]
    fn inconsistent_assignment_fails_degree_one_collapse() {
        // Adjoint D5 with every nonzero class given index 2: the order
        // screen flags it (the double of an index 2 class must have index
        // 1), and the structural diagnostics show why independently: the
        // degree 1 collapse fails, so no twisted form realizes this.
        let k0 = built("D5", "ad");
        let pairs: Vec<(Vec<i64>, u64)> =
            (1..4).map(|c| (vec![c as i64], 2)).collect();
        let a = IndexAssignment::new(k0.group(), &pairs).unwrap();
        assert!(a
            .soft_warnings()
            .iter()
            .any(|s| s.contains("should have index 1")));
        let f = twisted_filtration(&k0, &a, 4, ClosureMode::Subgroup).unwrap();
        let g1 = f.graded(1).unwrap();
        assert!(!g1.is_trivial());
        assert!(f
            .structural_diagnostics()
            .iter()
            .any(|s| s.contains("degree 1")));
    }

    #[test]
    fn split_equals_all_ones_on_adjoint_groups() {
        for (name, iso) in [("A2", "ad"), ("D4", "ad"), ("B3", "ad")] {
            let k0 = built(name, iso);
            let split = split_filtration(&k0, 4, ClosureMode::Subgroup).unwrap();
            let ones = IndexAssignment::all_ones(k0.group());
            let tw = twisted_filtration(&k0, &ones, 4, ClosureMode::Subgroup).unwrap();
            for i in 0..=4 {
                assert_eq!(split.piece(i).unwrap(), tw.piece(i).unwrap(), "{name} {i}");
            }
        }
    }

    #[test]
    fn split_modes_agree() {
        let k0 = built("D4", "ad");
        let split_sub = split_filtration(&k0, 4, ClosureMode::Subgroup).unwrap();
        let split_ideal = split_filtration(&k0, 4, ClosureMode::Ideal).unwrap();
        for i in 0..=4 {
            assert_eq!(split_sub.piece(i).unwrap(), split_ideal.piece(i).unwrap());
        }
    }

    #[test]
    fn mode_comparison_reports_degrees() {
        let k0 = built("D4", "ad");
        let a = IndexAssignment::new(
            k0.group(),
            &[(vec![1, 0], 4), (vec![0, 1], 4), (vec![1, 1], 2)],
        )
        .unwrap();
        let cmp = compare_modes(&k0, &a, 4).unwrap();
        for &i in &cmp.differing_degrees {
            assert!(cmp.subgroup.piece(i).unwrap() != cmp.ideal.piece(i).unwrap());
        }
        for i in 0..=4 {
            if !cmp.differing_degrees.contains(&i) {
                assert_eq!(cmp.subgroup.piece(i).unwrap(), cmp.ideal.piece(i).unwrap());
            }
        }
        // Subgroup pieces always sit inside the ideal closure.
        for i in 1..=4 {
            assert!(cmp.subgroup.piece(i).unwrap().is_sublattice_of(cmp.ideal.piece(i).unwrap()));
        }
    }

    #[test]
    fn trivial_center_filtration() {
        let k0 = built("G2", "ad");
        let f = split_filtration(&k0, 3, ClosureMode::Subgroup).unwrap();
        assert!(f.achievable().is_empty());
        assert!(f.graded(0).unwrap().is_free_of_rank(1));
        assert!(f.graded(1).unwrap().is_trivial());
        assert!(f.graded(2).unwrap().is_trivial());
    }

    #[test]
    fn degree_bounds_are_checked() {
        let k0 = built("A1", "ad");
        let asg = IndexAssignment::all_ones(k0.group());
        assert!(twisted_filtration(&k0, &asg, 0, ClosureMode::Subgroup).is_err());
        assert!(twisted_filtration(&k0, &asg, 33, ClosureMode::Subgroup).is_err());
        let f = twisted_filtration(&k0, &asg, 3, ClosureMode::Subgroup).unwrap();
        assert!(f.graded(3).is_err());
        assert!(f.piece_torsion(0).is_err());
        assert!(f.piece(4).is_err());
        assert!(f.piece(3).is_ok());
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let k0 = built("A1", "ad");
        let other = FinAb::new(vec![4]).unwrap();
        let asg = IndexAssignment::all_ones(&other);
        assert!(matches!(
            twisted_filtration(&k0, &asg, 3, ClosureMode::Subgroup),
            Err(Error::GroupMismatch)
        ));
    }

    #[test]
    fn index_summary_groups_classes() {
        let k0 = built("D4", "ad");
        let a = IndexAssignment::new(
            k0.group(),
            &[(vec![1, 0], 4), (vec![0, 1], 4), (vec![1, 1], 2)],
        )
        .unwrap();
        let f = twisted_filtration(&k0, &a, 3, ClosureMode::Subgroup).unwrap();
        let s = index_summary(&f);
        assert_eq!(s[&4].len(), 2);
        assert_eq!(s[&2].len(), 1);
    }
}
