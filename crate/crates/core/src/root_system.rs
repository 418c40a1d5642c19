//! Root system data for the split simple groups, Bourbaki numbering.
//!
//! The stored Cartan matrix has row i equal to the simple root alpha_i
//! written in fundamental weight coordinates, so its row span is the root
//! lattice inside the weight lattice and its cokernel is the fundamental
//! group Lambda / Lambda_r. For the non simply laced series this is the
//! transpose of the classical Cartan matrix; the convention is pinned by the
//! dimension tests below (B spin = 2^n, C vector = 2n, G2 = 7 and 14).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{AbElt, FinAb};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMat};

pub const ORBIT_RANK_CAP: usize = 8;
const RANK_CAP: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct RootSystemSpec {
    pub series: Series,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok || rank > RANK_CAP {
            return Err(Error::InvalidRootSystem(format!(
                "{:?}{} is not a valid series/rank combination",
                series, rank
            )));
        }
        Ok(RootSystemSpec { series, rank })
    }
}

impl std::fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl std::str::FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::InvalidRootSystem(format!("cannot parse {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidRootSystem(format!("cannot parse rank in {s:?}")))?;
        RootSystemSpec::new(series, rank)
    }
}

/// Row i = alpha_i in fundamental weight coordinates. 0-indexed rows map to
/// Bourbaki nodes i+1.
pub fn cartan_matrix(spec: RootSystemSpec) -> IntMat {
    let n = spec.rank;
    let mut m = IntMat::zero(n, n);
    for i in 0..n {
        m.set(i, i, BigInt::from(2));
    }
    let mut edge = |a: usize, b: usize| {
        m.set(a, b, BigInt::from(-1));
        m.set(b, a, BigInt::from(-1));
    };
    match spec.series {
        Series::A => {
            for i in 0..n - 1 {
                edge(i, i + 1);
            }
        }
        Series::B => {
            for i in 0..n - 1 {
                edge(i, i + 1);
            }
            // alpha_{n-1} = ... - 2 omega_n: the short node is n.
            m.set(n - 2, n - 1, BigInt::from(-2));
        }
        Series::C => {
            for i in 0..n - 1 {
                edge(i, i + 1);
            }
            // alpha_n = -2 omega_{n-1} + 2 omega_n: the long node is n.
            m.set(n - 1, n - 2, BigInt::from(-2));
        }
        Series::D => {
            for i in 0..n.saturating_sub(3) {
                edge(i, i + 1);
            }
            edge(n - 3, n - 2);
            edge(n - 3, n - 1);
        }
        Series::E => {
            // Chain 1-3-4-5-..., node 2 hangs off node 4.
            edge(0, 2);
            for i in 2..n - 1 {
                edge(i, i + 1);
            }
            edge(1, 3);
        }
        Series::F => {
            edge(0, 1);
            edge(2, 3);
            m.set(1, 2, BigInt::from(-2));
            m.set(2, 1, BigInt::from(-1));
        }
        Series::G => {
            m.set(0, 1, BigInt::from(-1));
            m.set(1, 0, BigInt::from(-3));
        }
    }
    m
}

/// Positive coroots in simple coroot coordinates, generated from the simple
/// coroots by reflections, discarding anything that leaves the positive cone.
pub fn positive_coroots(spec: RootSystemSpec) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let m = cartan_matrix(spec);
    let mrows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| int_at(&m, i, j)).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        frontier.push(e);
    }
    while let Some(k) = frontier.pop() {
        for (i, mrow) in mrows.iter().enumerate() {
            // s_i(k) = k - <k, alpha_i> e_i with the pairing read off row i.
            let pairing: i64 = mrow.iter().zip(&k).map(|(&c, &x)| c * x).sum();
            let mut next = k.clone();
            next[i] -= pairing;
            if next.iter().all(|&x| x >= 0) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn int_at(m: &IntMat, i: usize, j: usize) -> i64 {
    use num_traits::ToPrimitive;
    m.at(i, j).to_i64().expect("Cartan entries are small")
}

/// Exact Weyl dimension of the irreducible representation with highest
/// weight `weight` (fundamental weight coordinates, all entries >= 0).
pub fn weyl_dimension(spec: RootSystemSpec, weight: &[i64]) -> Result<BigInt> {
    if weight.len() != spec.rank {
        return Err(Error::DimensionMismatch(format!(
            "weight has {} coordinates, rank is {}",
            weight.len(),
            spec.rank
        )));
    }
    if weight.iter().any(|&x| x < 0) {
        return Err(Error::NonDominantWeight(format!("{weight:?}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in positive_coroots(spec) {
        let top: i64 = k.iter().zip(weight).map(|(&c, &l)| c * (l + 1)).sum();
        let bot: i64 = k.iter().sum();
        num *= BigInt::from(top);
        den *= BigInt::from(bot);
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "Weyl dimension division must be exact");
    Ok(q)
}

/// Size of the Weyl orbit of the fundamental weight at the given Bourbaki
/// node (1-based). Plain breadth-first closure in weight coordinates, so the
/// rank is capped to keep the orbit enumerable.
pub fn orbit_size(spec: RootSystemSpec, node: usize) -> Result<u64> {
    if spec.rank > ORBIT_RANK_CAP {
        return Err(Error::OrbitRankCap { rank: spec.rank, cap: ORBIT_RANK_CAP });
    }
    if node == 0 || node > spec.rank {
        return Err(Error::DimensionMismatch(format!(
            "node {node} out of range for rank {}",
            spec.rank
        )));
    }
    let n = spec.rank;
    let m = cartan_matrix(spec);
    let mrows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| int_at(&m, i, j)).collect())
        .collect();
    let mut start = vec![0i64; n];
    start[node - 1] = 1;
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(w) = frontier.pop() {
        for (j, mrow) in mrows.iter().enumerate() {
            if w[j] == 0 {
                continue;
            }
            // s_j(w) = w - w_j * alpha_j.
            let wj = w[j];
            let mut next = w.clone();
            for (x, &c) in next.iter_mut().zip(mrow) {
                *x -= wj * c;
            }
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Lambda / Lambda_r in invariant factor coordinates, together with the
/// classes of the fundamental weights (0-indexed list, node i+1).
pub fn fundamental_group(spec: RootSystemSpec) -> (FinAb, Vec<AbElt>) {
    let n = spec.rank;
    let m = cartan_matrix(spec);
    let sm = smith_normal_form(&m);
    let mut kept: Vec<(usize, u64)> = Vec::new();
    for (j, d) in sm.diagonal().iter().enumerate() {
        use num_traits::ToPrimitive;
        assert!(!d.is_zero(), "Cartan matrix is nonsingular");
        if !d.is_one() {
            kept.push((j, d.to_u64().expect("fundamental group order fits u64")));
        }
    }
    let group = FinAb::new(kept.iter().map(|&(_, f)| f).collect())
        .expect("SNF diagonal is a divisibility chain");
    let omega_bar = (0..n)
        .map(|i| {
            kept.iter()
                .map(|&(j, f)| {
                    use num_integer::Integer;
                    use num_traits::ToPrimitive;
                    sm.v.at(i, j)
                        .mod_floor(&BigInt::from(f))
                        .to_u64()
                        .expect("reduced below u64 factor")
                })
                .collect()
        })
        .collect();
    (group, omega_bar)
}

/// Which subgroup of the fundamental group the character lattice of the
/// isogeny form covers. A = Lambda / T* is the quotient by that subgroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IsogenySpec {
    /// T* = Lambda, A trivial.
    SimplyConnected,
    /// T* = Lambda_r, A is the full fundamental group.
    Adjoint,
    /// D series, quotient by the vector class omega_bar_1.
    SpecialOrthogonal,
    /// D series of even rank, quotient by the half spin class omega_bar_n.
    HalfSpin,
    /// A series, quotient of SL_{n+1} by mu_m, m dividing n+1.
    CyclicQuotient(u64),
    /// Quotient by an explicitly listed subgroup of Lambda / Lambda_r,
    /// coordinates in invariant factor form.
    Explicit(Vec<Vec<i64>>),
}

impl std::fmt::Display for IsogenySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsogenySpec::SimplyConnected => write!(f, "sc"),
            IsogenySpec::Adjoint => write!(f, "ad"),
            IsogenySpec::SpecialOrthogonal => write!(f, "so"),
            IsogenySpec::HalfSpin => write!(f, "hs"),
            IsogenySpec::CyclicQuotient(m) => write!(f, "mu:{m}"),
            IsogenySpec::Explicit(rows) => {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("({})", cs.join(","))
                    })
                    .collect();
                write!(f, "sub:[{}]", parts.join(";"))
            }
        }
    }
}

impl std::str::FromStr for IsogenySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "sc" => return Ok(IsogenySpec::SimplyConnected),
            "ad" => return Ok(IsogenySpec::Adjoint),
            "so" => return Ok(IsogenySpec::SpecialOrthogonal),
            "hs" => return Ok(IsogenySpec::HalfSpin),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("mu:") {
            let m: u64 = m.parse().map_err(|_| {
                Error::InvalidIsogeny { spec: s.into(), reason: "bad mu order".into() }
            })?;
            return Ok(IsogenySpec::CyclicQuotient(m));
        }
        if let Some(body) = s.strip_prefix("sub:") {
            let body = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidIsogeny {
                    spec: s.into(),
                    reason: "sub wants [..;..]".into(),
                })?;
            let mut rows = Vec::new();
            for part in body.split(';').filter(|p| !p.trim().is_empty()) {
                let part = part.trim().trim_start_matches('(').trim_end_matches(')');
                let mut row = Vec::new();
                for c in part.split(',') {
                    let x: i64 = c.trim().parse().map_err(|_| Error::InvalidIsogeny {
                        spec: s.into(),
                        reason: format!("bad coordinate {c:?}"),
                    })?;
                    row.push(x);
                }
                rows.push(row);
            }
            return Ok(IsogenySpec::Explicit(rows));
        }
        Err(Error::InvalidIsogeny { spec: s.into(), reason: "unknown isogeny".into() })
    }
}

/// The group A = Lambda / T* with the classes of the fundamental weights.
#[derive(Clone, Debug)]
pub struct CharacterQuotient {
    pub spec: RootSystemSpec,
    pub isogeny: IsogenySpec,
    pub group: FinAb,
    pub omega_bar: Vec<AbElt>,
}

pub fn character_quotient(spec: RootSystemSpec, isogeny: IsogenySpec) -> Result<CharacterQuotient> {
    let (fg, obars) = fundamental_group(spec);
    let gens: Vec<AbElt> = match &isogeny {
        IsogenySpec::SimplyConnected => fg.elements(),
        IsogenySpec::Adjoint => Vec::new(),
        IsogenySpec::SpecialOrthogonal => {
            if spec.series != Series::D {
                return Err(Error::InvalidIsogeny {
                    spec: spec.to_string(),
                    reason: "so needs the D series".into(),
                });
            }
            vec![obars[0].clone()]
        }
        IsogenySpec::HalfSpin => {
            if spec.series != Series::D || spec.rank % 2 != 0 {
                return Err(Error::InvalidIsogeny {
                    spec: spec.to_string(),
                    reason: "hs needs the D series of even rank".into(),
                });
            }
            vec![obars[spec.rank - 1].clone()]
        }
        IsogenySpec::CyclicQuotient(m) => {
            let order = (spec.rank + 1) as u64;
            if spec.series != Series::A || *m == 0 || order % m != 0 {
                return Err(Error::InvalidIsogeny {
                    spec: spec.to_string(),
                    reason: format!("mu:{m} needs the A series with {m} dividing rank+1"),
                });
            }
            // Characters killing mu_m are the multiples of m in Z/(n+1).
            vec![fg.reduce(&[*m as i64]).expect("A series fundamental group is cyclic")]
        }
        IsogenySpec::Explicit(rows) => {
            let mut gens = Vec::new();
            for r in rows {
                gens.push(fg.reduce(r).map_err(|_| Error::InvalidIsogeny {
                    spec: spec.to_string(),
                    reason: format!(
                        "subgroup generator {:?} wants {} coordinates",
                        r,
                        fg.factors().len()
                    ),
                })?);
            }
            gens
        }
    };
    let (group, map) = fg.quotient(&gens)?;
    let omega_bar = obars.iter().map(|o| map.apply(o)).collect();
    Ok(CharacterQuotient { spec, isogeny, group, omega_bar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn spec(s: &str) -> RootSystemSpec {
        RootSystemSpec::from_str(s).unwrap()
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!(spec("E7"), RootSystemSpec { series: Series::E, rank: 7 });
        assert_eq!(spec("a3").to_string(), "A3");
        assert!(RootSystemSpec::from_str("E9").is_err());
        assert!(RootSystemSpec::from_str("B1").is_err());
        assert!(RootSystemSpec::from_str("D2").is_err());
        assert!(RootSystemSpec::from_str("F3").is_err());
        assert!(RootSystemSpec::from_str("H4").is_err());
        assert!(RootSystemSpec::from_str("A0").is_err());
        assert!(RootSystemSpec::from_str("A1").is_ok());
        assert!(RootSystemSpec::from_str("D3").is_ok());
    }

    #[test]
    fn cartan_determinants_match_center_orders() {
        // det of the Cartan matrix = order of the fundamental group.
        let expect = [
            ("A1", 2), ("A4", 5), ("A7", 8),
            ("B2", 2), ("B5", 2),
            ("C3", 2), ("C6", 2),
            ("D3", 4), ("D4", 4), ("D7", 4),
            ("E6", 3), ("E7", 2), ("E8", 1),
            ("F4", 1), ("G2", 1),
        ];
        for (name, d) in expect {
            let m = cartan_matrix(spec(name));
            assert_eq!(m.det().unwrap(), BigInt::from(d), "{name}");
        }
    }

    #[test]
    fn positive_coroot_counts() {
        let expect = [
            ("A1", 1), ("A2", 3), ("A5", 15),
            ("B2", 4), ("B3", 9), ("B6", 36),
            ("C2", 4), ("C5", 25),
            ("D3", 6), ("D4", 12), ("D6", 30),
            ("E6", 36), ("E7", 63), ("E8", 120),
            ("F4", 24), ("G2", 6),
        ];
        for (name, count) in expect {
            assert_eq!(positive_coroots(spec(name)).len(), count, "{name}");
        }
    }

    #[test]
    fn classical_dimension_tables() {
        // A_n: fundamental representations are exterior powers.
        for n in 1..=6usize {
            for k in 1..=n {
                let mut w = vec![0i64; n];
                w[k - 1] = 1;
                let expect = num_integer::binomial(BigInt::from(n as i64 + 1), BigInt::from(k as i64));
                assert_eq!(weyl_dimension(spec(&format!("A{n}")), &w).unwrap(), expect);
            }
        }
        // B_n: vector 2n+1, spin 2^n, adjoint at node 2.
        for n in 2..=7usize {
            let s = spec(&format!("B{n}"));
            let mut w = vec![0i64; n];
            w[0] = 1;
            assert_eq!(weyl_dimension(s, &w).unwrap(), BigInt::from(2 * n as i64 + 1));
            let mut w = vec![0i64; n];
            w[n - 1] = 1;
            assert_eq!(weyl_dimension(s, &w).unwrap(), BigInt::from(1i64 << n));
        }
        // C_n: Lambda^k of the 2n vector rep modulo the symplectic form.
        for n in 2..=6usize {
            let s = spec(&format!("C{n}"));
            for k in 1..=n {
                let mut w = vec![0i64; n];
                w[k - 1] = 1;
                let choose = |a: i64, b: i64| -> BigInt {
                    if b < 0 {
                        BigInt::zero()
                    } else {
                        num_integer::binomial(BigInt::from(a), BigInt::from(b))
                    }
                };
                let expect = choose(2 * n as i64, k as i64) - choose(2 * n as i64, k as i64 - 2);
                assert_eq!(weyl_dimension(s, &w).unwrap(), expect, "C{n} node {k}");
            }
        }
        // D_n: vector 2n, half spins 2^{n-1}.
        for n in 3..=8usize {
            let s = spec(&format!("D{n}"));
            let mut w = vec![0i64; n];
            w[0] = 1;
            assert_eq!(weyl_dimension(s, &w).unwrap(), BigInt::from(2 * n as i64));
            for node in [n - 1, n] {
                let mut w = vec![0i64; n];
                w[node - 1] = 1;
                assert_eq!(weyl_dimension(s, &w).unwrap(), BigInt::from(1i64 << (n - 1)));
            }
        }
    }

    #[test]
    fn exceptional_dimension_tables() {
        let e6: Vec<i64> = vec![27, 78, 351, 2925, 351, 27];
        for (i, d) in e6.iter().enumerate() {
            let mut w = vec![0i64; 6];
            w[i] = 1;
            assert_eq!(weyl_dimension(spec("E6"), &w).unwrap(), BigInt::from(*d), "E6 node {}", i + 1);
        }
        let e7: Vec<i64> = vec![133, 912, 8645, 365750, 27664, 1539, 56];
        for (i, d) in e7.iter().enumerate() {
            let mut w = vec![0i64; 7];
            w[i] = 1;
            assert_eq!(weyl_dimension(spec("E7"), &w).unwrap(), BigInt::from(*d), "E7 node {}", i + 1);
        }
        for (node, d) in [(1usize, 3875i64), (7, 30380), (8, 248)] {
            let mut w = vec![0i64; 8];
            w[node - 1] = 1;
            assert_eq!(weyl_dimension(spec("E8"), &w).unwrap(), BigInt::from(d), "E8 node {node}");
        }
        let f4: Vec<i64> = vec![52, 1274, 273, 26];
        for (i, d) in f4.iter().enumerate() {
            let mut w = vec![0i64; 4];
            w[i] = 1;
            assert_eq!(weyl_dimension(spec("F4"), &w).unwrap(), BigInt::from(*d), "F4 node {}", i + 1);
        }
        assert_eq!(weyl_dimension(spec("G2"), &[1, 0]).unwrap(), BigInt::from(7));
        assert_eq!(weyl_dimension(spec("G2"), &[0, 1]).unwrap(), BigInt::from(14));
        // A non-fundamental weight: adjoint of A2 at (1,1).
        assert_eq!(weyl_dimension(spec("A2"), &[1, 1]).unwrap(), BigInt::from(8));
    }

    #[test]
    fn dimension_rejects_bad_weights() {
        assert!(weyl_dimension(spec("A2"), &[1]).is_err());
        assert!(weyl_dimension(spec("A2"), &[-1, 0]).is_err());
    }

    // Automorphisms of the small groups that occur as fundamental groups:
    // cyclic (units) and Z/2 x Z/2 (GL_2 over F_2).
    fn automorphisms(g: &FinAb) -> Vec<Box<dyn Fn(&AbElt) -> AbElt + '_>> {
        match g.factors() {
            [] => vec![Box::new(|_: &AbElt| Vec::new())],
            [m] => {
                let m = *m;
                (1..m)
                    .filter(move |u| num_integer::Integer::gcd(u, &m) == 1)
                    .map(|u| {
                        let f: Box<dyn Fn(&AbElt) -> AbElt> =
                            Box::new(move |a: &AbElt| vec![(a[0] * u) % m]);
                        f
                    })
                    .collect()
            }
            [2, 2] => {
                let mut out: Vec<Box<dyn Fn(&AbElt) -> AbElt>> = Vec::new();
                for mat in [
                    [[1, 0], [0, 1]],
                    [[0, 1], [1, 0]],
                    [[1, 1], [0, 1]],
                    [[1, 0], [1, 1]],
                    [[0, 1], [1, 1]],
                    [[1, 1], [1, 0]],
                ] {
                    out.push(Box::new(move |a: &AbElt| {
                        vec![
                            (mat[0][0] * a[0] + mat[1][0] * a[1]) % 2,
                            (mat[0][1] * a[0] + mat[1][1] * a[1]) % 2,
                        ]
                    }));
                }
                out
            }
            other => panic!("no automorphism table for {other:?}"),
        }
    }

    fn expect_fundamental(name: &str, factors: &[u64], obars: &[&[u64]]) {
        let (g, computed) = fundamental_group(spec(name));
        assert_eq!(g.factors(), factors, "{name} group");
        let expected: Vec<AbElt> = obars.iter().map(|o| o.to_vec()).collect();
        let found = automorphisms(&g).iter().any(|phi| {
            expected.iter().zip(&computed).all(|(e, c)| &phi(e) == c)
        });
        assert!(
            found,
            "{name}: no automorphism matches expected {expected:?} to computed {computed:?}"
        );
    }

    #[test]
    fn fundamental_groups_match_the_classical_tables() {
        // A_n: Z/(n+1) with omega_bar_i = i sigma.
        expect_fundamental("A1", &[2], &[&[1]]);
        expect_fundamental("A2", &[3], &[&[1], &[2]]);
        expect_fundamental("A3", &[4], &[&[1], &[2], &[3]]);
        expect_fundamental("A4", &[5], &[&[1], &[2], &[3], &[4]]);
        expect_fundamental("A5", &[6], &[&[1], &[2], &[3], &[4], &[5]]);
        // B_n: only the spin node is nontrivial.
        expect_fundamental("B2", &[2], &[&[0], &[1]]);
        expect_fundamental("B3", &[2], &[&[0], &[0], &[1]]);
        expect_fundamental("B6", &[2], &[&[0], &[0], &[0], &[0], &[0], &[1]]);
        // C_n: odd nodes are nontrivial.
        expect_fundamental("C2", &[2], &[&[1], &[0]]);
        expect_fundamental("C3", &[2], &[&[1], &[0], &[1]]);
        expect_fundamental("C6", &[2], &[&[1], &[0], &[1], &[0], &[1], &[0]]);
        // D_n even: Z/2 x Z/2, the two spin nodes generate, the vector class
        // is their sum, even inner nodes vanish.
        expect_fundamental("D4", &[2, 2], &[&[1, 1], &[0, 0], &[1, 0], &[0, 1]]);
        expect_fundamental(
            "D6",
            &[2, 2],
            &[&[1, 1], &[0, 0], &[1, 1], &[0, 0], &[1, 0], &[0, 1]],
        );
        expect_fundamental(
            "D8",
            &[2, 2],
            &[&[1, 1], &[0, 0], &[1, 1], &[0, 0], &[1, 1], &[0, 0], &[1, 0], &[0, 1]],
        );
        // D_n odd: Z/4, spin nodes have order 4, vector class is 2 sigma.
        expect_fundamental("D3", &[4], &[&[2], &[1], &[3]]);
        expect_fundamental("D5", &[4], &[&[2], &[0], &[2], &[1], &[3]]);
        expect_fundamental("D7", &[4], &[&[2], &[0], &[2], &[0], &[2], &[1], &[3]]);
        // Exceptional series.
        expect_fundamental("E6", &[3], &[&[1], &[0], &[2], &[0], &[1], &[2]]);
        expect_fundamental("E7", &[2], &[&[0], &[1], &[0], &[0], &[1], &[0], &[1]]);
        expect_fundamental("E8", &[], &[&[] as &[u64]; 8]);
        expect_fundamental("F4", &[], &[&[] as &[u64]; 4]);
        expect_fundamental("G2", &[], &[&[] as &[u64]; 2]);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(spec("A2"), 1).unwrap(), 3);
        assert_eq!(orbit_size(spec("A3"), 2).unwrap(), 6);
        assert_eq!(orbit_size(spec("B3"), 3).unwrap(), 8);
        assert_eq!(orbit_size(spec("D4"), 1).unwrap(), 8);
        assert_eq!(orbit_size(spec("E7"), 7).unwrap(), 56);
        assert_eq!(orbit_size(spec("E7"), 2).unwrap(), 576);
        assert!(matches!(
            orbit_size(spec("A9"), 1),
            Err(Error::OrbitRankCap { rank: 9, cap: 8 })
        ));
        assert!(orbit_size(spec("A2"), 3).is_err());
    }

    /// Minuscule fundamental weights per series (Bourbaki nodes): exactly
    /// these have dimension equal to orbit size.
    fn minuscule_nodes(s: RootSystemSpec) -> Vec<usize> {
        match s.series {
            Series::A => (1..=s.rank).collect(),
            Series::B => vec![s.rank],
            Series::C => vec![1],
            Series::D => vec![1, s.rank - 1, s.rank],
            Series::E if s.rank == 6 => vec![1, 6],
            Series::E if s.rank == 7 => vec![7],
            _ => vec![],
        }
    }

    #[test]
    fn dimension_equals_orbit_size_exactly_for_minuscule_weights() {
        let mut names: Vec<String> = Vec::new();
        for n in 1..=7 {
            names.push(format!("A{n}"));
        }
        for n in 2..=7 {
            names.push(format!("B{n}"));
            names.push(format!("C{n}"));
        }
        for n in 3..=7 {
            names.push(format!("D{n}"));
        }
        names.extend(["E6".into(), "E7".into(), "F4".into(), "G2".into()]);
        for name in names {
            let s = spec(&name);
            let minuscule = minuscule_nodes(s);
            for node in 1..=s.rank {
                let mut w = vec![0i64; s.rank];
                w[node - 1] = 1;
                let dim = weyl_dimension(s, &w).unwrap();
                let orbit = orbit_size(s, node).unwrap();
                assert_eq!(
                    dim == BigInt::from(orbit),
                    minuscule.contains(&node),
                    "{name} node {node}: dim {dim}, orbit {orbit}"
                );
            }
        }
    }

    #[test]
    fn isogeny_parsing() {
        assert_eq!(IsogenySpec::from_str("sc").unwrap(), IsogenySpec::SimplyConnected);
        assert_eq!(IsogenySpec::from_str("ad").unwrap(), IsogenySpec::Adjoint);
        assert_eq!(IsogenySpec::from_str("so").unwrap(), IsogenySpec::SpecialOrthogonal);
        assert_eq!(IsogenySpec::from_str("hs").unwrap(), IsogenySpec::HalfSpin);
        assert_eq!(IsogenySpec::from_str("mu:3").unwrap(), IsogenySpec::CyclicQuotient(3));
        assert_eq!(
            IsogenySpec::from_str("sub:[(1,0);(0,1)]").unwrap(),
            IsogenySpec::Explicit(vec![vec![1, 0], vec![0, 1]])
        );
        assert_eq!(
            IsogenySpec::from_str("sub:[2]").unwrap(),
            IsogenySpec::Explicit(vec![vec![2]])
        );
        assert!(IsogenySpec::from_str("xyz").is_err());
        assert!(IsogenySpec::from_str("mu:x").is_err());
        // Round trip through Display.
        for s in ["sc", "ad", "so", "hs", "mu:4", "sub:[(1,0);(0,1)]"] {
            assert_eq!(IsogenySpec::from_str(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn character_quotients_by_preset() {
        // Simply connected: A is trivial.
        let cq = character_quotient(spec("E7"), IsogenySpec::SimplyConnected).unwrap();
        assert!(cq.group.is_trivial());

        // Adjoint E7: Z/2 with the known class pattern.
        let cq = character_quotient(spec("E7"), IsogenySpec::Adjoint).unwrap();
        assert_eq!(cq.group.factors(), &[2]);
        let pat: Vec<u64> = cq.omega_bar.iter().map(|o| o[0]).collect();
        assert_eq!(pat, vec![0, 1, 0, 0, 1, 0, 1]);

        // SO_2n for both parities: A = Z/2.
        for name in ["D4", "D5", "D6", "D7"] {
            let cq = character_quotient(spec(name), IsogenySpec::SpecialOrthogonal).unwrap();
            assert_eq!(cq.group.factors(), &[2], "{name}");
            // The spin classes map onto the nonzero element.
            assert_eq!(cq.omega_bar[cq.spec.rank - 1], vec![1], "{name}");
        }

        // Half spin needs even rank.
        assert!(character_quotient(spec("D5"), IsogenySpec::HalfSpin).is_err());
        let cq = character_quotient(spec("D6"), IsogenySpec::HalfSpin).unwrap();
        assert_eq!(cq.group.factors(), &[2]);
        // sigma = omega_bar_{n-1} survives, omega_bar_n dies, odd nodes carry sigma.
        assert_eq!(cq.omega_bar[5], vec![0]);
        assert_eq!(cq.omega_bar[4], vec![1]);
        assert_eq!(cq.omega_bar[0], vec![1]);
        assert_eq!(cq.omega_bar[1], vec![0]);

        // mu quotients of the A series.
        let cq = character_quotient(spec("A5"), IsogenySpec::CyclicQuotient(3)).unwrap();
        assert_eq!(cq.group.factors(), &[3]);
        let pat: Vec<u64> = cq.omega_bar.iter().map(|o| o[0]).collect();
        // omega_bar_i = i mod 3 up to an automorphism of Z/3.
        assert!(pat == vec![1, 2, 0, 1, 2] || pat == vec![2, 1, 0, 2, 1]);
        assert!(character_quotient(spec("A5"), IsogenySpec::CyclicQuotient(4)).is_err());
        assert!(character_quotient(spec("B3"), IsogenySpec::CyclicQuotient(2)).is_err());
        let cq = character_quotient(spec("A3"), IsogenySpec::CyclicQuotient(1)).unwrap();
        assert!(cq.group.is_trivial());
        let cq = character_quotient(spec("A3"), IsogenySpec::CyclicQuotient(4)).unwrap();
        assert_eq!(cq.group.factors(), &[4]);

        // Explicit subgroup: D4 modulo one spin class is the same as hs.
        let hs = character_quotient(spec("D4"), IsogenySpec::HalfSpin).unwrap();
        let (_, obars) = fundamental_group(spec("D4"));
        let gen: Vec<i64> = obars[3].iter().map(|&x| x as i64).collect();
        let ex = character_quotient(spec("D4"), IsogenySpec::Explicit(vec![gen])).unwrap();
        assert_eq!(ex.group.factors(), hs.group.factors());
        assert_eq!(ex.omega_bar, hs.omega_bar);
        assert!(character_quotient(spec("D4"), IsogenySpec::Explicit(vec![vec![1]])).is_err());

        // so on a non-D series is rejected.
        assert!(character_quotient(spec("B3"), IsogenySpec::SpecialOrthogonal).is_err());
    }
}
