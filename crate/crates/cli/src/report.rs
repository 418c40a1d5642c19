//! Result shapes shared by the text and JSON output paths. Every report
//! serializes losslessly: parsing the emitted JSON reproduces the struct,
//! so downstream tooling can treat the JSON form as the source of truth.

use std::fmt::Write as _;

use gammaring::{weyl_dimension, Filtration, K0Ring, QuotientShape};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct ShapeDto {
    pub free_rank: usize,
    pub invariants: Vec<String>,
}

impl ShapeDto {
    pub fn of(shape: &QuotientShape) -> ShapeDto {
        ShapeDto {
            free_rank: shape.free_rank,
            invariants: shape.invariants.iter().map(|d| d.to_string()).collect(),
        }
    }

    /// Invariant factor list, "[2, 4]". A free part shows up as a Z^r prefix.
    pub fn bracket(&self) -> String {
        let list = format!("[{}]", self.invariants.join(", "));
        match self.free_rank {
            0 => list,
            r => format!("Z^{r} + {list}"),
        }
    }

    /// "Z + Z/8 + Z/8", or "0" for the trivial group.
    pub fn display(&self) -> String {
        let mut parts = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.invariants.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn coords(class: &[u64]) -> String {
    let inner: Vec<String> = class.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join(","))
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct NodeRow {
    pub node: usize,
    pub dimension: String,
    pub class: Vec<u64>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct VariableRow {
    pub name: String,
    pub class: Vec<u64>,
    pub class_order: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct RingReport {
    pub group: String,
    pub isogeny: String,
    pub class_group: Vec<u64>,
    pub nodes: Vec<NodeRow>,
    pub variables: Vec<VariableRow>,
    pub multiplicative_relations: Vec<String>,
    pub additive_relations: Vec<String>,
    pub additive: ShapeDto,
    pub torsion: ShapeDto,
}

pub fn ring_report(k0: &K0Ring) -> Result<RingReport, CliError> {
    let cq = k0
        .character_quotient()
        .ok_or_else(|| CliError::Usage("ring was not built from a root system".into()))?;
    let mut nodes = Vec::new();
    for i in 1..=cq.spec.rank {
        let mut w = vec![0i64; cq.spec.rank];
        w[i - 1] = 1;
        let dim = weyl_dimension(cq.spec, &w).map_err(CliError::usage)?;
        nodes.push(NodeRow {
            node: i,
            dimension: dim.to_string(),
            class: cq.omega_bar[i - 1].clone(),
        });
    }
    let pres = k0.presentation();
    let k = k0.group().factors().len();
    let variables = pres
        .variables
        .iter()
        .enumerate()
        .map(|(j, (name, f))| {
            let mut class = vec![0u64; k];
            class[j] = 1;
            VariableRow { name: name.clone(), class, class_order: *f }
        })
        .collect();
    let torsion = k0.torsion_shape().map_err(CliError::usage)?;
    Ok(RingReport {
        group: cq.spec.to_string(),
        isogeny: cq.isogeny.to_string(),
        class_group: k0.group().factors().to_vec(),
        nodes,
        variables,
        multiplicative_relations: pres.multiplicative_relations,
        additive_relations: pres.additive_relations,
        additive: ShapeDto::of(k0.shape()),
        torsion: ShapeDto::of(&torsion),
    })
}

pub fn ring_text(r: &RingReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring for {} {}", r.group, r.isogeny);
    let cg = if r.class_group.is_empty() {
        "trivial".to_string()
    } else {
        let parts: Vec<String> = r.class_group.iter().map(|f| format!("Z/{f}")).collect();
        parts.join(" x ")
    };
    let _ = writeln!(out, "class group: {cg}");
    let _ = writeln!(out, "node  dimension  class");
    for n in &r.nodes {
        let _ = writeln!(out, "{:>4}  {:>9}  {}", n.node, n.dimension, coords(&n.class));
    }
    if r.variables.is_empty() {
        let _ = writeln!(out, "ring: Z");
    } else {
        for v in &r.variables {
            let _ = writeln!(
                out,
                "{} = 1 - e[{}], class order {}",
                v.name,
                coords(&v.class),
                v.class_order
            );
        }
        let _ = writeln!(out, "multiplicative relations:");
        for rel in &r.multiplicative_relations {
            let _ = writeln!(out, "  {rel} = 0");
        }
        let _ = writeln!(out, "additive relations:");
        for rel in &r.additive_relations {
            let _ = writeln!(out, "  {rel} = 0");
        }
    }
    let _ = writeln!(out, "additive structure: {}", r.additive.display());
    let _ = writeln!(out, "torsion subgroup: {}", r.torsion.display());
    out
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct IndexRow {
    pub class: Vec<u64>,
    pub index: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct FactorRow {
    pub class: Vec<u64>,
    pub power: u64,
    pub degree: usize,
    pub element: String,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct DegreeRow {
    pub degree: usize,
    pub generators: Vec<String>,
    /// Absent on the last computed degree, which has no successor piece.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graded: Option<ShapeDto>,
    pub piece_mod_ideal: ShapeDto,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct FiltrationReport {
    pub group: String,
    pub isogeny: String,
    pub mode: String,
    pub max_degree: usize,
    pub stabilized: bool,
    pub indices: Vec<IndexRow>,
    pub warnings: Vec<String>,
    pub factors: Vec<FactorRow>,
    pub degrees: Vec<DegreeRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode_disagreements: Option<Vec<usize>>,
}

pub fn filtration_report(
    f: &Filtration,
    mode_disagreements: Option<Vec<usize>>,
) -> Result<FiltrationReport, CliError> {
    let k0 = f.k0();
    let (group, isogeny) = match k0.character_quotient() {
        Some(cq) => (cq.spec.to_string(), cq.isogeny.to_string()),
        None => ("custom".into(), "custom".into()),
    };
    let ring = k0.ring();
    let indices = f
        .assignment()
        .entries()
        .into_iter()
        .map(|(class, index)| IndexRow { class, index })
        .collect();
    let factors = f
        .factors()
        .iter()
        .map(|b| {
            let elt = ring
                .from_coeffs(b.coeffs.clone())
                .expect("factors are stored over the same ring");
            FactorRow {
                class: b.class.clone(),
                power: b.n,
                degree: b.degree,
                element: ring.render(&elt),
            }
        })
        .collect();
    let mut degrees = Vec::new();
    for i in 1..=f.max_degree() {
        let generators = f
            .piece(i)
            .map_err(CliError::usage)?
            .basis()
            .iter()
            .map(|row| {
                let elt = ring
                    .from_coeffs(row.clone())
                    .expect("piece bases live in the ring lattice");
                ring.render(&elt)
            })
            .collect();
        let graded = if i < f.max_degree() {
            Some(ShapeDto::of(&f.graded(i).map_err(CliError::usage)?))
        } else {
            None
        };
        degrees.push(DegreeRow {
            degree: i,
            generators,
            graded,
            piece_mod_ideal: ShapeDto::of(&f.piece_torsion(i).map_err(CliError::usage)?),
        });
    }
    Ok(FiltrationReport {
        group,
        isogeny,
        mode: match f.mode() {
            gammaring::ClosureMode::Subgroup => "subgroup".into(),
            gammaring::ClosureMode::Ideal => "ideal".into(),
        },
        max_degree: f.max_degree(),
        stabilized: f.stabilized(),
        indices,
        warnings: f.warnings().to_vec(),
        factors,
        degrees,
        mode_disagreements,
    })
}

pub fn filtration_text(r: &FiltrationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "filtration for {} {} ({} closure, max degree {})",
        r.group, r.isogeny, r.mode, r.max_degree
    );
    let _ = writeln!(out, "indices:");
    for row in &r.indices {
        let _ = writeln!(out, "  {} = {}", coords(&row.class), row.index);
    }
    if r.warnings.is_empty() {
        let _ = writeln!(out, "warnings: none");
    } else {
        let _ = writeln!(out, "warnings:");
        for w in &r.warnings {
            let _ = writeln!(out, "  - {w}");
        }
    }
    let _ = writeln!(out, "basic factors:");
    for b in &r.factors {
        let _ = writeln!(
            out,
            "  class {} power {} degree {}: {}",
            coords(&b.class),
            b.power,
            b.degree,
            b.element
        );
    }
    let _ = writeln!(out, "pieces:");
    for d in &r.degrees {
        let graded = match &d.graded {
            Some(s) => format!("graded = {}", s.bracket()),
            None => "graded = n/a".into(),
        };
        let _ = writeln!(
            out,
            "  gamma^{}: {}, piece mod ideal = {}",
            d.degree,
            graded,
            d.piece_mod_ideal.bracket()
        );
    }
    let _ = writeln!(out, "generators:");
    for d in &r.degrees {
        let _ = writeln!(out, "  gamma^{}: {}", d.degree, d.generators.join("; "));
    }
    if let Some(diff) = &r.mode_disagreements {
        if diff.is_empty() {
            let _ = writeln!(out, "closure modes agree at every degree");
        } else {
            let degs: Vec<String> = diff.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "closure modes differ at degrees: {}", degs.join(", "));
        }
    }
    let _ = writeln!(out, "stabilized: {}", if r.stabilized { "yes" } else { "no" });
    out
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct CheckRow {
    pub name: String,
    pub ok: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReport {
    HalfSpin {
        n: usize,
        i_a: u32,
        d: String,
        d_exponent: u64,
        index: u64,
        applicable: bool,
        checks: Vec<CheckRow>,
        passed: bool,
    },
    RankSevenCycle {
        i_a: u32,
        c_value: String,
        class: String,
        law_holds: bool,
        nontrivial: bool,
        predicted: bool,
        verdict: bool,
    },
}

pub fn witness_text(r: &WitnessReport) -> String {
    let mut out = String::new();
    match r {
        WitnessReport::HalfSpin { n, i_a, d, d_exponent, index, applicable, checks, passed } => {
            let _ = writeln!(out, "half spin witness for D{n}, index {index} = 2^{i_a}");
            let _ = writeln!(out, "d = {d} = 2^{d_exponent}");
            let _ = writeln!(out, "applicable: {}", if *applicable { "yes" } else { "no" });
            for c in checks {
                let _ = writeln!(out, "  {:<40} {}", c.name, if c.ok { "ok" } else { "FAIL" });
            }
            let _ = writeln!(out, "witness passed: {}", if *passed { "yes" } else { "no" });
        }
        WitnessReport::RankSevenCycle {
            i_a,
            c_value,
            class,
            law_holds,
            nontrivial,
            predicted,
            verdict,
        } => {
            let _ = writeln!(out, "rank seven cycle check, index 2^{i_a}");
            let _ = writeln!(out, "folded coefficient C = {c_value}");
            let _ = writeln!(out, "pushforward class: {class}");
            let _ = writeln!(out, "law holds: {}", if *law_holds { "yes" } else { "no" });
            let _ = writeln!(
                out,
                "survives modulo degree 3: {}",
                if *nontrivial { "yes" } else { "no" }
            );
            let _ = writeln!(out, "predicted: {}", if *predicted { "yes" } else { "no" });
            let _ = writeln!(
                out,
                "verdict: {}",
                if *verdict { "prediction confirmed" } else { "prediction FAILED" }
            );
        }
    }
    out
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct FixtureRow {
    pub id: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Clone, Debug)]
pub struct ExamplesReport {
    pub injected: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub fixtures: Vec<FixtureRow>,
}

pub fn examples_text(r: &ExamplesReport) -> String {
    let mut out = String::new();
    if !r.injected.is_empty() {
        let _ = writeln!(out, "injected mutations: {}", r.injected.join(", "));
    }
    let width = r.fixtures.iter().map(|f| f.id.len()).max().unwrap_or(0);
    for f in &r.fixtures {
        let status = if f.ok { "ok" } else { "FAIL" };
        let _ = writeln!(out, "{:<width$}  {}", f.id, status);
        if !f.ok {
            let _ = writeln!(out, "{:<width$}    {}", "", f.detail);
        }
    }
    let _ = writeln!(out, "{} passed, {} failed", r.passed, r.failed);
    out
}
