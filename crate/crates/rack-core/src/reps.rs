//! Degree-one representations of `S_m` centralizers, the scalar `ρ(σ)`,
//! evaluation of linear characters on centralizer elements, the declarative
//! ledger of imported facts, and the survivor tables that aggregate the
//! type-D, abelian-triple and imported kills per conjugacy class.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{diagonal_involution_triple, CommutingTriple};
use crate::cyclotomic::Cyclotomic;
use crate::group::{Ambient, ConjClassSpec, SplitPart};
use crate::perm::{is_prime, CycleType, Permutation};
use crate::typed::{classify, Caps, TypeDWitness, Verdict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("element does not centralize the base permutation")]
    NotInCentralizer,
    #[error("representation has no component for cycle length {0}")]
    MissingComponent(u32),
    #[error("component shape mismatch for length {0}")]
    ComponentShape(u32),
}

/// A character of the symmetric-group factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymChar {
    #[serde(rename = "epsilon")]
    Trivial,
    #[serde(rename = "sgn")]
    Sign,
}

impl fmt::Display for SymChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymChar::Trivial => write!(f, "ε"),
            SymChar::Sign => write!(f, "sgn"),
        }
    }
}

/// Per cycle length `j` with `n_j > 0`: the exponent `t_j ∈ Z/j` of the
/// diagonal character, and (when `n_j ≥ 2`) the symmetric-factor character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOneRep {
    pub components: BTreeMap<u32, RepComponent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepComponent {
    pub t: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<SymChar>,
}

impl fmt::Display for DegreeOneRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&j, c) in &self.components {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if j == 1 {
                // only the symmetric factor is visible on fixed points
                match c.mu {
                    Some(mu) => write!(f, "ρ1 = {mu}")?,
                    None => write!(f, "ρ1 = ε")?,
                }
                continue;
            }
            match c.mu {
                Some(mu) => write!(f, "ρ{j} = χ⃗_{} ⊗ {mu}", c.t)?,
                None if j == 2 => {
                    write!(f, "ρ2 = {}", if c.t == 1 { "sgn" } else { "ε" })?
                }
                None => write!(f, "ρ{j} = χ_{}", c.t)?,
            }
        }
        if first {
            write!(f, "trivial")?;
        }
        Ok(())
    }
}

/// Structural record of an induced centralizer representation: one exponent
/// per cycle of each length, a character of the isotropy factor, and the
/// resulting degree. Reference data only — nothing beyond the degree-one
/// case is ever evaluated here (the machine kills are all
/// representation-independent), but the induction data can be stored and
/// displayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedShape {
    pub components: BTreeMap<u32, InducedComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedComponent {
    /// Exponents `(t_{1,j}, …, t_{n_j,j})`, each in `Z/j`, sorted.
    pub exponents: Vec<u32>,
    /// Degree of the chosen character of the isotropy subgroup (the product
    /// of symmetric groups fixing the exponent tuple); 1 for `ε`/`sgn`.
    pub isotropy_degree: u64,
}

impl InducedShape {
    pub fn from_degree_one(t: &CycleType, rep: &DegreeOneRep) -> Self {
        let components = t
            .counts()
            .iter()
            .map(|(&j, &n)| {
                let c = rep.components[&j];
                (j, InducedComponent {
                    exponents: vec![c.t; n as usize],
                    isotropy_degree: 1,
                })
            })
            .collect();
        InducedShape { components }
    }

    /// `∏_j (index of the isotropy subgroup in S_{n_j}) · deg μ_j`: the
    /// dimension of the induced representation.
    pub fn degree(&self) -> u64 {
        self.components
            .values()
            .map(|c| {
                let n = c.exponents.len() as u64;
                let mut orbit_index = factorial(n);
                let mut run = 1u64;
                for w in c.exponents.windows(2) {
                    if w[0] == w[1] {
                        run += 1;
                    } else {
                        orbit_index /= factorial(run);
                        run = 1;
                    }
                }
                orbit_index /= factorial(run);
                orbit_index * c.isotropy_degree
            })
            .product()
    }

    pub fn is_degree_one(&self) -> bool {
        self.degree() == 1
    }
}

fn factorial(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

/// All degree-one representations of the centralizer of the given type:
/// `t_j` ranges over `Z/j` and `μ_j` over `{ε, sgn}` when `n_j ≥ 2`.
/// The count is `∏_{n_j > 0} j · (2 if n_j ≥ 2 else 1)`.
pub fn enumerate_degree_one(t: &CycleType) -> Vec<DegreeOneRep> {
    let mut reps = vec![DegreeOneRep { components: BTreeMap::new() }];
    for (&j, &n) in t.counts() {
        let mut next = Vec::new();
        for rep in &reps {
            for tj in 0..j {
                let mus: &[Option<SymChar>] = if n >= 2 {
                    &[Some(SymChar::Trivial), Some(SymChar::Sign)]
                } else {
                    &[None]
                };
                for &mu in mus {
                    let mut r = rep.clone();
                    r.components.insert(j, RepComponent { t: tj, mu });
                    next.push(r);
                }
            }
        }
        reps = next;
    }
    reps
}

pub fn degree_one_count(t: &CycleType) -> u64 {
    t.counts()
        .iter()
        .map(|(&j, &n)| j as u64 * if n >= 2 { 2 } else { 1 })
        .product()
}

/// `ρ(σ) = ∏_j ω_j^{t_j · n_j}`: the diagonal scalar of the braiding.
pub fn q_sigma_sigma(t: &CycleType, rep: &DegreeOneRep) -> Result<Cyclotomic, RepError> {
    let mut value = Cyclotomic::one();
    for (&j, &n) in t.counts() {
        let c = rep.components.get(&j).ok_or(RepError::MissingComponent(j))?;
        value = value.mul(&Cyclotomic::root(j as u64, (c.t as i64) * n as i64));
    }
    Ok(value)
}

/// Evaluates the linear character on a centralizer element: the element is
/// decomposed into cycle rotations (summed per length) and a block
/// permutation (its sign feeds the symmetric factor).
pub fn evaluate_linear_character(
    sigma: &Permutation,
    rep: &DegreeOneRep,
    c: &Permutation,
) -> Result<Cyclotomic, RepError> {
    if c.conjugate_unchecked(sigma) != *sigma {
        return Err(RepError::NotInCentralizer);
    }
    let cycles = sigma.full_cycles();
    // group cycles by length; position map for offsets
    let mut by_length: BTreeMap<u32, Vec<&Vec<u32>>> = BTreeMap::new();
    for cyc in &cycles {
        by_length.entry(cyc.len() as u32).or_default().push(cyc);
    }
    let mut point_home: BTreeMap<u32, (usize, usize)> = BTreeMap::new(); // point → (cycle idx within length group, offset)
    for group in by_length.values() {
        for (ci, cyc) in group.iter().enumerate() {
            for (off, &p) in cyc.iter().enumerate() {
                point_home.insert(p, (ci, off));
            }
        }
    }
    let mut value = Cyclotomic::one();
    for (&j, group) in &by_length {
        let component = rep.components.get(&j).ok_or(RepError::MissingComponent(j))?;
        let mut rotation_sum: i64 = 0;
        let mut block_images: Vec<usize> = Vec::with_capacity(group.len());
        for cyc in group {
            let base = cyc[0];
            let image = c.apply(base);
            let &(target_cycle, offset) = point_home
                .get(&image)
                .ok_or(RepError::ComponentShape(j))?;
            // the image must land in a cycle of the same length
            if group[target_cycle][offset] != image {
                return Err(RepError::ComponentShape(j));
            }
            rotation_sum += offset as i64;
            block_images.push(target_cycle);
        }
        value = value.mul(&Cyclotomic::root(j as u64, component.t as i64 * rotation_sum));
        if component.mu == Some(SymChar::Sign) {
            let block = Permutation::from_images(
                block_images.iter().map(|&i| i as u32 + 1).collect(),
            )
            .map_err(|_| RepError::ComponentShape(j))?;
            if block.sign() < 0 {
                value = value.neg();
            }
        }
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// the imported-fact ledger and the survivor tables
// ---------------------------------------------------------------------------

/// One imported classification fact: a class-shape pattern together with the
/// literature citation that discharges it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedFact {
    pub pattern: &'static str,
    pub citation: &'static str,
    pub ambient: Ambient,
}

/// The declarative ledger: these kills are imported, never re-derived.
pub const FACT_LEDGER: &[CitedFact] = &[
    CitedFact { pattern: "(p) prime cycle", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(1,p) prime cycle with a fixed point", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(1^n,3)", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(3^2)", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(1,2^2)", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(1^2,2^2)", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(2^2,3)", citation: "AZ Th. 1", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(2^4)", citation: "AF1 Th. 1 (B)(i)", ambient: Ambient::Symmetric },
    CitedFact { pattern: "(p) prime cycle", citation: "AF2 Th. 2.3", ambient: Ambient::Alternating },
    CitedFact { pattern: "(1,p) prime cycle with a fixed point", citation: "AF2 Th. 2.3", ambient: Ambient::Alternating },
    CitedFact { pattern: "(1^n,3)", citation: "AF2 Th. 2.3", ambient: Ambient::Alternating },
    CitedFact { pattern: "(3^2)", citation: "AF2 Th. 2.3", ambient: Ambient::Alternating },
];

/// The residual restriction source for surviving shapes.
pub const REP_RESTRICTION_CITATION: &str = "afz Th. 1";

fn lookup_fact(t: &CycleType, ambient: Ambient) -> Option<CitedFact> {
    let m = t.degree() as u64;
    let shape = |pattern: &str| -> bool {
        match pattern {
            "(p) prime cycle" => t.multiplicity(m as u32) == 1 && is_prime(m),
            "(1,p) prime cycle with a fixed point" => {
                m >= 3
                    && t.multiplicity(1) == 1
                    && t.multiplicity((m - 1) as u32) == 1
                    && is_prime(m - 1)
            }
            "(1^n,3)" => {
                t.multiplicity(3) == 1
                    && t.multiplicity(1) as u64 + 3 == m
                    && t.counts().len() <= 2
            }
            "(3^2)" => t.counts().iter().map(|(&j, &n)| (j, n)).collect::<Vec<_>>() == [(3, 2)],
            "(1,2^2)" => t.to_string() == "(1,2^2)",
            "(1^2,2^2)" => t.to_string() == "(1^2,2^2)",
            "(2^2,3)" => t.to_string() == "(2^2,3)",
            "(2^4)" => t.to_string() == "(2^4)",
            _ => false,
        }
    };
    FACT_LEDGER
        .iter()
        .find(|f| f.ambient == ambient && shape(f.pattern))
        .copied()
}

/// Why a pair (class, representation) cannot support a finite-dimensional
/// Nichols algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum KillReason {
    /// The class rack is of type D; the witness certificate is attached.
    TypeD { witness: Box<TypeDWitness> },
    /// A verified commuting triple with odd exponent.
    AbelianTriple { triple: Box<CommutingTriple> },
    /// Imported from the literature, never re-derived here.
    CitedFact { pattern: String, citation: String },
    /// The trivial class braids as a flip; its Nichols algebra is the
    /// symmetric algebra, infinite-dimensional in every positive degree.
    TrivialClass,
}

impl KillReason {
    pub fn label(&self) -> String {
        match self {
            KillReason::TypeD { witness } => format!("type D [{}]", witness.provenance),
            KillReason::AbelianTriple { triple } => {
                format!("abelian triple [h = {}]", triple.h)
            }
            KillReason::CitedFact { citation, .. } => format!("cited [{citation}]"),
            KillReason::TrivialClass => "trivial class".to_string(),
        }
    }
}

/// The survivor table row for one conjugacy class.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    pub spec: ConjClassSpec,
    pub outcome: ClassOutcome,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ClassOutcome {
    /// Killed for every representation of the centralizer.
    KilledAllReps { reason: KillReason },
    /// Some degree-one pairs remain open; each survivor carries the theorem
    /// item it instantiates, the rest are restricted away by citation.
    Survivors {
        survivors: Vec<SurvivingPair>,
        killed_by_restriction: usize,
        restriction_citation: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        notes: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurvivingPair {
    pub rep: DegreeOneRep,
    pub item: String,
}

/// The open shapes and their surviving degree-one representations.
fn survivor_filter(t: &CycleType, rep: &DegreeOneRep) -> Option<String> {
    let s = t.to_string();
    // (1^n, 2): ρ1 ∈ {ε, sgn}, ρ2 = sgn
    if t.multiplicity(2) == 1 && t.multiplicity(1) as usize + 2 == t.degree() {
        let two = rep.components.get(&2)?;
        if two.t == 1 {
            return Some("transpositions".to_string());
        }
        return None;
    }
    if s == "(2,3)" {
        let two = rep.components.get(&2)?;
        let three = rep.components.get(&3)?;
        if two.t == 1 && three.t == 0 {
            return Some("(2,3) in S_5".to_string());
        }
        return None;
    }
    if s == "(2^3)" {
        let two = rep.components.get(&2)?;
        if two.t == 1 {
            return Some("(2^3) in S_6".to_string());
        }
        return None;
    }
    None
}

/// Builds the survivor table for all classes of `S_m` (odd and even types)
/// or all classes of `A_m` (even types, split parts listed separately).
pub fn theorem_table(m: usize, ambient: Ambient, caps: &Caps) -> Vec<ClassReport> {
    let mut out = Vec::new();
    for t in all_cycle_types(m) {
        match ambient {
            Ambient::Symmetric => {
                let spec = ConjClassSpec::new(m, t.clone(), Ambient::Symmetric, None)
                    .expect("symmetric ambient accepts every type");
                out.push(report_for(spec, caps));
            }
            Ambient::Alternating => {
                if !t.is_even() {
                    continue;
                }
                if t.splits_in_alternating() {
                    for part in [SplitPart::Plus, SplitPart::Minus] {
                        let spec =
                            ConjClassSpec::new(m, t.clone(), Ambient::Alternating, Some(part))
                                .expect("split part of a splitting class");
                        out.push(report_for(spec, caps));
                    }
                } else {
                    let spec = ConjClassSpec::new(m, t.clone(), Ambient::Alternating, None)
                        .expect("even type in the alternating ambient");
                    out.push(report_for(spec, caps));
                }
            }
        }
    }
    out
}

fn report_for(spec: ConjClassSpec, caps: &Caps) -> ClassReport {
    if spec.cycle_type.is_identity() {
        return ClassReport {
            spec,
            outcome: ClassOutcome::KilledAllReps { reason: KillReason::TrivialClass },
        };
    }
    // 1. machine-verified type D
    if let Verdict::TypeD { witness } = classify(&spec, caps) {
        return ClassReport {
            spec,
            outcome: ClassOutcome::KilledAllReps { reason: KillReason::TypeD { witness } },
        };
    }
    // 2. machine-verified abelian triple (alternating ambient)
    if spec.ambient == Ambient::Alternating {
        if let Ok(triple) = diagonal_involution_triple(&spec, caps) {
            return ClassReport {
                spec,
                outcome: ClassOutcome::KilledAllReps {
                    reason: KillReason::AbelianTriple { triple: Box::new(triple) },
                },
            };
        }
    }
    // 3. imported facts
    if let Some(fact) = lookup_fact(&spec.cycle_type, spec.ambient) {
        return ClassReport {
            spec,
            outcome: ClassOutcome::KilledAllReps {
                reason: KillReason::CitedFact {
                    pattern: fact.pattern.to_string(),
                    citation: fact.citation.to_string(),
                },
            },
        };
    }
    // 4. the surviving shapes with their degree-one restriction
    let reps = enumerate_degree_one(&spec.cycle_type);
    let mut survivors = Vec::new();
    let mut killed = 0usize;
    for rep in reps {
        match survivor_filter(&spec.cycle_type, &rep) {
            Some(item) => survivors.push(SurvivingPair { rep, item }),
            None => killed += 1,
        }
    }
    let mut notes = Vec::new();
    if spec.cycle_type.to_string() == "(2^3)" {
        notes.push(
            "the transposition rack and this rack are identified by an outer automorphism; \
             the surviving pairs coincide with the transposition case"
                .to_string(),
        );
    }
    ClassReport {
        spec,
        outcome: ClassOutcome::Survivors {
            survivors,
            killed_by_restriction: killed,
            restriction_citation: REP_RESTRICTION_CITATION.to_string(),
            notes,
        },
    }
}

pub fn all_cycle_types(m: usize) -> Vec<CycleType> {
    fn partitions(m: u32, max: u32) -> Vec<Vec<u32>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for j in (1..=max.min(m)).rev() {
            for mut rest in partitions(m - j, j) {
                rest.push(j);
                out.push(rest);
            }
        }
        out
    }
    partitions(m as u32, m as u32)
        .into_iter()
        .map(|parts| {
            let mut counts = BTreeMap::new();
            for j in parts {
                *counts.entry(j).or_insert(0) += 1;
            }
            CycleType::new(m, counts).expect("partition sums to m")
        })
        .collect()
}
