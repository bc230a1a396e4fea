//! 2-cocycles on racks with exact cyclotomic matrix entries, the attached
//! braidings, the braid-equation check (kept independent of the cocycle
//! identity so the two can confirm each other), the monomial `g`-map with
//! its faithfulness and finiteness probes, and the principal cocycle of a
//! class with a degree-one centralizer character.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{common_order, Cyclotomic};
use crate::group::{centralizer_in_sym, conjugator_by_alignment, Ambient, ConjClassSpec};
use crate::perm::Permutation;
use crate::rack::FiniteRack;
use crate::reps::{evaluate_linear_character, DegreeOneRep, RepError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("matrix shape mismatch: {0}x{1}")]
    MatrixShape(usize, usize),
    #[error("value table has {0} entries, expected {1}")]
    TableSize(usize, usize),
    #[error("decomposition does not cover the rack")]
    BadDecomposition,
    #[error("degree list has {0} entries for {1} parts")]
    DegreeCount(usize, usize),
    #[error("cocycle identity fails at (x, y, z) = ({0}, {1}, {2})")]
    Identity(usize, usize, usize),
    #[error("braid equation fails on the basis triple ({0}, {1}, {2})")]
    Braid(usize, usize, usize),
    #[error("representation error: {0}")]
    Rep(#[from] RepError),
    #[error("class is too large for the cocycle builder: {0}")]
    ClassTooLarge(usize),
}

/// A square matrix over a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMatrix {
    n: usize,
    entries: Vec<Cyclotomic>,
}

impl CMatrix {
    pub fn new(n: usize, entries: Vec<Cyclotomic>) -> Result<Self, CocycleError> {
        if entries.len() != n * n {
            return Err(CocycleError::MatrixShape(entries.len(), n));
        }
        Ok(CMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Cyclotomic::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Cyclotomic::one();
        }
        CMatrix { n, entries }
    }

    pub fn scalar(value: Cyclotomic) -> Self {
        CMatrix { n: 1, entries: vec![value] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![Cyclotomic::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = entries[i * n + j].add(&a.mul(b));
                }
            }
        }
        CMatrix { n, entries }
    }

    fn max_order(&self) -> u64 {
        common_order(self.entries.iter().map(|c| c.order()))
    }

    fn dedup_key(&self, ambient: u64) -> Vec<Vec<i64>> {
        self.entries.iter().map(|c| c.dedup_key(ambient)).collect()
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// A non-principal 2-cocycle attached to a decomposition `(X_i)`: for each
/// part a degree `n_i` and a family `q_i : X × X_i → GL(n_i)`. A principal
/// cocycle is the single-part case.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cocycle {
    /// Parts of the decomposition, as sorted element lists covering `0..n`.
    pub parts: Vec<Vec<usize>>,
    /// Matrix degree per part.
    pub degrees: Vec<usize>,
    /// `values[x][z] = q_{part(z)}(x, z)`, a `degrees[part(z)]` matrix.
    values: Vec<Vec<CMatrix>>,
}

impl Cocycle {
    /// A principal cocycle from a full value table.
    pub fn principal(
        rack_size: usize,
        degree: usize,
        values: Vec<CMatrix>,
    ) -> Result<Self, CocycleError> {
        if values.len() != rack_size * rack_size {
            return Err(CocycleError::TableSize(values.len(), rack_size * rack_size));
        }
        for v in &values {
            if v.dim() != degree {
                return Err(CocycleError::MatrixShape(v.dim(), degree));
            }
        }
        let mut table = Vec::with_capacity(rack_size);
        for x in 0..rack_size {
            table.push(values[x * rack_size..(x + 1) * rack_size].to_vec());
        }
        Ok(Cocycle {
            parts: vec![(0..rack_size).collect()],
            degrees: vec![degree],
            values: table,
        })
    }

    /// A constant scalar cocycle.
    pub fn constant(rack_size: usize, value: Cyclotomic) -> Self {
        let row = vec![CMatrix::scalar(value); rack_size];
        Cocycle {
            parts: vec![(0..rack_size).collect()],
            degrees: vec![1],
            values: vec![row; rack_size],
        }
    }

    /// A non-principal cocycle over an explicit decomposition.
    pub fn non_principal(
        parts: Vec<Vec<usize>>,
        degrees: Vec<usize>,
        values: Vec<Vec<CMatrix>>,
    ) -> Result<Self, CocycleError> {
        let n: usize = parts.iter().map(|p| p.len()).sum();
        if degrees.len() != parts.len() {
            return Err(CocycleError::DegreeCount(degrees.len(), parts.len()));
        }
        let mut seen = vec![false; n];
        for p in &parts {
            for &x in p {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(CocycleError::BadDecomposition);
                }
            }
        }
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(CocycleError::TableSize(values.len(), n));
        }
        let cocycle = Cocycle { parts, degrees, values };
        for x in 0..n {
            for z in 0..n {
                let want = cocycle.degrees[cocycle.part_of(z)];
                if cocycle.values[x][z].dim() != want {
                    return Err(CocycleError::MatrixShape(cocycle.values[x][z].dim(), want));
                }
            }
        }
        Ok(cocycle)
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn part_of(&self, z: usize) -> usize {
        self.parts
            .iter()
            .position(|p| p.binary_search(&z).is_ok())
            .expect("decomposition covers the rack")
    }

    pub fn value(&self, x: usize, z: usize) -> &CMatrix {
        &self.values[x][z]
    }

    pub fn value_mut(&mut self, x: usize, z: usize) -> &mut CMatrix {
        &mut self.values[x][z]
    }

    fn max_order(&self) -> u64 {
        common_order(self.values.iter().flatten().map(|m| m.max_order()))
    }

    /// The twisted multiplicativity identity,
    /// `q_i(x, y▷z) q_i(y, z) = q_i(x▷y, x▷z) q_i(x, z)` for `z ∈ X_i`,
    /// checked exhaustively. The decomposition parts must be stable.
    pub fn validate(&self, rack: &FiniteRack) -> Result<(), CocycleError> {
        let n = self.size();
        if rack.size() != n {
            return Err(CocycleError::TableSize(n, rack.size()));
        }
        // parts stable under the whole rack
        for part_idx in 0..self.parts.len() {
            for &z in &self.parts[part_idx] {
                for x in 0..n {
                    if self.part_of(rack.apply(x, z)) != part_idx {
                        return Err(CocycleError::BadDecomposition);
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = rack.apply(x, y);
                for z in 0..n {
                    let lhs = self.value(x, rack.apply(y, z)).mul(self.value(y, z));
                    let rhs = self.value(xy, rack.apply(x, z)).mul(self.value(x, z));
                    if lhs != rhs {
                        return Err(CocycleError::Identity(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The on-disk shape of a cocycle: the rack table next to the value table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleFile {
    pub rack: crate::rack::RackJson,
    pub cocycle: Cocycle,
}

/// One tensor leg of a symbolic basis vector under the braiding: which
/// original slot it carries and the accumulated matrix on that slot.
#[derive(Clone, PartialEq, Eq)]
struct Leg {
    rack_index: usize,
    origin: usize,
    matrix: CMatrix,
}

/// Evaluates both sides of the braid equation on all basis triples:
/// `c(e_x v ⊗ e_y w) = e_{x▷y} q(x, y)(w) ⊗ e_x v`. Independent of
/// [`Cocycle::validate`], so the two provide the equivalence check.
pub fn braiding_check(rack: &FiniteRack, q: &Cocycle) -> Result<(), CocycleError> {
    let n = rack.size();
    if q.size() != n {
        return Err(CocycleError::TableSize(q.size(), n));
    }
    let apply_c = |legs: &mut [Leg; 3], pos: usize| {
        // braid generator on tensor positions (pos, pos + 1)
        let (x, y) = (legs[pos].rack_index, legs[pos + 1].rack_index);
        let coeff = q.value(x, y);
        let new_first = Leg {
            rack_index: rack.apply(x, y),
            origin: legs[pos + 1].origin,
            matrix: coeff.mul(&legs[pos + 1].matrix),
        };
        let new_second = legs[pos].clone();
        legs[pos] = new_first;
        legs[pos + 1] = new_second;
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let start = [
                    Leg { rack_index: x, origin: 0, matrix: CMatrix::identity(q.degrees[q.part_of(x)]) },
                    Leg { rack_index: y, origin: 1, matrix: CMatrix::identity(q.degrees[q.part_of(y)]) },
                    Leg { rack_index: z, origin: 2, matrix: CMatrix::identity(q.degrees[q.part_of(z)]) },
                ];
                let mut lhs = start.clone();
                apply_c(&mut lhs, 0);
                apply_c(&mut lhs, 1);
                apply_c(&mut lhs, 0);
                let mut rhs = start;
                apply_c(&mut rhs, 1);
                apply_c(&mut rhs, 0);
                apply_c(&mut rhs, 1);
                for (a, b) in lhs.iter().zip(&rhs) {
                    if a.rack_index != b.rack_index
                        || a.origin != b.origin
                        || a.matrix != b.matrix
                    {
                        return Err(CocycleError::Braid(x, y, z));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The monomial operator `g_x : e_y w ↦ e_{x▷y} q(x, y)(w)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialMap {
    /// target block per source block
    pub block: Vec<usize>,
    /// coefficient matrix per source block
    pub coeff: Vec<CMatrix>,
}

impl MonomialMap {
    fn of(rack: &FiniteRack, q: &Cocycle, x: usize) -> Self {
        let n = rack.size();
        MonomialMap {
            block: (0..n).map(|y| rack.apply(x, y)).collect(),
            coeff: (0..n).map(|y| q.value(x, y).clone()).collect(),
        }
    }

    /// `self ∘ other`.
    fn compose(&self, other: &MonomialMap) -> MonomialMap {
        let n = self.block.len();
        MonomialMap {
            block: (0..n).map(|y| self.block[other.block[y]]).collect(),
            coeff: (0..n)
                .map(|y| self.coeff[other.block[y]].mul(&other.coeff[y]))
                .collect(),
        }
    }

    fn dedup_key(&self, ambient: u64) -> (Vec<usize>, Vec<Vec<Vec<i64>>>) {
        (
            self.block.clone(),
            self.coeff.iter().map(|m| m.dedup_key(ambient)).collect(),
        )
    }
}

/// Is `x ↦ g_x` injective? Also confirms that `g` is a rack morphism:
/// `g_{x▷y} ∘ g_x = g_x ∘ g_y` (the inverse-free form of conjugation).
pub fn g_map_faithful(rack: &FiniteRack, q: &Cocycle) -> Result<bool, CocycleError> {
    let n = rack.size();
    let maps: Vec<MonomialMap> = (0..n).map(|x| MonomialMap::of(rack, q, x)).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = maps[rack.apply(x, y)].compose(&maps[x]);
            let rhs = maps[x].compose(&maps[y]);
            if lhs != rhs {
                return Err(CocycleError::Braid(x, y, 0));
            }
        }
    }
    let ambient = q.max_order();
    let mut seen = HashSet::new();
    for m in &maps {
        if !seen.insert(m.dedup_key(ambient)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order of the group generated by `{g_x}` under the cap, when finite.
pub fn g_group_order(rack: &FiniteRack, q: &Cocycle, cap: usize) -> Option<usize> {
    let ambient = q.max_order();
    let n = rack.size();
    let generators: Vec<MonomialMap> = (0..n).map(|x| MonomialMap::of(rack, q, x)).collect();
    let identity = MonomialMap {
        block: (0..n).collect(),
        coeff: (0..n).map(|y| CMatrix::identity(q.degrees[q.part_of(y)])).collect(),
    };
    let mut seen = HashSet::new();
    seen.insert(identity.dedup_key(ambient));
    let mut queue = VecDeque::new();
    queue.push_back(identity);
    let mut count = 1usize;
    while let Some(m) = queue.pop_front() {
        for g in &generators {
            let next = g.compose(&m);
            if seen.insert(next.dedup_key(ambient)) {
                count += 1;
                if count > cap {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(count)
}

/// The principal cocycle of the braiding attached to a class with a
/// degree-one centralizer representation. The conjugator section is the
/// deterministic cycle-alignment section, adjusted into the alternating
/// group for alternating ambients; the braiding class is independent of
/// this choice.
pub fn class_braiding_cocycle(
    spec: &ConjClassSpec,
    rep: &DegreeOneRep,
    cap: usize,
) -> Result<(FiniteRack, Cocycle), CocycleError> {
    let elements = spec
        .elements(cap)
        .map_err(|o| CocycleError::ClassTooLarge(o.cap))?;
    let sigma = spec.representative();
    let section: Vec<Permutation> = elements
        .iter()
        .map(|x| {
            let mut g = conjugator_by_alignment(&sigma, x);
            if spec.ambient == Ambient::Alternating && !g.is_even() {
                // multiply by an odd centralizer element; one exists exactly
                // when the class does not split
                let cent = centralizer_in_sym(&sigma);
                let odd = cent
                    .generators()
                    .iter()
                    .find(|c| !c.is_even())
                    .expect("non-split classes have an odd centralizing element");
                g = g.compose_unchecked(odd);
            }
            debug_assert_eq!(g.conjugate_unchecked(&sigma), *x);
            g
        })
        .collect();
    let rack = FiniteRack::conjugation_rack_unchecked(elements.clone());
    let n = rack.size();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        let gx_elt = &elements[x];
        for y in 0..n {
            // q_{x,y} = ρ(g_{x▷y}⁻¹ · x · g_y), a centralizer element
            let xy = rack.apply(x, y);
            let gamma = section[xy]
                .inverse()
                .compose_unchecked(&gx_elt.compose_unchecked(&section[y]));
            let scalar = evaluate_linear_character(&sigma, rep, &gamma)?;
            values.push(CMatrix::scalar(scalar));
        }
    }
    let cocycle = Cocycle::principal(n, 1, values)?;
    Ok((rack, cocycle))
}
