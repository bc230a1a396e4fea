//! Finite racks: table-backed and conjugation-backed, with the axioms,
//! subrack closure, decomposition, power racks `X^[j]` and amalgams
//! `X^[1,j]`, products, faithfulness, embedding search, isomorphism testing,
//! the two-generated subrack census, and a small named catalog.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Overflow;
use crate::perm::Permutation;

#[derive(Debug, Error)]
pub enum RackError {
    #[error("table is {0}×{1}, expected square")]
    NotSquare(usize, usize),
    #[error("table entry {0} out of range for size {1}")]
    EntryOutOfRange(u32, usize),
    #[error("conjugation set is not closed: {0} ▷ {1} escapes the set")]
    NotClosedUnderConjugation(String, String),
    #[error("labels length {0} does not match size {1}")]
    LabelCount(usize, usize),
    #[error("subset is not closed under the rack operation")]
    SubsetNotClosed,
    #[error("unknown catalog rack {0:?}")]
    UnknownCatalogName(String),
    #[error("rack too large to materialize a table: {0}")]
    TooLargeToMaterialize(usize),
    #[error("{0}")]
    Axiom(#[from] RackViolation),
}

/// A concrete axiom violation, reported as the first offending tuple.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackViolation {
    #[error("left translation by element {x} is not a bijection")]
    RowNotBijective { x: u32 },
    #[error("self-distributivity fails at ({x}, {y}, {z})")]
    SelfDistributivity { x: u32, y: u32, z: u32 },
}

/// Where a rack keeps its multiplication.
#[derive(Clone)]
enum Backing {
    /// Row-major `n×n` table: `table[x*n + y] = x ▷ y`.
    Table(Vec<u32>),
    /// Conjugation inside a group, evaluated lazily.
    Conjugation {
        elements: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
    },
}

/// Materialize conjugation tables below this size by default.
pub const TABLE_THRESHOLD: usize = 5000;

/// A finite rack on named points `0..n`.
#[derive(Clone)]
pub struct FiniteRack {
    n: usize,
    backing: Backing,
    labels: Option<Vec<String>>,
    name: Option<String>,
    /// Caller-supplied fact: the inner group acts transitively. Full
    /// nontrivial conjugacy classes of `S_m`/`A_m` (m ≥ 5) qualify; it lets
    /// the embedding search anchor its first generator.
    inner_transitive: Option<bool>,
    /// Underlying permutations for conjugation-built racks, kept through
    /// table materialization (sorted; index = rack element).
    elements: Option<Vec<Permutation>>,
}

impl FiniteRack {
    /// Builds a rack from a row-major table. Shape and range are checked
    /// here; the axioms are checked by [`FiniteRack::validate`].
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Self, RackError> {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(RackError::NotSquare(n, row.len()));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(RackError::EntryOutOfRange(v, n));
                }
                flat.push(v);
            }
        }
        Ok(FiniteRack { n, backing: Backing::Table(flat), labels: None, name: None, inner_transitive: None, elements: None })
    }

    pub fn from_op(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut flat = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = op(x, y);
                assert!(v < n, "rack op out of range");
                flat.push(v as u32);
            }
        }
        FiniteRack { n, backing: Backing::Table(flat), labels: None, name: None, inner_transitive: None, elements: None }
    }

    /// The conjugation rack on a set of permutations. The set must be closed
    /// under conjugation; elements are sorted into canonical order.
    pub fn conjugation_rack(mut elements: Vec<Permutation>) -> Result<Self, RackError> {
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        // closure check on the fly; lazily backed racks stay cheap
        for x in &elements {
            for y in &elements {
                let z = x.conjugate_unchecked(y);
                if !index.contains_key(&z) {
                    return Err(RackError::NotClosedUnderConjugation(
                        x.to_string(),
                        y.to_string(),
                    ));
                }
            }
        }
        let labels = Some(elements.iter().map(|p| p.to_string()).collect());
        let mut rack = FiniteRack {
            n,
            backing: Backing::Conjugation { elements: elements.clone(), index },
            labels,
            name: None,
            inner_transitive: None,
            elements: Some(elements),
        };
        if n <= TABLE_THRESHOLD {
            rack.materialize();
        }
        Ok(rack)
    }

    /// Conjugation rack without the quadratic closure check; the caller
    /// guarantees closure (e.g. a full conjugacy class).
    pub fn conjugation_rack_unchecked(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let labels = Some(elements.iter().map(|p| p.to_string()).collect());
        let mut rack = FiniteRack {
            n,
            backing: Backing::Conjugation { elements: elements.clone(), index },
            labels,
            name: None,
            inner_transitive: None,
            elements: Some(elements),
        };
        if n <= TABLE_THRESHOLD {
            rack.materialize();
        }
        rack
    }

    fn materialize(&mut self) {
        if let Backing::Conjugation { elements, index } = &self.backing {
            let n = self.n;
            let mut flat = Vec::with_capacity(n * n);
            for x in elements {
                for y in elements {
                    let z = x.conjugate_unchecked(y);
                    flat.push(index[&z]);
                }
            }
            self.backing = Backing::Table(flat);
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_inner_transitive(mut self, hint: bool) -> Self {
        self.inner_transitive = Some(hint);
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, RackError> {
        if labels.len() != self.n {
            return Err(RackError::LabelCount(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x ▷ y`.
    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> usize {
        match &self.backing {
            Backing::Table(t) => t[x * self.n + y] as usize,
            Backing::Conjugation { elements, index } => {
                let z = elements[x].conjugate_unchecked(&elements[y]);
                index[&z] as usize
            }
        }
    }

    /// The underlying permutation for conjugation-built racks.
    pub fn element(&self, x: usize) -> Option<&Permutation> {
        self.elements.as_ref().map(|v| &v[x])
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.as_ref().and_then(|v| v.binary_search(p).ok())
    }

    /// Left translation `φ_x` as a permutation of `{1..n}` (indices shifted
    /// up by one so the cycle notation machinery applies).
    pub fn translation(&self, x: usize) -> Permutation {
        let images = (0..self.n).map(|y| self.apply(x, y) as u32 + 1).collect();
        Permutation::from_images(images).expect("validated racks have bijective rows")
    }

    /// Checks both rack axioms; classifies as rack / quandle / crossed set.
    pub fn validate(&self) -> Result<RackKind, RackViolation> {
        let n = self.n;
        // rows bijective
        for x in 0..n {
            let mut seen = vec![false; n];
            for y in 0..n {
                let v = self.apply(x, y);
                if std::mem::replace(&mut seen[v], true) {
                    return Err(RackViolation::RowNotBijective { x: x as u32 });
                }
            }
        }
        // self-distributivity x▷(y▷z) = (x▷y)▷(x▷z)
        for x in 0..n {
            for y in 0..n {
                let xy = self.apply(x, y);
                for z in 0..n {
                    if self.apply(x, self.apply(y, z)) != self.apply(xy, self.apply(x, z)) {
                        return Err(RackViolation::SelfDistributivity {
                            x: x as u32,
                            y: y as u32,
                            z: z as u32,
                        });
                    }
                }
            }
        }
        let quandle = (0..n).all(|x| self.apply(x, x) == x);
        if !quandle {
            return Ok(RackKind::Rack);
        }
        let crossed = (0..n).all(|x| {
            (0..n).all(|y| self.apply(x, y) != y || self.apply(y, x) == x)
        });
        Ok(if crossed { RackKind::CrossedSet } else { RackKind::Quandle })
    }

    /// True iff distinct elements have distinct left translations.
    pub fn is_faithful(&self) -> bool {
        let mut rows: Vec<Vec<u32>> = (0..self.n)
            .map(|x| (0..self.n).map(|y| self.apply(x, y) as u32).collect())
            .collect();
        rows.sort();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// Least subrack containing `seed`: worklist saturation under `▷` in both
    /// operand positions. Result is sorted.
    pub fn subrack_closure(&self, seed: &[usize], cap: usize) -> Result<Vec<usize>, Overflow> {
        let mut member = vec![false; self.n];
        let mut list: Vec<usize> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seed {
            if !member[s] {
                member[s] = true;
                list.push(s);
                queue.push_back(s);
            }
        }
        while let Some(z) = queue.pop_front() {
            let mut i = 0;
            while i < list.len() {
                let w = list[i];
                for v in [self.apply(w, z), self.apply(z, w)] {
                    if !member[v] {
                        if list.len() >= cap {
                            return Err(Overflow { cap });
                        }
                        member[v] = true;
                        list.push(v);
                        queue.push_back(v);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        Ok(list)
    }

    /// Finest invariant decomposition: the orbits of the inner group `⟨φ_x⟩`,
    /// each of which is a subrack stable under the whole rack.
    pub fn decompose(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for x in 0..self.n {
            for y in 0..self.n {
                uf.union(y, self.apply(x, y));
            }
        }
        uf.classes()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.n > 0 && self.decompose().len() == 1
    }

    /// All coarsenings of the finest decomposition into exactly two stable
    /// parts, each returned as `(R, S)` with the least element in `R`.
    pub fn two_part_coarsenings(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let parts = self.decompose();
        let k = parts.len();
        if k < 2 || k > 20 {
            return Vec::new();
        }
        let mut out = Vec::new();
        // part 0 always goes left, killing the mirror duplicates
        for mask in 0..(1u32 << (k - 1)) {
            let mut left = parts[0].clone();
            let mut right = Vec::new();
            for (i, part) in parts.iter().enumerate().skip(1) {
                if mask & (1 << (i - 1)) != 0 {
                    left.extend_from_slice(part);
                } else {
                    right.extend_from_slice(part);
                }
            }
            if !right.is_empty() {
                left.sort_unstable();
                right.sort_unstable();
                out.push((left, right));
            }
        }
        out
    }

    /// The power rack `X^[j]`: same set, `x ▷_j y = φ_x^j(y)`.
    pub fn power(&self, j: i64) -> FiniteRack {
        assert!(j != 0, "power rack exponent must be nonzero");
        let translations: Vec<Permutation> =
            (0..self.n).map(|x| self.translation(x).power(j)).collect();
        let rack = FiniteRack::from_op(self.n, |x, y| {
            translations[x].apply(y as u32 + 1) as usize - 1
        });
        let rack = match &self.labels {
            Some(l) => rack
                .with_labels(l.iter().map(|s| format!("{s}^[{j}]")).collect())
                .unwrap(),
            None => rack,
        };
        match &self.name {
            Some(n) => rack.with_name(format!("{n}^[{j}]")),
            None => rack,
        }
    }

    /// The amalgam `X^[1,j]` on two disjoint copies of `X`:
    /// both copies are subracks, `x ▷ y' = (x ▷ y)'` and `x' ▷ y = φ_x^j(y)`.
    pub fn amalgam(&self, j: i64) -> FiniteRack {
        assert!(j != 0, "amalgam exponent must be nonzero");
        let n = self.n;
        let translations: Vec<Permutation> =
            (0..n).map(|x| self.translation(x).power(j)).collect();
        let rack = FiniteRack::from_op(2 * n, |x, y| {
            let (xb, xi) = (x >= n, x % n);
            let (yb, yi) = (y >= n, y % n);
            let r = if xb {
                translations[xi].apply(yi as u32 + 1) as usize - 1
            } else {
                self.apply(xi, yi)
            };
            if yb {
                r + n
            } else {
                r
            }
        });
        let rack = match &self.labels {
            Some(l) => {
                let mut labels: Vec<String> = l.clone();
                labels.extend(l.iter().map(|s| format!("{s}^[{j}]")));
                rack.with_labels(labels).unwrap()
            }
            None => rack,
        };
        match &self.name {
            Some(nm) => rack.with_name(format!("{nm}^[1,{j}]")),
            None => rack,
        }
    }

    /// Componentwise product rack on `X × Z`.
    pub fn product(&self, other: &FiniteRack) -> FiniteRack {
        let (n, m) = (self.n, other.n);
        FiniteRack::from_op(n * m, |x, y| {
            let (xa, xb) = (x / m, x % m);
            let (ya, yb) = (y / m, y % m);
            self.apply(xa, ya) * m + other.apply(xb, yb)
        })
    }

    /// The standalone rack on a closed subset, preserving labels.
    pub fn restrict(&self, members: &[usize]) -> Result<FiniteRack, RackError> {
        let pos: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = vec![vec![0u32; members.len()]; members.len()];
        for (i, &x) in members.iter().enumerate() {
            for (k, &y) in members.iter().enumerate() {
                let v = self.apply(x, y);
                match pos.get(&v) {
                    Some(&p) => table[i][k] = p as u32,
                    None => return Err(RackError::SubsetNotClosed),
                }
            }
        }
        let rack = FiniteRack::from_table(table)?;
        match &self.labels {
            Some(l) => rack.with_labels(members.iter().map(|&x| l[x].clone()).collect()),
            None => Ok(rack),
        }
    }

    /// A comparable fingerprint: refined color histogram. Equal racks get
    /// equal profiles; unequal profiles certify non-isomorphism.
    pub fn profile(&self) -> RackProfile {
        let colors = self.refine_colors();
        let mut histogram: BTreeMap<ElementInvariant, usize> = BTreeMap::new();
        for c in colors {
            *histogram.entry(c).or_insert(0) += 1;
        }
        RackProfile { size: self.n, histogram }
    }

    /// Initial invariant of one element, comparable across racks.
    fn base_invariant(&self, x: usize) -> ElementInvariant {
        let t = self.translation(x);
        let mut cycle_lengths: Vec<u32> = t.cycles().iter().map(|c| c.len() as u32).collect();
        cycle_lengths.sort_unstable();
        ElementInvariant {
            fixed_by_self: self.apply(x, x) == x,
            translation_cycles: cycle_lengths,
            fixes: (0..self.n).filter(|&y| self.apply(x, y) == y).count() as u32,
            fixed_by: (0..self.n).filter(|&y| self.apply(y, x) == x).count() as u32,
            refined: 0,
        }
    }

    /// Iterative refinement over (color of y, color of x▷y, color of y▷x).
    fn refine_colors(&self) -> Vec<ElementInvariant> {
        let mut inv: Vec<ElementInvariant> = (0..self.n).map(|x| self.base_invariant(x)).collect();
        loop {
            let palette: BTreeMap<&ElementInvariant, u32> = {
                let mut sorted: Vec<&ElementInvariant> = inv.iter().collect();
                sorted.sort();
                sorted.dedup();
                sorted.into_iter().enumerate().map(|(i, c)| (c, i as u32)).collect()
            };
            let color: Vec<u32> = inv.iter().map(|c| palette[c]).collect();
            let mut next = inv.clone();
            for x in 0..self.n {
                let mut signature: Vec<(u32, u32, u32)> = (0..self.n)
                    .map(|y| {
                        (color[y], color[self.apply(x, y)], color[self.apply(y, x)])
                    })
                    .collect();
                signature.sort_unstable();
                let mut hash = 1469598103934665603u64;
                for (a, b, c) in signature {
                    for v in [a, b, c] {
                        hash ^= v as u64;
                        hash = hash.wrapping_mul(1099511628211);
                    }
                }
                next[x].refined = hash;
            }
            if next == inv {
                return inv;
            }
            inv = next;
        }
    }

    /// Isomorphism search: color-guided backtracking. Returns a bijection
    /// `self → other` when the racks are isomorphic.
    pub fn isomorphism(&self, other: &FiniteRack) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let ca = self.refine_colors();
        let cb = other.refine_colors();
        {
            let mut ha = ca.clone();
            let mut hb = cb.clone();
            ha.sort();
            hb.sort();
            if ha != hb {
                return None;
            }
        }
        // assign rarest colors first
        let mut freq: BTreeMap<&ElementInvariant, usize> = BTreeMap::new();
        for c in &ca {
            *freq.entry(c).or_insert(0) += 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (freq[&ca[x]], x));
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.iso_backtrack(other, &ca, &cb, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_backtrack(
        &self,
        other: &FiniteRack,
        ca: &[ElementInvariant],
        cb: &[ElementInvariant],
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for t in 0..self.n {
            if used[t] || cb[t] != ca[x] {
                continue;
            }
            // consistency with already-assigned points
            let ok = order[..k].iter().all(|&y| {
                let (a, b) = (self.apply(x, y), self.apply(y, x));
                let consistent_forward = map[a] == usize::MAX
                    || map[a] == other.apply(t, map[y]);
                let consistent_backward = map[b] == usize::MAX
                    || map[b] == other.apply(map[y], t);
                // also the self pair
                consistent_forward && consistent_backward
            }) && {
                let xx = self.apply(x, x);
                map[xx] == usize::MAX || map[xx] == other.apply(t, t)
            };
            if !ok {
                continue;
            }
            // tentative assign and verify all fully-determined products
            map[x] = t;
            used[t] = true;
            let verified = order[..=k].iter().all(|&y| {
                order[..=k].iter().all(|&z| {
                    let v = self.apply(y, z);
                    map[v] == usize::MAX || other.apply(map[y], map[z]) == map[v]
                })
            });
            if verified && self.iso_backtrack(other, ca, cb, order, k + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[t] = false;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &FiniteRack) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Serializes as `{size, table (row-major), labels?}`.
    pub fn to_json(&self) -> Result<RackJson, RackError> {
        if self.n > TABLE_THRESHOLD {
            return Err(RackError::TooLargeToMaterialize(self.n));
        }
        let mut table = Vec::with_capacity(self.n * self.n);
        for x in 0..self.n {
            for y in 0..self.n {
                table.push(self.apply(x, y) as u32);
            }
        }
        Ok(RackJson {
            size: self.n,
            table,
            labels: self.labels.clone(),
            name: self.name.clone(),
        })
    }

    pub fn from_json(json: &RackJson) -> Result<Self, RackError> {
        let n = json.size;
        if json.table.len() != n * n {
            return Err(RackError::NotSquare(n, json.table.len() / n.max(1)));
        }
        for &v in &json.table {
            if v as usize >= n {
                return Err(RackError::EntryOutOfRange(v, n));
            }
        }
        let mut rack = FiniteRack {
            n,
            backing: Backing::Table(json.table.clone()),
            labels: None,
            name: json.name.clone(),
            inner_transitive: None,
            elements: None,
        };
        if let Some(labels) = &json.labels {
            rack = rack.with_labels(labels.clone())?;
        }
        Ok(rack)
    }
}

impl fmt::Debug for FiniteRack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "FiniteRack({n}, size {})", self.n),
            None => write!(f, "FiniteRack(size {})", self.n),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RackJson {
    pub size: usize,
    pub table: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RackKind {
    Rack,
    Quandle,
    CrossedSet,
}

/// Comparable per-element invariant used for refinement and bucketing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementInvariant {
    fixed_by_self: bool,
    translation_cycles: Vec<u32>,
    fixes: u32,
    fixed_by: u32,
    refined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackProfile {
    pub size: usize,
    histogram: BTreeMap<ElementInvariant, usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            map.entry(r).or_default().push(x);
        }
        map.into_values().collect()
    }
}

/// Outcome of an embedding search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    /// Injective rack morphism, as the image of each pattern element.
    Found(Vec<usize>),
    /// The full candidate space was exhausted.
    NotFound,
    /// The budget ran out before the space was exhausted.
    BudgetExceeded,
}

/// Deterministic backtracking search for an injective rack morphism
/// `pattern → target`. A greedy generating sequence of the pattern is chosen
/// first; every other pattern element is derived as a product, so only the
/// generator images are searched. Found morphisms are re-verified in full.
pub fn find_embedding(pattern: &FiniteRack, target: &FiniteRack, budget: u64) -> EmbedOutcome {
    if pattern.size() == 0 || pattern.size() > target.size() {
        return EmbedOutcome::NotFound;
    }
    let plan = DerivationPlan::build(pattern);
    let pat_inv: Vec<EmbedInvariant> =
        (0..pattern.size()).map(|x| EmbedInvariant::of(pattern, x)).collect();
    let tgt_inv: Vec<EmbedInvariant> =
        (0..target.size()).map(|x| EmbedInvariant::of(target, x)).collect();

    // Anchoring: when the target is inner-transitive, the image of the first
    // generator may be fixed up to inner automorphism.
    let anchored = target.inner_transitive.unwrap_or_else(|| {
        target.size() <= 3000 && target.is_indecomposable()
    });

    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for (gi, &g) in plan.seeds.iter().enumerate() {
        let mut c: Vec<usize> = (0..target.size())
            .filter(|&t| pat_inv[g].embeds_into(&tgt_inv[t]))
            .collect();
        if gi == 0 && anchored && !c.is_empty() {
            c.truncate(1);
        }
        candidates.push(c);
    }
    let mut budget = budget;
    let mut chosen = vec![0usize; plan.seeds.len()];
    search_embedding(pattern, target, &plan, &candidates, 0, &mut chosen, &mut budget)
}

fn search_embedding(
    pattern: &FiniteRack,
    target: &FiniteRack,
    plan: &DerivationPlan,
    candidates: &[Vec<usize>],
    level: usize,
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> EmbedOutcome {
    if level == plan.seeds.len() {
        if *budget == 0 {
            return EmbedOutcome::BudgetExceeded;
        }
        *budget -= 1;
        return match plan.propagate(pattern, target, chosen) {
            Some(map) if verify_embedding(pattern, target, &map) => EmbedOutcome::Found(map),
            _ => EmbedOutcome::NotFound,
        };
    }
    let mut exhausted = true;
    for &c in &candidates[level] {
        if chosen[..level].contains(&c) {
            continue;
        }
        chosen[level] = c;
        match search_embedding(pattern, target, plan, candidates, level + 1, chosen, budget) {
            EmbedOutcome::Found(map) => return EmbedOutcome::Found(map),
            EmbedOutcome::BudgetExceeded => exhausted = false,
            EmbedOutcome::NotFound => {}
        }
    }
    if exhausted {
        EmbedOutcome::NotFound
    } else {
        EmbedOutcome::BudgetExceeded
    }
}

/// Full post-check: injectivity plus the morphism law on all pairs.
pub fn verify_embedding(pattern: &FiniteRack, target: &FiniteRack, map: &[usize]) -> bool {
    if map.len() != pattern.size() {
        return false;
    }
    let mut seen = vec![false; target.size()];
    for &t in map {
        if t >= target.size() || std::mem::replace(&mut seen[t], true) {
            return false;
        }
    }
    for x in 0..pattern.size() {
        for y in 0..pattern.size() {
            if map[pattern.apply(x, y)] != target.apply(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

/// Monotone per-element data for embedding pruning: the image of `x` must
/// contain `x`'s behavior. A pattern subrack is a union of full cycles of
/// each restricted translation, so the pattern's cycle-length multiset must
/// be a sub-multiset of the image's.
struct EmbedInvariant {
    fixed_by_self: bool,
    /// Sorted lengths of all cycles of `φ_x`, fixed points included.
    full_cycle_lengths: Vec<u32>,
    fixed_by: u32,
}

impl EmbedInvariant {
    fn of(rack: &FiniteRack, x: usize) -> Self {
        let t = rack.translation(x);
        let mut full_cycle_lengths: Vec<u32> =
            t.full_cycles().iter().map(|c| c.len() as u32).collect();
        full_cycle_lengths.sort_unstable();
        EmbedInvariant {
            fixed_by_self: rack.apply(x, x) == x,
            full_cycle_lengths,
            fixed_by: (0..rack.size()).filter(|&y| rack.apply(y, x) == x).count() as u32,
        }
    }

    fn embeds_into(&self, target: &EmbedInvariant) -> bool {
        if self.fixed_by_self != target.fixed_by_self || self.fixed_by > target.fixed_by {
            return false;
        }
        // sub-multiset test on sorted lists
        let mut it = target.full_cycle_lengths.iter();
        for &len in &self.full_cycle_lengths {
            loop {
                match it.next() {
                    None => return false,
                    Some(&t) if t == len => break,
                    Some(&t) if t > len => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }
}

/// How every pattern element is derived from the seeds.
struct DerivationPlan {
    seeds: Vec<usize>,
    /// In evaluation order: (element, operand, operand) with `elem = a ▷ b`.
    steps: Vec<(usize, usize, usize)>,
}

impl DerivationPlan {
    fn build(pattern: &FiniteRack) -> Self {
        let n = pattern.size();
        let mut known = vec![false; n];
        let mut known_list: Vec<usize> = Vec::new();
        let mut seeds = Vec::new();
        let mut steps = Vec::new();
        while known_list.len() < n {
            let seed = (0..n).find(|&x| !known[x]).expect("some element unknown");
            seeds.push(seed);
            known[seed] = true;
            known_list.push(seed);
            // close under products, recording one derivation per element
            let mut frontier = vec![seed];
            while let Some(z) = frontier.pop() {
                let snapshot = known_list.clone();
                for &w in &snapshot {
                    for (a, b) in [(w, z), (z, w), (z, z)] {
                        let v = pattern.apply(a, b);
                        if !known[v] {
                            known[v] = true;
                            known_list.push(v);
                            steps.push((v, a, b));
                            frontier.push(v);
                        }
                    }
                }
            }
        }
        DerivationPlan { seeds, steps }
    }

    fn propagate(
        &self,
        pattern: &FiniteRack,
        target: &FiniteRack,
        chosen: &[usize],
    ) -> Option<Vec<usize>> {
        let _ = pattern;
        let mut map = vec![usize::MAX; pattern.size()];
        for (g, &c) in self.seeds.iter().zip(chosen) {
            map[*g] = c;
        }
        for &(v, a, b) in &self.steps {
            let image = target.apply(map[a], map[b]);
            map[v] = image;
        }
        Some(map)
    }
}

/// One line of the two-generated subrack census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusLine {
    pub name: String,
    pub size: usize,
    /// Number of unordered generator pairs producing this class.
    pub pairs: usize,
}

/// Isomorphism census of all proper subracks `⟨x, y⟩` over unordered pairs
/// (including `x = y`). Classes are named against the catalog.
pub fn two_generated_census(target: &FiniteRack) -> Vec<CensusLine> {
    let n = target.size();
    let mut classes: Vec<(FiniteRack, RackProfile, String, usize)> = Vec::new();
    for x in 0..n {
        for y in x..n {
            let members = target
                .subrack_closure(&[x, y], n)
                .expect("cap equals rack size");
            if members.len() == n {
                continue; // not proper
            }
            let sub = target.restrict(&members).expect("closure is closed");
            let profile = sub.profile();
            let mut matched = false;
            for entry in classes.iter_mut() {
                if entry.1 == profile && entry.0.is_isomorphic(&sub) {
                    entry.3 += 1;
                    matched = true;
                    break;
                }
            }
            if !matched {
                let name = catalog_name(&sub);
                classes.push((sub, profile, name, 1));
            }
        }
    }
    let mut out: Vec<CensusLine> = classes
        .into_iter()
        .map(|(rack, _, name, pairs)| CensusLine { name, size: rack.size(), pairs })
        .collect();
    out.sort_by(|a, b| (a.size, &a.name).cmp(&(b.size, &b.name)));
    out
}

/// Matches a small rack against the named catalog; falls back to
/// `abelian:k`, `indecomposable:k` or `decomposable:k`.
pub fn catalog_name(rack: &FiniteRack) -> String {
    let n = rack.size();
    if (0..n).all(|x| (0..n).all(|y| rack.apply(x, y) == y)) {
        return format!("abelian:{n}");
    }
    for name in ["D_3", "D_4", "D_5", "tetrahedron", "oct", "cube", "oct2", "dodecahedron", "D_3^(2)"]
    {
        let candidate = catalog_rack(name).expect("catalog names are valid");
        if candidate.size() == n && candidate.is_isomorphic(rack) {
            return name.to_string();
        }
    }
    if rack.is_indecomposable() {
        format!("indecomposable:{n}")
    } else {
        format!("decomposable:{n}")
    }
}

/// Builds a catalog rack by name.
///
/// Names: `trivial:n`, `cyclic:n` (the permutation rack `x ▷ y = y + 1`),
/// `D_n` (dihedral rack on `Z/n`), `tetrahedron`, `cube`, `oct`, `oct2`,
/// `dodecahedron`, and the suffix forms `NAME^[j]` / `NAME^[1,j]` for powers
/// and amalgams (`D_3^(2)` is shorthand for `D_3^[1,1]`).
pub fn catalog_rack(name: &str) -> Result<FiniteRack, RackError> {
    if let Some(base) = name.strip_suffix("^(2)") {
        return Ok(catalog_rack(base)?.amalgam(1).with_name(name.to_string()));
    }
    if let Some(idx) = name.rfind("^[") {
        let (base, suffix) = name.split_at(idx);
        let inner = suffix
            .strip_prefix("^[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| RackError::UnknownCatalogName(name.to_string()))?;
        let base_rack = catalog_rack(base)?;
        let parse_j = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| RackError::UnknownCatalogName(name.to_string()))
        };
        return match inner.split_once(',') {
            Some(("1", j)) => Ok(base_rack.amalgam(parse_j(j)?).with_name(name.to_string())),
            Some(_) => Err(RackError::UnknownCatalogName(name.to_string())),
            None => Ok(base_rack.power(parse_j(inner)?).with_name(name.to_string())),
        };
    }
    if let Some(n) = name.strip_prefix("trivial:") {
        let n: usize = n.parse().map_err(|_| RackError::UnknownCatalogName(name.into()))?;
        return Ok(FiniteRack::from_op(n, |_, y| y).with_name(name.to_string()));
    }
    if let Some(n) = name.strip_prefix("cyclic:") {
        let n: usize = n.parse().map_err(|_| RackError::UnknownCatalogName(name.into()))?;
        if n == 0 {
            return Err(RackError::UnknownCatalogName(name.into()));
        }
        return Ok(FiniteRack::from_op(n, |_, y| (y + 1) % n).with_name(name.to_string()));
    }
    if let Some(n) = name.strip_prefix("D_") {
        let n: usize = n.parse().map_err(|_| RackError::UnknownCatalogName(name.into()))?;
        if n < 2 {
            return Err(RackError::UnknownCatalogName(name.into()));
        }
        return Ok(FiniteRack::from_op(n, move |x, y| (2 * x + n - y % n) % n)
            .with_name(name.to_string()));
    }
    match name {
        // 4-cycles of S_4 under conjugation
        "oct" => {
            let elements = class_of(4, "(1 2 3 4)");
            Ok(FiniteRack::conjugation_rack_unchecked(elements).with_name("oct"))
        }
        "oct2" => Ok(catalog_rack("oct")?.amalgam(1).with_name("oct2")),
        // 3-cycles of A_4 under conjugation (the vertices of a tetrahedron)
        "tetrahedron" => {
            let rep = crate::perm::parse_cycles(4, "(1 2 3)").unwrap();
            let alt = crate::group::ambient_group(4, crate::group::Ambient::Alternating);
            let elements = alt.class_orbit(&rep, 100).expect("class of size 4");
            Ok(FiniteRack::conjugation_rack_unchecked(elements).with_name("tetrahedron"))
        }
        // 3-cycles of S_4 under conjugation (8 elements)
        "cube" => {
            let elements = class_of(4, "(1 2 3)");
            Ok(FiniteRack::conjugation_rack_unchecked(elements).with_name("cube"))
        }
        // the 12-element split class of 5-cycles in A_5; an interpretive
        // realization, see the census notes
        "dodecahedron" => {
            let rep = crate::perm::parse_cycles(5, "(1 2 3 4 5)").unwrap();
            let alt = crate::group::ambient_group(5, crate::group::Ambient::Alternating);
            let elements = alt.class_orbit(&rep, 100).expect("split class has 12 elements");
            Ok(FiniteRack::conjugation_rack_unchecked(elements).with_name("dodecahedron"))
        }
        _ => Err(RackError::UnknownCatalogName(name.to_string())),
    }
}

fn class_of(m: usize, rep: &str) -> Vec<Permutation> {
    let rep = crate::perm::parse_cycles(m, rep).unwrap();
    let sym = crate::group::ambient_group(m, crate::group::Ambient::Symmetric);
    sym.class_orbit(&rep, 100_000).expect("small class")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ambient_group, Ambient};
    use crate::perm::parse_cycles;

    #[test]
    fn trivial_rack_is_a_crossed_set() {
        let r = catalog_rack("trivial:3").unwrap();
        assert_eq!(r.validate().unwrap(), RackKind::CrossedSet);
        assert!(!r.is_faithful());
    }

    #[test]
    fn permutation_rack_is_not_a_quandle() {
        let r = catalog_rack("cyclic:5").unwrap();
        assert_eq!(r.validate().unwrap(), RackKind::Rack);
    }

    #[test]
    fn transposition_rack_of_s4_is_crossed_set() {
        let elements = class_of(4, "(1 2)");
        assert_eq!(elements.len(), 6);
        let r = FiniteRack::conjugation_rack(elements).unwrap();
        assert_eq!(r.validate().unwrap(), RackKind::CrossedSet);
        assert!(r.is_faithful());
    }

    #[test]
    fn transposition_rack_of_s5_is_faithful() {
        let r = FiniteRack::conjugation_rack_unchecked(class_of(5, "(1 2)"));
        assert!(r.is_faithful());
    }

    #[test]
    fn invalid_table_is_rejected() {
        let r = FiniteRack::from_table(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(r.validate(), Err(RackViolation::RowNotBijective { x: 0 }));
        // bijective rows, broken distributivity:
        // 0▷(1▷1) = 0▷2 = 2 but (0▷1)▷(0▷1) = 0▷0 = 1
        let r = FiniteRack::from_table(vec![
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![0, 1, 2],
        ])
        .unwrap();
        assert_eq!(
            r.validate(),
            Err(RackViolation::SelfDistributivity { x: 0, y: 0, z: 0 })
        );
    }

    #[test]
    fn dihedral_racks_validate() {
        for n in 2..=7 {
            let r = catalog_rack(&format!("D_{n}")).unwrap();
            assert_eq!(r.validate().unwrap(), RackKind::CrossedSet, "D_{n}");
        }
        // D_p for prime p is indecomposable
        assert!(catalog_rack("D_3").unwrap().is_indecomposable());
        assert!(catalog_rack("D_5").unwrap().is_indecomposable());
        // D_4 decomposes into evens and odds
        assert_eq!(catalog_rack("D_4").unwrap().decompose().len(), 2);
    }

    #[test]
    fn subrack_closure_basics() {
        let r = FiniteRack::conjugation_rack_unchecked(class_of(3, "(1 2)"));
        assert_eq!(r.size(), 3);
        // two transpositions of S_3 generate all three
        let c = r.subrack_closure(&[0, 1], 10).unwrap();
        assert_eq!(c.len(), 3);
        // singleton closure in a quandle stays a singleton
        let c = r.subrack_closure(&[2], 10).unwrap();
        assert_eq!(c, vec![2]);
    }

    #[test]
    fn subrack_closure_idempotent_and_monotone() {
        let r = catalog_rack("oct").unwrap();
        let a = r.subrack_closure(&[0], 10).unwrap();
        let again = r.subrack_closure(&a, 10).unwrap();
        assert_eq!(a, again);
        let b = r.subrack_closure(&[0, 3], 10).unwrap();
        assert!(a.iter().all(|x| b.contains(x)));
    }

    #[test]
    fn tetrahedron_closure_is_itself() {
        let elements: Vec<Permutation> = [
            "(1 2 3)(4 5 6)(7 8)",
            "(1 6 3)(2 4 5)(7 8)",
            "(1 6 4)(2 3 5)(7 8)",
            "(1 2 4)(3 5 6)(7 8)",
        ]
        .iter()
        .map(|s| parse_cycles(8, s).unwrap())
        .collect();
        let r = FiniteRack::conjugation_rack(elements).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.validate().unwrap(), RackKind::CrossedSet);
        let c = r.subrack_closure(&[0, 1], 10).unwrap();
        assert_eq!(c.len(), 4);
        // and it is the affine tetrahedron rack
        assert!(r.is_isomorphic(&catalog_rack("tetrahedron").unwrap()));
    }

    #[test]
    fn decompose_trivial_and_amalgam() {
        let t = catalog_rack("trivial:2").unwrap();
        assert_eq!(t.decompose(), vec![vec![0], vec![1]]);
        let d = catalog_rack("D_3").unwrap().amalgam(1);
        let parts = d.decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], vec![0, 1, 2]);
        assert_eq!(parts[1], vec![3, 4, 5]);
        // parts are stable: X ▷ X_i = X_i
        for part in &parts {
            for x in 0..d.size() {
                for &y in part {
                    assert!(part.contains(&d.apply(x, y)));
                }
            }
        }
    }

    #[test]
    fn two_part_coarsenings_enumerate() {
        // one decomposition for the doubled dihedral
        let d = catalog_rack("D_3^(2)").unwrap();
        let pairs = d.two_part_coarsenings();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0, vec![0, 1, 2]);
        assert_eq!(pairs[0].1, vec![3, 4, 5]);
        // 2^{k−1} − 1 coarsenings for k singleton orbits
        let t = catalog_rack("trivial:3").unwrap();
        assert_eq!(t.two_part_coarsenings().len(), 3);
        // indecomposable racks have none
        assert!(catalog_rack("D_3").unwrap().two_part_coarsenings().is_empty());
        // every coarsening is mutually stable
        for (left, right) in d.two_part_coarsenings() {
            for x in 0..d.size() {
                for &y in &left {
                    assert!(left.contains(&d.apply(x, y)));
                }
                for &y in &right {
                    assert!(right.contains(&d.apply(x, y)));
                }
            }
        }
    }

    #[test]
    fn power_and_amalgam_validate() {
        for name in ["D_3", "D_5", "tetrahedron", "oct", "cyclic:4"] {
            let r = catalog_rack(name).unwrap();
            for j in [-2i64, -1, 1, 2, 3] {
                assert!(r.power(j).validate().is_ok(), "{name}^[{j}]");
                assert!(r.amalgam(j).validate().is_ok(), "{name}^[1,{j}]");
            }
        }
    }

    #[test]
    fn power_laws() {
        for name in ["D_3", "oct", "cyclic:5", "tetrahedron"] {
            let r = catalog_rack(name).unwrap();
            // X^[1] = X and X^[-1][-1] ≅ X
            assert!(r.power(1).is_isomorphic(&r), "{name}");
            assert!(r.power(-1).power(-1).is_isomorphic(&r), "{name}");
            // X^[j][k] ≅ X^[jk]
            for j in [-2i64, -1, 1, 2] {
                for k in [-2i64, -1, 1, 2] {
                    assert!(
                        r.power(j).power(k).is_isomorphic(&r.power(j * k)),
                        "{name} j={j} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn amalgam_size_and_subracks() {
        let r = catalog_rack("D_3").unwrap();
        let a = r.amalgam(1);
        assert_eq!(a.size(), 6);
        // each copy is a subrack isomorphic to the base
        let first = a.restrict(&[0, 1, 2]).unwrap();
        let second = a.restrict(&[3, 4, 5]).unwrap();
        assert!(first.is_isomorphic(&r));
        assert!(second.is_isomorphic(&r));
    }

    #[test]
    fn product_rack() {
        let x = catalog_rack("D_3").unwrap();
        let z = catalog_rack("trivial:1").unwrap();
        assert!(x.product(&z).is_isomorphic(&x));
        let z4 = catalog_rack("trivial:4").unwrap();
        let p = x.product(&z4);
        assert_eq!(p.size(), 12);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn identity_embedding_and_simple_search() {
        let r = catalog_rack("D_3").unwrap();
        match find_embedding(&r, &r, 1000) {
            EmbedOutcome::Found(map) => assert!(verify_embedding(&r, &r, &map)),
            other => panic!("expected identity embedding, got {other:?}"),
        }
        // D_3 embeds into the transposition rack of S_3
        let t = FiniteRack::conjugation_rack_unchecked(class_of(3, "(1 2)"));
        assert!(matches!(find_embedding(&r, &t, 1000), EmbedOutcome::Found(_)));
        // ... but not into the trivial rack
        let triv = catalog_rack("trivial:4").unwrap();
        assert_eq!(find_embedding(&r, &triv, 1000), EmbedOutcome::NotFound);
    }

    #[test]
    fn budget_exhaustion_is_distinguished() {
        // candidates exist but no assignment may be tried
        let pattern = catalog_rack("D_3").unwrap();
        let target = FiniteRack::conjugation_rack_unchecked(class_of(4, "(1 2)"));
        assert_eq!(find_embedding(&pattern, &target, 0), EmbedOutcome::BudgetExceeded);
        assert!(matches!(find_embedding(&pattern, &target, 1000), EmbedOutcome::Found(_)));
        // no candidates at all is a definite NotFound even with zero budget:
        // a two-element abelian rack needs two distinct commuting elements,
        // and D_3 has none
        let ab2 = catalog_rack("trivial:2").unwrap();
        let d3 = catalog_rack("D_3").unwrap();
        assert_eq!(find_embedding(&ab2, &d3, 0), EmbedOutcome::NotFound);
    }

    #[test]
    fn census_of_transpositions_in_s5() {
        // class (1^3,2): proper two-generated subracks are abelian of size
        // ≤ 2 or the 3-element dihedral
        let r = FiniteRack::conjugation_rack_unchecked(class_of(5, "(1 2)"));
        let census = two_generated_census(&r);
        let names: Vec<&str> = census.iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, vec!["abelian:1", "abelian:2", "D_3"]);
    }

    #[test]
    fn isomorphism_distinguishes() {
        let d3 = catalog_rack("D_3").unwrap();
        let t3 = catalog_rack("trivial:3").unwrap();
        let c3 = catalog_rack("cyclic:3").unwrap();
        assert!(!d3.is_isomorphic(&t3));
        assert!(!d3.is_isomorphic(&c3));
        assert!(!t3.is_isomorphic(&c3));
        // relabeling is recognized
        let relabeled = FiniteRack::from_op(3, |x, y| {
            let perm = [2usize, 0, 1];
            let inv = [1usize, 2, 0];
            inv[d3.apply(perm[x], perm[y])]
        });
        assert!(d3.is_isomorphic(&relabeled));
    }

    #[test]
    fn json_round_trip() {
        let r = catalog_rack("oct").unwrap();
        let json = r.to_json().unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let back: RackJson = serde_json::from_str(&text).unwrap();
        let r2 = FiniteRack::from_json(&back).unwrap();
        assert!(r.is_isomorphic(&r2));
        assert_eq!(r2.label(0), r.label(0));
    }

    #[test]
    fn conjugation_rack_rejects_open_sets() {
        let elements = vec![
            parse_cycles(4, "(1 2)").unwrap(),
            parse_cycles(4, "(1 3)").unwrap(),
        ];
        assert!(FiniteRack::conjugation_rack(elements).is_err());
    }

    #[test]
    fn catalog_names() {
        assert_eq!(catalog_rack("oct").unwrap().size(), 6);
        assert_eq!(catalog_rack("oct2").unwrap().size(), 12);
        assert_eq!(catalog_rack("cube").unwrap().size(), 8);
        assert_eq!(catalog_rack("dodecahedron").unwrap().size(), 12);
        assert_eq!(catalog_rack("tetrahedron").unwrap().size(), 4);
        assert_eq!(catalog_rack("D_3^(2)").unwrap().size(), 6);
        assert_eq!(catalog_rack("D_3^[1,1]").unwrap().size(), 6);
        assert_eq!(catalog_rack("D_3^[-1]").unwrap().size(), 3);
        assert!(catalog_rack("nonsense").is_err());
        assert!(catalog_rack("D_3^(2)").unwrap().is_isomorphic(
            &catalog_rack("D_3^[1,1]").unwrap()
        ));
    }

    #[test]
    fn big_class_stays_lazy_but_answers() {
        // (1,2,5)-type class in S_8 has 4032 elements; keep it lazy and
        // probe a couple of products
        let rep = parse_cycles(8, "(2 3)(4 5 6 7 8)").unwrap();
        let sym = ambient_group(8, Ambient::Symmetric);
        let elements = sym.class_orbit(&rep, 10_000).unwrap();
        assert_eq!(elements.len(), 4032);
        let r = FiniteRack::conjugation_rack_unchecked(elements);
        let z = r.apply(0, 1);
        assert!(z < r.size());
    }
}
