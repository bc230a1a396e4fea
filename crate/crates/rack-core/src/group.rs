//! Finite-group engine over permutations: subgroup closure under a cap,
//! deterministic stabilizer chains for order and membership, conjugation
//! orbits, centralizers of `S_m`, and conjugacy-class enumeration for
//! symmetric and alternating ambients.
//!
//! All searches are breadth-first with canonical (lexicographic image-array)
//! tie-breaking, so results are reproducible across runs and platforms.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{CycleType, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator degree {0} differs from group degree {1}")]
    GeneratorDegree(usize, usize),
    #[error("element degree {0} differs from group degree {1}")]
    ElementDegree(usize, usize),
    #[error("stabilizer chains support degree ≤ {max}, got {got}")]
    DegreeTooLarge { got: usize, max: usize },
    #[error("alternating ambient requires an even cycle type, got {0}")]
    OddTypeInAlternating(String),
    #[error("split part requested but the class does not split: {0}")]
    DoesNotSplit(String),
    #[error("cycle type has degree {0} but m = {1}")]
    TypeDegreeMismatch(usize, usize),
}

/// Enumeration capped: the requested set exceeds the configured bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow {
    pub cap: usize,
}

pub const STABILIZER_CHAIN_MAX_DEGREE: usize = 64;

/// A permutation group given by generators, with lazily built caches.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl GeneratedGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::GeneratorDegree(g.degree(), degree));
            }
        }
        let mut generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        generators.sort();
        generators.dedup();
        Ok(GeneratedGroup { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Full element enumeration if the order is at most `cap`.
    pub fn closure(&self, cap: usize) -> Result<Vec<Permutation>, Overflow> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.compose_unchecked(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Overflow { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Exact group order via a deterministic stabilizer chain.
    pub fn order(&self) -> Result<u128, GroupError> {
        Ok(self.chain()?.order())
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool, GroupError> {
        if x.degree() != self.degree {
            return Err(GroupError::ElementDegree(x.degree(), self.degree));
        }
        Ok(self.chain()?.contains(x))
    }

    fn chain(&self) -> Result<StabilizerChain, GroupError> {
        if self.degree > STABILIZER_CHAIN_MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge {
                got: self.degree,
                max: STABILIZER_CHAIN_MAX_DEGREE,
            });
        }
        Ok(StabilizerChain::build(self.degree, &self.generators))
    }

    /// The conjugacy class of `x` in this group, by breadth-first closure
    /// under generator conjugation. Complete when it returns `Ok`.
    pub fn class_orbit(&self, x: &Permutation, cap: usize) -> Result<Vec<Permutation>, Overflow> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        seen.insert(x.clone());
        queue.push_back(x.clone());
        while let Some(y) = queue.pop_front() {
            for g in &self.generators {
                let z = g.conjugate_unchecked(&y);
                if !seen.contains(&z) {
                    if seen.len() >= cap {
                        return Err(Overflow { cap });
                    }
                    seen.insert(z.clone());
                    queue.push_back(z);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Decides conjugacy of `x` and `y` inside this group when the class
    /// orbit fits under the cap; `Unknown` otherwise. Certificates must never
    /// rely on `Unknown`.
    pub fn are_conjugate_in(&self, x: &Permutation, y: &Permutation, cap: usize) -> Conjugacy {
        if x == y {
            return Conjugacy::Yes;
        }
        match self.class_orbit(x, cap) {
            Ok(orbit) => {
                if orbit.binary_search(y).is_ok() {
                    Conjugacy::Yes
                } else {
                    Conjugacy::No
                }
            }
            Err(_) => Conjugacy::Unknown,
        }
    }
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩ ≤ S_{}", self.degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugacy {
    Yes,
    No,
    Unknown,
}

/// Deterministic Schreier–Sims, restart flavor: keep one strong generating
/// list; level `k` acts with every strong generator fixing the first `k`
/// base points. Whenever a Schreier generator fails to sift, its residue is
/// adopted as a strong generator and the chain is rebuilt. Each restart
/// strictly grows `∏ |orbit_k|`, so the loop terminates at the group order.
struct StabilizerChain {
    degree: usize,
    bases: Vec<u32>,
    strong: Vec<Permutation>,
    /// Per level: orbit point ↦ coset representative mapping base to it.
    transversals: Vec<HashMap<u32, Permutation>>,
}

impl StabilizerChain {
    fn build(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            bases: Vec::new(),
            strong: generators.iter().filter(|g| !g.is_identity()).cloned().collect(),
            transversals: Vec::new(),
        };
        chain.cover_all_strong();
        loop {
            chain.rebuild_transversals();
            match chain.find_unsiftable_schreier() {
                None => break,
                Some(residue) => {
                    chain.strong.push(residue);
                    chain.cover_all_strong();
                }
            }
        }
        chain
    }

    /// Appends bases until every strong generator moves at least one base.
    fn cover_all_strong(&mut self) {
        loop {
            let uncovered = self
                .strong
                .iter()
                .find(|g| self.bases.iter().all(|&b| g.apply(b) == b));
            match uncovered {
                None => return,
                Some(g) => {
                    let base = (1..=self.degree as u32)
                        .find(|&p| g.apply(p) != p)
                        .expect("strong generators are non-identity");
                    self.bases.push(base);
                }
            }
        }
    }

    fn level_generators(&self, level: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|g| self.bases[..level].iter().all(|&b| g.apply(b) == b))
            .collect()
    }

    fn rebuild_transversals(&mut self) {
        self.transversals.clear();
        for level in 0..self.bases.len() {
            let base = self.bases[level];
            let gens = self.level_generators(level);
            let mut transversal = HashMap::new();
            transversal.insert(base, Permutation::identity(self.degree));
            let mut queue = VecDeque::new();
            queue.push_back(base);
            while let Some(p) = queue.pop_front() {
                let rep = transversal[&p].clone();
                for g in &gens {
                    let q = g.apply(p);
                    if let std::collections::hash_map::Entry::Vacant(slot) =
                        transversal.entry(q)
                    {
                        slot.insert(g.compose_unchecked(&rep));
                        queue.push_back(q);
                    }
                }
            }
            self.transversals.push(transversal);
        }
    }

    /// First Schreier generator (in scan order) that does not sift to the
    /// identity, returned as its sift residue.
    fn find_unsiftable_schreier(&self) -> Option<Permutation> {
        for level in 0..self.bases.len() {
            let gens = self.level_generators(level);
            let transversal = &self.transversals[level];
            let mut points: Vec<u32> = transversal.keys().copied().collect();
            points.sort();
            for &p in &points {
                let rep = &transversal[&p];
                for g in &gens {
                    let q = g.apply(p);
                    let rep_q = &transversal[&q];
                    let s = rep_q.inverse().compose_unchecked(&g.compose_unchecked(rep));
                    if let Some(residue) = self.sift(s) {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    /// Returns the non-identity residue if `x` fails to sift.
    fn sift(&self, mut x: Permutation) -> Option<Permutation> {
        for level in 0..self.bases.len() {
            if x.is_identity() {
                return None;
            }
            let image = x.apply(self.bases[level]);
            match self.transversals[level].get(&image) {
                Some(rep) => x = rep.inverse().compose_unchecked(&x),
                None => return Some(x),
            }
        }
        if x.is_identity() {
            None
        } else {
            Some(x)
        }
    }

    fn order(&self) -> u128 {
        self.transversals.iter().map(|t| t.len() as u128).product()
    }

    fn contains(&self, x: &Permutation) -> bool {
        self.sift(x.clone()).is_none()
    }
}

/// Generators of the even subgroup `⟨gens⟩ ∩ A_m` via Schreier's lemma with
/// coset representatives `{e, t}`, `t` the first odd generator.
pub fn even_subgroup_generators(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let odd = gens.iter().find(|g| !g.is_even());
    let Some(t) = odd else {
        return gens.to_vec();
    };
    let t_inv = t.inverse();
    let mut out: Vec<Permutation> = Vec::new();
    for g in gens {
        if g.is_even() {
            out.push(g.clone());
            out.push(t.compose_unchecked(&g.compose_unchecked(&t_inv)));
        } else {
            out.push(g.compose_unchecked(&t_inv));
            out.push(t.compose_unchecked(g));
        }
    }
    let _ = degree;
    out.retain(|g| !g.is_identity());
    out.sort();
    out.dedup();
    out
}

/// Generators of the S_m centralizer of `x`: the cycles of `x` themselves
/// plus block swaps exchanging consecutive same-length cycles. The order is
/// `∏_j j^{n_j} · n_j!`.
pub fn centralizer_in_sym(x: &Permutation) -> GeneratedGroup {
    let m = x.degree();
    let cycles = x.full_cycles();
    let mut gens: Vec<Permutation> = Vec::new();
    for c in &cycles {
        if c.len() > 1 {
            gens.push(Permutation::from_cycles(m, std::slice::from_ref(c)).unwrap());
        }
    }
    for w in cycles.windows(2) {
        if w[0].len() == w[1].len() {
            let swap: Vec<Vec<u32>> = w[0]
                .iter()
                .zip(w[1].iter())
                .map(|(&a, &b)| vec![a, b])
                .collect();
            gens.push(Permutation::from_cycles(m, &swap).unwrap());
        }
    }
    GeneratedGroup::new(m, gens).expect("centralizer generators share the degree")
}

/// Does the centralizer of this type contain an odd permutation?
/// Equivalent to: the S_m class does not split in A_m.
pub fn centralizer_has_odd_element(t: &CycleType) -> bool {
    !t.splits_in_alternating()
}

/// Ambient group of a conjugacy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "S")]
    Symmetric,
    #[serde(rename = "A")]
    Alternating,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Symmetric => write!(f, "S"),
            Ambient::Alternating => write!(f, "A"),
        }
    }
}

/// Which of the two A_m classes, when the S_m class splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitPart {
    #[serde(rename = "plus")]
    Plus,
    #[serde(rename = "minus")]
    Minus,
}

/// A conjugacy class of `S_m` or `A_m`, identified by cycle type (and a split
/// tag when the S_m class splits into two A_m classes).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjClassSpec {
    pub m: usize,
    #[serde(rename = "type")]
    pub cycle_type: CycleType,
    pub ambient: Ambient,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitPart>,
}

impl ConjClassSpec {
    pub fn new(
        m: usize,
        cycle_type: CycleType,
        ambient: Ambient,
        split: Option<SplitPart>,
    ) -> Result<Self, GroupError> {
        if cycle_type.degree() != m {
            return Err(GroupError::TypeDegreeMismatch(cycle_type.degree(), m));
        }
        if ambient == Ambient::Alternating && !cycle_type.is_even() {
            return Err(GroupError::OddTypeInAlternating(cycle_type.to_string()));
        }
        if split.is_some() {
            if ambient != Ambient::Alternating || !cycle_type.splits_in_alternating() {
                return Err(GroupError::DoesNotSplit(cycle_type.to_string()));
            }
        }
        Ok(ConjClassSpec { m, cycle_type, ambient, split })
    }

    /// The usual convention: odd types live in `S_m`, even types in `A_m`
    /// (with the `Plus` part when the class splits).
    pub fn canonical(cycle_type: CycleType) -> Self {
        let m = cycle_type.degree();
        if cycle_type.is_even() {
            let split = if cycle_type.splits_in_alternating() {
                Some(SplitPart::Plus)
            } else {
                None
            };
            ConjClassSpec { m, cycle_type, ambient: Ambient::Alternating, split }
        } else {
            ConjClassSpec { m, cycle_type, ambient: Ambient::Symmetric, split: None }
        }
    }

    /// Canonical class representative. For the `Minus` split part this is the
    /// `(1 2)`-conjugate of the layout representative.
    pub fn representative(&self) -> Permutation {
        let rep = self.cycle_type.representative();
        match self.split {
            Some(SplitPart::Minus) => {
                let t = Permutation::from_cycles(self.m, &[vec![1, 2]]).unwrap();
                t.conjugate_unchecked(&rep)
            }
            _ => rep,
        }
    }

    pub fn size(&self) -> u128 {
        let s = self.cycle_type.class_size();
        if self.splits() && self.ambient == Ambient::Alternating {
            s / 2
        } else {
            s
        }
    }

    pub fn splits(&self) -> bool {
        self.cycle_type.splits_in_alternating()
    }

    /// Membership test, exact: cycle type plus (for split A_m classes) the
    /// parity of an explicit conjugator onto the representative.
    pub fn contains(&self, x: &Permutation) -> bool {
        if x.degree() != self.m || x.cycle_type() != self.cycle_type {
            return false;
        }
        match (self.ambient, self.splits()) {
            (Ambient::Symmetric, _) => true,
            (Ambient::Alternating, false) => true,
            (Ambient::Alternating, true) => {
                let g = conjugator_by_alignment(&self.representative(), x);
                g.is_even()
            }
        }
    }

    /// Enumerates the class, breadth-first under ambient generators.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>, Overflow> {
        let rep = self.representative();
        let group = ambient_group(self.m, self.ambient);
        group.class_orbit(&rep, cap)
    }

    pub fn type_string(&self) -> String {
        let s = self.cycle_type.to_string();
        s[1..s.len() - 1].to_string()
    }
}

impl fmt::Display for ConjClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}_{}", self.cycle_type, self.ambient, self.m)?;
        if let Some(part) = self.split {
            write!(f, " [{}]", match part {
                SplitPart::Plus => "plus",
                SplitPart::Minus => "minus",
            })?;
        }
        Ok(())
    }
}

/// `S_m = ⟨(1 2), (1 2 … m)⟩`; `A_m = ⟨(1 2 3), …⟩` via even generators.
pub fn ambient_group(m: usize, ambient: Ambient) -> GeneratedGroup {
    let mut gens = Vec::new();
    match ambient {
        Ambient::Symmetric => {
            if m >= 2 {
                gens.push(Permutation::from_cycles(m, &[vec![1, 2]]).unwrap());
            }
            if m >= 3 {
                gens.push(Permutation::from_cycles(m, &[(1..=m as u32).collect()]).unwrap());
            }
        }
        Ambient::Alternating => {
            // 3-cycles (1 2 k) generate A_m
            for k in 3..=m as u32 {
                gens.push(Permutation::from_cycles(m, &[vec![1, 2, k]]).unwrap());
            }
        }
    }
    GeneratedGroup::new(m, gens).unwrap()
}

/// A conjugator `g` with `g · a · g⁻¹ = b`, built by aligning the canonical
/// cycle layouts. Deterministic; `a` and `b` must share a cycle type.
pub fn conjugator_by_alignment(a: &Permutation, b: &Permutation) -> Permutation {
    debug_assert_eq!(a.cycle_type(), b.cycle_type());
    let ca = a.full_cycles();
    let cb = b.full_cycles();
    let mut images = vec![0u32; a.degree()];
    for (x, y) in ca.iter().zip(cb.iter()) {
        debug_assert_eq!(x.len(), y.len());
        for (u, v) in x.iter().zip(y.iter()) {
            images[*u as usize - 1] = *v;
        }
    }
    Permutation::from_images(images).expect("cycle alignment is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn p(m: usize, s: &str) -> Permutation {
        parse_cycles(m, s).unwrap()
    }

    fn grp(m: usize, gens: &[&str]) -> GeneratedGroup {
        GeneratedGroup::new(m, gens.iter().map(|s| p(m, s)).collect()).unwrap()
    }

    #[test]
    fn closure_of_a_transposition() {
        let g = grp(2, &["(1 2)"]);
        let elems = g.closure(100).unwrap();
        assert_eq!(elems.len(), 2);
        assert_eq!(g.order().unwrap(), 2);
    }

    #[test]
    fn closure_order_21_and_36_fixtures() {
        // ⟨(2 3 4)(5 6 7), (1 2 5)(3 4 6)⟩ has order 21
        let g = grp(7, &["(2 3 4)(5 6 7)", "(1 2 5)(3 4 6)"]);
        assert_eq!(g.closure(10_000).unwrap().len(), 21);
        assert_eq!(g.order().unwrap(), 21);
        // ⟨(1 2 3)(4 5 6)(7 8 9), (1 2 4)(3 5 6)(7 9 8)⟩ has order 36
        let h = grp(9, &["(1 2 3)(4 5 6)(7 8 9)", "(1 2 4)(3 5 6)(7 9 8)"]);
        assert_eq!(h.closure(10_000).unwrap().len(), 36);
        assert_eq!(h.order().unwrap(), 36);
    }

    #[test]
    fn closure_overflow_signals() {
        let g = grp(6, &["(1 2)", "(1 2 3 4 5 6)"]);
        assert_eq!(g.closure(100), Err(Overflow { cap: 100 }));
        assert_eq!(g.order().unwrap(), 720);
    }

    #[test]
    fn closure_result_is_a_group() {
        let g = grp(5, &["(1 2 3)", "(3 4 5)"]);
        let elems = g.closure(100).unwrap();
        assert_eq!(elems.len(), 60, "A_5 = ⟨(1 2 3), (3 4 5)⟩");
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert!(set.contains(&Permutation::identity(5)));
        for a in &elems {
            assert!(set.contains(&a.inverse()));
            for b in elems.iter().step_by(7) {
                assert!(set.contains(&a.compose_unchecked(b)));
            }
        }
    }

    #[test]
    fn order_of_cyclic_group_is_m() {
        for m in 2..=10 {
            let g = grp(m, &[&format!(
                "({})",
                (1..=m).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
            )]);
            assert_eq!(g.order().unwrap(), m as u128);
        }
    }

    #[test]
    fn membership_agrees_with_closure_enumeration() {
        let groups = [
            grp(5, &["(1 2 3)", "(3 4 5)"]),
            grp(7, &["(2 3 4)(5 6 7)", "(1 2 5)(3 4 6)"]),
            grp(6, &["(1 2)", "(1 2 3 4 5 6)"]),
            grp(7, &["(4 5)(6 7)", "(1 2)(3 7)"]),
        ];
        let sym7 = ambient_group(7, Ambient::Symmetric).closure(10_000).unwrap();
        for g in &groups {
            let elems: HashSet<Permutation> =
                g.closure(100_000).unwrap().into_iter().collect();
            assert_eq!(elems.len() as u128, g.order().unwrap());
            for x in sym7.iter().step_by(13) {
                if x.degree() == g.degree() {
                    assert_eq!(g.contains(x).unwrap(), elems.contains(x));
                }
            }
            for x in elems.iter().step_by(5) {
                assert!(g.contains(x).unwrap());
            }
        }
    }

    #[test]
    fn class_orbit_basics() {
        let m = 6;
        let sigma = p(m, "(1 2 3 4 5 6)");
        let cyclic = GeneratedGroup::new(m, vec![sigma.clone()]).unwrap();
        assert_eq!(cyclic.class_orbit(&sigma, 10).unwrap(), vec![sigma.clone()]);

        // Lagrange: orbit size divides group order.
        let g = grp(6, &["(1 2)", "(1 2 3 4 5 6)"]);
        let orbit = g.class_orbit(&sigma, 10_000).unwrap();
        assert_eq!(g.order().unwrap() % orbit.len() as u128, 0);
        assert_eq!(orbit.len(), 120);
    }

    /// Orbit–stabilizer: |class_orbit(x, H)| · |C_H(x)| = |H|.
    #[test]
    fn orbit_times_centralizer_is_group_order() {
        let groups = [
            grp(6, &["(1 2)", "(1 2 3 4 5 6)"]),
            grp(7, &["(2 3 4)(5 6 7)", "(1 2 5)(3 4 6)"]),
            grp(5, &["(1 2 3)", "(3 4 5)"]),
        ];
        for g in &groups {
            let elements = g.closure(100_000).unwrap();
            for x in elements.iter().step_by(11) {
                let orbit = g.class_orbit(x, 100_000).unwrap();
                let centralizer = elements
                    .iter()
                    .filter(|h| h.conjugate_unchecked(x) == *x)
                    .count();
                assert_eq!(orbit.len() * centralizer, elements.len(), "x = {x} in {g:?}");
            }
        }
    }

    #[test]
    fn conjugacy_no_matches_brute_force() {
        // Step-style fixture: σ = (1..6), τ = (1 2 5 6 3 4) are not conjugate
        // in H = ⟨σ, τ⟩ although they share a cycle type.
        let sigma = p(6, "(1 2 3 4 5 6)");
        let tau = p(6, "(1 2 5 6 3 4)");
        let h = GeneratedGroup::new(6, vec![sigma.clone(), tau.clone()]).unwrap();
        assert_eq!(h.are_conjugate_in(&sigma, &tau, 100_000), Conjugacy::No);
        assert_eq!(h.are_conjugate_in(&sigma, &sigma, 10), Conjugacy::Yes);

        // brute-force oracle over all h ∈ H
        let elems = h.closure(100_000).unwrap();
        assert!(elems.iter().all(|g| g.conjugate_unchecked(&sigma) != tau));
    }

    #[test]
    fn centralizer_generators_and_order() {
        let x = p(4, "(1 2)");
        let c = centralizer_in_sym(&x);
        assert_eq!(c.order().unwrap(), 4, "2 · 2! · 1");

        // order formula matches enumeration for all types with m ≤ 7
        for m in 1..=7usize {
            for t in all_types(m) {
                let rep = t.representative();
                let c = centralizer_in_sym(&rep);
                assert_eq!(
                    c.order().unwrap(),
                    t.centralizer_order(),
                    "centralizer of {t}"
                );
                // every generator commutes with the representative
                for g in c.generators() {
                    assert_eq!(g.conjugate_unchecked(&rep), rep);
                }
            }
        }
    }

    fn all_types(m: usize) -> Vec<CycleType> {
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
                let mut counts = std::collections::BTreeMap::new();
                for j in parts {
                    *counts.entry(j).or_insert(0) += 1;
                }
                CycleType::new(m, counts).unwrap()
            })
            .collect()
    }

    #[test]
    fn centralizer_of_full_cycle_is_cyclic() {
        let x = p(7, "(1 2 3 4 5 6 7)");
        let c = centralizer_in_sym(&x);
        assert_eq!(c.order().unwrap(), 7);
    }

    #[test]
    fn class_enumeration_and_split() {
        let t = CycleType::parse("1^3,2").unwrap();
        let spec = ConjClassSpec::new(5, t, Ambient::Symmetric, None).unwrap();
        assert_eq!(spec.elements(100).unwrap().len(), 10);

        // (5) in S_5 splits into two A_5 classes of 12
        let five = CycleType::parse("5").unwrap();
        assert!(five.splits_in_alternating());
        let plus = ConjClassSpec::new(5, five.clone(), Ambient::Alternating, Some(SplitPart::Plus))
            .unwrap();
        let minus =
            ConjClassSpec::new(5, five.clone(), Ambient::Alternating, Some(SplitPart::Minus))
                .unwrap();
        let op = plus.elements(100).unwrap();
        let om = minus.elements(100).unwrap();
        assert_eq!(op.len(), 12);
        assert_eq!(om.len(), 12);
        assert!(op.iter().all(|x| !om.contains(x)));
        let sym = ConjClassSpec::new(5, five, Ambient::Symmetric, None).unwrap();
        assert_eq!(sym.elements(100).unwrap().len(), 24);

        // (2^2,1) does not split: even lengths present
        assert!(!CycleType::parse("1,2^2").unwrap().splits_in_alternating());
        let t = CycleType::parse("1,2^2").unwrap();
        let alt = ConjClassSpec::new(5, t.clone(), Ambient::Alternating, None).unwrap();
        assert_eq!(alt.elements(100).unwrap().len() as u128, t.class_size());
    }

    #[test]
    fn split_membership_by_conjugator_parity() {
        let five = CycleType::parse("5").unwrap();
        let plus =
            ConjClassSpec::new(5, five, Ambient::Alternating, Some(SplitPart::Plus)).unwrap();
        let rep = plus.representative();
        assert!(plus.contains(&rep));
        let odd = p(5, "(1 2)");
        assert!(!plus.contains(&odd.conjugate_unchecked(&rep)));
        let even = p(5, "(1 2 3)");
        assert!(plus.contains(&even.conjugate_unchecked(&rep)));
        // σ² lies in the other A_5 class, σ⁴ in the same one (J(2,5) = −1, J(4,5) = 1)
        assert!(!plus.contains(&rep.power(2)));
        assert!(plus.contains(&rep.power(4)));
    }

    #[test]
    fn spec_validation_errors() {
        let odd_type = CycleType::parse("1^3,2").unwrap();
        assert!(ConjClassSpec::new(5, odd_type, Ambient::Alternating, None).is_err());
        let no_split = CycleType::parse("1,2^2").unwrap();
        assert!(
            ConjClassSpec::new(5, no_split, Ambient::Alternating, Some(SplitPart::Plus)).is_err()
        );
        let t = CycleType::parse("5").unwrap();
        assert!(ConjClassSpec::new(6, t, Ambient::Symmetric, None).is_err());
    }

    #[test]
    fn even_subgroup_of_full_symmetric() {
        let g = ambient_group(5, Ambient::Symmetric);
        let alt = GeneratedGroup::new(5, even_subgroup_generators(5, g.generators())).unwrap();
        assert_eq!(alt.order().unwrap(), 60);
        assert!(alt.generators().iter().all(|g| g.is_even()));

        // centralizer of (3^2)-element intersected with A_6
        let x = p(6, "(1 2 3)(4 5 6)");
        let c = centralizer_in_sym(&x);
        assert_eq!(c.order().unwrap(), 18);
        let even = GeneratedGroup::new(6, even_subgroup_generators(6, c.generators())).unwrap();
        assert_eq!(even.order().unwrap(), 9);
    }

    #[test]
    fn alignment_conjugator_works() {
        let a = p(7, "(1 2 3)(4 5)");
        let b = p(7, "(2 7 4)(1 3)");
        let g = conjugator_by_alignment(&a, &b);
        assert_eq!(g.conjugate_unchecked(&a), b);
    }

    #[test]
    fn ambient_group_orders() {
        assert_eq!(ambient_group(5, Ambient::Symmetric).order().unwrap(), 120);
        assert_eq!(ambient_group(5, Ambient::Alternating).order().unwrap(), 60);
        assert_eq!(ambient_group(8, Ambient::Alternating).order().unwrap(), 20160);
    }
}
