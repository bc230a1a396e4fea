//! Exact permutation arithmetic on the point set `{1..m}`.
//!
//! Permutations are immutable values. Products compose right-to-left:
//! `(a * b)(i) = a(b(i))`, i.e. `b` acts first. Points are 1-indexed
//! throughout to match cycle notation; the identity prints as `()`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection of 1..={0}")]
    NotBijective(usize),
    #[error("point {0} out of range 1..={1}")]
    PointOutOfRange(usize, usize),
    #[error("malformed cycle notation at byte {0}: {1}")]
    Parse(usize, String),
    #[error("modulus must be odd, got {0}")]
    EvenModulus(u64),
    #[error("k = {0} is not coprime to m = {1}")]
    NotCoprime(u64, u64),
}

/// A bijection of `{1..m}`, stored as the image table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    /// `images[i - 1]` is the image of point `i`; values are in `1..=m`.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table (`images[i-1] = σ(i)`).
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            if v == 0 || v as usize > m {
                return Err(PermError::NotBijective(m));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(PermError::NotBijective(m));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (1..=degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w] as usize;
                let b = cycle[(w + 1) % cycle.len()];
                if a == 0 || a > degree {
                    return Err(PermError::PointOutOfRange(a, degree));
                }
                if std::mem::replace(&mut touched[a - 1], true) {
                    return Err(PermError::NotBijective(degree));
                }
                images[a - 1] = b;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a point (1-indexed).
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let images = other.images.iter().map(|&v| self.images[v as usize - 1]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// Conjugation `self ▷ x = self · x · self⁻¹`; preserves cycle type.
    pub fn conjugate(&self, x: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != x.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), x.degree()));
        }
        Ok(self.conjugate_unchecked(x))
    }

    /// Conjugation without the degree check; used in closure-style hot loops.
    #[inline]
    pub(crate) fn conjugate_unchecked(&self, x: &Permutation) -> Permutation {
        // (g x g⁻¹)(g(i)) = g(x(i)), so fill the image table directly.
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.images.len() {
            images[self.images[i] as usize - 1] = self.images[x.images[i] as usize - 1];
        }
        Permutation { images }
    }

    pub fn power(&self, k: i64) -> Permutation {
        let m = self.degree();
        if m == 0 {
            return self.clone();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(m);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose_unchecked(&acc);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .counts()
            .keys()
            .fold(1u64, |acc, &j| lcm(acc, j as u64))
    }

    /// Disjoint cycles sorted by least moved point; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 1..=m as u32 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p as usize - 1] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// All cycles including fixed points, each rotated to start at its least
    /// point, sorted by (length, least point). The canonical cycle layout.
    pub fn full_cycles(&self) -> Vec<Vec<u32>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for start in 1..=m as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p as usize - 1] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out.sort_by_key(|c| (c.len(), c[0]));
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        let mut moved = 0usize;
        for c in self.cycles() {
            *counts.entry(c.len() as u32).or_insert(0u32) += 1;
            moved += c.len();
        }
        let fixed = self.degree() - moved;
        if fixed > 0 {
            counts.insert(1, fixed as u32);
        }
        CycleType { m: self.degree(), counts }
    }

    /// Sign as a homomorphism to `{±1}`; `+1` exactly on the alternating group.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// The product of all even-length cycles (the rest fixed).
    pub fn even_part(&self) -> Permutation {
        self.select_cycles(|len| len % 2 == 0)
    }

    /// The product of all odd-length cycles of length > 1.
    pub fn odd_part(&self) -> Permutation {
        self.select_cycles(|len| len % 2 == 1 && len > 1)
    }

    fn select_cycles(&self, keep: impl Fn(usize) -> bool) -> Permutation {
        let cycles: Vec<Vec<u32>> =
            self.cycles().into_iter().filter(|c| keep(c.len())).collect();
        Permutation::from_cycles(self.degree(), &cycles).expect("cycles of a valid permutation")
    }

    /// Disjoint-support juxtaposition: re-embeds `tail` shifted by `deg(self)`.
    pub fn juxtapose(&self, tail: &Permutation) -> Permutation {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(tail.images.iter().map(|&v| v + shift));
        Permutation { images }
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32 + 1..=degree as u32);
        Permutation { images }
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on image tables; the canonical search order.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses cycle notation like `(1 2)(3 4 5)` relative to an explicit degree.
pub fn parse_cycles(degree: usize, s: &str) -> Result<Permutation, PermError> {
    let bytes = s.as_bytes();
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' => i += 1,
            b'(' => {
                let mut cycle = Vec::new();
                i += 1;
                loop {
                    while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b',') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(PermError::Parse(i, "unclosed cycle".into()));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(PermError::Parse(i, format!("expected digit, found {:?}", bytes[i] as char)));
                    }
                    let v: u32 = s[start..i]
                        .parse()
                        .map_err(|e| PermError::Parse(start, format!("{e}")))?;
                    cycle.push(v);
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            other => {
                return Err(PermError::Parse(i, format!("unexpected character {:?}", other as char)))
            }
        }
    }
    Permutation::from_cycles(degree, &cycles)
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses with the minimal degree (the largest point mentioned).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().unwrap_or(0))
            .max()
            .unwrap_or(0);
        parse_cycles(max as usize, s)
    }
}

/// Cycle-type data `(1^{n_1}, 2^{n_2}, …)` of a permutation of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    m: usize,
    /// length ↦ multiplicity; zero entries omitted.
    counts: BTreeMap<u32, u32>,
}

impl CycleType {
    pub fn new(m: usize, counts: BTreeMap<u32, u32>) -> Result<Self, String> {
        let total: u64 = counts.iter().map(|(&j, &n)| j as u64 * n as u64).sum();
        if counts.values().any(|&n| n == 0) {
            return Err("zero multiplicities must be omitted".into());
        }
        if total != m as u64 {
            return Err(format!("cycle lengths sum to {total}, expected {m}"));
        }
        Ok(CycleType { m, counts })
    }

    /// Parses a compact type string like `1^2,2^2` or `2,3`, inferring `m`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for token in s.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err("empty token in type string".into());
            }
            let (j, n) = match token.split_once('^') {
                Some((j, n)) => (
                    j.trim().parse::<u32>().map_err(|e| format!("bad length {j:?}: {e}"))?,
                    n.trim().parse::<u32>().map_err(|e| format!("bad multiplicity {n:?}: {e}"))?,
                ),
                None => (token.parse::<u32>().map_err(|e| format!("bad length {token:?}: {e}"))?, 1),
            };
            if j == 0 || n == 0 {
                return Err("cycle lengths and multiplicities must be positive".into());
            }
            *counts.entry(j).or_insert(0) += n;
        }
        let m: u64 = counts.iter().map(|(&j, &n)| j as u64 * n as u64).sum();
        CycleType::new(m as usize, counts)
    }

    pub fn of(sigma: &Permutation) -> Self {
        sigma.cycle_type()
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn counts(&self) -> &BTreeMap<u32, u32> {
        &self.counts
    }

    pub fn multiplicity(&self, j: u32) -> u32 {
        self.counts.get(&j).copied().unwrap_or(0)
    }

    /// Parity of any realizing permutation: `(−1)^{Σ (j−1) n_j}`.
    pub fn sign(&self) -> i32 {
        let swaps: u64 = self.counts.iter().map(|(&j, &n)| (j as u64 - 1) * n as u64).sum();
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.counts.keys().all(|&j| j == 1)
    }

    /// Canonical representative: cycles laid out on consecutive points in
    /// increasing length order.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1u32;
        for (&j, &n) in &self.counts {
            for _ in 0..n {
                if j > 1 {
                    cycles.push((next..next + j).collect::<Vec<u32>>());
                }
                next += j;
            }
        }
        Permutation::from_cycles(self.m, &cycles).expect("canonical layout is disjoint")
    }

    /// Size of the S_m conjugacy class: `m! / ∏ j^{n_j} n_j!`.
    pub fn class_size(&self) -> u128 {
        let mut size: u128 = 1;
        for k in 2..=self.m as u128 {
            size *= k;
        }
        size / self.centralizer_order()
    }

    /// `∏ j^{n_j} n_j!`, the order of the S_m centralizer.
    pub fn centralizer_order(&self) -> u128 {
        let mut ord: u128 = 1;
        for (&j, &n) in &self.counts {
            for _ in 0..n {
                ord *= j as u128;
            }
            for k in 2..=n as u128 {
                ord *= k;
            }
        }
        ord
    }

    /// The orders of the even and odd parts: `(lcm of even lengths, lcm of odd lengths > 1)`.
    pub fn part_orders(&self) -> (u64, u64) {
        let mut even = 1u64;
        let mut odd = 1u64;
        for &j in self.counts.keys() {
            if j % 2 == 0 {
                even = lcm(even, j as u64);
            } else if j > 1 {
                odd = lcm(odd, j as u64);
            }
        }
        (even, odd)
    }

    /// Does the S_m class of this type split into two A_m classes?
    /// True iff every cycle length is odd and multiplicities are all 1
    /// (fixed points count: at most one).
    pub fn splits_in_alternating(&self) -> bool {
        self.is_even()
            && self.counts.iter().all(|(&j, &n)| j % 2 == 1 && n == 1)
    }

    /// All sub-types `h` with `h_j ≤ n_j`, nonempty, including the full type.
    /// Ordered deterministically, larger support first.
    pub fn subtypes(&self) -> Vec<CycleType> {
        let entries: Vec<(u32, u32)> = self.counts.iter().map(|(&j, &n)| (j, n)).collect();
        let mut picks: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new()];
        for &(j, n) in &entries {
            let mut next = Vec::new();
            for p in &picks {
                for take in 0..=n {
                    let mut q = p.clone();
                    if take > 0 {
                        q.insert(j, take);
                    }
                    next.push(q);
                }
            }
            picks = next;
        }
        let mut out: Vec<CycleType> = picks
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let m: u64 = c.iter().map(|(&j, &n)| j as u64 * n as u64).sum();
                CycleType { m: m as usize, counts: c }
            })
            .collect();
        out.sort_by(|a, b| b.m.cmp(&a.m).then_with(|| b.counts.cmp(&a.counts)));
        out
    }

    /// The type obtained by removing `sub` (which must be a subtype).
    pub fn minus(&self, sub: &CycleType) -> Option<CycleType> {
        let mut counts = self.counts.clone();
        for (&j, &n) in &sub.counts {
            let have = counts.get_mut(&j)?;
            if *have < n {
                return None;
            }
            *have -= n;
            if *have == 0 {
                counts.remove(&j);
            }
        }
        let m = self.m - sub.m;
        Some(CycleType { m, counts })
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (&j, &n) in &self.counts {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if n == 1 {
                write!(f, "{j}")?;
            } else {
                write!(f, "{j}^{n}")?;
            }
        }
        write!(f, ")")
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The permutation `π` of `{1..m}` (identified with `Z/m`, `m ↦ 0`) given by
/// `i ↦ k·i mod m`. For `gcd(k, m) = 1` and the standard m-cycle
/// `σ = (1 2 … m)` it satisfies `π σ π⁻¹ = σ^k`.
pub fn power_conjugator(m: u64, k: u64) -> Result<Permutation, PermError> {
    if m % 2 == 0 {
        return Err(PermError::EvenModulus(m));
    }
    if gcd(k % m, m) != 1 {
        return Err(PermError::NotCoprime(k, m));
    }
    let images = (1..=m)
        .map(|i| {
            let v = (i % m) * (k % m) % m;
            if v == 0 {
                m as u32
            } else {
                v as u32
            }
        })
        .collect();
    Permutation::from_images(images)
}

/// Jacobi symbol `J(k, m)` for odd positive `m`; `0` iff `gcd(k, m) > 1`.
pub fn jacobi(k: i64, m: u64) -> Result<i32, PermError> {
    if m % 2 == 0 {
        return Err(PermError::EvenModulus(m));
    }
    let mut n = m;
    let mut a = k.rem_euclid(m as i64) as u64;
    let mut sign = 1i32;
    loop {
        a %= n;
        if a == 0 {
            return Ok(if n == 1 { sign } else { 0 });
        }
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        if a == 1 {
            return Ok(sign);
        }
        if gcd(a, n) > 1 {
            return Ok(0);
        }
        // reciprocity
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pd(degree: usize, s: &str) -> Permutation {
        parse_cycles(degree, s).unwrap()
    }

    #[test]
    fn compose_identity_and_involution() {
        let sigma = pd(5, "(1 2 3)");
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&sigma).unwrap(), sigma);
        let t = pd(5, "(1 2)");
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_three_cycle_with_transposition() {
        // (1 2 3) ∘ (1 2) applies (1 2) first: a brute-force image table
        // gives 1→3, 2→2, 3→1.
        let a = pd(3, "(1 2 3)");
        let b = pd(3, "(1 2)");
        let c = a.compose(&b).unwrap();
        assert_eq!(c, pd(3, "(1 3)"));
        for i in 1..=3 {
            assert_eq!(c.apply(i), a.apply(b.apply(i)));
        }
    }

    #[test]
    fn conjugate_relabels_cycles() {
        let g = pd(4, "(1 3)");
        let x = pd(4, "(1 2 3 4)");
        assert_eq!(g.conjugate(&x).unwrap(), pd(4, "(3 2 1 4)"));
        let id = Permutation::identity(4);
        assert_eq!(id.conjugate(&x).unwrap(), x);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(PermError::DegreeMismatch(3, 4))));
        assert!(matches!(a.conjugate(&b), Err(PermError::DegreeMismatch(3, 4))));
    }

    /// Exhaustive S_5 oracle: conjugation preserves cycle type.
    #[test]
    fn conjugation_preserves_cycle_type_exhaustive() {
        let elems = all_of_sym(5);
        let x = pd(5, "(1 2)(3 4 5)");
        for g in &elems {
            assert_eq!(g.conjugate(&x).unwrap().cycle_type(), x.cycle_type());
        }
    }

    fn all_of_sym(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut idx: Vec<u32> = (1..=m as u32).collect();
        permute(&mut idx, 0, &mut out);
        out
    }

    fn permute(v: &mut Vec<u32>, k: usize, out: &mut Vec<Permutation>) {
        if k == v.len() {
            out.push(Permutation::from_images(v.clone()).unwrap());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn even_odd_parts_multiply_back_exhaustive_s6() {
        for x in all_of_sym(6) {
            let e = x.even_part();
            let o = x.odd_part();
            assert_eq!(e.compose(&o).unwrap(), x, "parts of {x}");
            assert_eq!(o.compose(&e).unwrap(), x, "parts of {x} commute");
            assert!(e.cycles().iter().all(|c| c.len() % 2 == 0));
            assert!(o.cycles().iter().all(|c| c.len() % 2 == 1 && c.len() > 1));
        }
    }

    #[test]
    fn parts_of_identity_and_mixed() {
        let x = pd(5, "(1 2)(3 4 5)");
        assert_eq!(x.even_part(), pd(5, "(1 2)"));
        assert_eq!(x.odd_part(), pd(5, "(3 4 5)"));
        let mut counts = BTreeMap::new();
        counts.insert(2, 1);
        counts.insert(3, 1);
        assert_eq!(x.cycle_type(), CycleType::new(5, counts).unwrap());

        let id = Permutation::identity(5);
        assert!(id.even_part().is_identity());
        assert!(id.odd_part().is_identity());
        assert_eq!(id.cycle_type().multiplicity(1), 5);
    }

    #[test]
    fn sign_is_multiplicative_s5() {
        let elems = all_of_sym(5);
        for a in elems.iter().step_by(7) {
            for b in elems.iter().step_by(11) {
                let ab = a.compose(b).unwrap();
                assert_eq!(ab.sign(), a.sign() * b.sign());
            }
        }
    }

    #[test]
    fn power_conjugator_small_cases() {
        assert!(power_conjugator(5, 1).unwrap().is_identity());
        let l2 = power_conjugator(5, 2).unwrap();
        // x ↦ 2x mod 5 is the 4-cycle (1 2 4 3), sign −1.
        assert_eq!(l2, pd(5, "(1 2 4 3)"));
        assert_eq!(l2.sign(), -1);
        assert!(power_conjugator(9, 3).is_err());
        assert!(power_conjugator(8, 3).is_err());
    }

    #[test]
    fn power_conjugator_conjugation_identity_up_to_21() {
        for m in (3..=21u64).step_by(2) {
            let sigma = CycleType::parse(&format!("{m}")).unwrap().representative();
            for k in 1..m {
                if gcd(k, m) != 1 {
                    continue;
                }
                let pi = power_conjugator(m, k).unwrap();
                let lhs = pi.conjugate(&sigma).unwrap();
                assert_eq!(lhs, sigma.power(k as i64), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn jacobi_basics() {
        for m in (1..=45u64).step_by(2) {
            assert_eq!(jacobi(1, m).unwrap(), 1);
        }
        // squares mod 5 are {1, 4}
        assert_eq!(jacobi(2, 5).unwrap(), -1);
        assert_eq!(jacobi(4, 5).unwrap(), 1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        assert!(jacobi(3, 8).is_err());
        // multiplicativity in the numerator
        for m in (3..=21u64).step_by(2) {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    assert_eq!(
                        jacobi(a * b, m).unwrap(),
                        jacobi(a, m).unwrap() * jacobi(b, m).unwrap()
                    );
                }
            }
        }
    }

    /// sign(λ_k) = J(k, m) for all odd m ≤ 45 — the Zolotarev property.
    #[test]
    fn zolotarev_up_to_45() {
        for m in (3..=45u64).step_by(2) {
            for k in 1..m {
                if gcd(k, m) != 1 {
                    continue;
                }
                let pi = power_conjugator(m, k).unwrap();
                assert_eq!(pi.sign(), jacobi(k as i64, m).unwrap(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn cycle_notation_round_trip() {
        let x = pd(6, "(1 2)(3 4 5)");
        assert_eq!(x.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p("(1 2)(3 4 5)"), pd(5, "(3 4 5)(1 2)"));
        assert!(parse_cycles(3, "(1 2 4)").is_err());
        assert!(parse_cycles(3, "(1 2").is_err());
        assert!("(1 1 2)".parse::<Permutation>().is_err());
    }

    #[test]
    fn type_string_parsing() {
        let t = CycleType::parse("1^2,2^2").unwrap();
        assert_eq!(t.degree(), 6);
        assert_eq!(t.to_string(), "(1^2,2^2)");
        assert_eq!(CycleType::parse("2,3").unwrap().degree(), 5);
        assert!(CycleType::parse("0^2").is_err());
        assert!(CycleType::parse("").is_err());
    }

    #[test]
    fn representative_and_class_size() {
        let t = CycleType::parse("1^3,2").unwrap();
        assert_eq!(t.representative(), pd(5, "(4 5)"));
        // 10 transpositions in S_5
        assert_eq!(t.class_size(), 10);
        assert_eq!(t.centralizer_order(), 12);
        let five = CycleType::parse("5").unwrap();
        assert_eq!(five.class_size(), 24);
        assert!(five.splits_in_alternating());
        assert!(!CycleType::parse("1^2,3").unwrap().splits_in_alternating());
        assert!(!CycleType::parse("2^2,1").unwrap().splits_in_alternating());
    }

    #[test]
    fn subtypes_enumeration() {
        let t = CycleType::parse("1,2^2").unwrap();
        let subs = t.subtypes();
        // (1+1)·(2+1) − 1 = 5 nonempty subtypes
        assert_eq!(subs.len(), 5);
        assert_eq!(subs[0], t);
        let tail = t.minus(&CycleType::parse("2").unwrap()).unwrap();
        assert_eq!(tail, CycleType::parse("1,2").unwrap());
    }

    #[test]
    fn juxtaposition_shifts_tail() {
        let a = pd(2, "(1 2)");
        let b = pd(3, "(1 2 3)");
        assert_eq!(a.juxtapose(&b), pd(5, "(1 2)(3 4 5)"));
        assert_eq!(a.juxtapose(&b).cycle_type(), CycleType::parse("2,3").unwrap());
    }

    #[test]
    fn order_and_power() {
        let x = pd(5, "(1 2)(3 4 5)");
        assert_eq!(x.order(), 6);
        assert!(x.power(6).is_identity());
        assert_eq!(x.power(-1), x.inverse());
        assert_eq!(x.power(7), x);
    }
}
