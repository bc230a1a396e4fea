//! Affine racks over `F_p^t` and their double racks.
//!
//! An affine rack `(A, T)` is `A = F_p^t` with `x ▷ y = (1−T)x + Ty` for an
//! invertible `T`. Realized inside the semidirect product `A ⋊ ⟨T⟩`,
//! conjugation reads `(v, T^h) ▷ (w, T^j) = (T^h w + (id − T^j) v, T^j)`;
//! the double rack `Q^[1,j]` is the union of the layers `h = 1` and `h = j`.

use std::fmt;

use thiserror::Error;

use crate::rack::FiniteRack;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("matrix is {0}x{1}, expected {2}x{2}")]
    MatrixShape(usize, usize, usize),
    #[error("matrix is singular over F_{0}")]
    Singular(u32),
    #[error("polynomial must be monic of degree ≥ 1")]
    NotMonic,
    #[error("polynomial is reducible over F_{0}")]
    Reducible(u32),
    #[error("polynomial X and X−1 are excluded")]
    DegeneratePolynomial,
    #[error("rack would have {0} elements, above the cap {1}")]
    TooLarge(u64, u64),
}

/// A square matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    t: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, t: usize, entries: Vec<u32>) -> Result<Self, AffineError> {
        if entries.len() != t * t {
            return Err(AffineError::MatrixShape(entries.len() / t.max(1), t, t));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(FpMatrix { p, t, entries })
    }

    pub fn identity(p: u32, t: usize) -> Self {
        let mut entries = vec![0; t * t];
        for i in 0..t {
            entries[i * t + i] = 1;
        }
        FpMatrix { p, t, entries }
    }

    pub fn zero(p: u32, t: usize) -> Self {
        FpMatrix { p, t, entries: vec![0; t * t] }
    }

    /// Companion matrix of a monic polynomial (coefficients ascending,
    /// leading 1 included).
    pub fn companion(p: u32, poly: &[u32]) -> Self {
        let t = poly.len() - 1;
        let mut m = FpMatrix::zero(p, t);
        for i in 1..t {
            m.entries[i * t + (i - 1)] = 1;
        }
        for i in 0..t {
            m.entries[i * t + (t - 1)] = (p - poly[i] % p) % p;
        }
        m
    }

    pub fn at(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.t + col]
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix { p: self.p, t: self.t, entries }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        FpMatrix { p: self.p, t: self.t, entries }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        let t = self.t;
        let mut entries = vec![0u32; t * t];
        for i in 0..t {
            for k in 0..t {
                let a = self.entries[i * t + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..t {
                    let v = entries[i * t + j] as u64
                        + a * other.entries[k * t + j] as u64;
                    entries[i * t + j] = (v % self.p as u64) as u32;
                }
            }
        }
        FpMatrix { p: self.p, t, entries }
    }

    pub fn pow(&self, e: u64) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p, self.t);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        (0..self.t)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.t {
                    acc += self.entries[i * self.t + j] as u64 * v[j] as u64;
                }
                (acc % self.p as u64) as u32
            })
            .collect()
    }

    /// Gaussian elimination rank.
    pub fn rank(&self) -> usize {
        let p = self.p as u64;
        let t = self.t;
        let mut m: Vec<Vec<u64>> = (0..t)
            .map(|i| (0..t).map(|j| self.entries[i * t + j] as u64).collect())
            .collect();
        let mut rank = 0;
        for col in 0..t {
            let pivot = (rank..t).find(|&r| m[r][col] != 0);
            let Some(pivot) = pivot else { continue };
            m.swap(rank, pivot);
            let inv = mod_inverse(m[rank][col], p);
            for j in 0..t {
                m[rank][j] = m[rank][j] * inv % p;
            }
            for r in 0..t {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    for j in 0..t {
                        m[r][j] = (m[r][j] + (p - f % p) * m[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.t
    }

    /// Multiplicative order; panics if singular.
    pub fn order(&self) -> u64 {
        assert!(self.is_invertible());
        let id = FpMatrix::identity(self.p, self.t);
        let mut acc = self.clone();
        let mut d = 1u64;
        while acc != id {
            acc = acc.mul(self);
            d += 1;
        }
        d
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.t {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.t {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "] mod {}", self.p)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a ≠ 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// The affine rack `(F_p^t, T)`.
#[derive(Clone, Debug)]
pub struct AffineRack {
    p: u32,
    t: usize,
    matrix: FpMatrix,
    order: u64,
}

impl AffineRack {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// `d = |T|`.
    pub fn twist_order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> usize {
        (self.p as u64).pow(self.t as u32) as usize
    }

    /// Vector of an element index (base-p digits, least significant first).
    pub fn vector(&self, index: usize) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.t);
        let mut rest = index as u64;
        for _ in 0..self.t {
            v.push((rest % self.p as u64) as u32);
            rest /= self.p as u64;
        }
        v
    }

    pub fn index(&self, v: &[u32]) -> usize {
        let mut idx = 0u64;
        for &c in v.iter().rev() {
            idx = idx * self.p as u64 + (c % self.p) as u64;
        }
        idx as usize
    }

    /// `x ▷ y = (1−T)x + Ty` on element indices.
    pub fn op(&self, x: usize, y: usize) -> usize {
        let xv = self.vector(x);
        let yv = self.vector(y);
        let one_minus_t = FpMatrix::identity(self.p, self.t).sub(&self.matrix);
        let a = one_minus_t.apply(&xv);
        let b = self.matrix.apply(&yv);
        let sum: Vec<u32> = a.iter().zip(&b).map(|(&u, &w)| (u + w) % self.p).collect();
        self.index(&sum)
    }

    pub fn rack(&self) -> FiniteRack {
        let labels = (0..self.size()).map(|i| format_vector(&self.vector(i))).collect();
        FiniteRack::from_op(self.size(), |x, y| self.op(x, y))
            .with_labels(labels)
            .expect("one label per element")
            .with_name(format!("affine:{}^{}:d{}", self.p, self.t, self.order))
    }

    /// The double rack `Q^[1,j]` as a table rack of size `2 p^t`: indices
    /// `0..q` are the layer `(·, T)`, indices `q..2q` the layer `(·, T^j)`.
    pub fn double_rack(&self, j: u64) -> FiniteRack {
        let q = self.size();
        let tj = self.matrix.pow(j % self.order);
        let t1 = self.matrix.clone();
        let id = FpMatrix::identity(self.p, self.t);
        let op = |x: usize, y: usize| -> usize {
            let (xv, xh) = (self.vector(x % q), if x < q { &t1 } else { &tj });
            let (yv, y_layer) = (self.vector(y % q), y >= q);
            let yt = if y_layer { &tj } else { &t1 };
            // (v, T^h) ▷ (w, T^k) = (T^h w + (id − T^k) v, T^k)
            let a = xh.apply(&yv);
            let b = id.sub(yt).apply(&xv);
            let sum: Vec<u32> =
                a.iter().zip(&b).map(|(&u, &w)| (u + w) % self.p).collect();
            let base = self.index(&sum);
            if y_layer {
                base + q
            } else {
                base
            }
        };
        let mut labels = Vec::with_capacity(2 * q);
        for i in 0..q {
            labels.push(format!("({}, T)", format_vector(&self.vector(i))));
        }
        for i in 0..q {
            labels.push(format!("({}, T^{j})", format_vector(&self.vector(i))));
        }
        FiniteRack::from_op(2 * q, op)
            .with_labels(labels)
            .expect("one label per element")
            .with_name(format!("affine-double:{}^{}:j{}", self.p, self.t, j))
    }
}

fn format_vector(v: &[u32]) -> String {
    if v.len() == 1 {
        return v[0].to_string();
    }
    let body: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", body.join(","))
}

const AFFINE_SIZE_CAP: u64 = 1 << 20;

/// Builds `(F_p^t, T)`; `T` must be invertible.
pub fn make_affine(p: u32, t: usize, matrix: FpMatrix) -> Result<AffineRack, AffineError> {
    if !crate::perm::is_prime(p as u64) {
        return Err(AffineError::NotPrime(p));
    }
    if matrix.dim() != t || matrix.modulus() != p {
        return Err(AffineError::MatrixShape(matrix.dim(), matrix.dim(), t));
    }
    let size = (p as u64).checked_pow(t as u32).unwrap_or(u64::MAX);
    if size > AFFINE_SIZE_CAP {
        return Err(AffineError::TooLarge(size, AFFINE_SIZE_CAP));
    }
    if !matrix.is_invertible() {
        return Err(AffineError::Singular(p));
    }
    let order = matrix.order();
    Ok(AffineRack { p, t, matrix, order })
}

/// The simple affine rack attached to a monic irreducible polynomial
/// (ascending coefficients with leading 1), excluding `X` and `X−1`.
pub fn companion_affine(p: u32, poly: &[u32]) -> Result<AffineRack, AffineError> {
    if poly.len() < 2 || poly[poly.len() - 1] % p != 1 {
        return Err(AffineError::NotMonic);
    }
    let t = poly.len() - 1;
    if t == 1 {
        let c = (p - poly[0] % p) % p; // root of X − c
        if c == 0 || c == 1 {
            return Err(AffineError::DegeneratePolynomial);
        }
    }
    if !is_irreducible(p, poly) {
        return Err(AffineError::Reducible(p));
    }
    make_affine(p, t, FpMatrix::companion(p, poly))
}

/// Trial division by all monic polynomials of degree up to `deg/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if poly[0] % p == 0 && deg > 1 {
        return false; // divisible by X
    }
    for d in 1..=deg / 2 {
        let mut divisor = vec![0u32; d + 1];
        divisor[d] = 1;
        loop {
            if poly_remainder_is_zero(p, poly, &divisor) {
                return false;
            }
            // next monic polynomial of degree d
            let mut carry = true;
            for c in divisor.iter_mut().take(d) {
                if carry {
                    *c += 1;
                    if *c == p {
                        *c = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
        }
    }
    true
}

fn poly_remainder_is_zero(p: u32, poly: &[u32], divisor: &[u32]) -> bool {
    let p64 = p as u64;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64 % p64).collect();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap() % p64;
        let top = rem.len() - 1;
        if lead != 0 {
            for i in 0..=d {
                let idx = top - d + i;
                rem[idx] = (rem[idx] + (p64 - lead * divisor[i] as u64 % p64) % p64) % p64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p64 == 0)
}

/// All monic irreducible polynomials of degree `t` over `F_p`, ascending
/// coefficient order, excluding `X` and `X−1`.
pub fn irreducible_polynomials(p: u32, t: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (p as u64).pow(t as u32);
    for k in 0..total {
        let mut poly = Vec::with_capacity(t + 1);
        let mut rest = k;
        for _ in 0..t {
            poly.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        poly.push(1);
        if t == 1 {
            let c = (p - poly[0]) % p;
            if c == 0 || c == 1 {
                continue;
            }
        }
        if is_irreducible(p, &poly) {
            out.push(poly);
        }
    }
    out
}

/// Every simple affine rack of the given size `q = p^t`, one per monic
/// irreducible polynomial.
pub fn simple_affine_racks(q: u64) -> Vec<AffineRack> {
    let Some((p, t)) = prime_power(q) else {
        return Vec::new();
    };
    irreducible_polynomials(p, t)
        .iter()
        .map(|poly| companion_affine(p, poly).expect("enumerated polynomials are valid"))
        .collect()
}

pub fn prime_power(q: u64) -> Option<(u32, usize)> {
    for p in 2..=q {
        if !crate::perm::is_prime(p) {
            continue;
        }
        if q % p == 0 {
            let mut t = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                t += 1;
            }
            return if rest == 1 { Some((p as u32, t)) } else { None };
        }
    }
    None
}

/// Outcome of the algebraic type-D test on `Q^[1,j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoubleRackCondition {
    /// Witness indices `(r, s)` into [`AffineRack::double_rack`], verified:
    /// `r ▷ (s ▷ (r ▷ s)) ≠ s` with `r` in the first and `s` in the second
    /// layer.
    Witness { r: usize, s: usize },
    /// `(id + T^{j+1})(id − T) = 0`: the canonical pairs all collapse.
    ConditionFails,
}

/// The test of the double-rack collapse criterion: if the matrix
/// `(id + T^{j+1})(id − T)` is nonzero, pick `v` outside its kernel and emit
/// the verified witness `r = (0, T)`, `s = (v, T^j)`.
pub fn type_d_condition(base: &AffineRack, j: u64) -> DoubleRackCondition {
    let id = FpMatrix::identity(base.p, base.t);
    let m = id
        .add(&base.matrix.pow((j + 1) % base.order))
        .mul(&id.sub(&base.matrix));
    if m.is_zero() {
        return DoubleRackCondition::ConditionFails;
    }
    // v = first basis vector with a nonzero image (a nonzero column of m)
    let col = (0..base.t)
        .find(|&c| (0..base.t).any(|r| m.at(r, c) != 0))
        .expect("nonzero matrix has a nonzero column");
    let mut v = vec![0u32; base.t];
    v[col] = 1;
    let q = base.size();
    let double = base.double_rack(j);
    let r = 0; // (0, T)
    let s = q + base.index(&v); // (v, T^j)
    let rs = double.apply(r, s);
    let srs = double.apply(s, rs);
    let lhs = double.apply(r, srs);
    assert_ne!(lhs, s, "algebraic condition must produce a verified witness");
    DoubleRackCondition::Witness { r, s }
}

/// The exceptional exponent of the simple-affine specialization: the unique
/// `j ∈ Z/d` with `id + T^{j+1} = 0`, when it exists.
pub fn s_condition_exception(base: &AffineRack) -> Option<u64> {
    let d = base.twist_order();
    if base.p == 2 {
        Some(d - 1)
    } else if d % 2 == 0 {
        Some(d / 2 - 1)
    } else {
        None
    }
}

/// Exhaustive layer-pair witness scan on a double rack of size `2q`:
/// first `(r, s)` with `r ▷ (s ▷ (r ▷ s)) ≠ s` across the two layers.
pub fn brute_force_layer_witness(double: &FiniteRack, q: usize) -> Option<(usize, usize)> {
    let pairs = (0..q)
        .flat_map(|r| (q..2 * q).map(move |s| (r, s)))
        .chain((q..2 * q).flat_map(|r| (0..q).map(move |s| (r, s))));
    for (r, s) in pairs {
        let rs = double.apply(r, s);
        let srs = double.apply(s, rs);
        if double.apply(r, srs) != s {
            return Some((r, s));
        }
    }
    None
}

/// The map `(v, T) ↦ ((j)_T v, T^j)` that identifies `(Q¹)^[j]` with `Q^j`
/// when `(j)_T = Σ_{i<j} T^i` is invertible; returns the geometric series
/// matrix for callers to test and use.
pub fn twist_geometric_series(base: &AffineRack, j: u64) -> FpMatrix {
    let mut acc = FpMatrix::zero(base.p, base.t);
    for i in 0..j {
        acc = acc.add(&base.matrix.pow(i % base.order));
    }
    acc
}
