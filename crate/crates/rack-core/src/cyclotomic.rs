//! Exact arithmetic in cyclotomic fields: integer coefficient vectors
//! reduced modulo the N-th cyclotomic polynomial. Scalar equality is
//! decidable, which the cocycle/braiding equivalence checks depend on.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::perm::{gcd, lcm};

/// An element of `Z[ζ_N]` in the power basis `1, ζ, …, ζ^{φ(N)−1}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<i64>,
}

/// Coefficients of `Φ_N`, ascending, cached process-wide.
fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // Φ_N = (x^N − 1) / ∏_{d | N, d < N} Φ_d
    let mut numerator = vec![0i64; n as usize + 1];
    numerator[0] = -1;
    numerator[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            numerator = poly_div_exact(&numerator, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, numerator.clone());
    numerator
}

/// Exact division of integer polynomials (ascending coefficients);
/// the divisor must be monic and divide evenly.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut quot = vec![0i64; rem.len().saturating_sub(dd)];
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c != 0 {
            quot[k - dd] = c;
            for i in 0..=dd {
                rem[k - dd + i] -= c * den[i];
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division must be exact");
    while quot.len() > 1 && *quot.last().unwrap() == 0 {
        quot.pop();
    }
    quot
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: vec![0] }
    }

    pub fn one() -> Self {
        Cyclotomic { order: 1, coeffs: vec![1] }
    }

    pub fn integer(k: i64) -> Self {
        Cyclotomic { order: 1, coeffs: vec![k] }
    }

    /// The root of unity `ζ_N^k`.
    pub fn root(order: u64, exponent: i64) -> Self {
        assert!(order >= 1);
        let k = exponent.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![0i64; order as usize];
        coeffs[k] = 1;
        Cyclotomic::reduce(order, coeffs)
    }

    fn reduce(order: u64, mut coeffs: Vec<i64>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for k in (deg..coeffs.len()).rev() {
            let c = coeffs[k];
            if c != 0 {
                coeffs[k] = 0;
                for i in 0..deg {
                    coeffs[k - deg + i] -= c * phi[i];
                }
            }
        }
        coeffs.truncate(deg.max(1));
        coeffs.resize(deg.max(1), 0);
        Cyclotomic { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Re-expresses the value in `Q(ζ_target)`; `order` must divide `target`.
    pub fn promote(&self, target: u64) -> Cyclotomic {
        assert_eq!(target % self.order, 0, "promotion target must be a multiple");
        if target == self.order {
            return self.clone();
        }
        let stride = (target / self.order) as usize;
        let mut coeffs = vec![0i64; self.coeffs.len() * stride + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * stride] = c;
        }
        Cyclotomic::reduce(target, coeffs)
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let target = lcm(self.order, other.order);
        let a = self.promote(target);
        let b = other.promote(target);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| x + y)
            .collect();
        Cyclotomic { order: target, coeffs }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let target = lcm(self.order, other.order);
        let a = self.promote(target);
        let b = other.promote(target);
        let mut coeffs = vec![0i64; a.coeffs.len() + b.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Cyclotomic::reduce(target, coeffs)
    }

    /// A canonical byte key for hashing/deduplication at a fixed ambient
    /// order. The value is promoted, so keys are comparable exactly when the
    /// ambient order is shared.
    pub fn dedup_key(&self, ambient: u64) -> Vec<i64> {
        self.promote(ambient).coeffs
    }

    pub fn phi_of_order(&self) -> u64 {
        euler_phi(self.order)
    }
}

/// Mathematical equality: both values are compared inside the compositum.
impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let target = lcm(self.order, other.order);
        self.promote(target).coeffs == other.promote(target).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if a != 1 {
                    write!(f, "{a}·")?;
                }
                write!(f, "z{}^{i}", self.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `gcd` re-export convenience for callers mixing orders.
pub fn common_order(orders: impl IntoIterator<Item = u64>) -> u64 {
    orders.into_iter().fold(1, lcm)
}

pub fn orders_coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}
