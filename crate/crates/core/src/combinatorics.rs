//! Generalized harmonic sums, rising factorials and binomial coefficients.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::exact::Rational;

/// Index of a generalized harmonic sum `H_n^(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicKey {
    pub order: u32,
    pub upper: u64,
}

impl HarmonicKey {
    pub fn new(order: u32, upper: u64) -> Self {
        HarmonicKey { order, upper }
    }
}

/// Prefix tables of `H_n^(i)` per order `i`, extended on demand.
///
/// Every stored entry is final once written; concurrent readers only ever
/// observe fully computed prefixes.
#[derive(Debug, Default)]
pub struct HarmonicTable {
    rows: RwLock<HashMap<u32, Vec<Rational>>>,
}

impl HarmonicTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: HarmonicKey) -> Rational {
        let n = key.upper as usize;
        {
            let rows = self.rows.read().expect("harmonic table poisoned");
            if let Some(row) = rows.get(&key.order) {
                if let Some(v) = row.get(n) {
                    return v.clone();
                }
            }
        }
        let mut rows = self.rows.write().expect("harmonic table poisoned");
        let row = rows.entry(key.order).or_insert_with(|| vec![Rational::zero()]);
        while row.len() <= n {
            let j = row.len() as u64;
            let next = row.last().expect("row starts with H_0") + inverse_power(j, key.order);
            row.push(next);
        }
        row[n].clone()
    }

    /// Largest `n` currently tabulated for order `i`.
    pub fn extent(&self, order: u32) -> Option<u64> {
        let rows = self.rows.read().expect("harmonic table poisoned");
        rows.get(&order).map(|r| r.len() as u64 - 1)
    }
}

fn inverse_power(j: u64, order: u32) -> Rational {
    Rational::new(1, num_traits::pow(BigInt::from(j), order as usize))
}

fn shared_table() -> &'static HarmonicTable {
    static TABLE: OnceLock<HarmonicTable> = OnceLock::new();
    TABLE.get_or_init(HarmonicTable::new)
}

/// `H_n^(i) = Σ_{j=1}^{n} 1/j^i`, with `H_0^(i) = 0`.
///
/// Backed by a process-wide memo table.
pub fn harmonic(order: u32, n: u64) -> Rational {
    shared_table().get(HarmonicKey::new(order, n))
}

/// `H_n^(i)` summed directly, bypassing the memo table.
pub fn harmonic_uncached(order: u32, n: u64) -> Rational {
    (1..=n).map(|j| inverse_power(j, order)).sum()
}

/// Rising factorial `(a)_n = a(a+1)…(a+n−1)`, `(a)_0 = 1`.
pub fn rising_factorial(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, j| acc * j)
}

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::ZERO;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for j in 1..=k {
        // acc = C(n-k+j, j) after this step, so the division is exact
        acc = acc * (n - k + j) / j;
    }
    acc
}

/// `C(n, k)` for `k = 0..=n`, built along the row.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigUint::one();
    row.push(acc.clone());
    for k in 1..=n {
        acc = acc * (n - k + 1) / k;
        row.push(acc.clone());
    }
    row
}

/// `C(n+k, k)` for `k = 0..=kmax`.
pub fn binomial_diagonal(n: u64, kmax: u64) -> Vec<BigUint> {
    let mut diag = Vec::with_capacity(kmax as usize + 1);
    let mut acc = BigUint::one();
    diag.push(acc.clone());
    for k in 1..=kmax {
        acc = acc * (n + k) / k;
        diag.push(acc.clone());
    }
    diag
}

/// `C(n, k)` as a rational.
pub fn binomial_q(n: u64, k: i64) -> Rational {
    Rational::from(binomial(n, k))
}
