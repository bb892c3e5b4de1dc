//! The binomial-coefficient / harmonic-sum identities, evaluated directly,
//! together with the closed-form partial fraction coefficients of the
//! rational functions they come from.
//!
//! Three independent routes reach the same number for every parameter set:
//!
//! * the direct sum ([`thm1_lhs`], [`thm2_lhs`]);
//! * the closed-form decomposition ([`coeffs_thm1_closed`],
//!   [`coeffs_thm2_closed`]) collapsed by `x·f(x) → A + ΣC_k + ΣD_k`;
//! * the Laurent oracle [`crate::ratfun::laurent_pfd`] run on the factored
//!   function.
//!
//! [`limit_identity_check`] and [`three_way_check`] record every route in an
//! [`IdentityReport`] so a failure points at the layer that broke.

use std::fmt;

use serde::Serialize;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::combinatorics::{binomial_diagonal, binomial_q, binomial_row, harmonic};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ratfun::{self, check_thm1_shape, check_thm2_shape, Pfd, QuadTerm, SimpleTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    Chu,
    Thm1,
    Thm2,
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityKind::Chu => "chu",
            IdentityKind::Thm1 => "thm1",
            IdentityKind::Thm2 => "thm2",
        })
    }
}

/// Parameters of one identity instance. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Params {
    Chu { n: u64 },
    Thm1 { m: u64, n: u64 },
    Thm2 { l: u64, m: u64, n: u64, c1: Rational, c2: Rational },
}

impl Params {
    pub fn kind(&self) -> IdentityKind {
        match self {
            Params::Chu { .. } => IdentityKind::Chu,
            Params::Thm1 { .. } => IdentityKind::Thm1,
            Params::Thm2 { .. } => IdentityKind::Thm2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Params::Chu { n } if n < 1 => Err(Error::InvalidShape("need n >= 1".into())),
            Params::Chu { .. } => Ok(()),
            Params::Thm1 { m, n } => check_thm1_shape(m, n),
            Params::Thm2 { l, m, n, .. } => check_thm2_shape(l, m, n),
        }
    }

    /// The value the identity asserts: `0`, `(−1)^{m+n}` or `0`.
    pub fn expected(&self) -> Rational {
        match self {
            Params::Chu { .. } | Params::Thm2 { .. } => Rational::zero(),
            Params::Thm1 { m, n } => Rational::sign_power((m + n) as i64),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Chu { n } => write!(f, "n={n}"),
            Params::Thm1 { m, n } => write!(f, "m={m} n={n}"),
            Params::Thm2 { l, m, n, c1, c2 } => write!(f, "l={l} m={m} n={n} c1={c1} c2={c2}"),
        }
    }
}

/// Which evaluation route produced a recorded value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Direct,
    ClosedLimit,
    OracleLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerValue {
    pub layer: Layer,
    pub value: Rational,
}

/// Outcome of checking one identity instance.
///
/// `pass` holds exactly when `lhs == expected`, every recorded layer value
/// equals `expected`, and no coefficient mismatch was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub params: Params,
    pub lhs: Rational,
    pub expected: Rational,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub layers: Vec<LayerValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

impl IdentityReport {
    fn new(params: Params, lhs: Rational, layers: Vec<LayerValue>, mismatches: Vec<String>) -> Self {
        let expected = params.expected();
        let pass = lhs == expected && layers.iter().all(|l| l.value == expected) && mismatches.is_empty();
        IdentityReport {
            kind: params.kind(),
            params,
            lhs,
            expected,
            pass,
            layers,
            mismatches,
        }
    }
}

/// `C(m+k,k) C(m,k) C(n+k,k) C(n,k)`.
fn binomial_product(m: u64, n: u64, k: u64) -> Rational {
    binomial_q(m + k, k as i64) * binomial_q(m, k as i64) * binomial_q(n + k, k as i64) * binomial_q(n, k as i64)
}

/// `1 + k(H_{m+k} + H_{m−k} + H_{n+k} + H_{n−k} − 4H_k)` for `k <= n <= m`.
fn harmonic_bracket(m: u64, n: u64, k: u64) -> Rational {
    let h = |j| harmonic(1, j);
    let inner = h(m + k) + h(m - k) + h(n + k) + h(n - k) - h(k) * Rational::from(4);
    Rational::one() + Rational::from(k) * inner
}

/// `(−1)^{k−n} C(m+k,k) C(m,k) C(n+k,k) / C(k−1,n)` for `n < k <= m`.
fn tail_weight(m: u64, n: u64, k: u64) -> Rational {
    let sign = Rational::sign_power((k - n) as i64);
    sign * binomial_q(m + k, k as i64) * binomial_q(m, k as i64) * binomial_q(n + k, k as i64)
        / binomial_q(k - 1, n as i64)
}

/// `H_j^(1)` and `H_j^(2)` for `j <= top` as integer numerators over the
/// common denominators `L` and `L^2`, where `L = lcm(1, ..., top)`.
struct ScaledHarmonics {
    lcm: BigInt,
    first: Vec<BigInt>,
    second: Vec<BigInt>,
}

impl ScaledHarmonics {
    fn new(top: u64, with_second: bool) -> Self {
        let lcm = (1..=top).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(j)));
        let scaled = |order: u32, den: &BigInt| -> Vec<BigInt> {
            (0..=top)
                .map(|j| {
                    let h = harmonic(order, j);
                    h.numer() * (den / h.denom())
                })
                .collect()
        };
        let first = scaled(1, &lcm);
        let second = if with_second { scaled(2, &(&lcm * &lcm)) } else { Vec::new() };
        ScaledHarmonics { lcm, first, second }
    }

    fn h1(&self, j: u64) -> &BigInt {
        &self.first[j as usize]
    }

    fn h2(&self, j: u64) -> &BigInt {
        &self.second[j as usize]
    }

    /// `L · (1 + k(H_{m+k} + H_{m−k} + H_{n+k} + H_{n−k} − 4H_k))`.
    fn bracket(&self, m: u64, n: u64, k: u64) -> BigInt {
        let inner = self.h1(m + k) + self.h1(m - k) + self.h1(n + k) + self.h1(n - k) - self.h1(k) * 4u32;
        &self.lcm + inner * k
    }
}

/// `C(m+k,k) C(m,k) C(n+k,k) C(n,k)` for `k = 0..=n` as integers.
fn binomial_products(m: u64, n: u64) -> Vec<BigInt> {
    let (dm, rm) = (binomial_diagonal(m, n), binomial_row(m));
    let (dn, rn) = (binomial_diagonal(n, n), binomial_row(n));
    (0..=n as usize)
        .map(|k| BigInt::from(&dm[k] * &rm[k] * &dn[k] * &rn[k]))
        .collect()
}

/// `Σ_{k=1}^{n} C(n+k,k)^2 C(n,k)^2 [1 + 2kH_{n+k} + 2kH_{n−k} − 4kH_k]`.
pub fn chu_lhs(n: u64) -> Result<Rational> {
    Params::Chu { n }.validate()?;
    let h = ScaledHarmonics::new(2 * n, false);
    let (diag, row) = (binomial_diagonal(n, n), binomial_row(n));
    let mut acc = BigInt::ZERO;
    for k in 1..=n {
        let b = BigInt::from(&diag[k as usize] * &row[k as usize]);
        let bracket = &h.lcm + (h.h1(n + k) + h.h1(n - k)) * (2 * k) - h.h1(k) * (4 * k);
        acc += &b * &b * bracket;
    }
    Ok(Rational::new(acc, h.lcm))
}

/// Left side of the two-parameter identity; equals `(−1)^{m+n}`.
pub fn thm1_lhs(m: u64, n: u64) -> Result<Rational> {
    check_thm1_shape(m, n)?;
    let h = ScaledHarmonics::new(m + n, false);
    let mut head = BigInt::ZERO;
    for (k, prod) in (0..=n).zip(binomial_products(m, n)) {
        head += prod * h.bracket(m, n, k);
    }
    let mut acc = Rational::new(head, h.lcm);
    for k in n + 1..=m {
        acc += tail_weight(m, n, k);
    }
    Ok(acc)
}

/// `c1 (H_{k+n}^{(r)} − H_{k+l−n−1}^{(r)}) + c2 (H_{k+m}^{(r)} − H_{k+l−m−1}^{(r)})`.
///
/// Equal to `c1 Σ_{s=l−n}^{n} (k+s)^{−r} + c2 Σ_{s=l−m}^{m} (k+s)^{−r}`.
#[allow(clippy::too_many_arguments)]
pub fn u_weight(r: u32, k: u64, l: u64, m: u64, n: u64, c1: &Rational, c2: &Rational) -> Result<Rational> {
    check_thm2_shape(l, m, n)?;
    Ok(u_weight_unchecked(r, k, l, m, n, c1, c2))
}

#[allow(clippy::too_many_arguments)]
fn u_weight_unchecked(r: u32, k: u64, l: u64, m: u64, n: u64, c1: &Rational, c2: &Rational) -> Rational {
    let mut acc = Rational::zero();
    if !c1.is_zero() {
        acc += c1 * (harmonic(r, k + n) - harmonic(r, k + l - n - 1));
    }
    if !c2.is_zero() {
        acc += c2 * (harmonic(r, k + m) - harmonic(r, k + l - m - 1));
    }
    acc
}

/// Left side of the weighted three-parameter identity; equals `0`.
pub fn thm2_lhs(l: u64, m: u64, n: u64, c1: &Rational, c2: &Rational) -> Result<Rational> {
    check_thm2_shape(l, m, n)?;
    let h = ScaledHarmonics::new(m + n, true);
    let q = c1.denom().lcm(c2.denom());
    let p1 = c1.numer() * (&q / c1.denom());
    let p2 = c2.numer() * (&q / c2.denom());
    // u_weight(r, k) scaled by q L^r
    let u = |order: u32, k: u64| {
        let hr = |j| if order == 1 { h.h1(j) } else { h.h2(j) };
        &p1 * (hr(k + n) - hr(k + l - n - 1)) + &p2 * (hr(k + m) - hr(k + l - m - 1))
    };
    let mut head = BigInt::ZERO;
    for (k, prod) in (0..=n).zip(binomial_products(m, n)) {
        let inner = h.bracket(m, n, k) * u(1, k) - u(2, k) * k;
        head += prod * inner;
    }
    let mut acc = Rational::new(head, &h.lcm * &h.lcm * q);
    for k in n + 1..=m {
        acc += tail_weight(m, n, k) * u_weight_unchecked(1, k, l, m, n, c1, c2);
    }
    Ok(acc)
}

/// Closed-form decomposition of `x (1−x)_n (1−x)_m / ((x)_{n+1} (x)_{m+1})`.
pub fn coeffs_thm1_closed(m: u64, n: u64) -> Result<Pfd> {
    check_thm1_shape(m, n)?;
    let quad = (1..=n)
        .map(|k| {
            let prod = binomial_product(m, n, k);
            QuadTerm {
                k,
                b: -Rational::from(k) * &prod,
                c: prod * harmonic_bracket(m, n, k),
            }
        })
        .collect();
    let simple = (n + 1..=m)
        .map(|k| SimpleTerm {
            k,
            d: tail_weight(m, n, k),
        })
        .collect();
    Ok(Pfd {
        n,
        m,
        a: Rational::one(),
        quad,
        simple,
    })
}

/// Closed-form decomposition of the weighted function built by
/// [`crate::ratfun::build_f_thm2`].
pub fn coeffs_thm2_closed(l: u64, m: u64, n: u64, c1: &Rational, c2: &Rational) -> Result<Pfd> {
    check_thm2_shape(l, m, n)?;
    let u = |r, k| u_weight_unchecked(r, k, l, m, n, c1, c2);
    let quad = (1..=n)
        .map(|k| {
            let prod = binomial_product(m, n, k);
            let u1 = u(1, k);
            let kq = Rational::from(k);
            QuadTerm {
                k,
                b: -&kq * &prod * &u1,
                c: prod * (-&kq * u(2, k) + harmonic_bracket(m, n, k) * u1),
            }
        })
        .collect();
    let simple = (n + 1..=m)
        .map(|k| SimpleTerm {
            k,
            d: tail_weight(m, n, k) * u(1, k),
        })
        .collect();
    Ok(Pfd {
        n,
        m,
        a: u(1, 0),
        quad,
        simple,
    })
}

/// Evaluates the direct left side for `params`.
pub fn direct_lhs(params: &Params) -> Result<Rational> {
    match params {
        Params::Chu { n } => chu_lhs(*n),
        Params::Thm1 { m, n } => thm1_lhs(*m, *n),
        Params::Thm2 { l, m, n, c1, c2 } => thm2_lhs(*l, *m, *n, c1, c2),
    }
}

/// Direct evaluation only.
pub fn check_identity(params: &Params) -> Result<IdentityReport> {
    let lhs = direct_lhs(params)?;
    Ok(IdentityReport::new(params.clone(), lhs, Vec::new(), Vec::new()))
}

fn closed_pfd(params: &Params) -> Result<Pfd> {
    match params {
        Params::Chu { n } => coeffs_thm1_closed(*n, *n),
        Params::Thm1 { m, n } => coeffs_thm1_closed(*m, *n),
        Params::Thm2 { l, m, n, c1, c2 } => coeffs_thm2_closed(*l, *m, *n, c1, c2),
    }
}

fn oracle_pfd(params: &Params) -> Result<Pfd> {
    let f = match params {
        Params::Chu { n } => ratfun::build_f_thm1(*n, *n)?,
        Params::Thm1 { m, n } => ratfun::build_f_thm1(*m, *n)?,
        Params::Thm2 { l, m, n, c1, c2 } => ratfun::build_f_thm2(*l, *m, *n, c1, c2)?,
    };
    ratfun::laurent_pfd(&f)
}

/// `lim x·f(x)` of a decomposition, shifted for the Chu case, which is the
/// `m = n` instance with its `k = 0` term (equal to 1) removed.
fn limit_for(params: &Params, pfd: &Pfd) -> Rational {
    let limit = pfd.limit_at_infinity();
    match params {
        Params::Chu { .. } => limit - Rational::one(),
        _ => limit,
    }
}

/// The `x → ∞` route: `A + ΣC_k + ΣD_k` from the closed forms, compared
/// with the asserted value and with the direct sum.
///
/// The report's `lhs` is the closed-form limit; the direct sum is recorded
/// as a layer.
pub fn limit_identity_check(params: &Params) -> Result<IdentityReport> {
    params.validate()?;
    let closed = limit_for(params, &closed_pfd(params)?);
    let direct = direct_lhs(params)?;
    Ok(IdentityReport::new(
        params.clone(),
        closed,
        vec![LayerValue {
            layer: Layer::Direct,
            value: direct,
        }],
        Vec::new(),
    ))
}

/// Direct sum, closed-form limit and Laurent-oracle limit, plus a
/// coefficient-by-coefficient comparison of the two decompositions.
///
/// The report's `lhs` is the direct sum.
pub fn three_way_check(params: &Params) -> Result<IdentityReport> {
    params.validate()?;
    let direct = direct_lhs(params)?;
    let closed = closed_pfd(params)?;
    let oracle = oracle_pfd(params)?;
    let mismatches = closed.differences(&oracle);
    let layers = vec![
        LayerValue {
            layer: Layer::ClosedLimit,
            value: limit_for(params, &closed),
        },
        LayerValue {
            layer: Layer::OracleLimit,
            value: limit_for(params, &oracle),
        },
    ];
    Ok(IdentityReport::new(params.clone(), direct, layers, mismatches))
}
