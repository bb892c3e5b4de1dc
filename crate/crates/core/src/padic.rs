//! Morita's p-adic gamma function modulo `p^k`, truncated hypergeometric
//! series, the p-adic `G` function and the `₄G ≡ ₄F₃ + s(p)·p (mod p³)`
//! supercongruence check.
//!
//! `Γ_p` is tabulated on `0..p^k` from `Γ_p(0) = 1` and
//! `Γ_p(j+1) = −j·Γ_p(j)` (`p ∤ j`), `Γ_p(j+1) = −Γ_p(j)` (`p | j`).
//! Because `Γ_p` is continuous, `x ≡ y (mod p^k)` implies
//! `Γ_p(x) ≡ Γ_p(y) (mod p^k)`, so any p-integral rational is evaluated
//! through its representative in `[0, p^k)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{floor_frac, reduce_mod_pk, Rational, Residue};

/// Default cap on the number of entries in one gamma table.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 26;

static TABLE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_TABLE_CAP);

/// Sets the process-wide cap used by [`gamma_table`].
pub fn set_table_cap(cap: u64) {
    TABLE_CAP.store(cap, Ordering::Relaxed);
}

pub fn table_cap() -> u64 {
    TABLE_CAP.load(Ordering::Relaxed)
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!("{p} is not an odd prime")))
    }
}

/// `Γ_p(j) mod p^k` for every `j` in `[0, p^k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTable {
    p: u64,
    k: u32,
    modulus: u64,
    values: Vec<u64>,
}

impl GammaTable {
    /// Builds the table, refusing anything larger than `cap` entries.
    pub fn build(p: u64, k: u32, cap: u64) -> Result<Self> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidShape("precision k must be >= 1".into()));
        }
        let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::TableTooLarge { size, cap });
        }
        let modulus = size as u64;
        let mut values = Vec::with_capacity(modulus as usize);
        let mut current: u64 = 1;
        values.push(current);
        for j in 0..modulus - 1 {
            let factor = if j % p == 0 { 1 } else { j };
            // modulus <= cap < 2^32 in practice, but widen anyway
            let prod = (current as u128 * factor as u128 % modulus as u128) as u64;
            current = (modulus - prod) % modulus;
            values.push(current);
        }
        Ok(GammaTable {
            p,
            k,
            modulus,
            values,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `Γ_p(j) mod p^k`, for any `j` (reduced mod `p^k` first).
    pub fn get(&self, j: u64) -> u64 {
        self.values[(j % self.modulus) as usize]
    }

    pub fn residue(&self, j: u64) -> Residue {
        Residue::from_integer(self.get(j), self.p, self.k)
    }
}

type TableCell = Arc<OnceLock<Arc<GammaTable>>>;

fn cache() -> &'static Mutex<HashMap<(u64, u32), TableCell>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), TableCell>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared gamma table for `(p, k)`, built at most once per process.
pub fn gamma_table(p: u64, k: u32) -> Result<Arc<GammaTable>> {
    gamma_table_with_cap(p, k, table_cap())
}

/// As [`gamma_table`] with an explicit size cap.
pub fn gamma_table_with_cap(p: u64, k: u32, cap: u64) -> Result<Arc<GammaTable>> {
    check_prime(p)?;
    let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::TableTooLarge { size, cap });
    }
    let cell = {
        let mut map = cache().lock().expect("gamma cache poisoned");
        map.entry((p, k)).or_default().clone()
    };
    if let Some(t) = cell.get() {
        return Ok(t.clone());
    }
    let built = GammaTable::build(p, k, cap)?;
    Ok(cell.get_or_init(|| Arc::new(built)).clone())
}

/// `Γ_p(q) mod p^k` for a p-integral rational `q`.
pub fn gamma_rational(q: &Rational, p: u64, k: u32) -> Result<Residue> {
    let table = gamma_table(p, k)?;
    gamma_from_table(&table, q)
}

fn gamma_from_table(table: &GammaTable, q: &Rational) -> Result<Residue> {
    let rep = reduce_mod_pk(q, table.p, table.k)?;
    let j = rep.to_u64().expect("representative below a u64 modulus");
    Ok(table.residue(j))
}

/// `R(x)`: the representative of `x mod p` in `{1, …, p}`.
pub fn reflection_index(x: &Rational, p: u64) -> Result<u64> {
    let r = reduce_mod_pk(x, p, 1)?.to_u64().expect("small");
    Ok(if r == 0 { p } else { r })
}

/// Upper parameters, lower parameters, argument and truncation index of
/// `ᵣF_s[a; b | z]_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypSeriesSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub z: Rational,
    pub truncation: u64,
}

impl HypSeriesSpec {
    /// Rejects lower parameters that are zero or negative integers.
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, z: Rational, truncation: u64) -> Result<Self> {
        let spec = HypSeriesSpec {
            upper,
            lower,
            z,
            truncation,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        for b in &self.lower {
            if b.is_integer() && !(b.numer() > &BigInt::zero()) {
                return Err(Error::ZeroDenominatorTerm(b.to_string()));
            }
        }
        Ok(())
    }

    /// The `₄F₃(1/d, r/d, 1−r/d, 1−1/d; 1, 1, 1 | 1)` series truncated at `p − 1`.
    pub fn supercongruence_series(d: u64, r: u64, p: u64) -> Self {
        let d_q = Rational::from(d);
        let upper = vec![
            Rational::one() / &d_q,
            Rational::from(r) / &d_q,
            Rational::one() - Rational::from(r) / &d_q,
            Rational::one() - Rational::one() / &d_q,
        ];
        HypSeriesSpec {
            upper,
            lower: vec![Rational::one(); 3],
            z: Rational::one(),
            truncation: p - 1,
        }
    }
}

/// `Σ_{n=0}^{m} ∏(a_i)_n / ∏(b_j)_n · z^n / n!`, exactly.
pub fn trunc_hypergeometric(spec: &HypSeriesSpec) -> Result<Rational> {
    spec.validate()?;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for n in 0..spec.truncation {
        let shift = Rational::from(n);
        let mut ratio = &spec.z / Rational::from(n + 1);
        for a in &spec.upper {
            ratio *= a + &shift;
        }
        for b in &spec.lower {
            ratio /= b + &shift;
        }
        term *= ratio;
        sum += &term;
    }
    Ok(sum)
}

/// [`trunc_hypergeometric`] evaluated term by term in `Z/p^k Z`.
///
/// Every denominator factor must be a p-adic unit.
pub fn trunc_hypergeometric_mod(spec: &HypSeriesSpec, p: u64, k: u32) -> Result<Residue> {
    spec.validate()?;
    let red = |q: &Rational| reduce_mod_pk(q, p, k);
    let z = red(&spec.z)?;
    let mut num = Residue::one(p, k);
    let mut den = Residue::one(p, k);
    let mut sum = Residue::one(p, k);
    for n in 0..spec.truncation {
        let shift = Rational::from(n);
        num = num.try_mul(&z)?;
        for a in &spec.upper {
            num = num.try_mul(&red(&(a + &shift))?)?;
        }
        den = den.scale(n + 1);
        for b in &spec.lower {
            den = den.try_mul(&red(&(b + &shift))?)?;
        }
        let inv = den.inverse().map_err(|_| Error::NotPIntegral {
            value: format!("term {} denominator", n + 1),
            p,
        })?;
        sum = sum.try_add(&num.try_mul(&inv)?)?;
    }
    Ok(sum)
}

/// Entries `m_i/d_i` of `ₙ₊₁G(…)_p`, evaluated modulo `p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GParams {
    pub entries: Vec<Rational>,
    pub p: u64,
    pub k: u32,
}

impl GParams {
    pub fn new(entries: Vec<Rational>, p: u64, k: u32) -> Result<Self> {
        let params = GParams { entries, p, k };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        check_prime(self.p)?;
        if self.k == 0 {
            return Err(Error::InvalidShape("precision k must be >= 1".into()));
        }
        if self.entries.len() < 2 {
            return Err(Error::InvalidShape("G needs at least two entries".into()));
        }
        for e in &self.entries {
            if !(e > &Rational::zero() && e < &Rational::one()) {
                return Err(Error::InvalidShape(format!("entry {e} not in (0, 1)")));
            }
            if (e.denom() % BigInt::from(self.p)).is_zero() {
                return Err(Error::NotPIntegral {
                    value: e.to_string(),
                    p: self.p,
                });
            }
        }
        Ok(())
    }
}

/// The summands of `ₙ₊₁G` for `j = 0..p−2`, before the `−1/(p−1)` prefactor:
///
/// `((−1)^j Γ_p(j/(p−1)))^{n+1} ∏_i Γ_p(⟨a_i − j/(p−1)⟩)/Γ_p(a_i) · (−p)^{−⌊a_i − j/(p−1)⌋}`.
pub fn g_function_summands(params: &GParams) -> Result<Vec<Residue>> {
    params.validate()?;
    let (p, k) = (params.p, params.k);
    let table = gamma_table(p, k)?;
    let gamma = |x: &Rational| gamma_from_table(&table, x);
    let inv_gamma_entries: Vec<Residue> = params
        .entries
        .iter()
        .map(|a| gamma(a)?.inverse())
        .collect::<Result<_>>()?;
    let minus_p = Residue::from_integer(-BigInt::from(p), p, k);
    let power = params.entries.len() as u64;

    let mut out = Vec::with_capacity(p as usize - 1);
    for j in 0..p - 1 {
        let t = Rational::new(j, p - 1);
        let mut base = gamma(&t)?;
        if j % 2 == 1 {
            base = base.neg();
        }
        let mut term = base.pow(power);
        for (a, inv) in params.entries.iter().zip(&inv_gamma_entries) {
            let (floor, frac) = floor_frac(&(a - &t));
            let exponent = -floor.to_i64().expect("floor of a value in (-1, 1)");
            assert!(
                exponent == 0 || exponent == 1,
                "p-adic valuation exponent {exponent} outside {{0, 1}}"
            );
            term = term.try_mul(&gamma(&frac)?)?.try_mul(inv)?;
            if exponent == 1 {
                term = term.try_mul(&minus_p)?;
            }
        }
        out.push(term);
    }
    Ok(out)
}

/// `ₙ₊₁G(m_1/d_1, …)_p mod p^k`.
pub fn g_function(params: &GParams) -> Result<Residue> {
    let (p, k) = (params.p, params.k);
    let sum = g_function_summands(params)?
        .iter()
        .try_fold(Residue::zero(p, k), |acc, t| acc.try_add(t))?;
    let prefactor = Residue::from_integer(p - 1, p, k).inverse()?.neg();
    sum.try_mul(&prefactor)
}

fn check_dr(d: u64, r: u64) -> Result<()> {
    if r < 2 || r + 2 > d || d.gcd(&r) != 1 {
        return Err(Error::InvalidShape(format!(
            "need 2 <= r <= d-2 and gcd(r, d) = 1, got d = {d}, r = {r}"
        )));
    }
    Ok(())
}

/// `s(p) = Γ_p(1/d) Γ_p(r/d) Γ_p((d−r)/d) Γ_p((d−1)/d) mod p^k`.
pub fn s_p(d: u64, r: u64, p: u64, k: u32) -> Result<Residue> {
    check_dr(d, r)?;
    [1, r, d - r, d - 1]
        .iter()
        .map(|&num| gamma_rational(&Rational::new(num, d), p, k))
        .try_fold(Residue::one(p, k), |acc, g| acc.try_mul(&g?))
}

/// Whether `p ≡ ±1 (mod d)`, or `p ≡ ±r (mod d)` with `r² ≡ ±1 (mod d)`.
pub fn supercongruence_hypotheses(d: u64, r: u64, p: u64) -> bool {
    let pm = p % d;
    let plus_minus = |x: u64| {
        let x = x % d;
        pm == x || (pm + x) % d == 0
    };
    let r2 = (r * r) % d;
    plus_minus(1) || (plus_minus(r) && (r2 == 1 || r2 == d - 1))
}

/// Outcome of one supercongruence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperCongruenceReport {
    pub d: u64,
    pub r: u64,
    pub p: u64,
    /// `₄G(1/d, r/d, 1−r/d, 1−1/d)_p mod p³`.
    pub lhs: Residue,
    /// `₄F₃(…)_{p−1} + s(p)·p mod p³`.
    pub rhs: Residue,
    pub s_p: Residue,
    /// False when the check ran under an override of the congruence
    /// conditions on `p`.
    pub hypotheses_hold: bool,
    pub pass: bool,
}

const SUPERCONGRUENCE_PRECISION: u32 = 3;

/// Checks `₄G ≡ ₄F₃|_{p−1} + s(p)·p (mod p³)`, requiring the hypotheses on `p`.
pub fn verify_supercongruence(d: u64, r: u64, p: u64) -> Result<SuperCongruenceReport> {
    verify_supercongruence_with(d, r, p, false)
}

/// As [`verify_supercongruence`]; with `allow_override` the congruence
/// conditions on `p` are not enforced and the report records that.
pub fn verify_supercongruence_with(d: u64, r: u64, p: u64, allow_override: bool) -> Result<SuperCongruenceReport> {
    check_prime(p)?;
    check_dr(d, r)?;
    if d % p == 0 {
        return Err(Error::NotPIntegral {
            value: format!("1/{d}"),
            p,
        });
    }
    let hypotheses_hold = supercongruence_hypotheses(d, r, p);
    if !hypotheses_hold && !allow_override {
        return Err(Error::HypothesisViolated(format!(
            "p = {p} is not ±1 mod {d}, nor ±{r} mod {d} with {r}^2 ≡ ±1"
        )));
    }
    let k = SUPERCONGRUENCE_PRECISION;
    let d_q = Rational::from(d);
    let entries = vec![
        Rational::one() / &d_q,
        Rational::from(r) / &d_q,
        Rational::from(d - r) / &d_q,
        Rational::from(d - 1) / &d_q,
    ];
    let lhs = g_function(&GParams::new(entries, p, k)?)?;

    let series = trunc_hypergeometric(&HypSeriesSpec::supercongruence_series(d, r, p))?;
    let s = s_p(d, r, p, k)?;
    let rhs = reduce_mod_pk(&series, p, k)?.try_add(&s.scale(p))?;
    let pass = lhs == rhs;
    Ok(SuperCongruenceReport {
        d,
        r,
        p,
        lhs,
        rhs,
        s_p: s,
        hypotheses_hold,
        pass,
    })
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_odd_prime(p)).collect()
}
