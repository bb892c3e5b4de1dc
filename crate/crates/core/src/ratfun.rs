//! Dense polynomials over `Q`, rational functions with explicit integer
//! poles, and a Laurent-expansion partial fraction decomposer.
//!
//! [`laurent_pfd`] works from the factored form alone: at each pole `a` it
//! shifts the numerator to `x = t + a`, divides by the remaining denominator
//! factors as a truncated power series in `t`, and reads the principal part
//! off the leading coefficients. It never consults any closed formula for the
//! coefficients, which is what makes it usable as an oracle for
//! [`crate::identities`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Polynomial with rational coefficients, ascending by degree. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn x() -> Self {
        Poly::linear(Rational::zero(), Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `q(x) = p(x + t)`, by Horner's scheme on `(x + t)`.
    pub fn shift(&self, t: &Rational) -> Poly {
        let step = Poly::linear(t.clone(), Rational::one());
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &step) + &Poly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i as u64))
                .collect(),
        )
    }

    /// Keeps the terms of degree `< order`.
    pub fn truncate(&self, order: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// Product truncated to degree `< order`.
    pub fn mul_truncated(&self, other: &Poly, order: usize) -> Poly {
        let len = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(order);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `∏ (x + r)` over the given roots-with-sign `r`.
    pub fn from_linear_factors<'a>(shifts: impl IntoIterator<Item = &'a Rational>) -> Poly {
        shifts.into_iter().fold(Poly::constant(Rational::one()), |acc, r| {
            &acc * &Poly::linear(r.clone(), Rational::one())
        })
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        self.mul_truncated(rhs, usize::MAX)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A pole of a [`FactoredRatFun`] at the non-positive integer `location`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pole {
    pub location: i64,
    pub multiplicity: u32,
}

impl Pole {
    pub fn new(location: i64, multiplicity: u32) -> Self {
        Pole {
            location,
            multiplicity,
        }
    }
}

/// `numerator(x) / ∏ (x − location)^multiplicity`.
///
/// Multiplicities are structural upper bounds: the numerator may vanish at a
/// pole, in which case leading Laurent coefficients come out as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRatFun {
    numerator: Poly,
    poles: Vec<Pole>,
}

impl FactoredRatFun {
    pub fn new(numerator: Poly, poles: Vec<Pole>) -> Result<Self> {
        for (i, pole) in poles.iter().enumerate() {
            if pole.location > 0 {
                return Err(Error::InvalidShape(format!(
                    "pole location {} is positive",
                    pole.location
                )));
            }
            if !(1..=2).contains(&pole.multiplicity) {
                return Err(Error::InvalidShape(format!(
                    "pole multiplicity {} not in {{1, 2}}",
                    pole.multiplicity
                )));
            }
            if poles[..i].iter().any(|q| q.location == pole.location) {
                return Err(Error::InvalidShape(format!(
                    "duplicate pole at {}",
                    pole.location
                )));
            }
        }
        Ok(FactoredRatFun { numerator, poles })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn denominator_degree(&self) -> usize {
        self.poles.iter().map(|p| p.multiplicity as usize).sum()
    }

    /// Expanded denominator polynomial.
    pub fn denominator(&self) -> Poly {
        let shifts: Vec<Rational> = self
            .poles
            .iter()
            .flat_map(|p| std::iter::repeat_n(Rational::from(-p.location), p.multiplicity as usize))
            .collect();
        Poly::from_linear_factors(&shifts)
    }

    pub fn is_proper(&self) -> bool {
        match self.numerator.degree() {
            None => true,
            Some(d) => d < self.denominator_degree(),
        }
    }

    /// Exact value at a non-pole `x`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let mut den = Rational::one();
        for pole in &self.poles {
            let factor = x - Rational::from(pole.location);
            if factor.is_zero() {
                return Err(Error::PoleEvaluation(pole.location));
            }
            den *= factor.pow(pole.multiplicity as i32);
        }
        Ok(self.numerator.eval(x) / den)
    }

    /// Principal part at the pole `pole`: coefficients of
    /// `(x − a)^{−μ}, …, (x − a)^{−1}` for multiplicity `μ`.
    pub fn principal_part(&self, pole: &Pole) -> Vec<Rational> {
        let order = pole.multiplicity as usize;
        let a = Rational::from(pole.location);
        let num = self.numerator.shift(&a).truncate(order);
        let one = Poly::constant(Rational::one());
        let den = self
            .poles
            .iter()
            .filter(|q| q.location != pole.location)
            .fold(one, |acc, q| {
                let factor = Poly::linear(&a - Rational::from(q.location), Rational::one());
                (0..q.multiplicity).fold(acc, |acc, _| acc.mul_truncated(&factor, order))
            });
        series_divide(&num, &den, order)
    }
}

/// First `order` coefficients of `num / den` as a power series; `den(0) != 0`.
fn series_divide(num: &Poly, den: &Poly, order: usize) -> Vec<Rational> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero(), "series division by a series with zero constant term");
    let mut out: Vec<Rational> = Vec::with_capacity(order);
    for j in 0..order {
        let mut acc = num.coeff(j);
        for i in 1..=j {
            acc -= den.coeff(i) * &out[j - i];
        }
        out.push(acc / &d0);
    }
    out
}

/// `∏_{s ∈ range, s ≠ skip} (s − x)`.
fn shifted_product(range: std::ops::RangeInclusive<u64>, skip: Option<u64>) -> Poly {
    range
        .filter(|s| Some(*s) != skip)
        .fold(Poly::constant(Rational::one()), |acc, s| {
            &acc * &Poly::linear(Rational::from(s), -Rational::one())
        })
}

/// The common pole set `{0}, {−1..−n} doubled, {−(n+1)..−m}`.
fn standard_poles(m: u64, n: u64) -> Vec<Pole> {
    let mut poles = vec![Pole::new(0, 1)];
    poles.extend((1..=n).map(|k| Pole::new(-(k as i64), 2)));
    poles.extend((n + 1..=m).map(|k| Pole::new(-(k as i64), 1)));
    poles
}

pub(crate) fn check_thm1_shape(m: u64, n: u64) -> Result<()> {
    if n < 1 || m < n {
        return Err(Error::InvalidShape(format!(
            "need m >= n >= 1, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

pub(crate) fn check_thm2_shape(l: u64, m: u64, n: u64) -> Result<()> {
    if n < 1 || m < n || l <= m || 2 * n < l {
        return Err(Error::InvalidShape(format!(
            "need l > m >= n >= l/2 and n >= 1, got l = {l}, m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// `x (1−x)_n (1−x)_m / ((x)_{n+1} (x)_{m+1})` with the common factor `x`
/// cancelled: numerator `∏_{s≤n}(s−x) ∏_{s≤m}(s−x)`, simple pole at 0,
/// double poles at `−1..−n`, simple poles at `−(n+1)..−m`.
pub fn build_f_thm1(m: u64, n: u64) -> Result<FactoredRatFun> {
    check_thm1_shape(m, n)?;
    let numerator = &shifted_product(1..=n, None) * &shifted_product(1..=m, None);
    FactoredRatFun::new(numerator, standard_poles(m, n))
}

/// The thm1 function times
/// `c1 Σ_{s=l−n}^{n} 1/(s−x) + c2 Σ_{s=l−m}^{m} 1/(s−x)`.
///
/// Each `1/(s−x)` is cancelled against the factor `(s−x)` of `(1−x)_n`
/// (for the `c1` sum) or `(1−x)_m` (for the `c2` sum) before anything is
/// expanded, so the pole set is exactly the thm1 one.
pub fn build_f_thm2(l: u64, m: u64, n: u64, c1: &Rational, c2: &Rational) -> Result<FactoredRatFun> {
    check_thm2_shape(l, m, n)?;
    let full_n = shifted_product(1..=n, None);
    let full_m = shifted_product(1..=m, None);
    let mut numerator = Poly::zero();
    if !c1.is_zero() {
        let reduced = (l - n..=n).fold(Poly::zero(), |acc, s| &acc + &shifted_product(1..=n, Some(s)));
        numerator = &numerator + &(&reduced * &full_m).scale(c1);
    }
    if !c2.is_zero() {
        let reduced = (l - m..=m).fold(Poly::zero(), |acc, s| &acc + &shifted_product(1..=m, Some(s)));
        numerator = &numerator + &(&full_n * &reduced).scale(c2);
    }
    FactoredRatFun::new(numerator, standard_poles(m, n))
}

/// Exact evaluation; errors at a pole.
pub fn eval_exact(f: &FactoredRatFun, x: &Rational) -> Result<Rational> {
    f.eval(x)
}

/// Double-pole coefficients at `x = −k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadTerm {
    pub k: u64,
    /// Coefficient of `1/(x+k)^2`.
    pub b: Rational,
    /// Coefficient of `1/(x+k)`.
    pub c: Rational,
}

/// Simple-pole coefficient at `x = −k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleTerm {
    pub k: u64,
    pub d: Rational,
}

/// `A/x + Σ_{k=1}^{n} [B_k/(x+k)^2 + C_k/(x+k)] + Σ_{k=n+1}^{m} D_k/(x+k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pfd {
    pub n: u64,
    pub m: u64,
    pub a: Rational,
    pub quad: Vec<QuadTerm>,
    pub simple: Vec<SimpleTerm>,
}

impl Pfd {
    /// Recombines the decomposition at a non-pole `x`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() {
            return Err(Error::PoleEvaluation(0));
        }
        let mut acc = &self.a / x;
        for t in &self.quad {
            let shifted = x + Rational::from(t.k);
            if shifted.is_zero() {
                return Err(Error::PoleEvaluation(-(t.k as i64)));
            }
            acc += &t.b / (&shifted * &shifted) + &t.c / &shifted;
        }
        for t in &self.simple {
            let shifted = x + Rational::from(t.k);
            if shifted.is_zero() {
                return Err(Error::PoleEvaluation(-(t.k as i64)));
            }
            acc += &t.d / shifted;
        }
        Ok(acc)
    }

    /// `lim_{x→∞} x·(decomposition) = A + Σ C_k + Σ D_k`.
    pub fn limit_at_infinity(&self) -> Rational {
        let mut acc = self.a.clone();
        for t in &self.quad {
            acc += &t.c;
        }
        for t in &self.simple {
            acc += &t.d;
        }
        acc
    }

    /// Pairs up differing coefficients, labelled `A`, `B_k`, `C_k`, `D_k`.
    pub fn differences(&self, other: &Pfd) -> Vec<String> {
        let mut out = Vec::new();
        if (self.n, self.m) != (other.n, other.m) {
            out.push(format!("shape ({}, {}) vs ({}, {})", self.n, self.m, other.n, other.m));
            return out;
        }
        if self.a != other.a {
            out.push(format!("A: {} vs {}", self.a, other.a));
        }
        for (s, o) in self.quad.iter().zip(&other.quad) {
            if s.b != o.b {
                out.push(format!("B_{}: {} vs {}", s.k, s.b, o.b));
            }
            if s.c != o.c {
                out.push(format!("C_{}: {} vs {}", s.k, s.c, o.c));
            }
        }
        for (s, o) in self.simple.iter().zip(&other.simple) {
            if s.d != o.d {
                out.push(format!("D_{}: {} vs {}", s.k, s.d, o.d));
            }
        }
        out
    }
}

/// Partial fraction decomposition by Laurent expansion at every pole.
///
/// The pole set must be `{0 (simple), −1..−n (double), −(n+1)..−m (simple)}`
/// in any order, which is what [`build_f_thm1`] and [`build_f_thm2`]
/// produce.
pub fn laurent_pfd(f: &FactoredRatFun) -> Result<Pfd> {
    if !f.is_proper() {
        return Err(Error::ImproperFunction {
            numerator: f.numerator().degree().unwrap_or(0),
            denominator: f.denominator_degree(),
        });
    }
    let mut poles = f.poles().to_vec();
    poles.sort_by_key(|p| -p.location);
    let (first, rest) = poles.split_first().ok_or(Error::UnsupportedPoles)?;
    if *first != Pole::new(0, 1) {
        return Err(Error::UnsupportedPoles);
    }
    let n = rest.iter().take_while(|p| p.multiplicity == 2).count();
    for (i, pole) in rest.iter().enumerate() {
        let expected = Pole::new(-(i as i64 + 1), if i < n { 2 } else { 1 });
        if *pole != expected {
            return Err(Error::UnsupportedPoles);
        }
    }
    if n == 0 {
        return Err(Error::UnsupportedPoles);
    }

    let a = f.principal_part(first).remove(0);
    let mut quad = Vec::with_capacity(n);
    let mut simple = Vec::new();
    for pole in rest {
        let k = (-pole.location) as u64;
        let mut part = f.principal_part(pole).into_iter();
        if pole.multiplicity == 2 {
            let b = part.next().expect("order-2 principal part");
            let c = part.next().expect("order-2 principal part");
            quad.push(QuadTerm { k, b, c });
        } else {
            let d = part.next().expect("order-1 principal part");
            simple.push(SimpleTerm { k, d });
        }
    }
    Ok(Pfd {
        n: n as u64,
        m: rest.len() as u64,
        a,
        quad,
        simple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rising_factorial;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn poly(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// `x (1−x)_n (1−x)_m / ((x)_{n+1} (x)_{m+1})` straight from rising
    /// factorials.
    fn direct_f1(m: u64, n: u64, x: &Rational) -> Rational {
        let one_minus = Rational::one() - x;
        x * rising_factorial(&one_minus, n) * rising_factorial(&one_minus, m)
            / (rising_factorial(x, n + 1) * rising_factorial(x, m + 1))
    }

    fn direct_f2(l: u64, m: u64, n: u64, c1: &Rational, c2: &Rational, x: &Rational) -> Rational {
        let window = |lo: u64, hi: u64| -> Rational {
            (lo..=hi).map(|s| (Rational::from(s) - x).recip()).sum()
        };
        direct_f1(m, n, x) * (c1 * window(l - n, n) + c2 * window(l - m, m))
    }

    #[test]
    fn poly_examples() {
        let p = &poly(&[1, -1]) * &poly(&[2, -1]);
        assert_eq!(p, poly(&[2, -3, 1]));
        assert_eq!(poly(&[0, 0, 1]).shift(&q("-1")), poly(&[1, -2, 1]));
        assert_eq!(p.derivative(), poly(&[-3, 2]));
        assert_eq!(Poly::new(vec![Rational::zero(); 3]), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!((&p - &p), Poly::zero());
    }

    #[test]
    fn shift_agrees_with_evaluation() {
        let p = poly(&[3, -1, 4, 1, -5, 9]);
        for t in ["-7/3", "0", "5/2", "11"] {
            let t = q(t);
            let s = p.shift(&t);
            for x in ["-2", "1/3", "4"] {
                let x = q(x);
                assert_eq!(s.eval(&x), p.eval(&(&x + &t)));
            }
        }
    }

    #[test]
    fn thm1_builder_examples() {
        let f = build_f_thm1(2, 1).unwrap();
        assert_eq!(f.eval(&q("1/2")).unwrap(), q("2/15"));
        assert_eq!(f.eval(&q("1")).unwrap(), Rational::zero());
        let g = build_f_thm1(1, 1).unwrap();
        assert_eq!(g.eval(&q("2")).unwrap(), q("1/18"));
        assert!(matches!(build_f_thm1(1, 2), Err(Error::InvalidShape(_))));
        assert!(matches!(build_f_thm1(3, 0), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn thm2_builder_examples() {
        let one = Rational::one();
        let zero = Rational::zero();
        let f = build_f_thm2(2, 1, 1, &one, &zero).unwrap();
        assert_eq!(f.eval(&q("1/2")).unwrap(), q("4/9"));
        let z = build_f_thm2(2, 1, 1, &zero, &zero).unwrap();
        assert_eq!(z.eval(&q("3/7")).unwrap(), Rational::zero());
        let g = build_f_thm2(3, 2, 2, &zero, &one).unwrap();
        let x = q("1/2");
        assert_eq!(g.eval(&x).unwrap(), direct_f2(3, 2, 2, &zero, &one, &x));
        assert!(matches!(build_f_thm2(1, 2, 3, &one, &zero), Err(Error::InvalidShape(_))));
        assert!(matches!(build_f_thm2(5, 3, 2, &one, &zero), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn builders_match_direct_formulas() {
        let pts: Vec<Rational> = ["1/2", "-3/7", "5", "13/4", "-11/2"].iter().map(|s| q(s)).collect();
        for m in 1..=7 {
            for n in 1..=m {
                let f = build_f_thm1(m, n).unwrap();
                for x in &pts {
                    assert_eq!(f.eval(x).unwrap(), direct_f1(m, n, x));
                }
            }
        }
        let (c1, c2) = (q("2"), q("-3/2"));
        for l in 2..=9 {
            for m in 1..l {
                for n in 1..=m {
                    if 2 * n < l {
                        continue;
                    }
                    let f = build_f_thm2(l, m, n, &c1, &c2).unwrap();
                    for x in &pts {
                        if x.is_integer() && x > &Rational::zero() {
                            continue;
                        }
                        assert_eq!(f.eval(x).unwrap(), direct_f2(l, m, n, &c1, &c2, x));
                    }
                }
            }
        }
    }

    #[test]
    fn degrees_and_limits() {
        for m in 1..=10u64 {
            for n in 1..=m {
                let f = build_f_thm1(m, n).unwrap();
                assert_eq!(f.numerator().degree(), Some((n + m) as usize));
                assert_eq!(f.denominator_degree(), (n + m + 1) as usize);
                assert_eq!(f.denominator().degree(), Some((n + m + 1) as usize));
                assert_eq!(f.numerator().leading_coeff(), Rational::sign_power((m + n) as i64));
            }
        }
        let f = build_f_thm2(5, 4, 3, &q("1"), &q("1")).unwrap();
        assert!(f.numerator().degree().unwrap() < 7);
    }

    #[test]
    fn eval_edge_cases() {
        let constant = FactoredRatFun::new(Poly::constant(Rational::one()), vec![]).unwrap();
        assert_eq!(eval_exact(&constant, &q("17/3")).unwrap(), Rational::one());
        let f = build_f_thm1(3, 2).unwrap();
        assert_eq!(eval_exact(&f, &q("-2")), Err(Error::PoleEvaluation(-2)));
        assert_eq!(eval_exact(&f, &q("0")), Err(Error::PoleEvaluation(0)));
    }

    #[test]
    fn constructor_rejects_bad_poles() {
        let p = Poly::constant(Rational::one());
        assert!(FactoredRatFun::new(p.clone(), vec![Pole::new(1, 1)]).is_err());
        assert!(FactoredRatFun::new(p.clone(), vec![Pole::new(-1, 3)]).is_err());
        assert!(FactoredRatFun::new(p, vec![Pole::new(-1, 1), Pole::new(-1, 2)]).is_err());
    }

    #[test]
    fn laurent_examples() {
        let pfd = laurent_pfd(&build_f_thm1(2, 1).unwrap()).unwrap();
        assert_eq!(pfd.a, q("1"));
        assert_eq!(pfd.quad, vec![QuadTerm { k: 1, b: q("-12"), c: q("16") }]);
        assert_eq!(pfd.simple, vec![SimpleTerm { k: 2, d: q("-18") }]);

        let pfd = laurent_pfd(&build_f_thm1(1, 1).unwrap()).unwrap();
        assert_eq!(pfd.a, q("1"));
        assert_eq!(pfd.quad, vec![QuadTerm { k: 1, b: q("-4"), c: q("0") }]);
        assert!(pfd.simple.is_empty());

        let f = build_f_thm2(2, 1, 1, &q("1"), &q("0")).unwrap();
        let pfd = laurent_pfd(&f).unwrap();
        assert_eq!(pfd.a, q("1"));
        assert_eq!(pfd.quad, vec![QuadTerm { k: 1, b: q("-2"), c: q("-1") }]);
    }

    #[test]
    fn laurent_rejects_improper_and_odd_poles() {
        let improper = FactoredRatFun::new(poly(&[0, 0, 1]), vec![Pole::new(0, 1), Pole::new(-1, 1)]).unwrap();
        assert!(matches!(laurent_pfd(&improper), Err(Error::ImproperFunction { .. })));
        let gap = FactoredRatFun::new(
            Poly::constant(Rational::one()),
            vec![Pole::new(0, 1), Pole::new(-2, 2)],
        )
        .unwrap();
        assert_eq!(laurent_pfd(&gap), Err(Error::UnsupportedPoles));
    }

    #[test]
    fn recombination_small_cases() {
        let pts: Vec<Rational> = ["1/2", "-3/7", "5", "13/4"].iter().map(|s| q(s)).collect();
        for m in 1..=6 {
            for n in 1..=m {
                let f = build_f_thm1(m, n).unwrap();
                let pfd = laurent_pfd(&f).unwrap();
                for x in &pts {
                    assert_eq!(pfd.eval(x).unwrap(), f.eval(x).unwrap());
                }
                assert_eq!(pfd.limit_at_infinity(), Rational::sign_power((m + n) as i64));
            }
        }
    }
}
