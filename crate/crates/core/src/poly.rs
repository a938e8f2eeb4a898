//! Exact integer polynomials: bivariate (Tutte polynomials), univariate and
//! Laurent in `t`, and Hilbert series with a `(1 - t)^k` denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Number of power-series coefficients used by default in expansion checks.
pub const DEFAULT_EXPANSION_TERMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("numerator has a t^{0} term that no (1 - t) denominator can cancel")]
    NegativePower(i64),
}

/// Writes `c * name` in the `a + b - c` style shared by all printers.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a BigInt, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        match (mono.is_empty(), abs.is_one()) {
            (true, _) => write!(f, "{abs}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{abs}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn power_name(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

// ---------------------------------------------------------------------------
// Bivariate

/// Integer polynomial in `x` and `y`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in graded lexicographic order: total degree descending, then
    /// `x`-degree descending.
    pub fn terms(&self) -> Vec<((u32, u32), &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, c)| (k, c)).collect();
        v.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        v
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * k)))
    }

    /// `p(y, x)`
    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// Substitutes Laurent polynomials in `t` for `x` and `y`.
    pub fn substitute_xy(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        let mut x_pows: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        let mut y_pows: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        let mut acc = LaurentPoly::zero();
        for (&(i, j), c) in &self.terms {
            while x_pows.len() <= i as usize {
                let next = x_pows.last().unwrap() * x;
                x_pows.push(next);
            }
            while y_pows.len() <= j as usize {
                let next = y_pows.last().unwrap() * y;
                y_pows.push(next);
            }
            let term = (&x_pows[i as usize] * &y_pows[j as usize]).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// Printer with custom variable names; term order is the graded order
    /// of this polynomial's own `(x, y)` exponents.
    pub fn display_with(&self, x_name: &str, y_name: &str) -> String {
        struct D<'a>(&'a BivariatePoly, &'a str, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let terms = self.0.terms().into_iter().map(|((i, j), c)| {
                    let parts: Vec<String> = [power_name(self.1, i as i64), power_name(self.2, j as i64)]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect();
                    (c, parts.join("*"))
                });
                write_terms(f, terms)
            }
        }
        D(self, x_name, y_name).to_string()
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

impl Add<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: BivariatePoly) -> BivariatePoly {
        &self + &rhs
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

// ---------------------------------------------------------------------------
// Univariate

/// Integer polynomial in `t`, coefficients indexed by degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnivariatePoly {
    coeffs: Vec<BigInt>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    /// `1 - t^k`
    pub fn one_minus_t_pow(k: usize) -> Self {
        &Self::one() - &Self::monomial(1, k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` when `divisor` does not divide `self` in `Z[t]`.
    pub fn div_exact(&self, divisor: &UnivariatePoly) -> Option<UnivariatePoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(Zero::is_zero).then(UnivariatePoly::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| UnivariatePoly::new(quot))
    }

    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a UnivariatePoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let terms = self
                    .0
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (c, power_name(self.1, k as i64)));
                write_terms(f, terms)
            }
        }
        D(self, var).to_string()
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Add<&UnivariatePoly> for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn add(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&UnivariatePoly> for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn sub(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&UnivariatePoly> for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn mul(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }
}

impl Neg for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn neg(self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---------------------------------------------------------------------------
// Laurent

/// Integer Laurent polynomial `sum c_k t^(min_degree + k)`.
///
/// Normalized so that the first and last stored coefficients are nonzero;
/// the zero polynomial has no coefficients and `min_degree == 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_degree: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(min_degree: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly { min_degree: min_degree + lead as i64, coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: i64) -> Self {
        Self::new(degree, vec![c.into()])
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn t_inv() -> Self {
        Self::monomial(1, -1)
    }

    pub fn from_poly(p: &UnivariatePoly) -> Self {
        Self::new(0, p.coeffs.clone())
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        let k = degree - self.min_degree;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_degree: self.min_degree + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.min_degree, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The ordinary polynomial, when no negative powers remain.
    pub fn to_poly(&self) -> Option<UnivariatePoly> {
        if self.is_zero() {
            return Some(UnivariatePoly::zero());
        }
        if self.min_degree < 0 {
            return None;
        }
        let mut coeffs = vec![BigInt::zero(); self.min_degree as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(UnivariatePoly::new(coeffs))
    }

    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a LaurentPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let terms = self
                    .0
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (c, power_name(self.1, self.0.min_degree + k as i64)));
                write_terms(f, terms)
            }
        }
        D(self, var).to_string()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = (self.min_degree + self.coeffs.len() as i64).max(rhs.min_degree + rhs.coeffs.len() as i64);
        LaurentPoly::new(lo, (lo..hi).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_degree + rhs.min_degree, out)
    }
}

// ---------------------------------------------------------------------------
// Hilbert series

/// Rational power series `numerator / (1 - t)^pole_order`.
///
/// Canonical: either `pole_order == 0` or `numerator(1) != 0`, and the zero
/// series has `pole_order == 0`. Structural equality is series equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    numerator: UnivariatePoly,
    pole_order: usize,
}

impl HilbertSeries {
    /// Canonical form of an ordinary polynomial numerator.
    pub fn new(numerator: UnivariatePoly, pole_order: usize) -> Self {
        normalize_series(&LaurentPoly::from_poly(&numerator), pole_order)
            .expect("polynomial numerators have no negative powers")
    }

    pub fn numerator(&self) -> &UnivariatePoly {
        &self.numerator
    }

    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.numerator.scale(k), self.pole_order)
    }

    /// First `n` power-series coefficients.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        // 1/(1-t)^k = sum_m C(m+k-1, k-1) t^m
        let k = self.pole_order;
        let denom_series: Vec<BigInt> = (0..n)
            .map(|m| if k == 0 { BigInt::from((m == 0) as u8) } else { binomial(m + k - 1, k - 1) })
            .collect();
        (0..n)
            .map(|m| {
                (0..=m)
                    .map(|i| self.numerator.coeff(i) * &denom_series[m - i])
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pole_order == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / (1 - t)^{}", self.numerator, self.pole_order)
        }
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Cancels common `(1 - t)` factors from `numerator / (1 - t)^pole_order`.
///
/// Fails if the numerator carries negative powers of `t`: the denominator has
/// no factor of `t`, so such a quotient is not a power series.
pub fn normalize_series(numerator: &LaurentPoly, pole_order: usize) -> Result<HilbertSeries, SeriesError> {
    let Some(mut num) = numerator.to_poly() else {
        return Err(SeriesError::NegativePower(numerator.min_degree()));
    };
    if num.is_zero() {
        return Ok(HilbertSeries { numerator: num, pole_order: 0 });
    }
    let one_minus_t = UnivariatePoly::one_minus_t_pow(1);
    let mut k = pole_order;
    while k > 0 && num.eval(&BigInt::one()).is_zero() {
        num = num.div_exact(&one_minus_t).expect("a root at 1 means (1 - t) divides");
        k -= 1;
    }
    Ok(HilbertSeries { numerator: num, pole_order: k })
}
