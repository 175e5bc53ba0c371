//! Exact rationals and dense univariate polynomials over them.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, e: i64) -> Self {
        if e >= 0 {
            let mut acc = Rational::one();
            let mut base = self.clone();
            let mut k = e as u64;
            while k > 0 {
                if k & 1 == 1 {
                    acc = &acc * &base;
                }
                base = &base * &base;
                k >>= 1;
            }
            acc
        } else {
            self.recip().pow(-e)
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn factorial(n: u64) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= BigInt::from(k);
        }
        Rational(BigRational::from_integer(acc))
    }

    pub fn binomial(n: i64, k: i64) -> Self {
        if k < 0 || n < 0 || k > n {
            return Rational::zero();
        }
        let mut acc = Rational::one();
        for i in 0..k {
            acc = acc * Rational::from_int(n - i) / Rational::from_int(i + 1);
        }
        acc
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Rational::from_int(i)),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'b Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

bin_op!(Add, add, +);
bin_op!(Sub, sub, -);
bin_op!(Mul, mul, *);
bin_op!(Div, div, /);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Dense polynomial in `z`; `coeffs[i]` is the coefficient of `z^i`.
///
/// Trailing zeros are stripped, so the zero polynomial has no coefficients
/// and `degree()` returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| Rational::from_int(v)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// `a z + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `z -> a z + b`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Substitute `z -> g`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        poly_derivative(self)
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + i] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn to_json_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::new(Vec::<Rational>::deserialize(d)?))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// The pair `(alpha, beta)` with `alpha * phi + beta * phi' = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutPair {
    pub alpha: Poly,
    pub beta: Poly,
}

impl BezoutPair {
    /// Checks the identity against `phi` before accepting the pair.
    pub fn new(phi: &Poly, alpha: Poly, beta: Poly) -> Result<Self> {
        let lhs = &(&alpha * phi) + &(&beta * &phi.derivative());
        if lhs != Poly::one() {
            return Err(Error::InvalidParams(format!(
                "alpha*phi + beta*phi' = {lhs}, not 1"
            )));
        }
        Ok(BezoutPair { alpha, beta })
    }
}

pub fn poly_derivative(h: &Poly) -> Poly {
    Poly::new(
        h.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_int(i as i64))
            .collect(),
    )
}

/// Extended Euclid: returns `(g, s, t)` with `s*h1 + t*h2 = g` and `g` monic.
pub fn poly_ext_gcd(h1: &Poly, h2: &Poly) -> Result<(Poly, Poly, Poly)> {
    if h1.is_zero() && h2.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (h1.clone(), h2.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = r0.lead().recip();
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

pub fn poly_gcd(h1: &Poly, h2: &Poly) -> Result<Poly> {
    poly_ext_gcd(h1, h2).map(|(g, _, _)| g)
}

pub fn bezout_for_phi(phi: &Poly) -> Result<BezoutPair> {
    if phi.is_zero() {
        return Err(Error::ZeroPhi);
    }
    let d = phi.derivative();
    let (g, s, t) = poly_ext_gcd(phi, &d)?;
    if !g.is_constant() {
        return Err(Error::MultipleRoot(g.to_string()));
    }
    BezoutPair::new(phi, s, t)
}

pub fn squarefree_part(h: &Poly) -> Result<Poly> {
    if h.is_zero() {
        return Err(Error::ZeroInput);
    }
    if h.is_constant() {
        return Ok(Poly::one());
    }
    let g = poly_gcd(h, &h.derivative())?;
    let (q, r) = h.div_rem(&g);
    debug_assert!(r.is_zero());
    Ok(q.monic())
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn bareiss_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Rational::zero();
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester-matrix resultant of two nonzero polynomials.
pub fn resultant(f: &Poly, g: &Poly) -> Rational {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Rational::zero();
    };
    if m == 0 && n == 0 {
        return Rational::one();
    }
    let size = m + n;
    let mut rows = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            rows[i][i + k] = f.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            rows[n + i][i + k] = g.coeff(n - k);
        }
    }
    bareiss_det(rows)
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut den = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear(Rational::one(), -xj);
                den = den * (xi - xj);
            }
        }
        acc = &acc + &basis.scale(&(yi / &den));
    }
    acc
}

/// A polynomial whose roots are the `e`-th powers of the roots of `phi`,
/// namely `Res_z(phi(z), w - z^e)` as a polynomial in `w`.
pub fn resultant_power_map(phi: &Poly, e: usize) -> Result<Poly> {
    if phi.is_zero() {
        return Err(Error::ZeroPhi);
    }
    if e == 0 {
        return Err(Error::DomainViolation("power map exponent must be positive".into()));
    }
    let l = phi.degree().unwrap();
    let xs: Vec<Rational> = (0..=l as i64).map(Rational::from_int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|w| {
            let g = &Poly::constant(w.clone()) - &Poly::monomial(Rational::one(), e);
            resultant(phi, &g)
        })
        .collect();
    Ok(interpolate(&xs, &ys))
}
