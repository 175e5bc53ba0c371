//! The generalized Weyl algebra `A = k[z; λ, η, φ]` in normal form.
//!
//! Every element is written uniquely as `Σ_q h_q(z) x_q` with `x_q = x^q`
//! for `q ≥ 0` and `x_q = y^{-q}` for `q < 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Poly, Rational};

/// Parameters `(λ, η, φ)` with `σ(z) = λz + η`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwaParams {
    pub lambda: Rational,
    pub eta: Rational,
    pub phi: Poly,
}

impl GwaParams {
    pub fn new(lambda: Rational, eta: Rational, phi: Poly) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParams("lambda must be nonzero".into()));
        }
        if phi.is_zero() {
            return Err(Error::ZeroPhi);
        }
        Ok(GwaParams { lambda, eta, phi })
    }

    pub fn quantum(lambda: Rational, phi: Poly) -> Result<Self> {
        GwaParams::new(lambda, Rational::zero(), phi)
    }

    pub fn classical(eta: Rational, phi: Poly) -> Result<Self> {
        GwaParams::new(Rational::one(), eta, phi)
    }

    /// `l = deg φ`.
    pub fn l(&self) -> usize {
        self.phi.degree().expect("phi is nonzero")
    }

    pub fn is_quantum(&self) -> bool {
        !self.lambda.is_one() && self.eta.is_zero()
    }

    pub fn is_classical(&self) -> bool {
        self.lambda.is_one() && !self.eta.is_zero()
    }

    pub fn is_noncommutative(&self) -> bool {
        !(self.lambda.is_one() && self.eta.is_zero())
    }
}

/// The basis monomial `z^p x_q`. Ordering is by `q`, then `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mono {
    pub q: i64,
    pub p: usize,
}

impl Mono {
    pub const ONE: Mono = Mono { q: 0, p: 0 };

    pub fn new(p: usize, q: i64) -> Self {
        Mono { q, p }
    }

    /// `p + (l+1)|q|`.
    pub fn degree(&self, l: usize) -> usize {
        self.p + (l + 1) * self.q.unsigned_abs() as usize
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.p {
            0 => {}
            1 => parts.push("z".to_string()),
            p => parts.push(format!("z^{p}")),
        }
        let (g, k) = if self.q >= 0 { ("x", self.q) } else { ("y", -self.q) };
        match k {
            0 => {}
            1 => parts.push(g.to_string()),
            k => parts.push(format!("{g}^{k}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A finite linear combination `Σ_q h_q(z) x_q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GwaElement {
    terms: BTreeMap<i64, Poly>,
}

impl GwaElement {
    pub fn zero() -> Self {
        GwaElement::default()
    }

    pub fn one() -> Self {
        GwaElement::from_poly(Poly::one())
    }

    pub fn scalar(c: Rational) -> Self {
        GwaElement::from_poly(Poly::constant(c))
    }

    pub fn z() -> Self {
        GwaElement::from_poly(Poly::z())
    }

    pub fn x() -> Self {
        GwaElement::mono(Mono::new(0, 1))
    }

    pub fn y() -> Self {
        GwaElement::mono(Mono::new(0, -1))
    }

    pub fn from_poly(h: Poly) -> Self {
        GwaElement::from_poly_x(h, 0)
    }

    /// `h(z) x_q`.
    pub fn from_poly_x(h: Poly, q: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !h.is_zero() {
            terms.insert(q, h);
        }
        GwaElement { terms }
    }

    pub fn mono(m: Mono) -> Self {
        GwaElement::term(Rational::one(), m)
    }

    pub fn term(c: Rational, m: Mono) -> Self {
        GwaElement::from_poly_x(Poly::monomial(c, m.p), m.q)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(it: I) -> Self {
        let mut acc: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
        for (m, c) in it {
            let v = acc.entry(m.q).or_default();
            if v.len() <= m.p {
                v.resize(m.p + 1, Rational::zero());
            }
            v[m.p] += c;
        }
        let terms = acc
            .into_iter()
            .map(|(q, v)| (q, Poly::new(v)))
            .filter(|(_, h)| !h.is_zero())
            .collect();
        GwaElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `x_q` components `q -> h_q`.
    pub fn components(&self) -> &BTreeMap<i64, Poly> {
        &self.terms
    }

    pub fn component(&self, q: i64) -> Poly {
        self.terms.get(&q).cloned().unwrap_or_default()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Mono, Rational)> + '_ {
        self.terms.iter().flat_map(|(&q, h)| {
            h.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(p, c)| (Mono::new(p, q), c.clone()))
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn coeff(&self, m: Mono) -> Rational {
        self.terms.get(&m.q).map(|h| h.coeff(m.p)).unwrap_or_else(Rational::zero)
    }

    pub fn add_poly_x(&mut self, h: &Poly, q: i64) {
        if h.is_zero() {
            return;
        }
        let e = self.terms.entry(q).or_default();
        *e = &*e + h;
        if e.is_zero() {
            self.terms.remove(&q);
        }
    }

    pub fn add_assign(&mut self, other: &GwaElement) {
        for (&q, h) in &other.terms {
            self.add_poly_x(h, q);
        }
    }

    pub fn add_scaled(&mut self, other: &GwaElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&q, h) in &other.terms {
            self.add_poly_x(&h.scale(c), q);
        }
    }

    pub fn scale(&self, c: &Rational) -> GwaElement {
        if c.is_zero() {
            return GwaElement::zero();
        }
        GwaElement {
            terms: self.terms.iter().map(|(&q, h)| (q, h.scale(c))).collect(),
        }
    }

    /// `h(z) · u`, which needs no commutation.
    pub fn left_poly(&self, h: &Poly) -> GwaElement {
        let mut out = GwaElement::zero();
        for (&q, g) in &self.terms {
            out.add_poly_x(&(h * g), q);
        }
        out
    }

    /// Largest `p + (l+1)|q|` over the support; `None` for zero.
    pub fn filtration_degree(&self, l: usize) -> Option<usize> {
        self.terms().map(|(m, _)| m.degree(l)).max()
    }

    pub fn max_abs_q(&self) -> i64 {
        self.terms.keys().map(|q| q.abs()).max().unwrap_or(0)
    }
}

impl std::ops::Add for &GwaElement {
    type Output = GwaElement;
    fn add(self, rhs: &GwaElement) -> GwaElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::Sub for &GwaElement {
    type Output = GwaElement;
    fn sub(self, rhs: &GwaElement) -> GwaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl std::ops::Neg for &GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Add for GwaElement {
    type Output = GwaElement;
    fn add(self, rhs: GwaElement) -> GwaElement {
        &self + &rhs
    }
}

impl std::ops::Sub for GwaElement {
    type Output = GwaElement;
    fn sub(self, rhs: GwaElement) -> GwaElement {
        &self - &rhs
    }
}

impl std::ops::Neg for GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        -&self
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
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
            if m == Mono::ONE {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    p: usize,
    q: i64,
    c: Rational,
}

impl Serialize for GwaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let recs: Vec<TermRecord> = self.terms().map(|(m, c)| TermRecord { p: m.p, q: m.q, c }).collect();
        recs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GwaElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        Ok(GwaElement::from_terms(recs.into_iter().map(|r| (Mono::new(r.p, r.q), r.c))))
    }
}

/// A finite combination of `(z^{p1} x_{q1}) ⊗ (z^{p2} x_{q2})`.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TensorElement {
    terms: BTreeMap<(Mono, Mono), Rational>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    /// `1 ⊗ 1`.
    pub fn unit() -> Self {
        TensorElement::basis(Mono::ONE, Mono::ONE)
    }

    pub fn basis(a: Mono, b: Mono) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(a, b, Rational::one());
        t
    }

    /// `u ⊗ v` expanded on the basis.
    pub fn pure(u: &GwaElement, v: &GwaElement) -> Self {
        let mut t = TensorElement::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                t.add_term(a, b, &ca * &cb);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: Mono, b: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for ((a, b), c) in &other.terms {
            self.add_term(*a, *b, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, s: &Rational) {
        for ((a, b), c) in &other.terms {
            self.add_term(*a, *b, c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_scaled(self, s);
        t
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&-Rational::one())
    }

    pub fn sum(&self, other: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_assign(other);
        t
    }

    pub fn difference(&self, other: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_scaled(other, &-Rational::one());
        t
    }

    /// Right legs grouped by left monomial.
    pub fn by_left(&self) -> BTreeMap<Mono, GwaElement> {
        let mut out: BTreeMap<Mono, Vec<(Mono, Rational)>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry(*a).or_default().push((*b, c.clone()));
        }
        out.into_iter().map(|(a, v)| (a, GwaElement::from_terms(v))).collect()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{c}*({a} ⊗ {b})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// A diagonal automorphism `x ↦ a x`, `y ↦ b y`, `z ↦ c z + d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphism {
    pub x_scale: Rational,
    pub y_scale: Rational,
    pub z_image: Poly,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism {
            x_scale: Rational::one(),
            y_scale: Rational::one(),
            z_image: Poly::z(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Automorphism::identity()
    }

    fn zc(&self) -> (Rational, Rational) {
        (self.z_image.coeff(1), self.z_image.coeff(0))
    }
}

/// The bimodule `^f M ^g` with `a·m·b = f(a) m g(b)`, here over `M = A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub name: String,
    pub left_twist: Automorphism,
    pub right_twist: Automorphism,
}

impl BimoduleSpec {
    pub fn regular() -> Self {
        BimoduleSpec {
            name: "A".into(),
            left_twist: Automorphism::identity(),
            right_twist: Automorphism::identity(),
        }
    }
}

/// Gen selector for `Δ^ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X,
    Y,
}

/// A leg map `σ^sigma ∘ D^derive` on `k[z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LegMap {
    pub sigma: i64,
    pub derive: bool,
}

impl LegMap {
    pub const ID: LegMap = LegMap { sigma: 0, derive: false };
    pub const SIGMA: LegMap = LegMap { sigma: 1, derive: false };
    pub const D: LegMap = LegMap { sigma: 0, derive: true };
    pub const SIGMA_D: LegMap = LegMap { sigma: 1, derive: true };

    pub fn sigma_pow(j: i64) -> LegMap {
        LegMap { sigma: j, derive: false }
    }
}

/// Arithmetic context for one algebra.
pub struct Gwa {
    params: GwaParams,
    l: usize,
    xprod: RwLock<HashMap<(i64, i64), Poly>>,
}

impl Clone for Gwa {
    fn clone(&self) -> Self {
        Gwa::new(self.params.clone())
    }
}

impl fmt::Debug for Gwa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gwa").field("params", &self.params).finish()
    }
}

impl Gwa {
    pub fn new(params: GwaParams) -> Self {
        let l = params.l();
        Gwa { params, l, xprod: RwLock::new(HashMap::new()) }
    }

    pub fn params(&self) -> &GwaParams {
        &self.params
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn lambda(&self) -> &Rational {
        &self.params.lambda
    }

    pub fn phi(&self) -> &Poly {
        &self.params.phi
    }

    /// `σ(φ)`.
    pub fn phi_bar(&self) -> Poly {
        self.sigma_pow(&self.params.phi, 1)
    }

    /// `(λ^j, c_j)` with `σ^j(z) = λ^j z + c_j`.
    pub fn sigma_coeffs(&self, j: i64) -> (Rational, Rational) {
        let lam = &self.params.lambda;
        let eta = &self.params.eta;
        let mut c = Rational::zero();
        if j >= 0 {
            for _ in 0..j {
                c = lam * &c + eta;
            }
        } else {
            let inv = lam.recip();
            for _ in 0..(-j) {
                c = &inv * &(c - eta);
            }
        }
        (lam.pow(j), c)
    }

    /// `σ^j(h)` for any integer `j`.
    pub fn sigma_pow(&self, h: &Poly, j: i64) -> Poly {
        if j == 0 || h.is_constant() {
            return h.clone();
        }
        let (a, b) = self.sigma_coeffs(j);
        h.compose_linear(&a, &b)
    }

    /// The polynomial `c` with `x_q x_j = c(z) x_{q+j}`.
    pub fn x_product(&self, q: i64, j: i64) -> Poly {
        if q == 0 || j == 0 || (q > 0) == (j > 0) {
            return Poly::one();
        }
        if let Some(c) = self.xprod.read().unwrap().get(&(q, j)) {
            return c.clone();
        }
        // x^m y^n = σ^m(φ) x^{m-1} y^{n-1};  y^n x^m = σ^{-(n-1)}(φ) y^{n-1} x^{m-1}
        let c = if q > 0 {
            &self.sigma_pow(&self.params.phi, q) * &self.x_product(q - 1, j + 1)
        } else {
            &self.sigma_pow(&self.params.phi, q + 1) * &self.x_product(q + 1, j - 1)
        };
        self.xprod.write().unwrap().insert((q, j), c.clone());
        c
    }

    pub fn mul(&self, u: &GwaElement, v: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (&q, h) in u.components() {
            for (&j, g) in v.components() {
                let c = &(h * &self.sigma_pow(g, q)) * &self.x_product(q, j);
                out.add_poly_x(&c, q + j);
            }
        }
        out
    }

    pub fn mul3(&self, a: &GwaElement, b: &GwaElement, c: &GwaElement) -> GwaElement {
        self.mul(&self.mul(a, b), c)
    }

    pub fn mul_mono(&self, a: Mono, b: Mono) -> GwaElement {
        self.mul(&GwaElement::mono(a), &GwaElement::mono(b))
    }

    /// `u · h(z)`.
    pub fn right_poly(&self, u: &GwaElement, h: &Poly) -> GwaElement {
        let mut out = GwaElement::zero();
        for (&q, g) in u.components() {
            out.add_poly_x(&(g * &self.sigma_pow(h, q)), q);
        }
        out
    }

    pub fn pow(&self, u: &GwaElement, e: usize) -> GwaElement {
        let mut acc = GwaElement::one();
        for _ in 0..e {
            acc = self.mul(&acc, u);
        }
        acc
    }

    pub fn filtration_degree(&self, u: &GwaElement) -> Option<usize> {
        u.filtration_degree(self.l)
    }

    pub fn degree_of(&self, m: Mono) -> usize {
        m.degree(self.l)
    }

    /// All `(p, q)` with `p + (l+1)|q| ≤ n`, ordered by `q` then `p`.
    pub fn basis_window(&self, n: usize) -> Vec<Mono> {
        let w = (self.l + 1) as i64;
        let qmax = n as i64 / w;
        let mut out = Vec::new();
        for q in -qmax..=qmax {
            let rest = n - (w * q.abs()) as usize;
            for p in 0..=rest {
                out.push(Mono::new(p, q));
            }
        }
        out
    }

    /// Builds a diagonal automorphism after checking the four relations.
    pub fn automorphism(
        &self,
        x_scale: Rational,
        y_scale: Rational,
        c: Rational,
        d: Rational,
    ) -> Result<Automorphism> {
        if x_scale.is_zero() || y_scale.is_zero() || c.is_zero() {
            return Err(Error::InvalidParams("automorphism is not invertible".into()));
        }
        let rho = Automorphism { x_scale, y_scale, z_image: Poly::linear(c, d) };
        let x = self.apply(&rho, &GwaElement::x());
        let y = self.apply(&rho, &GwaElement::y());
        let z = rho.z_image.clone();
        let sz = self.sigma_pow(&Poly::z(), 1).compose(&z);
        let siz = self.sigma_pow(&Poly::z(), -1).compose(&z);
        let z = GwaElement::from_poly(z);
        let checks = [
            self.mul(&x, &z) - self.mul(&GwaElement::from_poly(sz), &x),
            self.mul(&y, &z) - self.mul(&GwaElement::from_poly(siz), &y),
            self.mul(&y, &x) - GwaElement::from_poly(self.phi().compose(&rho.z_image)),
            self.mul(&x, &y) - GwaElement::from_poly(self.phi_bar().compose(&rho.z_image)),
        ];
        if checks.iter().any(|r| !r.is_zero()) {
            return Err(Error::InvalidParams("images violate the defining relations".into()));
        }
        Ok(rho)
    }

    /// `ν: x ↦ λx, y ↦ λ^{-1}y, z ↦ z`.
    pub fn nu(&self) -> Automorphism {
        let lam = self.lambda().clone();
        Automorphism { x_scale: lam.clone(), y_scale: lam.recip(), z_image: Poly::z() }
    }

    pub fn nu_inverse(&self) -> Automorphism {
        let lam = self.lambda().clone();
        Automorphism { x_scale: lam.recip(), y_scale: lam, z_image: Poly::z() }
    }

    /// The bimodule `A^ν`.
    pub fn a_nu(&self) -> BimoduleSpec {
        BimoduleSpec {
            name: "A^nu".into(),
            left_twist: Automorphism::identity(),
            right_twist: self.nu(),
        }
    }

    pub fn module_by_name(&self, name: &str) -> Result<BimoduleSpec> {
        match name {
            "A" => Ok(BimoduleSpec::regular()),
            "A^nu" | "A^ν" | "nu" => Ok(self.a_nu()),
            _ => Err(Error::Parse(format!("unknown module {name:?}; expected A or A^nu"))),
        }
    }

    pub fn apply(&self, rho: &Automorphism, u: &GwaElement) -> GwaElement {
        if rho.is_identity() {
            return u.clone();
        }
        let (c, d) = rho.zc();
        let mut out = GwaElement::zero();
        for (&q, h) in u.components() {
            let s = if q >= 0 { rho.x_scale.pow(q) } else { rho.y_scale.pow(-q) };
            out.add_poly_x(&h.compose_linear(&c, &d).scale(&s), q);
        }
        out
    }

    /// `a · m · b` in the bimodule `spec`.
    pub fn act(&self, spec: &BimoduleSpec, a: &GwaElement, m: &GwaElement, b: &GwaElement) -> GwaElement {
        let fa = self.apply(&spec.left_twist, a);
        let gb = self.apply(&spec.right_twist, b);
        self.mul(&fa, &self.mul(m, &gb))
    }

    /// `a · m`.
    pub fn act_left(&self, spec: &BimoduleSpec, a: &GwaElement, m: &GwaElement) -> GwaElement {
        self.mul(&self.apply(&spec.left_twist, a), m)
    }

    /// `m · b`.
    pub fn act_right(&self, spec: &BimoduleSpec, m: &GwaElement, b: &GwaElement) -> GwaElement {
        self.mul(m, &self.apply(&spec.right_twist, b))
    }

    /// `Σ c · l · m · r` over the terms of `t`.
    pub fn tensor_act(&self, t: &TensorElement, spec: &BimoduleSpec, m: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (a, right) in t.by_left() {
            out.add_assign(&self.act(spec, &GwaElement::mono(a), m, &right));
        }
        out
    }

    /// `u · t · v = Σ (u t_l) ⊗ (t_r v)` for the outer bimodule structure on `A ⊗ A`.
    pub fn tensor_sandwich(&self, u: &GwaElement, t: &TensorElement, v: &GwaElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c) in t.terms() {
            let l = self.mul(u, &GwaElement::mono(*a));
            let r = self.mul(&GwaElement::mono(*b), v);
            out.add_scaled(&TensorElement::pure(&l, &r), c);
        }
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ db`.
    pub fn tensor_mul(&self, s: &TensorElement, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c1) in s.terms() {
            for ((c, d), c2) in t.terms() {
                let l = self.mul_mono(*a, *c);
                let r = self.mul_mono(*d, *b);
                out.add_scaled(&TensorElement::pure(&l, &r), &(c1 * c2));
            }
        }
        out
    }

    /// `Δ_0(z^k) = Σ_{i=1}^k z^{k-i} ⊗ z^{i-1}`.
    pub fn delta0(&self, k: usize) -> TensorElement {
        let mut t = TensorElement::zero();
        for i in 1..=k {
            t.add_term(Mono::new(k - i, 0), Mono::new(i - 1, 0), Rational::one());
        }
        t
    }

    fn leg(&self, f: LegMap, h: &Poly) -> Poly {
        let h = if f.derive { h.derivative() } else { h.clone() };
        self.sigma_pow(&h, f.sigma)
    }

    /// `^fΔ^g(h) = (f ⊗ g) Δ_0(h)`.
    pub fn twisted_delta(&self, f: LegMap, g: LegMap, h: &Poly) -> TensorElement {
        let mut out = TensorElement::zero();
        for (k, a) in h.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for i in 1..=k {
                let lft = self.leg(f, &Poly::monomial(Rational::one(), k - i));
                let rgt = self.leg(g, &Poly::monomial(Rational::one(), i - 1));
                let t = TensorElement::pure(&GwaElement::from_poly(lft), &GwaElement::from_poly(rgt));
                out.add_scaled(&t, a);
            }
        }
        out
    }

    /// `Δ(h) = Δ_0(h)`.
    pub fn delta(&self, h: &Poly) -> TensorElement {
        self.twisted_delta(LegMap::ID, LegMap::ID, h)
    }

    /// `Δ^ν(x^q) = Σ_s x^{q-s} ⊗ (λx)^{s-1}`, and the `y` analogue with `λ^{-1}`.
    pub fn delta_nu(&self, gen: Gen, q: usize) -> TensorElement {
        let (sign, scale) = match gen {
            Gen::X => (1, self.lambda().clone()),
            Gen::Y => (-1, self.lambda().recip()),
        };
        let mut t = TensorElement::zero();
        for s in 1..=q {
            t.add_term(
                Mono::new(0, sign * (q - s) as i64),
                Mono::new(0, sign * (s - 1) as i64),
                scale.pow(s as i64 - 1),
            );
        }
        t
    }

    /// A random element of `Γ^n A` with up to `terms` terms and small integer coefficients.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R, n: usize, terms: usize) -> GwaElement {
        let window = self.basis_window(n);
        let k = rng.random_range(1..=terms.max(1));
        GwaElement::from_terms((0..k).map(|_| {
            let m = window[rng.random_range(0..window.len())];
            let mut c = 0;
            while c == 0 {
                c = rng.random_range(-3i64..=3);
            }
            (m, Rational::from_int(c))
        }))
    }

    /// Parses expressions such as `2/3 z^2*x - y*x + (z+1)^2`.
    pub fn parse_element(&self, s: &str) -> Result<GwaElement> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0, gwa: self };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'x' | 'y' | 'z' => {
                out.push(Tok::Var(c));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                    i += 1;
                }
                let lit: String = cs[start..i].iter().collect();
                out.push(Tok::Num(lit.parse()?));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    gwa: &'a Gwa,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<GwaElement> {
        let mut acc = GwaElement::zero();
        let mut sign = Rational::one();
        if let Some(Tok::Minus) = self.peek() {
            sign = -sign;
            self.pos += 1;
        } else if let Some(Tok::Plus) = self.peek() {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
            match self.peek() {
                Some(Tok::Plus) => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some(Tok::Minus) => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GwaElement> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.gwa.mul(&acc, &f);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = self.gwa.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<GwaElement> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n
                        .to_i64()
                        .filter(|&e| e >= 0)
                        .ok_or_else(|| Error::Parse("exponent must be a nonnegative integer".into()))?;
                    Ok(self.gwa.pow(&base, e as usize))
                }
                _ => Err(Error::Parse("expected exponent after ^".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GwaElement> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(GwaElement::scalar(n))
            }
            Some(Tok::Var(c)) => {
                self.pos += 1;
                Ok(match c {
                    'x' => GwaElement::x(),
                    'y' => GwaElement::y(),
                    _ => GwaElement::z(),
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::RParen) {
                    return Err(Error::Parse("missing )".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
