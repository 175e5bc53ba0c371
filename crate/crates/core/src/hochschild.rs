//! Hochschild cochains on basis tuples, the comparison maps between the bar
//! resolution and `Tot 𝒫`, and the reconstruction of normalized 2-cochains
//! from `bF` and four generator values.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::complexes::{PElement, TotElement};
use crate::error::{Error, Result};
use crate::gwa::{BimoduleSpec, Gen, Gwa, GwaElement, LegMap, Mono, TensorElement};
use crate::percomplex::PerCochain;
use crate::scalars::{Poly, Rational};

type Eval2 = dyn Fn(Mono, Mono) -> GwaElement + Send + Sync;
type Eval3 = dyn Fn(Mono, Mono, Mono) -> GwaElement + Send + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Zero,
    ExplicitTable,
    Formula,
    DeterminedByRecursion,
}

/// A Hochschild 2-cochain `A × A → A`, given on basis pairs.
#[derive(Clone)]
pub struct Cochain2 {
    gwa: Arc<Gwa>,
    inner: Arc<Eval2>,
    pub provenance: Provenance,
    /// Whether conditions (a) unit-normalization and (b) z-left-linearity
    /// with vanishing on pure x- or y-powers are claimed.
    pub normalized: bool,
}

impl fmt::Debug for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cochain2").field("provenance", &self.provenance).finish()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableEntry {
    pub left: Mono,
    pub right: Mono,
    pub value: GwaElement,
}

impl Cochain2 {
    pub fn zero(gwa: Arc<Gwa>) -> Self {
        Cochain2 { gwa, inner: Arc::new(|_, _| GwaElement::zero()), provenance: Provenance::Zero, normalized: true }
    }

    pub fn from_fn<F>(gwa: Arc<Gwa>, f: F) -> Self
    where
        F: Fn(Mono, Mono) -> GwaElement + Send + Sync + 'static,
    {
        Cochain2 { gwa, inner: Arc::new(f), provenance: Provenance::Formula, normalized: false }
    }

    /// Values listed explicitly; missing pairs evaluate to zero.
    pub fn from_table(gwa: Arc<Gwa>, table: HashMap<(Mono, Mono), GwaElement>) -> Self {
        Cochain2 {
            gwa,
            inner: Arc::new(move |a, b| table.get(&(a, b)).cloned().unwrap_or_default()),
            provenance: Provenance::ExplicitTable,
            normalized: false,
        }
    }

    pub fn gwa(&self) -> &Arc<Gwa> {
        &self.gwa
    }

    pub fn eval_basis(&self, a: Mono, b: Mono) -> GwaElement {
        (self.inner)(a, b)
    }

    pub fn eval(&self, u: &GwaElement, v: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                out.add_scaled(&self.eval_basis(a, b), &(&ca * &cb));
            }
        }
        out
    }

    /// Values on all pairs of basis monomials with degree sum at most `window`.
    pub fn dump(&self, window: usize) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for (a, b) in basis_pairs(&self.gwa, window) {
            let value = self.eval_basis(a, b);
            if !value.is_zero() {
                out.push(TableEntry { left: a, right: b, value });
            }
        }
        out
    }
}

/// A Hochschild 3-cochain, evaluated lazily on basis triples.
#[derive(Clone)]
pub struct Cochain3 {
    gwa: Arc<Gwa>,
    inner: Arc<Eval3>,
    is_zero: bool,
}

impl fmt::Debug for Cochain3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cochain3").field("is_zero", &self.is_zero).finish()
    }
}

impl Cochain3 {
    pub fn zero(gwa: Arc<Gwa>) -> Self {
        Cochain3 { gwa, inner: Arc::new(|_, _, _| GwaElement::zero()), is_zero: true }
    }

    pub fn from_fn<F>(gwa: Arc<Gwa>, f: F) -> Self
    where
        F: Fn(Mono, Mono, Mono) -> GwaElement + Send + Sync + 'static,
    {
        Cochain3 { gwa, inner: Arc::new(f), is_zero: false }
    }

    pub fn eval_basis(&self, a: Mono, b: Mono, c: Mono) -> GwaElement {
        if self.is_zero {
            return GwaElement::zero();
        }
        (self.inner)(a, b, c)
    }

    pub fn eval(&self, u: &GwaElement, v: &GwaElement, w: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        if self.is_zero {
            return out;
        }
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                let cab = &ca * &cb;
                for (c, cc) in w.terms() {
                    out.add_scaled(&self.eval_basis(a, b, c), &(&cab * &cc));
                }
            }
        }
        out
    }

    /// `Σ self_i`.
    pub fn sum(gwa: Arc<Gwa>, parts: Vec<Cochain3>) -> Cochain3 {
        let parts: Vec<Cochain3> = parts.into_iter().filter(|p| !p.is_zero).collect();
        if parts.is_empty() {
            return Cochain3::zero(gwa);
        }
        Cochain3::from_fn(gwa, move |a, b, c| {
            let mut out = GwaElement::zero();
            for p in &parts {
                out.add_assign(&p.eval_basis(a, b, c));
            }
            out
        })
    }

    pub fn difference(&self, other: &Cochain3) -> Cochain3 {
        let (s, o) = (self.clone(), other.clone());
        Cochain3::from_fn(self.gwa.clone(), move |a, b, c| s.eval_basis(a, b, c) - o.eval_basis(a, b, c))
    }
}

/// `bF(a, b, c) = aF(b, c) - F(ab, c) + F(a, bc) - F(a, b)c`.
pub fn hochschild_b(f: &Cochain2) -> Cochain3 {
    let f = f.clone();
    let gwa = f.gwa.clone();
    Cochain3::from_fn(gwa.clone(), move |a, b, c| {
        let (ea, ec) = (GwaElement::mono(a), GwaElement::mono(c));
        let mut out = gwa.mul(&ea, &f.eval_basis(b, c));
        out.add_assign(&-f.eval(&gwa.mul_mono(a, b), &ec));
        out.add_assign(&f.eval(&ea, &gwa.mul_mono(b, c)));
        out.add_assign(&-gwa.mul(&f.eval_basis(a, b), &ec));
        out
    })
}

/// `(F • G)(a1, a2, a3) = F(G(a1, a2), a3) - F(a1, G(a2, a3))`.
pub fn circle(f: &Cochain2, g: &Cochain2) -> Cochain3 {
    if f.provenance == Provenance::Zero || g.provenance == Provenance::Zero {
        return Cochain3::zero(f.gwa.clone());
    }
    let (f, g) = (f.clone(), g.clone());
    Cochain3::from_fn(f.gwa.clone(), move |a, b, c| {
        f.eval(&g.eval_basis(a, b), &GwaElement::mono(c)) - f.eval(&GwaElement::mono(a), &g.eval_basis(b, c))
    })
}

/// All `(a, b)` with `||a|| + ||b|| ≤ window`.
pub fn basis_pairs(gwa: &Gwa, window: usize) -> Vec<(Mono, Mono)> {
    let mut out = Vec::new();
    for a in gwa.basis_window(window) {
        for b in gwa.basis_window(window - gwa.degree_of(a)) {
            out.push((a, b));
        }
    }
    out
}

/// All `(a, b, c)` with `||a|| + ||b|| + ||c|| ≤ window`.
pub fn basis_triples(gwa: &Gwa, window: usize) -> Vec<(Mono, Mono, Mono)> {
    let mut out = Vec::new();
    for (a, b) in basis_pairs(gwa, window) {
        let rest = window - gwa.degree_of(a) - gwa.degree_of(b);
        for c in gwa.basis_window(rest) {
            out.push((a, b, c));
        }
    }
    out
}

fn mono_el(p: usize, q: i64) -> GwaElement {
    GwaElement::mono(Mono::new(p, q))
}

fn poly_el(h: Poly) -> GwaElement {
    GwaElement::from_poly(h)
}

fn zp(p: usize) -> GwaElement {
    mono_el(p, 0)
}

/// `θ_1(1|z^i x_j|1)` as an element of `Tot_1 = 𝒫_{10} ⊕ 𝒫_{01}`.
pub fn theta1(gwa: &Gwa, u: Mono) -> TotElement {
    let one = GwaElement::one();
    let mut e = TotElement::zero(1);
    let mut p01 = TensorElement::zero();
    for k in 1..=u.p {
        p01.add_assign(&TensorElement::pure(&zp(u.p - k), &gwa.mul(&zp(k - 1), &mono_el(0, u.q))));
    }
    e.row1 = Some(PElement { p: 0, q: 1, components: vec![p01] });
    let j = u.q.unsigned_abs() as usize;
    let sign = u.q.signum();
    let mut t = TensorElement::zero();
    for k in 1..=j {
        let l = gwa.mul(&zp(u.p), &mono_el(0, sign * (j - k) as i64));
        t.add_assign(&TensorElement::pure(&l, &gwa.mul(&one, &mono_el(0, sign * (k - 1) as i64))));
    }
    let slot = if u.q >= 0 { 0 } else { 1 };
    e.row0.components[slot] = t;
    e
}

/// `θ_2(1|u|v|1)` as the 4-tuple `(𝒫_{11}, 𝒫_{11}, 𝒫_{20}, 𝒫_{20})`.
pub fn theta2(gwa: &Gwa, u: Mono, v: Mono) -> Result<[TensorElement; 4]> {
    let mut out: [TensorElement; 4] = Default::default();
    let (p, q, i, j) = (u.p, u.q, v.p, v.q);
    if q == 0 {
        return Ok(out);
    }
    let zi = Poly::monomial(Rational::one(), i);
    let left = zp(p);
    let m1 = -Rational::one();
    if (q > 0 && j >= 0) || (q < 0 && j <= 0) {
        let (gen, slot) = if q > 0 { (Gen::X, 0) } else { (Gen::Y, 1) };
        let sd = gwa.twisted_delta(LegMap::sigma_pow(q), LegMap::ID, &zi);
        let prod = gwa.tensor_mul(&sd, &gwa.delta_nu(gen, q.unsigned_abs() as usize));
        out[slot] = gwa.tensor_sandwich(&left, &prod, &mono_el(0, j)).scale(&m1);
        return Ok(out);
    }
    if q.abs() >= 2 {
        return Err(Error::UnsupportedPattern(format!("theta2 on ({u}, {v})")));
    }
    let s = q;
    let sd = gwa.twisted_delta(LegMap::sigma_pow(s), LegMap::ID, &zi);
    let first = gwa.tensor_sandwich(&left, &sd, &mono_el(0, j)).scale(&m1);
    let szi = poly_el(gwa.sigma_pow(&zi, s));
    let second = TensorElement::pure(&gwa.mul(&left, &szi), &mono_el(0, j - j.signum()));
    if q == 1 {
        out[0] = first;
        out[3] = second;
    } else {
        out[1] = first;
        out[2] = second;
    }
    Ok(out)
}

/// `θ_2` packaged as an element of `Tot_2`.
pub fn theta2_tot(gwa: &Gwa, u: Mono, v: Mono) -> Result<TotElement> {
    let [a, b, c, d] = theta2(gwa, u, v)?;
    Ok(TotElement {
        degree: 2,
        row0: PElement { p: 2, q: 0, components: vec![c, d] },
        row1: Some(PElement { p: 1, q: 1, components: vec![a, b] }),
    })
}

/// `Σ_k θ_2(1|u|v|1)_k · m_k` for a degree-2 cochain.
pub fn theta2_pairing(gwa: &Gwa, c: &PerCochain, u: Mono, v: Mono) -> Result<GwaElement> {
    if c.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, got: c.degree });
    }
    let th = theta2(gwa, u, v)?;
    let mut out = GwaElement::zero();
    for (t, m) in th.iter().zip(&c.components) {
        out.add_assign(&gwa.tensor_act(t, &c.module, m));
    }
    Ok(out)
}

/// The values `(F(x,z), F(x,y), F(y,z), F(y,x))` of the cochain paired with `c`.
pub fn generator_data(gwa: &Gwa, c: &PerCochain) -> Result<[GwaElement; 4]> {
    let (x, y, z) = (Mono::new(0, 1), Mono::new(0, -1), Mono::new(1, 0));
    Ok([
        theta2_pairing(gwa, c, x, z)?,
        theta2_pairing(gwa, c, x, y)?,
        theta2_pairing(gwa, c, y, z)?,
        theta2_pairing(gwa, c, y, x)?,
    ])
}

fn phi_sums(gwa: &Gwa) -> Vec<(Rational, usize, usize)> {
    let mut out = Vec::new();
    for (i, a) in gwa.phi().coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for j in 1..=i {
            out.push((a.clone(), i, j));
        }
    }
    out
}

/// `θ'_2`: pulls a 2-cochain back to a degree-2 cochain of `Tot Q`.
pub fn thetaprime2(f: &Cochain2, module: &BimoduleSpec) -> PerCochain {
    let gwa = f.gwa().clone();
    let act = |a: &GwaElement, m: &GwaElement, b: &GwaElement| gwa.act(module, a, m, b);
    let one = GwaElement::one();
    let (x, y, z) = (GwaElement::x(), GwaElement::y(), GwaElement::z());
    let lam = gwa.lambda().clone();
    let li = lam.recip();
    let sz = gwa.sigma_pow(&Poly::z(), 1);
    let lz = z.scale(&lam);
    let phi = poly_el(gwa.phi().clone());
    let phib = poly_el(gwa.phi_bar());
    let f11 = f.eval(&one, &one);

    let m1 = f.eval(&z, &x).scale(&lam) - f.eval(&x, &z);
    let m2 = f.eval(&z, &y).scale(&li) - f.eval(&y, &z);
    let mut m3 = f.eval(&y, &x) + act(&one, &f11, &phi);
    let mut m4 = f.eval(&x, &y) + act(&one, &f11, &phib);
    for (a, i, j) in phi_sums(&gwa) {
        let t3 = act(&one, &f.eval(&zp(i - j), &z), &zp(j - 1));
        m3.add_scaled(&t3, &-a.clone());
        let t4 = act(&one, &f.eval(&poly_el(sz.pow(i - j)), &lz), &poly_el(sz.pow(j - 1)));
        m4.add_scaled(&t4, &-a);
    }
    PerCochain { degree: 2, module: module.clone(), components: vec![m1, m2, m3, m4] }
}

/// `θ'_3`: pulls a 3-cochain back to a degree-3 cochain of `Tot Q`.
pub fn thetaprime3(g: &Cochain3, module: &BimoduleSpec) -> PerCochain {
    let gwa = g.gwa.clone();
    let act = |m: &GwaElement, b: &GwaElement| gwa.act_right(module, m, b);
    let one = GwaElement::one();
    let (x, y, z) = (GwaElement::x(), GwaElement::y(), GwaElement::z());
    let lam = gwa.lambda().clone();
    let li = lam.recip();
    let sz = gwa.sigma_pow(&Poly::z(), 1);
    let lz = z.scale(&lam);
    let phi = poly_el(gwa.phi().clone());
    let phib = poly_el(gwa.phi_bar());
    let g = |a: &GwaElement, b: &GwaElement, c: &GwaElement| g.eval(a, b, c);

    let mut m1 = g(&z, &y, &x) - g(&y, &z, &x).scale(&lam)
        + g(&y, &x, &z)
        + act(&g(&z, &one, &one), &phi)
        + act(&g(&one, &one, &z), &phi);
    let mut m2 = g(&z, &x, &y) - g(&x, &z, &y).scale(&li)
        + g(&x, &y, &z)
        + act(&g(&z, &one, &one), &phib)
        + act(&g(&one, &one, &z), &phib);
    let mut m3 = g(&x, &y, &x) + act(&g(&x, &one, &one), &phi) + act(&g(&one, &one, &x), &phi);
    let mut m4 = g(&y, &x, &y) + act(&g(&y, &one, &one), &phib) + act(&g(&one, &one, &y), &phib);
    for (a, i, j) in phi_sums(&gwa) {
        let na = -a;
        let zij = zp(i - j);
        let zj = zp(j - 1);
        let szij = poly_el(sz.pow(i - j));
        let szj = poly_el(sz.pow(j - 1));
        m1.add_scaled(&act(&g(&z, &zij, &z), &zj), &na);
        m2.add_scaled(&act(&g(&z, &szij, &lz), &szj), &na);
        let t3 = g(&x, &zij, &z) - g(&szij, &x, &z) + g(&szij, &lz, &x);
        m3.add_scaled(&act(&t3, &zj), &na);
        let t4 = g(&y, &szij, &lz) - g(&zij, &y, &lz) + g(&zij, &z, &y);
        m4.add_scaled(&act(&t4, &szj), &na);
    }
    PerCochain { degree: 3, module: module.clone(), components: vec![m1, m2, m3, m4] }
}

struct Determined {
    gwa: Arc<Gwa>,
    target: Cochain3,
    data: [GwaElement; 4],
    memo: RwLock<HashMap<(i64, usize, i64), GwaElement>>,
}

impl Determined {
    fn f(&self, a: Mono, b: Mono) -> GwaElement {
        if a.p > 0 {
            let rest = self.f(Mono::new(0, a.q), b);
            return rest.left_poly(&Poly::monomial(Rational::one(), a.p));
        }
        let (q, i, j) = (a.q, b.p, b.q);
        if q == 0 || (i == 0 && (j == 0 || (j > 0) == (q > 0))) {
            return GwaElement::zero();
        }
        if let Some(v) = self.memo.read().unwrap().get(&(q, i, j)) {
            return v.clone();
        }
        let v = self.compute(q, i, j);
        self.memo.write().unwrap().insert((q, i, j), v.clone());
        v
    }

    fn f_el(&self, a: Mono, v: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (b, c) in v.terms() {
            out.add_scaled(&self.f(a, b), &c);
        }
        out
    }

    fn t(&self, a: Mono, b: Mono, c: Mono) -> GwaElement {
        self.target.eval_basis(a, b, c)
    }

    fn compute(&self, q: i64, i: usize, j: i64) -> GwaElement {
        let gwa = &self.gwa;
        let s = q.signum();
        let g = Mono::new(0, s);
        let z = Mono::new(1, 0);
        if q.abs() >= 2 {
            // bF(g^{|q|-1}, g, w)
            let w = Mono::new(i, j);
            let prev = Mono::new(0, q - s);
            let gw = gwa.mul_mono(g, w);
            let mut out = gwa.mul(&GwaElement::mono(prev), &self.f(g, w));
            out.add_assign(&self.f_el(prev, &gw));
            out.add_assign(&-self.t(prev, g, w));
            return out;
        }
        let [vxz, vxy, vyz, vyx] = &self.data;
        let (v_z, v_opp) = if s > 0 { (vxz, vxy) } else { (vyz, vyx) };
        let sz = gwa.sigma_pow(&Poly::z(), s);
        match (i, j) {
            (1, 0) => v_z.clone(),
            (i, 0) => {
                let mut out = self.t(g, z, Mono::new(i - 1, 0));
                out.add_assign(&self.f(g, Mono::new(i - 1, 0)).left_poly(&sz));
                out.add_assign(&gwa.right_poly(v_z, &Poly::monomial(Rational::one(), i - 1)));
                out
            }
            (0, j) if j == -s => v_opp.clone(),
            (0, j) => {
                let opp = Mono::new(0, -s);
                let rest = Mono::new(0, j + s);
                let mut out = self.t(g, opp, rest);
                out.add_assign(&gwa.mul(v_opp, &GwaElement::mono(rest)));
                out
            }
            (i, j) => {
                let zi = Mono::new(i, 0);
                let xj = Mono::new(0, j);
                let mut out = self.t(g, zi, xj);
                if (j > 0) != (s > 0) {
                    out.add_assign(&self.f(g, xj).left_poly(&sz.pow(i)));
                }
                out.add_assign(&gwa.mul(&self.f(g, zi), &GwaElement::mono(xj)));
                out
            }
        }
    }
}

/// The unique 2-cochain satisfying conditions (a), (b) with `bF = target`
/// and the given values on `(x,z)`, `(x,y)`, `(y,z)`, `(y,x)`.
pub fn determine_f(
    gwa: Arc<Gwa>,
    target: Cochain3,
    vxz: GwaElement,
    vxy: GwaElement,
    vyz: GwaElement,
    vyx: GwaElement,
) -> Cochain2 {
    let det = Arc::new(Determined {
        gwa: gwa.clone(),
        target,
        data: [vxz, vxy, vyz, vyx],
        memo: RwLock::new(HashMap::new()),
    });
    Cochain2 {
        gwa,
        inner: Arc::new(move |a, b| det.f(a, b)),
        provenance: Provenance::DeterminedByRecursion,
        normalized: true,
    }
}

/// Basis pairs violating conditions (a) or (b) among those with degree sum ≤ `window`.
pub fn condition_violations(f: &Cochain2, window: usize) -> Vec<(Mono, Mono)> {
    let gwa = f.gwa();
    let mut bad = Vec::new();
    for (a, b) in basis_pairs(gwa, window) {
        let v = f.eval_basis(a, b);
        let unit = (a == Mono::ONE || b == Mono::ONE) && !v.is_zero();
        let zlin = a.p > 0
            && v != f.eval_basis(Mono::new(a.p - 1, a.q), b).left_poly(&Poly::z());
        let pure = a.p == 0 && b.p == 0 && a.q != 0 && (a.q > 0) == (b.q > 0) && !v.is_zero();
        if unit || zlin || pure {
            bad.push((a, b));
        }
    }
    bad
}
