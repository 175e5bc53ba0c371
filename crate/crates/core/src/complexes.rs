//! The periodic bimodule complex `C` and the homotopy double complex `𝒫`
//! lying over it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwa::{Gwa, GwaElement, LegMap, Mono, TensorElement};
use crate::linalg::{Echelon, SparseVec};
use crate::scalars::{Poly, Rational};

/// `Σ_i x_i ⊗ v_i` in `A ⊗_B A`, `A^σ ⊗_B A` (`shift = -1`) or
/// `A ⊗_B ^σA` (`shift = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardTensor {
    pub shift: i64,
    terms: BTreeMap<i64, GwaElement>,
}

impl StandardTensor {
    pub fn zero(shift: i64) -> Self {
        StandardTensor { shift, terms: BTreeMap::new() }
    }

    /// `x_i ⊗ v`.
    pub fn basic(shift: i64, i: i64, v: GwaElement) -> Self {
        let mut t = StandardTensor::zero(shift);
        t.add_basic(i, &v);
        t
    }

    /// `u ⊗ v` rewritten into standard form.
    pub fn pure(gwa: &Gwa, shift: i64, u: &GwaElement, v: &GwaElement) -> Self {
        let mut t = StandardTensor::zero(shift);
        for (&q, h) in u.components() {
            let moved = gwa.sigma_pow(h, shift - q);
            t.add_basic(q, &gwa.mul(&GwaElement::from_poly(moved), v));
        }
        t
    }

    fn add_basic(&mut self, i: i64, v: &GwaElement) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_default();
        e.add_assign(v);
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, GwaElement> {
        &self.terms
    }

    /// The standard coefficients `b_ij` of `x_i ⊗ b_ij x_j`.
    pub fn coefficients(&self) -> BTreeMap<(i64, i64), Poly> {
        let mut out = BTreeMap::new();
        for (&i, v) in &self.terms {
            for (&j, b) in v.components() {
                out.insert((i, j), b.clone());
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &StandardTensor, c: &Rational) {
        for (&i, v) in &other.terms {
            self.add_basic(i, &v.scale(c));
        }
    }

    /// `a · t · b`.
    pub fn act(&self, gwa: &Gwa, a: &GwaElement, b: &GwaElement) -> StandardTensor {
        let mut out = StandardTensor::zero(self.shift);
        for (&i, v) in &self.terms {
            let left = gwa.mul(a, &GwaElement::mono(Mono::new(0, i)));
            let right = gwa.mul(v, b);
            let t = StandardTensor::pure(gwa, self.shift, &left, &right);
            out.add_scaled(&t, &Rational::one());
        }
        out
    }

    /// Largest `(l+1)|i| + ||v||` over the terms.
    pub fn filtration_degree(&self, l: usize) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(&i, v)| v.filtration_degree(l).map(|d| d + (l + 1) * i.unsigned_abs() as usize))
            .max()
    }
}

/// An element of `C_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CElement {
    pub degree: usize,
    pub components: Vec<StandardTensor>,
}

/// Twist shifts of the summands of `C_i`.
pub fn c_shifts(i: usize) -> Vec<i64> {
    match i {
        0 => vec![0],
        i if i % 2 == 1 => vec![-1, 1],
        _ => vec![0, 0],
    }
}

impl CElement {
    pub fn zero(degree: usize) -> Self {
        CElement { degree, components: c_shifts(degree).into_iter().map(StandardTensor::zero).collect() }
    }

    /// The generator `1 ⊗ 1` of summand `k`.
    pub fn generator(degree: usize, k: usize) -> Self {
        let mut e = CElement::zero(degree);
        let s = e.components[k].shift;
        e.components[k] = StandardTensor::basic(s, 0, GwaElement::one());
        e
    }

    pub fn num_generators(degree: usize) -> usize {
        c_shifts(degree).len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(StandardTensor::is_zero)
    }

    pub fn add_scaled(&mut self, other: &CElement, c: &Rational) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, c);
        }
    }

    pub fn filtration_degree(&self, l: usize) -> Option<usize> {
        self.components.iter().filter_map(|t| t.filtration_degree(l)).max()
    }

    fn check_shape(&self) -> Result<()> {
        let shifts = c_shifts(self.degree);
        if self.components.len() != shifts.len()
            || self.components.iter().zip(&shifts).any(|(t, s)| t.shift != *s)
        {
            return Err(Error::ShapeMismatch(format!("not an element of C_{}", self.degree)));
        }
        Ok(())
    }
}

/// `d_i` on the generators of `C_i`.
fn c_generator_images(gwa: &Gwa, i: usize) -> Vec<CElement> {
    let one = GwaElement::one();
    let x = GwaElement::x();
    let y = GwaElement::y();
    let shifts = c_shifts(i - 1);
    let mk = |pairs: Vec<Vec<(GwaElement, GwaElement, i64)>>| -> CElement {
        let components = pairs
            .into_iter()
            .zip(&shifts)
            .map(|(terms, &s)| {
                let mut t = StandardTensor::zero(s);
                for (u, v, c) in terms {
                    t.add_scaled(&StandardTensor::pure(gwa, s, &u, &v), &Rational::from_int(c));
                }
                t
            })
            .collect();
        CElement { degree: i - 1, components }
    };
    if i == 1 {
        vec![
            mk(vec![vec![(x.clone(), one.clone(), 1), (one.clone(), x.clone(), -1)]]),
            mk(vec![vec![(y.clone(), one.clone(), 1), (one.clone(), y.clone(), -1)]]),
        ]
    } else if i.is_multiple_of(2) {
        vec![
            mk(vec![vec![(y.clone(), one.clone(), 1)], vec![(one.clone(), x.clone(), 1)]]),
            mk(vec![vec![(one.clone(), y.clone(), 1)], vec![(x.clone(), one.clone(), 1)]]),
        ]
    } else {
        vec![
            mk(vec![vec![(x.clone(), one.clone(), 1)], vec![(one.clone(), x.clone(), -1)]]),
            mk(vec![vec![(one.clone(), y.clone(), -1)], vec![(y.clone(), one.clone(), 1)]]),
        ]
    }
}

/// `d_i : C_i → C_{i-1}`.
pub fn c_diff(gwa: &Gwa, i: usize, e: &CElement) -> Result<CElement> {
    if i == 0 || e.degree != i {
        return Err(Error::DegreeMismatch { expected: i, got: e.degree });
    }
    e.check_shape()?;
    let images = c_generator_images(gwa, i);
    let mut out = CElement::zero(i - 1);
    for (k, comp) in e.components.iter().enumerate() {
        for (&a, v) in comp.terms() {
            let xa = GwaElement::mono(Mono::new(0, a));
            for (o, img) in out.components.iter_mut().zip(&images[k].components) {
                o.add_scaled(&img.act(gwa, &xa, v), &Rational::one());
            }
        }
    }
    Ok(out)
}

/// Basis of `C_i` elements `x_a ⊗ m` (per summand) with `(l+1)|a| + ||m|| ≤ n`.
pub fn c_basis_window(gwa: &Gwa, i: usize, n: usize) -> Vec<(usize, i64, Mono)> {
    let w = gwa.l() + 1;
    let amax = (n / w) as i64;
    let mut out = Vec::new();
    for k in 0..CElement::num_generators(i) {
        for a in -amax..=amax {
            let rest = n - w * a.unsigned_abs() as usize;
            for m in gwa.basis_window(rest) {
                out.push((k, a, m));
            }
        }
    }
    out
}

pub fn c_basis_element(i: usize, (k, a, m): (usize, i64, Mono)) -> CElement {
    let mut e = CElement::zero(i);
    let s = e.components[k].shift;
    e.components[k] = StandardTensor::basic(s, a, GwaElement::mono(m));
    e
}

fn c_to_sparse(e: &CElement) -> SparseVec<(usize, i64, Mono)> {
    let mut out = SparseVec::new();
    for (k, t) in e.components.iter().enumerate() {
        for (&a, v) in t.terms() {
            for (m, c) in v.terms() {
                out.insert((k, a, m), c);
            }
        }
    }
    out
}

/// A preimage of the cycle `target ∈ C_i` under `d_{i+1}`, searched in
/// windows `window + (l+1)·t` for `t = 1, 2, 3`.
pub fn c_solve_preimage(gwa: &Gwa, i: usize, target: &CElement, window: usize) -> Result<Option<CElement>> {
    if i == 0 || target.degree != i {
        return Err(Error::DegreeMismatch { expected: i, got: target.degree });
    }
    if !c_diff(gwa, i, target)?.is_zero() {
        return Err(Error::NotCycle);
    }
    if target.is_zero() {
        return Ok(Some(CElement::zero(i + 1)));
    }
    let goal = c_to_sparse(target);
    for attempt in 1..=3 {
        let n = window + attempt * (gwa.l() + 1);
        let basis = c_basis_window(gwa, i + 1, n);
        let mut ech = Echelon::new();
        for &b in &basis {
            ech.insert(&c_to_sparse(&c_diff(gwa, i + 1, &c_basis_element(i + 1, b))?));
        }
        if let Some(combo) = ech.solve(&goal) {
            let mut pre = CElement::zero(i + 1);
            for (idx, c) in combo {
                pre.add_scaled(&c_basis_element(i + 1, basis[idx]), &c);
            }
            return Ok(Some(pre));
        }
    }
    Ok(None)
}

/// An element of `𝒫_{pq}`: one copy of `A ⊗ A` for `p = 0`, two otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PElement {
    pub p: usize,
    pub q: usize,
    pub components: Vec<TensorElement>,
}

impl PElement {
    pub fn rank(p: usize) -> usize {
        if p == 0 {
            1
        } else {
            2
        }
    }

    pub fn zero(p: usize, q: usize) -> Self {
        PElement { p, q, components: vec![TensorElement::zero(); PElement::rank(p)] }
    }

    pub fn generator(p: usize, q: usize, k: usize) -> Self {
        let mut e = PElement::zero(p, q);
        e.components[k] = TensorElement::unit();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TensorElement::is_zero)
    }

    pub fn add_scaled(&mut self, other: &PElement, c: &Rational) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, c);
        }
    }

    pub fn sum(&self, other: &PElement) -> PElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    fn check(&self, p: usize, q: usize) -> Result<()> {
        if self.p != p || self.q != q || self.components.len() != PElement::rank(p) {
            return Err(Error::ShapeMismatch(format!(
                "expected an element of P_{{{p}{q}}}, got P_{{{}{}}} with {} components",
                self.p,
                self.q,
                self.components.len()
            )));
        }
        Ok(())
    }
}

/// The images of the generators of a free `A^e`-module map, by source
/// generator then target component.
pub type GeneratorImages = Vec<Vec<TensorElement>>;

fn pure(u: &GwaElement, v: &GwaElement) -> TensorElement {
    TensorElement::pure(u, v)
}

fn lin(terms: &[(&GwaElement, &GwaElement, Rational)]) -> TensorElement {
    let mut t = TensorElement::zero();
    for (u, v, c) in terms {
        t.add_scaled(&pure(u, v), c);
    }
    t
}

/// Generator images of `d^v_p : 𝒫_{p1} → 𝒫_{p0}`.
pub fn dv_images(gwa: &Gwa, p: usize) -> GeneratorImages {
    let one = GwaElement::one();
    let z = GwaElement::z();
    let r1 = Rational::one();
    let m1 = -Rational::one();
    let zz = lin(&[(&z, &one, r1.clone()), (&one, &z, m1.clone())]);
    if p == 0 {
        return vec![vec![zz]];
    }
    let zero = TensorElement::zero();
    if p % 2 == 1 {
        let sz = GwaElement::from_poly(gwa.sigma_pow(&Poly::z(), 1));
        let siz = GwaElement::from_poly(gwa.sigma_pow(&Poly::z(), -1));
        vec![
            vec![lin(&[(&sz, &one, r1.clone()), (&one, &z, m1.clone())]), zero.clone()],
            vec![zero, lin(&[(&siz, &one, r1), (&one, &z, m1)])],
        ]
    } else {
        vec![vec![zz.clone(), zero.clone()], vec![zero, zz]]
    }
}

/// Generator images of `d^h_{pq} : 𝒫_{pq} → 𝒫_{p-1,q}`, `p ≥ 1`.
pub fn dh_images(gwa: &Gwa, p: usize, q: usize) -> GeneratorImages {
    assert!(p >= 1 && q <= 1);
    let one = GwaElement::one();
    let x = GwaElement::x();
    let y = GwaElement::y();
    let lam = gwa.lambda().clone();
    let li = lam.recip();
    let r1 = Rational::one();
    let m1 = -Rational::one();
    let t = |u: &GwaElement, v: &GwaElement, c: &Rational| pure(u, v).scale(c);
    match (p, q) {
        (1, 0) => vec![
            vec![lin(&[(&x, &one, r1.clone()), (&one, &x, m1.clone())])],
            vec![lin(&[(&y, &one, r1.clone()), (&one, &y, m1.clone())])],
        ],
        (1, 1) => vec![
            vec![lin(&[(&x, &one, m1.clone()), (&one, &x, lam.clone())])],
            vec![lin(&[(&y, &one, m1.clone()), (&one, &y, li.clone())])],
        ],
        (p, 0) if p % 2 == 0 => vec![
            vec![t(&y, &one, &r1), t(&one, &x, &r1)],
            vec![t(&one, &y, &r1), t(&x, &one, &r1)],
        ],
        (_, 0) => vec![
            vec![t(&x, &one, &r1), t(&one, &x, &m1)],
            vec![t(&one, &y, &m1), t(&y, &one, &r1)],
        ],
        (p, _) if p % 2 == 0 => vec![
            vec![t(&y, &one, &m1), t(&one, &x, &-lam.clone())],
            vec![t(&one, &y, &-li.clone()), t(&x, &one, &m1)],
        ],
        _ => vec![
            vec![t(&x, &one, &m1), t(&one, &x, &lam)],
            vec![t(&one, &y, &li), t(&y, &one, &m1)],
        ],
    }
}

/// Generator images of `r_p : 𝒫_{p0} → 𝒫_{p-2,1}`, `p ≥ 2`.
pub fn r_images(gwa: &Gwa, p: usize) -> GeneratorImages {
    assert!(p >= 2);
    let phi = gwa.phi();
    let lam = gwa.lambda().clone();
    let m1 = -Rational::one();
    let d = gwa.delta(phi).scale(&m1);
    let ss = gwa.twisted_delta(LegMap::SIGMA, LegMap::SIGMA, phi).scale(&-lam.clone());
    let zero = TensorElement::zero();
    if p == 2 {
        vec![vec![d], vec![ss]]
    } else if p % 2 == 1 {
        let s_ = gwa.twisted_delta(LegMap::SIGMA, LegMap::ID, phi).scale(&m1);
        let _s = gwa.twisted_delta(LegMap::ID, LegMap::SIGMA, phi).scale(&-lam);
        vec![vec![s_, zero.clone()], vec![zero, _s]]
    } else {
        vec![vec![d, zero.clone()], vec![zero, ss]]
    }
}

/// Applies the bimodule map with the given generator images.
pub fn apply_images(gwa: &Gwa, images: &GeneratorImages, e: &PElement, p: usize, q: usize) -> PElement {
    let mut out = PElement::zero(p, q);
    for (k, comp) in e.components.iter().enumerate() {
        for (a, right) in comp.by_left() {
            let left = GwaElement::mono(a);
            for (o, img) in out.components.iter_mut().zip(&images[k]) {
                o.add_assign(&gwa.tensor_sandwich(&left, img, &right));
            }
        }
    }
    out
}

/// `d^v_p : 𝒫_{p1} → 𝒫_{p0}`.
pub fn p_dv(gwa: &Gwa, p: usize, e: &PElement) -> Result<PElement> {
    e.check(p, 1)?;
    Ok(apply_images(gwa, &dv_images(gwa, p), e, p, 0))
}

/// `d^h_{pq} : 𝒫_{pq} → 𝒫_{p-1,q}`.
pub fn p_dh(gwa: &Gwa, p: usize, q: usize, e: &PElement) -> Result<PElement> {
    if p == 0 || q > 1 {
        return Err(Error::ShapeMismatch(format!("no d^h out of P_{{{p}{q}}}")));
    }
    e.check(p, q)?;
    Ok(apply_images(gwa, &dh_images(gwa, p, q), e, p - 1, q))
}

/// `r_p : 𝒫_{p0} → 𝒫_{p-2,1}`.
pub fn p_r(gwa: &Gwa, p: usize, e: &PElement) -> Result<PElement> {
    if p < 2 {
        return Err(Error::ShapeMismatch(format!("no r out of P_{{{p}0}}")));
    }
    e.check(p, 0)?;
    Ok(apply_images(gwa, &r_images(gwa, p), e, p - 2, 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdcEntry {
    pub identity: String,
    pub position: (usize, usize),
    pub generator: usize,
    pub pass: bool,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<PElement>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdcReport {
    pub entries: Vec<HdcEntry>,
}

impl HdcReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    fn record(&mut self, identity: &str, position: (usize, usize), generator: usize, residual: PElement) {
        let pass = residual.is_zero();
        self.entries.push(HdcEntry {
            identity: identity.into(),
            position,
            generator,
            pass,
            vacuous: false,
            residual: (!pass).then_some(residual),
        });
    }

    fn vacuous(&mut self, identity: &str, position: (usize, usize)) {
        self.entries.push(HdcEntry {
            identity: identity.into(),
            position,
            generator: 0,
            pass: true,
            vacuous: true,
            residual: None,
        });
    }
}

/// Checks the homotopy double complex identities on every generator of
/// `𝒫_{pq}` with `p ≤ max_p`.
pub fn verify_hdc(gwa: &Gwa, max_p: usize) -> Result<HdcReport> {
    let mut rep = HdcReport::default();
    rep.vacuous("dv dv = 0", (0, 1));
    rep.vacuous("r r = 0", (4, 0));
    for p in 0..=max_p {
        for k in 0..PElement::rank(p) {
            if p >= 1 {
                let g = PElement::generator(p, 1, k);
                let a = p_dh(gwa, p, 0, &p_dv(gwa, p, &g)?)?;
                let b = p_dv(gwa, p - 1, &p_dh(gwa, p, 1, &g)?)?;
                rep.record("dh dv + dv dh = 0", (p, 1), k, a.sum(&b));
            }
            if p >= 2 {
                let g = PElement::generator(p, 0, k);
                let a = p_dh(gwa, p - 1, 0, &p_dh(gwa, p, 0, &g)?)?;
                let b = p_dv(gwa, p - 2, &p_r(gwa, p, &g)?)?;
                rep.record("dh dh + dv r = 0", (p, 0), k, a.sum(&b));

                let g1 = PElement::generator(p, 1, k);
                let a = p_dh(gwa, p - 1, 1, &p_dh(gwa, p, 1, &g1)?)?;
                let b = p_r(gwa, p, &p_dv(gwa, p, &g1)?)?;
                rep.record("dh dh + r dv = 0", (p, 1), k, a.sum(&b));
            }
            if p >= 3 {
                let g = PElement::generator(p, 0, k);
                let a = p_dh(gwa, p - 2, 1, &p_r(gwa, p, &g)?)?;
                let b = p_r(gwa, p - 1, &p_dh(gwa, p, 0, &g)?)?;
                rep.record("dh r + r dh = 0", (p, 0), k, a.sum(&b));
            }
        }
    }
    Ok(rep)
}

/// An element of `Tot_n 𝒫 = 𝒫_{n0} ⊕ 𝒫_{n-1,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotElement {
    pub degree: usize,
    pub row0: PElement,
    pub row1: Option<PElement>,
}

impl TotElement {
    pub fn zero(n: usize) -> Self {
        TotElement { degree: n, row0: PElement::zero(n, 0), row1: (n >= 1).then(|| PElement::zero(n - 1, 1)) }
    }

    /// Generators of `Tot_n`, first those of `𝒫_{n0}` then of `𝒫_{n-1,1}`.
    pub fn generators(n: usize) -> Vec<TotElement> {
        let mut out = Vec::new();
        for k in 0..PElement::rank(n) {
            let mut e = TotElement::zero(n);
            e.row0 = PElement::generator(n, 0, k);
            out.push(e);
        }
        if n >= 1 {
            for k in 0..PElement::rank(n - 1) {
                let mut e = TotElement::zero(n);
                e.row1 = Some(PElement::generator(n - 1, 1, k));
                out.push(e);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.row0.is_zero() && self.row1.as_ref().is_none_or(PElement::is_zero)
    }
}

/// `d = d^v + d^h + r` on `Tot_n`, `n ≥ 1`.
pub fn tot_diff(gwa: &Gwa, e: &TotElement) -> Result<TotElement> {
    let n = e.degree;
    if n == 0 {
        return Err(Error::ShapeMismatch("Tot_0 has no outgoing differential".into()));
    }
    let mut out = TotElement::zero(n - 1);
    out.row0 = p_dh(gwa, n, 0, &e.row0)?;
    if let Some(b) = &e.row1 {
        out.row0 = out.row0.sum(&p_dv(gwa, n - 1, b)?);
    }
    if n >= 2 {
        let mut r1 = p_r(gwa, n, &e.row0)?;
        if let Some(b) = &e.row1 {
            r1 = r1.sum(&p_dh(gwa, n - 1, 1, b)?);
        }
        out.row1 = Some(r1);
    }
    Ok(out)
}

/// The multiplication map `𝒫_{00} = A ⊗ A → A`.
pub fn augmentation(gwa: &Gwa, e: &PElement) -> GwaElement {
    let mut out = GwaElement::zero();
    for (a, right) in e.components[0].by_left() {
        out.add_assign(&gwa.mul(&GwaElement::mono(a), &right));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwa::GwaParams;

    fn algebra() -> Gwa {
        Gwa::new(GwaParams::new(Rational::from_int(2), Rational::from_int(1), Poly::from_ints(&[-1, 0, 1])).unwrap())
    }

    #[test]
    fn d1_and_d2_on_generators() {
        let g = algebra();
        let one = GwaElement::one();
        let x = GwaElement::x();
        let y = GwaElement::y();
        let d1 = c_diff(&g, 1, &CElement::generator(1, 0)).unwrap();
        let mut expect = StandardTensor::pure(&g, 0, &x, &one);
        expect.add_scaled(&StandardTensor::pure(&g, 0, &one, &x), &-Rational::one());
        assert_eq!(d1.components[0], expect);
        let d2 = c_diff(&g, 2, &CElement::generator(2, 0)).unwrap();
        assert_eq!(d2.components[0], StandardTensor::pure(&g, -1, &y, &one));
        assert_eq!(d2.components[1], StandardTensor::pure(&g, 1, &one, &x));
    }

    #[test]
    fn c_diff_squares_to_zero() {
        let g = algebra();
        for i in 2..=6 {
            for k in 0..2 {
                let e = c_diff(&g, i, &CElement::generator(i, k)).unwrap();
                assert!(c_diff(&g, i - 1, &e).unwrap().is_zero(), "i={i} k={k}");
            }
        }
    }

    #[test]
    fn standard_form_respects_balancing() {
        // h x_i ⊗ v = x_i ⊗ σ^{s-i}(h) v
        let g = algebra();
        let z = GwaElement::z();
        for s in [-1, 0, 1] {
            let lhs = StandardTensor::pure(&g, s, &g.mul(&GwaElement::x(), &z), &GwaElement::y());
            let rhs = StandardTensor::pure(&g, s, &GwaElement::x(), &g.mul(&GwaElement::from_poly(g.sigma_pow(&Poly::z(), s)), &GwaElement::y()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn p_examples() {
        let g = algebra();
        let one = GwaElement::one();
        let z = GwaElement::z();
        let dv0 = p_dv(&g, 0, &PElement::generator(0, 1, 0)).unwrap();
        assert_eq!(dv0.components[0], pure(&z, &one).difference(&pure(&one, &z)));
        let r3 = p_r(&g, 3, &PElement::generator(3, 0, 0)).unwrap();
        assert_eq!(r3.components[0], g.twisted_delta(LegMap::SIGMA, LegMap::ID, g.phi()).neg());
        assert!(r3.components[1].is_zero());
        assert!(p_dh(&g, 2, 1, &PElement::zero(2, 1)).unwrap().is_zero());
        assert!(p_dh(&g, 2, 0, &PElement::zero(3, 0)).is_err());
    }

    #[test]
    fn hdc_identities_hold() {
        let g = algebra();
        let rep = verify_hdc(&g, 6).unwrap();
        let bad: Vec<_> = rep.entries.iter().filter(|e| !e.pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn tot_squares_to_zero_and_augments() {
        let g = algebra();
        for n in 2..=6 {
            for e in TotElement::generators(n) {
                let d = tot_diff(&g, &e).unwrap();
                assert!(tot_diff(&g, &d).unwrap().is_zero(), "n={n}");
            }
        }
        for e in TotElement::generators(1) {
            assert!(augmentation(&g, &tot_diff(&g, &e).unwrap().row0).is_zero());
        }
    }

    #[test]
    fn preimage_round_trip() {
        let g = algebra();
        let src = c_basis_element(2, (1, -1, Mono::new(1, 1)));
        let target = c_diff(&g, 2, &src).unwrap();
        let pre = c_solve_preimage(&g, 1, &target, 6).unwrap().unwrap();
        assert_eq!(c_diff(&g, 2, &pre).unwrap(), target);
        assert!(c_solve_preimage(&g, 1, &CElement::generator(1, 0), 4).is_err());
    }
}
