//! The periodic cochain complex `Tot Q = Hom_{A^e}(Tot 𝒫, M)` with the
//! degree-3 contraction and the degree-2 splitting through `f` and `g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwa::{BimoduleSpec, Gwa, GwaElement, LegMap, Mono, TensorElement};
use crate::linalg::{Echelon, SparseVec};
use crate::scalars::{BezoutPair, Poly, Rational};

/// A cochain of `Tot Q` of the given degree.
///
/// Components are `[m]` in degree 0, `[m, m1, m2]` in degree 1 and
/// `[m1, m2, m3, m4]` from degree 2 on, where the first block lies in
/// `Q^{n-1,1}` and the last block in `Q^{n,0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerCochain {
    pub degree: usize,
    pub module: BimoduleSpec,
    pub components: Vec<GwaElement>,
}

pub fn cochain_len(degree: usize) -> usize {
    match degree {
        0 => 1,
        1 => 3,
        _ => 4,
    }
}

impl PerCochain {
    pub fn new(degree: usize, module: BimoduleSpec, components: Vec<GwaElement>) -> Result<Self> {
        if components.len() != cochain_len(degree) {
            return Err(Error::ShapeMismatch(format!(
                "a degree {degree} cochain has {} components, got {}",
                cochain_len(degree),
                components.len()
            )));
        }
        Ok(PerCochain { degree, module, components })
    }

    pub fn zero(degree: usize, module: BimoduleSpec) -> Self {
        PerCochain { degree, module, components: vec![GwaElement::zero(); cochain_len(degree)] }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GwaElement::is_zero)
    }

    pub fn add_scaled(&mut self, other: &PerCochain, c: &Rational) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, c);
        }
    }

    pub fn sum(&self, other: &PerCochain) -> PerCochain {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn difference(&self, other: &PerCochain) -> PerCochain {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    fn split(&self) -> (&[GwaElement], &[GwaElement]) {
        match self.degree {
            0 => (&[], &self.components[..]),
            1 => (&self.components[..1], &self.components[1..]),
            _ => (&self.components[..2], &self.components[2..]),
        }
    }

    pub fn filtration_degree(&self, l: usize) -> Option<usize> {
        self.components.iter().filter_map(|m| m.filtration_degree(l)).max()
    }

    pub fn to_sparse(&self) -> SparseVec<(usize, Mono)> {
        let mut out = SparseVec::new();
        for (k, m) in self.components.iter().enumerate() {
            for (mono, c) in m.terms() {
                out.insert((k, mono), c);
            }
        }
        out
    }
}

/// Module actions of one coefficient bimodule.
pub struct Ops<'a> {
    pub gwa: &'a Gwa,
    pub module: &'a BimoduleSpec,
    x: GwaElement,
    y: GwaElement,
    z: GwaElement,
    sz: GwaElement,
    lam: Rational,
    lam_inv: Rational,
}

impl<'a> Ops<'a> {
    pub fn new(gwa: &'a Gwa, module: &'a BimoduleSpec) -> Self {
        let lam = gwa.lambda().clone();
        Ops {
            gwa,
            module,
            x: GwaElement::x(),
            y: GwaElement::y(),
            z: GwaElement::z(),
            sz: GwaElement::from_poly(gwa.sigma_pow(&Poly::z(), 1)),
            lam_inv: lam.recip(),
            lam,
        }
    }

    /// `a · m`.
    pub fn l(&self, a: &GwaElement, m: &GwaElement) -> GwaElement {
        self.gwa.act_left(self.module, a, m)
    }

    /// `m · b`.
    pub fn r(&self, m: &GwaElement, b: &GwaElement) -> GwaElement {
        self.gwa.act_right(self.module, m, b)
    }

    /// `T · m`.
    pub fn t(&self, t: &TensorElement, m: &GwaElement) -> GwaElement {
        self.gwa.tensor_act(t, self.module, m)
    }

    fn delta(&self, f: LegMap, g: LegMap) -> TensorElement {
        self.gwa.twisted_delta(f, g, self.gwa.phi())
    }

    /// `∂_h^{p0} : Q^{p0} → Q^{p+1,0}`.
    pub fn dh0(&self, p: usize, m: &[GwaElement]) -> Vec<GwaElement> {
        let (x, y) = (&self.x, &self.y);
        if p == 0 {
            let m = &m[0];
            return vec![self.l(x, m) - self.r(m, x), self.l(y, m) - self.r(m, y)];
        }
        let (m1, m2) = (&m[0], &m[1]);
        if p % 2 == 1 {
            vec![self.l(y, m1) + self.r(m2, x), self.r(m1, y) + self.l(x, m2)]
        } else {
            vec![self.l(x, m1) - self.r(m2, x), self.l(y, m2) - self.r(m1, y)]
        }
    }

    /// `∂_h^{p1} : Q^{p1} → Q^{p+1,1}`.
    pub fn dh1(&self, p: usize, m: &[GwaElement]) -> Vec<GwaElement> {
        let (x, y, lam, li) = (&self.x, &self.y, &self.lam, &self.lam_inv);
        if p == 0 {
            let m = &m[0];
            return vec![
                self.r(m, x).scale(lam) - self.l(x, m),
                self.r(m, y).scale(li) - self.l(y, m),
            ];
        }
        let (m1, m2) = (&m[0], &m[1]);
        if p % 2 == 1 {
            vec![
                -(self.l(y, m1) + self.r(m2, x).scale(lam)),
                -(self.r(m1, y).scale(li) + self.l(x, m2)),
            ]
        } else {
            vec![
                self.r(m2, x).scale(lam) - self.l(x, m1),
                self.r(m1, y).scale(li) - self.l(y, m2),
            ]
        }
    }

    /// `∂_v^p : Q^{p0} → Q^{p1}`.
    pub fn dv(&self, p: usize, m: &[GwaElement]) -> Vec<GwaElement> {
        let (z, sz, li) = (&self.z, &self.sz, &self.lam_inv);
        if p == 0 {
            let m = &m[0];
            return vec![self.l(z, m) - self.r(m, z)];
        }
        let (m1, m2) = (&m[0], &m[1]);
        if p % 2 == 1 {
            vec![
                self.l(sz, m1) - self.r(m1, z),
                (self.l(z, m2) - self.r(m2, sz)).scale(li),
            ]
        } else {
            vec![
                self.l(z, m1) - self.r(m1, z),
                (self.l(sz, m2) - self.r(m2, sz)).scale(li),
            ]
        }
    }

    /// `s^p : Q^{p1} → Q^{p+2,0}`.
    pub fn s(&self, p: usize, m: &[GwaElement]) -> Vec<GwaElement> {
        let nl = -self.lam.clone();
        let m1 = -Rational::one();
        let d = self.delta(LegMap::ID, LegMap::ID);
        let ss = self.delta(LegMap::SIGMA, LegMap::SIGMA);
        if p == 0 {
            let m = &m[0];
            return vec![self.t(&d, m).scale(&m1), self.t(&ss, m).scale(&nl)];
        }
        let (a, b) = (&m[0], &m[1]);
        if p % 2 == 1 {
            let s_ = self.delta(LegMap::SIGMA, LegMap::ID);
            let _s = self.delta(LegMap::ID, LegMap::SIGMA);
            vec![self.t(&s_, a).scale(&m1), self.t(&_s, b).scale(&nl)]
        } else {
            vec![self.t(&d, a).scale(&m1), self.t(&ss, b).scale(&nl)]
        }
    }
}

fn add_vecs(a: Vec<GwaElement>, b: Vec<GwaElement>) -> Vec<GwaElement> {
    a.into_iter().zip(b).map(|(u, v)| u + v).collect()
}

/// The differential of `Tot Q`.
pub fn per_diff(gwa: &Gwa, c: &PerCochain) -> Result<PerCochain> {
    if c.components.len() != cochain_len(c.degree) {
        return Err(Error::ShapeMismatch(format!("malformed degree {} cochain", c.degree)));
    }
    let ops = Ops::new(gwa, &c.module);
    let n = c.degree;
    let (row1, row0) = c.split();
    let mut top = ops.dv(n, row0);
    let mut bottom = ops.dh0(n, row0);
    if n >= 1 {
        top = add_vecs(top, ops.dh1(n - 1, row1));
        bottom = add_vecs(bottom, ops.s(n - 1, row1));
    }
    top.extend(bottom);
    Ok(PerCochain { degree: n + 1, module: c.module.clone(), components: top })
}

pub fn is_cocycle(gwa: &Gwa, c: &PerCochain) -> Result<bool> {
    Ok(per_diff(gwa, c)?.is_zero())
}

fn require_cocycle(gwa: &Gwa, c: &PerCochain, degree: usize) -> Result<()> {
    if c.degree != degree {
        return Err(Error::DegreeMismatch { expected: degree, got: c.degree });
    }
    if !is_cocycle(gwa, c)? {
        return Err(Error::NotCocycle);
    }
    Ok(())
}

/// `f(m) = (λ m x, -y m, 0, -λ ^σΔ^σ(φ)·m)`.
pub fn f_map(gwa: &Gwa, m: &GwaElement, module: &BimoduleSpec) -> PerCochain {
    let ops = Ops::new(gwa, module);
    let lam = gwa.lambda().clone();
    let ss = gwa.twisted_delta(LegMap::SIGMA, LegMap::SIGMA, gwa.phi());
    PerCochain {
        degree: 2,
        module: module.clone(),
        components: vec![
            ops.r(m, &GwaElement::x()).scale(&lam),
            -ops.l(&GwaElement::y(), m),
            GwaElement::zero(),
            ops.t(&ss, m).scale(&-lam),
        ],
    }
}

fn ay(bez: &BezoutPair) -> GwaElement {
    GwaElement::from_poly_x(bez.alpha.clone(), -1)
}

/// `g(m1, m2, m3, m4) = λ^{-1} m1 αy + m3 β - λ^{-1} m4 σ(β)`, without the cocycle check.
pub fn g_formula(gwa: &Gwa, c: &PerCochain, bez: &BezoutPair) -> GwaElement {
    let ops = Ops::new(gwa, &c.module);
    let li = gwa.lambda().recip();
    let beta = GwaElement::from_poly(bez.beta.clone());
    let sbeta = GwaElement::from_poly(gwa.sigma_pow(&bez.beta, 1));
    let m = &c.components;
    ops.r(&m[0], &ay(bez)).scale(&li) + ops.r(&m[2], &beta) - ops.r(&m[3], &sbeta).scale(&li)
}

pub fn g_map(gwa: &Gwa, c: &PerCochain, bez: &BezoutPair) -> Result<GwaElement> {
    require_cocycle(gwa, c, 2)?;
    Ok(g_formula(gwa, c, bez))
}

/// A degree-2 preimage of the degree-3 cocycle `c`.
pub fn contract3(gwa: &Gwa, c: &PerCochain, bez: &BezoutPair) -> Result<PerCochain> {
    require_cocycle(gwa, c, 3)?;
    let ops = Ops::new(gwa, &c.module);
    let lam = gwa.lambda().clone();
    let li = lam.recip();
    let beta = GwaElement::from_poly(bez.beta.clone());
    let sbeta = GwaElement::from_poly(gwa.sigma_pow(&bez.beta, 1));
    let ay = ay(bez);
    let [m1, m2, m3, m4] = [&c.components[0], &c.components[1], &c.components[2], &c.components[3]];
    let dd = gwa.twisted_delta(LegMap::ID, LegMap::D, gwa.phi());
    let sdsd = gwa.twisted_delta(LegMap::SIGMA, LegMap::SIGMA_D, gwa.phi());
    let n1 = -ops.r(m3, &beta);
    let n3 = -ops.r(&ops.t(&dd, m1), &beta);
    let n4 = -ops.r(m3, &ay) - ops.r(&ops.t(&sdsd, m2), &sbeta).scale(&lam);
    let n2 = -(ops.r(m1, &ay) + ops.r(m4, &sbeta)).scale(&li);
    Ok(PerCochain { degree: 2, module: c.module.clone(), components: vec![n1, n2, n3, n4] })
}

/// Writes the degree-2 cocycle `c` as `∂¹(u) + f(n2)`.
pub fn split2(gwa: &Gwa, c: &PerCochain, bez: &BezoutPair) -> Result<(PerCochain, GwaElement)> {
    require_cocycle(gwa, c, 2)?;
    let ops = Ops::new(gwa, &c.module);
    let lam = gwa.lambda().clone();
    let beta = GwaElement::from_poly(bez.beta.clone());
    let sbeta = GwaElement::from_poly(gwa.sigma_pow(&bez.beta, 1));
    let ay = ay(bez);
    let [m1, m2, m3] = [&c.components[0], &c.components[1], &c.components[2]];
    let sd = gwa.twisted_delta(LegMap::SIGMA, LegMap::D, gwa.phi());
    let dsd = gwa.twisted_delta(LegMap::ID, LegMap::SIGMA_D, gwa.phi());
    let n1 = -ops.r(m3, &beta);
    let n3 = -ops.r(&ops.t(&sd, m1), &beta);
    let n4 = ops.r(m3, &ay) - ops.r(&ops.t(&dsd, m2), &sbeta).scale(&lam);
    let n2 = g_formula(gwa, c, bez);
    Ok((PerCochain { degree: 1, module: c.module.clone(), components: vec![n1, n3, n4] }, n2))
}

/// Basis cochains of the given degree with entries in `Γ^window`.
pub fn cochain_basis(gwa: &Gwa, degree: usize, module: &BimoduleSpec, window: usize) -> Vec<PerCochain> {
    let monos = gwa.basis_window(window);
    let mut out = Vec::new();
    for k in 0..cochain_len(degree) {
        for &m in &monos {
            let mut c = PerCochain::zero(degree, module.clone());
            c.components[k] = GwaElement::mono(m);
            out.push(c);
        }
    }
    out
}

/// Searches `Γ^window`-valued cochains `u` with `per_diff(u) = c`.
pub fn solve_coboundary(gwa: &Gwa, c: &PerCochain, window: usize) -> Result<Option<PerCochain>> {
    if c.degree == 0 {
        return Err(Error::DegreeMismatch { expected: 1, got: 0 });
    }
    let basis = cochain_basis(gwa, c.degree - 1, &c.module, window);
    let mut ech = Echelon::new();
    for b in &basis {
        ech.insert(&per_diff(gwa, b)?.to_sparse());
    }
    Ok(ech.solve(&c.to_sparse()).map(|combo| {
        let mut u = PerCochain::zero(c.degree - 1, c.module.clone());
        for (i, coef) in combo {
            u.add_scaled(&basis[i], &coef);
        }
        u
    }))
}

/// A random cochain with entries in `Γ^n`.
pub fn random_cochain<R: rand::Rng>(
    gwa: &Gwa,
    rng: &mut R,
    degree: usize,
    module: &BimoduleSpec,
    n: usize,
    terms: usize,
) -> PerCochain {
    let components = (0..cochain_len(degree)).map(|_| gwa.random_element(rng, n, terms)).collect();
    PerCochain { degree, module: module.clone(), components }
}
