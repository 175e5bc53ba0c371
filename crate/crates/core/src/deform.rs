//! Truncated star products `u*v = uv + Σ F_n(u,v) τ^n` for quantum and
//! classical algebras, with the checks that certify them.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwa::{BimoduleSpec, Gwa, GwaElement, GwaParams, Mono};
use crate::hochschild::{
    basis_pairs, basis_triples, circle, determine_f, generator_data, hochschild_b, thetaprime3, Cochain2,
    Cochain3,
};
use crate::percomplex::{contract3, f_map, per_diff, solve_coboundary};
use crate::scalars::{bezout_for_phi, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Quantum,
    Classical,
}

pub fn kind_of(params: &GwaParams) -> Result<Kind> {
    if !params.is_noncommutative() {
        return Err(Error::CommutativeAlgebra);
    }
    if params.is_quantum() {
        Ok(Kind::Quantum)
    } else if params.is_classical() {
        Ok(Kind::Classical)
    } else {
        Err(Error::MixedCase)
    }
}

/// Element of `A[τ]/(τ^{N+1})`, indexed by τ-power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruncatedElement {
    pub coeffs: Vec<GwaElement>,
}

impl TruncatedElement {
    pub fn zero(order: usize) -> Self {
        TruncatedElement { coeffs: vec![GwaElement::zero(); order + 1] }
    }

    pub fn constant(order: usize, u: GwaElement) -> Self {
        let mut t = Self::zero(order);
        t.coeffs[0] = u;
        t
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GwaElement::is_zero)
    }

    pub fn add_scaled(&mut self, other: &TruncatedElement, c: &Rational) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, c);
        }
    }

    /// Multiplies by the scalar series `Σ s_k τ^k`.
    pub fn scale_series(&self, s: &[Rational]) -> TruncatedElement {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, c) in s.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + k].add_scaled(a, c);
            }
        }
        out
    }

    pub fn difference(&self, other: &TruncatedElement) -> TruncatedElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }
}

/// `F_1, …, F_N` for a noncommutative algebra; `F_0` is the product.
#[derive(Clone, Debug)]
pub struct StarProduct {
    gwa: Arc<Gwa>,
    pub kind: Kind,
    pub order: usize,
    cochains: Vec<Cochain2>,
}

/// The closed-form values `(F_n(x,z), F_n(x,y), F_n(y,z), F_n(y,x))` for `n ≥ 2`.
pub fn closed_form_data(gwa: &Gwa, kind: Kind, n: usize) -> [GwaElement; 4] {
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let c = &sign * &Rational::factorial(n as u64).recip();
    let dn = gwa.phi_bar().nth_derivative(n).scale(&c);
    match kind {
        Kind::Quantum => [
            GwaElement::zero(),
            GwaElement::from_poly(&Poly::monomial(Rational::one(), n) * &dn),
            gwa.mul(&GwaElement::y(), &GwaElement::z()),
            GwaElement::zero(),
        ],
        Kind::Classical => [GwaElement::zero(), GwaElement::from_poly(dn), GwaElement::zero(), GwaElement::zero()],
    }
}

/// The degree-2 Per cocycle whose θ₂-pairing gives `F_1`.
pub fn first_order_cocycle(gwa: &Gwa, kind: Kind) -> crate::percomplex::PerCochain {
    let m = match kind {
        Kind::Quantum => GwaElement::z(),
        Kind::Classical => GwaElement::one(),
    };
    f_map(gwa, &m, &BimoduleSpec::regular())
}

pub fn first_order(gwa: Arc<Gwa>, kind: Kind) -> Result<Cochain2> {
    let c = first_order_cocycle(&gwa, kind);
    let [xz, xy, yz, yx] = generator_data(&gwa, &c)?;
    Ok(determine_f(gwa.clone(), Cochain3::zero(gwa), xz, xy, yz, yx))
}

/// `Σ_{i=1}^{n-1} F_i • F_{n-i}`.
pub fn obstruction(gwa: &Arc<Gwa>, cochains: &[Cochain2], n: usize) -> Cochain3 {
    let parts = (1..n).map(|i| circle(&cochains[i - 1], &cochains[n - i - 1])).collect();
    Cochain3::sum(gwa.clone(), parts)
}

pub fn build_star(params: GwaParams, order: usize) -> Result<StarProduct> {
    let kind = kind_of(&params)?;
    let gwa = Arc::new(Gwa::new(params));
    let mut cochains = Vec::with_capacity(order);
    if order >= 1 {
        cochains.push(first_order(gwa.clone(), kind)?);
    }
    for n in 2..=order {
        let target = obstruction(&gwa, &cochains, n);
        let [xz, xy, yz, yx] = closed_form_data(&gwa, kind, n);
        cochains.push(determine_f(gwa.clone(), target, xz, xy, yz, yx));
    }
    Ok(StarProduct { gwa, kind, order, cochains })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub check: String,
    pub window: usize,
    pub checked: usize,
    pub failures: Vec<Vec<Mono>>,
    pub pass: bool,
}

impl SweepReport {
    fn new(check: String, window: usize, checked: usize, mut failures: Vec<Vec<Mono>>) -> Self {
        failures.sort();
        failures.truncate(20);
        let pass = failures.is_empty();
        SweepReport { check, window, checked, failures, pass }
    }
}

impl StarProduct {
    pub fn gwa(&self) -> &Arc<Gwa> {
        &self.gwa
    }

    /// `F_n` for `1 ≤ n ≤ N`.
    pub fn cochain(&self, n: usize) -> &Cochain2 {
        &self.cochains[n - 1]
    }

    pub fn cochains(&self) -> &[Cochain2] {
        &self.cochains
    }

    pub fn star(&self, u: &GwaElement, v: &GwaElement) -> TruncatedElement {
        let mut out = TruncatedElement::zero(self.order);
        out.coeffs[0] = self.gwa.mul(u, v);
        for n in 1..=self.order {
            out.coeffs[n] = self.cochain(n).eval(u, v);
        }
        out
    }

    pub fn star_truncated(&self, a: &TruncatedElement, b: &TruncatedElement) -> TruncatedElement {
        let big_n = self.order;
        let mut out = TruncatedElement::zero(big_n);
        for (i, u) in a.coeffs.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in b.coeffs.iter().enumerate().take(big_n + 1 - i) {
                if v.is_zero() {
                    continue;
                }
                let prod = self.star(u, v);
                for (n, c) in prod.coeffs.into_iter().enumerate().take(big_n + 1 - i - j) {
                    out.coeffs[i + j + n].add_assign(&c);
                }
            }
        }
        out
    }

    fn lift(&self, u: &GwaElement) -> TruncatedElement {
        TruncatedElement::constant(self.order, u.clone())
    }

    /// `(u*v)*w − u*(v*w)`.
    pub fn check_assoc(&self, u: &GwaElement, v: &GwaElement, w: &GwaElement) -> TruncatedElement {
        let uv = self.star(u, v);
        let vw = self.star(v, w);
        let lhs = self.star_truncated(&uv, &self.lift(w));
        let rhs = self.star_truncated(&self.lift(u), &vw);
        lhs.difference(&rhs)
    }

    /// Coefficients of `φ̄((1−τ)z)` (quantum) or `φ̄(z−τ)` (classical) by direct expansion.
    pub fn substituted_phi_bar(&self) -> TruncatedElement {
        let n = self.order;
        let mut out = TruncatedElement::zero(n);
        for (i, b) in self.gwa.phi_bar().coeffs().iter().enumerate() {
            for k in 0..=i.min(n) {
                let mut c = b * &Rational::binomial(i as i64, k as i64);
                if k % 2 == 1 {
                    c = -c;
                }
                let p = match self.kind {
                    Kind::Quantum => i,
                    Kind::Classical => i - k,
                };
                out.coeffs[k].add_scaled(&GwaElement::mono(Mono::new(p, 0)), &c);
            }
        }
        out
    }

    /// Residuals of the four defining relations of the deformed algebra.
    pub fn check_relations(&self) -> [TruncatedElement; 4] {
        let n = self.order;
        let (x, y, z) = (GwaElement::x(), GwaElement::y(), GwaElement::z());
        let one = Rational::one();
        let lam = self.gwa.lambda().clone();
        let eta = self.gwa.params().eta.clone();
        let (xz, zx) = (self.star(&x, &z), self.star(&z, &x));
        let (yz, zy) = (self.star(&y, &z), self.star(&z, &y));
        let f1;
        let f2;
        match self.kind {
            Kind::Quantum => {
                f1 = xz.difference(&zx.scale_series(&[lam.clone(), -lam.clone()]));
                let geom = vec![lam.recip(); n + 1];
                f2 = yz.difference(&zy.scale_series(&geom));
            }
            Kind::Classical => {
                let mut a = xz.difference(&zx);
                a.add_scaled(&self.lift(&x).scale_series(&[eta.clone(), -one.clone()]), &-one.clone());
                f1 = a;
                let mut b = yz.difference(&zy);
                b.add_scaled(&self.lift(&y).scale_series(&[-eta, one.clone()]), &-one.clone());
                f2 = b;
            }
        }
        let f3 = self.star(&x, &y).difference(&self.substituted_phi_bar());
        let f4 = self.star(&y, &x).difference(&self.lift(&GwaElement::from_poly(self.gwa.phi().clone())));
        [f1, f2, f3, f4]
    }

    /// `Σ_{i=1}^{n-1} F_i • F_{n-i} = b F_n` on all basis triples with degree sum ≤ `window`.
    pub fn check_obstruction(&self, n: usize, window: usize) -> SweepReport {
        let lhs = obstruction(&self.gwa, &self.cochains, n);
        let rhs = hochschild_b(self.cochain(n));
        let triples = basis_triples(&self.gwa, window);
        let failures: Vec<Vec<Mono>> = triples
            .par_iter()
            .filter(|&&(a, b, c)| lhs.eval_basis(a, b, c) != rhs.eval_basis(a, b, c))
            .map(|&(a, b, c)| vec![a, b, c])
            .collect();
        SweepReport::new(format!("obstruction n={n}"), window, triples.len(), failures)
    }

    /// `F_n(Γ^i, Γ^j) ⊆ Γ^{i+j}` for all `n ≤ N` on pairs with degree sum ≤ `window`.
    pub fn check_local_finiteness(&self, window: usize) -> SweepReport {
        let gwa = &self.gwa;
        let l = gwa.l();
        let pairs = basis_pairs(gwa, window);
        let failures: Vec<Vec<Mono>> = pairs
            .par_iter()
            .filter(|&&(a, b)| {
                let bound = gwa.degree_of(a) + gwa.degree_of(b);
                self.cochains.iter().any(|f| f.eval_basis(a, b).filtration_degree(l).is_some_and(|d| d > bound))
            })
            .map(|&(a, b)| vec![a, b])
            .collect();
        SweepReport::new("local finiteness".into(), window, pairs.len(), failures)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonCoboundaryEvidence {
    pub window: usize,
    pub preimage_found: bool,
    /// The `∂¹`-preimage, when one exists in the window.
    pub preimage: Option<Vec<GwaElement>>,
    pub note: String,
}

/// Searches for a ∂¹-preimage of the cocycle behind `F_1`. Finding none is
/// one-sided evidence that `F_1` is not a coboundary.
pub fn f1_noncoboundary_evidence(gwa: &Gwa, kind: Kind, window: usize) -> Result<NonCoboundaryEvidence> {
    let c = first_order_cocycle(gwa, kind);
    let preimage = solve_coboundary(gwa, &c, window)?.map(|u| u.components);
    let found = preimage.is_some();
    let note = if found {
        "a preimage exists: F_1 is a coboundary".to_string()
    } else {
        format!("no preimage with filtration degree ≤ {window}; one-sided evidence only")
    };
    Ok(NonCoboundaryEvidence { window, preimage_found: found, preimage, note })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscoveryReport {
    pub obstruction_cocycle: Vec<GwaElement>,
    pub preimage: Vec<GwaElement>,
    pub preimage_verified: bool,
    /// `(F_2(x,z), F_2(x,y), F_2(y,z), F_2(y,x))` solved from the preimage.
    pub discovered: Vec<GwaElement>,
    pub closed_form: Vec<GwaElement>,
    pub matches_closed_form: bool,
    /// Whether the discovered data also integrate `F_1` on the window.
    pub integrates: bool,
}

/// Recomputes the second-order data from the obstruction cocycle.
pub fn discover_second_order(sp: &StarProduct, window: usize) -> Result<DiscoveryReport> {
    let gwa = sp.gwa();
    let reg = BimoduleSpec::regular();
    let f1 = sp.cochain(1);
    let target = circle(f1, f1);
    let c = thetaprime3(&target, &reg);
    let bez = bezout_for_phi(gwa.phi())?;
    let pre = contract3(gwa, &c, &bez)?;
    let preimage_verified = per_diff(gwa, &pre)? == c;
    let [n1, n2, n3, n4] = <[GwaElement; 4]>::try_from(pre.components.clone()).expect("degree 2 cochain");
    let discovered = [-n1, n4, -n2, n3];
    let closed_form = closed_form_data(gwa, sp.kind, 2);
    let [xz, xy, yz, yx] = discovered.clone();
    let f2 = determine_f(gwa.clone(), target.clone(), xz, xy, yz, yx);
    let b = hochschild_b(&f2);
    let integrates = basis_triples(gwa, window)
        .par_iter()
        .all(|&(u, v, w)| b.eval_basis(u, v, w) == target.eval_basis(u, v, w));
    Ok(DiscoveryReport {
        obstruction_cocycle: c.components,
        preimage: pre.components,
        preimage_verified,
        matches_closed_form: discovered == closed_form,
        discovered: discovered.to_vec(),
        closed_form: closed_form.to_vec(),
        integrates,
    })
}
