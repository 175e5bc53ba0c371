//! Corpus algebras and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gwa_core::{Gwa, GwaElement, GwaParams, Mono, Poly, Rational, TensorElement};

pub fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

pub struct CorpusEntry {
    pub label: String,
    pub params: GwaParams,
}

fn entry(label: &str, lambda: i64, eta: i64, phi: &[i64]) -> CorpusEntry {
    CorpusEntry { label: label.to_string(), params: GwaParams::new(r(lambda), r(eta), Poly::from_ints(phi)).unwrap() }
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry("quantum λ=2 φ=1", 2, 0, &[1]),
        entry("quantum λ=2 φ=z", 2, 0, &[0, 1]),
        entry("quantum λ=2 φ=z-1", 2, 0, &[-1, 1]),
        entry("quantum λ=2 φ=z²-1", 2, 0, &[-1, 0, 1]),
        entry("quantum λ=2 φ=z(z-1)(z-2)", 2, 0, &[0, 2, -3, 1]),
        entry("quantum λ=-1 φ=z²-1", -1, 0, &[-1, 0, 1]),
        entry("classical η=1 φ=1", 1, 1, &[1]),
        entry("classical η=1 φ=z", 1, 1, &[0, 1]),
        entry("classical η=1 φ=z²", 1, 1, &[0, 0, 1]),
        entry("classical η=1 φ=z³", 1, 1, &[0, 0, 0, 1]),
        entry("classical η=1 φ=z(z-1)", 1, 1, &[0, -1, 1]),
    ]
}

pub fn is_squarefree(phi: &Poly) -> bool {
    gwa_core::scalars::bezout_for_phi(phi).is_ok()
}

/// Words in the letters `x`, `y`, `z` with rational coefficients, reduced by
/// the rewriting rules `xz → (λz+η)x`, `yz → λ⁻¹(z−η)y`, `yx → φ(z)`,
/// `xy → φ(λz+η)` until every word has the form `z^p x^q` or `z^p y^q`.
pub struct RewriteOracle {
    lambda: Rational,
    eta: Rational,
    phi: Vec<Rational>,
}

type Words = BTreeMap<Vec<u8>, Rational>;

fn add_word(w: &mut Words, k: Vec<u8>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = w.entry(k.clone()).or_insert_with(Rational::zero);
    *e += &c;
    if e.is_zero() {
        w.remove(&k);
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut c = Rational::one();
    for i in 0..k {
        c = c * Rational::new((n - i) as i64, (i + 1) as i64);
    }
    c
}

impl RewriteOracle {
    pub fn new(params: &GwaParams) -> Self {
        RewriteOracle {
            lambda: params.lambda.clone(),
            eta: params.eta.clone(),
            phi: params.phi.coeffs().to_vec(),
        }
    }

    fn word(m: Mono) -> Vec<u8> {
        let mut w = vec![b'z'; m.p];
        let letter = if m.q >= 0 { b'x' } else { b'y' };
        w.extend(std::iter::repeat_n(letter, m.q.unsigned_abs() as usize));
        w
    }

    /// `Σ_i a_i (s z + t)^i` as words in `z`.
    fn phi_at(&self, s: &Rational, t: &Rational) -> Words {
        let mut out = Words::new();
        for (i, a) in self.phi.iter().enumerate() {
            for k in 0..=i {
                let c = a * &binomial(i, k) * s.pow(k as i64) * t.pow((i - k) as i64);
                add_word(&mut out, vec![b'z'; k], c);
            }
        }
        out
    }

    fn rule(&self, pair: (u8, u8)) -> Option<Words> {
        let mut out = Words::new();
        match pair {
            (b'x', b'z') => {
                add_word(&mut out, b"zx".to_vec(), self.lambda.clone());
                add_word(&mut out, b"x".to_vec(), self.eta.clone());
            }
            (b'y', b'z') => {
                let li = self.lambda.recip();
                add_word(&mut out, b"zy".to_vec(), li.clone());
                add_word(&mut out, b"y".to_vec(), -(&li * &self.eta));
            }
            (b'y', b'x') => out = self.phi_at(&Rational::one(), &Rational::zero()),
            (b'x', b'y') => out = self.phi_at(&self.lambda, &self.eta),
            _ => return None,
        }
        Some(out)
    }

    fn normalize(&self, mut words: Words) -> Words {
        let mut done = Words::new();
        while let Some((w, c)) = words.pop_first() {
            let hit = (0..w.len().saturating_sub(1)).find_map(|i| self.rule((w[i], w[i + 1])).map(|rep| (i, rep)));
            match hit {
                None => add_word(&mut done, w, c),
                Some((i, rep)) => {
                    for (mid, d) in rep {
                        let mut nw = w[..i].to_vec();
                        nw.extend(mid);
                        nw.extend_from_slice(&w[i + 2..]);
                        add_word(&mut words, nw, &c * &d);
                    }
                }
            }
        }
        done
    }

    pub fn multiply(&self, a: Mono, b: Mono) -> GwaElement {
        let mut w = Self::word(a);
        w.extend(Self::word(b));
        let done = self.normalize(BTreeMap::from([(w, Rational::one())]));
        GwaElement::from_terms(done.into_iter().map(|(w, c)| {
            let p = w.iter().filter(|&&ch| ch == b'z').count();
            let nx = w.iter().filter(|&&ch| ch == b'x').count() as i64;
            let ny = w.iter().filter(|&&ch| ch == b'y').count() as i64;
            assert!(nx == 0 || ny == 0, "not a normal form");
            (Mono::new(p, nx - ny), c)
        }))
    }
}

/// Rational roots with multiplicity, by the rational root theorem on an
/// integer-coefficient polynomial.
pub fn rational_roots(coeffs: &[i64]) -> Vec<(Rational, usize)> {
    let mut c: Vec<i64> = coeffs.to_vec();
    while c.last() == Some(&0) {
        c.pop();
    }
    let mut roots = Vec::new();
    let mut zero_mult = 0;
    while c.len() > 1 && c[0] == 0 {
        c.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if c.len() <= 1 {
        return roots;
    }
    let divisors = |n: i64| -> Vec<i64> { (1..=n.abs()).filter(|d| n % d == 0).collect() };
    let mut poly: Vec<Rational> = c.iter().map(|&v| Rational::from_int(v)).collect();
    let mut candidates = Vec::new();
    for p in divisors(c[0]) {
        for q in divisors(*c.last().unwrap()) {
            candidates.push(Rational::new(p, q));
            candidates.push(Rational::new(-p, q));
        }
    }
    candidates.sort();
    candidates.dedup();
    for t in candidates {
        let mut mult = 0;
        loop {
            let mut acc = Rational::zero();
            for a in poly.iter().rev() {
                acc = acc * &t + a;
            }
            if !acc.is_zero() || poly.len() < 2 {
                break;
            }
            // synthetic division by (z - t)
            let n = poly.len();
            let mut q = vec![Rational::zero(); n - 1];
            let mut carry = Rational::zero();
            for i in (1..n).rev() {
                carry = &poly[i] + &(&carry * &t);
                q[i - 1] = carry.clone();
            }
            poly = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((t, mult));
        }
    }
    roots
}

/// The twisted Vandermonde rank by counting distinct nonzero `e`-th powers
/// of the roots (or whether a nonzero root exists when `e = 0`).
pub fn brute_force_r(coeffs: &[i64], e: usize) -> usize {
    let roots = rational_roots(coeffs);
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    assert_eq!(total + 1, coeffs.iter().rposition(|&c| c != 0).unwrap() + 1, "corpus polynomial must split over Q");
    let nonzero: Vec<Rational> = roots.into_iter().map(|(t, _)| t).filter(|t| !t.is_zero()).collect();
    if e == 0 {
        return usize::from(!nonzero.is_empty());
    }
    let mut powers: Vec<Rational> = nonzero.iter().map(|t| t.pow(e as i64)).collect();
    powers.sort();
    powers.dedup();
    powers.len()
}

/// `Σ a z b` for `t = Σ a ⊗ b`.
pub fn insert_middle(gwa: &Gwa, t: &TensorElement, mid: &GwaElement) -> GwaElement {
    let mut out = GwaElement::zero();
    for ((a, b), c) in t.terms() {
        out.add_scaled(&gwa.mul3(&GwaElement::mono(*a), mid, &GwaElement::mono(*b)), c);
    }
    out
}

/// The closed forms of the quantum `F_1` on the four families of basis
/// pairs; `None` on pairs outside them.
pub fn quantum_f1_closed_form(gwa: &Gwa, u: Mono, v: Mono) -> Option<GwaElement> {
    let (p, q, i, j) = (u.p, u.q, v.p, v.q);
    let lam = gwa.lambda().clone();
    let zp = GwaElement::mono(Mono::new(p, 0));
    let z = GwaElement::z();
    let dzi = GwaElement::from_poly(Poly::monomial(Rational::from_int(i as i64), i.saturating_sub(1)));
    let tail = GwaElement::mono(Mono::new(0, j));
    if q == 0 {
        return Some(GwaElement::zero());
    }
    let same = (q > 0 && j >= 0) || (q < 0 && j <= 0);
    if q > 0 && same {
        let dn = insert_middle(gwa, &gwa.delta_nu(gwa_core::Gen::X, q as usize), &z);
        let v = gwa.mul(&gwa.mul3(&zp, &dn, &GwaElement::x()), &gwa.mul(&dzi, &tail));
        return Some(v.scale(&-lam));
    }
    if q < 0 && same {
        let dn = insert_middle(gwa, &gwa.delta_nu(gwa_core::Gen::Y, (-q) as usize), &z);
        return Some(gwa.mul(&gwa.mul3(&zp, &GwaElement::y(), &dn), &gwa.mul(&dzi, &tail)));
    }
    if q == 1 {
        let zp1 = GwaElement::mono(Mono::new(p + 1, 0));
        let a = gwa.mul(&gwa.mul3(&zp1, &GwaElement::x(), &dzi), &tail).scale(&-lam.clone());
        let lz_i = GwaElement::from_poly(Poly::monomial(lam.pow(i as i64), i));
        let phib1 = GwaElement::from_poly(gwa.phi_bar().derivative());
        let b = gwa.mul(&gwa.mul3(&zp1, &phib1, &lz_i), &GwaElement::mono(Mono::new(0, j + 1)));
        return Some(a - b);
    }
    if q == -1 {
        return Some(gwa.mul(&gwa.mul3(&zp, &GwaElement::y(), &z), &gwa.mul(&dzi, &tail)));
    }
    None
}
