mod common;

use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_r, corpus, is_squarefree, r, RewriteOracle};
use gwa_core::complexes::{augmentation, c_basis_element, c_basis_window, c_diff, c_solve_preimage, tot_diff};
use gwa_core::deform::{build_star, first_order, kind_of};
use gwa_core::hochschild::{basis_pairs, circle, condition_violations, hochschild_b, thetaprime2, thetaprime3};
use gwa_core::homology::{commutator_span, compute_e, compute_r, twisted_commutator};
use gwa_core::percomplex::{contract3, f_map, is_cocycle, per_diff, random_cochain, solve_coboundary, split2};
use gwa_core::scalars::{bezout_for_phi, poly_derivative, resultant_power_map, squarefree_part};
use gwa_core::{
    BimoduleSpec, CElement, Cochain2, Cochain3, Gwa, GwaElement, Mono, Poly, Rational, TensorElement, TotElement,
};

fn algebra(idx: usize) -> Gwa {
    let c = corpus();
    Gwa::new(c[idx % c.len()].params.clone())
}

fn modules(gwa: &Gwa) -> [BimoduleSpec; 2] {
    [BimoduleSpec::regular(), gwa.a_nu()]
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..5).prop_map(|c| Poly::from_ints(&c))
}

fn roots_poly(roots: &[i64]) -> Poly {
    roots.iter().fold(Poly::one(), |acc, &t| &acc * &Poly::linear(r(1), r(-t)))
}

fn distinct_roots() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-3i64..=3, 1..4).prop_map(|s| s.into_iter().collect())
}

fn random_tensor(gwa: &Gwa, rng: &mut ChaCha8Rng) -> TensorElement {
    TensorElement::pure(&gwa.random_element(rng, 3, 2), &gwa.random_element(rng, 3, 2))
}

fn random_c(gwa: &Gwa, rng: &mut ChaCha8Rng, degree: usize, n: usize) -> CElement {
    let basis = c_basis_window(gwa, degree, n);
    let mut e = CElement::zero(degree);
    for _ in 0..3 {
        let b = basis[rng.random_range(0..basis.len())];
        e.add_scaled(&c_basis_element(degree, b), &r(rng.random_range(1..=3)));
    }
    e
}

fn random_table_cochain(gwa: &Arc<Gwa>, rng: &mut ChaCha8Rng, window: usize) -> Cochain2 {
    let mut table = HashMap::new();
    for (a, b) in basis_pairs(gwa, window) {
        if rng.random_bool(0.3) {
            table.insert((a, b), gwa.random_element(rng, 2, 2));
        }
    }
    Cochain2::from_table(gwa.clone(), table)
}

/// `bF` with values in `module`: `a·F(b,c) − F(ab,c) + F(a,bc) − F(a,b)·c`.
fn module_coboundary(f: &Cochain2, module: &BimoduleSpec) -> Cochain3 {
    let (f, module) = (f.clone(), module.clone());
    let gwa = f.gwa().clone();
    Cochain3::from_fn(gwa.clone(), move |a, b, c| {
        let (ea, ec) = (GwaElement::mono(a), GwaElement::mono(c));
        gwa.act_left(&module, &ea, &f.eval_basis(b, c)) - f.eval(&gwa.mul_mono(a, b), &ec)
            + f.eval(&ea, &gwa.mul_mono(b, c))
            - gwa.act_right(&module, &f.eval_basis(a, b), &ec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivative_is_linear_and_leibniz(f in poly_strategy(), g in poly_strategy(), c in -5i64..=5) {
        let sum = &f + &g.scale(&r(c));
        prop_assert_eq!(poly_derivative(&sum), &poly_derivative(&f) + &poly_derivative(&g).scale(&r(c)));
        prop_assert_eq!(
            poly_derivative(&(&f * &g)),
            &(&poly_derivative(&f) * &g) + &(&f * &poly_derivative(&g))
        );
    }

    #[test]
    fn bezout_pair_remultiplies(roots in distinct_roots(), lead in 1i64..=3) {
        let phi = roots_poly(&roots).scale(&r(lead));
        let bez = bezout_for_phi(&phi).unwrap();
        prop_assert_eq!(&(&bez.alpha * &phi) + &(&bez.beta * &phi.derivative()), Poly::one());
    }

    #[test]
    fn squarefree_part_divides_and_is_squarefree(roots in distinct_roots(), mult in prop::collection::vec(1usize..=3, 3)) {
        let mut all = Vec::new();
        for (t, m) in roots.iter().zip(mult.iter().cycle()) {
            all.extend(std::iter::repeat_n(*t, *m));
        }
        let h = roots_poly(&all).scale(&r(2));
        let s = squarefree_part(&h).unwrap();
        prop_assert!(h.div_rem(&s).1.is_zero());
        prop_assert!(is_squarefree(&s));
        prop_assert_eq!(s.degree(), Some(roots.len()));
    }

    #[test]
    fn resultant_power_map_roots(roots in prop::collection::vec(-3i64..=3, 1..4), e in 1usize..=3, lead in 1i64..=2) {
        let phi = roots_poly(&roots).scale(&r(lead));
        let got = resultant_power_map(&phi, e).unwrap();
        let powers: Vec<i64> = roots.iter().map(|t| t.pow(e as u32)).collect();
        prop_assert_eq!(got.monic(), roots_poly(&powers));
    }

    #[test]
    fn compute_r_matches_root_count(roots in distinct_roots(), lam in prop::sample::select(vec![(2i64, 1i64), (-1, 1), (1, 2), (-2, 1)])) {
        let phi = roots_poly(&roots);
        let coeffs: Vec<i64> = phi.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
        let e = compute_e(&Rational::new(lam.0, lam.1));
        prop_assert_eq!(compute_r(&phi, e).unwrap(), brute_force_r(&coeffs, e));
    }

    #[test]
    fn multiplication_matches_rewriting(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = algebra(idx);
        let oracle = RewriteOracle::new(gwa.params());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let window = gwa.basis_window(gwa.l() + 3);
        let a = window[rng.random_range(0..window.len())];
        let b = window[rng.random_range(0..window.len())];
        prop_assert_eq!(gwa.mul_mono(a, b), oracle.multiply(a, b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [u, v, w] = [0; 3].map(|_| gwa.random_element(&mut rng, 2 * gwa.l() + 3, 3));
        prop_assert_eq!(gwa.mul(&gwa.mul(&u, &v), &w), gwa.mul(&u, &gwa.mul(&v, &w)));
    }

    #[test]
    fn filtration_is_submultiplicative(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = gwa.random_element(&mut rng, gwa.l() + 4, 3);
        let v = gwa.random_element(&mut rng, gwa.l() + 4, 3);
        let uv = gwa.mul(&u, &v);
        if let Some(d) = gwa.filtration_degree(&uv) {
            prop_assert!(d <= gwa.filtration_degree(&u).unwrap() + gwa.filtration_degree(&v).unwrap());
        }
    }

    #[test]
    fn nu_is_an_automorphism(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nu, nu_inv) = (gwa.nu(), gwa.nu_inverse());
        let u = gwa.random_element(&mut rng, gwa.l() + 4, 3);
        let v = gwa.random_element(&mut rng, gwa.l() + 4, 3);
        prop_assert_eq!(gwa.apply(&nu, &gwa.mul(&u, &v)), gwa.mul(&gwa.apply(&nu, &u), &gwa.apply(&nu, &v)));
        prop_assert_eq!(gwa.apply(&nu_inv, &gwa.apply(&nu, &u)), u.clone());
        prop_assert_eq!(gwa.apply(&nu, &gwa.apply(&nu_inv, &u)), u);
    }

    #[test]
    fn augmentation_kills_boundaries(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = TotElement::zero(1);
        for c in e.row0.components.iter_mut() {
            *c = random_tensor(&gwa, &mut rng);
        }
        if let Some(row1) = e.row1.as_mut() {
            row1.components[0] = random_tensor(&gwa, &mut rng);
        }
        let d = tot_diff(&gwa, &e).unwrap();
        prop_assert!(augmentation(&gwa, &d.row0).is_zero());
    }

    #[test]
    fn c_boundaries_have_preimages(idx in 0usize..11, seed in any::<u64>(), i in 1usize..=2) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let source = random_c(&gwa, &mut rng, i + 1, gwa.l() + 3);
        let target = c_diff(&gwa, i + 1, &source).unwrap();
        let window = source.filtration_degree(gwa.l()).unwrap_or(0);
        let pre = c_solve_preimage(&gwa, i, &target, window).unwrap();
        prop_assert!(pre.is_some());
        prop_assert_eq!(c_diff(&gwa, i + 1, &pre.unwrap()).unwrap(), target);
    }

    #[test]
    fn per_diff_squares_to_zero(idx in 0usize..11, seed in any::<u64>(), degree in 0usize..=2, twisted: bool) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = modules(&gwa)[usize::from(twisted)].clone();
        let c = random_cochain(&gwa, &mut rng, degree, &module, gwa.l() + 3, 3);
        let dd = per_diff(&gwa, &per_diff(&gwa, &c).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn f_map_gives_cocycles(idx in 0usize..11, seed in any::<u64>(), twisted: bool) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = modules(&gwa)[usize::from(twisted)].clone();
        let m = gwa.random_element(&mut rng, gwa.l() + 4, 3);
        prop_assert!(is_cocycle(&gwa, &f_map(&gwa, &m, &module)).unwrap());
    }

    #[test]
    fn contract3_is_a_preimage(idx in 0usize..11, seed in any::<u64>(), twisted: bool) {
        let gwa = algebra(idx);
        prop_assume!(is_squarefree(gwa.phi()));
        let bez = bezout_for_phi(gwa.phi()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = modules(&gwa)[usize::from(twisted)].clone();
        let c = per_diff(&gwa, &random_cochain(&gwa, &mut rng, 2, &module, gwa.l() + 2, 2)).unwrap();
        prop_assert_eq!(per_diff(&gwa, &contract3(&gwa, &c, &bez).unwrap()).unwrap(), c);
    }

    #[test]
    fn split2_reconstructs(idx in 0usize..11, seed in any::<u64>(), twisted: bool) {
        let gwa = algebra(idx);
        prop_assume!(is_squarefree(gwa.phi()));
        let bez = bezout_for_phi(gwa.phi()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = modules(&gwa)[usize::from(twisted)].clone();
        let u0 = random_cochain(&gwa, &mut rng, 1, &module, gwa.l() + 2, 2);
        let m0 = gwa.random_element(&mut rng, gwa.l() + 2, 2);
        let c = per_diff(&gwa, &u0).unwrap().sum(&f_map(&gwa, &m0, &module));
        let (u, n2) = split2(&gwa, &c, &bez).unwrap();
        prop_assert_eq!(per_diff(&gwa, &u).unwrap().sum(&f_map(&gwa, &n2, &module)), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn f_of_commutator_is_a_coboundary(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = algebra(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = gwa.random_element(&mut rng, gwa.l() + 1, 1);
        let m = gwa.random_element(&mut rng, gwa.l() + 1, 1);
        // f takes values in A, the commutator is taken in A^ν
        let comm = twisted_commutator(&gwa, &gwa.a_nu(), &b, &m);
        let c = f_map(&gwa, &comm, &BimoduleSpec::regular());
        let window = c.filtration_degree(gwa.l()).unwrap_or(0) + gwa.l() + 2;
        let u = solve_coboundary(&gwa, &c, window).unwrap();
        prop_assert!(u.is_some());
        prop_assert_eq!(per_diff(&gwa, &u.unwrap()).unwrap(), c);
    }

    #[test]
    fn theta_prime_is_a_chain_map(idx in 0usize..11, seed in any::<u64>(), twisted: bool) {
        let gwa = Arc::new(algebra(idx));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = modules(&gwa)[usize::from(twisted)].clone();
        let f = random_table_cochain(&gwa, &mut rng, gwa.l() + 3);
        let lhs = per_diff(&gwa, &thetaprime2(&f, &module)).unwrap();
        prop_assert_eq!(lhs, thetaprime3(&module_coboundary(&f, &module), &module));
    }

    #[test]
    fn circle_is_bilinear(idx in 0usize..11, seed in any::<u64>(), s in -3i64..=3) {
        let gwa = Arc::new(algebra(idx));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = gwa.l() + 2;
        let [f, f2, g] = [0; 3].map(|_| random_table_cochain(&gwa, &mut rng, w));
        let (fa, fb) = (f.clone(), f2.clone());
        let mix = Cochain2::from_fn(gwa.clone(), move |a, b| {
            fa.eval_basis(a, b) + fb.eval_basis(a, b).scale(&r(s))
        });
        let (lhs, c1, c2) = (circle(&mix, &g), circle(&f, &g), circle(&f2, &g));
        let (gl, f1c, f2c) = (circle(&g, &mix), circle(&g, &f), circle(&g, &f2));
        for _ in 0..6 {
            let t = [0; 3].map(|_| {
                let win = gwa.basis_window(w);
                win[rng.random_range(0..win.len())]
            });
            prop_assert_eq!(
                lhs.eval_basis(t[0], t[1], t[2]),
                c1.eval_basis(t[0], t[1], t[2]) + c2.eval_basis(t[0], t[1], t[2]).scale(&r(s))
            );
            prop_assert_eq!(
                gl.eval_basis(t[0], t[1], t[2]),
                f1c.eval_basis(t[0], t[1], t[2]) + f2c.eval_basis(t[0], t[1], t[2]).scale(&r(s))
            );
        }
    }

    #[test]
    fn first_order_cochain_is_normalized_and_unique(idx in 0usize..11, seed in any::<u64>()) {
        let gwa = Arc::new(algebra(idx));
        prop_assume!(gwa.params().is_noncommutative());
        let kind = kind_of(gwa.params()).unwrap();
        let f = first_order(gwa.clone(), kind).unwrap();
        let again = first_order(gwa.clone(), kind).unwrap();
        prop_assert!(condition_violations(&f, gwa.l() + 3).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let win = gwa.basis_window(2 * gwa.l() + 4);
        for _ in 0..8 {
            let (a, b) = (win[rng.random_range(0..win.len())], win[rng.random_range(0..win.len())]);
            prop_assert_eq!(f.eval_basis(a, b), again.eval_basis(a, b));
            if a == Mono::ONE || b == Mono::ONE {
                prop_assert!(f.eval_basis(a, b).is_zero());
            }
        }
    }

    #[test]
    fn star_product_unit_and_associativity(idx in 0usize..11, seed in any::<u64>()) {
        let c = corpus();
        let params = c[idx % c.len()].params.clone();
        let sp = build_star(params, 2).unwrap();
        let gwa = sp.gwa().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [u, v, w] = [0; 3].map(|_| gwa.random_element(&mut rng, gwa.l() + 2, 2));
        let unit = GwaElement::one();
        prop_assert_eq!(sp.star(&unit, &u).coeffs, gwa_core::TruncatedElement::constant(2, u.clone()).coeffs);
        prop_assert_eq!(sp.star(&u, &unit).coeffs, gwa_core::TruncatedElement::constant(2, u.clone()).coeffs);
        prop_assert!(sp.check_assoc(&u, &v, &w).is_zero());
    }

    #[test]
    fn commutator_spans_grow_and_contain_commutators(idx in 0usize..11, seed in any::<u64>(), twisted: bool) {
        let gwa = algebra(idx);
        let module = modules(&gwa)[usize::from(twisted)].clone();
        let w = gwa.l() + 3;
        let small = commutator_span(&gwa, &module, w);
        let mut big = small.clone();
        big.extend(&gwa, &module, w + 2);
        for row in small.echelon.rows() {
            prop_assert!(big.echelon.contains(row));
        }
        prop_assert!(big.rank() >= small.rank());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let win = gwa.basis_window(w);
        for _ in 0..6 {
            let (b, m) = (win[rng.random_range(0..win.len())], win[rng.random_range(0..win.len())]);
            if gwa.degree_of(b) + gwa.degree_of(m) <= w {
                let c = twisted_commutator(&gwa, &module, &GwaElement::mono(b), &GwaElement::mono(m));
                prop_assert!(small.contains(&c));
            }
        }
    }

    #[test]
    fn quantum_monomials_with_nontrivial_weight_vanish(idx in 0usize..6, i in 1usize..=3, j in -2i64..=2) {
        let gwa = algebra(idx);
        prop_assume!(gwa.lambda().pow(j) != Rational::one());
        let m = Mono::new(i, j);
        let span = commutator_span(&gwa, &gwa.a_nu(), gwa.degree_of(m));
        prop_assert!(span.contains(&GwaElement::mono(m)));
    }
}

#[test]
fn module_coboundary_agrees_with_b_on_the_regular_module() {
    let gwa = Arc::new(algebra(3));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = random_table_cochain(&gwa, &mut rng, gwa.l() + 3);
    let (ours, theirs) = (module_coboundary(&f, &BimoduleSpec::regular()), hochschild_b(&f));
    for (a, b) in basis_pairs(&gwa, gwa.l() + 3) {
        for c in gwa.basis_window(2) {
            assert_eq!(ours.eval_basis(a, b, c), theirs.eval_basis(a, b, c));
        }
    }
}
