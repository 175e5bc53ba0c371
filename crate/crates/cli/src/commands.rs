use std::fs;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use gwa_core::complexes::{c_basis_element, c_basis_window, c_diff, verify_hdc};
use gwa_core::deform::{build_star, discover_second_order, f1_noncoboundary_evidence, kind_of};
use gwa_core::homology::{commutator_span, compare_h0, default_window};
use gwa_core::percomplex::{contract3, f_map, g_map, is_cocycle, per_diff, random_cochain, split2};
use gwa_core::scalars::bezout_for_phi;
use gwa_core::{BimoduleSpec, Gwa, GwaElement, GwaParams, Kind, Mono, PerCochain, Poly, Rational};

use crate::report::RunReport;
use crate::{Cli, CohomologyOp, Command, Global, ModuleArg, Payload};

#[derive(Deserialize)]
struct AlgebraConfig {
    lambda: Rational,
    #[serde(default = "Rational::zero")]
    eta: Rational,
    phi: Vec<Rational>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Deserialize)]
struct CochainPayload {
    degree: usize,
    #[serde(default)]
    module: Option<String>,
    components: Vec<String>,
}

fn load_algebra(g: &Global) -> Result<(GwaParams, String)> {
    let cfg = match &g.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<AlgebraConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => {
            let Some(phi) = &g.phi else {
                bail!("no algebra given: pass --config <file> or --phi (with --lambda/--eta)");
            };
            let phi = phi.split(',').map(|s| s.trim().parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
            let lambda = g.lambda.as_deref().unwrap_or("1").parse()?;
            let eta = g.eta.as_deref().unwrap_or("0").parse()?;
            AlgebraConfig { lambda, eta, phi, label: None }
        }
    };
    let params = GwaParams::new(cfg.lambda, cfg.eta, Poly::new(cfg.phi))?;
    let label = cfg.label.unwrap_or_else(|| {
        format!("lambda={} eta={} phi={}", params.lambda, params.eta, params.phi)
    });
    Ok((params, label))
}

fn strings(v: &[GwaElement]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn monos(v: &[Mono]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn cochain_json(c: &PerCochain) -> Value {
    json!({ "degree": c.degree, "module": c.module.name, "components": strings(&c.components) })
}

fn module(gwa: &Gwa, m: ModuleArg) -> BimoduleSpec {
    match m {
        ModuleArg::A => BimoduleSpec::regular(),
        ModuleArg::ANu => gwa.a_nu(),
    }
}

fn module_name(m: ModuleArg) -> &'static str {
    match m {
        ModuleArg::A => "A",
        ModuleArg::ANu => "A^nu",
    }
}

fn read_payload(gwa: &Gwa, p: &Payload) -> Result<Option<PerCochain>> {
    let Some(raw) = &p.cochain else { return Ok(None) };
    let text = match raw.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => raw.clone(),
    };
    let parsed: CochainPayload = serde_json::from_str(&text).context("parsing cochain payload")?;
    let spec = match &parsed.module {
        Some(name) => gwa.module_by_name(name)?,
        None => module(gwa, p.module),
    };
    let comps = parsed.components.iter().map(|s| gwa.parse_element(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(PerCochain::new(parsed.degree, spec, comps)?))
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let g = &cli.global;
    let (params, label) = load_algebra(g)?;
    let gwa = Gwa::new(params.clone());
    let l = gwa.l();
    let pjson = serde_json::to_value(&params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut rep;
    match &cli.command {
        Command::CheckAlgebra => {
            rep = RunReport::new("check-algebra", label, pjson, g.seed);
            let window = g.window.unwrap_or(2 * l + 4);
            rep.arg("window", window);
            check_algebra(&gwa, window, &mut rng, &mut rep);
        }
        Command::Mul { u, v } => {
            rep = RunReport::new("mul", label, pjson, g.seed);
            rep.arg("u", u);
            rep.arg("v", v);
            let (eu, ev) = (gwa.parse_element(u)?, gwa.parse_element(v)?);
            rep.result = json!(gwa.mul(&eu, &ev).to_string());
        }
        Command::Star { u, v } => {
            rep = RunReport::new("star", label, pjson, g.seed);
            check_order(g.order)?;
            rep.arg("u", u);
            rep.arg("v", v);
            rep.arg("order", g.order);
            let (eu, ev) = (gwa.parse_element(u)?, gwa.parse_element(v)?);
            let sp = build_star(params, g.order)?;
            rep.arg("kind", sp.kind);
            rep.result = json!(strings(&sp.star(&eu, &ev).coeffs));
        }
        Command::Cohomology { op } => {
            rep = RunReport::new("cohomology", label, pjson, g.seed);
            cohomology(&gwa, op, g, &mut rng, &mut rep)?;
        }
        Command::H0 => {
            rep = RunReport::new("h0", label, pjson, g.seed);
            let window = g.window.unwrap_or(default_window(l));
            rep.arg("window", window);
            let h0 = compare_h0(&params, window)?;
            rep.result = json!({
                "prediction": h0.prediction,
                "predicted": monos(&h0.prediction.survivors(&gwa, window)),
                "surviving": monos(&h0.quotient_basis),
                "outside_span": monos(&h0.surviving),
                "certified_zero": monos(&h0.certified_zero),
                "max_span_window": h0.max_span_window,
                "monomials": h0.monomials,
            });
            rep.summary = Some(format!(
                "surviving {{{}}} (predicted {{{}}})",
                monos(&h0.quotient_basis).join(", "),
                monos(&h0.prediction.survivors(&gwa, window)).join(", ")
            ));
            rep.notes.push("non-membership in a windowed span is one-sided evidence".into());
            rep.check("predicted classes independent", h0.survivors_independent, monos(&h0.quotient_basis));
            rep.check("other monomials reduce to predicted classes", h0.others_reduced, h0.max_span_window);
        }
        Command::DeformVerify { samples, no_discovery } => {
            rep = RunReport::new("deform-verify", label, pjson, g.seed);
            check_order(g.order)?;
            let window = g.window.unwrap_or(2 * l + 4);
            rep.arg("order", g.order);
            rep.arg("window", window);
            rep.arg("samples", samples);
            deform_verify(params, g.order, window, *samples, !*no_discovery, &mut rng, &mut rep)?;
        }
    }
    Ok(rep)
}

fn check_order(order: usize) -> Result<()> {
    if !(1..=8).contains(&order) {
        bail!("--order must lie in 1..=8, got {order}");
    }
    Ok(())
}

fn check_algebra(gwa: &Gwa, window: usize, rng: &mut ChaCha8Rng, rep: &mut RunReport) {
    let (x, y, z) = (GwaElement::x(), GwaElement::y(), GwaElement::z());
    let rels = [
        ("x*z = σ(z)x", gwa.mul(&x, &z), GwaElement::from_poly_x(gwa.sigma_pow(&Poly::z(), 1), 1)),
        ("y*z = σ⁻¹(z)y", gwa.mul(&y, &z), GwaElement::from_poly_x(gwa.sigma_pow(&Poly::z(), -1), -1)),
        ("y*x = φ(z)", gwa.mul(&y, &x), GwaElement::from_poly(gwa.phi().clone())),
        ("x*y = φ(σ(z))", gwa.mul(&x, &y), GwaElement::from_poly(gwa.sigma_pow(gwa.phi(), 1))),
    ];
    for (name, lhs, rhs) in rels {
        let residual = &lhs - &rhs;
        rep.check(format!("relation {name}"), residual.is_zero(), residual.to_string());
    }
    rep.timed("associativity on basis triples", || {
        let basis = gwa.basis_window(window);
        let bad: Vec<String> = basis
            .par_iter()
            .flat_map_iter(|&a| {
                let basis = &basis;
                basis.iter().flat_map(move |&b| {
                    let ab = gwa.mul_mono(a, b);
                    basis.iter().filter_map(move |&c| {
                        let ok = gwa.mul(&ab, &GwaElement::mono(c)) == gwa.mul(&GwaElement::mono(a), &gwa.mul_mono(b, c));
                        (!ok).then(|| format!("({a}, {b}, {c})"))
                    })
                })
            })
            .collect();
        (bad.is_empty(), json!({ "window": window, "triples": basis.len().pow(3), "failures": bad.iter().take(20).collect::<Vec<_>>() }))
    });
    let triples: Vec<_> = (0..200)
        .map(|_| [0; 3].map(|_| gwa.random_element(rng, window, 4)))
        .collect();
    rep.timed("associativity on random triples", || {
        let bad: Vec<usize> = triples
            .par_iter()
            .enumerate()
            .filter(|(_, [u, v, w])| gwa.mul(&gwa.mul(u, v), w) != gwa.mul(u, &gwa.mul(v, w)))
            .map(|(i, _)| i)
            .collect();
        (bad.is_empty(), json!({ "samples": triples.len(), "failures": bad }))
    });
    rep.timed("homotopy double complex identities (p ≤ 6)", || match verify_hdc(gwa, 6) {
        Ok(r) => {
            let failed: Vec<_> = r.entries.iter().filter(|e| !e.pass).collect();
            let detail = json!({ "identities": r.entries.len(), "failures": failed });
            (r.all_pass(), detail)
        }
        Err(e) => (false, json!(e.to_string())),
    });
    rep.timed("c_diff ∘ c_diff = 0 (i ≤ 6)", || {
        let mut bad = Vec::new();
        let mut checked = 0usize;
        for i in 2..=6 {
            for b in c_basis_window(gwa, i, gwa.l() + 3) {
                checked += 1;
                let el = c_basis_element(i, b);
                let dd = c_diff(gwa, i, &el).and_then(|d| c_diff(gwa, i - 1, &d));
                if !dd.is_ok_and(|d| d.is_zero()) {
                    bad.push(format!("C_{i} {b:?}"));
                }
            }
        }
        (bad.is_empty(), json!({ "checked": checked, "failures": bad }))
    });
}

fn cohomology(gwa: &Gwa, op: &CohomologyOp, g: &Global, rng: &mut ChaCha8Rng, rep: &mut RunReport) -> Result<()> {
    let l = gwa.l();
    let gen_window = l + 3;
    match op {
        CohomologyOp::F { element, module: m } => {
            rep.arg("op", "f");
            rep.arg("element", element);
            rep.arg("module", module_name(*m));
            let c = f_map(gwa, &gwa.parse_element(element)?, &module(gwa, *m));
            rep.check("f(m) is a cocycle", is_cocycle(gwa, &c)?, Value::Null);
            rep.result = cochain_json(&c);
        }
        CohomologyOp::G(p) => {
            rep.arg("op", "g");
            let bez = bezout_for_phi(gwa.phi())?;
            let spec = module(gwa, p.module);
            let (c, m) = match read_payload(gwa, p)? {
                Some(c) => (c, None),
                None => {
                    let m = gwa.random_element(rng, gen_window, 3);
                    let u = random_cochain(gwa, rng, 1, &spec, gen_window, 3);
                    (per_diff(gwa, &u)?.sum(&f_map(gwa, &m, &spec)), Some(m))
                }
            };
            rep.arg("cochain", cochain_json(&c));
            let n2 = g_map(gwa, &c, &bez)?;
            let (u, n2s) = split2(gwa, &c, &bez)?;
            let back = per_diff(gwa, &u)?.sum(&f_map(gwa, &n2s, &c.module));
            rep.check("∂¹(u) + f(g(c)) = c", back == c && n2s == n2, Value::Null);
            if let Some(m) = m {
                rep.arg("generated_m", m.to_string());
                if c.module == BimoduleSpec::regular() {
                    let window = g.window.unwrap_or(2 * l + 8);
                    let span = commutator_span(gwa, &gwa.a_nu(), window);
                    rep.check("g(c) − m ∈ [A, A^ν]", span.contains(&(&n2 - &m)), json!({ "window": window }));
                }
            }
            rep.result = json!(n2.to_string());
        }
        CohomologyOp::Contract3(p) => {
            rep.arg("op", "contract3");
            let bez = bezout_for_phi(gwa.phi())?;
            let c = match read_payload(gwa, p)? {
                Some(c) => c,
                None => per_diff(gwa, &random_cochain(gwa, rng, 2, &module(gwa, p.module), gen_window, 3))?,
            };
            rep.arg("cochain", cochain_json(&c));
            let n = contract3(gwa, &c, &bez)?;
            rep.check("per_diff(contract3(c)) = c", per_diff(gwa, &n)? == c, Value::Null);
            rep.result = cochain_json(&n);
        }
        CohomologyOp::Split2(p) => {
            rep.arg("op", "split2");
            let bez = bezout_for_phi(gwa.phi())?;
            let spec = module(gwa, p.module);
            let c = match read_payload(gwa, p)? {
                Some(c) => c,
                None => {
                    let m = gwa.random_element(rng, gen_window, 3);
                    let u = random_cochain(gwa, rng, 1, &spec, gen_window, 3);
                    per_diff(gwa, &u)?.sum(&f_map(gwa, &m, &spec))
                }
            };
            rep.arg("cochain", cochain_json(&c));
            let (u, n2) = split2(gwa, &c, &bez)?;
            let back = per_diff(gwa, &u)?.sum(&f_map(gwa, &n2, &c.module));
            rep.check("∂¹(u) + f(n2) = c", back == c, Value::Null);
            rep.result = json!({ "u": cochain_json(&u), "n2": n2.to_string() });
        }
        CohomologyOp::Diff { payload, degree } => {
            rep.arg("op", "diff");
            let c = match read_payload(gwa, payload)? {
                Some(c) => c,
                None => random_cochain(gwa, rng, *degree, &module(gwa, payload.module), gen_window, 3),
            };
            rep.arg("cochain", cochain_json(&c));
            let d = per_diff(gwa, &c)?;
            rep.check("per_diff ∘ per_diff = 0", per_diff(gwa, &d)?.is_zero(), Value::Null);
            rep.result = cochain_json(&d);
        }
    }
    Ok(())
}

fn deform_verify(
    params: GwaParams,
    order: usize,
    window: usize,
    samples: usize,
    discovery: bool,
    rng: &mut ChaCha8Rng,
    rep: &mut RunReport,
) -> Result<()> {
    let kind = kind_of(&params)?;
    rep.arg("kind", kind);
    let sp = build_star(params, order)?;
    let gwa = sp.gwa().clone();
    let l = gwa.l();
    for (k, f) in sp.check_relations().iter().enumerate() {
        rep.check(format!("relation f{}", k + 1), f.is_zero(), strings(&f.coeffs));
    }
    for n in 2..=order {
        rep.timed(&format!("obstruction n={n}"), || {
            let r = sp.check_obstruction(n, window);
            (r.pass, r)
        });
    }
    let aw = l + 3;
    let triples: Vec<_> = (0..samples).map(|_| [0; 3].map(|_| gwa.random_element(rng, aw, 2))).collect();
    rep.timed("associativity on random triples", || {
        let bad: Vec<usize> = triples
            .par_iter()
            .enumerate()
            .filter(|(_, [u, v, w])| !sp.check_assoc(u, v, w).is_zero())
            .map(|(i, _)| i)
            .collect();
        (bad.is_empty(), json!({ "samples": samples, "degree": aw, "failures": bad }))
    });
    rep.timed("Γ-preservation", || {
        let r = sp.check_local_finiteness(window);
        (r.pass, r)
    });
    if kind == Kind::Quantum || l >= 2 {
        let w = 2 * l + 8;
        let ev = f1_noncoboundary_evidence(&gwa, kind, w)?;
        if let Some(u) = &ev.preimage {
            rep.notes.push(format!(
                "F_1 = ∂¹(u) with u = ({}): the first-order deformation is trivial",
                strings(u).join(", ")
            ));
        }
        rep.check("F_1 is not a coboundary (windowed evidence)", !ev.preimage_found, ev);
    } else {
        rep.notes.push(format!(
            "classical with deg φ = {l} < 2: H² vanishes, so every formal deformation of A is equivalent to the trivial one"
        ));
    }
    if discovery && order >= 2 {
        if bezout_for_phi(gwa.phi()).is_err() {
            rep.notes.push("discovery mode skipped: φ has multiple roots".into());
        } else {
            let d = discover_second_order(&sp, window)?;
            rep.notes.push(if d.matches_closed_form {
                "discovery: second-order data recovered from the obstruction cocycle equal the closed forms".into()
            } else {
                "discovery: recovered second-order data differ from the closed forms by a cocycle".into()
            });
            let pass = d.preimage_verified && d.integrates;
            let detail = json!({
                "matches_closed_form": d.matches_closed_form,
                "preimage_verified": d.preimage_verified,
                "integrates": d.integrates,
                "discovered": strings(&d.discovered),
                "closed_form": strings(&d.closed_form),
            });
            rep.check("second-order discovery", pass, detail);
        }
    }
    Ok(())
}
