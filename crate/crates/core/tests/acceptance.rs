//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every comparison is exact.

use std::collections::BTreeSet;
use std::process::ExitCode;

use conecalc::blowup::BlowupPresentation;
use conecalc::catalog::{self, params};
use conecalc::expr::{Class, Ring, Space};
use conecalc::formulas;
use conecalc::linalg::{self, q, q_frac, Q};
use conecalc::ring::Monomial;
use conecalc::secant::{incidence_divisor, secant_degree, PsiMaps, SecantBundleRing};
use conecalc::{MixedClass, PolyCone};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5EC4_2024;
const ORACLE_PAIRS: usize = 200;
const RANDOM_CONES: usize = 50;
const SLOPE_M_MAX: u32 = 1000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail.into(),
        }
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        Outcome {
            pass: false,
            detail: format!(
                "{} failure(s); first: {}",
                failures.len(),
                shown.join(" | ")
            ),
        }
    }
}

fn guarded(f: fn() -> Outcome) -> Outcome {
    std::panic::catch_unwind(f).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Outcome {
            pass: false,
            detail: format!("panicked: {msg}"),
        }
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (
            "ring products agree with an independent free-expansion oracle",
            c01_ring_oracle,
        ),
        (
            "numerical relation in codimension r-1 and Num ranks, r = 4..10",
            c02_relation_and_ranks,
        ),
        (
            "secant bundle relation from the truncated Chern series, n = 4..10",
            c03_bundle_relation,
        ),
        (
            "incidence divisor coefficient n-2, n = 3..10",
            c04_incidence,
        ),
        ("secant degrees", c05_secant_degrees),
        (
            "psi pushforward closed forms, multiplicativity, projection formula, n = 5..8",
            c06_psi,
        ),
        (
            "cone B inside cone A, A has four extremal generators, n = 5..9",
            c07_cones_ab,
        ),
        (
            "[S_2] pairs negatively and its slope exceeds 1/(n-2), n = 5..9",
            c08_s2,
        ),
        ("P^3 and line blow-up catalog", c09_catalog),
        (
            "slope bound for curves on a surface, d = 2..6, e = 1..40",
            c10_slope,
        ),
        ("X_3, Y_3, Q_3 coherence and r = 3 degrees", c11_coherence),
        (
            "cone engine round trip and dual antitonicity",
            c12_cone_engine,
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = guarded(*f);
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// ---------------------------------------------------------------------------
// 1. Oracle: classes in X_r as dense integer arrays, multiplied by expanding
// freely and then dropping h1^2, h2^(r-1) and H^(r+1).

#[derive(Debug, Clone, PartialEq)]
struct Dense {
    amb: Vec<i128>,
    exc: Vec<[i128; 2]>,
}

impl Dense {
    fn zero(r: usize) -> Self {
        Dense {
            amb: vec![0; r + 1],
            exc: vec![[0; 2]; r - 1],
        }
    }
}

fn dense_mul(x: &Dense, y: &Dense, d: i128, twist: i128) -> Dense {
    let r = x.amb.len() - 1;
    let mut z = Dense::zero(r);
    for i in 0..=r {
        for j in 0..=r - i {
            z.amb[i + j] += x.amb[i] * y.amb[j];
        }
    }
    for (hs, ex) in [(&x.amb, &y.exc), (&y.amb, &x.exc)] {
        for (i, &c) in hs.iter().enumerate() {
            for (p, row) in ex.iter().enumerate() {
                for (k, &e) in row.iter().enumerate() {
                    // H^i restricts to (d h1)^i.
                    if i + k <= 1 {
                        z.exc[p][k + i] += c * e * d.pow(i as u32);
                    }
                }
            }
        }
    }
    for (p1, r1) in x.exc.iter().enumerate() {
        for (k1, &c1) in r1.iter().enumerate() {
            for (p2, r2) in y.exc.iter().enumerate() {
                for (k2, &c2) in r2.iter().enumerate() {
                    let (p, k, c) = (p1 + p2, k1 + k2, c1 * c2);
                    // j(a) j(b) = -j((h2 - twist*h1) a b)
                    if p < r - 2 && k <= 1 {
                        z.exc[p + 1][k] -= c;
                    }
                    if p <= r - 2 && k == 0 {
                        z.exc[p][k + 1] += twist * c;
                    }
                }
            }
        }
    }
    z
}

fn random_dense(rng: &mut StdRng, r: usize) -> Dense {
    let mut x = Dense::zero(r);
    for c in x.amb.iter_mut() {
        if rng.gen_bool(0.5) {
            *c = rng.gen_range(-4..=4);
        }
    }
    for row in x.exc.iter_mut() {
        for c in row.iter_mut() {
            if rng.gen_bool(0.4) {
                *c = rng.gen_range(-4..=4);
            }
        }
    }
    x
}

fn dense_to_class(s: &BlowupPresentation, x: &Dense) -> MixedClass {
    let mut out = s.zero();
    for (k, &c) in x.amb.iter().enumerate() {
        out = &out + &s.h_pow(k as u32).scale(&q(c as i64));
    }
    for (p, row) in x.exc.iter().enumerate() {
        for (k, &c) in row.iter().enumerate() {
            out = &out + &s.j_mono(p as i64, k as i64).unwrap().scale(&q(c as i64));
        }
    }
    out
}

fn class_to_dense(x: &MixedClass, r: usize) -> Option<Dense> {
    let mut z = Dense::zero(r);
    let int = |c: &Q| c.is_integer().then(|| c.to_integer().to_i128()).flatten();
    for (m, c) in x.ambient.terms() {
        z.amb[m.exponent(0) as usize] += int(c)?;
    }
    let g = x.exceptional.gens();
    let (i2, i1) = (g.index("h2")?, g.index("h1")?);
    for (m, c) in x.exceptional.terms() {
        *z.exc
            .get_mut(m.exponent(i2) as usize)?
            .get_mut(m.exponent(i1) as usize)? += int(c)?;
    }
    Some(z)
}

fn c01_ring_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for (r, pairs) in [(4usize, ORACLE_PAIRS / 2), (5, ORACLE_PAIRS / 2)] {
        let s = BlowupPresentation::rnc(r as u32).unwrap();
        let (d, a) = (r as i128, r as i128 + 2);
        for i in 0..pairs {
            let x = random_dense(&mut rng, r);
            let y = random_dense(&mut rng, r);
            let want = dense_mul(&x, &y, d, a);
            let got = s.product(&dense_to_class(&s, &x), &dense_to_class(&s, &y));
            if class_to_dense(&got, r).as_ref() != Some(&want) {
                failures.push(format!("X_{r} pair {i}: got {got}"));
            }
        }
    }
    outcome(&failures, format!("{ORACLE_PAIRS} random pairs, exact"))
}

// ---------------------------------------------------------------------------

fn c02_relation_and_ranks() -> Outcome {
    let mut failures = Vec::new();
    for r in 4..=10i64 {
        let s = BlowupPresentation::rnc(r as u32).unwrap();
        let rel = &(&s.j_mono(r - 2, 0).unwrap() - &s.h_pow(r as u32 - 1).scale(&q(r)))
            + &s.j_mono(r - 3, 1).unwrap().scale(&q(r + 2));
        for (name, x) in [("H", s.h()), ("E", s.e())] {
            let v = s.pair(&rel, &x).unwrap();
            if !v.is_zero() {
                failures.push(format!("r={r}: <relation, {name}> = {v}"));
            }
        }
        let ranks: Vec<usize> = (1..r as usize)
            .map(|k| s.numerical_basis(k).unwrap().rank())
            .collect();
        let mut want = vec![3; r as usize - 1];
        want[0] = 2;
        *want.last_mut().unwrap() = 2;
        if ranks != want {
            failures.push(format!("r={r}: ranks {ranks:?}"));
        }
    }
    outcome(
        &failures,
        "kernel membership and ranks (2,3,...,3,2) for r = 4..10",
    )
}

fn c03_bundle_relation() -> Outcome {
    let mut failures = Vec::new();
    for n in 4..=10i64 {
        let ring = SecantBundleRing::new(n as u32, 2).unwrap();
        let rel = ring.relation();
        let (z, h) = (
            ring.gens().index("zeta").unwrap(),
            ring.gens().index("h").unwrap(),
        );
        let want = [
            (Monomial::var(z, 2), q(1)),
            (Monomial::from_exponents([(z, 1), (h, 1)]), q(-(n - 1))),
            (Monomial::var(h, 2), q(n * (n - 1) / 2)),
        ];
        let ok = rel.len() == 3 && want.iter().all(|(m, c)| &rel.coeff(m) == c);
        if !ok {
            failures.push(format!("n={n}: {rel}"));
        }
    }
    outcome(
        &failures,
        "zeta^2 - (n-1) zeta h + C(n,2) h^2 for n = 4..10",
    )
}

fn c04_incidence() -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=10u32 {
        let (d, m) = incidence_divisor(n).unwrap();
        let ring = SecantBundleRing::new(n, 2).unwrap();
        let z2 = ring.pow(&ring.zeta(), 2).unwrap();
        let deg = ring.degree(&ring.mul(&d, &z2).unwrap()).unwrap();
        if m != BigInt::from(n - 2) || !deg.is_zero() {
            failures.push(format!("n={n}: m = {m}, deg(D zeta^2) = {deg}"));
        }
    }
    outcome(&failures, "m = n-2 and deg(D zeta^2) = 0 for n = 3..10")
}

fn c05_secant_degrees() -> Outcome {
    let mut failures = Vec::new();
    for n in 4..=10u32 {
        let want = BigInt::from((n - 1) * (n - 2) / 2);
        let got = secant_degree(n, 2).unwrap();
        if got != want {
            failures.push(format!("n={n}: deg zeta^3 = {got}"));
        }
    }
    for k in 2..=4u32 {
        let got = secant_degree(2 * k, k).unwrap();
        if got != BigInt::from(k + 1) {
            failures.push(format!("k={k}: deg zeta^(2k-1) = {got}"));
        }
    }
    outcome(&failures, "C(n-1,2) for n = 4..10; k+1 for k = 2,3,4")
}

fn blow_class(ring: &Ring, text: &str) -> MixedClass {
    match ring.eval_str(text).unwrap() {
        Class::Blowup(x) => x,
        Class::Secant(_) => unreachable!(),
    }
}

fn c06_psi() -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=8i64 {
        let psi = PsiMaps::new(n as u32).unwrap();
        let s = psi.space();
        let b = psi.bundle();
        let ring = Ring::Blowup(s.clone());
        let c2 = (n - 1) * (n - 2) / 2;
        let forms = [
            (
                "psi_* h",
                psi.pushforward(&b.h()).unwrap(),
                format!(
                    "{}*H^{} - j(h2^{}) - {}*j(h2^{}*h1)",
                    n - 1,
                    n - 2,
                    n - 3,
                    2 * n,
                    n - 4
                ),
                n as usize - 2,
            ),
            (
                "psi_* 1",
                psi.secant_class().unwrap(),
                format!(
                    "{c2}*H^{} - {}*j(h2^{}) - {}*j(h2^{}*h1)",
                    n - 3,
                    n - 2,
                    n - 4,
                    (n + 2) * (n - 2),
                    n - 5
                ),
                n as usize - 3,
            ),
            (
                "psi_* zeta",
                psi.pushforward(&b.zeta()).unwrap(),
                format!("{c2}*H^{} - {}*j(h2^{}*h1)", n - 2, n * (n - 2), n - 4),
                n as usize - 2,
            ),
        ];
        for (name, got, text, k) in &forms {
            let want = blow_class(&ring, text);
            if s.to_num(got, *k).unwrap() != s.to_num(&want, *k).unwrap() {
                failures.push(format!("n={n}: {name} = {got}, expected {text}"));
            }
        }
        for k1 in 0..=n as usize {
            for k2 in 0..=n as usize - k1 {
                for (la, x) in s.standard_generators(k1) {
                    for (lb, y) in s.standard_generators(k2) {
                        let lhs = psi.pullback(&s.product(&x, &y)).unwrap();
                        let rhs = b
                            .mul(&psi.pullback(&x).unwrap(), &psi.pullback(&y).unwrap())
                            .unwrap();
                        if lhs != rhs {
                            failures.push(format!("n={n}: psi^*({la} * {lb})"));
                        }
                    }
                }
            }
        }
        for g in 0..=3u32 {
            for gamma in b.monomial_basis(g) {
                let pushed = psi.pushforward(&gamma).unwrap();
                for (lb, beta) in s.standard_generators(3 - g as usize) {
                    let lhs = s.pair(&pushed, &beta).unwrap();
                    let rhs = b
                        .degree(&b.mul(&gamma, &psi.pullback(&beta).unwrap()).unwrap())
                        .unwrap();
                    if lhs != rhs {
                        failures.push(format!("n={n}: projection formula at {gamma}, {lb}"));
                    }
                }
            }
        }
    }
    outcome(
        &failures,
        "closed forms, psi^* on all generator pairs, projection formula on the full grid",
    )
}

fn c07_cones_ab() -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=9i64 {
        let s = BlowupPresentation::rnc(n as u32).unwrap();
        let ring = Ring::Blowup(s.clone());
        let k = n as usize - 2;
        let nb = s.numerical_basis(k).unwrap();
        let gens_text = [
            format!(
                "{}*H^{} - j(h2^{}) - {}*j(h2^{}*h1)",
                n - 1,
                n - 2,
                n - 3,
                2 * n,
                n - 4
            ),
            format!("H^{} - 3*j(h2^{}*h1)", n - 2, n - 4),
            format!("j(h2^{})", n - 3),
            format!("j(h2^{}*h1)", n - 4),
        ];
        let gens: Vec<Vec<Q>> = gens_text
            .iter()
            .map(|t| s.to_num_in(&nb, &blow_class(&ring, t)).unwrap())
            .collect();
        let a = PolyCone::from_rays(3, &gens).unwrap();
        // 0 <= a, 0 <= b, a <= 1/(n-1), 2b + (3n-8)a <= 6 for x H^(n-2) - a x j(..) - b x j(..).
        let ineq: Vec<Vec<Q>> = [[0, -1, 0], [0, 0, -1], [1, n - 1, 0], [6, 3 * n - 8, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        let b = PolyCone::from_inequalities(3, &ineq).unwrap();
        if !a.includes(&b).unwrap() {
            failures.push(format!("n={n}: B not inside A"));
        }
        for (t, g) in gens_text.iter().zip(&gens) {
            let tight: Vec<Vec<Q>> = a
                .facets()
                .iter()
                .map(|f| linalg::to_q(f))
                .filter(|f| linalg::dot(f, g).is_zero())
                .collect();
            if linalg::rank(&tight) != 2 {
                failures.push(format!(
                    "n={n}: {t} has facet rank {}",
                    linalg::rank(&tight)
                ));
            }
        }
        if a.rays().len() != 4 {
            failures.push(format!("n={n}: A has {} rays", a.rays().len()));
        }
    }
    outcome(
        &failures,
        "B subset of A and facet rank 2 at each generator, n = 5..9",
    )
}

fn c08_s2() -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=9i64 {
        let psi = PsiMaps::new(n as u32).unwrap();
        let s = psi.space();
        let s2 = psi.secant_class().unwrap();
        let t = &s.h_pow(3) - &s.j_mono(1, 1).unwrap().scale(&q(n - 2));
        let v = s.pair(&t, &s2).unwrap();
        if !v.is_negative() {
            failures.push(format!("n={n}: pairing {v}"));
        }
        let coords = s.to_num(&s2, n as usize - 3).unwrap();
        let slope = -&coords[1] / &coords[0];
        if slope != q_frac(n - 2, (n - 1) * (n - 2) / 2) || slope <= q_frac(1, n - 2) {
            failures.push(format!("n={n}: slope {slope}"));
        }
    }
    outcome(
        &failures,
        "negative pairing and (n-2)/C(n-1,2) > 1/(n-2) for n = 5..9",
    )
}

fn c09_catalog() -> Outcome {
    let mut failures = Vec::new();
    let mut run = |id: &str, p: catalog::Params| match catalog::verify_case(id, &p) {
        Ok(r) => {
            for c in r.failed() {
                failures.push(format!("{id} {p:?}: {}", c.name));
            }
        }
        Err(e) => failures.push(format!("{id} {p:?}: {e}")),
    };
    for r in 3..=8 {
        for k in 1..r {
            run("effW_k", params(&[("r", r), ("k", k)]));
        }
    }
    for d in 3..=8 {
        run("eff1_Y", params(&[("d", d)]));
        run("effdiv_Y", params(&[("d", d)]));
    }
    for d in 1..=6 {
        run("lowdeg_Q", params(&[("d", d)]));
    }
    for d in 3..=8i64 {
        let a = formulas::h0_p3(d - 1).unwrap();
        let b = formulas::h0_curve(d as u32, d - 1).unwrap();
        if a != BigInt::from((d + 2) * (d + 1) * d / 6) || b != BigInt::from(d * d - d + 1) {
            failures.push(format!("d={d}: h0 counts {a}, {b}"));
        }
    }
    let nums = [
        (formulas::berzolari(6, 0).unwrap(), 20),
        (formulas::berzolari(5, 0).unwrap(), 8),
        (formulas::projection_nodes(6).unwrap(), 6),
        (formulas::projection_nodes(4).unwrap(), 1),
    ];
    for (got, want) in nums {
        if got != BigInt::from(want) {
            failures.push(format!("value {got}, expected {want}"));
        }
    }
    if !(q_frac(6, 20) < q_frac(1, 3) && q_frac(1, 3) < q_frac(3, 8)) {
        failures.push("ratio split".into());
    }
    outcome(
        &failures,
        "W_r for r = 3..8 all k; Y_d for d = 3..8; Q_d table and counts",
    )
}

fn c10_slope() -> Outcome {
    let mut failures = Vec::new();
    let mut finite_m = Vec::new();
    for d in 2..=6u32 {
        for e in 1..=40u32 {
            let lim = formulas::z_slope_limit(d, e).unwrap();
            if &lim * q(d.into()) != q(e.into()) {
                failures.push(format!("d={d} e={e}: limit {lim}"));
            }
            if (lim >= q(d.into())) != (e >= d * d) {
                failures.push(format!("d={d} e={e}: limit >= d disagrees with e >= d^2"));
            }
            let (ok, why) = catalog::slope_sweep(d, e, SLOPE_M_MAX).unwrap();
            if !ok {
                finite_m.push((d, e, why));
            }
        }
    }
    if let Some((d, e, why)) = finite_m.first() {
        let below = finite_m.iter().filter(|(d, e, _)| e < d).count();
        failures.push(format!(
            "finite-m bound fails at {} grid points ({below} of them with e < d), e.g. d={d} e={e} {why}",
            finite_m.len(),
        ));
    }
    outcome(
        &failures,
        "limit e/d, threshold e >= d^2, finite-m bounds below and monotone",
    )
}

fn c11_coherence() -> Outcome {
    let mut failures = Vec::new();
    let x3 = BlowupPresentation::rnc(3).unwrap();
    let y3 = BlowupPresentation::quadric_curve(3).unwrap();
    let q3 = BlowupPresentation::p3_curve(3, 5).unwrap();
    for k1 in 0..=3usize {
        for k2 in 0..=3 - k1 {
            let g = |s: &BlowupPresentation, k| s.standard_generators(k);
            for i in 0..g(&x3, k1).len() {
                for j in 0..g(&x3, k2).len() {
                    let ps: Vec<String> = [&x3, &y3, &q3]
                        .iter()
                        .map(|s| s.product(&g(s, k1)[i].1, &g(s, k2)[j].1).to_string())
                        .collect();
                    if ps[0] != ps[1] || ps[1] != ps[2] {
                        failures.push(format!("{} * {}: {ps:?}", g(&x3, k1)[i].0, g(&x3, k2)[j].0));
                    }
                }
            }
        }
    }
    let mut spaces = vec![("w:3".to_string(), 1i64, 1i64), ("xr:3".to_string(), 3, 5)];
    spaces.extend((3..=8).map(|d| (format!("y:{d}"), d, 2 * d - 1)));
    spaces.extend((1..=6).map(|d| (format!("p3:{d},{}", 2 * d - 1), d, 2 * d - 1)));
    for (spec, d, a) in spaces {
        let ring = spec.parse::<Space>().unwrap().build().unwrap();
        let Ring::Blowup(s) = &ring else {
            unreachable!()
        };
        let e2h = s.degree(&blow_class(&ring, "E^2*H")).unwrap();
        let e3 = s.degree(&blow_class(&ring, "E^3")).unwrap();
        if e2h != q(-d) || e3 != q(-2 * a) {
            failures.push(format!("{spec}: E^2 H = {e2h}, E^3 = {e3}"));
        }
    }
    outcome(
        &failures,
        "products agree on all generator pairs; E^2 H = -d and E^3 = -2 twist",
    )
}

// ---------------------------------------------------------------------------
// 12. Facets of a rank-3 cone found by brute force over pairs of generators.

fn brute_facets(gens: &[[i64; 3]]) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for (i, u) in gens.iter().enumerate() {
        for v in &gens[i + 1..] {
            let n = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            if n == [0, 0, 0] {
                continue;
            }
            let dots: Vec<i64> = gens
                .iter()
                .map(|g| g[0] * n[0] + g[1] * n[1] + g[2] * n[2])
                .collect();
            let sign = if dots.iter().all(|&x| x >= 0) {
                1
            } else if dots.iter().all(|&x| x <= 0) {
                -1
            } else {
                continue;
            };
            let g = n.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
            out.insert(n.iter().map(|x| sign * x / g).collect());
        }
    }
    out
}

fn random_pointed(rng: &mut StdRng) -> Vec<[i64; 3]> {
    loop {
        let k = rng.gen_range(3..=7);
        let gens: Vec<[i64; 3]> = (0..k)
            .map(|_| {
                [
                    rng.gen_range(1..=5),
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                ]
            })
            .collect();
        let rows: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| q(x)).collect())
            .collect();
        if linalg::rank(&rows) == 3 {
            return gens;
        }
    }
}

fn to_rows(gens: &[[i64; 3]]) -> Vec<Vec<Q>> {
    gens.iter()
        .map(|g| g.iter().map(|&x| q(x)).collect())
        .collect()
}

fn c12_cone_engine() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 12);
    let mut failures = Vec::new();
    for i in 0..RANDOM_CONES {
        let gens = random_pointed(&mut rng);
        let cone = PolyCone::from_rays(3, &to_rows(&gens)).unwrap();
        let facets: BTreeSet<Vec<i64>> = cone
            .facets()
            .iter()
            .map(|f| f.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        if facets != brute_facets(&gens) {
            failures.push(format!("cone {i}: facets {facets:?}"));
        }
        let facet_rows: Vec<Vec<Q>> = cone.facets().iter().map(|f| linalg::to_q(f)).collect();
        let back = PolyCone::from_inequalities(3, &facet_rows).unwrap();
        if back.rays() != cone.rays() || back.facets() != cone.facets() {
            failures.push(format!("cone {i}: round trip"));
        }
        // Every ray is a positive multiple of an input generator.
        for r in cone.rays() {
            let rq = linalg::to_q(r);
            let hit = to_rows(&gens)
                .iter()
                .any(|g| linalg::primitive(g) == linalg::primitive(&rq));
            if !hit {
                failures.push(format!("cone {i}: ray {r:?} is not a generator"));
            }
        }
        // Dual antitonicity: adding a generator shrinks the dual.
        let mut bigger = gens.clone();
        bigger.push(random_pointed(&mut rng)[0]);
        let big = PolyCone::from_rays(3, &to_rows(&bigger)).unwrap();
        let id: Vec<Vec<Q>> = (0..3)
            .map(|a| (0..3).map(|b| q((a == b) as i64)).collect())
            .collect();
        let (d_small, d_big) = (cone.dual_cone(&id).unwrap(), big.dual_cone(&id).unwrap());
        if !big.includes(&cone).unwrap() || !d_small.includes(&d_big).unwrap() {
            failures.push(format!("cone {i}: dual not antitone"));
        }
    }
    outcome(
        &failures,
        format!("{RANDOM_CONES} random rank-3 pointed cones, brute-force facets, duals"),
    )
}
