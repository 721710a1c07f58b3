//! Cone statements and numeric formulas, each with an executable check.
//!
//! A record declares its parameter ranges, the claimed generators and
//! certificate classes for every instance (as expression strings), and a
//! procedure that recomputes everything from the rings and the cone engine.
//!
//! Claims with a geometric proof (nefness, base-point freeness, existence of
//! a surface through a curve) are checked only through their numerical
//! certificates: every certificate pairs nonnegatively with every generator,
//! and each generator is cut out by certificates of rank one less than the
//! group. The report carries an `assumed-geometric-input` note for each such
//! input, so a pass never claims more than was computed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{h_label, j_label, BlowupPresentation};
use crate::cone::PolyCone;
use crate::error::{Error, Result};
use crate::expr::{Class, Ring, Space};
use crate::formulas;
use crate::linalg::{self, q, q_frac, Q};
use crate::ring::{binomial, render_terms, FormalSum, Monomial};
use crate::secant::{closed_forms, incidence_divisor, secant_degree, PsiMaps, SecantBundleRing};

pub type Params = BTreeMap<String, i64>;

/// Upper bound on the ambient dimension in sweeps.
pub const DEFAULT_MAX_R: i64 = 10;

/// Reads `CONECALC_MAX_R`, falling back to [`DEFAULT_MAX_R`].
pub fn max_r_from_env() -> i64 {
    std::env::var("CONECALC_MAX_R")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_R)
}

#[derive(Clone, Copy)]
pub enum Bound {
    Const(i64),
    /// A bound depending on earlier parameters, with its display form.
    Dep(&'static str, fn(&Params) -> i64),
}

impl Bound {
    pub fn eval(&self, p: &Params) -> i64 {
        match self {
            Bound::Const(c) => *c,
            Bound::Dep(_, f) => f(p),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Const(c) => write!(f, "{c}"),
            Bound::Dep(s, _) => f.write_str(s),
        }
    }
}

#[derive(Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub lo: Bound,
    pub hi: Bound,
}

/// One cone statement of an instance: generators in codimension `codim` of
/// `space`, and certificate classes of complementary codimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    #[serde(serialize_with = "serialize_display")]
    pub space: Space,
    pub codim: usize,
    pub generators: Vec<String>,
    pub certificates: Vec<String>,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// A cone together with the labels of the basis its coordinates refer to.
#[derive(Debug, Clone)]
pub struct NamedCone {
    pub name: String,
    pub basis: Vec<String>,
    pub cone: PolyCone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Default)]
pub struct Checks {
    items: Vec<CheckResult>,
}

impl Checks {
    pub fn holds(
        &mut self,
        name: impl Into<String>,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        pass: bool,
    ) -> bool {
        self.items.push(CheckResult {
            name: name.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        });
        pass
    }

    pub fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        computed: T,
    ) -> bool {
        let pass = expected == computed;
        self.holds(name, expected, computed, pass)
    }

    pub fn truth(&mut self, name: impl Into<String>, computed: bool) -> bool {
        self.holds(name, true, computed, computed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    #[serde(serialize_with = "serialize_params")]
    pub params: Params,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub notes: Vec<String>,
}

fn serialize_params<S: serde::Serializer>(
    p: &Params,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(p.len()))?;
    for (k, v) in p {
        m.serialize_entry(k, &v.to_string())?;
    }
    m.end()
}

impl VerificationReport {
    /// JSON form with sorted keys.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub struct TheoremRecord {
    pub id: &'static str,
    pub family: &'static str,
    pub statement: &'static str,
    /// How the record is verified: `duality`, `cones`, `ring`, `formula`.
    pub procedure: &'static str,
    pub params: Vec<ParamSpec>,
    pub notes: Vec<&'static str>,
    pub open_questions: Vec<&'static str>,
    dimension: fn(&Params) -> i64,
    claims: fn(&Params) -> Vec<Claim>,
    checks: fn(&Params, &mut Checks) -> Result<()>,
    cones: fn(&Params) -> Result<Vec<NamedCone>>,
}

impl fmt::Debug for TheoremRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremRecord")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

impl TheoremRecord {
    /// Ambient dimension of an instance, compared against the sweep cap.
    pub fn dimension(&self, p: &Params) -> i64 {
        (self.dimension)(p)
    }

    pub fn claims(&self, p: &Params) -> Vec<Claim> {
        (self.claims)(p)
    }

    pub fn range_text(&self) -> String {
        self.params
            .iter()
            .map(|s| format!("{} = {}..{}", s.name, s.lo, s.hi))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn validate(&self, p: &Params) -> Result<()> {
        for k in p.keys() {
            if !self.params.iter().any(|s| s.name == k) {
                return Err(Error::OutOfRange(format!(
                    "case {} has no parameter `{k}`",
                    self.id
                )));
            }
        }
        for s in &self.params {
            let v = *p.get(s.name).ok_or_else(|| {
                Error::OutOfRange(format!("case {} needs parameter `{}`", self.id, s.name))
            })?;
            let (lo, hi) = (s.lo.eval(p), s.hi.eval(p));
            if v < lo || v > hi {
                return Err(Error::OutOfRange(format!(
                    "case {}: {} = {v} outside {}..{} ({}..{})",
                    self.id, s.name, s.lo, s.hi, lo, hi
                )));
            }
        }
        Ok(())
    }

    /// All parameter instances with dimension at most `max_r`, in
    /// lexicographic order of the declared parameters.
    pub fn instances(&self, max_r: i64) -> Vec<Params> {
        let mut out = vec![Params::new()];
        for s in &self.params {
            let mut next = Vec::new();
            for p in out {
                for v in s.lo.eval(&p)..=s.hi.eval(&p) {
                    let mut p2 = p.clone();
                    p2.insert(s.name.to_string(), v);
                    next.push(p2);
                }
            }
            out = next;
        }
        out.retain(|p| self.dimension(p) <= max_r);
        out
    }

    pub fn verify(&self, p: &Params) -> Result<VerificationReport> {
        self.validate(p)?;
        let mut ck = Checks::default();
        for claim in self.claims(p) {
            check_claim(&claim, &mut ck)?;
        }
        (self.checks)(p, &mut ck)?;
        let mut notes: Vec<String> = self.notes.iter().map(|s| s.to_string()).collect();
        notes.extend(
            self.open_questions
                .iter()
                .map(|s| format!("open question: {s}")),
        );
        let pass = ck.items.iter().all(|c| c.pass);
        Ok(VerificationReport {
            case: self.id.to_string(),
            params: p.clone(),
            checks: ck.items,
            pass,
            notes,
        })
    }

    /// The cones spanned by each claim, plus any auxiliary cones.
    pub fn cones(&self, p: &Params) -> Result<Vec<NamedCone>> {
        self.validate(p)?;
        let mut out = Vec::new();
        for claim in self.claims(p) {
            let ring = claim.space.build()?;
            let gens = eval_all(&ring, &claim.generators)?;
            let (basis, coords) = num_coords(&ring, &gens, claim.codim)?;
            out.push(NamedCone {
                name: claim.name.clone(),
                basis,
                cone: PolyCone::from_rays(coords[0].len(), &coords)?,
            });
        }
        out.extend((self.cones)(p)?);
        if out.is_empty() {
            return Err(Error::UnknownCase(format!(
                "{} has no associated cone",
                self.id
            )));
        }
        Ok(out)
    }

    pub fn to_json(&self, max_r: i64) -> Value {
        let range: Vec<Value> = self
            .params
            .iter()
            .map(|s| json!({ "name": s.name, "min": s.lo.to_string(), "max": s.hi.to_string() }))
            .collect();
        let instances: Vec<Value> = self
            .instances(max_r)
            .iter()
            .map(|p| {
                let params: BTreeMap<&String, String> =
                    p.iter().map(|(k, v)| (k, v.to_string())).collect();
                json!({ "params": params, "claims": self.claims(p) })
            })
            .collect();
        json!({
            "id": self.id,
            "family": self.family,
            "statement": self.statement,
            "procedure": self.procedure,
            "range": range,
            "instances": instances,
            "notes": self.notes,
            "open_questions": self.open_questions,
        })
    }
}

pub fn export_json(max_r: i64) -> Value {
    Value::Array(list_cases().iter().map(|r| r.to_json(max_r)).collect())
}

pub fn find_case(id: &str) -> Result<TheoremRecord> {
    list_cases()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

pub fn verify_case(id: &str, p: &Params) -> Result<VerificationReport> {
    find_case(id)?.verify(p)
}

pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn eval_all(ring: &Ring, xs: &[String]) -> Result<Vec<Class>> {
    xs.iter().map(|x| ring.eval_str(x)).collect()
}

fn ring_dim(ring: &Ring) -> usize {
    match ring {
        Ring::Blowup(s) => s.dim(),
        Ring::Secant(s) => s.dim() as usize,
    }
}

fn pair(ring: &Ring, x: &Class, y: &Class) -> Result<Q> {
    match (ring, x, y) {
        (Ring::Blowup(s), Class::Blowup(a), Class::Blowup(b)) => s.pair(a, b),
        (Ring::Secant(s), Class::Secant(a), Class::Secant(b)) => s.degree(&s.mul(a, b)?),
        _ => Err(Error::Inconsistent("class from a different space".into())),
    }
}

fn num_coords(ring: &Ring, xs: &[Class], k: usize) -> Result<(Vec<String>, Vec<Vec<Q>>)> {
    match ring {
        Ring::Blowup(s) => {
            let nb = s.numerical_basis(k)?;
            let coords = xs
                .iter()
                .map(|x| match x {
                    Class::Blowup(m) => s.to_num_in(&nb, m),
                    Class::Secant(_) => {
                        Err(Error::Inconsistent("class from a different space".into()))
                    }
                })
                .collect::<Result<_>>()?;
            Ok((nb.labels.clone(), coords))
        }
        Ring::Secant(s) => {
            let fs = xs
                .iter()
                .map(|x| match x {
                    Class::Secant(f) => Ok(f.clone()),
                    Class::Blowup(_) => {
                        Err(Error::Inconsistent("class from a different space".into()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            s.num_coords(&fs, k as u32)
        }
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(crate::ring::render_q).collect();
    format!("({})", parts.join(", "))
}

fn fmt_int_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn fmt_rays(rs: &[Vec<BigInt>]) -> String {
    rs.iter()
        .map(|r| fmt_int_vec(r))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs the duality-consistency procedure for one claim.
fn check_claim(claim: &Claim, ck: &mut Checks) -> Result<()> {
    let ring = claim.space.build()?;
    let dim = ring_dim(&ring);
    let pre = &claim.name;
    let gens = eval_all(&ring, &claim.generators)?;
    let certs = eval_all(&ring, &claim.certificates)?;
    let (basis, gc) = num_coords(&ring, &gens, claim.codim)?;
    let m = basis.len();
    ck.eq(
        format!("{pre}: generators span Num (rank)"),
        m,
        linalg::rank(&gc),
    );
    match PolyCone::from_rays(m, &gc) {
        Ok(cone) => {
            ck.eq(
                format!("{pre}: number of extremal rays"),
                gens.len(),
                cone.rays().len(),
            );
            for (g, c) in claim.generators.iter().zip(&gc) {
                let ext = cone.is_extremal(c)?;
                ck.truth(format!("{pre}: {g} spans an extremal ray"), ext);
            }
        }
        Err(e) => {
            ck.holds(
                format!("{pre}: generators span a pointed cone"),
                "pointed, full-dimensional",
                e,
                false,
            );
        }
    }
    if certs.is_empty() {
        return Ok(());
    }
    let (_, cc) = num_coords(&ring, &certs, dim - claim.codim)?;
    let mut table = Vec::new();
    for (name, c) in claim.certificates.iter().zip(&certs) {
        let row: Vec<Q> = gens
            .iter()
            .map(|g| pair(&ring, c, g))
            .collect::<Result<_>>()?;
        let ok = row.iter().all(|x| !x.is_negative());
        ck.holds(
            format!("{pre}: pairings of {name} with generators"),
            ">= 0",
            fmt_vec(&row),
            ok,
        );
        table.push(row);
    }
    for (j, g) in claim.generators.iter().enumerate() {
        let tight: Vec<Vec<Q>> = (0..certs.len())
            .filter(|&i| table[i][j].is_zero())
            .map(|i| cc[i].clone())
            .collect();
        ck.eq(
            format!("{pre}: rank of certificates vanishing on {g}"),
            m - 1,
            linalg::rank(&tight),
        );
    }
    Ok(())
}

/// `c1*x1 + c2*x2 + ...` in expression syntax, dropping zero terms.
fn lin(terms: &[(i64, String)]) -> String {
    render_terms(
        terms
            .iter()
            .filter(|(c, _)| *c != 0)
            .map(|(c, s)| (s.clone(), q(*c))),
    )
}

fn divisor(a: i64, b: i64) -> String {
    lin(&[(a, "H".into()), (-b, "E".into())])
}

fn get(p: &Params, k: &str) -> i64 {
    p[k]
}

fn no_cones(_: &Params) -> Result<Vec<NamedCone>> {
    Ok(Vec::new())
}

fn no_claims(_: &Params) -> Vec<Claim> {
    Vec::new()
}

fn dim3(_: &Params) -> i64 {
    3
}

const NEF_NOTE: &str =
    "assumed-geometric-input: the certificate classes are nef; only their pairings are checked";

pub fn list_cases() -> Vec<TheoremRecord> {
    vec![
        TheoremRecord {
            id: "eff1_PE",
            family: "SECANT_BUNDLE",
            statement: "Eff^1(P(E_{n,2})) = <h, 2*zeta - (n-2)*h>",
            procedure: "duality",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(3), hi: Bound::Const(10) }],
            notes: vec![
                NEF_NOTE,
                "assumed-geometric-input: h and D are contracted by the two projections, so the curve classes h^2 and zeta^2 are their certificates",
            ],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: |p| {
                let n = get(p, "n");
                vec![Claim {
                    name: "Eff^1(P(E))".into(),
                    space: Space::Sec(n as u32, 2),
                    codim: 1,
                    generators: vec!["h".into(), lin(&[(2, "zeta".into()), (-(n - 2), "h".into())])],
                    certificates: vec!["h^2".into(), "zeta^2".into()],
                }]
            },
            checks: |p, ck| {
                let n = get(p, "n");
                let (d, m) = incidence_divisor(n as u32)?;
                ck.eq("solved incidence coefficient m", BigInt::from(n - 2), m);
                let r = SecantBundleRing::new(n as u32, 2)?;
                let z2 = r.pow(&r.zeta(), 2)?;
                ck.eq("deg(D * zeta^2)", q(0), r.degree(&r.mul(&d, &z2)?)?);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "chow_PE",
            family: "SECANT_BUNDLE",
            statement: "CH(P(E_{n,2})) = Z[h, zeta] / (h^3, zeta^2 - (n-1)*h*zeta + C(n,2)*h^2)",
            procedure: "ring",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(3), hi: Bound::Const(10) }],
            notes: vec![],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: no_claims,
            checks: |p, ck| {
                let n = get(p, "n");
                let r = SecantBundleRing::new(n as u32, 2)?;
                let c2 = binomial(n as u64, 2);
                let want = FormalSum::from_terms(
                    r.gens(),
                    [
                        (Monomial::var(0, 2), q(1)),
                        (Monomial::from_exponents([(0, 1), (1, 1)]), q(-(n - 1))),
                        (Monomial::var(1, 2), linalg::q_int(&c2)),
                    ],
                );
                ck.eq("bundle relation from the truncated Chern series", want.to_string(), r.relation().to_string());
                let z3 = r.pow(&r.zeta(), 3)?;
                let coeff = BigInt::from((n - 1) * (n - 1)) - &c2;
                let want3 = FormalSum::from_terms(
                    r.gens(),
                    [(Monomial::from_exponents([(0, 1), (1, 2)]), linalg::q_int(&coeff))],
                );
                ck.eq("normal form of zeta^3", want3.to_string(), z3.to_string());
                let pt = r.mul(&r.zeta(), &r.pow(&r.h(), 2)?)?;
                ck.eq("deg(zeta * h^2)", q(1), r.degree(&pt)?);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "secant_degree",
            family: "SECANT_BUNDLE",
            statement: "deg zeta^3 in P(E_{n,2}) = C(n-1, 2)",
            procedure: "ring",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(3), hi: Bound::Const(10) }],
            notes: vec![],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: no_claims,
            checks: |p, ck| {
                let n = get(p, "n");
                ck.eq("deg zeta^3", binomial(n as u64 - 1, 2), secant_degree(n as u32, 2)?);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "secant_degree_half",
            family: "SECANT_BUNDLE",
            statement: "deg Sec_k(C) = k + 1 for the rational normal curve in P^(2k)",
            procedure: "ring",
            params: vec![ParamSpec { name: "k", lo: Bound::Const(1), hi: Bound::Const(5) }],
            notes: vec![],
            open_questions: vec![],
            dimension: |p| 2 * get(p, "k"),
            claims: no_claims,
            checks: |p, ck| {
                let k = get(p, "k");
                ck.eq("deg zeta^(2k-1) in P(E_{2k,k})", BigInt::from(k + 1), secant_degree(2 * k as u32, k as u32)?);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "cor_relation",
            family: "RNC",
            statement: "in Num_1(X_r): j(h2^(r-2)) = r*H^(r-1) - (r+2)*j(h2^(r-3)*h1)",
            procedure: "ring",
            params: vec![ParamSpec { name: "r", lo: Bound::Const(3), hi: Bound::Const(10) }],
            notes: vec!["the formal ring uses H*j(a) = j(d*h1*a) with d the curve degree; see the regression test on the pullback coefficient"],
            open_questions: vec![],
            dimension: |p| get(p, "r"),
            claims: no_claims,
            checks: cor_relation_checks,
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff1_even",
            family: "RNC",
            statement: "Eff^1(X_{2n}) = <E, (n+1)*H - n*E>",
            procedure: "duality",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(2), hi: Bound::Const(5) }],
            notes: vec![
                NEF_NOTE,
                "assumed-geometric-input: the multiplicity n of Sec_n(C) along C comes from a degeneration argument; only the class (n+1)H - nE is encoded",
            ],
            open_questions: vec![],
            dimension: |p| 2 * get(p, "n"),
            claims: |p| divisor_claim(2 * get(p, "n"), get(p, "n")),
            checks: |p, ck| {
                let n = get(p, "n");
                ck.eq("deg Sec_n(C) = coefficient of H", BigInt::from(n + 1), secant_degree(2 * n as u32, n as u32)?);
                if n == 2 {
                    let psi = PsiMaps::new(4)?;
                    ck.eq("psi_* 1 in X_4", "3*H - 2*E".to_string(), psi.secant_class()?.to_string());
                    let nodes = formulas::projection_nodes(4)?;
                    ck.eq("multiplicity along C = 3 - nodes of the projected quartic", BigInt::from(2), BigInt::from(3) - nodes);
                }
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff1_odd",
            family: "RNC",
            statement: "Eff^1(X_{2n+1}) = <E, (n+1)*H - n*E>",
            procedure: "duality",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(1), hi: Bound::Const(4) }],
            notes: vec![
                NEF_NOTE,
                "assumed-geometric-input: the cone over Sec_n of a projection of C has multiplicity n along C",
            ],
            open_questions: vec![],
            dimension: |p| 2 * get(p, "n") + 1,
            claims: |p| divisor_claim(2 * get(p, "n") + 1, get(p, "n")),
            checks: |p, ck| {
                let n = get(p, "n");
                ck.eq("degree of the cone = deg Sec_n in P^(2n)", BigInt::from(n + 1), secant_degree(2 * n as u32, n as u32)?);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff_1",
            family: "RNC",
            statement: "Eff_1(X_r) = <j(h2^(r-3)*h1), H^(r-1) - 2*j(h2^(r-3)*h1)>",
            procedure: "duality",
            params: vec![ParamSpec { name: "r", lo: Bound::Const(3), hi: Bound::Const(10) }],
            notes: vec![NEF_NOTE, "assumed-geometric-input: 2H - E is nef because the ideal of C is generated by quadrics"],
            open_questions: vec!["whether the statement extends to r = 2, which the exceptional-divisor model here does not cover"],
            dimension: |p| get(p, "r"),
            claims: |p| {
                let r = get(p, "r");
                let pt = j_label(r - 3, 1);
                vec![Claim {
                    name: "Eff_1(X_r)".into(),
                    space: Space::Xr(r as u32),
                    codim: r as usize - 1,
                    generators: vec![pt.clone(), lin(&[(1, h_label(r as usize - 1)), (-2, pt)])],
                    certificates: vec!["H".into(), divisor(2, 1)],
                }]
            },
            checks: |_, _| Ok(()),
            cones: no_cones,
        },
        TheoremRecord {
            id: "psi_maps",
            family: "RNC",
            statement: "psi^* and psi_* between P(E_{n,2}) and X_n",
            procedure: "ring",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(5), hi: Bound::Const(10) }],
            notes: vec!["assumed-geometric-input: the proper transform S_2 of the secant variety is isomorphic to P(E_{n,2})"],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: no_claims,
            checks: psi_checks,
            cones: no_cones,
        },
        TheoremRecord {
            id: "nef_certificate",
            family: "RNC",
            statement: "H^2 - (n-1)*j(h1) pairs nonnegatively with the generators of Eff_2(X_n)",
            procedure: "ring",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(5), hi: Bound::Const(10) }],
            notes: vec![NEF_NOTE],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: no_claims,
            checks: nef_certificate_checks,
            cones: no_cones,
        },
        TheoremRecord {
            id: "S2_negative",
            family: "RNC",
            statement: "<H^3 - (n-2)*j(h2*h1), [S_2]> < 0",
            procedure: "ring",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(5), hi: Bound::Const(10) }],
            notes: vec!["assumed-geometric-input: [S_2] = psi_* 1"],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: no_claims,
            checks: |p, ck| {
                let n = get(p, "n");
                let psi = PsiMaps::new(n as u32)?;
                let s = psi.space();
                let s2 = psi.secant_class()?;
                let t = &s.h_pow(3) - &s.j_mono(1, 1).expect("in range").scale(&q(n - 2));
                let v = s.pair(&t, &s2)?;
                ck.eq("<H^3 - (n-2) j(h2*h1), [S_2]>", q_frac((n - 2) * (3 - n), 2), v.clone());
                ck.truth("pairing is negative", v.is_negative());
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff3_S2",
            family: "RNC",
            statement: "[S_2] spans an extremal ray of Eff_3(X_n)",
            procedure: "cones",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(5), hi: Bound::Const(10) }],
            notes: vec![
                "assumed-geometric-input: S_2 is the only threefold pairing negatively with H^3 - (n-2) j(h2*h1)",
            ],
            open_questions: vec![],
            dimension: |p| get(p, "n"),
            claims: no_claims,
            checks: eff3_checks,
            cones: |p| Ok(vec![s2_cone(get(p, "n"))?]),
        },
        TheoremRecord {
            id: "eff2_AB",
            family: "RNC",
            statement: "Eff_2(X_n) = A = <(n-1)H^(n-2) - j(h2^(n-3)) - 2n j(h2^(n-4)h1), H^(n-2) - 3 j(h2^(n-4)h1), j(h2^(n-3)), j(h2^(n-4)h1)>, with B inside A",
            procedure: "cones",
            params: vec![ParamSpec { name: "n", lo: Bound::Const(5), hi: Bound::Const(10) }],
            notes: vec![
                NEF_NOTE,
                "assumed-geometric-input: classes of surfaces off S_2 lie in B; surfaces in S_2 push forward from Eff^1(P(E))",
            ],
            open_questions: vec![
                "n = 3, 4: j(h2^(n-4) h1) needs n >= 4 and the secant class needs n >= 5, so the range starts at 5",
            ],
            dimension: |p| get(p, "n"),
            claims: |p| {
                let n = get(p, "n");
                vec![Claim {
                    name: "Eff_2(X_n) = A".into(),
                    space: Space::Xr(n as u32),
                    codim: n as usize - 2,
                    generators: cone_a_generators(n),
                    certificates: vec![],
                }]
            },
            checks: eff2_checks,
            cones: |p| {
                let n = get(p, "n");
                let s = BlowupPresentation::rnc(n as u32)?;
                Ok(vec![NamedCone {
                    name: "B".into(),
                    basis: s.numerical_basis(n as usize - 2)?.labels,
                    cone: PolyCone::from_inequalities(3, &cone_b_inequalities(n))?,
                }])
            },
        },
        TheoremRecord {
            id: "effW_k",
            family: "LINE",
            statement: "Eff^k(W_r) = <(H-E)^k, j(h2^(k-1)), j(h2^(k-2)*h1)>",
            procedure: "duality",
            params: vec![
                ParamSpec { name: "r", lo: Bound::Const(3), hi: Bound::Const(8) },
                ParamSpec { name: "k", lo: Bound::Const(1), hi: Bound::Dep("r-1", |p| get(p, "r") - 1) },
            ],
            notes: vec![
                NEF_NOTE,
                "assumed-geometric-input: H^(r-k) and (H-E)^(r-k) are nef by transversality; H^(r-k) - j(h2^(r-k-2) h1) is the class of a moving proper transform",
            ],
            open_questions: vec![],
            dimension: |p| get(p, "r"),
            claims: |p| {
                let (r, k) = (get(p, "r"), get(p, "k"));
                let he = |e: i64| if e == 1 { "H - E".to_string() } else { format!("(H - E)^{e}") };
                let mut gens = Vec::new();
                if k <= r - 2 {
                    gens.push(he(k));
                }
                gens.push(j_label(k - 1, 0));
                if k >= 2 {
                    gens.push(j_label(k - 2, 1));
                }
                let c = r - k;
                let mut certs = vec![h_label(c as usize)];
                if k >= 2 {
                    certs.push(he(c));
                }
                if c >= 2 {
                    certs.push(lin(&[(1, h_label(c as usize)), (-1, j_label(c - 2, 1))]));
                }
                vec![Claim {
                    name: format!("Eff^{k}(W_{r})"),
                    space: Space::W(r as u32),
                    codim: k as usize,
                    generators: gens,
                    certificates: certs,
                }]
            },
            checks: |p, ck| {
                let (r, k) = (get(p, "r"), get(p, "k"));
                if k == r - 1 {
                    let s = BlowupPresentation::line(r as u32)?;
                    let x = s.pow(&s.divisor(1, 1), k as u32);
                    ck.truth("(H - E)^(r-1) is numerically zero", s.in_numerical_kernel(&x, k as usize)?);
                }
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff_conic",
            family: "P3_CURVE",
            statement: "Eff^1(Y_2) = <E, H - E>, Eff_1(Y_2) = <j(h1), H^2 - 2*j(h1)>",
            procedure: "duality",
            params: vec![],
            notes: vec![
                NEF_NOTE,
                "model: the conic is treated as P3_CURVE with d = 2, twist 3; its normal bundle O(4) + O(2) is not balanced, but E^3 = -6 and E^2 H = -2 are reproduced, which fixes Num",
            ],
            open_questions: vec![],
            dimension: dim3,
            claims: |_| {
                vec![
                    Claim {
                        name: "Eff^1(Y_2)".into(),
                        space: Space::P3(2, 3),
                        codim: 1,
                        generators: vec!["E".into(), divisor(1, 1)],
                        certificates: vec!["H^2".into(), "H^2 - j(h1)".into()],
                    },
                    Claim {
                        name: "Eff_1(Y_2)".into(),
                        space: Space::P3(2, 3),
                        codim: 2,
                        generators: vec!["j(h1)".into(), "H^2 - 2*j(h1)".into()],
                        certificates: vec!["H".into(), divisor(2, 1)],
                    },
                ]
            },
            checks: |_, ck| {
                let s = BlowupPresentation::p3_curve(2, 3)?;
                let e = s.e();
                ck.eq("deg E^3", q(-6), s.degree(&s.pow(&e, 3))?);
                ck.eq("deg E^2 H", q(-2), s.degree(&s.product_all([&e, &e, &s.h()]))?);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "effdiv_Y",
            family: "QUADRIC_CURVE",
            statement: "Eff^1(Y_d) = <E, 2H - E>",
            procedure: "duality",
            params: vec![ParamSpec { name: "d", lo: Bound::Const(3), hi: Bound::Const(8) }],
            notes: vec![NEF_NOTE, "assumed-geometric-input: secant lines of C_d fill P^3"],
            open_questions: vec![],
            dimension: dim3,
            claims: |p| {
                vec![Claim {
                    name: "Eff^1(Y_d)".into(),
                    space: Space::Y(get(p, "d") as u32),
                    codim: 1,
                    generators: vec!["E".into(), divisor(2, 1)],
                    certificates: vec!["H^2".into(), "H^2 - 2*j(h1)".into()],
                }]
            },
            checks: |_, _| Ok(()),
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff1_Y",
            family: "QUADRIC_CURVE",
            statement: "Eff_1(Y_d) = <j(h1), H^2 - (d-1)*j(h1)>",
            procedure: "duality",
            params: vec![ParamSpec { name: "d", lo: Bound::Const(3), hi: Bound::Const(8) }],
            notes: vec![NEF_NOTE, "assumed-geometric-input: (d-1)H - E is base-point free"],
            open_questions: vec![],
            dimension: dim3,
            claims: |p| {
                let d = get(p, "d");
                vec![Claim {
                    name: "Eff_1(Y_d)".into(),
                    space: Space::Y(d as u32),
                    codim: 2,
                    generators: vec!["j(h1)".into(), lin(&[(1, "H^2".into()), (-(d - 1), "j(h1)".into())])],
                    certificates: vec!["H".into(), divisor(d - 1, 1)],
                }]
            },
            checks: |p, ck| {
                let d = get(p, "d");
                let a = formulas::h0_p3(d - 1)?;
                let b = formulas::h0_curve(d as u32, d - 1)?;
                let c = formulas::h0_p3(d - 3)?;
                ck.eq("h0(O_P3(d-1))", binomial(d as u64 + 2, 3), a.clone());
                ck.eq("h0(O_C((d-1)H))", BigInt::from(d * d - d + 1), b.clone());
                ck.eq("h0(I_C(d-1)) - h0(O((d-1)H - Q)) lower bound", BigInt::from(d - 1), a - b - c);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "lowdeg_Q",
            family: "P3_CURVE",
            statement: "Eff^1(Q_d) for d = 1..6: <E, H-E>, <E, H-E>, <E, 2H-E>, <E, 2H-E>, <E, 8H-3E>, <E, 3H-E>",
            procedure: "duality",
            params: vec![ParamSpec { name: "d", lo: Bound::Const(1), hi: Bound::Const(6) }],
            notes: vec![
                NEF_NOTE,
                "model: a general rational curve of degree d is P3_CURVE with twist 2d-1 (balanced normal bundle)",
                "assumed-geometric-input: the trisecant surface has multiplicity equal to the node count of a projection",
                "assumed-geometric-input: for d = 5 the certificate 3H^2 - 8j(h1) is not given explicitly and is taken as the dual of 8H - 3E",
            ],
            open_questions: vec![],
            dimension: dim3,
            claims: |p| {
                let d = get(p, "d");
                let (a, b) = lowdeg_generator(d);
                vec![Claim {
                    name: format!("Eff^1(Q_{d})"),
                    space: Space::P3(d as u32, 2 * d - 1),
                    codim: 1,
                    generators: vec!["E".into(), divisor(a, b)],
                    certificates: vec!["H^2".into(), lin(&[(b, "H^2".into()), (-a, "j(h1)".into())])],
                }]
            },
            checks: lowdeg_checks,
            cones: no_cones,
        },
        TheoremRecord {
            id: "eff_Z",
            family: "SURFACE_CURVE",
            statement: "for C of degree e on a smooth surface of degree d with e >= d^2: Eff^1(Z) = <dH - E, E>",
            procedure: "formula",
            params: vec![
                ParamSpec { name: "d", lo: Bound::Const(2), hi: Bound::Const(6) },
                ParamSpec { name: "e", lo: Bound::Dep("d^2", |p| get(p, "d") * get(p, "d")), hi: Bound::Const(40) },
            ],
            notes: vec!["assumed-geometric-input: existence of a smooth D in |mH - C| transverse to the surface, and 2g - 2 <= e(e-3)"],
            open_questions: vec![],
            dimension: dim3,
            claims: no_claims,
            checks: |p, ck| {
                let (d, e) = (get(p, "d") as u32, get(p, "e") as u32);
                let lim = formulas::z_slope_limit(d, e)?;
                ck.eq("limit of the slope bound", q_frac(e.into(), d.into()), lim.clone());
                ck.truth("limit >= d", lim >= q(d.into()));
                let (ok, worst) = slope_sweep(d, e, 1000)?;
                ck.holds("finite-m bound <= limit and nondecreasing for m up to 1000", "all m", worst, ok);
                Ok(())
            },
            cones: no_cones,
        },
        TheoremRecord {
            id: "twisted_cubic",
            family: "RNC",
            statement: "X_3, Y_3 and Q_3 are the same blow-up",
            procedure: "ring",
            params: vec![],
            notes: vec![],
            open_questions: vec![],
            dimension: dim3,
            claims: no_claims,
            checks: twisted_cubic_checks,
            cones: no_cones,
        },
    ]
}

fn divisor_claim(r: i64, n: i64) -> Vec<Claim> {
    vec![Claim {
        name: format!("Eff^1(X_{r})"),
        space: Space::Xr(r as u32),
        codim: 1,
        generators: vec!["E".into(), divisor(n + 1, n)],
        certificates: vec![
            h_label(r as usize - 1),
            lin(&[(n, h_label(r as usize - 1)), (-(n + 1), j_label(r - 3, 1))]),
        ],
    }]
}

fn lowdeg_generator(d: i64) -> (i64, i64) {
    match d {
        1 | 2 => (1, 1),
        3 | 4 => (2, 1),
        5 => (8, 3),
        _ => (3, 1),
    }
}

fn cone_a_generators(n: i64) -> Vec<String> {
    let top = h_label(n as usize - 2);
    vec![
        lin(&[
            (n - 1, top.clone()),
            (-1, j_label(n - 3, 0)),
            (-2 * n, j_label(n - 4, 1)),
        ]),
        lin(&[(1, top), (-3, j_label(n - 4, 1))]),
        j_label(n - 3, 0),
        j_label(n - 4, 1),
    ]
}

/// `0 <= a, b`, `a <= 1/(n-1)`, `2b + (3n-8)a <= 6` for classes
/// `x H^(n-2) + y j(h2^(n-3)) + z j(h2^(n-4) h1)` with `a = -y/x`, `b = -z/x`.
pub fn cone_b_inequalities(n: i64) -> Vec<Vec<Q>> {
    [[0, -1, 0], [0, 0, -1], [1, n - 1, 0], [6, 3 * n - 8, 2]]
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

fn cor_relation_checks(p: &Params, ck: &mut Checks) -> Result<()> {
    let r = get(p, "r");
    let s = BlowupPresentation::rnc(r as u32)?;
    let rel = &(&s.j_mono(r - 2, 0).expect("in range") - &s.h_pow(r as u32 - 1).scale(&q(r)))
        + &s.j_mono(r - 3, 1).expect("in range").scale(&q(r + 2));
    ck.eq("<relation, H>", q(0), s.pair(&rel, &s.h())?);
    ck.eq("<relation, E>", q(0), s.pair(&rel, &s.e())?);
    let nb = s.numerical_basis(r as usize - 1)?;
    let found: Vec<String> = nb.relations.iter().map(ToString::to_string).collect();
    let want = format!(
        "{} - {}*{} + {}*{} = 0",
        j_label(r - 2, 0),
        r,
        h_label(r as usize - 1),
        r + 2,
        j_label(r - 3, 1)
    );
    ck.eq(
        "relation found in the pairing kernel",
        want,
        found.join("; "),
    );
    let ranks: Vec<String> = (0..=r as usize)
        .map(|k| s.numerical_basis(k).map(|b| b.rank().to_string()))
        .collect::<Result<_>>()?;
    let mut expect = vec!["1".to_string(), "2".to_string()];
    expect.extend(std::iter::repeat_n("3".to_string(), r as usize - 3));
    expect.extend(["2".to_string(), "1".to_string()]);
    ck.eq(
        "Num ranks by codimension",
        expect.join(","),
        ranks.join(","),
    );
    Ok(())
}

fn psi_checks(p: &Params, ck: &mut Checks) -> Result<()> {
    let n = get(p, "n");
    let psi = PsiMaps::new(n as u32)?;
    let s = psi.space();
    let b = psi.bundle();
    let sec = Space::Sec(n as u32, 2).build()?;
    let secant = |t: &str| -> Result<FormalSum> {
        match sec.eval_str(t)? {
            Class::Secant(f) => Ok(f),
            Class::Blowup(_) => Err(Error::Inconsistent("secant class expected".into())),
        }
    };
    let table = [
        ("H", s.h(), "zeta".to_string()),
        (
            "E",
            s.e(),
            lin(&[(2, "zeta".into()), (-(n - 2), "h".into())]),
        ),
        (
            "j(h1)",
            s.j_mono(0, 1).expect("in range"),
            lin(&[(1, "zeta*h".into()), (-(n - 1), "h^2".into())]),
        ),
        (
            "j(h2)",
            s.j_mono(1, 0).expect("in range"),
            lin(&[(n - 2, "zeta*h".into()), (n - 2, "h^2".into())]),
        ),
    ];
    for (name, x, want) in &table {
        ck.eq(
            format!("psi^* {name}"),
            secant(want)?.to_string(),
            psi.pullback(x)?.to_string(),
        );
    }
    let e2 = psi.pullback(&s.pow(&s.e(), 2))?;
    let two_ways = b.pow(psi.incidence_divisor(), 2)?;
    ck.eq("psi^*(E^2) = D^2", two_ways.to_string(), e2.to_string());
    let via_j =
        &s.j_mono(0, 1).expect("in range").scale(&q(n + 2)) - &s.j_mono(1, 0).expect("in range");
    ck.eq(
        "psi^*(E^2) via (n+2) j(h1) - j(h2)",
        two_ways.to_string(),
        psi.pullback(&via_j)?.to_string(),
    );

    let k = n as usize;
    let pairs = [
        (
            "psi_* h",
            psi.pushforward(&b.h())?,
            closed_forms::push_h(s)?,
            k - 2,
        ),
        (
            "psi_* 1",
            psi.secant_class()?,
            closed_forms::push_one(s)?,
            k - 3,
        ),
        (
            "psi_* zeta",
            psi.pushforward(&b.zeta())?,
            closed_forms::push_zeta(s)?,
            k - 2,
        ),
    ];
    for (name, got, want, codim) in &pairs {
        ck.eq(
            format!("{name} (numerical coordinates)"),
            fmt_vec(&s.to_num(want, *codim)?),
            fmt_vec(&s.to_num(got, *codim)?),
        );
    }

    // Multiplicativity on Num^1 x Num^1 and Num^1 x Num^2 generators.
    let g1: Vec<_> = s.standard_generators(1);
    let g2: Vec<_> = s.standard_generators(2);
    let mut total = 0;
    let mut bad = Vec::new();
    for (la, a) in &g1 {
        for (lb, bb) in g1.iter().chain(&g2) {
            total += 1;
            let lhs = psi.pullback(&s.product(a, bb))?;
            let rhs = b.mul(&psi.pullback(a)?, &psi.pullback(bb)?)?;
            if lhs != rhs {
                bad.push(format!("{la}*{lb}"));
            }
        }
    }
    ck.holds(
        "psi^* multiplicative on generator pairs",
        format!("{total} of {total}"),
        format!("{} of {total}", total - bad.len()),
        bad.is_empty(),
    );

    // Projection formula on a full grid of bundle monomials and generators.
    let mut total = 0;
    let mut bad = Vec::new();
    for g in 0..=3u32 {
        for gamma in b.monomial_basis(g) {
            let pushed = psi.pushforward(&gamma)?;
            for (lbl, beta) in s.standard_generators(3 - g as usize) {
                total += 1;
                let lhs = s.pair(&pushed, &beta)?;
                let rhs = b.degree(&b.mul(&gamma, &psi.pullback(&beta)?)?)?;
                if lhs != rhs {
                    bad.push(format!("{gamma} / {lbl}"));
                }
            }
        }
    }
    ck.holds(
        "projection formula deg(psi_* g * b) = deg(g * psi^* b)",
        format!("{total} of {total}"),
        format!("{} of {total}", total - bad.len()),
        bad.is_empty(),
    );
    Ok(())
}

fn nef_certificate_checks(p: &Params, ck: &mut Checks) -> Result<()> {
    let n = get(p, "n");
    let s = BlowupPresentation::rnc(n as u32)?;
    let nu = &s.h_pow(2) - &s.j_mono(0, 1).expect("in range").scale(&q(n - 1));
    let ring = Ring::Blowup(s.clone());
    let gens = eval_all(&ring, &cone_a_generators(n))?;
    let vals: Vec<Q> = gens
        .iter()
        .map(|g| match g {
            Class::Blowup(g) => s.pair(&nu, g),
            Class::Secant(_) => unreachable!(),
        })
        .collect::<Result<_>>()?;
    let ok = vals.iter().all(|v| !v.is_negative());
    ck.holds(
        "pairings with the generators of A",
        ">= 0",
        fmt_vec(&vals),
        ok,
    );
    let basis = [
        s.h_pow(n as u32 - 2),
        s.j_mono(n - 3, 0).expect("in range"),
        s.j_mono(n - 4, 1).expect("in range"),
    ];
    let row: Vec<Q> = basis
        .iter()
        .map(|b| s.pair(&nu, b))
        .collect::<Result<_>>()?;
    ck.eq(
        "pairing functional on H^(n-2), j(h2^(n-3)), j(h2^(n-4)h1)",
        fmt_vec(&[q(1), q(n - 1), q(0)]),
        fmt_vec(&row),
    );
    let restricted = s.product(&nu, &s.e());
    let want = s.j_mono(1, 1).expect("in range").scale(&q(n - 1));
    ck.eq(
        "nu * E = (n-1) j(h2*h1)",
        fmt_vec(&s.to_num(&want, 3)?),
        fmt_vec(&s.to_num(&restricted, 3)?),
    );
    Ok(())
}

fn s2_cone(n: i64) -> Result<NamedCone> {
    let psi = PsiMaps::new(n as u32)?;
    let s = psi.space();
    let k = n as usize - 3;
    let nb = s.numerical_basis(k)?;
    let s2 = psi.secant_class()?;
    let rays = vec![
        s.to_num_in(&nb, &s2)?,
        s.to_num_in(&nb, &s.j_mono(n - 4, 0).expect("in range"))?,
        s.to_num_in(&nb, &s.j_mono(n - 5, 1).expect("in range"))?,
        s.to_num_in(&nb, &s.h_pow(k as u32))?,
    ];
    Ok(NamedCone {
        name: "<[S_2], j(h2^(n-4)), j(h2^(n-5)h1), H^(n-3)>".into(),
        basis: nb.labels,
        cone: PolyCone::from_rays(3, &rays)?,
    })
}

fn eff3_checks(p: &Params, ck: &mut Checks) -> Result<()> {
    let n = get(p, "n");
    let psi = PsiMaps::new(n as u32)?;
    let s = psi.space();
    let s2 = psi.secant_class()?;
    let k = n as usize - 3;
    let v = s.to_num(&s2, k)?;
    let c = linalg::q_int(&binomial(n as u64 - 1, 2));
    let a = -&v[1] / &c;
    ck.eq(
        "normalized j(h2^(n-4)) coefficient of [S_2]",
        q_frac(n - 2, 1) / &c,
        a.clone(),
    );
    ck.truth("a > 1/(n-2)", a > q_frac(1, n - 2));
    // a <= 1/(n-2) is what pairing with H^3 - (n-2) j(h2*h1) forces.
    let t = &s.h_pow(3) - &s.j_mono(1, 1).expect("in range").scale(&q(n - 2));
    let row: Vec<Q> = [
        s.h_pow(k as u32),
        s.j_mono(n - 4, 0).expect("in range"),
        s.j_mono(n - 5, 1).expect("in range"),
    ]
    .iter()
    .map(|b| s.pair(&t, b))
    .collect::<Result<_>>()?;
    ck.eq(
        "pairing functional of H^3 - (n-2) j(h2*h1)",
        fmt_vec(&[q(1), q(n - 2), q(0)]),
        fmt_vec(&row),
    );
    let cone = s2_cone(n)?.cone;
    ck.truth(
        "[S_2] extremal in <[S_2], j-rays, H^(n-3)>",
        cone.is_extremal(&v)?,
    );
    Ok(())
}

fn eff2_checks(p: &Params, ck: &mut Checks) -> Result<()> {
    let n = get(p, "n");
    let psi = PsiMaps::new(n as u32)?;
    let s = psi.space();
    let k = n as usize - 2;
    let nb = s.numerical_basis(k)?;
    ck.eq(
        "basis of Num_2",
        [h_label(k), j_label(n - 3, 0), j_label(n - 4, 1)].join(", "),
        nb.labels.join(", "),
    );
    let ring = Ring::Blowup(s.clone());
    let gens: Vec<Vec<Q>> = eval_all(&ring, &cone_a_generators(n))?
        .iter()
        .map(|g| match g {
            Class::Blowup(g) => s.to_num_in(&nb, g),
            Class::Secant(_) => unreachable!(),
        })
        .collect::<Result<_>>()?;
    let a = PolyCone::from_rays(3, &gens)?;
    let ph = s.to_num_in(&nb, &psi.pushforward(&psi.bundle().h())?)?;
    ck.eq(
        "first generator of A = psi_* h",
        fmt_vec(&gens[0]),
        fmt_vec(&ph),
    );
    let pd = s.to_num_in(&nb, &psi.pushforward(psi.incidence_divisor())?)?;
    ck.eq(
        "psi_* D = (n-2) j(h2^(n-3))",
        fmt_vec(&[q(0), q(n - 2), q(0)]),
        fmt_vec(&pd),
    );
    ck.eq("A has 4 extremal rays", 4, a.rays().len());
    for (i, g) in gens.iter().enumerate() {
        ck.truth(
            format!("generator {} of A is extremal", i + 1),
            a.is_extremal(g)?,
        );
    }
    let b = PolyCone::from_inequalities(3, &cone_b_inequalities(n))?;
    let b_rays = PolyCone::from_rays(
        3,
        &[
            vec![q(1), q(0), q(0)],
            vec![q(1), q(0), q(-3)],
            vec![q(n - 1), q(-1), q(0)],
            vec![q(2 * (n - 1)), q(-2), q(-(3 * n + 2))],
        ],
    )?;
    ck.eq("rays of B", fmt_rays(b_rays.rays()), fmt_rays(b.rays()));
    ck.truth("B is contained in A", a.includes(&b)?);
    ck.truth("A is not contained in B", !b.includes(&a)?);

    // Rebuild B's last two inequalities from the ring: the nef certificate,
    // and the 2H - E certificate of Eff_1 pulled back along g -> g*(3H - 2E).
    let basis = &nb.basis;
    let nu = &s.h_pow(2) - &s.j_mono(0, 1).expect("in range").scale(&q(n - 1));
    let f_nu: Vec<Q> = basis
        .iter()
        .map(|b| s.pair(&nu, b))
        .collect::<Result<_>>()?;
    let t = s.divisor(3, 2);
    let c = s.divisor(2, 1);
    let f_sec: Vec<Q> = basis
        .iter()
        .map(|b| s.degree(&s.product_all([b, &t, &c])))
        .collect::<Result<_>>()?;
    let derived = PolyCone::from_inequalities(
        3,
        &[
            vec![q(0), q(-1), q(0)],
            vec![q(0), q(0), q(-1)],
            f_nu,
            f_sec.clone(),
        ],
    )?;
    ck.eq(
        "B from the certificates",
        fmt_rays(b.rays()),
        fmt_rays(derived.rays()),
    );
    ck.eq(
        "pulled-back inequality 2b + (3n-8)a <= 6",
        fmt_vec(&[q(6), q(3 * n - 8), q(2)]),
        fmt_vec(&f_sec),
    );
    let nb1 = s.numerical_basis(n as usize - 1)?;
    let images: Vec<String> = basis
        .iter()
        .map(|b| s.to_num_in(&nb1, &s.product(b, &t)).map(|v| fmt_vec(&v)))
        .collect::<Result<_>>()?;
    ck.eq(
        "basis times 3H - 2E in {H^(n-1), j(h2^(n-3)h1)}",
        format!(
            "{} {} {}",
            fmt_vec(&[q(3), q(0)]),
            fmt_vec(&[q(2 * n), q(-(n + 8))]),
            fmt_vec(&[q(0), q(2)])
        ),
        images.join(" "),
    );
    let dual = a.dual_cone(&nb.pairing)?;
    let nb2 = s.numerical_basis(2)?;
    ck.eq(
        "dual basis labels",
        nb.dual_labels.join(", "),
        nb2.labels.join(", "),
    );
    ck.truth(
        "H^2 - (n-1) j(h1) lies in the dual of A",
        dual.contains(&s.to_num_in(&nb2, &nu)?)?,
    );
    Ok(())
}

fn lowdeg_checks(p: &Params, ck: &mut Checks) -> Result<()> {
    let d = get(p, "d");
    let s = BlowupPresentation::p3_curve(d as u32, 2 * d - 1)?;
    let e = s.e();
    ck.eq(
        "deg E^2 H",
        q(-d),
        s.degree(&s.product_all([&e, &e, &s.h()]))?,
    );
    let nb = s.numerical_basis(1)?;
    let div = |a: i64, b: i64| s.to_num_in(&nb, &s.divisor(a, b));
    match d {
        4 => {
            let (a, b) = (formulas::h0_p3(2)?, formulas::h0_curve(4, 2)?);
            ck.eq("h0(O_P3(2))", BigInt::from(10), a.clone());
            ck.eq("h0(O_C(2))", BigInt::from(9), b.clone());
            ck.truth("a quadric contains C_4", a > b);
        }
        5 | 6 => {
            let t_deg = formulas::berzolari(d as u32, 0)?;
            let nodes = formulas::projection_nodes(d as u32)?;
            let (want_deg, want_nodes) = if d == 5 { (8, 3) } else { (20, 6) };
            ck.eq(
                "trisecant surface degree",
                BigInt::from(want_deg),
                t_deg.clone(),
            );
            ck.eq(
                "nodes of the projection from a point of C",
                BigInt::from(want_nodes),
                nodes.clone(),
            );
            let t = s.divisor(
                i64::try_from(&t_deg).expect("small"),
                i64::try_from(&nodes).expect("small"),
            );
            ck.eq(
                "trisecant class",
                format!("{}*H - {}*E", want_deg, want_nodes),
                t.to_string(),
            );
            let ratio = Q::new(nodes, t_deg);
            let third = q_frac(1, 3);
            let cubic_ray = div(3, 1)?;
            let (a, b) = (formulas::h0_p3(3)?, formulas::h0_curve(d as u32, 3)?);
            ck.truth("a cubic contains C", a > b);
            if d == 5 {
                ck.truth("3/8 > 1/3", ratio > third);
                let c = PolyCone::from_rays(2, &[div(0, -1)?, div(8, 3)?])?;
                ck.truth("3H - E lies in <E, 8H - 3E>", c.contains(&cubic_ray)?);
            } else {
                ck.truth("6/20 < 1/3", ratio < third);
                let c = PolyCone::from_rays(2, &[div(0, -1)?, cubic_ray])?;
                ck.truth(
                    "20H - 6E lies in <E, 3H - E>",
                    c.contains(&s.to_num_in(&nb, &t)?)?,
                );
            }
        }
        _ => {}
    }
    Ok(())
}

/// Whether the finite-`m` slope bound stays at or below the limit and is
/// nondecreasing for `m` from its first admissible value to `m_max`. The
/// second component names the first violation, if any.
pub fn slope_sweep(d: u32, e: u32, m_max: u32) -> Result<(bool, String)> {
    let lim = formulas::z_slope_limit(d, e)?;
    let mut prev: Option<Q> = None;
    for m in formulas::z_slope_min_m(d, e)..=m_max {
        let v = formulas::z_slope(d, e, m)?;
        if v > lim {
            return Ok((
                false,
                format!(
                    "m = {m}: bound {} > limit {}",
                    crate::ring::render_q(&v),
                    crate::ring::render_q(&lim)
                ),
            ));
        }
        if let Some(pv) = &prev {
            if &v < pv {
                return Ok((false, format!("m = {m}: bound decreases")));
            }
        }
        prev = Some(v);
    }
    Ok((true, "all m".into()))
}

fn twisted_cubic_checks(_: &Params, ck: &mut Checks) -> Result<()> {
    let x3 = BlowupPresentation::rnc(3)?;
    let y3 = BlowupPresentation::quadric_curve(3)?;
    let q3 = BlowupPresentation::p3_curve(3, 5)?;
    let mut total = 0;
    let mut bad = Vec::new();
    for k1 in 0..=3usize {
        for k2 in 0..=3 - k1 {
            for (i, (la, _)) in x3.standard_generators(k1).iter().enumerate() {
                for (j, (lb, _)) in x3.standard_generators(k2).iter().enumerate() {
                    total += 1;
                    let prods: Vec<_> = [&x3, &y3, &q3]
                        .iter()
                        .map(|s| {
                            let a = &s.standard_generators(k1)[i].1;
                            let b = &s.standard_generators(k2)[j].1;
                            s.product(a, b)
                        })
                        .collect();
                    if prods[0] != prods[1] || prods[1] != prods[2] {
                        bad.push(format!("{la}*{lb}"));
                    }
                }
            }
        }
    }
    ck.holds(
        "X_3, Y_3, Q_3 products agree on generator pairs",
        format!("{total} of {total}"),
        format!("{} of {total}", total - bad.len()),
        bad.is_empty(),
    );
    let mut spaces = vec![BlowupPresentation::line(3)?, x3.clone()];
    for d in 3..=8 {
        spaces.push(BlowupPresentation::quadric_curve(d)?);
    }
    for d in 1..=6 {
        spaces.push(BlowupPresentation::p3_curve(d, 2 * i64::from(d) - 1)?);
    }
    for s in &spaces {
        let e = s.e();
        let tag = format!("{} d={} a={}", s.family(), s.curve_degree(), s.twist());
        ck.eq(
            format!("{tag}: deg E^2 H = -d"),
            q(-i64::from(s.curve_degree())),
            s.degree(&s.product_all([&e, &e, &s.h()]))?,
        );
        ck.eq(
            format!("{tag}: deg E^3 = -2a"),
            q(-2 * s.twist()),
            s.degree(&s.pow(&e, 3))?,
        );
    }
    let x = find_case("eff1_odd")?.claims(&params(&[("n", 1)]));
    let y = find_case("effdiv_Y")?.claims(&params(&[("d", 3)]));
    let qd = find_case("lowdeg_Q")?.claims(&params(&[("d", 3)]));
    ck.eq(
        "Eff^1 generators X_3 = Y_3",
        x[0].generators.join(", "),
        y[0].generators.join(", "),
    );
    ck.eq(
        "Eff^1 generators Y_3 = Q_3",
        y[0].generators.join(", "),
        qd[0].generators.join(", "),
    );
    Ok(())
}
