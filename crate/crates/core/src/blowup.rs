//! Intersection rings of blow-ups of projective space along a smooth curve.
//!
//! The exceptional divisor is `E = P^1 x P^m` with `m = r - 2`, and its Chow
//! ring is `Q[h1, h2] / (h1^2, h2^(m+1))`. A class on the blow-up is an
//! ambient polynomial in `H` plus a pushforward `j(alpha)` from `E`, and
//! products follow the blow-up formula:
//!
//! ```text
//! H^a * H^b        = H^(a+b)
//! H * j(alpha)     = j(d * h1 * alpha)
//! j(beta) * j(gam) = -j(xi * beta * gam),    xi = h2 - a * h1
//! ```
//!
//! where `d` is the degree of the curve and `a` the twist of its normal
//! bundle. The formal ring built this way carries extra classes that vanish
//! numerically (for instance `H^(r-1)` is a combination of `j` classes), so
//! every statement about cones goes through [`BlowupPresentation::numerical_basis`],
//! which quotients by the kernel of the degree pairing.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::ring::{render_terms, FormalSum, GeneratorSet, Monomial, RewriteSystem};

/// Index of `h2` and `h1` in the exceptional generator set. `h2` comes first
/// so that the canonical order is descending `h2`, then `h1`.
const H2: usize = 0;
const H1: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Rational normal curve of degree `r` in `P^r`.
    Rnc,
    /// A line in `P^r`.
    Line,
    /// A curve of class `(1, d-1)` on a smooth quadric in `P^3`.
    QuadricCurve,
    /// A rational curve in `P^3` with a caller-supplied twist.
    P3Curve,
    /// Arbitrary coefficients; no geometric meaning is claimed.
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Rnc => "RNC",
            Family::Line => "LINE",
            Family::QuadricCurve => "QUADRIC_CURVE",
            Family::P3Curve => "P3_CURVE",
            Family::Custom => "CUSTOM",
        };
        f.write_str(s)
    }
}

/// Parameters accepted by [`BlowupPresentation::make_space`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Rnc { r: u32 },
    Line { r: u32 },
    QuadricCurve { d: u32 },
    P3Curve { d: u32, twist: i64 },
}

#[derive(Debug, Clone)]
pub struct BlowupPresentation {
    family: Family,
    r: u32,
    degree: u32,
    pullback: i64,
    twist: i64,
    ambient: Arc<GeneratorSet>,
    ambient_rw: RewriteSystem,
    exc: Arc<GeneratorSet>,
    exc_rw: RewriteSystem,
}

impl PartialEq for BlowupPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.pullback == other.pullback && self.twist == other.twist
    }
}

/// A class `ambient(H) + j(exceptional(h1, h2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedClass {
    pub ambient: FormalSum,
    pub exceptional: FormalSum,
}

/// Degrees of all products between the standard generators of two
/// complementary codimensions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingData {
    pub codim: usize,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(serialize_with = "serialize_q_matrix")]
    pub matrix: Vec<Vec<Q>>,
}

/// A linear relation among standard generators that holds numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub terms: Vec<(String, BigInt)>,
    pub class: MixedClass,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = render_terms(
            self.terms
                .iter()
                .map(|(l, c)| (l.clone(), linalg::q_int(c))),
        );
        write!(f, "{body} = 0")
    }
}

/// A basis of `Num^k` together with the data needed to take coordinates.
#[derive(Debug, Clone)]
pub struct NumBasis {
    pub codim: usize,
    pub labels: Vec<String>,
    pub basis: Vec<MixedClass>,
    pub relations: Vec<Relation>,
    /// Basis of the complementary group `Num^(r-k)`.
    pub dual_labels: Vec<String>,
    pub dual_basis: Vec<MixedClass>,
    /// `pairing[i][j] = deg(basis[i] * dual_basis[j])`, square and invertible.
    pub pairing: Vec<Vec<Q>>,
}

impl NumBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn serialize_q_matrix<S: serde::Serializer>(
    m: &[Vec<Q>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let r: Vec<String> = row.iter().map(crate::ring::render_q).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

impl BlowupPresentation {
    pub fn make_space(spec: FamilySpec) -> Result<Self> {
        match spec {
            FamilySpec::Rnc { r } => {
                if r < 3 {
                    return Err(Error::OutOfRange(format!(
                        "RNC requires r >= 3, got r = {r}"
                    )));
                }
                Ok(Self::build(
                    Family::Rnc,
                    r,
                    r,
                    i64::from(r),
                    i64::from(r) + 2,
                ))
            }
            FamilySpec::Line { r } => {
                if r < 3 {
                    return Err(Error::OutOfRange(format!(
                        "LINE requires r >= 3, got r = {r}"
                    )));
                }
                Ok(Self::build(Family::Line, r, 1, 1, 1))
            }
            FamilySpec::QuadricCurve { d } => {
                if d < 3 {
                    return Err(Error::OutOfRange(format!(
                        "QUADRIC_CURVE requires d >= 3, got d = {d}"
                    )));
                }
                Ok(Self::build(
                    Family::QuadricCurve,
                    3,
                    d,
                    i64::from(d),
                    2 * i64::from(d) - 1,
                ))
            }
            FamilySpec::P3Curve { d, twist } => {
                if d < 1 {
                    return Err(Error::OutOfRange("P3_CURVE requires d >= 1".into()));
                }
                Ok(Self::build(Family::P3Curve, 3, d, i64::from(d), twist))
            }
        }
    }

    pub fn rnc(r: u32) -> Result<Self> {
        Self::make_space(FamilySpec::Rnc { r })
    }

    pub fn line(r: u32) -> Result<Self> {
        Self::make_space(FamilySpec::Line { r })
    }

    pub fn quadric_curve(d: u32) -> Result<Self> {
        Self::make_space(FamilySpec::QuadricCurve { d })
    }

    pub fn p3_curve(d: u32, twist: i64) -> Result<Self> {
        Self::make_space(FamilySpec::P3Curve { d, twist })
    }

    /// A presentation with an arbitrary pullback coefficient `H|_E = c * h1`.
    /// Exists so that alternative product rules can be tested against the
    /// numerical relations they imply.
    pub fn custom(r: u32, pullback: i64, twist: i64) -> Result<Self> {
        if r < 3 {
            return Err(Error::OutOfRange(format!("requires r >= 3, got r = {r}")));
        }
        let degree = u32::try_from(pullback.max(0)).unwrap_or(0);
        Ok(Self::build(Family::Custom, r, degree, pullback, twist))
    }

    fn build(family: Family, r: u32, degree: u32, pullback: i64, twist: i64) -> Self {
        let ambient = GeneratorSet::new([("H", 1)]);
        let ambient_rw = RewriteSystem::new(&ambient)
            .truncate("H", r + 1)
            .expect("H is a generator");
        let exc = GeneratorSet::new([("h2", 1), ("h1", 1)]);
        let exc_rw = RewriteSystem::new(&exc)
            .truncate("h1", 2)
            .and_then(|rw| rw.truncate("h2", r - 1))
            .expect("h1, h2 are generators");
        BlowupPresentation {
            family,
            r,
            degree,
            pullback,
            twist,
            ambient,
            ambient_rw,
            exc,
            exc_rw,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.r as usize
    }

    pub fn curve_degree(&self) -> u32 {
        self.degree
    }

    pub fn pullback_coefficient(&self) -> i64 {
        self.pullback
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Dimension of the `P^m` factor of `E`.
    pub fn fiber_dim(&self) -> u32 {
        self.r - 2
    }

    pub fn exceptional_gens(&self) -> &Arc<GeneratorSet> {
        &self.exc
    }

    pub fn exceptional_rules(&self) -> &RewriteSystem {
        &self.exc_rw
    }

    pub fn ambient_gens(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    /// `xi = h2 - a * h1`, so that `-xi` is the first Chern class of the
    /// normal bundle of `E`.
    pub fn xi(&self) -> FormalSum {
        FormalSum::from_terms(
            &self.exc,
            [
                (Monomial::var(H2, 1), Q::one()),
                (Monomial::var(H1, 1), -q(self.twist)),
            ],
        )
    }

    pub fn zero(&self) -> MixedClass {
        MixedClass {
            ambient: FormalSum::zero(&self.ambient),
            exceptional: FormalSum::zero(&self.exc),
        }
    }

    pub fn scalar(&self, c: Q) -> MixedClass {
        MixedClass {
            ambient: FormalSum::constant(&self.ambient, c),
            exceptional: FormalSum::zero(&self.exc),
        }
    }

    pub fn one(&self) -> MixedClass {
        self.scalar(Q::one())
    }

    /// `H^k`, zero once `k > r`.
    pub fn h_pow(&self, k: u32) -> MixedClass {
        let a = FormalSum::term(&self.ambient, Monomial::var(0, k), Q::one());
        MixedClass {
            ambient: self.ambient_rw.normal_form(&a).expect("same generators"),
            exceptional: FormalSum::zero(&self.exc),
        }
    }

    pub fn h(&self) -> MixedClass {
        self.h_pow(1)
    }

    /// The exceptional divisor, `j(1)`.
    pub fn e(&self) -> MixedClass {
        self.j(&FormalSum::one(&self.exc)).expect("same generators")
    }

    /// `a*H - b*E`.
    pub fn divisor(&self, a: i64, b: i64) -> MixedClass {
        &self.h().scale(&q(a)) - &self.e().scale(&q(b))
    }

    /// Pushforward `j(alpha)` of a class on `E`.
    pub fn j(&self, alpha: &FormalSum) -> Result<MixedClass> {
        Ok(MixedClass {
            ambient: FormalSum::zero(&self.ambient),
            exceptional: self.exc_rw.normal_form(alpha)?,
        })
    }

    /// `j(h2^e2 * h1^e1)`, or `None` when the monomial is out of range
    /// (negative exponent, `h1^2`, or `h2` beyond the fiber dimension).
    pub fn j_mono(&self, e2: i64, e1: i64) -> Option<MixedClass> {
        if e2 < 0 || !(0..=1).contains(&e1) || e2 > i64::from(self.fiber_dim()) {
            return None;
        }
        let m = Monomial::from_exponents([(H2, e2 as u32), (H1, e1 as u32)]);
        Some(MixedClass {
            ambient: FormalSum::zero(&self.ambient),
            exceptional: FormalSum::term(&self.exc, m, Q::one()),
        })
    }

    pub fn product(&self, x: &MixedClass, y: &MixedClass) -> MixedClass {
        let amb = x
            .ambient
            .mul(&y.ambient, &self.ambient_rw)
            .expect("classes over this presentation");
        let mut exc = FormalSum::zero(&self.exc);
        let cross = |h_part: &FormalSum, j_part: &FormalSum| -> FormalSum {
            let mut acc = FormalSum::zero(&self.exc);
            for (m, c) in h_part.terms() {
                let k = m.exponent(0);
                // H^k restricts to (pullback * h1)^k on E.
                let restricted = FormalSum::term(
                    &self.exc,
                    Monomial::var(H1, k),
                    Q::from_integer(BigInt::from(self.pullback).pow(k)) * c,
                );
                let t = restricted
                    .mul(j_part, &self.exc_rw)
                    .expect("same generators");
                acc = acc.add(&t).expect("same generators");
            }
            acc
        };
        exc = exc
            .add(&cross(&x.ambient, &y.exceptional))
            .expect("same generators");
        exc = exc
            .add(&cross(&y.ambient, &x.exceptional))
            .expect("same generators");
        if !x.exceptional.is_zero() && !y.exceptional.is_zero() {
            let jj = x
                .exceptional
                .mul(&y.exceptional, &self.exc_rw)
                .and_then(|b| b.mul(&self.xi(), &self.exc_rw))
                .expect("same generators");
            exc = exc.sub(&jj).expect("same generators");
        }
        MixedClass {
            ambient: amb,
            exceptional: exc,
        }
    }

    pub fn product_all<'a>(&self, xs: impl IntoIterator<Item = &'a MixedClass>) -> MixedClass {
        xs.into_iter()
            .fold(self.one(), |acc, x| self.product(&acc, x))
    }

    pub fn pow(&self, x: &MixedClass, k: u32) -> MixedClass {
        (0..k).fold(self.one(), |acc, _| self.product(&acc, x))
    }

    /// Degree of a top-codimension class: the coefficient of `H^r` plus the
    /// coefficient of `j(h2^m * h1)`.
    pub fn degree(&self, x: &MixedClass) -> Result<Q> {
        let r = self.dim();
        if !x.is_homogeneous_of(r) {
            return Err(Error::NotHomogeneous { expected: r });
        }
        let point_h = x.ambient.coeff(&Monomial::var(0, self.r));
        let point_e = x
            .exceptional
            .coeff(&Monomial::from_exponents([(H2, self.fiber_dim()), (H1, 1)]));
        Ok(point_h + point_e)
    }

    /// `deg(x * y)`.
    pub fn pair(&self, x: &MixedClass, y: &MixedClass) -> Result<Q> {
        self.degree(&self.product(x, y))
    }

    /// Standard generators `H^k, j(h2^(k-1)), j(h2^(k-2) h1)` with
    /// out-of-range monomials dropped.
    pub fn standard_generators(&self, k: usize) -> Vec<(String, MixedClass)> {
        let r = self.dim();
        if k > r {
            return Vec::new();
        }
        let ki = k as i64;
        let mut out = vec![(h_label(k), self.h_pow(k as u32))];
        if k >= 1 {
            if let Some(c) = self.j_mono(ki - 1, 0) {
                out.push((j_label(ki - 1, 0), c));
            }
        }
        if k >= 2 {
            if let Some(c) = self.j_mono(ki - 2, 1) {
                out.push((j_label(ki - 2, 1), c));
            }
        }
        out
    }

    pub fn pairing_matrix(&self, k: usize) -> Result<PairingData> {
        let r = self.dim();
        if k > r {
            return Err(Error::OutOfRange(format!(
                "codimension {k} exceeds dimension {r}"
            )));
        }
        let rows = self.standard_generators(k);
        let cols = self.standard_generators(r - k);
        let matrix = rows
            .iter()
            .map(|(_, a)| {
                cols.iter()
                    .map(|(_, b)| self.pair(a, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PairingData {
            codim: k,
            rows: rows.into_iter().map(|(l, _)| l).collect(),
            cols: cols.into_iter().map(|(l, _)| l).collect(),
            matrix,
        })
    }

    /// Generators in the order used to pick a numerical basis: at
    /// `k = r - 1` the class `j(h2^(r-2))` goes last so that it is the one
    /// eliminated.
    fn preferred_generators(&self, k: usize) -> Vec<(String, MixedClass)> {
        let mut gens = self.standard_generators(k);
        if k + 1 == self.dim() && gens.len() == 3 {
            gens.swap(1, 2);
        }
        gens
    }

    pub fn numerical_basis(&self, k: usize) -> Result<NumBasis> {
        let r = self.dim();
        if k > r {
            return Err(Error::OutOfRange(format!(
                "codimension {k} exceeds dimension {r}"
            )));
        }
        let gens = self.preferred_generators(k);
        let cogens = self.preferred_generators(r - k);
        let full: Vec<Vec<Q>> = gens
            .iter()
            .map(|(_, a)| {
                cogens
                    .iter()
                    .map(|(_, b)| self.pair(a, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let rows = linalg::independent_rows(&full);
        let cols = linalg::independent_rows(&linalg::transpose(&full));
        let pairing: Vec<Vec<Q>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| full[i][j].clone()).collect())
            .collect();
        if linalg::det(&pairing).is_zero() {
            return Err(Error::Singular(format!(
                "numerical pairing in codimension {k}"
            )));
        }
        let mut nb = NumBasis {
            codim: k,
            labels: rows.iter().map(|&i| gens[i].0.clone()).collect(),
            basis: rows.iter().map(|&i| gens[i].1.clone()).collect(),
            relations: Vec::new(),
            dual_labels: cols.iter().map(|&j| cogens[j].0.clone()).collect(),
            dual_basis: cols.iter().map(|&j| cogens[j].1.clone()).collect(),
            pairing,
        };
        for (i, (label, g)) in gens.iter().enumerate() {
            if rows.contains(&i) {
                continue;
            }
            let coords = self.coords_in(&nb, g)?;
            let mut v = vec![Q::one()];
            v.extend(coords.iter().map(|c| -c.clone()));
            let ints = linalg::primitive(&v);
            let mut terms = vec![(label.clone(), ints[0].clone())];
            let mut class = g.scale(&linalg::q_int(&ints[0]));
            for (b, (bl, bc)) in nb.labels.iter().zip(&nb.basis).enumerate() {
                let c = &ints[b + 1];
                if !c.is_zero() {
                    terms.push((bl.clone(), c.clone()));
                    class = &class + &bc.scale(&linalg::q_int(c));
                }
            }
            nb.relations.push(Relation { terms, class });
        }
        Ok(nb)
    }

    fn coords_in(&self, nb: &NumBasis, x: &MixedClass) -> Result<Vec<Q>> {
        let p: Vec<Q> = nb
            .dual_basis
            .iter()
            .map(|b| self.pair(x, b))
            .collect::<Result<_>>()?;
        linalg::solve(&linalg::transpose(&nb.pairing), &p).ok_or_else(|| {
            Error::Singular(format!("numerical pairing in codimension {}", nb.codim))
        })
    }

    /// Coordinates of `x` in `numerical_basis(k)`.
    pub fn to_num(&self, x: &MixedClass, k: usize) -> Result<Vec<Q>> {
        if !x.is_homogeneous_of(k) {
            return Err(Error::NotHomogeneous { expected: k });
        }
        let nb = self.numerical_basis(k)?;
        self.coords_in(&nb, x)
    }

    pub fn to_num_in(&self, nb: &NumBasis, x: &MixedClass) -> Result<Vec<Q>> {
        if !x.is_homogeneous_of(nb.codim) {
            return Err(Error::NotHomogeneous { expected: nb.codim });
        }
        self.coords_in(nb, x)
    }

    pub fn from_num(&self, nb: &NumBasis, coords: &[Q]) -> MixedClass {
        coords
            .iter()
            .zip(&nb.basis)
            .fold(self.zero(), |acc, (c, b)| &acc + &b.scale(c))
    }

    /// True when `x` pairs to zero with every standard generator of the
    /// complementary codimension.
    pub fn in_numerical_kernel(&self, x: &MixedClass, k: usize) -> Result<bool> {
        if !x.is_homogeneous_of(k) {
            return Err(Error::NotHomogeneous { expected: k });
        }
        for (_, g) in self.standard_generators(self.dim() - k) {
            if !self.pair(x, &g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Label of `H^k` as used in expressions and generator lists.
pub fn h_label(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "H".into(),
        _ => format!("H^{k}"),
    }
}

/// Label of `j(h2^e2 h1^e1)`; `j(1)` is `E`.
pub fn j_label(e2: i64, e1: i64) -> String {
    if e2 == 0 && e1 == 0 {
        return "E".into();
    }
    let mut parts = Vec::new();
    match e2 {
        0 => {}
        1 => parts.push("h2".to_string()),
        e => parts.push(format!("h2^{e}")),
    }
    if e1 == 1 {
        parts.push("h1".into());
    }
    format!("j({})", parts.join("*"))
}

impl MixedClass {
    pub fn is_zero(&self) -> bool {
        self.ambient.is_zero() && self.exceptional.is_zero()
    }

    /// Ambient part of degree `k` and exceptional part of degree `k - 1`.
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        let k = k as u32;
        self.ambient.is_homogeneous_of(k)
            && if k == 0 {
                self.exceptional.is_zero()
            } else {
                self.exceptional.is_homogeneous_of(k - 1)
            }
    }

    /// The codimension, if the class is nonzero and homogeneous.
    pub fn codim(&self) -> Option<usize> {
        let a = self.ambient.degree();
        let e = self.exceptional.degree().map(|d| d + 1);
        match (a, e) {
            (Some(a), Some(e)) if a == e => Some(a as usize),
            (Some(a), None) if self.exceptional.is_zero() => Some(a as usize),
            (None, Some(e)) if self.ambient.is_zero() => Some(e as usize),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Q) -> MixedClass {
        MixedClass {
            ambient: self.ambient.scale(c),
            exceptional: self.exceptional.scale(c),
        }
    }

    /// Terms in canonical order: descending `H` power, then `j` terms by
    /// descending `h2` then `h1`.
    pub fn rendered_terms(&self) -> Vec<(String, Q)> {
        let mut out: Vec<(String, Q)> = self
            .ambient
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (h_label(m.exponent(0) as usize), c.clone()))
            .collect();
        out.extend(self.exceptional.sorted_terms().into_iter().map(|(m, c)| {
            (
                j_label(i64::from(m.exponent(H2)), i64::from(m.exponent(H1))),
                c.clone(),
            )
        }));
        out
    }
}

impl fmt::Display for MixedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.rendered_terms()))
    }
}

impl Add for &MixedClass {
    type Output = MixedClass;

    /// # Panics
    ///
    /// If the classes come from presentations of different dimension.
    fn add(self, rhs: &MixedClass) -> MixedClass {
        MixedClass {
            ambient: self.ambient.add(&rhs.ambient).expect("same presentation"),
            exceptional: self
                .exceptional
                .add(&rhs.exceptional)
                .expect("same presentation"),
        }
    }
}

impl Sub for &MixedClass {
    type Output = MixedClass;

    fn sub(self, rhs: &MixedClass) -> MixedClass {
        self + &(-rhs)
    }
}

impl Neg for &MixedClass {
    type Output = MixedClass;

    fn neg(self) -> MixedClass {
        MixedClass {
            ambient: self.ambient.neg(),
            exceptional: self.exceptional.neg(),
        }
    }
}
