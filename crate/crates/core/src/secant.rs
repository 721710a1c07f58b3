//! Secant bundles `P(E_{n,k})` over `P^k` and the maps between the
//! `k = 2` bundle and the blow-up `X_n` of `P^n` along a rational normal curve.
//!
//! The ring of `P(E_{n,k})` is generated by `h` (pulled back from `P^k`) and
//! `zeta` (the tautological class), with `h^(k+1) = 0` and the projective
//! bundle relation built from `c(E) = (1 + h)^-(n-k+1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blowup::{BlowupPresentation, MixedClass};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::ring::{binomial, inv_one_plus, FormalSum, GeneratorSet, Monomial, RewriteSystem};
use std::sync::Arc;

const ZETA: usize = 0;
const H: usize = 1;

#[derive(Debug, Clone)]
pub struct SecantBundleRing {
    n: u32,
    k: u32,
    gens: Arc<GeneratorSet>,
    rw: RewriteSystem,
    relation: FormalSum,
}

impl SecantBundleRing {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::OutOfRange(format!(
                "secant bundle requires 1 <= k < n, got n = {n}, k = {k}"
            )));
        }
        let gens = GeneratorSet::new([("zeta", 1), ("h", 1)]);
        let chern = inv_one_plus(&gens, "h", n - k + 1, k + 1)?;
        // sum_i c_i h^i zeta^(k-i)
        let relation = FormalSum::from_terms(
            &gens,
            chern.terms().map(|(m, c)| {
                let i = m.exponent(H);
                (Monomial::from_exponents([(ZETA, k - i), (H, i)]), c.clone())
            }),
        );
        let tail = FormalSum::from_terms(
            &gens,
            relation
                .terms()
                .filter(|(m, _)| m.exponent(H) > 0)
                .map(|(m, c)| (m.clone(), -c.clone())),
        );
        let rw = RewriteSystem::new(&gens)
            .truncate("h", k + 1)?
            .substitute(Monomial::var(ZETA, k), tail)?;
        Ok(SecantBundleRing {
            n,
            k,
            gens,
            rw,
            relation,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Dimension of the bundle, `2k - 1`.
    pub fn dim(&self) -> u32 {
        2 * self.k - 1
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn rules(&self) -> &RewriteSystem {
        &self.rw
    }

    /// The polynomial `sum_i c_i(E) h^i zeta^(k-i)` that vanishes in the ring.
    pub fn relation(&self) -> &FormalSum {
        &self.relation
    }

    pub fn zeta(&self) -> FormalSum {
        FormalSum::term(&self.gens, Monomial::var(ZETA, 1), Q::one())
    }

    pub fn h(&self) -> FormalSum {
        FormalSum::term(&self.gens, Monomial::var(H, 1), Q::one())
    }

    pub fn one(&self) -> FormalSum {
        FormalSum::one(&self.gens)
    }

    /// `a * zeta + b * h`.
    pub fn linear(&self, a: i64, b: i64) -> FormalSum {
        FormalSum::from_terms(
            &self.gens,
            [(Monomial::var(ZETA, 1), q(a)), (Monomial::var(H, 1), q(b))],
        )
    }

    pub fn reduce(&self, x: &FormalSum) -> Result<FormalSum> {
        self.rw.normal_form(x)
    }

    pub fn mul(&self, x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
        x.mul(y, &self.rw)
    }

    pub fn pow(&self, x: &FormalSum, e: u32) -> Result<FormalSum> {
        x.pow(e, &self.rw)
    }

    /// Degree of a class of top degree: the coefficient of `h^k zeta^(k-1)`
    /// in normal form.
    pub fn degree(&self, x: &FormalSum) -> Result<Q> {
        let top = self.dim();
        if !x.is_homogeneous_of(top) {
            return Err(Error::NotHomogeneous {
                expected: top as usize,
            });
        }
        let nf = self.reduce(x)?;
        let point = Monomial::from_exponents([(ZETA, self.k - 1), (H, self.k)]);
        if let Some((m, _)) = nf.terms().find(|(m, _)| **m != point) {
            return Err(Error::Inconsistent(format!(
                "top-degree normal form has stray monomial {}",
                m.render(&self.gens)
            )));
        }
        Ok(nf.coeff(&point))
    }

    /// Monomials `zeta^b h^a` (`a <= k`, `b < k`) in normal form of degree `d`.
    pub fn monomial_basis(&self, d: u32) -> Vec<FormalSum> {
        (0..self.k)
            .rev()
            .filter_map(|b| {
                let a = d.checked_sub(b)?;
                (a <= self.k).then(|| {
                    FormalSum::term(
                        &self.gens,
                        Monomial::from_exponents([(ZETA, b), (H, a)]),
                        Q::one(),
                    )
                })
            })
            .collect()
    }

    /// Coordinates of degree-`d` classes in a basis of the numerical group,
    /// chosen greedily from [`monomial_basis`](Self::monomial_basis).
    pub fn num_coords(&self, xs: &[FormalSum], d: u32) -> Result<(Vec<String>, Vec<Vec<Q>>)> {
        if d > self.dim() {
            return Err(Error::OutOfRange(format!(
                "degree {d} exceeds dimension {}",
                self.dim()
            )));
        }
        let gens = self.monomial_basis(d);
        let cogens = self.monomial_basis(self.dim() - d);
        let full: Vec<Vec<Q>> = gens
            .iter()
            .map(|a| {
                cogens
                    .iter()
                    .map(|b| self.degree(&self.mul(a, b)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let rows = linalg::independent_rows(&full);
        let cols = linalg::independent_rows(&linalg::transpose(&full));
        let nt: Vec<Vec<Q>> = cols
            .iter()
            .map(|&j| rows.iter().map(|&i| full[i][j].clone()).collect())
            .collect();
        let labels = rows.iter().map(|&i| gens[i].to_string()).collect();
        let coords = xs
            .iter()
            .map(|x| {
                if !x.is_homogeneous_of(d) {
                    return Err(Error::NotHomogeneous {
                        expected: d as usize,
                    });
                }
                let p: Vec<Q> = cols
                    .iter()
                    .map(|&j| self.degree(&self.mul(x, &cogens[j])?))
                    .collect::<Result<_>>()?;
                linalg::solve(&nt, &p)
                    .ok_or_else(|| Error::Singular(format!("numerical pairing in degree {d}")))
            })
            .collect::<Result<_>>()?;
        Ok((labels, coords))
    }
}

/// `deg zeta^(2k-1)` in `P(E_{n,k})`, the degree of the `k`-th secant variety
/// of the rational normal curve in `P^n`.
pub fn secant_degree(n: u32, k: u32) -> Result<BigInt> {
    if k == 0 || 2 * k - 1 > n {
        return Err(Error::OutOfRange(format!(
            "secant degree requires 1 <= k and 2k - 1 <= n, got n = {n}, k = {k}"
        )));
    }
    let ring = SecantBundleRing::new(n, k)?;
    let top = ring.pow(&ring.zeta(), 2 * k - 1)?;
    let d = ring.degree(&top)?;
    Ok(d.to_integer())
}

/// The class `2 zeta - m h` of the divisor contracted by the second
/// projection, with `m` solved from `deg(D * zeta^2) = 0`.
pub fn incidence_divisor(n: u32) -> Result<(FormalSum, BigInt)> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "incidence divisor requires n >= 3, got {n}"
        )));
    }
    let ring = SecantBundleRing::new(n, 2)?;
    let z2 = ring.pow(&ring.zeta(), 2)?;
    let z3 = ring.degree(&ring.mul(&z2, &ring.zeta())?)?;
    let hz2 = ring.degree(&ring.mul(&z2, &ring.h())?)?;
    if hz2.is_zero() {
        return Err(Error::Singular("deg(h zeta^2) vanishes".into()));
    }
    let m = q(2) * z3 / hz2;
    if !m.is_integer() {
        return Err(Error::NonIntegral(crate::ring::render_q(&m)));
    }
    let m = m.to_integer();
    let d = FormalSum::from_terms(
        ring.gens(),
        [
            (Monomial::var(ZETA, 1), q(2)),
            (Monomial::var(H, 1), -linalg::q_int(&m)),
        ],
    );
    Ok((d, m))
}

/// The maps `psi^*` and `psi_*` between `P(E_{n,2})` and `X_n`, where
/// `psi` is the resolution of the proper transform of the secant variety.
///
/// The pullback is fixed by `H -> zeta` and `E -> D`; on higher codimension it
/// goes through the numerical group, where every class is a combination of
/// the words `H^i E^(c-i)`. The pushforward is solved from the projection
/// formula `deg(psi_* g * b) = deg(g * psi^* b)`.
#[derive(Debug, Clone)]
pub struct PsiMaps {
    n: u32,
    bundle: SecantBundleRing,
    space: BlowupPresentation,
    divisor: FormalSum,
}

impl PsiMaps {
    pub fn new(n: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::OutOfRange(format!(
                "psi maps require n >= 4, got {n}"
            )));
        }
        Ok(PsiMaps {
            n,
            bundle: SecantBundleRing::new(n, 2)?,
            space: BlowupPresentation::rnc(n)?,
            divisor: incidence_divisor(n)?.0,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bundle(&self) -> &SecantBundleRing {
        &self.bundle
    }

    pub fn space(&self) -> &BlowupPresentation {
        &self.space
    }

    pub fn incidence_divisor(&self) -> &FormalSum {
        &self.divisor
    }

    fn words(&self, c: u32) -> Vec<(MixedClass, FormalSum)> {
        let s = &self.space;
        (0..=c)
            .rev()
            .map(|i| {
                let x = s.product(&s.h_pow(i), &s.pow(&s.e(), c - i));
                let y = self
                    .bundle
                    .mul(
                        &self.bundle.pow(&self.bundle.zeta(), i).expect("same ring"),
                        &self.bundle.pow(&self.divisor, c - i).expect("same ring"),
                    )
                    .expect("same ring");
                (x, y)
            })
            .collect()
    }

    pub fn pullback(&self, x: &MixedClass) -> Result<FormalSum> {
        let zero = FormalSum::zero(self.bundle.gens());
        if x.is_zero() {
            return Ok(zero);
        }
        let c = x.codim().ok_or(Error::NotHomogeneous {
            expected: x.ambient.degree().unwrap_or(0) as usize,
        })?;
        if c == 0 {
            let k = x.ambient.coeff(&Monomial::one());
            return Ok(FormalSum::constant(self.bundle.gens(), k));
        }
        if c > self.bundle.dim() as usize {
            return Ok(zero);
        }
        let nb = self.space.numerical_basis(c)?;
        let words = self.words(c as u32);
        let coords: Vec<Vec<Q>> = words
            .iter()
            .map(|(w, _)| self.space.to_num_in(&nb, w))
            .collect::<Result<_>>()?;
        let chosen = linalg::independent_rows(&coords);
        let target = self.space.to_num_in(&nb, x)?;
        if chosen.len() != nb.rank() {
            return Err(Error::OutsideSpan);
        }
        let a: Vec<Vec<Q>> = chosen.iter().map(|&i| coords[i].clone()).collect();
        let sol = linalg::solve(&linalg::transpose(&a), &target).ok_or(Error::OutsideSpan)?;
        let mut out = zero;
        for (coef, &i) in sol.iter().zip(&chosen) {
            out = out.add(&words[i].1.scale(coef))?;
        }
        self.bundle.reduce(&out)
    }

    /// Pushforward of a homogeneous class of degree `g`, landing in
    /// codimension `n - 3 + g`.
    pub fn pushforward(&self, gamma: &FormalSum) -> Result<MixedClass> {
        let g = match gamma.degree() {
            Some(g) => g,
            None if gamma.is_zero() => {
                return Err(Error::Inconsistent(
                    "pushforward of zero has no codimension".into(),
                ))
            }
            None => return Err(Error::NotHomogeneous { expected: 0 }),
        };
        if g > self.bundle.dim() {
            return Ok(self.space.zero());
        }
        let t = (self.n - 3 + g) as usize;
        let nb = self.space.numerical_basis(t)?;
        let p: Vec<Q> = nb
            .dual_basis
            .iter()
            .map(|b| {
                let pb = self.pullback(b)?;
                self.bundle.degree(&self.bundle.mul(gamma, &pb)?)
            })
            .collect::<Result<_>>()?;
        let c = linalg::solve(&linalg::transpose(&nb.pairing), &p)
            .ok_or_else(|| Error::Singular(format!("pushforward pairing in codimension {t}")))?;
        Ok(self.space.from_num(&nb, &c))
    }

    /// The class of the proper transform of the secant variety, `psi_* 1`.
    pub fn secant_class(&self) -> Result<MixedClass> {
        self.pushforward(&self.bundle.one())
    }

    /// Whether two classes of codimension `k` agree numerically.
    pub fn num_eq(&self, x: &MixedClass, y: &MixedClass, k: usize) -> Result<bool> {
        Ok(self.space.to_num(x, k)? == self.space.to_num(y, k)?)
    }
}

/// Closed forms for `psi_* h`, `psi_* 1` and `psi_* zeta`, used as test
/// expectations for the duality solve.
pub mod closed_forms {
    use super::*;

    fn j(s: &BlowupPresentation, e2: i64, e1: i64) -> Result<MixedClass> {
        s.j_mono(e2, e1)
            .ok_or_else(|| Error::OutOfRange(format!("j(h2^{e2} h1^{e1}) undefined")))
    }

    /// `(n-1) H^(n-2) - j(h2^(n-3)) - 2n j(h2^(n-4) h1)`.
    pub fn push_h(s: &BlowupPresentation) -> Result<MixedClass> {
        let n = s.dim() as i64;
        let a = s.h_pow(n as u32 - 2).scale(&q(n - 1));
        Ok(&(&a - &j(s, n - 3, 0)?) - &j(s, n - 4, 1)?.scale(&q(2 * n)))
    }

    /// `C(n-1,2) H^(n-3) - (n-2) j(h2^(n-4)) - (n+2)(n-2) j(h2^(n-5) h1)`.
    pub fn push_one(s: &BlowupPresentation) -> Result<MixedClass> {
        let n = s.dim() as i64;
        let c = linalg::q_int(&binomial(n as u64 - 1, 2));
        let a = s.h_pow(n as u32 - 3).scale(&c);
        Ok(&(&a - &j(s, n - 4, 0)?.scale(&q(n - 2)))
            - &j(s, n - 5, 1)?.scale(&q((n + 2) * (n - 2))))
    }

    /// `C(n-1,2) H^(n-2) - n(n-2) j(h2^(n-4) h1)`.
    pub fn push_zeta(s: &BlowupPresentation) -> Result<MixedClass> {
        let n = s.dim() as i64;
        let c = linalg::q_int(&binomial(n as u64 - 1, 2));
        let a = s.h_pow(n as u32 - 2).scale(&c);
        Ok(&a - &j(s, n - 4, 1)?.scale(&q(n * (n - 2))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert_eq!(
            SecantBundleRing::new(4, 2).unwrap().relation().to_string(),
            "zeta^2 - 3*zeta*h + 6*h^2"
        );
        assert_eq!(
            SecantBundleRing::new(5, 2).unwrap().relation().to_string(),
            "zeta^2 - 4*zeta*h + 10*h^2"
        );
        assert_eq!(
            SecantBundleRing::new(5, 1).unwrap().relation().to_string(),
            "zeta - 5*h"
        );
        assert!(SecantBundleRing::new(4, 4).is_err());
        assert!(SecantBundleRing::new(4, 0).is_err());
    }

    #[test]
    fn line_case_degrees() {
        // k = 1: P(E) is P^1 and zeta = n h.
        let r = SecantBundleRing::new(6, 1).unwrap();
        assert_eq!(r.degree(&r.zeta()).unwrap(), q(6));
        assert_eq!(r.degree(&r.h()).unwrap(), q(1));
    }

    #[test]
    fn secant_degrees() {
        assert_eq!(secant_degree(4, 2).unwrap(), BigInt::from(3));
        for k in 2..=4u32 {
            assert_eq!(secant_degree(2 * k, k).unwrap(), BigInt::from(k + 1));
        }
        for n in 5..=9u32 {
            assert_eq!(secant_degree(n, 2).unwrap(), binomial(u64::from(n) - 1, 2));
        }
        assert!(secant_degree(4, 3).is_err());
    }

    #[test]
    fn incidence_divisor_coefficients() {
        assert_eq!(incidence_divisor(4).unwrap().0.to_string(), "2*zeta - 2*h");
        assert_eq!(incidence_divisor(5).unwrap().0.to_string(), "2*zeta - 3*h");
        for n in 3..=10u32 {
            let (d, m) = incidence_divisor(n).unwrap();
            assert_eq!(m, BigInt::from(n - 2));
            let r = SecantBundleRing::new(n, 2).unwrap();
            let z2 = r.pow(&r.zeta(), 2).unwrap();
            assert!(r.degree(&r.mul(&d, &z2).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn pullback_table() {
        for n in 4..=8u32 {
            let psi = PsiMaps::new(n).unwrap();
            let b = psi.bundle();
            let s = psi.space();
            let ni = i64::from(n);
            assert_eq!(psi.pullback(&s.h()).unwrap(), b.zeta());
            assert_eq!(psi.pullback(&s.e()).unwrap(), b.linear(2, -(ni - 2)));
            let j1 = psi.pullback(&s.j_mono(0, 1).unwrap()).unwrap();
            let want = b
                .reduce(
                    &b.mul(&b.zeta(), &b.h())
                        .unwrap()
                        .sub(&b.pow(&b.h(), 2).unwrap().scale(&q(ni - 1)))
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(j1, want, "n = {n}");
            let j2 = psi.pullback(&s.j_mono(1, 0).unwrap()).unwrap();
            let want = b.mul(&b.h(), &b.linear(1, 1)).unwrap().scale(&q(ni - 2));
            assert_eq!(j2, want, "n = {n}");
        }
    }

    #[test]
    fn e_squared_two_ways() {
        let psi = PsiMaps::new(5).unwrap();
        let b = psi.bundle();
        let s = psi.space();
        let direct = b.pow(&b.linear(2, -3), 2).unwrap();
        assert_eq!(direct.to_string(), "4*zeta*h - 31*h^2");
        let via_j = &s.j_mono(0, 1).unwrap().scale(&q(7)) - &s.j_mono(1, 0).unwrap();
        assert_eq!(psi.pullback(&via_j).unwrap(), direct);
        let he = s.product(&s.h(), &s.e());
        assert_eq!(psi.pullback(&he).unwrap().to_string(), "5*zeta*h - 20*h^2");
    }

    #[test]
    fn pushforward_examples() {
        let psi = PsiMaps::new(5).unwrap();
        let s = psi.space();
        let b = psi.bundle();
        let ph = psi.pushforward(&b.h()).unwrap();
        assert_eq!(ph.to_string(), "4*H^3 - j(h2^2) - 10*j(h2*h1)");
        let pz = psi.pushforward(&b.zeta()).unwrap();
        assert!(psi
            .num_eq(
                &pz,
                &(&s.h_pow(3).scale(&q(6)) - &s.j_mono(1, 1).unwrap().scale(&q(15))),
                3
            )
            .unwrap());

        let psi6 = PsiMaps::new(6).unwrap();
        let s2 = psi6.secant_class().unwrap();
        assert_eq!(s2.to_string(), "10*H^3 - 4*j(h2^2) - 32*j(h2*h1)");

        let psi4 = PsiMaps::new(4).unwrap();
        assert_eq!(psi4.secant_class().unwrap(), psi4.space().divisor(3, 2));
    }

    #[test]
    fn closed_forms_match_duality() {
        for n in 5..=8u32 {
            let psi = PsiMaps::new(n).unwrap();
            let s = psi.space();
            let b = psi.bundle();
            let k = n as usize;
            assert!(psi
                .num_eq(
                    &psi.pushforward(&b.h()).unwrap(),
                    &closed_forms::push_h(s).unwrap(),
                    k - 2
                )
                .unwrap());
            assert!(psi
                .num_eq(
                    &psi.secant_class().unwrap(),
                    &closed_forms::push_one(s).unwrap(),
                    k - 3
                )
                .unwrap());
            assert!(psi
                .num_eq(
                    &psi.pushforward(&b.zeta()).unwrap(),
                    &closed_forms::push_zeta(s).unwrap(),
                    k - 2
                )
                .unwrap());
        }
    }

    #[test]
    fn incidence_divisor_pushes_to_a_single_j_class() {
        for n in 5..=8u32 {
            let psi = PsiMaps::new(n).unwrap();
            let pd = psi.pushforward(psi.incidence_divisor()).unwrap();
            let want = psi
                .space()
                .j_mono(i64::from(n) - 3, 0)
                .unwrap()
                .scale(&q(i64::from(n) - 2));
            assert!(psi.num_eq(&pd, &want, n as usize - 2).unwrap(), "n = {n}");
        }
    }
}
