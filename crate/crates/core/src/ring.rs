//! Graded commutative algebra with exact rational coefficients.
//!
//! A [`FormalSum`] is a polynomial over a fixed [`GeneratorSet`]. Quotient
//! rings are modelled by a [`RewriteSystem`]: a list of rules `m -> p` where
//! every monomial of `p` is strictly smaller than `m` in the graded
//! lexicographic order of the generator set. Truncations `g^k -> 0` are the
//! special case `p = 0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// Names and degrees of the generators of one ring. The declaration order
/// fixes the monomial order: earlier generators are more significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl GeneratorSet {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Arc<Self> {
        let (names, degrees) = gens.into_iter().map(|(n, d)| (n.into(), d)).unzip();
        Arc::new(GeneratorSet { names, degrees })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

/// Sparse exponent map keyed by generator index. Zero exponents are never
/// stored, so structural equality is monomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.exps.insert(i, e);
        }
        m
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::one();
        for (i, e) in exps {
            if e > 0 {
                *m.exps.entry(i).or_insert(0) += e;
            }
        }
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self, gens: &GeneratorSet) -> u32 {
        self.exps.iter().map(|(&i, &e)| e * gens.degree_of(i)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&i, &e) in &other.exps {
            *out.exps.entry(i).or_insert(0) += e;
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (&i, &e) in &other.exps {
            let mine = out.exponent(i);
            if mine < e {
                return None;
            }
            if mine == e {
                out.exps.remove(&i);
            } else {
                out.exps.insert(i, mine - e);
            }
        }
        Some(out)
    }

    /// Graded lexicographic comparison: weighted degree first, then exponents
    /// in generator declaration order.
    pub fn cmp_graded(&self, other: &Monomial, gens: &GeneratorSet) -> Ordering {
        self.degree(gens).cmp(&other.degree(gens)).then_with(|| {
            (0..gens.len())
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.is_one() {
            return "1".into();
        }
        (0..gens.len())
            .filter(|&i| self.exponent(i) > 0)
            .map(|i| match self.exponent(i) {
                1 => gens.name(i).to_string(),
                e => format!("{}^{}", gens.name(i), e),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Formal sum of monomials with rational coefficients, kept canonical: no
/// zero coefficient is ever stored.
#[derive(Debug, Clone)]
pub struct FormalSum {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for FormalSum {
    fn eq(&self, other: &Self) -> bool {
        *self.gens == *other.gens && self.terms == other.terms
    }
}

impl Eq for FormalSum {}

impl FormalSum {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        FormalSum {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Q) -> Self {
        FormalSum::term(gens, Monomial::one(), c)
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        FormalSum::constant(gens, Q::one())
    }

    pub fn term(gens: &Arc<GeneratorSet>, m: Monomial, c: Q) -> Self {
        let mut s = FormalSum::zero(gens);
        s.add_term(m, c);
        s
    }

    /// The generator called `name`, or an error if the ring has no such
    /// generator.
    pub fn generator(gens: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        let i = gens
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(FormalSum::term(gens, Monomial::var(i, 1), Q::one()))
    }

    pub fn from_terms(
        gens: &Arc<GeneratorSet>,
        terms: impl IntoIterator<Item = (Monomial, Q)>,
    ) -> Self {
        let mut s = FormalSum::zero(gens);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &FormalSum) -> Result<()> {
        if *self.gens != *other.gens {
            return Err(Error::GeneratorMismatch {
                left: self.gens.to_string(),
                right: other.gens.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> FormalSum {
        FormalSum::from_terms(
            &self.gens,
            self.terms.iter().map(|(m, x)| (m.clone(), x * c)),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> FormalSum {
        FormalSum::from_terms(
            &self.gens,
            self.terms.iter().map(|(t, x)| (t.mul(m), x * c)),
        )
    }

    /// Product in the free commutative algebra, without any reduction.
    pub fn mul_free(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_same(other)?;
        let mut out = FormalSum::zero(&self.gens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Product followed by reduction to normal form under `rw`.
    pub fn mul(&self, other: &FormalSum, rw: &RewriteSystem) -> Result<FormalSum> {
        rw.normal_form(&self.mul_free(other)?)
    }

    pub fn pow(&self, k: u32, rw: &RewriteSystem) -> Result<FormalSum> {
        let mut acc = rw.normal_form(&FormalSum::one(&self.gens))?;
        for _ in 0..k {
            acc = acc.mul(self, rw)?;
        }
        Ok(acc)
    }

    /// The common degree of all terms, if the sum is homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.gens));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree(&self.gens) == d)
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_graded(a.0, &self.gens));
        v
    }

    /// Renders with a caller-supplied monomial printer; used for `j(...)`.
    pub(crate) fn render_with(&self, mono: impl Fn(&Monomial) -> String) -> String {
        render_terms(
            self.sorted_terms()
                .into_iter()
                .map(|(m, c)| (mono(m), c.clone())),
        )
    }
}

/// Joins `(body, coefficient)` pairs into `a*x - b*y + c` form. A body of
/// `"1"` prints as a bare coefficient.
pub(crate) fn render_terms(terms: impl IntoIterator<Item = (String, Q)>) -> String {
    let mut out = String::new();
    for (i, (body, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if body == "1" {
            out.push_str(&render_q(&mag));
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{}*{}", render_q(&mag), body));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_q(c: &Q) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.gens.clone();
        write!(f, "{}", self.render_with(|m| m.render(&gens)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: FormalSum,
}

/// Order in which [`RewriteSystem::normal_form_ordered`] visits pending
/// terms. Used to exercise confluence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Fifo,
    Lifo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    gens: Arc<GeneratorSet>,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(gens: &Arc<GeneratorSet>) -> Self {
        RewriteSystem {
            gens: gens.clone(),
            rules: Vec::new(),
        }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Adds `name^power -> 0`.
    pub fn truncate(self, name: &str, power: u32) -> Result<Self> {
        let i = self
            .gens
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        if power == 0 {
            return Err(Error::OutOfRange(
                "truncation power must be positive".into(),
            ));
        }
        let zero = FormalSum::zero(&self.gens);
        self.substitute(Monomial::var(i, power), zero)
    }

    /// Adds `lhs -> rhs`. Every monomial of `rhs` must be strictly below
    /// `lhs` in the graded-lex order, which guarantees termination.
    pub fn substitute(mut self, lhs: Monomial, rhs: FormalSum) -> Result<Self> {
        if *rhs.gens != *self.gens {
            return Err(Error::GeneratorMismatch {
                left: self.gens.to_string(),
                right: rhs.gens.to_string(),
            });
        }
        if let Some((m, _)) = rhs
            .terms()
            .find(|(m, _)| m.cmp_graded(&lhs, &self.gens) != Ordering::Less)
        {
            return Err(Error::NonDecreasingRule(format!(
                "{} -> ... {}",
                lhs.render(&self.gens),
                m.render(&self.gens)
            )));
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(self)
    }

    /// Same rules, reordered by `perm` (indices into the current rule list).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        RewriteSystem {
            gens: self.gens.clone(),
            rules: perm.iter().map(|&i| self.rules[i].clone()).collect(),
        }
    }

    pub fn normal_form(&self, a: &FormalSum) -> Result<FormalSum> {
        self.normal_form_ordered(a, Traversal::Fifo)
    }

    /// Repeatedly rewrites single terms by the first matching rule until no
    /// rule applies.
    pub fn normal_form_ordered(&self, a: &FormalSum, order: Traversal) -> Result<FormalSum> {
        if *a.gens != *self.gens {
            return Err(Error::GeneratorMismatch {
                left: self.gens.to_string(),
                right: a.gens.to_string(),
            });
        }
        let mut out = FormalSum::zero(&self.gens);
        let mut pending: VecDeque<(Monomial, Q)> = a
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        loop {
            let next = match order {
                Traversal::Fifo => pending.pop_front(),
                Traversal::Lifo => pending.pop_back(),
            };
            let Some((m, c)) = next else { break };
            let hit = self
                .rules
                .iter()
                .find_map(|r| m.div(&r.lhs).map(|quot| (r, quot)));
            match hit {
                None => out.add_term(m, c),
                Some((rule, quot)) => {
                    for (t, x) in rule.rhs.terms() {
                        pending.push_back((t.mul(&quot), x * &c));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Truncated expansion of `(1 + g)^(-power)` modulo `g^truncation`:
/// the sum over `j < truncation` of `C(power - 1 + j, j) (-g)^j`.
pub fn inv_one_plus(
    gens: &Arc<GeneratorSet>,
    g: &str,
    power: u32,
    truncation: u32,
) -> Result<FormalSum> {
    if power == 0 {
        return Err(Error::OutOfRange("power must be at least 1".into()));
    }
    if truncation == 0 {
        return Err(Error::OutOfRange("truncation must be at least 1".into()));
    }
    let i = gens
        .index(g)
        .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
    let terms = (0..truncation).map(|j| {
        let c = binomial(u64::from(power - 1 + j), u64::from(j));
        let sign = if j % 2 == 0 { q(1) } else { q(-1) };
        (Monomial::var(i, j), Q::from_integer(c) * sign)
    });
    Ok(FormalSum::from_terms(gens, terms))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
