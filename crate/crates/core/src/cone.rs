//! Exact polyhedral cones of rank 2 to 4.
//!
//! A [`PolyCone`] is pointed and full-dimensional and keeps both
//! descriptions: its extremal rays and its facet functionals, each as a
//! sorted list of primitive integer vectors. Conversion between the two is the
//! incremental double description method, with the algebraic adjacency test
//! (two rays are adjacent when the constraints tight on both have rank
//! `dim - 2`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCone {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
}

fn check_dim(dim: usize) -> Result<()> {
    if !(2..=4).contains(&dim) {
        return Err(Error::UnsupportedRank(dim));
    }
    Ok(())
}

fn check_len(dim: usize, v: &[Q]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::RankMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    Ok(())
}

fn int_dot(a: &[BigInt], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| linalg::q_int(x) * y).sum()
}

fn canonical(vs: impl IntoIterator<Item = Vec<Q>>) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vs
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| linalg::primitive(&v))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Extremal rays of the pointed cone `{x : a x >= 0 for every row a}`.
/// The rows must have full rank `dim`.
fn extreme_rays(rows: &[Vec<Q>], dim: usize) -> Result<Vec<Vec<Q>>> {
    let start = linalg::independent_rows(rows);
    if start.len() < dim {
        return Err(Error::NotPointed);
    }
    // {x : B x >= 0} for square invertible B is generated by the columns of
    // B^-1.
    let b: Vec<Vec<Q>> = start.iter().map(|&i| rows[i].clone()).collect();
    let mut rays: Vec<Vec<Q>> = (0..dim)
        .map(|j| {
            let mut e = vec![Q::zero(); dim];
            e[j] = Q::from_integer(1.into());
            linalg::to_q(&linalg::primitive(
                &linalg::solve(&b, &e).expect("independent rows"),
            ))
        })
        .collect();
    let mut seen: Vec<Vec<Q>> = b;
    for (i, a) in rows.iter().enumerate() {
        if start.contains(&i) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| linalg::dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        let mut next: Vec<Vec<Q>> = (0..rays.len())
            .filter(|&j| !vals[j].is_negative())
            .map(|j| rays[j].clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                if !adjacent(&seen, &rays[p], &rays[n], dim) {
                    continue;
                }
                let v: Vec<Q> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                    .collect();
                next.push(linalg::to_q(&linalg::primitive(&v)));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        seen.push(a.clone());
    }
    Ok(rays)
}

fn adjacent(rows: &[Vec<Q>], p: &[Q], n: &[Q], dim: usize) -> bool {
    let tight: Vec<Vec<Q>> = rows
        .iter()
        .filter(|a| linalg::dot(a, p).is_zero() && linalg::dot(a, n).is_zero())
        .cloned()
        .collect();
    linalg::rank(&tight) == dim - 2
}

/// Facet functionals of the cone generated by `rays`.
pub fn facets_from_rays(dim: usize, rays: &[Vec<Q>]) -> Result<Vec<Vec<BigInt>>> {
    check_dim(dim)?;
    if rays.is_empty() {
        return Err(Error::Empty);
    }
    for r in rays {
        check_len(dim, r)?;
    }
    if linalg::rank(rays) < dim {
        return Err(Error::NotFullDimensional);
    }
    let f = canonical(extreme_rays(rays, dim)?);
    // A cone containing a line has a dual that is not full-dimensional, which
    // shows up as too few facets to cut out a pointed cone.
    if linalg::rank(&f.iter().map(|v| linalg::to_q(v)).collect::<Vec<_>>()) < dim {
        return Err(Error::NotPointed);
    }
    Ok(f)
}

/// Extremal rays of `{x : f x >= 0}`.
pub fn rays_from_facets(dim: usize, facets: &[Vec<Q>]) -> Result<Vec<Vec<BigInt>>> {
    check_dim(dim)?;
    if facets.is_empty() {
        return Err(Error::Empty);
    }
    for f in facets {
        check_len(dim, f)?;
    }
    if linalg::rank(facets) < dim {
        return Err(Error::NotPointed);
    }
    let r = canonical(extreme_rays(facets, dim)?);
    if linalg::rank(&r.iter().map(|v| linalg::to_q(v)).collect::<Vec<_>>()) < dim {
        return Err(Error::NotFullDimensional);
    }
    Ok(r)
}

impl PolyCone {
    pub fn from_rays(dim: usize, rays: &[Vec<Q>]) -> Result<Self> {
        let facets = facets_from_rays(dim, rays)?;
        let rays = rays_from_facets(dim, &to_q_rows(&facets))?;
        Ok(PolyCone { dim, rays, facets })
    }

    pub fn from_inequalities(dim: usize, facets: &[Vec<Q>]) -> Result<Self> {
        let rays = rays_from_facets(dim, facets)?;
        let facets = facets_from_rays(dim, &to_q_rows(&rays))?;
        Ok(PolyCone { dim, rays, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        check_len(self.dim, v)?;
        Ok(self.facets.iter().all(|f| !int_dot(f, v).is_negative()))
    }

    /// Whether `inner` is a subcone of `self`.
    pub fn includes(&self, inner: &PolyCone) -> Result<bool> {
        if inner.dim != self.dim {
            return Err(Error::RankMismatch {
                expected: self.dim,
                got: inner.dim,
            });
        }
        for r in &inner.rays {
            if !self.contains(&linalg::to_q(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The dual cone in the coordinates of the pairing partner:
    /// `pairing[i][j] = <e_i, f_j>` for the basis `e` of this cone's space and
    /// `f` of the partner space.
    pub fn dual_cone(&self, pairing: &[Vec<Q>]) -> Result<PolyCone> {
        if pairing.len() != self.dim || pairing.iter().any(|r| r.len() != self.dim) {
            return Err(Error::RankMismatch {
                expected: self.dim,
                got: pairing.len(),
            });
        }
        if linalg::det(pairing).is_zero() {
            return Err(Error::Singular("pairing matrix".into()));
        }
        let pt = linalg::transpose(pairing);
        let ineqs: Vec<Vec<Q>> = self
            .rays
            .iter()
            .map(|r| linalg::mat_vec(&pt, &linalg::to_q(r)))
            .collect();
        PolyCone::from_inequalities(self.dim, &ineqs)
    }

    /// Whether `v` spans an extremal ray: the facets vanishing on it have rank
    /// `dim - 1`.
    pub fn is_extremal(&self, v: &[Q]) -> Result<bool> {
        if !self.contains(v)? {
            return Err(Error::NotInCone);
        }
        if v.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        let tight: Vec<Vec<Q>> = self
            .facets
            .iter()
            .filter(|f| int_dot(f, v).is_zero())
            .map(|f| linalg::to_q(f))
            .collect();
        Ok(linalg::rank(&tight) == self.dim - 1)
    }
}

fn to_q_rows(v: &[Vec<BigInt>]) -> Vec<Vec<Q>> {
    v.iter().map(|r| linalg::to_q(r)).collect()
}

/// Integer row helper for literals.
pub fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| linalg::q(x)).collect()
}
