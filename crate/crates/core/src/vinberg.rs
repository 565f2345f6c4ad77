//! Vinberg's algorithm for the reflection group of the roots of a
//! hyperbolic lattice M.
//!
//! Conventions: M has signature (1, r-1), roots have negative norm, and the
//! domain is P = {x : (delta, x) >= 0 for every accepted delta}. Two distinct
//! facet normals of a Coxeter polyhedron then pair non-negatively.

use crate::arith::{gcd_all, is_primitive_vec, lead_sign, rat, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::LatVector;
use crate::matrix::IMatrix;
use crate::polyhedral::extreme_rays;
use crate::search::SliceSearch;
use crate::sublattice::Sublattice;
use crate::walls::{ambient_divisibility, crossing_vectors, isotropic_rays_rank2, WallSpec};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub const BUDGET_ENV: &str = "HYPERLAT_VINBERG_BUDGET";
const DEFAULT_BUDGET: usize = 400;
const SLICE_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VinbergCertificate {
    /// The accepted walls bound a polyhedral cone inside the closed positive
    /// cone and no root hyperplane crosses its interior.
    Complete { finite_volume: bool },
    /// Step budget exhausted; the facets found so far are a subset.
    Incomplete { levels: usize },
}

/// A polyhedral cone in M coordinates: {x : (f, x) >= 0 for f in facets and bounds}.
#[derive(Clone, Debug, Serialize)]
pub struct Polyhedron {
    #[serde(with = "crate::json::vec")]
    pub base: LatVector,
    /// Inward root normals.
    #[serde(with = "crate::json::vecs")]
    pub facets: Vec<LatVector>,
    /// Isotropic vectors closing the cone at rank 2 (not roots).
    #[serde(with = "crate::json::vecs")]
    pub bounds: Vec<LatVector>,
    /// Extreme rays; norm 0 means ideal vertex.
    #[serde(with = "crate::json::vecs")]
    pub vertices: Vec<LatVector>,
    pub certificate: VinbergCertificate,
}

impl Polyhedron {
    /// Linear functionals (rows) a with a . x >= 0 on the cone.
    pub fn functionals(&self, gram: &IMatrix) -> Vec<Vec<Int>> {
        self.facets.iter().chain(&self.bounds).map(|v| gram.mul_vec(v)).collect()
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.certificate, VinbergCertificate::Complete { .. })
    }
}

pub fn budget_from_env() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

fn reflective(gram: &IMatrix, delta: &[Int]) -> bool {
    // 2 (x, delta) / (delta, delta) integral for all x
    let n = gram.bilinear(delta, delta);
    let g = gcd_all(&gram.mul_vec(delta));
    (g * Int::from(2)).is_multiple_of(&n)
}

struct Roots<'a> {
    m: &'a Sublattice,
    spec: &'a WallSpec,
}

impl Roots<'_> {
    fn is_root(&self, x: &[Int], norm: i64) -> Result<bool> {
        if !is_primitive_vec(x) || !self.spec.matches(&Int::from(norm), &ambient_divisibility(self.m, x)) {
            return Ok(false);
        }
        if !reflective(self.m.gram(), x) {
            return Err(Error::NonReflective(norm));
        }
        Ok(true)
    }
}

fn accepts(gram: &IMatrix, accepted: &[LatVector], x: &[Int]) -> bool {
    accepted.iter().all(|a| !gram.bilinear(a, x).is_negative())
}

/// Runs Vinberg's algorithm from `base` with the roots described by `roots`
/// (norm in M, divisibility in the ambient lattice).
pub fn vinberg_domain(m: &Sublattice, roots: &WallSpec, base: &[Int], budget: usize) -> Result<Polyhedron> {
    let g = m.gram();
    let r = m.rank();
    if base.len() != r {
        return Err(Error::Dimension("base length differs from rank".into()));
    }
    if !g.bilinear(base, base).is_positive() {
        return Err(Error::Input("base must have positive norm".into()));
    }
    if !m.is_hyperbolic() {
        return Err(Error::Input("sublattice is not hyperbolic".into()));
    }
    let base = crate::arith::primitive(base);
    let rs = Roots { m, spec: roots };
    let norms = roots.norms();
    let gb = g.mul_vec(&base);
    let func = IMatrix::from_rows(vec![gb.clone()], r);
    let searches: Vec<SliceSearch> = norms.iter().map(|_| SliceSearch::new(g, &func)).collect::<Result<_>>()?;

    let mut bounds = Vec::new();
    if let Some((u, v)) = isotropic_rays_rank2(g) {
        let (u, v) = if g.bilinear(&u, &base).is_negative() { (crate::arith::neg_vec(&u), crate::arith::neg_vec(&v)) } else { (u, v) };
        bounds = vec![u, v];
    }

    // stage 0: a simple system of the finite root system in base-perp
    let mut zero: Vec<LatVector> = Vec::new();
    for (n, s) in norms.iter().zip(&searches) {
        for x in s.collect(&[Int::zero()], &Int::from(*n), SLICE_LIMIT)? {
            if lead_sign(&x) > 0 && rs.is_root(&x, *n)? {
                zero.push(x);
            }
        }
    }
    zero.sort();
    let mut facets: Vec<LatVector> = Vec::new();
    for x in zero {
        if accepts(g, &facets, &x) {
            facets.push(x);
        }
    }
    if let Some(p) = finish(m, roots, &base, &facets, &bounds)? {
        return Ok(p);
    }

    // later stages: levels (k, N) ordered by k^2 / |N|, then lexicographically
    let mut next_k: Vec<Int> = norms.iter().map(|_| Int::from(1)).collect();
    for _ in 0..budget {
        let key = |i: usize, k: &Int| -> Rat { Rat::new(k * k, Int::from(-norms[i])) };
        let best = (0..norms.len()).map(|i| key(i, &next_k[i])).min().expect("nonempty spec");
        let mut batch: Vec<LatVector> = Vec::new();
        for i in 0..norms.len() {
            if key(i, &next_k[i]) == best {
                for x in searches[i].collect(&[next_k[i].clone()], &Int::from(norms[i]), SLICE_LIMIT)? {
                    if rs.is_root(&x, norms[i])? {
                        batch.push(x);
                    }
                }
                next_k[i] += 1;
            }
        }
        batch.sort();
        let mut grew = false;
        for x in batch {
            if accepts(g, &facets, &x) {
                facets.push(x);
                grew = true;
            }
        }
        if grew {
            if let Some(p) = finish(m, roots, &base, &facets, &bounds)? {
                return Ok(p);
            }
        }
    }
    let vertices = cone_rays(g, &facets, &bounds).unwrap_or_default();
    Ok(Polyhedron { base, facets: sorted(facets), bounds, vertices, certificate: VinbergCertificate::Incomplete { levels: budget } })
}

fn sorted(mut v: Vec<LatVector>) -> Vec<LatVector> {
    v.sort();
    v
}

fn cone_rays(g: &IMatrix, facets: &[LatVector], bounds: &[LatVector]) -> Result<Vec<LatVector>> {
    let rows: Vec<Vec<Int>> = facets.iter().chain(bounds).map(|v| g.mul_vec(v)).collect();
    extreme_rays(&rows, g.nrows())
}

/// Done when the cone is pointed, sits in the closed forward cone and no root
/// hyperplane crosses its interior.
fn finish(m: &Sublattice, roots: &WallSpec, base: &[Int], facets: &[LatVector], bounds: &[LatVector]) -> Result<Option<Polyhedron>> {
    let g = m.gram();
    let rays = match cone_rays(g, facets, bounds) {
        Ok(r) => r,
        Err(Error::NotPointed) => return Ok(None),
        Err(e) => return Err(e),
    };
    if rays.is_empty() {
        return Ok(None);
    }
    if rays.iter().any(|x| g.bilinear(x, x).is_negative() || !g.bilinear(x, base).is_positive()) {
        return Ok(None);
    }
    let rs = Roots { m, spec: roots };
    for n in roots.norms() {
        for x in crossing_vectors(g, &rays, &Int::from(n))? {
            if rs.is_root(&x, n)? {
                // a root still cuts the cone; keep going
                return Ok(None);
            }
        }
    }
    Ok(Some(Polyhedron {
        base: base.to_vec(),
        facets: sorted(facets.to_vec()),
        bounds: bounds.to_vec(),
        vertices: rays,
        certificate: VinbergCertificate::Complete { finite_volume: bounds.is_empty() },
    }))
}

/// Hyperbolic distance key of a root from the base: (delta, base)^2 / |norm|.
pub fn distance_key(gram: &IMatrix, delta: &[Int], base: &[Int]) -> Rat {
    let p = gram.bilinear(delta, base);
    let n = gram.bilinear(delta, delta);
    if n.is_zero() {
        return rat(0, 1);
    }
    Rat::new(&p * &p, n.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;
    use crate::lattice::Lattice;

    fn diag_m(d: &[i64]) -> Sublattice {
        let l = Lattice::new(IMatrix::diag(&ivec(d))).unwrap();
        Sublattice::full(&l)
    }

    fn minus_two() -> WallSpec {
        WallSpec::parse("-2").unwrap()
    }

    #[test]
    fn two_node_double_plane_lattice() {
        // <2> + 3<-2> with basis c, d, d', e
        let m = diag_m(&[2, -2, -2, -2]);
        let p = vinberg_domain(&m, &minus_two(), &ivec(&[1, 0, 0, 0]), 50).unwrap();
        let want: Vec<LatVector> = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, -1, -1, 0], [1, -1, 0, -1], [1, 0, -1, -1]].iter().map(|v| ivec(v)).collect();
        assert_eq!(p.facets, want);
        let verts: Vec<LatVector> = [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [1, 0, 0, 0], [2, -1, -1, -1]].iter().map(|v| ivec(v)).collect();
        assert_eq!(p.vertices, verts);
        assert_eq!(p.certificate, VinbergCertificate::Complete { finite_volume: true });
        // Coxeter condition
        for (i, a) in p.facets.iter().enumerate() {
            for b in &p.facets[i + 1..] {
                assert!(!m.gram().bilinear(a, b).is_negative());
            }
        }
    }

    #[test]
    fn u2_has_no_roots() {
        let l = Lattice::new(IMatrix::from_i64(&[vec![0, 2], vec![2, 0]])).unwrap();
        let m = Sublattice::full(&l);
        let p = vinberg_domain(&m, &minus_two(), &ivec(&[1, 1]), 10).unwrap();
        assert!(p.facets.is_empty());
        assert_eq!(p.vertices, vec![ivec(&[0, 1]), ivec(&[1, 0])]);
        assert!(p.is_complete());
    }

    #[test]
    fn rank_two_with_one_root() {
        // <2> + <-2>: roots +-e only, the domain is half of the cone
        let m = diag_m(&[2, -2]);
        let p = vinberg_domain(&m, &minus_two(), &ivec(&[1, 0]), 10).unwrap();
        assert_eq!(p.facets, vec![ivec(&[0, 1])]);
        assert_eq!(p.vertices, vec![ivec(&[1, -1]), ivec(&[1, 0])]);
    }

    #[test]
    fn non_reflective_norm_is_rejected() {
        // (1, 2, 0) has norm -6 and G v = (2, -4, 0): 2 * 2 / 6 is not integral
        let m = diag_m(&[2, -2, -2]);
        let spec = WallSpec::parse("-6").unwrap();
        assert_eq!(vinberg_domain(&m, &spec, &ivec(&[1, 0, 0]), 5).unwrap_err(), Error::NonReflective(-6));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        // U + <-2>: from a base that needs several levels, a budget of 0 stops early
        let l = Lattice::new(IMatrix::from_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]])).unwrap();
        let m = Sublattice::full(&l);
        let p = vinberg_domain(&m, &minus_two(), &ivec(&[1, 3, 0]), 0).unwrap();
        assert_eq!(p.certificate, VinbergCertificate::Incomplete { levels: 0 });
        let full = vinberg_domain(&m, &minus_two(), &ivec(&[1, 3, 0]), 50).unwrap();
        assert!(full.is_complete());
        for (i, a) in full.facets.iter().enumerate() {
            for b in &full.facets[i + 1..] {
                assert!(!m.gram().bilinear(a, b).is_negative());
            }
        }
    }
}
