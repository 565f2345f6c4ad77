//! Wall divisors: predicates, the set Delta_M, and certified enumeration
//! of wall classes of M whose hyperplanes cross a rational polyhedral cone.

use crate::arith::{box_vectors, canonical_sign, gcd_all, ivec, is_primitive_vec, is_zero_vec, rat_of, Int};
use crate::error::{Error, Result};
use crate::lattice::{signature_of, LatVector, Lattice};
use crate::matrix::IMatrix;
use crate::polyhedral::{feasible_point, LinCon, Rel};
use crate::search::SliceSearch;
use crate::snf::kernel;
use crate::sublattice::Sublattice;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

const SLICE_LIMIT: usize = 1_000_000;

/// One admissible (norm, divisibility) pair; `div = None` means any divisibility.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallClass {
    pub norm: i64,
    pub div: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSpec {
    pub allowed: Vec<WallClass>,
    /// Set for hand-written specs (n >= 3); no correctness claim is attached.
    pub user_supplied: bool,
}

impl WallSpec {
    /// Norm -2, or norm -10 with divisibility 2.
    pub fn n2() -> Self {
        WallSpec { allowed: vec![WallClass { norm: -10, div: Some(2) }, WallClass { norm: -2, div: None }], user_supplied: false }
    }

    pub fn for_n(n: i64) -> Result<Self> {
        if n == 2 {
            Ok(Self::n2())
        } else {
            Err(Error::Unsupported(format!("no built-in wall numerics for n = {n}; pass --norms")))
        }
    }

    pub fn new(mut allowed: Vec<WallClass>, user_supplied: bool) -> Result<Self> {
        if allowed.is_empty() {
            return Err(Error::EmptySpec);
        }
        for c in &allowed {
            if c.norm >= 0 || c.norm % 2 != 0 {
                return Err(Error::Input(format!("wall norm {} is not a negative even integer", c.norm)));
            }
            if matches!(c.div, Some(d) if d <= 0) {
                return Err(Error::Input("divisibility must be positive".into()));
            }
        }
        allowed.sort();
        allowed.dedup();
        Ok(WallSpec { allowed, user_supplied })
    }

    /// Grammar: entry ("," entry)*, entry = norm [":div" k]. Example "-2,-10:div2".
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::EmptySpec);
        }
        let mut allowed = Vec::new();
        let mut pos = 0usize;
        for part in s.split(',') {
            let item = part.trim();
            let (norm_s, div_s) = match item.split_once(':') {
                Some((a, b)) => (a.trim(), Some(b.trim())),
                None => (item, None),
            };
            let norm: i64 = norm_s.parse().map_err(|_| Error::Parse { pos, msg: format!("bad norm {norm_s:?}") })?;
            let div = match div_s {
                None => None,
                Some(d) => {
                    let k = d.strip_prefix("div").ok_or_else(|| Error::Parse { pos, msg: format!("expected div<k>, got {d:?}") })?;
                    if k == "any" {
                        None
                    } else {
                        Some(k.parse::<i64>().map_err(|_| Error::Parse { pos, msg: format!("bad divisibility {k:?}") })?)
                    }
                }
            };
            allowed.push(WallClass { norm, div });
            pos += part.len() + 1;
        }
        Self::new(allowed, true)
    }

    pub fn matches(&self, norm: &Int, div: &Int) -> bool {
        self.allowed.iter().any(|c| Int::from(c.norm) == *norm && c.div.map_or(true, |d| Int::from(d) == *div))
    }

    pub fn norms(&self) -> Vec<i64> {
        let s: BTreeSet<i64> = self.allowed.iter().map(|c| c.norm).collect();
        s.into_iter().rev().collect()
    }

    /// The entries selected by `keep`.
    pub fn filter(&self, keep: impl Fn(&WallClass) -> bool) -> Option<Self> {
        let allowed: Vec<WallClass> = self.allowed.iter().filter(|c| keep(c)).cloned().collect();
        (!allowed.is_empty()).then(|| WallSpec { allowed, user_supplied: self.user_supplied })
    }
}

impl fmt::Display for WallSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .allowed
            .iter()
            .map(|c| match c.div {
                Some(d) => format!("{}:div{}", c.norm, d),
                None => c.norm.to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

fn check_vec(l: &Lattice, delta: &[Int]) -> Result<()> {
    if delta.len() != l.rank() {
        return Err(Error::Dimension("vector length differs from rank".into()));
    }
    if is_zero_vec(delta) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Norm and divisibility of a primitive class against a spec.
pub fn is_wall(l: &Lattice, delta: &[Int], spec: &WallSpec) -> Result<bool> {
    check_vec(l, delta)?;
    if !is_primitive_vec(delta) {
        return Err(Error::VectorNotPrimitive);
    }
    Ok(spec.matches(&l.norm(delta)?, &l.divisibility(delta)?))
}

/// (delta, delta) = -2, or -10 with (delta, L) = 2Z.
pub fn is_wall_divisor_n2(l: &Lattice, delta: &[Int]) -> Result<bool> {
    is_wall(l, delta, &WallSpec::n2())
}

/// Both orthogonal projections of delta have negative norm.
pub fn in_lnm(m: &Sublattice, delta: &[Int]) -> Result<bool> {
    let l = m.ambient();
    check_vec(l, delta)?;
    let (pm, pk) = m.project(delta)?;
    let zero = crate::arith::rat(0, 1);
    Ok(l.inner_q(&pm, &pm) < zero && l.inner_q(&pk, &pk) < zero)
}

/// The signature form of the same condition: sig(M cap delta-perp) = (1, rk M - 2)
/// and sig(M-perp cap delta-perp) = (2, rk M-perp - 3).
pub fn in_lnm_by_signature(m: &Sublattice, delta: &[Int]) -> Result<bool> {
    let l = m.ambient();
    check_vec(l, delta)?;
    let k = m.orthogonal_complement()?;
    let (p_l, _) = l.signature();
    let check = |s: &Sublattice, pos: usize| -> bool {
        let r = s.rank();
        if pos == 0 || r <= pos {
            return false;
        }
        let row = s.basis().mul_vec(&l.gram().mul_vec(delta));
        let ker = kernel(&IMatrix::from_rows(vec![row], r));
        if ker.nrows() != r - 1 {
            return false;
        }
        let g = ker.mul(s.gram()).mul(&ker.transpose());
        signature_of(&g.to_rat()) == (pos, r - 1 - pos, 0)
    };
    Ok(check(m, 1) && check(&k, p_l - 1))
}

/// Delta_M(L_n) = L_n(M) cap Delta(L_n).
pub fn in_delta_m(m: &Sublattice, delta: &[Int], spec: &WallSpec) -> Result<bool> {
    let l = m.ambient();
    check_vec(l, delta)?;
    if !is_primitive_vec(delta) {
        return Ok(false);
    }
    Ok(is_wall(l, delta, spec)? && in_lnm(m, delta)?)
}

/// A closed rational polyhedral cone inside the positive cone of M, given by
/// rays in M coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDescription {
    #[serde(with = "crate::json::vecs")]
    pub rays: Vec<LatVector>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::json::opt_vecs")]
    pub facets: Option<Vec<LatVector>>,
    /// Orientation reference for signed output.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::json::opt_vec")]
    pub reference: Option<LatVector>,
}

impl ConeDescription {
    pub fn from_rays(rays: Vec<LatVector>) -> Self {
        ConeDescription { rays, facets: None, reference: None }
    }

    pub fn with_reference(mut self, r: LatVector) -> Self {
        self.reference = Some(r);
        self
    }

    /// Rays must be nonzero, of norm >= 0, pairwise >= 0 and span M_Q.
    pub fn validate(&self, gram: &IMatrix) -> Result<()> {
        let r = gram.nrows();
        if self.rays.is_empty() {
            return Err(Error::BadCone("no rays".into()));
        }
        for x in &self.rays {
            if x.len() != r {
                return Err(Error::Dimension("ray length differs from rank".into()));
            }
            if is_zero_vec(x) {
                return Err(Error::BadCone("zero ray".into()));
            }
            if gram.bilinear(x, x).is_negative() {
                return Err(Error::BadCone("ray of negative norm".into()));
            }
        }
        for (i, a) in self.rays.iter().enumerate() {
            for b in &self.rays[i + 1..] {
                if gram.bilinear(a, b).is_negative() {
                    return Err(Error::BadCone("rays lie in opposite components".into()));
                }
            }
        }
        if IMatrix::from_rows(self.rays.clone(), r).rank() != r {
            return Err(Error::BadCone("rays do not span".into()));
        }
        Ok(())
    }

    /// Primitive, deduplicated, sorted rays.
    pub fn normalized(&self) -> Vec<LatVector> {
        let s: BTreeSet<LatVector> = self.rays.iter().map(|x| crate::arith::primitive(x)).collect();
        s.into_iter().collect()
    }
}

fn ambient_pairings(m: &Sublattice, delta: &[Int], rays: &[LatVector]) -> Result<Vec<Int>> {
    let l = m.ambient();
    check_vec(l, delta)?;
    let row = m.basis().mul_vec(&l.gram().mul_vec(delta));
    Ok(rays.iter().map(|r| crate::arith::dot(&row, r)).collect())
}

fn sign_test(vals: &[Int], open: bool) -> bool {
    let pos = vals.iter().any(|v| v.is_positive());
    let neg = vals.iter().any(|v| v.is_negative());
    if open {
        pos && neg
    } else {
        (pos && neg) || vals.iter().any(|v| v.is_zero())
    }
}

/// Does delta-perp meet the (open) cone? `delta` is ambient.
pub fn meets_cone(m: &Sublattice, delta: &[Int], cone: &ConeDescription, open: bool) -> Result<bool> {
    cone.validate(m.gram())?;
    let vals = ambient_pairings(m, delta, &cone.rays)?;
    let by_sign = sign_test(&vals, open);
    debug_assert_eq!(by_sign, lp_test(&vals, open));
    Ok(by_sign)
}

/// Same question as an exact feasibility problem in the ray weights.
pub fn meets_cone_lp(m: &Sublattice, delta: &[Int], cone: &ConeDescription, open: bool) -> Result<bool> {
    cone.validate(m.gram())?;
    Ok(lp_test(&ambient_pairings(m, delta, &cone.rays)?, open))
}

fn lp_test(vals: &[Int], open: bool) -> bool {
    let k = vals.len();
    let mut cons = Vec::new();
    for i in 0..k {
        let mut e = vec![Int::zero(); k];
        e[i] = Int::one();
        cons.push(LinCon::int(&e, Rel::Ge, if open { 1 } else { 0 }));
    }
    cons.push(LinCon::int(vals, Rel::Eq, 0));
    if !open {
        cons.push(LinCon::int(&vec![Int::one(); k], Rel::Eq, 1));
    }
    feasible_point(&cons, k).is_some()
}

/// Same as `meets_cone` for a vector in M coordinates.
pub fn crosses_interior(gram: &IMatrix, delta: &[Int], rays: &[LatVector]) -> bool {
    let gd = gram.mul_vec(delta);
    let vals: Vec<Int> = rays.iter().map(|r| crate::arith::dot(&gd, r)).collect();
    sign_test(&vals, true)
}

/// Every x in Z^r (any content) with x^T G x = norm < 0 whose hyperplane
/// separates two rays. For each ordered ray pair (i, j) with u = (x, r_i) > 0 >
/// v = (x, r_j), the part of x in the plane W = <r_i, r_j> has norm
/// (p_j u^2 - 2c u v + p_i v^2) / D with D = p_i p_j - c^2 < 0, and the part in
/// the negative definite W-perp is <= 0, so p_j u^2 + 2c u|v| + p_i v^2 <= |norm| |D|.
pub fn crossing_vectors(gram: &IMatrix, rays: &[LatVector], norm: &Int) -> Result<Vec<LatVector>> {
    if !norm.is_negative() {
        return Err(Error::Input("crossing vectors need a negative norm".into()));
    }
    let r = gram.nrows();
    let mut out = BTreeSet::new();
    if r < 2 {
        return Ok(vec![]);
    }
    let gr: Vec<Vec<Int>> = rays.iter().map(|x| gram.mul_vec(x)).collect();
    for i in 0..rays.len() {
        for j in 0..rays.len() {
            if i == j {
                continue;
            }
            let pi = gram.bilinear(&rays[i], &rays[i]);
            let pj = gram.bilinear(&rays[j], &rays[j]);
            let c = crate::arith::dot(&gr[i], &rays[j]);
            let d = &pi * &pj - &c * &c;
            if !d.is_negative() {
                continue;
            }
            let bound = -norm * -d;
            let search = SliceSearch::new(gram, &IMatrix::from_rows(vec![gr[i].clone(), gr[j].clone()], r))?;
            let mut u = Int::one();
            while &pj * &u * &u + Int::from(2) * &c * &u + &pi <= bound {
                let mut v = Int::one();
                loop {
                    let q = &pj * &u * &u + Int::from(2) * &c * &u * &v + &pi * &v * &v;
                    if q > bound {
                        break;
                    }
                    let found = search.collect(&[u.clone(), -&v], norm, SLICE_LIMIT)?;
                    out.extend(found);
                    v += 1;
                }
                u += 1;
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Exhaustive by the pairwise ray bound.
    Complete,
    /// Coefficient box search of the given radius in M coordinates.
    BoundedSearch { bound: i64 },
}

impl Certificate {
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Complete => "complete",
            Certificate::BoundedSearch { .. } => "bounded_search",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Keep (delta, reference) > 0, both signs on the reference hyperplane.
    pub signed: bool,
    pub bound: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallEnumeration {
    /// Classes in M coordinates, sorted.
    #[serde(with = "crate::json::vecs")]
    pub classes: Vec<LatVector>,
    pub certificate: Certificate,
}

/// Ambient divisibility of an M vector.
pub fn ambient_divisibility(m: &Sublattice, x: &[Int]) -> Int {
    let l = m.ambient();
    gcd_all(&l.gram().mul_vec(&m.to_ambient_int(x)))
}

/// Primitive delta in M satisfying `spec` (norm in M, divisibility in the ambient
/// lattice) whose hyperplane meets the interior of the cone.
pub fn enumerate_walls_in_cone(m: &Sublattice, cone: &ConeDescription, spec: &WallSpec, opts: &EnumOptions) -> Result<WallEnumeration> {
    if spec.allowed.is_empty() {
        return Err(Error::EmptySpec);
    }
    let g = m.gram();
    cone.validate(g)?;
    let rays = cone.normalized();
    let accept = |x: &[Int]| -> bool {
        if !is_primitive_vec(x) || !crosses_interior(g, x, &rays) {
            return false;
        }
        spec.matches(&g.bilinear(x, x), &ambient_divisibility(m, x))
    };
    let mut found: BTreeSet<LatVector> = BTreeSet::new();
    let certificate = match opts.bound {
        Some(b) => {
            let norms: BTreeSet<Int> = spec.norms().into_iter().map(Int::from).collect();
            for v in box_vectors(m.rank(), b) {
                let x = ivec(&v);
                if norms.contains(&g.bilinear(&x, &x)) && accept(&x) {
                    found.insert(x);
                }
            }
            Certificate::BoundedSearch { bound: b }
        }
        None => {
            for n in spec.norms() {
                for x in crossing_vectors(g, &rays, &Int::from(n))? {
                    if accept(&x) {
                        found.insert(x);
                    }
                }
            }
            Certificate::Complete
        }
    };
    let classes = orient(g, found, cone, opts.signed);
    for c in &classes {
        debug_assert!(meets_cone(m, &m.to_ambient_int(c), cone, true).unwrap_or(false));
    }
    Ok(WallEnumeration { classes, certificate })
}

fn orient(g: &IMatrix, found: BTreeSet<LatVector>, cone: &ConeDescription, signed: bool) -> Vec<LatVector> {
    let mut out = BTreeSet::new();
    let reference = cone.reference.clone().unwrap_or_else(|| cone.normalized()[0].clone());
    for x in found {
        if signed {
            let s = g.bilinear(&x, &reference);
            if !s.is_negative() {
                out.insert(x);
            }
        } else {
            out.insert(canonical_sign(&x));
        }
    }
    out.into_iter().collect()
}

/// A rational isotropic vector pair spanning M when M has rank 2 and
/// discriminant -det a perfect square; both primitive and in one component.
pub fn isotropic_rays_rank2(gram: &IMatrix) -> Option<(LatVector, LatVector)> {
    if gram.nrows() != 2 {
        return None;
    }
    let a = gram.get(0, 0);
    let b = gram.get(0, 1);
    let c = gram.get(1, 1);
    // (a x^2 + 2 b x y + c y^2) = 0
    let disc = b * b - a * c;
    if !disc.is_positive() || !crate::arith::is_square(&disc) {
        return None;
    }
    let s = crate::arith::isqrt(&disc);
    let (v1, v2) = if a.is_zero() {
        // y = 0 is isotropic; the other root of 2 b x + c y = 0
        (ivec(&[1, 0]), vec![-c.clone(), Int::from(2) * b])
    } else {
        // x / y = (-b +- s) / a
        (vec![-b + &s, a.clone()], vec![-b - &s, a.clone()])
    };
    let mut v1 = crate::arith::primitive(&v1);
    let mut v2 = crate::arith::primitive(&v2);
    // put both in the component where they pair positively
    if gram.bilinear(&v1, &v2).is_negative() {
        v2 = v2.iter().map(|x| -x).collect();
    }
    // choose the component containing the first positive basis direction, canonical-sign v1
    if crate::arith::lead_sign(&v1) < 0 {
        v1 = v1.iter().map(|x| -x).collect();
        v2 = v2.iter().map(|x| -x).collect();
    }
    let mut pair = [v1, v2];
    pair.sort();
    let [a, b] = pair;
    Some((a, b))
}

pub fn to_i64_rows(v: &[LatVector]) -> Vec<Vec<i64>> {
    v.iter().map(|x| x.iter().map(|y| y.to_i64().unwrap_or(i64::MAX)).collect()).collect()
}

pub fn norm_rat(l: &Lattice, v: &[Int]) -> crate::arith::Rat {
    let q: Vec<_> = v.iter().map(rat_of).collect();
    l.inner_q(&q, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, neg_vec};
    use proptest::prelude::*;

    fn m_ex_comp() -> Sublattice {
        let l = Lattice::l2();
        let mut h = vec![0i64; 23];
        h[0] = 1;
        h[1] = 1;
        let mut e = vec![0i64; 23];
        e[22] = 1;
        Sublattice::from_i64(&l, &[h, e]).unwrap()
    }

    #[test]
    fn spec_parsing() {
        let s = WallSpec::parse("-2,-10:div2").unwrap();
        assert_eq!(s, WallSpec { user_supplied: true, ..WallSpec::n2() });
        assert_eq!(s.to_string(), "-10:div2,-2");
        assert_eq!(WallSpec::parse(&s.to_string()).unwrap(), s);
        assert!(WallSpec::parse("-3").is_err());
        assert!(WallSpec::parse("4").is_err());
        assert!(WallSpec::parse("-2:mod2").unwrap_err().is_parse());
        assert_eq!(WallSpec::parse("").unwrap_err(), Error::EmptySpec);
    }

    #[test]
    fn wall_divisor_examples() {
        let l = Lattice::l2();
        let mut e = vec![int(0); 23];
        e[22] = int(1);
        assert!(is_wall_divisor_n2(&l, &e).unwrap());
        // 2h + 3e with h = b0 + b1
        let mut d = vec![int(0); 23];
        d[0] = int(2);
        d[1] = int(2);
        d[22] = int(3);
        assert_eq!(l.norm(&d).unwrap(), int(-10));
        assert!(is_wall_divisor_n2(&l, &d).unwrap());
        // norm -10 with divisibility 1: b0 - 5 b1
        let mut f = vec![int(0); 23];
        f[0] = int(1);
        f[1] = int(-5);
        assert!(!is_wall_divisor_n2(&l, &f).unwrap());
        let two_e: Vec<Int> = e.iter().map(|x| x * 2).collect();
        assert_eq!(is_wall_divisor_n2(&l, &two_e).unwrap_err(), Error::VectorNotPrimitive);
    }

    #[test]
    fn lnm_trivial_cases() {
        let m = m_ex_comp();
        let mut e = vec![int(0); 23];
        e[22] = int(1);
        assert!(!in_lnm(&m, &e).unwrap());
        assert!(!in_lnm_by_signature(&m, &e).unwrap());
        let mut k = vec![int(0); 23];
        k[0] = int(1);
        k[1] = int(-1);
        assert!(!in_lnm(&m, &k).unwrap());
        assert!(!in_lnm_by_signature(&m, &k).unwrap());
        let mut x = vec![int(0); 23];
        x[0] = int(1);
        x[1] = int(-1);
        x[22] = int(1);
        assert_eq!(in_lnm(&m, &x).unwrap(), in_lnm_by_signature(&m, &x).unwrap());
        assert!(!in_delta_m(&m, &e, &WallSpec::n2()).unwrap());
    }

    #[test]
    fn lnm_rank_one() {
        // the projection to a positive line is never negative
        let l = Lattice::l2();
        let m = Sublattice::from_i64(&l, &[ivec_i64(&[(0, 1), (1, 1)])]).unwrap();
        let mut x = vec![int(0); 23];
        x[0] = int(1);
        x[22] = int(1);
        assert!(!in_lnm(&m, &x).unwrap());
        assert!(!in_lnm_by_signature(&m, &x).unwrap());
    }

    fn ivec_i64(entries: &[(usize, i64)]) -> Vec<i64> {
        let mut v = vec![0; 23];
        for &(i, c) in entries {
            v[i] = c;
        }
        v
    }

    #[test]
    fn ex_comp_walls_in_full_cone() {
        let m = m_ex_comp();
        let (u, v) = isotropic_rays_rank2(m.gram()).unwrap();
        let cone = ConeDescription::from_rays(vec![u, v]);
        let w = enumerate_walls_in_cone(&m, &cone, &WallSpec::n2(), &EnumOptions::default()).unwrap();
        let want = vec![ivec(&[0, 1]), ivec(&[2, -3]), ivec(&[2, 3])];
        assert_eq!(w.classes, want);
        assert_eq!(w.certificate, Certificate::Complete);
        // every class meets the open cone, by both tests
        for c in &w.classes {
            let a = m.to_ambient_int(c);
            assert!(meets_cone(&m, &a, &cone, true).unwrap());
            assert!(meets_cone_lp(&m, &a, &cone, true).unwrap());
        }
        // norm -4 is rejected by the n = 2 spec
        let four = WallSpec::new(vec![WallClass { norm: -4, div: None }], true).unwrap();
        let mut x = vec![int(0); 23];
        x[0] = int(1);
        x[1] = int(-2);
        assert!(!is_wall(m.ambient(), &x, &WallSpec::n2()).unwrap());
        assert!(is_wall(m.ambient(), &x, &four).unwrap());
    }

    #[test]
    fn strict_separation_misses_cone() {
        let m = m_ex_comp();
        let cone = ConeDescription::from_rays(vec![ivec(&[1, 0]), ivec(&[1, 1])]);
        // (h, .) is positive on both rays
        let mut h = vec![int(0); 23];
        h[0] = int(1);
        h[1] = int(1);
        assert!(!meets_cone(&m, &h, &cone, true).unwrap());
        assert!(!meets_cone(&m, &h, &cone, false).unwrap());
        // e vanishes on the ray h: closed yes, open no
        let mut e = vec![int(0); 23];
        e[22] = int(1);
        assert!(!meets_cone(&m, &e, &cone, true).unwrap());
        assert!(meets_cone(&m, &e, &cone, false).unwrap());
        assert!(meets_cone_lp(&m, &e, &cone, false).unwrap());
        assert!(ConeDescription::from_rays(vec![]).validate(m.gram()).is_err());
        let bad = ConeDescription::from_rays(vec![ivec(&[1, 0]), ivec(&[-1, 0])]);
        assert!(bad.validate(m.gram()).is_err());
    }

    #[test]
    fn bounded_mode_agrees_and_is_labelled() {
        let m = m_ex_comp();
        let (u, v) = isotropic_rays_rank2(m.gram()).unwrap();
        let cone = ConeDescription::from_rays(vec![u, v]);
        let full = enumerate_walls_in_cone(&m, &cone, &WallSpec::n2(), &EnumOptions::default()).unwrap();
        let boxed = enumerate_walls_in_cone(&m, &cone, &WallSpec::n2(), &EnumOptions { signed: false, bound: Some(10) }).unwrap();
        assert_eq!(full.classes, boxed.classes);
        assert_eq!(boxed.certificate.label(), "bounded_search");
    }

    #[test]
    fn signed_mode_keeps_both_signs_on_reference_hyperplane() {
        let m = m_ex_comp();
        let (u, v) = isotropic_rays_rank2(m.gram()).unwrap();
        let cone = ConeDescription::from_rays(vec![u, v]).with_reference(ivec(&[1, 0]));
        let w = enumerate_walls_in_cone(&m, &cone, &WallSpec::n2(), &EnumOptions { signed: true, bound: None }).unwrap();
        // e is orthogonal to h; 2h +- 3e pair positively with h
        assert_eq!(w.classes, vec![ivec(&[0, -1]), ivec(&[0, 1]), ivec(&[2, -3]), ivec(&[2, 3])]);
    }

    #[test]
    fn isotropic_rays_of_u2() {
        let g = IMatrix::from_i64(&[vec![0, 2], vec![2, 0]]);
        let (a, b) = isotropic_rays_rank2(&g).unwrap();
        assert_eq!((a, b), (ivec(&[0, 1]), ivec(&[1, 0])));
        let anis = IMatrix::from_i64(&[vec![2, 0], vec![0, -6]]);
        assert!(isotropic_rays_rank2(&anis).is_none());
    }

    proptest! {
        #[test]
        fn crossing_matches_box(a in 1i64..4, b in -3i64..4, c in -4i64..0, r1 in 0i64..3, r2 in 0i64..3, n in 1i64..8) {
            // rank 2 hyperbolic form with a two-ray cone
            let g = IMatrix::from_i64(&[vec![2 * a, b], vec![b, 2 * c]]);
            prop_assume!(4 * a * c - b * b < 0);
            let rays = vec![ivec(&[1, 0]), ivec(&[1 + r1, r2 - 1])];
            let cone = ConeDescription::from_rays(rays.clone());
            prop_assume!(cone.validate(&g).is_ok());
            let norm = Int::from(-2 * n);
            let got = crossing_vectors(&g, &rays, &norm).unwrap();
            let want: Vec<LatVector> = box_vectors(2, 60).map(|v| ivec(&v))
                .filter(|x| g.bilinear(x, x) == norm && crosses_interior(&g, x, &rays))
                .collect();
            prop_assert_eq!(got.clone(), want);
            let negs: BTreeSet<LatVector> = got.iter().map(|x| neg_vec(x)).collect();
            prop_assert_eq!(negs, got.into_iter().collect::<BTreeSet<_>>());
        }
    }
}
