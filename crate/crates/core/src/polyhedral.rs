//! Exact polyhedral cones: double description (Motzkin) and a dense
//! Bland-rule simplex for rational feasibility.

use crate::arith::{dot, primitive, primitive_of_rat, qvec, rat_of, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::{IMatrix, QMatrix};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

fn rank_of(rows: &[&Vec<Int>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    IMatrix::from_rows(rows.iter().map(|r| (*r).clone()).collect(), dim).rank()
}

struct Ray {
    v: Vec<Int>,
    tight: BTreeSet<usize>,
}

/// Extreme rays of the pointed cone {x : a . x >= 0 for every row a}.
/// Rays are primitive and sorted; an empty list means the cone is {0}.
pub fn extreme_rays(constraints: &[Vec<Int>], dim: usize) -> Result<Vec<Vec<Int>>> {
    let cons: Vec<Vec<Int>> = constraints.iter().filter(|a| a.iter().any(|x| !x.is_zero())).map(|a| primitive(a)).collect();
    for a in &cons {
        if a.len() != dim {
            return Err(Error::Dimension("constraint length differs from dimension".into()));
        }
    }
    if dim == 0 {
        return Ok(vec![]);
    }
    // greedy independent starting set
    let mut init: Vec<usize> = Vec::new();
    for (i, a) in cons.iter().enumerate() {
        let mut rows: Vec<&Vec<Int>> = init.iter().map(|&j| &cons[j]).collect();
        rows.push(a);
        if rank_of(&rows, dim) == rows.len() {
            init.push(i);
            if init.len() == dim {
                break;
            }
        }
    }
    if init.len() < dim {
        return Err(Error::NotPointed);
    }
    let a0 = IMatrix::from_rows(init.iter().map(|&i| cons[i].clone()).collect(), dim).to_rat();
    let inv = a0.inverse().expect("independent rows");
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let v = primitive_of_rat(&inv.col(j));
            let tight = init.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &i)| i).collect();
            Ray { v, tight }
        })
        .collect();
    let mut processed: Vec<usize> = init.clone();
    for (ci, a) in cons.iter().enumerate() {
        if init.contains(&ci) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, s) in rays.iter().zip(&vals) {
            if s.is_positive() {
                next.push(Ray { v: r.v.clone(), tight: r.tight.clone() });
            } else if s.is_zero() {
                let mut t = r.tight.clone();
                t.insert(ci);
                next.push(Ray { v: r.v.clone(), tight: t });
            }
        }
        for (p, sp) in rays.iter().zip(&vals) {
            if !sp.is_positive() {
                continue;
            }
            for (q, sq) in rays.iter().zip(&vals) {
                if !sq.is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = p.tight.intersection(&q.tight).copied().collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let rows: Vec<&Vec<Int>> = common.iter().map(|&i| &cons[i]).collect();
                if rank_of(&rows, dim) != dim - 2 {
                    continue;
                }
                let w: Vec<Int> = q.v.iter().zip(&p.v).map(|(x, y)| sp * x - sq * y).collect();
                let mut t = common;
                t.insert(ci);
                next.push(Ray { v: primitive(&w), tight: t });
            }
        }
        processed.push(ci);
        rays = next;
        if rays.is_empty() {
            return Ok(vec![]);
        }
    }
    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct LinCon {
    pub coef: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl LinCon {
    pub fn new(coef: Vec<Rat>, rel: Rel, rhs: Rat) -> Self {
        LinCon { coef, rel, rhs }
    }
    pub fn int(coef: &[Int], rel: Rel, rhs: i64) -> Self {
        LinCon { coef: qvec(coef), rel, rhs: Rat::from_integer(Int::from(rhs)) }
    }
}

/// A point of {x free : all constraints}, by phase-one simplex with Bland's rule.
pub fn feasible_point(cons: &[LinCon], nvars: usize) -> Option<Vec<Rat>> {
    let m = cons.len();
    if m == 0 {
        return Some(vec![Rat::zero(); nvars]);
    }
    // columns: x+ (nvars), x- (nvars), one slack per inequality, one artificial per row
    let nslack = cons.iter().filter(|c| c.rel != Rel::Eq).count();
    let ncols = 2 * nvars + nslack + m;
    let mut t = QMatrix::zeros(m, ncols);
    let mut b = vec![Rat::zero(); m];
    let mut basis = vec![0usize; m];
    let mut slack = 2 * nvars;
    for (i, c) in cons.iter().enumerate() {
        let flip = c.rhs.is_negative();
        let sg = if flip { -Rat::one() } else { Rat::one() };
        for j in 0..nvars {
            t.set(i, j, &sg * &c.coef[j]);
            t.set(i, nvars + j, -(&sg * &c.coef[j]));
        }
        b[i] = &sg * &c.rhs;
        if c.rel != Rel::Eq {
            let s = if c.rel == Rel::Le { Rat::one() } else { -Rat::one() };
            t.set(i, slack, &sg * s);
            slack += 1;
        }
        let art = 2 * nvars + nslack + i;
        t.set(i, art, Rat::one());
        basis[i] = art;
    }
    let is_art = |j: usize| j >= 2 * nvars + nslack;
    loop {
        // reduced costs of the phase-one objective sum(artificials)
        let mut entering = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut r = if is_art(j) { Rat::one() } else { Rat::zero() };
            for i in 0..m {
                if is_art(basis[i]) {
                    r -= t.get(i, j);
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t.get(i, j).is_positive() {
                let ratio = &b[i] / t.get(i, j);
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else { break };
        let piv = t.get(p, j).clone();
        for k in 0..ncols {
            let v = t.get(p, k) / &piv;
            t.set(p, k, v);
        }
        b[p] = &b[p] / &piv;
        for i in 0..m {
            if i != p && !t.get(i, j).is_zero() {
                let f = t.get(i, j).clone();
                for k in 0..ncols {
                    let v = t.get(i, k) - &f * t.get(p, k);
                    t.set(i, k, v);
                }
                b[i] = &b[i] - &f * &b[p];
            }
        }
        basis[p] = j;
    }
    let infeasible = (0..m).any(|i| is_art(basis[i]) && !b[i].is_zero());
    if infeasible {
        return None;
    }
    let mut x = vec![Rat::zero(); nvars];
    for i in 0..m {
        let j = basis[i];
        if j < nvars {
            x[j] += &b[i];
        } else if j < 2 * nvars {
            x[j - nvars] -= &b[i];
        }
    }
    debug_assert!(cons.iter().all(|c| {
        let v: Rat = c.coef.iter().zip(&x).map(|(a, y)| a * y).sum();
        match c.rel {
            Rel::Le => v <= c.rhs,
            Rel::Ge => v >= c.rhs,
            Rel::Eq => v == c.rhs,
        }
    }));
    Some(x)
}

/// A point with a_i . x > 0 for every row (strict, homogeneous), if one exists.
pub fn strict_interior_point(rows: &[Vec<Int>], dim: usize) -> Option<Vec<Rat>> {
    let cons: Vec<LinCon> = rows.iter().map(|a| LinCon::int(a, Rel::Ge, 1)).collect();
    feasible_point(&cons, dim)
}

/// Interior point of a cone from its rays: the sum.
pub fn ray_sum(rays: &[Vec<Int>], dim: usize) -> Vec<Int> {
    let mut s = vec![Int::zero(); dim];
    for r in rays {
        for (a, b) in s.iter_mut().zip(r) {
            *a += b;
        }
    }
    s
}

pub fn as_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_of).collect()
}
