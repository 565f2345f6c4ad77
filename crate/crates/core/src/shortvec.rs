//! Fincke-Pohst enumeration for positive definite forms, in exact arithmetic.

use crate::arith::{floor_rat, rat_of, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::IMatrix;
use num_traits::{One, Signed, Zero};
use std::ops::ControlFlow;

/// Q = R^T D R with R unit upper triangular: Q(y) = sum_i d_i (y_i + sum_{j>i} r_ij y_j)^2.
struct Ldl {
    d: Vec<Rat>,
    r: Vec<Vec<Rat>>,
}

fn ldl(q: &IMatrix) -> Result<Ldl> {
    let k = q.nrows();
    let mut a: Vec<Vec<Rat>> = (0..k).map(|i| q.row(i).iter().map(rat_of).collect()).collect();
    let mut d = vec![Rat::zero(); k];
    let mut r = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        if !a[i][i].is_positive() {
            return Err(Error::Input("form is not positive definite".into()));
        }
        d[i] = a[i][i].clone();
        for j in i + 1..k {
            r[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..k {
            for l in i + 1..k {
                let x = &a[j][l] - &a[i][j] * &r[i][l];
                a[j][l] = x;
            }
        }
    }
    Ok(Ldl { d, r })
}

/// All integer x with (x - c)^T Q (x - c) <= t. Fails once more than `limit` are found.
pub fn short_vectors(q: &IMatrix, center: &[Rat], t: &Rat, limit: usize) -> Result<Vec<Vec<Int>>> {
    let mut out = Vec::new();
    let mut overflow = false;
    visit_short_vectors(q, center, t, |x, _| {
        out.push(x.to_vec());
        if out.len() > limit {
            overflow = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::Limit(format!("more than {limit} short vectors")));
    }
    out.sort();
    Ok(out)
}

/// Calls `f(x, value)` for every integer x with value = (x - c)^T Q (x - c) <= t,
/// stopping early on `Break`. The form is LLL-reduced first; vectors are
/// reported in the original coordinates. Returns true if stopped early.
pub fn visit_short_vectors<F>(q: &IMatrix, center: &[Rat], t: &Rat, mut f: F) -> Result<bool>
where
    F: FnMut(&[Int], &Rat) -> ControlFlow<()>,
{
    let k = q.nrows();
    if center.len() != k {
        return Err(Error::Dimension("center length differs from form rank".into()));
    }
    if t.is_negative() {
        return Ok(false);
    }
    if k == 0 {
        return Ok(f(&[], &Rat::zero()).is_break());
    }
    // x = T^T x', so Q' = T Q T^T and c' = T^{-T} c
    let tr = lll(q)?;
    let qr = tr.mul(q).mul(&tr.transpose());
    let tinv_t = tr.transpose().to_rat().inverse().expect("unimodular");
    let cr = tinv_t.mul_vec(center);
    let fct = ldl(&qr)?;
    let mut xr = vec![Int::zero(); k];
    let ttr = tr.transpose();
    let flow = enumerate(&fct, &cr, t, k - 1, &Rat::zero(), &mut xr, &mut |xp, val| f(&ttr.mul_vec(xp), val));
    Ok(flow.is_break())
}

fn enumerate<F>(f: &Ldl, c: &[Rat], t: &Rat, i: usize, partial: &Rat, x: &mut Vec<Int>, cb: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Int], &Rat) -> ControlFlow<()>,
{
    let k = c.len();
    let mut z = c[i].clone();
    for j in i + 1..k {
        z -= &f.r[i][j] * (rat_of(&x[j]) - &c[j]);
    }
    let rem = t - partial;
    let fits = |v: &Int| {
        let y = rat_of(v) - &z;
        &f.d[i] * &y * &y <= rem
    };
    // walk outward from floor(z) in both directions
    let start = floor_rat(&z);
    let mut cands = Vec::new();
    let mut v = start.clone();
    while fits(&v) {
        cands.push(v.clone());
        v -= Int::one();
    }
    let mut v = &start + Int::one();
    while fits(&v) {
        cands.push(v.clone());
        v += Int::one();
    }
    cands.sort();
    for v in cands {
        x[i] = v.clone();
        let y = rat_of(&v) - &z;
        let p = partial + &f.d[i] * &y * &y;
        if i == 0 {
            cb(x, &p)?;
        } else {
            enumerate(f, c, t, i - 1, &p, x, cb)?;
        }
    }
    x[i] = Int::zero();
    ControlFlow::Continue(())
}

/// Integer x with (x - c)^T Q (x - c) = t exactly.
pub fn vectors_at(q: &IMatrix, center: &[Rat], t: &Rat, limit: usize) -> Result<Vec<Vec<Int>>> {
    let mut out = Vec::new();
    let mut overflow = false;
    visit_short_vectors(q, center, t, |x, v| {
        if v == t {
            out.push(x.to_vec());
            if out.len() > limit {
                overflow = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::Limit(format!("more than {limit} vectors")));
    }
    out.sort();
    Ok(out)
}

/// LLL reduction (delta = 3/4) of a positive definite Gram matrix.
/// Returns a unimodular T whose rows are the reduced basis in old coordinates.
pub fn lll(q: &IMatrix) -> Result<IMatrix> {
    let n = q.nrows();
    let mut t = IMatrix::identity(n);
    if n <= 1 {
        return Ok(t);
    }
    let mut g = q.clone();
    let three_quarters = Rat::new(Int::from(3), Int::from(4));
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::Limit("LLL did not converge".into()));
        }
        let (mu, b) = gram_schmidt(&g)?;
        // size-reduce row k
        let mut mu_k = mu[k].clone();
        for j in (0..k).rev() {
            let r = round_rat(&mu_k[j]);
            if r.is_zero() {
                continue;
            }
            t.add_row_multiple(k, j, &-&r);
            sub_basis(&mut g, k, j, &r);
            for i in 0..j {
                mu_k[i] = &mu_k[i] - rat_of(&r) * &mu[j][i];
            }
            mu_k[j] = &mu_k[j] - rat_of(&r);
        }
        // Lovasz condition
        let bk = &b[k] + &mu_k[k - 1] * &mu_k[k - 1] * &b[k - 1];
        if bk >= &three_quarters * &b[k - 1] {
            k += 1;
        } else {
            t.swap_rows(k, k - 1);
            g.swap_rows(k, k - 1);
            g.swap_cols(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    Ok(t)
}

/// b_k -= r b_j on the Gram matrix.
fn sub_basis(g: &mut IMatrix, k: usize, j: usize, r: &Int) {
    g.add_row_multiple(k, j, &-r);
    g.add_col_multiple(k, j, &-r);
}

fn round_rat(x: &Rat) -> Int {
    floor_rat(&(x + Rat::new(Int::one(), Int::from(2))))
}

/// mu (unit lower triangular) and squared Gram-Schmidt lengths.
fn gram_schmidt(g: &IMatrix) -> Result<(Vec<Vec<Rat>>, Vec<Rat>)> {
    let n = g.nrows();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut b = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = rat_of(g.get(i, j));
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = rat_of(g.get(i, i));
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        if !s.is_positive() {
            return Err(Error::Input("form is not positive definite".into()));
        }
        b[i] = s;
        mu[i][i] = Rat::one();
    }
    Ok((mu, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{box_vectors, rat};
    use crate::lattice::Lattice;
    use proptest::prelude::*;

    #[test]
    fn e8_has_240_roots() {
        let e8 = Lattice::e8();
        let zero = vec![Rat::zero(); 8];
        let v = vectors_at(e8.gram(), &zero, &rat(2, 1), 10_000).unwrap();
        assert_eq!(v.len(), 240);
    }

    #[test]
    fn shifted_center() {
        let q = IMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        let c = vec![rat(1, 2), rat(1, 2)];
        // (x - c)^2 * 2 summed <= 1: the four corners of the unit square
        let v = short_vectors(&q, &c, &rat(1, 1), 100).unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn lll_unskews_e8() {
        // E8 in a badly sheared basis
        let e8 = Lattice::e8();
        let mut s = IMatrix::identity(8);
        for i in 1..8 {
            s.add_row_multiple(i, i - 1, &Int::from(7));
        }
        let g = s.mul(e8.gram()).mul(&s.transpose());
        let t = lll(&g).unwrap();
        assert!(t.det().abs().is_one());
        let red = t.mul(&g).mul(&t.transpose());
        for i in 0..8 {
            assert!(red.get(i, i) <= &Int::from(4), "{:?}", red);
        }
        let zero = vec![Rat::zero(); 8];
        assert_eq!(vectors_at(&g, &zero, &rat(2, 1), 10_000).unwrap().len(), 240);
    }

    proptest! {
        #[test]
        fn agrees_with_box_scan(a in 1i64..5, b in -2i64..3, d in 1i64..5, cx in -3i64..4, cy in -3i64..4, t in 0i64..20) {
            prop_assume!(a * d - b * b > 0);
            let q = IMatrix::from_i64(&[vec![2 * a, b], vec![b, 2 * d]]);
            let c = vec![rat(cx, 3), rat(cy, 2)];
            let tt = rat(t, 1);
            let mut got = short_vectors(&q, &c, &tt, 100_000).unwrap();
            got.sort();
            let qq = q.to_rat();
            let mut want: Vec<Vec<Int>> = box_vectors(2, 12)
                .map(|v| v.into_iter().map(Int::from).collect::<Vec<_>>())
                .filter(|x: &Vec<Int>| {
                    let y: Vec<Rat> = x.iter().zip(&c).map(|(p, q)| rat_of(p) - q).collect();
                    qq.bilinear(&y, &y) <= tt
                })
                .collect();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}
