//! Vectors of prescribed norm on an affine slice {x : A x = b} of a lattice,
//! when the slice direction ker(A) is negative definite.

use crate::arith::{rat_of, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::signature_of;
use crate::matrix::{IMatrix, QMatrix};
use crate::shortvec::visit_short_vectors;
use crate::snf::{smith, Snf};
use num_integer::Integer;
use num_traits::Zero;
use std::ops::ControlFlow;

pub struct SliceSearch {
    gram: IMatrix,
    snf: Snf,
    /// Z-basis of ker(A) as rows.
    kernel: IMatrix,
    /// -K G K^T, positive definite.
    q: IMatrix,
    q_inv: QMatrix,
    kg: IMatrix,
}

impl SliceSearch {
    /// `functionals` has one row per linear condition on Z^r.
    pub fn new(gram: &IMatrix, functionals: &IMatrix) -> Result<Self> {
        let r = gram.nrows();
        if functionals.ncols() != r {
            return Err(Error::Dimension("functional length differs from rank".into()));
        }
        let snf = smith(functionals);
        let kernel = IMatrix::from_rows((snf.rank..r).map(|j| snf.v.col(j)).collect(), r);
        let kg = kernel.mul(gram);
        let q = kg.mul(&kernel.transpose()).neg();
        if q.nrows() > 0 {
            let (p, _, z) = signature_of(&q.to_rat());
            if p != q.nrows() || z != 0 {
                return Err(Error::Input("slice direction is not negative definite".into()));
            }
        }
        let q_inv = if q.nrows() == 0 { QMatrix::zeros(0, 0) } else { q.to_rat().inverse().expect("definite") };
        Ok(SliceSearch { gram: gram.clone(), snf, kernel, q, q_inv, kg })
    }

    /// Some integer x with A x = b.
    pub fn particular(&self, rhs: &[Int]) -> Option<Vec<Int>> {
        particular_from(&self.snf, self.gram.nrows(), rhs)
    }

    /// Visit every x with A x = b and x^T G x = norm; returns true if stopped early.
    pub fn visit<F>(&self, rhs: &[Int], norm: &Int, mut f: F) -> Result<bool>
    where
        F: FnMut(&[Int]) -> ControlFlow<()>,
    {
        let Some(x0) = self.particular(rhs) else { return Ok(false) };
        let n0 = self.gram.bilinear(&x0, &x0);
        if self.kernel.nrows() == 0 {
            if &n0 == norm {
                return Ok(f(&x0).is_break());
            }
            return Ok(false);
        }
        // norm(x0 + K^T z) = n0 + cQc - (z - c)^T Q (z - c), c = Q^{-1} K G x0
        let h: Vec<Rat> = self.kg.mul_vec(&x0).iter().map(rat_of).collect();
        let c = self.q_inv.mul_vec(&h);
        let cqc: Rat = h.iter().zip(&c).map(|(a, b)| a * b).sum();
        let t = rat_of(&n0) + cqc - rat_of(norm);
        let kt = self.kernel.transpose();
        visit_short_vectors(&self.q, &c, &t, |z, v| {
            if *v != t {
                return ControlFlow::Continue(());
            }
            let x: Vec<Int> = kt.mul_vec(z).iter().zip(&x0).map(|(a, b)| a + b).collect();
            f(&x)
        })
    }

    pub fn collect(&self, rhs: &[Int], norm: &Int, limit: usize) -> Result<Vec<Vec<Int>>> {
        let mut out = Vec::new();
        let stopped = self.visit(rhs, norm, |x| {
            out.push(x.to_vec());
            if out.len() > limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if stopped {
            return Err(Error::Limit(format!("more than {limit} vectors on a slice")));
        }
        Ok(out)
    }
}

fn particular_from(s: &Snf, n: usize, rhs: &[Int]) -> Option<Vec<Int>> {
    let ub = s.u.mul_vec(rhs);
    let mut y = vec![Int::zero(); n];
    for (i, v) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = v.div_rem(&s.d[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{box_vectors, ivec};
    use crate::lattice::Lattice;
    use proptest::prelude::*;

    #[test]
    fn roots_orthogonal_to_h() {
        // <2> + 3<-2>, vectors x with (x, c) = 0 and norm -2
        let g = IMatrix::from_i64(&[vec![2, 0, 0, 0], vec![0, -2, 0, 0], vec![0, 0, -2, 0], vec![0, 0, 0, -2]]);
        let a = IMatrix::from_i64(&[vec![2, 0, 0, 0]]);
        let s = SliceSearch::new(&g, &a).unwrap();
        assert_eq!(s.collect(&ivec(&[0]), &Int::from(-2), 100).unwrap().len(), 6);
        // (x, c) = 2: c + two units among d, d', e
        assert_eq!(s.collect(&ivec(&[2]), &Int::from(-2), 100).unwrap().len(), 12);
    }

    #[test]
    fn indefinite_kernel_is_rejected() {
        let l = Lattice::direct_sum(&[&Lattice::u(), &Lattice::u()]);
        assert!(SliceSearch::new(l.gram(), &IMatrix::from_i64(&[vec![1, 1, 0, 0]])).is_err());
    }

    proptest! {
        #[test]
        fn matches_box_scan(k in 1i64..4, a in 1i64..4, b in 1i64..4, u in -6i64..7, norm in -30i64..0) {
            // <2k> + <-2a> + <-2b>, condition (x, h) = u with h = (1, 0, 0)
            let g = IMatrix::from_i64(&[vec![2 * k, 0, 1], vec![0, -2 * a, 0], vec![1, 0, -2 * b]]);
            prop_assume!(g.det() != Int::zero());
            let h = ivec(&[1, 0, 0]);
            prop_assume!(g.bilinear(&h, &h) > Int::zero());
            let func = IMatrix::from_rows(vec![g.mul_vec(&h)], 3);
            let Ok(s) = SliceSearch::new(&g, &func) else { return Ok(()); };
            let n = Int::from(2 * norm);
            let mut got = s.collect(&ivec(&[u]), &n, 100_000).unwrap();
            got.sort();
            let want: Vec<Vec<Int>> = box_vectors(3, 25).map(|v| ivec(&v))
                .filter(|x| func.mul_vec(x)[0] == Int::from(u) && g.bilinear(x, x) == n)
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
