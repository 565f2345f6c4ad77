//! Smith normal form with unimodular transforms, and the integer linear
//! algebra built on it (saturated kernels, saturation, Z-solving).

use crate::arith::Int;
use crate::matrix::IMatrix;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * a * v = diag(d)` with `u`, `v` unimodular. `u_inv`, `v_inv` are
/// tracked alongside so callers never invert.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Vec<Int>,
    pub rank: usize,
    pub u: IMatrix,
    pub u_inv: IMatrix,
    pub v: IMatrix,
    pub v_inv: IMatrix,
}

struct Work {
    a: IMatrix,
    u: IMatrix,
    u_inv: IMatrix,
    v: IMatrix,
    v_inv: IMatrix,
}

impl Work {
    fn row_add(&mut self, a: usize, b: usize, k: &Int) {
        self.a.add_row_multiple(a, b, k);
        self.u.add_row_multiple(a, b, k);
        self.u_inv.add_col_multiple(b, a, &-k);
    }
    fn row_swap(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }
    fn row_neg(&mut self, a: usize) {
        self.a.negate_row(a);
        self.u.negate_row(a);
        self.u_inv.negate_col(a);
    }
    fn col_add(&mut self, a: usize, b: usize, k: &Int) {
        self.a.add_col_multiple(a, b, k);
        self.v.add_col_multiple(a, b, k);
        self.v_inv.add_row_multiple(b, a, &-k);
    }
    fn col_swap(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
}

fn round_div(a: &Int, b: &Int) -> Int {
    // nearest-integer quotient keeps entries small
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    let num: Int = a * 2 + &b;
    let den: Int = b * 2;
    num.div_floor(&den)
}

pub fn smith(a: &IMatrix) -> Snf {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = Work {
        a: a.clone(),
        u: IMatrix::identity(m),
        u_inv: IMatrix::identity(m),
        v: IMatrix::identity(n),
        v_inv: IMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = w.a.get(i, j);
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < w.a.get(bi, bj).abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            let p = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if !w.a.get(i, t).is_zero() {
                    let q = round_div(w.a.get(i, t), &p);
                    w.row_add(i, t, &-q);
                    if !w.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !w.a.get(t, j).is_zero() {
                    let q = round_div(w.a.get(t, j), &p);
                    w.col_add(j, t, &-q);
                    if !w.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.a.get(i, j).is_multiple_of(&p) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => w.row_add(t, i, &Int::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_zero() {
            break;
        }
        if w.a.get(t, t).is_negative() {
            w.row_neg(t);
        }
        rank = t + 1;
    }
    let d = (0..m.min(n)).map(|i| w.a.get(i, i).clone()).collect();
    Snf { d, rank, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

/// Nonzero elementary divisors, ascending in divisibility order.
pub fn elementary_divisors(a: &IMatrix) -> Vec<Int> {
    let s = smith(a);
    s.d[..s.rank].to_vec()
}

/// Rows form a Z-basis of {x : a x = 0}; the basis is saturated.
pub fn kernel(a: &IMatrix) -> IMatrix {
    let s = smith(a);
    let n = a.ncols();
    let cols: Vec<Vec<Int>> = (s.rank..n).map(|j| s.v.col(j)).collect();
    IMatrix::from_rows(cols, n)
}

/// Rows form a Z-basis of {y : y a = 0}.
pub fn left_kernel(a: &IMatrix) -> IMatrix {
    let s = smith(a);
    let m = a.nrows();
    IMatrix::from_rows((s.rank..m).map(|i| s.u.row(i).to_vec()).collect(), m)
}

/// Z-basis of (row span of b) ⊗ Q ∩ Z^n.
pub fn saturate_rows(b: &IMatrix) -> IMatrix {
    let s = smith(b);
    IMatrix::from_rows((0..s.rank).map(|i| s.v_inv.row(i).to_vec()).collect(), b.ncols())
}

/// True iff the rows of b are independent and span a primitive sublattice.
pub fn rows_primitive(b: &IMatrix) -> bool {
    let s = smith(b);
    s.rank == b.nrows() && s.d[..s.rank].iter().all(|x| x.is_one())
}

/// All integer solutions of a x = rhs, as (particular, kernel rows).
pub fn solve_int(a: &IMatrix, rhs: &[Int]) -> Option<(Vec<Int>, IMatrix)> {
    let s = smith(a);
    let n = a.ncols();
    let ub = s.u.mul_vec(rhs);
    let mut y = vec![Int::zero(); n];
    for i in 0..ub.len() {
        if i < s.rank {
            let (q, r) = ub[i].div_rem(&s.d[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    let x = s.v.mul_vec(&y);
    let ker = IMatrix::from_rows((s.rank..n).map(|j| s.v.col(j)).collect(), n);
    Some((x, ker))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;
    use proptest::prelude::*;

    fn check(a: &IMatrix) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "off-diagonal {:?}", d);
                }
            }
        }
        for i in 1..s.rank {
            assert!(s.d[i].is_multiple_of(&s.d[i - 1]));
        }
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
    }

    #[test]
    fn textbook_example() {
        let a = IMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&a);
        assert_eq!(elementary_divisors(&a), ivec(&[2, 6, 12]));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = IMatrix::from_i64(&[vec![2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.nrows(), 2);
        assert!(rows_primitive(&k));
        for r in k.to_rows() {
            assert!(a.mul_vec(&r).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn saturation_of_index_two() {
        let b = IMatrix::from_i64(&[vec![2, 0]]);
        assert!(!rows_primitive(&b));
        let s = saturate_rows(&b);
        assert_eq!(s.row(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), ivec(&[1, 0]));
    }

    #[test]
    fn solve_over_z() {
        let a = IMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        assert!(solve_int(&a, &ivec(&[1, 0])).is_none());
        let (x, k) = solve_int(&a, &ivec(&[4, 9])).unwrap();
        assert_eq!(x, ivec(&[2, 3]));
        assert_eq!(k.nrows(), 0);
    }

    proptest! {
        #[test]
        fn snf_transforms_are_consistent(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let a = IMatrix::from_i64(&data);
            check(&a);
            prop_assert_eq!(smith(&a).rank, a.rank());
        }
    }
}
