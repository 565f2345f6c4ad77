//! Even nondegenerate integral lattices given by Gram matrices.

use crate::arith::{gcd_all, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::{IMatrix, QMatrix};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Integer coordinates in a lattice basis.
pub type LatVector = Vec<Int>;
/// Rational coordinates in a lattice basis (dual and projected vectors).
pub type QVector = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    gram: IMatrix,
    label: Option<String>,
}

const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

impl Lattice {
    pub fn new(gram: IMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for i in 0..gram.nrows() {
            if gram.get(i, i).is_odd() {
                return Err(Error::Odd { index: i, value: gram.get(i, i).to_string() });
            }
        }
        if gram.nrows() > 0 && gram.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn u() -> Self {
        Lattice { gram: IMatrix::from_i64(&[vec![0, 1], vec![1, 0]]), label: Some("U".into()) }
    }

    /// Positive definite E8 (Cartan matrix).
    pub fn e8() -> Self {
        let mut g = IMatrix::zeros(8, 8);
        for i in 0..8 {
            g.set(i, i, Int::from(2));
        }
        for &(a, b) in &E8_EDGES {
            g.set(a, b, Int::from(-1));
            g.set(b, a, Int::from(-1));
        }
        Lattice { gram: g, label: Some("E8".into()) }
    }

    pub fn e8_neg() -> Self {
        Lattice::e8().scaled(&Int::from(-1)).with_label("E8(-1)")
    }

    /// The rank one lattice <k>.
    pub fn diag(k: i64) -> Result<Self> {
        Lattice::new(IMatrix::from_i64(&[vec![k]])).map(|l| l.with_label(format!("<{k}>")))
    }

    /// L(n): the same group with the form multiplied by n.
    pub fn scaled(&self, n: &Int) -> Self {
        Lattice { gram: self.gram.scale(n), label: self.label.as_ref().map(|l| format!("{l}({n})")) }
    }

    pub fn direct_sum(parts: &[&Lattice]) -> Self {
        let grams: Vec<&IMatrix> = parts.iter().map(|l| &l.gram).collect();
        let labels: Vec<String> = parts.iter().map(|l| l.label.clone().unwrap_or_else(|| "?".into())).collect();
        Lattice { gram: IMatrix::block_diag(&grams), label: Some(labels.join(" + ")) }
    }

    pub fn lk3() -> Self {
        let u = Lattice::u();
        let e = Lattice::e8_neg();
        Lattice::direct_sum(&[&u, &u, &u, &e, &e]).with_label("LK3")
    }

    /// L_K3 + <2-2n>.
    pub fn ln(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input(format!("Ln needs n >= 2, got {n}")));
        }
        let last = n.checked_mul(2).and_then(|m| 2i64.checked_sub(m)).ok_or_else(|| Error::Input(format!("Ln({n}) out of range")))?;
        let k = Lattice::lk3();
        let t = Lattice::diag(last)?;
        Ok(Lattice::direct_sum(&[&k, &t]).with_label(format!("Ln({n})")))
    }

    pub fn l2() -> Self {
        Lattice::ln(2).expect("n = 2 is valid").with_label("L2")
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &IMatrix {
        &self.gram
    }

    pub fn det(&self) -> Int {
        if self.rank() == 0 {
            return Int::from(1);
        }
        self.gram.det()
    }

    fn check_len(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!("vector of length {} in lattice of rank {}", v.len(), self.rank())));
        }
        Ok(())
    }

    pub fn inner(&self, v: &[Int], w: &[Int]) -> Result<Int> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(self.gram.bilinear(v, w))
    }

    pub fn norm(&self, v: &[Int]) -> Result<Int> {
        self.inner(v, v)
    }

    /// Pairing of rational vectors.
    pub fn inner_q(&self, v: &[Rat], w: &[Rat]) -> Rat {
        self.gram.to_rat().bilinear(v, w)
    }

    pub fn signature(&self) -> (usize, usize) {
        let (p, n, _) = signature_of(&self.gram.to_rat());
        (p, n)
    }

    /// Positive generator of (v, L).
    pub fn divisibility(&self, v: &[Int]) -> Result<Int> {
        self.check_len(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let gv = self.gram.mul_vec(v);
        Ok(gcd_all(&gv))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == Int::from(1)
    }

    pub fn basis_vector(&self, i: usize) -> LatVector {
        let mut v = vec![Int::zero(); self.rank()];
        v[i] = Int::from(1);
        v
    }
}

/// Diagonalize a symmetric rational form by congruence.
/// Returns basis vectors (rows, in the original coordinates) and the diagonal values;
/// zeros on the diagonal span the radical.
pub fn diagonalize(g: &QMatrix) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = g.nrows();
    let mut a = g.clone();
    let mut w = QMatrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut basis = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let pivot = remaining.iter().copied().find(|&i| !a.get(i, i).is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = remaining.iter().flat_map(|&i| remaining.iter().map(move |&j| (i, j))).find(|&(i, j)| i < j && !a.get(i, j).is_zero());
                let Some((i, j)) = pair else { break };
                // w_i += w_j makes the diagonal entry 2 a_ij
                w.add_row_multiple(i, j, &Rat::from_integer(Int::from(1)));
                a.add_row_multiple(i, j, &Rat::from_integer(Int::from(1)));
                a.add_col_multiple(i, j, &Rat::from_integer(Int::from(1)));
                i
            }
        };
        let piv = a.get(p, p).clone();
        remaining.retain(|&x| x != p);
        for &j in &remaining {
            let c = a.get(j, p) / &piv;
            if c.is_zero() {
                continue;
            }
            w.add_row_multiple(j, p, &-c.clone());
            a.add_row_multiple(j, p, &-c.clone());
            a.add_col_multiple(j, p, &-c);
        }
        basis.push(w.row(p).to_vec());
        diag.push(piv);
    }
    for &i in &remaining {
        basis.push(w.row(i).to_vec());
        diag.push(Rat::zero());
    }
    (basis, diag)
}

/// (positive, negative, zero) inertia of a symmetric rational matrix.
pub fn signature_of(g: &QMatrix) -> (usize, usize, usize) {
    let (_, d) = diagonalize(g);
    let p = d.iter().filter(|x| x.is_positive()).count();
    let m = d.iter().filter(|x| x.is_negative()).count();
    (p, m, d.len() - p - m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;

    #[test]
    fn u_basics() {
        let u = Lattice::u();
        assert_eq!(u.inner(&ivec(&[1, 0]), &ivec(&[0, 1])).unwrap(), Int::from(1));
        assert_eq!(u.norm(&ivec(&[1, 0])).unwrap(), Int::from(0));
        assert_eq!(u.signature(), (1, 1));
        assert_eq!(u.divisibility(&ivec(&[1, 0])).unwrap(), Int::from(1));
    }

    #[test]
    fn e8_is_unimodular_definite() {
        let e = Lattice::e8_neg();
        assert_eq!(e.det(), Int::from(1));
        assert_eq!(e.signature(), (0, 8));
        assert_eq!(Lattice::e8().signature(), (8, 0));
    }

    #[test]
    fn l2_invariants() {
        let l = Lattice::l2();
        assert_eq!(l.rank(), 23);
        // twenty negative directions make the determinant positive
        assert_eq!(l.det(), Int::from(2));
        assert_eq!(l.signature(), (3, 20));
        assert_eq!(l.divisibility(&l.basis_vector(22)).unwrap(), Int::from(2));
    }

    #[test]
    fn ln_last_entry() {
        let l = Lattice::ln(3).unwrap();
        assert_eq!(*l.gram().get(22, 22), Int::from(-4));
    }

    #[test]
    fn rejects_odd_and_degenerate() {
        assert!(matches!(Lattice::diag(3), Err(Error::Odd { .. })));
        assert!(matches!(Lattice::diag(0), Err(Error::Degenerate)));
        assert!(matches!(Lattice::new(IMatrix::from_i64(&[vec![0, 1], vec![2, 0]])), Err(Error::NotSymmetric)));
    }

    #[test]
    fn degenerate_signature_counts_radical() {
        let g = IMatrix::from_i64(&[vec![0, 0], vec![0, -2]]).to_rat();
        assert_eq!(signature_of(&g), (0, 1, 1));
        let h = IMatrix::from_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).to_rat();
        assert_eq!(signature_of(&h), (1, 1, 1));
    }

    #[test]
    fn diagonalize_is_congruence() {
        let g = Lattice::u().gram().to_rat();
        let (b, d) = diagonalize(&g);
        for i in 0..2 {
            for j in 0..2 {
                let v = g.bilinear(&b[i], &b[j]);
                if i == j {
                    assert_eq!(v, d[i]);
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }
}
