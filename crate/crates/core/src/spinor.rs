//! Real spinor norm and monodromy membership.
//!
//! Convention: O+ is the subgroup preserving the orientation of a maximal
//! positive definite subspace. A reflection in v then has spinor norm
//! -sign((v,v)).

use crate::arith::{sign_of, Int, Rat};
use crate::error::{Error, Result};
use crate::isometry::{check_ln, discriminant_action, is_isometry};
use crate::lattice::{diagonalize, Lattice};
use crate::matrix::{det_sign, IMatrix, QMatrix};
use num_traits::{One, Zero};

/// Candidate vectors A e_j, then A (e_j + e_k).
fn anisotropic_in_image(g: &QMatrix, a: &QMatrix) -> Option<Vec<Rat>> {
    let n = a.ncols();
    let cols: Vec<Vec<Rat>> = (0..n).map(|j| a.col(j)).collect();
    for c in &cols {
        if c.iter().any(|x| !x.is_zero()) && !g.bilinear(c, c).is_zero() {
            return Some(c.clone());
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let v: Vec<Rat> = cols[i].iter().zip(&cols[j]).map(|(x, y)| x + y).collect();
            if !g.bilinear(&v, &v).is_zero() {
                return Some(v);
            }
        }
    }
    None
}

fn apply_reflection(g: &QMatrix, v: &[Rat], s: &QMatrix) -> QMatrix {
    // r_v s = s - (2/(v,v)) v (v^T G s)
    let nv = g.bilinear(v, v);
    let k = Rat::from_integer(Int::from(2)) / nv;
    let t = s.vec_mul(&g.mul_vec(v));
    let mut out = s.clone();
    for i in 0..v.len() {
        if v[i].is_zero() {
            continue;
        }
        let c = &k * &v[i];
        for j in 0..t.len() {
            if !t[j].is_zero() {
                let x = out.get(i, j) - &c * &t[j];
                out.set(i, j, x);
            }
        }
    }
    out
}

/// Spinor norm through an explicit Cartan-Dieudonne factorization over Q.
/// Returns the sign and the reflection vectors (sigma = r_{v_1} ... r_{v_k}).
pub fn cartan_dieudonne(gram: &IMatrix, sigma: &IMatrix) -> Result<(i32, Vec<Vec<Rat>>)> {
    let n = gram.nrows();
    if !crate::isometry::preserves_form(sigma, gram) {
        return Err(Error::NotIsometry);
    }
    let g = gram.to_rat();
    let id = QMatrix::identity(n);
    let mut s = sigma.to_rat();
    let mut sign = 1;
    let mut factors = Vec::new();
    for _ in 0..4 * n + 8 {
        if s == id {
            factors.reverse();
            return Ok((sign, factors));
        }
        let a = s.sub(&id);
        let v = match anisotropic_in_image(&g, &a) {
            Some(v) => v,
            None => {
                // image of s - 1 is totally isotropic: pick w so that r_w s is not
                let mut chosen = None;
                'search: for i in 0..n {
                    for j in i..n {
                        let mut w = vec![Rat::zero(); n];
                        w[i] += Rat::one();
                        if j != i {
                            w[j] += Rat::one();
                        }
                        if g.bilinear(&w, &w).is_zero() {
                            continue;
                        }
                        let t = apply_reflection(&g, &w, &s);
                        if anisotropic_in_image(&g, &t.sub(&id)).is_some() || t == id {
                            chosen = Some(w);
                            break 'search;
                        }
                    }
                }
                chosen.ok_or_else(|| Error::Input("no anisotropic pivot; form is degenerate".into()))?
            }
        };
        sign *= -sign_of(&g.bilinear(&v, &v));
        s = apply_reflection(&g, &v, &s);
        factors.push(v);
    }
    Err(Error::Limit("Cartan-Dieudonne factorization did not terminate".into()))
}

pub fn spinor_norm_cd(gram: &IMatrix, sigma: &IMatrix) -> Result<i32> {
    cartan_dieudonne(gram, sigma).map(|(s, _)| s)
}

/// Sign of the determinant of sigma(V+) projected back onto V+.
pub fn spinor_norm_orientation(gram: &IMatrix, sigma: &IMatrix) -> Result<i32> {
    if !crate::isometry::preserves_form(sigma, gram) {
        return Err(Error::NotIsometry);
    }
    let g = gram.to_rat();
    let (basis, d) = diagonalize(&g);
    let pos: Vec<usize> = (0..d.len()).filter(|&i| d[i] > Rat::zero()).collect();
    if pos.is_empty() {
        return Ok(1);
    }
    let s = sigma.to_rat();
    let k = pos.len();
    let mut a = QMatrix::zeros(k, k);
    for (r, &i) in pos.iter().enumerate() {
        let img = s.mul_vec(&basis[i]);
        for (c, &j) in pos.iter().enumerate() {
            a.set(r, c, g.bilinear(&img, &basis[j]) / &d[j]);
        }
    }
    Ok(det_sign(&a))
}

pub fn real_spinor_norm(l: &Lattice, sigma: &IMatrix) -> Result<i32> {
    if !is_isometry(sigma, l)? {
        return Err(Error::NotIsometry);
    }
    spinor_norm_cd(l.gram(), sigma)
}

pub fn in_o_plus(l: &Lattice, sigma: &IMatrix) -> Result<bool> {
    Ok(real_spinor_norm(l, sigma)? == 1)
}

/// O+ and acting as +1 or -1 on the discriminant group.
pub fn mon2_condition(l: &Lattice, sigma: &IMatrix) -> Result<bool> {
    let (d, a) = discriminant_action(l, sigma)?;
    if !(d.is_scalar_action(&a, 1) || d.is_scalar_action(&a, -1)) {
        return Ok(false);
    }
    in_o_plus(l, sigma)
}

/// Membership in Mon^2(L_n).
pub fn in_monodromy(l: &Lattice, sigma: &IMatrix, n: i64) -> Result<bool> {
    check_ln(l, n)?;
    mon2_condition(l, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;
    use crate::isometry::{reflection, reflection_q};

    #[test]
    fn identity_has_norm_one() {
        let l = Lattice::l2();
        assert_eq!(real_spinor_norm(&l, &IMatrix::identity(23)).unwrap(), 1);
        assert!(in_monodromy(&l, &IMatrix::identity(23), 2).unwrap());
    }

    #[test]
    fn reflection_signs() {
        let u = Lattice::u();
        let neg = reflection(&u, &ivec(&[1, -1])).unwrap();
        let pos = reflection(&u, &ivec(&[1, 1])).unwrap();
        assert_eq!(spinor_norm_cd(u.gram(), &neg).unwrap(), 1);
        assert_eq!(spinor_norm_cd(u.gram(), &pos).unwrap(), -1);
        assert_eq!(spinor_norm_orientation(u.gram(), &neg).unwrap(), 1);
        assert_eq!(spinor_norm_orientation(u.gram(), &pos).unwrap(), -1);
    }

    #[test]
    fn minus_identity_on_l2() {
        // three positive directions are reversed
        let l = Lattice::l2();
        let m = IMatrix::identity(23).neg();
        assert_eq!(spinor_norm_cd(l.gram(), &m).unwrap(), -1);
        assert_eq!(spinor_norm_orientation(l.gram(), &m).unwrap(), -1);
    }

    #[test]
    fn factorization_reproduces_sigma() {
        let u = Lattice::u();
        let uu = Lattice::direct_sum(&[&u, &u]);
        // swap the two hyperbolic planes
        let sigma = IMatrix::from_i64(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let (sign, fs) = cartan_dieudonne(uu.gram(), &sigma).unwrap();
        let g = uu.gram().to_rat();
        let mut prod = QMatrix::identity(4);
        for v in &fs {
            prod = prod.mul(&reflection_q(&g, v).unwrap());
        }
        assert_eq!(prod, sigma.to_rat());
        assert_eq!(sign, spinor_norm_orientation(uu.gram(), &sigma).unwrap());
    }
}
