//! Exact scalar helpers shared by every module.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub use num_bigint::BigInt as Int;
pub type Rat = num_rational::BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_of(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn qvec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_of).collect()
}

/// Integer vector if every entry has denominator one.
pub fn to_int_vec(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter()
        .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
        .collect()
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(it: I) -> Int {
    let mut g = Int::zero();
    for x in it {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a Int>>(it: I) -> Int {
    let mut l = Int::one();
    for x in it {
        if !x.is_zero() {
            l = l.lcm(x);
        }
    }
    l
}

/// Divide out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_primitive_vec(v: &[Int]) -> bool {
    gcd_all(v).is_one()
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub fn primitive_of_rat(v: &[Rat]) -> Vec<Int> {
    let den = lcm_all(v.iter().map(|x| x.denom()).collect::<Vec<_>>().into_iter());
    let w: Vec<Int> = v.iter().map(|x| (x * rat_of(&den)).to_integer()).collect();
    primitive(&w)
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn neg_vec<T: Clone + std::ops::Neg<Output = T>>(v: &[T]) -> Vec<T> {
    v.iter().map(|x| -x.clone()).collect()
}

pub fn add_vec<T: Clone + std::ops::Add<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<T: Clone + std::ops::Sub<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vec<T: Clone + std::ops::Mul<Output = T>>(s: &T, v: &[T]) -> Vec<T> {
    v.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn dot<T: Clone + Zero + std::ops::Mul<Output = T>>(a: &[T], b: &[T]) -> T {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s = s + x.clone() * y.clone();
    }
    s
}

/// Sign of the first nonzero entry, 0 for the zero vector.
pub fn lead_sign<T: Signed>(v: &[T]) -> i32 {
    for x in v {
        if x.is_positive() {
            return 1;
        }
        if x.is_negative() {
            return -1;
        }
    }
    0
}

/// Representative with a positive leading entry.
pub fn canonical_sign(v: &[Int]) -> Vec<Int> {
    if lead_sign(v) < 0 {
        neg_vec(v)
    } else {
        v.to_vec()
    }
}

pub fn sign_of<T: Signed>(x: &T) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Representative of x modulo 1 in [0, 1).
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// Representative of x modulo m in [0, m).
pub fn rat_mod(x: &Rat, m: &Rat) -> Rat {
    let q = (x / m).floor();
    x - q * m
}

pub fn lex_cmp(a: &[Int], b: &[Int]) -> Ordering {
    a.cmp(b)
}

pub fn to_i64(x: &Int) -> Option<i64> {
    x.to_i64()
}

pub fn vec_to_i64(v: &[Int]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// All vectors of length `n` with entries in [-r, r], in lexicographic order.
pub fn box_vectors(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as u64;
    let total = side.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; n];
        for i in (0..n).rev() {
            v[i] = (k % side) as i64 - r;
            k /= side;
        }
        v
    })
}

/// Integer square root (floor) of a non-negative integer.
pub fn isqrt(x: &Int) -> Int {
    x.sqrt()
}

pub fn is_square(x: &Int) -> bool {
    if x.is_negative() {
        return false;
    }
    let s = x.sqrt();
    &s * &s == *x
}

pub fn fmt_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_content() {
        assert_eq!(primitive(&ivec(&[4, -6, 8])), ivec(&[2, -3, 4]));
        assert_eq!(primitive(&ivec(&[0, 0])), ivec(&[0, 0]));
    }

    #[test]
    fn primitive_of_rational_direction() {
        let v = vec![rat(1, 2), rat(-1, 3), Rat::zero()];
        assert_eq!(primitive_of_rat(&v), ivec(&[3, -2, 0]));
    }

    #[test]
    fn rat_mod_lands_in_range() {
        assert_eq!(rat_mod(&rat(-1, 2), &rat(2, 1)), rat(3, 2));
        assert_eq!(frac(&rat(-7, 3)), rat(2, 3));
    }

    #[test]
    fn box_has_expected_size() {
        assert_eq!(box_vectors(3, 1).count(), 27);
        assert_eq!(box_vectors(2, 1).next().unwrap(), vec![-1, -1]);
    }
}
