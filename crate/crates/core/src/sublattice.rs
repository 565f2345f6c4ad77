//! Sublattices given by integer bases in ambient coordinates, orthogonal
//! complements, projections and glue data.

use crate::arith::{qvec, rat_of, Int, Rat};
use crate::discriminant::{DiscElem, DiscriminantGroup, MAX_ENUM};
use crate::error::{Error, Result};
use crate::lattice::{signature_of, LatVector, Lattice, QVector};
use crate::matrix::{IMatrix, QMatrix};
use crate::snf::{kernel, rows_primitive, saturate_rows, smith};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IMatrix,
    gram: IMatrix,
    /// (G_S^{-1}, B G) when the induced form is nondegenerate.
    proj: Option<(QMatrix, QMatrix)>,
}

impl Sublattice {
    /// Rows of `basis` are generators in ambient coordinates; they must be independent.
    pub fn new(ambient: &Lattice, basis: IMatrix) -> Result<Self> {
        if basis.ncols() != ambient.rank() {
            return Err(Error::Dimension(format!("basis rows have length {}, ambient rank is {}", basis.ncols(), ambient.rank())));
        }
        if basis.nrows() > 0 && basis.rank() < basis.nrows() {
            return Err(Error::Input("basis rows are linearly dependent".into()));
        }
        let bg = basis.mul(ambient.gram());
        let gram = bg.mul(&basis.transpose());
        let proj = if gram.nrows() == 0 {
            Some((QMatrix::zeros(0, 0), bg.to_rat()))
        } else {
            gram.to_rat().inverse().map(|inv| (inv, bg.to_rat()))
        };
        Ok(Sublattice { ambient: ambient.clone(), basis, gram, proj })
    }

    pub fn from_i64(ambient: &Lattice, rows: &[Vec<i64>]) -> Result<Self> {
        let b = if rows.is_empty() { IMatrix::zeros(0, ambient.rank()) } else { IMatrix::from_i64(rows) };
        Sublattice::new(ambient, b)
    }

    /// The whole ambient lattice with the identity basis.
    pub fn full(ambient: &Lattice) -> Self {
        Sublattice::new(ambient, IMatrix::identity(ambient.rank())).expect("identity basis")
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &IMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_degenerate(&self) -> bool {
        self.proj.is_none()
    }

    /// (positive, negative, zero) inertia of the induced form.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature_of(&self.gram.to_rat())
    }

    pub fn is_hyperbolic(&self) -> bool {
        let (p, n, z) = self.signature();
        p == 1 && z == 0 && n + 1 == self.rank()
    }

    /// The induced form as a lattice in its own right.
    pub fn as_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram.clone())
    }

    pub fn is_primitive(&self) -> bool {
        self.rank() == 0 || rows_primitive(&self.basis)
    }

    /// Product of the elementary divisors of the basis: the index in the saturation.
    pub fn saturation_index(&self) -> Int {
        if self.rank() == 0 {
            return Int::one();
        }
        let s = smith(&self.basis);
        s.d[..s.rank].iter().product()
    }

    pub fn saturate(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        Sublattice::new(&self.ambient, saturate_rows(&self.basis)).expect("saturation keeps rank")
    }

    /// {x in L : (x, s) = 0 for all s in S}, allowing a degenerate result.
    pub fn complement_unchecked(&self) -> Sublattice {
        let n = self.ambient.rank();
        let basis = if self.rank() == 0 {
            IMatrix::identity(n)
        } else {
            kernel(&self.basis.mul(self.ambient.gram()))
        };
        Sublattice::new(&self.ambient, basis).expect("kernel basis is independent")
    }

    /// Orthogonal complement; errors when its induced form is degenerate.
    pub fn orthogonal_complement(&self) -> Result<Sublattice> {
        let k = self.complement_unchecked();
        if k.is_degenerate() {
            return Err(Error::Degenerate);
        }
        Ok(k)
    }

    /// Coordinates in the S basis of the orthogonal projection of an ambient rational vector.
    pub fn dual_coords(&self, v: &[Rat]) -> Result<QVector> {
        let (ginv, bg) = self.proj.as_ref().ok_or(Error::Degenerate)?;
        Ok(ginv.mul_vec(&bg.mul_vec(v)))
    }

    pub fn to_ambient(&self, y: &[Rat]) -> QVector {
        self.basis.to_rat().vec_mul(y)
    }

    pub fn to_ambient_int(&self, y: &[Int]) -> LatVector {
        self.basis.vec_mul(y)
    }

    /// Orthogonal projections onto S_Q and its complement, in ambient coordinates.
    pub fn project(&self, v: &[Int]) -> Result<(QVector, QVector)> {
        self.project_q(&qvec(v))
    }

    pub fn project_q(&self, v: &[Rat]) -> Result<(QVector, QVector)> {
        if v.len() != self.ambient.rank() {
            return Err(Error::Dimension("vector length differs from ambient rank".into()));
        }
        let y = self.dual_coords(v)?;
        let vs = self.to_ambient(&y);
        let vp = v.iter().zip(&vs).map(|(a, b)| a - b).collect();
        Ok((vs, vp))
    }

    /// The projector onto S_Q as an ambient matrix acting on columns.
    pub fn projector(&self) -> Result<QMatrix> {
        let (ginv, bg) = self.proj.as_ref().ok_or(Error::Degenerate)?;
        Ok(self.basis.to_rat().transpose().mul(ginv).mul(bg))
    }

    /// Coordinates in the S basis of an ambient rational vector lying in S_Q.
    pub fn coords_of(&self, v: &[Rat]) -> Option<QVector> {
        if self.rank() == 0 {
            return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
        }
        self.basis.to_rat().transpose().solve(v)
    }

    /// Integer S coordinates if v lies in S.
    pub fn int_coords_of(&self, v: &[Int]) -> Option<Vec<Int>> {
        let y = self.coords_of(&qvec(v))?;
        crate::arith::to_int_vec(&y)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.int_coords_of(v).is_some()
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::new(&self.gram)
    }
}

/// H_L = L/(S + K) inside A_S + A_K together with gamma = p_K o p_S^{-1}.
#[derive(Clone, Debug)]
pub struct GlueData {
    pub s: Sublattice,
    pub k: Sublattice,
    pub disc_s: DiscriminantGroup,
    pub disc_k: DiscriminantGroup,
    /// All elements (x_S, x_K) of the glue group, sorted.
    pub h: Vec<(DiscElem, DiscElem)>,
    /// Generators of H_S and their gamma images.
    pub h_s_gens: Vec<DiscElem>,
    pub gamma_gens: Vec<DiscElem>,
    gamma: BTreeMap<DiscElem, DiscElem>,
    gamma_inv: BTreeMap<DiscElem, DiscElem>,
}

impl GlueData {
    pub fn order(&self) -> usize {
        self.h.len()
    }

    pub fn gamma(&self, x: &[Int]) -> Option<&DiscElem> {
        self.gamma.get(x)
    }

    pub fn gamma_inv(&self, y: &[Int]) -> Option<&DiscElem> {
        self.gamma_inv.get(y)
    }

    pub fn in_h_s(&self, x: &[Int]) -> bool {
        self.gamma.contains_key(x)
    }

    pub fn in_h_k(&self, y: &[Int]) -> bool {
        self.gamma_inv.contains_key(y)
    }

    pub fn h_s(&self) -> impl Iterator<Item = &DiscElem> {
        self.gamma.keys()
    }

    pub fn h_k(&self) -> impl Iterator<Item = &DiscElem> {
        self.gamma_inv.keys()
    }

    /// q_K(gamma(x)) + q_S(x) = 0 mod 2 on all of H_S.
    pub fn is_anti_isometry(&self) -> bool {
        let two = Rat::from_integer(Int::from(2));
        self.gamma.iter().all(|(x, y)| crate::arith::rat_mod(&(self.disc_s.q(x) + self.disc_k.q(y)), &two).is_zero())
    }

    /// |A_S| |A_K| = |A_L| |H|^2.
    pub fn order_identity_holds(&self, disc_l_order: &Int) -> bool {
        let h = Int::from(self.order());
        self.disc_s.order() * self.disc_k.order() == disc_l_order * &h * &h
    }
}

pub fn glue(s: &Sublattice) -> Result<GlueData> {
    if !s.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if s.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let k = s.orthogonal_complement()?;
    let disc_s = s.discriminant_group()?;
    let disc_k = k.discriminant_group()?;
    let n = s.ambient().rank();
    let mut gens: Vec<(DiscElem, DiscElem)> = Vec::new();
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let ys = s.dual_coords(&e)?;
        let yk = k.dual_coords(&e)?;
        let a = disc_s.coords(&ys).ok_or_else(|| Error::Input("projection is not a dual vector".into()))?;
        let b = disc_k.coords(&yk).ok_or_else(|| Error::Input("projection is not a dual vector".into()))?;
        if !(disc_s.is_zero_elem(&a) && disc_k.is_zero_elem(&b)) && !gens.contains(&(a.clone(), b.clone())) {
            gens.push((a, b));
        }
    }
    let zero = (disc_s.zero(), disc_k.zero());
    let mut seen = BTreeSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some((x, y)) = queue.pop_front() {
        for (a, b) in &gens {
            let nxt = (disc_s.add(&x, a), disc_k.add(&y, b));
            if seen.insert(nxt.clone()) {
                if seen.len() > MAX_ENUM {
                    return Err(Error::Limit("glue group enumeration".into()));
                }
                queue.push_back(nxt);
            }
        }
    }
    let h: Vec<(DiscElem, DiscElem)> = seen.into_iter().collect();
    let mut gamma = BTreeMap::new();
    let mut gamma_inv = BTreeMap::new();
    for (x, y) in &h {
        if gamma.insert(x.clone(), y.clone()).is_some() || gamma_inv.insert(y.clone(), x.clone()).is_some() {
            return Err(Error::Input("glue group meets A_S or A_K nontrivially".into()));
        }
    }
    let h_s_gens = gens.iter().map(|(a, _)| a.clone()).collect();
    let gamma_gens = gens.iter().map(|(_, b)| b.clone()).collect();
    Ok(GlueData { s: s.clone(), k, disc_s, disc_k, h, h_s_gens, gamma_gens, gamma, gamma_inv })
}

/// Ambient rational vector from integer coordinates in S.
pub fn lift(s: &Sublattice, y: &[Int]) -> QVector {
    s.to_ambient(&y.iter().map(rat_of).collect::<Vec<_>>())
}
