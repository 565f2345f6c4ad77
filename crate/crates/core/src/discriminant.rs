//! Discriminant groups A_L = L*/L with their finite quadratic forms.

use crate::arith::{frac, rat_mod, rat_of, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::QVector;
use crate::matrix::{IMatrix, QMatrix};
use crate::snf::smith;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{BTreeSet, VecDeque};

/// Coordinates of a discriminant element with respect to the canonical generators.
pub type DiscElem = Vec<Int>;

#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<Int>,
    /// Dual representatives with entries reduced to [0, 1).
    pub generators: Vec<QVector>,
    /// q(g_i) in [0, 2).
    pub qform: Vec<Rat>,
    /// b(g_i, g_j) in [0, 1).
    pub pairing: Vec<Vec<Rat>>,
    gram: QMatrix,
    /// Rows of V^{-1} belonging to the nontrivial factors.
    coord_rows: Vec<Vec<Int>>,
    /// Rows of V^{-1} belonging to factors equal to one.
    unit_rows: Vec<Vec<Int>>,
}

/// Enumerations of group elements refuse to go beyond this many.
pub const MAX_ENUM: usize = 1 << 20;

impl DiscriminantGroup {
    /// Discriminant group of a nondegenerate integral symmetric form.
    pub fn new(gram: &IMatrix) -> Result<Self> {
        let r = gram.nrows();
        let s = smith(gram);
        if s.rank < r {
            return Err(Error::Degenerate);
        }
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut coord_rows = Vec::new();
        let mut unit_rows = Vec::new();
        for i in 0..r {
            let d = &s.d[i];
            if d.is_one() {
                unit_rows.push(s.v_inv.row(i).to_vec());
                continue;
            }
            invariant_factors.push(d.clone());
            let col = s.v.col(i);
            generators.push(col.iter().map(|x| frac(&Rat::new(x.clone(), d.clone()))).collect());
            coord_rows.push(s.v_inv.row(i).to_vec());
        }
        let g = gram.to_rat();
        let two = Rat::from_integer(Int::from(2));
        let qform = generators.iter().map(|x: &QVector| rat_mod(&g.bilinear(x, x), &two)).collect();
        let pairing = generators
            .iter()
            .map(|x| generators.iter().map(|y| frac(&g.bilinear(x, y))).collect())
            .collect();
        Ok(DiscriminantGroup { invariant_factors, generators, qform, pairing, gram: g, coord_rows, unit_rows })
    }

    pub fn ngens(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> Int {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Minimal number of generators (length) of the group.
    pub fn length(&self) -> usize {
        self.ngens()
    }

    pub fn zero(&self) -> DiscElem {
        vec![Int::zero(); self.ngens()]
    }

    /// Coordinates of a dual vector, or None if x is not in L*.
    pub fn coords(&self, x: &[Rat]) -> Option<DiscElem> {
        for row in &self.unit_rows {
            let v: Rat = row.iter().zip(x).map(|(a, b)| rat_of(a) * b).sum();
            if !v.is_integer() {
                return None;
            }
        }
        let mut out = Vec::with_capacity(self.ngens());
        for (row, d) in self.coord_rows.iter().zip(&self.invariant_factors) {
            let v: Rat = row.iter().zip(x).map(|(a, b)| rat_of(a) * b).sum::<Rat>() * rat_of(d);
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer().mod_floor(d));
        }
        Some(out)
    }

    pub fn reduce(&self, c: &[Int]) -> DiscElem {
        c.iter().zip(&self.invariant_factors).map(|(x, d)| x.mod_floor(d)).collect()
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> DiscElem {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[Int]) -> DiscElem {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: &Int, a: &[Int]) -> DiscElem {
        self.reduce(&a.iter().map(|x| k * x).collect::<Vec<_>>())
    }

    pub fn is_zero_elem(&self, a: &[Int]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// A dual representative of the element.
    pub fn element(&self, c: &[Int]) -> QVector {
        let n = self.gram.nrows();
        let mut x = vec![Rat::zero(); n];
        for (ci, g) in c.iter().zip(&self.generators) {
            if ci.is_zero() {
                continue;
            }
            for k in 0..n {
                x[k] += rat_of(ci) * &g[k];
            }
        }
        x
    }

    /// q(x) in [0, 2).
    pub fn q(&self, c: &[Int]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..c.len() {
            if c[i].is_zero() {
                continue;
            }
            s += rat_of(&(&c[i] * &c[i])) * &self.qform[i];
            for j in i + 1..c.len() {
                s += rat_of(&(Int::from(2) * &c[i] * &c[j])) * &self.pairing[i][j];
            }
        }
        rat_mod(&s, &Rat::from_integer(Int::from(2)))
    }

    /// b(x, y) in [0, 1).
    pub fn b(&self, a: &[Int], c: &[Int]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..a.len() {
            for j in 0..c.len() {
                if !a[i].is_zero() && !c[j].is_zero() {
                    s += rat_of(&(&a[i] * &c[j])) * &self.pairing[i][j];
                }
            }
        }
        frac(&s)
    }

    pub fn elem_order(&self, a: &[Int]) -> Int {
        let mut o = Int::one();
        for (x, d) in a.iter().zip(&self.invariant_factors) {
            let g = x.gcd(d);
            o = o.lcm(&(d / g));
        }
        o
    }

    /// Every element, in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<DiscElem>> {
        let n = self.order().to_usize().filter(|&n| n <= MAX_ENUM).ok_or_else(|| Error::Limit(format!("discriminant group of order {}", self.order())))?;
        let mut out = Vec::with_capacity(n);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut i = self.ngens();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.invariant_factors[i] {
                    break;
                }
                cur[i] = Int::zero();
            }
        }
    }

    /// Subgroup generated by the given elements, as a sorted element list.
    pub fn span(&self, gens: &[DiscElem]) -> Result<Vec<DiscElem>> {
        let mut seen: BTreeSet<DiscElem> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.zero());
        queue.push_back(self.zero());
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_ENUM {
                        return Err(Error::Limit("subgroup enumeration".into()));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Action of a lattice isometry (column convention) on the generators:
    /// column i holds the coordinates of sigma(g_i).
    pub fn action(&self, sigma: &IMatrix) -> Result<DiscriminantAction> {
        let s = sigma.to_rat();
        let mut cols = Vec::with_capacity(self.ngens());
        for g in &self.generators {
            let img = s.mul_vec(g);
            cols.push(self.coords(&img).ok_or(Error::NotIsometry)?);
        }
        Ok(DiscriminantAction { images: cols })
    }

    pub fn apply(&self, act: &DiscriminantAction, c: &[Int]) -> DiscElem {
        let mut out = self.zero();
        for (ci, col) in c.iter().zip(&act.images) {
            if ci.is_zero() {
                continue;
            }
            for k in 0..out.len() {
                out[k] += ci * &col[k];
            }
        }
        self.reduce(&out)
    }

    pub fn is_identity_action(&self, act: &DiscriminantAction) -> bool {
        act.images.iter().enumerate().all(|(i, col)| {
            let mut e = self.zero();
            e[i] = Int::one();
            *col == e
        })
    }

    /// True iff the action is multiplication by the unit k.
    pub fn is_scalar_action(&self, act: &DiscriminantAction, k: i64) -> bool {
        act.images.iter().enumerate().all(|(i, col)| {
            let mut e = self.zero();
            e[i] = Int::one();
            *col == self.scale(&Int::from(k), &e)
        })
    }
}

/// Images of the canonical generators under an isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantAction {
    pub images: Vec<DiscElem>,
}
