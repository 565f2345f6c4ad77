//! Isometries: reflections, eigenlattices, discriminant action, gluing
//! of isometries along S + K, and admissibility of invariant lattices.

use crate::arith::{qvec, Int, Rat};
use crate::discriminant::{DiscElem, DiscriminantAction, DiscriminantGroup};
use crate::error::{Error, Result};
use crate::lattice::{LatVector, Lattice};
use crate::matrix::{IMatrix, QMatrix};
use crate::snf::kernel;
use crate::spinor;
use crate::sublattice::{glue, GlueData, Sublattice};
use num_traits::{One, Zero};
use serde::Serialize;

fn check_square(m: &IMatrix, n: usize) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Dimension(format!("expected a {n}x{n} matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    Ok(())
}

/// m^T G m = G for the form `g`.
pub fn preserves_form(m: &IMatrix, g: &IMatrix) -> bool {
    m.nrows() == g.nrows() && m.ncols() == g.nrows() && m.transpose().mul(g).mul(m) == *g
}

pub fn is_isometry(m: &IMatrix, l: &Lattice) -> Result<bool> {
    check_square(m, l.rank())?;
    Ok(preserves_form(m, l.gram()))
}

/// Rational reflection x -> x - 2 (x,v)/(v,v) v for the form g.
pub fn reflection_q(g: &QMatrix, v: &[Rat]) -> Result<QMatrix> {
    let n = g.bilinear(v, v);
    if n.is_zero() {
        return Err(Error::Input("reflection in an isotropic vector".into()));
    }
    let gv = g.mul_vec(v);
    let k = Rat::from_integer(Int::from(2)) / n;
    let mut m = QMatrix::identity(v.len());
    for i in 0..v.len() {
        for j in 0..v.len() {
            let x = m.get(i, j) - &k * &v[i] * &gv[j];
            m.set(i, j, x);
        }
    }
    Ok(m)
}

/// r_delta on L, provided it is integral.
pub fn reflection(l: &Lattice, delta: &[Int]) -> Result<IMatrix> {
    if delta.len() != l.rank() {
        return Err(Error::Dimension("vector length differs from rank".into()));
    }
    if delta.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    reflection_q(&l.gram().to_rat(), &qvec(delta))?.to_int().ok_or(Error::NonIntegralReflection)
}

/// L cap ker(sigma - 1), saturated.
pub fn fixed_lattice(l: &Lattice, sigma: &IMatrix) -> Result<Sublattice> {
    check_square(sigma, l.rank())?;
    let a = sigma.sub(&IMatrix::identity(l.rank()));
    Sublattice::new(l, kernel(&a))
}

/// L cap ker(sigma + 1), saturated.
pub fn coinvariant_lattice(l: &Lattice, sigma: &IMatrix) -> Result<Sublattice> {
    check_square(sigma, l.rank())?;
    let a = sigma.add(&IMatrix::identity(l.rank()));
    Sublattice::new(l, kernel(&a))
}

pub fn discriminant_action(l: &Lattice, sigma: &IMatrix) -> Result<(DiscriminantGroup, DiscriminantAction)> {
    if !is_isometry(sigma, l)? {
        return Err(Error::NotIsometry);
    }
    let d = DiscriminantGroup::new(l.gram())?;
    let a = d.action(sigma)?;
    Ok((d, a))
}

pub fn is_stable(l: &Lattice, sigma: &IMatrix) -> Result<bool> {
    let (d, a) = discriminant_action(l, sigma)?;
    Ok(d.is_identity_action(&a))
}

/// The map +1 on M_Q, -1 on its complement, when it is integral on L.
pub fn involution_from_sublattice(m: &Sublattice) -> Result<Option<IMatrix>> {
    let n = m.ambient().rank();
    let p = m.projector()?;
    let two = Rat::from_integer(Int::from(2));
    let iota = p.scale(&two).sub(&QMatrix::identity(n));
    Ok(iota.to_int())
}

/// (delta + iota delta, delta - iota delta).
pub fn gamma_representatives(delta: &[Int], iota: &IMatrix) -> (LatVector, LatVector) {
    let img = iota.mul_vec(delta);
    let plus = delta.iter().zip(&img).map(|(a, b)| a + b).collect();
    let minus = delta.iter().zip(&img).map(|(a, b)| a - b).collect();
    (plus, minus)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub primitive: bool,
    pub hyperbolic: bool,
    pub involution_integral: bool,
    pub in_o_plus: Option<bool>,
    pub discriminant_plus_minus_one: Option<bool>,
    pub failed_clause: Option<String>,
    #[serde(skip)]
    pub involution: Option<IMatrix>,
}

/// M hyperbolic, its split involution integral and a monodromy operator of L_n.
pub fn is_admissible(m: &Sublattice, n: i64) -> Result<AdmissibilityReport> {
    let mut rep = AdmissibilityReport {
        admissible: false,
        primitive: m.is_primitive(),
        hyperbolic: m.is_hyperbolic(),
        involution_integral: false,
        in_o_plus: None,
        discriminant_plus_minus_one: None,
        failed_clause: None,
        involution: None,
    };
    if !rep.primitive {
        rep.failed_clause = Some("M is not primitive".into());
        return Ok(rep);
    }
    if !rep.hyperbolic {
        let (p, q, z) = m.signature();
        rep.failed_clause = Some(format!("M is not hyperbolic: signature ({p},{q}) with {z} null directions"));
        return Ok(rep);
    }
    let Some(iota) = involution_from_sublattice(m)? else {
        rep.failed_clause = Some("the involution +1 on M, -1 on its complement is not integral".into());
        return Ok(rep);
    };
    rep.involution_integral = true;
    let l = m.ambient();
    check_ln(l, n)?;
    let plus = spinor::in_o_plus(l, &iota)?;
    rep.in_o_plus = Some(plus);
    let (d, a) = discriminant_action(l, &iota)?;
    let pm = d.is_scalar_action(&a, 1) || d.is_scalar_action(&a, -1);
    rep.discriminant_plus_minus_one = Some(pm);
    rep.involution = Some(iota);
    if !plus {
        rep.failed_clause = Some("the involution reverses the orientation of the positive part".into());
    } else if !pm {
        rep.failed_clause = Some("the involution does not act as +1 or -1 on the discriminant group".into());
    } else {
        rep.admissible = true;
    }
    Ok(rep)
}

pub fn check_ln(l: &Lattice, n: i64) -> Result<()> {
    let ln = Lattice::ln(n)?;
    if l.gram() != ln.gram() {
        return Err(Error::NotLn(n));
    }
    Ok(())
}

/// Why phi + psi does not glue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GlueObstruction {
    /// phi-bar moves this element of H_S out of H_S.
    HsNotPreserved { element: Vec<String> },
    /// psi-bar(gamma(x)) differs from gamma(phi-bar(x)).
    Mismatch { element: Vec<String>, expected: Vec<String>, found: Vec<String> },
}

fn show(x: &[Int]) -> Vec<String> {
    x.iter().map(|v| v.to_string()).collect()
}

/// Check psi-bar o gamma = gamma o phi-bar on H_S.
pub fn glue_check(glue: &GlueData, phi_bar: &DiscriminantAction, psi_bar: &DiscriminantAction) -> std::result::Result<(), GlueObstruction> {
    for x in glue.h_s() {
        let px = glue.disc_s.apply(phi_bar, x);
        let Some(gpx) = glue.gamma(&px) else {
            return Err(GlueObstruction::HsNotPreserved { element: show(x) });
        };
        let gx = glue.gamma(x).expect("x in H_S");
        let qgx = glue.disc_k.apply(psi_bar, gx);
        if qgx != *gpx {
            return Err(GlueObstruction::Mismatch { element: show(x), expected: show(gpx), found: show(&qgx) });
        }
    }
    Ok(())
}

/// The rational map phi + psi on L_Q in ambient coordinates.
pub fn direct_sum_map(glue: &GlueData, phi: &IMatrix, psi: &IMatrix) -> Result<QMatrix> {
    let n = glue.s.ambient().rank();
    let ps = glue.s.projector_with(phi)?;
    let pk = glue.k.projector_with(psi)?;
    let m = ps.add(&pk);
    debug_assert_eq!(m.nrows(), n);
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    #[serde(skip)]
    pub matrix: Option<IMatrix>,
    pub compatible: bool,
    pub obstruction: Option<GlueObstruction>,
}

/// Glue phi on S and psi on K = S^perp to an isometry of L when compatible.
pub fn extend_isometry(glue: &GlueData, phi: &IMatrix, psi: &IMatrix) -> Result<Extension> {
    if !preserves_form(phi, glue.s.gram()) || !preserves_form(psi, glue.k.gram()) {
        return Err(Error::NotIsometry);
    }
    let phi_bar = glue.disc_s.action(phi)?;
    let psi_bar = glue.disc_k.action(psi)?;
    let check = glue_check(glue, &phi_bar, &psi_bar);
    let m = direct_sum_map(glue, phi, psi)?.to_int();
    // the glue criterion and integrality must agree
    debug_assert_eq!(check.is_ok(), m.is_some());
    Ok(Extension { compatible: check.is_ok(), obstruction: check.err(), matrix: m })
}

/// Extend a stable isometry of a primitive S by the identity on S^perp.
pub fn extend_stable(s: &Sublattice, sigma: &IMatrix) -> Result<IMatrix> {
    if !s.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if !preserves_form(sigma, s.gram()) {
        return Err(Error::NotIsometry);
    }
    let d = s.discriminant_group()?;
    if !d.is_identity_action(&d.action(sigma)?) {
        return Err(Error::NotStable);
    }
    let g = glue(s)?;
    let id = IMatrix::identity(g.k.rank());
    extend_isometry(&g, sigma, &id)?.matrix.ok_or(Error::NotStable)
}

impl Sublattice {
    /// B^T phi G_S^{-1} B G: project to S, apply phi in S coordinates, map back.
    pub fn projector_with(&self, phi: &IMatrix) -> Result<QMatrix> {
        let n = self.ambient().rank();
        if self.rank() == 0 {
            return Ok(QMatrix::zeros(n, n));
        }
        let b = self.basis().to_rat();
        let mut cols = Vec::with_capacity(n);
        let phi_q = phi.to_rat();
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            let y = self.dual_coords(&e)?;
            cols.push(b.vec_mul(&phi_q.mul_vec(&y)));
        }
        Ok(QMatrix::from_cols(cols, n))
    }
}

/// Restriction of an ambient isometry preserving S to S coordinates.
pub fn restrict(s: &Sublattice, sigma: &IMatrix) -> Option<IMatrix> {
    let mut cols = Vec::with_capacity(s.rank());
    for i in 0..s.rank() {
        let img = sigma.mul_vec(s.basis().row(i));
        cols.push(s.int_coords_of(&img)?);
    }
    Some(IMatrix::from_cols(cols, s.rank()))
}

/// The discriminant element of an ambient dual vector lying in S_Q, in A_S coordinates.
pub fn disc_elem_of(s: &Sublattice, d: &DiscriminantGroup, x: &[Rat]) -> Option<DiscElem> {
    let y = s.coords_of(x)?;
    d.coords(&y)
}
