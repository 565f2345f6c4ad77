//! Three-valued membership of an isometry phi of M in Gamma_M, the image in
//! O(M) of the monodromy operators commuting with the split involution of M.
//!
//! Certificates, tried in order:
//! 1. an explicit extension phi + psi with psi in {id, -id} or user supplied,
//!    corrected by a reflection in a norm 2 vector of M-perp when its spinor
//!    norm is wrong;
//! 2. an exhaustive search over O(q_K) (K = M-perp) for a discriminant isometry
//!    compatible with phi and acting as +-1 on A_L; none means non-member;
//! 3. Nikulin's surjectivity O(K) -> O(q_K) for K indefinite with
//!    rk K >= l(A_K) + 2, again with the norm 2 reflection fixing orientation.

use crate::arith::Int;
use crate::discriminant::{DiscElem, DiscriminantAction, DiscriminantGroup};
use crate::error::{Error, Result};
use crate::isometry::{extend_isometry, glue_check, preserves_form, GlueObstruction};
use crate::lattice::{LatVector, Lattice};
use crate::matrix::IMatrix;
use crate::spinor;
use crate::sublattice::{GlueData, Sublattice};
use num_traits::{One, Zero};
use serde::Serialize;

const MAX_NODES: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MembershipCertificate {
    /// sigma = (phi + psi) o r_v restricts to phi and lies in Mon^2.
    Extension { psi: String, reflection: Option<Vec<String>> },
    /// A compatible discriminant isometry exists and lifts by Nikulin's theorem.
    Nikulin { reflection: Vec<String>, rank_k: usize, length_k: usize },
    /// phi-bar moves an element of H_M out of H_M.
    HsNotPreserved { element: Vec<String> },
    /// No isometry of q_K is compatible with phi and acts as +-1 on A_L.
    NoCompatibleDiscriminantIsometry { candidates: usize },
    /// phi does not permute the walls of M, so no extension preserves them.
    WallsNotPreserved,
    Open { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub verdict: Verdict,
    pub certificate: MembershipCertificate,
    /// Outcome of psi = id and psi = -id, in that order.
    pub plus_minus_id: Vec<ExtensionAttempt>,
    #[serde(skip)]
    pub extension: Option<IMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionAttempt {
    pub psi: String,
    pub integral: bool,
    pub in_monodromy: Option<bool>,
    pub obstruction: Option<GlueObstruction>,
}

fn show(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// A vector v in K = M-perp (ambient coordinates) with (v, v) = 2.
pub fn norm_two_in_complement(l: &Lattice, k: &Sublattice) -> Option<LatVector> {
    let g = l.gram();
    let n = l.rank();
    let two = Int::from(2);
    let in_k = |v: &LatVector| k.contains(v);
    // ambient basis vectors and their pairwise sums and differences first
    let mut cands: Vec<LatVector> = Vec::new();
    for i in 0..n {
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        cands.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            for s in [1i64, -1] {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                e[j] = Int::from(s);
                cands.push(e);
            }
        }
    }
    let kb = k.basis().to_rows();
    cands.extend(kb.iter().cloned());
    for i in 0..kb.len() {
        for j in i + 1..kb.len() {
            cands.push(kb[i].iter().zip(&kb[j]).map(|(a, b)| a + b).collect());
            cands.push(kb[i].iter().zip(&kb[j]).map(|(a, b)| a - b).collect());
        }
    }
    cands.into_iter().find(|v| g.bilinear(v, v) == two && in_k(v))
}

fn reflect(l: &Lattice, sigma: &IMatrix, v: &[Int]) -> IMatrix {
    crate::isometry::reflection(l, v).expect("norm 2 reflection is integral").mul(sigma)
}

/// Decide whether phi (an isometry of M in M coordinates) lies in Gamma_M.
pub fn gamma_membership(m: &Sublattice, glue: &GlueData, phi: &IMatrix, extra_psi: &[IMatrix]) -> Result<Membership> {
    if !preserves_form(phi, m.gram()) {
        return Err(Error::NotIsometry);
    }
    let l = m.ambient();
    let k = &glue.k;
    let v2 = norm_two_in_complement(l, k);
    let mut attempts = Vec::new();
    let kr = k.rank();
    let id = IMatrix::identity(kr);
    let mut psis: Vec<(String, IMatrix)> = vec![("id".into(), id.clone()), ("-id".into(), id.neg())];
    for (i, p) in extra_psi.iter().enumerate() {
        psis.push((format!("user[{i}]"), p.clone()));
    }
    let mut found: Option<Membership> = None;
    for (idx, (name, psi)) in psis.iter().enumerate() {
        let ext = extend_isometry(glue, phi, psi)?;
        let mut att = ExtensionAttempt { psi: name.clone(), integral: ext.matrix.is_some(), in_monodromy: None, obstruction: ext.obstruction.clone() };
        if let Some(sigma) = &ext.matrix {
            let (d, a) = crate::isometry::discriminant_action(l, sigma)?;
            let pm = d.is_scalar_action(&a, 1) || d.is_scalar_action(&a, -1);
            let plus = spinor::in_o_plus(l, sigma)?;
            att.in_monodromy = Some(pm && plus);
            if found.is_none() && pm {
                if plus {
                    found = Some(Membership {
                        verdict: Verdict::Member,
                        certificate: MembershipCertificate::Extension { psi: name.clone(), reflection: None },
                        plus_minus_id: vec![],
                        extension: Some(sigma.clone()),
                    });
                } else if let Some(v) = &v2 {
                    let s2 = reflect(l, sigma, v);
                    debug_assert!(spinor::mon2_condition(l, &s2).unwrap_or(false));
                    found = Some(Membership {
                        verdict: Verdict::Member,
                        certificate: MembershipCertificate::Extension { psi: name.clone(), reflection: Some(show(v)) },
                        plus_minus_id: vec![],
                        extension: Some(s2),
                    });
                }
            }
        }
        if idx < 2 {
            attempts.push(att);
        }
    }
    if let Some(mut f) = found {
        f.plus_minus_id = attempts;
        return Ok(f);
    }
    let phi_bar = glue.disc_s.action(phi)?;
    for x in glue.h_s() {
        let px = glue.disc_s.apply(&phi_bar, x);
        if !glue.in_h_s(&px) {
            return Ok(Membership {
                verdict: Verdict::NonMember,
                certificate: MembershipCertificate::HsNotPreserved { element: show(x) },
                plus_minus_id: attempts,
                extension: None,
            });
        }
    }
    let search = compatible_discriminant_isometry(glue, &phi_bar);
    match search {
        TauSearch::None { candidates } => Ok(Membership {
            verdict: Verdict::NonMember,
            certificate: MembershipCertificate::NoCompatibleDiscriminantIsometry { candidates },
            plus_minus_id: attempts,
            extension: None,
        }),
        TauSearch::TooLarge => Ok(open(attempts, "discriminant isometry search exceeded its budget")),
        TauSearch::Found(_) => {
            let (p, q, _) = k.signature();
            let len = glue.disc_k.length();
            let nikulin = p > 0 && q > 0 && kr >= len + 2;
            match (&v2, nikulin) {
                (Some(v), true) => Ok(Membership {
                    verdict: Verdict::Member,
                    certificate: MembershipCertificate::Nikulin { reflection: show(v), rank_k: kr, length_k: len },
                    plus_minus_id: attempts,
                    extension: None,
                }),
                (None, true) => Ok(open(attempts, "a compatible discriminant isometry lifts, but no norm 2 vector in M-perp was found to fix the spinor norm")),
                _ => Ok(open(attempts, "a compatible discriminant isometry exists but M-perp is too small for the lifting theorem")),
            }
        }
    }
}

fn open(attempts: Vec<ExtensionAttempt>, reason: &str) -> Membership {
    Membership { verdict: Verdict::Undecided, certificate: MembershipCertificate::Open { reason: reason.into() }, plus_minus_id: attempts, extension: None }
}

pub enum TauSearch {
    Found(Vec<DiscElem>),
    None { candidates: usize },
    TooLarge,
}

/// Search for tau in O(q_K) with tau o gamma = gamma o phi-bar on H_M and
/// phi-bar + tau acting as a common sign on A_L = H-perp / H.
pub fn compatible_discriminant_isometry(glue: &GlueData, phi_bar: &DiscriminantAction) -> TauSearch {
    let dk = &glue.disc_k;
    let ds = &glue.disc_s;
    let Ok(elems) = dk.elements() else { return TauSearch::TooLarge };
    let m = dk.ngens();
    let gens: Vec<DiscElem> = (0..m)
        .map(|i| {
            let mut e = dk.zero();
            e[i] = Int::one();
            e
        })
        .collect();
    // candidate images per generator: same order and same q
    let mut cands: Vec<Vec<DiscElem>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let q = dk.q(g);
        let ord = &dk.invariant_factors[i];
        cands.push(elems.iter().filter(|t| dk.elem_order(t) == *ord && dk.q(t) == q).cloned().collect());
    }
    let total: f64 = cands.iter().map(|c| c.len() as f64).product();
    if total > MAX_NODES as f64 * 50.0 {
        return TauSearch::TooLarge;
    }
    // H-perp inside A_S + A_K
    let Ok(s_elems) = ds.elements() else { return TauSearch::TooLarge };
    if (s_elems.len() as f64) * (elems.len() as f64) > MAX_NODES as f64 {
        return TauSearch::TooLarge;
    }
    let hgens: Vec<(DiscElem, DiscElem)> = glue.h_s_gens.iter().cloned().zip(glue.gamma_gens.iter().cloned()).collect();
    let mut hperp: Vec<(DiscElem, DiscElem)> = Vec::new();
    for a in &s_elems {
        for b in &elems {
            if hgens.iter().all(|(x, y)| (ds.b(a, x) + dk.b(b, y)).is_integer()) {
                hperp.push((a.clone(), b.clone()));
            }
        }
    }
    let mut chosen: Vec<DiscElem> = Vec::new();
    let mut count = 0usize;
    let mut nodes = 0usize;
    let r = backtrack(glue, phi_bar, &gens, &cands, &hperp, &mut chosen, &mut count, &mut nodes);
    match r {
        Some(Some(t)) => TauSearch::Found(t),
        Some(None) => TauSearch::None { candidates: count },
        None => TauSearch::TooLarge,
    }
}

fn apply_images(dk: &DiscriminantGroup, images: &[DiscElem], x: &[Int]) -> DiscElem {
    let mut out = dk.zero();
    for (c, im) in x.iter().zip(images) {
        if !c.is_zero() {
            out = dk.add(&out, &dk.scale(c, im));
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    glue: &GlueData,
    phi_bar: &DiscriminantAction,
    gens: &[DiscElem],
    cands: &[Vec<DiscElem>],
    hperp: &[(DiscElem, DiscElem)],
    chosen: &mut Vec<DiscElem>,
    count: &mut usize,
    nodes: &mut usize,
) -> Option<Option<Vec<DiscElem>>> {
    *nodes += 1;
    if *nodes > MAX_NODES {
        return None;
    }
    let dk = &glue.disc_k;
    let i = chosen.len();
    if i == gens.len() {
        *count += 1;
        return Some(tau_works(glue, phi_bar, chosen, hperp).then(|| chosen.clone()));
    }
    for t in &cands[i] {
        // the bilinear form against earlier images must match
        let ok = (0..i).all(|j| dk.b(t, &chosen[j]) == dk.b(&gens[i], &gens[j]));
        if !ok {
            continue;
        }
        chosen.push(t.clone());
        let r = backtrack(glue, phi_bar, gens, cands, hperp, chosen, count, nodes);
        chosen.pop();
        match r {
            None => return None,
            Some(Some(v)) => return Some(Some(v)),
            Some(None) => {}
        }
    }
    Some(None)
}

fn tau_works(glue: &GlueData, phi_bar: &DiscriminantAction, images: &[DiscElem], hperp: &[(DiscElem, DiscElem)]) -> bool {
    let dk = &glue.disc_k;
    let ds = &glue.disc_s;
    // compatibility on H
    for x in glue.h_s() {
        let gx = glue.gamma(x).expect("in H_S");
        let lhs = apply_images(dk, images, gx);
        let px = ds.apply(phi_bar, x);
        match glue.gamma(&px) {
            Some(rhs) if *rhs == lhs => {}
            _ => return false,
        }
    }
    // a common sign on H-perp / H
    'sign: for s in [1i64, -1] {
        let sk = Int::from(s);
        for (a, b) in hperp {
            let da = ds.add(&ds.apply(phi_bar, a), &ds.neg(&ds.scale(&sk, a)));
            let db = dk.add(&apply_images(dk, images, b), &dk.neg(&dk.scale(&sk, b)));
            match glue.gamma(&da) {
                Some(y) if *y == db => {}
                _ => continue 'sign,
            }
        }
        return true;
    }
    false
}

/// Whether psi-bar o gamma = gamma o phi-bar holds for psi = +-id.
pub fn plus_minus_id_obstruction(glue: &GlueData, phi: &IMatrix) -> Result<Vec<Option<GlueObstruction>>> {
    let phi_bar = glue.disc_s.action(phi)?;
    let kr = glue.k.rank();
    let mut out = Vec::new();
    for s in [1i64, -1] {
        let psi = IMatrix::identity(kr).scale(&Int::from(s));
        let psi_bar = glue.disc_k.action(&psi)?;
        out.push(glue_check(glue, &phi_bar, &psi_bar).err());
    }
    Ok(out)
}

pub fn verdict_rank(v: Verdict) -> u8 {
    match v {
        Verdict::Member => 0,
        Verdict::Undecided => 1,
        Verdict::NonMember => 2,
    }
}
