//! Kähler-type chambers of a hyperbolic sublattice M: the region (positive
//! cone or Vinberg domain), its decomposition by wall hyperplanes, adjacency,
//! symmetries with Gamma_M verdicts, orbits and the per-chamber Delta(K) flag.

use crate::arith::{canonical_sign, is_primitive_vec, primitive_of_rat, Int};
use crate::error::{Error, Result};
use crate::isometry::{is_admissible, preserves_form, AdmissibilityReport};
use crate::lattice::LatVector;
use crate::matrix::IMatrix;
use crate::membership::{gamma_membership, Membership, MembershipCertificate, Verdict};
use crate::polyhedral::{extreme_rays, feasible_point, ray_sum, strict_interior_point, LinCon, Rel};
use crate::search::SliceSearch;
use crate::snf::solve_int;
use crate::sublattice::{glue, GlueData, Sublattice};
use crate::vinberg::{vinberg_domain, Polyhedron};
use crate::walls::{crossing_vectors, enumerate_walls_in_cone, isotropic_rays_rank2, ConeDescription, EnumOptions, WallEnumeration, WallSpec};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

/// Vertices are computed by double description up to this rank.
pub const MAX_VERTEX_RANK: usize = 8;
/// Range of (delta, w_i) tried when looking for a Delta(K) witness.
const WITNESS_BOX: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Rank 1: the positive ray.
    Ray,
    /// Rank 2 with rational isotropic vectors: the whole positive cone.
    FullCone,
    /// Fundamental domain of the reflections in the roots of M.
    Vinberg,
}

/// A closed polyhedral cone in M coordinates, {x : f . x >= 0}.
#[derive(Clone, Debug, Serialize)]
pub struct Region {
    pub kind: RegionKind,
    #[serde(with = "crate::json::vecs")]
    pub rays: Vec<LatVector>,
    #[serde(skip)]
    pub functionals: Vec<Vec<Int>>,
}

impl Region {
    /// The positive cone itself when it is polyhedral (rank 1, or rank 2 with isotropic vectors).
    pub fn positive_cone(gram: &IMatrix) -> Option<Region> {
        if gram.nrows() == 1 && gram.get(0, 0).is_positive() {
            return Some(Region { kind: RegionKind::Ray, rays: vec![vec![Int::one()]], functionals: vec![vec![Int::one()]] });
        }
        let (u, v) = isotropic_rays_rank2(gram)?;
        let functionals = vec![gram.mul_vec(&u), gram.mul_vec(&v)];
        Some(Region { kind: RegionKind::FullCone, rays: vec![u, v], functionals })
    }

    pub fn from_polyhedron(gram: &IMatrix, p: &Polyhedron) -> Region {
        Region { kind: RegionKind::Vinberg, rays: p.vertices.clone(), functionals: p.functionals(gram) }
    }

    pub fn cone(&self) -> ConeDescription {
        ConeDescription::from_rays(self.rays.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// '+' or '-' per wall: the sign of (wall, x) inside the chamber.
    pub signs: String,
    #[serde(with = "crate::json::vec")]
    pub witness: LatVector,
    #[serde(with = "crate::json::opt_vecs")]
    pub vertices: Option<Vec<LatVector>>,
}

impl Chamber {
    pub fn sign_vector(&self) -> Vec<i32> {
        self.signs.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Adjacency {
    pub a: usize,
    pub b: usize,
    pub wall: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberComplex {
    #[serde(with = "crate::json::vecs")]
    pub walls: Vec<LatVector>,
    pub chambers: Vec<Chamber>,
    pub adjacency: Vec<Adjacency>,
}

fn sign_char(s: i32) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

fn signed_rows(region: &Region, wall_rows: &[Vec<Int>], signs: &[i32]) -> Vec<Vec<Int>> {
    let mut rows = region.functionals.clone();
    for (a, s) in wall_rows.iter().zip(signs) {
        rows.push(if *s > 0 { a.clone() } else { a.iter().map(|x| -x).collect() });
    }
    rows
}

/// Split the region by the wall hyperplanes (walls in M coordinates).
pub fn chamber_decomposition(gram: &IMatrix, region: &Region, walls: &[LatVector]) -> Result<ChamberComplex> {
    let r = gram.nrows();
    let wall_rows: Vec<Vec<Int>> = walls.iter().map(|w| gram.mul_vec(w)).collect();
    if strict_interior_point(&region.functionals, r).is_none() {
        return Err(Error::BadCone("region has empty interior".into()));
    }
    let mut partial: Vec<Vec<i32>> = vec![vec![]];
    for k in 0..walls.len() {
        let mut next = Vec::new();
        for p in &partial {
            for s in [1, -1] {
                let mut q = p.clone();
                q.push(s);
                if strict_interior_point(&signed_rows(region, &wall_rows[..=k], &q), r).is_some() {
                    next.push(q);
                }
            }
        }
        partial = next;
    }
    let mut chambers = Vec::with_capacity(partial.len());
    for signs in &partial {
        let rows = signed_rows(region, &wall_rows, signs);
        let vertices = if r <= MAX_VERTEX_RANK { Some(extreme_rays(&rows, r)?) } else { None };
        let witness = match &vertices {
            Some(v) => ray_sum(v, r),
            None => primitive_of_rat(&strict_interior_point(&rows, r).expect("feasible")),
        };
        debug_assert!(rows.iter().all(|a| crate::arith::dot(a, &witness).is_positive()));
        debug_assert!(gram.bilinear(&witness, &witness).is_positive() || r == 1);
        chambers.push(Chamber { signs: signs.iter().map(|s| sign_char(*s)).collect(), witness, vertices });
    }
    chambers.sort_by(|a, b| a.signs.cmp(&b.signs));
    let adjacency = adjacency_graph(region, &wall_rows, &chambers, r);
    Ok(ChamberComplex { walls: walls.to_vec(), chambers, adjacency })
}

fn adjacency_graph(region: &Region, wall_rows: &[Vec<Int>], chambers: &[Chamber], r: usize) -> Vec<Adjacency> {
    let mut out = Vec::new();
    for i in 0..chambers.len() {
        let si = chambers[i].sign_vector();
        for j in i + 1..chambers.len() {
            let sj = chambers[j].sign_vector();
            let diff: Vec<usize> = (0..si.len()).filter(|&k| si[k] != sj[k]).collect();
            if diff.len() != 1 {
                continue;
            }
            let k = diff[0];
            // a relative interior point of the common facet on wall k
            let mut cons: Vec<LinCon> = region.functionals.iter().map(|a| LinCon::int(a, Rel::Ge, 1)).collect();
            for (l, a) in wall_rows.iter().enumerate() {
                if l == k {
                    cons.push(LinCon::int(a, Rel::Eq, 0));
                } else {
                    let row: Vec<Int> = a.iter().map(|x| x * Int::from(si[l])).collect();
                    cons.push(LinCon::int(&row, Rel::Ge, 1));
                }
            }
            if feasible_point(&cons, r).is_some() {
                out.push(Adjacency { a: i, b: j, wall: k });
            }
        }
    }
    out
}

/// Index of the chamber containing x strictly, if x avoids every wall.
pub fn locate(gram: &IMatrix, complex: &ChamberComplex, x: &[Int]) -> Option<usize> {
    let mut signs = String::new();
    for w in &complex.walls {
        let v = gram.bilinear(w, x);
        if v.is_zero() {
            return None;
        }
        signs.push(if v.is_positive() { '+' } else { '-' });
    }
    complex.chambers.iter().position(|c| c.signs == signs)
}

/// Isometries of M mapping the primitive rays of the region onto themselves;
/// each comes with the induced ray permutation.
pub fn region_isometries(gram: &IMatrix, rays: &[LatVector]) -> Vec<(IMatrix, Vec<usize>)> {
    let r = gram.nrows();
    let m = rays.len();
    // greedy basis among the rays
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..m {
        let mut rows: Vec<LatVector> = basis.iter().map(|&j| rays[j].clone()).collect();
        rows.push(rays[i].clone());
        if IMatrix::from_rows(rows, r).rank() == basis.len() + 1 {
            basis.push(i);
        }
        if basis.len() == r {
            break;
        }
    }
    if basis.len() < r {
        return vec![(IMatrix::identity(r), (0..m).collect())];
    }
    let pair: Vec<Vec<Int>> = rays.iter().map(|a| rays.iter().map(|b| gram.bilinear(a, b)).collect()).collect();
    let vb_inv = IMatrix::from_cols(basis.iter().map(|&j| rays[j].clone()).collect(), r).to_rat().inverse().expect("basis");
    let index: BTreeMap<&LatVector, usize> = rays.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = Vec::new();
    let mut images: Vec<usize> = Vec::new();
    fn rec(
        gram: &IMatrix,
        rays: &[LatVector],
        basis: &[usize],
        pair: &[Vec<Int>],
        vb_inv: &crate::matrix::QMatrix,
        index: &BTreeMap<&LatVector, usize>,
        images: &mut Vec<usize>,
        out: &mut Vec<(IMatrix, Vec<usize>)>,
    ) {
        let r = gram.nrows();
        let t = images.len();
        if t == basis.len() {
            let target = IMatrix::from_cols(images.iter().map(|&j| rays[j].clone()).collect(), r).to_rat();
            let Some(phi) = target.mul(vb_inv).to_int() else { return };
            if !preserves_form(&phi, gram) {
                return;
            }
            let mut perm = Vec::with_capacity(rays.len());
            for v in rays {
                match index.get(&phi.mul_vec(v)) {
                    Some(&j) => perm.push(j),
                    None => return,
                }
            }
            out.push((phi, perm));
            return;
        }
        let i = basis[t];
        for j in 0..rays.len() {
            if images.contains(&j) || pair[j][j] != pair[i][i] {
                continue;
            }
            if (0..t).all(|s| pair[j][images[s]] == pair[i][basis[s]]) {
                images.push(j);
                rec(gram, rays, basis, pair, vb_inv, index, images, out);
                images.pop();
            }
        }
    }
    rec(gram, rays, &basis, &pair, &vb_inv, &index, &mut images, &mut out);
    out.sort_by(|a, b| {
        let ka = (!a.0.is_identity(), a.0.to_rows());
        let kb = (!b.0.is_identity(), b.0.to_rows());
        ka.cmp(&kb)
    });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Symmetry {
    #[serde(with = "crate::json::matrix")]
    pub matrix: IMatrix,
    pub ray_permutation: Vec<usize>,
    pub permutes_walls: bool,
    /// Image chamber of each chamber, when the walls are permuted.
    pub chamber_permutation: Option<Vec<usize>>,
    pub membership: Membership,
}

/// Region symmetries with their Gamma_M verdicts.
pub fn polyhedron_symmetries(m: &Sublattice, g: &GlueData, region: &Region, complex: &ChamberComplex) -> Result<Vec<Symmetry>> {
    let gram = m.gram();
    let wall_set: BTreeSet<LatVector> = complex.walls.iter().map(|w| canonical_sign(w)).collect();
    let mut out = Vec::new();
    for (phi, perm) in region_isometries(gram, &region.rays) {
        let permutes = complex.walls.iter().all(|w| wall_set.contains(&canonical_sign(&phi.mul_vec(w))));
        let (chamber_permutation, membership) = if permutes {
            let cp: Option<Vec<usize>> = complex.chambers.iter().map(|c| locate(gram, complex, &phi.mul_vec(&c.witness))).collect();
            let cp = cp.ok_or_else(|| Error::Input("symmetry moved a chamber witness onto a wall".into()))?;
            (Some(cp), gamma_membership(m, g, &phi, &[])?)
        } else {
            let mem = Membership { verdict: Verdict::NonMember, certificate: MembershipCertificate::WallsNotPreserved, plus_minus_id: vec![], extension: None };
            (None, mem)
        };
        out.push(Symmetry { matrix: phi, ray_permutation: perm, permutes_walls: permutes, chamber_permutation, membership });
    }
    Ok(out)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Orbits of the chambers under the symmetries whose verdict is accepted.
pub fn orbits(n: usize, symmetries: &[Symmetry], accept: impl Fn(Verdict) -> bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    for s in symmetries {
        if !accept(s.membership.verdict) {
            continue;
        }
        if let Some(p) = &s.chamber_permutation {
            for (i, &j) in p.iter().enumerate() {
                let a = find(&mut parent, i);
                let b = find(&mut parent, j);
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DeltaK {
    /// No delta in Delta_M(L_n) has delta-perp meeting the chamber.
    Empty,
    /// An explicit delta (ambient coordinates) with delta-perp meeting the chamber.
    Nonempty {
        #[serde(with = "crate::json::vec")]
        witness: LatVector,
    },
    /// Candidate projections exist but no witness was found in the search box.
    Undecided { open_projections: usize },
}

impl DeltaK {
    pub fn is_simple(&self) -> Option<bool> {
        match self {
            DeltaK::Empty => Some(true),
            DeltaK::Nonempty { .. } => Some(false),
            DeltaK::Undecided { .. } => None,
        }
    }
}

/// Searches Delta(K) for the chambers of one sublattice.
pub struct DeltaKSearch<'a> {
    m: &'a Sublattice,
    spec: &'a WallSpec,
    m_rows: IMatrix,
    /// Per required divisibility: basis of {x : G x = 0 mod k} and the slice search on it.
    slices: BTreeMap<Option<i64>, (IMatrix, SliceSearch)>,
}

/// Rows span {x in Z^n : G x = 0 mod k}.
pub fn divisible_sublattice(gram: &IMatrix, k: i64) -> IMatrix {
    let n = gram.nrows();
    let mut a = IMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, gram.get(i, j).clone());
        }
        a.set(i, n + i, Int::from(-k));
    }
    let ker = crate::snf::kernel(&a);
    IMatrix::from_rows(ker.to_rows().into_iter().map(|r| r[..n].to_vec()).collect(), n)
}

/// Two vectors of K spanning a positive definite plane.
pub fn positive_plane(k: &Sublattice) -> Option<(LatVector, LatVector)> {
    let g = k.ambient().gram();
    let kb = k.basis().to_rows();
    let mut cands: Vec<LatVector> = kb.clone();
    for i in 0..kb.len() {
        for j in i + 1..kb.len() {
            cands.push(kb[i].iter().zip(&kb[j]).map(|(a, b)| a + b).collect());
            cands.push(kb[i].iter().zip(&kb[j]).map(|(a, b)| a - b).collect());
        }
    }
    let mut pos: Vec<(Int, LatVector)> = cands.into_iter().map(|v| (g.bilinear(&v, &v), v)).filter(|(n, _)| n.is_positive()).collect();
    pos.sort();
    for (i, (n1, w1)) in pos.iter().enumerate() {
        for (n2, w2) in &pos[i + 1..] {
            let c = g.bilinear(w1, w2);
            if (n1 * n2 - &c * &c).is_positive() {
                return Some((w1.clone(), w2.clone()));
            }
        }
    }
    None
}

impl<'a> DeltaKSearch<'a> {
    pub fn new(m: &'a Sublattice, k: &Sublattice, spec: &'a WallSpec) -> Self {
        let lg = m.ambient().gram();
        let m_rows = m.basis().mul(lg);
        let mut slices = BTreeMap::new();
        if let Some((w1, w2)) = positive_plane(k) {
            let mut rows = m_rows.to_rows();
            rows.push(lg.mul_vec(&w1));
            rows.push(lg.mul_vec(&w2));
            let f = IMatrix::from_rows(rows, lg.ncols());
            for class in &spec.allowed {
                if slices.contains_key(&class.div) {
                    continue;
                }
                let b = match class.div {
                    Some(d) if d > 1 => divisible_sublattice(lg, d),
                    _ => IMatrix::identity(lg.nrows()),
                };
                let bt = b.transpose();
                if let Ok(s) = SliceSearch::new(&b.mul(lg).mul(&bt), &f.mul(&bt)) {
                    slices.insert(class.div, (b, s));
                }
            }
        }
        DeltaKSearch { m, spec, m_rows, slices }
    }

    /// The flag for a chamber given by its vertices (M coordinates).
    pub fn flag(&self, vertices: &[LatVector]) -> Result<DeltaK> {
        let gm = self.m.gram();
        let l = self.m.ambient();
        let two = Int::from(2);
        let mut open = 0usize;
        for class in &self.spec.allowed {
            let n = class.norm;
            // y = 2 delta_M has norm in (4N, 0) because both projections are negative
            let mut t = 4 * n + 2;
            while t < 0 {
                for y in crossing_vectors(gm, vertices, &Int::from(t))? {
                    let gy = gm.mul_vec(&y);
                    if gy.iter().any(|v| !(v % &two).is_zero()) {
                        continue;
                    }
                    let half: Vec<Int> = gy.iter().map(|v| v / &two).collect();
                    if solve_int(&self.m_rows, &half).is_none() {
                        continue;
                    }
                    if let Some(w) = self.witness(&half, n, class.div)? {
                        debug_assert!(crate::walls::in_lnm(self.m, &w)?);
                        return Ok(DeltaK::Nonempty { witness: w });
                    }
                    open += 1;
                }
                t += 2;
            }
        }
        let _ = l;
        Ok(if open == 0 { DeltaK::Empty } else { DeltaK::Undecided { open_projections: open } })
    }

    fn witness(&self, half: &[Int], norm: i64, div: Option<i64>) -> Result<Option<LatVector>> {
        let Some((b, slice)) = self.slices.get(&div) else { return Ok(None) };
        let l = self.m.ambient();
        let target = Int::from(norm);
        let mut offsets: Vec<(i64, i64)> = (-WITNESS_BOX..=WITNESS_BOX).flat_map(|p| (-WITNESS_BOX..=WITNESS_BOX).map(move |q| (p, q))).collect();
        offsets.sort_by_key(|&(p, q)| (p * p + q * q, p, q));
        for (p1, p2) in offsets {
            let mut rhs = half.to_vec();
            rhs.push(Int::from(p1));
            rhs.push(Int::from(p2));
            let mut found = None;
            slice.visit(&rhs, &target, |z| {
                let x = b.vec_mul(z);
                if !is_primitive_vec(&x) {
                    return ControlFlow::Continue(());
                }
                let d = l.divisibility(&x).expect("nonzero");
                if div.map_or(true, |k| d == Int::from(k)) {
                    found = Some(x);
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug)]
pub struct DeformationOptions {
    pub budget: usize,
    /// Base point for Vinberg's algorithm; chosen automatically when absent.
    pub base: Option<LatVector>,
    pub delta_k: bool,
}

impl Default for DeformationOptions {
    fn default() -> Self {
        DeformationOptions { budget: crate::vinberg::budget_from_env(), base: None, delta_k: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub admissibility: AdmissibilityReport,
    pub spec: String,
    pub region: Region,
    pub vinberg: Option<Polyhedron>,
    pub walls: WallEnumeration,
    pub complex: ChamberComplex,
    pub symmetries: Vec<Symmetry>,
    /// Orbits under the symmetries certified as members.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_count: Option<usize>,
    /// [lower, upper] when some verdict is undecided.
    pub orbit_interval: Option<[usize; 2]>,
    pub orbit_representatives: Vec<usize>,
    pub delta_k: Vec<DeltaK>,
    pub assumptions: Vec<String>,
}

/// A positive vector of small norm, lexicographically largest among those.
pub fn default_base(gram: &IMatrix) -> Option<LatVector> {
    let r = gram.nrows();
    for radius in 1..=4 {
        let best = crate::arith::box_vectors(r, radius)
            .map(|v| crate::arith::ivec(&v))
            .map(|v| (gram.bilinear(&v, &v), v))
            .filter(|(n, _)| n.is_positive())
            .min_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        if let Some((_, v)) = best {
            return Some(v);
        }
    }
    None
}

/// The region on which chambers are counted.
pub fn choose_region(m: &Sublattice, spec: &WallSpec, opts: &DeformationOptions) -> Result<(Region, Option<Polyhedron>)> {
    let gram = m.gram();
    if let Some(r) = Region::positive_cone(gram) {
        return Ok((r, None));
    }
    let roots = spec.filter(|c| c.norm == -2).ok_or_else(|| Error::Unsupported("the positive cone is not polyhedral and the spec has no norm -2 roots".into()))?;
    let base = match &opts.base {
        Some(b) => b.clone(),
        None => default_base(gram).ok_or_else(|| Error::Input("no positive vector found for the Vinberg base".into()))?,
    };
    let p = vinberg_domain(m, &roots, &base, opts.budget)?;
    if !p.is_complete() {
        return Err(Error::Limit(format!("Vinberg's algorithm did not terminate within {} steps", opts.budget)));
    }
    Ok((Region::from_polyhedron(gram, &p), Some(p)))
}

/// Deformation types of involutions of type M: chambers of the region modulo Gamma_M.
pub fn deformation_types(m: &Sublattice, n: i64, spec: &WallSpec, opts: &DeformationOptions) -> Result<DeformationReport> {
    let admissibility = is_admissible(m, n)?;
    if !admissibility.admissible {
        return Err(Error::Inadmissible(admissibility.failed_clause.clone().unwrap_or_default()));
    }
    let gram = m.gram();
    let (region, vinberg) = choose_region(m, spec, opts)?;
    let wall_spec = match region.kind {
        RegionKind::Vinberg => spec.filter(|c| c.norm != -2),
        _ => Some(spec.clone()),
    };
    let walls = match &wall_spec {
        Some(s) => enumerate_walls_in_cone(m, &region.cone(), s, &EnumOptions::default())?,
        None => WallEnumeration { classes: vec![], certificate: crate::walls::Certificate::Complete },
    };
    let complex = chamber_decomposition(gram, &region, &walls.classes)?;
    let g = glue(m)?;
    let symmetries = polyhedron_symmetries(m, &g, &region, &complex)?;
    let nch = complex.chambers.len();
    let upper = orbits(nch, &symmetries, |v| v == Verdict::Member);
    let lower = orbits(nch, &symmetries, |v| v != Verdict::NonMember);
    let undecided = symmetries.iter().any(|s| s.membership.verdict == Verdict::Undecided);
    let (orbit_count, orbit_interval) = if undecided && lower.len() != upper.len() { (None, Some([lower.len(), upper.len()])) } else { (Some(upper.len()), None) };
    let orbit_representatives = upper.iter().map(|o| o[0]).collect();
    let mut delta_k = Vec::new();
    if opts.delta_k {
        let search = DeltaKSearch::new(m, &g.k, spec);
        for c in &complex.chambers {
            delta_k.push(match &c.vertices {
                Some(v) => search.flag(v)?,
                None => DeltaK::Undecided { open_projections: 0 },
            });
        }
    }
    let mut assumptions = vec!["symmetries are the isometries of M permuting the primitive extreme rays of the region".to_string()];
    if spec.user_supplied {
        assumptions.push(format!("wall numerics {spec} are user supplied"));
    }
    if undecided {
        assumptions.push("some Gamma_M verdicts are undecided; orbit data uses certified members only".into());
    }
    Ok(DeformationReport {
        admissibility,
        spec: spec.to_string(),
        region,
        vinberg,
        walls,
        complex,
        symmetries,
        orbits: upper,
        orbit_count,
        orbit_interval,
        orbit_representatives,
        delta_k,
        assumptions,
    })
}
