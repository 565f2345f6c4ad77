use hyperlat::arith::{ivec, qvec, Int, Rat};
use hyperlat::chambers::{deformation_types, DeformationOptions};
use hyperlat::discriminant::DiscriminantGroup;
use hyperlat::isometry::{extend_isometry, extend_stable, fixed_lattice, involution_from_sublattice, is_stable, reflection, restrict};
use hyperlat::membership::Verdict;
use hyperlat::presets::{EX_COMP, EX_FOUR};
use hyperlat::spinor::{in_monodromy, real_spinor_norm};
use hyperlat::sublattice::{glue, Sublattice};
use hyperlat::vinberg::vinberg_domain;
use hyperlat::walls::{enumerate_walls_in_cone, is_wall_divisor_n2, meets_cone, ConeDescription, EnumOptions, WallClass, WallSpec};
use hyperlat::{IMatrix, LatVector, Lattice, QMatrix};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn blocks() -> Vec<Lattice> {
    vec![
        Lattice::u(),
        Lattice::u().scaled(&Int::from(2)),
        Lattice::diag(2).unwrap(),
        Lattice::diag(-2).unwrap(),
        Lattice::diag(-4).unwrap(),
        Lattice::diag(6).unwrap(),
    ]
}

fn small_lattice(idx: &[usize]) -> Lattice {
    let b = blocks();
    let parts: Vec<&Lattice> = idx.iter().map(|&i| &b[i % b.len()]).collect();
    Lattice::direct_sum(&parts)
}

fn rows_from(l: &Lattice, k: usize, coeffs: &[i64]) -> Vec<Vec<i64>> {
    let n = l.rank();
    (0..k).map(|i| (0..n).map(|j| coeffs[(i * n + j) % coeffs.len()]).collect()).collect()
}

/// A primitive nondegenerate S with nondegenerate complement, if the rows give one.
fn nice_sublattice(l: &Lattice, rows: &[Vec<i64>]) -> Option<Sublattice> {
    let s = Sublattice::from_i64(l, rows).ok()?.saturate();
    if s.rank() == 0 || s.is_degenerate() || s.orthogonal_complement().is_err() {
        return None;
    }
    Some(s)
}

fn integral_reflection(l: &Lattice, v: &[i64]) -> Option<IMatrix> {
    let v = ivec(v);
    if l.norm(&v).ok()?.is_zero() {
        return None;
    }
    reflection(l, &v).ok()
}

/// Reflections of L_2 in vectors of norm 2 and -2 with small support.
fn l2_reflection(seed: &[i64]) -> Option<IMatrix> {
    let support = [0usize, 1, 2, 3, 6, 8, 22];
    let mut v = vec![0i64; 23];
    for (i, &c) in support.iter().zip(seed) {
        v[*i] = c;
    }
    let l = Lattice::l2();
    let n = l.norm(&ivec(&v)).unwrap();
    if n == Int::from(2) || n == Int::from(-2) {
        reflection(&l, &ivec(&v)).ok()
    } else {
        None
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_is_product_of_invariant_factors(entries in prop::collection::vec(-3i64..4, 21), r in 1usize..6) {
        let mut g = vec![vec![0i64; r]; r];
        let mut it = entries.iter();
        for i in 0..r {
            for j in 0..=i {
                let x = *it.next().unwrap();
                g[i][j] = if i == j { 2 * x } else { x };
                g[j][i] = g[i][j];
            }
        }
        let gram = IMatrix::from_i64(&g);
        prop_assume!(!gram.det().is_zero());
        let l = Lattice::new(gram).unwrap();
        let d = DiscriminantGroup::new(l.gram()).unwrap();
        prop_assert_eq!(l.det().abs(), d.invariant_factors.iter().product::<Int>());
        prop_assert!(d.invariant_factors.iter().all(|f| *f > Int::one()));
    }

    #[test]
    fn signature_is_additive(a in prop::collection::vec(0usize..6, 1..4), b in prop::collection::vec(0usize..6, 1..4)) {
        let (la, lb) = (small_lattice(&a), small_lattice(&b));
        let sum = Lattice::direct_sum(&[&la, &lb]);
        let (pa, qa) = la.signature();
        let (pb, qb) = lb.signature();
        prop_assert_eq!(sum.signature(), (pa + pb, qa + qb));
    }

    #[test]
    fn projection_splits_orthogonally(idx in prop::collection::vec(0usize..6, 2..4), coeffs in prop::collection::vec(-2i64..3, 24), k in 1usize..3, v in prop::collection::vec(-3i64..4, 8)) {
        let l = small_lattice(&idx);
        let rows = rows_from(&l, k.min(l.rank() - 1), &coeffs);
        let Some(s) = nice_sublattice(&l, &rows) else { return Ok(()) };
        let v: LatVector = ivec(&v[..l.rank().min(v.len())]);
        prop_assume!(v.len() == l.rank());
        let (vs, vp) = s.project(&v).unwrap();
        let back: Vec<Rat> = vs.iter().zip(&vp).map(|(a, b)| a + b).collect();
        prop_assert_eq!(back, qvec(&v));
        prop_assert!(l.inner_q(&vs, &vp).is_zero());
        prop_assert_eq!(l.inner_q(&vs, &vs) + l.inner_q(&vp, &vp), Rat::from(l.norm(&v).unwrap()));
    }

    #[test]
    fn saturation_index(idx in prop::collection::vec(0usize..6, 2..4), coeffs in prop::collection::vec(-3i64..4, 24), k in 1usize..3) {
        let l = small_lattice(&idx);
        let rows = rows_from(&l, k.min(l.rank()), &coeffs);
        let Ok(s) = Sublattice::from_i64(&l, &rows) else { return Ok(()) };
        let sat = s.saturate();
        prop_assert!(sat.is_primitive());
        let coords: Vec<Vec<Int>> = s.basis().to_rows().iter().map(|r| sat.int_coords_of(r).expect("S inside its saturation")).collect();
        let c = IMatrix::from_rows(coords, sat.rank());
        prop_assert_eq!(c.det().abs(), s.saturation_index());
    }

    #[test]
    fn glue_is_anti_isometry(idx in prop::collection::vec(0usize..6, 2..4), coeffs in prop::collection::vec(-2i64..3, 24), k in 1usize..3) {
        let l = small_lattice(&idx);
        let rows = rows_from(&l, k.min(l.rank() - 1), &coeffs);
        let Some(s) = nice_sublattice(&l, &rows) else { return Ok(()) };
        let g = glue(&s).unwrap();
        prop_assert!(g.is_anti_isometry());
        prop_assert!(g.order_identity_holds(&l.det().abs()));
    }

    #[test]
    fn reflections_are_involutions_fixing_the_hyperplane(idx in prop::collection::vec(0usize..6, 1..4), v in prop::collection::vec(-2i64..3, 8)) {
        let l = small_lattice(&idx);
        prop_assume!(v.len() >= l.rank());
        let v = &v[..l.rank()];
        let Some(r) = integral_reflection(&l, v) else { return Ok(()) };
        prop_assert!(r.mul(&r).is_identity());
        let fixed = fixed_lattice(&l, &r).unwrap();
        prop_assert_eq!(fixed.rank(), l.rank() - 1);
        for row in fixed.basis().to_rows() {
            prop_assert!(l.inner(&row, &ivec(v)).unwrap().is_zero());
        }
        let img = r.mul_vec(&ivec(v));
        prop_assert_eq!(img, ivec(v).iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn spinor_norm_is_multiplicative(idx in prop::collection::vec(0usize..6, 1..4), a in prop::collection::vec(-2i64..3, 8), b in prop::collection::vec(-2i64..3, 8), c in prop::collection::vec(-2i64..3, 8)) {
        let l = small_lattice(&idx);
        let n = l.rank();
        prop_assume!(a.len() >= n);
        let refl: Vec<IMatrix> = [&a, &b, &c].iter().filter_map(|v| integral_reflection(&l, &v[..n])).collect();
        prop_assume!(refl.len() >= 2);
        let s1 = refl[0].clone();
        let s2 = refl[1..].iter().fold(IMatrix::identity(n), |acc, r| acc.mul(r));
        let prod = real_spinor_norm(&l, &s1.mul(&s2)).unwrap();
        prop_assert_eq!(prod, real_spinor_norm(&l, &s1).unwrap() * real_spinor_norm(&l, &s2).unwrap());
    }

    #[test]
    fn involution_round_trip(idx in prop::collection::vec(0usize..6, 1..4), v in prop::collection::vec(-2i64..3, 8), neg in any::<bool>()) {
        let l = small_lattice(&idx);
        prop_assume!(v.len() >= l.rank());
        let Some(r) = integral_reflection(&l, &v[..l.rank()]) else { return Ok(()) };
        let iota = if neg { r.neg() } else { r };
        let m = fixed_lattice(&l, &iota).unwrap();
        prop_assume!(!m.is_degenerate());
        prop_assert_eq!(involution_from_sublattice(&m).unwrap(), Some(iota));
    }

    #[test]
    fn stable_extension_restricts_correctly(idx in prop::collection::vec(0usize..6, 2..4), coeffs in prop::collection::vec(-2i64..3, 24), k in 1usize..3, root in prop::collection::vec(-2i64..3, 3)) {
        let l = small_lattice(&idx);
        let rows = rows_from(&l, k.min(l.rank() - 1), &coeffs);
        let Some(s) = nice_sublattice(&l, &rows) else { return Ok(()) };
        let sl = s.as_lattice().unwrap();
        let v = ivec(&root[..s.rank().min(root.len())]);
        prop_assume!(v.len() == s.rank());
        let n = sl.norm(&v).unwrap();
        prop_assume!(n == Int::from(2) || n == Int::from(-2));
        // reflections in roots act trivially on A_S
        let sigma = reflection(&sl, &v).unwrap();
        let ext = extend_stable(&s, &sigma).unwrap();
        prop_assert_eq!(restrict(&s, &ext), Some(sigma));
        let k = s.orthogonal_complement().unwrap();
        for row in k.basis().to_rows() {
            prop_assert_eq!(ext.mul_vec(&row), row);
        }
        prop_assert!(is_stable(&l, &ext).unwrap());
    }

    #[test]
    fn extension_matches_lift_oracle(idx in prop::collection::vec(0usize..6, 2..4), coeffs in prop::collection::vec(-2i64..3, 24), k in 1usize..3, phi_kind in 0usize..3, psi_neg in any::<bool>(), root in prop::collection::vec(-2i64..3, 3)) {
        let l = small_lattice(&idx);
        let rows = rows_from(&l, k.min(l.rank() - 1), &coeffs);
        let Some(s) = nice_sublattice(&l, &rows) else { return Ok(()) };
        let g = glue(&s).unwrap();
        let r = s.rank();
        let phi = match phi_kind {
            0 => IMatrix::identity(r),
            1 => IMatrix::identity(r).neg(),
            _ => {
                let v = &root[..r.min(root.len())];
                prop_assume!(v.len() == r);
                match integral_reflection(&s.as_lattice().unwrap(), v) {
                    Some(m) => m,
                    None => return Ok(()),
                }
            }
        };
        let psi = if psi_neg { IMatrix::identity(g.k.rank()).neg() } else { IMatrix::identity(g.k.rank()) };
        let ext = extend_isometry(&g, &phi, &psi).unwrap();
        // oracle: the unique rational map with the prescribed images of the S and K bases
        let n = l.rank();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for (sub, m) in [(&s, &phi), (&g.k, &psi)] {
            for j in 0..sub.rank() {
                src.push(qvec(sub.basis().row(j)));
                dst.push(sub.to_ambient(&qvec(&m.col(j))));
            }
        }
        let x = QMatrix::from_cols(src, n);
        let y = QMatrix::from_cols(dst, n);
        let map = y.mul(&x.inverse().unwrap());
        prop_assert_eq!(ext.compatible, map.to_int().is_some());
        if let Some(m) = ext.matrix {
            prop_assert_eq!(m.to_rat(), map);
        }
    }

    #[test]
    fn wall_divisors_are_isometry_invariant(delta in prop::collection::vec(-3i64..4, 23), seeds in prop::collection::vec(prop::collection::vec(-1i64..2, 7), 1..4)) {
        let l = Lattice::l2();
        let sigma = seeds.iter().filter_map(|s| l2_reflection(s)).fold(IMatrix::identity(23), |acc, r| acc.mul(&r));
        let d = ivec(&delta);
        prop_assume!(!d.iter().all(|x| x.is_zero()));
        prop_assert_eq!(is_wall_divisor_n2(&l, &d).unwrap(), is_wall_divisor_n2(&l, &sigma.mul_vec(&d)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn monodromy_closed_under_inverse(seeds in prop::collection::vec(prop::collection::vec(-1i64..2, 7), 1..4)) {
        let l = Lattice::l2();
        let refl: Vec<IMatrix> = seeds.iter().filter_map(|s| l2_reflection(s)).collect();
        prop_assume!(!refl.is_empty());
        let sigma = refl.iter().fold(IMatrix::identity(23), |acc, r| acc.mul(r));
        let inverse = refl.iter().rev().fold(IMatrix::identity(23), |acc, r| acc.mul(r));
        prop_assert!(sigma.mul(&inverse).is_identity());
        prop_assert_eq!(in_monodromy(&l, &sigma, 2).unwrap(), in_monodromy(&l, &inverse, 2).unwrap());
    }

    #[test]
    fn enumeration_ignores_ray_order(perm in Just(vec![0usize, 1, 2, 3, 4]).prop_shuffle()) {
        let m = EX_FOUR.sublattice().unwrap();
        let rays = [[1, 0, 0, 0], [1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [2, -1, -1, -1]];
        let spec = WallSpec::n2().filter(|c| c.norm == -10).unwrap();
        let base = enumerate_walls_in_cone(&m, &ConeDescription::from_rays(rays.iter().map(|r| ivec(r)).collect()), &spec, &EnumOptions::default()).unwrap();
        let cone = ConeDescription::from_rays(perm.iter().map(|&i| ivec(&rays[i])).collect());
        let shuffled = enumerate_walls_in_cone(&m, &cone, &spec, &EnumOptions::default()).unwrap();
        prop_assert_eq!(&base.classes, &shuffled.classes);
        for c in &shuffled.classes {
            prop_assert!(meets_cone(&m, &m.to_ambient_int(c), &cone, true).unwrap());
        }
    }
}

#[test]
fn vinberg_domains_satisfy_acceptance_and_emptiness() {
    let roots = WallSpec::new(vec![WallClass { norm: -2, div: None }], true).unwrap();
    let l = Lattice::l2();
    let c = [(0usize, 1i64), (1, 1)];
    let d = [(2usize, 1i64), (3, -1)];
    let dd = [(4usize, 1i64), (5, -1)];
    let e = [(22usize, 1i64)];
    let cases: Vec<Vec<&[(usize, i64)]>> = vec![vec![&c, &d], vec![&c, &d, &e], vec![&c, &d, &dd, &e]];
    for rows in cases {
        let m = Sublattice::from_i64(&l, &rows.iter().map(|r| {
            let mut v = vec![0i64; 23];
            for &(i, x) in r.iter() {
                v[i] = x;
            }
            v
        }).collect::<Vec<_>>()).unwrap();
        let mut base = vec![Int::zero(); m.rank()];
        base[0] = Int::one();
        let p = vinberg_domain(&m, &roots, &base, 10_000).unwrap();
        assert!(p.is_complete());
        let g = m.gram();
        // inward normals of negative norm: distinct facets pair non-negatively here
        for (i, a) in p.facets.iter().enumerate() {
            for b in &p.facets[i + 1..] {
                assert!(!g.bilinear(a, b).is_negative(), "{a:?} {b:?}");
            }
        }
        for v in hyperlat::arith::box_vectors(m.rank(), 2).map(|v| ivec(&v)) {
            if g.bilinear(&v, &v) != Int::from(-2) {
                continue;
            }
            let signs: Vec<Int> = p.vertices.iter().map(|x| g.bilinear(&v, x)).collect();
            assert!(signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive()), "root {v:?} splits the domain");
        }
        let inside = enumerate_walls_in_cone(&m, &ConeDescription::from_rays(p.vertices.clone()), &roots, &EnumOptions::default()).unwrap();
        assert!(inside.classes.is_empty());
    }
}

#[test]
fn orbits_partition_and_members_transport_chambers() {
    for p in [EX_COMP, EX_FOUR] {
        let m = p.sublattice().unwrap();
        let rep = deformation_types(&m, p.n, &WallSpec::n2(), &DeformationOptions::default()).unwrap();
        let n = rep.complex.chambers.len();
        let mut seen: Vec<usize> = rep.orbits.iter().flatten().copied().collect();
        seen.sort();
        assert_eq!(seen, (0..n).collect::<Vec<_>>());
        let g = m.gram();
        for s in rep.symmetries.iter().filter(|s| s.membership.verdict == Verdict::Member) {
            let perm = s.chamber_permutation.as_ref().unwrap();
            for (i, ch) in rep.complex.chambers.iter().enumerate() {
                let img = s.matrix.mul_vec(&ch.witness);
                let signs: String = rep.complex.walls.iter().map(|w| if g.bilinear(w, &img).is_positive() { '+' } else { '-' }).collect();
                assert_eq!(signs, rep.complex.chambers[perm[i]].signs);
            }
        }
    }
}
