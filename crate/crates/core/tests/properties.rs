use num_integer::Integer;
use num_rational::Rational64;
use proptest::prelude::*;

use tckit::abelian::AbelianGroup;
use tckit::char_classes::{bcom_o2_algebra, k_star, phi_inv_pullback, TotalSquare};
use tckit::cocycle::{
    bundle_class, clutching_function, oriented_cocycle, power_cocycle, standard_cocycle,
    tc_invariant, tc_sum, validate, TCInvariant,
};
use tckit::commuting::{classify_component, face_map, relabelings, ComponentLabel, D4Tuple};
use tckit::f2::F2Class;
use tckit::orthogonal::loop_degree;
use tckit::smith::IntMatrix;
use tckit::surface::{surface_algebra, units_group, SurfaceKind, VirtualTerm};
use tckit::{Angle, D4Element, O2Element, O2Path};

fn o2() -> impl Strategy<Value = O2Element> {
    (-24i64..24, 1i64..7, any::<bool>()).prop_map(|(n, d, reflect)| O2Element {
        angle: Angle::from_ratio(n, d),
        reflect,
    })
}

fn d4() -> impl Strategy<Value = D4Element> {
    prop::sample::select(D4Element::ALL.to_vec())
}

fn matrix(g: O2Element) -> [[f64; 2]; 2] {
    let th = g.angle.to_radians();
    let (c, s) = (th.cos(), th.sin());
    let sign = if g.reflect { -1.0 } else { 1.0 };
    [[c, -s * sign], [s, c * sign]]
}

fn mat_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut m = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

fn near(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).abs() < 1e-9))
}

/// Fraction-free determinant.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

proptest! {
    #[test]
    fn o2_group_axioms(a in o2(), b in o2(), c in o2()) {
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * a.inverse(), O2Element::IDENTITY);
        prop_assert_eq!(O2Element::IDENTITY * a, a);
        prop_assert_eq!(a.commutes_with(b), b.commutes_with(a));
    }

    #[test]
    fn o2_matches_matrices(a in o2(), b in o2()) {
        prop_assert!(near(matrix(a * b), mat_mul(matrix(a), matrix(b))));
        let commute = near(mat_mul(matrix(a), matrix(b)), mat_mul(matrix(b), matrix(a)));
        prop_assert_eq!(a.commutes_with(b), commute);
    }

    #[test]
    fn powers_add(a in o2(), m in -6i64..6, n in -6i64..6) {
        prop_assert_eq!(a.pow(m + n), a.pow(m) * a.pow(n));
    }

    #[test]
    fn affine_loop_degree(m in -20i64..20, offset in 0i64..8) {
        let p = O2Path::affine(Rational64::from_integer(2 * m), Rational64::new(offset, 4), false);
        prop_assert_eq!(loop_degree(&p), Ok(Rational64::from_integer(m)));
        prop_assert_eq!(loop_degree(&p.reversed()), Ok(Rational64::from_integer(-m)));
    }

    #[test]
    fn powers_are_cocycles_with_closed_degree(k in -12i64..12, n in -12i64..12) {
        let c = power_cocycle(&standard_cocycle(k), n);
        prop_assert!(validate(&c).is_valid());
        let expected = if n.is_even() { n * k / 2 } else { (n - 1) * k / 2 };
        prop_assert_eq!(clutching_function(&c).and_then(|l| bundle_class(&l)), Ok(expected));
    }

    #[test]
    fn oriented_invariants(m in -20i64..20) {
        let inv = tc_invariant(&oriented_cocycle(m)).unwrap();
        prop_assert_eq!(inv.deg_minus, -inv.deg_plus);
        prop_assert_eq!(inv.a2, 0);
    }

    #[test]
    fn standard_a2_parity(k in -20i64..20) {
        let inv = tc_invariant(&standard_cocycle(k)).unwrap();
        prop_assert_eq!(inv.a2 as i64, k.rem_euclid(2));
    }

    #[test]
    fn tc_sum_is_a_group_law(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
        let x = TCInvariant::new(a, b);
        let y = TCInvariant::new(c, d);
        prop_assert_eq!(tc_sum(x, y), tc_sum(y, x));
        prop_assert_eq!(tc_sum(x, TCInvariant::ZERO), x);
        prop_assert_eq!(tc_sum(x, y).a2, x.a2 ^ y.a2);
    }

    #[test]
    fn classification_is_relabeling_invariant(t in prop::collection::vec(d4(), 0..6), p in 0usize..6) {
        let t = D4Tuple(t);
        let perm = relabelings()[p];
        prop_assert_eq!(classify_component(&t), classify_component(&t.relabel(&perm)));
        let nontrivial: std::collections::BTreeSet<_> = t.0.iter().filter(|x| !x.is_identity()).collect();
        prop_assert_eq!(
            classify_component(&t) == ComponentLabel::IdentityComponent,
            nontrivial.len() <= 1
        );
    }

    #[test]
    fn faces_commute_with_relabeling(t in prop::collection::vec(d4(), 1..6), p in 0usize..6, i in 0usize..6) {
        let t = D4Tuple(t);
        prop_assume!(i <= t.len());
        let perm = relabelings()[p];
        let lhs = face_map(i, &t.relabel(&perm)).unwrap();
        let rhs = face_map(i, &t).unwrap().relabel(&perm);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_against_minors(rows in prop::collection::vec(prop::collection::vec(-6i64..6, 3), 3)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let diag = m.smith_diagonal();
        for w in diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let g = rows.iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
        prop_assert_eq!(diag.first().copied().unwrap_or(0), g);
        let d = det(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        let product: i128 = if diag.len() == 3 { diag.iter().map(|&x| x as i128).product() } else { 0 };
        prop_assert_eq!(d.abs(), product);
        prop_assert_eq!(m.rank(), diag.len());
    }

    #[test]
    fn abelian_normal_form(orders in prop::collection::vec(2u64..13, 0..5)) {
        let g = AbelianGroup::new(0, &orders);
        prop_assert_eq!(g.torsion_order(), orders.iter().product::<u64>());
        for w in g.invariant_factors().windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let (left, right) = orders.split_at(orders.len() / 2);
        prop_assert_eq!(AbelianGroup::new(0, left).direct_sum(&AbelianGroup::new(0, right)), g);
    }

    #[test]
    fn inversion_is_a_ring_involution(a in prop::collection::btree_set(0usize..25, 0..8), b in prop::collection::btree_set(0usize..25, 0..8)) {
        let phi = phi_inv_pullback(6).unwrap();
        let alg = phi.source().clone();
        let basis = alg.basis().to_vec();
        let class = |idx: &std::collections::BTreeSet<usize>| {
            idx.iter()
                .filter(|&&i| i < basis.len())
                .fold(F2Class::zero(&alg), |acc, &i| &acc + &F2Class::from_monomial(&alg, &basis[i]))
        };
        let (x, y) = (class(&a), class(&b));
        prop_assert_eq!(phi.apply(&phi.apply(&x)), x.clone());
        prop_assert_eq!(phi.apply(&(&x * &y)), &phi.apply(&x) * &phi.apply(&y));
        let k = k_star(6).unwrap();
        prop_assert_eq!(k.apply(&phi.apply(&x)), k.apply(&x));
    }

    #[test]
    fn cartan_on_random_classes(a in prop::collection::btree_set(0usize..12, 0..5), b in prop::collection::btree_set(0usize..12, 0..5)) {
        let alg = bcom_o2_algebra(10).unwrap();
        let sq = TotalSquare::bcom_o2(&alg).unwrap();
        let low: Vec<_> = alg.basis().iter().filter(|m| alg.degree(m) <= 2).cloned().collect();
        let class = |idx: &std::collections::BTreeSet<usize>| {
            idx.iter()
                .filter(|&&i| i < low.len())
                .fold(F2Class::zero(&alg), |acc, &i| &acc + &F2Class::from_monomial(&alg, &low[i]))
        };
        let (x, y) = (class(&a), class(&b));
        prop_assert_eq!(
            sq.apply_strict(&(&x * &y)).unwrap(),
            &sq.apply_strict(&x).unwrap() * &sq.apply_strict(&y).unwrap()
        );
    }

    #[test]
    fn total_sw_is_additive(g in 1u32..4, lines in prop::collection::vec((0usize..6, -3i64..3), 0..5), e in -2i64..2) {
        let alg = surface_algebra(SurfaceKind::Orientable(g)).unwrap();
        let names = alg.degree_one_names();
        let mut terms: Vec<(VirtualTerm, i64)> = lines
            .iter()
            .map(|&(i, m)| (VirtualTerm::Line(alg.generator(&names[i % names.len()]).unwrap()), m))
            .collect();
        terms.push((VirtualTerm::PulledBackE1, e));
        let (left, right) = terms.split_at(terms.len() / 2);
        let whole = alg.total_sw(&terms).unwrap();
        let parts = alg.unit_mul(&alg.total_sw(left).unwrap(), &alg.total_sw(right).unwrap());
        prop_assert_eq!(whole, parts);
    }
}

#[test]
fn total_sw_reaches_every_unit() {
    for kind in [
        SurfaceKind::Sphere,
        SurfaceKind::Orientable(1),
        SurfaceKind::Orientable(2),
        SurfaceKind::NonOrientable(1),
        SurfaceKind::NonOrientable(3),
    ] {
        let alg = surface_algebra(kind).unwrap();
        let group = units_group(&alg).unwrap();
        let names = alg.degree_one_names();
        let mut reached = std::collections::BTreeSet::new();
        for bits in 0u32..1 << (names.len() + 1) {
            let mut terms: Vec<(VirtualTerm, i64)> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, n)| (VirtualTerm::Line(alg.generator(n).unwrap()), 1))
                .collect();
            if bits >> names.len() & 1 == 1 {
                terms.push((VirtualTerm::PulledBackE1, 1));
            }
            reached.insert(alg.total_sw(&terms).unwrap());
        }
        assert_eq!(reached.len(), group.order(), "{kind}");
    }
}

#[test]
fn orientable_units_square_to_one() {
    for g in 1..=4 {
        let alg = surface_algebra(SurfaceKind::Orientable(g)).unwrap();
        for u in alg.all_units() {
            assert_eq!(alg.unit_mul(&u, &u), alg.unit_one());
        }
    }
}
