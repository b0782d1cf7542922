use flowinc::families::squarefree_part;
use flowinc::flows::{exp_flow, Curve, DEFAULT_TERM_CAP};
use flowinc::incidence::{detect_joints, incidence_set, IncidenceOptions};
use flowinc::liealg::{bch_product, NilpotentAlgebra};
use flowinc::models::builtin_systems;
use flowinc::partition::{partition_points, CutOptions, WeightedPoints};
use flowinc::polyalg::{apply_field, lie_bracket, Poly, VectorField};
use flowinc::rational::{frac, rat, rat_vec};
use flowinc::{Error, Rational};
use proptest::prelude::*;

fn poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..5).prop_map(|terms| {
        Poly::from_terms(3, terms.into_iter().map(|((a, b, c), k)| (vec![a, b, c], rat(k))))
    })
}

fn field3() -> impl Strategy<Value = VectorField> {
    (poly3(), poly3(), poly3()).prop_map(|(a, b, c)| VectorField::new(vec![a, b, c]).unwrap())
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn triple() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rat(), 3)
}

fn add(x: &VectorField, y: &VectorField) -> VectorField {
    x.add(y).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly3(), q in poly3(), r in poly3()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn parse_round_trip(p in poly3()) {
        prop_assert_eq!(Poly::parse(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn bracket_antisymmetry(x in field3(), y in field3()) {
        let xy = lie_bracket(&x, &y).unwrap();
        let yx = lie_bracket(&y, &x).unwrap();
        prop_assert!(add(&xy, &yx).is_zero());
    }

    #[test]
    fn bracket_jacobi(x in field3(), y in field3(), z in field3()) {
        let a = lie_bracket(&x, &lie_bracket(&y, &z).unwrap()).unwrap();
        let b = lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap();
        let c = lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap();
        prop_assert!(add(&add(&a, &b), &c).is_zero());
    }

    #[test]
    fn bracket_acts_as_commutator(x in field3(), y in field3(), f in poly3()) {
        let lhs = apply_field(&lie_bracket(&x, &y).unwrap(), &f).unwrap();
        let rhs = &apply_field(&x, &apply_field(&y, &f).unwrap()).unwrap()
            - &apply_field(&y, &apply_field(&x, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(x in field3(), f in poly3(), g in poly3()) {
        let lhs = apply_field(&x, &(&f * &g)).unwrap();
        let rhs = &(&apply_field(&x, &f).unwrap() * &g) + &(&f * &apply_field(&x, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_part_laws(c in 1u64..200_000, k in 1u64..50) {
        let psi = squarefree_part(c).unwrap();
        prop_assert_eq!(c % psi, 0);
        let q = c / psi;
        let r = (q as f64).sqrt().round() as u64;
        prop_assert_eq!(r * r, q);
        for p in 2..=((psi as f64).sqrt() as u64 + 1) {
            prop_assert!(!psi.is_multiple_of(p * p));
        }
        prop_assert_eq!(squarefree_part(c * k * k).unwrap(), psi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flow_group_law_and_invariance(s in small_rat(), t in small_rat(), seed in 0u64..1000) {
        for sys in builtin_systems() {
            let base: Vec<Rational> = (0..sys.dim).map(|i| frac(((seed as i64 + 3 * i as i64) % 7) - 3, 2)).collect();
            for (j, x) in sys.fields.iter().enumerate() {
                let c = exp_flow(x, &base, DEFAULT_TERM_CAP).unwrap();
                let mid = c.eval(&t);
                let c2 = exp_flow(x, &mid, DEFAULT_TERM_CAP).unwrap();
                prop_assert_eq!(c2.eval(&s), c.eval(&(&s + &t)), "{} field {}", sys.name, j);
                if let Some(pi) = sys.projections.get(j) {
                    prop_assert_eq!(pi.apply(&mid).unwrap(), pi.apply(&base).unwrap());
                }
            }
        }
    }

    #[test]
    fn bch_group_laws(u in triple(), v in triple(), w in triple()) {
        let a = NilpotentAlgebra::free_two_generator(2).unwrap();
        let zero = vec![rat(0); 3];
        prop_assert_eq!(bch_product(&a, &u, &zero).unwrap(), u.clone());
        prop_assert_eq!(bch_product(&a, &zero, &u).unwrap(), u.clone());
        let neg: Vec<Rational> = u.iter().map(|x| -x).collect();
        prop_assert_eq!(bch_product(&a, &u, &neg).unwrap(), zero);
        let left = bch_product(&a, &bch_product(&a, &u, &v).unwrap(), &w).unwrap();
        let right = bch_product(&a, &u, &bch_product(&a, &v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

fn line(id: u64, p: &[i64], v: &[i64]) -> Curve {
    let basis: Vec<VectorField> = (0..p.len()).map(|i| VectorField::coordinate(p.len(), i)).collect();
    Curve::from_flow(id, "line", &basis, rat_vec(v), rat_vec(p)).unwrap()
}

fn lines3() -> impl Strategy<Value = Vec<Curve>> {
    prop::collection::vec((prop::collection::vec(0i64..4, 3), prop::collection::vec(-1i64..=1, 3)), 2..14).prop_map(|ls| {
        ls.into_iter()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .enumerate()
            .map(|(i, (p, v))| line(i as u64, &p, &v))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn incidence_order_invariance(l1 in lines3(), l2 in lines3(), rot in 0usize..7) {
        let l2: Vec<Curve> = l2.into_iter().map(|mut c| { c.id += 100; c }).collect();
        let opts = IncidenceOptions::default();
        let mut shuffled = l2.clone();
        if !shuffled.is_empty() {
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
        }
        shuffled.reverse();
        let base = match incidence_set(&l1, &l2, &opts) {
            Ok(b) => b,
            Err(Error::InfiniteIntersection(..)) => {
                // overlapping lines: every ordering must report it
                let again = incidence_set(&l1, &shuffled, &opts);
                let swapped = incidence_set(&l2, &l1, &opts);
                prop_assert!(matches!(again, Err(Error::InfiniteIntersection(..))));
                prop_assert!(matches!(swapped, Err(Error::InfiniteIntersection(..))));
                return Ok(());
            }
            Err(e) => panic!("{e}"),
        };
        prop_assert_eq!(&incidence_set(&l1, &shuffled, &opts).unwrap(), &base);
        let swapped = incidence_set(&l2, &l1, &opts).unwrap();
        prop_assert_eq!(swapped.count, base.count);
        let mut pts: Vec<_> = swapped.records.iter().map(|r| (r.id2, r.id1, r.point.clone())).collect();
        pts.sort();
        let mut want: Vec<_> = base.records.iter().map(|r| (r.id1, r.id2, r.point.clone())).collect();
        want.sort();
        prop_assert_eq!(pts, want);
    }

    #[test]
    fn joints_scale_invariance(ls in lines3(), k in prop::collection::vec(prop_oneof![Just(-2i64), Just(3), Just(5)], 14)) {
        let scaled: Vec<Curve> = ls
            .iter()
            .zip(&k)
            .map(|(c, &f)| {
                let mut c = c.clone();
                let coords = c.generator_coords.take().unwrap();
                c.generator_coords = Some(coords.iter().map(|x| x * rat(f)).collect());
                c
            })
            .collect();
        match (detect_joints(&ls, 3, 1), detect_joints(&scaled, 3, 1)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(a), Err(b)) => prop_assert_eq!(std::mem::discriminant(&a), std::mem::discriminant(&b)),
            (a, b) => panic!("scaling changed the outcome: {a:?} vs {b:?}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn partition_invariants(
        pts in prop::collection::vec(((-20i64..=20, -20i64..=20), 1u64..=8), 1..40),
        rounds in 0u32..=3,
        seed in 0u64..100,
    ) {
        let points: Vec<Vec<Rational>> = pts.iter().map(|((x, y), _)| rat_vec(&[*x, *y])).collect();
        let weights: Vec<u64> = pts.iter().map(|(_, w)| *w).collect();
        let wp = WeightedPoints::new(2, points, weights.clone()).unwrap();
        let opts = CutOptions { seed, ..CutOptions::default() };
        let res = partition_points(&wp, rounds, &opts).unwrap();
        let mut seen: Vec<usize> = res.wall.clone();
        for (signs, cell) in &res.classes {
            prop_assert_eq!(signs.len(), res.cuts.len());
            prop_assert_eq!(cell.weight, cell.indices.iter().map(|&i| weights[i]).sum::<u64>());
            prop_assert!(cell.weight << rounds <= wp.total_weight(), "class {} weight {}", signs, cell.weight);
            for &i in &cell.indices {
                for (cut, ch) in res.cuts.iter().zip(signs.chars()) {
                    let v = cut.eval(&wp.points[i]).unwrap();
                    prop_assert_eq!(v > rat(0), ch == '+');
                    prop_assert!(v != rat(0));
                }
            }
            seen.extend(&cell.indices);
        }
        for &i in &res.wall {
            prop_assert!(res.cuts.iter().any(|c| c.eval(&wp.points[i]).unwrap() == rat(0)));
        }
        prop_assert_eq!(res.wall_weight, res.wall.iter().map(|&i| weights[i]).sum::<u64>());
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..wp.len()).collect::<Vec<_>>());
    }
}
