use flowinc::algebraic::UPoly;
use flowinc::flows::Curve;
use flowinc::incidence::{
    bound_report, count_tangent_pairs, detect_joints, incidence_set, intersect_curves, parabola_grid_size, tangent_pair,
    tangent_pairs_bruteforce, BoundCounts, IncidenceOptions,
};
use flowinc::polyalg::VectorField;
use flowinc::rational::rat_vec;
use flowinc::Error;

fn line(id: u64, p: &[i64], v: &[i64]) -> Curve {
    let basis: Vec<VectorField> = (0..p.len()).map(|i| VectorField::coordinate(p.len(), i)).collect();
    Curve::from_flow(id, "line", &basis, rat_vec(v), rat_vec(p)).unwrap()
}

/// `t -> (t, a t^2 + b t + c)`
fn parabola(id: u64, a: i64, b: i64, c: i64) -> Curve {
    Curve::new(id, "parabola", vec![UPoly::x(), UPoly::from_ints(&[c, b, a])], rat_vec(&[0, c]), None).unwrap()
}

#[test]
fn shared_ids_across_families_are_distinct_curves() {
    let l1 = vec![line(0, &[0, 0], &[1, 0]), line(1, &[0, 1], &[1, 0])];
    let l2 = vec![line(0, &[0, 0], &[0, 1]), line(1, &[1, 0], &[0, 1])];
    let set = incidence_set(&l1, &l2, &IncidenceOptions::default()).unwrap();
    assert_eq!(set.count, 4);
    let pairs: Vec<(u64, u64)> = set.records.iter().map(|r| (r.id1, r.id2)).collect();
    assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
}

#[test]
fn a_family_against_itself_counts_each_pair_once() {
    let l = vec![line(0, &[0, 0], &[1, 0]), line(1, &[0, 0], &[0, 1]), line(2, &[0, 3], &[1, -1])];
    let set = incidence_set(&l, &l, &IncidenceOptions::default()).unwrap();
    assert_eq!(set.count, 3);
    assert!(set.records.iter().all(|r| r.id1 < r.id2));
    let dup = vec![line(0, &[0, 0], &[1, 0]), line(0, &[0, 1], &[1, 0])];
    assert!(incidence_set(&dup, &l, &IncidenceOptions::default()).is_err());
}

#[test]
fn tangency_and_irrational_points() {
    let axis = line(0, &[0, 0], &[1, 0]);
    let p = parabola(1, 1, 0, 0);
    let r = intersect_curves(&axis, &p).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].point.as_rational(), Some(rat_vec(&[0, 0])));
    assert_eq!(r[0].tangential, Some(true));
    assert!(tangent_pair(&axis, &p).unwrap());

    let high = line(2, &[0, 2], &[1, 0]);
    let r = intersect_curves(&high, &p).unwrap();
    assert_eq!(r.len(), 2);
    let xs: Vec<f64> = r.iter().map(|x| x.point.to_f64()[0]).collect();
    assert!((xs[0] + 2f64.sqrt()).abs() < 1e-9 && (xs[1] - 2f64.sqrt()).abs() < 1e-9, "{xs:?}");
    assert!(r.iter().all(|x| x.point.as_rational().is_none() && x.tangential == Some(false)));
    assert!(!tangent_pair(&high, &p).unwrap());
    assert!(intersect_curves(&line(3, &[0, -1], &[1, 0]), &p).unwrap().is_empty());
}

#[test]
fn overlapping_curves_are_reported() {
    let a = parabola(4, 1, 2, 3);
    let b = Curve::new(5, "shifted", vec![UPoly::from_ints(&[1, 1]), UPoly::from_ints(&[6, 4, 1])], rat_vec(&[1, 6]), None).unwrap();
    assert_eq!(intersect_curves(&a, &b).unwrap_err(), Error::InfiniteIntersection(4, 5));
}

#[test]
fn tangent_pair_counts_match_brute_force() {
    assert_eq!((1..=3).map(parabola_grid_size).collect::<Vec<_>>(), vec![8, 135, 1120]);
    for n in 1..=2u32 {
        let fast = count_tangent_pairs(n as u64).unwrap();
        assert_eq!(fast, tangent_pairs_bruteforce(n, 2).unwrap() as u128, "N = {n}");
    }
    assert_eq!(count_tangent_pairs(1).unwrap(), 4);
    assert_eq!(count_tangent_pairs(2).unwrap(), 265);
}

#[test]
fn axis_grid_joints() {
    let mut ls = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            ls.push(line(ls.len() as u64, &[0, a, b], &[1, 0, 0]));
            ls.push(line(ls.len() as u64, &[a, 0, b], &[0, 1, 0]));
            ls.push(line(ls.len() as u64, &[a, b, 0], &[0, 0, 1]));
        }
    }
    let joints = detect_joints(&ls, 3, 1).unwrap();
    assert_eq!(joints.len(), 8);
    assert!(joints.iter().all(|j| j.curves.len() == 3 && j.multiplicity == 1));
}

#[test]
fn bound_report_values() {
    let counts = BoundCounts { l1: 8, l2: 8, lines: 8, incidences: 20, joints: 8, n: 3 };
    let rep = bound_report(counts, 20).unwrap();
    assert!((rep.joints_rhs.to_f64() - 22.627417).abs() < 1e-6);
    // (64)^(2/3) = 16, plus 8 + 8
    assert!((rep.multijoint_rhs.as_ref().unwrap().to_f64() - 32.0).abs() < 1e-12);
    assert!((rep.simple_rhs.to_f64() - (8.0 + 8f64.sqrt() * 8.0)).abs() < 1e-9);
    assert!(rep.warnings.is_empty());
    let planar = bound_report(BoundCounts { n: 2, lines: 3, ..Default::default() }, 20).unwrap();
    assert!(planar.multijoint_rhs.is_none() && !planar.warnings.is_empty());
    assert!(bound_report(BoundCounts { n: 1, ..Default::default() }, 20).is_err());
}
