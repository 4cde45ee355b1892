use parry_pascal::checks::{metric_properties, refinement};
use parry_pascal::hausdorff::{
    convergence_report, hausdorff_distance, sample_segment_set, sample_square_set, within_fattening,
};
use parry_pascal::star::{a0_approx, an_approx};
use parry_pascal::triangle::u_set;
use parry_pascal::{NumerationSystem, PointCloud, ResidueSpec};
use proptest::prelude::*;

fn phi() -> NumerationSystem {
    NumerationSystem::from_text("1,1").unwrap()
}

fn brute(a: &PointCloud, b: &PointCloud) -> f64 {
    let directed = |x: &PointCloud, y: &PointCloud| {
        x.points
            .iter()
            .map(|p| {
                y.points
                    .iter()
                    .map(|q| (p[0] - q[0]).hypot(p[1] - q[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[test]
fn square_levels() {
    let phi = phi();
    let odd = ResidueSpec::odd();
    let u4 = sample_square_set(&u_set(&phi, 4, odd).unwrap(), 1.0 / 89.0).unwrap();
    let u9 = sample_square_set(&u_set(&phi, 9, odd).unwrap(), 1.0 / 89.0).unwrap();
    let est = hausdorff_distance(&u4, &u9).unwrap();
    assert!(est.distance > 0.0 && est.distance < 0.5);
    assert!((est.distance - brute(&u4, &u9)).abs() < 1e-12);
    // cells of side 1/8 get 12 steps each to stay below 1/89
    assert_eq!(u4.spacing, 1.0 / 96.0);
    assert_eq!(u9.spacing, 1.0 / 89.0);
    assert!((est.error_bound - (u4.spacing + u9.spacing) * std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn metric_suite() {
    let phi = phi();
    let odd = ResidueSpec::odd();
    let a0 = a0_approx(&phi, 6, odd).unwrap();
    let a2 = an_approx(&a0, 2, &phi);
    let mut clouds: Vec<PointCloud> = (3..=6)
        .map(|n| sample_square_set(&u_set(&phi, n, odd).unwrap(), 1.0 / 21.0).unwrap())
        .collect();
    clouds.push(sample_segment_set(&a2, 0.01).unwrap());
    clouds.push(sample_segment_set(&a0, 0.02).unwrap());
    for outcome in metric_properties(&clouds).unwrap() {
        assert!(outcome.passed(), "{outcome}");
    }
    for n in 3..=6 {
        let outcome = refinement(&phi, n, &a2, odd).unwrap();
        assert!(outcome.passed(), "{outcome}");
    }
}

#[test]
fn convergence_table() {
    let phi = phi();
    let rows = convergence_report(&phi, ResidueSpec::odd(), &[4, 5, 6, 7, 8, 9], 10, 4, 1e-3).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows[5].distance < rows[0].distance);
    assert!(rows[5].distance + rows[5].error_bound < 0.2);
    assert!(rows.iter().all(|r| r.a_maxlen == 10 && r.a_iters == 4));
}

#[test]
fn mod_three_report() {
    let phi = phi();
    let res = ResidueSpec::new(3, 2).unwrap();
    let rows = convergence_report(&phi, res, &[3, 6], 6, 2, 1e-2).unwrap();
    assert_eq!(rows.len(), 2);
    // no entry of the single-cell level is ≡ 2
    assert!(matches!(
        convergence_report(&phi, res, &[0], 6, 2, 1e-2),
        Err(parry_pascal::Error::EmptyCloud)
    ));
    assert!(rows.iter().all(|r| r.distance.is_finite()));
}

fn cloud(max_points: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..max_points)
        .prop_map(|pts| PointCloud::new(pts.into_iter().map(|(x, y)| [x, y]).collect(), 0.05, "random").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn grid_search_matches_brute_force(a in cloud(60), b in cloud(60)) {
        let d = hausdorff_distance(&a, &b).unwrap().distance;
        prop_assert!((d - brute(&a, &b)).abs() < 1e-12);
    }

    #[test]
    fn symmetric_and_triangle(a in cloud(40), b in cloud(40), c in cloud(40)) {
        let ab = hausdorff_distance(&a, &b).unwrap().distance;
        let ba = hausdorff_distance(&b, &a).unwrap().distance;
        let bc = hausdorff_distance(&b, &c).unwrap().distance;
        let ac = hausdorff_distance(&a, &c).unwrap().distance;
        prop_assert_eq!(ab, ba);
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn fattening(a in cloud(40), b in cloud(40)) {
        let d = hausdorff_distance(&a, &b).unwrap().distance;
        prop_assert!(within_fattening(&a, &b, d).unwrap() && within_fattening(&b, &a, d).unwrap());
        if d > 0.0 {
            let shrunk = d * (1.0 - 1e-9);
            prop_assert!(!(within_fattening(&a, &b, shrunk).unwrap() && within_fattening(&b, &a, shrunk).unwrap()));
        }
    }
}
