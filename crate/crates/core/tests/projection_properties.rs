mod common;

use proptest::prelude::*;
use tropfw::matroid::{graph_matroid, graphic_matroid, uniform_matroid};
use tropfw::projection::{
    check_nonexpansive, project_bergman, project_bergman_flats, project_ultrametric_fast,
};
use tropfw::scalar::to_rational_vec;
use tropfw::trop::d_tr;

fn vector_for(p: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-20i32..20, p * (p - 1) / 2)
        .prop_map(|v| v.into_iter().map(f64::from).collect())
}

proptest! {
    #[test]
    fn projection_is_subdominant(x in (3usize..=5).prop_flat_map(vector_for)) {
        let p = (1..).find(|p| p * (p - 1) / 2 == x.len()).unwrap();
        let m = graphic_matroid(p).unwrap();
        let u = project_bergman(&m, &x).unwrap();
        prop_assert!(m.is_m_ultrametric(u.coords()).unwrap());
        prop_assert!(u.coords().iter().zip(&x).all(|(a, b)| a <= b));
        // idempotent
        prop_assert_eq!(project_bergman(&m, u.coords()).unwrap(), u.clone());
        // both routes agree exactly in rational arithmetic
        let exact = project_bergman_flats(&m, &to_rational_vec(&x)).unwrap();
        let fast = project_ultrametric_fast(p, &to_rational_vec(&x)).unwrap();
        prop_assert_eq!(exact, fast);
    }

    #[test]
    fn projection_is_nonexpansive(
        x in vector_for(4),
        y in vector_for(4),
    ) {
        let m = graphic_matroid(4).unwrap();
        prop_assert!(check_nonexpansive(&m, &x, &y).unwrap());
    }

    #[test]
    fn projection_commutes_with_constant_shifts(x in vector_for(4), c in -5i32..5) {
        let m = graphic_matroid(4).unwrap();
        let shifted: Vec<f64> = x.iter().map(|v| v + f64::from(c)).collect();
        let a = project_bergman(&m, &x).unwrap();
        let b = project_bergman(&m, &shifted).unwrap();
        prop_assert!(a.torus_eq(&b));
    }

    #[test]
    fn small_noise_keeps_the_cone(seed in any::<u64>(), p in 4usize..=5) {
        let mut rng = common::rng(seed);
        let (w, _) = common::random_ultrametric(&mut rng, p);
        let m = graphic_matroid(p).unwrap();
        let half = 0.499 * m.w_min(&w).unwrap();
        let eps = common::uniform_vec(&mut rng, w.len(), -half, half);
        let noisy: Vec<f64> = w.iter().zip(&eps).map(|(a, b)| a + b).collect();
        let proj = project_bergman(&m, &noisy).unwrap();
        prop_assert_eq!(m.cone_signature(proj.coords()).unwrap(), m.cone_signature(&w).unwrap());
    }
}

#[test]
fn non_complete_graph_projection() {
    // 4-cycle: the single circuit must attain its max twice
    let m = graph_matroid(&[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let u = project_bergman(&m, &[1.0, 4.0, 2.0, 3.0]).unwrap();
    assert_eq!(u.coords(), &[1.0, 3.0, 2.0, 3.0]);
    assert!(m.is_m_ultrametric(u.coords()).unwrap());
}

#[test]
fn uniform_matroid_projection_is_in_fan() {
    let m = uniform_matroid(3, 5).unwrap();
    let x = [4.0, -1.0, 2.5, 7.0, 0.0];
    let u = project_bergman(&m, &x).unwrap();
    assert!(m.is_m_ultrametric(u.coords()).unwrap());
    assert!(d_tr(&x, u.coords()).unwrap() > 0.0);
}
