use motive_core::curve::{
    arithmetic_genus, delta, delta_oracle, jacobian_profile, local_units_structure, plucker, rr_check, rr_nonspecial,
    theta_profile, uniformization_check, CurveProfile, Modulus,
};
use proptest::prelude::*;

fn modulus(max_places: usize, max_n: u32) -> impl Strategy<Value = Modulus> {
    prop::collection::vec(1..=max_n, 1..=max_places).prop_map(|ns| Modulus::from_multiplicities(&ns).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn delta_matches_jet_oracle(m in modulus(4, 3), g in 0u32..4) {
        let c = CurveProfile::new(g, m);
        prop_assert_eq!(delta(&c), delta_oracle(&c).unwrap());
    }

    #[test]
    fn jacobian_dimensions_add_up(m in modulus(4, 4), g in 0u32..4) {
        let c = CurveProfile::new(g, m.clone());
        let j = jacobian_profile(&c).unwrap();
        prop_assert_eq!(j.dim_total, j.dim_abelian + j.torus_rank + j.unipotent_dim);
        prop_assert_eq!(j.dim_total, arithmetic_genus(&c));
        prop_assert_eq!(j.torus_rank as usize, m.support_size() - 1);
        let units = local_units_structure(&m).unwrap();
        prop_assert_eq!(units.torus_rank + units.unipotent_dim, m.degree());
    }

    #[test]
    fn uniformization_lattice_fits(m in modulus(4, 3), g in 0u32..4) {
        let c = CurveProfile::new(g, m.clone());
        let u = uniformization_check(&c).unwrap();
        prop_assert!(u.lattice_rank <= 2 * u.dim);
        // Compact exactly when there is no unipotent part and no torus.
        let j = jacobian_profile(&c).unwrap();
        prop_assert_eq!(u.compact, j.torus_rank == 0 && j.unipotent_dim == 0);
    }

    #[test]
    fn theta_is_a_divisor(m in modulus(3, 3), g in 0u32..4) {
        let c = CurveProfile::new(g, m);
        match theta_profile(&c) {
            Ok(t) => {
                prop_assert_eq!(t.theta_dim + 1, t.jacobian_dim);
                prop_assert_eq!(t.surjective_at, t.jacobian_dim);
            }
            Err(_) => prop_assert_eq!(arithmetic_genus(&c), 0),
        }
    }

    #[test]
    fn riemann_roch_nonspecial(pi in 0i64..6, extra in 1i64..6) {
        let deg = 2 * pi - 2 + extra;
        let (l, i) = rr_nonspecial(deg, pi).unwrap();
        prop_assert_eq!(i, 0);
        prop_assert!(rr_check(l, i, deg, pi));
        prop_assert!(!rr_check(l + 1, i, deg, pi));
    }

    #[test]
    fn plucker_genus(d in 3u32..20) {
        let p = plucker(d).unwrap();
        prop_assert_eq!(p.arithmetic_genus, ((d as i64) - 1) * ((d as i64) - 2) / 2);
    }
}

#[test]
fn classical_examples() {
    let node = CurveProfile::new(0, Modulus::from_multiplicities(&[1, 1]).unwrap());
    let cusp = CurveProfile::new(0, Modulus::from_multiplicities(&[2]).unwrap());
    assert_eq!(delta(&node), 1);
    assert_eq!(delta(&cusp), 1);
    let jn = jacobian_profile(&node).unwrap();
    assert_eq!((jn.dim_total, jn.torus_rank, jn.unipotent_dim), (1, 1, 0));
    let jc = jacobian_profile(&cusp).unwrap();
    assert_eq!((jc.dim_total, jc.torus_rank, jc.unipotent_dim), (1, 0, 1));
    let cubic = plucker(3).unwrap();
    assert_eq!(cubic.geometric_genus(delta(&node)), 0);
    assert!(plucker(2).is_err());
    let big = CurveProfile::new(0, Modulus::from_multiplicities(&[13]).unwrap());
    assert!(delta_oracle(&big).is_err());
}
