use nilharm::catalog;
use nilharm::orbit::OrbitData;
use nilharm::rational::unit_vec;
use nilharm::twist::{symbols, twisted_convolve, verify_pedersen_identities, PedersenCalculus, PredualGroup};

fn setup() -> (PedersenCalculus, PredualGroup) {
    let calc = PedersenCalculus::calibrate(8.0, 128).unwrap();
    let o = OrbitData::new(&catalog::h3(), &unit_vec(3, 0)).unwrap();
    (calc, PredualGroup::from_orbit(&o).unwrap())
}

#[test]
fn identities_on_hermite_family() {
    let (calc, group) = setup();
    let fam = symbols::hermite_family(*calc.plane());
    for k in 0..fam.len() {
        let r = verify_pedersen_identities(&calc, &group, &fam[k], &fam[(k + 1) % fam.len()]).unwrap();
        assert!(r.adjoint <= 1e-8, "{k}: {r:?}");
        assert!(r.homomorphism <= 1e-3);
        assert!(r.trace <= 1e-3);
        assert!(r.isometry <= 1e-3);
    }
}

#[test]
fn inversion_round_trip() {
    let (calc, _) = setup();
    for b in symbols::hermite_family(*calc.plane()) {
        let back = calc.inverse(&calc.transform(&b).unwrap()).unwrap();
        let err = back.sub(&b).unwrap().l2_norm() / b.l2_norm();
        assert!(err <= 1e-3, "{err}");
    }
}

#[test]
fn associativity_and_submultiplicativity() {
    let (calc, group) = setup();
    let fam = symbols::hermite_family(*calc.plane());
    let (a, b, c) = (&fam[1], &fam[2], &fam[3]);
    let left = twisted_convolve(&group, &twisted_convolve(&group, a, b).unwrap(), c).unwrap();
    let right = twisted_convolve(&group, a, &twisted_convolve(&group, b, c).unwrap()).unwrap();
    let err = left.sub(&right).unwrap().l2_norm() / (a.l2_norm() * b.l2_norm() * c.l2_norm());
    assert!(err <= 1e-2, "{err}");
    let ab = twisted_convolve(&group, a, b).unwrap();
    assert!(ab.l2_norm() <= a.l2_norm() * b.l2_norm() * (1.0 + 1e-6));
}
