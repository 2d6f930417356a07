use cubic_hecke::error::Error;
use cubic_hecke::ring::{LaurentCoeff, SpecPoint, SpecValue};

fn x() -> LaurentCoeff {
    // 3a^2 c^-1 - b + 5
    &(&LaurentCoeff::monomial(2, 0, -1, 3).unwrap() - &LaurentCoeff::b())
        + &LaurentCoeff::from_int(5)
}

#[test]
fn negative_exponents_rejected() {
    assert!(matches!(
        LaurentCoeff::monomial(-1, 0, 0, 1),
        Err(Error::NegativeExponent { .. })
    ));
}

#[test]
fn json_round_trip_and_order() {
    let v = x().to_json();
    let keys: Vec<(i64, i64, i64)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["ea"].as_i64().unwrap(),
                t["eb"].as_i64().unwrap(),
                t["ec"].as_i64().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(v["terms"][0]["k"].is_string());
    assert_eq!(LaurentCoeff::from_json(&v).unwrap(), x());
}

#[test]
fn big_coefficients() {
    let y = LaurentCoeff::from_int(1 << 40).pow(3);
    let back = LaurentCoeff::from_json(&y.to_json()).unwrap();
    assert_eq!(back, y);
    assert_eq!(
        y.to_json()["terms"][0]["k"],
        "1329227995784915872903807060280344576"
    );
}

#[test]
fn phi_coeff_is_an_involution() {
    let y = &x() * &LaurentCoeff::a().pow(2);
    assert_eq!(y.phi_coeff().phi_coeff(), y);
    assert_eq!(LaurentCoeff::c().phi_coeff(), LaurentCoeff::c_inv());
}

#[test]
fn eval_rational_and_modular() {
    let q = SpecPoint::new(0, 1, 2, 3).unwrap();
    assert_eq!(x().eval(&q).unwrap().to_string(), "4");
    let p = SpecPoint::new(7, 1, 2, 3).unwrap();
    assert_eq!(x().eval(&p).unwrap(), SpecValue::Mod(4, 7));
}

#[test]
fn zero_c_rejected() {
    assert!(matches!(SpecPoint::new(0, 1, 1, 0), Err(Error::ZeroC)));
    assert!(matches!(SpecPoint::new(5, 1, 1, 10), Err(Error::ZeroC)));
}
