use growthrate::json::*;
use growthrate::Error;
use growthrate_core::chartab::{build_cyclic, build_dihedral, build_semidirect, build_symmetric, RepCharacter};
use growthrate_core::exact::{BigRational, Cyclotomic};
use growthrate_core::growth::{asymptotic_a, exact_b};
use growthrate_core::modular::{action_matrix_klein, bundled_matrix, KleinIndec};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn rationals_always_carry_a_denominator() {
    assert_eq!(format_rational(&r(3, 1)), "3/1");
    assert_eq!(format_rational(&r(-2, 6)), "-1/3");
    assert_eq!(parse_rational("-1/3").unwrap(), r(-1, 3));
    assert_eq!(parse_rational("7").unwrap(), r(7, 1));
    for bad in ["2/4", "1/-3", "1/0", "x", "1/2/3", ""] {
        assert!(matches!(parse_rational(bad), Err(Error::Schema(_))), "{bad}");
    }
}

#[test]
fn cyclotomic_text_form() {
    let z = Cyclotomic::root_of_unity(5, 1);
    assert_eq!(cyclotomic_to_json(&z), r#"{"m":5,"c":{"1":"1/1"}}"#);
    assert_eq!(cyclotomic_to_json(&Cyclotomic::zero()), r#"{"m":1,"c":{}}"#);
    // ζ_5^0 is not in the canonical basis of conductor 5.
    let err = cyclotomic_from_json(r#"{"m":5,"c":{"0":"1/1"}}"#).unwrap_err();
    assert!(matches!(err, Error::Schema(_)), "{err}");
    assert!(matches!(
        cyclotomic_from_json(r#"{"m":5,"c":{},"x":1}"#),
        Err(Error::Json(_))
    ));
}

fn roots() -> impl Strategy<Value = Cyclotomic> {
    (
        1u32..=24,
        proptest::collection::vec((0i64..24, -5i64..=5, 1i64..=4), 0..5),
    )
        .prop_map(|(m, terms)| {
            terms.into_iter().fold(Cyclotomic::zero(), |acc, (e, n, d)| {
                acc + Cyclotomic::root_of_unity(m, e).scale(&r(n, d))
            })
        })
}

proptest! {
    #[test]
    fn cyclotomic_round_trip(x in roots()) {
        let s = cyclotomic_to_json(&x);
        prop_assert_eq!(cyclotomic_from_json(&s).unwrap(), x);
    }
}

#[test]
fn built_in_tables_round_trip() {
    let tables = [
        build_cyclic(7).unwrap(),
        build_dihedral(10).unwrap(),
        build_symmetric(5).unwrap(),
        build_semidirect(2, 4, 2).unwrap(),
    ];
    for t in tables {
        let s = table_to_json(&t);
        assert_eq!(table_from_json(&s).unwrap(), t, "{}", t.group_name());
        // Written deterministically.
        assert_eq!(table_to_json(&table_from_json(&s).unwrap()), s);
    }
}

#[test]
fn table_schema_errors() {
    let good = table_to_json(&build_cyclic(3).unwrap());
    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();

    let mut extra = v.clone();
    extra["colour"] = "blue".into();
    assert!(matches!(table_from_json(&extra.to_string()), Err(Error::Json(_))));

    let mut kind = v.clone();
    kind["kind"] = "projective".into();
    assert!(matches!(table_from_json(&kind.to_string()), Err(Error::Schema(_))));

    let mut short = v.clone();
    short["chars"][1].as_array_mut().unwrap().pop();
    assert!(matches!(table_from_json(&short.to_string()), Err(Error::Schema(_))));

    // Swapping two values in a row breaks orthogonality: an integrity error.
    let row = v["chars"][1].as_array_mut().unwrap();
    row.swap(1, 2);
    let row2 = v["chars"][2].as_array_mut().unwrap();
    row2.swap(0, 1);
    let err = table_from_json(&v.to_string()).unwrap_err();
    assert_eq!(err.exit_code(), 3, "{err}");

    assert!(matches!(table_from_json("{"), Err(Error::Json(_))));
}

#[test]
fn formulas_round_trip() {
    let t = build_semidirect(2, 5, 2).unwrap();
    let chi = RepCharacter::irreducible(&t, t.num_chars() - 1).unwrap();
    let f = exact_b(&chi).unwrap();
    assert_eq!(growth_formula_from_json(&growth_formula_to_json(&f)).unwrap(), f);
    let faithful = (0..t.num_chars())
        .map(|i| RepCharacter::irreducible(&t, i).unwrap())
        .find(|c| c.is_faithful())
        .unwrap();
    let a = asymptotic_a(&faithful).unwrap();
    let back = asymptotic_from_json(&asymptotic_to_json(&a)).unwrap();
    assert_eq!(back.coeffs(), a.coeffs());
    assert_eq!(back.period(), a.period());
    for n in 0..20 {
        assert_eq!(back.eval(n), a.eval(n));
    }
}

#[test]
fn formula_schema_errors() {
    let one = r#"{"m":1,"c":{"0":"1/1"}}"#;
    let zero = r#"{"m":1,"c":{}}"#;
    let repeated =
        format!(r#"{{"terms":[{{"coeff":{one},"base":{one}}},{{"coeff":{one},"base":{one}}}],"valid_from":0}}"#);
    assert!(matches!(growth_formula_from_json(&repeated), Err(Error::Schema(_))));
    let zero_coeff = format!(r#"{{"terms":[{{"coeff":{zero},"base":{one}}}],"valid_from":0}}"#);
    assert!(matches!(growth_formula_from_json(&zero_coeff), Err(Error::Schema(_))));
    // Period 2 with equal coefficients is not minimal.
    let bad_period = format!(r#"{{"dim":2,"period":2,"coeffs":[{one},{one}]}}"#);
    assert!(matches!(asymptotic_from_json(&bad_period), Err(Error::Schema(_))));
    let wrong_len = format!(r#"{{"dim":2,"period":2,"coeffs":[{one}]}}"#);
    assert!(matches!(asymptotic_from_json(&wrong_len), Err(Error::Schema(_))));
}

#[test]
fn matrices_round_trip() {
    for m in [
        bundled_matrix("sl2_7_mod7_dim4").unwrap(),
        bundled_matrix("sl2_8_mod2_dim2").unwrap(),
        action_matrix_klein(KleinIndec::MOdd { m: 2 }, Some(7)).unwrap(),
        action_matrix_klein(KleinIndec::E { l: 2, m: 1 }, None).unwrap(),
    ] {
        let s = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&s).unwrap(), m);
    }
}

#[test]
fn matrix_schema_errors() {
    let base = r#"{"basis":[{"label":"1","dim":1,"projective":false},{"label":"P","dim":2,"projective":true}],"rows":ROWS,"truncated":false}"#;
    assert!(matrix_from_json(&base.replace("ROWS", "[[0,0],[1,2]]")).is_ok());
    // Column P has dimension 1·0 + 2·1 = 2 but should be dim V · 2 = 4.
    let broken = matrix_from_json(&base.replace("ROWS", "[[0,0],[1,1]]")).unwrap_err();
    assert!(
        matches!(broken, Error::Core(growthrate_core::Error::Integrity(_))),
        "{broken}"
    );
    assert_eq!(broken.exit_code(), 3);
    assert!(matches!(
        matrix_from_json(&base.replace("ROWS", "[[0,0]]")),
        Err(Error::Schema(_))
    ));
    let cutoff = base
        .replace("ROWS", "[[0,0],[1,2]]")
        .replace("\"truncated\":false}", "\"truncated\":false,\"cutoff\":2}");
    assert!(matches!(matrix_from_json(&cutoff), Err(Error::Schema(_))));
}
