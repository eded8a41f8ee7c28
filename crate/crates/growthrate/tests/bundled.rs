use growthrate::data;
use growthrate::json::{matrix_from_json, matrix_to_json, table_from_json, table_to_json};
use growthrate_core::chartab::RepCharacter;
use growthrate_core::closedform::sl2q_char0_b;
use growthrate_core::growth::{asymptotic_a, exact_b, spectral_report};
use growthrate_core::modular::{bundled_matrix, matrix_growth, modular_asymptotic_sl2};

#[test]
fn ordinary_tables_have_the_expected_shape() {
    // |SL(2,q)| = q(q²−1); q + 4 classes for odd q, q + 1 for even q.
    for (q, classes) in [(4u64, 5usize), (5, 9), (7, 11), (8, 9)] {
        let t = data::bundled_table(&format!("sl2_{q}")).unwrap();
        t.validate().unwrap();
        assert!(t.is_ordinary());
        assert_eq!(t.order(), q * (q * q - 1), "q={q}");
        assert_eq!(t.num_classes(), classes, "q={q}");
        assert_eq!(t.num_chars(), classes, "q={q}");
        assert_eq!(table_from_json(&table_to_json(&t)).unwrap(), t);
    }
}

#[test]
fn brauer_tables_are_square_over_regular_classes() {
    for (name, classes) in [("sl2_7_mod7", 7usize), ("sl2_8_mod2", 8)] {
        let t = data::bundled_table(name).unwrap();
        assert!(!t.is_ordinary(), "{name}");
        assert_eq!(t.num_classes(), classes, "{name}");
        assert_eq!(t.num_chars(), classes, "{name}");
    }
}

#[test]
fn every_name_listed_loads() {
    for name in data::table_names() {
        data::bundled_table(name).unwrap();
    }
    for name in data::matrix_names() {
        let m = data::bundled_matrix(name).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }
    assert!(data::bundled_table("sl2_9").is_err());
    assert!(data::bundled_table("../sl2_5").is_err());
    assert!(data::bundled_matrix("").is_err());
}

#[test]
fn data_matrices_equal_the_built_in_copies() {
    for bm in data::BUNDLED_MODULES {
        assert_eq!(
            data::bundled_matrix(bm.name).unwrap(),
            bundled_matrix(bm.name).unwrap(),
            "{}",
            bm.name
        );
        assert_eq!(data::bundled_module(bm.name), Some(bm));
    }
}

#[test]
fn sl2_closed_form_matches_engine() {
    for q in [4u32, 5, 7, 8] {
        let t = data::bundled_table(&format!("sl2_{q}")).unwrap();
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(&t, i).unwrap();
            let closed = sl2q_char0_b(q, &chi).unwrap().series(0, 12).unwrap();
            let engine = exact_b(&chi).unwrap().series(0, 12).unwrap();
            assert_eq!(closed.values, engine.values, "SL(2,{q}) χ{i}");
        }
    }
}

#[test]
fn sl2_5_natural_module_converges_slowly() {
    let t = data::bundled_table("sl2_5").unwrap();
    let i = (0..t.num_chars())
        .find(|&i| t.dim(i) == 2 && RepCharacter::irreducible(&t, i).unwrap().is_faithful())
        .unwrap();
    let r = spectral_report(&RepCharacter::irreducible(&t, i).unwrap()).unwrap();
    // |λ|/2 = (1 + √5)/4, the golden ratio halved.
    let want = (1.0 + 5f64.sqrt()) / 4.0;
    assert!((r.ratio_of_convergence.abs() - want).abs() < 1e-12);
}

#[test]
fn brauer_formula_matches_closed_form_and_matrix() {
    for bm in data::BUNDLED_MODULES {
        let t = data::bundled_table(bm.brauer_table).unwrap();
        let m = data::bundled_matrix(bm.name).unwrap();
        let want = modular_asymptotic_sl2(bm.q, bm.p, bm.r, m.dim()).unwrap();
        let faithful: Vec<usize> = (0..t.num_chars())
            .filter(|&i| t.dim(i) == m.dim() && RepCharacter::irreducible(&t, i).unwrap().is_faithful())
            .collect();
        assert!(!faithful.is_empty(), "{}", bm.name);
        for i in faithful {
            let got = asymptotic_a(&RepCharacter::irreducible(&t, i).unwrap()).unwrap();
            assert_eq!(got.coeffs(), want.coeffs(), "{} row {i}", bm.brauer_table);
            assert_eq!(got.period(), want.period());
        }
        // The exact count approaches the formula.
        let b = matrix_growth(&m, 30).unwrap().values;
        let r = |n: u32| {
            let a = want.eval(n);
            num_traits::ToPrimitive::to_f64(&(num_rational::BigRational::from_integer(b[n as usize].clone()) / a))
                .unwrap()
        };
        assert!((r(30) - 1.0).abs() < (r(10) - 1.0).abs().max(1e-12), "{}", bm.name);
    }
}
