mod common;

use gauge_logic::cas::numeric::relative_gap;
use gauge_logic::cas::oracle::{random_assignment, TOLERANCE};
use gauge_logic::cas::{normalize, numeric_eval, parse_expr, verify_step, Atom, FieldExpr, NormalForm, Verdict};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gen(seed: u64, smooth: bool) -> FieldExpr {
    common::random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 3, smooth)
}

fn agree_numerically(lhs: &FieldExpr, rhs: &FieldExpr, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        let a = random_assignment(&mut rng);
        let (x, y) = (numeric_eval(lhs, &a).unwrap(), numeric_eval(rhs, &a).unwrap());
        prop_assert!(relative_gap(x, y) < TOLERANCE, "{} vs {} at {}", x, y, a);
    }
    Ok(())
}

#[test]
fn frozen_normal_forms() {
    let nf = normalize(&parse_expr("dagger(phi)*phi").unwrap());
    assert_eq!(nf.lines(), ["1/2 * chi^2", "mu * sqrtlambda^-1 * chi", "1/2 * mu^2 * lambda^-1"]);
    assert_eq!(normalize(&parse_expr("E*Ebar - 1").unwrap()), NormalForm::zero());
    assert_eq!(normalize(&parse_expr("i*i").unwrap()).to_string(), "-1");
    assert_eq!(normalize(&parse_expr("sqrt2^3").unwrap()).to_string(), "2 * sqrt2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let nf = normalize(&gen(seed, false));
        prop_assert_eq!(normalize(&nf.to_expr()), nf);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dagger_is_an_involution(seed in any::<u64>()) {
        let x = gen(seed, false);
        prop_assert_eq!(normalize(&x.dagger().dagger()), normalize(&x));
        prop_assert_eq!(normalize(&FieldExpr::dagger_of(x.clone())), normalize(&x).conj());
    }

    #[test]
    fn leibniz_rule(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (gen(a, true), gen(b, true));
        let lhs = FieldExpr::derivative_of(FieldExpr::mul(vec![f.clone(), g.clone()])).unwrap();
        let df = FieldExpr::derivative_of(f.clone()).unwrap();
        let dg = FieldExpr::derivative_of(g.clone()).unwrap();
        let rhs = FieldExpr::add(vec![FieldExpr::mul(vec![df, g]), FieldExpr::mul(vec![f, dg])]);
        prop_assert!(verify_step(&lhs, &rhs).is_verified());
    }

    #[test]
    fn normal_form_evaluates_like_the_input(seed in any::<u64>()) {
        let x = gen(seed, false);
        agree_numerically(&x, &normalize(&x).to_expr(), seed)?;
    }

    #[test]
    fn conjugation_commutes_with_real_evaluation(seed in any::<u64>()) {
        let x = gen(seed, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let a = random_assignment(&mut rng);
        let direct = numeric_eval(&FieldExpr::dagger_of(x.clone()), &a).unwrap();
        let conj = numeric_eval(&x, &a).unwrap().conj();
        prop_assert!(relative_gap(direct, conj) < TOLERANCE);
    }

    #[test]
    fn printed_expressions_reparse(seed in any::<u64>()) {
        let x = gen(seed, false);
        let back = parse_expr(&x.to_string()).unwrap();
        prop_assert_eq!(normalize(&back), normalize(&x));
    }

    #[test]
    fn normal_forms_survive_serialization(seed in any::<u64>()) {
        let nf = normalize(&gen(seed, false));
        let json = serde_json::to_string(&nf).unwrap();
        let back: NormalForm = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, nf);
    }

    #[test]
    fn added_term_is_reported(seed in any::<u64>(), num in 1i64..5, den in 1i64..5) {
        let x = gen(seed, false);
        let extra = FieldExpr::mul(vec![FieldExpr::ratio(num, den), FieldExpr::atom(Atom::F)]);
        let tampered = FieldExpr::add(vec![x.clone(), extra.clone()]);
        match verify_step(&x, &tampered) {
            Verdict::Mismatch(residual) => prop_assert_eq!(residual, normalize(&FieldExpr::neg(extra))),
            Verdict::Verified => prop_assert!(false, "tampered step verified"),
        }
    }
}
