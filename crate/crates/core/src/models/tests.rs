//! Model and evaluator tests, including the frozen verdicts for the
//! catalog fixtures.

use super::*;
use crate::fixtures::fixture;
use crate::frames::Frame;
use crate::rational::{qi, qr, random_rational_in, Q};
use crate::syntax::gen::OrderFormulaGen;
use crate::syntax::{parse_formula, Formula};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn rat(n: i64, d: i64) -> Elem {
    Elem::Rat(qr(n, d))
}

fn assign(pairs: &[(&str, Elem)]) -> Assignment {
    assignment(pairs)
}

const WITNESS: &str = "~(exists x. x < y) & ((forall x. x = x) -> exists x. y < x)";
const FOOTNOTE_FORALL: &str = "forall y, z. ~(x < y < z) | x < y < z";
const FOOTNOTE_EXISTS: &str = "exists y, z. (x < y) & (y < z) & ~(y < z)";

#[test]
fn thm3_witness_holds_exactly_at_two() {
    let m = fixture("thm3-N").unwrap().model;
    let w = f(WITNESS);
    assert!(eval(&m, "s", &w, &assign(&[("y", rat(2, 1))])).unwrap());
    assert!(!eval(&m, "s", &w, &assign(&[("y", rat(5, 2))])).unwrap());
    assert!(!eval(&m, "s", &w, &assign(&[("y", rat(1, 1))])).unwrap());
    assert!(!eval(&m, "s", &w, &assign(&[("y", rat(3, 1))])).unwrap());
    assert!(!eval(&m, "s", &w, &assign(&[("y", rat(4, 1))])).unwrap());
}

#[test]
fn thm3_no_lesser_witness_at_t() {
    let m = fixture("thm3-N").unwrap().model;
    let g = f("exists x. x < y");
    assert!(!eval(&m, "t", &g, &assign(&[("y", rat(2, 1))])).unwrap());
    assert!(eval(&m, "t", &g, &assign(&[("y", rat(5, 2))])).unwrap());
}

#[test]
fn bot_false_top_true_everywhere() {
    for id in ["thm3-N", "classical-M", "omegacat-N", "acf-eq-demo"] {
        let m = fixture(id).unwrap().model;
        for w in 0..m.frame().world_count() {
            let name = m.frame().world_name(w).to_string();
            assert!(!eval(&m, &name, &Formula::Bot, &Assignment::new()).unwrap());
            assert!(eval(&m, &name, &Formula::Top, &Assignment::new()).unwrap());
        }
    }
}

#[test]
fn representatives_examples() {
    let thm3 = fixture("thm3-N").unwrap().model;
    let expect = vec![qi(1), qi(2), qr(5, 2), qi(3), qi(4)];
    assert_eq!(representatives(&thm3, &[]), expect);
    assert_eq!(representatives(&thm3, &[qi(2)]), expect);

    let classical = fixture("classical-M").unwrap().model;
    assert_eq!(representatives(&classical, &[]), vec![qi(0)]);
}

#[test]
fn representatives_refine_with_parameters() {
    let thm3 = fixture("thm3-N").unwrap().model;
    let got = representatives(&thm3, &[qr(5, 2)]);
    assert_eq!(
        got,
        vec![qi(1), qi(2), qr(9, 4), qr(5, 2), qr(11, 4), qi(3), qi(4)]
    );
}

#[test]
fn thm3_definable_set_is_the_point_two() {
    let m = fixture("thm3-N").unwrap().model;
    let set = definable_set(&m, &f(WITNESS)).unwrap();
    assert_eq!(set.members(), vec![rat(2, 1)]);
    assert_eq!(
        set.representatives(),
        vec![rat(1, 1), rat(2, 1), rat(5, 2), rat(3, 1), rat(4, 1)]
    );
    let point = set.orbits.iter().find(|o| o.holds).unwrap();
    assert_eq!(point.orbit, OrbitDesc::Point(qi(2)));
}

#[test]
fn thm3_self_identity_defines_everything() {
    let m = fixture("thm3-N").unwrap().model;
    let set = definable_set(&m, &f("x = x")).unwrap();
    assert!(set.is_full());
}

#[test]
fn quantifier_only_witness_is_trivial_on_thm3_but_not_on_the_surrogate() {
    // On thm3-N the order at t is contained in the order at s, so the
    // disjunction holds for every value: the definable set is full.
    let m = fixture("thm3-N").unwrap().model;
    let set = definable_set(&m, &f(FOOTNOTE_FORALL)).unwrap();
    assert!(set.is_full());

    // On the surrogate with a reversed chain at t, the set is proper.
    let demo = fixture("dlo-footnote-demo").unwrap().model;
    let set = definable_set(&demo, &f(FOOTNOTE_FORALL)).unwrap();
    assert_eq!(set.members(), vec![rat(0, 1), rat(1, 1), rat(3, 1)]);
    assert!(!set.is_full() && !set.is_empty());
}

#[test]
fn order_only_witness_defines_a_point_on_rcf_demo() {
    let m = fixture("rcf-demo").unwrap().model;
    let set = definable_set(&m, &f(FOOTNOTE_EXISTS)).unwrap();
    assert_eq!(set.members(), vec![rat(0, 1)]);
}

#[test]
fn definable_set_rejects_wrong_arity() {
    let m = fixture("thm3-N").unwrap().model;
    assert!(definable_set(&m, &f("x < y")).is_err());
    assert!(definable_set(&m, &f("forall x. x = x")).is_err());
}

#[test]
fn heredity_fixture_reports() {
    let thm3 = fixture("thm3-N").unwrap().model;
    assert!(check_heredity(&thm3).unwrap().satisfied);
    let classical = fixture("classical-M").unwrap().model;
    assert!(check_heredity(&classical).unwrap().satisfied);
}

fn heredity_violator() -> Model {
    // The seven-triple frame contains R s t s, so the order at t must be
    // contained in the order at s; an explicit pair at t over an empty
    // order at s violates that.
    let elems = vec![rat(0, 1), rat(1, 1)];
    let pairs: BTreeSet<(Elem, Elem)> = [(rat(0, 1), rat(1, 1))].into_iter().collect();
    Model::new(
        crate::frames::seven_triple_frame(),
        DomainSpec::Finite(elems),
        vec![WorldOrderSpec::Empty, WorldOrderSpec::Pairs(pairs)],
        EqMode::Logical,
    )
    .unwrap()
}

#[test]
fn heredity_violation_is_named() {
    let report = check_heredity(&heredity_violator()).unwrap();
    assert!(!report.satisfied);
    assert_eq!(report.failures.len(), 1);
    assert!(report.failures[0].contains("0 < 1"));
    assert!(report.failures[0].contains("R s t s"));
}

fn sample_battery(m: &Model, count: usize, seed: u64) -> Vec<(Formula, Assignment)> {
    let gen = OrderFormulaGen::new(&["x", "y"], 4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reps = match m.domain() {
        DomainSpec::RationalOrder => representatives(m, &[]),
        DomainSpec::Finite(_) => vec![qi(0)],
    };
    (0..count)
        .map(|_| {
            let formula = gen.generate(&mut rng);
            let pick = |rng: &mut ChaCha8Rng| match m.domain() {
                DomainSpec::Finite(elems) => elems[rng.gen_range(0..elems.len())].clone(),
                DomainSpec::RationalOrder => {
                    Elem::Rat(reps[rng.gen_range(0..reps.len())].clone())
                }
            };
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            (formula, assign(&[("x", x), ("y", y)]))
        })
        .collect()
}

use rand::Rng;

#[test]
fn hereditary_property_holds_on_thm3() {
    let m = fixture("thm3-N").unwrap().model;
    let battery = sample_battery(&m, 200, 11);
    let report = hereditary_property_test(&m, &battery).unwrap();
    assert!(report.satisfied, "failures: {:?}", report.failures);
}

#[test]
fn hereditary_property_trivial_on_one_world() {
    let m = fixture("classical-M").unwrap().model;
    let battery = sample_battery(&m, 50, 12);
    assert!(hereditary_property_test(&m, &battery).unwrap().satisfied);
}

#[test]
fn hereditary_property_rejects_bad_model() {
    let m = heredity_violator();
    let err = hereditary_property_test(&m, &[]).unwrap_err();
    assert!(matches!(err, ModelError::Precondition(_)));
}

fn dlo_axioms() -> Vec<Formula> {
    [
        "forall x. x < x -> bot",
        "forall x, y. x = y | x < y | y < x",
        "forall x, y, z. x < y & y < z -> x < z",
        "forall x, y. x < y -> exists z. x < z & z < y",
        "forall x. exists y. x < y",
        "forall x. exists y. y < x",
    ]
    .iter()
    .map(|s| f(s))
    .collect()
}

#[test]
fn world_invariance_on_the_two_world_k_fixture() {
    let m = fixture("bk-serial-2w").unwrap().model;
    let battery = sample_battery(&m, 200, 13);
    let axioms = dlo_axioms();
    let report = world_invariance_test(&m, &battery, Some(&axioms)).unwrap();
    assert!(report.satisfied, "failures: {:?}", report.failures);
}

#[test]
fn world_invariance_rejects_non_k_frame() {
    let m = fixture("thm3-N").unwrap().model;
    let axioms = dlo_axioms();
    let err = world_invariance_test(&m, &[], Some(&axioms)).unwrap_err();
    assert!(matches!(err, ModelError::Precondition(_)));
}

#[test]
fn dlo_axioms_hold_at_s_on_the_fixtures() {
    let empty = Assignment::new();
    for id in ["thm3-N", "classical-M", "omegacat-N", "bk-serial-2w"] {
        let m = fixture(id).unwrap().model;
        for ax in dlo_axioms() {
            assert!(
                eval(&m, "s", &ax, &empty).unwrap(),
                "axiom {} fails at s on {}",
                ax,
                id
            );
        }
    }
}

#[test]
fn negation_completeness_proof_booleans() {
    let m = fixture("classical-M").unwrap().model;
    let n = fixture("thm3-N").unwrap().model;
    let implication = f("(forall x. ~(x < x)) -> (forall x. exists y. y < x)");
    let empty = Assignment::new();
    // The classical model validates the implication, hence refutes its negation.
    assert!(eval(&m, "s", &implication, &empty).unwrap());
    assert!(!eval(&m, "s", &crate::syntax::ast::not(implication.clone()), &empty).unwrap());
    // At t the antecedent holds and the consequent fails, so the
    // implication fails at s via the triple (s,t,t).
    assert!(eval(&n, "t", &f("forall x. ~(x < x)"), &empty).unwrap());
    assert!(!eval(&n, "t", &f("forall x. exists y. y < x"), &empty).unwrap());
    assert!(!eval(&n, "s", &implication, &empty).unwrap());
}

#[test]
fn omegacat_battery_under_the_literal_semantics() {
    // With no R-triples starting at t, implications are vacuously true at
    // t, so both models agree on the separating battery.
    let m = fixture("classical-M").unwrap().model;
    let n = fixture("omegacat-N").unwrap().model;
    let a = f("(forall x. x = x) -> (forall x, y, z. x < y & y < z -> x < z)");
    let b = f("(forall x, y, z. x < y & y < z -> x < z) & ~(forall x, y, z. x < y & y < z -> x < z)");
    let report = models_agree(&m, &n, &[a, b]).unwrap();
    assert_eq!(
        report
            .rows
            .iter()
            .map(|(_, x, y)| (*x, *y))
            .collect::<Vec<_>>(),
        vec![(true, true), (false, false)]
    );
    assert!(report.agree);
}

#[test]
fn classical_and_thm3_disagree_on_the_implication() {
    let m = fixture("classical-M").unwrap().model;
    let n = fixture("thm3-N").unwrap().model;
    let battery = vec![f("(forall x. ~(x < x)) -> (forall x. exists y. y < x)")];
    let report = models_agree(&m, &n, &battery).unwrap();
    assert_eq!(report.rows[0].1, true);
    assert_eq!(report.rows[0].2, false);
    assert!(!report.agree);
}

#[test]
fn models_agree_rejects_open_formulas() {
    let m = fixture("classical-M").unwrap().model;
    assert!(models_agree(&m, &m, &[f("x < y")]).is_err());
}

#[test]
fn models_agree_with_itself() {
    let m = fixture("thm3-N").unwrap().model;
    let battery = vec![f("forall x. exists y. x < y"), f("forall x. x < x")];
    assert!(models_agree(&m, &m, &battery).unwrap().agree);
}

#[test]
fn equality_axioms_on_the_valuated_surrogate() {
    let m = fixture("acf-eq-demo").unwrap().model;
    let sample = vec![f("x = x"), f("exists z. z = x")];
    let report = check_equality_axioms(&m, &sample).unwrap();
    assert!(report.satisfied, "failures: {:?}", report.failures);
}

#[test]
fn equality_axioms_collapse_with_full_identity() {
    // Full identity at every world behaves like logical equality.
    let m = fixture("acf-eq-core").unwrap().model;
    let sample = vec![f("x = x"), f("exists z. z = x")];
    let report = check_equality_axioms(&m, &sample).unwrap();
    assert!(report.satisfied);
}

#[test]
fn equality_axioms_need_valuated_mode() {
    let m = fixture("classical-M").unwrap().model;
    assert!(matches!(
        check_equality_axioms(&m, &[]),
        Err(ModelError::Precondition(_))
    ));
}

#[test]
fn valuated_witness_separates_demo_from_core() {
    let demo = fixture("acf-eq-demo").unwrap().model;
    let core = fixture("acf-eq-core").unwrap().model;
    let witness = f("exists x. ~(x = y) & ~(x = x)");
    assert!(eval(&demo, "s", &witness, &assign(&[("y", rat(0, 1))])).unwrap());
    assert!(!eval(&core, "s", &witness, &assign(&[("y", rat(0, 1))])).unwrap());
}

#[test]
fn double_negation_collapses_under_involutive_star() {
    let m = fixture("thm3-N").unwrap().model;
    let battery = sample_battery(&m, 100, 14);
    for (formula, a) in battery {
        for world in ["s", "t"] {
            let plain = eval(&m, world, &formula, &a).unwrap();
            let doubled = eval(
                &m,
                world,
                &crate::syntax::ast::not(crate::syntax::ast::not(formula.clone())),
                &a,
            )
            .unwrap();
            assert_eq!(plain, doubled, "{} at {}", formula, world);
        }
    }
}

#[test]
fn implication_at_s_matches_pointwise_reading() {
    // On heredity-respecting B-models, truth of A -> B at s coincides
    // with pointwise implication at every world.
    let m = fixture("thm3-N").unwrap().model;
    let gen = OrderFormulaGen::new(&["x"], 3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let reps = representatives(&m, &[]);
    for _ in 0..100 {
        let a = gen.generate(&mut rng);
        let b = gen.generate(&mut rng);
        let x = Elem::Rat(reps[rng.gen_range(0..reps.len())].clone());
        let env = assign(&[("x", x)]);
        let at_s = eval(&m, "s", &crate::syntax::ast::imp(a.clone(), b.clone()), &env).unwrap();
        let pointwise = (0..m.frame().world_count()).all(|w| {
            !eval_at_index(&m, w, &a, &env).unwrap() || eval_at_index(&m, w, &b, &env).unwrap()
        });
        assert_eq!(at_s, pointwise, "A = {}, B = {}", a, b);
    }
}

#[test]
fn orbit_sampling_agrees_on_thm3() {
    let m = fixture("thm3-N").unwrap().model;
    let gen = OrderFormulaGen::new(&["x"], 4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let reps = representatives(&m, &[]);
    let mut items = Vec::new();
    for _ in 0..40 {
        let formula = gen.generate(&mut rng);
        let x = Elem::Rat(reps[rng.gen_range(0..reps.len())].clone());
        for world in ["s", "t"] {
            items.push((formula.clone(), world.to_string(), assign(&[("x", x.clone())])));
        }
    }
    let extra: Vec<Q> = (0..30)
        .map(|_| random_rational_in(&mut rng, &qi(-1), &qi(6)))
        .collect();
    let report = orbit_agreement(&m, &items, &extra).unwrap();
    assert!(report.satisfied, "failures: {:?}", report.failures);
}

#[test]
fn eval_error_paths() {
    let m = fixture("thm3-N").unwrap().model;
    let err = eval(&m, "s", &f("x < y"), &Assignment::new()).unwrap_err();
    assert!(matches!(err, ModelError::UnboundVariable(_)));
    let err = eval(&m, "s", &f("P2(x)"), &assign(&[("x", rat(0, 1))])).unwrap_err();
    assert!(matches!(err, ModelError::IllegalSpec(_)));
    assert!(eval(&m, "nowhere", &Formula::Top, &Assignment::new()).is_err());
}

fn mod2_model() -> Model {
    let zero = rat(0, 1);
    let one = rat(1, 1);
    let elems = vec![zero.clone(), one.clone()];
    let frame = Frame::new(
        vec!["s".into()],
        "s",
        &[("s".into(), "s".into())],
        &[("s".into(), "s".into(), "s".into())],
    )
    .unwrap();
    let mut plus = BTreeMap::new();
    let mut times = BTreeMap::new();
    let mut neg = BTreeMap::new();
    let mut inv = BTreeMap::new();
    for a in &elems {
        for b in &elems {
            let x = a.rat().unwrap().numer().clone();
            let y = b.rat().unwrap().numer().clone();
            let sum = if (x.clone() + y.clone()) % 2 == 0.into() { &zero } else { &one };
            let prod = if (x * y) % 2 == 0.into() { &zero } else { &one };
            plus.insert((a.clone(), b.clone()), sum.clone());
            times.insert((a.clone(), b.clone()), prod.clone());
        }
        neg.insert(a.clone(), a.clone());
        inv.insert(a.clone(), a.clone());
    }
    Model::new(
        frame,
        DomainSpec::Finite(elems),
        vec![WorldOrderSpec::Empty],
        EqMode::Logical,
    )
    .unwrap()
    .with_funcs(FuncTables {
        zero: Some(zero),
        one: Some(one),
        plus,
        times,
        neg,
        inv,
    })
    .unwrap()
}

#[test]
fn function_tables_evaluate() {
    let m = mod2_model();
    let empty = Assignment::new();
    assert!(eval(&m, "s", &f("forall x. x + 0 = x"), &empty).unwrap());
    assert!(eval(&m, "s", &f("forall x, y. x + y = y + x"), &empty).unwrap());
    assert!(eval(&m, "s", &f("forall x. x + x = 0"), &empty).unwrap());
    assert!(!eval(&m, "s", &f("0 = 1"), &empty).unwrap());
}

#[test]
fn missing_function_tables_error() {
    let m = fixture("classical-M").unwrap().model;
    let err = eval(&m, "s", &f("x + 0 = x"), &assign(&[("x", rat(0, 1))])).unwrap_err();
    assert!(matches!(err, ModelError::NoFunctions(_)));
}

#[test]
fn explain_traces_vacuous_implications() {
    let n = fixture("omegacat-N").unwrap().model;
    let a3 = f("forall x, y, z. x < y & y < z -> x < z");
    let (verdict, trace) = eval_explain(&n, "t", &a3, &Assignment::new(), 5).unwrap();
    assert!(verdict);
    assert!(trace.contains("no R-triples from t"), "trace:\n{}", trace);
}

#[test]
fn validation_rejects_bad_specs() {
    // Interval with lo >= hi.
    let bad = Model::new(
        crate::frames::seven_triple_frame(),
        DomainSpec::RationalOrder,
        vec![
            WorldOrderSpec::Full,
            WorldOrderSpec::Interval { lo: qi(3), hi: qi(2) },
        ],
        EqMode::Logical,
    );
    assert!(bad.is_err());
    // Explicit pairs over the rational-order domain.
    let bad = Model::new(
        crate::frames::seven_triple_frame(),
        DomainSpec::RationalOrder,
        vec![WorldOrderSpec::Full, WorldOrderSpec::Pairs(BTreeSet::new())],
        EqMode::Logical,
    );
    assert!(bad.is_err());
    // Duplicate finite elements.
    let bad = Model::new(
        crate::frames::seven_triple_frame(),
        DomainSpec::Finite(vec![rat(1, 1), rat(2, 2)]),
        vec![WorldOrderSpec::Empty, WorldOrderSpec::Empty],
        EqMode::Logical,
    );
    assert!(bad.is_err());
}
