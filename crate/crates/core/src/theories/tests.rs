use super::ALL_THEORIES;
use super::search::compact_oracle;
use super::*;
use crate::fixtures::fixture;
use crate::frames::{enumerate_frames, Condition, B_CONDITIONS};
use crate::models::eval;
use crate::syntax::ast::{self, Formula, Term};
use crate::syntax::gen::OrderFormulaGen;
use crate::syntax::parse_formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

#[test]
fn axiom_counts() {
    assert_eq!(axioms_of(TheoryName::Dlo, 2).unwrap().len(), 6);
    assert_eq!(axioms_of(TheoryName::Dlo, 9).unwrap().len(), 6);
    assert_eq!(axioms_of(TheoryName::DloNeg, 2).unwrap().len(), 6);
    // 9 fixed plus A10/A11 instances for n in {2, 3}
    assert_eq!(axioms_of(TheoryName::Presburger, 3).unwrap().len(), 13);
    // 10 fixed plus A11 for n in {1, 2}
    assert_eq!(axioms_of(TheoryName::Acf, 2).unwrap().len(), 12);
    // 16 fixed plus A7 for odd n in {1, 3}
    assert_eq!(axioms_of(TheoryName::Rcf, 3).unwrap().len(), 18);
    // 8 fixed plus A5(2)
    assert_eq!(axioms_of(TheoryName::Doag, 2).unwrap().len(), 9);
    assert!(matches!(axioms_of(TheoryName::Dlo, 1), Err(TheoryError::BadBound(1))));
}

#[test]
fn axioms_are_closed_and_round_trip() {
    for name in ALL_THEORIES {
        for (id, formula) in axioms_of(name, 4).unwrap() {
            assert!(formula.is_sentence(), "{} {} is open", name, id);
            let reparsed = parse_formula(&formula.to_string()).unwrap();
            assert_eq!(reparsed, formula, "{} {}", name, id);
        }
    }
}

#[test]
fn divisibility_schema_instance() {
    let got = instantiate_schema(TheoryName::Presburger, "A10", 2).unwrap();
    let want = ast::forall(
        "x",
        ast::iff(
            ast::pred(2, ast::var("x")),
            ast::exists("y", ast::equal(ast::var("x"), ast::plus(ast::var("y"), ast::var("y")))),
        ),
    );
    assert_eq!(got, want);
}

#[test]
fn divisible_group_schema_instance() {
    let got = instantiate_schema(TheoryName::Doag, "A5", 2).unwrap();
    let want = ast::forall(
        "y",
        ast::exists("x", ast::equal(ast::plus(ast::var("x"), ast::var("x")), ast::var("y"))),
    );
    assert_eq!(got, want);
}

#[test]
fn root_schema_small_instances() {
    // n = 1: forall x1. exists y. y + x1 = 0
    let got = instantiate_schema(TheoryName::Acf, "A11", 1).unwrap();
    let want = ast::forall(
        "x1",
        ast::exists("y", ast::equal(ast::plus(ast::var("y"), ast::var("x1")), Term::Zero)),
    );
    assert_eq!(got, want);
    // n = 3: leading monomial is (y * y) * y and the x2 coefficient
    // multiplies y to the first power.
    let got = instantiate_schema(TheoryName::Rcf, "A7", 3).unwrap();
    let y2 = ast::times(ast::var("y"), ast::var("y"));
    let y3 = ast::times(y2.clone(), ast::var("y"));
    let sum = ast::plus(
        ast::plus(
            ast::plus(y3, ast::times(ast::var("x1"), y2)),
            ast::times(ast::var("x2"), ast::var("y")),
        ),
        ast::var("x3"),
    );
    let want = ast::forall_many(
        &["x1", "x2", "x3"],
        ast::exists("y", ast::equal(sum, Term::Zero)),
    );
    assert_eq!(got, want);
}

#[test]
fn schema_side_conditions() {
    let err = instantiate_schema(TheoryName::Rcf, "A7", 2).unwrap_err();
    assert!(matches!(err, TheoryError::SideCondition { .. }));
    assert!(instantiate_schema(TheoryName::Presburger, "A10", 1).is_err());
    assert!(instantiate_schema(TheoryName::Doag, "A5", 1).is_err());
    assert!(matches!(
        instantiate_schema(TheoryName::Dlo, "A1", 2),
        Err(TheoryError::NotASchema { .. })
    ));
}

#[test]
fn unique_residue_schema_shape() {
    let got = instantiate_schema(TheoryName::Presburger, "A11", 2).unwrap();
    let p = |t: Term| ast::pred(2, t);
    let x1 = ast::plus(ast::var("x"), Term::One);
    let want = ast::forall(
        "x",
        ast::or(
            ast::and(p(ast::var("x")), ast::imp(p(x1.clone()), Formula::Bot)),
            ast::and(p(x1), ast::imp(p(ast::var("x")), Formula::Bot)),
        ),
    );
    assert_eq!(got, want);
}

#[test]
fn dlo_holds_on_the_rational_fixtures() {
    for id in ["thm3-N", "classical-M", "omegacat-N", "bk-serial-2w"] {
        let m = fixture(id).unwrap().model;
        let report = holds_at_s(&m, TheoryName::Dlo, 2).unwrap();
        assert!(report.all_hold, "{}: {:?}", id, report.rows);
        assert_eq!(report.rows.len(), 6);
    }
}

#[test]
fn finite_chain_is_no_dlo_model() {
    // Three elements in a classical chain: the extension axioms fail.
    let frame = crate::frames::seven_triple_frame();
    let json = r#"{
        "worlds": ["s"], "designated": "s",
        "R": [["s","s","s"]], "star": {"s":"s"},
        "domain": {"kind":"finite","elements":["0","1","2"]},
        "less": {"s": {"kind":"pairs","pairs":[["0","1"],["0","2"],["1","2"]]}},
        "equality": {"mode":"logical"}
    }"#;
    let _ = frame;
    let m = crate::models::Model::from_json_str(json).unwrap();
    let report = holds_at_s(&m, TheoryName::Dlo, 2).unwrap();
    assert!(!report.all_hold);
    let failing: Vec<&str> = report
        .rows
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(id, _)| id.as_str())
        .collect();
    assert!(failing.iter().any(|id| ["A4", "A5", "A6"].contains(id)));
}

#[test]
fn function_theories_need_tables() {
    let m = fixture("classical-M").unwrap().model;
    assert!(matches!(
        holds_at_s(&m, TheoryName::Rcf, 2),
        Err(TheoryError::SignatureMismatch(_))
    ));
}

#[test]
fn gf2_is_not_algebraically_closed() {
    let m = super::tests::mod2::model();
    let report = holds_at_s(&m, TheoryName::Acf, 2).unwrap();
    assert!(!report.all_hold);
    let failing: Vec<&str> = report
        .rows
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(id, _)| id.as_str())
        .collect();
    assert_eq!(failing, vec!["A11(2)"]);
}

pub(crate) mod mod2 {
    use crate::frames::Frame;
    use crate::models::{DomainSpec, Elem, EqMode, FuncTables, Model, WorldOrderSpec};
    use crate::rational::qi;
    use std::collections::BTreeMap;

    pub fn model() -> Model {
        let zero = Elem::Rat(qi(0));
        let one = Elem::Rat(qi(1));
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
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                plus.insert((a.clone(), b.clone()), elems[(i + j) % 2].clone());
                times.insert((a.clone(), b.clone()), elems[i * j % 2].clone());
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
        .with_funcs(FuncTables { zero: Some(zero), one: Some(one), plus, times, neg, inv })
        .unwrap()
    }
}

#[test]
fn dlo_variant_has_a_one_element_model_with_two_worlds() {
    let bounds = SearchBounds::new(1, 2);
    let found = find_finite_model(TheoryName::DloNeg, bounds, &B_CONDITIONS).unwrap();
    let model = found.expect("the irreflexive variant admits a tiny model");
    assert_eq!(model.finite_elements().unwrap().len(), 1);
    // Recheck with the general evaluator.
    let empty = crate::models::Assignment::new();
    for (id, ax) in axioms_of(TheoryName::DloNeg, 2).unwrap() {
        assert!(
            eval(&model, model.frame().designated_name(), &ax, &empty).unwrap(),
            "axiom {} fails on the found model",
            id
        );
    }
}

#[test]
fn dlo_variant_has_no_one_world_model() {
    // With a single world the star map is the identity, so the negated
    // irreflexivity axiom contradicts the existence axiom A5.
    let bounds = SearchBounds::new(2, 1);
    let found = find_finite_model(TheoryName::DloNeg, bounds, &B_CONDITIONS).unwrap();
    assert!(found.is_none());
}

#[test]
fn dlo_proper_has_no_small_models() {
    let bounds = SearchBounds::new(2, 2);
    let found = find_finite_model(TheoryName::Dlo, bounds, &B_CONDITIONS).unwrap();
    assert!(found.is_none());
}

#[test]
fn guard_rejects_large_bounds() {
    let bounds = SearchBounds::new(5, 2);
    assert!(matches!(
        find_finite_model(TheoryName::Dlo, bounds, &B_CONDITIONS),
        Err(TheoryError::GuardExceeded)
    ));
}

#[test]
fn search_rejects_function_theories() {
    let bounds = SearchBounds::new(2, 1);
    assert!(matches!(
        find_finite_model(TheoryName::Rcf, bounds, &B_CONDITIONS),
        Err(TheoryError::SignatureMismatch(_))
    ));
}

#[test]
fn countermodel_search_examples() {
    let bounds = SearchBounds::new(2, 2);
    // Logical identity is valid, so no countermodel exists.
    let none = find_countermodel(&[], &f("forall x. x = x"), bounds, &B_CONDITIONS).unwrap();
    assert!(none.is_none());
    // Negated irreflexivity fails wherever the star world has a
    // reflexive point.
    let some = find_countermodel(&[], &f("forall x. ~(x < x)"), bounds, &B_CONDITIONS)
        .unwrap()
        .expect("countermodel expected");
    let empty = crate::models::Assignment::new();
    assert!(!eval(&some, some.frame().designated_name(), &f("forall x. ~(x < x)"), &empty).unwrap());
    // A premise is never refutable against itself.
    let a2 = f("forall x, y. x = y | x < y | y < x");
    let none = find_countermodel(&[a2.clone()], &a2, bounds, &B_CONDITIONS).unwrap();
    assert!(none.is_none());
}

#[test]
fn countermodels_recheck_under_the_general_evaluator() {
    let bounds = SearchBounds::new(2, 2);
    let premise = f("forall x, y. x = y | x < y | y < x");
    let conclusion = f("forall x. ~(x < x)");
    let model = find_countermodel(&[premise.clone()], &conclusion, bounds, &B_CONDITIONS)
        .unwrap()
        .expect("countermodel expected");
    let empty = crate::models::Assignment::new();
    let s = model.frame().designated_name();
    assert!(eval(&model, s, &premise, &empty).unwrap());
    assert!(!eval(&model, s, &conclusion, &empty).unwrap());
}

#[test]
fn countermodel_rejects_open_or_function_formulas() {
    let bounds = SearchBounds::new(2, 1);
    assert!(find_countermodel(&[], &f("x < y"), bounds, &[]).is_err());
    assert!(find_countermodel(&[], &f("forall x. x + 0 = x"), bounds, &[]).is_err());
}

#[test]
fn sequential_and_parallel_searches_agree() {
    let bounds = SearchBounds::new(1, 2);
    let par = find_finite_model(TheoryName::DloNeg, bounds, &B_CONDITIONS).unwrap();
    let seq = find_finite_model_seq(TheoryName::DloNeg, bounds, &B_CONDITIONS).unwrap();
    assert_eq!(par, seq);
    let c = f("forall x. ~(x < x)");
    let par = find_countermodel(&[], &c, SearchBounds::new(2, 2), &B_CONDITIONS).unwrap();
    let seq = find_countermodel_seq(&[], &c, SearchBounds::new(2, 2), &B_CONDITIONS).unwrap();
    assert_eq!(par, seq);
}

#[test]
fn compact_evaluator_matches_general_evaluator() {
    // Random small frames, random bitmask valuations, random sentences:
    // the search's fast path and the general evaluator must agree.
    let frames: Vec<_> = enumerate_frames(2, &[]).collect();
    let gen = OrderFormulaGen::new(&[], 4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..400 {
        let frame = &frames[rng.gen_range(0..frames.len())];
        let k = rng.gen_range(1..=3usize);
        let bits = k * k;
        let masks: Vec<u32> = (0..frame.world_count())
            .map(|_| rng.gen_range(0..(1u64 << bits)) as u32)
            .collect();
        let sentence = gen.generate(&mut rng);
        let model = compact_oracle::realize_model(frame, k, &masks);
        let empty = crate::models::Assignment::new();
        for w in 0..frame.world_count() {
            let fast = compact_oracle::eval_on(frame, k, &masks, w, &sentence);
            let slow = eval(&model, frame.world_name(w), &sentence, &empty).unwrap();
            assert_eq!(fast, slow, "sentence {} at world {}", sentence, w);
        }
    }
}

#[test]
fn theory_names_parse() {
    assert_eq!("dlo".parse::<TheoryName>().unwrap(), TheoryName::Dlo);
    assert_eq!("DLO-NEG".parse::<TheoryName>().unwrap(), TheoryName::DloNeg);
    assert!("zfc".parse::<TheoryName>().is_err());
}

#[test]
fn condition_sets_restrict_search_frames() {
    // Requiring WI forces R s s s and R t t t, which the two-triple frame
    // lacks; the variant model must then use a WI frame.
    let bounds = SearchBounds::new(1, 2);
    let mut conds = B_CONDITIONS.to_vec();
    conds.push(Condition::Wi);
    if let Some(model) = find_finite_model(TheoryName::DloNeg, bounds, &conds).unwrap() {
        for c in conds {
            assert!(crate::frames::satisfies(model.frame(), c));
        }
    }
}
