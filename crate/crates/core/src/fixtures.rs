//! Embedded model catalog. Each fixture is a small, fully explicit model
//! used by the `reproduce` report and the verification gates; every entry
//! revalidates its structural invariants (heredity plus its declared
//! frame-condition profile) at load time.

use crate::frames::{satisfies, Condition, Frame};
use crate::models::{
    check_heredity, DomainSpec, Elem, EqMode, Model, ModelError, WorldOrderSpec,
};
use crate::rational::{qi, qr};
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: &'static str,
    pub notes: &'static str,
    pub model: Model,
    /// Frame conditions this fixture is expected to satisfy.
    pub profile: Vec<Condition>,
    /// Frame conditions this fixture is expected to violate.
    pub anti_profile: Vec<Condition>,
}

fn seven_triple_star_swap() -> Frame {
    crate::frames::seven_triple_frame()
}

fn one_world_frame() -> Frame {
    Frame::new(
        vec!["s".into()],
        "s",
        &[("s".into(), "s".into())],
        &[("s".into(), "s".into(), "s".into())],
    )
    .expect("valid frame")
}

fn two_triple_frame() -> Frame {
    Frame::new(
        vec!["s".into(), "t".into()],
        "s",
        &[("s".into(), "t".into()), ("t".into(), "s".into())],
        &[
            ("s".into(), "s".into(), "s".into()),
            ("s".into(), "t".into(), "t".into()),
        ],
    )
    .expect("valid frame")
}

fn total_two_world_frame() -> Frame {
    let w = |s: &str| s.to_string();
    let mut triples = Vec::new();
    for a in ["s", "t"] {
        for b in ["s", "t"] {
            for c in ["s", "t"] {
                triples.push((w(a), w(b), w(c)));
            }
        }
    }
    Frame::new(
        vec![w("s"), w("t")],
        "s",
        &[(w("s"), w("t")), (w("t"), w("s"))],
        &triples,
    )
    .expect("valid frame")
}

fn rat_elems(values: &[(i64, i64)]) -> Vec<Elem> {
    values.iter().map(|&(n, d)| Elem::Rat(qr(n, d))).collect()
}

fn identity_pairs(elems: &[Elem]) -> BTreeSet<(Elem, Elem)> {
    elems.iter().map(|e| (e.clone(), e.clone())).collect()
}

fn thm3_n() -> Model {
    Model::new(
        seven_triple_star_swap(),
        DomainSpec::RationalOrder,
        vec![
            WorldOrderSpec::Full,
            WorldOrderSpec::Interval { lo: qi(2), hi: qi(3) },
        ],
        EqMode::Logical,
    )
    .expect("thm3-N")
}

fn classical_m() -> Model {
    Model::new(
        one_world_frame(),
        DomainSpec::RationalOrder,
        vec![WorldOrderSpec::Full],
        EqMode::Logical,
    )
    .expect("classical-M")
}

fn omegacat_n() -> Model {
    Model::new(
        two_triple_frame(),
        DomainSpec::RationalOrder,
        vec![WorldOrderSpec::Full, WorldOrderSpec::Empty],
        EqMode::Logical,
    )
    .expect("omegacat-N")
}

fn bk_serial_2w() -> Model {
    Model::new(
        total_two_world_frame(),
        DomainSpec::RationalOrder,
        vec![WorldOrderSpec::Full, WorldOrderSpec::Full],
        EqMode::Logical,
    )
    .expect("bk-serial-2w")
}

fn rcf_demo() -> Model {
    // Domain {0, 1/2, 1, 2, 3}; usual order at s, and at t only the pairs
    // whose difference is a positive integer.
    let elems = rat_elems(&[(0, 1), (1, 2), (1, 1), (2, 1), (3, 1)]);
    let mut t_pairs = BTreeSet::new();
    for a in &elems {
        for b in &elems {
            let (x, y) = (a.rat().unwrap(), b.rat().unwrap());
            let diff = y - x;
            if diff > qi(0) && diff.is_integer() {
                t_pairs.insert((a.clone(), b.clone()));
            }
        }
    }
    Model::new(
        seven_triple_star_swap(),
        DomainSpec::Finite(elems),
        vec![WorldOrderSpec::Full, WorldOrderSpec::Pairs(t_pairs)],
        EqMode::Logical,
    )
    .expect("rcf-demo")
}

fn acf_eq_demo() -> Model {
    let elems = rat_elems(&[(0, 1), (1, 1), (2, 1), (3, 1)]);
    let small = rat_elems(&[(0, 1), (1, 1)]);
    Model::new(
        seven_triple_star_swap(),
        DomainSpec::Finite(elems.clone()),
        vec![WorldOrderSpec::Empty, WorldOrderSpec::Empty],
        EqMode::Valuated(vec![identity_pairs(&elems), identity_pairs(&small)]),
    )
    .expect("acf-eq-demo")
}

fn acf_eq_core() -> Model {
    let elems = rat_elems(&[(0, 1), (1, 1)]);
    Model::new(
        seven_triple_star_swap(),
        DomainSpec::Finite(elems.clone()),
        vec![WorldOrderSpec::Empty, WorldOrderSpec::Empty],
        EqMode::Valuated(vec![identity_pairs(&elems), identity_pairs(&elems)]),
    )
    .expect("acf-eq-core")
}

fn dlo_footnote_demo() -> Model {
    // Finite surrogate where the order at t = s* runs against the order
    // at s, so a two-step t-chain escapes the s-order.
    let elems = rat_elems(&[(0, 1), (1, 1), (2, 1), (3, 1)]);
    let t_pairs: BTreeSet<(Elem, Elem)> = [
        (Elem::Rat(qi(2)), Elem::Rat(qi(1))),
        (Elem::Rat(qi(1)), Elem::Rat(qi(0))),
    ]
    .into_iter()
    .collect();
    Model::new(
        two_triple_frame(),
        DomainSpec::Finite(elems),
        vec![WorldOrderSpec::Full, WorldOrderSpec::Pairs(t_pairs)],
        EqMode::Logical,
    )
    .expect("dlo-footnote-demo")
}

fn all_conditions() -> Vec<Condition> {
    crate::frames::ALL_CONDITIONS.to_vec()
}

fn b_plus(extra: &[Condition]) -> Vec<Condition> {
    let mut v = crate::frames::B_CONDITIONS.to_vec();
    v.extend_from_slice(extra);
    v
}

/// The embedded catalog, already validated.
pub fn fixtures() -> Result<Vec<Fixture>, ModelError> {
    let list = vec![
        Fixture {
            id: "thm3-N",
            notes: "Two-world model over Q refuting quantifier elimination for dense \
                    linear orders: seven R-triples, star swaps the worlds, full order \
                    at s, order restricted to [2,3] at t, logical equality.",
            model: thm3_n(),
            profile: b_plus(&[
                Condition::Contraposition,
                Condition::Wi,
                Condition::Bcomb,
                Condition::Mingle,
                Condition::C,
                Condition::Seriality,
            ]),
            anti_profile: vec![Condition::Ci, Condition::K],
        },
        Fixture {
            id: "classical-M",
            notes: "One-world collapse over Q with the usual order; behaves classically.",
            model: classical_m(),
            profile: all_conditions(),
            anti_profile: vec![],
        },
        Fixture {
            id: "omegacat-N",
            notes: "Two-world model over Q separating countable models: usual order \
                    at s, empty order at t, R = {(s,s,s),(s,t,t)}, star swaps.",
            model: omegacat_n(),
            profile: b_plus(&[Condition::Contraposition, Condition::Ci, Condition::Bcomb, Condition::Mingle]),
            anti_profile: vec![Condition::Wi, Condition::K, Condition::C, Condition::Seriality],
        },
        Fixture {
            id: "bk-serial-DLO",
            notes: "One-world classical model of the dense-linear-order axioms; its \
                    frame satisfies every named condition, in particular K and \
                    seriality, so it drives the positive quantifier-elimination \
                    machinery.",
            model: classical_m(),
            profile: all_conditions(),
            anti_profile: vec![],
        },
        Fixture {
            id: "bk-serial-2w",
            notes: "Two genuinely distinct worlds with the total ternary relation, \
                    star swapping, and the full order at both; a K-and-serial model \
                    of the dense-linear-order axioms where world invariance is not \
                    vacuous.",
            model: bk_serial_2w(),
            profile: all_conditions(),
            anti_profile: vec![],
        },
        Fixture {
            id: "rcf-demo",
            notes: "Finite surrogate for the ordered-field countermodel: domain \
                    {0, 1/2, 1, 2, 3}, usual order at s, and at t only pairs with a \
                    positive integer difference. Exercises the order-only witness \
                    exists y, z. (x < y) & (y < z) & ~(y < z).",
            model: rcf_demo(),
            profile: b_plus(&[
                Condition::Contraposition,
                Condition::Wi,
                Condition::Bcomb,
                Condition::Mingle,
                Condition::C,
                Condition::Seriality,
            ]),
            anti_profile: vec![Condition::Ci, Condition::K],
        },
        Fixture {
            id: "acf-eq-demo",
            notes: "Finite surrogate for the valuated-equality countermodel: domain \
                    {0,1,2,3}, equality is full identity at s but restricted to \
                    {0,1} at t. Elements 2 and 3 play the role of the extension \
                    elements; exists x. ~(x = y) & ~(x = x) holds at s.",
            model: acf_eq_demo(),
            profile: b_plus(&[
                Condition::Contraposition,
                Condition::Wi,
                Condition::Bcomb,
                Condition::Mingle,
                Condition::C,
                Condition::Seriality,
            ]),
            anti_profile: vec![Condition::Ci, Condition::K],
        },
        Fixture {
            id: "acf-eq-core",
            notes: "The collapsed companion of acf-eq-demo: domain {0,1} with full \
                    identity at both worlds, where the same existential witness fails.",
            model: acf_eq_core(),
            profile: b_plus(&[
                Condition::Contraposition,
                Condition::Wi,
                Condition::Bcomb,
                Condition::Mingle,
                Condition::C,
                Condition::Seriality,
            ]),
            anti_profile: vec![Condition::Ci, Condition::K],
        },
        Fixture {
            id: "dlo-footnote-demo",
            notes: "Finite surrogate on which the quantifier-only witness \
                    forall y, z. ~(x < y < z) | x < y < z defines a proper nonempty \
                    set: usual order at s, the reversed chain 2,1,0 at t = s*.",
            model: dlo_footnote_demo(),
            profile: b_plus(&[Condition::Contraposition, Condition::Ci, Condition::Bcomb, Condition::Mingle]),
            anti_profile: vec![Condition::Wi, Condition::K, Condition::C, Condition::Seriality],
        },
    ];
    for fixture in &list {
        validate(fixture)?;
    }
    Ok(list)
}

fn validate(fixture: &Fixture) -> Result<(), ModelError> {
    let heredity = check_heredity(&fixture.model)?;
    if !heredity.satisfied {
        return Err(ModelError::Invalid(format!(
            "fixture {} violates heredity: {}",
            fixture.id,
            heredity.failures.join("; ")
        )));
    }
    for &c in &fixture.profile {
        if !satisfies(fixture.model.frame(), c) {
            return Err(ModelError::Invalid(format!(
                "fixture {} should satisfy {}",
                fixture.id, c
            )));
        }
    }
    for &c in &fixture.anti_profile {
        if satisfies(fixture.model.frame(), c) {
            return Err(ModelError::Invalid(format!(
                "fixture {} should violate {}",
                fixture.id, c
            )));
        }
    }
    Ok(())
}

/// Looks up a fixture by id.
pub fn fixture(id: &str) -> Result<Fixture, ModelError> {
    fixtures()?
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| ModelError::Invalid(format!("no fixture named `{}`", id)))
}
