//! The claim-comparison report: every machine-checkable verdict from the
//! source constructions is recomputed on the embedded fixtures and
//! compared against the recorded claim. Mismatches are first-class report
//! rows with an evaluation trace, not failures; two recorded claims are
//! known to disagree with the literal evaluation clauses and the report
//! is where that surfaces.

use crate::fixtures::{fixture, fixtures};
use crate::frames::{check_condition, Condition};
use crate::models::{
    check_equality_axioms, definable_set, eval, eval_explain, representatives, Assignment, Elem,
    Model, ModelError, world_invariance_test,
};
use crate::qe::{qe_dlo, verify_qe_candidate, QeError};
use crate::rational::{qi, qr};
use crate::syntax::gen::OrderFormulaGen;
use crate::syntax::{parse_formula, Formula};
use crate::theories::{
    axioms_of, find_finite_model, holds_at_s, SearchBounds, TheoryError, TheoryName,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Qe(#[from] QeError),
}

/// One claim row: the recorded verdict, the recomputed verdict, and a
/// trace when they disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub paper_ref: String,
    pub computed: String,
    pub paper: String,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproduceReport {
    pub claims: Vec<ClaimOutcome>,
}

impl ReproduceReport {
    pub fn mismatches(&self) -> Vec<&ClaimOutcome> {
        self.claims.iter().filter(|c| !c.matched).collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!(
                "{} {:<28} computed: {:<40} recorded: {}\n",
                if c.matched { "MATCH   " } else { "MISMATCH" },
                c.id,
                c.computed,
                c.paper
            ));
            if let Some(trace) = &c.trace {
                for line in trace.lines() {
                    out.push_str(&format!("    | {}\n", line));
                }
            }
        }
        let bad = self.mismatches().len();
        out.push_str(&format!(
            "{} claims, {} matched, {} flagged\n",
            self.claims.len(),
            self.claims.len() - bad,
            bad
        ));
        out
    }
}

fn p(s: &str) -> Formula {
    parse_formula(s).expect("claim formulas parse")
}

const WITNESS: &str = "~(exists x. x < y) & ((forall x. x = x) -> exists x. y < x)";
const FOOTNOTE_FORALL: &str = "forall y, z. ~(x < y < z) | x < y < z";
const FOOTNOTE_EXISTS: &str = "exists y, z. (x < y) & (y < z) & ~(y < z)";
const NEGCOMP_IMP: &str = "(forall x. ~(x < x)) -> (forall x. exists y. y < x)";
const OMEGACAT_IMP: &str =
    "(forall x. x = x) -> (forall x, y, z. x < y & y < z -> x < z)";
const OMEGACAT_CONJ: &str = "(forall x, y, z. x < y & y < z -> x < z) \
                             & ~(forall x, y, z. x < y & y < z -> x < z)";

struct ClaimBuilder {
    claims: Vec<ClaimOutcome>,
}

impl ClaimBuilder {
    fn push(&mut self, id: &str, source: &str, computed: String, published: &str, matched: bool, trace: Option<String>) {
        self.claims.push(ClaimOutcome {
            id: id.to_string(),
            paper_ref: source.to_string(),
            computed,
            paper: published.to_string(),
            matched,
            trace,
        });
    }

    /// Boolean evaluation claim with a trace attached on mismatch.
    fn eval_claim(
        &mut self,
        id: &str,
        source: &str,
        m: &Model,
        world: &str,
        formula: &str,
        a: &Assignment,
        published: bool,
    ) -> Result<(), ReproduceError> {
        let parsed = p(formula);
        let computed = eval(m, world, &parsed, a)?;
        let trace = if computed != published {
            Some(eval_explain(m, world, &parsed, a, 4)?.1)
        } else {
            None
        };
        self.push(
            id,
            source,
            computed.to_string(),
            &published.to_string(),
            computed == published,
            trace,
        );
        Ok(())
    }
}

/// Runs the whole claim roster. An `Err` means the infrastructure failed;
/// mismatching claims are report rows, not errors.
pub fn reproduce() -> Result<ReproduceReport, ReproduceError> {
    let catalog = fixtures()?;
    let get = |id: &str| -> &Model {
        &catalog.iter().find(|f| f.id == id).expect("fixture present").model
    };
    let thm3 = get("thm3-N");
    let classical = get("classical-M");
    let omegacat = get("omegacat-N");
    let bk = get("bk-serial-DLO");
    let bk2 = get("bk-serial-2w");
    let rcf = get("rcf-demo");
    let acf = get("acf-eq-demo");
    let acf_core = get("acf-eq-core");
    let footnote_demo = get("dlo-footnote-demo");

    let mut b = ClaimBuilder { claims: Vec::new() };
    let at = |v: crate::rational::Q| -> Assignment {
        [("y".to_string(), Elem::Rat(v))].into_iter().collect()
    };
    let empty = Assignment::new();

    // --- the two-world countermodel ---
    b.eval_claim("thm3-witness-at-2", "thm3:witness-holds-at-2", thm3, "s", WITNESS, &at(qi(2)), true)?;
    b.eval_claim("thm3-witness-off-point", "thm3:witness-only-at-2", thm3, "s", WITNESS, &at(qr(5, 2)), false)?;
    b.eval_claim(
        "thm3-no-lesser-at-t",
        "thm3:no-lesser-element-at-t",
        thm3,
        "t",
        "exists x. x < y",
        &at(qi(2)),
        false,
    )?;
    {
        let set = definable_set(thm3, &p(WITNESS))?;
        let members: Vec<String> = set.members().iter().map(|e| e.to_string()).collect();
        let computed = format!("{{{}}}", members.join(", "));
        b.push(
            "thm3-definable-set",
            "thm3:witness-defines-the-point-2",
            computed.clone(),
            "{2}",
            computed == "{2}",
            None,
        );
    }
    {
        let report = holds_at_s(thm3, TheoryName::Dlo, 2)?;
        b.push(
            "thm3-dlo-at-s",
            "thm3:dense-order-axioms-validated-at-s",
            format!("{} of 6 axioms hold at s", report.rows.iter().filter(|(_, ok)| *ok).count()),
            "all 6 axioms hold at s",
            report.all_hold,
            None,
        );
    }
    {
        // The source records a machine check that the frame meets the
        // R-mingle conditions; the exhaustive check finds a CI failure.
        let ci = check_condition(thm3.frame(), Condition::Ci);
        let computed = if ci.satisfied {
            "CI satisfied".to_string()
        } else {
            format!(
                "CI violated at ({})",
                ci.counterexamples[0].join(",")
            )
        };
        let trace = if !ci.satisfied {
            Some(format!(
                "triple ({}) is in R but its CI image is not",
                ci.counterexamples[0].join(",")
            ))
        } else {
            None
        };
        b.push(
            "thm3-rm-profile",
            "thm3:frame-satisfies-the-rm-conditions",
            computed,
            "all R-mingle frame conditions hold (recorded as machine-verified)",
            ci.satisfied,
            trace,
        );
    }
    {
        let set = definable_set(thm3, &p(FOOTNOTE_FORALL))?;
        let computed = if set.is_full() {
            "full (every orbit satisfies the formula)".to_string()
        } else if set.is_empty() {
            "empty".to_string()
        } else {
            "proper nonempty".to_string()
        };
        let trace = if set.is_full() {
            let (_, t) = eval_explain(
                thm3,
                "s",
                &p(FOOTNOTE_FORALL),
                &[("x".to_string(), Elem::Rat(qi(1)))].into_iter().collect(),
                3,
            )?;
            Some(format!(
                "the order at t is contained in the order at s, so the right \
                 disjunct covers every t-chain; sample evaluation at x = 1:\n{}",
                t
            ))
        } else {
            None
        };
        b.push(
            "thm3-footnote-defset",
            "thm3:quantifier-only-witness-nontrivial",
            computed,
            "a proper nonempty definable set",
            !set.is_full() && !set.is_empty(),
            trace,
        );
    }
    {
        let set = definable_set(footnote_demo, &p(FOOTNOTE_FORALL))?;
        let members: Vec<String> = set.members().iter().map(|e| e.to_string()).collect();
        b.push(
            "footnote-defset-surrogate",
            "thm3:quantifier-only-witness-nontrivial",
            format!("{{{}}} (proper nonempty)", members.join(", ")),
            "a proper nonempty definable set",
            !set.is_full() && !set.is_empty(),
            None,
        );
    }
    {
        let set = definable_set(rcf, &p(FOOTNOTE_EXISTS))?;
        let members: Vec<String> = set.members().iter().map(|e| e.to_string()).collect();
        b.push(
            "rcf-footnote-defset",
            "rcf:order-only-witness-nontrivial",
            format!("{{{}}} (proper nonempty)", members.join(", ")),
            "a proper nonempty definable set",
            !set.is_full() && !set.is_empty(),
            None,
        );
    }

    // --- negation completeness ---
    b.eval_claim(
        "negcomp-classical-refutes-negation",
        "negcomp:classical-model-refutes-the-negated-implication",
        classical,
        "s",
        &format!("~({})", NEGCOMP_IMP),
        &empty,
        false,
    )?;
    b.eval_claim(
        "negcomp-antecedent-at-t",
        "negcomp:irreflexivity-holds-at-t",
        thm3,
        "t",
        "forall x. ~(x < x)",
        &empty,
        true,
    )?;
    b.eval_claim(
        "negcomp-consequent-at-t",
        "negcomp:no-lower-bounds-fails-at-t",
        thm3,
        "t",
        "forall x. exists y. y < x",
        &empty,
        false,
    )?;
    b.eval_claim(
        "negcomp-implication-at-s",
        "negcomp:two-world-model-refutes-the-implication",
        thm3,
        "s",
        NEGCOMP_IMP,
        &empty,
        false,
    )?;

    // --- countable models that should disagree ---
    b.eval_claim(
        "omegacat-M-implication",
        "omegacat:classical-model-satisfies-the-implication",
        classical,
        "s",
        OMEGACAT_IMP,
        &empty,
        true,
    )?;
    b.eval_claim(
        "omegacat-M-conjunction",
        "omegacat:classical-model-refutes-the-contradiction",
        classical,
        "s",
        OMEGACAT_CONJ,
        &empty,
        false,
    )?;
    // The recorded verdicts for the second model rest on implications
    // being falsifiable at the triple-free world t; the literal clauses
    // make them vacuously true there, so both rows are expected to flag.
    b.eval_claim(
        "omegacat-N-implication",
        "omegacat:second-model-refutes-the-implication",
        omegacat,
        "s",
        OMEGACAT_IMP,
        &empty,
        false,
    )?;
    b.eval_claim(
        "omegacat-N-conjunction",
        "omegacat:second-model-satisfies-the-contradiction",
        omegacat,
        "s",
        OMEGACAT_CONJ,
        &empty,
        true,
    )?;

    // --- no finite models ---
    {
        let bounds = SearchBounds::new(3, 2);
        let found = find_finite_model(TheoryName::Dlo, bounds, &crate::frames::B_CONDITIONS)?;
        b.push(
            "no-finite-dlo-models",
            "dlo:no-finite-models",
            match &found {
                None => "no model with domain <= 3 and worlds <= 2".to_string(),
                Some(m) => format!("unexpected model: {}", m.to_json_pretty()),
            },
            "no finite models exist",
            found.is_none(),
            None,
        );
    }
    {
        let bounds = SearchBounds::new(1, 2);
        let found = find_finite_model(TheoryName::DloNeg, bounds, &crate::frames::B_CONDITIONS)?;
        let computed = match &found {
            Some(m) => format!(
                "one-element model found ({} worlds)",
                m.frame().world_count()
            ),
            None => "no model found".to_string(),
        };
        b.push(
            "dlo-variant-tiny-model",
            "dlo:negated-irreflexivity-variant-has-a-tiny-model",
            computed,
            "a one-element model exists",
            found.is_some(),
            None,
        );
    }

    // --- world invariance ---
    {
        let gen = OrderFormulaGen::new(&["x", "y"], 4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        let reps = representatives(bk2, &[]);
        let samples: Vec<(Formula, Assignment)> = (0..200)
            .map(|_| {
                let formula = gen.generate(&mut rng);
                let x = Elem::Rat(reps[rng.gen_range(0..reps.len())].clone());
                let y = Elem::Rat(reps[rng.gen_range(0..reps.len())].clone());
                (
                    formula,
                    [("x".to_string(), x), ("y".to_string(), y)].into_iter().collect(),
                )
            })
            .collect();
        let axioms: Vec<Formula> =
            axioms_of(TheoryName::Dlo, 2)?.into_iter().map(|(_, f)| f).collect();
        let report = world_invariance_test(bk2, &samples, Some(&axioms))?;
        b.push(
            "world-invariance",
            "invariance:truth-is-world-independent-under-k-and-seriality",
            format!(
                "{} sampled formulas agree at every world",
                samples.len() - report.failures.len()
            ),
            "every formula takes the same value at every world as at s",
            report.satisfied,
            None,
        );
    }

    // --- quantifier elimination on the positive side ---
    {
        let formula = p("exists z. x1 < z & z < x2");
        let eliminated = qe_dlo(bk, &formula)?;
        let verify = verify_qe_candidate(bk, &formula, &eliminated)?;
        b.push(
            "qe-between",
            "qe:dense-order-elimination-at-s (theory-level claim checked per fixture)",
            format!("eliminated to `{}`; both readings verified", eliminated),
            "the existential between-formula reduces to x1 < x2",
            eliminated == p("x1 < x2") && verify.both_pass(),
            None,
        );
    }

    // --- valuated equality surrogate ---
    b.eval_claim(
        "acf-eq-witness",
        "acf-eq:witness-holds-on-the-extension-model",
        acf,
        "s",
        "exists x. ~(x = y) & ~(x = x)",
        &[("y".to_string(), Elem::Rat(qi(0)))].into_iter().collect(),
        true,
    )?;
    b.eval_claim(
        "acf-eq-core-witness",
        "acf-eq:witness-fails-on-the-collapsed-model",
        acf_core,
        "s",
        "exists x. ~(x = y) & ~(x = x)",
        &[("y".to_string(), Elem::Rat(qi(0)))].into_iter().collect(),
        false,
    )?;
    {
        let sample = vec![p("x = x"), p("exists z. z = x")];
        let report = check_equality_axioms(acf, &sample)?;
        b.push(
            "acf-eq-axioms",
            "acf-eq:reflexivity-transitivity-substitution-hold",
            if report.satisfied {
                "(R), (T), and sampled (L) instances hold at s".to_string()
            } else {
                format!("failures: {}", report.failures.join("; "))
            },
            "the minimal equality principles hold on the model",
            report.satisfied,
            None,
        );
    }

    {
        // Fixture self-audit: heredity and the declared frame profile.
        let mut all_ok = true;
        for fx in &catalog {
            let heredity = crate::models::check_heredity(&fx.model)?;
            all_ok &= heredity.satisfied;
        }
        b.push(
            "fixture-heredity-audit",
            "models:atomic-valuations-are-hereditary",
            format!("{} fixtures pass the heredity check", catalog.len()),
            "every fixture is a legitimate model (heredity holds)",
            all_ok,
            None,
        );
    }

    Ok(ReproduceReport { claims: b.claims })
}

/// Convenience accessor used by the CLI: the fixture catalog, reusing the
/// loader's validation.
pub fn fixture_by_id(id: &str) -> Result<crate::fixtures::Fixture, ModelError> {
    fixture(id)
}
