//! Seeded randomized property suites.
//!
//! Each trial draws its own generator from `(seed, trial)`, so a run is
//! bit-identical whether trials execute serially or in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{
    algebra_closure, b_algebra_basis, commutant_in_bt, fab_basis, fab_membership,
    maximality_certificate, pairs_equivalent, AlgebraBasis, GeneratorPair, MaximalityCertificate,
};
use crate::error::{Error, Result};
use crate::json::{algebra_report, block_toeplitz_to_value, pair_to_value, schur_to_value};
use crate::sampling::{
    perturb_to_violation, random_block_toeplitz, random_condition_pair,
    random_independent_radical_pair, random_invertible, random_member, random_nondegenerate_pair,
    random_radical, random_schur, trial_rng,
};
use crate::schur::{kernel_intersection_trivial, SchurElement, SchurShape};
use crate::toeplitz::{
    dense_block_product, is_block_toeplitz, product_condition, structured_product,
    structured_product_counted, BlockToeplitz,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    LemmaProduct,
    FabClosure,
    SpecialAlgebra,
    Maximality,
    PairEquivalence,
    StructuredProduct,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::LemmaProduct,
        Target::FabClosure,
        Target::SpecialAlgebra,
        Target::Maximality,
        Target::PairEquivalence,
        Target::StructuredProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::LemmaProduct => "lemma-product",
            Target::FabClosure => "fab-closure",
            Target::SpecialAlgebra => "special-algebra",
            Target::Maximality => "maximality",
            Target::PairEquivalence => "pair-equivalence",
            Target::StructuredProduct => "structured-product",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown target {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
    pub sigma: usize,
    pub tau: usize,
    pub format: OutputFormat,
    /// Allow shapes with `|σ − τ| > 1`.
    pub relaxed: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            trials: 100,
            n: 3,
            sigma: 2,
            tau: 1,
            format: OutputFormat::Json,
            relaxed: false,
        }
    }
}

impl RunConfig {
    pub fn shape(&self) -> Result<SchurShape> {
        if self.relaxed {
            SchurShape::relaxed(self.sigma, self.tau)
        } else {
            SchurShape::new(self.sigma, self.tau)
        }
    }

    /// Rejects configurations no trial could run under.
    pub fn validate(&self, target: Target) -> Result<SchurShape> {
        let shape = self.shape()?;
        if self.n < 2 {
            return Err(Error::BlockOrderTooSmall(self.n));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be positive".into()));
        }
        if target == Target::SpecialAlgebra && shape.radical_dim() < 2 {
            return Err(Error::InvalidParameter(format!(
                "{target} needs two independent radical elements, but the radical of {shape} has dimension {}",
                shape.radical_dim()
            )));
        }
        Ok(shape)
    }

    fn to_value(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "n": self.n,
            "sigma": self.sigma,
            "tau": self.tau,
            "relaxed": self.relaxed,
        })
    }
}

/// A violated property, with enough data to replay it.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub message: String,
    pub fixtures: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub target: Target,
    pub config: RunConfig,
    pub passed: usize,
    pub failed: usize,
    /// Counters summed over trials, e.g. how many negatives were exercised.
    pub stats: BTreeMap<String, u64>,
    pub first_counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "schur-toeplitz",
            "version": env!("CARGO_PKG_VERSION"),
            "target": self.target.name(),
            "config": self.config.to_value(),
            "passed": self.passed,
            "failed": self.failed,
            "stats": self.stats,
            "counterexample": self.first_counterexample.as_ref().map(|c| json!({
                "trial": c.trial,
                "message": c.message,
                "fixtures": c.fixtures,
            })),
        })
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "schur-toeplitz {} verify {}",
            env!("CARGO_PKG_VERSION"),
            self.target
        );
        let _ = writeln!(
            s,
            "config: seed={} trials={} n={} sigma={} tau={}{}",
            c.seed,
            c.trials,
            c.n,
            c.sigma,
            c.tau,
            if c.relaxed { " relaxed" } else { "" }
        );
        let _ = writeln!(s, "passed: {}  failed: {}", self.passed, self.failed);
        for (k, v) in &self.stats {
            let _ = writeln!(s, "  {k}: {v}");
        }
        if let Some(ce) = &self.first_counterexample {
            let _ = writeln!(
                s,
                "first counterexample (trial {}): {}",
                ce.trial, ce.message
            );
            let _ = writeln!(
                s,
                "{}",
                serde_json::to_string(&ce.fixtures).unwrap_or_default()
            );
        }
        let _ = writeln!(s, "{}", if self.all_passed() { "PASS" } else { "FAIL" });
        s
    }

    pub fn render(&self) -> String {
        match self.config.format {
            OutputFormat::Json => crate::json::to_pretty(&self.to_json()),
            OutputFormat::Text => self.to_text(),
        }
    }
}

type Stats = BTreeMap<String, u64>;

struct Violation {
    message: String,
    fixtures: Value,
}

type TrialResult = std::result::Result<Stats, Violation>;

fn violation(message: impl Into<String>, fixtures: Value) -> Violation {
    Violation {
        message: message.into(),
        fixtures,
    }
}

fn stat(name: &str) -> Stats {
    Stats::from([(name.to_string(), 1)])
}

fn bt_pair(t: &BlockToeplitz, u: &BlockToeplitz) -> Value {
    json!({ "T": block_toeplitz_to_value(t), "U": block_toeplitz_to_value(u) })
}

/// Runs `config.trials` trials of `target`. `Err` only for an unusable config.
pub fn run(target: Target, config: &RunConfig) -> Result<VerifyReport> {
    let shape = config.validate(target)?;
    let results: Vec<TrialResult> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            run_trial(target, config, shape, i).unwrap_or_else(|e| {
                Err(violation(
                    format!("unexpected library error: {e}"),
                    Value::Null,
                ))
            })
        })
        .collect();

    let mut report = VerifyReport {
        target,
        config: config.clone(),
        passed: 0,
        failed: 0,
        stats: Stats::new(),
        first_counterexample: None,
    };
    for (trial, r) in results.into_iter().enumerate() {
        match r {
            Ok(stats) => {
                report.passed += 1;
                for (k, v) in stats {
                    *report.stats.entry(k).or_default() += v;
                }
            }
            Err(v) => {
                report.failed += 1;
                report.first_counterexample.get_or_insert(Counterexample {
                    trial,
                    message: v.message,
                    fixtures: v.fixtures,
                });
            }
        }
    }
    Ok(report)
}

fn run_trial(
    target: Target,
    cfg: &RunConfig,
    shape: SchurShape,
    trial: usize,
) -> Result<TrialResult> {
    let mut rng = trial_rng(cfg.seed, trial as u64);
    let n = cfg.n;
    match target {
        Target::LemmaProduct => lemma_product_trial(&mut rng, n, shape),
        Target::FabClosure => fab_closure_trial(&mut rng, n, shape),
        Target::SpecialAlgebra => special_algebra_trial(&mut rng, n, shape),
        Target::Maximality => maximality_trial(&mut rng, n, shape),
        Target::PairEquivalence => pair_equivalence_trial(&mut rng, n, shape),
        Target::StructuredProduct => structured_product_trial(&mut rng, n, shape),
    }
}

/// One draw of the product lemma: a satisfying pair, a perturbed violating
/// pair, or an unconstrained pair, checked against the dense product.
fn lemma_product_trial<R: Rng>(rng: &mut R, n: usize, shape: SchurShape) -> Result<TrialResult> {
    let (t, u) = match rng.gen_range(0..3) {
        0 => {
            let (t, u, _) = random_condition_pair(rng, n, shape)?;
            (t, u)
        }
        1 => {
            let (t, u, _) = random_condition_pair(rng, n, shape)?;
            perturb_to_violation(rng, &t, &u, 8)?.unwrap_or((t, u))
        }
        _ => (
            random_block_toeplitz(rng, n, shape),
            random_block_toeplitz(rng, n, shape),
        ),
    };
    let condition = product_condition(&t, &u)?;
    let dense = t.to_dense().mul(&u.to_dense())?;
    let toeplitz = is_block_toeplitz(&dense, n, shape.d());
    if condition != toeplitz {
        return Ok(Err(violation(
            format!("product condition is {condition} but the dense product is block Toeplitz: {toeplitz}"),
            bt_pair(&t, &u),
        )));
    }
    match BlockToeplitz::from_dense(&dense, n, shape) {
        Ok(p) if condition => {
            if p != structured_product(&t, &u)? {
                return Ok(Err(violation(
                    "structured product differs from the dense product",
                    bt_pair(&t, &u),
                )));
            }
        }
        Err(Error::NotBlockToeplitz(_)) if !condition => {}
        other => {
            return Ok(Err(violation(
                format!(
                    "re-extraction of the dense product gave {other:?} with condition {condition}"
                ),
                bt_pair(&t, &u),
            )))
        }
    }
    Ok(Ok(stat(if condition {
        "condition_holds"
    } else {
        "condition_fails"
    })))
}

/// Two random members of `F_{A,B}` for a pair with an invertible member.
fn fab_closure_trial<R: Rng>(rng: &mut R, n: usize, shape: SchurShape) -> Result<TrialResult> {
    let pair = random_nondegenerate_pair(rng, shape);
    let f = fab_basis(&pair, n)?;
    let fixtures = |t: &BlockToeplitz, u: &BlockToeplitz| json!({ "pair": pair_to_value(&pair), "T": block_toeplitz_to_value(t), "U": block_toeplitz_to_value(u) });
    if f.dim() != n * shape.dim() {
        let z = BlockToeplitz::zero(n, shape);
        return Ok(Err(violation(
            format!(
                "dim F_(A,B) = {}, expected n(st+1) = {}",
                f.dim(),
                n * shape.dim()
            ),
            fixtures(&z, &z),
        )));
    }
    let (t, u) = (random_member(rng, &f), random_member(rng, &f));
    if let Some(msg) = closure_failure(&f, &t, &u, |p| fab_membership(&pair, p))? {
        return Ok(Err(violation(msg, fixtures(&t, &u))));
    }
    Ok(Ok(stat(
        if pair.a().is_invertible() && pair.b().is_invertible() {
            "both_invertible"
        } else {
            "one_invertible"
        },
    )))
}

/// Shared closure check: the product is block Toeplitz, lies in the algebra
/// and the factors commute densely.
fn closure_failure(
    alg: &AlgebraBasis,
    t: &BlockToeplitz,
    u: &BlockToeplitz,
    member: impl Fn(&BlockToeplitz) -> Result<bool>,
) -> Result<Option<String>> {
    if !product_condition(t, u)? {
        return Ok(Some("product of two members is not block Toeplitz".into()));
    }
    let p = structured_product(t, u)?;
    if !member(&p)? || !alg.contains(&p)? {
        return Ok(Some("product of two members leaves the algebra".into()));
    }
    if !t.to_dense().commutator(&u.to_dense())?.is_zero() {
        return Ok(Some("two members do not commute".into()));
    }
    Ok(None)
}

/// `F_{A,B} = B⊗O` for an independent radical pair, and it is closed although
/// the kernels of `A` and `B` intersect.
fn special_algebra_trial<R: Rng>(rng: &mut R, n: usize, shape: SchurShape) -> Result<TrialResult> {
    let pair = random_independent_radical_pair(rng, shape);
    let fixtures = json!({ "pair": pair_to_value(&pair) });
    if kernel_intersection_trivial(pair.a(), pair.b())? {
        return Ok(Err(violation(
            "radical pair has trivial kernel intersection",
            fixtures,
        )));
    }
    let f = fab_basis(&pair, n)?;
    let special = b_algebra_basis(n, shape)?;
    let expected = shape.dim() + (2 * n - 2) * shape.radical_dim();
    if special.dim() != expected || !f.same_space(&special)? {
        return Ok(Err(violation(
            format!(
                "F_(A,B) has dimension {} and B(x)O has {} (expected {expected}); spaces differ",
                f.dim(),
                special.dim()
            ),
            fixtures,
        )));
    }
    let (t, u) = (random_member(rng, &f), random_member(rng, &f));
    if let Some(msg) = closure_failure(&f, &t, &u, |p| fab_membership(&pair, p))? {
        return Ok(Err(violation(msg, bt_pair(&t, &u))));
    }
    Ok(Ok(stat("equal_and_closed")))
}

/// The two families certify; a subalgebra strictly smaller than its
/// commutant does not, and its witness really is an outside commuting element.
fn maximality_trial<R: Rng>(rng: &mut R, n: usize, shape: SchurShape) -> Result<TrialResult> {
    let (alg, label) = match rng.gen_range(0..3) {
        0 => (
            fab_basis(&random_nondegenerate_pair(rng, shape), n)?,
            "type_i",
        ),
        1 => (b_algebra_basis(n, shape)?, "type_ii"),
        _ => {
            let k = rng.gen_range(1..=2);
            let gens: Vec<_> = (0..k)
                .map(|_| BlockToeplitz::block_diagonal(n, random_schur(rng, shape)))
                .collect();
            (algebra_closure(&gens)?, "block_diagonal_subalgebra")
        }
    };
    let commutant = commutant_in_bt(&alg)?;
    let certificate = maximality_certificate(&alg)?;
    let expect_certified = label != "block_diagonal_subalgebra";
    let fixtures = || algebra_report(&alg);
    match (&certificate, expect_certified) {
        (MaximalityCertificate::Certified, true) => {
            if !commutant.same_space(&alg)? {
                return Ok(Err(violation(
                    "certified but commutant differs",
                    fixtures(),
                )));
            }
        }
        (MaximalityCertificate::Inconclusive { witness }, false) => {
            let commutes = alg
                .elements()
                .iter()
                .map(|t| Ok(t.to_dense().commutator(&witness.to_dense())?.is_zero()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|c| c);
            if !commutes || alg.contains(witness)? || !commutant.contains(witness)? {
                return Ok(Err(violation(
                    "witness is not an outside commuting element",
                    fixtures(),
                )));
            }
        }
        (c, _) => {
            return Ok(Err(violation(
                format!(
                    "{label} algebra of dimension {} got certificate {c:?}",
                    alg.dim()
                ),
                fixtures(),
            )))
        }
    }
    Ok(Ok(stat(label)))
}

/// `AB′ = A′B` decides equality of the two F-spaces; degenerate pairs are refused.
fn pair_equivalence_trial<R: Rng>(rng: &mut R, n: usize, shape: SchurShape) -> Result<TrialResult> {
    let p = random_nondegenerate_pair(rng, shape);
    let q = if rng.gen_bool(0.5) {
        let c = random_invertible(rng, shape);
        GeneratorPair::new(c.mul(p.a())?, c.mul(p.b())?)?
    } else {
        random_nondegenerate_pair(rng, shape)
    };
    let fixtures = json!({ "p": pair_to_value(&p), "q": pair_to_value(&q) });
    let equivalent = pairs_equivalent(&p, &q)?;
    let same = fab_basis(&p, n)?.same_space(&fab_basis(&q, n)?)?;
    if equivalent != same {
        return Ok(Err(violation(
            format!("AB' = A'B is {equivalent} but F-space equality is {same}"),
            fixtures,
        )));
    }
    let degenerate = GeneratorPair::new(random_radical(rng, shape), SchurElement::zero(shape))?;
    if pairs_equivalent(&p, &degenerate) != Err(Error::DegeneratePair) {
        return Ok(Err(violation(
            "degenerate pair was not rejected",
            json!({ "p": pair_to_value(&p), "degenerate_a": schur_to_value(degenerate.a()) }),
        )));
    }
    Ok(Ok(stat(if equivalent {
        "equivalent"
    } else {
        "inequivalent"
    })))
}

/// Structured product against the dense oracle, with operation counts.
fn structured_product_trial<R: Rng>(
    rng: &mut R,
    n: usize,
    shape: SchurShape,
) -> Result<TrialResult> {
    let (t, u, _) = random_condition_pair(rng, n, shape)?;
    let (fast, cost) = structured_product_counted(&t, &u)?;
    let (dense, dense_cost) = dense_block_product(&t, &u)?;
    let oracle = BlockToeplitz::from_dense(&dense, n, shape)?;
    if fast != oracle {
        return Ok(Err(violation(
            "structured product differs from the dense oracle",
            bt_pair(&t, &u),
        )));
    }
    let expected = 4 * n - 3;
    if cost.block_multiplications != expected || dense_cost.block_multiplications != n.pow(3) {
        return Ok(Err(violation(
            format!(
                "unexpected counts: structured {} (expected {expected}), dense {} (expected {})",
                cost.block_multiplications,
                dense_cost.block_multiplications,
                n.pow(3)
            ),
            bt_pair(&t, &u),
        )));
    }
    Ok(Ok(stat(&format!(
        "block_multiplications_structured_{}_dense_{}",
        cost.block_multiplications, dense_cost.block_multiplications
    ))))
}
