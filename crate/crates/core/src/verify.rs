//! Verification sweeps comparing closed forms with brute-force sums.
//!
//! Each suite counts individual equality checks and keeps the first few
//! failures. Targets are processed in parallel; results come back in target
//! order, so reports are reproducible for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry};
use crate::corollaries;
use crate::error::Result;
use crate::oracle::oracle_prefix_sums;
use crate::rational::Rational;
use crate::recurrence::{RecurrenceParams, SequenceDef};
use crate::sums::{self, closed_form, Direction, FormulaCase, Parity, SumQuery};

const MAX_RECORDED_FAILURES: usize = 8;

/// A sequence to verify.
#[derive(Clone, Debug)]
pub struct Target {
    pub label: String,
    pub def: SequenceDef,
    /// Set for catalog entries, which also get the corollary suite.
    pub catalog_key: Option<&'static str>,
}

impl Target {
    pub fn from_catalog(entry: &CatalogEntry) -> Self {
        Target {
            label: entry.key.to_string(),
            def: entry.def.clone(),
            catalog_key: Some(entry.key),
        }
    }

    pub fn adhoc(label: impl Into<String>, def: SequenceDef) -> Self {
        Target {
            label: label.into(),
            def,
            catalog_key: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Suite {
    FormulaVsOracle,
    ParityPartition,
    Specialization,
    DegenerateLinearTerm,
    Corollary,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::FormulaVsOracle,
        Suite::ParityPartition,
        Suite::Specialization,
        Suite::DegenerateLinearTerm,
        Suite::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FormulaVsOracle => "formula-vs-oracle",
            Suite::ParityPartition => "parity-partition",
            Suite::Specialization => "specialization",
            Suite::DegenerateLinearTerm => "degenerate-linear-term",
            Suite::Corollary => "corollary",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub checks: u64,
    pub failed: u64,
    /// Closed-form evaluations skipped because dispatch fell back to the oracle.
    pub fallbacks: u64,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(&mut self, other: SuiteOutcome) {
        self.checks += other.checks;
        self.failed += other.failed;
        self.fallbacks += other.fallbacks;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub targets: usize,
    pub suites: Vec<(Suite, SuiteOutcome)>,
}

impl VerifyReport {
    pub fn total_checks(&self) -> u64 {
        self.suites.iter().map(|(_, o)| o.checks).sum()
    }

    pub fn total_failed(&self) -> u64 {
        self.suites.iter().map(|(_, o)| o.failed).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_failed() == 0
    }

    pub fn outcome(&self, suite: Suite) -> Option<&SuiteOutcome> {
        self.suites
            .iter()
            .find(|(s, _)| *s == suite)
            .map(|(_, o)| o)
    }
}

fn n_range(direction: Direction, max_n: u64) -> std::ops::RangeInclusive<u64> {
    match direction {
        Direction::Forward => 0..=max_n,
        Direction::Backward => 1..=max_n,
    }
}

fn families(def: &SequenceDef) -> Vec<(Direction, Parity)> {
    let backward_ok = !def.params.t.is_zero();
    Direction::ALL
        .into_iter()
        .filter(|d| *d == Direction::Forward || backward_ok)
        .flat_map(|d| Parity::ALL.into_iter().map(move |p| (d, p)))
        .collect()
}

/// Dispatched closed form vs. literal sum for every family and `n <= max_n`.
pub fn formula_vs_oracle(target: &Target, max_n: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for (direction, parity) in families(&target.def) {
        let expected = oracle_prefix_sums(&target.def, direction, parity, max_n)?;
        for (n, want) in n_range(direction, max_n).zip(expected) {
            let query = SumQuery::new(direction, parity, n);
            let got = sums::sum(&target.def, &query)?;
            if got.case_used == FormulaCase::OracleFallback {
                out.fallbacks += 1;
                continue;
            }
            out.check(got.value == want, || {
                format!(
                    "{} {}/{} n={n}: {} gave {}, oracle {}",
                    target.label,
                    direction.label(),
                    parity.label(),
                    got.case_used,
                    got.value,
                    want
                )
            });
        }
    }
    Ok(out)
}

/// even(n) + odd(n) = all(2n+1) forward, and all(2n) backward.
pub fn parity_partition(target: &Target, max_n: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    let def = &target.def;
    for direction in Direction::ALL {
        if direction == Direction::Backward && def.params.t.is_zero() {
            continue;
        }
        for n in n_range(direction, max_n) {
            let q = |parity, n| SumQuery::new(direction, parity, n);
            let even = sums::sum(def, &q(Parity::Even, n))?.value;
            let odd = sums::sum(def, &q(Parity::Odd, n))?.value;
            let span = match direction {
                Direction::Forward => 2 * n + 1,
                Direction::Backward => 2 * n,
            };
            let all = sums::sum(def, &q(Parity::All, span))?.value;
            out.check(&even + &odd == all, || {
                format!(
                    "{} {} n={n}: {even} + {odd} != {all}",
                    target.label,
                    direction.label()
                )
            });
        }
    }
    Ok(out)
}

/// The `s = 1` and `r + t = 0` formulas against the generic even/odd ones,
/// wherever their hypotheses hold.
pub fn specialization(target: &Target, max_n: u64) -> Result<SuiteOutcome> {
    use FormulaCase::*;
    let mut out = SuiteOutcome::default();
    let pairs = [
        (FwdEvenS1, FwdEvenGeneric),
        (FwdOddS1, FwdOddGeneric),
        (BwdEvenRplusT0, BwdEvenGeneric),
        (BwdOddRplusT0, BwdOddGeneric),
    ];
    for (special, generic) in pairs {
        if !special.applies_to(&target.def.params) || !generic.applies_to(&target.def.params) {
            continue;
        }
        let (direction, _) = special.family().expect("closed form");
        for n in n_range(direction, max_n) {
            let a = closed_form(&target.def, special, n)?;
            let b = closed_form(&target.def, generic, n)?;
            out.check(a == b, || {
                format!(
                    "{} n={n}: {special} gave {a}, {generic} gave {b}",
                    target.label
                )
            });
        }
    }
    Ok(out)
}

/// For `(0, 2, 1)`: `sum_{k<=n} W_{2k} - W_{2n+1}` is affine in `n` with slope
/// `W_2 - W_1 - W_0`.
pub fn degenerate_linear_term(target: &Target, max_n: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    let def = &target.def;
    if !def.params.is_triple(0, 2, 1) {
        return Ok(out);
    }
    let slope = &def.w2 - &def.w1 - &def.w0;
    let residual = |n: u64| -> Result<Rational> {
        let s = sums::sum_forward_even(def, n)?.value;
        Ok(s - crate::recurrence::term_iterative(def, 2 * n as i64 + 1)?)
    };
    let residuals: Vec<Rational> = (0..=max_n.max(2)).map(residual).collect::<Result<_>>()?;
    for (n, w) in residuals.windows(3).enumerate() {
        let second = &w[2] - &w[1] - (&w[1] - &w[0]);
        out.check(second.is_zero(), || {
            format!("{} n={n}: second difference {second}", target.label)
        });
        let first = &w[1] - &w[0];
        out.check(first == slope, || {
            format!("{} n={n}: slope {first}, expected {slope}", target.label)
        });
    }
    Ok(out)
}

/// The named-sequence identities, each against the literal sum.
pub fn corollary(target: &Target, max_n: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    let Some(key) = target.catalog_key else {
        return Ok(out);
    };
    for clause in corollaries::for_key(key) {
        let expected = oracle_prefix_sums(&target.def, clause.direction, clause.parity, max_n)?;
        for (n, want) in (clause.min_n()..=max_n).zip(expected) {
            let got = clause.evaluate(&target.def, n)?;
            out.check(got == want, || {
                format!(
                    "{key} {}/{} n={n}: identity gives {got}, oracle {want}",
                    clause.direction.label(),
                    clause.parity.label()
                )
            });
        }
    }
    Ok(out)
}

fn run_target(target: &Target, max_n: u64) -> Result<Vec<(Suite, SuiteOutcome)>> {
    Ok(vec![
        (Suite::FormulaVsOracle, formula_vs_oracle(target, max_n)?),
        (Suite::ParityPartition, parity_partition(target, max_n)?),
        (Suite::Specialization, specialization(target, max_n)?),
        (
            Suite::DegenerateLinearTerm,
            degenerate_linear_term(target, max_n)?,
        ),
        (Suite::Corollary, corollary(target, max_n)?),
    ])
}

/// Runs every suite on every target.
pub fn run(targets: &[Target], max_n: u64) -> Result<VerifyReport> {
    let per_target: Vec<Vec<(Suite, SuiteOutcome)>> = targets
        .par_iter()
        .map(|t| run_target(t, max_n))
        .collect::<Result<_>>()?;
    let mut suites: Vec<(Suite, SuiteOutcome)> = Suite::ALL
        .iter()
        .map(|s| (*s, SuiteOutcome::default()))
        .collect();
    for outcomes in per_target {
        for (suite, outcome) in outcomes {
            let slot = suites
                .iter_mut()
                .find(|(s, _)| *s == suite)
                .expect("all suites");
            slot.1.merge(outcome);
        }
    }
    Ok(VerifyReport {
        targets: targets.len(),
        suites,
    })
}

pub fn catalog_targets() -> Vec<Target> {
    catalog::list_all()
        .iter()
        .map(Target::from_catalog)
        .collect()
}

/// Seeded source of random parameter sets. Numerators and denominators are
/// drawn from `[-9, 9]` (denominators nonzero).
pub struct RandomDefs {
    rng: ChaCha8Rng,
}

impl RandomDefs {
    pub fn new(seed: u64) -> Self {
        RandomDefs {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let numer = self.rng.gen_range(-9..=9);
        let mut denom = 0;
        while denom == 0 {
            denom = self.rng.gen_range(-9..=9);
        }
        Rational::new(numer, denom)
    }

    fn nonzero(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn initial(&mut self) -> [Rational; 3] {
        [self.rational(), self.rational(), self.rational()]
    }

    /// Any coefficients with `t != 0`.
    pub fn any(&mut self) -> SequenceDef {
        let params = RecurrenceParams::new(self.rational(), self.rational(), self.nonzero());
        SequenceDef::new(params, self.initial())
    }

    /// `t != 0` and `d1 * d2 != 0`, so every generic formula applies.
    pub fn generic(&mut self) -> SequenceDef {
        loop {
            let def = self.any();
            if !sums::denominators(&def.params).product().is_zero() {
                return def;
            }
        }
    }

    /// `s = 1`, `t != 0`, `r + t != 0`.
    pub fn s_equals_one(&mut self) -> SequenceDef {
        loop {
            let (r, t) = (self.rational(), self.nonzero());
            if !(&r + &t).is_zero() {
                let params = RecurrenceParams::new(r, Rational::one(), t);
                return SequenceDef::new(params, self.initial());
            }
        }
    }

    /// `r + t = 0`, `t != 0`, `s != 1`, `d1 * d2 != 0`.
    pub fn r_plus_t_zero(&mut self) -> SequenceDef {
        loop {
            let t = self.nonzero();
            let params = RecurrenceParams::new(-&t, self.rational(), t);
            if params.s != Rational::one() && !sums::denominators(&params).product().is_zero() {
                return SequenceDef::new(params, self.initial());
            }
        }
    }

    /// `(r, s, t) = (0, 2, 1)` with random initial terms.
    pub fn degenerate_021(&mut self) -> SequenceDef {
        SequenceDef::new(RecurrenceParams::new(0, 2, 1), self.initial())
    }
}

/// `count` random sets cycling through generic, `s = 1`, `r + t = 0` and
/// `(0, 2, 1)` parameters, labelled by kind and position.
pub fn random_targets(seed: u64, count: usize) -> Vec<Target> {
    let mut gen = RandomDefs::new(seed);
    type Make = fn(&mut RandomDefs) -> SequenceDef;
    let kinds: [(&str, Make); 4] = [
        ("generic", RandomDefs::generic),
        ("s1", RandomDefs::s_equals_one),
        ("r+t=0", RandomDefs::r_plus_t_zero),
        ("021", RandomDefs::degenerate_021),
    ];
    (0..count)
        .map(|i| {
            let (kind, make) = kinds[i % kinds.len()];
            Target::adhoc(format!("random-{i}-{kind}"), make(&mut gen))
        })
        .collect()
}
