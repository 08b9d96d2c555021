//! Closed-form partial sums.
//!
//! Six sum families are covered: forward (`k = 0..=n`) and backward
//! (`k = 1..=n`, over `W_{-k}`), each over all, even or odd indices. Every
//! closed form needs at most three consecutive terms, fetched in one call to
//! [`term_triple`], so a sum costs about as much as a single term.
//!
//! Which formula applies depends on whether `d1 = r+s+t-1` and
//! `d2 = r-s+t+1` vanish. The triple `(0, 2, 1)` has `d2 = 0` and its own
//! formulas, with a term linear in `n`. Any other parameter set without a
//! proven formula is summed term by term and reported as
//! [`FormulaCase::OracleFallback`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::recurrence::{term_triple, RecurrenceParams, SequenceDef, Terms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Forward, Direction::Backward];

    pub fn label(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

impl Parity {
    pub const ALL: [Parity; 3] = [Parity::All, Parity::Even, Parity::Odd];

    pub fn label(self) -> &'static str {
        match self {
            Parity::All => "all",
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// One partial sum request.
///
/// Forward: `sum_{k=0}^{n} W_{f(k)}`. Backward: `sum_{k=1}^{n} W_{-f(k)}`.
/// Here `f(k)` is `k`, `2k` or `2k+1` forward and `k`, `2k` or `2k-1`
/// backward, for `All`, `Even` and `Odd` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumQuery {
    pub direction: Direction,
    pub parity: Parity,
    pub n: u64,
}

impl SumQuery {
    pub fn new(direction: Direction, parity: Parity, n: u64) -> Self {
        SumQuery {
            direction,
            parity,
            n,
        }
    }

    /// Backward sums need `n >= 1` and `t != 0`.
    pub fn validate(&self, params: &RecurrenceParams) -> Result<()> {
        if self.direction == Direction::Backward {
            if self.n == 0 {
                return Err(Error::EmptyBackwardSum { n: self.n });
            }
            if params.t.is_zero() {
                return Err(Error::NegativeIndexWithZeroT { index: -1 });
            }
        }
        Ok(())
    }

    /// The signed indices being summed, in increasing `k`.
    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let n = self.n as i64;
        let (direction, parity) = (self.direction, self.parity);
        let range = match direction {
            Direction::Forward => 0..=n,
            Direction::Backward => 1..=n,
        };
        range.map(move |k| match (direction, parity) {
            (Direction::Forward, Parity::All) => k,
            (Direction::Forward, Parity::Even) => 2 * k,
            (Direction::Forward, Parity::Odd) => 2 * k + 1,
            (Direction::Backward, Parity::All) => -k,
            (Direction::Backward, Parity::Even) => -2 * k,
            (Direction::Backward, Parity::Odd) => -2 * k + 1,
        })
    }
}

/// `d1 = r + s + t - 1` and `d2 = r - s + t + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denominators {
    pub d1: Rational,
    pub d2: Rational,
}

impl Denominators {
    pub fn product(&self) -> Rational {
        &self.d1 * &self.d2
    }
}

pub fn denominators(params: &RecurrenceParams) -> Denominators {
    let RecurrenceParams { r, s, t } = params;
    let one = Rational::one();
    Denominators {
        d1: r + s + t - &one,
        d2: r - s + t + &one,
    }
}

/// The formula that produced a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaCase {
    #[serde(rename = "FwdAll_Generic")]
    FwdAllGeneric,
    #[serde(rename = "FwdEven_Generic")]
    FwdEvenGeneric,
    #[serde(rename = "FwdOdd_Generic")]
    FwdOddGeneric,
    #[serde(rename = "FwdEven_S1")]
    FwdEvenS1,
    #[serde(rename = "FwdOdd_S1")]
    FwdOddS1,
    #[serde(rename = "Fwd_021_All")]
    Fwd021All,
    #[serde(rename = "Fwd_021_Even")]
    Fwd021Even,
    #[serde(rename = "Fwd_021_Odd")]
    Fwd021Odd,
    #[serde(rename = "BwdAll_Generic")]
    BwdAllGeneric,
    #[serde(rename = "BwdEven_Generic")]
    BwdEvenGeneric,
    #[serde(rename = "BwdOdd_Generic")]
    BwdOddGeneric,
    #[serde(rename = "BwdEven_RplusT0")]
    BwdEvenRplusT0,
    #[serde(rename = "BwdOdd_RplusT0")]
    BwdOddRplusT0,
    #[serde(rename = "Bwd_021_All")]
    Bwd021All,
    #[serde(rename = "Bwd_021_Even")]
    Bwd021Even,
    #[serde(rename = "Bwd_021_Odd")]
    Bwd021Odd,
    OracleFallback,
}

impl FormulaCase {
    pub const CLOSED_FORMS: [FormulaCase; 16] = [
        FormulaCase::FwdAllGeneric,
        FormulaCase::FwdEvenGeneric,
        FormulaCase::FwdOddGeneric,
        FormulaCase::FwdEvenS1,
        FormulaCase::FwdOddS1,
        FormulaCase::Fwd021All,
        FormulaCase::Fwd021Even,
        FormulaCase::Fwd021Odd,
        FormulaCase::BwdAllGeneric,
        FormulaCase::BwdEvenGeneric,
        FormulaCase::BwdOddGeneric,
        FormulaCase::BwdEvenRplusT0,
        FormulaCase::BwdOddRplusT0,
        FormulaCase::Bwd021All,
        FormulaCase::Bwd021Even,
        FormulaCase::Bwd021Odd,
    ];

    pub fn name(self) -> &'static str {
        use FormulaCase::*;
        match self {
            FwdAllGeneric => "FwdAll_Generic",
            FwdEvenGeneric => "FwdEven_Generic",
            FwdOddGeneric => "FwdOdd_Generic",
            FwdEvenS1 => "FwdEven_S1",
            FwdOddS1 => "FwdOdd_S1",
            Fwd021All => "Fwd_021_All",
            Fwd021Even => "Fwd_021_Even",
            Fwd021Odd => "Fwd_021_Odd",
            BwdAllGeneric => "BwdAll_Generic",
            BwdEvenGeneric => "BwdEven_Generic",
            BwdOddGeneric => "BwdOdd_Generic",
            BwdEvenRplusT0 => "BwdEven_RplusT0",
            BwdOddRplusT0 => "BwdOdd_RplusT0",
            Bwd021All => "Bwd_021_All",
            Bwd021Even => "Bwd_021_Even",
            Bwd021Odd => "Bwd_021_Odd",
            OracleFallback => "OracleFallback",
        }
    }

    /// Direction and parity of the family this formula sums; `None` for the
    /// fallback, which serves every family.
    pub fn family(self) -> Option<(Direction, Parity)> {
        use Direction::*;
        use FormulaCase::*;
        use Parity::*;
        Some(match self {
            FwdAllGeneric | Fwd021All => (Forward, All),
            FwdEvenGeneric | FwdEvenS1 | Fwd021Even => (Forward, Even),
            FwdOddGeneric | FwdOddS1 | Fwd021Odd => (Forward, Odd),
            BwdAllGeneric | Bwd021All => (Backward, All),
            BwdEvenGeneric | BwdEvenRplusT0 | Bwd021Even => (Backward, Even),
            BwdOddGeneric | BwdOddRplusT0 | Bwd021Odd => (Backward, Odd),
            OracleFallback => return None,
        })
    }

    /// Whether the formula's hypothesis holds for these coefficients.
    pub fn applies_to(self, params: &RecurrenceParams) -> bool {
        use FormulaCase::*;
        let den = denominators(params);
        let RecurrenceParams { r, s, t } = params;
        let one = Rational::one();
        let generic_pair = !den.product().is_zero();
        match self {
            FwdAllGeneric | BwdAllGeneric => !den.d1.is_zero(),
            FwdEvenGeneric | FwdOddGeneric | BwdEvenGeneric | BwdOddGeneric => generic_pair,
            FwdEvenS1 | FwdOddS1 => *s == one && !(r + t).is_zero(),
            BwdEvenRplusT0 | BwdOddRplusT0 => generic_pair && (r + t).is_zero() && *s != one,
            Fwd021All | Fwd021Even | Fwd021Odd | Bwd021All | Bwd021Even | Bwd021Odd => {
                params.is_triple(0, 2, 1)
            }
            OracleFallback => true,
        }
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Picks the formula for a query.
///
/// Order: the `(0, 2, 1)` formulas first, then the generic `d1 != 0` sum over
/// all indices, then the generic even/odd sums when `d1 * d2 != 0`, and the
/// term-by-term fallback otherwise. The `s = 1` and `r + t = 0` variants are
/// special cases of the generic formulas and are never chosen here.
pub fn select_case(params: &RecurrenceParams, query: &SumQuery) -> FormulaCase {
    use Direction::*;
    use FormulaCase::*;
    use Parity::*;
    let candidates: &[FormulaCase] = match (query.direction, query.parity) {
        (Forward, All) => &[Fwd021All, FwdAllGeneric],
        (Forward, Even) => &[Fwd021Even, FwdEvenGeneric],
        (Forward, Odd) => &[Fwd021Odd, FwdOddGeneric],
        (Backward, All) => &[Bwd021All, BwdAllGeneric],
        (Backward, Even) => &[Bwd021Even, BwdEvenGeneric],
        (Backward, Odd) => &[Bwd021Odd, BwdOddGeneric],
    };
    candidates
        .iter()
        .copied()
        .find(|case| case.applies_to(params))
        .unwrap_or(OracleFallback)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumResult {
    pub value: Rational,
    pub case_used: FormulaCase,
    /// Set once the value has been compared against [`sum_oracle`].
    pub oracle_checked: bool,
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// Evaluates one specific closed form, whether or not dispatch would pick it.
///
/// Fails with [`Error::FormulaNotApplicable`] when the formula's hypothesis
/// does not hold for `def`, and with the query errors for bad backward
/// inputs.
pub fn closed_form(def: &SequenceDef, case: FormulaCase, n: u64) -> Result<Rational> {
    use FormulaCase::*;
    let Some((direction, parity)) = case.family() else {
        return Err(Error::FormulaNotApplicable { case: case.name() });
    };
    SumQuery::new(direction, parity, n).validate(&def.params)?;
    if !case.applies_to(&def.params) {
        return Err(Error::FormulaNotApplicable { case: case.name() });
    }

    let RecurrenceParams { r, s, t } = &def.params;
    let [w0, w1, w2] = def.initial();
    let den = denominators(&def.params);
    let one = Rational::one();
    let n = n as i64;
    let nq = int(n);
    let half = Rational::new(1, 2);

    let value = match case {
        FwdAllGeneric => {
            let [a1, a2, a3] = term_triple(def, n + 1)?;
            (a3 + (&one - r) * a2 + (&one - r - s) * a1 - w2
                + (r - &one) * w1
                + (r + s - &one) * w0)
                / &den.d1
        }
        FwdEvenGeneric => {
            let [e0, e1, e2] = term_triple(def, 2 * n)?;
            ((&one - s) * e2 + (t + r * s) * e1 + (t * t + r * t) * e0 + (s - &one) * w2
                - (t + r * s) * w1
                + (r * r - s * s + r * t + int(2) * s - &one) * w0)
                / den.product()
        }
        FwdOddGeneric => {
            let [e0, e1, e2] = term_triple(def, 2 * n)?;
            ((r + t) * e2 + (s - s * s + t * t + r * t) * e1 + (t - s * t) * e0 - (r + t) * w2
                + (s + r * r + r * t - &one) * w1
                + (s * t - t) * w0)
                / den.product()
        }
        FwdEvenS1 => {
            let [e0, e1, _] = term_triple(def, 2 * n)?;
            (e1 + t * e0 - w1 + r * w0) / (r + t)
        }
        FwdOddS1 => {
            let [_, e1, e2] = term_triple(def, 2 * n)?;
            (e2 + t * e1 - w2 + r * w1) / (r + t)
        }
        Fwd021All => {
            let [a1, a2, a3] = term_triple(def, n + 1)?;
            half * (a3 + a2 - a1 - w2 - w1 + w0)
        }
        Fwd021Even => {
            let [_, e1, _] = term_triple(def, 2 * n)?;
            e1 + (w2 - w1 - w0) * &nq + w0 - w1
        }
        Fwd021Odd => {
            let [o1, o2, o3] = term_triple(def, 2 * n + 1)?;
            half * (o3 + o2 - o1 + int(2) * &nq * (w1 + w0 - w2) - w2 + w1 - w0)
        }
        BwdAllGeneric => {
            // (W_{-n-3}, W_{-n-2}, W_{-n-1})
            let [b3, b2, b1] = term_triple(def, -n - 3)?;
            (-(r + s + t) * b1 - (s + t) * b2 - t * b3 + w2 + (&one - r) * w1 + (&one - r - s) * w0)
                / &den.d1
        }
        BwdEvenGeneric => {
            // (W_{-2n-1}, W_{-2n}, W_{-2n+1})
            let [m1, m0, p1] = term_triple(def, -2 * n - 1)?;
            (-(r + t) * p1
                + (r * r + r * t + s - &one) * m0
                + (s * t - t) * m1
                + (&one - s) * w2
                + (t + r * s) * w1
                + (&one - r * t - int(2) * s - r * r + s * s) * w0)
                / den.product()
        }
        BwdOddGeneric => {
            let [m1, m0, p1] = term_triple(def, -2 * n - 1)?;
            ((s - &one) * p1 - (t + r * s) * m0 - (t * t + r * t) * m1
                + (r + t) * w2
                + (&one - r * r - r * t - s) * w1
                + (t - s * t) * w0)
                / den.product()
        }
        BwdEvenRplusT0 => {
            let [m1, m0, _] = term_triple(def, -2 * n - 1)?;
            (-m0 - t * m1 + w2 + t * w1 + (&one - s) * w0) / (s - &one)
        }
        BwdOddRplusT0 => {
            let [_, m0, p1] = term_triple(def, -2 * n - 1)?;
            (-p1 - t * m0 + w1 + t * w0) / (s - &one)
        }
        Bwd021All => {
            let [b3, b2, b1] = term_triple(def, -n - 3)?;
            half * (int(-3) * b1 - int(3) * b2 - b3 + w2 + w1 - w0)
        }
        Bwd021Even => {
            let [_, m0, p1] = term_triple(def, -2 * n - 1)?;
            -p1 + m0 + (w1 - w0) + (w2 - w1 - w0) * &nq
        }
        Bwd021Odd => {
            let [m1, m0, p1] = term_triple(def, -2 * n - 1)?;
            half * (p1 - int(3) * m0 - m1 + (w2 - w1 + w0) + int(2) * (w1 + w0 - w2) * &nq)
        }
        OracleFallback => unreachable!("handled above"),
    };
    Ok(value)
}

/// Term-by-term reference sum, streaming the sliding-window recurrence.
pub fn sum_oracle(def: &SequenceDef, query: &SumQuery) -> Result<Rational> {
    query.validate(&def.params)?;
    let n = query.n as usize;
    let mut terms = match query.direction {
        Direction::Forward => Terms::forward(def),
        Direction::Backward => Terms::backward(def)?,
    };
    // position 0 of the walk is W_0; the walk is |index| steps out.
    let (skip, step, count) = match (query.direction, query.parity) {
        (Direction::Forward, Parity::All) => (0, 1, n + 1),
        (Direction::Forward, Parity::Even) => (0, 2, n + 1),
        (Direction::Forward, Parity::Odd) => (1, 2, n + 1),
        (Direction::Backward, Parity::All) => (1, 1, n),
        (Direction::Backward, Parity::Even) => (2, 2, n),
        (Direction::Backward, Parity::Odd) => (1, 2, n),
    };
    // backward odd: W_{-1}, W_{-3}, ...
    if skip > 0 {
        terms.nth(skip - 1);
    }
    Ok(terms.step_by(step).take(count).sum())
}

/// Evaluates a query with the dispatched formula.
pub fn sum(def: &SequenceDef, query: &SumQuery) -> Result<SumResult> {
    query.validate(&def.params)?;
    let case = select_case(&def.params, query);
    let value = match case {
        FormulaCase::OracleFallback => sum_oracle(def, query)?,
        case => closed_form(def, case, query.n)?,
    };
    Ok(SumResult {
        value,
        case_used: case,
        oracle_checked: false,
    })
}

/// Like [`sum`], then recomputes the value term by term and fails with
/// [`Error::OracleMismatch`] if the two disagree.
pub fn sum_checked(def: &SequenceDef, query: &SumQuery) -> Result<SumResult> {
    let mut result = sum(def, query)?;
    if result.case_used != FormulaCase::OracleFallback {
        let expected = sum_oracle(def, query)?;
        if expected != result.value {
            return Err(Error::OracleMismatch {
                case: result.case_used.name(),
                closed_form: result.value.to_string(),
                oracle: expected.to_string(),
            });
        }
    }
    result.oracle_checked = true;
    Ok(result)
}

pub fn sum_forward_all(def: &SequenceDef, n: u64) -> Result<SumResult> {
    sum(def, &SumQuery::new(Direction::Forward, Parity::All, n))
}

pub fn sum_forward_even(def: &SequenceDef, n: u64) -> Result<SumResult> {
    sum(def, &SumQuery::new(Direction::Forward, Parity::Even, n))
}

pub fn sum_forward_odd(def: &SequenceDef, n: u64) -> Result<SumResult> {
    sum(def, &SumQuery::new(Direction::Forward, Parity::Odd, n))
}

pub fn sum_backward_all(def: &SequenceDef, n: u64) -> Result<SumResult> {
    sum(def, &SumQuery::new(Direction::Backward, Parity::All, n))
}

pub fn sum_backward_even(def: &SequenceDef, n: u64) -> Result<SumResult> {
    sum(def, &SumQuery::new(Direction::Backward, Parity::Even, n))
}

pub fn sum_backward_odd(def: &SequenceDef, n: u64) -> Result<SumResult> {
    sum(def, &SumQuery::new(Direction::Backward, Parity::Odd, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use FormulaCase::*;

    fn tribonacci() -> SequenceDef {
        SequenceDef::from_ints([0, 1, 1], [1, 1, 1])
    }
    fn tribonacci_lucas() -> SequenceDef {
        SequenceDef::from_ints([3, 1, 3], [1, 1, 1])
    }
    fn perrin() -> SequenceDef {
        SequenceDef::from_ints([3, 0, 2], [0, 1, 1])
    }
    fn padovan() -> SequenceDef {
        SequenceDef::from_ints([1, 1, 1], [0, 1, 1])
    }
    fn pell_padovan() -> SequenceDef {
        SequenceDef::from_ints([1, 1, 1], [0, 2, 1])
    }
    fn narayana() -> SequenceDef {
        SequenceDef::from_ints([0, 1, 1], [1, 0, 1])
    }

    fn q(direction: Direction, parity: Parity, n: u64) -> SumQuery {
        SumQuery::new(direction, parity, n)
    }

    #[test]
    fn denominator_examples() {
        let d = denominators(&RecurrenceParams::new(1, 1, 1));
        assert_eq!((d.d1, d.d2), (int(2), int(2)));
        let d = denominators(&RecurrenceParams::new(0, 2, 1));
        assert_eq!((d.d1, d.d2), (int(2), int(0)));
        let d = denominators(&RecurrenceParams::new(0, 1, 1));
        assert_eq!((d.d1, d.d2), (int(1), int(1)));
    }

    #[test]
    fn dispatch_examples() {
        use Direction::*;
        use Parity::*;
        let p = |r, s, t| RecurrenceParams::new(r, s, t);
        assert_eq!(select_case(&p(1, 1, 1), &q(Forward, All, 5)), FwdAllGeneric);
        assert_eq!(select_case(&p(0, 2, 1), &q(Backward, Even, 5)), Bwd021Even);
        assert_eq!(
            select_case(&p(1, 1, -1), &q(Forward, All, 5)),
            OracleFallback
        );
        assert_eq!(
            select_case(&p(0, 3, 2), &q(Forward, Even, 5)),
            OracleFallback
        );
        // d1 != 0 is enough for the all-index family even when d2 = 0
        assert_eq!(select_case(&p(0, 3, 2), &q(Forward, All, 5)), FwdAllGeneric);
        // the s = 1 variant is never dispatched
        assert_eq!(
            select_case(&p(1, 1, 1), &q(Forward, Even, 5)),
            FwdEvenGeneric
        );
    }

    #[test]
    fn forward_all_examples() {
        assert_eq!(sum_forward_all(&tribonacci(), 4).unwrap().value, int(8));
        assert_eq!(sum_forward_all(&narayana(), 5).unwrap().value, int(8));
        assert_eq!(
            sum_forward_all(&tribonacci_lucas(), 3).unwrap().value,
            int(14)
        );
        let def = SequenceDef::from_ints([7, -3, 2], [2, 5, -1]);
        assert_eq!(sum_forward_all(&def, 0).unwrap().value, int(7));
    }

    #[test]
    fn forward_even_and_odd_examples() {
        assert_eq!(sum_forward_even(&tribonacci(), 4).unwrap().value, int(62));
        let r = sum_forward_even(&pell_padovan(), 2).unwrap();
        assert_eq!((r.value, r.case_used), (int(5), Fwd021Even));
        assert_eq!(sum_forward_even(&perrin(), 0).unwrap().value, int(3));

        assert_eq!(sum_forward_odd(&tribonacci(), 3).unwrap().value, int(34));
        assert_eq!(sum_forward_odd(&perrin(), 0).unwrap().value, int(0));
        let r = sum_forward_odd(&pell_padovan(), 1).unwrap();
        assert_eq!((r.value, r.case_used), (int(4), Fwd021Odd));
    }

    #[test]
    fn backward_examples() {
        assert_eq!(sum_backward_all(&perrin(), 2).unwrap().value, int(0));
        assert_eq!(sum_backward_all(&tribonacci(), 1).unwrap().value, int(0));
        assert_eq!(sum_backward_all(&tribonacci(), 5).unwrap().value, int(2));

        assert_eq!(sum_backward_even(&tribonacci(), 2).unwrap().value, int(1));
        assert_eq!(sum_backward_even(&padovan(), 1).unwrap().value, int(1));
        // R_{-1} = -1, R_{-2} = 3
        assert_eq!(sum_backward_even(&pell_padovan(), 1).unwrap().value, int(3));

        assert_eq!(sum_backward_odd(&tribonacci(), 1).unwrap().value, int(0));
        assert_eq!(sum_backward_odd(&tribonacci(), 3).unwrap().value, int(1));
        assert_eq!(sum_backward_odd(&perrin(), 2).unwrap().value, int(1));
    }

    #[test]
    fn oracle_examples() {
        let r = sum_oracle(&tribonacci(), &q(Direction::Forward, Parity::All, 10)).unwrap();
        assert_eq!(r, int(326));
        let r = sum_oracle(&perrin(), &q(Direction::Backward, Parity::All, 2)).unwrap();
        assert_eq!(r, int(0));
        let def = SequenceDef::from_ints([-4, 1, 1], [1, 2, 3]);
        let r = sum_oracle(&def, &q(Direction::Forward, Parity::Even, 0)).unwrap();
        assert_eq!(r, int(-4));
    }

    #[test]
    fn backward_preconditions() {
        assert_eq!(
            sum_backward_all(&tribonacci(), 0),
            Err(Error::EmptyBackwardSum { n: 0 })
        );
        let zero_t = SequenceDef::from_ints([1, 2, 3], [1, 1, 0]);
        for parity in Parity::ALL {
            assert!(matches!(
                sum(&zero_t, &q(Direction::Backward, parity, 3)),
                Err(Error::NegativeIndexWithZeroT { .. })
            ));
        }
        // forward sums with t = 0 still work
        assert!(sum_forward_all(&zero_t, 3).is_ok());
    }

    #[test]
    fn fallback_is_flagged() {
        let def = SequenceDef::from_ints([0, 1, 1], [1, 1, -1]);
        let r = sum_forward_all(&def, 5).unwrap();
        assert_eq!(r.case_used, OracleFallback);
        assert_eq!(
            r.value,
            sum_oracle(&def, &q(Direction::Forward, Parity::All, 5)).unwrap()
        );
    }

    #[test]
    fn closed_form_refuses_wrong_parameters() {
        assert_eq!(
            closed_form(&tribonacci(), Fwd021Even, 3),
            Err(Error::FormulaNotApplicable {
                case: "Fwd_021_Even"
            })
        );
        assert!(closed_form(&pell_padovan(), FwdEvenGeneric, 3).is_err());
        assert!(closed_form(&narayana(), FwdEvenS1, 3).is_err());
        assert!(closed_form(&tribonacci(), OracleFallback, 3).is_err());
    }

    #[test]
    fn checked_sum_sets_flag() {
        let r = sum_checked(&tribonacci(), &q(Direction::Backward, Parity::Odd, 9)).unwrap();
        assert!(r.oracle_checked);
    }

    #[test]
    fn large_index_goes_through_matrix_path() {
        // |index| > 64 on both ends of the threshold
        for n in [30, 31, 32, 33, 64, 65, 200] {
            for query in [
                q(Direction::Forward, Parity::All, n),
                q(Direction::Forward, Parity::Odd, n),
                q(Direction::Backward, Parity::Even, n),
            ] {
                assert!(sum_checked(&tribonacci(), &query).is_ok(), "{query:?}");
                assert!(sum_checked(&pell_padovan(), &query).is_ok(), "{query:?}");
            }
        }
    }

    #[test]
    fn query_indices() {
        let idx = |d, p, n| q(d, p, n).indices().collect::<Vec<_>>();
        assert_eq!(idx(Direction::Forward, Parity::Odd, 2), vec![1, 3, 5]);
        assert_eq!(idx(Direction::Backward, Parity::Odd, 3), vec![-1, -3, -5]);
        assert_eq!(idx(Direction::Backward, Parity::Even, 2), vec![-2, -4]);
    }
}
