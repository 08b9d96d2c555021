//! Sum identities for the named catalog sequences, written out in the
//! specialized form each one takes for its own parameters.
//!
//! Each clause reads
//! `sum = (sum_j c_j * W_{m*n + b_j} + constant + n_coef * n) / divisor`,
//! with `m` in `{1, 2}` for forward sums and `{-1, -2}` for backward sums.
//! These are transcribed independently of [`crate::sums`] and serve as
//! regression fixtures for it.

use crate::error::Result;
use crate::rational::Rational;
use crate::recurrence::{term_iterative, SequenceDef};
use crate::sums::{Direction, Parity};

#[derive(Clone, Copy, Debug)]
pub struct CorollaryClause {
    pub key: &'static str,
    pub direction: Direction,
    pub parity: Parity,
    pub divisor: i64,
    /// `(coefficient, multiplier of n, offset)` per term.
    pub terms: &'static [(i64, i64, i64)],
    pub constant: i64,
    pub n_coef: i64,
}

impl CorollaryClause {
    pub fn evaluate(&self, def: &SequenceDef, n: u64) -> Result<Rational> {
        let n = n as i64;
        let mut total = Rational::from(self.constant + self.n_coef * n);
        for &(coef, mult, offset) in self.terms {
            total += Rational::from(coef) * term_iterative(def, mult * n + offset)?;
        }
        Ok(total / Rational::from(self.divisor))
    }

    /// Smallest valid `n`: 0 forward, 1 backward.
    pub fn min_n(&self) -> u64 {
        match self.direction {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }
}

macro_rules! clause {
    ($key:literal, $dir:ident, $par:ident, $div:expr, [$(($c:expr, $m:expr, $b:expr)),*], $k:expr) => {
        clause!($key, $dir, $par, $div, [$(($c, $m, $b)),*], $k, 0)
    };
    ($key:literal, $dir:ident, $par:ident, $div:expr, [$(($c:expr, $m:expr, $b:expr)),*], $k:expr, $nc:expr) => {
        CorollaryClause {
            key: $key,
            direction: Direction::$dir,
            parity: Parity::$par,
            divisor: $div,
            terms: &[$(($c, $m, $b)),*],
            constant: $k,
            n_coef: $nc,
        }
    };
}

#[rustfmt::skip]
pub const COROLLARIES: [CorollaryClause; 90] = [
    // forward, k = 0..=n
    clause!("tribonacci", Forward, All, 2, [(1, 1, 3), (-1, 1, 1)], -1),
    clause!("tribonacci", Forward, Even, 2, [(1, 2, 1), (1, 2, 0)], -1),
    clause!("tribonacci", Forward, Odd, 2, [(1, 2, 2), (1, 2, 1)], 0),
    clause!("tribonacci-lucas", Forward, All, 2, [(1, 1, 3), (-1, 1, 1)], 0),
    clause!("tribonacci-lucas", Forward, Even, 2, [(1, 2, 1), (1, 2, 0)], 2),
    clause!("tribonacci-lucas", Forward, Odd, 2, [(1, 2, 2), (1, 2, 1)], -2),
    clause!("third-order-pell", Forward, All, 3, [(1, 1, 3), (-1, 1, 2), (-2, 1, 1)], -1),
    clause!("third-order-pell", Forward, Even, 3, [(1, 2, 1), (1, 2, 0)], -1),
    clause!("third-order-pell", Forward, Odd, 3, [(1, 2, 2), (1, 2, 1)], 0),
    clause!("third-order-pell-lucas", Forward, All, 3, [(1, 1, 3), (-1, 1, 2), (-2, 1, 1)], 2),
    clause!("third-order-pell-lucas", Forward, Even, 3, [(1, 2, 1), (1, 2, 0)], 4),
    clause!("third-order-pell-lucas", Forward, Odd, 3, [(1, 2, 2), (1, 2, 1)], -2),
    clause!("third-order-modified-pell", Forward, All, 3, [(1, 1, 3), (-1, 1, 2), (-2, 1, 1)], 0),
    clause!("third-order-modified-pell", Forward, Even, 3, [(1, 2, 1), (1, 2, 0)], -1),
    clause!("third-order-modified-pell", Forward, Odd, 3, [(1, 2, 2), (1, 2, 1)], 1),
    clause!("padovan", Forward, All, 1, [(1, 1, 3), (1, 1, 2)], -2),
    clause!("padovan", Forward, Even, 1, [(1, 2, 1), (1, 2, 0)], -1),
    clause!("padovan", Forward, Odd, 1, [(1, 2, 2), (1, 2, 1)], -1),
    clause!("perrin", Forward, All, 1, [(1, 1, 3), (1, 1, 2)], -2),
    clause!("perrin", Forward, Even, 1, [(1, 2, 1), (1, 2, 0)], 0),
    clause!("perrin", Forward, Odd, 1, [(1, 2, 2), (1, 2, 1)], -2),
    clause!("padovan-perrin", Forward, All, 1, [(1, 1, 3), (1, 1, 2)], -1),
    clause!("padovan-perrin", Forward, Even, 1, [(1, 2, 1), (1, 2, 0)], 0),
    clause!("padovan-perrin", Forward, Odd, 1, [(1, 2, 2), (1, 2, 1)], -1),
    clause!("pell-padovan", Forward, All, 2, [(1, 1, 3), (1, 1, 2), (-1, 1, 1)], -1),
    clause!("pell-padovan", Forward, Even, 1, [(1, 2, 1)], 0, -1),
    clause!("pell-padovan", Forward, Odd, 2, [(1, 2, 3), (1, 2, 2), (-1, 2, 1)], -1, 2),
    clause!("pell-perrin", Forward, All, 2, [(1, 1, 3), (1, 1, 2), (-1, 1, 1)], 1),
    clause!("pell-perrin", Forward, Even, 1, [(1, 2, 1)], 3, -1),
    clause!("pell-perrin", Forward, Odd, 2, [(1, 2, 3), (1, 2, 2), (-1, 2, 1)], -5, 2),
    clause!("jacobsthal-padovan", Forward, All, 2, [(1, 1, 3), (1, 1, 2)], -2),
    clause!("jacobsthal-padovan", Forward, Even, 2, [(1, 2, 1), (2, 2, 0)], -1),
    clause!("jacobsthal-padovan", Forward, Odd, 2, [(1, 2, 2), (2, 2, 1)], -1),
    clause!("jacobsthal-perrin", Forward, All, 2, [(1, 1, 3), (1, 1, 2)], -2),
    clause!("jacobsthal-perrin", Forward, Even, 2, [(1, 2, 1), (2, 2, 0)], 0),
    clause!("jacobsthal-perrin", Forward, Odd, 2, [(1, 2, 2), (2, 2, 1)], -2),
    clause!("narayana", Forward, All, 1, [(1, 1, 3)], -1),
    clause!("narayana", Forward, Even, 3, [(1, 2, 2), (1, 2, 1), (2, 2, 0)], -2),
    clause!("narayana", Forward, Odd, 3, [(2, 2, 2), (2, 2, 1), (1, 2, 0)], -1),
    clause!("third-order-jacobsthal", Forward, All, 3, [(1, 1, 3), (-1, 1, 1)], -1),
    clause!("third-order-jacobsthal", Forward, Even, 3, [(1, 2, 1), (2, 2, 0)], -1),
    clause!("third-order-jacobsthal", Forward, Odd, 3, [(1, 2, 2), (2, 2, 1)], 0),
    clause!("third-order-jacobsthal-lucas", Forward, All, 3, [(1, 1, 3), (-1, 1, 1)], -3),
    clause!("third-order-jacobsthal-lucas", Forward, Even, 3, [(1, 2, 1), (2, 2, 0)], 1),
    clause!("third-order-jacobsthal-lucas", Forward, Odd, 3, [(1, 2, 2), (2, 2, 1)], -4),
    // backward, k = 1..=n over W_{-k}, W_{-2k}, W_{-2k+1}
    clause!("tribonacci", Backward, All, 2, [(-3, -1, -1), (-2, -1, -2), (-1, -1, -3)], 1),
    clause!("tribonacci", Backward, Even, 2, [(-1, -2, 1), (1, -2, 0)], 1),
    clause!("tribonacci", Backward, Odd, 2, [(-1, -2, 0), (-1, -2, -1)], 0),
    clause!("tribonacci-lucas", Backward, All, 2, [(-3, -1, -1), (-2, -1, -2), (-1, -1, -3)], 0),
    clause!("tribonacci-lucas", Backward, Even, 2, [(-1, -2, 1), (1, -2, 0)], -2),
    clause!("tribonacci-lucas", Backward, Odd, 2, [(-1, -2, 0), (-1, -2, -1)], 2),
    clause!("third-order-pell", Backward, All, 3, [(-4, -1, -1), (-2, -1, -2), (-1, -1, -3)], 1),
    clause!("third-order-pell", Backward, Even, 3, [(-1, -2, 1), (2, -2, 0)], 1),
    clause!("third-order-pell", Backward, Odd, 3, [(-1, -2, 0), (-1, -2, -1)], 0),
    clause!("third-order-pell-lucas", Backward, All, 3, [(-4, -1, -1), (-2, -1, -2), (-1, -1, -3)], -2),
    clause!("third-order-pell-lucas", Backward, Even, 3, [(-1, -2, 1), (2, -2, 0)], -4),
    clause!("third-order-pell-lucas", Backward, Odd, 3, [(-1, -2, 0), (-1, -2, -1)], 2),
    clause!("third-order-modified-pell", Backward, All, 3, [(-4, -1, -1), (-2, -1, -2), (-1, -1, -3)], 0),
    clause!("third-order-modified-pell", Backward, Even, 3, [(-1, -2, 1), (2, -2, 0)], 1),
    clause!("third-order-modified-pell", Backward, Odd, 3, [(-1, -2, 0), (-1, -2, -1)], -1),
    clause!("padovan", Backward, All, 1, [(-2, -1, -1), (-2, -1, -2), (-1, -1, -3)], 2),
    clause!("padovan", Backward, Even, 1, [(-1, -2, 1)], 1),
    clause!("padovan", Backward, Odd, 1, [(-1, -2, 0), (-1, -2, -1)], 1),
    clause!("perrin", Backward, All, 1, [(-2, -1, -1), (-2, -1, -2), (-1, -1, -3)], 2),
    clause!("perrin", Backward, Even, 1, [(-1, -2, 1)], 0),
    clause!("perrin", Backward, Odd, 1, [(-1, -2, 0), (-1, -2, -1)], 2),
    clause!("padovan-perrin", Backward, All, 1, [(-2, -1, -1), (-2, -1, -2), (-1, -1, -3)], 1),
    clause!("padovan-perrin", Backward, Even, 1, [(-1, -2, 1)], 0),
    clause!("padovan-perrin", Backward, Odd, 1, [(-1, -2, 0), (-1, -2, -1)], 1),
    clause!("pell-padovan", Backward, All, 2, [(-3, -1, -1), (-3, -1, -2), (-1, -1, -3)], 1),
    clause!("pell-padovan", Backward, Even, 1, [(-1, -2, 1), (1, -2, 0)], 0, -1),
    clause!("pell-padovan", Backward, Odd, 2, [(1, -2, 1), (-3, -2, 0), (-1, -2, -1)], 1, 2),
    clause!("pell-perrin", Backward, All, 2, [(-3, -1, -1), (-3, -1, -2), (-1, -1, -3)], -1),
    clause!("pell-perrin", Backward, Even, 1, [(-1, -2, 1), (1, -2, 0)], -3, -1),
    clause!("pell-perrin", Backward, Odd, 2, [(1, -2, 1), (-3, -2, 0), (-1, -2, -1)], 5, 2),
    clause!("jacobsthal-padovan", Backward, All, 2, [(-3, -1, -1), (-3, -1, -2), (-2, -1, -3)], 2),
    clause!("jacobsthal-padovan", Backward, Even, 2, [(-1, -2, 1)], 1),
    clause!("jacobsthal-padovan", Backward, Odd, 2, [(-1, -2, 0), (-2, -2, -1)], 1),
    clause!("jacobsthal-perrin", Backward, All, 2, [(-3, -1, -1), (-3, -1, -2), (-2, -1, -3)], 2),
    clause!("jacobsthal-perrin", Backward, Even, 2, [(-1, -2, 1)], 0),
    clause!("jacobsthal-perrin", Backward, Odd, 2, [(-1, -2, 0), (-2, -2, -1)], 2),
    clause!("narayana", Backward, All, 1, [(-2, -1, -1), (-1, -1, -2), (-1, -1, -3)], 1),
    clause!("narayana", Backward, Even, 3, [(-2, -2, 1), (1, -2, 0), (-1, -2, -1)], 2),
    clause!("narayana", Backward, Odd, 3, [(-1, -2, 1), (-1, -2, 0), (-2, -2, -1)], 1),
    clause!("third-order-jacobsthal", Backward, All, 3, [(-4, -1, -1), (-3, -1, -2), (-2, -1, -3)], 1),
    clause!("third-order-jacobsthal", Backward, Even, 3, [(-1, -2, 1), (1, -2, 0)], 1),
    clause!("third-order-jacobsthal", Backward, Odd, 3, [(-1, -2, 0), (-2, -2, -1)], 0),
    clause!("third-order-jacobsthal-lucas", Backward, All, 3, [(-4, -1, -1), (-3, -1, -2), (-2, -1, -3)], 3),
    clause!("third-order-jacobsthal-lucas", Backward, Even, 3, [(-1, -2, 1), (1, -2, 0)], -1),
    clause!("third-order-jacobsthal-lucas", Backward, Odd, 3, [(-1, -2, 0), (-2, -2, -1)], 4),
];

/// Clauses for one catalog key.
pub fn for_key(key: &str) -> impl Iterator<Item = &'static CorollaryClause> + '_ {
    COROLLARIES.iter().filter(move |c| c.key == key)
}
