//! Brute-force reference values.
//!
//! Nothing here is shared with [`crate::recurrence`] or the closed forms in
//! [`crate::sums`]: terms come from a loop that keeps the whole history, and
//! sums are literal additions over that history.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::recurrence::SequenceDef;
use crate::sums::{Direction, SumQuery};

/// Every term from index 0 out to `n` (inclusive), walking away from zero.
///
/// For `n >= 0` the result is `[W_0, W_1, ..., W_n]`; for `n < 0` it is
/// `[W_0, W_{-1}, ..., W_n]`.
fn history(def: &SequenceDef, n: i64) -> Result<Vec<Rational>> {
    let (r, s, t) = (&def.params.r, &def.params.s, &def.params.t);
    let len = n.unsigned_abs() as usize + 1;
    if n >= 0 {
        let mut w = vec![def.w0.clone(), def.w1.clone(), def.w2.clone()];
        while w.len() < len {
            let k = w.len();
            let next = r * &w[k - 1] + s * &w[k - 2] + t * &w[k - 3];
            w.push(next);
        }
        w.truncate(len);
        Ok(w)
    } else {
        if t.is_zero() {
            return Err(Error::NegativeIndexWithZeroT { index: n });
        }
        // back[j] = W_{2 - j}: starts W_2, W_1, W_0, W_{-1}, ...
        let mut back = vec![def.w2.clone(), def.w1.clone(), def.w0.clone()];
        while back.len() < len + 2 {
            let j = back.len();
            // t W_{m} = W_{m+3} - r W_{m+2} - s W_{m+1}
            let prev = (&back[j - 3] - r * &back[j - 2] - s * &back[j - 1]) / t;
            back.push(prev);
        }
        Ok(back.split_off(2))
    }
}

/// `W_n` by naive full-history iteration.
pub fn oracle_term(def: &SequenceDef, n: i64) -> Result<Rational> {
    Ok(history(def, n)?.pop().expect("history is never empty"))
}

/// Literal sum over the query's index set.
pub fn oracle_sum(def: &SequenceDef, query: &SumQuery) -> Result<Rational> {
    query.validate(&def.params)?;
    let indices: Vec<i64> = query.indices().collect();
    let extent = match query.direction {
        Direction::Forward => indices.iter().copied().max().unwrap_or(0),
        Direction::Backward => indices.iter().copied().min().unwrap_or(0),
    };
    let w = history(def, extent)?;
    let mut total = Rational::zero();
    for k in indices {
        total += &w[k.unsigned_abs() as usize];
    }
    Ok(total)
}

/// `[S(n_min), S(n_min + 1), ..., S(max_n)]` for one sum family, where
/// `n_min` is 0 forward and 1 backward.
pub fn oracle_prefix_sums(
    def: &SequenceDef,
    direction: Direction,
    parity: crate::sums::Parity,
    max_n: u64,
) -> Result<Vec<Rational>> {
    let query = SumQuery::new(direction, parity, max_n);
    query.validate(&def.params)?;
    let indices: Vec<i64> = query.indices().collect();
    let extent = match direction {
        Direction::Forward => indices.iter().copied().max().unwrap_or(0),
        Direction::Backward => indices.iter().copied().min().unwrap_or(0),
    };
    let w = history(def, extent)?;
    let mut total = Rational::zero();
    Ok(indices
        .into_iter()
        .map(|k| {
            total += &w[k.unsigned_abs() as usize];
            total.clone()
        })
        .collect())
}
