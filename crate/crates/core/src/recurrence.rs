//! Term evaluation for `W_n = r W_{n-1} + s W_{n-2} + t W_{n-3}`.
//!
//! Two independent routes are provided: a sliding-window loop
//! ([`term_iterative`], O(|n|) steps) and binary exponentiation of the
//! companion matrix ([`term_matrix`], O(log |n|) matrix products). Both run
//! backward through negative indices when `t != 0`.

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficients `(r, s, t)` of the recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecurrenceParams {
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl RecurrenceParams {
    pub fn new(r: impl Into<Rational>, s: impl Into<Rational>, t: impl Into<Rational>) -> Self {
        RecurrenceParams {
            r: r.into(),
            s: s.into(),
            t: t.into(),
        }
    }

    pub fn is_triple(&self, r: i64, s: i64, t: i64) -> bool {
        self.r == Rational::from(r) && self.s == Rational::from(s) && self.t == Rational::from(t)
    }

    /// Fails for negative indices when `t = 0`.
    pub(crate) fn check_index(&self, n: i64) -> Result<()> {
        if n < 0 && self.t.is_zero() {
            Err(Error::NegativeIndexWithZeroT { index: n })
        } else {
            Ok(())
        }
    }
}

/// A fully specified sequence: coefficients plus `W_0, W_1, W_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDef {
    pub params: RecurrenceParams,
    pub w0: Rational,
    pub w1: Rational,
    pub w2: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oeis_id: Option<String>,
}

impl SequenceDef {
    pub fn new(params: RecurrenceParams, initial: [Rational; 3]) -> Self {
        let [w0, w1, w2] = initial;
        SequenceDef {
            params,
            w0,
            w1,
            w2,
            name: None,
            oeis_id: None,
        }
    }

    /// Shorthand for integer definitions, in the `W(a, b, c; r, s, t)` order.
    pub fn from_ints(initial: [i64; 3], coefficients: [i64; 3]) -> Self {
        let [r, s, t] = coefficients;
        SequenceDef::new(RecurrenceParams::new(r, s, t), initial.map(Rational::from))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_oeis_id(mut self, id: impl Into<String>) -> Self {
        self.oeis_id = Some(id.into());
        self
    }

    pub fn initial(&self) -> [&Rational; 3] {
        [&self.w0, &self.w1, &self.w2]
    }
}

/// Walks the sequence away from index 0, one term at a time.
///
/// Forward it yields `W_0, W_1, W_2, ...`; backward it yields
/// `W_0, W_{-1}, W_{-2}, ...`. Only three values are live at any point.
///
/// The walk runs over integers: with `L` the common denominator of the
/// step coefficients, the `j`-th value is kept as `X_j * E * L^j`, which
/// stays integral, so no gcd is taken until a term is yielded.
#[derive(Clone, Debug)]
pub struct Terms {
    // integer coefficients (a L, b L^2, c L^3) of X_{j+3} = a X_{j+2} + b X_{j+1} + c X_j
    coef: [BigInt; 3],
    scale: BigInt,
    // scaled (X_j, X_{j+1}, X_{j+2})
    window: [BigInt; 3],
    // E * L^j
    denom: BigInt,
}

impl Terms {
    fn walk(step: [&Rational; 3], start: [&Rational; 3]) -> Self {
        let scale = common_denom(step);
        let e = common_denom(start);
        let [a, b, c] = step;
        let scaled = scale_to_int;
        let scale2 = &scale * &scale;
        let scale3 = &scale2 * &scale;
        let coef = [scaled(a, &scale), scaled(b, &scale2), scaled(c, &scale3)];
        let window = [
            scaled(start[0], &e),
            scaled(start[1], &e) * &scale,
            scaled(start[2], &e) * &scale2,
        ];
        Terms {
            coef,
            scale,
            window,
            denom: e,
        }
    }

    pub fn forward(def: &SequenceDef) -> Self {
        let RecurrenceParams { r, s, t } = &def.params;
        Terms::walk([r, s, t], [&def.w0, &def.w1, &def.w2])
    }

    pub fn backward(def: &SequenceDef) -> Result<Self> {
        let RecurrenceParams { r, s, t } = &def.params;
        let inv_t = t
            .recip()
            .ok_or(Error::NegativeIndexWithZeroT { index: -1 })?;
        // Y_j = W_{2-j}: Y_{j+3} = (-s/t) Y_{j+2} + (-r/t) Y_{j+1} + (1/t) Y_j
        let a = -(s * &inv_t);
        let b = -(r * &inv_t);
        let mut terms = Terms::walk([&a, &b, &inv_t], [&def.w2, &def.w1, &def.w0]);
        terms.advance(2);
        Ok(terms)
    }

    fn advance(&mut self, steps: usize) {
        let [a, b, c] = &self.coef;
        for _ in 0..steps {
            let [x0, x1, x2] = &self.window;
            let next = a * x2 + b * x1 + c * x0;
            let [_, x1, x2] = std::mem::take(&mut self.window);
            self.window = [x1, x2, next];
        }
        if !self.scale.is_one() {
            self.denom *= Pow::pow(&self.scale, steps);
        }
    }
}

impl Iterator for Terms {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let out = Rational::new(self.window[0].clone(), self.denom.clone());
        self.advance(1);
        Some(out)
    }

    fn nth(&mut self, n: usize) -> Option<Rational> {
        self.advance(n);
        self.next()
    }
}

/// `W_n` by stepping the recurrence one index at a time.
pub fn term_iterative(def: &SequenceDef, n: i64) -> Result<Rational> {
    def.params.check_index(n)?;
    let steps = n.unsigned_abs() as usize;
    let mut terms = if n >= 0 {
        Terms::forward(def)
    } else {
        Terms::backward(def)?
    };
    Ok(terms.nth(steps).expect("the sequence is infinite"))
}

/// Row-major 3x3 matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3(pub [[Rational; 3]; 3]);

impl Matrix3 {
    pub fn identity() -> Self {
        let z = Rational::zero;
        let o = Rational::one;
        Matrix3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    pub fn mul(&self, rhs: &Matrix3) -> Matrix3 {
        let a = &self.0;
        let b = &rhs.0;
        let cell =
            |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j];
        Matrix3([
            [cell(0, 0), cell(0, 1), cell(0, 2)],
            [cell(1, 0), cell(1, 1), cell(1, 2)],
            [cell(2, 0), cell(2, 1), cell(2, 2)],
        ])
    }

    pub fn mul_vec(&self, v: &[Rational; 3]) -> [Rational; 3] {
        let a = &self.0;
        let row = |i: usize| &a[i][0] * &v[0] + &a[i][1] * &v[1] + &a[i][2] * &v[2];
        [row(0), row(1), row(2)]
    }

    pub fn determinant(&self) -> Rational {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }
}

/// The companion matrix `[[r, s, t], [1, 0, 0], [0, 1, 0]]`.
///
/// It advances the state `(W_n, W_{n-1}, W_{n-2})` to `(W_{n+1}, W_n, W_{n-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    params: RecurrenceParams,
}

impl CompanionMatrix {
    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    pub fn entries(&self) -> [[Rational; 3]; 3] {
        let RecurrenceParams { r, s, t } = self.params.clone();
        let z = Rational::zero;
        let o = Rational::one;
        [[r, s, t], [o(), z(), z()], [z(), o(), z()]]
    }

    pub fn to_matrix(&self) -> Matrix3 {
        Matrix3(self.entries())
    }

    /// Always equal to `t`.
    pub fn determinant(&self) -> Rational {
        self.to_matrix().determinant()
    }

    /// `[[0, 1, 0], [0, 0, 1], [1/t, -r/t, -s/t]]`, or `None` when `t = 0`.
    pub fn inverse(&self) -> Option<Matrix3> {
        let RecurrenceParams { r, s, t } = &self.params;
        let inv_t = t.recip()?;
        let z = Rational::zero;
        let o = Rational::one;
        Some(Matrix3([
            [z(), o(), z()],
            [z(), z(), o()],
            [inv_t.clone(), -(r * &inv_t), -(s * &inv_t)],
        ]))
    }
}

pub fn companion_matrix(params: &RecurrenceParams) -> CompanionMatrix {
    CompanionMatrix {
        params: params.clone(),
    }
}

/// Multiplication counts from one matrix-power evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatrixStats {
    /// Matrix-matrix products (squarings).
    pub matrix_products: u32,
    /// Matrix-vector products.
    pub vector_products: u32,
}

impl MatrixStats {
    pub fn total(&self) -> u32 {
        self.matrix_products + self.vector_products
    }
}

type IntMatrix = [[BigInt; 3]; 3];

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j])
    })
}

fn int_mul_vec(a: &IntMatrix, v: &[BigInt; 3]) -> [BigInt; 3] {
    std::array::from_fn(|i| &a[i][0] * &v[0] + &a[i][1] * &v[1] + &a[i][2] * &v[2])
}

fn common_denom<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scale_to_int(x: &Rational, factor: &BigInt) -> BigInt {
    x.numer() * (factor / x.denom())
}

/// State vector `(W_{m+2}, W_{m+1}, W_m)`, computed as `M^m (W_2, W_1, W_0)`.
///
/// Powers of `M` commute, so the vector is hit by `M^(2^i)` for each set bit
/// of `|m|` and never materializes the full power. The products run over the
/// integer matrix `L M` (`L` clears the denominators of `M`) and the result is
/// divided by `L^|m|` once at the end.
pub fn state_vector(def: &SequenceDef, m: i64, stats: &mut MatrixStats) -> Result<[Rational; 3]> {
    def.params.check_index(m)?;
    let companion = companion_matrix(&def.params);
    let base = if m >= 0 {
        companion.to_matrix()
    } else {
        companion.inverse().expect("checked above")
    };
    let scale = common_denom(base.0.iter().flatten());
    let mut base: IntMatrix = base.0.map(|row| row.map(|x| scale_to_int(&x, &scale)));
    let start_denom = common_denom(def.initial());
    let mut v = [&def.w2, &def.w1, &def.w0].map(|x| scale_to_int(x, &start_denom));
    let mut e = m.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            v = int_mul_vec(&base, &v);
            stats.vector_products += 1;
        }
        e >>= 1;
        if e > 0 {
            base = int_mul(&base, &base);
            stats.matrix_products += 1;
        }
    }
    let denom = start_denom * Pow::pow(&scale, m.unsigned_abs());
    Ok(v.map(|x| Rational::new(x, denom.clone())))
}

/// `W_n` via companion-matrix exponentiation, with the multiplication count.
pub fn term_matrix_with_stats(def: &SequenceDef, n: i64) -> Result<(Rational, MatrixStats)> {
    def.params.check_index(n)?;
    let mut stats = MatrixStats::default();
    let value = match n {
        0 => def.w0.clone(),
        1 => def.w1.clone(),
        2 => def.w2.clone(),
        n => {
            let [top, _, _] = state_vector(def, n - 2, &mut stats)?;
            top
        }
    };
    Ok((value, stats))
}

/// `W_n` via companion-matrix exponentiation.
pub fn term_matrix(def: &SequenceDef, n: i64) -> Result<Rational> {
    term_matrix_with_stats(def, n).map(|(value, _)| value)
}

/// Above this |index|, windows are fetched through the matrix route.
pub const MATRIX_THRESHOLD: u64 = 64;

/// `(W_lo, W_{lo+1}, W_{lo+2})` with the cheaper method for the index size.
pub fn term_triple(def: &SequenceDef, lo: i64) -> Result<[Rational; 3]> {
    def.params.check_index(lo)?;
    if lo.unsigned_abs() > MATRIX_THRESHOLD {
        let [c, b, a] = state_vector(def, lo, &mut MatrixStats::default())?;
        Ok([a, b, c])
    } else if lo >= 0 {
        let mut it = Terms::forward(def).skip(lo as usize);
        Ok(std::array::from_fn(|_| it.next().expect("infinite")))
    } else if lo + 2 <= 0 {
        // walking backward yields W_{lo+2}, W_{lo+1}, W_lo
        let mut it = Terms::backward(def)?.skip((lo + 2).unsigned_abs() as usize);
        let [c, b, a]: [Rational; 3] = std::array::from_fn(|_| it.next().expect("infinite"));
        Ok([a, b, c])
    } else {
        Ok([
            term_iterative(def, lo)?,
            term_iterative(def, lo + 1)?,
            term_iterative(def, lo + 2)?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tribonacci() -> SequenceDef {
        SequenceDef::from_ints([0, 1, 1], [1, 1, 1])
    }

    fn perrin() -> SequenceDef {
        SequenceDef::from_ints([3, 0, 2], [0, 1, 1])
    }

    #[test]
    fn iterative_examples() {
        assert_eq!(term_iterative(&tribonacci(), 0).unwrap(), Rational::from(0));
        assert_eq!(
            term_iterative(&tribonacci(), 7).unwrap(),
            Rational::from(24)
        );
        assert_eq!(
            term_iterative(&tribonacci(), -3).unwrap(),
            Rational::from(-1)
        );
        assert_eq!(term_iterative(&perrin(), -5).unwrap(), Rational::from(4));
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(term_matrix(&tribonacci(), 2).unwrap(), Rational::from(1));
        assert_eq!(term_matrix(&tribonacci(), 13).unwrap(), Rational::from(927));
        let pell3 = SequenceDef::from_ints([0, 1, 2], [2, 1, 1]);
        assert_eq!(term_matrix(&pell3, 5).unwrap(), Rational::from(33));
    }

    #[test]
    fn exponent_zero_uses_no_products() {
        let (v, stats) = term_matrix_with_stats(&tribonacci(), 2).unwrap();
        assert_eq!(v, Rational::from(1));
        assert_eq!(stats.total(), 0);
    }

    #[test]
    fn negative_index_needs_nonzero_t() {
        let def = SequenceDef::from_ints([1, 2, 3], [1, 1, 0]);
        assert_eq!(
            term_iterative(&def, -1),
            Err(Error::NegativeIndexWithZeroT { index: -1 })
        );
        assert_eq!(
            term_matrix(&def, -4),
            Err(Error::NegativeIndexWithZeroT { index: -4 })
        );
        // forward evaluation is still fine
        assert_eq!(term_matrix(&def, 3).unwrap(), Rational::from(5));
    }

    #[test]
    fn companion_layout_and_determinant() {
        let m = companion_matrix(&RecurrenceParams::new(1, 1, 1)).entries();
        let expect = [[1, 1, 1], [1, 0, 0], [0, 1, 0]].map(|row| row.map(Rational::from));
        assert_eq!(m, expect);

        let m = companion_matrix(&RecurrenceParams::new(0, 2, 1)).entries();
        let expect = [[0, 2, 1], [1, 0, 0], [0, 1, 0]].map(|row| row.map(Rational::from));
        assert_eq!(m, expect);

        let det = companion_matrix(&RecurrenceParams::new(2, 1, 1)).determinant();
        assert_eq!(det, Rational::from(1));
    }

    #[test]
    fn inverse_times_companion_is_identity() {
        let params = RecurrenceParams::new(
            Rational::new(3, 2),
            Rational::from(-4),
            Rational::new(-5, 7),
        );
        let c = companion_matrix(&params);
        let inv = c.inverse().unwrap();
        assert_eq!(c.to_matrix().mul(&inv), Matrix3::identity());
        assert_eq!(inv.mul(&c.to_matrix()), Matrix3::identity());
        assert!(companion_matrix(&RecurrenceParams::new(1, 1, 0))
            .inverse()
            .is_none());
    }

    #[test]
    fn triple_matches_single_terms_on_both_sides_of_threshold() {
        let def = tribonacci();
        for lo in [-80, -66, -65, -64, -3, 0, 60, 63, 64, 65, 100] {
            let got = term_triple(&def, lo).unwrap();
            for (i, v) in got.iter().enumerate() {
                assert_eq!(
                    v,
                    &term_iterative(&def, lo + i as i64).unwrap(),
                    "lo={lo} i={i}"
                );
            }
        }
    }
}
