//! Assembly of the rational q,t-Catalan series c_{M,N}(q,t), its
//! structural checks, and the colored-knot Poincaré series.
//!
//! The series is computed from the all-zeros word:
//! `c_{M,N}(q,t) = q^{-N-M} t^{delta} (1-q) P_{0^{M+N}}(q, t^{-1})`,
//! which after reduction is a rational function with denominator
//! `(1-q)^{d-1}`, d = gcd(M,N).  The independent definition as a sum of
//! `q^area t^dinv` over invariant subsets containing 0 is covered by the
//! enumeration oracle in the tests.

use crate::algebra::{one_minus_q_pow, LaurentPoly, PoleSum, RationalSeries};
use crate::sequences::{BinaryWord, Grid, MarkerWord};
use crate::solvers::{RSolver, Solver};
use crate::treeviz::eval_trace;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalanError {
    #[error("colored knot series requires coprime (m, n); gcd({0}, {1}) != 1")]
    NotCoprime(usize, usize),
}

/// The rational q,t-Catalan series of a grid together with its polynomial
/// normal form `(1-q)^{d-1} c_{M,N}` and the outcome of the q,t-symmetry
/// check.
#[derive(Clone, Debug)]
pub struct CatalanResult {
    pub grid: Grid,
    pub series: RationalSeries,
    pub polynomial_form: LaurentPoly,
    pub symmetric: bool,
}

impl CatalanResult {
    pub fn to_json(&self) -> Value {
        json!({
            "grid": [self.grid.m(), self.grid.n()],
            "series": self.series.to_json(),
            "polynomial": self.polynomial_form.to_json(),
            "symmetric": self.symmetric,
        })
    }

    pub fn to_latex(&self) -> String {
        self.polynomial_form.to_latex()
    }
}

/// Compute c_{M,N}(q,t) through the recursion, reusing the given solver's
/// caches.
pub fn catalan_series_with(solver: &mut Solver) -> CatalanResult {
    let grid = solver.grid();
    let p0 = solver.solve_p(&BinaryWord::zeros(grid));
    let len = grid.len() as i64;
    let series = p0
        .invert_t()
        .mul_poly(&one_minus_q_pow(1))
        .mul_monomial(&BigInt::one(), -len, grid.delta(), 0)
        .reduce();
    let mut shifted = series.clone();
    for _ in 1..grid.d() {
        shifted = shifted.mul_poly(&one_minus_q_pow(1));
    }
    let polynomial_form = shifted
        .as_polynomial()
        .expect("(1-q)^{d-1} c_{M,N} must be a polynomial");
    assert!(
        polynomial_form.iter().all(|(e, _)| e.t >= 0),
        "catalan polynomial must have nonnegative t exponents"
    );
    let symmetric = polynomial_form == polynomial_form.swap_qt();
    CatalanResult {
        grid,
        series,
        polynomial_form,
        symmetric,
    }
}

/// Compute c_{M,N}(q,t) with a fresh solver.
pub fn catalan_series(m: usize, n: usize) -> CatalanResult {
    catalan_series_with(&mut Solver::new(Grid::new(m, n)))
}

/// True if `(1-q)^{d-1} c_{M,N}` is fixed by swapping the q and t
/// exponents.
pub fn check_symmetry(m: usize, n: usize) -> bool {
    catalan_series(m, n).symmetric
}

/// Pole-graded positive form of P_u: the recursion replayed over
/// [`PoleSum`], giving one numerator per power of (1-q).  `None` when the
/// graded computation does not stay nonnegative.
pub fn positive_form(solver: &Solver, u: &BinaryWord) -> Option<PoleSum> {
    let trace = solver.decision_trace(u).ok()?;
    let sum = eval_trace::<PoleSum>(&trace);
    if sum.is_nonneg() {
        Some(sum)
    } else {
        None
    }
}

/// Number of terms of the polynomial P_{0^{M+N-d} 1^d}: its evaluation at
/// q = t = 1.  Equals the d-th power of the rational Catalan count of the
/// coprime reduction of the grid.
pub fn term_count(solver: &mut Solver) -> BigInt {
    let grid = solver.grid();
    let u = BinaryWord::zeros_then_ones(grid, grid.d());
    let poly = solver
        .solve_p(&u)
        .as_polynomial()
        .expect("P over the d-ones word is a polynomial");
    poly.eval_q1_t1()
}

/// Poincaré series of the (m,n) torus knot colored by the d-th symmetric
/// power: the R-series of the pair (0^{M-d} x^d, 0^{N-d} x^d) with
/// M = dm, N = dn, times the prefactor `prod_{i=1}^{d} 1/(1 - q t^{i-d})`.
/// The prefactor is kept as an explicit list of t-shifts because its
/// mixed factors do not fit the `(1 - q^l)`-only denominator type.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotSeries {
    /// The t-shifts `i - d` of the prefactor factors `1/(1 - q t^shift)`.
    pub prefactor_t_shifts: Vec<i64>,
    /// The R-part, a rational series (a polynomial for these pairs).
    pub r_part: RationalSeries,
}

impl KnotSeries {
    /// Multiply out the prefactor geometric series termwise up to `q_max`.
    pub fn expand(&self, q_max: i64) -> LaurentPoly {
        let mut out = self.r_part.expand(q_max);
        for &s in &self.prefactor_t_shifts {
            let mut geo = LaurentPoly::zero();
            for j in 0..=q_max {
                geo = &geo + &LaurentPoly::monomial(BigInt::one(), j, j * s, 0);
            }
            out = (&out * &geo).truncate_q(q_max);
        }
        out
    }
}

impl fmt::Display for KnotSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.prefactor_t_shifts {
            match s {
                0 => write!(f, "1/(1-q) * ")?,
                1 => write!(f, "1/(1-q*t) * ")?,
                _ => write!(f, "1/(1-q*t^{s}) * ")?,
            }
        }
        write!(f, "[{}]", self.r_part)
    }
}

/// Build the colored-knot series for the (m,n) torus knot and color d.
pub fn colored_knot_series(
    m: usize,
    n: usize,
    d: usize,
    include_a: bool,
) -> Result<KnotSeries, CatalanError> {
    if Grid::new(m, n).d() != 1 {
        return Err(CatalanError::NotCoprime(m, n));
    }
    assert!(d >= 1);
    let (big_m, big_n) = (d * m, d * n);
    let x = MarkerWord::zeros_then_crosses(big_m, d);
    let y = MarkerWord::zeros_then_crosses(big_n, d);
    let mut solver = RSolver::new(include_a);
    let r_part = solver.solve(&x, &y).reduce();
    let prefactor_t_shifts = (1..=d as i64).map(|i| i - d as i64).collect();
    Ok(KnotSeries {
        prefactor_t_shifts,
        r_part,
    })
}
