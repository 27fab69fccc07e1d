//! Exact sparse arithmetic for Laurent polynomials in (q, t, a) and for
//! rational series whose denominators are products of factors `(1 - q^l)`.
//!
//! Coefficients are arbitrary-precision integers.  Exponents of `q` and `a`
//! are always nonnegative; the exponent of `t` may be negative (the Q- and
//! R-series are graded by `t^{-codinv'}`).

mod fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent triple of a monomial `q^q t^t a^a`.
///
/// Field order is (a, q, t) so that the derived `Ord` is the lexicographic
/// order used for serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub a: i64,
    pub q: i64,
    pub t: i64,
}

impl Exponents {
    pub fn new(q: i64, t: i64, a: i64) -> Self {
        debug_assert!(q >= 0 && a >= 0, "q and a exponents must be nonnegative");
        Exponents { a, q, t }
    }
}

/// Sparse Laurent polynomial in `q, t, a` with exact integer coefficients.
///
/// Invariants: no zero coefficient is ever stored, exponent triples are
/// unique, and every stored triple has `q >= 0` and `a >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigInt::one(), 0, 0, 0)
    }

    /// The monomial `c * q^eq * t^et * a^ea`.
    pub fn monomial(c: BigInt, eq: i64, et: i64, ea: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::new(eq, et, ea), c);
        }
        LaurentPoly { terms }
    }

    /// Build from `(coefficient, e_q, e_t, e_a)` tuples; repeated exponent
    /// triples are combined.
    pub fn from_terms(terms: &[(i64, i64, i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(c, eq, et, ea) in terms {
            p.add_term(BigInt::from(c), Exponents::new(eq, et, ea));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, eq: i64, et: i64, ea: i64) -> BigInt {
        self.terms
            .get(&Exponents::new(eq, et, ea))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, c: BigInt, e: Exponents) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiply by the monomial `c * q^dq * t^dt * a^da`.  Panics if a shift
    /// would make a `q` or `a` exponent negative; callers only shift down
    /// when divisibility is guaranteed.
    pub fn mul_monomial(&self, c: &BigInt, dq: i64, dt: i64, da: i64) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = BTreeMap::new();
        for (e, v) in &self.terms {
            assert!(
                e.q + dq >= 0 && e.a + da >= 0,
                "monomial shift by q^{dq} a^{da} leaves the polynomial ring"
            );
            out.insert(Exponents::new(e.q + dq, e.t + dt, e.a + da), v * c);
        }
        LaurentPoly { terms: out }
    }

    /// Substitute `t -> t^{-1}` (negate every `t` exponent).
    pub fn invert_t(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (Exponents::new(e.q, -e.t, e.a), v.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Swap the `q` and `t` exponents of every term.  Panics if any `t`
    /// exponent is negative.
    pub fn swap_qt(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| {
                assert!(
                    e.t >= 0,
                    "cannot swap q and t on a term with negative t exponent"
                );
                (Exponents::new(e.t, e.q, e.a), v.clone())
            })
            .collect();
        LaurentPoly { terms }
    }

    /// Drop every term with a positive `a` exponent (specialize `a = 0`).
    pub fn specialize_a0(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.a == 0)
            .map(|(e, v)| (*e, v.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Evaluate at `q = t = 1`.  Requires an `a`-free polynomial.
    pub fn eval_q1_t1(&self) -> BigInt {
        assert!(
            self.terms.keys().all(|e| e.a == 0),
            "eval_q1_t1 expects an a-free polynomial"
        );
        self.terms.values().sum()
    }

    /// Largest `q` exponent, or `None` for the zero polynomial.
    pub fn max_q(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.q).max()
    }

    /// Discard all terms with `q` exponent above `q_max`.
    pub fn truncate_q(&self, q_max: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.q <= q_max)
            .map(|(e, v)| (*e, v.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// True if every coefficient is positive.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Exact division by a polynomial in `q` alone, given as
    /// `(exponent, coefficient)` pairs with ascending exponents and an
    /// invertible (unit) leading coefficient.  Returns `None` when the
    /// division is not exact.
    pub fn div_exact_q(&self, divisor: &[(i64, BigInt)]) -> Option<Self> {
        assert!(!divisor.is_empty());
        let (lead_e, lead_c) = divisor.last().unwrap();
        assert!(
            lead_c.abs().is_one(),
            "divisor leading coefficient must be a unit"
        );
        // Slice the dividend by (t, a); each slice is a polynomial in q that
        // must be divisible on its own.
        let mut slices: BTreeMap<(i64, i64), BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (e, v) in &self.terms {
            slices.entry((e.t, e.a)).or_default().insert(e.q, v.clone());
        }
        let mut out = LaurentPoly::zero();
        for ((et, ea), mut rem) in slices {
            while let Some((&top_e, _)) = rem.iter().next_back() {
                let top_c = rem[&top_e].clone();
                let shift = top_e - lead_e;
                if shift < 0 {
                    return None; // nonzero remainder of lower degree
                }
                let factor = &top_c / lead_c; // exact: lead_c is a unit
                for (de, dc) in divisor {
                    let e = de + shift;
                    let entry = rem.entry(e).or_insert_with(BigInt::zero);
                    *entry -= dc * &factor;
                    if entry.is_zero() {
                        rem.remove(&e);
                    }
                }
                out.add_term(factor, Exponents::new(shift, et, ea));
            }
        }
        Some(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(v.clone(), *e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(-v.clone(), *e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, v)| (*e, -v.clone())).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, v1) in &self.terms {
            for (e2, v2) in &rhs.terms {
                out.add_term(
                    v1 * v2,
                    Exponents::new(e1.q + e2.q, e1.t + e2.t, e1.a + e2.a),
                );
            }
        }
        out
    }
}

/// `1 - q^l` as term pairs for [`LaurentPoly::div_exact_q`].
fn one_minus_q_pow_terms(l: u32) -> Vec<(i64, BigInt)> {
    vec![(0, BigInt::one()), (l as i64, -BigInt::one())]
}

/// `1 + q + ... + q^{l-1}` as term pairs.
fn cofactor_terms(l: u32) -> Vec<(i64, BigInt)> {
    (0..l as i64).map(|e| (e, BigInt::one())).collect()
}

/// `1 - q^l` as a polynomial.
pub fn one_minus_q_pow(l: u32) -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::monomial(BigInt::one(), l as i64, 0, 0)
}

/// Rational series: a Laurent polynomial numerator over a structured
/// denominator `prod_i (1 - q^{l_i})`, stored as the multiset of the `l_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalSeries {
    num: LaurentPoly,
    den: Vec<u32>,
}

impl RationalSeries {
    pub fn zero() -> Self {
        RationalSeries::default()
    }

    pub fn one() -> Self {
        RationalSeries::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalSeries {
            num,
            den: Vec::new(),
        }
    }

    pub fn new(num: LaurentPoly, mut den: Vec<u32>) -> Self {
        assert!(
            den.iter().all(|&l| l > 0),
            "denominator exponents must be positive"
        );
        if num.is_zero() {
            return RationalSeries::zero();
        }
        den.sort_unstable();
        RationalSeries { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// The denominator factor exponents, sorted ascending.
    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The denominator expanded as a polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for &l in &self.den {
            p = &p * &one_minus_q_pow(l);
        }
        p
    }

    fn den_multiplicity(den: &[u32], l: u32) -> usize {
        den.iter().filter(|&&x| x == l).count()
    }

    /// Divide by `1 - q^l` (append a denominator factor).
    pub fn div_one_minus_q_pow(&self, l: u32) -> Self {
        assert!(l > 0);
        if self.is_zero() {
            return RationalSeries::zero();
        }
        let mut den = self.den.clone();
        den.push(l);
        den.sort_unstable();
        RationalSeries {
            num: self.num.clone(),
            den,
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalSeries::new(&self.num * p, self.den.clone())
    }

    pub fn mul_monomial(&self, c: &BigInt, dq: i64, dt: i64, da: i64) -> Self {
        RationalSeries::new(self.num.mul_monomial(c, dq, dt, da), self.den.clone())
    }

    /// Substitute `t -> t^{-1}`; the denominator involves only `q`.
    pub fn invert_t(&self) -> Self {
        RationalSeries {
            num: self.num.invert_t(),
            den: self.den.clone(),
        }
    }

    pub fn specialize_a0(&self) -> Self {
        RationalSeries::new(self.num.specialize_a0(), self.den.clone())
    }

    /// Expand the geometric series of every denominator factor and truncate
    /// to `q`-degree `q_max`.  Exact on all terms with `e_q <= q_max`.
    pub fn expand(&self, q_max: i64) -> LaurentPoly {
        assert!(q_max >= 0);
        let mut out = self.num.truncate_q(q_max);
        for &l in &self.den {
            let mut geo = LaurentPoly::zero();
            let mut e = 0i64;
            while e <= q_max {
                geo.add_term(BigInt::one(), Exponents::new(e, 0, 0));
                e += l as i64;
            }
            out = (&out * &geo).truncate_q(q_max);
        }
        out
    }

    /// Canonical form: cancel every denominator factor that divides the
    /// numerator exactly, and replace a factor `1 - q^l` (l > 1) by `1 - q`
    /// whenever the cofactor `1 + q + ... + q^{l-1}` divides the numerator.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return RationalSeries::zero();
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        den.sort_unstable();
        'outer: loop {
            // Exact cancellation, largest factors first.
            let mut distinct: Vec<u32> = den.clone();
            distinct.dedup();
            for &l in distinct.iter().rev() {
                if let Some(q) = num.div_exact_q(&one_minus_q_pow_terms(l)) {
                    num = q;
                    let pos = den.iter().position(|&x| x == l).unwrap();
                    den.remove(pos);
                    continue 'outer;
                }
            }
            // Downgrade 1 - q^l to 1 - q via the cofactor.
            for &l in distinct.iter().rev() {
                if l > 1 {
                    if let Some(q) = num.div_exact_q(&cofactor_terms(l)) {
                        num = q;
                        let pos = den.iter().position(|&x| x == l).unwrap();
                        den.remove(pos);
                        den.push(1);
                        den.sort_unstable();
                        continue 'outer;
                    }
                }
            }
            break;
        }
        RationalSeries { num, den }
    }

    /// Equality of the underlying rational functions, independent of
    /// representation: `num1 * den2 == num2 * den1`.
    pub fn equals(&self, other: &RationalSeries) -> bool {
        // Strip factors common to both denominators first.
        let mut d1 = self.den.clone();
        let mut d2 = other.den.clone();
        d1.retain(|&l| {
            if let Some(pos) = d2.iter().position(|&x| x == l) {
                d2.remove(pos);
                false
            } else {
                true
            }
        });
        let lhs = RationalSeries {
            num: self.num.clone(),
            den: d1,
        };
        let rhs = RationalSeries {
            num: other.num.clone(),
            den: d2,
        };
        &lhs.num * &rhs.den_poly() == &rhs.num * &lhs.den_poly()
    }

    /// Reduce and return the numerator if the series is a polynomial.
    pub fn as_polynomial(&self) -> Option<LaurentPoly> {
        let r = self.reduce();
        if r.den.is_empty() {
            Some(r.num)
        } else {
            None
        }
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Common denominator: per-factor maximum multiplicity.
        let mut union: Vec<u32> = Vec::new();
        let mut distinct: Vec<u32> = self.den.iter().chain(rhs.den.iter()).copied().collect();
        distinct.sort_unstable();
        distinct.dedup();
        for l in distinct {
            let m = RationalSeries::den_multiplicity(&self.den, l)
                .max(RationalSeries::den_multiplicity(&rhs.den, l));
            union.extend(std::iter::repeat_n(l, m));
        }
        let complement = |den: &[u32]| -> LaurentPoly {
            let mut p = LaurentPoly::one();
            let mut rest = den.to_vec();
            for &l in &union {
                if let Some(pos) = rest.iter().position(|&x| x == l) {
                    rest.remove(pos);
                } else {
                    p = &p * &one_minus_q_pow(l);
                }
            }
            p
        };
        let num = &(&self.num * &complement(&self.den)) + &(&rhs.num * &complement(&rhs.den));
        RationalSeries::new(num, union)
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        RationalSeries::new(&self.num * &rhs.num, den)
    }
}

/// A series kept as a graded sum over pole orders,
/// `sum_j parts[j] / (1 - q)^j`.
///
/// Division by `1 - q^l` succeeds only when every graded numerator is
/// divisible by the cofactor `1 + q + ... + q^{l-1}`; otherwise the value is
/// poisoned and [`PoleSum::into_parts`] returns `None`.  Running the
/// recursion in this representation reproduces the hand-grouped displays
/// with one nonnegative numerator per pole order, when such a grouping
/// exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSum {
    parts: BTreeMap<u32, LaurentPoly>,
    poisoned: bool,
}

impl PoleSum {
    pub fn zero() -> Self {
        PoleSum {
            parts: BTreeMap::new(),
            poisoned: false,
        }
    }

    pub fn one() -> Self {
        let mut parts = BTreeMap::new();
        parts.insert(0, LaurentPoly::one());
        PoleSum {
            parts,
            poisoned: false,
        }
    }

    fn insert(&mut self, order: u32, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.parts.entry(order).or_insert_with(LaurentPoly::zero);
        *entry = &*entry + &p;
        if entry.is_zero() {
            self.parts.remove(&order);
        }
    }

    pub fn add(&self, rhs: &PoleSum) -> Self {
        let mut out = self.clone();
        out.poisoned |= rhs.poisoned;
        for (&j, p) in &rhs.parts {
            out.insert(j, p.clone());
        }
        out
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut out = PoleSum::zero();
        out.poisoned = self.poisoned;
        for (&j, part) in &self.parts {
            out.insert(j, part * p);
        }
        out
    }

    /// Divide by `1 - q^l`.  For `l = 1` every pole order shifts up by one;
    /// for `l > 1` each graded numerator must be exactly divisible by the
    /// cofactor `1 + q + ... + q^{l-1}`.
    pub fn div_one_minus_q_pow(&self, l: u32) -> Self {
        let mut out = PoleSum::zero();
        out.poisoned = self.poisoned;
        for (&j, part) in &self.parts {
            if l == 1 {
                out.insert(j + 1, part.clone());
            } else if let Some(quot) = part.div_exact_q(&cofactor_terms(l)) {
                out.insert(j + 1, quot);
            } else {
                out.poisoned = true;
                return out;
            }
        }
        out
    }

    /// Flatten to an ordinary [`RationalSeries`].
    pub fn to_series(&self) -> RationalSeries {
        let mut acc = RationalSeries::zero();
        for (&j, part) in &self.parts {
            let term = RationalSeries::new(part.clone(), vec![1; j as usize]);
            acc = &acc + &term;
        }
        acc
    }

    /// The graded numerators `(pole order, numerator)` if no division
    /// failed along the way.
    pub fn into_parts(self) -> Option<BTreeMap<u32, LaurentPoly>> {
        if self.poisoned {
            None
        } else {
            Some(self.parts)
        }
    }

    pub fn parts(&self) -> Option<&BTreeMap<u32, LaurentPoly>> {
        if self.poisoned {
            None
        } else {
            Some(&self.parts)
        }
    }

    /// True if every graded numerator has only positive coefficients.
    pub fn is_nonneg(&self) -> bool {
        !self.poisoned && self.parts.values().all(|p| p.is_nonneg())
    }
}
