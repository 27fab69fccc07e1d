//! Brute-force oracle over (M,N)-invariant subsets of the nonnegative
//! integers.
//!
//! A subset Delta is invariant when `Delta + N` and `Delta + M` are both
//! contained in Delta and the complement (the gap set) is finite.  All
//! statistics are computed directly from the gap set, and truncated
//! generating series built here are the independent reference that the
//! recursion solvers are checked against.

use crate::algebra::LaurentPoly;
use crate::sequences::{BinaryWord, Grid};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("gap set violates closure: gap {gap} requires gap {missing}")]
    ClosureViolation { gap: i64, missing: i64 },
}

/// An (M,N)-invariant subset, stored by its finite gap set (the complement
/// of Delta within the nonnegative integers).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InvariantSubset {
    grid: Grid,
    gaps: BTreeSet<i64>,
}

impl InvariantSubset {
    /// Build from a gap set, checking the closure invariant: every gap g
    /// must have g - N and g - M either negative or gaps themselves.
    pub fn new(grid: Grid, gaps: BTreeSet<i64>) -> Result<Self, SubsetError> {
        let (m, n) = (grid.m() as i64, grid.n() as i64);
        for &g in &gaps {
            assert!(g >= 0, "gaps are nonnegative integers");
            for step in [n, m] {
                let p = g - step;
                if p >= 0 && !gaps.contains(&p) {
                    return Err(SubsetError::ClosureViolation { gap: g, missing: p });
                }
            }
        }
        Ok(InvariantSubset { grid, gaps })
    }

    pub fn from_gaps(grid: Grid, gaps: &[i64]) -> Result<Self, SubsetError> {
        InvariantSubset::new(grid, gaps.iter().copied().collect())
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn gaps(&self) -> &BTreeSet<i64> {
        &self.gaps
    }

    /// Membership in Delta.
    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && !self.gaps.contains(&x)
    }

    /// area(Delta) = number of gaps.
    pub fn area(&self) -> i64 {
        self.gaps.len() as i64
    }

    /// The N-generators: elements a of Delta with a - N not in Delta.
    /// There are exactly N of them, one per residue class mod N.
    pub fn ngen(&self) -> BTreeSet<i64> {
        self.generators(self.grid.n() as i64)
    }

    /// The M-generators.
    pub fn mgen(&self) -> BTreeSet<i64> {
        self.generators(self.grid.m() as i64)
    }

    fn generators(&self, step: i64) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for a in 0..step {
            if self.contains(a) {
                out.insert(a);
            }
        }
        for &g in &self.gaps {
            let a = g + step;
            if self.contains(a) {
                out.insert(a);
            }
        }
        debug_assert_eq!(out.len() as i64, step);
        out
    }

    /// codinv(Delta): over all N-generators a, count the gaps in the
    /// window [a, a + M - 1].
    pub fn codinv(&self) -> i64 {
        let m = self.grid.m() as i64;
        self.ngen()
            .iter()
            .map(|&a| self.gaps.range(a..a + m).count() as i64)
            .sum()
    }

    /// dinv(Delta) = delta(N, M) - codinv(Delta).
    pub fn dinv(&self) -> i64 {
        self.grid.delta() - self.codinv()
    }

    /// area'(Delta): gaps at positions >= M + N.
    pub fn area_prime(&self) -> i64 {
        let len = self.grid.len() as i64;
        self.gaps.range(len..).count() as i64
    }

    /// lambda(Delta): N-generators in the window [N, N + M - 1].
    pub fn lambda(&self) -> i64 {
        let (m, n) = (self.grid.m() as i64, self.grid.n() as i64);
        self.ngen().range(n..n + m).count() as i64
    }

    /// codinv'(Delta): the codinv window counts restricted to positions
    /// >= M + N, minus lambda(lambda - 1)/2.
    pub fn codinv_prime(&self) -> i64 {
        let m = self.grid.m() as i64;
        let len = self.grid.len() as i64;
        let first: i64 = self
            .ngen()
            .iter()
            .map(|&a| {
                let lo = a.max(len);
                let hi = a + m;
                if hi > lo {
                    self.gaps.range(lo..hi).count() as i64
                } else {
                    0
                }
            })
            .sum();
        let lam = self.lambda();
        first - lam * (lam - 1) / 2
    }

    /// lambda_k(Delta): N-generators in [k+N+1, k+N+M], which always equals
    /// the count of M-generators in [k+M+1, k+N+M].
    pub fn lambda_k(&self, k: i64) -> i64 {
        let (m, n) = (self.grid.m() as i64, self.grid.n() as i64);
        let by_n = self.ngen().range(k + n + 1..=k + n + m).count() as i64;
        let by_m = self.mgen().range(k + m + 1..=k + n + m).count() as i64;
        assert_eq!(by_n, by_m, "lambda_k window counts must agree");
        by_n
    }

    /// Double cogenerators: nonnegative gaps k with k + N and k + M both
    /// in Delta.
    pub fn cogenerators(&self) -> BTreeSet<i64> {
        let (m, n) = (self.grid.m() as i64, self.grid.n() as i64);
        self.gaps
            .iter()
            .copied()
            .filter(|&k| self.contains(k + n) && self.contains(k + m))
            .collect()
    }

    /// The shift map: remove 0 from Delta if present, then shift down by 1.
    /// On gap sets this is simply g -> g - 1, discarding a gap at 0.
    pub fn rho(&self) -> InvariantSubset {
        let gaps = self
            .gaps
            .iter()
            .filter(|&&g| g >= 1)
            .map(|&g| g - 1)
            .collect();
        InvariantSubset {
            grid: self.grid,
            gaps,
        }
    }

    /// The binary word recording Delta on [0, M+N-1].
    pub fn word(&self) -> BinaryWord {
        let bits = (0..self.grid.len() as i64)
            .map(|i| self.contains(i))
            .collect();
        BinaryWord::new(self.grid, bits).unwrap()
    }

    /// Gap set in the form `{0,1,3}`.
    pub fn gaps_string(&self) -> String {
        let inner: Vec<String> = self.gaps.iter().map(|g| g.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Display for InvariantSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.gaps_string())
    }
}

/// Which truncated generating series to build from the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// sum q^area t^codinv
    P,
    /// P with the factor prod (1 + a t^{lambda_k}) over double cogenerators
    PHat,
    /// sum q^{area'} t^{-codinv'}
    Q,
    /// Q with the factor prod (1 + a t^{-lambda_k})
    QHat,
}

/// Depth-first enumeration of gap sets.  Positions below `free_from` are
/// already decided by `gaps`; positions at or above it may be gaps when
/// closure permits.  A gap at position i requires gaps at i-N and i-M
/// (when nonnegative), so no gap can exceed max(gaps) + min(M,N); the
/// search stops as soon as that bound passes.
fn dfs(
    grid: Grid,
    gaps: &mut BTreeSet<i64>,
    i: i64,
    free_from: i64,
    max_area: usize,
    out: &mut Vec<InvariantSubset>,
) {
    let mn = grid.m().min(grid.n()) as i64;
    let bound = gaps.iter().next_back().copied().unwrap_or(-1) + mn;
    if i > bound && i >= free_from {
        debug_assert!(InvariantSubset::new(grid, gaps.clone()).is_ok());
        out.push(InvariantSubset {
            grid,
            gaps: gaps.clone(),
        });
        return;
    }
    let (m, n) = (grid.m() as i64, grid.n() as i64);
    dfs(grid, gaps, i + 1, free_from, max_area, out);
    let can_gap = gaps.len() < max_area
        && (i - n < 0 || gaps.contains(&(i - n)))
        && (i - m < 0 || gaps.contains(&(i - m)));
    if can_gap {
        gaps.insert(i);
        dfs(grid, gaps, i + 1, free_from, max_area, out);
        gaps.remove(&i);
    }
}

/// All invariant subsets whose word is `u` and whose area is at most
/// `max_area`.  An inadmissible word yields the empty list.
pub fn enumerate(u: &BinaryWord, max_area: usize) -> Vec<InvariantSubset> {
    if !u.is_admissible() {
        return Vec::new();
    }
    let grid = u.grid();
    let mut gaps: BTreeSet<i64> = (0..u.len() as i64)
        .filter(|&i| !u.bit(i as usize))
        .collect();
    if gaps.len() > max_area {
        return Vec::new();
    }
    let mut out = Vec::new();
    dfs(
        grid,
        &mut gaps,
        grid.len() as i64,
        grid.len() as i64,
        max_area,
        &mut out,
    );
    out.sort();
    out
}

/// All invariant subsets containing 0 (the set I^0) with area at most
/// `max_area`.
pub fn enumerate_containing_zero(grid: Grid, max_area: usize) -> Vec<InvariantSubset> {
    let mut gaps = BTreeSet::new();
    let mut out = Vec::new();
    dfs(grid, &mut gaps, 1, 1, max_area, &mut out);
    out.sort();
    out
}

/// All invariant subsets with area at most `max_area`, with no word
/// constraint at all.
pub fn enumerate_all(grid: Grid, max_area: usize) -> Vec<InvariantSubset> {
    let mut gaps = BTreeSet::new();
    let mut out = Vec::new();
    dfs(grid, &mut gaps, 0, 0, max_area, &mut out);
    out.sort();
    out
}

/// Truncated generating series over the enumeration, the oracle the
/// recursion solvers are validated against.  For kinds P/PHat the cut is
/// `area <= max_q`; for Q/QHat it is `area' <= max_q` (gaps below M+N are
/// fixed by the word, so this enumerates area up to max_q + zeros(u)).
pub fn truncated_series(u: &BinaryWord, kind: SeriesKind, max_q: i64) -> LaurentPoly {
    assert!(max_q >= 0);
    let max_area = match kind {
        SeriesKind::P | SeriesKind::PHat => max_q as usize,
        SeriesKind::Q | SeriesKind::QHat => max_q as usize + u.count_zeros(),
    };
    let mut acc = LaurentPoly::zero();
    for delta in enumerate(u, max_area) {
        let term = match kind {
            SeriesKind::P | SeriesKind::PHat => {
                let base = LaurentPoly::monomial(BigInt::one(), delta.area(), delta.codinv(), 0);
                if kind == SeriesKind::P {
                    base
                } else {
                    hat_factor(&delta, &base, false)
                }
            }
            SeriesKind::Q | SeriesKind::QHat => {
                if delta.area_prime() > max_q {
                    continue;
                }
                let base = LaurentPoly::monomial(
                    BigInt::one(),
                    delta.area_prime(),
                    -delta.codinv_prime(),
                    0,
                );
                if kind == SeriesKind::Q {
                    base
                } else {
                    hat_factor(&delta, &base, true)
                }
            }
        };
        acc = &acc + &term;
    }
    acc
}

fn hat_factor(delta: &InvariantSubset, base: &LaurentPoly, negate_t: bool) -> LaurentPoly {
    let mut term = base.clone();
    for k in delta.cogenerators() {
        let lam = delta.lambda_k(k);
        let e_t = if negate_t { -lam } else { lam };
        let factor = &LaurentPoly::one() + &LaurentPoly::monomial(BigInt::one(), 0, e_t, 1);
        term = &term * &factor;
    }
    term
}

/// CSV audit dump: one row per subset with all statistics.
pub fn csv_dump(subsets: &[InvariantSubset]) -> String {
    let mut out = String::from("gaps,area,codinv,dinv,area_prime,codinv_prime,cogenerators\n");
    for d in subsets {
        let cogens: Vec<String> = d.cogenerators().iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "\"{}\",{},{},{},{},{},\"{{{}}}\"\n",
            d.gaps_string(),
            d.area(),
            d.codinv(),
            d.dinv(),
            d.area_prime(),
            d.codinv_prime(),
            cogens.join(",")
        ));
    }
    out
}
