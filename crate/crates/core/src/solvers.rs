//! Closed-form computation of the series P, P-hat, Q, Q-hat and R by
//! memoized recursion with rotation-cycle resolution.
//!
//! Every recursion here has the same shape: from a word (or pair of
//! words), the unique successor with the same "size" is a cyclic rotation,
//! while all other successors are strictly smaller subproblems.  A solve
//! therefore walks the rotation chain, accumulating branch terms into
//! smaller recursive solves, until the chain either exits through a
//! size-decreasing step or returns to its starting word.  A first return
//! closes a cycle whose accumulated weight is a pure power `q^l`, giving
//! the linear equation `(1 - q^l) * X = branches` and a denominator
//! factor `1 - q^l`.

use crate::algebra::{LaurentPoly, RationalSeries};
use crate::sequences::{
    from_markers, pair_is_admissible, BinaryWord, Grid, Marker, MarkerWord, WordError,
};
use crate::treeviz::{EdgeColor, EdgeKind, TraceGraph};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;

/// Counters describing the work a solver has done.  `max_cycle_factor` is
/// the largest exponent `l` of any raw denominator factor `1 - q^l`
/// produced by cycle resolution, before any reduction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub nodes: usize,
    pub cycles: usize,
    pub max_cycle_factor: u32,
}

impl SolverStats {
    fn record_cycle(&mut self, l: u32) {
        self.cycles += 1;
        self.max_cycle_factor = self.max_cycle_factor.max(l);
    }
}

/// Case split of the binary-word recursion at a word u.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PCase {
    /// u_0 = u_N = u_M = 0: branch to w1 and continue the chain at w0.
    Split,
    /// u_0 = 0 and u_N + u_M > 0: the chain exits through w1.
    /// `both` records u_N = u_M = 1, which contributes the factor
    /// (1 + a t^{lambda(w1)}) in the a-enhanced series.
    Exit { both: bool },
    /// u_0 = 1 (hence u_N = u_M = 1 on admissible words): rotate with
    /// weight t^{lambda(u)}.
    Shift,
}

fn p_case(u: &BinaryWord) -> PCase {
    let g = u.grid();
    if u.bit(0) {
        PCase::Shift
    } else {
        let un = u.bit(g.n());
        let um = u.bit(g.m());
        if !un && !um {
            PCase::Split
        } else {
            PCase::Exit { both: un && um }
        }
    }
}

/// Memoized solver for the series attached to one grid.  Each instance
/// owns its caches; results are canonical (reduced) and immutable.
pub struct Solver {
    grid: Grid,
    memo_p: HashMap<BinaryWord, RationalSeries>,
    memo_phat: HashMap<BinaryWord, RationalSeries>,
    memo_q: HashMap<(MarkerWord, MarkerWord), RationalSeries>,
    memo_qhat: HashMap<(MarkerWord, MarkerWord), RationalSeries>,
    stats: SolverStats,
}

impl Solver {
    pub fn new(grid: Grid) -> Self {
        Solver {
            grid,
            memo_p: HashMap::new(),
            memo_phat: HashMap::new(),
            memo_q: HashMap::new(),
            memo_qhat: HashMap::new(),
            stats: SolverStats::default(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// The power series P_u(q, t), as a rational function in canonical
    /// form.  Inadmissible words give 0; the all-ones word gives 1.
    pub fn solve_p(&mut self, u: &BinaryWord) -> RationalSeries {
        self.solve_binary(u, false)
    }

    /// The a-enhanced series over the same recursion; at a = 0 it equals
    /// [`Solver::solve_p`].
    pub fn solve_phat(&mut self, u: &BinaryWord) -> RationalSeries {
        self.solve_binary(u, true)
    }

    fn solve_binary(&mut self, u: &BinaryWord, hat: bool) -> RationalSeries {
        assert_eq!(u.grid(), self.grid, "word grid does not match solver grid");
        let memo = if hat { &self.memo_phat } else { &self.memo_p };
        if let Some(v) = memo.get(u) {
            return v.clone();
        }
        if u.is_all_ones() {
            return RationalSeries::one();
        }
        if !u.is_admissible() {
            return RationalSeries::zero();
        }
        self.stats.nodes += 1;

        let mut acc = RationalSeries::zero();
        // Accumulated chain weight q^{wq} t^{wt}.
        let (mut wq, mut wt) = (0i64, 0i64);
        let mut cur = u.clone();
        let mut cycle: Option<u32> = None;
        let max_steps = u.len() + 1;
        for step in 0..=max_steps {
            assert!(step < max_steps, "rotation chain failed to close or exit");
            debug_assert!(cur.is_admissible() && !cur.is_all_ones());
            match p_case(&cur) {
                PCase::Split => {
                    let branch = cur.rotate_set_last(true);
                    let sub = self.solve_binary(&branch, hat);
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq + 1, wt, 0);
                    wq += 1;
                    cur = cur.rotate_set_last(false);
                }
                PCase::Exit { both } => {
                    let branch = cur.rotate_set_last(true);
                    let sub = self.solve_binary(&branch, hat);
                    let mut term = sub.mul_monomial(&BigInt::one(), wq + 1, wt, 0);
                    if hat && both {
                        let factor = &LaurentPoly::one()
                            + &LaurentPoly::monomial(BigInt::one(), 0, branch.lambda(), 1);
                        term = term.mul_poly(&factor);
                    }
                    acc = &acc + &term;
                    break;
                }
                PCase::Shift => {
                    wt += cur.lambda();
                    cur = cur.rotate_set_last(true);
                }
            }
            if &cur == u {
                // First return: the accumulated weight is q^{kp/(M+N)}
                // with k the zero count and p the minimal period.
                assert_eq!(wt, 0, "cycle weight must be t-free");
                let k = u.count_zeros();
                let p = u.minimal_period();
                assert_eq!(
                    wq as usize * u.len(),
                    k * p,
                    "cycle coefficient must be q^(k p / (M+N))"
                );
                cycle = Some(wq as u32);
                break;
            }
            let memo = if hat { &self.memo_phat } else { &self.memo_p };
            if let Some(v) = memo.get(&cur) {
                acc = &acc + &v.mul_monomial(&BigInt::one(), wq, wt, 0);
                break;
            }
        }
        if let Some(l) = cycle {
            self.stats.record_cycle(l);
            acc = acc.div_one_minus_q_pow(l);
        }
        let out = acc.reduce();
        let memo = if hat {
            &mut self.memo_phat
        } else {
            &mut self.memo_p
        };
        memo.insert(u.clone(), out.clone());
        out
    }

    /// The series Q_{v,w}(q, t) of an admissible marker pair; inadmissible
    /// pairs give 0 and the all-bullet pair gives 1.
    pub fn solve_q(&mut self, v: &MarkerWord, w: &MarkerWord) -> RationalSeries {
        self.solve_pair(v, w, false)
    }

    /// The a-enhanced series over the marker-pair recursion; at a = 0 it
    /// equals [`Solver::solve_q`].
    pub fn solve_qhat(&mut self, v: &MarkerWord, w: &MarkerWord) -> RationalSeries {
        self.solve_pair(v, w, true)
    }

    fn solve_pair(&mut self, v: &MarkerWord, w: &MarkerWord, hat: bool) -> RationalSeries {
        assert_eq!(
            (v.len(), w.len()),
            (self.grid.m(), self.grid.n()),
            "marker pair lengths must be (M, N)"
        );
        let key = (v.clone(), w.clone());
        let memo = if hat { &self.memo_qhat } else { &self.memo_q };
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        if v.is_all(Marker::Bullet) && w.is_all(Marker::Bullet) {
            return RationalSeries::one();
        }
        if !pair_is_admissible(v, w, self.grid) {
            return RationalSeries::zero();
        }
        self.stats.nodes += 1;

        let mut acc = RationalSeries::zero();
        let (mut wq, mut wt) = (0i64, 0i64);
        let mut cur = key.clone();
        let mut cycle: Option<u32> = None;
        let max_steps = self.grid.m() * self.grid.n() + 1;
        for step in 0..=max_steps {
            assert!(
                step < max_steps,
                "pair rotation chain failed to close or exit"
            );
            let (cv, cw) = (&cur.0, &cur.1);
            match (cv.head().unwrap(), cw.head().unwrap()) {
                (Marker::Gap, Marker::Gap) => {
                    let cc = cv.count_crosses() as i64;
                    let branch = (
                        cv.rotate_set_last(Marker::Cross),
                        cw.rotate_set_last(Marker::Cross),
                    );
                    let sub = self.solve_pair(&branch.0, &branch.1, hat);
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq, wt - cc, 0);
                    wq += 1;
                    wt -= cc;
                    cur = (
                        cv.rotate_set_last(Marker::Gap),
                        cw.rotate_set_last(Marker::Gap),
                    );
                }
                (Marker::Bullet, Marker::Bullet) => {
                    cur = (
                        cv.rotate_set_last(Marker::Bullet),
                        cw.rotate_set_last(Marker::Bullet),
                    );
                }
                (Marker::Cross, Marker::Gap) => {
                    let branch = (
                        cv.rotate_set_last(Marker::Cross),
                        cw.rotate_set_last(Marker::Bullet),
                    );
                    let sub = self.solve_pair(&branch.0, &branch.1, hat);
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq, wt, 0);
                    break;
                }
                (Marker::Gap, Marker::Cross) => {
                    let branch = (
                        cv.rotate_set_last(Marker::Bullet),
                        cw.rotate_set_last(Marker::Cross),
                    );
                    let sub = self.solve_pair(&branch.0, &branch.1, hat);
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq, wt, 0);
                    break;
                }
                (Marker::Cross, Marker::Cross) => {
                    let tail_crosses = cv.count_crosses() as i64 - 1;
                    let branch = (
                        cv.rotate_set_last(Marker::Bullet),
                        cw.rotate_set_last(Marker::Bullet),
                    );
                    let sub = self.solve_pair(&branch.0, &branch.1, hat);
                    let mut factor = LaurentPoly::monomial(BigInt::one(), 0, tail_crosses, 0);
                    if hat {
                        factor = &factor + &LaurentPoly::monomial(BigInt::one(), 0, 0, 1);
                    }
                    let term = sub
                        .mul_monomial(&BigInt::one(), wq, wt, 0)
                        .mul_poly(&factor);
                    acc = &acc + &term;
                    break;
                }
                heads => unreachable!("impossible heads {heads:?} on an admissible pair"),
            }
            if cur == key {
                assert_eq!(wt, 0, "pair cycle weight must be t-free");
                assert!(wq >= 1, "pair cycle must use the doubling relation");
                cycle = Some(wq as u32);
                break;
            }
            let memo = if hat { &self.memo_qhat } else { &self.memo_q };
            if let Some(r) = memo.get(&cur) {
                acc = &acc + &r.mul_monomial(&BigInt::one(), wq, wt, 0);
                break;
            }
        }
        if let Some(l) = cycle {
            self.stats.record_cycle(l);
            acc = acc.div_one_minus_q_pow(l);
        }
        let out = acc.reduce();
        let memo = if hat {
            &mut self.memo_qhat
        } else {
            &mut self.memo_q
        };
        memo.insert(key, out.clone());
        out
    }

    /// The decision graph actually traversed by [`Solver::solve_p`] from
    /// root u: vertices are the distinct words reached, black edges carry
    /// q, red edges carry t^{lambda}, and rotation cycles appear as back
    /// edges (a first periodic return closes the cycle).
    pub fn decision_trace(&self, u: &BinaryWord) -> Result<TraceGraph, WordError> {
        assert_eq!(u.grid(), self.grid, "word grid does not match solver grid");
        if !u.is_admissible() {
            return Err(WordError::Inadmissible);
        }
        let one = LaurentPoly::one();
        let q = LaurentPoly::monomial(BigInt::one(), 1, 0, 0);
        let mut graph = TraceGraph::new();
        let mut index: HashMap<BinaryWord, usize> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        let root = graph.add_vertex(u.to_string(), u.is_all_ones());
        index.insert(u.clone(), root);
        queue.push_back(u.clone());
        while let Some(x) = queue.pop_front() {
            let from = index[&x];
            if x.is_all_ones() {
                continue;
            }
            let link = |graph: &mut TraceGraph,
                        index: &mut HashMap<BinaryWord, usize>,
                        queue: &mut std::collections::VecDeque<BinaryWord>,
                        to_word: BinaryWord,
                        weight: LaurentPoly,
                        color: EdgeColor,
                        kind: EdgeKind| {
                let to = *index.entry(to_word.clone()).or_insert_with(|| {
                    let id = graph.add_vertex(to_word.to_string(), to_word.is_all_ones());
                    queue.push_back(to_word);
                    id
                });
                graph.add_edge(from, to, weight, color, kind);
            };
            match p_case(&x) {
                PCase::Split => {
                    link(
                        &mut graph,
                        &mut index,
                        &mut queue,
                        x.rotate_set_last(true),
                        q.clone(),
                        EdgeColor::Black,
                        EdgeKind::Branch,
                    );
                    link(
                        &mut graph,
                        &mut index,
                        &mut queue,
                        x.rotate_set_last(false),
                        q.clone(),
                        EdgeColor::Black,
                        EdgeKind::Chain,
                    );
                }
                PCase::Exit { .. } => {
                    link(
                        &mut graph,
                        &mut index,
                        &mut queue,
                        x.rotate_set_last(true),
                        q.clone(),
                        EdgeColor::Black,
                        EdgeKind::Branch,
                    );
                }
                PCase::Shift => {
                    let weight = if x.lambda() == 0 {
                        one.clone()
                    } else {
                        LaurentPoly::monomial(BigInt::one(), 0, x.lambda(), 0)
                    };
                    link(
                        &mut graph,
                        &mut index,
                        &mut queue,
                        x.rotate_set_last(true),
                        weight,
                        EdgeColor::Red,
                        EdgeKind::Chain,
                    );
                }
            }
        }
        Ok(graph)
    }
}

/// Standalone solver for the two-word recursion R_{x,y}(q, t, a) over the
/// alphabet {0, ×}.  Pairs are not tied to a grid.  With `include_a`
/// false the doubling relation carries t^{|x|} instead of t^{|x|} + a.
///
/// The relations read both words left to right; the mirrored convention
/// (reversing both words) defines the same series and is not offered as
/// an option.
pub struct RSolver {
    include_a: bool,
    memo: HashMap<(MarkerWord, MarkerWord), RationalSeries>,
    stats: SolverStats,
}

impl RSolver {
    pub fn new(include_a: bool) -> Self {
        RSolver {
            include_a,
            memo: HashMap::new(),
            stats: SolverStats::default(),
        }
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// Solve R for a pair of {0,×} words.  Pairs on which no relation
    /// applies (one word empty, the other not) resolve to 0.
    pub fn solve(&mut self, x: &MarkerWord, y: &MarkerWord) -> RationalSeries {
        assert!(
            x.symbols()
                .iter()
                .chain(y.symbols())
                .all(|&s| s != Marker::Bullet),
            "R is defined on {{0,x}} words; apply phi first"
        );
        let key = (x.clone(), y.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        if x.is_empty() && y.is_empty() {
            return RationalSeries::one();
        }
        self.stats.nodes += 1;

        let mut acc = RationalSeries::zero();
        let (mut wq, mut wt) = (0i64, 0i64);
        let mut cur = key.clone();
        let mut cycle: Option<u32> = None;
        let max_steps = x.len() * y.len() + x.len() + y.len() + 2;
        for step in 0..=max_steps {
            assert!(step < max_steps, "R chain failed to close or exit");
            let (cx, cy) = (&cur.0, &cur.1);
            if cx.is_empty() || cy.is_empty() {
                // No relation matches a half-empty pair; it contributes
                // nothing.  Unreachable from pairs in the image of phi.
                break;
            }
            match (cx.head().unwrap(), cy.head().unwrap()) {
                (Marker::Gap, Marker::Gap) => {
                    let cc = cx.count_crosses() as i64;
                    let branch = (
                        cx.rotate_set_last(Marker::Cross),
                        cy.rotate_set_last(Marker::Cross),
                    );
                    let sub = self.solve(&branch.0, &branch.1);
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq, wt - cc, 0);
                    wq += 1;
                    wt -= cc;
                    cur = (
                        cx.rotate_set_last(Marker::Gap),
                        cy.rotate_set_last(Marker::Gap),
                    );
                }
                (Marker::Cross, Marker::Gap) => {
                    let sub = self.solve(&cx.rotate_set_last(Marker::Cross), &cy.tail());
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq, wt, 0);
                    break;
                }
                (Marker::Gap, Marker::Cross) => {
                    let sub = self.solve(&cx.tail(), &cy.rotate_set_last(Marker::Cross));
                    acc = &acc + &sub.mul_monomial(&BigInt::one(), wq, wt, 0);
                    break;
                }
                (Marker::Cross, Marker::Cross) => {
                    let tail_crosses = cx.count_crosses() as i64 - 1;
                    let sub = self.solve(&cx.tail(), &cy.tail());
                    let mut factor = LaurentPoly::monomial(BigInt::one(), 0, tail_crosses, 0);
                    if self.include_a {
                        factor = &factor + &LaurentPoly::monomial(BigInt::one(), 0, 0, 1);
                    }
                    acc = &acc
                        + &sub
                            .mul_monomial(&BigInt::one(), wq, wt, 0)
                            .mul_poly(&factor);
                    break;
                }
                heads => unreachable!("bullet head {heads:?} in R solver"),
            }
            if cur == key {
                assert_eq!(wt, 0, "R cycle weight must be t-free");
                assert!(wq >= 1);
                cycle = Some(wq as u32);
                break;
            }
            if let Some(r) = self.memo.get(&cur) {
                acc = &acc + &r.mul_monomial(&BigInt::one(), wq, wt, 0);
                break;
            }
        }
        if let Some(l) = cycle {
            self.stats.record_cycle(l);
            acc = acc.div_one_minus_q_pow(l);
        }
        let out = acc.reduce();
        self.memo.insert(key, out.clone());
        out
    }
}

/// The decision graph of the R-recursion from the pair (x, y): blue edges
/// come from the gap-doubling relation (weights t^{-|x|} and q t^{-|x|}),
/// black edges from the other relations (weight 1 or t^{|x|} + a).
pub fn hm_trace(x: &MarkerWord, y: &MarkerWord) -> TraceGraph {
    let label = |x: &MarkerWord, y: &MarkerWord| -> String {
        if x == y {
            x.to_string()
        } else {
            format!("{x},{y}")
        }
    };
    let mut graph = TraceGraph::new();
    let mut index: HashMap<(MarkerWord, MarkerWord), usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    let start = (x.clone(), y.clone());
    let terminal = |p: &(MarkerWord, MarkerWord)| p.0.is_empty() && p.1.is_empty();
    let root = graph.add_vertex(label(x, y), terminal(&start));
    index.insert(start.clone(), root);
    queue.push_back(start);
    while let Some(pair) = queue.pop_front() {
        let from = index[&pair];
        let (cx, cy) = (&pair.0, &pair.1);
        if terminal(&pair) || cx.is_empty() || cy.is_empty() {
            continue;
        }
        let link = |graph: &mut TraceGraph,
                    index: &mut HashMap<(MarkerWord, MarkerWord), usize>,
                    queue: &mut std::collections::VecDeque<(MarkerWord, MarkerWord)>,
                    to_pair: (MarkerWord, MarkerWord),
                    weight: LaurentPoly,
                    color: EdgeColor,
                    kind: EdgeKind| {
            let to = *index.entry(to_pair.clone()).or_insert_with(|| {
                let id = graph.add_vertex(label(&to_pair.0, &to_pair.1), terminal(&to_pair));
                queue.push_back(to_pair);
                id
            });
            graph.add_edge(from, to, weight, color, kind);
        };
        match (cx.head().unwrap(), cy.head().unwrap()) {
            (Marker::Gap, Marker::Gap) => {
                let cc = cx.count_crosses() as i64;
                link(
                    &mut graph,
                    &mut index,
                    &mut queue,
                    (
                        cx.rotate_set_last(Marker::Cross),
                        cy.rotate_set_last(Marker::Cross),
                    ),
                    LaurentPoly::monomial(BigInt::one(), 0, -cc, 0),
                    EdgeColor::Blue,
                    EdgeKind::Branch,
                );
                link(
                    &mut graph,
                    &mut index,
                    &mut queue,
                    (
                        cx.rotate_set_last(Marker::Gap),
                        cy.rotate_set_last(Marker::Gap),
                    ),
                    LaurentPoly::monomial(BigInt::one(), 1, -cc, 0),
                    EdgeColor::Blue,
                    EdgeKind::Chain,
                );
            }
            (Marker::Cross, Marker::Gap) => {
                link(
                    &mut graph,
                    &mut index,
                    &mut queue,
                    (cx.rotate_set_last(Marker::Cross), cy.tail()),
                    LaurentPoly::one(),
                    EdgeColor::Black,
                    EdgeKind::Branch,
                );
            }
            (Marker::Gap, Marker::Cross) => {
                link(
                    &mut graph,
                    &mut index,
                    &mut queue,
                    (cx.tail(), cy.rotate_set_last(Marker::Cross)),
                    LaurentPoly::one(),
                    EdgeColor::Black,
                    EdgeKind::Branch,
                );
            }
            (Marker::Cross, Marker::Cross) => {
                let tail_crosses = cx.count_crosses() as i64 - 1;
                let weight = &LaurentPoly::monomial(BigInt::one(), 0, tail_crosses, 0)
                    + &LaurentPoly::monomial(BigInt::one(), 0, 0, 1);
                link(
                    &mut graph,
                    &mut index,
                    &mut queue,
                    (cx.tail(), cy.tail()),
                    weight,
                    EdgeColor::Black,
                    EdgeKind::Branch,
                );
            }
            heads => unreachable!("bullet head {heads:?} in R trace"),
        }
    }
    graph
}

/// Convenience: solve Q for the marker pair of a binary word.
pub fn q_of_word(solver: &mut Solver, u: &BinaryWord) -> Result<RationalSeries, WordError> {
    let (v, w) = u.to_markers()?;
    Ok(solver.solve_q(&v, &w))
}

/// Convenience: reconstruct the binary word of a marker pair and solve P.
pub fn p_of_pair(
    solver: &mut Solver,
    v: &MarkerWord,
    w: &MarkerWord,
) -> Result<RationalSeries, WordError> {
    let u = from_markers(v, w, solver.grid())?;
    Ok(solver.solve_p(&u))
}
