//! Acceptance suite: one test per criterion, exact arithmetic throughout.
//! Run with `cargo test --test acceptance -- --nocapture` to see one
//! pass line per criterion.

use num_bigint::BigInt;
use num_traits::One;
use ratcat::algebra::{one_minus_q_pow, LaurentPoly, RationalSeries};
use ratcat::catalan::{self, catalan_series};
use ratcat::sequences::{BinaryWord, Grid, MarkerWord};
use ratcat::solvers::{RSolver, Solver};
use ratcat::subsets::{self, SeriesKind};
use ratcat::treeviz::{self, EdgeColor};

fn poly(terms: &[(i64, i64, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms)
}

fn series(terms: &[(i64, i64, i64, i64)], den: &[u32]) -> RationalSeries {
    RationalSeries::new(poly(terms), den.to_vec())
}

fn word(m: usize, n: usize, s: &str) -> BinaryWord {
    BinaryWord::parse(Grid::new(m, n), s).unwrap()
}

fn mk(s: &str) -> MarkerWord {
    MarkerWord::parse(s).unwrap()
}

fn all_admissible(grid: Grid) -> Vec<BinaryWord> {
    let len = grid.len();
    (0..(1u32 << len))
        .map(|raw| {
            let bits: Vec<bool> = (0..len).map(|i| raw >> i & 1 == 1).collect();
            BinaryWord::new(grid, bits).unwrap()
        })
        .filter(|u| u.is_admissible())
        .collect()
}

#[test]
fn acceptance_01_golden_2_2() {
    let g = Grid::new(2, 2);
    let mut solver = Solver::new(g);
    let p0 = solver.solve_p(&BinaryWord::zeros(g));
    let expected = &series(&[(1, 4, 0, 0)], &[1]) + &series(&[(1, 5, 1, 0)], &[1, 1]);
    assert!(p0.equals(&expected), "P_0000 = q^4/(1-q) + q^5 t/(1-q)^2");

    let c = catalan_series(2, 2);
    assert_eq!(
        c.polynomial_form,
        poly(&[(1, 1, 0, 0), (1, 0, 1, 0), (-1, 1, 1, 0)]),
        "(1-q) c_22 = q + t - qt"
    );
    println!("criterion 1 (golden (2,2)): PASS");
}

#[test]
fn acceptance_02_golden_3_3() {
    let mut solver = Solver::new(Grid::new(3, 3));
    let a = series(&[(1, 2, 2, 0)], &[1]);
    assert!(
        solver.solve_p(&word(3, 3, "011011")).equals(&a),
        "A = q^2t^2/(1-q)"
    );
    let b = &series(&[(1, 3, 1, 0)], &[]) + &series(&[(1, 4, 2, 0)], &[1]);
    assert!(
        solver.solve_p(&word(3, 3, "001011")).equals(&b),
        "B = q^3t + q^4t^2/(1-q)"
    );
    let c = &series(&[(1, 4, 2, 0)], &[1]) + &series(&[(1, 5, 3, 0)], &[1, 1]);
    assert!(
        solver.solve_p(&word(3, 3, "001001")).equals(&c),
        "C = q^4t^2/(1-q) + q^5t^3/(1-q)^2"
    );

    // P_000000 / q^6 = (1+qt)/(1-q) + (qt^2+2q^2t^2)/(1-q)^2 + q^3t^3/(1-q)^3
    let p0 = solver
        .solve_p(&BinaryWord::zeros(Grid::new(3, 3)))
        .mul_monomial(&BigInt::one(), -6, 0, 0);
    let expected = &(&series(&[(1, 0, 0, 0), (1, 1, 1, 0)], &[1])
        + &series(&[(1, 1, 2, 0), (2, 2, 2, 0)], &[1, 1]))
        + &series(&[(1, 3, 3, 0)], &[1, 1, 1]);
    assert!(p0.equals(&expected));

    let c33 = catalan_series(3, 3);
    let golden = poly(&[
        (1, 3, 2, 0),
        (1, 2, 3, 0),
        (-2, 3, 1, 0),
        (-2, 1, 3, 0),
        (1, 3, 0, 0),
        (1, 0, 3, 0),
        (1, 2, 1, 0),
        (1, 1, 2, 0),
        (-2, 2, 2, 0),
        (1, 1, 1, 0),
    ]);
    assert_eq!(c33.polynomial_form, golden, "(1-q)^2 c_33, ten terms");
    println!("criterion 2 (golden (3,3)): PASS");
}

#[test]
fn acceptance_03_golden_4_6() {
    let g = Grid::new(4, 6);
    let mut solver = Solver::new(g);
    let expected = series(&[(1, 5, 6, 0), (1, 6, 7, 0)], &[1]);
    assert!(
        solver.solve_p(&word(4, 6, "0101010101")).equals(&expected),
        "P_(01)^5 = q^5 t^6 (1+qt)/(1-q)"
    );

    let c46 = catalan_series(4, 6);
    let golden = poly(&[
        (-1, 8, 1, 0),
        (-1, 1, 8, 0),
        (1, 8, 0, 0),
        (1, 0, 8, 0),
        (-1, 7, 2, 0),
        (-1, 2, 7, 0),
        (1, 7, 1, 0),
        (1, 1, 7, 0),
        (-1, 6, 3, 0),
        (-1, 3, 6, 0),
        (1, 6, 1, 0),
        (1, 1, 6, 0),
        (1, 5, 1, 0),
        (1, 1, 5, 0),
        (-1, 5, 4, 0),
        (-1, 4, 5, 0),
        (-1, 4, 3, 0),
        (-1, 3, 4, 0),
        (2, 4, 2, 0),
        (2, 2, 4, 0),
        (2, 3, 3, 0),
    ]);
    assert_eq!(c46.polynomial_form, golden, "(1-q) c_46 as displayed");

    // Positive form of P_{0^10}: q^{10} p1/(1-q) + q^{10} p2/(1-q)^2.
    let ps = catalan::positive_form(&solver, &BinaryWord::zeros(g)).unwrap();
    let parts = ps.into_parts().unwrap();
    assert_eq!(parts.len(), 2);
    let p1 = poly(&[
        (1, 7, 7, 0),
        (1, 6, 6, 0),
        (1, 6, 7, 0),
        (1, 5, 5, 0),
        (1, 5, 6, 0),
        (1, 4, 4, 0),
        (1, 4, 5, 0),
        (1, 4, 6, 0),
        (1, 3, 3, 0),
        (1, 3, 4, 0),
        (2, 3, 5, 0),
        (1, 2, 2, 0),
        (1, 2, 3, 0),
        (2, 2, 4, 0),
        (1, 1, 1, 0),
        (1, 1, 2, 0),
        (1, 1, 3, 0),
        (1, 0, 0, 0),
    ]);
    let p2 = poly(&[(1, 4, 6, 0), (1, 5, 7, 0), (1, 7, 7, 0), (1, 8, 8, 0)]);
    assert_eq!(
        parts.get(&1).unwrap(),
        &p1.mul_monomial(&BigInt::one(), 10, 0, 0)
    );
    assert_eq!(
        parts.get(&2).unwrap(),
        &p2.mul_monomial(&BigInt::one(), 10, 0, 0)
    );
    println!("criterion 3 (golden (4,6)): PASS");
}

#[test]
fn acceptance_04_golden_a_series() {
    // R_{000,000}(q,t,a), three pole-graded blocks.
    let one_plus_a = poly(&[(1, 0, 0, 0), (1, 0, 0, 1)]);
    let t_plus_a = poly(&[(1, 0, 1, 0), (1, 0, 0, 1)]);
    let t2_plus_a = poly(&[(1, 0, 2, 0), (1, 0, 0, 1)]);
    let blk1 = &(&(&t2_plus_a + &poly(&[(1, 1, 1, 0), (1, 1, 0, 1)])) * &t_plus_a) * &one_plus_a;
    let blk2 = &(&poly(&[(1, 1, 0, 0), (2, 2, 0, 0)]) * &t_plus_a) * &(&one_plus_a * &one_plus_a);
    let blk3 = &(&poly(&[(1, 3, 0, 0)]) * &one_plus_a) * &(&one_plus_a * &one_plus_a);
    let tm3 = |p: LaurentPoly| p.mul_monomial(&BigInt::one(), 0, -3, 0);
    let golden_r = &(&RationalSeries::new(tm3(blk1), vec![1])
        + &RationalSeries::new(tm3(blk2), vec![1, 1]))
        + &RationalSeries::new(tm3(blk3), vec![1, 1, 1]);
    let mut rsolver = RSolver::new(true);
    let r = rsolver.solve(&mk("000"), &mk("000"));
    assert!(r.equals(&golden_r), "R_000,000 with a");

    // (1-q) Phat_000000 golden.
    let one_plus_at = poly(&[(1, 0, 0, 0), (1, 0, 1, 1)]);
    let one_plus_at2 = poly(&[(1, 0, 0, 0), (1, 0, 2, 1)]);
    let t0 = RationalSeries::from_poly(
        &(&poly(&[(1, 6, 0, 0)]) * &one_plus_at2) * &(&one_plus_at * &one_plus_a),
    );
    let t1 = RationalSeries::from_poly(
        &(&poly(&[(1, 7, 1, 0)]) * &one_plus_at) * &(&one_plus_at * &one_plus_a),
    );
    let t2 = RationalSeries::new(
        &(&poly(&[(1, 7, 2, 0), (2, 8, 2, 0)]) * &one_plus_at) * &(&one_plus_a * &one_plus_a),
        vec![1],
    );
    let t3 = RationalSeries::new(
        &(&poly(&[(1, 9, 3, 0)]) * &one_plus_a) * &(&one_plus_a * &one_plus_a),
        vec![1, 1],
    );
    let golden_phat = &(&t0 + &t1) + &(&t2 + &t3);
    let mut solver = Solver::new(Grid::new(3, 3));
    let phat = solver.solve_phat(&BinaryWord::zeros(Grid::new(3, 3)));
    assert!(
        phat.mul_poly(&one_minus_q_pow(1)).equals(&golden_phat),
        "(1-q) Phat_000000"
    );

    // q^{-6} Phat_000000(q, t^{-1}, a) = R_000,000(q, t, a), exact.
    let shifted = phat.invert_t().mul_monomial(&BigInt::one(), -6, 0, 0);
    assert!(r.equals(&shifted));
    println!("criterion 4 (golden a-series): PASS");
}

#[test]
fn acceptance_05_oracle_equivalence() {
    let mut grids: Vec<(usize, usize)> = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            grids.push((m, n));
        }
    }
    grids.push((4, 6));
    for (m, n) in grids {
        let g = Grid::new(m, n);
        let q_max = (g.len() + 6) as i64;
        let mut solver = Solver::new(g);
        for u in all_admissible(g) {
            let (v, w) = u.to_markers().unwrap();
            assert_eq!(
                solver.solve_p(&u).expand(q_max),
                subsets::truncated_series(&u, SeriesKind::P, q_max),
                "P oracle mismatch at {u} on {g}"
            );
            assert_eq!(
                solver.solve_phat(&u).expand(q_max),
                subsets::truncated_series(&u, SeriesKind::PHat, q_max),
                "Phat oracle mismatch at {u} on {g}"
            );
            assert_eq!(
                solver.solve_q(&v, &w).expand(q_max),
                subsets::truncated_series(&u, SeriesKind::Q, q_max),
                "Q oracle mismatch at {u} on {g}"
            );
            assert_eq!(
                solver.solve_qhat(&v, &w).expand(q_max),
                subsets::truncated_series(&u, SeriesKind::QHat, q_max),
                "Qhat oracle mismatch at {u} on {g}"
            );
        }
    }
    println!("criterion 5 (oracle equivalence P/Phat/Q/Qhat): PASS");
}

#[test]
fn acceptance_06_theorem_checks() {
    // Bullet erasure, with and without a, over all admissible pairs.
    let mut r_with_a = RSolver::new(true);
    let mut r_no_a = RSolver::new(false);
    for m in 1..=4 {
        for n in 1..=4 {
            let g = Grid::new(m, n);
            let mut solver = Solver::new(g);
            for u in all_admissible(g) {
                let (v, w) = u.to_markers().unwrap();
                let (x, y) = (v.phi(), w.phi());
                assert!(
                    r_no_a.solve(&x, &y).equals(&solver.solve_q(&v, &w)),
                    "R(a=0) != Q at {u} on {g}"
                );
                assert!(
                    r_with_a.solve(&x, &y).equals(&solver.solve_qhat(&v, &w)),
                    "R != Qhat at {u} on {g}"
                );
            }
        }
    }

    // Q_{0^M,0^N} = q^{-N-M} P_{0^{M+N}}(q, t^{-1}).
    for m in 1..=4 {
        for n in 1..=4 {
            let g = Grid::new(m, n);
            let mut solver = Solver::new(g);
            let qs = solver.solve_q(
                &MarkerWord::zeros_then_crosses(m, 0),
                &MarkerWord::zeros_then_crosses(n, 0),
            );
            let ps = solver.solve_p(&BinaryWord::zeros(g));
            let shifted = ps
                .invert_t()
                .mul_monomial(&BigInt::one(), -(g.len() as i64), 0, 0);
            assert!(qs.equals(&shifted), "Q vs P identity on {g}");
        }
    }

    // R_{0^{M-k} x^k, 0^{N-k} x^k}(q,t,0)
    //   = q^{-N-M+k} t^{k(k-1)/2} P_{0^{M+N-k} 1^k}(q, t^{-1}).
    for m in 1..=4usize {
        for n in 1..=4usize {
            let g = Grid::new(m, n);
            let mut solver = Solver::new(g);
            for k in 0..=m.min(n) {
                let x = MarkerWord::zeros_then_crosses(m, k);
                let y = MarkerWord::zeros_then_crosses(n, k);
                let u = BinaryWord::zeros_then_ones(g, k);
                let kk = k as i64;
                let expected = solver.solve_p(&u).invert_t().mul_monomial(
                    &BigInt::one(),
                    -(g.len() as i64) + kk,
                    kk * (kk - 1) / 2,
                    0,
                );
                assert!(
                    r_no_a.solve(&x, &y).equals(&expected),
                    "R-with-ones identity at k={k} on {g}"
                );
            }
        }
    }
    println!("criterion 6 (bullet erasure, Q vs P, R with ones): PASS");
}

#[test]
fn acceptance_07_structure() {
    for (m, n) in [(2, 2), (3, 3), (4, 6), (2, 4), (4, 4), (6, 9)] {
        let g = Grid::new(m, n);
        let d = g.d();
        let mut solver = Solver::new(g);
        let p0 = solver.solve_p(&BinaryWord::zeros(g)).reduce();
        assert_eq!(
            p0.denominator(),
            vec![1u32; d].as_slice(),
            "denominator of P_0 on {g} is (1-q)^d"
        );
        let c = catalan::catalan_series_with(&mut solver);
        assert_eq!(
            c.series.reduce().denominator(),
            vec![1u32; d - 1].as_slice(),
            "denominator of c on {g} is (1-q)^(d-1)"
        );
        assert!(c.symmetric, "(1-q)^(d-1) c_{{{m},{n}}} is q,t-symmetric");
    }
    println!("criterion 7 (denominator structure and symmetry): PASS");
}

#[test]
fn acceptance_08_term_counts() {
    // Oracle counts of I^0 for the coprime reductions.
    let count_i0 = |m: usize, n: usize| -> usize {
        let cap = (m - 1) * (n - 1) / 2;
        subsets::enumerate_containing_zero(Grid::new(m, n), cap).len()
    };
    assert_eq!(count_i0(2, 3), 2, "c_23(1,1) = 2");
    assert_eq!(count_i0(3, 4), 5, "c_34(1,1) = 5");

    // Term counts of P_{0^{M+N-d} 1^d} at q = t = 1 equal c_{m,n}(1,1)^d.
    let cases = [
        ((2, 2), 1i64), // c_11^2
        ((4, 6), 4),    // c_23^2
        ((6, 9), 8),    // c_23^3; oracle-derived (see decisions ledger)
        ((9, 12), 125), // c_34^3
    ];
    for ((m, n), expected) in cases {
        let g = Grid::new(m, n);
        let mut solver = Solver::new(g);
        let count = catalan::term_count(&mut solver);
        assert_eq!(count, BigInt::from(expected), "term count on {g}");
        // cross-check by direct enumeration of the word's subsets
        let u = BinaryWord::zeros_then_ones(g, g.d());
        let bound = g.len() + 3 * g.len();
        let subs = subsets::enumerate(&u, bound);
        assert_eq!(subs.len() as i64, expected, "oracle count on {g}");
        assert_eq!(subsets::enumerate(&u, bound + 5).len() as i64, expected);
    }
    println!("criterion 8 (term counts c_mn(1,1)^d): PASS");
}

#[test]
fn acceptance_09_trace_fidelity() {
    let g = Grid::new(2, 2);
    let solver = Solver::new(g);
    let root = BinaryWord::zeros(g);
    let trace = solver.decision_trace(&root).unwrap();

    let labels: std::collections::BTreeSet<&str> =
        trace.vertices().iter().map(|v| v.label.as_str()).collect();
    assert_eq!(
        labels,
        ["0000", "0001", "0011", "0111", "1111", "0010", "0101", "1011", "1010"]
            .into_iter()
            .collect(),
        "vertex inventory"
    );
    let q = poly(&[(1, 1, 0, 0)]);
    let one = poly(&[(1, 0, 0, 0)]);
    let t = poly(&[(1, 0, 1, 0)]);
    let expect_edge = |from: &str, to: &str, w: &LaurentPoly, color: EdgeColor| {
        let e = trace
            .edge_between(from, to)
            .unwrap_or_else(|| panic!("missing edge {from} -> {to}"));
        assert_eq!(&e.weight, w, "weight of {from} -> {to}");
        assert_eq!(e.color, color, "color of {from} -> {to}");
    };
    // Full edge inventory (11 edges).
    expect_edge("0000", "0001", &q, EdgeColor::Black);
    expect_edge("0000", "0000", &q, EdgeColor::Black); // self-loop weight q
    expect_edge("0001", "0011", &q, EdgeColor::Black);
    expect_edge("0001", "0010", &q, EdgeColor::Black);
    expect_edge("0011", "0111", &q, EdgeColor::Black);
    expect_edge("0111", "1111", &q, EdgeColor::Black);
    expect_edge("0010", "0101", &q, EdgeColor::Black);
    expect_edge("0101", "1011", &q, EdgeColor::Black);
    expect_edge("0101", "1010", &q, EdgeColor::Black);
    expect_edge("1011", "0111", &t, EdgeColor::Red); // red weight-t edge
    expect_edge("1010", "0101", &one, EdgeColor::Red); // red weight-1 back edge
    assert_eq!(trace.edge_count(), 11, "edge inventory");

    // DOT export carries the same inventory.
    let dot = treeviz::to_dot(&trace, false);
    assert_eq!(dot.matches(" -> ").count(), 11);
    assert!(dot.contains("v0 -> v0 [label=\"q\"]"), "self-loop in DOT");
    assert!(dot.contains("color=red"), "red edges in DOT");

    // Compact form collapses the q^2 and qt branches into monomial leaves.
    let compact = treeviz::to_dot(&trace, true);
    assert!(compact.contains("q^2"), "compact leaf q^2");
    assert!(compact.contains("q*t"), "compact leaf qt");

    // Path sum of the trace equals the solver output.
    let mut solver = Solver::new(g);
    assert!(treeviz::path_sum(&trace).equals(&solver.solve_p(&root)));
    println!("criterion 9 (trace fidelity (2,2)): PASS");
}

#[test]
fn acceptance_10_periodicity_lemma() {
    for m in 1..=5 {
        for n in 1..=5 {
            let g = Grid::new(m, n);
            for u in all_admissible(g) {
                let lambda_zero = u.lambda() == 0;
                let period_divides = g.d().is_multiple_of(u.minimal_period());
                assert_eq!(
                    lambda_zero, period_divides,
                    "lambda(u)=0 iff period | gcd for {u} on {g}"
                );
            }
        }
    }
    println!("criterion 10 (periodicity lemma, exhaustive M,N <= 5): PASS");
}
