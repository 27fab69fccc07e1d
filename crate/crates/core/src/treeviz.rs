//! Decision-trace graphs and their DOT rendering.
//!
//! A [`TraceGraph`] is the computation certificate of a recursion run:
//! vertices are the distinct words reached, each edge carries the weight
//! of one recursion step, and rotation cycles appear as back edges.
//! [`eval_trace`] replays the graph as a weighted path sum (resolving
//! cycles as geometric factors), which must reproduce the solver output.

use crate::algebra::{LaurentPoly, PoleSum, RationalSeries};
use num_traits::One;
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeColor {
    Black,
    Red,
    Blue,
}

/// Chain edges follow the same-size rotation successor; branch edges go
/// into strictly smaller subproblems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Branch,
    Chain,
}

#[derive(Clone, Debug)]
pub struct TraceVertex {
    pub label: String,
    pub terminal: bool,
}

#[derive(Clone, Debug)]
pub struct TraceEdge {
    pub from: usize,
    pub to: usize,
    pub weight: LaurentPoly,
    pub color: EdgeColor,
    pub kind: EdgeKind,
}

/// An edge-weighted directed graph recording a recursion run; vertex 0 is
/// the root.
#[derive(Clone, Debug, Default)]
pub struct TraceGraph {
    vertices: Vec<TraceVertex>,
    edges: Vec<TraceEdge>,
}

impl TraceGraph {
    pub fn new() -> Self {
        TraceGraph::default()
    }

    pub fn add_vertex(&mut self, label: String, terminal: bool) -> usize {
        self.vertices.push(TraceVertex { label, terminal });
        self.vertices.len() - 1
    }

    pub fn add_edge(
        &mut self,
        from: usize,
        to: usize,
        weight: LaurentPoly,
        color: EdgeColor,
        kind: EdgeKind,
    ) {
        self.edges.push(TraceEdge {
            from,
            to,
            weight,
            color,
            kind,
        });
    }

    pub fn vertices(&self) -> &[TraceVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TraceEdge] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn out_edges(&self, v: usize) -> impl Iterator<Item = &TraceEdge> {
        self.edges.iter().filter(move |e| e.from == v)
    }

    fn find_vertex(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    /// The edge from -> to, by vertex labels.
    pub fn edge_between(&self, from: &str, to: &str) -> Option<&TraceEdge> {
        let f = self.find_vertex(from)?;
        let t = self.find_vertex(to)?;
        self.edges.iter().find(|e| e.from == f && e.to == t)
    }
}

/// Value domain for replaying a trace: rational series or pole-graded
/// sums.
pub trait TraceValue: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul_poly(&self, p: &LaurentPoly) -> Self;
    fn div_one_minus_q_pow(&self, l: u32) -> Self;
}

impl TraceValue for RationalSeries {
    fn zero() -> Self {
        RationalSeries::zero()
    }
    fn one() -> Self {
        RationalSeries::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalSeries::mul_poly(self, p)
    }
    fn div_one_minus_q_pow(&self, l: u32) -> Self {
        RationalSeries::div_one_minus_q_pow(self, l)
    }
}

impl TraceValue for PoleSum {
    fn zero() -> Self {
        PoleSum::zero()
    }
    fn one() -> Self {
        PoleSum::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        PoleSum::add(self, rhs)
    }
    fn mul_poly(&self, p: &LaurentPoly) -> Self {
        PoleSum::mul_poly(self, p)
    }
    fn div_one_minus_q_pow(&self, l: u32) -> Self {
        PoleSum::div_one_minus_q_pow(self, l)
    }
}

fn as_pure_q_power(p: &LaurentPoly) -> Option<u32> {
    if p.num_terms() != 1 {
        return None;
    }
    let (e, c) = p.iter().next().unwrap();
    if c.is_one() && e.t == 0 && e.a == 0 && e.q >= 1 {
        Some(e.q as u32)
    } else {
        None
    }
}

/// Weighted path sum of the trace from the root, resolving cycles as
/// geometric factors.  For a trace produced by a solver this equals the
/// solver's output; evaluated over [`PoleSum`] it yields the pole-graded
/// positive form when one exists.
pub fn eval_trace<V: TraceValue>(g: &TraceGraph) -> V {
    let mut memo: HashMap<usize, V> = HashMap::new();
    eval_vertex(g, g.root(), &mut memo)
}

fn eval_vertex<V: TraceValue>(g: &TraceGraph, v: usize, memo: &mut HashMap<usize, V>) -> V {
    if g.vertices[v].terminal {
        return V::one();
    }
    if let Some(val) = memo.get(&v) {
        return val.clone();
    }
    let mut acc = V::zero();
    let mut weight = LaurentPoly::one();
    let mut cur = v;
    loop {
        let mut chain: Option<&TraceEdge> = None;
        for e in g.out_edges(cur) {
            match e.kind {
                EdgeKind::Branch => {
                    let sub = eval_vertex(g, e.to, memo);
                    acc = acc.add(&sub.mul_poly(&(&weight * &e.weight)));
                }
                EdgeKind::Chain => {
                    assert!(chain.is_none(), "a vertex has at most one chain edge");
                    chain = Some(e);
                }
            }
        }
        match chain {
            None => break,
            Some(e) => {
                weight = &weight * &e.weight;
                if e.to == v {
                    let l = as_pure_q_power(&weight)
                        .expect("cycle weight must be a positive power of q");
                    acc = acc.div_one_minus_q_pow(l);
                    break;
                }
                if g.vertices[e.to].terminal {
                    acc = acc.add(&V::one().mul_poly(&weight));
                    break;
                }
                if let Some(val) = memo.get(&e.to) {
                    acc = acc.add(&val.mul_poly(&weight));
                    break;
                }
                cur = e.to;
            }
        }
    }
    memo.insert(v, acc.clone());
    acc
}

fn dot_weight(w: &LaurentPoly) -> String {
    w.to_string()
}

fn dot_color(c: EdgeColor) -> Option<&'static str> {
    match c {
        EdgeColor::Black => None,
        EdgeColor::Red => Some("red"),
        EdgeColor::Blue => Some("blue"),
    }
}

fn write_edge(out: &mut String, from: &str, to: &str, weight: &LaurentPoly, color: EdgeColor) {
    let mut attrs = format!("label=\"{}\"", dot_weight(weight));
    if let Some(c) = dot_color(color) {
        write!(attrs, ", color={c}, fontcolor={c}").unwrap();
    }
    writeln!(out, "  {from} -> {to} [{attrs}];").unwrap();
}

/// Render a trace as a DOT digraph.  In compact mode, every subtree that
/// is a bare path to the terminal is replaced by a leaf carrying its
/// monomial value, and vertices are labeled by their rightmost symbol
/// only (the root keeps its full word).
pub fn to_dot(trace: &TraceGraph, compact: bool) -> String {
    if compact {
        to_dot_compact(trace)
    } else {
        to_dot_full(trace)
    }
}

fn dot_header(out: &mut String) {
    out.push_str("digraph trace {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
}

fn to_dot_full(trace: &TraceGraph) -> String {
    let mut out = String::new();
    dot_header(&mut out);
    for (i, v) in trace.vertices.iter().enumerate() {
        let extra = if v.terminal { ", peripheries=2" } else { "" };
        writeln!(out, "  v{i} [label=\"{}\"{extra}];", v.label).unwrap();
    }
    for e in &trace.edges {
        write_edge(
            &mut out,
            &format!("v{}", e.from),
            &format!("v{}", e.to),
            &e.weight,
            e.color,
        );
    }
    out.push_str("}\n");
    out
}

/// The monomial value of a vertex whose entire subgraph is a single path
/// to the terminal; `None` when the subgraph branches or cycles.
fn simple_value(g: &TraceGraph, v: usize, visited: &mut Vec<usize>) -> Option<LaurentPoly> {
    if g.vertices[v].terminal {
        return Some(LaurentPoly::one());
    }
    if visited.contains(&v) {
        return None;
    }
    visited.push(v);
    let out: Vec<&TraceEdge> = g.out_edges(v).collect();
    let result = if out.len() == 1 {
        simple_value(g, out[0].to, visited).map(|sub| &sub * &out[0].weight)
    } else {
        None
    };
    visited.pop();
    result
}

fn to_dot_compact(trace: &TraceGraph) -> String {
    let simple: Vec<Option<LaurentPoly>> = (0..trace.vertex_count())
        .map(|v| simple_value(trace, v, &mut Vec::new()))
        .collect();
    let mut out = String::new();
    dot_header(&mut out);
    let last_symbol = |label: &str| -> String {
        label
            .chars()
            .next_back()
            .map(|c| c.to_string())
            .unwrap_or_default()
    };
    // Keep the root and every non-simple vertex; simple vertices become
    // monomial leaves the first time an edge reaches them.
    let kept = |v: usize| v == trace.root() || simple[v].is_none();
    let mut declared = vec![false; trace.vertex_count()];
    let mut body = String::new();
    for e in &trace.edges {
        if !kept(e.from) {
            continue;
        }
        write_edge(
            &mut body,
            &format!("v{}", e.from),
            &format!("v{}", e.to),
            &e.weight,
            e.color,
        );
        for v in [e.from, e.to] {
            if !declared[v] {
                declared[v] = true;
                let label = if v == trace.root() {
                    trace.vertices[v].label.clone()
                } else if let Some(mono) = &simple[v] {
                    format!("{}\\n{}", last_symbol(&trace.vertices[v].label), mono)
                } else {
                    last_symbol(&trace.vertices[v].label)
                };
                writeln!(out, "  v{v} [label=\"{label}\"];").unwrap();
            }
        }
    }
    if trace.vertex_count() == 1 {
        writeln!(out, "  v0 [label=\"{}\"];", trace.vertices[0].label).unwrap();
    }
    out.push_str(&body);
    out.push_str("}\n");
    out
}

/// DOT rendering of the R-recursion decision graph from the pair (x, y);
/// gap-doubling edges are blue, all other edges black with weights
/// `t^{|x|} + a`.
pub fn to_dot_hm(x: &crate::sequences::MarkerWord, y: &crate::sequences::MarkerWord) -> String {
    to_dot_full(&crate::solvers::hm_trace(x, y))
}

/// Evaluate a trace over rational series; the result must reproduce the
/// solver output for the root word.
pub fn path_sum(trace: &TraceGraph) -> RationalSeries {
    eval_trace::<RationalSeries>(trace).reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{BinaryWord, Grid};
    use crate::solvers::Solver;

    fn trace_of(m: usize, n: usize, s: &str) -> TraceGraph {
        let g = Grid::new(m, n);
        let u = BinaryWord::parse(g, s).unwrap();
        Solver::new(g).decision_trace(&u).unwrap()
    }

    #[test]
    fn all_ones_single_vertex() {
        let trace = trace_of(2, 2, "1111");
        assert_eq!(trace.vertex_count(), 1);
        assert_eq!(trace.edge_count(), 0);
        assert!(trace.vertices()[0].terminal);
        let dot = to_dot(&trace, false);
        assert!(dot.contains("label=\"1111\""));
        let compact = to_dot(&trace, true);
        assert!(compact.contains("label=\"1111\""));
        assert_eq!(path_sum(&trace), RationalSeries::one());
    }

    #[test]
    fn compact_matches_hand_drawn_panel() {
        // (2,2) root 0000: kept vertices 0000, 0001, 0010, 0101, 1010 and
        // two monomial leaves (q^2 under 0011, qt under 1011).
        let trace = trace_of(2, 2, "0000");
        let compact = to_dot(&trace, true);
        let nodes = compact
            .lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count();
        assert_eq!(nodes, 7);
        assert!(compact.contains("1\\nq^2"));
        assert!(compact.contains("1\\nq*t"));
        // kept edges: 2 from root (incl. self-loop), 2 from 0001,
        // 1 from 0010, 2 from 0101, 1 back-edge from 1010
        assert_eq!(compact.matches(" -> ").count(), 8);
    }

    #[test]
    fn pole_sum_evaluation_matches_series_evaluation() {
        for s in ["0000", "0101", "0001", "1011"] {
            let trace = trace_of(2, 2, s);
            let series = eval_trace::<RationalSeries>(&trace);
            let graded = eval_trace::<PoleSum>(&trace);
            assert!(graded.to_series().equals(&series), "word {s}");
        }
    }

    #[test]
    fn edge_lookup_by_label() {
        let trace = trace_of(2, 2, "0000");
        assert!(trace.edge_between("0000", "0000").is_some());
        assert!(trace.edge_between("0000", "1111").is_none());
    }
}
