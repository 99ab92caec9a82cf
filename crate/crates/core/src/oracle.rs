//! Reference implementations and an exhaustive corpus of small dual graphs.
//!
//! Nothing here shares code paths with the fast implementations beyond graph
//! construction: bounds use `Ratio<i64>`, connectivity uses breadth-first
//! search over every vertex subset, and the class group is computed by a
//! closure over translations with membership decided by a rational solve.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::ops::Range;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::balance::{classify, enumerate_balanced, BalanceClass, Multidegree};
use crate::degree_class::{class_group, semibalanced_representative};
use crate::error::{Error, Result};
use crate::graph::{DualGraph, GraphFile, StabilityClass};
use crate::strata::{is_d_general, Method};

pub const MAX_CORPUS_VERTICES: usize = 5;
pub const MAX_CORPUS_EDGES: usize = 10;
pub const MAX_CORPUS_GENUS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilityFilter {
    /// Every connected graph, including genus below 2.
    Any,
    Semistable,
    Quasistable,
    Stable,
}

impl StabilityFilter {
    fn accepts(self, class: Option<StabilityClass>) -> bool {
        match self {
            StabilityFilter::Any => true,
            StabilityFilter::Semistable => class.is_some_and(StabilityClass::is_semistable),
            StabilityFilter::Quasistable => class.is_some_and(StabilityClass::is_quasistable),
            StabilityFilter::Stable => class.is_some_and(StabilityClass::is_stable),
        }
    }
}

/// Bounds of an exhaustive corpus. `max_genus` bounds the arithmetic genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub max_vertices: usize,
    pub max_genus: u32,
    pub max_edges: usize,
    pub filter: StabilityFilter,
}

impl CorpusSpec {
    /// Edge bound large enough that only genus and vertex count constrain
    /// the corpus: a connected graph has `|E| = g - sum(genera) + |V| - 1`.
    pub fn genus_bounded(max_vertices: usize, max_genus: u32, filter: StabilityFilter) -> Self {
        CorpusSpec {
            max_vertices,
            max_genus,
            max_edges: (max_genus as usize + max_vertices).saturating_sub(1),
            filter,
        }
    }
}

/// Raw labelled multigraph used during generation.
#[derive(Clone, Debug)]
struct Shape {
    genus: Vec<u32>,
    loops: Vec<u32>,
    /// Multiplicities of pairs `(i, j)`, `i < j`, in row-major order.
    pairs: Vec<u32>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // row-major over the strict upper triangle
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Shape {
    fn n(&self) -> usize {
        self.genus.len()
    }

    fn mult(&self, i: usize, j: usize) -> u32 {
        let n = self.n();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.loops[i],
            std::cmp::Ordering::Less => self.pairs[pair_index(n, i, j)],
            std::cmp::Ordering::Greater => self.pairs[pair_index(n, j, i)],
        }
    }

    fn degree(&self, i: usize) -> u32 {
        2 * self.loops[i] + (0..self.n()).filter(|&j| j != i).map(|j| self.mult(i, j)).sum::<u32>()
    }

    fn connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if !seen[u] && u != v && self.mult(v, u) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Isomorphism-invariant key: vertices sorted by (genus, loops, degree),
    /// then the lexicographically least strict upper triangle over all
    /// orderings that keep that sort.
    fn canonical(&self) -> (Vec<(u32, u32, u32)>, Vec<u32>, Vec<usize>) {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        let label = |i: usize| (self.genus[i], self.loops[i], self.degree(i));
        order.sort_by_key(|&i| label(i));
        let labels: Vec<_> = order.iter().map(|&i| label(i)).collect();

        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.search(&labels, &label, &mut perm, &mut used, &mut best);
        let (code, perm) = best.expect("at least one ordering");
        (labels, code, perm)
    }

    fn search(
        &self,
        labels: &[(u32, u32, u32)],
        label: &dyn Fn(usize) -> (u32, u32, u32),
        perm: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<(Vec<u32>, Vec<usize>)>,
    ) {
        let n = self.n();
        if perm.len() == n {
            let mut code = Vec::with_capacity(n * (n - 1) / 2);
            for a in 0..n {
                for b in a + 1..n {
                    code.push(self.mult(perm[a], perm[b]));
                }
            }
            if best.as_ref().is_none_or(|(c, _)| code < *c) {
                *best = Some((code, perm.clone()));
            }
            return;
        }
        let want = labels[perm.len()];
        for v in 0..n {
            if !used[v] && label(v) == want {
                used[v] = true;
                perm.push(v);
                self.search(labels, label, perm, used, best);
                perm.pop();
                used[v] = false;
            }
        }
    }

    fn to_graph(&self, perm: &[usize]) -> DualGraph {
        let n = self.n();
        let genera: Vec<u32> = perm.iter().map(|&v| self.genus[v]).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for _ in 0..self.loops[perm[a]] {
                edges.push((a, a));
            }
            for b in a + 1..n {
                for _ in 0..self.mult(perm[a], perm[b]) {
                    edges.push((a, b));
                }
            }
        }
        DualGraph::from_indexed(&genera, &edges).expect("generated shapes are connected")
    }
}

/// Every connected genus-weighted multigraph within the bounds that passes
/// the filter, one per isomorphism class, in a fixed order (vertex count,
/// genus, edge count, canonical code).
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<DualGraph>> {
    if spec.max_vertices > MAX_CORPUS_VERTICES {
        return Err(Error::CorpusTooLarge(format!(
            "max_vertices {} exceeds {MAX_CORPUS_VERTICES}",
            spec.max_vertices
        )));
    }
    if spec.max_edges > MAX_CORPUS_EDGES {
        return Err(Error::CorpusTooLarge(format!(
            "max_edges {} exceeds {MAX_CORPUS_EDGES}",
            spec.max_edges
        )));
    }
    if spec.max_genus > MAX_CORPUS_GENUS {
        return Err(Error::CorpusTooLarge(format!(
            "max_genus {} exceeds {MAX_CORPUS_GENUS}",
            spec.max_genus
        )));
    }
    generate(spec, false)
}

/// Unweighted connected multigraphs (all vertex genera 0) with loops allowed.
pub fn generate_multigraphs(max_vertices: usize, max_edges: usize) -> Result<Vec<DualGraph>> {
    let spec = CorpusSpec {
        max_vertices,
        max_genus: max_edges as u32,
        max_edges,
        filter: StabilityFilter::Any,
    };
    if max_vertices > MAX_CORPUS_VERTICES || max_edges > MAX_CORPUS_EDGES {
        return Err(Error::CorpusTooLarge(format!(
            "{max_vertices} vertices / {max_edges} edges exceeds {MAX_CORPUS_VERTICES} / {MAX_CORPUS_EDGES}"
        )));
    }
    generate(&spec, true)
}

type CorpusKey = (usize, i64, usize, Vec<(u32, u32, u32)>, Vec<u32>);

fn generate(spec: &CorpusSpec, genus_zero: bool) -> Result<Vec<DualGraph>> {
    let mut found: BTreeMap<CorpusKey, DualGraph> = BTreeMap::new();
    for n in 1..=spec.max_vertices {
        // sum(genera) + |E| <= max_genus + n - 1, and connectivity needs n - 1 bridges
        let budget = spec.max_genus as usize + n - 1;
        let mut labels = Vec::with_capacity(n);
        let mut visit = |shape: &Shape| {
            if !shape.connected() {
                return;
            }
            let edges = shape.loops.iter().chain(&shape.pairs).sum::<u32>() as i64;
            let genus = shape.genus.iter().map(|&g| g as i64).sum::<i64>() + edges - n as i64 + 1;
            if genus < 0 || genus > spec.max_genus as i64 {
                return;
            }
            if spec.filter != StabilityFilter::Any {
                let class = quick_stability(shape, genus);
                if !spec.filter.accepts(class) {
                    return;
                }
            }
            let (labels, code, perm) = shape.canonical();
            let key = (n, genus, edges as usize, labels, code);
            found.entry(key).or_insert_with(|| shape.to_graph(&perm));
        };
        label_rec(n, spec, genus_zero, budget, &mut labels, &mut visit);
    }
    Ok(found.into_values().collect())
}

fn quick_stability(shape: &Shape, genus: i64) -> Option<StabilityClass> {
    if genus < 2 {
        return None;
    }
    let n = shape.n();
    let mut exceptional = vec![false; n];
    for i in 0..n {
        if shape.genus[i] == 0 {
            let deg = shape.degree(i);
            if deg < 2 {
                return Some(StabilityClass::NotSemistable);
            }
            exceptional[i] = deg == 2 && shape.loops[i] == 0;
        }
    }
    if !exceptional.iter().any(|&e| e) {
        return Some(StabilityClass::Stable);
    }
    let adjacent = (0..n).any(|i| (i + 1..n).any(|j| exceptional[i] && exceptional[j] && shape.mult(i, j) > 0));
    Some(if adjacent {
        StabilityClass::SemistableNotQuasistable
    } else {
        StabilityClass::QuasistableNotStable
    })
}

/// Chooses (genus, loops) per vertex in non-decreasing order, then hands off
/// to the pair multiplicities.
fn label_rec(
    n: usize,
    spec: &CorpusSpec,
    genus_zero: bool,
    budget: usize,
    labels: &mut Vec<(u32, u32)>,
    visit: &mut dyn FnMut(&Shape),
) {
    if labels.len() == n {
        let spent: usize = labels.iter().map(|&(g, l)| (g + l) as usize).sum();
        let loops: usize = labels.iter().map(|&(_, l)| l as usize).sum();
        let mut shape = Shape {
            genus: labels.iter().map(|l| l.0).collect(),
            loops: labels.iter().map(|l| l.1).collect(),
            pairs: vec![0; n * (n - 1) / 2],
        };
        let pair_budget = (budget - spent).min(spec.max_edges - loops);
        pair_rec(&mut shape, 0, pair_budget, visit);
        return;
    }
    let spent: usize = labels.iter().map(|&(g, l)| (g + l) as usize).sum();
    let loops: usize = labels.iter().map(|&(_, l)| l as usize).sum();
    // n - 1 of the budget is reserved for a spanning tree
    let free = budget - (n - 1) - spent;
    let last = labels.last().copied().unwrap_or((0, 0));
    let max_genus = if genus_zero { 0 } else { free as u32 };
    for g in last.0..=max_genus {
        let min_loops = if g == last.0 { last.1 } else { 0 };
        for l in min_loops..=(free as u32 - g) {
            if loops + l as usize + n.saturating_sub(1) > spec.max_edges {
                break;
            }
            labels.push((g, l));
            label_rec(n, spec, genus_zero, budget, labels, visit);
            labels.pop();
        }
    }
}

fn pair_rec(shape: &mut Shape, idx: usize, budget: usize, visit: &mut dyn FnMut(&Shape)) {
    if idx == shape.pairs.len() {
        visit(shape);
        return;
    }
    for m in 0..=budget {
        shape.pairs[idx] = m as u32;
        pair_rec(shape, idx + 1, budget - m, visit);
    }
    shape.pairs[idx] = 0;
}

type Q = Ratio<i64>;

fn bfs_connected(graph: &DualGraph, members: u64) -> bool {
    if members == 0 {
        return false;
    }
    let start = members.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(a, b) in graph.edges() {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if members >> other & 1 == 1 && seen >> other & 1 == 0 {
                seen |= 1 << other;
                queue.push_back(other);
            }
        }
    }
    seen == members
}

/// (m_Z(d), M_Z(d), deg_Z, complement) for every connected proper subcurve,
/// straight from the definitions.
fn literal_bounds(graph: &DualGraph, md: &Multidegree) -> Vec<(Q, Q, i64, u64)> {
    let n = graph.vertex_count();
    let full = (1u64 << n) - 1;
    let g = graph.arithmetic_genus();
    let d = md.total();
    let mut out = Vec::new();
    for z in 1..full {
        if !bfs_connected(graph, z) {
            continue;
        }
        let inside = |v: usize| z >> v & 1 == 1;
        let mut k = 0i64;
        for &(a, b) in graph.edges() {
            if inside(a) != inside(b) {
                k += 1;
            }
        }
        let mut w = 0i64;
        let mut deg = 0i64;
        for v in (0..n).filter(|&v| inside(v)) {
            let ends = graph
                .edges()
                .iter()
                .map(|&(a, b)| (a == v) as i64 + (b == v) as i64)
                .sum::<i64>();
            w += 2 * graph.vertex_genus(v) as i64 - 2 + ends;
            deg += md.as_slice()[v];
        }
        let centre = Q::new(d * w, 2 * g - 2);
        let half = Q::new(k, 2);
        out.push((centre - half, centre + half, deg, full & !z));
    }
    out
}

fn literal_exceptional(graph: &DualGraph) -> Vec<bool> {
    (0..graph.vertex_count())
        .map(|v| {
            let smooth_rational = graph.vertex_genus(v) == 0
                && !graph.edges().iter().any(|&(a, b)| a == v && b == v);
            let k = graph
                .edges()
                .iter()
                .filter(|&&(a, b)| (a == v) != (b == v))
                .count();
            smooth_rational && k == 2
        })
        .collect()
}

/// Balance class computed from the definition with rational bounds and a
/// quantifier over every vertex subset that induces a connected subgraph.
pub fn brute_classify(graph: &DualGraph, md: &Multidegree) -> Result<BalanceClass> {
    graph.require_semistable()?;
    md.check_len(graph)?;
    let bounds = literal_bounds(graph, md);
    if bounds
        .iter()
        .any(|(lo, hi, deg, _)| Q::from(*deg) < *lo || Q::from(*deg) > *hi)
    {
        return Ok(BalanceClass::NotSemibalanced);
    }
    let exceptional = literal_exceptional(graph);
    if (0..graph.vertex_count()).any(|v| exceptional[v] && md.as_slice()[v] != 1) {
        return Ok(BalanceClass::SemibalancedNotBalanced);
    }
    let n = graph.vertex_count();
    for (lo, _, deg, complement) in &bounds {
        let only_exceptional = (0..n).filter(|&v| complement >> v & 1 == 1).all(|v| exceptional[v]);
        if Q::from(*deg) == *lo && !only_exceptional {
            return Ok(BalanceClass::BalancedNotStably);
        }
    }
    Ok(BalanceClass::StablyBalanced)
}

/// Balanced test using only the lower bounds `deg_Z >= m_Z(d)` on connected
/// proper subcurves plus degree 1 on exceptional components.
pub fn lower_bound_balanced(graph: &DualGraph, md: &Multidegree) -> Result<bool> {
    graph.require_semistable()?;
    md.check_len(graph)?;
    let exceptional = literal_exceptional(graph);
    Ok(literal_bounds(graph, md)
        .iter()
        .all(|(lo, _, deg, _)| Q::from(*deg) >= *lo)
        && (0..graph.vertex_count()).all(|v| !exceptional[v] || md.as_slice()[v] == 1))
}

/// Singleton Basic Inequality interval widened by one on each side.
pub fn oracle_box(graph: &DualGraph, d: i64) -> Vec<(i64, i64)> {
    let g = graph.arithmetic_genus();
    (0..graph.vertex_count())
        .map(|v| {
            let k = graph
                .edges()
                .iter()
                .filter(|&&(a, b)| (a == v) != (b == v))
                .count() as i64;
            let centre = Q::new(d * graph.canonical_degree(v), 2 * g - 2);
            let half = Q::new(k, 2);
            ((centre - half).ceil().to_integer() - 1, (centre + half).floor().to_integer() + 1)
        })
        .collect()
}

/// All integer vectors in `ranges` summing to `total`, by plain odometer.
pub fn odometer(ranges: &[(i64, i64)], total: i64) -> Vec<Multidegree> {
    let mut out = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    if ranges.iter().any(|r| r.0 > r.1) {
        return out;
    }
    loop {
        if cur.iter().sum::<i64>() == total {
            out.push(Multidegree(cur.clone()));
        }
        let mut i = ranges.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
        }
    }
}

/// Balanced multidegrees of degree `d` by brute force over [`oracle_box`].
pub fn brute_balanced(graph: &DualGraph, d: i64) -> Result<Vec<(Multidegree, BalanceClass)>> {
    graph.require_semistable()?;
    odometer(&oracle_box(graph, d), d)
        .into_iter()
        .map(|md| brute_classify(graph, &md).map(|c| (md, c)))
        .filter(|r| r.as_ref().map_or(true, |(_, c)| c.is_balanced()))
        .collect()
}

/// d-generality straight from the definition.
pub fn brute_d_general(graph: &DualGraph, d: i64) -> Result<bool> {
    graph.require_quasistable()?;
    Ok(brute_balanced(graph, d)?
        .iter()
        .all(|(_, c)| c.is_stably_balanced()))
}

fn twister_rows(graph: &DualGraph) -> Vec<Vec<i64>> {
    let n = graph.vertex_count();
    (0..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            for &(a, b) in graph.edges() {
                if a != b && (a == i || b == i) {
                    let other = if a == i { b } else { a };
                    row[other] += 1;
                    row[i] -= 1;
                }
            }
            row
        })
        .collect()
}

/// Whether a degree-0 vector is an integer combination of twisters, by
/// solving the reduced system over the rationals and checking integrality.
fn in_twister_lattice(rows: &[Vec<i64>], x: &[i64]) -> bool {
    let n = rows.len();
    if x.iter().sum::<i64>() != 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let m = n - 1;
    // rows are symmetric, so solve sum_i c_i row_i = x with c_{n-1} = 0
    let mut a: Vec<Vec<Q>> = (0..m)
        .map(|j| {
            let mut r: Vec<Q> = (0..m).map(|i| Q::from(rows[i][j])).collect();
            r.push(Q::from(x[j]));
            r
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| a[r][col] != Q::from(0))
            .expect("reduced twister matrix of a connected graph is nonsingular");
        a.swap(col, pivot);
        let p = a[col][col];
        for c in col..=m {
            a[col][c] /= p;
        }
        for r in 0..m {
            if r != col && a[r][col] != Q::from(0) {
                let f = a[r][col];
                for c in col..=m {
                    let delta = f * a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    a.iter().all(|r| r[m].is_integer())
}

/// Invariant factors (those above 1) of the degree class group, from a
/// breadth-first closure over the generators `e_i - e_last` with classes
/// told apart by lattice membership, and the group structure read off
/// from how many elements each `n` kills.
pub fn bfs_class_group(graph: &DualGraph) -> Vec<u64> {
    let n = graph.vertex_count();
    let rows = twister_rows(graph);
    let same = |a: &[i64], b: &[i64]| {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        in_twister_lattice(&rows, &diff)
    };
    let mut reps: Vec<Vec<i64>> = vec![vec![0; n]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(r) = queue.pop_front() {
        for i in 0..n.saturating_sub(1) {
            let mut next = reps[r].clone();
            next[i] += 1;
            next[n - 1] -= 1;
            if !reps.iter().any(|q| same(q, &next)) {
                reps.push(next);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    let order = reps.len() as u64;
    let zero = vec![0i64; n];
    let element_orders: Vec<u64> = reps
        .iter()
        .map(|r| {
            (1..=order)
                .find(|&k| {
                    let scaled: Vec<i64> = r.iter().map(|x| x * k as i64).collect();
                    same(&scaled, &zero)
                })
                .expect("element order divides group order")
        })
        .collect();
    let divisors: Vec<u64> = (1..=order).filter(|d| order % d == 0).collect();
    let killed: Vec<u64> = divisors
        .iter()
        .map(|&k| element_orders.iter().filter(|&&o| k % o == 0).count() as u64)
        .collect();

    let mut chains = Vec::new();
    divisor_chains(order, 1, &mut Vec::new(), &mut chains);
    let gcd = |a: u64, b: u64| num_integer::gcd(a, b);
    let matches: Vec<Vec<u64>> = chains
        .into_iter()
        .filter(|chain| {
            divisors
                .iter()
                .zip(&killed)
                .all(|(&k, &count)| chain.iter().map(|&d| gcd(k, d)).product::<u64>() == count)
        })
        .collect();
    assert_eq!(matches.len(), 1, "finite abelian group structure is determined");
    matches.into_iter().next().unwrap()
}

/// Chains `d_1 | d_2 | ... ` of integers above 1 with product `remaining`,
/// each a multiple of `prev`.
fn divisor_chains(remaining: u64, prev: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if remaining == 1 {
        out.push(cur.clone());
        return;
    }
    for d in 2..=remaining {
        if remaining % d == 0 && d % prev == 0 {
            cur.push(d);
            divisor_chains(remaining / d, d, cur, out);
            cur.pop();
        }
    }
}

/// Breadth-first search from `md` over single twister steps; returns the
/// lexicographically least semibalanced multidegree at the first depth
/// containing any, or `None` past `max_depth`.
pub fn bfs_semibalanced_representative(
    graph: &DualGraph,
    md: &Multidegree,
    max_depth: usize,
) -> Result<Option<Multidegree>> {
    graph.require_quasistable()?;
    md.check_len(graph)?;
    let rows = twister_rows(graph);
    let mut seen: HashSet<Vec<i64>> = HashSet::from([md.0.clone()]);
    let mut layer = vec![md.0.clone()];
    for _ in 0..=max_depth {
        let mut hits = Vec::new();
        for v in &layer {
            let candidate = Multidegree(v.clone());
            if brute_classify(graph, &candidate)?.is_semibalanced() {
                hits.push(candidate);
            }
        }
        if let Some(best) = hits.into_iter().min() {
            return Ok(Some(best));
        }
        let mut next = Vec::new();
        for v in &layer {
            for row in &rows {
                for sign in [1, -1] {
                    let w: Vec<i64> = v.iter().zip(row).map(|(a, r)| a + sign * r).collect();
                    if seen.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(None)
}

/// A disagreement between a fast path and its reference.
#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub check: String,
    pub graph: GraphFile,
    pub degree: Option<i64>,
    pub multidegree: Option<Vec<i64>>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct VerifySummary {
    pub graphs: usize,
    pub multidegrees: usize,
    pub generality_checks: usize,
    pub class_groups: usize,
    pub representatives: usize,
}

impl VerifySummary {
    fn add(mut self, other: VerifySummary) -> VerifySummary {
        self.graphs += other.graphs;
        self.multidegrees += other.multidegrees;
        self.generality_checks += other.generality_checks;
        self.class_groups += other.class_groups;
        self.representatives += other.representatives;
        self
    }
}

/// Runs every fast path against its reference over the whole corpus.
/// `degrees` overrides the default range `0..2g-2` of each graph.
pub fn verify_corpus(
    spec: &CorpusSpec,
    degrees: Option<Range<i64>>,
) -> Result<std::result::Result<VerifySummary, Box<Disagreement>>> {
    let corpus = generate_corpus(spec)?;
    let outcomes: Vec<std::result::Result<VerifySummary, Box<Disagreement>>> = corpus
        .par_iter()
        .map(|g| verify_graph(g, degrees.clone()))
        .collect();
    let mut total = VerifySummary::default();
    for outcome in outcomes {
        match outcome {
            Ok(summary) => total = total.add(summary),
            Err(witness) => return Ok(Err(witness)),
        }
    }
    Ok(Ok(total))
}

fn verify_graph(
    graph: &DualGraph,
    degrees: Option<Range<i64>>,
) -> std::result::Result<VerifySummary, Box<Disagreement>> {
    let fail = |check: &str, degree: Option<i64>, md: Option<&Multidegree>, detail: String| {
        Box::new(Disagreement {
            check: check.to_string(),
            graph: graph.to_file(),
            degree,
            multidegree: md.map(|m| m.0.clone()),
            detail,
        })
    };
    let internal = |e: Error| fail("error", None, None, e.to_string());
    let mut summary = VerifySummary {
        graphs: 1,
        ..Default::default()
    };

    let fast = class_group(graph);
    let slow = bfs_class_group(graph);
    if fast.invariant_factors() != slow.as_slice() {
        return Err(fail(
            "class_group",
            None,
            None,
            format!("smith {:?} vs closure {:?}", fast.invariant_factors(), slow),
        ));
    }
    summary.class_groups += 1;

    let Ok(stability) = graph.classify_stability() else {
        return Ok(summary);
    };
    if !stability.is_semistable() {
        return Ok(summary);
    }
    let g = graph.arithmetic_genus();
    for d in degrees.clone().unwrap_or(0..2 * g - 2) {
        for md in odometer(&oracle_box(graph, d), d) {
            let a = classify(graph, &md).map_err(internal)?;
            let b = brute_classify(graph, &md).map_err(internal)?;
            if a != b {
                return Err(fail("classify", Some(d), Some(&md), format!("{a:?} vs {b:?}")));
            }
            let lower = lower_bound_balanced(graph, &md).map_err(internal)?;
            if lower != a.is_balanced() {
                return Err(fail(
                    "lower_bound_sufficiency",
                    Some(d),
                    Some(&md),
                    format!("lower-bound test {lower}, class {a:?}"),
                ));
            }
            summary.multidegrees += 1;
        }
        if !stability.is_quasistable() {
            let set = enumerate_balanced(graph, d, false).map_err(internal)?;
            if !set.is_empty() {
                return Err(fail("quasistable_necessity", Some(d), None, format!("{} balanced", set.len())));
            }
            continue;
        }
        let reference = brute_d_general(graph, d).map_err(internal)?;
        let exhaustive = is_d_general(graph, d, Method::Exhaustive).map_err(internal)?;
        if exhaustive != reference {
            return Err(fail("is_d_general/exhaustive", Some(d), None, format!("{exhaustive} vs {reference}")));
        }
        if stability.is_stable() {
            let criterion = is_d_general(graph, d, Method::Criterion).map_err(internal)?;
            if criterion != reference {
                return Err(fail("is_d_general/criterion", Some(d), None, format!("{criterion} vs {reference}")));
            }
        }
        summary.generality_checks += 1;

        // push a few semibalanced points two twists away and pull them back
        let rows = twister_rows(graph);
        let probes: Vec<Multidegree> = odometer(&oracle_box(graph, d), d)
            .into_iter()
            .filter(|m| brute_classify(graph, m).is_ok_and(BalanceClass::is_semibalanced))
            .take(3)
            .collect();
        for (i, base) in probes.iter().enumerate() {
            let row = &rows[i % rows.len()];
            let far = Multidegree(base.0.iter().zip(row).map(|(a, r)| a + 2 * r).collect());
            let fast = semibalanced_representative(graph, &far).map_err(internal)?;
            let slow = bfs_semibalanced_representative(graph, &far, 4).map_err(internal)?;
            if slow.as_ref() != Some(&fast) {
                return Err(fail(
                    "semibalanced_representative",
                    Some(d),
                    Some(&far),
                    format!("{:?} vs {:?}", fast.0, slow.map(|m| m.0)),
                ));
            }
            summary.representatives += 1;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree(v.to_vec())
    }

    fn describe(g: &DualGraph) -> (Vec<u32>, Vec<(usize, usize)>) {
        (g.vertices().iter().map(|v| v.genus).collect(), g.edges().to_vec())
    }

    #[test]
    fn single_vertex_stable_corpus() {
        let spec = CorpusSpec::genus_bounded(1, 2, StabilityFilter::Stable);
        let corpus = generate_corpus(&spec).unwrap();
        let mut shapes: Vec<_> = corpus.iter().map(describe).collect();
        shapes.sort();
        assert_eq!(
            shapes,
            vec![
                (vec![0], vec![(0, 0), (0, 0)]),
                (vec![1], vec![(0, 0)]),
                (vec![2], vec![]),
            ]
        );
    }

    #[test]
    fn genus_two_vines_present() {
        let spec = CorpusSpec::genus_bounded(2, 2, StabilityFilter::Stable);
        let corpus = generate_corpus(&spec).unwrap();
        let vines: Vec<_> = corpus
            .iter()
            .filter(|g| g.vertex_count() == 2 && g.loops(0) + g.loops(1) == 0)
            .map(describe)
            .collect();
        assert!(vines.contains(&(vec![1, 1], vec![(0, 1)])));
        assert!(vines.contains(&(vec![0, 0], vec![(0, 1); 3])));
        // genus 2 has exactly 7 stable graphs, all with at most 2 vertices
        assert_eq!(corpus.len(), 7);
    }

    #[test]
    fn known_stable_graph_counts() {
        // every stable graph of genus 3 has at most 4 vertices; there are 42
        let spec = CorpusSpec::genus_bounded(4, 3, StabilityFilter::Stable);
        let genus3 = generate_corpus(&spec)
            .unwrap()
            .into_iter()
            .filter(|g| g.arithmetic_genus() == 3)
            .count();
        assert_eq!(genus3, 42);
    }

    #[test]
    fn empty_and_oversized_bounds() {
        let spec = CorpusSpec {
            max_vertices: 0,
            max_genus: 3,
            max_edges: 3,
            filter: StabilityFilter::Any,
        };
        assert!(generate_corpus(&spec).unwrap().is_empty());
        let spec = CorpusSpec {
            max_vertices: 6,
            ..spec
        };
        assert!(matches!(generate_corpus(&spec), Err(Error::CorpusTooLarge(_))));
    }

    #[test]
    fn corpus_is_deterministic_and_duplicate_free() {
        let spec = CorpusSpec::genus_bounded(3, 3, StabilityFilter::Semistable);
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a, b);
        for g in &a {
            assert!(g.classify_stability().unwrap().is_semistable());
        }
        // relabelling a corpus member never yields another member
        let codes: HashSet<_> = a.iter().map(|g| g.to_json()).collect();
        assert_eq!(codes.len(), a.len());
    }

    #[test]
    fn brute_classify_examples() {
        let vine = DualGraph::vine(0, 0, 3).unwrap();
        for md in odometer(&oracle_box(&vine, 1), 1) {
            assert_eq!(brute_classify(&vine, &md).unwrap(), classify(&vine, &md).unwrap());
        }
        let vine = DualGraph::vine(1, 1, 1).unwrap();
        assert_eq!(brute_classify(&vine, &md(&[1, 1])).unwrap(), BalanceClass::StablyBalanced);
        assert_eq!(brute_classify(&vine, &md(&[2, -1])).unwrap(), BalanceClass::NotSemibalanced);
    }

    #[test]
    fn brute_d_general_examples() {
        let vine = DualGraph::vine(1, 1, 1).unwrap();
        assert!(!brute_d_general(&vine, 1).unwrap());
        assert!(brute_d_general(&vine, 2).unwrap());
        let single = DualGraph::from_indexed(&[3], &[]).unwrap();
        assert!(brute_d_general(&single, 0).unwrap());
    }

    #[test]
    fn closure_oracle_examples() {
        assert_eq!(bfs_class_group(&DualGraph::vine(0, 0, 3).unwrap()), vec![3]);
        assert_eq!(bfs_class_group(&DualGraph::from_indexed(&[0], &[]).unwrap()), Vec::<u64>::new());
        let triangle = DualGraph::from_indexed(&[0, 0, 0], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(bfs_class_group(&triangle), vec![3]);
        // two doubled edges in a path: Z/2 x Z/2
        let path = DualGraph::from_indexed(&[0, 0, 0], &[(0, 1), (0, 1), (1, 2), (1, 2)]).unwrap();
        assert_eq!(bfs_class_group(&path), vec![2, 2]);
    }

    #[test]
    fn bfs_representative_examples() {
        let vine = DualGraph::vine(1, 1, 1).unwrap();
        assert_eq!(
            bfs_semibalanced_representative(&vine, &md(&[3, -2]), 10).unwrap(),
            Some(md(&[1, 0]))
        );
        let vine = DualGraph::vine(0, 0, 3).unwrap();
        assert_eq!(
            bfs_semibalanced_representative(&vine, &md(&[4, -3]), 10).unwrap(),
            Some(md(&[1, 0]))
        );
    }

    #[test]
    fn odometer_matches_box_points() {
        let ranges = [(-2, 1), (0, 3), (-1, 1)];
        for total in -3..6 {
            assert_eq!(odometer(&ranges, total), crate::balance::box_points(&ranges, total));
        }
    }

    #[test]
    fn small_corpus_verifies() {
        let spec = CorpusSpec::genus_bounded(3, 3, StabilityFilter::Semistable);
        let summary = verify_corpus(&spec, None).unwrap().unwrap();
        assert!(summary.graphs > 20);
        assert!(summary.multidegrees > 0);
    }
}
