//! Basic Inequality bounds and balanced multidegrees.
//!
//! For a proper subcurve `Z` of a genus-`g` curve and total degree `d` the
//! admissible range of `deg_Z` is
//!
//! ```text
//! m_Z(d) = d w_Z / (2g-2) - k_Z / 2  <=  deg_Z  <=  d w_Z / (2g-2) + k_Z / 2 = M_Z(d)
//! ```
//!
//! Both ends are kept as integers multiplied by `2(2g-2)`, so endpoint
//! attainment is decided exactly.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DualGraph, Subcurve, VertexSet};

/// Component-wise degrees, aligned with the graph's vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn new(degrees: Vec<i64>) -> Self {
        Multidegree(degrees)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Degree on the subcurve `members`.
    pub fn on(&self, members: VertexSet) -> i64 {
        members.iter().map(|i| self.0[i]).sum()
    }

    pub fn check_len(&self, graph: &DualGraph) -> Result<()> {
        if self.len() == graph.vertex_count() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                got: self.len(),
            })
        }
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree(v)
    }
}

/// Basic Inequality bounds of one subcurve, scaled by `2(2g-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasicBounds {
    pub members: VertexSet,
    /// `2 d w_Z - (2g-2) k_Z`
    pub lower_scaled: i64,
    /// `2 d w_Z + (2g-2) k_Z`
    pub upper_scaled: i64,
    /// `2(2g-2)`
    pub scale: i64,
}

impl BasicBounds {
    pub fn from_invariants(members: VertexSet, genus: i64, d: i64, w: i64, k: i64) -> Self {
        let (lower_scaled, upper_scaled) = scaled_bounds(genus, d, w, k);
        BasicBounds {
            members,
            lower_scaled,
            upper_scaled,
            scale: 4 * (genus - 1),
        }
    }

    pub fn admits(&self, deg: i64) -> bool {
        let s = self.scale * deg;
        self.lower_scaled <= s && s <= self.upper_scaled
    }

    /// `deg == m_Z(d)` exactly.
    pub fn attains_lower(&self, deg: i64) -> bool {
        self.scale * deg == self.lower_scaled
    }

    pub fn attains_upper(&self, deg: i64) -> bool {
        self.scale * deg == self.upper_scaled
    }

    /// Smallest integer degree allowed, `ceil(m_Z(d))`.
    pub fn lower_ceil(&self) -> i64 {
        Integer::div_ceil(&self.lower_scaled, &self.scale)
    }

    /// Largest integer degree allowed, `floor(M_Z(d))`.
    pub fn upper_floor(&self) -> i64 {
        Integer::div_floor(&self.upper_scaled, &self.scale)
    }
}

#[inline]
fn scaled_bounds(genus: i64, d: i64, w: i64, k: i64) -> (i64, i64) {
    let centre = 2 * d * w;
    let half_width = (2 * genus - 2) * k;
    (centre - half_width, centre + half_width)
}

/// Basic Inequality bounds for a proper subcurve in total degree `d`.
pub fn basic_bounds(z: &Subcurve<'_>, d: i64) -> Result<BasicBounds> {
    let graph = z.graph();
    let genus = graph.arithmetic_genus();
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus });
    }
    if !z.is_proper() {
        return Err(Error::NotProper);
    }
    let members = z.members();
    Ok(BasicBounds::from_invariants(
        members,
        genus,
        d,
        graph.canonical_degree_of(members),
        graph.boundary_count(members),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BalanceClass {
    NotSemibalanced,
    SemibalancedNotBalanced,
    BalancedNotStably,
    StablyBalanced,
}

impl BalanceClass {
    pub fn is_semibalanced(self) -> bool {
        self != BalanceClass::NotSemibalanced
    }

    pub fn is_balanced(self) -> bool {
        matches!(
            self,
            BalanceClass::BalancedNotStably | BalanceClass::StablyBalanced
        )
    }

    pub fn is_stably_balanced(self) -> bool {
        self == BalanceClass::StablyBalanced
    }
}

/// Classifies a multidegree on a semistable graph. The total degree may be
/// any integer.
pub fn classify(graph: &DualGraph, md: &Multidegree) -> Result<BalanceClass> {
    graph.require_semistable()?;
    md.check_len(graph)?;
    Ok(classify_unchecked(graph, md))
}

pub(crate) fn classify_unchecked(graph: &DualGraph, md: &Multidegree) -> BalanceClass {
    let genus = graph.arithmetic_genus();
    let d = md.total();
    let scale = 4 * (genus - 1);
    let subcurves = graph.connected_proper();

    for z in subcurves {
        let (lo, hi) = scaled_bounds(genus, d, z.w, z.k);
        let s = scale * md.on(z.members);
        if s < lo || s > hi {
            return BalanceClass::NotSemibalanced;
        }
    }
    let exceptional = graph.exceptional_vertices();
    if exceptional.iter().any(|e| md.0[e] != 1) {
        return BalanceClass::SemibalancedNotBalanced;
    }
    let n = graph.vertex_count();
    let blocks_stability = subcurves.iter().any(|z| {
        let (lo, _) = scaled_bounds(genus, d, z.w, z.k);
        scale * md.on(z.members) == lo && !z.members.complement(n).is_subset(exceptional)
    });
    if blocks_stability {
        BalanceClass::BalancedNotStably
    } else {
        BalanceClass::StablyBalanced
    }
}

/// Per-vertex search interval from the singleton Basic Inequality bounds,
/// optionally pinning exceptional vertices to degree 1.
pub fn degree_box(graph: &DualGraph, d: i64, pin_exceptional: bool) -> Vec<(i64, i64)> {
    let genus = graph.arithmetic_genus();
    let exceptional = graph.exceptional_vertices();
    (0..graph.vertex_count())
        .map(|i| {
            if pin_exceptional && exceptional.contains(i) {
                return (1, 1);
            }
            let members = VertexSet::singleton(i);
            let b = BasicBounds::from_invariants(
                members,
                genus,
                d,
                graph.canonical_degree(i),
                graph.boundary_count(members),
            );
            (b.lower_ceil(), b.upper_floor())
        })
        .collect()
}

/// All integer vectors inside `ranges` with coordinate sum `total`, in
/// lexicographic order.
pub fn box_points(ranges: &[(i64, i64)], total: i64) -> Vec<Multidegree> {
    fn rec(ranges: &[(i64, i64)], rest: i64, prefix: &mut Vec<i64>, out: &mut Vec<Multidegree>) {
        match ranges {
            [] => {}
            [(lo, hi)] => {
                if *lo <= rest && rest <= *hi {
                    prefix.push(rest);
                    out.push(Multidegree(prefix.clone()));
                    prefix.pop();
                }
            }
            [(lo, hi), tail @ ..] => {
                let tail_lo: i64 = tail.iter().map(|r| r.0).sum();
                let tail_hi: i64 = tail.iter().map(|r| r.1).sum();
                let from = (*lo).max(rest - tail_hi);
                let to = (*hi).min(rest - tail_lo);
                for x in from..=to {
                    prefix.push(x);
                    rec(tail, rest - x, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(ranges, total, &mut Vec::with_capacity(ranges.len()), &mut out);
    out
}

/// Balanced multidegrees of one total degree, with their classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalancedSet {
    pub entries: Vec<(Multidegree, BalanceClass)>,
    /// Set when the set is empty for a structural reason.
    pub diagnostic: Option<String>,
}

impl BalancedSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multidegrees(&self) -> Vec<Multidegree> {
        self.entries.iter().map(|(md, _)| md.clone()).collect()
    }
}

/// Balanced (or only stably balanced) multidegrees of total degree `d`,
/// sorted lexicographically. A semistable graph that is not quasistable has
/// none; that case yields an empty set with a diagnostic.
pub fn enumerate_balanced(graph: &DualGraph, d: i64, stably_only: bool) -> Result<BalancedSet> {
    let stability = graph.require_semistable()?;
    if !stability.is_quasistable() {
        return Ok(BalancedSet {
            entries: Vec::new(),
            diagnostic: Some(format!(
                "graph is {stability:?}: two exceptional components meet, so no multidegree is balanced"
            )),
        });
    }
    let entries = box_points(&degree_box(graph, d, true), d)
        .into_iter()
        .filter_map(|md| {
            let class = classify_unchecked(graph, &md);
            let keep = if stably_only {
                class.is_stably_balanced()
            } else {
                class.is_balanced()
            };
            keep.then_some((md, class))
        })
        .collect();
    Ok(BalancedSet {
        entries,
        diagnostic: None,
    })
}

/// Tensoring with the `n`-th power of the dualizing sheaf: adds `n w_i` to
/// each entry.
pub fn twist(graph: &DualGraph, md: &Multidegree, n: i64) -> Result<Multidegree> {
    md.check_len(graph)?;
    Ok(Multidegree(
        md.0.iter()
            .enumerate()
            .map(|(i, &x)| x + n * graph.canonical_degree(i))
            .collect(),
    ))
}

/// Dual then twist: `deg_i -> n w_i - deg_i`.
pub fn reflect_twist(graph: &DualGraph, md: &Multidegree, n: i64) -> Result<Multidegree> {
    md.check_len(graph)?;
    Ok(Multidegree(
        md.0.iter()
            .enumerate()
            .map(|(i, &x)| n * graph.canonical_degree(i) - x)
            .collect(),
    ))
}
