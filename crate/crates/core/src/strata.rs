//! d-general and d-special curves, the gcd invariant `G_d`, vine generators
//! of the d-special locus, and the lattice of strata indexed by divisors of
//! `2g - 2`.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::balance::enumerate_balanced;
use crate::error::{Error, Result};
use crate::graph::DualGraph;

fn require_genus(genus: i64) -> Result<()> {
    if genus < 2 {
        Err(Error::GenusTooSmall { genus })
    } else {
        Ok(())
    }
}

/// `G_d = gcd(d - g + 1, 2g - 2)`, with `gcd(0, n) = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GcdInvariant {
    pub genus: i64,
    pub degree: i64,
    pub value: i64,
}

impl GcdInvariant {
    /// `(2g - 2) / G_d`: a subcurve is a witness of speciality when this divides its `w`.
    pub fn cofactor(&self) -> i64 {
        (2 * self.genus - 2) / self.value
    }
}

pub fn gcd_invariant(genus: i64, degree: i64) -> Result<GcdInvariant> {
    require_genus(genus)?;
    Ok(GcdInvariant {
        genus,
        degree,
        value: (degree - genus + 1).gcd(&(2 * genus - 2)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Enumerate the balanced multidegrees and look for one that is not stably balanced.
    Exhaustive,
    /// Look for a connected proper subcurve with connected complement whose
    /// `w` is divisible by `(2g - 2) / G_d`. Stable graphs only.
    Criterion,
}

/// Whether every balanced multidegree of total degree `d` is stably balanced.
pub fn is_d_general(graph: &DualGraph, d: i64, method: Method) -> Result<bool> {
    match method {
        Method::Exhaustive => {
            graph.require_quasistable()?;
            let balanced = enumerate_balanced(graph, d, false)?;
            Ok(balanced.entries.iter().all(|(_, c)| c.is_stably_balanced()))
        }
        Method::Criterion => {
            graph.require_stable()?;
            let cofactor = gcd_invariant(graph.arithmetic_genus(), d)?.cofactor();
            Ok(!graph
                .connected_proper()
                .iter()
                .any(|z| z.complement_connected && z.w % cofactor == 0))
        }
    }
}

/// A vine curve: components of genus `g1` and `g2` meeting in `k` nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VineGenerator {
    pub g1: u32,
    pub g2: u32,
    pub k: u32,
    /// Values of `m = w_{C1} G_d / (2g-2)` producing this vine, both
    /// orientations included.
    #[serde(skip)]
    pub m_values: Vec<i64>,
}

impl VineGenerator {
    pub fn genus(&self) -> i64 {
        self.g1 as i64 + self.g2 as i64 + self.k as i64 - 1
    }

    pub fn to_graph(&self) -> DualGraph {
        DualGraph::vine(self.g1, self.g2, self.k as usize).expect("a vine with k >= 1 is connected")
    }
}

/// Smallest degree `>= 1` congruent to `d` modulo `2g - 2`. Twisting by the
/// dualizing sheaf identifies balanced multidegrees across the shift, so
/// every question about `d` can be asked about this representative instead.
pub fn positive_degree_representative(genus: i64, d: i64) -> Result<i64> {
    require_genus(genus)?;
    let period = 2 * genus - 2;
    Ok((d - 1).rem_euclid(period) + 1)
}

/// Minimal vine curves whose closure is the locus of d-special curves, one
/// per unordered pair of components. Empty when `G_d = 1`.
pub fn enumerate_special_vine_generators(genus: i64, d: i64) -> Result<Vec<VineGenerator>> {
    require_genus(genus)?;
    if d < 1 {
        return Err(Error::DegreeBelowOne {
            degree: d,
            canonical_degree: 2 * genus - 2,
        });
    }
    let gd = gcd_invariant(genus, d)?;
    let step = gd.cofactor();
    let mut out: Vec<VineGenerator> = Vec::new();
    for m in 1..gd.value {
        // w_{C1} = step * m; the mirror vine comes from G_d - m
        let w1 = step * m;
        let max_k = (w1 + 2).min(2 * genus - w1);
        let first_k = if w1 % 2 == 0 { 2 } else { 1 };
        for k in (first_k..=max_k).step_by(2) {
            let g1 = (w1 - k) / 2 + 1;
            let g2 = genus - (w1 + k) / 2;
            debug_assert!(g1 >= 0 && g2 >= 0);
            let (g1, g2, k) = (g1 as u32, g2 as u32, k as u32);
            if let Some(existing) = out
                .iter_mut()
                .find(|v| v.k == k && v.g1 == g2 && v.g2 == g1)
            {
                existing.m_values.push(m);
            } else {
                out.push(VineGenerator {
                    g1,
                    g2,
                    k,
                    m_values: vec![m],
                });
            }
        }
    }
    Ok(out)
}

/// Whether the d-special locus is contained in the d2-special locus, i.e.
/// `G_d | G_{d2}`.
pub fn stratum_containment(genus: i64, d: i64, d2: i64) -> Result<bool> {
    let a = gcd_invariant(genus, d)?.value;
    let b = gcd_invariant(genus, d2)?.value;
    Ok(b % a == 0)
}

/// The open strata indexed by positive divisors `M` of `2g - 2`, where the
/// stratum of `M` is the complement of the d-special locus for any `d` with
/// `G_d = M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumLattice {
    pub genus: i64,
    /// Positive divisors of `2g - 2`, ascending.
    pub nodes: Vec<i64>,
}

pub fn divisor_lattice(genus: i64) -> Result<StratumLattice> {
    require_genus(genus)?;
    let n = 2 * genus - 2;
    Ok(StratumLattice {
        genus,
        nodes: (1..=n).filter(|m| n % m == 0).collect(),
    })
}

impl StratumLattice {
    /// The stratum of `M` contains the stratum of `M'` iff `M | M'`.
    pub fn contains(&self, m: i64, m2: i64) -> bool {
        m2 % m == 0
    }

    /// Whole moduli space.
    pub fn top(&self) -> i64 {
        1
    }

    /// Irreducible curves only.
    pub fn bottom(&self) -> i64 {
        2 * self.genus - 2
    }

    /// Smallest stratum containing both.
    pub fn join(&self, a: i64, b: i64) -> i64 {
        a.gcd(&b)
    }

    /// Largest stratum contained in both.
    pub fn meet(&self, a: i64, b: i64) -> i64 {
        a.lcm(&b)
    }

    /// Covering relations `(lower, upper)`: `upper | lower` with a prime quotient.
    pub fn hasse_edges(&self) -> Vec<(i64, i64)> {
        let mut edges = Vec::new();
        for &lower in self.nodes.iter().rev() {
            for &upper in self.nodes.iter() {
                if upper != lower
                    && lower % upper == 0
                    && !self
                        .nodes
                        .iter()
                        .any(|&mid| mid != upper && mid != lower && mid % upper == 0 && lower % mid == 0)
                {
                    edges.push((lower, upper));
                }
            }
        }
        edges
    }

    /// Every pair `(M, M')` with stratum `M` inside stratum `M'`, reflexive pairs included.
    pub fn order_pairs(&self) -> Vec<(i64, i64)> {
        let mut pairs = Vec::new();
        for &a in &self.nodes {
            for &b in &self.nodes {
                if self.contains(b, a) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Hasse diagram with edges pointing up toward `M = 1`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
        for m in &self.nodes {
            let _ = writeln!(out, "  \"{m}\";");
        }
        for (lower, upper) in self.hasse_edges() {
            let _ = writeln!(out, "  \"{lower}\" -> \"{upper}\";");
        }
        out.push_str("}\n");
        out
    }
}
