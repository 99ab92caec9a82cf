//! Dual graphs of nodal curves.
//!
//! A vertex is an irreducible component weighted by its geometric genus, an
//! edge is a node, and a loop is a self-node of a single component. A
//! subcurve is always a union of whole components, so it is represented by a
//! [`VertexSet`] over the graph's declaration order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap imposed by the 64-bit vertex set. Subset enumeration is
/// exponential, so anything beyond a dozen vertices is impractical anyway.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        VertexSet(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Complement inside `0..n`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

/// Stability type of a semistable-or-worse curve of genus at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilityClass {
    Stable,
    QuasistableNotStable,
    SemistableNotQuasistable,
    NotSemistable,
}

impl StabilityClass {
    pub fn is_semistable(self) -> bool {
        self != StabilityClass::NotSemistable
    }

    pub fn is_quasistable(self) -> bool {
        matches!(
            self,
            StabilityClass::Stable | StabilityClass::QuasistableNotStable
        )
    }

    pub fn is_stable(self) -> bool {
        self == StabilityClass::Stable
    }
}

/// Invariants of a subcurve `Z`: `k` nodes meeting the complement, `w` the
/// degree of the dualizing sheaf on `Z`, and the arithmetic genus of `Z`
/// (summed over connected components when `Z` is disconnected).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubcurveInvariants {
    pub k: i64,
    pub w: i64,
    pub genus: i64,
    pub connected: bool,
}

/// A connected proper subcurve with its invariants precomputed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectedSubcurve {
    pub members: VertexSet,
    pub k: i64,
    pub w: i64,
    pub complement_connected: bool,
}

/// A subcurve borrowed from its graph.
#[derive(Clone, Copy, Debug)]
pub struct Subcurve<'g> {
    graph: &'g DualGraph,
    members: VertexSet,
}

impl<'g> Subcurve<'g> {
    pub fn graph(&self) -> &'g DualGraph {
        self.graph
    }

    pub fn members(&self) -> VertexSet {
        self.members
    }

    pub fn ids(&self) -> Vec<&'g str> {
        self.members
            .iter()
            .map(|i| self.graph.vertices[i].id.as_str())
            .collect()
    }

    pub fn is_proper(&self) -> bool {
        self.members != VertexSet::full(self.graph.vertex_count())
    }

    pub fn complement(&self) -> VertexSet {
        self.members.complement(self.graph.vertex_count())
    }

    pub fn invariants(&self) -> SubcurveInvariants {
        self.graph.invariants_of(self.members)
    }
}

/// Genus-weighted connected multigraph, immutable after construction.
#[derive(Clone, Debug)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    /// Endpoint indices with `a <= b`, in declaration order.
    edges: Vec<(usize, usize)>,
    /// Symmetric `n * n` edge multiplicities; the diagonal counts loops.
    mult: Vec<u32>,
    degree: Vec<u32>,
    genus: i64,
    connected_proper: OnceLock<Vec<ConnectedSubcurve>>,
}

impl PartialEq for DualGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DualGraph {}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl DualGraph {
    /// Builds a graph from vertices and edges given by vertex id.
    pub fn new<S: AsRef<str>>(vertices: Vec<Vertex>, edges: &[(S, S)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(id.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::build(vertices, edges)
    }

    /// Builds a graph from vertex genera and index pairs; ids are `v1, v2, ...`.
    pub fn from_indexed(genera: &[u32], edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = genera
            .iter()
            .enumerate()
            .map(|(i, &genus)| Vertex {
                id: format!("v{}", i + 1),
                genus,
            })
            .collect();
        if let Some(&(a, b)) = edges
            .iter()
            .find(|&&(a, b)| a >= genera.len() || b >= genera.len())
        {
            return Err(Error::UnknownVertex(format!("v{}", a.max(b) + 1)));
        }
        Self::build(vertices, edges.to_vec())
    }

    /// Two components `C1`, `C2` of genera `g1`, `g2` meeting in `k` nodes.
    pub fn vine(g1: u32, g2: u32, k: usize) -> Result<Self> {
        let vertices = vec![
            Vertex {
                id: "C1".into(),
                genus: g1,
            },
            Vertex {
                id: "C2".into(),
                genus: g2,
            },
        ];
        Self::build(vertices, vec![(0, 1); k])
    }

    fn build(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let mut mult = vec![0u32; n * n];
        let mut degree = vec![0u32; n];
        let mut uf = UnionFind::new(n);
        for &(a, b) in &edges {
            if a == b {
                mult[a * n + a] += 1;
            } else {
                mult[a * n + b] += 1;
                mult[b * n + a] += 1;
                uf.union(a, b);
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        if (1..n).any(|i| uf.find(i) != uf.find(0)) {
            return Err(Error::Disconnected);
        }
        let genus = vertices.iter().map(|v| v.genus as i64).sum::<i64>() + edges.len() as i64
            - n as i64
            + 1;
        Ok(DualGraph {
            vertices,
            edges,
            mult,
            degree,
            genus,
            connected_proper: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn ids(&self) -> Vec<&str> {
        self.vertices.iter().map(|v| v.id.as_str()).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn vertex_genus(&self, i: usize) -> u32 {
        self.vertices[i].genus
    }

    /// Number of edge ends at `i`; a loop contributes 2.
    pub fn degree(&self, i: usize) -> u32 {
        self.degree[i]
    }

    pub fn loops(&self, i: usize) -> u32 {
        self.mult[i * self.vertex_count() + i]
    }

    /// Number of edges between distinct vertices `i` and `j` (loops when `i == j`).
    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.vertex_count() + j]
    }

    /// `sum of vertex genera + |E| - |V| + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        self.genus
    }

    /// Degree of the dualizing sheaf on component `i`: `2 g_i - 2 + deg(i)`.
    pub fn canonical_degree(&self, i: usize) -> i64 {
        2 * self.vertices[i].genus as i64 - 2 + self.degree[i] as i64
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Subcurve spanned by the given vertex ids.
    pub fn subcurve<S: AsRef<str>>(&self, ids: &[S]) -> Result<Subcurve<'_>> {
        let mut members = VertexSet::EMPTY;
        for id in ids {
            let i = self
                .index_of(id.as_ref())
                .ok_or_else(|| Error::UnknownVertex(id.as_ref().to_string()))?;
            members.insert(i);
        }
        self.subcurve_of(members)
    }

    pub fn subcurve_of(&self, members: VertexSet) -> Result<Subcurve<'_>> {
        if members.is_empty() {
            return Err(Error::EmptySubcurve);
        }
        if !members.is_subset(self.all_vertices()) {
            let bad = members.complement(64).bits().trailing_zeros();
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        Ok(Subcurve {
            graph: self,
            members,
        })
    }

    /// Nodes joining `members` to its complement; loops never count.
    pub fn boundary_count(&self, members: VertexSet) -> i64 {
        let outside = members.complement(self.vertex_count());
        members
            .iter()
            .flat_map(|i| outside.iter().map(move |j| (i, j)))
            .map(|(i, j)| self.multiplicity(i, j) as i64)
            .sum()
    }

    pub fn canonical_degree_of(&self, members: VertexSet) -> i64 {
        members.iter().map(|i| self.canonical_degree(i)).sum()
    }

    fn components_of(&self, members: VertexSet) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for &(a, b) in &self.edges {
            if a != b && members.contains(a) && members.contains(b) {
                uf.union(a, b);
            }
        }
        let mut roots: Vec<(usize, VertexSet)> = Vec::new();
        for i in members.iter() {
            let r = uf.find(i);
            match roots.iter_mut().find(|(root, _)| *root == r) {
                Some((_, set)) => set.insert(i),
                None => roots.push((r, VertexSet::singleton(i))),
            }
        }
        roots.into_iter().map(|(_, set)| set).collect()
    }

    /// Whether the subgraph induced on `members` is connected (the empty set is not).
    pub fn is_connected_set(&self, members: VertexSet) -> bool {
        !members.is_empty() && self.components_of(members).len() == 1
    }

    fn internal_edges(&self, members: VertexSet) -> i64 {
        self.edges
            .iter()
            .filter(|&&(a, b)| members.contains(a) && members.contains(b))
            .count() as i64
    }

    pub fn invariants_of(&self, members: VertexSet) -> SubcurveInvariants {
        let components = self.components_of(members);
        let genus = components
            .iter()
            .map(|&c| {
                c.iter().map(|i| self.vertices[i].genus as i64).sum::<i64>()
                    + self.internal_edges(c)
                    - c.len() as i64
                    + 1
            })
            .sum();
        SubcurveInvariants {
            k: self.boundary_count(members),
            w: self.canonical_degree_of(members),
            genus,
            connected: components.len() == 1,
        }
    }

    /// Connected proper subcurves with invariants, ordered by size and then
    /// lexicographically on vertex indices. Computed once per graph.
    pub fn connected_proper(&self) -> &[ConnectedSubcurve] {
        self.connected_proper.get_or_init(|| {
            let n = self.vertex_count();
            let full = VertexSet::full(n);
            let mut sets: Vec<VertexSet> = (1..full.bits())
                .map(VertexSet::from_bits)
                .filter(|&s| self.is_connected_set(s))
                .collect();
            sets.sort_by_cached_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
            sets.into_iter()
                .map(|members| ConnectedSubcurve {
                    members,
                    k: self.boundary_count(members),
                    w: self.canonical_degree_of(members),
                    complement_connected: self.is_connected_set(members.complement(n)),
                })
                .collect()
        })
    }

    /// All connected proper subcurves in the deterministic order of
    /// [`DualGraph::connected_proper`]. Empty for a single vertex.
    pub fn enumerate_connected_proper_subcurves(&self) -> Vec<Subcurve<'_>> {
        self.connected_proper()
            .iter()
            .map(|c| Subcurve {
                graph: self,
                members: c.members,
            })
            .collect()
    }

    /// Genus-0 components with exactly two edge ends, none of them a loop.
    pub fn exceptional_vertices(&self) -> VertexSet {
        VertexSet::from_indices(
            (0..self.vertex_count())
                .filter(|&i| self.vertices[i].genus == 0 && self.degree[i] == 2 && self.loops(i) == 0),
        )
    }

    pub fn classify_stability(&self) -> Result<StabilityClass> {
        if self.genus < 2 {
            return Err(Error::GenusTooSmall { genus: self.genus });
        }
        let rational = || (0..self.vertex_count()).filter(|&i| self.vertices[i].genus == 0);
        if rational().any(|i| self.degree[i] < 2) {
            return Ok(StabilityClass::NotSemistable);
        }
        let exceptional = self.exceptional_vertices();
        if exceptional.is_empty() {
            return Ok(StabilityClass::Stable);
        }
        let adjacent = self
            .edges
            .iter()
            .any(|&(a, b)| a != b && exceptional.contains(a) && exceptional.contains(b));
        Ok(if adjacent {
            StabilityClass::SemistableNotQuasistable
        } else {
            StabilityClass::QuasistableNotStable
        })
    }

    pub fn require_semistable(&self) -> Result<StabilityClass> {
        let class = self.classify_stability()?;
        if class.is_semistable() {
            Ok(class)
        } else {
            Err(Error::NotSemistable { found: class })
        }
    }

    pub fn require_quasistable(&self) -> Result<StabilityClass> {
        let class = self.require_semistable()?;
        if class.is_quasistable() {
            Ok(class)
        } else {
            Err(Error::NotQuasistable { found: class })
        }
    }

    pub fn require_stable(&self) -> Result<()> {
        let class = self.classify_stability()?;
        if class.is_stable() {
            Ok(())
        } else {
            Err(Error::NotStable { found: class })
        }
    }

    /// Contracts exceptional components one at a time, fusing the two edges
    /// at each into a single edge (a loop when both lead to the same vertex).
    pub fn stable_model(&self) -> Result<DualGraph> {
        self.require_semistable()?;
        let n = self.vertex_count();
        let mut alive = vec![true; n];
        let mut edges: Vec<Option<(usize, usize)>> = self.edges.iter().copied().map(Some).collect();
        loop {
            let exceptional = (0..n).find(|&v| {
                if !alive[v] || self.vertices[v].genus != 0 {
                    return false;
                }
                let ends: Vec<_> = edges.iter().flatten().filter(|&&(a, b)| a == v || b == v).collect();
                ends.len() == 2 && ends.iter().all(|&&(a, b)| a != b)
            });
            let Some(v) = exceptional else { break };
            let incident: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter_map(|(slot, e)| match e {
                    Some((a, b)) if *a == v || *b == v => Some(slot),
                    _ => None,
                })
                .collect();
            let other = |slot: usize| {
                let (a, b) = edges[slot].expect("live edge");
                if a == v {
                    b
                } else {
                    a
                }
            };
            let (x, y) = (other(incident[0]), other(incident[1]));
            edges[incident[0]] = Some((x.min(y), x.max(y)));
            edges[incident[1]] = None;
            alive[v] = false;
        }
        let mut remap = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate().filter(|(i, _)| alive[*i]) {
            remap[i] = vertices.len();
            vertices.push(v.clone());
        }
        let edges = edges
            .into_iter()
            .flatten()
            .map(|(a, b)| (remap[a], remap[b]))
            .collect();
        let model = Self::build(vertices, edges)?;
        if model.classify_stability()? != StabilityClass::Stable {
            return Err(Error::ClaimFalsified(
                "contracting exceptional components did not produce a stable graph".into(),
            ));
        }
        Ok(model)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            format: FORMAT_VERSION,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.vertices[a].id.clone(), self.vertices[b].id.clone()))
                .collect(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        if file.format != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported graph format version {}",
                file.format
            )));
        }
        Self::new(file.vertices.clone(), &file.edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    /// Graphviz rendering; vertices are labelled `id:g=genus`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\" [label=\"{}:g={}\"];", v.id, v.id, v.genus);
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.vertices[a].id, self.vertices[b].id);
        }
        out.push_str("}\n");
        out
    }
}

pub const FORMAT_VERSION: u32 = 1;

fn default_format() -> u32 {
    FORMAT_VERSION
}

/// On-disk JSON form of a dual graph. Loops are pairs with a repeated id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default = "default_format")]
    pub format: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> DualGraph {
        DualGraph::from_indexed(&[1, 1, 1], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(DualGraph::from_indexed(&[3], &[]).unwrap().arithmetic_genus(), 3);
        assert_eq!(DualGraph::vine(1, 1, 1).unwrap().arithmetic_genus(), 2);
        assert_eq!(DualGraph::vine(0, 0, 3).unwrap().arithmetic_genus(), 2);
    }

    #[test]
    fn vine_genus_matches_component_sum() {
        for g1 in 0..4 {
            for g2 in 0..4 {
                for k in 1..6 {
                    let g = DualGraph::vine(g1, g2, k).unwrap().arithmetic_genus();
                    assert_eq!(g, (g1 + g2) as i64 + k as i64 - 1);
                }
            }
        }
    }

    #[test]
    fn disconnected_and_bad_ids_are_rejected() {
        assert_eq!(
            DualGraph::from_indexed(&[1, 1], &[]).unwrap_err(),
            Error::Disconnected
        );
        let verts = vec![
            Vertex { id: "a".into(), genus: 1 },
            Vertex { id: "a".into(), genus: 1 },
        ];
        assert_eq!(
            DualGraph::new(verts, &[("a", "a")]).unwrap_err(),
            Error::DuplicateVertex("a".into())
        );
        let verts = vec![Vertex { id: "a".into(), genus: 1 }];
        assert_eq!(
            DualGraph::new(verts, &[("a", "b")]).unwrap_err(),
            Error::UnknownVertex("b".into())
        );
        assert_eq!(DualGraph::from_indexed(&[], &[]).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn subcurve_invariant_examples() {
        let vine = DualGraph::vine(1, 1, 1).unwrap();
        let inv = vine.subcurve(&["C1"]).unwrap().invariants();
        assert_eq!((inv.k, inv.w, inv.genus, inv.connected), (1, 1, 1, true));

        let vine = DualGraph::vine(0, 0, 3).unwrap();
        let inv = vine.subcurve(&["C1"]).unwrap().invariants();
        assert_eq!((inv.k, inv.w, inv.genus), (3, 1, 0));

        let g = path3();
        let all = g.subcurve(&["v1", "v2", "v3"]).unwrap().invariants();
        assert_eq!((all.k, all.w, all.genus), (0, 2 * g.arithmetic_genus() - 2, g.arithmetic_genus()));

        let ends = g.subcurve(&["v1", "v3"]).unwrap().invariants();
        assert!(!ends.connected);
        assert_eq!((ends.k, ends.w, ends.genus), (2, 2, 2));

        assert!(matches!(g.subcurve(&["v9"]), Err(Error::UnknownVertex(_))));
        assert_eq!(g.subcurve::<&str>(&[]).unwrap_err(), Error::EmptySubcurve);
    }

    #[test]
    fn loops_do_not_count_towards_k() {
        let g = DualGraph::from_indexed(&[0, 1], &[(0, 0), (0, 1)]).unwrap();
        let inv = g.subcurve(&["v1"]).unwrap().invariants();
        assert_eq!((inv.k, inv.w, inv.genus), (1, 1, 1));
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn connected_subcurve_enumeration() {
        let ids = |g: &DualGraph| -> Vec<Vec<String>> {
            g.enumerate_connected_proper_subcurves()
                .iter()
                .map(|s| s.ids().into_iter().map(String::from).collect())
                .collect()
        };
        assert_eq!(ids(&DualGraph::vine(1, 1, 1).unwrap()), vec![vec!["C1"], vec!["C2"]]);
        assert_eq!(
            ids(&path3()),
            vec![
                vec!["v1"],
                vec!["v2"],
                vec!["v3"],
                vec!["v1", "v2"],
                vec!["v2", "v3"]
            ]
        );
        let triangle = DualGraph::from_indexed(&[1, 1, 1], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(triangle.enumerate_connected_proper_subcurves().len(), 6);
        let single = DualGraph::from_indexed(&[3], &[]).unwrap();
        assert!(single.enumerate_connected_proper_subcurves().is_empty());
    }

    #[test]
    fn stability_examples() {
        assert_eq!(
            DualGraph::vine(1, 1, 1).unwrap().classify_stability().unwrap(),
            StabilityClass::Stable
        );
        let chain = DualGraph::from_indexed(&[1, 0, 1], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(chain.classify_stability().unwrap(), StabilityClass::QuasistableNotStable);
        // genus-1 vertex closed into a cycle through two adjacent rational bridges
        let cycle = DualGraph::from_indexed(&[1, 0, 0], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(cycle.arithmetic_genus(), 2);
        assert_eq!(cycle.classify_stability().unwrap(), StabilityClass::SemistableNotQuasistable);
        let tail = DualGraph::from_indexed(&[2, 0], &[(0, 1)]).unwrap();
        assert_eq!(tail.classify_stability().unwrap(), StabilityClass::NotSemistable);
        assert_eq!(
            DualGraph::vine(1, 0, 1).unwrap().classify_stability().unwrap_err(),
            Error::GenusTooSmall { genus: 1 }
        );
    }

    #[test]
    fn stable_model_examples() {
        let chain = DualGraph::from_indexed(&[1, 0, 1], &[(0, 1), (1, 2)]).unwrap();
        let model = chain.stable_model().unwrap();
        assert_eq!(model.vertex_count(), 2);
        assert_eq!(model.edges(), &[(0, 1)]);
        assert_eq!(model.ids(), vec!["v1", "v3"]);

        let vine = DualGraph::vine(1, 1, 1).unwrap();
        assert_eq!(vine.stable_model().unwrap(), vine);

        let bridge = DualGraph::from_indexed(&[2, 0], &[(0, 1), (0, 1)]).unwrap();
        let model = bridge.stable_model().unwrap();
        assert_eq!(model.vertex_count(), 1);
        assert_eq!(model.loops(0), 1);
        assert_eq!(model.arithmetic_genus(), bridge.arithmetic_genus());

        let cycle = DualGraph::from_indexed(&[1, 0, 0], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let model = cycle.stable_model().unwrap();
        assert_eq!((model.vertex_count(), model.loops(0)), (1, 1));

        let tail = DualGraph::from_indexed(&[2, 0], &[(0, 1)]).unwrap();
        assert!(matches!(tail.stable_model(), Err(Error::NotSemistable { .. })));
    }

    #[test]
    fn json_and_dot() {
        let text = r#"{"vertices":[{"id":"v1","genus":1},{"id":"v2","genus":0}],"edges":[["v1","v2"],["v2","v2"],["v1","v2"]]}"#;
        let g = DualGraph::from_json(text).unwrap();
        assert_eq!(g.arithmetic_genus(), 3);
        assert_eq!(g.loops(1), 1);
        assert_eq!(DualGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(g.to_json().starts_with(r#"{"format":1,"#));
        let dot = g.to_dot();
        assert!(dot.contains(r#"[label="v1:g=1"]"#));
        assert!(dot.contains(r#""v2" -- "v2";"#));
        assert!(matches!(DualGraph::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            DualGraph::from_json(r#"{"format":2,"vertices":[{"id":"a","genus":2}],"edges":[]}"#),
            Err(Error::Parse(_))
        ));
    }
}
