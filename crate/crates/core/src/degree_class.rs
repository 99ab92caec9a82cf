//! The degree class group: multidegrees modulo twisters.
//!
//! The twister of component `C_i` has degree `-k_{C_i}` on `C_i` and the
//! number of shared nodes on every other component. Two multidegrees of the
//! same total degree are equivalent when they differ by an integer
//! combination of twisters. Everything here goes through one Smith normal
//! form of the twister matrix, which only depends on the underlying
//! multigraph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::balance::{box_points, classify_unchecked, degree_box, Multidegree};
use crate::error::{Error, Result};
use crate::graph::DualGraph;
use crate::smith::{mul_vec, smith_normal_form, Matrix};

/// Rows are the multidegrees of the component twisters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwisterLattice {
    pub matrix: Matrix,
}

impl TwisterLattice {
    pub fn row(&self, i: usize) -> &[i64] {
        &self.matrix[i]
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `sum_i coefficients[i] * row(i)`
    pub fn combine(&self, coefficients: &[i64]) -> Vec<i64> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| coefficients[i] * self.matrix[i][j]).sum())
            .collect()
    }
}

pub fn twister_lattice(graph: &DualGraph) -> TwisterLattice {
    let n = graph.vertex_count();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        -(graph.degree(i) as i64 - 2 * graph.loops(i) as i64)
                    } else {
                        graph.multiplicity(i, j) as i64
                    }
                })
                .collect()
        })
        .collect();
    TwisterLattice { matrix }
}

/// Canonical name of a class: residues on the torsion coordinates of the
/// Smith basis followed by the free coordinate, which tracks total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ClassLabel(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct DegreeClassGroup {
    lattice: TwisterLattice,
    /// Invariant factors greater than 1, each dividing the next.
    invariant_factors: Vec<u64>,
    diagonal: Vec<i64>,
    left: Matrix,
    right: Matrix,
}

pub fn class_group(graph: &DualGraph) -> DegreeClassGroup {
    let lattice = twister_lattice(graph);
    let snf = smith_normal_form(&lattice.matrix);
    let invariant_factors = snf
        .diagonal
        .iter()
        .filter(|&&x| x > 1)
        .map(|&x| x as u64)
        .collect();
    DegreeClassGroup {
        lattice,
        invariant_factors,
        diagonal: snf.diagonal,
        left: snf.left,
        right: snf.right,
    }
}

impl DegreeClassGroup {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of classes in each total degree.
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn lattice(&self) -> &TwisterLattice {
        &self.lattice
    }

    pub fn label(&self, md: &Multidegree) -> ClassLabel {
        let y = mul_vec(&self.left, md.as_slice());
        ClassLabel(
            y.iter()
                .zip(&self.diagonal)
                .filter(|&(_, &d)| d != 1)
                .map(|(&v, &d)| if d == 0 { v } else { v.rem_euclid(d) })
                .collect(),
        )
    }

    /// Integer coefficients `c` with `sum_i c_i row(i) = x`, if any. The
    /// solution is unique up to adding a constant to every coefficient.
    pub fn lattice_coefficients(&self, x: &[i64]) -> Option<Vec<i64>> {
        let y = mul_vec(&self.left, x);
        let z = y
            .iter()
            .zip(&self.diagonal)
            .map(|(&v, &d)| match d {
                0 if v == 0 => Some(0),
                0 => None,
                d if v % d == 0 => Some(v / d),
                _ => None,
            })
            .collect::<Option<Vec<i64>>>()?;
        Some(mul_vec(&self.right, &z))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.lattice_coefficients(x).is_some()
    }

    /// Fewest twister additions or subtractions turning `from` into `to`,
    /// or `None` when they lie in different classes.
    pub fn twister_distance(&self, from: &Multidegree, to: &Multidegree) -> Option<u64> {
        let diff: Vec<i64> = to.0.iter().zip(&from.0).map(|(a, b)| a - b).collect();
        let mut c = self.lattice_coefficients(&diff)?;
        // c and c + t(1,...,1) give the same combination; the L1 norm is minimised at a median
        c.sort_unstable();
        let median = c[c.len() / 2];
        Some(c.iter().map(|&x| (x - median).unsigned_abs()).sum())
    }
}

/// Whether `a - b` is a combination of twisters.
pub fn same_class(graph: &DualGraph, a: &Multidegree, b: &Multidegree) -> Result<bool> {
    a.check_len(graph)?;
    b.check_len(graph)?;
    if a.total() != b.total() {
        return Err(Error::DegreeMismatch {
            left: a.total(),
            right: b.total(),
        });
    }
    let diff: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect();
    Ok(class_group(graph).contains(&diff))
}

fn semibalanced_candidates(graph: &DualGraph, d: i64) -> Vec<Multidegree> {
    box_points(&degree_box(graph, d, false), d)
        .into_iter()
        .filter(|m| classify_unchecked(graph, m).is_semibalanced())
        .collect()
}

/// A semibalanced multidegree equivalent to `md`: among those reachable
/// with the fewest twister steps, the lexicographically least.
pub fn semibalanced_representative(graph: &DualGraph, md: &Multidegree) -> Result<Multidegree> {
    graph.require_quasistable()?;
    md.check_len(graph)?;
    let group = class_group(graph);
    semibalanced_candidates(graph, md.total())
        .into_iter()
        .filter_map(|c| group.twister_distance(md, &c).map(|dist| (dist, c)))
        .min()
        .map(|(_, c)| c)
        .ok_or_else(|| {
            Error::ClaimFalsified(format!(
                "no semibalanced multidegree in the class of {:?} on a quasistable graph",
                md.as_slice()
            ))
        })
}

/// One semibalanced representative (the lexicographically least) for every
/// degree-`d` class, ordered by representative.
pub fn class_representatives(graph: &DualGraph, d: i64) -> Result<Vec<Multidegree>> {
    graph.require_quasistable()?;
    let group = class_group(graph);
    let mut by_label: BTreeMap<ClassLabel, Multidegree> = BTreeMap::new();
    for c in semibalanced_candidates(graph, d) {
        by_label.entry(group.label(&c)).or_insert(c);
    }
    if by_label.len() as u64 != group.order() {
        return Err(Error::ClaimFalsified(format!(
            "found semibalanced representatives for {} of {} degree-{d} classes",
            by_label.len(),
            group.order()
        )));
    }
    let mut reps: Vec<Multidegree> = by_label.into_values().collect();
    reps.sort();
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree(v.to_vec())
    }

    fn triangle() -> DualGraph {
        DualGraph::from_indexed(&[1, 1, 1], &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn lattice_examples() {
        for k in 1..5 {
            let vine = DualGraph::vine(1, 1, k).unwrap();
            let k = k as i64;
            assert_eq!(twister_lattice(&vine).matrix, vec![vec![-k, k], vec![k, -k]]);
        }
        let single = DualGraph::from_indexed(&[1], &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(twister_lattice(&single).matrix, vec![vec![0]]);
        let t = twister_lattice(&triangle()).matrix;
        assert_eq!(t, vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]);
    }

    #[test]
    fn loops_leave_twisters_alone() {
        let g = DualGraph::from_indexed(&[0, 1], &[(0, 0), (0, 1), (0, 1)]).unwrap();
        let t = twister_lattice(&g);
        assert_eq!(t.matrix, vec![vec![-2, 2], vec![2, -2]]);
        for row in &t.matrix {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn class_group_examples() {
        assert_eq!(class_group(&DualGraph::vine(0, 0, 3).unwrap()).invariant_factors(), &[3]);
        assert!(class_group(&DualGraph::from_indexed(&[3], &[]).unwrap())
            .invariant_factors()
            .is_empty());
        assert_eq!(class_group(&triangle()).invariant_factors(), &[3]);
        assert_eq!(class_group(&DualGraph::vine(1, 1, 1).unwrap()).order(), 1);
    }

    #[test]
    fn same_class_examples() {
        let vine = DualGraph::vine(0, 0, 3).unwrap();
        assert!(same_class(&vine, &md(&[-1, 2]), &md(&[2, -1])).unwrap());
        assert!(!same_class(&vine, &md(&[0, 1]), &md(&[1, 0])).unwrap());
        assert!(same_class(&vine, &md(&[5, -4]), &md(&[5, -4])).unwrap());
        assert_eq!(
            same_class(&vine, &md(&[0, 1]), &md(&[0, 2])).unwrap_err(),
            Error::DegreeMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn labels_respect_the_lattice() {
        let g = DualGraph::from_indexed(&[0, 1, 0, 2], &[(0, 1), (0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let group = class_group(&g);
        let base = md(&[3, -1, 0, 2]);
        for i in 0..4 {
            for n in -2..=2 {
                let shifted: Vec<i64> =
                    base.0.iter().zip(group.lattice().row(i)).map(|(a, r)| a + n * r).collect();
                assert_eq!(group.label(&base), group.label(&Multidegree(shifted)));
            }
        }
        assert_ne!(group.label(&md(&[1, 0, 0, 0])), group.label(&md(&[0, 1, 0, 0])));
    }

    #[test]
    fn coefficients_reproduce_the_difference() {
        let g = triangle();
        let group = class_group(&g);
        let x = group.lattice().combine(&[2, -1, 5]);
        let c = group.lattice_coefficients(&x).unwrap();
        assert_eq!(group.lattice().combine(&c), x);
        assert!(group.lattice_coefficients(&[1, -1, 0]).is_none());
    }

    #[test]
    fn representative_examples() {
        let vine = DualGraph::vine(1, 1, 1).unwrap();
        assert_eq!(semibalanced_representative(&vine, &md(&[3, -2])).unwrap(), md(&[1, 0]));
        assert_eq!(semibalanced_representative(&vine, &md(&[0, 1])).unwrap(), md(&[0, 1]));
        let vine = DualGraph::vine(0, 0, 3).unwrap();
        assert_eq!(semibalanced_representative(&vine, &md(&[4, -3])).unwrap(), md(&[1, 0]));
        assert_eq!(semibalanced_representative(&vine, &md(&[2, -1])).unwrap(), md(&[2, -1]));
        let cycle = DualGraph::from_indexed(&[1, 0, 0], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(
            semibalanced_representative(&cycle, &md(&[1, 0, 0])),
            Err(Error::NotQuasistable { .. })
        ));
    }

    #[test]
    fn one_representative_per_class() {
        let vine = DualGraph::vine(0, 0, 3).unwrap();
        let reps = class_representatives(&vine, 1).unwrap();
        assert_eq!(reps, vec![md(&[-1, 2]), md(&[0, 1]), md(&[1, 0])]);
    }
}
