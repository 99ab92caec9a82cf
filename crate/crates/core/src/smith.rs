//! Smith normal form over the integers with both change-of-basis matrices.

pub type Matrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// `diagonal = left * input * right`, with `left` and `right` unimodular,
/// nonnegative diagonal entries, and each nonzero entry dividing the next.
/// Zeros come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: Matrix,
    pub right: Matrix,
    pub rank: usize,
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] -= q * row[src]
fn sub_row(m: &mut Matrix, dst: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row) {
        *x -= q * s;
    }
}

/// col[dst] -= q * col[src]
fn sub_col(m: &mut Matrix, dst: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] -= q * row[src];
    }
}

fn smallest_nonzero(a: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                best = Some((x.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(input: &Matrix) -> SmithForm {
    let m = input.len();
    let n = input.first().map_or(0, Vec::len);
    let mut a = input.clone();
    let mut left = identity(m);
    let mut right = identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = smallest_nonzero(&a, t) {
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let pivot = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / pivot;
                sub_row(&mut a, i, t, q);
                sub_row(&mut left, i, t, q);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / pivot;
                sub_col(&mut a, j, t, q);
                sub_col(&mut right, j, t, q);
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block; otherwise fold the offending row in
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % pivot != 0));
            match offending {
                Some(i) => {
                    sub_row(&mut a, t, i, -1);
                    sub_row(&mut left, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] == 0 {
            break;
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in left[t].iter_mut() {
                *x = -*x;
            }
        }
        rank += 1;
    }

    let diagonal = (0..m.min(n)).map(|i| a[i][i]).collect();
    SmithForm {
        diagonal,
        left,
        right,
        rank,
    }
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Matrix, x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(m: &Matrix) -> i64 {
        // cofactor expansion; test matrices are tiny
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Matrix = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn check(input: &Matrix) {
        let snf = smith_normal_form(input);
        let product = mul(&mul(&snf.left, input), &snf.right);
        for (i, row) in product.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expected = if i == j { snf.diagonal[i] } else { 0 };
                assert_eq!(x, expected, "U A V not diagonal for {input:?}");
            }
        }
        assert_eq!(det(&snf.left).abs(), 1);
        assert_eq!(det(&snf.right).abs(), 1);
        let nonzero: Vec<i64> = snf.diagonal.iter().copied().filter(|&x| x != 0).collect();
        assert_eq!(nonzero.len(), snf.rank);
        assert!(snf.diagonal[..snf.rank].iter().all(|&x| x > 0));
        assert!(snf.diagonal[snf.rank..].iter().all(|&x| x == 0));
        for w in nonzero.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn known_forms() {
        let laplacian = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(smith_normal_form(&laplacian).diagonal, vec![1, 3, 0]);
        check(&laplacian);
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_normal_form(&m).diagonal, vec![2, 6, 12]);
        check(&m);
        assert_eq!(smith_normal_form(&vec![vec![0]]).diagonal, vec![0]);
        check(&vec![vec![4, 6], vec![6, 4]]);
    }

    proptest! {
        #[test]
        fn random_square_matrices(entries in proptest::collection::vec(-6i64..=6, 16)) {
            let m: Matrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            check(&m);
        }
    }
}
