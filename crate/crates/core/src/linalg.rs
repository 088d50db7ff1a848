//! Small exact linear algebra over `Q`: row reduction, rank, nullspace and
//! orthogonal projection onto a row space.

use num_traits::{One, Zero};

use crate::exact::Rational;

pub type Row = Vec<Rational>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Row], cols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Row], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// A basis of `{ x : A x = 0 }`, one vector per free column.
pub fn nullspace(rows: &[Row], cols: usize) -> Vec<Row> {
    let (r, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Affine dimension of a point set (`-1` for the empty set).
pub fn affine_dim(points: &[&Row]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let cols = first.len();
    let diffs: Vec<Row> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs, cols) as isize
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves the square nonsingular system `A x = b`.
fn solve(a: &[Row], b: &[Rational]) -> Row {
    let n = a.len();
    let aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    assert_eq!(pivots, (0..n).collect::<Vec<_>>(), "singular system");
    r.iter().map(|row| row[n].clone()).collect()
}

/// Orthogonal projection of `v` onto the span of the (independent) `basis` rows.
pub fn project_onto_rows(basis: &[Row], v: &[Rational]) -> Row {
    if basis.is_empty() {
        return vec![Rational::zero(); v.len()];
    }
    let gram: Vec<Row> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Row = basis.iter().map(|a| dot(a, v)).collect();
    let coef = solve(&gram, &rhs);
    let mut out = vec![Rational::zero(); v.len()];
    for (c, row) in coef.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn row(c: &[i64]) -> Row {
        c.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn rref_finds_rank_and_pivots() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        let (r, p) = rref(&rows, 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, vec![row(&[1, 0, 1]), row(&[0, 1, 1])]);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = vec![row(&[1, 2, 3]), row(&[0, 1, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn affine_dim_of_collinear_points() {
        let pts = [row(&[0, 0]), row(&[1, 1]), row(&[2, 2])];
        let refs: Vec<&Row> = pts.iter().collect();
        assert_eq!(affine_dim(&refs), 1);
        assert_eq!(affine_dim(&[]), -1);
    }

    #[test]
    fn projection_onto_line() {
        let p = project_onto_rows(&[row(&[1, 1])], &row(&[1, 0]));
        assert_eq!(p, vec![rat(1, 2), rat(1, 2)]);
    }
}
