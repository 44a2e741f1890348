//! Nullspace of a matrix over Q(t, X) by Gaussian elimination.

use crate::algebra::RationalFunction;

fn weight(f: &RationalFunction) -> usize {
    f.num().len() + f.den().len()
}

/// A basis of the right nullspace of `m` (rows of equal length `cols`).
pub fn nullspace(mut m: Vec<Vec<RationalFunction>>, cols: usize) -> Vec<Vec<RationalFunction>> {
    let rows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| weight(&m[i][c]))
        else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = m[r][j].mul(&inv);
            }
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&prow[j]));
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![RationalFunction::zero(); cols];
        v[f] = RationalFunction::one();
        for &(pr, pc) in &pivots {
            v[pc] = m[pr][f].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rf;

    #[test]
    fn one_dimensional_kernel() {
        let e = |s: &str| parse_rf(s).unwrap();
        // [1, X, t] and [X, X^2, t*X] are dependent; kernel has dimension 2
        let m = vec![vec![e("1"), e("X"), e("t")], vec![e("X"), e("X^2"), e("t*X")]];
        let b = nullspace(m.clone(), 3);
        assert_eq!(b.len(), 2);
        for v in &b {
            for row in &m {
                let mut s = RationalFunction::zero();
                for (a, x) in row.iter().zip(v) {
                    s = s.add(&a.mul(x));
                }
                assert!(s.is_zero());
            }
        }
    }
}
