//! Integer and rational matrix helpers: exact inversion, Hermite and Smith
//! normal forms. Matrices are small (rank of a root system) and dense.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::Rational;

pub type IntMatrix = Vec<Vec<i64>>;

/// Exact inverse of a nonsingular integer matrix, `None` when singular.
pub fn inverse(m: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| Rational::from_integer(x as i128))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(i128::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// a nonsingular square matrix.
///
/// The result `h` is lower triangular with `h[i][i] > 0` and
/// `0 <= h[i][j] < h[i][i]` for `j < i`; its columns span the same lattice.
pub fn hermite_lower(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    // work on columns as vectors
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..n).map(|i| m[i][j] as i128).collect())
        .collect();
    for row in 0..n {
        // gcd-combine columns row..n so that only `row` has a nonzero entry at `row`
        loop {
            let nonzero: Vec<usize> = (row..n).filter(|&j| cols[j][row] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    cols.swap(row, j);
                }
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&j| cols[j][row].abs())
                .expect("nonempty");
            cols.swap(row, pivot);
            for j in row + 1..n {
                let q = Integer::div_floor(&cols[j][row], &cols[row][row]);
                if q != 0 {
                    for i in 0..n {
                        cols[j][i] -= q * cols[row][i];
                    }
                }
            }
        }
        assert!(cols[row][row] != 0, "hermite_lower: singular matrix");
        if cols[row][row] < 0 {
            for x in cols[row].iter_mut() {
                *x = -*x;
            }
        }
    }
    // reduce entries left of the diagonal
    for row in 0..n {
        let d = cols[row][row];
        for j in 0..row {
            let q = Integer::div_floor(&cols[j][row], &d);
            if q != 0 {
                for i in 0..n {
                    cols[j][i] -= q * cols[row][i];
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| cols[j][i] as i64).collect())
        .collect()
}

/// Reduces `v` modulo the lattice spanned by the columns of a lower
/// triangular Hermite basis, giving `0 <= v[i] < h[i][i]`.
pub fn reduce_mod_hermite(h: &IntMatrix, v: &[i64]) -> Vec<i64> {
    let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for i in 0..h.len() {
        let d = h[i][i] as i128;
        let q = Integer::div_floor(&v[i], &d);
        if q != 0 {
            for (r, x) in v.iter_mut().enumerate().skip(i) {
                *x -= q * h[r][i] as i128;
            }
        }
    }
    v.into_iter().map(|x| x as i64).collect()
}

/// Diagonal of the Smith normal form, each entry dividing the next.
/// Zero diagonal entries (rank deficiency) are kept at the end.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the trailing block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else {
            diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // enforce divisibility of the trailing block by the pivot
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            let x = a[i][j];
                            a[t][j] += x;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest nonzero entry of row/column t into the pivot
            let (mut bi, mut bj) = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && (a[bi][bj] == 0 || a[i][t].abs() < a[bi][bj].abs()) {
                    bi = i;
                    bj = t;
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[bi][bj].abs() {
                    bi = t;
                    bj = j;
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs() as i64);
    }
    diag
}

/// Nontrivial invariant factors (entries > 1) of the cokernel `Z^n / M Z^n`.
pub fn invariant_factors(m: &IntMatrix) -> Vec<i64> {
    smith_diagonal(m)
        .into_iter()
        .filter(|d| d.abs() != 1)
        .collect()
}
