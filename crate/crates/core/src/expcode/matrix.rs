//! Dense row-major matrices over GF(2^m) and reduced row echelon form.

use rayon::prelude::*;

use crate::galois::GaloisField;

/// Multiplication table row for a fixed scalar: `t[x] = c·x`.
fn scale_table(field: &GaloisField, c: u8) -> [u8; 256] {
    let mut t = [0u8; 256];
    for x in 0..field.size() {
        t[x] = field.mul(c, x as u8);
    }
    t
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns in order. Rows past the rank end up zero.
pub fn rre(field: &GaloisField, rows: &mut [Vec<u8>]) -> Vec<usize> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(found) = (r..n_rows).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        if inv != 1 {
            let t = scale_table(field, inv);
            for x in rows[r][col..].iter_mut() {
                *x = t[*x as usize];
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        let pivot_row: &[u8] = pivot_row;
        let eliminate = |row: &mut Vec<u8>| {
            let c = row[col];
            if c != 0 {
                let t = scale_table(field, c);
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x ^= t[p as usize];
                }
            }
        };
        before.par_iter_mut().for_each(eliminate);
        after.par_iter_mut().for_each(eliminate);
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank of a matrix, leaving the input untouched.
pub fn rank(field: &GaloisField, rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rre(field, &mut m).len()
}

/// Product `v·M` of a row vector with a matrix.
pub fn vec_mat(field: &GaloisField, v: &[u8], rows: &[Vec<u8>]) -> Vec<u8> {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut out = vec![0u8; n_cols];
    for (&c, row) in v.iter().zip(rows) {
        if c == 0 {
            continue;
        }
        let t = scale_table(field, c);
        for (o, &x) in out.iter_mut().zip(row) {
            *o ^= t[x as usize];
        }
    }
    out
}

/// Inner product of two vectors.
pub fn dot(field: &GaloisField, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| acc ^ field.mul(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    /// Rank over GF(q) as log_q of the size of the row space, found by
    /// enumerating every linear combination of the rows.
    fn rank_by_enumeration(field: &GaloisField, rows: &[Vec<u8>]) -> usize {
        let q = field.size();
        let n_cols = rows[0].len();
        let mut space = HashSet::new();
        let total = q.pow(rows.len() as u32);
        for mut code in 0..total {
            let mut v = vec![0u8; n_cols];
            for row in rows {
                let c = (code % q) as u8;
                code /= q;
                for (o, &x) in v.iter_mut().zip(row) {
                    *o ^= field.mul(c, x);
                }
            }
            space.insert(v);
        }
        let mut r = 0;
        let mut size = 1;
        while size < space.len() {
            size *= q;
            r += 1;
        }
        assert_eq!(size, space.len());
        r
    }

    #[test]
    fn rank_matches_enumeration_over_gf4() {
        let f = GaloisField::with_degree(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n_rows = rng.gen_range(1..=5);
            let n_cols = rng.gen_range(1..=6);
            let mut rows: Vec<Vec<u8>> = (0..n_rows)
                .map(|_| (0..n_cols).map(|_| rng.gen_range(0..4u8)).collect())
                .collect();
            // force some dependencies
            if n_rows > 2 && rng.gen_bool(0.5) {
                let c = rng.gen_range(1..4u8);
                rows[2] = rows[0].iter().zip(&rows[1]).map(|(&a, &b)| a ^ f.mul(c, b)).collect();
            }
            assert_eq!(rank(&f, &rows), rank_by_enumeration(&f, &rows));
        }
    }

    #[test]
    fn rre_shape() {
        let f = GaloisField::gf256();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut rows: Vec<Vec<u8>> = (0..6).map(|_| (0..10).map(|_| rng.gen()).collect()).collect();
        rows[5] = vec![0; 10];
        let orig = rows.clone();
        let piv = rre(&f, &mut rows);
        assert_eq!(piv.len(), 5);
        for (i, &c) in piv.iter().enumerate() {
            for (j, row) in rows.iter().enumerate() {
                assert_eq!(row[c], u8::from(i == j));
            }
            assert!(rows[i][..c].iter().all(|&x| x == 0));
        }
        assert!(rows[5].iter().all(|&x| x == 0));
        // same row space: every original row reduces to zero against the RRE
        let mut stacked = rows[..5].to_vec();
        stacked.extend(orig);
        assert_eq!(rank(&f, &stacked), 5);
    }

    #[test]
    fn vector_products() {
        let f = GaloisField::gf256();
        let m = vec![vec![1, 2, 3], vec![4, 5, 6]];
        assert_eq!(vec_mat(&f, &[1, 0], &m), vec![1, 2, 3]);
        assert_eq!(vec_mat(&f, &[1, 1], &m), vec![5, 7, 5]);
        assert_eq!(dot(&f, &[2, 3], &[0x80, 1]), f.mul(2, 0x80) ^ 3);
    }
}
