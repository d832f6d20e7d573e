//! Exact linear algebra over the rationals: fraction-free Gaussian
//! elimination, nullspace bases, and consistent-system solving.
//!
//! Rows are scaled to primitive integer vectors and eliminated with the
//! two-term Bareiss rule, so every intermediate entry stays an exact
//! integer; back-substitution then runs over rationals. Nullspace basis
//! vectors are rescaled to integer-primitive form with the first
//! nonzero coordinate positive, one vector per free column in
//! increasing column order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Scale a rational row to a primitive integer row (gcd 1). Zero rows
/// come back empty of content but keep their length.
fn primitive_integer_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    let mut out: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut gcd = BigInt::zero();
    for v in &out {
        gcd = gcd.gcd(v);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for v in &mut out {
            *v = &*v / &gcd;
        }
    }
    out
}

/// Rescale a rational vector to integer-primitive form with the first
/// nonzero coordinate positive.
pub fn normalize_primitive(vec: &[Rat]) -> Vec<Rat> {
    let ints = primitive_integer_row(vec);
    let flip = ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    ints.into_iter()
        .map(|v| Rat::from_integer(if flip { -v } else { v }))
        .collect()
}

/// Row echelon form via fraction-free (Bareiss) elimination.
/// Returns the eliminated integer rows and the pivot column of each.
fn echelon(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            primitive_integer_row(r)
        })
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            // The update must run even when the eliminating factor is
            // zero: every entry is rescaled by pivot/prev to keep the
            // minor invariant that makes the division exact.
            let factor = row[col].clone();
            for j in 0..ncols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                row[j] = num / &prev;
            }
            debug_assert!(row[col].is_zero());
        }
        prev = pivot;
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    (m, pivots)
}

/// Rank of the matrix.
pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    echelon(rows, ncols).1.len()
}

/// Basis of the right nullspace of the matrix whose rows are `rows`.
/// One basis vector per free column, in increasing column order, each
/// integer-primitive with positive first nonzero coordinate.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (ech, pivots) = echelon(rows, ncols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rat::zero(); ncols];
        x[free] = Rat::one();
        // Back-substitute pivot coordinates from the bottom row up.
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let row = &ech[r];
            let mut acc = Rat::zero();
            for j in (pc + 1)..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += &(&Rat::from_integer(row[j].clone()) * &x[j]);
                }
            }
            x[pc] = -acc / Rat::from_integer(row[pc].clone());
        }
        basis.push(normalize_primitive(&x));
    }
    basis
}

/// Solve `sum_i x_i * cols[i] = rhs` exactly. Returns `None` when the
/// system is inconsistent; free variables (if the columns are linearly
/// dependent) are pinned to zero, so the answer is deterministic.
pub fn solve_exact(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = cols.len();
    let nrows = rhs.len();
    // Augmented system [cols | rhs] over the unknown vector (x, -1).
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(nrows);
    for r in 0..nrows {
        let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
        row.push(rhs[r].clone());
        rows.push(row);
    }
    let (ech, pivots) = echelon(&rows, n + 1);
    // Inconsistent iff some pivot lands in the rhs column.
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n + 1];
    x[n] = Rat::from(-1);
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let row = &ech[r];
        let mut acc = Rat::zero();
        for j in (pc + 1)..=n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc += &(&Rat::from_integer(row[j].clone()) * &x[j]);
            }
        }
        x[pc] = -acc / Rat::from_integer(row[pc].clone());
    }
    x.truncate(n);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from(n)
    }

    fn rows_from(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|row| row.iter().map(|&n| r(n)).collect()).collect()
    }

    #[test]
    fn nullspace_of_full_rank_square_matrix_is_empty() {
        let rows = rows_from(&[&[1, 0], &[0, 1]]);
        assert!(nullspace(&rows, 2).is_empty());
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        // x + 2y + 3z = 0, 2x + 4y + 6z = 0
        let rows = rows_from(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = nullspace(&rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot: Rat = v
                .iter()
                .zip([1i64, 2, 3])
                .fold(Rat::zero(), |acc, (x, c)| acc + x.clone() * r(c));
            assert!(dot.is_zero());
            // integer-primitive, first nonzero positive
            assert!(v.iter().all(Rat::is_integer));
            assert!(!v.iter().find(|x| !x.is_zero()).unwrap().is_negative());
        }
    }

    #[test]
    fn nullspace_with_rational_entries() {
        let rows = vec![vec![Rat::from((1, 2)), Rat::from((1, 3))]];
        let basis = nullspace(&rows, 2);
        assert_eq!(basis.len(), 1);
        // (1/2)x + (1/3)y = 0 -> direction (2, -3)
        assert_eq!(basis[0], vec![r(2), r(-3)]);
    }

    #[test]
    fn solve_exact_finds_unique_solution() {
        // 2x + y = 5, x - y = 1  =>  x = 2, y = 1
        let cols = rows_from(&[&[2, 1], &[1, -1]]);
        let rhs = vec![r(5), r(1)];
        assert_eq!(solve_exact(&cols, &rhs), Some(vec![r(2), r(1)]));
    }

    #[test]
    fn solve_exact_detects_inconsistency() {
        // x = 1 and x = 2
        let cols = vec![vec![r(1), r(1)]];
        let rhs = vec![r(1), r(2)];
        assert_eq!(solve_exact(&cols, &rhs), None);
    }

    #[test]
    fn rank_of_echelon() {
        let rows = rows_from(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn random_nullspace_vectors_annihilate_matrix() {
        // deterministic pseudo-random small matrices
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for _ in 0..50 {
            let nrows = 3;
            let ncols = 5;
            let rows: Vec<Vec<Rat>> = (0..nrows)
                .map(|_| (0..ncols).map(|_| r(next())).collect())
                .collect();
            let basis = nullspace(&rows, ncols);
            assert_eq!(basis.len(), ncols - rank(&rows, ncols));
            for v in &basis {
                for row in &rows {
                    let dot = row
                        .iter()
                        .zip(v.iter())
                        .fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                    assert!(dot.is_zero());
                }
            }
        }
    }
}
