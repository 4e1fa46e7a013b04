//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// Solution with every free variable set to zero.
    pub particular: Vec<Rational>,
    pub null_space: Vec<Vec<Rational>>,
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent.
pub fn linear_solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Option<LinearSolution>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if let Some(row) = a.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "row of length {} in a matrix with {} columns",
            row.len(),
            cols
        )));
    }

    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut r = r.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].recip();
        for v in rows[rank][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }

    if rows[rank..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(None);
    }

    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][cols].clone();
    }

    let mut null_space = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -rows[r][free].clone();
        }
        null_space.push(v);
    }

    Ok(Some(LinearSolution {
        particular,
        null_space,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    fn apply(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        a.iter()
            .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum())
            .collect()
    }

    #[test]
    fn identity_system() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let b = vec![int(3), int(-2)];
        let s = linear_solve(&a, &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.null_space.is_empty());
    }

    #[test]
    fn zero_matrix_inconsistent() {
        let a = m(&[&[0, 0]]);
        assert_eq!(linear_solve(&a, &[int(1)]).unwrap(), None);
    }

    #[test]
    fn one_equation_two_unknowns() {
        let a = m(&[&[1, 1]]);
        let s = linear_solve(&a, &[int(1)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![int(1), int(0)]);
        assert_eq!(s.null_space, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn dimension_checks() {
        assert!(matches!(
            linear_solve(&m(&[&[1, 2]]), &[int(1), int(2)]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            linear_solve(&m(&[&[1, 2], &[1]]), &[int(1), int(2)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rank_deficient_solution_checks_out() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let b = vec![int(6), int(12), int(2)];
        let s = linear_solve(&a, &b).unwrap().unwrap();
        assert_eq!(apply(&a, &s.particular), b);
        assert_eq!(s.null_space.len(), 1);
        assert!(apply(&a, &s.null_space[0]).iter().all(Zero::is_zero));
    }
}
