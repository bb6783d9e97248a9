//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

/// Incrementally built echelon basis of a row space.
#[derive(Default)]
pub(crate) struct Echelon {
    /// Reduced rows, each with its pivot column (leading entry normalized to 1).
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    /// Reduces `row` against the basis; if something survives it is added
    /// and `true` is returned.
    pub(crate) fn insert(&mut self, row: &[Rational]) -> bool {
        let mut r = row.to_vec();
        for (pivot, basis_row) in &self.rows {
            if !r[*pivot].is_zero() {
                let c = r[*pivot].clone();
                for (x, b) in r.iter_mut().zip(basis_row) {
                    if !b.is_zero() {
                        *x -= &c * b;
                    }
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].recip();
                for x in r.iter_mut() {
                    *x *= &inv;
                }
                // keep earlier rows reduced with respect to the new pivot
                for (_, basis_row) in self.rows.iter_mut() {
                    if !basis_row[p].is_zero() {
                        let c = basis_row[p].clone();
                        for (x, b) in basis_row.iter_mut().zip(&r) {
                            if !b.is_zero() {
                                *x -= &c * b;
                            }
                        }
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of a matrix given by rows.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut e = Echelon::default();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Indices of a maximal set of linearly independent rows, chosen greedily in
/// the given order.
pub(crate) fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut e = Echelon::default();
    let mut picked = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if e.insert(r) {
            picked.push(i);
        }
    }
    picked
}

/// Solves the square nonsingular system `a x = b`. Returns `None` when `a`
/// is singular.
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &c * p;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        assert_eq!(independent_rows(&m), vec![0, 2]);
    }

    #[test]
    fn solves_small_system() {
        let a = vec![row(&[2, 1]), row(&[1, 3])];
        let b = vec![int(3), int(5)];
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        assert!(solve_square(&[row(&[1, 1]), row(&[2, 2])], &b).is_none());
    }
}
