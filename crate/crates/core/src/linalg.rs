//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::cyclotomic::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solves `a x = b`, setting every free variable to zero. Returns `None`
/// when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in aug.iter().zip(&pivots) {
        debug_assert!(row[pc].is_one());
        x[pc] = row[n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn solves_square_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[rat(3, 1), rat(5, 1)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }

    #[test]
    fn free_variables_are_zero() {
        let a = m(&[&[1, 1, 2], &[0, 0, 0]]);
        let x = solve(&a, &[rat(4, 1), rat(0, 1)]).unwrap();
        assert_eq!(x, vec![rat(4, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[rat(1, 1), rat(3, 1)]).is_none());
    }
}
