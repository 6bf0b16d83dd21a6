//! Small dense linear algebra over a prime field `F_p`, enough for the
//! eigenspace splitting in the character table computation.

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group `F_p^*`.
pub(crate) fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root")
}

pub(crate) type Matrix = Vec<Vec<u64>>;

/// Brings the rows of `m` into reduced row echelon form in place and
/// returns the pivot columns.
pub(crate) fn rref(m: &mut Matrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of the right kernel `{v : m v = 0}`.
pub(crate) fn kernel(m: &Matrix, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - a)`, constant term first, via
/// reduction to upper Hessenberg form.
pub(crate) fn char_poly(a: &Matrix, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = inv_mod(h[col + 1][col], p);
        for i in col + 2..n {
            let f = h[i][col] * inv % p;
            if f == 0 {
                continue;
            }
            // row_i -= f * row_{col+1}; col_{col+1} += f * col_i
            for j in 0..n {
                h[i][j] = (h[i][j] + p - f * h[col + 1][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[col + 1] = (row[col + 1] + f * row[i]) % p;
            }
        }
    }
    // polys[m] = char poly of the leading m x m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        let prev = &polys[m];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - c * h[m][m] % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = prod * h[i][m] % p;
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = (next[j] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the empty product")
}

pub(crate) fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(a: &Matrix, p: u64) -> u64 {
        // Laplace expansion; only for tiny matrices
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let minor: Matrix = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let term = a[0][c] * det(&minor, p) % p;
            total = if c % 2 == 0 { (total + term) % p } else { (total + p - term) % p };
        }
        total
    }

    #[test]
    fn char_poly_matches_determinant() {
        let p = 31;
        let a: Matrix = vec![vec![3, 7, 0, 1], vec![2, 0, 5, 9], vec![1, 4, 4, 2], vec![8, 0, 6, 30]];
        let poly = char_poly(&a, p);
        assert_eq!(poly.len(), 5);
        for x in 0..p {
            let shifted: Matrix = a
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| if i == j { (x + p - v) % p } else { (p - v) % p })
                        .collect()
                })
                .collect();
            assert_eq!(eval_poly(&poly, x, p), det(&shifted, p), "x = {x}");
        }
    }

    #[test]
    fn kernel_of_rank_one() {
        let p = 7;
        let m: Matrix = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&m, 3, p);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % p, 0);
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(31), 3);
        assert!(is_prime(421) && !is_prime(91));
    }
}
