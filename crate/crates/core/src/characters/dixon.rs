//! Dixon–Burnside character table computation.
//!
//! For an irreducible character `χ` the normalised values
//! `ω(C_k) = |C_k| χ(g_k) / χ(1)` form a common eigenvector of the class
//! matrices `M_j[i][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}` with eigenvalue
//! `ω(C_j)`. The eigenvectors are computed modulo a prime `p ≡ 1 (mod e)`,
//! degrees are recovered from the norm, and values are lifted to `Q(ζ_e)`
//! by a discrete Fourier transform over the powers of each class
//! representative.

use crate::cyclotomic::{CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::permgroup::FiniteGroup;

use super::modp::{char_poly, eval_poly, inv_mod, is_prime, kernel, pow_mod, primitive_root, rref, Matrix};

/// Raw output: the prime used and, per irreducible, its degree and values
/// (at class representatives, in class order).
pub(crate) struct DixonOutput {
    pub prime: u64,
    pub rows: Vec<(u64, Vec<CycloNumber>)>,
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√|G|`.
pub(crate) fn dixon_prime(order: usize, exponent: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && (p * p) as u128 > 4 * order as u128) {
        p += exponent;
    }
    p
}

/// `a[j][i][k]` for the class matrices.
fn class_coefficients(g: &FiniteGroup) -> Vec<Vec<Vec<u64>>> {
    let r = g.num_classes();
    let inv: Vec<usize> = (0..g.order()).map(|x| g.inv(x)).collect();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, class) in g.classes().iter().enumerate() {
        let z = class.rep_index;
        for x in 0..g.order() {
            let y = g.mul(inv[x], z);
            a[g.class_of(y)][g.class_of(x)][k] += 1;
        }
    }
    a
}

pub(crate) fn compute(g: &FiniteGroup) -> Result<DixonOutput> {
    let r = g.num_classes();
    let e = g.exponent();
    let order = g.order() as u64;
    let p = dixon_prime(g.order(), e);
    let coeffs = class_coefficients(g);
    let sizes: Vec<u64> = g.class_sizes().iter().map(|&s| s as u64).collect();
    let inverse = g.inverse_classes();

    // Split F_p^r into common eigenspaces, one class matrix at a time.
    let identity: Matrix = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Matrix> = vec![identity];
    for mat in coeffs.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(mat, space, p)?);
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::Defect(format!(
            "class matrices left a {}-dimensional common eigenspace unsplit modulo {p}",
            s.len()
        )));
    }
    if spaces.len() != r {
        return Err(Error::Defect(format!("found {} eigenvectors for {r} classes", spaces.len())));
    }

    // Degrees and values modulo p.
    let mut modular_rows = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::Defect("eigenvector vanishes at the identity class".into()));
        }
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let norm = (0..r).fold(0u64, |acc, k| {
            (acc + omega[k] * omega[inverse[k]] % p * inv_mod(sizes[k] % p, p)) % p
        });
        if norm == 0 {
            return Err(Error::Defect("eigenvector has zero norm".into()));
        }
        let target = order % p * inv_mod(norm, p) % p;
        let degree = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|d| order % d == 0 && d * d % p == target)
            .ok_or_else(|| Error::Defect(format!("no degree squares to {target} modulo {p}")))?;
        let values: Vec<u64> = (0..r)
            .map(|k| degree % p * omega[k] % p * inv_mod(sizes[k] % p, p) % p)
            .collect();
        modular_rows.push((degree, values));
    }
    let total: u64 = modular_rows.iter().map(|(d, _)| d * d).sum();
    if total != order {
        return Err(Error::Defect(format!("squared degrees sum to {total}, not {order}")));
    }

    // Lift to Q(ζ_e).
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let power_classes: Vec<Vec<usize>> = g
        .classes()
        .iter()
        .map(|c| (0..c.element_order).map(|j| g.class_of(g.pow(c.rep_index, j as i64))).collect())
        .collect();
    let mut rows = Vec::with_capacity(r);
    for (degree, values) in modular_rows {
        let mut lifted = Vec::with_capacity(r);
        for (k, class) in g.classes().iter().enumerate() {
            let o = class.element_order;
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut value = CycloNumber::zero();
            for l in 0..o {
                let step = pow_mod(inv_mod(zo, p), l, p);
                let mut acc = 0u64;
                let mut w = 1u64;
                for j in 0..o as usize {
                    acc = (acc + values[power_classes[k][j]] * w) % p;
                    w = w * step % p;
                }
                let mult = acc * inv_o % p;
                if mult > degree {
                    return Err(Error::Defect(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree} modulo {p}"
                    )));
                }
                if mult > 0 {
                    let root = CycloNumber::root_of_unity(e, (l * (e / o)) as i64);
                    value += &root.scale(&Rational::from_integer(mult.into()));
                }
            }
            lifted.push(value.embed(e)?);
        }
        rows.push((degree, lifted));
    }
    Ok(DixonOutput { prime: p, rows })
}

/// Splits an invariant subspace (rows of `space`) into the eigenspaces of
/// `mat` restricted to it. Eigenvalues are taken in increasing order.
fn split_space(mat: &[Vec<u64>], mut space: Matrix, p: u64) -> Result<Vec<Matrix>> {
    let r = mat.len();
    let pivots = rref(&mut space, p);
    let d = space.len();
    // image of each basis vector, read off in basis coordinates at pivots
    let mut restricted = vec![vec![0u64; d]; d];
    for (s, b) in space.iter().enumerate() {
        let image: Vec<u64> = (0..r)
            .map(|i| (0..r).fold(0u64, |acc, k| (acc + mat[i][k] % p * b[k]) % p))
            .collect();
        for (t, &pc) in pivots.iter().enumerate() {
            restricted[t][s] = image[pc];
        }
    }
    let poly = char_poly(&restricted, p);
    let mut pieces = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        if eval_poly(&poly, lambda, p) != 0 {
            continue;
        }
        let shifted: Matrix = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                    .collect()
            })
            .collect();
        let null = kernel(&shifted, d, p);
        found += null.len();
        let vectors: Matrix = null
            .iter()
            .map(|c| {
                (0..r)
                    .map(|i| (0..d).fold(0u64, |acc, t| (acc + c[t] * space[t][i]) % p))
                    .collect()
            })
            .collect();
        pieces.push(vectors);
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::Defect(format!(
            "class matrix is not diagonalisable modulo {p} on a {d}-dimensional eigenspace"
        )));
    }
    Ok(pieces)
}
