//! Integer matrices: Smith normal form diagonals, rank and left kernels.
//! Everything is exact over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn ncols(m: &Matrix) -> usize {
    m.first().map_or(0, Vec::len)
}

/// Row echelon form by gcd row operations. Returns the echelon rows and, if
/// `track` is set, the unimodular transform `U` with `U * M = E`.
fn echelon(m: &Matrix, cols: usize, track: bool) -> (Matrix, Option<Matrix>, usize) {
    let nr = m.len();
    let mut a: Matrix = m.clone();
    let mut u: Option<Matrix> = track.then(|| {
        (0..nr)
            .map(|i| {
                (0..nr)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    });
    let mut prow = 0;
    for c in 0..cols {
        if prow == nr {
            break;
        }
        loop {
            // smallest nonzero entry at or below the pivot row
            let mut best: Option<usize> = None;
            for r in prow..nr {
                if !a[r][c].is_zero()
                    && best.is_none_or(|b| a[r][c].abs() < a[b][c].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            a.swap(prow, b);
            if let Some(u) = u.as_mut() {
                u.swap(prow, b);
            }
            let mut clean = true;
            for r in (prow + 1)..nr {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[prow][c]);
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(r);
                    for (x, y) in rest[0].iter_mut().zip(top[prow].iter()).skip(c) {
                        *x -= &q * y;
                    }
                    if let Some(u) = u.as_mut() {
                        let (top, rest) = u.split_at_mut(r);
                        for (x, y) in rest[0].iter_mut().zip(top[prow].iter()) {
                            *x -= &q * y;
                        }
                    }
                }
                if !a[r][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                prow += 1;
                break;
            }
        }
    }
    (a, u, prow)
}

pub fn rank(m: &Matrix) -> usize {
    echelon(m, ncols(m), false).2
}

/// Basis of `{ r : r * M = 0 }`. The basis spans a saturated sublattice,
/// being rows of a unimodular matrix.
pub fn left_kernel(m: &Matrix) -> Matrix {
    let nr = m.len();
    if nr == 0 {
        return Vec::new();
    }
    let (_, u, rk) = echelon(m, ncols(m), true);
    let u = u.expect("tracked");
    u[rk..nr].to_vec()
}

/// Nonzero Smith invariant factors, positive and in divisibility order.
pub fn smith_diagonal(m: &Matrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let nr = a.len();
    let nc = ncols(&a);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // pivot: smallest nonzero in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..nr {
            for c in t..nc {
                if !a[r][c].is_zero()
                    && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let mut done = true;
            for r in (t + 1)..nr {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0].iter_mut().zip(top[t].iter()).skip(t) {
                    *x -= &q * y;
                }
                if !a[r][t].is_zero() {
                    done = false;
                    a.swap(t, r);
                }
            }
            for c in (t + 1)..nc {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    done = false;
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                }
            }
            if done {
                // divisibility: fold a non-multiple into the pivot row
                let p = a[t][t].clone();
                let bad = (t + 1..nr)
                    .find(|&r| (t + 1..nc).any(|c| !(&a[r][c] % &p).is_zero()));
                match bad {
                    Some(r) => {
                        let (top, rest) = a.split_at_mut(r);
                        for (x, y) in top[t].iter_mut().zip(rest[0].iter()) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// True when the rows span all of `Z^cols`.
pub fn rows_span_lattice(m: &Matrix, cols: usize) -> bool {
    if cols == 0 {
        return true;
    }
    let d = smith_diagonal(m);
    d.len() == cols && d.iter().all(One::is_one)
}

pub fn mat_vec_left(v: &[BigInt], m: &Matrix) -> Vec<BigInt> {
    let nc = ncols(m);
    let mut out = vec![BigInt::zero(); nc];
    for (a, row) in v.iter().zip(m.iter()) {
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row.iter()) {
            *o += a * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_small() {
        let m = from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d: Vec<i64> = smith_diagonal(&m)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(d, vec![2, 6, 12]);
        let m = from_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_diagonal(&m), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn kernels() {
        let m = from_i64(&[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(mat_vec_left(&k[0], &m).iter().all(Zero::is_zero));
        assert_eq!(rank(&m), 2);
        // kernel of [2] over Z is {0}, kernel of [[2],[4]] is saturated
        let m = from_i64(&[vec![2], vec![4]]);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        let g = k[0].iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        assert!(g.is_one());
    }

    #[test]
    fn spanning() {
        assert!(rows_span_lattice(&from_i64(&[vec![1, 1], vec![0, 1], vec![3, 5]]), 2));
        assert!(!rows_span_lattice(&from_i64(&[vec![2, 0], vec![0, 1]]), 2));
        assert!(!rows_span_lattice(&from_i64(&[vec![1, 0]]), 2));
    }
}
