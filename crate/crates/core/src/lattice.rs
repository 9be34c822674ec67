//! Integer lattices: kernels of rational matrices over `Z`, Hermite normal
//! form, and integer solutions of linear systems.
//!
//! All routines use unimodular column reduction `A * U = H`. The columns of
//! `U` beyond the rank of `A` span the integer kernel, and because `U` is
//! unimodular that kernel basis is automatically saturated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Integer vector.
pub type IVec = Vec<BigInt>;

/// Clears denominators row by row; each row is scaled by the lcm of its
/// denominators, which does not change the row's kernel.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<IVec> {
    rows.iter()
        .map(|row| {
            let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| c.numer() * (&den / c.denom())).collect()
        })
        .collect()
}

struct ColumnEchelon {
    h: Vec<IVec>,
    u: Vec<IVec>,
    /// `pivots[t]` is the row of the pivot in column `t`.
    pivots: Vec<usize>,
}

fn swap_cols(m: &mut [IVec], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col[dst] -= q * col[src]`
fn sub_col(m: &mut [IVec], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn negate_col(m: &mut [IVec], c: usize) {
    for row in m.iter_mut() {
        row[c] = -&row[c];
    }
}

fn column_echelon(a: &[IVec], ncols: usize) -> ColumnEchelon {
    let mut h: Vec<IVec> = a.to_vec();
    let mut u: Vec<IVec> =
        (0..ncols).map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivots = Vec::new();
    let mut t = 0;
    for row in 0..h.len() {
        if t == ncols {
            break;
        }
        loop {
            let best =
                (t..ncols).filter(|&c| !h[row][c].is_zero()).min_by(|&x, &y| h[row][x].abs().cmp(&h[row][y].abs()));
            let Some(best) = best else { break };
            if best != t {
                swap_cols(&mut h, best, t);
                swap_cols(&mut u, best, t);
            }
            let mut done = true;
            for c in t + 1..ncols {
                if h[row][c].is_zero() {
                    continue;
                }
                let q = h[row][c].div_floor(&h[row][t]);
                sub_col(&mut h, c, t, &q);
                sub_col(&mut u, c, t, &q);
                if !h[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[row].get(t).is_some_and(|p| !p.is_zero()) {
            if h[row][t].is_negative() {
                negate_col(&mut h, t);
                negate_col(&mut u, t);
            }
            pivots.push(row);
            t += 1;
        }
    }
    ColumnEchelon { h, u, pivots }
}

fn column(m: &[IVec], c: usize) -> IVec {
    m.iter().map(|row| row[c].clone()).collect()
}

/// Integer kernel `{k in Z^ncols : A k = 0}` of an integer matrix given by rows,
/// as a saturated basis in row Hermite normal form.
pub fn integer_kernel(a: &[IVec], ncols: usize) -> Vec<IVec> {
    let ech = column_echelon(a, ncols);
    let rank = ech.pivots.len();
    hermite_normal_form((rank..ncols).map(|c| column(&ech.u, c)).collect())
}

/// Integer kernel of a rational matrix.
pub fn rational_kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<IVec> {
    integer_kernel(&integer_rows(rows), ncols)
}

/// Row Hermite normal form: pivots positive and strictly moving right,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(mut rows: Vec<IVec>) -> Vec<IVec> {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut pr = 0;
    for col in 0..ncols {
        if pr == rows.len() {
            break;
        }
        loop {
            let best = (pr..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pr, best);
            let mut done = true;
            for r in pr + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pr][col]);
                for c in 0..ncols {
                    let t = &rows[pr][c] * &q;
                    rows[r][c] -= t;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pr][col].is_zero() {
            continue;
        }
        if rows[pr][col].is_negative() {
            for c in 0..ncols {
                rows[pr][c] = -&rows[pr][c];
            }
        }
        for r in 0..pr {
            let q = rows[r][col].div_floor(&rows[pr][col]);
            if !q.is_zero() {
                for c in 0..ncols {
                    let t = &rows[pr][c] * &q;
                    rows[r][c] -= t;
                }
            }
        }
        pr += 1;
    }
    rows.truncate(pr);
    rows
}

/// Integer solutions of `A k = b` for rational `A` (rows) and `b`.
///
/// Returns a particular solution together with a saturated kernel basis, or
/// `None` when no integer solution exists.
pub fn solve_integer(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<(IVec, Vec<IVec>)> {
    assert_eq!(rows.len(), rhs.len());
    let augmented: Vec<Vec<Rational>> =
        rows.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect()).collect();
    let scaled = integer_rows(&augmented);
    let a: Vec<IVec> = scaled.iter().map(|r| r[..ncols].to_vec()).collect();
    let b: IVec = scaled.iter().map(|r| r[ncols].clone()).collect();
    let ech = column_echelon(&a, ncols);
    let rank = ech.pivots.len();
    let mut y: IVec = vec![BigInt::zero(); ncols];
    for (t, &row) in ech.pivots.iter().enumerate() {
        let mut acc = b[row].clone();
        for s in 0..t {
            acc -= &ech.h[row][s] * &y[s];
        }
        let (q, r) = acc.div_rem(&ech.h[row][t]);
        if !r.is_zero() {
            return None;
        }
        y[t] = q;
    }
    for (row, brow) in ech.h.iter().zip(&b) {
        let lhs: BigInt = (0..rank).map(|s| &row[s] * &y[s]).sum();
        if &lhs != brow {
            return None;
        }
    }
    let k: IVec = (0..ncols).map(|i| (0..rank).map(|s| &ech.u[i][s] * &y[s]).sum()).collect();
    let kernel = hermite_normal_form((rank..ncols).map(|c| column(&ech.u, c)).collect());
    Some((k, kernel))
}

/// Rank of a list of integer vectors.
pub fn rank(rows: &[IVec]) -> usize {
    hermite_normal_form(rows.to_vec()).len()
}

/// Dot product of integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
