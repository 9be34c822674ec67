//! Solutions built from integer matrices `beta` whose rows carry at most one
//! positive and at most one negative entry.
//!
//! With `alpha = beta`, entry `i` of the non-symmetric solution is a product
//! over rows `j` of consecutive shifts of `u_j`:
//!
//! * `beta_ji > 0`: `u_j (u_j + 1) ... (u_j + beta_ji - 1)`
//! * `beta_ji < 0`: `(u_j - 1) (u_j - 2) ... (u_j - |beta_ji|)`
//! * `beta_ji = 0`: `1`

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::consistency::{symmetrize, SolutionTuple};
use crate::factored::FactoredPoly;
use crate::matrix::Matrix;
use crate::orbital::OrbitalPiece;
use crate::poly::{int, rat, Poly, Rational};
use crate::report::{CheckReport, Failure};
use crate::shift::{OrbitId, ShiftError, ShiftSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiquiverError {
    #[error("invalid beta:\n{0}")]
    Invalid(CheckReport),
    #[error("row {} of beta is zero", .0 + 1)]
    ZeroRow(usize),
    #[error("entry of beta does not fit in 64 bits")]
    Overflow,
    #[error("symmetrized formula disagrees with the symmetrization of the built solution")]
    Disagreement,
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

/// Integrality and the row sign condition.
pub fn validate_beta(beta: &Matrix) -> CheckReport {
    let mut report = CheckReport::pass();
    for j in 0..beta.nrows() {
        let row = beta.row(j);
        if let Some(c) = row.iter().position(|x| !x.is_integer()) {
            report.push(Failure::BetaRow { row: j, reason: format!("entry {} is not an integer", c + 1) });
            continue;
        }
        let pos = row.iter().filter(|x| x.is_positive()).count();
        let neg = row.iter().filter(|x| x.is_negative()).count();
        if pos > 1 {
            report.push(Failure::BetaRow { row: j, reason: format!("{pos} positive entries") });
        }
        if neg > 1 {
            report.push(Failure::BetaRow { row: j, reason: format!("{neg} negative entries") });
        }
    }
    report
}

/// Rows with exactly one nonzero entry. They yield one-sided families whose
/// pieces have a single nonconstant entry.
pub fn one_sided_rows(beta: &Matrix) -> Vec<usize> {
    (0..beta.nrows()).filter(|&j| beta.row(j).iter().filter(|x| !x.is_zero()).count() == 1).collect()
}

fn integer_entries(beta: &Matrix) -> Result<Vec<Vec<i64>>, MultiquiverError> {
    let report = validate_beta(beta);
    if !report.passed() {
        return Err(MultiquiverError::Invalid(report));
    }
    (0..beta.nrows())
        .map(|j| beta.row(j).iter().map(|x| x.to_integer().to_i64().ok_or(MultiquiverError::Overflow)).collect())
        .collect()
}

fn linear(m: usize, j: usize, root: Rational) -> Poly {
    &Poly::var(m, j) - &Poly::constant(m, root)
}

fn assemble(
    beta: &Matrix,
    rows: &[Vec<i64>],
    roots: impl Fn(i64) -> Vec<Rational>,
) -> Result<SolutionTuple, MultiquiverError> {
    let m = beta.nrows();
    let n = beta.ncols();
    let sys = ShiftSystem::new(beta.clone())?;
    let entries = (0..n)
        .map(|i| {
            let factors =
                (0..m).flat_map(|j| roots(rows[j][i]).into_iter().map(move |r| (linear(m, j, r), 1))).collect();
            FactoredPoly::new(m, int(1), factors).expect("monic linear factors")
        })
        .collect();
    Ok(SolutionTuple::new(sys, entries).expect("n entries"))
}

/// The non-symmetric solution `t` with `alpha = beta`.
pub fn build_solution(beta: &Matrix) -> Result<SolutionTuple, MultiquiverError> {
    let rows = integer_entries(beta)?;
    assemble(beta, &rows, |b| if b > 0 { (0..b).map(|l| int(-l)).collect() } else { (1..=-b).map(int).collect() })
}

/// Roots `-bt, -bt + 1, ..., bt` with `bt = (|b| - 1) / 2`.
fn symmetric_roots(b: i64) -> Vec<Rational> {
    let k = b.abs();
    (0..k).map(|t| rat(2 * t - (k - 1), 2)).collect()
}

/// The symmetrized solution `q_ji(u_j) = (u_j - bt)(u_j - bt + 1)...(u_j + bt)`,
/// checked against `symmetrize(build_solution(beta))` up to the overall shift
/// of every variable by `1/2`.
pub fn symmetrized_solution(beta: &Matrix) -> Result<SolutionTuple, MultiquiverError> {
    let rows = integer_entries(beta)?;
    let q = assemble(beta, &rows, symmetric_roots)?;
    let half = vec![rat(1, 2); beta.nrows()];
    if symmetrize(&build_solution(beta)?) != q.shift_all(&half) {
        return Err(MultiquiverError::Disagreement);
    }
    Ok(q)
}

/// `gcd` of the absolute values of the nonzero entries of each row.
pub fn row_gcds(beta: &Matrix) -> Result<Vec<i64>, MultiquiverError> {
    Ok(integer_entries(beta)?.iter().map(|row| row.iter().fold(0i64, |g, &b| g.gcd(&b))).collect())
}

/// Splits the symmetrized solution into one orbital piece per row `j` and
/// residue class modulo `gamma_j`. A factor `u_j - l` of entry `i` has class
/// `(l - beta_ji/2 - 1/2) mod gamma_j`, an integer because `l - beta_ji/2` is
/// always a half-integer; within one entry this is the difference rule
/// `l = l' mod gamma_j`. Pieces come ordered by row, then class.
pub fn factor_by_residue(beta: &Matrix) -> Result<Vec<OrbitalPiece>, MultiquiverError> {
    let rows = integer_entries(beta)?;
    if let Some(j) = rows.iter().position(|r| r.iter().all(|&b| b == 0)) {
        return Err(MultiquiverError::ZeroRow(j));
    }
    let q = symmetrized_solution(beta)?;
    let sys = q.sys().clone();
    let (m, n) = (sys.m(), sys.n());
    let gammas = row_gcds(beta)?;
    let mut groups: BTreeMap<(usize, i64), Vec<Vec<(Poly, u32)>>> = BTreeMap::new();
    for (j, row) in rows.iter().enumerate() {
        for (i, &b) in row.iter().enumerate() {
            for l in symmetric_roots(b) {
                let shifted = &l - rat(b, 2) - rat(1, 2);
                let class = shifted.to_integer().to_i64().ok_or(MultiquiverError::Overflow)?.rem_euclid(gammas[j]);
                let slot = groups.entry((j, class)).or_insert_with(|| vec![Vec::new(); n]);
                slot[i].push((linear(m, j, l), 1));
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    groups
        .into_values()
        .map(|factors| {
            let entries: Vec<FactoredPoly> =
                factors.into_iter().map(|fs| FactoredPoly::new(m, int(1), fs).expect("monic linear factors")).collect();
            let i = entries.iter().position(|e| !e.is_constant()).expect("nonempty class");
            let first = entries[i].factors()[0].0.clone();
            let generator = sys.half_shift(i, crate::shift::Sign::Minus, &first)?;
            let orbit = OrbitId::new(&sys, generator, all.clone())?;
            let solution = SolutionTuple::new(sys.clone(), entries).expect("n entries");
            Ok(OrbitalPiece::new(orbit, solution))
        })
        .collect()
}

/// `prod_j gcd(row j)` over nonzero rows, the orbit count stated for this family.
pub fn stated_orbit_count(beta: &Matrix) -> Result<i64, MultiquiverError> {
    Ok(row_gcds(beta)?.into_iter().filter(|&g| g != 0).product())
}

/// `sum_j gcd(row j)` over nonzero rows. Rows involve distinct variables and
/// shifts never change the variable of a linear factor, so this is the number
/// of distinct orbits the construction actually produces.
pub fn actual_orbit_count(beta: &Matrix) -> Result<i64, MultiquiverError> {
    Ok(row_gcds(beta)?.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{check_binary, check_non_symmetric, check_ternary};
    use crate::orbital::decompose;
    use crate::parse::parse_poly;

    fn polys(s: &SolutionTuple) -> Vec<String> {
        s.polys().iter().map(Poly::to_string).collect()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_beta(&Matrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1]])).passed());
        assert!(validate_beta(&Matrix::from_i64(&[&[2, -2]])).passed());
        assert!(!validate_beta(&Matrix::from_i64(&[&[1, 2]])).passed());
        let half = Matrix::from_rows(vec![vec![rat(1, 2), int(-1)]]).unwrap();
        assert!(!validate_beta(&half).passed());
    }

    #[test]
    fn build_gl3() {
        let t = build_solution(&Matrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1]])).unwrap();
        let expected: Vec<String> =
            ["u1 - 1", "u1*(u2 - 1)", "u2"].iter().map(|s| parse_poly(s, 2).unwrap().to_string()).collect();
        assert_eq!(polys(&t), expected);
        assert!(check_non_symmetric(&t).passed());
    }

    #[test]
    fn build_two_by_one() {
        let t = build_solution(&Matrix::from_i64(&[&[2, -2]])).unwrap();
        assert_eq!(polys(&t), vec!["u1^2 + u1", "u1^2 - 3*u1 + 2"]);
        assert!(check_non_symmetric(&t).passed());
        let zero = build_solution(&Matrix::from_i64(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(zero.is_all_ones());
    }

    #[test]
    fn symmetrized_examples() {
        let q = symmetrized_solution(&Matrix::from_i64(&[&[2, -2]])).unwrap();
        assert_eq!(polys(&q), vec!["u1^2 - 1/4", "u1^2 - 1/4"]);
        assert!(check_binary(&q).passed());
        let q = symmetrized_solution(&Matrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1]])).unwrap();
        assert_eq!(polys(&q), vec!["u1", "u1*u2", "u2"]);
        assert!(check_binary(&q).passed() && check_ternary(&q).passed());
        let q = symmetrized_solution(&Matrix::from_i64(&[&[3, 0, -1]])).unwrap();
        assert!(q.entry(1).is_constant());
    }

    #[test]
    fn residue_pieces() {
        let pieces = factor_by_residue(&Matrix::from_i64(&[&[2, -2]])).unwrap();
        assert_eq!(pieces.len(), 2);
        let shown: Vec<Vec<String>> = pieces.iter().map(|p| polys(&p.solution)).collect();
        assert_eq!(shown[0], vec!["u1 + 1/2", "u1 + 1/2"]);
        assert_eq!(shown[1], vec!["u1 - 1/2", "u1 - 1/2"]);
        for p in &pieces {
            assert!(check_binary(&p.solution).passed());
        }
        let sys = pieces[0].solution.sys();
        assert_eq!(
            crate::shift::same_orbit(sys, pieces[0].generator(), pieces[1].generator(), &[0, 1]).unwrap(),
            crate::shift::OrbitRelation::NotInOrbit
        );
        assert_eq!(factor_by_residue(&Matrix::from_i64(&[&[1, -1]])).unwrap().len(), 1);
        let gl3 = Matrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]);
        assert_eq!(factor_by_residue(&gl3).unwrap().len(), 2);
        assert_eq!(decompose(&symmetrized_solution(&gl3).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn zero_rows_are_rejected_for_residues() {
        assert_eq!(factor_by_residue(&Matrix::from_i64(&[&[1, -1], &[0, 0]])), Err(MultiquiverError::ZeroRow(1)));
    }

    #[test]
    fn counts() {
        let b = Matrix::from_i64(&[&[4, -6, 0], &[0, 3, -3]]);
        assert_eq!(row_gcds(&b).unwrap(), vec![2, 3]);
        assert_eq!(stated_orbit_count(&b).unwrap(), 6);
        assert_eq!(actual_orbit_count(&b).unwrap(), 5);
        assert_eq!(decompose(&symmetrized_solution(&b).unwrap()).unwrap().len(), 5);
        assert_eq!(one_sided_rows(&Matrix::from_i64(&[&[3, 0], &[1, -1]])), vec![0]);
    }
}
