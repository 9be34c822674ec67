//! Binary and ternary consistency equations, in symmetric (half-shift) and
//! non-symmetric (full-shift) form.
//!
//! Every check first compares the multisets of shifted factors on both sides,
//! which proves equality when they agree. Otherwise both sides are expanded
//! and the exact difference becomes the failure witness.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::factored::{factor, FactorError, FactoredPoly};
use crate::poly::{rat, Poly, Rational};
use crate::report::{CheckReport, Failure, Relation};
use crate::shift::ShiftSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("entry {entry} has {got} variables, system has {expected}")]
    VarCount { entry: usize, expected: usize, got: usize },
    #[error("entry {0} is zero")]
    ZeroEntry(usize),
    #[error("entry {0}: {1}")]
    Factor(usize, FactorError),
}

/// An n-tuple of nonzero polynomials over a shift system, each carried in
/// factored form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionTuple {
    sys: ShiftSystem,
    entries: Vec<FactoredPoly>,
}

/// A tuple whose entries carry asserted-irreducible factors.
pub type FactoredSolution = SolutionTuple;

impl SolutionTuple {
    pub fn new(sys: ShiftSystem, entries: Vec<FactoredPoly>) -> Result<Self, TupleError> {
        if entries.len() != sys.n() {
            return Err(TupleError::WrongLength { expected: sys.n(), got: entries.len() });
        }
        for (i, e) in entries.iter().enumerate() {
            if e.nvars() != sys.m() {
                return Err(TupleError::VarCount { entry: i, expected: sys.m(), got: e.nvars() });
            }
        }
        Ok(SolutionTuple { sys, entries })
    }

    /// Wraps each polynomial as a single factor times its leading coefficient.
    pub fn from_polys(sys: ShiftSystem, polys: Vec<Poly>) -> Result<Self, TupleError> {
        let entries = Self::wrap(&sys, polys, FactoredPoly::from_poly)?;
        Self::new(sys, entries)
    }

    /// Factors each polynomial with [`factor`]; entries must be univariate or
    /// products of univariate pieces.
    pub fn factored_from_polys(sys: ShiftSystem, polys: Vec<Poly>) -> Result<Self, TupleError> {
        let entries = Self::wrap(&sys, polys, factor)?;
        Self::new(sys, entries)
    }

    fn wrap(
        sys: &ShiftSystem,
        polys: Vec<Poly>,
        f: impl Fn(&Poly) -> Result<FactoredPoly, FactorError>,
    ) -> Result<Vec<FactoredPoly>, TupleError> {
        polys
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.nvars() != sys.m() {
                    return Err(TupleError::VarCount { entry: i, expected: sys.m(), got: p.nvars() });
                }
                if p.is_zero() {
                    return Err(TupleError::ZeroEntry(i));
                }
                f(p).map_err(|e| TupleError::Factor(i, e))
            })
            .collect()
    }

    /// The all-ones tuple.
    pub fn ones(sys: ShiftSystem) -> Self {
        let entries = (0..sys.n()).map(|_| FactoredPoly::one(sys.m())).collect();
        SolutionTuple { sys, entries }
    }

    pub fn sys(&self) -> &ShiftSystem {
        &self.sys
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[FactoredPoly] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &FactoredPoly {
        &self.entries[i]
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.entries.iter().map(FactoredPoly::expand).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.entries.iter().all(FactoredPoly::is_monic)
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(|e| e.is_monic() && e.is_constant())
    }

    /// Entrywise product with another tuple over the same system.
    pub fn mul(&self, other: &SolutionTuple) -> SolutionTuple {
        assert_eq!(self.sys, other.sys);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.mul(b)).collect();
        SolutionTuple { sys: self.sys.clone(), entries }
    }

    /// The same entries over another shift system of equal shape.
    pub fn with_system(&self, sys: ShiftSystem) -> Result<SolutionTuple, TupleError> {
        SolutionTuple::new(sys, self.entries.clone())
    }

    /// Shifts every entry by the same vector `t`.
    pub fn shift_all(&self, t: &[Rational]) -> SolutionTuple {
        let entries = self.entries.iter().map(|e| e.shift(t).expect("length m")).collect();
        SolutionTuple { sys: self.sys.clone(), entries }
    }

    fn shifted(&self, i: usize, t: &[Rational]) -> FactoredPoly {
        self.entries[i].shift(t).expect("shift vector has length m")
    }

    fn half(&self, i: usize, sign: i64) -> Vec<Rational> {
        self.sys.combination(&[i], &[rat(sign, 2)])
    }
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

/// Compares `l1 * l2` with `r1 * r2`; `None` when equal, else the difference.
fn compare(l: [&FactoredPoly; 2], r: [&FactoredPoly; 2]) -> Option<Poly> {
    let units_equal = l[0].unit() * l[1].unit() == r[0].unit() * r[1].unit();
    if units_equal {
        let mut lm: BTreeMap<&Poly, u32> = BTreeMap::new();
        let mut rm: BTreeMap<&Poly, u32> = BTreeMap::new();
        for (f, m) in l.iter().flat_map(|e| e.factors()) {
            *lm.entry(f).or_insert(0) += m;
        }
        for (f, m) in r.iter().flat_map(|e| e.factors()) {
            *rm.entry(f).or_insert(0) += m;
        }
        if lm == rm {
            return None;
        }
    }
    let diff = &(&l[0].expand() * &l[1].expand()) - &(&r[0].expand() * &r[1].expand());
    if diff.is_zero() {
        None
    } else {
        Some(diff)
    }
}

/// `p_i(u - a_j/2) p_j(u - a_i/2) = p_i(u + a_j/2) p_j(u + a_i/2)` for all `i < j`.
pub fn check_binary(s: &SolutionTuple) -> CheckReport {
    let mut report = CheckReport::pass();
    for i in 0..s.n() {
        for j in i + 1..s.n() {
            let (hi, hj) = (s.half(i, 1), s.half(j, 1));
            let l = [s.shifted(i, &hj), s.shifted(j, &hi)];
            let r = [s.shifted(i, &neg(&hj)), s.shifted(j, &neg(&hi))];
            if let Some(difference) = compare([&l[0], &l[1]], [&r[0], &r[1]]) {
                report.push(Failure::Relation { relation: Relation::Binary, indices: vec![i, j], difference });
            }
        }
    }
    report
}

/// `p_k(u-a-b) p_k(u+a+b) = p_k(u-a+b) p_k(u+a-b)` with `a = alpha_i/2`,
/// `b = alpha_j/2`, for `i < j` and `k` distinct from both. Vacuous for `n <= 2`.
pub fn check_ternary(s: &SolutionTuple) -> CheckReport {
    let mut report = CheckReport::pass();
    for i in 0..s.n() {
        for j in i + 1..s.n() {
            let (a, b) = (s.half(i, 1), s.half(j, 1));
            let plus = add(&a, &b);
            let minus = add(&a, &neg(&b));
            for k in (0..s.n()).filter(|&k| k != i && k != j) {
                if s.entries[k].is_constant() {
                    continue;
                }
                let l = [s.shifted(k, &plus), s.shifted(k, &neg(&plus))];
                let r = [s.shifted(k, &minus), s.shifted(k, &neg(&minus))];
                if let Some(difference) = compare([&l[0], &l[1]], [&r[0], &r[1]]) {
                    report.push(Failure::Relation { relation: Relation::Ternary, indices: vec![i, j, k], difference });
                }
            }
        }
    }
    report
}

/// Binary and ternary checks together.
pub fn check_symmetric(s: &SolutionTuple) -> CheckReport {
    check_binary(s).merge(check_ternary(s))
}

/// `sigma_i sigma_j(p_i p_j) = sigma_i(p_i) sigma_j(p_j)` for `i < j`, and
/// `sigma_i sigma_k(p_j) p_j = sigma_i(p_j) sigma_k(p_j)` for distinct `i < k`, `j`.
pub fn check_non_symmetric(s: &SolutionTuple) -> CheckReport {
    let mut report = CheckReport::pass();
    let n = s.n();
    let full: Vec<Vec<Rational>> = (0..n).map(|i| s.half(i, 2)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let both = add(&full[i], &full[j]);
            let l = [s.shifted(i, &both), s.shifted(j, &both)];
            let r = [s.shifted(i, &full[i]), s.shifted(j, &full[j])];
            if let Some(difference) = compare([&l[0], &l[1]], [&r[0], &r[1]]) {
                report.push(Failure::Relation { relation: Relation::NonSymBinary, indices: vec![i, j], difference });
            }
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            let both = add(&full[i], &full[k]);
            for j in (0..n).filter(|&j| j != i && j != k) {
                if s.entries[j].is_constant() {
                    continue;
                }
                let l = [s.shifted(j, &both), s.entries[j].clone()];
                let r = [s.shifted(j, &full[i]), s.shifted(j, &full[k])];
                if let Some(difference) = compare([&l[0], &l[1]], [&r[0], &r[1]]) {
                    report.push(Failure::Relation {
                        relation: Relation::NonSymTernary,
                        indices: vec![i, k, j],
                        difference,
                    });
                }
            }
        }
    }
    report
}

/// `p_i -> sigma_i^{1/2}(p_i)`.
pub fn symmetrize(s: &SolutionTuple) -> SolutionTuple {
    let entries = (0..s.n()).map(|i| s.shifted(i, &s.half(i, 1))).collect();
    SolutionTuple { sys: s.sys.clone(), entries }
}

/// `p_i -> sigma_i^{-1/2}(p_i)`.
pub fn unsymmetrize(s: &SolutionTuple) -> SolutionTuple {
    let entries = (0..s.n()).map(|i| s.shifted(i, &s.half(i, -1))).collect();
    SolutionTuple { sys: s.sys.clone(), entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn gl3() -> ShiftSystem {
        ShiftSystem::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]).unwrap()
    }

    fn tuple(sys: ShiftSystem, polys: &[&str]) -> SolutionTuple {
        let m = sys.m();
        SolutionTuple::factored_from_polys(sys, polys.iter().map(|s| parse_poly(s, m).unwrap()).collect()).unwrap()
    }

    #[test]
    fn ones_pass_everything() {
        let s = SolutionTuple::ones(gl3());
        assert!(check_binary(&s).passed());
        assert!(check_ternary(&s).passed());
        assert!(check_non_symmetric(&s).passed());
        assert_eq!(symmetrize(&s), s);
    }

    #[test]
    fn gl3_symmetrized_passes() {
        let s = tuple(gl3(), &["u1 - 1/2", "(u1 - 1/2)*(u2 - 1/2)", "u2 - 1/2"]);
        assert!(check_binary(&s).passed());
        assert!(check_ternary(&s).passed());
    }

    #[test]
    fn gl3_non_symmetric_passes_and_symmetrizes() {
        let t = tuple(gl3(), &["u1 - 1", "u1*(u2 - 1)", "u2"]);
        assert!(check_non_symmetric(&t).passed());
        let expected = tuple(gl3(), &["u1 - 1/2", "(u1 - 1/2)*(u2 - 1/2)", "u2 - 1/2"]);
        assert_eq!(symmetrize(&t), expected);
        assert_eq!(unsymmetrize(&symmetrize(&t)), t);
    }

    #[test]
    fn printed_example_tuple_fails_binary() {
        let s = tuple(gl3(), &["u1 - 1/2", "(u1 + 1/2)*(u2 - 1/2)", "u2 + 1/2"]);
        let r = check_binary(&s);
        assert!(!r.passed());
        let pairs: Vec<Vec<usize>> = r
            .failures
            .iter()
            .map(|f| match f {
                Failure::Relation { indices, .. } => indices.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(pairs, vec![vec![0, 1], vec![1, 2]]);
        let Failure::Relation { difference, .. } = &r.failures[0] else { unreachable!() };
        assert_eq!(difference, &parse_poly("1/2 - u2", 2).unwrap());
    }

    #[test]
    fn non_symmetric_failure_witness() {
        let sys = ShiftSystem::from_i64(&[&[1, 1]]).unwrap();
        let t = tuple(sys, &["u1", "u1"]);
        let r = check_non_symmetric(&t);
        assert_eq!(r.failures.len(), 1);
        let Failure::Relation { relation, difference, .. } = &r.failures[0] else { unreachable!() };
        assert_eq!(*relation, Relation::NonSymBinary);
        // (u1 - 2)^2 - (u1 - 1)^2
        assert_eq!(difference, &parse_poly("3 - 2*u1", 1).unwrap());
    }

    #[test]
    fn ternary_is_vacuous_for_two_entries() {
        let sys = ShiftSystem::from_i64(&[&[1, 1]]).unwrap();
        assert!(check_ternary(&tuple(sys, &["u1", "u1^2 + 1"])).passed());
    }

    #[test]
    fn unfactored_entries_still_compare_exactly() {
        // The same gl3 tuple with entry 2 kept as one (reducible) factor.
        let sys = gl3();
        let polys =
            ["u1 - 1/2", "(u1 - 1/2)*(u2 - 1/2)", "u2 - 1/2"].iter().map(|s| parse_poly(s, 2).unwrap()).collect();
        let s = SolutionTuple::from_polys(sys, polys).unwrap();
        assert!(check_binary(&s).passed());
    }

    #[test]
    fn tuple_validation() {
        let sys = gl3();
        assert!(matches!(
            SolutionTuple::from_polys(sys.clone(), vec![Poly::one(2)]),
            Err(TupleError::WrongLength { .. })
        ));
        assert!(matches!(
            SolutionTuple::from_polys(sys, vec![Poly::one(2), Poly::zero(2), Poly::one(2)]),
            Err(TupleError::ZeroEntry(1))
        ));
    }
}
