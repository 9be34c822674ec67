//! Additive shift systems, the `Z^n` action on polynomials, stabilizer
//! lattices and orbit membership.
//!
//! A [`ShiftSystem`] holds an `m x n` rational matrix `alpha`. Its column `i`
//! defines `sigma_i(p) = p(u - alpha_i)`, and `sigma_i^{1/2}` shifts by half of
//! that column. Indices are zero-based throughout the library.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::factored::{as_univariate, rational_roots};
use crate::lattice::{hermite_normal_form, rational_kernel, solve_integer, IVec};
use crate::matrix::Matrix;
use crate::poly::{int, rat, Monomial, Poly, PolyError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("shift index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("alpha must have at least one row and one column")]
    EmptySystem,
    #[error("repeated index {0} in index set")]
    RepeatedIndex(usize),
    #[error("polynomial has {got} variables, system has {expected}")]
    VarCountMismatch { expected: usize, got: usize },
    #[error("orbit generator must be monic and nonconstant: {0}")]
    BadGenerator(String),
    #[error("generator {0} is visibly reducible: {1}")]
    Reducible(String, String),
    #[error("lattice vector entry does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Direction of a half step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ShiftSystem {
    alpha: Matrix,
}

impl ShiftSystem {
    pub fn new(alpha: Matrix) -> Result<Self, ShiftError> {
        if alpha.nrows() == 0 || alpha.ncols() == 0 {
            return Err(ShiftError::EmptySystem);
        }
        Ok(ShiftSystem { alpha })
    }

    /// Builds a system from integer rows (row `j` holds `alpha_{j,1..n}`).
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, ShiftError> {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn m(&self) -> usize {
        self.alpha.nrows()
    }

    pub fn n(&self) -> usize {
        self.alpha.ncols()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// Column `alpha_i`.
    pub fn column(&self, i: usize) -> Vec<Rational> {
        self.alpha.column(i)
    }

    pub fn check_index(&self, i: usize) -> Result<(), ShiftError> {
        if i < self.n() {
            Ok(())
        } else {
            Err(ShiftError::IndexOutOfRange { index: i, n: self.n() })
        }
    }

    fn check_poly(&self, p: &Poly) -> Result<(), ShiftError> {
        if p.nvars() == self.m() {
            Ok(())
        } else {
            Err(ShiftError::VarCountMismatch { expected: self.m(), got: p.nvars() })
        }
    }

    /// Validates an index set: in range and without repeats.
    pub fn check_index_set(&self, s: &[usize]) -> Result<(), ShiftError> {
        for (pos, &i) in s.iter().enumerate() {
            self.check_index(i)?;
            if s[..pos].contains(&i) {
                return Err(ShiftError::RepeatedIndex(i));
            }
        }
        Ok(())
    }

    /// `sum_t c_t alpha_{s_t}` for rational weights.
    pub fn combination(&self, s: &[usize], c: &[Rational]) -> Vec<Rational> {
        assert_eq!(s.len(), c.len());
        let mut t = vec![Rational::zero(); self.m()];
        for (&i, ci) in s.iter().zip(c) {
            if ci.is_zero() {
                continue;
            }
            for (j, tj) in t.iter_mut().enumerate() {
                *tj += self.alpha.get(j, i) * ci;
            }
        }
        t
    }

    /// `sigma_i^{+-1/2}(p) = p(u -+ alpha_i / 2)`.
    pub fn half_shift(&self, i: usize, sign: Sign, p: &Poly) -> Result<Poly, ShiftError> {
        self.check_index(i)?;
        self.check_poly(p)?;
        let h = match sign {
            Sign::Plus => rat(1, 2),
            Sign::Minus => rat(-1, 2),
        };
        Ok(p.shift(&self.combination(&[i], &[h])))
    }

    /// `sigma_i^e(p)` for a rational exponent `e`.
    pub fn sigma_pow(&self, i: usize, e: &Rational, p: &Poly) -> Result<Poly, ShiftError> {
        self.check_index(i)?;
        self.check_poly(p)?;
        Ok(p.shift(&self.combination(&[i], std::slice::from_ref(e))))
    }

    /// `sigma_i(p)`.
    pub fn sigma(&self, i: usize, p: &Poly) -> Result<Poly, ShiftError> {
        self.sigma_pow(i, &int(1), p)
    }

    /// The action of `k in Z^n`: `sigma_1^{k_1} ... sigma_n^{k_n}(p)`.
    pub fn zn_action(&self, k: &[i64], p: &Poly) -> Result<Poly, ShiftError> {
        if k.len() != self.n() {
            return Err(ShiftError::LengthMismatch { expected: self.n(), got: k.len() });
        }
        let all: Vec<usize> = (0..self.n()).collect();
        self.zn_action_on(&all, k, p)
    }

    /// The action of `k in Z^S` through the columns indexed by `s`.
    pub fn zn_action_on(&self, s: &[usize], k: &[i64], p: &Poly) -> Result<Poly, ShiftError> {
        self.check_index_set(s)?;
        self.check_poly(p)?;
        if k.len() != s.len() {
            return Err(ShiftError::LengthMismatch { expected: s.len(), got: k.len() });
        }
        let c: Vec<Rational> = k.iter().map(|&x| int(x)).collect();
        Ok(p.shift(&self.combination(s, &c)))
    }

    /// `[<grad q, alpha_i>]` for `i` in `s`.
    fn gradient_pairings(&self, q: &Poly, s: &[usize]) -> Vec<Poly> {
        s.iter().map(|&i| q.directional_derivative(&self.column(i))).collect()
    }
}

impl fmt::Display for ShiftSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha = {}", self.alpha)
    }
}

/// Whether the shift by `beta` fixes `q`, decided by `<grad q, beta> == 0`.
pub fn is_fixed_by_shift(q: &Poly, beta: &[Rational]) -> Result<bool, ShiftError> {
    if beta.len() != q.nvars() {
        return Err(ShiftError::LengthMismatch { expected: q.nvars(), got: beta.len() });
    }
    Ok(q.directional_derivative(beta).is_zero())
}

/// A saturated sublattice of `Z^S`, basis in row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StabilizerLattice {
    ambient_rank: usize,
    basis: Vec<Vec<i64>>,
}

fn to_i64(v: &IVec) -> Result<Vec<i64>, ShiftError> {
    v.iter().map(|x| x.to_i64().ok_or(ShiftError::Overflow)).collect()
}

impl StabilizerLattice {
    /// Canonicalizes an arbitrary generating set (saturation is the caller's claim).
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<i64>]) -> Self {
        let rows: Vec<IVec> = gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let basis = hermite_normal_form(rows).iter().map(|v| to_i64(v).expect("entries come from i64")).collect();
        StabilizerLattice { ambient_rank, basis }
    }

    pub fn full(ambient_rank: usize) -> Self {
        let gens: Vec<Vec<i64>> =
            (0..ambient_rank).map(|i| (0..ambient_rank).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_generators(ambient_rank, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        if self.basis.is_empty() {
            return v.iter().all(|&x| x == 0);
        }
        // v = sum c_r b_r, i.e. B^T c = v
        let rows: Vec<Vec<Rational>> =
            (0..self.ambient_rank).map(|j| self.basis.iter().map(|b| int(b[j])).collect()).collect();
        let rhs: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        solve_integer(&rows, &rhs, self.basis.len()).is_some()
    }
}

impl fmt::Display for StabilizerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .basis
            .iter()
            .map(|v| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", vs.join(", "))
    }
}

/// Integer kernel of `e_t -> <grad q, alpha_{s_t}>`, i.e. the `k in Z^S` whose
/// action fixes `q`.
pub fn stabilizer_lattice(sys: &ShiftSystem, q: &Poly, s: &[usize]) -> Result<StabilizerLattice, ShiftError> {
    sys.check_index_set(s)?;
    sys.check_poly(q)?;
    let pairings = sys.gradient_pairings(q, s);
    let basis = coefficient_kernel(&pairings).iter().map(to_i64).collect::<Result<Vec<_>, _>>()?;
    Ok(StabilizerLattice { ambient_rank: s.len(), basis })
}

/// Rows indexed by the monomials occurring in any of the polys, columns by
/// the polys.
fn coefficient_rows(polys: &[Poly]) -> (Vec<Monomial>, Vec<Vec<Rational>>) {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows = monos.iter().map(|m| polys.iter().map(|p| p.coeff(m)).collect()).collect();
    (monos, rows)
}

fn coefficient_kernel(polys: &[Poly]) -> Vec<IVec> {
    let (_, rows) = coefficient_rows(polys);
    rational_kernel(&rows, polys.len())
}

/// An orbit `Z^S . q0` with its stabilizer.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrbitId {
    generator: Poly,
    index_set: Vec<usize>,
    stabilizer: StabilizerLattice,
}

impl OrbitId {
    /// Requires a monic nonconstant generator; irreducibility is the caller's claim.
    pub fn new(sys: &ShiftSystem, generator: Poly, index_set: Vec<usize>) -> Result<Self, ShiftError> {
        if generator.is_constant() || !generator.is_monic() {
            return Err(ShiftError::BadGenerator(generator.to_string()));
        }
        let stabilizer = stabilizer_lattice(sys, &generator, &index_set)?;
        Ok(OrbitId { generator, index_set, stabilizer })
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    pub fn stabilizer(&self) -> &StabilizerLattice {
        &self.stabilizer
    }

    /// [`same_orbit`] from the generator, reusing the cached stabilizer.
    pub fn locate(&self, sys: &ShiftSystem, q2: &Poly) -> Result<OrbitRelation, ShiftError> {
        decide(sys, &self.generator, q2, &self.index_set, Some(&self.stabilizer), SearchLimits::default())
    }

    /// The same orbit seen from another index set.
    pub fn restrict(&self, sys: &ShiftSystem, index_set: Vec<usize>) -> Result<OrbitId, ShiftError> {
        OrbitId::new(sys, self.generator.clone(), index_set)
    }
}

/// Outcome of an orbit membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitRelation {
    /// `k in Z^S` with `k . q = q2`, unique modulo the stabilizer.
    Shift(Vec<i64>),
    NotInOrbit,
    /// The bounded fallback search found nothing; membership is unresolved.
    Undecided,
}

/// Limits of the fallback search in [`same_orbit_with`].
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Maximum `|k|_inf` of candidate shifts.
    pub radius: i64,
    /// Maximum number of candidates tested.
    pub max_candidates: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { radius: 64, max_candidates: 200_000 }
    }
}

pub fn same_orbit(sys: &ShiftSystem, q: &Poly, q2: &Poly, s: &[usize]) -> Result<OrbitRelation, ShiftError> {
    same_orbit_with(sys, q, q2, s, SearchLimits::default())
}

/// Decides whether some `k in Z^S` maps `q` to `q2`.
///
/// Shifts preserve the leading form `L` and change the next homogeneous
/// component by `-<grad L, t>`, so any valid `k` solves the integer linear
/// system `sum_t k_t <grad L, alpha_{s_t}> = q_{d-1} - q2_{d-1}`. When that
/// system's kernel coincides with the stabilizer, the solution set is a
/// single stabilizer coset and one substitution decides membership.
pub fn same_orbit_with(
    sys: &ShiftSystem,
    q: &Poly,
    q2: &Poly,
    s: &[usize],
    limits: SearchLimits,
) -> Result<OrbitRelation, ShiftError> {
    decide(sys, q, q2, s, None, limits)
}

fn decide(
    sys: &ShiftSystem,
    q: &Poly,
    q2: &Poly,
    s: &[usize],
    stab: Option<&StabilizerLattice>,
    limits: SearchLimits,
) -> Result<OrbitRelation, ShiftError> {
    sys.check_index_set(s)?;
    sys.check_poly(q)?;
    sys.check_poly(q2)?;
    if q == q2 {
        return Ok(OrbitRelation::Shift(vec![0; s.len()]));
    }
    let (Some(d), Some(d2)) = (q.degree(), q2.degree()) else {
        return Ok(OrbitRelation::NotInOrbit);
    };
    if d != d2 || d == 0 || q.leading_form() != q2.leading_form() {
        return Ok(OrbitRelation::NotInOrbit);
    }
    let lead = q.leading_form();
    let pairings = sys.gradient_pairings(&lead, s);
    let target = &q.homogeneous_part(d - 1) - &q2.homogeneous_part(d - 1);
    let mut all = pairings.clone();
    all.push(target.clone());
    let (_, rows) = coefficient_rows(&all);
    let lhs: Vec<Vec<Rational>> = rows.iter().map(|r| r[..s.len()].to_vec()).collect();
    let rhs: Vec<Rational> = rows.iter().map(|r| r[s.len()].clone()).collect();
    let Some((k0, kernel)) = solve_integer(&lhs, &rhs, s.len()) else {
        return Ok(OrbitRelation::NotInOrbit);
    };
    let k0 = to_i64(&k0)?;
    let stab_rank = match stab {
        Some(l) => l.rank(),
        None => stabilizer_lattice(sys, q, s)?.rank(),
    };
    if kernel.len() == stab_rank {
        return Ok(if sys.zn_action_on(s, &k0, q)? == *q2 {
            OrbitRelation::Shift(k0)
        } else {
            OrbitRelation::NotInOrbit
        });
    }
    let kernel: Vec<Vec<i64>> = kernel.iter().map(to_i64).collect::<Result<_, _>>()?;
    shell_search(sys, q, q2, s, &k0, &kernel, limits)
}

/// Tests `k0 + sum c_r w_r` for growing `|c|_inf`, screening each candidate by
/// one exact evaluation before the full substitution.
fn shell_search(
    sys: &ShiftSystem,
    q: &Poly,
    q2: &Poly,
    s: &[usize],
    k0: &[i64],
    kernel: &[Vec<i64>],
    limits: SearchLimits,
) -> Result<OrbitRelation, ShiftError> {
    let m = sys.m();
    let point: Vec<Rational> = (0..m).map(|j| rat(2 * j as i64 + 3, 7)).collect();
    let target = q2.eval(&point);
    let dim = kernel.len();
    let mut tested = 0usize;
    for radius in 0..=limits.radius {
        let mut c = vec![-radius; dim];
        loop {
            if c.iter().any(|x| x.abs() == radius) {
                let k: Vec<i64> =
                    (0..s.len()).map(|t| k0[t] + kernel.iter().zip(&c).map(|(w, ci)| w[t] * ci).sum::<i64>()).collect();
                if k.iter().all(|x| x.abs() <= limits.radius) {
                    tested += 1;
                    if tested > limits.max_candidates {
                        return Ok(OrbitRelation::Undecided);
                    }
                    let c_rat: Vec<Rational> = k.iter().map(|&x| int(x)).collect();
                    let t = sys.combination(s, &c_rat);
                    let moved: Vec<Rational> = point.iter().zip(&t).map(|(a, b)| a - b).collect();
                    if q.eval(&moved) == target && sys.zn_action_on(s, &k, q)? == *q2 {
                        return Ok(OrbitRelation::Shift(k));
                    }
                }
            }
            let mut pos = 0;
            loop {
                if pos == dim {
                    break;
                }
                if c[pos] < radius {
                    c[pos] += 1;
                    break;
                }
                c[pos] = -radius;
                pos += 1;
            }
            if pos == dim {
                break;
            }
        }
    }
    Ok(OrbitRelation::Undecided)
}

/// Rejects generators that are visibly reducible: a nontrivial monomial
/// content, or a univariate polynomial of degree at least 2 with a rational root.
pub fn check_plausibly_irreducible(q: &Poly) -> Result<(), ShiftError> {
    if q.is_constant() {
        return Err(ShiftError::BadGenerator(q.to_string()));
    }
    for k in 0..q.nvars() {
        let content = q.terms().map(|(m, _)| m.exponents()[k]).min().unwrap_or(0);
        if content > 0 && q.num_terms() > 1 || content > 1 {
            return Err(ShiftError::Reducible(q.to_string(), format!("divisible by u{}", k + 1)));
        }
    }
    if let Some((k, coeffs)) = as_univariate(q) {
        if coeffs.len() > 2 {
            if let Some(roots) = rational_roots(&coeffs) {
                if let Some(r) = roots.first() {
                    return Err(ShiftError::Reducible(
                        q.to_string(),
                        format!("has the rational root u{} = {}", k + 1, crate::poly::fmt_rational(r)),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn cubic_sys() -> ShiftSystem {
        ShiftSystem::from_i64(&[&[2, -3, 0, 0], &[4, -5, 1, -3], &[-2, 2, -1, 3]]).unwrap()
    }

    fn gl3() -> ShiftSystem {
        ShiftSystem::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]).unwrap()
    }

    fn f() -> Poly {
        parse_poly("(u2+u3)^2 - (u1^3 - u1 + 1)", 3).unwrap()
    }

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn half_shift_examples() {
        assert_eq!(gl3().half_shift(0, Sign::Plus, &p("u1 - 1", 2)).unwrap(), p("u1 - 1/2", 2));
        assert_eq!(cubic_sys().half_shift(0, Sign::Plus, &f()).unwrap(), p("(u2+u3-1)^2 - ((u1-1)^3 - u1 + 2)", 3));
        let g = cubic_sys().half_shift(1, Sign::Minus, &f()).unwrap();
        assert_eq!(cubic_sys().half_shift(1, Sign::Plus, &g).unwrap(), f());
        assert!(cubic_sys().half_shift(4, Sign::Plus, &f()).is_err());
    }

    #[test]
    fn zn_action_examples() {
        assert_eq!(cubic_sys().zn_action(&[3, 2, 0, 0], &f()).unwrap(), f());
        assert_eq!(cubic_sys().zn_action(&[0, 0, 0, 0], &f()).unwrap(), f());
        assert_eq!(gl3().zn_action(&[1, 1, 0], &p("u1", 2)).unwrap(), p("u1", 2));
        assert!(gl3().zn_action(&[1, 1], &p("u1", 2)).is_err());
    }

    #[test]
    fn fixed_by_shift_examples() {
        let a3 = cubic_sys().column(2);
        let a1 = cubic_sys().column(0);
        assert!(is_fixed_by_shift(&f(), &a3).unwrap());
        assert!(!is_fixed_by_shift(&f(), &a1).unwrap());
        assert_ne!(f().shift(&a1), f());
        assert!(is_fixed_by_shift(&f(), &[int(0), int(0), int(0)]).unwrap());
    }

    #[test]
    fn stabilizer_examples() {
        let l12 = stabilizer_lattice(&cubic_sys(), &f(), &[0, 1]).unwrap();
        assert_eq!(l12.basis(), &[vec![3, 2]]);
        let l34 = stabilizer_lattice(&cubic_sys(), &f(), &[2, 3]).unwrap();
        assert_eq!(l34, StabilizerLattice::full(2));
        let lu = stabilizer_lattice(&gl3(), &p("u1", 2), &[0, 1]).unwrap();
        assert_eq!(lu.basis(), &[vec![1, 1]]);
        assert!(l12.contains(&[6, 4]));
        assert!(!l12.contains(&[1, 0]));
    }

    #[test]
    fn stabilizer_is_primitive() {
        // (1, b) and (2, b) fix nothing for small b: the generator (3, 2) is minimal.
        let sys = cubic_sys();
        for a in 1..=2 {
            for b in -6..=6 {
                assert_ne!(sys.zn_action_on(&[0, 1], &[a, b], &f()).unwrap(), f());
            }
        }
    }

    #[test]
    fn same_orbit_examples() {
        assert_eq!(same_orbit(&cubic_sys(), &f(), &f(), &[0, 1]).unwrap(), OrbitRelation::Shift(vec![0, 0]));
        let g = cubic_sys().zn_action(&[3, 2, 0, 0], &f()).unwrap();
        assert_eq!(same_orbit(&cubic_sys(), &f(), &g, &[0, 1]).unwrap(), OrbitRelation::Shift(vec![0, 0]));
        let r = same_orbit(&gl3(), &p("u1", 2), &p("u1 + 1", 2), &[0, 1]).unwrap();
        let OrbitRelation::Shift(k) = r else { panic!("{r:?}") };
        assert_eq!(gl3().zn_action_on(&[0, 1], &k, &p("u1", 2)).unwrap(), p("u1 + 1", 2));
        assert!((k[0] - 1 - k[1]) == 0);
    }

    #[test]
    fn same_orbit_rejects() {
        assert_eq!(same_orbit(&gl3(), &p("u1", 2), &p("u2", 2), &[0, 1]).unwrap(), OrbitRelation::NotInOrbit);
        assert_eq!(same_orbit(&gl3(), &p("u1", 2), &p("u1 + 1/2", 2), &[0, 1]).unwrap(), OrbitRelation::NotInOrbit);
        assert_eq!(
            same_orbit(&cubic_sys(), &f(), &(&f() + &Poly::constant(3, rat(1, 2))), &[0, 1]).unwrap(),
            OrbitRelation::NotInOrbit
        );
    }

    #[test]
    fn same_orbit_degenerate_falls_back_to_search() {
        // q = u1^3 + u2: the leading form only sees the u1 direction.
        let sys = ShiftSystem::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let q = p("u1^3 + u2", 2);
        let q2 = sys.zn_action(&[2, -5], &q).unwrap();
        assert_eq!(same_orbit(&sys, &q, &q2, &[0, 1]).unwrap(), OrbitRelation::Shift(vec![2, -5]));
        let tight = SearchLimits { radius: 3, max_candidates: 1000 };
        assert_eq!(same_orbit_with(&sys, &q, &q2, &[0, 1], tight).unwrap(), OrbitRelation::Undecided);
    }

    #[test]
    fn plausibility_helper() {
        assert!(check_plausibly_irreducible(&f()).is_ok());
        assert!(check_plausibly_irreducible(&p("u1", 2)).is_ok());
        assert!(check_plausibly_irreducible(&p("u1*u2 + u1", 2)).is_err());
        assert!(check_plausibly_irreducible(&p("u1^2 - 1/4", 2)).is_err());
        assert!(check_plausibly_irreducible(&p("u1^2 + 1", 2)).is_ok());
        assert!(check_plausibly_irreducible(&p("3", 2)).is_err());
    }
}
