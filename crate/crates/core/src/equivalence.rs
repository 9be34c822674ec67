//! Equivalence of pairs `(alpha, p)` under a supplied ring automorphism, and
//! the linear action of `GL_m` on pairs.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::consistency::SolutionTuple;
use crate::factored::FactoredPoly;
use crate::matrix::{Matrix, MatrixError};
use crate::poly::{int, Poly, Rational};
use crate::report::{CheckReport, Failure};
use crate::shift::{ShiftError, ShiftSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("expected {expected} images, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("image of u{} lives in the wrong ring", .0 + 1)]
    VarCount(usize),
    #[error("forward and inverse do not compose to the identity at u{}", .0 + 1)]
    NotInverse(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix must be {m}x{m}")]
    Shape { m: usize },
    #[error("pairs live over different rings (m = {0} and m' = {1})")]
    RingMismatch(usize, usize),
    #[error("signed permutation search is limited to m <= {max}, got {m}")]
    SearchTooLarge { m: usize, max: usize },
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

/// A ring automorphism of `Q[u_1, ..., u_m]` given by the images of the
/// variables under it and under its inverse. Both compositions are checked on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismSpec {
    forward: Vec<Poly>,
    inverse: Vec<Poly>,
}

impl AutomorphismSpec {
    pub fn new(forward: Vec<Poly>, inverse: Vec<Poly>) -> Result<Self, EquivalenceError> {
        let m = forward.len();
        if inverse.len() != m {
            return Err(EquivalenceError::WrongLength { expected: m, got: inverse.len() });
        }
        for (j, p) in forward.iter().chain(&inverse).enumerate() {
            if p.nvars() != m {
                return Err(EquivalenceError::VarCount(j % m.max(1)));
            }
        }
        for j in 0..m {
            let u = Poly::var(m, j);
            if inverse[j].substitute(&forward) != u || forward[j].substitute(&inverse) != u {
                return Err(EquivalenceError::NotInverse(j));
            }
        }
        Ok(AutomorphismSpec { forward, inverse })
    }

    pub fn identity(m: usize) -> Self {
        let vars: Vec<Poly> = (0..m).map(|j| Poly::var(m, j)).collect();
        AutomorphismSpec { forward: vars.clone(), inverse: vars }
    }

    /// `psi_g`, the substitution `u -> g^{-1} u`, so that
    /// `psi_g(p)(u) = p(g^{-1} u)` and `psi_g` intertwines `alpha` with `g alpha`.
    pub fn linear(g: &Matrix) -> Result<Self, EquivalenceError> {
        let m = g.nrows();
        if g.ncols() != m {
            return Err(EquivalenceError::Shape { m });
        }
        let ginv = g.inverse().map_err(|e| match e {
            MatrixError::Singular => EquivalenceError::Singular,
            _ => EquivalenceError::Shape { m },
        })?;
        Ok(AutomorphismSpec { forward: linear_images(&ginv), inverse: linear_images(g) })
    }

    pub fn m(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self) -> &[Poly] {
        &self.forward
    }

    pub fn inverse_images(&self) -> &[Poly] {
        &self.inverse
    }

    pub fn inverse(&self) -> AutomorphismSpec {
        AutomorphismSpec { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }
}

/// Images of `u_j` under `u -> a u`: `sum_k a_jk u_k`.
fn linear_images(a: &Matrix) -> Vec<Poly> {
    let m = a.nrows();
    (0..m)
        .map(|j| {
            (0..m).fold(Poly::zero(m), |acc, k| {
                if a.get(j, k).is_zero() {
                    acc
                } else {
                    &acc + &Poly::var(m, k).scale(a.get(j, k))
                }
            })
        })
        .collect()
}

/// `psi(p)`: substitutes `u_j -> forward_j`.
pub fn apply_substitution(psi: &AutomorphismSpec, p: &Poly) -> Result<Poly, EquivalenceError> {
    if p.nvars() != psi.m() {
        return Err(EquivalenceError::RingMismatch(p.nvars(), psi.m()));
    }
    Ok(p.substitute(&psi.forward))
}

/// Checks `psi . sigma_i = sigma'_i . psi` on every variable and
/// `psi(p_i) = c p'_i` for a nonzero rational `c`, found from the ratio of
/// leading coefficients and then confirmed exactly.
pub fn check_equivalence(psi: &AutomorphismSpec, a: &SolutionTuple, b: &SolutionTuple) -> CheckReport {
    let mut report = CheckReport::pass();
    let (sa, sb) = (a.sys(), b.sys());
    if sa.m() != psi.m() || sb.m() != psi.m() {
        report.push(Failure::Other(format!(
            "ring mismatch: psi acts on {} variables, pairs have m = {} and m' = {}",
            psi.m(),
            sa.m(),
            sb.m()
        )));
        return report;
    }
    if sa.n() != sb.n() {
        report.push(Failure::Other(format!("pairs have n = {} and n' = {}", sa.n(), sb.n())));
        return report;
    }
    let m = psi.m();
    for i in 0..sa.n() {
        let ai = sa.column(i);
        let bi = sb.column(i);
        for j in 0..m {
            let lhs = &psi.forward[j] - &Poly::constant(m, ai[j].clone());
            let rhs = psi.forward[j].shift(&bi);
            if lhs != rhs {
                report.push(Failure::Intertwining { shift: i, variable: j, difference: &lhs - &rhs });
            }
        }
    }
    for (i, (pa, pb)) in a.polys().iter().zip(b.polys()).enumerate() {
        let image = pa.substitute(&psi.forward);
        let proportional = match (image.leading_coeff(), pb.leading_coeff()) {
            (Ok(x), Ok(y)) => image == pb.scale(&(x / y)),
            _ => false,
        };
        if !proportional {
            report.push(Failure::NotProportional { entry: i, image, target: pb });
        }
    }
    report
}

/// `(g alpha, p')` with `p'_i(u) = p_i(g^{-1} u)`. Factors stay factored:
/// each image is made monic and its leading coefficient moves into the unit.
pub fn apply_linear(g: &Matrix, pair: &SolutionTuple) -> Result<SolutionTuple, EquivalenceError> {
    let sys = pair.sys();
    let m = sys.m();
    if g.nrows() != m || g.ncols() != m {
        return Err(EquivalenceError::Shape { m });
    }
    let psi = AutomorphismSpec::linear(g)?;
    let alpha = g.mul(sys.alpha()).map_err(|_| EquivalenceError::Shape { m })?;
    let new_sys = ShiftSystem::new(alpha)?;
    let entries = pair
        .entries()
        .iter()
        .map(|e| {
            let mut unit = e.unit().clone();
            let factors = e
                .factors()
                .iter()
                .map(|(f, mult)| {
                    let (c, monic) =
                        f.substitute(&psi.forward).make_monic().expect("automorphisms keep factors nonzero");
                    for _ in 0..*mult {
                        unit *= &c;
                    }
                    (monic, *mult)
                })
                .collect();
            FactoredPoly::new(m, unit, factors).expect("images of monic nonconstant factors")
        })
        .collect();
    Ok(SolutionTuple::new(new_sys, entries).expect("n entries"))
}

/// Largest `m` accepted by [`find_signed_permutation`] (`2^m m!` candidates).
pub const MAX_SEARCH_M: usize = 6;

/// Searches signed permutation matrices `g` with `check_equivalence(psi_g, a, b)`
/// passing, in a fixed order; returns the first one found.
pub fn find_signed_permutation(a: &SolutionTuple, b: &SolutionTuple) -> Result<Option<Matrix>, EquivalenceError> {
    let m = a.sys().m();
    if b.sys().m() != m {
        return Err(EquivalenceError::RingMismatch(m, b.sys().m()));
    }
    if m > MAX_SEARCH_M {
        return Err(EquivalenceError::SearchTooLarge { m, max: MAX_SEARCH_M });
    }
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        for signs in 0u32..(1 << m) {
            let mut g = Matrix::zeros(m, m);
            for (r, &c) in perm.iter().enumerate() {
                let s = if signs >> r & 1 == 1 { -int(1) } else { Rational::one() };
                g.set(r, c, s);
            }
            let psi = AutomorphismSpec::linear(&g)?;
            if g.mul(a.sys().alpha()).ok().as_ref() == Some(b.sys().alpha()) && check_equivalence(&psi, a, b).passed() {
                return Ok(Some(g));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
