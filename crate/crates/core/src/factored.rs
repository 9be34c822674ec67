//! Polynomials carried as `unit * prod factor^mult`, plus a narrow factoring
//! helper for univariate inputs and products of univariate pieces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{fmt_rational, int, Monomial, Poly, PolyError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the zero polynomial has no factorization")]
    Zero,
    #[error("unit must be nonzero")]
    ZeroUnit,
    #[error("factor {0} is not monic")]
    NotMonic(String),
    #[error("factor {0} is constant")]
    ConstantFactor(String),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("variable count mismatch")]
    VarCountMismatch,
    #[error("cannot factor {0}: only univariate pieces and products of univariate pieces are supported")]
    Unsupported(String),
    #[error("coefficients of {0} are too large for rational root search")]
    TooLarge(String),
}

/// `unit * prod factor^mult` with monic nonconstant, pairwise distinct factors
/// kept in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactoredPoly {
    nvars: usize,
    unit: Rational,
    factors: Vec<(Poly, u32)>,
}

impl FactoredPoly {
    pub fn one(nvars: usize) -> Self {
        FactoredPoly { nvars, unit: Rational::one(), factors: Vec::new() }
    }

    /// Validates and canonicalizes; repeated factors are merged.
    pub fn new(nvars: usize, unit: Rational, factors: Vec<(Poly, u32)>) -> Result<Self, FactorError> {
        if unit.is_zero() {
            return Err(FactorError::ZeroUnit);
        }
        let mut merged: BTreeMap<Poly, u32> = BTreeMap::new();
        for (f, mult) in factors {
            if f.nvars() != nvars {
                return Err(FactorError::VarCountMismatch);
            }
            if mult == 0 {
                return Err(FactorError::ZeroMultiplicity);
            }
            if f.is_constant() {
                return Err(FactorError::ConstantFactor(f.to_string()));
            }
            if !f.is_monic() {
                return Err(FactorError::NotMonic(f.to_string()));
            }
            *merged.entry(f).or_insert(0) += mult;
        }
        Ok(FactoredPoly { nvars, unit, factors: merged.into_iter().collect() })
    }

    /// Wraps `p` as `lc(p) * (p / lc(p))`, a single factor; no factoring is attempted.
    pub fn from_poly(p: &Poly) -> Result<Self, FactorError> {
        let (lc, monic) = p.make_monic().map_err(|_| FactorError::Zero)?;
        if monic.is_constant() {
            Ok(FactoredPoly { nvars: p.nvars(), unit: lc, factors: Vec::new() })
        } else {
            Ok(FactoredPoly { nvars: p.nvars(), unit: lc, factors: vec![(monic, 1)] })
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn unit(&self) -> &Rational {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn is_monic(&self) -> bool {
        self.unit.is_one()
    }

    /// True when the represented polynomial is a constant.
    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.nvars, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum()
    }

    /// Applies a shift to every factor; monic factors stay monic.
    pub fn shift(&self, t: &[Rational]) -> Result<Self, PolyError> {
        let mut out = Vec::with_capacity(self.factors.len());
        for (f, m) in &self.factors {
            out.push((f.checked_shift(t)?, *m));
        }
        Ok(FactoredPoly::new(self.nvars, self.unit.clone(), out).expect("shift keeps factors monic"))
    }

    pub fn mul(&self, other: &FactoredPoly) -> FactoredPoly {
        assert_eq!(self.nvars, other.nvars);
        let factors = self.factors.iter().chain(&other.factors).cloned().collect();
        FactoredPoly::new(self.nvars, &self.unit * &other.unit, factors).expect("valid factors")
    }

    /// Multiset of factors with multiplicities; handy for exact comparisons.
    pub fn factor_map(&self) -> BTreeMap<Poly, u32> {
        self.factors.iter().cloned().collect()
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(fmt_rational(&self.unit));
        }
        for (p, m) in &self.factors {
            if *m == 1 {
                parts.push(format!("({p})"));
            } else {
                parts.push(format!("({p})^{m}"));
            }
        }
        f.write_str(&parts.join("*"))
    }
}

/// If `p` involves at most one variable, its index and dense coefficients
/// (constant term first). Constants report variable 0.
pub fn as_univariate(p: &Poly) -> Option<(usize, Vec<Rational>)> {
    let vars = p.variables();
    if vars.len() > 1 {
        return None;
    }
    let k = vars.first().copied().unwrap_or(0);
    let d = p.degree_in(k) as usize;
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponents()[k] as usize] = c.clone();
    }
    Some((k, coeffs))
}

fn univariate_poly(nvars: usize, k: usize, coeffs: &[Rational]) -> Poly {
    Poly::from_terms(
        nvars,
        coeffs.iter().enumerate().map(|(e, c)| {
            let mut ex = vec![0; nvars];
            ex[k] = e as u32;
            (Monomial::new(ex), c.clone())
        }),
    )
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(x - r)`, assuming `r` is a root.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let d = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); d];
    let mut carry = Rational::zero();
    for i in (1..=d).rev() {
        carry = &carry * r + &coeffs[i];
        out[i - 1] = carry.clone();
    }
    out
}

fn integer_coeffs(coeffs: &[Rational]) -> Vec<BigInt> {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect()
}

/// Rational roots of a univariate polynomial, with multiplicity, in ascending
/// order. Returns `None` when coefficients are too large for the divisor search.
pub fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        roots.push(Rational::zero());
        c.remove(0);
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    let ints = integer_coeffs(&c);
    let lead = divisors(ints.last().unwrap())?;
    let tail = divisors(&ints[0])?;
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &tail {
        for q in &lead {
            let r = Rational::new(BigInt::from(*p), BigInt::from(*q));
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        while c.len() > 1 && horner(&c, &r).is_zero() {
            c = deflate(&c, &r);
            roots.push(r.clone());
        }
    }
    roots.sort();
    Some(roots)
}

/// Splits a primitive integer quartic without rational roots into two integer
/// quadratics, if possible.
fn split_quartic(c: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    // (a x^2 + b x + cc)(d x^2 + e x + f)
    let (c0, c1, c2, c3, c4) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let lead = divisors(c4)?;
    let tail = divisors(c0)?;
    for &a in &lead {
        let a = BigInt::from(a);
        let d = c4 / &a;
        for &cc in &tail {
            for s in [1i64, -1] {
                let cc = BigInt::from(cc) * s;
                let f = c0 / &cc;
                let det = &d * &cc - &a * &f;
                let mut be: Vec<(BigInt, BigInt)> = Vec::new();
                if !det.is_zero() {
                    // d b + a e = c3 ; f b + cc e = c1
                    let nb = c3 * &cc - &a * c1;
                    let ne = &d * c1 - &f * c3;
                    if (&nb % &det).is_zero() && (&ne % &det).is_zero() {
                        be.push((nb / &det, ne / &det));
                    }
                } else {
                    // e = (c3 - d b) / a and b e = K give d b^2 - c3 b + a K = 0
                    let k = c2 - &a * &f - &cc * &d;
                    let quad = [
                        Rational::from_integer(&a * &k),
                        Rational::from_integer(-c3.clone()),
                        Rational::from_integer(d.clone()),
                    ];
                    for b in rational_roots(&quad)? {
                        if b.is_integer() {
                            let b = b.to_integer();
                            let num = c3 - &d * &b;
                            if (&num % &a).is_zero() {
                                be.push((b, num / &a));
                            }
                        }
                    }
                }
                for (b, e) in be {
                    if &a * &f + &b * &e + &cc * &d == *c2 && &b * &f + &cc * &e == *c1 && &d * &b + &a * &e == *c3 {
                        return Some((vec![cc.clone(), b, a.clone()], vec![f.clone(), e, d.clone()]));
                    }
                }
            }
        }
    }
    None
}

/// Factors a univariate polynomial in variable `k` into monic irreducibles:
/// all rational linear factors, and a remaining cofactor of degree at most 4.
fn factor_univariate(
    nvars: usize,
    k: usize,
    coeffs: &[Rational],
    out: &mut Vec<(Poly, u32)>,
) -> Result<Rational, FactorError> {
    let p = univariate_poly(nvars, k, coeffs);
    let roots = rational_roots(coeffs).ok_or_else(|| FactorError::TooLarge(p.to_string()))?;
    let mut rest = coeffs.to_vec();
    while rest.len() > 1 && rest.last().is_some_and(Zero::is_zero) {
        rest.pop();
    }
    for r in &roots {
        rest = deflate(&rest, r);
        out.push((&Poly::var(nvars, k) - &Poly::constant(nvars, r.clone()), 1));
    }
    let unit = rest.last().cloned().unwrap();
    let monic: Vec<Rational> = rest.iter().map(|c| c / &unit).collect();
    match monic.len() - 1 {
        0 => {}
        1..=3 => out.push((univariate_poly(nvars, k, &monic), 1)),
        4 => {
            let ints = integer_coeffs(&monic);
            match split_quartic(&ints) {
                Some((a, b)) => {
                    for q in [a, b] {
                        let q: Vec<Rational> = q.into_iter().map(Rational::from_integer).collect();
                        let lc = q[2].clone();
                        let q: Vec<Rational> = q.iter().map(|c| c / &lc).collect();
                        out.push((univariate_poly(nvars, k, &q), 1));
                    }
                }
                None => out.push((univariate_poly(nvars, k, &monic), 1)),
            }
        }
        _ => return Err(FactorError::Unsupported(p.to_string())),
    }
    Ok(unit)
}

/// Factors `p` when it is univariate (rational roots plus a cofactor of degree
/// at most 4) or a product of univariate polynomials in distinct variables,
/// which covers the multiquiver family.
pub fn factor(p: &Poly) -> Result<FactoredPoly, FactorError> {
    if p.is_zero() {
        return Err(FactorError::Zero);
    }
    let n = p.nvars();
    if p.is_constant() {
        return FactoredPoly::new(n, p.constant_term(), Vec::new());
    }
    let vars = p.variables();
    let mut factors = Vec::new();
    if vars.len() == 1 {
        let (k, coeffs) = as_univariate(p).unwrap();
        let unit = factor_univariate(n, k, &coeffs, &mut factors)?;
        return FactoredPoly::new(n, unit, factors);
    }
    let point = (0..8)
        .map(|s| vec![int(s as i64 + 2); n])
        .find(|pt| !p.eval(pt).is_zero())
        .ok_or_else(|| FactorError::Unsupported(p.to_string()))?;
    let value = p.eval(&point);
    let mut slices = Vec::new();
    for &k in &vars {
        let images: Vec<Poly> =
            (0..n).map(|j| if j == k { Poly::var(n, j) } else { Poly::constant(n, point[j].clone()) }).collect();
        slices.push((k, p.substitute(&images)));
    }
    let mut prod = Poly::one(n);
    for (_, s) in &slices {
        prod = &prod * s;
    }
    let scale = num_traits::pow(value.clone(), slices.len() - 1);
    if prod != p.scale(&scale) {
        return Err(FactorError::Unsupported(p.to_string()));
    }
    let mut unit = scale.recip();
    for (k, s) in &slices {
        let (_, coeffs) = as_univariate(s).unwrap();
        unit *= factor_univariate(n, *k, &coeffs, &mut factors)?;
    }
    FactoredPoly::new(n, unit, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::rat;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn roots_of_small_polys() {
        // 4x^2 - 1
        assert_eq!(rational_roots(&[int(-1), int(0), int(4)]).unwrap(), vec![rat(-1, 2), rat(1, 2)]);
        // x^2 + 1
        assert!(rational_roots(&[int(1), int(0), int(1)]).unwrap().is_empty());
        // x^3 (x - 2)
        assert_eq!(
            rational_roots(&[int(0), int(0), int(0), int(-2), int(1)]).unwrap(),
            vec![int(0), int(0), int(0), int(2)]
        );
    }

    #[test]
    fn factors_multiquiver_entries() {
        let f = factor(&p("(u1-1)*(u1-2)*u2*(u2+1)", 2)).unwrap();
        assert!(f.is_monic());
        assert_eq!(f.factors().len(), 4);
        assert_eq!(f.expand(), p("(u1-1)*(u1-2)*u2*(u2+1)", 2));
    }

    #[test]
    fn factors_scaled_products() {
        let q = p("3*(u1-1/2)^2*(u3+1/2)", 3);
        let f = factor(&q).unwrap();
        assert_eq!(f.unit(), &int(3));
        assert_eq!(f.factor_map().values().copied().collect::<Vec<_>>().iter().sum::<u32>(), 3);
        assert_eq!(f.expand(), q);
    }

    #[test]
    fn splits_quartic_into_quadratics() {
        let q = p("(u1^2+1)*(u1^2+u1+2)", 1);
        let f = factor(&q).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.expand(), q);
        let irreducible = p("u1^4 + 1", 1);
        assert_eq!(factor(&irreducible).unwrap().factors().len(), 1);
    }

    #[test]
    fn rejects_unsupported() {
        assert!(matches!(factor(&p("u1*u2 + 1", 2)), Err(FactorError::Unsupported(_))));
        assert!(matches!(factor(&p("u1^5 + u1 + 1", 1)), Err(FactorError::Unsupported(_))));
    }

    #[test]
    fn factored_poly_invariants() {
        let x = p("u1 - 1", 1);
        assert!(FactoredPoly::new(1, int(0), vec![]).is_err());
        assert!(FactoredPoly::new(1, int(1), vec![(x.scale(&int(2)), 1)]).is_err());
        let merged = FactoredPoly::new(1, int(1), vec![(x.clone(), 1), (x.clone(), 2)]).unwrap();
        assert_eq!(merged.factors(), &[(x.clone(), 3)]);
        assert_eq!(merged.to_string(), "(u1 - 1)^3");
        assert_eq!(FactoredPoly::one(1).to_string(), "1");
    }
}
