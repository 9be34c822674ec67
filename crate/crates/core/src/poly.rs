//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Poly`] lives in `Q[u1, ..., um]` for a fixed variable count `m`. Terms
//! are kept in a `BTreeMap` keyed by [`Monomial`], whose derived ordering is
//! lexicographic with `u1 > u2 > ... > um`; the leading term is therefore the
//! last entry of the map. No stored coefficient is ever zero, so structural
//! equality is polynomial equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

/// Exponent vector of a monomial `u1^e1 * ... * um^em`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "u{}", k + 1)?;
            } else {
                write!(f, "u{}^{}", k + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in `Q[u1, ..., um]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    /// The variable `u_{k+1}` (indices are zero-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars, "variable index {k} out of range for {nvars} variables");
        Self::term(nvars, Monomial::var(nvars, k), Rational::one())
    }

    pub fn term(nvars: usize, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, merging repeats and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Poly { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&k| self.degree_in(k) > 0).collect()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Result<&Monomial, PolyError> {
        self.leading_term().map(|(m, _)| m).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Result<&Rational, PolyError> {
        self.leading_term().map(|(_, c)| c).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map(One::is_one).unwrap_or(false)
    }

    /// Splits `p` as `c * (p / c)` with `c` the lex leading coefficient.
    pub fn make_monic(&self) -> Result<(Rational, Poly), PolyError> {
        let c = self.leading_coeff()?.clone();
        let inv = c.recip();
        Ok((c, self.scale(&inv)))
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Top-degree homogeneous component. Shifts never change it.
    pub fn leading_form(&self) -> Poly {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let slot = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Poly { nvars: self.nvars, terms })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        Ok(mul_impl(self, other))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(u1 - t1, ..., um - tm)`. Panics if `t` has the wrong length.
    pub fn shift(&self, t: &[Rational]) -> Poly {
        self.checked_shift(t).expect("shift vector length")
    }

    pub fn checked_shift(&self, t: &[Rational]) -> Result<Poly, PolyError> {
        self.check_len(t.len())?;
        let mut cur = self.clone();
        for (k, tk) in t.iter().enumerate() {
            if !tk.is_zero() {
                cur = cur.shift_var(k, tk);
            }
        }
        Ok(cur)
    }

    /// Substitutes `u_k -> u_k - c` by a Taylor shift of each univariate slice.
    fn shift_var(&self, k: usize, c: &Rational) -> Poly {
        let mut slices: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (m, a) in &self.terms {
            let e = m.0[k] as usize;
            let mut rest = m.clone();
            rest.0[k] = 0;
            let slot = slices.entry(rest).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, Rational::zero());
            }
            slot[e] = a.clone();
        }
        let mut out = Vec::new();
        for (rest, coeffs) in slices {
            // Horner in x = u_k: b <- b * (x - c) + a_i, with b[j] the x^j coefficient.
            let d = coeffs.len() - 1;
            let mut b: Vec<Rational> = vec![Rational::zero(); d + 1];
            b[0] = coeffs[d].clone();
            for i in (0..d).rev() {
                let top = d - i;
                for j in (1..=top).rev() {
                    let lower = &b[j - 1] - &(&b[j] * c);
                    b[j] = lower;
                }
                b[0] = &coeffs[i] - &(&b[0] * c);
            }
            for (j, bj) in b.into_iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let mut m = rest.clone();
                m.0[k] = j as u32;
                out.push((m, bj));
            }
        }
        Poly::from_terms(self.nvars, out)
    }

    /// Formal partial derivative with respect to `u_{k+1}`.
    pub fn derivative(&self, k: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[k] > 0).map(|(m, c)| {
            let mut m2 = m.clone();
            let e = m2.0[k];
            m2.0[k] -= 1;
            (m2, c * int(e as i64))
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|k| self.derivative(k)).collect()
    }

    /// `sum_k dp/du_k * beta_k`.
    pub fn directional_derivative(&self, beta: &[Rational]) -> Poly {
        let terms = self.terms.iter().flat_map(|(m, c)| {
            (0..self.nvars).filter(move |&k| m.0[k] > 0 && !beta[k].is_zero()).map(move |k| {
                let mut m2 = m.clone();
                let e = m2.0[k];
                m2.0[k] -= 1;
                (m2, c * &beta[k] * int(e as i64))
            })
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.checked_eval(point).expect("evaluation point length")
    }

    pub fn checked_eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.check_len(point.len())?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[k].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Composition `p(images[0], ..., images[m-1])`; every image must share a
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map(Poly::nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|g| vec![Poly::one(g.nvars()), g.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e {
                    let next = &powers[k][powers[k].len() - 1] * &images[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / b`, or [`PolyError::NotDivisible`].
    ///
    /// Long division by a single divisor under lex order: a principal ideal's
    /// generator is a Groebner basis, so a non-divisible leading term of the
    /// running remainder proves a nonzero remainder.
    pub fn exact_div(&self, b: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(b)?;
        let (lm_b, lc_b) = b.leading_term().ok_or(PolyError::DivisionByZero)?;
        let inv_lc = lc_b.recip();
        let mut r = self.clone();
        let mut q = BTreeMap::new();
        while let Some((lm_r, lc_r)) = r.leading_term() {
            if !lm_b.divides(lm_r) {
                return Err(PolyError::NotDivisible);
            }
            let mono = lm_b.quotient_of(lm_r);
            let coeff = lc_r * &inv_lc;
            for (m, c) in &b.terms {
                let key = m.mul(&mono);
                let slot = r.terms.entry(key.clone()).or_insert_with(Rational::zero);
                *slot -= c * &coeff;
                if slot.is_zero() {
                    r.terms.remove(&key);
                }
            }
            q.insert(mono, coeff);
        }
        Ok(Poly { nvars: self.nvars, terms: q })
    }

    /// Least common multiple of the coefficient denominators, and the scaled
    /// integer numerators.
    fn integer_parts(&self) -> (BigInt, Vec<(&Monomial, BigInt)>) {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.terms.iter().map(|(m, c)| (m, c.numer() * (&den / c.denom()))).collect();
        (den, nums)
    }

    fn same_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VarCountMismatch { left: self.nvars, right: other.nvars })
        }
    }

    fn check_len(&self, len: usize) -> Result<(), PolyError> {
        if len == self.nvars {
            Ok(())
        } else {
            Err(PolyError::LengthMismatch { expected: self.nvars, got: len })
        }
    }
}

fn mul_impl(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars;
    if a.is_zero() || b.is_zero() {
        return Poly::zero(nvars);
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
        let (m0, c0) = single.terms.iter().next().unwrap();
        return Poly { nvars, terms: other.terms.iter().map(|(m, c)| (m.mul(m0), c * c0)).collect() };
    }
    let (da, na) = a.integer_parts();
    let (db, nb) = b.integer_parts();
    let den = Rational::from_integer(da * db);

    // Every output coefficient is a sum of at most min(|a|, |b|) products, so
    // this bound certifies that machine arithmetic cannot overflow.
    let max_a = na.iter().map(|(_, c)| c.abs()).max().unwrap();
    let max_b = nb.iter().map(|(_, c)| c.abs()).max().unwrap();
    let bound = max_a * max_b * BigInt::from(na.len().min(nb.len()));
    let sums: Vec<(Monomial, BigInt)> = if bound < BigInt::from(i128::MAX) {
        let na: Vec<(&Monomial, i128)> = na.iter().map(|(m, c)| (*m, c.to_i128().unwrap())).collect();
        let nb: Vec<(&Monomial, i128)> = nb.iter().map(|(m, c)| (*m, c.to_i128().unwrap())).collect();
        let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(na.len() * nb.len() / 4);
        for (ma, ca) in &na {
            for (mb, cb) in &nb {
                *acc.entry(ma.mul(mb)).or_insert(0) += ca * cb;
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, BigInt::from(c))).collect()
    } else {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &na {
            for (mb, cb) in &nb {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    };
    Poly { nvars, terms: sums.into_iter().map(|(m, c)| (m, Rational::from_integer(c) / &den)).collect() }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical text form, terms in descending lex order: `-u1^3 + u1 + 2*u2*u3 - 1/2`.
/// The output parses back to the same polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, k: usize) -> Poly {
        Poly::var(n, k - 1)
    }

    fn c(n: usize, a: i64, b: i64) -> Poly {
        Poly::constant(n, rat(a, b))
    }

    /// f(u1,u2,u3) = (u2+u3)^2 - (u1^3 - u1 + 1)
    fn f55() -> Poly {
        let s = &u(3, 2) + &u(3, 3);
        let cubic = &(&u(3, 1).pow(3) - &u(3, 1)) + &c(3, 1, 1);
        &s.pow(2) - &cubic
    }

    #[test]
    fn add_examples() {
        assert!((&u(1, 1) + &(-&u(1, 1))).is_zero());
        assert_eq!(&(&u(1, 1) - &c(1, 1, 2)) + &c(1, 1, 2), u(1, 1));
        let s = (&u(3, 2) + &u(3, 3)).pow(2);
        let cubic = &(&u(3, 1).pow(3) - &u(3, 1)) + &c(3, 1, 1);
        assert_eq!(&s + &(-&cubic), f55());
    }

    #[test]
    fn mul_examples() {
        let a = &u(1, 1) - &c(1, 1, 2);
        assert_eq!(&a * &Poly::one(1), a);
        let b = &u(1, 1) + &c(1, 1, 2);
        assert_eq!(&a * &b, &u(1, 1).pow(2) - &c(1, 1, 4));
    }

    #[test]
    fn mul_matches_pointwise_evaluation() {
        // (u1 - 1) * u1 * (u2 - 1), checked at a few rational points.
        let p = &(&(&u(2, 1) - &c(2, 1, 1)) * &u(2, 1)) * &(&u(2, 2) - &c(2, 1, 1));
        let expected = |x: &Rational, y: &Rational| (x - int(1)) * x * (y - int(1));
        for (x, y) in [(rat(1, 3), rat(-2, 5)), (int(4), int(-7)), (rat(9, 2), rat(1, 7))] {
            assert_eq!(p.eval(&[x.clone(), y.clone()]), expected(&x, &y));
        }
        assert_eq!(p.to_string(), "u1^2*u2 - u1^2 - u1*u2 + u1");
    }

    #[test]
    fn mul_falls_back_to_bigint_on_large_coefficients() {
        let big = Poly::from_terms(
            1,
            [
                (Monomial::new(vec![1]), Rational::from_integer(BigInt::from(10).pow(30))),
                (Monomial::new(vec![0]), int(1)),
            ],
        );
        let sq = &big * &big;
        assert_eq!(sq.coeff(&Monomial::new(vec![2])), Rational::from_integer(BigInt::from(10).pow(60)));
        assert_eq!(
            sq.coeff(&Monomial::new(vec![1])),
            Rational::from_integer(BigInt::from(2) * BigInt::from(10).pow(30))
        );
    }

    #[test]
    fn exact_div_examples() {
        let a = &u(1, 1).pow(2) - &c(1, 1, 4);
        assert_eq!(a.exact_div(&(&u(1, 1) - &c(1, 1, 2))).unwrap(), &u(1, 1) + &c(1, 1, 2));
        assert_eq!(a.exact_div(&(&u(1, 1) - &c(1, 1, 3))), Err(PolyError::NotDivisible));
        assert_eq!(a.exact_div(&Poly::zero(1)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn shift_examples() {
        let p = &u(2, 1) - &c(2, 1, 2);
        assert_eq!(p.shift(&[rat(1, 2), int(0)]), &u(2, 1) - &c(2, 1, 1));
        assert_eq!(p.shift(&[int(0), int(0)]), p);
        // sigma_1^{1/2}(f) for alpha_1 = (2, 4, -2)
        let expected = {
            let s = &(&u(3, 2) + &u(3, 3)) - &c(3, 1, 1);
            let x = &u(3, 1) - &c(3, 1, 1);
            &s.pow(2) - &(&(&x.pow(3) - &u(3, 1)) + &c(3, 2, 1))
        };
        assert_eq!(f55().shift(&[int(1), int(2), int(-1)]), expected);
        assert!(p.checked_shift(&[int(1)]).is_err());
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(c(2, 3, 1).gradient(), vec![Poly::zero(2), Poly::zero(2)]);
        assert_eq!(u(1, 1).pow(2).gradient(), vec![&c(1, 2, 1) * &u(1, 1)]);
        let s = &u(3, 2) + &u(3, 3);
        let two_s = &c(3, 2, 1) * &s;
        let g = f55().gradient();
        assert_eq!(g, vec![&c(3, 1, 1) - &(&c(3, 3, 1) * &u(3, 1).pow(2)), two_s.clone(), two_s]);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        // For a cubic, the symmetric difference quotient with step h has error
        // (h^2/6) * f''' along that axis; f''' in u1 is the constant -6.
        let f = f55();
        let h = rat(1, 1000);
        for pt in [[rat(1, 2), rat(1, 3), int(2)], [int(-1), rat(5, 7), rat(-3, 2)], [int(3), int(0), int(1)]] {
            let grad: Vec<Rational> = f.gradient().iter().map(|g| g.eval(&pt)).collect();
            for k in 0..3 {
                let mut plus = pt.clone();
                let mut minus = pt.clone();
                plus[k] += &h;
                minus[k] -= &h;
                let fd = (f.eval(&plus) - f.eval(&minus)) / (int(2) * &h);
                let correction = if k == 0 { -(&h * &h) } else { int(0) };
                assert_eq!(fd - correction, grad[k], "axis {k}");
            }
        }
    }

    #[test]
    fn leading_and_monic() {
        let p = &(&u(2, 1) * &u(2, 2)) + &u(2, 2).pow(3);
        assert_eq!(p.leading_monomial().unwrap(), &Monomial::new(vec![1, 1]));
        let (lc, m) = (&(&c(1, 2, 1) * &u(1, 1)) - &c(1, 1, 1)).make_monic().unwrap();
        assert_eq!(lc, int(2));
        assert_eq!(m, &u(1, 1) - &c(1, 1, 2));
        let (lc, m) = f55().make_monic().unwrap();
        assert_eq!(lc, int(-1));
        assert_eq!(m, -f55());
        assert_eq!(m.make_monic().unwrap(), (int(1), m.clone()));
        assert_eq!(Poly::zero(2).make_monic(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!((&u(1, 1) - &c(1, 1, 2)).eval(&[rat(1, 2)]), int(0));
        assert_eq!(f55().eval(&[int(0), int(0), int(1)]), int(0));
        assert_eq!(Poly::one(2).eval(&[rat(7, 3), int(-4)]), int(1));
        assert!(Poly::one(2).checked_eval(&[int(1)]).is_err());
    }

    #[test]
    fn mismatched_rings_are_errors() {
        assert!(u(1, 1).checked_add(&u(2, 1)).is_err());
        assert!(u(1, 1).checked_mul(&u(2, 1)).is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(f55().to_string(), "-u1^3 + u1 + u2^2 + 2*u2*u3 + u3^2 - 1");
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!((&c(2, -1, 2) * &u(2, 2)).to_string(), "-1/2*u2");
    }

    #[test]
    fn substitute_composes() {
        // p(u1, u2) = u1*u2 with u1 -> u1 + u2, u2 -> 2*u2
        let p = &u(2, 1) * &u(2, 2);
        let q = p.substitute(&[&u(2, 1) + &u(2, 2), &c(2, 2, 1) * &u(2, 2)]);
        assert_eq!(q.to_string(), "2*u1*u2 + 2*u2^2");
    }
}
