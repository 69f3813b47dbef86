//! Exact integer polynomial arithmetic and fraction-free determinants.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / divisor`, or `None` if the division is not exact.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let q = self / divisor;
        if &q * divisor == *self {
            Some(q)
        } else {
            None
        }
    }
}

/// Dense polynomial over Z; `coeffs[d]` is the coefficient of `x^d`.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64(&[c])
    }

    /// `c * x^d`
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        IntPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Long division; `None` unless the remainder is zero and every quotient
    /// coefficient is an integer.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(IntPoly::default()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top / lead;
            if &q * lead != *top {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|d| self.coeff(d) - other.coeff(d)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl ExactRing for IntPoly {
    fn zero_elem() -> Self {
        IntPoly::default()
    }
    fn one_elem() -> Self {
        IntPoly::constant(1)
    }
    fn is_zero_elem(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        IntPoly::div_exact(self, divisor)
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Returns `None` only if an intermediate division is inexact, which cannot
/// happen over an integral domain.
pub fn determinant<T: ExactRing>(matrix: &[Vec<T>]) -> Option<T> {
    let n = matrix.len();
    if n == 0 {
        return Some(T::one_elem());
    }
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one_elem();
    for k in 0..n {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero_elem()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Some(T::zero_elem()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Some(if negate { det.negated() } else { det })
}

/// Rewrite the Laurent polynomial `p(x) / x^shift` as a polynomial in
/// `z = x - 1/x` by repeatedly cancelling the leading term with `c·z^d`.
///
/// Returns the coefficients in `z` (index = power), or `None` when the
/// rewrite leaves a nonzero remainder.
pub fn laurent_to_z(p: &IntPoly, shift: usize) -> Option<Vec<BigInt>> {
    let mut rem = p.clone();
    let mut out: Vec<BigInt> = Vec::new();
    while let Some(top) = rem.degree() {
        if top < shift {
            return None;
        }
        let d = top - shift;
        if d > shift {
            return None;
        }
        let c = rem.coeff(top);
        // c·z^d·x^shift = c·(x² - 1)^d·x^(shift - d)
        let base = IntPoly::from_i64(&[-1, 0, 1]);
        let mut zd = IntPoly::constant(1);
        for _ in 0..d {
            zd = &zd * &base;
        }
        let term = (&zd * &IntPoly::monomial(BigInt::one(), shift - d)).scale(&c);
        rem = &rem - &term;
        if out.len() <= d {
            out.resize(d + 1, <BigInt as Zero>::zero());
        }
        out[d] += c;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Some(out)
}

/// Convert a big coefficient list to `i64`, failing on overflow.
pub fn to_i64(coeffs: &[BigInt]) -> Option<Vec<i64>> {
    coeffs
        .iter()
        .map(|c| {
            if c.abs() > BigInt::from(i64::MAX) {
                None
            } else {
                i64::try_from(c).ok()
            }
        })
        .collect()
}
