//! Seifert matrices of closed braids, Conway polynomials, and the polynomial
//! obstructions used to tighten lower bounds.

use std::fmt;

use serde::Serialize;

use crate::braid::{free_reduce, BraidWord};
use crate::error::{Error, Result};
use crate::poly::{determinant, laurent_to_z, to_i64, IntPoly};

/// Square integer matrix of Seifert linking numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("Seifert matrix must be square".into()));
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }
}

/// Polynomial in `z`; `coeffs[d]` is the coefficient of `z^d`, trailing zeros
/// trimmed (so the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConwayPolynomial {
    coeffs: Vec<i64>,
}

impl ConwayPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ConwayPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ConwayPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ConwayPolynomial { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn sub(&self, other: &ConwayPolynomial) -> ConwayPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        ConwayPolynomial::new((0..n).map(|d| self.coeff(d) - other.coeff(d)).collect())
    }

    /// Multiply by `z`.
    pub fn shift_z(&self) -> ConwayPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0];
        coeffs.extend_from_slice(&self.coeffs);
        ConwayPolynomial { coeffs }
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "z")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// A homology generator of the canonical surface of a closed braid: the loop
/// through the bands at two consecutive occurrences `start < end` of the same
/// generator.
#[derive(Debug, Clone, Copy)]
struct Loop {
    start: usize,
    end: usize,
}

/// Seifert matrix of the canonical surface of the closed braid, in the basis
/// of loops between consecutive occurrences of each generator.
///
/// Loops are ordered by the position of their first band. For loops `a`, `b`
/// with `a.start < b.start`:
/// - diagonal: `-1` for two positive bands, `+1` for two negative bands,
///   `0` for mixed signs;
/// - `b.start == a.end` (same generator, shared band): `A[a][b] = 1` if the
///   shared letter is positive, else `A[b][a] = -1`;
/// - interleaved (`a.start < b.start < a.end < b.end`) on adjacent
///   generators: `A[a][b] = 1` when `b` sits one generator higher, else
///   `A[b][a] = -1`;
/// - nested or disjoint intervals do not link.
pub fn seifert_matrix_from_braid(w: &BraidWord) -> Result<SeifertMatrix> {
    if let Some(i) = w.missing_generator() {
        return Err(Error::DisconnectedDiagram(i));
    }
    let letters = w.letters();
    let mut loops = Vec::new();
    for start in 0..letters.len() {
        let g = w.generator(start);
        if let Some(end) = (start + 1..letters.len()).find(|&p| w.generator(p) == g) {
            loops.push(Loop { start, end });
        }
    }
    let n = loops.len();
    debug_assert_eq!(n, letters.len() + 1 - w.strands());
    let mut a = vec![vec![0i64; n]; n];
    for (i, li) in loops.iter().enumerate() {
        let (si, ei) = (letters[li.start], letters[li.end]);
        a[i][i] = match (si > 0, ei > 0) {
            (true, true) => -1,
            (false, false) => 1,
            _ => 0,
        };
        for (j, lj) in loops.iter().enumerate().skip(i + 1) {
            if lj.start > li.end {
                break;
            }
            if lj.start == li.end {
                if letters[lj.start] > 0 {
                    a[i][j] = 1;
                } else {
                    a[j][i] = -1;
                }
                continue;
            }
            if lj.end < li.end {
                continue;
            }
            let (gi, gj) = (w.generator(li.start) as i64, w.generator(lj.start) as i64);
            if gj - gi == 1 {
                a[i][j] = 1;
            } else if gi - gj == 1 {
                a[j][i] = -1;
            }
        }
    }
    SeifertMatrix::new(a)
}

/// Conway polynomial `∇(z)` of a Seifert matrix, as `det(x⁻¹·A − x·Aᵀ)` with
/// `z = x − x⁻¹`.
///
/// The orientation of `x` is fixed so that a positive letter is the positive
/// crossing of the skein relation: `∇(σ₁²) = z`, `∇(σ₁³) = 1 + z²`.
pub fn conway_from_seifert(a: &SeifertMatrix) -> Result<ConwayPolynomial> {
    let n = a.size();
    // x·(x⁻¹A − xAᵀ) = A − x²Aᵀ
    let m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| IntPoly::from_i64(&[a.get(i, j), 0, -a.get(j, i)]))
                .collect()
        })
        .collect();
    let det = determinant(&m).ok_or_else(|| Error::Internal("inexact Bareiss step".into()))?;
    let z = laurent_to_z(&det, n).ok_or(Error::NotRepresentable)?;
    let coeffs = to_i64(&z).ok_or(Error::Overflow)?;
    Ok(ConwayPolynomial::new(coeffs))
}

/// Conway polynomial of a closed braid. A missing generator splits the
/// diagram, and split links have `∇ = 0`.
pub fn conway_of_braid(w: &BraidWord) -> Result<ConwayPolynomial> {
    if w.missing_generator().is_some() {
        return Ok(ConwayPolynomial::zero());
    }
    conway_from_seifert(&seifert_matrix_from_braid(w)?)
}

/// Least `k ≥ 0` with `p = 1 − k(k+1)z²`. Knots of flat band index 2 always
/// have this form, so `None` rules out `FB = 2`.
pub fn flat2_form_check(p: &ConwayPolynomial) -> Option<u64> {
    if p.coeff(0) != 1 || p.coeff(1) != 0 || p.degree().is_some_and(|d| d > 2) {
        return None;
    }
    let target = -p.coeff(2);
    if target < 0 {
        return None;
    }
    let target = target as u64;
    // k(k+1) = target
    let mut k = ((target as f64).sqrt() as u64).saturating_sub(1);
    while k.saturating_mul(k + 1) < target {
        k += 1;
    }
    (k.saturating_mul(k + 1) == target).then_some(k)
}

/// Genus lower bound from `deg ∇ ≤ 2g + l − 1`. The zero polynomial gives 0.
pub fn conway_degree_genus_bound(p: &ConwayPolynomial, l: usize) -> u64 {
    match p.degree() {
        None => 0,
        Some(d) => {
            let excess = d as i64 - l as i64 + 1;
            if excess <= 0 {
                0
            } else {
                ((excess + 1) / 2) as u64
            }
        }
    }
}

/// Returns `n` when the freely reduced word is `(σ₁)^{2n}` on two strands,
/// `n ≠ 0`.
///
/// This recognises the closed 2-braids `(σ₁)^{2n}`. Band index 1 belongs to
/// these closures with antiparallel strand orientation; the braid closure
/// orients both strands the same way, which agrees with that for `|n| = 1`
/// only.
pub fn band_index_one_check(w: &BraidWord) -> Option<i64> {
    let r = free_reduce(w);
    if r.strands() != 2 || r.is_empty() || !r.len().is_multiple_of(2) {
        return None;
    }
    let first = r.letters()[0];
    if r.letters().iter().any(|&e| e != first) {
        return None;
    }
    Some(first.signum() * (r.len() / 2) as i64)
}
