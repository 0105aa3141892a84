//! Exact arithmetic in the ring `Z[τ]`, `τ² = τ + 1`, and on 4-vectors over it.
//!
//! Every coordinate of the 600-cell rays lives in this ring, so orthogonality,
//! parallelism and rank can all be decided exactly. Coefficients are `i64`
//! with checked arithmetic: overflow is reported as [`GoldenError::Overflow`]
//! by the `checked_*` methods and panics in the operator impls.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Golden ratio as a float, for display and sanity checks only.
pub const TAU_F64: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("integer overflow in Z[tau] arithmetic")]
    Overflow,
    #[error("zero vector where a direction was required")]
    ZeroVector,
}

/// `a + bτ` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl From<[i64; 2]> for GoldenInt {
    fn from([a, b]: [i64; 2]) -> Self {
        GoldenInt { a, b }
    }
}

impl From<GoldenInt> for [i64; 2] {
    fn from(x: GoldenInt) -> Self {
        [x.a, x.b]
    }
}

impl From<i64> for GoldenInt {
    fn from(a: i64) -> Self {
        GoldenInt { a, b: 0 }
    }
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    pub const TAU: GoldenInt = GoldenInt { a: 0, b: 1 };
    /// `κ = 1/τ = τ - 1`.
    pub const KAPPA: GoldenInt = GoldenInt { a: -1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, GoldenError> {
        Ok(GoldenInt {
            a: self.a.checked_add(rhs.a).ok_or(GoldenError::Overflow)?,
            b: self.b.checked_add(rhs.b).ok_or(GoldenError::Overflow)?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, GoldenError> {
        Ok(GoldenInt {
            a: self.a.checked_sub(rhs.a).ok_or(GoldenError::Overflow)?,
            b: self.b.checked_sub(rhs.b).ok_or(GoldenError::Overflow)?,
        })
    }

    pub fn checked_neg(self) -> Result<Self, GoldenError> {
        Ok(GoldenInt {
            a: self.a.checked_neg().ok_or(GoldenError::Overflow)?,
            b: self.b.checked_neg().ok_or(GoldenError::Overflow)?,
        })
    }

    /// `(a+bτ)(c+dτ) = (ac+bd) + (ad+bc+bd)τ`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, GoldenError> {
        let m = |x: i64, y: i64| x.checked_mul(y).ok_or(GoldenError::Overflow);
        let s = |x: i64, y: i64| x.checked_add(y).ok_or(GoldenError::Overflow);
        let (a, b, c, d) = (self.a, self.b, rhs.a, rhs.b);
        let bd = m(b, d)?;
        Ok(GoldenInt {
            a: s(m(a, c)?, bd)?,
            b: s(s(m(a, d)?, m(b, c)?)?, bd)?,
        })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, GoldenError> {
        Ok(GoldenInt {
            a: self.a.checked_mul(k).ok_or(GoldenError::Overflow)?,
            b: self.b.checked_mul(k).ok_or(GoldenError::Overflow)?,
        })
    }

    /// Exact division by a rational integer, `None` unless both coefficients divide.
    pub fn exact_div(self, k: i64) -> Option<Self> {
        if k == 0 || self.a % k != 0 || self.b % k != 0 {
            return None;
        }
        Some(GoldenInt { a: self.a / k, b: self.b / k })
    }

    /// Galois conjugate `τ ↦ 1 - τ`.
    pub fn conjugate(self) -> Self {
        GoldenInt { a: self.a + self.b, b: -self.b }
    }

    /// Sign of the real number `a + b(1+√5)/2`, decided exactly.
    pub fn real_sign(self) -> i32 {
        // 2(a + bτ) = p + q√5 with p = 2a + b, q = b.
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        let sp = p.signum() as i32;
        let sq = q.signum() as i32;
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // Opposite signs: compare p² against 5q².
        let pp = wide_square(p.unsigned_abs());
        let qq = wide_mul_small(wide_square(q.unsigned_abs()), 5);
        match pp.cmp(&qq) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("√5 is irrational"),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * TAU_F64
    }

    /// Compact token used in table facsimiles: `0 1 -1 2 τ -τ κ -κ`, else `a+bτ`.
    pub fn token(self) -> String {
        match (self.a, self.b) {
            (a, 0) => a.to_string(),
            (0, 1) => "τ".into(),
            (0, -1) => "-τ".into(),
            (-1, 1) => "κ".into(),
            (1, -1) => "-κ".into(),
            _ => self.to_string(),
        }
    }
}

/// 256-bit value as (high, low) limbs, compared lexicographically.
type Wide = (u128, u128);

fn wide_square(x: u128) -> Wide {
    wide_mul(x, x)
}

fn wide_mul(x: u128, y: u128) -> Wide {
    let mask = u64::MAX as u128;
    let (x1, x0) = (x >> 64, x & mask);
    let (y1, y0) = (y >> 64, y & mask);
    let p00 = x0 * y0;
    let p01 = x0 * y1;
    let p10 = x1 * y0;
    let p11 = x1 * y1;
    let mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    let lo = (p00 & mask) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

fn wide_mul_small((hi, lo): Wide, k: u128) -> Wide {
    let (lo_hi, lo_lo) = wide_mul(lo, k);
    (hi * k + lo_hi, lo_lo)
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "τ"),
            (0, -1) => write!(f, "-τ"),
            (0, b) => write!(f, "{b}τ"),
            (a, 1) => write!(f, "{a}+τ"),
            (a, -1) => write!(f, "{a}-τ"),
            (a, b) if b < 0 => write!(f, "{a}{b}τ"),
            (a, b) => write!(f, "{a}+{b}τ"),
        }
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("golden integer overflow")
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("golden integer overflow")
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("golden integer overflow")
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> Self {
        self.checked_neg().expect("golden integer overflow")
    }
}

/// A vector in `Z[τ]⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GoldenVec4(pub [GoldenInt; 4]);

impl GoldenVec4 {
    pub const ZERO: GoldenVec4 = GoldenVec4([GoldenInt::ZERO; 4]);

    pub fn from_ints(v: [i64; 4]) -> Self {
        GoldenVec4(v.map(GoldenInt::from))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &Self) -> Result<GoldenInt, GoldenError> {
        self.0
            .iter()
            .zip(other.0.iter())
            .try_fold(GoldenInt::ZERO, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
    }

    pub fn norm_sq(&self) -> Result<GoldenInt, GoldenError> {
        self.dot(self)
    }

    pub fn is_orthogonal(&self, other: &Self) -> Result<bool, GoldenError> {
        Ok(self.dot(other)?.is_zero())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GoldenError> {
        let mut out = [GoldenInt::ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_add(other.0[i])?;
        }
        Ok(GoldenVec4(out))
    }

    pub fn checked_neg(&self) -> Result<Self, GoldenError> {
        let mut out = [GoldenInt::ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_neg()?;
        }
        Ok(GoldenVec4(out))
    }

    pub fn checked_scale(&self, k: GoldenInt) -> Result<Self, GoldenError> {
        let mut out = [GoldenInt::ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_mul(k)?;
        }
        Ok(GoldenVec4(out))
    }

    pub fn exact_div(&self, k: i64) -> Option<Self> {
        let mut out = [GoldenInt::ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].exact_div(k)?;
        }
        Some(GoldenVec4(out))
    }

    pub fn conjugate(&self) -> Self {
        GoldenVec4(self.0.map(GoldenInt::conjugate))
    }

    /// Representative of the projective class whose first nonzero coordinate is positive.
    pub fn canonical(&self) -> Result<Self, GoldenError> {
        match self.0.iter().find(|x| !x.is_zero()) {
            None => Err(GoldenError::ZeroVector),
            Some(x) if x.real_sign() > 0 => Ok(*self),
            Some(_) => self.checked_neg(),
        }
    }

    /// True iff `self` and `other` span the same line (all 2×2 minors vanish).
    pub fn is_parallel(&self, other: &Self) -> Result<bool, GoldenError> {
        if self.is_zero() || other.is_zero() {
            return Err(GoldenError::ZeroVector);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if !minor2(self, other, i, j)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        self.0.map(GoldenInt::to_f64)
    }
}

fn minor2(u: &GoldenVec4, v: &GoldenVec4, i: usize, j: usize) -> Result<GoldenInt, GoldenError> {
    u.0[i].checked_mul(v.0[j])?.checked_sub(u.0[j].checked_mul(v.0[i])?)
}

/// Rank (1, 2 or 3) of the 3×4 matrix with rows `u, v, w`, by exact minors.
///
/// Three rays form a "line" exactly when this is 2.
pub fn triple_rank(u: &GoldenVec4, v: &GoldenVec4, w: &GoldenVec4) -> Result<u8, GoldenError> {
    if u.is_zero() || v.is_zero() || w.is_zero() {
        return Err(GoldenError::ZeroVector);
    }
    let rows = [u, v, w];
    for cols in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        // Cofactor expansion along the first row.
        let mut det = GoldenInt::ZERO;
        for k in 0..3 {
            let (c1, c2) = match k {
                0 => (cols[1], cols[2]),
                1 => (cols[0], cols[2]),
                _ => (cols[0], cols[1]),
            };
            let term = rows[0].0[cols[k]].checked_mul(minor2(rows[1], rows[2], c1, c2)?)?;
            det = if k == 1 { det.checked_sub(term)? } else { det.checked_add(term)? };
        }
        if !det.is_zero() {
            return Ok(3);
        }
    }
    for (x, y) in [(u, v), (u, w), (v, w)] {
        if !x.is_parallel(y)? {
            return Ok(2);
        }
    }
    Ok(1)
}

impl fmt::Display for GoldenVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
