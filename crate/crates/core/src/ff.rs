//! Arithmetic in the prime field F_p.
//!
//! Moduli are restricted to primes `5 <= p < 2^31`, so a product of two
//! reduced residues always fits in a `u64`. Elements carry their field by
//! value; the operator impls panic on a field mismatch while the `try_*`
//! methods report it as [`Error::FieldMismatch`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

const MIN_MODULUS: u64 = 5;
const MAX_MODULUS: u64 = 1 << 31;

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    modulus: u64,
}

/// Deterministic trial division; adequate below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if !(MIN_MODULUS..MAX_MODULUS).contains(&modulus) || !is_prime(modulus) {
            return Err(Error::NonPrimeField(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, as a `usize`.
    pub fn order(&self) -> usize {
        self.modulus as usize
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: 1, field: *self }
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn elem(&self, value: i64) -> FieldElement {
        let p = self.modulus as i64;
        FieldElement { value: value.rem_euclid(p) as u64, field: *self }
    }

    pub fn from_u64(&self, value: u64) -> FieldElement {
        FieldElement { value: value % self.modulus, field: *self }
    }

    /// All elements `0, 1, ..., p - 1` in order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.modulus).map(move |v| FieldElement { value: v, field: self })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement { value: rng.gen_range(0..self.modulus), field: *self }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement { value: rng.gen_range(1..self.modulus), field: *self }
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    /// Inverse by the extended Euclidean algorithm; `a` must be nonzero.
    pub(crate) fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.modulus as i64) as u64)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.modulus)
    }
}

/// A fully reduced residue together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: PrimeField,
    value: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus,
                right: other.field.modulus,
            });
        }
        Ok(())
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement> {
        self.check(&other)?;
        Ok(FieldElement { value: self.field.add_raw(self.value, other.value), field: self.field })
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement> {
        self.check(&other)?;
        Ok(FieldElement { value: self.field.sub_raw(self.value, other.value), field: self.field })
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement> {
        self.check(&other)?;
        Ok(FieldElement { value: self.field.mul_raw(self.value, other.value), field: self.field })
    }

    pub fn inv(self) -> Result<FieldElement> {
        self.field
            .inv_raw(self.value)
            .map(|value| FieldElement { value, field: self.field })
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(self, mut exp: u64) -> FieldElement {
        let f = self.field;
        let (mut base, mut acc) = (self.value, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = f.mul_raw(acc, base);
            }
            base = f.mul_raw(base, base);
            exp >>= 1;
        }
        FieldElement { value: acc, field: f }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            #[inline]
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$try(rhs).expect("field mismatch")
            }
        }
        impl $assign_trait for FieldElement {
            #[inline]
            fn $assign(&mut self, rhs: FieldElement) {
                *self = self.$try(rhs).expect("field mismatch");
            }
        }
    };
}

binop!(Add, add, try_add, AddAssign, add_assign);
binop!(Sub, sub, try_sub, SubAssign, sub_assign);
binop!(Mul, mul, try_mul, MulAssign, mul_assign);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: self.field.sub_raw(0, self.value), field: self.field }
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    /// Panics when dividing by zero.
    fn div(self, rhs: FieldElement) -> FieldElement {
        self * rhs.inv().expect("division by zero")
    }
}

/// Reduces `rows x cols` raw residues to reduced row echelon form in place and
/// returns the pivot columns. Pivots are taken column by column, choosing the
/// smallest row index with a nonzero entry.
pub(crate) fn rref_raw(field: PrimeField, data: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if src != r {
            for j in 0..cols {
                data.swap(src * cols + j, r * cols + j);
            }
        }
        let inv = field.inv_raw(data[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            data[r * cols + j] = field.mul_raw(data[r * cols + j], inv);
        }
        for i in 0..rows {
            let factor = data[i * cols + c];
            if i == r || factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = field.mul_raw(factor, data[r * cols + j]);
                data[i * cols + j] = field.sub_raw(data[i * cols + j], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right nullspace of a raw residue matrix, one basis vector per free column
/// (ascending), each with a 1 in its free column.
pub(crate) fn nullspace_raw(field: PrimeField, mut data: Vec<u64>, rows: usize, cols: usize) -> Vec<Vec<u64>> {
    let pivots = rref_raw(field, &mut data, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.sub_raw(0, data[row * cols + free]);
            }
            v
        })
        .collect()
}

fn flatten(field: PrimeField, matrix: &[Vec<FieldElement>], cols: usize) -> Result<Vec<u64>> {
    let mut data = Vec::with_capacity(matrix.len() * cols);
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch { row: i, len: row.len(), expected: cols });
        }
        for e in row {
            if e.field != field {
                return Err(Error::FieldMismatch { left: field.modulus, right: e.field.modulus });
            }
            data.push(e.value);
        }
    }
    Ok(data)
}

/// A basis of `{ v : matrix * v = 0 }` by exact Gauss-Jordan elimination.
///
/// The result is deterministic: the basis vector for free column `f` has a 1
/// at `f`, zeros at every other free column, and the negated reduced entries
/// at the pivot columns. The basis is empty when the kernel is trivial.
pub fn nullspace(field: PrimeField, matrix: &[Vec<FieldElement>], cols: usize) -> Result<Vec<Vec<FieldElement>>> {
    let data = flatten(field, matrix, cols)?;
    Ok(nullspace_raw(field, data, matrix.len(), cols)
        .into_iter()
        .map(|v| v.into_iter().map(|value| FieldElement { value, field }).collect())
        .collect())
}

pub fn rank(field: PrimeField, matrix: &[Vec<FieldElement>], cols: usize) -> Result<usize> {
    let mut data = flatten(field, matrix, cols)?;
    Ok(rref_raw(field, &mut data, matrix.len(), cols).len())
}
