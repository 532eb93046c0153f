//! Exact linear algebra over a prime field `GF(p)`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
}

/// Arithmetic in `GF(p)`; elements are canonical representatives `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        let mut result = 1u64;
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        result as u32
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// `acc += c * v` componentwise.
    pub fn axpy(&self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        for (a, &b) in acc.iter_mut().zip(v) {
            if b != 0 {
                *a = self.add(*a, self.mul(c, b));
            }
        }
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add_to(&mut self, field: &PrimeField, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = field.add(self.data[i], v);
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, field: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..self.cols {
            if lead_row == self.rows {
                break;
            }
            let Some(pr) = (lead_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != lead_row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, lead_row * self.cols + c);
                }
            }
            let inv = field.inv(self.get(lead_row, col));
            for c in col..self.cols {
                let v = self.get(lead_row, c);
                self.set(lead_row, c, field.mul(v, inv));
            }
            let pivot_row: Vec<u32> = self.row(lead_row)[col..].to_vec();
            for r in 0..self.rows {
                if r == lead_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor != 0 {
                    let neg = field.neg(factor);
                    let start = r * self.cols + col;
                    field.axpy(&mut self.data[start..start + pivot_row.len()], neg, &pivot_row);
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel(&self, field: &PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// `self * v`.
    pub fn apply(&self, field: &PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }
}

/// A subspace of `GF(p)^n` kept as an echelon basis, supporting incremental
/// insertion and membership tests.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: PrimeField,
    dim: usize,
    // rows normalized so that the pivot entry is 1; pivots[i] is the pivot of rows[i]
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis, leaving a vector with zeros in every
    /// pivot position.
    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` if it enlarged the subspace.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[p]);
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        // keep existing rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                self.field.axpy(row, self.field.neg(c), &w);
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
