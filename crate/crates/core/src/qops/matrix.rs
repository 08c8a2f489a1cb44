use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dimension of the two-qubit Hilbert space.
pub const DIM: usize = 4;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense 4x4 complex matrix in the computational basis
/// `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[C64; DIM]; DIM],
}

impl ComplexMatrix4 {
    /// Builds a matrix, rejecting NaN or infinite entries.
    pub fn new(entries: [[C64; DIM]; DIM]) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn from_real(entries: [[f64; DIM]; DIM]) -> Result<Self> {
        Self::new(entries.map(|row| row.map(|x| C64::new(x, 0.0))))
    }

    pub const fn zeros() -> Self {
        Self {
            entries: [[ZERO; DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn from_diagonal(d: [f64; DIM]) -> Result<Self> {
        let mut m = Self::zeros();
        for i in 0..DIM {
            m.entries[i][i] = C64::new(d[i], 0.0);
        }
        Self::new(m.entries)
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64; DIM], v: &[C64; DIM]) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m.entries[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn entries(&self) -> &[[C64; DIM]; DIM] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i][j]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..DIM).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            entries: self.entries.map(|row| row.map(|z| z * s)),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            entries: self.entries.map(|row| row.map(|z| z * s)),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise deviation `|a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn mul_vec(&self, v: &[C64; DIM]) -> [C64; DIM] {
        let mut out = [ZERO; DIM];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..DIM).map(|k| self.entries[i][k] * v[k]).sum();
        }
        out
    }

    /// `⟨u|M|v⟩`.
    pub fn sandwich(&self, u: &[C64; DIM], v: &[C64; DIM]) -> C64 {
        let mv = self.mul_vec(v);
        (0..DIM).map(|i| u[i].conj() * mv[i]).sum()
    }

    /// Largest Hermiticity violation and where it occurs.
    pub fn hermiticity_violation(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..DIM {
            for j in i..DIM {
                let dev = (self.entries[i][j] - self.entries[j][i].conj()).norm();
                if dev > worst.0 {
                    worst = (dev, i, j);
                }
            }
        }
        worst
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..DIM {
            for j in 0..DIM {
                if i != j {
                    worst = worst.max(self.entries[i][j].norm());
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i][j]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..DIM {
            for j in 0..DIM {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..DIM {
            for j in 0..DIM {
                self.entries[i][j] -= rhs.entries[i][j];
            }
        }
        self
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..DIM {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix4 [")?;
        for row in &self.entries {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
