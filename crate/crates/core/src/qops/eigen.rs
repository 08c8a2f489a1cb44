//! Cyclic complex Jacobi eigensolver for 4x4 Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary and then applies a real Givens rotation in the `(p, q)`
//! plane, so the pivot block is annihilated exactly. Sweeps visit pivots in
//! the fixed order `(0,1), (0,2), (0,3), (1,2), (1,3), (2,3)`, which makes the
//! output a deterministic function of the input.

use super::matrix::{ComplexMatrix4, C64, DIM, ONE, ZERO};
use crate::error::{Error, Result};

/// Hermiticity tolerance applied to eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius norm relative to `‖H‖_F` at which sweeping stops.
pub const JACOBI_REL_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;

/// Real eigenvalues in ascending order with paired orthonormal eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub values: [f64; DIM],
    /// `vectors[k]` is the eigenvector paired with `values[k]`.
    pub vectors: [[C64; DIM]; DIM],
}

impl EigenSystem {
    /// Sorts by ascending eigenvalue; ties keep their input order.
    pub fn sorted(values: [f64; DIM], vectors: [[C64; DIM]; DIM]) -> Self {
        let mut order = [0, 1, 2, 3];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        Self {
            values: order.map(|k| values[k]),
            vectors: order.map(|k| vectors[k]),
        }
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> ComplexMatrix4 {
        let mut v = ComplexMatrix4::zeros();
        for k in 0..DIM {
            for i in 0..DIM {
                v[(i, k)] = self.vectors[k][i];
            }
        }
        v
    }

    /// Largest `|⟨v_i|v_j⟩ - δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..DIM {
            for j in 0..DIM {
                let dot: C64 = (0..DIM)
                    .map(|k| self.vectors[i][k].conj() * self.vectors[j][k])
                    .sum();
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    /// Largest `‖H v_k - λ_k v_k‖₂` over the four pairs.
    pub fn max_residual(&self, h: &ComplexMatrix4) -> f64 {
        (0..DIM)
            .map(|k| {
                let hv = h.mul_vec(&self.vectors[k]);
                hv.iter()
                    .zip(&self.vectors[k])
                    .map(|(a, b)| (a - b * self.values[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Rebuilds `Σ λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::zeros();
        for k in 0..DIM {
            m = m + ComplexMatrix4::outer(&self.vectors[k], &self.vectors[k])
                .scale_real(self.values[k]);
        }
        m
    }
}

pub fn check_hermitian(h: &ComplexMatrix4, tol: f64) -> Result<()> {
    let (deviation, row, col) = h.hermiticity_violation();
    if deviation > tol {
        return Err(Error::NotHermitian {
            row,
            col,
            deviation,
        });
    }
    Ok(())
}

fn off_diagonal_norm(a: &ComplexMatrix4) -> f64 {
    let mut s = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Rotates the largest-magnitude component to the positive real axis.
/// Near-ties (within a relative 1e-10) resolve to the lowest index.
fn fix_phase(v: &mut [C64; DIM]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let k = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-10))
        .unwrap_or(0);
    let phase = v[k].conj() / v[k].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[k] = C64::new(v[k].re, 0.0);
}

/// Diagonalizes a Hermitian 4x4 matrix.
pub fn hermitian_eigensystem(h: &ComplexMatrix4) -> Result<EigenSystem> {
    check_hermitian(h, HERMITIAN_TOL)?;

    let scale = h.frobenius_norm();
    let threshold = JACOBI_REL_TOL * scale;
    let mut a = *h;
    let mut v = ComplexMatrix4::identity();

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..DIM - 1 {
            for q in p + 1..DIM {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            residual: off_diagonal_norm(&a),
        });
    }

    let values = [0, 1, 2, 3].map(|k| a[(k, k)].re);
    let vectors = [0, 1, 2, 3].map(|k| {
        let mut col = [0, 1, 2, 3].map(|i| v[(i, k)]);
        fix_phase(&mut col);
        col
    });
    Ok(EigenSystem::sorted(values, vectors))
}

/// One Jacobi rotation `A <- G† A G`, `V <- V G` that zeroes `a[p][q]`.
fn rotate(a: &mut ComplexMatrix4, v: &mut ComplexMatrix4, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // G = diag(.., 1 at p, conj(phase) at q, ..) * R(c, s)
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    for k in 0..DIM {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
    for k in 0..DIM {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}
