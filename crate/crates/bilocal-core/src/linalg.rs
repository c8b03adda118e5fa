//! Dense complex linear algebra sized for few-qubit problems.
//!
//! Everything here operates on small square matrices (at most 16x16 in this
//! crate), so the implementations favour clarity and determinism over
//! asymptotic cleverness: row-major storage, textbook loops, a cyclic Jacobi
//! eigensolver for Hermitian input and a trigonometric closed form for real
//! symmetric 3x3 spectra.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use num_complex::Complex64 as C64;

/// Hermiticity tolerance: larger entrywise deviation from the adjoint is an error.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Jacobi termination: off-diagonal Frobenius norm below this ends the sweep loop.
pub const JACOBI_OFF_TOL: f64 = 1e-12;
/// Jacobi sweep cap; convergence is quadratic so this is never reached in practice.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Errors from matrix shape or content checks.
#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// Operand dimensions do not match.
    DimensionMismatch { left: usize, right: usize },
    /// Matrix dimension is not a power of two, so it has no qubit structure.
    NotQubitSized { dim: usize },
    /// A qubit index is outside the register, or listed twice.
    BadQubitIndex { index: usize, qubits: usize },
    /// Input deviates from its adjoint by more than the stated tolerance.
    NotHermitian { deviation: f64 },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            LinalgError::NotQubitSized { dim } => {
                write!(f, "dimension {dim} is not a power of two")
            }
            LinalgError::BadQubitIndex { index, qubits } => {
                write!(f, "qubit index {index} invalid for a {qubits}-qubit register")
            }
            LinalgError::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:e})")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, entries: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major entry list; the length must be `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self, LinalgError> {
        if entries.len() != dim * dim {
            return Err(LinalgError::DimensionMismatch { left: dim * dim, right: entries.len() });
        }
        Ok(ComplexMatrix { dim, entries })
    }

    /// Projector |v><v| onto an unnormalized column vector.
    pub fn outer(v: &[C64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.entries[r * dim + c] = v[r] * v[c].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.entries[c * self.dim + r] = self.entries[r * self.dim + c].conj();
            }
        }
        m
    }

    /// Entrywise scaling by a real factor.
    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|e| e * s).collect();
        ComplexMatrix { dim: self.dim, entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ComplexMatrix { dim: self.dim, entries })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    out.entries[r * d + c] += a * other.entries[k * d + c];
                }
            }
        }
        Ok(out)
    }

    /// Tr(self * other) without forming the product matrix.
    pub fn trace_product(&self, other: &Self) -> Result<C64, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let d = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..d {
            for c in 0..d {
                acc += self.entries[r * d + c] * other.entries[c * d + r];
            }
        }
        Ok(acc)
    }

    /// Kronecker product; the left factor owns the most significant index bits.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut out = Self::zeros(d);
        for ra in 0..da {
            for ca in 0..da {
                let a = self.entries[ra * da + ca];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for rb in 0..db {
                    for cb in 0..db {
                        out.entries[(ra * db + rb) * d + (ca * db + cb)] =
                            a * other.entries[rb * db + cb];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise deviation from the adjoint.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let d = self.entries[r * self.dim + c] - self.entries[c * self.dim + r].conj();
                let n = libm::sqrt(d.norm_sqr());
                if n > worst {
                    worst = n;
                }
            }
        }
        worst
    }

    /// (M + M†)/2, the Hermitian part.
    pub fn symmetrize(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.entries[r * self.dim + c] = (self.entries[r * self.dim + c]
                    + self.entries[c * self.dim + r].conj())
                    * 0.5;
            }
        }
        m
    }

    /// Number of qubits for a power-of-two dimension.
    pub fn qubits(&self) -> Result<usize, LinalgError> {
        if self.dim == 0 || !self.dim.is_power_of_two() {
            return Err(LinalgError::NotQubitSized { dim: self.dim });
        }
        Ok(self.dim.trailing_zeros() as usize)
    }

    /// Trace out the listed qubits (qubit 0 is the most significant index bit).
    ///
    /// The kept qubits retain their relative order.  Tracing every qubit yields
    /// a 1x1 matrix holding the trace.
    pub fn partial_trace(&self, traced: &[usize]) -> Result<Self, LinalgError> {
        let n = self.qubits()?;
        let mut is_traced = vec![false; n];
        for &t in traced {
            if t >= n || is_traced[t] {
                return Err(LinalgError::BadQubitIndex { index: t, qubits: n });
            }
            is_traced[t] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&k| !is_traced[k]).collect();
        let out_dim = 1usize << kept.len();
        let mut out = Self::zeros(out_dim);
        let bit = |idx: usize, qubit: usize| (idx >> (n - 1 - qubit)) & 1;
        let compress = |idx: usize| {
            kept.iter().fold(0usize, |acc, &k| (acc << 1) | bit(idx, k))
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                if (0..n).filter(|&k| is_traced[k]).any(|k| bit(i, k) != bit(j, k)) {
                    continue;
                }
                let v = self.entries[i * self.dim + j];
                let (r, c) = (compress(i), compress(j));
                out.entries[r * out_dim + c] += v;
            }
        }
        Ok(out)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// Rejects input whose hermiticity deviation exceeds [`HERMITICITY_TOL`],
    /// then runs cyclic Jacobi on the symmetrized matrix: each pivot is made
    /// real by a phase rotation and annihilated by the standard real rotation
    /// angle.  Terminates when the off-diagonal Frobenius norm drops below
    /// [`JACOBI_OFF_TOL`] or after [`JACOBI_MAX_SWEEPS`] sweeps.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>, LinalgError> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(LinalgError::NotHermitian { deviation: dev });
        }
        let d = self.dim;
        let mut a = self.symmetrize().entries;
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut off = 0.0f64;
            for r in 0..d {
                for c in 0..d {
                    if r != c {
                        off += a[r * d + c].norm_sqr();
                    }
                }
            }
            if libm::sqrt(off) < JACOBI_OFF_TOL {
                break;
            }
            for p in 0..d {
                for q in (p + 1)..d {
                    let apq = a[p * d + q];
                    let m = libm::sqrt(apq.norm_sqr());
                    if m == 0.0 {
                        continue;
                    }
                    let phase = apq / m;
                    let app = a[p * d + p].re;
                    let aqq = a[q * d + q].re;
                    let theta = 0.5 * libm::atan2(2.0 * m, app - aqq);
                    let (s, c) = (libm::sin(theta), libm::cos(theta));
                    // U = diag(1, phase_bar) * real rotation [[c,-s],[s,c]]
                    let upp = C64::new(c, 0.0);
                    let upq = C64::new(-s, 0.0);
                    let uqp = phase.conj() * s;
                    let uqq = phase.conj() * c;
                    for k in 0..d {
                        let akp = a[k * d + p];
                        let akq = a[k * d + q];
                        a[k * d + p] = akp * upp + akq * uqp;
                        a[k * d + q] = akp * upq + akq * uqq;
                    }
                    for k in 0..d {
                        let apk = a[p * d + k];
                        let aqk = a[q * d + k];
                        a[p * d + k] = upp.conj() * apk + uqp.conj() * aqk;
                        a[q * d + k] = upq.conj() * apk + uqq.conj() * aqk;
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..d).map(|i| a[i * d + i].re).collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(eigs)
    }
}

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_entries(
        2,
        vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    )
    .unwrap()
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_entries(
        2,
        vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    )
    .unwrap()
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_entries(
        2,
        vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
    )
    .unwrap()
}

/// Real symmetric 3x3 matrix by its upper triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSym3 {
    pub xx: f64,
    pub xy: f64,
    pub xz: f64,
    pub yy: f64,
    pub yz: f64,
    pub zz: f64,
}

impl RealSym3 {
    /// Eigenvalues in ascending order via the trigonometric closed-form cubic.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let p1 = self.xy * self.xy + self.xz * self.xz + self.yz * self.yz;
        if p1 == 0.0 {
            let mut e = [self.xx, self.yy, self.zz];
            e.sort_by(|a, b| a.partial_cmp(b).unwrap());
            return e;
        }
        let q = (self.xx + self.yy + self.zz) / 3.0;
        let p2 = (self.xx - q) * (self.xx - q)
            + (self.yy - q) * (self.yy - q)
            + (self.zz - q) * (self.zz - q)
            + 2.0 * p1;
        let p = libm::sqrt(p2 / 6.0);
        let bxx = (self.xx - q) / p;
        let byy = (self.yy - q) / p;
        let bzz = (self.zz - q) / p;
        let bxy = self.xy / p;
        let bxz = self.xz / p;
        let byz = self.yz / p;
        let det_b = bxx * (byy * bzz - byz * byz) - bxy * (bxy * bzz - byz * bxz)
            + bxz * (bxy * byz - byy * bxz);
        let r = (det_b / 2.0).clamp(-1.0, 1.0);
        let phi = libm::acos(r) / 3.0;
        let two_pi_3 = 2.0 * core::f64::consts::PI / 3.0;
        let hi = q + 2.0 * p * libm::cos(phi);
        let lo = q + 2.0 * p * libm::cos(phi + two_pi_3);
        let mid = 3.0 * q - hi - lo;
        [lo, mid, hi]
    }
}
