//! Two-qubit state families and single-pair nonlocality measures.
//!
//! The X family keeps the four computational populations plus the two
//! antidiagonal coherences (all real here); the T family is the X subfamily
//! with maximally mixed marginals, parameterized by its diagonal correlation
//! tensor.  On top of the families sit the Horodecki CHSH criterion, the
//! per-plane locality variables, and closed-form concurrence.

use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix, LinalgError, RealSym3, C64};
use alloc::vec;
use core::fmt;

/// Allowed deviation of the population sum from one.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Slack on positivity constraints so boundary states are admitted.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// Density-matrix admission tolerance (hermiticity, trace, spectrum).
pub const DENSITY_TOL: f64 = 1e-10;
/// Half-width of the band reported as a boundary verdict.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Errors from state construction or criterion preconditions.
#[derive(Debug, Clone, PartialEq)]
pub enum StateError {
    /// Populations do not sum to one.
    WeightSum { sum: f64 },
    /// A population is negative beyond tolerance.
    NegativeWeight { name: &'static str, value: f64 },
    /// A squared coherence exceeds its population product bound.
    CoherenceBound { name: &'static str, excess: f64 },
    /// A correlation triple violates `|c1 -+ c2| <= 1 +- c3`.
    CorrelationBound { name: &'static str, excess: f64 },
    /// A scalar parameter is outside its admissible interval.
    ParameterRange { name: &'static str, value: f64, min: f64, max: f64 },
    /// Input is not a valid two-qubit density matrix.
    NotDensity { reason: &'static str, value: f64 },
    /// A matrix has entries off the X pattern, or complex ones on it.
    NotXForm { magnitude: f64 },
    /// A normalization factor is too close to zero to divide by.
    DegenerateNormalization { name: &'static str, value: f64 },
    /// Locality variables violate their mutual consistency requirement.
    InconsistentVars { value: f64 },
    /// A radicand is negative beyond the clamping tolerance.
    NegativeRadicand { value: f64 },
    /// Underlying linear algebra failure.
    Linalg(LinalgError),
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::WeightSum { sum } => {
                write!(f, "populations must sum to 1 (got {sum})")
            }
            StateError::NegativeWeight { name, value } => {
                write!(f, "population {name} must be nonnegative (got {value})")
            }
            StateError::CoherenceBound { name, excess } => {
                write!(f, "{name} coherence exceeds its population bound by {excess:e}")
            }
            StateError::CorrelationBound { name, excess } => {
                write!(f, "correlation bound {name} violated by {excess:e}")
            }
            StateError::ParameterRange { name, value, min, max } => {
                write!(f, "{name} = {value} outside [{min}, {max}]")
            }
            StateError::NotDensity { reason, value } => {
                write!(f, "not a density matrix: {reason} (value {value:e})")
            }
            StateError::NotXForm { magnitude } => {
                write!(f, "matrix departs from the real X pattern by {magnitude:e}")
            }
            StateError::DegenerateNormalization { name, value } => {
                write!(f, "normalization {name} = {value:e} too close to zero")
            }
            StateError::InconsistentVars { value } => {
                write!(f, "locality variables inconsistent: 1 - margin_zx < |margin_zy - margin_xy| by {value:e}")
            }
            StateError::NegativeRadicand { value } => {
                write!(f, "radicand {value:e} negative beyond tolerance")
            }
            StateError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StateError {}

impl From<LinalgError> for StateError {
    fn from(e: LinalgError) -> Self {
        StateError::Linalg(e)
    }
}

/// Three-way comparison of a criterion value against its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdVerdict {
    Below,
    Boundary,
    Above,
}

/// Classify `value` against `threshold` with a symmetric boundary band.
pub fn classify(value: f64, threshold: f64, tol: f64) -> ThresholdVerdict {
    if (value - threshold).abs() <= tol {
        ThresholdVerdict::Boundary
    } else if value > threshold {
        ThresholdVerdict::Above
    } else {
        ThresholdVerdict::Below
    }
}

/// Parameters of a two-qubit X-shaped density matrix, all real:
///
/// ```text
/// | pop00     .         .      coh_outer |
/// |   .     pop01   coh_inner     .      |
/// |   .   coh_inner  pop10        .      |
/// | coh_outer .         .      pop11     |
/// ```
///
/// Validity requires unit population sum, nonnegative populations, and
/// `coh_outer^2 <= pop00*pop11`, `coh_inner^2 <= pop01*pop10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XParams {
    pub pop00: f64,
    pub pop01: f64,
    pub pop10: f64,
    pub pop11: f64,
    pub coh_outer: f64,
    pub coh_inner: f64,
}

impl XParams {
    /// Validating constructor; reports the first violated constraint.
    pub fn new(
        pop00: f64,
        pop01: f64,
        pop10: f64,
        pop11: f64,
        coh_outer: f64,
        coh_inner: f64,
    ) -> Result<Self, StateError> {
        for (name, value) in
            [("pop00", pop00), ("pop01", pop01), ("pop10", pop10), ("pop11", pop11)]
        {
            if value < -POSITIVITY_TOL {
                return Err(StateError::NegativeWeight { name, value });
            }
        }
        let sum = pop00 + pop01 + pop10 + pop11;
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(StateError::WeightSum { sum });
        }
        let outer_excess = coh_outer * coh_outer - pop00 * pop11;
        if outer_excess > POSITIVITY_TOL {
            return Err(StateError::CoherenceBound { name: "outer", excess: outer_excess });
        }
        let inner_excess = coh_inner * coh_inner - pop01 * pop10;
        if inner_excess > POSITIVITY_TOL {
            return Err(StateError::CoherenceBound { name: "inner", excess: inner_excess });
        }
        Ok(XParams { pop00, pop01, pop10, pop11, coh_outer, coh_inner })
    }

    /// The recurring diagonal combination `pop00 - pop01 - pop10 + pop11`.
    pub fn weight_contrast(&self) -> f64 {
        self.pop00 - self.pop01 - self.pop10 + self.pop11
    }

    /// Dense 4x4 density matrix.
    pub fn matrix(&self) -> ComplexMatrix {
        let z = C64::new(0.0, 0.0);
        let re = |v: f64| C64::new(v, 0.0);
        ComplexMatrix::from_entries(
            4,
            vec![
                re(self.pop00), z, z, re(self.coh_outer),
                z, re(self.pop01), re(self.coh_inner), z,
                z, re(self.coh_inner), re(self.pop10), z,
                re(self.coh_outer), z, z, re(self.pop11),
            ],
        )
        .unwrap()
    }

    /// Read parameters back from a dense matrix that is (numerically) a valid
    /// real X-shaped density matrix; swap branch conditionals qualify.
    pub fn from_matrix(rho: &ComplexMatrix) -> Result<Self, StateError> {
        check_density(rho)?;
        let mut off = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                let e = rho.get(r, c);
                let on_pattern = r == c || r + c == 3;
                if on_pattern {
                    off = off.max(e.im.abs());
                } else {
                    off = off.max(e.re.abs()).max(e.im.abs());
                }
            }
        }
        if off > DENSITY_TOL {
            return Err(StateError::NotXForm { magnitude: off });
        }
        XParams::new(
            rho.get(0, 0).re,
            rho.get(1, 1).re,
            rho.get(2, 2).re,
            rho.get(3, 3).re,
            0.5 * (rho.get(0, 3).re + rho.get(3, 0).re),
            0.5 * (rho.get(1, 2).re + rho.get(2, 1).re),
        )
    }
}

/// T state: X state with maximally mixed marginals, fixed by the diagonal
/// correlation tensor `diag(corr_x, corr_y, corr_z)`.
///
/// Validity (positivity of the density matrix) is
/// `|corr_x - corr_y| <= 1 + corr_z` and `|corr_x + corr_y| <= 1 - corr_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TParams {
    pub corr_x: f64,
    pub corr_y: f64,
    pub corr_z: f64,
}

impl TParams {
    /// Validating constructor; bounds are non-strict with a small slack so
    /// boundary states (Bell states, for one) are admitted.
    pub fn new(corr_x: f64, corr_y: f64, corr_z: f64) -> Result<Self, StateError> {
        let minus_excess = (corr_x - corr_y).abs() - (1.0 + corr_z);
        if minus_excess > POSITIVITY_TOL {
            return Err(StateError::CorrelationBound {
                name: "|corr_x - corr_y| <= 1 + corr_z",
                excess: minus_excess,
            });
        }
        let plus_excess = (corr_x + corr_y).abs() - (1.0 - corr_z);
        if plus_excess > POSITIVITY_TOL {
            return Err(StateError::CorrelationBound {
                name: "|corr_x + corr_y| <= 1 - corr_z",
                excess: plus_excess,
            });
        }
        Ok(TParams { corr_x, corr_y, corr_z })
    }

    /// Werner state with the given visibility: correlations `(-v, -v, -v)`.
    pub fn werner(visibility: f64) -> Result<Self, StateError> {
        if !(0.0..=1.0).contains(&visibility) {
            return Err(StateError::ParameterRange {
                name: "visibility",
                value: visibility,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(TParams { corr_x: -visibility, corr_y: -visibility, corr_z: -visibility })
    }

    /// Equivalent X-family parameters.
    pub fn to_x(&self) -> XParams {
        XParams {
            pop00: (1.0 + self.corr_z) / 4.0,
            pop01: (1.0 - self.corr_z) / 4.0,
            pop10: (1.0 - self.corr_z) / 4.0,
            pop11: (1.0 + self.corr_z) / 4.0,
            coh_outer: (self.corr_x - self.corr_y) / 4.0,
            coh_inner: (self.corr_x + self.corr_y) / 4.0,
        }
    }

    /// `|corr_x| + |corr_y| + |corr_z|`; at most 1 exactly for separable T states.
    pub fn abs_sum(&self) -> f64 {
        self.corr_x.abs() + self.corr_y.abs() + self.corr_z.abs()
    }
}

/// One-parameter X family interpolating from the maximally mixed-marginal
/// product-like point at `alpha = 1/2` to the Bell state at `alpha = 1`:
/// populations `(alpha/2, (1-alpha)/2, (1-alpha)/2, alpha/2)` with outer
/// coherence `alpha/2`.  Equals the T state `(alpha, -alpha, 2*alpha - 1)`.
pub fn alpha_state(alpha: f64) -> Result<XParams, StateError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(StateError::ParameterRange { name: "alpha", value: alpha, min: 0.0, max: 1.0 });
    }
    Ok(XParams {
        pop00: alpha / 2.0,
        pop01: (1.0 - alpha) / 2.0,
        pop10: (1.0 - alpha) / 2.0,
        pop11: alpha / 2.0,
        coh_outer: alpha / 2.0,
        coh_inner: 0.0,
    })
}

/// Full 3x3 correlation tensor `t[i][j] = Tr[rho (sigma_i x sigma_j)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor(pub [[f64; 3]; 3]);

impl CorrelationTensor {
    /// Gram matrix `t^T t` as a real symmetric 3x3.
    pub fn gram(&self) -> RealSym3 {
        let t = &self.0;
        let dot = |a: usize, b: usize| (0..3).map(|k| t[k][a] * t[k][b]).sum::<f64>();
        RealSym3 {
            xx: dot(0, 0),
            xy: dot(0, 1),
            xz: dot(0, 2),
            yy: dot(1, 1),
            yz: dot(1, 2),
            zz: dot(2, 2),
        }
    }
}

fn check_density(rho: &ComplexMatrix) -> Result<(), StateError> {
    if rho.dim() != 4 {
        return Err(StateError::NotDensity { reason: "dimension is not 4", value: rho.dim() as f64 });
    }
    let dev = rho.hermiticity_deviation();
    if dev > DENSITY_TOL {
        return Err(StateError::NotDensity { reason: "not Hermitian", value: dev });
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(StateError::NotDensity { reason: "trace differs from 1", value: tr.re });
    }
    let eigs = rho.hermitian_eigenvalues()?;
    if eigs[0] < -DENSITY_TOL {
        return Err(StateError::NotDensity { reason: "negative eigenvalue", value: eigs[0] });
    }
    Ok(())
}

/// Correlation tensor of a validated two-qubit density matrix.
pub fn correlation_tensor(rho: &ComplexMatrix) -> Result<CorrelationTensor, StateError> {
    check_density(rho)?;
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let mut t = [[0.0f64; 3]; 3];
    for (i, pi) in paulis.iter().enumerate() {
        for (j, pj) in paulis.iter().enumerate() {
            let obs = pi.kron(pj);
            t[i][j] = rho.trace_product(&obs)?.re;
        }
    }
    Ok(CorrelationTensor(t))
}

/// Horodecki CHSH criterion evaluated on a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorodeckiReport {
    /// `sqrt` of the sum of the two largest eigenvalues of `t^T t`.
    pub m: f64,
    /// Maximal CHSH expectation `2 m`.
    pub chsh: f64,
    /// `Above` means some CHSH inequality is violated.
    pub verdict: ThresholdVerdict,
}

/// Maximal CHSH violation measure: `m > 1` iff the state is CHSH-nonlocal.
pub fn horodecki(rho: &ComplexMatrix) -> Result<HorodeckiReport, StateError> {
    let t = correlation_tensor(rho)?;
    let eigs = t.gram().eigenvalues();
    let m = libm::sqrt((eigs[1] + eigs[2]).max(0.0));
    Ok(HorodeckiReport { m, chsh: 2.0 * m, verdict: classify(m, 1.0, BOUNDARY_TOL) })
}

/// Squared per-plane CHSH values of an X state and their complements.
///
/// Each `plane_*` field is the squared maximal CHSH/2 expectation reachable
/// with both measurement directions confined to that Pauli plane; the
/// corresponding margin is one minus the plane value, so a negative margin
/// flags nonlocality reachable in that plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalityVars {
    pub plane_xy: f64,
    pub plane_zx: f64,
    pub plane_zy: f64,
    pub margin_xy: f64,
    pub margin_zx: f64,
    pub margin_zy: f64,
}

impl LocalityVars {
    /// Rebuild the full record from the three margins.
    pub fn from_margins(margin_xy: f64, margin_zx: f64, margin_zy: f64) -> Self {
        LocalityVars {
            plane_xy: 1.0 - margin_xy,
            plane_zx: 1.0 - margin_zx,
            plane_zy: 1.0 - margin_zy,
            margin_xy,
            margin_zx,
            margin_zy,
        }
    }

    /// Margins of any X state satisfy `1 - margin_zx >= |margin_zy - margin_xy|`;
    /// returns the amount by which this fails (nonpositive when consistent).
    pub fn consistency_defect(&self) -> f64 {
        (self.margin_zy - self.margin_xy).abs() - (1.0 - self.margin_zx)
    }
}

/// Per-plane locality variables of an X state.
pub fn locality_vars(x: &XParams) -> LocalityVars {
    let contrast = x.weight_contrast();
    let coh_sum = x.coh_outer + x.coh_inner;
    let coh_diff = x.coh_outer - x.coh_inner;
    let plane_xy = 8.0 * (x.coh_outer * x.coh_outer + x.coh_inner * x.coh_inner);
    let plane_zx = contrast * contrast + 4.0 * coh_sum * coh_sum;
    let plane_zy = contrast * contrast + 4.0 * coh_diff * coh_diff;
    LocalityVars {
        plane_xy,
        plane_zx,
        plane_zy,
        margin_xy: 1.0 - plane_xy,
        margin_zx: 1.0 - plane_zx,
        margin_zy: 1.0 - plane_zy,
    }
}

/// Concurrence of a T state, closed form.
pub fn concurrence_t(t: &TParams) -> f64 {
    let a = ((t.corr_x - t.corr_y).abs() - (1.0 - t.corr_z).abs()) / 2.0;
    let b = ((t.corr_x + t.corr_y).abs() - (1.0 + t.corr_z).abs()) / 2.0;
    a.max(b).max(0.0)
}

/// Concurrence of an X state, closed form.
pub fn concurrence_x(x: &XParams) -> f64 {
    let outer = x.coh_outer.abs() - libm::sqrt((x.pop01 * x.pop10).max(0.0));
    let inner = x.coh_inner.abs() - libm::sqrt((x.pop00 * x.pop11).max(0.0));
    2.0 * outer.max(inner).max(0.0)
}
