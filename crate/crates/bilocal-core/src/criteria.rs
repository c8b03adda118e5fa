//! Analytic criteria on network sources: locality and nonbilocality
//! conditions for T states, visibility trade-offs, steering strength before
//! and after the swap, local filtering and hidden nonlocality, the
//! margin-variable form of the bilocal bound, and the sign-class sufficiency
//! rules for certifying nonbilocal correlations.

use crate::states::{
    classify, locality_vars, LocalityVars, StateError, TParams, ThresholdVerdict, XParams,
    BOUNDARY_TOL,
};

/// Radicands and inequality slacks: differences within this of zero count as
/// float noise, anything more negative is a genuine domain violation.
pub const RADICAND_SLACK: f64 = 1e-12;
/// Swap branch weights at or below this are degenerate.
pub const DEGENERATE_WEIGHT: f64 = 1e-14;
/// A Werner copy paired with a perfect singlet source produces nonbilocal
/// correlations above this visibility; equivalently the bound on the
/// visibility product of a Werner pair.
pub const BILOCAL_VISIBILITY_THRESHOLD: f64 = 0.5;
/// A single Werner state violates the CHSH inequality above this visibility.
pub const LOCAL_VISIBILITY_THRESHOLD: f64 = core::f64::consts::FRAC_1_SQRT_2;
/// Largest zx-margin either copy may have while a partner within range can
/// still push the margin product above one.
pub const MAX_PLANE_DELTA: f64 = 0.5;

const SQRT_2: f64 = core::f64::consts::SQRT_2;

fn guarded_sqrt(radicand: f64) -> Result<f64, StateError> {
    if radicand < -RADICAND_SLACK {
        return Err(StateError::NegativeRadicand { value: radicand });
    }
    Ok(libm::sqrt(radicand.max(0.0)))
}

/// CHSH-locality check for the swapped pair of T states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairLocality {
    /// Largest over correlation-axis pairs of
    /// `sqrt((c_i1 c_i2)^2 + (c_j1 c_j2)^2)`.
    pub value: f64,
    /// At most one: no swap outcome can violate the CHSH inequality.
    pub local: bool,
}

/// Whether a pair of T sources keeps every swapped state CHSH-local.
pub fn t_local_condition(t1: &TParams, t2: &TParams) -> PairLocality {
    let prod = [t1.corr_x * t2.corr_x, t1.corr_y * t2.corr_y, t1.corr_z * t2.corr_z];
    let mut value = 0.0f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            value = value.max(libm::sqrt(prod[i] * prod[i] + prod[j] * prod[j]));
        }
    }
    PairLocality { value, local: value <= 1.0 }
}

/// Nonbilocality certificate for a pair of T states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairNonbilocality {
    /// `sqrt(c_z1 c_z2 + |c_x1 c_x2|)`, the settings maximum of the network
    /// value; zero when the radicand is negative.
    pub value: f64,
    /// Above one: the correlations admit no bilocal model.
    pub nonbilocal: bool,
    /// True when the radicand was negative and the value clamped to zero.
    pub clamped: bool,
}

/// Whether a pair of T sources is guaranteed to produce nonbilocal
/// correlations; matches the analytic network bound on the corresponding
/// X states.
pub fn t_nonbilocal_condition(t1: &TParams, t2: &TParams) -> PairNonbilocality {
    let radicand = t1.corr_z * t2.corr_z + (t1.corr_x * t2.corr_x).abs();
    let clamped = radicand < 0.0;
    let value = if clamped { 0.0 } else { libm::sqrt(radicand) };
    PairNonbilocality { value, nonbilocal: value > 1.0, clamped }
}

/// Trade-off between the visibilities of two Werner sources, parametrized as
/// offsets from the CHSH-local threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityAnalysis {
    /// `1/sqrt2 - phi1`, visibility of the first copy.
    pub alpha1: f64,
    /// `1/sqrt2 + phi2`, visibility of the second copy.
    pub alpha2: f64,
    /// `phi1 - phi2 + sqrt2 phi1 phi2`; negative means nonbilocal.
    pub margin: f64,
    pub nonbilocal: bool,
    pub bilocal_threshold: f64,
    pub local_threshold: f64,
}

/// How far below the CHSH-local visibility the first Werner copy may sit
/// while the second sits above it, and still yield nonbilocality.
pub fn visibility_analysis(phi1: f64, phi2: f64) -> Result<VisibilityAnalysis, StateError> {
    let alpha1 = LOCAL_VISIBILITY_THRESHOLD - phi1;
    let alpha2 = LOCAL_VISIBILITY_THRESHOLD + phi2;
    for (name, value) in [("alpha1", alpha1), ("alpha2", alpha2)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(StateError::ParameterRange { name, value, min: 0.0, max: 1.0 });
        }
    }
    let margin = phi1 - phi2 + SQRT_2 * phi1 * phi2;
    Ok(VisibilityAnalysis {
        alpha1,
        alpha2,
        margin,
        nonbilocal: margin < 0.0,
        bilocal_threshold: BILOCAL_VISIBILITY_THRESHOLD,
        local_threshold: LOCAL_VISIBILITY_THRESHOLD,
    })
}

/// Whether a steering criterion certifies steerability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteeringVerdict {
    Guaranteed,
    NotGuaranteed,
}

fn steering_verdict(r: &[f64; 3]) -> SteeringVerdict {
    let peak = r[0].abs().max(r[1].abs()).max(r[2].abs());
    let sum_sq = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if peak < (2.0 / 3.0) * sum_sq {
        SteeringVerdict::Guaranteed
    } else {
        SteeringVerdict::NotGuaranteed
    }
}

/// Steering strength of an X state before the swap and of the swapped state
/// built from two identical copies, conditioned on the inner-sign Bell
/// outcome, together with the nonbilocality flag of that family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringReport {
    pub state: XParams,
    /// Pre-swap correlation strengths `(2(p+q), 2(p-q), contrast)`.
    pub r: [f64; 3],
    /// Post-swap correlation strengths of the conditional state.
    pub r_post: [f64; 3],
    /// Probability weight of the conditioned branch, times two.
    pub weight: f64,
    pub pre_verdict: SteeringVerdict,
    pub post_verdict: SteeringVerdict,
    /// `sqrt(4 r1^2 + r3^2) > 1`: the identical-copy network is nonbilocal.
    pub nonbilocal: bool,
}

/// Evaluate the steering criteria for an X state and its identical-copy swap.
pub fn steering_report(x: &XParams) -> Result<SteeringReport, StateError> {
    let (s, k, z, d) = (x.pop00, x.pop01, x.pop10, x.pop11);
    let (p, q) = (x.coh_outer, x.coh_inner);
    let r = [2.0 * (p + q), 2.0 * (p - q), x.weight_contrast()];
    let weight = (k + z) + 2.0 * (s * d - k * z);
    if weight <= DEGENERATE_WEIGHT {
        return Err(StateError::DegenerateNormalization { name: "branch weight", value: weight });
    }
    let r_post = [
        2.0 * (p + q) * (p + q) / weight,
        2.0 * (p - q) * (p - q) / weight,
        ((k + z) * r[2] + 2.0 * (k * z - s * d)) / weight,
    ];
    let nonbilocal = libm::sqrt(4.0 * r[0] * r[0] + r[2] * r[2]) > 1.0;
    Ok(SteeringReport {
        state: *x,
        r,
        r_post,
        weight,
        pre_verdict: steering_verdict(&r),
        post_verdict: steering_verdict(&r_post),
        nonbilocal,
    })
}

/// Local filter strengths for the two qubits of one source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl FilterParams {
    /// Attenuations must lie in `(0, 1]`.
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self, StateError> {
        for (name, value) in [("lambda1", lambda1), ("lambda2", lambda2)] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(StateError::ParameterRange { name, value, min: 0.0, max: 1.0 });
            }
        }
        Ok(FilterParams { lambda1, lambda2 })
    }

    /// Success normalization of the filtered state.
    pub fn normalization(&self, x: &XParams) -> f64 {
        let (l1, l2) = (self.lambda1 * self.lambda1, self.lambda2 * self.lambda2);
        x.pop00 * l1 * l2 + x.pop01 * l1 + x.pop10 * l2 + x.pop11
    }
}

/// State after both qubits pass their local filters.
pub fn filter_state(x: &XParams, f: &FilterParams) -> Result<XParams, StateError> {
    let n = f.normalization(x);
    if n <= DEGENERATE_WEIGHT {
        return Err(StateError::DegenerateNormalization { name: "filter normalization", value: n });
    }
    let (l1, l2) = (f.lambda1, f.lambda2);
    XParams::new(
        x.pop00 * l1 * l1 * l2 * l2 / n,
        x.pop01 * l1 * l1 / n,
        x.pop10 * l2 * l2 / n,
        x.pop11 / n,
        x.coh_outer * l1 * l2 / n,
        x.coh_inner * l1 * l2 / n,
    )
}

/// CHSH reach of a filtered X state: the spectral ground truth next to the
/// two tabulated closed-form entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilteredChshReport {
    pub filtered: XParams,
    /// `2 sqrt(m)` from the correlation-tensor spectrum of the filtered
    /// state: the maximal CHSH expectation.
    pub ground_truth: f64,
    /// Tabulated in-plane entry `8 sqrt(2(p^2+q^2)) l1 l2 / n`; twice the
    /// in-plane CHSH maximum (kept as printed, not corrected).
    pub table_first: f64,
    /// Tabulated plane-z entry using `p+q` or `p-q` per the sign of `pq`.
    pub table_second: f64,
}

/// Evaluate the filtered-state CHSH bound and its tabulated comparisons.
pub fn filtered_chsh_bound(x: &XParams, f: &FilterParams) -> Result<FilteredChshReport, StateError> {
    let filtered = filter_state(x, f)?;
    let ground_truth = crate::states::horodecki(&filtered.matrix())?.chsh;
    let n = f.normalization(x);
    let (p, q) = (x.coh_outer, x.coh_inner);
    let ll = f.lambda1 * f.lambda2;
    let table_first = 8.0 * libm::sqrt(2.0 * (p * p + q * q)) * ll / n;
    let plane = if p * q >= 0.0 { p + q } else { p - q };
    let axis = x.pop11 - x.pop10 * f.lambda2 * f.lambda2 - x.pop01 * f.lambda1 * f.lambda1
        + x.pop00 * ll * ll;
    let table_second = 2.0 * libm::sqrt(4.0 * plane * plane * ll * ll + axis * axis) / n;
    Ok(FilteredChshReport { filtered, ground_truth, table_first, table_second })
}

/// One-parameter family of CHSH-local states whose nonlocality filtering
/// reveals: filtered copies approach CHSH value `2 sqrt(1 + alpha)`.
pub fn hidden_nonlocality_state(alpha: f64) -> Result<XParams, StateError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(StateError::ParameterRange { name: "alpha", value: alpha, min: 0.0, max: 1.0 });
    }
    XParams::new((1.0 - alpha) / 2.0, 0.5, alpha / 2.0, 0.0, 0.0, -alpha / 2.0)
}

/// The bilocal bound in margin variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdxAssessment {
    /// `sqrt(sqrt(prod(1 - d_i + e_i - x_i)) + sqrt(prod(1 - d_i - e_i + x_i)))`.
    pub value: f64,
    pub verdict: ThresholdVerdict,
    /// Above `sqrt2` beyond tolerance: no bilocal model exists.
    pub violation: bool,
}

/// Evaluate the margin-variable form of the bilocal bound for two copies.
pub fn edx_inequality(v1: &LocalityVars, v2: &LocalityVars) -> Result<EdxAssessment, StateError> {
    for v in [v1, v2] {
        let defect = v.consistency_defect();
        if defect > RADICAND_SLACK {
            return Err(StateError::InconsistentVars { value: defect });
        }
    }
    let sum_side = |v: &LocalityVars| 1.0 - v.margin_zx + v.margin_xy - v.margin_zy;
    let diff_side = |v: &LocalityVars| 1.0 - v.margin_zx - v.margin_xy + v.margin_zy;
    let plus = guarded_sqrt(sum_side(v1) * sum_side(v2))?;
    let minus = guarded_sqrt(diff_side(v1) * diff_side(v2))?;
    let value = libm::sqrt(plus + minus);
    let verdict = classify(value, SQRT_2, BOUNDARY_TOL);
    Ok(EdxAssessment { value, verdict, violation: verdict == ThresholdVerdict::Above })
}

/// Restriction of the zx-margins alone, on the plane where the bound is
/// tightest (xy- and zy-margins equal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalPlaneCheck {
    /// `(1 - delta1)(1 - delta2)`.
    pub product: f64,
    /// Product above one: nonbilocality is attainable on this plane.
    pub capable: bool,
    /// Two positive margins always leave the product at or below one.
    pub both_positive: bool,
}

/// Whether a pair of zx-margins leaves room for nonbilocal correlations.
pub fn maximal_plane_condition(delta1: f64, delta2: f64) -> MaximalPlaneCheck {
    let product = (1.0 - delta1) * (1.0 - delta2);
    MaximalPlaneCheck {
        product,
        capable: product > 1.0,
        both_positive: delta1 > 0.0 && delta2 > 0.0,
    }
}

/// Largest partner zx-margin compatible with nonbilocality, `1 - 1/(1-delta)`;
/// `None` when no partner exists at all (margin one).  Values below minus one
/// mean no admissible partner, which first happens beyond [`MAX_PLANE_DELTA`].
pub fn plane_partner_bound(delta: f64) -> Option<f64> {
    if delta >= 1.0 {
        return None;
    }
    Some(1.0 - 1.0 / (1.0 - delta))
}

/// Sign-pattern class of a correlation triple.  The dominant in-plane axis
/// and the sign of `c1 c2 c3` select which pair of one-sided constraints on
/// `F`, `G`, `H` holds, and with it the applicable certification rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    /// `|c1| >= |c2|`, `c1 c2 c3 < 0`: the binding constraint is
    /// `F - G <= sqrt2 - H`.
    XMajorDifference,
    /// `|c1| >= |c2|`, `c1 c2 c3 > 0`: the binding constraint is
    /// `F + G <= sqrt2 - H`; positivity forces such states separable.
    XMajorSum,
    /// `|c2| > |c1|`, `c1 c2 c3 > 0`: the binding constraint is
    /// `F + G <= sqrt2 - H`; positivity forces such states separable.
    YMajorSum,
    /// `|c2| > |c1|`, `c1 c2 c3 < 0`: the binding constraint is
    /// `G - F <= sqrt2 - H`.
    YMajorDifference,
}

impl SignClass {
    /// Conventional 1-based class number.
    pub fn index(&self) -> u8 {
        match self {
            SignClass::XMajorDifference => 1,
            SignClass::XMajorSum => 2,
            SignClass::YMajorSum => 3,
            SignClass::YMajorDifference => 4,
        }
    }
}

/// Classify a correlation triple by its sign pattern; `None` when `c3` is
/// zero and no class applies.
pub fn classify_signs(t: &TParams) -> Option<SignClass> {
    if t.corr_z == 0.0 {
        return None;
    }
    let x_major = t.corr_x.abs() >= t.corr_y.abs();
    let aligned = t.corr_x * t.corr_y * t.corr_z > 0.0;
    Some(match (x_major, aligned) {
        (true, false) => SignClass::XMajorDifference,
        (true, true) => SignClass::XMajorSum,
        (false, true) => SignClass::YMajorSum,
        (false, false) => SignClass::YMajorDifference,
    })
}

/// Which certification rule bounds a copy's xy-margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CRuleKind {
    /// Local copy, x-major difference class:
    /// `0 <= delta <= eps <= (4 sqrt(2(1-delta)) + 5(delta-1))/2`.
    LocalXMajorDifference,
    /// Local copy, y-major difference class: `0 <= eps <= delta`.
    LocalYMajorDifference,
    /// Nonlocal copy, x-major difference class:
    /// `delta <= eps <= (4 sqrt(2(1-delta)) + 5(delta-1))/2`.
    NonlocalXMajorDifference,
    /// Nonlocal copy, y-major difference class:
    /// `(delta-1)/2 <= eps <= delta`.
    NonlocalYMajorDifference,
    /// Nonlocal copy with nonnegative zx-margin (both copies nonlocal):
    /// `(delta-1)/2 <= eps < 0`, y-major difference class only.
    NonlocalNonnegativeMargin,
}

/// A certification rule instantiated on one copy's margins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CRuleCheck {
    pub kind: CRuleKind,
    /// Admissible xy-margin interval.
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

fn curve_upper(delta: f64) -> f64 {
    (4.0 * libm::sqrt(2.0 * (1.0 - delta)) + 5.0 * (delta - 1.0)) / 2.0
}

/// Locality pattern of the two copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoleBranch {
    BothLocal,
    FirstLocalSecondNonlocal,
    SecondLocalFirstNonlocal,
    BothNonlocal,
}

/// Per-copy findings of the sufficiency analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopySufficiency {
    pub vars: LocalityVars,
    /// `sqrt(1 - eps + xi - delta)`, the in-plane sum strength.
    pub f_value: f64,
    /// `sqrt(1 - eps - xi + delta)`, the in-plane difference strength.
    pub g_value: f64,
    /// `sqrt(1 + eps - xi - delta)`, the axis strength.
    pub h_value: f64,
    /// `1 - eps >= |xi - delta|`.
    pub plane_bound_holds: bool,
    /// `(delta - xi)^2 >= 0`, recorded for completeness.
    pub square_nonnegative: bool,
    pub sign_class: Option<SignClass>,
    /// The class's binding constraint on `F`, `G`, `H` holds (vacuous when
    /// unclassified).
    pub class_constraint_holds: bool,
    /// All three margins nonnegative: the copy cannot violate CHSH.
    pub local: bool,
    /// The copy's role requires a certification rule but its sign class
    /// admits none, so nonbilocality cannot be certified through it.
    pub excluded_by_class: bool,
    pub rule: Option<CRuleCheck>,
}

/// Certification analysis for a pair of T sources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficiencyReport {
    pub copy1: CopySufficiency,
    pub copy2: CopySufficiency,
    pub branch: RoleBranch,
    pub edx: EdxAssessment,
    /// Every applicable condition holds and the margin-variable bound is
    /// violated: nonbilocality is certified.
    pub sufficient: bool,
}

fn copy_base(t: &TParams) -> CopySufficiency {
    let vars = locality_vars(&t.to_x());
    let sqrt_clamped = |r: f64| {
        debug_assert!(r >= -RADICAND_SLACK);
        libm::sqrt(r.max(0.0))
    };
    let f_value = sqrt_clamped(1.0 - vars.margin_xy + vars.margin_zy - vars.margin_zx);
    let g_value = sqrt_clamped(1.0 - vars.margin_xy - vars.margin_zy + vars.margin_zx);
    let h_value = sqrt_clamped(1.0 + vars.margin_xy - vars.margin_zy - vars.margin_zx);
    let plane_bound_holds =
        1.0 - vars.margin_xy >= (vars.margin_zy - vars.margin_zx).abs() - RADICAND_SLACK;
    let diff = vars.margin_zx - vars.margin_zy;
    let sign_class = classify_signs(t);
    let class_constraint_holds = match sign_class {
        Some(SignClass::XMajorDifference) => f_value - g_value <= SQRT_2 - h_value + RADICAND_SLACK,
        Some(SignClass::XMajorSum) | Some(SignClass::YMajorSum) => {
            f_value + g_value <= SQRT_2 - h_value + RADICAND_SLACK
        }
        Some(SignClass::YMajorDifference) => {
            g_value - f_value <= SQRT_2 - h_value + RADICAND_SLACK
        }
        None => true,
    };
    let local = vars.margin_xy.min(vars.margin_zx).min(vars.margin_zy) >= -RADICAND_SLACK;
    CopySufficiency {
        vars,
        f_value,
        g_value,
        h_value,
        plane_bound_holds,
        square_nonnegative: diff * diff >= 0.0,
        sign_class,
        class_constraint_holds,
        local,
        excluded_by_class: false,
        rule: None,
    }
}

fn attach_rule(copy: &mut CopySufficiency, both_nonlocal: bool) {
    let eps = copy.vars.margin_xy;
    let delta = copy.vars.margin_zx;
    let s = RADICAND_SLACK;
    let (kind, lower, upper, holds) = if copy.local {
        match copy.sign_class {
            Some(SignClass::XMajorDifference) => {
                let upper = curve_upper(delta);
                (
                    CRuleKind::LocalXMajorDifference,
                    delta,
                    upper,
                    delta >= -s && delta <= eps + s && eps <= upper + s,
                )
            }
            Some(SignClass::YMajorDifference) => (
                CRuleKind::LocalYMajorDifference,
                0.0,
                delta,
                eps >= -s && eps <= delta + s,
            ),
            _ => {
                copy.excluded_by_class = true;
                return;
            }
        }
    } else if both_nonlocal && delta >= 0.0 {
        match copy.sign_class {
            Some(SignClass::YMajorDifference) => (
                CRuleKind::NonlocalNonnegativeMargin,
                (delta - 1.0) / 2.0,
                0.0,
                eps >= (delta - 1.0) / 2.0 - s && eps < 0.0,
            ),
            _ => {
                copy.excluded_by_class = true;
                return;
            }
        }
    } else {
        match copy.sign_class {
            Some(SignClass::XMajorDifference) => {
                let upper = curve_upper(delta);
                (
                    CRuleKind::NonlocalXMajorDifference,
                    delta,
                    upper,
                    delta <= eps + s && eps <= upper + s,
                )
            }
            Some(SignClass::YMajorDifference) => (
                CRuleKind::NonlocalYMajorDifference,
                (delta - 1.0) / 2.0,
                delta,
                eps >= (delta - 1.0) / 2.0 - s && eps <= delta + s,
            ),
            _ => {
                copy.excluded_by_class = true;
                return;
            }
        }
    };
    copy.rule = Some(CRuleCheck { kind, lower, upper, holds });
}

fn copy_passes(copy: &CopySufficiency) -> bool {
    copy.plane_bound_holds
        && copy.square_nonnegative
        && copy.class_constraint_holds
        && !copy.excluded_by_class
        && copy.rule.map_or(true, |r| r.holds)
}

/// Run the full sufficiency analysis on a pair of T sources.
pub fn sufficiency_report(t1: &TParams, t2: &TParams) -> SufficiencyReport {
    let mut copy1 = copy_base(t1);
    let mut copy2 = copy_base(t2);
    let branch = match (copy1.local, copy2.local) {
        (true, true) => RoleBranch::BothLocal,
        (true, false) => RoleBranch::FirstLocalSecondNonlocal,
        (false, true) => RoleBranch::SecondLocalFirstNonlocal,
        (false, false) => RoleBranch::BothNonlocal,
    };
    if branch != RoleBranch::BothLocal {
        let both = branch == RoleBranch::BothNonlocal;
        attach_rule(&mut copy1, both);
        attach_rule(&mut copy2, both);
    }
    let edx = edx_inequality(&copy1.vars, &copy2.vars)
        .expect("margins of valid states are mutually consistent");
    let sufficient = edx.violation && copy_passes(&copy1) && copy_passes(&copy2);
    SufficiencyReport { copy1, copy2, branch, edx, sufficient }
}

/// Nonbilocality certificate for a pair of single-parameter maximally
/// entangled-mixture states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaNonbilocality {
    /// `sqrt((2a1 - 1)(2a2 - 1) + a1 a2)`, zero when the radicand is
    /// negative.
    pub value: f64,
    pub nonbilocal: bool,
    pub clamped: bool,
}

/// Certificate value for two alpha-family sources; the region above one is
/// empty unless both parameters reach one half.
pub fn alpha_nonbilocal(alpha1: f64, alpha2: f64) -> AlphaNonbilocality {
    let radicand = (2.0 * alpha1 - 1.0) * (2.0 * alpha2 - 1.0) + alpha1 * alpha2;
    let clamped = radicand < 0.0;
    let value = if clamped { 0.0 } else { libm::sqrt(radicand) };
    AlphaNonbilocality { value, nonbilocal: value > 1.0, clamped }
}

/// True unless the pair witnesses nonbilocality with a separable member —
/// which never happens: entanglement of both copies is necessary.
pub fn entanglement_necessity_check(t1: &TParams, t2: &TParams) -> bool {
    let flagged = t_nonbilocal_condition(t1, t2).nonbilocal;
    !flagged
        || (crate::states::concurrence_t(t1) > 0.0 && crate::states::concurrence_t(t2) > 0.0)
}
