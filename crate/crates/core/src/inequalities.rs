//! Theorem-level checks: the generalized L_p Petty projection and
//! Busemann–Petty centroid inequalities, the τ-extremality orderings, the
//! Blaschke–Santaló inequality and its corollary, and the class-reduction
//! chain.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use libm::{fabs, pow};

use crate::body::{polar_volume_from_support, santalo_point, santalo_point_from_support, ConvexBody, StarBody};
use crate::error::{GeomError, Result};
use crate::operators::{cosine_transform_plus_density, limit_checks, moment_pair, projection_pair, OperatorParams};
use crate::sphere::estimate_multiplier;
use crate::special::kappa;
use crate::sphere::SphereGrid;

/// Relative slack under which an inequality counts as verified.
pub const SLACK_TOLERANCE: f64 = 1e-3;
/// Relative band within which the two sides count as equal.
pub const EQUALITY_BAND: f64 = 5e-3;
/// Magnitude below which a multiplier counts as zero.
pub const MULTIPLIER_ZERO_TOLERANCE: f64 = 1e-6;
/// Relative deviation allowed in the `p → 1` projection limit.
pub const PROJECTION_LIMIT_TOLERANCE: f64 = 0.1;
/// Deviation allowed in the `p → ∞` moment limit, relative to the diameter.
pub const MOMENT_LIMIT_TOLERANCE: f64 = 0.05;
/// Spread below which a sweep counts as constant.
pub const CONSTANT_SWEEP_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Holds,
    Equality,
    ViolatedWithinTolerance,
    Violated,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::Equality)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Equality => "equality",
            Verdict::ViolatedWithinTolerance => "violated_within_tolerance",
            Verdict::Violated => "violated",
        }
    }
}

/// Direction of the compared relation `left ? right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Relation {
    LessEq,
    GreaterEq,
    Equal,
    /// `left ≤ right` as an absolute bound, without relative slack.
    AtMost,
    /// `left ≥ right` as an absolute bound, without relative slack.
    AtLeast,
}

/// Outcome of one inequality or identity check.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityReport {
    pub theorem: String,
    pub relation: Relation,
    pub left: f64,
    pub right: f64,
    /// Relative margin in the direction of the relation; negative when
    /// violated. For identities, minus the relative discrepancy.
    pub slack: f64,
    pub equality: bool,
    pub body: String,
    pub p: Option<f64>,
    pub tau: Option<f64>,
    pub resolution: usize,
    pub verdict: Verdict,
    pub note: String,
}

impl InequalityReport {
    fn build(theorem: &str, relation: Relation, left: f64, right: f64, tolerance: f64) -> Self {
        let r = left / right;
        let (slack, holds) = match relation {
            Relation::LessEq => (1.0 - r, r <= 1.0 + tolerance),
            Relation::GreaterEq => (r - 1.0, r >= 1.0 - tolerance),
            Relation::Equal => (-fabs(r - 1.0), fabs(r - 1.0) <= tolerance),
            Relation::AtMost => (right - left, left <= right),
            Relation::AtLeast => (left - right, left >= right),
        };
        let bound = matches!(relation, Relation::AtMost | Relation::AtLeast);
        let equality = !bound && fabs(r - 1.0) <= EQUALITY_BAND;
        let verdict = match (holds, equality, relation) {
            (true, true, _) | (true, _, Relation::Equal) => Verdict::Equality,
            (true, false, _) => Verdict::Holds,
            (false, true, Relation::LessEq | Relation::GreaterEq) => Verdict::ViolatedWithinTolerance,
            _ => Verdict::Violated,
        };
        let verdict = if r.is_nan() || left.is_nan() || right.is_nan() { Verdict::Violated } else { verdict };
        InequalityReport {
            theorem: theorem.to_string(),
            relation,
            left,
            right,
            slack,
            equality: equality && holds,
            body: String::new(),
            p: None,
            tau: None,
            resolution: 0,
            verdict,
            note: String::new(),
        }
    }

    /// `left ≤ right`, verified when `left ≤ right (1 + 1e-3)`.
    pub fn less_eq(theorem: &str, left: f64, right: f64) -> Self {
        Self::build(theorem, Relation::LessEq, left, right, SLACK_TOLERANCE)
    }

    /// `left ≥ right`, verified when `left ≥ right (1 - 1e-3)`.
    pub fn greater_eq(theorem: &str, left: f64, right: f64) -> Self {
        Self::build(theorem, Relation::GreaterEq, left, right, SLACK_TOLERANCE)
    }

    /// `left = right` up to the relative `tolerance`.
    pub fn identity(theorem: &str, left: f64, right: f64, tolerance: f64) -> Self {
        Self::build(theorem, Relation::Equal, left, right, tolerance)
    }

    /// Absolute bound `left ≤ right`.
    pub fn at_most(theorem: &str, left: f64, right: f64) -> Self {
        Self::build(theorem, Relation::AtMost, left, right, 0.0)
    }

    /// Absolute bound `left ≥ right`.
    pub fn at_least(theorem: &str, left: f64, right: f64) -> Self {
        Self::build(theorem, Relation::AtLeast, left, right, 0.0)
    }

    pub fn with_body(mut self, body: String) -> Self {
        self.body = body;
        self
    }

    pub fn with_params(mut self, p: Option<f64>, tau: Option<f64>, resolution: usize) -> Self {
        self.p = p;
        self.tau = tau;
        self.resolution = resolution;
        self
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = note;
        self
    }

    /// `|left/right - 1|`.
    pub fn relative_gap(&self) -> f64 {
        fabs(self.left / self.right - 1.0)
    }
}

/// Values of a volume functional over an ascending τ grid.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TauSweep {
    pub taus: Vec<f64>,
    pub values: Vec<f64>,
    pub argmin: usize,
    pub argmax: usize,
    /// `(max - min) / max`.
    pub spread: f64,
    pub constant: bool,
}

impl TauSweep {
    pub fn new(taus: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if taus.is_empty() || taus.len() != values.len() {
            return Err(GeomError::LengthMismatch { expected: taus.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        let mut argmin = 0;
        let mut argmax = 0;
        for (i, v) in values.iter().enumerate() {
            if *v < values[argmin] {
                argmin = i;
            }
            if *v > values[argmax] {
                argmax = i;
            }
        }
        let spread = (values[argmax] - values[argmin]) / fabs(values[argmax]);
        Ok(TauSweep { taus, values, argmin, argmax, spread, constant: spread <= CONSTANT_SWEEP_TOLERANCE })
    }

    pub fn argmin_tau(&self) -> f64 {
        self.taus[self.argmin]
    }

    pub fn argmax_tau(&self) -> f64 {
        self.taus[self.argmax]
    }

    fn value_at(&self, tau: f64) -> Option<f64> {
        self.taus.iter().position(|t| *t == tau).map(|i| self.values[i])
    }

    /// Minimum at `τ = 0`, maximum at an endpoint, nonincreasing on
    /// `[-1, 0]` and nondecreasing on `[0, 1]`, each up to relative `slack`.
    pub fn valley_ordering_holds(&self, slack: f64) -> bool {
        self.ordering(slack, 1.0)
    }

    /// Maximum at `τ = 0`, minimum at an endpoint, monotone away from 0.
    pub fn peak_ordering_holds(&self, slack: f64) -> bool {
        self.ordering(slack, -1.0)
    }

    fn ordering(&self, slack: f64, sign: f64) -> bool {
        let Some(v0) = self.value_at(0.0) else { return false };
        let s: Vec<f64> = self.values.iter().map(|v| sign * v).collect();
        let tol = slack * fabs(v0);
        let v0 = sign * v0;
        let ends = s[0].max(s[s.len() - 1]);
        let bounded = s.iter().all(|v| *v >= v0 - tol && *v <= ends + tol);
        let monotone = self.taus.windows(2).zip(s.windows(2)).all(|(t, v)| {
            if t[1] <= 0.0 {
                v[1] <= v[0] + tol
            } else if t[0] >= 0.0 {
                v[1] >= v[0] - tol
            } else {
                true
            }
        });
        bounded && monotone
    }
}

/// `count` equally spaced values in `[-1, 1]`, symmetric about 0.
pub fn tau_grid(count: usize) -> Vec<f64> {
    if count <= 1 {
        return alloc::vec![0.0];
    }
    let m = (count - 1) as f64;
    (0..count).map(|i| (2.0 * i as f64 - m) / m).collect()
}

fn check_p(p: f64) -> Result<()> {
    OperatorParams::new(p, 0.0).map(|_| ())
}

/// `V(K)^{n/p-1} V(Π_p^{τ,*} K)`.
pub fn petty_value(k: &ConvexBody, params: OperatorParams, grid: &SphereGrid) -> Result<f64> {
    let n = grid.dim() as f64;
    let h = projection_pair(k, params.p, grid)?.support(params.tau);
    Ok(pow(k.volume(grid)?, n / params.p - 1.0) * polar_volume_from_support(&h, grid)?)
}

/// `V(K)^{n/p-1} V(Π_p^{τ,*} K) ≤ κ_n^{n/p}`.
pub fn petty_product(k: &ConvexBody, params: OperatorParams, grid: &SphereGrid) -> Result<InequalityReport> {
    let n = grid.dim();
    let left = petty_value(k, params, grid)?;
    Ok(InequalityReport::less_eq("Lp Petty projection", left, pow(kappa(n), n as f64 / params.p))
        .with_body(k.describe())
        .with_params(Some(params.p), Some(params.tau), grid.resolution()))
}

/// `V(L)^{-n/p-1} V(M_p^τ L) ≥ κ_n^{-n/p}`.
pub fn centroid_product(l: &StarBody, params: OperatorParams, grid: &SphereGrid) -> Result<InequalityReport> {
    let n = grid.dim() as f64;
    let m = moment_pair(l, params.p, grid)?.body(params.tau)?;
    let left = pow(l.volume(grid)?, -n / params.p - 1.0) * m.volume(grid)?;
    Ok(InequalityReport::greater_eq("Lp Busemann-Petty centroid", left, pow(kappa(grid.dim()), -n / params.p))
        .with_body(l.describe())
        .with_params(Some(params.p), Some(params.tau), grid.resolution()))
}

/// `τ ↦ V(Π_p^{τ,*} K)`.
pub fn strongest_pi_sweep(k: &ConvexBody, p: f64, taus: &[f64], grid: &SphereGrid) -> Result<TauSweep> {
    check_p(p)?;
    let pair = projection_pair(k, p, grid)?;
    let values = taus.iter().map(|t| polar_volume_from_support(&pair.support(*t), grid)).collect::<Result<Vec<_>>>()?;
    TauSweep::new(taus.to_vec(), values)
}

/// `τ ↦ V(M_p^τ L)`.
pub fn strongest_m_sweep(l: &StarBody, p: f64, taus: &[f64], grid: &SphereGrid) -> Result<TauSweep> {
    check_p(p)?;
    let pair = moment_pair(l, p, grid)?;
    let values = taus.iter().map(|t| pair.body(*t)?.volume(grid)).collect::<Result<Vec<_>>>()?;
    TauSweep::new(taus.to_vec(), values)
}

/// `V(K) V(K^s) ≤ κ_n^2` with `K^s = (K - s)^*` at the Santaló point `s`.
pub fn santalo_check(k: &ConvexBody, grid: &SphereGrid) -> Result<InequalityReport> {
    let s = santalo_point(k, grid)?;
    let left = k.volume(grid)? * s.polar_volume;
    Ok(InequalityReport::less_eq("Blaschke-Santalo", left, pow(kappa(grid.dim()), 2.0))
        .with_body(k.describe())
        .with_params(None, None, grid.resolution())
        .with_note(format!("santalo point {:?}", s.point)))
}

/// `V(L)^{n/p+1} V((M_p^τ L)^s) ≤ κ_n^{n/p+2}`, combining the centroid and
/// Blaschke–Santaló inequalities.
pub fn corollary_check(l: &StarBody, params: OperatorParams, grid: &SphereGrid) -> Result<InequalityReport> {
    let n = grid.dim() as f64;
    let h = moment_pair(l, params.p, grid)?.support(params.tau);
    let s = santalo_point_from_support(&h, grid)?;
    let left = pow(l.volume(grid)?, n / params.p + 1.0) * s.polar_volume;
    let right = pow(kappa(grid.dim()), n / params.p + 2.0);
    Ok(InequalityReport::less_eq("centroid-Santalo corollary", left, right)
        .with_body(l.describe())
        .with_params(Some(params.p), Some(params.tau), grid.resolution()))
}

/// The three inequalities reducing the Petty problem to the class of
/// moment bodies of polar projection bodies. When `S_p` of the composed body
/// is unavailable only the first is returned.
pub fn class_reduction_check(k: &ConvexBody, params: OperatorParams, grid: &SphereGrid) -> Result<Vec<InequalityReport>> {
    let (p, tau) = (params.p, params.tau);
    let n = grid.dim() as f64;
    let res = grid.resolution();
    let desc = k.describe();
    let h = projection_pair(k, p, grid)?.support(tau);
    let v_q = polar_volume_from_support(&h, grid)?;
    let q = StarBody::sampled(grid.clone(), h.iter().map(|x| 1.0 / x).collect())?;
    let mq = moment_pair(&q, p, grid)?.body(tau)?;
    let (v_k, v_mq) = (k.volume(grid)?, mq.volume(grid)?);
    let mut out = Vec::new();
    out.push(
        InequalityReport::greater_eq("class reduction: V(Q)^n >= V(K)^(n-p) V(M Q)^p", pow(v_q, n), pow(v_k, n - p) * pow(v_mq, p))
            .with_body(desc.clone())
            .with_params(Some(p), Some(tau), res),
    );
    let h2 = match projection_pair(&mq, p, grid) {
        Ok(pair) => pair.support(tau),
        Err(e) => {
            out[0].note = format!("composed body: {e}");
            return Ok(out);
        }
    };
    let v_pmq = polar_volume_from_support(&h2, grid)?;
    out.push(
        InequalityReport::greater_eq(
            "class reduction: V(M L)^n >= V(L)^(n+p) V(Pi* M L)^-p",
            pow(v_mq, n),
            pow(v_q, n + p) * pow(v_pmq, -p),
        )
        .with_body(desc.clone())
        .with_params(Some(p), Some(tau), res),
    );
    out.push(
        InequalityReport::less_eq(
            "class reduction: Petty product increases",
            pow(v_k, n / p - 1.0) * v_q,
            pow(v_mq, n / p - 1.0) * v_pmq,
        )
        .with_body(desc)
        .with_params(Some(p), Some(tau), res),
    );
    Ok(out)
}

/// Whether `a_k[C_p^+]` vanishes: `p` an integer, `k ≥ p + 2` and `k ≡ p`
/// mod 2.
pub fn multiplier_vanishes(p: f64, k: usize) -> bool {
    let kf = k as f64;
    p == libm::round(p) && kf >= p + 2.0 && libm::fmod(kf - p, 2.0) == 0.0
}

/// One report per degree `k ≤ kmax` comparing the estimated multiplier of
/// `C_p^+` with its predicted zero pattern.
pub fn multiplier_reports(p: f64, kmax: usize, grid: &SphereGrid) -> Result<Vec<InequalityReport>> {
    OperatorParams::new(p, 0.0)?;
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let est = estimate_multiplier(grid, |f| cosine_transform_plus_density(f, p, grid), k)?;
        let zero = multiplier_vanishes(p, k);
        let report = if zero {
            InequalityReport::at_most(&format!("multiplier a_{k} is zero"), fabs(est.value), MULTIPLIER_ZERO_TOLERANCE)
        } else {
            InequalityReport::at_least(&format!("multiplier a_{k} is nonzero"), fabs(est.value), MULTIPLIER_ZERO_TOLERANCE)
        };
        out.push(
            report
                .with_params(Some(p), None, grid.resolution())
                .with_note(format!("a_{k} = {:e}, residual {:e}", est.value, est.residual)),
        );
    }
    Ok(out)
}

/// The `p → 1` projection limit and the `p → ∞` moment limit for `K`.
pub fn limit_reports(k: &ConvexBody, grid: &SphereGrid) -> Result<Vec<InequalityReport>> {
    let lim = limit_checks(k, grid)?;
    let res = grid.resolution();
    Ok(alloc::vec![
        InequalityReport::at_most(
            "projection limit: kappa_(n-1) Pi_p^+ K -> Pi K",
            lim.projection_deviation,
            PROJECTION_LIMIT_TOLERANCE,
        )
        .with_body(k.describe())
        .with_params(Some(lim.p_projection), Some(1.0), res),
        InequalityReport::at_most(
            "moment limit: M_p^+ K -> K",
            lim.moment_deviation,
            MOMENT_LIMIT_TOLERANCE * lim.diameter,
        )
        .with_body(k.describe())
        .with_params(Some(lim.p_moment), Some(1.0), res),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_protocol() {
        assert_eq!(InequalityReport::less_eq("t", 1.0, 2.0).verdict, Verdict::Holds);
        assert_eq!(InequalityReport::less_eq("t", 1.0005, 1.0).verdict, Verdict::Equality);
        assert_eq!(InequalityReport::less_eq("t", 1.003, 1.0).verdict, Verdict::ViolatedWithinTolerance);
        assert_eq!(InequalityReport::less_eq("t", 1.1, 1.0).verdict, Verdict::Violated);
        assert_eq!(InequalityReport::greater_eq("t", 0.9995, 1.0).verdict, Verdict::Equality);
        assert_eq!(InequalityReport::greater_eq("t", 0.99, 1.0).verdict, Verdict::Violated);
        assert_eq!(InequalityReport::identity("t", 1.0 + 5e-5, 1.0, 1e-4).verdict, Verdict::Equality);
        assert_eq!(InequalityReport::identity("t", 1.0 + 5e-4, 1.0, 1e-4).verdict, Verdict::Violated);
        assert_eq!(InequalityReport::less_eq("t", f64::NAN, 1.0).verdict, Verdict::Violated);
        assert_eq!(InequalityReport::at_most("t", 0.0, 1e-6).verdict, Verdict::Holds);
        assert_eq!(InequalityReport::at_most("t", 2e-6, 1e-6).verdict, Verdict::Violated);
        assert_eq!(InequalityReport::at_least("t", 0.5, 1e-6).verdict, Verdict::Holds);
        assert_eq!(InequalityReport::at_least("t", f64::NAN, 1e-6).verdict, Verdict::Violated);
    }

    #[test]
    fn multiplier_zero_pattern_prediction() {
        assert!(multiplier_vanishes(2.0, 4));
        assert!(multiplier_vanishes(2.0, 6));
        assert!(!multiplier_vanishes(2.0, 5));
        assert!(!multiplier_vanishes(2.0, 2));
        assert!(multiplier_vanishes(3.0, 5));
        assert!(!multiplier_vanishes(2.5, 8));
    }

    #[test]
    fn tau_grid_is_symmetric() {
        let t = tau_grid(21);
        assert_eq!(t.len(), 21);
        assert_eq!(t[10], 0.0);
        assert_eq!(t[0], -1.0);
        assert_eq!(t[20], 1.0);
        for i in 0..21 {
            assert_eq!(t[i], -t[20 - i]);
        }
    }

    #[test]
    fn sweep_orderings() {
        let taus = tau_grid(5);
        let s = TauSweep::new(taus.clone(), alloc::vec![3.0, 2.0, 1.0, 2.0, 3.0]).unwrap();
        assert!(s.valley_ordering_holds(0.0));
        assert!(!s.peak_ordering_holds(0.0));
        assert_eq!(s.argmin_tau(), 0.0);
        let s = TauSweep::new(taus, alloc::vec![1.0, 2.0, 3.0, 2.0, 1.0]).unwrap();
        assert!(s.peak_ordering_holds(0.0));
        assert!(!s.constant);
    }
}
