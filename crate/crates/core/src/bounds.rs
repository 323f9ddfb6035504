//! Numeric values of the asymptotic bounds.
//!
//! The capset capacity `Θ(C) = limsup C_n^{1/n}` is not known. Everything
//! here that depends on it takes a [`CapacityEstimate`], which is either the
//! Ellenberg–Gijswijt upper bound or a caller-supplied hypothetical value.
//!
//! ```
//! use weak_delta::bounds::{eg_minimize, weak_delta_base, CapacityEstimate};
//!
//! let eg = eg_minimize();
//! assert!((eg.value - 2.7551046).abs() < 1e-7);
//! let base = weak_delta_base(&CapacityEstimate::ellenberg_gijswijt()).unwrap();
//! assert!((base.value - 1.8367).abs() < 1e-4);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Objective of the Ellenberg–Gijswijt bound: `t^{-2/3} (1 + t + t^2)`.
pub fn eg_objective(t: f64) -> f64 {
    t.powf(-2.0 / 3.0) * (1.0 + t + t * t)
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`, stopping
/// once the bracket is narrower than `tol`.
pub fn golden_section_minimize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// The minimizer of [`eg_objective`] on `(0, 1)`, found two ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EgMinimum {
    /// Root of the stationarity condition `4t^2 + t - 2 = 0`.
    pub t_star: f64,
    pub value: f64,
    /// Derivative-free golden-section estimate.
    pub t_numeric: f64,
    pub value_numeric: f64,
}

/// Evaluates `min_{0<t<1} t^{-2/3}(1+t+t^2)` in closed form and by
/// golden-section search.
pub fn eg_minimize() -> EgMinimum {
    // f'(t) = t^{-5/3} (4t^2 + t - 2) / 3.
    let t_star = (33f64.sqrt() - 1.0) / 8.0;
    let (t_numeric, value_numeric) = golden_section_minimize(eg_objective, 1e-9, 1.0 - 1e-9, 1e-12);
    EgMinimum { t_star, value: eg_objective(t_star), t_numeric, value_numeric }
}

/// What to use for the capset capacity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityEstimate {
    /// The Ellenberg–Gijswijt upper bound on `Θ(C)`.
    pub theta_upper: f64,
    /// A hypothetical capacity supplied by the caller.
    pub user_override: Option<f64>,
}

impl CapacityEstimate {
    pub fn ellenberg_gijswijt() -> Self {
        Self { theta_upper: eg_minimize().value, user_override: None }
    }

    /// Uses `theta` instead of the upper bound; it must lie in `(1, 3]`.
    pub fn with_override(theta: f64) -> Result<Self> {
        if !(theta > 1.0 && theta <= 3.0) {
            return Err(Error::InvalidTheta(theta));
        }
        Ok(Self { user_override: Some(theta), ..Self::ellenberg_gijswijt() })
    }

    pub fn theta(&self) -> f64 {
        self.user_override.unwrap_or(self.theta_upper)
    }

    fn label(&self) -> &'static str {
        if self.user_override.is_some() {
            "hypothetical capacity"
        } else {
            "Ellenberg–Gijswijt upper bound on the capacity"
        }
    }

    fn validate(&self) -> Result<()> {
        match self.user_override {
            Some(t) if !(t > 1.0 && t <= 3.0) => Err(Error::InvalidTheta(t)),
            _ => Ok(()),
        }
    }
}

impl Default for CapacityEstimate {
    fn default() -> Self {
        Self::ellenberg_gijswijt()
    }
}

/// A named numeric bound with enough context to re-derive it.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub formula: String,
    pub provenance: String,
    pub inputs: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(name: &str, value: f64, formula: &str, provenance: &str) -> Self {
        Self {
            name: name.into(),
            value,
            formula: formula.into(),
            provenance: provenance.into(),
            inputs: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &str, value: f64) -> Self {
        self.inputs.insert(key.into(), value);
        self
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28} {:>18.10}  {}  [{}]", self.name, self.value, self.formula, self.provenance)
    }
}

/// The Ellenberg–Gijswijt bound as a report.
pub fn eg_bound() -> BoundReport {
    let eg = eg_minimize();
    BoundReport::new(
        "capset capacity bound",
        eg.value,
        "min_{0<t<1} t^(-2/3) (1 + t + t^2)",
        "Ellenberg–Gijswijt capset bound",
    )
    .input("t_star", eg.t_star)
}

/// Growth base `3 / 2^{2/3}` of the sunflower-free bound for 3-sets.
pub fn sunflower_base() -> BoundReport {
    BoundReport::new(
        "sunflower-free base",
        3.0 * 2f64.powf(-2.0 / 3.0),
        "3 / 2^(2/3)",
        "slice-rank bound for sunflower-free families",
    )
}

/// `(1/4) (207 + 33 sqrt 33)^{1/3}`, the closed form of `(2/3)` times the
/// Ellenberg–Gijswijt value.
pub fn weak_delta_closed_form() -> f64 {
    0.25 * (207.0 + 33.0 * 33f64.sqrt()).cbrt()
}

/// Growth base `(2/3) Θ(C)` for families without a weak Δ-system of size 3.
pub fn weak_delta_base(cap: &CapacityEstimate) -> Result<BoundReport> {
    cap.validate()?;
    Ok(BoundReport::new("weak Δ-system-free base", 2.0 / 3.0 * cap.theta(), "(2/3) theta", cap.label())
        .input("theta", cap.theta()))
}

/// Growth base of the middle slice `|B_{n/3}|^{1/n} -> 3 / 2^{2/3}`.
pub fn slice_base() -> BoundReport {
    BoundReport::new(
        "slice base",
        3.0 * 2f64.powf(-2.0 / 3.0),
        "lim binomial(n, n/3)^(1/n) = 3 / 2^(2/3)",
        "entropy of the weight-n/3 slice",
    )
}

/// `binomial(n, k)`, the size of the weight-`k` slice of `{0,1}^n`.
pub fn slice_size_exact(n: u32, k: u32) -> Result<u128> {
    if k > n {
        return Err(Error::Range(format!("weight {k} exceeds dimension {n}")));
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc =
            acc.checked_mul(u128::from(n - i)).ok_or_else(|| Error::Range(format!("binomial({n}, {k}) overflows")))?
                / u128::from(i + 1);
    }
    Ok(acc)
}

/// `theta^n / 2^{n-k}`: bound on sunflower-free subsets of the weight-`k` slice.
pub fn slice_sunflower_bound(n: u32, k: u32, cap: &CapacityEstimate) -> Result<BoundReport> {
    cap.validate()?;
    if k > n {
        return Err(Error::Range(format!("weight {k} exceeds dimension {n}")));
    }
    let theta = cap.theta();
    Ok(BoundReport::new(
        "sunflower-free slice bound",
        theta.powi(n as i32) / 2f64.powi((n - k) as i32),
        "theta^n / 2^(n-k)",
        cap.label(),
    )
    .input("n", n as f64)
    .input("k", k as f64)
    .input("theta", theta))
}

/// The finite chain at `k = floor(n/3)`: the density bound
/// `slice_sunflower_bound(n, k) / binomial(n, k)` and the resulting size bound
/// `2^n` times that density. The asymptotic base is `(2/3) theta`.
pub fn delta_bound_chain(n: u32, cap: &CapacityEstimate) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::Range("the chain needs n >= 1".into()));
    }
    let k = n / 3;
    let slice_bound = slice_sunflower_bound(n, k, cap)?.value;
    let slice = slice_size_exact(n, k)? as f64;
    let density = slice_bound / slice;
    Ok(BoundReport::new(
        "equilateral-free size bound",
        2f64.powi(n as i32) * density,
        "2^n * theta^n / (2^(n-k) * binomial(n, k)), k = floor(n/3)",
        cap.label(),
    )
    .input("n", n as f64)
    .input("k", k as f64)
    .input("theta", cap.theta())
    .input("density_bound", density)
    .input("asymptotic_base", 2.0 / 3.0 * cap.theta()))
}

/// `n^{ln n / (4 ln ln n)}`, natural logarithms.
pub fn es_lower(n: f64) -> Result<f64> {
    if n.is_nan() || n < 3.0 {
        return Err(Error::Range(format!("es_lower needs n >= 3, got {n}")));
    }
    Ok(es_lower_ln(n)?.exp())
}

/// Natural log of [`es_lower`], usable where the value itself overflows.
pub fn es_lower_ln(n: f64) -> Result<f64> {
    if n.is_nan() || n < 3.0 {
        return Err(Error::Range(format!("es_lower needs n >= 3, got {n}")));
    }
    let ln = n.ln();
    Ok(ln * ln / (4.0 * ln.ln()))
}

/// `k^{c (n ln n)^{1/3}}`, natural logarithm.
pub fn kr_lower(n: f64, k: f64, c: f64) -> Result<f64> {
    if [n, k, c].iter().any(|v| v.is_nan()) || n < 1.0 || k < 3.0 || c <= 0.0 {
        return Err(Error::Range(format!("kr_lower needs n >= 1, k >= 3, c > 0; got {n}, {k}, {c}")));
    }
    Ok(k.powf(c * (n * n.ln()).cbrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eg_closed_form_and_numeric_agree() {
        let eg = eg_minimize();
        assert!((eg.value - eg.value_numeric).abs() < 1e-10);
        assert!((eg.t_star - eg.t_numeric).abs() < 1e-6);
        assert!((4.0 * eg.t_star * eg.t_star + eg.t_star - 2.0).abs() < 1e-12);
        assert_eq!(format!("{:.7}", eg.value), "2.7551046");
        for t in [0.1, 0.3, 0.9] {
            assert!(eg_objective(t) > eg.value);
        }
    }

    #[test]
    fn eg_stationarity_by_finite_difference() {
        let t = eg_minimize().t_star;
        let h = 1e-6;
        let slope = (eg_objective(t + h) - eg_objective(t - h)) / (2.0 * h);
        assert!(slope.abs() < 1e-8, "{slope}");
    }

    #[test]
    fn golden_section_on_a_parabola() {
        let (x, fx) = golden_section_minimize(|x| (x - 0.3) * (x - 0.3) + 1.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sunflower_base_cube() {
        let b = sunflower_base().value;
        assert!((b.powi(3) - 27.0 / 4.0).abs() < 1e-12);
        assert!(format!("{b:.12}").starts_with("1.889881"));
    }

    #[test]
    fn weak_delta_base_values() {
        let base = weak_delta_base(&CapacityEstimate::default()).unwrap().value;
        assert!((base - weak_delta_closed_form()).abs() < 1e-9);
        assert!(format!("{base:.10}").starts_with("1.8367"));
        let three = weak_delta_base(&CapacityEstimate::with_override(3.0).unwrap()).unwrap();
        assert_eq!(three.value, 2.0);
        assert!(CapacityEstimate::with_override(3.5).is_err());
        assert!(CapacityEstimate::with_override(1.0).is_err());
        assert!(CapacityEstimate::with_override(f64::NAN).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(slice_size_exact(4, 2).unwrap(), 6);
        for n in 0..20 {
            assert_eq!(slice_size_exact(n, 0).unwrap(), 1);
        }
        assert_eq!(slice_size_exact(30, 10).unwrap(), 30_045_015);
        assert_eq!(slice_size_exact(100, 50).unwrap(), 100_891_344_545_564_193_334_812_497_256);
        assert!(slice_size_exact(3, 4).is_err());
        assert!(slice_size_exact(200, 100).is_err());
    }

    #[test]
    fn slice_growth_approaches_base() {
        // Frozen from an independent big-integer evaluation of binomial(n, n/3)^(1/n).
        let expected = [(30, 1.77524819945947), (60, 1.8212661647741433), (90, 1.839740954451788)];
        let base = slice_base().value;
        let mut last_ratio = 0.0;
        for (n, value) in expected {
            let got = (slice_size_exact(n, n / 3).unwrap() as f64).powf(1.0 / n as f64);
            assert!((got - value).abs() < 1e-12, "{n}: {got}");
            assert!(got < base);
            let ratio = got / base;
            assert!(ratio > last_ratio);
            last_ratio = ratio;
        }
    }

    #[test]
    fn slice_sunflower_bound_values() {
        let cap = CapacityEstimate::default();
        let full = slice_sunflower_bound(5, 5, &cap).unwrap().value;
        assert!((full - cap.theta().powi(5)).abs() < 1e-12);
        let two = CapacityEstimate::with_override(2.0).unwrap();
        assert_eq!(slice_sunflower_bound(2, 1, &two).unwrap().value, 2.0);
        assert!(slice_sunflower_bound(2, 3, &cap).is_err());
    }

    #[test]
    fn delta_chain() {
        let cap = CapacityEstimate::with_override(2.7551046).unwrap();
        let r = delta_bound_chain(3, &cap).unwrap();
        // n = 3, k = 1: 2^3 * theta^3 / (2^2 * 3).
        let direct = 8.0 * 2.7551046f64.powi(3) / (4.0 * 3.0);
        assert!((r.value - direct).abs() < 1e-12);
        assert!((r.inputs["density_bound"] - 2.7551046f64.powi(3) / 12.0).abs() < 1e-12);
        assert!((r.inputs["asymptotic_base"] - weak_delta_base(&cap).unwrap().value).abs() < 1e-15);

        let lower = CapacityEstimate::with_override(2.5).unwrap();
        for n in 1..=30 {
            assert!(delta_bound_chain(n, &lower).unwrap().value < delta_bound_chain(n, &cap).unwrap().value);
        }
        assert!(delta_bound_chain(0, &cap).is_err());
    }

    #[test]
    fn chain_base_tends_to_weak_delta_base() {
        let cap = CapacityEstimate::default();
        let target = weak_delta_base(&cap).unwrap().value;
        let root = |n: u32| delta_bound_chain(n, &cap).unwrap().value.powf(1.0 / n as f64);
        let errors: Vec<f64> = [30, 60, 90].iter().map(|&n| (root(n) - target).abs()).collect();
        assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    }

    #[test]
    fn lower_bound_formulas() {
        assert!(es_lower(2.0).is_err());
        // The exponent ln n / (4 ln ln n) exceeds 3 only for very large n;
        // at n = e^60 the value already beats n^3.
        let n = 60f64.exp();
        assert!(es_lower_ln(n).unwrap() > 3.0 * n.ln());
        let at_million = es_lower(1e6).unwrap();
        assert!((at_million / 78_018_308.529_613_52 - 1.0).abs() < 1e-9);
        assert!(at_million > 1e6);

        let mut last = 0.0;
        for c in [0.1, 0.2, 0.5, 1.0] {
            let v = kr_lower(1000.0, 3.0, c).unwrap();
            assert!(v > last);
            last = v;
        }
        let mut last = 0.0;
        for n in [10.0, 100.0, 1000.0] {
            let v = kr_lower(n, 3.0, 0.5).unwrap();
            assert!(v > last);
            last = v;
        }
        assert!(kr_lower(10.0, 3.0, 0.0).is_err());
    }
}
