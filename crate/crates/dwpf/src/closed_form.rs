//! The factorized closed forms of the two domain-wall partition functions,
//! and the right-hand sides of the recursion relations that characterize
//! them.
//!
//! For the N-state family:
//!
//! ```text
//! Z = prod_{j=1..L} [ e^{(N-1) j (u_j - v_j)}
//!                     prod_{k=1..N-1} sqrt(1 - rho^{k-1} alpha_j^2)
//!                                     sqrt(1 - rho^{k-1} beta_j^2) ]
//!   * prod_{i<j} prod_{k=1..N-1} (1 - rho^{k-1} alpha_i alpha_j e^{u_i-u_j})
//!                                (1 - rho^{k-1} beta_j beta_i e^{v_j-v_i})
//! ```
//!
//! For the graded family:
//!
//! ```text
//! Z = prod_k e^{eta (u_k - v_k)}
//!   * prod_{i<j} [sinh(eta(1-(u_i-u_j)))/sinh(eta)]
//!                [sinh(eta(1-(v_j-v_i)))/sinh(eta)]
//! ```
//!
//! Each evaluator also returns its factor list so a failed comparison can be
//! traced to the factor that went wrong.

use num_complex::Complex64;
use thiserror::Error;

use crate::lattice::{DaParams, PsParams};
use crate::numerics::{principal_sqrt as sq, RootOfUnity, TolerancePolicy};
use crate::ps;

#[derive(Debug, Error)]
pub enum ClosedFormError {
    #[error("parameter arrays are inconsistent: {0}")]
    BadParams(#[from] crate::lattice::EngineError),
    #[error(
        "recursion point not satisfied: |{lhs} - {rhs}| = {diff:e} exceeds the tolerance margin {margin:e}"
    )]
    RecursionPointViolated {
        lhs: Complex64,
        rhs: Complex64,
        diff: f64,
        margin: f64,
    },
    #[error("recursion needs L >= 1, got empty parameters")]
    Empty,
}

/// A value together with the labelled factors whose product it is.
#[derive(Clone, Debug)]
pub struct FactorizedValue {
    pub value: Complex64,
    pub factors: Vec<(String, Complex64)>,
}

impl FactorizedValue {
    fn from_factors(factors: Vec<(String, Complex64)>) -> Self {
        let value = factors.iter().fold(Complex64::new(1.0, 0.0), |acc, (_, f)| acc * f);
        Self { value, factors }
    }

    /// Recomputes the product of the logged factors (diagnostic invariant).
    pub fn product_of_factors(&self) -> Complex64 {
        self.factors.iter().fold(Complex64::new(1.0, 0.0), |acc, (_, f)| acc * f)
    }
}

/// Factorized partition function of the N-state family, `N = rho.order()`.
pub fn dwpf_factorized_da(
    params: &DaParams,
    rho: &RootOfUnity,
) -> Result<FactorizedValue, ClosedFormError> {
    params.validate()?;
    let l = params.len();
    let n = rho.order();
    let mut factors = Vec::new();
    for j in 0..l {
        let exponent = (params.u[j] - params.v[j]) * ((n - 1) as f64 * (j + 1) as f64);
        factors.push((format!("exp[j={}]", j + 1), exponent.exp()));
        for k in 1..n {
            let rk = rho.pow(k - 1);
            factors.push((
                format!("alpha-root[j={},k={k}]", j + 1),
                sq(1.0 - rk * params.alpha[j] * params.alpha[j]),
            ));
            factors.push((
                format!("beta-root[j={},k={k}]", j + 1),
                sq(1.0 - rk * params.beta[j] * params.beta[j]),
            ));
        }
    }
    for i in 0..l {
        for j in (i + 1)..l {
            for k in 1..n {
                let rk = rho.pow(k - 1);
                factors.push((
                    format!("uu[i={},j={},k={k}]", i + 1, j + 1),
                    1.0 - rk * params.alpha[i] * params.alpha[j] * (params.u[i] - params.u[j]).exp(),
                ));
                factors.push((
                    format!("vv[i={},j={},k={k}]", i + 1, j + 1),
                    1.0 - rk * params.beta[j] * params.beta[i] * (params.v[j] - params.v[i]).exp(),
                ));
            }
        }
    }
    Ok(FactorizedValue::from_factors(factors))
}

/// Factorized partition function of the graded family. Independent of
/// `(r, s)`: only the corner weight and the all-minimal diagonal weight
/// enter.
pub fn dwpf_factorized_ps(
    params: &PsParams,
    eta: Complex64,
) -> Result<FactorizedValue, ClosedFormError> {
    params.validate()?;
    let l = params.len();
    let mut factors = Vec::new();
    for k in 0..l {
        factors.push((
            format!("corner[k={}]", k + 1),
            ps::c_plus(eta, params.u[k] - params.v[k]),
        ));
    }
    for i in 0..l {
        for j in (i + 1)..l {
            factors.push((
                format!("uu[i={},j={}]", i + 1, j + 1),
                ps::a_plus(eta, params.u[i] - params.u[j]),
            ));
            factors.push((
                format!("vv[i={},j={}]", i + 1, j + 1),
                ps::a_plus(eta, params.v[j] - params.v[i]),
            ));
        }
    }
    Ok(FactorizedValue::from_factors(factors))
}

/// Right-hand side of the N-state recursion at the freezing point
/// `e^{u_1} = (beta_L / alpha_1) e^{v_L}`:
///
/// ```text
/// (beta_L/alpha_1)^{N-1}
///   prod_{j=1..N-1} sqrt(1 - rho^{j-1} alpha_1^2) sqrt(1 - rho^{j-1} beta_L^2)
///   prod_{j=1..N-1} [ prod_{k=1..L-1} (1 - rho^{j-1} beta_L beta_k e^{v_L - v_k})
///                     prod_{k=2..L}   (e^{u_k - v_L} - rho^{j-1} alpha_k beta_L) ]
///   * reduced_z
/// ```
///
/// `reduced_z` is the (L-1) x (L-1) partition function with `u_1, alpha_1,
/// v_L, beta_L` removed (pass 1 for L = 1). The precondition is checked to
/// tolerance and violated points are an error.
pub fn da_recursion_rhs(
    params: &DaParams,
    rho: &RootOfUnity,
    reduced_z: Complex64,
    policy: &TolerancePolicy,
) -> Result<Complex64, ClosedFormError> {
    params.validate()?;
    let l = params.len();
    let n = rho.order();
    let alpha1 = params.alpha[0];
    let beta_l = params.beta[l - 1];

    let lhs = alpha1 * params.u[0].exp();
    let rhs = beta_l * params.v[l - 1].exp();
    let margin = policy.margin(lhs.norm().max(rhs.norm()));
    if (lhs - rhs).norm() > margin {
        return Err(ClosedFormError::RecursionPointViolated {
            lhs,
            rhs,
            diff: (lhs - rhs).norm(),
            margin,
        });
    }

    let ratio = beta_l / alpha1;
    let mut acc = ratio.powi(n as i32 - 1);
    for j in 1..n {
        let rj = rho.pow(j - 1);
        acc *= sq(1.0 - rj * alpha1 * alpha1) * sq(1.0 - rj * beta_l * beta_l);
    }
    for j in 1..n {
        let rj = rho.pow(j - 1);
        for k in 0..(l - 1) {
            acc *= 1.0 - rj * beta_l * params.beta[k] * (params.v[l - 1] - params.v[k]).exp();
        }
        for k in 1..l {
            acc *= (params.u[k] - params.v[l - 1]).exp() - rj * params.alpha[k] * beta_l;
        }
    }
    Ok(acc * reduced_z)
}

/// Right-hand side of the graded recursion at the freezing point `u_1 = v_L`:
///
/// ```text
/// R(0) * prod_{j=1..L-1} a_plus(v_L - v_j) * prod_{j=2..L} a_minus(u_j - v_L)
///      * reduced_z
/// ```
///
/// with `R(0) = 1` the corner weight at zero. The precondition is checked via
/// `sinh(eta(u_1 - v_L))`, which also accepts points shifted by the period of
/// the weights.
pub fn ps_recursion_rhs(
    params: &PsParams,
    eta: Complex64,
    reduced_z: Complex64,
    policy: &TolerancePolicy,
) -> Result<Complex64, ClosedFormError> {
    params.validate()?;
    let l = params.len();
    let diff = (eta * (params.u[0] - params.v[l - 1])).sinh();
    let margin = policy.margin(1.0);
    if diff.norm() > margin {
        return Err(ClosedFormError::RecursionPointViolated {
            lhs: params.u[0],
            rhs: params.v[l - 1],
            diff: diff.norm(),
            margin,
        });
    }
    let mut acc = ps::c_plus(eta, Complex64::ZERO);
    for j in 0..(l - 1) {
        acc *= ps::a_plus(eta, params.v[l - 1] - params.v[j]);
    }
    for j in 1..l {
        acc *= ps::a_minus(eta, params.u[j] - params.v[l - 1]);
    }
    Ok(acc * reduced_z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{approx_eq, root_of_unity};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(l: usize) -> DaParams {
        let seq = |k: usize, scale: f64, off: f64| {
            c(
                scale * (0.19 + 0.13 * k as f64) - off,
                scale * (0.11 - 0.05 * k as f64),
            )
        };
        DaParams {
            u: (0..l).map(|k| seq(k, 1.0, 0.3)).collect(),
            v: (0..l).map(|k| seq(k + 2, 0.8, 0.6)).collect(),
            alpha: (0..l).map(|k| seq(k + 1, 0.5, 0.15)).collect(),
            beta: (0..l).map(|k| seq(k + 3, 0.4, 0.05)).collect(),
        }
    }

    #[test]
    fn one_by_one_reduces_to_corner_formula() {
        let policy = TolerancePolicy::default();
        for n in [2u32, 3, 4] {
            let rho = root_of_unity(1, n).unwrap();
            let p = params(1);
            let z = dwpf_factorized_da(&p, &rho).unwrap();
            let mut expect = ((p.u[0] - p.v[0]) * (n - 1) as f64).exp();
            for j in 1..n {
                let rj = rho.pow(j - 1);
                expect *= sq(1.0 - rj * p.alpha[0] * p.alpha[0]);
                expect *= sq(1.0 - rj * p.beta[0] * p.beta[0]);
            }
            assert!(approx_eq(z.value, expect, expect.norm(), &policy), "N={n}");
        }
    }

    #[test]
    fn value_equals_product_of_logged_factors() {
        let policy = TolerancePolicy::default();
        let rho = root_of_unity(1, 3).unwrap();
        let z = dwpf_factorized_da(&params(3), &rho).unwrap();
        assert!(approx_eq(z.value, z.product_of_factors(), z.value.norm(), &policy));
        assert_eq!(z.factors.len(), 3 + 3 * 2 * 2 + 3 * 2 * 2);
    }

    #[test]
    fn da_zero_point_kills_the_value_exactly() {
        // At e^{u_1} = e^{u_2} / (rho^{k-1} alpha_1 alpha_2) one uu factor is
        // an exact difference of equal numbers.
        let rho = root_of_unity(1, 2).unwrap();
        let mut p = params(2);
        p.u[0] = (p.u[1].exp() / (p.alpha[0] * p.alpha[1])).ln();
        let z = dwpf_factorized_da(&p, &rho).unwrap();
        let scale: f64 = z
            .factors
            .iter()
            .map(|(_, f)| f.norm())
            .fold(1.0, |acc, m| acc.max(m));
        assert!(z.value.norm() <= 1e-12 * scale);
    }

    #[test]
    fn ps_one_by_one_and_zero() {
        let policy = TolerancePolicy::default();
        let eta = c(1.0, 0.0);
        let p = PsParams {
            u: vec![c(0.7, 0.2)],
            v: vec![c(0.1, -0.3)],
        };
        let z = dwpf_factorized_ps(&p, eta).unwrap();
        let expect = (eta * (p.u[0] - p.v[0])).exp();
        assert!(approx_eq(z.value, expect, expect.norm(), &policy));

        // u_1 = u_2 + 1 makes the uu factor sinh(0).
        let p = PsParams {
            u: vec![c(1.4, 0.2), c(0.4, 0.2)],
            v: vec![c(0.1, 0.0), c(0.5, -0.1)],
        };
        let z = dwpf_factorized_ps(&p, eta).unwrap();
        assert!(z.value.norm() <= 1e-12);
    }

    #[test]
    fn recursion_rhs_rejects_off_point_params() {
        let rho = root_of_unity(1, 2).unwrap();
        let policy = TolerancePolicy::default();
        let p = params(2);
        assert!(matches!(
            da_recursion_rhs(&p, &rho, Complex64::new(1.0, 0.0), &policy),
            Err(ClosedFormError::RecursionPointViolated { .. })
        ));
        let p = PsParams {
            u: vec![c(0.9, 0.0), c(0.3, 0.0)],
            v: vec![c(0.2, 0.0), c(0.4, 0.0)],
        };
        assert!(matches!(
            ps_recursion_rhs(&p, c(1.0, 0.0), Complex64::new(1.0, 0.0), &policy),
            Err(ClosedFormError::RecursionPointViolated { .. })
        ));
    }

    #[test]
    fn recursion_rhs_at_l1_matches_corner_formula() {
        // With L = 1 the products are empty: the right-hand side is the
        // 1 x 1 value at the substitution point.
        let policy = TolerancePolicy::default();
        for n in [2u32, 3, 4] {
            let rho = root_of_unity(1, n).unwrap();
            let mut p = params(1);
            p.u[0] = (p.beta[0] / p.alpha[0] * p.v[0].exp()).ln();
            let rhs = da_recursion_rhs(&p, &rho, Complex64::new(1.0, 0.0), &policy).unwrap();
            let direct = dwpf_factorized_da(&p, &rho).unwrap().value;
            assert!(
                approx_eq(rhs, direct, rhs.norm().max(direct.norm()), &policy),
                "N={n}: {rhs} vs {direct}"
            );
        }

        let eta = c(0.9, 0.1);
        let p = PsParams {
            u: vec![c(0.25, -0.4)],
            v: vec![c(0.25, -0.4)],
        };
        let rhs = ps_recursion_rhs(&p, eta, Complex64::new(1.0, 0.0), &policy).unwrap();
        assert!(approx_eq(rhs, c(1.0, 0.0), 1.0, &policy));
    }

    #[test]
    fn factorized_recursion_self_consistency() {
        // The factorized form evaluated at the freezing point equals its own
        // recursion right-hand side built from the factorized reduced value.
        let policy = TolerancePolicy::default();
        for n in [2u32, 3, 4] {
            let rho = root_of_unity(1, n).unwrap();
            for l in [2usize, 3] {
                let mut p = params(l);
                p.u[0] = (p.beta[l - 1] / p.alpha[0] * p.v[l - 1].exp()).ln();
                let full = dwpf_factorized_da(&p, &rho).unwrap().value;
                let reduced = dwpf_factorized_da(&p.reduced(), &rho).unwrap().value;
                let rhs = da_recursion_rhs(&p, &rho, reduced, &policy).unwrap();
                assert!(
                    approx_eq(full, rhs, full.norm().max(rhs.norm()), &policy),
                    "N={n} L={l}: {full} vs {rhs}"
                );
            }
        }

        let eta = c(1.1, -0.2);
        for l in [2usize, 3, 4] {
            let mut p = PsParams {
                u: (0..l).map(|k| c(0.3 + 0.2 * k as f64, 0.1 - 0.07 * k as f64)).collect(),
                v: (0..l).map(|k| c(0.05 * k as f64 - 0.2, 0.03 * k as f64)).collect(),
            };
            p.u[0] = p.v[l - 1];
            let full = dwpf_factorized_ps(&p, eta).unwrap().value;
            let reduced = dwpf_factorized_ps(&p.reduced(), eta).unwrap().value;
            let rhs = ps_recursion_rhs(&p, eta, reduced, &policy).unwrap();
            assert!(
                approx_eq(full, rhs, full.norm().max(rhs.norm()), &policy),
                "L={l}: {full} vs {rhs}"
            );
        }
    }
}
