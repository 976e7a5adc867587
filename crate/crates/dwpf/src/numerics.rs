//! Complex scalar utilities shared by the weight tables, the lattice engines
//! and the verification checks: roots of unity, the principal square root
//! convention, the tolerance policy, and polynomial degree extraction by
//! interpolation.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("root of unity requires order >= 2, got {0}")]
    OrderTooSmall(u32),
    #[error("root of unity index must satisfy 1 <= n < N, got n={index}, N={order}")]
    IndexOutOfRange { index: u32, order: u32 },
    #[error("root of unity index {index} is not coprime with order {order}")]
    NotCoprime { index: u32, order: u32 },
    #[error("degree interpolation needs at least {needed} samples (max_degree {max_degree} + 2), got {got}")]
    TooFewSamples {
        needed: usize,
        got: usize,
        max_degree: usize,
    },
    #[error("repeated sample point at positions {0} and {1}")]
    RepeatedSamplePoint(usize, usize),
    #[error("interpolation system is singular; sample points are too close to each other")]
    SingularSystem,
}

/// Relative/absolute tolerance pair used throughout the crate.
///
/// A comparison at magnitude reference `scale` accepts any difference up to
/// `max(rel_tol * scale, abs_floor)`. Callers compute `scale` as the largest
/// magnitude among the summands or values being compared.
#[derive(Clone, Copy, Debug)]
pub struct TolerancePolicy {
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        // rel_tol covers the ~6 digits that a desk-scale contraction of
        // N^(2L^2) terms can lose in double precision.
        Self {
            rel_tol: 1e-9,
            abs_floor: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rel_tol: f64, abs_floor: f64) -> Self {
        assert!(rel_tol > 0.0 && abs_floor > 0.0, "tolerances must be positive");
        Self { rel_tol, abs_floor }
    }

    /// Acceptable absolute difference at the given magnitude reference.
    pub fn margin(&self, scale: f64) -> f64 {
        f64::max(self.rel_tol * scale, self.abs_floor)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self::new(rel_tol, self.abs_floor)
    }
}

/// `true` iff `|a - b| <= max(rel_tol * scale, abs_floor)`.
pub fn approx_eq(a: Complex64, b: Complex64, scale: f64, policy: &TolerancePolicy) -> bool {
    (a - b).norm() <= policy.margin(scale)
}

/// A primitive N-th root of unity `e^{2 pi i n / N}` with `gcd(n, N) = 1`.
#[derive(Clone, Copy, Debug)]
pub struct RootOfUnity {
    index: u32,
    order: u32,
    value: Complex64,
}

impl RootOfUnity {
    /// `n` in the exponent.
    pub fn index(&self) -> u32 {
        self.index
    }

    /// `N`: the order of the root.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// `rho^k`, computed from the reduced angle rather than by repeated
    /// multiplication so that high powers stay on the unit circle.
    pub fn pow(&self, k: u32) -> Complex64 {
        let m = (u64::from(self.index) * u64::from(k)) % u64::from(self.order);
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / f64::from(self.order))
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Constructs `e^{2 pi i n / N}`, rejecting non-coprime `(n, N)`.
pub fn root_of_unity(index: u32, order: u32) -> Result<RootOfUnity, NumericsError> {
    if order < 2 {
        return Err(NumericsError::OrderTooSmall(order));
    }
    if index == 0 || index >= order {
        return Err(NumericsError::IndexOutOfRange { index, order });
    }
    if gcd(index, order) != 1 {
        return Err(NumericsError::NotCoprime { index, order });
    }
    let value = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(index) / f64::from(order));
    Ok(RootOfUnity { index, order, value })
}

/// Principal square root: the branch with argument in (-pi/2, pi/2].
///
/// A negative-zero imaginary part is treated as +0 so that exactly-negative
/// real inputs land on the +i side of the cut.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = if z.im == 0.0 { Complex64::new(z.re, 0.0) } else { z };
    z.sqrt()
}

/// Interpolation nodes on a circle: `radius * e^{i(phase + 2 pi k / count)}`.
///
/// Equispaced nodes on a circle make the Vandermonde system of
/// [`interpolate_degree`] perfectly conditioned; the random global phase
/// avoids accidental alignment with structure of the sampled function.
pub fn interpolation_nodes(count: usize, radius: f64, phase: f64) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            Complex64::from_polar(
                radius,
                phase + 2.0 * std::f64::consts::PI * k as f64 / count as f64,
            )
        })
        .collect()
}

/// Effective polynomial degree of the sampled function.
///
/// Fits the full interpolating polynomial through all samples and returns the
/// largest coefficient index whose magnitude exceeds
/// `max(rel_tol * max_coefficient, abs_floor)`; every coefficient above the
/// returned index is below that threshold. Requires at least `max_degree + 2`
/// samples so that a function of degree `max_degree + 1` or more cannot alias
/// into an exact fit.
pub fn interpolate_degree(
    samples: &[(Complex64, Complex64)],
    max_degree: usize,
    policy: &TolerancePolicy,
) -> Result<usize, NumericsError> {
    let coeffs = interpolate_coefficients(samples, max_degree)?;
    let cmax = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if cmax <= policy.abs_floor {
        return Ok(0);
    }
    let threshold = policy.margin(cmax);
    Ok(coeffs
        .iter()
        .enumerate()
        .rev()
        .find(|(_, c)| c.norm() > threshold)
        .map_or(0, |(k, _)| k))
}

/// Coefficients (ascending degree) of the unique polynomial of degree
/// `samples.len() - 1` through the samples.
pub fn interpolate_coefficients(
    samples: &[(Complex64, Complex64)],
    max_degree: usize,
) -> Result<Vec<Complex64>, NumericsError> {
    let m = samples.len();
    let needed = max_degree + 2;
    if m < needed {
        return Err(NumericsError::TooFewSamples {
            needed,
            got: m,
            max_degree,
        });
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if samples[i].0 == samples[j].0 {
                return Err(NumericsError::RepeatedSamplePoint(i, j));
            }
        }
    }

    // Vandermonde solve by Gaussian elimination with partial pivoting. The
    // systems here are tiny (tens of nodes) and the default nodes sit on a
    // circle, so no fancier factorization is warranted.
    let mut a: Vec<Complex64> = Vec::with_capacity(m * m);
    for &(t, _) in samples {
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..m {
            a.push(p);
            p *= t;
        }
    }
    let mut rhs: Vec<Complex64> = samples.iter().map(|&(_, f)| f).collect();

    let scale0 = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for col in 0..m {
        let pivot_row = (col..m)
            .max_by(|&i, &j| {
                a[i * m + col]
                    .norm()
                    .partial_cmp(&a[j * m + col].norm())
                    .unwrap()
            })
            .unwrap();
        if a[pivot_row * m + col].norm() <= 1e-14 * scale0 {
            return Err(NumericsError::SingularSystem);
        }
        if pivot_row != col {
            for k in 0..m {
                a.swap(col * m + k, pivot_row * m + k);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = a[col * m + col];
        for row in (col + 1)..m {
            let factor = a[row * m + col] / pivot;
            if factor == Complex64::ZERO {
                continue;
            }
            for k in col..m {
                let v = a[col * m + k];
                a[row * m + k] -= factor * v;
            }
            let r = rhs[col];
            rhs[row] -= factor * r;
        }
    }
    for col in (0..m).rev() {
        let mut acc = rhs[col];
        for k in (col + 1)..m {
            acc -= a[col * m + k] * rhs[k];
        }
        rhs[col] = acc / a[col * m + col];
    }
    Ok(rhs)
}
