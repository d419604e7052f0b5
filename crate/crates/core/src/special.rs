//! Special functions used by the coherent-state formulas.
//!
//! Modified Bessel functions are only ever exposed in exponentially scaled
//! form `e^{−x} I_ν(x)` or as ratios `I_{ν+1}/I_ν`, so arguments up to a few
//! thousand never overflow.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 5.242_187_5; // 671/128
const LANCZOS_SERIES0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// `ln Γ(x)` for `x > 0` (Lanczos approximation, g = 671/128).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "log_gamma",
            value: x,
            domain: "x > 0",
        });
    }
    let tmp = x + LANCZOS_G;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut y = x;
    let mut ser = LANCZOS_SERIES0;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    Ok(tmp + (SQRT_2PI * ser / x).ln())
}

/// `ln[Γ(a+1) / (Γ(b+1) Γ(a−b+1))]`, the log of a generalized binomial
/// coefficient.
pub fn log_binomial(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a + 1.0)? - log_gamma(b + 1.0)? - log_gamma(a - b + 1.0)?)
}

/// Scaled modified Bessel function `e^{−x} I_ν(x)` of the first kind.
///
/// Orders `ν > −1` are accepted. Uses the ascending series with binary
/// rescaling, and the large-argument expansion once `x` exceeds both 30 and
/// `ν²`.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    check_order(nu, "bessel_i_scaled")?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "bessel_i_scaled",
            value: x,
            domain: "0 <= x < inf",
        });
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain {
                function: "bessel_i_scaled",
                value: x,
                domain: "x > 0 for negative order",
            })
        };
    }
    if x > ASYMPTOTIC_MIN_X && x > nu * nu {
        Ok(scaled_asymptotic(nu, x))
    } else {
        scaled_series(nu, x)
    }
}

const ASYMPTOTIC_MIN_X: f64 = 30.0;

fn check_order(nu: f64, function: &'static str) -> Result<()> {
    if nu > -1.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: nu,
            domain: "order > -1",
        })
    }
}

/// Ascending series `Σ (x/2)^{2k+ν} / (k! Γ(k+ν+1))`, all terms positive.
fn scaled_series(nu: f64, x: f64) -> Result<f64> {
    const RESCALE_EXP: i32 = 512;
    let rescale = 2f64.powi(-RESCALE_EXP);
    let half = 0.5 * x;
    let q = half * half;
    let log_prefactor = nu * half.ln() - log_gamma(nu + 1.0)? - x;

    let mut term = 1.0;
    let mut sum = 1.0;
    let mut exponent = 0i32;
    let mut k = 0.0;
    loop {
        let ratio = q / ((k + 1.0) * (k + 1.0 + nu));
        term *= ratio;
        sum += term;
        k += 1.0;
        if ratio < 1.0 && term < f64::EPSILON * 0.25 * sum {
            break;
        }
        if sum > 1e150 {
            sum *= rescale;
            term *= rescale;
            exponent += RESCALE_EXP;
        }
    }
    Ok((log_prefactor + exponent as f64 * LN_2).exp() * sum)
}

/// `e^{−x} I_ν(x) ≈ (2πx)^{−1/2} Σ_k (−1)^k a_k(ν) / x^k`, truncated at the
/// smallest term.
fn scaled_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0;
    loop {
        let odd = 2.0 * k - 1.0;
        let next = -term * (mu - odd * odd) / (8.0 * k * x);
        if next.abs() >= term.abs() || next.abs() < f64::EPSILON * 0.25 * sum.abs() {
            if next.abs() < term.abs() {
                sum += next;
            }
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// `I_{ν+1}(x) / I_ν(x)` from the continued fraction
/// `1 / (2(ν+1)/x + 1 / (2(ν+2)/x + ...))`, evaluated with modified Lentz.
///
/// Returns 0 at `x = 0`. Never forms `I_ν` itself. The quotient lies in
/// `[0, 1)` for `ν ≥ −1/2`.
pub fn bessel_ratio(nu: f64, x: f64) -> Result<f64> {
    check_order(nu, "bessel_ratio")?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "bessel_ratio",
            value: x,
            domain: "0 <= x < inf",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    const TINY: f64 = 1e-300;
    let inv_x = 1.0 / x;
    let mut b = 2.0 * (nu + 1.0) * inv_x;
    let mut f = b;
    let mut c = b;
    let mut d = 0.0;
    for _ in 0..1_000_000 {
        b += 2.0 * inv_x;
        d += b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + 1.0 / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    let r = 1.0 / f;
    // For ν ≥ −1/2 the exact value is below 1 and the fraction can round one
    // ulp above it. Orders in (−1, −1/2) genuinely exceed 1 at large x.
    Ok(if nu >= -0.5 { r.min(1.0) } else { r })
}
