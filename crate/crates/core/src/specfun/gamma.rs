use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Taylor coefficients of `1/Γ(z) = Σ C[k] z^k` (C[0] = 0).
pub(crate) const RECIP_GAMMA: [f64; 30] = [
    0.0,
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
];

// B_{2j} / (2j (2j - 1)) for j = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// `1/Γ(1 + μ) - 1`, accurate for |μ| ≤ 1/2 (and usable to |μ| ≤ 1).
fn recip_gamma_one_plus_m1(mu: f64) -> f64 {
    // 1/Γ(1+μ) = Σ_k C[k] μ^{k-1}; the k = 1 term is the leading 1
    let mut acc = 0.0;
    for k in (2..RECIP_GAMMA.len()).rev() {
        acc = acc * mu + RECIP_GAMMA[k];
    }
    acc * mu
}

#[cfg(test)]
/// `1/Γ(1 + μ)` for |μ| ≤ 1.
#[cfg(test)]
fn recip_gamma_one_plus(mu: f64) -> f64 {
    1.0 + recip_gamma_one_plus_m1(mu)
}

/// ln Γ(x) for x > 0 without argument checks.
pub(crate) fn lgamma(x: f64) -> f64 {
    if x < 0.5 {
        return lgamma(x + 1.0) - x.ln();
    }
    if x <= 1.5 {
        return -recip_gamma_one_plus_m1(x - 1.0).ln_1p();
    }
    if x <= 2.5 {
        return (x - 2.0).ln_1p() + lgamma(x - 1.0);
    }
    if x < 10.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        return prod.ln() + lgamma(y);
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series * inv
}

/// Natural logarithm of Γ(x) for real x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("log_gamma requires a finite x > 0"));
    }
    Ok(lgamma(x))
}

/// ln((a)_k) = ln Γ(a + k) - ln Γ(a) for a > 0.
pub fn ln_pochhammer(a: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Ok(0.0);
    }
    Ok(log_gamma(a + k as f64)? - log_gamma(a)?)
}

/// ln(Γ(a) / Γ(b)) for a, b > 0.
pub fn ln_gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)? - log_gamma(b)?)
}

/// `r_k = Γ(a+k)/Γ(b+k) · k^{b-a}` for k = 1..=k_max; tends to 1.
pub fn pochhammer_ratio_limit_check(a: f64, b: f64, k_max: usize) -> Result<Vec<f64>> {
    if k_max < 10 {
        return Err(Error::InvalidParameter("k_max must be at least 10"));
    }
    (1..=k_max)
        .map(|k| {
            let kf = k as f64;
            Ok((ln_gamma_ratio(a + kf, b + kf)? + (b - a) * kf.ln()).exp())
        })
        .collect()
}
