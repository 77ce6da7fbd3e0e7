//! Threshold arithmetic for concatenated error correction.
//!
//! Level-`L` failure probability is `P_L = p_th (eps / p_th)^(2^L)` with
//! `p_th = 2 / N^2`. Everything that involves `2^L` is evaluated in log space.

use core::f64::consts::PI;

use crate::cost::{self, CommModel};
use crate::layout::BlockVariant;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ThresholdError {
    #[error("operation count must be at least 2, got {0}")]
    CountTooSmall(u64),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("threshold {0} outside (0, 1]")]
    Threshold(f64),
    #[error("error rate {epsilon} is not below the threshold {p_th}")]
    AboveThreshold { epsilon: f64, p_th: f64 },
    #[error("phase {0} rad outside [0, pi]")]
    Phase(f64),
    #[error("computation length must be positive and finite, got {0}")]
    Length(f64),
}

fn check_prob(p: f64) -> Result<(), ThresholdError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ThresholdError::Probability(p))
    }
}

fn check_threshold(p_th: f64) -> Result<(), ThresholdError> {
    if p_th > 0.0 && p_th <= 1.0 {
        Ok(())
    } else {
        Err(ThresholdError::Threshold(p_th))
    }
}

fn below_threshold(epsilon: f64, p_th: f64) -> Result<(), ThresholdError> {
    check_threshold(p_th)?;
    if epsilon > 0.0 && epsilon < p_th {
        Ok(())
    } else if !(0.0..=1.0).contains(&epsilon) {
        Err(ThresholdError::Probability(epsilon))
    } else {
        Err(ThresholdError::AboveThreshold { epsilon, p_th })
    }
}

/// `2 / N^2`.
pub fn p_threshold(n: u64) -> Result<f64, ThresholdError> {
    if n < 2 {
        return Err(ThresholdError::CountTooSmall(n));
    }
    let n = n as f64;
    Ok(2.0 / (n * n))
}

/// `2^level` as a float; saturates to infinity for absurd levels.
fn doubling(level: u32) -> f64 {
    libm::exp2(f64::from(level))
}

/// Upper bound on the level-`level` logical error probability, clamped to 1.
pub fn logical_error(epsilon: f64, level: u32, p_th: f64) -> Result<f64, ThresholdError> {
    check_prob(epsilon)?;
    check_threshold(p_th)?;
    if level == 0 {
        return Ok(epsilon);
    }
    if epsilon == 0.0 {
        return Ok(0.0);
    }
    if epsilon == p_th {
        return Ok(p_th);
    }
    let log = libm::log10(p_th) + doubling(level) * (libm::log10(epsilon) - libm::log10(p_th));
    Ok(libm::pow(10.0, log).min(1.0))
}

/// `log10` of the guaranteed computation length at level `level`.
pub fn log10_accessible_length(epsilon: f64, level: u32, p_th: f64) -> Result<f64, ThresholdError> {
    below_threshold(epsilon, p_th)?;
    Ok(-libm::log10(p_th) + doubling(level) * (libm::log10(p_th) - libm::log10(epsilon)))
}

/// `(1 / p_th) (p_th / eps)^(2^L)`; may be `inf` for large levels, see
/// [`log10_accessible_length`].
pub fn accessible_length(epsilon: f64, level: u32, p_th: f64) -> Result<f64, ThresholdError> {
    if level == 0 {
        below_threshold(epsilon, p_th)?;
        return Ok(1.0 / epsilon);
    }
    Ok(libm::pow(10.0, log10_accessible_length(epsilon, level, p_th)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelChoice {
    pub level: u32,
    /// Set when no concatenation is needed because `T p_th <= 1`.
    pub trivially_short: bool,
}

// Relative slack for deciding that the log-log ratio is an exact power of two.
const SNAP: f64 = 1e-9;

/// Smallest level whose accessible length reaches `length`.
pub fn sufficient_level(length: f64, epsilon: f64, p_th: f64) -> Result<LevelChoice, ThresholdError> {
    below_threshold(epsilon, p_th)?;
    if !(length > 0.0 && length.is_finite()) {
        return Err(ThresholdError::Length(length));
    }
    let need = libm::log10(length) + libm::log10(p_th);
    if need <= 0.0 {
        return Ok(LevelChoice { level: 0, trivially_short: true });
    }
    let ratio = need / (libm::log10(p_th) - libm::log10(epsilon));
    if ratio <= 1.0 + SNAP {
        return Ok(LevelChoice { level: 0, trivially_short: false });
    }
    let exact = libm::log2(ratio);
    let nearest = libm::round(exact);
    let level = if (exact - nearest).abs() <= SNAP * nearest.max(1.0) { nearest } else { libm::ceil(exact) };
    Ok(LevelChoice { level: level as u32, trivially_short: false })
}

/// Failure probability of a rotation that over- or under-shoots by `phi_rad`.
pub fn error_from_phase(phi_rad: f64) -> Result<f64, ThresholdError> {
    if !(0.0..=PI).contains(&phi_rad) {
        return Err(ThresholdError::Phase(phi_rad));
    }
    let s = libm::sin(phi_rad / 2.0);
    Ok(s * s)
}

/// Exact inverse of [`error_from_phase`].
pub fn phase_from_error(epsilon: f64) -> Result<f64, ThresholdError> {
    check_prob(epsilon)?;
    Ok(2.0 * libm::asin(libm::sqrt(epsilon)))
}

/// Small-angle pulse accuracy in degrees: `2 sqrt(p_th) 180 / pi`.
pub fn accuracy_threshold_deg(p_th: f64) -> f64 {
    2.0 * libm::sqrt(p_th) * 180.0 / PI
}

/// Two significant figures, round-half-even: `x ~ digits * 10^exponent` with
/// `digits` in `10..=99`. Zero maps to `(0, 0)`.
pub fn round_sig2(x: f64) -> (u8, i32) {
    if x == 0.0 || !x.is_finite() {
        return (0, 0);
    }
    let mut exp = libm::floor(libm::log10(x.abs())) as i32 - 1;
    let mut scaled = x.abs() / libm::pow(10.0, f64::from(exp));
    // log10 can land one decade off near exact powers of ten.
    if scaled >= 100.0 {
        exp += 1;
        scaled /= 10.0;
    } else if scaled < 10.0 {
        exp -= 1;
        scaled *= 10.0;
    }
    let mut digits = libm::rint(scaled);
    if digits >= 100.0 {
        digits = 10.0;
        exp += 1;
    }
    (digits as u8, exp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdRow {
    pub model: CommModel,
    pub variant: BlockVariant,
    pub ec_count: u64,
    pub unitary_count: u64,
    pub n_total: u64,
    pub p_th: f64,
    pub phi_th_deg: f64,
}

impl ThresholdRow {
    pub fn compute(model: CommModel, variant: BlockVariant) -> Self {
        let b = cost::breakdown(model, variant);
        let n_total = b.n_total();
        let p_th = p_threshold(n_total).expect("level costs exceed 2");
        Self {
            model,
            variant,
            ec_count: b.ec_total(),
            unitary_count: b.unitary_total(),
            n_total,
            p_th,
            phi_th_deg: accuracy_threshold_deg(p_th),
        }
    }
}

/// Row order of the published table.
pub const TABLE_ORDER: [(CommModel, BlockVariant); 6] = [
    (CommModel::Free, BlockVariant::Minimal27),
    (CommModel::Free, BlockVariant::WithPrep46),
    (CommModel::RemoteCnot, BlockVariant::Minimal27),
    (CommModel::RemoteCnot, BlockVariant::WithPrep46),
    (CommModel::Swap, BlockVariant::Minimal27),
    (CommModel::Swap, BlockVariant::WithPrep46),
];

pub fn table_report() -> [ThresholdRow; 6] {
    TABLE_ORDER.map(|(m, v)| ThresholdRow::compute(m, v))
}

/// Values as printed in the published table, for side-by-side reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedRow {
    pub ec_count: u64,
    pub unitary_count: u64,
    /// `P_th` as `(digits, exponent)`, see [`round_sig2`].
    pub p_th: (u8, i32),
    pub phi_th_deg: f64,
}

pub const PRINTED_TABLE: [PrintedRow; 6] = [
    PrintedRow { ec_count: 70, unitary_count: 7, p_th: (34, -5), phi_th_deg: 2.1 },
    PrintedRow { ec_count: 298, unitary_count: 7, p_th: (21, -6), phi_th_deg: 0.52 },
    PrintedRow { ec_count: 238, unitary_count: 35, p_th: (27, -6), phi_th_deg: 0.60 },
    PrintedRow { ec_count: 1090, unitary_count: 35, p_th: (16, -7), phi_th_deg: 0.14 },
    PrintedRow { ec_count: 1008, unitary_count: 203, p_th: (14, -7), phi_th_deg: 0.13 },
    PrintedRow { ec_count: 3754, unitary_count: 343, p_th: (12, -8), phi_th_deg: 0.034 },
];

/// Absolute tolerance, in degrees, for comparing computed and printed
/// accuracy thresholds.
pub const PHI_TOLERANCE_DEG: f64 = 0.012;

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn thresholds() {
        assert_eq!(p_threshold(2), Ok(0.5));
        assert_eq!(p_threshold(1), Err(ThresholdError::CountTooSmall(1)));
        assert_eq!(round_sig2(p_threshold(77).unwrap()), (34, -5));
        assert_eq!(round_sig2(p_threshold(4097).unwrap()), (12, -8));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig2(1.0), (10, -1));
        assert_eq!(round_sig2(99.5), (10, 1));
        assert_eq!(round_sig2(0.125), (12, -2));
        assert_eq!(round_sig2(0.135), (14, -2));
        assert_eq!(round_sig2(2.65e-5), (26, -6));
        assert_eq!(round_sig2(1e-7), (10, -8));
    }

    #[test]
    fn logical_error_cases() {
        assert_eq!(logical_error(3e-5, 0, 1e-4), Ok(3e-5));
        for l in 0..8 {
            assert_eq!(logical_error(1e-4, l, 1e-4), Ok(1e-4));
        }
        assert!(close(logical_error(1e-7, 3, 1e-6).unwrap(), 1e-14, 1e-9));
        assert_eq!(logical_error(0.5, 5, 1e-3), Ok(1.0));
        assert_eq!(logical_error(0.0, 5, 1e-3), Ok(0.0));
        assert!(logical_error(1.5, 1, 1e-3).is_err());
    }

    #[test]
    fn accessible_length_cases() {
        assert!(close(accessible_length(1e-7, 3, 1e-6).unwrap(), 1e14, 1e-9));
        assert!(close(log10_accessible_length(1e-7, 3, 1e-6).unwrap(), 14.0, 1e-12));
        assert_eq!(accessible_length(1e-7, 0, 1e-6), Ok(1e7));
        assert!(matches!(accessible_length(1e-6, 2, 1e-6), Err(ThresholdError::AboveThreshold { .. })));
        // Log form stays finite where the direct form overflows.
        assert!(accessible_length(1e-7, 10, 1e-6).unwrap().is_infinite());
        assert!(close(log10_accessible_length(1e-7, 10, 1e-6).unwrap(), 1030.0, 1e-12));
    }

    #[test]
    fn level_cases() {
        assert_eq!(sufficient_level(1e14, 1e-7, 1e-6).unwrap().level, 3);
        assert_eq!(sufficient_level(1e15, 1e-7, 1e-6).unwrap().level, 4);
        assert_eq!(sufficient_level(1e7, 1e-7, 1e-6).unwrap(), LevelChoice { level: 0, trivially_short: false });
        assert_eq!(sufficient_level(10.0, 1e-7, 1e-6).unwrap(), LevelChoice { level: 0, trivially_short: true });
        assert!(matches!(sufficient_level(1e14, 1e-6, 1e-6), Err(ThresholdError::AboveThreshold { .. })));
    }

    #[test]
    fn phase_conversion() {
        assert_eq!(error_from_phase(0.0), Ok(0.0));
        assert!(close(error_from_phase(PI).unwrap(), 1.0, 1e-15));
        assert!(error_from_phase(-0.1).is_err());
        let phi = 2.0 * libm::sqrt(1e-7);
        assert!((phi * 180.0 / PI - 0.0362).abs() < 1e-4);
        assert!((error_from_phase(phi).unwrap() - 1e-7).abs() < 1e-10);
        assert!(close(accuracy_threshold_deg(1.0), 114.591_559, 1e-8));
    }

    #[test]
    fn report_matches_printed_probabilities() {
        for (row, printed) in table_report().iter().zip(PRINTED_TABLE) {
            assert_eq!((row.ec_count, row.unitary_count), (printed.ec_count, printed.unitary_count));
            assert_eq!(round_sig2(row.p_th), printed.p_th);
            assert!((row.phi_th_deg - printed.phi_th_deg).abs() <= PHI_TOLERANCE_DEG, "{row:?}");
        }
        let last = table_report()[5];
        assert!((last.phi_th_deg - 0.0396).abs() < 5e-5);
    }

    proptest::proptest! {
        #[test]
        fn reciprocity(le in -9.0f64..-1.0, gap in 0.01f64..3.0, level in 0u32..6) {
            let p = libm::pow(10.0, le);
            let e = p / libm::pow(10.0, gap);
            let t = accessible_length(e, level, p).unwrap();
            let q = logical_error(e, level, p).unwrap();
            if t.is_finite() && q > 0.0 {
                proptest::prop_assert!((t * q - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn recursion(le in -9.0f64..-1.0, shift in -2.0f64..2.0, level in 1u32..5) {
            let p = libm::pow(10.0, le);
            let e = (p * libm::pow(10.0, shift)).min(1.0);
            let prev = logical_error(e, level - 1, p).unwrap();
            let next = logical_error(e, level, p).unwrap();
            let expect = (p * (prev / p) * (prev / p)).min(1.0);
            if expect > 1e-300 {
                proptest::prop_assert!(close(next, expect, 1e-9));
            }
        }

        #[test]
        fn monotone_in_level(le in -8.0f64..-1.0, shift in 0.05f64..1.0, below in proptest::bool::ANY, level in 0u32..4) {
            let p = libm::pow(10.0, le);
            let e = if below { p / libm::pow(10.0, shift) } else { (p * libm::pow(10.0, shift)).min(0.999) };
            let a = logical_error(e, level, p).unwrap();
            let b = logical_error(e, level + 1, p).unwrap();
            if below {
                proptest::prop_assert!(b < a);
            } else if a < 1.0 {
                proptest::prop_assert!(b > a);
            }
        }

        #[test]
        fn inverse_phase(eps in 0.0f64..1.0) {
            let back = error_from_phase(phase_from_error(eps).unwrap()).unwrap();
            proptest::prop_assert!((back - eps).abs() <= 1e-12);
            // Small-angle form agrees to relative order eps / 3.
            let approx = error_from_phase(2.0 * libm::sqrt(eps)).ok();
            if let (Some(a), true) = (approx, eps > 0.0 && eps < 0.1) {
                proptest::prop_assert!((a - eps).abs() / eps <= eps / 3.0 + eps * eps);
            }
        }

        #[test]
        fn level_is_exact_inverse(log_t in 1.0f64..60.0, le in -9.0f64..-2.0, gap in 0.05f64..3.0) {
            let p = libm::pow(10.0, le);
            let e = p / libm::pow(10.0, gap);
            let t = libm::pow(10.0, log_t);
            let choice = sufficient_level(t, e, p).unwrap();
            let at = log10_accessible_length(e, choice.level, p).unwrap();
            proptest::prop_assert!(at >= log_t - 1e-9 * log_t);
            if choice.level > 0 {
                let below = log10_accessible_length(e, choice.level - 1, p).unwrap();
                proptest::prop_assert!(below < log_t + 1e-9 * log_t);
            }
        }
    }
}
