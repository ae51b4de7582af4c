//! Average information extracted per transmitted bit by a two-outcome
//! discrimination measurement.
//!
//! With equal priors on the two basis states, the discrimination
//! fidelities determine the rate of each outcome and the confidence in
//! the bit it announces; the information is the prior entropy minus the
//! residual binary entropy, averaged over outcomes:
//!
//! ```text
//! r_par  = [f_par + (1 - f_perp)] / 2,   p_par  = f_par  / (2 r_par),
//! r_perp = [f_perp + (1 - f_par)] / 2,   p_perp = f_perp / (2 r_perp),
//! I = sum_i r_i [1 + p_i log2(p_i) + (1 - p_i) log2(1 - p_i)].
//! ```

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Rates, confidences, and average information derived from a pair of
/// discrimination fidelities under equal priors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoReport {
    pub f_par: f64,
    pub f_perp: f64,
    pub r_par: f64,
    pub r_perp: f64,
    pub p_par: f64,
    pub p_perp: f64,
    pub info_bits: f64,
}

/// `x log2(x)` with the entropy limit convention `0 log2(0) = 0`.
fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Information retained after one outcome announced with confidence `p`.
fn outcome_information(p: f64) -> f64 {
    1.0 + xlog2x(p) + xlog2x(1.0 - p)
}

/// Computes the report from the two fidelities; both must lie in `[0, 1]`.
///
/// An outcome with rate zero never occurs and contributes nothing; its
/// confidence is reported as zero.
pub fn info_from_fidelities(f_par: f64, f_perp: f64) -> Result<InfoReport> {
    for (name, value) in [("f_par", f_par), ("f_perp", f_perp)] {
        if !(0.0..=1.0).contains(&value) || !value.is_finite() {
            return Err(Error::OutOfRange { name, value });
        }
    }
    let r_par = (f_par + (1.0 - f_perp)) / 2.0;
    let r_perp = (f_perp + (1.0 - f_par)) / 2.0;
    let p_par = if r_par > 0.0 { (f_par / (2.0 * r_par)).min(1.0) } else { 0.0 };
    let p_perp = if r_perp > 0.0 { (f_perp / (2.0 * r_perp)).min(1.0) } else { 0.0 };
    let info_bits = r_par * outcome_information(p_par) + r_perp * outcome_information(p_perp);
    Ok(InfoReport {
        f_par,
        f_perp,
        r_par,
        r_perp,
        p_par,
        p_perp,
        info_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_copy_asymmetric_measurement() {
        let report = info_from_fidelities(1.0, 0.5).unwrap();
        assert_abs_diff_eq!(report.r_par, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(report.p_par, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(report.r_perp, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(report.p_perp, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(report.info_bits, 0.311, epsilon = 5e-4);
    }

    #[test]
    fn reference_information_values() {
        assert_abs_diff_eq!(info_from_fidelities(1.0, 2.0 / 3.0).unwrap().info_bits, 0.459, epsilon = 5e-4);
        assert_abs_diff_eq!(info_from_fidelities(0.75, 0.75).unwrap().info_bits, 0.189, epsilon = 5e-4);
        let f = 0.5 * (1.0 + 1.0 / 3f64.sqrt());
        assert_abs_diff_eq!(info_from_fidelities(f, f).unwrap().info_bits, 0.256, epsilon = 5e-4);
    }

    #[test]
    fn degenerate_endpoints() {
        assert_abs_diff_eq!(info_from_fidelities(1.0, 1.0).unwrap().info_bits, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(info_from_fidelities(0.5, 0.5).unwrap().info_bits, 0.0, epsilon = 1e-12);
        // One outcome never occurs: f_par = 0, f_perp = 1.
        let report = info_from_fidelities(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(report.r_par, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(report.info_bits, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(info_from_fidelities(-0.1, 0.5).is_err());
        assert!(info_from_fidelities(0.5, 1.1).is_err());
        assert!(info_from_fidelities(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn symmetric_in_the_two_fidelities() {
        for (a, b) in [(0.9, 0.3), (1.0, 0.5), (0.61, 0.6)] {
            let lhs = info_from_fidelities(a, b).unwrap().info_bits;
            let rhs = info_from_fidelities(b, a).unwrap().info_bits;
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn bounded_on_a_grid_with_consistency_identities() {
        for i in 0..=200 {
            for j in 0..=200 {
                let f_par = i as f64 / 200.0;
                let f_perp = j as f64 / 200.0;
                let report = info_from_fidelities(f_par, f_perp).unwrap();
                assert!(
                    (-1e-12..=1.0 + 1e-12).contains(&report.info_bits),
                    "I({f_par}, {f_perp}) = {} out of range",
                    report.info_bits
                );
                assert_abs_diff_eq!(report.r_par + report.r_perp, 1.0, epsilon = 1e-12);
                let success = report.r_par * report.p_par + report.r_perp * report.p_perp;
                assert_abs_diff_eq!(success, (f_par + f_perp) / 2.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ordering_of_reference_measurements() {
        let f_orth = 0.5 * (1.0 + 1.0 / 3f64.sqrt());
        let two_copies = info_from_fidelities(1.0, 2.0 / 3.0).unwrap().info_bits;
        let one_copy = info_from_fidelities(1.0, 0.5).unwrap().info_bits;
        let orthogonal = info_from_fidelities(f_orth, f_orth).unwrap().info_bits;
        let symmetrized = info_from_fidelities(0.75, 0.75).unwrap().info_bits;
        assert!(two_copies > one_copy);
        assert!(one_copy > orthogonal);
        assert!(orthogonal > symmetrized);
    }
}
