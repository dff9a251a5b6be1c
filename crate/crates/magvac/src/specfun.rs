//! Special functions for the regularization and emission formulas.
//!
//! * Hurwitz zeta zeta(s, q) = sum_{k>=0} (k+q)^-s, analytically continued by
//!   an adaptive Euler-Maclaurin expansion; at s = -1 it matches the closed
//!   form -B_2(q)/2 with B_2(q) = q^2 - q + 1/6.
//! * Physicists' Hermite polynomials H_n by the three-term recurrence, plus a
//!   log-magnitude form built on the normalized functions
//!   G_n = H_n / sqrt(2^n n!) so that H_n^2 e^{-x^2} can be assembled in log
//!   space without overflow at large n.
//! * log_weight(n) = ln(2^n n!) and a stable log-factorial.
//! * The divergent Gamma(-eps/2) = -(2/eps + const) is never evaluated; it is
//!   carried symbolically as a [`PoleExpansion`] and cancelled algebraically.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest order accepted by [`hermite`]; beyond it the plain recurrence is an
/// overflow hazard and [`hermite_ln`] must be used instead.
pub const HERMITE_N_MAX: u32 = 200;

/// Symbolic expansion Gamma(-eps/2) = -(2/eps + const): the 1/eps coefficient
/// is numeric, the eps-independent remainder is tracked only as a flag and is
/// never assigned a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleExpansion {
    pub pole_coeff: f64,
    pub finite_part: FinitePart,
}

/// Marker for the unevaluated eps-independent remainder of a pole expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitePart {
    Const,
}

impl PoleExpansion {
    /// The expansion of Gamma(-eps/2) itself: pole coefficient -2.
    pub fn gamma_neg_half_eps() -> Self {
        Self { pole_coeff: -2.0, finite_part: FinitePart::Const }
    }
}

/// Hurwitz zeta function for real s != 1 and q > 0.
///
/// Euler-Maclaurin form with N leading terms and corrections through the B_4
/// term; N doubles adaptively until the first omitted correction (the B_6
/// term) is below 1e-14 of the running total. The expansion terminates
/// exactly for s in {0, -1, -2, -3}, so the continuation values used by the
/// regularization path carry only rounding error.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Domain(format!("hurwitz_zeta requires q > 0, got {q}")));
    }
    if !s.is_finite() {
        return Err(Error::Domain(format!("hurwitz_zeta requires finite s, got {s}")));
    }
    if s == 1.0 {
        return Err(Error::Pole("hurwitz_zeta has a pole at s = 1".into()));
    }
    let mut n: usize = 16;
    loop {
        let a = n as f64 + q;
        let mut sum = 0.0;
        for k in 0..n {
            sum += (k as f64 + q).powf(-s);
        }
        let total = sum
            + a.powf(1.0 - s) / (s - 1.0)
            + 0.5 * a.powf(-s)
            + s * a.powf(-s - 1.0) / 12.0
            - s * (s + 1.0) * (s + 2.0) * a.powf(-s - 3.0) / 720.0;
        let omitted =
            (s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * a.powf(-s - 5.0) / 30240.0).abs();
        if omitted <= 1e-14 * total.abs().max(f64::MIN_POSITIVE) {
            return Ok(total);
        }
        if n >= 1 << 22 {
            return Err(Error::Accuracy(format!(
                "hurwitz_zeta(s={s}, q={q}) did not converge by N={n}"
            )));
        }
        n *= 2;
    }
}

/// Bernoulli polynomial B_2(q) = q^2 - q + 1/6.
pub fn bernoulli2(q: f64) -> f64 {
    q * q - q + 1.0 / 6.0
}

/// Physicists' Hermite polynomial H_n(x) by the recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}. Guarded at n <= [`HERMITE_N_MAX`]; for
/// large n combined with large |x| the value may overflow to infinity, in
/// which case [`hermite_ln`] is the right entry point.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    if n > HERMITE_N_MAX {
        return Err(Error::Limit(format!(
            "hermite order {n} exceeds the cap {HERMITE_N_MAX}; use hermite_ln"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// (ln |H_n(x)|, sign) with sign in {-1, 0, +1}; sign 0 (with ln = -inf)
/// means H_n(x) = 0 exactly, which occurs at x = 0 for odd n.
///
/// Runs the recurrence on G_n = H_n / sqrt(2^n n!), rescaling by powers of
/// 2^512 when needed, so any order is reachable in O(n) time with no
/// overflow; the original magnitude is restored as
/// ln|H_n| = ln|G_n| + log_weight(n)/2.
pub fn hermite_ln(n: u32, x: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    const UP: f64 = 1.3407807929942597e154; // 2^512
    const DOWN: f64 = 7.458340731200207e-155; // 2^-512
    const LN_UP: f64 = 512.0 * LN_2;
    let mut prev = 1.0f64;
    let mut cur = x * std::f64::consts::SQRT_2;
    let mut offset = 0.0f64;
    for k in 1..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let mag = cur.abs();
        if mag > UP {
            prev *= DOWN;
            cur *= DOWN;
            offset += LN_UP;
        } else if mag > 0.0 && mag < DOWN {
            prev *= UP;
            cur *= UP;
            offset -= LN_UP;
        }
    }
    if cur == 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    (cur.abs().ln() + offset + 0.5 * log_weight(n), cur.signum())
}

/// ln(2^n n!), the normalization weight appearing under the squared Hermite
/// polynomial in the emission kernel.
pub fn log_weight(n: u32) -> f64 {
    n as f64 * LN_2 + ln_factorial(n)
}

/// ln(n!) from a cumulative table for n <= 1024 and a Stirling series beyond.
pub fn ln_factorial(n: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(1025);
        t.push(0.0);
        for k in 1..=1024u32 {
            t.push(t[k as usize - 1] + (k as f64).ln());
        }
        t
    });
    if let Some(&v) = table.get(n as usize) {
        return v;
    }
    let x = n as f64;
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn gamma_pole_expansion() {
        let g = PoleExpansion::gamma_neg_half_eps();
        assert_eq!(g.pole_coeff, -2.0);
        assert_eq!(g.finite_part, FinitePart::Const);
    }

    #[test]
    fn hurwitz_reference_values() {
        let table = [
            (-1.0, 1.0, -1.0 / 12.0),
            (-1.0, 2.5, -1.9583333333333333),
            (2.0, 1.0, PI * PI / 6.0),
            (2.0, 0.5, PI * PI / 2.0),
            (2.0, 2.0, PI * PI / 6.0 - 1.0),
            (1.5, 1.0, 2.612375348685488),
            (3.0, 1.0, 1.2020569031595942),
            (0.0, 0.3, 0.2),
        ];
        for (s, q, expected) in table {
            let got = hurwitz_zeta(s, q).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-12);
        }
        // s = -2, -3 terminate exactly in the expansion; rounding of the
        // cancelling partial sums leaves ~1e-12 absolute residue.
        assert_abs_diff_eq!(hurwitz_zeta(-3.0, 1.0).unwrap(), 1.0 / 120.0, epsilon = 5e-12);
        let b3 = |q: f64| q.powi(3) - 1.5 * q * q + 0.5 * q;
        assert_relative_eq!(hurwitz_zeta(-2.0, 0.7).unwrap(), -b3(0.7) / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn hurwitz_matches_bernoulli_closed_form_at_minus_one() {
        for q in [0.1, 0.5, 1.0, 2.5, 10.0, 100.0] {
            let z = hurwitz_zeta(-1.0, q).unwrap();
            assert_abs_diff_eq!(z + bernoulli2(q) / 2.0, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hurwitz_matches_direct_series_with_tail() {
        // Independent oracle: 1e5 raw terms plus integral tail and half-term.
        let n = 100_000usize;
        for s in [1.5, 2.0, 3.0] {
            for q in [0.3, 1.0, 4.0] {
                let mut sum = 0.0;
                for k in 0..n {
                    sum += (k as f64 + q).powf(-s);
                }
                let a = n as f64 + q;
                let oracle = sum + a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
                let got = hurwitz_zeta(s, q).unwrap();
                assert_relative_eq!(got, oracle, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn hurwitz_rejects_pole_and_bad_domain() {
        assert!(matches!(hurwitz_zeta(1.0, 2.0), Err(Error::Pole(_))));
        assert!(matches!(hurwitz_zeta(2.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta(2.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta(f64::NAN, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn bernoulli2_values() {
        assert_relative_eq!(bernoulli2(0.0), 1.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(bernoulli2(0.5), -1.0 / 12.0, max_relative = 1e-15);
        assert_relative_eq!(bernoulli2(1.0), 1.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, 3.7).unwrap(), 1.0);
        for x in [-2.0, 0.0, 0.25, 1.9] {
            assert_eq!(hermite(1, x).unwrap(), 2.0 * x);
        }
        assert_eq!(hermite(3, 0.5).unwrap(), -5.0);
        let x = 1.3;
        let table = [
            (2, 4.76),
            (3, 1.976),
            (4, -23.4224),
            (5, -76.70624),
        ];
        for (n, expected) in table {
            assert_relative_eq!(hermite(n, x).unwrap(), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn hermite_matches_explicit_polynomials() {
        let explicit: [fn(f64) -> f64; 6] = [
            |_| 1.0,
            |x| 2.0 * x,
            |x| 4.0 * x * x - 2.0,
            |x| 8.0 * x.powi(3) - 12.0 * x,
            |x| 16.0 * x.powi(4) - 48.0 * x * x + 12.0,
            |x| 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x,
        ];
        for n in 0..6u32 {
            for i in 0..=40 {
                let x = -10.0 + 0.5 * i as f64;
                let expected = explicit[n as usize](x);
                let got = hermite(n, x).unwrap();
                if expected == 0.0 {
                    assert_abs_diff_eq!(got, 0.0, epsilon = 1e-10);
                } else {
                    assert_relative_eq!(got, expected, max_relative = 1e-13);
                }
            }
        }
    }

    #[test]
    fn hermite_order_cap() {
        assert!(matches!(hermite(201, 0.1), Err(Error::Limit(_))));
        assert!(hermite(200, 0.1).is_ok());
    }

    #[test]
    fn hermite_ln_matches_direct_recurrence() {
        for n in [1u32, 2, 3, 5, 10, 50, 120, 200] {
            for x in [-9.9, -2.7, -0.3, 0.3, 1.3, 5.0, 9.9] {
                let direct = hermite(n, x).unwrap();
                let (ln_mag, sign) = hermite_ln(n, x);
                let rebuilt = sign * ln_mag.exp();
                assert_relative_eq!(rebuilt, direct, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn hermite_ln_exact_zero_at_origin_for_odd_orders() {
        let (ln_mag, sign) = hermite_ln(7, 0.0);
        assert_eq!(sign, 0.0);
        assert_eq!(ln_mag, f64::NEG_INFINITY);
        let (_, sign_even) = hermite_ln(8, 0.0);
        assert_ne!(sign_even, 0.0);
    }

    #[test]
    fn log_weight_values() {
        assert_eq!(log_weight(0), 0.0);
        assert_relative_eq!(log_weight(1), LN_2, max_relative = 1e-15);
        assert_relative_eq!(log_weight(10), 22.035884378674968, max_relative = 1e-12);
        assert_relative_eq!(log_weight(200), 1001.8614233043945, max_relative = 1e-12);
        let mut prev = -1.0;
        for n in 0..400 {
            let v = log_weight(n);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn ln_factorial_stirling_joins_table_smoothly() {
        // Crossing the table boundary must not jump: ln((n+1)!) - ln(n!) = ln(n+1).
        for n in [1023u32, 1024, 1025, 2000] {
            let step = ln_factorial(n + 1) - ln_factorial(n);
            assert_relative_eq!(step, ((n + 1) as f64).ln(), max_relative = 1e-10);
        }
    }

    #[test]
    fn gaussian_weighted_orthogonality() {
        // integral e^{-x^2} H_m H_n over the real line vanishes for m != n;
        // normalized by sqrt of the diagonal norms sqrt(pi) 2^n n!.
        for m in 0..=4u32 {
            for n in 0..=4u32 {
                if m == n {
                    continue;
                }
                let f = |x: f64| {
                    (-x * x).exp() * hermite(m, x).unwrap() * hermite(n, x).unwrap()
                };
                let raw = crate::quad::integrate(f, -12.0, 12.0, 1e-12, 0.0).unwrap();
                let norm =
                    (0.5 * (log_weight(m) + log_weight(n)) + 0.5 * PI.ln()).exp();
                assert!(
                    (raw / norm).abs() < 1e-8,
                    "m={m} n={n} normalized overlap {}",
                    raw / norm
                );
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bernoulli2_reflection_symmetry(q in -10.0f64..10.0) {
                let d = bernoulli2(q) - bernoulli2(1.0 - q);
                prop_assert!(d.abs() <= 1e-12 * bernoulli2(q).abs().max(1.0));
            }

            #[test]
            fn hurwitz_series_monotone_in_q(s in 1.5f64..4.0, q in 0.2f64..50.0) {
                // For s > 1 every term decreases in q, so the sum must too.
                let a = hurwitz_zeta(s, q).unwrap();
                let b = hurwitz_zeta(s, q + 0.5).unwrap();
                prop_assert!(b < a);
            }
        }
    }
}
