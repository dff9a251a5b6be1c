//! Adaptive Gauss-Legendre quadrature.
//!
//! A 32-point rule is applied to an interval and to its two halves; the
//! interval is accepted when the whole-interval and split estimates agree to
//! the requested tolerance, otherwise it is bisected recursively. Nodes and
//! weights are generated once by Newton iteration on the Legendre polynomial
//! and cached.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const N_NODES: usize = 32;
const MAX_DEPTH: u32 = 40;

fn nodes_and_weights() -> &'static [(f64, f64); N_NODES] {
    static CACHE: OnceLock<[(f64, f64); N_NODES]> = OnceLock::new();
    CACHE.get_or_init(|| {
        let n = N_NODES;
        let mut out = [(0.0f64, 0.0f64); N_NODES];
        for i in 0..n {
            // Chebyshev-like initial guess for the i-th root of P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n and P_n' by the standard recurrences.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[i] = (x, w);
        }
        out
    })
}

fn gauss_once<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in nodes_and_weights() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrate f over [a, b] to relative tolerance `rel_tol` with an absolute
/// floor `abs_floor` (the floor is split between subintervals). Exceeding the
/// recursion depth cap raises an accuracy error rather than returning a
/// silently degraded value.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integrate needs finite bounds, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let whole = gauss_once(&f, a, b);
    refine(&f, a, b, whole, rel_tol, abs_floor, 0)
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    rel_tol: f64,
    abs_floor: f64,
    depth: u32,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = gauss_once(f, a, mid);
    let right = gauss_once(f, mid, b);
    let split = left + right;
    if (split - whole).abs() <= rel_tol * split.abs() + abs_floor {
        return Ok(split);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Accuracy(format!(
            "quadrature failed to converge on [{a}, {b}] at depth {depth}"
        )));
    }
    let half_floor = 0.5 * abs_floor;
    let l = refine(f, a, mid, left, rel_tol, half_floor, depth + 1)?;
    let r = refine(f, mid, b, right, rel_tol, half_floor, depth + 1)?;
    Ok(l + r)
}
