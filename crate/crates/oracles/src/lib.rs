//! Brute-force reference implementations used only by the test suites.
//!
//! Everything here is deliberately written from first principles — direct
//! formulas, interval bisection, characteristic-polynomial invariants —
//! and never calls into `lambda-cavity`, so the two codebases can check
//! each other without sharing failure modes.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64 as C64;

/// Poisson weight e^{−m} mᵏ/k! by the direct formula with an exact
/// integer factorial (k ≤ 20 stays exact in u64).
pub fn poisson_pmf_direct(mean: f64, k: u32) -> f64 {
    assert!(k <= 20, "direct factorial only exact up to 20!");
    let fact = (1..=k as u64).product::<u64>() as f64;
    (-mean).exp() * mean.powi(k as i32) / fact
}

/// Poisson tail mass P(X > n) by explicit partial summation of the pmf
/// recurrence until terms fall below 1e-300.
pub fn poisson_tail_above(mean: f64, n: usize) -> f64 {
    let mut p = (-mean).exp();
    let mut k = 0usize;
    // skip the head
    while k < n + 1 {
        k += 1;
        p *= mean / k as f64;
    }
    let mut tail = 0.0;
    while p > 1e-300 || k < n + 1 + (2.0 * mean) as usize + 20 {
        tail += p;
        k += 1;
        p *= mean / k as f64;
        if k > 100_000 {
            break;
        }
    }
    tail
}

/// Coefficients (x₁, x₂, x₃) of the block eigenfrequency cubic
/// μ³ + x₁μ² + x₂μ + x₃, derived from the 3×3 block Hamiltonian rather
/// than from any closed-form coefficient expression.
///
/// In the rotating frame the block Hamiltonian is the real symmetric
/// "arrow" matrix
///
/// ```text
///       ⎡ V_A        κ₁        κ₂      ⎤
///   H = ⎢ κ₁     V_B + Δ₂      0       ⎥
///       ⎣ κ₂         0     V_C + Δ₃    ⎦
/// ```
///
/// whose eigenvalues E relate to the cubic roots by μ = Δ₂ − E. The cubic
/// is therefore Π(μ − Δ₂ + Eⱼ) expanded through the matrix invariants
/// tr H, (tr²H − tr H²)/2 and det H.
#[allow(clippy::too_many_arguments)]
pub fn block_char_poly(
    v_a: f64,
    v_b: f64,
    v_c: f64,
    kappa1: f64,
    kappa2: f64,
    delta2: f64,
    delta3: f64,
) -> (f64, f64, f64) {
    let h = [
        [v_a, kappa1, kappa2],
        [kappa1, v_b + delta2, 0.0],
        [kappa2, 0.0, v_c + delta3],
    ];
    let tr = h[0][0] + h[1][1] + h[2][2];
    let tr2 = {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += h[i][j] * h[j][i];
            }
        }
        s
    };
    let e2 = 0.5 * (tr * tr - tr2); // Σ_{i<j} E_i E_j
    let det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    // Π(μ + E_j + δ) with δ = −Δ₂, expanded in powers of μ:
    let d = -delta2;
    let x1 = tr + 3.0 * d;
    let x2 = e2 + 2.0 * d * tr + 3.0 * d * d;
    let x3 = det + d * e2 + d * d * tr + d * d * d;
    (x1, x2, x3)
}

/// All three (real) eigenvalues of a Hermitian 3×3 matrix by sign bisection
/// of the characteristic polynomial on the monotone intervals delimited by
/// the stationary points, bracketed by the Gershgorin bound. Returned in
/// ascending order.
pub fn bisect_eigs3(h: &[[C64; 3]; 3]) -> [f64; 3] {
    // characteristic polynomial p(x) = x³ + c2 x² + c1 x + c0
    let a = h[0][0].re;
    let b = h[1][1].re;
    let c = h[2][2].re;
    let p = h[0][1];
    let q = h[0][2];
    let r = h[1][2];
    let c2 = -(a + b + c);
    let c1 = a * b + b * c + c * a - p.norm_sqr() - q.norm_sqr() - r.norm_sqr();
    let c0 = -(a * b * c + 2.0 * (p * r * q.conj()).re
        - a * r.norm_sqr()
        - b * q.norm_sqr()
        - c * p.norm_sqr());

    let poly = |x: f64| ((x + c2) * x + c1) * x + c0;

    // Gershgorin bracket
    let rad0 = p.norm() + q.norm();
    let rad1 = p.norm() + r.norm();
    let rad2 = q.norm() + r.norm();
    let lo = (a - rad0).min(b - rad1).min(c - rad2) - 1.0;
    let hi = (a + rad0).max(b + rad1).max(c + rad2) + 1.0;

    // stationary points of the cubic
    let da = 3.0;
    let db = 2.0 * c2;
    let dc = c1;
    let disc = db * db - 4.0 * da * dc;
    let mut cuts = vec![lo];
    if disc > 0.0 {
        let s = disc.sqrt();
        let r1 = (-db - s) / (2.0 * da);
        let r2 = (-db + s) / (2.0 * da);
        for r in [r1.min(r2), r1.max(r2)] {
            if r > lo && r < hi {
                cuts.push(r);
            }
        }
    }
    cuts.push(hi);

    let bisect = |mut a: f64, mut b: f64| {
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if poly(a) * poly(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    };

    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if poly(a) == 0.0 {
            roots.push(a);
        } else if poly(a) * poly(b) < 0.0 {
            roots.push(bisect(a, b));
        }
    }
    if poly(hi) == 0.0 {
        roots.push(hi);
    }
    // Multiple roots sit at stationary points where the polynomial does not
    // change sign; fill from the stationary values with smallest |p|.
    while roots.len() < 3 {
        let mut best = (f64::INFINITY, 0.0);
        for &x in &cuts[1..cuts.len() - 1] {
            let v = poly(x).abs();
            if v < best.0 {
                best = (v, x);
            }
        }
        if best.0.is_finite() {
            roots.push(best.1);
        } else {
            roots.push(-c2 / 3.0);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    [roots[0], roots[1], roots[2]]
}

/// Harmonic-oscillator eigenfunction ψₙ(x) by the direct Hermite-polynomial
/// formula ψₙ = (√π 2ⁿ n!)^{−1/2} e^{−x²/2} Hₙ(x); overflow-safe only for
/// small n (factorials are materialized), which is exactly its role as an
/// independent cross-check.
pub fn hermite_psi_direct(n: usize, x: f64) -> f64 {
    assert!(n <= 15, "direct evaluation only intended for small n");
    // physicists' Hermite polynomials by the coefficient recurrence
    let mut h_prev = 1.0_f64;
    let mut h = 2.0 * x;
    if n == 0 {
        h = 1.0;
    } else {
        for k in 1..n {
            let next = 2.0 * x * h - 2.0 * (k as f64) * h_prev;
            h_prev = h;
            h = next;
        }
    }
    let fact = (1..=n as u64).product::<u64>() as f64;
    let norm = (std::f64::consts::PI.sqrt() * 2f64.powi(n as i32) * fact).sqrt();
    (-0.5 * x * x).exp() * h / norm
}

/// Closed-form amplitudes of the resonant symmetric block (all Kerr shifts
/// and detunings zero): the three-level generalization of Rabi flopping at
/// Ω_R = √(κ₁² + κ₂²).
pub fn rabi_amplitudes(kappa1: f64, kappa2: f64, t: f64) -> (C64, C64, C64) {
    let omega = (kappa1 * kappa1 + kappa2 * kappa2).sqrt();
    let (s, c) = (omega * t).sin_cos();
    let a = C64::new(c, 0.0);
    let b = C64::new(0.0, -kappa1 / omega * s);
    let cc = C64::new(0.0, -kappa2 / omega * s);
    (a, b, cc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_direct_sanity() {
        // e^{-1}/1 at k = 0, mean 1
        assert!((poisson_pmf_direct(1.0, 0) - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn bisect_recovers_diagonal() {
        let z = C64::new(0.0, 0.0);
        let d = |x: f64| C64::new(x, 0.0);
        let h = [[d(0.5), z, z], [z, d(0.3), z], [z, z, d(0.2)]];
        let e = bisect_eigs3(&h);
        assert!((e[0] - 0.2).abs() < 1e-12);
        assert!((e[1] - 0.3).abs() < 1e-12);
        assert!((e[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bisect_handles_double_root() {
        let z = C64::new(0.0, 0.0);
        let d = |x: f64| C64::new(x, 0.0);
        // diag(1, 0, 0): double eigenvalue 0
        let h = [[d(1.0), z, z], [z, d(0.0), z], [z, z, d(0.0)]];
        let e = bisect_eigs3(&h);
        assert!(e[0].abs() < 1e-9 && e[1].abs() < 1e-9);
        assert!((e[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hermite_direct_ground_state() {
        let psi0 = hermite_psi_direct(0, 0.0);
        assert!((psi0 - 0.7511255444649425).abs() < 1e-15);
        assert_eq!(hermite_psi_direct(1, 0.0), 0.0);
    }
}
