//! Closed-form quantities of the process and of the coloring analysis.
//! All logarithms are natural.

/// Default slowly diverging correction `ln ln ln n`.
pub fn default_omega(n: usize) -> f64 {
    (n as f64).ln().ln().ln()
}

/// Edge probability `p = (ln n + (q - 1) ln ln n - omega) / n`.
pub fn edge_probability(n: usize, q: u32, omega: f64) -> f64 {
    let ln = (n as f64).ln();
    (ln + (q as f64 - 1.0) * ln.ln() - omega) / n as f64
}

/// `m = C(n, 2) p`, rounded down.
pub fn m_edges(n: usize, q: u32, omega: f64) -> u64 {
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    (pairs * edge_probability(n, q, omega)).max(0.0).floor() as u64
}

/// Upper end `m + 2 omega n` of the hitting-time window.
pub fn m_upper(n: usize, q: u32, omega: f64) -> u64 {
    m_edges(n, q, omega) + (2.0 * omega * n as f64).max(0.0).floor() as u64
}

/// `n (ln n + (q - 1) ln ln n) / 2`, the scale of `tau_q`.
pub fn tau_scale(n: usize, q: u32) -> f64 {
    let ln = (n as f64).ln();
    n as f64 * (ln + (q as f64 - 1.0) * ln.ln()) / 2.0
}

/// `t_eps = floor(eps n ln n)`.
pub fn t_eps(n: usize, epsilon: f64) -> u64 {
    (epsilon * n as f64 * (n as f64).ln()).floor() as u64
}

/// Raw per-color threshold `eps ln n / (1000 q)` before clamping.
pub fn full_threshold_raw(n: usize, q: u32, epsilon: f64) -> f64 {
    epsilon * (n as f64).ln() / (1000.0 * q as f64)
}

/// `d_full = max(1, floor(eps ln n / (1000 q)))`.
pub fn d_full(n: usize, q: u32, epsilon: f64) -> u32 {
    (full_threshold_raw(n, q, epsilon).floor() as u32).max(1)
}

/// Degree bound below which a vertex is small: `ln n / (denominator)`, the
/// denominator being `100 q` unless overridden.
pub fn small_bound(n: usize, denominator: f64) -> f64 {
    (n as f64).ln() / denominator
}

/// `nu_k = e^{2 omega} (ln n)^{k - q + 1} / (k - 1)!`.
pub fn nu_k(n: usize, q: u32, k: u32, omega: f64) -> f64 {
    let ln = (n as f64).ln();
    let exponent = k as f64 - q as f64 + 1.0;
    let factorial: f64 = (1..k).map(|i| i as f64).product();
    (2.0 * omega).exp() * ln.powf(exponent) / factorial
}

/// Pool-size lower bound `m_+ = n ln n / (8 q)`.
pub fn m_plus(n: usize, q: u32) -> f64 {
    n as f64 * (n as f64).ln() / (8.0 * q as f64)
}

/// Expansion radius `alpha = 1 / (10^6 q)`.
pub fn expansion_alpha(q: u32) -> f64 {
    1.0 / (1.0e6 * q as f64)
}

/// Lower bound `n - 203 q n / (eps ln n)` on `|Full'|`.
pub fn full_prime_bound(n: usize, q: u32, epsilon: f64) -> f64 {
    let nf = n as f64;
    nf - 203.0 * q as f64 * nf / (epsilon * nf.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_constants_at_n_1000() {
        assert_eq!(t_eps(1000, 0.1), 690);
        assert_eq!(d_full(1000, 4, 0.1), 1);
        assert!((full_threshold_raw(1000, 4, 0.1) - 0.000_172_69).abs() < 1e-7);
    }

    #[test]
    fn small_threshold_is_vacuous_at_desk_scale() {
        assert!(small_bound(4096, 400.0) < 1.0);
        assert!((small_bound(4096, 400.0) - 8.317_766 / 400.0).abs() < 1e-6);
        assert!(small_bound(100_000, 400.0) < 1.0);
        assert!((small_bound(100_000, 1.0) - 11.512_925).abs() < 1e-6);
    }

    #[test]
    fn nu_at_lowest_degree() {
        let omega = default_omega(10_000);
        let expected = (2.0 * omega).exp() / 2.0;
        assert!((nu_k(10_000, 4, 3, omega) - expected).abs() < 1e-12);
    }

    #[test]
    fn m_plus_at_4096() {
        assert!((m_plus(4096, 4) - 1064.67).abs() < 0.05);
    }

    #[test]
    fn full_prime_bound_negative_at_4096() {
        assert!(full_prime_bound(4096, 4, 0.1) < 0.0);
    }
}
