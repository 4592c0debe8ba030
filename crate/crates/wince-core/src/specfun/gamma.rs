//! Gamma function for real argument (Lanczos approximation) plus the few
//! digamma values the integer-order Y series needs.

/// Lanczos coefficients, g = 7, 9 terms (Godfrey's set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln |Gamma(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x <= 0.0 {
        // Reflect to keep the caller honest; log of |Gamma|.
        if x == x.floor() {
            return f64::INFINITY;
        }
        let s = (std::f64::consts::PI * x).sin().abs();
        return std::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - x);
    }
    let xm1 = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    let t = xm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (xm1 + 0.5) * t.ln() - t + acc.ln()
}

/// Gamma(x) for real x; poles at non-positive integers return +/- infinity.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        if x == x.floor() {
            return f64::INFINITY;
        }
        // Reflection formula keeps the Lanczos sum on x >= 0.5.
        let pi = std::f64::consts::PI;
        return pi / ((pi * x).sin() * gamma(1.0 - x));
    }
    let xm1 = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    let t = xm1 + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(xm1 + 0.5) * (-t).exp() * acc
}

/// Ratio Gamma(a)/Gamma(b) for real a, b, stable against overflow of the
/// individual factors. Either argument may sit left of the poles as long as
/// it is not itself a pole.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let pole = |x: f64| x <= 0.0 && x == x.floor();
    if pole(a) {
        return 0.0_f64; // 1/Gamma(b) times a pole-killed numerator
    }
    if pole(b) {
        return f64::INFINITY;
    }
    // sign of Gamma on the negative axis flips between consecutive poles:
    // positive on (-2,-1), negative on (-1,0), and so on alternating
    let sign = |x: f64| -> f64 {
        if x > 0.0 || (x.floor() as i64).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let ln_abs = |x: f64| -> f64 {
        if x > 0.0 {
            ln_gamma(x)
        } else {
            pi.ln() - (pi * x).sin().abs().ln() - ln_gamma(1.0 - x)
        }
    };
    sign(a) * sign(b) * (ln_abs(a) - ln_abs(b)).exp()
}

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// digamma(n) = -gamma + H_{n-1} for a positive integer n.
pub fn digamma_int(n: usize) -> f64 {
    debug_assert!(n >= 1);
    let mut h = 0.0;
    for k in 1..n {
        h += 1.0 / k as f64;
    }
    h - EULER_GAMMA
}
