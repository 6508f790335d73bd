//! Bernoulli numbers and polynomials in double precision.

/// `B_{2j}` for `j = 0..=30`.
pub(crate) const B_EVEN: [f64; 31] = [
    1.0,                     // B_0
    0.16666666666666666,     // B_2 = 1/6
    -0.03333333333333333,    // B_4 = -1/30
    0.023809523809523808,    // B_6 = 1/42
    -0.03333333333333333,    // B_8 = -1/30
    0.07575757575757576,     // B_10 = 5/66
    -0.2531135531135531,     // B_12 = -691/2730
    1.1666666666666667,      // B_14 = 7/6
    -7.092156862745098,      // B_16 = -3617/510
    54.971177944862156,      // B_18 = 43867/798
    -529.1242424242424,      // B_20 = -174611/330
    6192.123188405797,       // B_22 = 854513/138
    -86580.25311355312,      // B_24 = -236364091/2730
    1425517.1666666667,      // B_26 = 8553103/6
    -27298231.067816094,     // B_28
    601580873.9006424,       // B_30
    -15116315767.092157,     // B_32
    429614643061.1667,       // B_34
    -13711655205088.332,     // B_36
    488332318973593.2,       // B_38
    -1.9296579341940068e16,  // B_40
    8.416930475736826e17,    // B_42
    -4.0338071854059454e19,  // B_44
    2.1150748638081993e21,   // B_46
    -1.2086626522296526e23,  // B_48
    7.500866746076964e24,    // B_50
    -5.038778101481069e26,   // B_52
    3.6528776484818122e28,   // B_54
    -2.849876930245088e30,   // B_56
    2.3865427499683627e32,   // B_58
    -2.1399949257225335e34,  // B_60
];

/// `B_n` with the convention `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => -0.5,
        _ if n % 2 == 1 => 0.0,
        _ => B_EVEN[n / 2],
    }
}

pub(crate) const MAX_BERNOULLI: usize = 60;

/// Bernoulli polynomial `B_n(x) = Σ_k C(n,k) B_k x^{n−k}`.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    assert!(n <= MAX_BERNOULLI);
    // Horner in x with binomial-weighted coefficients.
    let mut acc = 0.0;
    let mut binom = 1.0; // C(n, k) for k running down from n
    let mut coeffs = [0.0f64; MAX_BERNOULLI + 1];
    for k in 0..=n {
        coeffs[k] = binom * bernoulli(k);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    // term for x^{n-k} is coeffs[k]; evaluate Σ coeffs[k] x^{n-k}
    for k in 0..=n {
        acc = acc * x + coeffs[k];
    }
    acc
}

/// `n!` as `f64`.
pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_values() {
        // B_2(x) = x² − x + 1/6, B_3(x) = x³ − 3x²/2 + x/2
        let x = 0.3;
        assert!((bernoulli_poly(2, x) - (x * x - x + 1.0 / 6.0)).abs() < 1e-15);
        assert!((bernoulli_poly(3, x) - (x * x * x - 1.5 * x * x + 0.5 * x)).abs() < 1e-15);
        // B_n(1) = B_n(0) for n ≥ 2
        for n in 2..20 {
            assert!((bernoulli_poly(n, 1.0) - bernoulli(n)).abs() < 1e-9 * (1.0 + bernoulli(n).abs()));
        }
    }

    #[test]
    fn table_matches_recurrence() {
        // Σ_{k<m} C(m+1,k) B_k = −(m+1) B_m, checked in f64 for small m.
        for m in 2..=16 {
            let mut s = 0.0;
            let mut c = 1.0;
            for k in 0..m {
                s += c * bernoulli(k);
                c = c * (m + 1 - k) as f64 / (k + 1) as f64;
            }
            assert!((s + (m as f64 + 1.0) * bernoulli(m)).abs() < 1e-9, "m={m}");
        }
    }
}
