//! Floating-point root refinement. Nothing here feeds a certificate: every
//! numeric root is either recognized and re-verified exactly, or reported as
//! approximate together with its residual.

use num_complex::Complex64;

/// Value of `sum c_k z^k` (ascending coefficients), by Horner's rule.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// All complex roots of a polynomial with nonzero leading coefficient,
/// by Aberth-Ehrlich iteration followed by Newton polishing.
/// Accurate for simple roots; callers pass square-free inputs.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if n == 1 {
        return vec![-c[0]];
    }
    let dc = derivative(&c);
    // initial guesses on a circle of the Cauchy bound, slightly rotated
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let p = horner(&c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&dc, z[k]);
            let sum: Complex64 = (0..n)
                .filter(|m| *m != k)
                .map(|m| {
                    let d = z[k] - z[m];
                    if d.norm() == 0.0 {
                        Complex64::new(1e-12, 0.0).inv()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..4 {
            let d = horner(&dc, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(&c, *r) / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    z
}

/// Quaternion in floating point, `[w, x, y, z]`.
pub type Quat64 = [f64; 4];

pub fn qmul(a: &Quat64, b: &Quat64) -> Quat64 {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn qadd(a: &Quat64, b: &Quat64) -> Quat64 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn qscale(a: &Quat64, s: f64) -> Quat64 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

pub fn qnorm(a: &Quat64) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn qinv(a: &Quat64) -> Quat64 {
    let n = a.iter().map(|x| x * x).sum::<f64>();
    [a[0] / n, -a[1] / n, -a[2] / n, -a[3] / n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_known_polynomials() {
        // (z - 1)(z + 2)(z^2 + 1)
        let coeffs = [c(-2.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let r = complex_roots(&coeffs);
        assert_eq!(r.len(), 4);
        for want in [c(-2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)] {
            assert!(r.iter().any(|z| (z - want).norm() < 1e-13), "{want} missing from {r:?}");
        }
    }

    #[test]
    fn complex_coefficients() {
        // (z - i)(z - 2 - i) = z^2 - (2 + 2i) z + (-1 + 2i)
        let coeffs = [c(-1.0, 2.0), c(-2.0, -2.0), c(1.0, 0.0)];
        let r = complex_roots(&coeffs);
        assert!(r.iter().any(|z| (z - c(0.0, 1.0)).norm() < 1e-13));
        assert!(r.iter().any(|z| (z - c(2.0, 1.0)).norm() < 1e-13));
    }

    #[test]
    fn quaternion_helpers() {
        let i = [0.0, 1.0, 0.0, 0.0];
        let j = [0.0, 0.0, 1.0, 0.0];
        assert_eq!(qmul(&i, &j), [0.0, 0.0, 0.0, 1.0]);
        let a = [1.0, 2.0, -1.0, 0.5];
        let p = qmul(&a, &qinv(&a));
        assert!((p[0] - 1.0).abs() < 1e-15 && qnorm(&qadd(&p, &[-1.0, 0.0, 0.0, 0.0])) < 1e-15);
        assert_eq!(qscale(&i, 2.0), [0.0, 2.0, 0.0, 0.0]);
    }
}
