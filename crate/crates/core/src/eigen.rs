//! Closed-form eigenvalues of a real 3x3 matrix.
//!
//! The characteristic polynomial `l^3 + a l^2 + b l + c` is shifted to the
//! depressed cubic `t^3 + p t + q` with `l = t - a/3`. Three real roots use
//! the trigonometric form; one real root and a conjugate pair use Cardano's
//! formula with the cancellation-free choice of cube root. Each root then
//! gets a single Newton step on the undepressed polynomial, kept only if it
//! lowers the residual.

use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, Div, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Complex { re, im: 0.0 }
    }

    pub fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, o: Complex) -> Complex {
        Complex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, o: Complex) -> Complex {
        Complex::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul<Complex> for f64 {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        Complex::new(self * o.re, self * o.im)
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, o: Complex) -> Complex {
        let d = o.re * o.re + o.im * o.im;
        Complex::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenError {
    NonFinite,
}

impl fmt::Display for EigenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("matrix has non-finite entries")
    }
}

impl core::error::Error for EigenError {}

/// Coefficients `(a, b, c)` of the monic characteristic polynomial
/// `l^3 + a l^2 + b l + c`.
pub fn characteristic_coefficients(m: &[[f64; 3]; 3]) -> (f64, f64, f64) {
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    (-trace, minors, -det)
}

fn poly(a: f64, b: f64, c: f64, l: Complex) -> (Complex, Complex) {
    // Horner for value and derivative.
    let value = ((l + Complex::real(a)) * l + Complex::real(b)) * l + Complex::real(c);
    let slope = (3.0 * l + Complex::real(2.0 * a)) * l + Complex::real(b);
    (value, slope)
}

fn newton_polish(a: f64, b: f64, c: f64, root: Complex) -> Complex {
    let (value, slope) = poly(a, b, c, root);
    if slope.abs() == 0.0 {
        return root;
    }
    let candidate = root - value / slope;
    let candidate = if root.im == 0.0 {
        Complex::real(candidate.re)
    } else {
        candidate
    };
    let (after, _) = poly(a, b, c, candidate);
    if after.re.is_finite() && after.im.is_finite() && after.abs() < value.abs() {
        candidate
    } else {
        root
    }
}

fn is_diagonal(m: &[[f64; 3]; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| i == j || m[i][j] == 0.0))
}

/// Orders by real part, then imaginary part.
pub fn sort_eigenvalues(values: &mut [Complex; 3]) {
    values.sort_by(|l, r| {
        l.re.partial_cmp(&r.re)
            .unwrap_or(Ordering::Equal)
            .then(l.im.partial_cmp(&r.im).unwrap_or(Ordering::Equal))
    });
}

/// Eigenvalues of a real 3x3 matrix.
///
/// A diagonal matrix returns its diagonal exactly, in axis order, so that
/// eigenvalue `k` belongs to coordinate `k`. Any other matrix returns its
/// roots sorted by `(re, im)`.
pub fn eigenvalues3(m: &[[f64; 3]; 3]) -> Result<[Complex; 3], EigenError> {
    if !m.iter().flatten().all(|v| v.is_finite()) {
        return Err(EigenError::NonFinite);
    }
    if is_diagonal(m) {
        return Ok([
            Complex::real(m[0][0]),
            Complex::real(m[1][1]),
            Complex::real(m[2][2]),
        ]);
    }
    let (a, b, c) = characteristic_coefficients(m);
    let mut roots = cubic_roots(a, b, c);
    for r in roots.iter_mut() {
        *r = newton_polish(a, b, c, *r);
    }
    sort_eigenvalues(&mut roots);
    Ok(roots)
}

/// Roots of `l^3 + a l^2 + b l + c`, unpolished and unordered.
pub fn cubic_roots(a: f64, b: f64, c: f64) -> [Complex; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if p == 0.0 && q == 0.0 {
        let r = Complex::real(-shift);
        return [r, r, r];
    }

    if disc <= 0.0 && p < 0.0 {
        let radius = 2.0 * libm::sqrt(-third_p);
        let cos_arg = (3.0 * q / (2.0 * p) * libm::sqrt(-3.0 / p)).clamp(-1.0, 1.0);
        let phi = libm::acos(cos_arg) / 3.0;
        let mut out = [Complex::default(); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = radius * libm::cos(phi - 2.0 * PI * k as f64 / 3.0);
            *slot = Complex::real(t - shift);
        }
        return out;
    }

    // One real root. Pick the cube-root branch whose magnitude adds, then
    // recover the partner from u v = -p/3.
    let sq = libm::sqrt(disc.max(0.0));
    let big = if half_q >= 0.0 {
        -libm::cbrt(half_q + sq)
    } else {
        libm::cbrt(-half_q + sq)
    };
    let small = if big == 0.0 { 0.0 } else { -third_p / big };
    let real = big + small - shift;
    let re = -(big + small) / 2.0 - shift;
    let im = libm::sqrt(3.0) / 2.0 * (big - small);
    [
        Complex::real(real),
        Complex::new(re, im.abs()),
        Complex::new(re, -im.abs()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity() {
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(eigenvalues3(&id).unwrap(), [Complex::real(1.0); 3]);
    }

    #[test]
    fn diagonal_is_exact_in_axis_order() {
        let d = [[-1.0, 0.0, 0.0], [0.0, 2.5, 0.0], [0.0, 0.0, 5.4]];
        let ev = eigenvalues3(&d).unwrap();
        assert_eq!(
            ev,
            [Complex::real(-1.0), Complex::real(2.5), Complex::real(5.4)]
        );
        let d = [[3.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 0.0]];
        let ev = eigenvalues3(&d).unwrap();
        assert_eq!(ev[0].re, 3.0);
        assert_eq!(ev[1].re, -2.0);
    }

    #[test]
    fn rotation_block() {
        let m = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]];
        let ev = eigenvalues3(&m).unwrap();
        assert!(close(ev[0], Complex::new(0.0, -1.0), 1e-12), "{:?}", ev);
        assert!(close(ev[1], Complex::new(0.0, 1.0), 1e-12), "{:?}", ev);
        assert!(close(ev[2], Complex::real(2.0), 1e-12), "{:?}", ev);
    }

    #[test]
    fn triangular_three_real() {
        let m = [[1.0, 4.0, -2.0], [0.0, -3.0, 7.0], [0.0, 0.0, 0.5]];
        let ev = eigenvalues3(&m).unwrap();
        let expect = [-3.0, 0.5, 1.0];
        for (l, e) in ev.iter().zip(expect) {
            assert!(close(*l, Complex::real(e), 1e-12), "{:?}", ev);
        }
    }

    #[test]
    fn repeated_root() {
        // (l - 2)^2 (l + 1) as a companion matrix
        let (a, b, c) = (-3.0, 0.0, 4.0);
        let m = [[0.0, 0.0, -c], [1.0, 0.0, -b], [0.0, 1.0, -a]];
        let ev = eigenvalues3(&m).unwrap();
        assert!(close(ev[0], Complex::real(-1.0), 1e-12));
        assert!(close(ev[1], Complex::real(2.0), 1e-7));
        assert!(close(ev[2], Complex::real(2.0), 1e-7));
    }

    #[test]
    fn non_finite_rejected() {
        let m = [[f64::NAN, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(eigenvalues3(&m), Err(EigenError::NonFinite));
    }

    proptest! {
        #[test]
        fn roots_satisfy_characteristic_polynomial(
            entries in proptest::array::uniform9(-10.0..10.0f64)
        ) {
            let m = [
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
                [entries[6], entries[7], entries[8]],
            ];
            let norm = entries.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
            let (a, b, c) = characteristic_coefficients(&m);
            let ev = eigenvalues3(&m).unwrap();
            for l in ev {
                let (value, _) = poly(a, b, c, l);
                prop_assert!(value.abs() <= 1e-8 * norm * norm * norm, "{:?} {:?}", l, value);
            }
            let trace = m[0][0] + m[1][1] + m[2][2];
            let sum = ev[0] + ev[1] + ev[2];
            prop_assert!((sum.re - trace).abs() <= 1e-9 * norm);
            prop_assert!(sum.im.abs() <= 1e-9 * norm);
        }
    }
}
