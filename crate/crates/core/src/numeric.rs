use num_complex::Complex64;

/// `|a - b|` scaled by the largest magnitude involved (at least 1).
pub fn relative_residual(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm()).max(1.0);
    (a - b).norm() / scale
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    relative_residual(a, b) <= tol
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Two independently computed values of the same quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualRoute {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl DualRoute {
    pub fn new(lhs: Complex64, rhs: Complex64) -> Self {
        DualRoute { lhs, rhs }
    }

    pub fn residual(&self) -> f64 {
        relative_residual(self.lhs, self.rhs)
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.residual() <= tol
    }
}

/// Nearest integer if `z` is within `tol` of it (imaginary part included).
pub fn as_integer(z: Complex64, tol: f64) -> Option<i128> {
    let r = z.re.round();
    if (z.re - r).abs() <= tol && z.im.abs() <= tol {
        Some(r as i128)
    } else {
        None
    }
}
