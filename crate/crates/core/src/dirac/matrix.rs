use serde::{Deserialize, Serialize};

/// Real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoByTwo {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

pub const IDENTITY: TwoByTwo = TwoByTwo { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };
pub const SIGMA1: TwoByTwo = TwoByTwo { a11: 0.0, a12: 1.0, a21: 1.0, a22: 0.0 };
pub const SIGMA3: TwoByTwo = TwoByTwo { a11: 1.0, a12: 0.0, a21: 0.0, a22: -1.0 };

impl TwoByTwo {
    pub fn diag(a: f64, b: f64) -> Self {
        Self { a11: a, a12: 0.0, a21: 0.0, a22: b }
    }

    pub fn scale(self, c: f64) -> Self {
        Self { a11: c * self.a11, a12: c * self.a12, a21: c * self.a21, a22: c * self.a22 }
    }

    pub fn add(self, o: Self) -> Self {
        Self { a11: self.a11 + o.a11, a12: self.a12 + o.a12, a21: self.a21 + o.a21, a22: self.a22 + o.a22 }
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.scale(-1.0))
    }

    pub fn mul(self, o: Self) -> Self {
        Self {
            a11: self.a11 * o.a11 + self.a12 * o.a21,
            a12: self.a11 * o.a12 + self.a12 * o.a22,
            a21: self.a21 * o.a11 + self.a22 * o.a21,
            a22: self.a21 * o.a12 + self.a22 * o.a22,
        }
    }

    pub fn transpose(self) -> Self {
        Self { a11: self.a11, a12: self.a21, a21: self.a12, a22: self.a22 }
    }

    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }

    pub fn max_abs(self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a21.abs()).max(self.a22.abs())
    }

    /// Largest eigenvalue of the symmetric part.
    pub fn max_eigenvalue(self) -> f64 {
        let m = 0.5 * (self.a11 + self.a22);
        let h = 0.5 * (self.a11 - self.a22);
        let b = 0.5 * (self.a12 + self.a21);
        m + h.hypot(b)
    }
}
