use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value of a scalar function together with its first four derivatives at a point.
///
/// Components are raw derivatives `f, f', f'', f''', f''''`, not Taylor
/// coefficients. Arithmetic propagates them with the Leibniz rule and, for
/// elementary functions, with Faà di Bruno's formula truncated at order four.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet4 {
    d: [f64; 5],
}

const BINOM: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0],
];

impl Jet4 {
    pub const fn new(d: [f64; 5]) -> Self {
        Self { d }
    }

    pub const fn constant(c: f64) -> Self {
        Self::new([c, 0.0, 0.0, 0.0, 0.0])
    }

    /// The identity function evaluated at `t`.
    pub const fn variable(t: f64) -> Self {
        Self::new([t, 1.0, 0.0, 0.0, 0.0])
    }

    pub fn value(&self) -> f64 {
        self.d[0]
    }

    /// Derivative of order `k` (0 ≤ k ≤ 4).
    pub fn derivative(&self, k: usize) -> f64 {
        self.d[k]
    }

    pub fn derivatives(&self) -> [f64; 5] {
        self.d
    }

    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|x| x.is_finite())
    }

    /// Composes a scalar function with this jet, given the function's value
    /// and derivatives `[φ, φ', φ'', φ''', φ'''']` at `self.value()`.
    pub fn compose(&self, phi: [f64; 5]) -> Self {
        let [_, u1, u2, u3, u4] = self.d;
        let u1_2 = u1 * u1;
        Self::new([
            phi[0],
            phi[1] * u1,
            phi[2] * u1_2 + phi[1] * u2,
            phi[3] * u1_2 * u1 + 3.0 * phi[2] * u1 * u2 + phi[1] * u3,
            phi[4] * u1_2 * u1_2
                + 6.0 * phi[3] * u1_2 * u2
                + phi[2] * (4.0 * u1 * u3 + 3.0 * u2 * u2)
                + phi[1] * u4,
        ])
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.d[0].sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.d[0].sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn tan(self) -> Self {
        let x = self.d[0].tan();
        let x2 = x * x;
        let sec2 = 1.0 + x2;
        self.compose([
            x,
            sec2,
            2.0 * x * sec2,
            2.0 + 8.0 * x2 + 6.0 * x2 * x2,
            8.0 * x * sec2 * (2.0 + 3.0 * x2),
        ])
    }

    pub fn exp(self) -> Self {
        let e = self.d[0].exp();
        self.compose([e; 5])
    }

    /// Natural logarithm. Non-finite components result for non-positive values.
    pub fn ln(self) -> Self {
        let u = self.d[0];
        let r = 1.0 / u;
        let r2 = r * r;
        self.compose([u.ln(), r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2])
    }

    /// Square root. Non-finite components result for non-positive values.
    pub fn sqrt(self) -> Self {
        let u = self.d[0];
        let s = u.sqrt();
        let r = 1.0 / u;
        let d1 = 0.5 * s * r;
        let d2 = -0.5 * d1 * r;
        let d3 = -1.5 * d2 * r;
        let d4 = -2.5 * d3 * r;
        self.compose([s, d1, d2, d3, d4])
    }

    pub fn recip(self) -> Self {
        Self::constant(1.0) / self
    }

    /// Integer power by repeated squaring; negative exponents go through `recip`.
    pub fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Real power as `exp(c·ln(self))`; inherits the domain of `ln`.
    pub fn powf(self, c: f64) -> Self {
        (self.ln() * c).exp()
    }
}

impl fmt::Display for Jet4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.d;
        write!(f, "({a}, {b}, {c}, {d}, {e})")
    }
}

impl From<f64> for Jet4 {
    fn from(c: f64) -> Self {
        Self::constant(c)
    }
}

impl Add for Jet4 {
    type Output = Jet4;
    fn add(self, rhs: Jet4) -> Jet4 {
        let mut d = self.d;
        for (x, y) in d.iter_mut().zip(rhs.d) {
            *x += y;
        }
        Jet4::new(d)
    }
}

impl Sub for Jet4 {
    type Output = Jet4;
    fn sub(self, rhs: Jet4) -> Jet4 {
        let mut d = self.d;
        for (x, y) in d.iter_mut().zip(rhs.d) {
            *x -= y;
        }
        Jet4::new(d)
    }
}

impl Neg for Jet4 {
    type Output = Jet4;
    fn neg(self) -> Jet4 {
        Jet4::new(self.d.map(|x| -x))
    }
}

impl Mul for Jet4 {
    type Output = Jet4;
    fn mul(self, rhs: Jet4) -> Jet4 {
        let mut d = [0.0; 5];
        for (n, out) in d.iter_mut().enumerate() {
            *out = (0..=n)
                .map(|k| BINOM[n][k] * self.d[k] * rhs.d[n - k])
                .sum();
        }
        Jet4::new(d)
    }
}

impl Div for Jet4 {
    type Output = Jet4;
    fn div(self, rhs: Jet4) -> Jet4 {
        // Solve self = q·rhs for q order by order.
        let g0 = rhs.d[0];
        let mut q = [0.0; 5];
        for n in 0..5 {
            let mut acc = self.d[n];
            for k in 1..=n {
                acc -= BINOM[n][k] * rhs.d[k] * q[n - k];
            }
            q[n] = acc / g0;
        }
        Jet4::new(q)
    }
}

impl Add<f64> for Jet4 {
    type Output = Jet4;
    fn add(mut self, rhs: f64) -> Jet4 {
        self.d[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet4 {
    type Output = Jet4;
    fn sub(mut self, rhs: f64) -> Jet4 {
        self.d[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet4 {
    type Output = Jet4;
    fn mul(self, rhs: f64) -> Jet4 {
        Jet4::new(self.d.map(|x| x * rhs))
    }
}

impl Div<f64> for Jet4 {
    type Output = Jet4;
    fn div(self, rhs: f64) -> Jet4 {
        Jet4::new(self.d.map(|x| x / rhs))
    }
}
