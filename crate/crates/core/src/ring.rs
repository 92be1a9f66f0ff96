//! Exact arithmetic in quadratic orders `Z[ω]` with `ω² = t·ω − n`, and in
//! 2×2 matrices over them. Generic over the machine integer so the subgroup
//! search can run on `i64` while the local lattice code uses `i128`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{PrimInt, Signed};

pub trait Scalar: PrimInt + Signed + fmt::Debug + fmt::Display + Send + Sync {}
impl<T: PrimInt + Signed + fmt::Debug + fmt::Display + Send + Sync> Scalar for T {}

/// `x + y·ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QuadInt<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> QuadInt<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn int(x: T) -> Self {
        Self { x, y: T::zero() }
    }

    pub fn zero() -> Self {
        Self::int(T::zero())
    }

    pub fn one() -> Self {
        Self::int(T::one())
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k)
    }

    /// Largest coordinate in absolute value.
    pub fn height(self) -> T {
        self.x.abs().max(self.y.abs())
    }
}

impl<T: Scalar> Add for QuadInt<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for QuadInt<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Neg for QuadInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Scalar> fmt::Display for QuadInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}w", self.y),
            (false, false) if self.y.is_negative() => write!(f, "{}{}w", self.x, self.y),
            (false, false) => write!(f, "{}+{}w", self.x, self.y),
        }
    }
}

/// The order `Z[ω]` with `ω² = trace·ω − norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing<T> {
    pub trace: T,
    pub norm: T,
}

impl<T: Scalar> QuadRing<T> {
    pub fn new(trace: T, norm: T) -> Self {
        Self { trace, norm }
    }

    /// `Z[√−d]`.
    pub fn sqrt_minus(d: T) -> Self {
        Self::new(T::zero(), d)
    }

    pub fn mul(&self, a: QuadInt<T>, b: QuadInt<T>) -> QuadInt<T> {
        let yy = a.y * b.y;
        QuadInt::new(a.x * b.x - self.norm * yy, a.x * b.y + a.y * b.x + self.trace * yy)
    }

    pub fn conj(&self, a: QuadInt<T>) -> QuadInt<T> {
        QuadInt::new(a.x + self.trace * a.y, -a.y)
    }

    pub fn norm_of(&self, a: QuadInt<T>) -> T {
        a.x * a.x + self.trace * a.x * a.y + self.norm * a.y * a.y
    }

    pub fn pow(&self, a: QuadInt<T>, e: u32) -> QuadInt<T> {
        (0..e).fold(QuadInt::one(), |acc, _| self.mul(acc, a))
    }

    /// `a / b` if it lies in the order.
    pub fn div_exact(&self, a: QuadInt<T>, b: QuadInt<T>) -> Option<QuadInt<T>> {
        let n = self.norm_of(b);
        if n.is_zero() {
            return None;
        }
        let num = self.mul(a, self.conj(b));
        (num.x % n).is_zero().then_some(())?;
        (num.y % n).is_zero().then_some(())?;
        Some(QuadInt::new(num.x / n, num.y / n))
    }
}

/// Row-major 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2<T> {
    pub a: QuadInt<T>,
    pub b: QuadInt<T>,
    pub c: QuadInt<T>,
    pub d: QuadInt<T>,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: QuadInt<T>, b: QuadInt<T>, c: QuadInt<T>, d: QuadInt<T>) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::scalar(QuadInt::one())
    }

    pub fn scalar(s: QuadInt<T>) -> Self {
        Self::new(s, QuadInt::zero(), QuadInt::zero(), s)
    }

    pub fn entries(&self) -> [QuadInt<T>; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> QuadInt<T> {
        self.a + self.d
    }

    /// Adjugate; the inverse for determinant one.
    pub fn adj(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn height(&self) -> T {
        self.entries().iter().map(|e| e.height()).fold(T::zero(), T::max)
    }

    pub fn map(&self, f: impl Fn(QuadInt<T>) -> QuadInt<T>) -> Self {
        Self::new(f(self.a), f(self.b), f(self.c), f(self.d))
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<T: Scalar> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|e| -e)
    }
}

impl<T: Scalar> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Matrix operations that need the ring structure.
impl<T: Scalar> QuadRing<T> {
    pub fn mat_mul(&self, m: &Mat2<T>, n: &Mat2<T>) -> Mat2<T> {
        let r = |p, q, s, t| self.mul(p, q) + self.mul(s, t);
        Mat2::new(r(m.a, n.a, m.b, n.c), r(m.a, n.b, m.b, n.d), r(m.c, n.a, m.d, n.c), r(m.c, n.b, m.d, n.d))
    }

    pub fn det(&self, m: &Mat2<T>) -> QuadInt<T> {
        self.mul(m.a, m.d) - self.mul(m.b, m.c)
    }

    pub fn mat_pow(&self, m: &Mat2<T>, e: u32) -> Mat2<T> {
        (0..e).fold(Mat2::identity(), |acc, _| self.mat_mul(&acc, m))
    }
}
