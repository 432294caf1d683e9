use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Scalar> Vec2<F> {
    #[inline]
    pub fn new(x: F, y: F) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(F::zero(), F::zero())
    }

    /// Unit vector at angle `theta`.
    pub fn polar(theta: F) -> Self {
        Vec2::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, o: Self) -> F {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn norm_sqr(self) -> F {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> F {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn angle(self) -> F {
        self.y.atan2(self.x)
    }

    /// Mirror image across the line orthogonal to the unit vector `n`.
    #[inline]
    pub fn reflect(self, n: Self) -> Self {
        self - n * (F::lit(2.0) * self.dot(n))
    }

    pub fn cast<G: Scalar>(self) -> Vec2<G> {
        Vec2::new(G::lit(self.x.as_f64()), G::lit(self.y.as_f64()))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<F: Scalar> From<[f64; 2]> for Vec2<F> {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(F::lit(a[0]), F::lit(a[1]))
    }
}

impl<F: Scalar> Add for Vec2<F> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl<F: Scalar> AddAssign for Vec2<F> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<F: Scalar> Sub for Vec2<F> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl<F: Scalar> Mul<F> for Vec2<F> {
    type Output = Self;
    #[inline]
    fn mul(self, k: F) -> Self {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl<F: Scalar> Div<F> for Vec2<F> {
    type Output = Self;
    #[inline]
    fn div(self, k: F) -> Self {
        Vec2::new(self.x / k, self.y / k)
    }
}

impl<F: Scalar> Neg for Vec2<F> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}
