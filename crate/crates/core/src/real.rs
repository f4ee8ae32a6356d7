//! Scalar types for the numeric paths.
//!
//! Everything numeric is generic over [`Real`]. Two implementations ship: `f64` and the
//! double-double [`Dd`] (about 31 significant digits) used for extended-precision runs.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Num, One, Zero};

use crate::rational::Q;

pub trait Real:
    Num
    + Copy
    + Debug
    + PartialOrd
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Name used in result diagnostics.
    const NAME: &'static str;
    /// Unit roundoff.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    /// `(sin(pi x), cos(pi x))`, exact at multiples of 1/2.
    fn sin_cos_pi(self) -> (Self, Self);

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn from_ratio(q: &Q) -> Self {
        Self::from_i64(*q.numer()) / Self::from_i64(*q.denom())
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    const NAME: &'static str = "double";
    const EPSILON: f64 = f64::EPSILON;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin_cos_pi(self) -> (Self, Self) {
        let y = self - 2.0 * (self / 2.0).round();
        let n = (2.0 * y).round();
        let t = y - n / 2.0;
        let (s, c) = (std::f64::consts::PI * t).sin_cos();
        rotate_quarter(s, c, n as i64)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

fn rotate_quarter<T: Real>(s: T, c: T, n: i64) -> (T, T) {
    match n.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Double-double number `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const DD_PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
const DD_LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }
    pub fn hi(self) -> f64 {
        self.hi
    }
    pub fn lo(self) -> f64 {
        self.lo
    }
    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }
    fn floor(self) -> Self {
        let h = self.hi.floor();
        if h == self.hi {
            let (s, e) = quick_two_sum(h, self.lo.floor());
            Dd { hi: s, lo: e }
        } else {
            Dd { hi: h, lo: 0.0 }
        }
    }
    fn round(self) -> Self {
        (self + Dd::from_f64(0.5)).floor()
    }
    fn trunc(self) -> Self {
        if self.hi < 0.0 {
            -((-self).floor())
        } else {
            self.floor()
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - b * (self / b).trunc()
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}
impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}
impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
impl DivAssign for Dd {
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd { hi: 1.0, lo: 0.0 }
    }
}

impl Num for Dd {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Dd::from_f64)
    }
}

impl Real for Dd {
    const NAME: &'static str = "extended";
    const EPSILON: f64 = 4.93e-32;

    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
    fn from_i64(x: i64) -> Self {
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn pi() -> Self {
        DD_PI
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::zero();
        }
        let y = Dd::from_f64(self.hi.sqrt());
        y + (self - y * y) / (y * Dd::from_f64(2.0))
    }
    fn exp(self) -> Self {
        if self.hi < -745.0 {
            return Dd::zero();
        }
        let k = (self / DD_LN2).round();
        let r = (self - DD_LN2 * k).ldexp(-10);
        // expm1(r) by Taylor series, then undo the 2^-10 scaling with expm1(2x) = e(e+2).
        let mut term = r;
        let mut sum = r;
        let mut n = 1i64;
        while term.hi.abs() > 1e-36 && n < 40 {
            n += 1;
            term = term * r / Dd::from_i64(n);
            sum += term;
        }
        for _ in 0..10 {
            sum = sum * (sum + Dd::from_f64(2.0));
        }
        (sum + Dd::one()).ldexp(k.hi as i32)
    }
    fn sin_cos_pi(self) -> (Self, Self) {
        let y = self - (self.ldexp(-1)).round().ldexp(1);
        let n = y.ldexp(1).round();
        let t = y - n.ldexp(-1);
        let theta = DD_PI * t;
        let x2 = theta * theta;
        let mut s = theta;
        let mut term = theta;
        let mut c = Dd::one();
        let mut cterm = Dd::one();
        let mut k = 0i64;
        while k < 30 {
            k += 1;
            cterm = -(cterm * x2) / Dd::from_i64((2 * k - 1) * (2 * k));
            term = -(term * x2) / Dd::from_i64((2 * k) * (2 * k + 1));
            c += cterm;
            s += term;
            if cterm.hi.abs() < 1e-36 {
                break;
            }
        }
        rotate_quarter(s, c, n.hi as i64)
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl std::fmt::Display for Dd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

pub type C<T> = Complex<T>;

pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

pub fn creal<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

pub fn cabs<T: Real>(z: C<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

/// Principal square root, branch cut on the negative real axis (`sqrt(-1) = i`).
pub fn csqrt<T: Real>(z: C<T>) -> C<T> {
    let r = cabs(z);
    if r == T::zero() {
        return czero();
    }
    let two = T::from_i64(2);
    if z.re >= T::zero() {
        let re = ((r + z.re) / two).sqrt();
        Complex::new(re, z.im / (two * re))
    } else {
        let mut im = ((r - z.re) / two).sqrt();
        if z.im < T::zero() {
            im = -im;
        }
        Complex::new(z.im / (two * im), im)
    }
}

pub fn cpowi<T: Real>(z: C<T>, n: i32) -> C<T> {
    let mut base = if n < 0 { cone::<T>() / z } else { z };
    let mut e = n.unsigned_abs();
    let mut acc = cone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// `exp(2 pi i q)` with `q` reduced modulo 1 exactly before conversion.
pub fn phase<T: Real>(q: &Q) -> C<T> {
    let (n, d) = (*q.numer(), *q.denom());
    let r = n.mod_floor(&d);
    let (s, c) = (T::from_i64(2 * r) / T::from_i64(d)).sin_cos_pi();
    Complex::new(c, s)
}

/// `sin(pi q)` for rational `q`, exact zero at integers.
pub fn sin_pi_ratio<T: Real>(q: &Q) -> T {
    let (n, d) = (*q.numer(), *q.denom());
    let r = n.mod_floor(&(2 * d));
    (T::from_i64(r) / T::from_i64(d)).sin_cos_pi().0
}

/// `(2 pi i)^k`: the power of `2 pi` in floating point, the power of `i` exactly.
pub fn two_pi_i_pow<T: Real>(k: i32) -> C<T> {
    let m = (T::from_i64(2) * T::pi()).powi(k);
    match k.rem_euclid(4) {
        0 => Complex::new(m, T::zero()),
        1 => Complex::new(T::zero(), m),
        2 => Complex::new(-m, T::zero()),
        _ => Complex::new(T::zero(), -m),
    }
}

/// Neumaier compensated sum of complex values.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T: Real> {
    sum: C<T>,
    comp: C<T>,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        CompensatedSum { sum: czero(), comp: czero() }
    }
}

fn neumaier<T: Real>(sum: &mut T, comp: &mut T, x: T) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl<T: Real> CompensatedSum<T> {
    pub fn add(&mut self, z: C<T>) {
        neumaier(&mut self.sum.re, &mut self.comp.re, z.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, z.im);
    }
    pub fn value(&self) -> C<T> {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn dd_division_keeps_low_word() {
        let third = Dd::one() / Dd::from_i64(3);
        assert!(close(third * Dd::from_i64(3), Dd::one(), 1e-31));
        assert!(third.lo() != 0.0);
    }

    #[test]
    fn dd_trig_identities() {
        let (s, c) = (Dd::one() / Dd::from_i64(3)).sin_cos_pi();
        assert!(close(s * s, Dd::from_i64(3) / Dd::from_i64(4), 1e-30));
        assert!(close(c, Dd::from_f64(0.5), 1e-30));
        let (s, _) = (Dd::one() / Dd::from_i64(10)).sin_cos_pi();
        let expect = (Dd::from_i64(5).sqrt() - Dd::one()) / Dd::from_i64(4);
        assert!(close(s, expect, 1e-30));
        let (s, c) = Dd::from_f64(0.3).sin_cos_pi();
        assert!(close(s * s + c * c, Dd::one(), 1e-30));
        let (s, c) = Dd::from_i64(-7).sin_cos_pi();
        assert_eq!(s, Dd::zero());
        assert_eq!(c, -Dd::one());
    }

    #[test]
    fn dd_exp_and_sqrt() {
        let e = Dd::one().exp();
        // e = 2.718281828459045 + 1.4456468917292502e-16
        assert!(close(e, Dd::new(2.718281828459045, 1.4456468917292502e-16), 1e-30));
        let l = DD_LN2.exp();
        assert!(close(l, Dd::from_i64(2), 1e-30));
        let s = Dd::from_i64(2).sqrt();
        assert!(close(s * s, Dd::from_i64(2), 1e-30));
        let x = Dd::from_f64(-3.25).exp() * Dd::from_f64(3.25).exp();
        assert!(close(x, Dd::one(), 1e-29));
    }

    #[test]
    fn phases_reduce_exactly() {
        let z: C<f64> = phase(&Q::new(5, 4));
        assert!((z.re - 0.0).abs() < 1e-16 && (z.im - 1.0).abs() < 1e-16);
        assert_eq!(sin_pi_ratio::<f64>(&Q::from_integer(3)), 0.0);
        let w: C<f64> = two_pi_i_pow(-2);
        assert!((w.re + 1.0 / (4.0 * std::f64::consts::PI.powi(2))).abs() < 1e-16);
    }

    #[test]
    fn principal_sqrt() {
        let r = csqrt(Complex::new(-4.0f64, 0.0));
        assert_eq!(r, Complex::new(0.0, 2.0));
        let z = Complex::new(0.3f64, -1.7);
        let s = csqrt(z);
        assert!((s * s - z).norm() < 1e-15 && s.re > 0.0);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::<f64>::default();
        acc.add(creal(1.0));
        for _ in 0..10 {
            acc.add(creal(1e-17));
        }
        acc.add(creal(-1.0));
        assert!((acc.value().re - 1e-16).abs() < 1e-30);
    }
}
