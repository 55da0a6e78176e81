//! Exact arithmetic in the cyclotomic field Q(ζ₈).
//!
//! An element is stored as `c0 + c1·α + c2·α² + c3·α³` with `α = e^{iπ/4}`
//! and the reduction `α⁴ = −1`. The coefficient type is generic; the crate
//! works with arbitrary-precision rationals through the [`Cyc8`] alias.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Coefficient ring for [`Cyclo8`].
pub trait Coefficient: Clone + PartialEq + Num + Neg<Output = Self> + fmt::Debug {}

impl<T> Coefficient for T where T: Clone + PartialEq + Num + Neg<Output = T> + fmt::Debug {}

/// An element of `T[α]/(α⁴ + 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclo8<T> {
    c: [T; 4],
}

impl<T: Coefficient> Cyclo8<T> {
    pub fn new(c0: T, c1: T, c2: T, c3: T) -> Self {
        Cyclo8 { c: [c0, c1, c2, c3] }
    }

    pub fn from_coeffs(c: [T; 4]) -> Self {
        Cyclo8 { c }
    }

    pub fn coeffs(&self) -> &[T; 4] {
        &self.c
    }

    pub fn from_scalar(x: T) -> Self {
        Cyclo8::new(x, T::zero(), T::zero(), T::zero())
    }

    /// `α^k` for any integer `k`, reduced mod 8.
    pub fn alpha_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [T::zero(), T::zero(), T::zero(), T::zero()];
        if k < 4 {
            c[k] = T::one();
        } else {
            c[k - 4] = -T::one();
        }
        Cyclo8 { c }
    }

    pub fn alpha() -> Self {
        Self::alpha_pow(1)
    }

    pub fn i() -> Self {
        Self::alpha_pow(2)
    }

    /// `√2 = α − α³`.
    pub fn sqrt2() -> Self {
        Cyclo8::new(T::zero(), T::one(), T::zero(), -T::one())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// If `self = α^k` for some `k ∈ 0..8`, returns `k`.
    pub fn alpha_log(&self) -> Option<u8> {
        let nonzero: Vec<usize> = (0..4).filter(|&j| !self.c[j].is_zero()).collect();
        if nonzero.len() != 1 {
            return None;
        }
        let j = nonzero[0];
        if self.c[j] == T::one() {
            Some(j as u8)
        } else if self.c[j] == -T::one() {
            Some(j as u8 + 4)
        } else {
            None
        }
    }

    /// Field automorphism induced by `α ↦ α^k` (`k` odd).
    pub fn galois(&self, k: i64) -> Self {
        debug_assert!(k.rem_euclid(2) == 1, "galois exponent must be odd");
        let mut out = Self::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let m = (j as i64 * k).rem_euclid(8) as usize;
            if m < 4 {
                out.c[m] = out.c[m].clone() + cj.clone();
            } else {
                out.c[m - 4] = out.c[m - 4].clone() - cj.clone();
            }
        }
        out
    }

    /// Complex conjugate: `α ↦ α⁻¹ = −α³`.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Returns the conjugate together with the flag `conj(a) == a`.
    pub fn conjugate_is_real(&self) -> (Self, bool) {
        let conj = self.conj();
        let real = conj == *self;
        (conj, real)
    }

    /// Field norm down to the coefficient ring.
    pub fn norm(&self) -> T {
        let prod = self.clone() * self.galois(3) * self.galois(5) * self.galois(7);
        debug_assert!(prod.is_rational());
        prod.c[0].clone()
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = self.galois(3) * self.galois(5) * self.galois(7);
        let norm = (self.clone() * others.clone()).c[0].clone();
        Ok(others.scale_div(&norm))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self.clone() * rhs.inv()?)
    }

    pub fn scale(&self, x: &T) -> Self {
        Cyclo8 { c: self.c.clone().map(|cj| cj * x.clone()) }
    }

    fn scale_div(&self, x: &T) -> Self {
        Cyclo8 { c: self.c.clone().map(|cj| cj / x.clone()) }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Coefficient-wise conversion to another ring.
    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Cyclo8<U> {
        Cyclo8 { c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3])] }
    }
}

impl Cyclo8<f64> {
    /// `(re, im)` with `α = (1 + i)/√2`.
    pub fn to_complex(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [c0, c1, c2, c3] = self.c;
        (c0 + h * (c1 - c3), c2 + h * (c1 + c3))
    }
}

impl<T: Coefficient> Zero for Cyclo8<T> {
    fn zero() -> Self {
        Cyclo8 { c: [T::zero(), T::zero(), T::zero(), T::zero()] }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl<T: Coefficient> One for Cyclo8<T> {
    fn one() -> Self {
        Self::from_scalar(T::one())
    }
}

impl<T: Coefficient> Add for Cyclo8<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Cyclo8::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<T: Coefficient> Sub for Cyclo8<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Cyclo8::new(a0 - b0, a1 - b1, a2 - b2, a3 - b3)
    }
}

impl<T: Coefficient> Neg for Cyclo8<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo8 { c: self.c.map(|x| -x) }
    }
}

impl<T: Coefficient> Mul for Cyclo8<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Coefficient> Mul<&Cyclo8<T>> for &Cyclo8<T> {
    type Output = Cyclo8<T>;
    fn mul(self, rhs: &Cyclo8<T>) -> Cyclo8<T> {
        let mut out = Cyclo8::<T>::zero();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a.clone() * b.clone();
                let k = i + j;
                if k < 4 {
                    out.c[k] = out.c[k].clone() + p;
                } else {
                    out.c[k - 4] = out.c[k - 4].clone() - p;
                }
            }
        }
        out
    }
}

impl<T: Coefficient> Add<&Cyclo8<T>> for &Cyclo8<T> {
    type Output = Cyclo8<T>;
    fn add(self, rhs: &Cyclo8<T>) -> Cyclo8<T> {
        self.clone() + rhs.clone()
    }
}

impl<T: Coefficient> Sub<&Cyclo8<T>> for &Cyclo8<T> {
    type Output = Cyclo8<T>;
    fn sub(self, rhs: &Cyclo8<T>) -> Cyclo8<T> {
        self.clone() - rhs.clone()
    }
}

impl<T: Coefficient> Neg for &Cyclo8<T> {
    type Output = Cyclo8<T>;
    fn neg(self) -> Cyclo8<T> {
        -self.clone()
    }
}

impl<T: Coefficient> AddAssign for Cyclo8<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a = a.clone() + b;
        }
    }
}

impl<T: Coefficient> SubAssign for Cyclo8<T> {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a = a.clone() - b;
        }
    }
}

impl<T: Coefficient> MulAssign for Cyclo8<T> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = &*self * &rhs;
    }
}

impl<T: Coefficient> std::iter::Sum for Cyclo8<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<T: Coefficient> std::iter::Product for Cyclo8<T> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Division panics on a zero divisor; use [`Cyclo8::checked_div`] to get an error instead.
impl<T: Coefficient> std::ops::Div for Cyclo8<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero in Q(ζ8)")
    }
}

// Exact square roots. Q(ζ₈) = Q(√2)(i), so we take roots down the tower.

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// `p + q√2`.
#[derive(Clone, PartialEq, Debug)]
struct Sqrt2Ext {
    p: BigRational,
    q: BigRational,
}

impl Sqrt2Ext {
    fn zero() -> Self {
        Sqrt2Ext { p: BigRational::zero(), q: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Sqrt2Ext { p: &self.p + &o.p, q: &self.q + &o.q }
    }
    fn mul(&self, o: &Self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        Sqrt2Ext {
            p: &self.p * &o.p + two * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }
    fn half(&self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        Sqrt2Ext { p: &self.p / &two, q: &self.q / &two }
    }
    fn inv(&self) -> Option<Self> {
        let two = BigRational::from_integer(BigInt::from(2));
        let n = &self.p * &self.p - two * &self.q * &self.q;
        if n.is_zero() {
            return None;
        }
        Some(Sqrt2Ext { p: &self.p / &n, q: -&self.q / &n })
    }
    fn neg(&self) -> Self {
        Sqrt2Ext { p: -&self.p, q: -&self.q }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &self.p * &self.p - &two * &self.q * &self.q;
        let s = rational_sqrt(&norm)?;
        for s in [s.clone(), -s] {
            let u2 = (&self.p + &s) / &two;
            let Some(u) = rational_sqrt(&u2) else { continue };
            let cand = if u.is_zero() {
                match rational_sqrt(&(&self.p / &two)) {
                    Some(v) => Sqrt2Ext { p: u, q: v },
                    None => continue,
                }
            } else {
                let v = &self.q / (&two * &u);
                Sqrt2Ext { p: u, q: v }
            };
            if cand.mul(&cand) == *self {
                return Some(cand);
            }
        }
        None
    }
}

impl Cyclo8<BigRational> {
    fn split_re_im(&self) -> (Sqrt2Ext, Sqrt2Ext) {
        let two = BigRational::from_integer(BigInt::from(2));
        let [c0, c1, c2, c3] = &self.c;
        let re = Sqrt2Ext { p: c0.clone(), q: (c1 - c3) / &two };
        let im = Sqrt2Ext { p: c2.clone(), q: (c1 + c3) / &two };
        (re, im)
    }

    fn join_re_im(re: &Sqrt2Ext, im: &Sqrt2Ext) -> Self {
        // x0 + x1√2 + i(y0 + y1√2) with √2 = α − α³, i√2 = α + α³
        Cyclo8::new(
            re.p.clone(),
            &re.q + &im.q,
            im.p.clone(),
            &im.q - &re.q,
        )
    }

    /// An exact square root inside Q(ζ₈), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (x, y) = self.split_re_im();
        // (u + iv)² = u² − v² + 2iuv
        let n = x.mul(&x).add(&y.mul(&y));
        let s = n.sqrt()?;
        for s in [s.clone(), s.neg()] {
            let Some(u) = x.add(&s).half().sqrt() else { continue };
            let v = if u.is_zero() {
                match x.neg().sqrt() {
                    Some(v) => v,
                    None => continue,
                }
            } else {
                match u.add(&u).inv() {
                    Some(inv) => y.mul(&inv),
                    None => continue,
                }
            };
            let root = Self::join_re_im(&u, &v);
            if &root * &root == *self {
                return Some(root);
            }
        }
        None
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_scalar(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Floating-point `(re, im)`; used for human-readable output only.
    pub fn approx(&self) -> (f64, f64) {
        self.map(|q| q.to_f64().unwrap_or(f64::NAN)).to_complex()
    }

    /// The four-term form `c0 + c1*a + c2*a^2 + c3*a^3`.
    pub fn canonical(&self) -> String {
        let [c0, c1, c2, c3] = &self.c;
        format!("{} + {}*a + {}*a^2 + {}*a^3", c0, c1, c2, c3)
    }

    /// `re+imi` with six decimals.
    pub fn decimal(&self) -> String {
        let (re, im) = self.approx();
        let re = if re == 0.0 { 0.0 } else { re };
        let im = if im == 0.0 { 0.0 } else { im };
        if im < 0.0 {
            format!("{re:.6}-{:.6}i", -im)
        } else {
            format!("{re:.6}+{im:.6}i")
        }
    }
}

/// Compact rendering that drops zero terms, e.g. `1 - 1/2*a^3`.
impl fmt::Display for Cyclo8<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "a", "a^2", "a^3"];
        let mut first = true;
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let neg = cj.is_negative();
            let mag = cj.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", names[j])?;
            } else {
                write!(f, "{mag}*{}", names[j])?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Cyclo8<BigRational> {
    type Err = crate::expr::ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_value(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyc8;
    use num_rational::Rational64;

    fn c(a: i64, b: i64, cc: i64, d: i64) -> Cyc8 {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        Cyc8::new(r(a), r(b), r(cc), r(d))
    }

    #[test]
    fn alpha_powers() {
        assert_eq!(Cyc8::alpha_pow(0), Cyc8::one());
        assert_eq!(Cyc8::alpha_pow(2), c(0, 0, 1, 0));
        assert_eq!(Cyc8::alpha_pow(4), -Cyc8::one());
        assert_eq!(Cyc8::alpha_pow(-1), c(0, 0, 0, -1));
        for j in 0..16 {
            for k in 0..16 {
                assert_eq!(Cyc8::alpha_pow(j) * Cyc8::alpha_pow(k), Cyc8::alpha_pow(j + k));
            }
        }
    }

    #[test]
    fn ring_examples() {
        let a = Cyc8::alpha();
        assert_eq!(a.clone() * a.clone(), Cyc8::i());
        let s2 = Cyc8::sqrt2();
        assert_eq!(s2.clone() * s2.clone(), Cyc8::from_integer(2));
        let one_plus_i = Cyc8::one() + Cyc8::i();
        assert_eq!(one_plus_i.checked_div(&a).unwrap(), s2);
        assert!(matches!(a.checked_div(&Cyc8::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conjugation() {
        assert_eq!(Cyc8::i().conjugate_is_real(), (-Cyc8::i(), false));
        assert_eq!(Cyc8::sqrt2().conjugate_is_real(), (Cyc8::sqrt2(), true));
        assert_eq!(Cyc8::alpha().conjugate_is_real(), (c(0, 0, 0, -1), false));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Cyc8::from_integer(2).sqrt(), Some(Cyc8::sqrt2()));
        let r = Cyc8::i().sqrt().unwrap();
        assert_eq!(&r * &r, Cyc8::i());
        assert_eq!(Cyc8::from_integer(3).sqrt(), None);
        let x = c(3, -1, 2, 5);
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        assert!(r == x || r == -x);
        assert_eq!(Cyc8::from_integer(-8).sqrt().map(|r| &r * &r), Some(Cyc8::from_integer(-8)));
    }

    #[test]
    fn generic_over_fixed_precision() {
        let a = Cyclo8::<Rational64>::alpha();
        let b = Cyclo8::<Rational64>::new(
            Rational64::new(1, 2),
            Rational64::from_integer(0),
            Rational64::from_integer(3),
            Rational64::from_integer(-1),
        );
        let q = b.checked_div(&a).unwrap();
        assert_eq!(q * a, b);
        let (re, im) = Cyclo8::<f64>::alpha().to_complex();
        assert!((re - im).abs() < 1e-15 && (re * re + im * im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rendering() {
        assert_eq!(c(1, 0, 0, -1).to_string(), "1 - a^3");
        assert_eq!(Cyc8::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(c(0, 2, 0, 0).canonical(), "0 + 2*a + 0*a^2 + 0*a^3");
    }
}
