use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rationals.
pub type Q = BigRational;

/// Exact scalar field. Only ℚ and ℚ(i) implement it.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_q(q: Q) -> Self;
    /// Image under the inclusion into ℚ(i).
    fn to_qi(&self) -> Qi;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_q(q_int(n))
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
}

pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-2/5"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl Field for Q {
    fn to_qi(&self) -> Qi {
        Qi::new(self.clone(), Zero::zero())
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_q(q: Q) -> Self {
        q
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qi {
    pub re: Q,
    pub im: Q,
}

impl Qi {
    pub fn new(re: Q, im: Q) -> Self {
        Qi { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Qi { re: <Q as Zero>::zero(), im: <Q as One>::one() }
    }

    pub fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Qi::one(),
            1 => Qi::i(),
            2 => Qi::one().neg(),
            _ => Qi::i().neg(),
        }
    }
}

impl Field for Qi {
    fn to_qi(&self) -> Qi {
        self.clone()
    }
    fn zero() -> Self {
        Qi { re: <Q as Zero>::zero(), im: <Q as Zero>::zero() }
    }
    fn one() -> Self {
        Qi { re: <Q as One>::one(), im: <Q as Zero>::zero() }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Qi { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Qi { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return Qi { re: &self.re * &o.re, im: <Q as Zero>::zero() };
        }
        Qi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        Qi { re: -&self.re, im: -&self.im }
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        if Zero::is_zero(&self.im) {
            return Qi { re: self.re.recip(), im: <Q as Zero>::zero() };
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Qi { re: &self.re / &norm, im: -(&self.im / &norm) }
    }
    fn from_q(q: Q) -> Self {
        Qi { re: q, im: <Q as Zero>::zero() }
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Qi::i();
        assert_eq!(i.mul(&i), Qi::from_i64(-1));
        assert_eq!(Qi::i_pow(3), i.neg());
        assert_eq!(Qi::i_pow(-1), i.neg());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Qi::new(q_int(3), q_int(-4));
        assert_eq!(z.mul(&z.inv()), Qi::one());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("-2/4"), Some(q_frac(-1, 2)));
        assert_eq!(parse_q("7"), Some(q_int(7)));
        assert_eq!(parse_q("1/0"), None);
    }
}
