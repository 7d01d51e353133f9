//! Exact coefficients `a + b·v` with `a, b` rational and `v² = q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Q(v)` with `v = √q`, stored as `rational + radical·v`.
///
/// All arithmetic is exact. Combining coefficients that carry different `q`
/// is a programming error and panics; use the `checked_*` variants to get an
/// [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    rat: BigRational,
    rad: BigRational,
    q: u32,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coefficient {
    pub fn new(rat: BigRational, rad: BigRational, q: u32) -> Self {
        Coefficient { rat, rad, q }
    }

    pub fn zero(q: u32) -> Self {
        Coefficient { rat: BigRational::zero(), rad: BigRational::zero(), q }
    }

    pub fn one(q: u32) -> Self {
        Self::from_int(1, q)
    }

    pub fn from_int(n: i64, q: u32) -> Self {
        Coefficient { rat: ratio(n, 1), rad: BigRational::zero(), q }
    }

    pub fn from_ratio(n: i64, d: i64, q: u32) -> Self {
        Coefficient { rat: ratio(n, d), rad: BigRational::zero(), q }
    }

    pub fn from_rational(r: BigRational, q: u32) -> Self {
        Coefficient { rat: r, rad: BigRational::zero(), q }
    }

    /// `(a, b)` meaning `a + b·v`, both integers.
    pub fn from_pair(a: i64, b: i64, q: u32) -> Self {
        Coefficient { rat: ratio(a, 1), rad: ratio(b, 1), q }
    }

    /// `v^e` for any integer `e`.
    pub fn v_pow(e: i64, q: u32) -> Self {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let qq = BigInt::from(q);
        let mag = num_traits::pow(qq, half.unsigned_abs() as usize);
        let base = if half >= 0 {
            BigRational::from_integer(mag)
        } else {
            BigRational::new(BigInt::one(), mag)
        };
        if odd {
            Coefficient { rat: BigRational::zero(), rad: base, q }
        } else {
            Coefficient { rat: base, rad: BigRational::zero(), q }
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.rad
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.rad.is_zero()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "coefficients over different fields");
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        Ok(self + other)
    }

    /// Field norm `a² − q b²`; nonzero for nonzero input since `√q` is irrational.
    fn norm(&self) -> BigRational {
        let q = BigRational::from_integer(BigInt::from(self.q));
        &self.rat * &self.rat - q * &self.rad * &self.rad
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Coefficient { rat: &self.rat / &n, rad: -(&self.rad / &n), q: self.q })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        Coefficient { rat: &self.rat * &k, rad: &self.rad * &k, q: self.q }
    }

    pub fn mul_v_pow(&self, e: i64) -> Self {
        if e == 0 {
            return self.clone();
        }
        self * &Coefficient::v_pow(e, self.q)
    }

    /// If this coefficient equals `c·v^e` for a nonzero rational `c`, returns
    /// `(c, e mod 2)`.
    pub fn as_monomial(&self) -> Option<(BigRational, bool)> {
        match (self.rat.is_zero(), self.rad.is_zero()) {
            (false, true) => Some((self.rat.clone(), false)),
            (true, false) => Some((self.rad.clone(), true)),
            _ => None,
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.rad.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.rat)),
            (true, false) => write!(f, "{}v", fmt_rat(&self.rad)),
            (false, false) => {
                let sign = if self.rad.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}v", fmt_rat(&self.rat), sign, fmt_rat(&self.rad.abs()))
            }
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) [q={}]", self, self.q)
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Coefficient", 2)?;
        st.serialize_field("rad", &format!("{}/{}", self.rad.numer(), self.rad.denom()))?;
        st.serialize_field("rat", &format!("{}/{}", self.rat.numer(), self.rat.denom()))?;
        st.end()
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, o: &Coefficient) -> Coefficient {
        self.check(o);
        Coefficient { rat: &self.rat + &o.rat, rad: &self.rad + &o.rad, q: self.q }
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, o: &Coefficient) -> Coefficient {
        self.check(o);
        Coefficient { rat: &self.rat - &o.rat, rad: &self.rad - &o.rad, q: self.q }
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, o: &Coefficient) -> Coefficient {
        self.check(o);
        let q = BigRational::from_integer(BigInt::from(self.q));
        Coefficient {
            rat: &self.rat * &o.rat + q * &self.rad * &o.rad,
            rad: &self.rat * &o.rad + &self.rad * &o.rat,
            q: self.q,
        }
    }
}

impl<'a> Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn div(self, o: &Coefficient) -> Coefficient {
        let inv = o.inverse().expect("division by zero coefficient");
        self * &inv
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { rat: -&self.rat, rad: -&self.rad, q: self.q }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, o: Coefficient) -> Coefficient {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, o: &Coefficient) -> Coefficient {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, o: &Coefficient) {
        self.check(o);
        self.rat += &o.rat;
        self.rad += &o.rad;
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, o: &Coefficient) {
        self.check(o);
        self.rat -= &o.rat;
        self.rad -= &o.rad;
    }
}

impl MulAssign<&Coefficient> for Coefficient {
    fn mul_assign(&mut self, o: &Coefficient) {
        *self = &*self * o;
    }
}
