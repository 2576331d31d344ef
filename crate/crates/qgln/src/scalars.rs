//! Exact arithmetic in the rational function field Q(s) with s^2 = q, plus
//! the q-number / q-power primitives and a fixed-q floating point context.
//!
//! Every q-dependent scalar that does not involve a square root lives in
//! [`QRat`]. Values are kept in canonical form at all times: numerator and
//! denominator are coprime polynomials in s, the denominator is monic with
//! nonzero constant term, and any Laurent content s^k is carried in a
//! separate exponent on the numerator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("q must be positive, got {0}")]
    NonPositiveQ(f64),
    #[error("denominator vanishes at q = {0}")]
    PoleAtQ(f64),
    #[error("value has a pole at q = 1")]
    PoleAtOne,
    #[error("value is irrational at the given rational q (odd power of s survives)")]
    NotRationalAtQ,
    #[error("division by zero")]
    DivisionByZero,
}

/// Integer or half-integer stored exactly as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(x: i64) -> Self {
        HalfInt { twice: 2 * x }
    }

    /// x/2 as a half-integer.
    pub fn half(x: i64) -> Self {
        HalfInt { twice: x }
    }

    pub fn twice(&self) -> i64 {
        self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl From<i64> for HalfInt {
    fn from(x: i64) -> Self {
        HalfInt::from_int(x)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Dense polynomial in s with rational coefficients, ascending exponents,
/// trailing zeros trimmed. The empty vector is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<Rat>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn one() -> Self {
        Poly(vec![Rat::one()])
    }

    fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly(vec![c])
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn trim(mut v: Vec<Rat>) -> Poly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    fn add(&self, rhs: &Poly) -> Poly {
        let mut v = vec![Rat::zero(); self.0.len().max(rhs.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in rhs.0.iter().enumerate() {
            v[i] += c;
        }
        Poly::trim(v)
    }

    fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::trim(v)
    }

    fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; rhs must be nonzero.
    fn divrem(&self, rhs: &Poly) -> (Poly, Poly) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        if self.0.len() < rhs.0.len() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let dq = self.0.len() - rhs.0.len();
        let mut quot = vec![Rat::zero(); dq + 1];
        let lead = rhs.0.last().unwrap();
        for k in (0..=dq).rev() {
            let c = &rem[k + rhs.0.len() - 1] / lead;
            if !c.is_zero() {
                for (j, b) in rhs.0.iter().enumerate() {
                    let t = &c * b;
                    rem[k + j] -= t;
                }
            }
            quot[k] = c;
        }
        (Poly::trim(quot), Poly::trim(rem))
    }

    fn monic(&self) -> Poly {
        match self.0.last() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = Rat::one() / lead;
                self.scale(&inv)
            }
        }
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r.monic();
        }
        if x.is_zero() {
            Poly::zero()
        } else {
            x.monic()
        }
    }

    /// Number of factors of s dividing the polynomial.
    fn low_order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }

    fn eval_f64(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * s + rat_to_f64(c);
        }
        acc
    }

    fn eval_rat(&self, s: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    fn eval_one(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Split p(s) = even(q) + s*odd(q) with q = s^2.
    fn split_parity(&self) -> (Poly, Poly) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if i % 2 == 0 {
                even.push(c.clone());
            } else {
                odd.push(c.clone());
            }
        }
        (Poly::trim(even), Poly::trim(odd))
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Exact for desk-scale values; falls back to string parsing for giants.
    bigint_to_f64(n) / bigint_to_f64(d)
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Element of Q(s), s = q^{1/2}, in canonical form s^low * num / den.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRat {
    low: i64,
    num: Poly,
    den: Poly,
}

impl QRat {
    fn canon(low: i64, num: Poly, den: Poly) -> QRat {
        assert!(!den.is_zero(), "QRat with zero denominator");
        if num.is_zero() {
            return QRat { low: 0, num: Poly::zero(), den: Poly::one() };
        }
        let mut low = low;
        let mut num = num;
        let mut den = den;
        let nl = num.low_order();
        if nl > 0 {
            num = num.shift_down(nl);
            low += nl as i64;
        }
        let dl = den.low_order();
        if dl > 0 {
            den = den.shift_down(dl);
            low -= dl as i64;
        }
        let g = Poly::gcd(&num, &den);
        if g.degree() > 0 {
            num = num.divrem(&g).0;
            den = den.divrem(&g).0;
        }
        let lead = den.0.last().unwrap().clone();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QRat { low, num, den }
    }

    pub fn from_int(x: i64) -> QRat {
        QRat::from_rat(Rat::from_integer(BigInt::from(x)))
    }

    pub fn from_rat(r: Rat) -> QRat {
        QRat::canon(0, Poly::constant(r), Poly::one())
    }

    pub fn from_ratio(n: i64, d: i64) -> QRat {
        QRat::from_rat(Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    /// s^k as a Laurent monomial.
    pub fn s_power(k: i64) -> QRat {
        QRat { low: k, num: Poly::one(), den: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<QRat, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QRat::canon(-self.low, self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: u32) -> QRat {
        let mut acc = QRat::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a real q > 0 via Horner on numerator and denominator.
    pub fn eval_at(&self, q: f64) -> Result<f64, ScalarError> {
        if q <= 0.0 {
            return Err(ScalarError::NonPositiveQ(q));
        }
        let s = q.sqrt();
        let d = self.den.eval_f64(s);
        if d.abs() < 1e-300 {
            return Err(ScalarError::PoleAtQ(q));
        }
        Ok(s.powi(self.low as i32) * self.num.eval_f64(s) / d)
    }

    /// Exact value at s = 1 (the classical limit q -> 1).
    pub fn limit_q1(&self) -> Result<Rat, ScalarError> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(ScalarError::PoleAtOne);
        }
        Ok(self.num.eval_one() / d)
    }

    /// Exact evaluation at a rational q; defined only when every surviving
    /// power of s is even.
    pub fn eval_rational(&self, q: &Rat) -> Result<Rat, ScalarError> {
        if !q.is_positive() {
            return Err(ScalarError::NonPositiveQ(rat_to_f64(q)));
        }
        // Write s^low * num = P(q) + s Q(q), den = C(q) + s D(q).
        let (mut p, mut qq) = self.num.split_parity();
        // Multiply by s^low: s^{2k} scales by q^k; an odd remainder swaps parts.
        let (k, odd) = (self.low.div_euclid(2), self.low.rem_euclid(2) == 1);
        if odd {
            // s*(P + sQ) = q*Q + s*P
            let new_p = qq.mul(&Poly(vec![Rat::zero(), Rat::one()])); // q*Q
            qq = p;
            p = new_p;
        }
        let (c, d) = self.den.split_parity();
        let qv = q;
        let pk = |poly: &Poly| poly.eval_rat(qv);
        let scale = if k >= 0 {
            pow_rat(qv, k as u32)
        } else {
            Rat::one() / pow_rat(qv, (-k) as u32)
        };
        let (pv, qv2, cv, dv) = (pk(&p), pk(&qq), pk(&c), pk(&d));
        let den_rat = &cv * &cv - qv * &dv * &dv;
        if den_rat.is_zero() {
            return Err(ScalarError::PoleAtQ(rat_to_f64(qv)));
        }
        let num_even = &pv * &cv - qv * &qv2 * &dv;
        let num_odd = &qv2 * &cv - &pv * &dv;
        if !num_odd.is_zero() {
            return Err(ScalarError::NotRationalAtQ);
        }
        Ok(scale * num_even / den_rat)
    }

    /// Degree bound diagnostic used by tests.
    pub fn complexity(&self) -> usize {
        self.num.0.len() + self.den.0.len()
    }
}

fn pow_rat(r: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat { low: 0, num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat { low: 0, num: Poly::one(), den: Poly::one() }
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let a = shift_up(&self.num, (self.low - low) as usize);
        let b = shift_up(&rhs.num, (rhs.low - low) as usize);
        let num = a.mul(&rhs.den).add(&b.mul(&self.den));
        QRat::canon(low, num, self.den.mul(&rhs.den))
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    // Laurent exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &QRat) -> QRat {
        QRat::canon(self.low + rhs.low, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &QRat {
    type Output = QRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QRat) -> QRat {
        assert!(!rhs.is_zero(), "QRat division by zero");
        QRat::canon(self.low - rhs.low, self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            low: self.low,
            num: self.num.scale(&-Rat::one()),
            den: self.den.clone(),
        }
    }
}

fn shift_up(p: &Poly, k: usize) -> Poly {
    if p.is_zero() || k == 0 {
        return p.clone();
    }
    let mut v = vec![Rat::zero(); k];
    v.extend(p.0.iter().cloned());
    Poly(v)
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, rhs: &QRat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, rhs: &QRat) {
        *self = &*self * rhs;
    }
}

/// q^x for integer or half-integer x, as a Laurent monomial in s.
pub fn qpow(x: HalfInt) -> QRat {
    QRat::s_power(x.twice())
}

/// q-number `[x]_q = (q^x - q^{-x})/(q - q^{-1})` for integer x.
///
/// Built directly as the geometric sum q^{x-1} + q^{x-3} + ... + q^{1-x},
/// which is already canonical.
pub fn qnumber(x: i64) -> QRat {
    match x.cmp(&0) {
        Ordering::Equal => QRat::zero(),
        Ordering::Less => -qnumber(-x),
        Ordering::Greater => {
            // exponents in s: 2(x-1-2j) for j = 0..x-1, lowest = -2(x-1)
            let span = (4 * (x - 1) + 1) as usize;
            let mut v = vec![Rat::zero(); span];
            for j in 0..x {
                v[(4 * j) as usize] = Rat::one();
            }
            QRat { low: -2 * (x - 1), num: Poly::trim(v), den: Poly::one() }
        }
    }
}

/// Numeric q-number at real q.
pub fn qnumber_f64(x: i64, q: f64) -> f64 {
    if x == 0 {
        return 0.0;
    }
    (q.powi(x as i32) - q.powi(-x as i32)) / (q - 1.0 / q)
}

/// Fixed numeric evaluation context: q > 0, q != 1 shared by every value.
#[derive(Debug, Clone, Copy)]
pub struct QContext {
    q: f64,
    s: f64,
}

impl QContext {
    pub fn new(q: f64) -> Result<QContext, ScalarError> {
        if q <= 0.0 {
            return Err(ScalarError::NonPositiveQ(q));
        }
        Ok(QContext { q, s: q.sqrt() })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// q^x for half-integer x.
    pub fn qpow(&self, x: HalfInt) -> f64 {
        self.s.powi(x.twice() as i32)
    }

    pub fn qnum(&self, x: i64) -> f64 {
        qnumber_f64(x, self.q)
    }

    pub fn eval(&self, x: &QRat) -> Result<f64, ScalarError> {
        x.eval_at(self.q)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num_str = poly_to_string(&self.num, self.low);
        if self.den.degree() == 0 && self.den.0[0].is_one() {
            write!(f, "{num_str}")
        } else {
            write!(f, "({})/({})", num_str, poly_to_string(&self.den, 0))
        }
    }
}

fn poly_to_string(p: &Poly, low: i64) -> String {
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = low + i as i64; // exponent of s; q-exponent is e/2
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let qpow_str = match e {
            0 => String::new(),
            _ if e % 2 == 0 => match e / 2 {
                1 => "q".to_string(),
                k => format!("q^{k}"),
            },
            _ => format!("q^{e}/2"),
        };
        if qpow_str.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&qpow_str);
        } else {
            out.push_str(&format!("{mag}*{qpow_str}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn qnumber_base_cases() {
        assert!(qnumber(0).is_zero());
        assert_eq!(qnumber(1), QRat::one());
        // [3]_q = q^2 + 1 + q^-2
        let three = &(&qpow(HalfInt::from_int(2)) + &QRat::one()) + &qpow(HalfInt::from_int(-2));
        assert_eq!(qnumber(3), three);
        assert_eq!(qnumber(3).to_string(), "q^2 + 1 + q^-2");
        // [-2]_q = -(q + q^-1)
        let minus_two = -&(&qpow(HalfInt::half(2)) + &qpow(HalfInt::half(-2)));
        assert_eq!(qnumber(-2), minus_two);
    }

    #[test]
    fn qpow_base_cases() {
        assert_eq!(qpow(HalfInt::half(1)), QRat::s_power(1)); // s
        assert_eq!(qpow(HalfInt::from_int(-1)), QRat::s_power(-2)); // q^-1
        assert_eq!(qpow(HalfInt::ZERO), QRat::one());
        assert_eq!(qpow(HalfInt::half(1)).to_string(), "q^1/2");
    }

    #[test]
    fn eval_at_examples() {
        // [2]_q at q=2 -> 2.5
        let v = qnumber(2).eval_at(2.0).unwrap();
        assert!((v - 2.5).abs() < 1e-12);
        // q^-1 at q=4 -> 0.25
        let v = qpow(HalfInt::from_int(-1)).eval_at(4.0).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
        // [3]_q at q=1 -> 3 (canonical form cancels the pole)
        let v = qnumber(3).eval_at(1.0).unwrap();
        assert!((v - 3.0).abs() < 1e-12);
        assert!(matches!(qnumber(2).eval_at(-1.0), Err(ScalarError::NonPositiveQ(_))));
    }

    #[test]
    fn limit_q1_examples() {
        assert_eq!(qnumber(5).limit_q1().unwrap(), Rat::from_integer(5.into()));
        assert_eq!(qpow(HalfInt::from_int(-3)).limit_q1().unwrap(), Rat::one());
        // (1 - q^-2)/(q - q^-1) cancels to q^-1, value 1 at q=1
        let num = &QRat::one() - &qpow(HalfInt::from_int(-2));
        let den = &qpow(HalfInt::from_int(1)) - &qpow(HalfInt::from_int(-1));
        let x = &num / &den;
        assert_eq!(x, qpow(HalfInt::from_int(-1)));
        assert_eq!(x.limit_q1().unwrap(), Rat::one());
        // 1/(q-1) has a pole at q=1
        let pole = QRat::one() / (qpow(HalfInt::from_int(1)) - QRat::one());
        assert!(matches!(pole.limit_q1(), Err(ScalarError::PoleAtOne)));
    }

    #[test]
    fn eval_rational_even_powers() {
        let x = &qnumber(2) * &qnumber(2); // (q + 1/q)^2, even powers only
        let q32 = Rat::new(3.into(), 2.into());
        let got = x.eval_rational(&q32).unwrap();
        let expect = Rat::new(169.into(), 36.into()); // (3/2 + 2/3)^2
        assert_eq!(got, expect);
        // q^{1/2} alone is irrational at q = 3/2
        assert!(matches!(
            qpow(HalfInt::half(1)).eval_rational(&q32),
            Err(ScalarError::NotRationalAtQ)
        ));
    }

    #[test]
    fn qnumber_addition_law() {
        // [x+y] = [x] q^y + q^{-x} [y]
        for x in -10i64..10 {
            for y in -10i64..10 {
                let lhs = qnumber(x + y);
                let rhs = &(&qnumber(x) * &qpow(HalfInt::from_int(y)))
                    + &(&qpow(HalfInt::from_int(-x)) * &qnumber(y));
                assert_eq!(lhs, rhs, "x={x} y={y}");
            }
        }
    }

    #[test]
    fn display_rational_function() {
        let x = QRat::one() / (QRat::one() + qpow(HalfInt::from_int(1)));
        let s = x.to_string();
        assert!(s.contains('/'), "{s}");
    }

    #[test]
    fn halfint_parity() {
        let h = HalfInt::half(3);
        assert!(!h.is_integer());
        assert_eq!((h + h).as_integer(), Some(3));
        assert_eq!((-h).twice(), -3);
        assert_eq!(h.to_string(), "3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
    }

    fn arb_qrat() -> impl Strategy<Value = QRat> {
        // random Laurent polynomial ratios with small coefficients
        let coeffs = proptest::collection::vec(-4i64..5, 1..4);
        (coeffs.clone(), coeffs, -3i64..4).prop_filter_map(
            "nonzero denominator",
            |(n, d, low)| {
                let num = Poly::trim(n.into_iter().map(|c| Rat::from_integer(c.into())).collect());
                let den = Poly::trim(d.into_iter().map(|c| Rat::from_integer(c.into())).collect());
                if den.is_zero() {
                    None
                } else {
                    Some(QRat::canon(low, num, den))
                }
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
            // associativity and commutativity
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            // distributivity
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // inverses
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), QRat::one());
            }
            prop_assert_eq!(&a - &a, QRat::zero());
        }

        #[test]
        fn canonical_form_invariants(a in arb_qrat(), b in arb_qrat()) {
            // every arithmetic result is canonical: monic denominator with a
            // nonzero constant term, Laurent content carried by `low`, and
            // coprime numerator/denominator
            let check = |x: &QRat| {
                if x.is_zero() {
                    prop_assert_eq!(x.low, 0);
                    prop_assert_eq!(&x.den, &Poly::one());
                } else {
                    prop_assert!(x.den.0.last().unwrap().is_one());
                    prop_assert!(!x.den.0[0].is_zero());
                    prop_assert!(!x.num.0[0].is_zero());
                    prop_assert_eq!(Poly::gcd(&x.num, &x.den).degree(), 0);
                }
                Ok(())
            };
            check(&(&a + &b))?;
            check(&(&a - &b))?;
            check(&(&a * &b))?;
            if !b.is_zero() {
                check(&(&a / &b))?;
                // cross-multiplication equality agrees with structural equality
                let prod = &(&a / &b) * &b;
                prop_assert_eq!(&prod, &a);
            }
        }

        #[test]
        fn eval_multiplicative(a in arb_qrat(), b in arb_qrat()) {
            let q = 1.7;
            let pa = a.eval_at(q);
            let pb = b.eval_at(q);
            let pab = (&a * &b).eval_at(q);
            if let (Ok(x), Ok(y), Ok(xy)) = (pa, pb, pab) {
                let scale = x.abs().max(y.abs()).max(1.0);
                prop_assert!((x * y - xy).abs() <= 1e-12 * scale * scale);
            }
        }
    }
}
