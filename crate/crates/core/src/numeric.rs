//! Exact and floating scalars.
//!
//! Eigenvalues arrive either as exact rationals or as floats. Indicial roots
//! involve one square root, so the exact path works in a quadratic field:
//! every exact real is `a + b·√d` with `a, b` rational and `d` a positive
//! integer. Sums of surds with different radicands never need to be *formed*,
//! only *compared*, and comparison is decided exactly by repeated squaring.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// Default tolerance for ties on the float path.
pub const DEFAULT_EPSILON: f64 = 1e-12;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: fall back to a ratio of floats.
        x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// `p/q` with the denominator omitted when it is one.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p`, `p/q` or a plain decimal (`-1.25`, `3e-2`) into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Q::from_integer(n));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Q> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut v = Q::from_integer(digits);
    if scale >= 0 {
        v *= Q::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= Q::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

/// `%.17g`-style rendering: 17 significant digits, trailing zeros trimmed,
/// integers printed without a decimal point.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mant.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn isqrt_exact(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let s = x.sqrt();
    (&s * &s == *x).then_some(s)
}

pub fn rational_sqrt(x: &Q) -> Option<Q> {
    Some(Q::new(isqrt_exact(x.numer())?, isqrt_exact(x.denom())?))
}

/// Write a positive integer as `k²·f`, pulling out perfect squares and small
/// square factors. `f` is not guaranteed square-free for huge inputs; nothing
/// relies on that beyond presentation.
fn split_square(x: &BigInt) -> (BigInt, BigInt) {
    if let Some(s) = isqrt_exact(x) {
        return (s, BigInt::one());
    }
    let mut k = BigInt::one();
    let mut f = x.clone();
    if let Some(mut small) = f.to_u64() {
        let mut kk: u64 = 1;
        let mut p: u64 = 2;
        while p <= 1000 && p * p <= small {
            while small % (p * p) == 0 {
                small /= p * p;
                kk *= p;
            }
            p += 1;
        }
        k = BigInt::from(kk);
        f = BigInt::from(small);
    } else {
        for p in 2u32..=1000 {
            let pp = BigInt::from(p * p);
            while (&f % &pp).is_zero() {
                f /= &pp;
                k *= p;
            }
        }
    }
    if let Some(s) = isqrt_exact(&f) {
        k *= s;
        f = BigInt::one();
    }
    (k, f)
}

/// Sign of `p + q·√d` for `d ≥ 0`.
fn sign2(p: &Q, qq: &Q, d: &BigInt) -> Ordering {
    let sp = p.cmp(&Q::zero());
    let sq = if d.is_zero() { Ordering::Equal } else { qq.cmp(&Q::zero()) };
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    let lhs = p * p;
    let rhs = qq * qq * Q::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

/// If `√e` is a rational multiple of `√d`, return that multiple.
fn radical_ratio(d: &BigInt, e: &BigInt) -> Option<Q> {
    if d == e {
        return Some(Q::one());
    }
    let prod = d * e;
    let s = isqrt_exact(&prod)?;
    // √e = √(de)/√d = (√(de)/d)·√d
    Some(Q::new(s, d.clone()))
}

/// Sign of `a + b·√d + c·√e`.
fn sign3(a: &Q, b: &Q, d: &BigInt, c: &Q, e: &BigInt) -> Ordering {
    if b.is_zero() || d.is_one() {
        let a2 = if d.is_one() { a + b } else { a.clone() };
        return sign2(&a2, c, e);
    }
    if c.is_zero() || e.is_one() {
        let a2 = if e.is_one() { a + c } else { a.clone() };
        return sign2(&a2, b, d);
    }
    if let Some(m) = radical_ratio(d, e) {
        return sign2(a, &(b + c * m), d);
    }
    // s = b√d + c√e
    let ss = {
        let sb = b.cmp(&Q::zero());
        let sc = c.cmp(&Q::zero());
        if sb == sc {
            sb
        } else {
            let bd = b * b * Q::from_integer(d.clone());
            let ce = c * c * Q::from_integer(e.clone());
            match bd.cmp(&ce) {
                Ordering::Greater => sb,
                Ordering::Less => sc,
                Ordering::Equal => Ordering::Equal,
            }
        }
    };
    let sa = a.cmp(&Q::zero());
    if ss == Ordering::Equal || sa == ss {
        return sa;
    }
    if sa == Ordering::Equal {
        return ss;
    }
    // Opposite signs: compare a² with s² = b²d + c²e + 2bc√(de).
    let p = a * a - b * b * Q::from_integer(d.clone()) - c * c * Q::from_integer(e.clone());
    let qq = -(Q::from_integer(BigInt::from(2)) * b * c);
    let diff = sign2(&p, &qq, &(d * e));
    match sa {
        Ordering::Greater => diff,
        _ => diff.reverse(),
    }
}

/// An exact real number `a + b·√d`, `d` a positive integer, `d = 1` iff `b = 0`.
#[derive(Clone, Debug)]
pub struct Surd {
    a: Q,
    b: Q,
    d: BigInt,
}

impl Surd {
    pub fn rational(a: Q) -> Self {
        Surd { a, b: Q::zero(), d: BigInt::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(q(n))
    }

    /// `a + b·√r` for a non-negative rational radicand.
    pub fn new(a: Q, b: Q, radicand: &Q) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if b.is_zero() || radicand.is_zero() {
            return Self::rational(a);
        }
        // √(p/s) = √(ps)/s
        let ps = radicand.numer() * radicand.denom();
        let (k, f) = split_square(&ps);
        let coeff = b * Q::new(k, radicand.denom().clone());
        if f.is_one() {
            Self::rational(a + coeff)
        } else {
            Surd { a, b: coeff, d: f }
        }
    }

    /// `√r` for `r ≥ 0`.
    pub fn sqrt(radicand: &Q) -> Self {
        Self::new(Q::zero(), Q::one(), radicand)
    }

    pub fn rational_part(&self) -> &Q {
        &self.a
    }

    pub fn surd_coeff(&self) -> &Q {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        sign2(&self.a, &self.b, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        let root = self.d.to_f64().map(f64::sqrt).unwrap_or(f64::NAN);
        q_to_f64(&self.a) + q_to_f64(&self.b) * root
    }

    fn from_parts(a: Q, b: Q, d: BigInt) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            Surd { a, b, d }
        }
    }

    /// Express `other`'s surd part over `self`'s radicand, if possible.
    fn common(&self, other: &Surd) -> Option<(BigInt, Q, Q)> {
        if other.b.is_zero() {
            return Some((self.d.clone(), self.b.clone(), Q::zero()));
        }
        if self.b.is_zero() {
            return Some((other.d.clone(), Q::zero(), other.b.clone()));
        }
        let m = radical_ratio(&self.d, &other.d)?;
        Some((self.d.clone(), self.b.clone(), &other.b * m))
    }

    pub fn checked_add(&self, other: &Surd) -> Option<Surd> {
        let (d, b1, b2) = self.common(other)?;
        Some(Self::from_parts(&self.a + &other.a, b1 + b2, d))
    }

    pub fn checked_sub(&self, other: &Surd) -> Option<Surd> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Surd) -> Option<Surd> {
        let (d, b1, b2) = self.common(other)?;
        let dq = Q::from_integer(d.clone());
        let a = &self.a * &other.a + &b1 * &b2 * dq;
        let b = &self.a * &b2 + &b1 * &other.a;
        Some(Self::from_parts(a, b, d))
    }

    pub fn scale(&self, k: &Q) -> Surd {
        Self::from_parts(&self.a * k, &self.b * k, self.d.clone())
    }

    pub fn add_q(&self, k: &Q) -> Surd {
        Self::from_parts(&self.a + k, self.b.clone(), self.d.clone())
    }

    /// `1/(a + b√d) = (a − b√d)/(a² − b²d)`.
    pub fn recip(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - &self.b * &self.b * Q::from_integer(self.d.clone());
        Some(Self::from_parts(&self.a / &norm, -&self.b / &norm, self.d.clone()))
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        sign3(&(&self.a - &other.a), &self.b, &self.d, &-other.b.clone(), &other.d)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::from_parts(-self.a, -self.b, self.d)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_q(&self.a));
        }
        let root = format!("sqrt({})", self.d);
        let mag = self.b.abs();
        let term = if mag.is_one() { root } else { format!("{}*{}", fmt_q(&mag), root) };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{term}"),
            (true, true) => write!(f, "-{term}"),
            (false, false) => write!(f, "{} + {term}", fmt_q(&self.a)),
            (false, true) => write!(f, "{} - {term}", fmt_q(&self.a)),
        }
    }
}

/// Input scalar: an eigenvalue as supplied, exact or float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Q),
    Float(f64),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Exact(q(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(qf(num, den))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(x) => q_to_f64(x),
            Scalar::Float(x) => *x,
        }
    }

    pub fn to_real(&self) -> Real {
        match self {
            Scalar::Exact(x) => Real::Exact(Surd::rational(x.clone())),
            Scalar::Float(x) => Real::Float(*x),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(x) => x.is_finite(),
        }
    }

    pub fn add_q(&self, k: &Q) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x + k),
            Scalar::Float(x) => Scalar::Float(x + q_to_f64(k)),
        }
    }

    /// Parse a string: exact when it is a rational literal.
    pub fn parse(s: &str) -> Option<Scalar> {
        parse_q(s).map(Scalar::Exact)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Scalar {
    /// Total order: exact when both sides are exact, plain float order otherwise.
    pub fn cmp_exact(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => f.write_str(&fmt_q(x)),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Q> for Scalar {
    fn from(x: Q) -> Self {
        Scalar::Exact(x)
    }
}

/// A real number on either arithmetic path.
#[derive(Clone, Debug)]
pub enum Real {
    Exact(Surd),
    Float(f64),
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(Surd::int(0))
    }

    pub fn int(n: i64) -> Self {
        Real::Exact(Surd::int(n))
    }

    pub fn rational(x: Q) -> Self {
        Real::Exact(Surd::rational(x))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn as_surd(&self) -> Option<&Surd> {
        match self {
            Real::Exact(s) => Some(s),
            Real::Float(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.as_surd().and_then(Surd::as_rational)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(s) => s.to_f64(),
            Real::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(s) => s.is_zero(),
            Real::Float(x) => *x == 0.0,
        }
    }

    pub fn add_q(&self, k: &Q) -> Real {
        match self {
            Real::Exact(s) => Real::Exact(s.add_q(k)),
            Real::Float(x) => Real::Float(x + q_to_f64(k)),
        }
    }

    pub fn scale(&self, k: &Q) -> Real {
        match self {
            Real::Exact(s) => Real::Exact(s.scale(k)),
            Real::Float(x) => Real::Float(x * q_to_f64(k)),
        }
    }

    /// Exact comparison when possible; ties within `eps` on the float path.
    pub fn cmp_tol(&self, other: &Real, eps: f64) -> Ordering {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a.cmp(b),
            _ => {
                let (x, y) = (self.to_f64(), other.to_f64());
                if (x - y).abs() <= eps {
                    Ordering::Equal
                } else {
                    x.total_cmp(&y)
                }
            }
        }
    }

    fn binop(
        &self,
        other: &Real,
        exact: impl Fn(&Surd, &Surd) -> Option<Surd>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Real {
        if let (Real::Exact(a), Real::Exact(b)) = (self, other) {
            if let Some(c) = exact(a, b) {
                return Real::Exact(c);
            }
        }
        Real::Float(float(self.to_f64(), other.to_f64()))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_tol(other, 0.0) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_tol(other, 0.0))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        self.binop(rhs, Surd::checked_add, |a, b| a + b)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self.binop(rhs, Surd::checked_sub, |a, b| a - b)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        self.binop(rhs, Surd::checked_mul, |a, b| a * b)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(s) => Real::Exact(-s.clone()),
            Real::Float(x) => Real::Float(-x),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(s) => write!(f, "{s}"),
            Real::Float(x) => f.write_str(&fmt_g17(*x)),
        }
    }
}

/// `re + i·im`; only as much complex arithmetic as η and duality need.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn real(re: Real) -> Self {
        Complex { re, im: Real::zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn add_q(&self, k: &Q) -> Complex {
        Complex { re: self.re.add_q(k), im: self.im.clone() }
    }

    pub fn mul(&self, other: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }

    pub fn neg(&self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }

    pub fn add(&self, other: &Complex) -> Complex {
        Complex { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn scale(&self, k: &Q) -> Complex {
        Complex { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_neg = self.im.cmp_tol(&Real::zero(), 0.0) == Ordering::Less;
        let im_abs = if im_neg { -&self.im } else { self.im.clone() };
        let im_txt = match &im_abs {
            Real::Exact(s) if !s.is_rational() && !s.rational_part().is_zero() => format!("({s})"),
            _ => im_abs.to_string(),
        };
        if self.re.is_zero() {
            return write!(f, "{}{}i", if im_neg { "-" } else { "" }, im_txt);
        }
        write!(f, "{} {} {}i", self.re, if im_neg { "-" } else { "+" }, im_txt)
    }
}
