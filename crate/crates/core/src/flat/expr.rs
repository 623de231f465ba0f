//! Exact expressions on ℝⁿ \ {0}: finite sums of c·x^α·r^s with c, s rational,
//! and rank 0/1/2 fields whose components are such sums.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::{fmt_q, q, Surd, Q};

/// One term c·x^α·r^s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialMonomialTerm {
    pub coeff: Q,
    pub exponents: Vec<u32>,
    pub r_power: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    alpha: Vec<u32>,
    s: Q,
}

/// A sum of radial monomials in n variables. Like terms are always collected
/// and zero coefficients pruned; r² = Σx² is only used by [`RadialPoly::reduced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialPoly {
    n: usize,
    terms: BTreeMap<Key, Q>,
}

type Poly = BTreeMap<Vec<u32>, Q>;

impl RadialPoly {
    pub fn zero(n: usize) -> Self {
        RadialPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::monomial(n, c, vec![0; n], Q::zero())
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    pub fn monomial(n: usize, c: Q, alpha: Vec<u32>, s: Q) -> Self {
        assert_eq!(alpha.len(), n, "multi-index length");
        let mut p = Self::zero(n);
        p.push(Key { alpha, s }, c);
        p
    }

    /// The coordinate x_i (0-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut alpha = vec![0; n];
        alpha[i] = 1;
        Self::monomial(n, Q::one(), alpha, Q::zero())
    }

    /// r^s
    pub fn r_pow(n: usize, s: Q) -> Self {
        Self::monomial(n, Q::one(), vec![0; n], s)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = RadialMonomialTerm>) -> Self {
        let mut p = Self::zero(n);
        for t in terms {
            assert_eq!(t.exponents.len(), n, "multi-index length");
            p.push(Key { alpha: t.exponents, s: t.r_power }, t.coeff);
        }
        p
    }

    fn push(&mut self, k: Key, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = RadialMonomialTerm> + '_ {
        self.terms.iter().map(|(k, c)| RadialMonomialTerm {
            coeff: c.clone(),
            exponents: k.alpha.clone(),
            r_power: k.s.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms at all. Weaker than [`RadialPoly::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        RadialPoly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Multiply by r^s.
    pub fn mul_r(&self, s: &Q) -> Self {
        RadialPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (Key { alpha: k.alpha.clone(), s: &k.s + s }, v.clone()))
                .collect(),
        }
    }

    /// ∂/∂x_i, using ∂_i r^s = s·x_i·r^{s−2}.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            let a = k.alpha[i];
            if a > 0 {
                let mut alpha = k.alpha.clone();
                alpha[i] -= 1;
                out.push(Key { alpha, s: k.s.clone() }, c * q(a as i64));
            }
            if !k.s.is_zero() {
                let mut alpha = k.alpha.clone();
                alpha[i] += 1;
                out.push(Key { alpha, s: &k.s - q(2) }, c * &k.s);
            }
        }
        out
    }

    /// Σ ∂_i²; the geometer's Laplacian is its negative.
    pub fn sum_second_partials(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            out = &out + &self.partial(i).partial(i);
        }
        out
    }

    /// Canonical form: terms whose r-powers differ by an even integer are
    /// merged over r² = Σx², each class written as r^{s₀}·P with s₀ the least
    /// power of the class and P a polynomial. Distinct classes are linearly independent because Σx² is not a
    /// perfect power, so the expression vanishes iff every class polynomial does.
    pub fn reduced(&self) -> Self {
        let mut classes: BTreeMap<Q, Vec<(&Key, &Q)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            classes.entry(residue_mod2(&k.s)).or_default().push((k, c));
        }
        let mut out = Self::zero(self.n);
        let mut cache: Vec<Poly> = vec![unit_poly(self.n)];
        for members in classes.values() {
            let s0 = members.iter().map(|(k, _)| k.s.clone()).min().unwrap();
            let mut poly: Poly = BTreeMap::new();
            for (k, c) in members {
                let steps = ((&k.s - &s0) / q(2)).to_integer().to_usize().unwrap();
                while cache.len() <= steps {
                    let next = poly_mul(cache.last().unwrap(), &r2_poly(self.n));
                    cache.push(next);
                }
                for (m, v) in &cache[steps] {
                    let alpha: Vec<u32> = m.iter().zip(&k.alpha).map(|(a, b)| a + b).collect();
                    add_into(&mut poly, alpha, &(v * *c));
                }
            }
            for (alpha, c) in poly {
                out.push(Key { alpha, s: s0.clone() }, c);
            }
        }
        out
    }

    /// Exact vanishing as a function on ℝⁿ \ {0}.
    pub fn is_zero(&self) -> bool {
        self.is_empty() || self.reduced().is_empty()
    }

    /// Common homogeneity degree |α| + s of all terms, if there is one.
    pub fn homogeneity(&self) -> Option<Q> {
        let mut it = self.terms.keys().map(|k| q(k.alpha.iter().sum::<u32>() as i64) + &k.s);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Exact value at an integer point, in ℚ(r). Needs integer r-powers.
    pub fn eval(&self, x: &[i64]) -> Option<Surd> {
        assert_eq!(x.len(), self.n);
        let rho: i64 = x.iter().map(|v| v * v).sum();
        if rho == 0 {
            return None;
        }
        let r = Surd::sqrt(&q(rho));
        let mut total = Surd::int(0);
        for (k, c) in &self.terms {
            if !k.s.is_integer() {
                return None;
            }
            let mut mono = c.clone();
            for (xi, a) in x.iter().zip(&k.alpha) {
                mono *= Q::from_integer((*xi).into()).pow(*a as i32);
            }
            let s = k.s.to_integer().to_i64()?;
            // r^s = ρ^{⌊s/2⌋}·r^{s mod 2}
            let (half, odd) = s.div_mod_floor(&2);
            let rpart = Q::from_integer(rho.into()).pow(half as i32);
            let mut term = Surd::rational(mono * rpart);
            if odd == 1 {
                term = term.checked_mul(&r)?;
            }
            total = total.checked_add(&term)?;
        }
        Some(total)
    }
}

fn residue_mod2(s: &Q) -> Q {
    let two = q(2);
    s - (s / &two).floor() * two
}

fn unit_poly(n: usize) -> Poly {
    BTreeMap::from([(vec![0; n], Q::one())])
}

fn r2_poly(n: usize) -> Poly {
    (0..n)
        .map(|i| {
            let mut a = vec![0; n];
            a[i] = 2;
            (a, Q::one())
        })
        .collect()
}

fn add_into(p: &mut Poly, alpha: Vec<u32>, c: &Q) {
    let e = p.entry(alpha.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&alpha);
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let alpha = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add_into(&mut out, alpha, &(ca * cb));
        }
    }
    out
}

impl Add for &RadialPoly {
    type Output = RadialPoly;
    fn add(self, other: &RadialPoly) -> RadialPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RadialPoly {
    type Output = RadialPoly;
    fn sub(self, other: &RadialPoly) -> RadialPoly {
        self + &-other
    }
}

impl Neg for &RadialPoly {
    type Output = RadialPoly;
    fn neg(self) -> RadialPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &RadialPoly {
    type Output = RadialPoly;
    fn mul(self, other: &RadialPoly) -> RadialPoly {
        assert_eq!(self.n, other.n);
        let mut out = RadialPoly::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let alpha = ka.alpha.iter().zip(&kb.alpha).map(|(x, y)| x + y).collect();
                out.push(Key { alpha, s: &ka.s + &kb.s }, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for RadialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (i, a) in k.alpha.iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, a)),
                }
            }
            if !k.s.is_zero() {
                let s = fmt_q(&k.s);
                factors.push(if k.s.is_integer() { format!("r^{s}") } else { format!("r^({s})") });
            }
            let mag = c.abs();
            let body = match (factors.is_empty(), mag.is_one()) {
                (true, _) => fmt_q(&mag),
                (false, true) => factors.join("*"),
                (false, false) => format!("{}*{}", fmt_q(&mag), factors.join("*")),
            };
            let neg = c.is_negative();
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Outcome of testing `a = c·b` for a constant c.
#[derive(Clone, Debug, PartialEq)]
pub enum Proportionality {
    /// `b` vanishes identically.
    ZeroReference,
    Factor(Q),
    NotProportional,
    /// Could not evaluate (non-integer r-powers).
    Undecided,
}

/// A symmetric-or-not field of rank 0, 1 or 2 on ℝⁿ \ {0}.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldExpr {
    n: usize,
    rank: u8,
    comps: Vec<RadialPoly>,
    symmetric: bool,
}

impl FieldExpr {
    pub fn scalar(p: RadialPoly) -> Self {
        FieldExpr { n: p.n, rank: 0, comps: vec![p], symmetric: true }
    }

    pub fn one_form(comps: Vec<RadialPoly>) -> Self {
        let n = comps.len();
        assert!(comps.iter().all(|c| c.n == n), "component arity");
        FieldExpr { n, rank: 1, comps, symmetric: false }
    }

    pub fn two_tensor(n: usize, mut f: impl FnMut(usize, usize) -> RadialPoly) -> Self {
        let mut comps = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                comps.push(f(i, j));
            }
        }
        let mut t = FieldExpr { n, rank: 2, comps, symmetric: false };
        t.symmetric = t.check_symmetric();
        t
    }

    pub fn zero(n: usize, rank: u8) -> Self {
        match rank {
            0 => Self::scalar(RadialPoly::zero(n)),
            1 => Self::one_form(vec![RadialPoly::zero(n); n]),
            _ => Self::two_tensor(n, |_, _| RadialPoly::zero(n)),
        }
    }

    /// The Euclidean metric δ_ij.
    pub fn metric(n: usize) -> Self {
        Self::two_tensor(n, |i, j| if i == j { RadialPoly::one(n) } else { RadialPoly::zero(n) })
    }

    /// The position 1-form Σ x_i dx_i = r dr.
    pub fn position(n: usize) -> Self {
        Self::one_form((0..n).map(|i| RadialPoly::x(n, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn components(&self) -> &[RadialPoly] {
        &self.comps
    }

    /// Component by index tuple: `[]`, `[i]` or `[i, j]`.
    pub fn component(&self, idx: &[usize]) -> &RadialPoly {
        assert_eq!(idx.len(), self.rank as usize, "index arity");
        match idx {
            [] => &self.comps[0],
            [i] => &self.comps[*i],
            [i, j] => &self.comps[i * self.n + j],
            _ => unreachable!(),
        }
    }

    pub fn as_scalar(&self) -> &RadialPoly {
        self.component(&[])
    }

    fn check_symmetric(&self) -> bool {
        self.rank == 2
            && (0..self.n).all(|i| {
                (0..i).all(|j| (self.component(&[i, j]) - self.component(&[j, i])).is_zero())
            })
    }

    pub fn map(&self, f: impl Fn(&RadialPoly) -> RadialPoly) -> Self {
        FieldExpr { comps: self.comps.iter().map(f).collect(), ..self.clone() }
    }

    pub fn zip(&self, other: &FieldExpr, f: impl Fn(&RadialPoly, &RadialPoly) -> RadialPoly) -> Self {
        assert_eq!((self.n, self.rank), (other.n, other.rank), "field shape");
        FieldExpr {
            n: self.n,
            rank: self.rank,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
            symmetric: self.symmetric && other.symmetric,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_r(&self, s: &Q) -> Self {
        self.map(|p| p.mul_r(s))
    }

    /// Multiply every component by a scalar function.
    pub fn mul_scalar(&self, f: &RadialPoly) -> Self {
        self.map(|p| p * f)
    }

    pub fn reduced(&self) -> Self {
        self.map(RadialPoly::reduced)
    }

    /// Identically zero on ℝⁿ \ {0}.
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RadialPoly::is_zero)
    }

    /// Common homogeneity degree of all non-vanishing components.
    pub fn homogeneity(&self) -> Option<Q> {
        let mut degs = self.comps.iter().filter(|c| !c.is_zero()).map(|c| c.reduced().homogeneity());
        let first = degs.next()??;
        degs.all(|d| d.as_ref() == Some(&first)).then_some(first)
    }

    /// Decide whether `self = c·reference` for a constant c, by reading a
    /// candidate c off an evaluation and confirming it symbolically.
    pub fn proportionality(&self, reference: &FieldExpr) -> Proportionality {
        assert_eq!((self.n, self.rank), (reference.n, reference.rank), "field shape");
        if reference.is_zero() {
            return Proportionality::ZeroReference;
        }
        let mut undecided = false;
        for x in sample_points(self.n) {
            for (a, b) in self.comps.iter().zip(&reference.comps) {
                let (Some(va), Some(vb)) = (a.eval(&x), b.eval(&x)) else {
                    undecided = true;
                    continue;
                };
                if vb.is_zero() {
                    continue;
                }
                let ratio = va.checked_mul(&vb.recip().unwrap());
                let Some(c) = ratio.as_ref().and_then(|r| r.as_rational().cloned()) else {
                    return Proportionality::NotProportional;
                };
                let diff = self.zip(reference, |p, r| p - &r.scale(&c));
                return if diff.is_zero() { Proportionality::Factor(c) } else { Proportionality::NotProportional };
            }
        }
        if undecided {
            Proportionality::Undecided
        } else {
            Proportionality::NotProportional
        }
    }
}

/// Integer points with pairwise different, nonzero coordinates.
fn sample_points(n: usize) -> Vec<Vec<i64>> {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    (0..4)
        .map(|shift| {
            (0..n)
                .map(|i| {
                    let p = PRIMES[(i + shift) % PRIMES.len()] + (i / PRIMES.len()) as i64 * 59;
                    if (i + shift) % 3 == 1 {
                        -p
                    } else {
                        p
                    }
                })
                .collect()
        })
        .collect()
}

impl Add for &FieldExpr {
    type Output = FieldExpr;
    fn add(self, other: &FieldExpr) -> FieldExpr {
        self.zip(other, |a, b| a + b)
    }
}

impl Sub for &FieldExpr {
    type Output = FieldExpr;
    fn sub(self, other: &FieldExpr) -> FieldExpr {
        self.zip(other, |a, b| a - b)
    }
}

impl Neg for &FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        self.map(|p| -p)
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank {
            0 => write!(f, "{}", self.comps[0]),
            1 => {
                let parts: Vec<String> = self
                    .comps
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(i, c)| format!("({c}) dx{}", i + 1))
                    .collect();
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join(" + "))
                }
            }
            _ => {
                let mut parts = Vec::new();
                for i in 0..self.n {
                    let start = if self.symmetric { i } else { 0 };
                    for j in start..self.n {
                        let c = self.component(&[i, j]);
                        if !c.is_empty() {
                            parts.push(format!("[{}{}] {c}", i + 1, j + 1));
                        }
                    }
                }
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join("; "))
                }
            }
        }
    }
}
