//! Exact real arithmetic in towers of quadratic extensions `Q(√d1)(√d2)...`.
//!
//! A [`TowerScalar`] stores `2^k` rational coordinates over the product basis
//! `∏_{j∈m} √d_j` of a tower with `k` adjoined radicands. Every radicand is
//! verified to be positive and a non-square at its own level when it is
//! adjoined, so the basis is linearly independent and zero is exactly the
//! all-zero coordinate vector.
//!
//! Operands living in different towers are lifted into a merged tower before
//! combining. Signs are decided by fixed-point interval evaluation with
//! doubling precision, which terminates because a nonzero element is bounded
//! away from zero.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Q = BigRational;

#[derive(Debug)]
struct Tower {
    /// `radicands[j]` has `2^j` coordinates over the first `j` levels.
    radicands: Vec<Vec<Q>>,
}

/// An exact element of a real radical tower over the rationals.
#[derive(Clone, Debug)]
pub struct TowerScalar {
    tower: Option<Arc<Tower>>,
    coords: Vec<Q>,
}

fn level_of(v: &[Q]) -> usize {
    v.len().trailing_zeros() as usize
}

fn all_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

fn pad(v: &[Q], len: usize) -> Vec<Q> {
    let mut out = v.to_vec();
    out.resize(len, Q::zero());
    out
}

fn basis(gen: usize, level: usize) -> Vec<Q> {
    let mut out = zeros(1 << level);
    out[1 << gen] = Q::one();
    out
}

fn add_c(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_c(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg_c(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

fn scale_c(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

fn mul_c(rads: &[Vec<Q>], a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len();
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let delta = &rads[level_of(a) - 1];
    let a1z = all_zero(a1);
    let b1z = all_zero(b1);
    let mut lo = mul_c(rads, a0, b0);
    let mut hi = zeros(h);
    if !a1z && !b1z {
        let t = mul_c(rads, a1, b1);
        lo = add_c(&lo, &mul_c(rads, delta, &t));
    }
    if !b1z {
        hi = add_c(&hi, &mul_c(rads, a0, b1));
    }
    if !a1z {
        hi = add_c(&hi, &mul_c(rads, a1, b0));
    }
    lo.extend(hi);
    lo
}

fn inv_c(rads: &[Vec<Q>], a: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    if n == 1 {
        return if a[0].is_zero() {
            None
        } else {
            Some(vec![a[0].recip()])
        };
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    if all_zero(a1) {
        return inv_c(rads, a0).map(|v| pad(&v, n));
    }
    let delta = &rads[level_of(a) - 1];
    let norm = sub_c(
        &mul_c(rads, a0, a0),
        &mul_c(rads, delta, &mul_c(rads, a1, a1)),
    );
    let ninv = inv_c(rads, &norm)?;
    let mut lo = mul_c(rads, a0, &ninv);
    lo.extend(neg_c(&mul_c(rads, a1, &ninv)));
    Some(lo)
}

fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// `q = outer^2 * inner` with `inner` a positive integer free of small
/// square factors.
fn split_square(q: &Q) -> (Q, BigInt) {
    let mut inner = q.numer() * q.denom();
    let mut outer = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p <= limit && &p * &p <= inner {
        let pp = &p * &p;
        while (&inner % &pp).is_zero() {
            inner /= &pp;
            outer *= &p;
        }
        p += 1;
    }
    let r = inner.sqrt();
    if &r * &r == inner {
        outer *= r;
        inner = BigInt::one();
    }
    (Q::new(outer, q.denom().clone()), inner)
}

/// Some square root of `a` inside the tower, of either sign.
fn sqrt_c(rads: &[Vec<Q>], a: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    if n == 1 {
        return rational_sqrt(&a[0]).map(|r| vec![r]);
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let delta = &rads[level_of(a) - 1];
    if all_zero(a1) {
        if let Some(c) = sqrt_c(rads, a0) {
            return Some(pad(&c, n));
        }
        let dinv = inv_c(rads, delta)?;
        let d = sqrt_c(rads, &mul_c(rads, a0, &dinv))?;
        let mut out = zeros(h);
        out.extend(d);
        return Some(out);
    }
    // (c + d g)^2 = a0 + a1 g  =>  c^2 = (a0 ± sqrt(a0^2 - a1^2 delta)) / 2, d = a1 / 2c
    let norm = sub_c(
        &mul_c(rads, a0, a0),
        &mul_c(rads, delta, &mul_c(rads, a1, a1)),
    );
    let root = sqrt_c(rads, &norm)?;
    let half = Q::new(BigInt::one(), BigInt::from(2));
    for s in [root.clone(), neg_c(&root)] {
        let c2 = scale_c(&add_c(a0, &s), &half);
        if all_zero(&c2) {
            continue;
        }
        if let Some(c) = sqrt_c(rads, &c2) {
            let two_c = scale_c(&c, &Q::from_integer(BigInt::from(2)));
            let inv = inv_c(rads, &two_c)?;
            let d = mul_c(rads, a1, &inv);
            let mut out = c;
            out.extend(d);
            return Some(out);
        }
    }
    None
}

// Fixed-point intervals: the pair (lo, hi) encodes [lo / 2^p, hi / 2^p].

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn approx_rational(q: &Q, p: u32) -> (BigInt, BigInt) {
    let scaled = q.numer() << p;
    (scaled.div_floor(q.denom()), ceil_div(&scaled, q.denom()))
}

fn mul_interval(a: &(BigInt, BigInt), b: &(BigInt, BigInt), p: u32) -> (BigInt, BigInt) {
    let prods = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let min = prods.iter().min().unwrap();
    let max = prods.iter().max().unwrap();
    let scale = BigInt::one() << p;
    (min.div_floor(&scale), ceil_div(max, &scale))
}

fn gen_interval(rads: &[Vec<Q>], j: usize, p: u32) -> (BigInt, BigInt) {
    let (lo, hi) = approx_c(rads, &rads[j], p);
    let clamp = |x: BigInt| if x.is_negative() { BigInt::zero() } else { x };
    let lo = (clamp(lo) << p).sqrt();
    let hi = (clamp(hi) << p).sqrt() + 1;
    (lo, hi)
}

fn approx_c(rads: &[Vec<Q>], a: &[Q], p: u32) -> (BigInt, BigInt) {
    let n = a.len();
    if n == 1 {
        return approx_rational(&a[0], p);
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (l0, h0) = approx_c(rads, a0, p);
    if all_zero(a1) {
        return (l0, h0);
    }
    let t = approx_c(rads, a1, p);
    let g = gen_interval(rads, level_of(a) - 1, p);
    let (l1, h1) = mul_interval(&t, &g, p);
    (l0 + l1, h0 + h1)
}

fn sign_c(rads: &[Vec<Q>], a: &[Q]) -> i8 {
    if a.len() == 1 {
        return match a[0].cmp(&Q::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
    }
    if all_zero(a) {
        return 0;
    }
    let mut p = 32u32;
    loop {
        let (lo, hi) = approx_c(rads, a, p);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        p *= 2;
    }
}

/// Lift `coords` (over the generators of some tower) into `w`, where
/// `images[j]` is the image of generator `j` expressed over `w`.
fn embed(coords: &[Q], images: &[Vec<Q>], w: &[Vec<Q>]) -> Vec<Q> {
    let len = 1 << w.len();
    if coords.len() == 1 {
        return pad(coords, len);
    }
    let h = coords.len() / 2;
    let (a0, a1) = coords.split_at(h);
    let e0 = embed(a0, images, w);
    if all_zero(a1) {
        return e0;
    }
    let e1 = embed(a1, images, w);
    let g = pad(&images[level_of(coords) - 1], len);
    add_c(&e0, &mul_c(w, &e1, &g))
}

impl TowerScalar {
    fn canonical(tower: Option<Arc<Tower>>, mut coords: Vec<Q>) -> Self {
        while coords.len() > 1 && all_zero(&coords[coords.len() / 2..]) {
            coords.truncate(coords.len() / 2);
        }
        let tower = if coords.len() == 1 { None } else { tower };
        TowerScalar { tower, coords }
    }

    fn rads(&self) -> &[Vec<Q>] {
        match &self.tower {
            Some(t) => &t.radicands[..self.depth()],
            None => &[],
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    pub fn from_rational(q: Q) -> Self {
        TowerScalar {
            tower: None,
            coords: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_integer(BigInt::from(n)))
    }

    /// `num / den` as a scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Q::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Number of tower levels actually used by this value.
    pub fn depth(&self) -> usize {
        level_of(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        all_zero(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.len() == 1
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Raw coordinates over the product basis of the tower.
    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        sign_c(self.rads(), &self.coords)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let p = 64;
        let (lo, hi) = approx_c(self.rads(), &self.coords, p);
        let mid = Q::new(lo + hi, BigInt::one() << (p + 1));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    fn unify(x: &Self, y: &Self) -> (Option<Arc<Tower>>, Vec<Q>, Vec<Q>) {
        let (dx, dy) = (x.depth(), y.depth());
        if dx == 0 && dy == 0 {
            return (None, x.coords.clone(), y.coords.clone());
        }
        if dx == 0 {
            return (y.tower.clone(), pad(&x.coords, 1 << dy), y.coords.clone());
        }
        if dy == 0 {
            return (x.tower.clone(), x.coords.clone(), pad(&y.coords, 1 << dx));
        }
        let (xr, yr) = (x.rads(), y.rads());
        let common = xr.iter().zip(yr).take_while(|(a, b)| a == b).count();
        if common == dx.min(dy) {
            return if dx >= dy {
                (x.tower.clone(), x.coords.clone(), pad(&y.coords, 1 << dx))
            } else {
                (y.tower.clone(), pad(&x.coords, 1 << dy), y.coords.clone())
            };
        }
        let mut w: Vec<Vec<Q>> = xr.to_vec();
        let mut images: Vec<Vec<Q>> = (0..common).map(|j| basis(j, common)).collect();
        for rad in &yr[common..] {
            let d = embed(rad, &images, &w);
            match sqrt_c(&w, &d) {
                Some(mut r) => {
                    if sign_c(&w, &r) < 0 {
                        r = neg_c(&r);
                    }
                    images.push(r);
                }
                None => {
                    w.push(d);
                    images.push(basis(w.len() - 1, w.len()));
                }
            }
        }
        let len = 1 << w.len();
        let yl = embed(&y.coords, &images, &w);
        let xl = pad(&x.coords, len);
        (Some(Arc::new(Tower { radicands: w })), xl, yl)
    }

    fn rads_of(tower: &Option<Arc<Tower>>) -> &[Vec<Q>] {
        match tower {
            Some(t) => &t.radicands,
            None => &[],
        }
    }

    /// Division, failing on a zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (t, a, b) = Self::unify(self, other);
        let rads = Self::rads_of(&t);
        let inv = inv_c(rads, &b).ok_or(Error::DivisionByZero)?;
        Ok(Self::canonical(t.clone(), mul_c(rads, &a, &inv)))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The non-negative square root. If the value is already a square in its
    /// tower no new level is added; otherwise the tower grows by one level
    /// with this value as radicand.
    pub fn sqrt(&self) -> Result<Self> {
        match self.sign() {
            0 => return Ok(Self::zero()),
            s if s < 0 => return Err(Error::NegativeSqrt(self.to_string())),
            _ => {}
        }
        let rads = self.rads();
        if let Some(mut r) = sqrt_c(rads, &self.coords) {
            if sign_c(rads, &r) < 0 {
                r = neg_c(&r);
            }
            return Ok(Self::canonical(self.tower.clone(), r));
        }
        if let Some(q) = self.as_rational() {
            let (outer, inner) = split_square(q);
            let root = TowerScalar {
                tower: Some(Arc::new(Tower {
                    radicands: vec![vec![Q::from_integer(inner)]],
                })),
                coords: basis(0, 1),
            };
            return Ok(&Self::from_rational(outer) * &root);
        }
        let d = self.depth();
        let mut radicands = rads.to_vec();
        radicands.push(self.coords.clone());
        Ok(TowerScalar {
            tower: Some(Arc::new(Tower { radicands })),
            coords: basis(d, d + 1),
        })
    }

    /// Square root when it exists without extending the tower.
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let rads = self.rads();
        let mut r = sqrt_c(rads, &self.coords)?;
        if sign_c(rads, &r) < 0 {
            r = neg_c(&r);
        }
        Some(Self::canonical(self.tower.clone(), r))
    }

    fn radicand(&self, j: usize) -> Self {
        Self::canonical(self.tower.clone(), self.rads()[j].clone())
    }
}

impl Default for TowerScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for TowerScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Q> for TowerScalar {
    fn from(q: Q) -> Self {
        Self::from_rational(q)
    }
}

impl PartialEq for TowerScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.is_rational() && other.is_rational() {
            return self.coords[0] == other.coords[0];
        }
        (self - other).is_zero()
    }
}

impl Eq for TowerScalar {}

impl PartialOrd for TowerScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TowerScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Neg for &TowerScalar {
    type Output = TowerScalar;
    fn neg(self) -> TowerScalar {
        TowerScalar {
            tower: self.tower.clone(),
            coords: neg_c(&self.coords),
        }
    }
}

impl Neg for TowerScalar {
    type Output = TowerScalar;
    fn neg(self) -> TowerScalar {
        -&self
    }
}

impl Add for &TowerScalar {
    type Output = TowerScalar;
    fn add(self, rhs: &TowerScalar) -> TowerScalar {
        if self.is_rational() && rhs.is_rational() {
            return TowerScalar::from_rational(&self.coords[0] + &rhs.coords[0]);
        }
        let (t, a, b) = TowerScalar::unify(self, rhs);
        TowerScalar::canonical(t, add_c(&a, &b))
    }
}

impl Sub for &TowerScalar {
    type Output = TowerScalar;
    fn sub(self, rhs: &TowerScalar) -> TowerScalar {
        if self.is_rational() && rhs.is_rational() {
            return TowerScalar::from_rational(&self.coords[0] - &rhs.coords[0]);
        }
        let (t, a, b) = TowerScalar::unify(self, rhs);
        TowerScalar::canonical(t, sub_c(&a, &b))
    }
}

impl Mul for &TowerScalar {
    type Output = TowerScalar;
    fn mul(self, rhs: &TowerScalar) -> TowerScalar {
        if self.is_rational() && rhs.is_rational() {
            return TowerScalar::from_rational(&self.coords[0] * &rhs.coords[0]);
        }
        if self.is_rational() {
            return TowerScalar::canonical(rhs.tower.clone(), scale_c(&rhs.coords, &self.coords[0]));
        }
        if rhs.is_rational() {
            return TowerScalar::canonical(self.tower.clone(), scale_c(&self.coords, &rhs.coords[0]));
        }
        let (t, a, b) = TowerScalar::unify(self, rhs);
        let c = mul_c(TowerScalar::rads_of(&t), &a, &b);
        TowerScalar::canonical(t, c)
    }
}

impl Div for &TowerScalar {
    type Output = TowerScalar;
    /// Panics on division by zero; use [`TowerScalar::checked_div`] otherwise.
    fn div(self, rhs: &TowerScalar) -> TowerScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TowerScalar {
            type Output = TowerScalar;
            fn $m(self, rhs: TowerScalar) -> TowerScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TowerScalar> for TowerScalar {
            type Output = TowerScalar;
            fn $m(self, rhs: &TowerScalar) -> TowerScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<TowerScalar> for &TowerScalar {
            type Output = TowerScalar;
            fn $m(self, rhs: TowerScalar) -> TowerScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&TowerScalar> for TowerScalar {
    fn add_assign(&mut self, rhs: &TowerScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&TowerScalar> for TowerScalar {
    fn sub_assign(&mut self, rhs: &TowerScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&TowerScalar> for TowerScalar {
    fn mul_assign(&mut self, rhs: &TowerScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for TowerScalar {
    fn sum<I: Iterator<Item = TowerScalar>>(iter: I) -> Self {
        iter.fold(TowerScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a TowerScalar> for TowerScalar {
    fn sum<I: Iterator<Item = &'a TowerScalar>>(iter: I) -> Self {
        iter.fold(TowerScalar::zero(), |acc, x| acc + x)
    }
}

impl Product for TowerScalar {
    fn product<I: Iterator<Item = TowerScalar>>(iter: I) -> Self {
        iter.fold(TowerScalar::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a TowerScalar> for TowerScalar {
    fn product<I: Iterator<Item = &'a TowerScalar>>(iter: I) -> Self {
        iter.fold(TowerScalar::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for TowerScalar {
    /// `rat ("+" rat "*sqrt(" scalar ")")*`; each basis product of radicals
    /// is printed as the square root of the product of its radicands.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if m == 0 {
                write!(f, "{c}")?;
            } else {
                let radicand: TowerScalar = (0..self.depth())
                    .filter(|j| m >> j & 1 == 1)
                    .map(|j| self.radicand(j))
                    .product();
                write!(f, "{c}*sqrt({radicand})")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at column {} in `{}`",
            self.pos + 1,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{lit}`")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn scalar(&mut self) -> Result<TowerScalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn sqrt_arg(&mut self) -> Result<TowerScalar> {
        self.expect("sqrt")?;
        self.expect("(")?;
        let inner = self.scalar()?;
        self.expect(")")?;
        inner.sqrt()
    }

    fn term(&mut self) -> Result<TowerScalar> {
        if self.peek() == Some(b's') {
            return self.sqrt_arg();
        }
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.integer()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let mut q = Q::new(num, den);
        if negative {
            q = -q;
        }
        let mut value = TowerScalar::from_rational(q);
        if self.peek() == Some(b'*') {
            self.pos += 1;
            value = value * self.sqrt_arg()?;
        }
        Ok(value)
    }
}

impl FromStr for TowerScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.scalar()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
