//! Verified arithmetic for non-rational inputs.
//!
//! Dyadic intervals with outward rounding, isolated real algebraic roots,
//! exact zero tests for affine forms in a pair of reals, and enclosures of
//! sqrt, ln and exp.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_core::{Int, Rat};

/// `mant * 2^exp`, mantissa odd unless the value is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: Int,
    exp: i64,
}

fn pow2(k: u64) -> Int {
    Int::one() << k
}

impl Dyadic {
    pub fn new(mant: Int, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: Int::zero(), exp: 0 }
    }

    pub fn from_int(n: &Int) -> Dyadic {
        Dyadic::new(n.clone(), 0)
    }

    pub fn mantissa(&self) -> &Int {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as u64)
        } else {
            Rat::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Largest dyadic on the grid `2^-bits` that is `<= x`.
    pub fn floor_rat(x: &Rat, bits: i64) -> Dyadic {
        Dyadic::new(scaled(x, bits).div_floor(x.denom()), -bits)
    }

    /// Smallest dyadic on the grid `2^-bits` that is `>= x`.
    pub fn ceil_rat(x: &Rat, bits: i64) -> Dyadic {
        Dyadic::new(scaled(x, bits).div_ceil(x.denom()), -bits)
    }

    fn align(a: &Dyadic, b: &Dyadic) -> (Int, Int, i64) {
        let e = a.exp.min(b.exp);
        (&a.mant << (a.exp - e) as u64, &b.mant << (b.exp - e) as u64, e)
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::align(self, o);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::align(self, o);
        Dyadic::new(a - b, e)
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn mul_int(&self, n: &Int) -> Dyadic {
        Dyadic::new(&self.mant * n, self.exp)
    }

    pub fn half(&self) -> Dyadic {
        Dyadic::new(self.mant.clone(), self.exp - 1)
    }

    pub fn shl(&self, k: i64) -> Dyadic {
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    /// Rounds down to `bits` significant bits.
    pub fn round_floor(&self, bits: u64) -> Dyadic {
        let n = self.mant.bits();
        if n <= bits {
            return self.clone();
        }
        let sh = n - bits;
        Dyadic::new(&self.mant >> sh, self.exp + sh as i64)
    }

    /// Rounds up to `bits` significant bits.
    pub fn round_ceil(&self, bits: u64) -> Dyadic {
        self.neg().round_floor(bits).neg()
    }

    /// Position of the leading bit: `2^(msb-1) <= |x| < 2^msb`.
    pub fn msb(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.mant.bits() as i64;
        let sh = (n - 60).max(0);
        let m = (&self.mant >> sh as u64).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + sh).clamp(-1100, 1100) as i32)
    }

    pub fn floor(&self) -> Int {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }
}

fn scaled(x: &Rat, bits: i64) -> Int {
    if bits >= 0 {
        x.numer() << bits as u64
    } else {
        // only reached for coarse grids; exactness is kept by the caller's floor
        x.numer() >> (-bits) as u64
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Dyadic) -> Ordering {
        let (a, b, _) = Dyadic::align(self, o);
        a.cmp(&b)
    }
}

/// Decimal rendering rounded toward -inf (`up = false`) or +inf.
pub fn dyadic_to_sci(d: &Dyadic, sig: usize, up: bool) -> String {
    rat_to_sci(&d.to_rat(), sig, up)
}

pub fn rat_to_sci(x: &Rat, sig: usize, up: bool) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // estimate the decimal exponent from bit lengths, then correct
    let bits = ax.numer().bits() as f64 - ax.denom().bits() as f64;
    let mut e10 = (bits * std::f64::consts::LOG10_2).floor() as i64;
    let ten = Int::from(10);
    let pow10 = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rat::new(Int::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    loop {
        let s = &ax / pow10(e10);
        if s >= Rat::from_integer(ten.clone()) {
            e10 += 1;
        } else if s < Rat::one() {
            e10 -= 1;
        } else {
            break;
        }
    }
    let s = &ax * pow10(sig as i64 - 1 - e10);
    // rounding away from zero is "up" for positives and "down" for negatives
    let away = up != neg;
    let mut m = if away { s.ceil().to_integer() } else { s.floor().to_integer() };
    let mut e = e10;
    if m.to_string().len() > sig {
        m = if away { m.div_ceil(&ten) } else { m.div_floor(&ten) };
        e += 1;
    }
    let ms = m.to_string();
    let (head, tail) = ms.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() { head.to_string() } else { format!("{}.{}", head, tail) };
    format!("{}{}e{}", if neg { "-" } else { "" }, body, e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalOrdering {
    Less,
    Greater,
    Uncertain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Interval {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn from_int(n: &Int) -> Interval {
        Interval::point(Dyadic::from_int(n))
    }

    pub fn from_i64(n: i64) -> Interval {
        Interval::from_int(&Int::from(n))
    }

    /// Enclosure of a rational on the grid `2^-bits`.
    pub fn from_rat(x: &Rat, bits: u64) -> Interval {
        Interval { lo: Dyadic::floor_rat(x, bits as i64), hi: Dyadic::ceil_rat(x, bits as i64) }
    }

    /// Enclosure of `[a, b]` with rational endpoints.
    pub fn from_rat_bounds(a: &Rat, b: &Rat, bits: u64) -> Interval {
        Interval::new(Dyadic::floor_rat(a, bits as i64), Dyadic::ceil_rat(b, bits as i64))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }
    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).half()
    }

    /// Whether `hi - lo <= 2^-bits`.
    pub fn width_at_most(&self, bits: u64) -> bool {
        self.width() <= Dyadic::new(Int::one(), -(bits as i64))
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rat(&self, x: &Rat) -> bool {
        self.lo.to_rat() <= *x && *x <= self.hi.to_rat()
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.add(&o.lo), hi: self.hi.add(&o.hi) }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.sub(&o.hi), hi: self.hi.sub(&o.lo) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn mul_int(&self, n: &Int) -> Interval {
        let (a, b) = (self.lo.mul_int(n), self.hi.mul_int(n));
        if n.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn sqr(&self) -> Interval {
        let m = self.mul(self);
        if self.contains_zero() {
            Interval { lo: Dyadic::zero(), hi: m.hi }
        } else {
            m
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let hi = std::cmp::max(self.lo.neg(), self.hi.clone());
            Interval { lo: Dyadic::zero(), hi }
        }
    }

    pub fn powi(&self, k: u32) -> Interval {
        let mut out = Interval::from_i64(1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Quotient, each endpoint rounded outward to `bits` significant bits.
    pub fn div(&self, o: &Interval, bits: u64) -> Result<Interval> {
        if o.contains_zero() {
            return Err(Error::DivisionByZeroPossible);
        }
        let mut los = Vec::with_capacity(4);
        let mut his = Vec::with_capacity(4);
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let (l, h) = div_bounds(a, b, bits);
                los.push(l);
                his.push(h);
            }
        }
        Ok(Interval { lo: los.into_iter().min().unwrap(), hi: his.into_iter().max().unwrap() })
    }

    pub fn recip(&self, bits: u64) -> Result<Interval> {
        Interval::from_i64(1).div(self, bits)
    }

    /// Outward rounding to `bits` significant bits per endpoint.
    pub fn round_out(&self, bits: u64) -> Interval {
        Interval { lo: self.lo.round_floor(bits), hi: self.hi.round_ceil(bits) }
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: std::cmp::min(&self.lo, &o.lo).clone(), hi: std::cmp::max(&self.hi, &o.hi).clone() }
    }

    /// Enclosure of the square root; requires a non-negative lower end
    /// up to rounding (negative parts are clipped to zero).
    pub fn sqrt(&self, bits: u64) -> Result<Interval> {
        if self.hi.signum() < 0 {
            return Err(Error::Unsupported("square root of a negative interval".into()));
        }
        let lo = if self.lo.signum() <= 0 { Dyadic::zero() } else { sqrt_bound(&self.lo, bits, false) };
        let hi = sqrt_bound(&self.hi, bits, true);
        Ok(Interval { lo, hi })
    }

    /// Enclosure of the natural logarithm; the interval must be positive.
    pub fn ln(&self, bits: u64) -> Result<Interval> {
        if !self.is_positive() {
            return Err(Error::Unsupported("logarithm of a non-positive interval".into()));
        }
        let (lo, _) = ln_bounds(&self.lo, bits);
        let (_, hi) = ln_bounds(&self.hi, bits);
        Ok(Interval { lo, hi })
    }

    pub fn exp(&self, bits: u64) -> Interval {
        let (lo, _) = exp_bounds(&self.lo, bits);
        let (_, hi) = exp_bounds(&self.hi, bits);
        Interval { lo, hi }
    }

    /// `self^eta = exp(eta * ln self)` for a positive base.
    pub fn powf(&self, eta: &Interval, bits: u64) -> Result<Interval> {
        let l = self.ln(bits)?;
        Ok(eta.mul(&l).round_out(bits + 16).exp(bits))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", dyadic_to_sci(&self.lo, 12, false), dyadic_to_sci(&self.hi, 12, true))
    }
}

fn div_bounds(a: &Dyadic, b: &Dyadic, bits: u64) -> (Dyadic, Dyadic) {
    if a.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    // a/b = (ma/mb) 2^(ea-eb); shift so the integer quotient has `bits` bits
    let s = bits as i64 + b.mant.bits() as i64 - a.mant.bits() as i64 + 1;
    let (num, den) = if s >= 0 {
        (&a.mant << s as u64, b.mant.clone())
    } else {
        (a.mant.clone(), &b.mant << (-s) as u64)
    };
    let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    let e = a.exp - b.exp - s;
    (Dyadic::new(num.div_floor(&den), e), Dyadic::new(num.div_ceil(&den), e))
}

/// Plain interval operation dispatch.
pub fn interval_arith(op: ArithOp, a: &Interval, b: &Interval, bits: u64) -> Result<Interval> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b, bits)?,
    })
}

pub fn cmp(a: &Interval, b: &Interval) -> IntervalOrdering {
    if a.hi < b.lo {
        IntervalOrdering::Less
    } else if a.lo > b.hi {
        IntervalOrdering::Greater
    } else {
        IntervalOrdering::Uncertain
    }
}

fn sqrt_bound(x: &Dyadic, bits: u64, up: bool) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    // sqrt(m 2^e) = sqrt(m 2^(e - 2k)) ... choose an even exponent with enough bits
    let want = 2 * (bits as i64 + 2);
    let mut sh = (want - x.mant.bits() as i64).max(0);
    if (x.exp - sh).rem_euclid(2) != 0 {
        sh += 1;
    }
    let n = &x.mant << sh as u64;
    let e = (x.exp - sh) / 2;
    let s = n.sqrt();
    if up && &s * &s != n {
        Dyadic::new(s + 1, e)
    } else {
        Dyadic::new(s, e)
    }
}

/// atanh(a/b) for 0 <= a/b <= 1/3, fixed point with `w` fraction bits.
fn atanh_fixed(a: &Int, b: &Int, w: u64) -> (Int, Int) {
    let one = pow2(w);
    let z_lo = (a << w).div_floor(b);
    let z_hi = (a << w).div_ceil(b);
    let z2_lo = (&z_lo * &z_lo) >> w;
    let z2_hi = (&z_hi * &z_hi).div_ceil(&one);
    let (mut p_lo, mut p_hi) = (z_lo, z_hi);
    let (mut s_lo, mut s_hi) = (Int::zero(), Int::zero());
    let mut i: u64 = 0;
    loop {
        let d = Int::from(2 * i + 1);
        s_lo += p_lo.div_floor(&d);
        s_hi += p_hi.div_ceil(&d);
        p_lo = (&p_lo * &z2_lo) >> w;
        p_hi = (&p_hi * &z2_hi).div_ceil(&one);
        i += 1;
        if p_hi < Int::from(2) {
            break;
        }
    }
    // remaining terms are below p/(1 - z^2) <= 9/8 p
    s_hi += Integer::div_ceil(&(&p_hi * 9), &Int::from(8)) + 1;
    (s_lo, s_hi)
}

fn ln2_fixed(w: u64) -> (Int, Int) {
    let (lo, hi) = atanh_fixed(&Int::one(), &Int::from(3), w);
    (lo * 2, hi * 2)
}

/// Bounds on ln(x) for x > 0, as dyadics with about `bits` fraction bits.
fn ln_bounds(x: &Dyadic, bits: u64) -> (Dyadic, Dyadic) {
    let w = bits + 24;
    let nb = x.mant.bits();
    let k = x.exp + nb as i64 - 1;
    let half = pow2(nb - 1);
    let (a_lo, a_hi) = atanh_fixed(&(&x.mant - &half), &(&x.mant + &half), w);
    let (l_lo, l_hi) = ln2_fixed(w);
    let kk = Int::from(k);
    let (klo, khi) = if k >= 0 { (&kk * &l_lo, &kk * &l_hi) } else { (&kk * &l_hi, &kk * &l_lo) };
    let lo = a_lo * 2 + klo;
    let hi = a_hi * 2 + khi;
    (Dyadic::new(lo, -(w as i64)), Dyadic::new(hi, -(w as i64)))
}

/// Bounds on exp(y).
fn exp_bounds(y: &Dyadic, bits: u64) -> (Dyadic, Dyadic) {
    let extra = (y.msb().max(0) as u64) + 8;
    let w = bits + 24 + extra;
    let one = pow2(w);
    let wi = w as i64;
    let (y_lo, y_hi) = if y.exp >= -wi {
        let v = &y.mant << (y.exp + wi) as u64;
        (v.clone(), v)
    } else {
        let sh = (-wi - y.exp) as u64;
        (&y.mant >> sh, Integer::div_ceil(&y.mant, &pow2(sh)))
    };
    let (l_lo, l_hi) = ln2_fixed(w);
    let k: Int = Integer::div_floor(&y_lo, &l_hi) - 1;
    let (r_lo, r_hi) = if k >= Int::zero() {
        (&y_lo - &k * &l_hi, &y_hi - &k * &l_lo)
    } else {
        (&y_lo - &k * &l_lo, &y_hi - &k * &l_hi)
    };
    let series = |r: &Int, up: bool| -> Int {
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut n: u64 = 1;
        loop {
            let num = &term * r;
            let den = &one * Int::from(n);
            term = if up { num.div_ceil(&den) } else { num.div_floor(&den) };
            sum += &term;
            n += 1;
            if term < Int::from(2) {
                break;
            }
        }
        if up {
            // tail <= 2 * next term for r < 1.5
            sum + term * 2 + 2
        } else {
            sum
        }
    };
    let e_lo = series(&r_lo, false);
    let e_hi = series(&r_hi, true);
    let kk = k.to_i64().expect("exponent fits");
    (Dyadic::new(e_lo, kk - wi), Dyadic::new(e_hi, kk - wi))
}

/// Polynomial with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<Int>);

impl Poly {
    pub fn new(c: Vec<Int>) -> Poly {
        let mut c = c;
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&a| Int::from(a)).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::from_i64(0);
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(&Interval::from_int(c));
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![Int::zero()]);
        }
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Int::from(i)).collect())
    }

    fn to_rat_coeffs(&self) -> Vec<Rat> {
        self.0.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Rational interval evaluation, used for derivative-sign certificates.
fn eval_rat_interval(c: &[Int], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    for k in c.iter().rev() {
        let cands = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        let kk = Rat::from_integer(k.clone());
        a = mn + &kk;
        b = mx + kk;
    }
    (a, b)
}

fn rat_poly_trim(mut c: Vec<Rat>) -> Vec<Rat> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

fn rat_poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let f = &r[k] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            r[k - db + i] -= t;
        }
        r.pop();
        r = rat_poly_trim(r);
    }
    r
}

fn rat_poly_gcd(a: Vec<Rat>, b: Vec<Rat>) -> Vec<Rat> {
    let (mut a, mut b) = (rat_poly_trim(a), rat_poly_trim(b));
    while !b.is_empty() {
        let r = rat_poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn rat_poly_eval(c: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for k in c.iter().rev() {
        acc = acc * x + k;
    }
    acc
}

/// The unique root of `poly` inside `[lo, hi]`. The root is simple and the
/// polynomial changes sign strictly between the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicRoot {
    poly: Poly,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicRoot {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }
    pub fn lo(&self) -> &Rat {
        &self.lo
    }
    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.poly.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        }
    }

    /// One bisection step. Lands on a rational when the midpoint is the root.
    pub fn bisect(&self) -> RealScalar {
        let mid = (&self.lo + &self.hi) / Rat::from_integer(Int::from(2));
        let s = self.sign_at(&mid);
        if s == 0 {
            return RealScalar::Rational(mid);
        }
        if s == self.sign_at(&self.lo) {
            RealScalar::Algebraic(AlgebraicRoot { poly: self.poly.clone(), lo: mid, hi: self.hi.clone() })
        } else {
            RealScalar::Algebraic(AlgebraicRoot { poly: self.poly.clone(), lo: self.lo.clone(), hi: mid })
        }
    }

    fn derivative_certified(&self) -> bool {
        let d = self.poly.derivative();
        let (a, b) = eval_rat_interval(&d.0, &self.lo, &self.hi);
        a.is_positive() || b.is_negative()
    }

    /// Whether the exact rational `x` is this root.
    pub fn is_rational_root(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi && self.poly.eval_rat(x).is_zero()
    }

    /// Whether this root is also a root of `q` (coefficients constant first).
    pub fn is_root_of(&self, q: &[Rat]) -> bool {
        let q = rat_poly_trim(q.to_vec());
        if q.is_empty() {
            return true;
        }
        let g = rat_poly_gcd(self.poly.to_rat_coeffs(), q);
        if g.len() <= 1 {
            return false;
        }
        // roots of g are roots of poly; only this one lies in [lo, hi]
        let a = rat_poly_eval(&g, &self.lo);
        let b = rat_poly_eval(&g, &self.hi);
        a.is_zero() || b.is_zero() || (a.is_negative() != b.is_negative())
    }
}

/// A real number given exactly, as a decimal with declared accuracy, or as
/// an isolated algebraic root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealScalar {
    Rational(Rat),
    Decimal { text: String, value: Rat, guard_bits: u64 },
    Algebraic(AlgebraicRoot),
}

impl RealScalar {
    pub fn rational(x: Rat) -> RealScalar {
        RealScalar::Rational(x)
    }

    /// Isolates the root of `poly` in `[lo, hi]`, shrinking the interval
    /// until the derivative has a certified sign on it.
    pub fn algebraic(poly: Poly, lo: Rat, hi: Rat) -> Result<RealScalar> {
        if poly.degree() == 0 {
            return Err(Error::NoIsolatedRoot("constant polynomial".into()));
        }
        if lo >= hi {
            return Err(Error::NoIsolatedRoot("empty isolating interval".into()));
        }
        let root = AlgebraicRoot { poly, lo, hi };
        let (sl, sh) = (root.sign_at(&root.lo), root.sign_at(&root.hi));
        if sl == 0 || sh == 0 {
            return Err(Error::NoIsolatedRoot("polynomial vanishes at an interval endpoint".into()));
        }
        if sl == sh {
            return Err(Error::NoIsolatedRoot("no sign change on the interval".into()));
        }
        if root.poly.degree() == 1 {
            let c = &root.poly.0;
            return Ok(RealScalar::Rational(Rat::new(-c[0].clone(), c[1].clone())));
        }
        let mut cur = RealScalar::Algebraic(root);
        for _ in 0..4096 {
            match &cur {
                RealScalar::Algebraic(r) if !r.derivative_certified() => cur = r.bisect(),
                _ => return Ok(cur),
            }
        }
        Err(Error::NoIsolatedRoot("could not certify a simple root".into()))
    }

    /// `value:guard_bits`; the number is within `2^-(guard_bits+2)` of `value`.
    pub fn decimal(text: &str, guard_bits: u64) -> Result<RealScalar> {
        let value = parse_decimal(text)?;
        Ok(RealScalar::Decimal { text: text.to_string(), value, guard_bits })
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            RealScalar::Rational(x) => Some(x),
            _ => None,
        }
    }

    pub fn enclose(&self, bits: u64) -> Result<Interval> {
        match self {
            RealScalar::Rational(x) => Ok(Interval::from_rat(x, bits)),
            RealScalar::Decimal { value, guard_bits, .. } => {
                if bits > *guard_bits {
                    return Err(Error::PrecisionExhausted(format!(
                        "decimal input carries {} bits, {} requested",
                        guard_bits, bits
                    )));
                }
                let rad = Rat::new(Int::one(), pow2(guard_bits + 2));
                Ok(Interval::from_rat_bounds(&(value - &rad), &(value + &rad), guard_bits + 2))
            }
            RealScalar::Algebraic(r) => {
                let target = Rat::new(Int::one(), pow2(bits + 2));
                let mut cur = r.clone();
                while cur.width() > target {
                    match cur.bisect() {
                        RealScalar::Algebraic(n) => cur = n,
                        RealScalar::Rational(x) => return Ok(Interval::from_rat(&x, bits + 2)),
                        RealScalar::Decimal { .. } => unreachable!(),
                    }
                }
                Ok(Interval::from_rat_bounds(&cur.lo, &cur.hi, bits + 2))
            }
        }
    }

    pub fn enclose_capped(&self, bits: u64) -> Result<Interval> {
        match self {
            RealScalar::Decimal { guard_bits, .. } => self.enclose(bits.min(*guard_bits)),
            _ => self.enclose(bits),
        }
    }

    /// Same number with an isolating interval of width at most `2^-(bits+2)`.
    pub fn tightened(&self, bits: u64) -> RealScalar {
        match self {
            RealScalar::Algebraic(r) => {
                let target = Rat::new(Int::one(), pow2(bits + 2));
                let mut cur = r.clone();
                while cur.width() > target {
                    match cur.bisect() {
                        RealScalar::Algebraic(n) => cur = n,
                        other => return other,
                    }
                }
                RealScalar::Algebraic(cur)
            }
            _ => self.clone(),
        }
    }

    pub fn refine(&self) -> Result<RealScalar> {
        match self {
            RealScalar::Rational(_) => Ok(self.clone()),
            RealScalar::Decimal { guard_bits, .. } => {
                Err(Error::NotRefinable(format!("decimal input is fixed at {} bits", guard_bits)))
            }
            RealScalar::Algebraic(r) => Ok(r.bisect()),
        }
    }

    /// Exact test of `a + b * self == 0`; `None` when undecidable.
    pub fn affine_is_zero(&self, a: &Rat, b: &Rat) -> Option<bool> {
        if b.is_zero() {
            return Some(a.is_zero());
        }
        match self {
            RealScalar::Rational(x) => Some((a + b * x).is_zero()),
            RealScalar::Algebraic(r) => Some(r.is_rational_root(&(-a / b))),
            RealScalar::Decimal { .. } => None,
        }
    }

    /// Exact test of `c0 + c1 s + c2 s^2 == 0`.
    pub fn quadratic_is_zero(&self, c: &[Rat; 3]) -> Option<bool> {
        match self {
            RealScalar::Rational(x) => Some((&c[0] + &c[1] * x + &c[2] * x * x).is_zero()),
            RealScalar::Algebraic(r) => Some(r.is_root_of(c)),
            RealScalar::Decimal { .. } => {
                if c[2].is_zero() {
                    self.affine_is_zero(&c[0], &c[1])
                } else {
                    None
                }
            }
        }
    }
}

fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[Int], k: usize) -> Vec<Int> {
    let mut out = vec![Int::one()];
    for _ in 0..k {
        out = poly_mul(&out, a);
    }
    out
}

impl RealScalar {
    /// `(a + b s) / (c + d s)` for an invertible integer Moebius map.
    pub fn mobius(&self, a: &Int, b: &Int, c: &Int, d: &Int) -> Result<RealScalar> {
        if (a * d - b * c).is_zero() {
            return Err(Error::Unsupported("degenerate Moebius map".into()));
        }
        match self {
            RealScalar::Rational(x) => {
                let den = Rat::from_integer(c.clone()) + Rat::from_integer(d.clone()) * x;
                if den.is_zero() {
                    return Err(Error::DivisionByZeroPossible);
                }
                Ok(RealScalar::Rational((Rat::from_integer(a.clone()) + Rat::from_integer(b.clone()) * x) / den))
            }
            RealScalar::Decimal { .. } => Err(Error::Unsupported("Moebius image of a decimal input".into())),
            RealScalar::Algebraic(r) => {
                // s = (a - c u)/(d u - b); clear denominators in P(s)
                let n = r.poly.degree();
                let num = [a.clone(), -c];
                let den = [-b, d.clone()];
                let mut q = vec![Int::zero(); n + 1];
                for (i, pi) in r.poly.0.iter().enumerate() {
                    let term = poly_mul(&poly_pow(&num, i), &poly_pow(&den, n - i));
                    for (j, t) in term.iter().enumerate() {
                        q[j] += pi * t;
                    }
                }
                let q = Poly::new(q);
                let mut bits = 32;
                while bits <= 1 << 14 {
                    let s = RealScalar::Algebraic(r.clone());
                    let sx = s.enclose(bits)?;
                    let nu = Interval::from_int(a).add(&sx.mul_int(b));
                    let de = Interval::from_int(c).add(&sx.mul_int(d));
                    if let Ok(v) = nu.div(&de, bits) {
                        let v = v.round_out(bits);
                        if let Ok(out) = RealScalar::algebraic(q.clone(), v.lo().to_rat(), v.hi().to_rat()) {
                            return Ok(out);
                        }
                    }
                    bits *= 2;
                }
                Err(Error::NoIsolatedRoot("could not isolate the Moebius image".into()))
            }
        }
    }
}

impl fmt::Display for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealScalar::Rational(x) => write!(f, "{}", x),
            RealScalar::Decimal { text, guard_bits, .. } => write!(f, "{}:{}", text, guard_bits),
            RealScalar::Algebraic(r) => write!(f, "poly:{};iv:{},{}", r.poly, r.lo, r.hi),
        }
    }
}

fn parse_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad decimal '{}'", s));
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    let digits = format!("{}{}", ip, fp);
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n = Int::from_str(&digits).map_err(|_| bad())?;
    let d = num_traits::pow(Int::from(10), fp.len());
    let v = Rat::new(n, d);
    Ok(if neg { -v } else { v })
}

impl FromStr for RealScalar {
    type Err = Error;
    /// `p/q`, `0.25` (exact), `0.414:64` (decimal with guard bits) or
    /// `poly:c0,c1,...;iv:lo,hi` with coefficients from degree 0 upward.
    fn from_str(s: &str) -> Result<RealScalar> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("poly:") {
            let (cs, iv) = rest
                .split_once(";iv:")
                .ok_or_else(|| Error::Parse(format!("expected 'poly:..;iv:lo,hi' in '{}'", s)))?;
            let coeffs: Result<Vec<Int>> = cs
                .split(',')
                .map(|c| Int::from_str(c.trim()).map_err(|_| Error::Parse(format!("bad coefficient '{}'", c))))
                .collect();
            let (a, b) = iv
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad interval '{}'", iv)))?;
            let lo = parse_scalar_rat(a)?;
            let hi = parse_scalar_rat(b)?;
            return RealScalar::algebraic(Poly::new(coeffs?), lo, hi);
        }
        if let Some((v, g)) = s.split_once(':') {
            let g = g.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad guard bits '{}'", g)))?;
            return RealScalar::decimal(v, g);
        }
        Ok(RealScalar::Rational(parse_scalar_rat(s)?))
    }
}

fn parse_scalar_rat(s: &str) -> Result<Rat> {
    if s.contains('/') {
        crate::exact_core::parse_rat(s)
    } else {
        parse_decimal(s)
    }
}

/// Relation recorded by derived pair constructors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PairTag {
    None,
    /// `y = x^2` with `x` the root of `t^3 + d t^2 + t - 1` in (0,1).
    FixedPoint(u64),
}

/// Affine form `c0 + c1 x + c2 y` in the coordinates of a pair.
pub type Form = [Int; 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealPair {
    pub x: RealScalar,
    pub y: RealScalar,
    pub tag: PairTag,
}

impl RealPair {
    pub fn new(x: RealScalar, y: RealScalar) -> Result<RealPair> {
        let p = RealPair { x, y, tag: PairTag::None };
        p.check_near_triangle()?;
        Ok(p)
    }

    pub fn rational(x: Rat, y: Rat) -> RealPair {
        RealPair { x: RealScalar::Rational(x), y: RealScalar::Rational(y), tag: PairTag::None }
    }

    /// The pair `(alpha, alpha^2)` with triangle sequence `[d, d, d, ...]`.
    pub fn fixed_point(d: u64) -> Result<RealPair> {
        let di = Int::from(d);
        let px = Poly::new(vec![Int::from(-1), Int::one(), di.clone(), Int::one()]);
        let x = RealScalar::algebraic(px, Rat::zero(), Rat::one())?;
        // beta = alpha^2 solves t^3 + (2-d^2) t^2 + (1+2d) t - 1
        let py = Poly::new(vec![Int::from(-1), Int::one() + &di * 2, Int::from(2) - &di * &di, Int::one()]);
        let mut bits = 8;
        let y = loop {
            let ix = x.enclose(bits)?;
            let lo = ix.lo().to_rat();
            let hi = ix.hi().to_rat();
            let lo2 = if lo.is_negative() { Rat::zero() } else { &lo * &lo };
            if let Ok(y) = RealScalar::algebraic(py.clone(), lo2, &hi * &hi) {
                break y;
            }
            bits *= 2;
            if bits > 4096 {
                return Err(Error::NoIsolatedRoot("could not isolate alpha^2".into()));
            }
        };
        Ok(RealPair { x, y, tag: PairTag::FixedPoint(d) })
    }

    pub fn as_rational(&self) -> Option<(Rat, Rat)> {
        Some((self.x.as_rational()?.clone(), self.y.as_rational()?.clone()))
    }

    fn check_near_triangle(&self) -> Result<()> {
        let bits = match (&self.x, &self.y) {
            (RealScalar::Decimal { guard_bits: a, .. }, _) => (*a).min(32),
            (_, RealScalar::Decimal { guard_bits: b, .. }) => (*b).min(32),
            _ => 32,
        };
        let x = self.x.enclose(bits)?;
        let y = self.y.enclose(bits)?;
        let eps = Dyadic::new(Int::one(), -(bits as i64) + 2);
        let one = Dyadic::from_int(&Int::one());
        let ok = x.hi().add(&eps) >= *y.lo() && x.lo() <= &one.add(&eps) && y.hi().add(&eps).signum() >= 0;
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfTriangle("real pair does not enclose a point of the closed triangle".into()))
        }
    }

    /// Enclosure of `c0 + c1 x + c2 y`. Decimal coordinates are used at
    /// their declared accuracy when more is asked for.
    pub fn eval_form(&self, f: &Form, bits: u64) -> Result<Interval> {
        let mut acc = Interval::from_int(&f[0]);
        if !f[1].is_zero() {
            acc = acc.add(&self.x.enclose_capped(bits)?.mul_int(&f[1]));
        }
        if !f[2].is_zero() {
            acc = acc.add(&self.y.enclose_capped(bits)?.mul_int(&f[2]));
        }
        Ok(acc)
    }

    /// Smallest declared accuracy among decimal coordinates.
    pub fn max_bits(&self) -> Option<u64> {
        [&self.x, &self.y]
            .iter()
            .filter_map(|s| match s {
                RealScalar::Decimal { guard_bits, .. } => Some(*guard_bits),
                _ => None,
            })
            .min()
    }

    /// Shrinks algebraic isolating intervals to width `2^-(bits+2)`.
    pub fn tighten(&mut self, bits: u64) {
        self.x = self.x.tightened(bits);
        self.y = self.y.tightened(bits);
    }

    /// Exact test of `c0 + c1 x + c2 y == 0`; `None` when undecidable.
    pub fn form_is_zero(&self, f: &Form) -> Option<bool> {
        let c: [Rat; 3] = f.clone().map(Rat::from_integer);
        if c[2].is_zero() {
            return self.x.affine_is_zero(&c[0], &c[1]);
        }
        if c[1].is_zero() {
            return self.y.affine_is_zero(&c[0], &c[2]);
        }
        match (&self.x, &self.y) {
            (RealScalar::Rational(a), _) => self.y.affine_is_zero(&(&c[0] + &c[1] * a), &c[2]),
            (_, RealScalar::Rational(b)) => self.x.affine_is_zero(&(&c[0] + &c[2] * b), &c[1]),
            _ => match self.tag {
                PairTag::FixedPoint(_) => self.x.quadratic_is_zero(&[c[0].clone(), c[1].clone(), c[2].clone()]),
                PairTag::None if self.x == self.y => self.x.affine_is_zero(&c[0], &(&c[1] + &c[2])),
                PairTag::None => None,
            },
        }
    }
}

/// Precision schedule for certified decisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Working precision of the first attempt.
    pub start_bits: u64,
    /// Give up once the point is known to lie within `2^-bits` of a boundary.
    pub bits: u64,
    /// Hard ceiling on the working precision.
    pub max_bits: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { start_bits: 64, bits: 64, max_bits: 1 << 16 }
    }
}

/// Outcome of a failed certified floor: the caller knows which digit it was.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Undecided {
    pub bits: u64,
}

fn form_sub_scaled(a: &Form, b: &Form, k: &Int) -> Form {
    [&a[0] - &b[0] * k, &a[1] - &b[1] * k, &a[2] - &b[2] * k]
}

/// Certified `floor(N / D)` for affine forms N, D with D > 0 at the pair.
///
/// Ties are exact: when `N - kD` vanishes exactly the floor is `k`.
pub fn floor_ratio(pair: &mut RealPair, num: &Form, den: &Form, budget: &Budget) -> std::result::Result<Int, Undecided> {
    let cap = pair.max_bits().unwrap_or(u64::MAX);
    let mut bits = budget.start_bits.max(8).min(cap);
    loop {
        pair.tighten(bits);
        match floor_ratio_at(pair, num, den, bits, budget.bits) {
            Step::Done(k) => return Ok(k),
            Step::Stuck => return Err(Undecided { bits }),
            Step::Refine => {}
        }
        if bits >= cap {
            return Err(Undecided { bits });
        }
        bits = (bits * 2).min(cap);
        if bits > budget.max_bits {
            return Err(Undecided { bits });
        }
    }
}

enum Step {
    Done(Int),
    Refine,
    Stuck,
}

fn floor_ratio_at(pair: &RealPair, num: &Form, den: &Form, bits: u64, budget_bits: u64) -> Step {
    let (n, d) = match (pair.eval_form(num, bits), pair.eval_form(den, bits)) {
        (Ok(n), Ok(d)) => (n, d),
        _ => return Step::Stuck,
    };
    if !d.is_positive() {
        if pair.form_is_zero(den) == Some(true) || d.is_negative() || d.width_at_most(budget_bits) {
            return Step::Stuck;
        }
        return Step::Refine;
    }
    let mut k = (n.mid().to_rat() / d.mid().to_rat()).floor().to_integer();
    for _ in 0..8 {
        let a = n.sub(&d.mul_int(&k));
        let b = n.sub(&d.mul_int(&(&k + 1)));
        // a >= 0 ?
        let a_ok = if a.lo().signum() >= 0 {
            Some(true)
        } else if a.is_negative() {
            Some(false)
        } else if pair.form_is_zero(&form_sub_scaled(num, den, &k)) == Some(true) {
            Some(true)
        } else {
            None
        };
        // b < 0 ?
        let b_ok = if b.is_negative() {
            Some(true)
        } else if b.lo().signum() > 0
            || pair.form_is_zero(&form_sub_scaled(num, den, &(&k + 1))) == Some(true)
        {
            Some(false)
        } else {
            None
        };
        match (a_ok, b_ok) {
            (Some(true), Some(true)) => return Step::Done(k),
            (Some(false), _) => k -= 1,
            (_, Some(false)) => k += 1,
            _ => {
                // undecided: is the boundary already within 2^-budget?
                let close = |x: &Interval| -> bool {
                    match x.div(&d, bits) {
                        Ok(q) => q.contains_zero() && q.width().msb() <= -(budget_bits as i64),
                        Err(_) => false,
                    }
                };
                if (a_ok.is_none() && close(&a)) || (b_ok.is_none() && close(&b)) {
                    return Step::Stuck;
                }
                return Step::Refine;
            }
        }
    }
    Step::Refine
}

/// Numbers `a + b sqrt(n)` with rational a, b; exact arithmetic in Q(sqrt n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Rat,
    pub b: Rat,
    pub n: Int,
}

impl QuadSurd {
    pub fn new(a: Rat, b: Rat, n: Int) -> QuadSurd {
        QuadSurd { a, b, n }
    }

    pub fn rat(a: Rat, n: &Int) -> QuadSurd {
        QuadSurd { a, b: Rat::zero(), n: n.clone() }
    }

    pub fn int(a: i64, n: &Int) -> QuadSurd {
        QuadSurd::rat(Rat::from_integer(Int::from(a)), n)
    }

    pub fn add(&self, o: &QuadSurd) -> QuadSurd {
        QuadSurd { a: &self.a + &o.a, b: &self.b + &o.b, n: self.n.clone() }
    }

    pub fn sub(&self, o: &QuadSurd) -> QuadSurd {
        QuadSurd { a: &self.a - &o.a, b: &self.b - &o.b, n: self.n.clone() }
    }

    pub fn mul(&self, o: &QuadSurd) -> QuadSurd {
        let nn = Rat::from_integer(self.n.clone());
        QuadSurd {
            a: &self.a * &o.a + &self.b * &o.b * nn,
            b: &self.a * &o.b + &self.b * &o.a,
            n: self.n.clone(),
        }
    }

    pub fn div(&self, o: &QuadSurd) -> Option<QuadSurd> {
        let nn = Rat::from_integer(self.n.clone());
        let norm = &o.a * &o.a - &o.b * &o.b * nn;
        if norm.is_zero() {
            return None;
        }
        let conj = QuadSurd { a: o.a.clone(), b: -&o.b, n: o.n.clone() };
        let t = self.mul(&conj);
        Some(QuadSurd { a: t.a / &norm, b: t.b / &norm, n: self.n.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn enclose(&self, bits: u64) -> Interval {
        let s = Interval::from_int(&self.n).sqrt(bits + 8).expect("n >= 0");
        Interval::from_rat(&self.a, bits + 8)
            .add(&Interval::from_rat(&self.b, bits + 8).mul(&s))
            .round_out(bits + 8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(Dyadic::from_int(&Int::from(a)), Dyadic::from_int(&Int::from(b)))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(iv(1, 1).add(&iv(2, 2)), iv(3, 3));
        let a = Interval::from_rat_bounds(&rat(2, 5), &rat(1, 2), 60);
        let p = a.mul(&iv(2, 2));
        assert!(p.contains_rat(&rat(4, 5)) && p.contains_rat(&rat(1, 1)));
        assert_eq!(iv(1, 2).div(&iv(-1, 1), 32), Err(Error::DivisionByZeroPossible));
        let q = iv(1, 1).div(&iv(3, 3), 64).unwrap();
        assert!(q.contains_rat(&rat(1, 3)));
        assert!(q.width().msb() <= -60);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(cmp(&iv(1, 2), &iv(3, 4)), IntervalOrdering::Less);
        assert_eq!(cmp(&iv(1, 3), &iv(2, 4)), IntervalOrdering::Uncertain);
        assert_eq!(cmp(&iv(5, 6), &iv(1, 2)), IntervalOrdering::Greater);
    }

    #[test]
    fn enclosures() {
        let r = RealScalar::Rational(rat(2, 5));
        let e = r.enclose(16).unwrap();
        assert!(e.contains_rat(&rat(2, 5)));
        assert!(e.width_at_most(16));
        let a: RealScalar = "poly:-1,1,3,1;iv:0,1".parse().unwrap();
        let e = a.enclose(64).unwrap();
        assert!(e.width_at_most(64));
        let (lo, hi) = e.to_f64();
        assert!((lo - (2f64.sqrt() - 1.0)).abs() < 1e-15 && hi >= lo);
        let d = RealScalar::decimal("0.4142135", 20).unwrap();
        assert!(matches!(d.enclose(64), Err(Error::PrecisionExhausted(_))));
        assert!(d.enclose(20).is_ok());
    }

    #[test]
    fn refine_examples() {
        let a = RealScalar::algebraic(Poly::from_i64(&[-1, 1, 3, 1]), rat(0, 1), rat(1, 1)).unwrap();
        let mut cur = a.clone();
        for _ in 0..3 {
            cur = cur.refine().unwrap();
        }
        match (&a, &cur) {
            (RealScalar::Algebraic(x), RealScalar::Algebraic(y)) => assert_eq!(y.width(), x.width() / Rat::from_integer(Int::from(8))),
            _ => panic!("expected algebraic roots"),
        }
        let r = RealScalar::Rational(rat(1, 3));
        assert_eq!(r.refine().unwrap(), r);
        let d = RealScalar::decimal("0.5", 10).unwrap();
        assert!(matches!(d.refine(), Err(Error::NotRefinable(_))));
    }

    #[test]
    fn root_isolation_rejects() {
        assert!(RealScalar::algebraic(Poly::from_i64(&[1, 0, 1]), rat(0, 1), rat(1, 1)).is_err());
        // two roots inside: x^2 - 1/4 scaled => 4x^2 - 1 on [-1, 1] has no sign change
        assert!(RealScalar::algebraic(Poly::from_i64(&[-1, 0, 4]), rat(-1, 1), rat(1, 1)).is_err());
        // a rational root found by bisection
        let r = RealScalar::algebraic(Poly::from_i64(&[-1, 2]), rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(r, RealScalar::Rational(rat(1, 2)));
    }

    #[test]
    fn sqrt_ln_exp() {
        let two = iv(2, 2);
        let s = two.sqrt(100).unwrap();
        assert!(s.sqr().contains_rat(&rat(2, 1)) || s.lo().to_rat() * s.lo().to_rat() <= rat(2, 1));
        assert!(s.width().msb() <= -95);
        let l = two.ln(80).unwrap();
        let (a, b) = l.to_f64();
        assert!(a <= std::f64::consts::LN_2 + 1e-15 && b >= std::f64::consts::LN_2 - 1e-15);
        assert!(l.width().msb() <= -75);
        let e = iv(1, 1).exp(80);
        let (a, b) = e.to_f64();
        assert!(a <= std::f64::consts::E + 1e-15 && b >= std::f64::consts::E - 1e-15);
        let back = l.exp(80);
        assert!(back.contains_rat(&rat(2, 1)));
        let small = Interval::from_rat(&rat(1, 1000), 80).ln(80).unwrap();
        assert!(small.to_f64().0 < -6.9 && small.to_f64().1 > -6.91);
        let neg = iv(-3, -3).exp(60);
        assert!((neg.to_f64().0 - (-3f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn zero_tests() {
        let s: RealScalar = "poly:-1,2,1;iv:0,1".parse().unwrap();
        let p = RealPair::new(RealScalar::Rational(rat(1, 2)), s.clone()).unwrap();
        // 1 - x - y - (1-2y)... check 1 - 2x == 0 exactly
        assert_eq!(p.form_is_zero(&[Int::from(1), Int::from(-2), Int::zero()]), Some(true));
        assert_eq!(p.form_is_zero(&[Int::from(1), Int::zero(), Int::from(-2)]), Some(false));
        let fp = RealPair::fixed_point(3).unwrap();
        // y = x^2 and x^2 + 2x - 1 = 0, so y + 2x - 1 = 0
        assert_eq!(fp.form_is_zero(&[Int::from(-1), Int::from(2), Int::from(1)]), Some(true));
        assert_eq!(fp.form_is_zero(&[Int::from(-1), Int::from(3), Int::from(1)]), Some(false));
    }

    #[test]
    fn certified_floor() {
        let mut fp = RealPair::fixed_point(3).unwrap();
        // (1 - x)/y = 3.41...
        let num = [Int::one(), Int::from(-1), Int::zero()];
        let den = [Int::zero(), Int::zero(), Int::one()];
        assert_eq!(floor_ratio(&mut fp, &num, &den, &Budget::default()).unwrap(), Int::from(3));
    }

    #[test]
    fn mobius_image() {
        let s: RealScalar = "poly:-2,0,1;iv:1,2".parse().unwrap();
        // (sqrt 2 - 1)/2
        let m = s.mobius(&Int::from(-1), &Int::one(), &Int::from(2), &Int::zero()).unwrap();
        let e = m.enclose(80).unwrap();
        let (lo, hi) = e.to_f64();
        let want = (2f64.sqrt() - 1.0) / 2.0;
        assert!(lo <= want + 1e-15 && hi >= want - 1e-15);
        let r = RealScalar::Rational(rat(1, 3)).mobius(&Int::one(), &Int::one(), &Int::one(), &Int::zero()).unwrap();
        assert_eq!(r, RealScalar::Rational(rat(4, 3)));
    }

    #[test]
    fn sci_rendering() {
        assert_eq!(rat_to_sci(&rat(1, 3), 5, false), "3.3333e-1");
        assert_eq!(rat_to_sci(&rat(1, 3), 5, true), "3.3334e-1");
        assert_eq!(rat_to_sci(&rat(-1, 3), 5, false), "-3.3334e-1");
        assert_eq!(rat_to_sci(&rat(100, 1), 5, true), "1e2");
    }

    #[test]
    fn quad_surd() {
        let n = Int::from(2);
        let a = QuadSurd::new(rat(-1, 1), rat(1, 1), n.clone());
        // a^2 + 2a - 1 = 0
        let z = a.mul(&a).add(&a.mul(&QuadSurd::int(2, &n))).sub(&QuadSurd::int(1, &n));
        assert!(z.is_zero());
        let inv = QuadSurd::int(1, &n).div(&a).unwrap();
        assert_eq!(inv, QuadSurd::new(rat(1, 1), rat(1, 1), n));
    }
}
