//! Exact integers, rationals, canonical triples and small integer matrices.
//!
//! A [`Triple`] `(q, p, r)` stands for the rational pair `(p/q, r/q)`.
//! The field order follows the column vectors used by the matrix coding,
//! so the pair itself reads `(p/q, r/q)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Integer 3-vector with no canonicity requirement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec3 {
    pub q: Int,
    pub p: Int,
    pub r: Int,
}

impl Vec3 {
    pub fn new(q: impl Into<Int>, p: impl Into<Int>, r: impl Into<Int>) -> Vec3 {
        Vec3 { q: q.into(), p: p.into(), r: r.into() }
    }

    pub fn add(&self, o: &Vec3) -> Vec3 {
        Vec3 { q: &self.q + &o.q, p: &self.p + &o.p, r: &self.r + &o.r }
    }

    pub fn scale(&self, s: &Int) -> Vec3 {
        Vec3 { q: &self.q * s, p: &self.p * s, r: &self.r * s }
    }

    pub fn dot(&self, o: &Vec3) -> Int {
        &self.q * &o.q + &self.p * &o.p + &self.r * &o.r
    }

    pub fn as_array(&self) -> [Int; 3] {
        [self.q.clone(), self.p.clone(), self.r.clone()]
    }

    pub fn from_array(a: [Int; 3]) -> Vec3 {
        let [q, p, r] = a;
        Vec3 { q, p, r }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.q, self.p, self.r)
    }
}

/// Canonical triple: `q >= p >= r >= 0`, `q >= 1`, `gcd(q,p,r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    q: Int,
    p: Int,
    r: Int,
}

impl Triple {
    /// Builds a triple, rejecting anything that is not already canonical.
    pub fn new(q: impl Into<Int>, p: impl Into<Int>, r: impl Into<Int>) -> Result<Triple> {
        let v = Vec3::new(q, p, r);
        let t = canonicalize(&v)?;
        if t.as_vec3() != v {
            return Err(Error::OutOfTriangle(format!("{} is not in lowest terms", v)));
        }
        Ok(t)
    }

    /// Shorthand for literals in tests and examples; panics on bad input.
    pub fn of(q: i64, p: i64, r: i64) -> Triple {
        Triple::new(q, p, r).expect("canonical triple")
    }

    /// Any rational pair in the closed triangle, reduced to a common denominator.
    pub fn from_pair(x: &Rat, y: &Rat) -> Result<Triple> {
        let q = x.denom().lcm(y.denom());
        let p = x.numer() * (&q / x.denom());
        let r = y.numer() * (&q / y.denom());
        canonicalize(&Vec3 { q, p, r })
    }

    pub fn q(&self) -> &Int {
        &self.q
    }
    pub fn p(&self) -> &Int {
        &self.p
    }
    pub fn r(&self) -> &Int {
        &self.r
    }

    pub fn x(&self) -> Rat {
        Rat::new(self.p.clone(), self.q.clone())
    }

    pub fn y(&self) -> Rat {
        Rat::new(self.r.clone(), self.q.clone())
    }

    pub fn as_vec3(&self) -> Vec3 {
        Vec3 { q: self.q.clone(), p: self.p.clone(), r: self.r.clone() }
    }

    /// Text form `p/q,r/q` with the shared denominator repeated.
    pub fn to_text(&self) -> String {
        format!("{}/{},{}/{}", self.p, self.q, self.r, self.q)
    }

    /// Parses `p/q,r/q`. Without `reduce`, the two denominators must agree
    /// and the triple must already be in lowest terms.
    pub fn parse(s: &str, reduce: bool) -> Result<Triple> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected 'p/q,r/q', got '{}'", s)))?;
        Triple::parse_parts(a, b, reduce)
    }

    /// Same as [`Triple::parse`] with the two coordinates given separately.
    pub fn parse_parts(a: &str, b: &str, reduce: bool) -> Result<Triple> {
        let (pa, qa) = parse_fraction_parts(a)?;
        let (pb, qb) = parse_fraction_parts(b)?;
        if reduce {
            if qa.is_zero() || qb.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            return Triple::from_pair(&Rat::new(pa, qa), &Rat::new(pb, qb));
        }
        if qa != qb {
            return Err(Error::Parse(format!(
                "denominators differ in '{},{}' (use --reduce)",
                a.trim(),
                b.trim()
            )));
        }
        let v = Vec3 { q: qa, p: pa, r: pb };
        let t = canonicalize(&v)?;
        if t.as_vec3() != v {
            return Err(Error::Parse(format!("'{},{}' is not in lowest terms (use --reduce)", a.trim(), b.trim())));
        }
        Ok(t)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Triple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Triple> {
        Triple::parse(s, false)
    }
}

/// Lexicographic order on the pair `(x, y)`.
impl Ord for Triple {
    fn cmp(&self, o: &Triple) -> Ordering {
        let a = &self.p * &o.q;
        let b = &o.p * &self.q;
        a.cmp(&b).then_with(|| (&self.r * &o.q).cmp(&(&o.r * &self.q)))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, o: &Triple) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn parse_fraction_parts(s: &str) -> Result<(Int, Int)> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad fraction '{}'", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).map_err(|_| bad())?;
            let d = Int::from_str(d.trim()).map_err(|_| bad())?;
            Ok((n, d))
        }
        None => Ok((Int::from_str(s).map_err(|_| bad())?, Int::one())),
    }
}

/// Parses `a/b` or an integer into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let (n, d) = parse_fraction_parts(s)?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{}'", s)));
    }
    Ok(Rat::new(n, d))
}

/// Componentwise sum; never reduces.
pub fn mediant(a: &Triple, b: &Triple) -> Vec3 {
    Vec3 { q: &a.q + &b.q, p: &a.p + &b.p, r: &a.r + &b.r }
}

/// `Y + s X`, the s-fold mediant of Y with X.
pub fn mediant_iter(y: &Triple, x: &Triple, s: u64) -> Vec3 {
    let s = Int::from(s);
    Vec3 { q: &y.q + &x.q * &s, p: &y.p + &x.p * &s, r: &y.r + &x.r * &s }
}

pub fn canonicalize(v: &Vec3) -> Result<Triple> {
    let (mut q, mut p, mut r) = (v.q.clone(), v.p.clone(), v.r.clone());
    if q.is_negative() {
        q = -q;
        p = -p;
        r = -r;
    }
    if q.is_zero() {
        return Err(Error::OutOfTriangle(format!("{} has zero denominator", v)));
    }
    let g = q.gcd(&p).gcd(&r);
    if !g.is_one() {
        q /= &g;
        p /= &g;
        r /= &g;
    }
    if !(q >= p && p >= r && r >= Int::zero()) {
        return Err(Error::OutOfTriangle(format!("{} is outside the closed triangle", v)));
    }
    Ok(Triple { q, p, r })
}

/// Squared Euclidean distance between the two pairs.
pub fn sq_dist(a: &Triple, b: &Triple) -> Rat {
    let dx = a.x() - b.x();
    let dy = a.y() - b.y();
    &dx * &dx + &dy * &dy
}

/// 3x3 integer matrix, stored by rows. Columns are the vectors that matter
/// for the pair coding, so [`Mat3::col`] and [`Mat3::from_cols`] exist.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[Int; 3]; 3]);

impl Mat3 {
    pub fn from_i64(m: [[i64; 3]; 3]) -> Mat3 {
        Mat3(m.map(|row| row.map(Int::from)))
    }

    pub fn identity() -> Mat3 {
        Mat3::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn from_cols(c0: &Vec3, c1: &Vec3, c2: &Vec3) -> Mat3 {
        Mat3([
            [c0.q.clone(), c1.q.clone(), c2.q.clone()],
            [c0.p.clone(), c1.p.clone(), c2.p.clone()],
            [c0.r.clone(), c1.r.clone(), c2.r.clone()],
        ])
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3 { q: self.0[0][j].clone(), p: self.0[1][j].clone(), r: self.0[2][j].clone() }
    }

    pub fn row(&self, i: usize) -> Vec3 {
        let [a, b, c] = self.0[i].clone();
        Vec3 { q: a, p: b, r: c }
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        mat3_mul(self, o)
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        mat3_vec(self, v)
    }

    pub fn det(&self) -> Int {
        mat3_det(self)
    }

    pub fn pow(&self, k: u64) -> Mat3 {
        let mut out = Mat3::identity();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        out
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse_unimodular(&self) -> Option<Mat3> {
        if !self.det().is_one() {
            return None;
        }
        let m = &self.0;
        let cof = |i: usize, j: usize| -> Int {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        let mut out: [[Int; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = cof(j, i);
            }
        }
        Some(Mat3(out))
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out: [[Int; 3]; 3] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = &a.0[i][0] * &b.0[0][j] + &a.0[i][1] * &b.0[1][j] + &a.0[i][2] * &b.0[2][j];
        }
    }
    Mat3(out)
}

pub fn mat3_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    let m = &a.0;
    Vec3 {
        q: &m[0][0] * &v.q + &m[0][1] * &v.p + &m[0][2] * &v.r,
        p: &m[1][0] * &v.q + &m[1][1] * &v.p + &m[1][2] * &v.r,
        r: &m[2][0] * &v.q + &m[2][1] * &v.p + &m[2][2] * &v.r,
    }
}

pub fn mat3_det(a: &Mat3) -> Int {
    let m = &a.0;
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[Int; 2]; 2]);

impl Mat2 {
    pub fn from_i64(m: [[i64; 2]; 2]) -> Mat2 {
        Mat2(m.map(|row| row.map(Int::from)))
    }

    pub fn identity() -> Mat2 {
        Mat2::from_i64([[1, 0], [0, 1]])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
            [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
        ])
    }

    pub fn det(&self) -> Int {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mediant_examples() {
        assert_eq!(mediant(&Triple::of(15, 5, 4), &Triple::of(8, 3, 2)), Vec3::new(23, 8, 6));
        assert_eq!(mediant(&Triple::of(1, 0, 0), &Triple::of(1, 1, 1)), Vec3::new(2, 1, 1));
        let d = mediant(&Triple::of(2, 1, 0), &Triple::of(2, 1, 0));
        assert_eq!(d, Vec3::new(4, 2, 0));
        assert_eq!(canonicalize(&d).unwrap(), Triple::of(2, 1, 0));
    }

    #[test]
    fn mediant_iter_examples() {
        let y = Triple::of(1, 1, 0);
        let x = Triple::of(1, 0, 0);
        assert_eq!(mediant_iter(&y, &x, 1), Vec3::new(2, 1, 0));
        assert_eq!(mediant_iter(&y, &x, 3), Vec3::new(4, 1, 0));
        assert_eq!(mediant_iter(&y, &x, 0), y.as_vec3());
    }

    #[test]
    fn canonicalize_rejects() {
        assert!(matches!(canonicalize(&Vec3::new(3, 5, 1)), Err(Error::OutOfTriangle(_))));
        assert!(canonicalize(&Vec3::new(0, 0, 0)).is_err());
        assert_eq!(canonicalize(&Vec3::new(-4, -2, 0)).unwrap(), Triple::of(2, 1, 0));
    }

    #[test]
    fn text_round_trip() {
        let t = Triple::of(54, 19, 14);
        assert_eq!(t.to_text(), "19/54,14/54");
        assert_eq!(Triple::parse("19/54,14/54", false).unwrap(), t);
        assert!(Triple::parse("2/4,1/4", false).is_ok());
        assert!(Triple::parse("4/8,2/8", false).is_err());
        assert_eq!(Triple::parse("4/8,2/8", true).unwrap(), Triple::of(4, 2, 1));
        assert_eq!(Triple::parse("1/2,1/3", true).unwrap(), Triple::of(6, 3, 2));
        assert!(Triple::parse("1/2,1/3", false).is_err());
        assert!(Triple::parse("3/2,1/2", false).is_err());
    }

    #[test]
    fn sq_dist_examples() {
        let a = Triple::of(2, 1, 1);
        assert_eq!(sq_dist(&a, &a), Rat::zero());
        assert_eq!(sq_dist(&Triple::of(1, 1, 0), &Triple::of(1, 0, 0)), Rat::one());
        assert_eq!(sq_dist(&a, &Triple::of(1, 1, 1)), rat(1, 2));
    }

    #[test]
    fn matrices() {
        let l = Mat3::from_i64([[1, 0, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(l.det(), int(1));
        let m3 = Mat3::from_i64([[1, 3, 1], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(m3.apply(&Vec3::new(2, 1, 0)), Vec3::new(5, 2, 1));
        let inv = m3.inverse_unimodular().unwrap();
        assert_eq!(inv.mul(&m3), Mat3::identity());
        assert_eq!(m3.pow(2), m3.mul(&m3));
    }

    #[test]
    fn lex_order() {
        let mut v = vec![Triple::of(1, 1, 1), Triple::of(2, 1, 0), Triple::of(2, 1, 1), Triple::of(1, 0, 0)];
        v.sort();
        assert_eq!(v, vec![Triple::of(1, 0, 0), Triple::of(2, 1, 0), Triple::of(2, 1, 1), Triple::of(1, 1, 1)]);
    }
}
