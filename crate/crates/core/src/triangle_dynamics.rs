//! The Triangle map, the slow map and its inverse branches, triangle
//! sequences of rational and real pairs, and the vertex recurrence.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_core::{canonicalize, mediant, sq_dist, Int, Mat3, Rat, Triple, Vec3};
use crate::farey1d::{fmt_digits, parse_digit_list, Frac};
use crate::verified_reals::{floor_ratio, Budget, Form, Interval, RealPair, RealScalar};

/// Where a rational pair sits in the closed triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Vertex,
    Lambda,
    Sigma,
    Upsilon,
    Interior,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Vertex => "vertex",
            NodeKind::Lambda => "lambda",
            NodeKind::Sigma => "sigma",
            NodeKind::Upsilon => "upsilon",
            NodeKind::Interior => "interior",
        }
    }

    pub fn is_boundary(self) -> bool {
        !matches!(self, NodeKind::Interior)
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NodeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<NodeKind> {
        Ok(match s.trim() {
            "vertex" => NodeKind::Vertex,
            "lambda" => NodeKind::Lambda,
            "sigma" => NodeKind::Sigma,
            "upsilon" => NodeKind::Upsilon,
            "interior" => NodeKind::Interior,
            other => return Err(Error::Parse(format!("unknown node kind '{}'", other))),
        })
    }
}

/// Vertices are (0,0), (1,0), (1,1); Lambda is y = 0, Upsilon is x = 1 and
/// Sigma is x = y.
pub fn classify(t: &Triple) -> NodeKind {
    let (q, p, r) = (t.q(), t.p(), t.r());
    let vertex = (p.is_zero() && r.is_zero()) || (p == q && r.is_zero()) || (p == q && r == q);
    if vertex {
        NodeKind::Vertex
    } else if r.is_zero() {
        NodeKind::Lambda
    } else if p == q {
        NodeKind::Upsilon
    } else if p == r {
        NodeKind::Sigma
    } else {
        NodeKind::Interior
    }
}

/// `k` with `1 - x - k y >= 0 > 1 - x - (k+1) y`.
pub fn sector_index(t: &Triple) -> Result<Int> {
    if t.r().is_zero() {
        return Err(Error::OnLambda(format!("{} has y = 0", t)));
    }
    Ok(num_integer::Integer::div_floor(&(t.q() - t.p()), t.r()))
}

const SECTOR_NUM: [i64; 3] = [1, -1, 0];
const SECTOR_DEN: [i64; 3] = [0, 0, 1];

fn form(c: [i64; 3]) -> Form {
    c.map(Int::from)
}

/// Certified sector index of a real pair.
pub fn sector_index_real(pair: &RealPair, budget: &Budget) -> Result<Int> {
    let den = form(SECTOR_DEN);
    if pair.form_is_zero(&den) == Some(true) {
        return Err(Error::OnLambda("real pair has y = 0".into()));
    }
    let mut p = pair.clone();
    floor_ratio(&mut p, &form(SECTOR_NUM), &den, budget).map_err(|u| Error::AmbiguousBoundary { digit: 0, bits: u.bits })
}

/// T(x, y) = (y/x, (1 - x - k y)/x).
pub fn triangle_map(t: &Triple) -> Result<Triple> {
    let k = sector_index(t)?;
    let v = Vec3 { q: t.p().clone(), p: t.r().clone(), r: t.q() - t.p() - &k * t.r() };
    canonicalize(&v)
}

/// Whether the pair lies in the first branch of the slow map,
/// i.e. in the sector of index 0.
pub fn in_gamma0(t: &Triple) -> bool {
    t.r().is_positive() && (t.q() - t.p() - t.r()).is_negative()
}

/// The slow map: `(y/x, (1-x)/x)` on the sector of index 0 and
/// `(x/(1-y), y/(1-y))` elsewhere.
pub fn slow_map(t: &Triple) -> Triple {
    let v = if in_gamma0(t) {
        Vec3 { q: t.p().clone(), p: t.r().clone(), r: t.q() - t.p() }
    } else {
        Vec3 { q: t.q() - t.r(), p: t.p().clone(), r: t.r().clone() }
    };
    canonicalize(&v).expect("slow map stays in the closed triangle")
}

pub fn m0() -> Mat3 {
    Mat3::from_i64([[1, 0, 1], [1, 0, 0], [0, 1, 0]])
}

pub fn m1() -> Mat3 {
    Mat3::from_i64([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
}

/// `phi0(x, y) = (1/(1+y), x/(1+y))`.
pub fn phi0(t: &Triple) -> Triple {
    canonicalize(&m0().apply(&t.as_vec3())).expect("phi0 stays in the closed triangle")
}

/// `phi1(x, y) = (x/(1+y), y/(1+y))`.
pub fn phi1(t: &Triple) -> Triple {
    canonicalize(&m1().apply(&t.as_vec3())).expect("phi1 stays in the closed triangle")
}

/// `phi2(x, x) = (x, 0)`.
pub fn phi2(t: &Triple) -> Result<Triple> {
    if t.p() != t.r() {
        return Err(Error::NotOnSigma(format!("{} is not on the diagonal", t)));
    }
    canonicalize(&Vec3 { q: t.q().clone(), p: t.p().clone(), r: Int::zero() })
}

/// Word over {0, 1, 2} naming a composition of the inverse branches.
/// `phi_w = phi_{w0} o phi_{w1} o ...`, so the last symbol acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PhiWord(pub Vec<u8>);

/// A [`PhiWord`] without the symbol 2.
pub type BinaryWord = PhiWord;

impl PhiWord {
    pub fn empty() -> PhiWord {
        PhiWord(vec![])
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&c| c < 2)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `1^{a0} 0 1^{a1} 0 ... 1^{ak} 0`.
    pub fn from_digits(digits: &[Int]) -> Result<PhiWord> {
        let mut w = Vec::new();
        for a in digits {
            w.extend(std::iter::repeat_n(1u8, small(a)?));
            w.push(0);
        }
        Ok(PhiWord(w))
    }

    pub fn push_run(&mut self, sym: u8, n: usize) {
        self.0.extend(std::iter::repeat_n(sym, n));
    }

    pub fn concat(&self, o: &PhiWord) -> PhiWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        PhiWord(v)
    }

    /// `M_{w0} M_{w1} ...`; only for binary words.
    pub fn matrix(&self) -> Result<Mat3> {
        if !self.is_binary() {
            return Err(Error::Parse(format!("'{}' is not a binary word", self)));
        }
        let (a, b) = (m0(), m1());
        Ok(self.0.iter().fold(Mat3::identity(), |m, &c| m.mul(if c == 0 { &a } else { &b })))
    }
}

pub(crate) fn small(a: &Int) -> Result<usize> {
    use num_traits::ToPrimitive;
    a.to_usize()
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::Unsupported(format!("digit {} is too large to spell out", a)))
}

impl fmt::Display for PhiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl FromStr for PhiWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<PhiWord> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '|')
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::Parse(format!("bad symbol '{}' in phi word", c))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(PhiWord)
    }
}

pub fn phi_word(w: &PhiWord, t: &Triple) -> Result<Triple> {
    let mut cur = t.clone();
    for &c in w.0.iter().rev() {
        cur = match c {
            0 => phi0(&cur),
            1 => phi1(&cur),
            _ => phi2(&cur)?,
        };
    }
    Ok(cur)
}

/// Finite list of digits; `complete` is false for a truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TriangleSeq {
    pub digits: Vec<Int>,
    pub complete: bool,
}

impl TriangleSeq {
    pub fn complete(digits: Vec<Int>) -> TriangleSeq {
        TriangleSeq { digits, complete: true }
    }

    pub fn truncated(digits: Vec<Int>) -> TriangleSeq {
        TriangleSeq { digits, complete: false }
    }

    pub fn from_i64(d: &[i64]) -> TriangleSeq {
        TriangleSeq::complete(d.iter().map(|&a| Int::from(a)).collect())
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn sum(&self) -> Int {
        self.digits.iter().sum()
    }
}

impl fmt::Display for TriangleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complete {
            return f.write_str(&fmt_digits(&self.digits));
        }
        let s: Vec<String> = self.digits.iter().map(|a| a.to_string()).chain(["...".to_string()]).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for TriangleSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<TriangleSeq> {
        let t = s.trim();
        if let Some(head) = t.strip_suffix(",...]").or_else(|| t.strip_suffix("...]")) {
            let d = parse_digit_list(&format!("{}]", head.trim_end_matches(',')))?;
            check_digits(&d)?;
            return Ok(TriangleSeq::truncated(d));
        }
        let d = parse_digit_list(t)?;
        check_digits(&d)?;
        Ok(TriangleSeq::complete(d))
    }
}

fn check_digits(d: &[Int]) -> Result<()> {
    if d.iter().any(|a| a.is_negative()) {
        return Err(Error::Parse("triangle sequence digits must be >= 0".into()));
    }
    Ok(())
}

/// Triangle sequence of a rational pair with the Lambda remainder xi.
///
/// Interior points iterate T until they land on (xi, 0). Boundary points
/// use their own side coordinate: xi on the diagonal as (xi, xi), on
/// Lambda as (xi, 0) with an empty sequence, on Upsilon as (1, xi) with
/// the sequence [0].
pub fn triangle_sequence_rational(t: &Triple) -> (TriangleSeq, Frac, NodeKind) {
    let kind = classify(t);
    let frac = |p: &Int, q: &Int| Frac::new(p.clone(), q.clone()).expect("coordinate in [0,1]");
    match kind {
        NodeKind::Vertex => {
            if t.p().is_zero() {
                (TriangleSeq::complete(vec![]), frac(&Int::zero(), &Int::one()), kind)
            } else if t.r().is_zero() {
                (TriangleSeq::complete(vec![]), frac(&Int::one(), &Int::one()), kind)
            } else {
                (TriangleSeq::complete(vec![Int::zero()]), frac(&Int::one(), &Int::one()), kind)
            }
        }
        NodeKind::Lambda => (TriangleSeq::complete(vec![]), frac(t.p(), t.q()), kind),
        NodeKind::Upsilon => (TriangleSeq::complete(vec![Int::zero()]), frac(t.r(), t.q()), kind),
        NodeKind::Sigma => {
            let k = sector_index(t).expect("off Lambda");
            let xi = frac(t.p(), t.q());
            // xi = 1/(k+1) lands on (1,0); otherwise on Upsilon, then digit 0
            if (&k + 1u32) * t.p() == *t.q() {
                (TriangleSeq::complete(vec![k]), xi, kind)
            } else {
                (TriangleSeq::complete(vec![k, Int::zero()]), xi, kind)
            }
        }
        NodeKind::Interior => {
            let mut digits = Vec::new();
            let mut cur = t.clone();
            while !cur.r().is_zero() {
                digits.push(sector_index(&cur).expect("off Lambda"));
                cur = triangle_map(&cur).expect("T of an interior point");
            }
            (TriangleSeq::complete(digits), frac(cur.p(), cur.q()), kind)
        }
    }
}

/// Digits of a real pair with the linear data needed for the remainder.
#[derive(Clone, Debug)]
pub struct RealExpansion {
    pub seq: TriangleSeq,
    /// Rows are affine forms in (1, x, y); the current iterate is
    /// `(row1/row0, row2/row0)` evaluated at the input pair.
    pub forms: Mat3,
    pub pair: RealPair,
}

impl RealExpansion {
    /// Enclosure of the x coordinate of the last iterate, which for a
    /// complete expansion is the Lambda remainder.
    pub fn remainder_enclosure(&self, bits: u64) -> Result<Interval> {
        let f = &self.forms.0;
        let num = self.pair.eval_form(&f[1], bits + 8)?;
        let den = self.pair.eval_form(&f[0], bits + 8)?;
        Ok(num.div(&den, bits + 8)?.round_out(bits + 4))
    }

    /// The remainder as an exact scalar when one coordinate is rational.
    pub fn remainder_scalar(&self) -> Result<RealScalar> {
        let f = &self.forms.0;
        let (n, d) = (&f[1], &f[0]);
        match (&self.pair.x, &self.pair.y) {
            (RealScalar::Rational(x), s) => {
                let a = Rat::from_integer(n[0].clone()) + Rat::from_integer(n[1].clone()) * x;
                let c = Rat::from_integer(d[0].clone()) + Rat::from_integer(d[1].clone()) * x;
                mobius_rat(s, &a, &Rat::from_integer(n[2].clone()), &c, &Rat::from_integer(d[2].clone()))
            }
            (s, RealScalar::Rational(y)) => {
                let a = Rat::from_integer(n[0].clone()) + Rat::from_integer(n[2].clone()) * y;
                let c = Rat::from_integer(d[0].clone()) + Rat::from_integer(d[2].clone()) * y;
                mobius_rat(s, &a, &Rat::from_integer(n[1].clone()), &c, &Rat::from_integer(d[1].clone()))
            }
            _ => Err(Error::Unsupported("remainder of a pair with two irrational coordinates".into())),
        }
    }
}

fn mobius_rat(s: &RealScalar, a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<RealScalar> {
    let l = [a, b, c, d].iter().fold(Int::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()));
    let sc = |r: &Rat| (r * Rat::from_integer(l.clone())).to_integer();
    s.mobius(&sc(a), &sc(b), &sc(c), &sc(d))
}

/// Certified triangle sequence of a real pair, at most `max_digits` long.
pub fn triangle_sequence_real(pair: &RealPair, max_digits: usize, budget: &Budget) -> Result<RealExpansion> {
    let mut work = pair.clone();
    let mut forms = Mat3::identity();
    let mut digits = Vec::new();
    loop {
        let rows = forms.0.clone();
        if work.form_is_zero(&rows[2]) == Some(true) {
            return Ok(RealExpansion { seq: TriangleSeq::complete(digits), forms, pair: work });
        }
        if digits.len() >= max_digits {
            return Ok(RealExpansion { seq: TriangleSeq::truncated(digits), forms, pair: work });
        }
        let num: Form = [&rows[0][0] - &rows[1][0], &rows[0][1] - &rows[1][1], &rows[0][2] - &rows[1][2]];
        let k = floor_ratio(&mut work, &num, &rows[2], budget)
            .map_err(|u| Error::AmbiguousBoundary { digit: digits.len(), bits: u.bits })?;
        if k.is_negative() {
            return Err(Error::OutOfTriangle("real pair leaves the triangle during expansion".into()));
        }
        // (w0, w1, w2) -> (w1, w2, w0 - w1 - k w2)
        let new2: Form = [
            &num[0] - &k * &rows[2][0],
            &num[1] - &k * &rows[2][1],
            &num[2] - &k * &rows[2][2],
        ];
        forms = Mat3([rows[1].clone(), rows[2].clone(), new2]);
        digits.push(k);
    }
}

pub fn seed_vectors() -> [Vec3; 3] {
    [Vec3::new(0, 0, 1), Vec3::new(1, 0, 0), Vec3::new(1, 1, 0)]
}

/// Rolling window `(X_{k-3}, X_{k-2}, X_{k-1})` of the vertex recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexState {
    pub window: [Vec3; 3],
    pub k: i64,
}

impl Default for VertexState {
    fn default() -> VertexState {
        VertexState::new()
    }
}

impl VertexState {
    pub fn new() -> VertexState {
        VertexState { window: seed_vectors(), k: 0 }
    }

    /// `X_k = X_{k-3} + X_{k-1} + a X_{k-2}`; returns X_k.
    pub fn push(&mut self, a: &Int) -> Vec3 {
        let [x3, x2, x1] = &self.window;
        let xk = x3.add(x1).add(&x2.scale(a));
        self.window = [x2.clone(), x1.clone(), xk.clone()];
        self.k += 1;
        xk
    }

    pub fn denominators(&self) -> [Int; 3] {
        [self.window[0].q.clone(), self.window[1].q.clone(), self.window[2].q.clone()]
    }
}

/// `X_{-3}, X_{-2}, X_{-1}, X_0, ..., X_k`.
pub fn vertex_recurrence(digits: &[Int]) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = seed_vectors().to_vec();
    let mut st = VertexState::new();
    for a in digits {
        out.push(st.push(a));
    }
    out
}

/// Vertices `X^_{k-1}, X^_k, X^_{k-2} + X^_k` of the nested triangle.
pub fn nested_triangle(digits: &[Int]) -> (Triple, Triple, Triple) {
    let x = vertex_recurrence(digits);
    let n = x.len();
    let c = |v: &Vec3| canonicalize(v).expect("vertex vectors lie in the closed triangle");
    (c(&x[n - 2]), c(&x[n - 1]), c(&x[n - 3].add(&x[n - 1])))
}

fn denominators(digits: &[Int]) -> Vec<Int> {
    // index i holds q_{i-3}
    vertex_recurrence(digits).into_iter().map(|v| v.q).collect()
}

/// `lambda_k = (q_{k-2} + q_k) / q_{k+1}` for k = 0 .. len-2.
pub fn lambda_seq(digits: &[Int]) -> Vec<Rat> {
    let q = denominators(digits);
    (0..digits.len().saturating_sub(1))
        .map(|k| Rat::new(&q[k + 1] + &q[k + 3], q[k + 4].clone()))
        .collect()
}

/// `1 - lambda_k = a_{k+1} q_{k-1} / q_{k+1}`, computed from the right side.
pub fn one_minus_lambda(digits: &[Int]) -> Vec<Rat> {
    let q = denominators(digits);
    (0..digits.len().saturating_sub(1))
        .map(|k| Rat::new(&digits[k + 1] * &q[k + 2], q[k + 4].clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceDiagnostics {
    /// Index of the first factor used: one past the last k with lambda_k = 1.
    pub start: usize,
    /// `prod_{start <= j <= k} (1 - lambda_j)` for k = start, start+1, ...
    pub partial_products: Vec<Rat>,
    /// `|X^_{k-1} - X^_k|^2` for k = 0 .. len-1.
    pub gaps: Vec<Rat>,
    /// Last vertices at even and odd indices.
    pub even_end: Triple,
    pub odd_end: Triple,
}

pub fn convergence_diagnostics(digits: &[Int]) -> ConvergenceDiagnostics {
    let oml = one_minus_lambda(digits);
    let start = oml.iter().rposition(|v| v.is_zero()).map_or(0, |i| i + 1);
    let mut acc = Rat::one();
    let partial_products = oml[start..]
        .iter()
        .map(|v| {
            acc = &acc * v;
            acc.clone()
        })
        .collect();
    let x = vertex_recurrence(digits);
    let hat: Vec<Triple> = x[1..].iter().map(|v| canonicalize(v).expect("vertex")).collect();
    // hat[i] is X^_{i-2}
    let gaps = (0..digits.len()).map(|k| sq_dist(&hat[k + 1], &hat[k + 2])).collect();
    let n = hat.len();
    let last_k = n as i64 - 3;
    let (even_end, odd_end) = if last_k.rem_euclid(2) == 0 {
        (hat[n - 1].clone(), hat[n - 2].clone())
    } else {
        (hat[n - 2].clone(), hat[n - 1].clone())
    };
    ConvergenceDiagnostics { start, partial_products, gaps, even_end, odd_end }
}

/// The mediant of two canonical triples, canonicalized.
pub fn mediant_point(a: &Triple, b: &Triple) -> Triple {
    canonicalize(&mediant(a, b)).expect("mediant of two points of the closed triangle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn t(q: i64, p: i64, r: i64) -> Triple {
        Triple::of(q, p, r)
    }

    fn ints(d: &[i64]) -> Vec<Int> {
        d.iter().map(|&a| Int::from(a)).collect()
    }

    #[test]
    fn sector_examples() {
        assert_eq!(sector_index(&t(2, 1, 1)).unwrap(), Int::from(1));
        assert_eq!(sector_index(&t(54, 19, 14)).unwrap(), Int::from(2));
        assert_eq!(sector_index(&t(5, 2, 1)).unwrap(), Int::from(3));
        assert!(matches!(sector_index(&t(5, 2, 0)), Err(Error::OnLambda(_))));
    }

    #[test]
    fn triangle_map_examples() {
        assert_eq!(triangle_map(&t(54, 19, 14)).unwrap(), t(19, 14, 7));
        assert_eq!(triangle_map(&t(2, 1, 1)).unwrap(), t(1, 1, 0));
        assert_eq!(triangle_map(&t(3, 2, 1)).unwrap(), t(2, 1, 0));
        let mut c = t(54, 19, 14);
        for _ in 0..4 {
            c = triangle_map(&c).unwrap();
        }
        assert_eq!(c, t(5, 2, 0));
    }

    #[test]
    fn slow_map_examples() {
        assert_eq!(slow_map(&t(3, 2, 1)), t(2, 2, 1));
        assert_eq!(slow_map(&t(4, 2, 1)), t(3, 2, 1));
        let p = t(54, 19, 14);
        let s3 = slow_map(&slow_map(&slow_map(&p)));
        assert_eq!(s3, triangle_map(&p).unwrap());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi0(&t(1, 1, 0)), t(1, 1, 1));
        assert_eq!(phi1(&t(1, 1, 0)), t(1, 1, 0));
        assert_eq!(phi2(&t(5, 2, 2)).unwrap(), t(5, 2, 0));
        assert!(matches!(phi2(&t(3, 2, 1)), Err(Error::NotOnSigma(_))));
        let w: PhiWord = "110010".parse().unwrap();
        assert_eq!(phi_word(&w, &t(1, 1, 0)).unwrap(), t(8, 3, 2));
        assert_eq!(phi_word(&w, &t(2, 1, 1)).unwrap(), t(15, 5, 4));
        assert_eq!(phi_word(&PhiWord::empty(), &t(7, 3, 1)).unwrap(), t(7, 3, 1));
    }

    #[test]
    fn rational_sequences() {
        let (s, xi, k) = triangle_sequence_rational(&t(54, 19, 14));
        assert_eq!((s.to_string(), xi, k), ("[2,0,1,1]".into(), Frac::of(2, 5), NodeKind::Interior));
        let (s, xi, k) = triangle_sequence_rational(&t(2, 1, 1));
        assert_eq!((s.to_string(), xi, k), ("[1]".into(), Frac::of(1, 2), NodeKind::Sigma));
        let (s, xi, k) = triangle_sequence_rational(&t(5, 2, 0));
        assert_eq!((s.to_string(), xi, k), ("[]".into(), Frac::of(2, 5), NodeKind::Lambda));
        let (s, _, _) = triangle_sequence_rational(&t(5, 2, 2));
        assert_eq!(s.to_string(), "[1,0]");
        let (s, xi, _) = triangle_sequence_rational(&t(3, 3, 1));
        assert_eq!((s.to_string(), xi), ("[0]".into(), Frac::of(1, 3)));
    }

    #[test]
    fn real_sequences() {
        let y: RealScalar = "poly:-1,2,1;iv:0,1".parse().unwrap();
        let pair = RealPair::new(RealScalar::Rational(rat(1, 2)), y).unwrap();
        let e = triangle_sequence_real(&pair, 10, &Budget::default()).unwrap();
        assert_eq!(e.seq.to_string(), "[1,1]");
        let r = e.remainder_enclosure(64).unwrap();
        let want = (2f64.sqrt() - 1.0) / 2.0;
        let (lo, hi) = r.to_f64();
        assert!(lo <= want + 1e-15 && hi >= want - 1e-15 && hi - lo < 1e-15);
        let xi = e.remainder_scalar().unwrap();
        assert!(matches!(xi, RealScalar::Algebraic(_)));

        let fp = RealPair::fixed_point(3).unwrap();
        let e = triangle_sequence_real(&fp, 12, &Budget::default()).unwrap();
        assert_eq!(e.seq.to_string(), "[3,3,3,3,3,3,3,3,3,3,3,3,...]");

        let rp = RealPair::rational(rat(19, 54), rat(14, 54));
        let e = triangle_sequence_real(&rp, 10, &Budget::default()).unwrap();
        assert_eq!(e.seq, triangle_sequence_rational(&t(54, 19, 14)).0);
    }

    #[test]
    fn decimal_input_runs_out() {
        // sqrt2 - 1 to 7 places, with y so close to 1 - 2x that the digit is undecidable
        let x = RealScalar::decimal("0.5", 16).unwrap();
        let y = RealScalar::decimal("0.25", 16).unwrap();
        let p = RealPair::new(x, y).unwrap();
        let e = triangle_sequence_real(&p, 3, &Budget::default());
        assert!(matches!(e, Err(Error::AmbiguousBoundary { digit: 0, .. })));
    }

    #[test]
    fn vertex_examples() {
        let x = vertex_recurrence(&ints(&[1]));
        assert_eq!(x[3], Vec3::new(2, 1, 1));
        assert_eq!(vertex_recurrence(&[]).len(), 3);
        let x = vertex_recurrence(&ints(&[2, 0, 1, 1]));
        assert_eq!(x[5], Vec3::new(8, 3, 2));
        assert_eq!(x[6], Vec3::new(15, 5, 4));
        assert_eq!(nested_triangle(&ints(&[1])), (t(1, 1, 0), t(2, 1, 1), t(3, 1, 1)));
        assert_eq!(nested_triangle(&ints(&[0])), (t(1, 1, 0), t(1, 1, 1), t(2, 1, 1)));
    }

    #[test]
    fn lambda_formulas_agree() {
        let d = ints(&[1, 2, 3, 5, 7, 11, 13, 0, 4]);
        let l = lambda_seq(&d);
        let o = one_minus_lambda(&d);
        for (a, b) in l.iter().zip(&o) {
            assert_eq!(Rat::one() - a, *b);
        }
        assert_eq!(l[6], Rat::one());
        let ones = ints(&[1, 1, 1]);
        // q_{-2} = 1, q_0 = 2, q_1 = 1 + 2 + 1 = 4
        assert_eq!(lambda_seq(&ones)[0], rat(3, 4));
    }
}
