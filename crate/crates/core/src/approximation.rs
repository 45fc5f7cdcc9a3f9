//! Approximating sequences of real pairs by tree nodes, and the speed of
//! those approximations.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::coding::{apply_move, matrix_of, representation_of, representation_of_word, Anchor, Move, PairMatrix, Representation, Word};
use crate::error::{Error, Result};
use crate::exact_core::{canonicalize, Int, Mat3, Rat, Triple, Vec3};
use crate::farey1d::{cf_eval, convergents, fmt_digits, parse_digit_list, path_runs, Cf, Lr};
use crate::triangle_dynamics::{m0, m1, triangle_sequence_real, NodeKind, PhiWord, TriangleSeq};
use crate::verified_reals::{
    dyadic_to_sci, floor_ratio, Budget, Form, Interval, Poly, QuadSurd, RealPair, RealScalar,
};

/// A source of digits, finite or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigitStream {
    /// 1, 2, 3, 5, 7, 11, ...
    Primes,
    /// 2^(2^k) for k = 0, 1, 2, ...
    DoubleExponential,
    Periodic { pre: Vec<Int>, period: Vec<Int> },
    Finite(Vec<Int>),
}

/// Largest k for which 2^(2^k) is produced.
const DEXP_MAX: u32 = 20;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl DigitStream {
    pub fn constant(d: i64) -> DigitStream {
        DigitStream::Periodic { pre: vec![], period: vec![Int::from(d)] }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, DigitStream::Finite(_))
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Int>> {
        match self.clone() {
            DigitStream::Primes => {
                Box::new(std::iter::once(Int::one()).chain((2u64..).filter(|n| is_prime(*n)).map(Int::from)))
            }
            DigitStream::DoubleExponential => Box::new((0..=DEXP_MAX).map(|k| Int::one() << (1usize << k))),
            DigitStream::Periodic { pre, period } => {
                if period.is_empty() {
                    Box::new(pre.into_iter())
                } else {
                    Box::new(pre.into_iter().chain(period.into_iter().cycle()))
                }
            }
            DigitStream::Finite(d) => Box::new(d.into_iter()),
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Int> {
        self.iter().take(n).collect()
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitStream::Primes => f.write_str("primes"),
            DigitStream::DoubleExponential => f.write_str("dexp"),
            DigitStream::Finite(d) => f.write_str(&fmt_digits(d)),
            DigitStream::Periodic { pre, period } => {
                let p: Vec<String> = period.iter().map(|a| a.to_string()).collect();
                if pre.is_empty() {
                    write!(f, "[{}]*", p.join(","))
                } else {
                    let q: Vec<String> = pre.iter().map(|a| a.to_string()).collect();
                    write!(f, "[{}|{}]*", q.join(","), p.join(","))
                }
            }
        }
    }
}

impl FromStr for DigitStream {
    type Err = Error;

    /// "primes", "dexp", "[a,b,c]", "[a,b]*" or "[p,q|a,b]*".
    fn from_str(s: &str) -> Result<DigitStream> {
        let t = s.trim();
        match t {
            "primes" => return Ok(DigitStream::Primes),
            "dexp" => return Ok(DigitStream::DoubleExponential),
            _ => {}
        }
        if let Some(body) = t.strip_suffix('*') {
            let inner = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']'));
            let inner = inner.ok_or_else(|| Error::Parse(format!("bad periodic digits '{}'", s)))?;
            let (pre, period) = match inner.split_once('|') {
                Some((a, b)) => (parse_digit_list(&format!("[{}]", a))?, parse_digit_list(&format!("[{}]", b))?),
                None => (vec![], parse_digit_list(&format!("[{}]", inner))?),
            };
            if period.is_empty() {
                return Err(Error::Parse("empty period".into()));
            }
            return Ok(DigitStream::Periodic { pre, period });
        }
        Ok(DigitStream::Finite(parse_digit_list(t)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ApproximationTarget {
    /// Finite triangle sequence ending in a positive digit, followed by
    /// the continued fraction of the remainder.
    FiniteTs { tseq: Vec<Int>, cf: DigitStream },
    ConvergentTs(DigitStream),
    /// A point on a segment of pairs sharing a non-convergent sequence.
    NonConvergent { digits: DigitStream, pair: RealPair },
    PeriodicD { d: u64, seed: Triple },
}

impl ApproximationTarget {
    /// "TS;CF" where CF may be a periodic stream such as "[4,1]*".
    pub fn parse_repr(s: &str) -> Result<ApproximationTarget> {
        let (ts, cf) = s.split_once(';').ok_or_else(|| Error::Parse(format!("expected 'TS;CF', got '{}'", s)))?;
        let tseq = parse_digit_list(ts)?;
        let cf: DigitStream = cf.parse()?;
        if tseq.last().is_none_or(|d| d.is_zero()) {
            return Err(Error::MalformedRepresentation(format!("'{}': sequence must end with a positive digit", ts)));
        }
        if cf.prefix(64).iter().any(|a| !a.is_positive()) {
            return Err(Error::MalformedRepresentation("continued fraction digits must be >= 1".into()));
        }
        Ok(ApproximationTarget::FiniteTs { tseq, cf })
    }

    pub fn periodic(d: u64) -> ApproximationTarget {
        ApproximationTarget::PeriodicD { d, seed: Triple::of(2, 1, 0) }
    }
}

/// Lazy word over {L, R, I}.
pub struct WordStream {
    runs: Box<dyn Iterator<Item = (Move, Int)>>,
    cur: Option<(Move, Int)>,
}

impl Iterator for WordStream {
    type Item = Move;
    fn next(&mut self) -> Option<Move> {
        loop {
            if let Some((m, n)) = &mut self.cur {
                if n.is_positive() {
                    *n -= 1u32;
                    return Some(*m);
                }
            }
            self.cur = Some(self.runs.next()?);
        }
    }
}

impl WordStream {
    pub fn prefix(self, n: usize) -> Word {
        Word(self.take(n).collect())
    }
}

fn lr(c: Lr) -> Move {
    if c == Lr::L {
        Move::L
    } else {
        Move::R
    }
}

pub fn approximation_word(target: &ApproximationTarget) -> Result<WordStream> {
    let runs: Box<dyn Iterator<Item = (Move, Int)>> = match target {
        ApproximationTarget::FiniteTs { tseq, cf } => {
            let (last, head) = tseq.split_last().ok_or_else(|| Error::MalformedRepresentation("empty sequence".into()))?;
            let mut h: Vec<(Move, Int)> = Vec::new();
            for a in head {
                h.push((Move::L, a.clone()));
                h.push((Move::I, Int::one()));
            }
            h.push((Move::L, last - 1u32));
            h.push((Move::I, Int::one()));
            let tail: Box<dyn Iterator<Item = (Move, Int)>> = match cf {
                DigitStream::Finite(d) => Box::new(path_runs(d).into_iter().map(|(c, n)| (lr(c), n))),
                s => Box::new(s.iter().enumerate().map(|(i, a)| {
                    let c = if i % 2 == 0 { Move::L } else { Move::R };
                    (c, if i == 0 { a - 1u32 } else { a })
                })),
            };
            Box::new(h.into_iter().chain(tail))
        }
        ApproximationTarget::ConvergentTs(s) => {
            Box::new(s.iter().flat_map(|a| [(Move::L, a), (Move::I, Int::one())]))
        }
        _ => return Err(Error::Unsupported("only finite and convergent sequences have an approximation word".into())),
    };
    Ok(WordStream { runs, cur: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximant {
    pub j: usize,
    pub word: Word,
    pub matrix: PairMatrix,
    pub triple: Triple,
    pub representation: Representation,
}

/// Rows j = 0 ..= j_max (fewer if the word is finite).
pub fn approximants(target: &ApproximationTarget, j_max: usize) -> Result<Vec<Approximant>> {
    if let ApproximationTarget::PeriodicD { d, seed } = target {
        return Ok(periodic_approximants(*d, j_max, seed)
            .into_iter()
            .enumerate()
            .map(|(j, t)| Approximant {
                j,
                word: Word::default(),
                matrix: matrix_of(&t).unwrap_or(PairMatrix(Mat3::identity())),
                representation: representation_of(&t),
                triple: t,
            })
            .collect());
    }
    let mut stream = approximation_word(target)?;
    let mut m = matrix_of(&Anchor::Root.triple())?;
    let mut word = Word::default();
    let mut out = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        out.push(Approximant {
            j,
            word: word.clone(),
            matrix: m.clone(),
            triple: m.pair(),
            representation: representation_of_word(&word)?,
        });
        match stream.next() {
            Some(mv) => {
                m = apply_move(&m, mv);
                word.0.push(mv);
            }
            None => break,
        }
    }
    Ok(out)
}

/// `M1^d M0`.
pub fn md(d: &Int) -> Mat3 {
    m1_pow(d).mul(&m0())
}

fn m1_pow(a: &Int) -> Mat3 {
    let mut m = Mat3::identity();
    m.0[0][2] = a.clone();
    m
}

/// `M_{1^{a0} 0 ... 1^{ak} 0}` without spelling out the runs.
pub fn word_matrix(digits: &[Int]) -> Mat3 {
    digits.iter().fold(Mat3::identity(), |acc, a| acc.mul(&md(a)))
}

pub fn m0_m1() -> (Mat3, Mat3) {
    (m0(), m1())
}

/// First row of M dotted with (q, p, r): the unreduced denominator.
pub fn denominator_of_image(m: &Mat3, t: &Triple) -> Int {
    m.row(0).dot(&t.as_vec3())
}

/// `phi_w(1/2, 0)` for `w = 1^{a0} 0 ... 1^{ak} 0`: a rational point whose
/// triangle sequence is exactly the given digits.
pub fn rational_standin(digits: &[Int]) -> Triple {
    canonicalize(&word_matrix(digits).apply(&Vec3::new(2, 1, 0))).expect("image of (1/2,0)")
}

/// Rows after the digits `d0 .. dj`: forms (w0, w1, w2) in (1, x, y).
pub fn forms_after(digits: &[Int]) -> Mat3 {
    let mut f = Mat3::identity();
    for k in digits {
        let r = f.0.clone();
        let new2: Form = [
            &r[0][0] - &r[1][0] - k * &r[2][0],
            &r[0][1] - &r[1][1] - k * &r[2][1],
            &r[0][2] - &r[1][2] - k * &r[2][2],
        ];
        f = Mat3([r[1].clone(), r[2].clone(), new2]);
    }
    f
}

/// Continued fraction digits of `num/den` evaluated at the pair, certified
/// one by one; stops early when the value is exactly rational.
pub fn cf_digits_forms(pair: &RealPair, num: &Form, den: &Form, n: usize, budget: &Budget) -> Result<Vec<Int>> {
    let mut p = pair.clone();
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut out = Vec::new();
    while out.len() < n {
        if p.form_is_zero(&a) == Some(true) {
            break;
        }
        let k = floor_ratio(&mut p, &b, &a, budget).map_err(|u| Error::AmbiguousBoundary { digit: out.len(), bits: u.bits })?;
        let rem: Form = [&b[0] - &k * &a[0], &b[1] - &k * &a[1], &b[2] - &k * &a[2]];
        b = a;
        a = rem;
        out.push(k);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct NonConvergentRow {
    pub j: usize,
    pub representation: Representation,
    pub triple: Triple,
    /// x coordinate of the (j+1)-th iterate.
    pub xi: Interval,
    pub xi_exact: Option<Rat>,
    pub err_alpha: Interval,
    pub err_beta: Interval,
}

/// Row j: digits `a0 .. aj`, the remainder xi after them, its continued
/// fraction cut to j+1 digits, and the image of that convergent on y = 0.
pub fn approximants_nonconvergent(pair: &RealPair, j_max: usize, budget: &Budget, bits: u64) -> Result<Vec<NonConvergentRow>> {
    let e = triangle_sequence_real(pair, j_max + 1, budget)?;
    let digits = e.seq.digits.clone();
    let mut rows = Vec::new();
    for j in 0..digits.len().min(j_max + 1) {
        let pre = &digits[..=j];
        let f = forms_after(pre);
        let (num, den) = (f.0[1].clone(), f.0[0].clone());
        let cfd = cf_digits_forms(pair, &num, &den, j + 1, budget)?;
        let cf = Cf::normalized(cfd);
        let c = cf_eval(&cf);
        let v = word_matrix(pre).apply(&Vec3 { q: c.q().clone(), p: c.p().clone(), r: Int::zero() });
        let triple = canonicalize(&v)?;
        let xi = pair.eval_form(&num, bits)?.div(&pair.eval_form(&den, bits)?, bits)?;
        let xi_exact = pair.as_rational().map(|(x, y)| {
            let ev = |w: &Form| Rat::from_integer(w[0].clone()) + Rat::from_integer(w[1].clone()) * &x + Rat::from_integer(w[2].clone()) * &y;
            ev(&num) / ev(&den)
        });
        let (err_alpha, err_beta) = coord_errors(pair, &identity_coords(), &v, bits)?;
        rows.push(NonConvergentRow {
            j,
            representation: Representation { tseq: TriangleSeq::complete(pre.to_vec()), cf, kind: NodeKind::Interior },
            triple,
            xi,
            xi_exact,
            err_alpha,
            err_beta,
        });
    }
    Ok(rows)
}

/// Coordinates (q, p, r) of the target as forms in (1, x, y).
type Coords = [Form; 3];

fn ints(v: [i64; 3]) -> Form {
    v.map(Int::from)
}

fn identity_coords() -> Coords {
    [ints([1, 0, 0]), ints([0, 1, 0]), ints([0, 0, 1])]
}

/// `|x - m/s|` and `|y - n/s|` for the point with coordinates `c` and the
/// approximant `v = (s, m, n)`; exactly zero when the difference vanishes.
fn coord_errors(pair: &RealPair, c: &Coords, v: &Vec3, bits: u64) -> Result<(Interval, Interval)> {
    let one = |i: usize, num: &Int| -> Result<Interval> {
        // s * c_i - num * c_0, divided by s * c_0
        let f: Form = [
            &v.q * &c[i][0] - num * &c[0][0],
            &v.q * &c[i][1] - num * &c[0][1],
            &v.q * &c[i][2] - num * &c[0][2],
        ];
        if pair.form_is_zero(&f) == Some(true) {
            return Ok(Interval::from_i64(0));
        }
        let d = pair.eval_form(&c[0], bits)?.mul_int(&v.q);
        Ok(pair.eval_form(&f, bits)?.div(&d, bits)?.abs())
    };
    Ok((one(1, &v.p)?, one(2, &v.r)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorRow {
    pub k: usize,
    pub s: Int,
    pub m: Int,
    pub n: Int,
    pub err_alpha: Interval,
    pub err_beta: Interval,
    /// `s^eta |alpha - m/s| |beta - n/s|`
    pub product: Interval,
}

pub const ERROR_CSV_HEADER: [&str; 10] =
    ["k", "s", "m", "n", "err_alpha_lo", "err_alpha_hi", "err_beta_lo", "err_beta_hi", "product_lo", "product_hi"];

fn sci_pair(iv: &Interval) -> (String, String) {
    (dyadic_to_sci(iv.lo(), 6, false), dyadic_to_sci(iv.hi(), 6, true))
}

impl ErrorRow {
    pub fn fields(&self) -> Vec<String> {
        let (a0, a1) = sci_pair(&self.err_alpha);
        let (b0, b1) = sci_pair(&self.err_beta);
        let (p0, p1) = sci_pair(&self.product);
        vec![self.k.to_string(), self.s.to_string(), self.m.to_string(), self.n.to_string(), a0, a1, b0, b1, p0, p1]
    }
}

fn error_row(pair: &RealPair, c: &Coords, k: usize, v: &Vec3, eta: &Rat, bits: u64) -> Result<ErrorRow> {
    let (ea, eb) = coord_errors(pair, c, v, bits)?;
    let prod = ea.mul(&eb);
    let product = if prod.hi().is_zero() {
        prod
    } else {
        Interval::from_int(&v.q).powf(&Interval::from_rat(eta, bits + 8), bits + 8)?.mul(&prod).round_out(bits)
    };
    Ok(ErrorRow { k, s: v.q.clone(), m: v.p.clone(), n: v.r.clone(), err_alpha: ea, err_beta: eb, product })
}

/// Rows j = 1 ..= j_max for the point `phi_w(xi, 0)` and the approximants
/// `phi_w(p_j/q_j, 0)` built from the convergents of xi.
pub fn finite_ts_speed(w: &PhiWord, xi: &RealScalar, j_max: usize, eta: &Rat, bits: u64) -> Result<Vec<ErrorRow>> {
    if xi.as_rational().is_some() {
        return Err(Error::Unsupported("xi is rational, so its convergents stop".into()));
    }
    let mut pair = RealPair::new(xi.clone(), RealScalar::Rational(Rat::zero()))?;
    pair.tighten(bits + 16);
    let m = w.matrix()?;
    let c: Coords = [m.0[0].clone(), m.0[1].clone(), m.0[2].clone()];
    let budget = Budget { start_bits: 64, bits, max_bits: bits.max(1 << 12) };
    let digits = cf_digits_forms(&pair, &ints([0, 1, 0]), &ints([1, 0, 0]), j_max, &budget)?;
    convergents(&digits)
        .iter()
        .enumerate()
        .map(|(i, (p, q))| {
            let v = m.apply(&Vec3 { q: q.clone(), p: p.clone(), r: Int::zero() });
            error_row(&pair, &c, i + 1, &v, eta, bits)
        })
        .collect()
}

/// `M_d^k seed` for k = 0 ..= k_max, canonicalized.
pub fn periodic_approximants(d: u64, k_max: usize, seed: &Triple) -> Vec<Triple> {
    periodic_vectors(d, k_max, seed).iter().map(|v| canonicalize(v).expect("stays in the triangle")).collect()
}

fn periodic_vectors(d: u64, k_max: usize, seed: &Triple) -> Vec<Vec3> {
    let m = md(&Int::from(d));
    let mut v = seed.as_vec3();
    let mut out = vec![v.clone()];
    for _ in 0..k_max {
        v = m.apply(&v);
        out.push(v.clone());
    }
    out
}

pub fn periodic_speed(d: u64, eta: &Rat, k_max: usize, seed: &Triple, bits: u64) -> Result<Vec<ErrorRow>> {
    let mut pair = RealPair::fixed_point(d)?;
    pair.tighten(bits + 16);
    let c = identity_coords();
    periodic_vectors(d, k_max, seed)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| error_row(&pair, &c, k, v, eta, bits))
        .collect()
}

/// Value of a periodic (possibly preperiodic) continued fraction.
pub fn cf_scalar(s: &DigitStream) -> Result<RealScalar> {
    match s {
        DigitStream::Finite(d) => Ok(RealScalar::Rational(cf_eval(&Cf::normalized(d.clone())).to_rat())),
        DigitStream::Periodic { pre, period } => {
            // x -> 1/(a + x) is [[0,1],[1,a]]
            let mat = |ds: &[Int]| {
                ds.iter().fold([[Int::one(), Int::zero()], [Int::zero(), Int::one()]], |m, a| {
                    [
                        [m[0][1].clone(), &m[0][0] + a * &m[0][1]],
                        [m[1][1].clone(), &m[1][0] + a * &m[1][1]],
                    ]
                })
            };
            let a = mat(period);
            let poly = Poly::new(vec![-a[0][1].clone(), &a[1][1] - &a[0][0], a[1][0].clone()]);
            let y = RealScalar::algebraic(poly, Rat::zero(), Rat::one())?;
            if pre.is_empty() {
                return Ok(y);
            }
            let b = mat(pre);
            y.mobius(&b[0][1], &b[0][0], &b[1][1], &b[1][0])
        }
        _ => Err(Error::Unsupported(format!("no closed form for the digits {}", s))),
    }
}

pub fn speed_table(target: &ApproximationTarget, eta: &Rat, steps: usize, bits: u64) -> Result<Vec<ErrorRow>> {
    match target {
        ApproximationTarget::PeriodicD { d, seed } => periodic_speed(*d, eta, steps, seed, bits),
        ApproximationTarget::FiniteTs { tseq, cf } => {
            let xi = cf_scalar(cf)?;
            finite_ts_speed(&PhiWord::from_digits(tseq)?, &xi, steps, eta, bits)
        }
        _ => Err(Error::Unsupported("speed tables need a finite or periodic target".into())),
    }
}

fn cubic(d: u64) -> Poly {
    Poly::new(vec![Int::from(-1), Int::one(), Int::from(d), Int::one()])
}

/// Roots of `t^3 + d t^2 + t - 1` and the derived eigenvalues.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub d: u64,
    pub bits: u64,
    /// Root in (0, 1).
    pub alpha: RealScalar,
    /// The two negative roots, alpha1 < alpha2.
    pub alpha1: RealScalar,
    pub alpha2: RealScalar,
    pub h: Interval,
    /// `1/alpha2, 1/alpha1, 1/alpha`
    pub lambda: [Interval; 3],
}

impl SpectralData {
    pub fn alpha_iv(&self) -> Result<Interval> {
        self.alpha.enclose(self.bits)
    }

    /// `lambda3 > |lambda1| >= 1 > |lambda2|`, decided on the enclosures.
    pub fn ordering_certified(&self) -> bool {
        let [l1, l2, l3] = &self.lambda;
        let one = Interval::from_i64(1);
        let a1 = l1.abs();
        l3.sub(&a1).is_positive() && a1.lo() >= one.lo() && one.sub(&l2.abs()).is_positive()
    }

    /// `(-(d+alpha) -+ h)/2`.
    pub fn alpha12_formula(&self) -> Result<(Interval, Interval)> {
        let s = self.alpha_iv()?.add(&Interval::from_i64(self.d as i64)).neg();
        Ok((s.sub(&self.h).half(), s.add(&self.h).half()))
    }
}

trait Half {
    fn half(&self) -> Interval;
}

impl Half for Interval {
    fn half(&self) -> Interval {
        Interval::new(self.lo().half(), self.hi().half())
    }
}

pub fn spectral(d: u64, bits: u64) -> Result<SpectralData> {
    if d < 3 {
        return Err(Error::Unsupported(format!("d = {} < 3", d)));
    }
    let p = cubic(d);
    let alpha = RealScalar::algebraic(p.clone(), Rat::zero(), Rat::one())?.tightened(bits + 16);
    let di = d as i64;
    let (alpha1, alpha2) = if d == 3 {
        // t^3 + 3t^2 + t - 1 = (t + 1)(t^2 + 2t - 1)
        (RealScalar::algebraic(p, Rat::from_integer((-di).into()), Rat::new((-3).into(), 2.into()))?, RealScalar::Rational(-Rat::one()))
    } else {
        (
            RealScalar::algebraic(p.clone(), Rat::from_integer((-di).into()), -Rat::one())?,
            RealScalar::algebraic(p, -Rat::one(), Rat::zero())?,
        )
    };
    let (alpha1, alpha2) = (alpha1.tightened(bits + 16), alpha2.tightened(bits + 16));
    let w = bits + 16;
    let a = alpha.enclose(w)?;
    let da = a.add(&Interval::from_i64(di));
    let four_over = Interval::from_i64(4).div(&a, w)?;
    let h = da.sqr().sub(&four_over).sqrt(w)?;
    let lambda = [
        alpha2.enclose(w)?.recip(w)?,
        alpha1.enclose(w)?.recip(w)?,
        a.recip(w)?,
    ];
    Ok(SpectralData { d, bits, alpha, alpha1, alpha2, h, lambda })
}

/// The five seed coefficients `(f1, f2, g1, g2, g3)` at (q, p, r).
pub fn seed_coefficients(sp: &SpectralData, seed: &Triple, bits: u64) -> Result<[Interval; 5]> {
    let a = sp.alpha.enclose(bits)?;
    let h = &sp.h;
    let d = Interval::from_i64(sp.d as i64);
    let n = |x: i64| Interval::from_i64(x);
    let (q, p, r) = (Interval::from_int(seed.q()), Interval::from_int(seed.p()), Interval::from_int(seed.r()));
    let a2 = a.sqr();
    let d3a = d.add(&a.mul_int(&Int::from(3)));
    let common = n(1).add(&a2.mul(&d.add(&a.mul_int(&Int::from(2))))).div(&a.mul_int(&Int::from(4)), bits)?;
    let pre1 = h.mul(&d3a.add(h)).mul(&common);
    let pre2 = h.mul(&d3a.sub(h)).mul(&common).neg();
    let br = |sg: i64| -> Interval {
        let hs = h.mul_int(&Int::from(sg));
        let tq = n(3).sub(&a).add(&a2.mul(&hs));
        let tp = n(-2).sub(&d.mul(&a).mul_int(&Int::from(2))).sub(&a.mul(&hs).mul_int(&Int::from(2)));
        let tr = a.mul_int(&Int::from(-3)).sub(&d).add(&hs);
        q.mul(&tq).add(&p.mul(&tp)).add(&r.mul(&tr))
    };
    let f1 = pre1.mul(&br(1));
    let f2 = pre2.mul(&br(-1));
    let g = |sg: i64| -> Interval {
        let hs = h.mul_int(&Int::from(sg));
        let lead = d3a.add(&hs).half().mul_int(&Int::from(sg));
        let tq = a.neg().mul(&d.add(&a).add(&hs)).half();
        let tp = d.sub(&a).add(&hs).half();
        lead.mul(&q.mul(&tq).add(&p.mul(&tp)).add(&r))
    };
    let g1 = g(1);
    let g2 = g(-1);
    let g3 = h.mul(&q.div(&a, bits)?.add(&p.mul(&d.add(&a))).add(&r)).neg();
    Ok([f1, f2, g1, g2, g3])
}

/// `(pa(k), pb(k))` before the constant factor.
fn predicted_shape(sp: &SpectralData, co: &[Interval; 5], k: u32, bits: u64) -> Result<(Interval, Interval)> {
    let [f1, f2, g1, g2, g3] = co;
    let [l1, l2, l3] = &sp.lambda;
    let (p1, p2, p3) = (l1.powi(k), l2.powi(k), l3.powi(k));
    let den = g1.mul(&p1).add(&g2.mul(&p2)).add(&g3.mul(&p3));
    let a = sp.alpha.enclose(bits)?;
    let d = Interval::from_i64(sp.d as i64);
    let num_a = f1.mul(&p1).add(&f2.mul(&p2));
    let w1 = a.sub(&d).add(&sp.h);
    let w2 = a.sub(&d).sub(&sp.h);
    let num_b = w1.mul(f1).mul(&p1).add(&w2.mul(f2).mul(&p2)).half();
    Ok((num_a.div(&den, bits)?, num_b.div(&den, bits)?))
}

/// Signed `(alpha - m_k/s_k, beta - n_k/s_k)` for the periodic approximants.
pub fn exact_difference(d: u64, k: usize, seed: &Triple, bits: u64) -> Result<(Interval, Interval)> {
    let pair = RealPair::fixed_point(d)?;
    let v = periodic_vectors(d, k, seed).pop().expect("k+1 vectors");
    let a = pair.x.enclose(bits)?;
    let b = pair.y.enclose(bits)?;
    let sq = Interval::from_int(&v.q);
    Ok((
        a.sub(&Interval::from_int(&v.p).div(&sq, bits)?),
        b.sub(&Interval::from_int(&v.r).div(&sq, bits)?),
    ))
}

/// Predicted differences at step k with the constant fitted at k = 1.
pub fn cubic_error_predicted(d: u64, k: u32, seed: &Triple, bits: u64) -> Result<(Interval, Interval)> {
    let w = bits + 32;
    let sp = spectral(d, w)?;
    let co = seed_coefficients(&sp, seed, w)?;
    let (pa1, _) = predicted_shape(&sp, &co, 1, w)?;
    let (e1, _) = exact_difference(d, 1, seed, w)?;
    let c = e1.div(&pa1, w)?;
    let (pa, pb) = predicted_shape(&sp, &co, k, w)?;
    Ok((c.mul(&pa).round_out(bits), c.mul(&pb).round_out(bits)))
}

/// The first seed coefficient for d = 3, exactly, in Q(sqrt 2).
pub fn f1_exact_d3(seed: &Triple) -> QuadSurd {
    let two = Int::from(2);
    let q = |a: i64, b: i64| QuadSurd::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()), two.clone());
    let c = |x: &Int| QuadSurd::rat(Rat::from_integer(x.clone()), &two);
    let alpha = q(-1, 1);
    let h = q(0, 1);
    let d = q(3, 0);
    let a2 = alpha.mul(&alpha);
    let d3a = d.add(&alpha.mul(&q(3, 0)));
    let common = q(1, 0).add(&a2.mul(&d.add(&alpha.mul(&q(2, 0))))).div(&alpha.mul(&q(4, 0))).expect("alpha != 0");
    let pre = h.mul(&d3a.add(&h)).mul(&common);
    let tq = q(3, 0).sub(&alpha).add(&a2.mul(&h));
    let tp = q(-2, 0).sub(&d.mul(&alpha).mul(&q(2, 0))).sub(&alpha.mul(&h).mul(&q(2, 0)));
    let tr = alpha.mul(&q(-3, 0)).sub(&d).add(&h);
    let br = c(seed.q()).mul(&tq).add(&c(seed.p()).mul(&tp)).add(&c(seed.r()).mul(&tr));
    pre.mul(&br)
}

#[derive(Clone, Debug)]
pub struct ExponentBound {
    pub exact: Option<Rat>,
    pub enclosure: Interval,
}

/// 4 for d = 3; `2 (1 - ln|lambda1| / ln lambda3)` otherwise.
pub fn exponent_bound(d: u64, bits: u64) -> Result<ExponentBound> {
    if d == 3 {
        let four = Rat::from_integer(4.into());
        return Ok(ExponentBound { enclosure: Interval::from_rat(&four, bits), exact: Some(four) });
    }
    let w = bits + 16;
    let sp = spectral(d, w)?;
    let r = sp.lambda[0].abs().ln(w)?.div(&sp.lambda[2].ln(w)?, w)?;
    let enclosure = Interval::from_i64(1).sub(&r).mul_int(&Int::from(2)).round_out(bits);
    Ok(ExponentBound { exact: None, enclosure })
}

/// Is each interval of the sequence strictly below the previous one?
pub fn strictly_decreasing(v: &[Interval]) -> bool {
    v.windows(2).all(|w| w[1].hi() < w[0].lo())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn ints(d: &[i64]) -> Vec<Int> {
        d.iter().map(|&a| Int::from(a)).collect()
    }

    fn t(q: i64, p: i64, r: i64) -> Triple {
        Triple::of(q, p, r)
    }

    #[test]
    fn streams() {
        assert_eq!(DigitStream::Primes.prefix(6), ints(&[1, 2, 3, 5, 7, 11]));
        assert_eq!(DigitStream::DoubleExponential.prefix(4), ints(&[2, 4, 16, 256]));
        let p: DigitStream = "[4,1]*".parse().unwrap();
        assert_eq!(p.prefix(5), ints(&[4, 1, 4, 1, 4]));
        let q: DigitStream = "[3|4,1]*".parse().unwrap();
        assert_eq!(q.prefix(4), ints(&[3, 4, 1, 4]));
        assert_eq!(q.to_string(), "[3|4,1]*");
    }

    #[test]
    fn words() {
        let tg = ApproximationTarget::parse_repr("[1,1];[4,1]*").unwrap();
        assert_eq!(approximation_word(&tg).unwrap().prefix(14).to_string(), "LIILLLRLLLLRLL");
        let tg = ApproximationTarget::ConvergentTs(DigitStream::Primes);
        assert_eq!(approximation_word(&tg).unwrap().prefix(17).to_string(), "LILLILLLILLLLLILL");
        let tg = ApproximationTarget::parse_repr("[2,0,1,1];[2,2]").unwrap();
        assert_eq!(Word(approximation_word(&tg).unwrap().collect()).to_string(), "LLIILIILR");
    }

    #[test]
    fn finite_table() {
        let tg = ApproximationTarget::parse_repr("[1,1];[4,1]*").unwrap();
        let rows = approximants(&tg, 9).unwrap();
        let want = [(2, 1, 1), (3, 1, 1), (4, 2, 1), (6, 3, 2), (8, 4, 3), (10, 5, 4), (12, 6, 5), (22, 11, 9), (34, 17, 14), (46, 23, 19)];
        for (r, w) in rows.iter().zip(want) {
            assert_eq!(r.triple, t(w.0 / gcd3(w), w.1 / gcd3(w), w.2 / gcd3(w)));
        }
        assert_eq!(rows[7].representation.to_string(), "[1,1];[4,2]");
    }

    fn gcd3(w: (i64, i64, i64)) -> i64 {
        num_integer::gcd(num_integer::gcd(w.0, w.1), w.2)
    }

    #[test]
    fn prime_table() {
        let rows = approximants(&ApproximationTarget::ConvergentTs(DigitStream::Primes), 9).unwrap();
        let got: Vec<Vec3> = rows.iter().map(|r| r.matrix.node()).collect();
        let want = [(2, 1, 1), (3, 1, 1), (4, 2, 1), (5, 3, 1), (6, 4, 1), (8, 5, 2), (10, 6, 3), (12, 7, 4), (14, 8, 5), (19, 11, 6)];
        for (g, w) in got.iter().zip(want) {
            assert_eq!(*g, Vec3::new(w.0, w.1, w.2));
        }
        assert_eq!(rows[9].representation.to_string(), "[1,2,4];[2]");
        assert_eq!(approximants(&ApproximationTarget::ConvergentTs(DigitStream::Primes), 0).unwrap().len(), 1);
    }

    #[test]
    fn denominators() {
        assert_eq!(denominator_of_image(&m0(), &t(2, 1, 0)), Int::from(2));
        assert_eq!(denominator_of_image(&md(&Int::from(3)), &t(2, 1, 0)), Int::from(5));
        assert_eq!(denominator_of_image(&Mat3::identity(), &t(7, 3, 1)), Int::from(7));
        assert_eq!(md(&Int::from(3)), PhiWord::from_digits(&ints(&[3])).unwrap().matrix().unwrap());
    }

    #[test]
    fn periodic_rows() {
        let p = periodic_approximants(3, 2, &t(2, 1, 0));
        assert_eq!(p, vec![t(2, 1, 0), t(5, 2, 1), t(12, 5, 2)]);
        for (k, tr) in periodic_approximants(4, 6, &t(2, 1, 0)).iter().enumerate() {
            let (s, _, _) = crate::triangle_dynamics::triangle_sequence_rational(tr);
            assert!(s.digits.iter().take(k).all(|a| *a == Int::from(4)));
        }
    }

    #[test]
    fn spectral_d3() {
        let sp = spectral(3, 128).unwrap();
        let a = sp.alpha_iv().unwrap();
        let s2m1 = Interval::from_i64(2).sqrt(140).unwrap().sub(&Interval::from_i64(1));
        assert!(a.overlaps(&s2m1));
        assert!(sp.h.overlaps(&Interval::from_i64(2).sqrt(140).unwrap()));
        assert!(sp.lambda[0].contains_rat(&rat(-1, 1)));
        assert!(sp.ordering_certified());
        let (f1a, f2a) = sp.alpha12_formula().unwrap();
        assert!(f1a.overlaps(&sp.alpha1.enclose(128).unwrap()));
        assert!(f2a.overlaps(&sp.alpha2.enclose(128).unwrap()));
        assert!(f1_exact_d3(&t(2, 1, 0)).is_zero());
        assert!(!f1_exact_d3(&t(3, 2, 1)).is_zero());
    }

    #[test]
    fn spectral_d4() {
        let sp = spectral(4, 128).unwrap();
        assert!(sp.ordering_certified());
        let pa = cubic(4).eval_interval(&sp.alpha_iv().unwrap());
        assert!(pa.contains_zero() && pa.width_at_most(120));
        let b = exponent_bound(4, 64).unwrap();
        let (lo, hi) = b.enclosure.to_f64();
        assert!((lo - 1.3434591524958347).abs() < 1e-12 && (hi - 1.3434591524958347).abs() < 1e-12);
        assert_eq!(exponent_bound(3, 64).unwrap().exact, Some(rat(4, 1)));
        for d in 4..=10 {
            let e = exponent_bound(d, 64).unwrap().enclosure;
            assert!(e.hi() < Interval::from_i64(4).lo() && e.is_positive());
        }
    }

    #[test]
    fn formula_matches() {
        for d in [3, 4, 5] {
            for k in [2, 7, 20] {
                let (pa, pb) = cubic_error_predicted(d, k, &t(2, 1, 0), 128).unwrap();
                let (ea, eb) = exact_difference(d, k as usize, &t(2, 1, 0), 128).unwrap();
                assert!(pa.overlaps(&ea) && pb.overlaps(&eb), "d={} k={}", d, k);
            }
            let sp = spectral(d, 128).unwrap();
            let g3 = seed_coefficients(&sp, &t(2, 1, 0), 128).unwrap()[4].clone();
            assert!(g3.is_negative());
        }
    }

    #[test]
    fn cf_scalars() {
        let r2 = Interval::from_i64(2).sqrt(80).unwrap();
        let x = cf_scalar(&"[4,1]*".parse().unwrap()).unwrap();
        let want = r2.sub(&Interval::from_i64(1)).div(&Interval::from_i64(2), 80).unwrap();
        assert!(x.enclose(60).unwrap().overlaps(&want));
        let y = cf_scalar(&"[2]*".parse().unwrap()).unwrap();
        assert!(y.enclose(60).unwrap().overlaps(&r2.sub(&Interval::from_i64(1))));
        let z = cf_scalar(&"[1|2]*".parse().unwrap()).unwrap();
        // 1/(1 + (sqrt2 - 1)) = 1/sqrt2
        assert!(z.enclose(60).unwrap().overlaps(&Interval::from_i64(1).div(&r2, 80).unwrap()));
    }

    #[test]
    fn finite_speed_rows() {
        let xi = cf_scalar(&"[2]*".parse().unwrap()).unwrap();
        let w: PhiWord = "11001010".parse().unwrap();
        let rows = finite_ts_speed(&w, &xi, 12, &rat(39, 10), 256).unwrap();
        let prods: Vec<Interval> = rows[2..].iter().map(|r| r.product.clone()).collect();
        assert!(strictly_decreasing(&prods));
        let w: PhiWord = "110010".parse().unwrap();
        let rows = finite_ts_speed(&w, &xi, 6, &rat(39, 10), 256).unwrap();
        assert!(rows.iter().all(|r| r.err_beta.hi().is_zero() && r.product.hi().is_zero()));
        assert!(finite_ts_speed(&w, &RealScalar::Rational(rat(1, 3)), 4, &rat(2, 1), 64).is_err());
    }

    #[test]
    fn nonconvergent_rows() {
        let tr = rational_standin(&ints(&[2, 4, 16, 256]));
        let pair = RealPair::rational(tr.x(), tr.y());
        let rows = approximants_nonconvergent(&pair, 3, &Budget::default(), 128).unwrap();
        assert_eq!(rows.len(), 4);
        let mut cur = tr.clone();
        for r in &rows {
            cur = crate::triangle_dynamics::triangle_map(&cur).unwrap();
            assert_eq!(r.xi_exact.as_ref().unwrap(), &cur.x());
        }
        assert_eq!(rows[0].representation.tseq, TriangleSeq::complete(ints(&[2])));
        let errs: Vec<Interval> = rows.iter().map(|r| r.err_alpha.add(&r.err_beta)).collect();
        assert!(errs.windows(2).all(|w| w[1].hi() <= w[0].lo()));
    }

    #[test]
    fn periodic_speed_rows() {
        let rows = periodic_speed(4, &rat(1, 1), 10, &t(2, 1, 0), 128).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].s, Int::from(6));
        assert_eq!(ERROR_CSV_HEADER.len(), rows[0].fields().len());
    }
}
