//! One-dimensional Farey machinery: continued fractions, the Farey map and
//! its inverse branches, Stern-Brocot levels, {L,R} coding and 2x2 matrices.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_core::{Int, Mat2, Rat};

/// Reduced fraction in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    p: Int,
    q: Int,
}

impl Frac {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Frac> {
        let (p, q) = (p.into(), q.into());
        if q <= Int::zero() || p < Int::zero() || p > q {
            return Err(Error::FareyUndefined(format!("{}/{} is not a fraction in [0,1]", p, q)));
        }
        let g = p.gcd(&q);
        Ok(Frac { p: p / &g, q: q / &g })
    }

    pub fn of(p: i64, q: i64) -> Frac {
        Frac::new(p, q).expect("fraction in [0,1]")
    }

    pub fn from_rat(x: &Rat) -> Result<Frac> {
        Frac::new(x.numer().clone(), x.denom().clone())
    }

    pub fn p(&self) -> &Int {
        &self.p
    }
    pub fn q(&self) -> &Int {
        &self.q
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.p.clone(), self.q.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p == self.q
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Frac) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Frac {
    fn cmp(&self, o: &Frac) -> std::cmp::Ordering {
        (&self.p * &o.q).cmp(&(&o.p * &self.q))
    }
}

/// Continued fraction of a number in `[0, 1]`. Zero and one have their own
/// tokens so that digit lists always obey the last-digit-above-one rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cf {
    Zero,
    One,
    Digits(Vec<Int>),
}

impl Cf {
    pub fn from_digits(d: &[i64]) -> Cf {
        Cf::Digits(d.iter().map(|&a| Int::from(a)).collect())
    }

    /// Digits with the tokens spelled out as `[0]` and `[1]`.
    pub fn digits(&self) -> Vec<Int> {
        match self {
            Cf::Zero => vec![Int::zero()],
            Cf::One => vec![Int::one()],
            Cf::Digits(d) => d.clone(),
        }
    }

    pub fn digit_sum(&self) -> Int {
        self.digits().iter().sum()
    }

    /// Rewrites a trailing digit 1 into the previous digit, and maps `[1]`
    /// to the token. Values are unchanged.
    pub fn normalized(digits: Vec<Int>) -> Cf {
        let mut d = digits;
        if d.is_empty() {
            return Cf::Zero;
        }
        if d.len() == 1 && d[0].is_one() {
            return Cf::One;
        }
        if d.len() == 1 && d[0].is_zero() {
            return Cf::Zero;
        }
        if d.len() > 1 && d[d.len() - 1].is_one() {
            d.pop();
            let last = d.len() - 1;
            d[last] += 1;
        }
        Cf::Digits(d)
    }
}

impl fmt::Display for Cf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_digits(&self.digits()))
    }
}

pub(crate) fn fmt_digits(d: &[Int]) -> String {
    let s: Vec<String> = d.iter().map(|a| a.to_string()).collect();
    format!("[{}]", s.join(","))
}

/// Parses `[a,b,c]` into digits. An empty list is allowed.
pub(crate) fn parse_digit_list(s: &str) -> Result<Vec<Int>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected '[...]', got '{}'", s)))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|x| Int::from_str(x.trim()).map_err(|_| Error::Parse(format!("bad digit '{}'", x))))
        .collect()
}

impl FromStr for Cf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Cf> {
        let d = parse_digit_list(s)?;
        match d.as_slice() {
            [] => Err(Error::Parse("empty continued fraction".into())),
            [a] if a.is_zero() => Ok(Cf::Zero),
            [a] if a.is_one() => Ok(Cf::One),
            _ => {
                if d.iter().any(|a| *a < Int::one()) {
                    return Err(Error::Parse(format!("continued fraction digits must be >= 1 in '{}'", s)));
                }
                Ok(Cf::Digits(d))
            }
        }
    }
}

pub fn cf_expand(x: &Frac) -> Cf {
    if x.is_zero() {
        return Cf::Zero;
    }
    if x.is_one() {
        return Cf::One;
    }
    let (mut num, mut den) = (x.q.clone(), x.p.clone());
    let mut out = Vec::new();
    while !den.is_zero() {
        let (a, rem) = num.div_rem(&den);
        out.push(a);
        num = den;
        den = rem;
    }
    Cf::Digits(out)
}

pub fn cf_eval(cf: &Cf) -> Frac {
    match cf {
        Cf::Zero => Frac::of(0, 1),
        Cf::One => Frac::of(1, 1),
        Cf::Digits(d) => {
            // value = 1/(a1 + 1/(a2 + ...)), folded from the back
            let (mut p, mut q) = (Int::zero(), Int::one());
            for a in d.iter().rev() {
                let nq = a * &q + &p;
                p = q;
                q = nq;
            }
            Frac::new(p, q).expect("digits >= 1 give a value in (0,1]")
        }
    }
}

/// Convergents `p_j/q_j` of `[a1, ..., an]` for j = 1..n.
pub fn convergents(digits: &[Int]) -> Vec<(Int, Int)> {
    let (mut p0, mut q0) = (Int::one(), Int::zero());
    let (mut p1, mut q1) = (Int::zero(), Int::one());
    let mut out = Vec::with_capacity(digits.len());
    for a in digits {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = p2.clone();
        q1 = q2.clone();
        out.push((p2, q2));
    }
    out
}

pub fn farey_map(x: &Rat) -> Rat {
    let half = Rat::new(Int::one(), Int::from(2));
    let one = Rat::one();
    if *x <= half {
        x / (&one - x)
    } else {
        (&one - x) / x
    }
}

pub fn psi0(x: &Rat) -> Rat {
    x / (Rat::one() + x)
}

pub fn psi1(x: &Rat) -> Rat {
    Rat::one() / (Rat::one() + x)
}

/// The set of Stern-Brocot levels up to `n`, ascending. `n = -1` gives {0, 1}.
pub fn stern_brocot(n: i64) -> Vec<Frac> {
    let mut cur = vec![Frac::of(0, 1), Frac::of(1, 1)];
    for _ in 0..=n {
        let mut next = Vec::with_capacity(2 * cur.len());
        for w in cur.windows(2) {
            next.push(w[0].clone());
            next.push(Frac::new(&w[0].p + &w[1].p, &w[0].q + &w[1].q).unwrap());
        }
        next.push(cur.last().unwrap().clone());
        cur = next;
    }
    cur
}

/// Fractions first appearing at level `n`.
pub fn farey_level(n: i64) -> Vec<Frac> {
    if n < 0 {
        return stern_brocot(-1);
    }
    stern_brocot(n).into_iter().skip(1).step_by(2).collect()
}

fn open_unit(x: &Frac) -> Result<()> {
    if x.is_zero() || x.is_one() {
        return Err(Error::FareyUndefined(format!("{} is an endpoint of [0,1]", x)));
    }
    Ok(())
}

pub fn farey_rank(x: &Frac) -> Result<Int> {
    open_unit(x)?;
    Ok(cf_expand(x).digit_sum() - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lr {
    L,
    R,
}

impl Lr {
    pub fn flip(self) -> Lr {
        match self {
            Lr::L => Lr::R,
            Lr::R => Lr::L,
        }
    }

    fn letter(self) -> char {
        match self {
            Lr::L => 'L',
            Lr::R => 'R',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    None,
    LInf,
    RInf,
    Periodic(Vec<(Lr, Int)>),
}

/// Word over {L, R} as runs, with an optional infinite tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrWord {
    pub runs: Vec<(Lr, Int)>,
    pub tail: Tail,
}

impl LrWord {
    pub fn finite(runs: Vec<(Lr, Int)>) -> LrWord {
        LrWord { runs: merge_runs(runs), tail: Tail::None }
    }

    pub fn len(&self) -> Option<Int> {
        match self.tail {
            Tail::None => Some(self.runs.iter().map(|(_, n)| n.clone()).sum()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty() && self.tail == Tail::None
    }

    /// Letters of the finite part; `None` if a run is too long to spell out.
    pub fn letters(&self) -> Option<Vec<Lr>> {
        let mut out = Vec::new();
        for (c, n) in &self.runs {
            let n = n.to_usize()?;
            out.extend(std::iter::repeat_n(*c, n));
        }
        Some(out)
    }
}

fn merge_runs(runs: Vec<(Lr, Int)>) -> Vec<(Lr, Int)> {
    let mut out: Vec<(Lr, Int)> = Vec::new();
    for (c, n) in runs {
        if n.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((d, m)) if *d == c => *m += n,
            _ => out.push((c, n)),
        }
    }
    out
}

fn fmt_runs(runs: &[(Lr, Int)], compact: bool) -> String {
    let mut s = String::new();
    for (c, n) in runs {
        match n.to_usize() {
            Some(k) if !compact || k == 1 => s.extend(std::iter::repeat_n(c.letter(), k)),
            _ => s.push_str(&format!("{}^{}", c.letter(), n)),
        }
    }
    s
}

impl fmt::Display for LrWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_runs(&self.runs, false))?;
        match &self.tail {
            Tail::None => Ok(()),
            Tail::LInf => f.write_str("L^inf"),
            Tail::RInf => f.write_str("R^inf"),
            Tail::Periodic(b) => write!(f, "({})^inf", fmt_runs(b, true)),
        }
    }
}

fn parse_runs(s: &str) -> Result<Vec<(Lr, Int)>> {
    let mut runs = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = match chars[i] {
            'L' => Lr::L,
            'R' => Lr::R,
            other => return Err(Error::Parse(format!("unexpected '{}' in LR word", other))),
        };
        i += 1;
        let mut n = Int::one();
        if i < chars.len() && chars[i] == '^' {
            let start = i + 1;
            let mut end = start;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            let digits: String = chars[start..end].iter().collect();
            n = Int::from_str(&digits).map_err(|_| Error::Parse(format!("bad exponent in '{}'", s)))?;
            i = end;
        }
        runs.push((c, n));
    }
    Ok(runs)
}

impl FromStr for LrWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<LrWord> {
        let s = s.trim();
        if let Some(open) = s.find('(') {
            let body = &s[open + 1..];
            let block = body
                .strip_suffix(")^inf")
                .ok_or_else(|| Error::Parse(format!("periodic tail must end with ')^inf' in '{}'", s)))?;
            let prefix = parse_runs(&s[..open])?;
            let block = merge_runs(parse_runs(block)?);
            if block.is_empty() {
                return Err(Error::Parse("empty periodic block".into()));
            }
            return Ok(LrWord { runs: merge_runs(prefix), tail: Tail::Periodic(block) });
        }
        for (suffix, tail) in [("L^inf", Tail::LInf), ("R^inf", Tail::RInf)] {
            if let Some(head) = s.strip_suffix(suffix) {
                return Ok(LrWord { runs: merge_runs(parse_runs(head)?), tail });
            }
        }
        Ok(LrWord::finite(parse_runs(s)?))
    }
}

fn l2() -> Mat2 {
    Mat2::from_i64([[1, 0], [1, 1]])
}

fn run_matrix(c: Lr, n: &Int) -> Mat2 {
    let mut m = Mat2::identity();
    match c {
        Lr::L => m.0[1][0] = n.clone(),
        Lr::R => m.0[0][1] = n.clone(),
    }
    m
}

/// Runs of the path from the root 1/2 down to x: L^{a1-1} R^{a2} ... with
/// the last exponent lowered by one.
pub fn path_runs(digits: &[Int]) -> Vec<(Lr, Int)> {
    let n = digits.len();
    let mut runs = Vec::with_capacity(n);
    let mut c = Lr::L;
    for (i, a) in digits.iter().enumerate() {
        let mut e = a.clone();
        if i == 0 {
            e -= 1;
        }
        if i + 1 == n {
            e -= 1;
        }
        runs.push((c, e));
        c = c.flip();
    }
    merge_runs(runs)
}

pub fn farey_path(x: &Frac) -> Result<LrWord> {
    open_unit(x)?;
    Ok(LrWord::finite(path_runs(&cf_expand(x).digits())))
}

pub fn farey_matrix(x: &Frac) -> Result<Mat2> {
    let path = farey_path(x)?;
    let mut m = l2();
    for (c, n) in &path.runs {
        m = m.mul(&run_matrix(*c, n));
    }
    Ok(m)
}

/// `(left, right)` parents of x in the Stern-Brocot tree.
pub fn farey_parents(x: &Frac) -> Result<(Frac, Frac)> {
    let m = farey_matrix(x)?;
    let right = Frac::new(m.0[0][0].clone(), m.0[1][0].clone())?;
    let left = Frac::new(m.0[0][1].clone(), m.0[1][1].clone())?;
    Ok((left, right))
}

/// The infinite coding of a rational: L^{a1} R^{a2} ... then L^inf or R^inf.
pub fn farey_code(x: &Frac) -> LrWord {
    if x.is_zero() {
        return LrWord { runs: vec![], tail: Tail::LInf };
    }
    if x.is_one() {
        return LrWord { runs: vec![], tail: Tail::RInf };
    }
    let d = cf_expand(x).digits();
    let runs = alternating_runs(&d, Lr::L);
    let tail = if d.len().is_multiple_of(2) { Tail::LInf } else { Tail::RInf };
    LrWord { runs: merge_runs(runs), tail }
}

/// The coding of a purely periodic continued fraction `[(b1,...,bm)*]`.
pub fn farey_code_periodic(period: &[Int]) -> Result<LrWord> {
    if period.is_empty() || period.iter().any(|a| *a < Int::one()) {
        return Err(Error::Parse("period digits must be >= 1".into()));
    }
    let mut block = period.to_vec();
    if block.len() % 2 == 1 {
        block.extend_from_slice(period);
    }
    Ok(LrWord { runs: vec![], tail: Tail::Periodic(merge_runs(alternating_runs(&block, Lr::L))) })
}

/// Runs of `farey_code` for the first digits of an infinite expansion.
pub fn farey_code_prefix(digits: &[Int]) -> LrWord {
    LrWord::finite(alternating_runs(digits, Lr::L))
}

fn alternating_runs(d: &[Int], first: Lr) -> Vec<(Lr, Int)> {
    let mut c = first;
    d.iter()
        .map(|a| {
            let r = (c, a.clone());
            c = c.flip();
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    #[test]
    fn cf_examples() {
        assert_eq!(cf_expand(&Frac::of(7, 12)), Cf::from_digits(&[1, 1, 2, 2]));
        assert_eq!(cf_expand(&Frac::of(0, 1)), Cf::Zero);
        assert_eq!(cf_expand(&Frac::of(2, 5)), Cf::from_digits(&[2, 2]));
        assert_eq!(cf_eval(&Cf::from_digits(&[1, 1, 2, 2])), Frac::of(7, 12));
        assert_eq!(cf_eval(&Cf::One), Frac::of(1, 1));
        // [4,1,4] = 1/(4 + 1/(1 + 1/4)) = 5/24
        assert_eq!(cf_eval(&Cf::from_digits(&[4, 1, 4])), Frac::of(5, 24));
        assert_eq!(cf_expand(&Frac::of(5, 24)), Cf::from_digits(&[4, 1, 4]));
    }

    #[test]
    fn cf_text() {
        assert_eq!("[1,1,2,2]".parse::<Cf>().unwrap(), Cf::from_digits(&[1, 1, 2, 2]));
        assert_eq!("[0]".parse::<Cf>().unwrap(), Cf::Zero);
        assert_eq!("[1]".parse::<Cf>().unwrap(), Cf::One);
        assert_eq!(Cf::from_digits(&[2, 2]).to_string(), "[2,2]");
        assert!("[2,0]".parse::<Cf>().is_err());
    }

    #[test]
    fn maps() {
        assert_eq!(farey_map(&rat(1, 3)), rat(1, 2));
        assert_eq!(psi1(&rat(0, 1)), rat(1, 1));
        assert_eq!(psi0(&psi1(&rat(0, 1))), rat(1, 2));
        assert_eq!(psi0(&rat(1, 2)), rat(1, 3));
    }

    #[test]
    fn levels() {
        let f2: Vec<String> = stern_brocot(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(f2, ["0/1", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "1/1"]);
        assert_eq!(farey_level(0), vec![Frac::of(1, 2)]);
        let f6 = stern_brocot(6);
        for w in f6.windows(2) {
            assert_eq!(&w[0].q * &w[1].p - &w[0].p * &w[1].q, Int::one());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(farey_rank(&Frac::of(7, 12)).unwrap(), Int::from(4));
        assert_eq!(farey_rank(&Frac::of(1, 2)).unwrap(), Int::from(0));
        assert_eq!(farey_rank(&Frac::of(1, 5)).unwrap(), Int::from(3));
        assert!(farey_rank(&Frac::of(0, 1)).is_err());
        assert!(farey_level(3).contains(&Frac::of(1, 5)));
    }

    #[test]
    fn matrix_and_path() {
        let x = Frac::of(7, 12);
        assert_eq!(farey_path(&x).unwrap().to_string(), "RLLR");
        assert_eq!(farey_matrix(&x).unwrap(), Mat2::from_i64([[3, 4], [5, 7]]));
        assert_eq!(farey_path(&Frac::of(1, 2)).unwrap().to_string(), "");
        assert_eq!(farey_matrix(&Frac::of(1, 2)).unwrap(), l2());
        assert_eq!(farey_path(&Frac::of(2, 5)).unwrap().to_string(), "LR");
        let m = farey_matrix(&Frac::of(2, 5)).unwrap();
        assert_eq!(&m.0[0][0] + &m.0[0][1], Int::from(2));
        assert_eq!(&m.0[1][0] + &m.0[1][1], Int::from(5));
    }

    #[test]
    fn codes() {
        assert_eq!(farey_code(&Frac::of(0, 1)).to_string(), "L^inf");
        assert_eq!(farey_code(&Frac::of(1, 1)).to_string(), "R^inf");
        assert_eq!(farey_code(&Frac::of(7, 12)).to_string(), "LRLLRRL^inf");
        let p = farey_code_periodic(&[Int::from(4), Int::from(1)]).unwrap();
        assert_eq!(p.to_string(), "(L^4R)^inf");
        assert_eq!("(RL^4)^inf".parse::<LrWord>().unwrap().to_string(), "(RL^4)^inf");
        assert_eq!("LRLLR".parse::<LrWord>().unwrap().to_string(), "LRLLR");
        assert_eq!("RL^inf".parse::<LrWord>().unwrap().tail, Tail::LInf);
    }

    #[test]
    fn parents() {
        assert_eq!(farey_parents(&Frac::of(1, 2)).unwrap(), (Frac::of(0, 1), Frac::of(1, 1)));
        assert_eq!(farey_parents(&Frac::of(7, 12)).unwrap(), (Frac::of(4, 7), Frac::of(3, 5)));
        assert_eq!(farey_parents(&Frac::of(2, 5)).unwrap(), (Frac::of(1, 3), Frac::of(1, 2)));
    }
}
