//! Representations (triangle sequence, continued fraction), the L/R/I word
//! coding with its matrix action, and backimage words.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_core::{canonicalize, mediant, Int, Mat3, Triple, Vec3};
use crate::farey1d::{cf_eval, cf_expand, fmt_digits, parse_digit_list, path_runs, Cf, Frac, Lr};
use crate::triangle_dynamics::{
    classify, phi2, phi_word, small, triangle_sequence_rational, NodeKind, PhiWord, TriangleSeq,
};
use crate::triangular_tree::{parents, segment_word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub tseq: TriangleSeq,
    pub cf: Cf,
    pub kind: NodeKind,
}

impl Representation {
    /// Representation of a pair with an infinite triangle sequence whose
    /// nested triangles shrink to a point.
    pub fn infinite(tseq: TriangleSeq) -> Representation {
        Representation { tseq, cf: Cf::from_digits(&[2]), kind: NodeKind::Interior }
    }

    /// ([m], [m+1]) is shared by a diagonal point and an interior one.
    pub fn is_ambiguous(&self) -> bool {
        self.tseq.complete
            && self.tseq.len() == 1
            && self.cf.digits().len() == 1
            && self.cf.digits()[0] == &self.tseq.digits[0] + 1u32
            && self.tseq.digits[0].is_positive()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.tseq, self.cf)?;
        if self.is_ambiguous() && self.kind == NodeKind::Interior {
            write!(f, ";interior")?;
        }
        Ok(())
    }
}

impl FromStr for Representation {
    type Err = Error;

    /// "TS;CF" with an optional ";kind". Without it the kind is the one a
    /// point with these digits has, preferring the diagonal for ([m],[m+1]).
    fn from_str(s: &str) -> Result<Representation> {
        let parts: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(Error::Parse(format!("expected 'TS;CF', got '{}'", s)));
        }
        let tseq: TriangleSeq = parts[0].parse()?;
        let cfd = parse_digit_list(parts[1])?;
        let cf = cf_token(cfd)?;
        let kind = match parts.get(2) {
            Some(k) => k.parse()?,
            None => infer_kind(&tseq, &cf),
        };
        Ok(Representation { tseq, cf, kind })
    }
}

fn cf_token(d: Vec<Int>) -> Result<Cf> {
    if d.is_empty() {
        return Err(Error::Parse("empty continued fraction".into()));
    }
    if d.len() == 1 && d[0].is_zero() {
        return Ok(Cf::Zero);
    }
    if d.len() == 1 && d[0].is_one() {
        return Ok(Cf::One);
    }
    if d.iter().any(|a| !a.is_positive()) {
        return Err(Error::Parse("continued fraction digits must be >= 1".into()));
    }
    Ok(Cf::Digits(d))
}

fn infer_kind(ts: &TriangleSeq, cf: &Cf) -> NodeKind {
    let token = matches!(cf, Cf::Zero | Cf::One);
    let d = &ts.digits;
    if !ts.complete {
        return NodeKind::Interior;
    }
    match d.len() {
        0 if token => NodeKind::Vertex,
        0 => NodeKind::Lambda,
        1 if d[0].is_zero() && token => NodeKind::Vertex,
        1 if d[0].is_zero() => NodeKind::Upsilon,
        1 if cf.digits().len() == 1 && cf.digits()[0] == &d[0] + 1u32 => NodeKind::Sigma,
        2 if d[1].is_zero() => NodeKind::Sigma,
        _ => NodeKind::Interior,
    }
}

pub fn representation_of(t: &Triple) -> Representation {
    let (tseq, xi, kind) = triangle_sequence_rational(t);
    Representation { tseq, cf: cf_expand(&xi), kind }
}

fn malformed(r: &Representation, why: &str) -> Error {
    Error::MalformedRepresentation(format!("{}: {}", r, why))
}

fn xi_of(r: &Representation) -> Frac {
    cf_eval(&r.cf)
}

pub fn point_of(rep: &Representation) -> Result<Triple> {
    if !rep.tseq.complete {
        return Err(malformed(rep, "infinite representations have no rational point"));
    }
    let xi = xi_of(rep);
    let (a, b) = (xi.p().clone(), xi.q().clone());
    let c = |q: &Int, p: &Int, r: &Int| canonicalize(&Vec3 { q: q.clone(), p: p.clone(), r: r.clone() });
    let zero = Int::zero();
    let t = match rep.kind {
        NodeKind::Vertex if rep.tseq.is_empty() => c(&b, &a, &zero)?,
        NodeKind::Vertex => c(&b, &b, &a)?,
        NodeKind::Lambda => c(&b, &a, &zero)?,
        NodeKind::Upsilon => c(&b, &b, &a)?,
        NodeKind::Sigma => c(&b, &a, &a)?,
        NodeKind::Interior => {
            if rep.tseq.digits.last().is_none_or(|d| d.is_zero()) {
                return Err(malformed(rep, "interior triangle sequence must end with a positive digit"));
            }
            if xi.is_zero() || xi.is_one() {
                return Err(malformed(rep, "interior points need 0 < xi < 1"));
            }
            let w = PhiWord::from_digits(&rep.tseq.digits)?;
            phi_word(&w, &phi2(&c(&b, &a, &a)?)?)?
        }
    };
    let back = representation_of(&t);
    let vertex = |d: &[i64], q: i64, p: i64, r: i64| {
        rep.kind == NodeKind::Vertex && rep.tseq == TriangleSeq::from_i64(d) && t == Triple::of(q, p, r)
    };
    let vertex_ok = vertex(&[], 1, 0, 0) || vertex(&[], 1, 1, 0) || vertex(&[0], 1, 1, 1);
    if back.kind == NodeKind::Vertex {
        if !vertex_ok {
            return Err(malformed(rep, "not the representation of a vertex"));
        }
        return Ok(t);
    }
    if back.tseq != rep.tseq || back.cf != rep.cf || back.kind != rep.kind {
        return Err(malformed(rep, "digits are inconsistent with the kind"));
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
    I,
}

impl Move {
    pub fn matrix(self) -> Mat3 {
        match self {
            Move::L => Mat3::from_i64([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
            Move::R => Mat3::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            Move::I => Mat3::from_i64([[1, 0, 1], [1, 0, 0], [0, 1, 0]]),
        }
    }

    fn letter(self) -> char {
        match self {
            Move::L => 'L',
            Move::R => 'R',
            Move::I => 'I',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Move>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push_run(&mut self, m: Move, n: &Int) -> Result<()> {
        self.0.extend(std::iter::repeat_n(m, small(n)?));
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{}", m.letter())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_ascii_uppercase() {
                'L' => Ok(Move::L),
                'R' => Ok(Move::R),
                'I' => Ok(Move::I),
                _ => Err(Error::Parse(format!("bad move '{}'", c))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Starting node of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// (1/2, 1/2)
    Root,
    /// (1/2, 0)
    Lambda,
    /// (1, 1/2)
    Upsilon,
}

impl Anchor {
    pub fn triple(self) -> Triple {
        match self {
            Anchor::Root => Triple::of(2, 1, 1),
            Anchor::Lambda => Triple::of(2, 1, 0),
            Anchor::Upsilon => Triple::of(2, 2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Anchor::Root => "root",
            Anchor::Lambda => "lambda",
            Anchor::Upsilon => "upsilon",
        }
    }
}

impl FromStr for Anchor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Anchor> {
        match s.trim() {
            "root" | "sigma" => Ok(Anchor::Root),
            "lambda" => Ok(Anchor::Lambda),
            "upsilon" => Ok(Anchor::Upsilon),
            o => Err(Error::Parse(format!("unknown anchor '{}'", o))),
        }
    }
}

fn lr_word(cf: &Cf) -> Result<Word> {
    let mut w = Word::default();
    for (c, n) in path_runs(&cf.digits()) {
        w.push_run(if c == Lr::L { Move::L } else { Move::R }, &n)?;
    }
    Ok(w)
}

pub fn word_of(rep: &Representation) -> Result<(Anchor, Word)> {
    let open = |r: &Representation| {
        if matches!(r.cf, Cf::Zero | Cf::One) {
            Err(Error::RootOrVertex(format!("{} is a vertex", r)))
        } else {
            Ok(())
        }
    };
    match rep.kind {
        NodeKind::Vertex => Err(Error::RootOrVertex(format!("{} is a vertex", rep))),
        NodeKind::Sigma => open(rep).and_then(|_| Ok((Anchor::Root, lr_word(&rep.cf)?))),
        NodeKind::Lambda => open(rep).and_then(|_| Ok((Anchor::Lambda, lr_word(&rep.cf)?))),
        NodeKind::Upsilon => open(rep).and_then(|_| Ok((Anchor::Upsilon, lr_word(&rep.cf)?))),
        NodeKind::Interior => {
            open(rep)?;
            let d = &rep.tseq.digits;
            let (last, head) = d.split_last().ok_or_else(|| malformed(rep, "empty interior sequence"))?;
            if !rep.tseq.complete || last.is_zero() {
                return Err(malformed(rep, "interior words need a complete sequence ending in a positive digit"));
            }
            let mut w = Word::default();
            for a in head {
                w.push_run(Move::L, a)?;
                w.0.push(Move::I);
            }
            w.push_run(Move::L, &(last - 1u32))?;
            w.0.push(Move::I);
            w.0.extend(lr_word(&rep.cf)?.0);
            Ok((Anchor::Root, w))
        }
    }
}

/// Representation of the endpoint of a root-anchored word.
pub fn representation_of_word(w: &Word) -> Result<Representation> {
    let bad = |why: &str| Error::MalformedWord(format!("'{}': {}", w, why));
    let mv = &w.0;
    let last_i = mv.iter().rposition(|m| *m == Move::I);
    let head_end = last_i.map_or(0, |i| i + 1);
    if mv[..head_end].contains(&Move::R) {
        return Err(bad("R before the last I"));
    }
    // runs of L between the I moves
    let mut d: Vec<Int> = Vec::new();
    let mut run = 0u64;
    for m in &mv[..head_end] {
        match m {
            Move::L => run += 1,
            _ => {
                d.push(Int::from(run));
                run = 0;
            }
        }
    }
    // alternating L/R runs of the tail, starting with L
    let mut c: Vec<Int> = vec![Int::zero()];
    let mut cur = Move::L;
    for m in &mv[head_end..] {
        if *m != cur {
            cur = *m;
            c.push(Int::zero());
        }
        *c.last_mut().unwrap() += 1u32;
    }
    let s = c.len() - 1;
    let cf_digits: Vec<Int> = if s == 0 {
        vec![&c[0] + 2u32]
    } else {
        let mut v = c.clone();
        v[0] += 1u32;
        v[s] += 1u32;
        v
    };
    if d.is_empty() {
        if s > 0 {
            return Err(bad("R before any I"));
        }
        let tseq = TriangleSeq::complete(vec![&c[0] + 1u32]);
        return Ok(Representation { tseq, cf: Cf::Digits(cf_digits), kind: NodeKind::Sigma });
    }
    let n = d.len();
    d[n - 1] += 1u32;
    Ok(Representation { tseq: TriangleSeq::complete(d), cf: Cf::Digits(cf_digits), kind: NodeKind::Interior })
}

/// Columns are (right parent, left parent, reference vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairMatrix(pub Mat3);

impl PairMatrix {
    pub fn right(&self) -> Vec3 {
        self.0.col(0)
    }

    pub fn left(&self) -> Vec3 {
        self.0.col(1)
    }

    pub fn reference(&self) -> Vec3 {
        self.0.col(2)
    }

    pub fn node(&self) -> Vec3 {
        self.right().add(&self.left())
    }

    pub fn pair(&self) -> Triple {
        canonicalize(&self.node()).expect("matrix columns stay in the closed triangle")
    }

    pub fn det(&self) -> Int {
        self.0.det()
    }
}

impl fmt::Display for PairMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn matrix_of(t: &Triple) -> Result<PairMatrix> {
    let (l, r) = parents(t)?;
    let reference = match classify(t) {
        NodeKind::Sigma => Vec3::new(1, 1, 0),
        NodeKind::Lambda => Vec3::new(1, 1, 1),
        NodeKind::Upsilon => Vec3::new(1, 0, 0),
        NodeKind::Interior => {
            let ts = triangle_sequence_rational(t).0;
            segment_word(&ts.digits)?.matrix()?.apply(&Vec3::new(1, 1, 1))
        }
        NodeKind::Vertex => unreachable!("parents rejects vertices"),
    };
    Ok(PairMatrix(Mat3::from_cols(&r.as_vec3(), &l.as_vec3(), &reference)))
}

pub fn apply_move(m: &PairMatrix, mv: Move) -> PairMatrix {
    PairMatrix(m.0.mul(&mv.matrix()))
}

pub fn walk(anchor: Anchor, w: &Word) -> Result<(PairMatrix, Triple)> {
    if anchor != Anchor::Root && w.0.contains(&Move::I) {
        return Err(Error::IActionNotAvailable(format!("I from the {} anchor", anchor.name())));
    }
    let m = w.0.iter().fold(matrix_of(&anchor.triple())?, |m, &mv| apply_move(&m, mv));
    let t = m.pair();
    Ok((m, t))
}

fn inv0(t: &Triple) -> Option<Triple> {
    // phi0: (q,p,r) -> (q+r, q, p)
    let v = Vec3 { q: t.p().clone(), p: t.r().clone(), r: t.q() - t.p() };
    canonicalize(&v).ok().filter(|s| crate::triangle_dynamics::phi0(s) == *t)
}

fn inv1(t: &Triple) -> Option<Triple> {
    // phi1: (q,p,r) -> (q+r, p, r)
    let v = Vec3 { q: t.q() - t.r(), p: t.p().clone(), r: t.r().clone() };
    canonicalize(&v).ok().filter(|s| crate::triangle_dynamics::phi1(s) == *t)
}

/// A binary word w with t = phi_w(1/2, 1/2), if there is one.
pub fn root_word(t: &Triple) -> Option<PhiWord> {
    let root = Anchor::Root.triple();
    let mut seen = HashSet::new();
    let mut stack = vec![(t.clone(), Vec::<u8>::new())];
    while let Some((s, w)) = stack.pop() {
        if s == root {
            // first inverse step found is the outermost branch
            return Some(PhiWord(w));
        }
        if s.r().is_zero() || !seen.insert(s.clone()) {
            continue;
        }
        for (b, pre) in [(0u8, inv0(&s)), (1u8, inv1(&s))] {
            if let Some(p) = pre {
                if p.q() < s.q() {
                    let mut w2 = w.clone();
                    w2.push(b);
                    stack.push((p, w2));
                }
            }
        }
    }
    None
}

/// Result of a move computed from mediants and parents.
pub fn action_semantic(t: &Triple, mv: Move) -> Result<Triple> {
    match mv {
        Move::L | Move::R => {
            let (l, r) = parents(t)?;
            let other = if mv == Move::L { l } else { r };
            canonicalize(&mediant(t, &other))
        }
        Move::I => {
            let w = root_word(t)
                .ok_or_else(|| Error::IActionNotAvailable(format!("{} is not an image of (1/2,1/2)", t)))?;
            phi_word(&w, &Triple::of(3, 2, 1))
        }
    }
}

/// Word of inverse branches mapping (1/2,1/2) onto a point, split into the
/// part before the separating phi2, the separator, and the diagonal block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Backimage {
    pub prefix: PhiWord,
    pub separator: bool,
    pub block: PhiWord,
}

impl Backimage {
    pub fn word(&self) -> PhiWord {
        let mut w = self.prefix.clone();
        if self.separator {
            w.0.push(2);
        }
        w.concat(&self.block)
    }
}

impl fmt::Display for Backimage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.prefix.is_empty() {
            parts.push(self.prefix.to_string());
        }
        if self.separator {
            parts.push("2".to_string());
        }
        if !self.block.is_empty() {
            parts.push(self.block.to_string());
        }
        write!(f, "{}", parts.join("|"))
    }
}

/// `phi1^{a1-1} phi0^2 phi2 ... phi1^{an-2}`: carries the root to (xi, xi).
pub fn diagonal_block(cf: &[Int]) -> Result<PhiWord> {
    let (last, head) = cf.split_last().ok_or_else(|| Error::Parse("empty continued fraction".into()))?;
    let mut w = PhiWord::empty();
    for a in head {
        w.push_run(1, small(&(a - 1u32))?);
        w.0.extend([0, 0, 2]);
    }
    if *last < Int::from(2) {
        return Err(Error::MalformedRepresentation(format!("last digit of {} must be >= 2", fmt_digits(cf))));
    }
    w.push_run(1, small(&(last - 2u32))?);
    Ok(w)
}

pub fn backimage_decomposition(t: &Triple) -> Result<Backimage> {
    let rep = representation_of(t);
    if rep.kind == NodeKind::Vertex {
        return Err(Error::RootOrVertex(format!("{} is a vertex", t)));
    }
    let block = diagonal_block(&rep.cf.digits())?;
    let (prefix, separator) = match rep.kind {
        NodeKind::Interior => (PhiWord::from_digits(&rep.tseq.digits)?, true),
        NodeKind::Lambda => (PhiWord::empty(), true),
        NodeKind::Upsilon => (PhiWord(vec![0]), true),
        _ => (PhiWord::empty(), false),
    };
    Ok(Backimage { prefix, separator, block })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: i64, p: i64, r: i64) -> Triple {
        Triple::of(q, p, r)
    }

    fn rep(s: &str) -> Representation {
        s.parse().unwrap()
    }

    #[test]
    fn representation_examples() {
        assert_eq!(representation_of(&t(54, 19, 14)).to_string(), "[2,0,1,1];[2,2]");
        assert_eq!(representation_of(&t(1, 1, 1)).to_string(), "[0];[1]");
        assert_eq!(representation_of(&t(3, 1, 1)).to_string(), "[2];[3]");
        assert_eq!(representation_of(&t(3, 2, 1)).to_string(), "[1];[2];interior");
        assert_eq!(representation_of(&t(2, 1, 1)).to_string(), "[1];[2]");
    }

    #[test]
    fn point_examples() {
        assert_eq!(point_of(&rep("[2,0,1,1];[2,2]")).unwrap(), t(54, 19, 14));
        assert_eq!(point_of(&rep("[];[2]")).unwrap(), t(2, 1, 0));
        assert_eq!(point_of(&rep("[1];[2]")).unwrap(), t(2, 1, 1));
        assert_eq!(point_of(&rep("[1];[2];interior")).unwrap(), t(3, 2, 1));
        assert_eq!(point_of(&rep("[0];[1]")).unwrap(), t(1, 1, 1));
        assert!(matches!(point_of(&rep("[2,0];[3];interior")), Err(Error::MalformedRepresentation(_))));
        assert!(matches!(point_of(&rep("[5,0];[2]")), Err(Error::MalformedRepresentation(_))));
    }

    #[test]
    fn word_examples() {
        let (a, w) = word_of(&rep("[2,0,1,1];[2,2]")).unwrap();
        assert_eq!((a, w.to_string()), (Anchor::Root, "LLIILIILR".to_string()));
        assert_eq!(word_of(&rep("[2];[3]")).unwrap().1.to_string(), "L");
        let s = representation_of(&t(5, 2, 2));
        assert_eq!(word_of(&s).unwrap(), (Anchor::Root, "LR".parse().unwrap()));
        let l = representation_of(&t(5, 2, 0));
        assert_eq!(word_of(&l).unwrap(), (Anchor::Lambda, "LR".parse().unwrap()));
    }

    #[test]
    fn word_to_representation() {
        let r = |s: &str| representation_of_word(&s.parse().unwrap()).unwrap();
        assert_eq!(r("LL").to_string(), "[3];[4]");
        assert_eq!(r("LLII").to_string(), "[2,1];[2]");
        assert_eq!(r("LIILLLR").to_string(), "[1,1];[4,2]");
        assert_eq!(r("LLIIL").to_string(), "[2,1];[3]");
        assert_eq!(r("LLI").to_string(), "[3];[2]");
        assert_eq!(r("").to_string(), "[1];[2]");
        let e = representation_of_word(&"LR".parse().unwrap());
        assert!(matches!(e, Err(Error::MalformedWord(_))));
        let e = representation_of_word(&"LIRI".parse().unwrap());
        assert!(matches!(e, Err(Error::MalformedWord(_))));
    }

    #[test]
    fn matrix_examples() {
        let m = matrix_of(&t(2, 1, 1)).unwrap();
        assert_eq!(m.0, Mat3::from_i64([[1, 1, 1], [1, 0, 1], [1, 0, 0]]));
        let m = matrix_of(&t(54, 19, 14)).unwrap();
        assert_eq!(m.0, Mat3::from_i64([[23, 31, 11], [8, 11, 4], [6, 8, 3]]));
        let m = matrix_of(&t(2, 1, 0)).unwrap();
        assert_eq!(m.0, Mat3::from_i64([[1, 1, 1], [1, 0, 1], [0, 0, 1]]));
        assert_eq!(m.det().abs(), Int::one());
    }

    #[test]
    fn walk_examples() {
        let w = |s: &str| walk(Anchor::Root, &s.parse().unwrap()).unwrap();
        let (m, p) = w("LLIILIILR");
        assert_eq!(p, t(54, 19, 14));
        assert_eq!(m, matrix_of(&p).unwrap());
        assert_eq!(w("LI").1, t(4, 2, 1));
        assert_eq!(w("").1, t(2, 1, 1));
        assert_eq!(w("LLI").0.det(), Int::one());
    }

    #[test]
    fn action_examples() {
        assert_eq!(action_semantic(&t(4, 1, 1), Move::I).unwrap(), t(5, 2, 1));
        assert_eq!(root_word(&t(4, 2, 1)).unwrap().to_string(), "10");
        assert_eq!(action_semantic(&t(4, 2, 1), Move::I).unwrap(), t(6, 3, 2));
        assert_eq!(action_semantic(&t(6, 3, 2), Move::L).unwrap(), t(8, 4, 3));
        assert_eq!(action_semantic(&t(31, 11, 8), Move::R).unwrap(), t(54, 19, 14));
        assert!(matches!(action_semantic(&t(3, 2, 0), Move::I), Err(Error::IActionNotAvailable(_))));
    }

    #[test]
    fn backimage_examples() {
        let b = backimage_decomposition(&t(54, 19, 14)).unwrap();
        assert_eq!(b.to_string(), "11001010|2|1002");
        assert_eq!(phi_word(&b.word(), &t(2, 1, 1)).unwrap(), t(54, 19, 14));
        let b = backimage_decomposition(&t(5, 2, 2)).unwrap();
        assert_eq!(b.word().to_string(), "1002");
        assert_eq!(phi_word(&b.word(), &t(2, 1, 1)).unwrap(), t(5, 2, 2));
        assert!(backimage_decomposition(&t(2, 1, 1)).unwrap().word().is_empty());
        for s in [t(7, 3, 0), t(7, 7, 3), t(9, 4, 4)] {
            let b = backimage_decomposition(&s).unwrap();
            assert_eq!(phi_word(&b.word(), &t(2, 1, 1)).unwrap(), s);
        }
    }
}
