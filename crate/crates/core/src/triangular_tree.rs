//! Levels of the tree of rational pairs, built two ways: by taking
//! counterimages under the inverse branches, and by repeated Farey sums on
//! the segments of a nested partition of the triangle.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_core::{canonicalize, mediant, Int, Triple, Vec3};
use crate::farey1d::{cf_expand, farey_parents, Frac};
pub use crate::triangle_dynamics::NodeKind;
use crate::triangle_dynamics::{
    classify, mediant_point, phi0, phi1, phi2, triangle_sequence_rational, PhiWord,
};

/// Which map produced a node from which source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// The three vertices.
    Root,
    /// The three side midpoints.
    Midpoint,
    /// phi0 or phi1 of an interior point, one level down.
    Interior,
    /// phi1 of a diagonal point, one level down.
    Sigma,
    /// phi2 of a diagonal point, same level.
    SigmaToLambda,
    /// phi0 of a point of y = 0, same level.
    LambdaToUpsilon,
    /// phi0 or phi1 of a point of x = 1, one level down.
    Upsilon,
}

impl Rule {
    pub fn same_level(self) -> bool {
        matches!(self, Rule::SigmaToLambda | Rule::LambdaToUpsilon)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Phi0,
    Phi1,
    Phi2,
}

impl Branch {
    pub fn apply(self, t: &Triple) -> Result<Triple> {
        match self {
            Branch::Phi0 => Ok(phi0(t)),
            Branch::Phi1 => Ok(phi1(t)),
            Branch::Phi2 => phi2(t),
        }
    }

    pub fn symbol(self) -> u8 {
        match self {
            Branch::Phi0 => 0,
            Branch::Phi1 => 1,
            Branch::Phi2 => 2,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi{}", self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub rule: Rule,
    /// None for the roots and midpoints.
    pub edge: Option<(Triple, Branch)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub triple: Triple,
    pub kind: NodeKind,
    pub level: i64,
    pub provenance: Provenance,
}

impl TreeNode {
    fn new(triple: Triple, level: i64, rule: Rule, edge: Option<(Triple, Branch)>) -> TreeNode {
        let kind = classify(&triple);
        TreeNode { triple, kind, level, provenance: Provenance { rule, edge } }
    }

    pub fn record(&self) -> NodeRecord {
        NodeRecord::of(&self.triple, self.level)
    }
}

/// Serialized form of a node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeRecord {
    pub q: String,
    pub p: String,
    pub r: String,
    pub kind: String,
    pub level: i64,
    pub parents: Vec<[String; 3]>,
}

impl NodeRecord {
    pub fn of(t: &Triple, level: i64) -> NodeRecord {
        let parents = match parents(t) {
            Ok((l, r)) => vec![triple_strings(&l), triple_strings(&r)],
            Err(_) => vec![],
        };
        NodeRecord {
            q: t.q().to_string(),
            p: t.p().to_string(),
            r: t.r().to_string(),
            kind: classify(t).name().to_string(),
            level,
            parents,
        }
    }

    /// JSON with the integers unquoted.
    pub fn to_json(&self) -> serde_json::Value {
        let num = |s: &String| -> serde_json::Value {
            serde_json::from_str(s).unwrap_or_else(|_| serde_json::Value::String(s.clone()))
        };
        serde_json::json!({
            "q": num(&self.q),
            "p": num(&self.p),
            "r": num(&self.r),
            "kind": self.kind,
            "level": self.level,
            "parents": self.parents.iter().map(|t| t.iter().map(num).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn triple_strings(t: &Triple) -> [String; 3] {
    [t.q().to_string(), t.p().to_string(), t.r().to_string()]
}

pub fn vertices() -> Vec<Triple> {
    vec![Triple::of(1, 0, 0), Triple::of(1, 1, 0), Triple::of(1, 1, 1)]
}

pub fn midpoints() -> Vec<Triple> {
    vec![Triple::of(2, 1, 0), Triple::of(2, 2, 1), Triple::of(2, 1, 1)]
}

/// Deterministic order inside a level: by kind, then lexicographically.
fn sort_level(v: &mut [TreeNode]) {
    v.sort_by(|a, b| (a.kind, &a.triple).cmp(&(b.kind, &b.triple)));
}

/// Levels -1 ..= n from the counterimage rules.
pub fn levels(n: i64) -> Vec<Vec<TreeNode>> {
    let mut out = vec![vertices().into_iter().map(|t| TreeNode::new(t, -1, Rule::Root, None)).collect::<Vec<_>>()];
    if n < 0 {
        return out;
    }
    let mut cur: Vec<TreeNode> = midpoints().into_iter().map(|t| TreeNode::new(t, 0, Rule::Midpoint, None)).collect();
    sort_level(&mut cur);
    out.push(cur.clone());
    for lvl in 1..=n {
        let next = next_level(&cur, lvl);
        out.push(next.clone());
        cur = next;
    }
    out
}

fn next_level(prev: &[TreeNode], lvl: i64) -> Vec<TreeNode> {
    let mut next = Vec::new();
    for node in prev {
        let t = &node.triple;
        let mut push = |rule, b: Branch| {
            let img = b.apply(t).expect("phi0 and phi1 are total");
            next.push(TreeNode::new(img, lvl, rule, Some((t.clone(), b))));
        };
        match node.kind {
            NodeKind::Interior => {
                push(Rule::Interior, Branch::Phi0);
                push(Rule::Interior, Branch::Phi1);
            }
            NodeKind::Sigma => push(Rule::Sigma, Branch::Phi1),
            NodeKind::Upsilon => {
                push(Rule::Upsilon, Branch::Phi0);
                push(Rule::Upsilon, Branch::Phi1);
            }
            NodeKind::Lambda | NodeKind::Vertex => {}
        }
    }
    // same-level closure: diagonal -> y = 0 -> x = 1
    let mut closure = Vec::new();
    for node in &next {
        if node.kind == NodeKind::Sigma {
            let l = phi2(&node.triple).expect("diagonal point");
            let u = phi0(&l);
            closure.push(TreeNode::new(l.clone(), lvl, Rule::SigmaToLambda, Some((node.triple.clone(), Branch::Phi2))));
            closure.push(TreeNode::new(u, lvl, Rule::LambdaToUpsilon, Some((l, Branch::Phi0))));
        }
    }
    next.extend(closure);
    sort_level(&mut next);
    next
}

pub fn level_counterimage(n: i64) -> Vec<TreeNode> {
    levels(n).pop().unwrap_or_default()
}

/// A labelled triangle of the partition, vertices (v0, v1, v2), with the
/// word of inverse branches that maps the whole triangle onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub v: [Triple; 3],
    pub word: PhiWord,
}

/// A maximal segment with the points of the current level set lying on it.
#[derive(Clone, Debug)]
struct Segment {
    points: Vec<Triple>,
    /// Far endpoint not yet in the point set.
    pending: Option<Triple>,
}

impl Segment {
    fn insert(&mut self, t: Triple) {
        if let Err(i) = self.points.binary_search(&t) {
            self.points.insert(i, t);
        }
    }
}

/// State of the geometric construction after step n.
#[derive(Clone, Debug)]
pub struct Geometric {
    pub n: i64,
    pub cells: Vec<Cell>,
    segments: Vec<Segment>,
    pub points: HashSet<Triple>,
    /// Points added at step n.
    pub fresh: Vec<Triple>,
}

impl Geometric {
    /// Step 0: the vertices and side midpoints; the partition is the
    /// triangle itself.
    pub fn start() -> Geometric {
        let [a, b, c]: [Triple; 3] = vertices().try_into().unwrap();
        let sides = [(a.clone(), b.clone()), (b.clone(), c.clone()), (a.clone(), c.clone())];
        let segments = sides
            .iter()
            .map(|(u, v)| {
                let mut s = Segment { points: vec![u.clone(), v.clone()], pending: None };
                s.insert(mediant_point(u, v));
                s
            })
            .collect();
        let fresh = midpoints();
        let points = vertices().into_iter().chain(fresh.iter().cloned()).collect();
        Geometric {
            n: 0,
            cells: vec![Cell { v: [a, b, c], word: PhiWord::empty() }],
            segments,
            points,
            fresh,
        }
    }

    /// Split every cell along the segment from v1 to v0 + v2, then add the
    /// Farey sums of neighbouring points on every segment.
    pub fn step(&mut self) {
        let mut cells = Vec::with_capacity(2 * self.cells.len());
        for c in &self.cells {
            let [a0, a1, a2] = &c.v;
            let m = mediant_point(a0, a2);
            let mut w1 = c.word.clone();
            w1.0.push(1);
            let mut w0 = c.word.clone();
            w0.0.push(0);
            cells.push(Cell { v: [a0.clone(), a1.clone(), m.clone()], word: w1 });
            cells.push(Cell { v: [a1.clone(), a2.clone(), m.clone()], word: w0 });
            self.segments.push(Segment { points: vec![a1.clone()], pending: Some(m) });
        }
        self.cells = cells;
        for s in &mut self.segments {
            if let Some(m) = s.pending.take() {
                if self.points.contains(&m) {
                    s.insert(m);
                } else {
                    s.pending = Some(m);
                }
            }
        }
        let mut fresh = BTreeSet::new();
        for s in &mut self.segments {
            let sums: Vec<Triple> = s.points.windows(2).map(|w| mediant_point(&w[0], &w[1])).collect();
            for t in sums {
                fresh.insert(t.clone());
                s.insert(t);
            }
        }
        self.fresh = fresh.into_iter().filter(|t| !self.points.contains(t)).collect();
        self.points.extend(self.fresh.iter().cloned());
        self.n += 1;
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }
}

/// Points first appearing at step n of the geometric construction.
pub fn level_geometric(n: i64) -> Vec<Triple> {
    if n < 0 {
        return vertices();
    }
    let mut g = Geometric::start();
    for _ in 0..n {
        g.step();
    }
    let mut v = g.fresh;
    v.sort();
    v
}

/// The labelled triangles of the partition after step n.
pub fn partition(n: i64) -> Vec<Cell> {
    let mut g = Geometric::start();
    for _ in 0..n.max(0) {
        g.step();
    }
    g.cells
}

fn side_point(kind: NodeKind, f: &Frac) -> Triple {
    let (a, b) = (f.p().clone(), f.q().clone());
    let v = match kind {
        NodeKind::Sigma => Vec3 { q: b, p: a.clone(), r: a },
        NodeKind::Lambda => Vec3 { q: b, p: a, r: Int::zero() },
        _ => Vec3 { q: b.clone(), p: b, r: a },
    };
    canonicalize(&v).expect("side point")
}

/// `1^{a0} 0 ... 1^{a_{k-1}} 0 1^{a_k - 1}`: the word that carries the
/// segment from (1,0) to (1/2,1/2) onto the segment holding the point.
pub fn segment_word(digits: &[Int]) -> Result<PhiWord> {
    let (last, head) = digits.split_last().ok_or_else(|| Error::RootOrVertex("empty digit list".into()))?;
    let mut w = PhiWord::from_digits(head)?;
    w.push_run(1, crate::triangle_dynamics::small(&(last - Int::one()))?);
    Ok(w)
}

/// Point of the segment with parameter a/b: the image of
/// `(1/(1+xi), xi/(1+xi))` with xi = a/b.
pub fn segment_point(word: &PhiWord, b: &Int, a: &Int) -> Vec3 {
    let m = word.matrix().expect("binary word");
    m.apply(&Vec3 { q: a + b, p: b.clone(), r: a.clone() })
}

/// `(left, right)` neighbours whose mediant is t.
pub fn parents(t: &Triple) -> Result<(Triple, Triple)> {
    let (ts, xi, kind) = triangle_sequence_rational(t);
    if kind == NodeKind::Vertex {
        return Err(Error::RootOrVertex(format!("{} has no parents", t)));
    }
    let (l, r) = farey_parents(&xi).map_err(|_| Error::RootOrVertex(format!("{} has no parents", t)))?;
    if kind != NodeKind::Interior {
        return Ok((side_point(kind, &l), side_point(kind, &r)));
    }
    let w = segment_word(&ts.digits)?;
    let c = |f: &Frac| canonicalize(&segment_point(&w, f.q(), f.p())).expect("segment point");
    Ok((c(&l), c(&r)))
}

/// Images of t under the counterimage rules, with the rule used.
pub fn children(t: &Triple) -> Vec<(Rule, Branch, Triple)> {
    let mk = |rule, b: Branch| (rule, b, b.apply(t).expect("branch applies"));
    match classify(t) {
        NodeKind::Interior => vec![mk(Rule::Interior, Branch::Phi0), mk(Rule::Interior, Branch::Phi1)],
        NodeKind::Sigma => vec![mk(Rule::SigmaToLambda, Branch::Phi2), mk(Rule::Sigma, Branch::Phi1)],
        NodeKind::Lambda => vec![mk(Rule::LambdaToUpsilon, Branch::Phi0)],
        NodeKind::Upsilon => vec![mk(Rule::Upsilon, Branch::Phi0), mk(Rule::Upsilon, Branch::Phi1)],
        NodeKind::Vertex => vec![],
    }
}

/// Level of t in the tree; vertices are at level -1.
pub fn rank(t: &Triple) -> Int {
    let (ts, xi, kind) = triangle_sequence_rational(t);
    match kind {
        NodeKind::Vertex => -Int::one(),
        NodeKind::Interior => {
            let k = Int::from(ts.len() - 1);
            ts.sum() + cf_expand(&xi).digit_sum() + k - 2
        }
        _ => cf_expand(&xi).digit_sum() - 2,
    }
}

/// All canonical triples with denominator at most qmax.
pub fn all_triples(qmax: i64) -> Vec<Triple> {
    let mut v = Vec::new();
    for q in 1..=qmax {
        for p in 0..=q {
            for r in 0..=p {
                if num_integer::gcd(num_integer::gcd(q, p), r) == 1 {
                    v.push(Triple::of(q, p, r));
                }
            }
        }
    }
    v
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    pub checked: usize,
    pub missing: Vec<Triple>,
    pub duplicates: Vec<Triple>,
    /// (triple, generated level, rank)
    pub misplaced: Vec<(Triple, i64, Int)>,
}

impl CompletenessReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.duplicates.is_empty() && self.misplaced.is_empty()
    }
}

/// Checks that every triple with q <= qmax occurs exactly once in the given
/// levels (index 0 is level -1), at the level equal to its rank.
pub fn check_levels(levels: &[Vec<TreeNode>], qmax: i64) -> CompletenessReport {
    let mut seen: HashMap<Triple, i64> = HashMap::new();
    let mut rep = CompletenessReport::default();
    for (i, lvl) in levels.iter().enumerate() {
        for node in lvl {
            if seen.insert(node.triple.clone(), i as i64 - 1).is_some() {
                rep.duplicates.push(node.triple.clone());
            }
        }
    }
    for t in all_triples(qmax) {
        rep.checked += 1;
        match seen.get(&t) {
            None => rep.missing.push(t),
            Some(&l) => {
                let rk = rank(&t);
                if rk != Int::from(l) {
                    rep.misplaced.push((t, l, rk));
                }
            }
        }
    }
    rep
}

pub fn completeness_check(qmax: i64, nmax: i64) -> CompletenessReport {
    check_levels(&levels(nmax), qmax)
}

/// Mediant of the parents, canonicalized; equals t for every non-root node.
pub fn parents_mediant(t: &Triple) -> Result<Triple> {
    let (l, r) = parents(t)?;
    canonicalize(&mediant(&l, &r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: i64, p: i64, r: i64) -> Triple {
        Triple::of(q, p, r)
    }

    fn set(v: &[TreeNode]) -> BTreeSet<Triple> {
        v.iter().map(|n| n.triple.clone()).collect()
    }

    #[test]
    fn first_levels() {
        let l0 = set(&level_counterimage(0));
        assert_eq!(l0, [t(2, 1, 0), t(2, 2, 1), t(2, 1, 1)].into_iter().collect());
        let l1 = set(&level_counterimage(1));
        let want: BTreeSet<Triple> =
            [t(3, 1, 0), t(3, 2, 0), t(3, 3, 1), t(3, 3, 2), t(3, 1, 1), t(3, 2, 2), t(3, 2, 1)].into_iter().collect();
        assert_eq!(l1, want);
        let l2 = level_counterimage(2);
        assert_eq!(l2.len(), 16);
        let interior: BTreeSet<Triple> =
            l2.iter().filter(|n| n.kind == NodeKind::Interior).map(|n| n.triple.clone()).collect();
        assert_eq!(interior, [t(5, 3, 2), t(4, 3, 1), t(4, 3, 2), t(4, 2, 1)].into_iter().collect());
    }

    #[test]
    fn geometric_matches() {
        for n in 0..=8 {
            let a: BTreeSet<Triple> = set(&level_counterimage(n));
            let b: BTreeSet<Triple> = level_geometric(n).into_iter().collect();
            assert_eq!(a, b, "level {}", n);
        }
        let p1 = partition(1);
        assert_eq!(p1.len(), 2);
        assert_eq!(p1[0].v, [t(1, 0, 0), t(1, 1, 0), t(2, 1, 1)]);
        assert_eq!(p1[1].v, [t(1, 1, 0), t(1, 1, 1), t(2, 1, 1)]);
    }

    #[test]
    fn parent_examples() {
        assert_eq!(parents(&t(2, 1, 1)).unwrap(), (t(1, 0, 0), t(1, 1, 1)));
        assert_eq!(parents(&t(54, 19, 14)).unwrap(), (t(31, 11, 8), t(23, 8, 6)));
        assert_eq!(parents(&t(6, 3, 2)).unwrap(), (t(2, 1, 1), t(4, 2, 1)));
        assert!(matches!(parents(&t(1, 1, 0)), Err(Error::RootOrVertex(_))));
    }

    #[test]
    fn children_examples() {
        let c = children(&t(3, 2, 1));
        assert_eq!(c[0].2, t(4, 3, 2));
        assert_eq!(c[1].2, t(4, 2, 1));
        let c = children(&t(2, 1, 1));
        assert_eq!((c[0].0, c[0].2.clone()), (Rule::SigmaToLambda, t(2, 1, 0)));
        assert_eq!(c[1].2, t(3, 1, 1));
        let c = children(&t(2, 2, 1));
        assert_eq!((c[0].2.clone(), c[1].2.clone()), (t(3, 2, 2), t(3, 2, 1)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&t(2, 1, 1)), Int::from(0));
        assert_eq!(rank(&t(54, 19, 14)), Int::from(9));
        assert_eq!(rank(&t(3, 3, 1)), Int::from(1));
        assert_eq!(rank(&t(1, 0, 0)), Int::from(-1));
    }

    #[test]
    fn complete_small() {
        let r = completeness_check(6, 12);
        assert!(r.ok(), "{:?}", r);
        assert_eq!(r.checked, all_triples(6).len());
        let r = completeness_check(1, -1);
        assert!(r.ok());
        assert_eq!(r.checked, 3);
    }

    #[test]
    fn duplicate_detected() {
        let mut lv = levels(4);
        let extra = lv[3][0].clone();
        lv[4].push(extra);
        let r = check_levels(&lv, 5);
        assert_eq!(r.duplicates.len(), 1);
        assert!(!r.ok());
    }

    #[test]
    fn node_json() {
        let v = NodeRecord::of(&t(54, 19, 14), 9).to_json();
        assert_eq!(
            v.to_string(),
            r#"{"kind":"interior","level":9,"p":19,"parents":[[31,11,8],[23,8,6]],"q":54,"r":14}"#
        );
    }
}
