//! Command line front end. `run` is what the binary calls; it writes to the
//! given streams and returns the process exit code.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::approximation::{
    approximants, approximants_nonconvergent, cf_scalar, exponent_bound, finite_ts_speed, periodic_speed, rational_standin,
    ApproximationTarget, DigitStream, ErrorRow, ERROR_CSV_HEADER,
};
use crate::coding::{
    backimage_decomposition, matrix_of, point_of, representation_of, representation_of_word, walk, word_of, Anchor,
    Representation, Word,
};
use crate::error::{Error, Result};
use crate::exact_core::{parse_rat, Int, Rat, Triple};
use crate::farey1d::{cf_expand, farey_code, farey_matrix, farey_rank, Frac};
use crate::triangle_dynamics::{triangle_sequence_rational, triangle_sequence_real, PhiWord};
use crate::triangular_tree::{completeness_check, level_counterimage, level_geometric, rank, NodeRecord};
use crate::verified_reals::{dyadic_to_sci, Budget, Interval, RealPair, RealScalar};

pub const SCHEMA: &str = "tt-1";

#[derive(Parser, Debug)]
#[command(name = "tritree", version, about = "Triangular tree of rational pairs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tree levels and completeness checks.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Representation, word, matrix and rank of a pair `P/Q R/Q`.
    Encode {
        x: String,
        y: String,
        /// Accept unequal or non-lowest denominators.
        #[arg(long)]
        reduce: bool,
    },
    /// Pair from an L/R/I word or from a representation.
    Decode {
        #[arg(long, conflicts_with = "repr", required_unless_present = "repr")]
        word: Option<String>,
        #[arg(long, default_value = "root")]
        anchor: String,
        #[arg(long)]
        repr: Option<String>,
    },
    /// Triangle sequence of a rational or real pair.
    Tseq {
        #[arg(long, conflicts_with = "real", required_unless_present = "real")]
        pair: Option<String>,
        /// `x;y`, each a rational, a decimal or `poly:..;iv:..`-style scalar.
        #[arg(long)]
        real: Option<String>,
        #[arg(long, default_value_t = 256)]
        prec: u64,
        #[arg(long, default_value_t = 40)]
        max: usize,
    },
    /// One-dimensional Farey data of a rational in [0, 1].
    Farey {
        #[arg(value_enum)]
        what: FareyWhat,
        x: String,
    },
    /// Approximating sequences.
    Approx(ApproxArgs),
    /// Error products `s^eta |alpha - m/s| |beta - n/s|`.
    Speed(SpeedArgs),
}

#[derive(Subcommand, Debug)]
enum TreeCmd {
    Level {
        n: i64,
        #[arg(long, value_enum, default_value_t = Construction::Counterimage)]
        construction: Construction,
    },
    /// Compare both constructions on levels -1 ..= N.
    Check { n: i64 },
    Complete {
        #[arg(long)]
        qmax: i64,
        #[arg(long)]
        nmax: i64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    Counterimage,
    Geometric,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FareyWhat {
    Cf,
    Rank,
    Matrix,
    Code,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "target")]
struct TargetArgs {
    /// `TS;CF` with CF finite or periodic, e.g. `[1,1];[4,1]*`.
    #[arg(long)]
    repr: Option<String>,
    /// Digit stream of a convergent sequence: `primes`, `[3]*`, ...
    #[arg(long)]
    convergent: Option<String>,
    #[arg(long)]
    fixed_point: Option<u64>,
    /// `dexp:K`, a digit list, or `x;y`.
    #[arg(long)]
    nonconvergent: Option<String>,
}

#[derive(Args, Debug)]
struct ApproxArgs {
    #[command(flatten)]
    target: TargetArgs,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value = "1/2,0/2")]
    seed: String,
    #[arg(long, default_value_t = 128)]
    prec: u64,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "speed_target")]
struct SpeedTarget {
    #[arg(long)]
    fixed_point: Option<u64>,
    /// `w;xi` where w is a binary word and xi a scalar or periodic digits.
    #[arg(long)]
    finite_ts: Option<String>,
}

#[derive(Args, Debug)]
struct SpeedArgs {
    #[command(flatten)]
    target: SpeedTarget,
    /// Rational, decimal, `bound` or `bound-DELTA`.
    #[arg(long)]
    eta: String,
    #[arg(long, default_value_t = 60)]
    steps: usize,
    #[arg(long, default_value_t = 256)]
    prec: u64,
    #[arg(long, default_value = "1/2,0/2")]
    seed: String,
}

/// Rendered result of a subcommand.
struct Out {
    table: Vec<String>,
    json: Value,
    csv: Option<(Vec<String>, Vec<Vec<String>>)>,
    code: i32,
}

impl Out {
    fn new(table: Vec<String>, json: Value) -> Out {
        Out { table, json, csv: None, code: 0 }
    }
}

pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e);
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli.cmd) {
        Ok(o) => {
            let _ = emit(&o, cli.format, out);
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

fn emit(o: &Out, fmt: OutputFormat, w: &mut dyn Write) -> std::io::Result<()> {
    match fmt {
        OutputFormat::Table => {
            for l in &o.table {
                writeln!(w, "{}", l)?;
            }
        }
        OutputFormat::Json => {
            let mut v = o.json.clone();
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
            }
            writeln!(w, "{}", serde_json::to_string(&v).expect("serializable"))?;
        }
        OutputFormat::Csv => {
            let mut c = csv::Writer::from_writer(Vec::new());
            match &o.csv {
                Some((h, rows)) => {
                    c.write_record(h)?;
                    for r in rows {
                        c.write_record(r)?;
                    }
                }
                None => {
                    c.write_record(["key", "value"])?;
                    if let Value::Object(m) = &o.json {
                        for (k, v) in m {
                            let s = match v {
                                Value::String(s) => s.clone(),
                                other => other.to_string(),
                            };
                            c.write_record([k.as_str(), s.as_str()])?;
                        }
                    }
                }
            }
            w.write_all(&c.into_inner().map_err(|e| e.into_error())?)?;
        }
    }
    Ok(())
}

fn dispatch(cmd: &Cmd) -> Result<Out> {
    match cmd {
        Cmd::Tree(t) => tree(t),
        Cmd::Encode { x, y, reduce } => encode(&Triple::parse_parts(x, y, *reduce)?),
        Cmd::Decode { word, anchor, repr } => decode(word.as_deref(), anchor, repr.as_deref()),
        Cmd::Tseq { pair, real, prec, max } => tseq(pair.as_deref(), real.as_deref(), *prec, *max),
        Cmd::Farey { what, x } => farey(*what, x),
        Cmd::Approx(a) => approx(a),
        Cmd::Speed(s) => speed(s),
    }
}

fn kv(rows: &[(&str, String)]) -> Vec<String> {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{:<w$}  {}", k, v, w = w)).collect()
}

/// Left-aligned columns separated by two spaces.
fn columns(header: &[String], rows: &[Vec<String>]) -> Vec<String> {
    let mut w: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.len());
        }
    }
    let line = |r: &[String]| {
        r.iter().enumerate().map(|(i, c)| format!("{:<w$}", c, w = w[i])).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    std::iter::once(line(header)).chain(rows.iter().map(|r| line(r))).collect()
}

fn table_out(header: Vec<String>, rows: Vec<Vec<String>>, json: Value) -> Out {
    Out { table: columns(&header, &rows), json, csv: Some((header, rows)), code: 0 }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn tree(t: &TreeCmd) -> Result<Out> {
    match t {
        TreeCmd::Level { n, construction } => {
            if *n < -1 {
                return Err(Error::Parse(format!("level {} < -1", n)));
            }
            let ci: Vec<NodeRecord> = level_counterimage(*n).iter().map(|x| x.record()).collect();
            let recs = match construction {
                Construction::Counterimage => ci,
                Construction::Geometric | Construction::Both => {
                    let g: Vec<NodeRecord> = level_geometric(*n).iter().map(|x| NodeRecord::of(x, *n)).collect();
                    if *construction == Construction::Both && !same_points(&ci, &g) {
                        let mut o = Out::new(
                            vec![format!("level {}: constructions differ", n)],
                            json!({"level": n, "equal": false}),
                        );
                        o.code = 3;
                        return Ok(o);
                    }
                    g
                }
            };
            let header = strings(&["x", "y", "q", "kind"]);
            let rows = recs
                .iter()
                .map(|r| vec![format!("{}/{}", r.p, r.q), format!("{}/{}", r.r, r.q), r.q.to_string(), r.kind.to_string()])
                .collect();
            let json = json!({
                "level": n,
                "construction": format!("{:?}", construction).to_lowercase(),
                "count": recs.len(),
                "records": recs.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            Ok(table_out(header, rows, json))
        }
        TreeCmd::Check { n } => {
            let mut rows = Vec::new();
            let mut all = true;
            for k in -1..=*n {
                let a: Vec<NodeRecord> = level_counterimage(k).iter().map(|x| x.record()).collect();
                let b: Vec<NodeRecord> = level_geometric(k).iter().map(|x| NodeRecord::of(x, k)).collect();
                let eq = same_points(&a, &b);
                all &= eq;
                rows.push(vec![k.to_string(), a.len().to_string(), b.len().to_string(), eq.to_string()]);
            }
            let json = json!({
                "levels": rows.iter().map(|r| json!({"level": r[0], "counterimage": r[1], "geometric": r[2], "equal": r[3] == "true"})).collect::<Vec<_>>(),
                "equal": all,
            });
            let mut o = table_out(strings(&["level", "counterimage", "geometric", "equal"]), rows, json);
            o.code = if all { 0 } else { 3 };
            Ok(o)
        }
        TreeCmd::Complete { qmax, nmax } => {
            let r = completeness_check(*qmax, *nmax);
            let list = |v: &[Triple]| v.iter().map(|t| t.to_text()).collect::<Vec<_>>();
            let mis: Vec<String> = r.misplaced.iter().map(|(t, l, k)| format!("{}@{} rank {}", t.to_text(), l, k)).collect();
            let mut o = Out::new(
                kv(&[
                    ("checked", r.checked.to_string()),
                    ("missing", list(&r.missing).join(" ")),
                    ("duplicates", list(&r.duplicates).join(" ")),
                    ("misplaced", mis.join(" ")),
                    ("ok", r.ok().to_string()),
                ]),
                json!({"qmax": qmax, "nmax": nmax, "checked": r.checked, "missing": list(&r.missing),
                       "duplicates": list(&r.duplicates), "misplaced": mis, "ok": r.ok()}),
            );
            o.code = if r.ok() { 0 } else { 3 };
            Ok(o)
        }
    }
}

fn same_points(a: &[NodeRecord], b: &[NodeRecord]) -> bool {
    let key = |v: &[NodeRecord]| {
        let mut k: Vec<(String, String, String)> = v.iter().map(|r| (r.q.clone(), r.p.clone(), r.r.clone())).collect();
        k.sort();
        k
    };
    key(a) == key(b)
}

fn opt<T: ToString>(r: &Result<T>) -> String {
    r.as_ref().map(|v| v.to_string()).unwrap_or_else(|_| "-".into())
}

fn jopt<T: ToString>(r: &Result<T>) -> Value {
    r.as_ref().map(|v| json!(v.to_string())).unwrap_or(Value::Null)
}

fn encode(t: &Triple) -> Result<Out> {
    let rep = representation_of(t);
    let word = word_of(&rep);
    let m = matrix_of(t);
    let dec = backimage_decomposition(t);
    let rk = rank(t);
    let (anchor, w) = match &word {
        Ok((a, w)) => (a.name().to_string(), w.to_string()),
        Err(_) => ("-".into(), "-".into()),
    };
    let table = kv(&[
        ("point", t.to_text()),
        ("kind", rep.kind.to_string()),
        ("representation", rep.to_string()),
        ("anchor", anchor.clone()),
        ("word", w.clone()),
        ("matrix", opt(&m)),
        ("rank", rk.to_string()),
        ("decomposition", opt(&dec)),
    ]);
    let json = json!({
        "point": t.to_text(),
        "q": t.q().to_string(), "p": t.p().to_string(), "r": t.r().to_string(),
        "kind": rep.kind.to_string(),
        "representation": rep.to_string(),
        "anchor": if word.is_ok() { json!(anchor) } else { Value::Null },
        "word": if word.is_ok() { json!(w) } else { Value::Null },
        "matrix": jopt(&m),
        "rank": rk.to_string(),
        "decomposition": jopt(&dec),
    });
    Ok(Out::new(table, json))
}

fn decode(word: Option<&str>, anchor: &str, repr: Option<&str>) -> Result<Out> {
    let t = match (word, repr) {
        (Some(w), _) => {
            let w: Word = w.parse()?;
            let a: Anchor = anchor.parse()?;
            if a == Anchor::Root {
                representation_of_word(&w)?;
            }
            walk(a, &w)?.1
        }
        (None, Some(r)) => point_of(&r.parse::<Representation>()?)?,
        (None, None) => return Err(Error::Parse("need --word or --repr".into())),
    };
    let rep = representation_of(&t);
    Ok(Out::new(
        vec![t.to_text()],
        json!({"point": t.to_text(), "q": t.q().to_string(), "p": t.p().to_string(), "r": t.r().to_string(),
               "representation": rep.to_string()}),
    ))
}

fn split_pair(s: &str) -> Result<(&str, &str)> {
    s.split_once(';').ok_or_else(|| Error::Parse(format!("expected 'x;y', got '{}'", s)))
}

fn budget(prec: u64) -> Budget {
    let d = Budget::default();
    Budget { bits: prec, max_bits: d.max_bits.max(prec), ..d }
}

fn tseq(pair: Option<&str>, real: Option<&str>, prec: u64, max: usize) -> Result<Out> {
    if let Some(p) = pair {
        let t = Triple::parse(p, true)?;
        let (s, rem, kind) = triangle_sequence_rational(&t);
        return Ok(Out::new(
            kv(&[("sequence", s.to_string()), ("remainder", rem.to_string()), ("kind", kind.to_string())]),
            json!({"point": t.to_text(), "sequence": s.to_string(), "digits": s.digits.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                   "complete": s.complete, "remainder": rem.to_string(), "kind": kind.to_string()}),
        ));
    }
    let (x, y) = split_pair(real.unwrap_or_default())?;
    let pr = RealPair::new(x.trim().parse::<RealScalar>()?, y.trim().parse::<RealScalar>()?)?;
    let e = triangle_sequence_real(&pr, max, &budget(prec))?;
    let finished = e.forms.0[2].iter().all(|c| c.is_zero()) || e.pair.form_is_zero(&e.forms.0[2]) == Some(true);
    let rem = if finished { e.remainder_enclosure(prec).ok() } else { None };
    let rem_s = rem.as_ref().map(iv_text).unwrap_or_else(|| "-".into());
    Ok(Out::new(
        kv(&[("sequence", e.seq.to_string()), ("digits", e.seq.len().to_string()), ("remainder", rem_s.clone())]),
        json!({"sequence": e.seq.to_string(), "digits": e.seq.digits.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
               "complete": e.seq.complete, "remainder": rem.as_ref().map(iv_json)}),
    ))
}

fn iv_text(iv: &Interval) -> String {
    format!("[{}, {}]", dyadic_to_sci(iv.lo(), 17, false), dyadic_to_sci(iv.hi(), 17, true))
}

fn iv_json(iv: &Interval) -> Value {
    json!({"lo": dyadic_to_sci(iv.lo(), 17, false), "hi": dyadic_to_sci(iv.hi(), 17, true)})
}

fn farey(what: FareyWhat, x: &str) -> Result<Out> {
    let f = Frac::from_rat(&parse_rat(x)?)?;
    let v = match what {
        FareyWhat::Cf => cf_expand(&f).to_string(),
        FareyWhat::Rank => farey_rank(&f)?.to_string(),
        FareyWhat::Matrix => farey_matrix(&f)?.to_string(),
        FareyWhat::Code => farey_code(&f).to_string(),
    };
    let key = format!("{:?}", what).to_lowercase();
    Ok(Out::new(vec![v.clone()], json!({"x": f.to_string(), key: v})))
}

fn approx(a: &ApproxArgs) -> Result<Out> {
    let t = &a.target;
    if let Some(spec) = &t.nonconvergent {
        return nonconvergent(spec, a.steps, a.prec);
    }
    let target = if let Some(r) = &t.repr {
        ApproximationTarget::parse_repr(r)?
    } else if let Some(c) = &t.convergent {
        ApproximationTarget::ConvergentTs(c.parse()?)
    } else if let Some(d) = t.fixed_point {
        ApproximationTarget::PeriodicD { d, seed: Triple::parse(&a.seed, true)? }
    } else {
        return Err(Error::Parse("no target".into()));
    };
    let rows = approximants(&target, a.steps)?;
    let header = strings(&["j", "word", "x", "y", "representation"]);
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.j.to_string(),
                r.word.to_string(),
                format!("{}/{}", r.triple.p(), r.triple.q()),
                format!("{}/{}", r.triple.r(), r.triple.q()),
                r.representation.to_string(),
            ]
        })
        .collect();
    let json = json!({"rows": rows.iter().map(|r| json!({
        "j": r.j, "word": r.word.to_string(), "point": r.triple.to_text(),
        "node": r.matrix.node().to_string(), "representation": r.representation.to_string(),
    })).collect::<Vec<_>>()});
    Ok(table_out(header, body, json))
}

fn nonconvergent(spec: &str, steps: usize, prec: u64) -> Result<Out> {
    let pair = if let Some(k) = spec.strip_prefix("dexp:") {
        let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad K in '{}'", spec)))?;
        let t = rational_standin(&DigitStream::DoubleExponential.prefix(k + 1));
        RealPair::rational(t.x(), t.y())
    } else if spec.trim_start().starts_with('[') {
        let d: DigitStream = spec.parse()?;
        let t = rational_standin(&d.prefix(64));
        RealPair::rational(t.x(), t.y())
    } else {
        let (x, y) = split_pair(spec)?;
        RealPair::new(x.trim().parse()?, y.trim().parse()?)?
    };
    let rows = approximants_nonconvergent(&pair, steps, &budget(prec), prec)?;
    let header = strings(&["j", "representation", "x", "y", "xi", "err_alpha_hi", "err_beta_hi"]);
    let xi = |r: &crate::approximation::NonConvergentRow| match &r.xi_exact {
        Some(x) => x.to_string(),
        None => iv_text(&r.xi),
    };
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.j.to_string(),
                r.representation.to_string(),
                format!("{}/{}", r.triple.p(), r.triple.q()),
                format!("{}/{}", r.triple.r(), r.triple.q()),
                xi(r),
                dyadic_to_sci(r.err_alpha.hi(), 6, true),
                dyadic_to_sci(r.err_beta.hi(), 6, true),
            ]
        })
        .collect();
    let json = json!({"rows": rows.iter().map(|r| json!({
        "j": r.j, "representation": r.representation.to_string(), "point": r.triple.to_text(), "xi": xi(r),
        "err_alpha": iv_json(&r.err_alpha), "err_beta": iv_json(&r.err_beta),
    })).collect::<Vec<_>>()});
    Ok(table_out(header, body, json))
}

/// Exact decimal such as `3.9` or `-0.1`.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    let Some((a, b)) = s.split_once('.') else { return parse_rat(s) };
    let neg = a.starts_with('-');
    let digits = format!("{}{}", a.trim_start_matches(['-', '+']), b);
    let n: Int = digits.parse().map_err(|_| Error::Parse(format!("bad decimal '{}'", s)))?;
    let r = Rat::new(n, num_traits::pow(Int::from(10), b.len()));
    Ok(if neg { -r } else { r })
}

fn parse_eta(s: &str, d: Option<u64>, bits: u64) -> Result<Rat> {
    let s = s.trim();
    let Some(rest) = s.strip_prefix("bound") else { return parse_decimal(s) };
    let d = d.ok_or_else(|| Error::Parse("'bound' needs --fixed-point".into()))?;
    let b = exponent_bound(d, bits)?;
    // lower end of the enclosure: never overshoots the bound
    let base = b.exact.unwrap_or_else(|| b.enclosure.lo().to_rat());
    let delta = if rest.is_empty() { Rat::zero() } else { parse_decimal(rest)? };
    Ok(base + delta)
}

fn speed(a: &SpeedArgs) -> Result<Out> {
    let eta = parse_eta(&a.eta, a.target.fixed_point, a.prec)?;
    let rows = if let Some(d) = a.target.fixed_point {
        periodic_speed(d, &eta, a.steps, &Triple::parse(&a.seed, true)?, a.prec)?
    } else {
        let spec = a.target.finite_ts.as_deref().unwrap_or_default();
        let (w, xi) = split_pair(spec)?;
        let w: PhiWord = w.trim().parse()?;
        let xi = xi.trim();
        let xi_scalar = if xi.starts_with('[') { cf_scalar(&xi.parse()?)? } else { xi.parse::<RealScalar>()? };
        finite_ts_speed(&w, &xi_scalar, a.steps, &eta, a.prec)?
    };
    Ok(error_table(&rows, &eta))
}

fn error_table(rows: &[ErrorRow], eta: &Rat) -> Out {
    let header = strings(&ERROR_CSV_HEADER);
    let body: Vec<Vec<String>> = rows.iter().map(|r| r.fields()).collect();
    let json = json!({
        "eta": eta.to_string(),
        "rows": body.iter().map(|f| {
            let mut m = serde_json::Map::new();
            for (h, v) in ERROR_CSV_HEADER.iter().zip(f) {
                m.insert(h.to_string(), json!(v));
            }
            Value::Object(m)
        }).collect::<Vec<_>>(),
    });
    table_out(header, body, json)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("tritree").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn encode_decode() {
        let (c, o, _) = call(&["encode", "19/54", "14/54", "--format", "json"]);
        assert_eq!(c, 0);
        let v: Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["representation"], "[2,0,1,1];[2,2]");
        assert_eq!(v["word"], "LLIILIILR");
        assert_eq!(v["rank"], "9");
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["matrix"], "[[23,31,11],[8,11,4],[6,8,3]]");
        let (c, o, _) = call(&["decode", "--word", "LLIILIILR"]);
        assert_eq!((c, o.trim()), (0, "19/54,14/54"));
        let (_, o, _) = call(&["decode", "--repr", "[2,0,1,1];[2,2]"]);
        assert_eq!(o.trim(), "19/54,14/54");
    }

    #[test]
    fn tree_level_json() {
        let (c, o, _) = call(&["tree", "level", "1", "--format", "json"]);
        assert_eq!(c, 0);
        let v: Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["records"].as_array().unwrap().len(), 7);
        let (c, _, _) = call(&["tree", "check", "5"]);
        assert_eq!(c, 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["encode", "1/2", "x"]).0, 2);
        assert_eq!(call(&["encode", "1/2", "3/2"]).0, 3);
        assert_eq!(call(&["decode", "--word", "R"]).0, 3);
        assert_eq!(call(&["bogus"]).0, 2);
        let (c, _, e) = call(&["encode", "2/3", "1/3", "--reduce"]);
        assert_eq!(c, 0, "{}", e);
    }

    #[test]
    fn farey_and_tseq() {
        assert_eq!(call(&["farey", "cf", "7/12"]).1.trim(), "[1,1,2,2]");
        assert_eq!(call(&["farey", "rank", "7/12"]).1.trim(), "4");
        assert_eq!(call(&["farey", "matrix", "7/12"]).1.trim(), "[[3,4],[5,7]]");
        let (c, o, e) = call(&["tseq", "--real", "1/2;poly:-1,2,1;iv:0,1", "--format", "json"]);
        assert_eq!(c, 0, "{}", e);
        let v: Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["sequence"], "[1,1]");
    }

    #[test]
    fn speed_csv() {
        let (c, o, e) = call(&["speed", "--fixed-point", "4", "--eta", "bound-0.1", "--steps", "5", "--format", "csv"]);
        assert_eq!(c, 0, "{}", e);
        let mut lines = o.lines();
        assert_eq!(lines.next().unwrap(), ERROR_CSV_HEADER.join(","));
        assert_eq!(o.lines().count(), 6);
        let (c, _, e) = call(&["speed", "--finite-ts", "11001010;[2]*", "--eta", "3.9", "--steps", "8"]);
        assert_eq!(c, 0, "{}", e);
        assert_eq!(parse_decimal("-0.25").unwrap(), Rat::new((-1).into(), 4.into()));
    }

    #[test]
    fn approx_rows() {
        let (c, o, e) = call(&["approx", "--repr", "[1,1];[4,1]*", "--steps", "9", "--format", "csv"]);
        assert_eq!(c, 0, "{}", e);
        assert!(o.lines().nth(10).unwrap().contains("23/46"));
        let (c, _, e) = call(&["approx", "--nonconvergent", "dexp:3", "--steps", "3"]);
        assert_eq!(c, 0, "{}", e);
    }
}
