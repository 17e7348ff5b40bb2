//! Evaluation-based certificates: independence by exact rank at sampled
//! points, spanning by straightening every monomial.
//!
//! Candidates are grouped by torus weight before ranking. Functions of
//! different weight are independent on any torus-stable variety, so the
//! total rank is the sum of the block ranks.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::index::sample as sample_indices;
use serde::Serialize;

use crate::exactla::{ExactMatrix, Rational, RowSpace};
use crate::exec::{stream_rng, Exec};
use crate::shapes::{
    is_saturated, lambda_rs, partitions_bounded, unbracket, OrderTag, Partition, RationalShape, SaturatedSet,
};
use crate::tableaux::{
    canonical, canonical_rational, enumerate_gl, enumerate_rational, enumerate_symplectic, RationalTableau, Shape,
    Tableau,
};
use crate::{Error, Result};

use super::eval::Evaluator;
use super::key::{Cols, Key};
use super::sample::{sample_points, xrs_point, xrs_point_from, PointSample, SampleOptions};
use super::straighten::Straightener;
use super::{Bitableau, Context, ContextKind, StraightTerm};

const RESAMPLE_STREAM: u64 = 1 << 20;
const CHECK_STREAM: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Degree {
    /// Total degree in a single-block context.
    Total(usize),
    /// Bigrade `(r, s)` in a two-block context.
    Bi(usize, usize),
    /// Spans indexed by a saturated set rather than a degree.
    Saturated,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Total(r) => write!(f, "{r}"),
            Degree::Bi(r, s) => write!(f, "({r},{s})"),
            Degree::Saturated => write!(f, "saturated"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Evidence attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub detail: String,
    /// Nonzero coefficients of a linear relation, when one was found.
    pub relation: Vec<(String, Rational)>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Evaluation points; defaults to the largest weight block plus 8.
    pub points: Option<usize>,
    /// Points used for round-trip checks of straightening certificates.
    pub check_points: usize,
    pub exec: Exec,
    pub sample: SampleOptions,
    /// Cap on the bitableaux straightened by span and factorisation checks.
    pub max_fillings: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0x5eed,
            points: None,
            check_points: 3,
            exec: Exec::default(),
            sample: SampleOptions::default(),
            max_fillings: 4096,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceCert {
    pub candidate_count: usize,
    pub eval_rank: usize,
    pub points_used: usize,
    pub independent: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub context: String,
    pub degree: Degree,
    pub candidate_count: usize,
    pub eval_rank: usize,
    pub points_used: usize,
    pub monomials_checked: usize,
    pub spanning_ok: bool,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct NablaBasis {
    pub terms: Vec<StraightTerm>,
    pub eval_rank: usize,
    pub independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XLocusReport {
    pub m: usize,
    pub r: usize,
    pub s: usize,
    pub bigrade: (usize, usize),
    /// d-free standard bideterminants on `X`.
    pub on_x: IndependenceCert,
    /// Those with `l(λ¹) ≤ r`, `l(λ²) ≤ s` on `X_{r,s}`.
    pub on_xrs: IndependenceCert,
    pub highest_weight_nonzero: bool,
    pub highest_weight_checked: usize,
}

type Cand = (u32, Key);

fn plain_key(s: &Tableau, t: &Tableau) -> Key {
    Key(vec![Cols::of(s, t)])
}

fn rational_key(s: &RationalTableau, t: &RationalTableau) -> Key {
    Key(vec![Cols::of(&s.t1, &t.t1), Cols::of(&s.t2, &t.t2)])
}

fn pairs<T>(left: &[T], right: &[T], mut f: impl FnMut(&T, &T)) {
    for s in left {
        for t in right {
            f(s, t);
        }
    }
}

fn plain_standard(ctx: &Context, shape: &Partition) -> Vec<Tableau> {
    match ctx.kind().regime() {
        crate::tableaux::Regime::Gl => enumerate_gl(shape, ctx.alphabet()),
        _ => enumerate_symplectic(shape, ctx.alphabet()),
    }
}

fn standard_keys_of_shape(ctx: &Context, shape: &Shape) -> Vec<Key> {
    let mut out = Vec::new();
    match shape {
        Shape::Plain(p) => {
            let ts = plain_standard(ctx, p);
            pairs(&ts, &ts, |s, t| out.push(plain_key(s, t)));
        }
        Shape::Rational(r) => {
            let ts = enumerate_rational(r, ctx.alphabet());
            pairs(&ts, &ts, |s, t| out.push(rational_key(s, t)));
        }
    }
    out
}

fn candidates(ctx: &Context, degree: Degree) -> Result<Vec<Cand>> {
    let kind = ctx.kind();
    let keep_d = |t: usize| if kind.folds_d() { 0 } else { t as u32 };
    let mut out = Vec::new();
    match (kind.two_block(), degree) {
        (false, Degree::Total(r)) => {
            let max_t = if kind == ContextKind::Mat { 0 } else { r / 2 };
            let max_len = if kind == ContextKind::Mat { ctx.size() } else { ctx.alphabet().m() };
            for t in 0..=max_t {
                for p in partitions_bounded(r - 2 * t, max_len) {
                    for k in standard_keys_of_shape(ctx, &Shape::Plain(p)) {
                        out.push((keep_d(t), k));
                    }
                }
            }
        }
        (true, Degree::Bi(r, s)) => {
            let m = ctx.size();
            for t in 0..=r.min(s) {
                for l1 in partitions_bounded(r - t, m) {
                    for l2 in partitions_bounded(s - t, m - l1.len()) {
                        let shape = Shape::Rational(RationalShape::new(l1.clone(), l2, m));
                        for k in standard_keys_of_shape(ctx, &shape) {
                            out.push((keep_d(t), k));
                        }
                    }
                }
            }
        }
        _ => return Err(Error::ContextMismatch(format!("degree {degree} does not fit {ctx}"))),
    }
    Ok(out)
}

fn cand_term(ctx: &Context, c: &Cand) -> StraightTerm {
    StraightTerm { coeff: BigInt::from(1), dpow: c.0, bitab: c.1.to_bitableau(ctx) }
}

fn describe(ctx: &Context, c: &Cand) -> String {
    let b = c.1.to_bitableau(ctx).display_with(ctx.alphabet());
    match c.0 {
        0 => b,
        1 => format!("d·{b}"),
        t => format!("d^{t}·{b}"),
    }
}

/// The claimed basis of a graded piece: all `dᵗ(S|T)` of that degree.
pub fn basis_candidates(ctx: &Context, degree: Degree) -> Result<Vec<StraightTerm>> {
    Ok(candidates(ctx, degree)?.iter().map(|c| cand_term(ctx, c)).collect())
}

/// Torus weight of a candidate, used to block the rank computation.
fn weight_key(ctx: &Context, c: &Cand) -> Vec<i64> {
    let a = ctx.alphabet();
    let key = &c.1;
    let counts = |block: usize, right: bool| {
        let mut v = vec![0i64; a.n()];
        for l in key.letters(block, right) {
            v[l - 1] += 1;
        }
        v
    };
    let sym = |right: bool| crate::tableaux::symplectic_weight_of(key.letters(0, right), a);
    let rat = |right: bool| {
        let (p, q) = (counts(0, right), counts(1, right));
        p.iter().zip(&q).map(|(x, y)| x - y).collect::<Vec<_>>()
    };
    let t = c.0 as i64;
    match ctx.kind() {
        ContextKind::Mat => [counts(0, false), counts(0, true)].concat(),
        ContextKind::Spm => [vec![key.sizes()[0] as i64 + 2 * t], sym(false), sym(true)].concat(),
        ContextKind::Sp => [sym(false), sym(true)].concat(),
        ContextKind::Monoid => {
            let (r, s) = key.shape_sizes();
            [vec![r as i64 + t, s as i64 + t], rat(false), rat(true)].concat()
        }
        ContextKind::Glrat => [rat(false), rat(true)].concat(),
    }
}

fn evaluate_all(ctx: &Context, cands: &[Cand], points: &[PointSample], exec: Exec) -> Result<Vec<Vec<Rational>>> {
    let one = Rational::from_i64(1);
    exec.map(points, |p| {
        let mut ev = Evaluator::new(ctx, p)?;
        Ok(cands.iter().map(|(t, k)| ev.key_term(&one, *t, k)).collect())
    })
    .into_iter()
    .collect()
}

struct Ranked {
    rank: usize,
    witness: Option<Witness>,
}

fn rank_blocks(
    ctx: &Context,
    cands: &[Cand],
    blocks: &BTreeMap<Vec<i64>, Vec<usize>>,
    values: &[Vec<Rational>],
) -> Ranked {
    let mut rank = 0;
    let mut witness = None;
    for (w, idx) in blocks {
        let vec_of = |c: usize| values.iter().map(|row| row[c].clone()).collect::<Vec<_>>();
        let mut rs = RowSpace::new(values.len());
        let mut seen = Vec::new();
        for &c in idx {
            let v = vec_of(c);
            seen.push(c);
            if rs.insert(&v) {
                rank += 1;
            } else if witness.is_none() {
                let cols: Vec<Vec<Rational>> = seen.iter().map(|&k| vec_of(k)).collect();
                let null = ExactMatrix::from_columns(values.len(), &cols).nullspace();
                let relation = null
                    .first()
                    .map(|n| {
                        seen.iter()
                            .zip(n)
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(&k, x)| (describe(ctx, &cands[k]), x.clone()))
                            .collect()
                    })
                    .unwrap_or_default();
                witness = Some(Witness {
                    kind: "dependent".into(),
                    detail: format!("{} in weight block {w:?}", describe(ctx, &cands[c])),
                    relation,
                });
            }
        }
    }
    Ranked { rank, witness }
}

/// Rank certificate at points produced by `points_for(round, count)`;
/// a second round with fresh points runs when the first is deficient.
fn certify_with<F>(ctx: &Context, cands: &[Cand], opts: &VerifyOptions, points_for: F) -> Result<IndependenceCert>
where
    F: Fn(u64, usize) -> Result<Vec<PointSample>>,
{
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, c) in cands.iter().enumerate() {
        blocks.entry(weight_key(ctx, c)).or_default().push(i);
    }
    let max_block = blocks.values().map(Vec::len).max().unwrap_or(0);
    let count = opts.points.unwrap_or(max_block + 8);
    let mut last = None;
    for round in 0..2 {
        let points = points_for(round, count)?;
        let values = evaluate_all(ctx, cands, &points, opts.exec)?;
        let ranked = rank_blocks(ctx, cands, &blocks, &values);
        let done = ranked.rank == cands.len();
        last = Some((ranked, points.len()));
        if done {
            break;
        }
    }
    let (ranked, points_used) = last.expect("at least one round");
    Ok(IndependenceCert {
        candidate_count: cands.len(),
        eval_rank: ranked.rank,
        points_used,
        independent: ranked.rank == cands.len(),
        witness: ranked.witness,
    })
}

fn context_points<'a>(ctx: &Context, opts: &'a VerifyOptions) -> impl Fn(u64, usize) -> Result<Vec<PointSample>> + 'a {
    let ctx = ctx.clone();
    move |round, count| sample_points(&ctx, count, opts.seed, round * RESAMPLE_STREAM, &opts.sample)
}

fn term_cand(t: &StraightTerm) -> Result<Cand> {
    Ok((t.dpow, Key::from_bitableau(&t.bitab)?))
}

/// Independence of arbitrary terms at random points of the context.
pub fn certify_independent(ctx: &Context, terms: &[StraightTerm], opts: &VerifyOptions) -> Result<IndependenceCert> {
    let cands: Vec<Cand> = terms.iter().map(term_cand).collect::<Result<_>>()?;
    let mut cert = certify_with(ctx, &cands, opts, context_points(ctx, opts))?;
    if terms.iter().any(|t| !t.coeff.is_zero() && t.coeff != BigInt::from(1)) {
        // Nonzero scalars do not change the rank.
        cert.witness = cert.witness.map(|w| Witness { detail: format!("{} (coefficients ignored)", w.detail), ..w });
    }
    Ok(cert)
}

/// Every monomial of a degree, as a one-row bitableau.
pub fn degree_monomials(ctx: &Context, degree: Degree) -> Result<Vec<Bitableau>> {
    let n = ctx.size();
    let vars: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let rows = |r: usize| -> Vec<(Tableau, Tableau)> {
        multisets(vars.len(), r)
            .into_iter()
            .map(|ms| {
                let (s, t): (Vec<usize>, Vec<usize>) = ms.iter().map(|&k| vars[k]).unzip();
                (Tableau::row(&s), Tableau::row(&t))
            })
            .collect()
    };
    match (ctx.kind().two_block(), degree) {
        (false, Degree::Total(r)) => Ok(rows(r).into_iter().map(|(s, t)| Bitableau::Plain { s, t }).collect()),
        (true, Degree::Bi(r, s)) => {
            let (xs, ys) = (rows(r), rows(s));
            let mut out = Vec::new();
            pairs(&xs, &ys, |(s1, t1), (s2, t2)| {
                out.push(Bitableau::Rational {
                    s: RationalTableau::new(s1.clone(), s2.clone(), n),
                    t: RationalTableau::new(t1.clone(), t2.clone(), n),
                })
            });
            Ok(out)
        }
        _ => Err(Error::ContextMismatch(format!("degree {degree} does not fit {ctx}"))),
    }
}

/// Weakly increasing sequences of length `r` over `0..n`.
fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Straightens every input, checks each term lies in `allowed` and that the
/// expansion reproduces the input at the check points.
fn check_spanning(
    ctx: &Context,
    inputs: &[Bitableau],
    allowed: &HashSet<Cand>,
    opts: &VerifyOptions,
) -> Result<Option<Witness>> {
    let points = sample_points(ctx, opts.check_points, opts.seed, CHECK_STREAM, &opts.sample)?;
    let results = opts.exec.map_init(
        inputs,
        || {
            let evs: Vec<Evaluator> = points.iter().map(|p| Evaluator::new(ctx, p).expect("context point")).collect();
            (Straightener::new(ctx), evs)
        },
        |(st, evs), b| -> Result<Option<Witness>> {
            let e = st.straighten(b)?;
            let a = ctx.alphabet();
            for t in &e.terms {
                let c = term_cand(t)?;
                if !allowed.contains(&c) {
                    return Ok(Some(Witness {
                        kind: "outside candidate set".into(),
                        detail: format!("{} straightens to {}", b.display_with(a), describe(ctx, &c)),
                        relation: Vec::new(),
                    }));
                }
            }
            for ev in evs.iter_mut() {
                if ev.bitableau(b)? != ev.expr(&e)? {
                    return Ok(Some(Witness {
                        kind: "round trip".into(),
                        detail: format!("{} ≠ {}", b.display_with(a), e.display_with(a)),
                        relation: Vec::new(),
                    }));
                }
            }
            Ok(None)
        },
    );
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn report(
    ctx: &Context,
    degree: Degree,
    cert: IndependenceCert,
    checked: usize,
    span_witness: Option<Witness>,
) -> BasisReport {
    let spanning_ok = span_witness.is_none();
    let pass = cert.independent && spanning_ok;
    BasisReport {
        context: ctx.to_string(),
        degree,
        candidate_count: cert.candidate_count,
        eval_rank: cert.eval_rank,
        points_used: cert.points_used,
        monomials_checked: checked,
        spanning_ok,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witness: cert.witness.or(span_witness),
    }
}

/// Certifies that the standard `dᵗ(S|T)` of a degree form a basis of that
/// graded piece (for `Sp`/`GL`: of the image of that piece).
pub fn verify_basis(ctx: &Context, degree: Degree, opts: &VerifyOptions) -> Result<BasisReport> {
    let cands = candidates(ctx, degree)?;
    let cert = certify_with(ctx, &cands, opts, context_points(ctx, opts))?;
    let monomials = degree_monomials(ctx, degree)?;
    let allowed: HashSet<Cand> = cands.into_iter().collect();
    let span = check_spanning(ctx, &monomials, &allowed, opts)?;
    Ok(report(ctx, degree, cert, monomials.len(), span))
}

fn canonical_of(ctx: &Context, shape: &Shape) -> Result<Bitableau> {
    let a = ctx.alphabet();
    match (shape, ctx.kind().two_block()) {
        (Shape::Plain(p), false) => {
            let max_len = if ctx.kind() == ContextKind::Mat { a.n() } else { a.m() };
            if p.len() > max_len {
                return Err(Error::Inadmissible(format!("{p} has more than {max_len} rows")));
            }
            let tl = canonical(p);
            Ok(Bitableau::Plain { s: tl.clone(), t: tl })
        }
        (Shape::Rational(r), true) => {
            let tl = canonical_rational(r)?;
            Ok(Bitableau::Rational { s: tl.clone(), t: tl })
        }
        _ => Err(Error::ShapeMismatch(format!("shape kind does not fit {ctx}"))),
    }
}

/// `(T_λ|T)` (right) or `(T|T_λ)` (left) over standard `T`, with an
/// independence certificate.
pub fn nabla_basis(shape: &Shape, ctx: &Context, side: Side, opts: &VerifyOptions) -> Result<NablaBasis> {
    let canon = canonical_of(ctx, shape)?;
    let terms: Vec<StraightTerm> = match (&canon, shape) {
        (Bitableau::Plain { s: tl, .. }, Shape::Plain(p)) => plain_standard(ctx, p)
            .into_iter()
            .map(|t| match side {
                Side::Right => Bitableau::Plain { s: tl.clone(), t },
                Side::Left => Bitableau::Plain { s: t, t: tl.clone() },
            })
            .map(|bitab| StraightTerm { coeff: BigInt::from(1), dpow: 0, bitab })
            .collect(),
        (Bitableau::Rational { s: tl, .. }, Shape::Rational(r)) => enumerate_rational(r, ctx.alphabet())
            .into_iter()
            .map(|t| match side {
                Side::Right => Bitableau::Rational { s: tl.clone(), t },
                Side::Left => Bitableau::Rational { s: t, t: tl.clone() },
            })
            .map(|bitab| StraightTerm { coeff: BigInt::from(1), dpow: 0, bitab })
            .collect(),
        _ => unreachable!(),
    };
    let cert = certify_independent(ctx, &terms, opts)?;
    Ok(NablaBasis { terms, eval_rank: cert.eval_rank, independent: cert.independent })
}

/// All fillings of a shape with letters of the alphabet, in odometer order.
fn plain_fillings(p: &Partition, n: usize) -> Vec<Tableau> {
    let cells = p.size();
    let total = n.checked_pow(cells as u32).unwrap_or(usize::MAX);
    (0..total)
        .map(|mut code| {
            let mut rows = Vec::new();
            for &len in p.parts() {
                let mut row = Vec::with_capacity(len);
                for _ in 0..len {
                    row.push(code % n + 1);
                    code /= n;
                }
                rows.push(row);
            }
            Tableau::from_rows(rows).expect("shape rows")
        })
        .collect()
}

fn fillings(ctx: &Context, shape: &Shape) -> Vec<Bitableau> {
    let n = ctx.size();
    match shape {
        Shape::Plain(p) => {
            let f = plain_fillings(p, n);
            let mut out = Vec::new();
            pairs(&f, &f, |s, t| out.push(Bitableau::Plain { s: s.clone(), t: t.clone() }));
            out
        }
        Shape::Rational(r) => {
            let f1 = plain_fillings(&r.lambda1, n);
            let f2 = plain_fillings(&r.lambda2, n);
            let mut sides = Vec::new();
            pairs(&f1, &f2, |a, b| sides.push(RationalTableau::new(a.clone(), b.clone(), n)));
            let mut out = Vec::new();
            pairs(&sides, &sides, |s, t| out.push(Bitableau::Rational { s: s.clone(), t: t.clone() }));
            out
        }
    }
}

fn capped<T: Clone>(items: Vec<T>, cap: usize, seed: u64, stream: u64) -> Vec<T> {
    if items.len() <= cap {
        return items;
    }
    let mut idx = sample_indices(&mut stream_rng(seed, stream), items.len(), cap).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| items[i].clone()).collect()
}

/// Shapes named by the weights of a saturated set, for the context's regime.
fn shapes_of(pi: &SaturatedSet, ctx: &Context) -> Result<Vec<Shape>> {
    pi.weights
        .iter()
        .map(|w| match ctx.kind() {
            ContextKind::Mat | ContextKind::Sp => {
                let parts: Vec<usize> = w
                    .entries()
                    .iter()
                    .map(|&e| usize::try_from(e).map_err(|_| Error::Inadmissible(format!("{w} is not a partition"))))
                    .collect::<Result<_>>()?;
                Ok(Shape::Plain(Partition::new(parts)?))
            }
            _ => Ok(Shape::Rational(unbracket(w))),
        })
        .collect()
}

/// Certifies that the standard `(S|T)` with shapes in `π` form a basis of
/// the span of all `(S|T)` with shapes in `π`.
pub fn o_pi_span(pi: &SaturatedSet, ctx: &Context, opts: &VerifyOptions) -> Result<BasisReport> {
    let expected = match ctx.kind() {
        ContextKind::Mat | ContextKind::Glrat => OrderTag::A,
        ContextKind::Sp => OrderTag::C,
        _ => {
            return Err(Error::ContextMismatch(format!("O_π spans are defined here for mat, sp and glrat, not {ctx}")))
        }
    };
    if pi.order != expected {
        return Err(Error::ContextMismatch(format!("{ctx} needs a type {expected:?} saturated set")));
    }
    let width = if ctx.kind() == ContextKind::Sp { ctx.alphabet().m() } else { ctx.size() };
    if pi.weights.iter().any(|w| w.len() != width) {
        return Err(Error::DimensionMismatch(format!("weights of {ctx} have {width} entries")));
    }
    if !is_saturated(pi, &pi.default_universe()) {
        return Err(Error::NotSaturated(format!("{} weights", pi.len())));
    }
    let shapes = shapes_of(pi, ctx)?;
    let mut cands = Vec::new();
    let mut inputs = Vec::new();
    for (k, shape) in shapes.iter().enumerate() {
        cands.extend(standard_keys_of_shape(ctx, shape).into_iter().map(|key| (0u32, key)));
        inputs.extend(capped(fillings(ctx, shape), opts.max_fillings, opts.seed, CHECK_STREAM + 1 + k as u64));
    }
    let cert = certify_with(ctx, &cands, opts, context_points(ctx, opts))?;
    let allowed: HashSet<Cand> = cands.into_iter().collect();
    let span = check_spanning(ctx, &inputs, &allowed, opts)?;
    Ok(report(ctx, Degree::Saturated, cert, inputs.len(), span))
}

fn same_shape(b: &Bitableau, shape: &Shape) -> bool {
    match (b, shape) {
        (Bitableau::Plain { s, .. }, Shape::Plain(p)) => s.shape() == p,
        (Bitableau::Rational { s, .. }, Shape::Rational(r)) => s.t1.shape() == &r.lambda1 && s.t2.shape() == &r.lambda2,
        _ => false,
    }
}

fn split(b: &Bitableau) -> (Bitableau, Bitableau) {
    match b {
        Bitableau::Plain { s, t } => (
            Bitableau::Plain { s: s.clone(), t: Tableau::empty() },
            Bitableau::Plain { s: Tableau::empty(), t: t.clone() },
        ),
        Bitableau::Rational { s, t } => {
            let e = RationalTableau::new(Tableau::empty(), Tableau::empty(), s.m);
            (Bitableau::Rational { s: s.clone(), t: e.clone() }, Bitableau::Rational { s: e, t: t.clone() })
        }
    }
}

fn with_sides(left: &Bitableau, right: &Bitableau) -> Bitableau {
    match (left, right) {
        (Bitableau::Plain { s, .. }, Bitableau::Plain { t, .. }) => Bitableau::Plain { s: s.clone(), t: t.clone() },
        (Bitableau::Rational { s, .. }, Bitableau::Rational { t, .. }) => {
            Bitableau::Rational { s: s.clone(), t: t.clone() }
        }
        _ => unreachable!(),
    }
}

/// Top-shape coefficients of a straightening, keyed by the left and right
/// halves of each term.
fn top_part(st: &mut Straightener, b: &Bitableau, shape: &Shape) -> Result<HashMap<(Bitableau, Bitableau), BigInt>> {
    let e = st.straighten(b)?;
    Ok(e.terms
        .into_iter()
        .filter(|t| t.dpow == 0 && same_shape(&t.bitab, shape))
        .map(|t| {
            let (l, r) = split(&t.bitab);
            ((l, r), t.coeff)
        })
        .collect())
}

/// Checks that the top-shape part of straightening `(S|T)` is the product of
/// the straightenings of `(S|T_λ)` and `(T_λ|T)`.
pub fn verify_tensor_factorisation(shape: &Shape, ctx: &Context, opts: &VerifyOptions) -> Result<bool> {
    let canon = canonical_of(ctx, shape)?;
    let (canon_left, canon_right) = split(&canon);
    let all = fillings(ctx, shape);
    let sides: Vec<Bitableau> = {
        let mut seen: Vec<Bitableau> = all.iter().map(|b| split(b).0).collect();
        seen.dedup();
        let cap = (opts.max_fillings as f64).sqrt().max(1.0) as usize;
        capped(seen, cap, opts.seed, CHECK_STREAM + 99)
    };
    let mut st = Straightener::new(ctx);
    let mut a: HashMap<Bitableau, HashMap<Bitableau, BigInt>> = HashMap::new();
    let mut b: HashMap<Bitableau, HashMap<Bitableau, BigInt>> = HashMap::new();
    for side in &sides {
        let left_input = with_sides(side, &canon);
        let mut row = HashMap::new();
        for ((l, r), c) in top_part(&mut st, &left_input, shape)? {
            if r != canon_right {
                return Ok(false);
            }
            row.insert(l, c);
        }
        a.insert(side.clone(), row);
        let right_side = flip(side);
        let right_input = with_sides(&canon, &right_side);
        let mut col = HashMap::new();
        for ((l, r), c) in top_part(&mut st, &right_input, shape)? {
            if l != canon_left {
                return Ok(false);
            }
            col.insert(r, c);
        }
        b.insert(right_side, col);
    }
    let inputs: Vec<(Bitableau, Bitableau)> =
        sides.iter().flat_map(|s| sides.iter().map(move |t| (s.clone(), flip(t)))).collect();
    let results = opts.exec.map_init(
        &inputs,
        || Straightener::new(ctx),
        |st, (s, t)| -> Result<bool> {
            let got = top_part(st, &with_sides(s, t), shape)?;
            let (ra, rb) = (&a[s], &b[t]);
            let mut expect: HashMap<(Bitableau, Bitableau), BigInt> = HashMap::new();
            for (l, x) in ra {
                for (r, y) in rb {
                    expect.insert((l.clone(), r.clone()), x * y);
                }
            }
            Ok(got == expect)
        },
    );
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Moves the left half of a split bitableau to the right.
fn flip(b: &Bitableau) -> Bitableau {
    match b {
        Bitableau::Plain { s, t } => Bitableau::Plain { s: t.clone(), t: s.clone() },
        Bitableau::Rational { s, t } => Bitableau::Rational { s: t.clone(), t: s.clone() },
    }
}

/// Independence of d-free standard bideterminants on `X = {d = 0}` and of
/// the length-restricted ones on `X_{r,s}`, plus nonvanishing of
/// `(T_λ|T_λ)` at `E_{l(λ¹),l(λ²)}` for every `λ ∈ Λ_{p,q}`.
pub fn x_locus_report(
    m: usize,
    r: usize,
    s: usize,
    bigrade: (usize, usize),
    opts: &VerifyOptions,
) -> Result<XLocusReport> {
    if r + s > m {
        return Err(Error::Inadmissible(format!("X_{{{r},{s}}} needs r + s ≤ m = {m}")));
    }
    let ctx = Context::monoid(m);
    let (p, q) = bigrade;
    let mut free = Vec::new();
    for l1 in partitions_bounded(p, m) {
        for l2 in partitions_bounded(q, m - l1.len()) {
            let shape = Shape::Rational(RationalShape::new(l1.clone(), l2, m));
            free.extend(standard_keys_of_shape(&ctx, &shape).into_iter().map(|k| (0u32, k)));
        }
    }
    let restricted: Vec<Cand> = free
        .iter()
        .filter(|(_, k)| k.0[0].left.first().map_or(0, Vec::len) <= r && k.0[1].left.first().map_or(0, Vec::len) <= s)
        .cloned()
        .collect();
    let seed = opts.seed;
    let sample = opts.sample;
    let on_x = certify_with(&ctx, &free, opts, |round, count| {
        (0..count)
            .map(|k| {
                let c = k % (m + 1);
                xrs_point(m, c, m - c, &mut stream_rng(seed, round * RESAMPLE_STREAM + k as u64), &sample)
            })
            .collect()
    })?;
    let on_xrs = certify_with(&ctx, &restricted, opts, |round, count| {
        (0..count)
            .map(|k| xrs_point(m, r, s, &mut stream_rng(seed, round * RESAMPLE_STREAM + k as u64), &sample))
            .collect()
    })?;
    let id = ExactMatrix::identity(m);
    let one = Rational::from_i64(1);
    let mut checked = 0;
    let mut nonzero = true;
    for w in &lambda_rs(m, p, q).weights {
        let shape = unbracket(w);
        let tl = canonical_rational(&shape)?;
        let point = xrs_point_from(shape.lambda1.len(), shape.lambda2.len(), &id, &id, &one, &one)?;
        let mut ev = Evaluator::new(&ctx, &point)?;
        nonzero &= !ev.bitableau(&Bitableau::Rational { s: tl.clone(), t: tl })?.is_zero();
        checked += 1;
    }
    Ok(XLocusReport {
        m,
        r,
        s,
        bigrade,
        on_x,
        on_xrs,
        highest_weight_nonzero: nonzero,
        highest_weight_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(multisets(3, 0).len(), 1);
    }

    #[test]
    fn mat2_degree2() {
        let r = verify_basis(&Context::mat(2), Degree::Total(2), &VerifyOptions::default()).unwrap();
        assert_eq!(r.candidate_count, 10);
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
