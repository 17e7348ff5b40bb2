//! Random rational points on the five varieties and on the locus `d = 0`.

use num_traits::{One, Zero};
use rand::Rng;

use crate::exactla::{ExactMatrix, Rational};
use crate::exec::stream_rng;
use crate::polyring::MatrixPoint;
use crate::{Error, Result};

use super::{Context, ContextKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    /// Integer entries are drawn from `-bound..=bound`.
    pub bound: i64,
    pub max_attempts: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { bound: 4, max_attempts: 64 }
    }
}

/// How a point was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMeta {
    pub kind: ContextKind,
    /// Value of the dilation (1 for `Mat`).
    pub d: Rational,
    /// `(r, s)` for points of `X_{r,s}`.
    pub locus: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    pub x: ExactMatrix,
    pub y: Option<ExactMatrix>,
    pub meta: PointMeta,
}

impl PointSample {
    pub fn assignment(&self) -> MatrixPoint<'_> {
        MatrixPoint { x: &self.x, y: self.y.as_ref() }
    }
}

fn random_int(rng: &mut impl Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn random_nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let v = random_int(rng, bound);
        if v != 0 {
            return v;
        }
    }
}

fn random_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> ExactMatrix {
    ExactMatrix::from_flat(n, n, (0..n * n).map(|_| Rational::from_i64(random_int(rng, bound))).collect())
}

fn random_invertible(rng: &mut impl Rng, n: usize, opts: &SampleOptions) -> Result<(ExactMatrix, ExactMatrix)> {
    for _ in 0..opts.max_attempts {
        let a = random_matrix(rng, n, opts.bound);
        if let Some(inv) = a.inverse()? {
            return Ok((a, inv));
        }
    }
    Err(Error::Sampling(format!("no invertible {n}×{n} matrix in {} draws", opts.max_attempts)))
}

/// The form `J` with `J_{i,i′} = ε_i`.
pub(crate) fn j_matrix(ctx: &Context) -> ExactMatrix {
    let a = ctx.alphabet();
    let n = a.n();
    let mut j = ExactMatrix::zeros(n, n);
    for i in 1..=n {
        let e = if i <= a.m() { 1 } else { -1 };
        j.set(i - 1, a.partner(i).unwrap() - 1, Rational::from_i64(e));
    }
    j
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Sampling(format!("constructed point violates {what}")))
    }
}

fn symplectic_point(ctx: &Context, rng: &mut impl Rng, opts: &SampleOptions) -> Result<PointSample> {
    let n = ctx.size();
    let j = j_matrix(ctx);
    let id = ExactMatrix::identity(n);
    for _ in 0..opts.max_attempts {
        let mut sigma = ExactMatrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let v = Rational::from_i64(random_int(rng, opts.bound));
                sigma.set(a, b, v.clone());
                sigma.set(b, a, v);
            }
        }
        // J⁻¹ = −J, so H = −JΣ is Hamiltonian.
        let h = j.mul(&sigma)?.scale(&Rational::from_i64(-1));
        let Some(inv) = id.sub(&h)?.inverse()? else { continue };
        let s = id.add(&h)?.mul(&inv)?;
        let c = if ctx.kind() == ContextKind::Sp { 1 } else { random_nonzero(rng, opts.bound) };
        let a = s.scale(&Rational::from_i64(c));
        let d = Rational::from_i64(c * c);
        let dj = j.scale(&d);
        check(a.transpose().mul(&j)?.mul(&a)? == dj, "AᵀJA = dJ")?;
        check(a.mul(&j)?.mul(&a.transpose())? == dj, "AJAᵀ = dJ")?;
        return Ok(PointSample { x: a, y: None, meta: PointMeta { kind: ctx.kind(), d, locus: None } });
    }
    Err(Error::Sampling("Cayley transform kept hitting the spectrum".into()))
}

fn monoid_point(ctx: &Context, rng: &mut impl Rng, opts: &SampleOptions) -> Result<PointSample> {
    let m = ctx.size();
    let (a, inv) = random_invertible(rng, m, opts)?;
    let d = if ctx.kind() == ContextKind::Glrat { 1 } else { random_nonzero(rng, opts.bound) };
    let d = Rational::from_i64(d);
    let b = inv.transpose().scale(&d);
    let di = ExactMatrix::identity(m).scale(&d);
    check(a.transpose().mul(&b)? == di && a.mul(&b.transpose())? == di, "AᵀB = ABᵀ = dI")?;
    Ok(PointSample { x: a, y: Some(b), meta: PointMeta { kind: ctx.kind(), d, locus: None } })
}

/// One random point of the context's variety (a dense subset of it).
pub fn sample_point(ctx: &Context, rng: &mut impl Rng, opts: &SampleOptions) -> Result<PointSample> {
    match ctx.kind() {
        ContextKind::Mat => {
            let x = random_matrix(rng, ctx.size(), opts.bound);
            Ok(PointSample { x, y: None, meta: PointMeta { kind: ContextKind::Mat, d: Rational::one(), locus: None } })
        }
        ContextKind::Spm | ContextKind::Sp => symplectic_point(ctx, rng, opts),
        ContextKind::Monoid | ContextKind::Glrat => monoid_point(ctx, rng, opts),
    }
}

/// `count` points, point `k` drawn from stream `first_stream + k`.
pub fn sample_points(
    ctx: &Context,
    count: usize,
    seed: u64,
    first_stream: u64,
    opts: &SampleOptions,
) -> Result<Vec<PointSample>> {
    (0..count as u64).map(|k| sample_point(ctx, &mut stream_rng(seed, first_stream + k), opts)).collect()
}

fn diag_ones(m: usize, range: std::ops::Range<usize>) -> ExactMatrix {
    let mut e = ExactMatrix::zeros(m, m);
    for i in range {
        e.set(i, i, Rational::one());
    }
    e
}

/// `(α·g E_r h⁻¹, β·g⁻ᵀ F_s hᵀ)`; `E_r` keeps the first `r` and `F_s` the
/// last `s` diagonal entries.
pub fn xrs_point_from(
    r: usize,
    s: usize,
    g: &ExactMatrix,
    h: &ExactMatrix,
    alpha: &Rational,
    beta: &Rational,
) -> Result<PointSample> {
    let m = g.rows();
    if r + s > m {
        return Err(Error::Inadmissible(format!("X_{{{r},{s}}} needs r + s ≤ m = {m}")));
    }
    let g_inv = g.inverse()?.ok_or_else(|| Error::Sampling("g is singular".into()))?;
    let h_inv = h.inverse()?.ok_or_else(|| Error::Sampling("h is singular".into()))?;
    let a = g.mul(&diag_ones(m, 0..r))?.mul(&h_inv)?.scale(alpha);
    let b = g_inv.transpose().mul(&diag_ones(m, m - s..m))?.mul(&h.transpose())?.scale(beta);
    let zero = ExactMatrix::zeros(m, m);
    check(a.transpose().mul(&b)? == zero && a.mul(&b.transpose())? == zero, "AᵀB = ABᵀ = 0")?;
    let meta = PointMeta { kind: ContextKind::Monoid, d: Rational::zero(), locus: Some((r, s)) };
    Ok(PointSample { x: a, y: Some(b), meta })
}

/// A random point of `X_{r,s}`.
pub fn xrs_point(m: usize, r: usize, s: usize, rng: &mut impl Rng, opts: &SampleOptions) -> Result<PointSample> {
    let (g, _) = random_invertible(rng, m, opts)?;
    let (h, _) = random_invertible(rng, m, opts)?;
    let alpha = Rational::from_i64(random_nonzero(rng, opts.bound));
    let beta = Rational::from_i64(random_nonzero(rng, opts.bound));
    xrs_point_from(r, s, &g, &h, &alpha, &beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bidet::dilation;

    #[test]
    fn points_satisfy_equations() {
        let opts = SampleOptions::default();
        for ctx in [Context::spm(4).unwrap(), Context::sp(4).unwrap(), Context::monoid(3), Context::glrat(2)] {
            let mut rng = stream_rng(7, 0);
            for _ in 0..5 {
                let p = sample_point(&ctx, &mut rng, &opts).unwrap();
                let d = dilation(&ctx).unwrap().evaluate(&p.assignment()).unwrap();
                assert_eq!(d, p.meta.d);
            }
        }
    }

    #[test]
    fn monoid_example_point() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]);
        let b = a.inverse().unwrap().unwrap().transpose().scale(&Rational::from_i64(2));
        assert_eq!(b, ExactMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn identity_factors_give_e_rs() {
        let id = ExactMatrix::identity(3);
        let p = xrs_point_from(1, 2, &id, &id, &Rational::one(), &Rational::one()).unwrap();
        assert_eq!(p.x, diag_ones(3, 0..1));
        assert_eq!(p.y.unwrap(), diag_ones(3, 1..3));
        assert!(xrs_point_from(2, 2, &id, &id, &Rational::one(), &Rational::one()).is_err());
    }
}
