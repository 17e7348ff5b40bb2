//! Bideterminants and defining relations as explicit polynomials.

use num_bigint::BigInt;

use crate::polyring::{minor_poly, Block, Monomial, Polynomial, Variable};
use crate::{Error, Result};

use super::key::{Cols, Key};
use super::{Bitableau, Context, ContextKind, StraightExpr};

/// Product of the column minors of one block.
pub fn minor_product(block: Block, left: &[Vec<usize>], right: &[Vec<usize>]) -> Polynomial {
    left.iter().zip(right).fold(Polynomial::one(), |acc, (r, c)| &acc * &minor_poly(block, r, c))
}

pub(crate) fn key_poly(key: &Key) -> Polynomial {
    let blocks = [Block::X, Block::Y];
    key.0
        .iter()
        .zip(blocks)
        .fold(Polynomial::one(), |acc, (c, b): (&Cols, Block)| &acc * &minor_product(b, &c.left, &c.right))
}

/// `(S|T)` expanded in the matrix entries; rational bitableaux use `x` for
/// the first tableau pair and `y` for the second.
pub fn bidet_poly(b: &Bitableau, ctx: &Context) -> Result<Polynomial> {
    b.check_context(ctx)?;
    Ok(key_poly(&Key::from_bitableau(b)?))
}

fn sym_eps(ctx: &Context, l: usize) -> i64 {
    if l <= ctx.alphabet().m() {
        1
    } else {
        -1
    }
}

fn quad(terms: impl IntoIterator<Item = (i64, Variable, Variable)>) -> Polynomial {
    let mut p = Polynomial::zero();
    for (c, u, v) in terms {
        p.add_term(Monomial::from_vars([u, v]), BigInt::from(c));
    }
    p
}

/// `(AᵀJA)_{ij}`.
fn g(ctx: &Context, i: usize, j: usize) -> Polynomial {
    let a = ctx.alphabet();
    quad((1..=a.n()).map(|l| (sym_eps(ctx, l), Variable::x(l, i), Variable::x(a.partner(l).unwrap(), j))))
}

/// `(AJAᵀ)_{ij}`.
fn gbar(ctx: &Context, i: usize, j: usize) -> Polynomial {
    let a = ctx.alphabet();
    quad((1..=a.n()).map(|l| (sym_eps(ctx, l), Variable::x(i, l), Variable::x(j, a.partner(l).unwrap()))))
}

/// `(AᵀB)_{ij}`.
fn h(m: usize, i: usize, j: usize) -> Polynomial {
    quad((1..=m).map(|l| (1, Variable::x(l, i), Variable::y(l, j))))
}

/// `(ABᵀ)_{ij}`.
fn hbar(m: usize, i: usize, j: usize) -> Polynomial {
    quad((1..=m).map(|l| (1, Variable::x(i, l), Variable::y(j, l))))
}

/// Generators of the defining ideal, identically zero members dropped.
pub fn ideal_generators(ctx: &Context) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let one = Polynomial::one();
    match ctx.kind() {
        ContextKind::Mat => {}
        ContextKind::Spm | ContextKind::Sp => {
            let a = ctx.alphabet();
            let (n, m) = (a.n(), a.m());
            for i in 1..=n {
                for j in i + 1..=n {
                    if a.partner(i) != Some(j) {
                        out.push(g(ctx, i, j));
                        out.push(gbar(ctx, i, j));
                    }
                }
            }
            for r in 1..=m {
                for s in 1..=m {
                    let rp = a.partner(r).unwrap();
                    let sp = a.partner(s).unwrap();
                    out.push(&g(ctx, r, rp) - &gbar(ctx, s, sp));
                }
            }
            if ctx.kind() == ContextKind::Sp {
                for r in 1..=m {
                    out.push(&g(ctx, r, a.partner(r).unwrap()) - &one);
                }
            }
        }
        ContextKind::Monoid | ContextKind::Glrat => {
            let m = ctx.size();
            for i in 1..=m {
                for j in 1..=m {
                    if i != j {
                        out.push(h(m, i, j));
                        out.push(hbar(m, i, j));
                    }
                }
            }
            for r in 1..=m {
                for s in 1..=m {
                    out.push(&h(m, r, r) - &hbar(m, s, s));
                }
            }
            if ctx.kind() == ContextKind::Glrat {
                for r in 1..=m {
                    out.push(&h(m, r, r) - &one);
                }
            }
        }
    }
    out.retain(|p| !p.is_zero());
    out
}

/// The coefficient of dilation: `g_{1,1′}` or `h_{11}`.
pub fn dilation(ctx: &Context) -> Result<Polynomial> {
    match ctx.kind() {
        ContextKind::Mat => Err(Error::ContextMismatch("mat has no dilation".into())),
        ContextKind::Spm | ContextKind::Sp => Ok(g(ctx, 1, ctx.alphabet().partner(1).unwrap())),
        ContextKind::Monoid | ContextKind::Glrat => Ok(h(ctx.size(), 1, 1)),
    }
}

pub trait StraightExprPoly {
    /// `Σ aᵢ dᵗⁱ (Sᵢ|Tᵢ)` with `d` replaced by its polynomial representative.
    fn to_polynomial(&self, ctx: &Context) -> Result<Polynomial>;
}

impl StraightExprPoly for StraightExpr {
    fn to_polynomial(&self, ctx: &Context) -> Result<Polynomial> {
        if self.context != ctx.kind() {
            return Err(Error::ContextMismatch(format!("{} expression in {ctx}", self.context.name())));
        }
        let d = if self.terms.iter().any(|t| t.dpow > 0) { Some(dilation(ctx)?) } else { None };
        let mut out = Polynomial::zero();
        for t in &self.terms {
            let mut p = bidet_poly(&t.bitab, ctx)?;
            if t.dpow > 0 {
                p = &p * &d.as_ref().unwrap().pow(t.dpow);
            }
            out = &out + &p.scale(&t.coeff);
        }
        Ok(out)
    }
}
