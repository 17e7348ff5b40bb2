//! Fast evaluation of bideterminants at a fixed point, with minors cached.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::exactla::{det_of, ExactMatrix, Rational};
use crate::polyring::Polynomial;
use crate::{Error, Result};

use super::key::Key;
use super::sample::PointSample;
use super::{Bitableau, Context, StraightExpr, StraightTerm};

pub struct Evaluator<'c> {
    ctx: &'c Context,
    point: PointSample,
    minors: HashMap<(usize, Vec<usize>, Vec<usize>), Rational>,
}

impl<'c> Evaluator<'c> {
    pub fn new(ctx: &'c Context, point: &PointSample) -> Result<Self> {
        if ctx.kind().two_block() != point.y.is_some() {
            return Err(Error::ContextMismatch(format!("point does not belong to {ctx}")));
        }
        Ok(Evaluator { ctx, point: point.clone(), minors: HashMap::new() })
    }

    pub fn point(&self) -> &PointSample {
        &self.point
    }

    /// Value of `d` at the point (1 in contexts where it is folded away).
    pub fn d(&self) -> Rational {
        if self.ctx.kind().folds_d() {
            Rational::one()
        } else {
            self.point.meta.d.clone()
        }
    }

    fn matrix(&self, block: usize) -> &ExactMatrix {
        if block == 0 {
            &self.point.x
        } else {
            self.point.y.as_ref().expect("two-block point")
        }
    }

    fn minor(&mut self, block: usize, rows: &[usize], cols: &[usize]) -> Rational {
        let key = (block, rows.to_vec(), cols.to_vec());
        if let Some(v) = self.minors.get(&key) {
            return v.clone();
        }
        let m = self.matrix(block);
        let sub = rows.iter().map(|&r| cols.iter().map(|&c| m.get(r - 1, c - 1).clone()).collect()).collect();
        let v = det_of(sub);
        self.minors.insert(key, v.clone());
        v
    }

    pub(crate) fn key(&mut self, key: &Key) -> Rational {
        let mut v = Rational::one();
        for (b, cols) in key.0.iter().enumerate() {
            for (r, c) in cols.left.iter().zip(&cols.right) {
                let x = self.minor(b, r, c);
                if x.is_zero() {
                    return x;
                }
                v *= &x;
            }
        }
        v
    }

    pub(crate) fn key_term(&mut self, coeff: &Rational, dpow: u32, key: &Key) -> Rational {
        let mut v = self.key(key);
        if dpow > 0 {
            v *= &self.d().pow(dpow);
        }
        v *= coeff;
        v
    }

    pub fn bitableau(&mut self, b: &Bitableau) -> Result<Rational> {
        b.check_context(self.ctx)?;
        Ok(self.key(&Key::from_bitableau(b)?))
    }

    pub fn term(&mut self, t: &StraightTerm) -> Result<Rational> {
        let mut v = self.bitableau(&t.bitab)?;
        if t.dpow > 0 {
            v *= &self.d().pow(t.dpow);
        }
        v *= &Rational::from_bigint(t.coeff.clone());
        Ok(v)
    }

    pub fn expr(&mut self, e: &StraightExpr) -> Result<Rational> {
        let mut total = Rational::zero();
        for t in &e.terms {
            total += self.term(t)?;
        }
        Ok(total)
    }

    pub fn polynomial(&self, p: &Polynomial) -> Result<Rational> {
        p.evaluate(&self.point.assignment())
    }
}
