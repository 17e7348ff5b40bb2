//! Bideterminants in the five contexts, straightening, sampling and the
//! evaluation-based verification harness.

mod eval;
mod gl;
mod key;
mod poly;
mod sample;
mod straighten;
mod verify;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exterior::ExtAlgebra;
use crate::tableaux::{Alphabet, RationalTableau, Regime, Tableau};
use crate::{Error, Result};

pub use eval::Evaluator;
pub use poly::{bidet_poly, dilation, ideal_generators, minor_product, StraightExprPoly};
pub use sample::{sample_point, sample_points, xrs_point, xrs_point_from, PointMeta, PointSample, SampleOptions};
pub use straighten::{straighten, Straightener};
pub use verify::{
    basis_candidates, certify_independent, degree_monomials, nabla_basis, o_pi_span, verify_basis,
    verify_tensor_factorisation, x_locus_report, BasisReport, Degree, IndependenceCert, NablaBasis, Side, Verdict,
    VerifyOptions, Witness, XLocusReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContextKind {
    Mat,
    Spm,
    Sp,
    Monoid,
    Glrat,
}

impl ContextKind {
    pub fn name(self) -> &'static str {
        match self {
            ContextKind::Mat => "mat",
            ContextKind::Spm => "spm",
            ContextKind::Sp => "sp",
            ContextKind::Monoid => "monoid",
            ContextKind::Glrat => "glrat",
        }
    }

    pub fn two_block(self) -> bool {
        matches!(self, ContextKind::Monoid | ContextKind::Glrat)
    }

    /// Contexts where `d` is set to 1.
    pub fn folds_d(self) -> bool {
        matches!(self, ContextKind::Sp | ContextKind::Glrat)
    }

    pub fn regime(self) -> Regime {
        match self {
            ContextKind::Mat => Regime::Gl,
            ContextKind::Spm | ContextKind::Sp => Regime::Symplectic,
            ContextKind::Monoid | ContextKind::Glrat => Regime::Rational,
        }
    }
}

impl std::str::FromStr for ContextKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "mat" => ContextKind::Mat,
            "spm" => ContextKind::Spm,
            "sp" => ContextKind::Sp,
            "monoid" => ContextKind::Monoid,
            "glrat" => ContextKind::Glrat,
            other => return Err(Error::Parse(format!("unknown context `{other}`"))),
        })
    }
}

pub(crate) struct Caches {
    pub gl: gl::GlBlocks,
    pub ext: Option<ExtAlgebra>,
}

/// A coordinate ring together with its letter order.
#[derive(Clone)]
pub struct Context {
    kind: ContextKind,
    alphabet: Alphabet,
    caches: Arc<Caches>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = if self.kind.two_block() { "m" } else { "n" };
        write!(f, "{}({size}={})", self.kind.name(), self.size())
    }
}

impl Context {
    /// Builds a context; `alphabet` defaults to the natural order, or
    /// `1′ ≺ 1 ≺ 2′ ≺ 2 ≺ …` with the block pairing for SPM/SP.
    pub fn new(kind: ContextKind, size: usize, alphabet: Option<Alphabet>) -> Result<Self> {
        let alphabet = match (kind, alphabet) {
            (ContextKind::Spm | ContextKind::Sp, None) => {
                if !size.is_multiple_of(2) || size == 0 {
                    return Err(Error::Inadmissible(format!("symplectic contexts need even n > 0, got {size}")));
                }
                Alphabet::symplectic(size / 2)
            }
            (_, None) => Alphabet::natural(size),
            (_, Some(a)) => a,
        };
        if alphabet.n() != size {
            return Err(Error::InvalidAlphabet(format!("alphabet of size {} for size {size}", alphabet.n())));
        }
        match kind {
            ContextKind::Spm | ContextKind::Sp if !alphabet.is_paired() => {
                return Err(Error::InvalidAlphabet("symplectic contexts need a paired alphabet".into()))
            }
            ContextKind::Mat | ContextKind::Monoid | ContextKind::Glrat if alphabet.is_paired() => {
                return Err(Error::InvalidAlphabet("this context takes an unpaired alphabet".into()))
            }
            _ => {}
        }
        let ext = match kind {
            ContextKind::Mat => None,
            ContextKind::Spm | ContextKind::Sp => Some(ExtAlgebra::symplectic(alphabet.clone())?),
            ContextKind::Monoid | ContextKind::Glrat => Some(ExtAlgebra::pair(alphabet.clone())?),
        };
        let caches = Caches { gl: gl::GlBlocks::new(alphabet.clone()), ext };
        Ok(Context { kind, alphabet, caches: Arc::new(caches) })
    }

    pub fn mat(n: usize) -> Self {
        Self::new(ContextKind::Mat, n, None).expect("valid size")
    }

    pub fn spm(n: usize) -> Result<Self> {
        Self::new(ContextKind::Spm, n, None)
    }

    pub fn sp(n: usize) -> Result<Self> {
        Self::new(ContextKind::Sp, n, None)
    }

    pub fn monoid(m: usize) -> Self {
        Self::new(ContextKind::Monoid, m, None).expect("valid size")
    }

    pub fn glrat(m: usize) -> Self {
        Self::new(ContextKind::Glrat, m, None).expect("valid size")
    }

    pub fn kind(&self) -> ContextKind {
        self.kind
    }

    /// Matrix size: `n` for single-block contexts, `m` for two-block ones.
    pub fn size(&self) -> usize {
        self.alphabet.n()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The same ring with `d` kept free (SP → SPM, GLRAT → MONOID).
    pub fn unfolded(&self) -> Context {
        let kind = match self.kind {
            ContextKind::Sp => ContextKind::Spm,
            ContextKind::Glrat => ContextKind::Monoid,
            k => k,
        };
        Context { kind, alphabet: self.alphabet.clone(), caches: self.caches.clone() }
    }

    pub(crate) fn caches(&self) -> &Caches {
        &self.caches
    }

    pub(crate) fn ext(&self) -> &ExtAlgebra {
        self.caches.ext.as_ref().expect("context has an exterior algebra")
    }
}

/// A pair of tableaux of equal shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bitableau {
    Plain { s: Tableau, t: Tableau },
    Rational { s: RationalTableau, t: RationalTableau },
}

impl Bitableau {
    pub fn plain(s: Tableau, t: Tableau) -> Result<Self> {
        if s.shape() != t.shape() {
            return Err(Error::ShapeMismatch(format!("{} vs {}", s.shape(), t.shape())));
        }
        Ok(Bitableau::Plain { s, t })
    }

    pub fn rational(s: RationalTableau, t: RationalTableau) -> Result<Self> {
        if s.shape() != t.shape() {
            return Err(Error::ShapeMismatch(format!("{} vs {}", s.shape(), t.shape())));
        }
        Ok(Bitableau::Rational { s, t })
    }

    pub fn empty_for(ctx: &Context) -> Self {
        if ctx.kind().two_block() {
            let e = RationalTableau::new(Tableau::empty(), Tableau::empty(), ctx.size());
            Bitableau::Rational { s: e.clone(), t: e }
        } else {
            Bitableau::Plain { s: Tableau::empty(), t: Tableau::empty() }
        }
    }

    /// Total number of boxes of one side.
    pub fn size(&self) -> usize {
        match self {
            Bitableau::Plain { s, .. } => s.size(),
            Bitableau::Rational { s, .. } => s.t1.size() + s.t2.size(),
        }
    }

    pub fn check_context(&self, ctx: &Context) -> Result<()> {
        match (self, ctx.kind().two_block()) {
            (Bitableau::Plain { s, t }, false) => {
                s.validate(ctx.alphabet())?;
                t.validate(ctx.alphabet())
            }
            (Bitableau::Rational { s, t }, true) => {
                s.validate(ctx.alphabet())?;
                t.validate(ctx.alphabet())
            }
            _ => Err(Error::ContextMismatch(format!("bitableau kind does not fit {ctx}"))),
        }
    }

    pub fn display_with(&self, a: &Alphabet) -> String {
        match self {
            Bitableau::Plain { s, t } => format!("({}|{})", s.display_with(a), t.display_with(a)),
            Bitableau::Rational { s, t } => format!("({}|{})", s.display_with(a), t.display_with(a)),
        }
    }
}

impl fmt::Display for Bitableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bitableau::Plain { s, t } => write!(f, "({s}|{t})"),
            Bitableau::Rational { s, t } => write!(f, "({s}|{t})"),
        }
    }
}

/// One term `coeff · d^dpow · (S|T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightTerm {
    pub coeff: BigInt,
    pub dpow: u32,
    pub bitab: Bitableau,
}

/// A straightened expansion in the context's standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightExpr {
    pub context: ContextKind,
    pub terms: Vec<StraightTerm>,
}

impl StraightExpr {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn display_with(&self, a: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let d = match t.dpow {
                    0 => String::new(),
                    1 => "d·".into(),
                    k => format!("d^{k}·"),
                };
                format!("{}·{d}{}", t.coeff, t.bitab.display_with(a))
            })
            .collect();
        parts.join(" + ")
    }
}
