//! Column form of bitableaux used inside straightening and evaluation.

use crate::tableaux::{Alphabet, RationalTableau, Tableau};
use crate::{Error, Result};

use super::{Bitableau, Context};

/// Paired columns of one matrix block: column `c` of `left` has the same
/// length as column `c` of `right`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cols {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl Cols {
    pub fn of(s: &Tableau, t: &Tableau) -> Self {
        Cols { left: s.columns(), right: t.columns() }
    }

    pub fn side(&self, right: bool) -> &Vec<Vec<usize>> {
        if right {
            &self.right
        } else {
            &self.left
        }
    }

    pub fn side_mut(&mut self, right: bool) -> &mut Vec<Vec<usize>> {
        if right {
            &mut self.right
        } else {
            &mut self.left
        }
    }

    pub fn size(&self) -> usize {
        self.left.iter().map(Vec::len).sum()
    }

    /// Rows weakly increasing under `⪯` on both sides (columns are assumed
    /// strictly increasing and sorted by length).
    pub fn is_gl_standard(&self, a: &Alphabet) -> bool {
        [&self.left, &self.right]
            .iter()
            .all(|cols| cols.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(r, l)| a.rank(*l) <= a.rank(*r))))
    }

    /// Sorts every column by `⪯` with sign, then orders columns by length.
    /// `None` when a column repeats a letter.
    fn normalize(&mut self, a: &Alphabet) -> Option<i32> {
        let mut sign = 1;
        for col in self.left.iter_mut().chain(self.right.iter_mut()) {
            let mut ranks: Vec<usize> = col.iter().map(|&l| a.rank(l)).collect();
            sign *= crate::exterior::sort_sign(&mut ranks)?;
            for (x, r) in col.iter_mut().zip(ranks) {
                *x = a.letter_at(r);
            }
        }
        if self.left.windows(2).any(|w| w[0].len() < w[1].len()) || self.left.iter().any(Vec::is_empty) {
            let mut idx: Vec<usize> = (0..self.left.len()).filter(|&c| !self.left[c].is_empty()).collect();
            idx.sort_by(|&x, &y| self.left[y].len().cmp(&self.left[x].len()));
            self.left = idx.iter().map(|&c| std::mem::take(&mut self.left[c])).collect();
            self.right = idx.iter().map(|&c| std::mem::take(&mut self.right[c])).collect();
        }
        Some(sign)
    }

    fn to_tableaux(&self) -> (Tableau, Tableau) {
        (
            Tableau::from_columns(&self.left).expect("normalized columns"),
            Tableau::from_columns(&self.right).expect("normalized columns"),
        )
    }
}

/// One block (single-matrix contexts) or two blocks (`x` then `y`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key(pub Vec<Cols>);

impl Key {
    pub fn from_bitableau(b: &Bitableau) -> Result<Self> {
        let check = |s: &Tableau, t: &Tableau| {
            if s.shape() != t.shape() {
                return Err(Error::ShapeMismatch(format!("{} vs {}", s.shape(), t.shape())));
            }
            Ok(Cols::of(s, t))
        };
        Ok(match b {
            Bitableau::Plain { s, t } => Key(vec![check(s, t)?]),
            Bitableau::Rational { s, t } => Key(vec![check(&s.t1, &t.t1)?, check(&s.t2, &t.t2)?]),
        })
    }

    pub fn to_bitableau(&self, ctx: &Context) -> Bitableau {
        if ctx.kind().two_block() {
            let (s1, t1) = self.0[0].to_tableaux();
            let (s2, t2) = self.0[1].to_tableaux();
            let m = ctx.size();
            Bitableau::Rational { s: RationalTableau::new(s1, s2, m), t: RationalTableau::new(t1, t2, m) }
        } else {
            let (s, t) = self.0[0].to_tableaux();
            Bitableau::Plain { s, t }
        }
    }

    pub fn normalize(mut self, a: &Alphabet) -> Option<(i32, Key)> {
        let mut sign = 1;
        for c in self.0.iter_mut() {
            sign *= c.normalize(a)?;
        }
        Some((sign, self))
    }

    /// Boxes per block.
    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(Cols::size).collect()
    }

    /// Letters of one side, all blocks concatenated per block.
    pub fn letters(&self, block: usize, right: bool) -> impl Iterator<Item = usize> + '_ {
        self.0[block].side(right).iter().flatten().copied()
    }

    /// First column of a side per block, empty when the block is empty.
    pub fn first_columns(&self, right: bool) -> Vec<Vec<usize>> {
        self.0.iter().map(|c| c.side(right).first().cloned().unwrap_or_default()).collect()
    }

    /// Replaces the first column of the given side in every block; columns
    /// are inserted when a block was empty on that side.
    pub fn with_first_columns(&self, right: bool, cols: &[Vec<usize>]) -> Key {
        let mut k = self.clone();
        for (block, col) in k.0.iter_mut().zip(cols) {
            let side = block.side_mut(right);
            if side.is_empty() {
                side.push(col.clone());
                block.side_mut(!right).push(Vec::new());
            } else {
                side[0] = col.clone();
            }
        }
        k
    }

    pub fn shape_sizes(&self) -> (usize, usize) {
        let s = self.sizes();
        (s[0], s.get(1).copied().unwrap_or(0))
    }
}
