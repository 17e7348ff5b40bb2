//! Alphabets, tableaux and the three standardness regimes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::shapes::{Partition, RationalShape};
use crate::{Error, Result};

/// Which of the two antisymmetric forms pairs the letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JForm {
    /// Antidiagonal form, `i′ = n + 1 − i`.
    Antidiagonal,
    /// Block form `[[0, I], [−I, 0]]`, `i′ = i + m`.
    Block,
}

impl JForm {
    pub fn partner(self, letter: usize, m: usize) -> usize {
        match self {
            JForm::Block => {
                if letter <= m {
                    letter + m
                } else {
                    letter - m
                }
            }
            JForm::Antidiagonal => 2 * m + 1 - letter,
        }
    }
}

/// Letters `1..=n` with a linear order and an optional pairing `i ↔ i′`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    n: usize,
    order: Vec<usize>,
    rank: Vec<usize>,
    jform: Option<JForm>,
}

impl Alphabet {
    /// Natural order `1 ≺ 2 ≺ … ≺ n`, no pairing.
    pub fn natural(n: usize) -> Self {
        Self::with_order((1..=n).collect()).expect("natural order is a permutation")
    }

    /// `order[k]` is the letter of rank `k`.
    pub fn with_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let rank = ranks_of(&order)?;
        Ok(Alphabet { n, order, rank, jform: None })
    }

    /// `2m` letters paired by the block form, ordered `1′ ≺ 1 ≺ 2′ ≺ 2 ≺ …`.
    pub fn symplectic(m: usize) -> Self {
        Self::symplectic_with(m, JForm::Block, None).expect("default symplectic order is admissible")
    }

    /// Paired alphabet; the order must keep each pair adjacent.
    pub fn symplectic_with(m: usize, jform: JForm, order: Option<Vec<usize>>) -> Result<Self> {
        let order = order.unwrap_or_else(|| (1..=m).flat_map(|i| [jform.partner(i, m), i]).collect());
        if order.len() != 2 * m {
            return Err(Error::InvalidAlphabet(format!("order of length {} for m = {m}", order.len())));
        }
        let rank = ranks_of(&order)?;
        for i in 1..=m {
            let (a, b) = (rank[i], rank[jform.partner(i, m)]);
            if a.abs_diff(b) != 1 || a.min(b) % 2 != 0 {
                return Err(Error::InvalidAlphabet(format!("letters {i} and {i}' are not adjacent in the order")));
            }
        }
        Ok(Alphabet { n: 2 * m, order, rank, jform: Some(jform) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the size for paired alphabets, the size otherwise.
    pub fn m(&self) -> usize {
        if self.jform.is_some() {
            self.n / 2
        } else {
            self.n
        }
    }

    pub fn jform(&self) -> Option<JForm> {
        self.jform
    }

    pub fn is_paired(&self) -> bool {
        self.jform.is_some()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based position of a letter.
    pub fn rank(&self, letter: usize) -> usize {
        self.rank[letter]
    }

    pub fn letter_at(&self, rank: usize) -> usize {
        self.order[rank]
    }

    pub fn precedes_eq(&self, a: usize, b: usize) -> bool {
        self.rank[a] <= self.rank[b]
    }

    pub fn partner(&self, letter: usize) -> Option<usize> {
        self.jform.map(|j| j.partner(letter, self.n / 2))
    }

    /// The unprimed representative `1..=m` of a letter's pair.
    pub fn unprimed(&self, letter: usize) -> usize {
        if self.is_paired() && letter > self.m() {
            self.partner(letter).unwrap()
        } else {
            letter
        }
    }

    pub fn is_primed(&self, letter: usize) -> bool {
        self.is_paired() && letter > self.m()
    }

    /// `ζ(j)`: pair level for paired alphabets, `rank + 1` otherwise.
    pub fn zeta(&self, letter: usize) -> usize {
        match self.partner(letter) {
            Some(p) => (self.rank[letter].max(self.rank[p]) + 2) / 2,
            None => self.rank[letter] + 1,
        }
    }

    pub fn contains(&self, letter: usize) -> bool {
        (1..=self.n).contains(&letter)
    }

    pub fn letter_name(&self, letter: usize) -> String {
        if self.is_primed(letter) {
            format!("{}'", self.unprimed(letter))
        } else {
            letter.to_string()
        }
    }

    pub fn parse_letter(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        let (base, primed) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let v: usize = base.parse().map_err(|_| Error::Parse(format!("bad letter `{s}`")))?;
        let letter = if primed {
            if !self.is_paired() || v == 0 || v > self.m() {
                return Err(Error::Parse(format!("primed letter `{s}` outside the paired range")));
            }
            self.partner(v).unwrap()
        } else {
            v
        };
        if !self.contains(letter) {
            return Err(Error::InvalidEntry(format!("letter {s} outside 1..={}", self.n)));
        }
        Ok(letter)
    }

    /// Sort letters by `⪯`.
    pub fn sort(&self, letters: &mut [usize]) {
        letters.sort_by_key(|&l| self.rank[l]);
    }

    /// Indices into a content vector from the `⪯`-largest to the smallest.
    fn content_priority(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (1..=self.m()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(self.zeta(i)));
        idx.into_iter().map(|i| i - 1).collect()
    }
}

fn ranks_of(order: &[usize]) -> Result<Vec<usize>> {
    let n = order.len();
    let mut rank = vec![usize::MAX; n + 1];
    for (k, &l) in order.iter().enumerate() {
        if l == 0 || l > n || rank[l] != usize::MAX {
            return Err(Error::InvalidAlphabet(format!("{order:?} is not a permutation of 1..={n}")));
        }
        rank[l] = k;
    }
    Ok(rank)
}

/// A filling of a Young diagram, stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau::default()
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Ok(Tableau { shape, rows })
    }

    /// Columns listed left to right, each top to bottom; lengths weakly decreasing.
    pub fn from_columns(cols: &[Vec<usize>]) -> Result<Self> {
        let cols: Vec<&Vec<usize>> = cols.iter().filter(|c| !c.is_empty()).collect();
        if cols.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::ShapeMismatch("column lengths must weakly decrease".into()));
        }
        let height = cols.first().map_or(0, |c| c.len());
        let rows = (0..height).map(|r| cols.iter().take_while(|c| c.len() > r).map(|c| c[r]).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn row(letters: &[usize]) -> Self {
        Self::from_rows(vec![letters.to_vec()]).expect("single row")
    }

    pub fn column(letters: &[usize]) -> Self {
        Self::from_rows(letters.iter().map(|&l| vec![l]).collect()).expect("single column")
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.rows[r][c]
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect()).collect()
    }

    pub fn first_column(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0]).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        match self.entries().find(|&l| !alphabet.contains(l)) {
            Some(l) => Err(Error::InvalidEntry(format!("letter {l} outside 1..={}", alphabet.n()))),
            None => Ok(()),
        }
    }

    /// Occurrence count of each letter `1..=n` (index `letter − 1`).
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for l in self.entries() {
            c[l - 1] += 1;
        }
        c
    }

    /// Rows joined by `/`; the empty tableau prints as `∅`.
    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        if self.rows.is_empty() {
            return "∅".into();
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&l| alphabet.letter_name(l)).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join("/"))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "[{}]", rows.join("/"))
    }
}

/// A pair of tableaux over `1..=m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalTableau {
    pub t1: Tableau,
    pub t2: Tableau,
    pub m: usize,
}

impl RationalTableau {
    pub fn new(t1: Tableau, t2: Tableau, m: usize) -> Self {
        RationalTableau { t1, t2, m }
    }

    pub fn shape(&self) -> RationalShape {
        RationalShape::new(self.t1.shape().clone(), self.t2.shape().clone(), self.m)
    }

    pub fn bigrade(&self) -> (usize, usize) {
        (self.t1.size(), self.t2.size())
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        self.t1.validate(alphabet)?;
        self.t2.validate(alphabet)
    }

    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        format!("({};{})", self.t1.display_with(alphabet), self.t2.display_with(alphabet))
    }
}

impl fmt::Display for RationalTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.t1, self.t2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Gl,
    Symplectic,
    Rational,
}

/// Shape argument for the regime-generic entry points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Plain(Partition),
    Rational(RationalShape),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyTableau {
    Plain(Tableau),
    Rational(RationalTableau),
}

/// Rows weakly and columns strictly increasing under `⪯`.
pub fn is_standard_gl(t: &Tableau, a: &Alphabet) -> bool {
    let rows_ok = t.rows.iter().all(|r| r.windows(2).all(|w| a.rank(w[0]) <= a.rank(w[1])));
    let cols_ok = t.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| a.rank(*hi) < a.rank(*lo)));
    rows_ok && cols_ok
}

/// King's occupancy bound for a set of letters.
pub fn king_bound_ok(set: &[usize], a: &Alphabet) -> bool {
    debug_assert!(a.is_paired());
    (1..=a.m()).all(|j| {
        let top = a.rank(j).max(a.rank(a.partner(j).unwrap()));
        set.iter().filter(|&&i| a.rank(i) <= top).count() <= a.zeta(j)
    })
}

/// Stembridge's joint bound for a pair of letter sets.
pub fn stembridge_bound_ok(i1: &[usize], i2: &[usize], a: &Alphabet) -> bool {
    (1..=a.n()).all(|j| {
        let below = |s: &[usize]| s.iter().filter(|&&i| a.rank(i) <= a.rank(j)).count();
        below(i1) + below(i2) <= a.zeta(j)
    })
}

pub fn is_symplectic_standard(t: &Tableau, a: &Alphabet) -> bool {
    a.is_paired() && is_standard_gl(t, a) && king_bound_ok(&t.first_column(), a)
}

pub fn is_rational_standard(t: &RationalTableau, a: &Alphabet) -> bool {
    is_standard_gl(&t.t1, a)
        && is_standard_gl(&t.t2, a)
        && stembridge_bound_ok(&t.t1.first_column(), &t.t2.first_column(), a)
}

struct Filler<'a> {
    a: &'a Alphabet,
    shape: &'a Partition,
    heights: Vec<usize>,
    cells: Vec<(usize, usize)>,
    king: bool,
    content: Option<Vec<usize>>,
    rows: Vec<Vec<usize>>,
    out: Vec<Tableau>,
}

impl Filler<'_> {
    fn go(&mut self, k: usize) {
        if k == self.cells.len() {
            self.out.push(Tableau { shape: self.shape.clone(), rows: self.rows.clone() });
            return;
        }
        let (r, c) = self.cells[k];
        let n = self.a.n();
        let lo = match (c.checked_sub(1).map(|c0| self.rows[r][c0]), r.checked_sub(1).map(|r0| self.rows[r0][c])) {
            (None, None) => 0,
            (Some(left), None) => self.a.rank(left),
            (None, Some(up)) => self.a.rank(up) + 1,
            (Some(left), Some(up)) => self.a.rank(left).max(self.a.rank(up) + 1),
        };
        let below = self.heights[c] - r - 1;
        if below >= n {
            return;
        }
        let hi = n - 1 - below;
        for rk in lo..=hi {
            let l = self.a.letter_at(rk);
            if let Some(cnt) = &self.content {
                if cnt[l - 1] == 0 {
                    continue;
                }
            }
            if self.king && c == 0 {
                let mut col: Vec<usize> = self.rows.iter().take(r).map(|row| row[0]).collect();
                col.push(l);
                if !king_bound_ok(&col, self.a) {
                    continue;
                }
            }
            if let Some(cnt) = &mut self.content {
                cnt[l - 1] -= 1;
            }
            self.rows[r].push(l);
            self.go(k + 1);
            self.rows[r].pop();
            if let Some(cnt) = &mut self.content {
                cnt[l - 1] += 1;
            }
        }
    }
}

fn fill(shape: &Partition, a: &Alphabet, king: bool, content: Option<Vec<usize>>) -> Vec<Tableau> {
    if shape.len() > a.n() || (king && shape.len() > a.m()) {
        return Vec::new();
    }
    let conj = shape.conjugate();
    let mut f = Filler {
        a,
        shape,
        heights: conj.parts().to_vec(),
        cells: shape.cells().collect(),
        king,
        content,
        rows: vec![Vec::new(); shape.len()],
        out: Vec::new(),
    };
    f.go(0);
    f.out
}

/// GL-standard tableaux of a shape, in lexicographic order of row reading words.
pub fn enumerate_gl(shape: &Partition, a: &Alphabet) -> Vec<Tableau> {
    fill(shape, a, false, None)
}

/// GL-standard tableaux of a shape with prescribed content (indexed by `letter − 1`).
pub fn enumerate_gl_with_content(shape: &Partition, a: &Alphabet, content: &[usize]) -> Vec<Tableau> {
    if content.iter().sum::<usize>() != shape.size() {
        return Vec::new();
    }
    fill(shape, a, false, Some(content.to_vec()))
}

pub fn enumerate_symplectic(shape: &Partition, a: &Alphabet) -> Vec<Tableau> {
    if !a.is_paired() {
        return Vec::new();
    }
    fill(shape, a, true, None)
}

pub fn enumerate_rational(shape: &RationalShape, a: &Alphabet) -> Vec<RationalTableau> {
    if !shape.is_admissible() {
        return Vec::new();
    }
    let left = enumerate_gl(&shape.lambda1, a);
    let right = enumerate_gl(&shape.lambda2, a);
    let mut out = Vec::new();
    for t1 in &left {
        let c1 = t1.first_column();
        for t2 in &right {
            if stembridge_bound_ok(&c1, &t2.first_column(), a) {
                out.push(RationalTableau::new(t1.clone(), t2.clone(), shape.m));
            }
        }
    }
    out
}

pub fn enumerate_standard(shape: &Shape, a: &Alphabet, regime: Regime) -> Result<Vec<AnyTableau>> {
    match (shape, regime) {
        (Shape::Plain(p), Regime::Gl) => Ok(enumerate_gl(p, a).into_iter().map(AnyTableau::Plain).collect()),
        (Shape::Plain(p), Regime::Symplectic) => {
            if !a.is_paired() {
                return Err(Error::InvalidAlphabet("symplectic regime needs a paired alphabet".into()));
            }
            Ok(enumerate_symplectic(p, a).into_iter().map(AnyTableau::Plain).collect())
        }
        (Shape::Rational(s), Regime::Rational) => {
            Ok(enumerate_rational(s, a).into_iter().map(AnyTableau::Rational).collect())
        }
        _ => Err(Error::ShapeMismatch("shape kind does not match the regime".into())),
    }
}

/// Row `i` filled with letter `i`.
pub fn canonical(shape: &Partition) -> Tableau {
    Tableau::from_rows(shape.parts().iter().enumerate().map(|(i, &p)| vec![i + 1; p]).collect()).expect("shape rows")
}

/// `t1` row `i` filled with `i`, `t2` row `i` filled with `m − i + 1`.
pub fn canonical_rational(shape: &RationalShape) -> Result<RationalTableau> {
    if !shape.is_admissible() {
        return Err(Error::Inadmissible(format!("{shape} at m = {}", shape.m)));
    }
    let t2 =
        Tableau::from_rows(shape.lambda2.parts().iter().enumerate().map(|(i, &p)| vec![shape.m - i; p]).collect())?;
    Ok(RationalTableau::new(canonical(&shape.lambda1), t2, shape.m))
}

pub fn gl_weight(t: &Tableau, n: usize) -> Vec<i64> {
    t.content(n).into_iter().map(|c| c as i64).collect()
}

/// `+1` for each unprimed letter, `−1` for each primed one, by pair.
pub fn symplectic_weight(t: &Tableau, a: &Alphabet) -> Vec<i64> {
    symplectic_weight_of(t.entries(), a)
}

pub(crate) fn symplectic_weight_of(letters: impl IntoIterator<Item = usize>, a: &Alphabet) -> Vec<i64> {
    let mut w = vec![0i64; a.m()];
    for l in letters {
        let i = a.unprimed(l) - 1;
        w[i] += if a.is_primed(l) { -1 } else { 1 };
    }
    w
}

pub fn rational_weight(t: &RationalTableau) -> Vec<i64> {
    let a = gl_weight(&t.t1, t.m);
    let b = gl_weight(&t.t2, t.m);
    a.iter().zip(&b).map(|(x, y)| x - y).collect()
}

/// Occurrences of `i` and `i′` together, for `i ∈ 1..=m`.
pub fn symplectic_content(t: &Tableau, a: &Alphabet) -> Vec<usize> {
    let mut c = vec![0; a.m()];
    for l in t.entries() {
        c[a.unprimed(l) - 1] += 1;
    }
    c
}

/// Content order: compare at the `⪯`-largest index where the two differ.
pub fn content_cmp(x: &[usize], y: &[usize], a: &Alphabet) -> Ordering {
    for i in a.content_priority() {
        match x[i].cmp(&y[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}
