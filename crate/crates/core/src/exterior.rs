//! Exterior algebra over `ℤ` with the invariant elements `z_t` and the
//! expansion of `v_J` in the basis `{z_t ∧ v_L : L standard}`.
//!
//! Elements are stored by *positions*: the basis vectors of the underlying
//! free module are numbered `0..N` and `v_I` is the wedge of its positions in
//! increasing order. A [`Labelling`] translates letters to positions.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactla::{ExactMatrix, Rational};
use crate::tableaux::{king_bound_ok, stembridge_bound_ok, Alphabet};
use crate::{Error, Result};

/// Sign of sorting a sequence of distinct values, or `None` on a repeat.
pub fn sort_sign(seq: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && seq[j - 1] == seq[j] {
            return None;
        }
    }
    Some(sign)
}

/// Homogeneous-or-not element `Σ c_I v_I`, keyed by sorted position sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtElement {
    coords: BTreeMap<Vec<usize>, BigInt>,
}

impl ExtElement {
    pub fn zero() -> Self {
        ExtElement::default()
    }

    pub fn one() -> Self {
        Self::basis(Vec::new())
    }

    /// `v_I` for a position set; the input is sorted with sign.
    pub fn basis(mut positions: Vec<usize>) -> Self {
        let mut e = ExtElement::zero();
        if let Some(s) = sort_sign(&mut positions) {
            e.add_term(positions, BigInt::from(s));
        }
        e
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coords.remove(&key);
        }
    }

    pub fn coords(&self) -> &BTreeMap<Vec<usize>, BigInt> {
        &self.coords
    }

    pub fn coeff(&self, key: &[usize]) -> BigInt {
        self.coords.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut e = ExtElement::zero();
        for (k, v) in &self.coords {
            e.add_term(k.clone(), v * c);
        }
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (k, v) in &other.coords {
            e.add_term(k.clone(), v.clone());
        }
        e
    }

    /// Common degree of all terms, if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.coords.keys().map(Vec::len);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }
}

/// Bilinear wedge; basis products sorted with the merge sign.
pub fn wedge(u: &ExtElement, v: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (a, x) in &u.coords {
        for (b, y) in &v.coords {
            let mut seq: Vec<usize> = a.iter().chain(b).copied().collect();
            if let Some(s) = sort_sign(&mut seq) {
                let c = x * y;
                out.add_term(seq, if s < 0 { -c } else { c });
            }
        }
    }
    out
}

/// Letter sets as seen by the exterior algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtIndex {
    /// Subset of a paired alphabet `1..=2m`, sorted by `⪯`.
    Set(Vec<usize>),
    /// `(I¹, I²)` over `1..=m`, each sorted by `⪯`, standing for `v_{I¹} ∧ w_{I²}`.
    Pair(Vec<usize>, Vec<usize>),
}

/// Position classes: `(r, 0)` for sets, `(r, s)` for pairs.
pub type Class = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Labelling {
    /// Single alphabet `V` with pairing; positions are `⪯`-ranks.
    Symplectic(Alphabet),
    /// `V ⊕ W` over an unpaired alphabet of size `m`; `v_i` sits at
    /// `rank(i)` and `w_i` at `m + rank(i)`.
    Pair(Alphabet),
}

struct ZBasis {
    labels: Vec<(usize, Vec<usize>)>,
    index: HashMap<Vec<usize>, usize>,
    inverse: Vec<Vec<BigInt>>,
    det: BigInt,
}

/// Exterior algebra over a labelling with cached basis changes.
pub struct ExtAlgebra {
    lab: Labelling,
    cache: RwLock<HashMap<Class, Arc<ZBasis>>>,
}

impl std::fmt::Debug for ExtAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExtAlgebra").field("lab", &self.lab).finish()
    }
}

impl ExtAlgebra {
    pub fn symplectic(alphabet: Alphabet) -> Result<Self> {
        if !alphabet.is_paired() {
            return Err(Error::InvalidAlphabet("symplectic labelling needs a pairing".into()));
        }
        Ok(ExtAlgebra { lab: Labelling::Symplectic(alphabet), cache: RwLock::default() })
    }

    pub fn pair(alphabet: Alphabet) -> Result<Self> {
        if alphabet.is_paired() {
            return Err(Error::InvalidAlphabet("pair labelling takes an unpaired alphabet".into()));
        }
        Ok(ExtAlgebra { lab: Labelling::Pair(alphabet), cache: RwLock::default() })
    }

    pub fn labelling(&self) -> &Labelling {
        &self.lab
    }

    pub fn m(&self) -> usize {
        match &self.lab {
            Labelling::Symplectic(a) => a.m(),
            Labelling::Pair(a) => a.n(),
        }
    }

    /// Number of positions.
    pub fn width(&self) -> usize {
        2 * self.m()
    }

    pub fn positions(&self, idx: &ExtIndex) -> Result<Vec<usize>> {
        let mut p = match (&self.lab, idx) {
            (Labelling::Symplectic(a), ExtIndex::Set(s)) => s.iter().map(|&l| a.rank(l)).collect::<Vec<_>>(),
            (Labelling::Pair(a), ExtIndex::Pair(s1, s2)) => {
                let m = a.n();
                s1.iter().map(|&l| a.rank(l)).chain(s2.iter().map(|&l| m + a.rank(l))).collect()
            }
            _ => return Err(Error::ContextMismatch("index kind does not match the labelling".into())),
        };
        match sort_sign(&mut p) {
            Some(_) => Ok(p),
            None => Err(Error::InvalidEntry("repeated letter in an exterior index".into())),
        }
    }

    pub fn index(&self, positions: &[usize]) -> ExtIndex {
        match &self.lab {
            Labelling::Symplectic(a) => ExtIndex::Set(positions.iter().map(|&p| a.letter_at(p)).collect()),
            Labelling::Pair(a) => {
                let m = a.n();
                let (v, w): (Vec<usize>, Vec<usize>) = positions.iter().partition(|&&p| p < m);
                ExtIndex::Pair(
                    v.iter().map(|&p| a.letter_at(p)).collect(),
                    w.iter().map(|&p| a.letter_at(p - m)).collect(),
                )
            }
        }
    }

    /// `v_I` for a letter index.
    pub fn basis_vector(&self, idx: &ExtIndex) -> Result<ExtElement> {
        Ok(ExtElement::basis(self.positions(idx)?))
    }

    /// Coordinates keyed by letter indices.
    pub fn coords(&self, e: &ExtElement) -> BTreeMap<ExtIndex, BigInt> {
        e.coords.iter().map(|(k, v)| (self.index(k), v.clone())).collect()
    }

    pub fn class_of(&self, positions: &[usize]) -> Class {
        match &self.lab {
            Labelling::Symplectic(_) => (positions.len(), 0),
            Labelling::Pair(a) => {
                let r = positions.iter().filter(|&&p| p < a.n()).count();
                (r, positions.len() - r)
            }
        }
    }

    /// Class of the `L` paired with `z_t`. Layers with `|L| + t > m` are
    /// empty: past the middle degree only `t ≥ r − m` contributes.
    fn sub_class(&self, c: Class, t: usize) -> Option<Class> {
        let sub = match &self.lab {
            Labelling::Symplectic(_) => (c.0.checked_sub(2 * t)?, 0),
            Labelling::Pair(_) => (c.0.checked_sub(t)?, c.1.checked_sub(t)?),
        };
        (sub.0 + sub.1 + t <= self.m()).then_some(sub)
    }

    fn max_t(&self, c: Class) -> usize {
        match &self.lab {
            Labelling::Symplectic(_) => c.0 / 2,
            Labelling::Pair(_) => c.0.min(c.1),
        }
    }

    /// All position sets of a class, ascending.
    pub fn class_sets(&self, c: Class) -> Vec<Vec<usize>> {
        match &self.lab {
            Labelling::Symplectic(a) => combinations(a.n(), c.0),
            Labelling::Pair(a) => {
                let m = a.n();
                let ws = combinations(m, c.1);
                let mut out = Vec::new();
                for v in combinations(m, c.0) {
                    for w in &ws {
                        out.push(v.iter().copied().chain(w.iter().map(|&p| p + m)).collect());
                    }
                }
                out
            }
        }
    }

    /// King bound (sets) or Stembridge bound (pairs) on a position set.
    pub fn is_standard(&self, positions: &[usize]) -> bool {
        match (&self.lab, self.index(positions)) {
            (Labelling::Symplectic(a), ExtIndex::Set(s)) => king_bound_ok(&s, a),
            (Labelling::Pair(a), ExtIndex::Pair(s1, s2)) => stembridge_bound_ok(&s1, &s2, a),
            _ => unreachable!(),
        }
    }

    /// Position pairs `(i′, i)` for `i = 1..=m`, the factors of `z(I)`.
    fn z_pairs(&self) -> Vec<(usize, usize)> {
        match &self.lab {
            Labelling::Symplectic(a) => (1..=a.m()).map(|i| (a.rank(a.partner(i).unwrap()), a.rank(i))).collect(),
            Labelling::Pair(a) => {
                let m = a.n();
                (1..=m).map(|i| (m + a.rank(i), a.rank(i))).collect()
            }
        }
    }

    /// `z(K) = v_{k′₁} ∧ v_{k₁} ∧ …` for `K ⊆ 1..=m` (0-based pair indices).
    fn z_of(&self, k: &[usize]) -> ExtElement {
        let pairs = self.z_pairs();
        ExtElement::basis(k.iter().flat_map(|&i| [pairs[i].0, pairs[i].1]).collect())
    }

    /// `z_t = Σ_{|K| = t} z(K)`.
    pub fn z_element(&self, t: usize) -> Result<ExtElement> {
        let m = self.m();
        if t > m {
            return Err(Error::Inadmissible(format!("z_{t} needs t ≤ m = {m}")));
        }
        let mut e = ExtElement::zero();
        for k in combinations(m, t) {
            e = e.add(&self.z_of(&k));
        }
        Ok(e)
    }

    fn zbasis(&self, c: Class) -> Arc<ZBasis> {
        if let Some(z) = self.cache.read().unwrap().get(&c) {
            return z.clone();
        }
        let z = Arc::new(self.build_zbasis(c));
        self.cache.write().unwrap().entry(c).or_insert(z).clone()
    }

    fn build_zbasis(&self, c: Class) -> ZBasis {
        let sets = self.class_sets(c);
        let index: HashMap<Vec<usize>, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut labels = Vec::new();
        let mut cols = Vec::new();
        for t in 0..=self.max_t(c) {
            let Some(sc) = self.sub_class(c, t) else { continue };
            let zt = self.z_element(t).expect("t within range");
            for l in self.class_sets(sc).into_iter().filter(|l| self.is_standard(l)) {
                let e = wedge(&zt, &ExtElement::basis(l.clone()));
                let mut col = vec![Rational::zero(); sets.len()];
                for (k, v) in &e.coords {
                    col[index[k]] = Rational::from_bigint(v.clone());
                }
                cols.push(col);
                labels.push((t, l));
            }
        }
        assert_eq!(labels.len(), sets.len(), "z-basis size differs from the rank of the exterior power");
        let mat = ExactMatrix::from_columns(sets.len(), &cols);
        let det = mat.determinant().expect("square").to_bigint().expect("integral determinant");
        let inv = mat.inverse().expect("square").expect("z-basis is a basis");
        let inverse = (0..sets.len())
            .map(|i| inv.row(i).iter().map(|x| x.to_bigint().expect("unimodular change of basis")).collect())
            .collect();
        ZBasis { labels, index, inverse, det }
    }

    /// Size of the standard part of each `z_t` layer of a class: the
    /// `t`-th entry counts standard `L` of the class lowered by `t`.
    pub fn zbasis_layer_counts(&self, c: Class) -> Vec<usize> {
        let z = self.zbasis(c);
        let mut counts = vec![0; self.max_t(c) + 1];
        for (t, _) in &z.labels {
            counts[*t] += 1;
        }
        counts
    }

    /// Determinant of the basis change for a class (±1 when unimodular).
    pub fn zbasis_determinant(&self, c: Class) -> BigInt {
        self.zbasis(c).det.clone()
    }

    /// Coordinates of `w` in `{z_t ∧ v_L}`; keys are `(t, L)` as position sets.
    pub fn expand_positions(&self, w: &ExtElement) -> Result<BTreeMap<(usize, Vec<usize>), BigInt>> {
        let mut classes = w.coords.keys().map(|k| self.class_of(k));
        let Some(c) = classes.next() else { return Ok(BTreeMap::new()) };
        if classes.any(|d| d != c) {
            return Err(Error::Inhomogeneous);
        }
        let z = self.zbasis(c);
        let mut out: BTreeMap<(usize, Vec<usize>), BigInt> = BTreeMap::new();
        for (k, v) in &w.coords {
            let j = z.index[k];
            for (row, label) in z.inverse.iter().zip(&z.labels) {
                let a = &row[j];
                if !a.is_zero() {
                    *out.entry(label.clone()).or_default() += a * v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Coordinates of `w` in `{z_t ∧ v_L : L standard}`.
    pub fn expand_in_zbasis(&self, w: &ExtElement) -> Result<BTreeMap<(usize, ExtIndex), BigInt>> {
        Ok(self.expand_positions(w)?.into_iter().map(|((t, l), v)| ((t, self.index(&l)), v)).collect())
    }

    /// `z_t ∧ v_L = Σ_I c_{LI} v_I`.
    pub fn c_coeffs(&self, t: usize, l: &ExtIndex) -> Result<BTreeMap<ExtIndex, BigInt>> {
        let e = wedge(&self.z_element(t)?, &self.basis_vector(l)?);
        Ok(self.coords(&e))
    }

    /// All `(L′, c_{L′I})` with `c_{L′I} ≠ 0` for fixed `I` and `t`.
    pub fn c_column(&self, t: usize, i: &[usize]) -> Vec<(Vec<usize>, BigInt)> {
        let pairs = self.z_pairs();
        let inside: Vec<usize> =
            (0..pairs.len()).filter(|&k| i.contains(&pairs[k].0) && i.contains(&pairs[k].1)).collect();
        let mut out = Vec::new();
        for pick in combinations(inside.len(), t) {
            let k: Vec<usize> = pick.iter().map(|&p| inside[p]).collect();
            let removed: Vec<usize> = k.iter().flat_map(|&q| [pairs[q].0, pairs[q].1]).collect();
            let rest: Vec<usize> = i.iter().copied().filter(|p| !removed.contains(p)).collect();
            let mut seq: Vec<usize> = removed.iter().chain(&rest).copied().collect();
            let s = sort_sign(&mut seq).expect("distinct positions");
            out.push((rest, BigInt::from(s)));
        }
        out
    }
}

/// Moves an element of `Λ V_{2m}` (block pairing) to the pair labelling.
pub fn relabel_to_pairs(w: &ExtElement, sym: &ExtAlgebra, pair: &ExtAlgebra) -> Result<ExtElement> {
    let (Labelling::Symplectic(a), Labelling::Pair(b)) = (&sym.lab, &pair.lab) else {
        return Err(Error::ContextMismatch("expected symplectic then pair labelling".into()));
    };
    let m = b.n();
    if a.m() != m || a.jform() != Some(crate::tableaux::JForm::Block) {
        return Err(Error::ContextMismatch("relabelling needs the block pairing on 2m letters".into()));
    }
    let mut out = ExtElement::zero();
    for (k, v) in &w.coords {
        let mut seq: Vec<usize> = k
            .iter()
            .map(|&p| {
                let l = a.letter_at(p);
                if l <= m {
                    b.rank(l)
                } else {
                    m + b.rank(l - m)
                }
            })
            .collect();
        let s = sort_sign(&mut seq).expect("distinct letters");
        out.add_term(seq, if s < 0 { -v } else { v.clone() });
    }
    Ok(out)
}

/// Inverse of [`relabel_to_pairs`].
pub fn relabel_to_symplectic(w: &ExtElement, pair: &ExtAlgebra, sym: &ExtAlgebra) -> Result<ExtElement> {
    let (Labelling::Pair(b), Labelling::Symplectic(a)) = (&pair.lab, &sym.lab) else {
        return Err(Error::ContextMismatch("expected pair then symplectic labelling".into()));
    };
    let m = b.n();
    if a.m() != m || a.jform() != Some(crate::tableaux::JForm::Block) {
        return Err(Error::ContextMismatch("relabelling needs the block pairing on 2m letters".into()));
    }
    let mut out = ExtElement::zero();
    for (k, v) in &w.coords {
        let mut seq: Vec<usize> =
            k.iter().map(|&p| if p < m { a.rank(b.letter_at(p)) } else { a.rank(b.letter_at(p - m) + m) }).collect();
        let s = sort_sign(&mut seq).expect("distinct letters");
        out.add_term(seq, if s < 0 { -v } else { v.clone() });
    }
    Ok(out)
}

/// `k`-subsets of `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: &[usize]) -> ExtElement {
        ExtElement::basis(p.to_vec())
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&v(&[0]), &v(&[1])), v(&[0, 1]));
        assert_eq!(wedge(&v(&[1]), &v(&[0])), v(&[0, 1]).scale(&BigInt::from(-1)));
        assert!(wedge(&v(&[0]), &v(&[0])).is_zero());
    }

    #[test]
    fn z_examples() {
        let alg = ExtAlgebra::symplectic(Alphabet::symplectic(2)).unwrap();
        let z1 = alg.z_element(1).unwrap();
        // 1′ ≺ 1 ≺ 2′ ≺ 2 puts each z(i) in sorted order already.
        assert_eq!(z1, v(&[0, 1]).add(&v(&[2, 3])));
        assert_eq!(wedge(&z1, &z1), alg.z_element(2).unwrap().scale(&BigInt::from(2)));
        assert!(wedge(&alg.z_element(2).unwrap(), &z1).is_zero());
    }

    #[test]
    fn expansion_examples() {
        let a1 = Alphabet::symplectic(1);
        let alg = ExtAlgebra::symplectic(a1).unwrap();
        let e = alg.expand_in_zbasis(&alg.basis_vector(&ExtIndex::Set(vec![2, 1])).unwrap()).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![((1, ExtIndex::Set(vec![])), BigInt::one())]);

        let alg = ExtAlgebra::symplectic(Alphabet::symplectic(2)).unwrap();
        let e = alg.expand_in_zbasis(&alg.basis_vector(&ExtIndex::Set(vec![3, 1])).unwrap()).unwrap();
        let want: BTreeMap<_, _> =
            [((0, ExtIndex::Set(vec![4, 2])), BigInt::from(-1)), ((1, ExtIndex::Set(vec![])), BigInt::from(1))]
                .into_iter()
                .collect();
        assert_eq!(e, want);

        let std = ExtIndex::Set(vec![3, 4]);
        let e = alg.expand_in_zbasis(&alg.basis_vector(&std).unwrap()).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![((0, std), BigInt::one())]);
    }

    #[test]
    fn c_coeff_examples() {
        let alg = ExtAlgebra::symplectic(Alphabet::symplectic(1)).unwrap();
        let c = alg.c_coeffs(1, &ExtIndex::Set(vec![])).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(ExtIndex::Set(vec![2, 1]), BigInt::one())]);
        let c0 = alg.c_coeffs(0, &ExtIndex::Set(vec![1])).unwrap();
        assert_eq!(c0.into_iter().collect::<Vec<_>>(), vec![(ExtIndex::Set(vec![1]), BigInt::one())]);
    }

    #[test]
    fn relabel_examples() {
        let sym = ExtAlgebra::symplectic(Alphabet::symplectic(2)).unwrap();
        let pair = ExtAlgebra::pair(Alphabet::natural(2)).unwrap();
        let w = sym.basis_vector(&ExtIndex::Set(vec![3, 1])).unwrap();
        let p = relabel_to_pairs(&w, &sym, &pair).unwrap();
        let target = pair.basis_vector(&ExtIndex::Pair(vec![1], vec![1])).unwrap();
        assert_eq!(p, target.scale(&BigInt::from(-1)));
        assert_eq!(relabel_to_symplectic(&p, &pair, &sym).unwrap(), w);
        let e = relabel_to_pairs(&ExtElement::one(), &sym, &pair).unwrap();
        assert_eq!(e, ExtElement::one());
    }

    #[test]
    fn sort_sign_parity() {
        assert_eq!(sort_sign(&mut [2, 0, 1]), Some(1));
        assert_eq!(sort_sign(&mut [1, 0]), Some(-1));
        assert_eq!(sort_sign(&mut [1, 1]), None);
    }
}
