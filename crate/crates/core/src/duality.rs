//! The walled Brauer algebra `B_{r,s}(δ)` acting on `V^⊗r ⊗ W^⊗s`, the tensor
//! action of pairs of matrices, exact commutants and the double centraliser
//! report.
//!
//! Vertices of a diagram are `t1..t_{r+s}` on top and `b1..b_{r+s}` below;
//! the first `r` of each row lie left of the wall. Endomorphisms are square
//! matrices indexed row-major by `(i₁..i_r, u₁..u_s)`, top labels giving the
//! row.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::bidet::{ideal_generators, sample_point, Context, SampleOptions, Verdict};
use crate::exactla::{ExactMatrix, Rational, RowSpace};
use crate::exec::{stream_rng, Exec};
use crate::polyring::{Monomial, Variable};
use crate::shapes::rational_shapes_rs;
use crate::tableaux::{enumerate_rational, Alphabet};
use crate::{Error, Result};

/// Endomorphism of `V^⊗r ⊗ W^⊗s` as an `m^{r+s}` square matrix.
pub type Endo = ExactMatrix;

/// A perfect matching on the `2(r+s)` vertices; top vertex `k` is `k`,
/// bottom vertex `k` is `r+s+k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalledDiagram {
    r: usize,
    s: usize,
    mate: Vec<usize>,
}

impl WalledDiagram {
    /// Checks the matching and the wall conditions.
    pub fn new(r: usize, s: usize, mate: Vec<usize>) -> Result<Self> {
        let n = r + s;
        if mate.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!("{} vertices for (r,s) = ({r},{s})", mate.len())));
        }
        for (v, &w) in mate.iter().enumerate() {
            if w >= 2 * n || w == v || mate[w] != v {
                return Err(Error::InvalidEntry(format!("vertex {v} is not matched consistently")));
            }
            let same_row = (v < n) == (w < n);
            let same_side = (v % n < r) == (w % n < r);
            if same_row == same_side {
                return Err(Error::InvalidEntry(format!("edge {v}-{w} violates the wall")));
            }
        }
        Ok(WalledDiagram { r, s, mate })
    }

    pub fn identity(r: usize, s: usize) -> Self {
        let n = r + s;
        let mate = (0..2 * n).map(|v| if v < n { v + n } else { v - n }).collect();
        WalledDiagram { r, s, mate }
    }

    /// The contraction with horizontal edges `{t_a, t_{r+1}}` and `{b_a, b_{r+1}}`.
    pub fn contraction(r: usize, s: usize, a: usize) -> Result<Self> {
        if r == 0 || s == 0 || a == 0 || a > r {
            return Err(Error::Inadmissible(format!("no contraction at t{a} for (r,s) = ({r},{s})")));
        }
        let n = r + s;
        let mut d = Self::identity(r, s);
        let (x, y) = (a - 1, r);
        d.mate[x] = y;
        d.mate[y] = x;
        d.mate[n + x] = n + y;
        d.mate[n + y] = n + x;
        Ok(d)
    }

    /// The generator `b`: horizontal edges `{t_r, t_{r+1}}` and `{b_r, b_{r+1}}`.
    pub fn b(r: usize, s: usize) -> Result<Self> {
        Self::contraction(r, s, r)
    }

    /// All-vertical diagram of `(σ, τ) ∈ Sym_r × Sym_s`: `t_k` joined to `b_{σ(k)}`.
    pub fn permutation(sigma: &[usize], tau: &[usize]) -> Result<Self> {
        let (r, s) = (sigma.len(), tau.len());
        let n = r + s;
        let mut mate = vec![usize::MAX; 2 * n];
        for (k, &img) in sigma.iter().chain(tau).enumerate() {
            let img = if k < r { img } else { r + img };
            if img >= n {
                return Err(Error::InvalidEntry(format!("{img} out of range")));
            }
            mate[k] = n + img;
            if mate[n + img] != usize::MAX {
                return Err(Error::InvalidEntry("not a permutation".into()));
            }
            mate[n + img] = k;
        }
        Self::new(r, s, mate)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn mate(&self, v: usize) -> usize {
        self.mate[v]
    }

    /// Edges as vertex pairs `(v, w)` with `v < w`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate.iter().enumerate().filter(|(v, &w)| *v < w).map(|(v, &w)| (v, w)).collect()
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.r + self.s;
        (0..n).all(|v| self.mate[v] >= n)
    }

    fn vertex_name(&self, v: usize) -> String {
        let n = self.r + self.s;
        if v < n {
            format!("t{}", v + 1)
        } else {
            format!("b{}", v - n + 1)
        }
    }
}

impl fmt::Display for WalledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mate.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> =
            self.edges().iter().map(|&(v, w)| format!("{}-{}", self.vertex_name(v), self.vertex_name(w))).collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for WalledDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every walled diagram, in a fixed order starting with the identity.
///
/// Swapping the two rows right of the wall turns walled diagrams into
/// permutations of `r+s` letters.
pub fn enumerate_diagrams(r: usize, s: usize) -> Vec<WalledDiagram> {
    let n = r + s;
    let flip_top = |i: usize| if i < r { i } else { n + i };
    let flip_bottom = |j: usize| if j < r { n + j } else { j };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let mut mate = vec![0; 2 * n];
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (flip_top(i), flip_bottom(j));
            mate[a] = b;
            mate[b] = a;
        }
        out.push(WalledDiagram { r, s, mate });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Stacks `d1` over `d2` (the bottom of `d1` glued to the top of `d2`) and
/// returns the reduced diagram with its number of closed loops.
pub fn compose(d1: &WalledDiagram, d2: &WalledDiagram) -> Result<(WalledDiagram, usize)> {
    if (d1.r, d1.s) != (d2.r, d2.s) {
        return Err(Error::DimensionMismatch(format!("({},{}) vs ({},{})", d1.r, d1.s, d2.r, d2.s)));
    }
    let n = d1.r + d1.s;
    let layers = [&d1.mate, &d2.mate];
    let mut seen = vec![false; n];
    // From vertex `v` of layer `l`, follow strands to an outer vertex.
    let walk = |mut l: usize, mut v: usize, seen: &mut Vec<bool>| -> usize {
        loop {
            let w = layers[l][v];
            match (l, w < n) {
                (0, true) => return w,
                (1, false) => return w,
                (0, false) => {
                    seen[w - n] = true;
                    l = 1;
                    v = w - n;
                }
                _ => {
                    seen[w] = true;
                    l = 0;
                    v = n + w;
                }
            }
        }
    };
    let mate: Vec<usize> =
        (0..2 * n).map(|v| if v < n { walk(0, v, &mut seen) } else { walk(1, v, &mut seen) }).collect();
    let mut loops = 0;
    for k in 0..n {
        if seen[k] {
            continue;
        }
        loops += 1;
        let (mut l, mut v) = (0, n + k);
        loop {
            let w = layers[l][v];
            let mid = if l == 0 { w - n } else { w };
            seen[mid] = true;
            if l == 0 {
                l = 1;
                v = mid;
            } else {
                l = 0;
                v = n + mid;
            }
            if mid == k {
                break;
            }
        }
    }
    Ok((WalledDiagram { r: d1.r, s: d1.s, mate }, loops))
}

/// A finitely supported element of `B_{r,s}(δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalledElement {
    pub r: usize,
    pub s: usize,
    pub delta: Rational,
    pub terms: BTreeMap<WalledDiagram, Rational>,
}

impl WalledElement {
    pub fn zero(r: usize, s: usize, delta: Rational) -> Self {
        WalledElement { r, s, delta, terms: BTreeMap::new() }
    }

    pub fn diagram(d: WalledDiagram, delta: Rational) -> Self {
        WalledElement { r: d.r, s: d.s, delta, terms: BTreeMap::from([(d, Rational::one())]) }
    }

    pub fn add_term(&mut self, d: WalledDiagram, c: Rational) {
        let e = self.terms.entry(d.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.delta != other.delta {
            return Err(Error::ContextMismatch("different parameters δ".into()));
        }
        let mut out = Self::zero(self.r, self.s, self.delta.clone());
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let (d, loops) = compose(d1, d2)?;
                out.add_term(d, c1 * c2 * self.delta.pow(loops as u32));
            }
        }
        Ok(out)
    }

    /// `Σ c_D E(D)`; only meaningful when `δ = m`.
    pub fn endo(&self, m: usize) -> Endo {
        let size = m.pow((self.r + self.s) as u32);
        let mut out = ExactMatrix::zeros(size, size);
        for (d, c) in &self.terms {
            out = out.add(&endo_of_diagram(d, m).scale(c)).expect("same size");
        }
        out
    }
}

/// Sparse vector as `(coordinate, value)` pairs, coordinates increasing.
type Sparse = Vec<(usize, Rational)>;

fn index(labels: &[usize], m: usize) -> usize {
    labels.iter().fold(0, |acc, &l| acc * m + l)
}

fn digits(mut idx: usize, m: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % m;
        idx /= m;
    }
    out
}

/// Flat positions `row·size + col` of the nonzero (unit) entries of `E(D)`.
fn diagram_support(d: &WalledDiagram, m: usize) -> Vec<usize> {
    let n = d.r + d.s;
    let size = m.pow(n as u32);
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let edges = d.edges();
    let mut labels = vec![0usize; 2 * n];
    let mut edge_labels = vec![0usize; edges.len()];
    loop {
        for (&(v, w), &l) in edges.iter().zip(&edge_labels) {
            labels[v] = l;
            labels[w] = l;
        }
        out.push(index(&labels[..n], m) * size + index(&labels[n..], m));
        // Odometer over edge labels.
        let mut k = edge_labels.len();
        loop {
            if k == 0 {
                out.sort_unstable();
                return out;
            }
            k -= 1;
            edge_labels[k] += 1;
            if edge_labels[k] < m {
                break;
            }
            edge_labels[k] = 0;
        }
    }
}

fn diagram_sparse(d: &WalledDiagram, m: usize) -> Sparse {
    diagram_support(d, m).into_iter().map(|p| (p, Rational::one())).collect()
}

/// The endomorphism `E(D)`: a product of Kronecker deltas along the edges.
pub fn endo_of_diagram(d: &WalledDiagram, m: usize) -> Endo {
    let size = m.pow((d.r + d.s) as u32);
    let mut out = ExactMatrix::zeros(size, size);
    for p in diagram_support(d, m) {
        out.set(p / size, p % size, Rational::one());
    }
    out
}

fn kron(x: &ExactMatrix, y: &ExactMatrix) -> ExactMatrix {
    let (xr, xc, yr, yc) = (x.rows(), x.cols(), y.rows(), y.cols());
    let mut out = ExactMatrix::zeros(xr * yr, xc * yc);
    for i in 0..xr {
        for j in 0..xc {
            let a = x.get(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..yr {
                for l in 0..yc {
                    let b = y.get(k, l);
                    if !b.is_zero() {
                        out.set(i * yr + k, j * yc + l, a * b);
                    }
                }
            }
        }
    }
    out
}

/// `A^{⊗r} ⊗ B^{⊗s}`.
pub fn rho(a: &ExactMatrix, b: &ExactMatrix, r: usize, s: usize) -> Result<Endo> {
    if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("rho needs two square matrices of one size".into()));
    }
    let mut out = ExactMatrix::identity(1);
    for _ in 0..r {
        out = kron(&out, a);
    }
    for _ in 0..s {
        out = kron(&out, b);
    }
    Ok(out)
}

/// `ρ(A, (A⁻¹)ᵀ)`, the action of `A ∈ GL_m`.
pub fn rho_gl(a: &ExactMatrix, r: usize, s: usize) -> Result<Endo> {
    let inv = a.inverse()?.ok_or_else(|| Error::InvalidEntry("singular matrix in GL action".into()))?;
    rho(a, &inv.transpose(), r, s)
}

/// Exact rank of `{ρ(A,B)}` for the given points.
pub fn envelope_dim(points: &[(ExactMatrix, ExactMatrix)], r: usize, s: usize) -> Result<usize> {
    let mut space: Option<RowSpace> = None;
    for (a, b) in points {
        let e = rho(a, b, r, s)?;
        space.get_or_insert_with(|| RowSpace::new(e.rows() * e.cols())).insert(e.as_flat());
    }
    Ok(space.map_or(0, |s| s.rank()))
}

/// Which group or monoid an envelope is sampled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Envelope {
    /// `(A, (A⁻¹)ᵀ)` for `A ∈ GL_m`.
    Gl,
    /// `(A, B)` independent in `GL_m × GL_m`.
    GlGl,
    /// Points of the monoid `M`.
    Monoid,
}

/// Stop after this many consecutive samples that do not raise the rank.
const PATIENCE: usize = 8;
const MAX_SAMPLES: usize = 100_000;

/// A random integer matrix of determinant ±1.
pub fn unimodular(m: usize, rng: &mut impl Rng) -> ExactMatrix {
    let mut a = ExactMatrix::identity(m);
    for i in 0..m {
        if rng.gen_bool(0.5) {
            a.set(i, i, Rational::from_i64(-1));
        }
    }
    if m < 2 {
        return a;
    }
    for _ in 0..3 * m {
        let i = rng.gen_range(0..m);
        let j = (i + rng.gen_range(1..m)) % m;
        let c = Rational::from_i64([-2, -1, 1, 2][rng.gen_range(0..4)]);
        // Row operation: row_i += c·row_j.
        for k in 0..m {
            let v = a.get(i, k) + &(&c * a.get(j, k));
            a.set(i, k, v);
        }
    }
    a
}

fn envelope_point(kind: Envelope, m: usize, rng: &mut impl Rng) -> Result<(ExactMatrix, ExactMatrix)> {
    match kind {
        Envelope::Gl => {
            let a = unimodular(m, rng);
            let b = a.inverse()?.expect("unimodular").transpose();
            Ok((a, b))
        }
        Envelope::GlGl => Ok((unimodular(m, rng), unimodular(m, rng))),
        Envelope::Monoid => {
            let p = sample_point(&Context::monoid(m), rng, &SampleOptions::default())?;
            Ok((p.x, p.y.expect("two-block point")))
        }
    }
}

/// Torus weight of a tensor index: `content(i) − content(u)` for the
/// diagonal torus of `GL_m`, or both contents for `GL_m × GL_m`.
fn index_weight(kind: Envelope, idx: usize, m: usize, r: usize, s: usize) -> Vec<i64> {
    let labels = digits(idx, m, r + s);
    let mut w = vec![0i64; if kind == Envelope::GlGl { 2 * m } else { m }];
    for (k, &l) in labels.iter().enumerate() {
        match (k < r, kind) {
            (true, _) => w[l] += 1,
            (false, Envelope::GlGl) => w[m + l] += 1,
            (false, _) => w[l] -= 1,
        }
    }
    w
}

/// The span of `ρ` over a group or monoid containing the diagonal torus,
/// kept as a direct sum over (row weight, column weight) blocks.
///
/// Such a span is stable under multiplication by the torus on both sides,
/// so it contains the block components of each of its elements.
#[derive(Clone, Debug)]
pub struct EnvelopeSpace {
    pub kind: Envelope,
    pub m: usize,
    pub r: usize,
    pub s: usize,
    /// Samples drawn before the rank stalled.
    pub samples: usize,
    block_of: Vec<usize>,
    local: Vec<usize>,
    cells: Vec<Vec<usize>>,
    spaces: Vec<RowSpace>,
}

impl EnvelopeSpace {
    fn empty(kind: Envelope, m: usize, r: usize, s: usize) -> Self {
        let size = m.pow((r + s) as u32);
        let weights: Vec<Vec<i64>> = (0..size).map(|i| index_weight(kind, i, m, r, s)).collect();
        let mut ids: BTreeMap<(&[i64], &[i64]), usize> = BTreeMap::new();
        let mut block_of = Vec::with_capacity(size * size);
        let mut local = Vec::with_capacity(size * size);
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for row in 0..size {
            for col in 0..size {
                let next = ids.len();
                let id = *ids.entry((&weights[row], &weights[col])).or_insert(next);
                if id == cells.len() {
                    cells.push(Vec::new());
                }
                local.push(cells[id].len());
                cells[id].push(row * size + col);
                block_of.push(id);
            }
        }
        let spaces = cells.iter().map(|c| RowSpace::new(c.len())).collect();
        EnvelopeSpace { kind, m, r, s, samples: 0, block_of, local, cells, spaces }
    }

    /// Adds the block components of `e`; returns whether the dimension grew.
    fn insert(&mut self, e: &Endo) -> bool {
        let mut parts: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (p, v) in e.as_flat().iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let b = self.block_of[p];
            parts.entry(b).or_insert_with(|| vec![Rational::zero(); self.cells[b].len()])[self.local[p]] = v.clone();
        }
        let mut grew = false;
        for (b, v) in parts {
            grew |= self.spaces[b].insert(&v);
        }
        grew
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(RowSpace::rank).sum()
    }

    fn sparse_basis(&self) -> Vec<Sparse> {
        let mut out = Vec::new();
        for (space, cells) in self.spaces.iter().zip(&self.cells) {
            for row in space.basis() {
                let mut v: Sparse =
                    row.iter().zip(cells).filter(|(x, _)| !x.is_zero()).map(|(x, &p)| (p, x.clone())).collect();
                v.sort_by_key(|(p, _)| *p);
                out.push(v);
            }
        }
        out
    }

    /// A basis, each element supported in a single weight block.
    pub fn basis(&self) -> Vec<Endo> {
        let size = self.m.pow((self.r + self.s) as u32);
        self.sparse_basis().into_iter().map(|v| to_endo(&v, size)).collect()
    }

    pub fn contains(&self, e: &Endo) -> bool {
        let mut parts: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (p, v) in e.as_flat().iter().enumerate() {
            if !v.is_zero() {
                let b = self.block_of[p];
                parts.entry(b).or_insert_with(|| vec![Rational::zero(); self.cells[b].len()])[self.local[p]] =
                    v.clone();
            }
        }
        parts.iter().all(|(b, v)| self.spaces[*b].contains(v))
    }
}

fn to_endo(v: &Sparse, size: usize) -> Endo {
    let mut out = ExactMatrix::zeros(size, size);
    for (p, x) in v {
        out.set(p / size, p % size, x.clone());
    }
    out
}

fn to_sparse(e: &Endo) -> Sparse {
    e.as_flat().iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(p, v)| (p, v.clone())).collect()
}

/// Samples `ρ` (starting from the identity) until `PATIENCE` consecutive
/// samples leave the dimension unchanged. Sample `k` uses stream `k`.
pub fn envelope(kind: Envelope, m: usize, r: usize, s: usize, seed: u64, exec: Exec) -> Result<EnvelopeSpace> {
    if m == 0 {
        return Err(Error::Inadmissible("m must be positive".into()));
    }
    let size = m.pow((r + s) as u32);
    let mut space = EnvelopeSpace::empty(kind, m, r, s);
    space.insert(&ExactMatrix::identity(size));
    let mut stale = 0;
    let mut next = 0u64;
    while stale < PATIENCE {
        if next as usize >= MAX_SAMPLES {
            return Err(Error::Sampling(format!("{kind:?} envelope did not stabilise")));
        }
        let batch: Vec<u64> = (next..next + PATIENCE as u64).collect();
        let endos = exec.map(&batch, |&k| {
            let (a, b) = envelope_point(kind, m, &mut stream_rng(seed, k))?;
            rho(&a, &b, r, s)
        });
        for e in endos {
            if stale >= PATIENCE {
                break;
            }
            next += 1;
            if space.insert(&e?) {
                stale = 0;
            } else {
                stale += 1;
            }
        }
    }
    space.samples = next as usize;
    Ok(space)
}

/// `dim` of the span of `ρ` over the monoid `M` of size `m`.
pub fn monoid_envelope_dim(m: usize, r: usize, s: usize, seed: u64, exec: Exec) -> Result<usize> {
    Ok(envelope(Envelope::Monoid, m, r, s, seed, exec)?.dim())
}

/// Kernel of the linear map sending unknown `k` to `images[k]`.
///
/// Unknowns pinned to zero by a one-term equation are dropped first; the
/// rest splits into groups that share no equation, solved one at a time.
fn kernel(images: &[Sparse]) -> Vec<Sparse> {
    let n = images.len();
    let mut by_coord: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (k, img) in images.iter().enumerate() {
        for (c, v) in img {
            if !v.is_zero() {
                by_coord.entry(*c).or_default().push((k, v.clone()));
            }
        }
    }
    let mut rows: Vec<Vec<(usize, Rational)>> = by_coord.into_values().collect();
    let mut zero = vec![false; n];
    loop {
        let mut changed = false;
        for row in rows.iter_mut() {
            row.retain(|(k, _)| !zero[*k]);
            if row.len() == 1 {
                zero[row[0].0] = true;
                row.clear();
                changed = true;
            }
        }
        rows.retain(|r| !r.is_empty());
        if !changed {
            break;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in &rows {
        let a = find(&mut parent, row[0].0);
        for (k, _) in &row[1..] {
            let b = find(&mut parent, *k);
            if a != b {
                parent[b.max(a)] = b.min(a);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in (0..n).filter(|&k| !zero[k]) {
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(k);
    }
    let mut group_rows: BTreeMap<usize, Vec<&Vec<(usize, Rational)>>> = BTreeMap::new();
    for row in &rows {
        let root = find(&mut parent, row[0].0);
        group_rows.entry(root).or_default().push(row);
    }
    let mut out = Vec::new();
    for (root, members) in groups {
        let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut space = RowSpace::new(members.len());
        for row in group_rows.get(&root).map(Vec::as_slice).unwrap_or(&[]) {
            if space.rank() == members.len() {
                break;
            }
            let mut v = vec![Rational::zero(); members.len()];
            for (k, c) in row.iter() {
                v[pos[k]] = c.clone();
            }
            space.insert(&v);
        }
        for v in space.nullspace() {
            out.push(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (members[i], x)).collect());
        }
    }
    out
}

/// `Σ cₖ vₖ` for sparse `c` over sparse `vₖ`.
fn combine(c: &Sparse, vs: &[Sparse]) -> Sparse {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, ck) in c {
        for (p, x) in &vs[*k] {
            *acc.entry(*p).or_default() += ck * x;
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn commutant_sparse(spanning: &[Sparse], d: usize) -> Vec<Sparse> {
    // Row and column supports of each spanning element.
    let mut rows = vec![vec![Vec::new(); d]; spanning.len()];
    let mut cols = vec![vec![Vec::new(); d]; spanning.len()];
    for (q, sv) in spanning.iter().enumerate() {
        for (p, x) in sv {
            rows[q][p / d].push((p % d, x.clone()));
            cols[q][p % d].push((p / d, x.clone()));
        }
    }
    let images: Vec<Sparse> = (0..d * d)
        .map(|u| {
            let (i, j) = (u / d, u % d);
            let mut img: BTreeMap<usize, Rational> = BTreeMap::new();
            for q in 0..spanning.len() {
                let base = q * d * d;
                // E_ij S − S E_ij
                for (b, x) in &rows[q][j] {
                    *img.entry(base + i * d + b).or_default() += x;
                }
                for (a, x) in &cols[q][i] {
                    *img.entry(base + a * d + j).or_default() -= x;
                }
            }
            img.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    kernel(&images)
        .into_iter()
        .map(|c| {
            let mut v: Sparse = c;
            v.sort_by_key(|(p, _)| *p);
            v
        })
        .collect()
}

/// Basis of `{X : XS = SX for every S}`.
pub fn commutant(spanning: &[Endo]) -> Result<Vec<Endo>> {
    let Some(first) = spanning.first() else {
        return Err(Error::DimensionMismatch("commutant of an empty family has no size".into()));
    };
    let d = first.rows();
    if spanning.iter().any(|s| s.rows() != d || s.cols() != d) {
        return Err(Error::DimensionMismatch("commutant needs square matrices of one size".into()));
    }
    let flat: Vec<Sparse> = spanning.iter().map(to_sparse).collect();
    Ok(commutant_sparse(&flat, d).iter().map(|v| to_endo(v, d)).collect())
}

/// Image of `X` under the contraction equations: at `((i,u),(j,v))`,
/// `δ_{i₁u₁} Σ_l X_{(l i₂…, l u₂…),(j,v)} − δ_{j₁v₁} Σ_l X_{(i,u),(l j₂…, l v₂…)}`.
fn eq13_image(x: &Sparse, m: usize, r: usize, s: usize) -> Sparse {
    let n = r + s;
    let size = m.pow(n as u32);
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    if r == 0 || s == 0 {
        return Vec::new();
    }
    for (p, v) in x {
        let (row, col) = (p / size, p % size);
        let mut top = digits(row, m, n);
        if top[0] == top[r] {
            for l in 0..m {
                top[0] = l;
                top[r] = l;
                *acc.entry(index(&top, m) * size + col).or_default() += v;
            }
        }
        let mut bottom = digits(col, m, n);
        if bottom[0] == bottom[r] {
            for l in 0..m {
                bottom[0] = l;
                bottom[r] = l;
                *acc.entry(row * size + index(&bottom, m)).or_default() -= v;
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Whether `X` satisfies every instance of the contraction equations, i.e.
/// commutes with the contraction of the first slots on each side.
pub fn check_eq13(x: &Endo, r: usize, s: usize, m: usize) -> Result<bool> {
    let size = m.pow((r + s) as u32);
    if x.rows() != size || x.cols() != size {
        return Err(Error::DimensionMismatch(format!("expected a {size}×{size} matrix")));
    }
    Ok(eq13_image(&to_sparse(x), m, r, s).is_empty())
}

/// Elements of the `GL_m × GL_m` envelope solving the contraction equations.
fn eq13_solutions(glgl: &EnvelopeSpace) -> Vec<Sparse> {
    let basis = glgl.sparse_basis();
    let images: Vec<Sparse> = basis.iter().map(|v| eq13_image(v, glgl.m, glgl.r, glgl.s)).collect();
    kernel(&images).iter().map(|c| combine(c, &basis)).collect()
}

/// Dimension of the part of the `GL_m × GL_m` envelope cut out by the
/// contraction equations.
pub fn eq13_solution_dim(m: usize, r: usize, s: usize, seed: u64, exec: Exec) -> Result<usize> {
    Ok(eq13_solutions(&envelope(Envelope::GlGl, m, r, s, seed, exec)?).len())
}

/// Diagrams reachable from `b` and `Sym_r × Sym_s` by composition.
pub fn generated_diagrams(r: usize, s: usize) -> Result<BTreeSet<WalledDiagram>> {
    let mut gens: Vec<WalledDiagram> = enumerate_diagrams(r, s).into_iter().filter(|d| d.is_permutation()).collect();
    if r > 0 && s > 0 {
        gens.push(WalledDiagram::b(r, s)?);
    }
    let mut seen: BTreeSet<WalledDiagram> = BTreeSet::from([WalledDiagram::identity(r, s)]);
    let mut frontier: Vec<WalledDiagram> = seen.iter().cloned().collect();
    while let Some(d) = frontier.pop() {
        for g in &gens {
            let (e, _) = compose(&d, g)?;
            if seen.insert(e.clone()) {
                frontier.push(e);
            }
        }
    }
    Ok(seen)
}

/// Rank of `{E(D)}` and, when they are dependent, one linear relation.
pub fn walled_rank(m: usize, r: usize, s: usize) -> (usize, Option<Vec<(WalledDiagram, Rational)>>) {
    let diagrams = enumerate_diagrams(r, s);
    let images: Vec<Sparse> = diagrams.iter().map(|d| diagram_sparse(d, m)).collect();
    let ker = kernel(&images);
    let relation = ker.first().map(|c| c.iter().map(|(k, x)| (diagrams[*k].clone(), x.clone())).collect());
    (diagrams.len() - ker.len(), relation)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityDims {
    pub diagrams: usize,
    pub walled_span: usize,
    pub gl_envelope: usize,
    pub glgl_envelope: usize,
    pub commutant_of_gl: usize,
    pub commutant_of_walled: usize,
    pub eq13_solutions: usize,
    pub schur_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityFlags {
    pub e_independent: bool,
    pub spans_match_1: bool,
    pub spans_match_2: bool,
    pub eq13_match: bool,
    pub schur_dim_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub m: usize,
    pub r: usize,
    pub s: usize,
    pub dims: DualityDims,
    pub flags: DualityFlags,
    /// A linear relation among the `E(D)` when they are dependent.
    pub relation: Option<Vec<(WalledDiagram, Rational)>>,
    /// PASS when the span equalities hold and independence matches `m ≥ r+s`.
    pub verdict: Verdict,
}

fn same_span(a: &[Sparse], b: &[Sparse], width: usize) -> bool {
    let dense = |v: &Sparse| {
        let mut out = vec![Rational::zero(); width];
        for (p, x) in v {
            out[*p] = x.clone();
        }
        out
    };
    let mut sa = RowSpace::new(width);
    for v in a {
        sa.insert(&dense(v));
    }
    let mut sb = RowSpace::new(width);
    for v in b {
        sb.insert(&dense(v));
    }
    sa.rank() == sb.rank() && b.iter().all(|v| sa.contains(&dense(v)))
}

/// `Σ_{λ ∈ Λ_{r,s}} (#rational standard tableaux of shape λ)²`.
pub fn schur_count(m: usize, r: usize, s: usize) -> usize {
    let a = Alphabet::natural(m);
    rational_shapes_rs(m, r, s).iter().map(|sh| enumerate_rational(sh, &a).len().pow(2)).sum()
}

/// The double centraliser and contraction-equation checks at `(m, r, s)`.
pub fn duality_report(m: usize, r: usize, s: usize, seed: u64, exec: Exec) -> Result<DualityReport> {
    if m == 0 {
        return Err(Error::Inadmissible("m must be positive".into()));
    }
    let size = m.pow((r + s) as u32);
    let width = size * size;
    let diagrams = enumerate_diagrams(r, s);
    let walled: Vec<Sparse> = exec.map(&diagrams, |d| diagram_sparse(d, m));
    let (walled_span, relation) = walled_rank(m, r, s);
    let e_independent = walled_span == diagrams.len();

    let gl = envelope(Envelope::Gl, m, r, s, seed, exec)?;
    let glgl = envelope(Envelope::GlGl, m, r, s, seed ^ 0x9e37_79b9_7f4a_7c15, exec)?;
    let gl_basis = gl.sparse_basis();
    let comm_gl = commutant_sparse(&gl_basis, size);
    let comm_walled = commutant_sparse(&walled, size);
    let eq13 = eq13_solutions(&glgl);
    let schur = schur_count(m, r, s);

    let flags = DualityFlags {
        e_independent,
        spans_match_1: same_span(&comm_gl, &walled, width),
        spans_match_2: same_span(&comm_walled, &gl_basis, width),
        eq13_match: same_span(&eq13, &gl_basis, width),
        schur_dim_match: gl.dim() == schur,
    };
    let pass = flags.spans_match_1
        && flags.spans_match_2
        && flags.eq13_match
        && flags.schur_dim_match
        && flags.e_independent == (m >= r + s);
    Ok(DualityReport {
        m,
        r,
        s,
        dims: DualityDims {
            diagrams: diagrams.len(),
            walled_span,
            gl_envelope: gl.dim(),
            glgl_envelope: glgl.dim(),
            commutant_of_gl: comm_gl.len(),
            commutant_of_walled: comm_walled.len(),
            eq13_solutions: eq13.len(),
            schur_count: schur,
        },
        flags,
        relation,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Whether the commutant of the `GL_m × GL_m` envelope is spanned by the
/// permutation diagrams.
pub fn glgl_commutant_is_permutations(m: usize, r: usize, s: usize, seed: u64, exec: Exec) -> Result<bool> {
    let size = m.pow((r + s) as u32);
    let glgl = envelope(Envelope::GlGl, m, r, s, seed, exec)?;
    let comm = commutant_sparse(&glgl.sparse_basis(), size);
    let perms: Vec<Sparse> =
        enumerate_diagrams(r, s).iter().filter(|d| d.is_permutation()).map(|d| diagram_sparse(d, m)).collect();
    Ok(same_span(&comm, &perms, size * size))
}

/// Multisets of size `k` from `0..n`, as sorted vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mut head in multisets(n, k - 1) {
        let start = head.last().copied().unwrap_or(0);
        for v in start..n {
            head.push(v);
            out.push(head.clone());
            head.pop();
        }
    }
    out
}

/// Flat position of the entry of `ρ(A, B)` equal to a monomial of bidegree
/// `(r, s)`: the `x` factors give the first `r` slots, the `y` factors the rest.
fn monomial_position(mono: &Monomial, m: usize, r: usize, s: usize) -> usize {
    let size = m.pow((r + s) as u32);
    let (mut rows, mut cols) = (Vec::with_capacity(r + s), Vec::with_capacity(r + s));
    for v in mono.expanded() {
        rows.push(v.i - 1);
        cols.push(v.j - 1);
    }
    index(&rows, m) * size + index(&cols, m)
}

/// Dimension of the part of the `GL_m × GL_m` envelope on which every
/// bidegree-`(r, s)` multiple of the defining equations of `M` vanishes.
///
/// A bidegree-`(r, s)` polynomial is a functional on the envelope through
/// `f(ρ(A, B)) = f(A, B)`; the result should be the dimension of the `M` envelope.
pub fn monoid_cut_dim(m: usize, r: usize, s: usize, seed: u64, exec: Exec) -> Result<usize> {
    let glgl = envelope(Envelope::GlGl, m, r, s, seed, exec)?;
    if r == 0 || s == 0 {
        return Ok(glgl.dim());
    }
    let vars = m * m;
    let xs = multisets(vars, r - 1);
    let ys = multisets(vars, s - 1);
    let mut functionals: Vec<Vec<(usize, Rational)>> = Vec::new();
    for g in ideal_generators(&Context::monoid(m)) {
        for x in &xs {
            for y in &ys {
                let factor = Monomial::from_vars(
                    x.iter()
                        .map(|&v| Variable::x(v / m + 1, v % m + 1))
                        .chain(y.iter().map(|&v| Variable::y(v / m + 1, v % m + 1))),
                );
                let f: Vec<(usize, Rational)> = g
                    .terms()
                    .map(|(mono, c)| (monomial_position(&mono.mul(&factor), m, r, s), Rational::from_bigint(c.clone())))
                    .collect();
                functionals.push(f);
            }
        }
    }
    let mut by_position: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
    for (k, f) in functionals.iter().enumerate() {
        for (p, c) in f {
            by_position.entry(*p).or_default().push((k, c));
        }
    }
    let basis = glgl.sparse_basis();
    let images: Vec<Sparse> = basis
        .iter()
        .map(|v| {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (p, x) in v {
                for (k, c) in by_position.get(p).map(Vec::as_slice).unwrap_or(&[]) {
                    *acc.entry(*k).or_default() += &(*c * x);
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    Ok(kernel(&images).len())
}
