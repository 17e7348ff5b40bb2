//! Text forms of shapes, tableaux and letter orders.
//!
//! Shapes: `(2,1)`, rational `(2),(1)`. Tableaux: rows split by `/`, as in
//! `[1,2/3]`, `col(1,2)` for a single column, `∅` when empty; rational
//! tableaux join the two halves with `;`, as in `[1];[2]`. Symplectic
//! letters may carry a prime.

use anyhow::{anyhow, bail, Context as _, Result};
use bideterminant::shapes::{Partition, RationalShape};
use bideterminant::tableaux::{Alphabet, RationalTableau, Shape, Tableau};

fn strip_outer(s: &str, open: char, close: char) -> Option<&str> {
    s.trim().strip_prefix(open)?.strip_suffix(close)
}

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("`{t}` is not a nonnegative integer")))
        .collect()
}

pub fn partition(s: &str) -> Result<Partition> {
    let inner = strip_outer(s, '(', ')').ok_or_else(|| anyhow!("shape `{s}` must look like (3,1)"))?;
    Ok(Partition::new(numbers(inner)?)?)
}

/// Splits `(a),(b)` at the top-level comma.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

pub fn rational_shape(s: &str, m: usize) -> Result<RationalShape> {
    let (a, b) = split_pair(s.trim()).ok_or_else(|| anyhow!("rational shape `{s}` must look like (1),(1)"))?;
    let shape = RationalShape::new(partition(a)?, partition(b)?, m);
    if !shape.is_admissible() {
        bail!("{shape} needs more than {m} rows");
    }
    Ok(shape)
}

pub fn shape(s: &str, rational: bool, m: usize) -> Result<Shape> {
    Ok(if rational { Shape::Rational(rational_shape(s, m)?) } else { Shape::Plain(partition(s)?) })
}

fn letters(s: &str, a: &Alphabet) -> Result<Vec<usize>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| Ok(a.parse_letter(t)?)).collect()
}

pub fn tableau(s: &str, a: &Alphabet) -> Result<Tableau> {
    let s = s.trim();
    if s == "∅" {
        return Ok(Tableau::empty());
    }
    if let Some(inner) = s.strip_prefix("col").and_then(|r| strip_outer(r, '(', ')')) {
        return Ok(Tableau::column(&letters(inner, a)?));
    }
    let inner = strip_outer(s, '[', ']').ok_or_else(|| anyhow!("tableau `{s}` must look like [1,2/3] or col(1,2)"))?;
    if inner.trim().is_empty() {
        return Ok(Tableau::empty());
    }
    let rows = inner.split('/').map(|r| letters(r, a)).collect::<Result<Vec<_>>>()?;
    Ok(Tableau::from_rows(rows)?)
}

pub fn rational_tableau(s: &str, a: &Alphabet) -> Result<RationalTableau> {
    let s = s.trim();
    let s = strip_outer(s, '(', ')').filter(|i| i.contains(';')).unwrap_or(s);
    let (t1, t2) = s.split_once(';').ok_or_else(|| anyhow!("rational tableau `{s}` must look like [1];[2]"))?;
    Ok(RationalTableau::new(tableau(t1, a)?, tableau(t2, a)?, a.n()))
}

/// A comma-separated letter order such as `1',1,2',2`, read against `a`.
pub fn order(s: &str, a: &Alphabet) -> Result<Vec<usize>> {
    letters(s, a)
}

/// `r,s` or a single number.
pub fn pair(s: &str) -> Result<(usize, usize)> {
    match numbers(s)?.as_slice() {
        [r, s] => Ok((*r, *s)),
        _ => bail!("`{s}` must look like r,s"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(partition("(2,1)").unwrap().parts(), &[2, 1]);
        assert!(partition("()").unwrap().is_empty());
        let r = rational_shape("(1),(1)", 2).unwrap();
        assert_eq!(r.bigrade(), (1, 1));
        assert!(rational_shape("(1,1),(1)", 2).is_err());
    }

    #[test]
    fn tableaux() {
        let a = Alphabet::natural(3);
        assert_eq!(tableau("[1,2/3]", &a).unwrap(), Tableau::from_rows(vec![vec![1, 2], vec![3]]).unwrap());
        assert_eq!(tableau("col(1,2)", &a).unwrap(), Tableau::column(&[1, 2]));
        let s = Alphabet::symplectic(2);
        assert_eq!(tableau("[1',2]", &s).unwrap(), Tableau::row(&[3, 2]));
        let r = rational_tableau("([1];[2])", &Alphabet::natural(2)).unwrap();
        assert_eq!(r.t2, Tableau::row(&[2]));
        assert!(tableau("1,2", &a).is_err());
    }
}
