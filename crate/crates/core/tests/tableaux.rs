mod common;

use std::cmp::Ordering;

use bideterminant::shapes::{bracket, leq_a, leq_c, partitions_bounded, Partition, RationalShape};
use bideterminant::tableaux::{
    canonical, canonical_rational, content_cmp, enumerate_gl, enumerate_rational, enumerate_standard,
    enumerate_symplectic, gl_weight, is_rational_standard, is_symplectic_standard, king_bound_ok, rational_weight,
    stembridge_bound_ok, symplectic_weight, Alphabet, JForm, RationalTableau, Regime, Shape, Tableau,
};
use common::{weyl_gl, weyl_sp};

fn shapes(max: usize, rows: usize) -> Vec<Partition> {
    (0..=max).flat_map(|d| partitions_bounded(d, rows)).collect()
}

#[test]
fn bound_examples() {
    let a = Alphabet::symplectic(2);
    // 1′ = 3, 2′ = 4
    assert!(!king_bound_ok(&[3, 1], &a));
    assert!(king_bound_ok(&[4, 2], &a));
    let n = Alphabet::natural(2);
    assert!(!stembridge_bound_ok(&[1], &[1], &n));
    assert!(stembridge_bound_ok(&[1], &[2], &n));
    assert!(stembridge_bound_ok(&[2], &[2], &n));
}

#[test]
fn canonical_examples() {
    let t = canonical(&Partition::new(vec![2, 1]).unwrap());
    assert_eq!(t.rows(), &[vec![1, 1], vec![2]]);
    assert_eq!(gl_weight(&t, 2), vec![2, 1]);
    let sh = RationalShape::new(Partition::new(vec![1]).unwrap(), Partition::new(vec![1]).unwrap(), 2);
    assert_eq!(canonical_rational(&sh).unwrap(), RationalTableau::new(Tableau::row(&[1]), Tableau::row(&[2]), 2));
    assert_eq!(enumerate_rational(&sh, &Alphabet::natural(2)).len(), 3);
    let a = Alphabet::natural(2);
    assert_ne!(content_cmp(&[2, 0], &[0, 2], &a), Ordering::Greater);
}

#[test]
fn empty_shape_has_one_tableau() {
    let e = Partition::empty();
    assert_eq!(enumerate_standard(&Shape::Plain(e.clone()), &Alphabet::natural(3), Regime::Gl).unwrap().len(), 1);
    assert_eq!(
        enumerate_standard(&Shape::Plain(e.clone()), &Alphabet::symplectic(2), Regime::Symplectic).unwrap().len(),
        1
    );
    let r = RationalShape::new(e.clone(), e, 2);
    assert_eq!(enumerate_standard(&Shape::Rational(r), &Alphabet::natural(2), Regime::Rational).unwrap().len(), 1);
}

#[test]
fn symplectic_counts_match_weyl() {
    for m in 1..=3 {
        let a = Alphabet::symplectic(m);
        for p in shapes(4, m) {
            let got = enumerate_symplectic(&p, &a).len() as u64;
            assert_eq!(got, weyl_sp(p.parts(), m), "m={m} {p}");
        }
    }
}

#[test]
fn rational_counts_match_weyl() {
    for m in 1..=3 {
        let a = Alphabet::natural(m);
        for l1 in shapes(3, m) {
            for l2 in shapes(3, m - l1.len()) {
                let sh = RationalShape::new(l1.clone(), l2.clone(), m);
                let w = bracket(&l1, &l2, m).unwrap();
                assert_eq!(enumerate_rational(&sh, &a).len() as u64, weyl_gl(w.entries()), "m={m} {sh}");
            }
        }
    }
}

#[test]
fn counts_do_not_depend_on_the_order() {
    let orders = [vec![3, 1, 2], vec![2, 3, 1]];
    for order in orders {
        let a = Alphabet::with_order(order).unwrap();
        for p in shapes(4, 3) {
            assert_eq!(enumerate_gl(&p, &a).len(), enumerate_gl(&p, &Alphabet::natural(3)).len());
        }
    }
    // m ≺ m′ ≺ … ≺ 1 ≺ 1′ and a mixed order, both keeping pairs adjacent.
    for order in [vec![2, 4, 1, 3], vec![1, 3, 4, 2]] {
        let a = Alphabet::symplectic_with(2, JForm::Block, Some(order)).unwrap();
        for p in shapes(4, 2) {
            assert_eq!(
                enumerate_symplectic(&p, &a).len(),
                enumerate_symplectic(&p, &Alphabet::symplectic(2)).len(),
                "{p}"
            );
        }
    }
    assert!(Alphabet::symplectic_with(2, JForm::Block, Some(vec![1, 2, 3, 4])).is_err());
}

#[test]
fn weight_bounds() {
    for n in 1..=3 {
        let a = Alphabet::natural(n);
        for p in shapes(4, n) {
            let hi = p.padded(n);
            let lo: Vec<i64> = hi.iter().rev().copied().collect();
            for t in enumerate_gl(&p, &a) {
                let mu = gl_weight(&t, n);
                assert!(leq_a(&lo, &mu) && leq_a(&mu, &hi), "{t} in {p}");
            }
        }
    }
    for m in 1..=2 {
        let a = Alphabet::symplectic(m);
        for p in shapes(4, m) {
            let hi = p.padded(m);
            let lo: Vec<i64> = hi.iter().map(|x| -x).collect();
            for t in enumerate_symplectic(&p, &a) {
                let mu = symplectic_weight(&t, &a);
                assert!(leq_c(&lo, &mu) && leq_c(&mu, &hi), "{t} in {p}");
            }
        }
    }
    for m in 1..=3 {
        let a = Alphabet::natural(m);
        for l1 in shapes(2, m) {
            for l2 in shapes(2, m - l1.len()) {
                let hi = bracket(&l1, &l2, m).unwrap();
                let lo: Vec<i64> = bracket(&l2, &l1, m).unwrap().entries().iter().map(|x| -x).collect();
                for t in enumerate_rational(&RationalShape::new(l1.clone(), l2.clone(), m), &a) {
                    let mu = rational_weight(&t);
                    assert!(leq_a(&lo, &mu) && leq_a(&mu, hi.entries()), "m={m} {l1},{l2}");
                }
            }
        }
    }
}

#[test]
fn standard_shapes_are_short() {
    for m in 1..=3 {
        let a = Alphabet::symplectic(m);
        for p in shapes(4, 2 * m) {
            if !enumerate_symplectic(&p, &a).is_empty() {
                assert!(p.len() <= m);
            }
        }
        let n = Alphabet::natural(m);
        for l1 in shapes(2, 3) {
            for l2 in shapes(2, 3) {
                if !enumerate_rational(&RationalShape::new(l1.clone(), l2.clone(), m), &n).is_empty() {
                    assert!(l1.len() + l2.len() <= m);
                }
            }
        }
    }
}

#[test]
fn first_column_decides() {
    let a = Alphabet::symplectic(2);
    let gl_order = Alphabet::with_order(a.order().to_vec()).unwrap();
    for p in shapes(4, 4) {
        for t in enumerate_gl(&p, &gl_order) {
            let all = t.columns().iter().all(|c| king_bound_ok(c, &a));
            assert_eq!(is_symplectic_standard(&t, &a), all, "{t}");
        }
    }
    let n = Alphabet::natural(3);
    for l1 in shapes(3, 3) {
        for l2 in shapes(3, 3) {
            for t1 in enumerate_gl(&l1, &n) {
                for t2 in enumerate_gl(&l2, &n) {
                    let (c1, c2) = (t1.columns(), t2.columns());
                    let cols = c1.len().max(c2.len());
                    let empty = Vec::new();
                    let all = (0..cols)
                        .all(|k| stembridge_bound_ok(c1.get(k).unwrap_or(&empty), c2.get(k).unwrap_or(&empty), &n));
                    let rt = RationalTableau::new(t1.clone(), t2, 3);
                    assert_eq!(is_rational_standard(&rt, &n), all, "{l1},{l2}");
                }
            }
        }
    }
}
