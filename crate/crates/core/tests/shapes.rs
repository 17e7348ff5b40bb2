use bideterminant::shapes::{
    bracket, dominant_weights, is_saturated, lambda_rs, leq_1, leq_a, leq_c, partitions_bounded, partitions_of,
    unbracket, DominantWeight, OrderTag, Partition, RationalShape, SaturatedSet,
};
use proptest::prelude::*;

fn pad(p: &Partition, m: usize) -> Vec<i64> {
    p.padded(m)
}

#[test]
fn conjugation_reverses_dominance() {
    for d in 0..=6 {
        let ps = partitions_of(d);
        for mu in &ps {
            for lambda in &ps {
                let forward = leq_a(&pad(mu, d), &pad(lambda, d));
                let back = leq_a(&pad(&lambda.conjugate(), d), &pad(&mu.conjugate(), d));
                assert_eq!(forward, back, "{mu} vs {lambda}");
            }
        }
    }
}

#[test]
fn type_a_implies_type_c() {
    for m in 1..=3 {
        for d in 0..=6 {
            let ps = partitions_bounded(d, m);
            for mu in &ps {
                for lambda in &ps {
                    if leq_a(&pad(mu, m), &pad(lambda, m)) {
                        assert!(leq_c(&pad(mu, m), &pad(lambda, m)));
                    }
                }
            }
        }
    }
}

#[test]
fn bracket_round_trip() {
    for m in 1..=4 {
        for a in 0..=3 {
            for l1 in partitions_bounded(a, m) {
                for b in 0..=3 {
                    for l2 in partitions_bounded(b, m - l1.len()) {
                        let w = bracket(&l1, &l2, m).unwrap();
                        assert_eq!(unbracket(&w), RationalShape::new(l1.clone(), l2, m));
                    }
                }
            }
        }
    }
}

#[test]
fn lambda_rs_is_saturated() {
    for m in 1..=3 {
        for r in 0..=2 {
            for s in 0..=2 {
                let set = lambda_rs(m, r, s);
                assert!(is_saturated(&set, &set.default_universe()), "Λ_({r},{s}) at m={m}");
                // Everything dominated by a member, with the degree conditions, is a member.
                for mu in dominant_weights(m, -(s as i64), r as i64) {
                    let sh = unbracket(&mu);
                    let (p, q) = sh.bigrade();
                    let degree_ok = p <= r && q <= s && r - p == s - q;
                    if degree_ok && set.weights.iter().any(|l| leq_a(mu.entries(), l.entries())) {
                        assert!(set.contains(&mu), "{mu:?} missing from Λ_({r},{s})");
                    }
                }
            }
        }
    }
}

#[test]
fn saturation_examples() {
    let w = |v: Vec<i64>| DominantWeight::new(v).unwrap();
    let pi = SaturatedSet::new([w(vec![0, 0]), w(vec![1, 0]), w(vec![2, 0]), w(vec![1, 1])], OrderTag::A);
    assert!(is_saturated(&pi, &pi.default_universe()));
    let pi = SaturatedSet::new([w(vec![2, 0])], OrderTag::A);
    assert!(!is_saturated(&pi, &pi.default_universe()));
    let l = lambda_rs(2, 1, 1);
    assert_eq!(l.weights.iter().map(|w| w.entries().to_vec()).collect::<Vec<_>>(), vec![vec![0, 0], vec![1, -1]]);
    assert_eq!(lambda_rs(1, 2, 0).weights.iter().map(|w| w.entries().to_vec()).collect::<Vec<_>>(), vec![vec![2]]);
    assert!(leq_c(&[0, 0], &[1, 1]));
}

/// Shifts units rightwards (keeps `≤₁`) after removing `t` units.
fn lower(l: &[i64], t: usize, moves: &[(usize, usize)]) -> Vec<i64> {
    let mut v = l.to_vec();
    let mut left = t;
    for k in (0..v.len()).rev() {
        let take = left.min(v[k] as usize);
        v[k] -= take as i64;
        left -= take;
    }
    for &(a, b) in moves {
        let (i, j) = (a % v.len(), b % v.len());
        if i < j && v[i] > 0 {
            v[i] -= 1;
            v[j] += 1;
        }
    }
    v
}

fn bracket_case() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Partition, Partition)> {
    let moves = || prop::collection::vec((0usize..4, 0usize..4), 0..6);
    (
        1usize..=4,
        prop::collection::vec(0usize..=3, 4),
        prop::collection::vec(0usize..=3, 4),
        0usize..=4,
        0usize..=3,
        moves(),
        moves(),
    )
        .prop_map(|(m, a, b, split, t, mv1, mv2)| {
            let split = split.min(m);
            let part = |mut v: Vec<usize>, len: usize| {
                v.truncate(len);
                v.sort_unstable_by(|x, y| y.cmp(x));
                Partition::new(v).unwrap()
            };
            let (l1, l2) = (part(a, split), part(b, m - split));
            let t = t.min(l1.size()).min(l2.size());
            (lower(&l1.padded(m), t, &mv1), lower(&l2.padded(m), t, &mv2), l1, l2)
        })
}

proptest! {
    /// `μⁱ ≤₁ λⁱ` with equal defects gives `[μ¹, μ²] ≤ [λ¹, λ²]`.
    #[test]
    fn bracket_monotone((mu1, mu2, l1, l2) in bracket_case()) {
        let m = mu1.len();
        let (p1, p2) = (l1.padded(m), l2.padded(m));
        let defect = |mu: &[i64], l: &[i64]| l.iter().sum::<i64>() - mu.iter().sum::<i64>();
        prop_assert!(leq_1(&mu1, &p1) && leq_1(&mu2, &p2) && defect(&mu1, &p1) == defect(&mu2, &p2));
        let mut rev2 = mu2.clone();
        rev2.reverse();
        let mu: Vec<i64> = mu1.iter().zip(&rev2).map(|(a, b)| a - b).collect();
        let lambda = bracket(&l1, &l2, m).unwrap();
        prop_assert!(leq_a(&mu, lambda.entries()), "{:?} vs {:?}", mu, lambda.entries());
    }
}
