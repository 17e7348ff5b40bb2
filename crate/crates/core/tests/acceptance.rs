//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails. Runs without the test harness so
//! the lines always show.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use bideterminant::bidet::{
    bidet_poly, nabla_basis, o_pi_span, sample_point, verify_basis, verify_tensor_factorisation, x_locus_report,
    Bitableau, Context, Degree, Evaluator, SampleOptions, Side, Straightener, Verdict, VerifyOptions,
};
use bideterminant::duality::{
    compose, duality_report, endo_of_diagram, enumerate_diagrams, monoid_envelope_dim, walled_rank,
};
use bideterminant::exec::stream_rng;
use bideterminant::exterior::{is_unit, wedge, ExtAlgebra};
use bideterminant::polyring::Polynomial;
use bideterminant::shapes::{
    lambda_rs, partitions_bounded, rational_shapes_rs, DominantWeight, OrderTag, Partition, SaturatedSet,
};
use bideterminant::tableaux::{enumerate_rational, Alphabet, Shape, Tableau};
use bideterminant::{Exec, Rational};
use common::*;
use num_bigint::BigInt;
use rand::Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn opts() -> VerifyOptions {
    VerifyOptions { seed: 2024, ..VerifyOptions::default() }
}

fn err(e: bideterminant::Error) -> String {
    e.to_string()
}

fn mat_basis_counts() -> Check {
    for n in [2, 3] {
        for r in 0..=4 {
            let rep = verify_basis(&Context::mat(n), Degree::Total(r), &opts()).map_err(err)?;
            let want = binomial(n * n + r - 1, r) as usize;
            ensure!(
                rep.candidate_count == want,
                "n={n} r={r}: {} standard bitableaux, want {want}",
                rep.candidate_count
            );
            ensure!(rep.verdict == Verdict::Pass, "n={n} r={r}: verify_basis failed: {:?}", rep.witness);
        }
    }
    let rep = verify_basis(&Context::mat(2), Degree::Total(2), &opts()).map_err(err)?;
    ensure!(rep.candidate_count == 10, "n=2 r=2 gives {}", rep.candidate_count);
    Ok(())
}

/// Every filling of `shape` by letters `1..=n`.
fn fillings(shape: &Partition, n: usize) -> Vec<Tableau> {
    let cells = shape.size();
    (0..n.pow(cells as u32))
        .map(|mut code| {
            let rows = shape
                .parts()
                .iter()
                .map(|&len| {
                    (0..len)
                        .map(|_| {
                            let l = code % n + 1;
                            code /= n;
                            l
                        })
                        .collect()
                })
                .collect();
            Tableau::from_rows(rows).unwrap()
        })
        .collect()
}

fn random_tableau(shape: &Partition, n: usize, rng: &mut impl Rng) -> Tableau {
    let rows = shape.parts().iter().map(|&len| (0..len).map(|_| rng.gen_range(1..=n)).collect()).collect();
    Tableau::from_rows(rows).unwrap()
}

fn straighten_sound(st: &mut Straightener, ctx: &Context, s: &Tableau, t: &Tableau) -> Check {
    let n = ctx.size();
    let b = Bitableau::plain(s.clone(), t.clone()).map_err(err)?;
    let expr = st.straighten(&b).map_err(err)?;
    let mut total = Polynomial::zero();
    let len = s.shape().len().max(n);
    for term in &expr.terms {
        let Bitableau::Plain { s: s2, t: t2 } = &term.bitab else { return Err("rational term in mat".into()) };
        ensure!(s2.content(n) == s.content(n) && t2.content(n) == t.content(n), "content changed in {b}");
        let (mu, lambda) = (s2.shape().padded(len), s.shape().padded(len));
        ensure!(bideterminant::shapes::leq_a(&mu, &lambda), "{b} produced shape {} above the input", s2.shape());
        total = &total + &bidet_poly(&term.bitab, ctx).map_err(err)?.scale(&term.coeff);
    }
    ensure!(total == bidet_poly(&b, ctx).map_err(err)?, "round trip differs for {b}");
    Ok(())
}

fn gl_straightening() -> Check {
    let ctx = Context::mat(2);
    let mut st = Straightener::new(&ctx);
    let mut count = 0;
    for d in 0..=3 {
        for shape in partitions_bounded(d, d) {
            let all = fillings(&shape, 2);
            for s in &all {
                for t in &all {
                    straighten_sound(&mut st, &ctx, s, t)?;
                    count += 1;
                }
            }
        }
    }
    ensure!(count > 0, "no bitableaux generated");
    let ctx = Context::mat(3);
    let mut st = Straightener::new(&ctx);
    let mut rng = stream_rng(11, 0);
    let shapes: Vec<Partition> = (1..=4).flat_map(|d| partitions_bounded(d, 3)).collect();
    for _ in 0..200 {
        let shape = &shapes[rng.gen_range(0..shapes.len())];
        let (s, t) = (random_tableau(shape, 3, &mut rng), random_tableau(shape, 3, &mut rng));
        straighten_sound(&mut st, &ctx, &s, &t)?;
    }
    Ok(())
}

fn exterior_basis() -> Check {
    for n in [2, 4, 6] {
        let ext = ExtAlgebra::symplectic(Alphabet::symplectic(n / 2)).map_err(err)?;
        for r in 0..=n {
            let layers = ext.zbasis_layer_counts((r, 0));
            // Layers below t = r − m are empty: z_t ∧ v_L needs |L| + t ≤ m.
            let want: Vec<usize> =
                (0..=r / 2).map(|t| if r - t <= n / 2 { king_sets(n / 2, r - 2 * t) } else { 0 }).collect();
            ensure!(layers == want, "n={n} r={r}: layers {layers:?}, want {want:?}");
            let total: usize = layers.iter().sum();
            ensure!(total as u64 == binomial(n, r), "n={n} r={r}: layers {layers:?} sum to {total}");
            let det = ext.zbasis_determinant((r, 0));
            ensure!(is_unit(&det), "n={n} r={r}: change of basis has determinant {det}");
        }
    }
    let ext = ExtAlgebra::symplectic(Alphabet::symplectic(2)).map_err(err)?;
    ensure!(ext.zbasis_layer_counts((2, 0)) == vec![5, 1], "n=4 r=2 is not 5 + 1");
    Ok(())
}

fn z_identity() -> Check {
    for m in 1..=4 {
        let ext = ExtAlgebra::symplectic(Alphabet::symplectic(m)).map_err(err)?;
        for r in 0..=m {
            for s in 0..=m - r {
                let lhs = wedge(&ext.z_element(r).map_err(err)?, &ext.z_element(s).map_err(err)?);
                let rhs = ext.z_element(r + s).map_err(err)?.scale(&BigInt::from(binomial(r + s, r)));
                ensure!(lhs == rhs, "m={m}: z_{r} z_{s} != C({},{r}) z_{}", r + s, r + s);
            }
        }
    }
    Ok(())
}

fn dilation_laws(n: usize) -> Check {
    let ctx = Context::spm(n).map_err(err)?;
    let m = n / 2;
    for k in 0..20 {
        let p = sample_point(&ctx, &mut stream_rng(77, k), &SampleOptions::default()).map_err(err)?;
        let d = Evaluator::new(&ctx, &p).map_err(err)?.d();
        let det = p.x.determinant().map_err(err)?;
        ensure!(d.pow(m as u32) == det, "n={n}: d^{m} != det at point {k}");
        ensure!(d.pow(n as u32) == &det * &det, "n={n}: d^{n} != det² at point {k}");
    }
    Ok(())
}

fn spm_basis() -> Check {
    let ctx = Context::spm(2).map_err(err)?;
    for r in 0..=4 {
        let rep = verify_basis(&ctx, Degree::Total(r), &opts()).map_err(err)?;
        let want: usize = (0..=r / 2).map(|t| (r - 2 * t + 1).pow(2)).sum();
        ensure!(want as u64 == binomial(3 + r, r), "count identity fails at r={r}");
        ensure!(
            rep.candidate_count == want && rep.eval_rank == want,
            "n=2 r={r}: count {} rank {}",
            rep.candidate_count,
            rep.eval_rank
        );
        ensure!(rep.verdict == Verdict::Pass, "n=2 r={r}: {:?}", rep.witness);
    }
    let ctx = Context::spm(4).map_err(err)?;
    for r in 0..=3 {
        let rep = verify_basis(&ctx, Degree::Total(r), &opts()).map_err(err)?;
        ensure!(rep.verdict == Verdict::Pass, "n=4 r={r}: {:?}", rep.witness);
    }
    dilation_laws(2)?;
    dilation_laws(4)
}

fn sp_quotient() -> Check {
    let ctx = Context::sp(4).map_err(err)?;
    for r in 0..=3 {
        let rep = verify_basis(&ctx, Degree::Total(r), &opts()).map_err(err)?;
        ensure!(rep.eval_rank == rep.candidate_count, "r={r}: rank {} of {}", rep.eval_rank, rep.candidate_count);
        ensure!(rep.verdict == Verdict::Pass, "r={r}: {:?}", rep.witness);
    }
    for d in 1..=3 {
        for shape in partitions_bounded(d, 2) {
            let nb = nabla_basis(&Shape::Plain(shape.clone()), &ctx, Side::Right, &opts()).map_err(err)?;
            let want = weyl_sp(shape.parts(), 2) as usize;
            ensure!(nb.terms.len() == want, "{shape}: {} terms, King count {want}", nb.terms.len());
            ensure!(nb.independent && nb.eval_rank == want, "{shape}: rank {}", nb.eval_rank);
        }
    }
    Ok(())
}

fn monoid_basis() -> Check {
    for r in 0..=3 {
        for s in 0..=3 {
            let rep = verify_basis(&Context::monoid(1), Degree::Bi(r, s), &opts()).map_err(err)?;
            ensure!(rep.candidate_count == 1 && rep.verdict == Verdict::Pass, "m=1 ({r},{s}): {rep:?}");
        }
    }
    let ctx = Context::monoid(2);
    let rep = verify_basis(&ctx, Degree::Bi(1, 1), &opts()).map_err(err)?;
    ensure!(rep.candidate_count == 16 - 6, "m=2 (1,1): {}", rep.candidate_count);
    ensure!(rep.verdict == Verdict::Pass, "m=2 (1,1): {:?}", rep.witness);
    for (r, s) in [(1, 1), (2, 1), (2, 2)] {
        let rep = verify_basis(&ctx, Degree::Bi(r, s), &opts()).map_err(err)?;
        let want = mixed_tensor_envelope_dim(2, r, s) as usize;
        ensure!(rep.candidate_count == want, "m=2 ({r},{s}): {} vs {want}", rep.candidate_count);
        ensure!(rep.verdict == Verdict::Pass, "m=2 ({r},{s}): {:?}", rep.witness);
    }
    Ok(())
}

fn rational_counts() -> Check {
    for m in 1..=3 {
        for r in 0..=2 {
            for s in 0..=2 {
                let shapes = rational_shapes_rs(m, r, s);
                let mut got: Vec<Vec<i64>> = shapes
                    .iter()
                    .map(|sh| sh.weight().map(|w| w.entries().to_vec()))
                    .collect::<Result<_, _>>()
                    .map_err(err)?;
                let mut want = common::lambda_rs(m, r, s);
                got.sort();
                want.sort();
                ensure!(got == want, "m={m} ({r},{s}): Λ differs: {got:?} vs {want:?}");
                for sh in &shapes {
                    let w = sh.weight().map_err(err)?;
                    let count = enumerate_rational(sh, &Alphabet::natural(m)).len() as u64;
                    ensure!(
                        count == weyl_gl(w.entries()),
                        "m={m} {sh}: {count} tableaux, Weyl {}",
                        weyl_gl(w.entries())
                    );
                }
            }
        }
    }
    let sh = rational_shapes_rs(2, 1, 1).into_iter().find(|sh| sh.bigrade() == (1, 1)).ok_or("no (1,1) shape")?;
    ensure!(enumerate_rational(&sh, &Alphabet::natural(2)).len() == 3, "(1,−1) at m=2 is not 3");
    Ok(())
}

fn vanishing_ideal() -> Check {
    for p in 0..=2 {
        for q in 0..=2 {
            let rep = x_locus_report(2, 1, 1, (p, q), &opts()).map_err(err)?;
            ensure!(rep.on_x.independent, "({p},{q}) dependent on X: {:?}", rep.on_x.witness);
            ensure!(rep.highest_weight_nonzero, "({p},{q}): some (T_λ|T_λ) vanishes at E");
            ensure!(rep.highest_weight_checked == lambda_rs(2, p, q).len(), "({p},{q}): not every λ checked");
            ensure!(rep.on_xrs.independent, "({p},{q}) dependent on X_(1,1): {:?}", rep.on_xrs.witness);
        }
    }
    Ok(())
}

fn tensor_factorisation() -> Check {
    let part = |v: Vec<usize>| Shape::Plain(Partition::new(v).unwrap());
    for v in [vec![2], vec![1, 1], vec![2, 1]] {
        let sh = part(v.clone());
        ensure!(verify_tensor_factorisation(&sh, &Context::mat(2), &opts()).map_err(err)?, "mat n=2 {v:?}");
    }
    let sp = Context::sp(4).map_err(err)?;
    for v in [vec![1], vec![1, 1]] {
        ensure!(verify_tensor_factorisation(&part(v.clone()), &sp, &opts()).map_err(err)?, "sp n=4 {v:?}");
    }
    Ok(())
}

fn o_pi_spans() -> Check {
    let weights = (0..=2).flat_map(|d| partitions_bounded(d, 2)).map(|p| DominantWeight::from_partition(&p, 2));
    let pi = SaturatedSet::new(weights, OrderTag::A);
    let rep = o_pi_span(&pi, &Context::mat(2), &opts()).map_err(err)?;
    ensure!(rep.candidate_count == 15 && rep.verdict == Verdict::Pass, "mat: {rep:?}");
    let rep = o_pi_span(&lambda_rs(2, 1, 1), &Context::glrat(2), &opts()).map_err(err)?;
    ensure!(rep.candidate_count == 10 && rep.verdict == Verdict::Pass, "glrat: {rep:?}");
    Ok(())
}

fn walled_brauer() -> Check {
    for n in 0..=4 {
        for r in 0..=n {
            let count = enumerate_diagrams(r, n - r).len() as u64;
            ensure!(count == factorial(n) && count == walled_diagram_count(r, n - r), "({r},{}): {count}", n - r);
        }
    }
    for (r, s) in [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (2, 2)] {
        let ds = enumerate_diagrams(r, s);
        for m in 1..=3usize {
            let es: Vec<_> = ds.iter().map(|d| endo_of_diagram(d, m)).collect();
            for (i, d1) in ds.iter().enumerate() {
                for (j, d2) in ds.iter().enumerate() {
                    let (d, loops) = compose(d1, d2).map_err(err)?;
                    let lhs = es[i].mul(&es[j]).map_err(err)?;
                    let rhs = endo_of_diagram(&d, m).scale(&Rational::from_i64(m.pow(loops as u32) as i64));
                    ensure!(lhs == rhs, "m={m}: E({d1})E({d2}) != m^{loops} E({d})");
                }
            }
        }
    }
    for m in 1..=4 {
        for n in 0..=4 {
            for r in 0..=n {
                let s = n - r;
                let (rank, relation) = walled_rank(m, r, s);
                let independent = rank == enumerate_diagrams(r, s).len();
                ensure!(independent == (m >= n), "m={m} ({r},{s}): rank {rank}");
                ensure!(independent == relation.is_none(), "m={m} ({r},{s}): relation disagrees with rank");
            }
        }
    }
    ensure!(walled_rank(1, 1, 1).0 == 1 && walled_rank(2, 1, 1).0 == 2, "(1,1,1) / (2,1,1) misclassified");
    Ok(())
}

fn double_centraliser() -> Check {
    for (m, r, s) in [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 2, 2)] {
        let rep = duality_report(m, r, s, 2024, Exec::default()).map_err(err)?;
        let f = &rep.flags;
        ensure!(f.spans_match_1, "({m},{r},{s}): commutant of the GL envelope is not span E(D)");
        ensure!(f.spans_match_2, "({m},{r},{s}): commutant of span E(D) is not the GL envelope");
        ensure!(f.eq13_match, "({m},{r},{s}): contraction equations cut out {} dims", rep.dims.eq13_solutions);
        let want = mixed_tensor_envelope_dim(m, r, s) as usize;
        ensure!(rep.dims.gl_envelope == want, "({m},{r},{s}): envelope {} vs {want}", rep.dims.gl_envelope);
        ensure!(rep.verdict == Verdict::Pass, "({m},{r},{s}): {:?}", rep.flags);
    }
    Ok(())
}

fn monoid_bridge() -> Check {
    for (r, s) in [(1, 1), (2, 1)] {
        let env = monoid_envelope_dim(2, r, s, 2024, Exec::default()).map_err(err)?;
        let rep = verify_basis(&Context::monoid(2), Degree::Bi(r, s), &opts()).map_err(err)?;
        ensure!(env == rep.candidate_count, "({r},{s}): envelope {env} vs basis {}", rep.candidate_count);
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("mat basis counts", mat_basis_counts),
        ("gl straightening soundness", gl_straightening),
        ("exterior z-basis", exterior_basis),
        ("z_r z_s identity", z_identity),
        ("spm basis and dilation laws", spm_basis),
        ("sp quotient and nabla counts", sp_quotient),
        ("monoid basis", monoid_basis),
        ("rational tableau counts", rational_counts),
        ("vanishing ideal of X", vanishing_ideal),
        ("tensor factorisation", tensor_factorisation),
        ("O_pi spans", o_pi_spans),
        ("walled Brauer diagrams", walled_brauer),
        ("double centraliser", double_centraliser),
        ("monoid envelope bridge", monoid_bridge),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("criterion {:02} {name}: PASS ({secs:.1}s)", k + 1),
            Err(e) => {
                println!("criterion {:02} {name}: FAIL ({secs:.1}s): {e}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria PASS", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
