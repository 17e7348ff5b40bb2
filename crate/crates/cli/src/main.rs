mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use bideterminant::bidet::{
    bidet_poly, nabla_basis, o_pi_span, sample_points, straighten, verify_basis, verify_tensor_factorisation,
    x_locus_report, Bitableau, Context, ContextKind, Degree, Evaluator, Side, StraightExprPoly, Verdict, VerifyOptions,
};
use bideterminant::duality::duality_report;
use bideterminant::shapes::{lambda_rs, partitions_bounded, DominantWeight, OrderTag, SaturatedSet};
use bideterminant::tableaux::{enumerate_standard, Alphabet, AnyTableau, JForm, Regime, Shape};
use bideterminant::Exec;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bidet", version, about = "Exact bideterminant bases, straightening and walled Brauer checks")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Number of evaluation points (default: largest weight block + 8).
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Also write the JSON output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the standard tableaux of a shape.
    Enumerate(EnumerateArgs),
    /// Straighten one bitableau and check the result.
    Straighten(StraightenArgs),
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Gl,
    Sympl,
    Rational,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextArg {
    Mat,
    Spm,
    Sp,
    Monoid,
    Glrat,
}

impl From<ContextArg> for ContextKind {
    fn from(c: ContextArg) -> Self {
        match c {
            ContextArg::Mat => ContextKind::Mat,
            ContextArg::Spm => ContextKind::Spm,
            ContextArg::Sp => ContextKind::Sp,
            ContextArg::Monoid => ContextKind::Monoid,
            ContextArg::Glrat => ContextKind::Glrat,
        }
    }
}

#[derive(Args)]
struct ContextArgs {
    #[arg(long)]
    context: ContextArg,
    /// Matrix size (`n` for mat/spm/sp, `m` for monoid/glrat).
    #[arg(long = "n", visible_alias = "m")]
    size: usize,
    /// Letter order, smallest first, e.g. `1',1,2',2`.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    regime: RegimeArg,
    #[arg(long = "n", visible_alias = "m")]
    size: usize,
    /// `(2,1)`, or `(λ¹),(λ²)` for the rational regime.
    #[arg(long)]
    shape: String,
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args)]
struct StraightenArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    /// Left tableau, e.g. `[1,2/3]`, `col(1,2)` or `[1];[2]`.
    #[arg(long = "s")]
    left: String,
    /// Right tableau.
    #[arg(long = "t")]
    right: String,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Certify the standard basis of one degree or bigrade.
    Basis {
        #[command(flatten)]
        ctx: ContextArgs,
        /// `r` or, for monoid/glrat, `r,s`.
        #[arg(long)]
        degree: String,
    },
    /// Certify the basis of the span indexed by a saturated set.
    Ospan {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Shapes in the set; repeatable.
        #[arg(long)]
        shape: Vec<String>,
        /// Add every shape of size at most this (mat, sp).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Add the weights `Λ_{r,s}` (glrat).
        #[arg(long)]
        bigrade: Option<String>,
    },
    /// Check the tensor factorisation of the top-shape part.
    Tensor {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        shape: String,
    },
    /// Independence on the locus `d = 0` and on `X_{r,s}`.
    Xlocus {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        bigrade: String,
    },
    /// Walled Brauer double centraliser report.
    Duality {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
}

struct Run {
    seed: u64,
    points: Option<usize>,
    exec: Exec,
}

impl Run {
    fn options(&self) -> VerifyOptions {
        VerifyOptions { seed: self.seed, points: self.points, exec: self.exec, ..VerifyOptions::default() }
    }
}

fn alphabet(kind: ContextKind, size: usize, order: Option<&str>) -> Result<Option<Alphabet>> {
    let Some(order) = order else { return Ok(None) };
    Ok(Some(match kind {
        ContextKind::Spm | ContextKind::Sp => {
            if !size.is_multiple_of(2) {
                bail!("symplectic contexts need even n");
            }
            let m = size / 2;
            let letters = parse::order(order, &Alphabet::symplectic(m))?;
            Alphabet::symplectic_with(m, JForm::Block, Some(letters))?
        }
        _ => Alphabet::with_order(parse::order(order, &Alphabet::natural(size))?)?,
    }))
}

fn context(args: &ContextArgs) -> Result<Context> {
    let kind = ContextKind::from(args.context);
    Ok(Context::new(kind, args.size, alphabet(kind, args.size, args.order.as_deref())?)?)
}

fn bitableau(ctx: &Context, left: &str, right: &str) -> Result<Bitableau> {
    let a = ctx.alphabet();
    Ok(if ctx.kind().two_block() {
        Bitableau::rational(parse::rational_tableau(left, a)?, parse::rational_tableau(right, a)?)?
    } else {
        Bitableau::plain(parse::tableau(left, a)?, parse::tableau(right, a)?)?
    })
}

fn big_json(x: &num_bigint::BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<(Value, Verdict)> {
    let (regime, a) = match args.regime {
        RegimeArg::Sympl => {
            if !args.size.is_multiple_of(2) {
                bail!("the symplectic regime needs even n");
            }
            let m = args.size / 2;
            let a = match &args.order {
                Some(o) => {
                    Alphabet::symplectic_with(m, JForm::Block, Some(parse::order(o, &Alphabet::symplectic(m))?))?
                }
                None => Alphabet::symplectic(m),
            };
            (Regime::Symplectic, a)
        }
        r => {
            let a = match &args.order {
                Some(o) => Alphabet::with_order(parse::order(o, &Alphabet::natural(args.size))?)?,
                None => Alphabet::natural(args.size),
            };
            (if matches!(r, RegimeArg::Gl) { Regime::Gl } else { Regime::Rational }, a)
        }
    };
    let shape = parse::shape(&args.shape, regime == Regime::Rational, args.size)?;
    let list = enumerate_standard(&shape, &a, regime)?;
    let shown: Vec<String> = list
        .iter()
        .map(|t| match t {
            AnyTableau::Plain(t) => t.display_with(&a),
            AnyTableau::Rational(t) => t.display_with(&a),
        })
        .collect();
    let shape_text = match &shape {
        Shape::Plain(p) => p.to_string(),
        Shape::Rational(r) => r.to_string(),
    };
    let out = json!({
        "regime": format!("{regime:?}").to_lowercase(),
        "size": args.size,
        "order": a.order().iter().map(|&l| a.letter_name(l)).collect::<Vec<_>>(),
        "shape": shape_text,
        "count": list.len(),
        "tableaux": shown,
    });
    Ok((out, Verdict::Pass))
}

fn cmd_straighten(args: &StraightenArgs, run: &Run) -> Result<(Value, Verdict)> {
    let ctx = context(&args.ctx)?;
    let b = bitableau(&ctx, &args.left, &args.right)?;
    let expr = straighten(&b, &ctx)?;
    let a = ctx.alphabet();
    let (method, checked, ok) = if ctx.kind() == ContextKind::Mat {
        ("symbolic", 0, expr.to_polynomial(&ctx)? == bidet_poly(&b, &ctx)?)
    } else {
        let count = run.points.unwrap_or(3);
        let pts = sample_points(&ctx, count, run.seed, 0, &Default::default())?;
        let mut ok = true;
        for p in &pts {
            let mut ev = Evaluator::new(&ctx, p)?;
            ok &= ev.bitableau(&b)? == ev.expr(&expr)?;
        }
        ("evaluation", count, ok)
    };
    let terms: Vec<Value> = expr
        .terms
        .iter()
        .map(|t| json!({ "coeff": big_json(&t.coeff), "dpow": t.dpow, "bitableau": t.bitab.display_with(a) }))
        .collect();
    let out = json!({
        "context": ctx.kind().name(),
        "size": ctx.size(),
        "input": b.display_with(a),
        "terms": terms,
        "expansion": expr.display_with(a),
        "round_trip": { "method": method, "points": checked, "ok": ok },
        "verdict": verdict(ok),
    });
    Ok((out, verdict(ok)))
}

fn weight_of(ctx: &Context, s: &str) -> Result<DominantWeight> {
    match ctx.kind() {
        ContextKind::Mat => Ok(DominantWeight::from_partition(&parse::partition(s)?, ctx.size())),
        ContextKind::Sp => Ok(DominantWeight::from_partition(&parse::partition(s)?, ctx.alphabet().m())),
        ContextKind::Glrat => Ok(parse::rational_shape(s, ctx.size())?.weight()?),
        _ => bail!("O_π spans are available for mat, sp and glrat"),
    }
}

fn saturated_set(
    ctx: &Context,
    shapes: &[String],
    max_degree: Option<usize>,
    bigrade: Option<&str>,
) -> Result<SaturatedSet> {
    let order = if ctx.kind() == ContextKind::Sp { OrderTag::C } else { OrderTag::A };
    let mut weights = Vec::new();
    for s in shapes {
        weights.push(weight_of(ctx, s)?);
    }
    if let Some(k) = max_degree {
        let len = if ctx.kind() == ContextKind::Sp { ctx.alphabet().m() } else { ctx.size() };
        if ctx.kind() == ContextKind::Glrat {
            bail!("use --bigrade for glrat");
        }
        for d in 0..=k {
            weights.extend(partitions_bounded(d, len).iter().map(|p| DominantWeight::from_partition(p, len)));
        }
    }
    if let Some(b) = bigrade {
        if ctx.kind() != ContextKind::Glrat {
            bail!("--bigrade only applies to glrat");
        }
        let (r, s) = parse::pair(b)?;
        weights.extend(lambda_rs(ctx.size(), r, s).weights);
    }
    if weights.is_empty() {
        bail!("the saturated set is empty; pass --shape, --max-degree or --bigrade");
    }
    Ok(SaturatedSet::new(weights, order))
}

fn degree(ctx: &Context, s: &str) -> Result<Degree> {
    if ctx.kind().two_block() {
        let (r, s) = parse::pair(s)?;
        Ok(Degree::Bi(r, s))
    } else {
        Ok(Degree::Total(s.trim().parse().map_err(|_| anyhow!("degree `{s}` must be a number"))?))
    }
}

fn cmd_verify(cmd: &VerifyCommand, run: &Run) -> Result<(Value, Verdict)> {
    let opts = run.options();
    match cmd {
        VerifyCommand::Basis { ctx, degree: d } => {
            let ctx = context(ctx)?;
            let rep = verify_basis(&ctx, degree(&ctx, d)?, &opts)?;
            Ok((serde_json::to_value(&rep)?, rep.verdict))
        }
        VerifyCommand::Ospan { ctx, shape, max_degree, bigrade } => {
            let ctx = context(ctx)?;
            let pi = saturated_set(&ctx, shape, *max_degree, bigrade.as_deref())?;
            let rep = o_pi_span(&pi, &ctx, &opts)?;
            Ok((serde_json::to_value(&rep)?, rep.verdict))
        }
        VerifyCommand::Tensor { ctx, shape } => {
            let ctx = context(ctx)?;
            let sh = parse::shape(shape, ctx.kind().two_block(), ctx.size())?;
            let ok = verify_tensor_factorisation(&sh, &ctx, &opts)?;
            let left = nabla_basis(&sh, &ctx, Side::Left, &opts)?;
            let out = json!({
                "context": ctx.to_string(),
                "shape": shape,
                "nabla_size": left.terms.len(),
                "nabla_independent": left.independent,
                "factorisation_ok": ok,
                "verdict": verdict(ok && left.independent),
            });
            Ok((out, verdict(ok && left.independent)))
        }
        VerifyCommand::Xlocus { m, r, s, bigrade } => {
            let rep = x_locus_report(*m, *r, *s, parse::pair(bigrade)?, &opts)?;
            let ok = rep.on_x.independent && rep.on_xrs.independent && rep.highest_weight_nonzero;
            let mut v = serde_json::to_value(&rep)?;
            v["verdict"] = serde_json::to_value(verdict(ok))?;
            Ok((v, verdict(ok)))
        }
        VerifyCommand::Duality { m, r, s } => {
            let rep = duality_report(*m, *r, *s, run.seed, run.exec)?;
            Ok((serde_json::to_value(&rep)?, rep.verdict))
        }
    }
}

fn execute(cli: &Cli) -> Result<(Value, Verdict)> {
    let run = Run {
        seed: cli.seed,
        points: cli.points,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Straighten(a) => cmd_straighten(a, &run),
        Command::Verify(v) => cmd_verify(v, &run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((value, verdict)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialise");
            println!("{text}");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
