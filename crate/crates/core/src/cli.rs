//! Command-line front end. Every subcommand prints one JSON document; the
//! exit code is 0 on pass, 1 on failed checks and 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coeff::{is_prime, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::fixture::DecompFixture;
use crate::grpalg::{verify_group_quiver_iso, DeltaGroup, XSet};
use crate::lattice::{Scalar, SymmElem};
use crate::lift::{m_table, roundtrip_report, standard_lift, verify_lift, verify_nebe, LiftParams, Variant};
use crate::quiver::{delta_presentation, digit_cartan, graded_quotient, koshita_presentation, psi_twist};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "sl2lift", version, about = "Quivers, self-dual lifts and basic orders for Δ₂(p^f) and SL₂(2^f)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Path algebra quotients: the Δ-quiver of kΔ₂(p^f) or Koshita's SL₂(2^f) quiver.
    Quiver(QuiverArgs),
    /// The group algebra F_{p^f}Δ₂(p^f).
    Group(GroupArgs),
    /// Standard-form self-dual lifts.
    #[command(subcommand)]
    Lift(LiftCommand),
    /// The basic order of SL₂(2^f) from a decomposition-matrix fixture.
    Nebe(NebeArgs),
    /// Runs the full verification suite.
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverKind {
    Delta,
    Koshita,
}

#[derive(Args, Debug)]
pub struct QuiverArgs {
    pub kind: QuiverKind,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long)]
    pub f: u32,
    #[arg(long)]
    pub cartan: bool,
    #[arg(long)]
    pub dims: bool,
    #[arg(long)]
    pub center: bool,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub f: u32,
    #[arg(long)]
    pub cartan: bool,
    #[arg(long)]
    pub xset: bool,
    #[arg(long)]
    pub classes: bool,
    #[arg(long)]
    pub iso: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Char2,
    Split,
    Nonsplit,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub f: u32,
    /// Defaults to char2 (p = 2), split (f even) or nonsplit (f odd).
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Comma-separated components, e.g. `1/12,1/12,1/12,1/4` or `1/6,1/6+0*pi`;
    /// defaults to χ(1)/|G|.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// `π² = d·p` for the nonsplit variant.
    #[arg(long, allow_hyphen_values = true)]
    pub pi_d: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum LiftCommand {
    /// Emits the canonical piece data of the standard lift.
    Build(LiftArgs),
    /// Builds and verifies the standard lift.
    Verify(LiftArgs),
    /// Normalizes random conjugates and rotations back to standard form.
    Roundtrip {
        #[command(flatten)]
        lift: LiftArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct NebeArgs {
    #[arg(long)]
    pub fixture: PathBuf,
    #[arg(long)]
    pub f: u32,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 16)]
    pub pf_max: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses one `u` component: a rational or `a+b*pi`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let Some(body) = s.strip_suffix("*pi") else {
        return Ok(Scalar::rat(parse_rat(s)?));
    };
    // split at the last sign that is not leading
    let cut = body.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
    let (a, b) = match cut {
        Some(i) => (parse_rat(&body[..i])?, parse_rat(body[i..].trim_start_matches('+'))?),
        None => (Rat::from_integer(0.into()), parse_rat(body)?),
    };
    Ok(Scalar { u0: a, u1: b })
}

fn default_variant(p: u64, f: u32) -> VariantArg {
    if p == 2 {
        VariantArg::Char2
    } else if f % 2 == 0 {
        VariantArg::Split
    } else {
        VariantArg::Nonsplit
    }
}

pub fn lift_params(a: &LiftArgs) -> Result<LiftParams> {
    let base = LiftParams::group_ring(a.p, a.f)?;
    let variant = match a.variant.unwrap_or_else(|| default_variant(a.p, a.f)) {
        VariantArg::Char2 => Variant::Char2,
        VariantArg::Split => Variant::Split,
        VariantArg::Nonsplit => match (&a.pi_d, &base.variant) {
            (Some(d), _) => Variant::Nonsplit { d: parse_rat(d)? },
            (None, Variant::Nonsplit { d }) => Variant::Nonsplit { d: d.clone() },
            (None, _) => Variant::Nonsplit { d: Rat::from_integer((-1).into()) },
        },
    };
    let u = match &a.u {
        Some(s) => SymmElem { comps: s.split(',').map(parse_scalar).collect::<Result<_>>()? },
        None => base.u,
    };
    LiftParams::new(a.p, a.f, variant, u)
}

fn check_small(p: u64, f: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 {
        return Err(Error::Domain("f must be positive".into()));
    }
    Ok(())
}

fn quiver(a: &QuiverArgs) -> Result<Value> {
    let pres = match a.kind {
        QuiverKind::Delta => {
            check_small(a.p, a.f)?;
            delta_presentation(a.p, a.f)?
        }
        QuiverKind::Koshita => koshita_presentation(a.f)?,
    };
    let alg = graded_quotient(&pres)?;
    let mut out = json!({ "dim": alg.dim(), "vertices": pres.vertices, "arrows": pres.arrows.len() });
    if a.dims {
        out["dims"] = json!(alg.dims_by_degree());
    }
    if a.cartan {
        out["cartan"] = json!(alg.cartan());
    }
    if a.center {
        out["center"] = json!((0..pres.num_blocks()).map(|b| alg.center_dim(b)).collect::<Vec<_>>());
    }
    Ok(out)
}

fn xset_json(x: &XSet) -> Value {
    json!({ "residues": x.residues, "modulus": x.modulus })
}

fn group(a: &GroupArgs) -> Result<(Value, bool)> {
    check_small(a.p, a.f)?;
    let g = DeltaGroup::new(a.p, a.f)?;
    let mut out = json!({ "order": g.order() });
    let mut pass = true;
    if a.cartan {
        out["cartan"] = json!(g.cartan());
    }
    if a.xset {
        let x = g.x_set();
        let want = XSet::expected(a.p, a.f);
        pass &= x == want;
        out["xset"] = xset_json(&x);
        out["expected"] = xset_json(&want);
    }
    if a.classes {
        out["classes"] = json!(g.class_count());
    }
    if a.iso {
        let rep = verify_group_quiver_iso(&g, &delta_presentation(a.p, a.f)?)?;
        pass &= rep.pass;
        out["iso"] = serde_json::to_value(&rep).expect("report serializes");
    }
    Ok((out, pass))
}

fn report_value(rep: &Report) -> Value {
    serde_json::to_value(rep).expect("report serializes")
}

/// Runs every suite for all prime powers `p^f ≤ pf_max`.
pub fn full_report(pf_max: u64, seed: u64) -> Result<Report> {
    let mut rep = Report::new(format!("all(p^f <= {pf_max})"));
    for p in (2..=pf_max).filter(|&p| is_prime(p)) {
        let mut f = 1u32;
        while p.pow(f) <= pf_max {
            rep.merge(prime_power_report(p, f, seed)?);
            f += 1;
        }
    }
    for f in [2u32, 3] {
        let fx = match f {
            2 => DecompFixture::from_json(include_str!("../fixtures/sl2_4.json"))?,
            _ => DecompFixture::from_json(include_str!("../fixtures/sl2_8.json"))?,
        };
        rep.merge(verify_nebe(&fx)?.1);
    }
    Ok(rep)
}

/// Cartan, dimension, X-set, centers, m-table, lift and round-trip checks for one `(p, f)`.
pub fn prime_power_report(p: u64, f: u32, seed: u64) -> Result<Report> {
    let q = p.pow(f) as usize;
    let n = q - 1;
    let mut rep = Report::new(format!("({p},{f})"));
    let pres = delta_presentation(p, f)?;
    let alg = graded_quotient(&pres)?;
    let g = DeltaGroup::new(p, f)?;
    let digit: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| digit_cartan(p, f, i as i64, j as i64)).collect()).collect();
    let quiver_cartan = alg.cartan();
    rep.expect_eq("cartan: group = quiver", g.cartan(), quiver_cartan.clone());
    rep.expect_eq("cartan: quiver = digit", digit, quiver_cartan.clone());
    let shape: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (p == 2, (i + j) % 2 == 0) {
                    (true, _) => 1 + usize::from(i == j),
                    (false, true) => 2 + usize::from(i == j),
                    (false, false) => 0,
                })
                .collect()
        })
        .collect();
    rep.expect_eq(if p == 2 { "cartan = I+J" } else { "cartan = I+2J per parity block" }, shape, quiver_cartan);
    rep.expect_eq("dim kQ/I = (p^f−1)p^f", n * q, alg.dim());
    rep.expect_eq("X(P,A) = {2p^q}", XSet::expected(p, f), g.x_set());
    let centers: Vec<usize> = (0..pres.num_blocks()).map(|b| alg.center_dim(b)).collect();
    let want: Vec<usize> = if p == 2 { vec![q] } else { vec![(q + 3) / 2; 2] };
    rep.expect_eq("center dims per block", want, centers.clone());
    rep.expect_eq("class count = Σ center dims", g.class_count(), centers.iter().sum());

    // twists by unipotent central units 1 + (radical part of the centre)
    let blocks: Vec<usize> = (0..pres.num_blocks()).collect();
    let zs: Vec<_> = (0..f as usize)
        .map(|q| {
            let mut z = alg.one();
            for b in &blocks {
                for (k, c) in alg.center_basis(*b).into_iter().enumerate().skip(1) {
                    let coeff = alg.field().from_int((q + k) as i64);
                    z = alg.add(&z, &alg.scale(coeff, &c));
                }
            }
            z
        })
        .collect();
    match psi_twist(&alg, &zs) {
        Ok(t) => {
            rep.check("ψ-twist preserves relations", t.report.pass, "");
            rep.check("ψ(z)ψ(z) = ψ(z²) for z ∈ 1+J(Z)", t.composes_with(&t, &alg)?, "");
            rep.check("ψ(z)ψ(z′) = ψ(ψ(z)(z′)·z)", t.composes_crossed(&t, &alg)?, "");
        }
        Err(e) => {
            rep.check("ψ-twist preserves relations", false, e.to_string());
        }
    }

    let table = m_table(p, f)?;
    if table.kappa >= 2 {
        rep.merge(table.suite_report(6));
    }
    let params = LiftParams::group_ring(p, f)?;
    if p == 2 || f <= 2 {
        let o = standard_lift(&params)?;
        rep.merge(verify_lift(&o, &params)?);
        rep.merge(roundtrip_report(&params, 20, seed)?);
    }
    Ok(rep)
}

fn lift(cmd: &LiftCommand) -> Result<(Value, bool)> {
    match cmd {
        LiftCommand::Build(a) => {
            check_small(a.p, a.f)?;
            let params = lift_params(a)?;
            let o = standard_lift(&params)?;
            let mut v = serde_json::to_value(o.canonical()).expect("order serializes");
            v["f"] = json!(a.f);
            v["u"] = json!(params.u.to_strings());
            Ok((v, true))
        }
        LiftCommand::Verify(a) => {
            check_small(a.p, a.f)?;
            let params = lift_params(a)?;
            let rep = verify_lift(&standard_lift(&params)?, &params)?;
            Ok((report_value(&rep), rep.pass))
        }
        LiftCommand::Roundtrip { lift, trials, seed } => {
            check_small(lift.p, lift.f)?;
            let rep = roundtrip_report(&lift_params(lift)?, *trials, *seed)?;
            Ok((report_value(&rep), rep.pass))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, bool)> {
    match &cli.command {
        Command::Quiver(a) => Ok((quiver(a)?, true)),
        Command::Group(a) => group(a),
        Command::Lift(c) => lift(c),
        Command::Nebe(a) => {
            let fx = DecompFixture::load(&a.fixture)?;
            if fx.f != a.f {
                return Err(Error::Fixture(format!("fixture is for f = {}, not {}", fx.f, a.f)));
            }
            let (_, rep) = verify_nebe(&fx)?;
            Ok((report_value(&rep), rep.pass))
        }
        Command::Report(a) => {
            if !a.all {
                return Err(Error::Domain("only `report --all` is supported".into()));
            }
            let rep = full_report(a.pf_max, a.seed)?;
            Ok((report_value(&rep), rep.pass))
        }
    }
}

/// Parses `args` (including the program name), writes JSON to `out` and
/// returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((v, pass)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("sl2lift").chain(args.iter().copied()), &mut out, &mut err);
        let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, v)
    }

    #[test]
    fn parses_scalars() {
        let s = parse_scalar("1/6-1/12*pi").unwrap();
        assert_eq!((s.u0, s.u1), (crate::coeff::rat(1, 6), crate::coeff::rat(-1, 12)));
        let s = parse_scalar("-2*pi").unwrap();
        assert_eq!(s.u1, crate::coeff::rat(-2, 1));
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn group_examples() {
        assert_eq!(call(&["group", "--p", "2", "--f", "2", "--cartan"]).1["cartan"], json!([[2, 1, 1], [1, 2, 1], [1, 1, 2]]));
        assert_eq!(call(&["group", "--p", "3", "--f", "1", "--classes"]).1["classes"], json!(6));
        let (code, v) = call(&["group", "--p", "2", "--f", "3", "--xset", "--iso"]);
        assert_eq!(code, 0);
        assert_eq!(v["xset"]["residues"], json!([1, 2, 4]));
    }

    #[test]
    fn lift_examples() {
        let (code, v) = call(&["lift", "verify", "--p", "2", "--f", "1", "--variant", "char2", "--u", "1/2,1/2"]);
        assert_eq!(code, 0);
        assert_eq!(v["pass"], json!(true));
        // wrong valuation
        assert_eq!(call(&["lift", "verify", "--p", "2", "--f", "1", "--u", "1,1"]).0, 2);
        // admissible but not self-dual
        let (code, _) = call(&["lift", "verify", "--p", "3", "--f", "1", "--u", "1/6,1/12", "--pi-d", "-1"]);
        assert_eq!(code, 1);
        let (_, v) = call(&["lift", "build", "--p", "2", "--f", "1"]);
        assert_eq!(v["pieces"][0]["basis"], json!([["1", "1"], ["0", "2"]]));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["group", "--p", "4", "--f", "1"]).0, 2);
        assert_eq!(call(&["quiver", "koshita", "--f", "2", "--dims"]).1["dim"], json!(19));
    }

    #[test]
    fn nebe_fixture() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sl2_4.json");
        let (code, v) = call(&["nebe", "--fixture", path, "--f", "2"]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(call(&["nebe", "--fixture", path, "--f", "3"]).0, 2);
    }
}
