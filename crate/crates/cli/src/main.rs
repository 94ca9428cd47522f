//! `genjac`: generalized Jacobians, L-functions and reconstruction from the
//! command line. Every command prints a JSON report.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use genjac_core::algebra::text::parse_fe;
use genjac_core::curve_spec::{emit_spec, parse_spec, CurveSpec};
use genjac_core::elliptic::EllipticLevel;
use genjac_core::genus0::{order_formula, Genus0Spec, Mobius, DEFAULT_BUDGET};
use genjac_core::lfun::{compute_level, polynomial_part, weil_magnitudes, CurveLevel, Genus0Level};
use genjac_core::model_checks::{fixed_point_counts, generation_cover, stab_counts, unique_sum_fraction};
use genjac_core::reconstruction::{
    build_bundle, detect_points, invert_counts, search_twist, verify_canonical_maps, LBundle, Twist, TwistOutcome,
};
use genjac_core::Error;

#[derive(Parser)]
#[command(name = "genjac", version, about = "Generalized Jacobians of curves over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Highest level r; levels 1..=r are processed.
    #[arg(short = 'r', long = "levels", short_alias = 'R', default_value_t = 1,
          value_parser = clap::value_parser!(u32).range(1..))]
    levels: u32,
    /// Series bound B (default: deg m + 3).
    #[arg(short = 'B', long = "series-bound")]
    series_bound: Option<usize>,
    /// Work budget for enumerations.
    #[arg(long, default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure of J_m at each level.
    Group {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Rational points of U and their Abel-Jacobi classes.
    Points {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// L-series of every character by both formulas.
    Lfun {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write the L-data bundle of a curve, optionally moved by a twist.
    Bundle {
        spec: PathBuf,
        /// Twist `u,v,l`: the bundle describes the image of the curve under
        /// x -> u x + v after l Frobenius steps, with the class
        /// correspondence from the original curve.
        #[arg(long)]
        twist: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Rational points detected from a bundle alone.
    Detect {
        bundle: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Search for the twist carrying a curve to the one behind a bundle.
    Reconstruct {
        spec: PathBuf,
        bundle: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Finite-level check suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        spec: PathBuf,
        /// Second curve for the canonical-map suite.
        #[arg(long)]
        against: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Suite {
    /// Canonical maps between moduli of equal support.
    Canonical,
    /// Translates of j(U) meeting j(U).
    Stab,
    /// Steps for j(U) to generate the group.
    Gen,
    /// Fixed points of automorphisms.
    Fixed,
    /// Inverse roots of the polynomial parts.
    Weil,
    /// Classes that are a unique sum of pi points.
    Unique,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::HypothesisViolated(_)
            | Error::InvalidCurve(_)
            | Error::IncompleteBundle(_)
            | Error::InvalidComparison(_) => 2,
            _ => 1,
        };
        Failure { code, kind: e.kind().to_string(), message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, kind: "Usage".into(), message }
}

type Run<T> = std::result::Result<T, Failure>;

/// A report and whether its verdict holds.
struct Report {
    body: Value,
    ok: bool,
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Run<CurveSpec> {
    Ok(parse_spec(&read(path)?)?)
}

fn load_bundle(path: &Path) -> Run<LBundle> {
    Ok(LBundle::from_json(&read(path)?)?)
}

/// Length below which `(1 - T) L` must vanish for nontrivial characters.
fn part_len(spec: &CurveSpec) -> usize {
    match spec {
        CurveSpec::Genus0(s) => s.degree(),
        CurveSpec::Elliptic(s) => s.pi() + 2,
    }
}

fn series_bound(spec: &CurveSpec, common: &Common) -> Run<usize> {
    let min = part_len(spec);
    let b = common.series_bound.unwrap_or(min + 3);
    if b < min {
        return Err(usage(format!("series bound {b} is below {min}")));
    }
    Ok(b)
}

fn spec_json(spec: &CurveSpec) -> Value {
    json!({ "kind": spec.kind(), "q": spec.field().size(), "pi": spec.pi(), "text": emit_spec(spec) })
}

enum Level {
    Genus0(Genus0Level),
    Elliptic(EllipticLevel),
}

impl Level {
    fn new(spec: &CurveSpec, r: u32, budget: u64) -> Run<Level> {
        Ok(match spec {
            CurveSpec::Genus0(s) => Level::Genus0(Genus0Level::new(s, r, budget)?),
            CurveSpec::Elliptic(s) => Level::Elliptic(EllipticLevel::new(s, r, budget)?),
        })
    }

    fn curve(&self) -> &dyn CurveLevel {
        match self {
            Level::Genus0(l) => l,
            Level::Elliptic(l) => l,
        }
    }

    fn generators(&self) -> Vec<String> {
        match self {
            Level::Genus0(l) => l.structure.generators.iter().map(|g| g.format(l.group.field())).collect(),
            Level::Elliptic(l) => l.structure.generators.iter().map(|g| g.format(l.group.field())).collect(),
        }
    }

    fn order_formula(&self, spec: &CurveSpec) -> u128 {
        match self {
            Level::Genus0(l) => order_formula(spec.as_genus0().expect("genus0 level"), l.group.level()),
            Level::Elliptic(l) => {
                let big_q = l.group.field().size() as u128;
                let s = l.group.modulus_points().len() as u32;
                l.group.curve_points().len() as u128 * (big_q - 1).pow(s - 1)
            }
        }
    }

    fn points(&self) -> Vec<Value> {
        match self {
            Level::Genus0(l) => {
                let f = l.group.field();
                l.group
                    .points_of_u()
                    .iter()
                    .map(|(p, c)| json!({ "point": p.format(f), "class": c.format(f), "index": l.index_of(c) }))
                    .collect()
            }
            Level::Elliptic(l) => {
                let f = l.group.field();
                l.group
                    .points_of_u()
                    .iter()
                    .map(|(p, c)| json!({ "point": p.format(f), "class": c.format(f), "index": l.index_of(c) }))
                    .collect()
            }
        }
    }
}

fn cmd_group(spec: &CurveSpec, common: &Common) -> Run<Report> {
    let mut levels = Vec::new();
    let mut ok = true;
    for r in 1..=common.levels {
        let lv = Level::new(spec, r, common.budget)?;
        let c = lv.curve();
        let formula = lv.order_formula(spec);
        ok &= formula == c.order() as u128;
        levels.push(json!({
            "level": r,
            "field_size": c.level_size(),
            "order": c.order(),
            "order_formula": formula as u64,
            "factors": c.factors(),
            "generators": lv.generators(),
        }));
    }
    Ok(Report { body: json!({ "spec": spec_json(spec), "levels": levels }), ok })
}

fn cmd_points(spec: &CurveSpec, common: &Common) -> Run<Report> {
    let mut levels = Vec::new();
    for r in 1..=common.levels {
        let lv = Level::new(spec, r, common.budget)?;
        levels.push(json!({ "level": r, "points": lv.points() }));
    }
    Ok(Report { body: json!({ "spec": spec_json(spec), "levels": levels }), ok: true })
}

fn cmd_lfun(spec: &CurveSpec, common: &Common) -> Run<Report> {
    let bound = series_bound(spec, common)?;
    let len = part_len(spec);
    let mut levels = Vec::new();
    let mut agree = true;
    let mut bounded = true;
    for r in 1..=common.levels {
        let lv = Level::new(spec, r, common.budget)?;
        let c = lv.curve();
        let all = compute_level(c, bound)?;
        let mut chars = Vec::new();
        for ((chi, e), d) in all.characters.iter().zip(&all.euler).zip(&all.divisor_sum) {
            let same = e.agrees_with(d);
            agree &= same;
            let mut row = json!({
                "chi": chi.exponents,
                "order": chi.order(),
                "euler": e.coeffs,
                "divisor_sum": d.coeffs,
                "agree": same,
            });
            if !chi.is_trivial() {
                match polynomial_part(d, false, len) {
                    Ok(part) => {
                        row["polynomial_part"] = json!(part.coeffs);
                        row["weil_magnitudes"] = json!(weil_magnitudes(&part)?);
                    }
                    Err(err @ Error::DegreeBoundViolation { .. }) => {
                        bounded = false;
                        row["polynomial_part"] = json!({ "error": err.kind(), "message": err.to_string() });
                    }
                    Err(err) => return Err(err.into()),
                }
            }
            chars.push(row);
        }
        levels.push(json!({
            "level": r,
            "field_size": c.level_size(),
            "carrier": all.carrier,
            "characters": chars,
        }));
    }
    let body = json!({
        "spec": spec_json(spec),
        "series_bound": bound,
        "levels": levels,
        "degree_bound_holds": bounded,
        "euler==divisor_sum": agree,
    });
    Ok(Report { body, ok: agree && bounded })
}

fn parse_twist(text: &str, spec: &Genus0Spec) -> Run<Twist> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [u, v, l] = parts[..] else {
        return Err(usage(format!("twist '{text}' is not of the form u,v,l")));
    };
    let f = spec.field();
    let u = parse_fe(u, f)?;
    let v = parse_fe(v, f)?;
    let l = l.parse::<u32>().map_err(|e| usage(format!("twist exponent '{l}': {e}")))?;
    if u.is_zero() {
        return Err(usage("twist needs u != 0".into()));
    }
    Ok(Twist { alpha: Mobius::affine(u, v), l })
}

fn cmd_bundle(spec: &CurveSpec, twist: Option<&str>, common: &Common) -> Run<LBundle> {
    let a = spec.as_genus0()?;
    let bound = series_bound(spec, common)?;
    let tw = match twist {
        Some(t) => parse_twist(t, a)?,
        None => Twist::identity(),
    };
    let b = tw.apply_to_spec(a)?;
    Ok(build_bundle(&b, common.levels, bound, common.budget, Some((a, &tw)))?)
}

fn cmd_detect(bundle: &LBundle, common: &Common) -> Run<Report> {
    let top = common.levels.min(bundle.max_level());
    let mut levels = Vec::new();
    for r in 1..=top {
        let table = invert_counts(bundle, r, 1)?;
        let found = detect_points(&table)?;
        let lvl = bundle.level(r)?;
        let coords: Vec<Vec<u64>> = found
            .iter()
            .map(|&e| {
                let mut idx = e as u64;
                let mut c = vec![0u64; lvl.factors.len()];
                for i in (0..c.len()).rev() {
                    c[i] = idx % lvl.factors[i];
                    idx /= lvl.factors[i];
                }
                c
            })
            .collect();
        levels.push(json!({
            "level": r,
            "factors": lvl.factors,
            "points": found.len(),
            "indices": found,
            "coordinates": coords,
        }));
    }
    Ok(Report { body: json!({ "levels": levels }), ok: true })
}

fn cmd_reconstruct(spec: &CurveSpec, bundle: &LBundle, common: &Common) -> Run<Report> {
    let a = spec.as_genus0()?;
    let outcome = search_twist(a, bundle, common.levels, common.budget)?;
    let ok = matches!(outcome, TwistOutcome::Found { .. });
    let body = json!({ "spec": spec_json(spec), "levels": common.levels, "result": outcome });
    Ok(Report { body, ok })
}

fn cmd_verify(suite: Suite, spec: &CurveSpec, against: Option<&Path>, common: &Common) -> Run<Report> {
    let levels = 1..=common.levels;
    let (details, ok) = match suite {
        Suite::Canonical => {
            let a = spec.as_genus0()?;
            let other = match against {
                Some(p) => load_spec(p)?,
                None => return Err(usage("the canonical suite needs --against".into())),
            };
            let b = other.as_genus0()?;
            let mut ok = true;
            let mut rows = Vec::new();
            for r in levels {
                let rep = verify_canonical_maps(a, b, r, common.budget)?;
                for (map, (src, dst)) in [(&rep.a_to_b, rep.orders), (&rep.b_to_a, (rep.orders.1, rep.orders.0))] {
                    if map.exists {
                        ok &= map.surjective == Some(true) && map.kernel.map(|k| k * dst) == Some(src);
                    }
                }
                ok &= rep.isomorphism == (a.modulus() == b.modulus());
                rows.push(serde_json::to_value(&rep).expect("reports serialize"));
            }
            (json!(rows), ok)
        }
        Suite::Stab => {
            let s = spec.as_genus0()?;
            let limit = s.degree() + 2;
            let mut rows = Vec::new();
            for r in levels {
                let rep = stab_counts(s, r, common.budget)?;
                rows.push(json!({ "level": r, "max": rep.max, "identity_count": rep.identity_count }));
            }
            let ok = rows.iter().all(|v| v["max"].as_u64().unwrap() as usize <= limit);
            (json!({ "limit": limit, "levels": rows }), ok)
        }
        Suite::Gen => {
            let s = spec.as_genus0()?;
            let limit = 2 * s.pi();
            let rows = levels
                .map(|r| Ok(json!({ "level": r, "steps": generation_cover(s, r, common.budget)? })))
                .collect::<Run<Vec<_>>>()?;
            let ok = rows.iter().all(|v| v["steps"].as_u64().unwrap() as usize <= limit);
            (json!({ "limit": limit, "levels": rows }), ok)
        }
        Suite::Fixed => {
            let s = spec.as_genus0()?;
            let rows = levels
                .map(|r| Ok(serde_json::to_value(fixed_point_counts(s, r)?).expect("reports serialize")))
                .collect::<Run<Vec<_>>>()?;
            let ok = rows.iter().all(|v| {
                v["rows"].as_array().unwrap().iter().all(|row| row["fixed"].as_u64().unwrap() <= 2)
            });
            (json!({ "limit": 2, "levels": rows }), ok)
        }
        Suite::Weil => {
            let bound = series_bound(spec, common)?;
            let len = part_len(spec);
            let mut ok = true;
            let mut rows = Vec::new();
            for r in levels {
                let lv = Level::new(spec, r, common.budget)?;
                let c = lv.curve();
                let sqrt_q = (c.level_size() as f64).sqrt();
                let all = compute_level(c, bound)?;
                let mut worst: f64 = 0.0;
                for (chi, l) in all.characters.iter().zip(&all.divisor_sum) {
                    if chi.is_trivial() {
                        continue;
                    }
                    for m in weil_magnitudes(&polynomial_part(l, false, len)?)? {
                        worst = worst.max((m - 1.0).abs().min((m - sqrt_q).abs()));
                    }
                }
                ok &= worst <= 1e-6;
                rows.push(json!({ "level": r, "max_deviation": worst }));
            }
            (json!({ "tolerance": 1e-6, "levels": rows }), ok)
        }
        Suite::Unique => {
            let s = spec.as_genus0()?;
            let rows = levels.map(|r| Ok(unique_sum_fraction(s, r, common.budget)?)).collect::<Run<Vec<_>>>()?;
            let ok = rows.windows(2).all(|w| w[0].le(&w[1]));
            (serde_json::to_value(&rows).expect("reports serialize"), ok)
        }
    };
    let body = json!({ "suite": format!("{suite:?}").to_lowercase(), "spec": spec_json(spec), "pass": ok, "details": details });
    Ok(Report { body, ok })
}

fn emit(text: &str, out: Option<&Path>) -> Run<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Run<bool> {
    let (report, common) = match &cli.command {
        Command::Group { spec, common } => (cmd_group(&load_spec(spec)?, common)?, common),
        Command::Points { spec, common } => (cmd_points(&load_spec(spec)?, common)?, common),
        Command::Lfun { spec, common } => (cmd_lfun(&load_spec(spec)?, common)?, common),
        Command::Bundle { spec, twist, common } => {
            let bundle = cmd_bundle(&load_spec(spec)?, twist.as_deref(), common)?;
            emit(&format!("{}\n", bundle.to_json()), common.out.as_deref())?;
            return Ok(true);
        }
        Command::Detect { bundle, common } => (cmd_detect(&load_bundle(bundle)?, common)?, common),
        Command::Reconstruct { spec, bundle, common } => {
            (cmd_reconstruct(&load_spec(spec)?, &load_bundle(bundle)?, common)?, common)
        }
        Command::Verify { suite, spec, against, common } => {
            (cmd_verify(*suite, &load_spec(spec)?, against.as_deref(), common)?, common)
        }
    };
    let text = serde_json::to_string_pretty(&report.body).expect("reports serialize");
    emit(&format!("{text}\n"), common.out.as_deref())?;
    Ok(report.ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            log::warn!("verdict failed");
            ExitCode::from(1)
        }
        Err(f) => {
            let record = json!({ "error": f.kind, "message": f.message });
            eprintln!("{record}");
            ExitCode::from(f.code)
        }
    }
}
