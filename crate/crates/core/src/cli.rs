//! Command-line front end.  Every command prints one JSON report on standard
//! output (or an indented key/value table with `--human`).  Exit codes:
//! 0 success, 1 domain or input error, 2 resource cap exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Bilinear};
use crate::birkhoff::{self, FreeAlgebra};
use crate::census::{self, Property};
use crate::constructions::{self, EnvelopeKind};
use crate::error::{Error, Result};
use crate::examples;
use crate::field::Field;
use crate::linalg::{Subspace, Vector};
use crate::morphisms;
use crate::poly::{self, NAPoly};
use crate::suite::{self, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "varietylab", version, about = "Finite-dimensional nonassociative algebras over finite fields")]
pub struct Cli {
    /// Print an indented table instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    /// Seed for the randomized sampling in `theorem-suite`.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basic structural properties of an algebra.
    Info {
        /// JSON file, or `builtin:NAME`.
        algebra: String,
    },
    /// Power, depth, derived, annihilator, socle and chief series.
    Series { algebra: String },
    /// Check polynomial identities (e.g. "x1 x2 - x2 x1", "(x1 x2) x3").
    Identities {
        algebra: String,
        /// A polynomial; may be repeated.
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
    },
    /// The relatively free algebra `F_n` of the variety generated by an algebra.
    Free(FreeArgs),
    /// Build a new algebra.
    #[command(subcommand)]
    Construct(Construct),
    /// Enumerate algebras of dimension `m` over `GF(q)` up to isomorphism.
    Census(CensusArgs),
    /// Run every theorem-suite check and report PASS/FAIL.
    TheoremSuite {
        /// Include the long (3, 2) census.
        #[arg(long)]
        full_census: bool,
    },
}

#[derive(Args, Debug)]
pub struct FreeArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub rank: usize,
    /// Split `F_n` into summands (for minimal algebras: check each is ≅ A).
    #[arg(long)]
    pub decompose: bool,
    /// Also tabulate `d(1..=N)` and the content components.
    #[arg(long)]
    pub table: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// `C/A ⋉ A` for an abelian ideal `A`, with the section certificate.
    Semidirect {
        #[arg(long)]
        algebra: String,
        /// Ideal basis, vectors separated by `;`, entries by `,` (e.g. "0,1;1,0").
        #[arg(long)]
        ideal: String,
    },
    /// The free product of `A^k` and `A^l` in `var A`.
    Freeproduct {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// The associative envelope generated by multiplication operators.
    Envelope {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value_t = Kind::TwoSided)]
        kind: Kind,
    },
    /// The zero algebra of dimension `m` over `GF(q)`.
    Zero {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Left,
    Right,
    TwoSided,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub q: usize,
    /// Comma-separated property names, or `all`.
    #[arg(long, default_value = "all")]
    pub props: String,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Run censuses that would take a long time.
    #[arg(long)]
    pub force: bool,
    /// Write the canonical tensors of all classes to this CSV file.
    #[arg(long)]
    pub csv: Option<std::path::PathBuf>,
}

/// Parse `args` (including the program name), run, and write the report.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((value, code)) => {
            let text = if cli.human { human(&value, 0) } else { pretty(&value) };
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let code = if e.is_cap_exceeded() { 2 } else { 1 };
            let report = json!({ "error": e.to_string(), "exit_code": code });
            let _ = writeln!(out, "{}", if cli.human { human(&report, 0) } else { pretty(&report) });
            code
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn human(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{pad}{k}:\n{}", human(x, indent + 2)),
                Value::Array(items) if items.iter().any(|i| i.is_object()) => format!(
                    "{pad}{k}:\n{}",
                    items.iter().map(|i| human(i, indent + 2)).collect::<Vec<_>>().join(&format!("\n{pad}  --\n"))
                ),
                _ => format!("{pad}{k}: {}", scalar(x)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => format!("{pad}{}", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// An algebra from a JSON file or `builtin:NAME`.
pub fn load_algebra(spec: &str) -> Result<Algebra> {
    match spec.strip_prefix("builtin:") {
        Some(name) => examples::builtin(name).ok_or_else(|| {
            Error::domain(format!("unknown builtin {name:?}; known: {}", examples::BUILTIN_NAMES.join(", ")))
        }),
        None => Algebra::load(spec),
    }
}

fn parse_vectors(a: &Algebra, s: &str) -> Result<Vec<Vector>> {
    let q = a.field().q();
    s.split(';')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            let entries: Vector = v
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n < q)
                        .map(|n| n as u8)
                        .ok_or_else(|| Error::domain(format!("bad field element {x:?}")))
                })
                .collect::<Result<_>>()?;
            if entries.len() != a.dim() {
                return Err(Error::domain(format!("vector {v:?} does not have {} entries", a.dim())));
            }
            Ok(entries)
        })
        .collect()
}

fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

fn envelope(kind: Kind) -> EnvelopeKind {
    match kind {
        Kind::Left => EnvelopeKind::Left,
        Kind::Right => EnvelopeKind::Right,
        Kind::TwoSided => EnvelopeKind::TwoSided,
    }
}

fn header(command: &str, result: Value) -> Value {
    json!({ "varietylab": env!("CARGO_PKG_VERSION"), "command": command, "result": result })
}

fn execute(cli: &Cli) -> Result<(Value, i32)> {
    Ok(match &cli.command {
        Command::Info { algebra } => (header("info", info(&load_algebra(algebra)?)?), 0),
        Command::Series { algebra } => (header("series", series(&load_algebra(algebra)?)?), 0),
        Command::Identities { algebra, polys } => {
            let a = load_algebra(algebra)?;
            let mut rows = vec![];
            for src in polys {
                let p = NAPoly::parse(a.field(), src)?;
                let cex = poly::find_counterexample(&a, &p)?;
                rows.push(json!({
                    "polynomial": p.to_string(),
                    "identity": cex.is_none(),
                    "counterexample": cex,
                    "quasihomogeneous": poly::is_quasihomogeneous(&p),
                }));
            }
            (header("identities", json!({ "checks": rows })), 0)
        }
        Command::Free(args) => (header("free", free(args)?), 0),
        Command::Construct(c) => (header("construct", construct(c)?), 0),
        Command::Census(args) => (header("census", census_cmd(args)?), 0),
        Command::TheoremSuite { full_census } => {
            let opts = SuiteOptions { full_census: *full_census, seed: cli.seed };
            let outcomes = suite::run_all(&opts);
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            let lines: Vec<String> = outcomes.iter().map(|o| o.line()).collect();
            if cli.human {
                let v = json!({ "checks": lines.join("\n"), "failed": failed });
                (v, (failed > 0) as i32)
            } else {
                (header("theorem-suite", json!({ "checks": outcomes, "failed": failed })), (failed > 0) as i32)
            }
        }
    })
}

fn info(a: &Algebra) -> Result<Value> {
    let f = a.field();
    Ok(json!({
        "q": f.q(),
        "dim": a.dim(),
        "zero_multiplication": a.is_zero_algebra(),
        "commutative": a.is_commutative(),
        "associative": a.is_associative(),
        "simple": a.is_simple()?,
        "minimal": a.is_minimal()?,
        "cyclic": a.is_cyclic()?,
        "nilpotent": a.is_nilpotent(),
        "solvable": a.is_solvable(),
        "aut_order": morphisms::automorphism_group(a)?.order,
        "inherently_semisimple": census::is_inherently_semisimple(a)?,
        "cs": morphisms::is_cs(a)?,
        "cw": morphisms::is_cw(a)?,
    }))
}

fn series(a: &Algebra) -> Result<Value> {
    Ok(json!({
        "class": a.nilpotency_class(),
        "depth": a.depth(),
        "solvable_length": a.solvable_length(),
        "socle_height": a.socle_height()?,
        "supersolvable": a.is_supersolvable()?,
        "power_series": dims(&a.power_series()),
        "depth_series": dims(&a.depth_series()),
        "commutator_series": dims(&a.commutator_series()),
        "upper_annihilator_series": dims(&a.upper_annihilator_series()),
        "socle_series": dims(&a.socle_series()?),
        "chief_factor_dims": a.chief_factor_dims()?,
    }))
}

fn free(args: &FreeArgs) -> Result<Value> {
    let a = load_algebra(&args.algebra)?;
    if args.rank == 0 {
        return Err(Error::domain("rank must be positive"));
    }
    let free = FreeAlgebra::new(&a, args.rank)?;
    let mut v = json!({
        "rank": args.rank,
        "dim": free.dim(),
        "ambient_dim": free.ambient.dim(),
        "dim_square": free.square().dim(),
    });
    if args.decompose {
        let blocks = free.blocks();
        v["summand_dims"] = json!(blocks.iter().map(|b| b.space.dim()).collect::<Vec<_>>());
        if a.is_minimal()? {
            v["minimal_decomposition"] = serde_json::to_value(birkhoff::decompose_free_minimal(&a, args.rank)?)?;
        }
    }
    if let Some(n) = args.table {
        v["table"] = serde_json::to_value(birkhoff::dimension_table(&a, n, true)?)?;
    }
    Ok(v)
}

fn construct(c: &Construct) -> Result<Value> {
    Ok(match c {
        Construct::Semidirect { algebra, ideal } => {
            let a = load_algebra(algebra)?;
            let ideal = a.span(parse_vectors(&a, ideal)?);
            let s = constructions::semidirect_sum(&a, &ideal)?;
            json!({
                "algebra": s.result.to_json(),
                "certificate": s.certificate,
                "certificate_ok": s.certificate.ok(),
                "ideal_image_minimal": s.ideal_image_is_minimal()?,
            })
        }
        Construct::Freeproduct { algebra, k, l } => {
            let a = load_algebra(algebra)?;
            let fp = constructions::free_product_powers(&a, *k, *l)?;
            json!({
                "dim": fp.algebra.dim(),
                "index": fp.index,
                "generated": fp.generated,
                "algebra": fp.algebra.to_json(),
            })
        }
        Construct::Envelope { algebra, kind } => {
            let a = load_algebra(algebra)?;
            let u = constructions::enveloping(&a, envelope(*kind));
            json!({
                "dim": u.dim(),
                "nilpotency_class": u.nilpotency_class(),
                "depth_of_algebra": a.depth(),
                "algebra": u.as_algebra()?.to_json(),
            })
        }
        Construct::Zero { dim, q } => json!({ "algebra": Algebra::zero(Field::new(*q)?, *dim).to_json() }),
    })
}

fn census_cmd(args: &CensusArgs) -> Result<Value> {
    let props = Property::parse_list(&args.props)?;
    let report = census::enumerate_algebras(args.dim, args.q, &props, args.shards, args.force)?;
    if let Some(path) = &args.csv {
        let mut text = String::from("tensor,orbit_size,stabilizer,properties\n");
        for c in &report.classes {
            let t: String = c.tensor.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let p: Vec<&str> = c.properties.iter().map(|p| p.name()).collect();
            text += &format!("{t},{},{},{}\n", c.orbit_size, c.stabilizer, p.join(" "));
        }
        std::fs::write(path, text)?;
    }
    let mut v = serde_json::to_value(&report)?;
    v["fractions"] = serde_json::to_value(census::property_fractions(&report))?;
    v["gl"] = serde_json::to_value(census::gl_order(args.dim, args.q))?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (i32, Value) {
        let mut out = vec![];
        let code = run(std::iter::once("varietylab").chain(args.iter().copied()), &mut out);
        (code, serde_json::from_slice(&out).unwrap())
    }

    #[test]
    fn info_and_series() {
        let (code, v) = run_json(&["info", "builtin:eminvar"]);
        assert_eq!(code, 0);
        let r = &v["result"];
        assert_eq!((r["dim"].clone(), r["simple"].clone(), r["minimal"].clone()), (json!(2), json!(true), json!(true)));
        assert_eq!(r["aut_order"], json!(1));
        let (_, v) = run_json(&["series", "builtin:n2"]);
        let r = &v["result"];
        assert_eq!([&r["class"], &r["depth"], &r["solvable_length"], &r["socle_height"]], [&json!(2); 4]);
    }

    #[test]
    fn free_gf2() {
        let (code, v) = run_json(&["free", "--algebra", "builtin:gf2", "--rank", "3", "--decompose"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["dim"], json!(7));
    }

    #[test]
    fn exit_codes() {
        let (code, _) = run_json(&["info", "/nonexistent/file.json"]);
        assert_eq!(code, 1);
        let (code, v) = run_json(&["free", "--algebra", "builtin:eminvar", "--rank", "9"]);
        assert_eq!(code, 2, "{v}");
        let (code, _) = run_json(&["census", "--dim", "3", "--q", "2"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn identities_and_constructions() {
        let (_, v) = run_json(&["identities", "builtin:evsa", "--poly", "x^2 - x", "--poly", "x1 x2 - x2 x1"]);
        let checks = v["result"]["checks"].as_array().unwrap();
        assert!(checks.iter().all(|c| c["identity"] == json!(true)));
        let (code, v) = run_json(&["construct", "semidirect", "--algebra", "builtin:n2", "--ideal", "0,1"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["certificate_ok"], json!(true));
        let (code, _) = run_json(&["construct", "freeproduct", "--algebra", "builtin:evsa", "--k", "1", "--l", "1"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["census", "--dim", "2", "--q", "2", "--shards", "4"];
        let mut a = vec![];
        let mut b = vec![];
        run(std::iter::once("varietylab").chain(args), &mut a);
        run(std::iter::once("varietylab").chain(args), &mut b);
        assert_eq!(a, b);
    }
}
