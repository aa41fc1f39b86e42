use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use pgcone::counting::{exact_sqrt, KCondition};
use pgcone::objects::{
    baer_cone, baer_subgeometry, denniston_arc, hermitian_unital, hyperoval, hyperoval_cone, maximal_arc_cone,
    unital_cone,
};
use pgcone::pg::gaussian_binomial;
use pgcone::{
    c_rs, feasible_k as screen_k, pencil_feasible, recognize_cone, spectrum_with_workers, theorem_instance,
    verify_identities, verify_theorem, Field, Geometry, PointSet, TheoremId, TypeParameters,
};
use serde::Serialize;
use serde_json::json;

use crate::pointfile::{self, Meta, PointSetFile};
use crate::{
    CliError, ConstructArgs, FeasibleArgs, Format, Object, RecognizeArgs, SpectrumArgs, TheoremArgs, VerifyArgs,
};

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn read_point_file(path: &Path) -> Result<(PointSetFile, Geometry, PointSet), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let file = PointSetFile::parse(&text)?;
    let (geometry, set) = file.load()?;
    Ok((file, geometry, set))
}

fn required<T>(value: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("--{flag} is required for {what}")))
}

fn to_u64(x: BigInt) -> u64 {
    u64::try_from(x).expect("sizes fit in u64")
}

fn theta(m: i64, q: u64) -> u64 {
    to_u64(pgcone::theta(m, q))
}

/// `q^(r+1) |B| + theta_r`, the size of a cone with `r`-dimensional vertex.
fn cone_size(q: u64, r: i64, base: u64) -> u64 {
    q.pow((r + 1) as u32) * base + theta(r, q)
}

fn root(q: u64) -> Result<u64, CliError> {
    exact_sqrt(q).ok_or(CliError::Core(pgcone::Error::NonSquareOrder(q)))
}

pub fn construct(args: &ConstructArgs) -> Result<(), CliError> {
    let q = args.q.q();
    let geometry = Geometry::new(Field::new(args.q.p, args.q.h)?, args.n)?;
    let r = args.n as i64 - 3;
    let name = clap::ValueEnum::to_possible_value(&args.object).expect("no skipped variants").get_name().to_string();
    let (set, expected) = match args.object {
        Object::BaerCone => {
            let (r, s) = (required(args.r, "r", &name)?, required(args.s, "s", &name)?);
            let set = baer_cone(&geometry, r, s)?;
            (set, to_u64(c_rs(r, s, q)?))
        }
        Object::UnitalCone => {
            let set = unital_cone(&geometry)?;
            (set, cone_size(q, r, root(q)?.pow(3) + 1))
        }
        Object::HyperovalCone => (hyperoval_cone(&geometry)?, cone_size(q, r, q + 2)),
        Object::MaxarcCone => {
            let d = required(args.d, "d", &name)?;
            (maximal_arc_cone(&geometry, d)?, cone_size(q, r, q * d + d - q))
        }
        Object::BaerSubgeometry => {
            let s = required(args.s, "s", &name)?;
            (baer_subgeometry(&geometry, s)?, theta(s, root(q)?))
        }
        Object::Unital => (hermitian_unital(&geometry)?, root(q)?.pow(3) + 1),
        Object::Hyperoval => (hyperoval(&geometry)?, q + 2),
        Object::Maxarc => {
            let d = required(args.d, "d", &name)?;
            (denniston_arc(&geometry, d)?, q * d + d - q)
        }
    };
    let meta = Meta { object: name, expected_size: expected };
    emit(args.output.as_deref(), &pointfile::render(&geometry, &set, &meta))?;
    if set.len() as u64 != expected {
        return Err(CliError::Mismatch(format!("built {} points, expected {expected}", set.len())));
    }
    eprintln!("{}: {} points", meta.object, set.len());
    Ok(())
}

#[derive(Serialize)]
struct Row {
    size: usize,
    count: u64,
}

pub fn spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let (_, geometry, set) = read_point_file(&args.input)?;
    let n = geometry.dim();
    let q = geometry.order();
    let d = args.dim.unwrap_or(n - 1);
    let measured = spectrum_with_workers(&geometry, &set, d, args.workers)?;
    let expected_total = gaussian_binomial(n as u32 + 1, d as u32 + 1, q);
    let total_ok = u128::from(measured.total()) == expected_total;
    let identities = (d + 1 == n).then(|| verify_identities(&measured, set.len() as u64, n as u32, q));

    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("size,count\n");
            for (m, t) in measured.by_size() {
                s.push_str(&format!("{m},{t}\n"));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Row> = measured.by_size().iter().map(|(&size, &count)| Row { size, count }).collect();
            let value = json!({
                "n": n, "q": q, "d": d, "k": set.len(),
                "rows": rows,
                "total": measured.total(),
                "expected_total": expected_total as u64,
                "identities": identities,
            });
            serde_json::to_string_pretty(&value).expect("plain json") + "\n"
        }
    };
    emit(args.output.as_deref(), &text)?;

    eprintln!("total {} vs {expected_total} subspaces of dimension {d}: {}", measured.total(), ok(total_ok));
    if let Some(id) = identities {
        eprintln!("counting identities: {}", ok(id));
    }
    if !total_ok || identities == Some(false) {
        return Err(CliError::Mismatch("spectrum checks failed".into()));
    }
    Ok(())
}

fn ok(b: bool) -> &'static str {
    if b {
        "OK"
    } else {
        "FAILED"
    }
}

struct Resolved {
    theorem: TheoremId,
    n: u32,
    param: Option<u64>,
}

fn resolve(theorem: &str, n: Option<u32>, t: Option<u64>, d: Option<u64>) -> Result<Resolved, CliError> {
    let theorem: TheoremId = theorem.parse()?;
    let n = match (n, theorem) {
        (Some(n), _) => n,
        (None, TheoremId::Hyperoval3) => 3,
        (None, _) => return Err(CliError::Invalid(format!("--n is required for {theorem}"))),
    };
    let param = match theorem {
        TheoremId::Baer => t,
        TheoremId::MaxArc => d,
        _ => None,
    };
    Ok(Resolved { theorem, n, param })
}

fn resolve_args(args: &TheoremArgs) -> Result<Resolved, CliError> {
    resolve(&args.theorem, args.n, args.t, args.d)
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let r = resolve_args(&args.theorem)?;
    let q = args.theorem.q.q();
    let report = verify_theorem(r.theorem, r.n, q, r.param, args.workers)?;
    match args.format {
        Some(Format::Json) => {
            let value = json!({
                "theorem": r.theorem.name(), "n": r.n, "q": q, "param": r.param,
                "passed": report.passed(), "checks": report.checks,
            });
            emit(None, &(serde_json::to_string_pretty(&value).expect("plain json") + "\n"))?;
        }
        Some(Format::Csv) => {
            let mut s = String::from("check,expected,measured,passed\n");
            for c in &report.checks {
                s.push_str(&format!("\"{}\",\"{}\",\"{}\",{}\n", c.name, c.expected, c.measured, c.passed));
            }
            emit(None, &s)?;
        }
        None => {
            let mut s = format!(
                "{} n={} q={q}{}\n",
                r.theorem,
                r.n,
                r.param.map(|p| format!(" param={p}")).unwrap_or_default()
            );
            for c in &report.checks {
                s.push_str(&format!("  {} {}: {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name, c.measured));
            }
            s.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
            emit(None, &s)?;
        }
    }
    if report.passed() {
        return Ok(());
    }
    for c in report.failures() {
        eprintln!("- {}: expected {}", c.name, c.expected);
        eprintln!("+ {}: measured {}", c.name, c.measured);
    }
    Err(CliError::Mismatch(format!("{} checks failed", report.failures().count())))
}

#[derive(Serialize)]
struct FeasibleRow {
    k: String,
    t: [String; 3],
    pencil: Option<&'static str>,
}

pub fn feasible_k(args: &FeasibleArgs) -> Result<(), CliError> {
    let q = args.q.q();
    let (params, lo, hi, conditions, pencil): (TypeParameters, u64, u64, Vec<KCondition>, Option<(u64, u64)>) =
        match &args.theorem {
            Some(name) => {
                let r = resolve(name, args.n, args.t, args.d)?;
                let instance = theorem_instance(r.theorem, r.n, q, r.param)?;
                let screen = instance.screen();
                (instance.params, screen.lo, screen.hi, screen.conditions, Some(screen.pencil))
            }
            None => {
                let what = "explicit sizes";
                let n = required(args.n, "n", what)?;
                let (a, b, c) =
                    (required(args.a, "a", what)?, required(args.b, "b", what)?, required(args.c, "c", what)?);
                let params = TypeParameters::new(a, b, c, n, q)?;
                (params, c, theta(n as i64, q), Vec::new(), None)
            }
        };
    let (lo, hi) = (args.lo.unwrap_or(lo), args.hi.unwrap_or(hi));
    let survivors = screen_k(&params, lo, hi, &conditions, !args.allow_zero)?;
    eprintln!("type ({}, {}, {}) in PG({},{q}), k in [{lo}, {hi}]", params.a, params.b, params.c, params.n);
    for c in &conditions {
        eprintln!("condition: {c}");
    }
    let rows: Vec<FeasibleRow> = survivors
        .iter()
        .map(|f| FeasibleRow {
            k: f.k.to_string(),
            t: f.t.clone().map(|x| x.to_string()),
            pencil: pencil.map(
                |(x, umin)| {
                    if pencil_feasible(&params, &f.k, x, umin).is_empty() {
                        "killed"
                    } else {
                        "kept"
                    }
                },
            ),
        })
        .collect();
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("k,t_a,t_b,t_c,pencil\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{},{}\n", r.k, r.t[0], r.t[1], r.t[2], r.pencil.unwrap_or("")));
            }
            s
        }
        Format::Json => {
            let value = json!({
                "a": params.a.to_string(), "b": params.b.to_string(), "c": params.c.to_string(),
                "n": params.n, "q": q, "lo": lo, "hi": hi,
                "conditions": conditions.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "rows": rows,
            });
            serde_json::to_string_pretty(&value).expect("plain json") + "\n"
        }
    };
    emit(None, &text)
}

pub fn recognize(args: &RecognizeArgs) -> Result<(), CliError> {
    let (_, geometry, set) = read_point_file(&args.input)?;
    let rec = recognize_cone(&geometry, &set);
    let base: Vec<&[u32]> = rec.base.vectors(&geometry).collect();
    let text = match args.format {
        Format::Json => {
            let value = json!({
                "k": set.len(),
                "vertex_dim": rec.vertex.dim(),
                "vertex_basis": rec.vertex.basis(),
                "base_ambient_dim": rec.base_ambient.dim(),
                "base_ambient_basis": rec.base_ambient.basis(),
                "base_size": rec.base.len(),
                "base_points": base,
                "is_cone_over_vertex": rec.is_cone_over_vertex,
            });
            serde_json::to_string_pretty(&value).expect("plain json") + "\n"
        }
        Format::Csv => format!(
            "key,value\nk,{}\nvertex_dim,{}\nbase_ambient_dim,{}\nbase_size,{}\nis_cone_over_vertex,{}\n",
            set.len(),
            rec.vertex.dim(),
            rec.base_ambient.dim(),
            rec.base.len(),
            rec.is_cone_over_vertex
        ),
    };
    emit(None, &text)
}
