//! `diffset` command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 success, 1 a check came out false, 2 error.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use diffset::boolfn::{self, TruthTable};
use diffset::carlet::{self, CarletSpec};
use diffset::charsum::{self, SpectrumTable};
use diffset::groebner::BuchbergerConfig;
use diffset::group::{self, DSParams, GroupSpec, SubsetMask};
use diffset::hilbert::{self, HilbertOptions};
use diffset::repro;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "diffset", version, about = "Difference sets, bent functions and Carlet's construction")]
struct Cli {
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether a subset is a (v,k,λ)-difference set.
    CheckDs {
        /// Moduli such as `2,2,2` or a JSON file `{"moduli":[...]}`.
        #[arg(long)]
        group: String,
        /// Subset as hex, bit i = element i.
        #[arg(long)]
        subset: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Walsh-Hadamard spectrum of a truth table.
    Wht {
        #[arg(long)]
        t: usize,
        /// Truth table as hex, bit x = f(x).
        #[arg(long)]
        tt: String,
    },
    /// Carlet's f_(π,L) construction.
    Carlet {
        #[command(subcommand)]
        cmd: CarletCmd,
    },
    /// Decide from Δ(D1, D2) whether D2 is a difference set, given D1 is.
    Exchange {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d1: String,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        lambda1: u64,
        #[arg(long)]
        d2: String,
        #[arg(long)]
        k2: u64,
        #[arg(long)]
        lambda2: u64,
    },
    /// Count difference sets as the dimension of a quotient ring.
    HilbertCount {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda: u64,
        /// Include the reduced Gröbner basis and its homogenization.
        #[arg(long)]
        emit_gb: bool,
        /// Affine and homogenized Hilbert functions up to degree s.
        #[arg(long, value_name = "S")]
        hf: Option<u32>,
        #[arg(long, default_value_t = 1_000_000)]
        max_reductions: u64,
        #[arg(long)]
        force_cyclotomic: bool,
    },
    /// Count bent functions in t variables.
    CountBent {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = BentMethod::Groebner)]
        method: BentMethod,
        #[arg(long, default_value_t = 1_000_000)]
        max_reductions: u64,
    },
    /// Exhaustive scan over all k-subsets.
    EnumerateDs {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda: u64,
        /// Also list the sets found.
        #[arg(long)]
        list: bool,
    },
    /// Recompute a canned configuration and compare against quoted values.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(repro::CASES))]
        case: String,
    },
}

#[derive(Subcommand, Debug)]
enum CarletCmd {
    /// Check the C-condition: every π^{-1}(a + L) is flat.
    CheckC {
        /// CarletSpec JSON, inline or as a file path.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = carlet::DEFAULT_C_CAP)]
        cap: usize,
    },
    /// Truth table of f_(π,L).
    Build {
        #[arg(long)]
        spec: String,
    },
    /// Bentness of f_(π,L), with the C-condition and coordinate classifier.
    BentCheck {
        #[arg(long)]
        spec: String,
    },
    /// The non-bent family for (m, r, s).
    Family {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Brute,
    Charsum,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BentMethod {
    Groebner,
    Wht,
    Both,
}

/// What a command produced, before it is wrapped into a report.
struct Outcome {
    inputs: Value,
    result: Value,
    /// `Some` for commands that are checks.
    verdict: Option<bool>,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl From<diffset::Error> for Failure {
    fn from(e: diffset::Error) -> Self {
        Failure { kind: "domain", message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { kind: "input", message: message.into() }
}

fn parse_group(arg: &str) -> Result<GroupSpec, Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| input_error(format!("{arg}: {e}")));
    }
    Ok(GroupSpec::parse_moduli(arg)?)
}

fn parse_carlet(arg: &str) -> Result<CarletSpec, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))?
    };
    Ok(CarletSpec::from_json(&text)?)
}

fn params(v: usize, k: u64, lambda: u64) -> Result<DSParams, Failure> {
    Ok(DSParams::new(v as u64, k, lambda)?)
}

fn group_json(g: &GroupSpec) -> Value {
    json!({ "moduli": g.moduli() })
}

fn run(cmd: &Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::CheckDs { group, subset, k, lambda, method } => {
            let g = parse_group(group)?;
            let d = SubsetMask::from_hex(g.order(), subset)?;
            let p = params(g.order(), *k, *lambda)?;
            let inputs = json!({ "group": group_json(&g), "subset": d.to_hex(), "k": k, "lambda": lambda, "method": format!("{method:?}").to_lowercase() });
            let brute = matches!(method, Method::Brute | Method::Both).then(|| group::is_difference_set_bruteforce(&g, &d, &p));
            let chars = matches!(method, Method::Charsum | Method::Both).then(|| charsum::is_difference_set_charsum(&g, &d, &p));
            if let (Some(a), Some(b)) = (brute, chars) {
                if a != b {
                    return Err(Failure { kind: "disagreement", message: format!("brute force says {a}, character sums say {b}") });
                }
            }
            let verdict = brute.or(chars).unwrap_or(false);
            let mut result = json!({ "brute": brute, "charsum": chars, "is_difference_set": verdict, "params_consistent": p.params_consistent(), "size": d.len() });
            if chars.is_some() {
                result["spectrum"] = SpectrumTable::compute(&g, &d).to_json();
            }
            Ok(Outcome { inputs, result, verdict: Some(verdict) })
        }
        Cmd::Wht { t, tt } => {
            let f = TruthTable::from_hex(*t, tt)?;
            let w = boolfn::walsh(&f);
            let mult: Map<String, Value> =
                boolfn::spectrum_multiplicities(&w).into_iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
            let bent = if t % 2 == 0 { Some(boolfn::is_bent(&f)?) } else { None };
            let result = json!({ "spectrum": w, "multiplicities": mult, "weight": f.weight(), "bent": bent });
            Ok(Outcome { inputs: json!({ "t": t, "tt": f.to_hex() }), result, verdict: None })
        }
        Cmd::Carlet { cmd } => run_carlet(cmd),
        Cmd::Exchange { group, d1, k1, lambda1, d2, k2, lambda2 } => {
            let g = parse_group(group)?;
            let a = SubsetMask::from_hex(g.order(), d1)?;
            let b = SubsetMask::from_hex(g.order(), d2)?;
            let p1 = params(g.order(), *k1, *lambda1)?;
            let p2 = params(g.order(), *k2, *lambda2)?;
            let inputs = json!({ "group": group_json(&g), "d1": a.to_hex(), "k1": k1, "lambda1": lambda1, "d2": b.to_hex(), "k2": k2, "lambda2": lambda2 });
            let report = charsum::exchange_check(&g, &a, &p1, &b, &p2)?;
            let verdict = report.holds;
            let result = serde_json::to_value(&report).map_err(|e| input_error(e.to_string()))?;
            Ok(Outcome { inputs, result, verdict: Some(verdict) })
        }
        Cmd::HilbertCount { group, k, lambda, emit_gb, hf, max_reductions, force_cyclotomic } => {
            let g = parse_group(group)?;
            let p = params(g.order(), *k, *lambda)?;
            let inputs = json!({ "group": group_json(&g), "k": k, "lambda": lambda, "emit_gb": emit_gb, "hf": hf, "max_reductions": max_reductions, "force_cyclotomic": force_cyclotomic });
            let opts = hilbert_options(*max_reductions, *force_cyclotomic);
            let h = hilbert::count_difference_sets_hilbert_with(&g, &p, &opts)?;
            let mut result = json!({
                "count": h.count,
                "generators": h.generators,
                "basis_size": h.basis.len(),
                "field_level": h.basis.field_level(),
                "stats": { "pairs_considered": h.stats.pairs_considered, "zero_reductions": h.stats.zero_reductions, "reductions": h.stats.reductions },
            });
            if *emit_gb {
                result["groebner_basis"] = json!(h.basis.to_text());
                result["homogenized"] = json!(h.basis.homogenized_text()?);
            }
            if let Some(s) = hf {
                let affine: Result<Vec<u64>, _> = (0..=*s).map(|i| h.basis.affine_hf(i)).collect();
                let graded: Result<Vec<u64>, _> = (0..=*s).map(|i| h.basis.homogenized_hf(i)).collect();
                result["affine_hf"] = json!(affine?);
                result["homogenized_hf"] = json!(graded?);
            }
            Ok(Outcome { inputs, result, verdict: None })
        }
        Cmd::CountBent { t, method, max_reductions } => {
            let inputs = json!({ "t": t, "method": format!("{method:?}").to_lowercase(), "max_reductions": max_reductions });
            let groebner = match method {
                BentMethod::Groebner | BentMethod::Both => Some(hilbert::count_bent(*t, &hilbert_options(*max_reductions, false))?),
                BentMethod::Wht => None,
            };
            let wht = match method {
                BentMethod::Wht | BentMethod::Both => Some(boolfn::count_bent_exhaustive(*t)?),
                BentMethod::Groebner => None,
            };
            if let (Some(a), Some(b)) = (groebner, wht) {
                if a != b {
                    return Err(Failure { kind: "disagreement", message: format!("Gröbner count {a}, exhaustive count {b}") });
                }
            }
            let result = json!({ "count": groebner.or(wht), "groebner": groebner, "wht": wht });
            Ok(Outcome { inputs, result, verdict: None })
        }
        Cmd::EnumerateDs { group, k, lambda, list } => {
            let g = parse_group(group)?;
            let p = params(g.order(), *k, *lambda)?;
            let inputs = json!({ "group": group_json(&g), "k": k, "lambda": lambda, "list": list });
            let e = group::enumerate_difference_sets(&g, &p, *list)?;
            let mut result = json!({ "count": e.count, "params_consistent": p.params_consistent() });
            if let Some(sets) = e.sets {
                result["sets"] = json!(sets.iter().map(|s| s.to_hex()).collect::<Vec<_>>());
            }
            Ok(Outcome { inputs, result, verdict: None })
        }
        Cmd::Reproduce { case } => {
            let report = repro::reproduce(case)?;
            let verdict = report.all_ok;
            let result = serde_json::to_value(&report).map_err(|e| input_error(e.to_string()))?;
            Ok(Outcome { inputs: json!({ "case": case }), result, verdict: Some(verdict) })
        }
    }
}

fn run_carlet(cmd: &CarletCmd) -> Result<Outcome, Failure> {
    match cmd {
        CarletCmd::CheckC { spec, cap } => {
            let s = parse_carlet(spec)?;
            let report = carlet::check_c_condition_with_cap(&s, *cap)?;
            let result = report.to_json(s.m());
            Ok(Outcome { inputs: json!({ "spec": s.to_json(), "cap": cap }), result, verdict: Some(report.holds) })
        }
        CarletCmd::Build { spec } => {
            let s = parse_carlet(spec)?;
            let f = carlet::build_f(&s)?;
            let result = json!({ "t": f.arity(), "tt": f.to_hex(), "weight": f.weight() });
            Ok(Outcome { inputs: json!({ "spec": s.to_json() }), result, verdict: None })
        }
        CarletCmd::BentCheck { spec } => {
            let s = parse_carlet(spec)?;
            let f = carlet::build_f(&s)?;
            let bent = boolfn::is_bent(&f)?;
            let c = if s.m() <= carlet::DEFAULT_C_CAP { Some(carlet::check_c_condition(&s)?.holds) } else { None };
            let case = carlet::classify_coordinate_case(&s);
            let mult: Map<String, Value> = boolfn::spectrum_multiplicities(&boolfn::walsh(&f))
                .into_iter()
                .map(|(k, n)| (k.to_string(), json!(n)))
                .collect();
            let result = json!({ "bent": bent, "c_condition": c, "coordinate_case": case, "weight": f.weight(), "multiplicities": mult });
            Ok(Outcome { inputs: json!({ "spec": s.to_json() }), result, verdict: Some(bent) })
        }
        CarletCmd::Family { m, r, s } => {
            let fam = carlet::family_theorem52(*m, *r, *s)?;
            let (d, dp) = (boolfn::support(&fam.f_m), boolfn::support(&fam.f));
            let result = json!({
                "spec": fam.spec.to_json(),
                "bent_f": boolfn::is_bent(&fam.f)?,
                "bent_f_m": boolfn::is_bent(&fam.f_m)?,
                "d_minus_d_prime": d.difference(&dp).len(),
                "d_prime_minus_d": dp.difference(&d).len(),
                "distance": boolfn::hamming_distance(&fam.f_m, &fam.f)?,
                "point": carlet::family_point(*m, *r, *s),
                "delta": carlet::delta_family_value(*m, *r, *s)?,
            });
            Ok(Outcome { inputs: json!({ "m": m, "r": r, "s": s }), result, verdict: None })
        }
    }
}

fn hilbert_options(max_reductions: u64, force_cyclotomic: bool) -> HilbertOptions {
    HilbertOptions {
        buchberger: BuchbergerConfig { max_reductions, time_limit: None },
        force_cyclotomic,
        ..HilbertOptions::default()
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::CheckDs { .. } => "check-ds",
        Cmd::Wht { .. } => "wht",
        Cmd::Carlet { cmd } => match cmd {
            CarletCmd::CheckC { .. } => "carlet check-c",
            CarletCmd::Build { .. } => "carlet build",
            CarletCmd::BentCheck { .. } => "carlet bent-check",
            CarletCmd::Family { .. } => "carlet family",
        },
        Cmd::Exchange { .. } => "exchange",
        Cmd::HilbertCount { .. } => "hilbert-count",
        Cmd::CountBent { .. } => "count-bent",
        Cmd::EnumerateDs { .. } => "enumerate-ds",
        Cmd::Reproduce { .. } => "reproduce",
    }
}

fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

fn print_pretty(report: &Value) {
    let line = |k: &str, v: &Value| match v {
        Value::String(s) => println!("{k:<20} {s}"),
        other => println!("{k:<20} {other}"),
    };
    for key in ["command", "verdict", "timing_ms"] {
        if let Some(v) = report.get(key) {
            line(key, v);
        }
    }
    for section in ["result", "error"] {
        if let Some(Value::Object(map)) = report.get(section) {
            for (k, v) in map {
                line(k, v);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.cmd);
    let start = Instant::now();
    let outcome = run(&cli.cmd);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "diffset",
        "version": env!("CARGO_PKG_VERSION"),
        "command": name,
    });
    let code = match outcome {
        Ok(o) => {
            report["inputs"] = o.inputs.clone();
            report["input_digest"] = json!(digest(&json!({ "command": name, "inputs": o.inputs })));
            report["verdict"] = json!(o.verdict);
            report["result"] = o.result;
            if o.verdict == Some(false) { 1 } else { 0 }
        }
        Err(f) => {
            report["error"] = json!({ "kind": f.kind, "message": f.message });
            2
        }
    };
    report["timing_ms"] = json!(timing_ms);

    if cli.pretty {
        print_pretty(&report);
    } else {
        println!("{report}");
    }
    ExitCode::from(code)
}
