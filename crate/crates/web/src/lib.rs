//! Browser bindings for the demo page in `www/`. Each export takes plain
//! strings and numbers and returns a JSON string.

use serde_json::{json, Map, Value};
use wasm_bindgen::prelude::*;

use diffset::boolfn::{self, TruthTable};
use diffset::carlet::{self, CarletSpec};
use diffset::charsum;
use diffset::group::{self, DSParams, GroupSpec, SubsetMask};

/// Larger tables make the page sluggish.
pub const MAX_WEB_ARITY: usize = 16;

fn multiplicities(w: &[i64]) -> Value {
    let m: Map<String, Value> =
        boolfn::spectrum_multiplicities(w).into_iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
    Value::Object(m)
}

fn spectrum_json(f: &TruthTable) -> diffset::Result<Value> {
    let w = boolfn::walsh(f);
    let bent = if f.arity().is_multiple_of(2) { Some(boolfn::is_bent(f)?) } else { None };
    Ok(json!({
        "t": f.arity(),
        "weight": f.weight(),
        "spectrum": w,
        "multiplicities": multiplicities(&w),
        "bent": bent,
    }))
}

pub fn wht_json(t: usize, hex: &str) -> Result<Value, String> {
    if t > MAX_WEB_ARITY {
        return Err(format!("t = {t} is above the demo limit {MAX_WEB_ARITY}"));
    }
    let f = TruthTable::from_hex(t, hex).map_err(|e| e.to_string())?;
    spectrum_json(&f).map_err(|e| e.to_string())
}

pub fn carlet_json(spec: &str) -> Result<Value, String> {
    let s = CarletSpec::from_json(spec).map_err(|e| e.to_string())?;
    if 2 * s.m() > MAX_WEB_ARITY {
        return Err(format!("m = {} is above the demo limit {}", s.m(), MAX_WEB_ARITY / 2));
    }
    let run = || -> diffset::Result<Value> {
        let f = carlet::build_f(&s)?;
        let mut out = spectrum_json(&f)?;
        let c = carlet::check_c_condition(&s)?;
        out["tt"] = json!(f.to_hex());
        out["c_condition"] = c.to_json(s.m());
        out["coordinate_case"] = json!(carlet::classify_coordinate_case(&s));
        out["pi"] = json!((0..1u32 << s.m()).map(|x| s.apply_pi(x)).collect::<Vec<_>>());
        Ok(out)
    };
    run().map_err(|e| e.to_string())
}

pub fn check_ds_json(moduli: &str, hex: &str, k: u64, lambda: u64) -> Result<Value, String> {
    let run = || -> diffset::Result<Value> {
        let g = GroupSpec::parse_moduli(moduli)?;
        let d = SubsetMask::from_hex(g.order(), hex)?;
        let p = DSParams::new(g.order() as u64, k, lambda)?;
        let counts = group::difference_counts(&g, &d);
        Ok(json!({
            "v": g.order(),
            "size": d.len(),
            "brute": group::is_difference_set_bruteforce(&g, &d, &p),
            "charsum": charsum::is_difference_set_charsum(&g, &d, &p),
            "params_consistent": p.params_consistent(),
            "difference_counts": counts,
        }))
    };
    run().map_err(|e| e.to_string())
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wht(t: usize, hex: &str) -> Result<String, JsValue> {
    to_js(wht_json(t, hex))
}

#[wasm_bindgen]
pub fn carlet_explore(spec: &str) -> Result<String, JsValue> {
    to_js(carlet_json(spec))
}

#[wasm_bindgen]
pub fn check_ds(moduli: &str, hex: &str, k: u64, lambda: u64) -> Result<String, JsValue> {
    to_js(check_ds_json(moduli, hex, k, lambda))
}
