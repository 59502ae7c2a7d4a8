//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; the page parses it. The plain
//! functions in [`api`] carry the logic so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};
    use succ_lab::classes::{self, PartitionSource};
    use succ_lab::enumeration::{self, EnumConfig};
    use succ_lab::{formulas, maps, Arrangement, Family};

    /// The browser is single-threaded; caps stay at their defaults.
    fn cfg() -> EnumConfig {
        EnumConfig::default().with_workers(1)
    }

    fn family(s: &str) -> Result<Family, String> {
        s.parse().map_err(|e: succ_lab::arrangement::ParseFamilyError| e.to_string())
    }

    /// Count plus up to `limit` members in lexicographic order.
    pub fn explore(n: usize, fam: &str, limit: usize) -> Result<Value, String> {
        let f = family(fam)?;
        let c = cfg();
        let total = enumeration::count(n, f, &c).map_err(|e| e.to_string())?;
        let members: Vec<String> = if n <= c.list_cap {
            enumeration::enumerate(n, f, &c)
                .map_err(|e| e.to_string())?
                .iter()
                .take(limit)
                .map(|w| w.to_string())
                .collect()
        } else {
            Vec::new()
        };
        Ok(json!({ "n": n, "family": f, "count": total.to_string(), "members": members }))
    }

    pub fn partition(n: usize, fam: &str, inverse_image: bool) -> Result<Value, String> {
        let f = family(fam)?;
        let source = if inverse_image {
            PartitionSource::InverseImage(f)
        } else {
            PartitionSource::Family(f)
        };
        let p = classes::partition(n, source, &cfg()).map_err(|e| e.to_string())?;
        Ok(json!({
            "n": n,
            "set": source.to_string(),
            "class_sizes": p.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "equidistributed": p.is_equidistributed(),
        }))
    }

    /// `kind` is `phi`, `phi-inv` or `inverse`.
    pub fn map_word(kind: &str, word: &str) -> Result<Value, String> {
        let w: Arrangement = word.parse().map_err(|e: succ_lab::arrangement::ArrangementError| e.to_string())?;
        let image = match kind {
            "phi" => maps::phi(&w).map_err(|e| e.to_string())?,
            "phi-inv" => maps::phi_inverse(&w).map_err(|e| e.to_string())?,
            "inverse" => w.inverse(),
            other => return Err(format!("unknown map {other:?}")),
        };
        let families: Vec<String> = [Family::SmallD, Family::BigD, Family::Dn1, Family::Derangement]
            .into_iter()
            .filter(|f| image.in_family(*f))
            .map(|f| f.to_string())
            .collect();
        Ok(json!({
            "input": w.to_string(),
            "output": image.to_string(),
            "fixed_points": image.fixed_point_count(),
            "families": families,
        }))
    }

    pub fn table(n_max: u64) -> Value {
        let rows: Vec<Value> = (0..=n_max)
            .map(|n| {
                json!({
                    "n": n,
                    "der": formulas::derangement(n).to_string(),
                    "d_big": formulas::d_big(n).to_string(),
                    "d_small": formulas::d_small(n).ok().map(|d| d.to_string()),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

fn to_js(r: Result<serde_json::Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn explore(n: usize, family: &str, limit: usize) -> Result<String, JsValue> {
    to_js(api::explore(n, family, limit))
}

#[wasm_bindgen]
pub fn partition(n: usize, family: &str, inverse_image: bool) -> Result<String, JsValue> {
    to_js(api::partition(n, family, inverse_image))
}

#[wasm_bindgen]
pub fn map_word(kind: &str, word: &str) -> Result<String, JsValue> {
    to_js(api::map_word(kind, word))
}

#[wasm_bindgen]
pub fn table(n_max: u32) -> String {
    api::table(u64::from(n_max)).to_string()
}
