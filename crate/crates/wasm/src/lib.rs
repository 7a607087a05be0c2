//! Browser bindings: spectrum chains, phase-shift curves and reconstructed
//! potentials as JSON tables (`{title, metadata, columns, rows}`).
//!
//! Parameters are passed as a JSON object of numbers, e.g. `{"mu": -10.5}`;
//! an empty string means the caption defaults.

use hahn_core::figures::{self, Params, Table};
use wasm_bindgen::prelude::*;

fn parse(params: &str) -> Result<Params, String> {
    if params.trim().is_empty() {
        return Ok(Params::new());
    }
    serde_json::from_str(params).map_err(|e| format!("parameters: {e}"))
}

fn render(table: hahn_core::Result<Table>) -> Result<String, String> {
    let table = table.map_err(|e| e.to_string())?;
    serde_json::to_string(&table).map_err(|e| e.to_string())
}

/// Spectrum chains of figure 1, 2 or 3.
pub fn spectrum_chains_json(figure: u32, params: &str) -> Result<String, String> {
    if !(1..=3).contains(&figure) {
        return Err(format!("spectrum figures are 1-3, got {figure}"));
    }
    render(figures::figure(figure, &parse(params)?))
}

/// Phase shift against energy for example 1, 2 or 3.
pub fn phase_curve_json(example: u32, params: &str) -> Result<String, String> {
    render(figures::phase(example, &parse(params)?))
}

/// Reconstructed and total potential of figure 4, 5, 6 or 7.
pub fn potential_curves_json(figure: u32, params: &str) -> Result<String, String> {
    if !(4..=7).contains(&figure) {
        return Err(format!("potential figures are 4-7, got {figure}"));
    }
    render(figures::figure(figure, &parse(params)?))
}

#[wasm_bindgen]
pub fn spectrum_chains(figure: u32, params: &str) -> Result<String, JsValue> {
    spectrum_chains_json(figure, params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn phase_curve(example: u32, params: &str) -> Result<String, JsValue> {
    phase_curve_json(example, params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn potential_curves(figure: u32, params: &str) -> Result<String, JsValue> {
    potential_curves_json(figure, params).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn spectrum_defaults() {
        let v: Value = serde_json::from_str(&spectrum_chains_json(1, "").unwrap()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 60);
        assert_eq!(v["rows"][0][2], -92.625);
    }

    #[test]
    fn phase_with_overrides() {
        let v: Value =
            serde_json::from_str(&phase_curve_json(1, r#"{"steps": 10, "E_max": 2}"#).unwrap())
                .unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 11);
        assert_eq!(v["columns"][1], "delta");
    }

    #[test]
    fn potential_figure_seven() {
        let v: Value =
            serde_json::from_str(&potential_curves_json(7, r#"{"points": 50}"#).unwrap()).unwrap();
        assert_eq!(v["columns"].as_array().unwrap().len(), 4);
        assert_eq!(v["rows"].as_array().unwrap().len(), 50);
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(spectrum_chains_json(4, "").is_err());
        assert!(potential_curves_json(2, "").is_err());
        assert!(phase_curve_json(1, "{not json").is_err());
        assert!(phase_curve_json(1, r#"{"steps": 0}"#)
            .unwrap_err()
            .contains("steps"));
    }
}
