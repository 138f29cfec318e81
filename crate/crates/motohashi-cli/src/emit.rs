//! Deterministic CSV/JSON emission. Floats in CSV carry 17 significant
//! digits (lossless for binary64); JSON numbers go through serde_json's
//! shortest-round-trip formatting, which is also lossless.

use motohashi_core::Complex64;
use serde::Serialize;

/// 17-significant-digit decimal form (1 leading + 16 after the point).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Complex number as a serializable {re, im} pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

/// A tabular artifact: header plus stringly rows, rendered as CSV or as a
/// JSON array of objects keyed by the header.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let items: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut map = serde_json::Map::new();
                for (key, val) in self.header.iter().zip(row) {
                    map.insert((*key).to_string(), serde_json::Value::String(val.clone()));
                }
                serde_json::Value::Object(map)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&items).expect("table serialization");
        s.push('\n');
        s
    }
}

/// Pretty JSON with a trailing newline for structured outputs.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json serialization");
    s.push('\n');
    s
}
