//! Deterministic CSV and JSON emission.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRECISION: usize = 12;
pub const PRECISION_ENV: &str = "CQE_PRECISION";
/// Magnitudes below this print as zero so round-off noise does not leak into golden output.
pub const ZERO_SNAP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Reads the significant-digit count from `CQE_PRECISION`, defaulting to 12.
pub fn precision_from_env() -> Result<usize, String> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=17).contains(&n) => Ok(n),
            _ => Err(format!("{PRECISION_ENV} must be an integer in 1..=17, got `{v}`")),
        },
    }
}

/// Fixed-point rendering with `sig` significant digits. Ties round to even on
/// the exact binary value.
pub fn format_number(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x.abs() < ZERO_SNAP { 0.0 } else { x };
    if x == 0.0 {
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = |e: i32| (sig as i32 - 1 - e).max(0) as usize;
    let s = format!("{:.*}", decimals(exp), x);
    // rounding can carry into a new leading digit (9.99.. -> 10.0..)
    let rounded: f64 = s.parse().expect("formatted float parses");
    if rounded.abs() >= 10f64.powi(exp + 1) {
        format!("{:.*}", decimals(exp + 1), x)
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Text(n.to_string())
    }
}

impl Cell {
    fn csv(&self, sig: usize) -> String {
        match self {
            Cell::Num(x) => format_number(*x, sig),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, sig: usize) -> Value {
        match self {
            Cell::Num(x) => format_number(*x, sig)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A table with leading key/value metadata.
#[derive(Debug, Clone)]
pub struct Emission {
    pub command: &'static str,
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Emission {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Cell>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Metadata as `# key=value` lines, then the header, then the rows.
    pub fn to_csv(&self, sig: usize) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={}", v.csv(sig));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv(sig)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, sig: usize) -> String {
        let mut top = Map::new();
        top.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        top.insert("command".into(), Value::from(self.command));
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), v.json(sig))).collect();
        top.insert("meta".into(), Value::Object(meta));
        top.insert(
            "columns".into(),
            Value::Array(self.columns.iter().map(|c| Value::from(*c)).collect()),
        );
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json(sig)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format, sig: usize) -> String {
        match format {
            Format::Csv => self.to_csv(sig),
            Format::Json => self.to_json(sig),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.765_454_123_456_789, 12), "0.765454123457");
        assert_eq!(format_number(1.531_004_406_410_719, 12), "1.53100440641");
        assert_eq!(format_number(1.0, 12), "1.00000000000");
        assert_eq!(format_number(-2.5, 3), "-2.50");
        assert_eq!(format_number(123_456.0, 3), "123456");
        assert_eq!(format_number(0.0, 12), "0.00000000000");
        assert_eq!(format_number(-0.0, 4), "0.000");
        assert_eq!(format_number(3e-17, 12), "0.00000000000");
        assert_eq!(format_number(0.001_234_5, 3), "0.00123");
    }

    #[test]
    fn carry_into_new_digit() {
        assert_eq!(format_number(9.999_999_999_999_9, 12), "10.0000000000");
        assert_eq!(format_number(0.099_999_999_999_999, 12), "0.100000000000");
    }

    #[test]
    fn ties_round_to_even() {
        assert_eq!(format_number(0.125, 2), "0.12");
        assert_eq!(format_number(0.375, 2), "0.38");
    }

    #[test]
    fn csv_and_json_layout() {
        let mut e = Emission::new("demo", vec!["x", "y"]);
        e.meta("p", 0.2);
        e.row(vec![Cell::from(1.0), Cell::from("a")]);
        assert_eq!(e.to_csv(3), "# p=0.200\nx,y\n1.00,a\n");
        let v: Value = serde_json::from_str(&e.to_json(3)).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"][0]["x"], 1.0);
        assert_eq!(v["meta"]["p"], 0.2);
    }
}
