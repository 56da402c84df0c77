//! Report documents. JSON output has sorted keys and renders rationals as
//! `"p/q"` strings, so identical runs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ngr_core::zalg::{Certificate, Datum};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub check: String,
    pub window: (i64, i64),
    pub pass: bool,
    pub witness: Option<Value>,
    pub data: Value,
    pub millis: Option<u128>,
}

impl Record {
    pub fn from_certificate(c: &Certificate) -> Self {
        let data = Value::Object(c.data.iter().map(|(k, v)| (k.clone(), datum(v))).collect());
        Record { check: c.check.clone(), window: c.window, pass: c.passed(), witness: c.witness().map(datum), data, millis: None }
    }

    fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check));
        m.insert("window".into(), json!([self.window.0, self.window.1]));
        m.insert("verdict".into(), json!(if self.pass { "pass" } else { "fail" }));
        m.insert("witness".into(), self.witness.clone().unwrap_or(Value::Null));
        m.insert("data".into(), self.data.clone());
        if let Some(t) = self.millis {
            m.insert("millis".into(), json!(t as u64));
        }
        Value::Object(m)
    }
}

pub fn datum(d: &Datum) -> Value {
    match d {
        Datum::Bool(b) => json!(b),
        Datum::Int(v) => i64::try_from(*v).map_or_else(|_| json!(v.to_string()), |x| json!(x)),
        Datum::Text(s) => json!(s),
        Datum::List(xs) => Value::Array(xs.iter().map(datum).collect()),
        Datum::Map(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), datum(v))).collect()),
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub certificates: Vec<Record>,
    pub tables: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool": { "name": "ngr", "version": env!("CARGO_PKG_VERSION") },
            "command": self.command,
            "config": self.config,
            "certificates": self.certificates.iter().map(Record::to_value).collect::<Vec<_>>(),
            "tables": self.tables,
            "verdict": if self.passed() { "pass" } else { "fail" },
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ngr {}", self.command);
        for (k, v) in &self.config {
            let _ = writeln!(s, "  {k} = {}", compact(v));
        }
        for c in &self.certificates {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = write!(s, "{verdict} {} [{}, {}]", c.check, c.window.0, c.window.1);
            if let Some(w) = &c.witness {
                let _ = write!(s, " witness {}", compact(w));
            }
            if let Some(t) = c.millis {
                let _ = write!(s, " ({t} ms)");
            }
            s.push('\n');
        }
        for (name, v) in &self.tables {
            let _ = writeln!(s, "{name}:");
            match v {
                Value::Array(rows) if rows.iter().all(Value::is_array) => {
                    for r in rows {
                        let cells: Vec<String> = r.as_array().unwrap().iter().map(compact).collect();
                        let _ = writeln!(s, "  {}", cells.join(" "));
                    }
                }
                other => {
                    let _ = writeln!(s, "  {}", compact(other));
                }
            }
        }
        let _ = writeln!(s, "verdict: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new("build");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["certificates"], json!([]));
        assert_eq!(v["verdict"], json!("pass"));
    }

    #[test]
    fn keys_are_sorted() {
        let mut r = Report::new("x");
        r.tables.insert("zeta".into(), json!(1));
        r.tables.insert("alpha".into(), json!(2));
        let s = r.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        let top: Vec<&str> = ["certificates", "command", "config", "schema_version", "tables", "tool", "verdict"].to_vec();
        let pos: Vec<usize> = top.iter().map(|k| s.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn failing_certificate_carries_its_witness() {
        let c = Certificate::fail("point_functor", (-4, 4), Datum::from("F(1)=0"));
        let mut r = Report::new("point");
        r.certificates.push(Record::from_certificate(&c));
        assert!(!r.passed());
        let v = r.to_value();
        assert_eq!(v["certificates"][0]["witness"], json!("F(1)=0"));
        assert!(r.to_text().contains("FAIL point_functor [-4, 4] witness F(1)=0"));
    }
}
