use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Structured witness and report data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Datum {
    Bool(bool),
    Int(i128),
    Text(String),
    List(Vec<Datum>),
    Map(BTreeMap<String, Datum>),
}

impl Datum {
    pub fn ints<I: IntoIterator<Item = T>, T: Into<i128>>(xs: I) -> Datum {
        Datum::List(xs.into_iter().map(|x| Datum::Int(x.into())).collect())
    }

    pub fn table<R, I, T>(rows: R) -> Datum
    where
        R: IntoIterator<Item = I>,
        I: IntoIterator<Item = T>,
        T: Into<i128>,
    {
        Datum::List(rows.into_iter().map(Datum::ints).collect())
    }

    pub fn map<K: Into<String>>(entries: impl IntoIterator<Item = (K, Datum)>) -> Datum {
        Datum::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl From<usize> for Datum {
    fn from(v: usize) -> Self {
        Datum::Int(v as i128)
    }
}
impl From<i64> for Datum {
    fn from(v: i64) -> Self {
        Datum::Int(v as i128)
    }
}
impl From<bool> for Datum {
    fn from(v: bool) -> Self {
        Datum::Bool(v)
    }
}
impl From<&str> for Datum {
    fn from(v: &str) -> Self {
        Datum::Text(v.into())
    }
}
impl From<String> for Datum {
    fn from(v: String) -> Self {
        Datum::Text(v)
    }
}

/// Outcome of a bounded-window check. A failing certificate always carries
/// a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub check: String,
    pub window: (i64, i64),
    pass: bool,
    pub data: BTreeMap<String, Datum>,
    witness: Option<Datum>,
}

impl Certificate {
    pub fn pass(check: &str, window: (i64, i64)) -> Self {
        Certificate { check: check.into(), window, pass: true, data: BTreeMap::new(), witness: None }
    }

    pub fn fail(check: &str, window: (i64, i64), witness: Datum) -> Self {
        Certificate { check: check.into(), window, pass: false, data: BTreeMap::new(), witness: Some(witness) }
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn witness(&self) -> Option<&Datum> {
        self.witness.as_ref()
    }

    /// Turns a passing certificate into a failing one; the first witness wins.
    pub fn reject(&mut self, witness: Datum) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Datum>) -> Self {
        self.data.insert(key.into(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Datum>) {
        self.data.insert(key.into(), value.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_keeps_first_witness() {
        let mut c = Certificate::pass("x", (0, 1));
        assert!(c.witness().is_none());
        c.reject("first".into());
        c.reject("second".into());
        assert!(!c.passed());
        assert_eq!(c.witness(), Some(&Datum::from("first")));
    }
}
