//! Result documents: an ordered list of key/value entries with a text and a
//! JSON rendering.

use serde_json::{json, Map, Value};

pub const FORMAT_TAG: &str = "movingsyz-result/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Val {
    Str(String),
    Int(i128),
    Bool(bool),
    List(Vec<Val>),
    /// One text line per element under the same key; an array in JSON.
    Rows(Vec<Val>),
}

impl From<&str> for Val {
    fn from(s: &str) -> Self {
        Val::Str(s.to_string())
    }
}

impl From<String> for Val {
    fn from(s: String) -> Self {
        Val::Str(s)
    }
}

impl From<bool> for Val {
    fn from(b: bool) -> Self {
        Val::Bool(b)
    }
}

macro_rules! int_val {
    ($($t:ty),*) => {$(
        impl From<$t> for Val {
            fn from(n: $t) -> Self {
                Val::Int(n as i128)
            }
        }
    )*};
}
int_val!(u32, u64, usize, i64);

impl<T: Into<Val>> From<Vec<T>> for Val {
    fn from(v: Vec<T>) -> Self {
        Val::List(v.into_iter().map(Into::into).collect())
    }
}

impl Val {
    pub fn text(&self) -> String {
        match self {
            Val::Str(s) => s.clone(),
            Val::Int(n) => n.to_string(),
            Val::Bool(b) => b.to_string(),
            Val::List(v) | Val::Rows(v) => v.iter().map(Val::text).collect::<Vec<_>>().join("; "),
        }
    }

    fn json(&self) -> Value {
        match self {
            Val::Str(s) => json!(s),
            // i128 is not a JSON number type everywhere; small values only
            Val::Int(n) => i64::try_from(*n)
                .map(Value::from)
                .unwrap_or_else(|_| json!(n.to_string())),
            Val::Bool(b) => json!(b),
            Val::List(v) | Val::Rows(v) => Value::Array(v.iter().map(Val::json).collect()),
        }
    }
}

/// Exit status of a job.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ParseError,
    PreconditionFailed,
    HypothesisFailed,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ParseError => 1,
            Status::PreconditionFailed => 2,
            Status::HypothesisFailed => 3,
            Status::InternalError => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ParseError => "parse-error",
            Status::PreconditionFailed => "precondition-failed",
            Status::HypothesisFailed => "hypothesis-failed",
            Status::InternalError => "internal-error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub command: String,
    pub status: Status,
    pub entries: Vec<(String, Val)>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Document {
            command: command.to_string(),
            status: Status::Ok,
            entries: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, v: impl Into<Val>) -> &mut Self {
        self.entries.push((key.to_string(), v.into()));
        self
    }

    pub fn put_rows<T: Into<Val>>(&mut self, key: &str, rows: Vec<T>) -> &mut Self {
        self.entries
            .push((key.to_string(), Val::Rows(rows.into_iter().map(Into::into).collect())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Val> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// `key: value` lines, entries in insertion order.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "format: {FORMAT_TAG}\ncommand: {}\nstatus: {}\n",
            self.command,
            self.status.name()
        );
        for (k, v) in &self.entries {
            match v {
                Val::Rows(rows) => {
                    for r in rows {
                        out.push_str(&format!("{k}: {}\n", r.text()));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", v.text())),
            }
        }
        out
    }

    /// A JSON object; keys of the entries map are sorted.
    pub fn to_json(&self) -> Value {
        let mut result = Map::new();
        for (k, v) in &self.entries {
            result.insert(k.clone(), v.json());
        }
        json!({
            "format": FORMAT_TAG,
            "command": self.command,
            "status": self.status.name(),
            "exit_code": self.status.exit_code(),
            "result": result,
        })
    }
}
