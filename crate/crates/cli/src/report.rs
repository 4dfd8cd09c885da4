//! JSON and CSV rendering. Keys come out sorted (serde_json's default map is
//! ordered) and counts are decimal strings, so output is byte-stable.

use std::io::{self, Write};

use comppat::{OccurrenceTable, PartSet, PatternId};
use serde_json::{json, Map, Value};

pub struct Envelope {
    fields: Map<String, Value>,
}

impl Envelope {
    pub fn new(command: &str, pattern: PatternId) -> Self {
        let mut fields = Map::new();
        fields.insert("tool".into(), json!("comppat"));
        fields.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        fields.insert("command".into(), json!(command));
        fields.insert("invocation".into(), json!(super::command_echo()));
        fields.insert("pattern".into(), json!(pattern.name()));
        Self { fields }
    }

    /// Echoes the set as given and as materialized up to `order`.
    pub fn with_set(mut self, set: &PartSet, order: u32) -> Self {
        self.fields.insert("set".into(), json!(set.to_string()));
        self.fields.insert("materialized_set".into(), json!(set.materialize(order)));
        self.fields.insert("order".into(), json!(order));
        self
    }

    pub fn with_words(mut self, k: u32, order: u32) -> Self {
        self.fields.insert("k".into(), json!(k));
        self.fields.insert("order".into(), json!(order));
        self
    }

    pub fn write<'a>(
        mut self,
        out: &mut impl Write,
        payload: impl IntoIterator<Item = (&'a str, Value)>,
    ) -> io::Result<()> {
        for (k, v) in payload {
            self.fields.insert(k.into(), v);
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(self.fields))?;
        writeln!(out)
    }
}

/// Rows of an occurrence table in `(n, m, r)` order.
pub struct Table {
    words: bool,
    rows: Vec<(u32, u32, u32, String)>,
}

impl Table {
    pub fn compositions(t: &OccurrenceTable) -> Self {
        Self { words: false, rows: rows(t) }
    }

    pub fn words(t: &OccurrenceTable) -> Self {
        Self { words: true, rows: rows(t) }
    }

    pub fn json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|(n, m, r, c)| {
                if self.words {
                    json!({"m": m, "r": r, "count": c})
                } else {
                    json!({"n": n, "m": m, "r": r, "count": c})
                }
            })
            .collect();
        Value::Array(rows)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        if self.words {
            writeln!(out, "m,r,count")?;
            for (_, m, r, c) in &self.rows {
                writeln!(out, "{m},{r},{c}")?;
            }
        } else {
            writeln!(out, "n,m,r,count")?;
            for (n, m, r, c) in &self.rows {
                writeln!(out, "{n},{m},{r},{c}")?;
            }
        }
        Ok(())
    }
}

fn rows(t: &OccurrenceTable) -> Vec<(u32, u32, u32, String)> {
    t.counts.iter().map(|(&(n, m, r), c)| (n, m, r, c.to_string())).collect()
}
