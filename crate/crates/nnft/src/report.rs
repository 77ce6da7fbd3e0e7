//! One payload, three renderings: aligned text, CSV and JSON.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Payload type, written as the `schema` field of JSON output.
    pub schema: &'static str,
    /// JSON body; `schema` is added on rendering.
    pub body: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines shown after the text table.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(schema: &'static str, columns: Vec<&'static str>) -> Self {
        Self { schema, body: Map::new(), columns, rows: Vec::new(), notes: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.body.insert(key.to_string(), value.into());
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.text(),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(),
        }
    }

    pub fn json_value(&self) -> Value {
        let mut m = self.body.clone();
        m.insert("schema".into(), Value::String(self.schema.into()));
        Value::Object(m)
    }

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json_value()).expect("values serialize");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &self.rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &mut dyn Iterator<Item = &str>| {
            let padded: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let mut s = padded.join("  ").trim_end().to_string();
            s.push('\n');
            s
        };
        let mut out = String::new();
        if !self.columns.is_empty() {
            out += &line(&mut self.columns.iter().copied());
            for r in &self.rows {
                out += &line(&mut r.iter().map(String::as_str));
            }
        }
        for n in &self.notes {
            out += n;
            out.push('\n');
        }
        out
    }
}

/// Six significant digits in scientific notation, e.g. `3.37323e-4`.
pub fn sci(x: f64) -> String {
    format!("{x:.5e}")
}

/// [`sci`] as a JSON number; non-finite values become `null`.
pub fn sci_value(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(sci(x).parse::<Number>().expect("finite scientific literal"))
    } else {
        Value::Null
    }
}

/// An arbitrarily long decimal integer as a JSON number.
pub fn big_value(decimal: &str) -> Value {
    Value::Number(decimal.parse::<Number>().expect("decimal digits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("sample", vec!["name", "value"]);
        r.set("value", sci_value(3.3732e-4));
        r.row(vec!["a".into(), sci(3.3732e-4)]).row(vec!["longer, name".into(), "1".into()]);
        r.note("done");
        r
    }

    #[test]
    fn scientific_format() {
        assert_eq!(sci(3.3732e-4), "3.37320e-4");
        assert_eq!(sci(1.0), "1.00000e0");
        assert_eq!(sci_value(f64::INFINITY), Value::Null);
        assert_eq!(serde_json::to_string(&sci_value(2.5e-12)).unwrap(), "2.50000e-12");
        assert_eq!(serde_json::to_string(&big_value("16785409000000000000001")).unwrap(), "16785409000000000000001");
    }

    #[test]
    fn renderings() {
        let r = sample();
        assert_eq!(r.render(OutputFormat::Text), "name          value\na             3.37320e-4\nlonger, name  1\ndone\n");
        assert_eq!(r.render(OutputFormat::Csv), "name,value\na,3.37320e-4\n\"longer, name\",1\n");
        let v: Value = serde_json::from_str(&r.render(OutputFormat::Json)).unwrap();
        assert_eq!(v["schema"], "sample");
        assert_eq!(v["value"].as_f64(), Some(3.3732e-4));
    }
}
