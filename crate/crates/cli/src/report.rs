//! Tables, fixed float formatting, and gnuplot scripts.

use serde_json::{json, Value};

/// 17 significant digits, lowercase scientific; `inf` for unbounded values.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(&'static str),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // serde_json has no infinity; the string keeps it visible.
            Cell::Real(v) if !v.is_finite() => json!(fmt_real(*v)),
            Cell::Real(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Object(
                        self.header
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// A gnuplot script template; the data file name is filled in on render.
#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub xlabel: &'static str,
    pub ylabel: &'static str,
    pub logscale: Option<&'static str>,
    /// Vertical dashed line (e.g. the eigenvalue cluster point).
    pub marker_x: Option<f64>,
    /// `plot` clauses with `DATA` standing for the quoted data file.
    pub series: Vec<String>,
}

impl Plot {
    pub fn render(&self, data_file: &str) -> String {
        let quoted = format!("'{}'", data_file.replace('\'', "''"));
        let mut s = String::new();
        s.push_str("set datafile separator ','\n");
        s.push_str(&format!("set title '{}'\n", self.title));
        s.push_str(&format!(
            "set xlabel '{}'\nset ylabel '{}'\n",
            self.xlabel, self.ylabel
        ));
        if let Some(axes) = self.logscale {
            s.push_str(&format!("set logscale {axes}\n"));
        }
        if let Some(x) = self.marker_x {
            s.push_str(&format!(
                "set arrow from {x}, graph 0 to {x}, graph 1 nohead dashtype 2\n"
            ));
            s.push_str(&format!(
                "set label 'cluster point {x}' at {x}, graph 0.95 left offset 1,0\n"
            ));
        }
        let clauses: Vec<String> = self
            .series
            .iter()
            .map(|c| c.replace("DATA", &quoted))
            .collect();
        s.push_str(&format!("plot {}\n", clauses.join(", \\\n     ")));
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    /// Extra JSON-only detail (full reports, fitted matrices).
    pub detail: Value,
    pub plot: Option<Plot>,
    pub failures: Vec<Value>,
}

impl Report {
    pub fn to_json(&self, command: &str) -> String {
        let doc = json!({
            "command": command,
            "rows": self.table.json_rows(),
            "detail": self.detail,
            "pass": self.failures.is_empty(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}
