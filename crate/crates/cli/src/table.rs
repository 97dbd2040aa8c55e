use serde_json::{Map, Value};
use zclass::linalg::Mat2;
use zclass::C;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Empty,
}

/// Rows under a fixed header, rendered as CSV or as a JSON array of objects.
#[derive(Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self.header.iter().cloned().zip(r.iter().map(to_json)).collect();
                    Value::Object(obj)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("plain values serialize");
            s.push('\n');
            s
        } else {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&self.header).expect("in-memory write");
            for r in &self.rows {
                w.write_record(r.iter().map(to_text)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
        }
    }
}

fn to_text(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format!("{v:.16e}"),
        Cell::Int(v) => v.to_string(),
        Cell::Empty => String::new(),
    }
}

fn to_json(c: &Cell) -> Value {
    match c {
        Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
        Cell::Int(v) => Value::from(*v),
        Cell::Empty => Value::Null,
    }
}

pub fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `{p}_re`, `{p}_im`.
pub fn complex_cols(p: &str) -> Vec<String> {
    vec![format!("{p}_re"), format!("{p}_im")]
}

/// `{p}11_re` … `{p}22_im`, row-major.
pub fn matrix_cols(p: &str) -> Vec<String> {
    ["11", "12", "21", "22"].iter().flat_map(|ij| complex_cols(&format!("{p}{ij}"))).collect()
}

pub fn complex_cells(z: C<f64>) -> Vec<Cell> {
    vec![Cell::Num(z.re), Cell::Num(z.im)]
}

pub fn matrix_cells(m: Mat2<f64>) -> Vec<Cell> {
    m.m.iter().flatten().flat_map(|&z| complex_cells(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(cols(&["x", "n", "r"]));
        t.push(vec![Cell::Num(0.1), Cell::Int(3), Cell::Empty]);
        assert_eq!(t.render(false), "x,n,r\n1.0000000000000001e-1,3,\n");
        let v: Value = serde_json::from_str(&t.render(true)).unwrap();
        assert_eq!(v[0]["n"], 3);
        assert!(v[0]["r"].is_null());
        assert_eq!(matrix_cols("w")[7], "w22_im");
    }
}
