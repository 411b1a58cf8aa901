//! Row-by-row writers for the three output formats.
//!
//! csv numbers carry 17 significant digits, table numbers 6; json numbers use
//! the shortest representation that round-trips (non-finite values become
//! `null`).

use std::io::{self, Write};

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Num(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn table(&self) -> String {
        match self {
            Cell::Num(v) => sig6(*v),
            other => other.csv(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

/// Six significant digits, fixed-point for moderate magnitudes.
fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..6).contains(&e) {
        format!("{:.*}", (5 - e).max(0) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

const TABLE_MIN_WIDTH: usize = 13;

enum Sink {
    Csv(Box<csv::Writer<Box<dyn Write>>>),
    Plain(Box<dyn Write>),
}

struct Trailer {
    rows: Vec<Vec<Cell>>,
    headers: Vec<String>,
    scalars: Vec<(&'static str, f64)>,
}

pub struct Emitter {
    format: Format,
    sink: Sink,
    headers: Vec<String>,
    widths: Vec<usize>,
    rows: usize,
    trailer: Option<Trailer>,
}

fn json_object(headers: &[String], row: &[Cell]) -> String {
    let fields: Vec<String> = headers
        .iter()
        .zip(row)
        .map(|(h, c)| format!("{}: {}", Value::from(h.as_str()), c.json()))
        .collect();
    format!("{{{}}}", fields.join(", "))
}

impl Emitter {
    pub fn new(format: Format, out: Box<dyn Write>, headers: &[&str]) -> io::Result<Self> {
        let headers: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
        let widths = headers.iter().map(|h| h.len().max(TABLE_MIN_WIDTH)).collect();
        let sink = match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                w.write_record(&headers)?;
                Sink::Csv(Box::new(w))
            }
            _ => Sink::Plain(out),
        };
        let mut e = Emitter {
            format,
            sink,
            headers,
            widths,
            rows: 0,
            trailer: None,
        };
        if format == Format::Table {
            let line: Vec<String> = e.headers.iter().map(|h| h.to_string()).collect();
            e.table_line(&line, &vec![false; line.len()])?;
        }
        Ok(e)
    }

    /// Extra content emitted after the rows in json mode only: a list of
    /// objects under `reports` and named scalars.
    pub fn set_trailer(&mut self, rows: Vec<Vec<Cell>>, headers: &[&str], scalars: Vec<(&'static str, f64)>) {
        self.trailer = Some(Trailer {
            rows,
            headers: headers.iter().map(|h| h.to_string()).collect(),
            scalars,
        });
    }

    fn plain(&mut self) -> &mut Box<dyn Write> {
        match &mut self.sink {
            Sink::Plain(w) => w,
            Sink::Csv(_) => unreachable!("plain writer requested in csv mode"),
        }
    }

    fn table_line(&mut self, cells: &[String], right: &[bool]) -> io::Result<()> {
        let last = cells.len().saturating_sub(1);
        let mut line = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let w = self.widths[i];
            if i == last && !right[i] {
                line.push_str(c);
            } else if right[i] {
                line.push_str(&format!("{c:>w$}"));
            } else {
                line.push_str(&format!("{c:<w$}"));
            }
        }
        writeln!(self.plain(), "{}", line.trim_end())
    }

    pub fn row(&mut self, row: &[Cell]) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                let rec: Vec<String> = row.iter().map(Cell::csv).collect();
                if let Sink::Csv(w) = &mut self.sink {
                    w.write_record(&rec)?;
                }
            }
            Format::Table => {
                let cells: Vec<String> = row.iter().map(Cell::table).collect();
                let right: Vec<bool> = row.iter().map(|c| matches!(c, Cell::Num(_) | Cell::Int(_))).collect();
                self.table_line(&cells, &right)?;
            }
            Format::Json => {
                let obj = json_object(&self.headers, row);
                let lead = match (self.rows, self.trailer.is_some()) {
                    (0, true) => "{\"rows\": [\n  ",
                    (0, false) => "[\n  ",
                    _ => ",\n  ",
                };
                write!(self.plain(), "{lead}{obj}")?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        match &mut self.sink {
            Sink::Csv(w) => w.flush(),
            Sink::Plain(w) => w.flush(),
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        if self.format == Format::Json {
            let open = match (self.rows, self.trailer.is_some()) {
                (0, true) => "{\"rows\": [",
                (0, false) => "[",
                _ => "\n",
            };
            let mut tail = format!("{open}]");
            if let Some(t) = self.trailer.take() {
                let reports: Vec<String> = t.rows.iter().map(|r| json_object(&t.headers, r)).collect();
                tail.push_str(&format!(",\n \"reports\": [\n  {}\n ]", reports.join(",\n  ")));
                for (k, v) in &t.scalars {
                    tail.push_str(&format!(",\n \"{k}\": {}", Cell::Num(*v).json()));
                }
                tail.push('}');
            }
            writeln!(self.plain(), "{tail}")?;
        }
        self.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1.813_799_364_234_217_8), "1.81380");
        assert_eq!(sig6(0.5), "0.500000");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(1e-9), "1.00000e-9");
        assert_eq!(sig6(0.0), "0");
    }

    #[test]
    fn csv_numbers_round_trip() {
        for v in [0.1, std::f64::consts::PI, 1e-300, 6.211e-26, -2.5] {
            let s = Cell::Num(v).csv();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }
}
