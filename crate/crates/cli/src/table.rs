//! CSV output with `#`-prefixed comment lines, and the matching reader.

use std::io::{self, BufRead, Write};

use crate::error::CliError;

/// Formats a real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes comment lines and CSV records to an underlying sink.
pub struct TableWriter<W: Write> {
    sink: W,
}

impl<W: Write> TableWriter<W> {
    pub fn new(sink: W) -> Self {
        Self { sink }
    }

    pub fn comment(&mut self, text: &str) -> Result<(), CliError> {
        for line in text.lines() {
            writeln!(self.sink, "# {line}")?;
        }
        Ok(())
    }

    pub fn record<I, S>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(fields)?;
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        self.sink.write_all(&bytes)?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.sink.flush()?;
        Ok(())
    }
}

/// A parsed output file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    /// Comment lines without the leading `# `.
    pub comments: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// All values of a numeric column.
    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.column_index(name)?;
        self.rows.iter().map(|r| r.get(k)?.parse().ok()).collect()
    }

    /// Value of a `key: value` comment line.
    pub fn meta(&self, key: &str) -> Option<&str> {
        let prefix = format!("{key}:");
        self.comments
            .iter()
            .find_map(|c| c.strip_prefix(&prefix).map(str::trim))
    }
}

pub fn read_table<R: BufRead>(reader: R) -> io::Result<Table> {
    let mut table = Table::default();
    let mut body = String::new();
    for line in reader.lines() {
        let line = line?;
        if let Some(c) = line.strip_prefix('#') {
            table
                .comments
                .push(c.strip_prefix(' ').unwrap_or(c).to_string());
        } else if !line.is_empty() {
            body.push_str(&line);
            body.push('\n');
        }
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(body.as_bytes());
    table.headers = rdr.headers()?.iter().map(str::to_string).collect();
    for rec in rdr.records() {
        table.rows.push(rec?.iter().map(str::to_string).collect());
    }
    Ok(table)
}
