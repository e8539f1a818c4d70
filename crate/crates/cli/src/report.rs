//! CSV tables: header row, `.` decimal, 17 significant digits, `inf` for
//! unbounded values and free-form footer rows starting with `#`.

use std::io::Write;

use crate::error::CliError;

/// Formats a real with 17 significant digits.
pub fn real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footer: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// `#measure,<name>,<value>`; a failed measure leaves the value empty and
    /// carries the error message.
    pub fn measure(&mut self, name: &str, value: Result<f64, String>) {
        let mut row = vec!["#measure".to_string(), name.to_string()];
        match value {
            Ok(v) => row.push(real(v)),
            Err(e) => row.extend([String::new(), e]),
        }
        self.footer.push(row);
    }

    /// `#check,<name>,<fields…>`.
    pub fn check(&mut self, name: &str, fields: Vec<String>) {
        let mut row = vec!["#check".to_string(), name.to_string()];
        row.extend(fields);
        self.footer.push(row);
    }

    pub fn write(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record(&self.header)?;
        for r in self.rows.iter().chain(&self.footer) {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_string_lossy(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}
