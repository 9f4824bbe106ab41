//! Binary field dumps (DMF1) and CSV traces.
//!
//! DMF1 layout, little-endian: magic `DMF1`, `u32` rank, `u32` dims[rank],
//! `u32` components (1 or 16), then `f64` pairs (re, im) in row-major order with
//! the component index fastest.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{invalid, Result};

pub const DMF1_MAGIC: &[u8; 4] = b"DMF1";

/// In-memory image of a DMF1 file.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldDump {
    pub dims: Vec<u32>,
    pub components: u32,
    pub data: Vec<Complex64>,
}

impl FieldDump {
    pub fn new(dims: Vec<u32>, components: u32, data: Vec<Complex64>) -> Result<Self> {
        if components != 1 && components != 16 {
            return Err(invalid(format!("DMF1 components must be 1 or 16, got {components}")));
        }
        let points: usize = dims.iter().map(|&d| d as usize).product();
        if points * components as usize != data.len() {
            return Err(invalid("DMF1 payload length does not match dims x components"));
        }
        Ok(Self { dims, components, data })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 4 * self.dims.len() + 16 * self.data.len());
        out.extend_from_slice(DMF1_MAGIC);
        out.extend_from_slice(&(self.dims.len() as u32).to_le_bytes());
        for d in &self.dims {
            out.extend_from_slice(&d.to_le_bytes());
        }
        out.extend_from_slice(&self.components.to_le_bytes());
        for v in &self.data {
            out.extend_from_slice(&v.re.to_le_bytes());
            out.extend_from_slice(&v.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = bytes;
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != DMF1_MAGIC {
            return Err(invalid("not a DMF1 file"));
        }
        let rank = read_u32(&mut r)?;
        let dims = (0..rank).map(|_| read_u32(&mut r)).collect::<Result<Vec<_>>>()?;
        let components = read_u32(&mut r)?;
        let count = dims.iter().map(|&d| d as usize).product::<usize>() * components as usize;
        let mut data = Vec::with_capacity(count);
        for _ in 0..count {
            let re = read_f64(&mut r)?;
            let im = read_f64(&mut r)?;
            data.push(Complex64::new(re, im));
        }
        Self::new(dims, components, data)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(&self.to_bytes())?;
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }
}

fn read_u32(r: &mut &[u8]) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64(r: &mut &[u8]) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

/// Float formatted with 17 significant digits; round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column-oriented CSV trace with a header row.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTrace {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTrace {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Append a numeric row; panics if the width differs from the header.
    pub fn push(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.header.len(), "row width differs from header");
        self.rows.push(values.iter().map(|&v| fmt_f64(v)).collect());
    }

    /// Append a row whose first cell is a label.
    pub fn push_labeled(&mut self, label: &str, values: &[f64]) {
        assert_eq!(values.len() + 1, self.header.len(), "row width differs from header");
        let mut row = vec![label.to_string()];
        row.extend(values.iter().map(|&v| fmt_f64(v)));
        self.rows.push(row);
    }

    pub fn to_csv_string(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}
