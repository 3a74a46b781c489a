//! Versioned grid file.
//!
//! ```text
//! cylharm-grid v1
//! dims <nx> <ny> <nz>
//! h <spacing>
//! L <half-length>
//! lambda <eigenvalue>
//! data
//! ```
//! followed by `nx·ny·nz` little-endian `f64` samples, `x` fastest, then
//! `y`, then `z`. Header numbers use Rust's shortest round-trip formatting.

use std::io::{BufRead, Write};

use super::SpectralError;

pub const GRID_MAGIC: &str = "cylharm-grid v1";

#[derive(Clone, Debug, PartialEq)]
pub struct GridFile {
    pub dims: [usize; 3],
    pub h: f64,
    pub length: f64,
    pub lambda: f64,
    pub values: Vec<f64>,
}

pub fn write_grid<W: Write>(mut w: W, grid: &GridFile) -> std::io::Result<()> {
    let [nx, ny, nz] = grid.dims;
    writeln!(w, "{GRID_MAGIC}")?;
    writeln!(w, "dims {nx} {ny} {nz}")?;
    writeln!(w, "h {:?}", grid.h)?;
    writeln!(w, "L {:?}", grid.length)?;
    writeln!(w, "lambda {:?}", grid.lambda)?;
    writeln!(w, "data")?;
    let mut buf = Vec::with_capacity(grid.values.len() * 8);
    for v in &grid.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)
}

fn fmt_err(msg: impl Into<String>) -> SpectralError {
    SpectralError::Format(msg.into())
}

pub fn read_grid<R: BufRead>(mut r: R) -> Result<GridFile, SpectralError> {
    let mut line = String::new();
    let mut next = |r: &mut R| -> Result<String, SpectralError> {
        line.clear();
        r.read_line(&mut line).map_err(|e| fmt_err(e.to_string()))?;
        Ok(line.trim_end().to_string())
    };
    let magic = next(&mut r)?;
    if magic != GRID_MAGIC {
        return Err(fmt_err(format!("bad header '{magic}'")));
    }
    let mut dims = None;
    let (mut h, mut length, mut lambda) = (None, None, None);
    loop {
        let l = next(&mut r)?;
        if l == "data" {
            break;
        }
        if l.is_empty() {
            return Err(fmt_err("missing data marker"));
        }
        let mut it = l.split_whitespace();
        let key = it.next().unwrap_or_default();
        let vals: Vec<&str> = it.collect();
        let num = |s: &str| s.parse::<f64>().map_err(|e| fmt_err(format!("{key}: {e}")));
        match (key, vals.as_slice()) {
            ("dims", [a, b, c]) => {
                let p = |s: &str| s.parse::<usize>().map_err(|e| fmt_err(format!("dims: {e}")));
                dims = Some([p(a)?, p(b)?, p(c)?]);
            }
            ("h", [v]) => h = Some(num(v)?),
            ("L", [v]) => length = Some(num(v)?),
            ("lambda", [v]) => lambda = Some(num(v)?),
            _ => return Err(fmt_err(format!("unexpected header line '{l}'"))),
        }
    }
    let dims = dims.ok_or_else(|| fmt_err("missing dims"))?;
    let count = dims
        .iter()
        .try_fold(1usize, |a, d| a.checked_mul(*d))
        .ok_or_else(|| fmt_err("dims overflow"))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes).map_err(|e| fmt_err(e.to_string()))?;
    if bytes.len() != count * 8 {
        return Err(fmt_err(format!(
            "expected {} data bytes, found {}",
            count * 8,
            bytes.len()
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    Ok(GridFile {
        dims,
        h: h.ok_or_else(|| fmt_err("missing h"))?,
        length: length.ok_or_else(|| fmt_err("missing L"))?,
        lambda: lambda.ok_or_else(|| fmt_err("missing lambda"))?,
        values,
    })
}
