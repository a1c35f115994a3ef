//! Surface serialization: CSV records, gnuplot nonuniform matrix, JSON.
//!
//! Numbers are written with 17 significant digits so every f64 survives
//! a text round trip unchanged.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{Surface, SurfaceMetadata};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    /// Header `x,y,p`, then one record per sample with x as the outer loop.
    Csv,
    /// The full [`Surface`] including metadata.
    Json,
    /// First row `nx x_1 … x_nx`, then one row `y_j p(x_1, y_j) … p(x_nx, y_j)`
    /// per y sample.
    Matrix,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            "matrix" => Ok(ExportFormat::Matrix),
            other => Err(Error::Usage(format!(
                "unknown format '{other}' (expected csv, json or matrix)"
            ))),
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_err(context: &str) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        context: context.to_string(),
        source,
    }
}

pub fn export_surface<W: Write>(surface: &Surface, format: ExportFormat, out: &mut W) -> Result<()> {
    surface.check_shape()?;
    match format {
        ExportFormat::Csv => {
            writeln!(out, "x,y,p").map_err(io_err("writing CSV header"))?;
            for (x, row) in surface.xs.iter().zip(&surface.values) {
                for (y, p) in surface.ys.iter().zip(row) {
                    writeln!(out, "{},{},{}", format_f64(*x), format_f64(*y), format_f64(*p))
                        .map_err(io_err("writing CSV record"))?;
                }
            }
        }
        ExportFormat::Matrix => {
            let mut line = surface.nx().to_string();
            for x in &surface.xs {
                line.push(' ');
                line.push_str(&format_f64(*x));
            }
            writeln!(out, "{line}").map_err(io_err("writing matrix header"))?;
            for (j, y) in surface.ys.iter().enumerate() {
                let mut line = format_f64(*y);
                for row in &surface.values {
                    line.push(' ');
                    line.push_str(&format_f64(row[j]));
                }
                writeln!(out, "{line}").map_err(io_err("writing matrix row"))?;
            }
        }
        ExportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, surface)?;
            writeln!(out).map_err(io_err("writing JSON"))?;
        }
    }
    out.flush().map_err(io_err("flushing surface output"))
}

pub fn export_surface_to_vec(surface: &Surface, format: ExportFormat) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    export_surface(surface, format, &mut buf)?;
    Ok(buf)
}

fn parse_num(tok: &str, line: usize) -> Result<f64> {
    tok.trim().parse::<f64>().map_err(|e| Error::Parse {
        line,
        message: format!("'{tok}': {e}"),
    })
}

/// Reads a surface back. CSV and matrix inputs carry no generation metadata;
/// lines starting with `#` are skipped in both.
pub fn import_surface(bytes: &[u8], format: ExportFormat) -> Result<Surface> {
    if format == ExportFormat::Json {
        let s: Surface = serde_json::from_slice(bytes)?;
        s.check_shape()?;
        return Ok(s);
    }
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    let (xs, ys, values) = match format {
        ExportFormat::Csv => import_csv(text)?,
        ExportFormat::Matrix => import_matrix(text)?,
        ExportFormat::Json => unreachable!(),
    };
    let s = Surface::from_parts(xs, ys, values, None);
    Ok(Surface {
        metadata: SurfaceMetadata {
            generation: None,
            ..s.metadata
        },
        ..s
    })
}

type Parts = (Vec<f64>, Vec<f64>, Vec<Vec<f64>>);

fn is_comment(line: &str) -> bool {
    line.starts_with('#')
}

fn import_csv(text: &str) -> Result<Parts> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !is_comment(l));
    match lines.next() {
        Some((_, "x,y,p")) => {}
        other => {
            return Err(Error::Parse {
                line: other.map_or(1, |(i, _)| i + 1),
                message: "expected header 'x,y,p'".into(),
            })
        }
    }
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut values: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 fields, got {}", f.len()),
            });
        }
        let (x, y, p) = (
            parse_num(f[0], line_no)?,
            parse_num(f[1], line_no)?,
            parse_num(f[2], line_no)?,
        );
        if xs.last().is_none_or(|last| last.to_bits() != x.to_bits()) {
            xs.push(x);
            values.push(Vec::new());
        }
        let row = values.last_mut().expect("row pushed above");
        if xs.len() == 1 {
            ys.push(y);
        } else if ys.get(row.len()).map(|v| v.to_bits()) != Some(y.to_bits()) {
            return Err(Error::Parse {
                line: line_no,
                message: "y samples differ between rows".into(),
            });
        }
        row.push(p);
    }
    if values.iter().any(|r| r.len() != ys.len()) {
        return Err(Error::Parse {
            line: 0,
            message: "ragged CSV surface".into(),
        });
    }
    Ok((xs, ys, values))
}

fn import_matrix(text: &str) -> Result<Parts> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !is_comment(l));
    let (header_idx, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty matrix".into(),
    })?;
    let header_line = header_idx + 1;
    let mut head = header.split_whitespace();
    let nx: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: header_line,
            message: "first cell must be the column count".into(),
        })?;
    let xs = head.map(|t| parse_num(t, header_line)).collect::<Result<Vec<_>>>()?;
    if xs.len() != nx {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header declares {nx} columns but lists {}", xs.len()),
        });
    }
    let mut ys = Vec::new();
    let mut values = vec![Vec::new(); nx];
    for (idx, line) in lines {
        let line_no = idx + 1;
        let nums = line
            .split_whitespace()
            .map(|t| parse_num(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() != nx + 1 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} columns, got {}", nx + 1, nums.len()),
            });
        }
        ys.push(nums[0]);
        for (col, v) in values.iter_mut().zip(&nums[1..]) {
            col.push(*v);
        }
    }
    Ok((xs, ys, values))
}

#[cfg(test)]
mod tests {
    use super::super::{generate_surface, GridSpec, ProbabilityKind};
    use super::*;

    fn tiny() -> Surface {
        Surface::from_parts(
            vec![0.0, 1.5],
            vec![-1.0, 1.0],
            vec![vec![0.0, 0.25], vec![0.5, 1.0]],
            None,
        )
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(export_surface_to_vec(&tiny(), ExportFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "x,y,p");
        assert_eq!(
            lines[2],
            "0.0000000000000000e0,1.0000000000000000e0,2.5000000000000000e-1"
        );
    }

    #[test]
    fn matrix_layout() {
        let spec = GridSpec::dimensionless_default(ProbabilityKind::P2, 7, 4);
        let s = generate_surface(&spec, None).unwrap();
        let text = String::from_utf8(export_surface_to_vec(&s, ExportFormat::Matrix).unwrap()).unwrap();
        let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(' ').collect()).collect();
        assert_eq!(rows.len(), 4 + 1);
        assert!(rows.iter().all(|r| r.len() == 7 + 1));
        assert_eq!(rows[0][0], "7");
    }

    #[test]
    fn round_trips_are_byte_identical() {
        let spec = GridSpec::dimensionless_default(ProbabilityKind::P1, 13, 9);
        let s = generate_surface(&spec, None).unwrap();
        for fmt in [ExportFormat::Csv, ExportFormat::Json, ExportFormat::Matrix] {
            let a = export_surface_to_vec(&s, fmt).unwrap();
            let back = import_surface(&a, fmt).unwrap();
            assert_eq!(back.values, s.values);
            assert_eq!(back.metadata.checksum, s.metadata.checksum);
            let b = export_surface_to_vec(&back, fmt).unwrap();
            assert_eq!(a, b, "{fmt:?}");
        }
    }

    #[test]
    fn comment_lines_are_skipped_on_import() {
        let s = tiny();
        for fmt in [ExportFormat::Csv, ExportFormat::Matrix] {
            let mut bytes = b"# toolkit: test\n# kind: p1\n".to_vec();
            bytes.extend(export_surface_to_vec(&s, fmt).unwrap());
            let back = import_surface(&bytes, fmt).unwrap();
            assert_eq!(back.values, s.values);
            assert_eq!(back.metadata.checksum, s.metadata.checksum);
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(import_surface(b"a,b,c\n", ExportFormat::Csv).is_err());
        assert!(import_surface(b"x,y,p\n1,2\n", ExportFormat::Csv).is_err());
        assert!(import_surface(b"2 0 1\n0 1\n", ExportFormat::Matrix).is_err());
        assert!(import_surface(b"{", ExportFormat::Json).is_err());
        let mut bad = tiny();
        bad.values[1].pop();
        assert!(export_surface_to_vec(&bad, ExportFormat::Csv).is_err());
    }

    struct FailingSink;

    impl Write for FailingSink {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("disk full"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn sink_failures_carry_context() {
        let err = export_surface(&tiny(), ExportFormat::Csv, &mut FailingSink).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("CSV") && msg.contains("disk full"), "{msg}");
    }
}
