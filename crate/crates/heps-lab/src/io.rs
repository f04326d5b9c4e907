//! The `heps-grid v1` text format.
//!
//! Header line:
//! `# heps-grid v1 nx=<int> ny=<int> xmin=<decimal> ymin=<decimal> h=<decimal>`
//! followed by `nx·ny` whitespace-separated values in row-major order, one
//! grid row per line. Decimals use the shortest representation that parses
//! back to the same bits, so write→read→write is byte-identical.

use crate::error::LabError;
use crate::grid::GridFunction;
use std::fmt::Write as _;

pub const GRID_MAGIC: &str = "# heps-grid v1";

pub fn write_grid_string(g: &GridFunction) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{GRID_MAGIC} nx={} ny={} xmin={} ymin={} h={}",
        g.nx(),
        g.ny(),
        g.xmin(),
        g.ymin(),
        g.h()
    );
    for iy in 0..g.ny() {
        let row = &g.values()[iy * g.nx()..(iy + 1) * g.nx()];
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_grid_string(text: &str) -> Result<GridFunction, LabError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    if !header.starts_with(GRID_MAGIC) {
        return Err(parse_err(1, "missing `# heps-grid v1` header"));
    }
    let mut nx = None;
    let mut ny = None;
    let mut xmin = None;
    let mut ymin = None;
    let mut h = None;
    for field in header[GRID_MAGIC.len()..].split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(1, &format!("malformed header field `{field}`")))?;
        match key {
            "nx" => nx = Some(parse_num::<usize>(value, 1, "nx")?),
            "ny" => ny = Some(parse_num::<usize>(value, 1, "ny")?),
            "xmin" => xmin = Some(parse_num::<f64>(value, 1, "xmin")?),
            "ymin" => ymin = Some(parse_num::<f64>(value, 1, "ymin")?),
            "h" => h = Some(parse_num::<f64>(value, 1, "h")?),
            other => return Err(parse_err(1, &format!("unknown header field `{other}`"))),
        }
    }
    let nx = nx.ok_or_else(|| parse_err(1, "header is missing nx"))?;
    let ny = ny.ok_or_else(|| parse_err(1, "header is missing ny"))?;
    let xmin = xmin.ok_or_else(|| parse_err(1, "header is missing xmin"))?;
    let ymin = ymin.ok_or_else(|| parse_err(1, "header is missing ymin"))?;
    let h = h.ok_or_else(|| parse_err(1, "header is missing h"))?;

    let expected = nx
        .checked_mul(ny)
        .ok_or_else(|| parse_err(1, "grid dimensions overflow"))?;
    let mut values = Vec::with_capacity(expected);
    for (line_no, line) in lines {
        for token in line.split_whitespace() {
            if values.len() == expected {
                return Err(parse_err(line_no + 1, "more values than nx*ny"));
            }
            let v: f64 = token.parse().map_err(|_| {
                parse_err(line_no + 1, &format!("cannot parse value `{token}`"))
            })?;
            values.push(v);
        }
    }
    if values.len() != expected {
        return Err(parse_err(
            text.lines().count(),
            &format!("expected {} values, found {}", expected, values.len()),
        ));
    }
    GridFunction::new(nx, ny, xmin, ymin, h, values)
}

pub fn write_grid_file(g: &GridFunction, path: &std::path::Path) -> Result<(), LabError> {
    std::fs::write(path, write_grid_string(g))?;
    Ok(())
}

pub fn read_grid_file(path: &std::path::Path) -> Result<GridFunction, LabError> {
    let text = std::fs::read_to_string(path)?;
    read_grid_string(&text)
}

fn parse_err(line: usize, message: &str) -> LabError {
    LabError::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T, LabError> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("cannot parse {what} from `{s}`")))
}
