//! CSV and plot-data emission.
//!
//! Floats print with six decimals so identical runs produce byte-identical
//! files.

use std::path::{Path, PathBuf};

use ecsim::error::{Error, Result};

pub fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

/// Header plus rows, one line each.
pub fn csv_lines(header: &str, rows: &[String]) -> Vec<String> {
    let mut lines = Vec::with_capacity(rows.len() + 1);
    lines.push(header.to_string());
    lines.extend(rows.iter().cloned());
    lines
}

pub fn write_lines(path: &Path, lines: &[String]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| {
                Error::InvalidParameter(format!("cannot create {}: {e}", dir.display()))
            })?;
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

/// One (x, y, sigma) series sorted by x ascending.
pub struct PlotSeries {
    pub name: String,
    pub points: Vec<(f64, f64, f64)>,
}

/// Write `<stem>.plot.<series>.csv` next to the CSV for each series.
pub fn write_plot_data(csv_path: &Path, series: &[PlotSeries]) -> Result<Vec<PathBuf>> {
    let stem = csv_path.with_extension("");
    let mut written = Vec::new();
    for s in series {
        let mut pts = s.points.clone();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut lines = vec!["x,y,sigma".to_string()];
        lines.extend(
            pts.iter()
                .map(|(x, y, sg)| format!("{},{},{}", fmt(*x), fmt(*y), fmt(*sg))),
        );
        let path = PathBuf::from(format!("{}.plot.{}.csv", stem.display(), s.name));
        write_lines(&path, &lines)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_precision_formatting() {
        assert_eq!(fmt(1.0), "1.000000");
        assert_eq!(fmt(0.1234567), "0.123457");
    }
}
