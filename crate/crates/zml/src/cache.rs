//! Plain-text persistence for zero tables.
//!
//! Format: one header line `# t_max=<v> tol=<v> count=<n>`, then one
//! ordinate per line, 15 significant digits, ascending. Human-readable on
//! purpose: the files diff cleanly and other tools can check them.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::zeros::{LocalizationMethod, ZeroTable};

/// Render with exactly `sig` significant digits in plain decimal.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_zero_cache(path: &Path, table: &ZeroTable) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!(
        "# t_max={} tol={:e} count={}\n",
        table.t_max(),
        table.tol(),
        table.len()
    ));
    for &g in table.ordinates() {
        out.push_str(&format_significant(g, 15));
        out.push('\n');
    }
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_zero_cache(path: &Path) -> Result<ZeroTable> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or(Error::CacheFormat {
        line: 1,
        detail: "empty file".to_string(),
    })?;
    let header = header.strip_prefix('#').ok_or(Error::CacheFormat {
        line: 1,
        detail: "missing '#' header".to_string(),
    })?;
    let mut t_max = None;
    let mut tol = None;
    let mut count = None;
    for field in header.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::CacheFormat {
            line: 1,
            detail: format!("malformed header field '{field}'"),
        })?;
        match key {
            "t_max" => t_max = value.parse::<f64>().ok(),
            "tol" => tol = value.parse::<f64>().ok(),
            "count" => count = value.parse::<usize>().ok(),
            _ => {
                return Err(Error::CacheFormat {
                    line: 1,
                    detail: format!("unknown header field '{key}'"),
                })
            }
        }
    }
    let (t_max, tol, count) = match (t_max, tol, count) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::CacheFormat {
                line: 1,
                detail: "header must carry t_max, tol and count".to_string(),
            })
        }
    };

    let mut ordinates = Vec::with_capacity(count);
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g: f64 = line.parse().map_err(|_| Error::CacheFormat {
            line: idx + 1,
            detail: format!("bad ordinate '{line}'"),
        })?;
        ordinates.push(g);
    }
    if ordinates.len() != count {
        return Err(Error::CacheFormat {
            line: 1,
            detail: format!("header count {} vs {} ordinates", count, ordinates.len()),
        });
    }
    // cache does not persist residual metadata
    ZeroTable::from_parts(
        t_max,
        ordinates,
        tol,
        LocalizationMethod::GramBisection,
        count,
        f64::NAN,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EvalConfig;
    use crate::zeros::find_zeros;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(
            format_significant(14.134725141734694, 15),
            "14.1347251417347"
        );
        assert_eq!(
            format_significant(9.666908056130192, 15),
            "9.66690805613019"
        );
        assert_eq!(format_significant(1000.0, 15), "1000.00000000000");
        assert_eq!(format_significant(0.0, 15), "0");
    }

    #[test]
    fn round_trip_preserves_15_digits() {
        let table = find_zeros(0.0, 60.0, &EvalConfig::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.txt");
        write_zero_cache(&path, &table).unwrap();
        let loaded = read_zero_cache(&path).unwrap();
        assert_eq!(loaded.len(), table.len());
        assert_eq!(loaded.t_max(), table.t_max());
        assert_eq!(loaded.tol(), table.tol());
        for (a, b) in table.ordinates().iter().zip(loaded.ordinates()) {
            assert!((a - b).abs() <= 1e-13 * a.abs());
        }
        assert!(loaded.z_residual_bound().is_nan());
    }

    #[test]
    fn rejects_malformed_headers() {
        let dir = tempfile::tempdir().unwrap();
        for (name, content) in [
            ("a", "no header\n14.1\n"),
            ("b", "# t_max=50 tol=1e-9\n"),
            ("c", "# t_max=50 tol=1e-9 count=2\n14.134\n"),
            ("d", "# t_max=50 tol=1e-9 count=1\nnot-a-number\n"),
        ] {
            let path = dir.path().join(name);
            std::fs::write(&path, content).unwrap();
            assert!(read_zero_cache(&path).is_err(), "{name} should fail");
        }
    }

    #[test]
    fn rejects_unsorted_ordinates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "# t_max=50 tol=1e-9 count=2\n21.0\n14.1\n").unwrap();
        assert!(read_zero_cache(&path).is_err());
    }
}
