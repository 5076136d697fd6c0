//! Report formatting shared by the commands.

use anyhow::Result;
use serde::Serialize;

/// Twelve significant digits, `.` as decimal separator, no grouping.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

pub fn opt12(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// Builds a CSV document from a header and string rows.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.393727062072), "0.393727062072");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(1.5e-5), "1.50000000000e-5");
        assert_eq!(sig12(0.000123), "0.000123000000000");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_quotes_commas() {
        let s = csv_table(&["a", "b"], [vec!["x,y".to_string(), "1".to_string()]]).unwrap();
        assert_eq!(s, "a,b\n\"x,y\",1\n");
    }
}
