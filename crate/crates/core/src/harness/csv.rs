use std::fmt::Write as _;

/// Formats `v` with 9 significant digits in plain decimal notation, trailing
/// zeros removed.
pub fn fmt_sig9(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.8e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|ch| ch.is_ascii_digit()).collect();
    let mut out = String::new();
    if v < 0.0 {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.push_str(&"0".repeat(int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    }
    out
}

/// Header plus numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Comma-separated, LF line endings, header first.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_sig9(*v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig9(0.8535533905932737), "0.853553391");
        assert_eq!(fmt_sig9(0.75), "0.75");
        assert_eq!(fmt_sig9(1.0), "1");
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(0.0012345678912), "0.00123456789");
        assert_eq!(fmt_sig9(123.456), "123.456");
        assert_eq!(fmt_sig9(-2.5e-3), "-0.0025");
        assert_eq!(fmt_sig9(1e10), "10000000000");
        assert_eq!(fmt_sig9(0.17677669529663687), "0.176776695");
    }

    #[test]
    fn csv_layout() {
        let t = Table {
            header: vec!["x".into(), "y".into()],
            rows: vec![vec![0.0, 0.5], vec![1.0, 0.25]],
        };
        assert_eq!(t.to_csv(), "x,y\n0,0.5\n1,0.25\n");
        assert_eq!(t.column("y"), Some(vec![0.5, 0.25]));
        assert_eq!(t.column("z"), None);
    }
}
