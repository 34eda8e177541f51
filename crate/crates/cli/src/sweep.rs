//! Line-oriented sweep files.
//!
//! Each non-blank line describes one configuration:
//!
//! ```text
//! n=<int> d=<int> lines=<int> [double_line] [fat r=<int> m=<int>] [collinear=<int>] [sundials=<int>]
//! ```
//!
//! Everything after `#` is a comment. Tokens may appear in any order. A
//! `fat` block with `r=0` is a fat point.

use postulation_core::{ComponentKind, SchemeConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct SweepParseError {
    pub line: usize,
    pub message: String,
}

/// One parsed entry with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub line: usize,
    pub config: SchemeConfig,
}

#[derive(Default)]
struct Fields {
    n: Option<u32>,
    d: Option<u32>,
    lines: Option<usize>,
    double_line: bool,
    fat: bool,
    fat_r: Option<u32>,
    fat_m: Option<u32>,
    collinear: Option<u32>,
    sundials: Option<usize>,
}

fn set<T>(slot: &mut Option<T>, key: &str, value: T) -> Result<(), String> {
    if slot.replace(value).is_some() {
        return Err(format!("`{key}` given twice"));
    }
    Ok(())
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| format!("`{key}={value}`: {e}"))
}

/// Parses the text of one line; `Ok(None)` for blank and comment-only lines.
pub fn parse_line(text: &str) -> Result<Option<SchemeConfig>, String> {
    let body = text.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return Ok(None);
    }
    let mut f = Fields::default();
    for token in body.split_whitespace() {
        match token.split_once('=') {
            None => match token {
                "double_line" if !f.double_line => f.double_line = true,
                "fat" if !f.fat => f.fat = true,
                "double_line" | "fat" => return Err(format!("`{token}` given twice")),
                other => return Err(format!("unknown token `{other}`")),
            },
            Some((key, value)) => match key {
                "n" => set(&mut f.n, key, number(key, value)?)?,
                "d" => set(&mut f.d, key, number(key, value)?)?,
                "lines" => set(&mut f.lines, key, number(key, value)?)?,
                "r" => set(&mut f.fat_r, key, number(key, value)?)?,
                "m" => set(&mut f.fat_m, key, number(key, value)?)?,
                "collinear" => set(&mut f.collinear, key, number(key, value)?)?,
                "sundials" => set(&mut f.sundials, key, number(key, value)?)?,
                other => return Err(format!("unknown key `{other}`")),
            },
        }
    }
    let n = f.n.ok_or("missing `n=`")?;
    let d = f.d.ok_or("missing `d=`")?;
    let lines = f.lines.ok_or("missing `lines=`")?;

    let mut config = SchemeConfig::new(n, d);
    if f.double_line {
        config = config.push(ComponentKind::DOUBLE_LINE, 1);
    }
    match (f.fat, f.fat_r, f.fat_m) {
        (true, Some(0), Some(mult)) => config = config.push(ComponentKind::FatPoint { mult }, 1),
        (true, Some(dim), Some(mult)) => config = config.push(ComponentKind::FatLinearSpace { dim, mult }, 1),
        (true, _, _) => return Err("`fat` needs both `r=` and `m=`".into()),
        (false, None, None) => {}
        (false, _, _) => return Err("`r=` and `m=` belong to a `fat` block".into()),
    }
    config = config.push(ComponentKind::Line, lines).push(ComponentKind::Sundial, f.sundials.unwrap_or(0));
    if let Some(q) = f.collinear.filter(|&q| q > 0) {
        config = config.push(ComponentKind::CollinearPoints { count: q }, 1);
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(Some(config))
}

/// Parses a whole sweep file, stopping at the first bad line.
pub fn parse_sweep(text: &str) -> Result<Vec<SweepEntry>, SweepParseError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match parse_line(raw) {
            Ok(Some(config)) => entries.push(SweepEntry { line, config }),
            Ok(None) => {}
            Err(message) => return Err(SweepParseError { line, message }),
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_line() {
        let c = parse_line("n=4 d=3 lines=2 double_line fat r=2 m=2 collinear=3 sundials=1  # note").unwrap().unwrap();
        assert_eq!((c.n, c.d), (4, 3));
        assert_eq!(c.count_kind(ComponentKind::DOUBLE_LINE), 1);
        assert_eq!(c.count_kind(ComponentKind::FatLinearSpace { dim: 2, mult: 2 }), 1);
        assert_eq!(c.count_kind(ComponentKind::Line), 2);
        assert_eq!(c.count_kind(ComponentKind::Sundial), 1);
        assert_eq!(c.count_kind(ComponentKind::CollinearPoints { count: 3 }), 1);
    }

    #[test]
    fn fat_point_and_order() {
        let c = parse_line("lines=3 m=3 r=0 fat d=3 n=3").unwrap().unwrap();
        assert_eq!(c.count_kind(ComponentKind::FatPoint { mult: 3 }), 1);
    }

    #[test]
    fn blanks_and_comments() {
        assert_eq!(parse_line("   ").unwrap(), None);
        assert_eq!(parse_line("# n=3 d=2 lines=1").unwrap(), None);
        assert!(parse_sweep("").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_sweep("n=3 d=2 lines=1\n\n# ok\nn=3 d=two lines=1\n").unwrap_err();
        assert_eq!(err.line, 4);
        for bad in ["n=3 lines=1", "n=3 d=2 lines=1 bogus", "n=3 d=2 lines=1 n=4", "n=3 d=2 lines=1 fat r=1", "n=3 d=2 lines=1 r=1 m=2", "n=3 d=2 lines=1 fat r=1 m=9", "n=3 d=2 lines=-1"] {
            assert!(parse_line(bad).is_err(), "{bad}");
        }
    }
}
