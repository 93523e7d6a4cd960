//! Input parsing, number formatting and atomic output.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use tropfw::matroid::{graphic_matroid, pair_index, Matroid};

use crate::MatroidArgs;

/// Bad input or arguments; exits with status 2.
#[derive(Debug)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        UsageError(msg.into())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError::new(msg).into()
}

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// or to stdout when no path is given.
pub fn write_output(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    let Some(path) = path else {
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Shortest decimal form after rounding to 10 significant digits, with
/// magnitudes below `1e-9 * scale` printed as zero. Solver output carries
/// relative round-off near `1e-11`, which this keeps out of reports.
pub fn fmt_num(x: f64, scale: f64) -> String {
    if x.abs() <= 1e-9 * scale.abs() {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
    rounded.to_string()
}

/// [`fmt_num`] on each entry, scaled by the row's largest magnitude.
pub fn fmt_row(xs: &[f64]) -> String {
    let scale = max_abs(xs);
    xs.iter()
        .map(|&x| fmt_num(x, scale))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

pub fn parse_vector(text: &str, what: &str) -> anyhow::Result<Vec<f64>> {
    text.split(',')
        .map(|f| {
            let f = f.trim();
            match f.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(usage(format!("{what}: {f:?} is not a finite number"))),
            }
        })
        .collect()
}

/// Rows of a numeric CSV. A first line made only of `A|B` pair labels is a
/// header; the columns are then reordered to the canonical pair order of
/// the sorted labels.
pub struct Table {
    pub labels: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_table(text: &str, source: &str) -> anyhow::Result<Table> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .peekable();
    let mut labels = None;
    let mut order: Option<Vec<usize>> = None;
    if let Some((_, first)) = lines.peek() {
        let fields: Vec<&str> = first.split(',').map(str::trim).collect();
        if fields.iter().all(|f| f.contains('|')) {
            let (l, o) = header_order(&fields, source)?;
            labels = Some(l);
            order = Some(o);
            lines.next();
        }
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        let what = format!("{source}, line {}", lineno + 1);
        let row = parse_vector(line, &what)?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(usage(format!(
                    "{what}: expected {first} fields, found {}",
                    row.len()
                )));
            }
        }
        let row = match &order {
            Some(o) => {
                if row.len() != o.len() {
                    return Err(usage(format!(
                        "{what}: expected {} fields to match the header, found {}",
                        o.len(),
                        row.len()
                    )));
                }
                let mut out = vec![0.0; o.len()];
                for (col, &dst) in o.iter().enumerate() {
                    out[dst] = row[col];
                }
                out
            }
            None => row,
        };
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(usage(format!("{source}: no data rows")));
    }
    if rows[0].len() < 2 {
        return Err(usage(format!("{source}: rows need at least 2 entries")));
    }
    Ok(Table { labels, rows })
}

fn header_order(fields: &[&str], source: &str) -> anyhow::Result<(Vec<String>, Vec<usize>)> {
    let pairs: Vec<(&str, &str)> = fields
        .iter()
        .map(|f| f.split_once('|').expect("checked"))
        .collect();
    let labels: Vec<String> = pairs
        .iter()
        .flat_map(|(a, b)| [a.to_string(), b.to_string()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let p = labels.len();
    if p * (p - 1) / 2 != pairs.len() {
        return Err(usage(format!(
            "{source}: header names {p} taxa but has {} columns",
            pairs.len()
        )));
    }
    let mut seen = vec![false; pairs.len()];
    let mut order = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let i = labels.iter().position(|l| l == a).expect("collected");
        let j = labels.iter().position(|l| l == b).expect("collected");
        if i == j {
            return Err(usage(format!(
                "{source}: header pair {a}|{b} repeats a label"
            )));
        }
        let k = pair_index(p, i.min(j), i.max(j));
        if std::mem::replace(&mut seen[k], true) {
            return Err(usage(format!(
                "{source}: header pair {a}|{b} appears twice"
            )));
        }
        order.push(k);
    }
    Ok((labels, order))
}

/// The matroid named on the command line, if any.
pub fn load_matroid(args: &MatroidArgs) -> anyhow::Result<Option<Matroid>> {
    if let Some(p) = args.graphic {
        return graphic_matroid(p)
            .map(Some)
            .map_err(|e| usage(format!("--graphic: {e}")));
    }
    if let Some(path) = &args.matroid {
        let text = read_text(path)?;
        return Matroid::from_text(&text)
            .map(Some)
            .map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    Ok(None)
}

/// Number of taxa `p` with `p(p-1)/2 = q`, if any.
pub fn taxa_for_pairs(q: usize) -> Option<usize> {
    (2..=q + 1).find(|p| p * (p - 1) / 2 == q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_hides_round_off() {
        assert_eq!(fmt_num(0.9999999999999998, 1.0), "1");
        assert_eq!(fmt_row(&[3.0, -1e-17, 1.0000000000000002]), "3,0,1");
        assert_eq!(fmt_num(2.5, 1.0), "2.5");
        assert_eq!(fmt_num(2e-11, 3.0), "0");
        assert_eq!(fmt_num(2e-11, 0.0), "0.00000000002");
    }

    #[test]
    fn header_columns_are_reordered() {
        let t = parse_table("B|C,A|B,A|C\n3,1,2\n", "t").unwrap();
        assert_eq!(t.labels.unwrap(), vec!["A", "B", "C"]);
        assert_eq!(t.rows, vec![vec![1.0, 2.0, 3.0]]);
    }

    #[test]
    fn malformed_rows_are_usage_errors() {
        for bad in ["1,2\n3\n", "1,x\n", "", "5\n", "A|B,A|C\n1,2\n"] {
            let e = parse_table(bad, "t").err().unwrap();
            assert!(e.downcast_ref::<UsageError>().is_some(), "{bad:?}");
        }
    }

    #[test]
    fn pair_counts() {
        assert_eq!(taxa_for_pairs(28), Some(8));
        assert_eq!(taxa_for_pairs(3), Some(3));
        assert_eq!(taxa_for_pairs(4), None);
    }
}
