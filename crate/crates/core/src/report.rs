//! Report output: JSON lines, an aligned text table and CSV.

use std::io::Write;

use crate::error::Result;
use crate::verify::BoundReport;
use crate::voronoi::ratio_string;

fn join_line(w: &Option<Vec<usize>>) -> String {
    w.as_ref().map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default()
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(mut out: W, reports: &[BoundReport]) -> Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// A table padded to column width, followed by a pass count.
pub fn write_text<W: Write>(mut out: W, reports: &[BoundReport]) -> Result<()> {
    let header = ["verdict", "bound", "instance", "claim", "witness"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
                r.bound.clone(),
                r.instance.clone(),
                r.claim(),
                join_line(&r.witness),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[&str]| -> String {
        let padded: Vec<String> = cells.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&header))?;
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells))?;
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    writeln!(out, "{passed}/{} passed", reports.len())?;
    Ok(())
}

/// One CSV row per report.
pub fn write_csv<W: Write>(out: W, reports: &[BoundReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bound", "instance", "lhs", "relation", "rhs", "value", "pass", "seed", "witness"])?;
    for r in reports {
        w.write_record([
            r.bound.clone(),
            r.instance.clone(),
            ratio_string(r.lhs),
            r.relation.symbol().to_string(),
            ratio_string(r.rhs),
            r.value.map(ratio_string).unwrap_or_default(),
            r.pass.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            join_line(&r.witness),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Relation;
    use num_rational::Ratio;

    fn sample() -> Vec<BoundReport> {
        let mut a = BoundReport::compare("star", "star:k=4:t=1", Ratio::new(4, 5), Relation::Eq, Ratio::new(4, 5));
        a.witness = Some(vec![0, 1]);
        let b = BoundReport::within("sandwich", "g", Ratio::new(1, 4), Ratio::new(1, 1), Ratio::new(3, 4));
        vec![a, b]
    }

    #[test]
    fn jsonl_lines() {
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(v["bound"], "star");
        assert_eq!(v["lhs"], "4/5");
        assert_eq!(v["witness"], serde_json::json!([0, 1]));
        assert_eq!(v["seed"], serde_json::Value::Null);
    }

    #[test]
    fn text_table_is_aligned() {
        let mut buf = Vec::new();
        write_text(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[1].starts_with("PASS     star      star:k=4:t=1  4/5 = 4/5"));
        assert!(lines[2].starts_with("FAIL     sandwich"));
        assert_eq!(lines[3], "1/2 passed");
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "star,star:k=4:t=1,4/5,=,4/5,,true,,0 1");
        assert_eq!(text.lines().nth(2).unwrap(), "sandwich,g,1/4,in,3/4,1/1,false,,");
    }
}
