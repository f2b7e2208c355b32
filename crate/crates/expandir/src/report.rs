//! Human-readable and CSV renderings of a [`MetricsReport`].

use std::fmt::Write;

use expandir_core::{Metric, MetricsReport};

/// Mean of each metric, plus one column per query when `per_query` is set.
pub fn metrics_table(report: &MetricsReport, per_query: bool) -> String {
    let mut header = vec!["metric".to_string(), "all".to_string()];
    if per_query {
        header.extend(report.per_query.keys().cloned());
    }
    let mut rows = vec![header];
    for m in Metric::ALL {
        let mut row = vec![m.name().to_string(), format!("{:.4}", report.mean(m))];
        if per_query {
            row.extend(report.per_query.values().map(|q| format!("{:.4}", q.get(m))));
        }
        rows.push(row);
    }
    let mut count = vec!["queries".to_string(), report.num_queries.to_string()];
    if per_query {
        count.extend(std::iter::repeat_n(String::new(), report.per_query.len()));
    }
    rows.push(count);
    align(&rows)
}

pub(crate) fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let pad = widths[c] - cell.chars().count();
            if c == 0 {
                line.push_str(cell);
                line.extend(std::iter::repeat_n(' ', pad));
            } else {
                line.extend(std::iter::repeat_n(' ', pad));
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// `query_id,metric,value` rows, per query then the means under `all`.
pub fn metrics_csv(report: &MetricsReport) -> String {
    let mut out = String::from("query_id,metric,value\n");
    for (qid, m) in &report.per_query {
        for metric in Metric::ALL {
            writeln!(out, "{},{},{:.6}", csv_field(qid), metric, m.get(metric)).unwrap();
        }
    }
    for metric in Metric::ALL {
        writeln!(out, "all,{},{:.6}", metric, report.mean(metric)).unwrap();
    }
    out
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use expandir_core::{evaluate, Qrels, RankedRun};

    fn report() -> MetricsReport {
        let mut qrels = Qrels::new();
        qrels.insert("1", "a", 1);
        qrels.insert("2", "b", 1);
        let run = RankedRun::from_scores([("1", "x", 2.0), ("1", "a", 1.0), ("2", "b", 1.0)]);
        evaluate(&run, &qrels)
    }

    #[test]
    fn csv_has_per_query_and_all_rows() {
        let csv = metrics_csv(&report());
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "query_id,metric,value");
        assert_eq!(lines.len(), 1 + 3 * Metric::ALL.len());
        assert!(lines.contains(&"1,mrr,0.500000"));
        assert!(lines.contains(&"all,mrr,0.750000"));
        assert!(lines.contains(&"all,p@5,0.200000"));
    }

    #[test]
    fn table_lists_means() {
        let t = metrics_table(&report(), false);
        assert!(t
            .lines()
            .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["mrr", "0.7500"]));
        assert!(t.lines().last().unwrap().ends_with('2'));
        let t = metrics_table(&report(), true);
        assert!(t
            .lines()
            .next()
            .unwrap()
            .split_whitespace()
            .eq(["metric", "all", "1", "2"]));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
