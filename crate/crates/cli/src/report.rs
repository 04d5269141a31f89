//! Reports and their two renderings.
//!
//! Machine format: one record per line, fields separated by a tab (shown
//! here as `|`).
//!
//! ```text
//! #listnerve-report|1
//! command|<name>
//! param|<name>|<value>
//! columns|<table>|<column>...
//! row|<table>|<value>...
//! note|<text>
//! verdict|pass or fail
//! ```
//!
//! Tabs and newlines inside values are replaced by spaces.

use std::fmt::Write;

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    pub verdict: Option<bool>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), params: Vec::new(), tables: Vec::new(), notes: Vec::new(), verdict: None }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) {
        self.params.push((name.into(), value.to_string()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a check; the verdict fails as soon as one check fails.
    pub fn check(&mut self, ok: bool) {
        self.verdict = Some(self.verdict.unwrap_or(true) && ok);
    }

    pub fn failed(&self) -> bool {
        self.verdict == Some(false)
    }

    pub fn machine(&self) -> String {
        let mut out = String::from("#listnerve-report\t1\n");
        let _ = writeln!(out, "command\t{}", clean(&self.command));
        for (k, v) in &self.params {
            let _ = writeln!(out, "param\t{}\t{}", clean(k), clean(v));
        }
        for t in &self.tables {
            let _ = writeln!(out, "columns\t{}\t{}", clean(&t.name), join(&t.columns));
            for r in &t.rows {
                let _ = writeln!(out, "row\t{}\t{}", clean(&t.name), join(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note\t{}", clean(n));
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(out, "verdict\t{}", if v { "pass" } else { "fail" });
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "  {}", ps.join("  "));
        }
        for t in &self.tables {
            out.push('\n');
            let _ = writeln!(out, "{}", t.name);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| width(c)).collect();
            for r in &t.rows {
                for (w, v) in widths.iter_mut().zip(r) {
                    *w = (*w).max(width(v));
                }
            }
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - width(c)))).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "  {}", line(&t.columns));
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            let _ = writeln!(out, "  {}", line(&rule));
            for r in &t.rows {
                let _ = writeln!(out, "  {}", line(r));
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(out, "\nverdict: {}", if v { "pass" } else { "fail" });
        }
        out
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

fn join(cells: &[String]) -> String {
    cells.iter().map(|c| clean(c)).collect::<Vec<_>>().join("\t")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_records_are_tab_separated() {
        let mut r = Report::new("demo");
        r.param("D", 3);
        let mut t = Table::new("sizes", &["degree", "size"]);
        t.push(["0", "a\tb"]);
        r.tables.push(t);
        r.check(true);
        assert_eq!(
            r.machine(),
            "#listnerve-report\t1\ncommand\tdemo\nparam\tD\t3\ncolumns\tsizes\tdegree\tsize\nrow\tsizes\t0\ta b\nverdict\tpass\n"
        );
        assert!(r.table().contains("degree  size"));
        r.check(false);
        r.check(true);
        assert!(r.failed());
    }
}
