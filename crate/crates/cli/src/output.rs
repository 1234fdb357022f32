//! Serialized tables: JSON (canonical, sorted keys), CSV and an aligned text form.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use dynkin_hh::table::BigradedTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub family: String,
    pub rank: usize,
    pub n: usize,
    pub t_min: i64,
    pub t_max: i64,
    pub certified: bool,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub t: i64,
    pub s: i64,
    pub dim: u64,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Meta,
    pub rows: Vec<Row>,
}

impl Document {
    pub fn from_table(table: &BigradedTable) -> Self {
        let meta = Meta {
            family: table.meta.family.clone(),
            rank: table.meta.rank,
            n: table.meta.n,
            t_min: table.t_min,
            t_max: table.t_max,
            certified: table.certified,
            version: dynkin_hh::VERSION.to_string(),
        };
        let rows = table
            .entries
            .iter()
            .map(|(&(t, s), e)| Row {
                t,
                s,
                dim: e.dim,
                labels: e.labels.clone(),
            })
            .collect();
        Self { meta, rows }
    }

    /// Rebuilds a table; labels are kept, dimensions are taken from `dim`.
    pub fn to_table(&self) -> BigradedTable {
        let meta = dynkin_hh::table::TableMeta {
            family: self.meta.family.clone(),
            rank: self.meta.rank,
            n: self.meta.n,
            flags: Vec::new(),
        };
        let mut t = BigradedTable::new(self.meta.t_min, self.meta.t_max, meta);
        t.certified = self.meta.certified;
        for r in &self.rows {
            let e = t.entries.entry((r.t, r.s)).or_default();
            e.dim += r.dim;
            e.labels.extend(r.labels.iter().cloned());
        }
        t
    }

    /// Sorted-key JSON. Struct fields go through `Value`, whose maps are ordered.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["t", "s", "dim", "labels"]).expect("in-memory write");
        for r in &self.rows {
            w.write_record([r.t.to_string(), r.s.to_string(), r.dim.to_string(), r.labels.join(";")])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_pretty(&self, title: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {title}\n"));
        out.push_str(&format!(
            "# {}{} n={} t in [{}, {}]{}\n",
            self.meta.family,
            if self.meta.family.starts_with('E') { String::new() } else { self.meta.rank.to_string() },
            self.meta.n,
            self.meta.t_min,
            self.meta.t_max,
            if self.meta.certified { "" } else { " (uncertified)" }
        ));
        let header = ["t".to_string(), "s".to_string(), "dim".to_string()];
        let cells: Vec<[String; 3]> = self.rows.iter().map(|r| [r.t.to_string(), r.s.to_string(), r.dim.to_string()]).collect();
        let width: Vec<usize> = (0..3)
            .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(1))
            .collect();
        let line = |c: &[String; 3], labels: &str| {
            let mut l = format!("{:>w0$}  {:>w1$}  {:>w2$}", c[0], c[1], c[2], w0 = width[0], w1 = width[1], w2 = width[2]);
            if !labels.is_empty() {
                l.push_str("  ");
                l.push_str(labels);
            }
            l.push('\n');
            l
        };
        out.push_str(&line(&header, ""));
        for (c, r) in cells.iter().zip(&self.rows) {
            out.push_str(&line(c, &r.labels.join("; ")));
        }
        if self.rows.is_empty() {
            out.push_str("(no classes in window)\n");
        }
        out
    }

    pub fn render(&self, format: Format, title: &str) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Pretty => self.to_pretty(title),
        }
    }
}
