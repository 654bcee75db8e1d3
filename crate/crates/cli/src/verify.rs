//! Success-rate verification over enumerations and graph6 streams.

use std::collections::BTreeMap;
use std::io::BufRead;

use energy_bounds::bounds::{report_with, ReportOptions, Tally};
use energy_bounds::{enumerate_nonisomorphic, parse_graph6, write_graph6, Graph};
use rayon::prelude::*;
use serde::Serialize;

/// Graphs per parallel batch; bounds memory on long streams.
const BATCH: usize = 2048;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    /// Graph order, or `None` for the aggregate row.
    pub n: Option<usize>,
    #[serde(flatten)]
    pub tally: Tally,
    pub percentages: [f64; 4],
}

impl Row {
    fn new(n: Option<usize>, tally: Tally) -> Self {
        Row { n, tally, percentages: tally.percentages() }
    }

    pub fn label(&self) -> String {
        self.n.map_or_else(|| "all".to_string(), |n| n.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub rows: Vec<Row>,
    /// graph6 codes of graphs with `E/2 < n - alpha`.
    pub violations: Vec<String>,
    /// Bounds exceeding `E/2`, which the theorems rule out.
    pub unsound: Vec<String>,
    pub malformed: usize,
    pub unknown: usize,
    pub lines: usize,
}

pub enum Source {
    Enumerate(usize),
    Graph6(Box<dyn BufRead>),
}

struct Eval {
    n: usize,
    code: String,
    outcome: Option<energy_bounds::bounds::Outcome>,
    unsound: Vec<String>,
}

fn evaluate(g: &Graph, opts: &ReportOptions) -> Eval {
    let code = write_graph6(g);
    match report_with(g, opts) {
        Ok(r) => {
            let unsound = r.soundness_violations().iter().map(|(k, v)| format!("{code} {k} = {v:.9}")).collect();
            Eval { n: g.n(), code, outcome: r.outcome(), unsound }
        }
        Err(e) => {
            eprintln!("warning: {code}: {e}");
            Eval { n: g.n(), code, outcome: None, unsound: Vec::new() }
        }
    }
}

#[derive(Default)]
struct Acc {
    by_order: BTreeMap<usize, Tally>,
    summary: Summary,
}

impl Acc {
    fn batch(&mut self, graphs: &[Graph], opts: &ReportOptions) {
        let evals: Vec<Eval> = graphs.par_iter().map(|g| evaluate(g, opts)).collect();
        for e in evals {
            self.summary.unsound.extend(e.unsound);
            match e.outcome {
                Some(o) => {
                    self.by_order.entry(e.n).or_default().add(&o);
                    if !o.conjecture_holds {
                        self.summary.violations.push(e.code);
                    }
                }
                None => self.summary.unknown += 1,
            }
        }
    }

    fn finish(self) -> Summary {
        let mut s = self.summary;
        let total = self.by_order.values().fold(Tally::default(), |a, t| a.merge(*t));
        s.rows = self.by_order.into_iter().map(|(n, t)| Row::new(Some(n), t)).collect();
        if s.rows.len() > 1 {
            s.rows.push(Row::new(None, total));
        }
        s
    }
}

/// Must run inside the caller's rayon pool.
pub fn run(source: Source, opts: &ReportOptions) -> Result<Summary, String> {
    let mut acc = Acc::default();
    match source {
        Source::Enumerate(n) => {
            let graphs: Vec<Graph> = enumerate_nonisomorphic(n).map_err(|e| e.to_string())?.collect();
            for chunk in graphs.chunks(BATCH) {
                acc.batch(chunk, opts);
            }
            acc.summary.lines = graphs.len();
        }
        Source::Graph6(reader) => {
            let mut lines = 0;
            let mut malformed = 0;
            let mut batch = Vec::with_capacity(BATCH);
            for (k, line) in reader.lines().enumerate() {
                let line = line.map_err(|e| e.to_string())?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                lines += 1;
                match parse_graph6(line) {
                    Ok(g) => batch.push(g),
                    Err(e) => {
                        malformed += 1;
                        eprintln!("warning: line {}: {e}", k + 1);
                    }
                }
                if batch.len() == BATCH {
                    acc.batch(&batch, opts);
                    batch.clear();
                }
            }
            acc.batch(&batch, opts);
            acc.summary.lines = lines;
            acc.summary.malformed = malformed;
        }
    }
    Ok(acc.finish())
}
