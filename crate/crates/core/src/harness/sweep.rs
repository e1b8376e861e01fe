//! Corpus sweeps: graph6 lines in, one JSON record per graph out.

use std::io::{BufRead, Write};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::classify::{check_scope, classify, Verdict};
use super::par::par_map;
use super::{HarnessError, RunConfig};
use crate::graph::{emit_graph6, parse_graph6, Graph, GRAPH6_HEADER};
use crate::oracle::{check_hz_lemma, check_val, chromatic_index, is_critical};

/// Lines handed to the worker pool at a time.
const CHUNK: usize = 2048;

/// Counts over one sweep; written as the last JSONL line.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub lines: usize,
    pub malformed: usize,
    pub skipped: usize,
    pub class1: usize,
    pub class2: usize,
    pub errors: usize,
    /// Class-2 verdicts on graphs other than K5 − e.
    pub unexpected_class2: usize,
    pub oracle_checked: usize,
    pub oracle_mismatches: usize,
    pub critical: usize,
    pub val_violations: usize,
    pub hz_violations: usize,
}

impl SweepSummary {
    /// No malformed line, error, unexpected verdict or failed check.
    pub fn clean(&self) -> bool {
        self.malformed == 0
            && self.errors == 0
            && self.unexpected_class2 == 0
            && self.oracle_mismatches == 0
            && self.val_violations == 0
            && self.hz_violations == 0
    }

    fn add(&mut self, o: &SweepSummary) {
        self.lines += o.lines;
        self.malformed += o.malformed;
        self.skipped += o.skipped;
        self.class1 += o.class1;
        self.class2 += o.class2;
        self.errors += o.errors;
        self.unexpected_class2 += o.unexpected_class2;
        self.oracle_checked += o.oracle_checked;
        self.oracle_mismatches += o.oracle_mismatches;
        self.critical += o.critical;
        self.val_violations += o.val_violations;
        self.hz_violations += o.hz_violations;
    }

    pub fn to_json(&self) -> Value {
        json!({ "summary": self })
    }
}

/// Records for one input line, with their contribution to the summary.
#[derive(Debug, Clone)]
pub struct LineReport {
    pub records: Vec<Value>,
    pub counts: SweepSummary,
}

/// Sweeps an in-memory list of lines.
pub fn sweep_lines(lines: &[String], cfg: &RunConfig) -> (Vec<Value>, SweepSummary) {
    let mut records = Vec::new();
    let mut summary = SweepSummary::default();
    for (start, chunk) in (0..).step_by(CHUNK).zip(lines.chunks(CHUNK)) {
        for r in sweep_chunk(start, chunk, cfg) {
            records.extend(r.records);
            summary.add(&r.counts);
        }
    }
    (records, summary)
}

/// Streams `input` to `out` as JSONL, ending with the summary line.
pub fn sweep_stream(
    input: impl BufRead,
    mut out: impl Write,
    cfg: &RunConfig,
) -> Result<SweepSummary, HarnessError> {
    let mut summary = SweepSummary::default();
    let mut buf = Vec::with_capacity(CHUNK);
    let mut start = 0;
    let mut lines = input.lines();
    loop {
        buf.clear();
        for line in lines.by_ref().take(CHUNK) {
            buf.push(line?);
        }
        if buf.is_empty() {
            break;
        }
        for r in sweep_chunk(start, &buf, cfg) {
            for rec in &r.records {
                writeln!(out, "{rec}")?;
            }
            summary.add(&r.counts);
        }
        start += buf.len();
    }
    writeln!(out, "{}", summary.to_json())?;
    out.flush()?;
    Ok(summary)
}

fn sweep_chunk(start: usize, lines: &[String], cfg: &RunConfig) -> Vec<LineReport> {
    par_map(lines, cfg.jobs, |i, line| sweep_line(start + i, line, cfg))
}

/// Processes one graph6 line; `index` is zero-based and seeds the run.
pub fn sweep_line(index: usize, line: &str, cfg: &RunConfig) -> LineReport {
    let mut counts = SweepSummary::default();
    let text = line.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    if text.is_empty() {
        return LineReport {
            records: Vec::new(),
            counts,
        };
    }
    counts.lines = 1;
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => {
            counts.malformed = 1;
            return LineReport {
                records: vec![json!({ "line": index + 1, "error": e.to_string() })],
                counts,
            };
        }
    };
    let seed = cfg.seed.wrapping_add(index as u64);
    let mut records = Vec::new();
    if cfg.per_component && !g.is_connected() {
        for (k, comp) in g.connected_components().iter().enumerate() {
            let (h, _) = g.induced(comp);
            let mut rec = graph_record(&h, &emit_graph6(&h), seed, cfg, &mut counts);
            rec["line"] = json!(index + 1);
            rec["component"] = json!(k);
            records.push(rec);
        }
    } else {
        records.push(graph_record(&g, text, seed, cfg, &mut counts));
    }
    LineReport { records, counts }
}

fn graph_record(
    g: &Graph,
    g6: &str,
    seed: u64,
    cfg: &RunConfig,
    counts: &mut SweepSummary,
) -> Value {
    let t = Instant::now();
    let mut rec = json!({ "graph6": g6, "n": g.n(), "m": g.m() });
    let millis = |t: Instant| {
        if cfg.record_timings {
            t.elapsed().as_millis() as u64
        } else {
            0
        }
    };
    if let Err(e) = check_scope(g) {
        counts.skipped += 1;
        rec["verdict"] = json!("skipped");
        rec["reason"] = json!(e.to_string());
        rec["millis"] = json!(millis(t));
        return rec;
    }
    let run = RunConfig {
        seed,
        ..cfg.clone()
    };
    let verdict = match classify(g, &run) {
        Ok(res) => {
            let body = res.to_json(cfg.trace);
            if let (Value::Object(dst), Value::Object(src)) = (&mut rec, body) {
                dst.extend(src);
            }
            res.verdict
        }
        Err(e) => {
            counts.errors += 1;
            rec["verdict"] = json!("skipped");
            rec["error"] = json!(e.to_string());
            rec["millis"] = json!(millis(t));
            return rec;
        }
    };
    match verdict {
        Verdict::Class1 => counts.class1 += 1,
        Verdict::Class2 => {
            counts.class2 += 1;
            if !g.is_k5_minus_e() {
                counts.unexpected_class2 += 1;
            }
        }
    }
    if g.n() <= cfg.oracle_cutoff {
        rec["oracle"] = oracle_checks(g, verdict, cfg, counts);
    }
    rec["millis"] = json!(millis(t));
    rec
}

/// χ′ from the exact oracle against the verdict; for class-2 graphs also
/// criticality, the adjacency bound and the structure of class-2 members.
fn oracle_checks(g: &Graph, verdict: Verdict, cfg: &RunConfig, counts: &mut SweepSummary) -> Value {
    let ci = match chromatic_index(g, &cfg.budget) {
        Ok(r) => r.value,
        Err(e) => {
            counts.errors += 1;
            return json!({ "error": e.to_string() });
        }
    };
    counts.oracle_checked += 1;
    let agrees = (ci == 4) == (verdict == Verdict::Class1);
    if !agrees {
        counts.oracle_mismatches += 1;
    }
    let mut out = json!({ "chromatic_index": ci, "agrees": agrees });
    if ci == 5 {
        match (
            is_critical(g, &cfg.budget),
            check_hz_lemma(g, 4, &cfg.budget),
        ) {
            (Ok(critical), Ok(hz)) => {
                out["critical"] = json!(critical);
                out["hz"] = json!(hz);
                if !hz {
                    counts.hz_violations += 1;
                }
                if critical {
                    counts.critical += 1;
                    let val = check_val(g);
                    out["val"] = json!(val);
                    if !val {
                        counts.val_violations += 1;
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                counts.errors += 1;
                out["error"] = json!(e.to_string());
            }
        }
    }
    out
}
