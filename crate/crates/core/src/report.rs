//! Thresholds, corpus summaries and report rendering.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dictionary::Origin;
use crate::engine::{analyze_requirement, AnalysisConfig, MetricVector};
use crate::ingest::{ColumnMapping, Corpus};
use crate::metric::Metric;

pub const TOOL_NAME: &str = "reqsmell";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const DEGENERATE_WARNING: &str = "requirement text contains no words; all metrics are zero";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Gt,
    Ge,
}

impl Comparator {
    pub fn holds(self, value: f64, limit: f64) -> bool {
        match self {
            Comparator::Gt => value > limit,
            Comparator::Ge => value >= limit,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Comparator::Gt => ">",
            Comparator::Ge => ">=",
        }
    }
}

impl Serialize for Comparator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Flags a requirement when `metric comparator limit` holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdRule {
    pub metric: Metric,
    #[serde(rename = "op")]
    pub comparator: Comparator,
    pub limit: f64,
}

impl fmt::Display for ThresholdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.metric, self.comparator.as_str(), self.limit)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ThresholdError {
    #[error("line {line}: unknown metric `{name}`")]
    UnknownMetric { line: usize, name: String },
    #[error("line {line}: expected `METRIC > LIMIT` or `METRIC >= LIMIT`")]
    Syntax { line: usize },
    #[error("line {line}: invalid limit `{value}`")]
    InvalidLimit { line: usize, value: String },
    #[error("line {line}: second rule for {metric}")]
    DuplicateRule { line: usize, metric: Metric },
    #[error("cannot read threshold file {path}: {message}")]
    Io { path: String, message: String },
}

impl ThresholdRule {
    fn parse_line(line: &str, line_no: usize) -> Result<ThresholdRule, ThresholdError> {
        let (name, rest) = line.split_once('>').ok_or(ThresholdError::Syntax { line: line_no })?;
        let name = name.trim();
        let (comparator, limit) = match rest.strip_prefix('=') {
            Some(limit) => (Comparator::Ge, limit.trim()),
            None => (Comparator::Gt, rest.trim()),
        };
        if name.is_empty() || limit.is_empty() {
            return Err(ThresholdError::Syntax { line: line_no });
        }
        let metric = Metric::from_str(name).map_err(|_| ThresholdError::UnknownMetric {
            line: line_no,
            name: name.to_string(),
        })?;
        let value = limit
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| ThresholdError::InvalidLimit {
                line: line_no,
                value: limit.to_string(),
            })?;
        Ok(ThresholdRule { metric, comparator, limit: value })
    }
}

/// Parses a threshold file: one `METRIC OP LIMIT` rule per line, `#` comments.
pub fn parse_thresholds(source: &str) -> Result<Vec<ThresholdRule>, ThresholdError> {
    let mut rules: Vec<ThresholdRule> = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rule = ThresholdRule::parse_line(line, idx + 1)?;
        if rules.iter().any(|r| r.metric == rule.metric) {
            return Err(ThresholdError::DuplicateRule { line: idx + 1, metric: rule.metric });
        }
        rules.push(rule);
    }
    Ok(rules)
}

pub fn load_thresholds(path: impl AsRef<Path>) -> Result<Vec<ThresholdRule>, ThresholdError> {
    let path = path.as_ref();
    let source = fs::read_to_string(path).map_err(|e| ThresholdError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_thresholds(&source)
}

/// Metrics whose rule is violated, in report order.
pub fn apply_thresholds(vector: &MetricVector, rules: &[ThresholdRule]) -> Vec<Metric> {
    let mut flags: Vec<Metric> = rules
        .iter()
        .filter(|r| r.comparator.holds(vector.value(r.metric), r.limit))
        .map(|r| r.metric)
        .collect();
    flags.sort();
    flags.dedup();
    flags
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DictionarySnapshot {
    pub metric: Metric,
    pub origin: Origin,
    pub patterns: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnsSnapshot {
    pub id_column: String,
    pub text_column: String,
    pub delimiter: String,
}

impl From<&ColumnMapping> for ColumnsSnapshot {
    fn from(m: &ColumnMapping) -> Self {
        ColumnsSnapshot {
            id_column: m.id_column.clone(),
            text_column: m.text_column.clone(),
            delimiter: m.delimiter.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigSnapshot {
    pub dictionaries: Vec<DictionarySnapshot>,
    pub thresholds: Vec<ThresholdRule>,
    pub columns: ColumnsSnapshot,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
}

/// One analyzed requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub id: String,
    pub vector: MetricVector,
    pub flags: Vec<Metric>,
    pub warnings: Vec<String>,
}

struct MetricsView<'a>(&'a MetricVector);

impl Serialize for MetricsView<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        let mut s = serializer.serialize_struct("Metrics", 9)?;
        s.serialize_field("V", &v.v)?;
        s.serialize_field("NR1", &v.nr1)?;
        s.serialize_field("NR2", &v.nr2)?;
        s.serialize_field("O", &v.o)?;
        s.serialize_field("S", &v.s)?;
        s.serialize_field("W", &v.w)?;
        s.serialize_field("NC", &v.nc)?;
        s.serialize_field("NW", &v.nw)?;
        s.serialize_field("ARI", &v.ari)?;
        s.end()
    }
}

#[derive(Serialize)]
struct SpanView<'a> {
    metric: Metric,
    phrase: &'a str,
    start: usize,
    end: usize,
}

impl Serialize for ReportEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let spans: Vec<SpanView> = self
            .vector
            .spans
            .iter()
            .map(|s| SpanView {
                metric: s.metric,
                phrase: &s.phrase,
                start: s.token_range.start,
                end: s.token_range.end,
            })
            .collect();
        let mut s = serializer.serialize_struct("Requirement", 5)?;
        s.serialize_field("id", &self.id)?;
        s.serialize_field("metrics", &MetricsView(&self.vector))?;
        s.serialize_field("spans", &spans)?;
        s.serialize_field("flags", &self.flags)?;
        s.serialize_field("warnings", &self.warnings)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct MetricStats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub requirements: usize,
    pub flagged: usize,
    pub degenerate: usize,
    /// Statistics over non-degenerate entries, in [`Metric::ALL`] order.
    pub metrics: Vec<(Metric, MetricStats)>,
    pub warnings: Vec<String>,
}

impl Summary {
    pub fn stats(&self, metric: Metric) -> MetricStats {
        self.metrics
            .iter()
            .find(|(m, _)| *m == metric)
            .map(|(_, s)| *s)
            .unwrap_or_default()
    }
}

impl Serialize for Summary {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct StatsMap<'a>(&'a [(Metric, MetricStats)]);
        impl Serialize for StatsMap<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_map(self.0.iter().map(|(m, s)| (m.as_str(), s)))
            }
        }
        let mut s = serializer.serialize_struct("Summary", 5)?;
        s.serialize_field("requirements", &self.requirements)?;
        s.serialize_field("flagged", &self.flagged)?;
        s.serialize_field("degenerate", &self.degenerate)?;
        s.serialize_field("metrics", &StatsMap(&self.metrics))?;
        s.serialize_field("warnings", &self.warnings)?;
        s.end()
    }
}

pub fn summarize(entries: &[ReportEntry]) -> Summary {
    let live: Vec<&ReportEntry> = entries.iter().filter(|e| !e.vector.degenerate).collect();
    let metrics = Metric::ALL
        .into_iter()
        .map(|m| {
            let values: Vec<f64> = live.iter().map(|e| e.vector.value(m)).collect();
            let stats = if values.is_empty() {
                MetricStats::default()
            } else {
                MetricStats {
                    min: values.iter().copied().fold(f64::INFINITY, f64::min),
                    mean: values.iter().sum::<f64>() / values.len() as f64,
                    max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                }
            };
            (m, stats)
        })
        .collect();
    Summary {
        requirements: entries.len(),
        flagged: entries.iter().filter(|e| !e.flags.is_empty()).count(),
        degenerate: entries.len() - live.len(),
        metrics,
        warnings: Vec::new(),
    }
}

/// The complete result of one run. Serializes to the JSON report schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub config: ConfigSnapshot,
    pub summary: Summary,
    pub requirements: Vec<ReportEntry>,
}

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    pub mapping: ColumnMapping,
    /// Adds a generation time to the configuration snapshot.
    pub timestamp: bool,
}

/// Analyzes every requirement of `corpus` and assembles the report.
pub fn build_report(
    corpus: &Corpus,
    config: &AnalysisConfig,
    rules: &[ThresholdRule],
    options: &ReportOptions,
) -> AnalysisReport {
    let requirements: Vec<ReportEntry> = corpus
        .requirements
        .par_iter()
        .map(|r| {
            let vector = analyze_requirement(r, config);
            let flags = apply_thresholds(&vector, rules);
            let warnings = if vector.degenerate {
                vec![DEGENERATE_WARNING.to_string()]
            } else {
                Vec::new()
            };
            ReportEntry { id: r.id.clone(), vector, flags, warnings }
        })
        .collect();
    let mut summary = summarize(&requirements);
    summary.warnings = corpus.warnings.clone();
    let dictionaries = config
        .dictionaries()
        .iter()
        .map(|d| DictionarySnapshot {
            metric: d.metric(),
            origin: d.origin(),
            patterns: d.patterns().len(),
        })
        .collect();
    let mut thresholds = rules.to_vec();
    thresholds.sort_by_key(|r| r.metric);
    AnalysisReport {
        tool: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
        config: ConfigSnapshot {
            dictionaries,
            thresholds,
            columns: (&options.mapping).into(),
            generated_at: options.timestamp.then(|| {
                chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
            }),
        },
        summary,
        requirements,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format `{other}` (expected json, csv or table)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("cannot write report: {0}")]
    Serialization(String),
}

impl From<std::io::Error> for ReportError {
    fn from(e: std::io::Error) -> Self {
        ReportError::Serialization(e.to_string())
    }
}

/// Shortest round-trip representation, identical to the JSON rendering.
fn real(value: f64) -> String {
    serde_json::to_string(&value).unwrap_or_else(|_| "null".to_string())
}

fn flag_list(flags: &[Metric]) -> String {
    flags.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(";")
}

pub const CSV_HEADER: [&str; 11] =
    ["id", "V", "NR1", "NR2", "O", "S", "W", "NC", "NW", "ARI", "flags"];

fn render_csv(report: &AnalysisReport, out: &mut dyn Write) -> Result<(), ReportError> {
    let mut writer = csv::Writer::from_writer(out);
    let ser = |e: csv::Error| ReportError::Serialization(e.to_string());
    writer.write_record(CSV_HEADER).map_err(ser)?;
    for e in &report.requirements {
        let v = &e.vector;
        let mut row = vec![e.id.clone()];
        row.extend(
            [v.v, v.nr1, v.nr2, v.o, v.s, v.w, v.nc, v.nw]
                .iter()
                .map(ToString::to_string),
        );
        row.push(real(v.ari));
        row.push(flag_list(&e.flags));
        writer.write_record(&row).map_err(ser)?;
    }
    writer.flush()?;
    Ok(())
}

fn render_table(report: &AnalysisReport, out: &mut dyn Write) -> Result<(), ReportError> {
    let mut rows: Vec<Vec<String>> = vec![CSV_HEADER.iter().map(|h| h.to_string()).collect()];
    for e in &report.requirements {
        let v = &e.vector;
        let mut row = vec![e.id.clone()];
        row.extend(
            [v.v, v.nr1, v.nr2, v.o, v.s, v.w, v.nc, v.nw]
                .iter()
                .map(ToString::to_string),
        );
        row.push(format!("{:.2}", v.ari));
        let mut notes = flag_list(&e.flags).replace(';', ",");
        if v.degenerate {
            notes.push_str(if notes.is_empty() { "(empty)" } else { " (empty)" });
        }
        row.push(notes);
        rows.push(row);
    }
    let widths: Vec<usize> = (0..CSV_HEADER.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            match c {
                0 => line.push_str(&format!("{cell}{}", " ".repeat(pad))),
                10 => line.push_str(&format!("  {cell}")),
                _ => line.push_str(&format!("  {}{cell}", " ".repeat(pad))),
            }
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    let s = &report.summary;
    writeln!(out)?;
    writeln!(
        out,
        "{} requirements, {} flagged, {} empty",
        s.requirements, s.flagged, s.degenerate
    )?;
    for (m, st) in &s.metrics {
        writeln!(out, "{:<4} min {:>8.2}  mean {:>8.2}  max {:>8.2}", m.as_str(), st.min, st.mean, st.max)?;
    }
    for w in &s.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

pub fn render(report: &AnalysisReport, format: Format, out: &mut dyn Write) -> Result<(), ReportError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)
                .map_err(|e| ReportError::Serialization(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => render_csv(report, out)?,
        Format::Table => render_table(report, out)?,
    }
    out.flush()?;
    Ok(())
}

pub fn render_to_vec(report: &AnalysisReport, format: Format) -> Result<Vec<u8>, ReportError> {
    let mut buf = Vec::new();
    render(report, format, &mut buf)?;
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::analyze_text;
    use crate::ingest::{read_requirements, Requirement};
    use proptest::prelude::*;

    fn rule(metric: Metric, comparator: Comparator, limit: f64) -> ThresholdRule {
        ThresholdRule { metric, comparator, limit }
    }

    fn entry(id: &str, vector: MetricVector) -> ReportEntry {
        ReportEntry { id: id.to_string(), vector, flags: Vec::new(), warnings: Vec::new() }
    }

    #[test]
    fn comparator_semantics() {
        let v = MetricVector { v: 5, ari: 30.0, ..Default::default() };
        assert_eq!(apply_thresholds(&v, &[rule(Metric::V, Comparator::Ge, 3.0)]), [Metric::V]);
        assert!(apply_thresholds(&v, &[]).is_empty());
        assert!(apply_thresholds(&v, &[rule(Metric::ARI, Comparator::Gt, 30.0)]).is_empty());
        assert_eq!(apply_thresholds(&v, &[rule(Metric::ARI, Comparator::Ge, 30.0)]), [Metric::ARI]);
    }

    #[test]
    fn flags_follow_metric_order() {
        let v = MetricVector { v: 1, nw: 9, ..Default::default() };
        let rules = [rule(Metric::NW, Comparator::Gt, 1.0), rule(Metric::V, Comparator::Gt, 0.0)];
        assert_eq!(apply_thresholds(&v, &rules), [Metric::V, Metric::NW]);
    }

    #[test]
    fn parse_threshold_file() {
        let rules = parse_thresholds("# limits\nV >= 3\nARI>30.5 # strict\n\nNW > 40\n").unwrap();
        assert_eq!(
            rules,
            [
                rule(Metric::V, Comparator::Ge, 3.0),
                rule(Metric::ARI, Comparator::Gt, 30.5),
                rule(Metric::NW, Comparator::Gt, 40.0),
            ]
        );
    }

    #[test]
    fn threshold_errors() {
        assert_eq!(parse_thresholds("X >= 1").unwrap_err(), ThresholdError::UnknownMetric { line: 1, name: "X".into() });
        assert_eq!(parse_thresholds("V = 1").unwrap_err(), ThresholdError::Syntax { line: 1 });
        assert_eq!(parse_thresholds("V >=").unwrap_err(), ThresholdError::Syntax { line: 1 });
        assert_eq!(parse_thresholds("V > -1").unwrap_err(), ThresholdError::InvalidLimit { line: 1, value: "-1".into() });
        assert_eq!(parse_thresholds("V > many").unwrap_err(), ThresholdError::InvalidLimit { line: 1, value: "many".into() });
        assert_eq!(
            parse_thresholds("V > 1\nV >= 2").unwrap_err(),
            ThresholdError::DuplicateRule { line: 2, metric: Metric::V }
        );
    }

    #[test]
    fn summary_statistics() {
        let entries: Vec<ReportEntry> = [0, 2, 4]
            .iter()
            .map(|&v| entry("r", MetricVector { v, ..Default::default() }))
            .collect();
        let s = summarize(&entries);
        assert_eq!(s.stats(Metric::V), MetricStats { min: 0.0, mean: 2.0, max: 4.0 });
        assert_eq!(s.requirements, 3);
    }

    #[test]
    fn empty_and_degenerate_summaries() {
        let s = summarize(&[]);
        assert_eq!(s.requirements, 0);
        assert!(s.metrics.iter().all(|(_, st)| *st == MetricStats::default()));

        let s = summarize(&[entry("r", MetricVector { degenerate: true, ..Default::default() })]);
        assert_eq!(s.degenerate, 1);
        assert!(s.metrics.iter().all(|(_, st)| *st == MetricStats::default()));
    }

    fn sample_report() -> AnalysisReport {
        let corpus = read_requirements(
            "ID,Text\nR1,The system may be able to log events.\nR7,\"Some users could, if adequate, see the reference.\"\nR9,\n"
                .as_bytes(),
            &ColumnMapping::default(),
        )
        .unwrap();
        build_report(
            &corpus,
            &AnalysisConfig::default(),
            &[rule(Metric::V, Comparator::Ge, 3.0)],
            &ReportOptions::default(),
        )
    }

    #[test]
    fn csv_has_one_row_per_requirement() {
        let report = sample_report();
        let csv = String::from_utf8(render_to_vec(&report, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert_eq!(csv.lines().next().unwrap(), "id,V,NR1,NR2,O,S,W,NC,NW,ARI,flags");
    }

    #[test]
    fn json_schema_and_flags() {
        let report = sample_report();
        let json: serde_json::Value =
            serde_json::from_slice(&render_to_vec(&report, Format::Json).unwrap()).unwrap();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["tool", "version", "config", "summary", "requirements"]);
        let r7 = &json["requirements"][1];
        assert_eq!(r7["id"], "R7");
        assert_eq!(r7["flags"], serde_json::json!(["V"]));
        let metric_keys: Vec<&String> = r7["metrics"].as_object().unwrap().keys().collect();
        assert_eq!(metric_keys, ["V", "NR1", "NR2", "O", "S", "W", "NC", "NW", "ARI"]);
        let span_keys: Vec<&String> = r7["spans"][0].as_object().unwrap().keys().collect();
        assert_eq!(span_keys, ["metric", "phrase", "start", "end"]);
        assert_eq!(json["requirements"][2]["warnings"][0], DEGENERATE_WARNING);
        assert!(json["config"].get("generated_at").is_none());
    }

    #[test]
    fn render_is_deterministic() {
        for format in [Format::Json, Format::Csv, Format::Table] {
            let a = render_to_vec(&sample_report(), format).unwrap();
            let b = render_to_vec(&sample_report(), format).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn timestamp_is_opt_in() {
        let corpus = Corpus {
            requirements: vec![Requirement { id: "a".into(), text: "x".into(), row: 2, extra: vec![] }],
            warnings: vec![],
        };
        let options = ReportOptions { timestamp: true, ..Default::default() };
        let report = build_report(&corpus, &AnalysisConfig::default(), &[], &options);
        assert!(report.config.generated_at.is_some());
    }

    #[test]
    fn unwritable_sink() {
        struct Broken;
        impl Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("closed"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        for format in [Format::Json, Format::Csv, Format::Table] {
            assert!(matches!(render(&sample_report(), format, &mut Broken), Err(ReportError::Serialization(_))));
        }
    }

    #[test]
    fn csv_and_json_agree() {
        let report = sample_report();
        let json: serde_json::Value =
            serde_json::from_slice(&render_to_vec(&report, Format::Json).unwrap()).unwrap();
        let csv = render_to_vec(&report, Format::Csv).unwrap();
        let mut reader = csv::Reader::from_reader(csv.as_slice());
        for (i, row) in reader.records().enumerate() {
            let row = row.unwrap();
            let entry = &json["requirements"][i];
            assert_eq!(&row[0], entry["id"].as_str().unwrap());
            for (c, name) in CSV_HEADER[1..10].iter().enumerate() {
                let from_csv: f64 = row[c + 1].parse().unwrap();
                assert_eq!(from_csv, entry["metrics"][*name].as_f64().unwrap(), "{name}");
            }
        }
    }

    fn arb_vector() -> impl Strategy<Value = MetricVector> {
        (proptest::collection::vec(0usize..8, 8), 0.0f64..80.0).prop_map(|(c, ari)| MetricVector {
            v: c[0],
            nr1: c[1],
            nr2: c[2],
            o: c[3],
            s: c[4],
            w: c[5],
            nc: c[6],
            nw: c[7],
            ari,
            ..Default::default()
        })
    }

    fn arb_rules() -> impl Strategy<Value = Vec<ThresholdRule>> {
        proptest::sample::subsequence(Metric::ALL.to_vec(), 0..=9).prop_flat_map(|metrics| {
            let n = metrics.len();
            (Just(metrics), proptest::collection::vec((any::<bool>(), 0u32..80), n)).prop_map(|(ms, params)| {
                ms.into_iter()
                    .zip(params)
                    .map(|(metric, (ge, lim))| ThresholdRule {
                        metric,
                        comparator: if ge { Comparator::Ge } else { Comparator::Gt },
                        limit: if metric == Metric::ARI { f64::from(lim) } else { f64::from(lim % 8) },
                    })
                    .collect()
            })
        })
    }

    proptest! {
        #[test]
        fn flags_are_sound_and_complete(v in arb_vector(), rules in arb_rules()) {
            let flags = apply_thresholds(&v, &rules);
            for m in Metric::ALL {
                let value = match m {
                    Metric::V => v.v as f64, Metric::NR1 => v.nr1 as f64, Metric::NR2 => v.nr2 as f64,
                    Metric::O => v.o as f64, Metric::S => v.s as f64, Metric::W => v.w as f64,
                    Metric::NC => v.nc as f64, Metric::NW => v.nw as f64, Metric::ARI => v.ari,
                };
                let violated = rules.iter().any(|r| r.metric == m && match r.comparator {
                    Comparator::Gt => value > r.limit,
                    Comparator::Ge => value >= r.limit,
                });
                prop_assert_eq!(flags.contains(&m), violated);
            }
        }

        #[test]
        fn summary_recomputes_from_entries(texts in proptest::collection::vec("[a-z .]{0,30}", 0..8)) {
            let config = AnalysisConfig::default();
            let entries: Vec<ReportEntry> = texts.iter().map(|t| entry("x", analyze_text(t, &config))).collect();
            let s = summarize(&entries);
            let live: Vec<&ReportEntry> = entries.iter().filter(|e| !e.vector.degenerate).collect();
            prop_assert_eq!(s.degenerate, entries.len() - live.len());
            for m in Metric::ALL {
                let st = s.stats(m);
                for e in &live {
                    prop_assert!(st.min <= e.vector.value(m) && e.vector.value(m) <= st.max);
                }
                if !live.is_empty() {
                    let total: f64 = live.iter().map(|e| e.vector.value(m)).sum();
                    prop_assert!((st.mean * live.len() as f64 - total).abs() < 1e-9);
                }
            }
        }
    }
}
