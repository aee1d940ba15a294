//! Python bindings.
//!
//! ```python
//! import reqsmell
//! analyzer = reqsmell.Analyzer()
//! v = analyzer.analyze("The system may fail based on some conditions.")
//! assert v.V == 3
//! ```

use std::collections::BTreeMap;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use reqsmell_core::dictionary::DictionaryError;
use reqsmell_core::ingest::IngestError;
use reqsmell_core::report::{build_report, render_to_vec, ReportOptions, ThresholdError};
use reqsmell_core::{
    AnalysisConfig, ColumnMapping, DictionarySet, Format, Metric, MetricVector as CoreVector,
};

fn dictionary_err(e: DictionaryError) -> PyErr {
    match e {
        DictionaryError::Io { .. } => PyOSError::new_err(e.to_string()),
        DictionaryError::Malformed { .. } => PyValueError::new_err(e.to_string()),
    }
}

fn ingest_err(e: IngestError) -> PyErr {
    match e {
        IngestError::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn threshold_err(e: ThresholdError) -> PyErr {
    match e {
        ThresholdError::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_metric(name: &str) -> PyResult<Metric> {
    name.parse().map_err(|e: reqsmell_core::metric::UnknownMetric| PyValueError::new_err(e.to_string()))
}

/// NFC composition plus Unicode case folding.
#[pyfunction]
fn normalize(text: &str) -> String {
    reqsmell_core::normalize(text)
}

/// Normalized word tokens of `text`.
#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    reqsmell_core::tokenize(&reqsmell_core::normalize(text))
        .into_iter()
        .map(|t| t.text)
        .collect()
}

/// Sentences of `text`, each as its list of tokens.
#[pyfunction]
fn split_sentences(text: &str) -> Vec<Vec<String>> {
    let norm = reqsmell_core::normalize(text);
    let tokens = reqsmell_core::tokenize(&norm);
    reqsmell_core::split_sentences(&norm, &tokens)
        .into_iter()
        .map(|s| tokens[s.token_range].iter().map(|t| t.text.clone()).collect())
        .collect()
}

/// Builtin keyword lists keyed by metric name.
#[pyfunction]
fn builtin_dictionaries() -> BTreeMap<String, Vec<String>> {
    dictionary_map(&reqsmell_core::builtin_dictionaries())
}

fn dictionary_map(set: &DictionarySet) -> BTreeMap<String, Vec<String>> {
    set.iter().map(|d| (d.metric().to_string(), d.phrases())).collect()
}

/// Threshold violations of `vector` under the rules in `rules`
/// (threshold file syntax).
#[pyfunction]
fn apply_thresholds(vector: &MetricVector, rules: &str) -> PyResult<Vec<String>> {
    let rules = reqsmell_core::parse_thresholds(rules).map_err(threshold_err)?;
    Ok(reqsmell_core::apply_thresholds(&vector.inner, &rules)
        .into_iter()
        .map(|m| m.to_string())
        .collect())
}

/// Runs the command-line tool in-process and returns its exit code.
#[pyfunction]
fn run_cli(argv: Vec<String>) -> i32 {
    let args = std::iter::once("reqsmell".to_string()).chain(argv);
    reqsmell_core::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Metric values of one requirement.
#[pyclass(frozen, module = "reqsmell")]
struct MetricVector {
    inner: CoreVector,
}

#[pymethods]
impl MetricVector {
    #[getter(V)]
    fn v(&self) -> usize {
        self.inner.v
    }
    #[getter(NR1)]
    fn nr1(&self) -> usize {
        self.inner.nr1
    }
    #[getter(NR2)]
    fn nr2(&self) -> usize {
        self.inner.nr2
    }
    #[getter(O)]
    fn o(&self) -> usize {
        self.inner.o
    }
    #[getter(S)]
    fn s(&self) -> usize {
        self.inner.s
    }
    #[getter(W)]
    fn w(&self) -> usize {
        self.inner.w
    }
    #[getter(NC)]
    fn nc(&self) -> usize {
        self.inner.nc
    }
    #[getter(NW)]
    fn nw(&self) -> usize {
        self.inner.nw
    }
    #[getter(ARI)]
    fn ari(&self) -> f64 {
        self.inner.ari
    }
    #[getter]
    fn words_per_sentence(&self) -> f64 {
        self.inner.readability.words_per_sentence
    }
    #[getter]
    fn letters_per_word(&self) -> f64 {
        self.inner.readability.letters_per_word
    }
    #[getter]
    fn degenerate(&self) -> bool {
        self.inner.degenerate
    }

    /// Matches as `(metric, phrase, start, end)` tuples.
    #[getter]
    fn spans(&self) -> Vec<(String, String, usize, usize)> {
        self.inner
            .spans
            .iter()
            .map(|s| (s.metric.to_string(), s.phrase.clone(), s.token_range.start, s.token_range.end))
            .collect()
    }

    /// Value of one metric by name.
    fn get(&self, metric: &str) -> PyResult<f64> {
        Ok(self.inner.value(parse_metric(metric)?))
    }

    /// All nine metrics keyed by name.
    fn as_dict(&self) -> BTreeMap<String, f64> {
        Metric::ALL
            .into_iter()
            .map(|m| (m.to_string(), self.inner.value(m)))
            .collect()
    }

    fn __repr__(&self) -> String {
        let v = &self.inner;
        format!(
            "MetricVector(V={}, NR1={}, NR2={}, O={}, S={}, W={}, NC={}, NW={}, ARI={})",
            v.v, v.nr1, v.nr2, v.o, v.s, v.w, v.nc, v.nw, v.ari
        )
    }
}

/// One loaded requirement.
#[pyclass(frozen, get_all, module = "reqsmell")]
struct Requirement {
    id: String,
    text: String,
    row: usize,
    extra: Vec<(String, String)>,
}

#[pymethods]
impl Requirement {
    fn __repr__(&self) -> String {
        format!("Requirement(id={:?}, row={})", self.id, self.row)
    }
}

/// Loads requirements from a delimited file.
#[pyfunction]
#[pyo3(signature = (path, id_column="ID", text_column="Text", delimiter=','))]
fn load_requirements(path: &str, id_column: &str, text_column: &str, delimiter: char) -> PyResult<Vec<Requirement>> {
    let mapping = ColumnMapping::new(id_column, text_column, delimiter);
    let corpus = reqsmell_core::load_requirements(path, &mapping).map_err(ingest_err)?;
    Ok(corpus
        .requirements
        .into_iter()
        .map(|r| Requirement { id: r.id, text: r.text, row: r.row, extra: r.extra })
        .collect())
}

/// Dictionaries compiled for analysis.
#[pyclass(frozen, module = "reqsmell")]
struct Analyzer {
    config: AnalysisConfig,
}

#[pymethods]
impl Analyzer {
    /// Uses the builtin keyword lists, with sections from the optional
    /// dictionary file replacing them.
    #[new]
    #[pyo3(signature = (dictionaries=None))]
    fn new(dictionaries: Option<&str>) -> PyResult<Self> {
        let set = match dictionaries {
            Some(path) => reqsmell_core::load_dictionary_file(path).map_err(dictionary_err)?,
            None => reqsmell_core::builtin_dictionaries(),
        };
        Ok(Analyzer { config: AnalysisConfig::new(set) })
    }

    /// Same as the constructor, but from dictionary file contents.
    #[staticmethod]
    fn from_source(source: &str) -> PyResult<Self> {
        let set = reqsmell_core::parse_dictionaries(source).map_err(dictionary_err)?;
        Ok(Analyzer { config: AnalysisConfig::new(set) })
    }

    fn analyze(&self, py: Python<'_>, text: &str) -> MetricVector {
        let inner = py.detach(|| reqsmell_core::analyze_text(text, &self.config));
        MetricVector { inner }
    }

    /// Keyword lists in use, keyed by metric name.
    fn dictionaries(&self) -> BTreeMap<String, Vec<String>> {
        dictionary_map(self.config.dictionaries())
    }

    /// Analyzes a requirements file and returns the rendered report.
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (path, id_column="ID", text_column="Text", delimiter=',', thresholds=None, format="json"))]
    fn report(
        &self,
        py: Python<'_>,
        path: &str,
        id_column: &str,
        text_column: &str,
        delimiter: char,
        thresholds: Option<&str>,
        format: &str,
    ) -> PyResult<String> {
        let format: Format = format.parse().map_err(PyValueError::new_err)?;
        let rules = match thresholds {
            Some(src) => reqsmell_core::parse_thresholds(src).map_err(threshold_err)?,
            None => Vec::new(),
        };
        let mapping = ColumnMapping::new(id_column, text_column, delimiter);
        let corpus = reqsmell_core::load_requirements(path, &mapping).map_err(ingest_err)?;
        let options = ReportOptions { mapping, timestamp: false };
        let bytes = py.detach(|| {
            let report = build_report(&corpus, &self.config, &rules, &options);
            render_to_vec(&report, format)
        });
        let bytes = bytes.map_err(|e| PyOSError::new_err(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pymodule]
fn reqsmell(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Analyzer>()?;
    m.add_class::<MetricVector>()?;
    m.add_class::<Requirement>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(split_sentences, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_dictionaries, m)?)?;
    m.add_function(wrap_pyfunction!(load_requirements, m)?)?;
    m.add_function(wrap_pyfunction!(apply_thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
