//! Python bindings for the tied braid kernel.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tiedbraid::equivalence::Verdict;
use tiedbraid::moves;
use tiedbraid::words::WordFile;
use tiedbraid::{closure_summary, monoid_verdict, normal_form, permutation, scan_semantics, Context, Flavor, Sign, TiedWord};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sign(s: i32) -> PyResult<Sign> {
    match s {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => Err(PyValueError::new_err(format!("sign must be +1 or -1, got {s}"))),
    }
}

fn strands(classes: &[Vec<tiedbraid::Strand>]) -> Vec<Vec<String>> {
    classes.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect()
}

#[pyclass(name = "Context", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyContext {
    inner: Context,
}

#[pymethods]
impl PyContext {
    /// `flavor` is one of s3, st, lens, hb, unlink.
    #[new]
    #[pyo3(signature = (g, n, flavor, p=None))]
    fn new(g: usize, n: usize, flavor: &str, p: Option<u32>) -> PyResult<Self> {
        let flavor = Flavor::from_tag(flavor).ok_or_else(|| err(format!("unknown flavor `{flavor}`")))?;
        Ok(PyContext { inner: Context::new(g, n, flavor, p).map_err(err)? })
    }

    /// Parses a header such as `%ctx g=1 n=2 M=lens p=3`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyContext { inner: text.parse().map_err(err)? })
    }

    #[getter]
    fn g(&self) -> usize {
        self.inner.g()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn flavor(&self) -> &'static str {
        self.inner.flavor().tag()
    }

    #[getter]
    fn p(&self) -> Option<u32> {
        self.inner.p()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Context({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "Word", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord {
    inner: TiedWord,
}

impl From<TiedWord> for PyWord {
    fn from(inner: TiedWord) -> Self {
        PyWord { inner }
    }
}

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str, ctx: &PyContext) -> PyResult<Self> {
        Ok(TiedWord::parse(text, ctx.inner).map_err(err)?.into())
    }

    #[getter]
    fn ctx(&self) -> PyContext {
        PyContext { inner: *self.inner.ctx() }
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    fn letters(&self) -> Vec<String> {
        self.inner.letters().iter().map(|l| l.to_string()).collect()
    }

    fn has_ties(&self) -> bool {
        self.inner.has_ties()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?}, {:?})", self.inner.render(), self.inner.ctx().to_string())
    }

    fn __mul__(&self, other: &PyWord) -> PyResult<PyWord> {
        Ok(self.inner.compose(&other.inner).map_err(err)?.into())
    }

    /// Inverse of a tie-free word; `None` when the word has ties.
    fn inverse(&self) -> Option<PyWord> {
        self.inner.inverse().map(PyWord::from)
    }

    /// Images of 1..n under the strand permutation.
    fn permutation(&self) -> Vec<usize> {
        permutation(&self.inner).images().to_vec()
    }

    /// Tie partition by top labels, e.g. `[["F1", "M2"], ["M1"]]`.
    fn partition(&self) -> Vec<Vec<String>> {
        strands(scan_semantics(&self.inner).partition.classes())
    }

    /// `(braid_part, tie_classes)` with tie classes labelled at the bottom.
    fn normal_form(&self) -> (PyWord, Vec<Vec<String>>) {
        let nf = normal_form(&self.inner);
        let ties = nf.tie_part.tied_classes().map(|c| c.iter().map(|s| s.to_string()).collect()).collect();
        (nf.braid_part.clone().into(), ties)
    }

    fn normalized(&self) -> PyWord {
        normal_form(&self.inner).reconstruct().into()
    }

    /// The line-oriented closure report, or the one-line record.
    #[pyo3(signature = (record=false))]
    fn closure(&self, record: bool) -> String {
        let summary = closure_summary(&self.inner);
        if record {
            summary.record()
        } else {
            summary.report()
        }
    }

    /// `EQUAL`, `DIFFER(<witness>)` or `UNDECIDED(budget)`.
    #[pyo3(signature = (other, budget=tiedbraid::DEFAULT_BUDGET))]
    fn verdict(&self, other: &PyWord, budget: u64) -> PyResult<String> {
        Ok(monoid_verdict(&self.inner, &other.inner, budget).map_err(err)?.to_string())
    }

    /// Monoid equality; `None` when the budget runs out.
    #[pyo3(signature = (other, budget=tiedbraid::DEFAULT_BUDGET))]
    fn equals(&self, other: &PyWord, budget: u64) -> PyResult<Option<bool>> {
        Ok(match monoid_verdict(&self.inner, &other.inner, budget).map_err(err)? {
            Verdict::Equal => Some(true),
            Verdict::Differ(_) => Some(false),
            Verdict::Undecided => None,
        })
    }

    fn conjugate(&self, i: usize, s: i32) -> PyResult<PyWord> {
        Ok(moves::conjugate(&self.inner, i, sign(s)?).map_err(err)?.into())
    }

    fn loop_conjugate(&self, k: usize, s: i32) -> PyResult<PyWord> {
        Ok(moves::loop_conjugate(&self.inner, k, sign(s)?).map_err(err)?.into())
    }

    fn stabilize(&self, s: i32) -> PyResult<PyWord> {
        Ok(moves::stabilize(&self.inner, sign(s)?).map_err(err)?.into())
    }

    fn destabilize(&self) -> PyResult<PyWord> {
        Ok(moves::destabilize(&self.inner).map_err(err)?.into())
    }

    /// L-move inserting `σ_n^{±1}` between the first `split` letters and the rest.
    fn l_move(&self, split: usize, s: i32) -> PyResult<PyWord> {
        if split > self.inner.len() {
            return Err(err(format!("split {split} beyond word length {}", self.inner.len())));
        }
        let ctx = *self.inner.ctx();
        let w1 = TiedWord::new(ctx, self.inner.letters()[..split].to_vec()).map_err(err)?;
        let w2 = TiedWord::new(ctx, self.inner.letters()[split..].to_vec()).map_err(err)?;
        Ok(moves::algebraic_l_move(&w1, &w2, sign(s)?).map_err(err)?.into())
    }

    fn add_tie(&self, i: usize, j: usize) -> PyResult<PyWord> {
        Ok(moves::add_tie(&self.inner, i, j).map_err(err)?.0.into())
    }

    fn add_fixed_tie(&self, k: usize, j: usize) -> PyResult<PyWord> {
        Ok(moves::add_fixed_tie(&self.inner, k, j).map_err(err)?.0.into())
    }

    fn t_bbm(&self, s: i32) -> PyResult<PyWord> {
        Ok(moves::t_bbm(&self.inner, sign(s)?).map_err(err)?.into())
    }

    #[pyo3(signature = (format="ascii"))]
    fn draw(&self, format: &str) -> PyResult<String> {
        match format {
            "ascii" => Ok(tiedbraid::draw::ascii(&self.inner)),
            "svg" => Ok(tiedbraid::draw::svg(&self.inner)),
            _ => Err(err(format!("unknown format `{format}`"))),
        }
    }
}

/// Parses a word file into its header context and words. `ctx` overrides
/// the header.
#[pyfunction]
#[pyo3(signature = (text, ctx=None))]
fn parse_file(text: &str, ctx: Option<&PyContext>) -> PyResult<(PyContext, Vec<PyWord>)> {
    let file = WordFile::parse(text).map_err(err)?;
    let ctx = ctx.map(|c| c.inner).or(file.ctx).ok_or_else(|| err("no context header"))?;
    let words = file.words(ctx).map_err(err)?;
    Ok((PyContext { inner: ctx }, words.into_iter().map(PyWord::from).collect()))
}

/// Ids of the relations admitted by `ctx`.
#[pyfunction]
fn relations(ctx: &PyContext) -> PyResult<Vec<&'static str>> {
    let catalog = tiedbraid::relation_catalog(&ctx.inner).map_err(err)?;
    Ok(catalog.relations().iter().map(|r| r.id).collect())
}

/// Runs the command-line front end: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = tiedbraid::cli::execute(std::iter::once("tbm".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
#[pyo3(name = "tiedbraid")]
fn tiedbraid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(parse_file, m)?)?;
    m.add_function(wrap_pyfunction!(relations, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("DEFAULT_BUDGET", tiedbraid::DEFAULT_BUDGET)?;
    Ok(())
}
