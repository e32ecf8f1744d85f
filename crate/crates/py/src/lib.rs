//! Python bindings. Values cross the boundary as strings (exact scalars
//! like "-1/3" or "2*sqrt5") and words as lists of generator indices.

use asymhecke::cells::Side;
use asymhecke::coxeter::{CoxeterMatrix, ElemId, Gen, RealizationKind, Word, DEFAULT_ELEMENT_BOUND};
use asymhecke::liftrace::{self, LifMethod};
use asymhecke::ptrace::{self, Engine, LinearTraceSetup};
use asymhecke::Session;
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: asymhecke::Error) -> PyErr {
    use asymhecke::error::Category;
    match e.category() {
        Category::Usage => PyValueError::new_err(e.to_string()),
        Category::Domain => PyRuntimeError::new_err(format!("{}: {e}", e.code())),
        Category::Resource => PyMemoryError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Group", frozen)]
struct PyGroup {
    session: Session,
}

impl PyGroup {
    fn elem(&self, word: Vec<Gen>) -> PyResult<ElemId> {
        self.session.group().id_from_word(&word).map_err(err)
    }

    fn word(&self, w: ElemId) -> Vec<u32> {
        self.session.group().word(w).letters().iter().map(|&s| s as u32).collect()
    }
}

#[pymethods]
impl PyGroup {
    /// A named Coxeter type such as "B3" or "I2:7". `realization` is
    /// "standard" or "crystallographic"; the default picks the latter when possible.
    #[new]
    #[pyo3(signature = (ty, realization=None, bound=DEFAULT_ELEMENT_BOUND))]
    fn new(ty: &str, realization: Option<&str>, bound: usize) -> PyResult<Self> {
        let cm = CoxeterMatrix::preset(ty).map_err(err)?;
        let kind: Option<RealizationKind> = realization.map(str::parse).transpose().map_err(err)?;
        Ok(PyGroup { session: Session::new(cm, kind, bound).map_err(err)? })
    }

    fn order(&self) -> usize {
        self.session.group().order()
    }

    fn rank(&self) -> usize {
        self.session.group().rank()
    }

    fn longest_element(&self) -> Vec<u32> {
        self.word(self.session.group().w0())
    }

    /// The KL polynomial p_{w,y} as a list of (exponent, coefficient) pairs.
    fn kl(&self, w: Vec<Gen>, y: Vec<Gen>) -> PyResult<Vec<(i64, String)>> {
        let p = self.session.kl().p(self.elem(w)?, self.elem(y)?);
        Ok(p.terms().map(|(k, c)| (k as i64, c.to_string())).collect())
    }

    fn mu(&self, w: Vec<Gen>, y: Vec<Gen>) -> PyResult<i64> {
        Ok(self.session.kl().mu(self.elem(w)?, self.elem(y)?))
    }

    /// Two-sided cells as (a-value, members) pairs.
    fn cells(&self) -> PyResult<Vec<(i32, Vec<Vec<u32>>)>> {
        let cells = self.session.cells().map_err(err)?;
        let two = cells.cells(Side::Two);
        Ok((0..two.len()).map(|c| (cells.a_value(c), two[c].iter().map(|&w| self.word(w)).collect())).collect())
    }

    #[pyo3(signature = (x, i, y, method="closed"))]
    fn lif(&self, x: Vec<Gen>, i: Gen, y: Vec<Gen>, method: &str) -> PyResult<String> {
        let method: LifMethod = method.parse().map_err(err)?;
        self.session.group().system().matrix().check_gen(i as usize).map_err(err)?;
        let v = liftrace::lif(self.session.kl(), self.session.realization(), self.elem(x)?, i, self.elem(y)?, method).map_err(err)?;
        Ok(v.to_string())
    }

    /// "linear", "recursible" or "neither".
    #[pyo3(signature = (word, start=0))]
    fn classify(&self, word: Vec<Gen>, start: usize) -> PyResult<String> {
        let c = liftrace::classify_expression(self.session.kl(), self.session.realization(), &word, start).map_err(err)?;
        Ok(c.to_json(self.session.group())["shape"].as_str().unwrap_or_default().to_string())
    }

    /// Categorical dimension for the parabolic cell of w_I along t.
    #[pyo3(signature = (gens, t, engine="better"))]
    fn dimension(&self, gens: Vec<Gen>, t: Vec<Gen>, engine: &str) -> PyResult<String> {
        let engine: Engine = engine.parse().map_err(err)?;
        let kl = self.session.kl();
        let ring = self.session.ring();
        let d = ptrace::parabolic_word(kl, &gens).map_err(err)?;
        let setup = LinearTraceSetup::new(kl, ring, d.letters(), &t).map_err(err)?;
        Ok(ptrace::dimension_for_setup(&setup, ring, None, engine).map_err(err)?.dimension.to_string())
    }
}

/// Parse a word such as "2,3,2" or "232" into generator indices.
#[pyfunction]
fn parse_word(s: &str) -> PyResult<Vec<u32>> {
    Ok(Word::parse(s).map_err(err)?.letters().iter().map(|&g| g as u32).collect())
}

#[pymodule]
fn asymhecke_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(parse_word, m)?)?;
    Ok(())
}
