//! Python bindings: sessions, commands and the worked-example
//! verifiers, all returning the same JSON documents as the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lnd3_core::report::{run_command, Command, RunOptions};
use lnd3_core::{parse_command, parse_session, SessionSpec};

fn to_py_err(e: lnd3_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A parsed session: ring, variables, weights and derivation images.
#[pyclass]
struct Session {
    spec: SessionSpec,
    bound: usize,
    parameter: Option<(String, i64)>,
}

impl Session {
    fn opts(&self) -> RunOptions {
        RunOptions {
            bound: self.bound,
            parameter: self.parameter.clone(),
        }
    }

    fn run_line(&self, line: &str) -> PyResult<(String, i32)> {
        let cmd = parse_command(line).map_err(to_py_err)?;
        let out = run_command(Some(&self.spec), &cmd, &self.opts());
        Ok((out.json.to_string(), out.status.exit_code()))
    }
}

#[pymethods]
impl Session {
    #[new]
    #[pyo3(signature = (text, d=None, bound=64))]
    fn new(text: &str, d: Option<i64>, bound: usize) -> PyResult<Self> {
        let parameter = d.map(|v| ("d".to_string(), v));
        let spec = parse_session(text, parameter.as_ref().map(|(n, v)| (n.as_str(), *v)))
            .map_err(to_py_err)?;
        Ok(Session {
            spec,
            bound,
            parameter,
        })
    }

    /// Declared variable names.
    fn vars(&self) -> Vec<String> {
        self.spec.vars.clone()
    }

    /// Name of the coefficient ring.
    fn ring(&self) -> String {
        self.spec.ring.name().to_string()
    }

    /// Run a query line (same syntax as session files); returns
    /// (json, exit_code).
    fn command(&self, line: &str) -> PyResult<(String, i32)> {
        self.run_line(line)
    }

    /// deg_D of an expression; None encodes minus infinity (deg of 0).
    fn degd(&self, expr: &str) -> PyResult<Option<u64>> {
        let (json, code) = self.run_line(&format!("degd {}", expr))?;
        if code != 0 {
            return Err(PyValueError::new_err(json));
        }
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        Ok(v["result"]["result"].as_u64())
    }

    /// Is the expression in the kernel?
    fn kernel(&self, expr: &str) -> PyResult<bool> {
        let (json, code) = self.run_line(&format!("kernel {}", expr))?;
        if code != 0 {
            return Err(PyValueError::new_err(json));
        }
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        Ok(v["result"]["in_kernel"].as_bool().unwrap_or(false))
    }

    /// Is the expression a local slice?
    fn slice(&self, expr: &str) -> PyResult<bool> {
        let (json, code) = self.run_line(&format!("slice {}", expr))?;
        if code != 0 {
            return Err(PyValueError::new_err(json));
        }
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        Ok(v["result"]["local_slice"].as_bool().unwrap_or(false))
    }

    /// Nilpotence orders per variable; None marks a bound overflow.
    fn nilpotent_orders(&self) -> PyResult<Vec<Option<u64>>> {
        let (json, _code) = self.run_line("nilpotent")?;
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let orders = v["result"]["orders"]
            .as_array()
            .cloned()
            .unwrap_or_default();
        Ok(orders.iter().map(|o| o.as_u64()).collect())
    }

    /// Homogeneity degree under the session weights, if any.
    fn homogeneity(&self) -> PyResult<Option<i64>> {
        let (json, _code) = self.run_line("homogeneity")?;
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        Ok(v["result"]["degree"].as_i64())
    }

    /// Thresholds where the filtration dimension jumps.
    fn filtration_jumps(&self) -> PyResult<Vec<u64>> {
        let (json, code) = self.run_line("filtration")?;
        if code != 0 {
            return Err(PyValueError::new_err(json));
        }
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        Ok(v["result"]["jumps"]
            .as_array()
            .cloned()
            .unwrap_or_default()
            .iter()
            .filter_map(|j| j.as_u64())
            .collect())
    }
}

/// Replay a built-in worked construction; returns (json, exit_code).
#[pyfunction]
#[pyo3(signature = (example, d=None, p=None, q=None, bound=64))]
fn verify_paper(
    example: &str,
    d: Option<i64>,
    p: Option<u32>,
    q: Option<u32>,
    bound: usize,
) -> PyResult<(String, i32)> {
    let cmd = Command::VerifyPaper {
        example: example.to_string(),
        d,
        p,
        q,
    };
    let opts = RunOptions {
        bound,
        parameter: None,
    };
    let out = run_command(None, &cmd, &opts);
    Ok((out.json.to_string(), out.status.exit_code()))
}

/// Parse a session text and run one command line against it.
#[pyfunction]
#[pyo3(signature = (session_text, command_line, d=None, bound=64))]
fn run_session_command(
    session_text: &str,
    command_line: &str,
    d: Option<i64>,
    bound: usize,
) -> PyResult<(String, i32)> {
    let session = Session::new(session_text, d, bound)?;
    session.run_line(command_line)
}

#[pymodule]
fn lnd3_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Session>()?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    m.add_function(wrap_pyfunction!(run_session_command, m)?)?;
    Ok(())
}
