//! Commands and deterministic JSON reports.
//!
//! Every command produces a JSON object with the fields `command`,
//! `inputs`, `result`, `witnesses`, `status` and `version`. Object keys
//! serialize in sorted order, so identical inputs give byte-identical
//! reports apart from the version field.

use serde_json::{json, Value};

use crate::derivation::{Derivation, LinearForm, RowCertificate};
use crate::error::{Error, Result};
use crate::examples;
use crate::normal_form;
use crate::parse::SessionSpec;
use crate::poly::Poly;

/// Exit-status classes mandated by the interface: 0 all checks pass,
/// 1 a check failed, 2 input error, 3 bound exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
    InputError,
    BoundExceeded,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::InputError => 2,
            Status::BoundExceeded => 3,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CheckFailed => "check-failed",
            Status::InputError => "input-error",
            Status::BoundExceeded => "bound-exceeded",
        }
    }

    pub fn worst(a: Status, b: Status) -> Status {
        if a.exit_code() >= b.exit_code() {
            a
        } else {
            b
        }
    }
}

/// A parsed command, either from CLI arguments or a session query line.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Nilpotent,
    DegD {
        expr: String,
    },
    Homogeneity,
    Kernel {
        expr: String,
    },
    Slice {
        expr: String,
    },
    Jacobian {
        f: String,
        g: String,
    },
    Filtration,
    Triple,
    Rank,
    Triangular,
    Ntr {
        p: u32,
        q: u32,
    },
    Newton {
        expr: String,
        vars: (String, String),
    },
    VerifyPaper {
        example: String,
        d: Option<i64>,
        p: Option<u32>,
        q: Option<u32>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nilpotent => "nilpotent",
            Command::DegD { .. } => "degd",
            Command::Homogeneity => "homogeneity",
            Command::Kernel { .. } => "kernel",
            Command::Slice { .. } => "slice",
            Command::Jacobian { .. } => "jacobian",
            Command::Filtration => "filtration",
            Command::Triple => "triple",
            Command::Rank => "rank",
            Command::Triangular => "triangular",
            Command::Ntr { .. } => "ntr",
            Command::Newton { .. } => "newton",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

/// Options shared by all commands.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub bound: usize,
    /// Substitution for a free parameter in expressions, usually d.
    pub parameter: Option<(String, i64)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            bound: 64,
            parameter: None,
        }
    }
}

/// Result of running one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub status: Status,
}

/// Parse a query line such as `degd z`, `ntr --p 2 --q 2` or
/// `newton y^2 + x*z --vars y z`. Multiple expression arguments are
/// separated by commas.
pub fn parse_command(text: &str) -> Result<Command> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let Some((&name, rest)) = words.split_first() else {
        return Err(Error::Invalid("empty command".into()));
    };
    let mut flags: std::collections::BTreeMap<String, Vec<String>> = Default::default();
    let mut args: Vec<String> = Vec::new();
    let mut i = 0;
    while i < rest.len() {
        let w = rest[i];
        if let Some(key) = w.strip_prefix("--") {
            let take = if key == "vars" { 2 } else { 1 };
            let mut values = Vec::new();
            for k in 0..take {
                let v = rest.get(i + 1 + k).ok_or_else(|| {
                    Error::Invalid(format!("flag --{} needs {} value(s)", key, take))
                })?;
                values.push(v.to_string());
            }
            flags.insert(key.to_string(), values);
            i += 1 + take;
        } else {
            args.push(w.to_string());
            i += 1;
        }
    }
    let joined = args.join(" ");
    let get_u32 = |flags: &std::collections::BTreeMap<String, Vec<String>>,
                   key: &str|
     -> Result<Option<u32>> {
        match flags.get(key) {
            Some(v) => v[0]
                .parse::<u32>()
                .map(Some)
                .map_err(|_| Error::Invalid(format!("flag --{} must be an integer", key))),
            None => Ok(None),
        }
    };
    let get_i64 = |flags: &std::collections::BTreeMap<String, Vec<String>>,
                   key: &str|
     -> Result<Option<i64>> {
        match flags.get(key) {
            Some(v) => v[0]
                .parse::<i64>()
                .map(Some)
                .map_err(|_| Error::Invalid(format!("flag --{} must be an integer", key))),
            None => Ok(None),
        }
    };
    let need_expr = |joined: &str, what: &str| -> Result<String> {
        if joined.is_empty() {
            Err(Error::Invalid(format!("{} needs an expression", what)))
        } else {
            Ok(joined.to_string())
        }
    };
    match name {
        "nilpotent" => Ok(Command::Nilpotent),
        "degd" => Ok(Command::DegD {
            expr: need_expr(&joined, "degd")?,
        }),
        "homogeneity" => Ok(Command::Homogeneity),
        "kernel" => Ok(Command::Kernel {
            expr: need_expr(&joined, "kernel")?,
        }),
        "slice" => Ok(Command::Slice {
            expr: need_expr(&joined, "slice")?,
        }),
        "jacobian" => {
            let parts: Vec<&str> = joined.split(',').map(|s| s.trim()).collect();
            if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
                return Err(Error::Invalid(
                    "jacobian needs two expressions separated by a comma".into(),
                ));
            }
            Ok(Command::Jacobian {
                f: parts[0].to_string(),
                g: parts[1].to_string(),
            })
        }
        "filtration" => Ok(Command::Filtration),
        "triple" => Ok(Command::Triple),
        "rank" => Ok(Command::Rank),
        "triangular" => Ok(Command::Triangular),
        "ntr" => {
            let p = get_u32(&flags, "p")?.ok_or_else(|| Error::Invalid("ntr needs --p".into()))?;
            let q = get_u32(&flags, "q")?.ok_or_else(|| Error::Invalid("ntr needs --q".into()))?;
            Ok(Command::Ntr { p, q })
        }
        "newton" => {
            let vars = flags
                .get("vars")
                .ok_or_else(|| Error::Invalid("newton needs --vars i j".into()))?;
            Ok(Command::Newton {
                expr: need_expr(&joined, "newton")?,
                vars: (vars[0].clone(), vars[1].clone()),
            })
        }
        "verify-paper" | "verify_paper" => {
            let example = flags
                .get("example")
                .map(|v| v[0].clone())
                .ok_or_else(|| Error::Invalid("verify-paper needs --example".into()))?;
            Ok(Command::VerifyPaper {
                example,
                d: get_i64(&flags, "d")?,
                p: get_u32(&flags, "p")?,
                q: get_u32(&flags, "q")?,
            })
        }
        other => Err(Error::Invalid(format!("unknown command `{}`", other))),
    }
}

fn status_of_error(err: &Error) -> Status {
    match err {
        Error::BoundExceeded { .. } => Status::BoundExceeded,
        _ => Status::InputError,
    }
}

fn finish(
    cmd: &Command,
    inputs: Value,
    result: Value,
    witnesses: Value,
    status: Status,
) -> Outcome {
    Outcome {
        json: json!({
            "command": cmd.name(),
            "inputs": inputs,
            "result": result,
            "witnesses": witnesses,
            "status": status.label(),
            "version": env!("CARGO_PKG_VERSION"),
        }),
        status,
    }
}

fn fail(cmd: &Command, err: &Error) -> Outcome {
    let status = status_of_error(err);
    Outcome {
        json: json!({
            "command": cmd.name(),
            "error": err.to_string(),
            "status": status.label(),
            "version": env!("CARGO_PKG_VERSION"),
        }),
        status,
    }
}

fn form_json(form: &LinearForm, names: &[&str]) -> Value {
    Value::String(form.render(names))
}

fn certificate_json(cert: &RowCertificate) -> Value {
    match cert {
        RowCertificate::FieldNonzero => json!({"kind": "field-nonzero"}),
        RowCertificate::Unimodular { cofactors } => json!({
            "kind": "unimodular-bezout",
            "cofactors": cofactors.iter().map(|c| c.render("t")).collect::<Vec<_>>(),
        }),
        RowCertificate::UnitCoefficient { index } => json!({
            "kind": "unit-coefficient",
            "index": index,
        }),
    }
}

/// Locate a coordinate variable in the kernel and reconstruct the
/// second kernel generator from the images.
fn kernel_presentation(session: &SessionSpec, d: &Derivation) -> Result<(usize, LinearForm, Poly)> {
    let var = (0..d.nvars())
        .find(|&i| d.image(i).is_zero())
        .ok_or_else(|| {
            Error::Invalid(
                "no coordinate variable lies in the kernel; a rank-2 presentation is required"
                    .into(),
            )
        })?;
    let mut coeffs = vec![crate::ring::RingElem::zero(session.ring); d.nvars()];
    coeffs[var] = crate::ring::RingElem::one(session.ring);
    let form = LinearForm::new(session.ring, coeffs);
    let p = normal_form::reconstruct_generator(d, var)?;
    Ok((var, form, p))
}

/// Run one command against an optional session.
pub fn run_command(session: Option<&SessionSpec>, cmd: &Command, opts: &RunOptions) -> Outcome {
    match run_command_inner(session, cmd, opts) {
        Ok(outcome) => outcome,
        Err(e) => fail(cmd, &e),
    }
}

fn need_session<'a>(session: Option<&'a SessionSpec>) -> Result<&'a SessionSpec> {
    session.ok_or_else(|| Error::Invalid("this command needs a session file".into()))
}

fn run_command_inner(
    session: Option<&SessionSpec>,
    cmd: &Command,
    opts: &RunOptions,
) -> Result<Outcome> {
    let parameter = opts.parameter.as_ref().map(|(n, v)| (n.as_str(), *v));
    match cmd {
        Command::Nilpotent => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let cert = d.certify_nilpotent(opts.bound);
            let status = if cert.certified {
                Status::Ok
            } else {
                Status::BoundExceeded
            };
            let witnesses = match &cert.witness {
                Some((i, poly)) => json!({
                    "surviving_iterate_of": s.vars[*i],
                    "value": poly.render(&names),
                }),
                None => Value::Null,
            };
            Ok(finish(
                cmd,
                json!({"derivation": images_json(&d, &names), "bound": opts.bound}),
                json!({"certified": cert.certified, "orders": cert.orders}),
                witnesses,
                status,
            ))
        }
        Command::DegD { expr } => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let poly = s.parse_poly(expr, parameter)?;
            if poly.is_zero() {
                return Ok(finish(
                    cmd,
                    json!({"expr": poly.render(&names), "bound": opts.bound}),
                    json!({"result": "-infinity"}),
                    Value::Null,
                    Status::Ok,
                ));
            }
            let deg = d.deg_d(&poly, opts.bound)?;
            Ok(finish(
                cmd,
                json!({"expr": poly.render(&names), "bound": opts.bound}),
                json!({"result": deg}),
                Value::Null,
                Status::Ok,
            ))
        }
        Command::Homogeneity => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let degree = d.homogeneity_degree(&s.weights);
            Ok(finish(
                cmd,
                json!({
                    "derivation": images_json(&d, &names),
                    "weights": s.weights.as_slice()[..s.nvars()].to_vec(),
                }),
                json!({"degree": degree}),
                Value::Null,
                Status::Ok,
            ))
        }
        Command::Kernel { expr } => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let poly = s.parse_poly(expr, parameter)?;
            let image = d.apply(&poly)?;
            Ok(finish(
                cmd,
                json!({"expr": poly.render(&names)}),
                json!({"in_kernel": image.is_zero()}),
                json!({"image": image.render(&names)}),
                Status::Ok,
            ))
        }
        Command::Slice { expr } => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let poly = s.parse_poly(expr, parameter)?;
            let image = d.apply(&poly)?;
            let is_slice = d.is_local_slice(&poly)?;
            Ok(finish(
                cmd,
                json!({"expr": poly.render(&names)}),
                json!({"local_slice": is_slice}),
                json!({"image": image.render(&names)}),
                Status::Ok,
            ))
        }
        Command::Jacobian { f, g } => {
            let s = need_session(session)?;
            let names = s.var_names();
            if s.nvars() != 3 {
                return Err(Error::DimensionError(s.nvars()));
            }
            let fp = s.parse_poly(f, parameter)?;
            let gp = s.parse_poly(g, parameter)?;
            let d = Derivation::jacobian(&fp, &gp)?;
            let kills = d.apply(&fp)?.is_zero() && d.apply(&gp)?.is_zero();
            Ok(finish(
                cmd,
                json!({"f": fp.render(&names), "g": gp.render(&names)}),
                json!({"images": images_json(&d, &names)}),
                json!({"arguments_in_kernel": kills}),
                Status::Ok,
            ))
        }
        Command::Filtration => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let filt = d.linear_filtration(opts.bound)?;
            let strata: Vec<Value> = filt
                .strata
                .iter()
                .map(|st| {
                    json!({
                        "m": st.m,
                        "dim": st.dim,
                        "basis": st.basis.iter().map(|f| form_json(f, &names)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(finish(
                cmd,
                json!({"bound": opts.bound}),
                json!({"strata": strata, "jumps": filt.jumps()}),
                Value::Null,
                Status::Ok,
            ))
        }
        Command::Triple => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let triple = d.strict_triple(opts.bound)?;
            let result = match &triple {
                Some(t) => json!({
                    "forms": t.forms.iter().map(|f| form_json(f, &names)).collect::<Vec<_>>(),
                    "degrees": t.degrees,
                }),
                None => Value::Null,
            };
            Ok(finish(
                cmd,
                json!({"bound": opts.bound}),
                result,
                Value::Null,
                Status::Ok,
            ))
        }
        Command::Rank => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let report = d.rank_upper(opts.bound)?;
            Ok(finish(
                cmd,
                json!({"bound": opts.bound}),
                json!({
                    "rank_upper_bound": report.rank_bound,
                    "kernel_forms": report.kernel_forms.iter().map(|f| form_json(f, &names)).collect::<Vec<_>>(),
                }),
                json!({
                    "certified_variables": report.certified.iter().map(|(f, c)| json!({
                        "form": form_json(f, &names),
                        "certificate": certificate_json(c),
                    })).collect::<Vec<_>>(),
                    "undecided_rows": report.undecided.iter().map(|f| form_json(f, &names)).collect::<Vec<_>>(),
                }),
                Status::Ok,
            ))
        }
        Command::Triangular => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let (var, form, p) = kernel_presentation(s, &d)?;
            let report = normal_form::triangular_test(&d, &form, &p, opts.bound)?;
            Ok(finish(
                cmd,
                json!({
                    "kernel_variable": s.vars[var],
                    "generator": p.render(&names),
                }),
                json!({
                    "triangular": report.triangular,
                    "z_degree": report.sb.z_degree(),
                    "deg_y": report.deg_y,
                    "deg_z": report.deg_z,
                }),
                json!({
                    "coordinates": report.sa.forms.iter().map(|f| form_json(f, &names)).collect::<Vec<_>>(),
                    "normalized_generator": report.sa.p.render(&["X", "Y", "Z"]),
                    "images": report.images.iter().map(|p| p.render(&["X", "Y", "Z"])).collect::<Vec<_>>(),
                }),
                Status::Ok,
            ))
        }
        Command::Ntr { p, q } => {
            let s = need_session(session)?;
            let d = s.derivation()?;
            let names = s.var_names();
            let (var, form, gen) = kernel_presentation(s, &d)?;
            let report = normal_form::ntr_normal_form(&d, &form, &gen, *p, *q, opts.bound)?;
            let final_names = ["X", "Y", "Z"];
            Ok(finish(
                cmd,
                json!({
                    "kernel_variable": s.vars[var],
                    "generator": gen.render(&names),
                    "p": p,
                    "q": q,
                }),
                json!({
                    "swapped": report.swapped,
                    "h": report.h.render(&final_names),
                    "c": report.c.iter().map(|c| c.render()).collect::<Vec<_>>(),
                    "z_tilde": report.z_tilde.render(&final_names),
                    "normal_form": report.p_final.render(&final_names),
                }),
                json!({
                    "coordinates": report.coords.new_forms().iter().map(|f| form_json(f, &names)).collect::<Vec<_>>(),
                }),
                Status::Ok,
            ))
        }
        Command::Newton { expr, vars } => {
            let s = need_session(session)?;
            let names = s.var_names();
            let poly = s.parse_poly(expr, parameter)?;
            let vi = s
                .vars
                .iter()
                .position(|v| *v == vars.0)
                .ok_or_else(|| Error::Invalid(format!("unknown variable `{}`", vars.0)))?;
            let vj = s
                .vars
                .iter()
                .position(|v| *v == vars.1)
                .ok_or_else(|| Error::Invalid(format!("unknown variable `{}`", vars.1)))?;
            let polygon = normal_form::newton_polygon(&poly, (vi, vj));
            let check = normal_form::np_check(&polygon);
            Ok(finish(
                cmd,
                json!({"expr": poly.render(&names), "vars": [vars.0, vars.1]}),
                json!({
                    "vertices": polygon.vertices,
                    "m": check.m,
                    "n": check.n,
                    "divides": check.divides,
                    "triangle": check.triangle,
                    "degenerate": check.degenerate,
                    "pass": check.pass,
                }),
                json!({"points": polygon.points}),
                Status::Ok,
            ))
        }
        Command::VerifyPaper { example, d, p, q } => {
            let reports = collect_paper_reports(example, *d, *p, *q, opts.bound)?;
            let pass = reports.iter().all(|r| r.pass());
            let status = if pass {
                Status::Ok
            } else {
                Status::CheckFailed
            };
            Ok(finish(
                cmd,
                json!({"example": example, "d": d, "p": p, "q": q, "bound": opts.bound}),
                json!({
                    "pass": pass,
                    "reports": reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect::<Vec<_>>(),
                }),
                Value::Null,
                status,
            ))
        }
    }
}

fn images_json(d: &Derivation, names: &[&str]) -> Value {
    Value::Array(
        d.images()
            .iter()
            .map(|p| Value::String(p.render(names)))
            .collect(),
    )
}

fn collect_paper_reports(
    example: &str,
    d: Option<i64>,
    p: Option<u32>,
    q: Option<u32>,
    bound: usize,
) -> Result<Vec<examples::VerificationReport>> {
    match example {
        "1" => Ok(vec![examples::verify_example1(bound)]),
        "2" => {
            let ds = match d {
                Some(d) => vec![d],
                None => vec![0, 1, 2, 3],
            };
            Ok(ds
                .into_iter()
                .map(|d| examples::verify_example2(d, bound))
                .collect())
        }
        "3" => {
            let ds = match d {
                Some(d) => vec![d],
                None => vec![0, 1, 2],
            };
            Ok(ds
                .into_iter()
                .map(|d| examples::verify_example3(d, bound))
                .collect())
        }
        "tr" => {
            let d = d.unwrap_or(1);
            let ring = crate::ring::RingId::Q;
            let x = Poly::var(ring, 3, 0);
            let y = Poly::var(ring, 3, 1);
            // f_{d+1} = Y^{d+1} + X^d Y, a nontrivial homogeneous choice.
            let f_top = y.pow((d + 1) as u32)?.add(&x.pow(d as u32)?.mul(&y)?)?;
            let inst = examples::build_tr_instance(d, &f_top, &crate::ring::RingElem::one(ring))?;
            Ok(vec![examples::verify_tr_instance(&inst, bound)])
        }
        "ntr" => {
            let p = p.unwrap_or(2);
            let q = q.unwrap_or(2);
            let ring = crate::ring::RingId::Q;
            let x = Poly::var(ring, 3, 0);
            let y = Poly::var(ring, 3, 1);
            // h = Y^q + X Y^{q-1}, c = (1, 0, .., 0, 1).
            let h = y.pow(q)?.add(&x.mul(&y.pow(q - 1)?)?)?;
            let mut c = vec![crate::ring::RingElem::zero(ring); p as usize];
            c[0] = crate::ring::RingElem::one(ring);
            c[p as usize - 1] = crate::ring::RingElem::one(ring);
            let inst = examples::build_ntr_instance(p, q, &h, &c)?;
            Ok(vec![examples::verify_ntr_instance(&inst, bound)])
        }
        other => Err(Error::Invalid(format!(
            "unknown example `{}`; use 1, 2, 3, tr or ntr",
            other
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_session;

    fn cascade_session() -> SessionSpec {
        parse_session("ring Q\nvars x y z\nD x = 0\nD y = x\nD z = y\n", None).unwrap()
    }

    #[test]
    fn degd_command() {
        let s = cascade_session();
        let cmd = parse_command("degd z").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.status, Status::Ok);
        assert_eq!(out.json["result"]["result"], 2);
    }

    #[test]
    fn degd_zero_reports_minus_infinity() {
        let s = cascade_session();
        let cmd = parse_command("degd x - x").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.json["result"]["result"], "-infinity");
    }

    #[test]
    fn newton_command_matches_interface() {
        let s = cascade_session();
        let cmd = parse_command("newton y^2 + x*z --vars y z").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.status, Status::Ok);
        assert_eq!(
            out.json["result"]["vertices"],
            serde_json::json!([[0, 0], [2, 0], [0, 1]])
        );
        assert_eq!(out.json["result"]["divides"], true);
    }

    #[test]
    fn reports_are_deterministic() {
        let s = cascade_session();
        let cmd = parse_command("filtration").unwrap();
        let a = run_command(Some(&s), &cmd, &RunOptions::default());
        let b = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(
            serde_json::to_string(&a.json).unwrap(),
            serde_json::to_string(&b.json).unwrap()
        );
    }

    #[test]
    fn input_errors_exit_two() {
        let s = cascade_session();
        let cmd = parse_command("degd nosuchvar").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.status.exit_code(), 2);
        assert!(out.json["error"]
            .as_str()
            .unwrap()
            .contains("undeclared identifier"));
    }

    #[test]
    fn bound_exceeded_exit_three() {
        let s = parse_session("ring Q\nvars x y z\nD x = x\nD y = 0\nD z = 0\n", None).unwrap();
        let cmd = parse_command("degd x").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.status.exit_code(), 3);
    }

    #[test]
    fn triangular_command_reconstructs_generator() {
        let text = "ring Q\nvars X Y Z\nD X = 0\nD Y = -X^2\nD Z = 3Y^2 + 2X*Y\n";
        let s = parse_session(text, None).unwrap();
        let cmd = parse_command("triangular").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.status, Status::Ok, "json: {}", out.json);
        assert_eq!(out.json["result"]["triangular"], true);
        assert_eq!(out.json["result"]["deg_z"], 3);
    }

    #[test]
    fn verify_paper_examples_pass() {
        let cmd = parse_command("verify-paper --example 3 --d 0").unwrap();
        let out = run_command(None, &cmd, &RunOptions::default());
        assert_eq!(out.status, Status::Ok);
        assert_eq!(out.json["result"]["pass"], true);
    }

    #[test]
    fn ntr_command_from_session() {
        let text =
            "ring Q\nvars X Y Z\nD X = 0\nD Y = -2X (Y^2 + X Z)\nD Z = 4Y (Y^2 + X Z) + X^3\n";
        let s = parse_session(text, None).unwrap();
        let cmd = parse_command("ntr --p 2 --q 2").unwrap();
        let out = run_command(Some(&s), &cmd, &RunOptions::default());
        assert_eq!(out.status, Status::Ok, "json: {}", out.json);
        assert_eq!(out.json["result"]["h"], "Y^2");
        assert_eq!(out.json["result"]["z_tilde"], "X*Z + Y^2");
    }
}
