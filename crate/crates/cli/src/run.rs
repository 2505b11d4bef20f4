use serde_json::{json, Value};

use depthlab_core::homology::{ext, tor, ChainComplex};
use depthlab_core::invariants::{
    auslander_formula_check, complexity_of_table, dependency_bounds_check, depth_complex_koszul, depth_formula_check,
    depth_module, one_dim_equivalence_check, p_bound, q_bound, search_reducing_sequence, torsion_check,
    verify_reducing_sequence, FormulaMode, FormulaReport, ReducingEvidence, SearchOptions, TorsionVerdict,
};
use depthlab_core::resolve::{minimal_free_resolution, PresentedModule};
use depthlab_core::{AlgebraError, PrimeField};

use crate::session::{Built, InstanceDecl, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

/// Result of a command: exit code, human-readable text and a JSON report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn new(code: i32, text: impl Into<String>, mut json: Value) -> Self {
        if let Value::Object(map) = &mut json {
            map.insert("schema".into(), json!(1));
            map.insert("exit".into(), json!(code));
        }
        Outcome {
            code,
            text: text.into(),
            json,
        }
    }

    pub fn error(code: i32, message: impl Into<String>) -> Self {
        let message = message.into();
        Outcome::new(code, format!("error: {message}"), json!({ "error": message }))
    }
}

impl From<ParseError> for Outcome {
    fn from(e: ParseError) -> Self {
        Outcome::error(EXIT_USAGE, e.to_string())
    }
}

impl From<AlgebraError> for Outcome {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::Uncertified(_) => EXIT_REFUSED,
            _ => EXIT_USAGE,
        };
        Outcome::error(code, e.to_string())
    }
}

type Module = PresentedModule<PrimeField>;

fn usage(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

fn arg(inst: &InstanceDecl, i: usize) -> Result<&str, AlgebraError> {
    inst.args
        .get(i)
        .map(String::as_str)
        .ok_or_else(|| usage(format!("instance `{}` needs argument {}", inst.name, i + 1)))
}

fn opt_usize(inst: &InstanceDecl, key: &str, default: usize) -> Result<usize, AlgebraError> {
    match inst.option(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| usage(format!("`{key}` must be a non-negative integer"))),
    }
}

fn evidence(built: &Built, inst: &InstanceDecl) -> Result<ReducingEvidence<PrimeField>, AlgebraError> {
    Ok(match inst.option("evidence").unwrap_or("auto") {
        "auto" => ReducingEvidence::Auto,
        "none" => ReducingEvidence::None,
        "search" => ReducingEvidence::Search(search_options(inst)?),
        other => match other.strip_prefix("certificate:") {
            Some(name) => {
                let (seq, pd) = built.certificate(name)?;
                ReducingEvidence::Sequence(seq, pd)
            }
            None => return Err(usage(format!("unknown evidence `{other}`"))),
        },
    })
}

pub fn search_options(inst: &InstanceDecl) -> Result<SearchOptions, AlgebraError> {
    let mut o = SearchOptions::new(
        opt_usize(inst, "max_r", 1)?,
        opt_usize(inst, "max_n", 1)?,
        opt_usize(inst, "max_ab", 4)?,
        opt_usize(inst, "pd_bound", 0)?,
    );
    o.class_budget = opt_usize(inst, "class_budget", o.class_budget)?;
    o.min_n = opt_usize(inst, "min_n", 0)?;
    Ok(o)
}

/// Compare against an `expect=` option; a mismatch is a violation.
fn expect(inst: &InstanceDecl, actual: &str) -> (i32, Value) {
    match inst.option("expect") {
        None => (EXIT_OK, Value::Null),
        Some(e) if e == actual => (EXIT_OK, json!(e)),
        Some(e) => (EXIT_VIOLATION, json!(e)),
    }
}

fn formula(inst: &InstanceDecl, report: FormulaReport) -> (i32, String, Value) {
    let mut code = report.verdict.exit_code();
    let mut expected = Value::Null;
    if let Some(t) = &report.truth_table {
        let actual = format!("{},{},{}", t.tor_independent, t.torsion_free, t.depth_formula);
        let (c, e) = expect(inst, &actual);
        code = code.max(c);
        expected = e;
    }
    let lhs = report.lhs.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
    let rhs = report.rhs.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
    let q = report.q.map(|q| q.to_string()).unwrap_or_else(|| "-".into());
    let mut text = format!("{}: {lhs} vs {rhs}, q = {q}", report.verdict);
    let failed: Vec<&str> = report.hypotheses.iter().filter(|g| !g.passed()).map(|g| g.name.as_str()).collect();
    if !failed.is_empty() {
        text.push_str(&format!(" (failed: {})", failed.join(", ")));
    }
    (code, text, json!({ "report": report, "expect": expected }))
}

fn tor_torsion(m: &Module, n: &Module, bound: usize, domain: bool) -> Result<String, AlgebraError> {
    let t = tor(m, n, bound)?;
    let mut verdict = "torsion";
    for h in t.iter().skip(1) {
        match torsion_check(h, domain)? {
            TorsionVerdict::Torsion => {}
            TorsionVerdict::NotTorsion => verdict = "not-torsion",
            TorsionVerdict::Unsupported => return Ok("unsupported".into()),
        }
    }
    Ok(verdict.into())
}

/// Same minimal generator degrees and Hilbert function in the first few degrees.
fn same_graded_dims(a: &Module, b: &Module) -> bool {
    let mut ga = a.gens().to_vec();
    let mut gb = b.gens().to_vec();
    ga.sort_unstable();
    gb.sort_unstable();
    if ga != gb {
        return false;
    }
    let lo = ga.first().copied().unwrap_or(0);
    (lo..lo + 6).all(|d| a.graded_dim(d) == b.graded_dim(d))
}

fn torsion_name(t: TorsionVerdict) -> &'static str {
    match t {
        TorsionVerdict::Torsion => "torsion",
        TorsionVerdict::NotTorsion => "not-torsion",
        TorsionVerdict::Unsupported => "unsupported",
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
}

/// Run one instance. Option overrides (`bound`, `mode`) come from the caller.
pub fn run_instance(built: &Built, inst: &InstanceDecl) -> Outcome {
    match run_instance_inner(built, inst) {
        Ok((code, text, mut value)) => {
            if let Value::Object(map) = &mut value {
                map.insert("instance".into(), json!(inst.name));
                map.insert("kind".into(), json!(inst.kind));
            }
            Outcome::new(code, format!("{}: {text}", inst.name), value)
        }
        Err(e) => {
            let mut o = Outcome::from(e);
            o.text = format!("{}: {}", inst.name, o.text);
            if let Value::Object(map) = &mut o.json {
                map.insert("instance".into(), json!(inst.name));
            }
            o
        }
    }
}

fn run_instance_inner(built: &Built, inst: &InstanceDecl) -> Result<(i32, String, Value), AlgebraError> {
    let bound = opt_usize(inst, "bound", 4)?;
    let domain = built.session.domain;
    let pair = || -> Result<(&Module, &Module), AlgebraError> {
        Ok((built.module(arg(inst, 0)?)?, built.module(arg(inst, 1)?)?))
    };
    match inst.kind.as_str() {
        "betti" => {
            let m = built.module(arg(inst, 0)?)?;
            let m = match inst.option("ring").unwrap_or("quotient") {
                "ambient" => m.over_ambient(),
                "quotient" => m.clone(),
                other => return Err(usage(format!("unknown ring `{other}`"))),
            };
            let res = minimal_free_resolution(&m, bound);
            let totals: Vec<usize> = res.totals().into_iter().take(bound + 1).collect();
            let (code, e) = expect(inst, &list(&totals));
            Ok((
                code,
                format!("betti {}", list(&totals)),
                json!({ "betti": totals, "expect": e }),
            ))
        }
        "depth" => {
            let r = depth_module(built.module(arg(inst, 0)?)?);
            let (code, e) = expect(inst, &r.value.to_string());
            Ok((code, format!("depth {}", r.value), json!({ "depth": r, "expect": e })))
        }
        "q" | "p" => {
            let (m, n) = pair()?;
            let v = if inst.kind == "q" {
                q_bound(m, n, bound)?
            } else {
                p_bound(m, n, bound)?
            };
            let (code, e) = expect(inst, &v.value.to_string());
            let text = format!(
                "{} = {} (certified up to {}, exact: {})",
                inst.kind, v.value, v.bound, v.exact
            );
            Ok((code, text, json!({ "value": v, "expect": e })))
        }
        "complexity" => {
            let m = built.module(arg(inst, 0)?)?;
            let w = inst.option("window").unwrap_or("0,5");
            let (a, b) = w.split_once(',').ok_or_else(|| usage("window=w0,w1"))?;
            let window: (usize, usize) = (
                a.parse().map_err(|_| usage("bad window"))?,
                b.parse().map_err(|_| usage("bad window"))?,
            );
            let res = minimal_free_resolution(m, window.1);
            let est = complexity_of_table(&res.betti(), window)?;
            let (code, e) = expect(inst, est.verdict.name());
            Ok((
                code,
                format!("complexity {}", est.verdict.name()),
                json!({ "estimate": est, "expect": e }),
            ))
        }
        "reducing" => {
            let name = inst
                .option("certificate")
                .ok_or_else(|| usage("reducing needs certificate=NAME"))?;
            let (seq, pd_bound) = built.certificate(name)?;
            match verify_reducing_sequence(&seq, pd_bound) {
                Ok(cert) => Ok((
                    EXIT_OK,
                    format!("certificate verified, red-pd <= {}", cert.length),
                    json!({ "certificate": cert }),
                )),
                Err(f) => Ok((
                    EXIT_VIOLATION,
                    format!("certificate rejected: {f}"),
                    json!({ "failure": f }),
                )),
            }
        }
        "search" => {
            let m = built.module(arg(inst, 0)?)?;
            let opts = search_options(inst)?;
            match search_reducing_sequence(m, &opts)? {
                Some(seq) => {
                    let cert = verify_reducing_sequence(&seq, opts.pd_bound)
                        .map_err(|f| AlgebraError::Invalid(format!("search produced an invalid sequence: {f}")))?;
                    Ok((
                        EXIT_OK,
                        format!("found red-pd <= {} with steps {:?}", cert.length, cert.steps),
                        json!({ "certificate": cert, "options": opts }),
                    ))
                }
                None => Ok((
                    EXIT_REFUSED,
                    "no certificate within budgets".into(),
                    json!({ "certificate": Value::Null, "options": opts }),
                )),
            }
        }
        "depth-formula" => {
            let (m, n) = pair()?;
            let mode: FormulaMode = inst.option("mode").unwrap_or("derived").parse()?;
            Ok(formula(
                inst,
                depth_formula_check(m, n, bound, mode, &evidence(built, inst)?)?,
            ))
        }
        "auslander" => {
            let (m, n) = pair()?;
            Ok(formula(
                inst,
                auslander_formula_check(m, n, bound, &evidence(built, inst)?)?,
            ))
        }
        "dependency-bounds" => {
            let (m, n) = pair()?;
            Ok(formula(
                inst,
                dependency_bounds_check(m, n, bound, &evidence(built, inst)?)?,
            ))
        }
        "one-dim" => {
            let (m, n) = pair()?;
            Ok(formula(
                inst,
                one_dim_equivalence_check(m, n, bound, &evidence(built, inst)?)?,
            ))
        }
        "torsion" => {
            let v = torsion_name(torsion_check(built.module(arg(inst, 0)?)?, domain)?);
            let (code, e) = expect(inst, v);
            let code = if v == "unsupported" { EXIT_REFUSED } else { code };
            Ok((code, v.to_string(), json!({ "verdict": v, "expect": e })))
        }
        "tor-torsion" => {
            let (m, n) = pair()?;
            let v = tor_torsion(m, n, bound, domain)?;
            let (code, e) = expect(inst, &v);
            let code = if v == "unsupported" { EXIT_REFUSED } else { code };
            Ok((
                code,
                format!("Tor_1..{bound}: {v}"),
                json!({ "verdict": v, "expect": e }),
            ))
        }
        "tor-symmetry" => {
            let (m, n) = pair()?;
            let (a, b) = (tor(m, n, bound)?, tor(n, m, bound)?);
            let agree = a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| same_graded_dims(x, y));
            let dims: Vec<usize> = a.iter().map(|h| h.ngens()).collect();
            let code = if agree { EXIT_OK } else { EXIT_VIOLATION };
            Ok((
                code,
                format!("Tor generators {} symmetric: {agree}", list(&dims)),
                json!({ "symmetric": agree, "generators": dims }),
            ))
        }
        "auslander-buchsbaum" => {
            let m = built.module(arg(inst, 0)?)?;
            let ab = depth_module(m);
            let koszul = depth_complex_koszul(&ChainComplex::single(m, 0))?;
            let agree = ab.value == koszul.value;
            let code = if agree { EXIT_OK } else { EXIT_VIOLATION };
            Ok((
                code,
                format!("depth {} via pd over S, {} via Koszul", ab.value, koszul.value),
                json!({ "ambient": ab, "koszul": koszul, "agree": agree }),
            ))
        }
        other => Err(usage(format!("unknown instance kind `{other}`"))),
    }
}

pub fn cmd_resolve(built: &Built, module: &str, bound: usize, ambient: bool) -> Result<Outcome, AlgebraError> {
    let m = built.module(module)?;
    let m = if ambient { m.over_ambient() } else { m.clone() };
    let res = minimal_free_resolution(&m, bound);
    let mut text = format!("{:>4} {:>8}\n", "i", "beta_i");
    for (i, b) in res.totals().iter().enumerate() {
        text.push_str(&format!("{i:>4} {b:>8}\n"));
    }
    if let Some(pd) = res.pd() {
        text.push_str(&format!("pd = {pd}\n"));
    }
    let json = json!({
        "module": module,
        "ring": if ambient { "ambient" } else { "quotient" },
        "minimal": res.is_minimal(),
        "resolution": res.to_json(),
    });
    Ok(Outcome::new(EXIT_OK, text.trim_end(), json))
}

fn homology_summary(hs: &[Module]) -> (String, Value) {
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, h) in hs.iter().enumerate() {
        text.push_str(&format!("{i:>4} {:>6}  {:?}\n", h.ngens(), h.gens()));
        rows.push(json!({ "index": i, "generators": h.ngens(), "degrees": h.gens(), "zero": h.is_zero() }));
    }
    (text.trim_end().to_string(), Value::Array(rows))
}

pub fn cmd_tor(built: &Built, m: &str, n: &str, bound: usize, is_ext: bool) -> Result<Outcome, AlgebraError> {
    let (mm, nn) = (built.module(m)?, built.module(n)?);
    let hs = if is_ext {
        ext(mm, nn, bound)?
    } else {
        tor(mm, nn, bound)?
    };
    let (text, rows) = homology_summary(&hs);
    let functor = if is_ext { "ext" } else { "tor" };
    Ok(Outcome::new(
        EXIT_OK,
        text,
        json!({ "functor": functor, "left": m, "right": n, "bound": bound, "modules": rows }),
    ))
}

pub fn cmd_depth(built: &Built, module: &str) -> Result<Outcome, AlgebraError> {
    let r = depth_module(built.module(module)?);
    Ok(Outcome::new(
        EXIT_OK,
        format!("depth({module}) = {} [{}]", r.value, r.method.name()),
        json!({ "module": module, "depth": r }),
    ))
}

pub fn cmd_search(built: &Built, module: &str, opts: &SearchOptions) -> Result<Outcome, AlgebraError> {
    let inst = InstanceDecl {
        name: format!("search-{module}"),
        kind: "search".into(),
        args: vec![module.to_string()],
        options: [
            ("max_r", opts.max_r),
            ("max_n", opts.max_n),
            ("max_ab", opts.max_ab),
            ("pd_bound", opts.pd_bound),
            ("class_budget", opts.class_budget),
            ("min_n", opts.min_n),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect(),
    };
    Ok(run_instance(built, &inst))
}
