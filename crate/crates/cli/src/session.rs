//! Session description files.
//!
//! ```text
//! # comments run to the end of the line
//! field 101
//! vars x y
//! weights 1 1
//! order grevlex
//! ideal x^2, x*y, y^2
//! domain                      # caller asserts the ideal is prime
//! module k = residue
//! module m = ideal x, y
//! module F = free 1 1
//! module P = present 0 0      # generator degrees, then one `rel` per column
//!   rel x, -y
//! certificate socle for k pd_bound=0
//!   step n=1 a=-2,-2,-2,-2 b=0 middle=F
//!     left x, 0 | y, 0 | 0, x | 0, y
//!     right 1, 0 | 0, 1
//! instance name: depth-formula M N bound=8 mode=classic
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use depthlab_core::groebner::Column;
use depthlab_core::invariants::{ReducingSequence, ReducingStep};
use depthlab_core::resolve::PresentedModule;
use depthlab_core::{AlgebraError, GradedRing, OrderKind, PolyRing, Polynomial, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBody {
    Residue,
    Free(Vec<i32>),
    Cyclic(Vec<String>),
    Ideal(Vec<String>),
    Present { gens: Vec<i32>, rels: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub body: ModuleBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDecl {
    pub n: usize,
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub middle: String,
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDecl {
    pub name: String,
    pub module: String,
    pub pd_bound: usize,
    pub steps: Vec<StepDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDecl {
    pub name: String,
    pub kind: String,
    pub args: Vec<String>,
    pub options: BTreeMap<String, String>,
}

impl InstanceDecl {
    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub modulus: u32,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: OrderKind,
    pub ideal: Vec<String>,
    pub domain: bool,
    pub modules: Vec<ModuleDecl>,
    pub certificates: Vec<CertificateDecl>,
    pub instances: Vec<InstanceDecl>,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            modulus: 101,
            vars: Vec::new(),
            weights: Vec::new(),
            order: OrderKind::Grevlex,
            ideal: Vec::new(),
            domain: false,
            modules: Vec::new(),
            certificates: Vec::new(),
            instances: Vec::new(),
        }
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    indent: usize,
}

impl Cursor<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: column + 1,
            message: message.into(),
        }
    }

    fn err_at(&self, needle: &str, message: impl Into<String>) -> ParseError {
        let col = self.text.find(needle).unwrap_or(0);
        self.err(self.indent + col, message)
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

fn split_columns(s: &str) -> Vec<Vec<String>> {
    s.split('|').map(split_list).collect()
}

fn parse_ints<T: std::str::FromStr>(c: &Cursor<'_>, items: &[&str]) -> Result<Vec<T>, ParseError> {
    items
        .iter()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| c.err_at(t, format!("expected an integer, found `{t}`")))
        })
        .collect()
}

fn key_values<'a>(c: &Cursor<'_>, words: &[&'a str]) -> Result<BTreeMap<&'a str, &'a str>, ParseError> {
    let mut out = BTreeMap::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| c.err_at(w, format!("expected key=value, found `{w}`")))?;
        out.insert(k, v);
    }
    Ok(out)
}

enum Block {
    None,
    Present,
    Certificate,
    Step,
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, ParseError> {
        let mut s = Session::default();
        let mut block = Block::None;
        for (idx, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = body.len() - body.trim_start().len();
            let c = Cursor {
                line: idx + 1,
                text: trimmed,
                indent,
            };
            let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest = rest.trim();
            let words: Vec<&str> = rest.split_whitespace().collect();
            if indent > 0 {
                match (&block, head) {
                    (Block::Present, "rel") => {
                        let Some(ModuleDecl {
                            body: ModuleBody::Present { rels, .. },
                            ..
                        }) = s.modules.last_mut()
                        else {
                            unreachable!()
                        };
                        rels.push(split_list(rest));
                    }
                    (Block::Certificate | Block::Step, "step") => {
                        let kv = key_values(&c, &words)?;
                        let get = |k: &str| {
                            kv.get(k)
                                .copied()
                                .ok_or_else(|| c.err(indent, format!("step needs `{k}=`")))
                        };
                        let a: Vec<&str> = get("a")?.split(',').collect();
                        let b: Vec<&str> = get("b")?.split(',').collect();
                        let step = StepDecl {
                            n: parse_ints(&c, &[get("n")?])?[0],
                            a: parse_ints(&c, &a)?,
                            b: parse_ints(&c, &b)?,
                            middle: get("middle")?.to_string(),
                            left: Vec::new(),
                            right: Vec::new(),
                        };
                        s.certificates
                            .last_mut()
                            .expect("inside a certificate")
                            .steps
                            .push(step);
                        block = Block::Step;
                    }
                    (Block::Step, "left" | "right") => {
                        let step = s
                            .certificates
                            .last_mut()
                            .and_then(|c| c.steps.last_mut())
                            .expect("inside a step");
                        let cols = split_columns(rest);
                        if head == "left" {
                            step.left = cols;
                        } else {
                            step.right = cols;
                        }
                    }
                    _ => return Err(c.err(indent, format!("unexpected `{head}` here"))),
                }
                continue;
            }
            block = Block::None;
            match head {
                "field" => {
                    s.modulus = parse_ints(&c, &words)?
                        .first()
                        .copied()
                        .ok_or_else(|| c.err(0, "field needs a prime"))?;
                }
                "vars" => s.vars = words.iter().map(|w| w.to_string()).collect(),
                "weights" => s.weights = parse_ints(&c, &words)?,
                "order" => {
                    s.order =
                        OrderKind::parse(rest).ok_or_else(|| c.err_at(rest, format!("unknown order `{rest}`")))?;
                }
                "ideal" => s.ideal = split_list(rest),
                "domain" => s.domain = true,
                "module" => {
                    let (name, def) = rest
                        .split_once('=')
                        .ok_or_else(|| c.err(0, "expected `module NAME = ...`"))?;
                    let def = def.trim();
                    let (kind, args) = def.split_once(char::is_whitespace).unwrap_or((def, ""));
                    let args = args.trim();
                    let ints: Vec<&str> = args.split_whitespace().collect();
                    let body = match kind {
                        "residue" => ModuleBody::Residue,
                        "free" => ModuleBody::Free(parse_ints(&c, &ints)?),
                        "cyclic" => ModuleBody::Cyclic(split_list(args)),
                        "ideal" => ModuleBody::Ideal(split_list(args)),
                        "present" => {
                            block = Block::Present;
                            ModuleBody::Present {
                                gens: parse_ints(&c, &ints)?,
                                rels: Vec::new(),
                            }
                        }
                        other => return Err(c.err_at(other, format!("unknown module kind `{other}`"))),
                    };
                    s.modules.push(ModuleDecl {
                        name: name.trim().to_string(),
                        body,
                    });
                }
                "certificate" => {
                    if words.len() < 3 || words[1] != "for" {
                        return Err(c.err(0, "expected `certificate NAME for MODULE [pd_bound=N]`"));
                    }
                    let kv = key_values(&c, &words[3..])?;
                    let pd_bound = match kv.get("pd_bound") {
                        Some(v) => parse_ints(&c, &[v])?[0],
                        None => 0,
                    };
                    s.certificates.push(CertificateDecl {
                        name: words[0].to_string(),
                        module: words[2].to_string(),
                        pd_bound,
                        steps: Vec::new(),
                    });
                    block = Block::Certificate;
                }
                "instance" => {
                    let (name, spec) = rest
                        .split_once(':')
                        .ok_or_else(|| c.err(0, "expected `instance NAME: KIND ...`"))?;
                    let mut parts = spec.split_whitespace();
                    let kind = parts
                        .next()
                        .ok_or_else(|| c.err(0, "instance needs a kind"))?
                        .to_string();
                    let mut args = Vec::new();
                    let mut options = BTreeMap::new();
                    for p in parts {
                        match p.split_once('=') {
                            Some((k, v)) => {
                                options.insert(k.to_string(), v.to_string());
                            }
                            None => args.push(p.to_string()),
                        }
                    }
                    s.instances.push(InstanceDecl {
                        name: name.trim().to_string(),
                        kind,
                        args,
                        options,
                    });
                }
                other => return Err(c.err(0, format!("unknown directive `{other}`"))),
            }
        }
        if s.vars.is_empty() {
            return Err(ParseError {
                line: 1,
                column: 1,
                message: "no `vars` line".into(),
            });
        }
        if s.weights.is_empty() {
            s.weights = vec![1; s.vars.len()];
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "field {}", self.modulus);
        let _ = writeln!(o, "vars {}", self.vars.join(" "));
        let _ = writeln!(o, "weights {}", join(&self.weights, " "));
        let _ = writeln!(o, "order {}", self.order.name());
        if !self.ideal.is_empty() {
            let _ = writeln!(o, "ideal {}", self.ideal.join(", "));
        }
        if self.domain {
            o.push_str("domain\n");
        }
        for m in &self.modules {
            let _ = match &m.body {
                ModuleBody::Residue => writeln!(o, "module {} = residue", m.name),
                ModuleBody::Free(t) => writeln!(o, "module {} = free {}", m.name, join(t, " ")),
                ModuleBody::Cyclic(e) => writeln!(o, "module {} = cyclic {}", m.name, e.join(", ")),
                ModuleBody::Ideal(e) => writeln!(o, "module {} = ideal {}", m.name, e.join(", ")),
                ModuleBody::Present { gens, rels } => {
                    let _ = writeln!(o, "module {} = present {}", m.name, join(gens, " "));
                    for r in rels {
                        let _ = writeln!(o, "  rel {}", r.join(", "));
                    }
                    Ok(())
                }
            };
        }
        for c in &self.certificates {
            let _ = writeln!(o, "certificate {} for {} pd_bound={}", c.name, c.module, c.pd_bound);
            for st in &c.steps {
                let _ = writeln!(
                    o,
                    "  step n={} a={} b={} middle={}",
                    st.n,
                    join(&st.a, ","),
                    join(&st.b, ","),
                    st.middle
                );
                let cols = |v: &[Vec<String>]| v.iter().map(|c| c.join(", ")).collect::<Vec<_>>().join(" | ");
                let _ = writeln!(o, "    left {}", cols(&st.left));
                let _ = writeln!(o, "    right {}", cols(&st.right));
            }
        }
        for i in &self.instances {
            let _ = write!(o, "instance {}: {}", i.name, i.kind);
            for a in &i.args {
                let _ = write!(o, " {a}");
            }
            for (k, v) in &i.options {
                let _ = write!(o, " {k}={v}");
            }
            o.push('\n');
        }
        o
    }

    pub fn instance(&self, name: &str) -> Option<&InstanceDecl> {
        self.instances.iter().find(|i| i.name == name)
    }

    pub fn build(&self) -> Result<Built, AlgebraError> {
        let field = PrimeField::new(self.modulus)?;
        let poly = PolyRing::new(field, self.vars.clone(), self.weights.clone(), self.order)?;
        let gens = self
            .ideal
            .iter()
            .map(|g| Polynomial::parse(&poly, g))
            .collect::<Result<Vec<_>, _>>()?;
        let ring = GradedRing::new(poly, gens)?;
        let mut modules = BTreeMap::new();
        for m in &self.modules {
            let module = build_module(&ring, &m.body)?;
            modules.insert(m.name.clone(), module);
        }
        Ok(Built {
            session: self.clone(),
            ring,
            modules,
        })
    }
}

fn join<T: fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}

fn parse_column(ring: &GradedRing<PrimeField>, col: &[String]) -> Result<Column<PrimeField>, AlgebraError> {
    col.iter().map(|e| ring.parse(e)).collect()
}

fn build_module(
    ring: &Arc<GradedRing<PrimeField>>,
    body: &ModuleBody,
) -> Result<PresentedModule<PrimeField>, AlgebraError> {
    let polys = |v: &[String]| v.iter().map(|e| ring.parse(e)).collect::<Result<Vec<_>, _>>();
    match body {
        ModuleBody::Residue => Ok(PresentedModule::residue_field(ring)),
        ModuleBody::Free(t) => Ok(PresentedModule::free(ring, t.clone())),
        ModuleBody::Cyclic(e) => PresentedModule::cyclic(ring, &polys(e)?),
        ModuleBody::Ideal(e) => PresentedModule::ideal(ring, &polys(e)?),
        ModuleBody::Present { gens, rels } => {
            let cols = rels
                .iter()
                .map(|r| parse_column(ring, r))
                .collect::<Result<Vec<_>, _>>()?;
            for (i, c) in cols.iter().enumerate() {
                if c.len() != gens.len() {
                    return Err(AlgebraError::Invalid(format!(
                        "relation {i} has {} entries for {} generators",
                        c.len(),
                        gens.len()
                    )));
                }
            }
            PresentedModule::new(ring, gens.clone(), cols)
        }
    }
}

/// A session with its ring and modules constructed.
pub struct Built {
    pub session: Session,
    pub ring: Arc<GradedRing<PrimeField>>,
    pub modules: BTreeMap<String, PresentedModule<PrimeField>>,
}

impl Built {
    pub fn module(&self, name: &str) -> Result<&PresentedModule<PrimeField>, AlgebraError> {
        self.modules
            .get(name)
            .ok_or_else(|| AlgebraError::Parse(format!("no module named `{name}`")))
    }

    pub fn certificate(&self, name: &str) -> Result<(ReducingSequence<PrimeField>, usize), AlgebraError> {
        let decl = self
            .session
            .certificates
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| AlgebraError::Parse(format!("no certificate named `{name}`")))?;
        let start = self.module(&decl.module)?.clone();
        let mut steps = Vec::new();
        for st in &decl.steps {
            let cols = |v: &[Vec<String>]| {
                v.iter()
                    .map(|c| parse_column(&self.ring, c))
                    .collect::<Result<Vec<_>, _>>()
            };
            steps.push(ReducingStep {
                n: st.n,
                a_twists: st.a.clone(),
                b_twists: st.b.clone(),
                middle: self.module(&st.middle)?.clone(),
                left: cols(&st.left)?,
                right: cols(&st.right)?,
            });
        }
        Ok((ReducingSequence { start, steps }, decl.pd_bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
field 101
vars x y   # two variables
ideal x^2, x*y, y^2
module k = residue
module F = free 1 1
module P = present 0 0
  rel x, -y
certificate c for k pd_bound=0
  step n=1 a=-2,-2,-2,-2 b=0 middle=F
    left x, 0 | y, 0 | 0, x | 0, y
    right 1, 0 | 0, 1
instance i: betti k bound=4 expect=1,2,4,8,16
";

    #[test]
    fn round_trip() {
        let s = Session::parse(SAMPLE).unwrap();
        assert_eq!(s.weights, vec![1, 1]);
        assert_eq!(s.certificates[0].steps[0].left.len(), 4);
        let again = Session::parse(&s.to_text()).unwrap();
        assert_eq!(s, again);
        assert_eq!(again.to_text(), s.to_text());
    }

    #[test]
    fn builds_modules_and_certificates() {
        let b = Session::parse(SAMPLE).unwrap().build().unwrap();
        assert_eq!(b.module("P").unwrap().relations().len(), 1);
        let (seq, pd) = b.certificate("c").unwrap();
        assert_eq!((seq.len(), pd), (1, 0));
        assert!(b.module("nope").is_err());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = Session::parse("vars x\nweights 1 q\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
        let e = Session::parse("vars x\nmodule M = banana\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = Session::parse("vars x\n  rel x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }
}
