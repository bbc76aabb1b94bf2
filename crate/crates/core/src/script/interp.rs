use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use super::ast::*;
use super::parser::parse_script;
use crate::error::{Error, ParseError, Position};
use crate::flatness::{fibered_product_ideal, flat_at_point, graph_ideal, AffineMorphism, PointSpec};
use crate::groebner::{map_kernel, IdealHandle, RingMap};
use crate::homology::{tor, PresentedModule, SubmodulePresentation, TorReport};
use crate::poly::{MonomialOrder, Polynomial, PolyExpr, PresentedRing, RingSignature};

#[derive(Clone, Debug)]
pub enum Value {
    Ring(PresentedRing),
    Ideal(IdealHandle),
    Module(PresentedModule),
    Map(RingMap),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Ideal(_) => "ideal",
            Value::Module(_) => "module",
            Value::Map(_) => "map",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// One executed assertion.
#[derive(Clone, Debug)]
pub struct AssertionResult {
    pub line: usize,
    pub text: String,
    pub outcome: Outcome,
    /// What was computed: `zero`, `nonzero`, `flat`, `not flat`, `member`,
    /// `not member`.
    pub actual: String,
    /// Whether the underlying Tor module vanished, for Tor and flatness checks.
    pub tor_zero: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Syntax errors and unresolved names.
    Parse,
    /// Failures during computation, e.g. mismatched rings.
    Compute,
}

#[derive(Clone, Debug)]
pub struct ScriptError {
    pub class: ErrorClass,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl ScriptError {
    fn at(pos: Position, e: Error) -> Self {
        match e {
            Error::Parse(p) => Self {
                class: ErrorClass::Parse,
                message: p.to_string(),
            },
            other => Self {
                class: ErrorClass::Compute,
                message: format!("error at {pos}: {other}"),
            },
        }
    }
}

/// Everything a run produced, in statement order.
#[derive(Clone, Debug, Default)]
pub struct ScriptReport {
    /// Report lines: assertion results and printed values.
    pub lines: Vec<String>,
    pub assertions: Vec<AssertionResult>,
    pub error: Option<ScriptError>,
    pub(crate) env: HashMap<String, Value>,
}

impl ScriptReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.assertions.iter().all(|a| a.outcome == Outcome::Pass)
    }

    /// 0 = all assertions pass, 1 = an assertion failed, 2 = parse or
    /// name error, 3 = computation error.
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) if e.class == ErrorClass::Parse => 2,
            Some(_) => 3,
            None if self.passed() => 0,
            None => 1,
        }
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    pub fn summary(&self) -> String {
        let failed = self.assertions.iter().filter(|a| a.outcome == Outcome::Fail).count();
        format!(
            "{} assertions, {} passed, {} failed",
            self.assertions.len(),
            self.assertions.len() - failed,
            failed
        )
    }

    /// The report as printed by `run`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if self.error.is_none() {
            out.push_str(&self.summary());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Monomial order for rings declared with `QQ[...]`.
    pub order: MonomialOrder,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            order: MonomialOrder::Grevlex,
        }
    }
}

struct Interp {
    opts: Options,
    env: HashMap<String, Value>,
}

fn name_error(n: &Name, msg: String) -> ScriptError {
    ScriptError {
        class: ErrorClass::Parse,
        message: ParseError::new(n.pos, msg).to_string(),
    }
}

type SResult<T> = Result<T, ScriptError>;

impl Interp {
    fn lookup(&self, n: &Name) -> SResult<&Value> {
        self.env
            .get(&n.text)
            .ok_or_else(|| name_error(n, format!("unknown name `{}`", n.text)))
    }

    fn wrong_kind<T>(n: &Name, want: &str, got: &Value) -> SResult<T> {
        Err(name_error(n, format!("`{}` is a {}, expected a {want}", n.text, got.kind())))
    }

    fn ring(&self, n: &Name) -> SResult<PresentedRing> {
        match self.lookup(n)? {
            Value::Ring(r) => Ok(r.clone()),
            v => Self::wrong_kind(n, "ring", v),
        }
    }

    fn ideal(&self, n: &Name) -> SResult<IdealHandle> {
        match self.lookup(n)? {
            Value::Ideal(i) => Ok(i.clone()),
            v => Self::wrong_kind(n, "ideal", v),
        }
    }

    fn map(&self, n: &Name) -> SResult<RingMap> {
        match self.lookup(n)? {
            Value::Map(m) => Ok(m.clone()),
            v => Self::wrong_kind(n, "map", v),
        }
    }

    fn module(&self, pos: Position, a: &ModArg) -> SResult<PresentedModule> {
        match a {
            ModArg::Free(r, k) => Ok(PresentedModule::free(&self.ring(r)?, *k)),
            ModArg::Name(n) => match self.lookup(n)? {
                Value::Module(m) => Ok(m.clone()),
                Value::Ideal(i) => PresentedModule::from_ideal(i).map_err(|e| ScriptError::at(pos, e)),
                v => Self::wrong_kind(n, "module or ideal", v),
            },
        }
    }

    fn polys(&self, pos: Position, ring: &PresentedRing, ps: &[PolyExpr]) -> SResult<Vec<Polynomial>> {
        ps.iter()
            .map(|p| p.evaluate(ring.signature()).map_err(|e| ScriptError::at(pos, e)))
            .collect()
    }

    fn ring_expr(&self, pos: Position, e: &RingExpr) -> SResult<PresentedRing> {
        let c = |e: Error| ScriptError::at(pos, e);
        match e {
            RingExpr::Poly { vars, relations } => {
                for (i, v) in vars.iter().enumerate() {
                    if vars[..i].iter().any(|w| w.text == v.text) {
                        return Err(name_error(v, format!("repeated variable `{}`", v.text)));
                    }
                }
                let names: Vec<&str> = vars.iter().map(|v| v.text.as_str()).collect();
                let sig = RingSignature::new(&names, self.opts.order).map_err(c)?;
                let free = PresentedRing::free(sig.clone());
                let rels = self.polys(pos, &free, relations)?;
                PresentedRing::new(sig, rels).map_err(c)
            }
            RingExpr::Ref(n) => self.ring(n),
            RingExpr::Image(n) => {
                let f = self.map(n)?;
                let k = map_kernel(&f).map_err(c)?;
                let src = f.source();
                let mut defining = src.defining_generators().to_vec();
                defining.extend_from_slice(k.generators());
                PresentedRing::new(src.signature().clone(), defining).map_err(c)
            }
            RingExpr::RingOf(n) => match self.lookup(n)? {
                Value::Ideal(i) => Ok(i.ring().clone()),
                Value::Module(m) => Ok(m.ring().clone()),
                Value::Ring(r) => Ok(r.clone()),
                v => Self::wrong_kind(n, "ideal or module", v),
            },
            RingExpr::Tensor(a, b) => {
                let a = self.ring_expr(pos, a)?;
                let b = self.ring_expr(pos, b)?;
                Ok(crate::flatness::tensor_rings(&a, &b).map_err(c)?.ring)
            }
        }
    }

    fn ideal_expr(&self, pos: Position, e: &IdealExpr) -> SResult<IdealHandle> {
        let c = |e: Error| ScriptError::at(pos, e);
        match e {
            IdealExpr::Gens { gens, ring } => {
                let r = self.ring(ring)?;
                let gens = self.polys(pos, &r, gens)?;
                IdealHandle::new(&r, gens).map_err(c)
            }
            IdealExpr::Graph(m) => {
                let f = AffineMorphism::new(self.map(m)?);
                Ok(graph_ideal(&f).map_err(c)?.0)
            }
            IdealExpr::Fibered(a, b) => {
                let f = AffineMorphism::new(self.map(a)?);
                let g = AffineMorphism::new(self.map(b)?);
                Ok(fibered_product_ideal(&f, &g).map_err(c)?.ideal)
            }
            IdealExpr::Kernel(m) => map_kernel(&self.map(m)?).map_err(c),
        }
    }

    fn module_expr(&self, pos: Position, e: &ModuleExpr) -> SResult<PresentedModule> {
        let c = |e: Error| ScriptError::at(pos, e);
        match e {
            ModuleExpr::Ref(n) => self.module(pos, &ModArg::Name(n.clone())),
            ModuleExpr::Free { ring, rank, relations } => {
                let r = self.ring(ring)?;
                let mut cols = Vec::with_capacity(relations.len());
                for rel in relations {
                    let col = match rel {
                        Relation::Scalar(p) => self.polys(pos, &r, std::slice::from_ref(p))?,
                        Relation::Vector(ps) => self.polys(pos, &r, ps)?,
                    };
                    if col.len() != *rank {
                        return Err(c(crate::error::Error::Dimension(format!(
                            "relation of length {} in a module of rank {rank}",
                            col.len()
                        ))));
                    }
                    cols.push(col);
                }
                let rel = SubmodulePresentation::new(&r, *rank, cols).map_err(c)?;
                Ok(PresentedModule::new(rel))
            }
        }
    }

    fn tor(&self, pos: Position, index: usize, a: &ModArg, b: &ModArg) -> SResult<TorReport> {
        let m = self.module(pos, a)?;
        let n = self.module(pos, b)?;
        tor(index, &m, &n).map_err(|e| ScriptError::at(pos, e))
    }

    fn check(&self, pos: Position, check: &Check) -> SResult<(bool, String, Option<bool>)> {
        let c = |e: Error| ScriptError::at(pos, e);
        match check {
            Check::Tor { index, left, right, zero } => {
                let t = self.tor(pos, *index, left, right)?;
                let actual = if t.is_zero { "zero" } else { "nonzero" };
                Ok((t.is_zero == *zero, actual.into(), Some(t.is_zero)))
            }
            Check::Flat { subject, point, via } => {
                let m = self.module(pos, subject)?;
                let map = via.as_ref().map(|n| self.map(n)).transpose()?;
                let point_ring = match &map {
                    Some(f) => f.source().clone(),
                    None => m.ring().clone(),
                };
                let gens = self.polys(pos, &point_ring, point)?;
                let p = PointSpec::new(IdealHandle::new(&point_ring, gens).map_err(c)?).map_err(c)?;
                let v = flat_at_point(&m, &p, map.as_ref()).map_err(c)?;
                let actual = if v.flat { "flat" } else { "not flat" };
                Ok((v.flat, actual.into(), Some(v.tor_witness.is_zero)))
            }
            Check::Contains { ideal, poly } => {
                let i = self.ideal(ideal)?;
                let f = self.polys(pos, i.ring(), std::slice::from_ref(poly))?.remove(0);
                let member = i.contains(&f).map_err(c)?;
                let actual = if member { "member" } else { "not member" };
                Ok((member, actual.into(), None))
            }
        }
    }

    fn print(&self, pos: Position, e: &PrintExpr, out: &mut Vec<String>) -> SResult<()> {
        let c = |e: Error| ScriptError::at(pos, e);
        match e {
            PrintExpr::Name(n) => {
                let text = match self.lookup(n)? {
                    Value::Ring(r) => r.to_string(),
                    Value::Ideal(i) => format!("{i} in {}", i.ring()),
                    Value::Module(m) => module_text(m),
                    Value::Map(f) => f.to_string(),
                };
                out.push(format!("{n} = {text}"));
            }
            PrintExpr::Gb(n) => {
                let i = self.ideal(n)?;
                out.push(format!("gb({n}):"));
                for g in i.reduced_groebner() {
                    out.push(format!("  {g}"));
                }
            }
            PrintExpr::Kernel(n) => {
                let k = map_kernel(&self.map(n)?).map_err(c)?;
                out.push(format!("kernel({n}) = {k}"));
            }
            PrintExpr::Tor { index, left, right } => {
                let t = self.tor(pos, *index, left, right)?;
                out.extend(tor_lines(&format!("tor({index}, {left}, {right})"), &t));
            }
        }
        Ok(())
    }

    fn declare(&mut self, n: &Name, v: Value) -> SResult<()> {
        if self.env.contains_key(&n.text) {
            return Err(name_error(n, format!("`{}` is already defined", n.text)));
        }
        self.env.insert(n.text.clone(), v);
        Ok(())
    }
}

/// `R^n / (relations)` text for a module.
pub fn module_text(m: &PresentedModule) -> String {
    let mut s = format!("({})^{}", m.ring(), m.rank());
    let rels = m.relations().generators();
    if !rels.is_empty() {
        let parts: Vec<String> = rels
            .iter()
            .map(|c| {
                let e: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                if e.len() == 1 {
                    e[0].clone()
                } else {
                    format!("[{}]", e.join(", "))
                }
            })
            .collect();
        let _ = write!(s, " / ({})", parts.join(", "));
    }
    s
}

/// Verdict line plus one line per witness.
pub fn tor_lines(label: &str, t: &TorReport) -> Vec<String> {
    let mut out = vec![format!("{label} {} 0", if t.is_zero { "==" } else { "!=" })];
    for w in &t.witness_generators {
        out.push(format!("  witness {w}"));
    }
    out
}

pub fn run_parsed(script: &Script, opts: Options) -> ScriptReport {
    let mut it = Interp {
        opts,
        env: HashMap::new(),
    };
    let mut report = ScriptReport::default();
    for st in &script.statements {
        let pos = st.pos;
        let r: SResult<()> = (|| {
            match &st.kind {
                StatementKind::Ring(n, e) => {
                    let r = it.ring_expr(pos, e)?;
                    it.declare(n, Value::Ring(r))
                }
                StatementKind::Ideal(n, e) => {
                    let i = it.ideal_expr(pos, e)?;
                    it.declare(n, Value::Ideal(i))
                }
                StatementKind::Module(n, e) => {
                    let m = it.module_expr(pos, e)?;
                    it.declare(n, Value::Module(m))
                }
                StatementKind::Map { name, source, target, images } => {
                    let s = it.ring(source)?;
                    let t = it.ring(target)?;
                    let imgs = it.polys(pos, &t, images)?;
                    let f = RingMap::new(&s, &t, imgs).map_err(|e| ScriptError::at(pos, e))?;
                    it.declare(name, Value::Map(f))
                }
                StatementKind::Assert { negated, check } => {
                    let (holds, actual, tor_zero) = it.check(pos, check)?;
                    let pass = holds != *negated;
                    let outcome = if pass { Outcome::Pass } else { Outcome::Fail };
                    let tag = if pass { "PASS" } else { "FAIL" };
                    let text = st.kind.to_string();
                    report.lines.push(format!("[{tag}] line {}: {text} ({actual})", pos.line));
                    report.assertions.push(AssertionResult {
                        line: pos.line,
                        text,
                        outcome,
                        actual,
                        tor_zero,
                    });
                    Ok(())
                }
                StatementKind::Print(e) => it.print(pos, e, &mut report.lines),
            }
        })();
        if let Err(e) = r {
            report.error = Some(e);
            break;
        }
    }
    report.env = it.env;
    report
}

pub fn run_source(text: &str, opts: Options) -> ScriptReport {
    match parse_script(text) {
        Ok(s) => run_parsed(&s, opts),
        Err(e) => ScriptReport {
            error: Some(ScriptError {
                class: ErrorClass::Parse,
                message: e.to_string(),
            }),
            ..Default::default()
        },
    }
}
