use std::fmt;

use crate::error::Position;
use crate::poly::PolyExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Position,
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    /// `QQ[vars] / (relations)`
    Poly { vars: Vec<Name>, relations: Vec<PolyExpr> },
    Ref(Name),
    /// `image F`: the source of `F` modulo its kernel.
    Image(Name),
    /// `ring(I)`: the ring an ideal or module lives in.
    RingOf(Name),
    Tensor(Box<RingExpr>, Box<RingExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Gens { gens: Vec<PolyExpr>, ring: Name },
    Graph(Name),
    Fibered(Name, Name),
    Kernel(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Scalar(PolyExpr),
    Vector(Vec<PolyExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    /// `R^n / (relations)`
    Free { ring: Name, rank: usize, relations: Vec<Relation> },
    /// An ideal viewed as a module, or another module.
    Ref(Name),
}

/// A module-valued argument of `tor` and `flat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModArg {
    Name(Name),
    Free(Name, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Tor { index: usize, left: ModArg, right: ModArg, zero: bool },
    Flat { subject: ModArg, point: Vec<PolyExpr>, via: Option<Name> },
    Contains { ideal: Name, poly: PolyExpr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrintExpr {
    Name(Name),
    Gb(Name),
    Tor { index: usize, left: ModArg, right: ModArg },
    Kernel(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Ring(Name, RingExpr),
    Ideal(Name, IdealExpr),
    Module(Name, ModuleExpr),
    Map { name: Name, source: Name, target: Name, images: Vec<PolyExpr> },
    Assert { negated: bool, check: Check },
    Print(PrintExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub pos: Position,
    pub kind: StatementKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl RingExpr {
    fn write(&self, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
        match self {
            RingExpr::Poly { vars, relations } => {
                f.write_str("QQ[")?;
                list(f, vars)?;
                f.write_str("]")?;
                if !relations.is_empty() {
                    f.write_str(" / (")?;
                    list(f, relations)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            RingExpr::Ref(n) => write!(f, "{n}"),
            RingExpr::Image(n) => write!(f, "image {n}"),
            RingExpr::RingOf(n) => write!(f, "ring({n})"),
            RingExpr::Tensor(a, b) => {
                if nested {
                    f.write_str("(")?;
                }
                a.write(f, false)?;
                f.write_str(" ** ")?;
                b.write(f, true)?;
                if nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Gens { gens, ring } => {
                f.write_str("(")?;
                list(f, gens)?;
                write!(f, ") in {ring}")
            }
            IdealExpr::Graph(m) => write!(f, "graph({m})"),
            IdealExpr::Fibered(a, b) => write!(f, "fibered({a}, {b})"),
            IdealExpr::Kernel(m) => write!(f, "kernel({m})"),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Scalar(p) => write!(f, "{p}"),
            Relation::Vector(ps) => {
                f.write_str("[")?;
                list(f, ps)?;
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Free { ring, rank, relations } => {
                write!(f, "{ring}^{rank}")?;
                if !relations.is_empty() {
                    f.write_str(" / (")?;
                    list(f, relations)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            ModuleExpr::Ref(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for ModArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModArg::Name(n) => write!(f, "{n}"),
            ModArg::Free(r, n) => write!(f, "free({r}, {n})"),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Tor { index, left, right, zero } => {
                let op = if *zero { "==" } else { "!=" };
                write!(f, "tor({index}, {left}, {right}) {op} 0")
            }
            Check::Flat { subject, point, via } => {
                write!(f, "flat({subject} at (")?;
                list(f, point)?;
                f.write_str(")")?;
                if let Some(m) = via {
                    write!(f, " via {m}")?;
                }
                f.write_str(")")
            }
            Check::Contains { ideal, poly } => write!(f, "contains({ideal}, {poly})"),
        }
    }
}

impl fmt::Display for PrintExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrintExpr::Name(n) => write!(f, "{n}"),
            PrintExpr::Gb(n) => write!(f, "gb({n})"),
            PrintExpr::Tor { index, left, right } => write!(f, "tor({index}, {left}, {right})"),
            PrintExpr::Kernel(n) => write!(f, "kernel({n})"),
        }
    }
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementKind::Ring(n, e) => write!(f, "ring {n} = {e};"),
            StatementKind::Ideal(n, e) => write!(f, "ideal {n} = {e};"),
            StatementKind::Module(n, e) => write!(f, "module {n} = {e};"),
            StatementKind::Map { name, source, target, images } => {
                write!(f, "map {name} : {source} -> {target} = {{")?;
                list(f, images)?;
                f.write_str("};")
            }
            StatementKind::Assert { negated, check } => {
                let not = if *negated { "not " } else { "" };
                write!(f, "assert {not}{check};")
            }
            StatementKind::Print(e) => write!(f, "print {e};"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn strip_poly(e: &PolyExpr) -> PolyExpr {
    let b = |x: &PolyExpr| Box::new(strip_poly(x));
    match e {
        PolyExpr::Num(c) => PolyExpr::Num(c.clone()),
        PolyExpr::Var(n, _) => PolyExpr::Var(n.clone(), Position::default()),
        PolyExpr::Neg(a) => PolyExpr::Neg(b(a)),
        PolyExpr::Add(x, y) => PolyExpr::Add(b(x), b(y)),
        PolyExpr::Sub(x, y) => PolyExpr::Sub(b(x), b(y)),
        PolyExpr::Mul(x, y) => PolyExpr::Mul(b(x), b(y)),
        PolyExpr::Pow(x, k) => PolyExpr::Pow(b(x), *k),
    }
}

fn polys(ps: &[PolyExpr]) -> Vec<PolyExpr> {
    ps.iter().map(strip_poly).collect()
}

fn name(n: &Name) -> Name {
    Name {
        text: n.text.clone(),
        pos: Position::default(),
    }
}

fn ring_expr(e: &RingExpr) -> RingExpr {
    match e {
        RingExpr::Poly { vars, relations } => RingExpr::Poly {
            vars: vars.iter().map(name).collect(),
            relations: polys(relations),
        },
        RingExpr::Ref(n) => RingExpr::Ref(name(n)),
        RingExpr::Image(n) => RingExpr::Image(name(n)),
        RingExpr::RingOf(n) => RingExpr::RingOf(name(n)),
        RingExpr::Tensor(a, b) => RingExpr::Tensor(Box::new(ring_expr(a)), Box::new(ring_expr(b))),
    }
}

fn mod_arg(a: &ModArg) -> ModArg {
    match a {
        ModArg::Name(n) => ModArg::Name(name(n)),
        ModArg::Free(r, k) => ModArg::Free(name(r), *k),
    }
}

impl Script {
    /// The same script with every source position reset, for comparing
    /// scripts up to layout.
    pub fn without_positions(&self) -> Script {
        let statements = self
            .statements
            .iter()
            .map(|s| {
                let kind = match &s.kind {
                    StatementKind::Ring(n, e) => StatementKind::Ring(name(n), ring_expr(e)),
                    StatementKind::Ideal(n, e) => StatementKind::Ideal(
                        name(n),
                        match e {
                            IdealExpr::Gens { gens, ring } => IdealExpr::Gens {
                                gens: polys(gens),
                                ring: name(ring),
                            },
                            IdealExpr::Graph(m) => IdealExpr::Graph(name(m)),
                            IdealExpr::Fibered(a, b) => IdealExpr::Fibered(name(a), name(b)),
                            IdealExpr::Kernel(m) => IdealExpr::Kernel(name(m)),
                        },
                    ),
                    StatementKind::Module(n, e) => StatementKind::Module(
                        name(n),
                        match e {
                            ModuleExpr::Free { ring, rank, relations } => ModuleExpr::Free {
                                ring: name(ring),
                                rank: *rank,
                                relations: relations
                                    .iter()
                                    .map(|r| match r {
                                        Relation::Scalar(p) => Relation::Scalar(strip_poly(p)),
                                        Relation::Vector(ps) => Relation::Vector(polys(ps)),
                                    })
                                    .collect(),
                            },
                            ModuleExpr::Ref(m) => ModuleExpr::Ref(name(m)),
                        },
                    ),
                    StatementKind::Map { name: n, source, target, images } => StatementKind::Map {
                        name: name(n),
                        source: name(source),
                        target: name(target),
                        images: polys(images),
                    },
                    StatementKind::Assert { negated, check } => StatementKind::Assert {
                        negated: *negated,
                        check: match check {
                            Check::Tor { index, left, right, zero } => Check::Tor {
                                index: *index,
                                left: mod_arg(left),
                                right: mod_arg(right),
                                zero: *zero,
                            },
                            Check::Flat { subject, point, via } => Check::Flat {
                                subject: mod_arg(subject),
                                point: polys(point),
                                via: via.as_ref().map(name),
                            },
                            Check::Contains { ideal, poly } => Check::Contains {
                                ideal: name(ideal),
                                poly: strip_poly(poly),
                            },
                        },
                    },
                    StatementKind::Print(e) => StatementKind::Print(match e {
                        PrintExpr::Name(n) => PrintExpr::Name(name(n)),
                        PrintExpr::Gb(n) => PrintExpr::Gb(name(n)),
                        PrintExpr::Tor { index, left, right } => PrintExpr::Tor {
                            index: *index,
                            left: mod_arg(left),
                            right: mod_arg(right),
                        },
                        PrintExpr::Kernel(n) => PrintExpr::Kernel(name(n)),
                    }),
                };
                Statement {
                    pos: Position::default(),
                    kind,
                }
            })
            .collect();
        Script { statements }
    }
}
