//! Scenario syntax tree and its canonical printer. Equality ignores spans,
//! so `parse(print(ast)) == ast` is a meaningful round-trip check.

use std::fmt;

use num_bigint::BigUint;

use crate::error::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

const NEG_PREC: u8 = 3;
const ATOM_PREC: u8 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigUint),
    Ident(String),
    Str(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    List(Vec<Expr>),
    Point(Box<[Expr; 3]>),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(op, _, _) => op.precedence(),
            ExprKind::Neg(_) => NEG_PREC,
            _ => ATOM_PREC,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            write!(f, "(")?;
        }
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}")?,
            ExprKind::Ident(s) => write!(f, "{s}")?,
            ExprKind::Str(s) => write!(f, "\"{s}\"")?,
            ExprKind::Neg(e) => {
                write!(f, "-")?;
                e.write_prec(f, NEG_PREC)?;
            }
            ExprKind::Binary(op, l, r) => {
                let p = op.precedence();
                let (lmin, rmin) = match op {
                    BinOp::Pow => (ATOM_PREC, NEG_PREC),
                    _ => (p, p + 1),
                };
                l.write_prec(f, lmin)?;
                if *op == BinOp::Pow {
                    write!(f, "^")?;
                } else {
                    write!(f, " {} ", op.symbol())?;
                }
                r.write_prec(f, rmin)?;
            }
            ExprKind::Call(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                write!(f, ")")?;
            }
            ExprKind::List(items) => {
                write!(f, "[")?;
                write_list(f, items)?;
                write!(f, "]")?;
            }
            ExprKind::Point(c) => write!(f, "({} : {} : {})", c[0], c[1], c[2])?,
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (k, e) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjKind {
    Curve,
    Line,
    Conic,
    Point,
    Lines,
    Points,
    Conics,
}

impl ObjKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ObjKind::Curve => "curve",
            ObjKind::Line => "line",
            ObjKind::Conic => "conic",
            ObjKind::Point => "point",
            ObjKind::Lines => "lines",
            ObjKind::Points => "points",
            ObjKind::Conics => "conics",
        }
    }

    pub fn from_keyword(k: &str) -> Option<Self> {
        [ObjKind::Curve, ObjKind::Line, ObjKind::Conic, ObjKind::Point, ObjKind::Lines, ObjKind::Points, ObjKind::Conics]
            .into_iter()
            .find(|o| o.keyword() == k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelOp {
    Eq,
    Ne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Field { name: String, gens: Vec<(String, Expr)> },
    Let { name: String, value: Expr },
    Object { kind: ObjKind, name: String, value: Expr },
    Assert { lhs: Expr, op: RelOp, rhs: Expr },
    AssertCall(Expr),
    Print(Expr),
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
    /// The statement's source text.
    pub text: String,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Stmt {}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Field { name, gens } => {
                write!(f, "field {name} = Q(")?;
                for (k, (g, e)) in gens.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}: {e}")?;
                }
                write!(f, ")")
            }
            StmtKind::Let { name, value } => write!(f, "let {name} = {value}"),
            StmtKind::Object { kind, name, value } => write!(f, "{} {name} = {value}", kind.keyword()),
            StmtKind::Assert { lhs, op, rhs } => {
                let op = match op {
                    RelOp::Eq => "==",
                    RelOp::Ne => "!=",
                };
                write!(f, "assert {lhs} {op} {rhs}")
            }
            StmtKind::AssertCall(e) => write!(f, "assert {e}"),
            StmtKind::Print(e) => write!(f, "print {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScenarioAst {
    pub statements: Vec<Stmt>,
}

impl fmt::Display for ScenarioAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
