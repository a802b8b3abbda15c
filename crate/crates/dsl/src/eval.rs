//! Statement execution against the exact kernel.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use quartica_core::census::{conic_census, CensusStatus, ClaimedPoint};
use quartica_core::contact::{
    biosculating_conics, contact_order, hessian, mtl_verify, sextactic_classify, PlaneCurve, SextacticClass, DEFAULT_CAP,
};
use quartica_core::geometry::{cross_ratio, dual_line, dual_point, is_harmonic, join, line_census, meet, Conic, ProjLine, ProjPoint};
use quartica_core::ideals::{hilbert_function, split_binary_form, variety_containment, verify_complete_intersection, PointSet};
use quartica_core::poly::{MultiPoly, Var};
use quartica_core::{Error as CoreError, FieldElement, Rational, Tower, TowerBuilder, TowerRef};

use crate::ast::{BinOp, Expr, ExprKind, ObjKind, RelOp, ScenarioAst, StmtKind};
use crate::error::{DslError, DslResult, Span};
use crate::parser::{parse_expr, parse_source};
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub span: Span,
    pub text: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScenarioResult {
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub output: Vec<String>,
}

impl ScenarioResult {
    /// 0 when every assertion passes, 1 on any failure, 2 when some are
    /// inconclusive and none fail.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario results serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.output {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("{status:<12} {}  {}\n", c.span, c.text));
            if c.status != Status::Pass {
                out.push_str(&format!("             computed: {}\n             expected: {}\n", c.computed, c.expected));
            }
        }
        out
    }
}

const RESERVED: [&str; 3] = ["x", "y", "z"];

/// Scenario interpreter state: the active field and the bindings made so far.
pub struct Evaluator {
    tower: TowerRef,
    field_name: Option<String>,
    bindings: HashMap<String, Value>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

pub fn evaluate(ast: &ScenarioAst) -> DslResult<ScenarioResult> {
    Evaluator::new().run(ast)
}

pub fn run_source(text: &str) -> DslResult<ScenarioResult> {
    evaluate(&parse_source(text)?)
}

/// Parses `Q(i: -1, r2: 2)`, the bare list `i: -1, r2: 2`, or `Q`.
pub fn parse_field_spec(spec: &str) -> DslResult<TowerRef> {
    let spec = spec.trim();
    let body = if spec == "Q" || spec.is_empty() {
        "Q()".to_string()
    } else if spec.starts_with("Q(") {
        spec.to_string()
    } else {
        format!("Q({spec})")
    };
    let mut ev = Evaluator::new();
    ev.run(&parse_source(&format!("field K = {body}"))?)?;
    Ok(ev.tower)
}

fn int_scalar(t: &TowerRef, n: &num_bigint::BigUint) -> FieldElement {
    FieldElement::from_rational(t, Rational::from_bigint(BigInt::from(n.clone())))
}

impl Evaluator {
    pub fn new() -> Self {
        Self::with_tower(Tower::rationals())
    }

    pub fn with_tower(tower: TowerRef) -> Self {
        let mut ev = Evaluator { tower: tower.clone(), field_name: None, bindings: HashMap::new() };
        ev.bind_generators();
        ev
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn field_name(&self) -> Option<&str> {
        self.field_name.as_deref()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn bind(&mut self, name: &str, value: Value) -> DslResult<()> {
        if RESERVED.contains(&name) {
            return Err(DslError::eval(Span::new(1, 1), format!("`{name}` is a coordinate and cannot be rebound")));
        }
        let v = value.lift_to(&self.tower).map_err(|e| DslError::kernel(Span::new(1, 1), e))?;
        self.bindings.insert(name.to_string(), v);
        Ok(())
    }

    fn bind_generators(&mut self) {
        let names: Vec<String> = self.tower.generator_names().map(str::to_string).collect();
        for g in names {
            let v = self.tower.generator(&g).expect("listed generator");
            self.bindings.insert(g, Value::Scalar(v));
        }
    }

    /// Evaluates a standalone expression in the current state.
    pub fn eval_str(&mut self, text: &str) -> DslResult<Value> {
        let e = parse_expr(text)?;
        self.eval(&e)
    }

    pub fn run(&mut self, ast: &ScenarioAst) -> DslResult<ScenarioResult> {
        let mut result = ScenarioResult::default();
        for stmt in &ast.statements {
            match &stmt.kind {
                StmtKind::Field { name, gens } => {
                    if self.field_name.is_some() {
                        return Err(DslError::eval(stmt.span, "a field is already declared"));
                    }
                    self.declare_field(name, gens)?;
                }
                StmtKind::Let { name, value } => {
                    let v = self.eval(value)?;
                    self.bind_at(name, v, stmt.span)?;
                }
                StmtKind::Object { kind, name, value } => {
                    let v = self.eval(value)?;
                    let v = self.coerce_object(*kind, v, value.span)?;
                    self.bind_at(name, v, stmt.span)?;
                }
                StmtKind::Assert { lhs, op, rhs } => {
                    let outcome = match (self.eval(lhs), self.eval(rhs)) {
                        (Ok(a), Ok(b)) => {
                            let equal = a.equals(&b);
                            let pass = equal == (*op == RelOp::Eq);
                            let expected = match op {
                                RelOp::Eq => b.to_string(),
                                RelOp::Ne => format!("not {b}"),
                            };
                            (if pass { Status::Pass } else { Status::Fail }, a.to_string(), expected)
                        }
                        (Err(DslError::Inconclusive { message, .. }), _) | (_, Err(DslError::Inconclusive { message, .. })) => {
                            (Status::Inconclusive, message, rhs.to_string())
                        }
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    };
                    result.checks.push(CheckOutcome {
                        span: stmt.span,
                        text: stmt.text.clone(),
                        status: outcome.0,
                        computed: outcome.1,
                        expected: outcome.2,
                    });
                }
                StmtKind::AssertCall(e) => {
                    let (status, computed) = match self.eval(e) {
                        Ok(Value::Bool(b)) => (if b { Status::Pass } else { Status::Fail }, b.to_string()),
                        Ok(v @ Value::Verdict(_)) => {
                            let s = if v.to_string() == "certified" { Status::Pass } else { Status::Inconclusive };
                            (s, v.to_string())
                        }
                        Ok(v) => return Err(DslError::eval(e.span, format!("assertion needs a boolean, got {}", v.type_name()))),
                        Err(DslError::Inconclusive { message, .. }) => (Status::Inconclusive, message),
                        Err(err) => return Err(err),
                    };
                    result.checks.push(CheckOutcome {
                        span: stmt.span,
                        text: stmt.text.clone(),
                        status,
                        computed,
                        expected: "true".into(),
                    });
                }
                StmtKind::Print(e) => {
                    let v = self.eval(e)?;
                    result.output.push(v.to_string());
                }
            }
        }
        Ok(result)
    }

    fn bind_at(&mut self, name: &str, v: Value, span: Span) -> DslResult<()> {
        self.bind(name, v).map_err(|e| match e {
            DslError::Eval { message, .. } => DslError::eval(span, message),
            other => other,
        })
    }

    fn declare_field(&mut self, name: &str, gens: &[(String, Expr)]) -> DslResult<()> {
        let mut builder = TowerBuilder::new();
        for (g, e) in gens {
            self.tower = builder.current().clone();
            self.bind_generators();
            let r = match self.eval(e)? {
                Value::Scalar(r) => r,
                other => return Err(DslError::eval(e.span, format!("radicand must be a scalar, got {}", other.type_name()))),
            };
            builder = builder.adjoin(g, &r).map_err(|err| DslError::kernel(e.span, err))?;
        }
        self.tower = builder.build();
        self.field_name = Some(name.to_string());
        let lifted: Vec<(String, Value)> = self
            .bindings
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.lift_to(&self.tower).map_err(|e| DslError::kernel(Span::new(1, 1), e))?)))
            .collect::<DslResult<_>>()?;
        self.bindings = lifted.into_iter().collect();
        self.bind_generators();
        Ok(())
    }

    fn coerce_object(&self, kind: ObjKind, v: Value, span: Span) -> DslResult<Value> {
        Ok(match kind {
            ObjKind::Curve => Value::Curve(self.to_curve(&v, span)?),
            ObjKind::Line => Value::Line(self.to_line(&v, span)?),
            ObjKind::Conic => Value::Conic(self.to_conic(&v, span)?),
            ObjKind::Point => Value::Point(self.to_point(&v, span)?),
            ObjKind::Lines => Value::List(self.items(&v, span)?.iter().map(|x| self.to_line(x, span).map(Value::Line)).collect::<DslResult<_>>()?),
            ObjKind::Points => Value::List(self.items(&v, span)?.iter().map(|x| self.to_point(x, span).map(Value::Point)).collect::<DslResult<_>>()?),
            ObjKind::Conics => Value::List(self.items(&v, span)?.iter().map(|x| self.to_conic(x, span).map(Value::Conic)).collect::<DslResult<_>>()?),
        })
    }

    pub fn eval(&mut self, e: &Expr) -> DslResult<Value> {
        let span = e.span;
        let k = |err: CoreError| DslError::kernel(span, err);
        match &e.kind {
            ExprKind::Int(n) => Ok(Value::Scalar(int_scalar(&self.tower, n))),
            ExprKind::Str(s) => Ok(Value::Str(s.clone())),
            ExprKind::Ident(name) => {
                if let Some(i) = RESERVED.iter().position(|r| r == name) {
                    return Ok(Value::Poly(MultiPoly::var(&self.tower, Var::from_index(i))));
                }
                self.bindings.get(name).cloned().ok_or_else(|| DslError::eval(span, format!("undeclared identifier `{name}`")))
            }
            ExprKind::Neg(inner) => match self.eval(inner)? {
                Value::Scalar(a) => Ok(Value::Scalar(-&a)),
                Value::Poly(p) => Ok(Value::Poly(-&p)),
                other => Err(DslError::eval(span, format!("cannot negate a {}", other.type_name()))),
            },
            ExprKind::Binary(op, l, r) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                self.arith(*op, a, b, span)
            }
            ExprKind::List(items) => Ok(Value::List(items.iter().map(|x| self.eval(x)).collect::<DslResult<_>>()?)),
            ExprKind::Point(c) => {
                let mut coords = Vec::with_capacity(3);
                for x in c.iter() {
                    let v = self.eval(x)?;
                    coords.push(self.to_scalar(&v, x.span)?);
                }
                let coords: [FieldElement; 3] = coords.try_into().expect("three coordinates");
                Ok(Value::Point(ProjPoint::new(coords).map_err(k)?))
            }
            ExprKind::Call(name, args) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<DslResult<Vec<_>>>()?;
                self.call(name, &vals, span)
            }
        }
    }

    fn arith(&self, op: BinOp, a: Value, b: Value, span: Span) -> DslResult<Value> {
        let k = |err: CoreError| DslError::kernel(span, err);
        match (&a, &b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(match op {
                BinOp::Add => x.try_add(y).map_err(k)?,
                BinOp::Sub => x.try_sub(y).map_err(k)?,
                BinOp::Mul => x.try_mul(y).map_err(k)?,
                BinOp::Div => x.try_div(y).map_err(k)?,
                BinOp::Pow => x.powi(self.exponent(y, span)?).map_err(k)?,
            })),
            (Value::Scalar(_) | Value::Poly(_), Value::Scalar(_) | Value::Poly(_)) => {
                let p = self.to_poly(&a, span)?;
                match op {
                    BinOp::Add => Ok(Value::Poly(&p + &self.to_poly(&b, span)?)),
                    BinOp::Sub => Ok(Value::Poly(&p - &self.to_poly(&b, span)?)),
                    BinOp::Mul => Ok(Value::Poly(&p * &self.to_poly(&b, span)?)),
                    BinOp::Div => match &b {
                        Value::Scalar(y) => Ok(Value::Poly(p.scale(&y.inv().map_err(k)?))),
                        _ => Err(DslError::eval(span, "division by a polynomial")),
                    },
                    BinOp::Pow => match &b {
                        Value::Scalar(y) => {
                            let n = self.exponent(y, span)?;
                            let n = u32::try_from(n).map_err(|_| DslError::eval(span, "negative power of a polynomial"))?;
                            Ok(Value::Poly(p.pow(n)))
                        }
                        _ => Err(DslError::eval(span, "exponent must be an integer")),
                    },
                }
            }
            _ => Err(DslError::eval(span, format!("cannot apply `{}` to {} and {}", op.symbol(), a.type_name(), b.type_name()))),
        }
    }

    fn exponent(&self, y: &FieldElement, span: Span) -> DslResult<i64> {
        let r = y.as_rational().filter(|r| r.is_integer()).ok_or_else(|| DslError::eval(span, "exponent must be an integer"))?;
        i64::try_from(r.numer()).map_err(|_| DslError::eval(span, "exponent out of range"))
    }

    fn to_scalar(&self, v: &Value, span: Span) -> DslResult<FieldElement> {
        match v {
            Value::Scalar(a) => Ok(a.clone()),
            other => Err(DslError::eval(span, format!("expected a scalar, got {}", other.type_name()))),
        }
    }

    fn to_count(&self, v: &Value, span: Span) -> DslResult<usize> {
        let a = self.to_scalar(v, span)?;
        a.as_rational()
            .filter(|r| r.is_integer() && r.signum() >= 0)
            .and_then(|r| usize::try_from(r.numer()).ok())
            .ok_or_else(|| DslError::eval(span, "expected a non-negative integer"))
    }

    fn to_poly(&self, v: &Value, span: Span) -> DslResult<MultiPoly> {
        match v {
            Value::Scalar(a) => Ok(MultiPoly::constant(a.clone())),
            Value::Poly(p) => Ok(p.clone()),
            Value::Line(l) => Ok(l.form()),
            Value::Conic(c) => Ok(c.to_poly()),
            Value::Curve(c) => Ok(c.form().clone()),
            other => Err(DslError::eval(span, format!("expected a polynomial, got {}", other.type_name()))),
        }
    }

    fn to_curve(&self, v: &Value, span: Span) -> DslResult<PlaneCurve> {
        PlaneCurve::new(self.to_poly(v, span)?).map_err(|e| DslError::kernel(span, e))
    }

    fn to_line(&self, v: &Value, span: Span) -> DslResult<ProjLine> {
        match v {
            Value::Line(l) => Ok(l.clone()),
            Value::Poly(p) => ProjLine::from_form(p).map_err(|e| DslError::kernel(span, e)),
            other => Err(DslError::eval(span, format!("expected a line, got {}", other.type_name()))),
        }
    }

    fn to_conic(&self, v: &Value, span: Span) -> DslResult<Conic> {
        match v {
            Value::Conic(c) => Ok(c.clone()),
            Value::Poly(p) => Conic::from_poly(p).map_err(|e| DslError::kernel(span, e)),
            other => Err(DslError::eval(span, format!("expected a conic, got {}", other.type_name()))),
        }
    }

    fn to_point(&self, v: &Value, span: Span) -> DslResult<ProjPoint> {
        match v {
            Value::Point(p) => Ok(p.clone()),
            other => Err(DslError::eval(span, format!("expected a point, got {}", other.type_name()))),
        }
    }

    fn items<'v>(&self, v: &'v Value, span: Span) -> DslResult<&'v [Value]> {
        match v {
            Value::List(items) => Ok(items),
            other => Err(DslError::eval(span, format!("expected a list, got {}", other.type_name()))),
        }
    }

    fn lines(&self, v: &Value, span: Span) -> DslResult<Vec<ProjLine>> {
        self.items(v, span)?.iter().map(|x| self.to_line(x, span)).collect()
    }

    fn points(&self, v: &Value, span: Span) -> DslResult<Vec<ProjPoint>> {
        self.items(v, span)?.iter().map(|x| self.to_point(x, span)).collect()
    }

    fn conics(&self, v: &Value, span: Span) -> DslResult<Vec<Conic>> {
        self.items(v, span)?.iter().map(|x| self.to_conic(x, span)).collect()
    }

    /// Four points given either as four arguments or as one list.
    fn four_points(&self, args: &[Value], span: Span) -> DslResult<Vec<ProjPoint>> {
        let pts = match args {
            [list @ Value::List(_)] => self.points(list, span)?,
            _ => args.iter().map(|a| self.to_point(a, span)).collect::<DslResult<_>>()?,
        };
        if pts.len() != 4 {
            return Err(DslError::eval(span, format!("expected four points, got {}", pts.len())));
        }
        Ok(pts)
    }

    fn call(&self, name: &str, args: &[Value], span: Span) -> DslResult<Value> {
        let k = |err: CoreError| DslError::kernel(span, err);
        let arity = |n: usize| -> DslResult<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(DslError::eval(span, format!("`{name}` takes {n} argument(s), got {}", args.len())))
            }
        };
        let t = &self.tower;
        match name {
            "tvector" => {
                arity(1)?;
                let c = line_census(&self.lines(&args[0], span)?).map_err(k)?;
                Ok(Value::List(c.t_vector.iter().map(|&n| Value::int(t, n)).collect()))
            }
            "census" if args.len() == 1 && self.lines(&args[0], span).is_ok() => self.call("tvector", args, span),
            "pn" => {
                arity(2)?;
                let c = line_census(&self.lines(&args[0], span)?).map_err(k)?;
                Ok(Value::List(c.pn(self.to_count(&args[1], span)?).into_iter().map(Value::Point).collect()))
            }
            "dual" => {
                arity(1)?;
                self.dual(&args[0], span)
            }
            "meet" => {
                arity(2)?;
                Ok(Value::Point(meet(&self.to_line(&args[0], span)?, &self.to_line(&args[1], span)?).map_err(k)?))
            }
            "join" => {
                arity(2)?;
                Ok(Value::Line(join(&self.to_point(&args[0], span)?, &self.to_point(&args[1], span)?).map_err(k)?))
            }
            "crossratio" => {
                let p = self.four_points(args, span)?;
                Ok(Value::Scalar(cross_ratio(&p[0], &p[1], &p[2], &p[3]).map_err(k)?))
            }
            "harmonic" => {
                let p = self.four_points(args, span)?;
                Ok(Value::Bool(is_harmonic(&p[0], &p[1], &p[2], &p[3]).map_err(k)?))
            }
            "contact" => {
                arity(3)?;
                let c = self.to_curve(&args[0], span)?;
                let d = self.to_poly(&args[1], span)?;
                let r = contact_order(&c, &d, &self.to_point(&args[2], span)?, DEFAULT_CAP).map_err(k)?;
                Ok(Value::int(t, r.order))
            }
            "is_mtl" => {
                arity(2)?;
                let r = mtl_verify(&self.to_curve(&args[0], span)?, &self.to_line(&args[1], span)?).map_err(k)?;
                Ok(Value::Bool(r.is_mtl))
            }
            "hessian" => {
                arity(1)?;
                Ok(Value::Curve(hessian(&self.to_curve(&args[0], span)?).map_err(k)?))
            }
            "sextactic" => {
                arity(2)?;
                let r = sextactic_classify(&self.to_curve(&args[0], span)?, &self.to_point(&args[1], span)?).map_err(k)?;
                Ok(Value::Str(
                    match r.class {
                        SextacticClass::Proper => "proper",
                        SextacticClass::Improper => "improper",
                        SextacticClass::NotSextactic => "not_sextactic",
                    }
                    .into(),
                ))
            }
            "biosculating" => {
                arity(2)?;
                let found = biosculating_conics(&self.to_curve(&args[0], span)?, &self.points(&args[1], span)?).map_err(k)?;
                Ok(Value::List(found.into_iter().map(|b| Value::Conic(b.conic)).collect()))
            }
            "census" => {
                if args.is_empty() || args.len() > 2 {
                    return Err(DslError::eval(span, "`census` takes conics and optional special points"));
                }
                let conics = self.conics(&args[0], span)?;
                let special = match args.get(1) {
                    Some(v) => self.points(v, span)?,
                    None => Vec::new(),
                };
                let claims: Vec<ClaimedPoint> = special
                    .into_iter()
                    .map(|p| {
                        let on = (0..conics.len()).filter(|&j| conics[j].contains(&p)).collect();
                        ClaimedPoint { point: p, conics: on }
                    })
                    .collect();
                let c = conic_census(&conics, &claims, t).map_err(k)?;
                if c.status == CensusStatus::Inconclusive {
                    return Err(DslError::Inconclusive { span, message: format!("{} unresolved coincidences", c.unresolved) });
                }
                let l = &c.ledger;
                Ok(Value::List([l.distinct, l.simple, l.tacnode, l.quadruple].into_iter().map(|n| Value::int(t, n)).collect()))
            }
            "hilbert" => {
                arity(2)?;
                let ps = PointSet::new(self.points(&args[0], span)?).map_err(k)?;
                Ok(Value::int(t, hilbert_function(&ps, self.to_count(&args[1], span)? as u32)))
            }
            "ci_check" => {
                arity(3)?;
                let ps = PointSet::new(self.points(&args[0], span)?).map_err(k)?;
                match verify_complete_intersection(&ps, &self.to_poly(&args[1], span)?, &self.to_poly(&args[2], span)?) {
                    Ok(_) => Ok(Value::Bool(true)),
                    Err(CoreError::CertificateFailure(_)) => Ok(Value::Bool(false)),
                    Err(e) => Err(k(e)),
                }
            }
            "containment" => {
                arity(3)?;
                let [f, g, h] = [0, 1, 2].map(|i| self.to_poly(&args[i], span));
                Ok(Value::Verdict(variety_containment(&f?, &g?, &h?, (1, 2)).map_err(k)?))
            }
            "len" => {
                arity(1)?;
                Ok(Value::int(t, self.items(&args[0], span)?.len()))
            }
            "on" => {
                arity(2)?;
                let p = self.to_point(&args[0], span)?;
                Ok(Value::Bool(self.to_poly(&args[1], span)?.eval(p.coords()).map_err(k)?.is_zero()))
            }
            "proportional" => {
                arity(2)?;
                Ok(Value::Bool(self.to_poly(&args[0], span)?.proportional(&self.to_poly(&args[1], span)?)))
            }
            "factors" => {
                let mut out = Vec::new();
                for a in args {
                    out.extend(split_binary_form(&self.to_poly(a, span)?, t).map_err(k)?.into_iter().map(Value::Line));
                }
                Ok(Value::List(out))
            }
            "sqrt" => {
                arity(1)?;
                Ok(Value::Scalar(self.to_scalar(&args[0], span)?.sqrt().map_err(k)?))
            }
            _ => Err(DslError::eval(span, format!("unknown function `{name}`"))),
        }
    }

    fn dual(&self, v: &Value, span: Span) -> DslResult<Value> {
        match v {
            Value::Point(p) => Ok(Value::Line(dual_line(p))),
            Value::List(items) => Ok(Value::List(items.iter().map(|x| self.dual(x, span)).collect::<DslResult<_>>()?)),
            other => Ok(Value::Point(dual_point(&self.to_line(other, span)?))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FERMAT: &str = "field K = Q(i: -1, r2: 2, q2: r2)\nlet eps = (1 + i)*r2/2\ncurve F = x^4 + y^4 + z^4\n";

    fn run(body: &str) -> ScenarioResult {
        run_source(&format!("{FERMAT}{body}")).unwrap()
    }

    #[test]
    fn eighth_root_of_unity() {
        let r = run("assert eps^4 == -1\nassert eps^2 == i\nassert eps^-1 == eps^7");
        assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{}", r.to_text());
    }

    #[test]
    fn tvector_of_mtl_arrangement() {
        let r = run("lines LF = factors(x^4 + y^4, y^4 + z^4, z^4 + x^4)\nassert len(LF) == 12\nassert tvector(LF) == [48, 0, 3]\nassert pn(LF, 4) == [(0 : 0 : 1), (1 : 0 : 0), (0 : 1 : 0)]");
        assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    }

    #[test]
    fn harmonic_mtps_and_contact_negative_control() {
        let r = run("points P = [(1 : eps : 0), (1 : eps^3 : 0), (1 : eps^5 : 0), (1 : eps^7 : 0)]\nassert harmonic(P)\nline L = x + eps^3*y\nassert is_mtl(F, L)\nassert contact(F, L, (1 : eps : 0)) == 5");
        assert_eq!(r.checks[0].status, Status::Pass);
        assert_eq!(r.checks[1].status, Status::Pass);
        assert_eq!(r.checks[2].status, Status::Fail);
        assert_eq!(r.checks[2].computed, "4");
        assert_eq!(r.checks[2].expected, "5");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn errors_carry_spans() {
        let err = run_source("let a = 1\nassert b == 1").unwrap_err();
        assert_eq!(err, DslError::eval(Span::new(2, 8), "undeclared identifier `b`"));
        let err = run_source("field K = Q(i: -1)\nfield L = Q()").unwrap_err();
        assert_eq!(err.span(), Span::new(2, 1));
        let err = run_source("field K = Q(s: 4)").unwrap_err();
        assert!(matches!(err, DslError::Eval { span, .. } if span == Span::new(1, 16)));
        let err = run_source("let x = 2").unwrap_err();
        assert_eq!(err.span(), Span::new(1, 1));
        let err = run_source("curve C = x^2 + y").unwrap_err();
        assert!(matches!(err, DslError::Eval { .. }));
    }

    #[test]
    fn roots_outside_the_field_are_inconclusive() {
        let r = run_source("field K = Q(i: -1)\nassert len(factors(x^2 - 2*y^2)) == 2\nassert len(factors(x^2 + y^2)) == 2").unwrap();
        assert_eq!(r.checks[0].status, Status::Inconclusive);
        assert_eq!(r.checks[1].status, Status::Pass);
        assert_eq!(r.exit_code(), 2);
        assert!(matches!(run_source("field K = Q(i: -1)\nprint sqrt(2)"), Err(DslError::Eval { .. })));
    }
}
