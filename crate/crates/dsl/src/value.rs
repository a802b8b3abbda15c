//! Runtime values of the scenario language.

use std::fmt;

use quartica_core::contact::PlaneCurve;
use quartica_core::geometry::{Conic, ProjLine, ProjPoint};
use quartica_core::ideals::Containment;
use quartica_core::poly::MultiPoly;
use quartica_core::{FieldElement, Result as CoreResult, TowerRef};

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(FieldElement),
    Poly(MultiPoly),
    Point(ProjPoint),
    Line(ProjLine),
    Conic(Conic),
    Curve(PlaneCurve),
    Bool(bool),
    Str(String),
    Verdict(Containment),
    List(Vec<Value>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Poly(_) => "polynomial",
            Value::Point(_) => "point",
            Value::Line(_) => "line",
            Value::Conic(_) => "conic",
            Value::Curve(_) => "curve",
            Value::Bool(_) => "boolean",
            Value::Str(_) => "string",
            Value::Verdict(_) => "verdict",
            Value::List(_) => "list",
        }
    }

    pub fn int(t: &TowerRef, n: usize) -> Value {
        Value::Scalar(FieldElement::from_int(t, n as i64))
    }

    /// Lifts every field element to `t`.
    pub fn lift_to(&self, t: &TowerRef) -> CoreResult<Value> {
        Ok(match self {
            Value::Scalar(a) => Value::Scalar(a.lift_to(t)?),
            Value::Poly(p) => Value::Poly(p.lift_to(t)?),
            Value::Point(p) => Value::Point(p.lift_to(t)?),
            Value::Line(l) => Value::Line(l.lift_to(t)?),
            Value::Conic(c) => Value::Conic(c.lift_to(t)?),
            Value::Curve(c) => Value::Curve(PlaneCurve::new(c.form().lift_to(t)?)?),
            Value::List(v) => Value::List(v.iter().map(|x| x.lift_to(t)).collect::<CoreResult<_>>()?),
            other => other.clone(),
        })
    }

    fn is_geometric(&self) -> bool {
        matches!(self, Value::Point(_) | Value::Line(_) | Value::Conic(_) | Value::Curve(_))
    }

    /// Structural equality in a common tower. Lists of geometric objects
    /// compare as multisets; other lists compare in order. Curves compare up
    /// to a nonzero scalar.
    pub fn equals(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => a.try_sub(b).is_ok_and(|d| d.is_zero()),
            (Value::Poly(a), Value::Poly(b)) => (a - b).is_zero(),
            (Value::Poly(p), Value::Scalar(c)) | (Value::Scalar(c), Value::Poly(p)) => {
                (p - &MultiPoly::constant(c.clone())).is_zero()
            }
            (Value::Point(a), Value::Point(b)) => same_tower_eq(a, b, |p, t| p.lift_to(t), |p| p.tower().clone()),
            (Value::Line(a), Value::Line(b)) => same_tower_eq(a, b, |p, t| p.lift_to(t), |p| p.tower().clone()),
            (Value::Conic(a), Value::Conic(b)) => same_tower_eq(a, b, |p, t| p.lift_to(t), |p| p.tower().clone()),
            (Value::Curve(a), Value::Curve(b)) => a.form().proportional(b.form()),
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Verdict(a), Value::Verdict(b)) => a == b,
            (Value::List(a), Value::List(b)) => {
                if a.len() != b.len() {
                    return false;
                }
                if a.iter().chain(b).all(Value::is_geometric) {
                    let mut used = vec![false; b.len()];
                    a.iter().all(|x| match (0..b.len()).find(|&j| !used[j] && x.equals(&b[j])) {
                        Some(j) => {
                            used[j] = true;
                            true
                        }
                        None => false,
                    })
                } else {
                    a.iter().zip(b).all(|(x, y)| x.equals(y))
                }
            }
            _ => false,
        }
    }
}

fn same_tower_eq<T: PartialEq>(a: &T, b: &T, lift: impl Fn(&T, &TowerRef) -> CoreResult<T>, tower: impl Fn(&T) -> TowerRef) -> bool {
    if a == b {
        return true;
    }
    match lift(a, &tower(b)) {
        Ok(la) => la == *b,
        Err(_) => lift(b, &tower(a)).is_ok_and(|lb| lb == *a),
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(a) => write!(f, "{a}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Point(p) => write!(f, "{p}"),
            Value::Line(l) => write!(f, "{}", l.form()),
            Value::Conic(c) => write!(f, "{}", c.to_poly()),
            Value::Curve(c) => write!(f, "{}", c.form()),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => write!(f, "\"{s}\""),
            Value::Verdict(v) => write!(f, "{}", if *v == Containment::Certified { "certified" } else { "inconclusive" }),
            Value::List(v) => {
                write!(f, "[")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}
