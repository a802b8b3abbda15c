//! Points, lines and conics of the projective plane; incidence, duality,
//! cross-ratio and line-arrangement censuses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational, TowerRef};
use crate::linalg::Matrix;
use crate::par;
use crate::poly::{MultiPoly, Var};

/// Brings three coordinates into one tower.
pub(crate) fn common_tower(cs: &[FieldElement]) -> Result<TowerRef> {
    let mut t = cs[0].tower().clone();
    for c in &cs[1..] {
        if c.lift_to(&t).is_err() {
            if t.embedding_into(c.tower()).is_some() {
                t = c.tower().clone();
            } else {
                return Err(Error::TowerMismatch);
            }
        }
    }
    Ok(t)
}

fn normalize(c: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    let t = common_tower(&c)?;
    let c: Vec<FieldElement> = c.iter().map(|x| x.lift_to(&t)).collect::<Result<_>>()?;
    let k = c.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::DegenerateInput("all coordinates are zero".into()))?;
    let inv = c[k].inv()?;
    Ok([&c[0] * &inv, &c[1] * &inv, &c[2] * &inv])
}

fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn fmt_triple(c: &[FieldElement; 3], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "({} : {} : {})", c[0], c[1], c[2])
}

macro_rules! homogeneous_type {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name {
            coords: [FieldElement; 3],
        }

        impl $name {
            pub fn new(c: [FieldElement; 3]) -> Result<Self> {
                Ok($name { coords: normalize(c)? })
            }

            pub fn from_ints(t: &TowerRef, c: [i64; 3]) -> Result<Self> {
                Self::new(c.map(|v| FieldElement::from_int(t, v)))
            }

            pub fn coords(&self) -> &[FieldElement; 3] {
                &self.coords
            }

            pub fn tower(&self) -> &TowerRef {
                self.coords[0].tower()
            }

            pub fn lift_to(&self, t: &TowerRef) -> Result<Self> {
                Ok($name { coords: [self.coords[0].lift_to(t)?, self.coords[1].lift_to(t)?, self.coords[2].lift_to(t)?] })
            }

            /// Complex embedding of the normalized coordinates.
            pub fn embed(&self) -> [num_complex::Complex64; 3] {
                [self.coords[0].embed(), self.coords[1].embed(), self.coords[2].embed()]
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_triple(&self.coords, f)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_triple(&self.coords, f)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| a.cmp_coords(b))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            }
        }
    };
}

homogeneous_type!(ProjPoint);
homogeneous_type!(ProjLine);

impl ProjPoint {
    pub fn lies_on(&self, l: &ProjLine) -> bool {
        dot(&self.coords, &l.coords).is_zero()
    }

    pub fn on_curve(&self, p: &MultiPoly) -> Result<bool> {
        Ok(p.eval(&self.coords)?.is_zero())
    }
}

impl ProjLine {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.lies_on(self)
    }

    /// The linear form `a x + b y + c z`.
    pub fn form(&self) -> MultiPoly {
        MultiPoly::linear(&self.coords)
    }

    /// Reads a linear form as a line.
    pub fn from_form(p: &MultiPoly) -> Result<Self> {
        if p.degree() != Some(1) || !p.is_homogeneous() {
            return Err(Error::DegenerateInput(format!("not a linear form: {p}")));
        }
        let t = p.tower().clone();
        let mut c = [FieldElement::zero(&t), FieldElement::zero(&t), FieldElement::zero(&t)];
        for v in Var::ALL {
            let mut e = [0; 3];
            e[v.index()] = 1;
            c[v.index()] = p.coeff(e);
        }
        ProjLine::new(c)
    }
}

/// A point or a line, for the duality maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dual {
    Point(ProjPoint),
    Line(ProjLine),
}

/// Exchanges the point `(a : b : c)` and the line `a x + b y + c z = 0`.
pub fn dualize(obj: &Dual) -> Dual {
    match obj {
        Dual::Point(p) => Dual::Line(ProjLine { coords: p.coords.clone() }),
        Dual::Line(l) => Dual::Point(ProjPoint { coords: l.coords.clone() }),
    }
}

pub fn dual_line(p: &ProjPoint) -> ProjLine {
    ProjLine { coords: p.coords.clone() }
}

pub fn dual_point(l: &ProjLine) -> ProjPoint {
    ProjPoint { coords: l.coords.clone() }
}

pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    let (a, b) = unify_pair(&l1.coords, &l2.coords)?;
    let c = cross(&a, &b);
    if c.iter().all(FieldElement::is_zero) {
        return Err(Error::IdenticalInputs);
    }
    ProjPoint::new(c)
}

pub fn join(p1: &ProjPoint, p2: &ProjPoint) -> Result<ProjLine> {
    let (a, b) = unify_pair(&p1.coords, &p2.coords)?;
    let c = cross(&a, &b);
    if c.iter().all(FieldElement::is_zero) {
        return Err(Error::IdenticalInputs);
    }
    ProjLine::new(c)
}

fn unify_pair(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> Result<([FieldElement; 3], [FieldElement; 3])> {
    let all: Vec<FieldElement> = a.iter().chain(b.iter()).cloned().collect();
    let t = common_tower(&all)?;
    let l = |v: &[FieldElement; 3]| -> Result<[FieldElement; 3]> { Ok([v[0].lift_to(&t)?, v[1].lift_to(&t)?, v[2].lift_to(&t)?]) };
    Ok((l(a)?, l(b)?))
}

/// `det(p, q, r)` of three coordinate triples.
pub fn det3(p: &[FieldElement; 3], q: &[FieldElement; 3], r: &[FieldElement; 3]) -> FieldElement {
    dot(p, &cross(q, r))
}

/// Cross-ratio `CR(a, b; c, d) = ((a-c)(b-d)) / ((a-d)(b-c))` of four distinct
/// collinear points, computed in the chart of the common line that drops the
/// coordinate where the line's coefficient vector is largest.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<FieldElement> {
    let line = collinear_line(&[a, b, c, d])?;
    let drop = largest_coordinate(line.coords());
    cross_ratio_in_chart(a, b, c, d, drop)
}

/// Cross-ratio computed with a caller-chosen dropped coordinate (which must
/// not be the only nonzero one on the line); used to check chart independence.
pub fn cross_ratio_in_chart(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint, drop: usize) -> Result<FieldElement> {
    let pts = [a, b, c, d];
    collinear_line(&pts)?;
    let all: Vec<FieldElement> = pts.iter().flat_map(|p| p.coords.iter().cloned()).collect();
    let t = common_tower(&all)?;
    let (u, v) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let h: Vec<(FieldElement, FieldElement)> = pts
        .iter()
        .map(|p| Ok((p.coords[u].lift_to(&t)?, p.coords[v].lift_to(&t)?)))
        .collect::<Result<_>>()?;
    let br = |p: &(FieldElement, FieldElement), q: &(FieldElement, FieldElement)| &(&p.0 * &q.1) - &(&p.1 * &q.0);
    let num = &br(&h[0], &h[2]) * &br(&h[1], &h[3]);
    let den = &br(&h[0], &h[3]) * &br(&h[1], &h[2]);
    if den.is_zero() {
        return Err(Error::DegenerateInput("chart does not separate the points".into()));
    }
    Ok(&num / &den)
}

fn largest_coordinate(c: &[FieldElement; 3]) -> usize {
    let mut best = 0;
    for k in 1..3 {
        if c[k].embed().norm() > c[best].embed().norm() * (1.0 + 1e-12) {
            best = k;
        }
    }
    best
}

fn collinear_line(pts: &[&ProjPoint]) -> Result<ProjLine> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] == pts[j] {
                return Err(Error::NotDistinct);
            }
        }
    }
    let l = join(pts[0], pts[1])?;
    if pts[2..].iter().all(|p| p.lies_on(&l)) {
        Ok(l)
    } else {
        Err(Error::NotCollinear)
    }
}

/// True iff the cross-ratio lies in `{-1, 1/2, 2}`, i.e. some ordering of the
/// four points is harmonic.
pub fn is_harmonic(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<bool> {
    let cr = cross_ratio(a, b, c, d)?;
    Ok([Rational::from_int(-1), Rational::new(1, 2), Rational::from_int(2)]
        .iter()
        .any(|v| cr.as_rational().as_ref() == Some(v)))
}

/// A conic as a symmetric Gram matrix, normalized so that the first nonzero
/// entry in row-major order is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    gram: [[FieldElement; 3]; 3],
}

/// Conic monomials in graded-lex order: `x^2, xy, xz, y^2, yz, z^2`.
pub const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

impl Conic {
    /// From the six coefficients of `x^2, xy, xz, y^2, yz, z^2`.
    pub fn from_coeffs(c: &[FieldElement]) -> Result<Self> {
        assert_eq!(c.len(), 6);
        let t = common_tower(c)?;
        let c: Vec<FieldElement> = c.iter().map(|x| x.lift_to(&t)).collect::<Result<_>>()?;
        let h = Rational::new(1, 2);
        let gram = [
            [c[0].clone(), c[1].scale(&h), c[2].scale(&h)],
            [c[1].scale(&h), c[3].clone(), c[4].scale(&h)],
            [c[2].scale(&h), c[4].scale(&h), c[5].clone()],
        ];
        let first = gram
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::DegenerateInput("zero conic".into()))?
            .inv()?;
        Ok(Conic { gram: gram.map(|row| row.map(|x| &x * &first)) })
    }

    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.degree() != Some(2) || !p.is_homogeneous() {
            return Err(Error::DegenerateInput(format!("not a quadratic form: {p}")));
        }
        let c: Vec<FieldElement> = CONIC_MONOMIALS.iter().map(|e| p.coeff(*e)).collect();
        Self::from_coeffs(&c)
    }

    pub fn gram(&self) -> &[[FieldElement; 3]; 3] {
        &self.gram
    }

    pub fn tower(&self) -> &TowerRef {
        self.gram[0][0].tower()
    }

    /// Coefficients of `x^2, xy, xz, y^2, yz, z^2`.
    pub fn coeffs(&self) -> [FieldElement; 6] {
        let g = &self.gram;
        let two = Rational::from_int(2);
        [
            g[0][0].clone(),
            g[0][1].scale(&two),
            g[0][2].scale(&two),
            g[1][1].clone(),
            g[1][2].scale(&two),
            g[2][2].clone(),
        ]
    }

    pub fn to_poly(&self) -> MultiPoly {
        let t = self.tower().clone();
        MultiPoly::from_terms(&t, CONIC_MONOMIALS.iter().copied().zip(self.coeffs()))
    }

    pub fn rank(&self) -> usize {
        Matrix::from_rows(self.gram.iter().map(|r| r.to_vec()).collect()).rank()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.to_poly().eval(p.coords()).map(|v| v.is_zero()).unwrap_or(false)
    }

    pub fn lift_to(&self, t: &TowerRef) -> Result<Self> {
        let mut g = self.gram.clone();
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                *x = x.lift_to(t)?;
            }
        }
        Ok(Conic { gram: g })
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conic({})", self.to_poly())
    }
}

impl Serialize for Conic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Incidence statistics of a line arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCensus {
    pub num_lines: usize,
    /// Intersection points with the indices of the lines through them, in
    /// order of first appearance over index pairs.
    pub points: Vec<(ProjPoint, BTreeSet<usize>)>,
    /// `(t_2, ..., t_r)`.
    pub t_vector: Vec<usize>,
}

impl LineCensus {
    /// Points lying on exactly `n` lines (the `P_n` operator).
    pub fn pn(&self, n: usize) -> Vec<ProjPoint> {
        self.points.iter().filter(|(_, s)| s.len() == n).map(|(p, _)| p.clone()).collect()
    }

    /// `sum_k t_k C(k, 2)`; equals `C(d, 2)` for `d` distinct lines.
    pub fn weighted_pairs(&self) -> usize {
        self.t_vector.iter().enumerate().map(|(i, t)| t * (i + 2) * (i + 1) / 2).sum()
    }

    pub fn bezout_holds(&self) -> bool {
        self.weighted_pairs() == self.num_lines * (self.num_lines.saturating_sub(1)) / 2
    }
}

impl Serialize for LineCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LineCensus", 2)?;
        st.serialize_field("t_vector", &self.t_vector)?;
        let pts: Vec<String> = self.points.iter().map(|(p, _)| p.to_string()).collect();
        st.serialize_field("points", &pts)?;
        st.end()
    }
}

pub fn line_census(lines: &[ProjLine]) -> Result<LineCensus> {
    let pairs = par::pairs(lines.len());
    let meets = par::map(&pairs, |&(i, j)| meet(&lines[i], &lines[j]));
    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut points: Vec<(ProjPoint, BTreeSet<usize>)> = Vec::new();
    for (&(i, j), m) in pairs.iter().zip(meets) {
        let p = m.map_err(|e| match e {
            Error::IdenticalInputs => Error::DegenerateInput(format!("lines {i} and {j} coincide")),
            other => other,
        })?;
        let k = *index.entry(p.clone()).or_insert_with(|| {
            points.push((p, BTreeSet::new()));
            points.len() - 1
        });
        points[k].1.insert(i);
        points[k].1.insert(j);
    }
    let r = points.iter().map(|(_, s)| s.len()).max().unwrap_or(1);
    let mut t_vector = vec![0; r.saturating_sub(1)];
    for (_, s) in &points {
        t_vector[s.len() - 2] += 1;
    }
    Ok(LineCensus { num_lines: lines.len(), points, t_vector })
}
