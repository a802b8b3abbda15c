use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational, TowerRef};
use crate::linalg::Matrix;

use super::UniPoly;

/// Exponents of `x`, `y`, `z`.
pub type Exponent = [u32; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self as usize]
    }

    /// The two other variables, in order.
    pub fn others(self) -> (Var, Var) {
        match self {
            Var::X => (Var::Y, Var::Z),
            Var::Y => (Var::X, Var::Z),
            Var::Z => (Var::X, Var::Y),
        }
    }
}

/// Sparse polynomial in `x, y, z` over a tower.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    tower: TowerRef,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl MultiPoly {
    pub fn zero(t: &TowerRef) -> Self {
        MultiPoly { tower: t.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let t = c.tower().clone();
        Self::monomial(c, [0, 0, 0]).with_tower(&t)
    }

    pub fn one(t: &TowerRef) -> Self {
        Self::constant(FieldElement::one(t))
    }

    pub fn var(t: &TowerRef, v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(FieldElement::one(t), e)
    }

    pub fn monomial(c: FieldElement, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        let t = c.tower().clone();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { tower: t, terms }
    }

    fn with_tower(mut self, t: &TowerRef) -> Self {
        self.tower = t.clone();
        self
    }

    pub fn from_terms(t: &TowerRef, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Self {
        let mut p = Self::zero(t);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coeffs: &[FieldElement; 3]) -> Self {
        let t = coeffs[0].tower().clone();
        Self::from_terms(
            &t,
            Var::ALL.iter().map(|v| {
                let mut e = [0; 3];
                e[v.index()] = 1;
                (e, coeffs[v.index()].clone())
            }),
        )
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exponent) -> FieldElement {
        self.terms.get(&e).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponent, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let c = if c.tower() == &self.tower { c.clone() } else { self.absorb(c) };
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Brings `c` into this polynomial's tower, lifting the polynomial if needed.
    fn absorb(&mut self, c: &FieldElement) -> FieldElement {
        if let Ok(l) = c.lift_to(&self.tower) {
            return l;
        }
        let t = c.tower().clone();
        *self = self.lift_to(&t).expect("polynomial arithmetic across incompatible towers");
        c.clone()
    }

    pub fn lift_to(&self, t: &TowerRef) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.lift_to(t)?);
        }
        Ok(MultiPoly { tower: t.clone(), terms })
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut p = Self::zero(&self.tower);
        for (e, c) in &self.terms {
            p.add_term(*e, &(c * s));
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.tower);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at a point (not necessarily normalized).
    pub fn eval(&self, pt: &[FieldElement; 3]) -> Result<FieldElement> {
        let mut t = self.tower.clone();
        for c in pt {
            if c.lift_to(&t).is_err() {
                t = c.tower().clone();
            }
        }
        let pt: Vec<FieldElement> = pt.iter().map(|c| c.lift_to(&t)).collect::<Result<_>>()?;
        let coeffs_in_t = if t == self.tower { None } else { Some(self.lift_to(&t)?) };
        let p = coeffs_in_t.as_ref().unwrap_or(self);
        let pw = power_tables(&t, &pt, self.degree().unwrap_or(0));
        let mut acc = FieldElement::zero(&t);
        for (e, c) in &p.terms {
            let mut m = c.clone();
            for v in 0..3 {
                if e[v] > 0 {
                    m = &m * &pw[v][e[v] as usize];
                }
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }

    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        let mut p = Self::zero(&self.tower);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            p.add_term(ne, &c.scale(&Rational::from_int(e[i] as i64)));
        }
        p
    }

    pub fn gradient(&self) -> [MultiPoly; 3] {
        [self.partial(Var::X), self.partial(Var::Y), self.partial(Var::Z)]
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials in the other variables.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let mut out = vec![Self::zero(&self.tower); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out[e[i] as usize].add_term(ne, c);
        }
        out
    }

    /// `p(M * (x, y, z)^T)`: substitutes each variable by a linear form.
    pub fn linear_substitute(&self, m: &[[FieldElement; 3]; 3]) -> Self {
        let forms: Vec<MultiPoly> = (0..3).map(|r| MultiPoly::linear(&m[r]).lift_to(&self.tower).unwrap_or_else(|_| MultiPoly::linear(&m[r]))).collect();
        let d = self.degree().unwrap_or(0) as usize;
        let t = forms[0].tower().clone();
        let mut pw: Vec<Vec<MultiPoly>> = Vec::with_capacity(3);
        for f in &forms {
            let mut row = vec![MultiPoly::one(&t)];
            for k in 1..=d {
                let next = &row[k - 1] * f;
                row.push(next);
            }
            pw.push(row);
        }
        let mut out = MultiPoly::zero(&t);
        for (e, c) in &self.terms {
            let mut m = pw[0][e[0] as usize].clone();
            if e[1] > 0 {
                m = &m * &pw[1][e[1] as usize];
            }
            if e[2] > 0 {
                m = &m * &pw[2][e[2] as usize];
            }
            out = &out + &m.scale(c);
        }
        out
    }

    /// `p(s * a + b)` as a univariate polynomial in `s`, by evaluation and
    /// interpolation at `s = 0..=deg p`.
    pub fn restrict_param(&self, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> Result<UniPoly> {
        let d = self.degree().unwrap_or(0) as i64;
        let mut xs = Vec::with_capacity(d as usize + 1);
        let mut ys = Vec::with_capacity(d as usize + 1);
        let mut t = self.tower.clone();
        for s in 0..=d {
            let sv = FieldElement::from_int(&t, s);
            let pt = [&(&sv * &a[0]) + &b[0], &(&sv * &a[1]) + &b[1], &(&sv * &a[2]) + &b[2]];
            let y = self.eval(&pt)?;
            t = y.tower().clone();
            xs.push(FieldElement::from_int(&t, s));
            ys.push(y);
        }
        let xs: Vec<FieldElement> = xs.iter().map(|x| x.lift_to(&t)).collect::<Result<_>>()?;
        let ys: Vec<FieldElement> = ys.iter().map(|y| y.lift_to(&t)).collect::<Result<_>>()?;
        Ok(UniPoly::interpolate(&xs, &ys))
    }

    /// Determinant of a 3x3 matrix of polynomials.
    pub fn det3(m: &[[MultiPoly; 3]; 3]) -> MultiPoly {
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
        let a = &m[0][0] * &minor(1, 2, 1, 2);
        let b = &m[0][1] * &minor(1, 2, 0, 2);
        let c = &m[0][2] * &minor(1, 2, 0, 1);
        &(&a - &b) + &c
    }

    /// Whether `other` is a nonzero scalar multiple of `self`.
    pub fn proportional(&self, other: &MultiPoly) -> bool {
        let Some((e, a)) = self.terms.iter().next() else {
            return other.is_zero();
        };
        let Some(b) = other.terms.get(e) else {
            return false;
        };
        self.terms.len() == other.terms.len() && &self.scale(&(b / a)) == other
    }

    /// Divides by the coefficient of the leading term in graded-lex order.
    pub fn normalized(&self) -> MultiPoly {
        match self.sorted_terms().first() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Terms in graded lexicographic order with `x > y > z`, largest first.
    pub fn sorted_terms(&self) -> Vec<(Exponent, FieldElement)> {
        let mut v: Vec<(Exponent, FieldElement)> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| grlex_desc(a, b));
        v
    }

    /// Evaluation matrix rows for a list of points; columns are `monomials`.
    pub fn evaluation_matrix(points: &[[FieldElement; 3]], monomials: &[Exponent], t: &TowerRef) -> Matrix {
        let d = monomials.iter().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
        let rows = points
            .iter()
            .map(|p| {
                let pw = power_tables(t, p, d);
                monomials
                    .iter()
                    .map(|e| &(&pw[0][e[0] as usize] * &pw[1][e[1] as usize]) * &pw[2][e[2] as usize])
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }
}

/// All exponent triples of total degree `d`, in graded-lex order.
pub fn monomials_of_degree(d: u32) -> Vec<Exponent> {
    let mut v = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            v.push([a, b, d - a - b]);
        }
    }
    v
}

fn grlex_desc(a: &Exponent, b: &Exponent) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn power_tables(t: &TowerRef, pt: &[FieldElement], d: u32) -> Vec<Vec<FieldElement>> {
    pt.iter()
        .map(|c| {
            let mut row = vec![FieldElement::one(t)];
            for k in 1..=d as usize {
                let next = &row[k - 1] * c;
                row.push(next);
            }
            row
        })
        .collect()
}

fn unify(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if a.tower == b.tower {
        return (a.clone(), b.clone());
    }
    if let Ok(la) = a.lift_to(&b.tower) {
        return (la, b.clone());
    }
    let lb = b.lift_to(&a.tower).expect("polynomial arithmetic across incompatible towers");
    (a.clone(), lb)
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        if self.tower != rhs.tower {
            let (a, b) = unify(self, rhs);
            return &a + &b;
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.tower != rhs.tower {
            let (a, b) = unify(self, rhs);
            return &a * &b;
        }
        let mut acc: BTreeMap<Exponent, FieldElement> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let prod = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { tower: self.tower.clone(), terms: acc }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { tower: self.tower.clone(), terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

fn fmt_coeff(c: &FieldElement) -> (bool, String) {
    // Returns (negative, text) where text is wrapped when it is a sum.
    let s = c.to_string();
    let is_sum = s[1..].contains(" + ") || s[1..].contains(" - ");
    if is_sum {
        (false, format!("({s})"))
    } else if let Some(rest) = s.strip_prefix('-') {
        (true, rest.to_string())
    } else {
        (false, s)
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text: graded lexicographic order, `^` for powers, explicit `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            let (neg, text) = fmt_coeff(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = (0..3)
                .filter(|&v| e[v] > 0)
                .map(|v| {
                    if e[v] == 1 {
                        Var::from_index(v).name().to_string()
                    } else {
                        format!("{}^{}", Var::from_index(v).name(), e[v])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{text}")?;
            } else if c.is_one() || (&-c).is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{text}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Convenience constructors used throughout tests and the atlas.
pub fn xyz(t: &TowerRef) -> (MultiPoly, MultiPoly, MultiPoly) {
    (MultiPoly::var(t, Var::X), MultiPoly::var(t, Var::Y), MultiPoly::var(t, Var::Z))
}

/// `poly_eval` with error reporting; see [`MultiPoly::eval`].
pub fn poly_eval(p: &MultiPoly, pt: &[FieldElement; 3]) -> Result<FieldElement> {
    p.eval(pt)
}

pub(crate) fn require_homogeneous(p: &MultiPoly) -> Result<()> {
    if p.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Tower, TowerBuilder};

    fn int(t: &TowerRef, n: i64) -> FieldElement {
        FieldElement::from_int(t, n)
    }

    #[test]
    fn fermat_derivative_and_hessian() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        let f = &(&x.pow(4) + &y.pow(4)) + &z.pow(4);
        assert_eq!(f.partial(Var::X), x.pow(3).scale(&int(&q, 4)));
        assert!((&x + &z).partial(Var::Y).is_zero());
        let h = [
            [f.partial(Var::X).partial(Var::X), f.partial(Var::X).partial(Var::Y), f.partial(Var::X).partial(Var::Z)],
            [f.partial(Var::Y).partial(Var::X), f.partial(Var::Y).partial(Var::Y), f.partial(Var::Y).partial(Var::Z)],
            [f.partial(Var::Z).partial(Var::X), f.partial(Var::Z).partial(Var::Y), f.partial(Var::Z).partial(Var::Z)],
        ];
        let det = MultiPoly::det3(&h);
        let expect = (&(&x.pow(2) * &y.pow(2)) * &z.pow(2)).scale(&int(&q, 1728));
        assert_eq!(det, expect);
    }

    #[test]
    fn evaluation_on_kk_and_fermat() {
        let t = TowerBuilder::new().adjoin_int("i", -1).unwrap().build();
        let (x, y, z) = xyz(&t);
        let f = &(&x.pow(4) + &y.pow(4)) + &z.pow(4);
        let mixed = &(&(&x.pow(2) * &y.pow(2)) + &(&x.pow(2) * &z.pow(2))) + &(&y.pow(2) * &z.pow(2));
        let k = &f + &mixed.scale(&int(&t, 3));
        let i = t.generator("i").unwrap();
        let pk1 = [i.clone(), int(&t, 1), int(&t, -1)];
        assert_eq!(f.eval(&pk1).unwrap(), int(&t, 3));
        assert!(k.eval(&pk1).unwrap().is_zero());
    }

    #[test]
    fn display_grlex() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        let p = &(&(&z.pow(2) + &x.pow(2).scale(&int(&q, 3))) - &(&x * &y)) + &MultiPoly::one(&q);
        assert_eq!(p.to_string(), "3*x^2 - x*y + z^2 + 1");
        assert_eq!(MultiPoly::zero(&q).to_string(), "0");
    }

    #[test]
    fn linear_substitution_matches_evaluation() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        let p = &(&x.pow(3) + &(&y * &z).scale(&int(&q, 2))) - &(&x * &z.pow(2));
        let m = [
            [int(&q, 1), int(&q, 2), int(&q, 0)],
            [int(&q, -1), int(&q, 0), int(&q, 3)],
            [int(&q, 2), int(&q, 1), int(&q, 1)],
        ];
        let ps = p.linear_substitute(&m);
        let pt = [int(&q, 2), int(&q, -3), int(&q, 5)];
        let mapped: Vec<FieldElement> = (0..3)
            .map(|r| (0..3).fold(int(&q, 0), |acc, c| &acc + &(&m[r][c] * &pt[c])))
            .collect();
        assert_eq!(ps.eval(&pt).unwrap(), p.eval(&[mapped[0].clone(), mapped[1].clone(), mapped[2].clone()]).unwrap());
    }

    #[test]
    fn restrict_param_line() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        let f = &(&x.pow(4) + &y.pow(4)) + &z.pow(4);
        // points s*(1,0,0) + (0,1,0) on z = 0: s^4 + 1
        let u = f
            .restrict_param(&[int(&q, 1), int(&q, 0), int(&q, 0)], &[int(&q, 0), int(&q, 1), int(&q, 0)])
            .unwrap();
        assert_eq!(u.degree(), Some(4));
        assert_eq!(u.coeff(0), int(&q, 1));
        assert_eq!(u.coeff(4), int(&q, 1));
        assert!(u.coeff(2).is_zero());
    }

    #[test]
    fn monomial_listing() {
        assert_eq!(monomials_of_degree(2), vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]);
        assert_eq!(monomials_of_degree(7).len(), 36);
    }
}
