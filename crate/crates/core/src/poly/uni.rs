use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational, TowerRef};

/// Dense univariate polynomial; `coeffs[k]` multiplies `t^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    tower: TowerRef,
    coeffs: Vec<FieldElement>,
}

/// A root together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub value: FieldElement,
    pub multiplicity: u32,
}

impl UniPoly {
    pub fn new(t: &TowerRef, coeffs: Vec<FieldElement>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c.lift_to(t).expect("coefficient outside tower")).collect();
        let mut p = UniPoly { tower: t.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(t: &TowerRef, coeffs: &[i64]) -> Self {
        Self::new(t, coeffs.iter().map(|&c| FieldElement::from_int(t, c)).collect())
    }

    pub fn zero(t: &TowerRef) -> Self {
        UniPoly { tower: t.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let t = c.tower().clone();
        Self::new(&t, vec![c])
    }

    /// `t - r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        let t = r.tower().clone();
        Self::new(&t, vec![-r, FieldElement::one(&t)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    pub fn lift_to(&self, t: &TowerRef) -> Result<Self> {
        Ok(UniPoly { tower: t.clone(), coeffs: self.coeffs.iter().map(|c| c.lift_to(t)).collect::<Result<_>>()? })
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let x = x.lift_to(&self.tower).unwrap_or_else(|_| x.clone());
        let mut acc = FieldElement::zero(x.tower());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let t = self.tower.clone();
        Self::new(&t, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    pub fn derivative(&self) -> Self {
        let t = self.tower.clone();
        Self::new(
            &t,
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rational::from_int(k as i64))).collect(),
        )
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let t = self.tower.clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(&t), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut q = vec![FieldElement::zero(&t); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] = &r[k + j] - &(&c * dc);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(&t, q), UniPoly::new(&t, r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = unify(self, other);
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::constant(FieldElement::one(&self.tower));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Square-free decomposition `p = c * prod f_i^i` (Yun); returns the
    /// non-constant monic `f_i` with multiplicity `i`.
    pub fn squarefree(&self) -> Vec<(UniPoly, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.divrem(&a).0;
        let mut c = df.divrem(&a).0;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.divrem(&g).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Order of vanishing at `t = 0`.
    pub fn vanishing_order(&self) -> Result<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial)
    }

    /// Largest `k` with `(t - r)^k` dividing `self`, by repeated synthetic division.
    pub fn vanishing_order_at(&self, r: &FieldElement) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let r = r.lift_to(&self.tower)?;
        let mut cur = self.coeffs.clone();
        let mut k = 0;
        loop {
            // Horner: quotient coefficients and remainder
            let n = cur.len();
            let mut q = vec![FieldElement::zero(&self.tower); n.saturating_sub(1)];
            let mut acc = FieldElement::zero(&self.tower);
            for j in (0..n).rev() {
                acc = &(&acc * &r) + &cur[j];
                if j > 0 {
                    q[j - 1] = acc.clone();
                }
            }
            if !acc.is_zero() || q.is_empty() {
                return Ok(k);
            }
            k += 1;
            cur = q;
        }
    }

    /// Newton interpolation through `(xs[k], ys[k])`.
    pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> UniPoly {
        assert_eq!(xs.len(), ys.len());
        let t = ys.first().or(xs.first()).map(|c| c.tower().clone()).expect("empty interpolation");
        let n = xs.len();
        let mut dd: Vec<FieldElement> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - j];
                dd[i] = &num * &den.inv().expect("interpolation nodes must be distinct");
            }
        }
        let mut p = UniPoly::constant(dd[n - 1].clone()).lift_to(&t).unwrap();
        for k in (0..n - 1).rev() {
            p = &p * &UniPoly::linear_root(&xs[k]);
            p = &p + &UniPoly::constant(dd[k].clone());
        }
        p
    }

    /// Roots in the tower with multiplicities. Factors of degree at most four
    /// are handled; any residual factor without tower roots yields
    /// `FieldTooSmall` with the multiplicity pattern of the input.
    pub fn roots(&self) -> Result<Vec<Root>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for (f, m) in self.squarefree() {
            match squarefree_roots(&f) {
                Some(rs) => out.extend(rs.into_iter().map(|value| Root { value, multiplicity: m })),
                None => {
                    let pattern: Vec<String> =
                        self.squarefree().iter().map(|(f, m)| format!("deg {} x{}", f.degree().unwrap_or(0), m)).collect();
                    return Err(Error::FieldTooSmall(pattern.join(", ")));
                }
            }
        }
        Ok(out)
    }

    /// Roots that lie in the tower, skipping factors that do not split.
    pub fn roots_partial(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for (f, m) in self.squarefree() {
            let rs = linear_roots(&split(&f.monic()));
            out.extend(rs.into_iter().map(|value| Root { value, multiplicity: m }));
        }
        out
    }
}

fn unify(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    if a.tower == b.tower {
        return (a.clone(), b.clone());
    }
    if let Ok(la) = a.lift_to(&b.tower) {
        return (la, b.clone());
    }
    (a.clone(), b.lift_to(&a.tower).expect("incompatible towers"))
}

/// All roots of a square-free polynomial, or `None` if it does not split.
fn squarefree_roots(f: &UniPoly) -> Option<Vec<FieldElement>> {
    let factors = split(&f.monic());
    if factors.iter().any(|g| g.degree().unwrap_or(0) > 1) {
        return None;
    }
    Some(linear_roots(&factors))
}

fn linear_roots(factors: &[UniPoly]) -> Vec<FieldElement> {
    factors
        .iter()
        .filter(|g| g.degree() == Some(1))
        .map(|g| &-&g.coeff(0) / &g.coeff(1))
        .collect()
}

/// Closed-form splitting, preceded for rational polynomials of degree above
/// four by a split into rational factors of degree at most four.
fn split(f: &UniPoly) -> Vec<UniPoly> {
    if f.degree().unwrap_or(0) <= 4 {
        return factor_small(f);
    }
    match rational_split(f) {
        Some(parts) => parts.iter().flat_map(factor_small).collect(),
        None => vec![f.clone()],
    }
}

/// Factors of degree at most four of a monic square-free polynomial with
/// rational coefficients, found by grouping numerical roots and confirmed by
/// exact division. `None` unless the whole polynomial splits this way.
fn rational_split(f: &UniPoly) -> Option<Vec<UniPoly>> {
    use itertools::Itertools;
    use num_complex::Complex64;

    let t = f.tower().clone();
    let qs: Vec<Rational> = f.coeffs.iter().map(FieldElement::as_rational).collect::<Option<_>>()?;
    let cf: Vec<f64> = qs.iter().map(Rational::to_f64).collect();
    let mut roots = numeric_roots(&cf);
    let mut rest = f.clone();
    let mut out = Vec::new();
    'outer: while rest.degree().unwrap_or(0) > 4 {
        for k in 1..=4 {
            for idx in (0..roots.len()).combinations(k) {
                let mut prod = vec![Complex64::new(1.0, 0.0)];
                for &i in &idx {
                    let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                    for (j, c) in prod.iter().enumerate() {
                        next[j + 1] += c;
                        next[j] -= c * roots[i];
                    }
                    prod = next;
                }
                if prod.iter().any(|c| c.im.abs() > 1e-6 * (1.0 + c.re.abs())) {
                    continue;
                }
                let Some(cs) = prod.iter().map(|c| approximate_rational(c.re)).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let cand = UniPoly::new(&t, cs.into_iter().map(|q| FieldElement::from_rational(&t, q)).collect());
                let (quo, rem) = rest.divrem(&cand);
                if rem.is_zero() {
                    out.push(cand);
                    rest = quo;
                    let drop: std::collections::HashSet<usize> = idx.into_iter().collect();
                    roots = roots.into_iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, z)| z).collect();
                    continue 'outer;
                }
            }
        }
        return None;
    }
    out.push(rest);
    Some(out)
}

/// Complex roots of a real polynomial (lowest degree first) as companion
/// eigenvalues, polished by Newton steps. The QR iteration is retried on
/// shifted copies when it fails to converge on symmetric root sets.
fn numeric_roots(cf: &[f64]) -> Vec<num_complex::Complex64> {
    use num_complex::Complex64;
    let n = cf.len() - 1;
    let eval = |z: Complex64| cf.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let deriv = |z: Complex64| {
        cf.iter().enumerate().skip(1).rev().fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
    };
    for shift in [0.0, 0.3719, -1.1173] {
        // coefficients of p(u + shift)
        let mut sc = cf.to_vec();
        for i in 0..n {
            for j in (i..n).rev() {
                sc[j] += shift * sc[j + 1];
            }
        }
        let mut comp = nalgebra::DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            comp[(k, n - 1)] = -sc[k] / sc[n];
            if k + 1 < n {
                comp[(k + 1, k)] = 1.0;
            }
        }
        let Some(schur) = nalgebra::Schur::try_new(comp, 1e-14, 10_000) else {
            continue;
        };
        return schur
            .complex_eigenvalues()
            .iter()
            .map(|&u| {
                let mut z = u + shift;
                for _ in 0..8 {
                    let d = deriv(z);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = eval(z) / d;
                    if !step.re.is_finite() || !step.im.is_finite() {
                        break;
                    }
                    z -= step;
                }
                z
            })
            .collect();
    }
    Vec::new()
}

/// Rational roots of a polynomial with rational coefficients, each verified
/// exactly; empty for other coefficient fields.
fn rational_roots(f: &UniPoly) -> Vec<FieldElement> {
    let t = f.tower().clone();
    let Some(qs) = f.coeffs.iter().map(FieldElement::as_rational).collect::<Option<Vec<Rational>>>() else {
        return Vec::new();
    };
    if qs.len() < 2 {
        return Vec::new();
    }
    let cf: Vec<f64> = qs.iter().map(Rational::to_f64).collect();
    let mut out: Vec<FieldElement> = Vec::new();
    for z in numeric_roots(&cf) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        if let Some(q) = approximate_rational(z.re) {
            let v = FieldElement::from_rational(&t, q);
            if !out.contains(&v) && f.eval(&v).is_zero() {
                out.push(v);
            }
        }
    }
    out
}

/// Continued-fraction approximation with denominator below `10^8`.
fn approximate_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > 100_000_000 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let err = (x - p1 as f64 / q1 as f64).abs();
        if err <= 1e-9 * x.abs().max(1.0) {
            return Some(Rational::new(p1, q1));
        }
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    (q1 != 0 && (x - p1 as f64 / q1 as f64).abs() <= 1e-9 * x.abs().max(1.0)).then(|| Rational::new(p1, q1))
}

/// Splits a monic square-free polynomial of degree at most four as far as
/// closed forms allow. Linear factors come first in discovery order.
fn factor_small(f: &UniPoly) -> Vec<UniPoly> {
    let t = f.tower().clone();
    let d = match f.degree() {
        Some(d) if d > 1 => d,
        _ => return vec![f.clone()],
    };
    if f.coeff(0).is_zero() {
        let x = UniPoly::from_ints(&t, &[0, 1]);
        let mut out = vec![x.clone()];
        out.extend(factor_small(&f.divrem(&x).0));
        return out;
    }
    if d > 3 {
        if let Some(r) = rational_roots(f).into_iter().next() {
            let lin = UniPoly::linear_root(&r);
            let mut out = vec![lin.clone()];
            out.extend(factor_small(&f.divrem(&lin).0));
            return out;
        }
    }
    match d {
        2 => match quadratic_roots(f) {
            Some(rs) if rs.len() == 2 => rs.iter().map(UniPoly::linear_root).collect(),
            _ => vec![f.clone()],
        },
        3 => match rational_roots(f).into_iter().next() {
            Some(r) => {
                let lin = UniPoly::linear_root(&r);
                let mut out = vec![lin.clone()];
                out.extend(factor_small(&f.divrem(&lin).0));
                out
            }
            None => vec![f.clone()],
        },
        4 => match quartic_split(f) {
            Some((a, b)) => {
                let mut out = factor_small(&a);
                out.extend(factor_small(&b));
                out.sort_by_key(|g| g.degree());
                out
            }
            None => vec![f.clone()],
        },
        _ => vec![f.clone()],
    }
}

fn quadratic_roots(f: &UniPoly) -> Option<Vec<FieldElement>> {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = &(&b * &b) - &(&(&a * &c).scale(&Rational::from_int(4)));
    let s = disc.sqrt().ok()?;
    let two_a = a.scale(&Rational::from_int(2));
    let r1 = &(&-&b + &s) / &two_a;
    let r2 = &(&-&b - &s) / &two_a;
    Some(if r1 == r2 { vec![r1] } else { vec![r1, r2] })
}

/// Splits a monic quartic into two monic quadratics over the tower, via the
/// depressed form: the biquadratic case directly, otherwise through a
/// rational root of the resolvent cubic.
fn quartic_split(f: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let t = f.tower().clone();
    let g = f.monic();
    let shift = g.coeff(3).scale(&Rational::new(-1, 4));
    // h(u) = g(u + shift) = u^4 + p u^2 + q u + r
    let h = compose_shift(&g, &shift);
    let (p, q, r) = (h.coeff(2), h.coeff(1), h.coeff(0));
    let one = FieldElement::one(&t);
    let (a, b) = if q.is_zero() {
        // (u^2 - w1)(u^2 - w2) with w^2 + p w + r = 0
        let ws = quadratic_roots(&UniPoly::new(&t, vec![r, p, one.clone()]))?;
        let w2 = ws.get(1).unwrap_or(&ws[0]).clone();
        (
            UniPoly::new(&t, vec![-&ws[0], FieldElement::zero(&t), one.clone()]),
            UniPoly::new(&t, vec![-&w2, FieldElement::zero(&t), one]),
        )
    } else {
        // (u^2 + p/2 + m)^2 = 2m u^2 - q u + (m^2 + p m + p^2/4 - r)
        let two = Rational::from_int(2);
        let eight = Rational::from_int(8);
        let res = UniPoly::new(
            &t,
            vec![
                -&(&q * &q),
                &(&p * &p).scale(&two) - &r.scale(&eight),
                p.scale(&eight),
                FieldElement::from_int(&t, 8),
            ],
        );
        let (m, s) = rational_roots(&res).into_iter().find_map(|m| {
            let s = m.scale(&two).sqrt().ok()?;
            (!s.is_zero()).then_some((m, s))
        })?;
        let base = &p.scale(&Rational::new(1, 2)) + &m;
        let lin = &q / &s.scale(&two);
        (
            UniPoly::new(&t, vec![&base - &lin, s.clone(), one.clone()]),
            UniPoly::new(&t, vec![&base + &lin, -&s, one]),
        )
    };
    let back = -&shift;
    Some((compose_shift(&a, &back), compose_shift(&b, &back)))
}

/// `g(u + s)`.
fn compose_shift(g: &UniPoly, s: &FieldElement) -> UniPoly {
    let t = g.tower().clone();
    let lin = UniPoly::new(&t, vec![s.clone(), FieldElement::one(&t)]);
    let mut acc = UniPoly::zero(&t);
    for c in g.coeffs.iter().rev() {
        acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
    }
    acc
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (a, b) = unify(self, rhs);
        let n = a.coeffs.len().max(b.coeffs.len());
        let t = a.tower.clone();
        UniPoly::new(&t, (0..n).map(|k| &a.coeff(k) + &b.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { tower: self.tower.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let (a, b) = unify(self, rhs);
        let t = a.tower.clone();
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero(&t);
        }
        let mut out = vec![FieldElement::zero(&t); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        UniPoly::new(&t, out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
