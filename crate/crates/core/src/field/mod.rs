//! Towers of quadratic extensions of the rationals.
//!
//! An element of a tower with `n` levels is a dense vector of `2^n`
//! rationals. Index bit `k` is the exponent of generator `k`, so an element
//! splits as `lo + hi * g_top` with `lo`, `hi` living in the subtower.

mod rational;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

pub use rational::Rational;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Level {
    name: String,
    /// Coordinates over the preceding subtower (length `2^k`).
    radicand: Vec<Rational>,
    /// Set when the radicand is a plain rational; multiplication takes a shortcut.
    rational_radicand: Option<Rational>,
    root: Complex64,
}

/// A tower `Q(g_1, ..., g_n)` with `g_k^2 = r_k` and `r_k` in `Q(g_1..g_{k-1})`.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Vec<Level>,
    basis: Vec<Complex64>,
}

pub type TowerRef = Arc<Tower>;

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| a.name == b.name && a.radicand == b.radicand)
    }
}

impl Eq for Tower {}

/// Incrementally adjoins square roots, rejecting degenerate levels.
pub struct TowerBuilder {
    tower: TowerRef,
}

impl Default for TowerBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl TowerBuilder {
    pub fn new() -> Self {
        TowerBuilder { tower: Tower::rationals() }
    }

    /// The tower built so far; radicands for the next level live here.
    pub fn current(&self) -> &TowerRef {
        &self.tower
    }

    pub fn adjoin(mut self, name: &str, radicand: &FieldElement) -> Result<Self> {
        self.tower = self.tower.adjoin(name, radicand)?;
        Ok(self)
    }

    pub fn adjoin_int(self, name: &str, radicand: i64) -> Result<Self> {
        let r = FieldElement::from_int(&self.tower, radicand);
        self.adjoin(name, &r)
    }

    /// Adjoins the square root of a previously adjoined generator.
    pub fn adjoin_root_of(self, name: &str, generator: &str) -> Result<Self> {
        let r = self
            .tower
            .generator(generator)
            .ok_or_else(|| Error::MalformedSpec(format!("unknown generator `{generator}`")))?;
        self.adjoin(name, &r)
    }

    pub fn build(self) -> TowerRef {
        self.tower
    }
}

/// `make_tower`: builds a tower from `(name, radicand)` pairs where each
/// radicand is produced from the tower built so far.
pub fn make_tower<F>(spec: &[(&str, F)]) -> Result<TowerRef>
where
    F: Fn(&TowerRef) -> Result<FieldElement>,
{
    let mut b = TowerBuilder::new();
    for (name, radicand) in spec {
        let r = radicand(b.current())?;
        b = b.adjoin(name, &r)?;
    }
    Ok(b.build())
}

impl Tower {
    pub fn rationals() -> TowerRef {
        Arc::new(Tower { levels: Vec::new(), basis: vec![Complex64::new(1.0, 0.0)] })
    }

    /// Number of quadratic levels.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Degree over the rationals.
    pub fn degree(&self) -> usize {
        1 << self.levels.len()
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.levels.iter().map(|l| l.name.as_str())
    }

    pub fn generator(self: &Arc<Self>, name: &str) -> Option<FieldElement> {
        let k = self.levels.iter().position(|l| l.name == name)?;
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[1 << k] = Rational::one();
        Some(FieldElement { tower: self.clone(), coords })
    }

    /// The radicand of level `k` as an element of this tower.
    pub fn radicand(self: &Arc<Self>, k: usize) -> FieldElement {
        let mut coords = self.levels[k].radicand.clone();
        coords.resize(self.degree(), Rational::zero());
        FieldElement { tower: self.clone(), coords }
    }

    pub fn adjoin(self: &Arc<Self>, name: &str, radicand: &FieldElement) -> Result<TowerRef> {
        if name.is_empty() || self.levels.iter().any(|l| l.name == name) {
            return Err(Error::MalformedSpec(format!("bad or duplicate generator name `{name}`")));
        }
        let r = radicand.lift_to(self)?;
        if r.is_zero() {
            return Err(Error::DegenerateExtension(name.to_string()));
        }
        if sqrt_raw(self, self.height(), &r.coords).is_some() {
            return Err(Error::DegenerateExtension(name.to_string()));
        }
        let root = r.embed().sqrt();
        let rational_radicand = r.as_rational();
        let mut levels = self.levels.clone();
        levels.push(Level { name: name.to_string(), radicand: r.coords, rational_radicand, root });
        let mut basis = self.basis.clone();
        basis.extend(self.basis.iter().map(|b| b * root));
        let t = Arc::new(Tower { levels, basis });
        // The chosen root must square to the radicand's embedding.
        let g = t.generator(name).unwrap().embed();
        let rr = t.radicand(t.height() - 1).embed();
        debug_assert!((g * g - rr).norm() <= 1e-9 * rr.norm().max(1.0));
        Ok(t)
    }

    /// Canonical spec string, e.g. `Q(i:-1,r2:2,q2:r2)`.
    pub fn spec(self: &Arc<Self>) -> String {
        let parts: Vec<String> = (0..self.height())
            .map(|k| {
                let sub = self.prefix(k);
                let mut c = self.levels[k].radicand.clone();
                c.truncate(sub.degree());
                let r = FieldElement { tower: sub, coords: c };
                format!("{}:{}", self.levels[k].name, r)
            })
            .collect();
        format!("Q({})", parts.join(","))
    }

    /// The subtower made of the first `k` levels.
    pub fn prefix(&self, k: usize) -> TowerRef {
        let levels = self.levels[..k].to_vec();
        Arc::new(Tower { levels, basis: self.basis[..1 << k].to_vec() })
    }

    /// The complex value chosen for each generator.
    pub fn embedding_choice(&self) -> Vec<(String, Complex64)> {
        self.levels.iter().map(|l| (l.name.clone(), l.root)).collect()
    }

    /// Maps each level of `self` to a level of `target` with the same name
    /// and a matching radicand, when `self` embeds into `target`.
    pub fn embedding_into(&self, target: &Tower) -> Option<Vec<usize>> {
        let mut map = Vec::with_capacity(self.height());
        for (k, level) in self.levels.iter().enumerate() {
            let j = target.levels.iter().position(|l| l.name == level.name)?;
            let mapped = map_coords(&level.radicand[..1 << k], &map, target.degree());
            if mapped != pad(&target.levels[j].radicand, target.degree()) {
                return None;
            }
            map.push(j);
        }
        Some(map)
    }
}

fn pad(v: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = v.to_vec();
    out.resize(n, Rational::zero());
    out
}

fn map_coords(src: &[Rational], map: &[usize], target_len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); target_len];
    for (idx, c) in src.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut t = 0usize;
        for (bit, &j) in map.iter().enumerate() {
            if idx & (1 << bit) != 0 {
                t |= 1 << j;
            }
        }
        out[t] = c.clone();
    }
    out
}

// ---------------------------------------------------------------------------
// raw coordinate arithmetic; `k` is the number of active levels

fn add_raw(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_raw(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale_raw(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

fn is_zero_raw(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

fn rational_part(a: &[Rational]) -> Option<&Rational> {
    if a[1..].iter().all(Rational::is_zero) {
        Some(&a[0])
    } else {
        None
    }
}

fn mul_raw(t: &Tower, k: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if k == 0 {
        return vec![&a[0] * &b[0]];
    }
    if let Some(s) = rational_part(a) {
        return scale_raw(b, s);
    }
    if let Some(s) = rational_part(b) {
        return scale_raw(a, s);
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let a1z = is_zero_raw(a1);
    let b1z = is_zero_raw(b1);
    let mut out = Vec::with_capacity(a.len());
    if a1z || b1z {
        let lo = mul_raw(t, k - 1, a0, b0);
        let hi = if a1z && b1z {
            vec![Rational::zero(); h]
        } else if a1z {
            mul_raw(t, k - 1, a0, b1)
        } else {
            mul_raw(t, k - 1, a1, b0)
        };
        out.extend(lo);
        out.extend(hi);
        return out;
    }
    let a0z = is_zero_raw(a0);
    let b0z = is_zero_raw(b0);
    let p1 = mul_raw(t, k - 1, a1, b1);
    let rp1 = times_radicand(t, k, &p1);
    if a0z || b0z {
        // (a1 g)(b0 + b1 g) or the symmetric case.
        let hi = if a0z && b0z {
            vec![Rational::zero(); h]
        } else if a0z {
            mul_raw(t, k - 1, a1, b0)
        } else {
            mul_raw(t, k - 1, a0, b1)
        };
        out.extend(rp1);
        out.extend(hi);
        return out;
    }
    let p0 = mul_raw(t, k - 1, a0, b0);
    let hi = if k >= 3 {
        let s = mul_raw(t, k - 1, &add_raw(a0, a1), &add_raw(b0, b1));
        sub_raw(&sub_raw(&s, &p0), &p1)
    } else {
        add_raw(&mul_raw(t, k - 1, a0, b1), &mul_raw(t, k - 1, a1, b0))
    };
    out.extend(add_raw(&p0, &rp1));
    out.extend(hi);
    out
}

/// Multiplies an element of the level-`k-1` subtower by the radicand of level `k-1`.
fn times_radicand(t: &Tower, k: usize, x: &[Rational]) -> Vec<Rational> {
    let level = &t.levels[k - 1];
    match &level.rational_radicand {
        Some(r) => scale_raw(x, r),
        None => mul_raw(t, k - 1, x, &level.radicand),
    }
}

fn neg_raw(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

fn inv_raw(t: &Tower, k: usize, a: &[Rational]) -> Option<Vec<Rational>> {
    if k == 0 {
        return a[0].recip().map(|r| vec![r]);
    }
    if let Some(s) = rational_part(a) {
        let r = s.recip()?;
        let mut out = vec![Rational::zero(); a.len()];
        out[0] = r;
        return Some(out);
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    // (a0 + a1 g)^-1 = (a0 - a1 g) / (a0^2 - r a1^2)
    let n0 = mul_raw(t, k - 1, a0, a0);
    let n1 = times_radicand(t, k, &mul_raw(t, k - 1, a1, a1));
    let norm = sub_raw(&n0, &n1);
    let ninv = inv_raw(t, k - 1, &norm)?;
    let mut out = mul_raw(t, k - 1, a0, &ninv);
    out.extend(neg_raw(&mul_raw(t, k - 1, a1, &ninv)));
    Some(out)
}

/// Recursive square root in the level-`k` subtower; the sign is arbitrary.
fn sqrt_raw(t: &Tower, k: usize, a: &[Rational]) -> Option<Vec<Rational>> {
    if k == 0 {
        return a[0].sqrt().map(|r| vec![r]);
    }
    if is_zero_raw(a) {
        return Some(a.to_vec());
    }
    let h = a.len() / 2;
    let (x, y) = a.split_at(h);
    let zero = vec![Rational::zero(); h];
    if is_zero_raw(y) {
        if let Some(s) = sqrt_raw(t, k - 1, x) {
            let mut out = s;
            out.extend(zero);
            return Some(out);
        }
        // x = v^2 r  =>  sqrt(x) = v g
        let rinv = inv_raw(t, k - 1, &t.levels[k - 1].radicand)?;
        let v = sqrt_raw(t, k - 1, &mul_raw(t, k - 1, x, &rinv))?;
        let mut out = zero;
        out.extend(v);
        return Some(out);
    }
    let x2 = mul_raw(t, k - 1, x, x);
    let ry2 = times_radicand(t, k, &mul_raw(t, k - 1, y, y));
    let n = sqrt_raw(t, k - 1, &sub_raw(&x2, &ry2))?;
    let half = Rational::new(1, 2);
    for cand in [add_raw(x, &n), sub_raw(x, &n)] {
        let u2 = scale_raw(&cand, &half);
        if let Some(u) = sqrt_raw(t, k - 1, &u2) {
            if is_zero_raw(&u) {
                continue;
            }
            // v = y / (2u)
            let uinv = inv_raw(t, k - 1, &u)?;
            let v = scale_raw(&mul_raw(t, k - 1, y, &uinv), &half);
            let mut out = u;
            out.extend(v);
            return Some(out);
        }
    }
    None
}

// ---------------------------------------------------------------------------

/// An element of a quadratic tower.
#[derive(Clone)]
pub struct FieldElement {
    tower: TowerRef,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(t: &TowerRef) -> Self {
        FieldElement { tower: t.clone(), coords: vec![Rational::zero(); t.degree()] }
    }

    pub fn one(t: &TowerRef) -> Self {
        Self::from_rational(t, Rational::one())
    }

    pub fn from_int(t: &TowerRef, n: i64) -> Self {
        Self::from_rational(t, Rational::from_int(n))
    }

    pub fn from_rational(t: &TowerRef, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); t.degree()];
        coords[0] = r;
        FieldElement { tower: t.clone(), coords }
    }

    pub fn from_coords(t: &TowerRef, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != t.degree() {
            return Err(Error::TowerMismatch);
        }
        Ok(FieldElement { tower: t.clone(), coords })
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_raw(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && is_zero_raw(&self.coords[1..])
    }

    pub fn as_rational(&self) -> Option<Rational> {
        rational_part(&self.coords).cloned()
    }

    fn same_tower(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tower, &other.tower) || *self.tower == *other.tower
    }

    /// Re-expresses `self` in `target`, which must contain its tower.
    pub fn lift_to(&self, target: &TowerRef) -> Result<Self> {
        if Arc::ptr_eq(&self.tower, target) || *self.tower == **target {
            return Ok(FieldElement { tower: target.clone(), coords: self.coords.clone() });
        }
        let map = self.tower.embedding_into(target).ok_or(Error::TowerMismatch)?;
        Ok(FieldElement { tower: target.clone(), coords: map_coords(&self.coords, &map, target.degree()) })
    }

    /// Inverse of [`lift_to`](Self::lift_to): succeeds when `target` embeds in
    /// this element's tower and the element lies in its image.
    pub fn restrict_to(&self, target: &TowerRef) -> Result<Self> {
        if Arc::ptr_eq(&self.tower, target) || *self.tower == **target {
            return Ok(FieldElement { tower: target.clone(), coords: self.coords.clone() });
        }
        let map = target.embedding_into(&self.tower).ok_or(Error::TowerMismatch)?;
        let mut coords = vec![Rational::zero(); target.degree()];
        let mut used = vec![false; self.coords.len()];
        for (idx, c) in coords.iter_mut().enumerate() {
            let mut src = 0usize;
            for (bit, &j) in map.iter().enumerate() {
                if idx & (1 << bit) != 0 {
                    src |= 1 << j;
                }
            }
            *c = self.coords[src].clone();
            used[src] = true;
        }
        if self.coords.iter().zip(&used).any(|(c, u)| !u && !c.is_zero()) {
            return Err(Error::TowerMismatch);
        }
        Ok(FieldElement { tower: target.clone(), coords })
    }

    /// Brings two elements into a common tower.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.same_tower(b) {
            return Ok((a.clone(), b.clone()));
        }
        if let Ok(la) = a.lift_to(&b.tower) {
            return Ok((la, b.clone()));
        }
        if let Ok(lb) = b.lift_to(&a.tower) {
            return Ok((a.clone(), lb));
        }
        Err(Error::TowerMismatch)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.same_tower(rhs) {
            return Ok(FieldElement { tower: self.tower.clone(), coords: add_raw(&self.coords, &rhs.coords) });
        }
        let (a, b) = Self::unify(self, rhs)?;
        a.try_add(&b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        if self.same_tower(rhs) {
            return Ok(FieldElement { tower: self.tower.clone(), coords: sub_raw(&self.coords, &rhs.coords) });
        }
        let (a, b) = Self::unify(self, rhs)?;
        a.try_sub(&b)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.same_tower(rhs) {
            let k = self.tower.height();
            return Ok(FieldElement {
                tower: self.tower.clone(),
                coords: mul_raw(&self.tower, k, &self.coords, &rhs.coords),
            });
        }
        let (a, b) = Self::unify(self, rhs)?;
        a.try_mul(&b)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.inv()?;
        self.try_mul(&inv)
    }

    pub fn inv(&self) -> Result<Self> {
        let k = self.tower.height();
        inv_raw(&self.tower, k, &self.coords)
            .map(|coords| FieldElement { tower: self.tower.clone(), coords })
            .ok_or(Error::DivisionByZero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        FieldElement { tower: self.tower.clone(), coords: scale_raw(&self.coords, s) }
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

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Square root in the tower, normalized so its embedding has positive
    /// real part (or zero real part and non-negative imaginary part).
    pub fn sqrt(&self) -> Result<Self> {
        let k = self.tower.height();
        let raw = sqrt_raw(&self.tower, k, &self.coords).ok_or(Error::NotASquare)?;
        let mut b = FieldElement { tower: self.tower.clone(), coords: raw };
        if &b * &b != *self {
            return Err(Error::NotASquare);
        }
        let e = b.embed();
        let tol = 1e-12 * e.norm().max(1e-300);
        if e.re < -tol || (e.re.abs() <= tol && e.im < 0.0) {
            b = -&b;
        }
        Ok(b)
    }

    /// Complex value under the tower's chosen embedding.
    pub fn embed(&self) -> Complex64 {
        self.coords
            .iter()
            .zip(&self.tower.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| b * c.to_f64())
            .sum()
    }

    /// Deterministic total order on coordinates; used for canonical sorting.
    pub fn cmp_coords(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

/// `field_arith`: exact `add | sub | mul | div` on two tower elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.same_tower(other)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field arithmetic across incompatible towers")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.try_div(rhs).expect("division by zero or tower mismatch")
    }
}

impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower.clone(), coords: neg_raw(&self.coords) }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    /// Sum of `coeff*g1*g2` terms in basis order; parseable by the scenario
    /// language.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gens: Vec<&str> = (0..self.tower.height())
                .filter(|k| idx & (1 << k) != 0)
                .map(|k| self.tower.levels[k].name.as_str())
                .collect();
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if gens.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", gens.join("*"))?;
            } else {
                write!(f, "{a}*{}", gens.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
