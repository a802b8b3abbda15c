use crate::error::{Error, Result};
use crate::field::{FieldElement, TowerRef};
use crate::linalg::Matrix;

use super::{MultiPoly, UniPoly, Var};

/// Sylvester matrix of two univariate coefficient lists (lowest degree first).
pub fn sylvester(p: &[FieldElement], q: &[FieldElement], t: &TowerRef) -> Matrix {
    let a = p.len() - 1;
    let b = q.len() - 1;
    let n = a + b;
    let mut m = Matrix::zeros(t, n, n);
    for r in 0..b {
        for (k, c) in p.iter().rev().enumerate() {
            m.set(r, r + k, c.clone());
        }
    }
    for r in 0..a {
        for (k, c) in q.iter().rev().enumerate() {
            m.set(b + r, r + k, c.clone());
        }
    }
    m
}

/// Resultant of two univariate polynomials given with formal degrees.
pub fn uni_resultant(p: &[FieldElement], q: &[FieldElement], t: &TowerRef) -> FieldElement {
    sylvester(p, q, t).det(t)
}

fn eval_coeffs(cs: &[MultiPoly], pt: &[FieldElement; 3]) -> Result<Vec<FieldElement>> {
    cs.iter().map(|c| c.eval(pt)).collect()
}

/// `Res_v(p, q)` as a polynomial in the two remaining variables.
///
/// Computed by evaluating the Sylvester determinant at interpolation nodes;
/// homogeneous inputs use a single line of nodes and the known output degree.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly> {
    let a = p.degree_in(v) as usize;
    let b = q.degree_in(v) as usize;
    if a == 0 || b == 0 || p.is_zero() || q.is_zero() {
        return Err(Error::DegenerateInput(format!("resultant needs positive degree in {}", v.name())));
    }
    let t = unified_tower(p, q)?;
    let (p, q) = (p.lift_to(&t)?, q.lift_to(&t)?);
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let (u, w) = v.others();
    let point = |x: &FieldElement, y: &FieldElement| {
        let mut pt = [FieldElement::zero(&t), FieldElement::zero(&t), FieldElement::zero(&t)];
        pt[u.index()] = x.clone();
        pt[w.index()] = y.clone();
        pt
    };
    if p.is_homogeneous() && q.is_homogeneous() {
        let m = p.degree().unwrap_or(0) as usize;
        let n = q.degree().unwrap_or(0) as usize;
        let d = b * m + a * n - a * b;
        let one = FieldElement::one(&t);
        let mut xs = Vec::with_capacity(d + 1);
        let mut ys = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let x = FieldElement::from_int(&t, k as i64);
            let pt = point(&x, &one);
            ys.push(uni_resultant(&eval_coeffs(&pc, &pt)?, &eval_coeffs(&qc, &pt)?, &t));
            xs.push(x);
        }
        let h = UniPoly::interpolate(&xs, &ys);
        let mut out = MultiPoly::zero(&t);
        for k in 0..=d {
            let c = h.coeff(k);
            if c.is_zero() {
                continue;
            }
            let mut e = [0u32; 3];
            e[u.index()] = k as u32;
            e[w.index()] = (d - k) as u32;
            out = &out + &MultiPoly::monomial(c, e);
        }
        return Ok(out);
    }
    let du = b * p.degree_in(u) as usize + a * q.degree_in(u) as usize;
    let dw = b * p.degree_in(w) as usize + a * q.degree_in(w) as usize;
    let nodes_u: Vec<FieldElement> = (0..=du).map(|k| FieldElement::from_int(&t, k as i64)).collect();
    let nodes_w: Vec<FieldElement> = (0..=dw).map(|k| FieldElement::from_int(&t, k as i64)).collect();
    // for each fixed w-node interpolate in u, then interpolate each u-coefficient in w
    let mut rows: Vec<UniPoly> = Vec::with_capacity(dw + 1);
    for y in &nodes_w {
        let mut vals = Vec::with_capacity(du + 1);
        for x in &nodes_u {
            let pt = point(x, y);
            let pe = eval_coeffs(&pc, &pt)?;
            let qe = eval_coeffs(&qc, &pt)?;
            vals.push(uni_resultant(&pe, &qe, &t));
        }
        rows.push(UniPoly::interpolate(&nodes_u, &vals));
    }
    let mut out = MultiPoly::zero(&t);
    for i in 0..=du {
        let vals: Vec<FieldElement> = rows.iter().map(|r| r.coeff(i)).collect();
        let col = UniPoly::interpolate(&nodes_w, &vals);
        for j in 0..=dw {
            let c = col.coeff(j);
            if c.is_zero() {
                continue;
            }
            let mut e = [0u32; 3];
            e[u.index()] = i as u32;
            e[w.index()] = j as u32;
            out = &out + &MultiPoly::monomial(c, e);
        }
    }
    Ok(out)
}

/// Dehomogenized resultant of two homogeneous forms: `Res_v(p, q)` evaluated
/// at `(u, w) = (s, 1)` as a polynomial in `s`, together with the full degree.
pub fn resultant_affine(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<(UniPoly, usize)> {
    if !p.is_homogeneous() || !q.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let r = resultant(p, q, v)?;
    let (u, _) = v.others();
    let d = r.degree().unwrap_or(0) as usize;
    let t = r.tower().clone();
    let mut coeffs = vec![FieldElement::zero(&t); d + 1];
    for (e, c) in r.terms() {
        coeffs[e[u.index()] as usize] = c.clone();
    }
    Ok((UniPoly::new(&t, coeffs), d))
}

pub(crate) fn unified_tower(p: &MultiPoly, q: &MultiPoly) -> Result<TowerRef> {
    if p.tower().embedding_into(q.tower()).is_some() {
        Ok(q.tower().clone())
    } else if q.tower().embedding_into(p.tower()).is_some() {
        Ok(p.tower().clone())
    } else {
        Err(Error::TowerMismatch)
    }
}
