//! Local analysis of plane curves: branch series, contact orders, maximal
//! tangency lines, flexes, osculating conics and bi-osculating conics.

use std::collections::HashSet;

use serde::Serialize;

use crate::elim::{locate_intersections, res_z, CoordChange};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational, TowerRef};
use crate::geometry::{Conic, ProjLine, ProjPoint, CONIC_MONOMIALS};
use crate::linalg::Matrix;
use crate::par;
use crate::poly::{restrict_to_line, MultiPoly, UniPoly, Var};

/// A nonzero homogeneous form of positive degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    form: MultiPoly,
}

impl PlaneCurve {
    pub fn new(form: MultiPoly) -> Result<Self> {
        if form.is_zero() || form.degree() == Some(0) {
            return Err(Error::DegenerateCurve("zero or constant form".into()));
        }
        if !form.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(PlaneCurve { form })
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree().unwrap_or(0) as usize
    }

    pub fn tower(&self) -> &TowerRef {
        self.form.tower()
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.form.eval(p.coords())?.is_zero())
    }
}

/// Affine chart of a branch: `dehomog` is set to 1, `solved` is expanded as a
/// power series in the `free` coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub dehomog: Var,
    pub solved: Var,
    pub free: Var,
}

/// Truncated local parametrization of a smooth branch.
#[derive(Debug, Clone)]
pub struct BranchSeries {
    pub center: ProjPoint,
    pub chart: Chart,
    /// Representative of the center with the chart coordinate equal to 1.
    pub base: [FieldElement; 3],
    /// `c_1, ..., c_n` in `solved - s0 = c_1 X + c_2 X^2 + ...` with `X = free - t0`.
    pub coeffs: Vec<FieldElement>,
}

type Series = Vec<FieldElement>;

fn series_mul(a: &[FieldElement], b: &[FieldElement], n: usize) -> Series {
    let t = a[0].tower().clone();
    let mut out = vec![FieldElement::zero(&t); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = &(&r * &Rational::from_int((n - i) as i64)) / &Rational::from_int((i + 1) as i64);
    }
    r
}

impl BranchSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The three homogeneous coordinates as power series in `X`, mod `X^{n+1}`.
    pub fn coordinate_series(&self) -> [Series; 3] {
        let n = self.order();
        let t = self.base[0].tower().clone();
        let zero = FieldElement::zero(&t);
        let mut out: [Series; 3] = std::array::from_fn(|_| vec![zero.clone(); n + 1]);
        for v in Var::ALL {
            out[v.index()][0] = self.base[v.index()].clone();
        }
        if n >= 1 {
            out[self.chart.free.index()][1] = FieldElement::one(&t);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            out[self.chart.solved.index()][k + 1] = c.clone();
        }
        out
    }

    /// `D` composed with the branch, mod `X^{n+1}`.
    pub fn compose(&self, d: &MultiPoly) -> Result<Series> {
        let n = self.order();
        let t = self.base[0].tower().clone();
        let d = if d.tower() == &t { d.clone() } else { d.lift_to(&t)? };
        let coords = self.coordinate_series();
        let deg = d.degree().unwrap_or(0) as usize;
        let mut pw: Vec<Vec<Series>> = Vec::with_capacity(3);
        for s in &coords {
            let mut row = vec![{
                let mut one = vec![FieldElement::zero(&t); n + 1];
                one[0] = FieldElement::one(&t);
                one
            }];
            for k in 1..=deg {
                let next = series_mul(&row[k - 1], s, n);
                row.push(next);
            }
            pw.push(row);
        }
        let mut acc = vec![FieldElement::zero(&t); n + 1];
        for (e, c) in d.terms() {
            let m = series_mul(&series_mul(&pw[0][e[0] as usize], &pw[1][e[1] as usize], n), &pw[2][e[2] as usize], n);
            for k in 0..=n {
                if !m[k].is_zero() {
                    acc[k] = &acc[k] + &(c * &m[k]);
                }
            }
        }
        Ok(acc)
    }

    /// Rows `k = 0..=kmax` of the jet matrix: coefficient of `X^k` in each
    /// conic monomial composed with the branch.
    pub fn conic_jet_rows(&self, kmax: usize) -> Vec<Vec<FieldElement>> {
        let n = self.order();
        assert!(kmax <= n, "branch truncated below the requested jet order");
        let c = self.coordinate_series();
        let cols: Vec<Series> = CONIC_MONOMIALS
            .iter()
            .map(|e| {
                let idx: Vec<usize> = (0..3).flat_map(|v| std::iter::repeat(v).take(e[v] as usize)).collect();
                series_mul(&c[idx[0]], &c[idx[1]], n)
            })
            .collect();
        (0..=kmax).map(|k| cols.iter().map(|s| s[k].clone()).collect()).collect()
    }
}

fn choose_chart(c: &PlaneCurve, p: &ProjPoint) -> Result<(Chart, [FieldElement; 3])> {
    let grad = c.form.gradient();
    let mut best: Option<(f64, Chart, [FieldElement; 3])> = None;
    for s in Var::ALL {
        for h in Var::ALL {
            let ph = &p.coords()[h.index()];
            if h == s || ph.is_zero() {
                continue;
            }
            let inv = ph.inv()?;
            let base = [&p.coords()[0] * &inv, &p.coords()[1] * &inv, &p.coords()[2] * &inv];
            let g = grad[s.index()].eval(&base)?;
            if g.is_zero() {
                continue;
            }
            let score = g.embed().norm();
            let free = Var::ALL.into_iter().find(|v| *v != h && *v != s).unwrap();
            if best.as_ref().map_or(true, |(b, _, _)| score > b * (1.0 + 1e-12)) {
                best = Some((score, Chart { dehomog: h, solved: s, free }, base));
            }
        }
    }
    best.map(|(_, ch, b)| (ch, b)).ok_or(Error::SingularPoint)
}

/// `p` in the largest of its own tower and `towers`.
fn lift_point(p: &ProjPoint, towers: &[&TowerRef]) -> Result<ProjPoint> {
    let mut t = p.tower().clone();
    for u in towers {
        if t.embedding_into(u).is_some() {
            t = (*u).clone();
        } else if u.embedding_into(&t).is_none() {
            return Err(Error::TowerMismatch);
        }
    }
    if &t == p.tower() {
        Ok(p.clone())
    } else {
        p.lift_to(&t)
    }
}

/// Local power-series parametrization of `C` at the smooth point `P` to order `n`.
pub fn branch_series(c: &PlaneCurve, p: &ProjPoint, n: usize) -> Result<BranchSeries> {
    let p = &lift_point(p, &[c.tower()])?;
    if !c.contains(p)? {
        return Err(Error::PointNotOnCurve);
    }
    let (chart, base) = choose_chart(c, p)?;
    let t = base[0].tower().clone();
    let form = c.form.lift_to(&t)?;
    let d = c.degree();
    let (fi, si) = (chart.free.index(), chart.solved.index());
    // g[i][j] = coefficient of X^i Y^j in C(base + X e_free + Y e_solved)
    let mut g = vec![vec![FieldElement::zero(&t); d + 1]; d + 1];
    for (e, coef) in form.terms() {
        let mut rest = coef.clone();
        for v in Var::ALL {
            if v != chart.free && v != chart.solved && e[v.index()] > 0 {
                rest = &rest * &base[v.index()].pow(e[v.index()]);
            }
        }
        let (ef, es) = (e[fi], e[si]);
        for i in 0..=ef {
            let a = &base[fi].pow(ef - i).scale(&binomial(ef, i)) * &rest;
            if a.is_zero() {
                continue;
            }
            for j in 0..=es {
                let b = base[si].pow(es - j).scale(&binomial(es, j));
                g[i as usize][j as usize] = &g[i as usize][j as usize] + &(&a * &b);
            }
        }
    }
    let gy = g[0][1].clone();
    let gy_inv = gy.inv().map_err(|_| Error::SingularPoint)?;
    let mut y: Series = vec![FieldElement::zero(&t); n + 1];
    for k in 1..=n {
        let r = eval_bivariate(&g, &y, k)[k].clone();
        y[k] = -&(&r * &gy_inv);
    }
    let residual = eval_bivariate(&g, &y, n);
    if residual.iter().any(|c| !c.is_zero()) {
        return Err(Error::CertificateFailure("branch residual".into()));
    }
    Ok(BranchSeries { center: p.clone(), chart, base, coeffs: y[1..].to_vec() })
}

/// `g(X, Y(X))` mod `X^{n+1}` for a bivariate coefficient table.
fn eval_bivariate(g: &[Vec<FieldElement>], y: &[FieldElement], n: usize) -> Series {
    let t = y[0].tower().clone();
    let d = g.len() - 1;
    let mut pw: Vec<Series> = Vec::with_capacity(d + 1);
    let mut one = vec![FieldElement::zero(&t); n + 1];
    one[0] = FieldElement::one(&t);
    pw.push(one);
    for j in 1..=d {
        let next = series_mul(&pw[j - 1], &y[..=n.min(y.len() - 1)], n);
        pw.push(next);
    }
    let mut acc = vec![FieldElement::zero(&t); n + 1];
    for (i, row) in g.iter().enumerate() {
        if i > n {
            break;
        }
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 0..=n - i {
                if !pw[j][k].is_zero() {
                    acc[i + k] = &acc[i + k] + &(c * &pw[j][k]);
                }
            }
        }
    }
    acc
}

/// Local intersection multiplicity data.
#[derive(Debug, Clone, Serialize)]
pub struct ContactReport {
    pub point: ProjPoint,
    pub order: usize,
    /// False when the order is only a lower bound (vanishing up to the cap).
    pub exact: bool,
    pub object: String,
    #[serde(skip)]
    pub witness: Vec<FieldElement>,
}

pub const DEFAULT_CAP: usize = 64;

/// Intersection multiplicity of `C` and `D` at `P`, smooth on `C`.
pub fn contact_order(c: &PlaneCurve, d: &MultiPoly, p: &ProjPoint, cap: usize) -> Result<ContactReport> {
    let p = &lift_point(p, &[c.tower(), d.tower()])?;
    if !c.contains(p)? || !d.eval(p.coords())?.is_zero() {
        return Err(Error::PointNotOnBoth);
    }
    let mut n = 2 * c.degree() + 2;
    loop {
        let b = branch_series(c, p, n)?;
        let s = b.compose(d)?;
        if let Some(k) = s.iter().position(|x| !x.is_zero()) {
            return Ok(ContactReport { point: p.clone(), order: k, exact: true, object: d.to_string(), witness: s });
        }
        if n >= cap {
            return Ok(ContactReport { point: p.clone(), order: n + 1, exact: false, object: d.to_string(), witness: s });
        }
        n = (2 * n).min(cap);
    }
}

/// Outcome of the maximal-tangency test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtlCheck {
    pub is_mtl: bool,
    pub point: Option<ProjPoint>,
}

/// Whether `L` meets `C` in a single point (with multiplicity `deg C`).
pub fn mtl_verify(c: &PlaneCurve, l: &ProjLine) -> Result<MtlCheck> {
    let r = restrict_to_line(&c.form, l)?;
    if r.poly.is_zero() {
        return Err(Error::ComponentLine);
    }
    let d = r.degree;
    let not = MtlCheck { is_mtl: false, point: None };
    match r.poly.degree() {
        Some(0) => Ok(MtlCheck { is_mtl: true, point: Some(ProjPoint::new(r.a.clone())?) }),
        Some(k) if k == d => {
            let lc = r.poly.lc();
            let root = -&(&r.poly.coeff(d - 1) / &lc.scale(&Rational::from_int(d as i64)));
            let model = UniPoly::linear_root(&root).pow(d as u32).scale(&lc);
            if model == r.poly {
                Ok(MtlCheck { is_mtl: true, point: Some(ProjPoint::new(r.point_at(&root))?) })
            } else {
                Ok(not)
            }
        }
        _ => Ok(not),
    }
}

/// Determinant of the matrix of second partials.
pub fn hessian(c: &PlaneCurve) -> Result<PlaneCurve> {
    if c.degree() < 3 {
        return Err(Error::DegenerateCurve(format!("degree {} < 3", c.degree())));
    }
    let g = c.form.gradient();
    let h: [[MultiPoly; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| g[i].partial(Var::from_index(j))));
    PlaneCurve::new(MultiPoly::det3(&h))
}

/// Intersection of a curve with its Hessian.
#[derive(Debug, Clone, Serialize)]
pub struct FlexScheme {
    /// Multiplicity pattern of the projected intersection (coordinate-free).
    pub pattern: Vec<u32>,
    /// Flex points with local multiplicities, when they lie in the tower.
    pub points: Option<Vec<(ProjPoint, usize)>>,
    pub total: usize,
    pub expected: usize,
}

impl FlexScheme {
    pub fn certified(&self) -> bool {
        self.points.is_some() && self.total == self.expected
    }
}

pub fn flex_scheme(c: &PlaneCurve, root_tower: &TowerRef) -> Result<FlexScheme> {
    let h = hessian(c)?;
    let d = c.degree();
    let expected = 3 * d * (d - 2);
    let change = CoordChange::seeded_for(1, &[&c.form, h.form()]);
    let form = res_z(&change.apply_poly(&c.form), &change.apply_poly(h.form()))?;
    if form.is_zero() {
        return Err(Error::CommonComponent);
    }
    let pattern = form.pattern();
    let points = match locate_intersections(&c.form, h.form(), root_tower) {
        Ok((pts, _)) => {
            let mut out = Vec::with_capacity(pts.len());
            for (p, _) in pts {
                let k = contact_order(c, h.form(), &p, DEFAULT_CAP)?;
                out.push((p, k.order));
            }
            Some(out)
        }
        Err(Error::FieldTooSmall(_) | Error::ProjectionCollision) => None,
        Err(e) => return Err(e),
    };
    let total = match &points {
        Some(pts) => pts.iter().map(|(_, m)| m).sum(),
        None => pattern.iter().map(|&m| m as usize).sum(),
    };
    Ok(FlexScheme { pattern, points, total, expected })
}

/// Classification of a point by its osculating conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SextacticClass {
    NotSextactic,
    Improper,
    Proper,
}

#[derive(Debug, Clone, Serialize)]
pub struct SextacticReport {
    pub point: ProjPoint,
    pub class: SextacticClass,
    /// Kernel conics of the six-row jet system with Gram rank and contact order.
    pub conics: Vec<(Conic, usize, usize)>,
}

fn require_higher_degree(c: &PlaneCurve) -> Result<()> {
    if c.degree() <= 2 {
        Err(Error::DegenerateCurve(format!("degree {} <= 2", c.degree())))
    } else {
        Ok(())
    }
}

fn kernel_conics(rows: Vec<Vec<FieldElement>>, t: &TowerRef) -> Result<Vec<Conic>> {
    Matrix::from_rows(rows).kernel(t).iter().map(|v| Conic::from_coeffs(v)).collect()
}

/// The conic of highest contact at `P`: a six-row kernel conic when `P` is
/// sextactic, otherwise the five-row (generic osculating) conic.
pub fn osculating_conic(c: &PlaneCurve, p: &ProjPoint) -> Result<(Conic, ContactReport)> {
    require_higher_degree(c)?;
    let b = branch_series(c, p, 5)?;
    let t = b.base[0].tower().clone();
    let rows = b.conic_jet_rows(5);
    let mut ks = kernel_conics(rows.clone(), &t)?;
    if ks.is_empty() {
        ks = kernel_conics(rows[..5].to_vec(), &t)?;
    }
    let q = ks.into_iter().next().ok_or_else(|| Error::CertificateFailure("empty osculating system".into()))?;
    let rep = contact_order(c, &q.to_poly(), p, DEFAULT_CAP)?;
    Ok((q, rep))
}

pub fn sextactic_classify(c: &PlaneCurve, p: &ProjPoint) -> Result<SextacticReport> {
    require_higher_degree(c)?;
    let b = branch_series(c, p, 5)?;
    let t = b.base[0].tower().clone();
    let ks = kernel_conics(b.conic_jet_rows(5), &t)?;
    let mut conics = Vec::with_capacity(ks.len());
    for q in ks {
        let rank = q.rank();
        let k = contact_order(c, &q.to_poly(), p, DEFAULT_CAP)?;
        conics.push((q, rank, k.order));
    }
    let class = if conics.is_empty() {
        SextacticClass::NotSextactic
    } else if conics.len() > 1 || conics.iter().any(|(_, r, k)| *r >= 2 && *k >= 6) {
        SextacticClass::Proper
    } else {
        SextacticClass::Improper
    };
    Ok(SextacticReport { point: p.clone(), class, conics })
}

/// A conic with contact at least 4 at two anchor points.
#[derive(Debug, Clone, Serialize)]
pub struct Biosculating {
    pub conic: Conic,
    pub p: usize,
    pub q: usize,
    pub contact_p: usize,
    pub contact_q: usize,
}

/// All reduced conics meeting `C` with multiplicity at least 4 at two of the
/// given points, one per projective class, in index-pair order.
pub fn biosculating_conics(c: &PlaneCurve, pts: &[ProjPoint]) -> Result<Vec<Biosculating>> {
    let branches: Vec<BranchSeries> = par::map(pts, |p| branch_series(c, p, 4)).into_iter().collect::<Result<_>>()?;
    let jets: Vec<Vec<Vec<FieldElement>>> = branches.iter().map(|b| b.conic_jet_rows(3)).collect();
    let pairs = par::pairs(pts.len());
    let found = par::map(&pairs, |&(i, j)| -> Result<Option<Biosculating>> {
        let ti = branches[i].base[0].tower();
        let tj = branches[j].base[0].tower();
        let t = if ti.embedding_into(tj).is_some() { tj.clone() } else { ti.clone() };
        let mut rows = Vec::with_capacity(8);
        for r in jets[i].iter().chain(jets[j].iter()) {
            rows.push(r.iter().map(|x| x.lift_to(&t)).collect::<Result<Vec<_>>>()?);
        }
        let k = Matrix::from_rows(rows).kernel(&t);
        if k.len() != 1 {
            return Ok(None);
        }
        let q = Conic::from_coeffs(&k[0])?;
        if q.rank() < 2 {
            return Ok(None);
        }
        let qp = q.to_poly();
        let cp = contact_order(c, &qp, &pts[i], DEFAULT_CAP)?;
        let cq = contact_order(c, &qp, &pts[j], DEFAULT_CAP)?;
        if cp.order < 4 || cq.order < 4 {
            return Ok(None);
        }
        Ok(Some(Biosculating { conic: q, p: i, q: j, contact_p: cp.order, contact_q: cq.order }))
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in found {
        if let Some(b) = f? {
            if seen.insert(b.conic.clone()) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Tower, TowerBuilder};
    use crate::poly::xyz;

    fn fermat_tower() -> TowerRef {
        TowerBuilder::new()
            .adjoin_int("i", -1)
            .unwrap()
            .adjoin_int("r2", 2)
            .unwrap()
            .adjoin_root_of("q2", "r2")
            .unwrap()
            .build()
    }

    fn eps(t: &TowerRef) -> FieldElement {
        let one = FieldElement::one(t);
        (&(&one + &t.generator("i").unwrap()) * &t.generator("r2").unwrap()).scale(&Rational::new(1, 2))
    }

    fn fermat(t: &TowerRef) -> PlaneCurve {
        let (x, y, z) = xyz(t);
        PlaneCurve::new(&(&x.pow(4) + &y.pow(4)) + &z.pow(4)).unwrap()
    }

    #[test]
    fn circle_series() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        let c = PlaneCurve::new(&(&x.pow(2) + &y.pow(2)) - &z.pow(2)).unwrap();
        let p = ProjPoint::from_ints(&q, [0, 1, 1]).unwrap();
        let b = branch_series(&c, &p, 4).unwrap();
        // equal scores for solving y (z = 1) and z (y = 1); y comes first
        assert_eq!((b.chart.dehomog, b.chart.solved, b.chart.free), (Var::Z, Var::Y, Var::X));
        let r = |n, d| FieldElement::from_rational(&q, Rational::new(n, d));
        assert_eq!(b.coeffs, vec![r(0, 1), r(-1, 2), r(0, 1), r(-1, 8)]);
    }

    #[test]
    fn singular_point_rejected() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        // nodal cubic y^2 z = x^2 (x + z)
        let c = PlaneCurve::new(&(&y.pow(2) * &z) - &(&x.pow(2) * &(&x + &z))).unwrap();
        let p = ProjPoint::from_ints(&q, [0, 0, 1]).unwrap();
        assert_eq!(branch_series(&c, &p, 3).unwrap_err(), Error::SingularPoint);
    }

    #[test]
    fn mtp_of_fermat_has_contact_four() {
        let t = fermat_tower();
        let f = fermat(&t);
        let e = eps(&t);
        let zero = FieldElement::zero(&t);
        let one = FieldElement::one(&t);
        let p = ProjPoint::new([zero.clone(), one.clone(), e.clone()]).unwrap();
        let tangent = ProjLine::new([zero.clone(), one.clone(), e.pow(3)]).unwrap();
        assert!(tangent.contains(&p));
        let chk = mtl_verify(&f, &tangent).unwrap();
        assert!(chk.is_mtl);
        assert_eq!(chk.point, Some(p.clone()));
        let rep = contact_order(&f, &tangent.form(), &p, DEFAULT_CAP).unwrap();
        assert_eq!((rep.order, rep.exact), (4, true));
        let transversal = ProjLine::new([one.clone(), zero.clone(), zero.clone()]).unwrap();
        assert_eq!(contact_order(&f, &transversal.form(), &p, DEFAULT_CAP).unwrap().order, 1);
        let z0 = ProjLine::new([zero.clone(), zero.clone(), one]).unwrap();
        assert!(!mtl_verify(&f, &z0).unwrap().is_mtl);
    }

    #[test]
    fn fermat_hessian_and_flexes() {
        let t = fermat_tower();
        let f = fermat(&t);
        let h = hessian(&f).unwrap();
        let (x, y, z) = xyz(&t);
        let expect = (&(&x.pow(2) * &y.pow(2)) * &z.pow(2)).scale(&FieldElement::from_int(&t, 1728));
        assert_eq!(h.form(), &expect);
        let fs = flex_scheme(&f, &t).unwrap();
        let pts = fs.points.clone().unwrap();
        assert_eq!(pts.len(), 12);
        assert!(pts.iter().all(|(_, m)| *m == 2));
        assert!(fs.certified());
    }

    #[test]
    fn mtp_is_improper_sextactic() {
        let t = fermat_tower();
        let f = fermat(&t);
        let e = eps(&t);
        let p = ProjPoint::new([FieldElement::zero(&t), FieldElement::one(&t), e]).unwrap();
        let rep = sextactic_classify(&f, &p).unwrap();
        assert_eq!(rep.class, SextacticClass::Improper);
        assert_eq!(rep.conics.len(), 1);
        assert_eq!((rep.conics[0].1, rep.conics[0].2), (1, 8));
        let (q, k) = osculating_conic(&f, &p).unwrap();
        assert_eq!(q.rank(), 1);
        assert_eq!(k.order, 8);
    }

    #[test]
    fn listed_type_point_is_proper_and_generic_point_is_not() {
        let t = fermat_tower();
        let f = fermat(&t);
        let e = eps(&t);
        let q2 = t.generator("q2").unwrap();
        let one = FieldElement::one(&t);
        // 1 + (e q2)^4 + 1 = 0
        let p = ProjPoint::new([one.clone(), &e * &q2, one.clone()]).unwrap();
        assert!(f.contains(&p).unwrap());
        let rep = sextactic_classify(&f, &p).unwrap();
        assert_eq!(rep.class, SextacticClass::Proper);

        // 9 + 16 - 25 = 0 at (s3 : 2 : e s5)
        let big = TowerBuilder::new()
            .adjoin_int("i", -1)
            .unwrap()
            .adjoin_int("r2", 2)
            .unwrap()
            .adjoin_int("s3", 3)
            .unwrap()
            .adjoin_int("s5", 5)
            .unwrap()
            .build();
        let g = fermat(&big);
        let eb = eps(&big);
        let p = ProjPoint::new([big.generator("s3").unwrap(), FieldElement::from_int(&big, 2), &eb * &big.generator("s5").unwrap()]).unwrap();
        assert!(g.contains(&p).unwrap());
        assert_eq!(sextactic_classify(&g, &p).unwrap().class, SextacticClass::NotSextactic);
        let (_, k) = osculating_conic(&g, &p).unwrap();
        assert_eq!(k.order, 5);
    }
}
